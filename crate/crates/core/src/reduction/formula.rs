//! (3,B2)-SAT formulas: DIMACS I/O, the B2 restrictions, brute-force
//! satisfiability and random generation.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::ReductionError;

/// Signed, 1-based variable index; negative means negated.
pub type Literal = i32;

pub const BRUTEFORCE_MAX_VARS: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Formula {
    variable_count: usize,
    clauses: Vec<[Literal; 3]>,
}

impl Formula {
    /// Checks that every clause has three literals over distinct variables in
    /// `1..=variable_count`.
    pub fn new(variable_count: usize, clauses: Vec<[Literal; 3]>) -> Result<Self, ReductionError> {
        for (j, c) in clauses.iter().enumerate() {
            for &l in c {
                if l == 0 || l.unsigned_abs() as usize > variable_count {
                    return Err(ReductionError::InvalidClause {
                        clause: j + 1,
                        reason: format!("literal {l} out of range 1..={variable_count}"),
                    });
                }
            }
            let (a, b, d) = (c[0].abs(), c[1].abs(), c[2].abs());
            if a == b || a == d || b == d {
                return Err(ReductionError::InvalidClause {
                    clause: j + 1,
                    reason: "variables must be distinct".into(),
                });
            }
        }
        Ok(Self { variable_count, clauses })
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    pub fn clauses(&self) -> &[[Literal; 3]] {
        &self.clauses
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    /// 0-based indices of the clauses containing `lit`, in order.
    pub fn occurrences(&self, lit: Literal) -> Vec<usize> {
        (0..self.clauses.len()).filter(|&j| self.clauses[j].contains(&lit)).collect()
    }

    pub fn clause_satisfied(&self, j: usize, a: &Assignment) -> bool {
        self.clauses[j].iter().any(|&l| a.literal(l))
    }

    pub fn satisfied_by(&self, a: &Assignment) -> bool {
        (0..self.clauses.len()).all(|j| self.clause_satisfied(j, a))
    }

    /// 0-based indices of the clauses `a` leaves false.
    pub fn falsified_clauses(&self, a: &Assignment) -> Vec<usize> {
        (0..self.clauses.len()).filter(|&j| !self.clause_satisfied(j, a)).collect()
    }

    pub fn parse_dimacs(text: &str) -> Result<Self, ReductionError> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut pending: Vec<Literal> = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = ln + 1;
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if line.starts_with('p') {
                let parts: Vec<&str> = line.split_whitespace().collect();
                if header.is_some() || parts.len() != 4 || parts[1] != "cnf" {
                    return Err(parse_err(lineno, "expected a single 'p cnf V C' header"));
                }
                let v = parts[2].parse().map_err(|_| parse_err(lineno, "bad variable count"))?;
                let c = parts[3].parse().map_err(|_| parse_err(lineno, "bad clause count"))?;
                header = Some((v, c));
                continue;
            }
            if header.is_none() {
                return Err(parse_err(lineno, "clause before 'p cnf' header"));
            }
            for tok in line.split_whitespace() {
                let lit: Literal =
                    tok.parse().map_err(|_| parse_err(lineno, &format!("bad literal '{tok}'")))?;
                if lit == 0 {
                    let c: [Literal; 3] = pending.as_slice().try_into().map_err(|_| {
                        parse_err(lineno, &format!("clause has {} literals, expected 3", pending.len()))
                    })?;
                    clauses.push(c);
                    pending.clear();
                } else {
                    pending.push(lit);
                }
            }
        }
        let (v, c) = header.ok_or_else(|| parse_err(0, "missing 'p cnf' header"))?;
        if !pending.is_empty() {
            return Err(parse_err(0, "last clause is not 0-terminated"));
        }
        if clauses.len() != c {
            return Err(parse_err(0, &format!("header declares {c} clauses, found {}", clauses.len())));
        }
        Self::new(v, clauses)
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.variable_count, self.clauses.len());
        for c in &self.clauses {
            s.push_str(&format!("{} {} {} 0\n", c[0], c[1], c[2]));
        }
        s
    }

    /// The example formula `(x∨y∨z)(x̄∨y∨z̄)(x̄∨ȳ∨z)(x∨ȳ∨z̄)` with x, y, z = 1, 2, 3.
    pub fn example() -> Self {
        Self::new(3, vec![[1, 2, 3], [-1, 2, -3], [-1, -2, 3], [1, -2, -3]]).unwrap()
    }
}

fn parse_err(line: usize, msg: &str) -> ReductionError {
    ReductionError::Parse { line, message: msg.to_string() }
}

pub fn literal_name(l: Literal) -> String {
    if l < 0 {
        format!("¬x{}", -l)
    } else {
        format!("x{l}")
    }
}

/// Violations of the (3,B2) restrictions.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct B2Report {
    /// Literals occurring other than exactly twice, with their counts.
    pub bad_counts: Vec<(Literal, usize)>,
    /// Clause pairs (0-based) sharing two or more literals.
    pub shared_pairs: Vec<(usize, usize)>,
    /// The formula has no clauses.
    pub trivial: bool,
}

impl B2Report {
    pub fn is_valid(&self) -> bool {
        self.bad_counts.is_empty() && self.shared_pairs.is_empty()
    }
}

impl fmt::Display for B2Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut lines = Vec::new();
        if self.trivial {
            lines.push("trivial: formula has no clauses".to_string());
        }
        for &(l, k) in &self.bad_counts {
            lines.push(format!("literal {} occurs {k} times", literal_name(l)));
        }
        for &(a, b) in &self.shared_pairs {
            lines.push(format!("clauses {} and {} share two literals", a + 1, b + 1));
        }
        if self.is_valid() {
            lines.push("valid (3,B2) formula".to_string());
        }
        write!(f, "{}", lines.join("\n"))
    }
}

pub fn validate_b2(f: &Formula) -> B2Report {
    let mut counts: BTreeMap<Literal, usize> = BTreeMap::new();
    for v in 1..=f.variable_count as Literal {
        counts.insert(v, 0);
        counts.insert(-v, 0);
    }
    for c in &f.clauses {
        for &l in c {
            *counts.get_mut(&l).unwrap() += 1;
        }
    }
    let mut bad_counts: Vec<(Literal, usize)> =
        counts.into_iter().filter(|&(_, k)| k != 2).collect();
    bad_counts.sort_by_key(|&(l, _)| (l.abs(), l < 0));
    let mut shared_pairs = Vec::new();
    for a in 0..f.clauses.len() {
        for b in a + 1..f.clauses.len() {
            let common = f.clauses[a].iter().filter(|l| f.clauses[b].contains(l)).count();
            if common >= 2 {
                shared_pairs.push((a, b));
            }
        }
    }
    B2Report { bad_counts, shared_pairs, trivial: f.clauses.is_empty() }
}

/// Truth values, `values[i]` for variable `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Assignment(pub Vec<bool>);

impl Assignment {
    pub fn value(&self, var: usize) -> bool {
        self.0[var - 1]
    }

    pub fn literal(&self, l: Literal) -> bool {
        self.value(l.unsigned_abs() as usize) == (l > 0)
    }

    /// Parses `x1=1,x2=0,...`; every variable `1..=variable_count` must appear
    /// exactly once.
    pub fn parse(text: &str, variable_count: usize) -> Result<Self, ReductionError> {
        let mut seen: HashMap<usize, bool> = HashMap::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let bad = || ReductionError::Assignment(format!("malformed entry '{part}'"));
            let (name, val) = part.split_once('=').ok_or_else(bad)?;
            let var: usize =
                name.trim().strip_prefix('x').ok_or_else(bad)?.parse().map_err(|_| bad())?;
            let value = match val.trim() {
                "1" | "T" | "true" => true,
                "0" | "F" | "false" => false,
                _ => return Err(bad()),
            };
            if var == 0 || var > variable_count {
                return Err(ReductionError::Assignment(format!(
                    "variable x{var} out of range 1..={variable_count}"
                )));
            }
            if seen.insert(var, value).is_some() {
                return Err(ReductionError::Assignment(format!("variable x{var} assigned twice")));
            }
        }
        let values = (1..=variable_count)
            .map(|v| {
                seen.get(&v)
                    .copied()
                    .ok_or_else(|| ReductionError::Assignment(format!("variable x{v} not assigned")))
            })
            .collect::<Result<_, _>>()?;
        Ok(Self(values))
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.0.iter().enumerate().map(|(i, &b)| format!("x{}={}", i + 1, b as u8)).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Assignment {
    type Err = ReductionError;

    /// Parses without a declared variable count; variables must be `x1..xk`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let k = s.split(',').filter(|p| !p.trim().is_empty()).count();
        Self::parse(s, k)
    }
}

/// All assignments in lexicographic order (`x1` most significant, false
/// before true).
pub fn all_assignments(variable_count: usize) -> impl Iterator<Item = Assignment> {
    (0u64..1 << variable_count).map(move |bits| {
        Assignment((0..variable_count).map(|i| bits >> (variable_count - 1 - i) & 1 == 1).collect())
    })
}

/// Lexicographically first satisfying assignment.
pub fn sat_bruteforce(f: &Formula) -> Result<Option<Assignment>, ReductionError> {
    if f.variable_count > BRUTEFORCE_MAX_VARS {
        return Err(ReductionError::TooManyVariables(f.variable_count));
    }
    Ok(all_assignments(f.variable_count).find(|a| f.satisfied_by(a)))
}

/// Random valid (3,B2) formula with `variable_count` variables (a positive
/// multiple of 3), hence `4 * variable_count / 3` clauses.
pub fn random_b2<R: Rng>(variable_count: usize, rng: &mut R) -> Result<Formula, ReductionError> {
    if variable_count == 0 || variable_count % 3 != 0 {
        return Err(ReductionError::Generation(format!(
            "variable count must be a positive multiple of 3, got {variable_count}"
        )));
    }
    let mut slots: Vec<Literal> = (1..=variable_count as Literal)
        .flat_map(|v| [v, v, -v, -v])
        .collect();
    for _ in 0..200_000 {
        slots.shuffle(rng);
        let clauses: Vec<[Literal; 3]> =
            slots.chunks(3).map(|c| [c[0], c[1], c[2]]).collect();
        let Ok(f) = Formula::new(variable_count, clauses) else { continue };
        if validate_b2(&f).is_valid() {
            return Ok(f);
        }
    }
    Err(ReductionError::Generation("rejection sampling did not converge".into()))
}
