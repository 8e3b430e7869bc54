mod common;

use proptest::prelude::*;

use common::{densify, discrete_frechet, random_instance, rng};
use cpsm::cpsm::{solve_exact, verify_witness};
use cpsm::frechet::{decide_frechet, frechet_distance};
use cpsm::geometry::{convex_hull, dist_point_convex_polygon, segment_ball_window, Point, PolyCurve, Segment};
use cpsm::io::InstanceFile;
use cpsm::reduction::{random_b2, Assignment, Formula};
use cpsm::{Instance, Variant};
use rand::SeedableRng;

fn coord() -> impl Strategy<Value = f64> {
    -20.0..20.0f64
}

fn pt() -> impl Strategy<Value = (f64, f64)> {
    (coord(), coord())
}

fn curve(max_segments: usize) -> impl Strategy<Value = PolyCurve> {
    prop::collection::vec(pt(), 2..=max_segments + 1)
        .prop_filter_map("degenerate curve", |v| PolyCurve::from_xy(&v).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn distance_brackets_dense_discrete(p in curve(4), q in curve(4)) {
        let d = frechet_distance(&p, &q, 1e-7).unwrap();
        let upper = discrete_frechet(p.vertices(), q.vertices());
        prop_assert!(d <= upper + 1e-6, "continuous {d} above vertex-discrete {upper}");
        let dense = discrete_frechet(&densify(&p, 40), &densify(&q, 40));
        let step = p.segments().chain(q.segments()).map(|s| s.start.dist(&s.end)).fold(0.0, f64::max) / 40.0;
        prop_assert!(dense <= d + step + 1e-6, "dense discrete {dense} vs {d} + {step}");
        prop_assert!(d <= dense + 1e-6);
    }

    #[test]
    fn decision_is_symmetric_and_monotone(p in curve(4), q in curve(4), eps in 0.1..15.0f64) {
        let a = decide_frechet(&p, &q, eps).unwrap();
        prop_assert_eq!(a, decide_frechet(&q, &p, eps).unwrap());
        if a {
            prop_assert!(decide_frechet(&p, &q, eps * 1.5).unwrap());
        }
    }

    #[test]
    fn segment_pairs_within_endpoint_distance(a in pt(), b in pt(), c in pt(), d in pt()) {
        let (Ok(p), Ok(q)) = (PolyCurve::from_xy(&[a, b]), PolyCurve::from_xy(&[c, d])) else { return Ok(()) };
        let eps = p.start().dist(q.start()).max(p.end().dist(q.end()));
        prop_assert!(decide_frechet(&p, &q, eps).unwrap());
    }

    #[test]
    fn ball_window_matches_sampling(a in pt(), b in pt(), c in pt(), eps in 0.5..10.0f64) {
        let seg = Segment { start: Point::xy(a.0, a.1), end: Point::xy(b.0, b.1) };
        let center = Point::xy(c.0, c.1);
        let w = segment_ball_window(&seg, &center, eps);
        for i in 0..=200 {
            let t = i as f64 / 200.0;
            let r = seg.at(t).dist(&center);
            match w {
                Some(w) if t >= w.lo && t <= w.hi => prop_assert!(r <= eps * (1.0 + 1e-9) + 1e-9, "t {t} inside window but r {r}"),
                _ => prop_assert!(r >= eps * (1.0 - 1e-9) - 1e-9, "t {t} outside window but r {r}"),
            }
        }
    }

    #[test]
    fn hull_contains_its_points(ps in prop::collection::vec(pt(), 3..30)) {
        let pts: Vec<Point> = ps.iter().map(|&(x, y)| Point::xy(x, y)).collect();
        let Ok(hull) = convex_hull(&pts) else { return Ok(()) };
        for p in &pts {
            prop_assert!(dist_point_convex_polygon(p, &hull) <= 1e-9);
        }
    }

    #[test]
    fn instance_json_is_bit_exact(xs in prop::collection::vec(any::<f64>().prop_filter("finite", |x| x.is_finite()), 6)) {
        let Ok(curve) = PolyCurve::from_xy(&[(xs[0], xs[1]), (xs[2], xs[3])]) else { return Ok(()) };
        let Ok(inst) = Instance::new(curve, vec![Point::xy(xs[4], xs[5])], 1.0, Variant::UniqueSubset) else { return Ok(()) };
        let text = serde_json::to_string(&InstanceFile::from_instance(&inst)).unwrap();
        let back = serde_json::from_str::<InstanceFile>(&text).unwrap().to_instance().unwrap();
        let bits = |i: &Instance| i.curve().vertices().iter().chain(i.points()).flat_map(|p| p.coords().to_vec()).map(f64::to_bits).collect::<Vec<_>>();
        prop_assert_eq!(bits(&back), bits(&inst));
    }

    #[test]
    fn exact_witnesses_verify(seed in any::<u64>(), n in 1..5usize, k in 2..6usize, v in 0..4usize) {
        let mut r = rng(seed);
        let inst = random_instance(&mut r, n, k, 1.0, Variant::ALL[v]);
        if let Some(w) = solve_exact(&inst, None).unwrap().witness {
            prop_assert!(verify_witness(&inst, &w).unwrap().is_valid());
        }
    }

    #[test]
    fn dimacs_and_assignments_round_trip(seed in any::<u64>(), third in 1..5usize) {
        let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let f = random_b2(3 * third, &mut r).unwrap();
        prop_assert_eq!(Formula::parse_dimacs(&f.to_dimacs()).unwrap(), f.clone());
        let a = Assignment((0..f.variable_count()).map(|i| seed >> i & 1 == 1).collect());
        prop_assert_eq!(Assignment::parse(&a.to_string(), f.variable_count()).unwrap(), a);
    }
}
