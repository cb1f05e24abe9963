use std::collections::HashMap;

use proptest::prelude::*;

use uipt::exact::{ball_probability, rational_to_f64, Rational, TriType};
use uipt::map::{FaceKind, RootedMap};
use uipt::sample::{
    core_classify, peel_until_ball, sample_free, uipt_ball, uipt_type3_ball, PeelState, PeelVariant, Policy,
};
use uipt::ExactRng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn same_seed_same_samples(seed in any::<u64>()) {
        let ball = |s| uipt_ball(2, Policy::MinDistance, 1_000_000, &mut ExactRng::new(s)).unwrap().code();
        prop_assert_eq!(ball(seed), ball(seed));
        let free = |s| sample_free(1, &mut ExactRng::new(s)).map.code();
        prop_assert_eq!(free(seed), free(seed));
        prop_assert_eq!(core_classify(500, &mut ExactRng::new(seed)), core_classify(500, &mut ExactRng::new(seed)));
    }

    #[test]
    fn peeling_keeps_a_valid_region(seed in any::<u64>(), steps in 1usize..300, fifo in any::<bool>()) {
        let policy = if fifo { Policy::Fifo } else { Policy::MinDistance };
        let mut rng = ExactRng::new(seed);
        let mut s = PeelState::new();
        for _ in 0..steps {
            let (m, v) = (s.m(), s.vertex_count());
            match s.peel(policy, &mut rng) {
                PeelVariant::Grow => {
                    prop_assert_eq!(s.m(), m + 1);
                    prop_assert_eq!(s.vertex_count(), v + 1);
                }
                PeelVariant::Swallow { k, .. } => {
                    prop_assert_eq!(s.m(), m - k);
                    prop_assert!(s.vertex_count() >= v);
                }
            }
        }
        let map = s.revealed();
        prop_assert!(map.validate(TriType::TypeII).is_ok());
        let hole = map.unrevealed_face().unwrap();
        prop_assert_eq!(map.face_len(hole), s.m() + 2);
        prop_assert_eq!(s.frontier().len(), s.m() + 2);
    }

    #[test]
    fn balls_are_nested(seed in any::<u64>()) {
        let mut rng = ExactRng::new(seed);
        let mut s = PeelState::new();
        let mut last = 1;
        for r in 1..=3 {
            peel_until_ball(&mut s, r, Policy::MinDistance, 1_000_000, &mut rng).unwrap();
            let b = uipt::map::ball(&s.revealed(), r).unwrap();
            prop_assert!(b.vertex_count() >= last);
            prop_assert!(b.validate(TriType::TypeII).is_ok());
            last = b.vertex_count();
        }
    }
}

#[test]
fn radius_zero_is_a_vertex() {
    let b = uipt_ball(0, Policy::MinDistance, 10, &mut ExactRng::new(1)).unwrap();
    assert!(b.is_single_vertex());
}

fn faces(b: &RootedMap) -> Vec<usize> {
    b.faces_of_kind(FaceKind::External).iter().map(|&f| b.face_len(f) - 2).collect()
}

#[test]
fn radius_one_law_matches_exact() {
    let n = 20_000;
    let mut rng = ExactRng::new(21);
    let mut seen: HashMap<Vec<u8>, (usize, RootedMap)> = HashMap::new();
    for _ in 0..n {
        let b = uipt_ball(1, Policy::MinDistance, 1_000_000, &mut rng).unwrap();
        seen.entry(b.code().as_bytes().to_vec()).or_insert((0, b)).0 += 1;
    }
    let mut total = Rational::from_integer(0.into());
    let mut classes: Vec<(usize, RootedMap)> = seen.into_values().collect();
    classes.sort_by_key(|c| std::cmp::Reverse(c.0));
    for (i, (c, b)) in classes.iter().enumerate() {
        let p = ball_probability(TriType::TypeII, b.vertex_count(), &faces(b)).unwrap();
        total += &p;
        if i < 12 {
            let p = rational_to_f64(&p);
            let sd = (p * (1.0 - p) / n as f64).sqrt();
            let f = *c as f64 / n as f64;
            assert!((f - p).abs() < 4.0 * sd, "class {i}: observed {f} exact {p}");
        }
    }
    assert!(total <= Rational::from_integer(1.into()));
}

#[test]
fn type_three_balls_are_simple() {
    let mut rng = ExactRng::new(8);
    let mut restarts = 0;
    let n = 300;
    for _ in 0..n {
        let b = uipt_type3_ball(1, 10_000, &mut rng).unwrap();
        assert!(b.map.validate(TriType::TypeIII).is_ok());
        restarts += b.restarts;
    }
    let mean = restarts as f64 / n as f64;
    assert!((mean - 1.0).abs() < 0.3, "mean restarts {mean}");
}
