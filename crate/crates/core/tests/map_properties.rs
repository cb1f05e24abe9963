use proptest::prelude::*;

use uipt::exact::{phi, sphere_count, TriType};
use uipt::map::{brute_force_census, sphere_census, three_connected_core, FaceKind};
use uipt::sample::{edge_inflate, sample_uniform, sample_uniform_sphere};
use uipt::{ExactRng, RootedMap};

/// The same map with half-edge ids permuted by `perm`.
fn relabel(map: &RootedMap, perm: &[usize]) -> RootedMap {
    let n = map.half_edge_count();
    let mut twin = vec![0; n];
    let mut next = vec![0; n];
    let mut kind = vec![FaceKind::Internal; n];
    for h in 0..n {
        twin[perm[h]] = perm[map.twin(h)];
        next[perm[h]] = perm[map.next(h)];
        kind[perm[h]] = map.kind(h);
    }
    RootedMap::from_parts(twin, next, kind, perm[map.root()]).unwrap()
}

fn small_map() -> impl Strategy<Value = RootedMap> {
    (0usize..4, 1usize..4, any::<u64>())
        .prop_map(|(n, m, seed)| sample_uniform(TriType::TypeII, n, m, &mut ExactRng::new(seed)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn code_ignores_labels(map in small_map(), perm_seed in any::<u64>()) {
        let mut perm: Vec<usize> = (0..map.half_edge_count()).collect();
        let mut rng = ExactRng::new(perm_seed);
        for i in (1..perm.len()).rev() {
            perm.swap(i, rng.below(i as u64 + 1) as usize);
        }
        prop_assert_eq!(relabel(&map, &perm).code(), map.code());
    }

    #[test]
    fn text_format_round_trips(map in small_map()) {
        let back = RootedMap::from_text(&map.to_text()).unwrap();
        prop_assert_eq!(back.code(), map.code());
    }

    #[test]
    fn spheres_satisfy_euler(v in 3usize..9, seed in any::<u64>()) {
        let s = sample_uniform_sphere(TriType::TypeII, v, &mut ExactRng::new(seed)).unwrap();
        prop_assert_eq!(s.vertex_count(), v);
        prop_assert_eq!(3 * s.vertex_count() as i64 - s.edge_count() as i64, 6);
        prop_assert!(s.validate(TriType::TypeII).is_ok());
    }

    #[test]
    fn core_undoes_inflation(idx in 0usize..13, seed in any::<u64>()) {
        let spheres = sphere_census(TriType::TypeIII, 6).unwrap();
        let s = &spheres[idx % spheres.len()];
        let inflated = edge_inflate(s, &mut ExactRng::new(seed)).unwrap();
        prop_assert!(inflated.validate(TriType::TypeII).is_ok());
        prop_assert_eq!(three_connected_core(&inflated).unwrap().code(), s.code());
    }
}

#[test]
fn census_matches_formula() {
    for t in [TriType::TypeII, TriType::TypeIII] {
        for m in 0..=4 {
            for n in 0..=8 - 2 * m {
                let want = if t == TriType::TypeIII && m == 0 { None } else { Some(phi(t, n, m).unwrap()) };
                match want {
                    Some(c) => assert_eq!(brute_force_census(t, n, m).unwrap().len(), usize::try_from(c).unwrap(), "{t} {n} {m}"),
                    None => assert!(brute_force_census(t, n, m).is_err()),
                }
            }
        }
    }
}

#[test]
fn sphere_census_matches_count() {
    for t in [TriType::TypeII, TriType::TypeIII] {
        for v in 3..=7 {
            let c: usize = sphere_count(t, v).unwrap().try_into().unwrap();
            assert_eq!(sphere_census(t, v).unwrap().len(), c);
        }
    }
    assert_eq!(sphere_census(TriType::TypeIII, 4).unwrap().len(), 1);
    assert_eq!(sphere_census(TriType::TypeII, 4).unwrap().len(), 4);
}
