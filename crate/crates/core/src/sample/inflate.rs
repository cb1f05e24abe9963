use super::free::fill_free;
use super::ExactRng;
use crate::error::{domain, Result};
use crate::map::{FaceKind, MapBuilder, RootedMap};

/// Replaces every edge of `map` by an independent free triangulation of a
/// 2-gon. An empty draw leaves the edge as it is; otherwise the edge is
/// doubled and the triangulation glued in between. The root is kept.
pub fn edge_inflate(map: &RootedMap, rng: &mut ExactRng) -> Result<RootedMap> {
    if map.unrevealed_face().is_some() {
        return Err(domain("cannot inflate a map with an unrevealed face"));
    }
    if map.is_single_vertex() {
        return Ok(map.clone());
    }
    let mut b = MapBuilder::from_map(map);
    for h in 0..map.half_edge_count() {
        if h < map.twin(h) {
            let d = b.open_edge(h);
            fill_free(&mut b, d, rng);
        }
    }
    Ok(b.freeze(FaceKind::External))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::TriType;
    use crate::map::{sphere_census, three_connected_core};

    #[test]
    fn inflation_round_trip() {
        let mut rng = ExactRng::new(2);
        for t in sphere_census(TriType::TypeIII, 6).unwrap().iter().take(20) {
            for _ in 0..20 {
                let big = edge_inflate(t, &mut rng).unwrap();
                assert_eq!(big.validate(TriType::TypeII), Ok(()));
                assert_eq!(three_connected_core(&big).unwrap().code(), t.code());
            }
        }
    }

    #[test]
    fn untouched_probability_and_mean_growth() {
        let t = crate::map::fixtures::tetrahedron();
        let mut rng = ExactRng::new(8);
        let draws = 20_000;
        let mut untouched = 0;
        let mut added = 0usize;
        for _ in 0..draws {
            let big = edge_inflate(&t, &mut rng).unwrap();
            let extra = big.triangle_count() - t.triangle_count();
            if extra == 0 {
                untouched += 1;
            }
            added += extra;
        }
        let p = (8.0f64 / 9.0).powi(6);
        assert!((untouched as f64 / draws as f64 - p).abs() < 0.015);
        let per_edge = added as f64 / (draws * 6) as f64;
        assert!((per_edge - 2.0 / 3.0).abs() < 0.1, "{per_edge}");
    }
}
