use std::collections::BTreeMap;

use super::{CanonicalCode, RootedMap};
use crate::error::{domain, Result};
use crate::exact::{ratio, Rational};
use crate::sample::ExactRng;

fn require_sphere(map: &RootedMap) -> Result<()> {
    if map.is_single_vertex() || !map.is_sphere() {
        return Err(domain("re-rooting needs a sphere triangulation without boundary"));
    }
    Ok(())
}

/// Re-roots at a uniformly chosen (directed edge, side) pair.
pub fn uniform_reroot(map: &RootedMap, rng: &mut ExactRng) -> Result<RootedMap> {
    require_sphere(map)?;
    let h = rng.below(map.half_edge_count() as u64) as usize;
    let flip = rng.bit();
    map.rerooted(h, flip)
}

/// Moves the root vertex along a uniform edge, then picks a uniform root at
/// the new vertex.
pub fn rw_reroot(map: &RootedMap, rng: &mut ExactRng) -> Result<RootedMap> {
    require_sphere(map)?;
    let out: Vec<usize> = map.rotation(map.root()).collect();
    let g = out[rng.below(out.len() as u64) as usize];
    let at_y: Vec<usize> = map.rotation(map.twin(g)).collect();
    let h = at_y[rng.below(at_y.len() as u64) as usize];
    let flip = rng.bit();
    map.rerooted(h, flip)
}

fn accumulate(
    out: &mut BTreeMap<CanonicalCode, Rational>,
    map: &RootedMap,
    h: usize,
    p: &Rational,
) -> Result<()> {
    for flip in [false, true] {
        let code = map.rerooted(h, flip)?.code();
        *out.entry(code).or_insert_with(|| ratio(0, 1)) += p;
    }
    Ok(())
}

/// Exact law of [`uniform_reroot`] applied to `map`, by canonical code.
pub fn uniform_reroot_kernel(map: &RootedMap) -> Result<BTreeMap<CanonicalCode, Rational>> {
    require_sphere(map)?;
    let n = map.half_edge_count() as i64;
    let p = ratio(1, 2 * n);
    let mut out = BTreeMap::new();
    for h in 0..map.half_edge_count() {
        accumulate(&mut out, map, h, &p)?;
    }
    Ok(out)
}

/// Exact law of [`rw_reroot`] applied to `map`, by canonical code.
pub fn rw_reroot_kernel(map: &RootedMap) -> Result<BTreeMap<CanonicalCode, Rational>> {
    require_sphere(map)?;
    let out_x: Vec<usize> = map.rotation(map.root()).collect();
    let mut out = BTreeMap::new();
    for &g in &out_x {
        let at_y: Vec<usize> = map.rotation(map.twin(g)).collect();
        let p = ratio(1, 2 * (out_x.len() * at_y.len()) as i64);
        for &h in &at_y {
            accumulate(&mut out, map, h, &p)?;
        }
    }
    Ok(out)
}
