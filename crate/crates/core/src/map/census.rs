use std::collections::{BTreeMap, HashSet};

use super::{FaceKind, MapBuilder, RootedMap};
use crate::error::{domain, Error, Result};
use crate::exact::TriType;

/// Largest `n + 2m` the census accepts by default.
pub const CENSUS_BOUND: usize = 8;

fn check_args(t: TriType, n: usize, m: usize) -> Result<()> {
    if t == TriType::TypeIII && m == 0 {
        return Err(domain("type III boundary index must be at least 1"));
    }
    if n + 2 * m > CENSUS_BOUND {
        return Err(Error::BoundExceeded { requested: n + 2 * m, bound: CENSUS_BOUND });
    }
    Ok(())
}

/// Enumerates every way to fill the pending holes, calling `f` on each
/// completed map. Each triangulation arises from exactly one branch.
fn fill_all(t: TriType, b: MapBuilder, mut pending: Vec<(usize, usize)>, f: &mut dyn FnMut(RootedMap)) {
    let Some((h, n)) = pending.pop() else {
        let map = b.freeze(FaceKind::External);
        if t == TriType::TypeII || map.validate(t).is_ok() {
            f(map);
        }
        return;
    };
    let j = b.cycle_len(h) - 2;
    if j == 0 && n == 0 {
        let mut b = b;
        b.glue_digon(h);
        fill_all(t, b, pending, f);
        return;
    }
    if n >= 1 && !(t == TriType::TypeIII && j == 0) {
        let mut b2 = b.clone();
        let (_, e, _) = b2.grow(h);
        let mut p = pending.clone();
        p.push((e, n - 1));
        fill_all(t, b2, p, f);
    }
    for k in 1..=j {
        let g = b.walk_next(h, k + 1);
        for i in 0..=n {
            if t == TriType::TypeIII && ((k == 1 && i > 0) || (k == j && i < n)) {
                continue;
            }
            let mut b2 = b.clone();
            let (a, c) = b2.close_on(h, g);
            let mut p = pending.clone();
            p.push((a, i));
            p.push((c, n - i));
            fill_all(t, b2, p, f);
        }
    }
}

pub(crate) fn census_for_each(t: TriType, n: usize, m: usize, f: &mut dyn FnMut(RootedMap)) -> Result<()> {
    check_args(t, n, m)?;
    fill_all(t, MapBuilder::polygon(m + 2), vec![(0, n)], f);
    Ok(())
}

/// All rooted triangulations of an `(m+2)`-gon with `n` internal vertices,
/// rooted on a boundary edge, ordered by canonical code.
pub fn brute_force_census(t: TriType, n: usize, m: usize) -> Result<Vec<RootedMap>> {
    let mut seen = BTreeMap::new();
    census_for_each(t, n, m, &mut |map| {
        seen.entry(map.code()).or_insert(map);
    })?;
    Ok(seen.into_values().collect())
}

/// Number of distinct canonical codes produced by the census.
pub fn census_size(t: TriType, n: usize, m: usize) -> Result<usize> {
    let mut seen = HashSet::new();
    census_for_each(t, n, m, &mut |map| {
        seen.insert(map.code());
    })?;
    Ok(seen.len())
}

/// Rooted sphere triangulations with `vertices` vertices, obtained from the
/// triangle census by turning the outer face into a triangle.
pub fn sphere_census(t: TriType, vertices: usize) -> Result<Vec<RootedMap>> {
    if vertices < 3 {
        return Err(domain("a sphere triangulation has at least 3 vertices"));
    }
    let mut seen = BTreeMap::new();
    census_for_each(t, vertices - 3, 1, &mut |map| {
        let s = map.all_internal().expect("valid map");
        seen.entry(s.code()).or_insert(s);
    })?;
    Ok(seen.into_values().collect())
}
