use num_bigint::BigUint;

use super::ExactRng;
use crate::error::{domain, Error, Result};
use crate::exact::{PhiTable, TriType};
use crate::map::{brute_force_census, FaceKind, MapBuilder, RootedMap};

/// Largest `n + m` accepted by the type II decomposition sampler.
pub const UNIFORM_BOUND: usize = 400;

enum Source {
    Table(PhiTable),
    Census(Vec<RootedMap>),
}

/// Exactly uniform sampler over rooted triangulations of an `(m+2)`-gon with
/// `n` internal vertices.
///
/// Type II follows the root-edge decomposition weighted by exact counts;
/// type III draws an index into the census.
pub struct UniformSampler {
    n: usize,
    m: usize,
    source: Source,
}

impl UniformSampler {
    pub fn new(t: TriType, n: usize, m: usize) -> Result<Self> {
        let source = match t {
            TriType::TypeII => {
                if n + m > UNIFORM_BOUND {
                    return Err(Error::BoundExceeded { requested: n + m, bound: UNIFORM_BOUND });
                }
                Source::Table(PhiTable::new(t, n, n + m))
            }
            TriType::TypeIII => {
                let maps = brute_force_census(t, n, m)?;
                if maps.is_empty() {
                    return Err(domain("no type III triangulation with these parameters"));
                }
                Source::Census(maps)
            }
        };
        Ok(UniformSampler { n, m, source })
    }

    pub fn sample(&self, rng: &mut ExactRng) -> RootedMap {
        match &self.source {
            Source::Census(maps) => maps[rng.below(maps.len() as u64) as usize].clone(),
            Source::Table(table) => {
                let mut b = MapBuilder::polygon(self.m + 2);
                fill_uniform(table, &mut b, 0, self.n, rng);
                b.freeze(FaceKind::External)
            }
        }
    }
}

fn fill_uniform(table: &PhiTable, b: &mut MapBuilder, h: usize, n: usize, rng: &mut ExactRng) {
    let mut stack = vec![(h, n)];
    while let Some((h, n)) = stack.pop() {
        let j = b.cycle_len(h) - 2;
        if j == 0 && n == 0 {
            b.glue_digon(h);
            continue;
        }
        let mut pick = rng.below_big(table.get(n, j));
        if n >= 1 {
            let w = table.get(n - 1, j + 1);
            if &pick < w {
                let (_, e, _) = b.grow(h);
                stack.push((e, n - 1));
                continue;
            }
            pick -= w;
        }
        let (k, i) = split(table, j, n, pick);
        let g = b.walk_next(h, k + 1);
        let (a, c) = b.close_on(h, g);
        stack.push((a, i));
        stack.push((c, n - i));
    }
}

fn split(table: &PhiTable, j: usize, n: usize, mut pick: BigUint) -> (usize, usize) {
    for k in 1..=j {
        for i in 0..=n {
            let w = table.get(i, k - 1) * table.get(n - i, j - k);
            if pick < w {
                return (k, i);
            }
            pick -= w;
        }
    }
    unreachable!("counts satisfy the root-edge decomposition")
}

/// Uniform triangulation of an `(m+2)`-gon with `n` internal vertices.
pub fn sample_uniform(t: TriType, n: usize, m: usize, rng: &mut ExactRng) -> Result<RootedMap> {
    Ok(UniformSampler::new(t, n, m)?.sample(rng))
}

/// Uniform rooted triangulation of the sphere with `vertices` vertices.
pub fn sample_uniform_sphere(t: TriType, vertices: usize, rng: &mut ExactRng) -> Result<RootedMap> {
    if vertices < 3 {
        return Err(domain("a sphere triangulation has at least 3 vertices"));
    }
    sample_uniform(t, vertices - 3, 1, rng)?.all_internal()
}
