use serde::Serialize;

use super::laws::{free_exact, with_free_cdf};
use super::ExactRng;
use crate::map::{FaceKind, MapBuilder, RootedMap};

/// A draw from the critical Boltzmann law on triangulations of an
/// `(m+2)`-gon.
#[derive(Clone, Debug, Serialize)]
pub struct FreeSample {
    #[serde(skip)]
    pub map: RootedMap,
    /// Number of internal vertices.
    pub size: usize,
}

/// Critical Boltzmann triangulation of an `(m+2)`-gon (type II), rooted on
/// the boundary edge whose left face is the root triangle.
pub fn sample_free(m: usize, rng: &mut ExactRng) -> FreeSample {
    let mut b = MapBuilder::polygon(m + 2);
    let size = fill_free(&mut b, 0, rng);
    FreeSample { map: b.freeze(FaceKind::External), size }
}

/// First step of the free sampler on a hole of index `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum FreeStep {
    Empty,
    Grow,
    Chord(usize),
}

pub(crate) fn draw_free_step(j: usize, rng: &mut ExactRng) -> FreeStep {
    let i = with_free_cdf(j, |cdf| rng.categorical(cdf, || free_exact(j)));
    match (j, i) {
        (0, 0) => FreeStep::Empty,
        (0, _) | (_, 0) => FreeStep::Grow,
        (_, k) => FreeStep::Chord(k),
    }
}

/// Fills the hole through `h` with an independent free triangulation and
/// returns the number of vertices created.
pub(crate) fn fill_free(b: &mut MapBuilder, h: usize, rng: &mut ExactRng) -> usize {
    let mut created = 0;
    let mut stack = vec![(h, b.cycle_len(h) - 2)];
    while let Some((h, j)) = stack.pop() {
        match draw_free_step(j, rng) {
            FreeStep::Empty => b.glue_digon(h),
            FreeStep::Grow => {
                let (_, e, _) = b.grow(h);
                created += 1;
                stack.push((e, j + 1));
            }
            FreeStep::Chord(k) => {
                let g = if k + 1 <= j + 1 - k { b.walk_next(h, k + 1) } else { b.walk_prev(h, j + 1 - k) };
                let (a, c) = b.close_on(h, g);
                stack.push((a, k - 1));
                stack.push((c, j - k));
            }
        }
    }
    created
}
