use std::cell::RefCell;

use num_bigint::BigInt;
use serde::Serialize;

use crate::exact::{ratio, Rational};

/// Which way along the frontier a swallowing triangle reaches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PeelVariant {
    /// The revealed triangle has a new vertex.
    Grow,
    /// The revealed triangle's third vertex is `k` steps away along the
    /// frontier, enclosing a `(k+1)`-gon.
    Swallow { side: Side, k: usize },
}

/// One outcome of a peeling step with its exact probability.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeelEvent {
    pub variant: PeelVariant,
    #[serde(serialize_with = "ser_rational")]
    pub probability: Rational,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&crate::exact::format_rational(r))
}

fn r_i(n: usize) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact peeling law on a frontier of length `m + 2`, ordered as
/// `Grow, Left(1..=m), Right(1..=m)`.
pub(crate) fn peel_exact(m: usize) -> Vec<Rational> {
    let mut out = vec![ratio(2 * m as i64 + 3, 3 * (m as i64 + 1))];
    let mut q = Vec::with_capacity(m);
    if m >= 1 {
        let mut v = ratio(m as i64, 4 * (2 * m as i64 + 1));
        for k in 1..=m {
            q.push(v.clone());
            if k < m {
                v = v * r_i((m - k) * (2 * k - 1)) / r_i((2 * m - 2 * k + 1) * (k + 2));
            }
        }
    }
    out.extend(q.iter().cloned());
    out.extend(q);
    out
}

/// Exact law of the first step of the free sampler on a hole of length
/// `j + 2`: `Empty, Grow` for `j = 0`, otherwise `Grow, chord(1..=j)`.
pub(crate) fn free_exact(j: usize) -> Vec<Rational> {
    if j == 0 {
        return vec![ratio(8, 9), ratio(1, 9)];
    }
    let mut out = vec![ratio(2 * j as i64 + 1, 3 * (j as i64 + 3))];
    let mut v = ratio(j as i64 + 2, 4 * (2 * j as i64 - 1));
    for k in 1..=j {
        out.push(v.clone());
        if k < j {
            v = v * r_i((2 * k - 1) * (j - k + 2)) / r_i((k + 2) * (2 * j - 2 * k - 1));
        }
    }
    out
}

/// Exact probability of a single peeling outcome at index `m`.
pub(crate) fn peel_probability(m: usize, v: PeelVariant) -> Rational {
    match v {
        PeelVariant::Grow => ratio(2 * m as i64 + 3, 3 * (m as i64 + 1)),
        PeelVariant::Swallow { k, .. } => {
            let mut q = ratio(m as i64, 4 * (2 * m as i64 + 1));
            for i in 1..k {
                q = q * r_i((m - i) * (2 * i - 1)) / r_i((2 * m - 2 * i + 1) * (i + 2));
            }
            q
        }
    }
}

fn peel_f64(m: usize) -> Vec<f64> {
    let mf = m as f64;
    let mut p = vec![(2.0 * mf + 3.0) / (3.0 * (mf + 1.0))];
    let mut q = Vec::with_capacity(m);
    if m >= 1 {
        let mut v = mf / (4.0 * (2.0 * mf + 1.0));
        for k in 1..=m {
            q.push(v);
            let kf = k as f64;
            v *= (mf - kf) * (2.0 * kf - 1.0) / ((2.0 * mf - 2.0 * kf + 1.0) * (kf + 2.0));
        }
    }
    p.extend_from_slice(&q);
    p.extend_from_slice(&q);
    p
}

fn free_f64(j: usize) -> Vec<f64> {
    if j == 0 {
        return vec![8.0 / 9.0, 1.0 / 9.0];
    }
    let jf = j as f64;
    let mut p = vec![(2.0 * jf + 1.0) / (3.0 * (jf + 3.0))];
    let mut v = (jf + 2.0) / (4.0 * (2.0 * jf - 1.0));
    for k in 1..=j {
        p.push(v);
        let kf = k as f64;
        if k < j {
            v *= (2.0 * kf - 1.0) * (jf - kf + 2.0) / ((kf + 2.0) * (2.0 * jf - 2.0 * kf - 1.0));
        }
    }
    p
}

fn cumulative(p: Vec<f64>) -> Vec<f64> {
    let mut acc = 0.0;
    p.into_iter()
        .map(|x| {
            acc += x;
            acc
        })
        .collect()
}

/// Rows kept in the cache; longer frontiers are computed on demand.
const CACHE_LIMIT: usize = 4096;

#[derive(Default)]
struct Tables {
    peel: Vec<Vec<f64>>,
    free: Vec<Vec<f64>>,
}

thread_local! {
    static TABLES: RefCell<Tables> = RefCell::new(Tables::default());
}

fn with_row<R>(
    pick: fn(&mut Tables) -> &mut Vec<Vec<f64>>,
    build: fn(usize) -> Vec<f64>,
    i: usize,
    f: impl FnOnce(&[f64]) -> R,
) -> R {
    if i >= CACHE_LIMIT {
        return f(&cumulative(build(i)));
    }
    TABLES.with(|t| {
        let mut t = t.borrow_mut();
        let rows = pick(&mut t);
        while rows.len() <= i {
            let n = rows.len();
            rows.push(cumulative(build(n)));
        }
        f(&rows[i])
    })
}

/// Runs `f` on the cumulative peeling law for index `m`.
pub(crate) fn with_peel_cdf<R>(m: usize, f: impl FnOnce(&[f64]) -> R) -> R {
    with_row(|t| &mut t.peel, peel_f64, m, f)
}

/// Runs `f` on the cumulative free-step law for index `j`.
pub(crate) fn with_free_cdf<R>(j: usize, f: impl FnOnce(&[f64]) -> R) -> R {
    with_row(|t| &mut t.free, free_f64, j, f)
}

/// Law of one peeling step on a frontier of length `m + 2`.
pub fn peel_step_distribution(m: usize) -> Vec<PeelEvent> {
    peel_exact(m)
        .into_iter()
        .enumerate()
        .map(|(i, probability)| PeelEvent { variant: peel_variant(m, i), probability })
        .collect()
}

pub(crate) fn peel_variant(m: usize, i: usize) -> PeelVariant {
    match i {
        0 => PeelVariant::Grow,
        i if i <= m => PeelVariant::Swallow { side: Side::Left, k: i },
        i => PeelVariant::Swallow { side: Side::Right, k: i - m },
    }
}

#[cfg(test)]
fn peel_index(m: usize, v: PeelVariant) -> usize {
    match v {
        PeelVariant::Grow => 0,
        PeelVariant::Swallow { side: Side::Left, k } => k,
        PeelVariant::Swallow { side: Side::Right, k } => m + k,
    }
}

#[cfg(test)]
fn total(ps: &[Rational]) -> Rational {
    ps.iter().fold(num_traits::Zero::zero(), |a, b| a + b)
}
