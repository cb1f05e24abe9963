use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use super::thresholds::CHI_SQUARE_MIN_EXPECTED;
use crate::error::{domain, Result};
use crate::exact::{rational_serde, rational_to_f64, Rational};

/// Label of the bucket holding every observation without a listed
/// expectation.
pub const TAIL: &str = "tail";

/// One histogram bin.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bin {
    pub label: String,
    pub count: u64,
}

impl Bin {
    pub fn new(label: impl Into<String>, count: u64) -> Self {
        Bin { label: label.into(), count }
    }
}

/// An exact expected probability and the computation it came from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Expected {
    pub label: String,
    #[serde(with = "rational_serde")]
    pub probability: Rational,
    pub provenance: String,
}

impl Expected {
    pub fn new(label: impl Into<String>, probability: Rational, provenance: impl Into<String>) -> Self {
        Expected { label: label.into(), probability, provenance: provenance.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Statistics {
    pub samples: u64,
    pub chi_square: f64,
    pub dof: usize,
    /// Asymptotic chi-square tail probability.
    pub p_value: f64,
    pub tv: f64,
    /// Expected total variation from sampling noise alone.
    pub tv_noise: f64,
    /// Bins left after pooling.
    pub bins: usize,
    /// Bins merged into others because their expected count was small.
    pub pooled: usize,
}

pub fn total(bins: &[Bin]) -> u64 {
    bins.iter().map(|b| b.count).sum()
}

pub fn count_of(bins: &[Bin], label: &str) -> u64 {
    bins.iter().filter(|b| b.label == label).map(|b| b.count).sum()
}

pub fn frequency(bins: &[Bin], label: &str) -> f64 {
    match total(bins) {
        0 => 0.0,
        n => count_of(bins, label) as f64 / n as f64,
    }
}

/// Half-width of the normal 95% interval of a frequency `p` over `n`
/// trials.
pub fn half_width(p: f64, n: u64) -> f64 {
    if n == 0 {
        return f64::INFINITY;
    }
    super::thresholds::Z95 * (p * (1.0 - p) / n as f64).sqrt()
}

/// A chi-square cell: observed and expected counts per sample.
#[derive(Clone, Copy)]
struct Cell {
    obs: [f64; 2],
    exp: [f64; 2],
}

impl Cell {
    fn add(&mut self, o: &Cell) {
        for i in 0..2 {
            self.obs[i] += o.obs[i];
            self.exp[i] += o.exp[i];
        }
    }

    fn smallest(&self, arms: usize) -> f64 {
        self.exp[..arms].iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Merges cells with expected counts below the minimum, smallest first.
fn pool(cells: Vec<Cell>, arms: usize) -> (Vec<Cell>, usize) {
    let (mut big, small): (Vec<Cell>, Vec<Cell>) =
        cells.into_iter().partition(|c| c.smallest(arms) >= CHI_SQUARE_MIN_EXPECTED);
    let mut pooled = small.len();
    if small.is_empty() {
        return (big, 0);
    }
    let mut acc = Cell { obs: [0.0; 2], exp: [0.0; 2] };
    small.iter().for_each(|c| acc.add(c));
    if acc.smallest(arms) < CHI_SQUARE_MIN_EXPECTED && !big.is_empty() {
        let (i, _) = big
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.smallest(arms).total_cmp(&b.1.smallest(arms)))
            .expect("non-empty");
        acc.add(&big.remove(i));
        pooled += 1;
    }
    big.push(acc);
    (big, pooled)
}

fn chi_square(cells: &[Cell], arms: usize) -> (f64, usize, f64) {
    let mut chi = 0.0;
    for c in cells {
        for i in 0..arms {
            let d = c.obs[i] - c.exp[i];
            if c.exp[i] > 0.0 {
                chi += d * d / c.exp[i];
            } else if d != 0.0 {
                chi = f64::INFINITY;
            }
        }
    }
    let dof = cells.len().saturating_sub(1);
    let p = if dof == 0 {
        1.0
    } else if chi.is_infinite() {
        0.0
    } else {
        ChiSquared::new(dof as f64).expect("positive dof").sf(chi)
    };
    (chi, dof, p)
}

/// Compares a histogram with exact probabilities.
///
/// Observations whose label has no expectation, together with the missing
/// mass `1 - sum(expected)`, form the [`TAIL`] bucket.
pub fn goodness_of_fit(observed: &[Bin], expected: &[Expected]) -> Result<Statistics> {
    let n = total(observed);
    if n == 0 {
        return Err(domain("empty histogram"));
    }
    let mut rest = Rational::one();
    let mut seen = BTreeMap::new();
    for e in expected {
        if e.probability < Rational::zero() {
            return Err(domain(format!("negative expectation for {}", e.label)));
        }
        if seen.insert(e.label.as_str(), ()).is_some() {
            return Err(domain(format!("duplicate label {}", e.label)));
        }
        rest -= &e.probability;
    }
    if rest < Rational::zero() {
        return Err(domain("expected probabilities sum above one"));
    }
    let nf = n as f64;
    let mut probs: Vec<(u64, f64)> =
        expected.iter().map(|e| (count_of(observed, &e.label), rational_to_f64(&e.probability))).collect();
    let listed: u64 = probs.iter().map(|c| c.0).sum();
    probs.push((n - listed, rational_to_f64(&rest)));
    let tv = 0.5 * probs.iter().map(|(o, p)| (*o as f64 / nf - p).abs()).sum::<f64>();
    let tv_noise = 0.5 * probs.iter().map(|(_, p)| (2.0 * p * (1.0 - p) / (PI * nf)).sqrt()).sum::<f64>();
    let cells = probs
        .iter()
        .filter(|(o, p)| *o > 0 || *p > 0.0)
        .map(|(o, p)| Cell { obs: [*o as f64, 0.0], exp: [p * nf, 0.0] })
        .collect();
    let (cells, pooled) = pool(cells, 1);
    let (chi, dof, p_value) = chi_square(&cells, 1);
    Ok(Statistics { samples: n, chi_square: chi, dof, p_value, tv, tv_noise, bins: cells.len(), pooled })
}

/// Compares two histograms that should share a law. The chi-square
/// statistic is the homogeneity test on the pooled contingency table.
pub fn two_sample(a: &[Bin], b: &[Bin]) -> Result<Statistics> {
    let (na, nb) = (total(a), total(b));
    if na == 0 || nb == 0 {
        return Err(domain("empty histogram"));
    }
    let mut joint: BTreeMap<&str, [u64; 2]> = BTreeMap::new();
    for x in a {
        joint.entry(&x.label).or_default()[0] += x.count;
    }
    for x in b {
        joint.entry(&x.label).or_default()[1] += x.count;
    }
    let (fa, fb) = (na as f64, nb as f64);
    let both = fa + fb;
    let mut tv = 0.0;
    let mut tv_noise = 0.0;
    let mut cells = Vec::with_capacity(joint.len());
    for [x, y] in joint.values() {
        let (x, y) = (*x as f64, *y as f64);
        tv += (x / fa - y / fb).abs();
        let p = (x + y) / both;
        tv_noise += (2.0 * p * (1.0 - p) * (1.0 / fa + 1.0 / fb) / PI).sqrt();
        cells.push(Cell { obs: [x, y], exp: [fa * p, fb * p] });
    }
    let (cells, pooled) = pool(cells, 2);
    let (chi, dof, p_value) = chi_square(&cells, 2);
    Ok(Statistics {
        samples: na + nb,
        chi_square: chi,
        dof,
        p_value,
        tv: 0.5 * tv,
        tv_noise: 0.5 * tv_noise,
        bins: cells.len(),
        pooled,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn exp(label: &str, p: (i64, i64)) -> Expected {
        Expected::new(label, ratio(p.0, p.1), "test")
    }

    #[test]
    fn exact_counts_give_zero() {
        let e = [exp("a", (1, 4)), exp("b", (1, 2))];
        let o = [Bin::new("a", 250), Bin::new("b", 500), Bin::new("c", 250)];
        let s = goodness_of_fit(&o, &e).unwrap();
        assert_eq!(s.chi_square, 0.0);
        assert_eq!(s.tv, 0.0);
        assert_eq!(s.p_value, 1.0);
        assert_eq!(s.dof, 2);
    }

    #[test]
    fn single_bin_offset() {
        let (n, p, eps) = (100_000u64, 0.3, 0.01);
        let e = [exp("a", (3, 10))];
        let o = [Bin::new("a", ((p + eps) * n as f64) as u64), Bin::new("z", ((1.0 - p - eps) * n as f64).round() as u64)];
        let s = goodness_of_fit(&o, &e).unwrap();
        let want = eps * eps * n as f64 / (p * (1.0 - p));
        assert!((s.chi_square - want).abs() < 1e-6 * want);
        assert!((s.tv - eps).abs() < 1e-12);
    }

    #[test]
    fn tail_absorbs_unlisted() {
        let e = [exp("a", (1, 2))];
        let o = [Bin::new("a", 50), Bin::new("x", 20), Bin::new("y", 30)];
        let s = goodness_of_fit(&o, &e).unwrap();
        assert_eq!(s.tv, 0.0);
        assert_eq!(s.bins, 2);
    }

    #[test]
    fn small_bins_are_pooled() {
        let e = [exp("a", (97, 100)), exp("b", (1, 100)), exp("c", (1, 100))];
        let o = [Bin::new("a", 97), Bin::new("b", 1), Bin::new("c", 2)];
        let s = goodness_of_fit(&o, &e).unwrap();
        assert_eq!(s.bins, 1);
        assert_eq!(s.pooled, 4);
        assert_eq!(s.dof, 0);
    }

    #[test]
    fn errors() {
        assert!(goodness_of_fit(&[], &[exp("a", (1, 2))]).is_err());
        assert!(goodness_of_fit(&[Bin::new("a", 1)], &[exp("a", (2, 3)), exp("b", (2, 3))]).is_err());
        assert!(two_sample(&[Bin::new("a", 1)], &[]).is_err());
    }

    #[test]
    fn two_sample_identical() {
        let a = [Bin::new("x", 300), Bin::new("y", 700)];
        let s = two_sample(&a, &a).unwrap();
        assert_eq!((s.tv, s.chi_square, s.dof), (0.0, 0.0, 1));
        let b = [Bin::new("x", 700), Bin::new("y", 300)];
        let s = two_sample(&a, &b).unwrap();
        assert!((s.tv - 0.4).abs() < 1e-12);
        assert!(s.p_value < 1e-10);
    }

    #[test]
    fn deterministic() {
        let a = [Bin::new("x", 3), Bin::new("y", 70), Bin::new("z", 27)];
        let b = [Bin::new("y", 66), Bin::new("w", 4), Bin::new("z", 30)];
        assert_eq!(two_sample(&a, &b).unwrap(), two_sample(&a, &b).unwrap());
    }
}
