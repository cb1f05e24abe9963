use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{factorial, ratio, BigCount, Rational, TriType};
use crate::error::{domain, Result};

/// Critical value of the parameter `θ` (`t = θ(1-2θ)²` for type II,
/// `t = θ(1-θ)³` for type III).
pub fn theta_critical(t: TriType) -> Rational {
    match t {
        TriType::TypeII => ratio(1, 6),
        TriType::TypeIII => ratio(1, 4),
    }
}

/// Weight `t` corresponding to `θ`.
pub fn weight_of_theta(t: TriType, theta: &Rational) -> Rational {
    let one = Rational::one();
    match t {
        TriType::TypeII => {
            let s = &one - theta * Rational::from_integer(2.into());
            theta * &s * &s
        }
        TriType::TypeIII => {
            let s = &one - theta;
            theta * &s * &s * &s
        }
    }
}

fn catalan_like(m: usize) -> Rational {
    // (2m)! / (m! (m+2)!)
    Rational::new(
        BigInt::from(factorial(2 * m)),
        BigInt::from(factorial(m) * factorial(m + 2)),
    )
}

/// Partition function `Z_m(t)` at the weight `t(θ)`, evaluated in closed form.
pub fn z_closed(t: TriType, m: usize, theta: &Rational) -> Result<Rational> {
    if *theta < Rational::zero() || *theta > theta_critical(t) {
        return Err(domain(format!("theta {theta} outside [0, {}]", theta_critical(t))));
    }
    let mm = Rational::from_integer(BigInt::from(m));
    let one = Rational::one();
    let base = catalan_like(m);
    match t {
        TriType::TypeII => {
            let six = Rational::from_integer(6.into());
            let two = Rational::from_integer(2.into());
            let lin = (&one - &six * theta) * &mm + &two - &six * theta;
            let inv = (&one - &two * theta).recip();
            Ok(base * lin * num_traits::pow(inv, 2 * m + 2))
        }
        TriType::TypeIII => {
            let four = Rational::from_integer(4.into());
            let two = Rational::from_integer(2.into());
            let lin = (&one - &four * theta) * &mm + &two - &two * theta;
            let inv = (&one - theta).recip();
            Ok(base * lin * num_traits::pow(inv, 2 * m + 1))
        }
    }
}

/// `Z_m` at the critical weight `1/α`.
pub fn z_critical(t: TriType, m: usize) -> Result<Rational> {
    z_closed(t, m, &theta_critical(t))
}

/// Truncated series `Σ_{n<terms} φ(n,m) α^{-n}` with an explicit bound on the
/// omitted tail.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesPartial {
    pub partial: Rational,
    pub tail_bound: Rational,
}

fn phi_or_digon(t: TriType, n: usize, m: usize) -> BigCount {
    if t == TriType::TypeIII && m == 0 {
        return if n == 0 { BigUint::one() } else { BigUint::zero() };
    }
    super::phi(t, n, m).expect("valid arguments")
}

/// `φ(n+1,m)/φ(n,m)` in floating point.
fn phi_step_ratio(t: TriType, n: usize, m: usize) -> f64 {
    let (n, m) = (n as f64, m as f64);
    match t {
        TriType::TypeII => {
            let a = 2.0 * m + 3.0 * n;
            let b = 2.0 * m + 2.0 * n;
            2.0 * (a + 3.0) * (a + 2.0) * (a + 1.0) / ((n + 1.0) * (b + 4.0) * (b + 3.0))
        }
        TriType::TypeIII => {
            let a = 4.0 * n + 2.0 * m;
            let b = 3.0 * n + 2.0 * m;
            (a + 3.0) * (a + 2.0) * (a + 1.0) * a
                / ((n + 1.0) * (b + 4.0) * (b + 3.0) * (b + 2.0))
        }
    }
}

/// Envelope constant `β_m`: twice the largest `φ(n,m)(n+1)^{5/2}α^{-n}` seen
/// for `n <= 1000`.
pub(crate) fn envelope_beta(t: TriType, m: usize) -> f64 {
    let inv_alpha = match t {
        TriType::TypeII => 2.0 / 27.0,
        TriType::TypeIII => 27.0 / 256.0,
    };
    let mut term = super::rational_to_f64(&Rational::from_integer(BigInt::from(
        phi_or_digon(t, 0, m),
    )));
    let mut best: f64 = term;
    for n in 0..1000usize {
        term *= phi_step_ratio(t, n, m) * inv_alpha;
        best = best.max(term * ((n + 2) as f64).powf(2.5));
    }
    2.0 * best
}

pub fn z_series_partial(t: TriType, m: usize, terms: usize) -> Result<SeriesPartial> {
    if terms == 0 {
        return Err(domain("at least one series term is required"));
    }
    if t == TriType::TypeIII && m == 0 {
        return Ok(SeriesPartial { partial: Rational::one(), tail_bound: Rational::zero() });
    }
    let inv_alpha = t.alpha().recip();
    let a: BigUint = inv_alpha.numer().to_biguint().expect("positive");
    let b: BigUint = inv_alpha.denom().to_biguint().expect("positive");
    // Σ φ_n a^n b^(N-1-n) / b^(N-1), accumulated Horner-style.
    let mut acc = BigUint::zero();
    for n in 0..terms {
        acc = acc * &b + phi_or_digon(t, n, m) * num_traits::pow(a.clone(), n);
    }
    let den = num_traits::pow(b, terms - 1);
    let partial = BigRational::new(BigInt::from(acc), BigInt::from(den));

    let beta = envelope_beta(t, m);
    let tail = (2.0 / 3.0) * beta * (terms as f64).powf(-1.5) * (1.0 + 1e-9);
    let tail_bound = BigRational::from_float(tail).expect("finite tail bound");
    Ok(SeriesPartial { partial, tail_bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::phi;

    #[test]
    fn critical_values() {
        assert_eq!(z_critical(TriType::TypeII, 0).unwrap(), ratio(9, 8));
        assert_eq!(z_critical(TriType::TypeII, 1).unwrap(), ratio(27, 16));
        assert_eq!(z_critical(TriType::TypeII, 2).unwrap(), ratio(729, 128));
        assert_eq!(z_critical(TriType::TypeIII, 0).unwrap(), Rational::one());
        assert_eq!(z_critical(TriType::TypeIII, 1).unwrap(), ratio(32, 27));
    }

    #[test]
    fn critical_matches_product_form() {
        for m in 0..30usize {
            let base = catalan_like(m);
            let ii = base.clone() * num_traits::pow(ratio(9, 4), m + 1);
            let iii = base * Rational::from_integer(2.into()) * num_traits::pow(ratio(16, 9), m);
            assert_eq!(z_critical(TriType::TypeII, m).unwrap(), ii);
            assert_eq!(z_critical(TriType::TypeIII, m).unwrap(), iii);
        }
    }

    #[test]
    fn zero_weight_is_catalan() {
        for m in 0..12usize {
            let cat = Rational::from_integer(BigInt::from(phi(TriType::TypeII, 0, m).unwrap()));
            assert_eq!(z_closed(TriType::TypeII, m, &Rational::zero()).unwrap(), cat);
            if m >= 1 {
                assert_eq!(z_closed(TriType::TypeIII, m, &Rational::zero()).unwrap(), cat);
            }
        }
    }

    #[test]
    fn theta_parametrization_hits_inverse_alpha() {
        for t in [TriType::TypeII, TriType::TypeIII] {
            assert_eq!(weight_of_theta(t, &theta_critical(t)), t.alpha().recip());
        }
    }

    #[test]
    fn closed_form_matches_series_off_criticality() {
        // Away from θ_c the series converges geometrically; 400 terms are plenty.
        for t in [TriType::TypeII, TriType::TypeIII] {
            let theta = ratio(1, 20);
            let w = super::super::rational_to_f64(&weight_of_theta(t, &theta));
            for m in t.min_boundary()..5 {
                let mut term = super::super::rational_to_f64(&Rational::from_integer(
                    BigInt::from(phi_or_digon(t, 0, m)),
                ));
                let mut sum = term;
                for n in 0..400 {
                    term *= phi_step_ratio(t, n, m) * w;
                    sum += term;
                }
                let closed = super::super::rational_to_f64(&z_closed(t, m, &theta).unwrap());
                assert!((sum - closed).abs() < 1e-12 * closed, "{t} m={m}: {sum} vs {closed}");
            }
        }
    }

    #[test]
    fn rejects_supercritical_theta() {
        assert!(z_closed(TriType::TypeII, 1, &ratio(1, 5)).is_err());
        assert!(z_closed(TriType::TypeIII, 1, &ratio(-1, 5)).is_err());
    }

    #[test]
    fn first_term_only() {
        let s = z_series_partial(TriType::TypeII, 0, 1).unwrap();
        assert_eq!(s.partial, Rational::one());
    }

    #[test]
    fn partial_sums_within_tail_bound() {
        for t in [TriType::TypeII, TriType::TypeIII] {
            for m in t.min_boundary()..=10 {
                let z = z_critical(t, m).unwrap();
                for terms in [10, 100, 1000] {
                    let s = z_series_partial(t, m, terms).unwrap();
                    assert!(s.partial <= z, "{t} m={m} terms={terms}");
                    assert!(&z - &s.partial <= s.tail_bound, "{t} m={m} terms={terms}");
                }
            }
        }
    }
}
