use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::{phi, ratio, Rational, TriType};
use crate::error::{domain, Result};

/// Coefficient of `x^j` in `Z₀(x)^E`, where `Z₀(x) = Σ φ²(n,0) xⁿ`.
pub fn z0_power_coeff(edge_count: usize, j: usize) -> BigUint {
    let base: Vec<BigUint> =
        (0..=j).map(|n| phi(TriType::TypeII, n, 0).expect("type II")).collect();
    let mul = |a: &[BigUint], b: &[BigUint]| {
        let mut out = vec![BigUint::zero(); j + 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (k, y) in b.iter().enumerate().take(j + 1 - i) {
                out[i + k] += x * y;
            }
        }
        out
    };
    let mut result = vec![BigUint::zero(); j + 1];
    result[0] = BigUint::one();
    let mut power = base;
    let mut e = edge_count;
    while e > 0 {
        if e & 1 == 1 {
            result = mul(&result, &power);
        }
        e >>= 1;
        if e > 0 {
            power = mul(&power, &power);
        }
    }
    result.swap_remove(j)
}

/// Fuss–Catalan numbers `F_k = 2(4k+1)!/(k!(3k+2)!)`, iterated.
struct FussCatalan {
    k: u64,
    value: BigUint,
}

impl FussCatalan {
    fn new() -> Self {
        FussCatalan { k: 0, value: BigUint::one() }
    }

    fn advance(&mut self) {
        let k = self.k;
        self.value *= (4 * k + 5) * (4 * k + 4) * (4 * k + 3) * (4 * k + 2);
        self.value /= (k + 1) * (3 * k + 5) * (3 * k + 4) * (3 * k + 3);
        self.k += 1;
    }
}

fn core_prefactor() -> Rational {
    // 2^19 / 3^7
    Rational::new(BigInt::from(1u64 << 19), BigInt::from(2187))
}

/// Probability `a_n` that the root core of a uniform infinite type II
/// triangulation has exactly `n` vertices.
pub fn core_size_prob(n: usize) -> Result<Rational> {
    if n < 3 {
        return Err(domain("core size must be at least 3"));
    }
    let mut f = FussCatalan::new();
    for _ in 3..n {
        f.advance();
    }
    Ok(core_prefactor()
        * Rational::from_integer(BigInt::from(f.value))
        * num_traits::pow(ratio(27, 256), n))
}

/// `Σ_{n=3..N} a_n`, exact.
pub fn core_size_partial_sum(n_max: usize) -> Result<Rational> {
    if n_max < 3 {
        return Err(domain("core size must be at least 3"));
    }
    // Σ F_{n-3} 27^n 256^{N-n} / 256^N, accumulated by Horner's rule.
    let mut f = FussCatalan::new();
    let mut pow27 = num_traits::pow(BigUint::from(27u32), 3);
    let mut acc = BigUint::zero();
    for n in 3..=n_max {
        if n > 3 {
            f.advance();
            pow27 *= 27u32;
        }
        acc = (acc << 8usize) + &f.value * &pow27;
    }
    let den = BigUint::one() << (8 * n_max);
    Ok(core_prefactor() * Rational::new(BigInt::from(acc), BigInt::from(den)))
}

/// Normalising constant of the type III root-degree law.
pub const DEG3_C0: i64 = 1;

/// Integer parts `(2k-3)!/((k-3)!(k-1)!)` for `k = 3, 4, ...`.
fn deg3_coeff_iter() -> impl Iterator<Item = BigUint> {
    // k = 3 gives 3; ratio to k+1 is (2k-1)(2k-2)/((k-2)k).
    let mut k: u64 = 3;
    let mut value = BigUint::from(3u32);
    std::iter::from_fn(move || {
        let out = value.clone();
        value *= (2 * k - 1) * (2 * k - 2);
        value /= (k - 2) * k;
        k += 1;
        Some(out)
    })
}

/// Limiting probability that the root vertex of the uniform infinite type III
/// triangulation has degree `k`.
pub fn deg3_limit(k: usize) -> Result<Rational> {
    if k < 3 {
        return Err(domain("vertex degree in a type III triangulation is at least 3"));
    }
    let c = deg3_coeff_iter().nth(k - 3).expect("infinite iterator");
    Ok(Rational::from_integer(DEG3_C0.into())
        * Rational::from_integer(BigInt::from(c))
        * num_traits::pow(ratio(3, 16), k - 1))
}

/// `Σ_{k=3..K} deg3_limit(k)`, exact.
pub fn deg3_partial_sum(k_max: usize) -> Result<Rational> {
    if k_max < 3 {
        return Err(domain("vertex degree in a type III triangulation is at least 3"));
    }
    // Σ c_k 3^{k-1} 16^{K-k} / 16^{K-1}
    let mut acc = BigUint::zero();
    let mut pow3 = BigUint::from(9u32);
    for (i, c) in deg3_coeff_iter().take(k_max - 2).enumerate() {
        if i > 0 {
            pow3 *= 3u32;
        }
        acc = (acc << 4usize) + c * &pow3;
    }
    let den = BigUint::one() << (4 * (k_max - 1));
    Ok(Rational::from_integer(DEG3_C0.into()) * Rational::new(BigInt::from(acc), BigInt::from(den)))
}

/// `Σ_{k≥3} deg3_limit(k)` in closed form.
///
/// With `u = 3/16` the series sums to `(6u - 1 + (1-4u)^{3/2}) / (2(1-4u)^{3/2})`,
/// and `(1-4u)^{3/2} = 1/8`.
pub fn deg3_normalization() -> Rational {
    let u = ratio(3, 16);
    let w = ratio(1, 8);
    let s = (ratio(6, 1) * u - Rational::one() + &w) / (ratio(2, 1) * w);
    s * Rational::from_integer(DEG3_C0.into())
}

/// Expected number of internal vertices of a critical free type II 2-gon,
/// `t Z₀'(t)/Z₀(t)` at `t = 2/27`.
///
/// Inflating an edge into such a 2-gon adds twice this many triangles on
/// average.
pub fn free_digon_mean_size() -> Rational {
    // dZ₀/dt = (1-2θ)^{-4}; at θ = 1/6 that is 81/16.
    let t = ratio(2, 27);
    let dz = ratio(81, 16);
    t * dz / ratio(9, 8)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{factorial, rational_to_f64, z_critical};

    fn a_n_direct(n: usize) -> Rational {
        Rational::new(
            BigInt::from(factorial(4 * n - 11) << 20usize),
            BigInt::from(factorial(n - 3) * factorial(3 * n - 7) * BigUint::from(2187u32)),
        ) * num_traits::pow(ratio(27, 256), n)
    }

    #[test]
    fn a_n_examples() {
        assert_eq!(core_size_prob(3).unwrap(), ratio(9, 32));
        assert_eq!(core_size_prob(4).unwrap(), ratio(243, 4096));
        assert!(core_size_prob(2).is_err());
        for n in 3..60 {
            assert_eq!(core_size_prob(n).unwrap(), a_n_direct(n), "n={n}");
        }
    }

    #[test]
    fn partial_sum_matches_termwise() {
        let mut s = Rational::zero();
        for n in 3..=40 {
            s += a_n_direct(n);
            assert_eq!(core_size_partial_sum(n).unwrap(), s);
        }
    }

    // The tail of a_n is of order n^{-3/2}, so the gap to 1/2 halves when
    // the truncation point is multiplied by 4.
    #[test]
    fn partial_sum_gap_rate() {
        let gap = |n| 0.5 - rational_to_f64(&core_size_partial_sum(n).unwrap());
        let (g1, g2) = (gap(500), gap(2000));
        assert!(g1 > 0.0 && g2 > 0.0);
        assert!((g1 / g2 - 2.0).abs() < 0.05, "{g1} {g2}");
        assert!((g2 * 2000f64.sqrt() - 0.23).abs() < 0.01, "{g2}");
    }

    // Core of size n: a simple sphere triangulation with n vertices whose
    // 3n-6 edges each carry an independent free 2-gon.
    #[test]
    fn a_n_from_transform_identity() {
        let z0 = z_critical(TriType::TypeII, 0).unwrap();
        let alpha = TriType::TypeII.alpha();
        for n in 3..20usize {
            let spheres =
                Rational::from_integer(BigInt::from(phi(TriType::TypeIII, n - 3, 1).unwrap()));
            let via = Rational::from_integer(BigInt::from(3 * n - 6))
                * num_traits::pow(alpha.recip(), n - 2)
                * num_traits::pow(z0.clone(), 3 * n - 7)
                * spheres;
            assert_eq!(core_size_prob(n).unwrap(), via, "n={n}");
        }
        assert_eq!(num_traits::pow(z0, 3) * alpha.recip(), TriType::TypeIII.alpha().recip());
    }

    #[test]
    fn deg3_examples() {
        assert_eq!(deg3_limit(3).unwrap(), ratio(27, 256));
        assert!(deg3_limit(2).is_err());
        for k in 3..200usize {
            let r = deg3_limit(k + 1).unwrap() / deg3_limit(k).unwrap();
            let kk = k as i64;
            let expect = ratio((2 * kk - 1) * (2 * kk - 2), (kk - 2) * kk) * ratio(3, 16);
            assert_eq!(r, expect);
        }
        let r = rational_to_f64(&(deg3_limit(5001).unwrap() / deg3_limit(5000).unwrap()));
        assert!((r - 0.75).abs() < 1e-3);
    }

    #[test]
    fn deg3_normalises() {
        assert_eq!(deg3_normalization(), Rational::one());
        let s = deg3_partial_sum(2000).unwrap();
        assert!(rational_to_f64(&(Rational::one() - &s)).abs() < 1e-12);
        let mut direct = Rational::zero();
        for k in 3..30 {
            direct += deg3_limit(k).unwrap();
            assert_eq!(deg3_partial_sum(k).unwrap(), direct);
        }
    }

    #[test]
    fn z0_coefficients() {
        for e in 0..6 {
            assert_eq!(z0_power_coeff(e, 0), BigUint::one());
        }
        assert_eq!(z0_power_coeff(1, 1), BigUint::one());
        assert_eq!(z0_power_coeff(2, 1), BigUint::from(2u32));
        assert_eq!(z0_power_coeff(0, 3), BigUint::zero());
        for n in 0..10 {
            assert_eq!(z0_power_coeff(1, n), phi(TriType::TypeII, n, 0).unwrap());
        }
    }

    #[test]
    fn digon_mean_size() {
        assert_eq!(free_digon_mean_size(), ratio(1, 3));
        // Cross-check dZ₀/dt = (1-2θ)^{-4} off criticality by series.
        let theta = ratio(1, 20);
        let one = Rational::one();
        let s = &one - ratio(2, 1) * &theta;
        let t = &theta * &s * &s;
        let expect = rational_to_f64(&num_traits::pow(s.recip(), 4));
        let mut deriv = 0.0;
        for n in 1..300usize {
            let c = Rational::from_integer(BigInt::from(phi(TriType::TypeII, n, 0).unwrap() * n));
            deriv += rational_to_f64(&(c * num_traits::pow(t.clone(), n - 1)));
        }
        assert!((deriv / expect - 1.0).abs() < 1e-10, "{deriv} vs {expect}");
    }
}
