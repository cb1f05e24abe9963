use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::partition::theta_critical;
use super::{factorial, ratio, z_critical, Rational, TriType};
use crate::error::{domain, Result};

/// Per-type critical data: growth rate `α` and the critical parameter `θ_c`.
///
/// The asymptotic constants carry an irrational unit (`√3/(4√π)` for type II,
/// `1/(3√(6π))` for type III) which is never materialised; see [`c_hat`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalConstants {
    pub tri_type: TriType,
    #[serde(with = "super::rational_serde")]
    pub alpha: Rational,
    #[serde(with = "super::rational_serde")]
    pub theta_c: Rational,
}

impl CriticalConstants {
    pub fn z(&self, m: usize) -> Result<Rational> {
        z_critical(self.tri_type, m)
    }

    pub fn c_hat(&self, m: usize) -> Result<ScaledConstant> {
        c_hat(self.tri_type, m)
    }
}

pub fn critical_constants(t: TriType) -> CriticalConstants {
    CriticalConstants { tri_type: t, alpha: t.alpha(), theta_c: theta_critical(t) }
}

/// Asymptotic constant `C_m` divided by the type's irrational unit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScaledConstant {
    pub m: usize,
    #[serde(with = "super::rational_serde")]
    pub c_hat: Rational,
}

pub fn c_hat(t: TriType, m: usize) -> Result<ScaledConstant> {
    let value = match t {
        TriType::TypeII => Rational::new(
            BigInt::from(factorial(2 * m + 1)),
            BigInt::from(factorial(m) * factorial(m)),
        ) * num_traits::pow(ratio(9, 4), m),
        TriType::TypeIII => {
            if m == 0 {
                return Err(domain("type III boundary index must be at least 1"));
            }
            Rational::new(
                BigInt::from(factorial(2 * m + 1)),
                BigInt::from(factorial(m - 1) * factorial(m + 1)),
            ) * num_traits::pow(ratio(16, 9), m)
        }
    };
    Ok(ScaledConstant { m, c_hat: value })
}

/// Probability that each of the listed faces (given by boundary index) is the
/// one containing the infinite part, proportional to `Ĉ_m / Z_m`.
pub fn inf_face_distribution(t: TriType, faces: &[usize]) -> Result<Vec<Rational>> {
    if faces.is_empty() {
        return Err(domain("no faces given"));
    }
    let weights = faces
        .iter()
        .map(|&m| Ok(c_hat(t, m)?.c_hat / z_critical(t, m)?))
        .collect::<Result<Vec<_>>>()?;
    let total = weights.iter().fold(Rational::zero(), |a, w| a + w);
    Ok(weights.into_iter().map(|w| w / &total).collect())
}

/// Probability that the UIPT contains a given rigid rooted triangulation
/// `A` sharing its root, where `A` has `vertices` vertices and external
/// faces of the listed boundary indices.
pub fn sub_triangulation_probability(t: TriType, vertices: usize, faces: &[usize]) -> Result<Rational> {
    if vertices < 3 {
        return Err(domain("a triangulation has at least 3 vertices"));
    }
    if faces.is_empty() {
        return Err(domain("an infinite triangulation has a face left outside A"));
    }
    let mut product = Rational::one();
    let mut sum = Rational::zero();
    for &m in faces {
        let z = z_critical(t, m)?;
        sum += c_hat(t, m)?.c_hat / &z;
        product *= z;
    }
    let scale = num_traits::pow(t.alpha().recip(), vertices - 3) / c_hat(t, 1)?.c_hat;
    Ok(scale * product * sum)
}

/// Probability that the UIPT ball of radius one is exactly a given rooted
/// triangulation `A` with `vertices` vertices and external faces of the
/// listed boundary indices.
///
/// Unlike [`sub_triangulation_probability`], a finite 2-gon face of `A` may
/// not be filled by gluing its two sides, since that would give a different
/// ball; its weight `Z_0` drops to `Z_0 - 1`.
pub fn ball_probability(t: TriType, vertices: usize, faces: &[usize]) -> Result<Rational> {
    if vertices < 3 {
        return Err(domain("a triangulation has at least 3 vertices"));
    }
    if faces.is_empty() {
        return Err(domain("an infinite triangulation has a face left outside A"));
    }
    let z = |m: usize| -> Result<Rational> {
        let z = z_critical(t, m)?;
        Ok(if m == 0 { z - Rational::one() } else { z })
    };
    let mut sum = Rational::zero();
    for (i, &m) in faces.iter().enumerate() {
        let mut term = c_hat(t, m)?.c_hat;
        for (j, &k) in faces.iter().enumerate() {
            if j != i {
                term *= z(k)?;
            }
        }
        sum += term;
    }
    let scale = num_traits::pow(t.alpha().recip(), vertices - 3) / c_hat(t, 1)?.c_hat;
    Ok(scale * sum)
}
