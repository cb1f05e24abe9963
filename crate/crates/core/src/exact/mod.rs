//! Exact enumeration and closed-form constants.
//!
//! Every constant that carries an irrational factor in its asymptotic form
//! (`√3/(4√π)` for type II, `1/(3√(6π))` for type III) is stored divided by
//! that factor. All probabilities built from these constants are ratios in
//! which the factor cancels.

mod constants;
mod core_law;
mod count;
mod factorial;
mod partition;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

pub use constants::{
    ball_probability, c_hat, critical_constants, inf_face_distribution, sub_triangulation_probability, CriticalConstants,
    ScaledConstant,
};
pub use core_law::{
    core_size_partial_sum, core_size_prob, deg3_limit, deg3_normalization,
    deg3_partial_sum, free_digon_mean_size, z0_power_coeff, DEG3_C0,
};
pub use count::{phi, phi_recurrence_residual, sphere_count, PhiTable};
pub use factorial::factorial;
pub use partition::{theta_critical, weight_of_theta, z_closed, z_critical, z_series_partial, SeriesPartial};

/// Arbitrary-precision count.
pub type BigCount = num_bigint::BigUint;
/// Exact rational in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Triangulation class: type II allows multiple edges, type III is simple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TriType {
    TypeII,
    TypeIII,
}

impl TriType {
    /// Smallest valid boundary index for disc counts.
    pub fn min_boundary(self) -> usize {
        match self {
            TriType::TypeII => 0,
            TriType::TypeIII => 1,
        }
    }

    /// Exponential growth rate of the counts.
    pub fn alpha(self) -> Rational {
        match self {
            TriType::TypeII => ratio(27, 2),
            TriType::TypeIII => ratio(256, 27),
        }
    }

    pub fn as_digit(self) -> u8 {
        match self {
            TriType::TypeII => 2,
            TriType::TypeIII => 3,
        }
    }
}

impl fmt::Display for TriType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TriType::TypeII => f.write_str("II"),
            TriType::TypeIII => f.write_str("III"),
        }
    }
}

impl FromStr for TriType {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s.trim() {
            "2" | "II" | "ii" | "typeII" | "type2" => Ok(TriType::TypeII),
            "3" | "III" | "iii" | "typeIII" | "type3" => Ok(TriType::TypeIII),
            other => Err(crate::error::domain(format!("unknown triangulation type {other:?}"))),
        }
    }
}

/// Shorthand for a small exact rational.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"` or an integer into an exact rational.
pub fn parse_rational(s: &str) -> crate::Result<Rational> {
    let s = s.trim();
    let bad = || crate::Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q == BigInt::from(0) {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Serializes a rational as `"p/q"` (or `"p"` for integers).
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Nearest `f64` to an exact rational, robust to numerators and denominators
/// far outside the `f64` range.
pub fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::{Signed, ToPrimitive, Zero};
    if r.is_zero() {
        return 0.0;
    }
    let neg = r.is_negative();
    let num = r.numer().abs();
    let den = r.denom().clone();
    let shift = num.bits() as i64 - den.bits() as i64;
    // Bring the quotient to ~2^64 before converting.
    let scaled = if shift > 64 {
        num / (den << ((shift - 64) as usize))
    } else {
        (num << ((64 - shift) as usize)) / den
    };
    let mant = scaled.to_f64().unwrap_or(f64::INFINITY);
    let v = mant * 2f64.powi((shift - 64) as i32);
    if neg {
        -v
    } else {
        v
    }
}

/// Serde adapter storing a [`Rational`] as a `"p/q"` string.
pub mod rational_serde {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}
