use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::factorial::factorial_ref;
use super::{factorial, BigCount, TriType};
use crate::error::{domain, Result};

fn fact(n: usize) -> BigUint {
    match factorial_ref(n) {
        Some(f) => f.clone(),
        None => factorial(n),
    }
}

/// Number of rooted triangulations of an `(m+2)`-gon with `n` internal
/// vertices, rooted on a boundary edge.
///
/// For type II the formula gives `φ(0,0) = 1`, which is kept: it stands for
/// closing a 2-gon by gluing its two edges.
pub fn phi(t: TriType, n: usize, m: usize) -> Result<BigCount> {
    match t {
        TriType::TypeII => {
            let num = (BigUint::one() << (n + 1)) * fact(2 * m + 1) * fact(2 * m + 3 * n);
            let den = fact(m) * fact(m) * fact(n) * fact(2 * m + 2 * n + 2);
            Ok(num / den)
        }
        TriType::TypeIII => {
            if m == 0 {
                return Err(domain("type III counts need boundary index m >= 1"));
            }
            let num = BigUint::from(2u32) * fact(2 * m + 1) * fact(4 * n + 2 * m - 1);
            let den = fact(m - 1) * fact(m + 1) * fact(n) * fact(3 * n + 2 * m + 1);
            Ok(num / den)
        }
    }
}

/// `φ(n,m)` minus the root-edge decomposition of the type II counts:
/// the root triangle either has a new internal apex, or its apex is a
/// boundary vertex splitting the polygon in two. Zero for every input.
pub fn phi_recurrence_residual(t: TriType, n: usize, m: usize) -> Result<BigInt> {
    if t != TriType::TypeII {
        return Err(domain("the root-edge decomposition identity is stated for type II"));
    }
    let table = PhiTable::new(t, n, m + n + 1);
    let lhs = BigInt::from(table.get(n, m).clone());
    let mut rhs = BigUint::zero();
    if n >= 1 {
        rhs += table.get(n - 1, m + 1);
    }
    for k in 1..=m {
        for j in 0..=n {
            rhs += table.get(j, k - 1) * table.get(n - j, m - k);
        }
    }
    if n == 0 && m == 0 {
        rhs += 1u32;
    }
    Ok(lhs - BigInt::from(rhs))
}

/// Rooted sphere triangulations with `n` vertices (closing the outer
/// triangle of a triangulated 3-gon).
pub fn sphere_count(t: TriType, n: usize) -> Result<BigCount> {
    if n < 3 {
        return Err(domain("a sphere triangulation has at least 3 vertices"));
    }
    phi(t, n - 3, 1)
}

/// Immutable table of `φ(n,m)` for `n <= max_n`, `m <= max_m`.
#[derive(Clone, Debug)]
pub struct PhiTable {
    tri: TriType,
    max_n: usize,
    max_m: usize,
    values: Vec<BigCount>,
}

impl PhiTable {
    pub fn new(tri: TriType, max_n: usize, max_m: usize) -> Self {
        let mut values = Vec::with_capacity((max_n + 1) * (max_m + 1));
        for n in 0..=max_n {
            for m in 0..=max_m {
                let v = match (tri, m) {
                    (TriType::TypeIII, 0) => {
                        // Only the glued 2-gon.
                        if n == 0 {
                            BigUint::one()
                        } else {
                            BigUint::zero()
                        }
                    }
                    _ => phi(tri, n, m).expect("valid table index"),
                };
                values.push(v);
            }
        }
        PhiTable { tri, max_n, max_m, values }
    }

    pub fn tri(&self) -> TriType {
        self.tri
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn max_m(&self) -> usize {
        self.max_m
    }

    pub fn contains(&self, n: usize, m: usize) -> bool {
        n <= self.max_n && m <= self.max_m
    }

    /// Panics outside the table.
    pub fn get(&self, n: usize, m: usize) -> &BigCount {
        assert!(self.contains(n, m), "phi table index ({n},{m}) out of range");
        &self.values[n * (self.max_m + 1) + m]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(t: TriType, n: usize, m: usize) -> u64 {
        use num_traits::ToPrimitive;
        phi(t, n, m).unwrap().to_u64().unwrap()
    }

    #[test]
    fn conventional_and_small_values() {
        assert_eq!(p(TriType::TypeII, 0, 0), 1);
        assert_eq!(p(TriType::TypeIII, 0, 1), 1);
        assert_eq!(p(TriType::TypeII, 1, 1), 4);
        assert_eq!(p(TriType::TypeIII, 1, 2), 5);
        assert_eq!(p(TriType::TypeIII, 1, 1), 1);
    }

    #[test]
    fn zero_internal_vertices_is_catalan() {
        let catalan = [1u64, 1, 2, 5, 14, 42, 132, 429];
        for (m, &c) in catalan.iter().enumerate() {
            assert_eq!(p(TriType::TypeII, 0, m), c, "m={m}");
            if m >= 1 {
                assert_eq!(p(TriType::TypeIII, 0, m), c, "m={m}");
            }
        }
    }

    #[test]
    fn type_three_rejects_digon() {
        assert!(phi(TriType::TypeIII, 3, 0).is_err());
        assert!(sphere_count(TriType::TypeII, 2).is_err());
    }

    #[test]
    fn sphere_counts() {
        use num_traits::ToPrimitive;
        let s = |t, n| sphere_count(t, n).unwrap().to_u64().unwrap();
        assert_eq!(s(TriType::TypeII, 4), 4);
        assert_eq!(s(TriType::TypeIII, 4), 1);
        assert_eq!(s(TriType::TypeIII, 3), 1);
    }

    #[test]
    fn residual_examples() {
        for (n, m) in [(2, 0), (1, 1), (0, 0)] {
            assert!(phi_recurrence_residual(TriType::TypeII, n, m).unwrap().is_zero());
        }
        assert!(phi_recurrence_residual(TriType::TypeIII, 1, 1).is_err());
    }

    #[test]
    fn digon_counts_shift_to_triangle() {
        for n in 1..40 {
            assert_eq!(
                phi(TriType::TypeII, n, 0).unwrap(),
                phi(TriType::TypeII, n - 1, 1).unwrap()
            );
        }
    }
}
