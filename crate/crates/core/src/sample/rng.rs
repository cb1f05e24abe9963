use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::Rational;

/// Deterministic random source with exact rational draws.
///
/// A uniform real `u` in `[0, 1)` is represented by its binary expansion,
/// produced 64 bits at a time and only as far as a comparison needs.
#[derive(Clone, Debug)]
pub struct ExactRng {
    inner: ChaCha8Rng,
}

/// Floating-point margin below which a categorical draw is re-decided
/// exactly.
const TOL: f64 = 1e-9;
const TWO_POW_64: f64 = 18446744073709551616.0;

impl ExactRng {
    pub fn new(seed: u64) -> Self {
        ExactRng { inner: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Independent stream `stream` under the same seed.
    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        ExactRng { inner }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    pub fn bit(&mut self) -> bool {
        self.inner.next_u32() & 1 == 1
    }

    /// Uniform integer in `0..n`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        self.inner.gen_range(0..n)
    }

    /// Uniform big integer in `0..n`, by rejection.
    pub fn below_big(&mut self, n: &BigUint) -> BigUint {
        assert!(!n.is_zero());
        let bits = (n - 1u32).bits();
        if bits == 0 {
            return BigUint::zero();
        }
        let words = bits.div_ceil(64) as usize;
        let excess = words as u64 * 64 - bits;
        loop {
            let mut digits: Vec<u64> = (0..words).map(|_| self.next_u64()).collect();
            if let Some(top) = digits.last_mut() {
                *top >>= excess;
            }
            let x = BigUint::from_slice(
                &digits.iter().flat_map(|d| [*d as u32, (*d >> 32) as u32]).collect::<Vec<_>>(),
            );
            if &x < n {
                return x;
            }
        }
    }

    /// `true` with probability exactly `p`.
    pub fn bernoulli(&mut self, p: &Rational) -> bool {
        let mut u = LazyUniform::new(self.next_u64());
        u.less_than(self, p)
    }

    /// Index `i` with probability `cdf[i] - cdf[i-1]`, where `cdf` holds
    /// floating-point cumulative sums and `exact` recomputes the true
    /// probabilities when the floating-point decision is too close to call.
    pub fn categorical(&mut self, cdf: &[f64], exact: impl FnOnce() -> Vec<Rational>) -> usize {
        let w = self.next_u64();
        let u = w as f64 / TWO_POW_64;
        let i = cdf.partition_point(|&c| c <= u);
        let lo = if i == 0 { -1.0 } else { cdf[i - 1] };
        if let Some(&hi) = cdf.get(i) {
            if u - lo > TOL && hi - u > TOL {
                return i;
            }
        }
        let probs = exact();
        let mut uni = LazyUniform::new(w);
        let mut acc = Rational::zero();
        for (k, p) in probs.iter().enumerate().take(probs.len() - 1) {
            acc += p;
            if uni.less_than(self, &acc) {
                return k;
            }
        }
        probs.len() - 1
    }
}

/// A uniform point of `[0, 1)` revealed 64 bits at a time.
struct LazyUniform {
    words: Vec<u64>,
}

impl LazyUniform {
    fn new(first: u64) -> Self {
        LazyUniform { words: vec![first] }
    }

    fn less_than(&mut self, rng: &mut ExactRng, p: &Rational) -> bool {
        if p <= &Rational::zero() {
            return false;
        }
        if p >= &Rational::one() {
            return true;
        }
        let den = p.denom().clone();
        let mut num = p.numer().clone();
        let mut i = 0;
        loop {
            if i == self.words.len() {
                self.words.push(rng.next_u64());
            }
            let (q, r) = (num << 64usize).div_rem(&den);
            let w = BigInt::from(self.words[i]);
            if w < q {
                return true;
            }
            if w > q || r.is_zero() {
                return false;
            }
            num = r;
            i += 1;
        }
    }
}
