use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::One;

const TABLE_LEN: usize = 4096;

fn table() -> &'static [BigUint] {
    static TABLE: OnceLock<Vec<BigUint>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Vec::with_capacity(TABLE_LEN);
        t.push(BigUint::one());
        for i in 1..TABLE_LEN {
            let next = &t[i - 1] * BigUint::from(i);
            t.push(next);
        }
        t
    })
}

/// `n!`, memoized for `n < 4096` and extended by direct product beyond.
pub fn factorial(n: usize) -> BigUint {
    let t = table();
    if n < t.len() {
        return t[n].clone();
    }
    let mut acc = t[t.len() - 1].clone();
    for i in t.len()..=n {
        acc *= BigUint::from(i);
    }
    acc
}

pub(crate) fn factorial_ref(n: usize) -> Option<&'static BigUint> {
    table().get(n)
}
