//! Cyclotomic polynomials and reduction modulo them.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num::{BigRational, Integer, Zero};

/// Largest conductor accepted anywhere in the crate.
pub const MAX_CONDUCTOR: u32 = 4096;

/// Euler's totient.
pub fn totient(m: u32) -> usize {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

fn cache() -> &'static RwLock<HashMap<u32, Arc<[i64]>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<[i64]>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Coefficients of the `m`-th cyclotomic polynomial, lowest degree first.
/// The polynomial is monic of degree `φ(m)`.
pub fn cyclotomic_poly(m: u32) -> Arc<[i64]> {
    assert!((1..=MAX_CONDUCTOR).contains(&m), "conductor {m} out of range");
    if let Some(p) = cache().read().unwrap().get(&m) {
        return Arc::clone(p);
    }
    // x^m - 1 = prod_{d | m} Φ_d(x)
    let mut num: Vec<i64> = vec![0; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            let div = cyclotomic_poly(d);
            num = exact_div(&num, &div);
        }
    }
    let poly: Arc<[i64]> = num.into();
    cache().write().unwrap().insert(m, Arc::clone(&poly));
    poly
}

// Division by a monic integer polynomial that is known to be exact.
fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    let mut quot = vec![0i64; nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (t, &dv) in den.iter().enumerate() {
                rem[k + t] -= c * dv;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Reduce a polynomial modulo `Φ_m` in place; trailing zeros are trimmed.
pub fn reduce(coeffs: &mut Vec<BigRational>, m: u32) {
    let phi = cyclotomic_poly(m);
    let deg = phi.len() - 1;
    while coeffs.len() > deg {
        let top = coeffs.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let shift = coeffs.len() - deg;
        for (t, &c) in phi.iter().take(deg).enumerate() {
            if c != 0 {
                coeffs[shift + t] -= &top * BigRational::from_integer(c.into());
            }
        }
    }
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(&*cyclotomic_poly(1), &[-1, 1]);
        assert_eq!(&*cyclotomic_poly(2), &[1, 1]);
        assert_eq!(&*cyclotomic_poly(3), &[1, 1, 1]);
        assert_eq!(&*cyclotomic_poly(4), &[1, 0, 1]);
        assert_eq!(&*cyclotomic_poly(6), &[1, -1, 1]);
        assert_eq!(&*cyclotomic_poly(8), &[1, 0, 0, 0, 1]);
        assert_eq!(&*cyclotomic_poly(12), &[1, 0, -1, 0, 1]);
    }

    #[test]
    fn degree_is_totient() {
        for m in 1..60 {
            assert_eq!(cyclotomic_poly(m).len() - 1, totient(m), "m = {m}");
        }
    }
}
