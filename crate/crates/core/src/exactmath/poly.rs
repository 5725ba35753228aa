//! Root finding for univariate polynomials with cyclotomic coefficients,
//! restricted to the roots the rest of the crate can use.

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

use super::cyclotomic::lcm;
use super::scalar::Scalar;

/// Evaluate `Σ coeffs[k] x^k` by Horner's rule.
pub fn eval(coeffs: &[Scalar], x: &Scalar) -> Scalar {
    coeffs.iter().rev().fold(Scalar::zero(), |acc, c| &(&acc * x) + c)
}

/// Distinct roots of `coeffs` (lowest degree first) of the form `q` or
/// `q·ζ_M^k`, where `q` is rational and `M` is the lcm of 2, `conductor` and
/// the coefficient conductors.
///
/// Rational roots are found with the rational root theorem when the
/// polynomial is rational. Irrational roots are only searched among
/// `±ζ_M^k`, which covers the unit-modulus eigenvalues that appear in
/// group-like computations. Roots are returned in a deterministic order.
pub fn roots_in_field(coeffs: &[Scalar], conductor: u32) -> Vec<Scalar> {
    let mut coeffs = coeffs.to_vec();
    while coeffs.last().is_some_and(Scalar::is_zero) {
        coeffs.pop();
    }
    if coeffs.len() <= 1 {
        return Vec::new();
    }
    let mut out: Vec<Scalar> = Vec::new();
    let push = |r: Scalar, out: &mut Vec<Scalar>| {
        if !out.contains(&r) {
            out.push(r);
        }
    };
    if coeffs[0].is_zero() {
        push(Scalar::zero(), &mut out);
    }
    let rational: Option<Vec<BigRational>> =
        coeffs.iter().map(|c| c.as_rational().cloned()).collect();
    if let Some(q) = rational {
        for r in rational_roots(&q) {
            push(Scalar::from_rational(r), &mut out);
        }
    }
    let m = coeffs.iter().fold(lcm(2, conductor), |acc, c| lcm(acc, c.conductor()));
    for k in 0..m as i64 {
        let z = Scalar::zeta_pow(m, k).expect("conductor in range");
        if eval(&coeffs, &z).is_zero() {
            push(z, &mut out);
        }
    }
    out
}

fn rational_roots(coeffs: &[BigRational]) -> Vec<BigRational> {
    // strip zero roots
    let start = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
    let c = &coeffs[start..];
    if c.len() <= 1 {
        return Vec::new();
    }
    let den = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = c.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect();
    let (Some(p_divs), Some(q_divs)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for p in &p_divs {
        for q in &q_divs {
            for sign in [1, -1] {
                let r = BigRational::new(BigInt::from(sign) * p, q.clone());
                if !out.contains(&r) && eval_rational(c, &r).is_zero() {
                    out.push(r);
                }
            }
        }
    }
    out.sort();
    out
}

fn eval_rational(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

// Positive divisors by trial division; gives up on very large inputs.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64().filter(|&v| v <= 1 << 40)?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn rational_roots_of_quadratic() {
        // (2x - 1)(x + 3) = 2x^2 + 5x - 3
        let r = roots_in_field(&ints(&[-3, 5, 2]), 1);
        assert!(r.contains(&Scalar::from_ratio(1, 2)));
        assert!(r.contains(&Scalar::from_int(-3)));
        assert_eq!(r.len(), 2);
    }

    #[test]
    fn roots_of_unity() {
        // x^2 + 1 over Q(i)
        let r = roots_in_field(&ints(&[1, 0, 1]), 4);
        assert_eq!(r.len(), 2);
        assert!(r.contains(&Scalar::zeta(4).unwrap()));
    }

    #[test]
    fn zero_root_detected() {
        assert_eq!(roots_in_field(&ints(&[0, 1]), 1), vec![Scalar::zero()]);
    }
}
