//! Exact elements of the cyclotomic field `Q(ζ_m)`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};

use super::cyclotomic::{self, lcm, MAX_CONDUCTOR};
use crate::error::{Error, Result};

/// An element of `Q(ζ_m)`, stored as the residue of a rational polynomial in
/// `z = ζ_m` modulo the `m`-th cyclotomic polynomial.
///
/// Rational values are kept in a dedicated representation regardless of the
/// conductor, so mixing conductors only costs a lift when both operands are
/// irrational.
#[derive(Clone, Debug)]
pub struct Scalar {
    conductor: u32,
    repr: Repr,
}

#[derive(Clone, Debug)]
enum Repr {
    Rational(BigRational),
    // reduced, degree >= 1, no trailing zeros
    Poly(Box<[BigRational]>),
}

impl Scalar {
    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(n))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Scalar { conductor: 1, repr: Repr::Rational(q) }
    }

    /// Build `Σ coeffs[k] z^k` in `Q(ζ_m)`, reducing modulo `Φ_m`.
    pub fn from_coeffs(conductor: u32, mut coeffs: Vec<BigRational>) -> Result<Self> {
        check_conductor(conductor)?;
        cyclotomic::reduce(&mut coeffs, conductor);
        Ok(Self::canonical(conductor, coeffs))
    }

    /// The primitive root `ζ_m` itself.
    pub fn zeta(conductor: u32) -> Result<Self> {
        let mut c = vec![BigRational::zero(); 2];
        c[1] = BigRational::one();
        Self::from_coeffs(conductor, c)
    }

    /// `ζ_m^k` for any integer `k`.
    pub fn zeta_pow(conductor: u32, k: i64) -> Result<Self> {
        check_conductor(conductor)?;
        let e = k.rem_euclid(conductor as i64) as usize;
        let mut c = vec![BigRational::zero(); e + 1];
        c[e] = BigRational::one();
        Self::from_coeffs(conductor, c)
    }

    fn canonical(conductor: u32, coeffs: Vec<BigRational>) -> Self {
        let repr = match coeffs.len() {
            0 => Repr::Rational(BigRational::zero()),
            1 => Repr::Rational(coeffs.into_iter().next().unwrap()),
            _ => Repr::Poly(coeffs.into_boxed_slice()),
        };
        Scalar { conductor, repr }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.repr, Repr::Rational(q) if q.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(&self.repr, Repr::Rational(q) if q.is_one())
    }

    /// The value as a rational number, if it is one.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Rational(q) => Some(q),
            Repr::Poly(_) => None,
        }
    }

    /// Coefficients of the reduced residue, lowest power first, without
    /// trailing zeros.
    pub fn coeffs(&self) -> Vec<BigRational> {
        match &self.repr {
            Repr::Rational(q) if q.is_zero() => Vec::new(),
            Repr::Rational(q) => vec![q.clone()],
            Repr::Poly(c) => c.to_vec(),
        }
    }

    /// Re-express the element inside `Q(ζ_target)`; `target` must be a
    /// multiple of the current conductor.
    pub fn lift(&self, target: u32) -> Result<Scalar> {
        check_conductor(target)?;
        if !target.is_multiple_of(self.conductor) {
            return Err(Error::Invalid(format!(
                "cannot lift conductor {} into conductor {}",
                self.conductor, target
            )));
        }
        match &self.repr {
            Repr::Rational(q) => Ok(Scalar { conductor: target, repr: Repr::Rational(q.clone()) }),
            Repr::Poly(c) => {
                let step = (target / self.conductor) as usize;
                let mut out = vec![BigRational::zero(); (c.len() - 1) * step + 1];
                for (k, v) in c.iter().enumerate() {
                    out[k * step] = v.clone();
                }
                Scalar::from_coeffs(target, out)
            }
        }
    }

    fn common(a: &Scalar, b: &Scalar) -> (u32, Vec<BigRational>, Vec<BigRational>) {
        let m = lcm(a.conductor, b.conductor);
        let la = if a.conductor == m { a.coeffs() } else { a.lift(m).expect("lift").coeffs() };
        let lb = if b.conductor == m { b.coeffs() } else { b.lift(m).expect("lift").coeffs() };
        (m, la, lb)
    }

    pub fn inv(&self) -> Result<Scalar> {
        match &self.repr {
            Repr::Rational(q) => {
                if q.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar { conductor: self.conductor, repr: Repr::Rational(q.recip()) })
                }
            }
            Repr::Poly(c) => {
                // Solve (a * y) = 1 through the multiplication matrix of a.
                let m = self.conductor;
                let n = cyclotomic::totient(m);
                let mut cols: Vec<Vec<BigRational>> = Vec::with_capacity(n);
                for j in 0..n {
                    let mut p = vec![BigRational::zero(); c.len() + j];
                    for (k, v) in c.iter().enumerate() {
                        p[k + j] = v.clone();
                    }
                    cyclotomic::reduce(&mut p, m);
                    p.resize(n, BigRational::zero());
                    cols.push(p);
                }
                let mut rhs = vec![BigRational::zero(); n];
                rhs[0] = BigRational::one();
                let y = solve_rational_square(cols, rhs).ok_or(Error::DivisionByZero)?;
                Scalar::from_coeffs(m, y)
            }
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Parse the canonical string form (`"p/q"`, `"1/2 - 3*z + z^2"`) inside
    /// `Q(ζ_conductor)`.
    pub fn parse(text: &str, conductor: u32) -> Result<Scalar> {
        check_conductor(conductor)?;
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut negative = false;
        let mut prev: Option<char> = None;
        for ch in s.chars() {
            let sign_position = matches!(prev, None | Some('^') | Some('*') | Some('/'));
            if (ch == '+' || ch == '-') && !sign_position {
                terms.push((negative, std::mem::take(&mut cur)));
                negative = ch == '-';
            } else if (ch == '+' || ch == '-') && prev.is_none() {
                negative = ch == '-';
            } else {
                cur.push(ch);
            }
            prev = Some(ch);
        }
        terms.push((negative, cur));
        let mut coeffs: Vec<BigRational> = Vec::new();
        for (neg, term) in terms {
            let (coef, power) = parse_term(&term)?;
            let coef = if neg { -coef } else { coef };
            if coeffs.len() <= power {
                coeffs.resize(power + 1, BigRational::zero());
            }
            coeffs[power] += coef;
        }
        if coeffs.len() > 1 && conductor == 1 {
            return Err(Error::Parse(format!("'{text}' uses z but the conductor is 1")));
        }
        Scalar::from_coeffs(conductor, coeffs)
    }

    /// Canonical string form after lifting into `Q(ζ_conductor)`.
    pub fn render(&self, conductor: u32) -> Result<String> {
        Ok(self.lift(conductor)?.to_string())
    }
}

fn parse_term(term: &str) -> Result<(BigRational, usize)> {
    if term.is_empty() {
        return Err(Error::Parse("empty term".into()));
    }
    let (coef_part, z_part) = match term.find('z') {
        None => (term, None),
        Some(pos) => {
            let coef = term[..pos].trim_end_matches('*');
            (coef, Some(&term[pos + 1..]))
        }
    };
    let coef = if coef_part.is_empty() {
        BigRational::one()
    } else {
        parse_rational(coef_part)?
    };
    let power = match z_part {
        None => 0,
        Some("") => 1,
        Some(rest) => {
            let e = rest
                .strip_prefix('^')
                .ok_or_else(|| Error::Parse(format!("bad power in '{term}'")))?;
            e.parse::<usize>().map_err(|_| Error::Parse(format!("bad exponent in '{term}'")))?
        }
    };
    Ok((coef, power))
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n).map_err(|_| bad())?;
            let d = BigInt::from_str(d).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

fn check_conductor(m: u32) -> Result<()> {
    if m == 0 || m > MAX_CONDUCTOR {
        Err(Error::Invalid(format!("conductor {m} outside 1..={MAX_CONDUCTOR}")))
    } else {
        Ok(())
    }
}

// Columns-major square system over Q; None when singular.
fn solve_rational_square(cols: Vec<Vec<BigRational>>, rhs: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = rhs.len();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..n).map(|j| cols[j][i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for v in a[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..=n {
                    let t = &f * &a[col][c];
                    a[r][c] -= t;
                }
            }
        }
    }
    Some(a.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (&self.repr, &other.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => a == b,
            (Repr::Poly(a), Repr::Poly(b)) if self.conductor == other.conductor => a == b,
            (Repr::Poly(_), Repr::Poly(_)) => {
                let (_, a, b) = Scalar::common(self, other);
                a == b
            }
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (&self.repr, &rhs.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => Scalar {
                conductor: lcm(self.conductor, rhs.conductor),
                repr: Repr::Rational(a + b),
            },
            _ => {
                let (m, mut a, b) = Scalar::common(self, rhs);
                if a.len() < b.len() {
                    a.resize(b.len(), BigRational::zero());
                }
                for (x, y) in a.iter_mut().zip(b.iter()) {
                    *x += y;
                }
                while a.last().is_some_and(|c| c.is_zero()) {
                    a.pop();
                }
                Scalar::canonical(m, a)
            }
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (&self.repr, &rhs.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => Scalar {
                conductor: lcm(self.conductor, rhs.conductor),
                repr: Repr::Rational(a - b),
            },
            _ => self + &(-rhs),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let m = lcm(self.conductor, rhs.conductor);
        match (&self.repr, &rhs.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => Scalar { conductor: m, repr: Repr::Rational(a * b) },
            (Repr::Rational(a), Repr::Poly(_)) | (Repr::Poly(_), Repr::Rational(a)) => {
                if a.is_zero() {
                    return Scalar { conductor: m, repr: Repr::Rational(BigRational::zero()) };
                }
                let poly = if matches!(self.repr, Repr::Poly(_)) { self } else { rhs };
                let lifted = if poly.conductor == m { poly.clone() } else { poly.lift(m).expect("lift") };
                match lifted.repr {
                    Repr::Poly(c) => {
                        let scaled: Vec<BigRational> = c.iter().map(|x| x * a).collect();
                        Scalar::canonical(m, scaled)
                    }
                    Repr::Rational(q) => Scalar { conductor: m, repr: Repr::Rational(q * a) },
                }
            }
            (Repr::Poly(_), Repr::Poly(_)) => {
                let (m, a, b) = Scalar::common(self, rhs);
                if a.is_empty() || b.is_empty() {
                    return Scalar { conductor: m, repr: Repr::Rational(BigRational::zero()) };
                }
                let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
                for (i, x) in a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate() {
                        out[i + j] += x * y;
                    }
                }
                cyclotomic::reduce(&mut out, m);
                Scalar::canonical(m, out)
            }
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        let repr = match &self.repr {
            Repr::Rational(q) => Repr::Rational(-q),
            Repr::Poly(c) => Repr::Poly(c.iter().map(|x| -x).collect()),
        };
        Scalar { conductor: self.conductor, repr }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: &Scalar) -> Scalar {
                (&self).$f(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if let (Repr::Rational(a), Repr::Rational(b)) = (&mut self.repr, &rhs.repr) {
            *a += b;
            self.conductor = lcm(self.conductor, rhs.conductor);
            return;
        }
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        if let (Repr::Rational(a), Repr::Rational(b)) = (&mut self.repr, &rhs.repr) {
            *a -= b;
            self.conductor = lcm(self.conductor, rhs.conductor);
            return;
        }
        *self = &*self - rhs;
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs = self.coeffs();
        if coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            let body = match k {
                0 => fmt_rational(&mag),
                _ => {
                    let zpart = if k == 1 { "z".to_string() } else { format!("z^{k}") };
                    if mag.is_one() {
                        zpart
                    } else {
                        format!("{}*{}", fmt_rational(&mag), zpart)
                    }
                }
            };
            if first {
                if negative {
                    write!(f, "-")?;
                }
                write!(f, "{body}")?;
                first = false;
            } else {
                write!(f, " {} {body}", if negative { "-" } else { "+" })?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(n, d)
    }

    #[test]
    fn rational_sum() {
        assert_eq!(&q(1, 2) + &q(1, 3), q(5, 6));
    }

    #[test]
    fn zeta4_squared_is_minus_one() {
        let i = Scalar::zeta(4).unwrap();
        assert_eq!(&i * &i, Scalar::from_int(-1));
    }

    #[test]
    fn zeta3_norm_identity() {
        // (1+ζ₃)(1+ζ₃²) = 1 + ζ₃ + ζ₃² + ζ₃³ = 1 + (ζ₃ + ζ₃² + 1) = 1
        let z = Scalar::zeta(3).unwrap();
        let a = &Scalar::one() + &z;
        let b = &Scalar::one() + &z.pow(2);
        assert_eq!(&a * &b, Scalar::one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(Scalar::one().checked_div(&Scalar::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn inverse_in_cyclotomic_field() {
        let z = Scalar::zeta(5).unwrap();
        let a = &(&Scalar::from_int(2) + &z) - &z.pow(3);
        let inv = a.inv().unwrap();
        assert!((&a * &inv).is_one());
    }

    #[test]
    fn mixed_conductors_lift_to_lcm() {
        let i = Scalar::zeta(4).unwrap();
        let w = Scalar::zeta(3).unwrap();
        let p = &i * &w;
        assert_eq!(p.conductor(), 12);
        // ζ₁₂^3 = ζ₄ and ζ₁₂^4 = ζ₃, so ζ₄ζ₃ = ζ₁₂^7
        assert_eq!(p, Scalar::zeta_pow(12, 7).unwrap());
        // a rational lifted into a bigger field stays equal to itself
        assert_eq!(Scalar::from_int(3).lift(12).unwrap(), Scalar::from_int(3));
    }

    #[test]
    fn display_and_parse() {
        let z = Scalar::zeta(8).unwrap();
        let a = &(&q(1, 2) - &(&Scalar::from_int(3) * &z)) + &z.pow(2);
        let s = a.to_string();
        assert_eq!(s, "1/2 - 3*z + z^2");
        assert_eq!(Scalar::parse(&s, 8).unwrap(), a);
        assert_eq!(Scalar::parse("-z^3", 8).unwrap(), -z.pow(3));
        assert_eq!(Scalar::parse("-7/14", 1).unwrap(), q(-1, 2));
        assert!(Scalar::parse("z", 1).is_err());
        assert!(Scalar::parse("1/0", 1).is_err());
        assert!(Scalar::parse("", 1).is_err());
    }

    #[test]
    fn parse_reduces_modulo_cyclotomic() {
        // z^2 = -1 in Q(ζ₄)
        assert_eq!(Scalar::parse("z^2", 4).unwrap(), Scalar::from_int(-1));
        assert_eq!(Scalar::parse("1 + z + z^2", 3).unwrap(), Scalar::zero());
    }
}
