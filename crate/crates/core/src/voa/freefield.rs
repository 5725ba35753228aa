//! Mode action of the rank-r Heisenberg VOA by normal-ordered free fields.
//!
//! States are polynomials in commuting variables `x_{i,n} = α_i(−n)`.
//! Annihilators act as `α_i(j) = j ∂/∂x_{i,j}` for `j > 0`, `α_i(0) = 0`.
//! For `u = α_{i₁}(−n₁)···α_{i_k}(−n_k)|0>`,
//! `Y(u, z) = :∏_t ∂^{(n_t−1)} α_{i_t}(z):` with `∂^{(n)} = (1/n!) dⁿ/dzⁿ`,
//! so the factor `t` contributes `α_{i_t}(j)` with coefficient
//! `C(−j−1, n_t−1)` and `u_m` collects the tuples with `Σ j_t = m + 1 − wt u`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use dashmap::DashMap;

use super::monomial::{weight, with_oscillator, Monomial, Oscillator};
use crate::exactmath::Scalar;

/// Sparse results of `(b_a)_m b_b` indexed by result weight.
pub type PairTable = Arc<Vec<Vec<(usize, Scalar)>>>;

#[derive(Debug)]
pub struct FreeField {
    window: usize,
    monomials: Arc<Vec<Monomial>>,
    index: HashMap<Monomial, usize>,
    memo: DashMap<(usize, usize), PairTable>,
}

/// Generalized binomial coefficient `C(a, k)` for integer `a`, `k ≥ 0`.
pub fn binomial(a: i64, k: usize) -> Scalar {
    let mut num = num::BigInt::from(1);
    let mut den = num::BigInt::from(1);
    for t in 0..k as i64 {
        num *= a - t;
        den *= t + 1;
    }
    Scalar::from_rational(num::BigRational::new(num, den))
}

type Poly = Vec<(Monomial, Scalar)>;

impl FreeField {
    pub fn new(window: usize, monomials: Arc<Vec<Monomial>>) -> FreeField {
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        FreeField { window, monomials, index, memo: DashMap::new() }
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// `(b_a)_m b_b` for every `m` with result weight in `0..=window`.
    pub fn pair(&self, a: usize, b: usize) -> PairTable {
        if let Some(t) = self.memo.get(&(a, b)) {
            return Arc::clone(&t);
        }
        let table = Arc::new(self.expand(&self.monomials[a], &self.monomials[b]));
        self.memo.insert((a, b), Arc::clone(&table));
        table
    }

    fn expand(&self, u: &Monomial, v: &Monomial) -> Vec<Vec<(usize, Scalar)>> {
        let mut out: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); self.window + 1];
        let poly: Poly = vec![(v.clone(), Scalar::one())];
        self.go(u, 0, poly, &mut Vec::new(), 0, &Scalar::one(), &mut out);
        out.into_iter()
            .map(|m| m.into_iter().filter(|(_, c)| !c.is_zero()).collect())
            .collect()
    }

    #[allow(clippy::too_many_arguments)]
    fn go(
        &self,
        u: &Monomial,
        t: usize,
        poly: Poly,
        creations: &mut Vec<Oscillator>,
        created: usize,
        coef: &Scalar,
        out: &mut [BTreeMap<usize, Scalar>],
    ) {
        if t == u.len() {
            for (mono, c) in &poly {
                let mut full = mono.clone();
                for &o in creations.iter() {
                    full = with_oscillator(&full, o);
                }
                let r = weight(&full);
                if r > self.window {
                    continue;
                }
                let idx = self.index[&full];
                let add = coef * c;
                let slot = out[r].entry(idx).or_insert_with(Scalar::zero);
                *slot += &add;
            }
            return;
        }
        let Oscillator { mode: n, color } = u[t];
        let n = n as usize;
        // annihilation α(j), j > 0: coefficient (−1)^{n−1} C(j+n−1, n−1)
        let max_j = poly.iter().map(|(m, _)| m.iter().filter(|o| o.color == color).map(|o| o.mode).max().unwrap_or(0)).max().unwrap_or(0);
        for j in 1..=max_j {
            let next = derivative(&poly, Oscillator { mode: j, color });
            if next.is_empty() {
                continue;
            }
            let mut c = binomial(j as i64 + n as i64 - 1, n - 1);
            if n.is_multiple_of(2) {
                c = -c;
            }
            let c = &(coef * &c) * &Scalar::from_int(j as i64);
            self.go(u, t + 1, next, creations, created, &c, out);
        }
        // creation α(−c), c ≥ n: coefficient C(c−1, n−1)
        for c in n..=self.window.saturating_sub(created) {
            let k = coef * &binomial(c as i64 - 1, n - 1);
            creations.push(Oscillator { mode: c as u32, color });
            self.go(u, t + 1, poly.clone(), creations, created + c, &k, out);
            creations.pop();
        }
    }
}

/// `∂/∂x_o` applied to a polynomial.
fn derivative(poly: &Poly, o: Oscillator) -> Poly {
    let mut out = Vec::new();
    for (m, c) in poly {
        let e = m.iter().filter(|x| **x == o).count();
        if e == 0 {
            continue;
        }
        let pos = m.iter().position(|x| *x == o).unwrap();
        let mut rest = m.clone();
        rest.remove(pos);
        out.push((rest, c * &Scalar::from_int(e as i64)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generalized_binomials() {
        assert_eq!(binomial(-2, 0), Scalar::one());
        assert_eq!(binomial(-2, 3), Scalar::from_int(-4));
        assert_eq!(binomial(5, 2), Scalar::from_int(10));
        assert_eq!(binomial(2, 5), Scalar::zero());
    }
}
