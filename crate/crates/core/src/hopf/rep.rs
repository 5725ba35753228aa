//! Finite-dimensional representations and the module structures on duals,
//! tensor products and Hom spaces.

use serde_json::json;

use super::HopfAlgebra;
use crate::error::{Error, Result};
use crate::exactmath::{span_compare, Mat, Scalar, SpanRelation};
use crate::report::{Check, Report};

/// `ψ(b_i)` for every basis element `b_i` of `H`.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation {
    dim: usize,
    mats: Vec<Mat>,
}

impl Representation {
    /// Wrap matrices without checking the algebra-map property; see
    /// [`Representation::validated`].
    pub fn new(dim: usize, mats: Vec<Mat>) -> Result<Representation> {
        for (i, m) in mats.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::Shape(format!("matrix {i} is {}x{}, expected {dim}x{dim}", m.rows(), m.cols())));
            }
        }
        Ok(Representation { dim, mats })
    }

    /// Wrap and check that the matrices define an algebra map `H → End(M)`.
    pub fn validated(h: &HopfAlgebra, dim: usize, mats: Vec<Mat>) -> Result<Representation> {
        let r = Representation::new(dim, mats)?;
        r.validate(h)?;
        Ok(r)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, i: usize) -> &Mat {
        &self.mats[i]
    }

    pub fn matrices(&self) -> &[Mat] {
        &self.mats
    }

    /// `ψ(a)` for an arbitrary element.
    pub fn act(&self, a: &[Scalar]) -> Mat {
        let mut out = Mat::zeros(self.dim, self.dim);
        for (i, c) in a.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &self.mats[i].scale(c);
            }
        }
        out
    }

    /// Check `ψ(b_i)ψ(b_j) = Σ_k c_ij^k ψ(b_k)` and `ψ(1) = Id`.
    pub fn validate(&self, h: &HopfAlgebra) -> Result<()> {
        let d = h.dim();
        if self.mats.len() != d {
            return Err(Error::Shape(format!("{} matrices for a {d}-dimensional algebra", self.mats.len())));
        }
        if !self.act(h.unit()).is_identity() {
            return Err(Error::Invalid("the unit does not act as the identity".into()));
        }
        for i in 0..d {
            for j in 0..d {
                let lhs = &self.mats[i] * &self.mats[j];
                let rhs = self.act(&h.multiply(&h.basis(i), &h.basis(j)));
                if lhs != rhs {
                    return Err(Error::Invalid(format!(
                        "not a representation: ψ({})ψ({}) differs from ψ({}·{})",
                        h.label(i),
                        h.label(j),
                        h.label(i),
                        h.label(j)
                    )));
                }
            }
        }
        Ok(())
    }

    /// The trivial module `K^k` on which `h` acts by `ε(h)`.
    pub fn trivial(h: &HopfAlgebra, k: usize) -> Representation {
        let mats = h.counit_vec().iter().map(|e| Mat::identity(k).scale(e)).collect();
        Representation { dim: k, mats }
    }

    /// Dual module, `(hf)(m) = f(S(h)m)`: in the dual basis `ψ*(h) = ψ(S(h))ᵀ`.
    pub fn dual(&self, h: &HopfAlgebra) -> Representation {
        let mats = (0..h.dim()).map(|i| self.act(&h.antipode(&h.basis(i))).transpose()).collect();
        Representation { dim: self.dim, mats }
    }

    /// `M ⊗ N` through `Δ`; basis `m_a ⊗ n_b` at index `a·dim N + b`.
    pub fn tensor(&self, other: &Representation, h: &HopfAlgebra) -> Representation {
        let dim = self.dim * other.dim;
        let mats = (0..h.dim())
            .map(|i| {
                let mut out = Mat::zeros(dim, dim);
                for (j, k, c) in h.coproduct_terms(i) {
                    out = &out + &self.mats[j].kron(&other.mats[k]).scale(&c);
                }
                out
            })
            .collect();
        Representation { dim, mats }
    }

    /// `Hom(N, M)` realized as `M ⊗ N*`.
    pub fn hom(m: &Representation, n: &Representation, h: &HopfAlgebra) -> Representation {
        m.tensor(&n.dual(h), h)
    }

    /// Basis of `M^H = {m : hm = ε(h)m}`, checked against algebra
    /// generators of `H` (equivalent to checking every basis element).
    pub fn invariants(&self, h: &HopfAlgebra) -> Vec<Vec<Scalar>> {
        let gens = h.algebra_generators();
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for &g in &gens {
            let shifted = &self.mats[g] - &Mat::identity(self.dim).scale(&h.counit_vec()[g]);
            rows.extend(shifted.to_rows());
        }
        if rows.is_empty() {
            return Mat::identity(self.dim).to_rows();
        }
        Mat::from_rows(rows, self.dim).unwrap().nullspace()
    }

    pub fn character(&self) -> Vec<Scalar> {
        self.mats
            .iter()
            .map(|m| (0..self.dim).fold(Scalar::zero(), |acc, i| &acc + &m[(i, i)]))
            .collect()
    }
}

/// Basis of `Hom_H(M, N)`: matrices `f` (`dim N × dim M`) with
/// `f ψ_M(b_i) = ψ_N(b_i) f` for every basis element.
pub fn hom_h(m: &Representation, n: &Representation, h: &HopfAlgebra) -> Vec<Mat> {
    let (dm, dn) = (m.dim, n.dim);
    let vars = dn * dm;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for i in 0..h.dim() {
        let (pm, pn) = (&m.mats[i], &n.mats[i]);
        for r in 0..dn {
            for c in 0..dm {
                let mut row = vec![Scalar::zero(); vars];
                for t in 0..dm {
                    let x = &pm[(t, c)];
                    if !x.is_zero() {
                        row[r * dm + t] += x;
                    }
                }
                for t in 0..dn {
                    let x = &pn[(r, t)];
                    if !x.is_zero() {
                        row[t * dm + c] -= x;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let basis = if rows.is_empty() {
        Mat::identity(vars).to_rows()
    } else {
        Mat::from_rows(rows, vars).unwrap().nullspace()
    };
    basis.into_iter().map(|v| Mat::from_vec(dn, dm, v).unwrap()).collect()
}

/// `dim Hom_H(M_l, M_i ⊗ M_j)`.
pub fn tensor_multiplicity(h: &HopfAlgebra, mi: &Representation, mj: &Representation, ml: &Representation) -> usize {
    hom_h(ml, &mi.tensor(mj, h), h).len()
}

fn intertwines(a: &Representation, b: &Representation, map: &Mat) -> Option<usize> {
    (0..a.mats.len()).find(|&i| (map * &a.mats[i]) != (&b.mats[i] * map))
}

/// Check the three canonical identifications between representation
/// categories: `M*⊗N* ≅ (N⊗M)*`, `M⊗N* ≅ Hom(N, M)` with its conjugation
/// action, and `Hom_H(M, N) = Hom(M, N)^H`.
pub fn verify_rep_isos(h: &HopfAlgebra, m: &Representation, n: &Representation) -> Report {
    let (dm, dn) = (m.dim, n.dim);
    let mut r = Report::new();
    let tag = "hopf.rep-isos";

    // (f_a ⊗ g_b) ↦ (n_b ⊗ m_a)^*
    let src = m.dual(h).tensor(&n.dual(h), h);
    let dst = n.tensor(m, h).dual(h);
    let swap = Mat::from_fn(dm * dn, dm * dn, |row, col| {
        let (a, b) = (col / dn, col % dn);
        if row == b * dm + a {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    });
    let bijective = swap.rank() == dm * dn;
    let bad = intertwines(&src, &dst, &swap);
    r.push(Check::verdict("dual of a tensor product", tag, bijective && bad.is_none(), || {
        json!({"bijective": bijective, "h": bad.map(|i| h.label(i).to_string())})
    }));

    // m_a ⊗ g_b ↦ E_ab, compared with the conjugation action on Hom(N, M)
    let src = Representation::hom(m, n, h);
    let conj_mats = (0..h.dim())
        .map(|i| {
            let mut out = Mat::zeros(dm * dn, dm * dn);
            for (j, k, c) in h.coproduct_terms(i) {
                let s = n.act(&h.antipode(&h.basis(k)));
                // vec(A f B) = (A ⊗ Bᵀ) vec(f) for row-major vec
                out = &out + &m.mats[j].kron(&s.transpose()).scale(&c);
            }
            out
        })
        .collect();
    let conj = Representation { dim: dm * dn, mats: conj_mats };
    let ident = Mat::identity(dm * dn);
    let bad = intertwines(&src, &conj, &ident);
    r.push(Check::verdict("tensor with a dual is a Hom space", tag, bad.is_none(), || {
        json!({"h": bad.map(|i| h.label(i).to_string())})
    }));

    // Hom_H(M, N) against the invariants of Hom(M, N) = N ⊗ M*
    let intertwiners = hom_h(m, n, h);
    let invariant: Vec<Mat> = Representation::hom(n, m, h)
        .invariants(h)
        .into_iter()
        .map(|v| Mat::from_vec(dn, dm, v).unwrap())
        .collect();
    let cmp = span_compare(&intertwiners, &invariant).expect("equal shapes");
    let equal = cmp.relation == SpanRelation::Equal || (cmp.dim_u == 0 && cmp.dim_w == 0);
    r.push(
        Check::verdict("intertwiners are the invariant maps", tag, equal, || {
            json!({"relation": cmp.relation, "dim_hom_h": cmp.dim_u, "dim_invariants": cmp.dim_w})
        })
        .with_detail(json!({"dim_hom_h": cmp.dim_u, "dim_invariants": cmp.dim_w})),
    );
    r
}

#[cfg(test)]
mod tests {
    use super::super::{cyclic, symmetric3};
    use super::*;
    use crate::fixtures;

    #[test]
    fn trivial_invariants_are_everything() {
        let h = symmetric3();
        assert_eq!(Representation::trivial(&h, 3).invariants(&h).len(), 3);
    }

    #[test]
    fn schur_for_standard() {
        let h = symmetric3();
        let std = fixtures::s3_standard();
        assert_eq!(hom_h(&std, &std, &h).len(), 1);
        assert_eq!(std.tensor(&std, &h).invariants(&h).len(), 1);
    }

    #[test]
    fn invalid_rep_rejected() {
        let h = cyclic(2);
        let bad = vec![Mat::identity(1), Mat::from_ints(&[&[2]])];
        assert!(Representation::validated(&h, 1, bad).is_err());
    }

    #[test]
    fn rep_isos_on_sign() {
        let h = cyclic(2);
        let sign = fixtures::z2_sign();
        let r = verify_rep_isos(&h, &sign, &sign);
        assert!(r.passed(), "{}", r.render());
        assert_eq!(r.checks[2].detail.as_ref().unwrap()["dim_hom_h"], 1);
    }
}
