//! Isotypic decomposition of each `V_n`, the commutant of the action, and
//! the span of zero modes of invariants.

use rayon::prelude::*;
use serde_json::json;

use super::{HopfAction, Invariants};
use crate::error::{Error, Result};
use crate::exactmath::{in_span, solve, span_basis, span_compare, span_rank, Mat, Scalar, SolveResult, SpanRelation};
use crate::hopf::{hom_h, HopfAlgebra, Representation};
use crate::report::{Check, Report, Tally};

/// Intertwiners `M_i → V_n` for one irreducible at one weight.
#[derive(Clone, Debug, PartialEq)]
pub struct Isotypic {
    /// Basis of `Hom_H(M_i, V_n)` as `dim V_n × dim M_i` matrices.
    pub homs: Vec<Mat>,
}

impl Isotypic {
    pub fn multiplicity(&self) -> usize {
        self.homs.len()
    }

    /// Images `f(e_1)`: a basis of the multiplicity space inside `V_n`.
    pub fn highest_weight_vectors(&self) -> Vec<Vec<Scalar>> {
        self.homs.iter().map(|f| f.col(0)).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IsotypicDecomposition {
    pub rep_dims: Vec<usize>,
    /// `parts[n][i]`
    pub parts: Vec<Vec<Isotypic>>,
}

impl IsotypicDecomposition {
    pub fn multiplicities(&self, n: usize) -> Vec<usize> {
        self.parts[n].iter().map(Isotypic::multiplicity).collect()
    }

    pub fn multiplicity_table(&self) -> Vec<Vec<usize>> {
        (0..self.parts.len()).map(|n| self.multiplicities(n)).collect()
    }

    /// `Σ_i mult_i(n)²`, the dimension the commutant must have.
    pub fn commutant_dim(&self, n: usize) -> usize {
        self.multiplicities(n).iter().map(|m| m * m).sum()
    }
}

/// `Hom_H(M, W)` through a cyclic vector: with `L = Ann(e_1)`, every
/// intertwiner is determined by `f(e_1) ∈ W^L` via `f(ψ(x)e_1) = ρ(x)f(e_1)`.
struct Cyclic {
    annihilator: Vec<Vec<Scalar>>,
    /// `lifts[p]` satisfies `ψ(lifts[p]) e_1 = e_p`.
    lifts: Vec<Vec<Scalar>>,
}

fn cyclic_data(h: &HopfAlgebra, m: &Representation, index: usize) -> Result<Cyclic> {
    let d = m.dim();
    let orbit = Mat::from_fn(d, h.dim(), |r, k| m.matrix(k)[(r, 0)].clone());
    let annihilator = orbit.nullspace();
    let mut lifts = Vec::new();
    for p in 0..d {
        let e = Mat::from_fn(d, 1, |r, _| if r == p { Scalar::one() } else { Scalar::zero() });
        match solve(&orbit, &e)? {
            SolveResult::Solved { particular, .. } => lifts.push(particular.col(0)),
            SolveResult::Inconsistent => {
                return Err(Error::Invalid(format!("representation {index} is not generated by its first basis vector")))
            }
        }
    }
    Ok(Cyclic { annihilator, lifts })
}

fn intertwiners(cyc: &Cyclic, w: &Representation, d_m: usize) -> Vec<Mat> {
    let dw = w.dim();
    let mut rows = Vec::new();
    for x in &cyc.annihilator {
        rows.extend(w.act(x).to_rows());
    }
    let seeds = if rows.is_empty() { Mat::identity(dw).to_rows() } else { Mat::from_rows(rows, dw).unwrap().nullspace() };
    let images: Vec<Mat> = cyc.lifts.iter().map(|x| w.act(x)).collect();
    seeds
        .into_iter()
        .map(|f1| {
            let cols: Vec<Vec<Scalar>> = images.iter().map(|img| img.mul_vec(&f1)).collect();
            Mat::from_fn(dw, d_m, |r, c| cols[c][r].clone())
        })
        .collect()
}

/// Check the supplied representations are pairwise non-isomorphic and have
/// one-dimensional endomorphism algebras.
fn check_irreducibles(h: &HopfAlgebra, reps: &[Representation]) -> Result<()> {
    for (i, m) in reps.iter().enumerate() {
        m.validate(h).map_err(|e| Error::Invalid(format!("representation {i}: {e}")))?;
        if hom_h(m, m, h).len() != 1 {
            return Err(Error::Invalid(format!("representation {i} is not irreducible")));
        }
        for (j, other) in reps.iter().enumerate().skip(i + 1) {
            if !hom_h(m, other, h).is_empty() {
                return Err(Error::Invalid(format!("representations {i} and {j} are isomorphic")));
            }
        }
    }
    Ok(())
}

/// Decompose every `V_n` into `⊕_i M_i ⊗ Hom_H(M_i, V_n)`. Fails when the
/// dimension census `Σ_i dim M_i · mult_i(n) = dim V_n` does not hold.
pub fn isotypic_decompose(a: &HopfAction, reps: &[Representation]) -> Result<(IsotypicDecomposition, Report)> {
    let (h, v) = (a.hopf(), a.voa());
    check_irreducibles(h, reps)?;
    let cyclic: Vec<Cyclic> = reps.iter().enumerate().map(|(i, m)| cyclic_data(h, m, i)).collect::<Result<_>>()?;
    let parts: Vec<Vec<Isotypic>> = (0..=v.window())
        .into_par_iter()
        .map(|n| {
            let w = a.weight_rep(n);
            cyclic.iter().zip(reps).map(|(c, m)| Isotypic { homs: intertwiners(c, &w, m.dim()) }).collect()
        })
        .collect();
    let dec = IsotypicDecomposition { rep_dims: reps.iter().map(Representation::dim).collect(), parts };

    let tag = "action.schur-weyl";
    let mut census = Tally::new("dimension census", tag);
    let mut independent = Tally::new("isotypic embeddings are independent", tag);
    let mut equivariant = Tally::new("embeddings intertwine", tag);
    for n in 0..=v.window() {
        let total: usize = dec.multiplicities(n).iter().zip(&dec.rep_dims).map(|(m, d)| m * d).sum();
        if total != v.dim(n) {
            return Err(Error::Precondition(format!(
                "action not semisimple over supplied irreducibles: weight {n} has dimension {} but the census gives {total}",
                v.dim(n)
            )));
        }
        census.ok();
        let mut cols = Vec::new();
        for (i, part) in dec.parts[n].iter().enumerate() {
            for f in &part.homs {
                cols.extend((0..f.cols()).map(|c| f.col(c)));
                for k in 0..h.dim() {
                    equivariant.record((f * reps[i].matrix(k)) == (a.block(n, k) * f), || {
                        json!({ "weight": n, "irrep": i, "h": h.label(k) })
                    });
                }
            }
        }
        let rank = span_rank(&cols, v.dim(n));
        independent.record(rank == v.dim(n), || json!({ "weight": n, "rank": rank, "dim": v.dim(n) }));
    }
    let mut r = Report::new();
    census.into_report(&mut r);
    independent.into_report(&mut r);
    equivariant.into_report(&mut r);
    r.set("multiplicities", dec.multiplicity_table());
    r.set("rep_dims", &dec.rep_dims);
    Ok((dec, r))
}

/// `End(V_n)` under `f ↦ Σ ρ(h₁) f ρ(S h₂)`, on row-major vectorizations.
fn conjugation_rep(a: &HopfAction, n: usize) -> Representation {
    let h = a.hopf();
    let dim = a.voa().dim(n);
    let mats = (0..h.dim())
        .map(|i| {
            let mut out = Mat::zeros(dim * dim, dim * dim);
            for (j, k, c) in h.coproduct_terms(i) {
                let s = a.block_of(n, &h.antipode(&h.basis(k)));
                // vec(A f B) = (A ⊗ Bᵀ) vec(f) for row-major vec
                out = &out + &a.block(n, j).kron(&s.transpose()).scale(&c);
            }
            out
        })
        .collect();
    Representation::new(dim * dim, mats).expect("square")
}

/// Compare `End(V_n)^H` (invariants of `f ↦ Σ ρ(h₁) f ρ(S h₂)`) with
/// `End_H(V_n)` (intertwiners), and both with `Σ_i mult_i(n)²` when a
/// decomposition is supplied.
pub fn commutant_check(a: &HopfAction, n: usize, dec: Option<&IsotypicDecomposition>) -> Result<Report> {
    let (h, v) = (a.hopf(), a.voa());
    if n > v.window() {
        return Err(Error::Precondition(format!("weight {n} exceeds window {}", v.window())));
    }
    let dim = v.dim(n);
    let invariant: Vec<Mat> = conjugation_rep(a, n)
        .invariants(h)
        .into_iter()
        .map(|x| Mat::from_vec(dim, dim, x).unwrap())
        .collect();
    let w = a.weight_rep(n);
    let intertwining = hom_h(&w, &w, h);
    let cmp = span_compare(&invariant, &intertwining)?;
    let tag = "action.commutant";
    let mut r = Report::new();
    let equal = cmp.relation == SpanRelation::Equal;
    r.push(
        Check::verdict("invariant endomorphisms are the intertwiners", tag, equal, || {
            json!({ "weight": n, "relation": cmp.relation, "dim_invariant": cmp.dim_u, "dim_intertwiners": cmp.dim_w })
        })
        .with_detail(json!({ "dim": cmp.dim_u })),
    );
    if let Some(dec) = dec {
        let expected = dec.commutant_dim(n);
        r.push(Check::verdict("commutant dimension is the sum of squared multiplicities", tag, cmp.dim_u == expected, || {
            json!({ "weight": n, "dim": cmp.dim_u, "sum_of_squares": expected })
        }));
    }
    r.set("weight", n);
    r.set("dim_invariant_endomorphisms", cmp.dim_u);
    r.set("dim_intertwiners", cmp.dim_w);
    r.set("equal", equal);
    Ok(r)
}

/// Span of `o(a)|_{V_n}` over invariant basis vectors `a` of weight up to
/// `cutoff`, against `End_H(V_n)`. An unsaturated span is reported as a gap
/// at this cutoff, not as a failure.
pub fn sigma_image(a: &HopfAction, inv: &Invariants, n: usize, cutoff: usize) -> Result<Report> {
    let (h, v) = (a.hopf(), a.voa());
    if n > v.window() || cutoff > v.window() {
        return Err(Error::Precondition(format!("weight {n} and cutoff {cutoff} must not exceed window {}", v.window())));
    }
    let dim = v.dim(n);
    let w = a.weight_rep(n);
    let target: Vec<Vec<Scalar>> = hom_h(&w, &w, h).into_iter().map(|m| m.entries().to_vec()).collect();
    let target_basis = span_basis(&target, dim * dim);
    let target_dim = target_basis.len();

    let mut spans: Vec<Vec<Scalar>> = Vec::new();
    let mut progression = Vec::new();
    let mut contained = Tally::new("zero modes of invariants are intertwiners", "action.commuting-actions");
    for (k, vs) in inv.by_weight.iter().enumerate().take(cutoff + 1) {
        for x in vs {
            match v.mode_matrix(x, k as i64 - 1, n) {
                Ok(o) => {
                    let flat = o.entries().to_vec();
                    contained.record(in_span(&target_basis, &flat), || json!({ "a": v.render(x), "weight": n }));
                    spans.push(flat);
                }
                Err(Error::Truncated) => contained.skip(),
                Err(e) => return Err(e),
            }
        }
        spans = span_basis(&spans, dim * dim);
        progression.push(spans.len());
    }
    let span_dim = spans.len();
    let mut r = Report::new();
    contained.into_report(&mut r);
    let tag = "action.zero-mode-surjectivity";
    let detail = json!({ "weight": n, "cutoff": cutoff, "span_dim": span_dim, "target_dim": target_dim });
    if span_dim == target_dim {
        r.push(Check::pass("zero modes saturate the intertwiners", tag).with_detail(detail));
    } else {
        r.push(Check::skipped("zero modes saturate the intertwiners", tag).with_detail(json!({
            "weight": n, "cutoff": cutoff, "span_dim": span_dim, "target_dim": target_dim,
            "gap": target_dim - span_dim,
            "note": "not saturated at this cutoff; a larger cutoff may be needed",
        })));
    }
    r.set("weight", n);
    r.set("cutoff", cutoff);
    r.set("progression", progression);
    r.set("span_dim", span_dim);
    r.set("target_dim", target_dim);
    r.set("saturated", span_dim == target_dim);
    Ok(r)
}


#[cfg(test)]
mod tests {
    use super::super::invariants_subalgebra;
    use super::*;
    use crate::fixtures;

    #[test]
    fn parity_decomposition() {
        let a = fixtures::z2_parity(4);
        let reps = [fixtures::z2_trivial(), fixtures::z2_sign()];
        let (dec, r) = isotypic_decompose(&a, &reps).unwrap();
        assert!(r.passed());
        assert_eq!(dec.multiplicity_table(), vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 2], vec![3, 2]]);
    }

    #[test]
    fn missing_irreducible_is_reported() {
        let a = fixtures::z2_parity(3);
        let err = isotypic_decompose(&a, &[fixtures::z2_trivial()]).unwrap_err();
        assert!(err.to_string().contains("not semisimple over supplied irreducibles"));
    }

    #[test]
    fn isomorphic_reps_rejected() {
        let a = fixtures::z2_parity(3);
        assert!(isotypic_decompose(&a, &[fixtures::z2_sign(), fixtures::z2_sign()]).is_err());
    }

    #[test]
    fn trivial_commutant_is_everything() {
        let a = fixtures::s3_trivial(3);
        let r = commutant_check(&a, 3, None).unwrap();
        assert!(r.passed());
        assert_eq!(r.data["dim_invariant_endomorphisms"], 9);
    }

    #[test]
    fn sigma_at_weight_zero() {
        let a = fixtures::z2_parity(4);
        let (inv, _) = invariants_subalgebra(&a, 2).unwrap();
        let r = sigma_image(&a, &inv, 0, 2).unwrap();
        assert_eq!(r.data["span_dim"], 1);
        assert_eq!(r.data["target_dim"], 1);
    }
}
