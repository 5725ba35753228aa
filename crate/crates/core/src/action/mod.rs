//! Hopf algebra actions on truncated VOAs.
//!
//! An action is presented by matrices on `V_1` and extended to every weight
//! by the module-VOA recursion on canonical monomials. Nothing about the
//! extension is assumed: [`verify_module_voa`] certifies the axioms
//! afterwards.

mod analysis;
mod invariants;
mod isotypic;

pub use analysis::{cocommutativity_check, kernel_analysis, separating_vector, KernelReport, SeparatingVector};
pub use invariants::{invariants_subalgebra, Invariants};
pub use isotypic::{commutant_check, isotypic_decompose, sigma_image, IsotypicDecomposition, Isotypic};

use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactmath::{Mat, Scalar};
use crate::hopf::{HopfAlgebra, Representation};
use crate::report::{Report, Tally};
use crate::voa::{TruncatedVoa, VoaVector};

/// Per-weight matrices `ρ_n(b_i)` of a Hopf action on `V_0..V_N`.
#[derive(Clone, Debug)]
pub struct HopfAction {
    hopf: Arc<HopfAlgebra>,
    voa: Arc<TruncatedVoa>,
    /// `blocks[n][i]` is `ρ_n(b_i)`.
    blocks: Vec<Vec<Mat>>,
}

impl HopfAction {
    /// Extend `gen[i] = ρ(b_i)|_{V_1}` to the whole window through
    /// `ρ(h)(u_{−n} w) = Σ (ρ(h₁)u)_{−n} ρ(h₂)w`, peeling the leading
    /// oscillator of each canonical monomial, with `ρ(h)1 = ε(h)1`.
    pub fn extend(hopf: Arc<HopfAlgebra>, voa: Arc<TruncatedVoa>, gen: Vec<Mat>) -> Result<HopfAction> {
        if voa.rank().is_none() {
            return Err(Error::Precondition("extension needs a Heisenberg VOA generated by V_1".into()));
        }
        if gen.len() != hopf.dim() {
            return Err(Error::Shape(format!("expected {} generator matrices, got {}", hopf.dim(), gen.len())));
        }
        Representation::validated(&hopf, voa.dim(1), gen.clone())
            .map_err(|e| Error::Invalid(format!("generator action is not a representation on V_1: {e}")))?;
        let d = hopf.dim();
        let counit = hopf.counit_vec();
        let mut blocks: Vec<Vec<Mat>> = vec![(0..d).map(|i| Mat::from_fn(1, 1, |_, _| counit[i].clone())).collect(), gen];
        let terms: Vec<Vec<(usize, usize, Scalar)>> = (0..d).map(|i| hopf.coproduct_terms(i)).collect();
        for n in 2..=voa.window() {
            let range = voa.range(n);
            let columns: Vec<Vec<Vec<Scalar>>> = range
                .clone()
                .into_par_iter()
                .map(|b| {
                    let mono = voa.monomial(b).expect("free-field basis");
                    let lead = mono[0];
                    let rest = voa.index_of_monomial(&mono[1..]).expect("canonical tail");
                    let mode = -(lead.mode as i64);
                    let gen_col = voa.generator(lead.color) - voa.offset(1);
                    (0..d)
                        .map(|i| {
                            let mut out = VoaVector::zero();
                            for (j, k, c) in &terms[i] {
                                let u = VoaVector::from_dense(voa.offset(1), &blocks[1][*j].col(gen_col));
                                let w = act_on_basis(&voa, &blocks, *k, rest);
                                let term = voa.mode(&u, mode, &w).expect("extension stays inside the window");
                                out.add_scaled(&term, c);
                            }
                            out.dense(range.start, range.len())
                        })
                        .collect()
                })
                .collect();
            let dim = range.len();
            let block = (0..d)
                .map(|i| Mat::from_fn(dim, dim, |r, c| columns[c][i][r].clone()))
                .collect();
            blocks.push(block);
        }
        Ok(HopfAction { hopf, voa, blocks })
    }

    /// Wrap explicit per-weight matrices without extension.
    pub fn from_blocks(hopf: Arc<HopfAlgebra>, voa: Arc<TruncatedVoa>, blocks: Vec<Vec<Mat>>) -> Result<HopfAction> {
        if blocks.len() != voa.window() + 1 {
            return Err(Error::Shape(format!("expected {} weight blocks, got {}", voa.window() + 1, blocks.len())));
        }
        for (n, per) in blocks.iter().enumerate() {
            if per.len() != hopf.dim() {
                return Err(Error::Shape(format!("weight {n}: expected {} matrices", hopf.dim())));
            }
            if per.iter().any(|m| m.rows() != voa.dim(n) || m.cols() != voa.dim(n)) {
                return Err(Error::Shape(format!("weight {n}: matrices must be {0}x{0}", voa.dim(n))));
            }
        }
        Ok(HopfAction { hopf, voa, blocks })
    }

    pub fn hopf(&self) -> &HopfAlgebra {
        &self.hopf
    }

    pub fn voa(&self) -> &TruncatedVoa {
        &self.voa
    }

    pub fn hopf_arc(&self) -> Arc<HopfAlgebra> {
        Arc::clone(&self.hopf)
    }

    pub fn voa_arc(&self) -> Arc<TruncatedVoa> {
        Arc::clone(&self.voa)
    }

    /// `ρ_n(b_i)`.
    pub fn block(&self, n: usize, i: usize) -> &Mat {
        &self.blocks[n][i]
    }

    pub fn blocks(&self) -> &[Vec<Mat>] {
        &self.blocks
    }

    /// `ρ_n(a)` for an arbitrary element `a`.
    pub fn block_of(&self, n: usize, a: &[Scalar]) -> Mat {
        Representation::new(self.voa.dim(n), self.blocks[n].clone()).expect("square blocks").act(a)
    }

    /// `V_n` as a representation of `H`.
    pub fn weight_rep(&self, n: usize) -> Representation {
        Representation::new(self.voa.dim(n), self.blocks[n].clone()).expect("square blocks")
    }

    /// `ρ(b_i) x`.
    pub fn act(&self, i: usize, x: &VoaVector) -> VoaVector {
        let mut out = VoaVector::zero();
        for (b, c) in x.iter() {
            out.add_scaled(&act_on_basis(&self.voa, &self.blocks, i, b), c);
        }
        out
    }

    /// `ρ(a) x` for an arbitrary element `a`.
    pub fn act_element(&self, a: &[Scalar], x: &VoaVector) -> VoaVector {
        let mut out = VoaVector::zero();
        for (i, c) in a.iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled(&self.act(i, x), c);
            }
        }
        out
    }

    /// Same action with one matrix entry of `ρ_n(b_i)` replaced.
    pub fn with_corrupted_entry(&self, n: usize, i: usize, row: usize, col: usize, value: Scalar) -> HopfAction {
        let mut out = self.clone();
        out.blocks[n][i][(row, col)] = value;
        out
    }
}

fn act_on_basis(voa: &TruncatedVoa, blocks: &[Vec<Mat>], i: usize, b: usize) -> VoaVector {
    let n = voa.weight_of(b);
    let off = voa.offset(n);
    VoaVector::from_dense(off, &blocks[n][i].col(b - off))
}

/// Check the module-VOA axioms: each `ρ_n` is a representation, the vacuum
/// and conformal vector transform by the counit, and
/// `ρ(h)(u_m v) = Σ (ρ(h₁)u)_m ρ(h₂)v` for all basis `u, v` with
/// `wt u + wt v ≤ budget` and every in-window `m`. The action is also
/// checked to commute with the Virasoro modes.
pub fn verify_module_voa(a: &HopfAction, budget: usize) -> Result<Report> {
    let (h, v) = (a.hopf(), a.voa());
    if budget > v.window() {
        return Err(Error::Precondition(format!("budget {budget} exceeds window {}", v.window())));
    }
    let d = h.dim();
    let tag = "action.module-voa";
    let mut r = Report::new();

    let mut rep = Tally::new("representation on each weight", tag);
    for n in 0..=v.window() {
        let unit = a.block_of(n, h.unit());
        rep.record(unit.is_identity(), || json!({ "weight": n, "h": h.render(h.unit()) }));
        for i in 0..d {
            for j in 0..d {
                let lhs = a.block(n, i) * a.block(n, j);
                let rhs = a.block_of(n, &h.multiply(&h.basis(i), &h.basis(j)));
                rep.record(lhs == rhs, || json!({ "weight": n, "h1": h.label(i), "h2": h.label(j) }));
            }
        }
    }
    rep.into_report(&mut r);

    let mut fixed = Tally::new("vacuum and conformal vector transform by the counit", tag);
    for i in 0..d {
        let eps = &h.counit_vec()[i];
        for (name, x) in [("vacuum", v.vacuum()), ("omega", v.omega().clone())] {
            let got = a.act(i, &x);
            fixed.record(got == x.scale(eps), || json!({ "h": h.label(i), "vector": name, "value": v.render(&got) }));
        }
    }
    fixed.into_report(&mut r);

    let n = v.window() as i64;
    let basis: Vec<usize> = (0..v.offset(budget + 1)).collect();
    let images: Vec<Vec<VoaVector>> = (0..d)
        .map(|i| basis.iter().map(|&b| a.act(i, &VoaVector::basis(b))).collect())
        .collect();
    let terms: Vec<Vec<(usize, usize, Scalar)>> = (0..d).map(|i| h.coproduct_terms(i)).collect();
    let pairs: Vec<(usize, usize)> = basis
        .iter()
        .flat_map(|&x| basis.iter().map(move |&y| (x, y)))
        .filter(|&(x, y)| v.weight_of(x) + v.weight_of(y) <= budget)
        .collect();
    let tallies: Vec<Tally> = pairs
        .par_iter()
        .map(|&(x, y)| {
            let mut t = Tally::new("module VOA axiom", tag);
            let (wx, wy) = (v.weight_of(x) as i64, v.weight_of(y) as i64);
            let (ux, uy) = (VoaVector::basis(x), VoaVector::basis(y));
            for m in (wx + wy - 1 - n)..=(wx + wy - 1) {
                let prod = match v.mode(&ux, m, &uy) {
                    Ok(p) => p,
                    Err(Error::Truncated) => {
                        t.skip();
                        continue;
                    }
                    Err(e) => {
                        t.fail(json!({ "error": e.to_string() }));
                        continue;
                    }
                };
                for i in 0..d {
                    let lhs = a.act(i, &prod);
                    let mut rhs = VoaVector::zero();
                    for (j, k, c) in &terms[i] {
                        let term = v.mode(&images[*j][x], m, &images[*k][y]).expect("weights already checked");
                        rhs.add_scaled(&term, c);
                    }
                    t.record(lhs == rhs, || {
                        json!({
                            "h": h.label(i), "u": v.label(x), "m": m, "v": v.label(y),
                            "lhs": v.render(&lhs), "rhs": v.render(&rhs),
                        })
                    });
                }
            }
            t
        })
        .collect();
    tallies.into_iter().fold(Tally::new("module VOA axiom", tag), Tally::merge).into_report(&mut r);

    let mut vir = Tally::new("action commutes with Virasoro modes", tag);
    for &b in &basis {
        let x = VoaVector::basis(b);
        let wb = v.weight_of(b) as i64;
        for k in -1i64..=2 {
            if wb - k < 0 || wb - k > n {
                continue;
            }
            let lx = v.virasoro(k, &x)?;
            for i in 0..d {
                let lhs = a.act(i, &lx);
                let rhs = v.virasoro(k, &images[i][b])?;
                vir.record(lhs == rhs, || json!({ "h": h.label(i), "n": k, "v": v.label(b) }));
            }
        }
    }
    vir.into_report(&mut r);
    r.set("budget", budget);
    r.set("window", v.window());
    Ok(r)
}

/// Per-weight matrices as rendered rows, keyed by weight and Hopf label.
pub fn blocks_json(a: &HopfAction) -> Value {
    let h = a.hopf();
    let weights: Vec<Value> = a
        .blocks()
        .iter()
        .map(|per| {
            let map: serde_json::Map<String, Value> = per
                .iter()
                .enumerate()
                .map(|(i, m)| {
                    let rows: Vec<Vec<String>> = m.to_rows().iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect();
                    (h.label(i).to_string(), json!(rows))
                })
                .collect();
            Value::Object(map)
        })
        .collect();
    Value::Array(weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::report::Status;

    #[test]
    fn parity_signs_on_weight_two() {
        let a = fixtures::z2_parity(4);
        let g = a.hopf().index_of("g").unwrap();
        assert_eq!(a.block(2, g), &Mat::from_ints(&[&[-1, 0], &[0, 1]]));
        assert!(a.block(3, 0).is_identity());
    }

    #[test]
    fn color_permutation_permutes_monomials() {
        let a = fixtures::s3_color(3);
        let h = a.hopf();
        let v = a.voa();
        let s = h.index_of("(01)").unwrap();
        let x = VoaVector::basis(v.index_of_label("a1(-2)a3(-1)|0>").unwrap());
        let y = VoaVector::basis(v.index_of_label("a2(-2)a3(-1)|0>").unwrap());
        assert_eq!(a.act(s, &x), y);
    }

    #[test]
    fn parity_is_a_module_voa() {
        let a = fixtures::z2_parity(5);
        let r = verify_module_voa(&a, 4).unwrap();
        assert!(r.passed(), "{}", r.render());
    }

    #[test]
    fn sign_flip_is_detected() {
        let a = fixtures::z2_parity(5);
        let g = a.hopf().index_of("g").unwrap();
        let bad = a.with_corrupted_entry(2, g, 1, 1, Scalar::from_int(-1));
        let r = verify_module_voa(&bad, 4).unwrap();
        assert_eq!(r.status("module VOA axiom"), Some(Status::Fail));
        let w = r.check("module VOA axiom").unwrap().witness.clone().unwrap();
        assert!(w.get("h").is_some() && w.get("m").is_some());
    }

    #[test]
    fn non_representation_rejected() {
        let h = Arc::new(crate::hopf::cyclic(2));
        let v = Arc::new(TruncatedVoa::heisenberg(1, 3).unwrap());
        let gen = vec![Mat::identity(1), Mat::from_ints(&[&[2]])];
        assert!(matches!(HopfAction::extend(h, v, gen), Err(Error::Invalid(_))));
    }
}
