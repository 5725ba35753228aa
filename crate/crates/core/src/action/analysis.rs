//! The swap identity, the kernel of an action, and separating vectors.

use serde_json::json;

use super::{HopfAction, IsotypicDecomposition};
use crate::error::{Error, Result};
use crate::exactmath::{in_span, solve, span_basis, span_rank, Mat, Scalar, SolveResult};
use crate::hopf::{
    cocommutator, find_grouplikes, is_cocommutative, quotient_hopf, verify_axioms, verify_hopf_ideal, Cocommutativity,
    Element, GroupLikes, HopfAlgebra, Representation,
};
use crate::report::{Check, Report, Status};
use crate::voa::VoaVector;

/// Rows `Q` of a rank factorization `R = PQ` of the map `h ↦ ρ(h)` on the
/// whole window: `ρ(a) = 0` exactly when `Q a = 0`.
fn coordinate_rows(a: &HopfAction) -> Vec<Vec<Scalar>> {
    let d = a.hopf().dim();
    let mut basis: Vec<Vec<Scalar>> = Vec::new();
    for per in a.blocks() {
        let size = per[0].rows();
        for x in 0..size {
            for y in 0..size {
                let row: Vec<Scalar> = per.iter().map(|m| m[(x, y)].clone()).collect();
                if row.iter().all(Scalar::is_zero) || in_span(&basis, &row) {
                    continue;
                }
                basis.push(row);
                basis = span_basis(&basis, d);
                if basis.len() == d {
                    return basis;
                }
            }
        }
    }
    basis
}

/// Check `(ρ⊗ρ)(Δ(h) − τΔ(h)) = 0` on the window for every basis `h`. When
/// the action is faithful on the window this forces `H` itself to be
/// cocommutative, and the group-likes must then span `H`.
pub fn cocommutativity_check(a: &HopfAction) -> Report {
    let h = a.hopf();
    let d = h.dim();
    let q = coordinate_rows(a);
    let qm = Mat::from_rows(q.clone(), d).expect("rows of width d");
    let mut r = Report::new();
    let mut witness = None;
    for i in 0..d {
        let c = cocommutator(h, i);
        let cm = Mat::from_vec(d, d, c.clone()).expect("d x d");
        let image = &(&qm * &cm) * &qm.transpose();
        if !image.is_zero() {
            witness = Some(json!({
                "h": h.label(i),
                "difference": h.render_tensor(&c),
                "note": "contradicts the swap identity satisfied by every module VOA; indicates an implementation bug",
            }));
            break;
        }
    }
    let ok = witness.is_none();
    r.push(Check::verdict("swap identity on the window", "action.swap-identity", ok, || witness.unwrap()));
    let faithful = q.len() == d;
    if faithful {
        let cocomm = is_cocommutative(h) == Cocommutativity::Cocommutative;
        let g = find_grouplikes(h);
        r.push(Check::verdict("faithful action is a group action", "action.group-action", cocomm && g.spans, || {
            json!({ "cocommutative": cocomm, "grouplikes_span": g.spans })
        }));
        r.set("group", g.group_name());
        r.set("conclusion", "faithful on the window: H is cocommutative and spanned by group-likes, so the action is a group action");
    } else {
        r.push(
            Check::skipped("faithful action is a group action", "action.group-action")
                .with_reason("not faithful on the window"),
        );
        r.set("conclusion", "not faithful on the window: the identity holds modulo the kernel of the action");
    }
    r.set("faithful_on_window", faithful);
    r.set("window", a.voa().window());
    r
}

#[derive(Clone, Debug)]
pub struct KernelReport {
    /// Canonical basis of `K = {h : ρ_n(h) = 0 for all n ≤ N}`.
    pub kernel: Vec<Element>,
    pub quotient: Option<HopfAlgebra>,
    pub grouplikes: Option<GroupLikes>,
    pub report: Report,
}

/// Compute `K`, check the Hopf-ideal conditions, and identify `H/K`.
pub fn kernel_analysis(a: &HopfAction) -> Result<KernelReport> {
    let h = a.hopf();
    let d = h.dim();
    let q = coordinate_rows(a);
    let kernel = if q.is_empty() {
        Mat::identity(d).to_rows()
    } else {
        Mat::from_rows(q, d)?.nullspace()
    };
    let tag = "action.kernel-hopf-ideal";
    let mut r = Report::new();
    let mut vanish = true;
    for x in &kernel {
        vanish &= (0..=a.voa().window()).all(|n| a.block_of(n, x).is_zero());
    }
    r.push(Check::verdict("kernel acts by zero", tag, vanish, || json!({ "kernel": render_all(h, &kernel) })));
    let ideal = verify_hopf_ideal(h, &kernel)?;
    let is_ideal = ideal.passed();
    for mut c in ideal.checks {
        c.name = format!("kernel: {}", c.name);
        r.push(c);
    }
    let (mut quotient, mut grouplikes) = (None, None);
    if is_ideal {
        let qh = quotient_hopf(h, &kernel)?;
        for mut c in verify_axioms(&qh).checks {
            c.name = format!("quotient: {}", c.name);
            r.push(c);
        }
        let g = find_grouplikes(&qh);
        r.push(Check::verdict("quotient is a group algebra", tag, g.spans, || json!({ "grouplikes": g.to_json(&qh) })));
        r.set("quotient_dim", qh.dim());
        r.set("quotient_labels", qh.labels());
        r.set("group", g.group_name());
        grouplikes = Some(g);
        quotient = Some(qh);
    } else {
        let failed: Vec<String> = r.checks.iter().filter(|c| c.status == Status::Fail).map(|c| c.name.clone()).collect();
        r.set("note", format!("kernel fails {}: the input is not semisimple or the window is too small", failed.join(", ")));
    }
    r.set("kernel", render_all(h, &kernel));
    r.set("dim", kernel.len());
    r.set("faithful_on_window", kernel.is_empty());
    // K is a Hopf ideal, so a nonzero K rules out inner faithfulness
    r.set("inner_faithful", if is_ideal { json!(kernel.is_empty()) } else { json!(null) });
    r.set("window", a.voa().window());
    Ok(KernelReport { kernel, quotient, grouplikes, report: r })
}

fn render_all(h: &HopfAlgebra, xs: &[Element]) -> Vec<String> {
    xs.iter().map(|x| h.render(x)).collect()
}

#[derive(Clone, Debug)]
pub struct SeparatingVector {
    pub vector: VoaVector,
    pub weight: usize,
    pub report: Report,
}

/// Elements `e^j_{ab} ∈ H` acting as the matrix unit `E_ab` on `M_j` and as
/// zero on every other supplied irreducible, in order `(j, a, b)`.
fn matrix_units(h: &HopfAlgebra, reps: &[Representation]) -> Result<Vec<(usize, usize, usize, Element)>> {
    let rows: usize = reps.iter().map(|m| m.dim() * m.dim()).sum();
    let mut lhs = Mat::zeros(rows, h.dim());
    let mut offset = 0;
    let mut labels = Vec::new();
    for (j, m) in reps.iter().enumerate() {
        let dm = m.dim();
        for x in 0..dm {
            for y in 0..dm {
                for k in 0..h.dim() {
                    lhs[(offset + x * dm + y, k)] = m.matrix(k)[(x, y)].clone();
                }
                labels.push((j, x, y));
            }
        }
        offset += dm * dm;
    }
    let rhs = Mat::identity(rows);
    match solve(&lhs, &rhs)? {
        SolveResult::Solved { particular, .. } => {
            Ok(labels.into_iter().enumerate().map(|(c, (j, x, y))| (j, x, y, particular.col(c))).collect())
        }
        SolveResult::Inconsistent => {
            Err(Error::Precondition("matrix units of the supplied irreducibles are not realized in H".into()))
        }
    }
}

/// A vector `m` in the `i0`-isotypic part of the window such that the
/// images `E^{i0}_{p,q0} m` are independent and every other matrix unit
/// kills `m` (indices 0-based).
pub fn separating_vector(
    a: &HopfAction,
    reps: &[Representation],
    dec: &IsotypicDecomposition,
    i0: usize,
    q0: usize,
) -> Result<SeparatingVector> {
    let (h, v) = (a.hopf(), a.voa());
    let dim = reps.get(i0).ok_or_else(|| Error::Invalid(format!("no irreducible with index {i0}")))?.dim();
    if q0 >= dim {
        return Err(Error::Invalid(format!("q0 = {q0} out of range for an irreducible of dimension {dim}")));
    }
    let weight = (0..=v.window())
        .find(|&n| dec.parts[n][i0].multiplicity() > 0)
        .ok_or_else(|| Error::Precondition(format!("irreducible {i0} does not occur in the window")))?;
    let f = &dec.parts[weight][i0].homs[0];
    let m = VoaVector::from_dense(v.offset(weight), &f.col(q0));
    let units = matrix_units(h, reps)?;

    let tag = "action.separating-vector";
    let mut r = Report::new();
    let mut images = Vec::new();
    let mut stray = None;
    let mut fixed = false;
    for (j, x, y, e) in &units {
        let img = a.act_element(e, &m);
        if *j == i0 && *y == q0 {
            if *x == q0 {
                fixed = img == m;
            }
            images.push(img);
        } else if !img.is_zero() && stray.is_none() {
            stray = Some(json!({ "irrep": j, "row": x, "col": y, "image": v.render(&img) }));
        }
    }
    let dense: Vec<Vec<Scalar>> = images.iter().map(|x| x.dense(v.offset(weight), v.dim(weight))).collect();
    let rank = span_rank(&dense, v.dim(weight));
    r.push(Check::verdict("matrix-unit images are independent", tag, rank == dim, || json!({ "rank": rank, "expected": dim })));
    r.push(Check::verdict("other matrix units annihilate the vector", tag, stray.is_none(), || stray.unwrap()));
    r.push(Check::verdict("diagonal unit fixes the vector", tag, fixed, || json!({ "vector": v.render(&m) })));
    r.set("vector", v.render(&m));
    r.set("weight", weight);
    r.set("images", images.iter().map(|x| v.render(x)).collect::<Vec<_>>());
    r.set("rank", rank);
    Ok(SeparatingVector { vector: m, weight, report: r })
}

#[cfg(test)]
mod tests {
    use super::super::isotypic_decompose;
    use super::*;
    use crate::fixtures;

    #[test]
    fn z4_through_z2_kernel() {
        let a = fixtures::z4_via_z2(3);
        let k = kernel_analysis(&a).unwrap();
        assert_eq!(k.kernel.len(), 2);
        assert_eq!(k.report.data["kernel"], json!(["-1 + g^2", "-g + g^3"]));
        assert!(k.report.passed(), "{}", k.report.render());
        assert_eq!(k.grouplikes.unwrap().group_name(), "Z/2");
    }

    #[test]
    fn faithful_parity_kernel_is_zero() {
        let a = fixtures::z2_parity(3);
        let k = kernel_analysis(&a).unwrap();
        assert!(k.kernel.is_empty());
        assert_eq!(k.report.data["inner_faithful"], json!(true));
        assert_eq!(k.quotient.unwrap().dim(), 2);
    }

    #[test]
    fn trivial_s3_kernel_is_augmentation() {
        let a = fixtures::s3_trivial(3);
        let k = kernel_analysis(&a).unwrap();
        assert_eq!(k.kernel.len(), 5);
        assert!(k.kernel.iter().all(|x| a.hopf().counit(x).is_zero()));
        assert_eq!(k.quotient.unwrap().dim(), 1);
    }

    #[test]
    fn swap_identity_for_groups() {
        for a in [fixtures::z2_parity(3), fixtures::z4_via_z2(3)] {
            let r = cocommutativity_check(&a);
            assert!(r.passed(), "{}", r.render());
        }
    }

    #[test]
    fn sign_separating_vector_is_alpha() {
        let a = fixtures::z2_parity(3);
        let reps = [fixtures::z2_trivial(), fixtures::z2_sign()];
        let (dec, _) = isotypic_decompose(&a, &reps).unwrap();
        let s = separating_vector(&a, &reps, &dec, 1, 0).unwrap();
        assert_eq!(s.vector, VoaVector::basis(a.voa().generator(0)));
        assert!(s.report.passed());
    }
}
