//! Hopf ideals and quotient Hopf algebras.

use serde_json::json;

use super::{Element, HopfAlgebra};
use crate::error::{Error, Result};
use crate::exactmath::{in_span, solve, span_basis, span_rank, Mat, Scalar, SolveResult};
use crate::report::{Check, Report, Status};

fn validate_subspace(h: &HopfAlgebra, basis: &[Element]) -> Result<()> {
    if basis.iter().any(|v| v.len() != h.dim()) {
        return Err(Error::Shape(format!("ideal vectors must have length {}", h.dim())));
    }
    if span_rank(basis, h.dim()) != basis.len() {
        return Err(Error::Invalid("ideal basis vectors are linearly dependent".into()));
    }
    Ok(())
}

/// Check the five defining conditions of a Hopf ideal for `I = span(basis)`.
pub fn verify_hopf_ideal(h: &HopfAlgebra, basis: &[Element]) -> Result<Report> {
    validate_subspace(h, basis)?;
    let d = h.dim();
    let tag = "hopf.ideal";
    let span = span_basis(basis, d);
    let mut r = Report::new();

    let first = |f: &dyn Fn(&Element, usize) -> bool| -> Option<(usize, usize)> {
        for (v_idx, v) in basis.iter().enumerate() {
            for i in 0..d {
                if !f(v, i) {
                    return Some((v_idx, i));
                }
            }
        }
        None
    };
    let render = |v: &Element| h.render(v);

    let left = first(&|v, i| in_span(&span, &h.multiply(&h.basis(i), v)));
    r.push(Check::verdict("left ideal", tag, left.is_none(), || {
        let (v, i) = left.unwrap();
        json!({"h": h.label(i), "element": render(&basis[v])})
    }));
    let right = first(&|v, i| in_span(&span, &h.multiply(v, &h.basis(i))));
    r.push(Check::verdict("right ideal", tag, right.is_none(), || {
        let (v, i) = right.unwrap();
        json!({"h": h.label(i), "element": render(&basis[v])})
    }));

    // H⊗I + I⊗H inside H⊗H
    let mut gens: Vec<Vec<Scalar>> = Vec::new();
    for v in &span {
        for a in 0..d {
            let mut x = vec![Scalar::zero(); d * d];
            let mut y = vec![Scalar::zero(); d * d];
            for (k, c) in v.iter().enumerate() {
                x[a * d + k] = c.clone();
                y[k * d + a] = c.clone();
            }
            gens.push(x);
            gens.push(y);
        }
    }
    let coideal_span = span_basis(&gens, d * d);
    let coideal = basis.iter().position(|v| !in_span(&coideal_span, &h.coproduct(v)));
    r.push(Check::verdict("coideal", tag, coideal.is_none(), || {
        json!({"element": render(&basis[coideal.unwrap()])})
    }));
    let counit = basis.iter().position(|v| !h.counit(v).is_zero());
    r.push(Check::verdict("counit vanishes", tag, counit.is_none(), || {
        let v = &basis[counit.unwrap()];
        json!({"element": render(v), "counit": h.counit(v).to_string()})
    }));
    let antipode = basis.iter().position(|v| !in_span(&span, &h.antipode(v)));
    r.push(Check::verdict("antipode-stable", tag, antipode.is_none(), || {
        json!({"element": render(&basis[antipode.unwrap()])})
    }));
    r.set("ideal", basis.iter().map(render).collect::<Vec<_>>());
    r.set("dim", basis.len());
    Ok(r)
}

/// `H/I` on the complement spanned by the basis elements of `H` chosen
/// greedily in order. Rejected unless `I` passes every Hopf-ideal condition.
pub fn quotient_hopf(h: &HopfAlgebra, basis: &[Element]) -> Result<HopfAlgebra> {
    let report = verify_hopf_ideal(h, basis)?;
    if let Some(c) = report.checks.iter().find(|c| c.status == Status::Fail) {
        return Err(Error::Precondition(format!("not a Hopf ideal: {} fails", c.name)));
    }
    let d = h.dim();
    let mut span = span_basis(basis, d);
    let mut chosen = Vec::new();
    for i in 0..d {
        let b = h.basis(i);
        if !in_span(&span, &b) {
            chosen.push(i);
            let mut all = span.clone();
            all.push(b);
            span = span_basis(&all, d);
        }
    }
    let q = chosen.len();
    // columns: chosen basis elements, then the ideal basis
    let mut cols: Vec<Element> = chosen.iter().map(|&i| h.basis(i)).collect();
    cols.extend(basis.iter().cloned());
    let change = Mat::from_fn(d, d, |r, c| cols[c][r].clone());
    let project = |x: &Element| -> Element {
        match solve(&change, &Mat::column(x.clone())).expect("square system") {
            SolveResult::Solved { particular, .. } => particular.col(0)[..q].to_vec(),
            SolveResult::Inconsistent => unreachable!("complement and ideal span H"),
        }
    };
    let mut mul = vec![Scalar::zero(); q * q * q];
    let mut comul = vec![Scalar::zero(); q * q * q];
    let mut antipode = Mat::zeros(q, q);
    for (a, &ia) in chosen.iter().enumerate() {
        for (b, &ib) in chosen.iter().enumerate() {
            let p = project(&h.multiply(&h.basis(ia), &h.basis(ib)));
            for (c, v) in p.into_iter().enumerate() {
                mul[(a * q + b) * q + c] = v;
            }
        }
        // (π⊗π)Δ(b_ia): project each left factor, then each right factor
        let delta = h.coproduct(&h.basis(ia));
        let proj_basis: Vec<Element> = (0..d).map(|k| project(&h.basis(k))).collect();
        for j in 0..d {
            for k in 0..d {
                let c = &delta[j * d + k];
                if c.is_zero() {
                    continue;
                }
                for (s, x) in proj_basis[j].iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (t, y) in proj_basis[k].iter().enumerate() {
                        if !y.is_zero() {
                            comul[(a * q + s) * q + t] += &(&(c * x) * y);
                        }
                    }
                }
            }
        }
        let s = project(&h.antipode(&h.basis(ia)));
        for (row, v) in s.into_iter().enumerate() {
            antipode[(row, a)] = v;
        }
    }
    let unit = project(h.unit());
    let counit = chosen.iter().map(|&i| h.counit_vec()[i].clone()).collect();
    let labels = chosen.iter().map(|&i| h.label(i).to_string()).collect();
    HopfAlgebra::new(labels, h.conductor(), mul, unit, comul, counit, antipode)
}

#[cfg(test)]
mod tests {
    use super::super::{cyclic, find_grouplikes, verify_axioms};
    use super::*;

    fn el(v: &[i64]) -> Element {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn zero_ideal_quotient_is_h() {
        let h = cyclic(3);
        let r = verify_hopf_ideal(&h, &[]).unwrap();
        assert!(r.passed());
        assert_eq!(quotient_hopf(&h, &[]).unwrap(), h);
    }

    #[test]
    fn z4_mod_z2_kernel() {
        let h = cyclic(4);
        let ideal = vec![el(&[1, 0, -1, 0]), el(&[0, 1, 0, -1])];
        assert!(verify_hopf_ideal(&h, &ideal).unwrap().passed());
        let q = quotient_hopf(&h, &ideal).unwrap();
        assert_eq!(q.dim(), 2);
        assert_eq!(q.labels(), &["1".to_string(), "g".to_string()]);
        assert!(verify_axioms(&q).passed());
        assert_eq!(find_grouplikes(&q).group_name(), "Z/2");
    }

    #[test]
    fn span_of_g_is_not_an_ideal() {
        let h = cyclic(2);
        let ideal = vec![el(&[0, 1])];
        let r = verify_hopf_ideal(&h, &ideal).unwrap();
        assert_eq!(r.status("counit vanishes"), Some(Status::Fail));
        assert!(matches!(quotient_hopf(&h, &ideal), Err(Error::Precondition(_))));
    }

    #[test]
    fn dependent_basis_rejected() {
        let h = cyclic(2);
        assert!(verify_hopf_ideal(&h, &[el(&[1, -1]), el(&[2, -2])]).is_err());
    }
}
