//! Zhu's bilinear products `∗_n`, `∘_n` and the zero-mode map on a
//! truncated VOA.
//!
//! `A_n(V) = V / O_n(V)` is never formed: `O_n(V)` has infinite rank inside
//! `V`. Everything here works with representatives and generator sets that
//! fit in the window.

use rayon::prelude::*;
use serde_json::json;

use crate::action::HopfAction;
use crate::error::{Error, Result};
use crate::exactmath::{Mat, Scalar};
use crate::report::{Report, Tally};
use crate::voa::{binomial, TruncatedVoa, VoaVector};

#[derive(Clone, Copy)]
pub struct AnContext<'a> {
    voa: &'a TruncatedVoa,
    level: usize,
}

impl<'a> AnContext<'a> {
    pub fn new(voa: &'a TruncatedVoa, level: usize) -> AnContext<'a> {
        AnContext { voa, level }
    }

    pub fn voa(&self) -> &'a TruncatedVoa {
        self.voa
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// `u ∗_n v = Σ_{m=0}^n (−1)^m C(m+n, m) Res_z Y(u,z)v (1+z)^{wt u+n} / z^{n+m+1}`,
    /// extended linearly over the homogeneous components of `u`.
    pub fn star(&self, u: &VoaVector, v: &VoaVector) -> Result<VoaVector> {
        let n = self.level as i64;
        let mut out = VoaVector::zero();
        for (wu, part) in self.voa.homogeneous_components(u) {
            let e = wu as i64 + n;
            for m in 0..=n {
                let outer = binomial(m + n, m as usize);
                let outer = if m % 2 == 1 { -&outer } else { outer };
                for i in 0..=e {
                    let c = &outer * &binomial(e, i as usize);
                    out.add_scaled(&self.voa.mode(&part, i - n - m - 1, v)?, &c);
                }
            }
        }
        Ok(out)
    }

    /// `u ∘_n v = Res_z Y(u,z)v (1+z)^{wt u+n} / z^{2n+2}`.
    pub fn circ(&self, u: &VoaVector, v: &VoaVector) -> Result<VoaVector> {
        let n = self.level as i64;
        let mut out = VoaVector::zero();
        for (wu, part) in self.voa.homogeneous_components(u) {
            let e = wu as i64 + n;
            for i in 0..=e {
                out.add_scaled(&self.voa.mode(&part, i - 2 * n - 2, v)?, &binomial(e, i as usize));
            }
        }
        Ok(out)
    }

    /// `(L(−1) + L(0)) u`, the second kind of `O_n` generator.
    pub fn translation_grading(&self, u: &VoaVector) -> Result<VoaVector> {
        Ok(self.voa.virasoro(-1, u)?.add(&self.voa.virasoro(0, u)?))
    }
}

/// Matrix of `o(x) = Σ x^{(w)}_{w−1}` on `V_m`, summed over the homogeneous
/// components `x^{(w)}` of `x`.
pub fn o_matrix(v: &TruncatedVoa, x: &VoaVector, m: usize) -> Result<Mat> {
    if m > v.window() {
        return Err(Error::Truncated);
    }
    let mut out = Mat::zeros(v.dim(m), v.dim(m));
    for (w, part) in v.homogeneous_components(x) {
        out = &out + &v.mode_matrix(&part, w as i64 - 1, m)?;
    }
    Ok(out)
}

/// Echelon rows kept sparse: each row vanishes at the pivots of the rows
/// before it, so reducing in insertion order is exact.
#[derive(Default)]
struct Echelon {
    rows: Vec<(usize, VoaVector)>,
}

impl Echelon {
    fn reduce(&self, x: &VoaVector) -> VoaVector {
        let mut w = x.clone();
        for (p, row) in &self.rows {
            let c = w.get(*p);
            if !c.is_zero() {
                w.add_scaled(row, &-c);
            }
        }
        w
    }

    fn insert(&mut self, x: &VoaVector) {
        let w = self.reduce(x);
        let lead = w.iter().next().map(|(p, c)| (p, c.clone()));
        if let Some((p, c)) = lead {
            let inv = c.inv().expect("nonzero pivot");
            self.rows.push((p, w.scale(&inv)));
        }
    }

    fn contains(&self, x: &VoaVector) -> bool {
        self.reduce(x).is_zero()
    }
}

fn record<F>(t: &mut Tally, outcome: Result<bool>, witness: F)
where
    F: FnOnce() -> serde_json::Value,
{
    match outcome {
        Ok(ok) => t.record(ok, witness),
        Err(Error::Truncated) => t.skip(),
        Err(e) => t.fail(json!({ "error": e.to_string() })),
    }
}

/// For every Hopf basis element `h` and basis pair `(u, v)` with
/// `wt u + wt v ≤ budget`, check that `ρ(h)` is compatible with `∗_n`, `∘_n`
/// and `L(−1) + L(0)`, that `ρ(h)` maps the in-window `O_n` generators into
/// their span, and that `o(u ∗_n v) = o(u) o(v)` on `V_m` for `m ≤ n`.
/// Instances that need weights beyond the window are counted as skipped.
pub fn verify_an_identities(ctx: &AnContext, a: &HopfAction, budget: usize) -> Result<Report> {
    let (h, v) = (a.hopf(), ctx.voa());
    if budget > v.window() {
        return Err(Error::Precondition(format!("budget {budget} exceeds window {}", v.window())));
    }
    let (d, n) = (h.dim(), ctx.level());
    let mut r = Report::new();

    let mut unit = Tally::new("star with the vacuum is the identity", "zhu.identity");
    let mut circ_unit = Tally::new("circ with the vacuum vanishes", "zhu.identity");
    let one = v.vacuum();
    for b in 0..v.total_dim() {
        let x = VoaVector::basis(b);
        record(&mut unit, ctx.star(&one, &x).map(|y| y == x), || json!({ "v": v.label(b) }));
        record(&mut circ_unit, ctx.circ(&one, &x).map(|y| y.is_zero()), || json!({ "v": v.label(b) }));
    }
    unit.into_report(&mut r);
    circ_unit.into_report(&mut r);

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

    type Op<'c> = fn(&AnContext<'c>, &VoaVector, &VoaVector) -> Result<VoaVector>;
    let ops: [(&str, Op); 2] = [("star", AnContext::star), ("circ", AnContext::circ)];
    let tag = "zhu.module-algebra";
    let per_pair: Vec<(Tally, Tally, Tally, Option<VoaVector>)> = pairs
        .par_iter()
        .map(|&(x, y)| {
            let (ux, uy) = (VoaVector::basis(x), VoaVector::basis(y));
            let mut out = Vec::new();
            for (name, op) in ops {
                let mut t = Tally::new(format!("H-module algebra: {name}"), tag);
                let check = |i: usize| -> Result<(bool, VoaVector, VoaVector)> {
                    let lhs = a.act(i, &op(ctx, &ux, &uy)?);
                    let mut rhs = VoaVector::zero();
                    for (j, k, c) in &terms[i] {
                        rhs.add_scaled(&op(ctx, &images[*j][x], &images[*k][y])?, c);
                    }
                    Ok((lhs == rhs, lhs, rhs))
                };
                for i in 0..d {
                    match check(i) {
                        Ok((ok, lhs, rhs)) => t.record(ok, || {
                            json!({
                                "h": h.label(i), "u": v.label(x), "v": v.label(y), "n": n,
                                "lhs": v.render(&lhs), "rhs": v.render(&rhs),
                            })
                        }),
                        Err(Error::Truncated) => t.skip(),
                        Err(e) => t.fail(json!({ "error": e.to_string() })),
                    }
                }
                out.push(t);
            }

            let mut law = Tally::new("zero-mode product law", "zhu.zero-mode-product");
            let prod = ctx.star(&ux, &uy);
            for m in 0..=n.min(v.window()) {
                let outcome = prod.clone().and_then(|p| {
                    let lhs = o_matrix(v, &p, m)?;
                    let rhs = &o_matrix(v, &ux, m)? * &o_matrix(v, &uy, m)?;
                    Ok(lhs == rhs)
                });
                record(&mut law, outcome, || json!({ "u": v.label(x), "v": v.label(y), "n": n, "m": m }));
            }
            let circ = ctx.circ(&ux, &uy).ok();
            let star_t = out.remove(0);
            let circ_t = out.remove(0);
            (star_t, circ_t, law, circ)
        })
        .collect();

    let mut star_t = Tally::new("H-module algebra: star", tag);
    let mut circ_t = Tally::new("H-module algebra: circ", tag);
    let mut law = Tally::new("zero-mode product law", "zhu.zero-mode-product");
    let mut generators = Vec::new();
    for (s, c, l, g) in per_pair {
        star_t = star_t.merge(s);
        circ_t = circ_t.merge(c);
        law = law.merge(l);
        generators.extend(g);
    }

    let mut grading = Tally::new("H-module algebra: L(-1) + L(0)", tag);
    for &b in &basis {
        if v.weight_of(b) + 1 > v.window() {
            grading.skip();
            continue;
        }
        let x = VoaVector::basis(b);
        let lx = ctx.translation_grading(&x)?;
        generators.push(lx.clone());
        for i in 0..d {
            let lhs = a.act(i, &lx);
            let rhs = ctx.translation_grading(&images[i][b])?;
            grading.record(lhs == rhs, || json!({ "h": h.label(i), "u": v.label(b) }));
        }
    }

    let mut span = Echelon::default();
    for g in &generators {
        span.insert(g);
    }
    let mut stable = Tally::new("O_n generators are H-stable", tag);
    for (gi, g) in generators.iter().enumerate() {
        for i in 0..d {
            let img = a.act(i, g);
            stable.record(span.contains(&img), || json!({ "h": h.label(i), "generator": gi, "image": v.render(&img) }));
        }
    }

    star_t.into_report(&mut r);
    circ_t.into_report(&mut r);
    grading.into_report(&mut r);
    stable.into_report(&mut r);
    law.into_report(&mut r);
    r.set("level", n);
    r.set("budget", budget);
    r.set("window", v.window());
    r.set("generators_span_dim", span.rows.len());
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn rank1() -> TruncatedVoa {
        TruncatedVoa::heisenberg(1, 6).unwrap()
    }

    fn label(v: &TruncatedVoa, s: &str) -> VoaVector {
        VoaVector::basis(v.index_of_label(s).unwrap_or_else(|| panic!("no basis vector {s}")))
    }

    #[test]
    fn vacuum_is_a_unit() {
        let v = rank1();
        for n in 0..=2 {
            let ctx = AnContext::new(&v, n);
            for b in 0..v.offset(3) {
                let x = VoaVector::basis(b);
                assert_eq!(ctx.star(&v.vacuum(), &x).unwrap(), x);
                assert!(ctx.circ(&v.vacuum(), &x).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn hand_products() {
        let v = rank1();
        let ctx = AnContext::new(&v, 0);
        let alpha = VoaVector::basis(v.generator(0));
        let aa = v.mode(&alpha, -1, &alpha).unwrap();
        assert_eq!(ctx.star(&alpha, &alpha).unwrap(), aa);
        let a2a = v.mode(&alpha, -2, &alpha).unwrap();
        assert_eq!(ctx.circ(&alpha, &alpha).unwrap(), a2a.add(&aa));
        assert_eq!(ctx.star(v.omega(), &v.vacuum()).unwrap(), *v.omega());
        let x = label(&v, "a(-2)a(-1)|0>");
        assert_eq!(ctx.circ(&x, &v.vacuum()).unwrap(), ctx.translation_grading(&x).unwrap());
    }

    #[test]
    fn zero_modes() {
        let v = rank1();
        for m in 0..=4 {
            assert!(o_matrix(&v, &v.vacuum(), m).unwrap().is_identity());
            assert_eq!(o_matrix(&v, v.omega(), m).unwrap(), Mat::identity(v.dim(m)).scale(&Scalar::from_int(m as i64)));
            assert!(o_matrix(&v, &VoaVector::basis(v.generator(0)), m).unwrap().is_zero());
        }
    }

    #[test]
    fn product_law_range() {
        // o(α ∗_0 α) = o(α(−1)²1) = 2 L(0), while o(α)² = 0: the law is only
        // claimed on V_m with m ≤ n.
        let v = rank1();
        let ctx = AnContext::new(&v, 0);
        let alpha = VoaVector::basis(v.generator(0));
        let p = ctx.star(&alpha, &alpha).unwrap();
        assert!(o_matrix(&v, &p, 0).unwrap().is_zero());
        assert_eq!(o_matrix(&v, &p, 1).unwrap(), Mat::identity(1).scale(&Scalar::from_int(2)));
    }

    #[test]
    fn truncation_is_flagged() {
        let v = rank1();
        let ctx = AnContext::new(&v, 2);
        let x = label(&v, "a(-1)^3|0>");
        assert_eq!(ctx.star(&x, &x), Err(Error::Truncated));
    }

    #[test]
    fn parity_identities() {
        let a = fixtures::z2_parity(6);
        for n in 0..=2 {
            let ctx = AnContext::new(a.voa(), n);
            let r = verify_an_identities(&ctx, &a, 3).unwrap();
            assert!(r.passed(), "{}", r.render());
        }
    }
}
