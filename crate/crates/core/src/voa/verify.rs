//! Exhaustive checks of the VOA axioms inside a weight budget.

use rayon::prelude::*;
use serde_json::{json, Value};

use super::{binomial, TruncatedVoa, VoaVector};
use crate::error::{Error, Result};
use crate::exactmath::{span_basis, span_rank, Scalar};
use crate::report::{Check, Report, Tally};

fn sign(k: i64) -> Scalar {
    Scalar::from_int(if k.rem_euclid(2) == 0 { 1 } else { -1 })
}

/// Run `f` and map a truncation to a skipped instance.
fn tally_result(t: &mut Tally, r: Result<Option<Value>>) {
    match r {
        Ok(None) => t.ok(),
        Ok(Some(w)) => t.fail(w),
        Err(Error::Truncated) => t.skip(),
        Err(e) => t.fail(json!({ "error": e.to_string() })),
    }
}

/// One Borcherds component, returned as (left side, right side).
fn borcherds(v: &TruncatedVoa, a: usize, b: usize, c: usize, p: i64, q: i64, s: i64) -> Result<(VoaVector, VoaVector)> {
    let (wa, wb, wc) = (v.weight_of(a) as i64, v.weight_of(b) as i64, v.weight_of(c) as i64);
    let (u, x, w) = (VoaVector::basis(a), VoaVector::basis(b), VoaVector::basis(c));
    let mut lhs = VoaVector::zero();
    for i in 0..=(wa + wb - 1 - s).max(-1) {
        let k = binomial(p, i as usize);
        if k.is_zero() {
            continue;
        }
        let inner = v.basis_mode(a, s + i, b)?;
        lhs.add_scaled(&v.mode(&inner, p + q - i, &w)?, &k);
    }
    let mut rhs = VoaVector::zero();
    let top = (wb + wc - 1 - q).max(wa + wc - 1 - p);
    let sign_s = sign(s);
    for i in 0..=top.max(-1) {
        let k = &sign(i) * &binomial(s, i as usize);
        if k.is_zero() {
            continue;
        }
        if q + i < wb + wc {
            let vw = v.basis_mode(b, q + i, c)?;
            rhs.add_scaled(&v.mode(&u, p + s - i, &vw)?, &k);
        }
        if p + i < wa + wc {
            let uw = v.basis_mode(a, p + i, c)?;
            rhs.add_scaled(&v.mode(&x, q + s - i, &uw)?, &-(&k * &sign_s));
        }
    }
    Ok((lhs, rhs))
}

fn basis_upto(v: &TruncatedVoa, budget: usize) -> std::ops::Range<usize> {
    0..v.offset(budget.min(v.window()) + 1)
}

fn borcherds_tally(v: &TruncatedVoa, budget: usize) -> Tally {
    let n = v.window() as i64;
    let basis = basis_upto(v, budget);
    let mut triples = Vec::new();
    for a in basis.clone() {
        for b in basis.clone() {
            for c in basis.clone() {
                if v.weight_of(a) + v.weight_of(b) + v.weight_of(c) <= budget {
                    triples.push((a, b, c));
                }
            }
        }
    }
    let tallies: Vec<Tally> = triples
        .par_iter()
        .map(|&(a, b, c)| {
            let mut t = Tally::new("Borcherds identity", "voa.jacobi");
            let (wa, wb, wc) = (v.weight_of(a) as i64, v.weight_of(b) as i64, v.weight_of(c) as i64);
            let total = wa + wb + wc;
            let (lp, lq, ls) = (wa + wc - 1 - n, wb + wc - 1 - n, wa + wb - 1 - n);
            // final weight F = total − p − q − s − 2 must lie in 0..=N
            for p in lp..=total - 2 - lq - ls {
                for q in lq..=total - 2 - p - ls {
                    let s_hi = total - 2 - p - q;
                    let s_lo = ls.max(s_hi - n);
                    for s in s_lo..=s_hi {
                        let r = borcherds(v, a, b, c, p, q, s).map(|(l, r)| {
                            (l != r).then(|| {
                                json!({
                                    "u": v.label(a), "v": v.label(b), "w": v.label(c),
                                    "p": p, "q": q, "s": s,
                                    "lhs": v.render(&l), "rhs": v.render(&r),
                                })
                            })
                        });
                        tally_result(&mut t, r);
                    }
                }
            }
            t
        })
        .collect();
    tallies.into_iter().fold(Tally::new("Borcherds identity", "voa.jacobi"), Tally::merge)
}

fn vacuum_tally(v: &TruncatedVoa, budget: usize) -> Tally {
    let mut t = Tally::new("vacuum axioms", "voa.vacuum");
    let one = v.vacuum();
    let n = v.window() as i64;
    for b in basis_upto(v, budget) {
        let x = VoaVector::basis(b);
        let wb = v.weight_of(b) as i64;
        // 1_m x has weight wb − m − 1
        for m in (wb - 1 - n)..=wb {
            let expected = if m == -1 { x.clone() } else { VoaVector::zero() };
            let r = v.mode(&one, m, &x).map(|got| {
                (got != expected).then(|| json!({ "identity": "1_m v", "v": v.label(b), "m": m, "value": v.render(&got) }))
            });
            tally_result(&mut t, r);
        }
        // x_m 1 = 0 for m ≥ 0 and x_{−1} 1 = x
        for m in -1..=wb {
            let expected = if m == -1 { x.clone() } else { VoaVector::zero() };
            let r = v.mode(&x, m, &one).map(|got| {
                (got != expected).then(|| json!({ "identity": "v_m 1", "v": v.label(b), "m": m, "value": v.render(&got) }))
            });
            tally_result(&mut t, r);
        }
    }
    let r = v.virasoro(-1, &one).map(|got| {
        (!got.is_zero()).then(|| json!({ "identity": "L(-1)1", "value": v.render(&got) }))
    });
    tally_result(&mut t, r);
    t
}

fn translation_tally(v: &TruncatedVoa, budget: usize) -> Tally {
    let mut t = Tally::new("L(-1)-derivative property", "voa.translation");
    let n = v.window() as i64;
    let basis = basis_upto(v, budget);
    for a in basis.clone() {
        let x = VoaVector::basis(a);
        let dx = match v.virasoro(-1, &x) {
            Ok(d) => d,
            Err(e) => {
                tally_result(&mut t, Err(e));
                continue;
            }
        };
        for c in basis.clone() {
            let (wa, wc) = (v.weight_of(a) as i64, v.weight_of(c) as i64);
            if wa + 1 + wc > budget as i64 {
                continue;
            }
            let w = VoaVector::basis(c);
            // (L(−1)x)_m w has weight wa + 1 + wc − m − 1
            for m in (wa + wc - n)..=(wa + wc) {
                let r = (|| {
                    let lhs = v.mode(&dx, m, &w)?;
                    let rhs = v.mode(&x, m - 1, &w)?.scale(&Scalar::from_int(-m));
                    Ok((lhs != rhs).then(|| {
                        json!({ "v": v.label(a), "w": v.label(c), "m": m, "lhs": v.render(&lhs), "rhs": v.render(&rhs) })
                    }))
                })();
                tally_result(&mut t, r);
            }
        }
    }
    t
}

/// `Σ_{j≥0} (−1)^{m+j+1} L(−1)^j/j! (y_{m+j} x)`
fn skew_side(v: &TruncatedVoa, x: &VoaVector, m: i64, y: &VoaVector, wx: i64, wy: i64) -> Result<VoaVector> {
    let mut out = VoaVector::zero();
    let mut fact = Scalar::one();
    for j in 0..=(wx + wy - 1 - m).max(-1) {
        if j > 0 {
            fact = &fact * &Scalar::from_int(j);
        }
        let mut term = v.mode(y, m + j, x)?;
        for _ in 0..j {
            term = v.virasoro(-1, &term)?;
        }
        let k = &sign(m + j + 1) * &fact.inv()?;
        out.add_scaled(&term, &k);
    }
    Ok(out)
}

fn skew_tally(v: &TruncatedVoa, budget: usize) -> Tally {
    let mut t = Tally::new("skew-symmetry", "voa.skew-symmetry");
    let n = v.window() as i64;
    let basis = basis_upto(v, budget);
    for a in basis.clone() {
        for b in basis.clone() {
            let (wa, wb) = (v.weight_of(a) as i64, v.weight_of(b) as i64);
            if wa + wb > budget as i64 {
                continue;
            }
            let (x, y) = (VoaVector::basis(a), VoaVector::basis(b));
            for m in (wa + wb - 1 - n)..=(wa + wb - 1) {
                let r = (|| {
                    let lhs = v.mode(&x, m, &y)?;
                    let rhs = skew_side(v, &x, m, &y, wa, wb)?;
                    Ok((lhs != rhs).then(|| {
                        json!({ "u": v.label(a), "v": v.label(b), "m": m, "lhs": v.render(&lhs), "rhs": v.render(&rhs) })
                    }))
                })();
                tally_result(&mut t, r);
            }
        }
    }
    t
}

fn virasoro_tally(v: &TruncatedVoa, budget: usize, c: &Scalar) -> Tally {
    let mut t = Tally::new("Virasoro relations", "voa.virasoro");
    let n = v.window() as i64;
    for b in basis_upto(v, budget) {
        let x = VoaVector::basis(b);
        let wb = v.weight_of(b) as i64;
        for i in -3i64..=3 {
            for j in -3i64..=3 {
                if [wb - j, wb - i, wb - i - j].iter().any(|&w| w > n) {
                    continue;
                }
                let r = (|| {
                    let ij = v.virasoro(i, &v.virasoro(j, &x)?)?;
                    let ji = v.virasoro(j, &v.virasoro(i, &x)?)?;
                    let lhs = ij.sub(&ji);
                    let mut rhs = v.virasoro(i + j, &x)?.scale(&Scalar::from_int(i - j));
                    if i + j == 0 {
                        let k = &Scalar::from_ratio(i * i * i - i, 12) * c;
                        rhs.add_scaled(&x, &k);
                    }
                    Ok((lhs != rhs).then(|| {
                        json!({ "m": i, "n": j, "v": v.label(b), "lhs": v.render(&lhs), "rhs": v.render(&rhs) })
                    }))
                })();
                tally_result(&mut t, r);
            }
        }
    }
    t
}

fn grading_tally(v: &TruncatedVoa, budget: usize) -> Tally {
    let mut t = Tally::new("L(0) grading and mode degrees", "voa.grading");
    for b in 0..v.total_dim() {
        let x = VoaVector::basis(b);
        let wb = v.weight_of(b);
        let r = v.virasoro(0, &x).map(|got| {
            let expected = x.scale(&Scalar::from_int(wb as i64));
            (got != expected).then(|| json!({ "v": v.label(b), "L(0)v": v.render(&got) }))
        });
        tally_result(&mut t, r);
    }
    // every u_m w lands in the single weight wt u + wt w − m − 1
    let basis = basis_upto(v, budget);
    let n = v.window() as i64;
    for a in basis.clone() {
        for c in basis.clone() {
            let (wa, wc) = (v.weight_of(a) as i64, v.weight_of(c) as i64);
            if wa + wc > budget as i64 {
                continue;
            }
            for m in (wa + wc - 1 - n)..=(wa + wc - 1) {
                let r = v.basis_mode(a, m, c).map(|got| {
                    let target = (wa + wc - m - 1) as usize;
                    got.iter().find(|(i, _)| v.weight_of(*i) != target).map(|_| {
                        json!({ "u": v.label(a), "w": v.label(c), "m": m, "value": v.render(&got) })
                    })
                });
                tally_result(&mut t, r);
            }
        }
    }
    t
}

/// Verify every VOA axiom over basis data within `budget`: Borcherds
/// components for triples with total weight ≤ budget, vacuum, translation,
/// skew-symmetry, Virasoro relations and the grading.
pub fn verify_voa_window(v: &TruncatedVoa, budget: usize) -> Result<Report> {
    if budget > v.window() {
        return Err(Error::Precondition(format!("budget {budget} exceeds window {}", v.window())));
    }
    let c = v.central_charge()?;
    let mut r = Report::new();
    borcherds_tally(v, budget).into_report(&mut r);
    vacuum_tally(v, budget).into_report(&mut r);
    translation_tally(v, budget).into_report(&mut r);
    skew_tally(v, budget).into_report(&mut r);
    virasoro_tally(v, budget, &c).into_report(&mut r);
    grading_tally(v, budget).into_report(&mut r);
    if let Some(rank) = v.rank() {
        let expected = Scalar::from_int(rank as i64);
        r.push(Check::verdict("central charge equals rank", "voa.virasoro", c == expected, || {
            json!({ "central_charge": c.to_string(), "rank": rank })
        }));
    }
    r.set("window", v.window());
    r.set("budget", budget);
    r.set("dims", v.dims());
    r.set("central_charge", c.to_string());
    Ok(r)
}

/// Dimensions of `span{u_m v}` per weight against `dim V_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spanning {
    pub span_dims: Vec<usize>,
    pub dims: Vec<usize>,
}

impl Spanning {
    pub fn saturated(&self) -> bool {
        self.span_dims == self.dims
    }

    /// Weights below the window top must saturate. At the top weight some
    /// needed `u` lie just above the window, so a gap there is reported as
    /// skipped rather than failed.
    pub fn to_report(&self, window: usize) -> Report {
        let mut r = Report::new();
        let gaps: Vec<usize> = self.dims.iter().zip(&self.span_dims).map(|(d, s)| d - s).collect();
        let top = self.dims.len() - 1;
        let inner = if top == window { top } else { top + 1 };
        let below = gaps[..inner].iter().all(|&g| g == 0);
        r.push(Check::verdict("saturated below the window top", "voa.spanning", below, || {
            json!({ "span_dims": self.span_dims, "dims": self.dims })
        }));
        if inner == top {
            let c = if gaps[top] == 0 {
                Check::pass("saturated at the window top", "voa.spanning")
            } else {
                Check::skipped("saturated at the window top", "voa.spanning")
                    .with_detail(json!({ "weight": top, "gap": gaps[top] }))
            };
            r.push(c);
        }
        r.set("span_dims", &self.span_dims);
        r.set("dims", &self.dims);
        r.set("gaps", gaps);
        r
    }
}

/// For homogeneous nonzero `x`, the span of `u_m x` over all basis `u` in
/// the window, measured in each weight `0..=budget`.
pub fn spanning_check(v: &TruncatedVoa, x: &VoaVector, budget: usize) -> Result<Spanning> {
    if x.is_zero() {
        return Err(Error::Precondition("spanning check needs a nonzero vector".into()));
    }
    let wx = v
        .weight_of_vector(x)
        .ok_or_else(|| Error::Precondition("spanning check needs a homogeneous vector".into()))? as i64;
    let top = budget.min(v.window());
    let span_dims = (0..=top)
        .into_par_iter()
        .map(|n| {
            let mut vecs = Vec::new();
            for a in 0..v.total_dim() {
                let m = v.weight_of(a) as i64 + wx - 1 - n as i64;
                match v.mode(&VoaVector::basis(a), m, x) {
                    Ok(y) => vecs.push(y.dense(v.offset(n), v.dim(n))),
                    Err(Error::Truncated) => {}
                    Err(e) => return Err(e),
                }
            }
            Ok(span_rank(&span_basis(&vecs, v.dim(n)), v.dim(n)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Spanning { span_dims, dims: v.dims()[..=top].to_vec() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Independence {
    /// `Σ_i u^i_m v^i` is the nonzero `vector`.
    Witness { m: i64, vector: VoaVector },
    /// No nonzero component is computable inside the window.
    Inconclusive,
}

/// Look for a nonzero component of `Σ_i Y(u^i, z) v^i`, scanning modes from
/// the highest downwards.
pub fn linear_independence_check(v: &TruncatedVoa, us: &[VoaVector], vs: &[VoaVector]) -> Result<Independence> {
    if us.len() != vs.len() {
        return Err(Error::Shape("us and vs must have the same length".into()));
    }
    if us.iter().all(VoaVector::is_zero) {
        return Err(Error::Precondition("us must not all be zero".into()));
    }
    let total = v.total_dim();
    let dense: Vec<Vec<Scalar>> = vs.iter().map(|x| x.dense(0, total)).collect();
    if span_rank(&dense, total) != vs.len() {
        return Err(Error::Precondition("vs must be linearly independent".into()));
    }
    let max_w = |xs: &[VoaVector]| xs.iter().flat_map(|x| x.iter().map(|(i, _)| v.weight_of(i) as i64)).max().unwrap_or(0);
    let hi = max_w(us) + max_w(vs) - 1;
    let lo = -(v.window() as i64) - 1;
    'modes: for m in (lo..=hi).rev() {
        let mut acc = VoaVector::zero();
        for (u, x) in us.iter().zip(vs) {
            match v.mode(u, m, x) {
                Ok(y) => acc = acc.add(&y),
                Err(Error::Truncated) => continue 'modes,
                Err(e) => return Err(e),
            }
        }
        if !acc.is_zero() {
            return Ok(Independence::Witness { m, vector: acc });
        }
    }
    Ok(Independence::Inconclusive)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    #[test]
    fn small_window_passes() {
        let v = TruncatedVoa::heisenberg(1, 4).unwrap();
        let r = verify_voa_window(&v, 3).unwrap();
        assert!(r.passed(), "{}", r.render());
    }

    #[test]
    fn corrupted_entry_is_pinpointed() {
        let v = TruncatedVoa::heisenberg(1, 4).unwrap();
        let a = v.generator(0);
        let bad = v.with_corrupted_entry(a, 1, a, VoaVector::basis(0).scale(&Scalar::from_int(2)));
        let r = verify_voa_window(&bad, 3).unwrap();
        assert_eq!(r.status("Borcherds identity"), Some(Status::Fail));
        let w = r.check("Borcherds identity").unwrap().witness.clone().unwrap();
        assert!(w.get("p").is_some() && w.get("u").is_some());
    }

    #[test]
    fn spanning_from_alpha() {
        let v = TruncatedVoa::heisenberg(1, 6).unwrap();
        let s = spanning_check(&v, &VoaVector::basis(v.generator(0)), 4).unwrap();
        assert_eq!(s.span_dims, vec![1, 1, 2, 3, 5]);
        assert!(s.saturated());
        assert!(spanning_check(&v, &VoaVector::zero(), 4).is_err());
    }

    #[test]
    fn independence_witnesses() {
        let v = TruncatedVoa::heisenberg(1, 4).unwrap();
        let one = v.vacuum();
        let a = VoaVector::basis(v.generator(0));
        assert_eq!(
            linear_independence_check(&v, std::slice::from_ref(&one), std::slice::from_ref(&one)).unwrap(),
            Independence::Witness { m: -1, vector: one.clone() }
        );
        assert_eq!(
            linear_independence_check(&v, std::slice::from_ref(&a), std::slice::from_ref(&a)).unwrap(),
            Independence::Witness { m: 1, vector: one.clone() }
        );
        let neg = a.scale(&Scalar::from_int(-1));
        assert!(linear_independence_check(&v, &[a, neg], &[one.clone(), one]).is_err());
    }
}
