//! The invariant subalgebra `V^H` and its closure under modes.

use serde_json::json;

use super::HopfAction;
use crate::error::{Error, Result};
use crate::exactmath::{in_span, span_basis};
use crate::report::{Check, Report, Tally};
use crate::voa::VoaVector;

/// Canonical (pivot-normalized) bases of `(V^H)_n` for `n = 0..=N`.
#[derive(Clone, Debug, PartialEq)]
pub struct Invariants {
    pub by_weight: Vec<Vec<VoaVector>>,
}

impl Invariants {
    pub fn dims(&self) -> Vec<usize> {
        self.by_weight.iter().map(Vec::len).collect()
    }

    /// All invariant basis vectors of weight at most `cutoff`.
    pub fn upto(&self, cutoff: usize) -> impl Iterator<Item = (usize, &VoaVector)> {
        self.by_weight.iter().enumerate().take(cutoff + 1).flat_map(|(n, vs)| vs.iter().map(move |v| (n, v)))
    }
}

/// Solve `ρ(h)v = ε(h)v` weight by weight, then check that `1` and `ω` are
/// invariant, that `a_m b ∈ V^H` for invariant basis vectors with
/// `wt a + wt b ≤ budget`, and that every zero mode `o(a)`, `a ∈ V^H`,
/// commutes with the action on each `V_n`.
pub fn invariants_subalgebra(a: &HopfAction, budget: usize) -> Result<(Invariants, Report)> {
    let (h, v) = (a.hopf(), a.voa());
    if budget > v.window() {
        return Err(Error::Precondition(format!("budget {budget} exceeds window {}", v.window())));
    }
    let by_weight: Vec<Vec<VoaVector>> = (0..=v.window())
        .map(|n| {
            a.weight_rep(n)
                .invariants(h)
                .into_iter()
                .map(|x| VoaVector::from_dense(v.offset(n), &x))
                .collect()
        })
        .collect();
    let inv = Invariants { by_weight };
    let spans: Vec<Vec<Vec<crate::Scalar>>> = inv
        .by_weight
        .iter()
        .enumerate()
        .map(|(n, vs)| span_basis(&vs.iter().map(|x| x.dense(v.offset(n), v.dim(n))).collect::<Vec<_>>(), v.dim(n)))
        .collect();
    let contains = |x: &VoaVector| -> bool {
        v.homogeneous_components(x)
            .iter()
            .all(|(n, c)| in_span(&spans[*n], &c.dense(v.offset(*n), v.dim(*n))))
    };

    let mut r = Report::new();
    let tag = "action.invariant-subalgebra";
    let one_ok = contains(&v.vacuum());
    let omega_ok = contains(v.omega());
    r.push(Check::verdict("vacuum and conformal vector are invariant", tag, one_ok && omega_ok, || {
        json!({ "vacuum": one_ok, "omega": omega_ok })
    }));

    let mut closure = Tally::new("invariants closed under modes", tag);
    let n = v.window() as i64;
    let small: Vec<(usize, &VoaVector)> = inv.upto(budget).collect();
    for &(wx, x) in &small {
        for &(wy, y) in &small {
            if wx + wy > budget {
                continue;
            }
            for m in (wx as i64 + wy as i64 - 1 - n)..=(wx as i64 + wy as i64 - 1) {
                match v.mode(x, m, y) {
                    Ok(z) => closure.record(contains(&z), || {
                        json!({ "a": v.render(x), "m": m, "b": v.render(y), "value": v.render(&z) })
                    }),
                    Err(Error::Truncated) => closure.skip(),
                    Err(e) => return Err(e),
                }
            }
        }
    }
    closure.into_report(&mut r);

    let mut commute = Tally::new("zero modes of invariants commute with the action", "action.commuting-actions");
    for &(wx, x) in &small {
        for k in 0..=v.window() {
            let o = match v.mode_matrix(x, wx as i64 - 1, k) {
                Ok(o) => o,
                Err(Error::Truncated) => {
                    commute.skip();
                    continue;
                }
                Err(e) => return Err(e),
            };
            for i in 0..h.dim() {
                let rho = a.block(k, i);
                commute.record((rho * &o) == (&o * rho), || {
                    json!({ "a": v.render(x), "weight": k, "h": h.label(i) })
                });
            }
        }
    }
    commute.into_report(&mut r);
    r.set("dims", inv.dims());
    r.set("budget", budget);
    Ok((inv, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn parity_invariants_count_even_partitions() {
        let a = fixtures::z2_parity(6);
        let (inv, r) = invariants_subalgebra(&a, 4).unwrap();
        assert_eq!(inv.dims(), vec![1, 0, 1, 1, 3, 3, 6]);
        assert!(r.passed(), "{}", r.render());
    }

    #[test]
    fn trivial_action_fixes_everything() {
        let a = fixtures::s3_trivial(4);
        let (inv, _) = invariants_subalgebra(&a, 3).unwrap();
        assert_eq!(inv.dims(), a.voa().dims());
    }
}
