//! Exhaustive checks of the Hopf algebra axioms over basis tuples.

use rayon::prelude::*;
use serde_json::{json, Value};

use super::{Element, HopfAlgebra};
use crate::exactmath::Scalar;
use crate::report::{Check, Report};

/// First failing index, searched in parallel but reported in index order.
fn first_failure(n: usize, f: impl Fn(usize) -> Option<Value> + Sync + Send) -> Option<Value> {
    (0..n).into_par_iter().find_map_first(f)
}

fn check(report: &mut Report, name: &str, tag: &'static str, failure: Option<Value>) {
    report.push(match failure {
        None => Check::pass(name, tag),
        Some(w) => Check::fail(name, tag, w),
    });
}

/// Product in `H ⊗ H` of two `d²` vectors.
pub(crate) fn tensor_mul(h: &HopfAlgebra, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let d = h.dim();
    let mut out = vec![Scalar::zero(); d * d];
    for (ab, p) in x.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        for (ce, q) in y.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let left = h.multiply(&h.basis(ab / d), &h.basis(ce / d));
            let right = h.multiply(&h.basis(ab % d), &h.basis(ce % d));
            let pq = p * q;
            for (s, l) in left.iter().enumerate() {
                if l.is_zero() {
                    continue;
                }
                let lpq = l * &pq;
                for (t, r) in right.iter().enumerate() {
                    if !r.is_zero() {
                        out[s * d + t] += &(&lpq * r);
                    }
                }
            }
        }
    }
    out
}

/// Apply `Δ` to slot `slot` of an element of `H^{⊗k}` (length `d^k`),
/// producing an element of `H^{⊗(k+1)}`.
fn coproduct_in_slot(h: &HopfAlgebra, t: &[Scalar], k: usize, slot: usize) -> Vec<Scalar> {
    let d = h.dim();
    let after = d.pow((k - slot - 1) as u32);
    let mut out = vec![Scalar::zero(); t.len() * d];
    for (idx, c) in t.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let high = idx / (after * d);
        let mid = (idx / after) % d;
        let low = idx % after;
        for (a, b, coef) in h.coproduct_terms(mid) {
            let new = ((high * d + a) * d + b) * after + low;
            out[new] += &(c * &coef);
        }
    }
    out
}

/// `Δ_n(x) ∈ H^{⊗(n+1)}`, with `Δ_1 = Δ` and `Δ_n = (Δ ⊗ id^{⊗(n-1)}) Δ_{n-1}`.
/// The result has length `d^(n+1)`, first tensor factor most significant.
pub fn iterated_coproduct(h: &HopfAlgebra, x: &[Scalar], n: usize) -> Vec<Scalar> {
    assert!(n >= 1, "iterated coproduct needs n >= 1");
    let mut t = x.to_vec();
    for k in 1..=n {
        t = coproduct_in_slot(h, &t, k, 0);
    }
    t
}

/// Apply `ε` to slot `slot` of an element of `H^{⊗k}`.
pub fn contract_counit(h: &HopfAlgebra, t: &[Scalar], k: usize, slot: usize) -> Vec<Scalar> {
    let d = h.dim();
    let after = d.pow((k - slot - 1) as u32);
    let mut out = vec![Scalar::zero(); t.len() / d];
    for (idx, c) in t.iter().enumerate() {
        let eps = &h.counit_vec()[(idx / after) % d];
        if c.is_zero() || eps.is_zero() {
            continue;
        }
        let high = idx / (after * d);
        let low = idx % after;
        out[high * after + low] += &(c * eps);
    }
    out
}

fn unit_times(h: &HopfAlgebra, c: &Scalar) -> Element {
    h.unit().iter().map(|u| u * c).collect()
}

/// Verify every Hopf algebra axiom exhaustively over basis indices.
pub fn verify_axioms(h: &HopfAlgebra) -> Report {
    let d = h.dim();
    let l = |i: usize| h.label(i).to_string();
    let mut r = Report::new();

    let products: Vec<Vec<Element>> =
        (0..d).map(|i| (0..d).map(|j| h.multiply(&h.basis(i), &h.basis(j))).collect()).collect();

    check(
        &mut r,
        "associativity",
        "hopf.algebra",
        first_failure(d, |i| {
            for j in 0..d {
                for k in 0..d {
                    if h.multiply(&products[i][j], &h.basis(k)) != h.multiply(&h.basis(i), &products[j][k]) {
                        return Some(json!({"a": l(i), "b": l(j), "c": l(k)}));
                    }
                }
            }
            None
        }),
    );
    check(
        &mut r,
        "unit",
        "hopf.algebra",
        first_failure(d, |i| {
            let b = h.basis(i);
            let ok = h.multiply(h.unit(), &b) == b && h.multiply(&b, h.unit()) == b;
            (!ok).then(|| json!({"a": l(i)}))
        }),
    );

    let coproducts: Vec<Vec<Scalar>> = (0..d).map(|i| h.coproduct(&h.basis(i))).collect();
    check(
        &mut r,
        "coassociativity",
        "hopf.coalgebra",
        first_failure(d, |i| {
            let left = coproduct_in_slot(h, &coproducts[i], 2, 0);
            let right = coproduct_in_slot(h, &coproducts[i], 2, 1);
            (left != right).then(|| json!({"h": l(i)}))
        }),
    );
    check(
        &mut r,
        "counit",
        "hopf.coalgebra",
        first_failure(d, |i| {
            let b = h.basis(i);
            let left = contract_counit(h, &coproducts[i], 2, 0);
            let right = contract_counit(h, &coproducts[i], 2, 1);
            (left != b || right != b).then(|| json!({"h": l(i)}))
        }),
    );

    let one_one = h.coproduct(h.unit());
    let unit_tensor: Vec<Scalar> = (0..d * d).map(|jk| &h.unit()[jk / d] * &h.unit()[jk % d]).collect();
    let delta_mult = first_failure(d, |i| {
        for j in 0..d {
            if h.coproduct(&products[i][j]) != tensor_mul(h, &coproducts[i], &coproducts[j]) {
                return Some(json!({"a": l(i), "b": l(j)}));
            }
        }
        None
    })
    .or_else(|| (one_one != unit_tensor).then(|| json!({"a": "unit"})));
    check(&mut r, "comultiplication is multiplicative", "hopf.bialgebra", delta_mult);

    let eps_mult = first_failure(d, |i| {
        for j in 0..d {
            if h.counit(&products[i][j]) != &h.counit_vec()[i] * &h.counit_vec()[j] {
                return Some(json!({"a": l(i), "b": l(j)}));
            }
        }
        None
    })
    .or_else(|| (!h.counit(h.unit()).is_one()).then(|| json!({"a": "unit"})));
    check(&mut r, "counit is multiplicative", "hopf.bialgebra", eps_mult);

    // The same compatibility seen from the other side: μ and η are coalgebra
    // maps. Evaluated by an explicit four-index contraction over
    // (Δ ⊗ Δ) followed by the middle swap, not through tensor_mul.
    let mu_coalg = first_failure(d, |i| {
        for j in 0..d {
            let mut rhs = vec![Scalar::zero(); d * d];
            for (a, b, p) in h.coproduct_terms(i) {
                for (c, e, q) in h.coproduct_terms(j) {
                    let pq = &p * &q;
                    for s in 0..d {
                        let x = h.mul_coef(a, c, s);
                        if x.is_zero() {
                            continue;
                        }
                        for t in 0..d {
                            let y = h.mul_coef(b, e, t);
                            if !y.is_zero() {
                                rhs[s * d + t] += &(&(&pq * x) * y);
                            }
                        }
                    }
                }
            }
            let mut lhs = vec![Scalar::zero(); d * d];
            for k in 0..d {
                let c = h.mul_coef(i, j, k);
                if c.is_zero() {
                    continue;
                }
                for (jk, v) in coproducts[k].iter().enumerate() {
                    if !v.is_zero() {
                        lhs[jk] += &(c * v);
                    }
                }
            }
            let eps_lhs: Scalar = (0..d).fold(Scalar::zero(), |acc, k| &acc + &(h.mul_coef(i, j, k) * &h.counit_vec()[k]));
            if lhs != rhs || eps_lhs != &h.counit_vec()[i] * &h.counit_vec()[j] {
                return Some(json!({"a": l(i), "b": l(j)}));
            }
        }
        None
    })
    .or_else(|| {
        let ok = one_one == unit_tensor && h.counit(h.unit()).is_one();
        (!ok).then(|| json!({"a": "unit"}))
    });
    check(&mut r, "multiplication and unit are coalgebra maps", "hopf.bialgebra", mu_coalg);

    let antipodes: Vec<Element> = (0..d).map(|i| h.antipode(&h.basis(i))).collect();
    check(
        &mut r,
        "convolution inverse",
        "hopf.antipode",
        first_failure(d, |i| {
            let target = unit_times(h, &h.counit_vec()[i]);
            let mut left = h.zero();
            let mut right = h.zero();
            for (j, k, c) in h.coproduct_terms(i) {
                let lj = h.multiply(&h.basis(j), &antipodes[k]);
                let rj = h.multiply(&antipodes[j], &h.basis(k));
                for t in 0..d {
                    left[t] += &(&c * &lj[t]);
                    right[t] += &(&c * &rj[t]);
                }
            }
            if left != target {
                Some(json!({"h": l(i), "side": "h1 S(h2)", "value": h.render(&left), "expected": h.render(&target)}))
            } else if right != target {
                Some(json!({"h": l(i), "side": "S(h1) h2", "value": h.render(&right), "expected": h.render(&target)}))
            } else {
                None
            }
        }),
    );
    check(
        &mut r,
        "antipode reverses products",
        "hopf.antipode-properties",
        first_failure(d, |i| {
            for j in 0..d {
                if h.antipode(&products[i][j]) != h.multiply(&antipodes[j], &antipodes[i]) {
                    return Some(json!({"a": l(i), "b": l(j)}));
                }
            }
            None
        })
        .or_else(|| (h.antipode(h.unit()) != *h.unit()).then(|| json!({"a": "unit"}))),
    );
    check(
        &mut r,
        "antipode preserves counit",
        "hopf.antipode-properties",
        first_failure(d, |i| (h.counit(&antipodes[i]) != h.counit_vec()[i]).then(|| json!({"h": l(i)}))),
    );
    check(
        &mut r,
        "antipode reverses coproducts",
        "hopf.antipode-properties",
        first_failure(d, |i| {
            let lhs = h.coproduct(&antipodes[i]);
            let mut rhs = vec![Scalar::zero(); d * d];
            for (j, k, c) in h.coproduct_terms(i) {
                for (s, x) in antipodes[k].iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (t, y) in antipodes[j].iter().enumerate() {
                        if !y.is_zero() {
                            rhs[s * d + t] += &(&(&c * x) * y);
                        }
                    }
                }
            }
            (lhs != rhs).then(|| json!({"h": l(i)}))
        }),
    );
    check(
        &mut r,
        "iterated coproduct counit contraction",
        "hopf.iterated-coproduct",
        first_failure(d, |i| {
            let b = h.basis(i);
            for n in 2..=3 {
                let full = iterated_coproduct(h, &b, n);
                let lower = iterated_coproduct(h, &b, n - 1);
                for slot in 0..=n {
                    if contract_counit(h, &full, n + 1, slot) != lower {
                        return Some(json!({"h": l(i), "n": n, "slot": slot}));
                    }
                }
            }
            None
        }),
    );
    r
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cocommutativity {
    Cocommutative,
    /// `Δ(b_index) - τΔ(b_index)`, a nonzero `d²` vector.
    Witness { index: usize, difference: Vec<Scalar> },
}

/// `Δ(b) - τΔ(b)` for a basis element, as a `d²` vector.
pub fn cocommutator(h: &HopfAlgebra, i: usize) -> Vec<Scalar> {
    let d = h.dim();
    (0..d * d)
        .map(|jk| {
            let (j, k) = (jk / d, jk % d);
            h.comul_coef(i, j, k) - h.comul_coef(i, k, j)
        })
        .collect()
}

pub fn is_cocommutative(h: &HopfAlgebra) -> Cocommutativity {
    for i in 0..h.dim() {
        let diff = cocommutator(h, i);
        if diff.iter().any(|c| !c.is_zero()) {
            return Cocommutativity::Witness { index: i, difference: diff };
        }
    }
    Cocommutativity::Cocommutative
}

/// Smallest `n ≥ 1` with `Sⁿ = Id`, searched up to `cap`.
pub fn antipode_order(h: &HopfAlgebra, cap: usize) -> Option<usize> {
    let s = h.antipode_matrix();
    let mut p = s.clone();
    for n in 1..=cap {
        if p.is_identity() {
            return Some(n);
        }
        p = &p * s;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::super::{cyclic, sweedler};
    use super::*;
    use crate::report::Status;

    #[test]
    fn cyclic_passes() {
        let r = verify_axioms(&cyclic(2));
        assert!(r.passed(), "{}", r.render());
    }

    #[test]
    fn iterated_coproduct_of_x() {
        let h = sweedler();
        let t = iterated_coproduct(&h, &h.basis(2), 2);
        let idx = |a: usize, b: usize, c: usize| (a * 4 + b) * 4 + c;
        let mut expected = vec![Scalar::zero(); 64];
        expected[idx(2, 0, 0)] = Scalar::one();
        expected[idx(1, 2, 0)] = Scalar::one();
        expected[idx(1, 1, 2)] = Scalar::one();
        assert_eq!(t, expected);
    }

    #[test]
    fn grouplike_iterated_coproduct() {
        let h = cyclic(3);
        let t = iterated_coproduct(&h, &h.basis(1), 2);
        let nonzero: Vec<usize> = t.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i).collect();
        assert_eq!(nonzero, vec![(3 + 1) * 3 + 1]);
    }

    #[test]
    fn antipode_orders() {
        assert_eq!(antipode_order(&cyclic(2), 64), Some(1));
        assert_eq!(antipode_order(&cyclic(3), 64), Some(2));
        assert_eq!(antipode_order(&sweedler(), 64), Some(4));
        assert_eq!(antipode_order(&sweedler(), 3), None);
    }

    #[test]
    fn mutated_sweedler_fails_at_x() {
        let h = sweedler();
        let mut s = h.antipode_matrix().clone();
        s[(3, 2)] = Scalar::one();
        let bad = h.with_antipode(s).unwrap();
        let r = verify_axioms(&bad);
        let c = r.check("convolution inverse").unwrap();
        assert_eq!(c.status, Status::Fail);
        assert_eq!(c.witness.as_ref().unwrap()["h"], "x");
        assert_eq!(c.witness.as_ref().unwrap()["value"], "2*x");
    }
}
