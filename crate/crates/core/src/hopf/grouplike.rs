//! Group-like elements: solutions of `Δ(g) = g⊗g`, `ε(g) = 1`.
//!
//! Writing `g = Σ a_i b_i`, the coproduct condition says
//! `Σ_i comul[i][j][k] a_i = a_j a_k`; for fixed `j` this is
//! `M_j a = a_j a` with `M_j[k][i] = comul[i][j][k]`. So `a_j` is an
//! eigenvalue of `M_j`, and once every `a_j` is fixed the remaining
//! conditions are linear. The search enumerates eigenvalue choices one index
//! at a time, pruning as soon as the accumulated linear system becomes
//! inconsistent, and filters the surviving points through the exact
//! quadratic equations.

use serde::Serialize;

use super::{Element, HopfAlgebra};
use crate::exactmath::{poly, solve, Mat, Scalar, SolveResult};

#[derive(Clone, Debug, PartialEq)]
pub struct GroupLikes {
    /// Unit first, then ordered by first nonzero coordinate.
    pub elements: Vec<Element>,
    /// Whether the group-likes span `H` (they are always independent).
    pub spans: bool,
    /// `table[a][b]` is the index of `g_a g_b` in `elements`.
    pub table: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct GroupLikesJson {
    elements: Vec<String>,
    spans: bool,
    table: Vec<Vec<usize>>,
    group: String,
}

impl GroupLikes {
    pub fn group_name(&self) -> String {
        group_name(&self.table)
    }

    pub fn to_json(&self, h: &HopfAlgebra) -> serde_json::Value {
        serde_json::to_value(GroupLikesJson {
            elements: self.elements.iter().map(|e| h.render(e)).collect(),
            spans: self.spans,
            table: self.table.clone(),
            group: self.group_name(),
        })
        .unwrap()
    }
}

struct Search<'a> {
    h: &'a HopfAlgebra,
    mats: Vec<Mat>,
    candidates: Vec<Vec<Scalar>>,
    found: Vec<Element>,
}

impl Search<'_> {
    fn run(&mut self, j: usize, rows: Vec<Vec<Scalar>>, rhs: Vec<Scalar>) {
        let d = self.h.dim();
        let a = Mat::from_rows(rows.clone(), d).expect("rows have width d");
        let b = Mat::column(rhs.clone());
        let SolveResult::Solved { particular, nullspace } = solve(&a, &b).expect("shapes agree") else {
            return;
        };
        if nullspace.is_empty() || j == d {
            if nullspace.is_empty() {
                let g = particular.col(0);
                if is_grouplike(self.h, &g) && !self.found.contains(&g) {
                    self.found.push(g);
                }
            }
            return;
        }
        for lambda in self.candidates[j].clone() {
            let mut rows = rows.clone();
            let mut rhs = rhs.clone();
            for k in 0..d {
                let mut row = self.mats[j].row(k).to_vec();
                row[k] = &row[k] - &lambda;
                rows.push(row);
                rhs.push(Scalar::zero());
            }
            let mut pin = vec![Scalar::zero(); d];
            pin[j] = Scalar::one();
            rows.push(pin);
            rhs.push(lambda.clone());
            self.run(j + 1, rows, rhs);
        }
    }
}

pub(crate) fn is_grouplike(h: &HopfAlgebra, g: &[Scalar]) -> bool {
    if !h.counit(g).is_one() {
        return false;
    }
    let d = h.dim();
    let delta = h.coproduct(g);
    (0..d * d).all(|jk| delta[jk] == &g[jk / d] * &g[jk % d])
}

/// All group-like elements of `H` with their multiplication table.
///
/// Eigenvalues are searched among the roots that
/// [`poly::roots_in_field`] can certify (rationals and roots of unity in the
/// algebra's field), which covers every group-like whose coordinates are of
/// that form.
pub fn find_grouplikes(h: &HopfAlgebra) -> GroupLikes {
    let d = h.dim();
    let mats: Vec<Mat> =
        (0..d).map(|j| Mat::from_fn(d, d, |k, i| h.comul_coef(i, j, k).clone())).collect();
    let candidates = mats.iter().map(|m| poly::roots_in_field(&m.charpoly(), h.conductor())).collect();
    let mut search = Search { h, mats, candidates, found: Vec::new() };
    search.run(0, vec![h.counit_vec().clone()], vec![Scalar::one()]);
    let mut elements = search.found;
    elements.sort_by_key(|g| {
        let first = g.iter().position(|c| !c.is_zero()).unwrap_or(d);
        (g != h.unit(), first, h.render(g))
    });
    let table = elements
        .iter()
        .map(|a| {
            elements
                .iter()
                .map(|b| {
                    let p = h.multiply(a, b);
                    elements.iter().position(|e| *e == p).expect("group-likes are closed under products")
                })
                .collect()
        })
        .collect();
    let spans = crate::exactmath::span_rank(&elements, d) == d;
    GroupLikes { elements, spans, table }
}

fn element_order(table: &[Vec<usize>], identity: usize, a: usize) -> usize {
    let mut x = a;
    let mut n = 1;
    while x != identity {
        x = table[x][a];
        n += 1;
    }
    n
}

fn identity_of(table: &[Vec<usize>]) -> usize {
    (0..table.len()).find(|&e| (0..table.len()).all(|x| table[e][x] == x)).unwrap_or(0)
}

/// A short name for small groups: `Z/n`, `Z/2 x Z/2`, `S3`, or
/// `group of order n`.
pub fn group_name(table: &[Vec<usize>]) -> String {
    let n = table.len();
    if n == 1 {
        return "trivial".into();
    }
    let e = identity_of(table);
    let orders: Vec<usize> = (0..n).map(|a| element_order(table, e, a)).collect();
    let abelian = (0..n).all(|a| (0..n).all(|b| table[a][b] == table[b][a]));
    if orders.contains(&n) {
        format!("Z/{n}")
    } else if n == 4 && abelian {
        "Z/2 x Z/2".into()
    } else if n == 6 && !abelian {
        "S3".into()
    } else {
        format!("group of order {n}")
    }
}

/// Whether two multiplication tables describe isomorphic groups, by
/// backtracking over order-preserving bijections.
pub fn isomorphic_tables(a: &[Vec<usize>], b: &[Vec<usize>]) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    let (ea, eb) = (identity_of(a), identity_of(b));
    let oa: Vec<usize> = (0..n).map(|x| element_order(a, ea, x)).collect();
    let ob: Vec<usize> = (0..n).map(|x| element_order(b, eb, x)).collect();
    let mut sa = oa.clone();
    let mut sb = ob.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return false;
    }
    fn extend(a: &[Vec<usize>], b: &[Vec<usize>], oa: &[usize], ob: &[usize], map: &mut Vec<Option<usize>>, used: &mut Vec<bool>, x: usize) -> bool {
        let n = a.len();
        if x == n {
            return (0..n).all(|p| (0..n).all(|q| map[a[p][q]] == Some(b[map[p].unwrap()][map[q].unwrap()])));
        }
        for y in 0..n {
            if used[y] || oa[x] != ob[y] {
                continue;
            }
            map[x] = Some(y);
            used[y] = true;
            let consistent = (0..=x).all(|p| {
                (0..=x).all(|q| match map[a[p][q]] {
                    Some(img) => img == b[map[p].unwrap()][map[q].unwrap()],
                    None => true,
                })
            });
            if consistent && extend(a, b, oa, ob, map, used, x + 1) {
                return true;
            }
            map[x] = None;
            used[y] = false;
        }
        false
    }
    let mut map = vec![None; n];
    let mut used = vec![false; n];
    extend(a, b, &oa, &ob, &mut map, &mut used, 0)
}

#[cfg(test)]
mod tests {
    use super::super::{cyclic, s3_table, sweedler, symmetric3};
    use super::*;

    #[test]
    fn z2_grouplikes() {
        let h = cyclic(2);
        let g = find_grouplikes(&h);
        assert_eq!(g.elements, vec![h.basis(0), h.basis(1)]);
        assert!(g.spans);
        assert_eq!(g.table, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(g.group_name(), "Z/2");
    }

    #[test]
    fn sweedler_has_two_grouplikes() {
        let h = sweedler();
        let g = find_grouplikes(&h);
        assert_eq!(g.elements, vec![h.basis(0), h.basis(1)]);
        assert!(!g.spans);
    }

    #[test]
    fn s3_table_recovered() {
        let g = find_grouplikes(&symmetric3());
        assert!(g.spans);
        assert_eq!(g.table, s3_table());
        assert_eq!(g.group_name(), "S3");
    }

    #[test]
    fn isomorphism_distinguishes_orders() {
        let z4: Vec<Vec<usize>> = (0..4).map(|a| (0..4).map(|b| (a + b) % 4).collect()).collect();
        let klein: Vec<Vec<usize>> = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
        assert!(!isomorphic_tables(&z4, &klein));
        let relabeled: Vec<Vec<usize>> = (0..4).map(|a| (0..4).map(|b| (3 * ((3 * a + 3 * b) % 4)) % 4).collect()).collect();
        assert!(isomorphic_tables(&z4, &relabeled));
        assert_eq!(group_name(&klein), "Z/2 x Z/2");
    }
}
