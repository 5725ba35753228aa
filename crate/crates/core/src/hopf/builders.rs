//! Standard Hopf algebras: group algebras, cyclic groups, S3, Sweedler's H4.

use super::HopfAlgebra;
use crate::error::{Error, Result};
use crate::exactmath::{Mat, Scalar};

pub const S3_LABELS: [&str; 6] = ["e", "(01)", "(02)", "(12)", "(012)", "(021)"];

/// Elements of S3 in [`S3_LABELS`] order, as maps `i ↦ σ(i)` on `{0,1,2}`.
pub const S3_PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]];

/// Multiplication table of S3 in [`S3_LABELS`] order, with
/// `(στ)(i) = σ(τ(i))`.
pub fn s3_table() -> Vec<Vec<usize>> {
    let idx = |p: [usize; 3]| S3_PERMUTATIONS.iter().position(|q| *q == p).unwrap();
    S3_PERMUTATIONS
        .iter()
        .map(|s| {
            S3_PERMUTATIONS
                .iter()
                .map(|t| idx([s[t[0]], s[t[1]], s[t[2]]]))
                .collect()
        })
        .collect()
}

/// The group algebra `K[G]` of a group given by its multiplication table
/// (`table[a][b]` is the index of `ab`), with `Δ(g) = g⊗g`, `ε(g) = 1` and
/// `S(g) = g⁻¹`.
pub fn group_algebra(table: &[Vec<usize>], labels: Vec<String>) -> Result<HopfAlgebra> {
    let n = table.len();
    if n == 0 || labels.len() != n || table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
        return Err(Error::Invalid("multiplication table is not an n×n table over 0..n".into()));
    }
    let identity = (0..n)
        .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
        .ok_or_else(|| Error::Invalid("table has no identity element".into()))?;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(Error::Invalid(format!(
                        "table is not associative at ({}, {}, {})",
                        labels[a], labels[b], labels[c]
                    )));
                }
            }
        }
    }
    let mut inverse = vec![0; n];
    for a in 0..n {
        inverse[a] = (0..n)
            .find(|&b| table[a][b] == identity && table[b][a] == identity)
            .ok_or_else(|| Error::Invalid(format!("{} has no inverse", labels[a])))?;
    }
    let d = n;
    let mut mul = vec![Scalar::zero(); d * d * d];
    let mut comul = vec![Scalar::zero(); d * d * d];
    for a in 0..d {
        for b in 0..d {
            mul[(a * d + b) * d + table[a][b]] = Scalar::one();
        }
        comul[(a * d + a) * d + a] = Scalar::one();
    }
    let mut unit = vec![Scalar::zero(); d];
    unit[identity] = Scalar::one();
    let counit = vec![Scalar::one(); d];
    let antipode = Mat::from_fn(d, d, |i, j| if inverse[j] == i { Scalar::one() } else { Scalar::zero() });
    HopfAlgebra::new(labels, 1, mul, unit, comul, counit, antipode)
}

/// `K[Z/n]` with basis `1, g, g^2, ...`.
pub fn cyclic(n: usize) -> HopfAlgebra {
    assert!(n >= 1, "cyclic group of order zero");
    let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    let labels = (0..n)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => "g".to_string(),
            _ => format!("g^{k}"),
        })
        .collect();
    group_algebra(&table, labels).expect("cyclic table is a group")
}

/// `K[S3]` with basis in [`S3_LABELS`] order.
pub fn symmetric3() -> HopfAlgebra {
    group_algebra(&s3_table(), S3_LABELS.iter().map(|s| s.to_string()).collect()).expect("S3 table is a group")
}

/// Sweedler's four-dimensional Hopf algebra with basis `1, g, x, gx`:
/// `g² = 1`, `x² = 0`, `xg = -gx`, `Δg = g⊗g`, `Δx = x⊗1 + g⊗x`,
/// `S(g) = g`, `S(x) = -gx`.
pub fn sweedler() -> HopfAlgebra {
    let d = 4;
    let (one, g, x, gx) = (0, 1, 2, 3);
    let mut mul = vec![Scalar::zero(); d * d * d];
    let mut set = |i: usize, j: usize, k: usize, v: i64| mul[(i * d + j) * d + k] = Scalar::from_int(v);
    for b in 0..d {
        set(one, b, b, 1);
        set(b, one, b, 1);
    }
    set(g, g, one, 1);
    set(g, x, gx, 1);
    set(g, gx, x, 1);
    set(x, g, gx, -1);
    set(gx, g, x, -1);
    // x·x, x·gx, gx·x, gx·gx vanish
    let mut comul = vec![Scalar::zero(); d * d * d];
    let mut cset = |i: usize, j: usize, k: usize| comul[(i * d + j) * d + k] = Scalar::one();
    cset(one, one, one);
    cset(g, g, g);
    cset(x, x, one);
    cset(x, g, x);
    cset(gx, gx, g);
    cset(gx, one, gx);
    let unit = vec![Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::zero()];
    let counit = vec![Scalar::one(), Scalar::one(), Scalar::zero(), Scalar::zero()];
    let mut antipode = Mat::zeros(d, d);
    antipode[(one, one)] = Scalar::one();
    antipode[(g, g)] = Scalar::one();
    antipode[(gx, x)] = Scalar::from_int(-1);
    antipode[(x, gx)] = Scalar::one();
    let labels = ["1", "g", "x", "gx"].iter().map(|s| s.to_string()).collect();
    HopfAlgebra::new(labels, 1, mul, unit, comul, counit, antipode).expect("shapes are fixed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_table_is_nonabelian() {
        let t = s3_table();
        assert_eq!(t[1][2], 5); // (01)(02) = (021) under right-to-left composition
        assert_ne!(t[1][2], t[2][1]);
    }

    #[test]
    fn rejects_non_groups() {
        let labels = || vec!["a".to_string(), "b".to_string()];
        assert!(group_algebra(&[vec![0, 0], vec![0, 0]], labels()).is_err());
        assert!(group_algebra(&[vec![0, 1], vec![1, 1]], labels()).is_err());
        assert!(group_algebra(&[vec![0, 1]], labels()).is_err());
    }
}
