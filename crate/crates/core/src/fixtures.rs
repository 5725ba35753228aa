//! The shipped example algebras, representations and actions.
//!
//! [`write_all`] regenerates the `fixtures/` directory; a test keeps the
//! checked-in files identical to what these builders produce.

use std::path::Path;
use std::sync::Arc;

use crate::action::HopfAction;
use crate::error::{Error, Result};
use crate::exactmath::{solve, Mat, Scalar, SolveResult};
use crate::hopf::{cyclic, symmetric3, sweedler, HopfAlgebra, Representation, S3_PERMUTATIONS};
use crate::schema::{hopf_to_json, rep_to_json, to_pretty, ActionSpec};

fn diag(values: &[i64]) -> Mat {
    Mat::from_fn(values.len(), values.len(), |r, c| if r == c { Scalar::from_int(values[r]) } else { Scalar::zero() })
}

/// `P e_i = e_{σ(i)}`.
fn permutation_matrix(p: &[usize; 3]) -> Mat {
    Mat::from_fn(3, 3, |r, c| if p[c] == r { Scalar::one() } else { Scalar::zero() })
}

fn one_dim(values: &[i64]) -> Representation {
    Representation::new(1, values.iter().map(|&x| Mat::from_ints(&[&[x]])).collect()).expect("1x1")
}

pub fn z2_trivial() -> Representation {
    one_dim(&[1, 1])
}

pub fn z2_sign() -> Representation {
    one_dim(&[1, -1])
}

pub fn s3_trivial_rep() -> Representation {
    one_dim(&[1; 6])
}

/// Sign of each permutation in label order.
pub fn s3_sign() -> Representation {
    one_dim(&[1, -1, -1, -1, 1, 1])
}

/// The standard representation on `span{e0 − e1, e1 − e2}` inside the
/// permutation representation.
pub fn s3_standard() -> Representation {
    let basis = Mat::from_ints(&[&[1, 0], &[-1, 1], &[0, -1]]);
    let mats = S3_PERMUTATIONS
        .iter()
        .map(|p| {
            let image = &permutation_matrix(p) * &basis;
            match solve(&basis, &image).expect("shapes agree") {
                SolveResult::Solved { particular, .. } => particular,
                SolveResult::Inconsistent => unreachable!("sum-zero vectors are stable"),
            }
        })
        .collect();
    Representation::new(2, mats).expect("2x2")
}

fn spec(name: &str, hopf: HopfAlgebra, hopf_file: &str, rank: u32, window: usize, gen: Vec<Mat>) -> ActionSpec {
    ActionSpec { name: name.into(), hopf: Arc::new(hopf), hopf_file: hopf_file.into(), rank, window, gen }
}

/// `g·α = −α` on the rank-one Heisenberg VOA.
pub fn z2_parity_spec() -> ActionSpec {
    spec("Z/2 parity", cyclic(2), "z2.json", 1, 8, vec![diag(&[1]), diag(&[-1])])
}

/// `S3` permuting the three colors of the rank-three Heisenberg VOA.
pub fn s3_color_spec() -> ActionSpec {
    let gen = S3_PERMUTATIONS.iter().map(permutation_matrix).collect();
    spec("S3 color permutation", symmetric3(), "s3.json", 3, 6, gen)
}

/// `Z/4` acting through its quotient `Z/2`: `g^k α = (−1)^k α`.
pub fn z4_via_z2_spec() -> ActionSpec {
    let gen = (0..4).map(|k| diag(&[if k % 2 == 0 { 1 } else { -1 }])).collect();
    spec("Z/4 through Z/2", cyclic(4), "z4.json", 1, 8, gen)
}

/// Every group element acts as the identity.
pub fn s3_trivial_spec() -> ActionSpec {
    spec("S3 trivial", symmetric3(), "s3.json", 1, 8, vec![Mat::identity(1); 6])
}

/// Sweedler's algebra with `x` acting by a nonzero nilpotent on `V_1`.
/// This is a representation on `V_1`, but not a module VOA structure.
pub fn sweedler_candidate_spec() -> ActionSpec {
    let g = diag(&[1, -1]);
    let x = Mat::from_ints(&[&[0, 0], &[1, 0]]);
    let gx = &g * &x;
    spec("Sweedler candidate", sweedler(), "sweedler.json", 2, 6, vec![Mat::identity(2), g, x, gx])
}

fn build(s: ActionSpec, window: usize) -> HopfAction {
    s.build(Some(window)).expect("fixture actions extend")
}

pub fn z2_parity(window: usize) -> HopfAction {
    build(z2_parity_spec(), window)
}

pub fn s3_color(window: usize) -> HopfAction {
    build(s3_color_spec(), window)
}

pub fn z4_via_z2(window: usize) -> HopfAction {
    build(z4_via_z2_spec(), window)
}

pub fn s3_trivial(window: usize) -> HopfAction {
    build(s3_trivial_spec(), window)
}

pub fn sweedler_candidate(window: usize) -> HopfAction {
    build(sweedler_candidate_spec(), window)
}

/// Sweedler's algebra with the sign of `S(x) = -gx` flipped, breaking the
/// convolution-inverse law.
pub fn sweedler_mutated() -> HopfAlgebra {
    let h = sweedler();
    let mut s = h.antipode_matrix().clone();
    s[(3, 2)] = Scalar::one();
    h.with_antipode(s).expect("same shape")
}

/// Every shipped file name with its contents.
pub fn files() -> Vec<(String, String)> {
    let mut out = Vec::new();
    let hopf = [
        ("z2.json", "Z/2", cyclic(2)),
        ("z4.json", "Z/4", cyclic(4)),
        ("s3.json", "S3", symmetric3()),
        ("sweedler.json", "Sweedler H4", sweedler()),
        ("sweedler-mutated.json", "Sweedler H4 with a corrupted antipode", sweedler_mutated()),
    ];
    for (file, name, h) in &hopf {
        out.push((file.to_string(), to_pretty(&hopf_to_json(h, name))));
    }
    let z2 = cyclic(2);
    let s3 = symmetric3();
    let reps = [
        ("z2-trivial.json", "trivial", &z2, "z2.json", z2_trivial()),
        ("z2-sign.json", "sign", &z2, "z2.json", z2_sign()),
        ("s3-trivial.json", "trivial", &s3, "s3.json", s3_trivial_rep()),
        ("s3-sign.json", "sign", &s3, "s3.json", s3_sign()),
        ("s3-standard.json", "standard", &s3, "s3.json", s3_standard()),
    ];
    for (file, name, h, hf, m) in &reps {
        out.push((file.to_string(), to_pretty(&rep_to_json(h, m, name, hf))));
    }
    let actions = [
        ("z2-parity.json", z2_parity_spec()),
        ("s3-color.json", s3_color_spec()),
        ("z4-via-z2.json", z4_via_z2_spec()),
        ("s3-trivial-action.json", s3_trivial_spec()),
        ("sweedler-candidate.json", sweedler_candidate_spec()),
    ];
    for (file, s) in &actions {
        out.push((file.to_string(), to_pretty(&s.to_json())));
    }
    out
}

pub fn write_all(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Invalid(format!("{}: {e}", dir.display())))?;
    for (name, text) in files() {
        let path = dir.join(name);
        std::fs::write(&path, text).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibles_are_representations() {
        let z2 = cyclic(2);
        let s3 = symmetric3();
        for m in [z2_trivial(), z2_sign()] {
            m.validate(&z2).unwrap();
        }
        for m in [s3_trivial_rep(), s3_sign(), s3_standard()] {
            m.validate(&s3).unwrap();
        }
    }

    #[test]
    fn standard_character() {
        // (e, transpositions, 3-cycles) ↦ (2, 0, -1)
        let chi: Vec<Scalar> = s3_standard().character();
        let expected: Vec<Scalar> = [2, 0, 0, 0, -1, -1].iter().map(|&x| Scalar::from_int(x)).collect();
        assert_eq!(chi, expected);
    }
}
