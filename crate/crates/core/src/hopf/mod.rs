//! Finite-dimensional Hopf algebras given by structure constants.

mod axioms;
mod builders;
mod grouplike;
mod ideal;
mod rep;

pub use axioms::{antipode_order, cocommutator, contract_counit, is_cocommutative, iterated_coproduct, verify_axioms, Cocommutativity};
pub use builders::{cyclic, group_algebra, s3_table, symmetric3, sweedler, S3_LABELS, S3_PERMUTATIONS};
pub use grouplike::{find_grouplikes, group_name, isomorphic_tables, GroupLikes};
pub use ideal::{quotient_hopf, verify_hopf_ideal};
pub use rep::{hom_h, tensor_multiplicity, verify_rep_isos, Representation};

use crate::error::{Error, Result};
use crate::exactmath::{Mat, Scalar};

/// An element of `H`, as coordinates in the basis.
pub type Element = Vec<Scalar>;

/// `H` with basis `b_0..b_{d-1}`:
/// `b_i b_j = Σ_k mul[i][j][k] b_k`, `Δ(b_i) = Σ_{j,k} comul[i][j][k] b_j ⊗ b_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct HopfAlgebra {
    dim: usize,
    labels: Vec<String>,
    conductor: u32,
    mul: Vec<Scalar>,
    unit: Element,
    comul: Vec<Scalar>,
    counit: Element,
    // column i holds S(b_i)
    antipode: Mat,
}

impl HopfAlgebra {
    /// Assemble from dense structure tensors (`mul` and `comul` have
    /// `d³` entries indexed `(i*d + j)*d + k`). Only shapes are checked;
    /// the axioms are the business of [`verify_axioms`].
    pub fn new(
        labels: Vec<String>,
        conductor: u32,
        mul: Vec<Scalar>,
        unit: Element,
        comul: Vec<Scalar>,
        counit: Element,
        antipode: Mat,
    ) -> Result<HopfAlgebra> {
        let d = labels.len();
        if d == 0 {
            return Err(Error::Shape("a Hopf algebra needs at least one basis element".into()));
        }
        let checks = [
            ("mul", mul.len(), d * d * d),
            ("comul", comul.len(), d * d * d),
            ("unit", unit.len(), d),
            ("counit", counit.len(), d),
            ("antipode rows", antipode.rows(), d),
            ("antipode cols", antipode.cols(), d),
        ];
        for (what, got, want) in checks {
            if got != want {
                return Err(Error::Shape(format!("{what}: {got} entries, expected {want}")));
            }
        }
        Ok(HopfAlgebra { dim: d, labels, conductor, mul, unit, comul, counit, antipode })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn mul_coef(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.mul[(i * self.dim + j) * self.dim + k]
    }

    pub fn comul_coef(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.comul[(i * self.dim + j) * self.dim + k]
    }

    pub fn unit(&self) -> &Element {
        &self.unit
    }

    pub fn counit_vec(&self) -> &Element {
        &self.counit
    }

    pub fn antipode_matrix(&self) -> &Mat {
        &self.antipode
    }

    pub fn basis(&self, i: usize) -> Element {
        let mut v = vec![Scalar::zero(); self.dim];
        v[i] = Scalar::one();
        v
    }

    pub fn zero(&self) -> Element {
        vec![Scalar::zero(); self.dim]
    }

    pub fn multiply(&self, a: &[Scalar], b: &[Scalar]) -> Element {
        let d = self.dim;
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.mul_coef(i, j, k);
                    if !c.is_zero() {
                        *o += &(&xy * c);
                    }
                }
            }
        }
        debug_assert_eq!(out.len(), d);
        out
    }

    /// `Δ(a)` as a vector of length `d²` indexed `j*d + k`.
    pub fn coproduct(&self, a: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim;
        let mut out = vec![Scalar::zero(); d * d];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (jk, o) in out.iter_mut().enumerate() {
                let c = &self.comul[i * d * d + jk];
                if !c.is_zero() {
                    *o += &(x * c);
                }
            }
        }
        out
    }

    pub fn counit(&self, a: &[Scalar]) -> Scalar {
        dot(&self.counit, a)
    }

    pub fn antipode(&self, a: &[Scalar]) -> Element {
        self.antipode.mul_vec(a)
    }

    /// Nonzero Sweedler terms `(j, k, coefficient)` of `Δ(b_i)`.
    pub fn coproduct_terms(&self, i: usize) -> Vec<(usize, usize, Scalar)> {
        let d = self.dim;
        let mut out = Vec::new();
        for j in 0..d {
            for k in 0..d {
                let c = self.comul_coef(i, j, k);
                if !c.is_zero() {
                    out.push((j, k, c.clone()));
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by `a`: column `j` is `a b_j`.
    pub fn left_mult_matrix(&self, a: &[Scalar]) -> Mat {
        let cols: Vec<Element> = (0..self.dim).map(|j| self.multiply(a, &self.basis(j))).collect();
        Mat::from_fn(self.dim, self.dim, |i, j| cols[j][i].clone())
    }

    /// A small set of basis indices generating `H` as a unital algebra,
    /// chosen greedily in basis order.
    pub fn algebra_generators(&self) -> Vec<usize> {
        let d = self.dim;
        let mut gens = Vec::new();
        let mut span = crate::exactmath::span_basis(std::slice::from_ref(&self.unit), d);
        for i in 0..d {
            if crate::exactmath::in_span(&span, &self.basis(i)) {
                continue;
            }
            gens.push(i);
            span = self.generated_subalgebra(&gens);
            if span.len() == d {
                break;
            }
        }
        gens
    }

    fn generated_subalgebra(&self, gens: &[usize]) -> Vec<Element> {
        let d = self.dim;
        let mut span = crate::exactmath::span_basis(std::slice::from_ref(&self.unit), d);
        loop {
            let mut candidates = span.clone();
            for v in &span {
                for &g in gens {
                    candidates.push(self.multiply(v, &self.basis(g)));
                }
            }
            let next = crate::exactmath::span_basis(&candidates, d);
            if next.len() == span.len() {
                return span;
            }
            span = next;
        }
    }

    /// Human-readable rendering of an element, e.g. `1 - g^2`.
    pub fn render(&self, a: &[Scalar]) -> String {
        render_terms(a.iter().enumerate().map(|(i, c)| (c, self.labels[i].clone())))
    }

    /// Rendering of an element of `H ⊗ H` given as a `d²` vector.
    pub fn render_tensor(&self, t: &[Scalar]) -> String {
        let d = self.dim;
        render_terms(
            t.iter().enumerate().map(|(jk, c)| (c, format!("{}⊗{}", self.labels[jk / d], self.labels[jk % d]))),
        )
    }

    /// Same algebra with one antipode entry replaced; used for mutation tests.
    pub fn with_antipode(&self, antipode: Mat) -> Result<HopfAlgebra> {
        HopfAlgebra::new(
            self.labels.clone(),
            self.conductor,
            self.mul.clone(),
            self.unit.clone(),
            self.comul.clone(),
            self.counit.clone(),
            antipode,
        )
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

pub(crate) fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

pub(crate) fn render_terms<'a>(terms: impl Iterator<Item = (&'a Scalar, String)>) -> String {
    let mut out = String::new();
    for (c, label) in terms {
        if c.is_zero() {
            continue;
        }
        let coef = c.to_string();
        let (neg, mag) = match (c.as_rational(), coef.strip_prefix('-')) {
            (Some(_), Some(rest)) => (true, rest.to_string()),
            _ => (false, coef.clone()),
        };
        let body = if mag == "1" {
            label
        } else if c.as_rational().is_some() {
            format!("{mag}*{label}")
        } else {
            format!("({mag})*{label}")
        };
        if out.is_empty() {
            out = if neg { format!("-{body}") } else { body };
        } else {
            out.push_str(if neg { " - " } else { " + " });
            out.push_str(&body);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_elements() {
        let h = cyclic(4);
        let mut v = h.zero();
        v[0] = Scalar::one();
        v[2] = Scalar::from_int(-1);
        assert_eq!(h.render(&v), "1 - g^2");
        assert_eq!(h.render(&h.zero()), "0");
        v[1] = Scalar::from_ratio(1, 2);
        assert_eq!(h.render(&v), "1 + 1/2*g - g^2");
    }

    #[test]
    fn generators_of_s3() {
        let h = symmetric3();
        assert_eq!(h.algebra_generators().len(), 2);
        assert_eq!(cyclic(4).algebra_generators(), vec![1]);
    }

    #[test]
    fn shape_errors() {
        let h = cyclic(2);
        assert!(h.with_antipode(Mat::identity(3)).is_err());
    }
}
