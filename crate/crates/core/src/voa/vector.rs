use std::collections::BTreeMap;

use crate::exactmath::Scalar;

/// A sparse vector in the truncated VOA, keyed by global basis index.
/// Zero coefficients are never stored, so equality is structural.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VoaVector(BTreeMap<usize, Scalar>);

impl VoaVector {
    pub fn zero() -> VoaVector {
        VoaVector(BTreeMap::new())
    }

    pub fn basis(i: usize) -> VoaVector {
        let mut m = BTreeMap::new();
        m.insert(i, Scalar::one());
        VoaVector(m)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, Scalar)>) -> VoaVector {
        let mut v = VoaVector::zero();
        for (i, c) in terms {
            v.add_term(i, &c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Scalar {
        self.0.get(&i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.0.iter().map(|(i, c)| (*i, c))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_term(&mut self, i: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(i).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&i);
        }
    }

    /// `self += c · other`
    pub fn add_scaled(&mut self, other: &VoaVector, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (i, x) in other.iter() {
            self.add_term(i, &(x * c));
        }
    }

    pub fn scale(&self, c: &Scalar) -> VoaVector {
        let mut out = VoaVector::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn add(&self, other: &VoaVector) -> VoaVector {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    pub fn sub(&self, other: &VoaVector) -> VoaVector {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::from_int(-1));
        out
    }

    /// Coordinates on the contiguous index range `offset..offset+len`.
    pub fn dense(&self, offset: usize, len: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); len];
        for (i, c) in self.0.range(offset..offset + len) {
            out[i - offset] = c.clone();
        }
        out
    }

    pub fn from_dense(offset: usize, coords: &[Scalar]) -> VoaVector {
        VoaVector::from_terms(coords.iter().enumerate().map(|(i, c)| (offset + i, c.clone())))
    }
}
