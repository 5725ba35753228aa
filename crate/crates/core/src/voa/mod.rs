//! Weight-truncated vertex operator algebras with exact mode actions.

mod freefield;
mod monomial;
mod vector;
mod verify;

pub use freefield::binomial;
pub use monomial::{label as monomial_label, monomials_of_weight, Monomial, Oscillator};
pub use vector::VoaVector;
pub use verify::{linear_independence_check, spanning_check, verify_voa_window, Independence, Spanning};

use std::collections::{BTreeMap, HashMap};
use std::ops::Range;
use std::sync::Arc;

use freefield::FreeField;

use crate::error::{Error, Result};
use crate::exactmath::{Mat, Scalar};

#[derive(Clone, Debug)]
enum Backend {
    FreeField(Arc<FreeField>),
    /// Mode results for every basis pair with `wt a + wt b ≤ pair_budget`;
    /// missing entries of such pairs are zero.
    Table { entries: Arc<HashMap<(usize, usize, i64), VoaVector>>, pair_budget: usize },
}

/// A VOA truncated to weights `0..=window`, with a fixed graded basis.
#[derive(Clone, Debug)]
pub struct TruncatedVoa {
    rank: Option<u32>,
    window: usize,
    conductor: u32,
    dims: Vec<usize>,
    offsets: Vec<usize>,
    labels: Vec<String>,
    weights: Vec<usize>,
    monomials: Option<Arc<Vec<Monomial>>>,
    omega: VoaVector,
    backend: Backend,
    overrides: Arc<HashMap<(usize, i64, usize), VoaVector>>,
}

impl TruncatedVoa {
    /// The rank-`rank` Heisenberg VOA on `α_1..α_rank` with
    /// `ω = ½ Σ_i α_i(−1)²|0>`, truncated at weight `window`.
    pub fn heisenberg(rank: u32, window: usize) -> Result<TruncatedVoa> {
        if rank < 1 || window < 2 {
            return Err(Error::Precondition(format!("need rank >= 1 and window >= 2, got rank {rank}, window {window}")));
        }
        let mut monomials = Vec::new();
        let mut dims = Vec::new();
        for n in 0..=window {
            let ms = monomials_of_weight(rank, n);
            dims.push(ms.len());
            monomials.extend(ms);
        }
        let labels = monomials.iter().map(|m| monomial_label(m, rank)).collect();
        let monomials = Arc::new(monomials);
        let engine = FreeField::new(window, Arc::clone(&monomials));
        let half = Scalar::from_ratio(1, 2);
        let omega = VoaVector::from_terms((0..rank).map(|c| {
            let m = vec![Oscillator { mode: 1, color: c }, Oscillator { mode: 1, color: c }];
            (engine.index_of(&m).expect("weight-2 monomial"), half.clone())
        }));
        let mut v = TruncatedVoa::assemble(dims, labels, 1, omega, Backend::FreeField(Arc::new(engine)));
        v.rank = Some(rank);
        v.monomials = Some(monomials);
        Ok(v)
    }

    /// A VOA given by explicit mode tables. `entries[(a, b, m)]` is
    /// `(b_a)_m b_b`; the table must be complete for every basis pair with
    /// `wt a + wt b ≤ pair_budget`. The vacuum is basis vector 0.
    pub fn from_tables(
        labels_by_weight: Vec<Vec<String>>,
        conductor: u32,
        omega: VoaVector,
        entries: HashMap<(usize, usize, i64), VoaVector>,
        pair_budget: usize,
    ) -> Result<TruncatedVoa> {
        if labels_by_weight.first().map(Vec::len) != Some(1) {
            return Err(Error::Invalid("weight 0 must be one-dimensional (the vacuum)".into()));
        }
        if labels_by_weight.len() < 3 {
            return Err(Error::Invalid("the window must include weight 2".into()));
        }
        let dims: Vec<usize> = labels_by_weight.iter().map(Vec::len).collect();
        let labels: Vec<String> = labels_by_weight.into_iter().flatten().collect();
        let total = labels.len();
        if let Some((&(a, b, _), _)) = entries.iter().find(|((a, b, _), _)| *a >= total || *b >= total) {
            return Err(Error::Invalid(format!("mode entry ({a}, {b}) refers to a missing basis vector")));
        }
        let backend = Backend::Table { entries: Arc::new(entries), pair_budget };
        let v = TruncatedVoa::assemble(dims, labels, conductor, omega, backend);
        if v.omega.iter().any(|(i, _)| v.weights[i] != 2) {
            return Err(Error::Invalid("the conformal vector must have weight 2".into()));
        }
        Ok(v)
    }

    fn assemble(dims: Vec<usize>, labels: Vec<String>, conductor: u32, omega: VoaVector, backend: Backend) -> TruncatedVoa {
        let mut offsets = vec![0];
        let mut weights = Vec::new();
        for (n, &d) in dims.iter().enumerate() {
            offsets.push(offsets[n] + d);
            weights.extend(std::iter::repeat_n(n, d));
        }
        TruncatedVoa {
            rank: None,
            window: dims.len() - 1,
            conductor,
            dims,
            offsets,
            labels,
            weights,
            monomials: None,
            omega,
            backend,
            overrides: Arc::new(HashMap::new()),
        }
    }

    pub fn rank(&self) -> Option<u32> {
        self.rank
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn is_free_field(&self) -> bool {
        matches!(self.backend, Backend::FreeField(_))
    }

    /// For table-backed VOAs, the largest `wt a + wt b` with complete tables.
    pub fn pair_budget(&self) -> Option<usize> {
        match &self.backend {
            Backend::FreeField(_) => None,
            Backend::Table { pair_budget, .. } => Some(*pair_budget),
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `dim V_n`; zero outside the window.
    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    pub fn offset(&self, n: usize) -> usize {
        self.offsets[n]
    }

    pub fn range(&self, n: usize) -> Range<usize> {
        self.offsets[n]..self.offsets[n + 1]
    }

    pub fn total_dim(&self) -> usize {
        self.labels.len()
    }

    pub fn weight_of(&self, i: usize) -> usize {
        self.weights[i]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn monomial(&self, i: usize) -> Option<&Monomial> {
        self.monomials.as_ref().map(|m| &m[i])
    }

    /// Basis index of a canonical monomial in a Heisenberg VOA.
    pub fn index_of_monomial(&self, m: &[Oscillator]) -> Option<usize> {
        match &self.backend {
            Backend::FreeField(engine) => engine.index_of(&m.to_vec()),
            Backend::Table { .. } => None,
        }
    }

    pub fn vacuum(&self) -> VoaVector {
        VoaVector::basis(0)
    }

    pub fn omega(&self) -> &VoaVector {
        &self.omega
    }

    /// Index of `α_color(−1)|0>` in a Heisenberg VOA.
    pub fn generator(&self, color: u32) -> usize {
        self.offsets[1] + color as usize
    }

    /// `(b_a)_m b_b`, or [`Error::Truncated`] when its weight exceeds the
    /// window (or the table does not cover the pair). Vacuum modes are
    /// known exactly at every weight.
    pub fn basis_mode(&self, a: usize, m: i64, b: usize) -> Result<VoaVector> {
        let r = self.weights[a] as i64 + self.weights[b] as i64 - m - 1;
        if r < 0 {
            return Ok(VoaVector::zero());
        }
        if r > self.window as i64 {
            // Y(1, z) = id, so 1_m b = 0 for the m < -1 that land here
            if a == 0 {
                return Ok(VoaVector::zero());
            }
            return Err(Error::Truncated);
        }
        if let Some(v) = self.overrides.get(&(a, m, b)) {
            return Ok(v.clone());
        }
        match &self.backend {
            Backend::FreeField(engine) => {
                let table = engine.pair(a, b);
                Ok(VoaVector::from_terms(table[r as usize].iter().cloned()))
            }
            Backend::Table { entries, pair_budget } => {
                if self.weights[a] + self.weights[b] > *pair_budget {
                    return Err(Error::Truncated);
                }
                Ok(entries.get(&(a, b, m)).cloned().unwrap_or_default())
            }
        }
    }

    /// `u_m v`, bilinear in `u` and `v`.
    pub fn mode(&self, u: &VoaVector, m: i64, v: &VoaVector) -> Result<VoaVector> {
        let mut out = VoaVector::zero();
        for (a, x) in u.iter() {
            for (b, y) in v.iter() {
                let r = self.basis_mode(a, m, b)?;
                out.add_scaled(&r, &(x * y));
            }
        }
        Ok(out)
    }

    /// The weight of `v` if it is homogeneous and nonzero.
    pub fn weight_of_vector(&self, v: &VoaVector) -> Option<usize> {
        let mut it = v.iter().map(|(i, _)| self.weights[i]);
        let w = it.next()?;
        it.all(|x| x == w).then_some(w)
    }

    pub fn homogeneous_components(&self, v: &VoaVector) -> BTreeMap<usize, VoaVector> {
        let mut out: BTreeMap<usize, VoaVector> = BTreeMap::new();
        for (i, c) in v.iter() {
            out.entry(self.weights[i]).or_default().add_term(i, c);
        }
        out
    }

    /// Matrix of `u_m : V_n → V_{wt u + n − m − 1}` for homogeneous `u`.
    /// A negative target weight gives a matrix with zero rows.
    pub fn mode_matrix(&self, u: &VoaVector, m: i64, n: usize) -> Result<Mat> {
        let wu = match self.weight_of_vector(u) {
            Some(w) => w,
            None if u.is_zero() => 0,
            None => return Err(Error::Precondition("mode matrices need a homogeneous vector".into())),
        };
        let target = wu as i64 + n as i64 - m - 1;
        if target < 0 {
            return Ok(Mat::zeros(0, self.dim(n)));
        }
        if target > self.window as i64 {
            return Err(Error::Truncated);
        }
        let t = target as usize;
        let mut out = Mat::zeros(self.dim(t), self.dim(n));
        for (col, b) in self.range(n).enumerate() {
            let img = self.mode(u, m, &VoaVector::basis(b))?;
            for (row, c) in img.dense(self.offset(t), self.dim(t)).into_iter().enumerate() {
                out[(row, col)] = c;
            }
        }
        Ok(out)
    }

    /// `L(n) v = ω_{n+1} v`.
    pub fn virasoro(&self, n: i64, v: &VoaVector) -> Result<VoaVector> {
        self.mode(&self.omega, n + 1, v)
    }

    /// `c` from `L(2)L(−2)|0> = (c/2)|0>`.
    pub fn central_charge(&self) -> Result<Scalar> {
        let l2 = self.virasoro(-2, &self.vacuum())?;
        let back = self.virasoro(2, &l2)?;
        Ok(&back.get(0) * &Scalar::from_int(2))
    }

    /// Same VOA with one mode-table entry replaced, for mutation testing.
    pub fn with_corrupted_entry(&self, a: usize, m: i64, b: usize, value: VoaVector) -> TruncatedVoa {
        let mut out = self.clone();
        let mut overrides = (*self.overrides).clone();
        overrides.insert((a, m, b), value);
        out.overrides = Arc::new(overrides);
        out
    }

    /// Every nonzero `(a, b, m, (b_a)_m b_b)` over basis pairs with
    /// `wt a + wt b ≤ pair_budget` and result inside the window.
    pub fn mode_entries(&self, pair_budget: usize) -> Result<Vec<(usize, usize, i64, VoaVector)>> {
        let mut out = Vec::new();
        for a in 0..self.total_dim() {
            for b in 0..self.total_dim() {
                let s = self.weights[a] + self.weights[b];
                if s > pair_budget {
                    continue;
                }
                for r in 0..=self.window {
                    let m = s as i64 - r as i64 - 1;
                    let v = self.basis_mode(a, m, b)?;
                    if !v.is_zero() {
                        out.push((a, b, m, v));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Human-readable rendering such as `1/2*a(-1)^2|0> + a(-2)|0>`.
    pub fn render(&self, v: &VoaVector) -> String {
        crate::hopf::render_terms(v.iter().map(|(i, c)| (c, self.labels[i].clone())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_one_alpha_is_vacuum() {
        let v = TruncatedVoa::heisenberg(1, 4).unwrap();
        let a = VoaVector::basis(v.generator(0));
        assert_eq!(v.mode(&a, 1, &a).unwrap(), v.vacuum());
        assert_eq!(v.mode(&a, 0, &a).unwrap(), VoaVector::zero());
    }

    #[test]
    fn l0_is_grading() {
        let v = TruncatedVoa::heisenberg(2, 4).unwrap();
        for i in 0..v.total_dim() {
            let b = VoaVector::basis(i);
            assert_eq!(v.virasoro(0, &b).unwrap(), b.scale(&Scalar::from_int(v.weight_of(i) as i64)));
        }
    }

    #[test]
    fn central_charge_is_rank() {
        for r in [1, 3] {
            let v = TruncatedVoa::heisenberg(r, 4).unwrap();
            assert_eq!(v.central_charge().unwrap(), Scalar::from_int(r as i64));
        }
    }

    #[test]
    fn truncation_is_distinct_from_zero() {
        let v = TruncatedVoa::heisenberg(1, 3).unwrap();
        let a = VoaVector::basis(v.generator(0));
        let top = VoaVector::basis(v.range(3).start);
        assert_eq!(v.mode(&a, -2, &top), Err(Error::Truncated));
        assert_eq!(v.mode(&a, 5, &top).unwrap(), VoaVector::zero());
    }

    #[test]
    fn vacuum_creation() {
        let v = TruncatedVoa::heisenberg(1, 5).unwrap();
        for i in 0..v.total_dim() {
            let b = VoaVector::basis(i);
            assert_eq!(v.mode(&b, -1, &v.vacuum()).unwrap(), b);
            assert_eq!(v.mode(&v.vacuum(), -1, &b).unwrap(), b);
        }
    }

    #[test]
    fn rejects_tiny_windows() {
        assert!(TruncatedVoa::heisenberg(0, 4).is_err());
        assert!(TruncatedVoa::heisenberg(1, 1).is_err());
    }
}
