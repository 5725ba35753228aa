//! Canonical monomials `α_{i₁}(−n₁)···α_{i_k}(−n_k)|0>` of the Fock space.

use std::cmp::Reverse;
use std::fmt::Write;

/// The creation operator `α_color(−mode)`, `mode ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Oscillator {
    pub mode: u32,
    pub color: u32,
}

impl Oscillator {
    fn key(self) -> (Reverse<u32>, u32) {
        (Reverse(self.mode), self.color)
    }
}

impl PartialOrd for Oscillator {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: larger modes first, then smaller colors.
impl Ord for Oscillator {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

/// A sorted list of oscillators; the empty list is the vacuum.
pub type Monomial = Vec<Oscillator>;

pub fn weight(m: &[Oscillator]) -> usize {
    m.iter().map(|o| o.mode as usize).sum()
}

/// Insert into canonical position.
pub fn with_oscillator(m: &[Oscillator], o: Oscillator) -> Monomial {
    let mut out = m.to_vec();
    let pos = out.partition_point(|x| *x <= o);
    out.insert(pos, o);
    out
}

/// All monomials of weight `n` in `rank` colors, in lexicographic order of
/// their canonical oscillator sequences.
pub fn monomials_of_weight(rank: u32, n: usize) -> Vec<Monomial> {
    fn go(rank: u32, left: usize, min: Option<Oscillator>, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        let top = min.map_or(left as u32, |o| o.mode.min(left as u32));
        for mode in (1..=top).rev() {
            for color in 0..rank {
                let o = Oscillator { mode, color };
                if min.is_some_and(|m| o < m) {
                    continue;
                }
                cur.push(o);
                go(rank, left - mode as usize, Some(o), cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(rank, n, None, &mut Vec::new(), &mut out);
    out
}

/// `a(-2)a(-1)^2|0>` for rank 1, `a1(-1)a3(-1)|0>` for higher rank.
pub fn label(m: &[Oscillator], rank: u32) -> String {
    let mut s = String::new();
    let mut i = 0;
    while i < m.len() {
        let o = m[i];
        let mut j = i;
        while j < m.len() && m[j] == o {
            j += 1;
        }
        if rank == 1 {
            write!(s, "a(-{})", o.mode).unwrap();
        } else {
            write!(s, "a{}(-{})", o.color + 1, o.mode).unwrap();
        }
        if j - i > 1 {
            write!(s, "^{}", j - i).unwrap();
        }
        i = j;
    }
    s.push_str("|0>");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_partitions() {
        let dims: Vec<usize> = (0..9).map(|n| monomials_of_weight(1, n).len()).collect();
        assert_eq!(dims, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
    }

    #[test]
    fn weight_two_order() {
        let labels: Vec<String> = monomials_of_weight(1, 2).iter().map(|m| label(m, 1)).collect();
        assert_eq!(labels, vec!["a(-2)|0>", "a(-1)^2|0>"]);
        let labels: Vec<String> = monomials_of_weight(2, 2).iter().map(|m| label(m, 2)).collect();
        assert_eq!(
            labels,
            vec!["a1(-2)|0>", "a2(-2)|0>", "a1(-1)^2|0>", "a1(-1)a2(-1)|0>", "a2(-1)^2|0>"]
        );
    }

    #[test]
    fn insertion_is_canonical() {
        let m = vec![Oscillator { mode: 3, color: 0 }, Oscillator { mode: 1, color: 1 }];
        let n = with_oscillator(&m, Oscillator { mode: 1, color: 0 });
        assert_eq!(label(&n, 2), "a1(-3)a1(-1)a2(-1)|0>");
    }
}
