//! Symmetric rational matrices: rank, determinant and semidefiniteness by
//! exact elimination.

use std::fmt;

use crate::algebra::{Rat, Ring};

/// Rank of a rational matrix by Gaussian elimination.
pub fn rank(m: &[Vec<Rat>]) -> usize {
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let pivot = a[r][c].clone();
        for i in r + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone() / &pivot;
            for j in c..cols {
                let v = a[r][j].clone() * &f;
                a[i][j] = a[i][j].clone() - &v;
            }
        }
        r += 1;
    }
    r
}

#[derive(Clone, PartialEq)]
pub struct GramMatrix {
    pub entries: Vec<Vec<Rat>>,
    rank: usize,
}

impl GramMatrix {
    pub fn new(entries: Vec<Vec<Rat>>) -> Self {
        let rank = rank(&entries);
        GramMatrix { entries, rank }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (0..n).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    /// Symmetric elimination on diagonal pivots. A zero diagonal entry of a
    /// semidefinite matrix forces its row to vanish.
    pub fn is_positive_semidefinite(&self) -> bool {
        let mut a = self.entries.clone();
        let n = a.len();
        let mut done = vec![false; n];
        loop {
            let Some(k) = (0..n).find(|&i| !done[i] && !a[i][i].is_zero()) else {
                return (0..n).all(|i| done[i] || (0..n).all(|j| done[j] || a[i][j].is_zero()));
            };
            if a[k][k] < Rat::zero() {
                return false;
            }
            done[k] = true;
            let pivot = a[k][k].clone();
            for i in 0..n {
                if done[i] || a[i][k].is_zero() {
                    continue;
                }
                let f = a[i][k].clone() / &pivot;
                for j in 0..n {
                    let v = a[k][j].clone() * &f;
                    a[i][j] = a[i][j].clone() - &v;
                }
            }
        }
    }

    /// Determinant by elimination.
    pub fn det(&self) -> Rat {
        let mut a = self.entries.clone();
        let n = a.len();
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
                return Rat::zero();
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            let pivot = a[c][c].clone();
            det = det * &pivot;
            for i in c + 1..n {
                let f = a[i][c].clone() / &pivot;
                for j in c..n {
                    let v = a[c][j].clone() * &f;
                    a[i][j] = a[i][j].clone() - &v;
                }
            }
        }
        det
    }

    /// Indices of a maximal independent subset, chosen greedily in order.
    pub fn independent_subset(&self) -> Vec<usize> {
        let mut chosen: Vec<usize> = Vec::new();
        for i in 0..self.len() {
            let mut trial = chosen.clone();
            trial.push(i);
            if self.minor(&trial).rank() == trial.len() {
                chosen = trial;
            }
        }
        chosen
    }

    /// The matrix with one more point appended, given its pairings with the
    /// existing points and its height.
    pub fn bordered(&self, row: &[Rat], diag: &Rat) -> GramMatrix {
        let mut m = self.entries.clone();
        for (r, v) in m.iter_mut().zip(row) {
            r.push(v.clone());
        }
        let mut last = row.to_vec();
        last.push(diag.clone());
        m.push(last);
        GramMatrix::new(m)
    }

    pub fn minor(&self, idx: &[usize]) -> GramMatrix {
        GramMatrix::new(
            idx.iter()
                .map(|&i| idx.iter().map(|&j| self.entries[i][j].clone()).collect())
                .collect(),
        )
    }
}

impl fmt::Debug for GramMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GramMatrix(rank {}) ", self.rank)?;
        f.debug_list().entries(self.entries.iter().map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>())).finish()
    }
}

impl fmt::Display for GramMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        write!(f, "rank = {}", self.rank)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> GramMatrix {
        GramMatrix::new(rows.iter().map(|r| r.iter().map(|&v| Rat::from_i64(v)).collect()).collect())
    }

    #[test]
    fn rank_and_det() {
        let g = m(&[&[2, 1, 3], &[1, 2, 3], &[3, 3, 6]]);
        assert_eq!(g.rank(), 2);
        assert!(g.det().is_zero());
        assert!(g.is_positive_semidefinite());
        assert_eq!(m(&[&[2, 1], &[1, 2]]).det(), Rat::from_i64(3));
        assert!(!m(&[&[1, 2], &[2, 1]]).is_positive_semidefinite());
        assert!(!m(&[&[0, 1], &[1, 0]]).is_positive_semidefinite());
        assert_eq!(m(&[]).rank(), 0);
        assert_eq!(g.independent_subset(), vec![0, 1]);
    }
}
