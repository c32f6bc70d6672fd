//! Exact linear solves over the rationals.

use crate::scalar::Rational;
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq)]
pub enum Solution {
    Unique(Vec<Rational>),
    /// Fewer independent equations than unknowns.
    Singular { rank: usize },
    /// The equations contradict each other.
    Inconsistent,
}

/// Solves `a x = b` for a possibly overdetermined system by Gauss–Jordan
/// elimination. `a` is row-major with `unknowns` columns.
pub fn solve(a: &[Vec<Rational>], b: &[Rational], unknowns: usize) -> Solution {
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.resize(unknowns, Rational::zero());
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut rank = 0;
    let mut pivots = Vec::new();
    for col in 0..unknowns {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = Rational::from_integer(1.into()) / m[rank][col].clone();
        for v in m[rank].iter_mut() {
            *v *= inv.clone();
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= f.clone() * pv;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    if m[rank..].iter().any(|row| !row[unknowns].is_zero()) {
        return Solution::Inconsistent;
    }
    if rank < unknowns {
        return Solution::Singular { rank };
    }
    let mut x = vec![Rational::zero(); unknowns];
    for (r, &col) in pivots.iter().enumerate() {
        x[col] = m[r][unknowns].clone();
    }
    Solution::Unique(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn overdetermined_consistent() {
        let a = vec![
            vec![rat(1, 1), rat(1, 1)],
            vec![rat(1, 1), rat(-1, 1)],
            vec![rat(2, 1), rat(0, 1)],
        ];
        let b = vec![rat(3, 1), rat(1, 1), rat(4, 1)];
        assert_eq!(solve(&a, &b, 2), Solution::Unique(vec![rat(2, 1), rat(1, 1)]));
    }

    #[test]
    fn detects_singular_and_inconsistent() {
        let a = vec![vec![rat(1, 1), rat(2, 1)], vec![rat(2, 1), rat(4, 1)]];
        assert_eq!(solve(&a, &[rat(1, 1), rat(2, 1)], 2), Solution::Singular { rank: 1 });
        assert_eq!(solve(&a, &[rat(1, 1), rat(3, 1)], 2), Solution::Inconsistent);
    }
}
