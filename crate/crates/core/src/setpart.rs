//! Set partitions and the classical moment–cumulant inversion on their lattice.

use crate::scalar::{factorial, Rational};
use num_traits::Zero;
use std::collections::HashMap;

/// All set partitions of {0, …, n−1}, blocks in order of their smallest element.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(i: usize, n: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(i);
            go(i + 1, n, blocks, out);
            blocks[b].pop();
        }
        blocks.push(vec![i]);
        go(i + 1, n, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), &mut out);
    out
}

/// μ(π, 1̂) = (−1)^{b−1}(b−1)! for a partition with b blocks.
pub fn mobius_to_top(blocks: usize) -> Rational {
    let v = Rational::from_integer(factorial(blocks - 1));
    if blocks.is_multiple_of(2) {
        -v
    } else {
        v
    }
}

/// k(x_0, …, x_{n−1}) = Σ_π μ(π, 1̂) Π_{B∈π} m(B), where `moment` receives
/// the sorted indices of a block. Moments of repeated blocks are computed once.
pub fn cumulant(n: usize, mut moment: impl FnMut(&[usize]) -> Rational) -> Rational {
    let mut cache: HashMap<Vec<usize>, Rational> = HashMap::new();
    let mut total = Rational::zero();
    for pi in set_partitions(n) {
        let mut term = mobius_to_top(pi.len());
        for block in &pi {
            let m = cache.entry(block.clone()).or_insert_with(|| moment(block)).clone();
            if m.is_zero() {
                term = Rational::zero();
                break;
            }
            term *= m;
        }
        total += term;
    }
    total
}

/// f64 version of [`cumulant`].
pub fn cumulant_f64(n: usize, mut moment: impl FnMut(&[usize]) -> f64) -> f64 {
    let mut cache: HashMap<Vec<usize>, f64> = HashMap::new();
    let mut total = 0.0;
    for pi in set_partitions(n) {
        let b = pi.len();
        let mut term = (1..b).map(|k| k as f64).product::<f64>();
        if b % 2 == 0 {
            term = -term;
        }
        for block in &pi {
            term *= *cache.entry(block.clone()).or_insert_with(|| moment(block));
        }
        total += term;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (0..7).map(|n| set_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 52, 203]);
    }

    #[test]
    fn cumulants_of_a_point_mass_vanish() {
        // Deterministic variables: every cumulant of order ≥ 2 is zero.
        let vals = [rat(2, 1), rat(-1, 3), rat(5, 1)];
        let m = |b: &[usize]| b.iter().fold(rat(1, 1), |acc, &i| acc * &vals[i]);
        assert_eq!(cumulant(1, m), rat(2, 1));
        assert_eq!(cumulant(2, m), rat(0, 1));
        assert_eq!(cumulant(3, m), rat(0, 1));
    }

    #[test]
    fn covariance_and_third_cumulant() {
        // X ~ Bernoulli(1/2): variance 1/4, third cumulant 0.
        let m = |_: &[usize]| rat(1, 2);
        assert_eq!(cumulant(2, m), rat(1, 4));
        assert_eq!(cumulant(3, m), rat(0, 1));
        assert!((cumulant_f64(2, |_| 0.5) - 0.25).abs() < 1e-15);
    }
}
