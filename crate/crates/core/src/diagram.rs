//! Diagram profiles, transition measures, moments and free cumulants.
//!
//! Profiles use content coordinates (column − row), so every minimum and
//! maximum of the profile is an integer and every transition measure of a
//! Young diagram has rational atoms and weights.

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::scalar::{Rational, Scalar};
use serde::{Deserialize, Serialize};

/// Local minima x_1 < … < x_d and maxima y_1 < … < y_{d−1} of a profile ω.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileCoordinates {
    pub minima: Vec<i64>,
    pub maxima: Vec<i64>,
}

impl ProfileCoordinates {
    pub fn new(minima: Vec<i64>, maxima: Vec<i64>) -> Result<Self> {
        let p = Self { minima, maxima };
        p.check_interlacing()?;
        Ok(p)
    }

    pub fn check_interlacing(&self) -> Result<()> {
        let d = self.minima.len();
        if d == 0 || self.maxima.len() + 1 != d {
            return Err(Error::Interlacing(format!(
                "{} minima and {} maxima",
                d,
                self.maxima.len()
            )));
        }
        for i in 0..d - 1 {
            let (x, y, x_next) = (self.minima[i], self.maxima[i], self.minima[i + 1]);
            if !(x < y && y < x_next) {
                return Err(Error::Interlacing(format!(
                    "x_{i} = {x}, y_{i} = {y}, x_{} = {x_next}",
                    i + 1
                )));
            }
        }
        Ok(())
    }

    /// Σ x_i − Σ y_j; zero for every Young diagram.
    pub fn center_of_mass(&self) -> i64 {
        self.minima.iter().sum::<i64>() - self.maxima.iter().sum::<i64>()
    }
}

/// Contents of the addable (minima) and removable (maxima) corners of λ.
pub fn profile(lambda: &Partition) -> ProfileCoordinates {
    let len = lambda.len();
    let mut minima = Vec::new();
    let mut maxima = Vec::new();
    for i in (0..=len).rev() {
        let row = lambda.row(i) as i64;
        let addable = i == 0 || lambda.row(i - 1) > lambda.row(i);
        if addable {
            minima.push(row - i as i64);
        }
        if i < len && lambda.row(i) > lambda.row(i + 1) {
            maxima.push(row - 1 - i as i64);
        }
    }
    minima.sort_unstable();
    maxima.sort_unstable();
    ProfileCoordinates { minima, maxima }
}

/// p̃_n(λ) = ∫ x^n σ''(x) dx with σ'' = Σ δ_{x_i} − Σ δ_{y_j} − δ_0.
///
/// The δ_0 term contributes 0^n, i.e. only for n = 0.
pub fn p_tilde_in<T: Scalar>(lambda: &Partition, n: u32) -> T {
    let p = profile(lambda);
    let pow = |v: i64| T::from_int(v).pow_u(n);
    let minima = p.minima.iter().fold(T::zero(), |acc, &x| acc + pow(x));
    let maxima = p.maxima.iter().fold(T::zero(), |acc, &y| acc + pow(y));
    let origin = if n == 0 { T::one() } else { T::zero() };
    minima - maxima - origin
}

pub fn p_tilde(lambda: &Partition, n: u32) -> Rational {
    p_tilde_in(lambda, n)
}

/// A finitely supported probability measure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransitionMeasure<T> {
    pub atoms: Vec<T>,
    pub weights: Vec<T>,
}

impl<T: Scalar> TransitionMeasure<T> {
    pub fn dirac(at: T) -> Self {
        Self { atoms: vec![at], weights: vec![T::one()] }
    }

    pub fn total_mass(&self) -> T {
        self.weights.iter().fold(T::zero(), |a, w| a + w.clone())
    }

    /// Cauchy transform G(z) = Σ w_i / (z − a_i) at a point off the support.
    pub fn cauchy_transform(&self, z: &T) -> T {
        self.atoms
            .iter()
            .zip(&self.weights)
            .fold(T::zero(), |acc, (a, w)| acc + w.clone() / (z.clone() - a.clone()))
    }
}

/// Transition measure of an interlacing profile: atoms at the minima with
/// weights Π_j (x_i − y_j) / Π_{k≠i} (x_i − x_k).
pub fn transition_measure<T: Scalar>(p: &ProfileCoordinates) -> Result<TransitionMeasure<T>> {
    p.check_interlacing()?;
    let mut atoms = Vec::with_capacity(p.minima.len());
    let mut weights = Vec::with_capacity(p.minima.len());
    for (i, &x) in p.minima.iter().enumerate() {
        // Interleave numerator and denominator factors to keep f64 products bounded.
        let mut w = T::one();
        let mut others = p.minima.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &v)| v);
        for &y in &p.maxima {
            let xk = others.next().expect("d − 1 other minima");
            w = w * T::from_int(x - y) / T::from_int(x - xk);
        }
        atoms.push(T::from_int(x));
        weights.push(w);
    }
    Ok(TransitionMeasure { atoms, weights })
}

/// Transition measure μ^λ of a Young diagram.
pub fn diagram_measure<T: Scalar>(lambda: &Partition) -> TransitionMeasure<T> {
    transition_measure(&profile(lambda)).expect("Young diagram profiles interlace")
}

/// Moments M_1, …, M_N.
pub fn moments<T: Scalar>(m: &TransitionMeasure<T>, n: usize) -> Vec<T> {
    let mut out = vec![T::zero(); n];
    for (a, w) in m.atoms.iter().zip(&m.weights) {
        let mut term = w.clone();
        for slot in out.iter_mut() {
            term = term * a.clone();
            *slot = slot.clone() + term.clone();
        }
    }
    out
}

/// Free cumulants R_1, …, R_N.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FreeCumulantVector<T> {
    pub values: Vec<T>,
}

impl<T: Scalar> FreeCumulantVector<T> {
    /// R_n (1-based); zero beyond the stored order.
    pub fn get(&self, n: usize) -> T {
        self.values.get(n - 1).cloned().unwrap_or_else(T::zero)
    }
}

/// Coefficients of M(z)^s for s = 0..=n, truncated at degree n, where
/// M(z) = 1 + M_1 z + M_2 z² + ….
fn moment_series_powers<T: Scalar>(moments: &[T], n: usize) -> Vec<Vec<T>> {
    let mut series = vec![T::one()];
    series.extend(moments.iter().take(n).cloned());
    series.resize(n + 1, T::zero());
    let mut powers = vec![{
        let mut one = vec![T::zero(); n + 1];
        one[0] = T::one();
        one
    }];
    for s in 1..=n {
        let prev = &powers[s - 1];
        let mut next = vec![T::zero(); n + 1];
        for (i, a) in prev.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in series.iter().enumerate().take(n + 1 - i) {
                next[i + j] = next[i + j].clone() + a.clone() * b.clone();
            }
        }
        powers.push(next);
    }
    powers
}

/// Moment → free cumulant conversion via M_n = Σ_{s=1}^{n} R_s [z^{n−s}] M(z)^s.
pub fn free_cumulants_from_moments<T: Scalar>(moments: &[T]) -> FreeCumulantVector<T> {
    let n = moments.len();
    let powers = moment_series_powers(moments, n);
    let mut r: Vec<T> = Vec::with_capacity(n);
    for k in 1..=n {
        let mut value = moments[k - 1].clone();
        for (s, rs) in r.iter().enumerate().map(|(i, v)| (i + 1, v)) {
            value = value - rs.clone() * powers[s][k - s].clone();
        }
        r.push(value);
    }
    FreeCumulantVector { values: r }
}

/// Inverse of [`free_cumulants_from_moments`].
pub fn moments_from_free_cumulants<T: Scalar>(r: &FreeCumulantVector<T>) -> Vec<T> {
    let n = r.values.len();
    let mut m: Vec<T> = Vec::with_capacity(n);
    for k in 1..=n {
        // [z^{k−s}] M(z)^s only involves M_1..M_{k−1}, already known.
        let mut known = m.clone();
        known.resize(n, T::zero());
        let powers = moment_series_powers(&known, k);
        let value = (1..=k).fold(T::zero(), |acc, s| {
            acc + r.values[s - 1].clone() * powers[s][k - s].clone()
        });
        m.push(value);
    }
    m
}

pub fn free_cumulants<T: Scalar>(m: &TransitionMeasure<T>, n: usize) -> FreeCumulantVector<T> {
    free_cumulants_from_moments(&moments(m, n))
}

/// Free cumulants of μ^λ.
pub fn diagram_free_cumulants<T: Scalar>(lambda: &Partition, n: usize) -> FreeCumulantVector<T> {
    free_cumulants(&diagram_measure::<T>(lambda), n)
}

/// Dilation D_p: atoms scaled by p, weights unchanged.
pub fn dilate<T: Scalar>(m: &TransitionMeasure<T>, p: &T) -> Result<TransitionMeasure<T>> {
    if *p <= T::zero() {
        return Err(Error::InvalidInput(format!("dilation factor must be positive, got {p:?}")));
    }
    Ok(TransitionMeasure {
        atoms: m.atoms.iter().map(|a| a.clone() * p.clone()).collect(),
        weights: m.weights.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partitions_up_to;
    use crate::scalar::rat;
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn ri(v: i64) -> Rational {
        rat(v, 1)
    }

    #[test]
    fn profiles() {
        assert_eq!(profile(&Partition::empty()), ProfileCoordinates { minima: vec![0], maxima: vec![] });
        assert_eq!(profile(&p(&[1])), ProfileCoordinates { minima: vec![-1, 1], maxima: vec![0] });
        assert_eq!(
            profile(&p(&[2, 1])),
            ProfileCoordinates { minima: vec![-2, 0, 2], maxima: vec![-1, 1] }
        );
    }

    #[test]
    fn interlacing_is_enforced() {
        assert!(ProfileCoordinates::new(vec![-1, 1], vec![2]).is_err());
        assert!(ProfileCoordinates::new(vec![-1, 1], vec![]).is_err());
        let bad = ProfileCoordinates { minima: vec![0, 1], maxima: vec![0] };
        assert!(matches!(transition_measure::<Rational>(&bad), Err(Error::Interlacing(_))));
    }

    #[test]
    fn p_tilde_examples() {
        for n in 1..6 {
            assert!(p_tilde(&Partition::empty(), n).is_zero());
        }
        assert_eq!(p_tilde(&Partition::empty(), 0), ri(0));
        assert_eq!(p_tilde(&p(&[1]), 2), ri(2));
        assert_eq!(p_tilde(&p(&[2, 1]), 2), ri(6));
    }

    #[test]
    fn measure_examples() {
        let m0: TransitionMeasure<Rational> = diagram_measure(&Partition::empty());
        assert_eq!(m0, TransitionMeasure::dirac(ri(0)));
        let m1: TransitionMeasure<Rational> = diagram_measure(&p(&[1]));
        assert_eq!(m1.atoms, vec![ri(-1), ri(1)]);
        assert_eq!(m1.weights, vec![rat(1, 2), rat(1, 2)]);
        let m21: TransitionMeasure<Rational> = diagram_measure(&p(&[2, 1]));
        assert_eq!(m21.atoms, vec![ri(-2), ri(0), ri(2)]);
        assert_eq!(m21.weights, vec![rat(3, 8), rat(1, 4), rat(3, 8)]);
        assert_eq!(moments(&m0, 3), vec![ri(0); 3]);
        assert_eq!(moments(&m1, 2), vec![ri(0), ri(1)]);
        assert_eq!(moments(&m21, 3), vec![ri(0), ri(3), ri(0)]);
    }

    #[test]
    fn cumulant_examples() {
        let r0 = diagram_free_cumulants::<Rational>(&Partition::empty(), 5);
        assert!(r0.values.iter().all(|v| v.is_zero()));
        let r2 = diagram_free_cumulants::<Rational>(&p(&[2]), 4);
        assert_eq!(r2.values, vec![ri(0), ri(2), ri(2), ri(-2)]);
        let r21 = diagram_free_cumulants::<Rational>(&p(&[2, 1]), 3);
        assert_eq!(r21.values, vec![ri(0), ri(3), ri(0)]);
    }

    #[test]
    fn dilation_examples() {
        let m1: TransitionMeasure<Rational> = diagram_measure(&p(&[1]));
        let d = dilate(&m1, &ri(2)).unwrap();
        assert_eq!(d.atoms, vec![ri(-2), ri(2)]);
        assert_eq!(d.weights, m1.weights);
        let delta = TransitionMeasure::dirac(ri(0));
        assert_eq!(dilate(&delta, &rat(7, 3)).unwrap(), delta);
        let m21: TransitionMeasure<Rational> = diagram_measure(&p(&[2, 1]));
        assert_eq!(free_cumulants(&dilate(&m21, &ri(3)).unwrap(), 2).get(2), ri(27));
        assert!(dilate(&m1, &ri(0)).is_err());
        assert!(dilate(&m1, &ri(-1)).is_err());
    }

    #[test]
    fn diagram_invariants_up_to_twelve() {
        for lambda in partitions_up_to(12) {
            let prof = profile(&lambda);
            prof.check_interlacing().unwrap();
            assert_eq!(prof.center_of_mass(), 0, "{lambda}");
            let m: TransitionMeasure<Rational> = transition_measure(&prof).unwrap();
            assert!(m.weights.iter().all(|w| *w > Rational::zero()));
            assert_eq!(m.total_mass(), Rational::one());
            let r = free_cumulants(&m, 2);
            let mom = moments(&m, 2);
            assert!(mom[0].is_zero() && r.get(1).is_zero());
            assert_eq!(mom[1], ri(lambda.size() as i64));
            assert_eq!(r.get(2), ri(lambda.size() as i64));
        }
    }

    #[test]
    fn cauchy_transform_is_ratio_of_corner_polynomials() {
        let lambda = p(&[3, 1, 1]);
        let prof = profile(&lambda);
        let m: TransitionMeasure<Rational> = transition_measure(&prof).unwrap();
        for z in [rat(7, 2), rat(-11, 3), rat(100, 1)] {
            let num = prof.maxima.iter().fold(Rational::one(), |a, &y| a * (z.clone() - ri(y)));
            let den = prof.minima.iter().fold(Rational::one(), |a, &x| a * (z.clone() - ri(x)));
            assert_eq!(m.cauchy_transform(&z), num / den);
        }
    }

    /// Profile ω^λ traced from the row lengths (not from corner contents),
    /// then p̃_n = n(n−1) ∫ x^{n−2} σ(x) dx integrated exactly on each unit
    /// segment where σ = (ω − |x|)/2 is affine.
    fn p_tilde_by_integration(lambda: &Partition, n: u32) -> Rational {
        if n < 2 {
            return Rational::zero();
        }
        // Vertices (x, ω(x)) along the boundary, left to right.
        let len = lambda.len() as i64;
        let mut pts: Vec<(i64, i64)> = vec![(-len - 1, len + 1), (-len, len)];
        let (mut c, mut r) = (0i64, len);
        for i in (0..lambda.len()).rev() {
            let target = lambda.row(i) as i64;
            while c < target {
                c += 1;
                pts.push((c - r, c + r));
            }
            r -= 1;
            pts.push((c - r, c + r));
        }
        pts.push((c + 1, c + 1));
        let sigma = |x: i64, w: i64| rat(w - x.abs(), 2);
        let m = n - 2;
        let mut total = Rational::zero();
        for pair in pts.windows(2) {
            let (x0, w0) = pair[0];
            let (x1, w1) = pair[1];
            assert_eq!(x1 - x0, 1);
            let (a, b) = (sigma(x0, w0), sigma(x1, w1) - sigma(x0, w0));
            // ∫_{x0}^{x1} x^m (a + b (x − x0)) dx
            let prim = |x: i64| {
                let xr = ri(x);
                let t1 = (a.clone() - b.clone() * ri(x0)) * xr.pow_u(m + 1) / ri((m + 1) as i64);
                let t2 = b.clone() * xr.pow_u(m + 2) / ri((m + 2) as i64);
                t1 + t2
            };
            total += prim(x1) - prim(x0);
        }
        total * ri((n * (n - 1)) as i64)
    }

    #[test]
    fn p_tilde_matches_integration_oracle() {
        for lambda in partitions_up_to(8) {
            for n in 1..=7 {
                assert_eq!(p_tilde(&lambda, n), p_tilde_by_integration(&lambda, n), "{lambda}, n={n}");
            }
        }
    }

    fn small_partition() -> impl Strategy<Value = Partition> {
        prop::collection::vec(1usize..6, 0..6).prop_map(Partition::from_unsorted)
    }

    proptest! {
        #[test]
        fn moment_cumulant_round_trip(lambda in small_partition(), n in 1usize..9) {
            let m = diagram_measure::<Rational>(&lambda);
            let mom = moments(&m, n);
            let r = free_cumulants_from_moments(&mom);
            prop_assert_eq!(moments_from_free_cumulants(&r), mom);
        }

        #[test]
        fn dilation_homogeneity(lambda in small_partition(), num in 1i64..7, den in 1i64..5) {
            let p = rat(num, den);
            let m = diagram_measure::<Rational>(&lambda);
            let base = free_cumulants(&m, 6);
            let scaled = free_cumulants(&dilate(&m, &p).unwrap(), 6);
            for k in 1..=6u32 {
                prop_assert_eq!(scaled.get(k as usize), base.get(k as usize) * p.pow_u(k));
            }
        }

        #[test]
        fn f64_measure_tracks_exact(lambda in small_partition()) {
            let exact = diagram_free_cumulants::<Rational>(&lambda, 5);
            let approx = diagram_free_cumulants::<f64>(&lambda, 5);
            for k in 1..=5 {
                prop_assert!((approx.get(k) - exact.get(k).to_f64_lossy()).abs() < 1e-8);
            }
        }
    }
}
