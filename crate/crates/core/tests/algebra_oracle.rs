//! Σ-basis products against explicit convolution in ℂ(PS_q).

use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::HashMap;
use wreathkit::algebra::{expand_sigma, multiply_partial, natural_multiply, AlgebraElement, PartialPermutation};
use wreathkit::partition::RowMultiset;
use wreathkit::scalar::Rational;
use wreathkit::wreath::enumerate_tensors;

type Expansion = HashMap<PartialPermutation, BigInt>;

fn convolve(a: &Expansion, b: &Expansion) -> Expansion {
    let mut out = Expansion::new();
    for (x, cx) in a {
        for (y, cy) in b {
            *out.entry(multiply_partial(x, y)).or_default() += cx * cy;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn expand(a: &AlgebraElement, q: usize) -> HashMap<PartialPermutation, Rational> {
    let mut out: HashMap<PartialPermutation, Rational> = HashMap::new();
    for (nu, c) in a.terms() {
        for (p, m) in expand_sigma(nu, q) {
            *out.entry(p).or_insert_with(Rational::zero) += c * Rational::from_integer(m);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn shapes(max: usize) -> Vec<RowMultiset> {
    enumerate_tensors(1, max).into_iter().map(|t| t.slot(0).clone()).filter(|r| !r.is_empty()).collect()
}

#[test]
fn natural_products_match_explicit_convolution() {
    let all = shapes(5);
    let mut checked = 0;
    for mu in &all {
        for nu in &all {
            if mu.total() + nu.total() > 6 {
                continue;
            }
            let product = natural_multiply(&AlgebraElement::sigma(mu.clone()), &AlgebraElement::sigma(nu.clone()));
            for q in 1..=7 {
                let explicit = convolve(&expand_sigma(mu, q), &expand_sigma(nu, q));
                let explicit: HashMap<_, _> =
                    explicit.into_iter().map(|(p, c)| (p, Rational::from_integer(c))).collect();
                assert_eq!(explicit, expand(&product, q), "Σ{mu}·Σ{nu} at q = {q}");
                checked += 1;
            }
        }
    }
    assert!(checked > 300);
}

#[test]
fn worked_products() {
    let s = AlgebraElement::sigma_rows;
    assert_eq!(natural_multiply(&s(&[1]), &s(&[1])), s(&[1, 1]).add(&s(&[1])));
    assert_eq!(
        natural_multiply(&s(&[2]), &s(&[1])),
        s(&[2, 1]).add(&s(&[2]).scale(&Rational::from_integer(2.into())))
    );
}
