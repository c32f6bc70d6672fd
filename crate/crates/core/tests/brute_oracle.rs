//! Family moment oracles and closed forms against explicit G≀S_q computations.

use std::sync::Arc;
use wreathkit::brute::{
    brute_moment, decompose, family_class_function, verify_family_moments, WreathGroup, DEFAULT_BOUND,
};
use wreathkit::group::{cyclic, symmetric3, Group};
use wreathkit::partition::RowMultiset;
use wreathkit::scalar::{rat, Rational};
use wreathkit::wreath::{BlockShape, Family, IrrepIndex, IrreducibleRule, SigmaTensor};

fn z2() -> Arc<Group> {
    Arc::new(cyclic(2).unwrap())
}

fn s3() -> Arc<Group> {
    Arc::new(symmetric3().unwrap())
}

fn assert_moments(family: &Family, q: usize, max_total: usize) {
    let w = WreathGroup::build(family.group().clone(), q, DEFAULT_BOUND).unwrap();
    let r = verify_family_moments(&w, family, max_total).unwrap();
    assert!(r.passed(), "{family} q = {q}: {:?}", r.failures);
}

#[test]
fn example1_closed_form_measure_equals_decomposition() {
    for g in [z2(), s3()] {
        for q in 1..=3 {
            let reg = Family::left_regular(g.clone());
            let other = Family::example1(g.clone(), vec![1; g.num_irreps()]).unwrap();
            for fam in [reg, other] {
                let w = WreathGroup::build(g.clone(), q, DEFAULT_BOUND).unwrap();
                let brute = decompose(&w, &family_class_function(&w, &fam).unwrap()).unwrap();
                let closed = fam.canonical_measure(q).unwrap();
                assert_eq!(brute.support.len(), closed.support.len());
                for (l, p) in &closed.support {
                    assert_eq!(brute.probability(l), *p, "{fam} q = {q} at {l}");
                }
            }
        }
    }
}

#[test]
fn example1_moments_match_traces() {
    for q in 1..=4 {
        assert_moments(&Family::left_regular(z2()), q, 4);
    }
    for q in 1..=3 {
        assert_moments(&Family::left_regular(s3()), q, 4);
        assert_moments(&Family::example1(s3(), vec![0, 1, 1]).unwrap(), q, 3);
    }
}

#[test]
fn irreducible_moments_match_traces_with_defect() {
    let rule = IrreducibleRule::Balanced { weights: vec!["1/2".into(), "1/2".into()], shape: BlockShape::Square };
    for q in 1..=4 {
        assert_moments(&Family::irreducible(z2(), rule.clone()), q, 4);
    }
    let rule3 = IrreducibleRule::Balanced {
        weights: vec!["0".into(), "0".into(), "1".into()],
        shape: BlockShape::Row,
    };
    for q in 1..=3 {
        assert_moments(&Family::irreducible(s3(), rule3.clone()), q, 3);
    }
}

#[test]
fn restriction_rule_matches_traces() {
    let reg = Arc::new(Family::left_regular(z2()));
    let fam = Family::restrict(reg, rat(3, 2)).unwrap();
    for q in 1..=3 {
        assert_moments(&fam, q, 4);
    }
    // Regular rep of ℤ/2≀S_3 restricted to ℤ/2≀S_2.
    let w = WreathGroup::build(z2(), 2, DEFAULT_BOUND).unwrap();
    let f = family_class_function(&w, &fam).unwrap();
    let t = SigmaTensor::single(2, 0, RowMultiset::single(1));
    assert_eq!(fam.inner_size(2).unwrap(), 3);
    assert_eq!(brute_moment(&w, &f, &t).unwrap(), rat(1, 1));
    assert_eq!(fam.moment(2, &t).unwrap(), rat(1, 1));
    // r_q = 2q: q·c, not r_q·c.
    let doubled = Family::restrict(Arc::new(Family::left_regular(z2())), rat(2, 1)).unwrap();
    assert_eq!(doubled.moment(2, &t).unwrap(), rat(1, 1));
    let pm = Arc::new(Family::point_mass(z2(), IrrepIndex::parse("2,1;1").unwrap()));
    let res = Family::restrict(pm, rat(4, 3)).unwrap();
    assert_moments(&res, 3, 4);
}

#[test]
fn induction_rule_matches_traces() {
    let rule = IrreducibleRule::Balanced { weights: vec!["1/3".into(), "2/3".into()], shape: BlockShape::Square };
    let parent = Arc::new(Family::irreducible(z2(), rule));
    let fam = Family::induce(parent, rat(1, 2)).unwrap();
    for q in 1..=4 {
        assert_moments(&fam, q, 4);
    }
    let s3_parent = Arc::new(Family::left_regular(s3()));
    let fam = Family::induce(s3_parent, rat(1, 2)).unwrap();
    for q in 1..=3 {
        assert_moments(&fam, q, 3);
    }
}

#[test]
fn outer_rule_matches_traces() {
    let left = Arc::new(Family::point_mass(z2(), IrrepIndex::parse("1;-").unwrap()));
    let right = Arc::new(Family::point_mass(z2(), IrrepIndex::parse("-;1").unwrap()));
    let fam = Family::outer(left, right, rat(1, 2)).unwrap();
    assert_moments(&fam, 2, 4);
    let w = WreathGroup::build(z2(), 2, DEFAULT_BOUND).unwrap();
    let m = decompose(&w, &family_class_function(&w, &fam).unwrap()).unwrap();
    assert_eq!(m.probability(&IrrepIndex::parse("1;1").unwrap()), Rational::from_integer(1.into()));

    let rule = IrreducibleRule::Balanced { weights: vec!["1/2".into(), "1/2".into()], shape: BlockShape::Square };
    let fam = Family::outer(
        Arc::new(Family::left_regular(z2())),
        Arc::new(Family::irreducible(z2(), rule)),
        rat(1, 3),
    )
    .unwrap();
    for q in 1..=4 {
        assert_moments(&fam, q, 4);
    }
}

#[test]
fn tensor_family_at_brute_force_scale() {
    let reg = Arc::new(Family::left_regular(z2()));
    let fam = Family::tensor(reg.clone(), reg.clone());
    for q in 1..=3 {
        assert_moments(&fam, q, 4);
    }
    let trivial = Arc::new(Family::irreducible(
        z2(),
        IrreducibleRule::Balanced { weights: vec!["1".into(), "0".into()], shape: BlockShape::Row },
    ));
    let rule = IrreducibleRule::Balanced { weights: vec!["1/2".into(), "1/2".into()], shape: BlockShape::Square };
    let irr = Arc::new(Family::irreducible(z2(), rule));
    let with_trivial = Family::tensor(irr.clone(), trivial);
    for t in wreathkit::wreath::enumerate_tensors(2, 3) {
        assert_eq!(with_trivial.moment(3, &t).unwrap(), irr.moment(3, &t).unwrap());
    }
    let big = Family::tensor(reg.clone(), reg).with_bound(100);
    let err = big.moment(4, &SigmaTensor::single(2, 0, RowMultiset::single(1))).unwrap_err();
    assert!(err.to_string().contains("asymptotic"), "{err}");
}
