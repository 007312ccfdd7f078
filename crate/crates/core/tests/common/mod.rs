//! Shared Γ-sets, maps and algebras for the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use gammaforge::gamma_cat::DEFAULT_GUARD;
use gammaforge::gamma_set::{
    collapse_quotient, eilenberg_maclane, f1, quotient_map, spherical, terminal, GammaMap,
    Subobject, TruncatedGammaSet,
};
use gammaforge::hyper::{f_one_hyperfield, krasner, plasma_embedding, sign_hyperfield};
use gammaforge::monoid::{FiniteSemiring, PointedMonoid, PointedSet};
use gammaforge::scalars::{em_algebra, quotient_algebra, spherical_algebra, F1Algebra};

pub type Obj = Arc<TruncatedGammaSet>;

pub fn em(m: &PointedMonoid, level: usize) -> Obj {
    Arc::new(eilenberg_maclane(m, level).unwrap())
}

pub fn em_cyclic(n: usize, level: usize) -> Obj {
    em(&PointedMonoid::cyclic(n), level)
}

pub fn klein() -> PointedMonoid {
    PointedMonoid::product(&PointedMonoid::cyclic(2), &PointedMonoid::cyclic(2))
}

pub fn sphere(labels: &[&str], level: usize) -> Obj {
    Arc::new(spherical(&PointedSet::with_basepoint(labels), level).unwrap())
}

/// `H(Z/n) / H(S)` for the subgroup `S` listed by its nonzero labels.
pub fn em_quotient(n: usize, sub: &[&str], level: usize) -> Obj {
    let h = em_cyclic(n, level);
    let s = Subobject::coordinatewise(&h, sub).unwrap();
    Arc::new(collapse_quotient(&h, &s).unwrap())
}

pub fn q9(level: usize) -> Obj {
    em_quotient(9, &["3", "6"], level)
}

/// The projection `H(Z/n) -> H(Z/n) / H(S)`.
pub fn em_quotient_map(n: usize, sub: &[&str], level: usize) -> GammaMap {
    let h = em_cyclic(n, level);
    let s = Subobject::coordinatewise(&h, sub).unwrap();
    quotient_map(h, &s).unwrap()
}

/// The Γ-set corpus at height `level` (at least 2), with display names.
pub fn corpus(level: usize) -> Vec<(String, Obj)> {
    let plasma = |t| Arc::new(plasma_embedding(&t, level, DEFAULT_GUARD).unwrap());
    vec![
        ("H(Z/2)".into(), em_cyclic(2, level)),
        ("H(Z/4)".into(), em_cyclic(4, level)),
        ("H(Z/6)".into(), em_cyclic(6, level)),
        ("H(Z/2+Z/2)".into(), em(&klein(), level)),
        ("H(bool)".into(), em(&PointedMonoid::boolean(), level)),
        ("H(sat2)".into(), em(&PointedMonoid::saturating(2), level)),
        ("F1".into(), Arc::new(f1(level).unwrap())),
        ("S{*,a,b}".into(), sphere(&["a", "b"], level)),
        ("S{*,a,b,c}".into(), sphere(&["a", "b", "c"], level)),
        ("H(Z/9)/H({0,3,6})".into(), q9(level)),
        ("H(Z/8)/H({0,4})".into(), em_quotient(8, &["4"], level)),
        ("plasma(krasner)".into(), plasma(krasner())),
        ("plasma(sign)".into(), plasma(sign_hyperfield())),
        ("plasma(f-one)".into(), plasma(f_one_hyperfield())),
        ("terminal".into(), Arc::new(terminal(level).unwrap())),
    ]
}

pub fn f1_algebra(level: usize) -> F1Algebra {
    spherical_algebra(&PointedMonoid::pointed_unit(), level).unwrap()
}

/// `H(Z/9)` modulo the ideal `{0, 3, 6}`.
pub fn q9_algebra(level: usize) -> F1Algebra {
    let a = em_algebra(&FiniteSemiring::zmod(9), level).unwrap();
    quotient_algebra(&a, &["3", "6"]).unwrap()
}
