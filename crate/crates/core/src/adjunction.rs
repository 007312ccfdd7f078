//! Both sides of the extension-of-scalars adjunctions on finite instances.
//!
//! On the left are Γ-maps `X -> HM`, which correspond to pointed additive
//! maps `g: X(1+) -> M`. On the right are group homomorphisms
//! `X ⊗ ℤ -> M`, written as tuples of generator images. `Φ` and `Ψ` pass
//! between them through the canonical basis of `X ⊗ ℤ`.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::abgrp::{hom_to_finite, FpAbelianGroup};
use crate::error::{Error, Result};
use crate::gamma_cat::{check_guard, saturating_pow};
use crate::gamma_set::{
    eilenberg_maclane, gamma_map_from_level1, validate_naturality, GammaMap, TruncatedGammaSet,
};
use crate::hyper::{binary_relations, preserves_sums};
use crate::monoid::{FiniteSemiring, PointedMonoid};
use crate::scalars::{
    extend_algebra, extend_map_between, extend_module, F1Algebra, FpRing, TensorResult,
};

/// All pointed additive maps `X(1+) -> M`, lexicographic in the images.
pub fn enumerate_pointed_additive_maps(
    x: &TruncatedGammaSet,
    m: &PointedMonoid,
    guard: u64,
) -> Result<Vec<Vec<usize>>> {
    if m.unit() != 0 {
        return Err(Error::InvalidMonoid(
            "target monoid must list its identity first".into(),
        ));
    }
    let k = x.level_size(1);
    check_guard(saturating_pow(m.len(), k - 1), guard)?;
    // triples checked once their largest element is assigned
    let mut due: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); k];
    for (a, b, c) in binary_relations(x) {
        due[a.max(b).max(c)].push((a, b, c));
    }
    let mut out = Vec::new();
    let mut g = vec![0; k];
    fn go(
        pos: usize,
        g: &mut Vec<usize>,
        m: &PointedMonoid,
        due: &[Vec<(usize, usize, usize)>],
        out: &mut Vec<Vec<usize>>,
    ) {
        if pos == g.len() {
            out.push(g.clone());
            return;
        }
        let range = if pos == 0 { 0..1 } else { 0..m.len() };
        for v in range {
            g[pos] = v;
            if due[pos].iter().all(|&(a, b, c)| g[c] == m.op(g[a], g[b])) {
                go(pos + 1, g, m, due, out);
            }
        }
    }
    go(0, &mut g, m, &due, &mut out);
    Ok(out)
}

/// Value of the homomorphism with generator images `h` on canonical
/// coordinates `c`.
fn evaluate(group: &FpAbelianGroup, h: &[usize], c: &[BigInt], m: &PointedMonoid) -> usize {
    let x = group.lift(c);
    m.sum(
        x.iter()
            .zip(h)
            .filter(|(k, _)| !k.is_zero())
            .map(|(k, &v)| m.multiple(k, v)),
    )
}

fn basis(dim: usize) -> Vec<Vec<BigInt>> {
    (0..dim)
        .map(|i| {
            let mut e = vec![BigInt::zero(); dim];
            e[i] = BigInt::from(1);
            e
        })
        .collect()
}

/// `Φ(f)`: the homomorphism `X ⊗ ℤ -> M` with `Φ(f)([a]) = f(a)`, built on
/// the canonical basis and returned as generator images.
pub fn phi(f: &GammaMap, tensor: &TensorResult, m: &PointedMonoid) -> Vec<usize> {
    let g = f.component(1);
    let group = &tensor.group;
    let on_basis: Vec<usize> = basis(group.dimension())
        .iter()
        .map(|e| evaluate(group, g, e, m))
        .collect();
    tensor
        .iota
        .iter()
        .map(|c| {
            m.sum(
                c.iter()
                    .zip(&on_basis)
                    .filter(|(k, _)| !k.is_zero())
                    .map(|(k, &v)| m.multiple(k, v)),
            )
        })
        .collect()
}

/// `Ψ(h)`: the Γ-map `X -> HM` extending `h ∘ ι`.
pub fn psi(
    h: &[usize],
    x: &Arc<TruncatedGammaSet>,
    hm: &Arc<TruncatedGammaSet>,
    tensor: &TensorResult,
    m: &PointedMonoid,
) -> Result<GammaMap> {
    let g: Vec<usize> = tensor
        .iota
        .iter()
        .map(|c| evaluate(&tensor.group, h, c, m))
        .collect();
    gamma_map_from_level1(&g, x, hm, m)
}

/// Outcome of checking one adjunction instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdjunctionReport {
    /// Size of the left hom-set (Γ-maps or algebra maps).
    pub left_count: usize,
    /// Size of the right hom-set (group or ring homomorphisms).
    pub right_count: usize,
    pub counts_equal: bool,
    /// Every left element, extended to level n, is natural.
    pub left_natural: bool,
    /// `Φ` lands in the right hom-set and `Ψ(Φ(f)) = f` for every left `f`.
    pub psi_phi_identity: bool,
    /// `Ψ` lands in the left hom-set and `Φ(Ψ(h)) = h` for every right `h`.
    pub phi_psi_identity: bool,
    /// Every left map sends n-ary sums to sums.
    pub preserves_sums: bool,
}

impl AdjunctionReport {
    pub fn passed(&self) -> bool {
        self.counts_equal
            && self.left_natural
            && self.psi_phi_identity
            && self.phi_psi_identity
            && self.preserves_sums
    }
}

fn check_bijection(
    x: &Arc<TruncatedGammaSet>,
    m: &PointedMonoid,
    tensor: &TensorResult,
    left: &[Vec<usize>],
    right: &[Vec<usize>],
) -> Result<AdjunctionReport> {
    let hm = Arc::new(eilenberg_maclane(m, x.max_level())?);
    let left_set: BTreeSet<&Vec<usize>> = left.iter().collect();
    let right_set: BTreeSet<&Vec<usize>> = right.iter().collect();

    let mut left_natural = true;
    let mut psi_phi_identity = true;
    let mut sums = true;
    for g in left {
        let f = gamma_map_from_level1(g, x, &hm, m)?;
        left_natural &= validate_naturality(&f).is_empty();
        sums &= preserves_sums(x, g, m);
        let h = phi(&f, tensor, m);
        psi_phi_identity &=
            right_set.contains(&h) && psi(&h, x, &hm, tensor, m).ok().as_ref() == Some(&f);
    }
    let mut phi_psi_identity = true;
    for h in right {
        phi_psi_identity &= match psi(h, x, &hm, tensor, m) {
            Ok(f) => left_set.contains(&f.component(1).to_vec()) && phi(&f, tensor, m) == *h,
            Err(_) => false,
        };
    }
    Ok(AdjunctionReport {
        left_count: left.len(),
        right_count: right.len(),
        counts_equal: left.len() == right.len(),
        left_natural,
        psi_phi_identity,
        phi_psi_identity,
        preserves_sums: sums,
    })
}

fn require_group(m: &PointedMonoid) -> Result<()> {
    if !m.is_group() || m.unit() != 0 {
        return Err(Error::InvalidMonoid(
            "the target must be a finite abelian group with identity first".into(),
        ));
    }
    Ok(())
}

/// Compares `Hom(X, HM)` with `Hom(X ⊗ ℤ, M)` for a finite abelian group `M`.
pub fn verify_module_adjunction(
    x: &Arc<TruncatedGammaSet>,
    m: &PointedMonoid,
    guard: u64,
) -> Result<AdjunctionReport> {
    require_group(m)?;
    let tensor = extend_module(x)?;
    let left = enumerate_pointed_additive_maps(x, m, guard)?;
    let right = hom_to_finite(&tensor.group, m, guard)?;
    check_bijection(x, m, &tensor, &left, &right)
}

/// Pointed additive maps `A(1+) -> R` that are also unital and multiplicative.
pub fn enumerate_algebra_maps(
    a: &F1Algebra,
    r: &FiniteSemiring,
    guard: u64,
) -> Result<Vec<Vec<usize>>> {
    let x = a.carrier();
    let maps = enumerate_pointed_additive_maps(x, r.additive(), guard)?;
    let k = x.level_size(1);
    Ok(maps
        .into_iter()
        .filter(|g| {
            g[a.unit()] == r.one()
                && (0..k).all(|p| (p..k).all(|q| g[a.mul(p, q)] == r.mul(g[p], g[q])))
        })
        .collect())
}

/// Unital ring homomorphisms `S -> R` as tuples of generator images.
pub fn enumerate_ring_homs(s: &FpRing, r: &FiniteSemiring, guard: u64) -> Result<Vec<Vec<usize>>> {
    if !r.is_ring() {
        return Err(Error::InvalidMonoid(
            "ring homomorphisms need a ring target".into(),
        ));
    }
    let add = r.additive();
    let group = s.additive();
    let e = basis(s.dimension());
    let homs = hom_to_finite(group, add, guard)?;
    Ok(homs
        .into_iter()
        .filter(|h| {
            let on_basis: Vec<usize> = e.iter().map(|c| evaluate(group, h, c, add)).collect();
            evaluate(group, h, s.unit(), add) == r.one()
                && (0..e.len()).all(|i| {
                    (i..e.len()).all(|j| {
                        evaluate(group, h, s.basis_product(i, j), add)
                            == r.mul(on_basis[i], on_basis[j])
                    })
                })
        })
        .collect())
}

/// Compares algebra maps `A -> HR` with ring homomorphisms `A ⊗ ℤ -> R`.
pub fn verify_algebra_adjunction(
    a: &F1Algebra,
    r: &FiniteSemiring,
    guard: u64,
) -> Result<AdjunctionReport> {
    require_group(r.additive())?;
    let tensor = extend_algebra(a)?;
    let ring = tensor.ring.as_ref().expect("algebra tensor carries a ring");
    let left = enumerate_algebra_maps(a, r, guard)?;
    let right = enumerate_ring_homs(ring, r, guard)?;
    check_bijection(a.carrier(), r.additive(), &tensor, &left, &right)
}

/// Checks naturality of the bijection in `X` along `φ: X -> Y`:
/// `Φ_X(f ∘ φ) = Φ_Y(f) ∘ (φ ⊗ ℤ)` for every `f: Y -> HM`, and
/// `Ψ_X(h ∘ (φ ⊗ ℤ)) = Ψ_Y(h) ∘ φ` for every `h: Y ⊗ ℤ -> M`.
pub fn naturality_check(phi_map: &GammaMap, m: &PointedMonoid, guard: u64) -> Result<bool> {
    require_group(m)?;
    let (x, y) = (phi_map.source(), phi_map.target());
    let tx = extend_module(x)?;
    let ty = extend_module(y)?;
    let ext = extend_map_between(phi_map, &tx, &ty)?;
    let hm = Arc::new(eilenberg_maclane(m, x.max_level())?);

    // h ∘ (φ ⊗ ℤ) as generator images of X ⊗ ℤ
    let pull_back = |h: &[usize]| -> Vec<usize> {
        ext.images
            .iter()
            .map(|c| evaluate(&ty.group, h, c, m))
            .collect()
    };

    for g in enumerate_pointed_additive_maps(y, m, guard)? {
        let f = gamma_map_from_level1(&g, y, &hm, m)?;
        let left = phi(&phi_map.then(&f)?, &tx, m);
        let right = pull_back(&phi(&f, &ty, m));
        if left != right {
            return Ok(false);
        }
    }
    for h in hom_to_finite(&ty.group, m, guard)? {
        let left = psi(&pull_back(&h), x, &hm, &tx, m)?;
        let right = phi_map.then(&psi(&h, y, &hm, &ty, m)?)?;
        if left != right {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma_cat::DEFAULT_GUARD;
    use crate::gamma_set::{
        collapse_quotient, enumerate_gamma_maps, f1, quotient_map, spherical, Subobject,
    };
    use crate::monoid::PointedSet;
    use crate::scalars::{em_algebra, quotient_algebra, spherical_algebra};

    fn em(n: usize, level: usize) -> Arc<TruncatedGammaSet> {
        Arc::new(eilenberg_maclane(&PointedMonoid::cyclic(n), level).unwrap())
    }

    fn q9(level: usize) -> Arc<TruncatedGammaSet> {
        let h = em(9, level);
        let sub = Subobject::coordinatewise(&h, &["3", "6"]).unwrap();
        Arc::new(collapse_quotient(&h, &sub).unwrap())
    }

    #[test]
    fn additive_map_counts() {
        let z2 = PointedMonoid::cyclic(2);
        assert_eq!(
            enumerate_pointed_additive_maps(&f1(2).unwrap(), &z2, DEFAULT_GUARD)
                .unwrap()
                .len(),
            2
        );
        assert_eq!(
            enumerate_pointed_additive_maps(&em(2, 2), &z2, DEFAULT_GUARD)
                .unwrap()
                .len(),
            2
        );
        let z3 = PointedMonoid::cyclic(3);
        assert_eq!(
            enumerate_pointed_additive_maps(&q9(2), &z3, DEFAULT_GUARD)
                .unwrap()
                .len(),
            3
        );
    }

    #[test]
    fn level1_count_matches_brute_force() {
        let z2 = PointedMonoid::cyclic(2);
        let hz2 = Arc::new(eilenberg_maclane(&z2, 2).unwrap());
        for x in [Arc::new(f1(2).unwrap()), em(2, 2), em(3, 2)] {
            let fast = enumerate_pointed_additive_maps(&x, &z2, DEFAULT_GUARD).unwrap();
            let slow = enumerate_gamma_maps(&x, &hz2, DEFAULT_GUARD).unwrap();
            let slow: Vec<Vec<usize>> = slow.iter().map(|f| f.component(1).to_vec()).collect();
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn phi_examples() {
        let z2 = PointedMonoid::cyclic(2);
        let x = Arc::new(f1(2).unwrap());
        let hm = Arc::new(eilenberg_maclane(&z2, 2).unwrap());
        let t = extend_module(&x).unwrap();
        let zero = gamma_map_from_level1(&[0, 0], &x, &hm, &z2).unwrap();
        assert_eq!(phi(&zero, &t, &z2), vec![0, 0]);
        let f = gamma_map_from_level1(&[0, 1], &x, &hm, &z2).unwrap();
        assert_eq!(phi(&f, &t, &z2), vec![0, 1]);
        assert_eq!(psi(&[0, 1], &x, &hm, &t, &z2).unwrap(), f);
    }

    #[test]
    fn module_adjunction_examples() {
        let z2 = PointedMonoid::cyclic(2);
        let r = verify_module_adjunction(&Arc::new(f1(2).unwrap()), &z2, DEFAULT_GUARD).unwrap();
        assert!(r.passed());
        assert_eq!(r.left_count, 2);
        let r =
            verify_module_adjunction(&em(6, 2), &PointedMonoid::cyclic(4), DEFAULT_GUARD).unwrap();
        assert!(r.passed());
        assert_eq!((r.left_count, r.right_count), (2, 2));
        let s = Arc::new(spherical(&PointedSet::with_basepoint(&["a", "b"]), 2).unwrap());
        let r = verify_module_adjunction(&s, &z2, DEFAULT_GUARD).unwrap();
        assert!(r.passed());
        assert_eq!(r.left_count, 4);
        let r = verify_module_adjunction(&q9(3), &PointedMonoid::cyclic(3), DEFAULT_GUARD).unwrap();
        assert!(r.passed());
        assert_eq!(r.left_count, 3);
    }

    #[test]
    fn algebra_map_counts() {
        let z5 = FiniteSemiring::zmod(5);
        let f1a = spherical_algebra(&PointedMonoid::pointed_unit(), 2).unwrap();
        assert_eq!(
            enumerate_algebra_maps(&f1a, &z5, DEFAULT_GUARD)
                .unwrap()
                .len(),
            1
        );
        let mu = spherical_algebra(&PointedMonoid::mu2(), 2).unwrap();
        assert_eq!(
            enumerate_algebra_maps(&mu, &z5, DEFAULT_GUARD)
                .unwrap()
                .len(),
            2
        );
        let z6 = FiniteSemiring::zmod(6);
        let h6 = em_algebra(&z6, 2).unwrap();
        assert_eq!(
            enumerate_algebra_maps(&h6, &z6, DEFAULT_GUARD)
                .unwrap()
                .len(),
            1
        );
    }

    #[test]
    fn ring_hom_counts() {
        let z5 = FiniteSemiring::zmod(5);
        assert_eq!(
            enumerate_ring_homs(&FpRing::cyclic(0), &z5, DEFAULT_GUARD)
                .unwrap()
                .len(),
            1
        );
        let group_ring = crate::scalars::monoid_ring(&PointedMonoid::mu2());
        assert_eq!(
            enumerate_ring_homs(&group_ring, &z5, DEFAULT_GUARD)
                .unwrap()
                .len(),
            2
        );
        assert!(
            enumerate_ring_homs(&FpRing::cyclic(6), &FiniteSemiring::zmod(4), DEFAULT_GUARD)
                .unwrap()
                .is_empty()
        );
        assert!(enumerate_ring_homs(
            &FpRing::cyclic(0),
            &FiniteSemiring::boolean(),
            DEFAULT_GUARD
        )
        .is_err());
    }

    #[test]
    fn algebra_adjunction_examples() {
        let z5 = FiniteSemiring::zmod(5);
        for (a, r, n) in [
            (
                spherical_algebra(&PointedMonoid::pointed_unit(), 2).unwrap(),
                z5.clone(),
                1,
            ),
            (
                spherical_algebra(&PointedMonoid::mu2(), 2).unwrap(),
                z5.clone(),
                2,
            ),
            (
                em_algebra(&FiniteSemiring::zmod(6), 2).unwrap(),
                FiniteSemiring::zmod(6),
                1,
            ),
            (
                em_algebra(&FiniteSemiring::boolean(), 2).unwrap(),
                z5.clone(),
                0,
            ),
            (
                quotient_algebra(
                    &em_algebra(&FiniteSemiring::zmod(9), 2).unwrap(),
                    &["3", "6"],
                )
                .unwrap(),
                FiniteSemiring::zmod(3),
                1,
            ),
        ] {
            let rep = verify_algebra_adjunction(&a, &r, DEFAULT_GUARD).unwrap();
            assert!(rep.passed(), "{rep:?}");
            assert_eq!(rep.left_count, n);
        }
    }

    #[test]
    fn naturality() {
        let z3 = PointedMonoid::cyclic(3);
        let h = em(9, 2);
        assert!(naturality_check(&GammaMap::identity(h.clone()), &z3, DEFAULT_GUARD).unwrap());
        let sub = Subobject::coordinatewise(&h, &["3", "6"]).unwrap();
        let p = quotient_map(h.clone(), &sub).unwrap();
        assert!(naturality_check(&p, &z3, DEFAULT_GUARD).unwrap());
        assert!(naturality_check(&GammaMap::to_terminal(h), &z3, DEFAULT_GUARD).unwrap());
    }

    #[test]
    fn non_group_targets_rejected() {
        assert!(
            verify_module_adjunction(&em(2, 2), &PointedMonoid::boolean(), DEFAULT_GUARD).is_err()
        );
    }
}
