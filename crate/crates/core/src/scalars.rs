//! Extension of scalars to the integers, for Γ-sets and for algebras.
//!
//! `X ⊗ ℤ` is presented by the level-1 elements of `X` as generators, the
//! basepoint relation `[*] = 0` and a relation `[a] + [b] - [c]` for every
//! `c ∈ a ⊕ b`. For algebras the relations are additionally closed under
//! multiplication by generators and products are read off the level-1 monoid.

use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::abgrp::{check_guard_order, FpAbelianGroup, IntMatrix};
use crate::error::{Error, Result};
use crate::gamma_set::{
    collapse_quotient, eilenberg_maclane, spherical, GammaMap, Subobject, TruncatedGammaSet,
};
use crate::hyper::binary_relations;
use crate::monoid::{FiniteSemiring, PointedMonoid, PointedSet};

/// Where a relation row came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    /// `[*] = 0`
    Basepoint,
    /// `[a] + [b] - [c] = 0` for `c ∈ a ⊕ b`
    Sum { a: usize, b: usize, c: usize },
    /// relation `row` multiplied by generator `by`
    Ideal { row: usize, by: usize },
    /// `[0_M] = 0` in a monoid ring
    Zero,
}

/// A presentation together with the canonical map from level 1.
#[derive(Debug, Clone)]
pub struct TensorResult {
    pub group: FpAbelianGroup,
    /// `ι(a)` in canonical coordinates for every level-1 element `a`.
    pub iota: Vec<Vec<BigInt>>,
    /// One entry per relation row.
    pub provenance: Vec<Provenance>,
    /// Present for algebras.
    pub ring: Option<FpRing>,
    /// Whether closing the relations under multiplication changed the group.
    pub ideal_closure_grew: bool,
}

struct RelationSet {
    width: usize,
    rows: Vec<Vec<BigInt>>,
    seen: HashSet<Vec<BigInt>>,
    provenance: Vec<Provenance>,
}

impl RelationSet {
    fn new(width: usize) -> Self {
        Self {
            width,
            rows: Vec::new(),
            seen: HashSet::new(),
            provenance: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<BigInt>, p: Provenance) -> bool {
        if row.iter().all(Zero::is_zero) || !self.seen.insert(row.clone()) {
            return false;
        }
        self.rows.push(row);
        self.provenance.push(p);
        true
    }

    fn group(&self, labels: Vec<String>) -> FpAbelianGroup {
        FpAbelianGroup::new(
            labels,
            IntMatrix::from_rows(self.rows.clone(), self.width).expect("rows have the right width"),
        )
        .expect("consistent dimensions")
    }
}

fn module_relations(x: &TruncatedGammaSet) -> Result<RelationSet> {
    if x.max_level() < 2 {
        return Err(Error::LevelTooLow(x.max_level()));
    }
    let k = x.level_size(1);
    let mut rels = RelationSet::new(k);
    let mut base = vec![BigInt::zero(); k];
    base[0] = BigInt::one();
    rels.push(base, Provenance::Basepoint);
    for (a, b, c) in binary_relations(x) {
        let mut row = vec![BigInt::zero(); k];
        row[a] += 1;
        row[b] += 1;
        row[c] -= 1;
        rels.push(row, Provenance::Sum { a, b, c });
    }
    Ok(rels)
}

/// `X ⊗ ℤ` as a finitely presented abelian group.
pub fn extend_module(x: &TruncatedGammaSet) -> Result<TensorResult> {
    let rels = module_relations(x)?;
    let group = rels.group(x.labels(1).to_vec());
    let iota = (0..x.level_size(1))
        .map(|a| group.generator_class(a))
        .collect();
    Ok(TensorResult {
        group,
        iota,
        provenance: rels.provenance,
        ring: None,
        ideal_closure_grew: false,
    })
}

/// A homomorphism of finitely presented groups, stored as the images of the
/// source generators in the target's canonical coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupHom {
    pub source: FpAbelianGroup,
    pub target: FpAbelianGroup,
    pub images: Vec<Vec<BigInt>>,
}

impl GroupHom {
    /// Checks that every source relation maps to zero.
    pub fn new(
        source: FpAbelianGroup,
        target: FpAbelianGroup,
        images: Vec<Vec<BigInt>>,
    ) -> Result<Self> {
        if images.len() != source.generators()
            || images.iter().any(|v| v.len() != target.dimension())
        {
            return Err(Error::Dimension(
                "generator images have the wrong shape".into(),
            ));
        }
        let hom = Self {
            source,
            target,
            images,
        };
        for i in 0..hom.source.relations().rows() {
            let img = hom.apply_presentation(hom.source.relations().row(i));
            if img.iter().any(|v| !v.is_zero()) {
                return Err(Error::Consistency(format!(
                    "relation {} does not map to zero",
                    i + 1
                )));
            }
        }
        Ok(hom)
    }

    /// Image of `Σ x_a [a]` given in source presentation coordinates.
    pub fn apply_presentation(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.target.dimension()];
        for (c, img) in x.iter().zip(&self.images) {
            if c.is_zero() {
                continue;
            }
            for (o, v) in out.iter_mut().zip(img) {
                *o += c * v;
            }
        }
        self.target.normalize(&out)
    }

    /// Image of an element in canonical coordinates.
    pub fn apply(&self, c: &[BigInt]) -> Vec<BigInt> {
        self.apply_presentation(&self.source.lift(c))
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &GroupHom) -> Result<GroupHom> {
        if self.target.canonical_invariants() != next.source.canonical_invariants()
            || self.target.generators() != next.source.generators()
        {
            return Err(Error::MapMismatch(
                "homomorphisms are not composable".into(),
            ));
        }
        let images = self.images.iter().map(|v| next.apply(v)).collect();
        GroupHom::new(self.source.clone(), next.target.clone(), images)
    }

    /// Images of the canonical basis of the source.
    pub fn canonical_matrix(&self) -> Vec<Vec<BigInt>> {
        let dim = self.source.dimension();
        (0..dim)
            .map(|i| {
                let mut e = vec![BigInt::zero(); dim];
                e[i] = BigInt::one();
                self.apply(&e)
            })
            .collect()
    }

    /// Whether the images generate the target.
    pub fn is_surjective(&self) -> bool {
        let dim = self.target.dimension();
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for (k, d) in self.target.moduli().into_iter().enumerate() {
            if !d.is_zero() {
                let mut r = vec![BigInt::zero(); dim];
                r[k] = d;
                rows.push(r);
            }
        }
        rows.extend(self.images.iter().cloned());
        let labels = (0..dim).map(|i| format!("c{i}")).collect();
        FpAbelianGroup::new(labels, IntMatrix::from_rows(rows, dim).expect("consistent"))
            .expect("consistent")
            .is_trivial()
    }

    /// Surjective between groups with equal invariants, hence bijective.
    pub fn is_isomorphism(&self) -> bool {
        self.source.canonical_invariants() == self.target.canonical_invariants()
            && self.is_surjective()
    }
}

/// The induced homomorphism `X ⊗ ℤ -> Y ⊗ ℤ`, `[a] ↦ [φ(a)]`.
pub fn extend_map(phi: &GammaMap) -> Result<GroupHom> {
    let src = extend_module(phi.source())?;
    let tgt = extend_module(phi.target())?;
    extend_map_between(phi, &src, &tgt)
}

/// As [`extend_map`], reusing already computed presentations.
pub fn extend_map_between(
    phi: &GammaMap,
    src: &TensorResult,
    tgt: &TensorResult,
) -> Result<GroupHom> {
    let images = phi
        .component(1)
        .iter()
        .map(|&b| tgt.iota[b].clone())
        .collect();
    GroupHom::new(src.group.clone(), tgt.group.clone(), images)
}

/// A commutative algebra over `F_1`, kept as its carrier together with the
/// pointed commutative monoid structure on level 1.
#[derive(Debug, Clone)]
pub struct F1Algebra {
    carrier: Arc<TruncatedGammaSet>,
    monoid: PointedMonoid,
}

impl F1Algebra {
    pub fn new(carrier: Arc<TruncatedGammaSet>, monoid: PointedMonoid) -> Result<Self> {
        if monoid.zero() != Some(0) {
            return Err(Error::InvalidMonoid(
                "the multiplication needs the basepoint as absorbing zero".into(),
            ));
        }
        if monoid.elements() != carrier.labels(1) {
            return Err(Error::InvalidMonoid(
                "monoid elements must match the level-1 labels".into(),
            ));
        }
        Ok(Self { carrier, monoid })
    }

    pub fn carrier(&self) -> &Arc<TruncatedGammaSet> {
        &self.carrier
    }

    pub fn monoid(&self) -> &PointedMonoid {
        &self.monoid
    }

    pub fn unit(&self) -> usize {
        self.monoid.unit()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.monoid.op(a, b)
    }
}

/// The spherical algebra `SM` of a pointed commutative monoid.
pub fn spherical_algebra(m: &PointedMonoid, max_level: usize) -> Result<F1Algebra> {
    let set = PointedSet::new(m.elements().to_vec())?;
    F1Algebra::new(Arc::new(spherical(&set, max_level)?), m.clone())
}

/// `HR` for a finite commutative semiring `R`.
pub fn em_algebra(r: &FiniteSemiring, max_level: usize) -> Result<F1Algebra> {
    F1Algebra::new(
        Arc::new(eilenberg_maclane(r.additive(), max_level)?),
        r.multiplicative().clone(),
    )
}

/// Collapses the coordinatewise subobject generated by a multiplicative
/// ideal of level 1; the quotient multiplication is inherited.
pub fn quotient_algebra(a: &F1Algebra, ideal: &[&str]) -> Result<F1Algebra> {
    let x = a.carrier();
    let mut inside = vec![false; x.level_size(1)];
    inside[0] = true;
    for l in ideal {
        inside[x.index_of(1, l)?] = true;
    }
    for i in (0..inside.len()).filter(|&i| inside[i]) {
        for r in 0..inside.len() {
            if !inside[a.mul(i, r)] {
                return Err(Error::InvalidMonoid(format!(
                    "{} · {} leaves the ideal",
                    x.label(1, i),
                    x.label(1, r)
                )));
            }
        }
    }
    let sub = Subobject::coordinatewise(x, ideal)?;
    let q = collapse_quotient(x, &sub)?;
    let class = |i: usize| {
        if inside[i] {
            0
        } else {
            q.index_of(1, x.label(1, i)).expect("surviving label")
        }
    };
    let reps: Vec<usize> = q
        .labels(1)
        .iter()
        .map(|l| x.index_of(1, l).expect("inherited label"))
        .collect();
    let n = reps.len();
    let table = (0..n)
        .map(|i| (0..n).map(|j| class(a.mul(reps[i], reps[j]))).collect())
        .collect();
    let unit = class(a.unit());
    let monoid = PointedMonoid::new(q.labels(1).to_vec(), table, unit, Some(0))?;
    F1Algebra::new(Arc::new(q), monoid)
}

/// A commutative ring whose additive group is finitely presented, with
/// multiplication stored on the canonical basis.
#[derive(Debug, Clone)]
pub struct FpRing {
    additive: FpAbelianGroup,
    // table[i][j] = e_i · e_j in canonical coordinates
    table: Vec<Vec<Vec<BigInt>>>,
    unit: Vec<BigInt>,
}

impl FpRing {
    /// Builds the ring on `group` where generator products are `[a]·[b] = [mul(a, b)]`.
    /// The relations must already form an ideal.
    pub fn from_generator_products(
        group: FpAbelianGroup,
        mul: impl Fn(usize, usize) -> usize,
        unit_generator: usize,
    ) -> Self {
        let dim = group.dimension();
        let basis: Vec<Vec<BigInt>> = (0..dim)
            .map(|i| {
                let mut e = vec![BigInt::zero(); dim];
                e[i] = BigInt::one();
                group.lift(&e)
            })
            .collect();
        let gens = group.generators();
        let product = |x: &[BigInt], y: &[BigInt]| {
            let mut out = vec![BigInt::zero(); gens];
            for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                    out[mul(a, b)] += xa * yb;
                }
            }
            group.reduce(&out)
        };
        let table = (0..dim)
            .map(|i| (0..dim).map(|j| product(&basis[i], &basis[j])).collect())
            .collect();
        let unit = group.generator_class(unit_generator);
        Self {
            additive: group,
            table,
            unit,
        }
    }

    /// `ℤ/n`, or `ℤ` for `n = 0`.
    pub fn cyclic(n: u64) -> Self {
        let group = FpAbelianGroup::cyclic(n);
        Self::from_generator_products(group, |_, _| 0, 0)
    }

    pub fn additive(&self) -> &FpAbelianGroup {
        &self.additive
    }

    pub fn dimension(&self) -> usize {
        self.additive.dimension()
    }

    pub fn unit(&self) -> &[BigInt] {
        &self.unit
    }

    pub fn zero(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.dimension()]
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[BigInt] {
        &self.table[i][j]
    }

    pub fn add(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        self.additive.add(x, y)
    }

    pub fn mul(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.dimension()];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let c = xi * yj;
                for (o, t) in out.iter_mut().zip(&self.table[i][j]) {
                    *o += &c * t;
                }
            }
        }
        self.additive.normalize(&out)
    }

    /// Commutativity, associativity and the unit law on the canonical basis.
    pub fn check_axioms(&self) -> bool {
        let dim = self.dimension();
        let e = |i: usize| {
            let mut v = vec![BigInt::zero(); dim];
            v[i] = BigInt::one();
            v
        };
        (0..dim).all(|i| {
            let ei = self.additive.normalize(&e(i));
            self.mul(&self.unit, &ei) == ei
                && (0..dim).all(|j| {
                    self.table[i][j] == self.table[j][i]
                        && (0..dim).all(|k| {
                            self.mul(&self.table[i][j], &e(k)) == self.mul(&e(i), &self.table[j][k])
                        })
                })
        })
    }

    /// `ℤ/n` summary for cyclic rings, otherwise the additive group.
    pub fn describe(&self) -> String {
        self.additive.describe()
    }
}

/// The free abelian group on `M ∖ {0}` with multiplication from `M`.
pub fn monoid_ring(m: &PointedMonoid) -> FpRing {
    let k = m.len();
    let rows = match m.zero() {
        Some(z) => {
            let mut r = vec![BigInt::zero(); k];
            r[z] = BigInt::one();
            vec![r]
        }
        None => vec![],
    };
    let group = FpAbelianGroup::new(
        m.elements().to_vec(),
        IntMatrix::from_rows(rows, k).expect("consistent"),
    )
    .expect("consistent");
    FpRing::from_generator_products(group, |a, b| m.op(a, b), m.unit())
}

/// `A ⊗ ℤ`: the module presentation, closed under multiplication by
/// generators, with the induced ring structure.
pub fn extend_algebra(a: &F1Algebra) -> Result<TensorResult> {
    let x = a.carrier();
    let mut rels = module_relations(x)?;
    let labels = x.labels(1).to_vec();
    let k = labels.len();
    let mut group = rels.group(labels.clone());
    let mut grew = false;
    let mut start = 0;
    loop {
        let end = rels.rows.len();
        let mut added = false;
        for r in start..end {
            for by in 1..k {
                let mut row = vec![BigInt::zero(); k];
                for (g, c) in rels.rows[r]
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                {
                    row[a.mul(g, by)] += c;
                }
                if !group.is_zero(&row) {
                    added = true;
                }
                rels.push(row, Provenance::Ideal { row: r, by });
            }
        }
        if !added {
            break;
        }
        grew = true;
        start = end;
        group = rels.group(labels.clone());
    }
    let group = rels.group(labels);
    let iota: Vec<Vec<BigInt>> = (0..k).map(|g| group.generator_class(g)).collect();
    let ring = FpRing::from_generator_products(group.clone(), |p, q| a.mul(p, q), a.unit());
    for p in 0..k {
        for q in 0..k {
            if ring.mul(&iota[p], &iota[q]) != iota[a.mul(p, q)] {
                return Err(Error::Consistency(format!(
                    "[{}]·[{}] disagrees with [{}]",
                    x.label(1, p),
                    x.label(1, q),
                    x.label(1, a.mul(p, q))
                )));
            }
        }
    }
    Ok(TensorResult {
        group,
        iota,
        provenance: rels.provenance,
        ring: Some(ring),
        ideal_closure_grew: grew,
    })
}

/// The ring map determined by sending generator `a` of `source` to
/// `images[a]` in `target`.
#[derive(Debug, Clone)]
pub struct RingHom {
    pub additive: GroupHom,
    pub multiplicative: bool,
    pub unital: bool,
}

impl RingHom {
    pub fn new(source: &FpRing, target: &FpRing, images: Vec<Vec<BigInt>>) -> Result<Self> {
        let additive = GroupHom::new(source.additive.clone(), target.additive.clone(), images)?;
        let dim = source.dimension();
        let img: Vec<Vec<BigInt>> = (0..dim)
            .map(|i| {
                let mut e = vec![BigInt::zero(); dim];
                e[i] = BigInt::one();
                additive.apply(&e)
            })
            .collect();
        let multiplicative = (0..dim).all(|i| {
            (0..dim).all(|j| additive.apply(&source.table[i][j]) == target.mul(&img[i], &img[j]))
        });
        let unital = additive.apply(&source.unit) == target.unit;
        Ok(Self {
            additive,
            multiplicative,
            unital,
        })
    }

    pub fn is_ring_isomorphism(&self) -> bool {
        self.multiplicative && self.unital && self.additive.is_isomorphism()
    }
}

/// Checks that sending each generator of `source` to the generator of
/// `target` with the same label is a ring isomorphism.
pub fn isomorphic_by_labels(source: &FpRing, target: &FpRing) -> Result<bool> {
    let images = source
        .additive
        .labels()
        .iter()
        .map(|l| {
            let b = target
                .additive
                .labels()
                .iter()
                .position(|t| t == l)
                .ok_or_else(|| Error::UnknownLabel {
                    label: l.clone(),
                    level: 1,
                })?;
            Ok(target.additive.generator_class(b))
        })
        .collect::<Result<Vec<_>>>()?;
    match RingHom::new(source, target, images) {
        Ok(h) => Ok(h.is_ring_isomorphism()),
        Err(Error::Consistency(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Exhaustive search for a unital ring isomorphism between finite rings,
/// returned as the images of the canonical basis of `r1`.
pub fn find_ring_isomorphism(
    r1: &FpRing,
    r2: &FpRing,
    guard: u64,
) -> Result<Option<Vec<Vec<BigInt>>>> {
    let (g1, g2) = (&r1.additive, &r2.additive);
    if g1.canonical_invariants() != g2.canonical_invariants() {
        return Ok(None);
    }
    if !g1.is_finite() {
        return Err(Error::GuardExceeded {
            requested: u128::MAX,
            guard,
        });
    }
    let order = g2.order().expect("finite");
    check_guard_order(&order, guard)?;
    let elems = g2.elements(guard)?;
    let dim = g1.dimension();
    let moduli = g1.moduli();
    // candidate images of each basis element: elements killed by its order
    let candidates: Vec<Vec<&Vec<BigInt>>> = moduli
        .iter()
        .map(|d| {
            elems
                .iter()
                .filter(|y| {
                    let scaled: Vec<BigInt> = y.iter().map(|v| v * d).collect();
                    g2.normalize(&scaled).iter().all(Zero::is_zero)
                })
                .collect()
        })
        .collect();
    let total: u128 = candidates
        .iter()
        .map(|c| c.len() as u128)
        .fold(1u128, |a, b| a.saturating_mul(b));
    crate::gamma_cat::check_guard(total, guard)?;
    let apply = |images: &[&Vec<BigInt>], x: &[BigInt]| {
        let mut out = vec![BigInt::zero(); r2.dimension()];
        for (c, img) in x.iter().zip(images) {
            for (o, v) in out.iter_mut().zip(img.iter()) {
                *o += c * v;
            }
        }
        g2.normalize(&out)
    };
    let mut choice = vec![0usize; dim];
    loop {
        let images: Vec<&Vec<BigInt>> =
            choice.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
        let ok = apply(&images, &r1.unit) == r2.unit
            && (0..dim).all(|i| {
                (0..dim).all(|j| apply(&images, &r1.table[i][j]) == r2.mul(images[i], images[j]))
            })
            && {
                let all: HashSet<Vec<BigInt>> = g1
                    .elements(guard)?
                    .iter()
                    .map(|x| apply(&images, x))
                    .collect();
                all.len() == elems.len()
            };
        if ok {
            return Ok(Some(images.into_iter().cloned().collect()));
        }
        let mut pos = 0;
        loop {
            if pos == dim {
                return Ok(None);
            }
            choice[pos] += 1;
            if choice[pos] < candidates[pos].len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

/// The ring `ℤ/n` for a finite ring with cyclic additive group whose unit
/// generates it; used for readable output.
pub fn cyclic_characteristic(r: &FpRing) -> Option<u64> {
    let (rank, factors) = r.additive.canonical_invariants();
    match (rank, factors.as_slice()) {
        (0, []) => Some(1),
        (0, [d]) => {
            let u = r.unit.first()?;
            (u.gcd(d).is_one()).then(|| d.to_u64()).flatten()
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma_cat::DEFAULT_GUARD;
    use crate::gamma_set::{f1, quotient_map, validate_naturality};

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn em(n: usize, level: usize) -> Arc<TruncatedGammaSet> {
        Arc::new(eilenberg_maclane(&PointedMonoid::cyclic(n), level).unwrap())
    }

    #[test]
    fn module_examples() {
        assert_eq!(
            extend_module(&f1(2).unwrap())
                .unwrap()
                .group
                .canonical_invariants(),
            (1, vec![])
        );
        let s = spherical(&PointedSet::with_basepoint(&["a", "b"]), 2).unwrap();
        assert_eq!(
            extend_module(&s).unwrap().group.canonical_invariants(),
            (2, vec![])
        );
        assert_eq!(
            extend_module(&em(6, 2))
                .unwrap()
                .group
                .canonical_invariants(),
            (0, big(&[6]))
        );
    }

    #[test]
    fn q9_tensor() {
        let h = em(9, 3);
        let sub = Subobject::coordinatewise(&h, &["3", "6"]).unwrap();
        let q = collapse_quotient(&h, &sub).unwrap();
        let t = extend_module(&q).unwrap();
        assert_eq!(t.group.canonical_invariants(), (0, big(&[3])));
        let one = q.index_of(1, "1").unwrap();
        assert!(!t.iota[one].iter().all(Zero::is_zero));
    }

    #[test]
    fn iota_respects_relations() {
        let h = em(4, 2);
        let t = extend_module(&h).unwrap();
        assert!(t.iota[0].iter().all(Zero::is_zero));
        for (a, b, c) in binary_relations(&h) {
            assert_eq!(t.group.add(&t.iota[a], &t.iota[b]), t.iota[c]);
        }
        assert_eq!(t.provenance[0], Provenance::Basepoint);
    }

    #[test]
    fn quotient_map_tensor() {
        let h = em(9, 2);
        let sub = Subobject::coordinatewise(&h, &["3", "6"]).unwrap();
        let p = quotient_map(h.clone(), &sub).unwrap();
        assert!(validate_naturality(&p).is_empty());
        let hom = extend_map(&p).unwrap();
        assert_eq!(hom.source.canonical_invariants(), (0, big(&[9])));
        assert_eq!(hom.target.canonical_invariants(), (0, big(&[3])));
        assert!(hom.is_surjective());
        let one = h.index_of(1, "1").unwrap();
        let image = hom.apply(&hom.source.generator_class(one));
        let tq = extend_module(p.target()).unwrap();
        assert_eq!(image, tq.iota[p.target().index_of(1, "1").unwrap()]);
    }

    #[test]
    fn extend_identity() {
        let h = em(6, 2);
        let hom = extend_map(&GammaMap::identity(h)).unwrap();
        let dim = hom.source.dimension();
        for (i, row) in hom.canonical_matrix().into_iter().enumerate() {
            let mut e = vec![BigInt::zero(); dim];
            e[i] = BigInt::one();
            assert_eq!(row, e);
        }
    }

    #[test]
    fn algebra_constructors() {
        let a = em_algebra(&FiniteSemiring::zmod(6), 2).unwrap();
        assert_eq!(a.mul(2, 3), 0);
        assert_eq!(a.carrier().label(1, a.unit()), "1");
        let b = em_algebra(&FiniteSemiring::boolean(), 2).unwrap();
        assert_eq!(b.carrier().labels(1), &["0", "1"]);
        let s = spherical_algebra(&PointedMonoid::mu2(), 2).unwrap();
        assert_eq!(s.carrier().labels(1), &["0", "1", "-1"]);
        assert_eq!(s.carrier().label(1, s.unit()), "1");
    }

    #[test]
    fn f1_algebra_gives_integers() {
        let t =
            extend_algebra(&spherical_algebra(&PointedMonoid::pointed_unit(), 2).unwrap()).unwrap();
        let ring = t.ring.unwrap();
        assert_eq!(ring.additive().canonical_invariants(), (1, vec![]));
        assert!(ring.check_axioms());
        assert_eq!(cyclic_characteristic(&ring), None);
        assert!(isomorphic_by_labels(&ring, &monoid_ring(&PointedMonoid::pointed_unit())).unwrap());
    }

    #[test]
    fn group_ring_of_mu2() {
        let t = extend_algebra(&spherical_algebra(&PointedMonoid::mu2(), 2).unwrap()).unwrap();
        let ring = t.ring.as_ref().unwrap();
        assert_eq!(ring.additive().canonical_invariants(), (2, vec![]));
        let x = &t.iota[2];
        assert_eq!(ring.mul(x, x), ring.unit());
        assert!(!t.ideal_closure_grew);
        let oracle = monoid_ring(&PointedMonoid::mu2());
        assert!(isomorphic_by_labels(ring, &oracle).unwrap());
    }

    #[test]
    fn em_algebra_reflects() {
        let t = extend_algebra(&em_algebra(&FiniteSemiring::zmod(6), 2).unwrap()).unwrap();
        let ring = t.ring.unwrap();
        assert!(ring.check_axioms());
        assert!(
            find_ring_isomorphism(&ring, &FpRing::cyclic(6), DEFAULT_GUARD)
                .unwrap()
                .is_some()
        );
        assert_eq!(cyclic_characteristic(&ring), Some(6));
    }

    #[test]
    fn q9_algebra() {
        let a = em_algebra(&FiniteSemiring::zmod(9), 2).unwrap();
        let q = quotient_algebra(&a, &["3", "6"]).unwrap();
        assert_eq!(q.carrier().level_size(1), 7);
        let t = extend_algebra(&q).unwrap();
        let ring = t.ring.unwrap();
        assert!(
            find_ring_isomorphism(&ring, &FpRing::cyclic(3), DEFAULT_GUARD)
                .unwrap()
                .is_some()
        );
        assert!(quotient_algebra(&a, &["1"]).is_err());
    }

    #[test]
    fn monoid_rings() {
        assert_eq!(
            monoid_ring(&PointedMonoid::pointed_unit())
                .additive()
                .canonical_invariants(),
            (1, vec![])
        );
        let c3 = monoid_ring(&PointedMonoid::pointed_cyclic(3));
        assert_eq!(c3.additive().canonical_invariants(), (3, vec![]));
        assert!(c3.check_axioms());
    }

    #[test]
    fn non_isomorphic_rings() {
        let z6 = FpRing::cyclic(6);
        let z2 = FpRing::cyclic(2);
        assert!(find_ring_isomorphism(&z6, &z2, DEFAULT_GUARD)
            .unwrap()
            .is_none());
        // Z[x]/(x^2) and Z[x]/(x^2 - 1) share their additive group
        let nil = monoid_ring(&PointedMonoid::truncated_power(2));
        let mu = monoid_ring(&PointedMonoid::mu2());
        assert!(!isomorphic_by_labels(&nil, &mu).unwrap_or(false));
    }
}
