//! The skeleton category of finite pointed sets `n+ = {0, 1, ..., n}`.
//!
//! A [`GammaMorphism`] stores only the images of the non-basepoint elements;
//! the basepoint `0` always maps to `0`. Hom-sets are enumerated in
//! lexicographic order of the image sequence, and that order doubles as a
//! dense index ([`GammaMorphism::index`]) used by the action tables of
//! [`crate::gamma_set::TruncatedGammaSet`].

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Default cap on the number of candidates an enumeration may visit.
pub const DEFAULT_GUARD: u64 = 1_000_000;

/// Fails with [`Error::GuardExceeded`] when `count` is above `guard`.
pub fn check_guard(count: u128, guard: u64) -> Result<()> {
    if count > u128::from(guard) {
        Err(Error::GuardExceeded {
            requested: count,
            guard,
        })
    } else {
        Ok(())
    }
}

/// `base^exp` saturating at `u128::MAX`.
pub(crate) fn saturating_pow(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}

/// The pointed set `n+`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GammaObject(pub usize);

impl GammaObject {
    pub fn n(self) -> usize {
        self.0
    }
}

impl fmt::Display for GammaObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+", self.0)
    }
}

/// A pointed map `n+ -> m+`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GammaMorphism {
    source: GammaObject,
    target: GammaObject,
    images: Vec<usize>,
}

impl GammaMorphism {
    /// Builds `n+ -> m+` from the images of `1..=n`.
    pub fn new(source: usize, target: usize, images: Vec<usize>) -> Result<Self> {
        if images.len() != source {
            return Err(Error::InvalidMorphism(format!(
                "expected {source} images, got {}",
                images.len()
            )));
        }
        if let Some(bad) = images.iter().find(|&&i| i > target) {
            return Err(Error::InvalidMorphism(format!(
                "image {bad} is outside {target}+"
            )));
        }
        Ok(Self {
            source: GammaObject(source),
            target: GammaObject(target),
            images,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            source: GammaObject(n),
            target: GammaObject(n),
            images: (1..=n).collect(),
        }
    }

    /// The map sending everything to the basepoint.
    pub fn zero(n: usize, m: usize) -> Self {
        Self {
            source: GammaObject(n),
            target: GammaObject(m),
            images: vec![0; n],
        }
    }

    pub fn source(&self) -> usize {
        self.source.0
    }

    pub fn target(&self) -> usize {
        self.target.0
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Image of `i` in `0..=source`; the basepoint maps to itself.
    pub fn apply(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            self.images[i - 1]
        }
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// `next ∘ self`: first apply `self`, then `next`.
    pub fn then(&self, next: &GammaMorphism) -> Result<GammaMorphism> {
        if self.target != next.source {
            return Err(Error::Composition {
                first: self.to_string(),
                second: next.to_string(),
                target: self.target.0,
                source_level: next.source.0,
            });
        }
        Ok(GammaMorphism {
            source: self.source,
            target: next.target,
            images: self.images.iter().map(|&i| next.apply(i)).collect(),
        })
    }

    /// Position of this morphism in the lexicographic enumeration of
    /// `Hom(n+, m+)`.
    pub fn index(&self) -> usize {
        let radix = self.target.0 + 1;
        self.images.iter().fold(0, |acc, &i| acc * radix + i)
    }

    /// Inverse of [`GammaMorphism::index`].
    pub fn from_index(source: usize, target: usize, mut index: usize) -> Self {
        let radix = target + 1;
        let mut images = vec![0; source];
        for slot in images.iter_mut().rev() {
            *slot = index % radix;
            index /= radix;
        }
        Self {
            source: GammaObject(source),
            target: GammaObject(target),
            images,
        }
    }

    /// The elements of `1..=source` sent to `j`.
    pub fn fiber(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        self.images
            .iter()
            .enumerate()
            .filter(move |(_, &v)| v == j)
            .map(|(i, _)| i + 1)
    }
}

/// `g ∘ f`, defined when `f.target == g.source`.
pub fn compose(f: &GammaMorphism, g: &GammaMorphism) -> Result<GammaMorphism> {
    f.then(g)
}

/// The projection `p_{i,n}: n+ -> 1+` onto the `i`-th coordinate.
pub fn projection(i: usize, n: usize) -> Result<GammaMorphism> {
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, level: n });
    }
    Ok(GammaMorphism {
        source: GammaObject(n),
        target: GammaObject(1),
        images: (1..=n).map(|j| usize::from(j == i)).collect(),
    })
}

/// The sum morphism `s_n: n+ -> 1+` sending every non-basepoint to `1`.
pub fn sum_morphism(n: usize) -> GammaMorphism {
    GammaMorphism {
        source: GammaObject(n),
        target: GammaObject(1),
        images: vec![1; n],
    }
}

/// The morphism `n+ -> m+` sending block `I_j` to `j` (blocks numbered from 1).
pub fn partition_morphism(blocks: &[Vec<usize>]) -> Result<GammaMorphism> {
    let n: usize = blocks.iter().map(Vec::len).sum();
    let mut images = vec![0; n];
    for (j, block) in blocks.iter().enumerate() {
        if block.is_empty() {
            return Err(Error::InvalidPartition(format!("block {} is empty", j + 1)));
        }
        for &i in block {
            if i == 0 || i > n {
                return Err(Error::InvalidPartition(format!(
                    "index {i} is outside 1..={n}"
                )));
            }
            if images[i - 1] != 0 {
                return Err(Error::InvalidPartition(format!(
                    "index {i} appears in more than one block"
                )));
            }
            images[i - 1] = j + 1;
        }
    }
    Ok(GammaMorphism {
        source: GammaObject(n),
        target: GammaObject(blocks.len()),
        images,
    })
}

/// Number of morphisms `n+ -> m+`, i.e. `(m+1)^n`.
pub fn hom_count(n: usize, m: usize) -> u128 {
    saturating_pow(m + 1, n)
}

/// All pointed maps `n+ -> m+` in lexicographic order of their images.
pub fn enumerate_homs(n: usize, m: usize, guard: u64) -> Result<Vec<GammaMorphism>> {
    let count = hom_count(n, m);
    check_guard(count, guard)?;
    Ok((0..count as usize)
        .map(|idx| GammaMorphism::from_index(n, m, idx))
        .collect())
}

/// All set partitions of `{1..n}`, blocks ordered by their least element.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn extend(i: usize, n: usize, current: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i > n {
            out.push(current.clone());
            return;
        }
        for b in 0..current.len() {
            current[b].push(i);
            extend(i + 1, n, current, out);
            current[b].pop();
        }
        current.push(vec![i]);
        extend(i + 1, n, current, out);
        current.pop();
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    extend(1, n, &mut Vec::new(), &mut out);
    out
}

/// Parses a partition written as `"1,2|3"`.
pub fn parse_partition(text: &str) -> Result<Vec<Vec<usize>>> {
    text.split('|')
        .map(|block| {
            block
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::InvalidPartition(format!("bad index {s:?}")))
                })
                .collect()
        })
        .collect()
}

impl fmt::Display for GammaMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let images: Vec<String> = self.images.iter().map(|i| i.to_string()).collect();
        write!(
            f,
            "{}>{}:[{}]",
            self.source.0,
            self.target.0,
            images.join(",")
        )
    }
}

impl FromStr for GammaMorphism {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidMorphism(format!("cannot parse {s:?}"));
        let (objects, images) = s.split_once(':').ok_or_else(bad)?;
        let (n, m) = objects.split_once('>').ok_or_else(bad)?;
        let n: usize = n.trim().parse().map_err(|_| bad())?;
        let m: usize = m.trim().parse().map_err(|_| bad())?;
        let body = images
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?;
        let images = if body.trim().is_empty() {
            Vec::new()
        } else {
            body.split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?
        };
        GammaMorphism::new(n, m, images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_composition() {
        let id = GammaMorphism::identity(2);
        assert_eq!(compose(&id, &id).unwrap(), id);
        let p = projection(1, 2).unwrap();
        assert_eq!(compose(&p, &GammaMorphism::identity(1)).unwrap(), p);
    }

    #[test]
    fn partition_then_projection() {
        let f = partition_morphism(&[vec![1], vec![2, 3]]).unwrap();
        let g = projection(2, 2).unwrap();
        let h = compose(&f, &g).unwrap();
        assert_eq!(h, GammaMorphism::new(3, 1, vec![0, 1, 1]).unwrap());
    }

    #[test]
    fn composition_mismatch() {
        let f = projection(1, 2).unwrap();
        assert!(matches!(compose(&f, &f), Err(Error::Composition { .. })));
    }

    #[test]
    fn projections() {
        assert_eq!(projection(1, 1).unwrap(), GammaMorphism::identity(1));
        assert_eq!(projection(2, 3).unwrap().images(), &[0, 1, 0]);
        assert_eq!(projection(3, 3).unwrap().images(), &[0, 0, 1]);
        assert!(projection(0, 3).is_err());
        assert!(projection(4, 3).is_err());
    }

    #[test]
    fn sum_morphisms() {
        assert_eq!(sum_morphism(1), GammaMorphism::identity(1));
        assert_eq!(sum_morphism(2).images(), &[1, 1]);
        let s0 = sum_morphism(0);
        assert_eq!((s0.source(), s0.target()), (0, 1));
        assert!(s0.images().is_empty());
    }

    #[test]
    fn partitions() {
        assert_eq!(
            partition_morphism(&[vec![1], vec![2, 3]]).unwrap().images(),
            &[1, 2, 2]
        );
        assert_eq!(
            partition_morphism(&[vec![1, 2, 3]]).unwrap(),
            sum_morphism(3)
        );
        assert_eq!(
            partition_morphism(&[vec![1], vec![2]]).unwrap(),
            GammaMorphism::identity(2)
        );
        assert!(partition_morphism(&[vec![1], vec![1, 2]]).is_err());
        assert!(partition_morphism(&[vec![1], vec![]]).is_err());
        assert!(partition_morphism(&[vec![1], vec![3]]).is_err());
    }

    #[test]
    fn hom_enumeration() {
        let homs = enumerate_homs(1, 1, DEFAULT_GUARD).unwrap();
        assert_eq!(
            homs,
            vec![GammaMorphism::zero(1, 1), GammaMorphism::identity(1)]
        );

        let homs = enumerate_homs(2, 1, DEFAULT_GUARD).unwrap();
        assert_eq!(homs.len(), 4);
        for expected in [
            projection(1, 2).unwrap(),
            projection(2, 2).unwrap(),
            sum_morphism(2),
            GammaMorphism::zero(2, 1),
        ] {
            assert!(homs.contains(&expected));
        }
        assert_eq!(enumerate_homs(0, 3, DEFAULT_GUARD).unwrap().len(), 1);
        assert!(enumerate_homs(10, 9, DEFAULT_GUARD).is_err());
    }

    #[test]
    fn index_roundtrip() {
        for (i, f) in enumerate_homs(3, 2, DEFAULT_GUARD)
            .unwrap()
            .iter()
            .enumerate()
        {
            assert_eq!(f.index(), i);
            assert_eq!(&GammaMorphism::from_index(3, 2, i), f);
        }
    }

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (1..=5).map(|n| set_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 15, 52]);
    }

    #[test]
    fn text_encoding() {
        let f = partition_morphism(&[vec![1], vec![2, 3]]).unwrap();
        assert_eq!(f.to_string(), "3>2:[1,2,2]");
        assert_eq!("3>2:[1,2,2]".parse::<GammaMorphism>().unwrap(), f);
        assert_eq!("0>1:[]".parse::<GammaMorphism>().unwrap(), sum_morphism(0));
        assert!("2>1:[1,2]".parse::<GammaMorphism>().is_err());
        assert!("garbage".parse::<GammaMorphism>().is_err());
    }

    #[test]
    fn sum_after_partition_is_sum() {
        for n in 1..=4 {
            for p in set_partitions(n) {
                let f = partition_morphism(&p).unwrap();
                assert_eq!(
                    compose(&f, &sum_morphism(p.len())).unwrap(),
                    sum_morphism(n)
                );
                for (j, block) in p.iter().enumerate() {
                    let pj = compose(&f, &projection(j + 1, p.len()).unwrap()).unwrap();
                    let ones: Vec<usize> = pj.fiber(1).collect();
                    assert_eq!(&ones, block);
                }
            }
        }
    }
}
