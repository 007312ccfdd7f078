//! Level-truncated Γ-sets and their morphisms.
//!
//! A [`TruncatedGammaSet`] keeps levels `0..=N` and a fully materialized
//! action table for every pointed map between those levels. Element `0` of
//! each level is its basepoint. Tables are indexed by
//! [`GammaMorphism::index`], so looking up `X(f)(x)` is two vector reads.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma_cat::{
    check_guard, hom_count, projection, saturating_pow, sum_morphism, GammaMorphism, DEFAULT_GUARD,
};
use crate::monoid::{PointedMonoid, PointedSet};

/// Schema tag embedded in every JSON document this crate writes.
pub const SCHEMA: &str = "gammaforge/1";

/// Upper bound on the number of stored action-table entries.
const TABLE_GUARD: u64 = 64_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
struct Level {
    labels: Vec<String>,
    lookup: HashMap<String, usize>,
}

impl Level {
    fn new(labels: Vec<String>, n: usize) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidGammaSet(format!("level {n} is empty")));
        }
        let mut lookup = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if lookup.insert(l.clone(), i).is_some() {
                return Err(Error::InvalidGammaSet(format!(
                    "label {l:?} repeated at level {n}"
                )));
            }
        }
        Ok(Self { labels, lookup })
    }
}

/// A Γ-set restricted to the levels `0..=max_level`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedGammaSet {
    max_level: usize,
    levels: Vec<Level>,
    // actions[n][m][f.index() * |X(n)| + x] = X(f)(x)
    actions: Vec<Vec<Vec<u32>>>,
}

impl TruncatedGammaSet {
    /// Builds a truncated Γ-set by evaluating `act` on every morphism and
    /// element. Functoriality is not checked here; see
    /// [`validate_functoriality`].
    pub fn from_fn<F>(max_level: usize, levels: Vec<Vec<String>>, act: F) -> Result<Self>
    where
        F: Fn(&GammaMorphism, usize) -> usize,
    {
        let levels = Self::check_levels(max_level, levels)?;
        let mut actions = Vec::with_capacity(max_level + 1);
        for n in 0..=max_level {
            let size_n = levels[n].labels.len();
            let mut row = Vec::with_capacity(max_level + 1);
            for m in 0..=max_level {
                let size_m = levels[m].labels.len();
                let count = hom_count(n, m) as usize;
                let mut table = Vec::with_capacity(count * size_n);
                for idx in 0..count {
                    let f = GammaMorphism::from_index(n, m, idx);
                    for x in 0..size_n {
                        let y = act(&f, x);
                        if y >= size_m {
                            return Err(Error::InvalidGammaSet(format!(
                                "{f} sends element {x} outside level {m}"
                            )));
                        }
                        table.push(y as u32);
                    }
                }
                row.push(table);
            }
            actions.push(row);
        }
        Ok(Self {
            max_level,
            levels,
            actions,
        })
    }

    fn check_levels(max_level: usize, levels: Vec<Vec<String>>) -> Result<Vec<Level>> {
        if max_level < 2 {
            return Err(Error::LevelTooLow(max_level));
        }
        if levels.len() != max_level + 1 {
            return Err(Error::InvalidGammaSet(format!(
                "expected {} levels, got {}",
                max_level + 1,
                levels.len()
            )));
        }
        if levels[0].len() != 1 {
            return Err(Error::InvalidGammaSet(
                "level 0 must be the singleton basepoint".into(),
            ));
        }
        let mut entries: u128 = 0;
        for (n, l) in levels.iter().enumerate() {
            for m in 0..=max_level {
                entries = entries.saturating_add(hom_count(n, m).saturating_mul(l.len() as u128));
            }
        }
        check_guard(entries, TABLE_GUARD)?;
        levels
            .into_iter()
            .enumerate()
            .map(|(n, l)| Level::new(l, n))
            .collect()
    }

    pub fn max_level(&self) -> usize {
        self.max_level
    }

    pub fn level_size(&self, n: usize) -> usize {
        self.levels[n].labels.len()
    }

    pub fn labels(&self, n: usize) -> &[String] {
        &self.levels[n].labels
    }

    pub fn label(&self, n: usize, x: usize) -> &str {
        &self.levels[n].labels[x]
    }

    pub fn index_of(&self, n: usize, label: &str) -> Result<usize> {
        self.levels[n]
            .lookup
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel {
                label: label.to_string(),
                level: n,
            })
    }

    /// `X(f)(x)`.
    pub fn act(&self, f: &GammaMorphism, x: usize) -> usize {
        self.act_indexed(f.source(), f.target(), f.index(), x)
    }

    /// `X(f)(x)` where `f` is given by its position in `Hom(n+, m+)`.
    pub fn act_indexed(&self, n: usize, m: usize, f_index: usize, x: usize) -> usize {
        self.actions[n][m][f_index * self.level_size(n) + x] as usize
    }

    /// The whole function `X(f)` as a vector indexed by source elements.
    pub fn action(&self, f: &GammaMorphism) -> &[u32] {
        let size = self.level_size(f.source());
        let start = f.index() * size;
        &self.actions[f.source()][f.target()][start..start + size]
    }

    /// The coordinates `(X(p_1)(x), ..., X(p_n)(x))` of `x ∈ X(n+)`.
    pub fn coordinates(&self, n: usize, x: usize) -> Vec<usize> {
        (1..=n)
            .map(|i| self.act(&projection(i, n).expect("valid projection"), x))
            .collect()
    }

    /// `X(s_n)(x)`.
    pub fn total(&self, n: usize, x: usize) -> usize {
        self.act(&sum_morphism(n), x)
    }

    /// Same levels and actions, new labels.
    pub fn relabel(&self, labels: Vec<Vec<String>>) -> Result<Self> {
        if labels.len() != self.levels.len()
            || labels
                .iter()
                .zip(&self.levels)
                .any(|(new, old)| new.len() != old.labels.len())
        {
            return Err(Error::InvalidGammaSet(
                "relabeling changes level sizes".into(),
            ));
        }
        Ok(Self {
            max_level: self.max_level,
            levels: labels
                .into_iter()
                .enumerate()
                .map(|(n, l)| Level::new(l, n))
                .collect::<Result<_>>()?,
            actions: self.actions.clone(),
        })
    }

    /// JSON document `{ "schema", "max_level", "levels", "action" }`.
    pub fn to_json(&self) -> GammaSetJson {
        let mut action = BTreeMap::new();
        for n in 0..=self.max_level {
            for m in 0..=self.max_level {
                for idx in 0..hom_count(n, m) as usize {
                    let f = GammaMorphism::from_index(n, m, idx);
                    let values = self.action(&f).iter().map(|&v| v as usize).collect();
                    action.insert(f.to_string(), values);
                }
            }
        }
        GammaSetJson {
            schema: Some(SCHEMA.to_string()),
            max_level: self.max_level,
            levels: self.levels.iter().map(|l| l.labels.clone()).collect(),
            action,
        }
    }

    /// Reads a JSON document. The table must be total; functoriality is left
    /// to [`validate_functoriality`].
    pub fn from_json(doc: &GammaSetJson) -> Result<Self> {
        let mut keyed: HashMap<GammaMorphism, &Vec<usize>> = HashMap::new();
        for (key, values) in &doc.action {
            let f: GammaMorphism = key.parse()?;
            if f.source() > doc.max_level || f.target() > doc.max_level {
                return Err(Error::InvalidGammaSet(format!(
                    "{key} exceeds max level {}",
                    doc.max_level
                )));
            }
            keyed.insert(f, values);
        }
        let sizes: Vec<usize> = doc.levels.iter().map(Vec::len).collect();
        for n in 0..=doc.max_level.min(sizes.len().saturating_sub(1)) {
            for m in 0..=doc.max_level.min(sizes.len().saturating_sub(1)) {
                for idx in 0..hom_count(n, m) as usize {
                    let f = GammaMorphism::from_index(n, m, idx);
                    match keyed.get(&f) {
                        None => {
                            return Err(Error::InvalidGammaSet(format!(
                                "action table has no entry for {f}"
                            )))
                        }
                        Some(v) if v.len() != sizes[n] => {
                            return Err(Error::InvalidGammaSet(format!(
                                "entry for {f} has {} values, level {n} has {}",
                                v.len(),
                                sizes[n]
                            )))
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        Self::from_fn(doc.max_level, doc.levels.clone(), |f, x| keyed[f][x])
    }
}

/// Serialized form of a [`TruncatedGammaSet`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaSetJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub max_level: usize,
    pub levels: Vec<Vec<String>>,
    pub action: BTreeMap<String, Vec<usize>>,
}

/// One failure found by [`validate_functoriality`] or [`validate_naturality`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Basepoint {
        morphism: String,
    },
    Identity {
        level: usize,
        element: String,
    },
    Composition {
        first: String,
        second: String,
        element: String,
    },
    ComponentBasepoint {
        level: usize,
    },
    Naturality {
        morphism: String,
        element: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Basepoint { morphism } => write!(f, "{morphism} moves the basepoint"),
            Violation::Identity { level, element } => {
                write!(f, "identity on level {level} moves {element}")
            }
            Violation::Composition {
                first,
                second,
                element,
            } => write!(
                f,
                "X({second} ∘ {first}) != X({second}) X({first}) at {element}"
            ),
            Violation::ComponentBasepoint { level } => {
                write!(f, "component at level {level} moves the basepoint")
            }
            Violation::Naturality { morphism, element } => {
                write!(f, "naturality square for {morphism} fails at {element}")
            }
        }
    }
}

/// Violations found by a validation pass; empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    /// Total number of violations found.
    pub count: usize,
    /// The first violations found, at most [`ValidationReport::KEEP`].
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub const KEEP: usize = 32;

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    fn push(&mut self, v: Violation) {
        self.count += 1;
        if self.violations.len() < Self::KEEP {
            self.violations.push(v);
        }
    }
}

/// Checks basepoints, identities and every composable pair of morphisms
/// between levels `<= N`.
pub fn validate_functoriality(x: &TruncatedGammaSet) -> ValidationReport {
    let mut report = ValidationReport::default();
    let top = x.max_level;
    for n in 0..=top {
        for m in 0..=top {
            for idx in 0..hom_count(n, m) as usize {
                if x.act_indexed(n, m, idx, 0) != 0 {
                    let f = GammaMorphism::from_index(n, m, idx);
                    report.push(Violation::Basepoint {
                        morphism: f.to_string(),
                    });
                }
            }
        }
        let id = GammaMorphism::identity(n);
        for (e, &v) in x.action(&id).iter().enumerate() {
            if v as usize != e {
                report.push(Violation::Identity {
                    level: n,
                    element: x.label(n, e).to_string(),
                });
            }
        }
    }
    for n in 0..=top {
        let size = x.level_size(n);
        for m in 0..=top {
            for fi in 0..hom_count(n, m) as usize {
                let f = GammaMorphism::from_index(n, m, fi);
                let fx = x.action(&f);
                for k in 0..=top {
                    for gi in 0..hom_count(m, k) as usize {
                        let g = GammaMorphism::from_index(m, k, gi);
                        let h = f.then(&g).expect("composable by construction");
                        let gx = x.action(&g);
                        let hx = x.action(&h);
                        for e in 0..size {
                            if hx[e] != gx[fx[e] as usize] {
                                report.push(Violation::Composition {
                                    first: f.to_string(),
                                    second: g.to_string(),
                                    element: x.label(n, e).to_string(),
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    report
}

/// A level-wise map between two truncated Γ-sets of the same height.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaMap {
    source: Arc<TruncatedGammaSet>,
    target: Arc<TruncatedGammaSet>,
    components: Vec<Vec<usize>>,
}

impl GammaMap {
    /// Checks shapes and ranges only; naturality is [`validate_naturality`].
    pub fn new(
        source: Arc<TruncatedGammaSet>,
        target: Arc<TruncatedGammaSet>,
        components: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if source.max_level != target.max_level {
            return Err(Error::MapMismatch(format!(
                "source has max level {}, target {}",
                source.max_level, target.max_level
            )));
        }
        if components.len() != source.max_level + 1 {
            return Err(Error::MapMismatch("wrong number of components".into()));
        }
        for (n, c) in components.iter().enumerate() {
            if c.len() != source.level_size(n) || c.iter().any(|&y| y >= target.level_size(n)) {
                return Err(Error::MapMismatch(format!(
                    "component {n} has the wrong shape"
                )));
            }
        }
        Ok(Self {
            source,
            target,
            components,
        })
    }

    pub fn identity(x: Arc<TruncatedGammaSet>) -> Self {
        let components = (0..=x.max_level)
            .map(|n| (0..x.level_size(n)).collect())
            .collect();
        Self {
            source: x.clone(),
            target: x,
            components,
        }
    }

    /// The map to the terminal Γ-set.
    pub fn to_terminal(x: Arc<TruncatedGammaSet>) -> Self {
        let target = Arc::new(terminal(x.max_level).expect("max level already validated"));
        let components = (0..=x.max_level)
            .map(|n| vec![0; x.level_size(n)])
            .collect();
        Self {
            source: x,
            target,
            components,
        }
    }

    pub fn source(&self) -> &Arc<TruncatedGammaSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<TruncatedGammaSet> {
        &self.target
    }

    pub fn component(&self, n: usize) -> &[usize] {
        &self.components[n]
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn apply(&self, n: usize, x: usize) -> usize {
        self.components[n][x]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &GammaMap) -> Result<GammaMap> {
        if *self.target != *next.source {
            return Err(Error::MapMismatch("target and source differ".into()));
        }
        let components = self
            .components
            .iter()
            .zip(&next.components)
            .map(|(a, b)| a.iter().map(|&x| b[x]).collect())
            .collect();
        Ok(GammaMap {
            source: self.source.clone(),
            target: next.target.clone(),
            components,
        })
    }
}

/// Checks that every component is pointed and every naturality square
/// over morphisms between levels `<= N` commutes.
pub fn validate_naturality(phi: &GammaMap) -> ValidationReport {
    let mut report = ValidationReport::default();
    let (x, y) = (&phi.source, &phi.target);
    for n in 0..=x.max_level {
        if phi.components[n][0] != 0 {
            report.push(Violation::ComponentBasepoint { level: n });
        }
    }
    for n in 0..=x.max_level {
        for m in 0..=x.max_level {
            for idx in 0..hom_count(n, m) as usize {
                for e in 0..x.level_size(n) {
                    let left = phi.components[m][x.act_indexed(n, m, idx, e)];
                    let right = y.act_indexed(n, m, idx, phi.components[n][e]);
                    if left != right {
                        report.push(Violation::Naturality {
                            morphism: GammaMorphism::from_index(n, m, idx).to_string(),
                            element: x.label(n, e).to_string(),
                        });
                    }
                }
            }
        }
    }
    report
}

fn tuple_label(parts: &[&str]) -> String {
    match parts.len() {
        1 => parts[0].to_string(),
        _ => format!("({})", parts.join(",")),
    }
}

/// Position of the tuple `digits` in `M^n` (first coordinate most significant).
pub fn em_encode(monoid_size: usize, digits: &[usize]) -> usize {
    digits.iter().fold(0, |acc, &d| acc * monoid_size + d)
}

/// Inverse of [`em_encode`].
pub fn em_decode(monoid_size: usize, n: usize, mut index: usize) -> Vec<usize> {
    let mut digits = vec![0; n];
    for slot in digits.iter_mut().rev() {
        *slot = index % monoid_size;
        index /= monoid_size;
    }
    digits
}

/// The Eilenberg-MacLane object `HM`: level `n` is `M^n`, morphisms add
/// coordinates along fibers.
pub fn eilenberg_maclane(monoid: &PointedMonoid, max_level: usize) -> Result<TruncatedGammaSet> {
    if monoid.unit() != 0 {
        return Err(Error::InvalidMonoid(
            "Eilenberg-MacLane objects need an additive monoid with identity first".into(),
        ));
    }
    let k = monoid.len();
    check_guard(saturating_pow(k, max_level), DEFAULT_GUARD)?;
    let levels = (0..=max_level)
        .map(|n| {
            (0..k.pow(n as u32))
                .map(|i| {
                    let digits = em_decode(k, n, i);
                    let parts: Vec<&str> = digits.iter().map(|&d| monoid.label(d)).collect();
                    tuple_label(&parts)
                })
                .collect()
        })
        .collect();
    TruncatedGammaSet::from_fn(max_level, levels, |f, x| {
        let digits = em_decode(k, f.source(), x);
        let mut out = vec![monoid.unit(); f.target()];
        for (i, &d) in digits.iter().enumerate() {
            let j = f.images()[i];
            if j != 0 {
                out[j - 1] = monoid.op(out[j - 1], d);
            }
        }
        em_encode(k, &out)
    })
}

/// The spherical object `SY`: level `n` is `Y ∧ n+`, acted on by `id ∧ f`.
///
/// Level `n >= 2` lists the basepoint, then `(y, i)` for every non-basepoint
/// `y` (outer) and `i = 1..n` (inner).
pub fn spherical(y: &PointedSet, max_level: usize) -> Result<TruncatedGammaSet> {
    let free = y.len() - 1;
    check_guard((free * max_level + 1) as u128, DEFAULT_GUARD)?;
    let base = &y.elements[0];
    let levels = (0..=max_level)
        .map(|n| {
            let mut labels = vec![base.clone()];
            for k in 0..free {
                for i in 1..=n {
                    let name = &y.elements[k + 1];
                    labels.push(if n == 1 {
                        name.clone()
                    } else {
                        format!("({name},{i})")
                    });
                }
            }
            labels
        })
        .collect();
    TruncatedGammaSet::from_fn(max_level, levels, |f, x| {
        if x == 0 {
            return 0;
        }
        let (k, i) = ((x - 1) / f.source(), (x - 1) % f.source() + 1);
        match f.apply(i) {
            0 => 0,
            j => 1 + k * f.target() + (j - 1),
        }
    })
}

/// `F_1 = S{0, 1}`, labelled so that level `n` reads `0, 1, ..., n`.
pub fn f1(max_level: usize) -> Result<TruncatedGammaSet> {
    let raw = spherical(&PointedSet::new(vec!["0".into(), "1".into()])?, max_level)?;
    raw.relabel(
        (0..=max_level)
            .map(|n| (0..=n).map(|i| i.to_string()).collect())
            .collect(),
    )
}

/// The Γ-set with every level a single point.
pub fn terminal(max_level: usize) -> Result<TruncatedGammaSet> {
    TruncatedGammaSet::from_fn(
        max_level,
        vec![vec!["*".to_string()]; max_level + 1],
        |_, _| 0,
    )
}

/// A level-wise selection of elements of a Γ-set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subobject {
    members: Vec<Vec<bool>>,
}

impl Subobject {
    pub fn from_fn(x: &TruncatedGammaSet, contains: impl Fn(usize, usize) -> bool) -> Self {
        Self {
            members: (0..=x.max_level)
                .map(|n| (0..x.level_size(n)).map(|e| contains(n, e)).collect())
                .collect(),
        }
    }

    /// Only the basepoints.
    pub fn basepoints(x: &TruncatedGammaSet) -> Self {
        Self::from_fn(x, |_, e| e == 0)
    }

    /// Everything.
    pub fn full(x: &TruncatedGammaSet) -> Self {
        Self::from_fn(x, |_, _| true)
    }

    /// Elements all of whose coordinates lie in the given level-1 labels
    /// (the basepoint is always included). For `HM` and a submonoid `S`
    /// this is `HS`.
    pub fn coordinatewise(x: &TruncatedGammaSet, level1: &[&str]) -> Result<Self> {
        let mut allowed = vec![false; x.level_size(1)];
        allowed[0] = true;
        for l in level1 {
            allowed[x.index_of(1, l)?] = true;
        }
        Ok(Self::from_fn(x, |n, e| {
            x.coordinates(n, e).into_iter().all(|c| allowed[c])
        }))
    }

    pub fn contains(&self, n: usize, e: usize) -> bool {
        self.members[n][e]
    }
}

/// `X/A`: every element of `A(n)` is identified with the basepoint, all other
/// elements stay distinct. Labels are inherited from `X`.
pub fn collapse_quotient(x: &TruncatedGammaSet, sub: &Subobject) -> Result<TruncatedGammaSet> {
    Ok(quotient_with_map(x, sub)?.1)
}

/// The quotient together with the level-wise index map `X(n) -> (X/A)(n)`.
fn quotient_with_map(
    x: &TruncatedGammaSet,
    sub: &Subobject,
) -> Result<(Vec<Vec<usize>>, TruncatedGammaSet)> {
    if sub.members.len() != x.max_level + 1
        || (0..=x.max_level).any(|n| sub.members[n].len() != x.level_size(n))
    {
        return Err(Error::InvalidGammaSet(
            "subobject shape does not match".into(),
        ));
    }
    for n in 0..=x.max_level {
        if !sub.members[n][0] {
            return Err(Error::InvalidGammaSet(format!(
                "subobject misses the basepoint of level {n}"
            )));
        }
    }
    for n in 0..=x.max_level {
        for m in 0..=x.max_level {
            for idx in 0..hom_count(n, m) as usize {
                for e in 0..x.level_size(n) {
                    if sub.members[n][e] && !sub.members[m][x.act_indexed(n, m, idx, e)] {
                        return Err(Error::NotActionClosed {
                            morphism: GammaMorphism::from_index(n, m, idx).to_string(),
                            level: n,
                            element: x.label(n, e).to_string(),
                        });
                    }
                }
            }
        }
    }
    let mut maps = Vec::with_capacity(x.max_level + 1);
    let mut levels = Vec::with_capacity(x.max_level + 1);
    for n in 0..=x.max_level {
        let mut map = vec![0; x.level_size(n)];
        let mut labels = vec![x.label(n, 0).to_string()];
        for e in 0..x.level_size(n) {
            if !sub.members[n][e] {
                map[e] = labels.len();
                labels.push(x.label(n, e).to_string());
            }
        }
        maps.push(map);
        levels.push(labels);
    }
    // representative of each class in X
    let reps: Vec<Vec<usize>> = maps
        .iter()
        .map(|map| {
            let mut rep = vec![0; map.iter().max().map_or(1, |m| m + 1)];
            for (e, &c) in map.iter().enumerate() {
                if c != 0 {
                    rep[c] = e;
                }
            }
            rep
        })
        .collect();
    let q = TruncatedGammaSet::from_fn(x.max_level, levels, |f, c| {
        if c == 0 {
            0
        } else {
            maps[f.target()][x.act(f, reps[f.source()][c])]
        }
    })?;
    Ok((maps, q))
}

/// The quotient `X/A` and the canonical projection `X -> X/A`.
pub fn quotient_map(x: Arc<TruncatedGammaSet>, sub: &Subobject) -> Result<GammaMap> {
    let (maps, q) = quotient_with_map(&x, sub)?;
    GammaMap::new(x, Arc::new(q), maps)
}

/// Extends a pointed additive `g: X(1+) -> M` to the Γ-map `X -> HM` given
/// by `x ↦ (g(X(p_1)x), ..., g(X(p_n)x))`. `target` must be `HM` at the
/// same height as `x`.
pub fn gamma_map_from_level1(
    g: &[usize],
    x: &Arc<TruncatedGammaSet>,
    target: &Arc<TruncatedGammaSet>,
    monoid: &PointedMonoid,
) -> Result<GammaMap> {
    if g.len() != x.level_size(1) || g.iter().any(|&v| v >= monoid.len()) {
        return Err(Error::MapMismatch(
            "level-1 assignment has the wrong shape".into(),
        ));
    }
    if target.max_level != x.max_level
        || (0..=x.max_level).any(|n| target.level_size(n) != monoid.len().pow(n as u32))
    {
        return Err(Error::MapMismatch(
            "target is not the Eilenberg-MacLane object of the monoid".into(),
        ));
    }
    if g[0] != monoid.unit() {
        return Err(Error::NotPointed(monoid.label(g[0]).to_string()));
    }
    for (a, b, c) in crate::hyper::binary_relations(x) {
        if g[c] != monoid.op(g[a], g[b]) {
            return Err(Error::NotAdditive {
                a: x.label(1, a).to_string(),
                b: x.label(1, b).to_string(),
                c: x.label(1, c).to_string(),
            });
        }
    }
    let k = monoid.len();
    let components = (0..=x.max_level)
        .map(|n| {
            (0..x.level_size(n))
                .map(|e| {
                    let digits: Vec<usize> =
                        x.coordinates(n, e).into_iter().map(|c| g[c]).collect();
                    em_encode(k, &digits)
                })
                .collect()
        })
        .collect();
    GammaMap::new(x.clone(), target.clone(), components)
}

/// Every natural transformation `X -> Y`, found by level-by-level
/// backtracking. Exponential; meant as an independent oracle on tiny inputs.
pub fn enumerate_gamma_maps(
    x: &Arc<TruncatedGammaSet>,
    y: &Arc<TruncatedGammaSet>,
    guard: u64,
) -> Result<Vec<GammaMap>> {
    if x.max_level != y.max_level {
        return Err(Error::MapMismatch("different heights".into()));
    }
    let mut candidates: u128 = 1;
    for n in 1..=x.max_level {
        candidates =
            candidates.saturating_mul(saturating_pow(y.level_size(n), x.level_size(n) - 1));
    }
    check_guard(candidates, guard)?;

    let top = x.max_level;
    let slots: Vec<(usize, usize)> = (1..=top)
        .flat_map(|n| (1..x.level_size(n)).map(move |e| (n, e)))
        .collect();
    let mut comps: Vec<Vec<Option<usize>>> = (0..=top)
        .map(|n| {
            let mut c = vec![None; x.level_size(n)];
            c[0] = Some(0);
            c
        })
        .collect();
    let mut out = Vec::new();

    // every naturality square touching (n, e) whose other corner is assigned
    fn consistent(
        x: &TruncatedGammaSet,
        y: &TruncatedGammaSet,
        comps: &[Vec<Option<usize>>],
        n: usize,
        e: usize,
    ) -> bool {
        let top = x.max_level;
        let v = comps[n][e].expect("assigned");
        for m in 0..=top {
            for idx in 0..hom_count(n, m) as usize {
                if let Some(w) = comps[m][x.act_indexed(n, m, idx, e)] {
                    if w != y.act_indexed(n, m, idx, v) {
                        return false;
                    }
                }
            }
            for idx in 0..hom_count(m, n) as usize {
                for src in 0..x.level_size(m) {
                    if x.act_indexed(m, n, idx, src) != e {
                        continue;
                    }
                    if let Some(w) = comps[m][src] {
                        if y.act_indexed(m, n, idx, w) != v {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn search(
        x: &Arc<TruncatedGammaSet>,
        y: &Arc<TruncatedGammaSet>,
        slots: &[(usize, usize)],
        pos: usize,
        comps: &mut Vec<Vec<Option<usize>>>,
        out: &mut Vec<GammaMap>,
    ) {
        if pos == slots.len() {
            let components = comps
                .iter()
                .map(|c| c.iter().map(|v| v.expect("assigned")).collect())
                .collect();
            out.push(GammaMap::new(x.clone(), y.clone(), components).expect("shapes match"));
            return;
        }
        let (n, e) = slots[pos];
        for v in 0..y.level_size(n) {
            comps[n][e] = Some(v);
            if consistent(x, y, comps, n, e) {
                search(x, y, slots, pos + 1, comps, out);
            }
        }
        comps[n][e] = None;
    }

    // the basepoint squares are checked once up front
    if (0..=top).any(|n| {
        (0..=top).any(|m| (0..hom_count(n, m) as usize).any(|i| y.act_indexed(n, m, i, 0) != 0))
    }) {
        return Ok(out);
    }
    search(x, y, &slots, 0, &mut comps, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma_cat::{enumerate_homs, DEFAULT_GUARD};

    fn em(n: usize, level: usize) -> TruncatedGammaSet {
        eilenberg_maclane(&PointedMonoid::cyclic(n), level).unwrap()
    }

    fn q9() -> TruncatedGammaSet {
        let h = em(9, 3);
        let sub = Subobject::coordinatewise(&h, &["3", "6"]).unwrap();
        collapse_quotient(&h, &sub).unwrap()
    }

    #[test]
    fn em_levels_and_actions() {
        let h2 = eilenberg_maclane(&PointedMonoid::cyclic(2), 2).unwrap();
        assert_eq!(h2.level_size(2), 4);
        let h6 = em(6, 2);
        let z = h6.index_of(2, "(2,3)").unwrap();
        assert_eq!(h6.label(1, h6.act(&sum_morphism(2), z)), "5");
        assert_eq!(h6.label(1, h6.act(&projection(1, 2).unwrap(), z)), "2");
        assert_eq!(h6.label(1, h6.act(&projection(2, 2).unwrap(), z)), "3");
    }

    #[test]
    fn spherical_actions() {
        let f = f1(3).unwrap();
        assert_eq!(f.labels(3), &["0", "1", "2", "3"]);
        assert_eq!(f1(2).unwrap().labels(1), &["0", "1"]);
        assert_eq!(f1(2).unwrap().labels(0), &["0"]);

        let s = spherical(&PointedSet::with_basepoint(&["a", "b"]), 2).unwrap();
        let a1 = s.index_of(2, "(a,1)").unwrap();
        let a2 = s.index_of(2, "(a,2)").unwrap();
        assert_eq!(s.act(&projection(2, 2).unwrap(), a1), 0);
        assert_eq!(s.label(1, s.act(&sum_morphism(2), a2)), "a");
    }

    #[test]
    fn spherical_on_two_points_is_f1() {
        let s = spherical(&PointedSet::new(vec!["0".into(), "1".into()]).unwrap(), 3).unwrap();
        let f = f1(3).unwrap();
        for n in 0..=3 {
            assert_eq!(s.level_size(n), n + 1);
        }
        for n in 0..=3 {
            for m in 0..=3 {
                for g in enumerate_homs(n, m, DEFAULT_GUARD).unwrap() {
                    assert_eq!(s.action(&g), f.action(&g));
                    // F_1(n+) = n+ and morphisms act by composition
                    for e in 0..=n {
                        assert_eq!(f.act(&g, e), g.apply(e));
                    }
                }
            }
        }
    }

    #[test]
    fn constructors_are_functorial() {
        assert!(validate_functoriality(&f1(3).unwrap()).is_empty());
        assert!(validate_functoriality(&em(6, 2)).is_empty());
        assert!(validate_functoriality(&em(4, 3)).is_empty());
        assert!(validate_functoriality(&terminal(3).unwrap()).is_empty());
        let s = spherical(&PointedSet::with_basepoint(&["a", "b"]), 3).unwrap();
        assert!(validate_functoriality(&s).is_empty());
        assert!(validate_functoriality(&q9()).is_empty());
    }

    #[test]
    fn corrupted_table_is_caught() {
        let h = em(6, 2);
        let mut doc = h.to_json();
        let key = sum_morphism(2).to_string();
        doc.action.get_mut(&key).unwrap().swap(1, 2);
        let bad = TruncatedGammaSet::from_json(&doc).unwrap();
        let report = validate_functoriality(&bad);
        assert!(!report.is_empty());
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::Composition { .. })));
    }

    #[test]
    fn json_roundtrip() {
        let x = q9();
        let doc = x.to_json();
        assert_eq!(doc.schema.as_deref(), Some(SCHEMA));
        let text = serde_json::to_string(&doc).unwrap();
        let back: GammaSetJson = serde_json::from_str(&text).unwrap();
        assert_eq!(TruncatedGammaSet::from_json(&back).unwrap(), x);
    }

    #[test]
    fn json_missing_entry() {
        let mut doc = em(2, 2).to_json();
        doc.action.remove("2>1:[1,1]");
        assert!(TruncatedGammaSet::from_json(&doc).is_err());
    }

    #[test]
    fn quotient_sizes() {
        let q = q9();
        assert_eq!(q.level_size(1), 7);
        assert_eq!(q.labels(1), &["0", "1", "2", "4", "5", "7", "8"]);
        assert_eq!(q.level_size(3), 729 - 27 + 1);
    }

    #[test]
    fn trivial_quotients() {
        let h = em(4, 2);
        let same = collapse_quotient(&h, &Subobject::basepoints(&h)).unwrap();
        assert_eq!(same, h);
        let point = collapse_quotient(&h, &Subobject::full(&h)).unwrap();
        for n in 0..=2 {
            assert_eq!(point.level_size(n), 1);
        }
    }

    #[test]
    fn non_closed_subobject() {
        let h = em(9, 2);
        // {0, 1} is not a submonoid of Z/9: 1 + 1 = 2 escapes
        let sub = Subobject::coordinatewise(&h, &["1"]).unwrap();
        let err = collapse_quotient(&h, &sub).unwrap_err();
        assert!(matches!(err, Error::NotActionClosed { .. }), "{err}");
    }

    #[test]
    fn quotient_map_is_natural() {
        let h = Arc::new(em(9, 3));
        let sub = Subobject::coordinatewise(&h, &["3", "6"]).unwrap();
        let p = quotient_map(h, &sub).unwrap();
        assert!(validate_naturality(&p).is_empty());
    }

    #[test]
    fn identity_and_corrupted_maps() {
        let h = Arc::new(em(4, 2));
        let id = GammaMap::identity(h.clone());
        assert!(validate_naturality(&id).is_empty());
        let mut comps = id.components().to_vec();
        comps[1].swap(1, 3);
        let bad = GammaMap::new(h.clone(), h, comps).unwrap();
        assert!(!validate_naturality(&bad).is_empty());
    }

    #[test]
    fn from_level1_on_f1() {
        let x = Arc::new(f1(2).unwrap());
        let z2 = PointedMonoid::cyclic(2);
        let h = Arc::new(eilenberg_maclane(&z2, 2).unwrap());
        let phi = gamma_map_from_level1(&[0, 1], &x, &h, &z2).unwrap();
        assert!(validate_naturality(&phi).is_empty());
        let lvl2: Vec<&str> = (0..3).map(|e| h.label(2, phi.apply(2, e))).collect();
        assert_eq!(lvl2, vec!["(0,0)", "(1,0)", "(0,1)"]);

        let zero = gamma_map_from_level1(&[0, 0], &x, &h, &z2).unwrap();
        assert!(zero.components().iter().flatten().all(|&v| v == 0));
    }

    #[test]
    fn from_level1_identity_on_em() {
        let z2 = PointedMonoid::cyclic(2);
        let h = Arc::new(eilenberg_maclane(&z2, 2).unwrap());
        let phi = gamma_map_from_level1(&[0, 1], &h, &h, &z2).unwrap();
        assert_eq!(phi, GammaMap::identity(h));
    }

    #[test]
    fn from_level1_rejects_non_additive() {
        let z3 = PointedMonoid::cyclic(3);
        let h = Arc::new(eilenberg_maclane(&z3, 2).unwrap());
        // 1 ↦ 1, 2 ↦ 1 breaks 1 + 1 = 2
        let err = gamma_map_from_level1(&[0, 1, 1], &h, &h, &z3).unwrap_err();
        assert!(matches!(err, Error::NotAdditive { .. }));
        let err = gamma_map_from_level1(&[1, 1, 2], &h, &h, &z3).unwrap_err();
        assert!(matches!(err, Error::NotPointed(_)));
    }

    #[test]
    fn exhaustive_maps_agree_with_level1_count() {
        let z2 = PointedMonoid::cyclic(2);
        let h = Arc::new(eilenberg_maclane(&z2, 2).unwrap());
        let x = Arc::new(f1(2).unwrap());
        let maps = enumerate_gamma_maps(&x, &h, DEFAULT_GUARD).unwrap();
        assert_eq!(maps.len(), 2);
        assert!(maps.iter().all(|m| validate_naturality(m).is_empty()));
        assert_eq!(
            enumerate_gamma_maps(&h, &h, DEFAULT_GUARD).unwrap().len(),
            2
        );
    }
}
