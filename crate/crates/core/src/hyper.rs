//! Multivalued sums in Γ-sets, generalized associativity, hyperfield tables
//! and the embedding of plasmas into Γ-sets.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma_cat::{
    check_guard, hom_count, projection, saturating_pow, set_partitions, sum_morphism, GammaMorphism,
};
use crate::gamma_set::{GammaMap, TruncatedGammaSet};
use crate::monoid::PointedMonoid;

/// The value of an n-ary sum together with the level-n elements exhibiting it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SumResult {
    /// Sorted level-1 indices.
    pub sum: Vec<usize>,
    /// Level-n indices `z` with `X(p_i)(z) = a_i`, in level order.
    pub exhibits: Vec<usize>,
}

fn check_arity(x: &TruncatedGammaSet, n: usize) -> Result<()> {
    if n > x.max_level() {
        return Err(Error::Truncation {
            arity: n,
            max_level: x.max_level(),
        });
    }
    Ok(())
}

fn check_level1(x: &TruncatedGammaSet, a: usize) -> Result<()> {
    if a >= x.level_size(1) {
        return Err(Error::IndexOutOfRange {
            index: a,
            level: x.level_size(1) - 1,
        });
    }
    Ok(())
}

/// `⊕ A_i`: the values `X(s_n)(z)` over all `z ∈ X(n+)` whose i-th
/// coordinate lies in `A_i`.
fn scan(x: &TruncatedGammaSet, family: &[&[bool]]) -> SumResult {
    let n = family.len();
    let projs: Vec<usize> = (1..=n)
        .map(|i| projection(i, n).expect("valid projection").index())
        .collect();
    let s = sum_morphism(n).index();
    let mut sum = BTreeSet::new();
    let mut exhibits = Vec::new();
    for z in 0..x.level_size(n) {
        if projs
            .iter()
            .zip(family)
            .all(|(&p, allowed)| allowed[x.act_indexed(n, 1, p, z)])
        {
            sum.insert(x.act_indexed(n, 1, s, z));
            exhibits.push(z);
        }
    }
    SumResult {
        sum: sum.into_iter().collect(),
        exhibits,
    }
}

fn indicator(x: &TruncatedGammaSet, members: &[usize]) -> Result<Vec<bool>> {
    let mut v = vec![false; x.level_size(1)];
    for &a in members {
        check_level1(x, a)?;
        v[a] = true;
    }
    Ok(v)
}

/// `a_1 ⊕ ... ⊕ a_n`. Arity 0 gives the basepoint, arity 1 gives `{a}`.
pub fn nary_sum(x: &TruncatedGammaSet, tuple: &[usize]) -> Result<SumResult> {
    check_arity(x, tuple.len())?;
    let family = tuple
        .iter()
        .map(|&a| indicator(x, &[a]))
        .collect::<Result<Vec<_>>>()?;
    let refs: Vec<&[bool]> = family.iter().map(Vec::as_slice).collect();
    Ok(scan(x, &refs))
}

/// `A_1 ⊕ ... ⊕ A_n`, the union of `nary_sum` over all choices `a_i ∈ A_i`.
pub fn subset_sum(x: &TruncatedGammaSet, family: &[Vec<usize>]) -> Result<Vec<usize>> {
    check_arity(x, family.len())?;
    let family = family
        .iter()
        .map(|a| indicator(x, a))
        .collect::<Result<Vec<_>>>()?;
    let refs: Vec<&[bool]> = family.iter().map(Vec::as_slice).collect();
    Ok(scan(x, &refs).sum)
}

/// Every triple `(a, b, c)` with `c ∈ a ⊕ b`, read off level 2.
pub fn binary_relations(x: &TruncatedGammaSet) -> Vec<(usize, usize, usize)> {
    let p1 = projection(1, 2).expect("valid projection").index();
    let p2 = projection(2, 2).expect("valid projection").index();
    let s = sum_morphism(2).index();
    let triples: BTreeSet<_> = (0..x.level_size(2))
        .map(|z| {
            (
                x.act_indexed(2, 1, p1, z),
                x.act_indexed(2, 1, p2, z),
                x.act_indexed(2, 1, s, z),
            )
        })
        .collect();
    triples.into_iter().collect()
}

/// The full binary sum table `a ⊕ b` of a Γ-set.
pub fn binary_sum_table(x: &TruncatedGammaSet) -> Vec<Vec<Vec<usize>>> {
    let k = x.level_size(1);
    let mut table = vec![vec![Vec::new(); k]; k];
    for (a, b, c) in binary_relations(x) {
        table[a][b].push(c);
    }
    table
}

/// For a Γ-map `f`, returns `f(⊕ A_i)` and `⊕ f(A_i)`; the first is always
/// contained in the second.
pub fn image_of_sum(f: &GammaMap, family: &[Vec<usize>]) -> Result<(Vec<usize>, Vec<usize>)> {
    let g = f.component(1);
    let source = subset_sum(f.source(), family)?;
    let image: BTreeSet<usize> = source.iter().map(|&c| g[c]).collect();
    let mapped: Vec<Vec<usize>> = family
        .iter()
        .map(|a| {
            let s: BTreeSet<usize> = a.iter().map(|&x| g[x]).collect();
            s.into_iter().collect()
        })
        .collect();
    Ok((
        image.into_iter().collect(),
        subset_sum(f.target(), &mapped)?,
    ))
}

/// A binary parenthesization of `a_1, ..., a_n`, leaves in order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Shape {
    Leaf,
    Node(Box<Shape>, Box<Shape>),
}

impl Shape {
    pub fn node(left: Shape, right: Shape) -> Shape {
        Shape::Node(Box::new(left), Box::new(right))
    }

    pub fn leaves(&self) -> usize {
        match self {
            Shape::Leaf => 1,
            Shape::Node(l, r) => l.leaves() + r.leaves(),
        }
    }

    /// `((a b) c) ...`
    pub fn left_comb(n: usize) -> Shape {
        (1..n.max(1)).fold(Shape::Leaf, |acc, _| Shape::node(acc, Shape::Leaf))
    }

    /// All `Catalan(n - 1)` shapes with `n >= 1` leaves.
    pub fn all(n: usize) -> Vec<Shape> {
        if n <= 1 {
            return vec![Shape::Leaf];
        }
        let mut out = Vec::new();
        for k in 1..n {
            for l in Shape::all(k) {
                for r in Shape::all(n - k) {
                    out.push(Shape::node(l.clone(), r));
                }
            }
        }
        out
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, next: &mut usize) -> fmt::Result {
        match self {
            Shape::Leaf => {
                *next += 1;
                write!(f, "{}", *next)
            }
            Shape::Node(l, r) => {
                write!(f, "(")?;
                l.write(f, next)?;
                write!(f, ",")?;
                r.write(f, next)?;
                write!(f, ")")
            }
        }
    }
}

/// Written with numbered leaves, e.g. `((1,2),3)`.
impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, &mut 0)
    }
}

impl FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let mut next = 0;
        let shape = parse_shape(&chars, &mut pos, &mut next)?;
        if pos != chars.len() {
            return Err(Error::InvalidShape(format!("trailing input in {s:?}")));
        }
        Ok(shape)
    }
}

fn parse_shape(c: &[char], pos: &mut usize, next: &mut usize) -> Result<Shape> {
    match c.get(*pos) {
        Some('(') => {
            *pos += 1;
            let l = parse_shape(c, pos, next)?;
            if c.get(*pos) != Some(&',') {
                return Err(Error::InvalidShape(format!("expected ',' at {}", *pos)));
            }
            *pos += 1;
            let r = parse_shape(c, pos, next)?;
            if c.get(*pos) != Some(&')') {
                return Err(Error::InvalidShape(format!("expected ')' at {}", *pos)));
            }
            *pos += 1;
            Ok(Shape::node(l, r))
        }
        Some(d) if d.is_ascii_digit() => {
            let start = *pos;
            while c.get(*pos).is_some_and(|d| d.is_ascii_digit()) {
                *pos += 1;
            }
            let text: String = c[start..*pos].iter().collect();
            let leaf: usize = text
                .parse()
                .map_err(|_| Error::InvalidShape(format!("bad leaf {text}")))?;
            *next += 1;
            if leaf != *next {
                return Err(Error::InvalidShape(format!(
                    "leaf {leaf} out of order, expected {next}"
                )));
            }
            Ok(Shape::Leaf)
        }
        other => Err(Error::InvalidShape(format!(
            "unexpected {other:?} at {}",
            *pos
        ))),
    }
}

/// Folds binary subset sums over `shape`.
pub fn iterated_binary(
    x: &TruncatedGammaSet,
    tuple: &[usize],
    shape: &Shape,
) -> Result<Vec<usize>> {
    if shape.leaves() != tuple.len() {
        return Err(Error::InvalidShape(format!(
            "shape has {} leaves for a tuple of length {}",
            shape.leaves(),
            tuple.len()
        )));
    }
    fn eval(x: &TruncatedGammaSet, tuple: &[usize], shape: &Shape) -> Result<Vec<usize>> {
        match shape {
            Shape::Leaf => {
                check_level1(x, tuple[0])?;
                Ok(vec![tuple[0]])
            }
            Shape::Node(l, r) => {
                let k = l.leaves();
                let left = eval(x, &tuple[..k], l)?;
                let right = eval(x, &tuple[k..], r)?;
                subset_sum(x, &[left, right])
            }
        }
    }
    eval(x, tuple, shape)
}

/// Outcome of comparing an n-ary sum with the sum over a partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssocCheck {
    pub lhs: Vec<usize>,
    pub rhs: Vec<usize>,
    pub inclusion: bool,
    pub equality: bool,
}

/// Compares `⊕ a_i` with `⊕_j (⊕_{i ∈ B_j} a_i)` for a partition of the
/// 1-based positions `1..=n` into blocks `B_j`.
pub fn check_generalized_associativity(
    x: &TruncatedGammaSet,
    tuple: &[usize],
    partition: &[Vec<usize>],
) -> Result<AssocCheck> {
    let n = tuple.len();
    let mut seen = vec![false; n + 1];
    for block in partition {
        if block.is_empty() {
            return Err(Error::InvalidPartition("empty block".into()));
        }
        for &i in block {
            if i == 0 || i > n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidPartition(format!(
                    "position {i} is out of range or repeated"
                )));
            }
        }
    }
    if seen[1..].iter().any(|s| !s) {
        return Err(Error::InvalidPartition(
            "blocks do not cover every position".into(),
        ));
    }
    let lhs = nary_sum(x, tuple)?.sum;
    let inner = partition
        .iter()
        .map(|b| {
            let sub: Vec<usize> = b.iter().map(|&i| tuple[i - 1]).collect();
            nary_sum(x, &sub).map(|r| r.sum)
        })
        .collect::<Result<Vec<_>>>()?;
    let rhs = subset_sum(x, &inner)?;
    let inclusion = lhs.iter().all(|c| rhs.binary_search(c).is_ok());
    let equality = lhs == rhs;
    Ok(AssocCheck {
        lhs,
        rhs,
        inclusion,
        equality,
    })
}

/// Default number of tuples sampled per arity in associativity sweeps.
pub const SWEEP_CAP: usize = 2000;

/// Counts from an associativity sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepSummary {
    pub tuples: usize,
    pub checks: usize,
    pub strict: usize,
    pub violations: usize,
}

/// Checks every partition of every tuple of arity `1..=max_arity` over
/// level 1. Arities with more than `cap` tuples are sampled down to `cap`
/// tuples with a ChaCha8 stream seeded by `seed`.
pub fn sweep_associativity(
    x: &TruncatedGammaSet,
    max_arity: usize,
    cap: usize,
    seed: u64,
) -> Result<SweepSummary> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = x.level_size(1);
    let mut s = SweepSummary {
        tuples: 0,
        checks: 0,
        strict: 0,
        violations: 0,
    };
    for n in 1..=max_arity.min(x.max_level()) {
        let total = k.checked_pow(n as u32).unwrap_or(usize::MAX);
        let mut picks: Vec<usize> = if total <= cap {
            (0..total).collect()
        } else {
            sample(&mut rng, total, cap).into_vec()
        };
        picks.sort_unstable();
        let partitions = set_partitions(n);
        for p in picks {
            let tuple = crate::gamma_set::em_decode(k, n, p);
            s.tuples += 1;
            for part in &partitions {
                let r = check_generalized_associativity(x, &tuple, part)?;
                s.checks += 1;
                s.violations += usize::from(!r.inclusion);
                s.strict += usize::from(r.inclusion && !r.equality);
            }
        }
    }
    Ok(s)
}

/// Whether a level-1 assignment `g: X(1+) -> M` satisfies
/// `g(X(s_n)z) = Σ g(X(p_i)z)` for every `z` at every stored level.
pub fn preserves_sums(x: &TruncatedGammaSet, g: &[usize], monoid: &PointedMonoid) -> bool {
    (0..=x.max_level()).all(|n| {
        (0..x.level_size(n)).all(|z| {
            let total = if n == 0 { 0 } else { x.total(n, z) };
            g[total] == monoid.sum(x.coordinates(n, z).into_iter().map(|c| g[c]))
        })
    })
}

/// A commutative, weakly unital binary hyper-operation on a finite set with
/// the zero listed first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperOpTable {
    elements: Vec<String>,
    table: Vec<Vec<Vec<usize>>>,
}

impl HyperOpTable {
    pub fn new(elements: Vec<String>, table: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let k = elements.len();
        if k == 0 {
            return Err(Error::InvalidTable("no elements".into()));
        }
        if elements.iter().collect::<BTreeSet<_>>().len() != k {
            return Err(Error::InvalidTable("repeated element".into()));
        }
        if table.len() != k || table.iter().any(|r| r.len() != k) {
            return Err(Error::InvalidTable(format!("table is not {k}×{k}")));
        }
        let mut table = table;
        for row in table.iter_mut() {
            for cell in row.iter_mut() {
                if cell.iter().any(|&c| c >= k) {
                    return Err(Error::InvalidTable("entry out of range".into()));
                }
                cell.sort_unstable();
                cell.dedup();
            }
        }
        for a in 0..k {
            if table[0][a] != [a] {
                return Err(Error::InvalidTable(format!(
                    "0 ⊕ {} is not {{{}}}",
                    elements[a], elements[a]
                )));
            }
            for b in 0..a {
                if table[a][b] != table[b][a] {
                    return Err(Error::InvalidTable(format!(
                        "{} ⊕ {} is not commutative",
                        elements[a], elements[b]
                    )));
                }
            }
        }
        Ok(Self { elements, table })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn label(&self, a: usize) -> &str {
        &self.elements[a]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == label)
    }

    pub fn table(&self) -> &[Vec<Vec<usize>>] {
        &self.table
    }

    /// `a ⊕ b`, sorted.
    pub fn sum(&self, a: usize, b: usize) -> &[usize] {
        &self.table[a][b]
    }

    /// n-ary operation as the union over every binary parenthesization.
    pub fn nary(&self, tuple: &[usize]) -> Vec<usize> {
        if tuple.is_empty() {
            return vec![0];
        }
        let mut out = BTreeSet::new();
        for shape in Shape::all(tuple.len()) {
            out.extend(self.eval(tuple, &shape));
        }
        out.into_iter().collect()
    }

    fn eval(&self, tuple: &[usize], shape: &Shape) -> BTreeSet<usize> {
        match shape {
            Shape::Leaf => BTreeSet::from([tuple[0]]),
            Shape::Node(l, r) => {
                let k = l.leaves();
                let left = self.eval(&tuple[..k], l);
                let right = self.eval(&tuple[k..], r);
                let mut out = BTreeSet::new();
                for &a in &left {
                    for &b in &right {
                        out.extend(self.table[a][b].iter().copied());
                    }
                }
                out
            }
        }
    }

    pub fn to_json(&self) -> HyperOpJson {
        HyperOpJson {
            elements: self.elements.clone(),
            table: self.table.clone(),
        }
    }
}

/// `{ "elements": [...], "table": [[[indices]]] }`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperOpJson {
    pub elements: Vec<String>,
    pub table: Vec<Vec<Vec<usize>>>,
}

impl TryFrom<HyperOpJson> for HyperOpTable {
    type Error = Error;

    fn try_from(j: HyperOpJson) -> Result<Self> {
        HyperOpTable::new(j.elements, j.table)
    }
}

fn labels(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

/// The Krasner hyperfield `{0, 1}` with `1 ⊕ 1 = {0, 1}`.
pub fn krasner() -> HyperOpTable {
    HyperOpTable::new(
        labels(&["0", "1"]),
        vec![vec![vec![0], vec![1]], vec![vec![1], vec![0, 1]]],
    )
    .expect("valid table")
}

/// The sign hyperfield `{0, 1, -1}` with `1 ⊕ -1 = {-1, 0, 1}`.
pub fn sign_hyperfield() -> HyperOpTable {
    HyperOpTable::new(
        labels(&["0", "1", "-1"]),
        vec![
            vec![vec![0], vec![1], vec![2]],
            vec![vec![1], vec![1], vec![0, 1, 2]],
            vec![vec![2], vec![0, 1, 2], vec![2]],
        ],
    )
    .expect("valid table")
}

/// `{0, 1}` with `1 ⊕ 1 = ∅`.
pub fn f_one_hyperfield() -> HyperOpTable {
    HyperOpTable::new(
        labels(&["0", "1"]),
        vec![vec![vec![0], vec![1]], vec![vec![1], vec![]]],
    )
    .expect("valid table")
}

/// Embeds a plasma as the Γ-set whose level `n` consists of families
/// `(x_S)` over subsets `S ⊆ {1..n}` with `x_∅ = 0` and
/// `x_{S∪T} ∈ x_S ⊕ x_T` for disjoint `S, T`. A morphism `f` acts by
/// `(x_S) ↦ (x_{f⁻¹(T)})`.
///
/// Families are stored over the nonempty subsets in bitmask order; level
/// labels list `x_S` in that order.
pub fn plasma_embedding(
    table: &HyperOpTable,
    max_level: usize,
    guard: u64,
) -> Result<TruncatedGammaSet> {
    if max_level < 2 {
        return Err(Error::LevelTooLow(max_level));
    }
    if max_level >= usize::BITS as usize - 1 {
        return Err(Error::GuardExceeded {
            requested: u128::MAX,
            guard,
        });
    }
    check_guard(
        saturating_pow(table.len(), (1usize << max_level) - 1),
        guard,
    )?;

    let mut levels: Vec<Vec<Vec<usize>>> = Vec::with_capacity(max_level + 1);
    for n in 0..=max_level {
        levels.push(admissible_families(table, n));
    }
    let lookup: Vec<HashMap<&[usize], usize>> = levels
        .iter()
        .map(|fams| {
            fams.iter()
                .enumerate()
                .map(|(i, f)| (f.as_slice(), i))
                .collect()
        })
        .collect();
    let names = levels
        .iter()
        .enumerate()
        .map(|(n, fams)| {
            fams.iter()
                .map(|fam| {
                    let parts: Vec<&str> = fam.iter().map(|&v| table.label(v)).collect();
                    match n {
                        1 => parts[0].to_string(),
                        _ => format!("({})", parts.join(",")),
                    }
                })
                .collect()
        })
        .collect();

    // preimage masks for every morphism, computed on demand
    let mut preimages: HashMap<GammaMorphism, Vec<usize>> = HashMap::new();
    for n in 0..=max_level {
        for m in 0..=max_level {
            for idx in 0..hom_count(n, m) as usize {
                let f = GammaMorphism::from_index(n, m, idx);
                let masks = (1..1usize << m)
                    .map(|t| {
                        (0..n)
                            .filter(|&i| f.images()[i] != 0 && t >> (f.images()[i] - 1) & 1 == 1)
                            .fold(0, |acc, i| acc | 1 << i)
                    })
                    .collect();
                preimages.insert(f, masks);
            }
        }
    }

    TruncatedGammaSet::from_fn(max_level, names, |f, x| {
        let fam = &levels[f.source()][x];
        let image: Vec<usize> = preimages[f]
            .iter()
            .map(|&s| if s == 0 { 0 } else { fam[s - 1] })
            .collect();
        lookup[f.target()][image.as_slice()]
    })
}

/// Admissible families at level `n`, listed lexicographically in mask order
/// so that the all-zero family comes first.
fn admissible_families(table: &HyperOpTable, n: usize) -> Vec<Vec<usize>> {
    let subsets = (1usize << n) - 1;
    let mut out = Vec::new();
    let mut fam = vec![0usize; subsets];
    fn go(
        table: &HyperOpTable,
        mask: usize,
        subsets: usize,
        fam: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if mask > subsets {
            out.push(fam.clone());
            return;
        }
        // all splits of `mask` into two disjoint nonempty parts were assigned earlier
        let allowed = |v: usize, fam: &[usize]| {
            let mut s = (mask - 1) & mask;
            while s > 0 {
                let t = mask & !s;
                if !table.sum(fam[s - 1], fam[t - 1]).contains(&v) {
                    return false;
                }
                s = (s - 1) & mask;
            }
            true
        };
        for v in 0..table.len() {
            if allowed(v, fam) {
                fam[mask - 1] = v;
                go(table, mask + 1, subsets, fam, out);
            }
        }
        fam[mask - 1] = 0;
    }
    go(table, 1, subsets, &mut fam, &mut out);
    out
}
