//! Integer matrices, Smith normal form and finitely presented abelian groups.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::gamma_cat::{check_guard, saturating_pow};
use crate::monoid::PointedMonoid;

/// A dense matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds from rows; `cols` is needed when there are no rows.
    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Result<Self> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension(format!(
                "every row must have {cols} entries"
            )));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
            cols,
        )
    }

    pub fn diagonal(rows: usize, cols: usize, entries: &[BigInt]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in entries.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}×{} by {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (o, b) in out.iter_mut().zip(self.row(i)) {
                *o += a * b;
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    /// Fraction-free Gaussian elimination (Bareiss).
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::Dimension(
                "determinant of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for c in 0..self.cols {
                self.data.swap(i * self.cols + c, j * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + i, r * self.cols + j);
            }
        }
    }

    /// row_i += q · row_j
    fn add_row(&mut self, i: usize, j: usize, q: &BigInt) {
        for c in 0..self.cols {
            let v = &self.data[j * self.cols + c] * q;
            self.data[i * self.cols + c] += v;
        }
    }

    /// col_i += q · col_j
    fn add_col(&mut self, i: usize, j: usize, q: &BigInt) {
        for r in 0..self.rows {
            let v = &self.data[r * self.cols + j] * q;
            self.data[r * self.cols + i] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -&self.data[i * self.cols + c];
            self.data[i * self.cols + c] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            let parts: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "[{}]", parts.join(", "))?;
        }
        write!(f, "]")
    }
}

/// `U · A · V = D` with `D` diagonal, nonnegative and a divisibility chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snf {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    /// Number of nonzero diagonal entries.
    pub rank: usize,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

/// Smith normal form with transformation matrices, pivoting on the entry of
/// least absolute value.
pub fn smith_normal_form(a: &IntMatrix) -> Snf {
    let (r, c) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    let mut v_inv = IntMatrix::identity(c);
    let mut rank = 0;

    for t in 0..r.min(c) {
        loop {
            let Some((pi, pj)) = min_entry(&d, t) else {
                return finish(d, u, v, v_inv, rank);
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);

            let pivot = d[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..r {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -d[(i, t)].div_floor(&pivot);
                d.add_row(i, t, &q);
                u.add_row(i, t, &q);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..c {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -d[(t, j)].div_floor(&pivot);
                d.add_col(j, t, &q);
                v.add_col(j, t, &q);
                v_inv.add_row(t, j, &-&q);
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..r)
                .flat_map(|i| (t + 1..c).map(move |j| (i, j)))
                .find(|&(i, j)| !d[(i, j)].is_multiple_of(&pivot));
            match bad {
                Some((i, _)) => {
                    d.add_row(t, i, &BigInt::one());
                    u.add_row(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        rank = t + 1;
    }
    finish(d, u, v, v_inv, rank)
}

fn min_entry(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in t..d.rows {
        for j in t..d.cols {
            let x = d[(i, j)].abs();
            if !x.is_zero() && best.as_ref().is_none_or(|(_, b)| x < *b) {
                best = Some(((i, j), x));
            }
        }
    }
    best.map(|(p, _)| p)
}

fn finish(d: IntMatrix, u: IntMatrix, v: IntMatrix, v_inv: IntMatrix, rank: usize) -> Snf {
    let snf = Snf {
        d,
        u,
        v,
        v_inv,
        rank,
    };
    #[cfg(test)]
    verify_snf_internal(&snf);
    snf
}

#[cfg(test)]
fn verify_snf_internal(s: &Snf) {
    assert!(s.d.is_diagonal());
    let n = s.v.rows;
    assert_eq!(s.v.mul(&s.v_inv).unwrap(), IntMatrix::identity(n));
    assert_eq!(s.u.determinant().unwrap().abs(), BigInt::one());
    let diag = s.diagonal();
    assert!(diag.iter().all(|x| x.is_positive()));
    assert!(diag.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
}

/// Checks `U·A·V = D`, unimodularity, `V·V⁻¹ = I` and the divisibility chain.
pub fn verify_snf(a: &IntMatrix, s: &Snf) -> bool {
    let Ok(uav) = s.u.mul(a).and_then(|ua| ua.mul(&s.v)) else {
        return false;
    };
    let unimodular = |m: &IntMatrix| m.determinant().is_ok_and(|x| x.abs().is_one());
    let diag = s.diagonal();
    uav == s.d
        && s.d.is_diagonal()
        && (s.rank..s.d.rows.min(s.d.cols)).all(|i| s.d[(i, i)].is_zero())
        && diag.iter().all(|x| x.is_positive())
        && diag.windows(2).all(|w| w[1].is_multiple_of(&w[0]))
        && unimodular(&s.u)
        && unimodular(&s.v)
        && s.v.mul(&s.v_inv).ok() == Some(IntMatrix::identity(s.v.rows))
}

/// The abelian group generated by `labels` subject to the rows of
/// `relations`, with its canonical form cached.
///
/// Elements are written in canonical coordinates: one coordinate per
/// invariant factor (reduced into `0..d`), then one per free summand.
#[derive(Debug, Clone)]
pub struct FpAbelianGroup {
    labels: Vec<String>,
    relations: IntMatrix,
    snf: Snf,
    // column of the SNF behind each canonical coordinate, with its modulus
    torsion: Vec<(usize, BigInt)>,
    free: Vec<usize>,
}

impl FpAbelianGroup {
    pub fn new(labels: Vec<String>, relations: IntMatrix) -> Result<Self> {
        if relations.cols != labels.len() {
            return Err(Error::Dimension(format!(
                "{} generators but relations have {} columns",
                labels.len(),
                relations.cols
            )));
        }
        let snf = smith_normal_form(&relations);
        let torsion = (0..snf.rank)
            .filter(|&i| !snf.d[(i, i)].is_one())
            .map(|i| (i, snf.d[(i, i)].clone()))
            .collect();
        let free = (snf.rank..labels.len()).collect();
        Ok(Self {
            labels,
            relations,
            snf,
            torsion,
            free,
        })
    }

    /// `ℤ/n` on one generator `g` (`ℤ` when `n = 0`).
    pub fn cyclic(n: u64) -> Self {
        let rel = if n == 0 {
            IntMatrix::zeros(0, 1)
        } else {
            IntMatrix::from_rows(vec![vec![BigInt::from(n)]], 1).expect("1×1")
        };
        Self::new(vec!["g".into()], rel).expect("consistent dimensions")
    }

    /// `ℤ^r`.
    pub fn free(r: usize) -> Self {
        Self::new(
            (1..=r).map(|i| format!("e{i}")).collect(),
            IntMatrix::zeros(0, r),
        )
        .expect("consistent dimensions")
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn generators(&self) -> usize {
        self.labels.len()
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn snf(&self) -> &Snf {
        &self.snf
    }

    /// `(free rank, invariant factors > 1)`.
    pub fn canonical_invariants(&self) -> (usize, Vec<BigInt>) {
        (
            self.free.len(),
            self.torsion.iter().map(|(_, d)| d.clone()).collect(),
        )
    }

    /// Number of canonical coordinates.
    pub fn dimension(&self) -> usize {
        self.torsion.len() + self.free.len()
    }

    /// Modulus of each canonical coordinate; `0` marks a free coordinate.
    pub fn moduli(&self) -> Vec<BigInt> {
        self.torsion
            .iter()
            .map(|(_, d)| d.clone())
            .chain(self.free.iter().map(|_| BigInt::zero()))
            .collect()
    }

    pub fn is_finite(&self) -> bool {
        self.free.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.dimension() == 0
    }

    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.torsion.iter().map(|(_, d)| d.clone()).product())
    }

    /// Canonical coordinates of the class of `Σ x_a · [a]`.
    pub fn reduce(&self, x: &[BigInt]) -> Vec<BigInt> {
        let y = self.snf.v.left_apply(x);
        self.torsion
            .iter()
            .map(|(i, d)| y[*i].mod_floor(d))
            .chain(self.free.iter().map(|&i| y[i].clone()))
            .collect()
    }

    pub fn reduce_i64(&self, x: &[i64]) -> Vec<BigInt> {
        self.reduce(&x.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>())
    }

    /// Canonical coordinates of the generator `[a]`.
    pub fn generator_class(&self, a: usize) -> Vec<BigInt> {
        let mut x = vec![BigInt::zero(); self.generators()];
        x[a] = BigInt::one();
        self.reduce(&x)
    }

    /// A presentation vector whose class has the given canonical coordinates.
    pub fn lift(&self, canonical: &[BigInt]) -> Vec<BigInt> {
        let mut y = vec![BigInt::zero(); self.generators()];
        for (k, &(i, _)) in self.torsion.iter().enumerate() {
            y[i] = canonical[k].clone();
        }
        for (k, &i) in self.free.iter().enumerate() {
            y[i] = canonical[self.torsion.len() + k].clone();
        }
        self.snf.v_inv.left_apply(&y)
    }

    pub fn is_zero(&self, x: &[BigInt]) -> bool {
        self.reduce(x).iter().all(Zero::is_zero)
    }

    pub fn add(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let sum: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.normalize(&sum)
    }

    /// Reduces canonical coordinates into their ranges.
    pub fn normalize(&self, c: &[BigInt]) -> Vec<BigInt> {
        c.iter()
            .zip(self.moduli())
            .map(|(x, d)| {
                if d.is_zero() {
                    x.clone()
                } else {
                    x.mod_floor(&d)
                }
            })
            .collect()
    }

    /// Every element in canonical coordinates, lexicographically.
    pub fn elements(&self, guard: u64) -> Result<Vec<Vec<BigInt>>> {
        let Some(order) = self.order() else {
            return Err(Error::GuardExceeded {
                requested: u128::MAX,
                guard,
            });
        };
        check_guard_order(&order, guard)?;
        let mut out = vec![vec![]];
        for (_, d) in &self.torsion {
            let d = d.to_u64().expect("guarded");
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<BigInt>| {
                    (0..d).map(move |v| {
                        let mut p = prefix.clone();
                        p.push(BigInt::from(v));
                        p
                    })
                })
                .collect();
        }
        Ok(out)
    }

    /// `ℤ^r ⊕ ℤ/d_1 ⊕ ...`, or `0`.
    pub fn describe(&self) -> String {
        let (r, factors) = self.canonical_invariants();
        let mut parts = Vec::new();
        match r {
            0 => {}
            1 => parts.push("Z".to_string()),
            _ => parts.push(format!("Z^{r}")),
        }
        parts.extend(factors.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl PartialEq for FpAbelianGroup {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.relations == other.relations
    }
}

pub fn is_isomorphic(a: &FpAbelianGroup, b: &FpAbelianGroup) -> bool {
    a.canonical_invariants() == b.canonical_invariants()
}

/// All homomorphisms `G -> M` into a finite abelian group, as tuples of
/// generator images in lexicographic order.
pub fn hom_to_finite(g: &FpAbelianGroup, m: &PointedMonoid, guard: u64) -> Result<Vec<Vec<usize>>> {
    if !m.is_group() || m.unit() != 0 {
        return Err(Error::InvalidMonoid(
            "hom targets must be abelian groups with identity first".into(),
        ));
    }
    let k = m.len();
    let n = g.generators();
    check_guard(saturating_pow(k, n), guard)?;

    // multiples[c][a] = c·a for 0 <= c < |M|
    let mut multiples = vec![vec![0; k]; k];
    for c in 1..k {
        for a in 0..k {
            multiples[c][a] = m.op(multiples[c - 1][a], a);
        }
    }
    let modulus = BigInt::from(k);
    let rels: Vec<Vec<(usize, usize)>> = (0..g.relations.rows)
        .map(|i| {
            g.relations
                .row(i)
                .iter()
                .enumerate()
                .filter_map(|(j, c)| {
                    let c = c.mod_floor(&modulus).to_usize().expect("below |M|");
                    (c != 0).then_some((j, c))
                })
                .collect()
        })
        .collect();
    // relations grouped by the last generator they mention
    let mut due: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for (i, r) in rels.iter().enumerate() {
        due[r.last().map_or(0, |&(j, _)| j + 1)].push(i);
    }
    if !due[0].is_empty() {
        // zero rows impose nothing
        due[0].clear();
    }

    let mut out = Vec::new();
    let mut images = vec![0; n];
    #[allow(clippy::too_many_arguments)]
    fn go(
        pos: usize,
        images: &mut Vec<usize>,
        k: usize,
        rels: &[Vec<(usize, usize)>],
        due: &[Vec<usize>],
        multiples: &[Vec<usize>],
        m: &PointedMonoid,
        out: &mut Vec<Vec<usize>>,
    ) {
        if pos == images.len() {
            out.push(images.clone());
            return;
        }
        for v in 0..k {
            images[pos] = v;
            let ok = due[pos + 1].iter().all(|&r| {
                rels[r]
                    .iter()
                    .fold(0, |acc, &(j, c)| m.op(acc, multiples[c][images[j]]))
                    == 0
            });
            if ok {
                go(pos + 1, images, k, rels, due, multiples, m, out);
            }
        }
    }
    go(0, &mut images, k, &rels, &due, &multiples, m, &mut out);
    Ok(out)
}

/// The Grothendieck group of a finite commutative monoid: generators `[a]`,
/// relations `[a] + [b] - [a+b]` and `[0]`.
pub fn group_completion(m: &PointedMonoid) -> FpAbelianGroup {
    let k = m.len();
    let mut rows = Vec::with_capacity(k * k + 1);
    let mut zero = vec![BigInt::zero(); k];
    zero[m.unit()] = BigInt::one();
    rows.push(zero);
    for a in 0..k {
        for b in a..k {
            let mut r = vec![BigInt::zero(); k];
            r[a] += 1;
            r[b] += 1;
            r[m.op(a, b)] -= 1;
            rows.push(r);
        }
    }
    FpAbelianGroup::new(
        m.elements().to_vec(),
        IntMatrix::from_rows(rows, k).expect("consistent rows"),
    )
    .expect("consistent dimensions")
}

pub(crate) fn check_guard_order(order: &BigInt, guard: u64) -> Result<()> {
    check_guard(order.to_u128().unwrap_or(u128::MAX), guard)
}

/// Formats canonical coordinates as `(c_1,...,c_k)`, or `0` when empty.
pub fn format_element(c: &[BigInt]) -> String {
    if c.is_empty() {
        return "0".into();
    }
    let parts: Vec<String> = c.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma_cat::DEFAULT_GUARD;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// gcd of all k×k minors, the k-th determinantal divisor.
    fn determinantal_divisor(a: &IntMatrix, k: usize) -> BigInt {
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            if n < k {
                return vec![];
            }
            let mut out = subsets(n - 1, k);
            for mut s in subsets(n - 1, k - 1) {
                s.push(n - 1);
                out.push(s);
            }
            out
        }
        let mut g = BigInt::zero();
        for rs in subsets(a.rows(), k) {
            for cs in subsets(a.cols(), k) {
                let minor = IntMatrix::from_rows(
                    rs.iter()
                        .map(|&i| cs.iter().map(|&j| a[(i, j)].clone()).collect())
                        .collect(),
                    k,
                )
                .unwrap();
                g = g.gcd(&minor.determinant().unwrap());
            }
        }
        g
    }

    fn check_against_minors(a: &IntMatrix) {
        let s = smith_normal_form(a);
        assert!(verify_snf(a, &s));
        let diag = s.diagonal();
        let mut prod = BigInt::one();
        for k in 1..=a.rows().min(a.cols()) {
            let dk = determinantal_divisor(a, k);
            if k <= s.rank {
                prod *= &diag[k - 1];
                assert_eq!(prod, dk, "k = {k}");
            } else {
                assert!(dk.is_zero());
            }
        }
    }

    #[test]
    fn snf_examples() {
        let id = IntMatrix::identity(3);
        assert_eq!(smith_normal_form(&id).d, id);
        let s = smith_normal_form(&IntMatrix::from_i64(&[vec![2, 0], vec![0, 3]]).unwrap());
        assert_eq!(s.diagonal(), big(&[1, 6]));
        let s = smith_normal_form(&IntMatrix::from_i64(&[vec![4, 6]]).unwrap());
        assert_eq!(s.d, IntMatrix::from_i64(&[vec![2, 0]]).unwrap());
    }

    #[test]
    fn snf_against_minors() {
        for rows in [
            vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]],
            vec![vec![6, 4], vec![4, 6], vec![2, 2]],
            vec![vec![0, 0, 0], vec![0, 0, 5]],
            vec![vec![12, 18, 30, 42]],
            vec![vec![1, 1, -1], vec![2, 0, 0], vec![0, 2, 0], vec![1, 1, 1]],
        ] {
            check_against_minors(&IntMatrix::from_i64(&rows).unwrap());
        }
    }

    #[test]
    fn empty_matrices() {
        let s = smith_normal_form(&IntMatrix::zeros(0, 3));
        assert_eq!(s.rank, 0);
        assert_eq!(s.v, IntMatrix::identity(3));
        let s = smith_normal_form(&IntMatrix::zeros(2, 0));
        assert_eq!(s.u, IntMatrix::identity(2));
    }

    #[test]
    fn determinant() {
        let m = IntMatrix::from_i64(&[vec![0, 2, 1], vec![3, 1, 0], vec![1, 0, 1]]).unwrap();
        // expansion along the first row: 0 - 2·3 + 1·(-1)
        assert_eq!(m.determinant().unwrap(), BigInt::from(-7));
    }

    #[test]
    fn invariants() {
        let z = FpAbelianGroup::new(vec!["a".into()], IntMatrix::zeros(0, 1)).unwrap();
        assert_eq!(z.canonical_invariants(), (1, vec![]));
        let g = FpAbelianGroup::new(
            vec!["a".into(), "b".into()],
            IntMatrix::from_i64(&[vec![4, 6]]).unwrap(),
        )
        .unwrap();
        assert_eq!(g.canonical_invariants(), (1, big(&[2])));
        assert_eq!(
            FpAbelianGroup::cyclic(6).canonical_invariants(),
            (0, big(&[6]))
        );
        assert_eq!(g.describe(), "Z + Z/2");
    }

    #[test]
    fn isomorphism() {
        let two_three = FpAbelianGroup::new(
            vec!["a".into(), "b".into()],
            IntMatrix::from_i64(&[vec![2, 0], vec![0, 3]]).unwrap(),
        )
        .unwrap();
        assert!(is_isomorphic(&two_three, &FpAbelianGroup::cyclic(6)));
        assert!(!is_isomorphic(
            &FpAbelianGroup::cyclic(0),
            &FpAbelianGroup::cyclic(6)
        ));
        assert!(is_isomorphic(&two_three, &two_three));
    }

    #[test]
    fn reduce_and_lift() {
        let g = FpAbelianGroup::new(
            vec!["a".into(), "b".into(), "c".into()],
            IntMatrix::from_i64(&[vec![2, 4, 0], vec![0, 6, 0]]).unwrap(),
        )
        .unwrap();
        for x in [[1, 0, 0], [0, 1, 0], [3, -2, 5], [2, 4, 0]] {
            let c = g.reduce_i64(&x);
            assert_eq!(g.reduce(&g.lift(&c)), c);
        }
        assert!(g.is_zero(&big(&[2, 4, 0])));
        assert!(!g.is_zero(&big(&[1, 0, 0])));
    }

    #[test]
    fn homs() {
        let z2 = PointedMonoid::cyclic(2);
        let z4 = PointedMonoid::cyclic(4);
        assert_eq!(
            hom_to_finite(&FpAbelianGroup::cyclic(0), &z2, DEFAULT_GUARD)
                .unwrap()
                .len(),
            2
        );
        assert_eq!(
            hom_to_finite(&FpAbelianGroup::cyclic(6), &z4, DEFAULT_GUARD).unwrap(),
            vec![vec![0], vec![2]]
        );
        assert_eq!(
            hom_to_finite(&FpAbelianGroup::cyclic(3), &z4, DEFAULT_GUARD)
                .unwrap()
                .len(),
            1
        );
        assert!(hom_to_finite(
            &FpAbelianGroup::cyclic(3),
            &PointedMonoid::boolean(),
            DEFAULT_GUARD
        )
        .is_err());
    }

    #[test]
    fn completions() {
        assert_eq!(
            group_completion(&PointedMonoid::cyclic(4)).canonical_invariants(),
            (0, big(&[4]))
        );
        assert!(group_completion(&PointedMonoid::boolean()).is_trivial());
        assert!(group_completion(&PointedMonoid::saturating(2)).is_trivial());
        let klein = PointedMonoid::product(&PointedMonoid::cyclic(2), &PointedMonoid::cyclic(2));
        assert_eq!(
            group_completion(&klein).canonical_invariants(),
            (0, big(&[2, 2]))
        );
    }

    #[test]
    fn finite_elements() {
        let g = FpAbelianGroup::new(
            vec!["a".into(), "b".into()],
            IntMatrix::from_i64(&[vec![2, 0], vec![0, 2]]).unwrap(),
        )
        .unwrap();
        assert_eq!(g.elements(DEFAULT_GUARD).unwrap().len(), 4);
        assert!(FpAbelianGroup::cyclic(0).elements(DEFAULT_GUARD).is_err());
        assert_eq!(format_element(&[]), "0");
    }
}
