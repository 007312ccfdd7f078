//! Finite commutative monoids, pointed sets and semirings given by tables.
//!
//! Every structure keeps its distinguished element at index 0: the additive
//! identity for additive monoids, the absorbing element for pointed
//! (multiplicative) monoids, the basepoint for pointed sets. The Γ-set
//! constructors rely on this to place basepoints at index 0.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite pointed set; the basepoint is element 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointedSet {
    pub elements: Vec<String>,
}

impl PointedSet {
    pub fn new(elements: Vec<String>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::InvalidMonoid(
                "a pointed set needs a basepoint".into(),
            ));
        }
        check_distinct(&elements)?;
        Ok(Self { elements })
    }

    /// `{*, labels...}`.
    pub fn with_basepoint(labels: &[&str]) -> Self {
        let mut elements = vec!["*".to_string()];
        elements.extend(labels.iter().map(|s| s.to_string()));
        Self { elements }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

fn check_distinct(labels: &[String]) -> Result<()> {
    let mut seen = HashMap::new();
    for (i, l) in labels.iter().enumerate() {
        if let Some(j) = seen.insert(l.as_str(), i) {
            return Err(Error::InvalidMonoid(format!(
                "label {l:?} repeated at positions {j} and {i}"
            )));
        }
    }
    Ok(())
}

/// A finite commutative monoid given by its operation table.
///
/// Used additively (identity at index 0, `zero` empty) for Eilenberg-MacLane
/// objects, and multiplicatively (absorbing `zero` at index 0) for pointed
/// monoids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedMonoid {
    elements: Vec<String>,
    table: Vec<Vec<usize>>,
    unit: usize,
    zero: Option<usize>,
}

impl PointedMonoid {
    pub fn new(
        elements: Vec<String>,
        table: Vec<Vec<usize>>,
        unit: usize,
        zero: Option<usize>,
    ) -> Result<Self> {
        let n = elements.len();
        if n == 0 {
            return Err(Error::InvalidMonoid("empty carrier".into()));
        }
        check_distinct(&elements)?;
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidMonoid(format!("table must be {n}x{n}")));
        }
        if table.iter().flatten().any(|&v| v >= n) {
            return Err(Error::InvalidMonoid("table entry out of range".into()));
        }
        if unit >= n {
            return Err(Error::InvalidMonoid("unit out of range".into()));
        }
        let name = |i: usize| elements[i].clone();
        for a in 0..n {
            if table[unit][a] != a {
                return Err(Error::InvalidMonoid(format!(
                    "unit law fails at {}",
                    name(a)
                )));
            }
            for b in 0..n {
                if table[a][b] != table[b][a] {
                    return Err(Error::InvalidMonoid(format!(
                        "not commutative at ({}, {})",
                        name(a),
                        name(b)
                    )));
                }
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidMonoid(format!(
                            "not associative at ({}, {}, {})",
                            name(a),
                            name(b),
                            name(c)
                        )));
                    }
                }
            }
        }
        match zero {
            Some(0) => {
                if (0..n).any(|a| table[0][a] != 0) {
                    return Err(Error::InvalidMonoid(format!(
                        "{} is not absorbing",
                        name(0)
                    )));
                }
            }
            Some(z) => {
                return Err(Error::InvalidMonoid(format!(
                    "the absorbing element must come first, found it at {z}"
                )))
            }
            None => {
                if unit != 0 {
                    return Err(Error::InvalidMonoid(
                        "an additive monoid must list its identity first".into(),
                    ));
                }
            }
        }
        Ok(Self {
            elements,
            table,
            unit,
            zero,
        })
    }

    fn from_fn(
        labels: Vec<String>,
        unit: usize,
        zero: Option<usize>,
        op: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let n = labels.len();
        let table = (0..n).map(|a| (0..n).map(|b| op(a, b)).collect()).collect();
        Self::new(labels, table, unit, zero).expect("built-in monoid is valid")
    }

    /// `Z/n` written additively.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "Z/0 is not finite");
        Self::from_fn((0..n).map(|i| i.to_string()).collect(), 0, None, |a, b| {
            (a + b) % n
        })
    }

    /// `{0, 1}` with `1 + 1 = 1`.
    pub fn boolean() -> Self {
        Self::from_fn(vec!["0".into(), "1".into()], 0, None, |a, b| a.max(b))
    }

    /// `{0, ..., cap}` with addition truncated at `cap`.
    pub fn saturating(cap: usize) -> Self {
        Self::from_fn(
            (0..=cap).map(|i| i.to_string()).collect(),
            0,
            None,
            |a, b| (a + b).min(cap),
        )
    }

    /// Direct product of two additive monoids; labels are `"a:b"`.
    pub fn product(left: &PointedMonoid, right: &PointedMonoid) -> Self {
        let (l, r) = (left.len(), right.len());
        let labels = (0..l * r)
            .map(|i| format!("{}:{}", left.elements[i / r], right.elements[i % r]))
            .collect();
        Self::from_fn(labels, left.unit * r + right.unit, None, |a, b| {
            left.op(a / r, b / r) * r + right.op(a % r, b % r)
        })
    }

    /// `{0, 1}` under multiplication: the pointed monoid underlying `F_1`.
    pub fn pointed_unit() -> Self {
        Self::from_fn(vec!["0".into(), "1".into()], 1, Some(0), |a, b| a.min(b))
    }

    /// `{0, 1, -1}`: the group `mu_2` with an absorbing element adjoined.
    pub fn mu2() -> Self {
        let labels = vec!["0".into(), "1".into(), "-1".into()];
        Self::from_fn(labels, 1, Some(0), |a, b| {
            if a == 0 || b == 0 {
                0
            } else if a == b {
                1
            } else {
                2
            }
        })
    }

    /// `{0, 1, t, ..., t^(n-1)}` with `t^n = 1`.
    pub fn pointed_cyclic(n: usize) -> Self {
        assert!(n > 0);
        let mut labels = vec!["0".to_string(), "1".to_string()];
        labels.extend((1..n).map(|k| {
            if k == 1 {
                "t".to_string()
            } else {
                format!("t^{k}")
            }
        }));
        Self::from_fn(labels, 1, Some(0), |a, b| {
            if a == 0 || b == 0 {
                0
            } else {
                (a - 1 + b - 1) % n + 1
            }
        })
    }

    /// `{0, 1, x, ..., x^(k-1)}` with `x^k = 0`.
    pub fn truncated_power(k: usize) -> Self {
        assert!(k > 0);
        let mut labels = vec!["0".to_string(), "1".to_string()];
        labels.extend((1..k).map(|e| {
            if e == 1 {
                "x".to_string()
            } else {
                format!("x^{e}")
            }
        }));
        Self::from_fn(labels, 1, Some(0), |a, b| {
            if a == 0 || b == 0 || a - 1 + b > k {
                0
            } else {
                a - 1 + b - 1 + 1
            }
        })
    }

    /// `{0, 1, e}` with `e * e = e`.
    pub fn idempotent() -> Self {
        Self::from_fn(
            vec!["0".into(), "1".into(), "e".into()],
            1,
            Some(0),
            |a, b| {
                if a == 0 || b == 0 {
                    0
                } else {
                    a.max(b)
                }
            },
        )
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

    pub fn label(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.elements.iter().position(|l| l == label)
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    /// Folds the operation over `items`, starting from the unit.
    pub fn sum<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(self.unit, |acc, x| self.op(acc, x))
    }

    /// Inverse of `a`, when it has one.
    pub fn inverse(&self, a: usize) -> Option<usize> {
        (0..self.len()).find(|&b| self.op(a, b) == self.unit)
    }

    pub fn is_group(&self) -> bool {
        (0..self.len()).all(|a| self.inverse(a).is_some())
    }

    /// `k * a` in an abelian group; negative `k` uses inverses.
    ///
    /// Panics if `k < 0` and `a` has no inverse.
    pub fn multiple(&self, k: &BigInt, a: usize) -> usize {
        let n = self.len();
        let (k, base) = if k.is_negative() {
            let inv = self
                .inverse(a)
                .expect("negative multiple of a non-invertible element");
            let reduced = (-k).mod_floor(&BigInt::from(n)).to_usize().unwrap();
            (reduced, inv)
        } else if self.is_group() {
            (k.mod_floor(&BigInt::from(n)).to_usize().unwrap(), a)
        } else {
            return self.monoid_multiple(k, a);
        };
        (0..k).fold(self.unit, |acc, _| self.op(acc, base))
    }

    fn monoid_multiple(&self, k: &BigInt, a: usize) -> usize {
        let mut seen: HashMap<usize, usize> = HashMap::new();
        let mut seq = vec![self.unit];
        let mut cur = self.unit;
        seen.insert(cur, 0);
        loop {
            let step = seq.len();
            if BigInt::from(step - 1) == *k {
                return cur;
            }
            cur = self.op(cur, a);
            if let Some(&start) = seen.get(&cur) {
                let period = step - start;
                let offset = (k - BigInt::from(start)).mod_floor(&BigInt::from(period));
                return seq[start + offset.to_usize().unwrap()];
            }
            seen.insert(cur, step);
            seq.push(cur);
        }
    }
}

/// A finite commutative semiring; element 0 is the additive identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSemiring {
    add: PointedMonoid,
    mul: PointedMonoid,
}

impl FiniteSemiring {
    pub fn new(
        elements: Vec<String>,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        one: usize,
    ) -> Result<Self> {
        let add = PointedMonoid::new(elements.clone(), add, 0, None)?;
        let mul = PointedMonoid::new(elements, mul, one, Some(0))?;
        let n = add.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul.op(a, add.op(b, c)) != add.op(mul.op(a, b), mul.op(a, c)) {
                        return Err(Error::InvalidMonoid(format!(
                            "distributivity fails at ({}, {}, {})",
                            add.label(a),
                            add.label(b),
                            add.label(c)
                        )));
                    }
                }
            }
        }
        Ok(Self { add, mul })
    }

    /// `Z/n`.
    pub fn zmod(n: usize) -> Self {
        assert!(n > 0);
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let table = |f: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<usize>> {
            (0..n).map(|a| (0..n).map(|b| f(a, b)).collect()).collect()
        };
        let one = if n == 1 { 0 } else { 1 };
        Self::new(
            labels,
            table(&|a, b| (a + b) % n),
            table(&|a, b| (a * b) % n),
            one,
        )
        .expect("Z/n is a ring")
    }

    /// The boolean semiring `{0, 1}` with `1 + 1 = 1`.
    pub fn boolean() -> Self {
        Self::new(
            vec!["0".into(), "1".into()],
            vec![vec![0, 1], vec![1, 1]],
            vec![vec![0, 0], vec![0, 1]],
            1,
        )
        .expect("boolean semiring is valid")
    }

    pub fn len(&self) -> usize {
        self.add.len()
    }

    pub fn is_empty(&self) -> bool {
        self.add.is_empty()
    }

    pub fn additive(&self) -> &PointedMonoid {
        &self.add
    }

    pub fn multiplicative(&self) -> &PointedMonoid {
        &self.mul
    }

    pub fn one(&self) -> usize {
        self.mul.unit()
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add.op(a, b)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul.op(a, b)
    }

    pub fn is_ring(&self) -> bool {
        self.add.is_group()
    }

    pub fn label(&self, i: usize) -> &str {
        self.add.label(i)
    }
}

/// JSON form of a monoid: `{ "elements": [...], "op": [[...]], "unit": i, "zero": j? }`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MonoidJson {
    pub elements: Vec<String>,
    pub op: Vec<Vec<usize>>,
    pub unit: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero: Option<usize>,
}

impl TryFrom<MonoidJson> for PointedMonoid {
    type Error = Error;

    fn try_from(j: MonoidJson) -> Result<Self> {
        PointedMonoid::new(j.elements, j.op, j.unit, j.zero)
    }
}

impl From<&PointedMonoid> for MonoidJson {
    fn from(m: &PointedMonoid) -> Self {
        Self {
            elements: m.elements.clone(),
            op: m.table.clone(),
            unit: m.unit,
            zero: m.zero,
        }
    }
}

/// JSON form of a semiring: `{ "elements", "add", "mul", "one" }`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SemiringJson {
    pub elements: Vec<String>,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    pub one: usize,
}

impl TryFrom<SemiringJson> for FiniteSemiring {
    type Error = Error;

    fn try_from(j: SemiringJson) -> Result<Self> {
        FiniteSemiring::new(j.elements, j.add, j.mul, j.one)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_are_valid() {
        for n in 1..7 {
            assert!(PointedMonoid::cyclic(n).is_group());
        }
        assert!(!PointedMonoid::boolean().is_group());
        assert!(!PointedMonoid::saturating(2).is_group());
        let klein = PointedMonoid::product(&PointedMonoid::cyclic(2), &PointedMonoid::cyclic(2));
        assert_eq!(klein.len(), 4);
        assert!(klein.is_group());
        assert_eq!(PointedMonoid::mu2().op(2, 2), 1);
        let c3 = PointedMonoid::pointed_cyclic(3);
        assert_eq!(c3.elements(), &["0", "1", "t", "t^2"]);
        assert_eq!(c3.op(3, 2), 1);
        assert_eq!(PointedMonoid::truncated_power(2).op(2, 2), 0);
        assert_eq!(PointedMonoid::idempotent().op(2, 2), 2);
    }

    #[test]
    fn rejects_bad_tables() {
        let labels = vec!["0".to_string(), "1".to_string()];
        assert!(PointedMonoid::new(labels.clone(), vec![vec![0, 1], vec![0, 0]], 0, None).is_err());
        assert!(PointedMonoid::new(labels.clone(), vec![vec![0, 1]], 0, None).is_err());
        // absorbing element listed second
        assert!(PointedMonoid::new(labels, vec![vec![0, 1], vec![1, 1]], 0, Some(1)).is_err());
    }

    #[test]
    fn multiples() {
        let z6 = PointedMonoid::cyclic(6);
        assert_eq!(z6.multiple(&BigInt::from(4), 2), 2);
        assert_eq!(z6.multiple(&BigInt::from(-1), 2), 4);
        let sat = PointedMonoid::saturating(2);
        assert_eq!(sat.multiple(&BigInt::from(0), 1), 0);
        assert_eq!(sat.multiple(&BigInt::from(1), 1), 1);
        assert_eq!(sat.multiple(&BigInt::from(7), 1), 2);
    }

    #[test]
    fn semirings() {
        let z6 = FiniteSemiring::zmod(6);
        assert!(z6.is_ring());
        assert_eq!(z6.mul(2, 3), 0);
        assert!(!FiniteSemiring::boolean().is_ring());
    }
}
