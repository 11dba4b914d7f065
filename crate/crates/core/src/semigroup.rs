//! Finite semigroups given by Cayley tables.
//!
//! A [`CayleyTable`] is validated once (totality, associativity) and is
//! immutable afterwards. Everything else in this module is first-order data
//! derived from the table: idempotents, Green's and tilde classes, the sets
//! of idempotent one-sided identities, the kernels they generate, and the
//! `s*` / `s+` maps of a singleton-rich semigroup.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

/// Position of an element in the declared element list.
pub type ElementId = usize;

/// Label used for the zero element implied by `.` entries.
pub const IMPLICIT_ZERO_LABEL: &str = "0";

/// Token standing for the zero element in raw tables.
pub const ZERO_TOKEN: &str = ".";

/// Which one-sided identities an error refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    /// Idempotent right identities, `se = s` (the `s*` side).
    Right,
    /// Idempotent left identities, `es = s` (the `s+` side).
    Left,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Right => f.write_str("right"),
            Side::Left => f.write_str("left"),
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: String, b: String, c: String },
    #[error("not singleton-rich: the {side} kernel of element {element} has {} elements", kernel.len())]
    NotSingletonRich {
        element: ElementId,
        side: Side,
        kernel: Vec<ElementId>,
    },
    #[error("element {element} has no idempotent {side} identity")]
    EmptyPhiSet { element: ElementId, side: Side },
}

/// The relations whose classes [`CayleyTable::green_partition`] can compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GreenKind {
    R,
    L,
    H,
    J,
    TildeL,
    TildeR,
    TildeH,
}

impl GreenKind {
    pub const ALL: [GreenKind; 7] = [
        GreenKind::R,
        GreenKind::L,
        GreenKind::H,
        GreenKind::J,
        GreenKind::TildeL,
        GreenKind::TildeR,
        GreenKind::TildeH,
    ];
}

impl fmt::Display for GreenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GreenKind::R => "R",
            GreenKind::L => "L",
            GreenKind::H => "H",
            GreenKind::J => "J",
            GreenKind::TildeL => "tildeL",
            GreenKind::TildeR => "tildeR",
            GreenKind::TildeH => "tildeH",
        };
        f.write_str(s)
    }
}

/// A partition of the elements into the classes of one relation.
///
/// Classes are sorted internally and listed by their smallest member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GreenPartition {
    pub kind: GreenKind,
    pub classes: Vec<Vec<ElementId>>,
}

impl GreenPartition {
    fn from_keys<K: Ord>(kind: GreenKind, keys: Vec<K>) -> Self {
        let mut by_key: BTreeMap<K, Vec<ElementId>> = BTreeMap::new();
        for (s, k) in keys.into_iter().enumerate() {
            by_key.entry(k).or_default().push(s);
        }
        let mut classes: Vec<Vec<ElementId>> = by_key.into_values().collect();
        classes.sort_by_key(|c| c[0]);
        GreenPartition { kind, classes }
    }

    pub fn class_of(&self, s: ElementId) -> &[ElementId] {
        self.classes
            .iter()
            .find(|c| c.contains(&s))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }
}

/// The `s -> s*` and `s -> s+` maps of a singleton-rich semigroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarPlus {
    star: Vec<ElementId>,
    plus: Vec<ElementId>,
}

impl StarPlus {
    /// The unique element of the kernel generated by the right identities of `s`.
    pub fn star(&self, s: ElementId) -> ElementId {
        self.star[s]
    }

    /// The unique element of the kernel generated by the left identities of `s`.
    pub fn plus(&self, s: ElementId) -> ElementId {
        self.plus[s]
    }
}

/// A finite semigroup stored as its full multiplication table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CayleyTable {
    names: Vec<String>,
    mul: Vec<ElementId>,
    zero: Option<ElementId>,
}

/// Default labels for tables built from raw indices: `a`, `b`, ... and then `e26`, `e27`, ...
pub fn default_label(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("e{i}")
    }
}

impl CayleyTable {
    /// Builds a table from labels and rows of element indices.
    pub fn new(names: Vec<String>, rows: Vec<Vec<ElementId>>) -> Result<Self, SemigroupError> {
        let n = names.len();
        if n == 0 {
            return Err(SemigroupError::MalformedTable("empty element list".into()));
        }
        let mut seen = BTreeSet::new();
        for name in &names {
            if name.is_empty() || !seen.insert(name.as_str()) {
                return Err(SemigroupError::MalformedTable(format!(
                    "duplicate or empty label {name:?}"
                )));
            }
        }
        if rows.len() != n {
            return Err(SemigroupError::MalformedTable(format!(
                "expected {n} rows, found {}",
                rows.len()
            )));
        }
        let mut mul = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(SemigroupError::MalformedTable(format!(
                    "row {} has {} entries, expected {n}",
                    names[i],
                    row.len()
                )));
            }
            for &v in row {
                if v >= n {
                    return Err(SemigroupError::MalformedTable(format!(
                        "entry {v} out of range in row {}",
                        names[i]
                    )));
                }
                mul.push(v);
            }
        }
        Self::from_parts(names, mul)
    }

    /// Builds a table with default labels from a row-major product array.
    pub fn from_flat(n: usize, mul: Vec<ElementId>) -> Result<Self, SemigroupError> {
        if n == 0 || mul.len() != n * n {
            return Err(SemigroupError::MalformedTable(format!(
                "flat table of length {} is not {n}x{n}",
                mul.len()
            )));
        }
        if mul.iter().any(|&v| v >= n) {
            return Err(SemigroupError::MalformedTable("entry out of range".into()));
        }
        Self::from_parts((0..n).map(default_label).collect(), mul)
    }

    /// Validates labelled token rows. A `.` token anywhere denotes the zero
    /// element: it is appended to the universe with label `0`, and its row
    /// and column are filled with itself.
    pub fn validate(labels: &[String], rows: &[Vec<String>]) -> Result<Self, SemigroupError> {
        let n = labels.len();
        if n == 0 {
            return Err(SemigroupError::MalformedTable("empty element list".into()));
        }
        if rows.len() != n {
            return Err(SemigroupError::MalformedTable(format!(
                "expected {n} rows, found {}",
                rows.len()
            )));
        }
        let implicit_zero = rows.iter().flatten().any(|tok| tok == ZERO_TOKEN);
        let mut names: Vec<String> = labels.to_vec();
        if implicit_zero {
            if names.iter().any(|l| l == IMPLICIT_ZERO_LABEL) {
                return Err(SemigroupError::MalformedTable(
                    "label 0 is reserved for the implicit zero".into(),
                ));
            }
            names.push(IMPLICIT_ZERO_LABEL.to_string());
        }
        let index: BTreeMap<&str, ElementId> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        if index.len() != n || labels.iter().any(|l| l == ZERO_TOKEN || l.is_empty()) {
            return Err(SemigroupError::MalformedTable(
                "labels must be distinct, non-empty and not '.'".into(),
            ));
        }
        let total = names.len();
        let mut full_rows = Vec::with_capacity(total);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(SemigroupError::MalformedTable(format!(
                    "row {} has {} entries, expected {n}",
                    labels[i],
                    row.len()
                )));
            }
            let mut out = Vec::with_capacity(total);
            for tok in row {
                let v = if tok == ZERO_TOKEN {
                    n
                } else {
                    *index.get(tok.as_str()).ok_or_else(|| {
                        SemigroupError::MalformedTable(format!("unknown label {tok:?}"))
                    })?
                };
                out.push(v);
            }
            if implicit_zero {
                out.push(n);
            }
            full_rows.push(out);
        }
        if implicit_zero {
            full_rows.push(vec![n; total]);
        }
        let table = Self::new(names, full_rows)?;
        if implicit_zero {
            debug_assert_eq!(table.zero, Some(n));
        }
        Ok(table)
    }

    fn from_parts(names: Vec<String>, mul: Vec<ElementId>) -> Result<Self, SemigroupError> {
        let n = names.len();
        let mut table = CayleyTable {
            names,
            mul,
            zero: None,
        };
        if let Some((a, b, c)) = table.associativity_violation() {
            return Err(SemigroupError::NotAssociative {
                a: table.names[a].clone(),
                b: table.names[b].clone(),
                c: table.names[c].clone(),
            });
        }
        // A one-element semigroup is treated as zero-free: its contracted
        // algebra would be zero-dimensional.
        if n >= 2 {
            table.zero = (0..n).find(|&z| (0..n).all(|s| table.mul(z, s) == z && table.mul(s, z) == z));
        }
        Ok(table)
    }

    /// First triple (in lexicographic order) with `(ab)c != a(bc)`.
    pub fn associativity_violation(&self) -> Option<(ElementId, ElementId, ElementId)> {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        self.mul[a * self.names.len() + b]
    }

    /// Left-to-right product of a non-empty word.
    pub fn product(&self, word: &[ElementId]) -> ElementId {
        let (first, rest) = word.split_first().expect("empty word");
        rest.iter().fold(*first, |acc, &x| self.mul(acc, x))
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, s: ElementId) -> &str {
        &self.names[s]
    }

    pub fn index_of(&self, label: &str) -> Option<ElementId> {
        self.names.iter().position(|n| n == label)
    }

    pub fn zero(&self) -> Option<ElementId> {
        self.zero
    }

    pub fn elements(&self) -> std::ops::Range<ElementId> {
        0..self.len()
    }

    /// Row-major product array.
    pub fn flat(&self) -> &[ElementId] {
        &self.mul
    }

    pub fn rows(&self) -> Vec<Vec<ElementId>> {
        self.mul.chunks(self.len()).map(<[_]>::to_vec).collect()
    }

    /// Two-sided identity element, if any.
    pub fn identity(&self) -> Option<ElementId> {
        let n = self.len();
        (0..n).find(|&e| (0..n).all(|s| self.mul(e, s) == s && self.mul(s, e) == s))
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The opposite semigroup, `a *op b = b * a`.
    pub fn transpose(&self) -> CayleyTable {
        let n = self.len();
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[b * n + a] = self.mul(a, b);
            }
        }
        CayleyTable {
            names: self.names.clone(),
            mul,
            zero: self.zero,
        }
    }

    /// Relabels element `i` as `perm[i]`.
    pub fn relabeled(&self, perm: &[ElementId]) -> CayleyTable {
        let n = self.len();
        assert_eq!(perm.len(), n);
        let mut mul = vec![0; n * n];
        let mut names = vec![String::new(); n];
        for a in 0..n {
            names[perm[a]] = self.names[a].clone();
            for b in 0..n {
                mul[perm[a] * n + perm[b]] = perm[self.mul(a, b)];
            }
        }
        CayleyTable {
            names,
            mul,
            zero: self.zero.map(|z| perm[z]),
        }
    }

    #[inline]
    pub fn is_idempotent(&self, e: ElementId) -> bool {
        self.mul(e, e) == e
    }

    /// `E(S)`, in element order. Includes the zero when present.
    pub fn idempotents(&self) -> Vec<ElementId> {
        self.elements().filter(|&e| self.is_idempotent(e)).collect()
    }

    /// The unique idempotent power of `s`.
    pub fn omega_power(&self, s: ElementId) -> ElementId {
        let mut p = s;
        // the powers s, s^2, ... reach the idempotent within |S| steps
        for _ in 0..=self.len() {
            if self.is_idempotent(p) {
                return p;
            }
            p = self.mul(p, s);
        }
        unreachable!("finite semigroup without idempotent power")
    }

    /// Natural order on idempotents: `e <= f` iff `ef = fe = e`.
    pub fn natural_leq(&self, e: ElementId, f: ElementId) -> bool {
        self.mul(e, f) == e && self.mul(f, e) == e
    }

    /// `(phi*(s), phi+(s))`: idempotent right and left identities of `s`.
    pub fn phi_sets(&self, s: ElementId) -> (Vec<ElementId>, Vec<ElementId>) {
        let idem = self.idempotents();
        let right = idem.iter().copied().filter(|&e| self.mul(s, e) == s).collect();
        let left = idem.iter().copied().filter(|&e| self.mul(e, s) == s).collect();
        (right, left)
    }

    /// Subsemigroup generated by `gens`, sorted.
    pub fn generated(&self, gens: &[ElementId]) -> Vec<ElementId> {
        let mut set: BTreeSet<ElementId> = gens.iter().copied().collect();
        let mut frontier: Vec<ElementId> = set.iter().copied().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            let current: Vec<ElementId> = set.iter().copied().collect();
            for &a in &frontier {
                for &b in &current {
                    for p in [self.mul(a, b), self.mul(b, a)] {
                        if set.insert(p) {
                            next.push(p);
                        }
                    }
                }
            }
            frontier = next;
        }
        set.into_iter().collect()
    }

    /// Minimal two-sided ideal of the subsemigroup `t` (closed under products).
    fn kernel_of(&self, t: &[ElementId]) -> Vec<ElementId> {
        // kernel = intersection over y of T y T
        let mut kernel: BTreeSet<ElementId> = t.iter().copied().collect();
        for &y in t {
            let mut ideal = BTreeSet::new();
            for &a in t {
                let ay = self.mul(a, y);
                for &b in t {
                    ideal.insert(self.mul(ay, b));
                }
            }
            kernel = kernel.intersection(&ideal).copied().collect();
        }
        kernel.into_iter().collect()
    }

    /// Kernel of the subsemigroup generated by a non-empty set.
    pub fn kernel_of_generated(&self, gens: &[ElementId]) -> Vec<ElementId> {
        assert!(!gens.is_empty(), "kernel of the empty subsemigroup");
        self.kernel_of(&self.generated(gens))
    }

    /// `(s**, s++)` as sets, or which side has no idempotent identity.
    pub fn star_plus_kernels(
        &self,
        s: ElementId,
    ) -> Result<(Vec<ElementId>, Vec<ElementId>), SemigroupError> {
        let (right, left) = self.phi_sets(s);
        if right.is_empty() {
            return Err(SemigroupError::EmptyPhiSet { element: s, side: Side::Right });
        }
        if left.is_empty() {
            return Err(SemigroupError::EmptyPhiSet { element: s, side: Side::Left });
        }
        Ok((self.kernel_of_generated(&right), self.kernel_of_generated(&left)))
    }

    /// The `s*` and `s+` maps; fails unless every kernel is a singleton.
    pub fn star_plus(&self) -> Result<StarPlus, SemigroupError> {
        let n = self.len();
        let mut star = Vec::with_capacity(n);
        let mut plus = Vec::with_capacity(n);
        for s in 0..n {
            let (rk, lk) = self.star_plus_kernels(s)?;
            if rk.len() != 1 {
                return Err(SemigroupError::NotSingletonRich { element: s, side: Side::Right, kernel: rk });
            }
            if lk.len() != 1 {
                return Err(SemigroupError::NotSingletonRich { element: s, side: Side::Left, kernel: lk });
            }
            star.push(rk[0]);
            plus.push(lk[0]);
        }
        Ok(StarPlus { star, plus })
    }

    pub fn is_singleton_rich(&self) -> bool {
        self.star_plus().is_ok()
    }

    /// Classes of one of Green's relations, or of a tilde relation.
    pub fn green_partition(&self, kind: GreenKind) -> GreenPartition {
        let n = self.len();
        // right ideal aS^1 = {a} u aS, and duals
        let right = |a: ElementId| -> BTreeSet<ElementId> {
            std::iter::once(a).chain((0..n).map(|x| self.mul(a, x))).collect()
        };
        let left = |a: ElementId| -> BTreeSet<ElementId> {
            std::iter::once(a).chain((0..n).map(|x| self.mul(x, a))).collect()
        };
        let two_sided = |a: ElementId| -> BTreeSet<ElementId> {
            let mut set = BTreeSet::new();
            for l in left(a) {
                set.extend(right(l));
            }
            set
        };
        let phi = |a: ElementId| self.phi_sets(a);
        match kind {
            GreenKind::R => GreenPartition::from_keys(kind, (0..n).map(right).collect()),
            GreenKind::L => GreenPartition::from_keys(kind, (0..n).map(left).collect()),
            GreenKind::H => {
                GreenPartition::from_keys(kind, (0..n).map(|a| (right(a), left(a))).collect())
            }
            GreenKind::J => GreenPartition::from_keys(kind, (0..n).map(two_sided).collect()),
            GreenKind::TildeL => GreenPartition::from_keys(kind, (0..n).map(|a| phi(a).0).collect()),
            GreenKind::TildeR => GreenPartition::from_keys(kind, (0..n).map(|a| phi(a).1).collect()),
            GreenKind::TildeH => GreenPartition::from_keys(kind, (0..n).map(phi).collect()),
        }
    }

    /// A pair of non-commuting idempotents, or `None` when `S` is in ECom.
    pub fn ecom_witness(&self) -> Option<(ElementId, ElementId)> {
        let idem = self.idempotents();
        for &e in &idem {
            for &f in &idem {
                if self.mul(e, f) != self.mul(f, e) {
                    return Some((e, f));
                }
            }
        }
        None
    }

    pub fn is_ecom(&self) -> bool {
        self.ecom_witness().is_none()
    }

    /// `E_S`: non-commuting idempotent pairs that are minimal under the
    /// componentwise natural order.
    pub fn minimal_noncommuting_pairs(&self) -> Vec<(ElementId, ElementId)> {
        let idem = self.idempotents();
        let noncommuting = |e: ElementId, f: ElementId| self.mul(e, f) != self.mul(f, e);
        let mut out = Vec::new();
        for &e in &idem {
            for &f in &idem {
                if !noncommuting(e, f) {
                    continue;
                }
                let dominated = idem.iter().any(|&e2| {
                    self.natural_leq(e2, e)
                        && idem.iter().any(|&f2| {
                            self.natural_leq(f2, f) && (e2, f2) != (e, f) && noncommuting(e2, f2)
                        })
                });
                if !dominated {
                    out.push((e, f));
                }
            }
        }
        out
    }

    /// Identity of the semigroup algebra over the rationals, as coefficients
    /// on the elements, if the algebra is unital.
    pub fn algebra_identity(&self) -> Option<Vec<BigRational>> {
        let n = self.len();
        // unknowns lambda_s; for every t and r:
        //   sum_{s: st = r} lambda_s = [r = t]  and  sum_{s: ts = r} lambda_s = [r = t]
        let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(2 * n * n);
        for t in 0..n {
            for r in 0..n {
                let rhs = if r == t { BigRational::one() } else { BigRational::zero() };
                let mut right_eq = vec![BigRational::zero(); n + 1];
                let mut left_eq = vec![BigRational::zero(); n + 1];
                for s in 0..n {
                    if self.mul(s, t) == r {
                        right_eq[s] += BigRational::one();
                    }
                    if self.mul(t, s) == r {
                        left_eq[s] += BigRational::one();
                    }
                }
                right_eq[n] = rhs.clone();
                left_eq[n] = rhs;
                rows.push(right_eq);
                rows.push(left_eq);
            }
        }
        solve_rational(rows, n)
    }

    pub fn has_algebra_identity(&self) -> bool {
        self.algebra_identity().is_some()
    }
}

/// Solves an augmented system exactly. Returns one solution (free variables
/// set to zero) or `None` when inconsistent.
pub(crate) fn solve_rational(mut rows: Vec<Vec<BigRational>>, unknowns: usize) -> Option<Vec<BigRational>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..unknowns {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = BigRational::one() / rows[r][col].clone();
        for v in rows[r].iter_mut() {
            *v *= inv.clone();
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let factor = row[col].clone();
                for (v, p) in row.iter_mut().zip(&pivot).skip(col) {
                    *v -= p * &factor;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    if rows[r..].iter().any(|row| !row[unknowns].is_zero()) {
        return None;
    }
    let mut solution = vec![BigRational::zero(); unknowns];
    for (i, &col) in pivots.iter().enumerate() {
        solution[col] = rows[i][unknowns].clone();
    }
    Some(solution)
}

/// Integer coefficients of a rational vector, if all are integral.
pub fn integral(v: &[BigRational]) -> Option<Vec<BigInt>> {
    v.iter().map(|q| q.is_integer().then(|| q.to_integer())).collect()
}

impl fmt::Display for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.names.iter().map(String::len).max().unwrap_or(1);
        write!(f, "{:>width$} |", "")?;
        for name in &self.names {
            write!(f, " {name:>width$}")?;
        }
        writeln!(f)?;
        for a in self.elements() {
            write!(f, "{:>width$} |", self.names[a])?;
            for b in self.elements() {
                write!(f, " {:>width$}", self.names[self.mul(a, b)])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    fn toks(rows: &[&str]) -> Vec<Vec<String>> {
        rows.iter()
            .map(|r| r.split_whitespace().map(str::to_string).collect())
            .collect()
    }

    fn labels(s: &str) -> Vec<String> {
        s.split_whitespace().map(str::to_string).collect()
    }

    /// The seven-element semigroup with an adjoined zero used throughout the tests.
    pub fn s7() -> CayleyTable {
        CayleyTable::validate(
            &labels("y z u t w v q"),
            &toks(&[
                ". . . . . y y",
                ". . . . z . z",
                ". . . y u y u",
                ". . z . z t t",
                ". z z t w t w",
                "y . u y u v v",
                "y z u t w v q",
            ]),
        )
        .unwrap()
    }

    /// Four elements and a zero; `z+ = t`, `z* = u`, `ut = 0`.
    pub fn s4() -> CayleyTable {
        CayleyTable::validate(
            &labels("y z u t"),
            &toks(&[". . . y", ". . z .", "y . u .", ". z z t"]),
        )
        .unwrap()
    }

    pub fn cyclic(n: usize) -> CayleyTable {
        let mul = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        CayleyTable::from_flat(n, mul).unwrap()
    }

    pub fn trivial() -> CayleyTable {
        CayleyTable::new(vec!["e".into()], vec![vec![0]]).unwrap()
    }

    /// `{a, b}` with `ab = ba = a`.
    pub fn two_chain() -> CayleyTable {
        CayleyTable::new(vec!["a".into(), "b".into()], vec![vec![0, 0], vec![0, 1]]).unwrap()
    }

    pub fn id(t: &CayleyTable, name: &str) -> ElementId {
        t.index_of(name).unwrap()
    }
}
