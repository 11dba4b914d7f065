//! Moebius inversion over `<<<` and the transported product `*`.
//!
//! `Z(s) = sum_{s' <<< s} s'` is unitriangular, so it is invertible by
//! Moebius inversion. The product `*` is computed two ways:
//!
//! * by conjugation, `s * t = Z(Z^-1(s) Z^-1(t))`, which is always defined;
//! * by the double Moebius sum over the pair order, `s * t = sum xi(s'', t'') s''t''`.
//!
//! The two agree exactly when `Z(s) * Z(t) = Z(st)` holds with `*` given by
//! the pair-order sum, which is what [`StarAlgebra::check_homomorphism`] tests.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::order::{BasisMode, OrderError, OrderStructure, Poset};
use crate::semigroup::{CayleyTable, ElementId};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum MobiusError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("no pair (s, t) with s* != t+ and s * t != 0")]
    NoWitness,
    #[error("no idempotent pair (e, f) with the required chain property")]
    NoSuchPair,
}

/// Moebius function of a finite poset, defined on comparable pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusTable {
    n: usize,
    mu: Vec<Option<i64>>,
}

impl MobiusTable {
    pub fn new(poset: &Poset) -> Self {
        let n = poset.len();
        // visit upper ends by increasing down-set size, a linear extension
        let mut order: Vec<ElementId> = (0..n).collect();
        order.sort_by_key(|&b| poset.down_set(b).len());
        let mut mu = vec![None; n * n];
        for a in 0..n {
            for &b in &order {
                if !poset.leq(a, b) {
                    continue;
                }
                let value = if a == b {
                    1
                } else {
                    -(0..n)
                        .filter(|&c| c != b && poset.leq(a, c) && poset.leq(c, b))
                        .map(|c| mu[a * n + c].expect("interval visited in order"))
                        .sum::<i64>()
                };
                mu[a * n + b] = Some(value);
            }
        }
        MobiusTable { n, mu }
    }

    /// `mu(a, b)`, or `None` unless `a <<< b`.
    pub fn get(&self, a: ElementId, b: ElementId) -> Option<i64> {
        self.mu[a * self.n + b]
    }

    fn at(&self, a: ElementId, b: ElementId) -> i64 {
        self.get(a, b).unwrap_or(0)
    }
}

/// An integer combination of basis elements. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FormalSum(BTreeMap<ElementId, i64>);

impl FormalSum {
    pub fn zero() -> Self {
        FormalSum(BTreeMap::new())
    }

    pub fn element(s: ElementId) -> Self {
        FormalSum(BTreeMap::from([(s, 1)]))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (ElementId, i64)>) -> Self {
        let mut sum = FormalSum::zero();
        for (s, c) in terms {
            sum.add_term(s, c);
        }
        sum
    }

    pub fn add_term(&mut self, s: ElementId, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.0.entry(s).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.0.remove(&s);
        }
    }

    pub fn add(&mut self, other: &FormalSum) {
        for (&s, &c) in &other.0 {
            self.add_term(s, c);
        }
    }

    pub fn coeff(&self, s: ElementId) -> i64 {
        self.0.get(&s).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.0.keys().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (ElementId, i64)> + '_ {
        self.0.iter().map(|(&s, &c)| (s, c))
    }

    /// Signed sum in element order, `.` for zero: `y+z+u`, `-y`, `2t-q`.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return ".".to_string();
        }
        let mut out = String::new();
        for (i, (s, c)) in self.terms().enumerate() {
            if c < 0 {
                out.push('-');
            } else if i > 0 {
                out.push('+');
            }
            if c.abs() != 1 {
                out.push_str(&c.abs().to_string());
            }
            out.push_str(&names[s]);
        }
        out
    }
}

/// Structure constants `c[b''][b][b']` with `b b' = sum c[b''][b][b'] b''`,
/// indexed by element ids and supported on `basis`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    n: usize,
    basis: Vec<ElementId>,
    c: Vec<i64>,
}

impl StructureConstants {
    pub fn from_products(n: usize, basis: Vec<ElementId>, mut product: impl FnMut(ElementId, ElementId) -> FormalSum) -> Self {
        let mut c = vec![0; n * n * n];
        for &b in &basis {
            for &b1 in &basis {
                for (b2, k) in product(b, b1).terms() {
                    c[(b2 * n + b) * n + b1] = k;
                }
            }
        }
        StructureConstants { n, basis, c }
    }

    /// The semigroup algebra itself, contracted when `basis` omits the zero.
    pub fn of_semigroup(table: &CayleyTable, basis: Vec<ElementId>) -> Self {
        let in_basis: Vec<bool> = table.elements().map(|s| basis.contains(&s)).collect();
        Self::from_products(table.len(), basis, |a, b| {
            let p = table.mul(a, b);
            if in_basis[p] {
                FormalSum::element(p)
            } else {
                FormalSum::zero()
            }
        })
    }

    pub fn basis(&self) -> &[ElementId] {
        &self.basis
    }

    /// `c_{b'', b, b'}`.
    pub fn get(&self, b2: ElementId, b: ElementId, b1: ElementId) -> i64 {
        self.c[(b2 * self.n + b) * self.n + b1]
    }

    pub fn product(&self, b: ElementId, b1: ElementId) -> FormalSum {
        FormalSum::from_terms(self.basis.iter().map(|&b2| (b2, self.get(b2, b, b1))))
    }
}

/// Z map, Moebius table and both `*` products for one singleton-rich semigroup.
#[derive(Clone, Debug)]
pub struct StarAlgebra {
    order: OrderStructure,
    mobius: MobiusTable,
}

/// One failed clause of the closed-form description of `s * t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub s: ElementId,
    pub t: ElementId,
    pub detail: String,
}

impl StarAlgebra {
    pub fn new(order: OrderStructure) -> Self {
        let mobius = MobiusTable::new(order.poset());
        StarAlgebra { order, mobius }
    }

    pub fn from_table(table: &CayleyTable, mode: BasisMode) -> Result<Self, OrderError> {
        Ok(Self::new(OrderStructure::new(table, mode)?))
    }

    pub fn order(&self) -> &OrderStructure {
        &self.order
    }

    pub fn mobius(&self) -> &MobiusTable {
        &self.mobius
    }

    pub fn table(&self) -> &CayleyTable {
        self.order.table()
    }

    pub fn basis(&self) -> &[ElementId] {
        self.order.basis()
    }

    /// Basis element as a formal sum; the algebraic zero maps to `0`.
    pub fn basis_element(&self, s: ElementId) -> FormalSum {
        if self.order.is_algebra_zero(s) {
            FormalSum::zero()
        } else {
            FormalSum::element(s)
        }
    }

    pub fn z_map(&self, x: &FormalSum) -> FormalSum {
        let mut out = FormalSum::zero();
        for (s, c) in x.terms() {
            for s1 in self.order.down_set(s) {
                out.add_term(s1, c);
            }
        }
        out
    }

    pub fn z_inverse(&self, x: &FormalSum) -> FormalSum {
        let mut out = FormalSum::zero();
        for (s, c) in x.terms() {
            for s1 in self.order.down_set(s) {
                out.add_term(s1, c * self.mobius.at(s1, s));
            }
        }
        out
    }

    /// Product in the (contracted) semigroup algebra.
    pub fn dot(&self, x: &FormalSum, y: &FormalSum) -> FormalSum {
        let mut out = FormalSum::zero();
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                let p = self.table().mul(a, b);
                if !self.order.is_algebra_zero(p) {
                    out.add_term(p, ca * cb);
                }
            }
        }
        out
    }

    /// `s * t = Z(Z^-1(s) Z^-1(t))`.
    pub fn star_product_conjugation(&self, s: ElementId, t: ElementId) -> FormalSum {
        let zs = self.z_inverse(&FormalSum::element(s));
        let zt = self.z_inverse(&FormalSum::element(t));
        self.z_map(&self.dot(&zs, &zt))
    }

    /// Bilinear extension of [`star_product_conjugation`](Self::star_product_conjugation).
    pub fn star(&self, x: &FormalSum, y: &FormalSum) -> FormalSum {
        self.z_map(&self.dot(&self.z_inverse(x), &self.z_inverse(y)))
    }

    /// Coefficient of `s''t''` in `s * t`:
    /// `sum_{s'' <<< s' <<< s} (sum_{t'' <<< t' <<< t, (s'',t'') << (s',t')} mu(t', t)) mu(s', s)`.
    pub fn xi(&self, (s2, t2): (ElementId, ElementId), (s, t): (ElementId, ElementId)) -> Result<i64, OrderError> {
        let mut total = 0;
        for s1 in self.interval(s2, s) {
            let mut inner = 0;
            for t1 in self.interval(t2, t) {
                if self.order.pair_ll((s2, t2), (s1, t1))? {
                    inner += self.mobius.at(t1, t);
                }
            }
            total += inner * self.mobius.at(s1, s);
        }
        Ok(total)
    }

    fn interval(&self, a: ElementId, b: ElementId) -> Vec<ElementId> {
        self.basis()
            .iter()
            .copied()
            .filter(|&c| self.order.is_lll(a, c) && self.order.is_lll(c, b))
            .collect()
    }

    /// `s * t = sum_{s'' <<< s, t'' <<< t} xi(s'', t'') s''t''`.
    pub fn star_product_xi(&self, s: ElementId, t: ElementId) -> Result<FormalSum, OrderError> {
        self.order.precompute_pairs()?;
        let mut out = FormalSum::zero();
        for s2 in self.order.down_set(s) {
            for t2 in self.order.down_set(t) {
                let p = self.table().mul(s2, t2);
                if self.order.is_algebra_zero(p) {
                    continue;
                }
                out.add_term(p, self.xi((s2, t2), (s, t))?);
            }
        }
        Ok(out)
    }

    /// `Z(s) * Z(t)` read off the pair order: `sum_{(s',t') << (s,t)} s't'`.
    pub fn pair_sum(&self, s: ElementId, t: ElementId) -> Result<FormalSum, OrderError> {
        self.order.precompute_pairs()?;
        let mut out = FormalSum::zero();
        for s1 in self.order.down_set(s) {
            for t1 in self.order.down_set(t) {
                if self.order.pair_ll((s1, t1), (s, t))? {
                    let p = self.table().mul(s1, t1);
                    if !self.order.is_algebra_zero(p) {
                        out.add_term(p, 1);
                    }
                }
            }
        }
        Ok(out)
    }

    /// First `(s, t)` with `Z(s) * Z(t) != Z(st)`, or `None`.
    pub fn check_homomorphism(&self) -> Result<Option<(ElementId, ElementId)>, OrderError> {
        for &s in self.basis() {
            for &t in self.basis() {
                let expected = self.z_map(&self.basis_element(self.table().mul(s, t)));
                if self.pair_sum(s, t)? != expected {
                    return Ok(Some((s, t)));
                }
            }
        }
        Ok(None)
    }

    /// First `(s, t)` where the two `*` routes disagree, or `None`.
    pub fn xi_conjugation_mismatch(&self) -> Result<Option<(ElementId, ElementId)>, OrderError> {
        for &s in self.basis() {
            for &t in self.basis() {
                if self.star_product_xi(s, t)? != self.star_product_conjugation(s, t) {
                    return Ok(Some((s, t)));
                }
            }
        }
        Ok(None)
    }

    /// Structure constants of `(S, *)` on the basis.
    pub fn star_structure_constants(&self) -> StructureConstants {
        StructureConstants::from_products(self.table().len(), self.basis().to_vec(), |a, b| {
            self.star_product_conjugation(a, b)
        })
    }

    /// `(S, *)` as rows of formal sums over the basis.
    pub fn star_table(&self) -> Vec<Vec<FormalSum>> {
        self.basis()
            .iter()
            .map(|&s| self.basis().iter().map(|&t| self.star_product_conjugation(s, t)).collect())
            .collect()
    }

    /// Checks the closed forms for `s * t` that hold on `<<<`-smooth semigroups.
    pub fn theorem43_check(&self) -> Vec<Discrepancy> {
        let o = &self.order;
        let table = self.table();
        let mut out = Vec::new();
        let mut report = |s, t, detail: String| out.push(Discrepancy { s, t, detail });
        for &s in self.basis() {
            for &t in self.basis() {
                let product = self.star_product_conjugation(s, t);
                if o.star(s) == o.plus(t) {
                    let sharp = o.sharp(s, t);
                    if product.is_zero() != sharp.is_none() {
                        report(s, t, "s*t != 0 disagrees with s # t != 0".into());
                    }
                    if !product.is_zero() && product != self.basis_element(table.mul(s, t)) {
                        report(s, t, "s*t != st".into());
                    }
                    continue;
                }
                if product.is_zero() {
                    continue;
                }
                let tp = o.plus(t);
                let anchor = table.mul(s, tp);
                for &t1 in self.basis() {
                    if o.plus(t1) != tp {
                        continue;
                    }
                    let lhs = self.star_product_conjugation(s, t1);
                    let rhs_nonzero = !o.is_algebra_zero(anchor) && o.sharp(anchor, t1).is_some();
                    if lhs.is_zero() == rhs_nonzero {
                        report(s, t1, format!("s*t' != 0 disagrees with st+ # t' != 0 (t = {t})"));
                        continue;
                    }
                    if lhs.is_zero() {
                        continue;
                    }
                    let coefficient: i64 = self
                        .basis()
                        .iter()
                        .copied()
                        .filter(|&s1| {
                            o.is_lll(anchor, s1)
                                && o.is_lll(s1, s)
                                && table.natural_leq(tp, o.star(table.mul(o.plus(s), s1)))
                        })
                        .map(|s1| self.mobius.at(s1, s))
                        .sum();
                    let mut expected = FormalSum::zero();
                    let st1 = table.mul(s, t1);
                    if !o.is_algebra_zero(st1) {
                        expected.add_term(st1, coefficient);
                    }
                    if lhs != expected {
                        report(s, t1, format!("coefficient formula gives {coefficient} (t = {t})"));
                    }
                }
            }
        }
        out
    }

    fn require_noncommuting(&self) -> Result<(), MobiusError> {
        if self.table().is_ecom() {
            return Err(MobiusError::Precondition("idempotents commute".into()));
        }
        Ok(())
    }

    /// First `(s, t)` in element order with `s* != t+` and `s * t != 0`.
    pub fn noncommuting_star_witness(&self) -> Result<(ElementId, ElementId, FormalSum), MobiusError> {
        self.require_noncommuting()?;
        if !self.order.is_pseudo_ll_transitive()? {
            return Err(MobiusError::Precondition("not pseudo <<-transitive".into()));
        }
        let o = &self.order;
        for &s in self.basis() {
            for &t in self.basis() {
                if o.star(s) == o.plus(t) {
                    continue;
                }
                let product = self.star_product_conjugation(s, t);
                if !product.is_zero() {
                    return Ok((s, t, product));
                }
            }
        }
        Err(MobiusError::NoWitness)
    }

    /// Distinct idempotents `e`, `f` with `ef != fe`, `(ef)+ = e`, `(ef)* = f`
    /// and no `<<`-chain with intermediates from `ef` up to `e` or to `f`.
    pub fn minimal_pair_with_chain_property(&self) -> Result<(ElementId, ElementId), MobiusError> {
        self.require_noncommuting()?;
        let table = self.table();
        if !table.has_algebra_identity() {
            return Err(MobiusError::Precondition("semigroup algebra is not unital".into()));
        }
        let o = &self.order;
        let idem = table.idempotents();
        for &e in &idem {
            for &f in &idem {
                let ef = table.mul(e, f);
                if e == f || ef == table.mul(f, e) || o.plus(ef) != e || o.star(ef) != f {
                    continue;
                }
                let any = |_: &[ElementId]| Ok(true);
                if o.search_chains(ef, e, None, |_| true, any)? || o.search_chains(ef, f, None, |_| true, any)? {
                    continue;
                }
                return Ok((e, f));
            }
        }
        Err(MobiusError::NoSuchPair)
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..=self.0.keys().max().copied().unwrap_or(0))
            .map(|i| format!("s{i}"))
            .collect();
        f.write_str(&self.render(&names))
    }
}
