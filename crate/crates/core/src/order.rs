//! The `<<` relation, its partial-order closure `<<<`, and the chain
//! conditions built on them.
//!
//! `s << t` holds when `s = s+ t s*`. The relation is reflexive and
//! antisymmetric but need not be transitive; [`Poset`] is its
//! reflexive-transitive closure. [`OrderStructure`] bundles a singleton-rich
//! table with both relations and answers the chain questions: essential
//! indices, the stabilised `phi` map, the pair order `(s', t') << (s, t)`,
//! pseudo `<<`-transitivity and `<<<`-smoothness.

use std::collections::VecDeque;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::semigroup::{CayleyTable, ElementId, SemigroupError, StarPlus};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum OrderError {
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error("the << relation has a cycle through {0:?}")]
    CyclicLl(Vec<ElementId>),
    #[error("{0} is not below {1} in the closure of <<")]
    NotComparable(ElementId, ElementId),
    #[error("phi sequence for ({s}, {t}) does not stabilise")]
    NoConvergence { s: ElementId, t: ElementId },
    #[error("contracted basis requested but the semigroup has no zero")]
    NoZeroElement,
}

/// Which basis the algebra computations range over.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum BasisMode {
    /// Contracted when the semigroup has a zero, full otherwise.
    #[default]
    Auto,
    /// All elements, the zero included.
    Full,
    /// The non-zero elements; requires a zero.
    Contracted,
}

/// `rel[s][t]` iff `s << t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LlRelation {
    n: usize,
    rel: Vec<bool>,
}

impl LlRelation {
    pub fn new(table: &CayleyTable, sp: &StarPlus) -> Self {
        let n = table.len();
        let mut rel = vec![false; n * n];
        for s in 0..n {
            for t in 0..n {
                rel[s * n + t] = table.product(&[sp.plus(s), t, sp.star(s)]) == s;
            }
        }
        LlRelation { n, rel }
    }

    #[inline]
    pub fn holds(&self, s: ElementId, t: ElementId) -> bool {
        self.rel[s * self.n + t]
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|s| self.holds(s, s))
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| a == b || !(self.holds(a, b) && self.holds(b, a))))
    }

    pub fn is_transitive(&self) -> bool {
        let n = self.n;
        (0..n).all(|a| {
            (0..n).all(|b| !self.holds(a, b) || (0..n).all(|c| !self.holds(b, c) || self.holds(a, c)))
        })
    }

    /// Strict successors `v != s` with `s << v`.
    fn successors(&self, s: ElementId) -> impl Iterator<Item = ElementId> + '_ {
        (0..self.n).filter(move |&v| v != s && self.holds(s, v))
    }
}

/// The partial order `<<<`: the reflexive-transitive closure of `<<`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    leq: Vec<bool>,
    covers: Vec<(ElementId, ElementId)>,
}

impl Poset {
    /// Closes `rel` and checks antisymmetry of the result.
    pub fn closure(rel: &LlRelation) -> Result<Poset, OrderError> {
        let n = rel.n;
        let mut leq = rel.rel.clone();
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && leq[a * n + b] && leq[b * n + a] {
                    let mut cycle = shortest_path(rel, a, b).unwrap_or_default();
                    let back = shortest_path(rel, b, a).unwrap_or_default();
                    cycle.extend(back.into_iter().skip(1));
                    return Err(OrderError::CyclicLl(cycle));
                }
            }
        }
        let mut covers = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b
                    && leq[a * n + b]
                    && !(0..n).any(|c| c != a && c != b && leq[a * n + c] && leq[c * n + b])
                {
                    covers.push((a, b));
                }
            }
        }
        Ok(Poset { n, leq, covers })
    }

    #[inline]
    pub fn leq(&self, a: ElementId, b: ElementId) -> bool {
        self.leq[a * self.n + b]
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Hasse diagram edges `(a, b)` with `b` covering `a`.
    pub fn covers(&self) -> &[(ElementId, ElementId)] {
        &self.covers
    }

    /// `{a | a <<< s}` in element order.
    pub fn down_set(&self, s: ElementId) -> Vec<ElementId> {
        (0..self.n).filter(|&a| self.leq(a, s)).collect()
    }

    /// `{c | a <<< c <<< b}` in element order.
    pub fn interval(&self, a: ElementId, b: ElementId) -> Vec<ElementId> {
        (0..self.n).filter(|&c| self.leq(a, c) && self.leq(c, b)).collect()
    }
}

/// Shortest `<<`-path from `a` to `b`, endpoints included.
fn shortest_path(rel: &LlRelation, a: ElementId, b: ElementId) -> Option<Vec<ElementId>> {
    let mut prev = vec![usize::MAX; rel.n];
    let mut queue = VecDeque::from([a]);
    prev[a] = a;
    while let Some(x) = queue.pop_front() {
        if x == b {
            let mut path = vec![b];
            let mut cur = b;
            while cur != a {
                cur = prev[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for v in rel.successors(x) {
            if prev[v] == usize::MAX {
                prev[v] = x;
                queue.push_back(v);
            }
        }
    }
    None
}

/// Number of intermediate elements on a shortest `<<`-chain between two
/// comparable elements; `n == 0` exactly when `lower << upper`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EssentialIndex {
    pub lower: ElementId,
    pub upper: ElementId,
    pub n: usize,
}

/// A failed `<<<`-smoothness condition with the elements that witness it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmoothnessViolation {
    pub condition: u8,
    pub witnesses: Vec<ElementId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmoothnessReport {
    pub pseudo_ll_transitive: bool,
    /// `(u, s, t)` with no admissible chain from `u` to `st`.
    pub pseudo_counterexample: Option<[ElementId; 3]>,
    pub lll_smooth: bool,
    pub violation: Option<SmoothnessViolation>,
}

/// A singleton-rich semigroup together with `<<`, `<<<` and the basis the
/// algebra computations run over.
#[derive(Debug)]
pub struct OrderStructure {
    table: CayleyTable,
    sp: StarPlus,
    ll: LlRelation,
    poset: Poset,
    basis: Vec<ElementId>,
    contracted: bool,
    pairs: OnceLock<Result<Vec<bool>, OrderError>>,
}

impl Clone for OrderStructure {
    fn clone(&self) -> Self {
        OrderStructure {
            table: self.table.clone(),
            sp: self.sp.clone(),
            ll: self.ll.clone(),
            poset: self.poset.clone(),
            basis: self.basis.clone(),
            contracted: self.contracted,
            pairs: OnceLock::new(),
        }
    }
}

impl OrderStructure {
    pub fn new(table: &CayleyTable, mode: BasisMode) -> Result<Self, OrderError> {
        let sp = table.star_plus()?;
        let ll = LlRelation::new(table, &sp);
        let poset = Poset::closure(&ll)?;
        let contracted = match mode {
            BasisMode::Auto => table.zero().is_some(),
            BasisMode::Full => false,
            BasisMode::Contracted => {
                if table.zero().is_none() {
                    return Err(OrderError::NoZeroElement);
                }
                true
            }
        };
        let basis = table
            .elements()
            .filter(|&s| !contracted || Some(s) != table.zero())
            .collect();
        Ok(OrderStructure {
            table: table.clone(),
            sp,
            ll,
            poset,
            basis,
            contracted,
            pairs: OnceLock::new(),
        })
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    pub fn star_plus(&self) -> &StarPlus {
        &self.sp
    }

    pub fn ll(&self) -> &LlRelation {
        &self.ll
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    /// Elements the algebra ranges over: all of them, or the non-zero ones
    /// in contracted mode.
    pub fn basis(&self) -> &[ElementId] {
        &self.basis
    }

    pub fn is_contracted(&self) -> bool {
        self.contracted
    }

    /// Whether `s` is the algebraic zero: the semigroup zero in contracted mode.
    #[inline]
    pub fn is_algebra_zero(&self, s: ElementId) -> bool {
        self.contracted && Some(s) == self.table.zero()
    }

    #[inline]
    pub fn star(&self, s: ElementId) -> ElementId {
        self.sp.star(s)
    }

    #[inline]
    pub fn plus(&self, s: ElementId) -> ElementId {
        self.sp.plus(s)
    }

    #[inline]
    fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        self.table.mul(a, b)
    }

    #[inline]
    pub fn is_ll(&self, a: ElementId, b: ElementId) -> bool {
        self.ll.holds(a, b)
    }

    #[inline]
    pub fn is_lll(&self, a: ElementId, b: ElementId) -> bool {
        self.poset.leq(a, b)
    }

    /// Basis elements `<<<`-below `s`.
    pub fn down_set(&self, s: ElementId) -> Vec<ElementId> {
        self.basis.iter().copied().filter(|&a| self.is_lll(a, s)).collect()
    }

    pub fn essential_index(&self, lower: ElementId, upper: ElementId) -> Result<EssentialIndex, OrderError> {
        if !self.is_lll(lower, upper) {
            return Err(OrderError::NotComparable(lower, upper));
        }
        let n = if self.is_ll(lower, upper) {
            0
        } else {
            let path = shortest_path(&self.ll, lower, upper).ok_or(OrderError::NotComparable(lower, upper))?;
            path.len() - 2
        };
        Ok(EssentialIndex { lower, upper, n })
    }

    /// Visits chains `from << v1 << ... << vk << to` with `k >= 1`
    /// intermediates, each strictly between its neighbours and accepted by
    /// `step`; with `len` given only chains with `k == len` are visited.
    /// Returns `true` as soon as `visit` does.
    pub fn search_chains<F, V>(
        &self,
        from: ElementId,
        to: ElementId,
        len: Option<usize>,
        step: F,
        mut visit: V,
    ) -> Result<bool, OrderError>
    where
        F: Fn(ElementId) -> bool,
        V: FnMut(&[ElementId]) -> Result<bool, OrderError>,
    {
        let mut path = Vec::new();
        self.chain_dfs(from, to, len, &step, &mut visit, &mut path)
    }

    fn chain_dfs<F, V>(
        &self,
        current: ElementId,
        to: ElementId,
        len: Option<usize>,
        step: &F,
        visit: &mut V,
        path: &mut Vec<ElementId>,
    ) -> Result<bool, OrderError>
    where
        F: Fn(ElementId) -> bool,
        V: FnMut(&[ElementId]) -> Result<bool, OrderError>,
    {
        if len.is_some_and(|l| path.len() >= l) {
            return Ok(false);
        }
        for v in self.ll.successors(current) {
            if v == to || !self.is_lll(v, to) || !step(v) {
                continue;
            }
            path.push(v);
            let done = (self.is_ll(v, to) && len.is_none_or(|l| path.len() == l) && visit(path)?)
                || self.chain_dfs(v, to, len, step, visit, path)?;
            path.pop();
            if done {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// `phi(s, t) = (s* t)+`.
    pub fn phi_pair(&self, s: ElementId, t: ElementId) -> ElementId {
        self.plus(self.mul(self.star(s), t))
    }

    /// Stable value of `phi(s_i, t_i)` where `s_{i+1} = s phi(s_i, t_i)` and
    /// `t_{i+1} = phi(s_i, t_i) t`.
    pub fn phi_limit(&self, s: ElementId, t: ElementId) -> Result<ElementId, OrderError> {
        let n = self.table.len();
        let mut p = self.phi_pair(s, t);
        for _ in 0..=n * n {
            let next = self.phi_pair(self.mul(s, p), self.mul(p, t));
            if next == p {
                return Ok(p);
            }
            p = next;
        }
        Err(OrderError::NoConvergence { s, t })
    }

    /// `st` when `s+ = (st)+`, `t* = (st)*` and `s* = t+`; `None` is the
    /// algebraic zero.
    pub fn sharp(&self, s: ElementId, t: ElementId) -> Option<ElementId> {
        let st = self.mul(s, t);
        let ok = self.plus(s) == self.plus(st) && self.star(t) == self.star(st) && self.star(s) == self.plus(t);
        (ok && !self.is_algebra_zero(st)).then_some(st)
    }

    /// [`sharp`](Self::sharp) restricted to `s* = t+ = e`.
    pub fn sharp_e(&self, s: ElementId, t: ElementId, e: ElementId) -> Option<ElementId> {
        if self.star(s) != e {
            return None;
        }
        self.sharp(s, t)
    }

    /// The pair order `(s', t') << (s, t)`.
    pub fn pair_ll(&self, lower: (ElementId, ElementId), upper: (ElementId, ElementId)) -> Result<bool, OrderError> {
        if let Some(Ok(table)) = self.pairs.get() {
            return Ok(table[self.pair_index(lower, upper)]);
        }
        self.pair_ll_uncached(lower, upper)
    }

    fn pair_index(&self, (s1, t1): (ElementId, ElementId), (s, t): (ElementId, ElementId)) -> usize {
        let n = self.table.len();
        ((s1 * n + t1) * n + s) * n + t
    }

    /// Evaluates the pair order for every quadruple once; later
    /// [`pair_ll`](Self::pair_ll) calls read the table.
    pub fn precompute_pairs(&self) -> Result<(), OrderError> {
        let result = self.pairs.get_or_init(|| {
            let n = self.table.len();
            let mut table = vec![false; n * n * n * n];
            for s1 in 0..n {
                for t1 in 0..n {
                    for s in 0..n {
                        for t in 0..n {
                            table[self.pair_index((s1, t1), (s, t))] = self.pair_ll_uncached((s1, t1), (s, t))?;
                        }
                    }
                }
            }
            Ok(table)
        });
        result.as_ref().map(|_| ()).map_err(Clone::clone)
    }

    fn pair_ll_uncached(&self, (s1, t1): (ElementId, ElementId), (s, t): (ElementId, ElementId)) -> Result<bool, OrderError> {
        if !self.is_ll(s1, s) || !self.is_lll(t1, t) {
            return Ok(false);
        }
        let left = self.mul(self.plus(s1), s);
        let phi = self.phi_limit(left, self.mul(t, self.star(t1)))?;
        if self.sharp_e(s1, t1, phi).is_none() {
            return Ok(false);
        }
        if self.is_ll(t1, t) {
            return Ok(true);
        }
        let product = self.mul(s1, t1);
        if self.is_ll(product, self.mul(s, t)) || product != t1 || self.plus(t1) != phi {
            return Ok(false);
        }
        self.search_chains(
            t1,
            t,
            None,
            |v| self.plus(v) == phi,
            |chain| {
                let right = self.star_tail(t, chain, t1);
                Ok(self.phi_limit(left, right)? == phi)
            },
        )
    }

    /// `top * v_k* * ... * v_1* * bottom*` for a chain `bottom << v_1 << ... << v_k << top`.
    fn star_tail(&self, top: ElementId, chain: &[ElementId], bottom: ElementId) -> ElementId {
        let x = chain.iter().rev().fold(top, |acc, &v| self.mul(acc, self.star(v)));
        self.mul(x, self.star(bottom))
    }

    /// Whether condition (#) can be met for `u <<< st`, `u` not `<< st`.
    /// Vacuously true when the triple is not an essential gap.
    pub fn pseudo_holds_at(&self, u: ElementId, s: ElementId, t: ElementId) -> Result<bool, OrderError> {
        let st = self.mul(s, t);
        if !self.is_lll(u, st) || self.is_ll(u, st) {
            return Ok(true);
        }
        let n = self.essential_index(u, st)?.n;
        let left = self.mul(self.plus(u), s);
        let phi = self.phi_limit(left, self.mul(t, self.star(u)))?;
        if self.plus(u) != phi {
            return Ok(false);
        }
        self.search_chains(
            u,
            st,
            Some(n),
            |v| self.plus(v) == phi,
            |chain| {
                let last = *chain.last().expect("non-empty chain");
                if !self.is_ll(last, t) {
                    return Ok(false);
                }
                let right = self.star_tail(t, chain, u);
                Ok(self.phi_limit(left, right)? == phi)
            },
        )
    }

    /// First `(u, s, t)` (lexicographic in `(s, t, u)`) violating pseudo
    /// `<<`-transitivity, or `None` when it holds.
    pub fn pseudo_counterexample(&self) -> Result<Option<[ElementId; 3]>, OrderError> {
        let n = self.table.len();
        for s in 0..n {
            for t in 0..n {
                for u in 0..n {
                    if !self.pseudo_holds_at(u, s, t)? {
                        return Ok(Some([u, s, t]));
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn is_pseudo_ll_transitive(&self) -> Result<bool, OrderError> {
        Ok(self.pseudo_counterexample()?.is_none())
    }

    /// Pseudo `<<`-transitivity and the three `<<<`-smoothness conditions,
    /// quantified over the basis.
    pub fn smoothness(&self) -> Result<SmoothnessReport, OrderError> {
        let pseudo = self.pseudo_counterexample()?;
        let mut report = SmoothnessReport {
            pseudo_ll_transitive: pseudo.is_none(),
            pseudo_counterexample: pseudo,
            lll_smooth: false,
            violation: None,
        };
        if pseudo.is_some() {
            return Ok(report);
        }
        self.precompute_pairs()?;
        report.violation = self.first_smoothness_violation()?;
        report.lll_smooth = report.violation.is_none();
        Ok(report)
    }

    fn first_smoothness_violation(&self) -> Result<Option<SmoothnessViolation>, OrderError> {
        let chains: Vec<[ElementId; 3]> = self.basis_chains3();
        for &[s2, s1, s] in &chains {
            for &[t2, t1, t] in &chains {
                if self.sharp(s2, t2).is_some() {
                    let a = self.mul(self.plus(s2), s1);
                    let b = self.mul(t1, self.star(t2));
                    if self.phi_limit(a, b)? != self.phi_pair(a, b) {
                        return Ok(Some(SmoothnessViolation {
                            condition: 1,
                            witnesses: vec![s2, s1, s, t2, t1, t],
                        }));
                    }
                }
                if self.pair_ll((s2, t2), (s1, t1))? != self.pair_ll((s2, t2), (s1, t))? {
                    return Ok(Some(SmoothnessViolation {
                        condition: 2,
                        witnesses: vec![s2, s1, s, t2, t1, t],
                    }));
                }
            }
        }
        for &t in &self.basis {
            for &[s2, a, b] in &chains {
                for &s in &self.basis {
                    if !self.is_lll(b, s) {
                        continue;
                    }
                    if self.pair_ll((s2, t), (b, t))? && !self.pair_ll((s2, t), (a, t))? {
                        return Ok(Some(SmoothnessViolation {
                            condition: 3,
                            witnesses: vec![s2, a, b, s, t],
                        }));
                    }
                }
            }
        }
        Ok(None)
    }

    /// All `a <<< b <<< c` over the basis.
    fn basis_chains3(&self) -> Vec<[ElementId; 3]> {
        let mut out = Vec::new();
        for &c in &self.basis {
            for &b in &self.basis {
                if !self.is_lll(b, c) {
                    continue;
                }
                for &a in &self.basis {
                    if self.is_lll(a, b) {
                        out.push([a, b, c]);
                    }
                }
            }
        }
        out
    }

    pub fn is_lll_smooth(&self) -> Result<bool, OrderError> {
        Ok(self.smoothness()?.lll_smooth)
    }
}
