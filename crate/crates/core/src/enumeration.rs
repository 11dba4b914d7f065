//! Backtracking enumeration of small semigroups and the pseudo
//! `<<`-transitivity census.

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::order::{BasisMode, OrderStructure};
use crate::semigroup::{CayleyTable, ElementId};

/// Largest order enumerated exhaustively.
pub const EXHAUSTIVE_CAP: usize = 6;
pub const DEFAULT_SEED: u64 = 0x5eed;
/// Search nodes spent on one random completion before restarting.
const SAMPLE_NODE_BUDGET: usize = 50_000;

const UNSET: ElementId = ElementId::MAX;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("order {n} exceeds the exhaustive cap {cap}")]
    OrderTooLarge { n: usize, cap: usize },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EnumerationFilter {
    pub require_unital: bool,
    pub require_singleton_rich: bool,
    pub require_not_ecom: bool,
    pub require_zero: bool,
}

impl EnumerationFilter {
    pub fn none() -> Self {
        Self::default()
    }

    /// Unital semigroup algebra and singleton-rich.
    pub fn standing() -> Self {
        EnumerationFilter { require_unital: true, require_singleton_rich: true, ..Self::default() }
    }

    pub fn accepts(&self, table: &CayleyTable) -> bool {
        (!self.require_zero || table.zero().is_some())
            && (!self.require_not_ecom || !table.is_ecom())
            && (!self.require_singleton_rich || table.is_singleton_rich())
            && (!self.require_unital || table.has_algebra_identity())
    }
}

/// Partial table with the associativity checks that a single placement can decide.
#[derive(Clone)]
struct Search {
    n: usize,
    t: Vec<ElementId>,
}

impl Search {
    fn new(n: usize) -> Self {
        Search { n, t: vec![UNSET; n * n] }
    }

    #[inline]
    fn get(&self, a: ElementId, b: ElementId) -> ElementId {
        self.t[a * self.n + b]
    }

    /// All associativity triples that involve cell `(a, b)` and are fully defined agree.
    fn consistent_at(&self, a: ElementId, b: ElementId) -> bool {
        let n = self.n;
        let c = self.get(a, b);
        for k in 0..n {
            // (ab)k = a(bk)
            let (l, bk) = (self.get(c, k), self.get(b, k));
            if l != UNSET && bk != UNSET {
                let r = self.get(a, bk);
                if r != UNSET && r != l {
                    return false;
                }
            }
            // (ka)b = k(ab)
            let ka = self.get(k, a);
            if ka != UNSET {
                let (l, r) = (self.get(ka, b), self.get(k, c));
                if l != UNSET && r != UNSET && l != r {
                    return false;
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.get(i, j);
                // (ij)b = i(jb) with ij = a
                if ij == a {
                    let jb = self.get(j, b);
                    if jb != UNSET {
                        let r = self.get(i, jb);
                        if r != UNSET && r != c {
                            return false;
                        }
                    }
                }
                // a(ij) = (ai)j with ij = b
                if ij == b {
                    let ai = self.get(a, i);
                    if ai != UNSET {
                        let l = self.get(ai, j);
                        if l != UNSET && l != c {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn consistent(&self) -> bool {
        (0..self.n * self.n)
            .filter(|&k| self.t[k] != UNSET)
            .all(|k| self.consistent_at(k / self.n, k % self.n))
    }

    fn open_cells(&self) -> Vec<usize> {
        (0..self.n * self.n).filter(|&k| self.t[k] == UNSET).collect()
    }

    /// Every completion of the open cells, values in increasing order.
    fn exhaust(&mut self, cells: &[usize], visit: &mut dyn FnMut(&[ElementId])) {
        let Some((&cell, rest)) = cells.split_first() else {
            visit(&self.t);
            return;
        };
        for v in 0..self.n {
            self.t[cell] = v;
            if self.consistent_at(cell / self.n, cell % self.n) {
                self.exhaust(rest, visit);
            }
        }
        self.t[cell] = UNSET;
    }

    /// First completion found with random value order, or `None` once the budget runs out.
    fn complete_randomly(&mut self, cells: &[usize], rng: &mut ChaCha8Rng, budget: &mut usize) -> bool {
        let Some((&cell, rest)) = cells.split_first() else {
            return true;
        };
        let mut values: Vec<ElementId> = (0..self.n).collect();
        values.shuffle(rng);
        for v in values {
            if *budget == 0 {
                break;
            }
            *budget -= 1;
            self.t[cell] = v;
            if self.consistent_at(cell / self.n, cell % self.n) && self.complete_randomly(rest, rng, budget) {
                return true;
            }
        }
        self.t[cell] = UNSET;
        false
    }
}

fn check_order(n: usize) -> Result<(), EnumerationError> {
    if n > EXHAUSTIVE_CAP {
        return Err(EnumerationError::OrderTooLarge { n, cap: EXHAUSTIVE_CAP });
    }
    Ok(())
}

/// Consistent first rows, the units of parallel work.
fn first_row_prefixes(n: usize) -> Vec<Search> {
    let mut out = Vec::new();
    let mut search = Search::new(n);
    let cells: Vec<usize> = (0..n).collect();
    search.exhaust(&cells, &mut |t| out.push(Search { n, t: t.to_vec() }));
    out
}

/// Folds `visit` over every associative table of order `n` (as flat
/// row-major products). Subtrees under each first row run in parallel and
/// are merged in a fixed order, so the result is deterministic.
pub fn fold_tables<A, I, F, M>(n: usize, init: I, visit: F, merge: M) -> Result<A, EnumerationError>
where
    A: Send,
    I: Fn() -> A + Sync,
    F: Fn(&mut A, &[ElementId]) + Sync,
    M: Fn(A, A) -> A,
{
    check_order(n)?;
    if n == 0 {
        return Ok(init());
    }
    let parts: Vec<A> = first_row_prefixes(n)
        .into_par_iter()
        .map(|mut search| {
            let mut acc = init();
            let cells = search.open_cells();
            search.exhaust(&cells, &mut |t| visit(&mut acc, t));
            acc
        })
        .collect();
    Ok(parts.into_iter().fold(init(), merge))
}

/// Number of associative tables on `n` labelled elements.
pub fn count(n: usize) -> Result<usize, EnumerationError> {
    fold_tables(n, || 0usize, |c, _| *c += 1, |a, b| a + b)
}

/// Every labelled semigroup of order `n` passing `filter`, in lexicographic order.
pub fn enumerate(n: usize, filter: &EnumerationFilter) -> Result<Vec<CayleyTable>, EnumerationError> {
    fold_tables(
        n,
        Vec::new,
        |acc, t| {
            let table = CayleyTable::from_flat(n, t.to_vec()).expect("enumerated tables are associative");
            if filter.accepts(&table) {
                acc.push(table);
            }
        },
        |mut a, mut b| {
            a.append(&mut b);
            a
        },
    )
}

/// Least flat table over all relabellings and the transpose.
pub fn canonical_form(table: &CayleyTable) -> Vec<ElementId> {
    let n = table.len();
    let mut best: Option<Vec<ElementId>> = None;
    for source in [table.clone(), table.transpose()] {
        for perm in (0..n).permutations(n) {
            let candidate = source.relabeled(&perm).flat().to_vec();
            if best.as_ref().is_none_or(|b| candidate < *b) {
                best = Some(candidate);
            }
        }
    }
    best.unwrap_or_default()
}

/// Classes of order-`n` semigroups up to isomorphism and anti-isomorphism.
pub fn census(n: usize) -> Result<usize, EnumerationError> {
    let forms = fold_tables(
        n,
        std::collections::BTreeSet::new,
        |acc, t| {
            acc.insert(canonical_form(&CayleyTable::from_flat(n, t.to_vec()).expect("associative")));
        },
        |mut a, mut b| {
            a.append(&mut b);
            a
        },
    )?;
    Ok(forms.len())
}

/// Random associative table of order `n`. An identity is always present;
/// a zero and some idempotent diagonal cells are prefilled at random before
/// a random-order backtracking completion.
pub fn random_table(n: usize, rng: &mut ChaCha8Rng) -> CayleyTable {
    assert!(n >= 1);
    loop {
        let mut search = Search::new(n);
        let one = 0;
        for a in 0..n {
            search.t[one * n + a] = a;
            search.t[a * n + one] = a;
        }
        if n > 2 && rng.gen_bool(0.5) {
            let zero = n - 1;
            for a in 0..n {
                if a != one {
                    search.t[zero * n + a] = zero;
                    search.t[a * n + zero] = zero;
                }
            }
        }
        for a in 1..n {
            if search.t[a * n + a] == UNSET && rng.gen_bool(0.5) {
                search.t[a * n + a] = a;
            }
        }
        if !search.consistent() {
            continue;
        }
        let cells = search.open_cells();
        let mut budget = SAMPLE_NODE_BUDGET;
        if search.complete_randomly(&cells, rng, &mut budget) {
            return CayleyTable::from_flat(n, search.t).expect("completed tables are associative");
        }
    }
}

/// `samples` random tables passing `filter`; sample `i` draws from stream `i` of `seed`.
pub fn sample_tables(n: usize, samples: usize, seed: u64, filter: &EnumerationFilter) -> Vec<CayleyTable> {
    (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            loop {
                let table = random_table(n, &mut rng);
                if filter.accepts(&table) {
                    return table;
                }
            }
        })
        .collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub tables: usize,
    /// Tables with some `a <<< b` where `a << b` fails, so that the
    /// chain condition is not vacuous.
    pub with_gaps: usize,
    pub pseudo_ll_transitive: usize,
    pub counterexamples: Vec<Vec<Vec<ElementId>>>,
}

impl Tally {
    fn merge(mut self, mut other: Tally) -> Tally {
        self.tables += other.tables;
        self.with_gaps += other.with_gaps;
        self.pseudo_ll_transitive += other.pseudo_ll_transitive;
        self.counterexamples.append(&mut other.counterexamples);
        self
    }

    fn record(&mut self, table: &CayleyTable) {
        self.tables += 1;
        let (gaps, pseudo) = pseudo_status(table);
        if gaps {
            self.with_gaps += 1;
        }
        if pseudo {
            self.pseudo_ll_transitive += 1;
        } else {
            self.counterexamples.push(table.rows());
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub order: usize,
    pub mode: &'static str,
    pub seed: Option<u64>,
    pub tables_scanned: usize,
    pub tables_passing_filters: usize,
    pub tables_with_gaps: usize,
    pub pseudo_ll_transitive_count: usize,
    pub counterexamples: Vec<Vec<Vec<ElementId>>>,
    /// Every singleton-rich table, unital or not.
    pub singleton_rich: Tally,
}

impl ConjectureReport {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Whether `<<<` is strictly larger than `<<`, and whether the table is
/// pseudo `<<`-transitive. A cyclic `<<` counts against the latter.
fn pseudo_status(table: &CayleyTable) -> (bool, bool) {
    match OrderStructure::new(table, BasisMode::Auto) {
        Ok(o) => {
            let gaps = table.elements().any(|a| table.elements().any(|b| o.is_lll(a, b) && !o.is_ll(a, b)));
            (gaps, o.is_pseudo_ll_transitive().unwrap_or(false))
        }
        Err(_) => (false, false),
    }
}

#[derive(Default)]
struct Census {
    scanned: usize,
    standing: Tally,
    singleton_rich: Tally,
}

impl Census {
    fn record(&mut self, table: &CayleyTable) {
        self.scanned += 1;
        if !table.is_singleton_rich() {
            return;
        }
        self.singleton_rich.record(table);
        if table.has_algebra_identity() {
            self.standing.record(table);
        }
    }

    fn merge(self, other: Census) -> Census {
        Census {
            scanned: self.scanned + other.scanned,
            standing: self.standing.merge(other.standing),
            singleton_rich: self.singleton_rich.merge(other.singleton_rich),
        }
    }

    fn report(self, order: usize, mode: &'static str, seed: Option<u64>) -> ConjectureReport {
        ConjectureReport {
            order,
            mode,
            seed,
            tables_scanned: self.scanned,
            tables_passing_filters: self.standing.tables,
            tables_with_gaps: self.standing.with_gaps,
            pseudo_ll_transitive_count: self.standing.pseudo_ll_transitive,
            counterexamples: self.standing.counterexamples,
            singleton_rich: self.singleton_rich,
        }
    }
}

/// Checks pseudo `<<`-transitivity on every unital singleton-rich semigroup of order `n`.
pub fn verify_conjecture(n: usize) -> Result<ConjectureReport, EnumerationError> {
    let census = fold_tables(
        n,
        Census::default,
        |c, t| c.record(&CayleyTable::from_flat(n, t.to_vec()).expect("associative")),
        Census::merge,
    )?;
    Ok(census.report(n, "exhaustive", None))
}

/// The same check on `samples` random unital singleton-rich tables.
pub fn verify_conjecture_sampled(n: usize, samples: usize, seed: u64) -> ConjectureReport {
    let tables = sample_tables(n, samples, seed, &EnumerationFilter::standing());
    let census = tables
        .par_iter()
        .map(|t| {
            let mut c = Census::default();
            c.record(t);
            c
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Census::default(), Census::merge);
    census.report(n, "sampled", Some(seed))
}
