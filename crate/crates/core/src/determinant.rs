//! Symbolic Cayley matrices, exact determinants and the idempotent-block
//! factorization of the (contracted) semigroup determinant.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::mobius::{StarAlgebra, StructureConstants};
use crate::order::{BasisMode, OrderError, OrderStructure};
use crate::polynomial::{Monomial, Polynomial};
use crate::semigroup::{CayleyTable, ElementId, IMPLICIT_ZERO_LABEL};

pub const DEFAULT_MAX_DIM: usize = 10;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum DeterminantError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("matrix dimension {dim} exceeds the cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("semigroup has no zero element")]
    NoZeroElement,
    #[error("semigroup is not <<<-smooth")]
    NotLllSmooth,
    #[error("block product does not match the direct determinant")]
    FactorizationMismatch,
    #[error("permutation sign {parity} disagrees with the determinant ratio {ratio}")]
    SignMismatch { parity: i32, ratio: i32 },
}

/// Printable name of variable `x_v`: the element label, or `x0` for an
/// implicit zero whose label `0` would read as a constant.
pub fn variable_name(names: &[String], v: usize) -> String {
    if names[v] == IMPLICIT_ZERO_LABEL {
        "x0".to_string()
    } else {
        names[v].clone()
    }
}

/// A square matrix of polynomials whose rows and columns are labelled by elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicMatrix {
    row_labels: Vec<ElementId>,
    col_labels: Vec<ElementId>,
    entries: Vec<Polynomial>,
}

impl SymbolicMatrix {
    pub fn new(row_labels: Vec<ElementId>, col_labels: Vec<ElementId>, entries: Vec<Polynomial>) -> Self {
        assert_eq!(row_labels.len(), col_labels.len(), "matrix must be square");
        assert_eq!(entries.len(), row_labels.len() * col_labels.len());
        SymbolicMatrix { row_labels, col_labels, entries }
    }

    pub fn from_fn(rows: Vec<ElementId>, cols: Vec<ElementId>, mut f: impl FnMut(ElementId, ElementId) -> Polynomial) -> Self {
        let entries = rows.iter().flat_map(|&r| cols.iter().map(|&c| f(r, c)).collect::<Vec<_>>()).collect();
        SymbolicMatrix::new(rows, cols, entries)
    }

    pub fn dim(&self) -> usize {
        self.row_labels.len()
    }

    pub fn row_labels(&self) -> &[ElementId] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[ElementId] {
        &self.col_labels
    }

    /// Entry at row position `i`, column position `j`.
    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.dim() + j]
    }

    /// Entry at the row labelled `r` and column labelled `c`.
    pub fn entry(&self, r: ElementId, c: ElementId) -> Option<&Polynomial> {
        let i = self.row_labels.iter().position(|&x| x == r)?;
        let j = self.col_labels.iter().position(|&x| x == c)?;
        Some(self.get(i, j))
    }

    /// Reorders rows and columns; `rows[k]` is the old position of new row `k`.
    pub fn permuted(&self, rows: &[usize], cols: &[usize]) -> SymbolicMatrix {
        let n = self.dim();
        let mut entries = Vec::with_capacity(n * n);
        for &i in rows {
            for &j in cols {
                entries.push(self.get(i, j).clone());
            }
        }
        SymbolicMatrix::new(
            rows.iter().map(|&i| self.row_labels[i]).collect(),
            cols.iter().map(|&j| self.col_labels[j]).collect(),
            entries,
        )
    }

    pub fn map_entries(&self, mut f: impl FnMut(usize, usize, &Polynomial) -> Polynomial) -> SymbolicMatrix {
        let n = self.dim();
        let entries = (0..n * n).map(|k| f(k / n, k % n, &self.entries[k])).collect();
        SymbolicMatrix::new(self.row_labels.clone(), self.col_labels.clone(), entries)
    }

    /// Plain-text grid with `names` for labels and variables.
    pub fn render(&self, names: &[String]) -> String {
        let cell = |p: &Polynomial| {
            if p.is_zero() {
                ".".to_string()
            } else {
                p.canonical_string(|v| variable_name(names, v))
            }
        };
        let mut out = String::new();
        out.push_str(&format!(
            "|{}\n",
            self.col_labels.iter().map(|&c| names[c].as_str()).collect::<Vec<_>>().join(" ")
        ));
        for (i, &r) in self.row_labels.iter().enumerate() {
            let row: Vec<String> = (0..self.dim()).map(|j| cell(self.get(i, j))).collect();
            out.push_str(&format!("{}|{}\n", names[r], row.join(" ")));
        }
        out
    }
}

/// `C(A, B)_{b, b'} = sum_{b''} c_{b'', b, b'} x_{b''}`.
pub fn cayley_matrix(sc: &StructureConstants) -> SymbolicMatrix {
    let basis = sc.basis().to_vec();
    SymbolicMatrix::from_fn(basis.clone(), basis.clone(), |b, b1| {
        basis
            .iter()
            .map(|&b2| Polynomial::term(sc.get(b2, b, b1), Monomial::var(b2)))
            .sum()
    })
}

/// Entry `(s, t)` is `x_{st}`.
pub fn semigroup_cayley(table: &CayleyTable) -> SymbolicMatrix {
    let all: Vec<ElementId> = table.elements().collect();
    SymbolicMatrix::from_fn(all.clone(), all, |s, t| Polynomial::var(table.mul(s, t)))
}

/// Non-zero elements only; entry `(s, t)` is `x_{st}`, or `0` when `st = 0`.
pub fn contracted_cayley(table: &CayleyTable) -> Result<SymbolicMatrix, DeterminantError> {
    let zero = table.zero().ok_or(DeterminantError::NoZeroElement)?;
    let rest: Vec<ElementId> = table.elements().filter(|&s| s != zero).collect();
    Ok(SymbolicMatrix::from_fn(rest.clone(), rest, |s, t| {
        let p = table.mul(s, t);
        if p == zero {
            Polynomial::zero()
        } else {
            Polynomial::var(p)
        }
    }))
}

/// Determinant by expansion along rows, memoized over the set of columns
/// still available.
pub fn sym_det(m: &SymbolicMatrix, max_dim: usize) -> Result<Polynomial, DeterminantError> {
    let n = m.dim();
    if n > max_dim {
        return Err(DeterminantError::DimensionCap { dim: n, cap: max_dim });
    }
    // minors[mask] = det of the last |mask| rows restricted to columns in mask
    let mut minors = vec![Polynomial::zero(); 1 << n];
    minors[0] = Polynomial::one();
    for mask in 1usize..1 << n {
        let row = n - mask.count_ones() as usize;
        let mut acc = Polynomial::zero();
        let mut before = 0;
        for col in 0..n {
            if mask & (1 << col) == 0 {
                continue;
            }
            let entry = m.get(row, col);
            let rest = &minors[mask & !(1 << col)];
            if !entry.is_zero() && !rest.is_zero() {
                let term = entry * rest;
                acc = if before % 2 == 0 { acc + term } else { acc - term };
            }
            before += 1;
        }
        minors[mask] = acc;
    }
    Ok(minors.pop().expect("non-empty"))
}

/// Parity of a permutation given as a list of images: `+1` or `-1`.
pub fn permutation_sign(perm: &[usize]) -> i32 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Rows `{s : s* = e}` and columns `{s : s+ = e}` of one idempotent block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub idempotent: ElementId,
    pub rows: Vec<ElementId>,
    pub cols: Vec<ElementId>,
}

impl Block {
    pub fn is_square(&self) -> bool {
        self.rows.len() == self.cols.len()
    }
}

#[derive(Clone, Debug)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
    /// The `*`-Cayley matrix in basis order.
    pub star_matrix: SymbolicMatrix,
    pub m: SymbolicMatrix,
    pub m_prime: SymbolicMatrix,
    pub row_perm: Vec<usize>,
    pub col_perm: Vec<usize>,
    pub sign: i32,
}

/// Idempotent blocks ordered by their least row element.
pub fn blocks(order: &OrderStructure) -> Vec<Block> {
    let idempotents: Vec<ElementId> = order
        .basis()
        .iter()
        .copied()
        .filter(|&e| order.table().is_idempotent(e))
        .collect();
    let mut out: Vec<Block> = idempotents
        .into_iter()
        .map(|e| Block {
            idempotent: e,
            rows: order.basis().iter().copied().filter(|&s| order.star(s) == e).collect(),
            cols: order.basis().iter().copied().filter(|&s| order.plus(s) == e).collect(),
        })
        .collect();
    out.sort_by_key(|b| b.rows[0]);
    out
}

/// Groups the rows of the `*`-Cayley matrix by `s*` and the columns by `s+`.
pub fn block_decompose(alg: &StarAlgebra) -> BlockDecomposition {
    let order = alg.order();
    let star_matrix = cayley_matrix(&alg.star_structure_constants());
    let blocks = blocks(order);
    let position = |s: ElementId| order.basis().iter().position(|&b| b == s).expect("basis element");
    let row_perm: Vec<usize> = blocks.iter().flat_map(|b| b.rows.iter().map(|&s| position(s))).collect();
    let col_perm: Vec<usize> = blocks.iter().flat_map(|b| b.cols.iter().map(|&s| position(s))).collect();
    let m = star_matrix.permuted(&row_perm, &col_perm);
    let block_of_row = |s: ElementId| order.star(s);
    let block_of_col = |s: ElementId| order.plus(s);
    let m_prime = m.map_entries(|i, j, p| {
        if block_of_row(m.row_labels()[i]) == block_of_col(m.col_labels()[j]) {
            p.clone()
        } else {
            Polynomial::zero()
        }
    });
    let sign = permutation_sign(&row_perm) * permutation_sign(&col_perm);
    BlockDecomposition { blocks, star_matrix, m, m_prime, row_perm, col_perm, sign }
}

/// Determinant of the `{s : s* = e} x {s : s+ = e}` block of the `*`-Cayley
/// matrix; zero when the block is not square.
pub fn theta_e(alg: &StarAlgebra, e: ElementId, max_dim: usize) -> Result<Polynomial, DeterminantError> {
    let block = blocks(alg.order())
        .into_iter()
        .find(|b| b.idempotent == e)
        .expect("idempotent of the basis");
    block_determinant(alg, &block, max_dim)
}

fn block_determinant(alg: &StarAlgebra, block: &Block, max_dim: usize) -> Result<Polynomial, DeterminantError> {
    if !block.is_square() {
        return Ok(Polynomial::zero());
    }
    let sub = SymbolicMatrix::from_fn(block.rows.clone(), block.cols.clone(), |s, t| {
        alg.star_product_conjugation(s, t)
            .terms()
            .map(|(v, c)| Polynomial::term(c, Monomial::var(v)))
            .sum()
    });
    sym_det(&sub, max_dim)
}

#[derive(Clone, Debug)]
pub struct Factor {
    pub idempotent: ElementId,
    /// Block determinant in the `*`-variables.
    pub theta: Polynomial,
    /// The same after `y_s = sum_{t <<< s} mu(t, s) x_t`.
    pub substituted: Polynomial,
}

#[derive(Clone, Debug)]
pub struct Factorization {
    pub names: Vec<String>,
    pub contracted: bool,
    pub sign: i32,
    pub factors: Vec<Factor>,
    pub det_m: Polynomial,
    pub det_m_prime: Polynomial,
    pub product: Polynomial,
    pub direct: Polynomial,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorRecord {
    pub idempotent: String,
    pub polynomial: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorizationRecord {
    pub sign: i32,
    pub factors: Vec<FactorRecord>,
    pub product: String,
    pub direct: String,
    pub equal: bool,
}

impl Factorization {
    pub fn render(&self, p: &Polynomial) -> String {
        p.canonical_string(|v| variable_name(&self.names, v))
    }

    pub fn record(&self) -> FactorizationRecord {
        FactorizationRecord {
            sign: self.sign,
            factors: self
                .factors
                .iter()
                .map(|f| FactorRecord {
                    idempotent: self.names[f.idempotent].clone(),
                    polynomial: self.render(&f.substituted),
                })
                .collect(),
            product: self.render(&self.product),
            direct: self.render(&self.direct),
            equal: self.equal,
        }
    }
}

/// `y_s = sum_{t <<< s} mu(t, s) x_t` on the basis.
pub fn mobius_substitution(alg: &StarAlgebra, s: ElementId) -> Polynomial {
    alg.order()
        .down_set(s)
        .into_iter()
        .map(|t| Polynomial::term(alg.mobius().get(t, s).expect("t <<< s"), Monomial::var(t)))
        .sum()
}

/// Factors the contracted determinant (full in [`BasisMode::Full`] or when
/// there is no zero) into idempotent blocks and checks the product against
/// the directly computed determinant.
pub fn factor_determinant(table: &CayleyTable, mode: BasisMode, max_dim: usize) -> Result<Factorization, DeterminantError> {
    let order = OrderStructure::new(table, mode)?;
    if !order.is_lll_smooth()? {
        return Err(DeterminantError::NotLllSmooth);
    }
    let contracted = order.is_contracted();
    let alg = StarAlgebra::new(order);
    let direct_matrix = if contracted { contracted_cayley(table)? } else { semigroup_cayley(table) };
    if direct_matrix.dim() > max_dim {
        return Err(DeterminantError::DimensionCap { dim: direct_matrix.dim(), cap: max_dim });
    }
    let direct = sym_det(&direct_matrix, max_dim)?;
    let bd = block_decompose(&alg);
    let thetas: Vec<Polynomial> = bd
        .blocks
        .par_iter()
        .map(|b| block_determinant(&alg, b, max_dim))
        .collect::<Result<_, _>>()?;
    let det_m = sym_det(&bd.m, max_dim)?;
    let det_m_prime = sym_det(&bd.m_prime, max_dim)?;
    let sigma = |v: usize| Some(mobius_substitution(&alg, v));
    let factors: Vec<Factor> = bd
        .blocks
        .iter()
        .zip(thetas)
        .map(|(b, theta)| Factor { idempotent: b.idempotent, substituted: theta.substitute(sigma), theta })
        .collect();
    let unsigned: Polynomial = factors.iter().map(|f| f.substituted.clone()).product();
    let ratio = if direct == unsigned {
        1
    } else if direct == -&unsigned {
        -1
    } else {
        return Err(DeterminantError::FactorizationMismatch);
    };
    if !direct.is_zero() && ratio != bd.sign {
        return Err(DeterminantError::SignMismatch { parity: bd.sign, ratio });
    }
    let product = if bd.sign < 0 { -unsigned } else { unsigned };
    Ok(Factorization {
        names: table.names().to_vec(),
        contracted,
        sign: bd.sign,
        equal: product == direct,
        factors,
        det_m,
        det_m_prime,
        product,
        direct,
    })
}

/// `theta_S(X) = x_0 * theta~_S(Y)` with `y_s = x_s - x_0`.
pub fn full_vs_contracted(table: &CayleyTable, max_dim: usize) -> Result<bool, DeterminantError> {
    let zero = table.zero().ok_or(DeterminantError::NoZeroElement)?;
    let full = sym_det(&semigroup_cayley(table), max_dim)?;
    let contracted = sym_det(&contracted_cayley(table)?, max_dim)?;
    let x0 = Polynomial::var(zero);
    let shifted = contracted.substitute(|v| Some(&Polynomial::var(v) - &x0));
    Ok(full == &x0 * &shifted)
}

/// Evaluates `sum_sigma sign(sigma) prod a[i][sigma(i)]` directly.
pub fn permutation_sum_det(m: &SymbolicMatrix) -> Polynomial {
    fn rec(m: &SymbolicMatrix, row: usize, used: &mut Vec<bool>, perm: &mut Vec<usize>, acc: &mut Polynomial) {
        let n = m.dim();
        if row == n {
            let term: Polynomial = perm.iter().enumerate().map(|(i, &j)| m.get(i, j).clone()).product();
            *acc = if permutation_sign(perm) > 0 { acc.clone() + term } else { acc.clone() - term };
            return;
        }
        for j in 0..n {
            if !used[j] {
                used[j] = true;
                perm.push(j);
                rec(m, row + 1, used, perm, acc);
                perm.pop();
                used[j] = false;
            }
        }
    }
    let mut acc = Polynomial::zero();
    rec(m, 0, &mut vec![false; m.dim()], &mut Vec::new(), &mut acc);
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::fixtures::*;
    use proptest::prelude::*;

    fn s7_alg() -> (CayleyTable, StarAlgebra) {
        let s = s7();
        let a = StarAlgebra::from_table(&s, BasisMode::Auto).unwrap();
        (s, a)
    }

    fn mono(t: &CayleyTable, c: i64, vars: &[(&str, u32)]) -> Polynomial {
        Polynomial::term(c, Monomial::from_exponents(vars.iter().map(|&(n, e)| (id(t, n), e))))
    }

    fn names_of(t: &CayleyTable, v: &[ElementId]) -> Vec<String> {
        v.iter().map(|&s| t.name(s).to_string()).collect()
    }

    #[test]
    fn c2_determinant() {
        let c2 = CayleyTable::new(vec!["e".into(), "g".into()], vec![vec![0, 1], vec![1, 0]]).unwrap();
        let m = semigroup_cayley(&c2);
        assert_eq!(m.get(0, 1), &Polynomial::var(1));
        let d = sym_det(&m, DEFAULT_MAX_DIM).unwrap();
        assert_eq!(d.canonical_string(|v| format!("x_{}", c2.name(v))), "x_e^2 - x_g^2");
    }

    #[test]
    fn two_chain_determinant() {
        let t = two_chain();
        let d = sym_det(&semigroup_cayley(&t), DEFAULT_MAX_DIM).unwrap();
        assert_eq!(d, &(&Polynomial::var(0) * &Polynomial::var(1)) - &Polynomial::var(0).pow(2));
        let f = factor_determinant(&t, BasisMode::Full, DEFAULT_MAX_DIM).unwrap();
        assert!(f.equal);
        assert_eq!(f.product, d);
    }

    #[test]
    fn trivial_factorization() {
        let f = factor_determinant(&trivial(), BasisMode::Auto, DEFAULT_MAX_DIM).unwrap();
        assert_eq!(f.sign, 1);
        assert_eq!(f.product, Polynomial::var(0));
    }

    #[test]
    fn zero_row_gives_zero() {
        let t = CayleyTable::from_flat(2, vec![0, 0, 0, 0]).unwrap();
        let m = contracted_cayley(&t).unwrap();
        assert!(sym_det(&m, DEFAULT_MAX_DIM).unwrap().is_zero());
        assert!(full_vs_contracted(&t, DEFAULT_MAX_DIM).unwrap());
    }

    #[test]
    fn contracted_requires_zero() {
        assert_eq!(contracted_cayley(&cyclic(2)), Err(DeterminantError::NoZeroElement));
        let s = s4();
        let m = contracted_cayley(&s).unwrap();
        assert_eq!(m.dim(), 4);
        assert!(m.entry(id(&s, "u"), id(&s, "t")).unwrap().is_zero());
    }

    #[test]
    fn dimension_cap() {
        let m = semigroup_cayley(&s7());
        assert_eq!(sym_det(&m, 5), Err(DeterminantError::DimensionCap { dim: 8, cap: 5 }));
    }

    #[test]
    fn s7_blocks_match_layout() {
        let (s, a) = s7_alg();
        let bd = block_decompose(&a);
        assert_eq!(names_of(&s, bd.m.row_labels()), ["y", "t", "v", "z", "u", "w", "q"]);
        assert_eq!(names_of(&s, bd.m.col_labels()), ["y", "u", "v", "z", "t", "w", "q"]);
        assert_eq!(bd.sign, -1);
        assert_eq!(bd.m.entry(id(&s, "t"), id(&s, "w")).unwrap(), &mono(&s, -1, &[("z", 1)]));
        assert!(bd.m_prime.entry(id(&s, "t"), id(&s, "w")).unwrap().is_zero());
        let det_mp = sym_det(&bd.m_prime, DEFAULT_MAX_DIM).unwrap();
        assert_eq!(det_mp, mono(&s, 1, &[("y", 3), ("z", 3), ("q", 1)]));
        assert_eq!(sym_det(&bd.m, DEFAULT_MAX_DIM).unwrap(), det_mp);
    }

    #[test]
    fn s7_block_determinants() {
        let (s, a) = s7_alg();
        assert_eq!(theta_e(&a, id(&s, "v"), 10).unwrap(), mono(&s, -1, &[("y", 2), ("z", 1)]));
        assert_eq!(theta_e(&a, id(&s, "w"), 10).unwrap(), mono(&s, -1, &[("y", 1), ("z", 2)]));
        assert_eq!(theta_e(&a, id(&s, "q"), 10).unwrap(), Polynomial::var(id(&s, "q")));
    }

    #[test]
    fn s7_factorization() {
        let s = s7();
        let f = factor_determinant(&s, BasisMode::Auto, DEFAULT_MAX_DIM).unwrap();
        assert_eq!(f.sign, -1);
        assert!(f.equal);
        assert_eq!(
            f.render(&f.product),
            "y^4*z^3 + y^3*z^4 - y^3*z^3*u - y^3*z^3*t + y^3*z^3*w + y^3*z^3*v - y^3*z^3*q"
        );
        assert_eq!(f.det_m, f.det_m_prime);
        assert!(f.direct.is_homogeneous());
        assert_eq!(f.direct.degree(), Some(7));
    }

    #[test]
    fn bridges_full_and_contracted() {
        assert!(full_vs_contracted(&s4(), DEFAULT_MAX_DIM).unwrap());
        assert!(full_vs_contracted(&s7(), DEFAULT_MAX_DIM).unwrap());
        assert_eq!(full_vs_contracted(&cyclic(3), 10), Err(DeterminantError::NoZeroElement));
    }

    #[test]
    fn permutation_signs() {
        assert_eq!(permutation_sign(&[0, 1, 2]), 1);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[1, 2, 0]), 1);
        assert_eq!(permutation_sign(&[0, 3, 5, 1, 2, 4, 6]), -1);
        assert_eq!(permutation_sign(&[0, 2, 5, 1, 3, 4, 6]), 1);
    }

    fn arb_matrix() -> impl Strategy<Value = SymbolicMatrix> {
        (1usize..=4).prop_flat_map(|n| {
            prop::collection::vec(prop::collection::vec((-2i64..=2, 0usize..4), 0..3), n * n).prop_map(move |cells| {
                let entries = cells
                    .into_iter()
                    .map(|terms| terms.into_iter().map(|(c, v)| Polynomial::term(c, Monomial::var(v))).sum())
                    .collect();
                SymbolicMatrix::new((0..n).collect(), (0..n).collect(), entries)
            })
        })
    }

    proptest! {
        #[test]
        fn minor_expansion_matches_permutation_sum(m in arb_matrix()) {
            prop_assert_eq!(sym_det(&m, DEFAULT_MAX_DIM).unwrap(), permutation_sum_det(&m));
        }
    }
}
