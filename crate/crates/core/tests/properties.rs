//! Invariants that must survive relabelling the elements.

use proptest::prelude::*;
use semidet::cli::parse_table;
use semidet::determinant::{factor_determinant, DEFAULT_MAX_DIM};
use semidet::{BasisMode, CayleyTable, FormalSum, OrderStructure, Polynomial, StarAlgebra};

fn s7() -> CayleyTable {
    parse_table(include_str!("fixtures/s7.tbl")).unwrap()
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn star_product_commutes_with_relabelling(perm in permutation(8)) {
        let s = s7();
        let r = s.relabeled(&perm);
        let a = StarAlgebra::from_table(&s, BasisMode::Auto).unwrap();
        let b = StarAlgebra::from_table(&r, BasisMode::Auto).unwrap();
        for &x in a.basis() {
            for &y in a.basis() {
                let moved = FormalSum::from_terms(a.star_product_conjugation(x, y).terms().map(|(v, c)| (perm[v], c)));
                prop_assert_eq!(b.star_product_conjugation(perm[x], perm[y]), moved);
            }
        }
    }

    #[test]
    fn factorization_commutes_with_relabelling(perm in permutation(8)) {
        let s = s7();
        let f = factor_determinant(&s, BasisMode::Auto, DEFAULT_MAX_DIM).unwrap();
        let g = factor_determinant(&s.relabeled(&perm), BasisMode::Auto, DEFAULT_MAX_DIM).unwrap();
        prop_assert!(g.equal);
        let moved = f.product.substitute(|v| Some(Polynomial::var(perm[v])));
        prop_assert_eq!(g.product, moved);
    }

    #[test]
    fn z_round_trip(coeffs in prop::collection::vec(-3i64..=3, 7)) {
        let a = StarAlgebra::from_table(&s7(), BasisMode::Auto).unwrap();
        let x = FormalSum::from_terms(a.basis().iter().copied().zip(coeffs));
        prop_assert_eq!(a.z_inverse(&a.z_map(&x)), x.clone());
        prop_assert_eq!(a.z_map(&a.z_inverse(&x)), x);
    }
}

#[test]
fn closed_forms_hold_on_smooth_corpus() {
    use semidet::enumeration::enumerate;
    use semidet::EnumerationFilter;
    let mut smooth = 0;
    for n in 1..=4 {
        for t in enumerate(n, &EnumerationFilter::standing()).unwrap() {
            let order = OrderStructure::new(&t, BasisMode::Auto).unwrap();
            if !order.is_lll_smooth().unwrap() {
                continue;
            }
            smooth += 1;
            let alg = StarAlgebra::new(order);
            assert_eq!(alg.theorem43_check(), vec![], "\n{t}");
        }
    }
    assert!(smooth > 0);
}
