//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use semidet::cli::{parse_table, render_star_table, Format};
use semidet::determinant::{
    block_decompose, contracted_cayley, factor_determinant, full_vs_contracted, permutation_sum_det, semigroup_cayley,
    sym_det, DEFAULT_MAX_DIM,
};
use semidet::enumeration::{enumerate, verify_conjecture, verify_conjecture_sampled, DEFAULT_SEED};
use semidet::{
    BasisMode, CayleyTable, EnumerationFilter, FormalSum, LlRelation, Monomial, OrderStructure, Polynomial, Poset,
    StarAlgebra, SymbolicMatrix,
};

const S7: &str = include_str!("fixtures/s7.tbl");
const S4: &str = include_str!("fixtures/s4.tbl");
const S7_STAR_GOLDEN: &str = include_str!("golden/s7_star_table.txt");

const CRITERION1_BUDGET: Duration = Duration::from_secs(5);
const CORPUS_BUDGET: Duration = Duration::from_secs(600);
const CORPUS_MAX_ORDER: usize = 4;
const SAMPLES_PER_ORDER: usize = 5_000;
const RANDOM_MATRICES: usize = 100;
const MATRIX_SEED: u64 = 42;

type Check = Result<String, String>;

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn id(t: &CayleyTable, name: &str) -> usize {
    t.index_of(name).unwrap_or_else(|| panic!("no element {name}"))
}

fn var(t: &CayleyTable, name: &str) -> Polynomial {
    Polynomial::var(id(t, name))
}

fn show(t: &CayleyTable, p: &Polynomial) -> String {
    p.canonical_string(|v| t.name(v).to_string())
}

fn corpus() -> Vec<CayleyTable> {
    (1..=CORPUS_MAX_ORDER)
        .flat_map(|n| enumerate(n, &EnumerationFilter::standing()).expect("small order"))
        .collect()
}

fn criterion1() -> Check {
    let start = Instant::now();
    let s = parse_table(S7).map_err(|e| e.to_string())?;
    ensure(s.len() == 8 && s.zero().is_some(), || "expected 7 elements and a zero".into())?;
    let order = OrderStructure::new(&s, BasisMode::Auto).map_err(|e| e.to_string())?;
    ensure(order.is_lll_smooth().map_err(|e| e.to_string())?, || "not <<<-smooth".into())?;
    let alg = StarAlgebra::new(order);
    ensure(render_star_table(&alg, Format::Paper) == S7_STAR_GOLDEN, || "(S,*) table differs from golden".into())?;

    let (y, z, q) = (var(&s, "y"), var(&s, "z"), var(&s, "q"));
    let y3z3 = &y.pow(3) * &z.pow(3);
    let det_m_prime = sym_det(&block_decompose(&alg).m_prime, DEFAULT_MAX_DIM).map_err(|e| e.to_string())?;
    ensure(det_m_prime == &y3z3 * &q, || format!("Det M' = {}", show(&s, &det_m_prime)))?;

    let f = factor_determinant(&s, BasisMode::Auto, DEFAULT_MAX_DIM).map_err(|e| e.to_string())?;
    let yq: Polynomial = [("q", 1), ("t", 1), ("u", 1), ("v", -1), ("w", -1), ("y", -1), ("z", -1)]
        .iter()
        .map(|&(n, c)| Polynomial::term(c, Monomial::var(id(&s, n))))
        .sum();
    let expected = -(&y3z3 * &yq);
    ensure(f.sign == -1, || format!("sign {}", f.sign))?;
    ensure(f.product == expected, || format!("product {}", show(&s, &f.product)))?;
    let direct = sym_det(&contracted_cayley(&s).map_err(|e| e.to_string())?, DEFAULT_MAX_DIM).map_err(|e| e.to_string())?;
    ensure(direct == f.product && f.equal, || format!("direct {}", show(&s, &direct)))?;
    let elapsed = start.elapsed();
    ensure(elapsed < CRITERION1_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("sign -1, product {}, {elapsed:.2?}", show(&s, &f.product)))
}

fn criterion2() -> Check {
    let s = parse_table(S4).map_err(|e| e.to_string())?;
    ensure(s.is_singleton_rich(), || "not singleton-rich".into())?;
    let sp = s.star_plus().map_err(|e| e.to_string())?;
    let (z, t, u) = (id(&s, "z"), id(&s, "t"), id(&s, "u"));
    ensure(sp.plus(z) == t, || format!("z+ = {}", s.name(sp.plus(z))))?;
    ensure(sp.star(z) == u, || format!("z* = {}", s.name(sp.star(z))))?;
    ensure(Some(s.mul(u, t)) == s.zero(), || "ut != 0".into())?;
    Ok("z+ = t, z* = u, ut = 0".into())
}

fn criterion3() -> Check {
    let s = parse_table(S7).map_err(|e| e.to_string())?;
    let o = OrderStructure::new(&s, BasisMode::Auto).map_err(|e| e.to_string())?;
    let expected = [
        ("y", "y"),
        ("z", "z"),
        ("u", "y z u"),
        ("t", "y z t"),
        ("w", "y z u t w"),
        ("v", "y z u t v"),
        ("q", "y z u t w v q"),
    ];
    for (x, support) in expected {
        let mut want: Vec<usize> = support.split(' ').map(|n| id(&s, n)).collect();
        want.sort_unstable();
        let got: Vec<usize> = o.down_set(id(&s, x));
        ensure(got == want, || format!("Z({x}) support {got:?}"))?;
    }
    for (a, bs) in [("y", ["v", "q"]), ("z", ["w", "q"])] {
        for b in bs {
            let (ia, ib) = (id(&s, a), id(&s, b));
            ensure(o.is_lll(ia, ib) && !o.is_ll(ia, ib), || format!("{a} vs {b}"))?;
        }
    }
    Ok("seven supports and four strict <<< pairs".into())
}

fn criterion4(corpus: &[CayleyTable]) -> Check {
    let start = Instant::now();
    for t in corpus {
        let alg = StarAlgebra::from_table(t, BasisMode::Auto).map_err(|e| format!("{e}\n{t}"))?;
        if let Some((a, b)) = alg.check_homomorphism().map_err(|e| e.to_string())? {
            return Err(format!("Z({a})*Z({b}) != Z({a}{b}) in\n{t}"));
        }
        if let Some((a, b)) = alg.xi_conjugation_mismatch().map_err(|e| e.to_string())? {
            return Err(format!("xi and conjugation differ at ({a}, {b}) in\n{t}"));
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < CORPUS_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("{} tables, {elapsed:.2?}", corpus.len()))
}

fn criterion5(corpus: &[CayleyTable]) -> Check {
    let s7 = parse_table(S7).map_err(|e| e.to_string())?;
    let mut smooth = 0;
    for t in corpus.iter().chain(std::iter::once(&s7)) {
        let o = OrderStructure::new(t, BasisMode::Auto).map_err(|e| e.to_string())?;
        if !o.is_lll_smooth().map_err(|e| e.to_string())? {
            continue;
        }
        smooth += 1;
        let f = factor_determinant(t, BasisMode::Auto, DEFAULT_MAX_DIM).map_err(|e| format!("{e}\n{t}"))?;
        ensure(f.equal, || format!("product != direct in\n{t}"))?;
        ensure(f.det_m == f.det_m_prime, || format!("Det M != Det M' in\n{t}"))?;
    }
    Ok(format!("{smooth} <<<-smooth tables"))
}

fn criterion6() -> Check {
    let mut summary = Vec::new();
    for n in 2..=4 {
        let r = verify_conjecture(n).map_err(|e| e.to_string())?;
        ensure(r.holds(), || format!("order {n}: {} counterexamples", r.counterexamples.len()))?;
        summary.push(format!("n={n}: {}", r.tables_passing_filters));
    }
    let mut failures = Vec::new();
    for n in [7, 8] {
        let r = verify_conjecture_sampled(n, SAMPLES_PER_ORDER, DEFAULT_SEED);
        ensure(r.tables_passing_filters == SAMPLES_PER_ORDER, || format!("order {n}: short sample"))?;
        let line = format!(
            "n={n}: {} sampled, {} with <<< != <<, {} counterexamples",
            r.tables_passing_filters,
            r.tables_with_gaps,
            r.counterexamples.len()
        );
        if !r.holds() {
            failures.push(line.clone());
        }
        summary.push(line);
    }
    ensure(failures.is_empty(), || summary.join(", "))?;
    Ok(summary.join(", "))
}

fn criterion7(corpus: &[CayleyTable]) -> Check {
    let mut checked = 0;
    for t in corpus {
        if t.is_ecom() {
            continue;
        }
        let alg = StarAlgebra::from_table(t, BasisMode::Auto).map_err(|e| e.to_string())?;
        if !alg.order().is_pseudo_ll_transitive().map_err(|e| e.to_string())? {
            continue;
        }
        alg.noncommuting_star_witness().map_err(|e| format!("{e}\n{t}"))?;
        checked += 1;
    }
    let s = parse_table(S7).map_err(|e| e.to_string())?;
    let alg = StarAlgebra::from_table(&s, BasisMode::Auto).map_err(|e| e.to_string())?;
    let (a, b, p) = alg.noncommuting_star_witness().map_err(|e| e.to_string())?;
    let (sa, sb) = (s.name(a).to_string(), s.name(b).to_string());
    ensure((sa.as_str(), sb.as_str()) == ("u", "v"), || format!("S7 witness ({sa}, {sb})"))?;
    ensure(p == FormalSum::from_terms([(id(&s, "y"), -1)]), || "u*v != -y".into())?;
    Ok(format!("{checked} corpus tables, S7: u*v = -y"))
}

fn random_matrix(rng: &mut ChaCha8Rng) -> SymbolicMatrix {
    let n = rng.gen_range(1..=4);
    let entries = (0..n * n)
        .map(|_| {
            (0..rng.gen_range(0..=3))
                .map(|_| Polynomial::term(rng.gen_range(-3i64..=3), Monomial::var(rng.gen_range(0..5))))
                .sum()
        })
        .collect();
    SymbolicMatrix::new((0..n).collect(), (0..n).collect(), entries)
}

fn criterion8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(MATRIX_SEED);
    for k in 0..RANDOM_MATRICES {
        let m = random_matrix(&mut rng);
        let d = sym_det(&m, DEFAULT_MAX_DIM).map_err(|e| e.to_string())?;
        ensure(d == permutation_sum_det(&m), || format!("matrix {k} disagrees"))?;
    }
    let c2 = CayleyTable::new(vec!["e".into(), "g".into()], vec![vec![0, 1], vec![1, 0]]).map_err(|e| e.to_string())?;
    let d = sym_det(&semigroup_cayley(&c2), DEFAULT_MAX_DIM).map_err(|e| e.to_string())?;
    let (e, g) = (Polynomial::var(0), Polynomial::var(1));
    ensure(d == &e.pow(2) - &g.pow(2), || format!("C2: {d}"))?;
    let chain = CayleyTable::new(vec!["a".into(), "b".into()], vec![vec![0, 0], vec![0, 1]]).map_err(|e| e.to_string())?;
    let d = sym_det(&semigroup_cayley(&chain), DEFAULT_MAX_DIM).map_err(|e| e.to_string())?;
    let (a, b) = (Polynomial::var(0), Polynomial::var(1));
    ensure(d == &(&a * &b) - &a.pow(2), || format!("chain: {d}"))?;
    Ok(format!("{RANDOM_MATRICES} random matrices, C2 and the two-element chain"))
}

fn criterion9() -> Check {
    for (name, text) in [("S4", S4), ("S7", S7)] {
        let t = parse_table(text).map_err(|e| e.to_string())?;
        ensure(full_vs_contracted(&t, DEFAULT_MAX_DIM).map_err(|e| e.to_string())?, || format!("{name} fails"))?;
    }
    Ok("S4 and S7".into())
}

fn criterion10(corpus: &[CayleyTable]) -> Check {
    let mut pairs = 0;
    for t in corpus {
        let sp = t.star_plus().map_err(|e| e.to_string())?;
        let ll = LlRelation::new(t, &sp);
        ensure(ll.is_reflexive() && ll.is_antisymmetric(), || format!("<< not reflexive/antisymmetric in\n{t}"))?;
        Poset::closure(&ll).map_err(|e| format!("{e}\n{t}"))?;
        let idem = t.idempotents();
        for s in t.elements() {
            for &e in &idem {
                ensure(ll.holds(t.mul(e, s), s) && ll.holds(t.mul(s, e), s), || format!("es/se lemma in\n{t}"))?;
                for &f in &idem {
                    ensure(ll.holds(t.product(&[e, s, f]), s), || format!("esf lemma in\n{t}"))?;
                }
            }
        }
        for (e, f) in t.minimal_noncommuting_pairs() {
            pairs += 1;
            let (ef, fe) = (t.mul(e, f), t.mul(f, e));
            let first = sp.plus(ef) == e && sp.star(ef) == f;
            let second = sp.plus(fe) == f && sp.star(fe) == e;
            ensure(first || second, || format!("pair lemma fails at ({e}, {f}) in\n{t}"))?;
            ensure(first || t.is_idempotent(ef), || format!("ef not idempotent at ({e}, {f}) in\n{t}"))?;
        }
    }
    Ok(format!("{} tables, {pairs} minimal non-commuting pairs", corpus.len()))
}

fn main() {
    let corpus = corpus();
    let results: Vec<(&str, Check)> = vec![
        ("1 worked example end-to-end", criterion1()),
        ("2 four-element example", criterion2()),
        ("3 down-sets and strict <<< pairs", criterion3()),
        ("4 Z is a homomorphism on the corpus", criterion4(&corpus)),
        ("5 determinant factorization", criterion5(&corpus)),
        ("6 pseudo <<-transitivity census", criterion6()),
        ("7 non-commuting * witnesses", criterion7(&corpus)),
        ("8 determinant oracles", criterion8()),
        ("9 full and contracted determinants", criterion9()),
        ("10 lemma suite", criterion10(&corpus)),
    ];
    let mut failed = 0;
    for (name, result) in &results {
        match result {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
