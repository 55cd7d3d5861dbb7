//! Acceptance suite. Prints one PASS/FAIL line per criterion.
//!
//! Criteria 2 and 3 cannot hold on matrix entries whose omega class has no
//! tetrahedrally symmetric representative (Z/2, Z/3 and S3 nontrivial). They
//! are evaluated on every entry and report FAIL; the assertions below pin
//! that exactly those entries fail and every other entry passes.

use std::time::{Duration, Instant};

use dwtrace::groupoid_rep::{
    alpha_regular_count, stabilizer_cocycles, twisted_algebra_decompose, ActionGroupoid, TwistedGroupAlgebra,
};
use dwtrace::groups::{conjugacy, cyclic, symmetric3, FiniteGroup, PairEmbedding};
use dwtrace::monomial::{center_dimension, DecompositionConfig};
use dwtrace::phases::{
    coboundary, cohomology_group, cyclic_three_cocycle, is_cocycle, solve_coboundary_equation, Cochain,
    CoboundarySolution, Phase, SolverConfig,
};
use dwtrace::trace_engine::{
    admitted_test_matrix, compute_trace, cyclic_invariance_check, drinfeld_center, gauge_robustness,
    solve_admissible_theta, MatrixEntry, MultiPointDatum, OmegaKind, RouteComparison, ThetaOutcome, TraceConfig,
    TraceReport,
};
use dwtrace::transgression::{
    check_groupoid_cocycle, mixed_normalization_check, pullback_pair, tau_closed_form, tau_simplicial,
};

/// Criterion 1 wall-clock limit for the whole matrix.
const MATRIX_LIMIT: Duration = Duration::from_secs(60);
/// Criterion 8 limit per cyclic check.
const CYCLIC_LIMIT: Duration = Duration::from_secs(5);
/// Criterion 7 shifts per entry.
const GAUGE_SHIFTS: usize = 10;
const GAUGE_SEED: u64 = 7;
/// Eigenvalue clustering tolerances used throughout.
const TOLERANCE: f64 = 1e-8;
const GAP: f64 = 1e-4;

fn config() -> TraceConfig {
    let decomposition = DecompositionConfig { seed: 0, tolerance: TOLERANCE, gap: GAP, ..Default::default() };
    TraceConfig { decomposition, ..Default::default() }
}

fn line(n: usize, ok: bool, what: &str, detail: &str) {
    println!("criterion {n}: {} {what} [{detail}]", if ok { "PASS" } else { "FAIL" });
}

fn symmetric(e: &MatrixEntry) -> bool {
    e.omega_kind != OmegaKind::Unsymmetrizable
}

fn matrix() -> Vec<MatrixEntry> {
    admitted_test_matrix(&SolverConfig::default()).expect("test matrix")
}

fn traces(m: &[MatrixEntry]) -> (Vec<TraceReport>, Duration) {
    let start = Instant::now();
    let r = m.iter().map(|e| compute_trace::<f64>(&e.datum, &config()).expect(&e.label)).collect();
    (r, start.elapsed())
}

/// Irrep dimensions of a group from class count and abelianization alone:
/// the unique multiset of `k` positive integers with squares summing to
/// `|C|` and exactly `|C / [C, C]|` ones.
fn character_oracle(c: &FiniteGroup) -> Vec<usize> {
    let k = conjugacy(c).classes.len();
    let comms: Vec<usize> = c
        .elements()
        .flat_map(|a| c.elements().map(move |b| (a, b)))
        .map(|(a, b)| c.mul(c.mul(a, b), c.mul(c.inv(a), c.inv(b))))
        .collect();
    let linear = c.order() / c.closure(&comms).len();
    let mut found = Vec::new();
    fn search(rest: usize, left: usize, min: usize, cur: &mut Vec<usize>, found: &mut Vec<Vec<usize>>) {
        if left == 0 {
            if rest == 0 {
                found.push(cur.clone());
            }
            return;
        }
        let mut n = min;
        while n * n <= rest {
            cur.push(n);
            search(rest - n * n, left - 1, n, cur, found);
            cur.pop();
            n += 1;
        }
    }
    search(c.order() - linear, k - linear, 2, &mut vec![1; linear], &mut found);
    assert_eq!(found.len(), 1, "character oracle is ambiguous for order {}", c.order());
    found.pop().unwrap()
}

/// Drinfeld center with trivial omega: per class, `|class| * n` over the
/// centralizer's irreps.
fn center_oracle(g: &FiniteGroup) -> Vec<usize> {
    let cd = conjugacy(g);
    let mut dims: Vec<usize> = cd
        .classes
        .iter()
        .zip(&cd.centralizers)
        .flat_map(|(class, cent)| {
            let c = g.subgroup(cent).unwrap().group;
            character_oracle(&c).into_iter().map(move |n| class.len() * n)
        })
        .collect();
    dims.sort_unstable();
    dims
}

fn main() {
    let m = matrix();
    println!("matrix: {} entries", m.len());
    for e in &m {
        println!("  {}", e.label);
    }

    // 1. two-route agreement
    let (reports, elapsed) = traces(&m);
    let disagree: Vec<&str> =
        m.iter().zip(&reports).filter(|(_, r)| !r.agreement).map(|(e, _)| e.label.as_str()).collect();
    let c1 = disagree.is_empty() && elapsed < MATRIX_LIMIT;
    line(1, c1, "two-route agreement on the matrix", &format!("{elapsed:.1?}, disagreeing: {disagree:?}"));

    // 2. relation-level check
    let failing2: Vec<&MatrixEntry> = m.iter().zip(&reports).filter(|(_, r)| !r.relations.verified()).map(|(e, _)| e).collect();
    line(
        2,
        failing2.is_empty(),
        "tube relations match tau exactly",
        &format!("failing: {:?}", failing2.iter().map(|e| &e.label).collect::<Vec<_>>()),
    );
    for (e, r) in m.iter().zip(&reports) {
        assert!(r.relations.rho.ok(), "{}: rho relation {:?}", e.label, r.relations.rho);
    }

    // 3. transgression cross-check, recomputed outside the engine
    let mut failing3 = Vec::new();
    for e in &m {
        let closed = tau_closed_form(&e.datum).unwrap();
        let groupoid = ActionGroupoid::new(&e.datum).unwrap();
        let routes_equal = tau_simplicial(&e.datum).map(|s| s == closed).unwrap_or(false);
        let cocycle = check_groupoid_cocycle(&closed, &groupoid).ok;
        let mixed = mixed_normalization_check(&closed).ok;
        assert!(cocycle, "{}: tau is not a groupoid cocycle", e.label);
        assert!(mixed, "{}: mixed normalization", e.label);
        if !(routes_equal && cocycle && mixed) {
            failing3.push(e);
        }
    }
    line(
        3,
        failing3.is_empty(),
        "closed form = simplicial, cocycle, mixed normalization",
        &format!("failing: {:?}", failing3.iter().map(|e| &e.label).collect::<Vec<_>>()),
    );

    // the failures of 2 and 3 are exactly the unsymmetrizable entries
    let unsym: Vec<&str> = m.iter().filter(|e| !symmetric(e)).map(|e| e.label.as_str()).collect();
    assert_eq!(failing2.iter().map(|e| e.label.as_str()).collect::<Vec<_>>(), unsym);
    assert_eq!(failing3.iter().map(|e| e.label.as_str()).collect::<Vec<_>>(), unsym);
    for (e, r) in m.iter().zip(&reports).filter(|(e, _)| symmetric(e)) {
        assert_eq!(r.transgression.closed_vs_simplicial, RouteComparison::Equal, "{}", e.label);
    }

    // 4. Drinfeld centers
    let cfg = config();
    let s3 = symmetric3();
    let z2 = cyclic(2);
    let c_s3 = drinfeld_center::<f64>(&s3, &Cochain::unit(&s3, 3), &cfg).unwrap();
    let c_z2 = drinfeld_center::<f64>(&z2, &Cochain::unit(&z2, 3), &cfg).unwrap();
    let w1 = cyclic_three_cocycle(2, 1);
    let c_z2w = drinfeld_center::<f64>(&z2, &w1, &cfg).unwrap();
    let z2w_regular = {
        // all four centralizer cocycles are regular on every class
        let d = dwtrace::trace_engine::diagonal_datum(&z2, &w1).unwrap();
        let tau = tau_closed_form(&d).unwrap();
        let st = stabilizer_cocycles(&ActionGroupoid::new(&d).unwrap(), &tau).unwrap();
        st.iter().map(|s| alpha_regular_count(&s.stabilizer.group, &s.alpha)).sum::<usize>()
    };
    let oracle_s3 = center_oracle(&s3);
    assert_eq!(oracle_s3, vec![1, 1, 2, 2, 2, 2, 3, 3]);
    let c4 = c_s3.count == 8
        && c_s3.total_dims == oracle_s3
        && c_s3.total_dims.iter().map(|d| d * d).sum::<usize>() == 36
        && c_z2.count == 4
        && c_z2.total_dims == center_oracle(&z2)
        && c_z2w.count == 4
        && z2w_regular == 4
        && c_z2w.total_dims == vec![1; 4];
    line(
        4,
        c4,
        "Drinfeld center benchmarks",
        &format!("S3 {:?}, Z/2 {:?}, Z/2 twisted {:?}", c_s3.total_dims, c_z2.total_dims, c_z2w.total_dims),
    );

    // 5. cohomology and theta solver
    let solver = SolverConfig::default();
    let mut c5 = true;
    let mut detail5 = Vec::new();
    for n in [2usize, 3, 4] {
        let g = cyclic(n);
        let rep = cohomology_group(&g, 3, &solver).unwrap();
        let mut ok = rep.invariant_factors == vec![n as u64];
        if ok {
            let gen = &rep.representatives[0];
            ok &= is_cocycle(gen).unwrap().ok;
            for k in 1..=n as i64 {
                let target = Cochain::from_fn(&g, 3, |t| gen.get(t).pow(k));
                match solve_coboundary_equation(&target, &solver).unwrap() {
                    CoboundarySolution::Solved { solution, .. } => {
                        ok &= k == n as i64 && coboundary(&solution).unwrap() == target
                    }
                    CoboundarySolution::Obstructed(_) => ok &= k < n as i64,
                }
            }
        }
        if n == 2 {
            ok &= exhaustive_h3_z2_order() == 2;
        }
        detail5.push(format!("H3(Z/{n}) = {:?}", rep.invariant_factors));
        c5 &= ok;
    }
    let full = PairEmbedding::from_pair_subgroup(&z2, &[0, 1, 2, 3]).unwrap();
    let obstructed = matches!(solve_admissible_theta(&z2, &w1, &full, &solver).unwrap(), ThetaOutcome::Obstructed(_));
    let exhaustive_none = exhaustive_theta_count(&pullback_pair(&w1, &full)) == 0;
    c5 &= obstructed && exhaustive_none;
    detail5.push(format!("Z/2 full obstruction: solver {obstructed}, exhaustive {exhaustive_none}"));
    for e in m.iter().filter(|e| e.label.ends_with("/diagonal")) {
        let d = &e.datum;
        let solved = match solve_admissible_theta(d.group(), d.omega(), d.embedding(), &solver).unwrap() {
            ThetaOutcome::Solved { theta, .. } => {
                coboundary(&theta).unwrap() == pullback_pair(d.omega(), d.embedding())
            }
            ThetaOutcome::Obstructed(_) => false,
        };
        c5 &= solved;
    }
    line(5, c5, "cohomology solver and theta solver", &detail5.join("; "));

    // 6. projective representation triple agreement
    let mut c6 = true;
    let mut stabilizers = 0;
    for e in &m {
        let tau = tau_closed_form(&e.datum).unwrap();
        for s in stabilizer_cocycles(&ActionGroupoid::new(&e.datum).unwrap(), &tau).unwrap() {
            let k = &s.stabilizer.group;
            let dims = twisted_algebra_decompose::<f64>(k, &s.alpha, &cfg.decomposition).unwrap();
            let regular = alpha_regular_count(k, &s.alpha);
            let exact = center_dimension(&TwistedGroupAlgebra { group: k, alpha: &s.alpha }, &[0]).unwrap();
            let squares: usize = dims.iter().map(|n| n * n).sum();
            let ok = dims.len() == regular && regular == exact && squares == k.order();
            if !ok {
                println!("  {}: stabilizer of {} gives {dims:?}, regular {regular}, center {exact}", e.label, s.representative);
            }
            c6 &= ok;
            stabilizers += 1;
        }
    }
    line(6, c6, "clustering = regular classes = center dimension", &format!("{stabilizers} stabilizers"));

    // 7. gauge robustness
    let mut failing7 = Vec::new();
    for e in &m {
        let g = gauge_robustness::<f64>(&e.datum, GAUGE_SHIFTS, GAUGE_SEED, &cfg).unwrap();
        if !(g.unchanged && g.shifted.len() == GAUGE_SHIFTS) {
            failing7.push(e.label.clone());
        }
    }
    line(7, failing7.is_empty(), "invariants unchanged under theta gauge shifts", &format!("{GAUGE_SHIFTS} per entry, failing: {failing7:?}"));

    // 8. cyclic invariance
    let diag = PairEmbedding::diagonal(&z2);
    let triv = PairEmbedding::trivial();
    let unit = |e: &PairEmbedding| Cochain::unit(e.subgroup(), 2);
    let lists = [
        ("diag,diag", vec![diag.clone(), diag.clone()]),
        ("diag,e", vec![diag.clone(), triv.clone()]),
        ("diag,e,diag", vec![diag.clone(), triv.clone(), diag.clone()]),
    ];
    let mut c8 = true;
    let mut detail8 = Vec::new();
    for (name, embs) in lists {
        let defects = embs.iter().map(|e| (e.clone(), unit(e))).collect();
        let mp = MultiPointDatum::new(z2.clone(), &Cochain::unit(&z2, 3), defects).unwrap();
        let start = Instant::now();
        let r = cyclic_invariance_check::<f64>(&mp, &cfg.decomposition).unwrap();
        let t = start.elapsed();
        c8 &= r.invariant && t < CYCLIC_LIMIT;
        detail8.push(format!("{name}: {} in {t:.1?}", r.invariant));
    }
    line(8, c8, "cyclic invariance", &detail8.join("; "));

    // 9. determinism
    let (again, _) = traces(&m);
    let json = |rs: &[TraceReport]| serde_json::to_string(rs).unwrap();
    let c9 = json(&reports) == json(&again);
    line(9, c9, "byte-identical structured reports on rerun", &format!("{} bytes", json(&reports).len()));

    assert!(c4 && c5 && c6 && c8 && c9);
    assert!(disagree.is_empty(), "disagreement: {disagree:?}");
    assert!(elapsed < MATRIX_LIMIT, "matrix took {elapsed:?}");
    assert!(failing7.is_empty());
}

/// Order of `H^3(Z/2, Q/Z)` by enumeration: normalized 3-cochains on Z/2
/// are determined by `w(1,1,1)`; count cocycle values among `k/8` modulo
/// coboundaries of normalized 2-cochains with values `k/16`.
fn exhaustive_h3_z2_order() -> usize {
    let g = cyclic(2);
    let cochain3 = |v: Phase| Cochain::from_fn(&g, 3, |t| if t == [1, 1, 1] { v } else { Phase::one() });
    let cocycles: Vec<Phase> =
        (0..8).map(|k| Phase::new(k, 8)).filter(|&v| is_cocycle(&cochain3(v)).unwrap().ok).collect();
    let mut boundaries: Vec<Phase> = (0..16)
        .map(|k| {
            let b = Cochain::from_fn(&g, 2, |t| if t == [1, 1] { Phase::new(k, 16) } else { Phase::one() });
            coboundary(&b).unwrap().at3(1, 1, 1)
        })
        .collect();
    boundaries.sort_by_key(|p| p.exponent());
    boundaries.dedup();
    cocycles.len() / boundaries.len()
}

/// Number of normalized 2-cochains on Z/2 x Z/2 with exponents in `k/4`
/// whose coboundary is `target`.
fn exhaustive_theta_count(target: &Cochain) -> usize {
    let h = target.group().clone();
    let free: Vec<(usize, usize)> = (1..4).flat_map(|a| (1..4).map(move |b| (a, b))).collect();
    let mut count = 0;
    for code in 0..4usize.pow(free.len() as u32) {
        let mut theta = Cochain::unit(&h, 2);
        let mut c = code;
        for &(a, b) in &free {
            theta.set(&[a, b], Phase::new((c % 4) as i64, 4));
            c /= 4;
        }
        if coboundary(&theta).unwrap() == *target {
            count += 1;
        }
    }
    count
}
