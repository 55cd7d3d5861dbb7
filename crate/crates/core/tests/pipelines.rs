//! End-to-end examples through the public API.

use dwtrace::groupoid_rep::Provenance;
use dwtrace::groups::{cyclic, symmetric3, FiniteGroup, PairEmbedding};
use dwtrace::phases::{cyclic_three_cocycle, Cochain, SolverConfig};
use dwtrace::trace_engine::{
    compute_trace, diagonal_datum, drinfeld_center_report, multi_point_trace, solve_admissible_theta,
    MultiPointDatum, ThetaOutcome, TraceConfig, TraceError,
};
use dwtrace::transgression::DefectDatum;

fn trace(d: &DefectDatum) -> dwtrace::trace_engine::TraceReport {
    compute_trace::<f64>(d, &TraceConfig::default()).unwrap()
}

#[test]
fn trivial_group() {
    let t = FiniteGroup::trivial();
    let r = trace(&diagonal_datum(&t, &Cochain::unit(&t, 3)).unwrap());
    assert!(r.agreement && r.all_checks_pass());
    assert_eq!((r.gauge.count, r.gauge.total_dims.clone()), (1, vec![1]));
    assert_eq!(r.algebraic.provenance, Provenance::Algebraic);
}

#[test]
fn z2_diagonal_both_omegas() {
    let z2 = cyclic(2);
    for w in [Cochain::unit(&z2, 3), cyclic_three_cocycle(2, 1)] {
        let r = trace(&diagonal_datum(&z2, &w).unwrap());
        assert!(r.agreement);
        assert_eq!(r.gauge.count, 4);
        assert_eq!(r.algebraic.count, 4);
    }
}

#[test]
fn s3_center_three_ways() {
    let s3 = symmetric3();
    let c = drinfeld_center_report::<f64>(&s3, &Cochain::unit(&s3, 3), &TraceConfig::default()).unwrap();
    assert!(c.agreement);
    assert_eq!(c.conjugation.total_dims, vec![1, 1, 2, 2, 2, 2, 3, 3]);
    assert_eq!(c.trace.algebraic.total_dims, c.conjugation.total_dims);
}

#[test]
fn theta_solver_examples() {
    let z2 = cyclic(2);
    let w = cyclic_three_cocycle(2, 1);
    let solver = SolverConfig::default();
    let diag = PairEmbedding::diagonal(&z2);
    match solve_admissible_theta(&z2, &w, &diag, &solver).unwrap() {
        ThetaOutcome::Solved { theta, .. } => assert!(theta.is_unit()),
        other => panic!("{other:?}"),
    }
    match solve_admissible_theta(&z2, &w, &PairEmbedding::trivial(), &solver).unwrap() {
        ThetaOutcome::Solved { theta, .. } => assert!(theta.is_unit()),
        other => panic!("{other:?}"),
    }
    let full = PairEmbedding::from_pair_subgroup(&z2, &[0, 1, 2, 3]).unwrap();
    assert!(matches!(solve_admissible_theta(&z2, &w, &full, &solver).unwrap(), ThetaOutcome::Obstructed(_)));
}

#[test]
fn multi_point_reduces_to_one_point() {
    let g = symmetric3();
    let emb = PairEmbedding::diagonal(&g);
    let theta = Cochain::unit(emb.subgroup(), 2);
    let mp = MultiPointDatum::new(g.clone(), &Cochain::unit(&g, 3), vec![(emb.clone(), theta.clone())]).unwrap();
    let inv = multi_point_trace::<f64>(&mp, &Default::default()).unwrap();
    let one = trace(&DefectDatum::admit(g.clone(), Cochain::unit(&g, 3), emb.clone(), theta.clone()).unwrap());
    assert!(inv.agrees_in_dims(&one.gauge));

    let z2 = cyclic(2);
    let e2 = PairEmbedding::diagonal(&z2);
    let err = MultiPointDatum::new(z2.clone(), &cyclic_three_cocycle(2, 1), vec![(e2.clone(), Cochain::unit(e2.subgroup(), 2))]);
    assert!(matches!(err, Err(TraceError::NontrivialOmegaUnsupported)));
}

#[test]
fn unadmitted_datum_is_refused() {
    let z2 = cyclic(2);
    let full = PairEmbedding::from_pair_subgroup(&z2, &[0, 1, 2, 3]).unwrap();
    let theta = Cochain::unit(full.subgroup(), 2);
    let d = DefectDatum::new(z2, cyclic_three_cocycle(2, 1), full, theta).unwrap();
    assert!(!d.certificates().admitted());
    assert!(compute_trace::<f64>(&d, &TraceConfig::default()).is_err());
}
