use super::*;

fn cell(n: usize, k: usize, d: usize) -> FamilyParams {
    FamilyParams::new(n, k, d).unwrap()
}

fn strip_time(mut r: VerificationReport) -> VerificationReport {
    r.elapsed_ms = 0;
    r
}

#[test]
fn tags_round_trip() {
    assert_eq!(TheoremId::ALL.len(), 19);
    for &t in TheoremId::ALL {
        assert_eq!(t.tag().parse::<TheoremId>().unwrap(), t);
        assert_eq!(serde_json::to_string(&t).unwrap(), format!("\"{}\"", t.tag()));
    }
    assert!("thm99".parse::<TheoremId>().is_err());
}

#[test]
fn thm11_small_orders() {
    let grid = [cell(5, 0, 1), cell(6, 0, 1)];
    let r = verify(TheoremId::Thm11, &grid, &CorpusSpec::default(), 0).unwrap();
    assert!(r.passed(), "{:?}", r.violations);
    assert_eq!(r.exit_code(), 0);
    // K1∨(K1∪K3) has 5·4 labellings, K2∨I3 has C(5,2)
    assert_eq!(r.cells[0].exceptions, 30);
    assert_eq!(r.cells[1].exceptions, 30);
    assert!(r.cells[0].notes[0].contains("K2∨I3 ×10"));
}

#[test]
fn replay_is_deterministic_across_thread_counts() {
    let grid = [cell(12, 0, 2), cell(13, 1, 3)];
    let spec = CorpusSpec::with_samples(60);
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| verify(TheoremId::Thm21, &grid, &spec, 9).unwrap())
    };
    let one = strip_time(run(1));
    let four = strip_time(run(4));
    assert_eq!(one.to_json(), four.to_json());
    let other = verify(TheoremId::Thm21, &grid, &spec, 10).unwrap();
    assert_ne!(one.cells, other.cells);
}

#[test]
fn report_json_round_trips() {
    let r = verify(TheoremId::Bound32, &[cell(9, 0, 1)], &CorpusSpec::with_samples(20), 3).unwrap();
    let back: VerificationReport = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(back, r);
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    for key in ["theorem", "grid", "corpusSize", "violations", "seed", "elapsedMs", "empiricalNotes"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["theorem"], "bound32");
    let csv = r.to_csv();
    assert_eq!(csv.lines().count(), 2);
    assert!(csv.starts_with("theorem,n,k,delta"));
}

#[test]
fn empty_cells_are_flagged_vacuous() {
    // on three vertices no rotation moves anything
    let r = verify(TheoremId::Lem33, &[cell(3, 0, 1), cell(8, 0, 1)], &CorpusSpec::with_samples(30), 1).unwrap();
    assert_eq!(r.vacuous_cells, vec![cell(3, 0, 1)]);
    assert!(r.passed());
    assert_eq!(r.exit_code(), 3);
}

#[test]
fn invalid_grids_are_rejected() {
    let spec = CorpusSpec::default();
    assert!(matches!(verify(TheoremId::Thm21, &[], &spec, 0), Err(Error::Parameter(_))));
    // thm21 needs δ ≥ k+2
    assert!(matches!(verify(TheoremId::Thm21, &[cell(12, 1, 2)], &spec, 0), Err(Error::Parameter(_))));
    assert!(matches!(verify(TheoremId::Thm35, &[cell(10, 0, 2)], &spec, 0), Err(Error::Parameter(_))));
    assert!(matches!(verify(TheoremId::Cor13, &[cell(10, 1, 2)], &spec, 0), Err(Error::Parameter(_))));
    let bad = FamilyParams { n: 12, k: 3, delta: 2 };
    assert!(matches!(lemma42_claims_check(&bad, 5, 0), Err(Error::Parameter(_))));
}

#[test]
fn asymptotic_reports_carry_threshold_notes() {
    let grid = [cell(12, 0, 2), cell(13, 0, 2)];
    let r = verify(TheoremId::Thm25, &grid, &CorpusSpec::with_samples(40), 2).unwrap();
    assert!(r.empirical_notes.contains("k=0,delta=2"), "{}", r.empirical_notes);
    assert!(r.watchdog.checked > 0);
    assert_eq!(r.watchdog.failures, 0);
}

#[test]
fn lemma41_small_cell() {
    let r = verify(TheoremId::Lem41, &[cell(14, 0, 2), cell(14, 1, 3)], &CorpusSpec::with_samples(20), 5).unwrap();
    assert!(r.passed(), "{:?}", r.violations);
    assert!(r.min_margin().unwrap() >= -1e-9);
}
