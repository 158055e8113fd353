use super::*;
use crate::zeros::persist::{load_table, read_meta, write_table};

const GAMMA1: f64 = 14.134_725_141_734_693;
const GAMMA2: f64 = 21.022_039_638_771_555;

fn reference_to_1000() -> Vec<f64> {
    let path =
        std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/zeros_to_1000.txt");
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| l.trim().parse().unwrap())
        .collect()
}

#[test]
fn isolate_first_ordinate() {
    let b = isolate_zeros(2.0, 15.0).unwrap();
    assert_eq!(b.len(), 1);
    assert!(b[0].lo < GAMMA1 && GAMMA1 < b[0].hi);
}

#[test]
fn isolate_below_first_ordinate_is_empty() {
    assert!(isolate_zeros(2.0, 10.0).unwrap().is_empty());
}

#[test]
fn isolate_to_100() {
    let b = isolate_zeros(2.0, 100.0).unwrap();
    assert_eq!(b.len(), 29);
    let reference = reference_to_1000();
    for (br, g) in b.iter().zip(&reference) {
        assert!(br.lo < *g && *g < br.hi);
    }
    assert!(b.windows(2).all(|w| w[0].hi <= w[1].lo));
}

#[test]
fn refine_first_two() {
    let z1 = refine_zero(Bracket { lo: 14.0, hi: 14.3 }).unwrap();
    assert!((z1.gamma - GAMMA1).abs() < 1e-6);
    assert!((z1.gamma - GAMMA1).abs() <= z1.abs_err);
    let z2 = refine_zero(Bracket { lo: 20.5, hi: 21.5 }).unwrap();
    assert!((z2.gamma - GAMMA2).abs() < 1e-6);
    assert!(z2.abs_err < 1e-9);
}

#[test]
fn refine_rejects_bad_brackets() {
    assert!(matches!(
        refine_zero(Bracket { lo: 15.0, hi: 15.0 }),
        Err(Error::NoSignChange { .. })
    ));
    assert!(matches!(
        refine_zero(Bracket { lo: 15.0, hi: 16.0 }),
        Err(Error::NoSignChange { .. })
    ));
}

#[test]
fn build_small_tables() {
    let t20 = build_table(20.0).unwrap();
    assert_eq!(t20.len(), 1);
    assert!(t20.is_audited());
    assert_eq!(t20.source(), TableSource::Computed);

    let t100 = build_table(100.0).unwrap();
    assert_eq!(t100.len(), 29);
    assert_eq!(t100.ordinates()[28].index, 29);
    assert!((t100.ordinates()[28].gamma - 98.831_194_218_193_69).abs() < 1e-8);
    assert!(t100.max_abs_err() < 1e-8);
}

#[test]
fn build_to_1000_matches_reference() {
    let table = build_table(1000.0).unwrap();
    let reference = reference_to_1000();
    assert_eq!(table.len(), 649);
    for (o, g) in table.ordinates().iter().zip(&reference) {
        // reference printed to 9 decimals
        assert!((o.gamma - g).abs() < 1e-9 + 1e-8, "index {}", o.index);
    }
    for (i, o) in table.ordinates().iter().enumerate() {
        assert_eq!(o.index, i + 1);
    }
}

#[test]
fn build_table_domain() {
    assert!(build_table(10.0).is_err());
    assert!(build_table(2e6).is_err());
    assert!(build_table(f64::NAN).is_err());
}

#[test]
fn halved_step_gives_same_table() {
    let a = build_table(300.0).unwrap();
    let opts = IsolationOptions::default().halved(300.0);
    let b = build_table_with(300.0, &opts).unwrap();
    assert_eq!(a.len(), b.len());
    for (x, y) in a.ordinates().iter().zip(b.ordinates()) {
        assert!((x.gamma - y.gamma).abs() <= x.abs_err + y.abs_err);
    }
}

#[test]
fn audit_examples() {
    let reference = reference_to_1000();
    let first29: Vec<(f64, f64)> = reference[..29].iter().map(|&g| (g, 1e-9)).collect();
    let mut ok = ZeroTable::new(first29.clone(), 100.0, TableSource::Ingested).unwrap();
    let report = ok.audit();
    assert!(report.passed(), "{}", report.summary());
    assert!(ok.is_audited());

    let mut missing = first29;
    missing.remove(20);
    missing.remove(20);
    let mut bad = ZeroTable::new(missing, 100.0, TableSource::Ingested).unwrap();
    let report = bad.audit();
    assert!(!report.passed());
    assert!(!report.gram_failures.is_empty());
    assert!(!bad.is_audited());
    assert!(report.summary().contains("Gram"));

    let mut empty = ZeroTable::new(vec![], 10.0, TableSource::Ingested).unwrap();
    assert!(empty.audit().passed());
}

#[test]
fn audit_flags_missing_first_ordinate() {
    let reference = reference_to_1000();
    let rest: Vec<(f64, f64)> = reference[1..29].iter().map(|&g| (g, 1e-9)).collect();
    let table = ZeroTable::new(rest, 100.0, TableSource::Ingested).unwrap();
    assert!(matches!(table.into_audited(), Err(Error::AuditFailed(_))));
}

#[test]
fn table_rejects_disorder() {
    assert!(ZeroTable::new(
        vec![(21.0, 1e-9), (14.0, 1e-9)],
        30.0,
        TableSource::Computed
    )
    .is_err());
    assert!(ZeroTable::new(vec![(14.0, 1e-9)], 10.0, TableSource::Computed).is_err());
}

#[test]
fn count_up_to_examples() {
    let table = build_table(100.0).unwrap();
    assert_eq!(table.count_up_to(10.0).unwrap(), 0);
    // the stored ordinate may sit a few ulps either side of the true value
    let g1 = table.ordinates()[0].gamma;
    assert!((g1 - GAMMA1).abs() < 1e-9);
    assert_eq!(table.count_up_to(g1).unwrap(), 1);
    assert_eq!(table.count_up_to(GAMMA1 - 1e-6).unwrap(), 0);
    assert_eq!(table.count_up_to(GAMMA1 + 1e-6).unwrap(), 1);
    assert_eq!(table.count_up_to(100.0).unwrap(), 29);
    assert!(matches!(
        table.count_up_to(100.5),
        Err(Error::OutOfRange { .. })
    ));

    let mut prev = 0;
    let mut t = 0.0;
    while t <= 100.0 {
        let n = table.count_up_to(t).unwrap();
        assert!(n >= prev);
        prev = n;
        t += 0.1;
    }

    let raw = ZeroTable::new(vec![(GAMMA1, 1e-9)], 20.0, TableSource::Ingested).unwrap();
    assert!(matches!(raw.count_up_to(15.0), Err(Error::Unaudited)));
}

#[test]
fn persistence_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("zeros.txt");
    let table = build_table(100.0).unwrap();
    write_table(&table, &path).unwrap();
    let meta = read_meta(&path).unwrap().unwrap();
    assert_eq!(meta.count, 29);
    assert_eq!(meta.t_max, 100.0);
    assert!(meta.audited);
    let back = load_table(&path).unwrap();
    assert_eq!(back.len(), 29);
    assert_eq!(back.t_max(), 100.0);
    for (a, b) in table.ordinates().iter().zip(back.ordinates()) {
        assert!((a.gamma - b.gamma).abs() <= 5e-10);
        assert!(b.abs_err >= a.abs_err);
    }
    assert_eq!(back.count_up_to(100.0).unwrap(), 29);
}
