use std::io::Write;

use fsummand::acceptance::{run_criterion, CRITERIA, DEFAULT_SEED};

/// Runs every criterion, or only those listed in `FSUMMAND_CRITERIA`
/// (comma separated ids), seeded from `FSUMMAND_SEED` when set. Lines go straight to stderr so they show without
/// `--nocapture`.
#[test]
fn acceptance() {
    let only: Option<Vec<u32>> = std::env::var("FSUMMAND_CRITERIA")
        .ok()
        .map(|s| s.split(',').filter_map(|x| x.trim().parse().ok()).collect());
    let seed = std::env::var("FSUMMAND_SEED")
        .ok()
        .map(|s| s.trim().parse::<u64>().expect("FSUMMAND_SEED must be an integer"))
        .unwrap_or(DEFAULT_SEED);
    let mut failed = Vec::new();
    for &(id, _, _) in CRITERIA.iter() {
        if only.as_ref().is_some_and(|o| !o.contains(&id)) {
            continue;
        }
        let outcome = run_criterion(id, seed).expect("known criterion");
        writeln!(std::io::stderr(), "{outcome}").unwrap();
        if !outcome.passed() {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
