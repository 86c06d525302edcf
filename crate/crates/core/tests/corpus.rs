use lecycles_core::components::SplitConfig;
use lecycles_core::corpus::{parse_corpus, run_entry, BUNDLED};

#[test]
fn bundled_corpus_passes() {
    let entries = parse_corpus(BUNDLED).unwrap();
    let mut failures = Vec::new();
    for e in &entries {
        let start = std::time::Instant::now();
        let (outcome, _) = run_entry(e, &SplitConfig::default());
        eprintln!("{:<32} {:<12} {:?}", e.name, outcome.status, start.elapsed());
        if !outcome.passed() {
            failures.push(outcome);
        }
    }
    assert!(failures.is_empty(), "{failures:#?}");
}
