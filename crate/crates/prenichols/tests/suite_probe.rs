use prenichols::verifier::{run_paper_suite, VerifierOptions};

#[test]
fn probe_full_suite() {
    let report = run_paper_suite(VerifierOptions::default());
    eprintln!("{}", report.render(true));
}
