//! Prints one verdict line per acceptance criterion and fails if any fails.
//!
//! An optional argument restricts the run to the criterion with that number.

use motzeta::acceptance::{self, CriterionResult, Options};
use motzeta::cli::DEFAULT_SEED;

type Check = fn(&Options) -> CriterionResult;

const CHECKS: &[Check] = &[
    |_| acceptance::node_poincare(),
    |_| acceptance::smooth_poincare(),
    |_| acceptance::node_contact_classes(),
    |_| acceptance::smooth_contact_classes(),
    |_| acceptance::plesym(),
    |_| acceptance::alexander(),
    acceptance::trexp,
    |_| acceptance::discriminants(),
    acceptance::qseries_node,
    |_| acceptance::hfl(),
    acceptance::properties,
    |_| acceptance::determinism(),
];

fn main() {
    let filter: Option<String> = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let opts = Options { seed: DEFAULT_SEED };
    let mut failed = 0;
    let mut ran = 0;
    for (i, check) in CHECKS.iter().enumerate() {
        if filter.as_ref().is_some_and(|f| *f != (i + 1).to_string()) {
            continue;
        }
        let r = check(&opts);
        ran += 1;
        if !r.pass {
            failed += 1;
        }
        println!("{} [{:.1} s]", r.line(), r.elapsed.as_secs_f64());
    }
    println!("acceptance: {} passed, {} failed", ran - failed, failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
