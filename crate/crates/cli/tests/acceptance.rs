//! Prints one PASS/FAIL line per acceptance criterion and exits nonzero if any fails.
//! All comparisons are exact integer equalities; the only tolerances are the
//! runtime budgets pinned in `verify`.

use unexp_cli::verify::{self, Fixtures};

fn main() {
    let fx = Fixtures::embedded();
    let outcomes = verify::run_all(&fx);
    for o in &outcomes {
        println!("{}", o.line());
    }
    let failed = outcomes.iter().filter(|o| !o.pass).count();
    println!("acceptance: {} passed, {} failed", outcomes.len() - failed, failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
