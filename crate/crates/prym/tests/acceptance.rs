//! Runs every acceptance criterion and prints one line per criterion.

use std::process::ExitCode;

use prym::acceptance::run_all;
use prym::jobs::DEFAULT_SEED;
use prym::parallel::Threaded;

fn main() -> ExitCode {
    let counter = Threaded::from_env();
    let results = run_all(&counter, DEFAULT_SEED, |r| println!("{}", r.line()));
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
