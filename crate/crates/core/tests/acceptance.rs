use std::process::ExitCode;

use conequant_core::verify::{run, CRITERIA};
use conequant_core::Exec;

fn main() -> ExitCode {
    let only: Option<u32> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|s| s.parse().ok());
    let exec = Exec::default();
    let outcomes: Vec<_> = CRITERIA
        .iter()
        .filter(|(id, _)| only.is_none_or(|o| o == *id))
        .map(|(id, _)| {
            let o = run(*id, exec);
            println!("{}", o.line());
            o
        })
        .collect();
    let passed = outcomes.iter().filter(|o| o.passed).count();
    println!("{passed} of {} criteria passed", outcomes.len());
    if passed == outcomes.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
