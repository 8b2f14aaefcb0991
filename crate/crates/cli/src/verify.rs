use std::process::ExitCode;

use hypmid::verify::{run_sweep, SweepConfig};

use crate::{tolerance, CmdResult, VerifyArgs};

pub fn run(args: &VerifyArgs) -> CmdResult {
    let cfg = SweepConfig {
        samples: args.samples as usize,
        seed: args.seed,
        tol: tolerance(args.tol)?,
        ..SweepConfig::default()
    };
    let report = run_sweep(args.suite.into(), &cfg);
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    } else {
        print!("{}", report.render());
    }
    Ok(if report.passes() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}
