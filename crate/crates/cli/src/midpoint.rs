use std::process::ExitCode;

use hypmid::{midpoint, MidpointResult, Model, Point2};
use serde_json::json;

use crate::{tolerance, CmdResult, Failure, MidpointArgs, PairArgs};

/// The model and points, or a usage error naming the missing flag.
pub fn require(pair: &PairArgs) -> Result<(Model, Point2, Point2), Failure> {
    let missing = |flag: &str| Failure::Usage(format!("the following required argument was not provided: {flag}"));
    Ok((
        pair.model.ok_or_else(|| missing("--model <MODEL>"))?,
        pair.x.ok_or_else(|| missing("--x <X>"))?,
        pair.y.ok_or_else(|| missing("--y <Y>"))?,
    ))
}

pub fn run(args: &MidpointArgs) -> CmdResult {
    let (model, x, y) = require(&args.pair)?;
    let tol = tolerance(None)?;
    let r = midpoint(model, x, y, args.pair.method, &tol)?;
    if args.plain {
        print!("{}", plain(&r));
    } else {
        println!("{}", serde_json::to_string_pretty(&to_json(&r)).expect("serializable"));
        if r.flagged {
            eprintln!("warning: z is {:e} away from the bisection oracle", r.oracle_disagreement);
        }
    }
    Ok(ExitCode::SUCCESS)
}

pub fn to_json(r: &MidpointResult) -> serde_json::Value {
    json!({
        "model": r.model,
        "x": r.x,
        "y": r.y,
        "method": r.method.as_str(),
        "z": [r.z.x1, r.z.x2],
        "residual_rho": r.residual_equal_distance,
        "residual_carrier": r.residual_on_geodesic,
        "trace": r.trace.steps,
    })
}

fn plain(r: &MidpointResult) -> String {
    let mut s = format!(
        "model {}\nmethod {}\nz {} {}\nresidual_rho {:e}\nresidual_carrier {:e}\noracle_disagreement {:e}\nflagged {}\n",
        r.model,
        r.method,
        r.z.x1 + 0.0,
        r.z.x2 + 0.0,
        r.residual_equal_distance,
        r.residual_on_geodesic,
        r.oracle_disagreement,
        if r.flagged { "yes" } else { "no" },
    );
    for step in &r.trace.steps {
        s.push_str(&format!("step {} {:?}({})\n", step.label, step.kind, step.inputs.join(", ")));
    }
    s
}
