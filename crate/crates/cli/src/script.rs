use std::path::Path;
use std::process::ExitCode;

use hypmid::constructions::trace::Object;
use hypmid::script::{self, EvaluationResult, Program, ScriptError};
use hypmid::Point2;

use crate::{tolerance, CmdResult, Failure, ScriptCommand};

pub fn run(cmd: &ScriptCommand) -> CmdResult {
    match cmd {
        ScriptCommand::Run { file, bind } => {
            let result = evaluate(file, bind)?;
            print!("{}", report(&result));
            Ok(if result.passes() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        ScriptCommand::Fmt { file, write, check } => {
            let source = read(file)?;
            let formatted = script::format(&parse(file, &source)?);
            if *check {
                if formatted != source {
                    println!("{} is not in canonical form", file.display());
                    return Ok(ExitCode::FAILURE);
                }
            } else if *write {
                if formatted != source {
                    std::fs::write(file, &formatted)
                        .map_err(|e| Failure::Other(format!("cannot write {}: {e}", file.display())))?;
                }
            } else {
                print!("{formatted}");
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

pub fn read(file: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(file).map_err(|e| Failure::Other(format!("cannot read {}: {e}", file.display())))
}

fn script_failure(file: &Path, e: ScriptError) -> Failure {
    let sep = if e.pos().is_some() { ":" } else { ": " };
    Failure::Other(format!("[{}] {}{sep}{e}", e.kind_name(), file.display()))
}

pub fn parse(file: &Path, source: &str) -> Result<Program, Failure> {
    script::parse(source).map_err(|e| script_failure(file, e))
}

/// Parses and evaluates `file` with the given bindings at the configured
/// tolerance.
pub fn evaluate(file: &Path, bind: &[(String, Point2)]) -> Result<EvaluationResult, Failure> {
    let source = read(file)?;
    let program = parse(file, &source)?;
    let tol = tolerance(None)?;
    script::evaluate_with(&program, bind, &tol).map_err(|e| script_failure(file, e))
}

fn report(r: &EvaluationResult) -> String {
    let mut s = String::new();
    for a in &r.assertions {
        let residual = a.residual.map_or("n/a".to_string(), |v| format!("{v:.3e}"));
        s.push_str(&format!(
            "{} {}: {} residual {residual} (tol {:e})\n",
            if a.passed { "PASS" } else { "FAIL" },
            a.pos,
            a.text,
            a.tol
        ));
    }
    for e in &r.errors {
        s.push_str(&format!("ERROR {e}\n"));
    }
    for (name, o) in &r.outputs {
        s.push_str(&format!("output {name} = {}\n", describe(o)));
    }
    let failed = r.assertions.iter().filter(|a| !a.passed).count();
    s.push_str(&format!(
        "{} of {} assertions pass, {} error(s)\n",
        r.assertions.len() - failed,
        r.assertions.len(),
        r.errors.len()
    ));
    s
}

fn describe(o: &Object) -> String {
    // adding 0.0 turns -0 into 0
    let v = |x: f64| x + 0.0;
    match o {
        Object::Point { at } => format!("({}, {})", v(at.x1), v(at.x2)),
        Object::Line { line } => format!("line n = ({}, {}), c = {}", v(line.n.x1), v(line.n.x2), v(line.c)),
        Object::Circle { circle } => format!(
            "circle center ({}, {}), radius {}",
            v(circle.center.x1),
            v(circle.center.x2),
            circle.radius
        ),
    }
}
