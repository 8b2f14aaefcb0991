use std::fmt::Write as _;

use crate::hypmetric::Model;

use super::{Expr, Program, SelectExpr, Statement};

/// Canonical layout: one space around `=` and after commas, two spaces before
/// a trailing comment, runs of blank lines collapsed to one, no leading or
/// trailing blank lines.
pub fn format(p: &Program) -> String {
    let mut out = String::new();
    for (i, item) in p.items.iter().enumerate() {
        if item.blank_before && i > 0 {
            out.push('\n');
        }
        let mut line = item.stmt.as_ref().map(statement).unwrap_or_default();
        if let Some(c) = &item.comment {
            if !line.is_empty() {
                line.push_str("  ");
            }
            let _ = write!(line, "#{c}");
        }
        out.push_str(&line);
        out.push('\n');
    }
    out
}

pub(crate) fn statement(s: &Statement) -> String {
    match s {
        Statement::Input { name } => format!("input point {}", name.name),
        Statement::Binding { kind, name, expr: e } => match kind {
            Some(k) => format!("{} {} = {}", k.keyword(), name.name, expr(e)),
            None => format!("{} = {}", name.name, expr(e)),
        },
        Statement::Assert { kind, args, tol, .. } => {
            let mut s = format!("assert {}({})", kind.keyword(), list(args));
            if let Some(t) = tol {
                let _ = write!(s, " tol {}", number(*t));
            }
            s
        }
        Statement::Output { name } => format!("output {}", name.name),
    }
}

fn list(args: &[Expr]) -> String {
    args.iter().map(expr).collect::<Vec<_>>().join(", ")
}

pub(crate) fn expr(e: &Expr) -> String {
    match e {
        Expr::Number(v, _) => number(*v),
        Expr::Point(a, b, _) => format!("({}, {})", number(*a), number(*b)),
        Expr::Model(Model::HalfPlane, _) => "h2".into(),
        Expr::Model(Model::Disk, _) => "b2".into(),
        Expr::Name(id) => id.name.clone(),
        Expr::Call { func, args, select, .. } => {
            let mut s = format!("{}({})", func.keyword(), list(args));
            if let Some(sel) = select {
                let _ = write!(s, " select {}", selector(sel));
            }
            s
        }
    }
}

fn selector(s: &SelectExpr) -> String {
    match s {
        SelectExpr::Upper => "upper".into(),
        SelectExpr::Lower => "lower".into(),
        SelectExpr::InDisk => "in_disk".into(),
        SelectExpr::OutDisk => "out_disk".into(),
        SelectExpr::First => "first".into(),
        SelectExpr::Unique => "unique".into(),
        SelectExpr::Boundary => "boundary".into(),
        SelectExpr::Nearest(id) => format!("nearest {}", id.name),
        SelectExpr::Farthest(id) => format!("farthest {}", id.name),
    }
}

/// Shortest text that reads back as the same `f64`.
pub(crate) fn number(v: f64) -> String {
    let a = v.abs();
    if a != 0.0 && !(1e-4..1e16).contains(&a) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    #[test]
    fn mangled_whitespace_is_canonicalized() {
        let src = "\n\n  point   x=( 0.5 ,0 )#c\n\n\n\ny =invert( x )\nassert   equals(x,x)tol 1e-12\n\n";
        let out = format(&parse(src).unwrap());
        assert_eq!(out, "point x = (0.5, 0)  #c\n\ny = invert(x)\nassert equals(x, x) tol 1e-12\n");
    }

    #[test]
    fn formatting_is_a_fixed_point() {
        let src = "# Method\npoint x = (0.5, 0)\nw = intersect(line(x, origin), unit) select nearest x  # end\noutput w\n";
        let p = parse(src).unwrap();
        let once = format(&p);
        assert_eq!(once, src);
        assert_eq!(parse(&once).unwrap(), p);
    }

    #[test]
    fn numbers_round_trip() {
        for v in [0.0, -0.5, 2.0, 1e-9, 1.5e-10, 0.1 + 0.2, 123456.789, 3e20, -7.25e-5] {
            assert_eq!(number(v).parse::<f64>().unwrap(), v, "{}", number(v));
        }
    }
}
