use std::collections::HashMap;

use crate::hypmetric::Model;

use super::lexer::{tokenize, Tok, Token};
use super::{
    AssertKind, Expr, Func, Ident, Item, Kind, Pos, Program, ScriptError, SelectExpr, Span, Statement, PREDEFINED,
    RESERVED,
};

/// Parses and checks a script: names resolve before use, each name is bound
/// once, and every call has the right number and kinds of arguments.
pub fn parse(src: &str) -> Result<Program, ScriptError> {
    let toks = tokenize(src)?;
    let scope = PREDEFINED.iter().map(|(n, k)| (n.to_string(), *k)).collect();
    let mut p = Parser { toks, i: 0, scope };
    let mut items: Vec<Item> = Vec::new();
    let mut blank = false;
    while p.peek() != &Tok::Eof {
        if p.peek() == &Tok::Newline {
            p.bump();
            blank = true;
            continue;
        }
        let mut item = p.line()?;
        item.blank_before = blank && !items.is_empty();
        blank = false;
        items.push(item);
    }
    Ok(Program { items })
}

struct Parser {
    toks: Vec<Token>,
    i: usize,
    scope: HashMap<String, Kind>,
}

type Res<T> = Result<T, ScriptError>;

fn strs(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.i + k).min(self.toks.len() - 1)].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].pos
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.i].clone();
        if t.tok != Tok::Eof {
            self.i += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> Res<T> {
        let t = &self.toks[self.i];
        let found = match &t.tok {
            Tok::Number(_) => format!("`{}`", t.text),
            other => other.describe(),
        };
        Err(ScriptError::Syntax { pos: t.pos, found, expected: strs(expected) })
    }

    fn expect(&mut self, want: Tok, name: &str) -> Res<Token> {
        if *self.peek() == want {
            Ok(self.bump())
        } else {
            self.fail(&[name])
        }
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == w)
    }

    fn line(&mut self) -> Res<Item> {
        let stmt = match self.peek() {
            Tok::Newline | Tok::Comment(_) => None,
            _ => Some(self.statement()?),
        };
        let comment = match self.peek().clone() {
            Tok::Comment(c) => {
                self.bump();
                Some(c)
            }
            _ => None,
        };
        match self.peek() {
            Tok::Newline => {
                self.bump();
            }
            Tok::Eof => {}
            _ if comment.is_none() => return self.fail(&["end of line", "comment"]),
            _ => return self.fail(&["end of line"]),
        }
        Ok(Item { stmt, comment, blank_before: false })
    }

    fn statement(&mut self) -> Res<Statement> {
        let word = match self.peek() {
            Tok::Ident(s) => s.clone(),
            _ => return self.fail(&["statement"]),
        };
        match word.as_str() {
            "input" => {
                self.bump();
                if !self.is_word("point") {
                    return self.fail(&["'point'"]);
                }
                self.bump();
                let name = self.new_name()?;
                self.scope.insert(name.name.clone(), Kind::Point);
                Ok(Statement::Input { name })
            }
            "assert" => self.assertion(),
            "output" => {
                self.bump();
                let name = self.existing_name()?.0;
                Ok(Statement::Output { name })
            }
            "point" | "line" | "circle" if matches!(self.peek_at(1), Tok::Ident(_)) => {
                self.bump();
                let declared = match word.as_str() {
                    "point" => Kind::Point,
                    "line" => Kind::Line,
                    _ => Kind::Circle,
                };
                self.binding(Some(declared))
            }
            w if !RESERVED.contains(&w) => self.binding(None),
            _ => self.fail(&["statement"]),
        }
    }

    fn new_name(&mut self) -> Res<Ident> {
        match self.peek().clone() {
            Tok::Ident(name) if !RESERVED.contains(&name.as_str()) => {
                let pos = self.pos();
                if self.scope.contains_key(&name) {
                    return Err(ScriptError::DuplicateName { pos, name });
                }
                self.bump();
                Ok(Ident { name, span: Span(pos) })
            }
            _ => self.fail(&["name"]),
        }
    }

    fn existing_name(&mut self) -> Res<(Ident, Kind)> {
        match self.peek().clone() {
            Tok::Ident(name) if !RESERVED.contains(&name.as_str()) => {
                let pos = self.pos();
                let kind = *self.scope.get(&name).ok_or(ScriptError::UnknownName { pos: Some(pos), name: name.clone() })?;
                self.bump();
                Ok((Ident { name, span: Span(pos) }, kind))
            }
            _ => self.fail(&["name"]),
        }
    }

    fn binding(&mut self, declared: Option<Kind>) -> Res<Statement> {
        let name = self.new_name()?;
        self.expect(Tok::Eq, "'='")?;
        let (expr, kind) = self.expr()?;
        let stored = match declared {
            Some(d) if kind.fits(d) => d,
            Some(d) => {
                return Err(ScriptError::Kind {
                    pos: expr.pos(),
                    context: format!("value of `{}`", name.name),
                    expected: d.keyword().into(),
                    found: kind,
                })
            }
            None if matches!(kind, Kind::Number | Kind::Model) => {
                return Err(ScriptError::Kind {
                    pos: expr.pos(),
                    context: format!("value of `{}`", name.name),
                    expected: "a point, line or circle".into(),
                    found: kind,
                })
            }
            None => kind,
        };
        self.scope.insert(name.name.clone(), stored);
        Ok(Statement::Binding { kind: declared, name, expr })
    }

    fn assertion(&mut self) -> Res<Statement> {
        let span = Span(self.pos());
        self.bump();
        let kind = match self.peek() {
            Tok::Ident(s) => AssertKind::from_keyword(s),
            _ => None,
        };
        let Some(kind) = kind else {
            let names: Vec<&str> = AssertKind::ALL.iter().map(|k| k.keyword()).collect();
            return self.fail(&names);
        };
        let at = self.bump().pos;
        let args = self.args(kind.keyword(), at, kind.signature())?;
        let tol = if self.is_word("tol") {
            self.bump();
            match self.peek() {
                Tok::Number(v) if *v > 0.0 => {
                    let v = *v;
                    self.bump();
                    Some(v)
                }
                _ => return self.fail(&["positive number"]),
            }
        } else {
            None
        };
        Ok(Statement::Assert { kind, args, tol, span })
    }

    /// `( expr, ... )` checked against `sig`.
    fn args(&mut self, fname: &str, at: Pos, sig: super::Signature) -> Res<Vec<Expr>> {
        self.expect(Tok::LParen, "'('")?;
        let mut args = Vec::new();
        if *self.peek() != Tok::RParen {
            loop {
                let (e, k) = self.expr()?;
                if let Some(want) = sig.get(args.len()) {
                    if !want.iter().any(|w| k.fits(*w)) {
                        let expected: Vec<&str> = want.iter().map(|w| w.keyword()).collect();
                        return Err(ScriptError::Kind {
                            pos: e.pos(),
                            context: format!("argument {} of {fname}", args.len() + 1),
                            expected: expected.join(" or "),
                            found: k,
                        });
                    }
                }
                args.push(e);
                match self.peek() {
                    Tok::Comma => {
                        self.bump();
                    }
                    Tok::RParen => break,
                    _ => return self.fail(&["','", "')'"]),
                }
            }
        }
        self.bump();
        if args.len() != sig.len() {
            return Err(ScriptError::Arity { pos: at, function: fname.into(), expected: sig.len(), found: args.len() });
        }
        Ok(args)
    }

    fn number(&mut self) -> Res<f64> {
        match *self.peek() {
            Tok::Number(v) => {
                self.bump();
                Ok(v)
            }
            _ => self.fail(&["number"]),
        }
    }

    fn expr(&mut self) -> Res<(Expr, Kind)> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Number(v) => {
                self.bump();
                Ok((Expr::Number(v, Span(pos)), Kind::Number))
            }
            Tok::LParen => {
                self.bump();
                let a = self.number()?;
                self.expect(Tok::Comma, "','")?;
                let b = self.number()?;
                self.expect(Tok::RParen, "')'")?;
                Ok((Expr::Point(a, b, Span(pos)), Kind::Point))
            }
            Tok::Ident(w) if w == "h2" || w == "b2" => {
                self.bump();
                let m = if w == "h2" { Model::HalfPlane } else { Model::Disk };
                Ok((Expr::Model(m, Span(pos)), Kind::Model))
            }
            Tok::Ident(w) if *self.peek_at(1) == Tok::LParen => {
                let Some(func) = Func::from_keyword(&w) else {
                    let names: Vec<&str> = Func::ALL.iter().map(|f| f.keyword()).collect();
                    return self.fail(&names);
                };
                self.bump();
                let (sig, out) = func.signature();
                let args = self.args(func.keyword(), pos, sig)?;
                let select = if func == Func::Intersect { Some(self.selector()?) } else { None };
                Ok((Expr::Call { func, args, select, span: Span(pos) }, out))
            }
            Tok::Ident(_) => {
                let (id, k) = self.existing_name()?;
                Ok((Expr::Name(id), k))
            }
            _ => self.fail(&["number", "name", "'('"]),
        }
    }

    fn selector(&mut self) -> Res<SelectExpr> {
        if !self.is_word("select") {
            return self.fail(&["'select'"]);
        }
        self.bump();
        let w = match self.peek() {
            Tok::Ident(w) => w.clone(),
            _ => return self.fail(&SelectExpr::KEYWORDS),
        };
        let s = match w.as_str() {
            "upper" => SelectExpr::Upper,
            "lower" => SelectExpr::Lower,
            "in_disk" => SelectExpr::InDisk,
            "out_disk" => SelectExpr::OutDisk,
            "first" => SelectExpr::First,
            "unique" => SelectExpr::Unique,
            "boundary" => SelectExpr::Boundary,
            "nearest" | "farthest" => {
                self.bump();
                let (id, k) = self.existing_name()?;
                if k != Kind::Point {
                    return Err(ScriptError::Kind {
                        pos: id.span.0,
                        context: format!("reference of `{w}`"),
                        expected: "point".into(),
                        found: k,
                    });
                }
                return Ok(if w == "nearest" { SelectExpr::Nearest(id) } else { SelectExpr::Farthest(id) });
            }
            _ => return self.fail(&SelectExpr::KEYWORDS),
        };
        self.bump();
        Ok(s)
    }
}
