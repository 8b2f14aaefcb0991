use super::{Pos, ScriptError};

#[derive(Debug, Clone, PartialEq)]
pub enum Tok {
    Ident(String),
    Number(f64),
    LParen,
    RParen,
    Comma,
    Eq,
    /// Text after `#`, trailing whitespace removed.
    Comment(String),
    Newline,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Number(_) => "number".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::Eq => "'='".into(),
            Tok::Comment(_) => "comment".into(),
            Tok::Newline => "end of line".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
    /// Source text of the token, used in diagnostics.
    pub text: String,
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, ScriptError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        let start = i;
        let tok = match c {
            '\n' => {
                i += 1;
                out.push(Token { tok: Tok::Newline, pos, text: "\\n".into() });
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
                continue;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                let body: String = chars[start + 1..i].iter().collect();
                Tok::Comment(body.trim_end().to_string())
            }
            '(' | ')' | ',' | '=' => {
                i += 1;
                match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ',' => Tok::Comma,
                    _ => Tok::Eq,
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                Tok::Ident(chars[start..i].iter().collect())
            }
            c if c.is_ascii_digit() || c == '-' || c == '+' || c == '.' => {
                i = scan_number(&chars, i);
                let text: String = chars[start..i].iter().collect();
                match text.parse::<f64>() {
                    Ok(v) if v.is_finite() && text.chars().any(|c| c.is_ascii_digit()) => Tok::Number(v),
                    _ => {
                        return Err(ScriptError::Syntax {
                            pos,
                            found: format!("`{text}`"),
                            expected: vec!["number".into()],
                        })
                    }
                }
            }
            other => {
                return Err(ScriptError::Syntax {
                    pos,
                    found: format!("`{other}`"),
                    expected: vec!["name".into(), "number".into(), "'('".into(), "')'".into(), "','".into(), "'='".into()],
                })
            }
        };
        col += i - start;
        out.push(Token { tok, pos, text: chars[start..i].iter().collect() });
    }
    out.push(Token { tok: Tok::Eof, pos: Pos { line, col }, text: String::new() });
    Ok(out)
}

fn scan_number(chars: &[char], mut i: usize) -> usize {
    let digits = |i: &mut usize| {
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
    };
    if matches!(chars[i], '-' | '+') {
        i += 1;
    }
    digits(&mut i);
    if i < chars.len() && chars[i] == '.' {
        i += 1;
        digits(&mut i);
    }
    if i < chars.len() && matches!(chars[i], 'e' | 'E') {
        let save = i;
        i += 1;
        if i < chars.len() && matches!(chars[i], '-' | '+') {
            i += 1;
        }
        let before = i;
        digits(&mut i);
        if i == before {
            i = save;
        }
    }
    i
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        tokenize(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn numbers_and_punctuation() {
        assert_eq!(
            toks("p = (-0.5, 1e-3)"),
            vec![
                Tok::Ident("p".into()),
                Tok::Eq,
                Tok::LParen,
                Tok::Number(-0.5),
                Tok::Comma,
                Tok::Number(1e-3),
                Tok::RParen,
                Tok::Eof
            ]
        );
    }

    #[test]
    fn comment_runs_to_end_of_line() {
        assert_eq!(toks("# a b  \nx"), vec![Tok::Comment(" a b".into()), Tok::Newline, Tok::Ident("x".into()), Tok::Eof]);
    }

    #[test]
    fn positions_count_characters() {
        let t = tokenize("  x\n ²").unwrap_err();
        assert_eq!(t.pos(), Some(Pos { line: 2, col: 2 }));
    }

    #[test]
    fn lone_sign_is_rejected() {
        assert!(tokenize("x = -").is_err());
    }
}
