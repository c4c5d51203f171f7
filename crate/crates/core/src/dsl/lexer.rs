use super::{DslError, Pos};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Quoted(String),
    Int(String),
    /// `=[`, the opening of a bound.
    EqBracket,
    /// `|-`
    Turnstile,
    /// `->`
    Arrow,
    /// `:=`
    Assign,
    /// `::`
    DoubleColon,
    Punct(char),
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Quoted(s) => format!("\"{s}\""),
            Tok::Int(s) => format!("`{s}`"),
            Tok::EqBracket => "`=[`".into(),
            Tok::Turnstile => "`|-`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Assign => "`:=`".into(),
            Tok::DoubleColon => "`::`".into(),
            Tok::Punct(c) => format!("`{c}`"),
            Tok::Eof => "end of input".into(),
        }
    }
}

pub(crate) fn tokenize(src: &str) -> Result<Vec<(Tok, Pos)>, DslError> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    macro_rules! bump {
        () => {{
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else if c.is_some() {
                col += 1;
            }
            c
        }};
    }
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, column: col };
        if c.is_whitespace() {
            bump!();
            continue;
        }
        if c == '#' {
            while !matches!(chars.peek(), None | Some('\n')) {
                bump!();
            }
            continue;
        }
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' {
                    s.push(d);
                    bump!();
                } else {
                    break;
                }
            }
            Tok::Ident(s)
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_digit() {
                    s.push(d);
                    bump!();
                } else {
                    break;
                }
            }
            Tok::Int(s)
        } else if c == '"' {
            bump!();
            let mut s = String::new();
            loop {
                match bump!() {
                    None | Some('\n') => {
                        return Err(DslError::new(pos, "unterminated quoted name"))
                    }
                    Some('"') => break,
                    Some('\\') => match bump!() {
                        Some(e @ ('"' | '\\')) => s.push(e),
                        _ => {
                            return Err(DslError::new(
                                pos,
                                "only `\\\"` and `\\\\` escapes are allowed",
                            ))
                        }
                    },
                    Some(d) => s.push(d),
                }
            }
            Tok::Quoted(s)
        } else {
            bump!();
            let next = chars.peek().copied();
            let pair = |second: char, tok: Tok| (next == Some(second)).then_some(tok);
            let two = match c {
                '=' => pair('[', Tok::EqBracket),
                '|' => pair('-', Tok::Turnstile),
                '-' => pair('>', Tok::Arrow),
                ':' => pair('=', Tok::Assign).or_else(|| pair(':', Tok::DoubleColon)),
                _ => None,
            };
            match two {
                Some(t) => {
                    bump!();
                    t
                }
                None if "{}()[];,:./=&".contains(c) => Tok::Punct(c),
                None => return Err(DslError::new(pos, format!("unexpected character `{c}`"))),
            }
        };
        out.push((tok, pos));
    }
    out.push((Tok::Eof, Pos { line, column: col }));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<Tok> {
        tokenize(src).unwrap().into_iter().map(|(t, _)| t).collect()
    }

    #[test]
    fn compound_tokens() {
        assert_eq!(
            kinds("x =[1/2] y |- -> := :: ="),
            vec![
                Tok::Ident("x".into()),
                Tok::EqBracket,
                Tok::Int("1".into()),
                Tok::Punct('/'),
                Tok::Int("2".into()),
                Tok::Punct(']'),
                Tok::Ident("y".into()),
                Tok::Turnstile,
                Tok::Arrow,
                Tok::Assign,
                Tok::DoubleColon,
                Tok::Punct('='),
                Tok::Eof
            ]
        );
    }

    #[test]
    fn positions_and_comments() {
        let toks = tokenize("# note\n  \"(a,b)\" z").unwrap();
        assert_eq!(
            toks[0],
            (Tok::Quoted("(a,b)".into()), Pos { line: 2, column: 3 })
        );
        assert_eq!(
            toks[1].1,
            Pos {
                line: 2,
                column: 11
            }
        );
    }

    #[test]
    fn bad_input() {
        assert_eq!(
            tokenize("a $").unwrap_err().to_string(),
            "1:3: unexpected character `$`"
        );
        assert!(tokenize("\"open").is_err());
    }
}
