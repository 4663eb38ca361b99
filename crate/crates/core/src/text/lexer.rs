use super::diag::{Code, Diagnostic};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Word(String),
    /// A quoted name; never a keyword.
    Quoted(String),
    LBrace,
    RBrace,
    Semi,
    Comma,
    Arrow,
    /// A parenthesised s-expression, kept verbatim.
    Sexpr(String),
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

impl Token {
    /// The name carried by a word or quoted token.
    pub fn name(&self) -> Option<&str> {
        match &self.tok {
            Tok::Word(s) | Tok::Quoted(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_word(&self, w: &str) -> bool {
        matches!(&self.tok, Tok::Word(s) if s == w)
    }

    pub fn describe(&self) -> String {
        match &self.tok {
            Tok::Word(s) => format!("`{s}`"),
            Tok::Quoted(s) => format!("\"{s}\""),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Sexpr(s) => format!("`{s}`"),
        }
    }
}

fn word_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '\'' | '.' | '*' | '^' | '+')
}

pub(crate) fn lex(text: &str) -> Result<Vec<Token>, Diagnostic> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let advance = |i: &mut usize, line: &mut usize, col: &mut usize, c: char| {
        *i += 1;
        if c == '\n' {
            *line += 1;
            *col = 1;
        } else {
            *col += 1;
        }
    };
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let push = |out: &mut Vec<Token>, tok| out.push(Token { tok, line: l0, col: c0 });
        match c {
            _ if c.is_whitespace() => advance(&mut i, &mut line, &mut col, c),
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    let ch = chars[i];
                    advance(&mut i, &mut line, &mut col, ch);
                }
            }
            '{' | '}' | ';' | ',' => {
                push(
                    &mut out,
                    match c {
                        '{' => Tok::LBrace,
                        '}' => Tok::RBrace,
                        ';' => Tok::Semi,
                        _ => Tok::Comma,
                    },
                );
                advance(&mut i, &mut line, &mut col, c);
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                push(&mut out, Tok::Arrow);
                advance(&mut i, &mut line, &mut col, '-');
                advance(&mut i, &mut line, &mut col, '>');
            }
            '"' => {
                advance(&mut i, &mut line, &mut col, c);
                let mut s = String::new();
                loop {
                    match chars.get(i) {
                        None | Some('\n') => {
                            return Err(Diagnostic::new(Code::Syntax, "unterminated quoted name", l0, c0));
                        }
                        Some('"') => {
                            advance(&mut i, &mut line, &mut col, '"');
                            break;
                        }
                        Some(&ch) => {
                            s.push(ch);
                            advance(&mut i, &mut line, &mut col, ch);
                        }
                    }
                }
                push(&mut out, Tok::Quoted(s));
            }
            '(' => {
                let mut depth = 0usize;
                let mut s = String::new();
                loop {
                    let Some(&ch) = chars.get(i) else {
                        return Err(Diagnostic::new(Code::Syntax, "unbalanced parenthesis", l0, c0));
                    };
                    s.push(ch);
                    advance(&mut i, &mut line, &mut col, ch);
                    match ch {
                        '(' => depth += 1,
                        ')' => {
                            depth -= 1;
                            if depth == 0 {
                                break;
                            }
                        }
                        _ => {}
                    }
                }
                push(&mut out, Tok::Sexpr(s));
            }
            _ if word_char(c) => {
                let mut s = String::new();
                while i < chars.len() && word_char(chars[i]) {
                    s.push(chars[i]);
                    let ch = chars[i];
                    advance(&mut i, &mut line, &mut col, ch);
                }
                push(&mut out, Tok::Word(s));
            }
            _ => {
                return Err(Diagnostic::new(
                    Code::Syntax,
                    format!("unexpected character `{c}`"),
                    l0,
                    c0,
                ))
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_and_positions() {
        let toks = lex("algebra idsucc {\n  succ a->b; # note\n  \"(x,y)\" }").unwrap();
        let kinds: Vec<_> = toks.iter().map(|t| t.tok.clone()).collect();
        assert_eq!(kinds[3], Tok::Word("succ".into()));
        assert_eq!(kinds[5], Tok::Arrow);
        assert_eq!(kinds[8], Tok::Quoted("(x,y)".into()));
        assert_eq!((toks[3].line, toks[3].col), (2, 3));
    }

    #[test]
    fn bad_characters() {
        let err = lex("algebra @").unwrap_err();
        assert_eq!((err.code, err.line, err.col), (Code::Syntax, 1, 9));
    }
}
