use super::ast::Pos;
use super::error::DslError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Nat(String),
    Sym(&'static str),
    Eof,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
    pub text: String,
}

const SYMBOLS: [&str; 17] = [
    "->", "<=", "<", "=", "+", "-", "*", "/", "(", ")", "{", "}", "[", "]", ",", ":", "|",
];

pub fn lex(src: &str) -> Result<Vec<Token>, DslError> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut chars = src.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        let pos = Pos { line, column: col };
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if c == '#' {
            while chars.peek().is_some_and(|&(_, c)| c != '\n') {
                chars.next();
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut end = i;
            while let Some(&(j, d)) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' || d == '\'' {
                    end = j + d.len_utf8();
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            let text = &src[i..end];
            out.push(Token {
                tok: Tok::Ident(text.into()),
                pos,
                text: text.into(),
            });
            continue;
        }
        if c.is_ascii_digit() {
            let mut end = i;
            while let Some(&(j, d)) = chars.peek() {
                if d.is_ascii_digit() {
                    end = j + 1;
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            let text = &src[i..end];
            out.push(Token {
                tok: Tok::Nat(text.into()),
                pos,
                text: text.into(),
            });
            continue;
        }
        let rest = &src[i..];
        let Some(sym) = SYMBOLS.iter().find(|s| rest.starts_with(**s)) else {
            return Err(DslError::Parse {
                pos,
                expected: "a token".into(),
                found: c.to_string(),
            });
        };
        for _ in 0..sym.len() {
            chars.next();
        }
        col += sym.len();
        out.push(Token {
            tok: Tok::Sym(sym),
            pos,
            text: sym.to_string(),
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        pos: Pos { line, column: col },
        text: String::new(),
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_are_one_based() {
        let toks = lex("set A\n  = { (x) }").unwrap();
        assert_eq!(toks[0].pos, Pos { line: 1, column: 1 });
        assert_eq!(toks[2].pos, Pos { line: 2, column: 3 });
        assert_eq!(toks[2].tok, Tok::Sym("="));
    }

    #[test]
    fn arrows_and_comments() {
        let toks = lex("x -> y # note\n<= 12").unwrap();
        let kinds: Vec<Tok> = toks.into_iter().map(|t| t.tok).collect();
        assert_eq!(
            kinds,
            vec![
                Tok::Ident("x".into()),
                Tok::Sym("->"),
                Tok::Ident("y".into()),
                Tok::Sym("<="),
                Tok::Nat("12".into()),
                Tok::Eof
            ]
        );
    }

    #[test]
    fn stray_character() {
        let err = lex("set A = $").unwrap_err();
        assert_eq!(err.pos(), Pos { line: 1, column: 9 });
    }
}
