use std::collections::BTreeMap;

use super::{Alphabet, Expr, ExprError, Letter};

/// Named expressions that may be referred to from expression text, such
/// as `f_a` or `i_b'`.
#[derive(Clone, Debug, Default)]
pub struct Definitions {
    map: BTreeMap<String, Expr>,
}

impl Definitions {
    pub fn new() -> Self {
        Self::default()
    }

    /// The standard named expressions for a binary alphabet `{a, b}` (in
    /// that order), with `x` the tracked and `y` the other letter:
    ///
    /// * `f_x = μX(aX + bX + νY(yY))` (finitely many `x`)
    /// * `i_x = νXμY(xX + yY)` (infinitely many `x`)
    /// * `i_x' = μY(x·i_x + yY)`
    ///
    /// Only defined for binary alphabets; otherwise empty.
    pub fn standard(alphabet: &Alphabet) -> Self {
        let mut defs = Definitions::new();
        if alphabet.len() != 2 {
            return defs;
        }
        let ls = alphabet.letters();
        for (x, y) in [(ls[0].0, ls[1].0), (ls[1].0, ls[0].0)] {
            let f = Expr::mu(
                "X",
                Expr::sum([
                    Expr::letter(ls[0].0, Expr::var("X")),
                    Expr::letter(ls[1].0, Expr::var("X")),
                    Expr::nu("Y", Expr::letter(y, Expr::var("Y"))),
                ]),
            );
            let i = Expr::nu(
                "X",
                Expr::mu("Y", Expr::plus(Expr::letter(x, Expr::var("X")), Expr::letter(y, Expr::var("Y")))),
            );
            let i1 = i.unfold().expect("fixpoint");
            defs.insert(&format!("f_{x}"), f);
            defs.insert(&format!("i_{x}"), i);
            defs.insert(&format!("i_{x}'"), i1);
        }
        defs
    }

    pub fn insert(&mut self, name: &str, e: Expr) {
        self.map.insert(name.to_string(), e);
    }

    pub fn get(&self, name: &str) -> Option<&Expr> {
        self.map.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Expr)> {
        self.map.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Is `name` syntactically usable as a reference?
    pub fn is_valid_name(name: &str) -> bool {
        let mut chars = name.chars();
        let head: String = chars.by_ref().take_while(|c| c.is_ascii_lowercase()).collect();
        !head.is_empty()
            && name[head.len()..].starts_with('_')
            && name[head.len() + 1..].chars().all(|c| c.is_ascii_alphanumeric() || c == '\'' || c == '_')
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Zero,
    Top,
    Var(String),
    Name(String),
    Letter(char),
    Plus,
    Cap,
    LParen,
    RParen,
    Mu,
    Nu,
    Dot,
    Eof,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = vec![];
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            c if c.is_whitespace() || c == '·' => i += 1,
            '0' => {
                out.push((pos, Tok::Zero));
                i += 1;
            }
            '⊤' => {
                out.push((pos, Tok::Top));
                i += 1;
            }
            '+' => {
                out.push((pos, Tok::Plus));
                i += 1;
            }
            '&' | '∩' => {
                out.push((pos, Tok::Cap));
                i += 1;
            }
            '(' => {
                out.push((pos, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((pos, Tok::RParen));
                i += 1;
            }
            '.' => {
                out.push((pos, Tok::Dot));
                i += 1;
            }
            'μ' => {
                out.push((pos, Tok::Mu));
                i += 1;
            }
            'ν' => {
                out.push((pos, Tok::Nu));
                i += 1;
            }
            c if c.is_ascii_uppercase() => {
                let start = i;
                while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_' || chars[i].1 == '\'')
                {
                    // an uppercase identifier never swallows lowercase letters
                    if chars[i].1.is_ascii_lowercase() {
                        break;
                    }
                    i += 1;
                }
                let word: String = chars[start..i].iter().map(|&(_, c)| c).collect();
                out.push((pos, if word == "T" { Tok::Top } else { Tok::Var(word) }));
            }
            c if c.is_ascii_lowercase() => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_lowercase() {
                    i += 1;
                }
                if i < chars.len() && chars[i].1 == '_' {
                    i += 1;
                    while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '\'') {
                        i += 1;
                    }
                    let name: String = chars[start..i].iter().map(|&(_, c)| c).collect();
                    out.push((pos, Tok::Name(name)));
                    continue;
                }
                let word: String = chars[start..i].iter().map(|&(_, c)| c).collect();
                match word.as_str() {
                    "mu" => out.push((pos, Tok::Mu)),
                    "nu" => out.push((pos, Tok::Nu)),
                    _ => {
                        for &(p, c) in &chars[start..i] {
                            out.push((p, Tok::Letter(c)));
                        }
                    }
                }
            }
            other => {
                return Err(ExprError::Syntax { pos, msg: format!("unexpected character `{other}`") });
            }
        }
    }
    out.push((text.len(), Tok::Eof));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    alphabet: &'a Alphabet,
    defs: &'a Definitions,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if t != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn sum(&mut self) -> Result<Expr, ExprError> {
        let mut e = self.cap()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            e = Expr::plus(e, self.cap()?);
        }
        Ok(e)
    }

    fn cap(&mut self) -> Result<Expr, ExprError> {
        let mut e = self.prefix()?;
        while *self.peek() == Tok::Cap {
            self.bump();
            e = Expr::cap(e, self.prefix()?);
        }
        Ok(e)
    }

    fn prefix(&mut self) -> Result<Expr, ExprError> {
        if let Tok::Letter(c) = *self.peek() {
            let pos = self.pos();
            if !self.alphabet.contains(Letter(c)) {
                return Err(ExprError::UndeclaredLetter { letter: c, pos });
            }
            self.bump();
            return Ok(Expr::letter(c, self.prefix()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Zero => Ok(Expr::Zero),
            Tok::Top => Ok(Expr::Top),
            Tok::Var(x) => Ok(Expr::var(&x)),
            Tok::Name(n) => match self.defs.get(&n) {
                Some(e) => {
                    for a in e.letters() {
                        if !self.alphabet.contains(a) {
                            return Err(ExprError::UndeclaredLetter { letter: a.0, pos });
                        }
                    }
                    Ok(e.clone())
                }
                None => Err(ExprError::UnknownName { name: n, pos }),
            },
            Tok::LParen => {
                let e = self.sum()?;
                if self.bump() != Tok::RParen {
                    return Err(ExprError::Syntax {
                        pos: self.toks[self.at.saturating_sub(1)].0,
                        msg: "expected `)`".into(),
                    });
                }
                Ok(e)
            }
            t @ (Tok::Mu | Tok::Nu) => {
                let x = match self.bump() {
                    Tok::Var(x) => x,
                    _ => {
                        return Err(ExprError::Syntax {
                            pos: self.toks[self.at.saturating_sub(1)].0,
                            msg: "expected a variable after binder".into(),
                        })
                    }
                };
                if *self.peek() == Tok::Dot {
                    self.bump();
                }
                let body = self.sum()?;
                Ok(if t == Tok::Mu { Expr::mu(&x, body) } else { Expr::nu(&x, body) })
            }
            Tok::Eof => Err(ExprError::Syntax { pos, msg: "unexpected end of input".into() }),
            t => Err(ExprError::Syntax { pos, msg: format!("unexpected {}", describe(&t)) }),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Plus => "`+`",
        Tok::Cap => "`&`",
        Tok::RParen => "`)`",
        Tok::Dot => "`.`",
        _ => "token",
    }
}

/// Parses an expression over `alphabet`. The standard named expressions
/// (`f_a`, `i_a`, `i_a'`, ...) are available when the alphabet is binary.
pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Expr, ExprError> {
    parse_with(text, alphabet, &Definitions::standard(alphabet))
}

/// Parses an expression, resolving named references through `defs`.
pub fn parse_with(text: &str, alphabet: &Alphabet, defs: &Definitions) -> Result<Expr, ExprError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, at: 0, alphabet, defs };
    let e = p.sum()?;
    if *p.peek() != Tok::Eof {
        return p.err(format!("unexpected {} after expression", describe(p.peek())));
    }
    Ok(e)
}
