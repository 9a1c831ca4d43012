//! The group expression language.
//!
//! ```text
//! expr    := term ( ("x" | "×") term )*
//! term    := "(" expr ")"
//!          | "Syl" "(" int "," expr ")"
//!          | "model" "(" entry ";" family-literal "," int ")"
//!          | "P" "(" int "," "S" "(" int ")" ")"
//!          | name "(" int ( "," int )* ")"
//!          | family-literal
//! family-literal := FAMILY [ "+" | "-" ] "(" int "," int ")"
//! entry   := word ( "-" word )*
//! ```
//!
//! Products associate to the left. Parameter ranges are checked while
//! parsing, so every AST that exists can be printed and parsed back.

use std::fmt;

use sylow_core::catalog::lookup;
use sylow_core::classical::{ClassicalSpec, Family, Sign};
use sylow_core::field::{is_prime, prime_power, MAX_FIELD_ORDER};
use sylow_core::matrix::MAX_DIM;

pub const MAX_INPUT: usize = 4096;
pub const MAX_DEGREE: u64 = 32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Classical(ClassicalSpec),
    Syl(u64, Box<Expr>),
    Model { entry: String, spec: ClassicalSpec, prime: u64 },
    /// Generalized quaternion group of the given order.
    Q(u64),
    /// Dihedral group of the given order.
    D(u64),
    C(u64),
    S(u64),
    /// `P_l(S_n)`.
    P(u64, u64),
    Matrices(MatrixKind, u64, u64),
    Product(Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixKind {
    Up,
    Sym,
    Antisym,
    Antisym0,
    AntisymStar,
}

impl MatrixKind {
    const ALL: [MatrixKind; 5] =
        [MatrixKind::Up, MatrixKind::Sym, MatrixKind::Antisym, MatrixKind::Antisym0, MatrixKind::AntisymStar];

    pub fn name(self) -> &'static str {
        match self {
            MatrixKind::Up => "Up",
            MatrixKind::Sym => "Sym",
            MatrixKind::Antisym => "Antisym",
            MatrixKind::Antisym0 => "Antisym0",
            MatrixKind::AntisymStar => "AntisymStar",
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Classical(spec) => write!(f, "{spec}"),
            Expr::Syl(p, e) => write!(f, "Syl({p}, {e})"),
            Expr::Model { entry, spec, prime } => write!(f, "model({entry}; {spec}, {prime})"),
            Expr::Q(k) => write!(f, "Q({k})"),
            Expr::D(k) => write!(f, "D({k})"),
            Expr::C(k) => write!(f, "C({k})"),
            Expr::S(n) => write!(f, "S({n})"),
            Expr::P(l, n) => write!(f, "P({l}, S({n}))"),
            Expr::Matrices(kind, n, q) => write!(f, "{}({n},{q})", kind.name()),
            Expr::Product(a, b) => match **b {
                Expr::Product(..) => write!(f, "{a} x ({b})"),
                _ => write!(f, "{a} x {b}"),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub offset: usize,
    pub message: String,
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at byte {}: {}", self.offset, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

impl ParseError {
    /// The input line with a caret under the offending byte.
    pub fn render(&self, input: &str) -> String {
        let col = input[..self.offset.min(input.len())].chars().count();
        format!("{input}\n{}^\nerror: {self}", " ".repeat(col))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Int(u64),
    LParen,
    RParen,
    Comma,
    Semi,
    Plus,
    Minus,
    Times,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("{w:?}"),
            Tok::Int(n) => format!("{n}"),
            Tok::LParen => "\"(\"".into(),
            Tok::RParen => "\")\"".into(),
            Tok::Comma => "\",\"".into(),
            Tok::Semi => "\";\"".into(),
            Tok::Plus => "\"+\"".into(),
            Tok::Minus => "\"-\"".into(),
            Tok::Times => "\"x\"".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(input: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = input.char_indices().peekable();
    while let Some(&(at, c)) = chars.peek() {
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            ';' => Some(Tok::Semi),
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '×' => Some(Tok::Times),
            _ => None,
        };
        if let Some(tok) = single {
            chars.next();
            out.push((at, tok));
        } else if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut end = at;
            while let Some(&(i, d)) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                end = i + 1;
                chars.next();
            }
            let n = input[at..end].parse::<u64>().map_err(|_| ParseError {
                offset: at,
                message: format!("integer {} is too large", &input[at..end]),
                expected: Vec::new(),
            })?;
            out.push((at, Tok::Int(n)));
        } else if c.is_ascii_alphabetic() {
            let mut end = at;
            while let Some(&(i, d)) = chars.peek() {
                if !d.is_ascii_alphanumeric() {
                    break;
                }
                end = i + 1;
                chars.next();
            }
            let word = &input[at..end];
            out.push((at, if word == "x" { Tok::Times } else { Tok::Word(word.into()) }));
        } else {
            return Err(ParseError {
                offset: at,
                message: format!("unexpected character {c:?}"),
                expected: Vec::new(),
            });
        }
    }
    out.push((input.len(), Tok::End));
    Ok(out)
}

fn term_starts() -> Vec<String> {
    let mut v: Vec<String> = ["\"(\"", "Syl", "model", "Q", "D", "C", "S", "P"].map(String::from).into();
    v.extend(MatrixKind::ALL.iter().map(|k| k.name().to_string()));
    v.extend(Family::ALL.iter().map(|f| f.name().to_string()));
    v
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected<T>(&self, expected: &[&str]) -> PResult<T> {
        Err(ParseError {
            offset: self.offset(),
            message: format!("unexpected {}", self.peek().describe()),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn invalid<T>(offset: usize, message: impl Into<String>) -> PResult<T> {
        Err(ParseError { offset, message: message.into(), expected: Vec::new() })
    }

    fn expect(&mut self, tok: Tok) -> PResult<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.unexpected(&[&tok.describe()])
        }
    }

    fn int(&mut self) -> PResult<(usize, u64)> {
        match self.peek() {
            Tok::Int(n) => {
                let n = *n;
                Ok((self.bump().0, n))
            }
            _ => self.unexpected(&["an integer"]),
        }
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.term()?;
        while *self.peek() == Tok::Times {
            self.bump();
            let rhs = self.term()?;
            lhs = Expr::Product(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn args(&mut self, at: usize, name: &str, arity: usize) -> PResult<Vec<(usize, u64)>> {
        self.expect(Tok::LParen)?;
        let mut args = vec![self.int()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            args.push(self.int()?);
        }
        if *self.peek() != Tok::RParen {
            return self.unexpected(&["\",\"", "\")\""]);
        }
        self.bump();
        if args.len() != arity {
            return Self::invalid(at, format!("{name} takes {arity} argument(s), got {}", args.len()));
        }
        Ok(args)
    }

    fn prime(at: usize, p: u64) -> PResult<u64> {
        if is_prime(p) {
            Ok(p)
        } else {
            Self::invalid(at, format!("{p} is not prime"))
        }
    }

    fn field_order(at: usize, q: u64) -> PResult<u64> {
        match prime_power(q) {
            Some(_) if q <= MAX_FIELD_ORDER => Ok(q),
            Some(_) => Self::invalid(at, format!("fields larger than {MAX_FIELD_ORDER} are not supported")),
            None => Self::invalid(at, format!("{q} is not a prime power")),
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let at = self.offset();
        let word = match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                return Ok(e);
            }
            Tok::Word(w) => w,
            _ => {
                let starts = term_starts();
                let refs: Vec<&str> = starts.iter().map(String::as_str).collect();
                return self.unexpected(&refs);
            }
        };
        self.bump();
        if let Ok(family) = word.parse::<Family>() {
            return Ok(Expr::Classical(self.classical(at, family)?));
        }
        if let Some(kind) = MatrixKind::ALL.into_iter().find(|k| k.name() == word) {
            let a = self.args(at, &word, 2)?;
            let (n, q) = (a[0], a[1]);
            if !(1..=MAX_DIM as u64).contains(&n.1) {
                return Self::invalid(n.0, format!("matrix size must be in 1..={MAX_DIM}"));
            }
            let q = Self::field_order(q.0, q.1)?;
            if kind == MatrixKind::AntisymStar && prime_power(q).is_some_and(|(_, r)| r % 2 == 1) {
                return Self::invalid(a[1].0, format!("AntisymStar needs a field of square order, got {q}"));
            }
            return Ok(Expr::Matrices(kind, n.1, q));
        }
        match word.as_str() {
            "Syl" => {
                self.expect(Tok::LParen)?;
                let (pat, p) = self.int()?;
                let p = Self::prime(pat, p)?;
                self.expect(Tok::Comma)?;
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(Expr::Syl(p, Box::new(e)))
            }
            "model" => {
                self.expect(Tok::LParen)?;
                let (eat, entry) = self.entry_id()?;
                if lookup(&entry).is_none() {
                    return Self::invalid(eat, format!("unknown catalog entry {entry:?}"));
                }
                self.expect(Tok::Semi)?;
                let fat = self.offset();
                let family = match self.bump().1 {
                    Tok::Word(w) => w.parse::<Family>().or_else(|_| Self::invalid(fat, format!("unknown family {w:?}")))?,
                    _ => {
                        self.pos -= 1;
                        return self.unexpected(&["a classical family"]);
                    }
                };
                let spec = self.classical(fat, family)?;
                self.expect(Tok::Comma)?;
                let (pat, p) = self.int()?;
                let prime = Self::prime(pat, p)?;
                self.expect(Tok::RParen)?;
                Ok(Expr::Model { entry, spec, prime })
            }
            "Q" | "D" | "C" | "S" => {
                let (kat, k) = self.args(at, &word, 1)?[0];
                let ok = match word.as_str() {
                    "Q" => k >= 8 && k % 4 == 0,
                    "D" => k >= 4 && k % 2 == 0,
                    "C" => k >= 1,
                    _ => (1..=MAX_DEGREE).contains(&k),
                };
                if !ok {
                    let need = match word.as_str() {
                        "Q" => "a multiple of 4, at least 8",
                        "D" => "even, at least 4",
                        "C" => "at least 1",
                        _ => "in 1..=32",
                    };
                    return Self::invalid(kat, format!("{word}({k}): the order must be {need}"));
                }
                Ok(match word.as_str() {
                    "Q" => Expr::Q(k),
                    "D" => Expr::D(k),
                    "C" => Expr::C(k),
                    _ => Expr::S(k),
                })
            }
            "P" => {
                self.expect(Tok::LParen)?;
                let (lat, l) = self.int()?;
                let l = Self::prime(lat, l)?;
                self.expect(Tok::Comma)?;
                match self.peek() {
                    Tok::Word(w) if w == "S" => {
                        self.bump();
                    }
                    _ => return self.unexpected(&["S"]),
                }
                self.expect(Tok::LParen)?;
                let (nat, n) = self.int()?;
                if n > MAX_DEGREE {
                    return Self::invalid(nat, format!("degree must be at most {MAX_DEGREE}"));
                }
                self.expect(Tok::RParen)?;
                self.expect(Tok::RParen)?;
                Ok(Expr::P(l, n))
            }
            _ => Err(ParseError {
                offset: at,
                message: format!("unknown name {word:?}"),
                expected: term_starts(),
            }),
        }
    }

    fn classical(&mut self, at: usize, family: Family) -> PResult<ClassicalSpec> {
        let sign = match self.peek() {
            Tok::Plus => {
                self.bump();
                Some(Sign::Plus)
            }
            Tok::Minus => {
                self.bump();
                Some(Sign::Minus)
            }
            _ => None,
        };
        let a = self.args(at, family.name(), 2)?;
        let q = Self::field_order(a[1].0, a[1].1)?;
        ClassicalSpec::new(family, a[0].1 as usize, q, sign).or_else(|e| Self::invalid(at, e.to_string()))
    }

    fn entry_id(&mut self) -> PResult<(usize, String)> {
        let at = self.offset();
        let mut id = match self.bump().1 {
            Tok::Word(w) => w,
            _ => {
                self.pos -= 1;
                return self.unexpected(&["a catalog entry id"]);
            }
        };
        while *self.peek() == Tok::Minus {
            self.bump();
            match self.bump().1 {
                Tok::Word(w) => id.push_str(&format!("-{w}")),
                Tok::Int(n) => id.push_str(&format!("-{n}")),
                _ => {
                    self.pos -= 1;
                    return self.unexpected(&["an entry id segment"]);
                }
            }
        }
        Ok((at, id))
    }
}

pub fn parse(input: &str) -> Result<Expr, ParseError> {
    if input.len() > MAX_INPUT {
        return Err(ParseError {
            offset: MAX_INPUT,
            message: format!("input longer than {MAX_INPUT} bytes"),
            expected: Vec::new(),
        });
    }
    let mut p = Parser { toks: lex(input)?, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.unexpected(&["\"x\"", "end of input"]);
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_examples() {
        let e = parse("Syl(2, PSL(3,2))").unwrap();
        let Expr::Syl(2, inner) = &e else { panic!("{e:?}") };
        assert_eq!(**inner, Expr::Classical(ClassicalSpec::new(Family::PSL, 3, 2, None).unwrap()));
        assert_eq!(
            parse("Q(8) x C(2)").unwrap(),
            Expr::Product(Box::new(Expr::Q(8)), Box::new(Expr::C(2)))
        );
        assert_eq!(parse("Q(8) × C(2)").unwrap(), parse("Q(8) x C(2)").unwrap());
        let err = parse("PSp(3,3)").unwrap_err();
        assert_eq!(err.offset, 0);
        assert!(err.message.contains("symplectic dimension must be even"), "{err}");
    }

    #[test]
    fn signs_and_entries() {
        let e = parse("model(O-even-2; O+(2,5), 2)").unwrap();
        assert_eq!(e.to_string(), "model(O-even-2; O+(2,5), 2)");
        assert_eq!(parse("POmega-(4,3)").unwrap().to_string(), "POmega-(4,3)");
        assert_eq!(parse("P(2, S(4))").unwrap(), Expr::P(2, 4));
    }

    #[test]
    fn diagnostics_carry_offsets() {
        let err = parse("Q(8) x ").unwrap_err();
        assert_eq!(err.offset, 7);
        assert!(err.expected.iter().any(|e| e == "Syl"));
        let err = parse("C(2) C(3)").unwrap_err();
        assert_eq!(err.offset, 5);
        assert_eq!(parse("Syl(4, C(2))").unwrap_err().offset, 4);
        assert_eq!(parse("Foo(1)").unwrap_err().message, "unknown name \"Foo\"");
        assert_eq!(parse("C(2) $").unwrap_err().offset, 5);
        assert!(parse("model(PSL-x; PSL(2,3), 3)").is_err());
        assert!(parse(&"C(2) x ".repeat(700)).unwrap_err().message.contains("longer"));
    }

    #[test]
    fn nested_products_keep_their_shape() {
        for text in ["C(2) x (C(3) x C(5))", "(C(2) x C(3)) x C(5)", "Syl(3, GL(2,4)) x D(8)"] {
            let e = parse(text).unwrap();
            assert_eq!(parse(&e.to_string()).unwrap(), e, "{text}");
        }
        assert_eq!(parse("(C(2) x C(3)) x C(5)").unwrap().to_string(), "C(2) x C(3) x C(5)");
    }
}
