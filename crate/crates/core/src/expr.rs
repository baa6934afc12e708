//! The expression language shared by the command line and the REPL.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := unary ('*' unary)*            -- multiplication is always explicit
//! unary   := '-' unary | power
//! power   := atom ('^' uint)?
//! atom    := uint ('/' uint)?              -- exact rational literal
//!          | 'i'                           -- imaginary unit (complex ring only)
//!          | ident                         -- generator or registered alias
//!          | ident '(' sum ')'             -- apply a registered endomorphism
//!          | 'adj' '(' sum ')'             -- adjoint, when a star structure exists
//!          | 'skewL' '(' sum ',' sum ';' ident ')'   -- a·b - alpha(b)·a
//!          | 'skewR' '(' sum ',' sum ';' ident ')'   -- a·b - b·alpha(a)
//!          | '[' sum ',' sum ']'           -- commutator
//!          | '(' sum ')'
//! ```
//!
//! Evaluation produces an *unreduced* element; the caller decides which presentation
//! normalizes it. Errors carry line and column, one-based.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::freealg::{Element, FreeAlgebra};
use crate::morphism::Endomorphism;
use crate::ore::{skew_commutator_left, skew_commutator_right};
use crate::scalar::{Ring, Scalar};
use crate::skewquant::StarContext;

/// Parsed expression tree.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Rational(BigRational),
    Imaginary,
    Ident(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Commutator(Box<Expr>, Box<Expr>),
    Adjoint(Box<Expr>),
    Apply { endo: String, arg: Box<Expr> },
    SkewLeft { a: Box<Expr>, b: Box<Expr>, endo: String },
    SkewRight { a: Box<Expr>, b: Box<Expr>, endo: String },
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semicolon,
    Eof,
}

impl std::fmt::Display for Tok {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "number `{n}`"),
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBracket => f.write_str("`[`"),
            Tok::RBracket => f.write_str("`]`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Semicolon => f.write_str("`;`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src: src.as_bytes(), pos: 0, line: 1, col: 1 }
    }

    fn bump(&mut self) -> u8 {
        let c = self.src[self.pos];
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        c
    }

    fn tokens(mut self) -> Result<Vec<Spanned>> {
        let mut out = Vec::new();
        loop {
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
                self.bump();
            }
            let (line, col) = (self.line, self.col);
            if self.pos >= self.src.len() {
                out.push(Spanned { tok: Tok::Eof, line, col });
                return Ok(out);
            }
            let c = self.src[self.pos];
            let tok = match c {
                b'+' => {
                    self.bump();
                    Tok::Plus
                }
                b'-' => {
                    self.bump();
                    Tok::Minus
                }
                b'*' => {
                    self.bump();
                    Tok::Star
                }
                b'/' => {
                    self.bump();
                    Tok::Slash
                }
                b'^' => {
                    self.bump();
                    Tok::Caret
                }
                b'(' => {
                    self.bump();
                    Tok::LParen
                }
                b')' => {
                    self.bump();
                    Tok::RParen
                }
                b'[' => {
                    self.bump();
                    Tok::LBracket
                }
                b']' => {
                    self.bump();
                    Tok::RBracket
                }
                b',' => {
                    self.bump();
                    Tok::Comma
                }
                b';' => {
                    self.bump();
                    Tok::Semicolon
                }
                b'0'..=b'9' => {
                    let start = self.pos;
                    while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                        self.bump();
                    }
                    let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    Tok::Int(text.parse::<BigInt>().expect("digits parse"))
                }
                c if c.is_ascii_alphabetic() || c == b'_' => {
                    let start = self.pos;
                    while self.pos < self.src.len()
                        && (self.src[self.pos].is_ascii_alphanumeric()
                            || self.src[self.pos] == b'_')
                    {
                        self.bump();
                    }
                    let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    Tok::Ident(text.to_string())
                }
                other => {
                    return Err(Error::Parse {
                        line,
                        col,
                        message: format!("unexpected character `{}`", other as char),
                    })
                }
            };
            out.push(Spanned { tok, line, col });
        }
    }
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn advance(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err_here(&self, message: impl Into<String>) -> Error {
        let s = self.peek();
        Error::Parse { line: s.line, col: s.col, message: message.into() }
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        if self.peek().tok == want {
            self.advance();
            Ok(())
        } else {
            Err(self.err_here(format!("expected {want}, found {}", self.peek().tok)))
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = self.product()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.advance();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
                }
                Tok::Minus => {
                    self.advance();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.peek().tok == Tok::Star {
            self.advance();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek().tok == Tok::Minus {
            self.advance();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.advance();
        let spanned = self.advance();
        let Tok::Int(ref n) = spanned.tok else {
            return Err(Error::Parse {
                line: spanned.line,
                col: spanned.col,
                message: format!("the exponent must be a plain integer, found {}", spanned.tok),
            });
        };
        let exp = u32::try_from(n.clone()).map_err(|_| Error::Parse {
            line: spanned.line,
            col: spanned.col,
            message: format!("exponent `{n}` is out of range"),
        })?;
        Ok(Expr::Pow(Box::new(base), exp))
    }

    fn atom(&mut self) -> Result<Expr> {
        let spanned = self.advance();
        match spanned.tok {
            Tok::Int(num) => {
                if self.peek().tok == Tok::Slash {
                    self.advance();
                    let den_tok = self.advance();
                    let Tok::Int(den) = den_tok.tok else {
                        return Err(Error::Parse {
                            line: den_tok.line,
                            col: den_tok.col,
                            message: format!("expected a denominator, found {}", den_tok.tok),
                        });
                    };
                    if den == BigInt::from(0) {
                        return Err(Error::Parse {
                            line: den_tok.line,
                            col: den_tok.col,
                            message: "zero denominator in a rational literal".into(),
                        });
                    }
                    Ok(Expr::Rational(BigRational::new(num, den)))
                } else {
                    Ok(Expr::Rational(BigRational::from_integer(num)))
                }
            }
            Tok::Ident(name) if name == "i" => Ok(Expr::Imaginary),
            Tok::Ident(name) => {
                if self.peek().tok != Tok::LParen {
                    return Ok(Expr::Ident(name));
                }
                self.advance();
                match name.as_str() {
                    "adj" => {
                        let arg = self.sum()?;
                        self.expect(Tok::RParen)?;
                        Ok(Expr::Adjoint(Box::new(arg)))
                    }
                    "skewL" | "skewR" => {
                        let a = self.sum()?;
                        self.expect(Tok::Comma)?;
                        let b = self.sum()?;
                        self.expect(Tok::Semicolon)?;
                        let endo_tok = self.advance();
                        let Tok::Ident(endo) = endo_tok.tok else {
                            return Err(Error::Parse {
                                line: endo_tok.line,
                                col: endo_tok.col,
                                message: format!(
                                    "expected a twist name after `;`, found {}",
                                    endo_tok.tok
                                ),
                            });
                        };
                        self.expect(Tok::RParen)?;
                        let (a, b) = (Box::new(a), Box::new(b));
                        if name == "skewL" {
                            Ok(Expr::SkewLeft { a, b, endo })
                        } else {
                            Ok(Expr::SkewRight { a, b, endo })
                        }
                    }
                    _ => {
                        let arg = self.sum()?;
                        self.expect(Tok::RParen)?;
                        Ok(Expr::Apply { endo: name, arg: Box::new(arg) })
                    }
                }
            }
            Tok::LBracket => {
                let a = self.sum()?;
                self.expect(Tok::Comma)?;
                let b = self.sum()?;
                self.expect(Tok::RBracket)?;
                Ok(Expr::Commutator(Box::new(a), Box::new(b)))
            }
            Tok::LParen => {
                let inner = self.sum()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            other => Err(Error::Parse {
                line: spanned.line,
                col: spanned.col,
                message: format!("expected an expression, found {other}"),
            }),
        }
    }
}

/// Parses one expression, requiring the whole input to be consumed.
pub fn parse(src: &str) -> Result<Expr> {
    let toks = Lexer::new(src).tokens()?;
    let mut parser = Parser { toks, pos: 0 };
    let expr = parser.sum()?;
    if parser.peek().tok != Tok::Eof {
        return Err(parser.err_here(format!(
            "trailing input: found {} after a complete expression",
            parser.peek().tok
        )));
    }
    Ok(expr)
}

/// Everything an expression may refer to: the algebra, name aliases, registered
/// twists, and (optionally) a star structure for `adj`.
pub struct EvalContext<'a> {
    pub algebra: &'a Arc<FreeAlgebra>,
    pub aliases: &'a BTreeMap<String, Element>,
    pub endos: &'a BTreeMap<String, Endomorphism>,
    pub star: Option<&'a StarContext>,
}

impl<'a> EvalContext<'a> {
    fn lookup_endo(&self, name: &str) -> Result<&Endomorphism> {
        self.endos
            .get(name)
            .ok_or_else(|| Error::UnknownEndomorphism { name: name.to_string() })
    }

    /// Evaluates a parsed expression to an unreduced element.
    pub fn eval(&self, expr: &Expr) -> Result<Element> {
        match expr {
            Expr::Rational(r) => Ok(Element::scalar(
                self.algebra,
                Scalar::from_big_rational(r.clone(), self.algebra.ring()),
            )),
            Expr::Imaginary => {
                if self.algebra.ring() != Ring::GaussianRational {
                    return Err(Error::NeedsComplexRing {
                        context: format!("the imaginary unit over {}", self.algebra.ring()),
                    });
                }
                Ok(Element::scalar(self.algebra, Scalar::i()))
            }
            Expr::Ident(name) => {
                if let Ok(g) = Element::generator_named(self.algebra, name) {
                    return Ok(g);
                }
                if let Some(alias) = self.aliases.get(name) {
                    return Ok(alias.clone());
                }
                Err(Error::UnknownGenerator {
                    name: name.clone(),
                    algebra: self.algebra.name().to_string(),
                })
            }
            Expr::Neg(a) => Ok(self.eval(a)?.neg()),
            Expr::Add(a, b) => self.eval(a)?.add(&self.eval(b)?),
            Expr::Sub(a, b) => self.eval(a)?.sub(&self.eval(b)?),
            Expr::Mul(a, b) => self.eval(a)?.mul(&self.eval(b)?),
            Expr::Pow(a, n) => Ok(self.eval(a)?.pow(*n)),
            Expr::Commutator(a, b) => self.eval(a)?.commutator(&self.eval(b)?),
            Expr::Adjoint(a) => {
                let star = self.star.ok_or_else(|| Error::NoStarStructure {
                    algebra: self.algebra.name().to_string(),
                })?;
                Ok(star.adjoint(&self.eval(a)?))
            }
            Expr::Apply { endo, arg } => {
                let endo = self.lookup_endo(endo)?;
                Ok(endo.apply(&self.eval(arg)?))
            }
            Expr::SkewLeft { a, b, endo } => {
                let alpha = self.lookup_endo(endo)?;
                skew_commutator_left(&self.eval(a)?, &self.eval(b)?, alpha)
            }
            Expr::SkewRight { a, b, endo } => {
                let alpha = self.lookup_endo(endo)?;
                skew_commutator_right(&self.eval(a)?, &self.eval(b)?, alpha)
            }
        }
    }
}

/// Parse-and-evaluate in one step.
pub fn eval_str(src: &str, ctx: &EvalContext<'_>) -> Result<Element> {
    ctx.eval(&parse(src)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{jk_aliases, so13, MOSTLY_MINUS};
    use crate::scalar::Ring;

    fn weyl_ctx_algebra() -> Arc<FreeAlgebra> {
        FreeAlgebra::new("w", Ring::Rational, &["t", "x"]).unwrap()
    }

    fn empty_aliases() -> BTreeMap<String, Element> {
        BTreeMap::new()
    }

    #[test]
    fn arithmetic_and_precedence() {
        let alg = weyl_ctx_algebra();
        let aliases = empty_aliases();
        let endos = BTreeMap::new();
        let ctx = EvalContext { algebra: &alg, aliases: &aliases, endos: &endos, star: None };
        assert_eq!(eval_str("x*t + 2", &ctx).unwrap().to_string(), "x*t + 2");
        assert_eq!(eval_str("t + x*t", &ctx).unwrap().to_string(), "x*t + t");
        assert_eq!(eval_str("-t^2", &ctx).unwrap().to_string(), "-t^2");
        assert_eq!(eval_str("(t + x)^2", &ctx).unwrap().to_string(), "t^2 + t*x + x*t + x^2");
        assert_eq!(eval_str("1/2*t + 1/3*t", &ctx).unwrap().to_string(), "5/6*t");
        assert_eq!(eval_str("[x, t]", &ctx).unwrap().to_string(), "-t*x + x*t");
        assert_eq!(eval_str("2 - 3", &ctx).unwrap().to_string(), "-1");
        assert_eq!(eval_str("- - t", &ctx).unwrap().to_string(), "t");
    }

    #[test]
    fn imaginary_unit_requires_the_complex_ring() {
        let alg = weyl_ctx_algebra();
        let aliases = empty_aliases();
        let endos = BTreeMap::new();
        let ctx = EvalContext { algebra: &alg, aliases: &aliases, endos: &endos, star: None };
        assert!(matches!(eval_str("i*t", &ctx), Err(Error::NeedsComplexRing { .. })));
        let so = so13(MOSTLY_MINUS);
        let aliases = empty_aliases();
        let ctx =
            EvalContext { algebra: so.algebra(), aliases: &aliases, endos: &endos, star: None };
        assert_eq!(eval_str("i*L01", &ctx).unwrap().to_string(), "i*L01");
        assert_eq!(eval_str("i*i", &ctx).unwrap().to_string(), "-1");
    }

    #[test]
    fn aliases_resolve_after_generators() {
        let so = so13(MOSTLY_MINUS);
        let aliases = jk_aliases(so.algebra()).unwrap();
        let endos = BTreeMap::new();
        let ctx =
            EvalContext { algebra: so.algebra(), aliases: &aliases, endos: &endos, star: None };
        assert_eq!(eval_str("J3", &ctx).unwrap().to_string(), "L12");
        assert_eq!(eval_str("K2", &ctx).unwrap().to_string(), "L02");
        assert_eq!(
            eval_str("N1", &ctx).unwrap().to_string(),
            eval_str("1/2*(J1 + i*K1)", &ctx).unwrap().to_string()
        );
        assert!(matches!(
            eval_str("Q7", &ctx),
            Err(Error::UnknownGenerator { .. })
        ));
    }

    #[test]
    fn twisted_commutators_and_endo_application() {
        let alg = weyl_ctx_algebra();
        let t = Element::generator(&alg, 0);
        let x = Element::generator(&alg, 1);
        let two = Scalar::from_integer(2, Ring::Rational);
        let alpha =
            Endomorphism::new("dbl", &alg, vec![t.scale(&two).unwrap(), x.clone()], false)
                .unwrap();
        let mut endos = BTreeMap::new();
        endos.insert("dbl".to_string(), alpha);
        let aliases = empty_aliases();
        let ctx = EvalContext { algebra: &alg, aliases: &aliases, endos: &endos, star: None };
        assert_eq!(eval_str("skewL(x, t; dbl)", &ctx).unwrap().to_string(), "-2*t*x + x*t");
        assert_eq!(eval_str("skewR(x, t; dbl)", &ctx).unwrap().to_string(), "-t*x + x*t");
        assert_eq!(eval_str("dbl(t^2)", &ctx).unwrap().to_string(), "4*t^2");
        assert!(matches!(
            eval_str("skewL(x, t; nosuch)", &ctx),
            Err(Error::UnknownEndomorphism { .. })
        ));
    }

    #[test]
    fn adjoint_needs_a_star_structure() {
        let alg = weyl_ctx_algebra();
        let aliases = empty_aliases();
        let endos = BTreeMap::new();
        let ctx = EvalContext { algebra: &alg, aliases: &aliases, endos: &endos, star: None };
        assert!(matches!(eval_str("adj(t)", &ctx), Err(Error::NoStarStructure { .. })));
        let star = StarContext::hermitian(&alg);
        let ctx =
            EvalContext { algebra: &alg, aliases: &aliases, endos: &endos, star: Some(&star) };
        assert_eq!(eval_str("adj(x*t)", &ctx).unwrap().to_string(), "t*x");
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse("x *") {
            Err(Error::Parse { line, col, .. }) => {
                assert_eq!(line, 1);
                assert_eq!(col, 4);
            }
            other => panic!("expected a parse error, got {other:?}"),
        }
        match parse("t + $") {
            Err(Error::Parse { col, message, .. }) => {
                assert_eq!(col, 5);
                assert!(message.contains('$'));
            }
            other => panic!("expected a parse error, got {other:?}"),
        }
        match parse("x^t") {
            Err(Error::Parse { message, .. }) => assert!(message.contains("exponent")),
            other => panic!("expected a parse error, got {other:?}"),
        }
        match parse("x t") {
            Err(Error::Parse { message, .. }) => assert!(message.contains("trailing")),
            other => panic!("expected a parse error, got {other:?}"),
        }
        match parse("1/0") {
            Err(Error::Parse { message, .. }) => assert!(message.contains("denominator")),
            other => panic!("expected a parse error, got {other:?}"),
        }
        assert!(parse("(a + b").is_err());
        assert!(parse("[a, b)").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn whole_input_must_be_consumed() {
        assert!(parse("x + t").is_ok());
        assert!(parse("x + t)").is_err());
        assert!(parse("x^2^3").is_err());
    }
}
