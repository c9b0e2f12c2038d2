//! Ring expression language: parsing, rendering, and evaluation.
//!
//! Grammar, whitespace-insensitive:
//!
//! ```text
//! expr := term { "x" term }            left associative
//! term := "Z" INT
//!       | "M" "(" INT "," expr ")"
//!       | "T" "(" INT "," expr ")"
//!       | "modJ" "(" expr ")"
//!       | "(" expr ")"
//! ```
//!
//! Integers must be at least 1 and expression trees at most 8 deep. Parse
//! errors carry the byte offset and the token set expected there.

use crate::error::{Result, RingError};
use crate::ring::{
    make_matrix_ring, make_product, make_quotient, make_triangular_ring, make_zn, Caps,
    ElementLiteral, FiniteRing,
};
use crate::structure;

pub const MAX_DEPTH: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingExpr {
    Zn(u64),
    Product(Box<RingExpr>, Box<RingExpr>),
    Matrix(u64, Box<RingExpr>),
    Triangular(u64, Box<RingExpr>),
    ModJ(Box<RingExpr>),
}

impl RingExpr {
    pub fn depth(&self) -> usize {
        match self {
            RingExpr::Zn(_) => 1,
            RingExpr::Product(a, b) => 1 + a.depth().max(b.depth()),
            RingExpr::Matrix(_, e) | RingExpr::Triangular(_, e) | RingExpr::ModJ(e) => {
                1 + e.depth()
            }
        }
    }
}

/// Canonical text form; parses back to the same tree. Right-hand products
/// are parenthesised, so rendering never flattens associativity.
pub fn render(e: &RingExpr) -> String {
    match e {
        RingExpr::Zn(n) => format!("Z{n}"),
        RingExpr::Product(a, b) => {
            let rhs = render(b);
            let rhs = if matches!(**b, RingExpr::Product(..)) {
                format!("({rhs})")
            } else {
                rhs
            };
            format!("{} x {}", render(a), rhs)
        }
        RingExpr::Matrix(n, e) => format!("M({n},{})", render(e)),
        RingExpr::Triangular(n, e) => format!("T({n},{})", render(e)),
        RingExpr::ModJ(e) => format!("modJ({})", render(e)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok {
    Z,
    M,
    T,
    ModJ,
    X,
    LParen,
    RParen,
    Comma,
    Int(u64),
}

fn tok_name(t: Tok) -> String {
    match t {
        Tok::Z => "Z".into(),
        Tok::M => "M".into(),
        Tok::T => "T".into(),
        Tok::ModJ => "modJ".into(),
        Tok::X => "x".into(),
        Tok::LParen => "(".into(),
        Tok::RParen => ")".into(),
        Tok::Comma => ",".into(),
        Tok::Int(v) => format!("integer {v}"),
    }
}

#[derive(Clone, Copy, Debug)]
struct Lexed {
    tok: Tok,
    offset: usize,
}

fn parse_err(offset: usize, expected: &str, found: String) -> RingError {
    RingError::Parse { offset, expected: expected.to_string(), found }
}

fn lex(src: &str) -> Result<Vec<Lexed>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            let mut v: u64 = 0;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                v = v
                    .checked_mul(10)
                    .and_then(|v| v.checked_add((bytes[i] - b'0') as u64))
                    .ok_or_else(|| {
                        parse_err(start, "a smaller integer", "integer overflow".into())
                    })?;
                i += 1;
            }
            out.push(Lexed { tok: Tok::Int(v), offset: start });
            continue;
        }
        // Keyword munch: "modJ" first, then the single-letter tokens.
        if src[i..].starts_with("modJ") {
            out.push(Lexed { tok: Tok::ModJ, offset: i });
            i += 4;
            continue;
        }
        let tok = match c {
            b'Z' => Some(Tok::Z),
            b'M' => Some(Tok::M),
            b'T' => Some(Tok::T),
            b'x' => Some(Tok::X),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b',' => Some(Tok::Comma),
            _ => None,
        };
        match tok {
            Some(tok) => {
                out.push(Lexed { tok, offset: i });
                i += 1;
            }
            None => {
                return Err(parse_err(
                    i,
                    "Z, M, T, modJ, x, (, ), ,, or an integer",
                    (c as char).to_string(),
                ));
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Lexed],
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.pos).map(|l| l.tok)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|l| l.offset).unwrap_or(self.end)
    }

    fn found(&self) -> String {
        match self.peek() {
            Some(t) => tok_name(t),
            None => "end of input".into(),
        }
    }

    fn expect(&mut self, want: Tok, expected: &str) -> Result<()> {
        if self.peek() == Some(want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(parse_err(self.offset(), expected, self.found()))
        }
    }

    fn expect_int(&mut self, least: u64, expected: &str) -> Result<u64> {
        match self.peek() {
            Some(Tok::Int(v)) if v >= least => {
                self.pos += 1;
                Ok(v)
            }
            Some(Tok::Int(v)) => {
                Err(parse_err(self.offset(), expected, format!("integer {v}")))
            }
            _ => Err(parse_err(self.offset(), expected, self.found())),
        }
    }

    fn parse_expr(&mut self) -> Result<RingExpr> {
        let mut acc = self.parse_term()?;
        while self.peek() == Some(Tok::X) {
            self.pos += 1;
            let rhs = self.parse_term()?;
            acc = RingExpr::Product(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<RingExpr> {
        match self.peek() {
            Some(Tok::Z) => {
                self.pos += 1;
                let n = self.expect_int(1, "an integer at least 1")?;
                Ok(RingExpr::Zn(n))
            }
            Some(Tok::M) => {
                self.pos += 1;
                self.expect(Tok::LParen, "(")?;
                let n = self.expect_int(1, "an integer at least 1")?;
                self.expect(Tok::Comma, ",")?;
                let e = self.parse_expr()?;
                self.expect(Tok::RParen, ")")?;
                Ok(RingExpr::Matrix(n, Box::new(e)))
            }
            Some(Tok::T) => {
                self.pos += 1;
                self.expect(Tok::LParen, "(")?;
                let n = self.expect_int(1, "an integer at least 1")?;
                self.expect(Tok::Comma, ",")?;
                let e = self.parse_expr()?;
                self.expect(Tok::RParen, ")")?;
                Ok(RingExpr::Triangular(n, Box::new(e)))
            }
            Some(Tok::ModJ) => {
                self.pos += 1;
                self.expect(Tok::LParen, "(")?;
                let e = self.parse_expr()?;
                self.expect(Tok::RParen, ")")?;
                Ok(RingExpr::ModJ(Box::new(e)))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.parse_expr()?;
                self.expect(Tok::RParen, ")")?;
                Ok(e)
            }
            _ => Err(parse_err(self.offset(), "Z, M, T, modJ, or (", self.found())),
        }
    }
}

pub fn parse_ring_expr(src: &str) -> Result<RingExpr> {
    let toks = lex(src)?;
    let mut p = Parser { toks: &toks, pos: 0, end: src.len() };
    let expr = p.parse_expr()?;
    if p.pos != toks.len() {
        return Err(parse_err(p.offset(), "end of input", p.found()));
    }
    let d = expr.depth();
    if d > MAX_DEPTH {
        return Err(parse_err(
            0,
            "an expression nested at most 8 levels deep",
            format!("depth {d}"),
        ));
    }
    Ok(expr)
}

/// Build the ring an expression denotes. Cap violations are reported with
/// the offending subexpression attached.
pub fn eval_ring_expr(e: &RingExpr, caps: &Caps) -> Result<FiniteRing> {
    let here = |err: RingError| match err {
        RingError::CapExceeded { required, allowed } => {
            RingError::CapExceededAt { expr: render(e), required, allowed }
        }
        other => other,
    };
    match e {
        RingExpr::Zn(n) => make_zn(*n, caps.construction).map_err(here),
        RingExpr::Product(a, b) => {
            let left = eval_ring_expr(a, caps)?;
            let right = eval_ring_expr(b, caps)?;
            make_product(&left, &right, caps.construction).map_err(here)
        }
        RingExpr::Matrix(n, b) => {
            let base = eval_ring_expr(b, caps)?;
            make_matrix_ring(&base, *n as usize, caps.construction).map_err(here)
        }
        RingExpr::Triangular(n, b) => {
            let base = eval_ring_expr(b, caps)?;
            make_triangular_ring(&base, *n as usize, caps.construction).map_err(here)
        }
        RingExpr::ModJ(b) => {
            let base = eval_ring_expr(b, caps)?;
            let rad = structure::jacobson_radical(&base)?.to_vec();
            make_quotient(&base, &rad, true).map_err(here)
        }
    }
}

pub fn parse_and_eval(src: &str, caps: &Caps) -> Result<FiniteRing> {
    eval_ring_expr(&parse_ring_expr(src)?, caps)
}

/// Parse an element literal: a signed integer, a pair `(a,b)`, or a matrix
/// `[[a,b],[c,d]]`, nested to match the ring shape.
pub fn parse_element_literal(src: &str) -> Result<ElementLiteral> {
    let bytes = src.as_bytes();
    let mut pos = 0;
    let lit = parse_literal_at(bytes, &mut pos)?;
    skip_ws(bytes, &mut pos);
    if pos != bytes.len() {
        return Err(parse_err(pos, "end of input", (bytes[pos] as char).to_string()));
    }
    Ok(lit)
}

fn skip_ws(bytes: &[u8], pos: &mut usize) {
    while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
}

fn parse_literal_at(bytes: &[u8], pos: &mut usize) -> Result<ElementLiteral> {
    skip_ws(bytes, pos);
    match bytes.get(*pos) {
        Some(b'(') => {
            *pos += 1;
            let a = parse_literal_at(bytes, pos)?;
            expect_byte(bytes, pos, b',')?;
            let b = parse_literal_at(bytes, pos)?;
            expect_byte(bytes, pos, b')')?;
            Ok(ElementLiteral::Tuple(Box::new(a), Box::new(b)))
        }
        Some(b'[') => {
            *pos += 1;
            let mut rows = Vec::new();
            loop {
                rows.push(parse_row(bytes, pos)?);
                skip_ws(bytes, pos);
                match bytes.get(*pos) {
                    Some(b',') => *pos += 1,
                    Some(b']') => {
                        *pos += 1;
                        break;
                    }
                    _ => return Err(parse_err(*pos, ", or ]", found_byte(bytes, *pos))),
                }
            }
            Ok(ElementLiteral::Matrix(rows))
        }
        Some(c) if c.is_ascii_digit() || *c == b'-' => parse_int(bytes, pos),
        _ => Err(parse_err(*pos, "an integer, (, or [", found_byte(bytes, *pos))),
    }
}

fn parse_row(bytes: &[u8], pos: &mut usize) -> Result<Vec<ElementLiteral>> {
    skip_ws(bytes, pos);
    expect_byte(bytes, pos, b'[')?;
    let mut row = Vec::new();
    loop {
        row.push(parse_literal_at(bytes, pos)?);
        skip_ws(bytes, pos);
        match bytes.get(*pos) {
            Some(b',') => *pos += 1,
            Some(b']') => {
                *pos += 1;
                return Ok(row);
            }
            _ => return Err(parse_err(*pos, ", or ]", found_byte(bytes, *pos))),
        }
    }
}

fn parse_int(bytes: &[u8], pos: &mut usize) -> Result<ElementLiteral> {
    let start = *pos;
    let neg = bytes.get(*pos) == Some(&b'-');
    if neg {
        *pos += 1;
    }
    if !matches!(bytes.get(*pos), Some(c) if c.is_ascii_digit()) {
        return Err(parse_err(*pos, "a digit", found_byte(bytes, *pos)));
    }
    let mut v: i64 = 0;
    while let Some(c) = bytes.get(*pos) {
        if !c.is_ascii_digit() {
            break;
        }
        v = v
            .checked_mul(10)
            .and_then(|v| v.checked_add((c - b'0') as i64))
            .ok_or_else(|| parse_err(start, "a smaller integer", "integer overflow".into()))?;
        *pos += 1;
    }
    Ok(ElementLiteral::Int(if neg { -v } else { v }))
}

fn expect_byte(bytes: &[u8], pos: &mut usize, want: u8) -> Result<()> {
    skip_ws(bytes, pos);
    if bytes.get(*pos) == Some(&want) {
        *pos += 1;
        Ok(())
    } else {
        Err(parse_err(*pos, &(want as char).to_string(), found_byte(bytes, *pos)))
    }
}

fn found_byte(bytes: &[u8], pos: usize) -> String {
    match bytes.get(pos) {
        Some(&c) => (c as char).to_string(),
        None => "end of input".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(src: &str) -> RingExpr {
        parse_ring_expr(src).unwrap()
    }

    #[test]
    fn parses_terms_and_products() {
        assert_eq!(p("Z6"), RingExpr::Zn(6));
        assert_eq!(
            p("Z2xZ3"),
            RingExpr::Product(Box::new(RingExpr::Zn(2)), Box::new(RingExpr::Zn(3)))
        );
        assert_eq!(p("Z2 x Z3"), p("Z2xZ3"));
        // Left associative chain.
        assert_eq!(
            p("Z2 x Z3 x Z5"),
            RingExpr::Product(
                Box::new(RingExpr::Product(
                    Box::new(RingExpr::Zn(2)),
                    Box::new(RingExpr::Zn(3))
                )),
                Box::new(RingExpr::Zn(5))
            )
        );
        assert_eq!(
            p("Z2 x (Z3 x Z5)"),
            RingExpr::Product(
                Box::new(RingExpr::Zn(2)),
                Box::new(RingExpr::Product(
                    Box::new(RingExpr::Zn(3)),
                    Box::new(RingExpr::Zn(5))
                ))
            )
        );
        assert_eq!(p("M(2,Z3)"), RingExpr::Matrix(2, Box::new(RingExpr::Zn(3))));
        assert_eq!(
            p("T( 2 , modJ( Z9 ) )"),
            RingExpr::Triangular(2, Box::new(RingExpr::ModJ(Box::new(RingExpr::Zn(9)))))
        );
        assert_eq!(p("((Z4))"), RingExpr::Zn(4));
    }

    fn offset_of(err: RingError) -> usize {
        match err {
            RingError::Parse { offset, .. } => offset,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn parse_errors_carry_offsets() {
        assert_eq!(offset_of(parse_ring_expr("").unwrap_err()), 0);
        assert_eq!(offset_of(parse_ring_expr("Q5").unwrap_err()), 0);
        assert_eq!(offset_of(parse_ring_expr("Z0").unwrap_err()), 1);
        assert_eq!(offset_of(parse_ring_expr("Zx").unwrap_err()), 1);
        assert_eq!(offset_of(parse_ring_expr("M(2 Z3)").unwrap_err()), 4);
        assert_eq!(offset_of(parse_ring_expr("Z6)").unwrap_err()), 2);
        assert_eq!(offset_of(parse_ring_expr("M(0,Z2)").unwrap_err()), 2);
        assert_eq!(offset_of(parse_ring_expr("Z2 x").unwrap_err()), 4);
        let err = parse_ring_expr("Z2 @ Z3").unwrap_err();
        match err {
            RingError::Parse { offset, found, .. } => {
                assert_eq!(offset, 3);
                assert_eq!(found, "@");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn depth_guard() {
        let deep = "T(2,T(2,T(2,T(2,T(2,T(2,T(2,Z2)))))))";
        assert_eq!(p(deep).depth(), 8);
        let too_deep = "T(2,T(2,T(2,T(2,T(2,T(2,T(2,T(2,Z2))))))))";
        assert!(parse_ring_expr(too_deep).is_err());
    }

    #[test]
    fn render_is_canonical() {
        for src in ["Z6", "Z2 x Z3", "M(2,Z3)", "T(2,modJ(Z9))", "Z2 x (Z3 x Z5)"] {
            let e = p(src);
            assert_eq!(p(&render(&e)), e, "{src}");
        }
        assert_eq!(render(&p("Z2xZ3xZ5")), "Z2 x Z3 x Z5");
        assert_eq!(render(&p("Z2x(Z3xZ5)")), "Z2 x (Z3 x Z5)");
    }

    #[test]
    fn eval_constructs_rings() {
        let caps = Caps::default();
        let r = parse_and_eval("Z2 x Z3", &caps).unwrap();
        assert_eq!(r.order(), 6);
        assert_eq!(r.descriptor(), "Z2 x Z3");
        let q = parse_and_eval("modJ(Z9)", &caps).unwrap();
        assert_eq!(q.order(), 3);
        assert_eq!(q.descriptor(), "modJ(Z9)");
        let m = parse_and_eval("M(2,Z4)", &caps).unwrap();
        assert_eq!(m.order(), 256);
    }

    #[test]
    fn cap_errors_name_the_subexpression() {
        let caps = Caps::default();
        match parse_and_eval("Z2 x M(3,Z7)", &caps).unwrap_err() {
            RingError::CapExceededAt { expr, required, allowed } => {
                assert_eq!(expr, "M(3,Z7)");
                assert_eq!(required, 40_353_607);
                assert_eq!(allowed, 65_536);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn literal_forms() {
        assert_eq!(parse_element_literal("5").unwrap(), ElementLiteral::Int(5));
        assert_eq!(parse_element_literal(" -2 ").unwrap(), ElementLiteral::Int(-2));
        assert_eq!(
            parse_element_literal("(1,2)").unwrap(),
            ElementLiteral::Tuple(
                Box::new(ElementLiteral::Int(1)),
                Box::new(ElementLiteral::Int(2))
            )
        );
        let m = parse_element_literal("[[0,1],[2,3]]").unwrap();
        assert_eq!(m.to_string(), "[[0,1],[2,3]]");
        let nested = parse_element_literal("( 1 , (2 , 3) )").unwrap();
        assert_eq!(nested.to_string(), "(1,(2,3))");
        assert!(parse_element_literal("[1,2").is_err());
        assert!(parse_element_literal("").is_err());
        assert!(parse_element_literal("(1)").is_err());
        assert!(parse_element_literal("5 junk").is_err());
    }

    fn expr_strategy() -> impl Strategy<Value = RingExpr> {
        let leaf = (1u64..12).prop_map(RingExpr::Zn);
        leaf.prop_recursive(3, 16, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| RingExpr::Product(
                    Box::new(a),
                    Box::new(b)
                )),
                (1u64..3, inner.clone()).prop_map(|(n, e)| RingExpr::Matrix(n, Box::new(e))),
                (1u64..3, inner.clone()).prop_map(|(n, e)| RingExpr::Triangular(n, Box::new(e))),
                inner.prop_map(|e| RingExpr::ModJ(Box::new(e))),
            ]
        })
    }

    proptest! {
        #[test]
        fn rendered_expressions_parse_back(e in expr_strategy()) {
            prop_assert_eq!(p(&render(&e)), e);
        }

        #[test]
        fn random_strings_never_panic(s in "[ZMTmodJx(),0-9 ]{0,24}") {
            let _ = parse_ring_expr(&s);
        }
    }
}
