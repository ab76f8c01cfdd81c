//! Recursive-descent parser for terms and formulas.
//!
//! ```text
//! formula := imp ('<=>' imp)?
//! imp     := conj ('=>' imp)?
//! conj    := clause ('&' clause)*
//! clause  := '(' formula ')' | atom
//! atom    := term ('=' | '<=') term
//! term    := lat ('->' term)?
//! lat     := sum (('\/' | '/\') sum)*
//! sum     := prod ('+' prod)*
//! prod    := unary (('*' | '/' | '\') unary)*
//! unary   := ('n' | 't') '(' term ')' | var | '0' | '1' | '(' term ')'
//! ```
//!
//! A relational atom that is an operand of a connective must be wrapped in
//! parentheses, so `x*y <= z <=> x <= z/y` is rejected.

use super::syntax::{BinaryOp, Formula, Term, UnaryOp};
use super::LawError;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(String),
    LParen,
    RParen,
    Bin(BinaryOp),
    Eq,
    Le,
    And,
    Implies,
    Iff,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) | Tok::Num(s) => format!("`{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Bin(op) => format!("`{}`", op.symbol()),
            Tok::Eq => "`=`".into(),
            Tok::Le => "`<=`".into(),
            Tok::And => "`&`".into(),
            Tok::Implies => "`=>`".into(),
            Tok::Iff => "`<=>`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, LawError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let next = bytes.get(i + 1).copied();
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'+' => Tok::Bin(BinaryOp::Oplus),
            b'*' => Tok::Bin(BinaryOp::Mult),
            b'&' => Tok::And,
            b'/' if next == Some(b'\\') => {
                i += 1;
                Tok::Bin(BinaryOp::Meet)
            }
            b'/' => Tok::Bin(BinaryOp::RightDiv),
            b'\\' if next == Some(b'/') => {
                i += 1;
                Tok::Bin(BinaryOp::Join)
            }
            b'\\' => Tok::Bin(BinaryOp::LeftDiv),
            b'-' if next == Some(b'>') => {
                i += 1;
                Tok::Bin(BinaryOp::Imp)
            }
            b'=' if next == Some(b'>') => {
                i += 1;
                Tok::Implies
            }
            b'=' => Tok::Eq,
            b'<' if next == Some(b'=') => {
                if bytes.get(i + 2) == Some(&b'>') {
                    i += 2;
                    Tok::Iff
                } else {
                    i += 1;
                    Tok::Le
                }
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i + 1 < bytes.len() && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_') {
                    i += 1;
                }
                Tok::Ident(text[start..=i].to_string())
            }
            c if c.is_ascii_digit() => {
                while i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                }
                Tok::Num(text[start..=i].to_string())
            }
            _ => {
                let found = text[start..].chars().next().unwrap_or('?').to_string();
                return Err(LawError::Syntax {
                    offset: start,
                    expected: vec!["a term, relation or connective".into()],
                    found,
                });
            }
        };
        i += 1;
        out.push((start, tok));
    }
    out.push((text.len(), Tok::Eof));
    Ok(out)
}

fn is_variable(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase()) && chars.all(|c| c.is_ascii_digit())
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &[&str]) -> Result<T, LawError> {
        Err(LawError::Syntax {
            offset: self.offset(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), LawError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(&[what])
        }
    }

    /// Returns the formula and whether it is a bare (unparenthesised) atom.
    fn formula(&mut self) -> Result<(Formula, bool), LawError> {
        let lhs = self.implication()?;
        if *self.peek() == Tok::Iff {
            let at = self.offset();
            self.bump();
            let rhs_at = self.offset();
            let rhs = self.implication()?;
            let l = Self::operand(lhs, at)?;
            let r = Self::operand(rhs, rhs_at)?;
            return Ok((Formula::Iff(Box::new(l), Box::new(r)), false));
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<(Formula, bool), LawError> {
        let lhs = self.conjunction()?;
        if *self.peek() == Tok::Implies {
            let at = self.offset();
            self.bump();
            let rhs_at = self.offset();
            let rhs = self.implication()?;
            let l = Self::operand(lhs, at)?;
            let r = Self::operand(rhs, rhs_at)?;
            return Ok((Formula::Implies(Box::new(l), Box::new(r)), false));
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<(Formula, bool), LawError> {
        let mut acc = self.clause()?;
        while *self.peek() == Tok::And {
            let at = self.offset();
            self.bump();
            let rhs_at = self.offset();
            let rhs = self.clause()?;
            let l = Self::operand(acc, at)?;
            let r = Self::operand(rhs, rhs_at)?;
            acc = (Formula::And(Box::new(l), Box::new(r)), false);
        }
        Ok(acc)
    }

    fn operand((f, bare): (Formula, bool), at: usize) -> Result<Formula, LawError> {
        if bare {
            Err(LawError::Syntax {
                offset: at,
                expected: vec!["a parenthesised relational atom around the connective".into()],
                found: "a bare relational atom".into(),
            })
        } else {
            Ok(f)
        }
    }

    fn clause(&mut self) -> Result<(Formula, bool), LawError> {
        if *self.peek() == Tok::LParen {
            let save = self.pos;
            self.bump();
            let attempt = self
                .formula()
                .and_then(|(f, _)| self.expect(Tok::RParen, "`)`").map(|_| f));
            match attempt {
                Ok(f) => return Ok((f, false)),
                Err(first) => {
                    let first_at = error_offset(&first);
                    self.pos = save;
                    return match self.atom() {
                        Ok(f) => Ok((f, true)),
                        Err(second) if error_offset(&second) >= first_at => Err(second),
                        Err(_) => Err(first),
                    };
                }
            }
        }
        self.atom().map(|f| (f, true))
    }

    fn atom(&mut self) -> Result<Formula, LawError> {
        let lhs = self.term()?;
        match self.peek() {
            Tok::Eq => {
                self.bump();
                Ok(Formula::Eq(lhs, self.term()?))
            }
            Tok::Le => {
                self.bump();
                Ok(Formula::Le(lhs, self.term()?))
            }
            _ => self.error(&["`=`", "`<=`", "a binary operator"]),
        }
    }

    fn term(&mut self) -> Result<Term, LawError> {
        let lhs = self.lattice_level()?;
        if *self.peek() == Tok::Bin(BinaryOp::Imp) {
            self.bump();
            let rhs = self.term()?;
            return Ok(Term::binary(BinaryOp::Imp, lhs, rhs));
        }
        Ok(lhs)
    }

    fn left_assoc(
        &mut self,
        ops: &[BinaryOp],
        next: fn(&mut Self) -> Result<Term, LawError>,
    ) -> Result<Term, LawError> {
        let mut acc = next(self)?;
        while let Tok::Bin(op) = *self.peek() {
            if !ops.contains(&op) {
                break;
            }
            self.bump();
            let rhs = next(self)?;
            acc = Term::binary(op, acc, rhs);
        }
        Ok(acc)
    }

    fn lattice_level(&mut self) -> Result<Term, LawError> {
        self.left_assoc(&[BinaryOp::Join, BinaryOp::Meet], Self::sum)
    }

    fn sum(&mut self) -> Result<Term, LawError> {
        self.left_assoc(&[BinaryOp::Oplus], Self::product)
    }

    fn product(&mut self) -> Result<Term, LawError> {
        self.left_assoc(
            &[BinaryOp::Mult, BinaryOp::RightDiv, BinaryOp::LeftDiv],
            Self::unary,
        )
    }

    fn unary(&mut self) -> Result<Term, LawError> {
        let at = self.offset();
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            Tok::Num(s) => {
                self.bump();
                match s.as_str() {
                    "0" => Ok(Term::Zero),
                    "1" => Ok(Term::One),
                    _ => Err(LawError::UnboundName { offset: at, name: s }),
                }
            }
            Tok::Ident(name) => {
                self.bump();
                if *self.peek() == Tok::LParen {
                    let op = match name.as_str() {
                        "n" => UnaryOp::Neg,
                        "t" => UnaryOp::Tilde,
                        _ => return Err(LawError::UnknownOperator { offset: at, name }),
                    };
                    self.bump();
                    let t = self.term()?;
                    self.expect(Tok::RParen, "`)`")?;
                    Ok(Term::unary(op, t))
                } else if is_variable(&name) {
                    Ok(Term::Var(name))
                } else {
                    Err(LawError::UnboundName { offset: at, name })
                }
            }
            _ => self.error(&["a variable", "`0`", "`1`", "`n(`", "`t(`", "`(`"]),
        }
    }
}

fn error_offset(e: &LawError) -> usize {
    match e {
        LawError::Syntax { offset, .. }
        | LawError::UnknownOperator { offset, .. }
        | LawError::UnboundName { offset, .. } => *offset,
        _ => 0,
    }
}

/// Parses a formula in the concrete syntax described in the module docs.
pub fn parse_formula(text: &str) -> Result<Formula, LawError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
    };
    let (f, _) = p.formula()?;
    if *p.peek() != Tok::Eof {
        return p.error(&["`&`", "`=>`", "`<=>`", "end of input"]);
    }
    Ok(f)
}

/// Parses a single term.
pub fn parse_term(text: &str) -> Result<Term, LawError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
    };
    let t = p.term()?;
    if *p.peek() != Tok::Eof {
        return p.error(&["a binary operator", "end of input"]);
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Term {
        Term::var(s)
    }

    #[test]
    fn divisibility() {
        let f = parse_formula("(x/y)*y = (y/x)*x").unwrap();
        let side = |a, b| {
            Term::binary(
                BinaryOp::Mult,
                Term::binary(BinaryOp::RightDiv, v(a), v(b)),
                v(b),
            )
        };
        assert_eq!(f, Formula::Eq(side("x", "y"), side("y", "x")));
        assert_eq!(f.variables(), vec!["x", "y"]);
    }

    #[test]
    fn trivial_equation() {
        assert_eq!(parse_formula("x = x").unwrap(), Formula::Eq(v("x"), v("x")));
    }

    #[test]
    fn chained_relation_is_rejected() {
        let err = parse_formula("x*y <= z <=> x <= z/y").unwrap_err();
        assert!(matches!(err, LawError::Syntax { offset: 9, .. }), "{err:?}");
        assert!(parse_formula("(x*y <= z) <=> (x <= z/y)").is_ok());
        assert!(parse_formula("x <= y <= z").is_err());
    }

    #[test]
    fn operator_tokens() {
        let t = parse_term(r"x \/ y /\ z -> x\y + t(0)").unwrap();
        let expected = Term::binary(
            BinaryOp::Imp,
            Term::binary(
                BinaryOp::Meet,
                Term::binary(BinaryOp::Join, v("x"), v("y")),
                v("z"),
            ),
            Term::binary(
                BinaryOp::Oplus,
                Term::binary(BinaryOp::LeftDiv, v("x"), v("y")),
                Term::unary(UnaryOp::Tilde, Term::Zero),
            ),
        );
        assert_eq!(t, expected);
        // `->` associates to the right.
        let t = parse_term("x -> y -> z").unwrap();
        assert_eq!(
            t,
            Term::binary(BinaryOp::Imp, v("x"), Term::binary(BinaryOp::Imp, v("y"), v("z")))
        );
    }

    #[test]
    fn name_errors() {
        assert_eq!(
            parse_formula("f(x) = x").unwrap_err(),
            LawError::UnknownOperator { offset: 0, name: "f".into() }
        );
        assert_eq!(
            parse_formula("x = top").unwrap_err(),
            LawError::UnboundName { offset: 4, name: "top".into() }
        );
        assert_eq!(
            parse_formula("x = 2").unwrap_err(),
            LawError::UnboundName { offset: 4, name: "2".into() }
        );
    }

    #[test]
    fn syntax_error_reports_offset_and_expectations() {
        match parse_formula("x + = y").unwrap_err() {
            LawError::Syntax { offset, expected, found } => {
                assert_eq!(offset, 4);
                assert!(expected.iter().any(|e| e.contains("variable")));
                assert_eq!(found, "`=`");
            }
            e => panic!("{e:?}"),
        }
        assert!(matches!(
            parse_formula("(x = y").unwrap_err(),
            LawError::Syntax { offset: 6, .. }
        ));
    }

    #[test]
    fn connectives() {
        let f = parse_formula("(x <= y) => (y + x = y)").unwrap();
        assert!(matches!(f, Formula::Implies(..)));
        let f = parse_formula("(x = x) & (y = y) & (z = z)").unwrap();
        match f {
            Formula::And(l, _) => assert!(matches!(*l, Formula::And(..))),
            _ => panic!(),
        }
        let f = parse_formula("((x <= y) & (y <= x)) => (x = y)").unwrap();
        assert_eq!(f.variables(), vec!["x", "y"]);
        // A parenthesised term on the left of a bare atom still parses.
        assert!(parse_formula("(x) = (y)").is_ok());
    }
}
