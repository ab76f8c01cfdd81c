use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub enum UnaryOp {
    /// `n(x)`, the negation `0/x` (or the basic-algebra negation).
    Neg,
    /// `t(x)`, the negation `x -> 0`.
    Tilde,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub enum BinaryOp {
    /// `+`
    Oplus,
    /// `*`
    Mult,
    /// `/`, the left residuum `z/y`.
    RightDiv,
    /// `\`, the right residuum `x\z` (partial in general).
    LeftDiv,
    /// `->`
    Imp,
    /// `\/`
    Join,
    /// `/\`
    Meet,
}

impl UnaryOp {
    pub fn name(self) -> &'static str {
        match self {
            UnaryOp::Neg => "n",
            UnaryOp::Tilde => "t",
        }
    }
}

impl BinaryOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinaryOp::Oplus => "+",
            BinaryOp::Mult => "*",
            BinaryOp::RightDiv => "/",
            BinaryOp::LeftDiv => "\\",
            BinaryOp::Imp => "->",
            BinaryOp::Join => "\\/",
            BinaryOp::Meet => "/\\",
        }
    }

    /// Binding strength; larger binds tighter.
    pub(crate) fn precedence(self) -> u8 {
        match self {
            BinaryOp::Imp => 1,
            BinaryOp::Join | BinaryOp::Meet => 2,
            BinaryOp::Oplus => 3,
            BinaryOp::Mult | BinaryOp::RightDiv | BinaryOp::LeftDiv => 4,
        }
    }

    pub(crate) fn right_assoc(self) -> bool {
        self == BinaryOp::Imp
    }
}

/// An operation symbol, as reported in signature errors.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Op {
    Unary(UnaryOp),
    Binary(BinaryOp),
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Op::Unary(u) => write!(f, "{}(..)", u.name()),
            Op::Binary(b) => f.write_str(b.symbol()),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub enum Term {
    Var(String),
    Zero,
    One,
    Unary(UnaryOp, Box<Term>),
    Binary(BinaryOp, Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn unary(op: UnaryOp, t: Term) -> Term {
        Term::Unary(op, Box::new(t))
    }

    pub fn binary(op: BinaryOp, l: Term, r: Term) -> Term {
        Term::Binary(op, Box::new(l), Box::new(r))
    }

    fn collect_vars<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Term::Var(v) => {
                out.insert(v);
            }
            Term::Zero | Term::One => {}
            Term::Unary(_, t) => t.collect_vars(out),
            Term::Binary(_, l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    fn collect_ops(&self, out: &mut Vec<Op>) {
        match self {
            Term::Var(_) | Term::Zero | Term::One => {}
            Term::Unary(op, t) => {
                out.push(Op::Unary(*op));
                t.collect_ops(out);
            }
            Term::Binary(op, l, r) => {
                out.push(Op::Binary(*op));
                l.collect_ops(out);
                r.collect_ops(out);
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Zero => f.write_str("0"),
            Term::One => f.write_str("1"),
            Term::Unary(op, t) => write!(f, "{}({})", op.name(), t),
            Term::Binary(op, l, r) => {
                let prec = op.precedence();
                let wrap = |t: &Term, is_right: bool| match t {
                    Term::Binary(c, ..) => {
                        c.precedence() < prec
                            || (c.precedence() == prec && (is_right != op.right_assoc()))
                    }
                    _ => false,
                };
                let write_side = |f: &mut fmt::Formatter<'_>, t: &Term, is_right| {
                    if wrap(t, is_right) {
                        write!(f, "({t})")
                    } else {
                        write!(f, "{t}")
                    }
                };
                write_side(f, l, false)?;
                if matches!(op, BinaryOp::Mult | BinaryOp::RightDiv | BinaryOp::LeftDiv) {
                    f.write_str(op.symbol())?;
                } else {
                    write!(f, " {} ", op.symbol())?;
                }
                write_side(f, r, true)
            }
        }
    }
}

/// A universally quantified statement over all variables it mentions.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub enum Formula {
    Eq(Term, Term),
    Le(Term, Term),
    And(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    /// Variables in ascending name order; this is the order of assignments
    /// and witnesses.
    pub fn variables(&self) -> Vec<String> {
        let mut set = BTreeSet::new();
        self.visit_terms(&mut |t| t.collect_vars(&mut set));
        set.into_iter().map(str::to_string).collect()
    }

    /// Every operation symbol used, in order of first occurrence.
    pub fn operations(&self) -> Vec<Op> {
        let mut ops = Vec::new();
        self.visit_terms(&mut |t| t.collect_ops(&mut ops));
        let mut seen = Vec::new();
        for op in ops {
            if !seen.contains(&op) {
                seen.push(op);
            }
        }
        seen
    }

    fn visit_terms<'a>(&'a self, f: &mut impl FnMut(&'a Term)) {
        match self {
            Formula::Eq(l, r) | Formula::Le(l, r) => {
                f(l);
                f(r);
            }
            Formula::And(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.visit_terms(f);
                b.visit_terms(f);
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Connective operands are always parenthesised, which the grammar requires
        // for atoms and keeps nested connectives unambiguous.
        let side = |f: &mut fmt::Formatter<'_>, g: &Formula| write!(f, "({g})");
        match self {
            Formula::Eq(l, r) => write!(f, "{l} = {r}"),
            Formula::Le(l, r) => write!(f, "{l} <= {r}"),
            Formula::And(a, b) => {
                side(f, a)?;
                f.write_str(" & ")?;
                side(f, b)
            }
            Formula::Implies(a, b) => {
                side(f, a)?;
                f.write_str(" => ")?;
                side(f, b)
            }
            Formula::Iff(a, b) => {
                side(f, a)?;
                f.write_str(" <=> ")?;
                side(f, b)
            }
        }
    }
}
