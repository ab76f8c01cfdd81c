//! Exhaustive evaluation of formulas over finite structures.

use super::syntax::{BinaryOp, Formula, Op, Term, UnaryOp};
use super::LawError;
use crate::table::Elem;
use std::fmt;

/// A finite structure that terms can be evaluated in.
///
/// Operations return `None` where a value is not (yet) defined; complete
/// models return `Some` for every operation they support.
pub trait Interpretation {
    fn size(&self) -> usize;
    fn leq(&self, x: Elem, y: Elem) -> bool;
    fn supports(&self, op: Op) -> bool;
    fn unary(&self, op: UnaryOp, x: Elem) -> Option<Elem>;
    fn binary(&self, op: BinaryOp, x: Elem, y: Elem) -> Option<Elem>;

    fn zero(&self) -> Elem {
        0
    }

    fn one(&self) -> Elem {
        self.size() - 1
    }
}

#[derive(Clone, Debug)]
enum CTerm {
    Var(usize),
    Zero,
    One,
    Unary(UnaryOp, Box<CTerm>),
    Binary(BinaryOp, Box<CTerm>, Box<CTerm>),
}

#[derive(Clone, Debug)]
enum CFormula {
    Eq(CTerm, CTerm),
    Le(CTerm, CTerm),
    And(Box<CFormula>, Box<CFormula>),
    Implies(Box<CFormula>, Box<CFormula>),
    Iff(Box<CFormula>, Box<CFormula>),
}

/// A formula with its variables resolved to assignment positions.
#[derive(Clone, Debug)]
pub struct CompiledFormula {
    vars: Vec<String>,
    body: CFormula,
    ops: Vec<Op>,
}

fn compile_term(t: &Term, vars: &[String]) -> CTerm {
    match t {
        Term::Var(v) => CTerm::Var(vars.iter().position(|w| w == v).expect("variable collected")),
        Term::Zero => CTerm::Zero,
        Term::One => CTerm::One,
        Term::Unary(op, a) => CTerm::Unary(*op, Box::new(compile_term(a, vars))),
        Term::Binary(op, a, b) => CTerm::Binary(
            *op,
            Box::new(compile_term(a, vars)),
            Box::new(compile_term(b, vars)),
        ),
    }
}

fn compile_formula(f: &Formula, vars: &[String]) -> CFormula {
    let b = |g: &Formula| Box::new(compile_formula(g, vars));
    match f {
        Formula::Eq(l, r) => CFormula::Eq(compile_term(l, vars), compile_term(r, vars)),
        Formula::Le(l, r) => CFormula::Le(compile_term(l, vars), compile_term(r, vars)),
        Formula::And(l, r) => CFormula::And(b(l), b(r)),
        Formula::Implies(l, r) => CFormula::Implies(b(l), b(r)),
        Formula::Iff(l, r) => CFormula::Iff(b(l), b(r)),
    }
}

impl CompiledFormula {
    pub fn new(f: &Formula) -> Self {
        let vars = f.variables();
        CompiledFormula {
            body: compile_formula(f, &vars),
            ops: f.operations(),
            vars,
        }
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    /// Fails with `SignatureMismatch` if some operation is not interpreted in `m`.
    pub fn check_signature(&self, m: &dyn Interpretation) -> Result<(), LawError> {
        match self.ops.iter().find(|&&op| !m.supports(op)) {
            Some(op) => Err(LawError::SignatureMismatch(op.to_string())),
            None => Ok(()),
        }
    }

    /// Three-valued evaluation: `None` when an undefined cell is needed.
    pub fn eval(&self, m: &dyn Interpretation, assignment: &[Elem]) -> Option<bool> {
        eval_formula(&self.body, m, assignment)
    }

    /// Visits assignments in lexicographic order (first variable most
    /// significant) and returns the first one where the formula is definitely
    /// false.
    pub fn first_violation(&self, m: &dyn Interpretation) -> Option<Vec<Elem>> {
        let mut found = None;
        self.for_each_assignment(m.size(), |a| {
            if self.eval(m, a) == Some(false) {
                found = Some(a.to_vec());
                false
            } else {
                true
            }
        });
        found
    }

    pub fn all_violations(&self, m: &dyn Interpretation) -> Vec<Vec<Elem>> {
        let mut out = Vec::new();
        self.for_each_assignment(m.size(), |a| {
            if self.eval(m, a) == Some(false) {
                out.push(a.to_vec());
            }
            true
        });
        out
    }

    fn for_each_assignment(&self, n: usize, mut visit: impl FnMut(&[Elem]) -> bool) {
        let k = self.vars.len();
        let mut a = vec![0; k];
        if n == 0 {
            return;
        }
        loop {
            if !visit(&a) {
                return;
            }
            let mut i = k;
            loop {
                if i == 0 {
                    return;
                }
                i -= 1;
                a[i] += 1;
                if a[i] < n {
                    break;
                }
                a[i] = 0;
            }
        }
    }
}

fn eval_term(t: &CTerm, m: &dyn Interpretation, a: &[Elem]) -> Option<Elem> {
    match t {
        CTerm::Var(i) => Some(a[*i]),
        CTerm::Zero => Some(m.zero()),
        CTerm::One => Some(m.one()),
        CTerm::Unary(op, x) => m.unary(*op, eval_term(x, m, a)?),
        CTerm::Binary(op, x, y) => {
            let x = eval_term(x, m, a)?;
            let y = eval_term(y, m, a)?;
            m.binary(*op, x, y)
        }
    }
}

fn eval_formula(f: &CFormula, m: &dyn Interpretation, a: &[Elem]) -> Option<bool> {
    match f {
        CFormula::Eq(l, r) => Some(eval_term(l, m, a)? == eval_term(r, m, a)?),
        CFormula::Le(l, r) => Some(m.leq(eval_term(l, m, a)?, eval_term(r, m, a)?)),
        CFormula::And(l, r) => match eval_formula(l, m, a) {
            Some(false) => Some(false),
            lv => match (lv, eval_formula(r, m, a)) {
                (_, Some(false)) => Some(false),
                (Some(true), Some(true)) => Some(true),
                _ => None,
            },
        },
        CFormula::Implies(l, r) => match eval_formula(l, m, a) {
            Some(false) => Some(true),
            lv => match (lv, eval_formula(r, m, a)) {
                (_, Some(true)) => Some(true),
                (Some(true), Some(false)) => Some(false),
                _ => None,
            },
        },
        CFormula::Iff(l, r) => Some(eval_formula(l, m, a)? == eval_formula(r, m, a)?),
    }
}

/// Variable assignment, with names in formula variable order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Assignment {
    pub vars: Vec<String>,
    pub values: Vec<Elem>,
}

impl Assignment {
    pub fn get(&self, var: &str) -> Option<Elem> {
        self.vars.iter().position(|v| v == var).map(|i| self.values[i])
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (v, x)) in self.vars.iter().zip(&self.values).enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}={x}")?;
        }
        Ok(())
    }
}

/// Outcome of checking a universally quantified formula.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Verdict {
    pub holds: bool,
    /// Lexicographically first failing assignment; present iff `!holds`.
    pub witness: Option<Assignment>,
}

/// Evaluates `f` at every assignment over the universe of `m`.
pub fn check_formula(f: &Formula, m: &dyn Interpretation) -> Result<Verdict, LawError> {
    let c = CompiledFormula::new(f);
    c.check_signature(m)?;
    let witness = c.first_violation(m).map(|values| Assignment {
        vars: c.vars.clone(),
        values,
    });
    Ok(Verdict {
        holds: witness.is_none(),
        witness,
    })
}

/// Every failing assignment, in lexicographic order.
pub fn failing_assignments(f: &Formula, m: &dyn Interpretation) -> Result<Vec<Assignment>, LawError> {
    let c = CompiledFormula::new(f);
    c.check_signature(m)?;
    Ok(c
        .all_violations(m)
        .into_iter()
        .map(|values| Assignment {
            vars: c.vars.clone(),
            values,
        })
        .collect())
}

/// Evaluates `f` at one assignment given as `(variable, value)` pairs.
pub fn eval_at(f: &Formula, m: &dyn Interpretation, assignment: &[(&str, Elem)]) -> Result<bool, LawError> {
    let c = CompiledFormula::new(f);
    c.check_signature(m)?;
    let values: Vec<Elem> = c
        .vars
        .iter()
        .map(|v| {
            assignment
                .iter()
                .find(|(name, _)| name == v)
                .map(|&(_, x)| x)
                .ok_or_else(|| LawError::UnboundName { offset: 0, name: v.clone() })
        })
        .collect::<Result<_, _>>()?;
    if values.iter().any(|&x| x >= m.size()) {
        return Err(LawError::ElementOutOfRange);
    }
    Ok(c.eval(m, &values).expect("complete model"))
}

/// Evaluates a term at an assignment.
pub fn eval_term_at(t: &Term, m: &dyn Interpretation, assignment: &[(&str, Elem)]) -> Result<Elem, LawError> {
    let f = Formula::Eq(t.clone(), t.clone());
    let c = CompiledFormula::new(&f);
    c.check_signature(m)?;
    let vars = c.vars.clone();
    let lookup: Vec<Elem> = vars
        .iter()
        .map(|v| {
            assignment
                .iter()
                .find(|(n, _)| n == v)
                .map(|&(_, x)| x)
                .ok_or_else(|| LawError::UnboundName { offset: 0, name: v.clone() })
        })
        .collect::<Result<_, _>>()?;
    let CFormula::Eq(ct, _) = &c.body else { unreachable!() };
    eval_term(ct, m, &lookup).ok_or(LawError::ElementOutOfRange)
}
