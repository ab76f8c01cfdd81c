//! Basic algebras, left-residuated po-groupoids and contrapositionally
//! residuated po-groupoids as validated finite models.

use crate::laws::{BinaryOp, Interpretation, Op, UnaryOp};
use crate::order::{meets_joins, BoundedLattice, FinitePoset, OrderError};
use crate::table::{BinTable, Elem};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("table `{table}` does not match the universe size {n}")]
    TableShape { table: &'static str, n: usize },
    #[error("axiom ({axiom}) fails at {assignment:?}")]
    AxiomFailed { axiom: u8, assignment: Vec<Elem> },
    #[error("n(0) = {top} must be the last element")]
    TopNotLast { top: Elem },
    #[error("1 is not an identity at {0}")]
    IdentityFailed(Elem),
    #[error("residuation fails at x={0}, y={1}, z={2}")]
    ResiduationFailed(Elem, Elem, Elem),
    #[error("{z}/{y} does not exist: {{x : x*{y} <= {z}}} has no greatest element")]
    NoResiduum { z: Elem, y: Elem },
    #[error("1 -> {0} differs from {0}")]
    ConditionAFailed(Elem),
    #[error("contrapositional residuation fails at x={0}, y={1}, z={2}")]
    ConditionBFailed(Elem, Elem, Elem),
    #[error(transparent)]
    Order(#[from] OrderError),
}

fn check_bin(t: &BinTable, n: usize, table: &'static str) -> Result<(), AlgebraError> {
    if t.size() != n || t.cells().iter().any(|&v| v >= n) {
        Err(AlgebraError::TableShape { table, n })
    } else {
        Ok(())
    }
}

fn check_un(t: &[Elem], n: usize, table: &'static str) -> Result<(), AlgebraError> {
    if t.len() != n || t.iter().any(|&v| v >= n) {
        Err(AlgebraError::TableShape { table, n })
    } else {
        Ok(())
    }
}

/// Greatest `x` with `x * y <= z`, if the set has a greatest element.
fn residual_of_column(p: &FinitePoset, mult: &BinTable, z: Elem, y: Elem) -> Option<Elem> {
    let set: Vec<Elem> = (0..p.size()).filter(|&x| p.leq(mult.get(x, y), z)).collect();
    p.max_of(&set)
}

/// Greatest `y` with `x * y <= z`, if the set has a greatest element.
fn residual_of_row(p: &FinitePoset, mult: &BinTable, x: Elem, z: Elem) -> Option<Elem> {
    let set: Vec<Elem> = (0..p.size()).filter(|&y| p.leq(mult.get(x, y), z)).collect();
    p.max_of(&set)
}

fn right_residuum_table(p: &FinitePoset, mult: &BinTable) -> Option<BinTable> {
    let n = p.size();
    let mut t = BinTable::from_fn(n, |_, _| 0);
    for x in 0..n {
        for z in 0..n {
            t.set(x, z, residual_of_row(p, mult, x, z)?);
        }
    }
    Some(t)
}

/// Derives `z/y` as the greatest element of `{x : x*y <= z}`, scanning `(z, y)`
/// in lexicographic order.
pub fn residuum_from_mult(p: &FinitePoset, mult: &BinTable) -> Result<BinTable, AlgebraError> {
    let n = p.size();
    check_bin(mult, n, "mult")?;
    let mut res = BinTable::from_fn(n, |_, _| 0);
    for z in 0..n {
        for y in 0..n {
            let r = residual_of_column(p, mult, z, y).ok_or(AlgebraError::NoResiduum { z, y })?;
            res.set(z, y, r);
        }
    }
    Ok(res)
}

// ---------------------------------------------------------------------------
// Basic algebras

/// A finite basic algebra `(A, +, n, 0)` with `1 = n(0)`.
///
/// The induced order is `x <= y` iff `n(x) + y = 1`; multiplication, division
/// and implication are the term operations `x*y = n(n(x) + n(y))`,
/// `x/y = x + n(y)` and `x -> y = n(x) + y`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BasicAlgebraModel {
    oplus: BinTable,
    neg: Vec<Elem>,
    lattice: BoundedLattice,
    mult: BinTable,
    div: BinTable,
    imp: BinTable,
    right_res: Option<BinTable>,
}

/// Checks axioms (1)-(4) in order, each over assignments in lexicographic order.
pub fn validate_basic_algebra(oplus: BinTable, neg: Vec<Elem>) -> Result<BasicAlgebraModel, AlgebraError> {
    let n = neg.len();
    if n == 0 {
        return Err(OrderError::Empty.into());
    }
    check_un(&neg, n, "neg")?;
    check_bin(&oplus, n, "oplus")?;
    let p = |x, y| oplus.get(x, y);
    let ng = |x: Elem| neg[x];
    let one = ng(0);
    let fail = |axiom, assignment: Vec<Elem>| Err(AlgebraError::AxiomFailed { axiom, assignment });

    for x in 0..n {
        if p(x, 0) != x {
            return fail(1, vec![x]);
        }
    }
    for x in 0..n {
        if ng(ng(x)) != x {
            return fail(2, vec![x]);
        }
    }
    for x in 0..n {
        for y in 0..n {
            if p(ng(p(ng(x), y)), y) != p(ng(p(ng(y), x)), x) {
                return fail(3, vec![x, y]);
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            let inner = ng(p(ng(p(x, y)), y));
            for z in 0..n {
                if p(ng(p(inner, z)), p(x, z)) != one {
                    return fail(4, vec![x, y, z]);
                }
            }
        }
    }
    if one != n - 1 {
        return Err(AlgebraError::TopNotLast { top: one });
    }
    let rows: Vec<Vec<bool>> = (0..n)
        .map(|x| (0..n).map(|y| p(ng(x), y) == one).collect())
        .collect();
    let poset = FinitePoset::new(&rows).expect("the induced order of a basic algebra is a bounded poset");
    let lattice = meets_joins(&poset).expect("the induced order of a basic algebra is a lattice");
    let mult = BinTable::from_fn(n, |x, y| ng(p(ng(x), ng(y))));
    let div = BinTable::from_fn(n, |x, y| p(x, ng(y)));
    let imp = BinTable::from_fn(n, |x, y| p(ng(x), y));
    let right_res = right_residuum_table(&poset, &mult);
    Ok(BasicAlgebraModel {
        oplus,
        neg,
        lattice,
        mult,
        div,
        imp,
        right_res,
    })
}

impl BasicAlgebraModel {
    pub fn new(oplus: BinTable, neg: Vec<Elem>) -> Result<Self, AlgebraError> {
        validate_basic_algebra(oplus, neg)
    }

    pub fn size(&self) -> usize {
        self.neg.len()
    }

    #[inline]
    pub fn oplus(&self, x: Elem, y: Elem) -> Elem {
        self.oplus.get(x, y)
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        self.neg[x]
    }

    pub fn one(&self) -> Elem {
        self.neg[0]
    }

    pub fn oplus_table(&self) -> &BinTable {
        &self.oplus
    }

    pub fn neg_table(&self) -> &[Elem] {
        &self.neg
    }

    /// The induced order `x <= y` iff `n(x) + y = 1`.
    pub fn poset(&self) -> &FinitePoset {
        self.lattice.poset()
    }

    pub fn lattice(&self) -> &BoundedLattice {
        &self.lattice
    }

    pub fn mult_table(&self) -> &BinTable {
        &self.mult
    }

    pub fn div_table(&self) -> &BinTable {
        &self.div
    }

    pub fn imp_table(&self) -> &BinTable {
        &self.imp
    }

    /// `x v y = n(n(x) + y) + y`.
    pub fn join_by_term(&self, x: Elem, y: Elem) -> Elem {
        self.oplus(self.neg(self.oplus(self.neg(x), y)), y)
    }

    /// `x ^ y = n(n(x) v n(y))`.
    pub fn meet_by_term(&self, x: Elem, y: Elem) -> Elem {
        self.neg(self.join_by_term(self.neg(x), self.neg(y)))
    }
}

impl Interpretation for BasicAlgebraModel {
    fn size(&self) -> usize {
        self.neg.len()
    }

    fn leq(&self, x: Elem, y: Elem) -> bool {
        self.lattice.leq(x, y)
    }

    fn supports(&self, op: Op) -> bool {
        !matches!(op, Op::Binary(BinaryOp::LeftDiv)) || self.right_res.is_some()
    }

    fn unary(&self, _op: UnaryOp, x: Elem) -> Option<Elem> {
        Some(self.neg[x])
    }

    fn binary(&self, op: BinaryOp, x: Elem, y: Elem) -> Option<Elem> {
        Some(match op {
            BinaryOp::Oplus => self.oplus.get(x, y),
            BinaryOp::Mult => self.mult.get(x, y),
            BinaryOp::RightDiv => self.div.get(x, y),
            BinaryOp::LeftDiv => self.right_res.as_ref()?.get(x, y),
            BinaryOp::Imp => self.imp.get(x, y),
            BinaryOp::Join => self.lattice.join(x, y),
            BinaryOp::Meet => self.lattice.meet(x, y),
        })
    }
}

// ---------------------------------------------------------------------------
// Left-residuated po-groupoids

/// A bounded integral left-residuated po-groupoid `(G, <=, *, /, 0, 1)`.
///
/// Negation is `n(x) = 0/x` and implication is `x -> y = n(x)/n(y)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LeftResiduatedGroupoid {
    poset: FinitePoset,
    mult: BinTable,
    res: BinTable,
    neg: Vec<Elem>,
    imp: BinTable,
    lattice: Option<BoundedLattice>,
    right_res: Option<BinTable>,
}

/// Validates the identity law and left residuation `x*y <= z iff x <= z/y`.
/// The stored `/` table is audited against the law rather than trusted.
pub fn validate_lrpg(
    poset: FinitePoset,
    mult: BinTable,
    res: BinTable,
) -> Result<LeftResiduatedGroupoid, AlgebraError> {
    let n = poset.size();
    check_bin(&mult, n, "mult")?;
    check_bin(&res, n, "res")?;
    let top = poset.top();
    if let Some(x) = (0..n).find(|&x| mult.get(top, x) != x || mult.get(x, top) != x) {
        return Err(AlgebraError::IdentityFailed(x));
    }
    for x in 0..n {
        for y in 0..n {
            let xy = mult.get(x, y);
            for z in 0..n {
                if poset.leq(xy, z) != poset.leq(x, res.get(z, y)) {
                    return Err(AlgebraError::ResiduationFailed(x, y, z));
                }
            }
        }
    }
    Ok(LeftResiduatedGroupoid::assemble(poset, mult, res))
}

impl LeftResiduatedGroupoid {
    pub fn new(poset: FinitePoset, mult: BinTable, res: BinTable) -> Result<Self, AlgebraError> {
        validate_lrpg(poset, mult, res)
    }

    /// Derives `/` from `*` and validates.
    pub fn from_mult(poset: FinitePoset, mult: BinTable) -> Result<Self, AlgebraError> {
        let res = residuum_from_mult(&poset, &mult)?;
        validate_lrpg(poset, mult, res)
    }

    fn assemble(poset: FinitePoset, mult: BinTable, res: BinTable) -> Self {
        let n = poset.size();
        let neg: Vec<Elem> = (0..n).map(|x| res.get(0, x)).collect();
        let imp = BinTable::from_fn(n, |x, y| res.get(neg[x], neg[y]));
        let lattice = meets_joins(&poset).ok();
        let right_res = right_residuum_table(&poset, &mult);
        LeftResiduatedGroupoid {
            poset,
            mult,
            res,
            neg,
            imp,
            lattice,
            right_res,
        }
    }

    pub fn size(&self) -> usize {
        self.poset.size()
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn top(&self) -> Elem {
        self.poset.top()
    }

    #[inline]
    pub fn mult(&self, x: Elem, y: Elem) -> Elem {
        self.mult.get(x, y)
    }

    /// `z/y`.
    #[inline]
    pub fn res(&self, z: Elem, y: Elem) -> Elem {
        self.res.get(z, y)
    }

    /// `n(x) = 0/x`.
    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        self.neg[x]
    }

    /// `x -> y = n(x)/n(y)`.
    #[inline]
    pub fn imp(&self, x: Elem, y: Elem) -> Elem {
        self.imp.get(x, y)
    }

    pub fn mult_table(&self) -> &BinTable {
        &self.mult
    }

    pub fn res_table(&self) -> &BinTable {
        &self.res
    }

    pub fn neg_table(&self) -> &[Elem] {
        &self.neg
    }

    pub fn imp_table(&self) -> &BinTable {
        &self.imp
    }

    pub fn lattice(&self) -> Option<&BoundedLattice> {
        self.lattice.as_ref()
    }

    pub fn right_residuum_table(&self) -> Option<&BinTable> {
        self.right_res.as_ref()
    }

    pub fn is_commutative(&self) -> bool {
        self.mult.is_commutative()
    }

    /// First `x` with `n(n(x)) != x`.
    pub fn double_negation_failure(&self) -> Option<Elem> {
        (0..self.size()).find(|&x| self.neg[self.neg[x]] != x)
    }
}

impl Interpretation for LeftResiduatedGroupoid {
    fn size(&self) -> usize {
        self.poset.size()
    }

    fn leq(&self, x: Elem, y: Elem) -> bool {
        self.poset.leq(x, y)
    }

    fn supports(&self, op: Op) -> bool {
        match op {
            Op::Binary(BinaryOp::Join | BinaryOp::Meet) => self.lattice.is_some(),
            Op::Binary(BinaryOp::LeftDiv) => self.right_res.is_some(),
            _ => true,
        }
    }

    fn unary(&self, op: UnaryOp, x: Elem) -> Option<Elem> {
        Some(match op {
            UnaryOp::Neg => self.neg[x],
            UnaryOp::Tilde => self.imp.get(x, 0),
        })
    }

    fn binary(&self, op: BinaryOp, x: Elem, y: Elem) -> Option<Elem> {
        Some(match op {
            BinaryOp::Mult => self.mult.get(x, y),
            BinaryOp::RightDiv => self.res.get(x, y),
            BinaryOp::LeftDiv => self.right_res.as_ref()?.get(x, y),
            BinaryOp::Imp => self.imp.get(x, y),
            BinaryOp::Oplus => self.neg[self.mult.get(self.neg[x], self.neg[y])],
            BinaryOp::Join => self.lattice.as_ref()?.join(x, y),
            BinaryOp::Meet => self.lattice.as_ref()?.meet(x, y),
        })
    }
}

/// Result of probing for a right residuum `x\z`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RightResiduum {
    Exists(Elem),
    /// `{y : x*y <= z}` has no greatest element; its maximal elements are listed.
    Missing { maximal: Vec<Elem> },
}

/// `x\z = max {y : x*y <= z}` when that maximum exists.
pub fn find_right_residuum(g: &LeftResiduatedGroupoid, x: Elem, z: Elem) -> RightResiduum {
    let set: Vec<Elem> = (0..g.size()).filter(|&y| g.poset.leq(g.mult(x, y), z)).collect();
    match g.poset.max_of(&set) {
        Some(m) => RightResiduum::Exists(m),
        None => RightResiduum::Missing {
            maximal: g.poset.maximal_elements(&set),
        },
    }
}

// ---------------------------------------------------------------------------
// Contrapositionally residuated po-groupoids

/// A contrapositionally residuated po-groupoid `(G, <=, *, ->, 0, 1)` with
/// `~x = x -> 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ContrapositionalGroupoid {
    poset: FinitePoset,
    mult: BinTable,
    imp: BinTable,
    lattice: Option<BoundedLattice>,
}

/// Validates the identity, `1 -> x = x`, and `x*y <= z iff x <= ~z -> ~y`.
pub fn validate_cpg(
    poset: FinitePoset,
    mult: BinTable,
    imp: BinTable,
) -> Result<ContrapositionalGroupoid, AlgebraError> {
    let n = poset.size();
    check_bin(&mult, n, "mult")?;
    check_bin(&imp, n, "imp")?;
    let top = poset.top();
    if let Some(x) = (0..n).find(|&x| mult.get(top, x) != x || mult.get(x, top) != x) {
        return Err(AlgebraError::IdentityFailed(x));
    }
    if let Some(x) = (0..n).find(|&x| imp.get(top, x) != x) {
        return Err(AlgebraError::ConditionAFailed(x));
    }
    let tilde = |x| imp.get(x, 0);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if poset.leq(mult.get(x, y), z) != poset.leq(x, imp.get(tilde(z), tilde(y))) {
                    return Err(AlgebraError::ConditionBFailed(x, y, z));
                }
            }
        }
    }
    let lattice = meets_joins(&poset).ok();
    Ok(ContrapositionalGroupoid {
        poset,
        mult,
        imp,
        lattice,
    })
}

impl ContrapositionalGroupoid {
    pub fn new(poset: FinitePoset, mult: BinTable, imp: BinTable) -> Result<Self, AlgebraError> {
        validate_cpg(poset, mult, imp)
    }

    pub fn size(&self) -> usize {
        self.poset.size()
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    #[inline]
    pub fn mult(&self, x: Elem, y: Elem) -> Elem {
        self.mult.get(x, y)
    }

    #[inline]
    pub fn imp(&self, x: Elem, y: Elem) -> Elem {
        self.imp.get(x, y)
    }

    /// `~x = x -> 0`.
    #[inline]
    pub fn tilde(&self, x: Elem) -> Elem {
        self.imp.get(x, 0)
    }

    pub fn mult_table(&self) -> &BinTable {
        &self.mult
    }

    pub fn imp_table(&self) -> &BinTable {
        &self.imp
    }
}

impl Interpretation for ContrapositionalGroupoid {
    fn size(&self) -> usize {
        self.poset.size()
    }

    fn leq(&self, x: Elem, y: Elem) -> bool {
        self.poset.leq(x, y)
    }

    fn supports(&self, op: Op) -> bool {
        match op {
            Op::Binary(BinaryOp::Join | BinaryOp::Meet) => self.lattice.is_some(),
            Op::Binary(BinaryOp::LeftDiv | BinaryOp::Oplus) => false,
            _ => true,
        }
    }

    fn unary(&self, op: UnaryOp, x: Elem) -> Option<Elem> {
        Some(match op {
            UnaryOp::Tilde => self.tilde(x),
            // 0/x = ~0 -> ~x
            UnaryOp::Neg => self.imp(self.tilde(0), self.tilde(x)),
        })
    }

    fn binary(&self, op: BinaryOp, x: Elem, y: Elem) -> Option<Elem> {
        match op {
            BinaryOp::Mult => Some(self.mult(x, y)),
            BinaryOp::Imp => Some(self.imp(x, y)),
            BinaryOp::RightDiv => Some(self.imp(self.tilde(x), self.tilde(y))),
            BinaryOp::Join => Some(self.lattice.as_ref()?.join(x, y)),
            BinaryOp::Meet => Some(self.lattice.as_ref()?.meet(x, y)),
            BinaryOp::LeftDiv | BinaryOp::Oplus => None,
        }
    }
}

// ---------------------------------------------------------------------------
// Consequences of left residuation

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RuleVerdict {
    pub rule: char,
    pub holds: bool,
    /// For (h) and (i): the index family followed by `y`.
    pub witness: Option<Vec<Elem>>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LemmaReport {
    pub rules: Vec<RuleVerdict>,
}

impl LemmaReport {
    pub fn all_hold(&self) -> bool {
        self.rules.iter().all(|r| r.holds)
    }

    pub fn rule(&self, rule: char) -> &RuleVerdict {
        self.rules.iter().find(|r| r.rule == rule).expect("rules a..i")
    }
}

fn first_pair(n: usize, mut bad: impl FnMut(Elem, Elem) -> bool) -> Option<Vec<Elem>> {
    (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| bad(x, y))
        .map(|(x, y)| vec![x, y])
}

fn first_triple(n: usize, mut bad: impl FnMut(Elem, Elem, Elem) -> bool) -> Option<Vec<Elem>> {
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if bad(x, y, z) {
                    return Some(vec![x, y, z]);
                }
            }
        }
    }
    None
}

/// Subsets of `0..n` with at most three elements, by size then lexicographically.
fn small_families(n: usize) -> Vec<Vec<Elem>> {
    let mut out = vec![vec![]];
    for k in 1..=3.min(n) {
        out.extend(itertools::Itertools::combinations(0..n, k));
    }
    out
}

/// Evaluates rules (a)-(i). Rules (h) and (i) range over index families of at
/// most three elements whose join (resp. meet) exists, including the empty one.
pub fn check_lemma_rules(g: &LeftResiduatedGroupoid) -> LemmaReport {
    let n = g.size();
    let p = &g.poset;
    let top = g.top();
    let m = |x, y| g.mult(x, y);
    let r = |z, y| g.res(z, y);
    let verdict = |rule, witness: Option<Vec<Elem>>| RuleVerdict {
        rule,
        holds: witness.is_none(),
        witness,
    };

    let a = first_pair(n, |x, y| !p.leq(m(r(x, y), y), x) || !p.leq(x, r(m(x, y), y)));
    let b = first_pair(n, |x, y| p.leq(x, y) != (r(y, x) == top));
    let c = first_triple(n, |x, y, z| p.leq(x, y) && !p.leq(m(x, z), m(y, z)));
    let d = first_pair(n, |x, y| !p.leq(m(x, y), y));
    let e = (0..n)
        .find(|&x| r(x, x) != top || r(top, x) != top || r(x, top) != x)
        .map(|x| vec![x]);
    let f = first_triple(n, |x, y, z| p.leq(x, y) && !p.leq(r(x, z), r(y, z)));
    let gg = (0..n).find(|&x| m(x, 0) != 0 || m(0, x) != 0).map(|x| vec![x]);

    let families = small_families(n);
    let mut h = None;
    let mut i = None;
    'h: for fam in &families {
        let Some(j) = p.join_of(fam) else { continue };
        for y in 0..n {
            let images: Vec<Elem> = fam.iter().map(|&x| m(x, y)).collect();
            if p.join_of(&images) != Some(m(j, y)) {
                let mut w = fam.clone();
                w.push(y);
                h = Some(w);
                break 'h;
            }
        }
    }
    'i: for fam in &families {
        let Some(mt) = p.meet_of(fam) else { continue };
        for y in 0..n {
            let images: Vec<Elem> = fam.iter().map(|&x| r(x, y)).collect();
            if p.meet_of(&images) != Some(r(mt, y)) {
                let mut w = fam.clone();
                w.push(y);
                i = Some(w);
                break 'i;
            }
        }
    }

    LemmaReport {
        rules: vec![
            verdict('a', a),
            verdict('b', b),
            verdict('c', c),
            verdict('d', d),
            verdict('e', e),
            verdict('f', f),
            verdict('g', gg),
            verdict('h', h),
            verdict('i', i),
        ],
    }
}

/// For all `x, y`: `x <= y` iff `x = z*y` for some `z`.
pub fn satisfies_factor_condition(g: &LeftResiduatedGroupoid) -> bool {
    let n = g.size();
    (0..n).all(|x| (0..n).all(|y| g.poset.leq(x, y) == (0..n).any(|z| g.mult(z, y) == x)))
}

/// The poset is a meet-semilattice and `x ^ y = (x/y)*y` for all `x, y`.
pub fn meets_given_by_division(g: &LeftResiduatedGroupoid) -> bool {
    let n = g.size();
    (0..n).all(|x| (0..n).all(|y| g.poset.meet_of(&[x, y]) == Some(g.mult(g.res(x, y), y))))
}
