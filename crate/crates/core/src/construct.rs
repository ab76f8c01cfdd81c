//! Translations between basic algebras, left-residuated po-groupoids,
//! contrapositionally residuated po-groupoids, section involution families
//! and orthomodular lattices.

use crate::algebra::{
    validate_basic_algebra, validate_cpg, validate_lrpg, AlgebraError, BasicAlgebraModel,
    ContrapositionalGroupoid, LeftResiduatedGroupoid,
};
use crate::io::{ModelClass, ModelFile};
use crate::laws::{catalog_law, check_formula, Assignment, BinaryOp, Interpretation, Op, UnaryOp};
use crate::order::{OrderError, OrthoLattice, SectionInvolutionFamily, SectionKind};
use crate::table::{BinTable, Elem};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("not orthomodular: fails at x={}, y={}", .0.0, .0.1)]
    NotOrthomodular((Elem, Elem)),
    #[error("double negation fails at {0}")]
    DoubleNegationFails(Elem),
    #[error("expected a family on {expected:?}")]
    WrongSectionKind { expected: SectionKind },
    #[error("hypothesis `{law}` fails at {witness}")]
    HypothesesFail { law: String, witness: Assignment },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Order(#[from] OrderError),
}

/// `G(A)`: `x*y = n(n(x) + n(y))`, `x/y = x + n(y)` on the induced order.
pub fn groupoid_of_basic(a: &BasicAlgebraModel) -> LeftResiduatedGroupoid {
    validate_lrpg(a.poset().clone(), a.mult_table().clone(), a.div_table().clone())
        .expect("the groupoid of a basic algebra is left-residuated")
}

/// Unvalidated `(+, n)` tables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BasicTables {
    pub oplus: BinTable,
    pub neg: Vec<Elem>,
}

impl BasicTables {
    pub fn validate(&self) -> Result<BasicAlgebraModel, AlgebraError> {
        validate_basic_algebra(self.oplus.clone(), self.neg.clone())
    }

    pub fn to_file(&self) -> ModelFile {
        let mut f = ModelFile::empty(ModelClass::Basic, self.neg.len());
        f.oplus = Some(self.oplus.clone());
        f.neg = Some(self.neg.clone());
        f
    }
}

impl From<&BasicAlgebraModel> for BasicTables {
    fn from(a: &BasicAlgebraModel) -> Self {
        BasicTables {
            oplus: a.oplus_table().clone(),
            neg: a.neg_table().to_vec(),
        }
    }
}

/// Only `+` and `n` are interpreted; the order is `n(x) + y = n(0)`.
impl Interpretation for BasicTables {
    fn size(&self) -> usize {
        self.neg.len()
    }

    fn leq(&self, x: Elem, y: Elem) -> bool {
        self.oplus.get(self.neg[x], y) == self.neg[0]
    }

    fn supports(&self, op: Op) -> bool {
        matches!(op, Op::Binary(BinaryOp::Oplus) | Op::Unary(_))
    }

    fn unary(&self, _op: UnaryOp, x: Elem) -> Option<Elem> {
        Some(self.neg[x])
    }

    fn binary(&self, op: BinaryOp, x: Elem, y: Elem) -> Option<Elem> {
        (op == BinaryOp::Oplus).then(|| self.oplus.get(x, y))
    }
}

/// `A(G)`: `n(x) = 0/x` and `x + y = n(n(x)*n(y))`. The result is not
/// validated.
pub fn basic_of_groupoid(g: &LeftResiduatedGroupoid) -> BasicTables {
    let n = g.size();
    let neg = g.neg_table().to_vec();
    let oplus = BinTable::from_fn(n, |x, y| neg[g.mult(neg[x], neg[y])]);
    BasicTables { oplus, neg }
}

/// `n(x) = gamma_0(x)`, `x + y = gamma_y(n(x) v y)`.
pub fn basic_from_filter_involutions(f: &SectionInvolutionFamily) -> Result<BasicAlgebraModel, ConstructError> {
    if f.kind() != SectionKind::Filters {
        return Err(ConstructError::WrongSectionKind { expected: SectionKind::Filters });
    }
    let l = f.lattice();
    let n = l.size();
    let neg: Vec<Elem> = (0..n).map(|x| f.apply(0, x)).collect();
    let oplus = BinTable::from_fn(n, |x, y| f.apply(y, l.join(neg[x], y)));
    Ok(validate_basic_algebra(oplus, neg)?)
}

/// `n(x) = delta_1(x)`, `x + y = n(delta_{n(y)}(x ^ n(y)))`.
pub fn basic_from_ideal_involutions(f: &SectionInvolutionFamily) -> Result<BasicAlgebraModel, ConstructError> {
    if f.kind() != SectionKind::Ideals {
        return Err(ConstructError::WrongSectionKind { expected: SectionKind::Ideals });
    }
    let l = f.lattice();
    let n = l.size();
    let top = l.top();
    let neg: Vec<Elem> = (0..n).map(|x| f.apply(top, x)).collect();
    let oplus = BinTable::from_fn(n, |x, y| neg[f.apply(neg[y], l.meet(x, neg[y]))]);
    Ok(validate_basic_algebra(oplus, neg)?)
}

/// The filter family `gamma_a(x) = x -> a` of a basic algebra.
pub fn filter_involutions_of_basic(a: &BasicAlgebraModel) -> SectionInvolutionFamily {
    SectionInvolutionFamily::from_fn(a.lattice().clone(), SectionKind::Filters, |s, x| a.oplus(a.neg(x), s))
        .expect("sections of a basic algebra carry antitone involutions")
}

/// `n(x) = perp(x)`, `x + y = (x ^ perp(y)) v y`.
pub fn basic_from_oml(o: &OrthoLattice) -> Result<BasicAlgebraModel, ConstructError> {
    if let Some(w) = o.report().orthomodular_witness {
        return Err(ConstructError::NotOrthomodular(w));
    }
    let l = o.lattice();
    let n = l.size();
    let oplus = BinTable::from_fn(n, |x, y| l.join(l.meet(x, o.perp(y)), y));
    Ok(validate_basic_algebra(oplus, o.perp_table().to_vec())?)
}

/// `x -> y = n(x)/n(y)`; requires double negation.
pub fn cpg_from_lrpg(g: &LeftResiduatedGroupoid) -> Result<ContrapositionalGroupoid, ConstructError> {
    if let Some(x) = g.double_negation_failure() {
        return Err(ConstructError::DoubleNegationFails(x));
    }
    Ok(validate_cpg(g.poset().clone(), g.mult_table().clone(), g.imp_table().clone())?)
}

/// `x/y = ~x -> ~y`.
pub fn lrpg_from_cpg(c: &ContrapositionalGroupoid) -> Result<LeftResiduatedGroupoid, ConstructError> {
    let n = c.size();
    let res = BinTable::from_fn(n, |x, y| c.imp(c.tilde(x), c.tilde(y)));
    Ok(validate_lrpg(c.poset().clone(), c.mult_table().clone(), res)?)
}

/// Input to [`roundtrip_check`].
#[derive(Clone, Copy, Debug)]
pub enum Structure<'a> {
    Basic(&'a BasicAlgebraModel),
    Groupoid(&'a LeftResiduatedGroupoid),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LawOutcome {
    pub law: &'static str,
    pub witness: Option<Assignment>,
}

impl LawOutcome {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RoundtripReport {
    /// `div`, `jk`, `dneg`, `w` evaluated on the groupoid side.
    pub laws: Vec<LawOutcome>,
    /// `div` and `jk` hold.
    pub theorem1: bool,
    /// `dneg` and `w` hold.
    pub theorem2: bool,
    /// `A(G(A)) = A`, resp. `G(A(G)) = G`, table for table.
    pub identical: bool,
    /// The order induced by `+` equals the groupoid order.
    pub orders_coincide: bool,
}

fn groupoid_laws(g: &LeftResiduatedGroupoid) -> Vec<LawOutcome> {
    ["div", "jk", "dneg", "w"]
        .into_iter()
        .map(|law| {
            let f = catalog_law(law).expect("catalog law");
            let v = check_formula(&f, g).expect("groupoid signature");
            LawOutcome { law, witness: v.witness }
        })
        .collect()
}

/// Runs `A -> G(A) -> A(G(A))` or `G -> A(G) -> G(A(G))` and compares tables.
///
/// A groupoid must satisfy `div` and `jk` or `dneg` and `w`; otherwise the
/// first failing law of the `{div, jk}` pair is reported.
pub fn roundtrip_check(s: Structure<'_>) -> Result<RoundtripReport, ConstructError> {
    match s {
        Structure::Basic(a) => {
            let g = groupoid_of_basic(a);
            let laws = groupoid_laws(&g);
            let back = basic_of_groupoid(&g);
            Ok(RoundtripReport {
                theorem1: laws[0].holds() && laws[1].holds(),
                theorem2: laws[2].holds() && laws[3].holds(),
                laws,
                identical: back == BasicTables::from(a),
                orders_coincide: g.poset() == a.poset(),
            })
        }
        Structure::Groupoid(g) => {
            let laws = groupoid_laws(g);
            let theorem1 = laws[0].holds() && laws[1].holds();
            let theorem2 = laws[2].holds() && laws[3].holds();
            if !theorem1 && !theorem2 {
                let fail = laws[..2].iter().find(|l| !l.holds()).expect("a failing law");
                return Err(ConstructError::HypothesesFail {
                    law: fail.law.to_string(),
                    witness: fail.witness.clone().expect("witness"),
                });
            }
            let a = basic_of_groupoid(g).validate()?;
            let back = groupoid_of_basic(&a);
            Ok(RoundtripReport {
                laws,
                theorem1,
                theorem2,
                identical: &back == g,
                orders_coincide: a.poset() == g.poset(),
            })
        }
    }
}
