//! Bundled models. Element order in each file is the conventional labelling,
//! e.g. `0 a b c d e f 1` for the 8-element groupoid.

use crate::algebra::{BasicAlgebraModel, LeftResiduatedGroupoid};
use crate::io::{parse_model, Model};
use crate::order::{BoundedLattice, FinitePoset, OrthoLattice, SectionInvolutionFamily};
use crate::table::BinTable;

pub const EXAMPLE1: &str = include_str!("../fixtures/example1.lrpg");
pub const L2: &str = include_str!("../fixtures/l2.basic");
pub const L3: &str = include_str!("../fixtures/l3.basic");
pub const L4: &str = include_str!("../fixtures/l4.basic");
pub const MO2_BASIC: &str = include_str!("../fixtures/mo2.basic");
pub const BOOLEAN4_BASIC: &str = include_str!("../fixtures/boolean4.basic");
pub const HEYTING3: &str = include_str!("../fixtures/heyting3.lrpg");
pub const MO2_ORTHO: &str = include_str!("../fixtures/mo2.ortho");
pub const BOOLEAN4_ORTHO: &str = include_str!("../fixtures/boolean4.ortho");
pub const O6_ORTHO: &str = include_str!("../fixtures/o6.ortho");
pub const L3_INV: &str = include_str!("../fixtures/l3.inv");
pub const MO2_INV: &str = include_str!("../fixtures/mo2.inv");

/// Every bundled file with its file name.
pub const FILES: &[(&str, &str)] = &[
    ("example1.lrpg", EXAMPLE1),
    ("l2.basic", L2),
    ("l3.basic", L3),
    ("l4.basic", L4),
    ("mo2.basic", MO2_BASIC),
    ("boolean4.basic", BOOLEAN4_BASIC),
    ("heyting3.lrpg", HEYTING3),
    ("mo2.ortho", MO2_ORTHO),
    ("boolean4.ortho", BOOLEAN4_ORTHO),
    ("o6.ortho", O6_ORTHO),
    ("l3.inv", L3_INV),
    ("mo2.inv", MO2_INV),
];

fn load(text: &str) -> Model {
    parse_model(text).expect("bundled fixture is valid")
}

fn basic(text: &str) -> BasicAlgebraModel {
    match load(text) {
        Model::Basic(m) => m,
        _ => unreachable!(),
    }
}

fn lrpg(text: &str) -> LeftResiduatedGroupoid {
    match load(text) {
        Model::Lrpg(m) => m,
        _ => unreachable!(),
    }
}

fn ortho(text: &str) -> OrthoLattice {
    match load(text) {
        Model::Ortho(m) => m,
        _ => unreachable!(),
    }
}

fn involutions(text: &str) -> SectionInvolutionFamily {
    match load(text) {
        Model::Involutions(m) => m,
        _ => unreachable!(),
    }
}

/// The 8-element left-residuated groupoid satisfying div and dneg but not jk.
pub fn example1() -> LeftResiduatedGroupoid {
    lrpg(EXAMPLE1)
}

pub fn example1_poset() -> FinitePoset {
    example1().poset().clone()
}

pub fn l2() -> BasicAlgebraModel {
    basic(L2)
}

pub fn l3() -> BasicAlgebraModel {
    basic(L3)
}

pub fn l4() -> BasicAlgebraModel {
    basic(L4)
}

pub fn mo2_basic() -> BasicAlgebraModel {
    basic(MO2_BASIC)
}

pub fn boolean4_basic() -> BasicAlgebraModel {
    basic(BOOLEAN4_BASIC)
}

/// The basic algebras of the round-trip corpus.
pub fn basic_corpus() -> Vec<(&'static str, BasicAlgebraModel)> {
    vec![
        ("L2", l2()),
        ("L3", l3()),
        ("L4", l4()),
        ("MO2", mo2_basic()),
        ("Boolean 2x2", boolean4_basic()),
    ]
}

/// Three-element chain with `* = min` and Goedel residuum.
pub fn heyting3() -> LeftResiduatedGroupoid {
    lrpg(HEYTING3)
}

/// The two-element chain as a groupoid.
pub fn boolean2_groupoid() -> LeftResiduatedGroupoid {
    LeftResiduatedGroupoid::from_mult(FinitePoset::chain(2), BinTable::from_fn(2, |x, y| x.min(y)))
        .expect("two-element chain")
}

/// The Lukasiewicz 3-chain groupoid, `x*y = max(x + y - 1, 0)` on indices.
pub fn l3_groupoid() -> LeftResiduatedGroupoid {
    LeftResiduatedGroupoid::from_mult(
        FinitePoset::chain(3),
        BinTable::from_fn(3, |x, y| (x + y).saturating_sub(2)),
    )
    .expect("three-element MV chain")
}

/// Labelling `0, a, a', b, b', 1`.
pub fn mo2_ortho() -> OrthoLattice {
    ortho(MO2_ORTHO)
}

pub fn boolean4_ortho() -> OrthoLattice {
    ortho(BOOLEAN4_ORTHO)
}

/// Labelling `0, a, b, b', a', 1` with `a < b` and `b' < a'`.
pub fn o6_ortho() -> OrthoLattice {
    ortho(O6_ORTHO)
}

pub fn l3_filter_involutions() -> SectionInvolutionFamily {
    involutions(L3_INV)
}

pub fn mo2_filter_involutions() -> SectionInvolutionFamily {
    involutions(MO2_INV)
}

pub fn diamond_lattice() -> BoundedLattice {
    BoundedLattice::new(FinitePoset::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()).unwrap()
}
