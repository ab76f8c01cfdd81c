//! Finite basic algebras, left-residuated po-groupoids and lattices with
//! sectional antitone involutions: validation, interconversion, law checking
//! and exhaustive model search.

pub mod algebra;
pub mod construct;
pub mod continuum;
pub mod fixtures;
pub mod io;
pub mod laws;
pub mod order;
pub mod search;
pub mod table;

pub use algebra::{
    check_lemma_rules, find_right_residuum, residuum_from_mult, validate_basic_algebra, validate_cpg,
    validate_lrpg, AlgebraError, BasicAlgebraModel, ContrapositionalGroupoid, LeftResiduatedGroupoid,
    LemmaReport, RightResiduum,
};
pub use io::{dump_model, load_model, load_model_raw, Model, ModelClass, ModelError, ModelFile};
pub use order::{
    BoundedLattice, FinitePoset, OrderError, OrthoLattice, SectionInvolutionFamily, SectionKind,
};
pub use table::{BinTable, Elem};
