//! Plain-text model files.
//!
//! ```text
//! class lrpg
//! size 2
//! leq
//! 1 1
//! 0 1
//! mult
//! 0 0
//! 0 1
//! res
//! 1 0
//! 1 1
//! ```
//!
//! Sections may appear in any order and `#` starts a comment. Dumps use the
//! canonical order `leq mult res imp oplus neg perp gamma delta`.

use crate::algebra::{
    validate_basic_algebra, validate_cpg, validate_lrpg, AlgebraError, BasicAlgebraModel,
    ContrapositionalGroupoid, LeftResiduatedGroupoid,
};
use crate::order::{
    BoundedLattice, FinitePoset, OrderError, OrthoLattice, SectionInvolutionFamily, SectionKind,
};
use crate::table::{BinTable, Elem};
use std::fmt::{self, Write as _};
use std::path::Path;
use std::str::FromStr;
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum ModelClass {
    Basic,
    Lrpg,
    Cpg,
    Lattice,
    Ortho,
    Involutions,
}

impl ModelClass {
    pub fn name(self) -> &'static str {
        match self {
            ModelClass::Basic => "basic",
            ModelClass::Lrpg => "lrpg",
            ModelClass::Cpg => "cpg",
            ModelClass::Lattice => "lattice",
            ModelClass::Ortho => "ortho",
            ModelClass::Involutions => "involutions",
        }
    }
}

impl fmt::Display for ModelClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "basic" => ModelClass::Basic,
            "lrpg" => ModelClass::Lrpg,
            "cpg" => ModelClass::Cpg,
            "lattice" => ModelClass::Lattice,
            "ortho" => ModelClass::Ortho,
            "involutions" => ModelClass::Involutions,
            _ => return Err(format!("unknown class `{s}`")),
        })
    }
}

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Parsed but unvalidated contents of a model file.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModelFile {
    pub class: ModelClass,
    pub size: usize,
    pub leq: Option<Vec<Vec<bool>>>,
    pub mult: Option<BinTable>,
    pub res: Option<BinTable>,
    pub imp: Option<BinTable>,
    pub oplus: Option<BinTable>,
    pub neg: Option<Vec<Elem>>,
    pub perp: Option<Vec<Elem>>,
    pub gamma: Option<Vec<Vec<Option<Elem>>>>,
    pub delta: Option<Vec<Vec<Option<Elem>>>>,
}

const SECTIONS: [&str; 9] = ["leq", "mult", "res", "imp", "oplus", "neg", "perp", "gamma", "delta"];

fn required(class: ModelClass) -> &'static [&'static str] {
    match class {
        ModelClass::Basic => &["oplus", "neg"],
        ModelClass::Lrpg => &["leq", "mult", "res"],
        ModelClass::Cpg => &["leq", "mult", "imp"],
        ModelClass::Lattice => &["leq"],
        ModelClass::Ortho => &["leq", "perp"],
        ModelClass::Involutions => &["leq"],
    }
}

impl ModelFile {
    pub fn empty(class: ModelClass, size: usize) -> Self {
        ModelFile {
            class,
            size,
            leq: None,
            mult: None,
            res: None,
            imp: None,
            oplus: None,
            neg: None,
            perp: None,
            gamma: None,
            delta: None,
        }
    }

    fn present(&self) -> Vec<&'static str> {
        let flags = [
            self.leq.is_some(),
            self.mult.is_some(),
            self.res.is_some(),
            self.imp.is_some(),
            self.oplus.is_some(),
            self.neg.is_some(),
            self.perp.is_some(),
            self.gamma.is_some(),
            self.delta.is_some(),
        ];
        SECTIONS.iter().zip(flags).filter(|(_, f)| *f).map(|(s, _)| *s).collect()
    }

    /// Parses the text format. Validation of the contents is separate.
    pub fn parse(text: &str) -> Result<Self, ModelError> {
        let perr = |line: usize, reason: String| ModelError::Parse { line, reason };
        let lines: Vec<(usize, Vec<&str>)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").split_whitespace().collect()))
            .filter(|(_, toks): &(usize, Vec<&str>)| !toks.is_empty())
            .collect();
        let mut it = lines.into_iter().peekable();

        let mut class = None;
        let mut size = None;
        while let Some((line, toks)) = it.peek() {
            match toks[0] {
                "class" | "size" if toks.len() != 2 => {
                    return Err(perr(*line, format!("expected `{} <value>`", toks[0])));
                }
                "class" => {
                    if class.is_some() {
                        return Err(perr(*line, "duplicate `class`".into()));
                    }
                    class = Some(toks[1].parse::<ModelClass>().map_err(|e| perr(*line, e))?);
                }
                "size" => {
                    if size.is_some() {
                        return Err(perr(*line, "duplicate `size`".into()));
                    }
                    let n: usize = toks[1]
                        .parse()
                        .ok()
                        .filter(|&n| n >= 1)
                        .ok_or_else(|| perr(*line, format!("invalid size `{}`", toks[1])))?;
                    size = Some(n);
                }
                _ => break,
            }
            it.next();
        }
        let first_line = it.peek().map_or(text.lines().count() + 1, |(l, _)| *l);
        let class = class.ok_or_else(|| perr(first_line, "missing `class` header".into()))?;
        let n = size.ok_or_else(|| perr(first_line, "missing `size` header".into()))?;
        let mut file = ModelFile::empty(class, n);

        let last_line = text.lines().count() + 1;
        while let Some((line, toks)) = it.next() {
            let name = toks[0];
            if toks.len() != 1 || !SECTIONS.contains(&name) {
                return Err(perr(line, format!("expected a section name, found `{}`", toks.join(" "))));
            }
            if file.present().contains(&name) {
                return Err(perr(line, format!("duplicate section `{name}`")));
            }
            let rows = if matches!(name, "neg" | "perp") { 1 } else { n };
            let (lo, hi): (i64, i64) = match name {
                "leq" => (0, 1),
                "gamma" | "delta" => (-1, n as i64 - 1),
                _ => (0, n as i64 - 1),
            };
            let mut data: Vec<Vec<i64>> = Vec::with_capacity(rows);
            for r in 0..rows {
                let Some((rl, rt)) = it.next_if(|(_, t)| t[0].parse::<i64>().is_ok() || t[0].starts_with('-'))
                else {
                    let at = it.peek().map_or(last_line, |(l, _)| *l);
                    return Err(perr(
                        at,
                        format!("dimension mismatch: section `{name}` has {r} rows, expected {rows}"),
                    ));
                };
                if rt.len() != n {
                    return Err(perr(
                        rl,
                        format!("dimension mismatch: row has {} entries, expected {n}", rt.len()),
                    ));
                }
                let mut row = Vec::with_capacity(n);
                for t in rt {
                    let v: i64 = t.parse().map_err(|_| perr(rl, format!("invalid entry `{t}`")))?;
                    if v < lo || v > hi {
                        return Err(perr(rl, format!("entry {v} out of range {lo}..={hi}")));
                    }
                    row.push(v);
                }
                data.push(row);
            }
            let idx = |d: &[Vec<i64>]| -> Vec<Vec<Elem>> {
                d.iter().map(|r| r.iter().map(|&v| v as Elem).collect()).collect()
            };
            let table = |d: &[Vec<i64>]| BinTable::from_rows(&idx(d)).expect("square table");
            let family = |d: &[Vec<i64>]| -> Vec<Vec<Option<Elem>>> {
                d.iter()
                    .map(|r| r.iter().map(|&v| (v >= 0).then_some(v as Elem)).collect())
                    .collect()
            };
            match name {
                "leq" => file.leq = Some(data.iter().map(|r| r.iter().map(|&v| v == 1).collect()).collect()),
                "mult" => file.mult = Some(table(&data)),
                "res" => file.res = Some(table(&data)),
                "imp" => file.imp = Some(table(&data)),
                "oplus" => file.oplus = Some(table(&data)),
                "neg" => file.neg = Some(idx(&data).remove(0)),
                "perp" => file.perp = Some(idx(&data).remove(0)),
                "gamma" => file.gamma = Some(family(&data)),
                "delta" => file.delta = Some(family(&data)),
                _ => unreachable!(),
            }
        }

        let present = file.present();
        let need = required(class);
        if let Some(missing) = need.iter().find(|s| !present.contains(s)) {
            return Err(perr(last_line, format!("class {class} requires section `{missing}`")));
        }
        let mut extra: Vec<&str> = present.iter().copied().filter(|s| !need.contains(s)).collect();
        if class == ModelClass::Involutions {
            match extra.as_slice() {
                ["gamma"] | ["delta"] => extra.clear(),
                [] => {
                    return Err(perr(last_line, "class involutions requires `gamma` or `delta`".into()));
                }
                _ => {}
            }
        }
        if let Some(s) = extra.first() {
            return Err(perr(last_line, format!("section `{s}` is not part of class {class}")));
        }
        Ok(file)
    }

    /// Renders the canonical text form.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "class {}", self.class).unwrap();
        writeln!(out, "size {}", self.size).unwrap();
        fn row<T: fmt::Display>(out: &mut String, items: impl Iterator<Item = T>) {
            let strs: Vec<String> = items.map(|v| v.to_string()).collect();
            out.push_str(&strs.join(" "));
            out.push('\n');
        }
        if let Some(leq) = &self.leq {
            out.push_str("leq\n");
            for r in leq {
                row(&mut out, r.iter().map(|&b| b as u8));
            }
        }
        for (name, t) in [("mult", &self.mult), ("res", &self.res), ("imp", &self.imp), ("oplus", &self.oplus)] {
            if let Some(t) = t {
                writeln!(out, "{name}").unwrap();
                for x in 0..t.size() {
                    row(&mut out, t.row(x).iter());
                }
            }
        }
        for (name, v) in [("neg", &self.neg), ("perp", &self.perp)] {
            if let Some(v) = v {
                writeln!(out, "{name}").unwrap();
                row(&mut out, v.iter());
            }
        }
        for (name, fam) in [("gamma", &self.gamma), ("delta", &self.delta)] {
            if let Some(fam) = fam {
                writeln!(out, "{name}").unwrap();
                for r in fam {
                    row(&mut out, r.iter().map(|v| v.map_or(-1, |x| x as i64)));
                }
            }
        }
        out
    }

    /// Validates the sections with the checker for the declared class.
    pub fn validate(&self) -> Result<Model, ModelError> {
        let poset = || FinitePoset::new(self.leq.as_ref().expect("checked at parse"));
        Ok(match self.class {
            ModelClass::Basic => Model::Basic(validate_basic_algebra(
                self.oplus.clone().expect("checked at parse"),
                self.neg.clone().expect("checked at parse"),
            )?),
            ModelClass::Lrpg => Model::Lrpg(validate_lrpg(
                poset()?,
                self.mult.clone().expect("checked at parse"),
                self.res.clone().expect("checked at parse"),
            )?),
            ModelClass::Cpg => Model::Cpg(validate_cpg(
                poset()?,
                self.mult.clone().expect("checked at parse"),
                self.imp.clone().expect("checked at parse"),
            )?),
            ModelClass::Lattice => Model::Lattice(BoundedLattice::new(poset()?)?),
            ModelClass::Ortho => Model::Ortho(OrthoLattice::new(
                BoundedLattice::new(poset()?)?,
                self.perp.clone().expect("checked at parse"),
            )?),
            ModelClass::Involutions => {
                let l = BoundedLattice::new(poset()?)?;
                let (kind, maps) = match (&self.gamma, &self.delta) {
                    (Some(g), None) => (SectionKind::Filters, g.clone()),
                    (None, Some(d)) => (SectionKind::Ideals, d.clone()),
                    _ => unreachable!("checked at parse"),
                };
                Model::Involutions(SectionInvolutionFamily::new(l, kind, maps)?)
            }
        })
    }
}

/// A validated model of one of the supported classes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Model {
    Basic(BasicAlgebraModel),
    Lrpg(LeftResiduatedGroupoid),
    Cpg(ContrapositionalGroupoid),
    Lattice(BoundedLattice),
    Ortho(OrthoLattice),
    Involutions(SectionInvolutionFamily),
}

impl From<BasicAlgebraModel> for Model {
    fn from(m: BasicAlgebraModel) -> Self {
        Model::Basic(m)
    }
}

impl From<LeftResiduatedGroupoid> for Model {
    fn from(m: LeftResiduatedGroupoid) -> Self {
        Model::Lrpg(m)
    }
}

impl From<ContrapositionalGroupoid> for Model {
    fn from(m: ContrapositionalGroupoid) -> Self {
        Model::Cpg(m)
    }
}

impl From<OrthoLattice> for Model {
    fn from(m: OrthoLattice) -> Self {
        Model::Ortho(m)
    }
}

impl From<SectionInvolutionFamily> for Model {
    fn from(m: SectionInvolutionFamily) -> Self {
        Model::Involutions(m)
    }
}

impl Model {
    pub fn class(&self) -> ModelClass {
        match self {
            Model::Basic(_) => ModelClass::Basic,
            Model::Lrpg(_) => ModelClass::Lrpg,
            Model::Cpg(_) => ModelClass::Cpg,
            Model::Lattice(_) => ModelClass::Lattice,
            Model::Ortho(_) => ModelClass::Ortho,
            Model::Involutions(_) => ModelClass::Involutions,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Model::Basic(m) => m.size(),
            Model::Lrpg(m) => m.size(),
            Model::Cpg(m) => m.size(),
            Model::Lattice(m) => m.size(),
            Model::Ortho(m) => m.lattice().size(),
            Model::Involutions(m) => m.lattice().size(),
        }
    }

    pub fn to_file(&self) -> ModelFile {
        let mut f = ModelFile::empty(self.class(), self.size());
        match self {
            Model::Basic(m) => {
                f.oplus = Some(m.oplus_table().clone());
                f.neg = Some(m.neg_table().to_vec());
            }
            Model::Lrpg(m) => {
                f.leq = Some(m.poset().rows());
                f.mult = Some(m.mult_table().clone());
                f.res = Some(m.res_table().clone());
            }
            Model::Cpg(m) => {
                f.leq = Some(m.poset().rows());
                f.mult = Some(m.mult_table().clone());
                f.imp = Some(m.imp_table().clone());
            }
            Model::Lattice(m) => f.leq = Some(m.poset().rows()),
            Model::Ortho(m) => {
                f.leq = Some(m.lattice().poset().rows());
                f.perp = Some(m.perp_table().to_vec());
            }
            Model::Involutions(m) => {
                f.leq = Some(m.lattice().poset().rows());
                match m.kind() {
                    SectionKind::Filters => f.gamma = Some(m.maps().to_vec()),
                    SectionKind::Ideals => f.delta = Some(m.maps().to_vec()),
                }
            }
        }
        f
    }

    pub fn to_text(&self) -> String {
        self.to_file().to_text()
    }
}

pub fn parse_model(text: &str) -> Result<Model, ModelError> {
    ModelFile::parse(text)?.validate()
}

fn read(path: &Path) -> Result<String, ModelError> {
    std::fs::read_to_string(path).map_err(|source| ModelError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Loads and validates a model file.
pub fn load_model(path: impl AsRef<Path>) -> Result<Model, ModelError> {
    parse_model(&read(path.as_ref())?)
}

/// Loads a model file without validating its contents.
pub fn load_model_raw(path: impl AsRef<Path>) -> Result<ModelFile, ModelError> {
    ModelFile::parse(&read(path.as_ref())?)
}

pub fn dump_model(m: &Model, path: impl AsRef<Path>) -> Result<(), ModelError> {
    let path = path.as_ref();
    std::fs::write(path, m.to_text()).map_err(|source| ModelError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn bundled_fixtures_round_trip_byte_for_byte() {
        for (name, text) in fixtures::FILES {
            let m = parse_model(text).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(m.to_text(), *text, "{name}");
            assert_eq!(parse_model(&m.to_text()).unwrap(), m, "{name}");
        }
    }

    #[test]
    fn l2_dump_has_two_line_tables() {
        let text = Model::Basic(fixtures::l2()).to_text();
        assert_eq!(text, "class basic\nsize 2\noplus\n0 1\n1 1\nneg\n1 0\n");
    }

    #[test]
    fn sections_are_order_insensitive_and_comments_ignored() {
        let text = "# two-chain\nsize 2\nclass lrpg\nres # residuum\n1 0\n1 1\n\nmult\n0 0\n0 1\nleq\n1 1\n0 1\n";
        let m = parse_model(text).unwrap();
        assert_eq!(m, Model::Lrpg(fixtures::boolean2_groupoid()));
    }

    #[test]
    fn short_mult_table_is_a_dimension_error() {
        let mut text = String::from("class lrpg\nsize 8\nleq\n");
        let g = fixtures::example1();
        for r in g.poset().rows() {
            let v: Vec<String> = r.iter().map(|&b| (b as u8).to_string()).collect();
            text += &(v.join(" ") + "\n");
        }
        text += "mult\n";
        for x in 0..7 {
            let v: Vec<String> = g.mult_table().row(x).iter().map(|v| v.to_string()).collect();
            text += &(v.join(" ") + "\n");
        }
        text += "res\n";
        match ModelFile::parse(&text).unwrap_err() {
            ModelError::Parse { line, reason } => {
                assert_eq!(line, 20);
                assert!(reason.starts_with("dimension mismatch"), "{reason}");
            }
            e => panic!("{e}"),
        }
        let wide = "class basic\nsize 2\noplus\n0 1 1\n1 1\nneg\n1 0\n";
        assert!(matches!(ModelFile::parse(wide), Err(ModelError::Parse { line: 4, .. })));
    }

    #[test]
    fn class_sections_are_enforced() {
        let missing = "class basic\nsize 2\noplus\n0 1\n1 1\n";
        assert!(matches!(ModelFile::parse(missing), Err(ModelError::Parse { .. })));
        let extra = "class basic\nsize 2\noplus\n0 1\n1 1\nneg\n1 0\nperp\n1 0\n";
        assert!(matches!(ModelFile::parse(extra), Err(ModelError::Parse { .. })));
        let range = "class basic\nsize 2\noplus\n0 2\n1 1\nneg\n1 0\n";
        assert!(matches!(ModelFile::parse(range), Err(ModelError::Parse { line: 4, .. })));
    }

    #[test]
    fn invalid_tables_fail_validation_but_load_raw() {
        let bad = "class basic\nsize 2\noplus\n1 1\n1 1\nneg\n1 0\n";
        assert!(matches!(
            parse_model(bad),
            Err(ModelError::Algebra(AlgebraError::AxiomFailed { axiom: 1, .. }))
        ));
        assert_eq!(ModelFile::parse(bad).unwrap().oplus.unwrap().get(0, 0), 1);
    }

    #[test]
    fn dump_and_load_through_the_filesystem() {
        let dir = std::env::temp_dir().join(format!("resgroupoid-io-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("ex1.lrpg");
        let m = Model::Lrpg(fixtures::example1());
        dump_model(&m, &path).unwrap();
        assert_eq!(load_model(&path).unwrap(), m);
        assert!(matches!(load_model(dir.join("missing")), Err(ModelError::Io { .. })));
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
