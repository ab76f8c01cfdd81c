//! Named laws, kept in the same `name : formula` format as user law files.

use super::parser::parse_formula;
use super::syntax::Formula;
use super::LawError;
use std::sync::OnceLock;

pub const CATALOG_VERSION: u32 = 1;

const CATALOG_SOURCE: &str = r"
# basic algebra axioms
ba1 : x + 0 = x
ba2 : n(n(x)) = x
ba3 : n(n(x) + y) + y = n(n(y) + x) + x
ba4 : n(n(n(x + y) + y) + z) + (x + z) = n(0)
ba_top : (x + n(0) = n(0)) & (n(0) + x = n(0))

# left-residuated po-groupoids
lres : (x*y <= z) <=> (x <= z/y)
div : (x/y)*y = (y/x)*x
dneg : n(n(x)) = x
cap : (n(x)/y <= n(z)) <=> (z <= x*y)
jk : x*y = n(n(x)/y)
w : (x->y)->y = (y->x)->x
contraposition : x/y = n(y)/n(x)
skew_div : ((n(y)/n(x))*y <= x) & ((n(y)/n(x))*y <= y) & (((z <= x) & (z <= y)) => (z <= (n(y)/n(x))*y))
comm : x*y = y*x
assoc : (x*y)*z = x*(y*z)
comm_oplus : x + y = y + x
assoc_oplus : (x + y) + z = x + (y + z)
monotone : (x <= y) => (z + x <= z + y)
oml_quasi : (x <= y) => (y + x = y)

# consequences of left residuation
lemma_a : ((x/y)*y <= x) & (x <= (x*y)/y)
lemma_b : (x <= y) <=> (y/x = 1)
lemma_c : (x <= y) => (x*z <= y*z)
lemma_d : x*y <= y
lemma_e : (x/x = 1) & (1/x = 1) & (x/1 = x)
lemma_f : (x <= y) => (x/z <= y/z)
lemma_g : (x*0 = 0) & (0*x = 0)
lemma_h : (x \/ y)*z = x*z \/ y*z
lemma_i : (x /\ y)/z = x/z /\ y/z

# double negation together with w
lemma3_a : 1->x = x
lemma3_b : x <= y->x
lemma3_c : ((x <= y) <=> (n(y) <= n(x))) & ((x <= y) <=> (x->y = 1))
lemma3_d : (x <= y) => (y->z <= x->z)
lemma4_join : (x <= (x->y)->y) & (y <= (x->y)->y) & (((x <= z) & (y <= z)) => ((x->y)->y <= z))
lemma4_gamma : ((z <= x) => ((z <= x->z) & ((x->z)->z = x))) & (((z <= x) & (x <= y)) => (y->z <= x->z))
";

/// Parses a law file: one `name : formula` per line, `#` starts a comment.
pub fn parse_law_file(text: &str) -> Result<Vec<(String, Formula)>, LawError> {
    let mut out: Vec<(String, Formula)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((name, body)) = line.split_once(':') else {
            return Err(LawError::LawFile {
                line: line_no,
                reason: "expected `name : formula`".into(),
            });
        };
        let name = name.trim();
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(LawError::LawFile {
                line: line_no,
                reason: format!("invalid law name `{name}`"),
            });
        }
        if out.iter().any(|(n, _)| n == name) {
            return Err(LawError::LawFile {
                line: line_no,
                reason: format!("duplicate law `{name}`"),
            });
        }
        let f = parse_formula(body.trim()).map_err(|e| LawError::LawFile {
            line: line_no,
            reason: e.to_string(),
        })?;
        out.push((name.to_string(), f));
    }
    Ok(out)
}

fn catalog() -> &'static [(String, Formula)] {
    static CATALOG: OnceLock<Vec<(String, Formula)>> = OnceLock::new();
    CATALOG.get_or_init(|| parse_law_file(CATALOG_SOURCE).expect("built-in catalog parses"))
}

/// Looks up a built-in law by name.
pub fn catalog_law(name: &str) -> Result<Formula, LawError> {
    catalog()
        .iter()
        .find(|(n, _)| n == name)
        .map(|(_, f)| f.clone())
        .ok_or_else(|| LawError::UnknownLaw(name.to_string()))
}

pub fn catalog_names() -> Vec<&'static str> {
    catalog().iter().map(|(n, _)| n.as_str()).collect()
}

/// Resolves law names against user-supplied laws first, then the catalog.
#[derive(Clone, Debug, Default)]
pub struct LawBook {
    extra: Vec<(String, Formula)>,
}

impl LawBook {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_file(text: &str) -> Result<Self, LawError> {
        Ok(LawBook {
            extra: parse_law_file(text)?,
        })
    }

    pub fn resolve(&self, name: &str) -> Result<Formula, LawError> {
        match self.extra.iter().find(|(n, _)| n == name) {
            Some((_, f)) => Ok(f.clone()),
            None => catalog_law(name),
        }
    }
}
