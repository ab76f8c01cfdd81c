//! Exhaustive search for finite models up to isomorphism.
//!
//! Left-residuated groupoids are searched poset-first: for each bounded poset
//! (only lattices when `div` is required) every column `x -> x*y` is a
//! residuated map with `1*y = y`, so columns are enumerated independently and
//! then combined depth-first, with required laws evaluated three-valued on the
//! partial table after each column. Basic algebras are searched as lattices
//! with a family of antitone involutions on the principal filters.

mod basic;
mod canon;
mod engine;
mod naive;
mod posets;

pub use canon::{canonical_form, canonical_labelling, is_isomorphic, relabel_model, CanonicalForm};
pub use posets::{automorphisms, canonical_poset, enumerate_bounded_lattices, enumerate_bounded_posets};

use crate::io::{Model, ModelClass};
use crate::laws::{catalog_law, Formula, LawBook, LawError};
use crate::order::FinitePoset;
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};
use thiserror::Error;

pub const DEFAULT_BUDGET: Duration = Duration::from_secs(600);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("size {0} is outside the supported range 2..=8")]
    SizeOutOfRange(usize),
    #[error("cannot compare a {0} model with a {1} model")]
    ClassMismatch(ModelClass, ModelClass),
    #[error(transparent)]
    Law(#[from] LawError),
    #[error("search spec line {line}: {reason}")]
    SpecFile { line: usize, reason: String },
    #[error("fixed poset has {got} elements, expected {expected}")]
    PosetSize { expected: usize, got: usize },
    #[error("exhaustive table enumeration is limited to size {max}, got {size}")]
    NaiveTooLarge { size: usize, max: usize },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SearchClass {
    Lrpg,
    Basic,
}

impl FromStr for SearchClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "lrpg" => Ok(SearchClass::Lrpg),
            "basic" => Ok(SearchClass::Basic),
            _ => Err(format!("unknown search class `{s}` (expected lrpg or basic)")),
        }
    }
}

impl fmt::Display for SearchClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchClass::Lrpg => "lrpg",
            SearchClass::Basic => "basic",
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SearchMode {
    /// Column enumeration with law propagation.
    Propagate,
    /// Every operation table over every poset, checked at the leaves.
    Naive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedLaw {
    pub name: String,
    pub formula: Formula,
}

#[derive(Clone, Debug)]
pub struct SearchSpec {
    pub size: usize,
    pub class: SearchClass,
    pub require: Vec<NamedLaw>,
    pub forbid: Vec<NamedLaw>,
    /// Search only this poset instead of enumerating all of them.
    pub poset: Option<FinitePoset>,
    pub limit: Option<usize>,
    pub budget: Option<Duration>,
    pub jobs: usize,
    pub mode: SearchMode,
    /// With `div` and one of `dneg`, `jk` required, skip posets without an
    /// antitone involution.
    pub involution_prefilter: bool,
}

fn resolve(book: &LawBook, names: &[&str]) -> Result<Vec<NamedLaw>, SearchError> {
    names
        .iter()
        .map(|&name| {
            Ok(NamedLaw {
                name: name.to_string(),
                formula: book.resolve(name)?,
            })
        })
        .collect()
}

impl SearchSpec {
    pub fn new(size: usize, class: SearchClass) -> Self {
        SearchSpec {
            size,
            class,
            require: Vec::new(),
            forbid: Vec::new(),
            poset: None,
            limit: None,
            budget: Some(DEFAULT_BUDGET),
            jobs: 1,
            mode: SearchMode::Propagate,
            involution_prefilter: true,
        }
    }

    /// Adds catalog laws to the required list.
    pub fn require(mut self, names: &[&str]) -> Result<Self, SearchError> {
        self.require.extend(resolve(&LawBook::new(), names)?);
        Ok(self)
    }

    /// Adds catalog laws to the forbidden list.
    pub fn forbid(mut self, names: &[&str]) -> Result<Self, SearchError> {
        self.forbid.extend(resolve(&LawBook::new(), names)?);
        Ok(self)
    }

    pub fn mode(mut self, mode: SearchMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn budget(mut self, budget: Option<Duration>) -> Self {
        self.budget = budget;
        self
    }

    pub fn jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }

    fn requires(&self, name: &str) -> bool {
        let target = catalog_law(name).ok();
        self.require
            .iter()
            .any(|l| l.name == name || Some(&l.formula) == target.as_ref())
    }

    /// Parses `key = value` lines: `size`, `class`, `require`, `forbid`
    /// (comma-separated law names), `poset` (model file, relative to
    /// `base`), `limit`, `budget` (seconds, `none` for unlimited), `jobs`,
    /// `mode` (`propagate` or `naive`).
    pub fn parse(text: &str, book: &LawBook, base: Option<&Path>) -> Result<Self, SearchError> {
        let mut spec = SearchSpec::new(0, SearchClass::Lrpg);
        let mut have_size = false;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let err = |reason: String| SearchError::SpecFile { line, reason };
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (key, value) = body
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| err("expected `key = value`".into()))?;
            let list = || -> Vec<&str> { value.split(',').map(str::trim).filter(|s| !s.is_empty()).collect() };
            let number = |what: &str| value.parse::<usize>().map_err(|_| err(format!("invalid {what} `{value}`")));
            match key {
                "size" => {
                    spec.size = number("size")?;
                    have_size = true;
                }
                "class" => spec.class = value.parse().map_err(err)?,
                "require" => spec.require.extend(resolve(book, &list()).map_err(|e| err(e.to_string()))?),
                "forbid" => spec.forbid.extend(resolve(book, &list()).map_err(|e| err(e.to_string()))?),
                "limit" => spec.limit = Some(number("limit")?),
                "jobs" => spec.jobs = number("jobs")?.max(1),
                "budget" => {
                    spec.budget = match value {
                        "none" => None,
                        _ => Some(Duration::from_secs_f64(
                            value
                                .parse::<f64>()
                                .ok()
                                .filter(|s| *s > 0.0)
                                .ok_or_else(|| err(format!("invalid budget `{value}`")))?,
                        )),
                    }
                }
                "mode" => {
                    spec.mode = match value {
                        "propagate" => SearchMode::Propagate,
                        "naive" => SearchMode::Naive,
                        _ => return Err(err(format!("unknown mode `{value}`"))),
                    }
                }
                "poset" => {
                    let path = base.map_or_else(|| Path::new(value).to_path_buf(), |b| b.join(value));
                    let m = crate::io::load_model(&path).map_err(|e| err(e.to_string()))?;
                    spec.poset = Some(model_poset(&m).clone());
                }
                _ => return Err(err(format!("unknown key `{key}`"))),
            }
        }
        if !have_size {
            return Err(SearchError::SpecFile {
                line: text.lines().count() + 1,
                reason: "missing `size`".into(),
            });
        }
        Ok(spec)
    }
}

/// The order of any model class.
pub fn model_poset(m: &Model) -> &FinitePoset {
    match m {
        Model::Basic(a) => a.poset(),
        Model::Lrpg(g) => g.poset(),
        Model::Cpg(c) => c.poset(),
        Model::Lattice(l) => l.poset(),
        Model::Ortho(o) => o.lattice().poset(),
        Model::Involutions(f) => f.lattice().poset(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoundModel {
    pub form: CanonicalForm,
    /// The model in its canonical labelling.
    pub model: Model,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub posets_tried: u64,
    /// Partial tables rejected before reaching a leaf.
    pub pruned: u64,
    /// Complete tables examined.
    pub leaves: u64,
    pub emitted: u64,
    /// Emitted candidates rejected by the independent re-check; always 0
    /// unless pruning is unsound.
    pub rechecks_failed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    Budget,
    Limit,
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub models: Vec<FoundModel>,
    pub stats: SearchStats,
    /// False if the search stopped early; `stop` says why.
    pub exhausted: bool,
    pub stop: Option<StopReason>,
    pub elapsed: Duration,
}

impl SearchResult {
    pub fn forms(&self) -> Vec<CanonicalForm> {
        self.models.iter().map(|m| m.form.clone()).collect()
    }
}

/// Shared counters and stop conditions for one search.
pub(crate) struct Control {
    start: Instant,
    budget: Option<Duration>,
    limit: Option<usize>,
    stopped: AtomicBool,
    budget_hit: AtomicBool,
    found: AtomicUsize,
    pub posets_tried: AtomicU64,
    pub pruned: AtomicU64,
    pub leaves: AtomicU64,
    pub rechecks_failed: AtomicU64,
}

impl Control {
    fn new(spec: &SearchSpec) -> Self {
        Control {
            start: Instant::now(),
            budget: spec.budget,
            limit: spec.limit,
            stopped: AtomicBool::new(false),
            budget_hit: AtomicBool::new(false),
            found: AtomicUsize::new(0),
            posets_tried: AtomicU64::new(0),
            pruned: AtomicU64::new(0),
            leaves: AtomicU64::new(0),
            rechecks_failed: AtomicU64::new(0),
        }
    }

    pub fn stopped(&self) -> bool {
        self.stopped.load(Ordering::Relaxed)
    }

    /// Checks the clock; call periodically.
    pub fn tick(&self) -> bool {
        if let Some(b) = self.budget {
            if self.start.elapsed() > b {
                self.budget_hit.store(true, Ordering::Relaxed);
                self.stopped.store(true, Ordering::Relaxed);
            }
        }
        self.stopped()
    }

    /// Records a new model; returns false once the limit is reached.
    pub fn record(&self) -> bool {
        let k = self.found.fetch_add(1, Ordering::Relaxed) + 1;
        if self.limit.is_some_and(|l| k >= l) {
            self.stopped.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    fn bump(counter: &AtomicU64, by: u64) {
        counter.fetch_add(by, Ordering::Relaxed);
    }
}

pub(crate) fn run_parallel<U: Sync, R: Send>(jobs: usize, units: &[U], f: impl Fn(&U) -> R + Sync + Send) -> Vec<R> {
    if jobs <= 1 {
        return units.iter().map(f).collect();
    }
    use rayon::prelude::*;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    pool.install(|| units.par_iter().map(f).collect())
}

/// Runs a search. Models are returned sorted by canonical form, each in its
/// canonical labelling and re-verified against every required and forbidden
/// law.
pub fn search_models(spec: &SearchSpec) -> Result<SearchResult, SearchError> {
    if !(posets::MIN_SIZE..=posets::MAX_SIZE).contains(&spec.size) {
        return Err(SearchError::SizeOutOfRange(spec.size));
    }
    if let Some(p) = &spec.poset {
        if p.size() != spec.size {
            return Err(SearchError::PosetSize {
                expected: spec.size,
                got: p.size(),
            });
        }
    }
    let ctl = Control::new(spec);
    let mut models = match (spec.class, spec.mode) {
        (SearchClass::Lrpg, SearchMode::Propagate) => engine::search(spec, &ctl)?,
        (SearchClass::Lrpg, SearchMode::Naive) => naive::search_lrpg(spec, &ctl)?,
        (SearchClass::Basic, SearchMode::Propagate) => basic::search(spec, &ctl)?,
        (SearchClass::Basic, SearchMode::Naive) => naive::search_basic(spec, &ctl)?,
    };
    models.sort_by(|a, b| a.form.cmp(&b.form));
    models.dedup_by(|a, b| a.form == b.form);
    let budget_hit = ctl.budget_hit.load(Ordering::Relaxed);
    let limit_hit = ctl.stopped() && !budget_hit;
    if let (true, Some(l)) = (limit_hit, spec.limit) {
        models.truncate(l);
    }
    let stop = if budget_hit {
        Some(StopReason::Budget)
    } else if limit_hit {
        Some(StopReason::Limit)
    } else {
        None
    };
    Ok(SearchResult {
        stats: SearchStats {
            posets_tried: ctl.posets_tried.load(Ordering::Relaxed),
            pruned: ctl.pruned.load(Ordering::Relaxed),
            leaves: ctl.leaves.load(Ordering::Relaxed),
            emitted: models.len() as u64,
            rechecks_failed: ctl.rechecks_failed.load(Ordering::Relaxed),
        },
        models,
        exhausted: stop.is_none(),
        stop,
        elapsed: ctl.start.elapsed(),
    })
}

/// Independent re-check of an emitted model against the spec's laws.
pub(crate) fn recheck(spec: &SearchSpec, m: &dyn crate::laws::Interpretation) -> bool {
    use crate::laws::check_formula;
    spec.require
        .iter()
        .all(|l| check_formula(&l.formula, m).is_ok_and(|v| v.holds))
        && spec
            .forbid
            .iter()
            .all(|l| check_formula(&l.formula, m).is_ok_and(|v| !v.holds))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_file() {
        let text = "# counterexample hunt\nsize = 8\nclass = lrpg\nrequire = div, dneg\nforbid = jk\nbudget = 30\njobs = 2\n";
        let s = SearchSpec::parse(text, &LawBook::new(), None).unwrap();
        assert_eq!(s.size, 8);
        assert_eq!(s.require.iter().map(|l| l.name.as_str()).collect::<Vec<_>>(), ["div", "dneg"]);
        assert_eq!(s.forbid[0].name, "jk");
        assert_eq!(s.budget, Some(Duration::from_secs(30)));
        assert_eq!(s.jobs, 2);
        assert!(matches!(
            SearchSpec::parse("size = 3\nrequire = nosuch\n", &LawBook::new(), None),
            Err(SearchError::SpecFile { line: 2, .. })
        ));
        assert!(matches!(
            SearchSpec::parse("class = basic\n", &LawBook::new(), None),
            Err(SearchError::SpecFile { .. })
        ));
    }

    #[test]
    fn size_checks() {
        let s = SearchSpec::new(9, SearchClass::Lrpg);
        assert_eq!(search_models(&s).unwrap_err(), SearchError::SizeOutOfRange(9));
    }
}
