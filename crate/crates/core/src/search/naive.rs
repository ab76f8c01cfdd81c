//! Debug mode: every table over every poset, no pruning.

use super::canon::canonical_labelling;
use super::engine::candidate_posets;
use super::{recheck, relabel_model, run_parallel, CanonicalForm, Control, FoundModel, SearchError, SearchSpec};
use crate::algebra::{residuum_from_mult, validate_basic_algebra, validate_lrpg};
use crate::io::Model;
use crate::table::BinTable;
use std::collections::BTreeMap;

pub const MAX_NAIVE_LRPG: usize = 4;
pub const MAX_NAIVE_BASIC: usize = 3;

/// Calls `visit` with every vector in `0..base` of length `len`, in
/// lexicographic order, until it returns false.
fn odometer(len: usize, base: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    let mut v = vec![0; len];
    loop {
        if !visit(&v) {
            return;
        }
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            v[i] += 1;
            if v[i] < base {
                break;
            }
            v[i] = 0;
        }
    }
}

fn insert(out: &mut BTreeMap<CanonicalForm, Model>, ctl: &Control, m: Model) {
    let (form, perm) = canonical_labelling(&m);
    if !out.contains_key(&form) {
        out.insert(form, relabel_model(&m, &perm));
        ctl.record();
    }
}

pub(crate) fn search_lrpg(spec: &SearchSpec, ctl: &Control) -> Result<Vec<FoundModel>, SearchError> {
    let n = spec.size;
    if n > MAX_NAIVE_LRPG {
        return Err(SearchError::NaiveTooLarge { size: n, max: MAX_NAIVE_LRPG });
    }
    let posets = candidate_posets(spec, false, false)?;
    Control::bump(&ctl.posets_tried, posets.len() as u64);
    let top = n - 1;
    let results = run_parallel(spec.jobs, &posets, |p| {
        let mut out = BTreeMap::new();
        let mut leaves = 0u64;
        odometer(top * top, n, |cells| {
            leaves += 1;
            if leaves % 4096 == 0 && ctl.tick() {
                return false;
            }
            let mult = BinTable::from_fn(n, |x, y| match (x, y) {
                (x, y) if x == top => y,
                (x, y) if y == top => x,
                (x, y) => cells[x * top + y],
            });
            let Ok(res) = residuum_from_mult(p, &mult) else { return true };
            let Ok(g) = validate_lrpg(p.clone(), mult, res) else { return true };
            if recheck(spec, &g) {
                insert(&mut out, ctl, Model::Lrpg(g));
            }
            !ctl.stopped()
        });
        Control::bump(&ctl.leaves, leaves);
        out
    });
    Ok(results
        .into_iter()
        .flatten()
        .map(|(form, model)| FoundModel { form, model })
        .collect())
}

pub(crate) fn search_basic(spec: &SearchSpec, ctl: &Control) -> Result<Vec<FoundModel>, SearchError> {
    let n = spec.size;
    if n > MAX_NAIVE_BASIC {
        return Err(SearchError::NaiveTooLarge { size: n, max: MAX_NAIVE_BASIC });
    }
    let mut out = BTreeMap::new();
    let mut leaves = 0u64;
    odometer(n, n, |neg| {
        odometer(n * n, n, |cells| {
            leaves += 1;
            let oplus = BinTable::from_fn(n, |x, y| cells[x * n + y]);
            if let Ok(a) = validate_basic_algebra(oplus, neg.to_vec()) {
                let fits = spec.poset.as_ref().is_none_or(|p| {
                    super::canonical_poset(p) == super::canonical_poset(a.poset())
                });
                if fits && recheck(spec, &a) {
                    insert(&mut out, ctl, Model::Basic(a));
                }
            }
            !ctl.stopped()
        });
        !ctl.stopped()
    });
    Control::bump(&ctl.leaves, leaves);
    Ok(out.into_iter().map(|(form, model)| FoundModel { form, model }).collect())
}
