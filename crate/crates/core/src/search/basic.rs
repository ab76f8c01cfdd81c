//! Basic algebras as lattices with antitone involutions on principal filters.

use super::canon::canonical_form_within;
use super::engine::candidate_posets;
use super::posets::automorphisms;
use super::{recheck, run_parallel, CanonicalForm, Control, FoundModel, SearchError, SearchSpec};
use crate::construct::basic_from_filter_involutions;
use crate::io::Model;
use crate::order::{section_involutions, BoundedLattice, SectionInvolutionFamily, SectionKind};
use crate::table::Elem;
use std::collections::BTreeMap;

/// Every family of antitone involutions on the principal filters of `l`.
pub(crate) fn filter_families(l: &BoundedLattice) -> Vec<SectionInvolutionFamily> {
    let n = l.size();
    let per_section: Vec<Vec<Vec<Elem>>> = (0..n)
        .map(|a| section_involutions(l.poset(), &l.poset().up_set(a)))
        .collect();
    let mut out = Vec::new();
    let mut pick = vec![0usize; n];
    if per_section.iter().any(|s| s.is_empty()) {
        return out;
    }
    loop {
        let maps = (0..n)
            .map(|a| {
                per_section[a][pick[a]]
                    .iter()
                    .map(|&v| (v != usize::MAX).then_some(v))
                    .collect()
            })
            .collect();
        out.push(SectionInvolutionFamily::new(l.clone(), SectionKind::Filters, maps).expect("valid by construction"));
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            pick[i] += 1;
            if pick[i] < per_section[i].len() {
                break;
            }
            pick[i] = 0;
        }
    }
}

pub(crate) fn search(spec: &SearchSpec, ctl: &Control) -> Result<Vec<FoundModel>, SearchError> {
    let lattices: Vec<BoundedLattice> = candidate_posets(spec, true, true)?
        .into_iter()
        .map(|p| BoundedLattice::new(p).expect("filtered to lattices"))
        .collect();
    Control::bump(&ctl.posets_tried, lattices.len() as u64);
    let results = run_parallel(spec.jobs, &lattices, |l| {
        let auts = automorphisms(l.poset());
        let mut out: BTreeMap<CanonicalForm, Model> = BTreeMap::new();
        for fam in filter_families(l) {
            if ctl.tick() {
                break;
            }
            Control::bump(&ctl.leaves, 1);
            let Ok(a) = basic_from_filter_involutions(&fam) else {
                Control::bump(&ctl.rechecks_failed, 1);
                continue;
            };
            if !recheck(spec, &a) {
                continue;
            }
            let m = Model::Basic(a);
            let (form, perm) = canonical_form_within(&m, &auts);
            if !out.contains_key(&form) {
                out.insert(form, super::relabel_model(&m, &perm));
                ctl.record();
            }
        }
        out
    });
    Ok(results
        .into_iter()
        .flatten()
        .map(|(form, model)| FoundModel { form, model })
        .collect())
}
