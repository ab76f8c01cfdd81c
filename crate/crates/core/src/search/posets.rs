//! Bounded posets and lattices up to isomorphism.

use super::canon::{bounded_permutations, minimise, Part};
use super::SearchError;
use crate::order::{BoundedLattice, FinitePoset};
use crate::table::Elem;
use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

pub const MIN_SIZE: usize = 2;
pub const MAX_SIZE: usize = 8;

pub(crate) fn poset_code(p: &FinitePoset) -> (Vec<u8>, Vec<Elem>) {
    minimise(&[Part::Relation(p)], bounded_permutations(p.size()))
}

/// The isomorphic copy of `p` with the least order encoding.
pub fn canonical_poset(p: &FinitePoset) -> FinitePoset {
    p.relabel(&poset_code(p).1)
}

/// Relabellings (old -> new) fixing `0` and `1` that preserve the order.
pub fn automorphisms(p: &FinitePoset) -> Vec<Vec<Elem>> {
    let n = p.size();
    bounded_permutations(n)
        .filter(|perm| (0..n).all(|x| (0..n).all(|y| p.leq(x, y) == p.leq(perm[x], perm[y]))))
        .collect()
}

/// Adds a new maximal interior element above each down-closed subset of the
/// interior.
fn extensions(p: &FinitePoset) -> Vec<FinitePoset> {
    let m = p.size();
    let interior: Vec<Elem> = (1..m - 1).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << interior.len()) {
        let below = |x: Elem| x == 0 || (x < m - 1 && mask & (1 << (x - 1)) != 0);
        let closed = interior
            .iter()
            .all(|&x| !below(x) || interior.iter().all(|&u| !p.leq(u, x) || below(u)));
        if !closed {
            continue;
        }
        // Old top moves to index m; the new element takes index m - 1.
        let n = m + 1;
        let old = |x: Elem| if x == m - 1 { n - 1 } else { x };
        let mut rows = vec![vec![false; n]; n];
        for x in 0..m {
            for y in 0..m {
                rows[old(x)][old(y)] = p.leq(x, y);
            }
        }
        let new = m - 1;
        rows[new][new] = true;
        rows[new][n - 1] = true;
        for (x, row) in rows.iter_mut().enumerate().take(m - 1) {
            if below(x) {
                row[new] = true;
            }
        }
        out.push(FinitePoset::new(&rows).expect("extension of a bounded poset"));
    }
    out
}

fn compute_posets(n: usize) -> Vec<FinitePoset> {
    if n == MIN_SIZE {
        return vec![FinitePoset::chain(2)];
    }
    let mut reps: BTreeMap<Vec<u8>, FinitePoset> = BTreeMap::new();
    for p in bounded_posets_cached(n - 1).iter() {
        for q in extensions(p) {
            let (code, perm) = poset_code(&q);
            reps.entry(code).or_insert_with(|| q.relabel(&perm));
        }
    }
    reps.into_values().collect()
}

fn bounded_posets_cached(n: usize) -> std::sync::Arc<Vec<FinitePoset>> {
    static CACHE: OnceLock<Mutex<BTreeMap<usize, std::sync::Arc<Vec<FinitePoset>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&n) {
        return v.clone();
    }
    let v = std::sync::Arc::new(compute_posets(n));
    cache.lock().unwrap().insert(n, v.clone());
    v
}

fn check_size(n: usize) -> Result<(), SearchError> {
    if (MIN_SIZE..=MAX_SIZE).contains(&n) {
        Ok(())
    } else {
        Err(SearchError::SizeOutOfRange(n))
    }
}

/// One canonical representative per isomorphism class of bounded posets with
/// `n` elements, ordered by canonical encoding.
pub fn enumerate_bounded_posets(n: usize) -> Result<Vec<FinitePoset>, SearchError> {
    check_size(n)?;
    Ok(bounded_posets_cached(n).to_vec())
}

/// The lattices among [`enumerate_bounded_posets`].
pub fn enumerate_bounded_lattices(n: usize) -> Result<Vec<BoundedLattice>, SearchError> {
    Ok(enumerate_bounded_posets(n)?
        .into_iter()
        .filter_map(|p| BoundedLattice::new(p).ok())
        .collect())
}
