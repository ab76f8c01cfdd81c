//! Canonical forms: the lexicographically least encoding of a model over all
//! relabellings that fix `0` and `1`.

use super::SearchError;
use crate::io::{Model, ModelClass};
use crate::order::FinitePoset;
use crate::table::{BinTable, Elem};
use itertools::Itertools;
use std::fmt;

const OFF: u8 = u8::MAX;

/// Relation and operation tables of a model, in encoding order.
pub(crate) enum Part<'a> {
    Relation(&'a FinitePoset),
    Binary(&'a BinTable),
    Unary(&'a [Elem]),
    Family(&'a [Vec<Option<Elem>>]),
}

/// Appends the encoding of `parts` relabelled by `perm` (old -> new), with
/// `inv` its inverse.
pub(crate) fn encode_into(out: &mut Vec<u8>, parts: &[Part<'_>], perm: &[Elem], inv: &[Elem]) {
    let n = perm.len();
    for part in parts {
        match part {
            // Encoded as "not below" so that lower labels go to elements with
            // larger up-sets.
            Part::Relation(p) => {
                for i in 0..n {
                    for j in 0..n {
                        out.push(!p.leq(inv[i], inv[j]) as u8);
                    }
                }
            }
            Part::Binary(t) => {
                for i in 0..n {
                    for j in 0..n {
                        out.push(perm[t.get(inv[i], inv[j])] as u8);
                    }
                }
            }
            Part::Unary(t) => out.extend((0..n).map(|i| perm[t[inv[i]]] as u8)),
            Part::Family(f) => {
                for i in 0..n {
                    for j in 0..n {
                        out.push(f[inv[i]][inv[j]].map_or(OFF, |v| perm[v] as u8));
                    }
                }
            }
        }
    }
}

pub(crate) fn inverse(perm: &[Elem]) -> Vec<Elem> {
    let mut inv = vec![0; perm.len()];
    for (x, &y) in perm.iter().enumerate() {
        inv[y] = x;
    }
    inv
}

/// Permutations of `0..n` fixing `0` and `n - 1`, old -> new.
pub(crate) fn bounded_permutations(n: usize) -> impl Iterator<Item = Vec<Elem>> {
    let interior = n.saturating_sub(2);
    (1..n.saturating_sub(1)).permutations(interior).map(move |mid| {
        let mut perm = Vec::with_capacity(n);
        perm.push(0);
        perm.extend(mid);
        if n > 1 {
            perm.push(n - 1);
        }
        perm
    })
}

/// Least encoding over `perms`, with a permutation attaining it.
pub(crate) fn minimise(parts: &[Part<'_>], perms: impl IntoIterator<Item = Vec<Elem>>) -> (Vec<u8>, Vec<Elem>) {
    let mut best: Option<(Vec<u8>, Vec<Elem>)> = None;
    let mut buf = Vec::new();
    for perm in perms {
        buf.clear();
        encode_into(&mut buf, parts, &perm, &inverse(&perm));
        if best.as_ref().is_none_or(|(b, _)| buf < *b) {
            best = Some((buf.clone(), perm));
        }
    }
    best.expect("at least one permutation")
}

/// Canonical encoding of a model; equal forms mean isomorphic models.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    class: ModelClass,
    size: usize,
    bytes: Vec<u8>,
}

impl CanonicalForm {
    pub(crate) fn new(class: ModelClass, size: usize, bytes: Vec<u8>) -> Self {
        CanonicalForm { class, size, bytes }
    }

    pub fn class(&self) -> ModelClass {
        self.class
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    /// Short hexadecimal digest, stable across runs.
    pub fn digest(&self) -> String {
        // FNV-1a, 64 bit.
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for &b in self.class.name().as_bytes().iter().chain(&self.bytes) {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        format!("{h:016x}")
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({} {} {})", self.class, self.size, self.digest())
    }
}

pub(crate) fn with_parts<R>(m: &Model, k: impl FnOnce(&[Part<'_>]) -> R) -> R {
    match m {
        Model::Basic(a) => k(&[
            Part::Relation(a.poset()),
            Part::Binary(a.oplus_table()),
            Part::Unary(a.neg_table()),
        ]),
        Model::Lrpg(g) => k(&[
            Part::Relation(g.poset()),
            Part::Binary(g.mult_table()),
            Part::Binary(g.res_table()),
        ]),
        Model::Cpg(c) => k(&[
            Part::Relation(c.poset()),
            Part::Binary(c.mult_table()),
            Part::Binary(c.imp_table()),
        ]),
        Model::Lattice(l) => k(&[Part::Relation(l.poset())]),
        Model::Ortho(o) => k(&[Part::Relation(o.lattice().poset()), Part::Unary(o.perp_table())]),
        Model::Involutions(f) => k(&[Part::Relation(f.lattice().poset()), Part::Family(f.maps())]),
    }
}

/// Canonical form together with a relabelling (old -> new) that attains it.
pub fn canonical_labelling(m: &Model) -> (CanonicalForm, Vec<Elem>) {
    let n = m.size();
    let (bytes, perm) = with_parts(m, |parts| minimise(parts, bounded_permutations(n)));
    (CanonicalForm::new(m.class(), n, bytes), perm)
}

pub fn canonical_form(m: &Model) -> CanonicalForm {
    canonical_labelling(m).0
}

/// Canonical form computed over a subset of relabellings known to contain
/// every permutation that minimises the order part, such as the
/// automorphisms of an already canonical poset.
pub(crate) fn canonical_form_within(m: &Model, perms: &[Vec<Elem>]) -> (CanonicalForm, Vec<Elem>) {
    let (bytes, perm) = with_parts(m, |parts| minimise(parts, perms.iter().cloned()));
    (CanonicalForm::new(m.class(), m.size(), bytes), perm)
}

pub fn is_isomorphic(a: &Model, b: &Model) -> Result<bool, SearchError> {
    if a.class() != b.class() {
        return Err(SearchError::ClassMismatch(a.class(), b.class()));
    }
    Ok(a.size() == b.size() && canonical_form(a) == canonical_form(b))
}

/// The model transported along `perm` (old -> new).
pub fn relabel_model(m: &Model, perm: &[Elem]) -> Model {
    let inv = inverse(perm);
    let mut f = m.to_file();
    let n = f.size;
    let bin = |t: &BinTable| t.relabel(perm);
    let un = |t: &[Elem]| crate::table::relabel_unary(t, perm);
    f.leq = f
        .leq
        .map(|rows| (0..n).map(|i| (0..n).map(|j| rows[inv[i]][inv[j]]).collect()).collect());
    f.mult = f.mult.as_ref().map(bin);
    f.res = f.res.as_ref().map(bin);
    f.imp = f.imp.as_ref().map(bin);
    f.oplus = f.oplus.as_ref().map(bin);
    f.neg = f.neg.as_deref().map(un);
    f.perp = f.perp.as_deref().map(un);
    let fam = |fam: &Vec<Vec<Option<Elem>>>| -> Vec<Vec<Option<Elem>>> {
        (0..n)
            .map(|i| (0..n).map(|j| fam[inv[i]][inv[j]].map(|v| perm[v])).collect())
            .collect()
    };
    f.gamma = f.gamma.as_ref().map(fam);
    f.delta = f.delta.as_ref().map(fam);
    f.validate().expect("relabelling preserves validity")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn relabelled_models_share_a_form() {
        let m = Model::Lrpg(fixtures::example1());
        // a<->b, c<->d, e<->f
        let swapped = relabel_model(&m, &[0, 2, 1, 4, 3, 6, 5, 7]);
        assert_ne!(swapped, m);
        assert!(is_isomorphic(&m, &swapped).unwrap());
        let (form, perm) = canonical_labelling(&m);
        assert_eq!(canonical_form(&relabel_model(&m, &perm)), form);
    }

    #[test]
    fn l3_is_not_heyting3() {
        let l3 = Model::Lrpg(fixtures::l3_groupoid());
        let h3 = Model::Lrpg(fixtures::heyting3());
        assert!(!is_isomorphic(&l3, &h3).unwrap());
        assert!(is_isomorphic(&l3, &l3).unwrap());
        assert!(matches!(
            is_isomorphic(&l3, &Model::Basic(fixtures::l3())),
            Err(SearchError::ClassMismatch(..))
        ));
    }

    #[test]
    fn permutation_count() {
        assert_eq!(bounded_permutations(2).count(), 1);
        assert_eq!(bounded_permutations(5).count(), 6);
        assert!(bounded_permutations(6).all(|p| p[0] == 0 && p[5] == 5));
    }
}
