//! Finite bounded posets, lattices, ortholattices and families of antitone
//! involutions on principal filters or ideals.
//!
//! Elements are dense indices `0..n`. The bottom is always `0` and the top
//! always `n - 1`; the order is kept as a full `n x n` relation so `leq` is a
//! single lookup.

use crate::table::{BinTable, Elem};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("the universe is empty")]
    Empty,
    #[error("relation table is not square (row {row} has {len} entries, expected {expected})")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("not reflexive at {0}")]
    NotReflexive(Elem),
    #[error("not antisymmetric: {0} <= {1} and {1} <= {0}")]
    NotAntisymmetric(Elem, Elem),
    #[error("not transitive: {0} <= {1} <= {2} but not {0} <= {2}")]
    NotTransitive(Elem, Elem, Elem),
    #[error("{bound} bound violated at {x}")]
    BoundsViolated { bound: Bound, x: Elem },
    #[error("{0} and {1} have no greatest lower bound")]
    NoMeet(Elem, Elem),
    #[error("{0} and {1} have no least upper bound")]
    NoJoin(Elem, Elem),
    #[error("map on section {a} sends {x} outside the section")]
    NotIntoSection { a: Elem, x: Elem },
    #[error("map on section {a} is not antitone: {x} <= {y} but the images are not reversed")]
    NotAntitone { a: Elem, x: Elem, y: Elem },
    #[error("map on section {a} is not an involution at {x}")]
    NotInvolutive { a: Elem, x: Elem },
    #[error("section family has {got} maps of length {len}, expected {n} maps of length {n}")]
    FamilyShape { got: usize, len: usize, n: usize },
    #[error("perp table has {got} entries, expected {n}")]
    PerpShape { got: usize, n: usize },
    #[error("not an ortholattice: {0}")]
    NotOrtholattice(OrthoFailure),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Bottom,
    Top,
}

impl std::fmt::Display for Bound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Bound::Bottom => "bottom",
            Bound::Top => "top",
        })
    }
}

/// A validated finite bounded poset on `0..n` with bottom `0` and top `n - 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FinitePoset {
    n: usize,
    leq: Vec<bool>,
}

/// Checks the poset axioms on a full relation table and the bound convention.
/// Violations are reported in lexicographic witness order.
pub fn validate_finite_poset(rows: &[Vec<bool>]) -> Result<FinitePoset, OrderError> {
    let n = rows.len();
    if n == 0 {
        return Err(OrderError::Empty);
    }
    for (row, r) in rows.iter().enumerate() {
        if r.len() != n {
            return Err(OrderError::NotSquare { row, len: r.len(), expected: n });
        }
    }
    let leq = |x: usize, y: usize| rows[x][y];
    if let Some(x) = (0..n).find(|&x| !leq(x, x)) {
        return Err(OrderError::NotReflexive(x));
    }
    for x in 0..n {
        for y in x + 1..n {
            if leq(x, y) && leq(y, x) {
                return Err(OrderError::NotAntisymmetric(x, y));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if !leq(x, y) {
                continue;
            }
            for z in 0..n {
                if leq(y, z) && !leq(x, z) {
                    return Err(OrderError::NotTransitive(x, y, z));
                }
            }
        }
    }
    if let Some(x) = (0..n).find(|&x| !leq(0, x)) {
        return Err(OrderError::BoundsViolated { bound: Bound::Bottom, x });
    }
    if let Some(x) = (0..n).find(|&x| !leq(x, n - 1)) {
        return Err(OrderError::BoundsViolated { bound: Bound::Top, x });
    }
    Ok(FinitePoset {
        n,
        leq: rows.iter().flatten().copied().collect(),
    })
}

impl FinitePoset {
    pub fn new(rows: &[Vec<bool>]) -> Result<Self, OrderError> {
        validate_finite_poset(rows)
    }

    /// Reflexive-transitive closure of the given strict relations, then validated.
    pub fn from_covers(n: usize, covers: &[(Elem, Elem)]) -> Result<Self, OrderError> {
        let mut rows = vec![vec![false; n]; n];
        for (x, row) in rows.iter_mut().enumerate() {
            row[x] = true;
        }
        for &(a, b) in covers {
            rows[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if rows[i][k] {
                    for j in 0..n {
                        if rows[k][j] {
                            rows[i][j] = true;
                        }
                    }
                }
            }
        }
        Self::new(&rows)
    }

    pub fn chain(n: usize) -> Self {
        FinitePoset {
            n,
            leq: (0..n * n).map(|i| i / n <= i % n).collect(),
        }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn bottom(&self) -> Elem {
        0
    }

    #[inline]
    pub fn top(&self) -> Elem {
        self.n - 1
    }

    #[inline]
    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.leq[x * self.n + y]
    }

    #[inline]
    pub fn lt(&self, x: Elem, y: Elem) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn rows(&self) -> Vec<Vec<bool>> {
        (0..self.n)
            .map(|x| (0..self.n).map(|y| self.leq(x, y)).collect())
            .collect()
    }

    pub fn relation(&self) -> &[bool] {
        &self.leq
    }

    /// Principal filter `[a)`.
    pub fn up_set(&self, a: Elem) -> Vec<Elem> {
        (0..self.n).filter(|&x| self.leq(a, x)).collect()
    }

    /// Principal ideal `(a]`.
    pub fn down_set(&self, a: Elem) -> Vec<Elem> {
        (0..self.n).filter(|&x| self.leq(x, a)).collect()
    }

    /// Hasse diagram covers `(x, y)` with `x < y` and nothing strictly between.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for x in 0..self.n {
            for y in 0..self.n {
                if self.lt(x, y) && !(0..self.n).any(|z| self.lt(x, z) && self.lt(z, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Greatest element of `set`, if it has one.
    pub fn max_of(&self, set: &[Elem]) -> Option<Elem> {
        set.iter()
            .copied()
            .find(|&m| set.iter().all(|&s| self.leq(s, m)))
    }

    /// Least element of `set`, if it has one.
    pub fn min_of(&self, set: &[Elem]) -> Option<Elem> {
        set.iter()
            .copied()
            .find(|&m| set.iter().all(|&s| self.leq(m, s)))
    }

    /// Maximal elements of `set`, ascending.
    pub fn maximal_elements(&self, set: &[Elem]) -> Vec<Elem> {
        set.iter()
            .copied()
            .filter(|&m| !set.iter().any(|&s| self.lt(m, s)))
            .collect()
    }

    /// Least upper bound of an arbitrary subset (the empty join is the bottom).
    pub fn join_of(&self, set: &[Elem]) -> Option<Elem> {
        let ubs: Vec<Elem> = (0..self.n)
            .filter(|&u| set.iter().all(|&s| self.leq(s, u)))
            .collect();
        self.min_of(&ubs)
    }

    /// Greatest lower bound of an arbitrary subset (the empty meet is the top).
    pub fn meet_of(&self, set: &[Elem]) -> Option<Elem> {
        let lbs: Vec<Elem> = (0..self.n)
            .filter(|&l| set.iter().all(|&s| self.leq(l, s)))
            .collect();
        self.max_of(&lbs)
    }

    /// The poset transported along `perm` (old label -> new label). `perm` must
    /// fix `0` and `n - 1`.
    pub fn relabel(&self, perm: &[Elem]) -> Self {
        let mut leq = vec![false; self.n * self.n];
        for x in 0..self.n {
            for y in 0..self.n {
                leq[perm[x] * self.n + perm[y]] = self.leq(x, y);
            }
        }
        FinitePoset { n: self.n, leq }
    }

    pub fn is_lattice(&self) -> bool {
        meets_joins(self).is_ok()
    }

    pub fn is_antitone_involution(&self, f: &[Elem]) -> bool {
        f.len() == self.n
            && (0..self.n).all(|x| f[x] < self.n && f[f[x]] == x)
            && (0..self.n).all(|x| (0..self.n).all(|y| !self.leq(x, y) || self.leq(f[y], f[x])))
    }

    /// All antitone involutions of the poset, in lexicographic order of their tables.
    pub fn antitone_involutions(&self) -> Vec<Vec<Elem>> {
        let all: Vec<Elem> = (0..self.n).collect();
        section_involutions(self, &all)
    }
}

/// All antitone involutions of the subposet on `section` (ascending indices),
/// as full-length tables with `usize::MAX` off the section. Lexicographic order.
pub(crate) fn section_involutions(p: &FinitePoset, section: &[Elem]) -> Vec<Vec<Elem>> {
    fn go(p: &FinitePoset, section: &[Elem], f: &mut Vec<Elem>, out: &mut Vec<Vec<Elem>>) {
        let Some(&x) = section.iter().find(|&&x| f[x] == usize::MAX) else {
            out.push(f.clone());
            return;
        };
        for &v in section {
            if f[v] != usize::MAX && v != x {
                continue;
            }
            f[x] = v;
            f[v] = x;
            let ok = [x, v].iter().all(|&a| {
                section.iter().all(|&b| {
                    f[b] == usize::MAX
                        || ((!p.leq(a, b) || p.leq(f[b], f[a])) && (!p.leq(b, a) || p.leq(f[a], f[b])))
                })
            });
            if ok {
                go(p, section, f, out);
            }
            f[x] = usize::MAX;
            f[v] = usize::MAX;
        }
    }
    let mut f = vec![usize::MAX; p.size()];
    let mut out = Vec::new();
    go(p, section, &mut f, &mut out);
    out
}

/// A bounded lattice: a poset together with its meet and join tables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundedLattice {
    poset: FinitePoset,
    meet: BinTable,
    join: BinTable,
}

/// Computes meet and join tables by scanning lower and upper bound sets.
pub fn meets_joins(p: &FinitePoset) -> Result<BoundedLattice, OrderError> {
    let n = p.size();
    let mut meet = BinTable::from_fn(n, |_, _| 0);
    let mut join = BinTable::from_fn(n, |_, _| 0);
    for x in 0..n {
        for y in 0..n {
            meet.set(x, y, p.meet_of(&[x, y]).ok_or(OrderError::NoMeet(x, y))?);
            join.set(x, y, p.join_of(&[x, y]).ok_or(OrderError::NoJoin(x, y))?);
        }
    }
    Ok(BoundedLattice {
        poset: p.clone(),
        meet,
        join,
    })
}

impl BoundedLattice {
    pub fn new(poset: FinitePoset) -> Result<Self, OrderError> {
        meets_joins(&poset)
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn size(&self) -> usize {
        self.poset.size()
    }

    #[inline]
    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.poset.leq(x, y)
    }

    #[inline]
    pub fn meet(&self, x: Elem, y: Elem) -> Elem {
        self.meet.get(x, y)
    }

    #[inline]
    pub fn join(&self, x: Elem, y: Elem) -> Elem {
        self.join.get(x, y)
    }

    pub fn meet_table(&self) -> &BinTable {
        &self.meet
    }

    pub fn join_table(&self) -> &BinTable {
        &self.join
    }

    pub fn top(&self) -> Elem {
        self.poset.top()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum SectionKind {
    /// Maps live on principal filters `[a)`.
    Filters,
    /// Maps live on principal ideals `(a]`.
    Ideals,
}

impl SectionKind {
    pub fn dual(self) -> Self {
        match self {
            SectionKind::Filters => SectionKind::Ideals,
            SectionKind::Ideals => SectionKind::Filters,
        }
    }

    fn contains(self, l: &BoundedLattice, a: Elem, x: Elem) -> bool {
        match self {
            SectionKind::Filters => l.leq(a, x),
            SectionKind::Ideals => l.leq(x, a),
        }
    }
}

/// One antitone involution per principal filter (`gamma_a` on `[a)`) or per
/// principal ideal (`delta_a` on `(a]`).
///
/// `maps[a][x]` is the image of `x` under the map of section `a`; entries for
/// `x` outside the section are `None`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SectionInvolutionFamily {
    lattice: BoundedLattice,
    kind: SectionKind,
    maps: Vec<Vec<Option<Elem>>>,
}

/// Checks that every map sends its section into itself, is antitone there and
/// is an involution. Reports the first failing `(a, x)`.
pub fn validate_involution_family(
    lattice: &BoundedLattice,
    kind: SectionKind,
    maps: &[Vec<Option<Elem>>],
) -> Result<(), OrderError> {
    let n = lattice.size();
    if maps.len() != n || maps.iter().any(|m| m.len() != n) {
        return Err(OrderError::FamilyShape {
            got: maps.len(),
            len: maps.first().map_or(0, |m| m.len()),
            n,
        });
    }
    for a in 0..n {
        let map = &maps[a];
        let image = |x: Elem| map[x].filter(|&v| v < n && kind.contains(lattice, a, v));
        for x in (0..n).filter(|&x| kind.contains(lattice, a, x)) {
            let Some(fx) = image(x) else {
                return Err(OrderError::NotIntoSection { a, x });
            };
            if image(fx) != Some(x) {
                return Err(OrderError::NotInvolutive { a, x });
            }
            for y in (0..n).filter(|&y| kind.contains(lattice, a, y) && lattice.leq(x, y)) {
                match image(y) {
                    None => return Err(OrderError::NotIntoSection { a, x: y }),
                    Some(fy) if !lattice.leq(fy, fx) => {
                        return Err(OrderError::NotAntitone { a, x, y })
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(())
}

impl SectionInvolutionFamily {
    pub fn new(
        lattice: BoundedLattice,
        kind: SectionKind,
        maps: Vec<Vec<Option<Elem>>>,
    ) -> Result<Self, OrderError> {
        validate_involution_family(&lattice, kind, &maps)?;
        let mut maps = maps;
        // Normalise off-section entries so equality is structural.
        for (a, m) in maps.iter_mut().enumerate() {
            for (x, v) in m.iter_mut().enumerate() {
                if !kind.contains(&lattice, a, x) {
                    *v = None;
                }
            }
        }
        Ok(SectionInvolutionFamily { lattice, kind, maps })
    }

    /// Builds a family from a closure evaluated on each section.
    pub fn from_fn(
        lattice: BoundedLattice,
        kind: SectionKind,
        f: impl Fn(Elem, Elem) -> Elem,
    ) -> Result<Self, OrderError> {
        let n = lattice.size();
        let maps = (0..n)
            .map(|a| {
                (0..n)
                    .map(|x| kind.contains(&lattice, a, x).then(|| f(a, x)))
                    .collect()
            })
            .collect();
        Self::new(lattice, kind, maps)
    }

    pub fn lattice(&self) -> &BoundedLattice {
        &self.lattice
    }

    pub fn kind(&self) -> SectionKind {
        self.kind
    }

    pub fn maps(&self) -> &[Vec<Option<Elem>>] {
        &self.maps
    }

    /// Image of `x` under the map of section `a`. Panics if `x` is off-section.
    #[inline]
    pub fn apply(&self, a: Elem, x: Elem) -> Elem {
        self.maps[a][x].expect("element outside section")
    }
}

/// Passes from filter involutions to ideal involutions and back.
///
/// With `g = gamma_0`, the ideal map is `delta_a(x) = g(gamma_{g(a)}(g(x) v g(a)))`;
/// the reverse direction is the order-dual formula with `d = delta_1`:
/// `gamma_a(x) = d(delta_{d(a)}(d(x) ^ d(a)))`.
pub fn dualize_involution_family(
    f: &SectionInvolutionFamily,
) -> Result<SectionInvolutionFamily, OrderError> {
    let l = f.lattice().clone();
    match f.kind() {
        SectionKind::Filters => {
            let g = |x| f.apply(0, x);
            SectionInvolutionFamily::from_fn(l.clone(), SectionKind::Ideals, |a, x| {
                g(f.apply(g(a), l.join(g(x), g(a))))
            })
        }
        SectionKind::Ideals => {
            let top = l.top();
            let d = |x| f.apply(top, x);
            SectionInvolutionFamily::from_fn(l.clone(), SectionKind::Filters, |a, x| {
                d(f.apply(d(a), l.meet(d(x), d(a))))
            })
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OrthoFailure {
    /// `perp(perp(x)) != x`.
    NotInvolutive(Elem),
    /// `x <= y` but not `perp(y) <= perp(x)`.
    NotAntitone(Elem, Elem),
    /// `x ^ perp(x) != 0`.
    MeetNotBottom(Elem),
    /// `x v perp(x) != 1`.
    JoinNotTop(Elem),
}

impl std::fmt::Display for OrthoFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OrthoFailure::NotInvolutive(x) => write!(f, "perp is not involutive at {x}"),
            OrthoFailure::NotAntitone(x, y) => write!(f, "perp is not antitone at ({x}, {y})"),
            OrthoFailure::MeetNotBottom(x) => write!(f, "{x} ^ perp({x}) is not 0"),
            OrthoFailure::JoinNotTop(x) => write!(f, "{x} v perp({x}) is not 1"),
        }
    }
}

/// Verdicts for the ortholattice and orthomodular laws.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrthoReport {
    pub ortholattice: bool,
    pub ortho_failure: Option<OrthoFailure>,
    pub orthomodular: bool,
    /// First `(x, y)` with `x <= y` and `x v (perp(x) ^ y) != y`.
    pub orthomodular_witness: Option<(Elem, Elem)>,
}

pub fn validate_ortholattice(l: &BoundedLattice, perp: &[Elem]) -> OrthoReport {
    let n = l.size();
    let ortho_failure = (|| {
        for x in 0..n {
            if perp[x] >= n || perp[perp[x]] != x {
                return Some(OrthoFailure::NotInvolutive(x));
            }
        }
        for x in 0..n {
            for y in 0..n {
                if l.leq(x, y) && !l.leq(perp[y], perp[x]) {
                    return Some(OrthoFailure::NotAntitone(x, y));
                }
            }
        }
        for x in 0..n {
            if l.meet(x, perp[x]) != 0 {
                return Some(OrthoFailure::MeetNotBottom(x));
            }
            if l.join(x, perp[x]) != l.top() {
                return Some(OrthoFailure::JoinNotTop(x));
            }
        }
        None
    })();
    let orthomodular_witness = if ortho_failure.is_some() {
        None
    } else {
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .find(|&(x, y)| l.leq(x, y) && l.join(x, l.meet(perp[x], y)) != y)
    };
    OrthoReport {
        ortholattice: ortho_failure.is_none(),
        ortho_failure,
        orthomodular: ortho_failure.is_none() && orthomodular_witness.is_none(),
        orthomodular_witness,
    }
}

/// A bounded lattice with an orthocomplementation. Orthomodularity is
/// validated and recorded, not required.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrthoLattice {
    lattice: BoundedLattice,
    perp: Vec<Elem>,
    report: OrthoReport,
}

impl OrthoLattice {
    pub fn new(lattice: BoundedLattice, perp: Vec<Elem>) -> Result<Self, OrderError> {
        if perp.len() != lattice.size() {
            return Err(OrderError::PerpShape { got: perp.len(), n: lattice.size() });
        }
        let report = validate_ortholattice(&lattice, &perp);
        if let Some(fail) = report.ortho_failure {
            return Err(OrderError::NotOrtholattice(fail));
        }
        Ok(OrthoLattice { lattice, perp, report })
    }

    pub fn lattice(&self) -> &BoundedLattice {
        &self.lattice
    }

    #[inline]
    pub fn perp(&self, x: Elem) -> Elem {
        self.perp[x]
    }

    pub fn perp_table(&self) -> &[Elem] {
        &self.perp
    }

    pub fn is_orthomodular(&self) -> bool {
        self.report.orthomodular
    }

    pub fn report(&self) -> &OrthoReport {
        &self.report
    }

    /// The filter family `gamma_a(x) = perp(x) v a`.
    pub fn filter_involutions(&self) -> Result<SectionInvolutionFamily, OrderError> {
        let l = &self.lattice;
        SectionInvolutionFamily::from_fn(l.clone(), SectionKind::Filters, |a, x| {
            l.join(self.perp[x], a)
        })
    }

    /// The ideal family `delta_a(x) = perp(x) ^ a`.
    pub fn ideal_involutions(&self) -> Result<SectionInvolutionFamily, OrderError> {
        let l = &self.lattice;
        SectionInvolutionFamily::from_fn(l.clone(), SectionKind::Ideals, |a, x| {
            l.meet(self.perp[x], a)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn diamond() -> FinitePoset {
        FinitePoset::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn two_chain_is_valid() {
        let p = FinitePoset::new(&[vec![true, true], vec![false, true]]).unwrap();
        assert_eq!(p, FinitePoset::chain(2));
        assert_eq!(p.covers(), vec![(0, 1)]);
    }

    #[test]
    fn symmetric_pair_is_not_antisymmetric() {
        let err = FinitePoset::new(&[vec![true, true], vec![true, true]]).unwrap_err();
        assert_eq!(err, OrderError::NotAntisymmetric(0, 1));
    }

    #[test]
    fn diagnostics_are_first_in_lexicographic_order() {
        let err = FinitePoset::new(&[vec![true, false], vec![false, false]]).unwrap_err();
        assert_eq!(err, OrderError::NotReflexive(1));
        // 0 <= 1 <= 2 without 0 <= 2.
        let rows = vec![
            vec![true, true, false],
            vec![false, true, true],
            vec![false, false, true],
        ];
        assert_eq!(FinitePoset::new(&rows).unwrap_err(), OrderError::NotTransitive(0, 1, 2));
        // 1 is not above 0.
        let rows = vec![
            vec![true, false, true],
            vec![false, true, true],
            vec![false, false, true],
        ];
        assert_eq!(
            FinitePoset::new(&rows).unwrap_err(),
            OrderError::BoundsViolated { bound: Bound::Bottom, x: 1 }
        );
        assert_eq!(
            FinitePoset::new(&[vec![true, true], vec![false]]).unwrap_err(),
            OrderError::NotSquare { row: 1, len: 1, expected: 2 }
        );
    }

    #[test]
    fn example1_order_is_a_lattice() {
        let p = fixtures::example1_poset();
        // 0 a b c d e f 1
        let (c, d) = (3, 4);
        let l = meets_joins(&p).unwrap();
        assert_eq!(l.meet(c, d), 0);
        assert_eq!(l.join(c, d), 7);
        assert!(p.leq(1, 6), "a <= f");
        assert!(!p.leq(3, 6), "c is not below f");
    }

    #[test]
    fn diamond_tables() {
        let l = meets_joins(&diamond()).unwrap();
        assert_eq!(l.meet(1, 2), 0);
        assert_eq!(l.join(1, 2), 3);
        assert_eq!(l.meet(1, 3), 1);
        assert_eq!(l.join(0, 2), 2);
    }

    #[test]
    fn missing_meet_is_reported() {
        // 0 < p, q < r, s < 1 with p, q both below r and s: p v q does not exist.
        let p = FinitePoset::from_covers(
            6,
            &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 5), (4, 5)],
        )
        .unwrap();
        assert_eq!(meets_joins(&p).unwrap_err(), OrderError::NoJoin(1, 2));
    }

    #[test]
    fn identity_family_on_chain_is_not_antitone() {
        let l = BoundedLattice::new(FinitePoset::chain(3)).unwrap();
        let err = SectionInvolutionFamily::from_fn(l, SectionKind::Filters, |_, x| x).unwrap_err();
        assert_eq!(err, OrderError::NotAntitone { a: 0, x: 0, y: 1 });
    }

    #[test]
    fn lukasiewicz_three_family() {
        let l = BoundedLattice::new(FinitePoset::chain(3)).unwrap();
        let f = SectionInvolutionFamily::from_fn(l, SectionKind::Filters, |a, x| 2 - x + a).unwrap();
        let d = dualize_involution_family(&f).unwrap();
        assert_eq!(d.kind(), SectionKind::Ideals);
        for a in 0..3 {
            for x in 0..=a {
                assert_eq!(d.apply(a, x), a - x);
            }
        }
        assert_eq!(dualize_involution_family(&d).unwrap(), f);
    }

    #[test]
    fn mo2_families() {
        let o = fixtures::mo2_ortho();
        let l = o.lattice();
        let gamma = o.filter_involutions().unwrap();
        let delta = dualize_involution_family(&gamma).unwrap();
        for a in 0..6 {
            for x in l.poset().down_set(a) {
                assert_eq!(delta.apply(a, x), l.meet(o.perp(x), a));
            }
        }
        assert_eq!(delta, o.ideal_involutions().unwrap());
        assert_eq!(dualize_involution_family(&delta).unwrap(), gamma);
    }

    #[test]
    fn two_chain_has_a_unique_family() {
        let l = BoundedLattice::new(FinitePoset::chain(2)).unwrap();
        let f = SectionInvolutionFamily::from_fn(l, SectionKind::Filters, |a, x| if a == 1 { 1 } else { 1 - x })
            .unwrap();
        let d = dualize_involution_family(&f).unwrap();
        assert_eq!(d.apply(0, 0), 0);
        assert_eq!(d.apply(1, 0), 1);
        assert_eq!(d.apply(1, 1), 0);
    }

    #[test]
    fn ortholattice_reports() {
        let mo2 = fixtures::mo2_ortho();
        assert!(mo2.is_orthomodular());
        let b4 = fixtures::boolean4_ortho();
        assert!(b4.is_orthomodular());
        let o6 = fixtures::o6_ortho();
        assert!(o6.report().ortholattice);
        assert!(!o6.is_orthomodular());
        // benzene ring 0 < a < b < 1, 0 < b' < a' < 1: a <= b but a v (a' ^ b) = a.
        assert_eq!(o6.report().orthomodular_witness, Some((1, 2)));
    }

    #[test]
    fn bad_perp_is_rejected() {
        let l = BoundedLattice::new(diamond()).unwrap();
        // Fixing both atoms is an antitone involution but not a complement.
        let err = OrthoLattice::new(l, vec![3, 1, 2, 0]).unwrap_err();
        assert_eq!(err, OrderError::NotOrtholattice(OrthoFailure::MeetNotBottom(1)));
    }

    #[test]
    fn antitone_involutions_of_diamond() {
        let invs = diamond().antitone_involutions();
        assert_eq!(invs, vec![vec![3, 1, 2, 0], vec![3, 2, 1, 0]]);
    }
}
