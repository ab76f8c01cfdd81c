//! Column-wise search for left-residuated groupoids.

use super::canon::{minimise, Part};
use super::posets::{automorphisms, canonical_poset, enumerate_bounded_posets};
use super::{recheck, run_parallel, CanonicalForm, Control, FoundModel, SearchError, SearchSpec};
use crate::algebra::validate_lrpg;
use crate::io::{Model, ModelClass};
use crate::laws::{BinaryOp, CompiledFormula, Interpretation, Op, UnaryOp};
use crate::order::{meets_joins, BoundedLattice, FinitePoset};
use crate::table::{BinTable, Elem};
use std::collections::BTreeMap;

/// A residuated map `x -> x*y` together with its residual `z -> z/y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Column {
    pub f: Vec<Elem>,
    pub g: Vec<Elem>,
}

/// All residuated maps `f` on `p` with `f(1) = y`, in lexicographic order of
/// their values along a linear extension.
pub(crate) fn residuated_columns(p: &FinitePoset, y: Elem) -> Vec<Column> {
    let n = p.size();
    let top = n - 1;
    let mut order: Vec<Elem> = (1..top).collect();
    order.sort_by_key(|&x| (p.down_set(x).len(), x));
    let below: Vec<Elem> = (0..n).filter(|&v| p.leq(v, y)).collect();
    let preds: Vec<Vec<Elem>> = (0..n).map(|x| (0..n).filter(|&u| p.lt(u, x)).collect()).collect();

    fn go(
        p: &FinitePoset,
        i: usize,
        order: &[Elem],
        below: &[Elem],
        preds: &[Vec<Elem>],
        f: &mut Vec<Elem>,
        out: &mut Vec<Column>,
    ) {
        let n = p.size();
        let Some(&x) = order.get(i) else {
            let mut g = Vec::with_capacity(n);
            for z in 0..n {
                let pre: Vec<Elem> = (0..n).filter(|&x| p.leq(f[x], z)).collect();
                match p.max_of(&pre) {
                    Some(m) => g.push(m),
                    None => return,
                }
            }
            out.push(Column { f: f.clone(), g });
            return;
        };
        for &v in below {
            if preds[x].iter().all(|&u| p.leq(f[u], v)) {
                f[x] = v;
                go(p, i + 1, order, below, preds, f, out);
            }
        }
        f[x] = usize::MAX;
    }

    let mut f = vec![usize::MAX; n];
    f[0] = 0;
    f[top] = y;
    let mut out = Vec::new();
    go(p, 0, &order, &below, &preds, &mut f, &mut out);
    out
}

/// A table in which only some columns are filled in.
struct Partial<'a> {
    n: usize,
    p: &'a FinitePoset,
    lattice: Option<&'a BoundedLattice>,
    nu: Option<&'a [Elem]>,
    mult: Vec<Elem>,
    res: Vec<Elem>,
    assigned: Vec<bool>,
}

impl<'a> Partial<'a> {
    fn new(p: &'a FinitePoset, lattice: Option<&'a BoundedLattice>, nu: Option<&'a [Elem]>) -> Self {
        let n = p.size();
        let mut s = Partial {
            n,
            p,
            lattice,
            nu,
            mult: vec![0; n * n],
            res: vec![0; n * n],
            assigned: vec![false; n],
        };
        s.set(0, &Column { f: vec![0; n], g: vec![n - 1; n] });
        s.set(n - 1, &Column { f: (0..n).collect(), g: (0..n).collect() });
        s
    }

    fn set(&mut self, y: Elem, c: &Column) {
        let n = self.n;
        for x in 0..n {
            self.mult[x * n + y] = c.f[x];
            self.res[x * n + y] = c.g[x];
        }
        self.assigned[y] = true;
    }

    #[inline]
    fn m(&self, x: Elem, y: Elem) -> Option<Elem> {
        self.assigned[y].then(|| self.mult[x * self.n + y])
    }

    #[inline]
    fn r(&self, z: Elem, y: Elem) -> Option<Elem> {
        self.assigned[y].then(|| self.res[z * self.n + y])
    }

    #[inline]
    fn neg(&self, x: Elem) -> Option<Elem> {
        match self.nu {
            Some(nu) => Some(nu[x]),
            None => self.r(0, x),
        }
    }

    fn imp(&self, x: Elem, y: Elem) -> Option<Elem> {
        self.r(self.neg(x)?, self.neg(y)?)
    }
}

impl Interpretation for Partial<'_> {
    fn size(&self) -> usize {
        self.n
    }

    fn leq(&self, x: Elem, y: Elem) -> bool {
        self.p.leq(x, y)
    }

    fn supports(&self, op: Op) -> bool {
        match op {
            Op::Binary(BinaryOp::Join | BinaryOp::Meet) => self.lattice.is_some(),
            Op::Binary(BinaryOp::LeftDiv) => false,
            _ => true,
        }
    }

    fn unary(&self, op: UnaryOp, x: Elem) -> Option<Elem> {
        match op {
            UnaryOp::Neg => self.neg(x),
            UnaryOp::Tilde => self.imp(x, 0),
        }
    }

    fn binary(&self, op: BinaryOp, x: Elem, y: Elem) -> Option<Elem> {
        match op {
            BinaryOp::Mult => self.m(x, y),
            BinaryOp::RightDiv => self.r(x, y),
            BinaryOp::Imp => self.imp(x, y),
            BinaryOp::Oplus => self.neg(self.m(self.neg(x)?, self.neg(y)?)?),
            BinaryOp::Join => Some(self.lattice?.join(x, y)),
            BinaryOp::Meet => Some(self.lattice?.meet(x, y)),
            BinaryOp::LeftDiv => None,
        }
    }
}

struct Law {
    f: CompiledFormula,
    k: u32,
}

impl Law {
    fn total(&self, n: usize) -> u32 {
        (n as u32).pow(self.k)
    }
}

fn decode(mut idx: u32, n: usize, buf: &mut [Elem]) {
    for slot in buf.iter_mut().rev() {
        *slot = (idx % n as u32) as Elem;
        idx /= n as u32;
    }
}

/// Keeps the assignments still undecided; `None` if one is definitely false.
fn narrow(law: &Law, m: &dyn Interpretation, from: &[u32], buf: &mut Vec<Elem>) -> Option<Vec<u32>> {
    buf.resize(law.k as usize, 0);
    let mut keep = Vec::new();
    for &idx in from {
        decode(idx, m.size(), buf);
        match law.f.eval(m, buf) {
            Some(true) => {}
            Some(false) => return None,
            None => keep.push(idx),
        }
    }
    Some(keep)
}

struct PosetData {
    p: FinitePoset,
    lattice: Option<BoundedLattice>,
    auts: Vec<Vec<Elem>>,
    columns: Vec<Vec<Column>>,
}

/// Involutions of `0..n` swapping `0` and `n - 1`, one per conjugacy class
/// under `auts`.
fn negation_candidates(n: usize, auts: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    fn go(nu: &mut Vec<Elem>, out: &mut Vec<Vec<Elem>>) {
        let Some(x) = nu.iter().position(|&v| v == usize::MAX) else {
            out.push(nu.clone());
            return;
        };
        for v in x..nu.len() {
            if nu[v] == usize::MAX {
                nu[x] = v;
                nu[v] = x;
                go(nu, out);
                nu[v] = usize::MAX;
                nu[x] = usize::MAX;
            }
        }
    }
    let mut nu = vec![usize::MAX; n];
    nu[0] = n - 1;
    nu[n - 1] = 0;
    let mut all = Vec::new();
    go(&mut nu, &mut all);
    all.retain(|nu| {
        auts.iter().all(|s| {
            let mut conj = vec![0; n];
            for x in 0..n {
                conj[s[x]] = s[nu[x]];
            }
            *nu <= conj
        })
    });
    all
}

struct Run<'a> {
    spec: &'a SearchSpec,
    ctl: &'a Control,
    data: &'a PosetData,
    part: Partial<'a>,
    order: Vec<Elem>,
    cands: Vec<Vec<&'a Column>>,
    laws: Vec<Law>,
    pending: Vec<Vec<Vec<u32>>>,
    forbid: Vec<CompiledFormula>,
    leaf_only: Vec<(CompiledFormula, bool)>,
    out: BTreeMap<CanonicalForm, Model>,
    buf: Vec<Elem>,
    nodes: u64,
    pruned: u64,
    leaves: u64,
    rechecks_failed: u64,
}

impl Run<'_> {
    fn dfs(&mut self, depth: usize) {
        self.nodes += 1;
        if self.nodes % 1024 == 0 && self.ctl.tick() {
            return;
        }
        if self.ctl.stopped() {
            return;
        }
        if depth == self.order.len() {
            self.leaf();
            return;
        }
        let y = self.order[depth];
        for ci in 0..self.cands[depth].len() {
            let c = self.cands[depth][ci];
            self.part.set(y, c);
            let mut next = Vec::with_capacity(self.laws.len());
            let mut ok = true;
            for (li, law) in self.laws.iter().enumerate() {
                match narrow(law, &self.part, &self.pending[depth][li], &mut self.buf) {
                    Some(keep) => next.push(keep),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                self.pending.push(next);
                self.dfs(depth + 1);
                self.pending.pop();
            } else {
                self.pruned += 1;
            }
            if self.ctl.stopped() {
                break;
            }
        }
        self.part.assigned[y] = false;
    }

    fn leaf(&mut self) {
        self.leaves += 1;
        if self.forbid.iter().any(|f| f.first_violation(&self.part).is_none()) {
            return;
        }
        let n = self.part.n;
        let mult = BinTable::from_fn(n, |x, y| self.part.mult[x * n + y]);
        let res = BinTable::from_fn(n, |x, y| self.part.res[x * n + y]);
        if !self.leaf_only.is_empty() {
            let Ok(g) = validate_lrpg(self.data.p.clone(), mult.clone(), res.clone()) else {
                self.rechecks_failed += 1;
                return;
            };
            let ok = self.leaf_only.iter().all(|(f, required)| {
                f.check_signature(&g).is_ok() && (f.first_violation(&g).is_none() == *required)
            });
            if !ok {
                return;
            }
        }
        let parts = [Part::Relation(&self.data.p), Part::Binary(&mult), Part::Binary(&res)];
        let (bytes, perm) = minimise(&parts, self.data.auts.iter().cloned());
        let form = CanonicalForm::new(ModelClass::Lrpg, n, bytes);
        if self.out.contains_key(&form) {
            return;
        }
        match validate_lrpg(self.data.p.relabel(&perm), mult.relabel(&perm), res.relabel(&perm)) {
            Ok(g) if recheck(self.spec, &g) => {
                self.out.insert(form, Model::Lrpg(g));
                self.ctl.record();
            }
            _ => self.rechecks_failed += 1,
        }
    }
}

fn uses_lattice_ops(spec: &SearchSpec) -> bool {
    spec.require.iter().chain(&spec.forbid).any(|l| {
        l.formula
            .operations()
            .iter()
            .any(|op| matches!(op, Op::Binary(BinaryOp::Join | BinaryOp::Meet)))
    })
}

/// Posets to search, canonical and filtered by the necessary conditions the
/// spec implies.
pub(crate) fn candidate_posets(spec: &SearchSpec, need_lattice: bool, need_involution: bool) -> Result<Vec<FinitePoset>, SearchError> {
    let all = match &spec.poset {
        Some(p) => vec![canonical_poset(p)],
        None => enumerate_bounded_posets(spec.size)?,
    };
    Ok(all
        .into_iter()
        .filter(|p| !need_lattice || p.is_lattice())
        .filter(|p| !need_involution || !p.antitone_involutions().is_empty())
        .collect())
}

pub(crate) fn search(spec: &SearchSpec, ctl: &Control) -> Result<Vec<FoundModel>, SearchError> {
    let n = spec.size;
    let div = spec.requires("div");
    let fix_neg = spec.requires("dneg") || spec.requires("jk");
    // Without div the prefilter loses models (already at size 5 for dneg), so
    // it is only applied together with div.
    let prefilter = spec.involution_prefilter && fix_neg && div;
    let posets = candidate_posets(spec, div || uses_lattice_ops(spec), prefilter)?;

    let data: Vec<PosetData> = run_parallel(spec.jobs, &posets, |p| {
        let lattice = meets_joins(p).ok();
        let columns = (0..n)
            .map(|y| {
                let mut cs = residuated_columns(p, y);
                if div {
                    cs.retain(|c| (0..n).all(|v| !p.leq(v, y) || c.f.contains(&v)));
                }
                cs
            })
            .collect();
        PosetData {
            p: p.clone(),
            lattice,
            auts: automorphisms(p),
            columns,
        }
    });
    Control::bump(&ctl.posets_tried, data.len() as u64);

    let mut units: Vec<(usize, Option<Vec<Elem>>)> = Vec::new();
    for (i, d) in data.iter().enumerate() {
        if fix_neg {
            units.extend(negation_candidates(n, &d.auts).into_iter().map(|nu| (i, Some(nu))));
        } else {
            units.push((i, None));
        }
    }

    let results = run_parallel(spec.jobs, &units, |(i, nu)| run_unit(spec, ctl, &data[*i], nu.as_deref()));
    Ok(results
        .into_iter()
        .flatten()
        .map(|(form, model)| FoundModel { form, model })
        .collect())
}

fn run_unit(spec: &SearchSpec, ctl: &Control, data: &PosetData, nu: Option<&[Elem]>) -> BTreeMap<CanonicalForm, Model> {
    if ctl.stopped() {
        return BTreeMap::new();
    }
    let n = data.p.size();
    let part = Partial::new(&data.p, data.lattice.as_ref(), nu);

    let mut laws = Vec::new();
    let mut leaf_only = Vec::new();
    for l in &spec.require {
        let f = CompiledFormula::new(&l.formula);
        if f.check_signature(&part).is_ok() {
            let k = f.variables().len() as u32;
            laws.push(Law { f, k });
        } else {
            leaf_only.push((f, true));
        }
    }
    let mut forbid = Vec::new();
    for l in &spec.forbid {
        let f = CompiledFormula::new(&l.formula);
        if f.check_signature(&part).is_ok() {
            forbid.push(f);
        } else {
            leaf_only.push((f, false));
        }
    }

    let mut buf = Vec::new();
    let mut pending0 = Vec::with_capacity(laws.len());
    for law in &laws {
        let all: Vec<u32> = (0..law.total(n)).collect();
        match narrow(law, &part, &all, &mut buf) {
            Some(keep) => pending0.push(keep),
            None => return BTreeMap::new(),
        }
    }

    // Candidates per interior column, filtered by the negation and by every
    // law instance that this column decides on its own.
    let mut per_col: Vec<(Elem, Vec<&Column>)> = Vec::new();
    let mut probe = Partial::new(&data.p, data.lattice.as_ref(), nu);
    let mut pruned = 0u64;
    for y in 1..n - 1 {
        let mut keep = Vec::new();
        for c in &data.columns[y] {
            if nu.is_some_and(|nu| c.g[0] != nu[y]) {
                continue;
            }
            probe.set(y, c);
            if laws
                .iter()
                .zip(&pending0)
                .all(|(law, pend)| narrow(law, &probe, pend, &mut buf).is_some())
            {
                keep.push(c);
            } else {
                pruned += 1;
            }
            probe.assigned[y] = false;
        }
        if keep.is_empty() {
            Control::bump(&ctl.pruned, pruned);
            return BTreeMap::new();
        }
        per_col.push((y, keep));
    }
    per_col.sort_by_key(|(y, c)| (c.len(), *y));
    let (order, cands): (Vec<Elem>, Vec<Vec<&Column>>) = per_col.into_iter().unzip();

    let mut run = Run {
        spec,
        ctl,
        data,
        part,
        order,
        cands,
        laws,
        pending: vec![pending0],
        forbid,
        leaf_only,
        out: BTreeMap::new(),
        buf,
        nodes: 0,
        pruned,
        leaves: 0,
        rechecks_failed: 0,
    };
    run.dfs(0);
    Control::bump(&ctl.pruned, run.pruned);
    Control::bump(&ctl.leaves, run.leaves);
    Control::bump(&ctl.rechecks_failed, run.rechecks_failed);
    run.out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn example1_columns_are_generated() {
        let g = fixtures::example1();
        let p = g.poset();
        for y in 0..8 {
            let cols = residuated_columns(p, y);
            let want: Vec<Elem> = (0..8).map(|x| g.mult(x, y)).collect();
            let col = cols.iter().find(|c| c.f == want).expect("column present");
            assert_eq!(col.g, (0..8).map(|z| g.res(z, y)).collect::<Vec<_>>());
        }
    }

    #[test]
    fn chain_columns() {
        // On a 3-chain, column 1 maps {0, 1, 2} monotonically into {0, 1}
        // with f(2) = 1: f(1) is 0 or 1, both residuated.
        let cols = residuated_columns(&FinitePoset::chain(3), 1);
        assert_eq!(cols.len(), 2);
    }

    #[test]
    fn negation_candidates_up_to_symmetry() {
        let d = FinitePoset::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        // Interior {1, 2}: identity or swap; both are fixed by the swap automorphism.
        assert_eq!(negation_candidates(4, &automorphisms(&d)).len(), 2);
        let p = FinitePoset::from_covers(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).unwrap();
        // Involutions of three atoms: identity, and one transposition up to symmetry.
        assert_eq!(negation_candidates(5, &automorphisms(&p)).len(), 2);
    }
}
