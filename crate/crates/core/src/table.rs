//! Dense operation tables over the universe `0..n`.

use std::fmt;

/// Element of a finite universe, as a dense index.
pub type Elem = usize;

/// A total binary operation on `0..n`, stored row-major: `get(x, y)` is `x op y`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinTable {
    n: usize,
    cells: Vec<Elem>,
}

impl BinTable {
    pub fn from_fn(n: usize, mut f: impl FnMut(Elem, Elem) -> Elem) -> Self {
        let mut cells = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                cells.push(f(x, y));
            }
        }
        BinTable { n, cells }
    }

    /// Builds a table from rows. Returns `None` unless the rows form an `n x n`
    /// matrix with every entry in range.
    pub fn from_rows(rows: &[Vec<Elem>]) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return None;
        }
        Some(BinTable {
            n,
            cells: rows.iter().flatten().copied().collect(),
        })
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, x: Elem, y: Elem) -> Elem {
        self.cells[x * self.n + y]
    }

    #[inline]
    pub fn set(&mut self, x: Elem, y: Elem, v: Elem) {
        self.cells[x * self.n + y] = v;
    }

    pub fn row(&self, x: Elem) -> &[Elem] {
        &self.cells[x * self.n..(x + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        (0..self.n).map(|x| self.row(x).to_vec()).collect()
    }

    pub fn cells(&self) -> &[Elem] {
        &self.cells
    }

    /// The table transported along `perm` (old label -> new label).
    pub fn relabel(&self, perm: &[Elem]) -> Self {
        let mut out = BinTable {
            n: self.n,
            cells: vec![0; self.n * self.n],
        };
        for x in 0..self.n {
            for y in 0..self.n {
                out.set(perm[x], perm[y], perm[self.get(x, y)]);
            }
        }
        out
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.n).all(|x| (0..x).all(|y| self.get(x, y) == self.get(y, x)))
    }
}

impl fmt::Debug for BinTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.n).map(|x| self.row(x))).finish()
    }
}

/// Transports a unary table along `perm` (old label -> new label).
pub fn relabel_unary(table: &[Elem], perm: &[Elem]) -> Vec<Elem> {
    let mut out = vec![0; table.len()];
    for (x, &v) in table.iter().enumerate() {
        out[perm[x]] = perm[v];
    }
    out
}
