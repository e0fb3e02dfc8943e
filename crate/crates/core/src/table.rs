//! Finite operation tables and the axiom checks on them.
//!
//! A [`QuandleTable`] stores `x_i ▷ x_j` at row `i`, column `j`. Rows index the
//! element being acted on, columns the actor. Internally elements are
//! `0..n`; the text format is 1-based.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An `n × n` operation table with entries in `0..n`.
///
/// Construction only checks shape and range. Whether the table is a shelf,
/// rack or quandle is answered by [`QuandleTable::classify`] or enforced with
/// [`QuandleTable::require_rack`] / [`QuandleTable::require_quandle`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuandleTable {
    n: usize,
    /// Row-major; `data[i * n + j] = i ▷ j`.
    data: Vec<usize>,
}

/// Which of the shelf / rack / quandle / Latin / connected conditions hold.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AlgebraClass {
    pub is_shelf: bool,
    pub is_rack: bool,
    pub is_quandle: bool,
    pub is_latin: bool,
    pub is_connected: bool,
}

impl AlgebraClass {
    /// Short description used by the CLI.
    pub fn describe(&self) -> String {
        if self.is_quandle {
            let mut extra = Vec::new();
            if self.is_latin {
                extra.push("latin");
            }
            if self.is_connected {
                extra.push("connected");
            }
            if extra.is_empty() {
                "quandle".to_string()
            } else {
                format!("quandle ({})", extra.join(", "))
            }
        } else if self.is_rack {
            "rack (not a quandle)".to_string()
        } else if self.is_shelf {
            "shelf (not a rack)".to_string()
        } else {
            "not a shelf".to_string()
        }
    }
}

/// Row and column counts: `r[x] = #{y : x ▷ y = x}`, `c[x] = #{y : y ▷ x = y}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountProfile {
    pub r: Vec<usize>,
    pub c: Vec<usize>,
}

impl CountProfile {
    pub fn is_all_zero(&self) -> bool {
        self.r.iter().chain(&self.c).all(|&v| v == 0)
    }
}

impl QuandleTable {
    /// Builds a table from 0-based rows.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Malformed("table of order 0".into()));
        }
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::Malformed(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    n
                )));
            }
            for (j, v) in row.into_iter().enumerate() {
                if v >= n {
                    return Err(Error::Malformed(format!(
                        "entry ({}, {}) out of range",
                        i + 1,
                        j + 1
                    )));
                }
                data.push(v);
            }
        }
        Ok(QuandleTable { n, data })
    }

    /// Builds a table from 1-based rows, the convention used for matrices in
    /// files and on the command line.
    pub fn from_one_based(rows: &[Vec<usize>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&v| {
                        v.checked_sub(1)
                            .ok_or_else(|| Error::Malformed("entry 0 in 1-based table".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }

    /// Builds a table from a function on `0..n`.
    pub fn from_fn(n: usize, mut op: impl FnMut(usize, usize) -> usize) -> Result<Self> {
        let rows = (0..n).map(|i| (0..n).map(|j| op(i, j)).collect()).collect();
        Self::from_rows(rows)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// `x ▷ y`.
    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.data[x * self.n + y]
    }

    pub fn row(&self, x: usize) -> &[usize] {
        &self.data[x * self.n..(x + 1) * self.n]
    }

    pub fn column(&self, y: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).map(move |x| self.op(x, y))
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[usize] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.data.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    pub fn to_one_based(&self) -> Vec<Vec<usize>> {
        self.data
            .chunks(self.n)
            .map(|row| row.iter().map(|v| v + 1).collect())
            .collect()
    }

    /// Applies the relabeling `x ↦ perm[x]`: the result satisfies
    /// `perm[x] ▷' perm[y] = perm[x ▷ y]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.n)?;
        let n = self.n;
        let mut data = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                data[perm[x] * n + perm[y]] = perm[self.op(x, y)];
            }
        }
        Ok(QuandleTable { n, data })
    }

    /// `(a ▷ b) ▷ c = (a ▷ c) ▷ (b ▷ c)` for all triples.
    pub fn is_self_distributive(&self) -> bool {
        let n = self.n;
        (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = self.op(a, b);
                (0..n).all(|c| self.op(ab, c) == self.op(self.op(a, c), self.op(b, c)))
            })
        })
    }

    /// Every column is a bijection, i.e. right translation `x ↦ x ▷ y` is invertible.
    pub fn columns_bijective(&self) -> bool {
        let mut seen = vec![false; self.n];
        (0..self.n).all(|y| {
            seen.iter_mut().for_each(|s| *s = false);
            self.column(y)
                .all(|v| !std::mem::replace(&mut seen[v], true))
        })
    }

    pub fn rows_bijective(&self) -> bool {
        let mut seen = vec![false; self.n];
        (0..self.n).all(|x| {
            seen.iter_mut().for_each(|s| *s = false);
            self.row(x)
                .iter()
                .all(|&v| !std::mem::replace(&mut seen[v], true))
        })
    }

    pub fn is_idempotent(&self) -> bool {
        (0..self.n).all(|x| self.op(x, x) == x)
    }

    pub fn classify(&self) -> AlgebraClass {
        let is_shelf = self.is_self_distributive();
        let is_rack = is_shelf && self.columns_bijective();
        let is_quandle = is_rack && self.is_idempotent();
        let is_latin = is_quandle && self.rows_bijective();
        let is_connected = is_quandle && self.orbits().len() == 1;
        AlgebraClass {
            is_shelf,
            is_rack,
            is_quandle,
            is_latin,
            is_connected,
        }
    }

    pub fn require_rack(&self) -> Result<()> {
        if !self.columns_bijective() {
            return Err(Error::NotARack("some column is not a bijection".into()));
        }
        if !self.is_self_distributive() {
            return Err(Error::NotARack("self-distributivity fails".into()));
        }
        Ok(())
    }

    pub fn require_quandle(&self) -> Result<()> {
        self.require_rack()
            .map_err(|e| Error::NotAQuandle(e.to_string()))?;
        if let Some(x) = (0..self.n).find(|&x| self.op(x, x) != x) {
            return Err(Error::NotAQuandle(format!("x{0} ▷ x{0} ≠ x{0}", x + 1)));
        }
        Ok(())
    }

    pub fn count_profile(&self) -> CountProfile {
        let n = self.n;
        let r = (0..n)
            .map(|x| self.row(x).iter().filter(|&&v| v == x).count())
            .collect();
        let c = (0..n)
            .map(|x| (0..n).filter(|&y| self.op(y, x) == y).count())
            .collect();
        CountProfile { r, c }
    }

    /// Connected components of the graph with edges `{x, x ▷ y}`; for a rack
    /// these are the orbits under the right action. Blocks are sorted and
    /// listed by smallest element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        let mut uf = UnionFind::new(n);
        for x in 0..n {
            for &v in self.row(x) {
                uf.union(x, v);
            }
        }
        uf.blocks()
    }

    /// Smallest superset of `seed` closed under `▷`.
    pub fn subquandle_closure(&self, seed: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.n];
        let mut elems = Vec::new();
        for &s in seed {
            if !std::mem::replace(&mut member[s], true) {
                elems.push(s);
            }
        }
        let mut i = 0;
        // `elems[..i]` have been combined with every element found before them.
        while i < elems.len() {
            let x = elems[i];
            for j in 0..=i {
                let y = elems[j];
                for v in [self.op(x, y), self.op(y, x)] {
                    if !std::mem::replace(&mut member[v], true) {
                        elems.push(v);
                    }
                }
            }
            i += 1;
        }
        elems.sort_unstable();
        elems
    }

    pub fn is_closed(&self, subset: &[usize]) -> bool {
        let mut member = vec![false; self.n];
        subset.iter().for_each(|&s| member[s] = true);
        subset
            .iter()
            .all(|&x| subset.iter().all(|&y| member[self.op(x, y)]))
    }

    /// The operation restricted to a closed subset, relabeled in ascending order.
    pub fn restrict(&self, subset: &[usize]) -> Result<Self> {
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if !self.is_closed(&sorted) {
            return Err(Error::NotASubquandle(format!(
                "{} is not closed under the operation",
                format_subset(&sorted)
            )));
        }
        let mut index = vec![usize::MAX; self.n];
        for (k, &x) in sorted.iter().enumerate() {
            index[x] = k;
        }
        QuandleTable::from_fn(sorted.len(), |i, j| index[self.op(sorted[i], sorted[j])])
    }
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::InvalidParameter(format!(
            "relabeling has length {}, expected {}",
            perm.len(),
            n
        )));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::InvalidParameter(
                "relabeling is not a permutation".into(),
            ));
        }
    }
    Ok(())
}

/// `{1,2,3}` style, 1-based.
pub fn format_subset(subset: &[usize]) -> String {
    let inner: Vec<String> = subset.iter().map(|x| (x + 1).to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as root so block order is stable
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    pub(crate) fn blocks(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for x in 0..n {
            let r = self.find(x);
            by_root[r].push(x);
        }
        by_root.into_iter().filter(|b| !b.is_empty()).collect()
    }
}

impl fmt::Debug for QuandleTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_one_based()).finish()
    }
}

/// Quandle file format: the order on the first line, then `n` rows of `n`
/// 1-based entries. Lines starting with `#` are comments.
impl fmt::Display for QuandleTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for row in self.to_one_based() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for QuandleTable {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Malformed("empty quandle file".into()))?;
        let n: usize = header
            .parse()
            .map_err(|_| Error::Malformed(format!("bad order line {header:?}")))?;
        if n == 0 {
            return Err(Error::Malformed("table of order 0".into()));
        }
        let mut rows = Vec::with_capacity(n);
        for line in lines {
            let row = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>()
                        .map_err(|_| Error::Malformed(format!("bad entry {tok:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        if rows.len() != n {
            return Err(Error::Malformed(format!(
                "expected {} rows, found {}",
                n,
                rows.len()
            )));
        }
        Self::from_one_based(&rows)
    }
}
