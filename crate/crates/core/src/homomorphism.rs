//! Quandle homomorphisms and the `K_qp` Laurent polynomial.

use crate::error::{Error, Result};
use crate::polynomial::BivariatePoly;
use crate::table::QuandleTable;

const UNSET: usize = usize::MAX;

/// An element-wise map `f: source → target` with `f(x ▷ y) = f(x) ▷ f(y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism<'a> {
    source: &'a QuandleTable,
    target: &'a QuandleTable,
    map: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomKind {
    pub injective: bool,
    pub surjective: bool,
}

impl<'a> Homomorphism<'a> {
    /// Checks the map against every pair of source elements.
    pub fn new(
        source: &'a QuandleTable,
        target: &'a QuandleTable,
        map: Vec<usize>,
    ) -> Result<Self> {
        if map.len() != source.order() {
            return Err(Error::NotAHomomorphism(format!(
                "map has {} images for a source of order {}",
                map.len(),
                source.order()
            )));
        }
        if map.iter().any(|&v| v >= target.order()) {
            return Err(Error::NotAHomomorphism("image outside the target".into()));
        }
        let n = source.order();
        for x in 0..n {
            for y in 0..n {
                if map[source.op(x, y)] != target.op(map[x], map[y]) {
                    return Err(Error::NotAHomomorphism(format!(
                        "f(x{0} ▷ x{1}) ≠ f(x{0}) ▷ f(x{1})",
                        x + 1,
                        y + 1
                    )));
                }
            }
        }
        Ok(Homomorphism {
            source,
            target,
            map,
        })
    }

    pub fn source(&self) -> &'a QuandleTable {
        self.source
    }

    pub fn target(&self) -> &'a QuandleTable {
        self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// Sorted image set.
    pub fn image(&self) -> Vec<usize> {
        let mut image = self.map.clone();
        image.sort_unstable();
        image.dedup();
        image
    }

    pub fn kind(&self) -> HomKind {
        let image = self.image();
        HomKind {
            injective: image.len() == self.map.len(),
            surjective: image.len() == self.target.order(),
        }
    }

    /// `K_qp(f) = Σ_x s^{r(f(x)) − r(x)} t^{c(f(x)) − c(x)}`, with `r(x), c(x)`
    /// counted in the source and `r(f(x)), c(f(x))` in the target.
    pub fn kqp(&self) -> BivariatePoly {
        let src = self.source.count_profile();
        let dst = self.target.count_profile();
        let mut out = BivariatePoly::zero();
        for (x, &fx) in self.map.iter().enumerate() {
            let es = dst.r[fx] as i64 - src.r[x] as i64;
            let et = dst.c[fx] as i64 - src.c[x] as i64;
            out.add_term(1, es, et);
        }
        out
    }
}

/// Backtracking over element images. The element with the lowest index that
/// is still free is branched on; every newly fixed image is combined with all
/// fixed images, and `f(x ▷ y) = f(x) ▷ f(y)` either forces a new image or
/// checks an existing one.
pub(crate) struct MapSearch<'a> {
    src: &'a QuandleTable,
    dst: &'a QuandleTable,
    injective: bool,
    /// `allowed[x][v]`: whether `x ↦ v` may be used at all.
    allowed: Option<Vec<Vec<bool>>>,
}

struct SearchState {
    map: Vec<usize>,
    used: Vec<bool>,
    trail: Vec<usize>,
}

impl<'a> MapSearch<'a> {
    pub(crate) fn new(src: &'a QuandleTable, dst: &'a QuandleTable) -> Self {
        MapSearch {
            src,
            dst,
            injective: false,
            allowed: None,
        }
    }

    pub(crate) fn injective(mut self) -> Self {
        self.injective = true;
        self
    }

    pub(crate) fn allowed(mut self, allowed: Vec<Vec<bool>>) -> Self {
        self.allowed = Some(allowed);
        self
    }

    /// Calls `visit` on each complete map in lexicographic order until it
    /// returns `false`.
    pub(crate) fn run(&self, mut visit: impl FnMut(&[usize]) -> bool) {
        let mut st = SearchState {
            map: vec![UNSET; self.src.order()],
            used: vec![false; self.dst.order()],
            trail: Vec::with_capacity(self.src.order()),
        };
        self.descend(&mut st, &mut visit);
    }

    fn descend(&self, st: &mut SearchState, visit: &mut impl FnMut(&[usize]) -> bool) -> bool {
        let Some(x) = st.map.iter().position(|&v| v == UNSET) else {
            return visit(&st.map);
        };
        for v in 0..self.dst.order() {
            let mark = st.trail.len();
            let keep_going = if self.assign(st, x, v) {
                self.descend(st, visit)
            } else {
                true
            };
            for &y in &st.trail[mark..] {
                st.used[st.map[y]] = false;
                st.map[y] = UNSET;
            }
            st.trail.truncate(mark);
            if !keep_going {
                return false;
            }
        }
        true
    }

    fn admissible(&self, st: &SearchState, x: usize, v: usize) -> bool {
        if self.injective && st.used[v] {
            return false;
        }
        self.allowed.as_ref().is_none_or(|a| a[x][v])
    }

    fn fix(st: &mut SearchState, x: usize, v: usize) {
        st.map[x] = v;
        st.used[v] = true;
        st.trail.push(x);
    }

    fn assign(&self, st: &mut SearchState, x: usize, v: usize) -> bool {
        if !self.admissible(st, x, v) {
            return false;
        }
        let mut next = st.trail.len();
        Self::fix(st, x, v);
        while next < st.trail.len() {
            let a = st.trail[next];
            next += 1;
            for k in 0..st.trail.len() {
                let b = st.trail[k];
                for (l, r) in [(a, b), (b, a)] {
                    let z = self.src.op(l, r);
                    let need = self.dst.op(st.map[l], st.map[r]);
                    if st.map[z] == UNSET {
                        if !self.admissible(st, z, need) {
                            return false;
                        }
                        Self::fix(st, z, need);
                    } else if st.map[z] != need {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Every homomorphism `src → dst`, in lexicographic order of the image
/// sequences.
pub fn all_homs<'a>(src: &'a QuandleTable, dst: &'a QuandleTable) -> Vec<Homomorphism<'a>> {
    let mut out = Vec::new();
    MapSearch::new(src, dst).run(|map| {
        out.push(Homomorphism {
            source: src,
            target: dst,
            map: map.to_vec(),
        });
        true
    });
    out
}

pub fn count_homs(src: &QuandleTable, dst: &QuandleTable) -> usize {
    let mut count = 0;
    MapSearch::new(src, dst).run(|_| {
        count += 1;
        true
    });
    count
}
