//! Isomorphism testing and canonical forms for small tables.

use crate::error::{Error, Result};
use crate::homomorphism::MapSearch;
use crate::table::QuandleTable;

/// Largest order accepted by [`canonical_form`].
pub const DEFAULT_CANONICAL_BOUND: usize = 8;

const UNSET: usize = usize::MAX;

/// Returns `f` with `f(x ▷ y) = f(x) ▷' f(y)` if the tables are isomorphic.
///
/// Elements may only be sent to elements with the same row and column counts,
/// which cuts the search down sharply before any backtracking.
pub fn is_isomorphic(a: &QuandleTable, b: &QuandleTable) -> Option<Vec<usize>> {
    let n = a.order();
    if n != b.order() {
        return None;
    }
    let (pa, pb) = (a.count_profile(), b.count_profile());
    let key = |p: &crate::table::CountProfile, x: usize| (p.r[x], p.c[x]);
    let mut ka: Vec<_> = (0..n).map(|x| key(&pa, x)).collect();
    let mut kb: Vec<_> = (0..n).map(|x| key(&pb, x)).collect();
    let allowed = (0..n)
        .map(|x| (0..n).map(|y| ka[x] == kb[y]).collect())
        .collect();
    ka.sort_unstable();
    kb.sort_unstable();
    if ka != kb {
        return None;
    }
    let mut found = None;
    MapSearch::new(a, b)
        .injective()
        .allowed(allowed)
        .run(|map| {
            found = Some(map.to_vec());
            false
        });
    found
}

/// The relabeling of `q` whose row-major entry sequence is lexicographically
/// least. Two tables are isomorphic exactly when their canonical forms agree.
pub fn canonical_form(q: &QuandleTable) -> Result<QuandleTable> {
    canonical_form_bounded(q, DEFAULT_CANONICAL_BOUND)
}

pub fn canonical_form_bounded(q: &QuandleTable, bound: usize) -> Result<QuandleTable> {
    let n = q.order();
    if n > bound {
        return Err(Error::UnsupportedOrder {
            order: n,
            limit: bound,
        });
    }
    let mut search = Canon {
        q,
        n,
        inv: vec![UNSET; n],
        label: vec![UNSET; n],
        best: None,
    };
    search.descend(0);
    let best = search.best.expect("at least one relabeling exists");
    let rows = best.chunks(n).map(<[usize]>::to_vec).collect();
    QuandleTable::from_rows(rows)
}

/// Assigns new labels `0, 1, …` one at a time; `inv[k]` is the old element
/// that receives label `k`.
struct Canon<'a> {
    q: &'a QuandleTable,
    n: usize,
    inv: Vec<usize>,
    label: Vec<usize>,
    best: Option<Vec<usize>>,
}

impl Canon<'_> {
    fn descend(&mut self, k: usize) {
        if k == self.n {
            let n = self.n;
            let seq: Vec<usize> = (0..n * n)
                .map(|pos| self.label[self.q.op(self.inv[pos / n], self.inv[pos % n])])
                .collect();
            if self.best.as_ref().is_none_or(|b| seq < *b) {
                self.best = Some(seq);
            }
            return;
        }
        for old in 0..self.n {
            if self.label[old] != UNSET {
                continue;
            }
            self.label[old] = k;
            self.inv[k] = old;
            if !self.dominated(k + 1) {
                self.descend(k + 1);
            }
            self.label[old] = UNSET;
            self.inv[k] = UNSET;
        }
    }

    /// Lower bound on entry `(a, b)` of any completion once `k` labels are
    /// placed, together with whether the value is already exact.
    fn entry_bound(&self, k: usize, a: usize, b: usize) -> (usize, bool) {
        if a >= k {
            return (0, false);
        }
        let row_elem = self.inv[a];
        if b < k {
            let v = self.label[self.q.op(row_elem, self.inv[b])];
            return if v == UNSET { (k, false) } else { (v, true) };
        }
        // column b will be some still-unlabeled element
        let lb = (0..self.n)
            .filter(|&x| self.label[x] == UNSET)
            .map(|x| {
                let v = self.label[self.q.op(row_elem, x)];
                if v == UNSET {
                    k
                } else {
                    v
                }
            })
            .min()
            .unwrap_or(0);
        (lb, false)
    }

    /// True when no completion of the current partial labeling can beat the
    /// best table found so far.
    fn dominated(&self, k: usize) -> bool {
        let Some(best) = &self.best else {
            return false;
        };
        let n = self.n;
        for (pos, &target) in best.iter().enumerate() {
            let (value, exact) = self.entry_bound(k, pos / n, pos % n);
            if !exact {
                return value > target;
            }
            if value != target {
                return value > target;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{alexander_cyclic, dihedral, trivial};

    fn brute_force_canonical(q: &QuandleTable) -> QuandleTable {
        let n = q.order();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best: Option<QuandleTable> = None;
        heap_permutations(&mut perm, n, &mut |p| {
            let r = q.relabel(p).unwrap();
            if best.as_ref().is_none_or(|b| r.entries() < b.entries()) {
                best = Some(r);
            }
        });
        best.unwrap()
    }

    fn heap_permutations(a: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k <= 1 {
            f(a);
            return;
        }
        for i in 0..k {
            heap_permutations(a, k - 1, f);
            let j = if k.is_multiple_of(2) { i } else { 0 };
            a.swap(j, k - 1);
        }
    }

    #[test]
    fn trivial_is_its_own_canonical_form() {
        for n in 1..=5 {
            let t = trivial(n).unwrap();
            assert_eq!(canonical_form(&t).unwrap(), t);
        }
    }

    #[test]
    fn pruned_matches_exhaustive() {
        let tables = [
            dihedral(5).unwrap(),
            alexander_cyclic(5, 2).unwrap(),
            alexander_cyclic(7, 3).unwrap(),
            "4\n1 1 1 1\n2 2 4 3\n3 4 3 2\n4 3 2 4\n".parse().unwrap(),
            "5\n1 1 2 2 2\n2 2 1 1 1\n3 3 3 5 4\n4 4 5 4 3\n5 5 4 3 5\n"
                .parse()
                .unwrap(),
        ];
        for q in &tables {
            assert_eq!(canonical_form(q).unwrap(), brute_force_canonical(q));
        }
    }

    #[test]
    fn order_bound() {
        let q = trivial(9).unwrap();
        assert!(matches!(
            canonical_form(&q),
            Err(Error::UnsupportedOrder { order: 9, limit: 8 })
        ));
        assert!(canonical_form_bounded(&q, 9).is_ok());
    }

    #[test]
    fn alexander_z5_classes_are_distinct() {
        let qs: Vec<_> = [2, 3, 4]
            .iter()
            .map(|&a| alexander_cyclic(5, a).unwrap())
            .collect();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(is_isomorphic(&qs[i], &qs[j]).is_some(), i == j);
            }
        }
    }

    #[test]
    fn returned_map_is_an_isomorphism() {
        let q = dihedral(5).unwrap();
        let p = q.relabel(&[3, 0, 4, 1, 2]).unwrap();
        let f = is_isomorphic(&q, &p).unwrap();
        for x in 0..5 {
            for y in 0..5 {
                assert_eq!(f[q.op(x, y)], p.op(f[x], f[y]));
            }
        }
        assert!(is_isomorphic(&q, &trivial(4).unwrap()).is_none());
    }
}
