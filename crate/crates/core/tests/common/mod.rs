//! Fixtures and brute-force oracles shared by the integration tests.
//!
//! The oracles avoid the library's search code: they walk every candidate
//! (every column combination, every function, every arc assignment) and check
//! the defining equations directly.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;

use quandle::link::{LinkDiagram, Sign};
use quandle::{BivariatePoly, QuandleTable};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0x5eed_2024_0001;

pub fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(rel)
}

pub fn read_fixture(rel: &str) -> String {
    fs::read_to_string(fixture(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

pub fn quandle(rel: &str) -> QuandleTable {
    read_fixture(rel)
        .parse()
        .unwrap_or_else(|e| panic!("{rel}: {e}"))
}

pub fn link(rel: &str) -> LinkDiagram {
    LinkDiagram::parse(&read_fixture(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

/// Seed for randomized tests; `QUANDLE_SEED` overrides the default.
pub fn seed() -> u64 {
    std::env::var("QUANDLE_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed())
}

/// The printed census: `(polynomial, matrix)` in print order.
pub fn printed_tables() -> Vec<(BivariatePoly, QuandleTable)> {
    let text = read_fixture("printed_tables.txt");
    text.split("# qp = ")
        .skip(1)
        .map(|block| {
            let (head, body) = block.split_once('\n').expect("block has a body");
            let poly: BivariatePoly = head.trim().parse().expect("printed polynomial parses");
            let table: QuandleTable = body.parse().expect("printed matrix parses");
            (poly, table)
        })
        .collect()
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !cur.contains(&v) {
                cur.push(v);
                go(n, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut out);
    out
}

pub fn random_permutation(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Full axiom check on a raw row-major table.
pub fn naive_is_quandle(n: usize, t: &[usize]) -> bool {
    let op = |x: usize, y: usize| t[x * n + y];
    let idempotent = (0..n).all(|x| op(x, x) == x);
    let columns = (0..n).all(|y| (0..n).map(|x| op(x, y)).collect::<BTreeSet<_>>().len() == n);
    let distributive =
        (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| op(op(a, b), c) == op(op(a, c), op(b, c)))));
    idempotent && columns && distributive
}

/// Least relabeled table over all `n!` relabelings.
pub fn naive_canonical(n: usize, t: &[usize]) -> Vec<usize> {
    permutations(n)
        .into_iter()
        .map(|p| {
            let mut out = vec![0; n * n];
            for x in 0..n {
                for y in 0..n {
                    out[p[x] * n + p[y]] = p[t[x * n + y]];
                }
            }
            out
        })
        .min()
        .expect("n! >= 1")
}

/// Canonical tables of all quandles of order `n`, by trying every
/// combination of columns that fix their own index.
pub fn naive_quandle_classes(n: usize) -> BTreeSet<Vec<usize>> {
    let column_choices: Vec<Vec<Vec<usize>>> = (0..n)
        .map(|j| permutations(n).into_iter().filter(|p| p[j] == j).collect())
        .collect();
    let mut classes = BTreeSet::new();
    let mut pick = vec![0usize; n];
    loop {
        let mut t = vec![0; n * n];
        for (y, &k) in pick.iter().enumerate() {
            for x in 0..n {
                t[x * n + y] = column_choices[y][k][x];
            }
        }
        if naive_is_quandle(n, &t) {
            classes.insert(naive_canonical(n, &t));
        }
        // odometer over the column choices
        let mut i = 0;
        loop {
            if i == n {
                return classes;
            }
            pick[i] += 1;
            if pick[i] < column_choices[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

/// Every function `0..m → 0..k`, as vectors, in lexicographic order.
pub fn all_functions(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k == 0 {
        if m == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut f = vec![0; m];
    loop {
        out.push(f.clone());
        let mut i = m;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            f[i] += 1;
            if f[i] < k {
                break;
            }
            f[i] = 0;
        }
    }
}

pub fn brute_homs(src: &QuandleTable, dst: &QuandleTable) -> Vec<Vec<usize>> {
    let n = src.order();
    all_functions(n, dst.order())
        .into_iter()
        .filter(|f| (0..n).all(|x| (0..n).all(|y| f[src.op(x, y)] == dst.op(f[x], f[y]))))
        .collect()
}

pub fn brute_colorings(d: &LinkDiagram, t: &QuandleTable) -> Vec<Vec<usize>> {
    all_functions(d.arc_count(), t.order())
        .into_iter()
        .filter(|c| {
            d.crossings().iter().all(|x| match x.sign {
                Sign::Positive => t.op(c[x.under_in], c[x.over]) == c[x.under_out],
                Sign::Negative => t.op(c[x.under_out], c[x.over]) == c[x.under_in],
            })
        })
        .collect()
}

/// Row and column counts recomputed from scratch.
pub fn naive_counts(q: &QuandleTable) -> (Vec<usize>, Vec<usize>) {
    let n = q.order();
    let r = (0..n)
        .map(|x| (0..n).filter(|&y| q.op(x, y) == x).count())
        .collect();
    let c = (0..n)
        .map(|x| (0..n).filter(|&y| q.op(y, x) == y).count())
        .collect();
    (r, c)
}

/// Smallest subset containing `seed` and closed under the operation.
pub fn naive_closure(t: &QuandleTable, seed: &[usize]) -> Vec<usize> {
    let mut set: BTreeSet<usize> = seed.iter().copied().collect();
    loop {
        let next: BTreeSet<usize> = set
            .iter()
            .flat_map(|&x| set.iter().map(move |&y| (x, y)))
            .map(|(x, y)| t.op(x, y))
            .chain(set.iter().copied())
            .collect();
        if next.len() == set.len() {
            return set.into_iter().collect();
        }
        set = next;
    }
}

/// Image polynomials of every coloring, found by brute force, as a sorted
/// list of `(polynomial text, multiplicity)`.
pub fn brute_phi(d: &LinkDiagram, t: &QuandleTable) -> Vec<(String, usize)> {
    let (r, c) = naive_counts(t);
    let mut counts: std::collections::BTreeMap<BivariatePoly, usize> = Default::default();
    for coloring in brute_colorings(d, t) {
        let mut p = BivariatePoly::zero();
        for x in naive_closure(t, &coloring) {
            p.add_term(1, r[x] as i64, c[x] as i64);
        }
        *counts.entry(p).or_default() += 1;
    }
    counts
        .into_iter()
        .map(|(p, m)| (p.to_string(), m))
        .collect()
}

/// `Σ z^{p(s0, t0)}` over a brute-force image list, as `(exponent, count)`.
pub fn brute_specialize(phi: &[(String, usize)], s0: i64, t0: i64) -> Vec<(i64, usize)> {
    let mut out: std::collections::BTreeMap<i64, usize> = Default::default();
    for (text, m) in phi {
        let p: BivariatePoly = text.parse().unwrap();
        let mut v: i64 = 0;
        for ((es, et), coeff) in p.terms() {
            let coeff: i64 = coeff.to_string().parse().unwrap();
            v += coeff * s0.pow(es as u32) * t0.pow(et as u32);
        }
        *out.entry(v).or_default() += m;
    }
    out.into_iter().collect()
}
