//! Exhaustive enumeration of quandles of a given order up to isomorphism.
//!
//! Column `j` of a quandle table is a permutation `σ_j` fixing `j`, and
//! self-distributivity says `σ_c σ_b σ_c⁻¹ = σ_{σ_c(b)}`. The search places
//! columns in order, filling in every column that relation forces and
//! backtracking on conflicts. Isomorphic copies are merged
//! at the end by canonical form.

use std::collections::{BTreeSet, HashSet};
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::iso::canonical_form;
use crate::polynomial::{qp, BivariatePoly};
use crate::table::{AlgebraClass, QuandleTable};

/// Largest order [`enumerate`] accepts.
pub const MAX_ENUMERATION_ORDER: usize = 7;

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub table: QuandleTable,
    pub qp: BivariatePoly,
    pub class: AlgebraClass,
}

/// One representative per isomorphism class, sorted by canonical table.
#[derive(Clone, Debug)]
pub struct Catalog {
    pub order: usize,
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `(canonical matrix, canonical qp text)` per class.
    pub fn qp_table(&self) -> Vec<(QuandleTable, String)> {
        self.entries
            .iter()
            .map(|e| (e.table.clone(), e.qp.to_string()))
            .collect()
    }

    /// Groups of class indices sharing a quandle polynomial, for every
    /// polynomial carried by more than one class.
    pub fn qp_collisions(&self) -> Vec<(BivariatePoly, Vec<usize>)> {
        let mut groups: std::collections::BTreeMap<&BivariatePoly, Vec<usize>> = Default::default();
        for (i, e) in self.entries.iter().enumerate() {
            groups.entry(&e.qp).or_default().push(i);
        }
        groups
            .into_iter()
            .filter(|(_, idx)| idx.len() > 1)
            .map(|(p, idx)| (p.clone(), idx))
            .collect()
    }

    pub fn index_json(&self) -> Value {
        Value::Array(
            self.entries
                .iter()
                .map(|e| {
                    json!({
                        "connected": e.class.is_connected,
                        "latin": e.class.is_latin,
                        "matrix": e.table.to_one_based(),
                        "qp": e.qp.to_string(),
                    })
                })
                .collect(),
        )
    }

    /// Writes `q<order>-<k>.txt` for each class and `catalog-<order>.json`.
    pub fn save(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        for (k, e) in self.entries.iter().enumerate() {
            let name = format!("q{}-{:03}.txt", self.order, k + 1);
            let text = format!("# qp = {}\n{}", e.qp, e.table);
            fs::write(dir.join(name), text)?;
        }
        let index =
            serde_json::to_string_pretty(&self.index_json()).expect("catalog index serializes");
        fs::write(
            dir.join(format!("catalog-{}.json", self.order)),
            index + "\n",
        )?;
        Ok(())
    }

    /// Reads `catalog-<order>.json` back, recomputing polynomial and flags
    /// from each matrix and checking them against the stored values.
    pub fn load(dir: &Path, order: usize) -> Result<Self> {
        let path = dir.join(format!("catalog-{order}.json"));
        let text = fs::read_to_string(&path)?;
        let value: Value = serde_json::from_str(&text)
            .map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
        let items = value
            .as_array()
            .ok_or_else(|| Error::Malformed("catalog index is not an array".into()))?;
        let mut entries = Vec::with_capacity(items.len());
        for item in items {
            let matrix: Vec<Vec<usize>> = serde_json::from_value(item["matrix"].clone())
                .map_err(|e| Error::Malformed(format!("catalog matrix: {e}")))?;
            let table = QuandleTable::from_one_based(&matrix)?;
            if table.order() != order {
                return Err(Error::Malformed(format!(
                    "catalog-{order}.json holds a table of order {}",
                    table.order()
                )));
            }
            let entry = entry_for(table);
            if item["qp"].as_str() != Some(entry.qp.to_string().as_str()) {
                return Err(Error::Malformed(format!(
                    "stored polynomial {} does not match the matrix",
                    item["qp"]
                )));
            }
            entries.push(entry);
        }
        Ok(Catalog { order, entries })
    }
}

fn entry_for(table: QuandleTable) -> CatalogEntry {
    CatalogEntry {
        qp: qp(&table),
        class: table.classify(),
        table,
    }
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 || n > MAX_ENUMERATION_ORDER {
        return Err(Error::UnsupportedOrder {
            order: n,
            limit: MAX_ENUMERATION_ORDER,
        });
    }
    Ok(())
}

/// Permutations of `0..n` with `p[fixed] = fixed`, in lexicographic order.
fn permutations_fixing(n: usize, fixed: usize) -> Vec<Vec<usize>> {
    fn extend(
        n: usize,
        fixed: usize,
        cur: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        let pos = cur.len();
        if pos == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            let ok = if pos == fixed {
                v == fixed
            } else {
                v != fixed && !used[v]
            };
            if ok {
                used[v] = true;
                cur.push(v);
                extend(n, fixed, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(
        n,
        fixed,
        &mut Vec::with_capacity(n),
        &mut vec![false; n],
        &mut out,
    );
    out
}

struct ColumnSearch {
    n: usize,
    choices: Vec<Vec<Vec<usize>>>,
}

impl ColumnSearch {
    fn new(n: usize) -> Self {
        ColumnSearch {
            n,
            choices: (0..n).map(|j| permutations_fixing(n, j)).collect(),
        }
    }

    /// Closes the placed columns under `σ_{σ_c(b)} = σ_c σ_b σ_c⁻¹`, filling
    /// in forced columns and recording them in `trail`. False on a conflict.
    fn propagate(&self, cols: &mut [Option<Vec<usize>>], trail: &mut Vec<usize>) -> bool {
        let n = self.n;
        loop {
            let mut changed = false;
            for c in 0..n {
                let Some(sc) = cols[c].clone() else { continue };
                let mut inv = vec![0; n];
                for (a, &x) in sc.iter().enumerate() {
                    inv[x] = a;
                }
                for b in 0..n {
                    let Some(sb) = &cols[b] else { continue };
                    let conj: Vec<usize> = (0..n).map(|a| sc[sb[inv[a]]]).collect();
                    let d = sc[b];
                    match &cols[d] {
                        Some(sd) => {
                            if *sd != conj {
                                return false;
                            }
                        }
                        None => {
                            cols[d] = Some(conj);
                            trail.push(d);
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn descend(&self, cols: &mut Vec<Option<Vec<usize>>>, out: &mut Vec<QuandleTable>) {
        let Some(j) = cols.iter().position(Option::is_none) else {
            let table = QuandleTable::from_fn(self.n, |x, y| cols[y].as_ref().expect("placed")[x])
                .expect("columns are in range");
            out.push(table);
            return;
        };
        let mut trail = Vec::new();
        for perm in &self.choices[j] {
            cols[j] = Some(perm.clone());
            trail.clear();
            if self.propagate(cols, &mut trail) {
                self.descend(cols, out);
            }
            for &d in &trail {
                cols[d] = None;
            }
        }
        cols[j] = None;
    }

    /// All labeled quandles whose first column is `first`.
    fn solutions_from(&self, first: &[usize]) -> Vec<QuandleTable> {
        let mut cols = vec![None; self.n];
        cols[0] = Some(first.to_vec());
        let mut out = Vec::new();
        if self.propagate(&mut cols, &mut Vec::new()) {
            self.descend(&mut cols, &mut out);
        }
        out
    }
}

/// Every quandle on `0..n` (labeled, not up to isomorphism).
pub fn labeled_quandles(n: usize) -> Result<Vec<QuandleTable>> {
    check_order(n)?;
    let search = ColumnSearch::new(n);
    Ok(search.choices[0]
        .par_iter()
        .map(|first| search.solutions_from(first))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect())
}

/// Quandles of order `n` up to isomorphism.
pub fn enumerate(n: usize) -> Result<Catalog> {
    let labeled = labeled_quandles(n)?;
    // canonicalize one table per class and mark its whole relabeling orbit
    let all_perms = permutations_fixing(n + 1, n);
    let mut seen: HashSet<QuandleTable> = HashSet::with_capacity(labeled.len());
    let mut canon: BTreeSet<QuandleTable> = BTreeSet::new();
    for table in &labeled {
        if seen.contains(table) {
            continue;
        }
        canon.insert(canonical_form(table)?);
        for perm in &all_perms {
            seen.insert(
                table
                    .relabel(&perm[..n])
                    .expect("a permutation of the labels"),
            );
        }
    }
    let mut entries: Vec<CatalogEntry> = canon.into_iter().map(entry_for).collect();
    entries.sort_by(|a, b| a.table.entries().cmp(b.table.entries()));
    Ok(Catalog { order: n, entries })
}

/// Per-order findings of the Latin check.
#[derive(Clone, Debug)]
pub struct ConjectureRow {
    pub order: usize,
    pub classes: usize,
    /// Classes with `qp = n·st`.
    pub with_nst: usize,
    pub latin: usize,
    /// Classes with `qp = n·st` that are not Latin.
    pub counterexamples: Vec<QuandleTable>,
    /// Latin classes whose polynomial is not `n·st`; always empty for quandles.
    pub latin_without_nst: Vec<QuandleTable>,
}

#[derive(Clone, Debug)]
pub struct ConjectureReport {
    pub rows: Vec<ConjectureRow>,
}

impl ConjectureReport {
    pub fn counterexample_count(&self) -> usize {
        self.rows.iter().map(|r| r.counterexamples.len()).sum()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| {
                    json!({
                        "classes": r.classes,
                        "counterexamples": r.counterexamples.iter().map(QuandleTable::to_one_based).collect::<Vec<_>>(),
                        "latin": r.latin,
                        "latin_without_nst": r.latin_without_nst.iter().map(QuandleTable::to_one_based).collect::<Vec<_>>(),
                        "order": r.order,
                        "with_nst": r.with_nst,
                    })
                })
                .collect(),
        )
    }
}

pub fn conjecture_row(catalog: &Catalog) -> ConjectureRow {
    let nst = BivariatePoly::monomial(catalog.order as i64, 1, 1);
    let mut row = ConjectureRow {
        order: catalog.order,
        classes: catalog.len(),
        with_nst: 0,
        latin: 0,
        counterexamples: Vec::new(),
        latin_without_nst: Vec::new(),
    };
    for e in &catalog.entries {
        let is_nst = e.qp == nst;
        row.with_nst += is_nst as usize;
        row.latin += e.class.is_latin as usize;
        if is_nst && !e.class.is_latin {
            row.counterexamples.push(e.table.clone());
        }
        if e.class.is_latin && !is_nst {
            row.latin_without_nst.push(e.table.clone());
        }
    }
    row
}

/// Looks for quandles with `qp = n·st` that are not Latin, for every order up
/// to `n_max`.
pub fn check_latin_conjecture(n_max: usize) -> Result<ConjectureReport> {
    check_order(n_max)?;
    let rows = (1..=n_max)
        .map(|n| enumerate(n).map(|cat| conjecture_row(&cat)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConjectureReport { rows })
}
