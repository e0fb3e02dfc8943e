//! Colorings of link diagrams by a finite quandle and the invariants built
//! from them.

use crate::error::Result;
use crate::link::diagram::{LinkDiagram, Sign};
use crate::polynomial::{sub_qp, PolyMultiset, ZPoly};
use crate::table::QuandleTable;

const UNSET: usize = usize::MAX;

/// Every arc coloring of a diagram that satisfies all crossing relations,
/// i.e. `Hom(Q(K), T)`.
#[derive(Clone, Debug)]
pub struct ColoringSet<'a> {
    target: &'a QuandleTable,
    colorings: Vec<Vec<usize>>,
}

impl<'a> ColoringSet<'a> {
    pub fn target(&self) -> &'a QuandleTable {
        self.target
    }

    /// Arc → color maps in lexicographic order.
    pub fn colorings(&self) -> &[Vec<usize>] {
        &self.colorings
    }

    pub fn len(&self) -> usize {
        self.colorings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colorings.is_empty()
    }

    /// The image of each coloring's homomorphism: the subquandle generated by
    /// its arc colors.
    pub fn images(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        self.colorings
            .iter()
            .map(|c| self.target.subquandle_closure(c))
    }
}

/// The relation at `x` as `source ▷ over = result`.
fn relation(x: &crate::link::diagram::Crossing) -> (usize, usize, usize) {
    match x.sign {
        Sign::Positive => (x.under_in, x.over, x.under_out),
        Sign::Negative => (x.under_out, x.over, x.under_in),
    }
}

/// True when `coloring` satisfies every crossing relation of `d`.
pub fn satisfies(d: &LinkDiagram, t: &QuandleTable, coloring: &[usize]) -> bool {
    coloring.len() == d.arc_count()
        && coloring.iter().all(|&c| c < t.order())
        && d.crossings().iter().all(|x| {
            let (src, over, res) = relation(x);
            t.op(coloring[src], coloring[over]) == coloring[res]
        })
}

struct ColoringSearch<'a> {
    d: &'a LinkDiagram,
    t: &'a QuandleTable,
    /// `right_div[y][z]`: the `x` with `x ▷ y = z`, when column `y` is a bijection.
    right_div: Vec<Option<Vec<usize>>>,
}

impl<'a> ColoringSearch<'a> {
    fn new(d: &'a LinkDiagram, t: &'a QuandleTable) -> Self {
        let m = t.order();
        let right_div = (0..m)
            .map(|y| {
                let mut inv = vec![UNSET; m];
                for x in 0..m {
                    let z = t.op(x, y);
                    if inv[z] != UNSET {
                        return None;
                    }
                    inv[z] = x;
                }
                Some(inv)
            })
            .collect();
        ColoringSearch { d, t, right_div }
    }

    /// Fills in every color forced by the crossings; false on a contradiction.
    fn propagate(&self, colors: &mut [usize], trail: &mut Vec<usize>) -> bool {
        loop {
            let mut changed = false;
            for x in self.d.crossings() {
                let (src, over, res) = relation(x);
                if colors[over] == UNSET {
                    continue;
                }
                let y = colors[over];
                match (colors[src], colors[res]) {
                    (UNSET, UNSET) => {}
                    (s, UNSET) => {
                        colors[res] = self.t.op(s, y);
                        trail.push(res);
                        changed = true;
                    }
                    (UNSET, r) => {
                        if let Some(inv) = &self.right_div[y] {
                            colors[src] = inv[r];
                            trail.push(src);
                            changed = true;
                        }
                    }
                    (s, r) => {
                        if self.t.op(s, y) != r {
                            return false;
                        }
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn descend(&self, colors: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(arc) = colors.iter().position(|&c| c == UNSET) else {
            // forced colors are checked on the way; this catches relations
            // whose arcs were all set by branching
            if satisfies(self.d, self.t, colors) {
                out.push(colors.clone());
            }
            return;
        };
        let mut trail = Vec::new();
        for color in 0..self.t.order() {
            colors[arc] = color;
            trail.clear();
            if self.propagate(colors, &mut trail) {
                self.descend(colors, out);
            }
            for &a in &trail {
                colors[a] = UNSET;
            }
        }
        colors[arc] = UNSET;
    }
}

pub fn colorings<'a>(d: &LinkDiagram, t: &'a QuandleTable) -> ColoringSet<'a> {
    let search = ColoringSearch::new(d, t);
    let mut colors = vec![UNSET; d.arc_count()];
    let mut out = Vec::new();
    search.descend(&mut colors, &mut out);
    out.sort();
    ColoringSet {
        target: t,
        colorings: out,
    }
}

/// `|Hom(Q(K), T)|`.
pub fn counting_invariant(d: &LinkDiagram, t: &QuandleTable) -> usize {
    colorings(d, t).len()
}

/// The multiset of subquandle polynomials of homomorphism images.
pub fn phi_qp(d: &LinkDiagram, t: &QuandleTable) -> PolyMultiset {
    colorings(d, t)
        .images()
        .map(|image| sub_qp(t, &image).expect("a generated subquandle is closed"))
        .collect()
}

/// `Σ_f z^{qp_{Im f ⊂ T}(s0, t0)}`.
pub fn phi_qp_specialized(d: &LinkDiagram, t: &QuandleTable, s0: i64, t0: i64) -> Result<ZPoly> {
    phi_qp(d, t).specialize(s0, t0)
}
