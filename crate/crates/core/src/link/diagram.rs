//! Oriented link diagrams as arcs joined at signed crossings.
//!
//! Two text formats are read:
//!
//! * native: `arcs <n>`, optional `component <arc> <arc> ...` lines, then one
//!   `under_in over under_out sign` line per crossing (`+` or `-`, arcs
//!   1-based). Statements may also be separated by `;`.
//! * PD: `X[a,b,c,d]` tokens, optionally wrapped in `PD[...]`. `a` is the
//!   incoming under-edge, `c` the outgoing one, and `a, b, c, d` run
//!   counterclockwise around the crossing.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::table::UnionFind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

/// At a positive crossing `under_out = under_in ▷ over`; at a negative one
/// `under_in = under_out ▷ over`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub under_in: usize,
    pub over: usize,
    pub under_out: usize,
    pub sign: Sign,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    arc_count: usize,
    crossings: Vec<Crossing>,
    components: Vec<Vec<usize>>,
}

impl LinkDiagram {
    /// Validates closure: every arc ends at exactly one crossing as an
    /// incoming under-arc and starts at exactly one as an outgoing one, or
    /// does neither (a component with no undercrossings).
    pub fn new(
        arc_count: usize,
        crossings: Vec<Crossing>,
        components: Option<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        if arc_count == 0 {
            return Err(Error::Diagram("a diagram needs at least one arc".into()));
        }
        let mut ins = vec![0usize; arc_count];
        let mut outs = vec![0usize; arc_count];
        for (k, x) in crossings.iter().enumerate() {
            if [x.under_in, x.over, x.under_out]
                .iter()
                .any(|&a| a >= arc_count)
            {
                return Err(Error::Diagram(format!(
                    "crossing {} mentions an arc outside 1..={arc_count}",
                    k + 1
                )));
            }
            ins[x.under_in] += 1;
            outs[x.under_out] += 1;
        }
        for a in 0..arc_count {
            if ins[a] > 1 || outs[a] > 1 || ins[a] != outs[a] {
                return Err(Error::Diagram(format!(
                    "arc {} ends under {} crossing(s) and starts under {}",
                    a + 1,
                    ins[a],
                    outs[a]
                )));
            }
        }
        let mut uf = UnionFind::new(arc_count);
        for x in &crossings {
            uf.union(x.under_in, x.under_out);
        }
        let derived = uf.blocks();
        let components = match components {
            None => derived,
            Some(given) => {
                let mut given: Vec<Vec<usize>> = given
                    .into_iter()
                    .map(|mut c| {
                        c.sort_unstable();
                        c
                    })
                    .collect();
                given.sort();
                let mut seen = vec![false; arc_count];
                for &a in given.iter().flatten() {
                    if a >= arc_count || std::mem::replace(&mut seen[a], true) {
                        return Err(Error::Diagram(
                            "components do not partition the arcs".into(),
                        ));
                    }
                }
                if seen.iter().any(|s| !s) {
                    return Err(Error::Diagram("components do not cover every arc".into()));
                }
                if given != derived {
                    return Err(Error::Diagram(
                        "components disagree with the under-arc sequence".into(),
                    ));
                }
                given
            }
        };
        Ok(LinkDiagram {
            arc_count,
            crossings,
            components,
        })
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    /// Reads PD notation if the text contains an `X[` token, the native
    /// format otherwise.
    pub fn parse(text: &str) -> Result<Self> {
        if text.contains("X[") {
            Self::parse_pd(text)
        } else {
            Self::parse_native(text)
        }
    }

    pub fn parse_native(text: &str) -> Result<Self> {
        let statements = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or(""))
            .flat_map(|l| l.split(';'))
            .map(str::trim)
            .filter(|s| !s.is_empty());
        let mut arc_count = None;
        let mut components: Vec<Vec<usize>> = Vec::new();
        let mut crossings = Vec::new();
        for stmt in statements {
            let toks: Vec<&str> = stmt.split_whitespace().collect();
            match toks.as_slice() {
                ["arcs", n] | [n, "arcs"] => {
                    if arc_count.is_some() {
                        return Err(Error::Malformed("repeated arcs line".into()));
                    }
                    arc_count = Some(parse_count(n)?);
                }
                ["component", rest @ ..] => {
                    let arcs = rest
                        .iter()
                        .map(|t| parse_arc(t))
                        .collect::<Result<Vec<_>>>()?;
                    if arcs.is_empty() {
                        return Err(Error::Malformed("empty component line".into()));
                    }
                    components.push(arcs);
                }
                [a, b, c, sign] => {
                    let sign = match *sign {
                        "+" | "+1" => Sign::Positive,
                        "-" | "-1" => Sign::Negative,
                        other => {
                            return Err(Error::Malformed(format!("bad crossing sign {other:?}")))
                        }
                    };
                    crossings.push(Crossing {
                        under_in: parse_arc(a)?,
                        over: parse_arc(b)?,
                        under_out: parse_arc(c)?,
                        sign,
                    });
                }
                _ => return Err(Error::Malformed(format!("cannot read {stmt:?}"))),
            }
        }
        let arc_count =
            arc_count.ok_or_else(|| Error::Malformed("missing `arcs <n>` line".into()))?;
        let components = (!components.is_empty()).then_some(components);
        Self::new(arc_count, crossings, components)
    }

    pub fn parse_pd(text: &str) -> Result<Self> {
        let codes = read_pd_tokens(text)?;
        PdOrientation::solve(&codes)?.into_diagram(&codes)
    }
}

fn parse_count(tok: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::Malformed(format!("bad arc count {tok:?}")))
}

fn parse_arc(tok: &str) -> Result<usize> {
    match tok.parse::<usize>() {
        Ok(v) if v >= 1 => Ok(v - 1),
        _ => Err(Error::Malformed(format!("bad arc label {tok:?}"))),
    }
}

fn read_pd_tokens(text: &str) -> Result<Vec<[i64; 4]>> {
    let mut body = text.trim();
    if let Some(inner) = body.strip_prefix("PD[") {
        body = inner
            .strip_suffix(']')
            .ok_or_else(|| Error::Malformed("unterminated PD[...]".into()))?;
    }
    let mut codes = Vec::new();
    let mut rest = body;
    loop {
        rest = rest.trim_start_matches(|c: char| c.is_whitespace() || c == ',');
        if rest.is_empty() {
            break;
        }
        let inner = rest
            .strip_prefix("X[")
            .ok_or_else(|| Error::Malformed(format!("expected X[...] at {:?}", truncate(rest))))?;
        let close = inner
            .find(']')
            .ok_or_else(|| Error::Malformed("unterminated X[...]".into()))?;
        let labels = inner[..close]
            .split(',')
            .map(|t| match t.trim().parse::<i64>() {
                Ok(v) if v >= 1 => Ok(v),
                _ => Err(Error::Malformed(format!("bad PD label {:?}", t.trim()))),
            })
            .collect::<Result<Vec<_>>>()?;
        let code: [i64; 4] = labels
            .try_into()
            .map_err(|_| Error::Malformed("a PD crossing needs exactly 4 labels".into()))?;
        codes.push(code);
        rest = &inner[close + 1..];
    }
    if codes.is_empty() {
        return Err(Error::Malformed("no crossings in PD code".into()));
    }
    Ok(codes)
}

fn truncate(s: &str) -> String {
    s.chars().take(16).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum End {
    /// The edge ends at this slot (runs into the crossing).
    Head,
    /// The edge starts at this slot.
    Tail,
}

impl End {
    fn opposite(self) -> Self {
        match self {
            End::Head => End::Tail,
            End::Tail => End::Head,
        }
    }
}

/// Which way each over-strand runs. Under-strands are fixed by the format
/// (`a` is a head, `c` a tail); every edge label must end up with exactly one
/// head and one tail. Labels shared between slots propagate this, and the
/// consecutive-label convention settles whatever propagation leaves open.
struct PdOrientation {
    /// `over_from_b[k]`: the over-strand of crossing `k` runs from `b` to `d`.
    over_from_b: Vec<Option<bool>>,
    /// label → the two `(crossing, slot)` occurrences.
    occurrences: BTreeMap<i64, [(usize, usize); 2]>,
}

impl PdOrientation {
    fn solve(codes: &[[i64; 4]]) -> Result<Self> {
        let mut seen: BTreeMap<i64, Vec<(usize, usize)>> = BTreeMap::new();
        for (k, code) in codes.iter().enumerate() {
            for (slot, &label) in code.iter().enumerate() {
                seen.entry(label).or_default().push((k, slot));
            }
        }
        let mut occurrences = BTreeMap::new();
        for (label, occ) in seen {
            let pair: [(usize, usize); 2] = occ.as_slice().try_into().map_err(|_| {
                Error::Diagram(format!(
                    "edge {label} appears {} time(s); every edge must appear exactly twice",
                    occ.len()
                ))
            })?;
            occurrences.insert(label, pair);
        }
        let mut this = PdOrientation {
            over_from_b: vec![None; codes.len()],
            occurrences,
        };
        this.propagate()?;
        while let Some(k) = this.over_from_b.iter().position(Option::is_none) {
            let dir = successor_direction(codes, k)?;
            this.over_from_b[k] = Some(dir);
            this.propagate()?;
        }
        Ok(this)
    }

    fn end_at(&self, (k, slot): (usize, usize)) -> Option<End> {
        match slot {
            0 => Some(End::Head),
            2 => Some(End::Tail),
            1 => self.over_from_b[k].map(|from_b| if from_b { End::Head } else { End::Tail }),
            _ => self.over_from_b[k].map(|from_b| if from_b { End::Tail } else { End::Head }),
        }
    }

    fn propagate(&mut self) -> Result<()> {
        loop {
            let mut changed = false;
            for (&label, &[p, q]) in &self.occurrences.clone() {
                match (self.end_at(p), self.end_at(q)) {
                    (Some(x), Some(y)) if x == y => {
                        return Err(Error::Diagram(format!(
                            "edge {label} cannot be oriented consistently"
                        )));
                    }
                    (Some(x), None) => {
                        self.force(q, x.opposite());
                        changed = true;
                    }
                    (None, Some(y)) => {
                        self.force(p, y.opposite());
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return Ok(());
            }
        }
    }

    /// Orients the over-strand at `k` so that `slot` gets `end`.
    fn force(&mut self, (k, slot): (usize, usize), end: End) {
        let b_is_head = if slot == 1 {
            end == End::Head
        } else {
            end == End::Tail
        };
        self.over_from_b[k] = Some(b_is_head);
    }

    fn into_diagram(self, codes: &[[i64; 4]]) -> Result<LinkDiagram> {
        let labels: Vec<i64> = self.occurrences.keys().copied().collect();
        let index = |label: i64| labels.binary_search(&label).expect("label was recorded");
        let mut uf = UnionFind::new(labels.len());
        for code in codes {
            uf.union(index(code[1]), index(code[3]));
        }
        // arcs numbered by their smallest edge label
        let mut arc_of_root: BTreeMap<usize, usize> = BTreeMap::new();
        let mut arc_of = vec![0; labels.len()];
        for (i, slot) in arc_of.iter_mut().enumerate() {
            let root = uf.find(i);
            let next = arc_of_root.len();
            *slot = *arc_of_root.entry(root).or_insert(next);
        }
        let crossings = codes
            .iter()
            .zip(&self.over_from_b)
            .map(|(code, dir)| Crossing {
                under_in: arc_of[index(code[0])],
                over: arc_of[index(code[1])],
                under_out: arc_of[index(code[2])],
                // over-strand b → d runs clockwise past the upward under-strand
                sign: if dir.expect("all crossings oriented") {
                    Sign::Negative
                } else {
                    Sign::Positive
                },
            })
            .collect();
        LinkDiagram::new(arc_of_root.len(), crossings, None)
    }
}

/// Orientation of the over-strand at crossing `k` from consecutive edge
/// labels along its component; components with fewer than three edges are
/// ambiguous.
fn successor_direction(codes: &[[i64; 4]], k: usize) -> Result<bool> {
    let mut comps: BTreeMap<i64, i64> = BTreeMap::new();
    fn root(comps: &mut BTreeMap<i64, i64>, x: i64) -> i64 {
        let p = *comps.entry(x).or_insert(x);
        if p == x {
            x
        } else {
            let r = root(comps, p);
            comps.insert(x, r);
            r
        }
    }
    for code in codes {
        for (u, v) in [(code[0], code[2]), (code[1], code[3])] {
            let (ru, rv) = (root(&mut comps, u), root(&mut comps, v));
            if ru != rv {
                comps.insert(ru.max(rv), ru.min(rv));
            }
        }
    }
    let (b, d) = (codes[k][1], codes[k][3]);
    let rb = root(&mut comps, b);
    let keys: Vec<i64> = comps.keys().copied().collect();
    let mut members: Vec<i64> = keys
        .into_iter()
        .filter(|&x| root(&mut comps, x) == rb)
        .collect();
    members.sort_unstable();
    if members.len() < 3 {
        return Err(Error::Diagram(format!(
            "over-strand direction at crossing {} is ambiguous",
            k + 1
        )));
    }
    let succ = |x: i64| {
        let i = members.binary_search(&x).expect("label in component");
        members[(i + 1) % members.len()]
    };
    if succ(b) == d {
        Ok(true)
    } else if succ(d) == b {
        Ok(false)
    } else {
        Err(Error::Diagram(format!(
            "labels {b} and {d} at crossing {} are not consecutive",
            k + 1
        )))
    }
}

/// Native format, 1-based.
impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "arcs {}", self.arc_count)?;
        for comp in &self.components {
            let arcs: Vec<String> = comp.iter().map(|a| (a + 1).to_string()).collect();
            writeln!(f, "component {}", arcs.join(" "))?;
        }
        for x in &self.crossings {
            writeln!(
                f,
                "{} {} {} {}",
                x.under_in + 1,
                x.over + 1,
                x.under_out + 1,
                x.sign.symbol()
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL_PD: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";

    #[test]
    fn trefoil_pd() {
        let d = LinkDiagram::parse(TREFOIL_PD).unwrap();
        assert_eq!(d.arc_count(), 3);
        assert_eq!(d.crossings().len(), 3);
        assert_eq!(d.components().len(), 1);
        assert!(d.crossings().iter().all(|x| x.sign == Sign::Negative));
        // closure: every arc ends and starts under exactly one crossing
        let mut ins: Vec<usize> = d.crossings().iter().map(|x| x.under_in).collect();
        let mut outs: Vec<usize> = d.crossings().iter().map(|x| x.under_out).collect();
        ins.sort_unstable();
        outs.sort_unstable();
        assert_eq!(ins, vec![0, 1, 2]);
        assert_eq!(outs, vec![0, 1, 2]);
    }

    #[test]
    fn pd_wrapper_and_commas() {
        let a = LinkDiagram::parse("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]").unwrap();
        let b = LinkDiagram::parse(TREFOIL_PD).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn mirror_trefoil_is_positive() {
        // same edges, over-strands reversed
        let d = LinkDiagram::parse("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]").unwrap();
        assert!(d.crossings().iter().all(|x| x.sign == Sign::Positive));
    }

    #[test]
    fn hopf_pd_is_resolved_by_propagation() {
        let d = LinkDiagram::parse("X[4,1,3,2] X[2,3,1,4]").unwrap();
        assert_eq!(d.arc_count(), 2);
        assert_eq!(d.components().len(), 2);
        assert!(d.crossings().iter().all(|x| x.sign == Sign::Negative));
    }

    #[test]
    fn kinks() {
        let pos = LinkDiagram::parse("X[1,1,2,2]").unwrap();
        assert_eq!(pos.arc_count(), 1);
        assert_eq!(pos.crossings()[0].sign, Sign::Positive);
        let neg = LinkDiagram::parse("X[1,2,2,1]").unwrap();
        assert_eq!(neg.crossings()[0].sign, Sign::Negative);
    }

    #[test]
    fn pd_errors() {
        assert!(matches!(
            LinkDiagram::parse("X[1,4,2,5] X[3,6,4,1]"),
            Err(Error::Diagram(_))
        ));
        assert!(matches!(
            LinkDiagram::parse("X[1,2,3]"),
            Err(Error::Malformed(_))
        ));
        assert!(matches!(
            LinkDiagram::parse("X[1,2,3,x]"),
            Err(Error::Malformed(_))
        ));
        assert!(matches!(
            LinkDiagram::parse("X[1,2,2,1] Y"),
            Err(Error::Malformed(_))
        ));
        assert!(matches!(
            LinkDiagram::parse_pd(""),
            Err(Error::Malformed(_))
        ));
        // under-strand runs into itself at both ends
        assert!(matches!(
            LinkDiagram::parse("X[1,2,1,2]"),
            Err(Error::Diagram(_))
        ));
    }

    #[test]
    fn native_trefoil() {
        let d = LinkDiagram::parse("arcs 3\n1 3 2 +\n2 1 3 +\n3 2 1 +\n").unwrap();
        assert_eq!(d.arc_count(), 3);
        assert_eq!(d.components(), &[vec![0, 1, 2]]);
        let again = LinkDiagram::parse(&d.to_string()).unwrap();
        assert_eq!(again, d);
    }

    #[test]
    fn native_semicolons_and_reversed_header() {
        let d = LinkDiagram::parse("3 arcs; 1 2 2 +; 2 3 3 +; 3 1 1 +").unwrap();
        assert_eq!(d.crossings().len(), 3);
        assert_eq!(d.crossings()[0].over, 1);
    }

    #[test]
    fn native_unknot_and_unlink() {
        let d = LinkDiagram::parse("arcs 1").unwrap();
        assert!(d.crossings().is_empty());
        let d = LinkDiagram::parse("arcs 2\ncomponent 1\ncomponent 2").unwrap();
        assert_eq!(d.components().len(), 2);
    }

    #[test]
    fn native_errors() {
        assert!(matches!(
            LinkDiagram::parse("1 2 3 +"),
            Err(Error::Malformed(_))
        ));
        assert!(matches!(
            LinkDiagram::parse("arcs 3\n1 2 3 *"),
            Err(Error::Malformed(_))
        ));
        assert!(matches!(
            LinkDiagram::parse("arcs 3\n1 2 3 +"),
            Err(Error::Diagram(_))
        ));
        assert!(matches!(
            LinkDiagram::parse("arcs 2\n1 2 3 +\n3 1 1 +"),
            Err(Error::Diagram(_))
        ));
        assert!(matches!(
            LinkDiagram::parse("arcs 0"),
            Err(Error::Diagram(_))
        ));
        assert!(matches!(
            LinkDiagram::parse("arcs 2\ncomponent 1 2\n1 2 1 +\n2 1 2 +"),
            Err(Error::Diagram(_))
        ));
        assert!(matches!(
            LinkDiagram::parse("arcs 2\ncomponent 1"),
            Err(Error::Diagram(_))
        ));
    }
}
