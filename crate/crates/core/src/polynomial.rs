//! Sparse Laurent polynomials with integer coefficients.
//!
//! [`BivariatePoly`] lives in `Z[s^±1, t^±1]` and carries the quandle
//! polynomial, subquandle polynomials and `K_qp`. [`ZPoly`] lives in
//! `Z[z^±1]` and carries the specialized coloring invariant. Only addition,
//! specialization and evaluation are provided.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::table::QuandleTable;

/// Terms keyed by `(e_s, e_t)`; zero coefficients are never stored, so the
/// derived ordering and equality are those of the polynomial value.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BivariatePoly {
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(coeff: impl Into<BigInt>, es: i64, et: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(coeff, es, et);
        p
    }

    pub fn constant(coeff: impl Into<BigInt>) -> Self {
        Self::monomial(coeff, 0, 0)
    }

    pub fn add_term(&mut self, coeff: impl Into<BigInt>, es: i64, et: i64) {
        let coeff = coeff.into();
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry((es, et)).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&(es, et));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending `(e_s, e_t)` order.
    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &BigInt)> {
        self.terms.iter().map(|(&k, v)| (k, v))
    }

    pub fn coefficient(&self, es: i64, et: i64) -> BigInt {
        self.terms.get(&(es, et)).cloned().unwrap_or_default()
    }

    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Exact integer value at `(s0, t0)`. A zero base under a negative
    /// exponent is an evaluation-domain error.
    pub fn evaluate(&self, s0: i64, t0: i64) -> Result<BigInt> {
        let mut total = BigInt::zero();
        for (&(es, et), coeff) in &self.terms {
            total += coeff * laurent_power(s0, es, "s")? * laurent_power(t0, et, "t")?;
        }
        Ok(total)
    }

    /// `p(s, 1)`: the `t` exponents collapse to zero.
    pub fn set_t_to_one(&self) -> Self {
        let mut out = Self::zero();
        for (&(es, _), c) in &self.terms {
            out.add_term(c.clone(), es, 0);
        }
        out
    }

    /// `p(1, t)`: the `s` exponents collapse to zero.
    pub fn set_s_to_one(&self) -> Self {
        let mut out = Self::zero();
        for (&(_, et), c) in &self.terms {
            out.add_term(c.clone(), 0, et);
        }
        out
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(&(es, et), c)| json!({ "coeff": bigint_json(c), "es": es, "et": et }))
                .collect(),
        )
    }
}

impl AddAssign<&BivariatePoly> for BivariatePoly {
    fn add_assign(&mut self, rhs: &BivariatePoly) {
        for (&(es, et), c) in &rhs.terms {
            self.add_term(c.clone(), es, et);
        }
    }
}

impl Add for BivariatePoly {
    type Output = BivariatePoly;

    fn add(mut self, rhs: BivariatePoly) -> BivariatePoly {
        self += &rhs;
        self
    }
}

impl std::iter::Sum for BivariatePoly {
    fn sum<I: Iterator<Item = BivariatePoly>>(iter: I) -> Self {
        iter.fold(Self::zero(), Add::add)
    }
}

fn laurent_power(base: i64, exp: i64, var: &str) -> Result<BigInt> {
    if exp >= 0 {
        return Ok(num_traits::pow(BigInt::from(base), exp as usize));
    }
    match base {
        1 => Ok(BigInt::one()),
        -1 => Ok(if exp % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        }),
        0 => Err(Error::EvaluationDomain(format!(
            "{var} = 0 under negative exponent {exp}"
        ))),
        _ => Err(Error::EvaluationDomain(format!(
            "{var}^{exp} at {var} = {base} is not an integer"
        ))),
    }
}

pub(crate) fn bigint_json(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(v) => Value::from(v),
        None => Value::Number(
            c.to_string()
                .parse()
                .expect("decimal integer is a JSON number"),
        ),
    }
}

fn write_coeff(f: &mut fmt::Formatter<'_>, first: bool, c: &BigInt, bare: bool) -> fmt::Result {
    let mag = c.abs();
    match (first, c.is_negative()) {
        (true, true) => f.write_str("-")?,
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
        (true, false) => {}
    }
    if !mag.is_one() || bare {
        write!(f, "{mag}")?;
    }
    Ok(())
}

fn write_power(f: &mut fmt::Formatter<'_>, var: &str, e: i64) -> fmt::Result {
    match e {
        0 => Ok(()),
        1 => f.write_str(var),
        _ => write!(f, "{var}^{e}"),
    }
}

/// Canonical text: ascending `(e_s, e_t)`, e.g. `3s^3t^5 + 2s^5t^2`.
impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (&(es, et), c)) in self.terms.iter().enumerate() {
            write_coeff(f, k == 0, c, es == 0 && et == 0)?;
            write_power(f, "s", es)?;
            write_power(f, "t", et)?;
        }
        Ok(())
    }
}

impl FromStr for BivariatePoly {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut out = Self::zero();
        for (coeff, powers) in split_terms(text)? {
            let mut exps = [0i64; 2];
            let mut seen = [false; 2];
            let mut rest = powers.as_str();
            while !rest.is_empty() {
                let slot = match rest.as_bytes()[0] {
                    b's' => 0,
                    b't' => 1,
                    _ => return Err(Error::Malformed(format!("bad term in {text:?}"))),
                };
                if std::mem::replace(&mut seen[slot], true) {
                    return Err(Error::Malformed(format!("repeated variable in {text:?}")));
                }
                let (e, tail) = parse_exponent(&rest[1..])?;
                exps[slot] = e;
                rest = tail;
            }
            out.add_term(coeff, exps[0], exps[1]);
        }
        Ok(out)
    }
}

/// Splits `"3s^2 - t + 5"` into signed coefficients and their variable parts.
fn split_terms(text: &str) -> Result<Vec<(BigInt, String)>> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Malformed("empty polynomial".into()));
    }
    if compact == "0" {
        return Ok(Vec::new());
    }
    let bytes = compact.as_bytes();
    let mut terms = Vec::new();
    let mut start = 0;
    for i in 1..=bytes.len() {
        // a sign starts a new term unless it follows '^'
        let boundary =
            i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^');
        if boundary {
            terms.push(parse_signed_term(&compact[start..i])?);
            start = i;
        }
    }
    Ok(terms)
}

fn parse_signed_term(term: &str) -> Result<(BigInt, String)> {
    let (negative, body) = match term.as_bytes().first() {
        Some(b'-') => (true, &term[1..]),
        Some(b'+') => (false, &term[1..]),
        _ => (false, term),
    };
    let digits_end = body
        .find(|c: char| !c.is_ascii_digit())
        .unwrap_or(body.len());
    let (digits, powers) = body.split_at(digits_end);
    if digits.is_empty() && powers.is_empty() {
        return Err(Error::Malformed(format!("empty term {term:?}")));
    }
    let mag: BigInt = if digits.is_empty() {
        BigInt::one()
    } else {
        digits
            .parse()
            .map_err(|_| Error::Malformed(format!("bad coefficient {digits:?}")))?
    };
    Ok((if negative { -mag } else { mag }, powers.to_string()))
}

fn parse_exponent(rest: &str) -> Result<(i64, &str)> {
    let Some(tail) = rest.strip_prefix('^') else {
        return Ok((1, rest));
    };
    let end = tail
        .char_indices()
        .find(|&(i, c)| !(c.is_ascii_digit() || (i == 0 && c == '-')))
        .map_or(tail.len(), |(i, _)| i);
    let e = tail[..end]
        .parse()
        .map_err(|_| Error::Malformed(format!("bad exponent in {rest:?}")))?;
    Ok((e, &tail[end..]))
}

/// Laurent polynomial in `z`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl ZPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, coeff: impl Into<BigInt>, ez: i64) {
        let coeff = coeff.into();
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(ez).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&ez);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&k, v)| (k, v))
    }

    pub fn coefficient(&self, ez: i64) -> BigInt {
        self.terms.get(&ez).cloned().unwrap_or_default()
    }

    /// Value at `z = 1`, the sum of the coefficients.
    pub fn at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(&ez, c)| json!({ "coeff": bigint_json(c), "ez": ez }))
                .collect(),
        )
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (&ez, c)) in self.terms.iter().enumerate() {
            write_coeff(f, k == 0, c, ez == 0)?;
            write_power(f, "z", ez)?;
        }
        Ok(())
    }
}

/// A multiset of bivariate polynomials with positive multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PolyMultiset {
    entries: BTreeMap<BivariatePoly, u64>,
}

impl PolyMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, p: BivariatePoly) {
        *self.entries.entry(p).or_insert(0) += 1;
    }

    pub fn multiplicity(&self, p: &BivariatePoly) -> u64 {
        self.entries.get(p).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BivariatePoly, u64)> {
        self.entries.iter().map(|(p, &m)| (p, m))
    }

    /// `Σ multiplicity · z^{p(s0, t0)}`.
    pub fn specialize(&self, s0: i64, t0: i64) -> Result<ZPoly> {
        let mut out = ZPoly::zero();
        for (p, &m) in &self.entries {
            let value = p.evaluate(s0, t0)?;
            let ez = value.to_i64().ok_or_else(|| {
                Error::EvaluationDomain(format!("z exponent {value} does not fit in 64 bits"))
            })?;
            out.add_term(m, ez);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.entries
                .iter()
                .map(|(p, &m)| json!({ "multiplicity": m, "poly": p.to_string() }))
                .collect(),
        )
    }
}

impl FromIterator<BivariatePoly> for PolyMultiset {
    fn from_iter<I: IntoIterator<Item = BivariatePoly>>(iter: I) -> Self {
        let mut out = Self::new();
        iter.into_iter().for_each(|p| out.insert(p));
        out
    }
}

impl fmt::Display for PolyMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(p, m)| format!("{p}: {m}"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// `qp_Q(s, t) = Σ_x s^{r(x)} t^{c(x)}`.
///
/// For a rack whose profile is all zero this is the constant `n`; see
/// [`conventionally_zero`] for the other reading of that case.
pub fn qp(q: &QuandleTable) -> BivariatePoly {
    let profile = q.count_profile();
    profile
        .r
        .iter()
        .zip(&profile.c)
        .map(|(&r, &c)| BivariatePoly::monomial(1, r as i64, c as i64))
        .sum()
}

/// True when every row and column count vanishes, the case in which the
/// polynomial of a rack is conventionally written as `0`.
pub fn conventionally_zero(q: &QuandleTable) -> bool {
    q.count_profile().is_all_zero()
}

/// Subquandle polynomial of a closed subset, with counts taken in all of `q`.
pub fn sub_qp(q: &QuandleTable, subset: &[usize]) -> Result<BivariatePoly> {
    if let Some(&bad) = subset.iter().find(|&&x| x >= q.order()) {
        return Err(Error::InvalidParameter(format!(
            "element {} is outside a table of order {}",
            bad + 1,
            q.order()
        )));
    }
    let mut subset = subset.to_vec();
    subset.sort_unstable();
    subset.dedup();
    if !q.is_closed(&subset) {
        return Err(Error::NotASubquandle(format!(
            "{} is not closed under the operation",
            crate::table::format_subset(&subset)
        )));
    }
    let profile = q.count_profile();
    Ok(subset
        .iter()
        .map(|&x| BivariatePoly::monomial(1, profile.r[x] as i64, profile.c[x] as i64))
        .sum())
}

/// `qp_Q(s, 1)`.
pub fn row_poly(q: &QuandleTable) -> BivariatePoly {
    qp(q).set_t_to_one()
}

/// `qp_Q(1, t)`.
pub fn col_poly(q: &QuandleTable) -> BivariatePoly {
    qp(q).set_s_to_one()
}
