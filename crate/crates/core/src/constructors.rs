//! Standard quandle and rack families as explicit tables.

use crate::error::{Error, Result};
use crate::table::QuandleTable;

/// Largest table [`symplectic`] will build.
pub const SYMPLECTIC_MAX_ORDER: usize = 81;

fn require_order(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("order must be at least 1".into()));
    }
    Ok(())
}

fn residue(a: i64, n: usize) -> usize {
    a.rem_euclid(n as i64) as usize
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `T_n`: `x ▷ y = x`.
pub fn trivial(n: usize) -> Result<QuandleTable> {
    require_order(n)?;
    QuandleTable::from_fn(n, |x, _| x)
}

/// `x ▷ y = a·x + (1 − a)·y` on `Z_n`; `a` must be a unit mod `n`.
pub fn alexander_cyclic(n: usize, a: i64) -> Result<QuandleTable> {
    require_order(n)?;
    let a = residue(a, n);
    if gcd(a, n) != 1 {
        return Err(Error::InvalidParameter(format!(
            "{a} is not invertible modulo {n}"
        )));
    }
    let b = residue(1 - a as i64, n);
    QuandleTable::from_fn(n, |x, y| (a * x + b * y) % n)
}

/// `x ▷ y = 2y − x` on `Z_n`.
pub fn dihedral(n: usize) -> Result<QuandleTable> {
    require_order(n)?;
    QuandleTable::from_fn(n, |x, y| (2 * y + n - x) % n)
}

/// `x ▷ y = A·x + B·y + C` on `Z_n`, with no axiom checks. Only `B = 1 − A`,
/// `C = 0` gives a quandle.
pub fn linear(n: usize, a: i64, b: i64, c: i64) -> Result<QuandleTable> {
    require_order(n)?;
    let (a, b, c) = (residue(a, n), residue(b, n), residue(c, n));
    QuandleTable::from_fn(n, |x, y| (a * x + b * y + c) % n)
}

/// `x ▷ y = x + k` on `Z_n`; a rack, and a quandle only when `k ≡ 0`.
pub fn constant_rack(n: usize, k: i64) -> Result<QuandleTable> {
    require_order(n)?;
    let k = residue(k, n);
    QuandleTable::from_fn(n, |x, _| (x + k) % n)
}

/// A finite group given by its Cayley table, `mul(a, b) = a·b`.
///
/// The identity is located rather than assumed to be the first element.
#[derive(Clone, Debug)]
pub struct Group {
    table: QuandleTable,
    identity: usize,
    inverse: Vec<usize>,
}

impl Group {
    pub fn from_table(table: QuandleTable) -> Result<Self> {
        let n = table.order();
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table.op(e, x) == x && table.op(x, e) == x))
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
        let inverse = (0..n)
            .map(|x| {
                (0..n)
                    .find(|&y| table.op(x, y) == identity && table.op(y, x) == identity)
                    .ok_or_else(|| Error::NotAGroup(format!("x{} has no inverse", x + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        for a in 0..n {
            for b in 0..n {
                let ab = table.op(a, b);
                for c in 0..n {
                    if table.op(ab, c) != table.op(a, table.op(b, c)) {
                        return Err(Error::NotAGroup("multiplication is not associative".into()));
                    }
                }
            }
        }
        Ok(Group {
            table,
            identity,
            inverse,
        })
    }

    /// The cyclic group `Z_n` under addition.
    pub fn cyclic(n: usize) -> Result<Self> {
        require_order(n)?;
        Self::from_table(QuandleTable::from_fn(n, |a, b| (a + b) % n)?)
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table.op(a, b)
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn pow(&self, a: usize, k: u32) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn is_automorphism(&self, map: &[usize]) -> bool {
        let n = self.order();
        if map.len() != n || map.iter().any(|&v| v >= n) {
            return false;
        }
        let mut seen = vec![false; n];
        if map.iter().any(|&v| std::mem::replace(&mut seen[v], true)) {
            return false;
        }
        (0..n).all(|a| (0..n).all(|b| map[self.mul(a, b)] == self.mul(map[a], map[b])))
    }
}

/// `x ▷ y = y^{-k} x y^k`; `k = 1` is the conjugation quandle.
pub fn conjugation(group: &Group, nfold: u32) -> Result<QuandleTable> {
    QuandleTable::from_fn(group.order(), |x, y| {
        let yk = group.pow(y, nfold);
        group.mul(group.mul(group.inv(yk), x), yk)
    })
}

/// `x ▷ y = s(x y^{-1}) y` for a group automorphism `s`.
pub fn homogeneous(group: &Group, automorphism: &[usize]) -> Result<QuandleTable> {
    if !group.is_automorphism(automorphism) {
        return Err(Error::InvalidParameter(
            "map is not a group automorphism".into(),
        ));
    }
    QuandleTable::from_fn(group.order(), |x, y| {
        group.mul(automorphism[group.mul(x, group.inv(y))], y)
    })
}

/// `x ▷ y = x + ⟨x, y⟩ y` on `(Z_p)^dim` with the standard symplectic form
/// `Σ_i (a_{2i} b_{2i+1} − a_{2i+1} b_{2i})`.
///
/// Vectors are indexed by their base-`p` digits, least significant first.
pub fn symplectic(p: usize, dim: usize) -> Result<QuandleTable> {
    if p < 2
        || !(2..p)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
    {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    if dim == 0 || !dim.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "dimension {dim} must be positive and even"
        )));
    }
    let order = (p as u64).checked_pow(dim as u32).unwrap_or(u64::MAX);
    if order > SYMPLECTIC_MAX_ORDER as u64 {
        return Err(Error::UnsupportedOrder {
            order: order.min(usize::MAX as u64) as usize,
            limit: SYMPLECTIC_MAX_ORDER,
        });
    }
    let order = order as usize;
    let digits = |mut v: usize| -> Vec<usize> {
        (0..dim)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    };
    let vectors: Vec<Vec<usize>> = (0..order).map(digits).collect();
    let form = |a: &[usize], b: &[usize]| -> usize {
        (0..dim / 2).fold(0, |acc, i| {
            let plus = a[2 * i] * b[2 * i + 1];
            let minus = a[2 * i + 1] * b[2 * i];
            (acc + plus + p * p - minus % p) % p
        })
    };
    QuandleTable::from_fn(order, |x, y| {
        let (vx, vy) = (&vectors[x], &vectors[y]);
        let w = form(vx, vy);
        vx.iter()
            .zip(vy)
            .rev()
            .fold(0, |acc, (&a, &b)| acc * p + (a + w * b) % p)
    })
}
