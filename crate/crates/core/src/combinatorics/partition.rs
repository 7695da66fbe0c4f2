use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coefficients::{Exp, HalfLaurent};
use crate::error::{Error, Result};

/// Integer partition, parts weakly decreasing and strictly positive.
///
/// Partitions are ordered by size first, then reverse lexicographically, so
/// `[2]` comes before `[1,1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition(Vec<usize>);

/// A box of a Young diagram. Rows and columns are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
    /// column minus row
    pub content: i32,
    /// arm + leg + 1
    pub hook: usize,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(parts));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The one-row partition `(n)`, or the empty partition for `n == 0`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Partition::empty()
        } else {
            Partition(vec![n])
        }
    }

    pub fn column(n: usize) -> Self {
        Partition(vec![1; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.0.first().copied().unwrap_or(0);
        Partition((1..=width).map(|j| self.0.iter().take_while(|&&p| p >= j).count()).collect())
    }

    pub fn cells(&self) -> Vec<Cell> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.size());
        for (i, &len) in self.0.iter().enumerate() {
            for j in 0..len {
                let arm = len - j - 1;
                let leg = conj.0[j] - i - 1;
                out.push(Cell {
                    row: i + 1,
                    col: j + 1,
                    content: j as i32 - i as i32,
                    hook: arm + leg + 1,
                });
            }
        }
        out
    }

    /// `sum over boxes of q^content`.
    pub fn content_polynomial(&self) -> HalfLaurent {
        HalfLaurent::from_terms(
            self.cells()
                .into_iter()
                .map(|c| (Exp::new(0, 2 * c.content), BigInt::from(1))),
        )
    }

    /// Sum of contents over all boxes.
    pub fn total_content(&self) -> i32 {
        self.cells().iter().map(|c| c.content).sum()
    }

    /// Size of the centraliser of a permutation of cycle type `self`:
    /// `prod_i i^{m_i} m_i!`.
    pub fn z(&self) -> BigInt {
        let mut out = BigInt::from(1);
        let mut i = 0;
        while i < self.0.len() {
            let part = self.0[i];
            let mut m = 0usize;
            while i < self.0.len() && self.0[i] == part {
                m += 1;
                i += 1;
                out *= part * m;
            }
        }
        out
    }

    /// Union of parts, as used for products of power sums.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts: Vec<usize> = self.0.iter().chain(&other.0).copied().collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    /// All partitions of `n`, in the crate's canonical order.
    pub fn all(n: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fill(n, n, &mut cur, &mut out);
        out
    }

    /// All partitions of size at most `n`, grouped by size.
    pub fn up_to(n: usize) -> Vec<Partition> {
        (0..=n).flat_map(Partition::all).collect()
    }
}

fn fill(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    for p in (1..=rest.min(max)).rev() {
        cur.push(p);
        fill(rest - p, p, cur, out);
        cur.pop();
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size().cmp(&other.size()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| Error::parse(0, "partition must be written like [3,1]"))?;
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        let mut offset = 1;
        for piece in inner.split(',') {
            let v = piece
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::parse(offset, format!("`{}` is not a positive integer", piece.trim())))?;
            parts.push(v);
            offset += piece.len() + 1;
        }
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}
