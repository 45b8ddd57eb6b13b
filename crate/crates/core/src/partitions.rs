//! Integer partitions, Young diagrams and the box sets `B_n(t)`.
//!
//! Partitions order by size first and then by *decreasing* lexicographic
//! order of parts, so a sorted collection of partitions of one size comes
//! out in the same order as [`enumerate_partitions`].

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Soft cap for explicit enumeration; past this, work with descriptors.
pub const ENUMERATION_CAP: u32 = 120;

#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
    size: u32,
}

/// A cell of a Young diagram, 1-based, matrix orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub row: u32,
    pub col: u32,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} has an interior zero"
            )));
        }
        Ok(Self::from_sorted(parts))
    }

    /// Caller guarantees `parts` is weakly decreasing with no zeros.
    pub(crate) fn from_sorted(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(!parts.contains(&0));
        let size = parts.iter().sum();
        Self { parts, size }
    }

    /// Sorts and strips zeros.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::from_sorted(parts)
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn row(n: u32) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Self::from_sorted(vec![n])
        }
    }

    pub fn column(n: u32) -> Self {
        Self::from_sorted(vec![1; n as usize])
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn len(&self) -> u32 {
        self.parts.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// First part, 0 for the empty partition.
    pub fn first(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Part `i` (0-based), 0 past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Side of the smallest square containing the diagram.
    pub fn extent(&self) -> u32 {
        self.first().max(self.len())
    }

    pub fn conjugate(&self) -> Self {
        let width = self.first() as usize;
        let mut out = vec![0u32; width];
        for &p in &self.parts {
            for c in out.iter_mut().take(p as usize) {
                *c += 1;
            }
        }
        Self {
            parts: out,
            size: self.size,
        }
    }

    /// No cell at (2,2).
    pub fn is_hook(&self) -> bool {
        self.part(1) <= 1
    }

    pub fn is_two_row(&self) -> bool {
        self.len() <= 2
    }

    pub fn is_thin(&self) -> bool {
        self.is_hook() || self.len() <= 2 || self.first() <= 2
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    pub fn fits_box(&self, t: u32) -> bool {
        self.first() <= t && self.len() <= t
    }

    /// `(first, rest...)`, or `None` if the result is not a partition.
    pub fn prepend(first: u32, rest: &Partition) -> Option<Self> {
        if first < rest.first() {
            return None;
        }
        let mut parts = Vec::with_capacity(rest.parts.len() + 1);
        parts.push(first);
        parts.extend_from_slice(&rest.parts);
        Self::new(parts).ok()
    }

    /// The partition with its first row removed.
    /// Every partition obtained by adding one cell.
    pub fn add_box_all(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        for r in 0..=self.parts.len() {
            if r == 0 || self.parts[r - 1] > self.part(r) {
                let mut parts = self.parts.clone();
                if r == parts.len() {
                    parts.push(1);
                } else {
                    parts[r] += 1;
                }
                out.push(Partition {
                    parts,
                    size: self.size + 1,
                });
            }
        }
        out
    }

    pub fn tail(&self) -> Self {
        Self::from_sorted(self.parts.iter().skip(1).copied().collect())
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.parts.iter().enumerate().flat_map(|(r, &len)| {
            (1..=len).map(move |c| Cell {
                row: r as u32 + 1,
                col: c,
            })
        })
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size
            .cmp(&other.size)
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `[5,4]`, `(5,4)`, `5,4` and exponents such as `[2,1^7]`.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        let (body, offset) = match (trimmed.chars().next(), trimmed.chars().last()) {
            (Some('['), Some(']')) | (Some('('), Some(')')) => (
                &trimmed[1..trimmed.len() - 1],
                s.find(['[', '(']).unwrap() + 1,
            ),
            _ => (trimmed, s.len() - s.trim_start().len()),
        };
        if body.trim().is_empty() {
            return Ok(Self::empty());
        }
        let mut parts = Vec::new();
        let mut pos = offset;
        for token in body.split(',') {
            let tok = token.trim();
            let lead = token.len() - token.trim_start().len();
            let err = |msg: &str| Error::Parse {
                pos: pos + lead,
                msg: msg.to_string(),
            };
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => (b.trim(), e.trim()),
                None => (tok, "1"),
            };
            let base: u32 = base
                .parse()
                .map_err(|_| err(&format!("expected a part, found {tok:?}")))?;
            let exp: u32 = exp
                .parse()
                .map_err(|_| err(&format!("bad exponent in {tok:?}")))?;
            if base == 0 {
                return Err(err("parts must be positive"));
            }
            parts.extend(std::iter::repeat_n(base, exp as usize));
            pos += token.len() + 1;
        }
        Self::new(parts)
    }
}

/// Builds a partition from a literal; panics on invalid input. For tests and tables.
pub fn p(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).expect("invalid partition literal")
}

pub fn conjugate(lambda: &Partition) -> Partition {
    lambda.conjugate()
}

pub fn is_thin(lambda: &Partition) -> bool {
    lambda.is_thin()
}

pub fn is_hook(lambda: &Partition) -> bool {
    lambda.is_hook()
}

/// `(m, 1^{n-m})`.
pub fn hook_of(n: u32, m: u32) -> Result<Partition> {
    if m < 1 || m > n {
        return Err(Error::OutOfRange(format!(
            "hook_of({n}, {m}) needs 1 <= m <= n"
        )));
    }
    let mut parts = vec![m];
    parts.extend(std::iter::repeat_n(1, (n - m) as usize));
    Ok(Partition::from_sorted(parts))
}

/// `(m, n-m)` with `m >= n/2`.
pub fn two_row_of(n: u32, m: u32) -> Result<Partition> {
    if m < 1 || m > n || 2 * m < n {
        return Err(Error::OutOfRange(format!(
            "two_row_of({n}, {m}) needs n/2 <= m <= n"
        )));
    }
    Ok(Partition::from_sorted(if m == n {
        vec![n]
    } else {
        vec![m, n - m]
    }))
}

/// All partitions of `n` in decreasing lexicographic order.
pub fn enumerate_partitions(n: u32) -> Vec<Partition> {
    enumerate_bounded(n, n, n)
}

/// `B_n(t)`: partitions of `n` inside a `t x t` square.
pub fn enumerate_box(n: u32, t: u32) -> Vec<Partition> {
    enumerate_bounded(n, t, t)
}

/// Partitions of `n` with every part at most `max_part` and at most `max_len` parts,
/// in decreasing lexicographic order.
pub fn enumerate_bounded(n: u32, max_part: u32, max_len: u32) -> Vec<Partition> {
    fn go(rem: u32, cap: u32, len_left: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition::from_sorted(cur.clone()));
            return;
        }
        if len_left == 0 || (cap as u64) * (len_left as u64) < rem as u64 {
            return;
        }
        for part in (1..=cap.min(rem)).rev() {
            cur.push(part);
            go(rem - part, part, len_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, max_part, max_len, &mut Vec::new(), &mut out);
    out
}

/// Number of partitions of `n` with parts at most `max_part` and at most `max_len` parts,
/// saturating at `u64::MAX`.
pub fn count_bounded(n: u32, max_part: u32, max_len: u32) -> u64 {
    // Gaussian-binomial style table: ways[j][s] over parts of size <= current bound, j parts used.
    let max_len = max_len.min(n) as usize;
    let n = n as usize;
    let mut ways = vec![vec![0u64; n + 1]; max_len + 1];
    ways[0][0] = 1;
    for part in 1..=(max_part as usize).min(n) {
        for j in 1..=max_len {
            for s in part..=n {
                ways[j][s] = ways[j][s].saturating_add(ways[j - 1][s - part]);
            }
        }
    }
    (0..=max_len).fold(0u64, |acc, j| acc.saturating_add(ways[j][n]))
}

/// `A°`: the set together with all conjugates.
pub fn conjugate_closure<'a, I>(set: I) -> BTreeSet<Partition>
where
    I: IntoIterator<Item = &'a Partition>,
{
    let mut out = BTreeSet::new();
    for lambda in set {
        out.insert(lambda.conjugate());
        out.insert(lambda.clone());
    }
    out
}

pub fn contains(lambda: &Partition, mu: &Partition) -> bool {
    lambda.contains(mu)
}

/// The skew diagram `[outer \ inner]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SkewShape {
    outer: Partition,
    inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self> {
        if !outer.contains(&inner) {
            return Err(Error::NotNested(inner.to_string(), outer.to_string()));
        }
        Ok(Self { outer, inner })
    }

    pub fn straight(shape: Partition) -> Self {
        Self {
            outer: shape,
            inner: Partition::empty(),
        }
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn size(&self) -> u32 {
        self.outer.size() - self.inner.size()
    }

    /// Row `r` (0-based) spans columns `inner[r]+1 ..= outer[r]`.
    pub fn row_span(&self, r: usize) -> (u32, u32) {
        (self.inner.part(r), self.outer.part(r))
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..self.outer.len() as usize).flat_map(move |r| {
            let (a, b) = self.row_span(r);
            (a + 1..=b).map(move |c| Cell {
                row: r as u32 + 1,
                col: c,
            })
        })
    }

    /// Row lengths and left offsets after dropping empty rows and columns
    /// and translating to the origin.
    fn normalized_rows(&self) -> Vec<(u32, u32)> {
        let rows: Vec<(u32, u32)> = (0..self.outer.len() as usize)
            .map(|r| self.row_span(r))
            .filter(|(a, b)| b > a)
            .collect();
        let left = rows.iter().map(|r| r.0).min().unwrap_or(0);
        rows.into_iter()
            .map(|(a, b)| (a - left, b - left))
            .collect()
    }

    /// `Some(nu)` if the shape is a translate of `[nu]`.
    pub fn as_straight(&self) -> Option<Partition> {
        let rows = self.normalized_rows();
        if rows.iter().any(|r| r.0 != 0) {
            return None;
        }
        // consecutive rows must also be vertically contiguous
        let spans: Vec<usize> = (0..self.outer.len() as usize)
            .filter(|&r| self.outer.part(r) > self.inner.part(r))
            .collect();
        if spans.windows(2).any(|w| w[1] != w[0] + 1) {
            return None;
        }
        Partition::new(rows.iter().map(|r| r.1).collect()).ok()
    }

    /// The shape rotated by 180 degrees, placed in the smallest enclosing rectangle.
    pub fn rotated(&self) -> SkewShape {
        let height = self.outer.len() as usize;
        let width = self.outer.first();
        let mut outer = Vec::with_capacity(height);
        let mut inner = Vec::with_capacity(height);
        for r in (0..height).rev() {
            let (a, b) = self.row_span(r);
            outer.push(width - a);
            inner.push(width - b);
        }
        SkewShape {
            outer: Partition::from_unsorted(outer),
            inner: Partition::from_unsorted(inner),
        }
    }
}

pub fn skew(lambda: &Partition, mu: &Partition) -> Result<SkewShape> {
    SkewShape::new(lambda.clone(), mu.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[3, 2]).conjugate(), p(&[2, 2, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p(&[5]).conjugate(), Partition::column(5));
    }

    #[test]
    fn thin_and_hook() {
        assert!(p(&[5, 4]).is_thin());
        assert!(!p(&[4, 3, 2]).is_thin());
        assert!(p(&[3, 1, 1]).is_thin());
        assert!(p(&[4, 1, 1]).is_hook());
        assert!(!p(&[3, 2]).is_hook());
        assert!(p(&[1]).is_hook());
        assert!(p(&[2, 2, 2, 1]).is_thin());
    }

    #[test]
    fn hooks_and_two_rows() {
        assert_eq!(hook_of(27, 18).unwrap(), "[18,1^9]".parse().unwrap());
        assert_eq!(two_row_of(9, 6).unwrap(), p(&[6, 3]));
        assert_eq!(two_row_of(4, 4).unwrap(), p(&[4]));
        assert!(two_row_of(9, 4).is_err());
        assert!(hook_of(3, 0).is_err());
        assert!(hook_of(3, 4).is_err());
    }

    #[test]
    fn enumeration_counts() {
        let expected = [1u64, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77];
        // Euler's pentagonal recurrence as an independent count.
        let mut pn = vec![1i64];
        for n in 1..=12i64 {
            let mut total = 0i64;
            for k in 1.. {
                let g1 = k * (3 * k - 1) / 2;
                if g1 > n {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                total += sign * pn[(n - g1) as usize];
                let g2 = k * (3 * k + 1) / 2;
                if g2 <= n {
                    total += sign * pn[(n - g2) as usize];
                }
            }
            pn.push(total);
        }
        for n in 0..=12u32 {
            assert_eq!(enumerate_partitions(n).len() as u64, expected[n as usize]);
            assert_eq!(pn[n as usize] as u64, expected[n as usize]);
            assert_eq!(count_bounded(n, n, n), expected[n as usize]);
        }
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        assert_eq!(count_bounded(729, 729, 729), u64::MAX);
    }

    #[test]
    fn enumeration_is_decreasing_lex() {
        let all = enumerate_partitions(6);
        assert_eq!(all.first().unwrap(), &p(&[6]));
        assert_eq!(all.last().unwrap(), &Partition::column(6));
        assert!(all.windows(2).all(|w| w[0].parts() > w[1].parts()));
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(sorted, all);
    }

    #[test]
    fn boxes() {
        assert!(enumerate_box(9, 2).is_empty());
        assert_eq!(enumerate_box(4, 2), vec![p(&[2, 2])]);
        assert_eq!(enumerate_box(5, 5), enumerate_partitions(5));
        for n in 0..=10 {
            for t in 0..=n + 1 {
                assert_eq!(enumerate_box(n, t).len() as u64, count_bounded(n, t, t));
            }
        }
    }

    #[test]
    fn containment_and_skew() {
        assert!(p(&[5, 4]).contains(&p(&[3, 2])));
        assert!(!p(&[3, 3]).contains(&p(&[4])));
        assert_eq!(skew(&p(&[3, 2]), &p(&[1])).unwrap().size(), 4);
        assert!(skew(&p(&[3, 3]), &p(&[4])).is_err());
    }

    #[test]
    fn closure() {
        let c = conjugate_closure(&[p(&[8, 1])]);
        assert_eq!(
            c,
            [p(&[8, 1]), "[2,1^7]".parse().unwrap()]
                .into_iter()
                .collect()
        );
        let c = conjugate_closure(&[p(&[3, 3])]);
        assert_eq!(c, [p(&[3, 3]), p(&[2, 2, 2])].into_iter().collect());
        assert_eq!(conjugate_closure(&[p(&[2, 1])]).len(), 1);
    }

    #[test]
    fn text_round_trip() {
        let lam: Partition = "[2,1^7]".parse().unwrap();
        assert_eq!(lam.parts(), &[2, 1, 1, 1, 1, 1, 1, 1]);
        assert_eq!(lam.to_string(), "[2,1,1,1,1,1,1,1]");
        assert_eq!("[]".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!("(5, 4)".parse::<Partition>().unwrap(), p(&[5, 4]));
        assert!("[4,5]".parse::<Partition>().is_err());
        assert!("[a]".parse::<Partition>().is_err());
        let json = serde_json::to_string(&p(&[5, 4])).unwrap();
        assert_eq!(json, "[5,4]");
        assert_eq!(
            serde_json::from_str::<Partition>(&json).unwrap(),
            p(&[5, 4])
        );
        assert!(serde_json::from_str::<Partition>("[1,2]").is_err());
    }

    #[test]
    fn straight_and_rotated() {
        let s = skew(&p(&[3, 2]), &Partition::empty()).unwrap();
        assert_eq!(s.as_straight(), Some(p(&[3, 2])));
        let r = skew(&p(&[3, 3]), &p(&[2, 1])).unwrap();
        assert_eq!(r.as_straight(), None);
        assert_eq!(r.rotated().as_straight(), Some(p(&[2, 1])));
        let disjoint = skew(&p(&[2, 1]), &p(&[1])).unwrap();
        assert_eq!(disjoint.as_straight(), None);
        assert_eq!(disjoint.rotated().as_straight(), None);
    }
}
