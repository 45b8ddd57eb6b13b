//! Linear characters of the Sylow 3-subgroup `P_n` of `S_n` and their
//! classification data.
//!
//! A character is labelled by one binary sequence per 3-power part of `n`:
//! a sequence of length `k` stands for a factor `P_{3^k}`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn pow3(k: u32) -> u64 {
    3u64.pow(k)
}

/// Base-3 digits of `n`, least significant first.
pub fn padic_expansion(n: u64) -> Vec<u8> {
    let mut digits = Vec::new();
    let mut m = n;
    while m > 0 {
        digits.push((m % 3) as u8);
        m /= 3;
    }
    digits
}

#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct BinarySeq(Vec<u8>);

impl BinarySeq {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::InvalidLabel(format!("{bits:?} is not binary")));
        }
        Ok(Self(bits))
    }

    pub fn zeros(k: usize) -> Self {
        Self(vec![0; k])
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> u32 {
        self.0.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree `3^k` of the factor this sequence labels.
    pub fn degree(&self) -> u64 {
        pow3(self.len())
    }

    pub fn ones(&self) -> u32 {
        self.0.iter().filter(|&&b| b == 1).count() as u32
    }

    pub fn is_quasi_trivial(&self) -> bool {
        self.ones() <= 1
    }

    /// Bit at 1-based position `i`.
    pub fn at(&self, i: u32) -> u8 {
        self.0[i as usize - 1]
    }

    /// All binary sequences of length `k`, in lexicographic order.
    pub fn all(k: u32) -> Vec<BinarySeq> {
        (0..1u64 << k)
            .map(|x| Self((0..k).map(|i| ((x >> (k - 1 - i)) & 1) as u8).collect()))
            .collect()
    }

    pub fn stats(&self) -> SeqStats {
        seq_stats(self)
    }
}

impl Ord for BinarySeq {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for BinarySeq {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BinarySeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("-");
        }
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinarySeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for BinarySeq {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "-" {
            return Ok(Self::default());
        }
        let mut bits = Vec::with_capacity(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => bits.push(0),
                '1' | '2' => bits.push(1),
                _ => {
                    return Err(Error::Parse {
                        pos: i,
                        msg: format!("unexpected {c:?} in sequence"),
                    })
                }
            }
        }
        Ok(Self(bits))
    }
}

impl TryFrom<String> for BinarySeq {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<BinarySeq> for String {
    fn from(s: BinarySeq) -> Self {
        s.to_string()
    }
}

/// Maps every nonzero entry to 1.
pub fn normalize_sequence(raw: &[u8]) -> BinarySeq {
    BinarySeq(raw.iter().map(|&x| u8::from(x != 0)).collect())
}

/// Positions (1-based) of the distinguished 1s of a sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeqStats {
    pub len: u32,
    /// Number of 1s.
    pub ones: u32,
    pub first_one: Option<u32>,
    pub second_one: Option<u32>,
    /// End of the leading run of 1s; only when the sequence starts with 1.
    pub leading_run: Option<u32>,
    /// First 1 after the leading run.
    pub first_after_run: Option<u32>,
    /// Second 1 after the leading run.
    pub second_after_run: Option<u32>,
}

pub fn seq_stats(s: &BinarySeq) -> SeqStats {
    let ones: Vec<u32> = (1..=s.len()).filter(|&i| s.at(i) == 1).collect();
    let leading_run = if !s.is_empty() && s.at(1) == 1 {
        Some((1..=s.len()).take_while(|&i| s.at(i) == 1).count() as u32)
    } else {
        None
    };
    let after: Vec<u32> = match leading_run {
        Some(run) => ones.iter().copied().filter(|&i| i > run).collect(),
        None => Vec::new(),
    };
    SeqStats {
        len: s.len(),
        ones: ones.len() as u32,
        first_one: ones.first().copied(),
        second_one: ones.get(1).copied(),
        leading_run,
        first_after_run: after.first().copied(),
        second_after_run: after.get(1).copied(),
    }
}

/// Row of the classification of sequences of length at least 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SigmaType {
    #[serde(rename = "1")]
    T1,
    #[serde(rename = "10")]
    T10,
    #[serde(rename = "11")]
    T11,
    #[serde(rename = "2")]
    T2,
    #[serde(rename = "21")]
    T21,
    #[serde(rename = "3")]
    T3,
    #[serde(rename = "30")]
    T30,
    #[serde(rename = "31")]
    T31,
    #[serde(rename = "5")]
    T5,
    #[serde(rename = "6")]
    T6,
    #[serde(rename = "7")]
    T7,
    #[serde(rename = "22")]
    T22,
}

impl SigmaType {
    pub fn tag(self) -> &'static str {
        match self {
            SigmaType::T1 => "1",
            SigmaType::T10 => "10",
            SigmaType::T11 => "11",
            SigmaType::T2 => "2",
            SigmaType::T21 => "21",
            SigmaType::T3 => "3",
            SigmaType::T30 => "30",
            SigmaType::T31 => "31",
            SigmaType::T5 => "5",
            SigmaType::T6 => "6",
            SigmaType::T7 => "7",
            SigmaType::T22 => "22",
        }
    }

    /// `c` in the relation `N(s) = m(s) + c`.
    pub fn gap(self) -> u64 {
        match self {
            SigmaType::T1 | SigmaType::T10 | SigmaType::T11 | SigmaType::T5 => 2,
            SigmaType::T2 | SigmaType::T21 | SigmaType::T22 => 0,
            SigmaType::T3 | SigmaType::T30 | SigmaType::T31 => 1,
            SigmaType::T6 | SigmaType::T7 => 5,
        }
    }

    pub fn is_quasi_trivial(self) -> bool {
        matches!(
            self,
            SigmaType::T1
                | SigmaType::T2
                | SigmaType::T3
                | SigmaType::T30
                | SigmaType::T31
                | SigmaType::T5
                | SigmaType::T6
        )
    }
}

impl fmt::Display for SigmaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Type and `N(s)` of a sequence of length `k >= 3`.
pub fn sigma_type(s: &BinarySeq) -> Result<(SigmaType, u64)> {
    let k = s.len();
    if k < 3 {
        return Err(Error::OutOfRange(format!(
            "sigma_type needs length >= 3, got {k}"
        )));
    }
    let st = seq_stats(s);
    let full = pow3(k);
    let ty = match (st.leading_run, st.ones) {
        (_, 0) => (SigmaType::T1, full),
        (Some(run), _) if run == k => (SigmaType::T21, full.div_ceil(2)),
        (Some(run), z) if z == run => match run {
            1 if k == 3 => (SigmaType::T6, 18),
            1 => (SigmaType::T5, 2 * pow3(k - 1)),
            r if r == k - 1 => (SigmaType::T11, (full + 3) / 2),
            r if r == k - 2 => (SigmaType::T7, (full + 9) / 2),
            r => (SigmaType::T10, (full + pow3(k - r)) / 2),
        },
        (Some(_), _) => (SigmaType::T22, crate::closed_form::little_m_prime_power(s)),
        (None, 1) => {
            let f = st.first_one.expect("one 1");
            match k - f {
                0 => (SigmaType::T2, full - 1),
                1 => (SigmaType::T31, full - 3),
                2 => (SigmaType::T30, full - 9),
                d => (SigmaType::T3, full - pow3(d)),
            }
        }
        (None, _) => (SigmaType::T22, crate::closed_form::little_m_prime_power(s)),
    };
    Ok(ty)
}

/// A linear character of `P_n`: a multiset of sequences, one per 3-power part.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "LabelJson", into = "LabelJson")]
pub struct CharLabel {
    n: u64,
    components: Vec<BinarySeq>,
}

#[derive(Serialize, Deserialize)]
struct LabelJson {
    n: u64,
    components: Vec<BinarySeq>,
}

impl TryFrom<LabelJson> for CharLabel {
    type Error = Error;
    fn try_from(j: LabelJson) -> Result<Self> {
        let label = CharLabel::new(j.components)?;
        if label.n != j.n {
            return Err(Error::SizeMismatch {
                expected: j.n,
                got: label.n,
            });
        }
        Ok(label)
    }
}

impl From<CharLabel> for LabelJson {
    fn from(l: CharLabel) -> Self {
        LabelJson {
            n: l.n,
            components: l.components,
        }
    }
}

impl CharLabel {
    pub fn new(mut components: Vec<BinarySeq>) -> Result<Self> {
        components.sort();
        for w in components.windows(3) {
            if w[0].len() == w[2].len() {
                return Err(Error::InvalidLabel(format!(
                    "more than two components of length {}",
                    w[0].len()
                )));
            }
        }
        let n = components.iter().map(|c| c.degree()).sum();
        Ok(Self { n, components })
    }

    /// The trivial character of `P_n`.
    pub fn trivial(n: u64) -> Self {
        let mut components = Vec::new();
        for (k, &d) in padic_expansion(n).iter().enumerate() {
            for _ in 0..d {
                components.push(BinarySeq::zeros(k));
            }
        }
        Self::new(components).expect("base-3 digits are at most 2")
    }

    pub fn single(s: BinarySeq) -> Self {
        Self::new(vec![s]).expect("one component")
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn components(&self) -> &[BinarySeq] {
        &self.components
    }

    /// Components in printing order: longest first, ties ascending.
    pub fn display_order(&self) -> Vec<&BinarySeq> {
        let mut v: Vec<&BinarySeq> = self.components.iter().collect();
        v.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        v
    }

    pub fn is_quasi_trivial(&self) -> bool {
        self.components.iter().all(BinarySeq::is_quasi_trivial)
    }

    pub fn is_trivial(&self) -> bool {
        self.components.iter().all(|c| c.ones() == 0)
    }

    /// Components of length at least 3 (a degree divisible by 27).
    pub fn big_part(&self) -> CharLabel {
        Self::new(
            self.components
                .iter()
                .filter(|c| c.len() >= 3)
                .cloned()
                .collect(),
        )
        .unwrap()
    }

    /// Components of length at most 2 (degree below 27).
    pub fn small_part(&self) -> CharLabel {
        Self::new(
            self.components
                .iter()
                .filter(|c| c.len() <= 2)
                .cloned()
                .collect(),
        )
        .unwrap()
    }

    pub fn split(&self) -> (CharLabel, CharLabel) {
        (self.big_part(), self.small_part())
    }

    pub fn join(&self, other: &CharLabel) -> Result<CharLabel> {
        let mut all = self.components.clone();
        all.extend_from_slice(&other.components);
        Self::new(all)
    }

    /// Components with at least one 1.
    pub fn nontrivial_components(&self) -> Vec<&BinarySeq> {
        self.components.iter().filter(|c| c.ones() > 0).collect()
    }

    /// Every label of `P_n`.
    pub fn all(n: u64) -> Vec<CharLabel> {
        let mut labels = vec![Vec::new()];
        for (k, &d) in padic_expansion(n).iter().enumerate() {
            let seqs = BinarySeq::all(k as u32);
            let choices: Vec<Vec<BinarySeq>> = match d {
                0 => vec![vec![]],
                1 => seqs.iter().map(|s| vec![s.clone()]).collect(),
                _ => seqs
                    .iter()
                    .cloned()
                    .combinations_with_replacement(2)
                    .collect(),
            };
            let mut next = Vec::new();
            for base in &labels {
                for c in &choices {
                    let mut l: Vec<BinarySeq> = base.clone();
                    l.extend(c.iter().cloned());
                    next.push(l);
                }
            }
            labels = next;
        }
        let mut out: Vec<CharLabel> = labels
            .into_iter()
            .map(|c| CharLabel::new(c).unwrap())
            .collect();
        out.sort();
        out
    }
}

impl fmt::Display for CharLabel {
    /// Longest components first, e.g. `0000;00;10`; the empty sequence prints as `-`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.display_order().into_iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            if c.is_empty() {
                f.write_str("-")?;
            } else {
                write!(f, "{c}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CharLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (n={})", self.n)
    }
}

impl FromStr for CharLabel {
    type Err = Error;

    /// Semicolon-separated bit strings; `-` is the empty sequence of a 1-point part.
    /// Entries 2 are accepted and normalized to 1.
    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Err(Error::Parse {
                pos: 0,
                msg: "empty label".into(),
            });
        }
        let mut comps = Vec::new();
        let mut pos = 0;
        for token in s.split(';') {
            let seq: BinarySeq = token.parse().map_err(|e| match e {
                Error::Parse { pos: p, msg } => {
                    let lead = token.len() - token.trim_start().len();
                    Error::Parse {
                        pos: pos + lead + p,
                        msg,
                    }
                }
                other => other,
            })?;
            if token.trim().is_empty() {
                return Err(Error::Parse {
                    pos,
                    msg: "empty component (use '-' for a 1-point part)".into(),
                });
            }
            comps.push(seq);
            pos += token.len() + 1;
        }
        Self::new(comps)
    }
}

/// Counts of big quasi-trivial components by type: `(y1, y2, y3, y30, y31, y5, y6)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SigmaVector(pub [u32; 7]);

impl SigmaVector {
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    fn pattern(r: u32, tail: [u32; 6]) -> Option<[u32; 7]> {
        let used: u32 = tail.iter().sum();
        (r >= used).then(|| {
            let mut v = [0; 7];
            v[0] = r - used;
            v[1..].copy_from_slice(&tail);
            v
        })
    }

    pub fn in_e(&self) -> bool {
        const TAILS: [[u32; 6]; 9] = [
            [0, 1, 0, 0, 0, 0],
            [0, 0, 1, 0, 0, 0],
            [0, 0, 0, 1, 0, 0],
            [0, 0, 0, 2, 0, 0],
            [1, 0, 1, 0, 0, 0],
            [1, 0, 0, 1, 0, 0],
            [0, 0, 0, 0, 1, 0],
            [1, 0, 0, 0, 0, 1],
            [0, 0, 0, 0, 0, 1],
        ];
        let r = self.total();
        TAILS.iter().any(|t| Self::pattern(r, *t) == Some(self.0))
    }

    pub fn in_f(&self) -> bool {
        const TAILS: [[u32; 6]; 3] = [[0, 0, 1, 0, 0, 0], [0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 0, 1]];
        let r = self.total();
        TAILS.iter().any(|t| Self::pattern(r, *t) == Some(self.0))
    }

    /// `(R, 0, ..., 0)`.
    pub fn is_all_trivial(&self) -> bool {
        self.0[1..].iter().all(|&y| y == 0)
    }
}

impl fmt::Display for SigmaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.0;
        write!(
            f,
            "({},{},{},{},{},{},{})",
            v[0], v[1], v[2], v[3], v[4], v[5], v[6]
        )
    }
}

/// Type counts of a quasi-trivial big part.
pub fn sigma_vector(big: &CharLabel) -> Result<SigmaVector> {
    let mut v = [0u32; 7];
    for c in big.components() {
        if c.len() < 3 {
            return Err(Error::InvalidLabel(format!(
                "component {c} is not part of the big part"
            )));
        }
        let (ty, _) = sigma_type(c)?;
        let slot = match ty {
            SigmaType::T1 => 0,
            SigmaType::T2 => 1,
            SigmaType::T3 => 2,
            SigmaType::T30 => 3,
            SigmaType::T31 => 4,
            SigmaType::T5 => 5,
            SigmaType::T6 => 6,
            _ => return Err(Error::NotQuasiTrivial(big.to_string())),
        };
        v[slot] += 1;
    }
    Ok(SigmaVector(v))
}

/// `N(Θ)`: the per-type values of the big components plus `N` of the small part.
pub fn n_total(label: &CharLabel) -> Result<u64> {
    let (big, small) = label.split();
    let mut total = 0;
    for c in big.components() {
        total += sigma_type(c)?.1;
    }
    if small.n() > 0 {
        total += crate::small::small_char_data(&small)?.n_value;
    }
    Ok(total)
}
