//! Symbolic sets of partitions, closed under conjugation, and the
//! known/unknown wrapper used for partially determined positivity sets.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lr;
use crate::partitions::{
    count_bounded, enumerate_box, enumerate_partitions, Partition, ENUMERATION_CAP,
};

/// A conjugation-closed set of partitions of `n`. Exception lists hold
/// generators; their conjugates are excluded too.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "variant")]
pub enum OmegaSet {
    All {
        n: u32,
    },
    AllMinus {
        n: u32,
        exceptions: Vec<Partition>,
    },
    Box {
        n: u32,
        t: u32,
    },
    BoxMinus {
        n: u32,
        t: u32,
        exceptions: Vec<Partition>,
    },
    /// `below ⊔ {(top, mu) : mu ∈ inner}°`, with `below` inside `B_n(top-1)`.
    BoxPlusLayer {
        n: u32,
        top: u32,
        below: Box<OmegaSet>,
        inner: Box<OmegaSet>,
    },
    Explicit {
        n: u32,
        members: Vec<Partition>,
    },
    StarOf {
        n: u32,
        left: Box<OmegaSet>,
        right: Box<OmegaSet>,
    },
}

fn ceil_sqrt(n: u32) -> u32 {
    let mut r = (n as f64).sqrt() as u32;
    while r * r < n {
        r += 1;
    }
    while r > 0 && (r - 1) * (r - 1) >= n {
        r -= 1;
    }
    r
}

/// Smallest `e > t` such that some partition of `n` has extent exactly `e`.
fn min_extent_above(n: u32, t: u32) -> Option<u32> {
    let e = (t + 1).max(ceil_sqrt(n));
    (e <= n).then_some(e)
}

fn excluded(lambda: &Partition, exceptions: &[Partition]) -> bool {
    if exceptions.is_empty() {
        return false;
    }
    let conj = lambda.conjugate();
    exceptions.iter().any(|x| x == lambda || *x == conj)
}

fn closure(exceptions: &[Partition]) -> BTreeSet<Partition> {
    crate::partitions::conjugate_closure(exceptions)
}

/// Largest `e <= t` such that some partition in `B_n(t)` minus the exceptions has extent `e`.
fn max_extent_minus(n: u32, t: u32, exceptions: &[Partition]) -> Option<u32> {
    if n == 0 {
        return Some(0);
    }
    let xs = closure(exceptions);
    let mut e = t.min(n);
    while e >= ceil_sqrt(n) && e >= 1 {
        let with_first_row = count_bounded(n - e, e, e - 1);
        let removed = xs.iter().filter(|x| x.first() == e && x.len() <= e).count() as u64;
        if with_first_row > removed {
            return Some(e);
        }
        e -= 1;
    }
    None
}

static STAR_MEMO: OnceLock<Mutex<HashMap<String, Arc<Vec<Partition>>>>> = OnceLock::new();

impl OmegaSet {
    pub fn n(&self) -> u32 {
        match self {
            OmegaSet::All { n }
            | OmegaSet::AllMinus { n, .. }
            | OmegaSet::Box { n, .. }
            | OmegaSet::BoxMinus { n, .. }
            | OmegaSet::BoxPlusLayer { n, .. }
            | OmegaSet::Explicit { n, .. }
            | OmegaSet::StarOf { n, .. } => *n,
        }
    }

    pub fn explicit(n: u32, members: impl IntoIterator<Item = Partition>) -> Self {
        let set: BTreeSet<Partition> = members.into_iter().collect();
        OmegaSet::Explicit {
            n,
            members: set.into_iter().collect(),
        }
    }

    pub fn star_of(left: OmegaSet, right: OmegaSet) -> Self {
        OmegaSet::StarOf {
            n: left.n() + right.n(),
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    /// The operands of a nested star, left to right.
    fn star_factors<'a>(&'a self, out: &mut Vec<&'a OmegaSet>) {
        match self {
            OmegaSet::StarOf { left, right, .. } => {
                left.star_factors(out);
                right.star_factors(out);
            }
            other => out.push(other),
        }
    }

    fn star_members(left: &OmegaSet, right: &OmegaSet) -> Result<Arc<Vec<Partition>>> {
        let key = format!("{left}|{right}");
        let memo = STAR_MEMO.get_or_init(Default::default);
        if let Some(v) = memo.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let mut factors = Vec::new();
        left.star_factors(&mut factors);
        right.star_factors(&mut factors);
        let mut acc = factors[0].enumerate()?;
        for f in &factors[1..] {
            let next = f.enumerate()?;
            acc = lr::star(&acc, &next)?;
        }
        let v = Arc::new(acc);
        memo.lock().unwrap().insert(key, v.clone());
        Ok(v)
    }

    pub fn contains(&self, lambda: &Partition) -> bool {
        if lambda.size() != self.n() {
            return false;
        }
        match self {
            OmegaSet::All { .. } => true,
            OmegaSet::AllMinus { exceptions, .. } => !excluded(lambda, exceptions),
            OmegaSet::Box { t, .. } => lambda.fits_box(*t),
            OmegaSet::BoxMinus { t, exceptions, .. } => {
                lambda.fits_box(*t) && !excluded(lambda, exceptions)
            }
            OmegaSet::BoxPlusLayer {
                top, below, inner, ..
            } => {
                let conj = lambda.conjugate();
                (lambda.first() == *top && inner.contains(&lambda.tail()))
                    || (conj.first() == *top && inner.contains(&conj.tail()))
                    || below.contains(lambda)
            }
            OmegaSet::Explicit { members, .. } => members.binary_search(lambda).is_ok(),
            OmegaSet::StarOf { left, right, .. } => Self::star_members(left, right)
                .map(|m| m.binary_search(lambda).is_ok())
                .unwrap_or(false),
        }
    }

    /// All members, sorted; refuses `n` above the enumeration cap.
    pub fn enumerate(&self) -> Result<Vec<Partition>> {
        let n = self.n();
        if n > ENUMERATION_CAP {
            return Err(Error::TooLarge(n as u64, ENUMERATION_CAP as u64));
        }
        let mut out: Vec<Partition> = match self {
            OmegaSet::All { .. } => enumerate_partitions(n),
            OmegaSet::AllMinus { exceptions, .. } => enumerate_partitions(n)
                .into_iter()
                .filter(|l| !excluded(l, exceptions))
                .collect(),
            OmegaSet::Box { t, .. } => enumerate_box(n, *t),
            OmegaSet::BoxMinus { t, exceptions, .. } => enumerate_box(n, *t)
                .into_iter()
                .filter(|l| !excluded(l, exceptions))
                .collect(),
            OmegaSet::BoxPlusLayer {
                top, below, inner, ..
            } => {
                let mut set: BTreeSet<Partition> = below.enumerate()?.into_iter().collect();
                for mu in inner.enumerate()? {
                    if let Some(lam) = Partition::prepend(*top, &mu) {
                        set.insert(lam.conjugate());
                        set.insert(lam);
                    }
                }
                set.into_iter().collect()
            }
            OmegaSet::Explicit { members, .. } => members.clone(),
            OmegaSet::StarOf { left, right, .. } => {
                Self::star_members(left, right)?.as_ref().clone()
            }
        };
        out.sort();
        Ok(out)
    }

    /// Largest `t` with `B_n(t)` inside the set (`n` for the full set).
    pub fn guaranteed_box(&self) -> u32 {
        let n = self.n();
        let box_of = |t: u32| min_extent_above(n, t).map_or(n, |e| e - 1);
        let min_ext = |xs: &[Partition], t: u32| {
            closure(xs)
                .iter()
                .filter(|x| x.fits_box(t))
                .map(|x| x.extent())
                .min()
        };
        match self {
            OmegaSet::All { .. } => n,
            OmegaSet::AllMinus { exceptions, .. } => min_ext(exceptions, n).map_or(n, |e| e - 1),
            OmegaSet::Box { t, .. } => box_of(*t),
            OmegaSet::BoxMinus { t, exceptions, .. } => {
                let b = box_of(*t);
                min_ext(exceptions, *t).map_or(b, |e| b.min(e - 1))
            }
            OmegaSet::BoxPlusLayer {
                top, below, inner, ..
            } => {
                let b = below.guaranteed_box();
                if b + 1 < *top {
                    b
                } else if inner.guaranteed_box() >= inner.n() {
                    box_of(*top)
                } else {
                    top - 1
                }
            }
            OmegaSet::Explicit { .. } | OmegaSet::StarOf { .. } => {
                let members = self.enumerate().expect("explicit sets are small");
                let inside: BTreeSet<&Partition> = members.iter().collect();
                enumerate_partitions(n)
                    .iter()
                    .filter(|l| !inside.contains(l))
                    .map(|l| l.extent() - 1)
                    .min()
                    .unwrap_or(n)
            }
        }
    }

    /// Smallest `t` with the set inside `B_n(t)`; `None` for the empty set.
    pub fn extent(&self) -> Option<u32> {
        let n = self.n();
        match self {
            OmegaSet::All { .. } => Some(n),
            OmegaSet::AllMinus { exceptions, .. } => max_extent_minus(n, n, exceptions),
            OmegaSet::Box { t, .. } => max_extent_minus(n, *t, &[]),
            OmegaSet::BoxMinus { t, exceptions, .. } => max_extent_minus(n, *t, exceptions),
            OmegaSet::BoxPlusLayer {
                top, below, inner, ..
            } => {
                if inner.extent().is_some() {
                    Some(*top)
                } else {
                    below.extent()
                }
            }
            OmegaSet::Explicit { .. } | OmegaSet::StarOf { .. } => self
                .enumerate()
                .expect("explicit sets are small")
                .iter()
                .map(|l| l.extent())
                .max(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.extent().is_none()
    }
}

fn fmt_list(f: &mut fmt::Formatter<'_>, xs: &[Partition]) -> fmt::Result {
    f.write_str("{")?;
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str("}")
}

impl fmt::Display for OmegaSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmegaSet::All { n } => write!(f, "P({n})"),
            OmegaSet::AllMinus { n, exceptions } => {
                write!(f, "P({n}) \\ ")?;
                fmt_list(f, exceptions)?;
                f.write_str("°")
            }
            OmegaSet::Box { n, t } if t >= n => write!(f, "P({n})"),
            OmegaSet::Box { n, t } => write!(f, "B_{n}({t})"),
            OmegaSet::BoxMinus { n, t, exceptions } => {
                write!(f, "B_{n}({t}) \\ ")?;
                fmt_list(f, exceptions)?;
                f.write_str("°")
            }
            OmegaSet::BoxPlusLayer {
                top, below, inner, ..
            } => {
                write!(f, "{below} ⊔ {{({top},μ) : μ ∈ {inner}}}°")
            }
            OmegaSet::Explicit { members, .. } => fmt_list(f, members),
            OmegaSet::StarOf { .. } => {
                let mut factors = Vec::new();
                self.star_factors(&mut factors);
                for (i, x) in factors.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ⋆ ")?;
                    }
                    write!(f, "({x})")?;
                }
                Ok(())
            }
        }
    }
}

/// What is known about a positivity set: an exact set, or a known part
/// plus an explicitly declared unknown region.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaDescriptor {
    pub n: u32,
    pub known: OmegaSet,
    /// `None` means `known` is the whole set.
    pub unknown_region: Option<UnknownRegion>,
}

/// Members outside `known` all lie in `B_n(upper_box)`; when `no_other_thin`
/// is set, none of them is thin.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnknownRegion {
    pub upper_box: u32,
    pub no_other_thin: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Membership {
    In,
    Out,
    Unknown,
}

impl fmt::Display for Membership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Membership::In => "In",
            Membership::Out => "Out",
            Membership::Unknown => "Unknown",
        })
    }
}

/// A verdict and the rule that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub membership: Membership,
    pub rule: String,
}

impl OmegaDescriptor {
    pub fn exact(known: OmegaSet) -> Self {
        Self {
            n: known.n(),
            known,
            unknown_region: None,
        }
    }

    pub fn bounded(known: OmegaSet, upper_box: u32, no_other_thin: bool) -> Self {
        Self {
            n: known.n(),
            known,
            unknown_region: Some(UnknownRegion {
                upper_box,
                no_other_thin,
            }),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.unknown_region.is_none()
    }

    pub fn decide(&self, lambda: &Partition) -> Verdict {
        let v = |membership, rule: &str| Verdict {
            membership,
            rule: rule.to_string(),
        };
        if self.known.contains(lambda) {
            return v(Membership::In, "member of the known set");
        }
        match &self.unknown_region {
            None => v(Membership::Out, "outside the exact set"),
            Some(r) if !lambda.fits_box(r.upper_box) => v(Membership::Out, "outside the outer box"),
            Some(r) if r.no_other_thin && lambda.is_thin() => {
                v(Membership::Out, "thin and not in the known set")
            }
            Some(_) => v(Membership::Unknown, "inside the unknown region"),
        }
    }
}

impl fmt::Display for OmegaDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.unknown_region {
            None => write!(f, "{}", self.known),
            Some(r) => {
                write!(f, "⊇ {} and ⊆ B_{}({})", self.known, self.n, r.upper_box)?;
                if r.no_other_thin {
                    f.write_str(", no other thin partitions")?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::p;

    fn brute_box(set: &OmegaSet) -> u32 {
        let n = set.n();
        enumerate_partitions(n)
            .iter()
            .filter(|l| !set.contains(l))
            .map(|l| l.extent() - 1)
            .min()
            .unwrap_or(n)
    }

    fn brute_extent(set: &OmegaSet) -> Option<u32> {
        enumerate_partitions(set.n())
            .iter()
            .filter(|l| set.contains(l))
            .map(|l| l.extent())
            .max()
    }

    fn samples() -> Vec<OmegaSet> {
        vec![
            OmegaSet::All { n: 7 },
            OmegaSet::AllMinus {
                n: 9,
                exceptions: vec![p(&[8, 1]), p(&[5, 4]), p(&[4, 3, 2])],
            },
            OmegaSet::AllMinus {
                n: 3,
                exceptions: vec![p(&[2, 1])],
            },
            OmegaSet::Box { n: 9, t: 2 },
            OmegaSet::Box { n: 9, t: 4 },
            OmegaSet::Box { n: 10, t: 3 },
            OmegaSet::BoxMinus {
                n: 9,
                t: 6,
                exceptions: vec![p(&[5, 4]), p(&[5, 1, 1, 1, 1]), p(&[6, 2, 1])],
            },
            OmegaSet::BoxMinus {
                n: 9,
                t: 8,
                exceptions: vec![p(&[3, 3, 3])],
            },
            OmegaSet::BoxMinus {
                n: 4,
                t: 4,
                exceptions: vec![p(&[4]), p(&[3, 1])],
            },
            OmegaSet::BoxPlusLayer {
                n: 12,
                top: 9,
                below: Box::new(OmegaSet::Box { n: 12, t: 8 }),
                inner: Box::new(OmegaSet::AllMinus {
                    n: 3,
                    exceptions: vec![p(&[2, 1])],
                }),
            },
            OmegaSet::BoxPlusLayer {
                n: 12,
                top: 9,
                below: Box::new(OmegaSet::Box { n: 12, t: 8 }),
                inner: Box::new(OmegaSet::All { n: 3 }),
            },
        ]
    }

    #[test]
    fn symbolic_bounds_match_brute_force() {
        for s in samples() {
            assert_eq!(s.guaranteed_box(), brute_box(&s), "{s}");
            assert_eq!(s.extent(), brute_extent(&s), "{s}");
        }
    }

    #[test]
    fn enumeration_matches_contains() {
        for s in samples() {
            let listed = s.enumerate().unwrap();
            let filtered: Vec<Partition> = enumerate_partitions(s.n())
                .into_iter()
                .filter(|l| s.contains(l))
                .collect();
            assert_eq!(listed, filtered, "{s}");
            assert!(listed.iter().all(|l| s.contains(&l.conjugate())));
        }
    }

    #[test]
    fn star_descriptor() {
        let a = OmegaSet::explicit(3, [p(&[3]), p(&[1, 1, 1])]);
        let s = OmegaSet::star_of(a.clone(), a);
        assert_eq!(s.n(), 6);
        assert!(s.contains(&p(&[6])));
        assert!(s.contains(&p(&[5, 1])));
        assert!(s.contains(&p(&[2, 2, 2])));
        assert!(!s.contains(&p(&[3, 2, 1])));
    }

    #[test]
    fn refuses_huge_enumeration() {
        assert!(OmegaSet::All { n: 200 }.enumerate().is_err());
    }

    #[test]
    fn verdicts() {
        let d = OmegaDescriptor::bounded(OmegaSet::Box { n: 81, t: 69 }, 72, true);
        assert_eq!(d.decide(&p(&[69, 12])).membership, Membership::In);
        assert_eq!(d.decide(&p(&[73, 8])).membership, Membership::Out);
        assert_eq!(d.decide(&p(&[70, 11])).membership, Membership::Out);
        assert_eq!(d.decide(&p(&[70, 9, 2])).membership, Membership::Unknown);
        let e = OmegaDescriptor::exact(OmegaSet::Box { n: 9, t: 6 });
        assert_eq!(e.decide(&p(&[7, 2])).membership, Membership::Out);
    }

    #[test]
    fn json_tags() {
        let d = OmegaDescriptor::bounded(OmegaSet::Box { n: 81, t: 69 }, 72, true);
        let j = serde_json::to_value(&d).unwrap();
        assert_eq!(j["known"]["variant"], "Box");
        assert_eq!(j["unknown_region"]["upper_box"], 72);
        let e = OmegaDescriptor::exact(OmegaSet::All { n: 5 });
        let j = serde_json::to_value(&e).unwrap();
        assert!(j["unknown_region"].is_null());
        let back: OmegaDescriptor = serde_json::from_value(j).unwrap();
        assert_eq!(back, e);
    }
}
