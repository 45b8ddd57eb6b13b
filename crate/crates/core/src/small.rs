//! Data for characters of `P_l` with `l < 27`: `N(ψ)`, the positivity set and
//! the two families used by the layer rule. Rows are tried in order; the first
//! match wins.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::closed_form::prime_power_explicit;
use crate::descriptor::{OmegaDescriptor, OmegaSet};
use crate::error::{Error, Result};
use crate::lr;
use crate::partitions::{p, Partition};
use crate::sylow::CharLabel;

#[derive(Debug, Clone, Serialize)]
pub struct SmallData {
    pub n_value: u64,
    pub omega: OmegaDescriptor,
    pub psi1: bool,
    pub psi2: bool,
    pub row: &'static str,
}

static EXACT: OnceLock<Mutex<HashMap<CharLabel, Arc<Vec<Partition>>>>> = OnceLock::new();

/// Ω(ψ) computed as the star of the component sets.
pub fn exact_small_omega(psi: &CharLabel) -> Result<Arc<Vec<Partition>>> {
    if psi.n() >= 27 {
        return Err(Error::OutOfRange(format!("{psi:?} is not a small label")));
    }
    let memo = EXACT.get_or_init(Default::default);
    if let Some(v) = memo.lock().unwrap().get(psi) {
        return Ok(v.clone());
    }
    let mut sets = Vec::new();
    for c in psi.components() {
        sets.push(prime_power_explicit(c).expect("length <= 2").enumerate()?);
    }
    let v = Arc::new(lr::star_all(&sets)?);
    memo.lock().unwrap().insert(psi.clone(), v.clone());
    Ok(v)
}

static BOUNDS: OnceLock<Mutex<HashMap<CharLabel, (u64, u64)>>> = OnceLock::new();

/// `(m(ψ), M(ψ))` read off the exact set.
pub fn small_bounds(psi: &CharLabel) -> Result<(u64, u64)> {
    let memo = BOUNDS.get_or_init(Default::default);
    if let Some(&v) = memo.lock().unwrap().get(psi) {
        return Ok(v);
    }
    let set = OmegaSet::Explicit {
        n: psi.n() as u32,
        members: exact_small_omega(psi)?.as_ref().clone(),
    };
    let v = (
        set.guaranteed_box() as u64,
        set.extent().unwrap_or(0) as u64,
    );
    memo.lock().unwrap().insert(psi.clone(), v);
    Ok(v)
}

fn seqs(label: &CharLabel) -> Vec<String> {
    label
        .nontrivial_components()
        .iter()
        .map(|s| s.to_string())
        .collect()
}

pub fn small_char_data(psi: &CharLabel) -> Result<SmallData> {
    let l = psi.n();
    if l >= 27 {
        return Err(Error::OutOfRange(format!("{psi:?} has degree >= 27")));
    }
    let n = l as u32;
    let nt = seqs(psi);
    let nt: Vec<&str> = nt.iter().map(String::as_str).collect();
    let exact = |known: OmegaSet| OmegaDescriptor::exact(known);
    let bm = |t: u32, xs: Vec<Partition>| OmegaSet::BoxMinus {
        n,
        t,
        exceptions: xs,
    };
    let row = |n_value: u32, omega: OmegaDescriptor, psi1: bool, psi2: bool, row: &'static str| {
        SmallData {
            n_value: n_value as u64,
            omega,
            psi1,
            psi2,
            row,
        }
    };

    let data = match nt.as_slice() {
        [] => {
            let set = crate::closed_form::omega_trivial(n);
            let name = if matches!(set, OmegaSet::AllMinus { .. }) {
                "1 (exceptional l)"
            } else {
                "1"
            };
            row(n, exact(set), false, false, name)
        }
        ["1"] => match n {
            6 => row(
                5,
                exact(bm(5, vec![p(&[3, 3])])),
                false,
                true,
                "phi1.1 (l=6)",
            ),
            12 => row(
                11,
                exact(bm(11, vec![p(&[6, 6]), p(&[4, 4, 4])])),
                false,
                true,
                "phi1.1 (l=12)",
            ),
            _ => row(
                n - 1,
                exact(OmegaSet::Box { n, t: n - 1 }),
                false,
                true,
                "phi1.1",
            ),
        },
        ["01"] => match n {
            9 => row(
                8,
                exact(bm(8, vec![p(&[3, 3, 3])])),
                false,
                true,
                "phi(01) (l=9)",
            ),
            _ => row(
                n - 1,
                exact(OmegaSet::Box { n, t: n - 1 }),
                false,
                true,
                "phi(01).1",
            ),
        },
        ["10"] => match n {
            9 => row(
                6,
                exact(bm(6, vec![p(&[5, 4]), p(&[5, 1, 1, 1, 1]), p(&[6, 2, 1])])),
                true,
                false,
                "phi(10) (l=9)",
            ),
            10 => row(
                7,
                exact(bm(7, vec![p(&[5, 5]), p(&[7, 2, 1])])),
                true,
                false,
                "phi(10).1 (l=10)",
            ),
            _ => row(
                n - 3,
                exact(bm(n - 3, vec![p(&[n - 3, 2, 1])])),
                true,
                false,
                "phi(10).1",
            ),
        },
        ["1", "10"] => match n {
            12 => row(
                8,
                exact(bm(8, vec![p(&[6, 6]), p(&[8, 2, 2])])),
                true,
                false,
                "phi(10).phi1 (l=12)",
            ),
            _ => row(
                n - 4,
                exact(bm(n - 4, vec![p(&[n - 4, 2, 2])])),
                true,
                false,
                "phi(10).phi1.1",
            ),
        },
        ["01", "10"] => row(
            n - 4,
            exact(bm(n - 4, vec![p(&[n - 4, 2, 2])])),
            true,
            false,
            "phi(10).phi(01).1",
        ),
        ["10", "10"] => row(
            n - 6,
            exact(bm(n - 6, vec![p(&[n - 6, 3, 2, 1])])),
            true,
            false,
            "phi(10).phi(10).1",
        ),
        ["11"] if n == 9 => row(
            5,
            OmegaDescriptor::bounded(bm(5, vec![p(&[3, 3, 3])]), 6, true),
            false,
            false,
            "phi(11) (l=9)",
        ),
        ["11"] if n == 12 => row(
            8,
            OmegaDescriptor::bounded(bm(8, vec![p(&[6, 6])]), upper(psi)?, true),
            false,
            false,
            "phi(11).1 (l=12)",
        ),
        ["10", "11"] if n == 18 => row(
            11,
            OmegaDescriptor::bounded(bm(11, vec![p(&[9, 9])]), upper(psi)?, true),
            false,
            false,
            "phi(11).phi(10) (l=18)",
        ),
        ["11"] if n == 18 => row(
            14,
            OmegaDescriptor::bounded(bm(14, vec![p(&[9, 9])]), upper(psi)?, true),
            false,
            false,
            "phi(11).1 (l=18)",
        ),
        x if x.contains(&"11") => {
            let (m, big_m) = small_bounds(psi)?;
            row(
                m as u32,
                OmegaDescriptor::bounded(OmegaSet::Box { n, t: m as u32 }, big_m as u32, true),
                false,
                false,
                "contains (11)",
            )
        }
        _ => {
            let (m, _) = small_bounds(psi)?;
            row(
                m as u32,
                exact(OmegaSet::Box { n, t: m as u32 }),
                false,
                false,
                "all other",
            )
        }
    };
    Ok(data)
}

fn upper(psi: &CharLabel) -> Result<u32> {
    Ok(crate::closed_form::big_m(psi) as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label(s: &str) -> CharLabel {
        s.parse().unwrap()
    }

    #[test]
    fn rows_from_the_table() {
        let d = small_char_data(&label("00")).unwrap();
        assert_eq!(d.n_value, 9);
        assert_eq!(d.omega.known.to_string(), "P(9) \\ {[8,1],[5,4],[4,3,2]}°");
        let d = small_char_data(&label("01")).unwrap();
        assert_eq!(
            (d.n_value, d.omega.known.to_string()),
            (8, "B_9(8) \\ {[3,3,3]}°".to_string())
        );
        let d = small_char_data(&label("10;1")).unwrap();
        assert_eq!(d.n_value, 8);
        assert!(d.psi1 && !d.psi2);
        assert_eq!(d.omega.known.to_string(), "B_12(8) \\ {[6,6],[8,2,2]}°");
    }

    #[test]
    fn exact_sets_agree_with_row_descriptors() {
        for l in 1..27u64 {
            for psi in CharLabel::all(l) {
                let d = small_char_data(&psi).unwrap();
                let exact = exact_small_omega(&psi).unwrap();
                let known = d.omega.known.enumerate().unwrap();
                let mut exact_set = exact.as_ref().clone();
                exact_set.sort();
                if d.omega.is_exact() {
                    assert_eq!(known, exact_set, "{psi:?} row {}", d.row);
                } else {
                    let r = d.omega.unknown_region.as_ref().unwrap();
                    for lam in &known {
                        assert!(
                            exact_set.binary_search(lam).is_ok(),
                            "{psi:?}: {lam} missing"
                        );
                    }
                    for lam in &exact_set {
                        assert!(
                            lam.fits_box(r.upper_box),
                            "{psi:?}: {lam} outside the outer box"
                        );
                        if lam.is_thin() {
                            assert!(
                                known.binary_search(lam).is_ok(),
                                "{psi:?}: thin {lam} outside known part"
                            );
                        }
                    }
                }
                if d.row == "all other" {
                    let (m, big_m) = small_bounds(&psi).unwrap();
                    assert_eq!(m, big_m, "{psi:?}");
                }
            }
        }
    }
}
