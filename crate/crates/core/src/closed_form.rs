//! Closed forms for `m`, `M` and Ω, plus the tri-state membership query.

use crate::descriptor::{OmegaDescriptor, OmegaSet, Verdict};
use crate::error::{Error, Result};
use crate::partitions::{p, Partition};
use crate::small::{small_bounds, small_char_data};
use crate::sylow::{
    pow3, seq_stats, sigma_type, sigma_vector, BinarySeq, CharLabel, SigmaType, SigmaVector,
};

fn size_u32(n: u64) -> Result<u32> {
    u32::try_from(n)
        .map_err(|_| Error::OutOfRange(format!("degree {n} does not fit a partition size")))
}

/// `M(s)` for one sequence.
pub fn big_m_prime_power(s: &BinarySeq) -> u64 {
    let k = s.len();
    match seq_stats(s).first_one {
        None => pow3(k),
        Some(f) => pow3(k) - pow3(k - f),
    }
}

/// `M(Θ)`, the largest first part (or first column) in Ω(Θ).
pub fn big_m(label: &CharLabel) -> u64 {
    label.components().iter().map(big_m_prime_power).sum()
}

/// `m(s)` for one sequence. Lengths up to 3 are read off the explicit lists.
pub fn little_m_prime_power(s: &BinarySeq) -> u64 {
    let k = s.len();
    if k <= 3 {
        return prime_power_explicit(s).expect("k <= 3").guaranteed_box() as u64;
    }
    little_m_formula(s)
}

/// The case split for `m(s)`, without the explicit-list override.
pub fn little_m_formula(s: &BinarySeq) -> u64 {
    let k = s.len();
    if k == 0 {
        return 1;
    }
    let st = seq_stats(s);
    let full = pow3(k);
    let z = st.ones;
    match st.leading_run {
        None => match (st.first_one, st.second_one) {
            (None, _) if k == 2 => 3,
            (None, _) => full - 2,
            (Some(_), None) if k == 2 => 2,
            (Some(f), None) => full - pow3(k - f) - 1 + u64::from(f == k),
            (Some(f), Some(g)) => full - pow3(k - f) - pow3(k - g),
        },
        Some(run) => {
            let half = (full + pow3(k - run)) / 2;
            if z == run {
                match run {
                    2 if k == 2 => 2,
                    r if r == k => full.div_ceil(2),
                    r if r + 2 == k => (full - 1) / 2,
                    _ => half - 2,
                }
            } else {
                let g = st.first_after_run.expect("z > run");
                match st.second_after_run {
                    None => half - pow3(k - g),
                    Some(h) => half - pow3(k - g) - pow3(k - h),
                }
            }
        }
    }
}

/// Layer condition shared by `m = N - 1` and the layered shape of Ω.
fn layer_condition(sigma: &SigmaVector, small: &CharLabel) -> Result<bool> {
    let r = sigma.total();
    let (psi1, psi2) = if small.n() == 0 {
        (false, false)
    } else {
        let d = small_char_data(small)?;
        (d.psi1, d.psi2)
    };
    let nt = small.nontrivial_components();
    let lone_10 = nt.len() == 1 && nt[0].to_string() == "10";
    let pattern = |slot: usize| {
        let mut v = [0u32; 7];
        v[slot] = 1;
        v[0] = r.wrapping_sub(1);
        r >= 1 && sigma.0 == v
    };
    Ok((sigma.in_e() && small.is_trivial())
        || (sigma.in_f() && psi2)
        || (sigma.is_all_trivial() && psi1)
        || ((pattern(4) || pattern(1)) && lone_10))
}

/// `m(Θ)`.
pub fn little_m(label: &CharLabel) -> Result<u64> {
    let n = label.n();
    let comps = label.components();
    if n == 0 {
        return Ok(0);
    }
    if comps.len() == 1 {
        let s = &comps[0];
        if s.len() < 3 {
            return Ok(little_m_prime_power(s));
        }
        let (ty, _) = sigma_type(s)?;
        use SigmaType::*;
        if matches!(ty, T1 | T10 | T11 | T5 | T6 | T7) {
            return Ok(little_m_prime_power(s));
        }
    }
    if comps.len() == 2 {
        let ty = |s: &BinarySeq| {
            if s.len() >= 3 {
                sigma_type(s).ok().map(|t| t.0)
            } else {
                None
            }
        };
        let (a, b) = (ty(&comps[0]), ty(&comps[1]));
        let pair_11_21 = matches!(
            (a, b),
            (Some(SigmaType::T11), Some(SigmaType::T21))
                | (Some(SigmaType::T21), Some(SigmaType::T11))
        );
        let with_p3 = |x: Option<SigmaType>, other: &BinarySeq| {
            x == Some(SigmaType::T21) && other.to_string() == "0"
        };
        if pair_11_21 || with_p3(a, &comps[1]) || with_p3(b, &comps[0]) {
            debug_assert!(n >= 27);
            return Ok(n / 2 - 1);
        }
    }
    if n < 27 {
        return Ok(small_bounds(label)?.0);
    }
    let total = crate::sylow::n_total(label)?;
    if label.is_quasi_trivial() {
        let (big, small) = label.split();
        if big.components().is_empty() {
            return Ok(total);
        }
        let sigma = sigma_vector(&big)?;
        // Ω is a star with the explicit Ω(100) here, so read m off the set
        // rather than from the layer rule
        if sigma.0 == [0, 0, 0, 0, 0, 0, 1] {
            return Ok(omega_quasi_trivial(label)?.known.guaranteed_box() as u64);
        }
        if layer_condition(&sigma, &small)? {
            return Ok(total - 1);
        }
    }
    Ok(total)
}

/// Ω of the trivial character of `P_t`.
pub fn omega_trivial(t: u32) -> OmegaSet {
    let all_minus = |xs: Vec<Partition>| OmegaSet::AllMinus {
        n: t,
        exceptions: xs,
    };
    match t {
        3 => all_minus(vec![p(&[2, 1])]),
        4 => all_minus(vec![p(&[2, 2])]),
        6 => all_minus(vec![p(&[3, 2, 1])]),
        9 => all_minus(vec![p(&[8, 1]), p(&[5, 4]), p(&[4, 3, 2])]),
        10 => all_minus(vec![p(&[5, 5])]),
        t if t >= 27 && u64::from(t) == pow3(t.ilog(3)) => all_minus(vec![p(&[t - 1, 1])]),
        _ => OmegaSet::All { n: t },
    }
}

fn rep(x: u32, times: u32) -> Vec<u32> {
    vec![x; times as usize]
}

fn with_first(first: u32, rest: Vec<u32>) -> Partition {
    let mut v = vec![first];
    v.extend(rest);
    Partition::new(v).expect("valid literal")
}

/// Ω(s) for `len(s) <= 3`, from the explicit lists.
pub fn prime_power_explicit(s: &BinarySeq) -> Option<OmegaSet> {
    let bm = |n: u32, t: u32, xs: Vec<Partition>| OmegaSet::BoxMinus {
        n,
        t,
        exceptions: xs,
    };
    let layer = |n: u32, top: u32, below: OmegaSet, inner: OmegaSet| OmegaSet::BoxPlusLayer {
        n,
        top,
        below: Box::new(below),
        inner: Box::new(inner),
    };
    let text = s.to_string();
    let set = match text.as_str() {
        "-" => OmegaSet::All { n: 1 },
        "0" => omega_trivial(3),
        "1" => OmegaSet::Box { n: 3, t: 2 },
        "00" => omega_trivial(9),
        "01" => bm(9, 8, vec![p(&[3, 3, 3])]),
        "10" => bm(9, 6, vec![p(&[5, 4]), p(&[5, 1, 1, 1, 1]), p(&[6, 2, 1])]),
        "11" => bm(9, 6, vec![p(&[3, 3, 3]), p(&[6, 3]), p(&[6, 1, 1, 1])]),
        "000" => omega_trivial(27),
        "001" => OmegaSet::Box { n: 27, t: 26 },
        "010" => bm(27, 24, vec![p(&[24, 2, 1])]),
        "011" => bm(27, 24, vec![p(&[24, 3]), p(&[24, 1, 1, 1])]),
        "100" => layer(
            27,
            18,
            bm(
                27,
                17,
                vec![p(&[17, 10]), with_first(17, rep(1, 10)), p(&[14, 13])],
            ),
            omega_trivial(9),
        ),
        "101" => bm(
            27,
            18,
            vec![p(&[18, 9]), p(&[18, 3, 3, 3]), with_first(18, rep(1, 9))],
        ),
        "110" | "111" => {
            let (second, inner) = if text == "110" {
                (14, "10")
            } else {
                (15, "11")
            };
            let exceptions = vec![
                p(&[16, 11]),
                with_first(16, rep(1, 11)),
                p(&[second, 27 - second]),
                with_first(second, rep(1, 27 - second)),
            ];
            let inner = prime_power_explicit(&inner.parse().expect("literal"))?;
            layer(
                27,
                18,
                layer(
                    27,
                    17,
                    bm(27, 16, exceptions),
                    OmegaSet::Box { n: 10, t: 8 },
                ),
                inner,
            )
        }
        _ => return None,
    };
    Some(set)
}

/// The set `C` used when the big part is a single type-5 component.
fn set_c(n: u32) -> OmegaSet {
    let a = n / 3;
    OmegaSet::BoxMinus {
        n,
        t: 2 * a,
        exceptions: vec![
            p(&[2 * a, a - 1, 1]),
            with_first(2 * a, [vec![2], rep(1, a - 2)].concat()),
            p(&[2 * a - 1, a + 1]),
            with_first(2 * a - 1, rep(1, a + 1)),
        ],
    }
}

/// Ω(ψ) as a star of per-component sets, trivial components merged.
fn small_factors(small: &CharLabel) -> Vec<OmegaSet> {
    let mut out: Vec<OmegaSet> = small
        .nontrivial_components()
        .into_iter()
        .map(|c| prime_power_explicit(c).expect("small components are listed"))
        .collect();
    let trivial: u64 = small
        .components()
        .iter()
        .filter(|c| c.ones() == 0)
        .map(|c| c.degree())
        .sum();
    if trivial > 0 {
        out.push(omega_trivial(trivial as u32));
    }
    out
}

/// Exact Ω for a quasi-trivial label.
pub fn omega_quasi_trivial(label: &CharLabel) -> Result<OmegaDescriptor> {
    if !label.is_quasi_trivial() {
        return Err(Error::NotQuasiTrivial(label.to_string()));
    }
    let (big, small) = label.split();
    let l = size_u32(small.n())?;
    if big.components().is_empty() {
        return Ok(small_char_data(&small)?.omega);
    }
    let n = size_u32(big.n())?;
    let total = n + l;
    let sigma = sigma_vector(&big)?;
    let big_n = size_u32(crate::sylow::n_total(label)?)?;
    let r = sigma.total();
    let only = |slot: usize| {
        let mut v = [0u32; 7];
        v[slot] = 1;
        sigma.0 == v
    };

    let set = if r == 1 && only(0) && l == 0 {
        omega_trivial(n)
    } else if r == 1 && only(5) && l == 0 {
        set_c(n)
    } else if r == 1 && only(6) {
        let top = prime_power_explicit(&big.components()[0]).expect("length 3");
        small_factors(&small)
            .into_iter()
            .fold(top, OmegaSet::star_of)
    } else if layer_condition(&sigma, &small)? {
        OmegaSet::BoxPlusLayer {
            n: total,
            top: big_n,
            below: Box::new(OmegaSet::Box {
                n: total,
                t: big_n - 1,
            }),
            inner: Box::new(omega_trivial(total - big_n)),
        }
    } else {
        OmegaSet::Box { n: total, t: big_n }
    };
    Ok(OmegaDescriptor::exact(set))
}

/// Best available description of Ω(Θ): exact when known, otherwise bounds.
pub fn omega_known(label: &CharLabel) -> Result<OmegaDescriptor> {
    let n = size_u32(label.n())?;
    if label.is_quasi_trivial() {
        return omega_quasi_trivial(label);
    }
    if n < 27 {
        let members = crate::small::exact_small_omega(label)?.as_ref().clone();
        return Ok(OmegaDescriptor::exact(OmegaSet::explicit(n, members)));
    }
    let upper = size_u32(big_m(label))?;
    let m = size_u32(little_m(label)?)?;
    if let [s] = label.components() {
        if let Some(set) = prime_power_explicit(s) {
            return Ok(OmegaDescriptor::exact(set));
        }
        if let Some(set) = top_layer_closure(s, m, upper)? {
            return Ok(OmegaDescriptor::exact(set));
        }
        let two_row = |x: u32| p(&[x, n - x]);
        let hook = |x: u32| with_first(x, rep(1, n - x));
        let known = match sigma_type(s)?.0 {
            SigmaType::T10 | SigmaType::T11 => OmegaSet::BoxMinus {
                n,
                t: m + 2,
                exceptions: vec![two_row(m + 1), hook(m + 1)],
            },
            SigmaType::T7 => OmegaSet::BoxMinus {
                n,
                t: m + 5,
                exceptions: vec![two_row(m + 4), hook(m + 4), two_row(m + 1)],
            },
            _ => OmegaSet::Box { n, t: m },
        };
        return Ok(OmegaDescriptor::bounded(known, upper, true));
    }
    Ok(OmegaDescriptor::bounded(
        OmegaSet::Box { n, t: m },
        upper,
        false,
    ))
}

/// When `M(s) = m(s) + 1` the only undecided row is the top one, and that row
/// is `{(M, μ) : μ ∈ Ω(tail)}°` where the tail follows the first 1.
fn top_layer_closure(s: &BinarySeq, m: u32, upper: u32) -> Result<Option<OmegaSet>> {
    let Some(f) = seq_stats(s).first_one else {
        return Ok(None);
    };
    if upper != m + 1 || f == s.len() {
        return Ok(None);
    }
    let tail = BinarySeq::new(s.bits()[f as usize..].to_vec())?;
    let inner = omega_known(&CharLabel::single(tail))?;
    if !inner.is_exact() {
        return Ok(None);
    }
    let n = size_u32(s.degree())?;
    Ok(Some(OmegaSet::BoxPlusLayer {
        n,
        top: upper,
        below: Box::new(OmegaSet::Box { n, t: m }),
        inner: Box::new(inner.known),
    }))
}

/// Whether λ lies in Ω(Θ), as far as the closed forms decide it.
pub fn membership(lambda: &Partition, label: &CharLabel) -> Result<Verdict> {
    if u64::from(lambda.size()) != label.n() {
        return Err(Error::SizeMismatch {
            expected: label.n(),
            got: lambda.size().into(),
        });
    }
    Ok(omega_known(label)?.decide(lambda))
}

/// `⌊2w/9⌋`: every λ of `w` inside this box lies in Ω of every character.
pub fn omega_n_bound(w: u64) -> u64 {
    2 * w / 9
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descriptor::Membership;

    fn seq(s: &str) -> BinarySeq {
        s.parse().unwrap()
    }

    fn label(s: &str) -> CharLabel {
        s.parse().unwrap()
    }

    #[test]
    fn prime_power_values() {
        assert_eq!(big_m_prime_power(&seq("1000")), 54);
        assert_eq!(big_m_prime_power(&seq("0000")), 81);
        assert_eq!(little_m_prime_power(&seq("1110")), 40);
        assert_eq!(little_m_prime_power(&seq("110001010")), 10905);
        assert_eq!(little_m_prime_power(&seq("01")), 2);
        assert_eq!(little_m_prime_power(&seq("00")), 3);
        assert_eq!(little_m_prime_power(&seq("100")), 13);
        let row81 = [
            79, 80, 77, 77, 71, 71, 69, 69, 52, 53, 51, 50, 40, 44, 40, 41,
        ];
        let big81 = [
            81, 80, 78, 78, 72, 72, 72, 72, 54, 54, 54, 54, 54, 54, 54, 54,
        ];
        for (i, s) in BinarySeq::all(4).iter().enumerate() {
            assert_eq!(little_m_prime_power(s), row81[i], "{s}");
            assert_eq!(big_m_prime_power(s), big81[i], "{s}");
        }
    }

    #[test]
    fn formula_matches_lists() {
        for k in 1..=3 {
            for s in BinarySeq::all(k) {
                assert_eq!(little_m_formula(&s), little_m_prime_power(&s), "{s}");
            }
        }
    }

    #[test]
    fn gap_relation() {
        for k in 3..=6 {
            for s in BinarySeq::all(k) {
                let (ty, n) = sigma_type(&s).unwrap();
                assert_eq!(little_m_prime_power(&s) + ty.gap(), n, "{s} type {ty}");
            }
        }
    }

    #[test]
    fn general_examples() {
        assert_eq!(little_m(&label("0000;11;11")).unwrap(), 91);
        assert_eq!(little_m(&label("000")).unwrap(), 25);
        let l = label("0010;000");
        assert_eq!(
            little_m(&l).unwrap(),
            crate::sylow::n_total(&l).unwrap() - 1
        );
        assert_eq!(big_m(&CharLabel::trivial(40)), 40);
    }

    #[test]
    fn trivial_sets() {
        assert_eq!(
            omega_trivial(9).to_string(),
            "P(9) \\ {[8,1],[5,4],[4,3,2]}°"
        );
        assert_eq!(omega_trivial(27).to_string(), "P(27) \\ {[26,1]}°");
        assert_eq!(omega_trivial(5), OmegaSet::All { n: 5 });
        assert_eq!(
            omega_trivial(81),
            OmegaSet::AllMinus {
                n: 81,
                exceptions: vec![p(&[80, 1])]
            }
        );
    }

    #[test]
    fn quasi_trivial_examples() {
        let d = omega_quasi_trivial(&label("1000")).unwrap();
        let ones = |k: usize| ",1".repeat(k);
        assert_eq!(
            d.known.to_string(),
            format!(
                "B_81(54) \\ {{[54,26,1],[54,2{}],[53,28],[53{}]}}°",
                ones(25),
                ones(28)
            )
        );
        let d = omega_quasi_trivial(&label("0010")).unwrap();
        assert_eq!(
            d.known.to_string(),
            "B_81(77) ⊔ {(78,μ) : μ ∈ P(3) \\ {[2,1]}°}°"
        );
        let d = omega_quasi_trivial(&label("0000;00;01")).unwrap();
        assert_eq!(d.known, OmegaSet::Box { n: 99, t: 98 });
        assert!(omega_quasi_trivial(&label("11")).is_err());
    }

    #[test]
    fn top_layer_rows_of_the_81_table() {
        for (s, tail) in [("0011", "B_3(2)"), ("0101", "B_9(8)"), ("1001", "B_27(26)")] {
            let d = omega_known(&label(s)).unwrap();
            assert!(d.is_exact(), "{s}");
            assert!(d.known.to_string().contains(tail), "{s}: {}", d.known);
        }
        assert!(!omega_known(&label("0110")).unwrap().is_exact());
    }

    #[test]
    fn known_examples() {
        let d = omega_known(&label("0110")).unwrap();
        assert_eq!(d.known, OmegaSet::Box { n: 81, t: 69 });
        assert_eq!(d.unknown_region.as_ref().unwrap().upper_box, 72);
        assert_eq!(
            membership(&p(&[80, 1]), &CharLabel::trivial(81))
                .unwrap()
                .membership,
            Membership::Out
        );
        assert_eq!(
            membership(&p(&[54, 27]), &label("1000"))
                .unwrap()
                .membership,
            Membership::In
        );
        assert_eq!(
            membership(&p(&[70, 11]), &label("0110"))
                .unwrap()
                .membership,
            Membership::Out
        );
        assert_eq!(
            membership(&p(&[70, 9, 2]), &label("0110"))
                .unwrap()
                .membership,
            Membership::Unknown
        );
        assert!(membership(&p(&[3]), &label("0110")).is_err());
    }

    #[test]
    fn explicit_k3_lists_match_closed_form() {
        for s in ["000", "001", "010"] {
            let a = omega_quasi_trivial(&label(s))
                .unwrap()
                .known
                .enumerate()
                .unwrap();
            let b = prime_power_explicit(&seq(s)).unwrap().enumerate().unwrap();
            assert_eq!(a, b, "{s}");
        }
    }

    #[test]
    fn n_bound() {
        assert_eq!(omega_n_bound(81), 18);
        assert_eq!(omega_n_bound(9), 2);
        assert_eq!(omega_n_bound(100), 22);
    }
}
