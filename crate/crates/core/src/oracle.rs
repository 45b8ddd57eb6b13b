//! Brute-force ground truth for small degrees.
//!
//! Characters of `S_n` come from the Murnaghan–Nakayama rule. The Sylow
//! subgroups `P_3`, `P_9`, `P_27` are built as explicit permutation groups on
//! nested blocks and walked element by element. Each element is bucketed by its
//! cycle type and by its image under the level homomorphisms `P_{3^k} → C_3^k`;
//! every linear character is a product of powers of those, so one pass serves
//! all labels at once.

use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lr;
use crate::partitions::{enumerate_partitions, Partition};
use crate::sylow::{pow3, CharLabel};

/// Largest prime-power part the oracle handles.
pub const MAX_LEVEL: u32 = 3;
/// Largest composite degree the oracle handles.
pub const MAX_DEGREE: u64 = 39;

/// `a + bω` with `ω² + ω + 1 = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct EisensteinInt {
    pub a: i128,
    pub b: i128,
}

impl EisensteinInt {
    pub const ZERO: Self = Self { a: 0, b: 0 };
    pub const ONE: Self = Self { a: 1, b: 0 };
    pub const OMEGA: Self = Self { a: 0, b: 1 };

    pub fn new(a: i128, b: i128) -> Self {
        Self { a, b }
    }

    pub fn from_int(a: i128) -> Self {
        Self { a, b: 0 }
    }

    /// `ω^e`, exponent taken mod 3.
    pub fn omega_pow(e: i64) -> Self {
        match e.rem_euclid(3) {
            0 => Self::ONE,
            1 => Self::OMEGA,
            _ => Self { a: -1, b: -1 },
        }
    }

    /// Complex conjugation, which swaps ω and ω².
    pub fn conj(self) -> Self {
        Self {
            a: self.a - self.b,
            b: -self.b,
        }
    }

    pub fn as_integer(self) -> Option<i128> {
        (self.b == 0).then_some(self.a)
    }

    pub fn scale(self, k: i128) -> Self {
        Self {
            a: self.a * k,
            b: self.b * k,
        }
    }
}

impl Add for EisensteinInt {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self {
            a: self.a + o.a,
            b: self.b + o.b,
        }
    }
}

impl Sub for EisensteinInt {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self {
            a: self.a - o.a,
            b: self.b - o.b,
        }
    }
}

impl Neg for EisensteinInt {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            a: -self.a,
            b: -self.b,
        }
    }
}

impl Mul for EisensteinInt {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self {
            a: self.a * o.a - self.b * o.b,
            b: self.a * o.b + self.b * o.a - self.b * o.b,
        }
    }
}

type MnKey = (Vec<u32>, Vec<u32>);
static MN_MEMO: OnceLock<RwLock<HashMap<MnKey, i128>>> = OnceLock::new();

/// χ^λ at the class of cycle type `ct`.
pub fn mn_character(lambda: &Partition, ct: &Partition) -> Result<i128> {
    if lambda.size() != ct.size() {
        return Err(Error::SizeMismatch {
            expected: lambda.size().into(),
            got: ct.size().into(),
        });
    }
    Ok(mn(lambda.parts(), ct.parts()))
}

fn mn(lambda: &[u32], ct: &[u32]) -> i128 {
    if ct.iter().all(|&c| c == 1) {
        let shape = Partition::new(lambda.to_vec()).expect("valid shape");
        return lr::dimension(&shape) as i128;
    }
    let memo = MN_MEMO.get_or_init(Default::default);
    let key = (lambda.to_vec(), ct.to_vec());
    if let Some(&v) = memo.read().unwrap().get(&key) {
        return v;
    }
    let r = ct[0];
    let rest = &ct[1..];
    let len = lambda.len() as u32;
    let beta: Vec<u32> = lambda
        .iter()
        .enumerate()
        .map(|(i, &x)| x + len - 1 - i as u32)
        .collect();
    let mut total = 0i128;
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let crossed = beta.iter().filter(|&&c| c > target && c < b).count();
        let mut moved = beta.clone();
        moved[i] = target;
        moved.sort_unstable_by(|x, y| y.cmp(x));
        let n = moved.len() as u32;
        let shape: Vec<u32> = moved
            .iter()
            .enumerate()
            .map(|(j, &c)| c - (n - 1 - j as u32))
            .filter(|&x| x > 0)
            .collect();
        let sign = if crossed % 2 == 0 { 1 } else { -1 };
        total += sign * mn(&shape, rest);
    }
    memo.write().unwrap().insert(key, total);
    total
}

fn factorial(n: u32) -> u128 {
    (1..=n as u128).product()
}

/// `n! / z_ct`, the number of permutations with cycle type `ct`.
pub fn class_size(ct: &Partition) -> u128 {
    let mut z = 1u128;
    let mut i = 0;
    let parts = ct.parts();
    while i < parts.len() {
        let j = parts[i..].iter().take_while(|&&x| x == parts[i]).count();
        z *= (parts[i] as u128).pow(j as u32) * factorial(j as u32);
        i += j;
    }
    factorial(ct.size()) / z
}

/// Element counts of `P_{3^k}` by cycle type and by level image.
///
/// The level image of an element is a vector in `C_3^k`, stored as a base-3
/// code whose digit `i` is the level-`(i+1)` coordinate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassProfile {
    pub k: u32,
    pub order: u64,
    #[serde(with = "bucket_pairs")]
    pub buckets: BTreeMap<Partition, Vec<u64>>,
}

// JSON keys must be strings, so the map travels as a list of pairs.
mod bucket_pairs {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serializer};

    use crate::partitions::Partition;

    pub fn serialize<S: Serializer>(
        map: &BTreeMap<Partition, Vec<u64>>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        s.collect_seq(map.iter())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<Partition, Vec<u64>>, D::Error> {
        Vec::<(Partition, Vec<u64>)>::deserialize(d).map(|v| v.into_iter().collect())
    }
}

impl ClassProfile {
    pub fn total(&self) -> u64 {
        self.buckets.values().flatten().sum()
    }

    pub fn count(&self, ct: &Partition) -> u64 {
        self.buckets.get(ct).map_or(0, |v| v.iter().sum())
    }

    /// Σ over elements of cycle type `ct` of the conjugated value of the
    /// character with digit vector `digits` (entries in 0..3).
    pub fn label_sum(&self, ct: &Partition, digits: &[u8]) -> EisensteinInt {
        let Some(counts) = self.buckets.get(ct) else {
            return EisensteinInt::ZERO;
        };
        let mut acc = EisensteinInt::ZERO;
        for (code, &c) in counts.iter().enumerate() {
            if c > 0 {
                let e = exponent(code as u32, digits);
                acc = acc + EisensteinInt::omega_pow(-e).scale(c as i128);
            }
        }
        acc
    }
}

fn exponent(mut code: u32, digits: &[u8]) -> i64 {
    let mut e = 0i64;
    for &d in digits {
        e += i64::from(d) * i64::from(code % 3);
        code /= 3;
    }
    e
}

fn add_codes(x: u32, y: u32, levels: u32) -> u32 {
    let (mut x, mut y, mut out, mut place) = (x, y, 0, 1);
    for _ in 0..levels {
        out += ((x % 3 + y % 3) % 3) * place;
        x /= 3;
        y /= 3;
        place *= 3;
    }
    out
}

/// A permutation of `P_{3^k}` together with its level code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SylowElement {
    pub perm: Vec<u8>,
    pub code: u32,
}

/// Block permutation `(g0, g1, g2; h)`: point `y` of block `j` goes to point
/// `g_j(y)` of block `j + h`.
fn compose_block(parts: [&SylowElement; 3], shift: u32, levels_below: u32) -> SylowElement {
    let m = parts[0].perm.len();
    let mut perm = vec![0u8; 3 * m];
    for (j, g) in parts.iter().enumerate() {
        let target = ((j as u32 + shift) % 3) as usize;
        for (y, &img) in g.perm.iter().enumerate() {
            perm[j * m + y] = (target * m) as u8 + img;
        }
    }
    let below = add_codes(
        add_codes(parts[0].code, parts[1].code, levels_below),
        parts[2].code,
        levels_below,
    );
    SylowElement {
        perm,
        code: below + shift * 3u32.pow(levels_below),
    }
}

/// All elements of `P_{3^k}` for `k <= 2`.
pub fn sylow_elements(k: u32) -> Result<Vec<SylowElement>> {
    if k > 2 {
        return Err(Error::OracleScope(format!(
            "explicit element list only for k <= 2, got {k}"
        )));
    }
    let mut elems = vec![SylowElement {
        perm: vec![0],
        code: 0,
    }];
    for level in 0..k {
        let mut next = Vec::with_capacity(elems.len().pow(3) * 3);
        for h in 0..3 {
            for a in &elems {
                for b in &elems {
                    for c in &elems {
                        next.push(compose_block([a, b, c], h, level));
                    }
                }
            }
        }
        elems = next;
    }
    Ok(elems)
}

fn cycle_type(perm: &[u8]) -> Partition {
    let mut seen = vec![false; perm.len()];
    let mut lengths = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x] as usize;
            len += 1;
        }
        lengths.push(len);
    }
    Partition::from_unsorted(lengths)
}

fn profile_of(k: u32, elems: impl Iterator<Item = SylowElement>) -> ClassProfile {
    let codes = 3usize.pow(k);
    let mut buckets: BTreeMap<Partition, Vec<u64>> = BTreeMap::new();
    for e in elems {
        buckets
            .entry(cycle_type(&e.perm))
            .or_insert_with(|| vec![0; codes])[e.code as usize] += 1;
    }
    ClassProfile {
        k,
        order: 3u64.pow(((pow3(k) - 1) / 2) as u32),
        buckets,
    }
}

fn merge(mut a: ClassProfile, b: ClassProfile) -> ClassProfile {
    for (ct, counts) in b.buckets {
        let slot = a.buckets.entry(ct).or_insert_with(|| vec![0; counts.len()]);
        for (x, y) in slot.iter_mut().zip(counts) {
            *x += y;
        }
    }
    a
}

fn compute_profile(k: u32) -> Result<ClassProfile> {
    if k > MAX_LEVEL {
        return Err(Error::OracleScope(format!(
            "P_{} is beyond the oracle (k <= {MAX_LEVEL})",
            pow3(k)
        )));
    }
    if k <= 2 {
        return Ok(profile_of(k, sylow_elements(k)?.into_iter()));
    }
    let base = sylow_elements(2)?;
    let order = 3u64.pow(13);
    let empty = || ClassProfile {
        k,
        order,
        buckets: BTreeMap::new(),
    };
    let jobs: Vec<(u32, usize)> = (0..3)
        .flat_map(|h| (0..base.len()).map(move |i| (h, i)))
        .collect();
    let profile = jobs
        .par_iter()
        .map(|&(h, i)| {
            let a = &base[i];
            let elems = base
                .iter()
                .flat_map(|b| base.iter().map(move |c| (b, c)))
                .map(|(b, c)| compose_block([a, b, c], h, 2));
            profile_of(k, elems)
        })
        .reduce(empty, merge);
    Ok(ClassProfile { order, ..profile })
}

static PROFILES: OnceLock<Mutex<HashMap<u32, Arc<ClassProfile>>>> = OnceLock::new();

/// The class profile of `P_{3^k}`, computed once per process.
pub fn sylow_profile(k: u32) -> Result<Arc<ClassProfile>> {
    if k > MAX_LEVEL {
        return Err(Error::OracleScope(format!(
            "P_{} is beyond the oracle (k <= {MAX_LEVEL})",
            pow3(k)
        )));
    }
    let memo = PROFILES.get_or_init(Default::default);
    if let Some(p) = memo.lock().unwrap().get(&k) {
        return Ok(p.clone());
    }
    let p = Arc::new(compute_profile(k)?);
    memo.lock().unwrap().insert(k, p.clone());
    Ok(p)
}

/// The profile of `P_{3^k}` if this process has already built or installed it.
pub fn cached_profile(k: u32) -> Option<Arc<ClassProfile>> {
    PROFILES.get()?.lock().unwrap().get(&k).cloned()
}

/// Install a precomputed profile, e.g. one loaded from disk.
pub fn install_profile(profile: ClassProfile) -> Result<()> {
    let expected = 3u64.pow(((pow3(profile.k) - 1) / 2) as u32);
    if profile.k > MAX_LEVEL || profile.order != expected || profile.total() != expected {
        return Err(Error::OracleScope(
            "profile does not describe a Sylow 3-subgroup".into(),
        ));
    }
    PROFILES
        .get_or_init(Default::default)
        .lock()
        .unwrap()
        .insert(profile.k, Arc::new(profile));
    Ok(())
}

type ZVector = Arc<BTreeMap<Partition, u64>>;
static PRIME_Z: OnceLock<Mutex<HashMap<Vec<u8>, ZVector>>> = OnceLock::new();
static LABEL_Z: OnceLock<Mutex<HashMap<CharLabel, ZVector>>> = OnceLock::new();

/// Nonzero `Z^λ` over all λ ⊢ 3^k for the character with digits in 0..3.
pub fn prime_power_z(digits: &[u8]) -> Result<ZVector> {
    let k = digits.len() as u32;
    if digits.iter().any(|&d| d > 2) {
        return Err(Error::InvalidLabel(format!(
            "digit out of range in {digits:?}"
        )));
    }
    let memo = PRIME_Z.get_or_init(Default::default);
    if let Some(v) = memo.lock().unwrap().get(digits) {
        return Ok(v.clone());
    }
    let profile = sylow_profile(k)?;
    let sums: Vec<(Partition, EisensteinInt)> = profile
        .buckets
        .keys()
        .map(|ct| (ct.clone(), profile.label_sum(ct, digits)))
        .collect();
    let order = profile.order as i128;
    let shapes = enumerate_partitions(pow3(k) as u32);
    let values: Vec<Result<(Partition, u64)>> = shapes
        .into_par_iter()
        .map(|lambda| {
            let mut acc = EisensteinInt::ZERO;
            for (ct, s) in &sums {
                acc = acc + s.scale(mn(lambda.parts(), ct.parts()));
            }
            let whole = acc
                .as_integer()
                .filter(|v| v % order == 0 && *v >= 0)
                .ok_or_else(|| {
                    Error::OracleScope(format!(
                        "inner product for {lambda} is not a nonnegative integer: {acc:?}"
                    ))
                })?;
            Ok((lambda, (whole / order) as u64))
        })
        .collect();
    let mut out = BTreeMap::new();
    for v in values {
        let (lambda, z) = v?;
        if z > 0 {
            out.insert(lambda, z);
        }
    }
    let out = Arc::new(out);
    memo.lock().unwrap().insert(digits.to_vec(), out.clone());
    Ok(out)
}

fn check_scope(label: &CharLabel) -> Result<()> {
    if let Some(c) = label.components().iter().find(|c| c.len() > MAX_LEVEL) {
        return Err(Error::OracleScope(format!(
            "component {c} has degree {} > 27",
            c.degree()
        )));
    }
    if label.n() > MAX_DEGREE {
        return Err(Error::OracleScope(format!(
            "degree {} exceeds {MAX_DEGREE}",
            label.n()
        )));
    }
    Ok(())
}

/// Nonzero `Z^λ_Θ` over all λ ⊢ n.
pub fn z_vector(label: &CharLabel) -> Result<ZVector> {
    check_scope(label)?;
    let memo = LABEL_Z.get_or_init(Default::default);
    if let Some(v) = memo.lock().unwrap().get(label) {
        return Ok(v.clone());
    }
    let mut acc: Option<BTreeMap<Partition, u64>> = None;
    for c in label.components() {
        let next = prime_power_z(c.bits())?;
        acc = Some(match acc {
            None => next.as_ref().clone(),
            Some(cur) => young_induce(&cur, &next),
        });
    }
    let out = Arc::new(acc.unwrap_or_else(|| BTreeMap::from([(Partition::empty(), 1)])));
    memo.lock().unwrap().insert(label.clone(), out.clone());
    Ok(out)
}

/// Multiplicities of the outer product of two characters given by their
/// multiplicity vectors.
fn young_induce(
    left: &BTreeMap<Partition, u64>,
    right: &BTreeMap<Partition, u64>,
) -> BTreeMap<Partition, u64> {
    let pairs: Vec<(&Partition, u64, &Partition, u64)> = left
        .iter()
        .flat_map(|(mu, &a)| right.iter().map(move |(nu, &b)| (mu, a, nu, b)))
        .collect();
    pairs
        .par_iter()
        .map(|&(mu, a, nu, b)| {
            lr::lr_product(mu, nu)
                .into_iter()
                .map(|(lam, c)| (lam, c * a * b))
                .collect::<BTreeMap<_, _>>()
        })
        .reduce(BTreeMap::new, |mut x, y| {
            for (lam, c) in y {
                *x.entry(lam).or_insert(0) += c;
            }
            x
        })
}

/// `Z^λ_Θ = ⟨χ^λ↓, Θ⟩`.
pub fn branching_coefficient(lambda: &Partition, label: &CharLabel) -> Result<u64> {
    if u64::from(lambda.size()) != label.n() {
        return Err(Error::SizeMismatch {
            expected: label.n(),
            got: lambda.size().into(),
        });
    }
    Ok(z_vector(label)?.get(lambda).copied().unwrap_or(0))
}

/// `{λ : Z^λ_Θ > 0}`, sorted.
pub fn omega_oracle(label: &CharLabel) -> Result<Vec<Partition>> {
    Ok(z_vector(label)?.keys().cloned().collect())
}

/// `c^λ_{μν}` as the multiplicity of χ^λ in the induced product character.
pub fn lr_oracle(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<u64> {
    let (m, n) = (mu.size(), nu.size());
    if lambda.size() != m + n {
        return Err(Error::SizeMismatch {
            expected: (m + n).into(),
            got: lambda.size().into(),
        });
    }
    if m + n > 16 {
        return Err(Error::OracleScope(format!(
            "character LR oracle limited to degree 16, got {}",
            m + n
        )));
    }
    let mut total = 0i128;
    for a in enumerate_partitions(m) {
        let xm = mn(mu.parts(), a.parts());
        if xm == 0 {
            continue;
        }
        for b in enumerate_partitions(n) {
            let xn = mn(nu.parts(), b.parts());
            if xn == 0 {
                continue;
            }
            let joined = Partition::from_unsorted([a.parts(), b.parts()].concat());
            let xl = mn(lambda.parts(), joined.parts());
            total += xl * xm * xn * class_size(&a) as i128 * class_size(&b) as i128;
        }
    }
    let denom = (factorial(m) * factorial(n)) as i128;
    debug_assert_eq!(total % denom, 0);
    Ok((total / denom) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::p;

    fn label(s: &str) -> CharLabel {
        s.parse().unwrap()
    }

    #[test]
    fn eisenstein_ring() {
        let w = EisensteinInt::OMEGA;
        assert_eq!(w * w * w, EisensteinInt::ONE);
        assert_eq!(EisensteinInt::ONE + w + w * w, EisensteinInt::ZERO);
        assert_eq!(w.conj(), w * w);
        let x = EisensteinInt::new(3, -2);
        let y = EisensteinInt::new(-1, 5);
        assert_eq!((x * y).conj(), x.conj() * y.conj());
    }

    #[test]
    fn characters() {
        assert_eq!(mn_character(&p(&[6]), &p(&[3, 2, 1])).unwrap(), 1);
        assert_eq!(mn_character(&p(&[2, 1]), &p(&[3])).unwrap(), -1);
        assert_eq!(mn_character(&p(&[1, 1, 1]), &p(&[3])).unwrap(), 1);
        assert!(mn_character(&p(&[2, 1]), &p(&[2])).is_err());
    }

    #[test]
    fn column_orthogonality() {
        for n in 1..=7 {
            let shapes = enumerate_partitions(n);
            for a in &shapes {
                for b in &shapes {
                    let s: i128 = shapes
                        .iter()
                        .map(|ct| {
                            class_size(ct) as i128
                                * mn(a.parts(), ct.parts())
                                * mn(b.parts(), ct.parts())
                        })
                        .sum();
                    assert_eq!(s, if a == b { factorial(n) as i128 } else { 0 }, "{a} {b}");
                }
            }
        }
    }

    #[test]
    fn small_profiles() {
        let p1 = sylow_profile(1).unwrap();
        assert_eq!(p1.buckets.len(), 2);
        assert_eq!(p1.count(&p(&[1, 1, 1])), 1);
        assert_eq!(p1.count(&p(&[3])), 2);
        assert_eq!(p1.label_sum(&p(&[3]), &[1]), EisensteinInt::from_int(-1));
        let p2 = sylow_profile(2).unwrap();
        assert_eq!(p2.total(), 81);
        for digits in [[1u8, 0], [0, 1], [1, 1], [2, 1]] {
            let grand = p2.buckets.keys().fold(EisensteinInt::ZERO, |acc, ct| {
                acc + p2.label_sum(ct, &digits)
            });
            assert_eq!(grand, EisensteinInt::ZERO);
        }
    }

    #[test]
    fn elements_respect_blocks() {
        for g in sylow_elements(2).unwrap() {
            for block in 0..3 {
                let images: Vec<u8> = (0..3).map(|y| g.perm[block * 3 + y] / 3).collect();
                assert!(images.iter().all(|&b| b == images[0]));
            }
        }
    }

    #[test]
    fn coefficients() {
        assert_eq!(branching_coefficient(&p(&[2, 1]), &label("1")).unwrap(), 1);
        assert_eq!(branching_coefficient(&p(&[3]), &label("0")).unwrap(), 1);
        assert_eq!(branching_coefficient(&p(&[8, 1]), &label("01")).unwrap(), 1);
        assert_eq!(
            omega_oracle(&label("0")).unwrap(),
            vec![p(&[3]), p(&[1, 1, 1])]
        );
        assert!(matches!(
            branching_coefficient(&p(&[81]), &label("0000")),
            Err(Error::OracleScope(_))
        ));
    }

    #[test]
    fn induced_dimension() {
        for (n, k) in [(3u32, 1u32), (9, 2)] {
            let order = sylow_profile(k).unwrap().order as u128;
            for l in CharLabel::all(n.into()) {
                let total: u128 = z_vector(&l)
                    .unwrap()
                    .iter()
                    .map(|(lam, &z)| z as u128 * lr::dimension(lam))
                    .sum();
                assert_eq!(total, factorial(n) / order, "{l}");
            }
        }
    }

    #[test]
    fn ternary_digits_match_binary() {
        for digits in [
            [0u8, 1],
            [0, 2],
            [1, 0],
            [2, 0],
            [1, 1],
            [2, 2],
            [1, 2],
            [2, 1],
        ] {
            let binary: Vec<u8> = digits.iter().map(|&d| d.min(1)).collect();
            assert_eq!(
                prime_power_z(&digits).unwrap(),
                prime_power_z(&binary).unwrap(),
                "{digits:?}"
            );
        }
    }

    #[test]
    fn lr_oracle_examples() {
        assert_eq!(
            lr_oracle(&p(&[3, 2, 1]), &p(&[2, 1]), &p(&[2, 1])).unwrap(),
            2
        );
        assert_eq!(
            lr_oracle(&p(&[4, 2]), &p(&[4, 2]), &Partition::empty()).unwrap(),
            1
        );
        assert_eq!(lr_oracle(&p(&[6]), &p(&[3]), &p(&[3])).unwrap(), 1);
    }
}
