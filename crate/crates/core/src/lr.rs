//! Littlewood–Richardson fillings and coefficients, the star product of
//! partition sets and D-sets.
//!
//! Every query goes through one depth-first search that adds horizontal
//! strips of 1s, 2s, ... to the inner shape while keeping the reading word
//! a lattice word.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::{Mutex, OnceLock, RwLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{count_bounded, enumerate_bounded, Cell, Partition, SkewShape};

pub const CACHE_ENV: &str = "SYLOW3_LR_CACHE";

/// An LR filling: cell -> entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LrFilling {
    pub assignment: BTreeMap<Cell, u32>,
}

impl LrFilling {
    /// Right to left along each row, rows top to bottom.
    pub fn reading_word(&self) -> Vec<u32> {
        let mut by_row: BTreeMap<u32, Vec<(u32, u32)>> = BTreeMap::new();
        for (cell, &v) in &self.assignment {
            by_row.entry(cell.row).or_default().push((cell.col, v));
        }
        by_row
            .into_values()
            .flat_map(|mut row| {
                row.sort_unstable_by_key(|c| std::cmp::Reverse(c.0));
                row.into_iter().map(|(_, v)| v)
            })
            .collect()
    }

    pub fn weight(&self) -> Partition {
        weight_of(&self.reading_word())
    }
}

/// Weight of a word over positive integers, as a partition (entry j counts the j's).
pub fn weight_of(word: &[u32]) -> Partition {
    let top = word.iter().copied().max().unwrap_or(0) as usize;
    let mut counts = vec![0u32; top];
    for &w in word {
        counts[w as usize - 1] += 1;
    }
    Partition::from_unsorted(counts)
}

/// Every prefix has at least as many j's as (j+1)'s.
pub fn is_lattice_word(word: &[u32]) -> bool {
    let mut counts: Vec<u32> = Vec::new();
    for &w in word {
        let i = w as usize - 1;
        if counts.len() <= i {
            counts.resize(i + 1, 0);
        }
        counts[i] += 1;
        if i > 0 && counts[i] > counts[i - 1] {
            return false;
        }
    }
    true
}

/// A set of target weights, indexed by prefix for pruning.
pub struct WeightSet {
    full: HashSet<Vec<u32>>,
    next_max: HashMap<Vec<u32>, u32>,
}

impl WeightSet {
    pub fn new<'a, I: IntoIterator<Item = &'a Partition>>(set: I) -> Self {
        let mut full = HashSet::new();
        let mut next_max: HashMap<Vec<u32>, u32> = HashMap::new();
        for nu in set {
            let parts = nu.parts();
            for i in 0..parts.len() {
                let e = next_max.entry(parts[..i].to_vec()).or_insert(0);
                *e = (*e).max(parts[i]);
            }
            full.insert(parts.to_vec());
        }
        Self { full, next_max }
    }

    fn allows_next(&self, prefix: &[u32]) -> u32 {
        self.next_max.get(prefix).copied().unwrap_or(0)
    }

    fn contains(&self, parts: &[u32]) -> bool {
        self.full.contains(parts)
    }
}

enum Rule<'a> {
    Exact(&'a [u32]),
    Free(Option<&'a WeightSet>),
}

/// Strip-by-strip search. `cur` is the current shape padded to `rows`,
/// `counts[i][r]` the number of entries `i+1` in row `r`.
struct Search<'a, F> {
    outer: Option<&'a [u32]>,
    rule: Rule<'a>,
    rows: usize,
    cur: Vec<u32>,
    counts: Vec<Vec<u32>>,
    weight: Vec<u32>,
    cells_left: u32,
    visit: F,
}

impl<'a, F> Search<'a, F>
where
    F: FnMut(&[u32], &[Vec<u32>], &[u32]) -> bool,
{
    fn cap(&self, r: usize) -> u32 {
        match self.outer {
            Some(o) => o.get(r).copied().unwrap_or(0),
            None => u32::MAX,
        }
    }

    /// Returns true to stop the whole search.
    fn run(&mut self) -> bool {
        let i = self.weight.len();
        let target = match self.rule {
            Rule::Exact(nu) => {
                if i == nu.len() {
                    return (self.visit)(&self.cur, &self.counts, &self.weight);
                }
                Some(nu[i])
            }
            Rule::Free(_) => {
                if self.cells_left == 0 {
                    return (self.visit)(&self.cur, &self.counts, &self.weight);
                }
                None
            }
        };
        let limit = match (&self.rule, target) {
            (_, Some(t)) => t,
            (Rule::Free(Some(ws)), None) => ws.allows_next(&self.weight),
            (Rule::Free(None), None) => {
                if i == 0 {
                    u32::MAX
                } else {
                    self.weight[i - 1]
                }
            }
            _ => unreachable!(),
        };
        if limit == 0 {
            return false;
        }
        let old = self.cur.clone();
        self.counts.push(vec![0; self.rows]);
        let stop = self.strip(i, 0, 0, 0, &old, target, limit);
        self.counts.pop();
        stop
    }

    #[allow(clippy::too_many_arguments)]
    fn strip(
        &mut self,
        i: usize,
        r: usize,
        placed: u32,
        prev_above: u32,
        old: &[u32],
        target: Option<u32>,
        limit: u32,
    ) -> bool {
        if r == self.rows {
            let ok = match target {
                Some(t) => placed == t,
                None => placed > 0,
            };
            if !ok {
                return false;
            }
            self.weight.push(placed);
            self.cells_left -= placed;
            let stop = self.run();
            self.cells_left += placed;
            self.weight.pop();
            return stop;
        }
        let mut room = self.cap(r).saturating_sub(self.cur[r]);
        if r > 0 {
            room = room.min(old[r - 1].saturating_sub(self.cur[r]));
        }
        room = room.min(limit - placed);
        if i > 0 {
            // lattice: i+1's in rows 0..=r may not exceed i's in rows 0..r
            room = room.min(prev_above.saturating_sub(placed));
        }
        let next_prev = if i > 0 {
            prev_above + self.counts[i - 1][r]
        } else {
            0
        };
        for a in (0..=room).rev() {
            self.cur[r] += a;
            self.counts[i][r] = a;
            let stop = self.strip(i, r + 1, placed + a, next_prev, old, target, limit);
            self.cur[r] -= a;
            self.counts[i][r] = 0;
            if stop {
                return true;
            }
        }
        false
    }
}

fn padded(p: &Partition, rows: usize) -> Vec<u32> {
    let mut v = p.parts().to_vec();
    v.resize(rows, 0);
    v
}

fn trimmed(v: &[u32]) -> Partition {
    Partition::from_sorted(v.iter().copied().filter(|&x| x > 0).collect())
}

/// Runs an exact-weight search from `inner`, optionally bounded by `outer`.
fn exact_search<F>(inner: &Partition, outer: Option<&Partition>, nu: &Partition, visit: F)
where
    F: FnMut(&[u32], &[Vec<u32>], &[u32]) -> bool,
{
    let rows = match outer {
        Some(o) => o.len() as usize,
        None => (inner.len() + nu.len()) as usize,
    };
    if outer.is_some_and(|o| !o.contains(inner)) {
        return;
    }
    let outer_parts = outer.map(|o| o.parts().to_vec());
    let mut s = Search {
        outer: outer_parts.as_deref(),
        rule: Rule::Exact(nu.parts()),
        rows,
        cur: padded(inner, rows),
        counts: Vec::new(),
        weight: Vec::new(),
        cells_left: nu.size(),
        visit,
    };
    s.run();
}

/// Runs a free-weight search filling `outer \ inner` completely.
fn free_search<F>(shape: &SkewShape, weights: Option<&WeightSet>, visit: F)
where
    F: FnMut(&[u32], &[Vec<u32>], &[u32]) -> bool,
{
    let rows = shape.outer().len() as usize;
    let mut s = Search {
        outer: Some(shape.outer().parts()),
        rule: Rule::Free(weights),
        rows,
        cur: padded(shape.inner(), rows),
        counts: Vec::new(),
        weight: Vec::new(),
        cells_left: shape.size(),
        visit,
    };
    s.run();
}

fn filling_from(shape: &SkewShape, counts: &[Vec<u32>]) -> LrFilling {
    let mut assignment = BTreeMap::new();
    for r in 0..shape.outer().len() as usize {
        let mut col = shape.inner().part(r);
        for (i, per_row) in counts.iter().enumerate() {
            for _ in 0..per_row[r] {
                col += 1;
                assignment.insert(
                    Cell {
                        row: r as u32 + 1,
                        col,
                    },
                    i as u32 + 1,
                );
            }
        }
    }
    LrFilling { assignment }
}

/// All LR fillings of `shape` with weight `nu`.
pub fn lr_fillings(shape: &SkewShape, nu: &Partition) -> Result<Vec<LrFilling>> {
    if shape.size() != nu.size() {
        return Err(Error::SizeMismatch {
            expected: shape.size() as u64,
            got: nu.size() as u64,
        });
    }
    let mut out = Vec::new();
    exact_search(shape.inner(), Some(shape.outer()), nu, |_, counts, _| {
        out.push(filling_from(shape, counts));
        false
    });
    Ok(out)
}

/// `c^lambda_{mu nu}` by direct count, no cache.
pub fn lr_coefficient_uncached(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if lambda.size() != mu.size() + nu.size() || !lambda.contains(mu) || !lambda.contains(nu) {
        return 0;
    }
    if lambda.first() > mu.first() + nu.first() || lambda.len() > mu.len() + nu.len() {
        return 0;
    }
    // fill the larger skew complement with the smaller weight count
    let mut count = 0u64;
    exact_search(mu, Some(lambda), nu, |_, _, _| {
        count += 1;
        false
    });
    count
}

type Key = (Partition, Partition, Partition);

struct LrCache {
    map: RwLock<HashMap<Key, u64>>,
    file: Mutex<Option<File>>,
}

static CACHE: OnceLock<LrCache> = OnceLock::new();
static CACHE_PATH: OnceLock<Option<PathBuf>> = OnceLock::new();

/// Selects the cache file. Only effective before the first coefficient query;
/// otherwise the `SYLOW3_LR_CACHE` environment variable is consulted.
pub fn set_cache_path(path: &Path) -> bool {
    CACHE_PATH.set(Some(path.to_path_buf())).is_ok()
}

fn cache() -> &'static LrCache {
    CACHE.get_or_init(|| {
        let path = CACHE_PATH
            .get_or_init(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
            .clone();
        let mut map = HashMap::new();
        let mut file = None;
        if let Some(path) = path {
            if let Ok(f) = File::open(&path) {
                for line in BufReader::new(f).lines().map_while(|l| l.ok()) {
                    if let Some((k, c)) = parse_cache_line(&line) {
                        map.insert(k, c);
                    }
                }
            }
            if let Some(dir) = path.parent() {
                let _ = std::fs::create_dir_all(dir);
            }
            file = OpenOptions::new()
                .create(true)
                .append(true)
                .open(&path)
                .ok();
        }
        LrCache {
            map: RwLock::new(map),
            file: Mutex::new(file),
        }
    })
}

fn parse_cache_line(line: &str) -> Option<(Key, u64)> {
    let mut it = line.split(';');
    let l: Partition = it.next()?.parse().ok()?;
    let m: Partition = it.next()?.parse().ok()?;
    let n: Partition = it.next()?.parse().ok()?;
    let c: u64 = it.next()?.trim().parse().ok()?;
    if it.next().is_some() {
        return None;
    }
    Some(((l, m, n), c))
}

/// `c^lambda_{mu nu}`, memoized (and persisted when a cache file is configured).
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if lambda.size() != mu.size() + nu.size() || !lambda.contains(mu) || !lambda.contains(nu) {
        return 0;
    }
    let (a, b) = if mu <= nu { (mu, nu) } else { (nu, mu) };
    let key = (lambda.clone(), a.clone(), b.clone());
    let c = cache();
    if let Some(&v) = c.map.read().unwrap().get(&key) {
        return v;
    }
    let v = lr_coefficient_uncached(lambda, mu, nu);
    let mut guard = c.file.lock().unwrap();
    if let Some(f) = guard.as_mut() {
        let _ = writeln!(f, "{};{};{};{}", key.0, key.1, key.2, v);
    }
    drop(guard);
    c.map.write().unwrap().insert(key, v);
    v
}

/// `s_mu * s_nu` as a map shape -> coefficient.
pub fn lr_product(mu: &Partition, nu: &Partition) -> BTreeMap<Partition, u64> {
    let (a, b) = if mu.size() >= nu.size() {
        (mu, nu)
    } else {
        (nu, mu)
    };
    let mut out = BTreeMap::new();
    exact_search(a, None, b, |cur, _, _| {
        *out.entry(trimmed(cur)).or_insert(0) += 1;
        false
    });
    out
}

/// Terms of `s_mu * s_nu` whose shape lies inside `bound`.
pub fn lr_product_within(
    mu: &Partition,
    nu: &Partition,
    bound: &Partition,
) -> BTreeMap<Partition, u64> {
    let mut out = BTreeMap::new();
    exact_search(mu, Some(bound), nu, |cur, _, _| {
        *out.entry(trimmed(cur)).or_insert(0) += 1;
        false
    });
    out
}

/// All weights of LR fillings of `shape`.
pub fn lr_weights(shape: &SkewShape) -> BTreeSet<Partition> {
    let mut out = BTreeSet::new();
    free_search(shape, None, |_, _, w| {
        out.insert(Partition::from_sorted(w.to_vec()));
        false
    });
    out
}

/// Whether the shape has exactly one LR filling: it is a partition diagram or its rotation.
pub fn has_unique_filling(shape: &SkewShape) -> bool {
    shape.as_straight().is_some() || shape.rotated().as_straight().is_some()
}

/// Iterated coefficient `c^lambda_{mu^1, ..., mu^r}`.
pub fn iterated_lr(lambda: &Partition, factors: &[Partition]) -> Result<u64> {
    let total: u32 = factors.iter().map(|f| f.size()).sum();
    if total != lambda.size() {
        return Err(Error::SizeMismatch {
            expected: lambda.size() as u64,
            got: total as u64,
        });
    }
    let Some((first, rest)) = factors.split_first() else {
        return Ok(1);
    };
    if !lambda.contains(first) {
        return Ok(0);
    }
    let mut layer: BTreeMap<Partition, u64> = BTreeMap::from([(first.clone(), 1)]);
    for mu in rest {
        let mut next = BTreeMap::new();
        for (gamma, c) in &layer {
            for (kappa, d) in lr_product_within(gamma, mu, lambda) {
                *next.entry(kappa).or_insert(0) += c * d;
            }
        }
        layer = next;
    }
    Ok(layer.get(lambda).copied().unwrap_or(0))
}

fn uniform_size(set: &[Partition]) -> Result<Option<u32>> {
    let mut it = set.iter().map(|p| p.size());
    let Some(n) = it.next() else { return Ok(None) };
    if let Some(bad) = it.find(|&m| m != n) {
        return Err(Error::SizeMismatch {
            expected: n as u64,
            got: bad as u64,
        });
    }
    Ok(Some(n))
}

/// `A ★ B`, restricted to those witness pairs accepted by `accept(tag, nu)`.
pub fn star_filtered<T, F>(
    a: &[(Partition, T)],
    b: &[Partition],
    accept: F,
) -> Result<Vec<Partition>>
where
    T: Sync,
    F: Fn(&T, &Partition) -> bool + Sync,
{
    let a_parts: Vec<Partition> = a.iter().map(|x| x.0.clone()).collect();
    let (Some(n), Some(m)) = (uniform_size(&a_parts)?, uniform_size(b)?) else {
        return Ok(Vec::new());
    };
    let weights = WeightSet::new(b);
    let max_part = a_parts.iter().map(|x| x.first()).max().unwrap_or(0)
        + b.iter().map(|x| x.first()).max().unwrap_or(0);
    let max_len = a_parts.iter().map(|x| x.len()).max().unwrap_or(0)
        + b.iter().map(|x| x.len()).max().unwrap_or(0);
    let candidates = enumerate_bounded(n + m, max_part, max_len);
    let mut out: Vec<Partition> = candidates
        .into_par_iter()
        .filter(|lambda| {
            a.iter().any(|(mu, tag)| {
                if !lambda.contains(mu) {
                    return false;
                }
                let shape = SkewShape::new(lambda.clone(), mu.clone()).expect("nested");
                let mut found = false;
                free_search(&shape, Some(&weights), |_, _, w| {
                    if weights.contains(w) && accept(tag, &Partition::from_sorted(w.to_vec())) {
                        found = true;
                    }
                    found
                });
                found
            })
        })
        .collect();
    out.sort();
    Ok(out)
}

/// `A ★ B = {lambda : c^lambda_{mu nu} > 0 for some mu in A, nu in B}`.
pub fn star(a: &[Partition], b: &[Partition]) -> Result<Vec<Partition>> {
    if uniform_size(b)?.is_some_and(|m| m <= REMOVAL_LIMIT) {
        return star_by_removal(a, b);
    }
    let tagged: Vec<(Partition, ())> = a.iter().map(|x| (x.clone(), ())).collect();
    star_filtered(&tagged, b, |_, _| true)
}

/// Above this size of the right operand, removing cells costs more than
/// scanning the left operand.
const REMOVAL_LIMIT: u32 = 12;

/// `A ★ B` for small `B`: strip `|B|` cells from each candidate in every way
/// and look the remainder up in `A`.
fn star_by_removal(a: &[Partition], b: &[Partition]) -> Result<Vec<Partition>> {
    let (Some(n), Some(m)) = (uniform_size(a)?, uniform_size(b)?) else {
        return Ok(Vec::new());
    };
    let lookup: HashSet<&Partition> = a.iter().collect();
    let weights = WeightSet::new(b);
    // every skew shape has some LR filling
    let everything = b.len() as u64 == count_bounded(m, m, m);
    let max_part = a.iter().map(|x| x.first()).max().unwrap_or(0)
        + b.iter().map(|x| x.first()).max().unwrap_or(0);
    let max_len =
        a.iter().map(|x| x.len()).max().unwrap_or(0) + b.iter().map(|x| x.len()).max().unwrap_or(0);
    let mut out: Vec<Partition> = enumerate_bounded(n + m, max_part, max_len)
        .into_par_iter()
        .filter(|lambda| {
            let mut inner = vec![0u32; lambda.len() as usize];
            any_removal(lambda, &mut inner, lambda.len() as usize, 0, m, &mut |mu| {
                if !lookup.contains(mu) {
                    return false;
                }
                if everything {
                    return true;
                }
                let shape = SkewShape::new(lambda.clone(), mu.clone()).expect("nested");
                let mut found = false;
                free_search(&shape, Some(&weights), |_, _, w| {
                    found = weights.contains(w);
                    found
                });
                found
            })
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Tries every `mu ⊆ lambda` with `|lambda/mu| = remove`, filling rows
/// `0..row` of `inner` bottom-up; stops at the first `mu` accepted by `hit`.
fn any_removal(
    lambda: &Partition,
    inner: &mut Vec<u32>,
    row: usize,
    below: u32,
    remove: u32,
    hit: &mut dyn FnMut(&Partition) -> bool,
) -> bool {
    if row == 0 {
        return remove == 0 && hit(&Partition::from_unsorted(inner.clone()));
    }
    let r = row - 1;
    let top = lambda.part(r);
    let low = below.max(top.saturating_sub(remove));
    for keep in (low..=top).rev() {
        inner[r] = keep;
        if any_removal(lambda, inner, r, keep, remove - (top - keep), hit) {
            return true;
        }
    }
    false
}

/// Star of a list of sets, left to right.
pub fn star_all(sets: &[Vec<Partition>]) -> Result<Vec<Partition>> {
    let mut acc = vec![Partition::empty()];
    for s in sets {
        acc = star(&acc, s)?;
    }
    Ok(acc)
}

/// `D(q, m, B)`: shapes reached by q members of B that are not all equal.
pub fn d_set(q: u32, b: &[Partition]) -> Result<Vec<Partition>> {
    if q < 2 {
        return Err(Error::OutOfRange(format!("d_set needs q >= 2, got {q}")));
    }
    uniform_size(b)?;
    // powers[mu] = support of s_mu^j, tagged by which mu produced each shape
    let mut powers: Vec<(Partition, Vec<Partition>)> =
        b.iter().map(|mu| (mu.clone(), vec![mu.clone()])).collect();
    let mut d: Vec<Partition> = Vec::new();
    for _ in 1..q {
        let mut tagged: BTreeMap<Partition, Vec<Partition>> = BTreeMap::new();
        for (mu, support) in &powers {
            for gamma in support {
                tagged.entry(gamma.clone()).or_default().push(mu.clone());
            }
        }
        let tagged: Vec<(Partition, Vec<Partition>)> = tagged.into_iter().collect();
        let mixed = star_filtered(&tagged, b, |mus: &Vec<Partition>, nu| {
            mus.iter().any(|mu| mu != nu)
        })?;
        let mut next: BTreeSet<Partition> = mixed.into_iter().collect();
        next.extend(star(&d, b)?);
        d = next.into_iter().collect();
        for (mu, support) in powers.iter_mut() {
            *support = star(support, std::slice::from_ref(mu))?;
        }
    }
    Ok(d)
}

/// Number of standard Young tableaux of shape `lambda` (hook length formula).
pub fn dimension(lambda: &Partition) -> u128 {
    let n = lambda.size() as usize;
    // exponent of each prime in n! / prod(hooks)
    let mut exps = vec![0i64; n + 1];
    let add = |exps: &mut Vec<i64>, mut x: usize, sign: i64| {
        let mut d = 2;
        while x > 1 {
            while x.is_multiple_of(d) {
                exps[d] += sign;
                x /= d;
            }
            d += 1;
        }
    };
    for x in 2..=n {
        add(&mut exps, x, 1);
    }
    let conj = lambda.conjugate();
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row as usize {
            let hook = (row as usize - j - 1) + (conj.part(j) as usize - i - 1) + 1;
            add(&mut exps, hook, -1);
        }
    }
    let mut out: u128 = 1;
    for (prime, &e) in exps.iter().enumerate() {
        debug_assert!(e >= 0);
        for _ in 0..e {
            out *= prime as u128;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{enumerate_box, enumerate_partitions, p, skew};

    #[test]
    fn fillings_examples() {
        let s = skew(&p(&[2, 1]), &p(&[1])).unwrap();
        assert_eq!(lr_fillings(&s, &p(&[2])).unwrap().len(), 1);
        let e = skew(&p(&[2, 1]), &p(&[2, 1])).unwrap();
        assert_eq!(lr_fillings(&e, &Partition::empty()).unwrap().len(), 1);
        let f = lr_fillings(&SkewShape::straight(p(&[2, 2])), &p(&[2, 2])).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].reading_word(), vec![1, 1, 2, 2]);
        assert!(lr_fillings(&s, &p(&[3])).is_err());
    }

    #[test]
    fn fillings_satisfy_the_rule() {
        for lambda in enumerate_partitions(7) {
            for mu in enumerate_partitions(3)
                .into_iter()
                .filter(|m| lambda.contains(m))
            {
                let shape = skew(&lambda, &mu).unwrap();
                for nu in enumerate_partitions(4) {
                    for f in lr_fillings(&shape, &nu).unwrap() {
                        assert!(is_lattice_word(&f.reading_word()));
                        assert_eq!(f.weight(), nu);
                        for (cell, v) in &f.assignment {
                            let right = Cell {
                                row: cell.row,
                                col: cell.col + 1,
                            };
                            let below = Cell {
                                row: cell.row + 1,
                                col: cell.col,
                            };
                            if let Some(w) = f.assignment.get(&right) {
                                assert!(w >= v);
                            }
                            if let Some(w) = f.assignment.get(&below) {
                                assert!(w > v);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(lr_coefficient(&p(&[3, 2, 1]), &p(&[2, 1]), &p(&[2, 1])), 2);
        assert_eq!(
            lr_coefficient(&p(&[4, 2]), &p(&[4, 2]), &Partition::empty()),
            1
        );
        assert_eq!(lr_coefficient(&p(&[4, 2]), &p(&[2, 1]), &p(&[2, 1])), 1);
        assert_eq!(lr_coefficient(&p(&[4, 2]), &p(&[2, 1]), &p(&[2])), 0);
    }

    #[test]
    fn product_matches_coefficients() {
        let mu = p(&[2, 1]);
        let nu = p(&[2, 1]);
        let prod = lr_product(&mu, &nu);
        for lambda in enumerate_partitions(6) {
            assert_eq!(
                prod.get(&lambda).copied().unwrap_or(0),
                lr_coefficient(&lambda, &mu, &nu)
            );
        }
    }

    #[test]
    fn weights_and_uniqueness() {
        assert_eq!(
            lr_weights(&SkewShape::straight(p(&[2, 1]))),
            [p(&[2, 1])].into_iter().collect()
        );
        let two_cells = skew(&p(&[2, 1]), &p(&[1])).unwrap();
        assert_eq!(
            lr_weights(&two_cells),
            [p(&[2]), p(&[1, 1])].into_iter().collect()
        );
        assert_eq!(
            lr_weights(&skew(&p(&[2]), &p(&[2])).unwrap()),
            [Partition::empty()].into_iter().collect()
        );
        assert!(has_unique_filling(&SkewShape::straight(p(&[3, 2]))));
        assert!(has_unique_filling(&skew(&p(&[3, 3]), &p(&[2, 1])).unwrap()));
        assert!(!has_unique_filling(&two_cells));
    }

    #[test]
    fn uniqueness_agrees_with_counting() {
        for n in 1..=7 {
            for lambda in enumerate_partitions(n) {
                for k in 0..n {
                    for mu in enumerate_partitions(k)
                        .into_iter()
                        .filter(|m| lambda.contains(m))
                    {
                        let shape = skew(&lambda, &mu).unwrap();
                        let weights = lr_weights(&shape);
                        let total: usize = weights
                            .iter()
                            .map(|w| lr_fillings(&shape, w).unwrap().len())
                            .sum();
                        assert_eq!(has_unique_filling(&shape), total == 1, "{lambda} / {mu}");
                        assert_eq!(weights.len() == 1, total == 1);
                    }
                }
            }
        }
    }

    #[test]
    fn iterated_examples() {
        let lam = p(&[4, 2]);
        assert_eq!(iterated_lr(&lam, std::slice::from_ref(&lam)).unwrap(), 1);
        let one = p(&[1]);
        assert_eq!(
            iterated_lr(&p(&[2, 1]), &[one.clone(), one.clone(), one.clone()]).unwrap(),
            2
        );
        // (b1+b2, mu) from (b1, nu1), (b2, nu2)
        let lhs = iterated_lr(&p(&[6, 2]), &[p(&[3, 1]), p(&[3, 1])]).unwrap();
        let rhs = lr_coefficient(&p(&[2]), &one, &one);
        assert_eq!((lhs, rhs), (1, 1));
        assert!(iterated_lr(&lam, &[one]).is_err());
    }

    #[test]
    fn star_examples() {
        let a = vec![p(&[3]), p(&[1, 1, 1])];
        let s = star(&a, &a).unwrap();
        let mut expected: Vec<Partition> = enumerate_partitions(6)
            .into_iter()
            .filter(|l| {
                a.iter()
                    .any(|x| a.iter().any(|y| lr_coefficient(l, x, y) > 0))
            })
            .collect();
        expected.sort();
        assert_eq!(s, expected);
        assert_eq!(star(&a, &[Partition::empty()]).unwrap(), a);
        let b21 = enumerate_box(2, 1);
        assert_eq!(b21, vec![]);
        assert!(star(&[p(&[1, 1])], &[p(&[1, 1])])
            .unwrap()
            .contains(&p(&[2, 2])));
        assert!(star(&[p(&[1]), p(&[2])], &a).is_err());
    }

    #[test]
    fn d_set_examples() {
        assert!(d_set(2, &[p(&[2, 1])]).unwrap().is_empty());
        let b = vec![p(&[2]), p(&[1, 1])];
        let d = d_set(2, &b).unwrap();
        let expected: Vec<Partition> = lr_product(&p(&[2]), &p(&[1, 1])).into_keys().collect();
        assert_eq!(d, expected);
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(dimension(&p(&[6])), 1);
        assert_eq!(dimension(&p(&[2, 1])), 2);
        assert_eq!(dimension(&p(&[3, 2])), 5);
        assert_eq!(dimension(&Partition::empty()), 1);
        let total: u128 = enumerate_partitions(6)
            .iter()
            .map(|l| dimension(l).pow(2))
            .sum();
        assert_eq!(total, 720);
    }

    #[test]
    fn cache_lines_round_trip() {
        let line = format!("{};{};{};{}", p(&[3, 2, 1]), p(&[2, 1]), p(&[2, 1]), 2);
        let ((l, m, n), c) = parse_cache_line(&line).unwrap();
        assert_eq!((l, m, n, c), (p(&[3, 2, 1]), p(&[2, 1]), p(&[2, 1]), 2));
        assert!(parse_cache_line("garbage").is_none());
    }
}
