//! Exhaustive counts over spindle permutations and switching classes.

mod burnside;
mod perms;
mod switching;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{canon, CanonKey};
use crate::detect::{detect, verify_found, DetectResult};
use crate::error::{Error, Result};
use crate::linking::LinkMatrix;
use crate::perm::Perm;
use crate::surface::spindle_genus;

pub use burnside::count_even_graphs;
pub use perms::{normalized_count, normalized_perm};
pub use switching::{
    distinct_charpolys, graphs_up_to_isomorphism, switching_keys_by_augmentation,
    switching_keys_direct,
};

/// Largest order enumerated without `extended`.
pub const DEFAULT_SPINDLE_LIMIT: usize = 11;
pub const DEFAULT_GENUS_LIMIT: usize = 12;
pub const DEFAULT_SWITCHING_LIMIT: usize = 9;

#[derive(Debug, Clone, Default)]
pub struct EnumOptions {
    /// Worker threads; 0 uses the rayon default.
    pub workers: usize,
    /// Lifts the default order limits.
    pub extended: bool,
    /// Directory for per-shard results; finished shards are reused.
    pub checkpoint_dir: Option<PathBuf>,
}

impl EnumOptions {
    fn run<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T> {
        if self.workers == 0 {
            return Ok(f());
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .map_err(|e| Error::Io(format!("thread pool: {e}")))?;
        Ok(pool.install(f))
    }

    fn guard(&self, what: &str, n: usize, limit: usize, hard: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::OutOfRange(format!("{what}: order must be positive")));
        }
        if n > hard {
            return Err(Error::GuardExceeded(format!(
                "{what}: order {n} is beyond the supported maximum {hard}"
            )));
        }
        if n > limit && !self.extended {
            return Err(Error::GuardExceeded(format!(
                "{what}: order {n} exceeds the default limit {limit}; pass --extended"
            )));
        }
        Ok(())
    }
}

/// Spindle classes of order n: packed key → least normalized rank.
#[derive(Debug, Clone)]
pub struct SpindleTable {
    pub n: usize,
    classes: BTreeMap<u128, u64>,
}

impl SpindleTable {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn keys(&self) -> impl Iterator<Item = CanonKey> + '_ {
        self.classes.keys().map(|&k| CanonKey::from_u128(self.n, k))
    }

    pub fn contains(&self, key: &CanonKey) -> bool {
        key.to_u128().is_some_and(|k| self.classes.contains_key(&k))
    }

    /// Lexicographically least normalized spindle of each class.
    pub fn representatives(&self) -> BTreeMap<CanonKey, Perm> {
        self.classes
            .iter()
            .map(|(&k, &r)| (CanonKey::from_u128(self.n, k), normalized_perm(self.n, r)))
            .collect()
    }

    /// Classes whose negated matrix lies in the same class.
    pub fn amphicheiral_keys(&self) -> Vec<CanonKey> {
        self.keys()
            .collect::<Vec<_>>()
            .into_par_iter()
            .filter(|k| canon(&k.matrix().negated()) == *k)
            .collect()
    }
}

type Shard = HashMap<u128, u64>;

#[derive(Serialize, Deserialize)]
struct ShardFile {
    n: usize,
    start: u64,
    end: u64,
    entries: Vec<(String, u64)>,
}

fn shard_path(dir: &Path, n: usize, start: u64, end: u64) -> PathBuf {
    dir.join(format!("spindles-n{n}-{start}-{end}.json"))
}

fn load_shard(path: &Path, n: usize) -> Result<Option<Shard>> {
    if !path.exists() {
        return Ok(None);
    }
    let text = fs::read_to_string(path)?;
    let file: ShardFile = serde_json::from_str(&text)
        .map_err(|e| Error::Io(format!("corrupt checkpoint {}: {e}", path.display())))?;
    if file.n != n {
        return Err(Error::Io(format!("checkpoint {} is for n = {}", path.display(), file.n)));
    }
    let mut shard = Shard::new();
    for (hex, rank) in file.entries {
        let key = CanonKey::from_hex(&hex)?;
        shard.insert(key.to_u128().expect("order checked"), rank);
    }
    Ok(Some(shard))
}

fn save_shard(path: &Path, n: usize, start: u64, end: u64, shard: &Shard) -> Result<()> {
    let mut entries: Vec<(String, u64)> = shard
        .iter()
        .map(|(&k, &r)| (CanonKey::from_u128(n, k).to_hex(), r))
        .collect();
    entries.sort();
    let text = serde_json::to_string(&ShardFile { n, start, end, entries })
        .map_err(|e| Error::Io(e.to_string()))?;
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn spindle_shard(n: usize, start: u64, end: u64) -> Shard {
    let mut shard = Shard::new();
    perms::for_each_normalized(n, start, end, |rank, p| {
        let key = canon(&LinkMatrix::from_spindle(p)).to_u128().expect("order <= 16");
        shard.entry(key).or_insert(rank);
    });
    shard
}

/// Canonical keys of the linking matrices of all normalized permutations.
/// Shards are the blocks of permutations sharing σ(2) and σ(3).
pub fn spindle_table(n: usize, opts: &EnumOptions) -> Result<SpindleTable> {
    opts.guard("spindle classes", n, DEFAULT_SPINDLE_LIMIT, 16)?;
    if let Some(dir) = &opts.checkpoint_dir {
        fs::create_dir_all(dir)?;
    }
    let total = normalized_count(n);
    let shard_len = perms::factorial(n.saturating_sub(3));
    let ranges = perms::split_ranges(total, total / shard_len);
    let shards: Vec<Result<Shard>> = opts.run(|| {
        ranges
            .par_iter()
            .map(|&(a, b)| {
                let Some(dir) = &opts.checkpoint_dir else {
                    return Ok(spindle_shard(n, a, b));
                };
                let path = shard_path(dir, n, a, b);
                if let Some(done) = load_shard(&path, n)? {
                    return Ok(done);
                }
                let shard = spindle_shard(n, a, b);
                save_shard(&path, n, a, b, &shard)?;
                Ok(shard)
            })
            .collect()
    })?;
    let mut classes = BTreeMap::new();
    for shard in shards {
        for (k, r) in shard? {
            classes
                .entry(k)
                .and_modify(|old: &mut u64| *old = (*old).min(r))
                .or_insert(r);
        }
    }
    Ok(SpindleTable { n, classes })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountReport {
    pub n: usize,
    pub spindle_classes: Option<u64>,
    pub amphicheiral: Option<u64>,
    pub switching_classes: Option<u64>,
    pub distinct_charpolys: Option<u64>,
    pub genus_histogram: Option<BTreeMap<usize, u64>>,
    pub census: Option<Census>,
    pub runtime_secs: f64,
}

impl CountReport {
    fn empty(n: usize) -> Self {
        CountReport {
            n,
            spindle_classes: None,
            amphicheiral: None,
            switching_classes: None,
            distinct_charpolys: None,
            genus_histogram: None,
            census: None,
            runtime_secs: 0.0,
        }
    }
}

pub fn count_spindle_classes(n: usize, opts: &EnumOptions) -> Result<CountReport> {
    let start = Instant::now();
    let table = spindle_table(n, opts)?;
    let amph = opts.run(|| table.amphicheiral_keys().len())?;
    let mut report = CountReport::empty(n);
    report.spindle_classes = Some(table.len() as u64);
    report.amphicheiral = Some(amph as u64);
    report.runtime_secs = start.elapsed().as_secs_f64();
    Ok(report)
}

/// Keys of all switching classes, from graph classes on n-1 vertices.
pub fn switching_class_keys(n: usize, opts: &EnumOptions) -> Result<BTreeSet<CanonKey>> {
    opts.guard("switching classes", n, DEFAULT_SWITCHING_LIMIT, 10)?;
    opts.run(|| switching_keys_by_augmentation(n))
}

/// Keys of all switching classes by canonizing every labeled matrix with
/// a normalized first row.
pub fn switching_class_keys_direct(n: usize, opts: &EnumOptions) -> Result<BTreeSet<CanonKey>> {
    if n == 0 || n > 9 {
        return Err(Error::GuardExceeded(format!(
            "direct switching enumeration supports 1 <= n <= 9, got {n}"
        )));
    }
    opts.run(|| switching_keys_direct(n))
}

/// Switching classes of order n, counted as even graphs (Burnside).
pub fn count_switching_classes_burnside(n: usize) -> u64 {
    count_even_graphs(n)
        .try_into()
        .expect("count fits in u64 for supported orders")
}

pub fn count_switching_classes(n: usize, opts: &EnumOptions) -> Result<CountReport> {
    let start = Instant::now();
    opts.guard("switching classes", n, DEFAULT_SWITCHING_LIMIT, 40)?;
    let mut report = CountReport::empty(n);
    let count = if n <= 8 {
        switching_class_keys_direct(n, opts)?.len() as u64
    } else {
        count_switching_classes_burnside(n)
    };
    report.switching_classes = Some(count);
    report.runtime_secs = start.elapsed().as_secs_f64();
    Ok(report)
}

pub fn count_charpolys(n: usize, opts: &EnumOptions) -> Result<CountReport> {
    let start = Instant::now();
    if n > 8 && !opts.extended {
        return Err(Error::GuardExceeded(format!(
            "characteristic polynomials: order {n} exceeds the default limit 8; pass --extended"
        )));
    }
    let keys = switching_class_keys(n, opts)?;
    let mut report = CountReport::empty(n);
    report.switching_classes = Some(keys.len() as u64);
    report.distinct_charpolys = Some(opts.run(|| distinct_charpolys(&keys))? as u64);
    report.runtime_secs = start.elapsed().as_secs_f64();
    Ok(report)
}

/// Genus → number of normalized permutations of that spindle-genus.
pub fn genus_histogram(n: usize, opts: &EnumOptions) -> Result<BTreeMap<usize, u64>> {
    opts.guard("genus histogram", n, DEFAULT_GENUS_LIMIT, 20)?;
    let total = normalized_count(n);
    let ranges = perms::split_ranges(total, 256);
    let parts: Vec<BTreeMap<usize, u64>> = opts.run(|| {
        ranges
            .par_iter()
            .map(|&(a, b)| {
                let mut h = BTreeMap::new();
                perms::for_each_normalized(n, a, b, |_, p| {
                    *h.entry(spindle_genus(p)).or_insert(0) += 1;
                });
                h
            })
            .collect()
    })?;
    let mut hist = BTreeMap::new();
    for h in parts {
        for (g, c) in h {
            *hist.entry(g).or_insert(0) += c;
        }
    }
    Ok(hist)
}

pub fn genus_report(n: usize, opts: &EnumOptions) -> Result<CountReport> {
    let start = Instant::now();
    let mut report = CountReport::empty(n);
    report.genus_histogram = Some(genus_histogram(n, opts)?);
    report.runtime_secs = start.elapsed().as_secs_f64();
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Census {
    pub with_spindle: u64,
    pub without: u64,
    /// Every witness passed `verify_found`.
    pub verified: bool,
    /// Every witness's class is among the spindle keys.
    pub consistent_with_spindles: bool,
}

/// Runs detection on one representative per switching class.
pub fn spindle_structure_census(n: usize, opts: &EnumOptions) -> Result<(Census, Vec<(CanonKey, DetectResult)>)> {
    if n > 8 && !opts.extended {
        return Err(Error::GuardExceeded(format!(
            "census: order {n} exceeds the default limit 8; pass --extended"
        )));
    }
    let keys: Vec<CanonKey> = switching_class_keys(n, opts)?.into_iter().collect();
    let spindles = spindle_table(n, opts)?;
    let results: Vec<(CanonKey, DetectResult, bool)> = opts.run(|| {
        keys.par_iter()
            .map(|k| {
                let x = k.matrix();
                let r = detect(&x);
                let ok = !r.is_found() || verify_found(&x, &r);
                (k.clone(), r, ok)
            })
            .collect()
    })?;
    let with = results.iter().filter(|(_, r, _)| r.is_found()).count() as u64;
    let verified = results.iter().all(|(_, _, ok)| *ok);
    let consistent = results.iter().all(|(k, r, _)| match r {
        DetectResult::Found { sigma, .. } => {
            spindles.contains(k) && canon(&LinkMatrix::from_spindle(sigma)) == *k
        }
        DetectResult::NoSpindle => !spindles.contains(k),
    }) && with == spindles.len() as u64;
    let census = Census {
        with_spindle: with,
        without: results.len() as u64 - with,
        verified,
        consistent_with_spindles: consistent,
    };
    Ok((census, results.into_iter().map(|(k, r, _)| (k, r)).collect()))
}

pub fn census_report(n: usize, opts: &EnumOptions) -> Result<CountReport> {
    let start = Instant::now();
    let (census, _) = spindle_structure_census(n, opts)?;
    let mut report = CountReport::empty(n);
    report.switching_classes = Some(census.with_spindle + census.without);
    report.spindle_classes = Some(census.with_spindle);
    report.census = Some(census);
    report.runtime_secs = start.elapsed().as_secs_f64();
    Ok(report)
}

/// Keys of exceptional spindles among the normalized permutations.
pub fn exceptional_classes(n: usize) -> Result<BTreeSet<CanonKey>> {
    if !(4..=9).contains(&n) {
        return Err(Error::OutOfRange(format!(
            "exceptional scan supports 4 <= n <= 9, got {n}"
        )));
    }
    let mut keys = BTreeSet::new();
    let mut err = None;
    perms::for_each_normalized(n, 0, normalized_count(n), |_, p| match p.is_exceptional() {
        Ok(true) => {
            keys.insert(canon(&LinkMatrix::from_spindle(p)));
        }
        Ok(false) => {}
        Err(e) => err = Some(e),
    });
    match err {
        Some(e) => Err(e),
        None => Ok(keys),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_spindle_tables() {
        let opts = EnumOptions::default();
        let got: Vec<usize> = (1..=5).map(|n| spindle_table(n, &opts).unwrap().len()).collect();
        assert_eq!(got, vec![1, 1, 2, 3, 7]);
    }

    #[test]
    fn guard_rejects_large_orders() {
        let opts = EnumOptions::default();
        assert!(matches!(spindle_table(12, &opts), Err(Error::GuardExceeded(_))));
        assert!(matches!(spindle_table(0, &opts), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn representatives_are_least() {
        let t = spindle_table(4, &EnumOptions::default()).unwrap();
        for (k, p) in t.representatives() {
            assert_eq!(canon(&LinkMatrix::from_spindle(&p)), k);
        }
        let reps: Vec<String> = t.representatives().values().map(|p| p.to_string()).collect();
        assert!(reps.contains(&"1 2 3 4".to_string()));
    }

    #[test]
    fn checkpoints_resume() {
        let dir = std::env::temp_dir().join(format!("skewlines-ckpt-{}", std::process::id()));
        let _ = fs::remove_dir_all(&dir);
        let opts = EnumOptions {
            checkpoint_dir: Some(dir.clone()),
            ..Default::default()
        };
        let first = spindle_table(6, &opts).unwrap();
        let files = fs::read_dir(&dir).unwrap().count();
        assert_eq!(files, 20);
        let again = spindle_table(6, &opts).unwrap();
        assert_eq!(first.classes, again.classes);
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn small_genus_rows() {
        let opts = EnumOptions::default();
        let h = genus_histogram(5, &opts).unwrap();
        assert_eq!(h.values().sum::<u64>(), 24);
        assert_eq!(h.get(&0), Some(&1));
    }
}
