//! The exhaustive search: for fixed s, every admissible alpha = m/s with
//! 0 < m < 4s*beta0^2 is scanned over n = k - s for integral values of
//! the second-symmetric-function expression g_alpha(n). Integral hits
//! are then screened by the full feasibility checker.
//!
//! The scan is two-phase. While g moves by at least `derivative_threshold`
//! per step, integer n values are cheaper to enumerate (phase A); once g
//! flattens, integer g targets become sparser than integer n and the
//! loop inverts to solve g_alpha(n) = G exactly (phase B).

use crate::design::{self, DesignCandidate};
use crate::error::{Error, Result};
use crate::rat::{big, rat, rat_int, Rat};
use num::bigint::BigInt;
use num::integer::Integer;
use num::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;
use std::sync::Mutex;
use std::time::Instant;

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub s: u32,
    pub beta0: Rat,
    pub derivative_threshold: Rat,
    pub partitions: usize,
    pub checkpoint_path: Option<PathBuf>,
}

impl SearchConfig {
    pub fn new(s: u32, beta0: Rat) -> Self {
        SearchConfig {
            s,
            beta0,
            derivative_threshold: rat(1, 2),
            partitions: 0,
            checkpoint_path: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct AlphaTask {
    pub s: u32,
    pub m: u64,
    pub alpha: Rat,
    pub n_min: i64,
    pub n_max: i64,
}

/// One n with g_alpha(n) integral. `kv` is present only when the point
/// count v is itself an integer.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Hit {
    pub m: u64,
    pub n: i64,
    pub g: i64,
    pub kv: Option<(u64, u64)>,
}

#[derive(Debug, serde::Serialize)]
pub struct SearchReport {
    pub s: u32,
    pub beta0: String,
    pub alphas_scanned: u64,
    pub g_integral_hits: Vec<Hit>,
    pub survivors: Vec<DesignCandidate>,
    pub wall_time_seconds: f64,
}

/// g_alpha(n) = C(s,2) * alpha^2 * (1 + (2n - alpha + 2)/(n^2 + n + alpha)).
pub fn g_alpha(s: u32, alpha: &Rat, n: i64) -> Rat {
    let c2 = rat_int((s as i64) * (s as i64 - 1) / 2);
    let nn = rat_int(n);
    // (n^2 + n + alpha) + (2n - alpha + 2) = n^2 + 3n + 2
    let top = rat_int(n * n + 3 * n + 2);
    let bot = &nn * &nn + &nn + alpha;
    c2 * alpha * alpha * top / bot
}

fn c2_of(s: u32) -> i64 {
    (s as i64) * (s as i64 - 1) / 2
}

/// Build the scan range for alpha = m/s: n_min = max(s, floor(2 alpha)+1),
/// n_max = the least n with g_alpha(n) <= floor(C(s,2) alpha^2) + 1,
/// located by exact binary search on the strictly decreasing g.
pub fn make_task(s: u32, m: u64, _beta0: &Rat) -> AlphaTask {
    let alpha = Rat::new(big(m as i64), big(s as i64));
    let two_alpha_floor = (2 * m as i64).div_euclid(s as i64);
    let n_min = (s as i64).max(two_alpha_floor + 1);
    let c = rat_int(c2_of(s)) * &alpha * &alpha;
    let target = Rat::from_integer(c.floor().to_integer() + BigInt::one());
    let n_max = if g_alpha(s, &alpha, n_min) <= target {
        n_min
    } else {
        // bracket then bisect
        let mut hi = n_min.max(1);
        while g_alpha(s, &alpha, hi) > target {
            hi = hi.checked_mul(2).expect("n_max bracket overflow");
        }
        let mut lo = n_min;
        while lo + 1 < hi {
            let mid = lo + (hi - lo) / 2;
            if g_alpha(s, &alpha, mid) > target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        hi
    };
    AlphaTask { s, m, alpha, n_min, n_max }
}

/// Least n in [n_min, n_max] where the per-step drop of g falls below
/// the threshold; n_max + 1 when it never does.
fn phase_boundary(task: &AlphaTask, threshold: &Rat) -> i64 {
    let flat = |n: i64| {
        g_alpha(task.s, &task.alpha, n) - g_alpha(task.s, &task.alpha, n + 1) < *threshold
    };
    if !flat(task.n_max) {
        return task.n_max + 1;
    }
    if flat(task.n_min) {
        return task.n_min;
    }
    let (mut lo, mut hi) = (task.n_min, task.n_max);
    while lo + 1 < hi {
        let mid = lo + (hi - lo) / 2;
        if flat(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Integer form: g_alpha(m/s, n) = C2 m^2 (n+1)(n+2) / (s (s n (n+1) + m)).
/// Integrality and the value itself reduce to big-integer divisibility;
/// an i128 fast path covers the desk-scale ranges.
fn g_integer_value(s: u32, m: u64, n: i64) -> Option<i64> {
    let c2 = c2_of(s) as i128;
    let (m, s, n) = (m as i128, s as i128, n as i128);
    let num = c2
        .checked_mul(m * m)
        .and_then(|x| x.checked_mul(n + 1))
        .and_then(|x| x.checked_mul(n + 2));
    // den = s * (s*n*(n+1) + m)
    let inner = s.checked_mul(n).and_then(|x| x.checked_mul(n + 1)).and_then(|x| x.checked_add(m));
    match (num, inner.and_then(|x| x.checked_mul(s))) {
        (Some(num), Some(den)) => {
            if num % den == 0 {
                (num / den).to_i64()
            } else {
                None
            }
        }
        _ => {
            let num = BigInt::from(c2) * BigInt::from(m) * BigInt::from(m)
                * BigInt::from(n + 1)
                * BigInt::from(n + 2);
            let den = BigInt::from(s) * (BigInt::from(s) * BigInt::from(n) * BigInt::from(n + 1) + BigInt::from(m));
            let (q, r) = num.div_rem(&den);
            if r.is_zero() {
                q.to_i64()
            } else {
                None
            }
        }
    }
}

/// v = s n (n+1) / m + 2s - 1 when integral.
fn v_of(s: u32, m: u64, n: i64) -> Option<u64> {
    let prod = BigInt::from(s) * BigInt::from(n) * BigInt::from(n + 1);
    let (q, r) = prod.div_rem(&BigInt::from(m));
    if r.is_zero() {
        (q + BigInt::from(2 * s as i64 - 1)).to_u64()
    } else {
        None
    }
}

fn isqrt(x: &BigInt) -> Option<BigInt> {
    if x.is_negative() {
        return None;
    }
    let r = x.sqrt();
    if &(&r * &r) == x {
        Some(r)
    } else {
        None
    }
}

/// All integer-g hits for one alpha task.
pub fn scan_alpha(task: &AlphaTask, threshold: &Rat) -> Vec<Hit> {
    let boundary = phase_boundary(task, threshold);
    let mut hits = Vec::new();
    // phase A: direct n loop
    for n in task.n_min..boundary {
        if let Some(g) = g_integer_value(task.s, task.m, n) {
            hits.push(Hit { m: task.m, n, g, kv: v_of(task.s, task.m, n).map(|v| (n as u64 + task.s as u64, v)) });
        }
    }
    // phase B: integer g targets, solved exactly for n
    if boundary <= task.n_max {
        let alpha = &task.alpha;
        let c = rat_int(c2_of(task.s)) * alpha * alpha;
        let g_lo: BigInt = c.floor().to_integer() + 1;
        let g_hi: BigInt = g_alpha(task.s, alpha, boundary).floor().to_integer();
        let c2m2 = BigInt::from(c2_of(task.s)) * BigInt::from(task.m) * BigInt::from(task.m);
        let s_big = BigInt::from(task.s);
        let mut g = g_hi.clone();
        while g >= g_lo {
            // (C2 m^2 - G s^2) n^2 + (3 C2 m^2 - G s^2) n + (2 C2 m^2 - G s m) = 0
            let gs2 = &g * &s_big * &s_big;
            let a = &c2m2 - &gs2;
            let b = BigInt::from(3) * &c2m2 - &gs2;
            let cc = BigInt::from(2) * &c2m2 - &g * &s_big * BigInt::from(task.m);
            let mut roots = Vec::new();
            if a.is_zero() {
                if !b.is_zero() {
                    let (q, r) = (-&cc).div_rem(&b);
                    if r.is_zero() {
                        roots.push(q);
                    }
                }
            } else {
                let disc = &b * &b - BigInt::from(4) * &a * &cc;
                if let Some(sq) = isqrt(&disc) {
                    for numer in [-&b + &sq, -&b - &sq] {
                        let (q, r) = numer.div_rem(&(BigInt::from(2) * &a));
                        if r.is_zero() {
                            roots.push(q);
                        }
                    }
                }
            }
            for nb in roots {
                if let Some(n) = nb.to_i64() {
                    if n >= boundary && n >= task.n_min {
                        let gv = g.to_i64().expect("g fits i64");
                        let hit = Hit {
                            m: task.m,
                            n,
                            g: gv,
                            kv: v_of(task.s, task.m, n).map(|v| (n as u64 + task.s as u64, v)),
                        };
                        if !hits.contains(&hit) {
                            hits.push(hit);
                        }
                    }
                }
            }
            g -= 1;
        }
    }
    hits.sort_by_key(|h| h.n);
    hits
}

/// Reference scan: brute-force divisibility test on every n in range.
/// Exists for the phase-equivalence property; not used by run_search.
pub fn scan_alpha_bruteforce(task: &AlphaTask) -> Vec<Hit> {
    let mut hits = Vec::new();
    for n in task.n_min..=task.n_max {
        if let Some(g) = g_integer_value(task.s, task.m, n) {
            hits.push(Hit { m: task.m, n, g, kv: v_of(task.s, task.m, n).map(|v| (n as u64 + task.s as u64, v)) });
        }
    }
    hits
}

struct Checkpoint {
    done: BTreeMap<u64, Vec<Hit>>,
}

fn load_checkpoint(path: &PathBuf, s: u32) -> Result<Checkpoint> {
    let mut done = BTreeMap::new();
    let mut pending: BTreeMap<u64, Vec<Hit>> = BTreeMap::new();
    if !path.exists() {
        return Ok(Checkpoint { done });
    }
    let f = File::open(path)?;
    for (idx, line) in BufReader::new(f).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let bad = || Error::Checkpoint { line: idx + 1, content: line.clone() };
        let mut parts = line.split_whitespace();
        let frac = parts.next().ok_or_else(bad)?;
        let (m_str, s_str) = frac.split_once('/').ok_or_else(bad)?;
        let m: u64 = m_str.parse().map_err(|_| bad())?;
        let line_s: u32 = s_str.parse().map_err(|_| bad())?;
        if line_s != s {
            return Err(bad());
        }
        match parts.next() {
            Some("done") => {
                done.insert(m, pending.remove(&m).unwrap_or_default());
            }
            Some("hit") => {
                let n: i64 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
                let g: i64 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
                let kv = match (parts.next(), parts.next()) {
                    (Some(k), Some(v)) => Some((
                        k.parse().map_err(|_| bad())?,
                        v.parse().map_err(|_| bad())?,
                    )),
                    (None, None) => None,
                    _ => return Err(bad()),
                };
                pending.entry(m).or_default().push(Hit { m, n, g, kv });
            }
            _ => return Err(bad()),
        }
    }
    // hit lines without a done marker belong to an interrupted task and
    // are rescanned from scratch
    Ok(Checkpoint { done })
}

/// Largest m with m/s < 4 * beta0^2, i.e. the alpha enumeration bound.
pub fn m_limit(s: u32, beta0: &Rat) -> u64 {
    let bound = rat_int(4 * s as i64) * beta0 * beta0;
    let fl = bound.floor().to_integer();
    let limit = if Rat::from_integer(fl.clone()) == bound { fl - 1 } else { fl };
    limit.to_u64().expect("alpha bound fits u64")
}

pub fn run_search(config: &SearchConfig) -> Result<SearchReport> {
    let start = Instant::now();
    let s = config.s;
    let limit = m_limit(s, &config.beta0);
    let checkpoint = match &config.checkpoint_path {
        Some(p) => load_checkpoint(p, s)?,
        None => Checkpoint { done: BTreeMap::new() },
    };
    let writer = match &config.checkpoint_path {
        Some(p) => Some(Mutex::new((
            OpenOptions::new().create(true).append(true).open(p)?,
            0usize,
        ))),
        None => None,
    };
    let pending: Vec<u64> = (1..=limit).filter(|m| !checkpoint.done.contains_key(m)).collect();
    let scan_one = |m: &u64| -> (u64, Vec<Hit>) {
        let task = make_task(s, *m, &config.beta0);
        let hits = scan_alpha(&task, &config.derivative_threshold);
        if let Some(w) = &writer {
            let mut guard = w.lock().unwrap();
            let (file, count) = &mut *guard;
            for h in &hits {
                match h.kv {
                    Some((k, v)) => writeln!(file, "{}/{} hit {} {} {} {}", m, s, h.n, h.g, k, v),
                    None => writeln!(file, "{}/{} hit {} {}", m, s, h.n, h.g),
                }
                .expect("checkpoint write");
            }
            writeln!(file, "{}/{} done", m, s).expect("checkpoint write");
            *count += 1;
            if *count % 1000 == 0 {
                file.sync_data().expect("checkpoint fsync");
            }
        }
        (*m, hits)
    };
    let mut results: Vec<(u64, Vec<Hit>)> = if config.partitions == 1 {
        pending.iter().map(scan_one).collect()
    } else if config.partitions > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.partitions)
            .build()
            .map_err(|e| Error::Other(e.to_string()))?;
        pool.install(|| pending.par_iter().map(scan_one).collect())
    } else {
        pending.par_iter().map(scan_one).collect()
    };
    if let Some(w) = &writer {
        w.lock().unwrap().0.sync_data()?;
    }
    results.extend(checkpoint.done.into_iter());
    results.sort_by_key(|(m, _)| *m);
    let mut g_integral_hits = Vec::new();
    let mut survivors = Vec::new();
    for (_, hits) in results {
        for h in hits {
            if let Some((k, v)) = h.kv {
                if let Ok(verdict) = design::check_candidate(s, v, k) {
                    if verdict.passed {
                        survivors.push(design::derive_params(s, v, k)?);
                    }
                }
            }
            g_integral_hits.push(h);
        }
    }
    Ok(SearchReport {
        s,
        beta0: config.beta0.to_string(),
        alphas_scanned: limit,
        g_integral_hits,
        survivors,
        wall_time_seconds: start.elapsed().as_secs_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn g_alpha_example() {
        assert_eq!(g_alpha(5, &rat_int(1), 11), rat(1560, 133));
    }

    #[test]
    fn g_alpha_witt_point() {
        // s=2, alpha=3/2, n=5: must equal e_2 of the zeros {1, 3}
        assert_eq!(g_alpha(2, &rat(3, 2), 5), rat_int(3));
        assert_eq!(g_integer_value(2, 3, 5), Some(3));
    }

    #[test]
    fn g_alpha_decreasing() {
        let alpha = rat_int(1);
        for n in 3..2000i64 {
            assert!(g_alpha(5, &alpha, n) > g_alpha(5, &alpha, n + 1));
        }
    }

    #[test]
    fn task_bounds() {
        let t = make_task(5, 5, &rat_int(10));
        assert_eq!(t.n_min, 5);
        let c2a2 = rat_int(10); // C(5,2)*1^2
        let target = &c2a2 + rat_int(1);
        assert!(g_alpha(5, &t.alpha, t.n_max) <= target);
        if t.n_max > t.n_min {
            assert!(g_alpha(5, &t.alpha, t.n_max - 1) > target);
        }
    }

    #[test]
    fn integer_value_matches_rational() {
        for s in [2u32, 5, 7] {
            for m in [1u64, 3, 17] {
                let alpha = Rat::new(big(m as i64), big(s as i64));
                for n in (2 * s as i64)..(2 * s as i64 + 200) {
                    let exact = g_alpha(s, &alpha, n);
                    match g_integer_value(s, m, n) {
                        Some(g) => assert_eq!(exact, rat_int(g)),
                        None => assert!(!crate::rat::is_integer(&exact)),
                    }
                }
            }
        }
    }

    #[test]
    fn phase_equivalence_random() {
        let mut rng = StdRng::seed_from_u64(0x7161);
        for _ in 0..200 {
            let s = rng.gen_range(2u32..=9);
            let m = rng.gen_range(1u64..=600);
            let task = make_task(s, m, &rat_int(1));
            let fast = scan_alpha(&task, &rat(1, 2));
            let brute = scan_alpha_bruteforce(&task);
            assert_eq!(fast, brute, "s={}, m={}", s, m);
        }
    }

    #[test]
    fn m_limit_boundary() {
        // 4*s*beta0^2 exactly integral: the bound is strict
        assert_eq!(m_limit(5, &rat_int(1)), 19);
        assert_eq!(m_limit(5, &rat(5, 2)), 124);
    }

    #[test]
    fn tiny_search_no_survivors() {
        let config = SearchConfig::new(5, rat_int(3));
        let report = run_search(&config).unwrap();
        assert!(report.survivors.is_empty());
        assert_eq!(report.alphas_scanned, 179);
    }

    #[test]
    fn witt_found_by_search() {
        // sanity that the pipeline does surface genuine designs: s=2
        // with beta0 covering alpha=3/2 must rediscover (v,k)=(23,7)
        let config = SearchConfig::new(2, rat_int(2));
        let report = run_search(&config).unwrap();
        assert!(report
            .survivors
            .iter()
            .any(|c| c.v == 23 && c.k == 7));
    }

    #[test]
    fn checkpoint_resume_identical() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ckpt.txt");
        let full = run_search(&SearchConfig::new(2, rat_int(2))).unwrap();
        // first pass: only scan half the tasks by pre-marking the rest done
        // with a synthetic partial run (simulate a kill by truncating)
        let mut cfg = SearchConfig::new(2, rat_int(2));
        cfg.checkpoint_path = Some(path.clone());
        cfg.partitions = 1;
        let _ = run_search(&cfg).unwrap();
        // truncate the checkpoint to simulate an interrupted run
        let text = std::fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        let half = lines.len() / 2;
        std::fs::write(&path, format!("{}\n", lines[..half].join("\n"))).unwrap();
        let resumed = run_search(&cfg).unwrap();
        assert_eq!(
            serde_json::to_string(&resumed.g_integral_hits).unwrap(),
            serde_json::to_string(&full.g_integral_hits).unwrap()
        );
        assert_eq!(resumed.survivors.len(), full.survivors.len());
    }

    #[test]
    fn corrupted_checkpoint_reported() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.txt");
        std::fs::write(&path, "3/2 done\nnot a line\n").unwrap();
        let mut cfg = SearchConfig::new(2, rat_int(2));
        cfg.checkpoint_path = Some(path);
        match run_search(&cfg) {
            Err(Error::Checkpoint { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected checkpoint error, got {:?}", other.map(|r| r.alphas_scanned)),
        }
    }

    #[test]
    fn t_exceeds_two_for_scanned_candidates() {
        for m in 1..40u64 {
            let task = make_task(3, m, &rat_int(2));
            // n_min > 2 alpha ensures t = n/alpha > 2 throughout
            assert!(rat_int(task.n_min) > rat_int(2) * &task.alpha);
        }
    }
}
