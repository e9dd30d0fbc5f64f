//! Command-line front end: table reproduction, candidate verification,
//! constants, thresholds, the exhaustive search, the s = 4 analysis, and
//! the one-shot reproduce driver. Every command emits a JSON report with
//! an embedded manifest. Exit codes: 0 success/empty, 2 survivor found,
//! 1 operational or certification error.

use clap::{Parser, Subcommand, ValueEnum};
use num::Signed;
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;
use tightdesigns::rat::{parse_decimal, rat, Rat};
use tightdesigns::report::{self, RunManifest};
use tightdesigns::{beta0, design, hermite, refdata, s4, search, smith};

#[derive(Parser)]
#[command(name = "tightdesigns", version, about = "certified tight 2s-design nonexistence checks")]
struct Cli {
    /// plain key=value config file (thresholds and paths)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// write the JSON report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// pin the published constants
    #[default]
    Paper,
    /// use self-derived certified constants
    Certified,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Paper => "paper",
            Mode::Certified => "certified",
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Reproduce the published polynomial and zero tables
    Tables,
    /// Feasibility-check one (s, v, k) candidate
    Verify {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        v: u64,
        #[arg(long)]
        k: u64,
    },
    /// Validate or derive the (B, C) constants for one s
    Constants {
        #[arg(long)]
        s: u32,
        #[arg(long, value_enum, default_value_t)]
        mode: Mode,
    },
    /// Exclusion threshold for one s
    Beta0 {
        #[arg(long)]
        s: u32,
        #[arg(long, value_enum, default_value_t)]
        mode: Mode,
    },
    /// Exhaustive alpha scan for one s
    Search {
        #[arg(long)]
        s: u32,
        /// threshold override; defaults to the published value for s
        #[arg(long)]
        beta0: Option<String>,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long, env = report::JOBS_ENV)]
        jobs: Option<usize>,
        /// also export the integral hits as CSV
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// The s = 4 Diophantine and congruence analysis
    S4 {
        #[command(subcommand)]
        cmd: S4Cmd,
    },
    /// Drive every stage and emit a pass/fail matrix
    Reproduce {
        /// full s = 6..9 searches and the k <= 25,000 scan
        #[arg(long)]
        extended: bool,
        #[arg(long, value_enum, default_value_t)]
        mode: Mode,
        #[arg(long, env = report::JOBS_ENV)]
        jobs: Option<usize>,
    },
}

#[derive(Subcommand)]
enum S4Cmd {
    /// Derive f(k, v) and check it against the stored transcription
    Derive,
    /// Scan 9 <= k <= kmax for integer roots of f
    Scan {
        #[arg(long, default_value_t = 2500)]
        kmax: u64,
        #[arg(long, env = report::JOBS_ENV)]
        jobs: Option<usize>,
    },
    /// Congruence classes excluded modulo the given primes
    Sieve {
        #[arg(long, default_value = "7,11,13,17")]
        primes: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(1)
        }
    }
}

fn emit(out: &Option<PathBuf>, json: &str) -> tightdesigns::Result<()> {
    match out {
        Some(path) => std::fs::write(path, json)?,
        None => println!("{}", json),
    }
    Ok(())
}

fn published_beta0(s: u32) -> Option<Rat> {
    if s == 4 {
        return Some(parse_decimal(refdata::BETA_STAR_4));
    }
    refdata::BETA0_TABLE
        .iter()
        .find(|(rs, _)| *rs == s)
        .map(|(_, b)| parse_decimal(b))
}

fn config_snapshot(cfg: &BTreeMap<String, String>, extra: &[(&str, String)]) -> BTreeMap<String, String> {
    let mut out = cfg.clone();
    for (k, v) in extra {
        out.insert(k.to_string(), v.clone());
    }
    out
}

/// Constants rows for the threshold computation, per mode.
fn constants_for(
    s: u32,
    mode: Mode,
    table: &hermite::HermiteTable,
) -> tightdesigns::Result<Vec<smith::SmithConstants>> {
    match mode {
        Mode::Paper => beta0::paper_constants(s, table),
        Mode::Certified => {
            let pipe = smith::build_pipeline(s)?;
            let (b, _) = smith::published_row(s)
                .ok_or_else(|| tightdesigns::Error::BadParameters(format!("no B choice for s = {}", s)))?;
            let mut out = Vec::new();
            for i in smith::constant_indices(s) {
                let sup = smith::coeff_suprema_weighted(&pipe, i, table, &tightdesigns::rat::rat_int(b))?;
                out.push(smith::derive_constants(s, i, sup, tightdesigns::rat::rat_int(b), table));
            }
            Ok(out)
        }
    }
}

fn run(cli: Cli) -> tightdesigns::Result<ExitCode> {
    let cfg = match &cli.config {
        Some(path) => report::load_config(path)?,
        None => BTreeMap::new(),
    };
    let started = Instant::now();
    match cli.command {
        Cmd::Tables => {
            let manifest = RunManifest::new("tables", "paper", cfg.clone());
            let rep = hermite::reproduce_tables(&hermite::default_width())?;
            let ok = rep.all_ok;
            emit(&cli.out, &report::render(manifest, rep, started.elapsed().as_secs_f64())?)?;
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Cmd::Verify { s, v, k } => {
            let snapshot = config_snapshot(&cfg, &[("s", s.to_string()), ("v", v.to_string()), ("k", k.to_string())]);
            let manifest = RunManifest::new("verify", "paper", snapshot);
            let verdict = design::check_candidate(s, v, k)?;
            let passed = verdict.passed;
            emit(&cli.out, &report::render(manifest, verdict, started.elapsed().as_secs_f64())?)?;
            // a passing candidate is a mathematical survivor
            Ok(if passed { ExitCode::from(2) } else { ExitCode::SUCCESS })
        }
        Cmd::Constants { s, mode } => {
            let snapshot = config_snapshot(&cfg, &[("s", s.to_string())]);
            let manifest = RunManifest::new("constants", mode.name(), snapshot);
            let table = hermite::build_table(s, &hermite::default_width())?;
            match mode {
                Mode::Paper => {
                    let pipe = smith::build_pipeline(s)?;
                    let validation = smith::validate_paper_constants(&pipe, &table)?;
                    let ok = validation.all_ok;
                    emit(&cli.out, &report::render(manifest, validation, started.elapsed().as_secs_f64())?)?;
                    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
                }
                Mode::Certified => {
                    let rows = constants_for(s, mode, &table)?;
                    let body: Vec<BTreeMap<&str, String>> = rows
                        .iter()
                        .map(|c| {
                            BTreeMap::from([
                                ("i", c.i.to_string()),
                                ("b", tightdesigns::rat::to_decimal(&c.b, 2)),
                                ("c", tightdesigns::rat::to_decimal(&c.c, 2)),
                                ("d_lower", tightdesigns::rat::to_decimal(&c.d_lower, 6)),
                            ])
                        })
                        .collect();
                    emit(&cli.out, &report::render(manifest, body, started.elapsed().as_secs_f64())?)?;
                    Ok(ExitCode::SUCCESS)
                }
            }
        }
        Cmd::Beta0 { s, mode } => {
            let snapshot = config_snapshot(&cfg, &[("s", s.to_string())]);
            let manifest = RunManifest::new("beta0", mode.name(), snapshot);
            let table = hermite::build_table(s, &hermite::default_width())?;
            let consts = constants_for(s, mode, &table)?;
            let rep = beta0::beta0(s, &consts, &table)?;
            emit(&cli.out, &report::render(manifest, rep, started.elapsed().as_secs_f64())?)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Search { s, beta0: b0, checkpoint, jobs, csv } => {
            let b0 = match b0.as_deref().or_else(|| cfg.get("beta0").map(|x| x.as_str())) {
                Some(text) => parse_decimal(text),
                None => published_beta0(s).ok_or_else(|| {
                    tightdesigns::Error::BadParameters(format!("no published threshold for s = {}; pass --beta0", s))
                })?,
            };
            let jobs = report::resolve_jobs(jobs);
            let snapshot = config_snapshot(
                &cfg,
                &[
                    ("s", s.to_string()),
                    ("beta0", tightdesigns::rat::to_decimal(&b0, 2)),
                    ("jobs", jobs.to_string()),
                ],
            );
            let manifest = RunManifest::new("search", "paper", snapshot);
            let mut config = search::SearchConfig::new(s, b0);
            config.partitions = jobs;
            if let Some(t) = cfg.get("derivative_threshold") {
                config.derivative_threshold = parse_decimal(t);
            }
            config.checkpoint_path = checkpoint;
            let rep = search::run_search(&config)?;
            let survivors = !rep.survivors.is_empty();
            if let Some(path) = csv {
                let mut text = String::from("m,n,g,k,v\n");
                for hit in &rep.g_integral_hits {
                    let (k, v) = hit.kv.map(|(k, v)| (k.to_string(), v.to_string())).unwrap_or_default();
                    text.push_str(&format!("{},{},{},{},{}\n", hit.m, hit.n, hit.g, k, v));
                }
                std::fs::write(path, text)?;
            }
            emit(&cli.out, &report::render(manifest, rep, started.elapsed().as_secs_f64())?)?;
            Ok(if survivors { ExitCode::from(2) } else { ExitCode::SUCCESS })
        }
        Cmd::S4 { cmd } => run_s4(cmd, &cfg, &cli.out, started),
        Cmd::Reproduce { extended, mode, jobs } => run_reproduce(extended, mode, jobs, &cfg, &cli.out, started),
    }
}

fn run_s4(
    cmd: S4Cmd,
    cfg: &BTreeMap<String, String>,
    out: &Option<PathBuf>,
    started: Instant,
) -> tightdesigns::Result<ExitCode> {
    match cmd {
        S4Cmd::Derive => {
            let manifest = RunManifest::new("s4 derive", "paper", cfg.clone());
            let f = s4::derive_f()?;
            let body = BTreeMap::from([
                ("matches_stored_table", "true".to_string()),
                ("terms", f.num_terms().to_string()),
                ("deg_k", f.deg_k().to_string()),
                ("deg_v", f.deg_v().to_string()),
            ]);
            emit(out, &report::render(manifest, body, started.elapsed().as_secs_f64())?)?;
            Ok(ExitCode::SUCCESS)
        }
        S4Cmd::Scan { kmax, jobs } => {
            let jobs = report::resolve_jobs(jobs);
            init_pool(jobs);
            let snapshot = config_snapshot(cfg, &[("kmax", kmax.to_string()), ("jobs", jobs.to_string())]);
            let manifest = RunManifest::new("s4 scan", "paper", snapshot);
            let hits = s4::scan_k_range(9, kmax)?;
            let any = !hits.is_empty();
            emit(out, &report::render(manifest, hits, started.elapsed().as_secs_f64())?)?;
            Ok(if any { ExitCode::from(2) } else { ExitCode::SUCCESS })
        }
        S4Cmd::Sieve { primes } => {
            let snapshot = config_snapshot(cfg, &[("primes", primes.clone())]);
            let manifest = RunManifest::new("s4 sieve", "paper", snapshot);
            let mut body = Vec::new();
            for p in primes.split(',') {
                let p: u64 = p
                    .trim()
                    .parse()
                    .map_err(|_| tightdesigns::Error::BadParameters(format!("bad prime: {}", p)))?;
                let (ks, vs) = s4::congruence_sieve(p)?;
                body.push(BTreeMap::from([
                    ("p", serde_json::json!(p)),
                    ("excluded_k_classes", serde_json::json!(ks)),
                    ("excluded_v_classes", serde_json::json!(vs)),
                ]));
            }
            emit(out, &report::render(manifest, body, started.elapsed().as_secs_f64())?)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn init_pool(jobs: usize) {
    let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
}

#[derive(serde::Serialize)]
struct Stage {
    criterion: u32,
    name: String,
    passed: bool,
    detail: String,
    seconds: f64,
}

fn run_reproduce(
    extended: bool,
    mode: Mode,
    jobs: Option<usize>,
    cfg: &BTreeMap<String, String>,
    out: &Option<PathBuf>,
    started: Instant,
) -> tightdesigns::Result<ExitCode> {
    let jobs = report::resolve_jobs(jobs);
    init_pool(jobs);
    let snapshot = config_snapshot(
        cfg,
        &[("extended", extended.to_string()), ("jobs", jobs.to_string())],
    );
    let manifest = RunManifest::new("reproduce", mode.name(), snapshot);
    let mut stages: Vec<Stage> = Vec::new();
    let mut survivors = false;
    let push = |stages: &mut Vec<Stage>, criterion, name: &str, t: Instant, r: tightdesigns::Result<(bool, String)>| {
        let (passed, detail) = match r {
            Ok(x) => x,
            Err(e) => (false, e.to_string()),
        };
        eprintln!(
            "[{}] criterion {}: {} ({:.1}s)",
            if passed { "pass" } else { "FAIL" },
            criterion,
            name,
            t.elapsed().as_secs_f64()
        );
        stages.push(Stage {
            criterion,
            name: name.to_string(),
            passed,
            detail,
            seconds: t.elapsed().as_secs_f64(),
        });
    };

    let width = hermite::default_width();
    let mut tables: BTreeMap<u32, hermite::HermiteTable> = BTreeMap::new();
    for s in 4..=9 {
        tables.insert(s, hermite::build_table(s, &width)?);
    }

    // 1 + 2: published tables and the zero-spacing clauses
    let t = Instant::now();
    let rep = hermite::reproduce_tables(&width);
    push(&mut stages, 1, "published zero tables reproduce", t, rep.as_ref().map(|r| {
        (r.all_ok, format!("{} discrepancies (expect the one misprint)", r.discrepancies.len()))
    }).map_err(|e| tightdesigns::Error::Other(e.to_string())));
    let t = Instant::now();
    let clauses = rep.map(|r| r.xi_clauses);
    push(&mut stages, 2, "zero-spacing estimates certified", t, clauses.map(|cs| {
        (cs.iter().all(|c| c.passed), format!("{} clauses", cs.len()))
    }));

    // 3: published constants validated against certified suprema
    for s in 4..=9 {
        let t = Instant::now();
        let r = smith::build_pipeline(s)
            .and_then(|pipe| smith::validate_paper_constants(&pipe, &tables[&s]));
        push(&mut stages, 3, &format!("constants row s = {}", s), t, r.map(|v| {
            let detail = v
                .rows
                .iter()
                .map(|row| format!("C_{} bound {}", row.i, row.bound_sum))
                .collect::<Vec<_>>()
                .join(", ");
            (v.all_ok, detail)
        }));
    }

    // 4: thresholds
    let t = Instant::now();
    let r = (|| {
        let mut details = Vec::new();
        let mut ok = true;
        for s in 4..=9u32 {
            let consts = constants_for(s, mode, &tables[&s])?;
            let rep = beta0::beta0(s, &consts, &tables[&s])?;
            let published = published_beta0(s).unwrap();
            let diff = (parse_decimal(&rep.beta0) - &published).abs();
            ok &= diff <= rat(1, 100);
            if s == 4 {
                let (lo, hi) = rep.t_enclosure.clone().unwrap();
                let target = parse_decimal("9.1971905725");
                ok &= parse_decimal(&lo) <= target && target < parse_decimal(&hi) + rat(1, 1_000_000_000);
            }
            details.push(format!("s={}: {}", s, rep.beta0));
        }
        Ok((ok, details.join(", ")))
    })();
    push(&mut stages, 4, "exclusion thresholds reproduce", t, r);

    // 5: searches
    let search_sizes: &[u32] = if extended { &[5, 6, 7, 8, 9] } else { &[5] };
    for &s in search_sizes {
        let t = Instant::now();
        let r = (|| {
            let b0 = published_beta0(s).unwrap();
            let mut config = search::SearchConfig::new(s, b0);
            config.partitions = jobs;
            let rep = search::run_search(&config)?;
            Ok((rep.survivors.is_empty(), format!(
                "{} alphas, {} integral hits, {} survivors",
                rep.alphas_scanned,
                rep.g_integral_hits.len(),
                rep.survivors.len()
            )))
        })();
        if let Ok((empty, _)) = &r {
            survivors |= !empty;
        }
        push(&mut stages, 5, &format!("exhaustive search s = {}", s), t, r);
    }

    // 6: the Witt design oracle and the small-v sweep
    let t = Instant::now();
    let r = (|| {
        let w7 = design::check_candidate(2, 23, 7)?;
        let w16 = design::check_candidate(2, 23, 16)?;
        let mut ok = w7.passed && w7.intersection_numbers == vec![1, 3] && w16.passed;
        let mut others = 0u32;
        for v in 4..=30u64 {
            for k in 4..v {
                if v == k + 2 {
                    continue; // trivial: every k-set is a block
                }
                if let Ok(verdict) = design::check_candidate(2, v, k) {
                    if verdict.passed && !((v, k) == (23, 7) || (v, k) == (23, 16)) {
                        others += 1;
                    }
                }
            }
        }
        ok &= others == 0;
        Ok((ok, format!("Witt pair passes, {} unexpected survivors", others)))
    })();
    push(&mut stages, 6, "Witt design oracle", t, r);

    // 7: the s = 4 suite
    let t = Instant::now();
    let r = (|| {
        s4::derive_f()?;
        let mut ok = true;
        for (p, ks, vs) in refdata::CONGRUENCE_CLASSES {
            let (got_k, got_v) = s4::congruence_sieve(*p)?;
            ok &= got_k == *ks && got_v == *vs;
        }
        let kmax = if extended { 25_000 } else { 2_500 };
        let hits = s4::scan_k_range(9, kmax)?;
        ok &= hits.is_empty();
        Ok((ok, format!("derivation matches, sieve matches, scan to {} empty: {}", kmax, hits.is_empty())))
    })();
    push(&mut stages, 7, "s = 4 suite", t, r);

    let all_ok = stages.iter().all(|s| s.passed);
    let failed: Vec<String> = stages
        .iter()
        .filter(|s| !s.passed)
        .map(|s| format!("criterion {} ({})", s.criterion, s.name))
        .collect();
    emit(out, &report::render(manifest, &stages, started.elapsed().as_secs_f64())?)?;
    if survivors {
        eprintln!("survivors found");
        return Ok(ExitCode::from(2));
    }
    if !all_ok {
        eprintln!("failed: {}", failed.join("; "));
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}
