//! Command-line front end for the class-counting engine.
//!
//! Exit codes are a stable contract: 0 on success, 1 on a verified mismatch
//! or internal invariant failure, 2 on invalid input or a budget refusal.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use kuni::cache::CacheDir;
use kuni::combinatorics::{Composition, Partition};
use kuni::counting::{k_unipotent, CountResult};
use kuni::green::{green_polynomial, tables_cached};
use kuni::oracle::{burnside_count, commuting_variety_count, OracleScene, DEFAULT_BUDGET};
use kuni::selftest::{run_all, SelftestConfig, SuiteStatus};
use kuni::table1::Table1Corpus;
use kuni::Error;

#[derive(Parser)]
#[command(
    name = "kuni",
    version,
    about = "Exact class counts: the number of U-conjugacy classes on the unipotent set of GL_n(q), as a polynomial in q"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CacheArg {
    /// Cache directory for the character/Kostka tables
    /// (default: $KUNI_CACHE_DIR, then the user cache directory).
    #[arg(long, value_name = "DIR")]
    cache_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute k(U, G_uni) for the parabolic with the given Levi block sizes.
    Compute {
        /// Rank of the general linear group.
        #[arg(long)]
        n: u32,
        /// Levi block sizes, e.g. 1,1,1 for the Borel case.
        #[arg(long, value_name = "a,b,c")]
        levi: String,
        /// Emit the full JSON record instead of the polynomial text.
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        /// Emit one CSV record (n, levi, degree, coeffs).
        #[arg(long)]
        csv: bool,
        #[command(flatten)]
        cache: CacheArg,
    },
    /// Recompute the published Borel-case polynomials and diff them.
    Table {
        /// Largest n to check (rows exist for 2 ≤ n ≤ 10).
        #[arg(long = "max-n", value_name = "N")]
        max_n: u32,
        #[command(flatten)]
        cache: CacheArg,
    },
    /// Compare the symbolic count against brute-force enumeration.
    Verify {
        #[arg(long)]
        n: u32,
        #[arg(long, value_name = "a,b,c")]
        levi: String,
        /// Primes to verify at, e.g. 2,3,5.
        #[arg(long, value_name = "p,q,r")]
        primes: String,
        /// Enumeration budget (matrices scanned per scene).
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        #[command(flatten)]
        cache: CacheArg,
    },
    /// Print the Green polynomial Q^λ_ρ(q).
    Green {
        /// Jordan type λ, comma-joined parts.
        #[arg(long, value_name = "parts")]
        lambda: String,
        /// Cycle type ρ, comma-joined parts.
        #[arg(long, value_name = "parts")]
        rho: String,
        #[command(flatten)]
        cache: CacheArg,
    },
    /// Run every invariant suite and report pass/fail per suite.
    Selftest {
        /// Enumeration budget; oracle suites over budget are skipped.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        /// Emit the outcomes as JSON.
        #[arg(long)]
        json: bool,
    },
}

/// The JSON record emitted by `compute --json`.
#[derive(Serialize, Deserialize)]
struct ComputeRecord {
    n: u32,
    levi: Vec<u32>,
    variable: String,
    coeffs_low_to_high: Vec<String>,
    qminus1_coeffs: Vec<String>,
    qminus1_nonneg: bool,
    degree: usize,
    per_class: BTreeMap<String, PerClassRecord>,
}

#[derive(Serialize, Deserialize)]
struct PerClassRecord {
    /// f_U^G(u_λ) coefficients, low-to-high.
    f: Vec<String>,
    /// Numerator of the λ-summand (rational coefficients, low-to-high).
    term_num: Vec<String>,
    /// Denominator of the λ-summand.
    term_den: Vec<String>,
}

impl ComputeRecord {
    fn from_result(r: &CountResult) -> ComputeRecord {
        let per_class = r
            .per_class_terms
            .iter()
            .map(|(lam, term)| {
                let f = r.f_values[lam].coeff_strings();
                (
                    lam.to_compact_string(),
                    PerClassRecord {
                        f,
                        term_num: term.num().coeff_strings(),
                        term_den: term.den().coeff_strings(),
                    },
                )
            })
            .collect();
        ComputeRecord {
            n: r.n,
            levi: r.mu.parts().to_vec(),
            variable: "q".into(),
            coeffs_low_to_high: r.polynomial.coeff_strings(),
            qminus1_coeffs: r.qminus1_coeffs.iter().map(|c| c.to_string()).collect(),
            qminus1_nonneg: r.qminus1_nonneg,
            degree: r.polynomial.degree().unwrap_or(0),
            per_class,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_input_error() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn run(command: Command) -> Result<(), Error> {
    match command {
        Command::Compute { n, levi, json, csv, cache } => cmd_compute(n, &levi, json, csv, cache),
        Command::Table { max_n, cache } => cmd_table(max_n, cache),
        Command::Verify { n, levi, primes, budget, cache } => {
            cmd_verify(n, &levi, &primes, budget, cache)
        }
        Command::Green { lambda, rho, cache } => cmd_green(&lambda, &rho, cache),
        Command::Selftest { budget, json } => cmd_selftest(budget, json),
    }
}

fn parse_levi(n: u32, levi: &str) -> Result<Composition, Error> {
    let mu = Composition::parse_compact(levi)?;
    if mu.size() != n {
        return Err(Error::InvalidInput(format!(
            "--levi {levi} sums to {}, but --n is {n}",
            mu.size()
        )));
    }
    Ok(mu)
}

fn warm_tables(n: u32, cache: &CacheArg) {
    tables_cached(n, &CacheDir::resolve(cache.cache_dir.clone()));
}

fn cmd_compute(n: u32, levi: &str, json: bool, csv: bool, cache: CacheArg) -> Result<(), Error> {
    let mu = parse_levi(n, levi)?;
    warm_tables(n, &cache);
    let result = k_unipotent(n, &mu)?;
    if json {
        let record = ComputeRecord::from_result(&result);
        println!("{}", serde_json::to_string_pretty(&record).expect("serializable record"));
    } else if csv {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer
            .write_record(["n", "levi", "degree", "coeffs"])
            .and_then(|_| {
                writer.write_record([
                    n.to_string(),
                    mu.to_compact_string(),
                    result.polynomial.degree().unwrap_or(0).to_string(),
                    result.polynomial.coeff_strings().join(" "),
                ])
            })
            .map_err(|e| Error::InvalidInput(format!("csv write failed: {e}")))?;
        let bytes = writer.into_inner().expect("vec writer never fails");
        print!("{}", String::from_utf8(bytes).expect("csv output is utf-8"));
    } else {
        println!("{}", result.polynomial);
    }
    Ok(())
}

fn cmd_table(max_n: u32, cache: CacheArg) -> Result<(), Error> {
    if max_n > kuni::table1::MAX_N {
        return Err(Error::InvalidInput(format!(
            "published rows exist for n ≤ {}, got --max-n {max_n}",
            kuni::table1::MAX_N
        )));
    }
    let corpus = Table1Corpus::get();
    for n in kuni::table1::MIN_N..=max_n {
        warm_tables(n, &cache);
        let expected = corpus.row(n).expect("corpus covers 2..=10");
        let computed = k_unipotent(n, &Composition::new(vec![1; n as usize]))?.polynomial;
        if &computed == expected {
            println!("n={n}: ok ({computed})");
        } else {
            let (ec, cc) = (expected.coeffs(), computed.coeffs());
            let bad = (0..ec.len().max(cc.len()))
                .find(|&i| {
                    ec.get(i).cloned().unwrap_or_default()
                        != cc.get(i).cloned().unwrap_or_default()
                })
                .expect("some coefficient differs");
            println!(
                "n={n}: MISMATCH at q^{bad}: computed {}, published {}",
                cc.get(bad).cloned().unwrap_or_default(),
                ec.get(bad).cloned().unwrap_or_default()
            );
            return Err(Error::Mismatch(format!(
                "computed row n={n} differs from the published polynomial at q^{bad}"
            )));
        }
    }
    Ok(())
}

fn cmd_verify(n: u32, levi: &str, primes: &str, budget: u128, cache: CacheArg) -> Result<(), Error> {
    let mu = parse_levi(n, levi)?;
    let primes: Vec<u64> = primes
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<u64>()
                .map_err(|_| Error::InvalidInput(format!("bad prime {tok:?}")))
        })
        .collect::<Result<_, _>>()?;
    if primes.is_empty() {
        return Err(Error::InvalidInput("--primes must list at least one prime".into()));
    }
    warm_tables(n, &cache);
    let polynomial = k_unipotent(n, &mu)?.polynomial;
    println!("k(U, G_uni) = {polynomial}");
    for p in primes {
        let scene = OracleScene::build(n, p, &mu, budget)?;
        let brute = burnside_count(&scene)?;
        let symbolic = polynomial.eval_int(&BigInt::from(p));
        let pairs = commuting_variety_count(&scene);
        let radical_order = scene.radical().len() as u128;
        if symbolic != BigInt::from(brute) {
            println!("p={p}: symbolic {symbolic}, oracle {brute} -- MISMATCH");
            return Err(Error::Mismatch(format!(
                "symbolic value {symbolic} differs from oracle count {brute} at p={p}"
            )));
        }
        if pairs != radical_order * brute {
            println!("p={p}: commuting pairs {pairs} != |U|*k = {}", radical_order * brute);
            return Err(Error::Mismatch(format!(
                "commuting-variety identity fails at p={p}"
            )));
        }
        println!("p={p}: symbolic {symbolic} = oracle {brute}; commuting pairs {pairs} = |U|*k ok");
    }
    Ok(())
}

fn cmd_green(lambda: &str, rho: &str, cache: CacheArg) -> Result<(), Error> {
    let lambda = Partition::parse_compact(lambda)?;
    let rho = Partition::parse_compact(rho)?;
    if lambda.size() != rho.size() {
        return Err(Error::SizeMismatch(format!(
            "|λ| = {} but |ρ| = {}",
            lambda.size(),
            rho.size()
        )));
    }
    warm_tables(lambda.size(), &cache);
    println!("{}", green_polynomial(&lambda, &rho)?);
    Ok(())
}

fn cmd_selftest(budget: u128, json: bool) -> Result<(), Error> {
    let outcomes = run_all(&SelftestConfig { budget });
    if json {
        println!("{}", serde_json::to_string_pretty(&outcomes).expect("serializable outcomes"));
    } else {
        for o in &outcomes {
            let tag = match o.status {
                SuiteStatus::Pass => "PASS",
                SuiteStatus::Fail => "FAIL",
                SuiteStatus::Skipped => "SKIP",
            };
            println!("{tag} {}: {}", o.name, o.detail);
        }
    }
    let failures = outcomes.iter().filter(|o| o.status == SuiteStatus::Fail).count();
    if failures > 0 {
        return Err(Error::Mismatch(format!("{failures} selftest suite(s) failed")));
    }
    Ok(())
}
