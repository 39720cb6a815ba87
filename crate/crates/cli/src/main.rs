//! `expdio` — exact solvers, searches, and valuation tools for exponential
//! Diophantine equations in powers of 2 and 3.
//!
//! Exit codes: 0 success; 1 domain-level negative (e.g. a classified tuple
//! that does not satisfy the equation); 2 usage error; 3 fast/naive
//! valuation disagreement; 4 verification-suite failure.

mod output;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, ensure, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use expdio::suites::{self, SuiteOutcome};
use expdio::{
    nat_pow, scan_conjecture, search_case, search_master, solve_prop6, solve_prop9, valuation,
    valuation_pow_minus_one, valuation_pow_plus_one, CaseId, CaseInstance, ExponentTuple, Natural,
    SearchConfig,
};

use output::{render_csv, render_json, Manifest, Record, Table};

#[derive(Parser)]
#[command(
    name = "expdio",
    version,
    about = "Exact solvers, searches and valuation tools for exponential Diophantine equations in powers of 2 and 3"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seed recorded in the run manifest (reserved for randomized runs;
    /// every current command is deterministic).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Write results, preceded by the run manifest, to this file instead of
    /// stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Output format for the tabular commands (solve, search, conjecture).
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Worker threads for search and conjecture. Output bytes are identical
    /// for every value.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Compute v_base(a^n ± 1) by the residue-probing path, the naive
    /// exact-division path, or both.
    Valuation {
        #[arg(long)]
        base: u64,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = Sign::Minus)]
        sign: Sign,
        #[arg(long, value_enum, default_value_t = Mode::Fast)]
        mode: Mode,
    },
    /// Enumerate all solutions of one of the two cofactor equations within
    /// bounds.
    Solve {
        #[command(subcommand)]
        equation: Equation,
    },
    /// Enumerate solutions of a reduced case equation, or of the master
    /// equation (--case master), with every exponent up to --bound.
    Search {
        /// 1plus1, 1_3d, 3b3d, 1_2c, identity, 3b2c_mixed, 3b2c_split, or
        /// master.
        #[arg(long)]
        case: String,
        #[arg(long, default_value_t = 12)]
        bound: u64,
    },
    /// Normalize a tuple "a,b,c,d,e,f,g,h", report its zero pattern and
    /// case classification. Exits 1 if the tuple does not satisfy the
    /// equation.
    Classify {
        #[arg(long)]
        tuple: String,
    },
    /// Scan even bases m for violations of
    /// (m^(v_m((m-1)^n - 1)))^2 <= (m-1)^n - 1 and report, per base, the
    /// violating n and the least N beyond which none were observed.
    Conjecture {
        #[arg(long, default_value_t = 4)]
        m_min: u64,
        #[arg(long, default_value_t = 20)]
        m_max: u64,
        #[arg(long, default_value_t = 10_000)]
        n_max: u64,
    },
    /// Run the valuation verification suites against the naive oracle.
    /// Exits 4 if any suite finds a counterexample.
    VerifyLemmas {
        /// Run a single suite by name (see `expdio verify-lemmas --help`);
        /// default is all of: cyclotomic_divisibility, v2_pow3_minus,
        /// v2_pow3_plus, v3_pow2_minus, v3_pow2_plus, vm_pow_minus,
        /// even_base_square.
        #[arg(long)]
        lemma: Option<String>,
        /// Override the base list of the vm_pow_minus suite (odd bases
        /// only; the formula it checks is false at even bases).
        #[arg(long, value_delimiter = ',')]
        odd_bases: Option<Vec<u64>>,
    },
}

#[derive(Subcommand)]
enum Equation {
    /// 3^k (2^m - 1) = 2^n - 1 over positive integers.
    Prop6 {
        #[arg(long, default_value_t = 10)]
        k_max: u64,
        #[arg(long, default_value_t = 60)]
        m_max: u64,
        #[arg(long, default_value_t = 60)]
        n_max: u64,
    },
    /// (2n+1)^k ((2n)^p - 1) = (2n)^q - 1 over positive integers.
    Prop9 {
        #[arg(long, default_value_t = 8)]
        k_max: u64,
        #[arg(long, default_value_t = 40)]
        p_max: u64,
        #[arg(long, default_value_t = 40)]
        q_max: u64,
        #[arg(long, default_value_t = 12)]
        n_max: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Sign {
    Minus,
    Plus,
}

impl Sign {
    fn as_str(self) -> &'static str {
        match self {
            Sign::Minus => "minus",
            Sign::Plus => "plus",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Fast,
    Naive,
    Both,
}

impl Mode {
    fn as_str(self) -> &'static str {
        match self {
            Mode::Fast => "fast",
            Mode::Naive => "naive",
            Mode::Both => "both",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Where and how a command's results land. Tabular data goes to stdout, or
/// to --out with the manifest embedded; report-style commands print their
/// own text and only write records when --out is given.
struct Sink {
    out: Option<PathBuf>,
    format: Format,
}

impl Sink {
    fn emit_tabular(&self, manifest: &Manifest, records: &[Record], table: &Table) -> Result<()> {
        match (&self.out, self.format) {
            (Some(path), Format::Json) => fs::write(path, render_json(Some(manifest), records))
                .with_context(|| format!("writing {}", path.display()))?,
            (Some(path), Format::Csv) => fs::write(path, render_csv(Some(manifest), table))
                .with_context(|| format!("writing {}", path.display()))?,
            (None, Format::Json) => print!("{}", render_json(None, records)),
            (None, Format::Csv) => print!("{}", render_csv(None, table)),
        }
        Ok(())
    }

    fn emit_report(&self, manifest: &Manifest, records: &[Record]) -> Result<()> {
        if let Some(path) = &self.out {
            fs::write(path, render_json(Some(manifest), records))
                .with_context(|| format!("writing {}", path.display()))?;
        }
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let outcome = run(cli);
    eprintln!("# wall_time_ms={}", started.elapsed().as_millis());
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let sink = Sink {
        out: cli.out,
        format: cli.format,
    };
    match cli.command {
        Command::Valuation {
            base,
            a,
            n,
            sign,
            mode,
        } => cmd_valuation(&sink, cli.seed, base, a, n, sign, mode),
        Command::Solve { equation } => cmd_solve(&sink, cli.seed, equation),
        Command::Search { case, bound } => cmd_search(&sink, cli.seed, &case, bound, cli.workers),
        Command::Classify { tuple } => cmd_classify(&sink, cli.seed, &tuple),
        Command::Conjecture {
            m_min,
            m_max,
            n_max,
        } => cmd_conjecture(&sink, cli.seed, m_min, m_max, n_max, cli.workers),
        Command::VerifyLemmas { lemma, odd_bases } => {
            cmd_verify_lemmas(&sink, cli.seed, lemma.as_deref(), odd_bases.as_deref())
        }
    }
}

fn cmd_valuation(
    sink: &Sink,
    seed: u64,
    base: u64,
    a: u64,
    n: u64,
    sign: Sign,
    mode: Mode,
) -> Result<ExitCode> {
    ensure!(base >= 2, "--base must be at least 2");
    ensure!(a >= 2, "--a must be at least 2");
    ensure!(n >= 1, "--n must be at least 1");
    let fast = match mode {
        Mode::Fast | Mode::Both => Some(match sign {
            Sign::Minus => valuation_pow_minus_one(base, a, n).exponent,
            Sign::Plus => valuation_pow_plus_one(base, a, n).exponent,
        }),
        Mode::Naive => None,
    };
    let naive = match mode {
        Mode::Naive | Mode::Both => {
            let power = nat_pow(&Natural::from(a), n);
            let value = match sign {
                Sign::Minus => power - 1u32,
                Sign::Plus => power + 1u32,
            };
            Some(valuation(base, &value).expect("a^n ± 1 >= 1"))
        }
        Mode::Fast => None,
    };
    if let (Some(fast), Some(naive)) = (fast, naive) {
        if fast != naive {
            eprintln!("fast/naive disagreement: fast={fast} naive={naive}");
            return Ok(ExitCode::from(3));
        }
    }
    let value = fast.or(naive).expect("at least one path ran");
    println!("{value}");

    let manifest = Manifest::new("valuation", seed)
        .param("base", base)
        .param("a", a)
        .param("n", n)
        .param("sign", sign.as_str())
        .param("mode", mode.as_str());
    let mut record = Record::new("valuation")
        .num("base", base)
        .num("a", a)
        .num("n", n)
        .text("sign", sign.as_str())
        .text("mode", mode.as_str())
        .num("value", value);
    if let Some(fast) = fast {
        record = record.num("fast", fast);
    }
    if let Some(naive) = naive {
        record = record.num("naive", naive);
    }
    sink.emit_report(&manifest, &[record])?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_solve(sink: &Sink, seed: u64, equation: Equation) -> Result<ExitCode> {
    let (manifest, records, table) = match equation {
        Equation::Prop6 {
            k_max,
            m_max,
            n_max,
        } => {
            let manifest = Manifest::new("solve", seed)
                .param("equation", "prop6")
                .param("k_max", k_max)
                .param("m_max", m_max)
                .param("n_max", n_max);
            let solutions = solve_prop6(k_max, m_max, n_max);
            let records: Vec<Record> = solutions
                .iter()
                .map(|s| {
                    Record::new("prop6_solution")
                        .num("k", s.k)
                        .num("m", s.m)
                        .num("n", s.n)
                })
                .collect();
            let mut table = Table::new(["k", "m", "n"]);
            for s in &solutions {
                table.row([s.k, s.m, s.n]);
            }
            (manifest, records, table)
        }
        Equation::Prop9 {
            k_max,
            p_max,
            q_max,
            n_max,
        } => {
            let manifest = Manifest::new("solve", seed)
                .param("equation", "prop9")
                .param("k_max", k_max)
                .param("p_max", p_max)
                .param("q_max", q_max)
                .param("n_max", n_max);
            let solutions = solve_prop9(k_max, p_max, q_max, n_max);
            let records: Vec<Record> = solutions
                .iter()
                .map(|s| {
                    Record::new("prop9_solution")
                        .num("k", s.k)
                        .num("p", s.p)
                        .num("q", s.q)
                        .num("n", s.n)
                })
                .collect();
            let mut table = Table::new(["k", "p", "q", "n"]);
            for s in &solutions {
                table.row([s.k, s.p, s.q, s.n]);
            }
            (manifest, records, table)
        }
    };
    sink.emit_tabular(&manifest, &records, &table)?;
    Ok(ExitCode::SUCCESS)
}

fn binding_pairs(instance: &CaseInstance) -> Vec<(String, String)> {
    instance
        .binding()
        .iter()
        .map(|(var, value)| (var.to_string(), value.to_string()))
        .collect()
}

fn binding_compact(instance: &CaseInstance) -> String {
    instance
        .binding()
        .iter()
        .map(|(var, value)| format!("{var}={value}"))
        .collect::<Vec<_>>()
        .join(";")
}

fn cmd_search(sink: &Sink, seed: u64, case: &str, bound: u64, workers: usize) -> Result<ExitCode> {
    let manifest = Manifest::new("search", seed)
        .param("case", case.to_ascii_lowercase())
        .param("bound", bound);
    let config = SearchConfig { bound, workers };
    let (records, table) = if case.eq_ignore_ascii_case("master") {
        let found = search_master(&config);
        let records: Vec<Record> = found
            .iter()
            .map(|(tuple, instance)| {
                let v = tuple.values();
                Record::new("master_solution")
                    .num("a", v[0])
                    .num("b", v[1])
                    .num("c", v[2])
                    .num("d", v[3])
                    .num("e", v[4])
                    .num("f", v[5])
                    .num("g", v[6])
                    .num("h", v[7])
                    .text("case", instance.case.name())
                    .nested("binding", binding_pairs(instance))
            })
            .collect();
        let mut table = Table::new(["a", "b", "c", "d", "e", "f", "g", "h", "case", "binding"]);
        for (tuple, instance) in &found {
            let mut cells: Vec<String> = tuple.values().iter().map(|v| v.to_string()).collect();
            cells.push(instance.case.name().to_string());
            cells.push(binding_compact(instance));
            table.row(cells);
        }
        (records, table)
    } else {
        let case_id = CaseId::parse_name(case).ok_or_else(|| {
            anyhow!(
                "unknown case {case:?}; expected one of 1plus1, 1_3d, 3b3d, 1_2c, identity, \
                 3b2c_mixed, 3b2c_split, master"
            )
        })?;
        let found = search_case(case_id, &config);
        let records: Vec<Record> = found
            .iter()
            .map(|instance| {
                let mut record = Record::new("case_solution").text("case", case_id.name());
                for (var, value) in instance.binding() {
                    record = record.num(&var.to_string(), value);
                }
                record
            })
            .collect();
        let mut table = Table::new(case_id.variables().map(String::from));
        for instance in &found {
            table.row(instance.values);
        }
        (records, table)
    };
    sink.emit_tabular(&manifest, &records, &table)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_classify(sink: &Sink, seed: u64, tuple: &str) -> Result<ExitCode> {
    let parsed: ExponentTuple = tuple.parse()?;
    let manifest = Manifest::new("classify", seed).param("tuple", tuple);
    let (lhs, rhs) = parsed.evaluate();
    if lhs != rhs {
        println!("equation does not hold: {lhs} != {rhs}");
        return Ok(ExitCode::from(1));
    }
    let normalized = parsed.normalize();
    let (zeros2, zeros3) = normalized.zero_pattern().expect("normalize() normalizes");
    let instance = normalized
        .classify()
        .expect("normalize() normalizes")
        .expect("holding tuples always classify");
    println!("normalized: {normalized}");
    println!("zeros: {zeros2},{zeros3}");
    println!("case: {} ({})", instance.case.name(), instance.case.equation());
    println!(
        "binding: {}",
        instance
            .binding()
            .iter()
            .map(|(var, value)| format!("{var}={value}"))
            .collect::<Vec<_>>()
            .join(" ")
    );
    let record = Record::new("classification")
        .text("tuple", tuple)
        .text("normalized", &normalized.to_string())
        .text("canonical", &normalized.canonical_form().to_string())
        .num("zeros2", zeros2)
        .num("zeros3", zeros3)
        .text("case", instance.case.name())
        .nested("binding", binding_pairs(&instance));
    sink.emit_report(&manifest, &[record])?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_conjecture(
    sink: &Sink,
    seed: u64,
    m_min: u64,
    m_max: u64,
    n_max: u64,
    workers: usize,
) -> Result<ExitCode> {
    let manifest = Manifest::new("conjecture", seed)
        .param("m_min", m_min)
        .param("m_max", m_max)
        .param("n_max", n_max);
    let reports = scan_conjecture(m_min, m_max, n_max, workers)?;
    let mut records = Vec::new();
    let mut table = Table::new(["m", "n_max", "violations", "minimal_n"]);
    let mut max_minimal: Option<u64> = Some(0);
    for report in &reports {
        let mut record = Record::new("conjecture_report")
            .num("m", report.base)
            .num("n_max", report.n_max)
            .list("violations", report.violations.iter());
        record = match report.minimal_n {
            Some(n) => record.num("minimal_n", n),
            None => record.null("minimal_n"),
        };
        records.push(record);
        let violations = report
            .violations
            .iter()
            .map(|n| n.to_string())
            .collect::<Vec<_>>()
            .join(";");
        let minimal = report
            .minimal_n
            .map(|n| n.to_string())
            .unwrap_or_else(|| "none".to_string());
        table.row([
            report.base.to_string(),
            report.n_max.to_string(),
            violations,
            minimal,
        ]);
        max_minimal = match (max_minimal, report.minimal_n) {
            (Some(current), Some(n)) => Some(current.max(n)),
            _ => None,
        };
    }
    let summary = Record::new("conjecture_summary")
        .num("m_min", m_min)
        .num("m_max", m_max)
        .num("n_max", n_max);
    let summary = match max_minimal {
        Some(n) => summary.num("max_minimal_n", n),
        None => summary.null("max_minimal_n"),
    };
    records.push(summary);
    table.trailers.push(format!(
        "max_minimal_n: {}",
        max_minimal
            .map(|n| n.to_string())
            .unwrap_or_else(|| "none".to_string())
    ));
    sink.emit_tabular(&manifest, &records, &table)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify_lemmas(
    sink: &Sink,
    seed: u64,
    lemma: Option<&str>,
    odd_bases: Option<&[u64]>,
) -> Result<ExitCode> {
    let mut manifest = Manifest::new("verify-lemmas", seed);
    if let Some(name) = lemma {
        manifest = manifest.param("lemma", name);
    }
    if let Some(bases) = odd_bases {
        let rendered = bases
            .iter()
            .map(|b| b.to_string())
            .collect::<Vec<_>>()
            .join(",");
        manifest = manifest.param("odd_bases", rendered);
    }

    let outcomes: Vec<SuiteOutcome> = match lemma {
        Some(name) => {
            let key: String = name
                .chars()
                .filter(|ch| *ch != '-' && *ch != '_')
                .map(|ch| ch.to_ascii_lowercase())
                .collect();
            if let ("vmpowminus", Some(bases)) = (key.as_str(), odd_bases) {
                vec![suites::vm_pow_minus_with_bases(bases)?]
            } else {
                let suite = suites::by_name(name).ok_or_else(|| {
                    anyhow!(
                        "unknown lemma suite {name:?}; expected one of {}",
                        suites::SUITE_NAMES.join(", ")
                    )
                })?;
                vec![suite()]
            }
        }
        None => {
            if let Some(bases) = odd_bases {
                let mut outcomes = Vec::new();
                for run in [
                    suites::cyclotomic_divisibility,
                    suites::v2_pow3_minus,
                    suites::v2_pow3_plus,
                    suites::v3_pow2_minus,
                    suites::v3_pow2_plus,
                ] {
                    outcomes.push(run());
                }
                outcomes.push(suites::vm_pow_minus_with_bases(bases)?);
                outcomes.push(suites::even_base_square());
                outcomes
            } else {
                suites::run_all()
            }
        }
    };

    let mut records = Vec::new();
    let mut all_passed = true;
    for outcome in &outcomes {
        if outcome.passed() {
            println!("PASS {} ({} checks)", outcome.name, outcome.checks);
        } else {
            all_passed = false;
            println!(
                "FAIL {} ({} checks, {} counterexamples)",
                outcome.name,
                outcome.checks,
                outcome.failures.len()
            );
            for failure in outcome.failures.iter().take(5) {
                println!("  counterexample: {failure}");
            }
        }
        records.push(
            Record::new("lemma_suite")
                .text("name", outcome.name)
                .num("checks", outcome.checks)
                .text("status", if outcome.passed() { "pass" } else { "fail" })
                .list("failures", outcome.failures.iter()),
        );
    }
    sink.emit_report(&manifest, &records)?;
    Ok(if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(4)
    })
}
