//! Command-line front end: generators, verifier, oracle and bound tables.
//!
//! Exit status is 0 on success, 1 when a check or bound fails, 2 on usage or
//! input errors.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use dsseq::bounds::{
    certified_lower_bound, parse_ratio, pigeonhole_ub, ratio_table, table_to_csv, BoundSource,
    RatioMode, RatioQuery,
};
use dsseq::field::{build_incidence, check_incidence};
use dsseq::oracle::{lambda_exact, DEFAULT_NODE_BUDGET};
use dsseq::rs::{generate_rs, rs_length, rs_lower_bound};
use dsseq::s2::{
    assemble_s2, choose_parameters, s2_length_bound, s2_order_bound, S2Params, S2Plan,
};
use dsseq::sequence::{header_comment, parse_sequence, serialize_sequence};
use dsseq::verifier::{analyze, check_ds, DsCheck};
use dsseq::{DsParams, DEFAULT_LENGTH_BUDGET};

#[derive(Parser)]
#[command(name = "dsseq", version, about = "Davenport-Schinzel sequence toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the Roselle-Stanton sequence RS(s, m)
    GenRs {
        #[arg(long)]
        s: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print |RS(s, m)| and the closed-form lower bound
    RsLength {
        #[arg(long)]
        s: u64,
        #[arg(long)]
        m: u64,
    },
    /// Write the incidence construction, from (shat, q) or from a target (s, m)
    GenS2(GenS2Args),
    /// Check a sequence file
    Verify {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        order: Option<u64>,
        #[arg(long)]
        alphabet: Option<u64>,
        #[arg(long)]
        report: bool,
    },
    /// Print the q^2 x q^2 incidence system row supports
    Incidence {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        check: bool,
    },
    /// Exact lambda(s, m) by exhaustive search
    Oracle {
        #[arg(long)]
        s: u64,
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
        #[arg(long)]
        witness: bool,
    },
    /// Upper and certified lower bound on lambda(s, m)
    Bounds {
        #[arg(long)]
        s: u64,
        #[arg(long)]
        m: u64,
    },
    /// Convergence table of lower bound ratios
    RatioTable(RatioTableArgs),
}

#[derive(Args)]
struct GenS2Args {
    #[arg(long, requires = "q", conflicts_with_all = ["s", "m"])]
    shat: Option<u64>,
    #[arg(long, requires = "shat")]
    q: Option<u64>,
    #[arg(long, requires = "m")]
    s: Option<u64>,
    #[arg(long, requires = "s")]
    m: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Diagonal,
    Linear,
    Power,
}

#[derive(Args)]
struct RatioTableArgs {
    #[arg(long, value_enum)]
    mode: ModeArg,
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    b: Option<String>,
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long = "n", value_delimiter = ',', required = true)]
    n: Vec<u64>,
    #[arg(long)]
    csv: Option<PathBuf>,
}

/// Input or usage problem; maps to exit status 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type CmdResult = Result<u8, InputError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> CmdResult {
    match command {
        Command::GenRs { s, m, out } => {
            let seq = generate_rs(s, m)?;
            let text = header_comment(s, m, seq.len()) + &serialize_sequence(&seq);
            emit(out.as_deref(), &text)?;
            Ok(0)
        }
        Command::RsLength { s, m } => {
            println!("L({s},{m}) = {}", rs_length(s, m)?);
            match rs_lower_bound(s, m) {
                Ok(lb) => println!("C(m,2)(s-m)+m = {lb}"),
                Err(_) => println!("C(m,2)(s-m)+m = n/a (needs s >= m)"),
            }
            Ok(0)
        }
        Command::GenS2(args) => gen_s2(args),
        Command::Verify {
            file,
            order,
            alphabet,
            report,
        } => verify(&file, order, alphabet, report),
        Command::Incidence { q, check } => {
            let sys = build_incidence(q)?;
            let mut out = io::BufWriter::new(io::stdout().lock());
            for (r, support) in sys.row_supports().iter().enumerate() {
                let cols: Vec<String> = support.iter().map(|c| c.to_string()).collect();
                writeln!(out, "{r}: {}", cols.join(" "))?;
            }
            out.flush()?;
            if check {
                let report = check_incidence(&sys);
                println!("check: {report}");
                return Ok(if report.passed() { 0 } else { 1 });
            }
            Ok(0)
        }
        Command::Oracle {
            s,
            m,
            budget,
            witness,
        } => {
            let r = lambda_exact(s, m, budget)?;
            println!("lambda({s},{m}) = {}", r.value);
            println!("exhausted = {}", r.exhausted);
            println!("nodes = {}", r.nodes_explored);
            if witness {
                print!("{}", header_comment(s, m, r.witness.len()));
                print!("{}", serialize_sequence(&r.witness));
            }
            // a value from an unfinished search is only a lower bound
            Ok(if r.exhausted { 0 } else { 1 })
        }
        Command::Bounds { s, m } => {
            let ub = pigeonhole_ub(s, m)?;
            let lb = certified_lower_bound(s, m)?;
            println!("upper = {ub}");
            println!("lower = {}", lb.value);
            println!("source = {}", lb.source);
            if let BoundSource::S2 { q, s_hat } = lb.source {
                println!("q = {q}");
                println!("s_hat = {s_hat}");
            }
            Ok(if lb.value <= ub || m < 2 { 0 } else { 1 })
        }
        Command::RatioTable(args) => ratio(args),
    }
}

fn emit(out: Option<&Path>, text: &str) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn gen_s2(args: GenS2Args) -> CmdResult {
    let plan: S2Plan = match (args.shat, args.q, args.s, args.m) {
        (Some(shat), Some(q), None, None) => S2Params::new(shat, q)?.into(),
        (None, None, Some(s), Some(m)) => {
            let plan = choose_parameters(s, m)?;
            eprintln!("chose q = {}, s_hat = {}", plan.q, plan.s_hat);
            plan
        }
        _ => {
            return Err(InputError(
                "give either --shat and --q, or --s and --m".into(),
            ))
        }
    };
    let params = plan.params();
    let order_bound = s2_order_bound(params)?;
    let length_bound = s2_length_bound(params)?;
    let assembly = assemble_s2(params, DEFAULT_LENGTH_BUDGET)?;
    let seq = &assembly.sequence;
    let q2 = params.q() * params.q();
    let mut text = header_comment(order_bound, q2, seq.len());
    text += &format!(
        "# q={} s_hat={} order_bound={order_bound} length_bound={length_bound} deletions={}\n",
        params.q(),
        params.s_hat(),
        assembly.boundary_deletions
    );
    text += &serialize_sequence(seq);
    emit(args.out.as_deref(), &text)?;
    Ok(0)
}

fn verify(file: &Path, order: Option<u64>, alphabet: Option<u64>, report: bool) -> CmdResult {
    let text = fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
    let seq = parse_sequence(&text)?;
    if report {
        let r = analyze(&seq)?;
        println!("length = {}", r.length);
        println!("alphabet = {}", r.alphabet);
        println!("max_alternation = {}", r.max_alternation);
        match r.witness_pair {
            Some((a, b)) => println!("witness_pair = {a},{b}"),
            None => println!("witness_pair = none"),
        }
        println!("minimal_order = {}", r.minimal_order);
    }
    let params = DsParams::new(order.unwrap_or(u64::MAX - 1), alphabet.unwrap_or(u64::MAX))?;
    match check_ds(&seq, params) {
        DsCheck::Pass => {
            println!("PASS");
            Ok(0)
        }
        DsCheck::Fail(v) => {
            println!("FAIL: {v}");
            Ok(1)
        }
    }
}

fn ratio(args: RatioTableArgs) -> CmdResult {
    let required = |v: &Option<String>, name: &str| -> Result<_, InputError> {
        let text = v
            .as_deref()
            .ok_or_else(|| InputError(format!("--{name} is required for this mode")))?;
        Ok(parse_ratio(text)?)
    };
    let mode = match args.mode {
        ModeArg::Diagonal => RatioMode::Diagonal,
        ModeArg::Linear => RatioMode::Linear {
            a: required(&args.a, "a")?,
            b: required(&args.b, "b")?,
        },
        ModeArg::Power => RatioMode::Power {
            alpha: required(&args.alpha, "alpha")?,
        },
    };
    let query = RatioQuery::new(mode, args.n)?;
    let rows = ratio_table(&query);
    for e in rows.iter().filter_map(|r| r.as_ref().err()) {
        eprintln!("n = {}: {}", e.n, e.error);
    }
    let csv = table_to_csv(&rows);
    emit(args.csv.as_deref(), &csv)?;
    if args.csv.is_some() {
        print!("{csv}");
    }
    let violated = rows.iter().flatten().any(|r| r.lb > r.ub);
    Ok(if violated { 1 } else { 0 })
}
