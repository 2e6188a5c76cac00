//! `qbent`: analyze q-ary functions, run the constructions, and execute
//! searches and verification drivers. stdout carries exactly one JSON
//! document per invocation; diagnostics go to stderr.
//!
//! Exit codes: 0 success / verification passed, 1 verification failed,
//! 2 usage or input error, 3 resource budget exceeded.

mod report;

use clap::{Parser, Subcommand};
use qbent::constructions::{
    chain_quasigroup, extend_linear, fix_coordinates, glue_disjoint, make_diag_squares, make_qn,
    minimal_pair, mm_plateaued, semilinear_quasigroup, subspace_modification, ConstructError,
    PlateauedPairSpec, Q4Func,
};
use qbent::functions::{domain_size, FuncError, QFunc};
use qbent::metrics::MetricsError;
use qbent::search::{
    enumerate_class, min_distance_of, verify_theorem, ClassPredicate, SearchError, SearchTask,
};
use qbent::subspaces::{Coset, Subspace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "qbent", version, about = "Exact analysis of q-ary bent and plateaued functions")]
struct Cli {
    /// Number of worker threads for parallel scans (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a function and report its metrics as JSON.
    Analyze {
        /// Path to a .qf file, or "-" for stdin.
        input: String,
        /// Also compute the strong nonlinearity (budget-gated).
        #[arg(long)]
        strong_nl: bool,
        /// Work budget for the strong-nonlinearity search.
        #[arg(long, default_value_t = qbent::metrics::DEFAULT_STRONG_NL_BUDGET)]
        strong_nl_budget: u64,
        /// Include the full coefficient dump in the report.
        #[arg(long)]
        dump_spectrum: bool,
    },
    /// Build a named construction and write it in .qf format.
    Construct {
        /// qn | diag-squares | mm-plateaued | extend | fix | glue | modify |
        /// minimal-pair | semilinear | chain
        name: String,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
        /// Input function file (extend, fix, modify: the function to lift).
        #[arg(long)]
        f: Option<PathBuf>,
        /// Boolean function file (semilinear).
        #[arg(long)]
        b: Option<PathBuf>,
        /// Order-4 binary quasigroup file (chain).
        #[arg(long)]
        h: Option<PathBuf>,
        /// Chain arity (chain).
        #[arg(long)]
        arity: Option<usize>,
        /// Comma-separated vector, e.g. "1,0,2" (extend, fix).
        #[arg(long)]
        a: Option<String>,
        /// Comma-separated family files in index order (glue).
        #[arg(long)]
        inputs: Option<String>,
        /// Basis rows "1,0;0,1" (modify).
        #[arg(long)]
        basis: Option<String>,
        /// Coset representative "0,0" (modify).
        #[arg(long)]
        rep: Option<String>,
        /// Nonzero modification constant (modify).
        #[arg(long)]
        c: Option<u8>,
        /// Randomization seed (mm-plateaued); omit for identity permutations.
        #[arg(long)]
        seed: Option<u64>,
        /// Output path; minimal-pair writes <out>.a and <out>.b.
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Run a verification driver and print its JSON report.
    Verify {
        /// thm1 | thm2 | cor3 | prop6 | thm3 | thm4 | lemma2 | cor4
        theorem: String,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
    },
    /// Enumerate a class, optionally with a minimal-distance scan.
    Search {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        /// all | bent | regular-bent | plateaued:<s> | balanced
        #[arg(long, default_value = "all")]
        class: String,
        /// Deterministic shard "index/total".
        #[arg(long)]
        shard: Option<String>,
        #[arg(long, default_value_t = qbent::search::DEFAULT_SCAN_BUDGET)]
        budget: u64,
        /// Also compute the minimal pairwise distance within the class.
        #[arg(long)]
        min_distance: bool,
        /// Histogram cap for the distance scan.
        #[arg(long, default_value_t = 32)]
        hist_cap: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        // worker count affects scheduling only, never reported values
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Budget(String),
    Io(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Budget(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

impl From<FuncError> for CliError {
    fn from(e: FuncError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<ConstructError> for CliError {
    fn from(e: ConstructError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<MetricsError> for CliError {
    fn from(e: MetricsError) -> Self {
        match e {
            MetricsError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::BudgetExceeded { .. } | SearchError::ClassTooLarge { .. } => {
                CliError::Budget(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Analyze {
            input,
            strong_nl,
            strong_nl_budget,
            dump_spectrum,
        } => {
            let text = if input == "-" {
                std::io::read_to_string(std::io::stdin())?
            } else {
                std::fs::read_to_string(&input)?
            };
            let f = QFunc::parse(&text)?;
            let budget = strong_nl.then_some(strong_nl_budget);
            let report = report::analyze(&f, budget, dump_spectrum)?;
            print_json(&report);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { theorem, q, n, s } => {
            let report = verify_theorem(&theorem, q, n, s)?;
            let pass = report.pass;
            print_json(&report::verify_json(&report));
            Ok(if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Search {
            q,
            n,
            class,
            shard,
            budget,
            min_distance,
            hist_cap,
        } => {
            let predicate = parse_class(&class)?;
            let mut task = SearchTask::new(q, n, predicate).with_budget(budget);
            let mut shard_spec = (0usize, 1usize);
            if let Some(text) = &shard {
                shard_spec = parse_shard(text)?;
                task = task.with_shard(shard_spec.0, shard_spec.1);
            }
            let members = enumerate_class(&task)?;
            let scan = if min_distance {
                Some(min_distance_of(&members, hist_cap)?)
            } else {
                None
            };
            print_json(&report::search_json(
                q,
                n,
                &class,
                shard_spec,
                &members,
                scan.as_ref(),
            ));
            Ok(ExitCode::SUCCESS)
        }
        Command::Construct {
            name,
            q,
            n,
            k,
            s,
            t,
            f,
            b,
            h,
            arity,
            a,
            inputs,
            basis,
            rep,
            c,
            seed,
            out,
        } => {
            let args = ConstructArgs {
                q,
                n,
                k,
                s,
                t,
                f,
                b,
                h,
                arity,
                a,
                inputs,
                basis,
                rep,
                c,
                seed,
            };
            let written = construct(&name, args, &out)?;
            print_json(&report::construct_json(&name, &written));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn print_json<T: serde::Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn parse_class(text: &str) -> Result<ClassPredicate, CliError> {
    match text {
        "all" => Ok(ClassPredicate::All),
        "bent" => Ok(ClassPredicate::Bent),
        "regular-bent" => Ok(ClassPredicate::RegularBent),
        "balanced" => Ok(ClassPredicate::Balanced),
        other => match other.strip_prefix("plateaued:") {
            Some(s) => s
                .parse()
                .map(ClassPredicate::Plateaued)
                .map_err(|_| CliError::Usage(format!("bad plateaued order in {other:?}"))),
            None => Err(CliError::Usage(format!("unknown class {other:?}"))),
        },
    }
}

fn parse_shard(text: &str) -> Result<(usize, usize), CliError> {
    let (i, t) = text
        .split_once('/')
        .ok_or_else(|| CliError::Usage(format!("shard must be index/total, got {text:?}")))?;
    let index = i
        .parse()
        .map_err(|_| CliError::Usage("bad shard index".into()))?;
    let total = t
        .parse()
        .map_err(|_| CliError::Usage("bad shard total".into()))?;
    Ok((index, total))
}

struct ConstructArgs {
    q: Option<u32>,
    n: Option<usize>,
    k: Option<usize>,
    s: Option<usize>,
    t: Option<usize>,
    f: Option<PathBuf>,
    b: Option<PathBuf>,
    h: Option<PathBuf>,
    arity: Option<usize>,
    a: Option<String>,
    inputs: Option<String>,
    basis: Option<String>,
    rep: Option<String>,
    c: Option<u8>,
    seed: Option<u64>,
}

impl ConstructArgs {
    fn q(&self) -> Result<u32, CliError> {
        self.q.ok_or_else(|| CliError::Usage("--q is required".into()))
    }
    fn n(&self) -> Result<usize, CliError> {
        self.n.ok_or_else(|| CliError::Usage("--n is required".into()))
    }
    fn load_f(&self) -> Result<QFunc, CliError> {
        let path = self
            .f
            .as_ref()
            .ok_or_else(|| CliError::Usage("--f is required".into()))?;
        Ok(QFunc::parse(&std::fs::read_to_string(path)?)?)
    }
    fn vector(&self) -> Result<Vec<u8>, CliError> {
        parse_vector(
            self.a
                .as_ref()
                .ok_or_else(|| CliError::Usage("--a is required".into()))?,
        )
    }
}

fn parse_vector(text: &str) -> Result<Vec<u8>, CliError> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|tok| {
            tok.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("bad vector entry {tok:?}")))
        })
        .collect()
}

fn construct(name: &str, args: ConstructArgs, out: &PathBuf) -> Result<Vec<PathBuf>, CliError> {
    let write_qf = |path: &PathBuf, text: String| -> Result<(), CliError> {
        std::fs::write(path, text)?;
        Ok(())
    };
    match name {
        "qn" => {
            let f = make_qn(args.q()?, args.n()?)?;
            write_qf(out, f.serialize())?;
            Ok(vec![out.clone()])
        }
        "diag-squares" => {
            let f = make_diag_squares(args.n()?)?;
            write_qf(out, f.serialize())?;
            Ok(vec![out.clone()])
        }
        "mm-plateaued" => {
            let q = args.q()?;
            let n = args.n()?;
            let k = args
                .k
                .ok_or_else(|| CliError::Usage("--k is required".into()))?;
            let (tau, sigma, inner) = match args.seed {
                None => {
                    let inner = match &args.f {
                        Some(_) => args.load_f()?,
                        None => QFunc::constant(q, n, 0)?,
                    };
                    let tau: Vec<usize> = (0..domain_size(q, n)).collect();
                    let sigma: Vec<usize> = (0..domain_size(q, k)).collect();
                    (tau, sigma, inner)
                }
                Some(seed) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let mut perm = |len: usize| -> Vec<usize> {
                        let mut p: Vec<usize> = (0..len).collect();
                        for i in (1..len).rev() {
                            p.swap(i, rng.gen_range(0..=i));
                        }
                        p
                    };
                    let tau = perm(domain_size(q, n));
                    let sigma = perm(domain_size(q, k));
                    let inner = match &args.f {
                        Some(_) => args.load_f()?,
                        None => QFunc::from_fn(q, n, |_| rng.gen_range(0..q) as u8)?,
                    };
                    (tau, sigma, inner)
                }
            };
            let f = mm_plateaued(&tau, &sigma, &inner, k)?;
            write_qf(out, f.serialize())?;
            Ok(vec![out.clone()])
        }
        "extend" => {
            let f = extend_linear(&args.load_f()?, &args.vector()?)?;
            write_qf(out, f.serialize())?;
            Ok(vec![out.clone()])
        }
        "fix" => {
            let f = fix_coordinates(&args.load_f()?, &args.vector()?)?;
            write_qf(out, f.serialize())?;
            Ok(vec![out.clone()])
        }
        "glue" => {
            let list = args
                .inputs
                .as_ref()
                .ok_or_else(|| CliError::Usage("--inputs is required".into()))?;
            let family: Vec<QFunc> = list
                .split(',')
                .map(|p| Ok(QFunc::parse(&std::fs::read_to_string(p.trim())?)?))
                .collect::<Result<_, CliError>>()?;
            let q = family
                .first()
                .ok_or_else(|| CliError::Usage("--inputs must not be empty".into()))?
                .q();
            // family size must be q^k for the gluing arity k
            let mut k = 0usize;
            while domain_size(q, k) < family.len() {
                k += 1;
            }
            let f = glue_disjoint(&family, k)?;
            write_qf(out, f.serialize())?;
            Ok(vec![out.clone()])
        }
        "modify" => {
            let f = args.load_f()?;
            let basis_text = args
                .basis
                .as_ref()
                .ok_or_else(|| CliError::Usage("--basis is required".into()))?;
            let rows: Vec<Vec<u8>> = basis_text
                .split(';')
                .map(|r| parse_vector(r))
                .collect::<Result<_, _>>()?;
            let sub = Subspace::from_vectors(f.q(), f.n(), &rows)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let rep = parse_vector(
                args.rep
                    .as_ref()
                    .ok_or_else(|| CliError::Usage("--rep is required".into()))?,
            )?;
            let coset = Coset::new(sub, &rep).map_err(|e| CliError::Usage(e.to_string()))?;
            let c = args
                .c
                .ok_or_else(|| CliError::Usage("--c is required".into()))?;
            let g = subspace_modification(&f, &coset, c)?;
            write_qf(out, g.serialize())?;
            Ok(vec![out.clone()])
        }
        "minimal-pair" => {
            let spec = PlateauedPairSpec::new(
                args.q()?,
                args.s.ok_or_else(|| CliError::Usage("--s is required".into()))?,
                args.t.ok_or_else(|| CliError::Usage("--t is required".into()))?,
            )?;
            let (ha, hb) = minimal_pair(spec)?;
            let mut path_a = out.as_os_str().to_owned();
            path_a.push(".a");
            let mut path_b = out.as_os_str().to_owned();
            path_b.push(".b");
            let (path_a, path_b) = (PathBuf::from(path_a), PathBuf::from(path_b));
            write_qf(&path_a, ha.serialize())?;
            write_qf(&path_b, hb.serialize())?;
            Ok(vec![path_a, path_b])
        }
        "semilinear" => {
            let path = args
                .b
                .as_ref()
                .ok_or_else(|| CliError::Usage("--b is required".into()))?;
            let boolean = QFunc::parse(&std::fs::read_to_string(path)?)?;
            let f = semilinear_quasigroup(&boolean)?;
            write_qf(out, f.serialize())?;
            Ok(vec![out.clone()])
        }
        "chain" => {
            let path = args
                .h
                .as_ref()
                .ok_or_else(|| CliError::Usage("--h is required".into()))?;
            let h = Q4Func::parse(&std::fs::read_to_string(path)?)?;
            let arity = args
                .arity
                .ok_or_else(|| CliError::Usage("--arity is required".into()))?;
            let f = chain_quasigroup(&h, arity)?;
            write_qf(out, f.serialize())?;
            Ok(vec![out.clone()])
        }
        other => Err(CliError::Usage(format!(
            "unknown constructor {other:?}; expected qn | diag-squares | mm-plateaued | extend \
             | fix | glue | modify | minimal-pair | semilinear | chain"
        ))),
    }
}
