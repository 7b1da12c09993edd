mod text;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use semispace::algebra::standard::{self, Standard};
use semispace::algebra::{io, Homomorphism, Semimodule};
use semispace::classes::{Classifier, DisKind};
use semispace::lattice::{Limits, SubLattice};
use semispace::maps::{check_contraction, pullback};
use semispace::topology::SubbasisSpace;
use semispace::verifier::{
    contraction_spaces, mine_counterexamples, run_theorem_suite, write_witness_files, Corpus, Query, SuiteOptions,
    SweepSpec,
};
use semispace::Error;

#[derive(Parser, Debug)]
#[command(name = "semispace", version, about = "Subsemimodule spaces of finite semimodules")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Largest module carrier accepted.
    #[arg(long, global = true, default_value_t = Limits::default().max_module)]
    max_module_size: usize,
    /// Largest subsemimodule lattice accepted.
    #[arg(long, global = true, default_value_t = Limits::default().max_lattice)]
    max_lattice: usize,
    /// Worker threads for sweeps (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Seed for the randomized family sampling in `verify`.
    #[arg(long, global = true, default_value_t = semispace::verifier::DEFAULT_SEED)]
    seed: u64,
}

impl Global {
    fn limits(&self) -> Limits {
        Limits {
            max_module: self.max_module_size,
            max_lattice: self.max_lattice,
            ..Limits::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Carriers, axiom check and subsemimodule lattice of a structure.
    Describe {
        /// Structure file, or `std:<name>` / `std:<family expression>`.
        input: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Print the inclusion Hasse diagram as DOT instead.
        #[arg(long)]
        dot: bool,
    },
    /// Membership of every subsemimodule in each distinguished class.
    Classify {
        input: String,
        /// Comma-separated kinds or `all`.
        #[arg(long, default_value = "all")]
        kinds: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Include the reason each non-member fails (JSON only).
        #[arg(long)]
        witnesses: bool,
    },
    /// The closed-subbasis topology on one class.
    Topology {
        input: String,
        #[arg(long)]
        kind: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Print the specialization Hasse diagram as DOT instead.
        #[arg(long)]
        dot: bool,
    },
    /// The induced map between spaces of a homomorphism.
    Maps {
        /// Domain structure of the homomorphism.
        #[arg(long)]
        source: String,
        /// Codomain structure of the homomorphism.
        #[arg(long)]
        target: String,
        /// JSON list of `[source label, target label]` pairs.
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        kind: String,
    },
    /// Check every claim over a corpus.
    Verify {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long, default_value = "all")]
        kinds: String,
        /// Comma-separated claim ids or `all`.
        #[arg(long, default_value = "all")]
        claims: String,
        /// Write the full JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write one replayable witness file per failure into this directory.
        #[arg(long)]
        witness_dir: Option<PathBuf>,
        /// Print per-claim wall time to stderr.
        #[arg(long)]
        timings: bool,
    },
    /// Search a corpus for instances of a query.
    Mine {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long)]
        query: String,
        #[arg(long, default_value = "all")]
        kinds: String,
        /// Stop after this many hits.
        #[arg(long)]
        limit: Option<usize>,
    },
}

#[derive(Args, Debug)]
struct CorpusArgs {
    /// Directory of structure files.
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Exhaustive sweep bounds, e.g. "r<=2,m<=4".
    #[arg(long)]
    sweep: Option<String>,
    /// Include the curated structures (the default when no corpus or sweep is given).
    #[arg(long)]
    curated: bool,
}

impl CorpusArgs {
    fn load(&self) -> Result<(Corpus, bool), Error> {
        let curated = self.curated || (self.corpus.is_none() && self.sweep.is_none());
        let mut corpus = if curated { Corpus::curated() } else { Corpus::default() };
        if let Some(dir) = &self.corpus {
            corpus.extend(Corpus::from_dir(dir)?);
        }
        if let Some(s) = &self.sweep {
            corpus.extend(Corpus::from_sweep(&s.parse::<SweepSpec>()?));
        }
        Ok((corpus, curated))
    }
}

fn load_input(input: &str, limits: &Limits) -> Result<Arc<Semimodule>, Error> {
    let module = match input.strip_prefix("std:") {
        Some(name) => match standard::named(name) {
            Some(m) => m,
            None => match standard::make_standard(name)? {
                Standard::Semiring(r) => standard::self_module(&r),
                Standard::Semimodule(m) => m,
            },
        },
        None => io::load_structure(Path::new(input))?,
    };
    if module.len() > limits.max_module {
        return Err(Error::SizeCap {
            what: "module elements",
            actual: module.len(),
            cap: limits.max_module,
        });
    }
    Ok(Arc::new(module))
}

fn kinds(s: &str) -> Result<Vec<DisKind>, Error> {
    DisKind::parse_list(s)
}

fn one_kind(s: &str) -> Result<DisKind, Error> {
    s.parse()
}

/// Writes to stdout; a closed pipe ends output quietly rather than panicking.
fn emit(s: &str) {
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn print_json<T: Serialize>(v: &T) {
    emit(&(serde_json::to_string_pretty(v).expect("serializable output") + "\n"));
}

#[derive(Serialize)]
struct Description {
    semiring_elements: Vec<String>,
    module_elements: Vec<String>,
    axioms: &'static str,
    subsemimodule_count: usize,
    lattice: semispace::lattice::LatticeReport,
}

#[derive(Serialize)]
struct ClassifyReport {
    kinds: Vec<DisKind>,
    subsemimodules: Vec<String>,
    /// `matrix[k][n]`: subsemimodule `n` belongs to kind `k`.
    matrix: Vec<Vec<bool>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witnesses: Option<Vec<Vec<Option<String>>>>,
    strong_reading: &'static str,
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let limits = cli.global.limits();
    match cli.command {
        Command::Describe { input, format, dot } => {
            let m = load_input(&input, &limits)?;
            let lat = SubLattice::new(m.clone(), &limits)?;
            if dot {
                emit(&lat.to_dot());
                return Ok(ExitCode::SUCCESS);
            }
            let d = Description {
                semiring_elements: m.ring().labels().to_vec(),
                module_elements: m.labels().to_vec(),
                axioms: "ok",
                subsemimodule_count: lat.len(),
                lattice: lat.report(),
            };
            match format {
                Format::Json => print_json(&d),
                Format::Text => emit(&text::describe(&m, &lat)),
            }
        }
        Command::Classify {
            input,
            kinds: ks,
            format,
            witnesses,
        } => {
            let m = load_input(&input, &limits)?;
            let ks = kinds(&ks)?;
            let lat = SubLattice::new(m, &limits)?;
            let c = Classifier::new(&lat);
            let matrix = c.matrix(&ks);
            match format {
                Format::Json => {
                    let witnesses = witnesses.then(|| {
                        ks.iter()
                            .map(|&k| {
                                lat.ids()
                                    .map(|n| c.is_in_class(n, k).witness.map(|w| w.render(&lat)))
                                    .collect()
                            })
                            .collect()
                    });
                    print_json(&ClassifyReport {
                        kinds: ks,
                        subsemimodules: lat.ids().map(|n| lat.show(n)).collect(),
                        matrix,
                        witnesses,
                        strong_reading: semispace::classes::STRONG_READING,
                    });
                }
                Format::Text => emit(&text::classify(&lat, &ks, &matrix)),
            }
        }
        Command::Topology {
            input,
            kind,
            format,
            dot,
        } => {
            let m = load_input(&input, &limits)?;
            let kind = one_kind(&kind)?;
            let lat = Arc::new(SubLattice::new(m, &limits)?);
            let space = SubbasisSpace::for_kind(lat, kind, &limits)?;
            if dot {
                emit(&space.to_dot());
                return Ok(ExitCode::SUCCESS);
            }
            let report = space.report();
            match format {
                Format::Json => print_json(&report),
                Format::Text => emit(&text::topology(&report)),
            }
        }
        Command::Maps {
            source,
            target,
            map,
            kind,
        } => {
            let src = load_input(&source, &limits)?;
            let dst = load_input(&target, &limits)?;
            let kind = one_kind(&kind)?;
            let pairs: Vec<(String, String)> = serde_json::from_str(&std::fs::read_to_string(&map)?)?;
            let hom = Homomorphism::from_label_pairs(src, dst, &pairs)?;
            let (domain, codomain) = contraction_spaces(&hom, kind, &limits)?;
            let contraction = check_contraction(&hom, &domain, &codomain)?;
            if !contraction.holds {
                let witness = contraction.witness.map(|w| codomain.lattice().show(w));
                print_json(&json!({
                    "kind": kind,
                    "contraction": {"holds": false, "witness": witness},
                }));
                eprintln!("refused: contraction fails");
                return Ok(ExitCode::from(1));
            }
            let pm = pullback(&hom, domain, codomain)?;
            print_json(&pm.report());
        }
        Command::Verify {
            corpus,
            kinds: ks,
            claims,
            out,
            witness_dir,
            timings,
        } => {
            let (corpus, curated) = corpus.load()?;
            let opts = SuiteOptions {
                kinds: kinds(&ks)?,
                claims: match claims.trim() {
                    "all" => None,
                    list => Some(list.split(',').map(|s| s.trim().to_string()).collect()),
                },
                seed: cli.global.seed,
                limits,
                projections: curated,
                ..SuiteOptions::default()
            };
            let report = run_theorem_suite(&corpus, &opts)?;
            if let Some(path) = &out {
                std::fs::write(path, report.to_json() + "\n")?;
            }
            if let Some(dir) = &witness_dir {
                let written = write_witness_files(&report, dir)?;
                eprintln!("wrote {} witness files to {}", written.len(), dir.display());
            }
            emit(&text::suite_summary(&report));
            if timings {
                eprint!("{}", text::suite_timings(&report));
            }
            return Ok(if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            });
        }
        Command::Mine {
            corpus,
            query,
            kinds: ks,
            limit,
        } => {
            let (corpus, _) = corpus.load()?;
            let q: Query = query.parse()?;
            let r = mine_counterexamples(&corpus, q, &kinds(&ks)?, limit, &limits);
            print_json(&json!({
                "query": r.query,
                "structures": corpus.len(),
                "spaces_searched": r.spaces_searched,
                "spaces_skipped": r.spaces_skipped,
                "certified_none": r.certified_none(),
                "truncated": r.truncated,
                "hits": r.hits,
            }));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.global.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.global.jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
