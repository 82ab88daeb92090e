//! `skewper`: build, analyze, compare, classify and export configurations.
//!
//! Exit status: 0 on success, 1 on a domain error (invalid input data, a
//! failed check, non-isomorphic inputs), 2 on a usage error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use skewper::analysis::{
    cross_predicate, enumerate_free_cliques, reperspective, star_clique_indices_brute,
    stp_diagram,
};
use skewper::classify::{classify_all, init_threads_from_env, verify_published};
use skewper::constructions::{
    grassmannian, normalize_axis, perspective, recover_perspective, veblen, veronesian, veronesian_axis,
    VeblenLabel,
};
use skewper::io::{parse_any, write_certificate, write_dot, write_json, write_psts, write_stp_dot};
use skewper::isomorphism::{are_isomorphic, automorphism_group, canonical_form};
use skewper::{Config, Error, PhiSequence, PointId, Result, Skew};

#[derive(Parser)]
#[command(name = "skewper", version, about = "Skew perspectives of binomial partial Steiner triple systems")]
struct Cli {
    /// Seed for random relabellings (`build --shuffle`); never affects classification
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a configuration
    Build {
        #[command(subcommand)]
        what: BuildKind,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Validate and describe a configuration file
    Analyze(AnalyzeArgs),
    /// Decide isomorphism; prints a witness, exit 1 when none exists
    Iso { first: PathBuf, second: PathBuf },
    /// Classify all 240 instances M(f,s,i)
    Classify {
        /// Check every published claim; exit 1 if any fails
        #[arg(long)]
        golden: bool,
        /// Write the full report as JSON
        #[arg(long, value_name = "FILE")]
        summary: Option<PathBuf>,
        /// Print the per-class table
        #[arg(long)]
        table: bool,
    },
    /// Convert a configuration to another format
    Export(ExportArgs),
}

#[derive(Subcommand)]
enum BuildKind {
    /// The combinatorial Grassmannian G(n,2)
    Grassmannian {
        #[arg(long)]
        n: usize,
    },
    /// The combinatorial Veronesian V(X,k), |X| = 3
    Veronesian {
        #[arg(long)]
        k: usize,
    },
    /// A skew perspective Π(n, σ_Φ, N)
    Perspective {
        /// Defaults to the length of Φ
        #[arg(long)]
        n: Option<usize>,
        /// `[(2)(1,3),(1,2)]`, or `id`, `zeta`
        #[arg(long)]
        phi: Option<String>,
        /// `grassmannian`, `veronesian`, `v5:<μ>`, `v6:<μ>`, or `file:<path>`
        #[arg(long)]
        axis: Option<String>,
        /// Key-value file with `n:`, `phi:` and `axis:` rows
        #[arg(long, value_name = "FILE")]
        config: Option<PathBuf>,
    },
}

#[derive(Args)]
struct OutputArgs {
    #[arg(short, long, global = true, value_name = "FILE")]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Psts)]
    format: Format,
    /// Apply a random point relabelling (see `--seed`)
    #[arg(long, global = true)]
    shuffle: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Psts,
    Json,
}

#[derive(Args)]
struct AnalyzeArgs {
    file: PathBuf,
    /// Enumerate the free complete graphs K_M
    #[arg(long, value_name = "M")]
    cliques: Option<usize>,
    /// Compute the automorphism group
    #[arg(long)]
    aut: bool,
    /// Perspective files: which G_(i) are free, re-perspective, STP diagram
    #[arg(long)]
    stars: bool,
    /// Perspective files: evaluate Cross(k)
    #[arg(long, value_name = "K")]
    cross: Option<usize>,
    /// Print the canonical certificate digest
    #[arg(long)]
    certificate: bool,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("fmt").required(true)))]
struct ExportArgs {
    file: PathBuf,
    #[arg(long, group = "fmt")]
    dot: bool,
    #[arg(long, group = "fmt")]
    json: bool,
    #[arg(long, group = "fmt")]
    psts: bool,
    /// STP diagram of a labelled Π(4,·,·) with three free K5
    #[arg(long, group = "fmt")]
    stp: bool,
    /// The canonical form, as psts
    #[arg(long, group = "fmt")]
    certificate: bool,
    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
}

enum Failure {
    Domain(String),
    /// a check ran and came out negative; the report is already printed
    Negative,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Domain(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    init_threads_from_env();
    let result = match cli.command {
        Command::Build { what, out } => build(what, &out, cli.seed),
        Command::Analyze(args) => analyze(&args),
        Command::Iso { first, second } => iso(&first, &second),
        Command::Classify { golden, summary, table } => classify(golden, summary.as_deref(), table),
        Command::Export(args) => export(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative) => ExitCode::from(1),
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn read_config(path: &Path) -> Result<Config> {
    parse_any(&fs::read_to_string(path)?)
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(p) => Ok(fs::write(p, text)?),
        None => {
            // a closed pipe (`| head`) is not an error worth reporting
            let _ = std::io::Write::write_all(&mut std::io::stdout().lock(), text.as_bytes());
            Ok(())
        }
    }
}

fn parse_phi(s: &str, n: Option<usize>) -> Result<PhiSequence> {
    let need_n = || n.ok_or_else(|| Error::Precondition(format!("--n is required with phi = {s}")));
    match s.trim() {
        "id" | "identity" => PhiSequence::identity(need_n()?),
        "zeta" | "symmetric" => PhiSequence::symmetric(need_n()?),
        "cyclic" => PhiSequence::cyclic(need_n()?),
        other => PhiSequence::parse(other),
    }
}

fn parse_axis(s: &str, n: usize, base: &Path) -> Result<Config> {
    let s = s.trim();
    if let Some(path) = s.strip_prefix("file:") {
        return normalize_axis(&read_config(&base.join(path))?, n);
    }
    match s {
        "grassmannian" => grassmannian(n),
        "veronesian" => veronesian_axis(n),
        _ if s.starts_with('v') => {
            if n != 4 {
                return Err(Error::Precondition(format!("Veblen axes need n = 4, got {n}")));
            }
            Ok(veblen(&VeblenLabel::parse(s)?))
        }
        _ => Err(Error::Precondition(format!("unknown axis {s:?}"))),
    }
}

/// Rows `key: value`; `#` starts a comment.
fn read_build_file(path: &Path) -> Result<(Option<usize>, Option<String>, Option<String>)> {
    let text = fs::read_to_string(path)?;
    let (mut n, mut phi, mut axis) = (None, None, None);
    for (k, raw) in text.lines().enumerate() {
        let row = raw.split('#').next().unwrap_or("").trim();
        if row.is_empty() {
            continue;
        }
        let err = |reason: String| Error::Parse { line: k + 1, reason };
        let (key, value) = row.split_once(':').ok_or_else(|| err("expected `key: value`".into()))?;
        let value = value.trim().to_string();
        match key.trim() {
            "n" => n = Some(value.parse().map_err(|_| err(format!("bad n {value:?}")))?),
            "phi" => phi = Some(value),
            "axis" => axis = Some(value),
            other => return Err(err(format!("unknown key {other:?}"))),
        }
    }
    Ok((n, phi, axis))
}

fn build(what: BuildKind, out: &OutputArgs, seed: u64) -> Outcome {
    let c = match what {
        BuildKind::Grassmannian { n } => grassmannian(n)?,
        BuildKind::Veronesian { k } => veronesian(k)?,
        BuildKind::Perspective { n, phi, axis, config } => {
            let (mut fn_, mut fphi, mut faxis) = (None, None, None);
            let base = match &config {
                Some(path) => {
                    (fn_, fphi, faxis) = read_build_file(path)?;
                    path.parent().map(Path::to_path_buf).unwrap_or_default()
                }
                None => PathBuf::from("."),
            };
            let n = n.or(fn_);
            let phi = phi.or(fphi).ok_or_else(|| Failure::Domain("no phi given".into()))?;
            let axis = axis.or(faxis).ok_or_else(|| Failure::Domain("no axis given".into()))?;
            let phi = parse_phi(&phi, n)?;
            let n = n.unwrap_or(phi.n());
            if phi.n() != n {
                return Err(Failure::Domain(format!("phi acts on I_{}, but n = {n}", phi.n())));
            }
            let axis = parse_axis(&axis, n, &base)?;
            perspective(n, &Skew::from_phi(&phi), &axis)?.config
        }
    };
    let c = if out.shuffle {
        let mut f: Vec<PointId> = c.points().collect();
        f.shuffle(&mut StdRng::seed_from_u64(seed));
        c.relabel(&f)?
    } else {
        c
    };
    let text = match out.format {
        Format::Psts => write_psts(&c),
        Format::Json => write_json(&c),
    };
    Ok(emit(&text, out.output.as_deref())?)
}

fn names(c: &Config, ps: &[PointId]) -> String {
    ps.iter().map(|&p| c.display_point(p)).collect::<Vec<_>>().join(" ")
}

fn analyze(args: &AnalyzeArgs) -> Outcome {
    let c = read_config(&args.file)?;
    let report = c.validate();
    if !report.is_ok() {
        println!("{report}");
        return Err(Failure::Negative);
    }
    let params = c.parameters()?;
    println!("valid partial Steiner triple system {params}");
    if let Some(n) = params.binomial_n {
        println!("binomial with n = {n}");
    }
    if args.certificate {
        println!("certificate {}", canonical_form(&c)?.digest());
    }
    if let Some(m) = args.cliques {
        let found = enumerate_free_cliques(&c, m);
        println!("{} free K{m}", found.len());
        for q in &found {
            println!("  {}", names(&c, &q.vertices));
        }
    }
    if args.aut {
        let g = automorphism_group(&c)?;
        println!("|Aut| = {}", g.order);
        for gen in &g.generators {
            let moved: Vec<String> = gen
                .iter()
                .enumerate()
                .filter(|&(x, &y)| x != y.index())
                .map(|(x, &y)| format!("{}->{}", c.display_point(PointId::from(x)), c.display_point(y)))
                .collect();
            println!("  generator: {}", moved.join(" "));
        }
    }
    if args.stars || args.cross.is_some() {
        let m = recover_perspective(&c)?;
        println!("perspective with n = {}, skew {}", m.n(), m.skew);
        if args.stars {
            let stars = star_clique_indices_brute(&m);
            println!("free G_(i) for i in {stars:?}");
            match reperspective(&m) {
                Ok(r) => println!("re-perspective: rho = {}, rho0 = {}", r.rho, r.rho0),
                Err(e) => println!("re-perspective: {e}"),
            }
            if let Ok(d) = stp_diagram(&m) {
                println!("STP diagram around i0 = {}", d.i0);
                for row in &d.row_labels {
                    println!("  {}", row.join(" "));
                }
            }
        }
        if let Some(k) = args.cross {
            println!("Cross({k}) holds: {}", cross_predicate(&m, k)?);
        }
    }
    Ok(())
}

fn iso(first: &Path, second: &Path) -> Outcome {
    let (c1, c2) = (read_config(first)?, read_config(second)?);
    c1.ensure_valid()?;
    c2.ensure_valid()?;
    match are_isomorphic(&c1, &c2) {
        Some(f) => {
            let mut text = String::from("isomorphic\n");
            for (x, y) in f.iter().enumerate() {
                text += &format!("{} -> {}\n", c1.display_point(PointId::from(x)), c2.display_point(*y));
            }
            Ok(emit(&text, None)?)
        }
        None => {
            println!("not isomorphic");
            Err(Failure::Negative)
        }
    }
}

fn classify(golden: bool, summary: Option<&Path>, table: bool) -> Outcome {
    let report = classify_all();
    if table {
        print!("{}", report.table());
    } else {
        println!(
            "{} classes; two free K5 (f>=2): {}; three or more (f>=2): {}",
            report.classes.len(),
            report.class_count_two_k5,
            report.class_count_three_plus
        );
    }
    if let Some(path) = summary {
        fs::write(path, serde_json::to_string_pretty(&report).map_err(Error::from)? + "\n")
            .map_err(Error::from)?;
    }
    if golden {
        let verdicts = verify_published(&report);
        for v in &verdicts {
            println!("{v}");
        }
        if verdicts.iter().any(|v| !v.pass) {
            return Err(Failure::Negative);
        }
    }
    Ok(())
}

fn export(args: &ExportArgs) -> Outcome {
    let c = read_config(&args.file)?;
    c.ensure_valid()?;
    let text = if args.dot {
        write_dot(&c)
    } else if args.json {
        write_json(&c)
    } else if args.psts {
        write_psts(&c)
    } else if args.certificate {
        write_certificate(&canonical_form(&c)?)
    } else {
        if c.labels().is_none() {
            return Err(Failure::Domain("--stp needs a labelled perspective (p, a<i>, b<i>, c{i,j})".into()));
        }
        let m = recover_perspective(&c)?;
        write_stp_dot(&stp_diagram(&m)?, &m.config)
    };
    Ok(emit(&text, args.output.as_deref())?)
}
