mod checks;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use knoerrer::endomorphism::EndAlgebra;
use knoerrer::equivalence::{compare, k0_singularity, local_fd_obstruction, parse_list, KeptSet, Singularity};
use knoerrer::fractions::{dual, expand, lambda_seq, point_diagram, t_map, CoprimePair, HJSeq};
use knoerrer::homology::Homology;
use knoerrer::monomial::KappaAlgebra;
use knoerrer::presentations::{
    knoerrer_presentation, lambda_presentation, recon_presentation, riemenschneider_presentation, AlgebraKind,
};
use rayon::prelude::*;
use serde_json::json;

use checks::{CheckConfig, Report};

#[derive(Parser)]
#[command(name = "knoerrer", version, about = "Cyclic quotient surface singularities: fractions, algebras, checks")]
struct Cli {
    /// Write the primary output to a file in this directory instead of stdout.
    #[arg(long, global = true, env = "KNOERRER_OUT")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Args)]
struct PairArgs {
    r: u64,
    a: u64,
}

impl PairArgs {
    fn pair(&self) -> Result<CoprimePair> {
        Ok(CoprimePair::new(self.r, self.a)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Continued fraction data: expansion, dual, lambda sequence, t-map.
    Fraction {
        #[command(flatten)]
        pair: PairArgs,
        /// Also print the point diagram.
        #[arg(long)]
        diagram: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Presentation of one of the four algebras.
    Present {
        algebra: AlgebraKind,
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run the named checks for one pair.
    Verify {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        /// Comma list of checks or aliases (dim, ideals, phi, ext, gldim, corner, all).
        #[arg(long, default_value = "all")]
        checks: String,
        /// Perturb the expected value of the named check.
        #[arg(long)]
        inject_fault: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Ext table and global dimension of the endomorphism algebra.
    Ext {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Indecomposable monomial ideals and their quotient modules.
    Ideals {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Monomial diagram as DOT.
    Diagram {
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Compare two partial resolutions given as --alpha/--keep pairs.
    Equiv {
        /// Chain entries, e.g. 4,2,3 (give twice).
        #[arg(long, num_args = 1, required = true)]
        alpha: Vec<String>,
        /// Kept vertices, e.g. 0,2 (give twice).
        #[arg(long, num_args = 1, required = true)]
        keep: Vec<String>,
    },
    /// Grothendieck group of the singularity category and the local obstruction.
    K0 {
        /// cyclic R A | d N | e N | dihedral N M
        kind: String,
        params: Vec<u64>,
    },
    /// Run checks over a range of pairs.
    Sweep {
        #[arg(long, default_value_t = 2)]
        rmin: u64,
        #[arg(long)]
        rmax: u64,
        /// Only pairs with this a.
        #[arg(long)]
        a: Option<u64>,
        #[arg(long, default_value = "all")]
        checks: String,
        /// Largest r for the Ext and global dimension checks.
        #[arg(long, default_value_t = 30)]
        rmax_ext: u64,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        inject_fault: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

struct Output {
    name: String,
    body: String,
    success: bool,
}

impl Output {
    fn ok(name: impl Into<String>, body: String) -> Self {
        Output { name: name.into(), body, success: true }
    }
}

fn seq_text(s: &[u64]) -> String {
    serde_json::to_string(s).expect("integers serialise")
}

fn fraction(pair: CoprimePair, diagram: bool, format: Format) -> Result<Output> {
    let alpha = expand(pair);
    let beta = dual(&alpha);
    let lambda = lambda_seq(&alpha)?.values;
    let t = t_map(&alpha);
    let dia = point_diagram(&alpha).render_ascii();
    let name = format!("fraction_{}_{}", pair.r(), pair.a());
    let body = match format {
        Format::Json => {
            let mut v = json!({
                "pair": [pair.r(), pair.a()],
                "alpha": alpha,
                "beta": beta,
                "lambda": lambda,
                "t": t,
            });
            if diagram {
                v["diagram"] = dia.into();
            }
            format!("{}\n", serde_json::to_string_pretty(&v)?)
        }
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "pair {pair}")?;
            writeln!(s, "alpha {alpha}")?;
            writeln!(s, "beta {beta}")?;
            writeln!(s, "lambda {}", seq_text(&lambda))?;
            writeln!(s, "t {}", serde_json::to_string(&t)?)?;
            if diagram {
                s.push_str(&dia);
            }
            s
        }
        Format::Dot => bail!("fraction has no dot rendering"),
    };
    Ok(Output::ok(name, body))
}

fn present(algebra: AlgebraKind, pair: CoprimePair, format: Format) -> Result<Output> {
    let alpha = expand(pair);
    let name = format!("{}_{}_{}", algebra.name(), pair.r(), pair.a());
    let body = if algebra == AlgebraKind::Riemenschneider {
        let p = riemenschneider_presentation(pair);
        match format {
            Format::Text => p.to_text(),
            Format::Json => p.to_json() + "\n",
            Format::Dot => p.to_dot(),
        }
    } else {
        let p = match algebra {
            AlgebraKind::Lambda => lambda_presentation(&alpha),
            AlgebraKind::Recon => recon_presentation(&alpha),
            _ => knoerrer_presentation(pair),
        };
        match format {
            Format::Text => p.to_text(),
            Format::Json => p.to_json() + "\n",
            Format::Dot => p.to_dot(),
        }
    };
    Ok(Output::ok(name, body))
}

fn report_text(r: &Report) -> String {
    let mut s = format!("pair {}", r.pair);
    for (k, v) in &r.checks {
        let _ = write!(s, " {k}:{v}");
    }
    s.push('\n');
    s
}

fn verify(pair: CoprimePair, cfg: &CheckConfig, format: Format) -> Result<Output> {
    let report = checks::run(pair, cfg);
    let body = match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&report.to_json())?),
        Format::Text => report_text(&report),
        Format::Dot => bail!("verify has no dot rendering"),
    };
    Ok(Output { name: format!("verify_{}_{}", pair.r(), pair.a()), body, success: report.passed() })
}

fn ext(pair: CoprimePair, depth: usize, format: Format) -> Result<Output> {
    let end = EndAlgebra::new(pair);
    let h = Homology::new(&end)?;
    let (table, gd) = h.ext_and_global_dimension(depth)?;
    let body = match format {
        Format::Json => {
            let v = json!({
                "pair": [pair.r(), pair.a()],
                "global_dimension": gd.to_string(),
                "ext": table.to_json(),
            });
            format!("{}\n", serde_json::to_string_pretty(&v)?)
        }
        Format::Text => {
            let mut s = format!("pair {pair}\nglobal dimension {gd}\n");
            for k in 0..=depth {
                writeln!(s, "Ext^{k}")?;
                for row in &table.dims[k] {
                    let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                    writeln!(s, "  {}", cells.join(" "))?;
                }
            }
            s
        }
        Format::Dot => bail!("ext has no dot rendering"),
    };
    Ok(Output::ok(format!("ext_{}_{}", pair.r(), pair.a()), body))
}

fn ideals(pair: CoprimePair, format: Format) -> Result<Output> {
    let k = KappaAlgebra::new(pair);
    let mut rows = Vec::new();
    for ideal in k.ideals() {
        let m = k.module_of(ideal.index)?;
        let ann: Vec<String> = m.annihilator_generators.iter().map(|&g| k.monomial(g).to_string()).collect();
        rows.push((ideal, ann, m.beta, m.alpha));
    }
    let body = match format {
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|(i, ann, beta, alpha)| {
                    json!({
                        "index": i.index,
                        "generator": i.generator.to_string(),
                        "dim": i.dim,
                        "annihilator": ann,
                        "beta": beta,
                        "alpha": alpha,
                    })
                })
                .collect();
            format!("{}\n", serde_json::to_string_pretty(&v)?)
        }
        Format::Text => {
            let mut s = String::new();
            for (i, ann, beta, alpha) in &rows {
                writeln!(
                    s,
                    "I{} generator {} dim {} annihilator {} beta {beta} alpha {alpha}",
                    i.index,
                    i.generator,
                    i.dim,
                    if ann.is_empty() { "0".to_string() } else { ann.join(",") }
                )?;
            }
            s
        }
        Format::Dot => bail!("ideals has no dot rendering"),
    };
    Ok(Output::ok(format!("ideals_{}_{}", pair.r(), pair.a()), body))
}

fn equiv(alpha: &[String], keep: &[String]) -> Result<Output> {
    if alpha.len() != 2 || keep.len() != 2 {
        bail!("equiv needs exactly two --alpha and two --keep values");
    }
    let cfg = |i: usize| -> Result<(HJSeq, KeptSet)> {
        let seq = HJSeq::new(parse_list(&alpha[i])?)?;
        let kept: KeptSet = keep[i].parse()?;
        Ok((seq, kept))
    };
    let (a, b) = (cfg(0)?, cfg(1)?);
    let v = compare((&a.0, &a.1), (&b.0, &b.1))?;
    let body = format!("{}\n", serde_json::to_string_pretty(&json!({
        "equivalent": v.chunk_verdict,
        "chunk_verdict": v.chunk_verdict,
        "concatenation_verdict": v.concatenation_verdict,
        "disagreement": v.disagreement,
        "left": v.left,
        "right": v.right,
    }))?);
    Ok(Output::ok("equiv", body))
}

fn k0(kind: &str, params: &[u64]) -> Result<Output> {
    let sing = match (kind, params) {
        ("cyclic", &[r, a]) => Singularity::Cyclic { r, a },
        ("d", &[n]) => Singularity::GorensteinD { n },
        ("e", &[n]) => Singularity::GorensteinE { n },
        ("dihedral", &[n, m]) => Singularity::DihedralD { n, m },
        _ => bail!("expected: cyclic R A | d N | e N | dihedral N M"),
    };
    let group = k0_singularity(sing)?;
    let obstruction = local_fd_obstruction(&group);
    let body = format!("{}\n", serde_json::to_string_pretty(&json!({
        "singularity": sing,
        "k0": group.to_string(),
        "order": group.order(),
        "group": group,
        "obstruction": obstruction,
        "verdict": obstruction.to_string(),
    }))?);
    Ok(Output::ok("k0", body))
}

fn sweep(
    rmin: u64,
    rmax: u64,
    a: Option<u64>,
    cfg: &CheckConfig,
    jobs: Option<usize>,
    format: Format,
) -> Result<Output> {
    let pairs: Vec<CoprimePair> =
        CoprimePair::enumerate(rmin, rmax).filter(|p| a.is_none_or(|a| p.a() == a)).collect();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j);
    }
    let pool = builder.build()?;
    let reports: Vec<Report> = pool.install(|| pairs.par_iter().map(|&p| checks::run(p, cfg)).collect());
    let failed = reports.iter().filter(|r| !r.passed()).count();
    let body = match format {
        Format::Json => {
            let v: Vec<_> = reports.iter().map(Report::to_json).collect();
            format!("{}\n", serde_json::to_string_pretty(&v)?)
        }
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                let status = if r.passed() { "pass".to_string() } else { format!("FAIL {}", r.failures().join(",")) };
                writeln!(s, "{:>4} {:>4} {status}", r.pair.r(), r.pair.a())?;
            }
            writeln!(s, "{} pairs, {failed} failed", reports.len())?;
            s
        }
        Format::Dot => bail!("sweep has no dot rendering"),
    };
    Ok(Output { name: "sweep".into(), body, success: failed == 0 })
}

fn extension(body: &str) -> &'static str {
    if body.starts_with('{') || body.starts_with('[') {
        "json"
    } else if body.starts_with("digraph") {
        "dot"
    } else {
        "txt"
    }
}

fn run(cli: Cli) -> Result<Output> {
    let check_config = |checks: &str, depth, rmax_ext, fault: Option<String>| -> Result<CheckConfig> {
        let checks = checks::parse_checks(checks)?;
        if let Some(f) = &fault {
            if !checks::ALL.contains(&f.as_str()) {
                bail!("unknown check {f:?} for --inject-fault");
            }
        }
        Ok(CheckConfig { checks, depth, rmax_ext, fault })
    };
    match cli.command {
        Command::Fraction { pair, diagram, format } => fraction(pair.pair()?, diagram, format),
        Command::Present { algebra, pair, format } => present(algebra, pair.pair()?, format),
        Command::Verify { pair, depth, checks, inject_fault, format } => {
            verify(pair.pair()?, &check_config(&checks, depth, None, inject_fault)?, format)
        }
        Command::Ext { pair, depth, format } => ext(pair.pair()?, depth, format),
        Command::Ideals { pair, format } => ideals(pair.pair()?, format),
        Command::Diagram { pair } => {
            let p = pair.pair()?;
            Ok(Output::ok(format!("diagram_{}_{}", p.r(), p.a()), KappaAlgebra::new(p).monomial_diagram()))
        }
        Command::Equiv { alpha, keep } => equiv(&alpha, &keep),
        Command::K0 { kind, params } => k0(&kind, &params),
        Command::Sweep { rmin, rmax, a, checks, rmax_ext, depth, jobs, inject_fault, format } => {
            let cfg = check_config(&checks, depth, Some(rmax_ext), inject_fault)?;
            sweep(rmin, rmax, a, &cfg, jobs, format)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out_dir = cli.out.clone();
    let output = match run(cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    match out_dir {
        Some(dir) => {
            let path = dir.join(format!("{}.{}", output.name, extension(&output.body)));
            let written = std::fs::create_dir_all(&dir)
                .and_then(|_| std::fs::write(&path, &output.body))
                .with_context(|| format!("writing {}", path.display()));
            if let Err(e) = written {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            println!("{}", path.display());
        }
        None => print!("{}", output.body),
    }
    if output.success {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
