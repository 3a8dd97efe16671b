use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use adelgr::adelic::{build_point, immediate_successor, normalize, same_fiber};
use adelgr::bispectral::{bispectral_data, verify_bispectral};
use adelgr::error::Error;
use adelgr::io;
use adelgr::pipeline::{default_golden_dir, run_example, EXAMPLE_NAMES};
use adelgr::props::{selftest, DEFAULT_SEED};
use adelgr::rational::{embed_iota, is_rational_point, perp_of_kernel, PairingContext};
use adelgr::report::{Format, Report};
use adelgr::scalar::{parse_q, Q};
use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "adelgr", version, about = "Exact computations in adelic and rational Grassmannians")]
struct Cli {
    /// Report format
    #[arg(long, value_enum, global = true, default_value_t = Fmt::Text)]
    format: Fmt,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fmt {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Algebra files: validation and the radical
    Algebra {
        #[command(subcommand)]
        cmd: AlgebraCmd,
    },
    /// Points of the decorated adelic Grassmannian
    Point {
        #[command(subcommand)]
        cmd: PointCmd,
    },
    /// Orthogonal complement of a kernel inside R[z]/(h)
    Perp {
        #[arg(long)]
        kernel: PathBuf,
        /// Pairing context as alpha:N pairs, e.g. 0:2,1:3
        #[arg(long, value_delimiter = ',')]
        context: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Checks on stored data
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
    /// Run a worked example against its golden values
    Examples {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(EXAMPLE_NAMES))]
        name: String,
        /// Rewrite the golden file from the current results
        #[arg(long)]
        bless: bool,
        #[arg(long)]
        golden_dir: Option<PathBuf>,
    },
    /// Seeded property suites
    Selftest {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum AlgebraCmd {
    Check { file: PathBuf },
    Radical { file: PathBuf },
}

#[derive(Subcommand)]
enum PointCmd {
    Build {
        /// Overrides the kernel file's algebra
        #[arg(long)]
        algebra: Option<PathBuf>,
        #[arg(long)]
        kernel: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    Normalize {
        file: PathBuf,
    },
    Successor {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        gamma: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    SameFiber {
        a: PathBuf,
        b: PathBuf,
    },
    Embed {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    Bispectral { file: PathBuf },
}

fn base(p: &Path) -> Option<&Path> {
    p.parent()
}

fn read(p: &Path) -> Result<String> {
    std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
}

/// Writes a payload to `out`, or stdout when no file is given.
fn emit_payload(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_qs(v: &[String]) -> Result<Vec<Q>> {
    v.iter()
        .map(|s| parse_q(s).map_err(|e| anyhow!("{s:?}: {e}")))
        .collect()
}

fn parse_context(v: &[String]) -> Result<Option<PairingContext>> {
    if v.is_empty() {
        return Ok(None);
    }
    let mut m = BTreeMap::new();
    for item in v {
        let (a, n) = item
            .rsplit_once(':')
            .ok_or_else(|| anyhow!("context entry {item:?} is not alpha:N"))?;
        let a = parse_q(a).map_err(|e| anyhow!("{item:?}: {e}"))?;
        let n: usize = n.trim().parse().with_context(|| format!("{item:?}"))?;
        m.insert(a, n);
    }
    Ok(Some(PairingContext::from_map(&m)?))
}

fn run(cli: &Cli) -> Result<Report> {
    match &cli.cmd {
        Cmd::Algebra { cmd } => match cmd {
            AlgebraCmd::Check { file } => {
                let name = file.file_name().map_or("algebra".into(), |s| s.to_string_lossy().into_owned());
                match io::parse_algebra(&name, &read(file)?) {
                    Ok(a) => Ok(a.verify_idempotent_family()),
                    Err(e) => Ok(Report::check("algebra file", false, e.to_string())),
                }
            }
            AlgebraCmd::Radical { file } => {
                let alg = io::resolve_algebra(&json!(file.to_string_lossy()), None)?;
                let rad: Vec<String> = alg.radical().iter().map(|e| alg.fmt_elem(e)).collect();
                let mut r = Report::new(format!("radical of {}", alg.name));
                r.leaf(
                    "basis",
                    true,
                    if rad.is_empty() { "0 (semisimple)".into() } else { rad.join(", ") },
                );
                r.leaf("dimension", true, rad.len().to_string());
                let nil = alg.radical_nilpotency();
                r.leaf(
                    "nilpotent",
                    nil.is_some(),
                    nil.map_or("radical is not nilpotent".into(), |k| format!("J^{k} = 0")),
                );
                Ok(r)
            }
        },
        Cmd::Point { cmd } => point(cmd),
        Cmd::Perp {
            kernel,
            context,
            output,
        } => {
            let (alg, v) = io::parse_kernel(&read(kernel)?, base(kernel))?;
            let ctx = match parse_context(context)? {
                Some(c) => c,
                None => PairingContext::for_kernel(&v)?,
            };
            let pm = perp_of_kernel(&alg, &v, &ctx)?;
            let ctx_map: BTreeMap<String, usize> =
                ctx.as_map().iter().map(|(a, n)| (a.to_string(), *n)).collect();
            let out = json!({
                "algebra": io::algebra_to_value(&alg),
                "context": ctx_map,
                "h": io::poly_to_value(&ctx.h),
                "basis": pm.basis.iter().map(io::alg_poly_to_value).collect::<Vec<_>>(),
            });
            emit_payload(output, &io::pretty(&out))?;
            let mut r = Report::new("perp");
            r.leaf(
                "dimension",
                true,
                format!("dim_Q V^perp = {} inside R[z]/({})", pm.basis.len(), ctx.h),
            );
            Ok(r)
        }
        Cmd::Verify {
            cmd: VerifyCmd::Bispectral { file },
        } => {
            let pt = io::parse_point(&read(file)?, base(file))?;
            let bd = bispectral_data(&pt.alg, &pt.op, &pt.certificate)?;
            Ok(verify_bispectral(&pt.alg, &bd.p_prime, &bd.q_prime, &bd.g, &bd.h, &bd.l)?)
        }
        Cmd::Examples {
            name,
            bless,
            golden_dir,
        } => {
            let dir = golden_dir.clone().unwrap_or_else(default_golden_dir);
            Ok(run_example(name, &dir, *bless)?)
        }
        Cmd::Selftest { seed } => Ok(selftest(*seed)),
    }
}

fn point(cmd: &PointCmd) -> Result<Report> {
    match cmd {
        PointCmd::Build {
            algebra,
            kernel,
            output,
        } => {
            let mut v: Value = serde_json::from_str(&read(kernel)?)
                .with_context(|| format!("parsing {}", kernel.display()))?;
            if let Some(a) = algebra {
                v["algebra"] = json!(std::fs::canonicalize(a)
                    .with_context(|| format!("{}", a.display()))?
                    .to_string_lossy());
            }
            let (alg, k) = io::parse_kernel(&v.to_string(), base(kernel))?;
            match build_point(&alg, &k) {
                Ok(pt) => {
                    emit_payload(output, &io::point_to_json(&pt))?;
                    Ok(Report::check("point built", true, format!("order {}", pt.order())))
                }
                Err(Error::Rejected { reason, detail }) => {
                    Ok(Report::check(format!("kernel rejected: {reason}"), false, detail))
                }
                Err(e) => Err(e.into()),
            }
        }
        PointCmd::Normalize { file } => {
            let pt = io::parse_point(&read(file)?, base(file))?;
            let n = normalize(&pt);
            emit_payload(&None, &io::pretty(&json!({ "normalizer": io::alg_poly_to_value(&n.normalizer) })))?;
            Ok(Report::check(
                "normalizer",
                true,
                pt.alg.fmt_poly(&n.normalizer, "z"),
            ))
        }
        PointCmd::Successor {
            file,
            gamma,
            output,
        } => {
            let pt = io::parse_point(&read(file)?, base(file))?;
            let g = parse_qs(gamma)?;
            let s = immediate_successor(&pt, &g)?;
            emit_payload(output, &io::point_to_json(&s))?;
            Ok(Report::check("successor built", true, format!("order {}", s.order())))
        }
        PointCmd::SameFiber { a, b } => {
            let pa = io::parse_point(&read(a)?, base(a))?;
            let pb = io::parse_point(&read(b)?, base(b))?;
            let same = same_fiber(&pa, &pb)?;
            Ok(Report::check(
                "same fiber",
                same,
                if same { "" } else { "P1 g2(d) differs from P2 g1(d)" },
            ))
        }
        PointCmd::Embed { file, output } => {
            let pt = io::parse_point(&read(file)?, base(file))?;
            let rp = embed_iota(&normalize(&pt))?;
            emit_payload(output, &io::rational_point_to_json(&rp))?;
            Ok(is_rational_point(&rp))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format {
        Fmt::Text => Format::Text,
        Fmt::Json => Format::Json,
    };
    // payloads go to stdout when no -o is given, so reports then go to stderr
    let to_stderr = match &cli.cmd {
        Cmd::Perp { output, .. } => output.is_none(),
        Cmd::Point { cmd } => match cmd {
            PointCmd::Build { output, .. }
            | PointCmd::Successor { output, .. }
            | PointCmd::Embed { output, .. } => output.is_none(),
            PointCmd::Normalize { .. } => true,
            PointCmd::SameFiber { .. } => false,
        },
        _ => false,
    };
    match run(&cli) {
        Ok(report) => {
            let text = report.emit(format);
            if to_stderr {
                eprint!("{text}");
            } else {
                print!("{text}");
                if format == Format::Json {
                    println!();
                }
            }
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
