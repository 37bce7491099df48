use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use nothg2::algebra::{parse, parse_infix, AlgebraicScalar};
use nothg2::contact::{CaseId, HModel};
use nothg2::correspondence::ContactDiffeo;
use nothg2::dft;
use nothg2::g2::{self, TheoremId};
use nothg2::verify::{self, manifest::correspond_reports, parse_manifest, CheckReport, Group, Manifest};
use nothg2::Error;

#[derive(Parser)]
#[command(name = "nothg2", version, about = "Exact checks for G2 contact structures from solutions of Noth's equation")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run built-in checks.
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
    /// Span solve and recovery through a map declared in a manifest.
    Correspond {
        #[arg(long)]
        map: PathBuf,
        /// Constant added to p11 on the standard side.
        #[arg(long, allow_hyphen_values = true)]
        shift: Option<String>,
        /// Use t = 1/r on the standard side.
        #[arg(long)]
        invert_fiber: bool,
        /// Which map, when the manifest declares several.
        #[arg(long)]
        name: Option<String>,
    },
    /// Print algebra data.
    Emit {
        #[command(subcommand)]
        what: EmitCmd,
    },
    /// Parse an expression and print its canonical form.
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
    },
    /// Double fibration transform.
    Dft {
        #[command(subcommand)]
        what: DftCmd,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    All,
    Noth,
    Tensors {
        #[arg(long)]
        case: CaseId,
    },
    Symmetry {
        #[arg(long)]
        theorem: TheoremId,
    },
    Diffeo {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        case: u8,
    },
    Dft,
    /// Checks declared in a manifest.
    Manifest { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
    Clock,
}

#[derive(Subcommand)]
enum EmitCmd {
    StructureConstants {
        #[arg(long, default_value = "1")]
        theorem: TheoremId,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    Roots {
        #[arg(long, default_value = "1")]
        theorem: TheoremId,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

#[derive(Subcommand)]
enum DftCmd {
    /// Identities and roundtrips; with `--h`, roundtrips of the manifest's H-models.
    Verify {
        #[arg(long, conflicts_with = "formal")]
        h: Option<PathBuf>,
        #[arg(long)]
        formal: bool,
    },
    Forward {
        #[arg(long)]
        h: Option<PathBuf>,
    },
    Inverse {
        #[arg(long)]
        h: Option<PathBuf>,
    },
}

/// Exit status: failed checks and bad input are reported differently.
enum Failure {
    Checks,
    Input(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("GSEED_THREADS").ok().and_then(|s| s.parse::<usize>().ok()).filter(|n| *n > 0) {
        // Only fails if a pool already exists, which cannot happen this early.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn emit(reports: &[CheckReport]) -> Result<(), Failure> {
    for r in reports {
        println!("{}", r.to_json());
    }
    if reports.iter().all(CheckReport::passed) {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn run_groups(groups: Vec<Group>) -> Result<(), Failure> {
    emit(&verify::run_groups(groups))
}

fn load(path: &PathBuf) -> Result<Manifest, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::parse(0, 0, format!("{}: {e}", path.display())))?;
    parse_manifest(&text)
}

fn scalar(src: &str) -> Result<AlgebraicScalar, Error> {
    let e = parse(src).or_else(|_| parse_infix(src))?;
    e.to_rational_function()?.constant_value().ok_or_else(|| Error::parse(1, 1, format!("'{src}' is not a constant")))
}

fn verify_cmd(what: VerifyCmd) -> Result<(), Failure> {
    match what {
        VerifyCmd::All => run_groups(verify::all_groups()),
        VerifyCmd::Noth => run_groups(vec![verify::noth_group()]),
        VerifyCmd::Tensors { case } => run_groups(vec![verify::tensor_group(case)]),
        VerifyCmd::Symmetry { theorem } => run_groups(vec![verify::symmetry_group(theorem)]),
        VerifyCmd::Diffeo { case } => run_groups(vec![verify::diffeo_group(case)]),
        VerifyCmd::Dft => run_groups(vec![verify::dft_group()]),
        VerifyCmd::Manifest { file } => emit(&load(&file)?.run()),
    }
}

fn correspond(map: PathBuf, shift: Option<String>, invert_fiber: bool, name: Option<String>) -> Result<(), Failure> {
    let m = load(&map)?;
    let d: &ContactDiffeo = match &name {
        Some(n) => m.maps.get(n).ok_or_else(|| Error::parse(0, 0, format!("no map '{n}' in manifest")))?,
        None if m.maps.len() == 1 => m.maps.values().next().expect("one map"),
        None => return Err(Error::parse(0, 0, format!("manifest declares {} maps; pick one with --name", m.maps.len())).into()),
    };
    let mut d = d.clone();
    if let Some(s) = shift {
        d = d.with_shift(scalar(&s)?);
    }
    if invert_fiber {
        d = d.with_inverted_fiber(true);
    }
    let mut reports = correspond_reports(&format!("correspond.{}", d.label), &d);
    reports.extend(m.run());
    reports.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    emit(&reports)
}

fn emit_cmd(what: EmitCmd) -> Result<(), Failure> {
    match what {
        EmitCmd::StructureConstants { theorem, format } => {
            let sc = g2::structure_constants(&g2::basis(theorem))?;
            let mut entries = Vec::new();
            for i in 0..sc.dim() {
                for j in i + 1..sc.dim() {
                    let terms: Vec<(String, String)> = (0..sc.dim())
                        .filter(|&k| !sc.c[i][j][k].is_zero())
                        .map(|k| (sc.labels[k].clone(), sc.c[i][j][k].to_string()))
                        .collect();
                    if !terms.is_empty() {
                        entries.push((sc.labels[i].clone(), sc.labels[j].clone(), terms));
                    }
                }
            }
            match format {
                Format::Text | Format::Clock => {
                    for (a, b, terms) in entries {
                        let rhs: Vec<String> = terms.iter().map(|(l, c)| format!("({c}) {l}")).collect();
                        println!("[{a}, {b}] = {}", rhs.join(" + "));
                    }
                }
                Format::Json => {
                    let rows: Vec<_> = entries
                        .iter()
                        .flat_map(|(a, b, terms)| terms.iter().map(move |(k, c)| json!({"i": a, "j": b, "k": k, "c": c})))
                        .collect();
                    println!("{}", json!({"theorem": theorem.as_str(), "labels": sc.labels, "brackets": rows}));
                }
            }
        }
        EmitCmd::Roots { theorem, format } => {
            let b = g2::basis(theorem);
            let sc = g2::structure_constants(&b)?;
            let kappa = g2::killing_form(&sc);
            let roots = g2::roots(&b, &sc, &kappa)?;
            match format {
                Format::Clock => print!("{}", g2::ascii_clock(&roots)),
                Format::Text => {
                    for r in &roots {
                        let ev: Vec<String> = r.eigenvalues.iter().map(|e| e.to_string()).collect();
                        println!("{} hour {:?} {:?} |a|^2 = {} ({})", r.label, r.hour, r.length, r.squared_length, ev.join(", "));
                    }
                }
                Format::Json => println!("{}", json!({"theorem": theorem.as_str(), "roots": roots})),
            }
        }
    }
    Ok(())
}

fn dft_model(h: &Option<PathBuf>) -> Result<HModel, Error> {
    match h {
        None => Ok(HModel::formal()),
        Some(p) => {
            let m = load(p)?;
            let n = m.hmodels.len();
            m.hmodels.into_values().next().filter(|_| n == 1).ok_or_else(|| {
                Error::parse(0, 0, format!("{} must declare exactly one hmodel, found {n}", p.display()))
            })
        }
    }
}

fn dft_cmd(what: DftCmd) -> Result<(), Failure> {
    match what {
        DftCmd::Verify { h: None, .. } => run_groups(vec![verify::dft_group()]),
        DftCmd::Verify { h: Some(p), .. } => {
            let m = load(&p)?;
            let reports: Vec<CheckReport> = m
                .hmodels
                .iter()
                .map(|(name, model)| {
                    verify::timed(format!("dft.roundtrip.{name}"), || {
                        let res = dft::roundtrip_check(model)?;
                        Ok(match dft::ensure_roundtrip(&res) {
                            Ok(()) => verify::Outcome::zero("0"),
                            Err(e) => verify::Outcome::from_bool(false, e),
                        })
                    })
                })
                .collect();
            emit(&reports)
        }
        DftCmd::Forward { h } => print_map(&dft::maps_for(&dft_model(&h)?)?.0),
        DftCmd::Inverse { h } => print_map(&dft::maps_for(&dft_model(&h)?)?.1),
    }
}

fn print_map(m: &nothg2::diffgeo::CoordinateMap) -> Result<(), Failure> {
    for (v, c) in m.target().coords().iter().zip(m.components()) {
        println!("{v} = {c}");
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    configure_threads();
    let r = match cli.cmd {
        Cmd::Verify { what } => verify_cmd(what),
        Cmd::Correspond { map, shift, invert_fiber, name } => correspond(map, shift, invert_fiber, name),
        Cmd::Emit { what } => emit_cmd(what),
        Cmd::Eval { expr } => parse(&expr)
            .or_else(|_| parse_infix(&expr))
            .and_then(|e| e.to_rational_function())
            .map(|f| println!("{f}"))
            .map_err(Failure::from),
        Cmd::Dft { what } => dft_cmd(what),
    };
    match r {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
