use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use forge_core::autos::{self, SearchSpec};
use forge_core::cohomology;
use forge_core::corpus::{self, CorpusEntry};
use forge_core::harness::{self, Caps, Report, Status, REGISTRY};
use forge_core::{structure, ForgeError, PcGroup, PcPresentation, Subgroup};

#[derive(Parser)]
#[command(name = "forge", version, about = "Finite p-group workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the structural profile of a group (file path or built-in id).
    Inspect { group: String },
    /// Run one check on built-in groups.
    Verify {
        check_id: String,
        /// Restrict to one built-in id.
        #[arg(long)]
        group: Option<String>,
        /// Search cap (group order).
        #[arg(long)]
        cap: Option<u64>,
        #[arg(long)]
        json: Option<PathBuf>,
        /// Zero timings for byte-stable output.
        #[arg(long)]
        deterministic: bool,
    },
    /// Run every check on the built-in corpus or a manifest.
    VerifyAll {
        #[arg(long)]
        manifest: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
        /// Keep only groups of this prime.
        #[arg(long)]
        prime: Option<u32>,
        #[arg(long)]
        cap: Option<u64>,
        #[arg(long)]
        deterministic: bool,
    },
    /// H⁰ and H¹ of G/N acting on Z(N).
    Cohomology {
        group: String,
        /// Normal generators, comma separated, e.g. `x2,x3^2`.
        #[arg(long)]
        normal: String,
    },
    /// Automorphisms of order p fixing a characteristic subgroup pointwise.
    SearchAutos {
        group: String,
        #[arg(long, value_enum, default_value = "frattini")]
        fix: Fix,
        /// Required automorphism order; must equal p.
        #[arg(long)]
        order: Option<u64>,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Print the pc presentation of a group in file format.
    Export { group: String },
    /// List check ids and built-in groups.
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fix {
    Frattini,
    Omega1,
    None,
}

const USAGE: u8 = 2;

fn load_group(spec: &str) -> Result<PcGroup> {
    let path = Path::new(spec);
    if path.exists() {
        let text = fs::read_to_string(path).with_context(|| format!("reading {spec}"))?;
        let pres = PcPresentation::parse(&text)?;
        return Ok(PcGroup::new(pres)?);
    }
    Ok(corpus::builtin_by_id(spec).with_context(|| format!("{spec} is neither a file nor a built-in id"))?.group)
}

fn caps_with(cap: Option<u64>) -> Caps {
    let mut caps = Caps::default();
    if let Some(c) = cap {
        caps.search = c;
    }
    caps
}

fn emit(out: &mut impl Write, report: Report, json: Option<&Path>, deterministic: bool) -> Result<u8> {
    let report = if deterministic { report.without_timing() } else { report };
    for r in &report.results {
        let tag = match r.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skip => "skip",
            Status::Refused => "refused",
        };
        let note = r.counterexample.as_deref().or(r.detail.as_deref()).unwrap_or("");
        writeln!(out, "{:<8} {:<20} {:<14} {note}", tag, r.check_id, r.group_id)?;
    }
    let s = &report.summary;
    writeln!(out, "{} pass, {} fail, {} skip, {} refused", s.pass, s.fail, s.skip, s.refused)?;
    if let Some(path) = json {
        fs::write(path, report.to_json() + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(report.exit_code() as u8)
}

fn run(cli: Cli) -> Result<u8> {
    let out = &mut io::stdout().lock();
    match cli.command {
        Command::Inspect { group } => {
            let g = load_group(&group)?;
            writeln!(out, "{}", serde_json::to_string_pretty(&structure::profile(&g))?)?;
            Ok(0)
        }
        Command::Verify { check_id, group, cap, json, deterministic } => {
            let entries = match group {
                Some(id) => vec![corpus::builtin_by_id(&id)?],
                None => corpus::builtin()?,
            };
            let results = harness::run_check(&check_id, &entries, &caps_with(cap))?;
            emit(out, Report::new(results), json.as_deref(), deterministic)
        }
        Command::VerifyAll { manifest, json, prime, cap, deterministic } => {
            let mut entries: Vec<CorpusEntry> = match manifest {
                Some(path) => corpus::load_manifest(&path)?,
                None => corpus::builtin()?,
            };
            if let Some(p) = prime {
                entries.retain(|e| e.group.prime() == p);
            }
            emit(out, harness::run_all(&entries, &caps_with(cap)), json.as_deref(), deterministic)
        }
        Command::Cohomology { group, normal } => {
            let g = load_group(&group)?;
            let gens = normal.split(',').map(|w| g.parse_element(w.trim())).collect::<forge_core::Result<Vec<_>>>()?;
            let n = Subgroup::closure(&g, &gens);
            let report = cohomology::cohomology_report(&g, &n, cohomology::COHOMOLOGY_CAP)?;
            writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
            Ok(0)
        }
        Command::SearchAutos { group, fix, order, cap } => {
            let g = load_group(&group)?;
            let p = g.prime() as u64;
            if let Some(o) = order {
                if o != p {
                    let msg = format!("only automorphisms of order p = {p} are searched");
                    return Err(ForgeError::InvalidArgument(msg).into());
                }
            }
            let s = match fix {
                Fix::Frattini => structure::frattini(&g),
                Fix::Omega1 => structure::omega1(&structure::center(&g))?,
                Fix::None => Subgroup::trivial(&g),
            };
            let spec = SearchSpec { fix: Some(s.clone()), coset: None, order_p: true };
            let label = match fix {
                Fix::Frattini => "frattini",
                Fix::Omega1 => "omega1-center",
                Fix::None => "trivial",
            };
            let found = autos::search_automorphisms(&g, &spec, cap.unwrap_or(autos::SEARCH_CAP))?;
            let witnesses = found
                .iter()
                .map(|a| autos::AutWitness::certify(a, &s, label, "search"))
                .collect::<forge_core::Result<Vec<_>>>()?;
            writeln!(out, "{}", serde_json::to_string_pretty(&witnesses)?)?;
            Ok(0)
        }
        Command::Export { group } => {
            write!(out, "{}", load_group(&group)?.presentation().serialize())?;
            Ok(0)
        }
        Command::List => {
            for c in REGISTRY {
                writeln!(out, "{:<20} {}", c.id, c.summary)?;
            }
            writeln!(out)?;
            for e in corpus::builtin()? {
                writeln!(out, "{:<14} order {:<4} {}", e.id, e.group.order(), e.provenance)?;
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        // output piped into a closed reader
        Err(e) if e.downcast_ref::<io::Error>().is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe) => {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let usage = matches!(
                e.downcast_ref::<ForgeError>(),
                Some(ForgeError::CapExceeded { .. } | ForgeError::UnknownCheck(_) | ForgeError::InvalidArgument(_))
            );
            ExitCode::from(if usage { USAGE } else { 1 })
        }
    }
}
