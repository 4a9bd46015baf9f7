use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use glinf_core::fmodule::{dual_reduction, FModuleSpec, Setup};
use glinf_core::pieri::{PieriElement, Window};
use glinf_core::profile::{validate_profile, WeightProfile};
use glinf_core::structure::{
    analyze_dual, constituents, filtration_layers, hasse_dot, linked, structure_report_in,
};
use glinf_core::Error as CoreError;
use glinf_oracle::exhaustion::Exhaustion;
use glinf_oracle::harness::{render_rows, run_criterion, HarnessConfig};
use glinf_oracle::model::{SizeBounds, COMPILED_MAX_BOXES, COMPILED_MAX_RANK};
use glinf_oracle::OracleError;

#[derive(Parser, Debug)]
#[command(name = "glinf", about = "Pieri constituents, linkage and Loewy data for gl(∞) tensor modules")]
struct Cli {
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Tail classes shown on each side; defaults to the module degree.
    #[arg(long, global = true)]
    depth: Option<u64>,
    #[arg(long, global = true)]
    max_rank: Option<usize>,
    #[arg(long, global = true)]
    max_boxes: Option<u64>,
    #[arg(long, global = true, default_value_t = 4)]
    workers: usize,
    /// Output format; json by default, dot for the dot command.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structure report for the module.
    Analyze,
    /// Pieri constituents inside the window.
    Pieri,
    /// Whether ν and γ lie in the same linkage class.
    Linked {
        #[arg(long)]
        nu: String,
        #[arg(long)]
        gamma: String,
    },
    /// Linkage filtration layers inside the window.
    Layers,
    /// First steps of the exhaustion.
    Exhaust {
        #[arg(long, default_value_t = 3)]
        steps: usize,
    },
    /// Hasse diagram of the window constituents.
    Dot,
    /// Run the verification harness.
    Verify {
        /// Comma separated criterion numbers; all by default.
        #[arg(long, value_delimiter = ',')]
        criterion: Vec<u8>,
    },
}

#[derive(Serialize, Deserialize)]
struct InputDoc {
    profile: WeightProfile,
    module: FModuleSpec,
}

enum Failure {
    Mismatch(String),
    Invalid(String),
    Unsupported(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Mismatch(_) => 1,
            Failure::Invalid(_) => 2,
            Failure::Unsupported(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Mismatch(m) | Failure::Invalid(m) | Failure::Unsupported(m) => m,
        }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        match e {
            e @ CoreError::UnsupportedHypothesis(_) => Failure::Unsupported(e.to_string()),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Core(c) => c.into(),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(doc) => {
            print!("{doc}");
            if !doc.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("glinf: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn bounds(cli: &Cli) -> Result<SizeBounds, Failure> {
    let mut b = SizeBounds::default();
    if let Some(r) = cli.max_rank {
        if r == 0 || r > COMPILED_MAX_RANK {
            return Err(Failure::Invalid(format!("--max-rank must be in 1..={COMPILED_MAX_RANK}")));
        }
        b.max_rank = r;
    }
    if let Some(m) = cli.max_boxes {
        if m > COMPILED_MAX_BOXES {
            return Err(Failure::Invalid(format!("--max-boxes must be at most {COMPILED_MAX_BOXES}")));
        }
        b.max_boxes = m;
    }
    if cli.workers == 0 {
        return Err(Failure::Invalid("--workers must be positive".into()));
    }
    Ok(b)
}

fn load(cli: &Cli) -> Result<InputDoc, Failure> {
    let path = cli.input.as_ref().ok_or_else(|| Failure::Invalid("--input is required".into()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Invalid(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Invalid(format!("malformed input {}: {e}", path.display())))
}

/// Dual specs are answered on the negated profile.
fn setup_of(doc: &InputDoc) -> Result<Setup, Failure> {
    if doc.module.is_dual() {
        let (profile, primal) = dual_reduction(&doc.profile, doc.module)?;
        Ok(Setup::new(profile, primal)?)
    } else {
        Ok(Setup::new(validate_profile(doc.profile.clone())?, doc.module)?)
    }
}

fn window(cli: &Cli, setup: &Setup) -> Window {
    cli.depth.map_or_else(|| Window::default_for(setup), Window::new)
}

fn element(label: &str, s: &str) -> Result<PieriElement, Failure> {
    serde_json::from_str(s).map_err(|e| Failure::Invalid(format!("--{label}: {e}")))
}

fn to_json<T: Serialize>(v: &T) -> Outcome {
    serde_json::to_string_pretty(v).map_err(|e| Failure::Invalid(e.to_string()))
}

fn format(cli: &Cli) -> Format {
    match (&cli.command, cli.format) {
        (_, Some(f)) => f,
        (Command::Dot, None) => Format::Dot,
        (_, None) => Format::Json,
    }
}

fn no_dot(cli: &Cli) -> Result<(), Failure> {
    if cli.format == Some(Format::Dot) {
        return Err(Failure::Invalid("--format dot is only available for the dot command".into()));
    }
    Ok(())
}

fn text_value(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn run(cli: &Cli) -> Outcome {
    let b = bounds(cli)?;
    match &cli.command {
        Command::Verify { criterion } => {
            no_dot(cli)?;
            verify(cli, b, criterion)
        }
        Command::Analyze => {
            no_dot(cli)?;
            let doc = load(cli)?;
            let report = if doc.module.is_dual() {
                if cli.depth.is_some() {
                    eprintln!("glinf: --depth is ignored for dual modules");
                }
                analyze_dual(&doc.profile, doc.module)?
            } else {
                let setup = setup_of(&doc)?;
                structure_report_in(&setup, &window(cli, &setup))?
            };
            match format(cli) {
                Format::Text => {
                    let v = serde_json::to_value(&report).map_err(|e| Failure::Invalid(e.to_string()))?;
                    let obj = v.as_object().expect("report is an object");
                    Ok(obj.iter().map(|(k, v)| format!("{k}: {}\n", text_value(v))).collect())
                }
                _ => to_json(&report),
            }
        }
        Command::Pieri => {
            no_dot(cli)?;
            let doc = load(cli)?;
            let setup = setup_of(&doc)?;
            let elems = constituents(&setup, &window(cli, &setup))?;
            match format(cli) {
                Format::Text => Ok(elems.iter().map(|e| format!("{e}\n")).collect()),
                _ => to_json(&elems),
            }
        }
        Command::Linked { nu, gamma } => {
            no_dot(cli)?;
            let doc = load(cli)?;
            let setup = setup_of(&doc)?;
            let (nu, gamma) = (element("nu", nu)?, element("gamma", gamma)?);
            let ans = linked(&setup, &nu, &gamma)?;
            match format(cli) {
                Format::Text => Ok(format!("{ans}\n")),
                _ => to_json(&json!({ "nu": nu, "gamma": gamma, "linked": ans })),
            }
        }
        Command::Layers => {
            no_dot(cli)?;
            let doc = load(cli)?;
            let setup = setup_of(&doc)?;
            let layers = filtration_layers(&setup, &window(cli, &setup))?;
            match format(cli) {
                Format::Text => Ok(layers
                    .iter()
                    .map(|l| {
                        let ms: Vec<String> = l.members.iter().map(|e| e.to_string()).collect();
                        format!("{}\t{}\n", l.rank, ms.join(" "))
                    })
                    .collect()),
                _ => to_json(&layers),
            }
        }
        Command::Exhaust { steps } => {
            no_dot(cli)?;
            let doc = load(cli)?;
            let setup = setup_of(&doc)?;
            let ex = Exhaustion::new(&setup, steps + 1)?;
            match format(cli) {
                Format::Text => Ok(ex
                    .steps
                    .iter()
                    .enumerate()
                    .map(|(i, s)| {
                        format!(
                            "{}\t{:?}\t{}\t|X|={}\t|Z|={}\t|X-|={}\t|X+|={}\n",
                            i + 1,
                            s.kind,
                            s.class,
                            s.x.len(),
                            s.z.len(),
                            s.x_minus.len(),
                            s.x_plus.len()
                        )
                    })
                    .collect()),
                _ => to_json(&json!({ "levels": ex.levels, "steps": ex.steps })),
            }
        }
        Command::Dot => {
            let doc = load(cli)?;
            let setup = setup_of(&doc)?;
            let dot = hasse_dot(&setup, &window(cli, &setup))?;
            match format(cli) {
                Format::Json => to_json(&json!({ "dot": dot })),
                _ => Ok(dot),
            }
        }
    }
}

fn verify(cli: &Cli, bounds: SizeBounds, only: &[u8]) -> Outcome {
    if let Some(bad) = only.iter().find(|k| !(1..=8).contains(*k)) {
        return Err(Failure::Invalid(format!("no criterion {bad}; criteria are 1..=8")));
    }
    let cfg = HarnessConfig { bounds, workers: cli.workers, ..Default::default() };
    let ks: Vec<u8> = if only.is_empty() { (1..=8).collect() } else { only.to_vec() };
    let reports: Vec<_> = ks.iter().map(|&k| run_criterion(k, &cfg)).collect();
    let out = match format(cli) {
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                s.push_str(&r.summary_line());
                s.push('\n');
                let bad: Vec<_> = r.failures().cloned().collect();
                if !bad.is_empty() {
                    s.push_str(&render_rows(&bad));
                }
            }
            s
        }
        _ => to_json(&reports)?,
    };
    let failed: Vec<u8> = reports.iter().filter(|r| !r.passed()).map(|r| r.criterion).collect();
    if failed.is_empty() {
        Ok(out)
    } else {
        print!("{out}");
        if !out.ends_with('\n') {
            println!();
        }
        Err(Failure::Mismatch(format!("verification mismatch in criteria {failed:?}")))
    }
}
