//! Command-line front end: scenario files in, reports out.
//!
//! Exit codes: 0 when every check holds, 1 for a mathematical failure
//! (a validator, certificate or battery FAIL), 2 for input errors.

pub mod commands;
pub mod expr;
pub mod scenario;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{EmaError, Result};
use crate::weyl::{WeylOptions, DEFAULT_MAX_DIM};

use commands::Outcome;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Machine,
}

#[derive(Debug, Parser)]
#[command(name = "ema-weyl", version, about = "Weyl modules for equivariant map algebras")]
pub struct Cli {
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every scenario validator.
    Validate { scenario: PathBuf },
    /// Build W(psi), or W_Γ(psi) on the canonical transversal when psi is
    /// equivariant, with its character and composition factors.
    Weyl { scenario: PathBuf, psi: String },
    /// Twist W(psi_x) for each transversal and compare.
    Twist {
        scenario: PathBuf,
        psi: String,
        #[arg(long)]
        transversal: Option<String>,
    },
    /// List the irreducible finite-dimensional classes up to a coordinate bound.
    Irreps {
        scenario: PathBuf,
        #[arg(long, default_value_t = 1)]
        bound: i64,
    },
    /// Composition multiplicities of a module expression such as
    /// "W(a) * V(b) + head(W(c))".
    Mult { scenario: PathBuf, expr: String },
    /// Hom and Ext¹ of W_Γ(psi) and its head against lower irreducibles.
    Ext {
        scenario: PathBuf,
        psi: String,
        #[arg(long, default_value_t = 3)]
        rungs: usize,
        #[arg(long)]
        bound: Option<i64>,
    },
    /// The homological characterization battery.
    Battery {
        scenario: PathBuf,
        psi: String,
        #[arg(long, default_value_t = 3)]
        rungs: usize,
        #[arg(long)]
        bound: Option<i64>,
        /// Module expression to test instead of W_Γ(psi).
        #[arg(long)]
        module: Option<String>,
    },
}

impl Command {
    fn scenario(&self) -> &Path {
        match self {
            Command::Validate { scenario }
            | Command::Weyl { scenario, .. }
            | Command::Twist { scenario, .. }
            | Command::Irreps { scenario, .. }
            | Command::Mult { scenario, .. }
            | Command::Ext { scenario, .. }
            | Command::Battery { scenario, .. } => scenario,
        }
    }

    /// The invocation with the scenario path reduced to its file name, so
    /// reports do not depend on the working directory.
    fn echo(&self) -> String {
        let file = self.scenario().file_name().map_or_else(String::new, |f| f.to_string_lossy().into_owned());
        let opt = |name: &str, v: &Option<String>| v.as_ref().map_or(String::new(), |v| format!(" --{name} {v:?}"));
        match self {
            Command::Validate { .. } => format!("validate {file}"),
            Command::Weyl { psi, .. } => format!("weyl {file} {psi}"),
            Command::Twist { psi, transversal, .. } => format!("twist {file} {psi}{}", opt("transversal", transversal)),
            Command::Irreps { bound, .. } => format!("irreps {file} --bound {bound}"),
            Command::Mult { expr, .. } => format!("mult {file} {expr:?}"),
            Command::Ext { psi, rungs, bound, .. } => {
                format!("ext {file} {psi} --rungs {rungs}{}", opt("bound", &bound.map(|b| b.to_string())))
            }
            Command::Battery { psi, rungs, bound, module, .. } => format!(
                "battery {file} {psi} --rungs {rungs}{}{}",
                opt("bound", &bound.map(|b| b.to_string())),
                opt("module", module)
            ),
        }
    }
}

/// Reads `EMA_WEYL_MAX_DIM`, the budget for PBW spaces and Weyl modules.
pub fn max_dim_from_env() -> Result<usize> {
    match std::env::var("EMA_WEYL_MAX_DIM") {
        Err(_) => Ok(DEFAULT_MAX_DIM),
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&d| d > 0)
            .ok_or_else(|| EmaError::Input(format!("EMA_WEYL_MAX_DIM must be a positive integer, got {v:?}"))),
    }
}

struct Report {
    command: String,
    scenario: Option<(String, String)>,
    lines: Vec<String>,
    result: Value,
    status: String,
    exit: i32,
}

impl Report {
    fn machine(&self) -> Value {
        json!({
            "command": self.command,
            "scenario": self.scenario.as_ref().map(|s| &s.0),
            "digest": self.scenario.as_ref().map(|s| format!("sha256:{}", s.1)),
            "result": self.result,
            "status": self.status,
            "exit": self.exit,
        })
    }

    fn render(&self, format: Format) -> String {
        let machine = serde_json::to_string_pretty(&self.machine()).expect("report serializes");
        if format == Format::Machine {
            return machine + "\n";
        }
        let mut out = vec![format!("command: {}", self.command)];
        if let Some((name, digest)) = &self.scenario {
            out.push(format!("scenario: {name}"));
            out.push(format!("digest: sha256:{digest}"));
        }
        out.push(String::new());
        out.extend(self.lines.iter().cloned());
        out.push(String::new());
        out.push(format!("status: {}", self.status));
        out.push(format!("exit: {}", self.exit));
        out.push(String::new());
        out.push("machine:".to_string());
        out.push(machine);
        out.join("\n") + "\n"
    }
}

fn exit_code(e: &EmaError) -> i32 {
    if e.is_input_error() {
        2
    } else {
        1
    }
}

fn error_report(command: String, scenario: Option<(String, String)>, e: &EmaError) -> Report {
    Report {
        command,
        scenario,
        lines: vec![format!("error: {e}")],
        result: json!({"error": e.to_string()}),
        status: "error".into(),
        exit: exit_code(e),
    }
}

fn dispatch(sc: &scenario::Scenario, command: &Command, opts: &WeylOptions) -> Result<Outcome> {
    match command {
        Command::Validate { .. } => unreachable!("handled before the scenario is needed"),
        Command::Weyl { psi, .. } => commands::weyl(sc, psi, opts),
        Command::Twist { psi, transversal, .. } => commands::twist(sc, psi, transversal.as_deref(), opts),
        Command::Irreps { bound, .. } => commands::irreps(sc, *bound),
        Command::Mult { expr, .. } => commands::mult(sc, expr, opts),
        Command::Ext { psi, rungs, bound, .. } => commands::ext(sc, psi, *rungs, *bound, opts),
        Command::Battery { psi, rungs, bound, module, .. } => {
            commands::battery(sc, psi, module.as_deref(), *rungs, *bound, opts)
        }
    }
}

fn execute(cli: &Cli) -> Report {
    let command = cli.command.echo();
    let text = match std::fs::read_to_string(cli.command.scenario()) {
        Ok(t) => t,
        Err(e) => {
            let err = EmaError::Input(format!("cannot read {}: {e}", cli.command.scenario().display()));
            return error_report(command, None, &err);
        }
    };
    let digest = scenario::digest(&text);
    let file = match scenario::parse(&text) {
        Ok(f) => f,
        Err(e) => return error_report(command, None, &e),
    };
    let header = Some((file.name.clone(), digest));
    let opts = match max_dim_from_env() {
        Ok(d) => WeylOptions::with_max_dim(d),
        Err(e) => return error_report(command, header, &e),
    };
    let (sc, checks) = match scenario::build(file) {
        Ok(r) => r,
        Err(e) => return error_report(command, header, &e),
    };
    let outcome = match (&cli.command, sc) {
        (Command::Validate { .. }, _) => Ok(commands::validate(&checks)),
        (_, None) => {
            let failed: Vec<String> =
                checks.iter().filter(|c| !c.ok).map(|c| format!("{}: {}", c.name, c.detail)).collect();
            let mut o = commands::validate(&checks);
            o.lines.push(format!("scenario rejected: {}", failed.join("; ")));
            Ok(o)
        }
        (c, Some(sc)) => dispatch(&sc, c, &opts),
    };
    match outcome {
        Ok(o) => Report {
            command,
            scenario: header,
            lines: o.lines,
            result: o.data,
            status: if o.ok { "ok" } else { "fail" }.into(),
            exit: if o.ok { 0 } else { 1 },
        },
        Err(e) => error_report(command, header, &e),
    }
}

/// Runs the CLI on explicit arguments and returns the exit code together
/// with what would be printed to stdout and stderr.
pub fn run_captured<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { (0, text, String::new()) } else { (2, String::new(), text) };
        }
    };
    let report = execute(&cli);
    let text = report.render(cli.format);
    match &cli.output {
        None => (report.exit, text, String::new()),
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => (report.exit, String::new(), String::new()),
            Err(e) => (2, String::new(), format!("error: cannot write {}: {e}\n", path.display())),
        },
    }
}

/// Entry point for the binary.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (code, out, err) = run_captured(args);
    print!("{out}");
    eprint!("{err}");
    code
}
