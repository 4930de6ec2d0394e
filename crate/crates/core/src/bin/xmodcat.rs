use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use xmodcat::io::{fixture, input_hash, XModDocument};
use xmodcat::modularization::MatchReport;
use xmodcat::report::{axiom_verdicts, complex, gx_entry, number, Analysis, DataReport};
use xmodcat::{Error, Result, Settings, DEFAULT_SEED, TOL};

/// Premodular data of finite crossed modules and their modularization.
#[derive(Debug, Parser)]
#[command(name = "xmodcat", version)]
struct Cli {
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Seed for the randomized character-table method.
    #[arg(long, global = true, env = "XMODCAT_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Absolute tolerance for numerical comparisons.
    #[arg(long, global = true, default_value_t = TOL)]
    tol: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the crossed-module axioms.
    Check { file: String },
    /// List the simple objects.
    Simples { file: String },
    /// Emit the full data report as JSON.
    ModularData { file: String },
    /// List the transparent simples.
    Transparent { file: String },
    /// Emit the group G(X) as JSON.
    Gx { file: String },
    /// Emit Xbar, its data report and its match against the Drinfeld double.
    Modularize { file: String },
    /// Run the invariant suite; exit status 0 iff every check passes.
    Verify { file: String },
}

struct Input {
    text: String,
    doc: XModDocument,
}

impl Input {
    fn name(&self) -> Option<&str> {
        self.doc.name.as_deref()
    }

    fn hash(&self) -> String {
        input_hash(self.text.as_bytes())
    }
}

/// A path on disk, or else the name of a bundled fixture.
fn read_input(file: &str) -> Result<Input> {
    let text = if Path::new(file).exists() {
        std::fs::read_to_string(file).map_err(|e| Error::Io(format!("{file}: {e}")))?
    } else if let Some(text) = fixture(file) {
        text.to_owned()
    } else {
        return Err(Error::Io(format!(
            "{file}: no such file or bundled fixture"
        )));
    };
    let doc = XModDocument::parse(&text)?;
    Ok(Input { text, doc })
}

fn match_json(m: &MatchReport) -> serde_json::Value {
    let r = |v: f64| {
        if v.is_finite() {
            json!(number(v))
        } else {
            json!(null)
        }
    };
    json!({
        "permutation": m.permutation,
        "dims_residual": r(m.dims_residual),
        "twists_residual": r(m.twists_residual),
        "s_residual": r(m.s_residual),
        "fusion_residual": r(m.fusion_residual),
    })
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize")
}

/// Returns the text to print and whether the command succeeded.
fn run(command: &Command, settings: &Settings) -> Result<(String, bool)> {
    match command {
        Command::Check { file } => {
            let input = read_input(file)?;
            let (passed, failure) = axiom_verdicts(&input.doc);
            let mut out: String = passed.iter().map(|s| format!("ok    {s}\n")).collect();
            match failure {
                None => {
                    out += "valid crossed module\n";
                    Ok((out, true))
                }
                Some((stage, err)) => {
                    print!("{out}");
                    println!("FAIL  {stage}: {err}");
                    Err(err)
                }
            }
        }
        Command::Simples { file } => {
            let input = read_input(file)?;
            let x = input.doc.to_crossed_module()?;
            let table = xmodcat::rep::simple_objects(&x, settings)?;
            let mut out = format!(
                "{} simples, sum of squared dimensions {}\n",
                table.len(),
                table.dims().iter().map(|d| d * d).sum::<usize>()
            );
            out += "index orbit_rep stab_char dim twist\n";
            for (p, s) in table.simples.iter().enumerate() {
                let [re, im] = complex(s.twist);
                out += &format!(
                    "{p} {} {} {} [{re}, {im}]\n",
                    s.label.orbit_rep, s.label.stab_char, s.dim
                );
            }
            Ok((out, true))
        }
        Command::ModularData { file } => {
            let input = read_input(file)?;
            let x = input.doc.to_crossed_module()?;
            let analysis = Analysis::new(&x, settings)?;
            let report = DataReport::new(&analysis, input.name(), &input.hash())?;
            Ok((report.to_json() + "\n", true))
        }
        Command::Transparent { file } => {
            let input = read_input(file)?;
            let x = input.doc.to_crossed_module()?;
            let table = xmodcat::rep::simple_objects(&x, settings)?;
            let md = xmodcat::rep::modular_data(&x, &table, settings.tol)?;
            let t = md.transparent_set();
            let mut out = format!("{} transparent simples\n", t.len());
            out += "index orbit_rep stab_char dim\n";
            for &p in &t {
                let s = &table.simples[p];
                out += &format!(
                    "{p} {} {} {}\n",
                    s.label.orbit_rep, s.label.stab_char, s.dim
                );
            }
            let sum: usize = t.iter().map(|&p| md.dims[p] * md.dims[p]).sum();
            out += &format!(
                "sum of squared dimensions {sum}, |ker d||coker d| = {}\n",
                x.sub.d
            );
            Ok((out, true))
        }
        Command::Gx { file } => {
            let input = read_input(file)?;
            let x = input.doc.to_crossed_module()?;
            let gx = x.tannakian_group(settings)?;
            let entry = gx_entry(&gx, settings)?;
            Ok((
                pretty(&json!({ "name": input.name(), "gx": entry })) + "\n",
                true,
            ))
        }
        Command::Modularize { file } => {
            let input = read_input(file)?;
            let x = input.doc.to_crossed_module()?;
            let analysis = Analysis::new(&x, settings)?;
            let xbar = &analysis.modularization.xbar.xmod;
            let bar_name = input.name().map(|n| format!("{n}_bar"));
            let bar_doc = XModDocument::from_crossed_module(xbar, bar_name.as_deref());
            let bar_analysis = Analysis::new(xbar, settings)?;
            let bar_report = DataReport::new(
                &bar_analysis,
                bar_name.as_deref(),
                &input_hash(bar_doc.to_json().as_bytes()),
            )?;
            let m = &analysis.modularization;
            let value = json!({
                "name": input.name(),
                "input_sha256": input.hash(),
                "xbar": bar_doc,
                "report": bar_report,
                "double_match": {
                    "transported": match_json(&m.transported),
                    "searched": match_json(&m.searched),
                },
            });
            Ok((pretty(&value) + "\n", m.all_passed()))
        }
        Command::Verify { file } => {
            let input = read_input(file)?;
            let x = input.doc.to_crossed_module()?;
            let analysis = Analysis::new(&x, settings)?;
            let checks = analysis.checks()?;
            let mut out = String::new();
            for ch in &checks {
                let verdict = if ch.passed { "PASS" } else { "FAIL" };
                out += &format!(
                    "{verdict}  {} (residual {:.2e}) {}\n",
                    ch.name, ch.residual, ch.detail
                );
            }
            let modular = if analysis.data.is_modular() {
                "yes"
            } else {
                "no"
            };
            out += &format!("modular: {modular}\n");
            let ok = checks.iter().all(|c| c.passed);
            out += if ok {
                "all checks passed\n"
            } else {
                "some checks failed\n"
            };
            Ok((out, ok))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let settings = Settings {
        tol: cli.tol,
        seed: cli.seed,
    };
    match run(&cli.command, &settings) {
        Ok((text, ok)) => {
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &text) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            } else {
                print!("{text}");
            }
            ExitCode::from(if ok { 0 } else { 2 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
