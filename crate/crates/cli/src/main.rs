//! `hfk`: knot complexes, mapping cones, phi tables and batch verification
//! from the command line.
//!
//! Results go to stdout. Failures print `{"error": kind, "message": text}`
//! to stderr and exit nonzero: 1 when a requested check fails, 2 on invalid
//! input.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use thiserror::Error;

use hfk_core::complex::{model, ModelKind};
use hfk_core::cone::{build_cone, truncate, ConeError};
use hfk_core::diagram::{build_diagram, knot_complex, svg, DiagramError};
use hfk_core::golden::{self, GoldenError};
use hfk_core::phi::{grid_csv, phi_closed_form, phi_of_standard, to_standard, GridRow, PhiError};
use hfk_core::verify::{classification_grid, render_matrix, Oracle, VerifyError};
use hfk_core::{BifilteredComplex, ComplexError, Tangle, TangleError};

#[derive(Debug, Parser)]
#[command(
    name = "hfk",
    version,
    about = "Knot Floer complexes of blown-down two-bridge links"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Reduced knot complex of a tangle presentation.
    Cfk {
        /// Presentation `sign:a1,a2,...`, e.g. `+:2,1,4`.
        #[arg(long, allow_hyphen_values = true)]
        tangle: String,
        /// Emit JSON (the default is a readable listing).
        #[arg(long, conflicts_with = "dot")]
        json: bool,
        /// Emit a Graphviz digraph.
        #[arg(long)]
        dot: bool,
    },
    /// Flattened mapping cone for the `(m,1)` cable of the meridian.
    Cone {
        #[command(flatten)]
        input: ConeInput,
        #[arg(long)]
        m: i64,
        /// Truncate to this window and report the certificates.
        #[arg(long)]
        ell: Option<i64>,
        /// Reduce the flattened cone before printing.
        #[arg(long)]
        reduced: bool,
    },
    /// Phi table of the cone on `T(2,4k+1)`, pipeline against closed form.
    Phi {
        #[arg(long)]
        k: i64,
        #[arg(long)]
        m: i64,
        /// Treat `k` and `m` as maxima and emit the whole grid.
        #[arg(long)]
        grid: bool,
        /// Emit CSV instead of JSON.
        #[arg(long)]
        csv: bool,
    },
    /// Batch checks.
    Verify {
        #[command(subcommand)]
        what: Verify,
    },
    /// SVG picture of the lifted diagram.
    Render {
        #[arg(long, allow_hyphen_values = true)]
        tangle: String,
        /// Periods drawn on each side of the distinguished lift.
        #[arg(long, default_value_t = 1)]
        periods: i64,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct ConeInput {
    /// Knot given by a tangle presentation.
    #[arg(long, allow_hyphen_values = true)]
    tangle: Option<String>,
    /// Knot complex `T(2,4k+1)`, the staircase `C(2k)`.
    #[arg(long)]
    k: Option<i64>,
}

#[derive(Debug, Subcommand)]
enum Verify {
    /// Compare computed complexes with the classified families.
    Classification {
        #[arg(long, default_value_t = 4)]
        max_n: i64,
        #[arg(long, default_value_t = 4)]
        max_k: i64,
        /// Use the closed forms exactly as written, without corrections.
        #[arg(long)]
        as_stated: bool,
        #[arg(long)]
        json: bool,
    },
    /// Compare computed complexes with the golden files.
    Golden {
        /// Rewrite the golden files from the current engine.
        #[arg(long)]
        update: bool,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Tangle(#[from] TangleError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error(transparent)]
    Phi(#[from] PhiError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Golden(#[from] GoldenError),
    #[error("check failed: {0}")]
    Mismatch(String),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Tangle(_) => "tangle",
            CliError::Diagram(_) => "diagram",
            CliError::Complex(_) => "complex",
            CliError::Cone(_) => "cone",
            CliError::Phi(_) => "phi",
            CliError::Verify(_) => "verify",
            CliError::Usage(_) => "usage",
            CliError::Golden(_) => "golden",
            CliError::Mismatch(_) => "mismatch",
        }
    }

    fn code(&self) -> u8 {
        match self {
            CliError::Mismatch(_) => 1,
            _ => 2,
        }
    }
}

fn parse_tangle(s: &str) -> Result<Tangle, CliError> {
    Ok(s.parse()?)
}

fn listing(t: &Tangle, c: &BifilteredComplex) -> String {
    let mut s = format!("{t}  (value {})\n", t.value());
    for x in 0..c.len() {
        let g = c.generator(x);
        let terms: Vec<String> = c
            .terms(x)
            .map(|tm| format!("U^{} {}", tm.u, c.generator(tm.target).name))
            .collect();
        s.push_str(&format!(
            "{}  M={} (i,j)=({},{})  d = {}\n",
            g.name,
            g.maslov,
            g.i,
            g.j,
            if terms.is_empty() {
                "0".into()
            } else {
                terms.join(" + ")
            }
        ));
    }
    s
}

fn dot(c: &BifilteredComplex) -> String {
    let mut s = String::from("digraph cfk {\n");
    for g in c.generators() {
        s.push_str(&format!(
            "  \"{}\" [label=\"{}\\nM={} ({},{})\"];\n",
            g.name, g.name, g.maslov, g.i, g.j
        ));
    }
    for (x, y, u) in c.edges() {
        s.push_str(&format!(
            "  \"{}\" -> \"{}\" [label=\"U^{u}\"];\n",
            c.generator(x).name,
            c.generator(y).name
        ));
    }
    s.push_str("}\n");
    s
}

fn phi_row(k: i64, m: i64) -> Result<GridRow, CliError> {
    let closed_form = phi_closed_form(k, m)?;
    let c = model(ModelKind::C(2 * k))?;
    let red = build_cone(&c, m)?.flatten()?.reduce();
    let pipeline = phi_of_standard(&to_standard(&red)?);
    Ok(GridRow {
        k,
        m,
        pipeline,
        closed_form,
    })
}

fn row_json(r: &GridRow) -> serde_json::Value {
    json!({
        "k": r.k,
        "m": r.m,
        "pipeline": r.pipeline.to_keyed_json(),
        "closed_form": r.closed_form.to_keyed_json(),
        "equal": r.pipeline == r.closed_form,
    })
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Cfk {
            tangle,
            json,
            dot: as_dot,
        } => {
            let t = parse_tangle(&tangle)?;
            let c = knot_complex(&t)?;
            Ok(if json {
                c.to_json() + "\n"
            } else if as_dot {
                dot(&c)
            } else {
                listing(&t, &c)
            })
        }
        Command::Cone {
            input,
            m,
            ell,
            reduced,
        } => {
            let base = match (input.tangle, input.k) {
                (Some(t), _) => knot_complex(&parse_tangle(&t)?)?,
                (None, Some(k)) => model(ModelKind::C(2 * k))?,
                (None, None) => return Err(CliError::Usage("need --tangle or --k".into())),
            };
            let cone = build_cone(&base, m)?;
            let (cone, steps) = match ell {
                Some(l) => truncate(&cone, l)?,
                None => (cone, Vec::new()),
            };
            let mut flat = cone.flatten()?;
            if reduced {
                flat = flat.reduce();
            }
            let complex: serde_json::Value =
                serde_json::from_str(&flat.to_json()).expect("complex json is valid");
            let out = json!({
                "m": m,
                "genus": cone.genus,
                "ell": cone.ell,
                "complex": complex,
                "truncation": steps,
            });
            if let Some(bad) = steps.iter().find(|s| !s.holds()) {
                return Err(CliError::Mismatch(format!(
                    "truncation step at ell={} is not certified",
                    bad.ell
                )));
            }
            Ok(out.to_string() + "\n")
        }
        Command::Phi { k, m, grid, csv } => {
            let rows: Vec<GridRow> = if grid {
                let mut v = Vec::new();
                for kk in 1..=k {
                    for mm in 2..=m {
                        v.push(phi_row(kk, mm)?);
                    }
                }
                v
            } else {
                vec![phi_row(k, m)?]
            };
            let text = if csv {
                grid_csv(&rows)?
            } else if grid {
                serde_json::Value::Array(rows.iter().map(row_json).collect()).to_string() + "\n"
            } else {
                row_json(&rows[0]).to_string() + "\n"
            };
            if let Some(r) = rows.iter().find(|r| r.pipeline != r.closed_form) {
                print!("{text}");
                return Err(CliError::Mismatch(format!(
                    "phi pipeline differs from closed form at k={}, m={}",
                    r.k, r.m
                )));
            }
            Ok(text)
        }
        Command::Verify {
            what:
                Verify::Classification {
                    max_n,
                    max_k,
                    as_stated,
                    json,
                },
        } => {
            if max_n < 1 || max_k < 0 {
                return Err(CliError::Usage("need --max-n >= 1 and --max-k >= 0".into()));
            }
            let oracle = if as_stated {
                Oracle::AsStated
            } else {
                Oracle::Corrected
            };
            let cells = classification_grid(max_n, max_k, oracle)?;
            let text = if json {
                serde_json::to_string(&cells).expect("cells serialize") + "\n"
            } else {
                render_matrix(&cells)
            };
            let failed = cells.iter().filter(|c| !c.pass).count();
            if failed > 0 {
                print!("{text}");
                return Err(CliError::Mismatch(format!(
                    "{failed} of {} cells differ from the closed forms",
                    cells.len()
                )));
            }
            Ok(text)
        }
        Command::Verify {
            what: Verify::Golden { update },
        } => {
            let dir = golden::default_dir();
            if update {
                let n = golden::write_dir(&dir)?;
                return Ok(format!("wrote {n} golden files to {}\n", dir.display()));
            }
            let report = golden::check_dir(&dir)?;
            let text = report
                .iter()
                .map(|(name, ok)| format!("{name}: {}\n", if *ok { "pass" } else { "FAIL" }))
                .collect::<String>();
            let failed: Vec<&str> = report
                .iter()
                .filter(|r| !r.1)
                .map(|r| r.0.as_str())
                .collect();
            if !failed.is_empty() {
                print!("{text}");
                return Err(CliError::Mismatch(format!(
                    "golden mismatch: {}",
                    failed.join(", ")
                )));
            }
            Ok(text)
        }
        Command::Render { tangle, periods } => {
            let t = parse_tangle(&tangle)?;
            if periods < 1 {
                return Err(CliError::Usage("--periods must be at least 1".into()));
            }
            Ok(svg::render(&build_diagram(&t)?, periods))
        }
    }
}

fn fail(kind: &str, message: &str, code: u8) -> ExitCode {
    eprintln!("{}", json!({ "error": kind, "message": message }));
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            return fail("usage", e.to_string().trim(), 2);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => fail(e.kind(), &e.to_string(), e.code()),
    }
}
