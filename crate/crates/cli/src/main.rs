//! `bohrlab` — Faber polynomials, sup norms and Bohr-radius brackets for
//! planar condensers, from the command line.
//!
//! Condenser ids: `disk`, `segment`, `h3`, `h4`, `h<m>`, `level:<base>:<r>`,
//! `file:<path>` (JSON map document). The environment variable
//! `BOHRLAB_PRECISION=double|dd` selects the numeric mode of the series
//! solvers.
//!
//! Exit codes: 0 success; 1 failed reproduction check; 2 usage error;
//! 3 unknown condenser; 4 malformed input file; 5 out-of-range parameter;
//! 6 numeric failure.

// `!(x > 0.0)` rejects NaN along with the out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bohrlab_core::bohr::{
    asymptotic_experiment, lower_scan, solve_upper, solve_upper_annulus, AsymptoticParams,
    CertificateParams, NormSource, Precision, SolveOptions,
};
use bohrlab_core::faber::faber_poly_full_tail;
use bohrlab_core::gallery::{lookup, Condenser};
use bohrlab_core::norms::{norm_sampled, NormModel, PolygonCurve, SampleParams};
use bohrlab_core::reproduce;
use bohrlab_core::tables;
use bohrlab_core::{Error, Result};
use num_complex::Complex64;

#[derive(Parser)]
#[command(
    name = "bohrlab",
    about = "Faber polynomials, sup norms and Bohr-radius brackets for planar condensers",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct CondArg {
    /// Condenser id (`disk`, `segment`, `h3`, `h4`, `h<m>`, `level:<base>:<r>`, `file:<path>`)
    #[arg(value_name = "COND")]
    cond_pos: Option<String>,
    /// Condenser id as a named flag (same values as the positional form)
    #[arg(long)]
    cond: Option<String>,
}

impl CondArg {
    fn resolve(&self) -> Result<Condenser> {
        let id = self
            .cond
            .as_deref()
            .or(self.cond_pos.as_deref())
            .ok_or_else(|| Error::InvalidInput("no condenser id given".into()))?;
        lookup(id)
    }
}

#[derive(Args)]
struct OutputArg {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write output to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the reproduction suite and print one PASS/FAIL line per check
    Reproduce {
        /// Run only the check with this id (e.g. h3-upper, disk-faber)
        #[arg(long)]
        only: Option<String>,
    },
    /// Upper Bohr-radius bracket from the series criterion.
    /// CSV columns: condenser,direction,R,method,residual,truncationN,tailEstimate
    BohrUpper {
        #[command(flatten)]
        cond: CondArg,
        /// Norm model: auto, exact, convex, general, hypocycloid, or angular:<V>
        #[arg(long, default_value = "auto")]
        model: String,
        /// Target residual of the series root
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Inner level for the annulus criterion (optional)
        #[arg(long = "r")]
        inner: Option<f64>,
        #[command(flatten)]
        output: OutputArg,
    },
    /// Lower Bohr-radius bracket from the extremal-family certificate scan.
    /// CSV columns: condenser,direction,R,method,residual,truncationN,tailEstimate
    BohrLower {
        #[command(flatten)]
        cond: CondArg,
        /// Candidate levels R, comma separated
        #[arg(long = "R", value_delimiter = ',')]
        levels: Option<Vec<f64>>,
        /// Candidate r1 values in (0,1), comma separated
        #[arg(long, value_delimiter = ',')]
        r1: Option<Vec<f64>>,
        #[command(flatten)]
        output: OutputArg,
    },
    /// Faber polynomial coefficients and tail.
    /// CSV columns: part,index,re,im (part is z or alpha)
    Faber {
        #[command(flatten)]
        cond: CondArg,
        /// Polynomial degree
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: OutputArg,
    },
    /// Sup-norm table. CSV columns: n,value,kind,isExact
    Norms {
        #[command(flatten)]
        cond: CondArg,
        /// Largest degree
        #[arg(long)]
        nmax: usize,
        #[command(flatten)]
        output: OutputArg,
    },
    /// Bohr-radius brackets for the level sets at each r.
    /// CSV columns: r,lowerB,upperB,mPrime,epsilonUp,epsilonDown
    Asymptotic {
        #[command(flatten)]
        cond: CondArg,
        /// Levels r, comma separated (increasing)
        #[arg(long = "r", value_delimiter = ',')]
        r: Vec<f64>,
        #[command(flatten)]
        output: OutputArg,
    },
    /// Turning-angle variation of a polygon file (JSON array of [re, im])
    Angular {
        /// Path to the polygon JSON file
        polygon: PathBuf,
        #[command(flatten)]
        output: OutputArg,
    },
}

fn env_precision() -> Result<Precision> {
    match std::env::var("BOHRLAB_PRECISION") {
        Ok(value) => value.parse(),
        Err(_) => Ok(Precision::Double),
    }
}

fn emit(output: &OutputArg, text: &str) -> Result<()> {
    match &output.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn upper_model(cond: &Condenser, model: &str) -> Result<NormModel> {
    match model {
        "auto" => Ok(match &cond.exact_norms {
            Some(m) => m.clone(),
            None if cond.convex => NormModel::BoundConvex,
            None => NormModel::BoundGeneral,
        }),
        "exact" => cond.exact_norms.clone().ok_or_else(|| {
            Error::Domain(format!("condenser `{}` has no exact norm model", cond.name))
        }),
        "convex" => {
            if cond.convex {
                Ok(NormModel::BoundConvex)
            } else {
                Err(Error::Domain(format!(
                    "condenser `{}` is not flagged convex; the convex bound does not apply",
                    cond.name
                )))
            }
        }
        "general" => Ok(NormModel::BoundGeneral),
        "hypocycloid" => {
            let cusps: u32 = cond
                .name
                .strip_prefix('h')
                .and_then(|m| m.parse().ok())
                .ok_or_else(|| {
                    Error::Domain(format!(
                        "condenser `{}` is not a hypocycloid gallery entry",
                        cond.name
                    ))
                })?;
            if cusps <= 4 {
                return Err(Error::Domain(
                    "the hypocycloid remark bound applies for m > 4; use the exact model".into(),
                ));
            }
            Ok(NormModel::BoundHypocycloid { cusps })
        }
        other => {
            if let Some(v) = other.strip_prefix("angular:") {
                let variation: f64 = v.parse().map_err(|_| {
                    Error::InvalidInput(format!("cannot parse angular variation `{v}`"))
                })?;
                if !(variation > 0.0) {
                    return Err(Error::Domain("angular variation must be positive".into()));
                }
                return Ok(NormModel::BoundAngular { variation });
            }
            Err(Error::InvalidInput(format!("unknown norm model `{other}`")))
        }
    }
}

fn lower_source(cond: &Condenser) -> Result<NormSource> {
    if let Some(m) = &cond.exact_norms {
        if m.is_exact() {
            return Ok(NormSource::Exact(m.clone()));
        }
    }
    if cond.positive_class == Some(true) {
        return Ok(NormSource::PositiveClass);
    }
    Err(Error::Domain(format!(
        "condenser `{}` has neither exact norms nor positive-class tails; \
         no certificate route is available",
        cond.name
    )))
}

fn run(cli: Cli) -> Result<bool> {
    let precision = env_precision()?;
    match cli.command {
        Command::Reproduce { only } => {
            let filtered = only.is_some();
            let checks = match only {
                Some(id) => {
                    let checks = reproduce::run_filtered(&id)?;
                    if checks.is_empty() {
                        return Err(Error::InvalidInput(format!("no check named `{id}`")));
                    }
                    checks
                }
                None => reproduce::run_all()?,
            };
            let mut failed = 0usize;
            for check in &checks {
                println!("{}", tables::check_line(check));
                if !check.pass {
                    failed += 1;
                }
            }
            if !filtered {
                if failed > 0 {
                    println!("{failed} of {} checks failed", checks.len());
                } else {
                    println!("all {} checks passed", checks.len());
                }
            }
            Ok(failed == 0)
        }
        Command::BohrUpper {
            cond,
            model,
            tol,
            inner,
            output,
        } => {
            let condenser = cond.resolve()?;
            let norm_model = upper_model(&condenser, &model)?;
            let options = SolveOptions {
                tol,
                precision,
                ..Default::default()
            };
            let report = match inner {
                Some(r) => solve_upper_annulus(&norm_model, r, &options)?,
                None => solve_upper(&norm_model, &options)?,
            };
            let text = match output.format {
                Format::Csv => tables::bounds_csv(&condenser.name, &[report]),
                Format::Json => serde_json::to_string_pretty(&report)? + "\n",
            };
            emit(&output, &text)?;
            Ok(true)
        }
        Command::BohrLower {
            cond,
            levels,
            r1,
            output,
        } => {
            let condenser = cond.resolve()?;
            let source = lower_source(&condenser)?;
            let levels = levels
                .unwrap_or_else(|| vec![2.5, 2.75, 2.9, 3.0, 3.1, 3.25, 3.5, 3.75, 4.0, 4.25]);
            let r1 = r1.unwrap_or_else(|| vec![0.9, 0.99, 0.999]);
            if r1.iter().any(|v| !(0.0 < *v && *v < 1.0)) {
                return Err(Error::Domain("every r1 must lie in (0, 1)".into()));
            }
            let report = lower_scan(
                &condenser.map,
                &source,
                &levels,
                &r1,
                &CertificateParams::default(),
            )?;
            let text = match output.format {
                Format::Csv => tables::bounds_csv(&condenser.name, &[report]),
                Format::Json => serde_json::to_string_pretty(&report)? + "\n",
            };
            emit(&output, &text)?;
            Ok(true)
        }
        Command::Faber { cond, n, output } => {
            let condenser = cond.resolve()?;
            let poly = faber_poly_full_tail(&condenser.map, n)?;
            let doc = poly.document();
            let text = match output.format {
                Format::Csv => {
                    let mut out = String::from("part,index,re,im\n");
                    for (k, c) in doc.z_coeffs.iter().enumerate() {
                        out.push_str(&format!(
                            "z,{k},{},{}\n",
                            tables::fmt_sig12(c[0]),
                            tables::fmt_sig12(c[1])
                        ));
                    }
                    for (j, c) in doc.alpha_tail.iter().enumerate() {
                        out.push_str(&format!(
                            "alpha,{},{},{}\n",
                            j + 1,
                            tables::fmt_sig12(c[0]),
                            tables::fmt_sig12(c[1])
                        ));
                    }
                    out
                }
                Format::Json => serde_json::to_string_pretty(&doc)? + "\n",
            };
            emit(&output, &text)?;
            Ok(true)
        }
        Command::Norms { cond, nmax, output } => {
            let condenser = cond.resolve()?;
            if nmax == 0 {
                return Err(Error::Domain("nmax must be at least 1".into()));
            }
            let mut rows = Vec::with_capacity(nmax);
            for n in 1..=nmax {
                let (value, kind, exact) = match &condenser.exact_norms {
                    Some(model) => (model.value(n)?, model.kind_id(), model.is_exact()),
                    None => {
                        let sampled = norm_sampled(&condenser.map, n, &SampleParams::default())?;
                        (sampled.value, "sampled".to_string(), false)
                    }
                };
                rows.push((n, value, kind, exact));
            }
            let text = match output.format {
                Format::Csv => tables::norms_csv(&rows),
                Format::Json => {
                    let entries: Vec<serde_json::Value> = rows
                        .iter()
                        .map(|(n, value, kind, exact)| {
                            serde_json::json!({
                                "n": n, "value": value, "kind": kind, "isExact": exact
                            })
                        })
                        .collect();
                    serde_json::to_string_pretty(&entries)? + "\n"
                }
            };
            emit(&output, &text)?;
            Ok(true)
        }
        Command::Asymptotic { cond, r, output } => {
            let condenser = cond.resolve()?;
            if r.is_empty() {
                return Err(Error::InvalidInput("no levels given (use --r)".into()));
            }
            let min_r = r.iter().cloned().fold(f64::INFINITY, f64::min);
            let mut params = AsymptoticParams::default();
            params.solve.precision = precision;
            if min_r <= params.r0_prime {
                // move the inner levels below the smallest requested r
                params.r0 = 1.2;
                params.r0_prime = 1.5;
                if min_r <= params.r0_prime {
                    return Err(Error::Domain(format!(
                        "levels must exceed {}, got {min_r}",
                        params.r0_prime
                    )));
                }
            }
            let rows = asymptotic_experiment(&condenser, &r, &params)?;
            let text = match output.format {
                Format::Csv => tables::asymptotic_csv(&rows),
                Format::Json => serde_json::to_string_pretty(&rows)? + "\n",
            };
            emit(&output, &text)?;
            Ok(true)
        }
        Command::Angular { polygon, output } => {
            let text = std::fs::read_to_string(&polygon)?;
            let vertices: Vec<[f64; 2]> = serde_json::from_str(&text)?;
            let curve = PolygonCurve::new(
                vertices
                    .into_iter()
                    .map(|v| Complex64::new(v[0], v[1]))
                    .collect(),
            )?;
            let variation = curve.angular_variation();
            let rendered = match output.format {
                Format::Csv => format!("variation\n{}\n", tables::fmt_sig12(variation)),
                Format::Json => {
                    serde_json::to_string_pretty(&serde_json::json!({ "variation": variation }))?
                        + "\n"
                }
            };
            emit(&output, &rendered)?;
            Ok(true)
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::UnknownCondenser(_) => 3,
        Error::Io(_) | Error::Json(_) | Error::InvalidInput(_) => 4,
        Error::Domain(_) | Error::InvalidMap(_) | Error::EmptyWindow => 5,
        _ => 6,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
