mod grid;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use airy_gap::asymptotics::{self, Source};
use airy_gap::laguerre::{self, GramSystem};
use airy_gap::par::ExecMode;
use airy_gap::verify::{self, Suite, VerifyOptions};
use airy_gap::{fredholm, painleve, specfun, DDouble};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use grid::Grid;

const EXIT_DOMAIN: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "airy-gap", version, about = "Airy-kernel gap probabilities, Tracy-Widom and Laguerre gap determinants")]
struct Cli {
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,
    /// Write the document here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// zeta'(-1) and the Tracy-Widom constant chi.
    Constants,
    /// Tracy-Widom log-CDF from the Hastings-McLeod solution.
    Tw {
        #[arg(long, allow_hyphen_values = true)]
        x_grid: Grid,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// ln det(I - K_s) by Nystrom discretization.
    Gap {
        #[arg(long, allow_negative_numbers = true)]
        s: f64,
        #[arg(long, default_value_t = fredholm::DEFAULT_NODES)]
        nodes: usize,
    },
    /// Residuals of ln det(I - K_s) against the large-s expansion.
    Residual {
        #[arg(long, value_enum)]
        source: SourceArg,
        #[arg(long, allow_hyphen_values = true)]
        s_grid: Grid,
        /// Nystrom nodes for the fredholm source.
        #[arg(long, default_value_t = fredholm::DEFAULT_NODES)]
        nodes: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// With CSV output, write the fit summary here instead of standard error.
        #[arg(long)]
        fit: Option<PathBuf>,
    },
    /// Finite-n Laguerre gap probabilities.
    Laguerre {
        #[command(subcommand)]
        verb: LaguerreVerb,
    },
    /// Run the acceptance suite.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::Quick)]
        suite: SuiteArg,
        #[arg(long, hide = true, default_value_t = 0.0, allow_negative_numbers = true)]
        tamper_chi: f64,
    },
}

#[derive(Args, Debug)]
struct NAlpha {
    #[arg(long)]
    n: usize,
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
    /// Quadrature nodes (default max(200, 6n)).
    #[arg(long)]
    nodes: Option<usize>,
}

impl NAlpha {
    fn nodes(&self) -> usize {
        self.nodes.unwrap_or_else(|| laguerre::default_nodes(self.n))
    }
}

#[derive(Subcommand, Debug)]
enum LaguerreVerb {
    /// ln D_n(alpha) from the quadrature Gram matrix.
    Gap {
        #[command(flatten)]
        p: NAlpha,
        #[arg(long, value_enum, default_value_t = PrecisionArg::Dd)]
        precision: PrecisionArg,
    },
    /// d/dalpha ln D_n(alpha) by the rank-one and Christoffel-Darboux routes.
    Ddlog {
        #[command(flatten)]
        p: NAlpha,
    },
    /// D_n(1 - s/(2n)^(2/3)).
    Edge {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        s: f64,
        #[arg(long)]
        nodes: Option<usize>,
    },
    /// ln A_n and ln C_n.
    Exact {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SourceArg {
    Painleve,
    Fredholm,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    Quick,
    Full,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PrecisionArg {
    Native,
    Dd,
}

enum Failure {
    Domain(String),
    Verify,
    Io(io::Error),
}

impl From<airy_gap::Error> for Failure {
    fn from(e: airy_gap::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

/// 17 significant digits.
fn sci(v: f64) -> String {
    format!("{v:.16e}")
}

fn csv<const N: usize>(header: [&str; N], rows: impl IntoIterator<Item = [f64; N]>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.map(sci).join(","));
        out.push('\n');
    }
    out
}

fn json_doc(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn emit(path: &Option<PathBuf>, doc: &str) -> Result<(), Failure> {
    match path {
        Some(p) => {
            let mut f = BufWriter::new(File::create(p)?);
            f.write_all(doc.as_bytes())?;
            f.flush()?;
        }
        None => io::stdout().lock().write_all(doc.as_bytes())?,
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let mode = ExecMode::default();
    let out = &cli.output;
    match &cli.verb {
        Verb::Constants => {
            let c = specfun::chi_constant();
            emit(out, &json_doc(&json!({
                "zeta_prime_minus1": c.zeta_prime_minus1,
                "chi": c.chi,
                "method": c.method,
            })))
        }
        Verb::Tw { x_grid, format } => {
            let sol = verify::hastings_mcleod()?;
            let pts: Vec<_> = x_grid
                .points()
                .iter()
                .map(|&x| painleve::tw_log_cdf(&sol, x))
                .collect::<airy_gap::Result<_>>()?;
            let doc = match format {
                Format::Csv => csv(["x", "log_cdf", "cdf"], pts.iter().map(|p| [p.x, p.log_cdf, p.cdf])),
                Format::Json => json_doc(&serde_json::to_value(&pts).expect("plain struct")),
            };
            emit(out, &doc)
        }
        Verb::Gap { s, nodes } => {
            let g = fredholm::airy_gap_log_det_with(mode, *s, *nodes)?;
            emit(out, &json_doc(&json!({
                "s": g.s,
                "log_det": g.log_det,
                "est_error": g.est_error,
                "nodes": g.nodes,
            })))
        }
        Verb::Residual {
            source,
            s_grid,
            nodes,
            format,
            fit,
        } => {
            let grid = s_grid.points();
            let sol;
            let (src, name) = match source {
                SourceArg::Painleve => {
                    sol = verify::hastings_mcleod()?;
                    (Source::Painleve(&sol), "painleve")
                }
                SourceArg::Fredholm => (Source::Fredholm { nodes: *nodes }, "fredholm"),
            };
            let chi = specfun::chi_dd().to_f64();
            let rows = asymptotics::residual_table_with(mode, src, &grid, chi)?;
            let summary = match asymptotics::slope_fit(&rows) {
                Ok(f) => json!({"slope": f.slope, "intercept": f.intercept, "rms": f.rms, "excluded": f.excluded}),
                Err(_) => Value::Null,
            };
            let constant = if rows.len() >= 2 {
                let c = asymptotics::constant_fit(&rows);
                json!({"a": c.a, "c": c.c, "rms": c.rms})
            } else {
                Value::Null
            };
            let fit_doc = json!({
                "source": name,
                "chi": chi,
                "slope_fit": summary,
                "constant_fit": constant,
            });
            match format {
                Format::Csv => {
                    let doc = csv(
                        ["s", "computed", "rhs", "residual"],
                        rows.iter().map(|r| [r.param, r.computed, r.rhs, r.residual]),
                    );
                    emit(out, &doc)?;
                    match fit {
                        Some(_) => emit(fit, &json_doc(&fit_doc)),
                        None => Ok(io::stderr().lock().write_all(json_doc(&fit_doc).as_bytes())?),
                    }
                }
                Format::Json => {
                    let rows: Vec<Value> = rows
                        .iter()
                        .map(|r| json!({"s": r.param, "computed": r.computed, "rhs": r.rhs, "residual": r.residual}))
                        .collect();
                    let mut doc = fit_doc;
                    doc["rows"] = Value::Array(rows);
                    emit(out, &json_doc(&doc))
                }
            }
        }
        Verb::Laguerre { verb } => emit(out, &json_doc(&laguerre_verb(verb)?)),
        Verb::Verify { suite, tamper_chi } => {
            let mut opts = VerifyOptions::new(match suite {
                SuiteArg::Quick => Suite::Quick,
                SuiteArg::Full => Suite::Full,
            });
            opts.chi_offset = *tamper_chi;
            let report = verify::run(&opts)?;
            {
                let mut err = io::stderr().lock();
                for c in &report.criteria {
                    writeln!(err, "{}", c.summary_line())?;
                    for k in c.checks.iter().filter(|k| !k.passed) {
                        writeln!(err, "    failed: {} = {:e}", k.name, k.measured)?;
                    }
                }
            }
            emit(out, &json_doc(&serde_json::to_value(&report).expect("plain struct")))?;
            if report.passed {
                Ok(())
            } else {
                Err(Failure::Verify)
            }
        }
    }
}

fn laguerre_verb(verb: &LaguerreVerb) -> Result<Value, Failure> {
    Ok(match verb {
        LaguerreVerb::Gap { p, precision } => {
            let (log_det, est_error) = match precision {
                PrecisionArg::Dd => {
                    let e = laguerre::gap_log_det_gram_checked(p.n, p.alpha, p.nodes())?;
                    (e.log_det, e.est_error)
                }
                PrecisionArg::Native => {
                    let a = GramSystem::<f64>::new(p.n, p.alpha, p.nodes())?.log_det();
                    let b = GramSystem::<f64>::new(p.n, p.alpha, 2 * p.nodes())?.log_det();
                    (a, (a - b).abs())
                }
            };
            json!({
                "n": p.n,
                "alpha": p.alpha,
                "log_det": log_det,
                "est_error": est_error,
                "nodes": p.nodes(),
                "precision": match precision { PrecisionArg::Dd => "dd", PrecisionArg::Native => "native" },
            })
        }
        LaguerreVerb::Ddlog { p } => {
            let rank1 = GramSystem::<DDouble>::new(p.n, p.alpha, p.nodes())?.rank_one().to_f64();
            // the moment route only exists for small n
            let cd = if p.n <= laguerre::THETA_MAX_N {
                Some(laguerre::dlog_gap_cd(p.n, p.alpha)?)
            } else {
                None
            };
            json!({
                "n": p.n,
                "alpha": p.alpha,
                "rank1": rank1,
                "cd": cd,
                "difference": cd.map(|c| c - rank1),
                "nodes": p.nodes(),
            })
        }
        LaguerreVerb::Edge { n, s, nodes } => {
            let m = nodes.unwrap_or_else(|| laguerre::default_nodes(*n));
            json!({
                "n": n,
                "s": s,
                "alpha": laguerre::edge_alpha(*n, *s),
                "gap": laguerre::edge_scaled_gap(*n, *s, m)?,
                "nodes": m,
            })
        }
        LaguerreVerb::Exact { n } => {
            let r = laguerre::exact_products(*n)?.report();
            json!({"n": r.n, "ln_a_n": r.ln_a_n, "ln_c_n": r.ln_c_n})
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t as usize).build_global() {
            eprintln!("airy-gap: cannot start thread pool: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            eprintln!("airy-gap: {msg}");
            ExitCode::from(EXIT_DOMAIN)
        }
        Err(Failure::Verify) => ExitCode::from(EXIT_VERIFY),
        Err(Failure::Io(e)) => {
            eprintln!("airy-gap: {e}");
            ExitCode::from(EXIT_DOMAIN)
        }
    }
}
