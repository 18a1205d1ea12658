mod parse;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use hrp_core::hrp::{self, HrpStatus, UnitCircleConfig};
use hrp_core::mdep::{self, DependenceReport, MdepConfig, RootOfUnity};
use hrp_core::survey::{self, SurveyOptions, SurveyParams, CSV_HEADER};
use hrp_core::{Error, IntPoly};
use num_bigint::BigInt;
use serde_json::json;

#[derive(Parser)]
#[command(name = "hrp", version, about = "Height reducing property toolkit")]
struct Cli {
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Report elapsed time on stderr.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Count reciprocal polynomials with all roots on the unit circle.
    Survey {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        lead: i64,
        #[arg(long)]
        height: i64,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// CSV output file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// JSON file for the dependent cases.
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Multiplicative dependence among the conjugates.
    Mdep {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// Search bound B, also trusted as an independence bound.
        #[arg(long)]
        bound_b: Option<u64>,
    },
    /// Height reducing property classification.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Multiple with a dominant k-th term.
    Dominant {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        strict: bool,
    },
    /// Digit expansion of an element of Z[alpha].
    Reduce {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        value: String,
        #[arg(long)]
        khat: Option<u64>,
        #[arg(long)]
        max_steps: Option<usize>,
    },
    /// Exact check of one exponent vector.
    Verify {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        relation: String,
    },
}

enum Failure {
    Usage(String),
    Limit(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::Unsupported(_) => Failure::Usage(e.to_string()),
            _ => Failure::Limit(e.to_string()),
        }
    }
}

fn poly_arg(flag: &str, text: &str) -> Result<IntPoly, Failure> {
    parse::parse_poly(text).map_err(|e| Failure::Usage(format!("--{flag}: {e}")))
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize")
}

fn fmt_vec(v: &[BigInt]) -> String {
    let s: Vec<String> = v.iter().map(BigInt::to_string).collect();
    format!("({})", s.join(","))
}

fn fmt_zeta(z: RootOfUnity) -> String {
    if z.is_one() {
        "1".into()
    } else {
        format!("exp(2 pi i {}/{})", z.power, z.order)
    }
}

fn report_text(p: &IntPoly, r: &DependenceReport) -> String {
    let mut out = format!(
        "polynomial: {}\nm(alpha) = {} of {}\nindependence: {:?}\n",
        p.to_coeff_string(),
        r.m_alpha,
        p.degree() / 2,
        r.independence_mode
    );
    for rel in &r.relations {
        out.push_str(&format!(
            "relation {} = {}\n",
            fmt_vec(rel.exponents()),
            fmt_zeta(rel.cofactor())
        ));
    }
    match &r.power_reducible {
        Some(pr) => out.push_str(&format!(
            "power reducible: b = {}, minimal polynomial of alpha^b: {}\n",
            pr.b,
            pr.minpoly.to_coeff_string()
        )),
        None => out.push_str("power reducible: no\n"),
    }
    out
}

fn status_text(s: &HrpStatus) -> String {
    match s {
        HrpStatus::RootOfUnity => "root of unity: HRP holds".into(),
        HrpStatus::Expanding => "expanding: HRP holds".into(),
        HrpStatus::UnitCircle { m_alpha, verdict } => {
            format!("unit circle, m(alpha) = {m_alpha}: {verdict:?}")
        }
        HrpStatus::MixedNoHrp => "mixed moduli: no HRP".into(),
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    match &cli.cmd {
        Cmd::Survey {
            degree,
            lead,
            height,
            jobs,
            checkpoint,
            out,
            sidecar,
        } => {
            if *degree < 2 || degree % 2 == 1 || *lead < 2 || *height < 1 {
                return Err(Failure::Usage(
                    "survey needs an even --degree >= 2, --lead >= 2 and --height >= 1".into(),
                ));
            }
            if jobs == &Some(0) {
                return Err(Failure::Usage("--jobs must be positive".into()));
            }
            let params = SurveyParams::new(*degree, *lead, *height)?;
            let opts = SurveyOptions {
                jobs: *jobs,
                checkpoint: checkpoint.clone(),
                max_windows: None,
            };
            let o = survey::run_survey(&params, &opts)?;
            let write = |path: &PathBuf, text: String| {
                std::fs::write(path, text)
                    .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
            };
            if let Some(path) = out {
                write(path, format!("{CSV_HEADER}\n{}\n", o.row.to_csv_line()))?;
            }
            if let Some(path) = sidecar {
                write(path, survey::dep_cases_json(&o.dep_cases))?;
            }
            if cli.json {
                return Ok(pretty(&serde_json::to_value(&o).expect("outcome serializes")));
            }
            let mut text = survey::format_table(std::slice::from_ref(&o.row));
            text.push_str(&format!("unpaired dependent cases: {}\n", o.unpaired.len()));
            for v in &o.violations {
                text.push_str(&format!("invariant violation: {v}\n"));
            }
            Ok(text)
        }
        Cmd::Mdep { poly, bound_b } => {
            let p = poly_arg("poly", poly)?;
            let mut cfg = MdepConfig::default();
            if let Some(b) = bound_b {
                if *b < 2 {
                    return Err(Failure::Usage("--bound-b must be at least 2".into()));
                }
                cfg.search.bound_b = BigInt::from(*b);
                cfg.trust_bound = true;
            }
            let r = mdep::analyze(&p, &cfg)?;
            if cli.json {
                return Ok(pretty(&serde_json::to_value(&r).expect("report serializes")));
            }
            Ok(report_text(&p, &r))
        }
        Cmd::Classify { poly } => {
            let p = poly_arg("poly", poly)?;
            let s = hrp::classify_hrp(&p)?;
            if cli.json {
                return Ok(pretty(&json!({ "polynomial": p, "status": s })));
            }
            Ok(format!("{}\n", status_text(&s)))
        }
        Cmd::Dominant { poly, k, strict } => {
            let p = poly_arg("poly", poly)?;
            let r = hrp::construct_dominant(&p, *k, *strict)?;
            if cli.json {
                return Ok(pretty(
                    &json!({ "polynomial": p, "k": k, "strict": strict, "multiple": r }),
                ));
            }
            Ok(format!("{}\n", r.to_coeff_string()))
        }
        Cmd::Reduce {
            poly,
            value,
            khat,
            max_steps,
        } => {
            let p = poly_arg("poly", poly)?;
            let v = parse::parse_ints(value)
                .map(IntPoly::new)
                .map_err(|e| Failure::Usage(format!("--value: {e}")))?;
            let status = hrp::classify_hrp(&p)?;
            let e = match status {
                HrpStatus::Expanding => hrp::reduce_expanding(&p, &v)?,
                HrpStatus::RootOfUnity => {
                    let n = p
                        .primitive_normalized()
                        .root_of_unity_order()
                        .ok_or_else(|| Failure::Limit("root of unity order not found".into()))?;
                    hrp::reduce_root_of_unity(n, &v)?
                }
                HrpStatus::UnitCircle { .. } => {
                    let mut cfg = UnitCircleConfig::default();
                    if let Some(k) = khat {
                        if *k == 0 {
                            return Err(Failure::Usage("--khat must be positive".into()));
                        }
                        cfg.khat = *k;
                        cfg.khat_max = cfg.khat_max.max(*k);
                    }
                    if let Some(m) = max_steps {
                        cfg.max_steps = *m;
                    }
                    hrp::reduce_unit_circle(&p, &v, &cfg)?
                        .ok_or_else(|| Failure::Limit("no expansion within the step budget".into()))?
                }
                HrpStatus::MixedNoHrp => {
                    return Err(Failure::Usage(
                        "conjugates of mixed modulus: no finite digit set exists".into(),
                    ))
                }
            };
            let verified = e.verify(&v);
            if !verified {
                return Err(Failure::Limit("expansion failed exact verification".into()));
            }
            if cli.json {
                return Ok(pretty(
                    &json!({ "status": status, "expansion": e, "verified": verified }),
                ));
            }
            Ok(format!(
                "digits: {}\ndigit bound: {}\nlength: {}\nverified: {verified}\n",
                e.as_poly().to_coeff_string(),
                e.digit_bound,
                e.digits.len()
            ))
        }
        Cmd::Verify { poly, relation } => {
            let p = poly_arg("poly", poly)?;
            let k = parse::parse_ints(relation).map_err(|e| Failure::Usage(format!("--relation: {e}")))?;
            let r = mdep::verify_relation_exact(&p, &k)?;
            if cli.json {
                return Ok(pretty(&json!({ "exponents": fmt_vec(&k), "relation": r })));
            }
            Ok(match r {
                Some(rel) => format!("holds: {} = {}\n", fmt_vec(&k), fmt_zeta(rel.cofactor())),
                None => format!("does not hold: {} is not a root of unity\n", fmt_vec(&k)),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let start = Instant::now();
    let result = run(&cli);
    if cli.timing {
        eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    }
    match result {
        Ok(text) => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Limit(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
