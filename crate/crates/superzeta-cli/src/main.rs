//! Command-line front end: build zero caches, evaluate any of the three
//! families by any route, reproduce the special-value tables, extract
//! cumulants, and run the verification battery.
//!
//! Exit codes: 0 success, 1 verification failure, 2 domain error,
//! 3 numeric failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use superzeta::cumulants::{cumulants, Provenance};
use superzeta::families::{
    z1_closed, z1_direct, z1_integral, z1_mellin, z2_basic, z2_closed, z2_direct, z2_eval,
    z3_direct, z3_eval, EvalResult, Z1Marker, Z2Marker,
};
use superzeta::identities::identity_suite;
use superzeta::primary::{build_primary, PrimaryFunction, PrimarySpec};
use superzeta::tables::{table_rows, TableKind, TableRow};
use superzeta::zeros::{verify_count, ZeroCache};
use superzeta::{c, C, Error, ErrorKind};

#[derive(Parser)]
#[command(
    name = "superzeta",
    about = "Zeta functions over the nontrivial zeros of arithmetic L-functions",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Auto,
    Direct,
    Integral,
    Mellin,
    Closed,
    Expansion,
    Relation,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Z1,
    Z2,
    Z3,
}

#[derive(Args)]
struct CommonArgs {
    /// Primary function: riemann | dirichlet:<D> | dedekind:<D>
    #[arg(long)]
    primary: String,
    /// Certified height for the zero cache when one is needed.
    #[arg(long, default_value_t = 100.0)]
    tmax: f64,
    /// Explicit zero-cache file (overrides SUPERZETA_CACHE_DIR).
    #[arg(long)]
    cache_path: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Locate zeros up to --tmax and write the cache file.
    Zeros {
        #[command(flatten)]
        common: CommonArgs,
        /// Initial scan step.
        #[arg(long, default_value_t = 0.05)]
        step: f64,
    },
    /// Evaluate one family member.
    Eval {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum)]
        family: Family,
        /// Exponent s (z1) or sigma (z2/z3), as `re` or `re,im`.
        #[arg(long, alias = "sigma", allow_hyphen_values = true)]
        s: Option<String>,
        /// Shift x of the first family.
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        /// Shift v of the second family.
        #[arg(long, allow_hyphen_values = true)]
        v: Option<String>,
        /// Shift y of the third family.
        #[arg(long, allow_hyphen_values = true)]
        y: Option<String>,
        /// Distinguished marker instead of a numeric exponent:
        /// zero | deriv0 | fp1 (z1) or zero | deriv0 (z2).
        #[arg(long)]
        marker: Option<String>,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
    },
    /// Reproduce the special-value tables (table1..table7).
    Table {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        which: String,
        /// Shift x for table1.
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        /// Shift v for table2.
        #[arg(long, allow_hyphen_values = true)]
        v: Option<String>,
    },
    /// Print cumulants with provenance.
    Cumulants {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = 6)]
        n: usize,
    },
    /// Run the identity battery and cross-method checks; exit 1 on failure.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn parse_complex(text: &str, what: &'static str) -> Result<C, Error> {
    let mut parts = text.splitn(2, ',');
    let re = parts
        .next()
        .unwrap_or("")
        .trim()
        .parse::<f64>()
        .map_err(|_| Error::Domain {
            op: "cli",
            detail: format!("bad {} value {:?}", what, text),
        })?;
    let im = match parts.next() {
        Some(im) => im.trim().parse::<f64>().map_err(|_| Error::Domain {
            op: "cli",
            detail: format!("bad {} value {:?}", what, text),
        })?,
        None => 0.0,
    };
    Ok(c(re, im))
}

fn cache_file_for(primary_id: &str, t_max: f64, explicit: Option<&Path>) -> Option<PathBuf> {
    if let Some(p) = explicit {
        return Some(p.to_path_buf());
    }
    let dir = std::env::var_os("SUPERZETA_CACHE_DIR")?;
    let name = format!(
        "{}_T{}.zeros",
        primary_id.replace(':', "_"),
        t_max.round() as i64
    );
    Some(PathBuf::from(dir).join(name))
}

/// Load a cache covering t_max from disk, or locate and (best-effort) save.
fn obtain_cache(
    p: &PrimaryFunction,
    t_max: f64,
    explicit: Option<&Path>,
) -> Result<ZeroCache, Error> {
    if let Some(path) = cache_file_for(p.id(), t_max, explicit) {
        if path.exists() {
            let cache = ZeroCache::read_from(&path)?;
            if cache.primary_id() == p.id() && cache.t_max() >= t_max {
                return Ok(cache);
            }
        }
        let cache = superzeta::zeros::locate_zeros(p, t_max)?;
        if let Some(parent) = path.parent() {
            let _ = std::fs::create_dir_all(parent);
        }
        let _ = cache.write_to(&path);
        return Ok(cache);
    }
    superzeta::zeros::locate_zeros(p, t_max)
}

#[derive(Serialize)]
struct ComplexOut {
    re: f64,
    im: f64,
}

impl From<C> for ComplexOut {
    fn from(z: C) -> Self {
        ComplexOut { re: z.re, im: z.im }
    }
}

#[derive(Serialize)]
struct EvalOut {
    family: String,
    parameters: serde_json::Value,
    method: String,
    value: ComplexOut,
    err_est: f64,
    zeros_used: usize,
}

fn print_eval(family: &str, params: serde_json::Value, r: &EvalResult, format: Format) {
    match format {
        Format::Json => {
            let out = EvalOut {
                family: family.to_string(),
                parameters: params,
                method: r.method.as_str().to_string(),
                value: r.value.into(),
                err_est: r.err_est,
                zeros_used: r.zeros_used,
            };
            println!("{}", serde_json::to_string(&out).unwrap());
        }
        _ => {
            println!(
                "{} {} = {:.15e}{}{:.15e}i   [{}, err_est {:.2e}, zeros {}]",
                family,
                params,
                r.value.re,
                if r.value.im >= 0.0 { " + " } else { " - " },
                r.value.im.abs(),
                r.method.as_str(),
                r.err_est,
                r.zeros_used
            );
        }
    }
}

fn complex_json(z: C) -> serde_json::Value {
    serde_json::json!({ "re": z.re, "im": z.im })
}

#[allow(clippy::too_many_arguments)]
fn run_eval(
    common: &CommonArgs,
    family: Family,
    s: Option<String>,
    x: Option<String>,
    v: Option<String>,
    y: Option<String>,
    marker: Option<String>,
    method: MethodArg,
) -> Result<(), Error> {
    let p = build_primary(PrimarySpec::parse(&common.primary)?)?;
    let needs_cache = matches!(family, Family::Z2 | Family::Z3)
        || matches!(method, MethodArg::Direct)
        || (matches!(method, MethodArg::Auto)
            && marker.is_none()
            && s.as_deref()
                .map(|t| parse_complex(t, "s").map(|z| z.re > 1.0).unwrap_or(false))
                .unwrap_or(false));
    let cache = if needs_cache {
        Some(obtain_cache(&p, common.tmax, common.cache_path.as_deref())?)
    } else {
        None
    };

    match family {
        Family::Z1 => {
            let xval = parse_complex(x.as_deref().unwrap_or("1"), "x")?;
            let result = if let Some(marker) = marker {
                let mk = match marker.as_str() {
                    "deriv0" => Z1Marker::Deriv0,
                    "fp1" => Z1Marker::Fp1,
                    "zero" => Z1Marker::Zero,
                    other => {
                        return Err(Error::Domain {
                            op: "cli",
                            detail: format!("unknown z1 marker {:?}", other),
                        })
                    }
                };
                z1_closed(&p, mk, xval)?
            } else {
                let sval = parse_complex(
                    s.as_deref().ok_or(Error::Domain {
                        op: "cli",
                        detail: "--s required (or --marker)".into(),
                    })?,
                    "s",
                )?;
                match method {
                    MethodArg::Auto => {
                        superzeta::families::z1_auto(&p, cache.as_ref(), sval, xval)?
                    }
                    MethodArg::Direct => z1_direct(
                        &p,
                        cache.as_ref().expect("cache prepared above"),
                        sval,
                        xval,
                    )?,
                    MethodArg::Integral => z1_integral(&p, sval, xval)?,
                    MethodArg::Mellin => z1_mellin(&p, sval, xval)?,
                    MethodArg::Closed => {
                        if sval.im != 0.0 || sval.re != sval.re.round() {
                            return Err(Error::Domain {
                                op: "cli",
                                detail: "closed route needs an integer s (or --marker)".into(),
                            });
                        }
                        let n = sval.re as i64;
                        if n <= 0 {
                            z1_closed(&p, Z1Marker::MinusN((-n) as u32), xval)?
                        } else {
                            z1_closed(&p, Z1Marker::PlusN(n as u32), xval)?
                        }
                    }
                    _ => {
                        return Err(Error::Domain {
                            op: "cli",
                            detail: "z1 supports auto|direct|integral|mellin|closed".into(),
                        })
                    }
                }
            };
            let params = serde_json::json!({
                "primary": common.primary,
                "s": s.as_deref().and_then(|t| parse_complex(t, "s").map(complex_json).ok()),
                "x": complex_json(xval),
            });
            print_eval("z1", params, &result, common.format);
        }
        Family::Z2 => {
            let cache = cache.as_ref().expect("cache prepared above");
            let vval = parse_complex(v.as_deref().unwrap_or("0"), "v")?;
            let result = if let Some(marker) = marker {
                match marker.as_str() {
                    "deriv0" => z2_closed(&p, cache, Z2Marker::Deriv0, vval)?,
                    "zero" => z2_closed(&p, cache, Z2Marker::Zero, vval)?,
                    other => {
                        return Err(Error::Domain {
                            op: "cli",
                            detail: format!("unknown z2 marker {:?}", other),
                        })
                    }
                }
            } else {
                let sval = parse_complex(
                    s.as_deref().ok_or(Error::Domain {
                        op: "cli",
                        detail: "--sigma required (or --marker)".into(),
                    })?,
                    "sigma",
                )?;
                match method {
                    MethodArg::Auto => z2_eval(&p, cache, sval, vval)?,
                    MethodArg::Direct => z2_direct(&p, cache, sval, vval)?,
                    MethodArg::Relation => {
                        if vval != c(0.0, 0.0) {
                            return Err(Error::Domain {
                                op: "cli",
                                detail: "the interchange relation needs v = 0".into(),
                            });
                        }
                        z2_basic(&p, cache, sval)?
                    }
                    MethodArg::Closed => {
                        if sval.im != 0.0 || sval.re != sval.re.round() {
                            return Err(Error::Domain {
                                op: "cli",
                                detail: "closed route needs an integer sigma".into(),
                            });
                        }
                        let m = sval.re as i64;
                        if m <= 0 {
                            z2_closed(&p, cache, Z2Marker::MinusM((-m) as u32), vval)?
                        } else {
                            z2_closed(&p, cache, Z2Marker::PlusM(m as u32), vval)?
                        }
                    }
                    MethodArg::Expansion => z2_eval(&p, cache, sval, vval)?,
                    _ => {
                        return Err(Error::Domain {
                            op: "cli",
                            detail: "z2 supports auto|direct|closed|expansion|relation".into(),
                        })
                    }
                }
            };
            let params = serde_json::json!({
                "primary": common.primary,
                "sigma": s.as_deref().and_then(|t| parse_complex(t, "sigma").map(complex_json).ok()),
                "v": complex_json(vval),
            });
            print_eval("z2", params, &result, common.format);
        }
        Family::Z3 => {
            let cache = cache.as_ref().expect("cache prepared above");
            let yval = parse_complex(y.as_deref().unwrap_or("0"), "y")?;
            let sval = parse_complex(
                s.as_deref().ok_or(Error::Domain {
                    op: "cli",
                    detail: "--sigma required".into(),
                })?,
                "sigma",
            )?;
            let result = match method {
                MethodArg::Auto | MethodArg::Expansion => z3_eval(&p, cache, sval, yval)?,
                MethodArg::Direct => z3_direct(&p, cache, sval, yval)?,
                _ => {
                    return Err(Error::Domain {
                        op: "cli",
                        detail: "z3 supports auto|direct|expansion".into(),
                    })
                }
            };
            let params = serde_json::json!({
                "primary": common.primary,
                "sigma": complex_json(sval),
                "y": complex_json(yval),
            });
            print_eval("z3", params, &result, common.format);
        }
    }
    Ok(())
}

fn print_table(rows: &[TableRow], format: Format) {
    match format {
        Format::Csv => {
            println!("marker,closed_form_value,direct_value,abs_diff,tolerance,pass");
            for row in rows {
                let fmt_c = |v: Option<C>| {
                    v.map(|z| {
                        if z.im == 0.0 {
                            format!("{:.15e}", z.re)
                        } else {
                            format!("{:.15e}{:+.15e}i", z.re, z.im)
                        }
                    })
                    .unwrap_or_default()
                };
                println!(
                    "{},{},{},{},{},{}",
                    row.marker,
                    fmt_c(row.closed_value),
                    fmt_c(row.cross_value),
                    row.abs_diff.map(|d| format!("{:.3e}", d)).unwrap_or_default(),
                    if row.tolerance.is_nan() {
                        String::new()
                    } else {
                        format!("{:.1e}", row.tolerance)
                    },
                    row.pass.map(|p| p.to_string()).unwrap_or_default(),
                );
            }
        }
        Format::Json => {
            let items: Vec<serde_json::Value> = rows
                .iter()
                .map(|row| {
                    serde_json::json!({
                        "marker": row.marker,
                        "closed_form_value": row.closed_value.map(complex_json),
                        "direct_value": row.cross_value.map(complex_json),
                        "abs_diff": row.abs_diff,
                        "tolerance": if row.tolerance.is_nan() { None } else { Some(row.tolerance) },
                        "pass": row.pass,
                        "note": row.note,
                    })
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&items).unwrap());
        }
        Format::Text => {
            for row in rows {
                let status = match row.pass {
                    Some(true) => "ok",
                    Some(false) => "FAIL",
                    None => "--",
                };
                println!(
                    "{:<14} closed {:<22} cross {:<22} [{}]{}",
                    row.marker,
                    row.closed_value
                        .map(|z| format!("{:+.12e}", z.re))
                        .unwrap_or_else(|| "(n/a)".into()),
                    row.cross_value
                        .map(|z| format!("{:+.12e}", z.re))
                        .unwrap_or_else(|| "(n/a)".into()),
                    status,
                    row.note
                        .as_deref()
                        .map(|n| format!("  ({})", n))
                        .unwrap_or_default(),
                );
            }
        }
    }
}

fn run(cli: Cli) -> Result<bool, Error> {
    match cli.command {
        Command::Zeros { common, step } => {
            let p = build_primary(PrimarySpec::parse(&common.primary)?)?;
            let cache = superzeta::zeros::locate_zeros_with_step(&p, common.tmax, step)?;
            let cert = verify_count(&p, &cache)?;
            let path = cache_file_for(p.id(), common.tmax, common.cache_path.as_deref());
            if let Some(path) = &path {
                if let Some(parent) = path.parent() {
                    let _ = std::fs::create_dir_all(parent);
                }
                cache.write_to(path)?;
            }
            match common.format {
                Format::Json => println!(
                    "{}",
                    serde_json::json!({
                        "primary": p.id(),
                        "t_max": cache.t_max(),
                        "count": cache.len(),
                        "phase_count": cert.expected,
                        "width_bound": cache.width_bound(),
                        "file": path.as_ref().map(|p| p.display().to_string()),
                    })
                ),
                _ => {
                    println!(
                        "{}: {} zeros located up to T = {} (phase count {}, width <= {:.1e})",
                        p.id(),
                        cache.len(),
                        cache.t_max(),
                        cert.expected,
                        cache.width_bound()
                    );
                    match path {
                        Some(path) => println!("cache written to {}", path.display()),
                        None => println!(
                            "set SUPERZETA_CACHE_DIR or --cache-path to persist the cache"
                        ),
                    }
                }
            }
            Ok(true)
        }
        Command::Eval {
            ref common,
            family,
            ref s,
            ref x,
            ref v,
            ref y,
            ref marker,
            method,
        } => {
            run_eval(
                common,
                family,
                s.clone(),
                x.clone(),
                v.clone(),
                y.clone(),
                marker.clone(),
                method,
            )?;
            Ok(true)
        }
        Command::Table {
            common,
            which,
            x,
            v,
        } => {
            let p = build_primary(PrimarySpec::parse(&common.primary)?)?;
            let kind = TableKind::parse(&which)?;
            let cache = obtain_cache(&p, common.tmax, common.cache_path.as_deref())?;
            let shift = match kind {
                TableKind::GeneralShift => Some(parse_complex(x.as_deref().unwrap_or("2"), "x")?),
                TableKind::GeneralV => Some(parse_complex(v.as_deref().unwrap_or("0.25"), "v")?),
                _ => None,
            };
            let rows = table_rows(&p, &cache, kind, shift)?;
            print_table(&rows, common.format);
            Ok(rows.iter().all(|r| r.pass != Some(false)))
        }
        Command::Cumulants { common, n } => {
            let p = build_primary(PrimarySpec::parse(&common.primary)?)?;
            let seq = cumulants(&p, n)?;
            match common.format {
                Format::Json => {
                    let items: Vec<serde_json::Value> = seq
                        .g
                        .iter()
                        .zip(&seq.provenance)
                        .enumerate()
                        .map(|(k, (g, prov))| {
                            serde_json::json!({
                                "n": k,
                                "value": g,
                                "provenance": match prov {
                                    Provenance::ClosedForm => "closed_form",
                                    Provenance::Numeric => "numeric",
                                },
                            })
                        })
                        .collect();
                    println!(
                        "{}",
                        serde_json::json!({"primary": p.id(), "cumulants": items})
                    );
                }
                _ => {
                    println!("cumulants of {}:", p.id());
                    for (k, (g, prov)) in seq.g.iter().zip(&seq.provenance).enumerate() {
                        println!(
                            "  g_{} = {:+.15e}   [{}]",
                            k,
                            g,
                            match prov {
                                Provenance::ClosedForm => "closed form",
                                Provenance::Numeric => "numeric",
                            }
                        );
                    }
                }
            }
            Ok(true)
        }
        Command::Verify { common } => {
            let p = build_primary(PrimarySpec::parse(&common.primary)?)?;
            let cache = obtain_cache(&p, common.tmax, common.cache_path.as_deref())?;
            let cert = verify_count(&p, &cache)?;
            println!(
                "zero count certificate: {} zeros to T = {} (phase {})",
                cache.len(),
                cache.t_max(),
                cert.expected
            );
            let report = identity_suite(&p, &cache)?;
            let mut ok = true;
            for chk in &report.checks {
                let flag = if chk.pass { "ok  " } else { "FAIL" };
                ok &= chk.pass;
                println!(
                    "  [{}] {:<42} deviation {:.3e} (tol {:.1e})",
                    flag, chk.name, chk.deviation, chk.tolerance
                );
            }
            println!(
                "verify {}: {} checks, max deviation {:.3e} -> {}",
                p.id(),
                report.checks.len(),
                report.max_deviation(),
                if ok { "PASS" } else { "FAIL" }
            );
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}", e);
            match e.kind() {
                ErrorKind::Domain | ErrorKind::Io => ExitCode::from(2),
                ErrorKind::Numeric => ExitCode::from(3),
            }
        }
    }
}
