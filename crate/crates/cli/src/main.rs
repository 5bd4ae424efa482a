use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use lmo_core::dedekind::{dedekind_symbol, dedekind_table, Fraction};
use lmo_core::exact::rational_to_string;
use lmo_core::invariants::{
    aarhus0_unknot, ihs_parameters, ihs_parameters_exhaustive, lens_report, seifert_report, z_rest, Fiber,
    InvariantReport, LensData, SeifertData,
};
use lmo_core::numeric::{eval_hbar_series, z_rest_quadrature};
use lmo_core::presentation::{cfrac_expand, dedekind_via_surgery, inverse_corners_closed, inverse_corners_solved};
use lmo_core::{verify, HbarSeries, DEFAULT_ORDER};

#[derive(Parser)]
#[command(name = "lmo", version, about = "LMO invariant (sl(2) reduction), Casson-Walker invariant and Dedekind symbols")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Truncation order in ħ.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER)]
    order: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// LMO series of the lens space L(p, q).
    Lens {
        #[arg(allow_negative_numbers = true)]
        p: i64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
    },
    /// LMO series and Casson-Walker invariant of S³(b; p1/q1, ...).
    Seifert {
        #[arg(allow_negative_numbers = true)]
        b: i64,
        fibers: Vec<Fiber>,
    },
    /// Casson-Walker invariant of S³(b; p1/q1, ...).
    Casson {
        #[arg(allow_negative_numbers = true)]
        b: i64,
        fibers: Vec<Fiber>,
    },
    /// Dedekind symbol S(p/q).
    Dedekind {
        #[arg(allow_hyphen_values = true)]
        fraction: Fraction,
    },
    /// Table of q·S(p/q) for 0 < p < q ≤ qmax, as CSV (or JSON).
    DedekindTable {
        #[arg(long)]
        qmax: i64,
    },
    /// Continued fraction, linking matrix data and both routes to S(p/q).
    Cfrac {
        #[arg(allow_hyphen_values = true)]
        fraction: Fraction,
    },
    /// Seifert parameters of the integral homology sphere Σ(p1, ..., pn).
    Ihs {
        orders: Vec<i64>,
        #[arg(long, default_value = "+", allow_hyphen_values = true, value_parser = parse_sign)]
        sign: i64,
        /// Also confirm uniqueness by searching all q-tuples.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Aarhus value of the f-framed unknot.
    AarhusUnknot {
        #[arg(allow_negative_numbers = true)]
        f: i64,
    },
    /// Compare Z^rest at ħ = t by quadrature against the exact series.
    ZrestCheck {
        #[arg(allow_negative_numbers = true)]
        b: i64,
        fibers: Vec<Fiber>,
        #[arg(long, default_value_t = 0.1)]
        hbar: f64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Run every identity check and report pass/fail.
    Verify,
}

fn parse_sign(s: &str) -> Result<i64, String> {
    match s {
        "+" | "+1" | "1" => Ok(1),
        "-" | "-1" => Ok(-1),
        _ => Err(format!("expected + or -, got {s:?}")),
    }
}

/// Outcome of a command that ran: either it succeeded, or a check it
/// performed did not hold (exit 1 without a diagnostic of its own).
enum Done {
    Ok,
    ChecksFailed,
}

type CmdResult = Result<Done, Box<dyn std::error::Error>>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = std::io::stdout().lock();
    match run(&cli, &mut out) {
        Ok(Done::Ok) => ExitCode::SUCCESS,
        Ok(Done::ChecksFailed) => ExitCode::from(1),
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn pairs(fibers: &[Fiber]) -> Vec<(i64, i64)> {
    fibers.iter().map(|f| (f.p, f.q)).collect()
}

fn run(cli: &Cli, out: &mut impl Write) -> CmdResult {
    let d = cli.order;
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Lens { p, q } => {
            let l = LensData::new(*p, *q)?;
            let r = lens_report(&l, d)?;
            emit_report(out, json, &format!("L({p},{q})"), &r)?;
        }
        Command::Seifert { b, fibers } => {
            let m = SeifertData::new(*b, &pairs(fibers))?;
            let r = seifert_report(&m, d)?;
            emit_report(out, json, &m.to_string(), &r)?;
        }
        Command::Casson { b, fibers } => {
            let m = SeifertData::new(*b, &pairs(fibers))?;
            let cw = rational_to_string(&lmo_core::invariants::casson_walker(&m)?);
            if json {
                writeln!(out, "{}", json!({ "casson_walker": cw }))?;
            } else {
                writeln!(out, "{cw}")?;
            }
        }
        Command::Dedekind { fraction } => {
            let s = rational_to_string(&dedekind_symbol(fraction.p(), fraction.q())?);
            if json {
                writeln!(out, "{}", json!({ "S": s }))?;
            } else {
                writeln!(out, "{s}")?;
            }
        }
        Command::DedekindTable { qmax } => {
            let rows = dedekind_table(*qmax)?;
            if json {
                writeln!(out, "{}", serde_json::to_string(&rows)?)?;
            } else {
                let mut w = csv::Writer::from_writer(out);
                for r in &rows {
                    w.serialize(r)?;
                }
                w.flush()?;
            }
        }
        Command::Cfrac { fraction } => cfrac(out, json, fraction)?,
        Command::Ihs { orders, sign, exhaustive } => {
            let m = ihs_parameters(orders, *sign)?;
            let unique = if *exhaustive {
                let all = ihs_parameters_exhaustive(orders, *sign)?;
                Some(all.len() == 1 && all[0] == m)
            } else {
                None
            };
            if json {
                let mut v = serde_json::to_value(&m)?;
                if let Some(u) = unique {
                    v["unique"] = json!(u);
                }
                writeln!(out, "{v}")?;
            } else {
                writeln!(out, "{m}")?;
                if let Some(u) = unique {
                    writeln!(out, "unique: {u}")?;
                }
            }
            if unique == Some(false) {
                return Ok(Done::ChecksFailed);
            }
        }
        Command::AarhusUnknot { f } => emit_series(out, json, &aarhus0_unknot(*f, d)?)?,
        Command::ZrestCheck { b, fibers, hbar, tol } => {
            let m = SeifertData::new(*b, &pairs(fibers))?;
            let q = z_rest_quadrature(&m, *hbar, *tol)?;
            let s = eval_hbar_series(&z_rest(&m, d)?, *hbar);
            let diff = (q.value - s.value).abs();
            if json {
                let v = json!({
                    "manifold": m.to_string(),
                    "hbar": hbar,
                    "quadrature": q,
                    "series": s,
                    "difference": diff,
                });
                writeln!(out, "{v}")?;
            } else {
                writeln!(out, "{m}  at ħ = {hbar}")?;
                writeln!(out, "quadrature  {:>20.15}  ± {:.1e}", q.value, q.est_error)?;
                writeln!(out, "series      {:>20.15}  ± {:.1e}", s.value, s.est_error)?;
                writeln!(out, "difference  {diff:>20.3e}")?;
            }
        }
        Command::Verify => {
            let results = verify::run_all(d);
            let failed = results.iter().filter(|c| !c.passed).count();
            if json {
                writeln!(out, "{}", serde_json::to_string(&results)?)?;
            } else {
                let w = results.iter().map(|c| c.module.len() + c.name.len() + 1).max().unwrap_or(0);
                for c in &results {
                    let tag = if c.passed { "PASS" } else { "FAIL" };
                    let id = format!("{}/{}", c.module, c.name);
                    writeln!(out, "{tag}  {id:<w$}  {}", c.statement)?;
                    if !c.passed {
                        writeln!(out, "      {}", c.detail)?;
                    }
                }
                writeln!(out, "{} checks, {} failed", results.len(), failed)?;
            }
            if failed > 0 {
                return Ok(Done::ChecksFailed);
            }
        }
    }
    Ok(Done::Ok)
}

fn cfrac(out: &mut impl Write, json: bool, f: &Fraction) -> Result<(), Box<dyn std::error::Error>> {
    let c = cfrac_expand(f.p(), f.q())?;
    let closed = inverse_corners_closed(&c.a)?;
    let solved = inverse_corners_solved(&c.a)?;
    if closed != solved {
        return Err(format!("inverse corners disagree: {closed:?} vs {solved:?}").into());
    }
    let direct = dedekind_symbol(f.p(), f.q())?;
    let surgery = dedekind_via_surgery(f.p(), f.q())?;
    let r = rational_to_string;
    if json {
        let v = json!({
            "a": c.a,
            "p": c.p, "u": c.u, "q": c.q, "v": c.v,
            "tau": c.tau,
            "sigma": c.sigma,
            "det": c.det,
            "l11": r(&closed.l11), "l1l": r(&closed.l1l), "lll": r(&closed.lll),
            "S_direct": r(&direct),
            "S_surgery": r(&surgery),
        });
        writeln!(out, "{v}")?;
    } else {
        let a: Vec<String> = c.a.iter().map(|x| x.to_string()).collect();
        let rows = [
            ("a", format!("[{}]", a.join(", "))),
            ("(p,u,q,v)", format!("({}, {}, {}, {})", c.p, c.u, c.q, c.v)),
            ("τ", c.tau.to_string()),
            ("ς", c.sigma.to_string()),
            ("det Λ", c.det.to_string()),
            ("l^11", r(&closed.l11)),
            ("l^1ℓ", r(&closed.l1l)),
            ("l^ℓℓ", r(&closed.lll)),
            ("S direct", r(&direct)),
            ("S surgery", r(&surgery)),
        ];
        for (k, v) in rows {
            writeln!(out, "{}{}  {v}", k, " ".repeat(10 - k.chars().count()))?;
        }
    }
    if direct != surgery {
        return Err(format!("S routes disagree: {} vs {}", r(&direct), r(&surgery)).into());
    }
    Ok(())
}

fn emit_series(out: &mut impl Write, json: bool, z: &HbarSeries) -> std::io::Result<()> {
    if json {
        writeln!(out, "{}", json!({ "series": z }))
    } else {
        write_series_rows(out, z)
    }
}

/// Coefficients one per line, right-aligned on the slash.
fn write_series_rows(out: &mut impl Write, z: &HbarSeries) -> std::io::Result<()> {
    let strs: Vec<(String, String)> = z
        .coeffs()
        .iter()
        .map(|c| (c.numer().to_string(), c.denom().to_string()))
        .collect();
    let wn = strs.iter().map(|s| s.0.len()).max().unwrap_or(1);
    let wk = z.order().to_string().len();
    for (k, (n, d)) in strs.iter().enumerate() {
        if d == "1" {
            writeln!(out, "ħ^{k:<wk$}  {n:>wn$}")?;
        } else {
            writeln!(out, "ħ^{k:<wk$}  {n:>wn$}/{d}")?;
        }
    }
    Ok(())
}

fn emit_report(out: &mut impl Write, json: bool, name: &str, r: &InvariantReport) -> Result<(), Box<dyn std::error::Error>> {
    if json {
        writeln!(out, "{}", serde_json::to_string(r)?)?;
        return Ok(());
    }
    let strip = |s: &str| s.strip_suffix("/1").map(str::to_string).unwrap_or_else(|| s.to_string());
    writeln!(out, "manifold  {name}")?;
    if let Some(e0) = &r.e0 {
        writeln!(out, "e0        {}", strip(e0))?;
    }
    writeln!(out, "|H1|      {}", strip(&r.h1_order))?;
    writeln!(out, "λ_w       {}", strip(&r.casson_walker))?;
    write_series_rows(out, &r.series)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn clap_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn sign_parsing() {
        assert_eq!(parse_sign("+"), Ok(1));
        assert_eq!(parse_sign("-"), Ok(-1));
        assert!(parse_sign("0").is_err());
    }
}
