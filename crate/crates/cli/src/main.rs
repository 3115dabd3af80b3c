//! `lpset`: command-line front end for the lpset library.

mod grid;
mod output;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use lpset::census::{lambda_brute_force, lambda_closed, lambda_orbit_oracle, CensusReport, OracleKind};
use lpset::equiv::{
    automorphisms, brute_force_equivalent, brute_force_stabilizer, lp_equivalent, BruteForceOptions,
    DEFAULT_BRUTE_FORCE_CEILING,
};
use lpset::gf::numtheory::{checked_pow, phi};
use lpset::linset::points_of;
use lpset::verify::{run_suite, VerifyConfig};
use lpset::{build_field, FieldTower, LPParams, LinearizedPoly, LpError};

use output::{dash, Table};

#[derive(Parser, Debug)]
#[command(name = "lpset", version, about = "LP scattered linear sets on PG(1, q^n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Point set, weights and scatteredness of L_f for f = X^(q^s) + θX^(q^(n-s)).
    Linset {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        theta: String,
        /// Accept θ with N(θ) ∈ {0, 1}.
        #[arg(long)]
        allow_invalid: bool,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Decide PΓL-equivalence of lp(s, θ) and lp(t, δ).
    Equiv {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        theta: String,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        delta: String,
        /// Cross-check against the exhaustive PΓL search.
        #[arg(long)]
        brute_force: bool,
        #[command(flatten)]
        run: RunArgs,
    },
    /// The automorphism group of L_f.
    Aut {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        theta: String,
        /// Compare with the brute-force stabilizer.
        #[arg(long)]
        brute_force: bool,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Λ(n, q) over a grid; each of --p, --r, --n takes a list such as `2,3` or `3-6`.
    Census {
        #[arg(long)]
        p: String,
        #[arg(long)]
        r: String,
        #[arg(long)]
        n: String,
        /// Use the brute-force partition as oracle where the field fits under --ceiling.
        #[arg(long)]
        brute_force: bool,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run an invariant suite: adjoint, coeffs, normpower, equiv, aut, census, bounds or all.
    Verify {
        #[arg(long)]
        suite: String,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Args, Debug)]
struct FieldArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    r: u32,
    #[arg(long)]
    n: u32,
    /// Modulus of F_{p^(rn)} over F_p, constant term first, monic.
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u64>>,
}

impl FieldArgs {
    fn tower(&self) -> lpset::Result<Arc<FieldTower>> {
        Ok(Arc::new(build_field(self.p, self.r, self.n, self.modulus.clone())?))
    }
}

#[derive(Args, Debug)]
struct RunArgs {
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    format: Format,
    /// Largest field order p^(rn) for brute-force searches.
    #[arg(long, default_value_t = DEFAULT_BRUTE_FORCE_CEILING, value_parser = clap::value_parser!(u64).range(1..))]
    ceiling: u64,
    /// Largest p^(wr) for the orbit oracle.
    #[arg(long, default_value_t = lpset::census::DEFAULT_ORBIT_CEILING, value_parser = clap::value_parser!(u64).range(1..))]
    orbit_ceiling: u64,
    /// Worker threads (default: all cores).
    #[arg(long)]
    workers: Option<usize>,
    /// Seed for sampled checks.
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
}

impl RunArgs {
    fn brute(&self) -> BruteForceOptions {
        BruteForceOptions {
            ceiling: self.ceiling,
            ..BruteForceOptions::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

/// Exit status 1 means a failed check, 2 an error.
enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = match &cli.command {
        Command::Linset { run, .. }
        | Command::Equiv { run, .. }
        | Command::Aut { run, .. }
        | Command::Census { run, .. }
        | Command::Verify { run, .. } => run,
    };
    if let Some(k) = run.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match dispatch(&cli.command) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(command: &Command) -> lpset::Result<Outcome> {
    match command {
        Command::Linset {
            field,
            s,
            theta,
            allow_invalid,
            run,
        } => cmd_linset(field, *s, theta, *allow_invalid, run),
        Command::Equiv {
            field,
            s,
            theta,
            t,
            delta,
            brute_force,
            run,
        } => cmd_equiv(field, *s, theta, *t, delta, *brute_force, run),
        Command::Aut {
            field,
            s,
            theta,
            brute_force,
            run,
        } => cmd_aut(field, *s, theta, *brute_force, run),
        Command::Census {
            p,
            r,
            n,
            brute_force,
            run,
        } => cmd_census(p, r, n, *brute_force, run),
        Command::Verify { suite, run } => cmd_verify(suite, run),
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json values serialize"));
}

fn cmd_linset(field: &FieldArgs, s: u32, theta: &str, allow_invalid: bool, run: &RunArgs) -> lpset::Result<Outcome> {
    let t = field.tower()?;
    let theta = t.parse_element(theta)?;
    let params = LPParams::new(&t, s, theta)?;
    let valid = params.is_valid(&t);
    if !valid && !allow_invalid {
        return Err(LpError::InvalidTheta);
    }
    let norm = t.norm_q(theta, 1)?;
    let set = points_of(&LinearizedPoly::lp(&t, &params))?;
    let bound = set.size_bound();
    let size = set.size() as u64;
    let bound_status = if size == bound { "equal" } else { "below" };
    let mut distribution: BTreeMap<u32, u64> = BTreeMap::new();
    for &w in set.weights().values() {
        *distribution.entry(w).or_default() += 1;
    }
    let mut notes = Vec::new();
    if theta.is_zero() {
        notes.push("θ = 0: pseudoregulus type".to_string());
    }
    if t.n() == 3 && valid {
        notes.push("n = 3: every maximum scattered LP set is of pseudoregulus type".to_string());
    }
    match run.format {
        Format::Json => print_json(&json!({
            "s": s,
            "theta": theta,
            "norm": norm,
            "valid": valid,
            "size": size,
            "bound": bound,
            "bound_status": bound_status,
            "scattered": set.is_scattered(),
            "weight_distribution": distribution,
            "notes": notes,
        })),
        Format::Tsv => {
            let weights: Vec<String> = distribution.iter().map(|(w, c)| format!("{w}:{c}")).collect();
            let mut table = Table::new(&[
                "s", "theta", "norm", "valid", "size", "bound", "bound_status", "scattered", "weights", "notes",
            ]);
            table.row(vec![
                s.to_string(),
                theta.to_string(),
                norm.to_string(),
                valid.to_string(),
                size.to_string(),
                bound.to_string(),
                bound_status.to_string(),
                set.is_scattered().to_string(),
                weights.join(","),
                dash(notes.join("; ")),
            ]);
            table.print();
        }
    }
    Ok(Outcome::Pass)
}

fn cmd_equiv(
    field: &FieldArgs,
    s: u32,
    theta: &str,
    t_param: u32,
    delta: &str,
    brute_force: bool,
    run: &RunArgs,
) -> lpset::Result<Outcome> {
    let t = field.tower()?;
    let theta = t.parse_element(theta)?;
    let delta = t.parse_element(delta)?;
    let verdict = lp_equivalent(&t, s, theta, t_param, delta)?;
    let brute = if brute_force {
        let f = LinearizedPoly::lp(&t, &LPParams::new(&t, s, theta)?);
        let g = LinearizedPoly::lp(&t, &LPParams::new(&t, t_param, delta)?);
        Some(brute_force_equivalent(&f, &g, &run.brute())?)
    } else {
        None
    };
    let agree = brute.as_ref().map(|b| b.is_some() == verdict.equivalent);
    let checked_ok = !verdict.equivalent || verdict.checked;
    let mut notes = Vec::new();
    if t.n() == 3 && agree == Some(false) {
        notes.push("n = 3: LP sets are of pseudoregulus type; norm classes can be PΓL-equivalent".to_string());
    }
    match run.format {
        Format::Json => {
            let mut v = json!({ "verdict": verdict });
            if let Some(b) = &brute {
                v["brute_force"] = json!({ "equivalent": b.is_some(), "witness": b });
                v["agree"] = json!(agree);
            }
            v["notes"] = json!(notes);
            print_json(&v);
        }
        Format::Tsv => {
            let mut table = Table::new(&[
                "equivalent",
                "case",
                "tau_exponent",
                "witness",
                "checked",
                "brute_force",
                "brute_witness",
                "agree",
                "notes",
            ]);
            let case = serde_json::to_value(verdict.case).expect("case serializes");
            table.row(vec![
                verdict.equivalent.to_string(),
                case.as_str().unwrap_or("-").to_string(),
                dash(verdict.tau_exponent.map(|k| k.to_string()).unwrap_or_default()),
                dash(verdict.witness.map(|w| w.map.to_string()).unwrap_or_default()),
                verdict.checked.to_string(),
                dash(brute.as_ref().map(|b| b.is_some().to_string()).unwrap_or_default()),
                dash(brute.as_ref().and_then(|b| b.map(|m| m.to_string())).unwrap_or_default()),
                dash(agree.map(|a| a.to_string()).unwrap_or_default()),
                dash(notes.join("; ")),
            ]);
            table.print();
        }
    }
    Ok(if agree == Some(false) || !checked_ok {
        Outcome::Fail
    } else {
        Outcome::Pass
    })
}

fn cmd_aut(field: &FieldArgs, s: u32, theta: &str, brute_force: bool, run: &RunArgs) -> lpset::Result<Outcome> {
    let t = field.tower()?;
    let theta = t.parse_element(theta)?;
    let group = automorphisms(&t, s, theta)?;
    let stabilizer = if brute_force {
        let f = LinearizedPoly::lp(&t, &LPParams::new(&t, s, theta)?);
        Some(brute_force_stabilizer(&f, &run.brute())?)
    } else {
        None
    };
    let agree = stabilizer.as_ref().map(|st| {
        st.len() == group.elements.len() && st.iter().all(|m| group.elements.contains(m))
    });
    let mut notes = Vec::new();
    if t.n() == 3 {
        notes.push("n = 3: the stabilizer of a pseudoregulus-type set is larger than the constructed group".to_string());
    }
    match run.format {
        Format::Json => {
            let mut v = json!({
                "size": group.size(),
                "n_tau": group.n_tau,
                "predicted_size": group.predicted_size,
                "d_part": group.d_part.len(),
                "c_part": group.c_part.len(),
                "elements": group.elements,
                "notes": notes,
            });
            if let Some(st) = &stabilizer {
                v["stabilizer_size"] = json!(st.len());
                v["agree"] = json!(agree);
            }
            print_json(&v);
        }
        Format::Tsv => {
            let mut table = Table::new(&[
                "size",
                "n_tau",
                "predicted",
                "d_part",
                "c_part",
                "stabilizer",
                "agree",
                "notes",
            ]);
            table.row(vec![
                group.size().to_string(),
                group.n_tau.to_string(),
                group.predicted_size.to_string(),
                group.d_part.len().to_string(),
                group.c_part.len().to_string(),
                dash(stabilizer.as_ref().map(|st| st.len().to_string()).unwrap_or_default()),
                dash(agree.map(|a| a.to_string()).unwrap_or_default()),
                dash(notes.join("; ")),
            ]);
            table.print();
        }
    }
    Ok(if agree == Some(false) { Outcome::Fail } else { Outcome::Pass })
}

/// Closed form plus the best oracle the ceilings allow.
fn census_cell(p: u64, r: u32, n: u32, brute_force: bool, run: &RunArgs) -> lpset::Result<CensusReport> {
    let report = lambda_closed(p, r, n)?;
    let rn = r as u64 * n as u64;
    if brute_force && checked_pow(p, rn).is_ok_and(|o| o <= run.ceiling as u128) {
        let brute = lambda_brute_force(p, r, n, &run.brute())?;
        return Ok(report.with_oracle(BigInt::from(brute), OracleKind::BruteForce));
    }
    match lambda_orbit_oracle(p, r, n, run.orbit_ceiling) {
        Ok(orbits) => {
            let value = BigInt::from(orbits) * phi(n as u64) / 2;
            Ok(report.with_oracle(value, OracleKind::Orbit))
        }
        Err(LpError::CeilingExceeded { .. } | LpError::Overflow(_)) => Ok(report),
        Err(e) => Err(e),
    }
}

fn cmd_census(p: &str, r: &str, n: &str, brute_force: bool, run: &RunArgs) -> lpset::Result<Outcome> {
    use rayon::prelude::*;
    let cells = grid::cells(p, r, n)?;
    if cells.is_empty() {
        return Err(LpError::Precondition("the grid has no cell with q != 2 and n >= 3"));
    }
    let reports: Vec<CensusReport> = cells
        .par_iter()
        .map(|&(p, r, n)| census_cell(p, r, n, brute_force, run))
        .collect::<lpset::Result<_>>()?;
    let all_verified = reports.iter().all(CensusReport::verified);
    match run.format {
        Format::Json => print_json(&serde_json::to_value(&reports).expect("reports serialize")),
        Format::Tsv => {
            let mut table = Table::new(&[
                "p", "r", "n", "lambda", "epsilon", "lower", "upper", "oracle", "verified", "notes",
            ]);
            for rep in &reports {
                let (lower, upper) = match &rep.bounds {
                    Some(b) => (b.lower.to_string(), b.upper.to_string()),
                    None => ("-".to_string(), "-".to_string()),
                };
                table.row(vec![
                    rep.p.to_string(),
                    rep.r.to_string(),
                    rep.n.to_string(),
                    rep.lambda.to_string(),
                    rep.epsilon.to_string(),
                    lower,
                    upper,
                    dash(rep.oracle_lambda.as_ref().map(|v| v.to_string()).unwrap_or_default()),
                    rep.verified().to_string(),
                    dash(rep.notes.join("; ")),
                ]);
            }
            table.print();
        }
    }
    Ok(if all_verified { Outcome::Pass } else { Outcome::Fail })
}

fn cmd_verify(suite: &str, run: &RunArgs) -> lpset::Result<Outcome> {
    let config = VerifyConfig {
        seed: run.seed,
        brute_force: run.brute(),
        field_ceiling: run.ceiling,
        ..VerifyConfig::default()
    };
    let report = run_suite(suite, &config)?;
    match run.format {
        Format::Json => print_json(&json!({
            "suite": report.suite,
            "checks": report.checks(),
            "failures": report.failures(),
            "rows": report.rows,
        })),
        Format::Tsv => {
            let mut table = Table::new(&["suite", "check", "cell", "checks", "failures", "info", "first_failure"]);
            for row in &report.rows {
                table.row(vec![
                    row.suite.to_string(),
                    row.check.to_string(),
                    row.cell.clone(),
                    row.checks.to_string(),
                    row.failures.to_string(),
                    dash(row.info.clone()),
                    dash(row.first_failure.clone().unwrap_or_default()),
                ]);
            }
            table.print();
            eprintln!("{}: {} checks, {} failures", report.suite, report.checks(), report.failures());
        }
    }
    Ok(if report.passed() { Outcome::Pass } else { Outcome::Fail })
}
