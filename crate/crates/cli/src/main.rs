//! Command-line interface for exact singularity analysis of parameterized
//! rational plane curves.
//!
//! Exit codes: 0 on success, 1 on invalid input (parse errors, base points,
//! failed birationality, with an (r, e) diagnosis where applicable), 2 on a
//! violated internal invariant.

use clap::{Args, Parser, Subcommand};
use curvesy_cli::{json, parse, sample};
use curvesy_core::error::CurveError;
use curvesy_core::singloc::{analyze, diagnose};
use curvesy_core::syzygy::{hb_kernel, ParamTriple};
use serde_json::json;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "curvesy",
    about = "Exact-arithmetic singularity analysis of parameterized rational plane curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct TripleArgs {
    /// First form, e.g. "x^4"
    #[arg(long)]
    g1: String,
    /// Second form, e.g. "x^3*y"
    #[arg(long)]
    g2: String,
    /// Third form, e.g. "y^4"
    #[arg(long)]
    g3: String,
    /// Human-readable output instead of JSON
    #[arg(long)]
    pretty: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Full singularity report
    Analyze(TripleArgs),
    /// The Hilbert-Burch matrix
    Hb(TripleArgs),
    /// The multiplicity-c configuration and the gcd of the 3x3 minors
    Multc(TripleArgs),
    /// The 13-way quartic classification
    Quartic(TripleArgs),
    /// The conductor form and its factorization
    Conductor(TripleArgs),
    /// Cross-validation against the implicit equation
    Verify(TripleArgs),
    /// Random sampling of the parameter space with stratum statistics
    Sample {
        /// Number of triples to draw
        #[arg(long)]
        count: usize,
        /// Degree of the forms
        #[arg(long)]
        degree: usize,
        /// RNG seed (bit-reproducible)
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        pretty: bool,
    },
}

fn parse_triple(a: &TripleArgs) -> Result<ParamTriple, String> {
    let g1 = parse::parse_form(&a.g1).map_err(|e| format!("--g1: {}", e))?;
    let g2 = parse::parse_form(&a.g2).map_err(|e| format!("--g2: {}", e))?;
    let g3 = parse::parse_form(&a.g3).map_err(|e| format!("--g3: {}", e))?;
    ParamTriple::new(g1, g2, g3).map_err(|e| e.to_string())
}

fn fail_invalid(g: Option<&ParamTriple>, msg: &str, pretty: bool) -> ExitCode {
    let mut obj = serde_json::Map::new();
    obj.insert("error".into(), json!(msg));
    if let Some(g) = g {
        if let Ok(v) = diagnose(g) {
            obj.insert("base_point_free".into(), json!(v.base_point_free));
            if let Some((r, e)) = v.r_e {
                obj.insert("birational".into(), json!(r == 1));
                obj.insert("r".into(), json!(r));
                obj.insert("e".into(), json!(e));
            }
        }
    }
    if pretty {
        eprintln!("error: {}", msg);
        if let Some(r) = obj.get("r") {
            eprintln!("  r = {}, e = {}", r, obj["e"]);
        }
    } else {
        println!("{}", serde_json::Value::Object(obj));
    }
    ExitCode::from(1)
}

fn fail_internal(msg: &str) -> ExitCode {
    eprintln!("internal invariant violated: {}", msg);
    ExitCode::from(2)
}

fn dispatch_error(g: Option<&ParamTriple>, e: CurveError, pretty: bool) -> ExitCode {
    match e {
        CurveError::InvalidInput(m) => fail_invalid(g, &m, pretty),
        CurveError::Internal(m) => fail_internal(&m),
        CurveError::Split(ev) => fail_internal(&format!("unresolved split: {}", ev)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze(a) => with_triple(a, |g, pretty| {
            let rep = analyze(g)?;
            if pretty {
                print!("{}", json::report_to_pretty(&rep));
            } else {
                println!("{}", json::report_to_json(&rep));
            }
            Ok(())
        }),
        Command::Hb(a) => with_triple(a, |g, pretty| {
            let phi = hb_kernel(g)?;
            if pretty {
                println!("column degrees ({}, {})", phi.col_degs.0, phi.col_degs.1);
                for row in phi.entries.iter() {
                    println!("[ {} | {} ]", row[0].to_text(), row[1].to_text());
                }
            } else {
                println!(
                    "{}",
                    json!({
                        "column_degrees": [phi.col_degs.0, phi.col_degs.1],
                        "entries": phi
                            .entries
                            .iter()
                            .map(|r| [r[0].to_text(), r[1].to_text()])
                            .collect::<Vec<_>>(),
                    })
                );
            }
            Ok(())
        }),
        Command::Multc(a) => with_triple(a, |g, pretty| {
            if g.d % 2 != 0 {
                return Err(CurveError::invalid(
                    "multiplicity-c configurations need an even degree",
                ));
            }
            let rep = analyze(g)?;
            let Some((label, points)) = &rep.multc else {
                return Err(CurveError::invalid(
                    "unbalanced triple: no multiplicity-c configuration",
                ));
            };
            let (_, am) = curvesy_core::biproj::build_c_a(&rep.phi)?;
            let gcd =
                curvesy_core::biproj::gcd_i3a(&am, rep.phi.node()).map_err(CurveError::Split)?;
            if pretty {
                println!("configuration: {}", label);
                println!("gcd I3(A) = {}", json::u_form_to_string(&gcd));
                for p in points {
                    println!(
                        "  point [{} : {} : {}], {} infinitely near, x{} conjugates",
                        p.point[0], p.point[1], p.point[2], p.infinitely_near, p.conjugacy
                    );
                }
            } else {
                println!(
                    "{}",
                    json!({
                        "configuration": label.as_str(),
                        "gcd_i3a": json::u_form_to_string(&gcd),
                        "points": points.iter().map(|p| json!({
                            "factor": json::u_form_to_string(&p.factor),
                            "point": p.point.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                            "infinitely_near": p.infinitely_near,
                            "conjugacy_count": p.conjugacy,
                        })).collect::<Vec<_>>(),
                    })
                );
            }
            Ok(())
        }),
        Command::Quartic(a) => with_triple(a, |g, pretty| {
            if g.d != 4 {
                return Err(CurveError::invalid("quartic classification needs degree 4"));
            }
            let rep = analyze(g)?;
            let q = rep.quartic.as_ref().expect("degree-4 classification");
            if pretty {
                println!("configuration: {}", q.configuration);
                println!("qcp stratum:   {}", q.qcp);
                println!(
                    "bqp stratum:   {}",
                    q.bqp.clone().unwrap_or_else(|| "n/a".into())
                );
                for (t, p) in q.per_point.iter().zip(rep.points.iter()) {
                    println!(
                        "  {} ({}) at [{} : {} : {}] x{}",
                        t.name, t.sequence, p.point[0], p.point[1], p.point[2], p.conjugacy
                    );
                }
            } else {
                println!(
                    "{}",
                    json!({
                        "configuration": q.configuration,
                        "qcp": q.qcp,
                        "bqp": q.bqp,
                        "points": q.per_point.iter().zip(rep.points.iter()).map(|(t, p)| json!({
                            "name": t.name,
                            "multiplicity_sequence": t.sequence,
                            "point": p.point.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                            "conjugacy_count": p.conjugacy,
                        })).collect::<Vec<_>>(),
                    })
                );
            }
            Ok(())
        }),
        Command::Conductor(a) => with_triple(a, |g, pretty| {
            let rep = analyze(g)?;
            if pretty {
                println!("c_g = {}", rep.conductor.c_g.to_text());
                for (f, e) in &rep.conductor.factors {
                    println!("  ({})^{}", f.to_text(), e);
                }
            } else {
                println!(
                    "{}",
                    json!({
                        "poly": rep.conductor.c_g.to_text(),
                        "factors": rep.conductor.factors.iter().map(|(f, e)| json!({
                            "poly": f.to_text(),
                            "exponent": e,
                        })).collect::<Vec<_>>(),
                    })
                );
            }
            Ok(())
        }),
        Command::Verify(a) => with_triple(a, |g, pretty| {
            let rep = analyze(g)?;
            let oracle = curvesy_core::oracle::cross_validate(g, &rep.phi, &rep.points)?;
            let ok = oracle.vanishes
                && oracle.degree_ok
                && oracle.multiplicities_ok
                && oracle.point_count_ok.unwrap_or(true);
            if pretty {
                println!("vanishing:            {}", oracle.vanishes);
                println!("degree:               {}", oracle.degree_ok);
                println!("multiplicities:       {}", oracle.multiplicities_ok);
                if let Some(c) = oracle.point_count {
                    println!("direct point count:   {}", c);
                }
                for d in &oracle.details {
                    println!("  note: {}", d);
                }
                println!("oracle verdict:       {}", if ok { "PASS" } else { "FAIL" });
            } else {
                println!(
                    "{}",
                    json!({
                        "vanishes": oracle.vanishes,
                        "degree_ok": oracle.degree_ok,
                        "multiplicities_ok": oracle.multiplicities_ok,
                        "point_count": oracle.point_count,
                        "point_count_ok": oracle.point_count_ok,
                        "details": oracle.details,
                        "pass": ok,
                    })
                );
            }
            if !ok {
                return Err(CurveError::internal("oracle cross-validation failed"));
            }
            Ok(())
        }),
        Command::Sample { count, degree, seed, pretty } => {
            match sample::run_sample(count, degree, seed) {
                Ok(s) => {
                    if pretty {
                        print!("{}", sample::sample_to_pretty(&s, degree, seed));
                    } else {
                        println!("{}", sample::sample_to_json(&s, degree, seed));
                    }
                    ExitCode::SUCCESS
                }
                Err(msg) => fail_invalid(None, &msg, pretty),
            }
        }
    }
}

fn with_triple(
    a: TripleArgs,
    f: impl Fn(&ParamTriple, bool) -> Result<(), CurveError>,
) -> ExitCode {
    let pretty = a.pretty;
    let g = match parse_triple(&a) {
        Ok(g) => g,
        Err(msg) => return fail_invalid(None, &msg, pretty),
    };
    match f(&g, pretty) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => dispatch_error(Some(&g), e, pretty),
    }
}
