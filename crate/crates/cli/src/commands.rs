use std::path::Path;

use ap4_core::apcount::apk_mean_zn;
use ap4_core::constructions::{build_f, build_g, build_p, quad_levelset, sample_a};
use ap4_core::report::{
    export_json, export_signal, export_spectrum, load_signal, run_demo_quadratic, run_scaling,
    run_verify, Check, VerificationReport,
};
use ap4_core::search::{min_ap4_pm1, min_ap4_ternary, search_grid_designs};
use ap4_core::spectra::dft;
use ap4_core::{make_modulus, Error, Result, RngStream, ZnSignal};
use serde::Serialize;

use crate::{Command, Construction, ConstructionParams, Space};

/// Runs one subcommand; `Ok(false)` means a check failed.
pub fn run(command: Command) -> Result<bool> {
    match command {
        Command::Verify { n, seed, trials, out } => {
            let report = run_verify(n, seed, trials)?;
            print_report(&report);
            write_opt(&report, out.as_deref())?;
            Ok(report.passed())
        }
        Command::Scaling { n_list, out } => {
            let report = run_scaling(&n_list)?;
            println!("{:>8} {:>4} {:>12} {:>14} {:>14} {:>14}", "n", "t", "scale", "unif(G)", "|EG-2EF|", "|mean G|");
            for r in &report.rows {
                println!(
                    "{:>8} {:>4} {:>12.6e} {:>14.6e} {:>14.6e} {:>14.6e}",
                    r.n, r.width, r.log_scale, r.uniformity_g, r.g_f_difference, r.mean_g
                );
            }
            report.checks.iter().for_each(print_check);
            write_opt(&report, out.as_deref())?;
            Ok(report.passed())
        }
        Command::DemoQuad { n, c, out } => {
            let report = run_demo_quadratic(n, c)?;
            print_report(&report);
            write_opt(&report, out.as_deref())?;
            Ok(report.passed())
        }
        Command::Spectrum { construction, n, csv, params } => {
            let s = build(construction, n, params)?;
            let sp = dft(&s);
            export_spectrum(&sp, &csv)?;
            println!("wrote {} coefficients to {}; uniformity {:.6e}", n, csv.display(), sp.uniformity());
            Ok(true)
        }
        Command::Count { file, k } => {
            let s = load_signal(&file)?;
            let sigs = vec![&s; usize::from(k)];
            let mean = apk_mean_zn(&sigs)?;
            #[derive(Serialize)]
            struct CountOut {
                n: u64,
                k: u8,
                mean: f64,
                exact_numerator: Option<i128>,
            }
            let out = CountOut { n: s.modulus().get(), k, mean: mean.value, exact_numerator: mean.exact_numerator };
            println!("{}", serde_json::to_string(&out).expect("serializable"));
            Ok(true)
        }
        Command::Search { space, n, max_results, out } => {
            let json = match space {
                Space::Grid => {
                    let r = search_grid_designs(max_results);
                    let designs: Vec<Vec<String>> = r.designs.iter().map(|d| d.labels()).collect();
                    serde_json::json!({
                        "space": "grid",
                        "n": 4,
                        "count": designs.len(),
                        "designs": designs,
                        "exhaustive": r.exhaustive,
                    })
                }
                Space::Pm1 | Space::Ternary => {
                    let n = n.ok_or_else(|| Error::InvalidParameter("--n is required for this space".into()))?;
                    let r = if matches!(space, Space::Pm1) { min_ap4_pm1(n)? } else { min_ap4_ternary(n)? };
                    serde_json::to_value(&r).expect("serializable")
                }
            };
            println!("{}", serde_json::to_string(&json).expect("serializable"));
            write_opt(&json, out.as_deref())?;
            Ok(true)
        }
        Command::Construct { construction, n, out, params } => {
            let s = build(construction, n, params)?;
            export_signal(&s, &out)?;
            let st = s.stats();
            println!("wrote {construction:?} on Z_{n} to {}: mean {:.6}, range [{}, {}]", out.display(), st.mean, st.min, st.max);
            Ok(true)
        }
    }
}

fn build(construction: Construction, n: u64, params: ConstructionParams) -> Result<ZnSignal> {
    let m = make_modulus(n)?;
    match construction {
        Construction::F => Ok(build_f(m)?.signal),
        Construction::G => build_g(m),
        Construction::P => build_p(m),
        Construction::A => sample_a(&build_p(m)?, &mut RngStream::new(params.seed)),
        Construction::QuadLevelset => quad_levelset(m, params.c),
    }
}

fn write_opt<T: Serialize>(value: &T, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => export_json(value, p),
        None => Ok(()),
    }
}

fn print_report(report: &VerificationReport) {
    println!("{:?} report, n = {}, seed = {}", report.kind, report.modulus, report.seed);
    report.checks.iter().for_each(print_check);
    let failed = report.failures().count();
    let skipped = report.checks.iter().filter(|c| c.skipped).count();
    println!("{} checks, {failed} failed, {skipped} skipped", report.checks.len());
}

fn print_check(c: &Check) {
    let status = match (c.skipped, c.passed) {
        (true, _) => "SKIP",
        (false, true) => "PASS",
        (false, false) => "FAIL",
    };
    let first = c.measured.first().map_or("-".to_string(), |v| format!("{v:.6e}"));
    let bound = c.bound.map_or(String::new(), |b| format!(" bound {b:.6e}"));
    let vacuous = if c.vacuous_at_this_n { " (vacuous)" } else { "" };
    println!("[{status}] {:<26} {first}{bound}{vacuous}", c.name);
    if let (Some(note), false) = (&c.note, c.passed) {
        println!("       {note}");
    }
}
