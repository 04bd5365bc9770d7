use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_traits::ToPrimitive;
use serde_json::json;

use duality_cli::audit::{audit_hypertoric, audit_s3};
use duality_cli::report::AuditReport;
use duality_cli::schema::{
    parse_json, AbacusFile, ArrangementFile, PackageFile, S3File,
};
use duality_cli::{CliError, EXIT_CHECK_FAILED, EXIT_OK};

use duality_core::abacus::uglov_flip;
use duality_core::arrangement::{flat_label, PolarizedArrangement};
use duality_core::kgroup::FixedPointPackage;

/// Exact-arithmetic audits of combinatorial symplectic duality: Tutte
/// polynomials, LP fixed points, Gale duality, intersection forms, type-A
/// partition dualities and the abacus rank-level flip.
#[derive(Parser)]
#[command(name = "duality", version, about)]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Seed recorded in reports (for reproducing seeded fixture runs).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Truncation order for character expansions.
    #[arg(long, global = true, default_value_t = 10)]
    max_degree: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tutte polynomial of an arrangement file.
    Tutte { file: PathBuf },
    /// Feasible bounded sign vectors with vertices, bases and leaf flats.
    FixedPoints { file: PathBuf },
    /// Full duality audit of an arrangement against its Gale dual.
    AuditHypertoric { file: PathBuf },
    /// Combinatorial S3-duality audit of a pair of compositions.
    AuditS3 { file: PathBuf },
    /// The e×ℓ rectangle flip of a charged multipartition.
    AbacusFlip { file: PathBuf },
    /// Orthonormality and chamber-class transition data.
    IntersectionForm {
        file: PathBuf,
        /// Treat the input as a hand-specified fixed-point package instead
        /// of an arrangement.
        #[arg(long)]
        package: bool,
    },
    /// Goresky–MacPherson perp checks for an arrangement.
    GmCheck { file: PathBuf },
}

struct Output {
    text: String,
    json: serde_json::Value,
    exit: i32,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable"));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.exit as u8)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn load_arrangement(path: &PathBuf) -> Result<PolarizedArrangement, CliError> {
    let file: ArrangementFile = parse_json(&read(path)?)?;
    file.to_arrangement()
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Tutte { file } => cmd_tutte(file),
        Command::FixedPoints { file } => cmd_fixed_points(file),
        Command::AuditHypertoric { file } => {
            let arr = load_arrangement(file)?;
            report_output(audit_hypertoric(&arr, cli.seed)?)
        }
        Command::AuditS3 { file } => {
            let s3: S3File = parse_json(&read(file)?)?;
            report_output(audit_s3(
                &s3.mu.to_composition(),
                &s3.nu.to_composition(),
                cli.seed,
            )?)
        }
        Command::AbacusFlip { file } => cmd_abacus_flip(file),
        Command::IntersectionForm { file, package } => {
            cmd_intersection_form(file, *package, cli.max_degree)
        }
        Command::GmCheck { file } => {
            let arr = load_arrangement(file)?;
            let checks = duality_core::kgroup::gm_perp_check(&arr)
                .map_err(|e| CliError::Precondition(e.to_string()))?;
            report_output(AuditReport::new(
                format!("GM perp data for d={} n={}", arr.d(), arr.n()),
                cli.seed,
                checks,
            ))
        }
    }
}

fn report_output(report: AuditReport) -> Result<Output, CliError> {
    let exit = if report.all_pass() { EXIT_OK } else { EXIT_CHECK_FAILED };
    Ok(Output {
        text: report.to_text(),
        json: serde_json::to_value(&report).expect("report serializes"),
        exit,
    })
}

fn cmd_tutte(path: &PathBuf) -> Result<Output, CliError> {
    let arr = load_arrangement(path)?;
    let t = arr.tutte();
    let coeffs: Vec<serde_json::Value> = t
        .coefficients()
        .map(|(&(i, j), c)| json!({"x": i, "y": j, "coeff": c.to_string()}))
        .collect();
    let (t11, t10, t01) = (t.eval_i64(1, 1), t.eval_i64(1, 0), t.eval_i64(0, 1));
    let mut text = format!("T = {t}\n");
    text.push_str(&format!("T(1,1) = {t11}   T(1,0) = {t10}   T(0,1) = {t01}\n"));
    Ok(Output {
        text,
        json: json!({
            "tutte": t.to_string(),
            "coefficients": coeffs,
            "t11": t11.to_string(),
            "t10": t10.to_string(),
            "t01": t01.to_string(),
        }),
        exit: EXIT_OK,
    })
}

fn cmd_fixed_points(path: &PathBuf) -> Result<Output, CliError> {
    let arr = load_arrangement(path)?;
    let points = arr
        .fixed_points()
        .map_err(|e| CliError::Precondition(e.to_string()))?;
    let mut rows = Vec::new();
    let mut text = String::new();
    for p in &points {
        let flat = arr
            .leaf_flat(&p.sign)
            .map_err(|e| CliError::Precondition(e.to_string()))?;
        let vertex: Vec<String> = p.vertex.iter().map(|v| v.to_string()).collect();
        let basis: Vec<usize> = p.basis.iter().map(|i| i + 1).collect();
        text.push_str(&format!(
            "{}  vertex=({})  basis={:?}  leaf={}\n",
            p.sign,
            vertex.join(","),
            basis,
            flat_label(&flat)
        ));
        rows.push(json!({
            "sign": p.sign.to_string(),
            "vertex": vertex,
            "basis": basis,
            "leaf": flat_label(&flat),
        }));
    }
    text.push_str(&format!("{} fixed points\n", points.len()));
    Ok(Output {
        text,
        json: json!({"fixed_points": rows, "count": points.len()}),
        exit: EXIT_OK,
    })
}

fn cmd_abacus_flip(path: &PathBuf) -> Result<Output, CliError> {
    let file: AbacusFile = parse_json(&read(path)?)?;
    let (xi, charges) = file.to_data()?;
    let (dual_xi, dual_charges) =
        uglov_flip(&xi, &charges).map_err(|e| CliError::Precondition(e.to_string()))?;
    let (back_xi, back_charges) =
        uglov_flip(&dual_xi, &dual_charges).map_err(|e| CliError::Precondition(e.to_string()))?;
    let involution_ok = back_xi == xi && back_charges == charges;

    let components: Vec<Vec<usize>> = dual_xi
        .components
        .iter()
        .map(|p| p.parts().to_vec())
        .collect();
    let text = format!(
        "e={} l={} t={:?} xi={}\ninvolution: {}\n",
        dual_charges.modulus,
        dual_xi.levels(),
        dual_charges.charges,
        dual_xi,
        if involution_ok { "OK" } else { "FAILED" }
    );
    Ok(Output {
        text,
        json: json!({
            "e": dual_charges.modulus,
            "s": dual_charges.charges,
            "components": components,
            "involution": if involution_ok { "OK" } else { "FAILED" },
        }),
        exit: if involution_ok { EXIT_OK } else { EXIT_CHECK_FAILED },
    })
}

fn cmd_intersection_form(
    path: &PathBuf,
    as_package: bool,
    max_degree: usize,
) -> Result<Output, CliError> {
    let (pkg, from_arr) = if as_package {
        let file: PackageFile = parse_json(&read(path)?)?;
        (file.to_package()?, false)
    } else {
        let arr = load_arrangement(path)?;
        (
            FixedPointPackage::from_arrangement(&arr)
                .map_err(|e| CliError::Precondition(e.to_string()))?,
            true,
        )
    };

    let mut text = String::new();
    let mut gram_ok = true;
    for a in 0..pkg.len() {
        for b in 0..pkg.len() {
            let p = pkg
                .pairing(&pkg.v_class(a), &pkg.v_class(b))
                .map_err(|e| CliError::Precondition(e.to_string()))?;
            let expected = if a == b { 1 } else { 0 };
            if p != duality_core::Rat::from_integer(expected.into()) {
                gram_ok = false;
            }
        }
    }
    text.push_str(&format!(
        "orthonormality of v-classes: {}\n",
        if gram_ok { "OK" } else { "FAILED" }
    ));

    let mut euler = BTreeMap::new();
    for idx in 0..pkg.len() {
        euler.insert(pkg.names()[idx].clone(), pkg.euler_e(idx).to_string());
        text.push_str(&format!(
            "e({}) = {}   weights {:?}\n",
            pkg.names()[idx],
            pkg.euler_e(idx),
            pkg.weights(idx)
        ));
    }

    let mut characters = BTreeMap::new();
    for idx in 0..pkg.len() {
        let coeffs: Vec<String> = pkg
            .standard_character(idx, max_degree)
            .iter()
            .map(|c| c.to_string())
            .collect();
        text.push_str(&format!(
            "character({}) (w normalized to 0) = [{}]\n",
            pkg.names()[idx],
            coeffs.join(",")
        ));
        characters.insert(pkg.names()[idx].clone(), coeffs);
    }

    let mut json_value = json!({
        "orthonormal": gram_ok,
        "euler": euler,
        "characters": characters,
        "max_degree": max_degree,
    });
    let mut exit = if gram_ok { EXIT_OK } else { EXIT_CHECK_FAILED };

    if from_arr {
        // Chamber classes exist only with arrangement provenance.
        let rep = pkg
            .transition_unitriangular()
            .map_err(|e| CliError::Precondition(e.to_string()))?;
        let matrix: Vec<Vec<String>> = rep
            .matrix
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| c.to_integer().to_i64().unwrap_or_default().to_string())
                    .collect()
            })
            .collect();
        text.push_str(&format!(
            "[X] -> v transition (rows indexed like points): {:?}\n",
            matrix
        ));
        text.push_str(&format!(
            "unitriangular w.r.t. closure order: {}\n",
            if rep.unitriangular { "OK" } else { "FAILED" }
        ));
        if let Some(w) = &rep.witness {
            text.push_str(&format!("witness: {w}\n"));
        }
        json_value["transition"] = json!(matrix);
        json_value["unitriangular"] = json!(rep.unitriangular);
        json_value["integral"] = json!(rep.integral);
        if !(rep.unitriangular && rep.integral) {
            exit = EXIT_CHECK_FAILED;
        }
    }

    Ok(Output { text, json: json_value, exit })
}
