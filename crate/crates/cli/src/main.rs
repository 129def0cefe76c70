mod report;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use hkt_core::differential::metric::{balanced_constant, torsion_square_constant};
use hkt_core::exterior::form_ratio;
use hkt_core::howe::isotypic::isotypic_decompose;
use hkt_core::howe::signature::hodge_riemann_scan;
use hkt_core::hypercomplex::{build_structure, standard_forms, Unit};
use hkt_core::scalars::linalg::Matrix;
use hkt_core::su2::{project_plus, r_form, weight_decompose};
use hkt_core::testkit::{make_fixture, FixtureSpec, FIXTURE_VERSION};

use report::{write_atomic, Ledger, VerificationReport};
use suites::{Ctx, Suite};

#[derive(Parser)]
#[command(
    name = "hkt-lab",
    version,
    about = "Exact checks for the flat hypercomplex model Hⁿ"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and report pass/fail per check.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=3))]
        n: u64,
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        /// Coefficient degree bound for polynomial spanning sets.
        #[arg(long, default_value_t = 4)]
        degree: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Also run the checks that are expensive at n = 3.
        #[arg(long)]
        force_full: bool,
    },
    /// Print the normalization constants for a given n.
    Constants {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=3))]
        n: u64,
    },
    /// SU(2)-weight decomposition of Λ^k.
    Decompose {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=3))]
        n: u64,
        #[arg(long)]
        k: usize,
    },
    /// Isotypic decomposition of Λ* under the L/Λ algebra.
    Isotypic {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=2))]
        n: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Hodge–Riemann verdicts for one polynomial P in ω_I, ω_J, ω_K.
    Signature {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=2))]
        n: u64,
        /// `1`, or a product such as `wI^2 wK`.
        #[arg(long = "P")]
        p: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Generate a fixture from a JSON spec file.
    Fixtures {
        #[arg(long)]
        spec: PathBuf,
        /// Dump the generated object, not only its summary.
        #[arg(long)]
        emit: bool,
    },
    /// Print the convention ledger.
    Conventions {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=3), default_value_t = 1)]
        n: u64,
        /// JSON instead of text.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Failed(String),
}

impl From<hkt_core::Error> for CliError {
    fn from(e: hkt_core::Error) -> Self {
        CliError::Failed(e.to_string())
    }
}

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn init_threads() {
    if let Ok(s) = std::env::var("HKT_LAB_THREADS") {
        match s.parse::<usize>() {
            Ok(k) if k > 0 => {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(k)
                    .build_global();
            }
            _ => eprintln!("ignoring HKT_LAB_THREADS={s}"),
        }
    }
}

fn verify(
    n: usize,
    suite: Suite,
    degree: u32,
    seed: u64,
    json_path: Option<PathBuf>,
    force_full: bool,
) -> Result<bool, CliError> {
    let defs = suites::selected(suite);
    let plan = suites::heavy_plan(&defs, n);
    if !plan.is_empty() {
        if force_full {
            eprintln!("n = 3 full run, expensive checks:");
            for (id, cost) in &plan {
                eprintln!("  {id}: {cost}");
            }
        } else {
            eprintln!(
                "n = 3: skipping {} expensive checks (use --force-full)",
                plan.len()
            );
        }
    }
    let ctx = Ctx { n, degree, seed };
    let records = suites::run(&defs, &ctx, force_full);
    for r in &records {
        let tag = match r.status {
            report::Status::Pass => "PASS",
            report::Status::Fail => "FAIL",
            report::Status::Skipped => "SKIP",
        };
        println!("{tag}  {:<24} {:>8} ms  {}", r.id, r.runtime_ms, r.detail);
    }
    let report = VerificationReport::new(n, suite.name(), seed, degree, force_full, records);
    println!(
        "{} passed, {} failed, {} skipped",
        report.summary.pass, report.summary.fail, report.summary.skipped
    );
    if let Some(path) = json_path {
        let text = serde_json::to_string_pretty(&report).expect("serializable");
        write_atomic(&path, &text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(report.all_pass())
}

fn constants(n: usize) -> Value {
    let s = standard_forms(n);
    let r11 = r_form(1, 1, &s.omega)
        .ok()
        .zip(project_plus(&s.omega_i).ok())
        .and_then(|(r, p)| form_ratio(&r, &p))
        .map_or_else(|| "undefined".to_string(), |c| c.to_string());
    let l = Ledger::compute(n);
    json!({
        "n": n,
        "lambda": l.lambda,
        "fourth_order_const": l.fourth_order_const,
        "kappa": l.kappa,
        "mu": l.mu,
        "normalizations": {
            "hessian": l.hessian_const,
            "R_11(Omega) / Pi_plus(omega_I)": r11,
            "balanced": l.balanced_const,
            "torsion_square": l.torsion_square_const,
            "casimir": "-w(w+2)",
        },
    })
}

/// Parses `1`, `wI^2 wK`, `wI*wJ`, … into exponents of `(ω_I, ω_J, ω_K)`.
fn parse_polynomial(s: &str) -> Result<[usize; 3], CliError> {
    let mut exps = [0usize; 3];
    let t = s.trim();
    if t == "1" {
        return Ok(exps);
    }
    for tok in t
        .split(|c: char| c.is_whitespace() || c == '*')
        .filter(|x| !x.is_empty())
    {
        let (base, e) = match tok.split_once('^') {
            Some((b, e)) => (
                b,
                e.parse::<usize>()
                    .map_err(|_| CliError::Usage(format!("bad exponent in {tok:?}")))?,
            ),
            None => (tok, 1),
        };
        let idx = match base {
            "wI" => 0,
            "wJ" => 1,
            "wK" => 2,
            _ => return Err(CliError::Usage(format!("unknown factor {base:?}"))),
        };
        exps[idx] += e;
    }
    Ok(exps)
}

fn signature(n: usize, p: &str, seed: u64) -> Result<Value, CliError> {
    let [a, b, c] = parse_polynomial(p)?;
    let label = format!("wI^{a} wJ^{b} wK^{c}");
    let k = 2 * n as isize - (a + b + c) as isize;
    if k < 0 {
        return Err(CliError::Usage(format!(
            "P has degree above 2n = {}",
            2 * n
        )));
    }
    let dec = isotypic_decompose(n, seed)?;
    let entries: Vec<_> = hodge_riemann_scan(&dec)?
        .into_iter()
        .filter(|e| e.polynomial == label)
        .collect();
    Ok(json!({ "n": n, "P": label, "form_degree": k, "entries": entries }))
}

fn isotypic(n: usize, seed: u64) -> Result<Value, CliError> {
    let dec = isotypic_decompose(n, seed)?;
    Ok(json!({ "n": n, "components": dec.components, "checks": dec.checks() }))
}

fn fixtures(path: &PathBuf, emit: bool) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let spec: FixtureSpec = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("invalid fixture spec: {e}")))?;
    let fixture = make_fixture(&spec).map_err(|e| CliError::Usage(e.to_string()))?;
    let value = serde_json::to_value(&fixture).expect("serializable");
    if emit {
        return Ok(json!({ "version": FIXTURE_VERSION, "fixture": value }));
    }
    let bytes = serde_json::to_string(&value).expect("serializable").len();
    Ok(json!({ "version": FIXTURE_VERSION, "spec": spec, "serialized_bytes": bytes }))
}

fn dense_ints(m: &Matrix) -> Vec<Vec<String>> {
    m.to_dense()
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect())
        .collect()
}

fn conventions(n: usize) -> Value {
    let st = build_structure(n);
    let mats: serde_json::Map<String, Value> = Unit::ALL
        .iter()
        .map(|&a| {
            (
                a.name().to_string(),
                json!({
                    "vectors": dense_ints(st.vectors(a)),
                    "covectors": dense_ints(st.covectors(a)),
                }),
            )
        })
        .collect();
    let l = Ledger::compute(n);
    json!({
        "n": n,
        "coordinates": "q_a = x_a + y_a i + z_a j + w_a k, a = 1..n",
        "orientation": l.orientation,
        "complex_structures": "I, J, K act on Hⁿ by left multiplication by i, j, k",
        "structure_matrices": mats,
        "fundamental_forms": "ω_A(u, v) = g(u, A v)",
        "holomorphic_symplectic_form": "Ω = −ω_J + √−1 ω_K, of type (2,0) for I",
        "twisted_differentials": "d_A = A d A⁻¹ with A acting multiplicatively on forms; equals A d A on even degrees",
        "del_J": "∂_J = J ∂̄ J⁻¹, ∂̄_J = J ∂ J⁻¹ (multiplicative J); equal to J ∂̄ J, J ∂ J on even degrees",
        "su2": "h = −√−1 A_I, X = (−√−1 A_J − A_K)/2, Y = (−√−1 A_J + A_K)/2, A acting as derivations",
        "casimir": "−w(w+2) on weight w",
        "hodge_riemann_factor": "1 in even degree, √−1 in odd degree",
        "star": "α ∧ ⋆β = g(α, β) vol_g",
        "constants": {
            "lambda": l.lambda,
            "fourth_order_const": l.fourth_order_const,
            "kappa": l.kappa,
            "mu": l.mu,
            "hessian": l.hessian_const,
            "balanced": balanced_constant(n).to_string(),
            "torsion_square": torsion_square_constant().to_string(),
        },
    })
}

fn conventions_text(v: &Value) -> String {
    let mut out = String::new();
    for (k, val) in v.as_object().expect("object") {
        match val {
            Value::String(s) => out.push_str(&format!("{k}: {s}\n")),
            Value::Object(m) if k == "constants" => {
                out.push_str("constants:\n");
                for (c, x) in m {
                    out.push_str(&format!("  {c} = {}\n", x.as_str().unwrap_or_default()));
                }
            }
            Value::Object(m) => {
                out.push_str(&format!("{k}:\n"));
                for (name, x) in m {
                    for (kind, rows) in x.as_object().expect("object") {
                        out.push_str(&format!("  {name} on {kind}:\n"));
                        for row in rows.as_array().expect("rows") {
                            let cells: Vec<String> = row
                                .as_array()
                                .expect("row")
                                .iter()
                                .map(|c| format!("{:>3}", c.as_str().unwrap_or_default()))
                                .collect();
                            out.push_str(&format!("    {}\n", cells.join("")));
                        }
                    }
                }
            }
            other => out.push_str(&format!("{k}: {other}\n")),
        }
    }
    out
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Verify {
            n,
            suite,
            degree,
            seed,
            json,
            force_full,
        } => verify(n as usize, suite, degree, seed, json, force_full),
        Command::Constants { n } => {
            print_json(&constants(n as usize));
            Ok(true)
        }
        Command::Decompose { n, k } => {
            let n = n as usize;
            if k > 4 * n {
                return Err(CliError::Usage(format!("k = {k} exceeds 4n = {}", 4 * n)));
            }
            print_json(&weight_decompose(n, k)?);
            Ok(true)
        }
        Command::Isotypic { n, seed } => {
            print_json(&isotypic(n as usize, seed)?);
            Ok(true)
        }
        Command::Signature { n, p, seed } => {
            print_json(&signature(n as usize, &p, seed)?);
            Ok(true)
        }
        Command::Fixtures { spec, emit } => {
            print_json(&fixtures(&spec, emit)?);
            Ok(true)
        }
        Command::Conventions { n, json } => {
            let v = conventions(n as usize);
            if json {
                print_json(&v);
            } else {
                print!("{}", conventions_text(&v));
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}
