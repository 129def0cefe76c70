use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use hkt_core::differential::metric::{balanced_constant, torsion_square_constant};
use hkt_core::differential::potential::{
    banos_swann_kappa, box_mu, fourth_order_constant, hessian_constant,
};
use hkt_core::scalars::rational::rational_string;
use hkt_core::su2::lambda_constant;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub suite: String,
    pub claim: String,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    /// Full result table, for checks that produce one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
    pub runtime_ms: u64,
}

/// Normalization constants, as exact strings.
#[derive(Clone, Debug, Serialize)]
pub struct Ledger {
    pub lambda: String,
    pub fourth_order_const: String,
    pub kappa: String,
    pub mu: String,
    pub hessian_const: String,
    pub balanced_const: String,
    pub torsion_square_const: String,
    pub orientation: String,
}

const NOT_COMPUTED: &str = "not computed (n ≤ 2)";

pub fn orientation(n: usize) -> String {
    let coords: Vec<String> = (0..4 * n)
        .map(hkt_core::scalars::poly::coordinate_name)
        .map(|c| format!("d{c}"))
        .collect();
    coords.join("∧")
}

impl Ledger {
    pub fn compute(n: usize) -> Ledger {
        let show = |r: hkt_core::Result<String>| r.unwrap_or_else(|e| format!("error: {e}"));
        let small = |f: &dyn Fn() -> hkt_core::Result<String>| {
            if n <= 2 {
                show(f())
            } else {
                NOT_COMPUTED.to_string()
            }
        };
        Ledger {
            lambda: show(lambda_constant(n).map(|l| rational_string(&l))),
            fourth_order_const: small(&|| fourth_order_constant(n).map(|c| c.to_string())),
            kappa: small(&|| banos_swann_kappa(n).map(|c| c.to_string())),
            mu: show(box_mu(n).map(|c| c.to_string())),
            hessian_const: show(hessian_constant(n).map(|c| rational_string(&c))),
            balanced_const: balanced_constant(n).to_string(),
            torsion_square_const: torsion_square_constant().to_string(),
            orientation: orientation(n),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub n: usize,
    pub suite: String,
    pub seed: u64,
    pub degree: u32,
    pub force_full: bool,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
    pub ledger: Ledger,
}

impl VerificationReport {
    pub fn new(
        n: usize,
        suite: &str,
        seed: u64,
        degree: u32,
        force_full: bool,
        checks: Vec<CheckRecord>,
    ) -> Self {
        let count = |s| checks.iter().filter(|c| c.status == s).count();
        let summary = Summary {
            pass: count(Status::Pass),
            fail: count(Status::Fail),
            skipped: count(Status::Skipped),
        };
        Self {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            n,
            suite: suite.to_string(),
            seed,
            degree,
            force_full,
            checks,
            summary,
            ledger: Ledger::compute(n),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0
    }
}

/// Writes to a sibling temporary file and renames it into place.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = Path::new(&tmp);
    {
        let mut f = fs::File::create(tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(tmp, path)
}
