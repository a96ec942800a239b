//! Report payloads: JSON via serde, CSV hand-rendered with matching
//! columns. Field order is declaration order, so output bytes are stable.

use clap::ValueEnum;
use serde::Serialize;

use crate::{Cli, CliError};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

/// Second weight as a tagged value: `{kind:"exact", value}`,
/// `{kind:"interval", lo, hi}`, or `{kind:"not-covered", reason}` for
/// valid codes outside every covered formula regime.
#[derive(Serialize)]
#[serde(untagged)]
pub enum W2Json {
    Exact {
        kind: &'static str,
        value: u64,
    },
    Interval {
        kind: &'static str,
        lo: u64,
        hi: u64,
    },
    NotCovered {
        kind: &'static str,
        reason: String,
    },
}

impl From<grm_core::W2> for W2Json {
    fn from(value: grm_core::W2) -> Self {
        match value {
            grm_core::W2::Exact(v) => W2Json::Exact {
                kind: "exact",
                value: v,
            },
            grm_core::W2::Interval { lo, hi } => W2Json::Interval {
                kind: "interval",
                lo,
                hi,
            },
        }
    }
}

#[derive(Serialize)]
pub struct ParamsReport {
    pub task: &'static str,
    pub q: u32,
    pub n: u32,
    pub d: u32,
    pub a: u32,
    pub b: u32,
    pub m: u64,
    pub k: u64,
    pub w1: u64,
    pub w2: W2Json,
    pub regime: String,
}

impl ParamsReport {
    fn csv(&self) -> String {
        let (kind, value, lo, hi) = match &self.w2 {
            W2Json::Exact { value, .. } => {
                ("exact", value.to_string(), String::new(), String::new())
            }
            W2Json::Interval { lo, hi, .. } => {
                ("interval", String::new(), lo.to_string(), hi.to_string())
            }
            W2Json::NotCovered { .. } => {
                ("not-covered", String::new(), String::new(), String::new())
            }
        };
        let mut out = String::from("q,n,d,a,b,m,k,w1,w2_kind,w2_value,w2_lo,w2_hi,regime\n");
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            self.q,
            self.n,
            self.d,
            self.a,
            self.b,
            self.m,
            self.k,
            self.w1,
            kind,
            value,
            lo,
            hi,
            self.regime
        ));
        out
    }
}

#[derive(Serialize)]
pub struct TypePointsReport {
    pub task: &'static str,
    pub mode: &'static str,
    pub q: u32,
    pub n: u32,
    pub blocks: Vec<u32>,
    pub n_points: u64,
    pub weight: u64,
}

#[derive(Serialize)]
pub struct SearchReport {
    pub task: &'static str,
    pub mode: &'static str,
    pub q: u32,
    pub n: u32,
    pub d: u32,
    pub blocks: Vec<u32>,
    pub n2_prime: u64,
    pub w2_prime: u64,
}

#[derive(Serialize)]
pub struct TypeCheckRecord {
    pub blocks: Vec<u32>,
    pub formula: u64,
    pub grid: u64,
    pub pass: bool,
}

#[derive(Serialize)]
pub struct TypeVerifyReport {
    pub task: &'static str,
    pub mode: &'static str,
    pub q: u32,
    pub n: u32,
    pub checks: Vec<TypeCheckRecord>,
    pub passed: u64,
    pub failed: u64,
}

#[derive(Serialize)]
pub struct GroebnerReport {
    pub task: &'static str,
    pub action: &'static str,
    pub q: u32,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_size: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equal: Option<bool>,
}

#[derive(Serialize)]
pub struct PolyRecord {
    pub poly: String,
    pub zeros: u64,
    pub weight: u64,
}

#[derive(Serialize)]
pub struct PolyReport {
    pub task: &'static str,
    pub q: u32,
    pub n: usize,
    pub results: Vec<PolyRecord>,
}

#[derive(Serialize)]
pub struct LemmaReport {
    pub task: &'static str,
    pub q: u32,
    pub n: u32,
    pub d: u32,
    pub a: u32,
    pub b: u32,
    pub k_budget: u32,
    pub mu_brute: i64,
    pub mu_closed: u64,
    pub equal: bool,
    pub minimizer: Vec<u32>,
    pub minimizer_count: usize,
    pub truncated: bool,
    /// Canonical shape matched by the minimizers, when one matches.
    pub shape: Option<String>,
}

/// One record of a verification sweep.
#[derive(Serialize, Clone)]
pub struct CheckRecord {
    pub suite: String,
    pub check: String,
    pub q: u32,
    pub n: u32,
    pub d: u32,
    pub computed: i64,
    pub oracle: i64,
    pub pass: bool,
}

impl CheckRecord {
    fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}\n",
            self.suite, self.check, self.q, self.n, self.d, self.computed, self.oracle, self.pass
        )
    }
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub task: &'static str,
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<CheckRecord>,
    pub passed: u64,
    pub failed: u64,
}

impl VerifyReport {
    fn csv(&self) -> String {
        let mut out = String::from("suite,check,q,n,d,computed,oracle,pass\n");
        for c in &self.checks {
            out.push_str(&c.csv_row());
        }
        out
    }
}

/// Renders the payload per `--format` and writes it to stdout or `--out`.
pub fn emit<T: Serialize + CsvRender>(cli: &Cli, payload: &T) -> Result<(), CliError> {
    let text = match cli.format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(payload)
                .map_err(|e| CliError::invalid(format!("serialization failed: {e}")))?;
            s.push('\n');
            s
        }
        OutputFormat::Csv => payload.csv_text(),
    };
    match &cli.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::invalid(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// CSV rendering per payload type; JSON comes from serde.
pub trait CsvRender {
    fn csv_text(&self) -> String;
}

impl CsvRender for ParamsReport {
    fn csv_text(&self) -> String {
        self.csv()
    }
}

impl CsvRender for TypePointsReport {
    fn csv_text(&self) -> String {
        format!(
            "q,n,blocks,n_points,weight\n{},{},{},{},{}\n",
            self.q,
            self.n,
            join_blocks(&self.blocks),
            self.n_points,
            self.weight
        )
    }
}

impl CsvRender for SearchReport {
    fn csv_text(&self) -> String {
        format!(
            "q,n,d,blocks,n2_prime,w2_prime\n{},{},{},{},{},{}\n",
            self.q,
            self.n,
            self.d,
            join_blocks(&self.blocks),
            self.n2_prime,
            self.w2_prime
        )
    }
}

impl CsvRender for TypeVerifyReport {
    fn csv_text(&self) -> String {
        let mut out = String::from("blocks,formula,grid,pass\n");
        for c in &self.checks {
            out.push_str(&format!(
                "{},{},{},{}\n",
                join_blocks(&c.blocks),
                c.formula,
                c.grid,
                c.pass
            ));
        }
        out
    }
}

impl CsvRender for GroebnerReport {
    fn csv_text(&self) -> String {
        let mut out = String::from("action,q,n,basis_size,delta_size,points,equal\n");
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            self.action,
            self.q,
            self.n,
            self.basis
                .as_ref()
                .map(|b| b.len().to_string())
                .unwrap_or_default(),
            self.delta_size.map(|v| v.to_string()).unwrap_or_default(),
            self.points.map(|v| v.to_string()).unwrap_or_default(),
            self.equal.map(|v| v.to_string()).unwrap_or_default(),
        ));
        out
    }
}

impl CsvRender for PolyReport {
    fn csv_text(&self) -> String {
        let mut out = String::from("poly,zeros,weight\n");
        for r in &self.results {
            out.push_str(&format!("\"{}\",{},{}\n", r.poly, r.zeros, r.weight));
        }
        out
    }
}

impl CsvRender for LemmaReport {
    fn csv_text(&self) -> String {
        format!(
            "q,n,d,a,b,k_budget,mu_brute,mu_closed,equal,minimizer,minimizer_count,truncated,shape\n\
             {},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            self.q,
            self.n,
            self.d,
            self.a,
            self.b,
            self.k_budget,
            self.mu_brute,
            self.mu_closed,
            self.equal,
            join_blocks(&self.minimizer),
            self.minimizer_count,
            self.truncated,
            self.shape.clone().unwrap_or_default()
        )
    }
}

impl CsvRender for VerifyReport {
    fn csv_text(&self) -> String {
        self.csv()
    }
}

fn join_blocks(values: &[u32]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(";")
}
