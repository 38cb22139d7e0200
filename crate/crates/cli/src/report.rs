use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use rcpoly::encode::EncodeError;
use rcpoly::membership::MembershipError;
use rcpoly::nulla::NullaError;
use rcpoly::oracle::OracleError;
use rcpoly::{GraphError, PolyError};

pub const EXIT_DISCREPANCY: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_PRECONDITION: u8 = 3;
pub const EXIT_BUDGET: u8 = 4;

#[derive(Debug, Error)]
#[error("{message}")]
pub struct CliError {
    pub code: u8,
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            kind: "usage",
            message: message.into(),
        }
    }

    fn precondition(message: String) -> Self {
        CliError {
            code: EXIT_PRECONDITION,
            kind: "precondition",
            message,
        }
    }

    fn budget(message: String) -> Self {
        CliError {
            code: EXIT_BUDGET,
            kind: "budget",
            message,
        }
    }

    fn parse(message: String) -> Self {
        CliError {
            code: EXIT_USAGE,
            kind: "parse",
            message,
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::parse(e.to_string())
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::StepLimit(_) => CliError::budget(e.to_string()),
            _ => CliError::usage(e.to_string()),
        }
    }
}

impl From<EncodeError> for CliError {
    fn from(e: EncodeError) -> Self {
        match e {
            EncodeError::Disconnected | EncodeError::DiameterExceeds { .. } => {
                CliError::precondition(e.to_string())
            }
            EncodeError::PathCapExceeded { .. } => CliError::budget(e.to_string()),
            EncodeError::Poly(p) => p.into(),
            _ => CliError::usage(e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Disconnected => CliError::precondition(e.to_string()),
            OracleError::BudgetExceeded { .. } => CliError::budget(e.to_string()),
            OracleError::Poly(p) => p.into(),
            _ => CliError::usage(e.to_string()),
        }
    }
}

impl From<NullaError> for CliError {
    fn from(e: NullaError) -> Self {
        match e {
            NullaError::BudgetExceeded { .. } => CliError::budget(e.to_string()),
            NullaError::Oracle(o) => o.into(),
            NullaError::Poly(p) => p.into(),
            _ => CliError::usage(e.to_string()),
        }
    }
}

impl From<MembershipError> for CliError {
    fn from(e: MembershipError) -> Self {
        match e {
            MembershipError::Disconnected | MembershipError::NoTwoPath(..) => {
                CliError::precondition(e.to_string())
            }
            MembershipError::TermCapExceeded { .. } => CliError::budget(e.to_string()),
            MembershipError::Poly(p) => p.into(),
        }
    }
}

/// Input files read by a command, with their SHA-256 digests.
#[derive(Debug, Default)]
pub struct Inputs {
    digests: BTreeMap<String, String>,
}

impl Inputs {
    pub fn read(&mut self, role: &str, path: &Path) -> Result<String, CliError> {
        let bytes = fs::read(path)
            .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
        self.digests
            .insert(role.to_string(), hex::encode(Sha256::digest(&bytes)));
        String::from_utf8(bytes)
            .map_err(|_| CliError::parse(format!("{} is not UTF-8", path.display())))
    }

    pub fn read_json<T: serde::de::DeserializeOwned>(
        &mut self,
        role: &str,
        path: &Path,
    ) -> Result<T, CliError> {
        let text = self.read(role, path)?;
        serde_json::from_str(&text).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))
    }

    fn to_value(&self) -> Value {
        json!(self.digests)
    }
}

/// The single JSON document a run prints.
pub struct Report {
    pub command: Option<String>,
    pub argv: Vec<String>,
    pub config: Map<String, Value>,
    pub inputs: Inputs,
    pub wall_time_ms: Option<u128>,
}

impl Report {
    pub fn render(&self, result: &Result<Map<String, Value>, CliError>) -> String {
        let mut doc = Map::new();
        doc.insert("command".into(), json!(self.command));
        doc.insert("argv".into(), json!(self.argv));
        doc.insert("config".into(), Value::Object(self.config.clone()));
        doc.insert("inputDigest".into(), self.inputs.to_value());
        match result {
            Ok(payload) => {
                for (k, v) in payload {
                    doc.insert(k.clone(), v.clone());
                }
            }
            Err(e) => {
                doc.insert(
                    "error".into(),
                    json!({ "kind": e.kind, "message": e.message, "exitCode": e.code }),
                );
            }
        }
        if let Some(ms) = self.wall_time_ms {
            doc.insert("wallTimeMs".into(), json!(ms));
        }
        Value::Object(doc).to_string()
    }
}
