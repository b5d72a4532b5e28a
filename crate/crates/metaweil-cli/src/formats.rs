//! JSON shapes shared by suites and tables. All maps are BTreeMaps and all
//! lists are emitted in canonical enumeration order, so identical configs
//! produce byte-identical documents. Timing never goes into a document —
//! it is written to stderr by main.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use metaweil::cyclo::CycloNum;
use metaweil::fqmat::FqMat;
use metaweil::symplectic::Lagrangian;
use serde::{Deserialize, Serialize};

/// Exact cyclotomic value: conductor N and rational coordinates in the
/// power basis 1, zeta, ..., zeta^{phi(N)-1}, each as (numerator,
/// denominator).
#[derive(Serialize, Deserialize, PartialEq, Eq, Debug, Clone)]
pub struct CycloJson {
    #[serde(rename = "N")]
    pub n: u32,
    pub coeffs: Vec<(i64, i64)>,
}

impl CycloJson {
    pub fn of(x: &CycloNum) -> CycloJson {
        CycloJson {
            n: x.n(),
            coeffs: x.coeffs_i64().expect("desk-scale values fit in i64"),
        }
    }

    #[cfg(test)]
    pub fn to_cyclo(&self) -> Result<CycloNum, metaweil::Error> {
        CycloNum::from_i64_pairs(self.n, &self.coeffs)
    }
}

pub fn cyclo_value(x: &CycloNum) -> serde_json::Value {
    serde_json::to_value(CycloJson::of(x)).expect("serializable")
}

pub fn mat_rows(m: &FqMat) -> serde_json::Value {
    serde_json::to_value(m.rows_vec()).expect("serializable")
}

pub fn lag_rows(l: &Lagrangian) -> serde_json::Value {
    mat_rows(l.basis())
}

#[derive(Serialize)]
pub struct Check {
    pub name: String,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<serde_json::Value>,
}

#[derive(Serialize)]
pub struct Report {
    pub suite: String,
    pub params: BTreeMap<String, serde_json::Value>,
    pub counts: BTreeMap<String, u64>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: &str) -> Report {
        Report {
            suite: suite.to_string(),
            params: BTreeMap::new(),
            counts: BTreeMap::new(),
            checks: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, v: impl Serialize) {
        self.params
            .insert(key.to_string(), serde_json::to_value(v).expect("serializable"));
    }

    pub fn count(&mut self, key: &str, v: u64) {
        self.counts.insert(key.to_string(), v);
    }

    pub fn bump(&mut self, key: &str) {
        *self.counts.entry(key.to_string()).or_insert(0) += 1;
    }

    /// Record a named check; the counterexample closure runs only on the
    /// first failure of that name (later failures just keep the first).
    pub fn check(
        &mut self,
        name: &str,
        ok: bool,
        counterexample: impl FnOnce() -> serde_json::Value,
    ) {
        match self.checks.iter_mut().find(|c| c.name == name) {
            Some(c) => {
                if !ok && c.status == "pass" {
                    c.status = "fail";
                    c.counterexample = Some(counterexample());
                }
            }
            None => self.checks.push(Check {
                name: name.to_string(),
                status: if ok { "pass" } else { "fail" },
                counterexample: if ok { None } else { Some(counterexample()) },
            }),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status == "pass")
    }
}

#[derive(Serialize)]
pub struct TableDoc {
    pub table: String,
    pub params: BTreeMap<String, serde_json::Value>,
    pub entries: Vec<serde_json::Value>,
}

impl TableDoc {
    pub fn new(table: &str) -> TableDoc {
        TableDoc {
            table: table.to_string(),
            params: BTreeMap::new(),
            entries: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, v: impl Serialize) {
        self.params
            .insert(key.to_string(), serde_json::to_value(v).expect("serializable"));
    }
}

/// Extension-class input file: sparse list of window components.
#[derive(Deserialize)]
pub struct ExtFile {
    pub components: Vec<ExtComponent>,
}

#[derive(Deserialize)]
pub struct ExtComponent {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<u32>,
}

/// Pretty JSON with a trailing newline, to a file or stdout.
pub fn write_json<T: Serialize>(doc: &T, out: Option<&Path>) -> std::io::Result<()> {
    let mut buf = Vec::new();
    serde_json::to_writer_pretty(&mut buf, doc)?;
    buf.push(b'\n');
    match out {
        Some(p) => std::fs::write(p, &buf),
        None => std::io::stdout().write_all(&buf),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use metaweil::scalars::Scalars;

    #[test]
    fn cyclo_json_round_trips() {
        let sc = Scalars::new(3).unwrap();
        for x in [sc.sqrt_q_pow(-3), sc.gauss_sum().clone(), sc.psi(2).clone()] {
            let j = CycloJson::of(&x);
            assert_eq!(j.to_cyclo().unwrap(), x);
            let text = serde_json::to_string(&j).unwrap();
            let back: CycloJson = serde_json::from_str(&text).unwrap();
            assert_eq!(back, j);
            assert!(text.contains("\"N\":12"));
        }
    }
}
