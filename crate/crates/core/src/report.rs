//! Experiment reports: a JSON document with fixed float formatting and,
//! when there are per-level or per-case rows, a CSV table beside it.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::io::{to_json_string, write_json};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportVerdict {
    Pass,
    Fail,
    Diverged,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub name: String,
    pub parameters: BTreeMap<String, Value>,
    pub tolerances: BTreeMap<String, f64>,
    pub summary: BTreeMap<String, Value>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
    pub verdict: ReportVerdict,
    /// The outcome that counts as success; divergence experiments expect
    /// [`ReportVerdict::Diverged`].
    pub expected: ReportVerdict,
}

fn value<T: Serialize>(v: T) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

impl ExperimentReport {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Self {
            name: name.to_string(),
            parameters: BTreeMap::new(),
            tolerances: BTreeMap::new(),
            summary: BTreeMap::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            verdict: ReportVerdict::Fail,
            expected: ReportVerdict::Pass,
        }
    }

    pub fn param<T: Serialize>(&mut self, key: &str, v: T) -> &mut Self {
        self.parameters.insert(key.to_string(), value(v));
        self
    }

    pub fn tol(&mut self, key: &str, v: f64) -> &mut Self {
        self.tolerances.insert(key.to_string(), v);
        self
    }

    pub fn set<T: Serialize>(&mut self, key: &str, v: T) -> &mut Self {
        self.summary.insert(key.to_string(), value(v));
        self
    }

    pub fn row(&mut self, cells: Vec<Value>) -> Result<()> {
        if cells.len() != self.columns.len() {
            return Err(Error::InvalidArgument(format!(
                "row with {} cells for {} columns",
                cells.len(),
                self.columns.len()
            )));
        }
        self.rows.push(cells);
        Ok(())
    }

    pub fn passed(&self) -> bool {
        self.verdict == self.expected
    }

    /// 0 when the verdict is the expected one, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            2
        }
    }

    pub fn to_json(&self) -> Result<String> {
        to_json_string(self)
    }

    /// Writes `<dir>/<name>.json`, and `<dir>/<name>.csv` when rows exist.
    pub fn write(&self, dir: &Path) -> Result<(PathBuf, Option<PathBuf>)> {
        std::fs::create_dir_all(dir)?;
        let json = dir.join(format!("{}.json", self.name));
        write_json(&json, self)?;
        if self.rows.is_empty() {
            return Ok((json, None));
        }
        let csv_path = dir.join(format!("{}.csv", self.name));
        let mut w = csv::Writer::from_path(&csv_path)?;
        w.write_record(&self.columns)?;
        for r in &self.rows {
            w.write_record(r.iter().map(cell))?;
        }
        w.flush()?;
        Ok((json, Some(csv_path)))
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Number(n) if n.is_f64() => format!("{:.16e}", n.as_f64().unwrap()),
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::from_json_str;
    use serde_json::json;

    #[test]
    fn round_trip_and_files() {
        let mut r = ExperimentReport::new("demo", &["k", "value"]);
        r.param("levels", 3).tol("delta", 1e-4).set("value", 0.1 + 0.2);
        r.row(vec![json!(1), json!(1.0 / 3.0)]).unwrap();
        assert!(r.row(vec![json!(1)]).is_err());
        r.verdict = ReportVerdict::Pass;
        let text = r.to_json().unwrap();
        let back: ExperimentReport = from_json_str(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json().unwrap(), text);
        let dir = tempfile::tempdir().unwrap();
        let (_, csv) = r.write(dir.path()).unwrap();
        let body = std::fs::read_to_string(csv.unwrap()).unwrap();
        assert_eq!(body, "k,value\n1,3.3333333333333331e-1\n");
        assert_eq!(r.exit_code(), 0);
        r.expected = ReportVerdict::Diverged;
        assert_eq!(r.exit_code(), 2);
    }
}
