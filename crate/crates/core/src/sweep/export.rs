use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use super::GridResult;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::config(format!("unknown output format '{other}' (expected csv or json)"))),
        }
    }
}

/// 17 significant digits; parses back to the same f64.
fn number(x: f64) -> String {
    format!("{x:.16e}")
}

/// Header `axis1[,axis2],<columns>,flags`, then one row per cell with axis 1 outer.
/// Missing values are empty fields; flags are `;`-separated.
pub fn to_csv(result: &GridResult) -> String {
    let mut out = String::new();
    let mut header: Vec<&str> = result.axes.iter().map(|a| a.name.as_str()).collect();
    header.extend(result.observables.iter().map(|o| o.name.as_str()));
    header.push("flags");
    out.push_str(&header.join(","));
    out.push('\n');

    let (n1, n2) = result.shape();
    for i in 0..n1 {
        for j in 0..n2 {
            let mut fields = vec![number(result.axes[0].values[i])];
            if let Some(a2) = result.axes.get(1) {
                fields.push(number(a2.values[j]));
            }
            for o in &result.observables {
                fields.push(o.values[i][j].map(number).unwrap_or_default());
            }
            let flags: Vec<&str> = result.flags[i][j].iter().map(|f| f.name()).collect();
            fields.push(flags.join(";"));
            let _ = writeln!(out, "{}", fields.join(","));
        }
    }
    out
}

pub fn to_json(result: &GridResult) -> Result<String> {
    let mut s = serde_json::to_string_pretty(result)?;
    s.push('\n');
    Ok(s)
}

pub fn export(result: &GridResult, format: OutputFormat, path: &Path) -> Result<()> {
    let text = match format {
        OutputFormat::Csv => to_csv(result),
        OutputFormat::Json => to_json(result)?,
    };
    std::fs::write(path, text)?;
    Ok(())
}
