//! CSV rows and output plumbing.

use std::io::Write;
use std::path::Path;

use crate::Failure;

pub const SCAN_HEADER: &str = "Lx,Ly,Lz,n,s,k,k_oracle,match";

/// One point of a k sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanRecord {
    pub dims: [usize; 3],
    pub n: usize,
    /// Rank of the generator matrix.
    pub s: usize,
    pub k: usize,
    pub k_oracle: Option<u64>,
}

impl ScanRecord {
    /// `None` when there is no oracle value to compare with.
    pub fn matches(&self) -> Option<bool> {
        self.k_oracle.map(|o| o == self.k as u64)
    }

    pub fn csv_row(&self) -> String {
        let [x, y, z] = self.dims;
        let opt = |v: Option<String>| v.unwrap_or_default();
        format!(
            "{x},{y},{z},{},{},{},{},{}",
            self.n,
            self.s,
            self.k,
            opt(self.k_oracle.map(|v| v.to_string())),
            opt(self.matches().map(|m| m.to_string()))
        )
    }
}

/// Writes `header` and `rows` to `out`, or to stdout when `out` is `None`.
pub fn emit_csv(header: &str, rows: &[String], out: Option<&Path>) -> Result<(), Failure> {
    let mut text = String::with_capacity(64 * (rows.len() + 1));
    text.push_str(header);
    text.push('\n');
    for r in rows {
        text.push_str(r);
        text.push('\n');
    }
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(format!("cannot write to stdout: {e}"))),
    }
}

/// Parses `a..b` (inclusive), `a..b:step` or `a,b,c`.
pub fn parse_values(spec: &str) -> Result<Vec<usize>, Failure> {
    let bad = || Failure::Io(format!("bad value list {spec:?}: use a..b, a..b:step or a,b,c"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    if let Some((lo, rest)) = spec.split_once("..") {
        let (hi, step) = match rest.split_once(':') {
            Some((hi, step)) => (num(hi)?, num(step)?),
            None => (num(rest)?, 1),
        };
        let lo = num(lo)?;
        if step == 0 || hi < lo {
            return Err(bad());
        }
        Ok((lo..=hi).step_by(step).collect())
    } else {
        spec.split(',').map(num).collect()
    }
}

/// Substitutes `value` for every `{}` in a `Lx,Ly,Lz` template.
pub fn dims_from_template(template: &str, value: usize) -> Result<[usize; 3], Failure> {
    let text = template.replace("{}", &value.to_string());
    let parts: Vec<usize> = text
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Io(format!("bad dims template {template:?}")))?;
    parts
        .try_into()
        .map_err(|_| Failure::Io(format!("dims template {template:?} needs three entries")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_and_values() {
        let r = ScanRecord {
            dims: [4, 4, 4],
            n: 128,
            s: 114,
            k: 14,
            k_oracle: Some(14),
        };
        assert_eq!(r.csv_row(), "4,4,4,128,114,14,14,true");
        let r = ScanRecord { k_oracle: None, ..r };
        assert_eq!(r.csv_row(), "4,4,4,128,114,14,,");
        assert_eq!(parse_values("2..5").ok(), Some(vec![2, 3, 4, 5]));
        assert_eq!(parse_values("3..12:3").ok(), Some(vec![3, 6, 9, 12]));
        assert_eq!(parse_values("1,2,8").ok(), Some(vec![1, 2, 8]));
        assert!(parse_values("5..2").is_err());
        assert_eq!(dims_from_template("11,11,{}", 4).ok(), Some([11, 11, 4]));
        assert!(dims_from_template("{},{}", 4).is_err());
    }
}
