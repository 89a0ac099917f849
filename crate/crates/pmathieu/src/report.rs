//! Output record shapes and their JSON/CSV serialization.
//!
//! JSON objects are flat, with float fields printed at 17 significant
//! digits so every f64 round-trips exactly. CSV follows RFC 4180 with a
//! mandatory header row, `.` decimal separator, and LF line endings; the
//! fixed tag alphabet needs no quoting.

use crate::types::EvalResult;

/// 17 significant digits: enough to reconstruct the exact f64.
pub fn fmt_sig17(x: f64) -> String {
    format!("{x:.16e}")
}

/// JSON number or null (JSON has no NaN/infinity literals).
fn json_f64(x: f64) -> String {
    if x.is_finite() {
        fmt_sig17(x)
    } else {
        String::from("null")
    }
}

/// One evaluation of S_{mu,p}(r).
#[derive(Debug, Clone, PartialEq)]
pub struct OutputRecord {
    pub method: String,
    pub mu: f64,
    pub p: f64,
    pub r: f64,
    pub value: f64,
    pub err_estimate: f64,
    pub terms: u64,
    pub elapsed_ns: u64,
}

impl OutputRecord {
    pub const CSV_HEADER: &'static str = "method,mu,p,r,value,err_estimate,terms,elapsed_ns";

    pub fn from_eval(mu: f64, p: f64, r: f64, res: &EvalResult, elapsed_ns: u64) -> Self {
        OutputRecord {
            method: res.method.tag().to_string(),
            mu,
            p,
            r,
            value: res.value,
            err_estimate: res.err_estimate,
            terms: res.terms_or_nodes,
            elapsed_ns,
        }
    }

    pub fn to_json(&self) -> String {
        format!(
            "{{\"method\":\"{}\",\"mu\":{},\"p\":{},\"r\":{},\"value\":{},\"err_estimate\":{},\"terms\":{},\"elapsed_ns\":{}}}",
            self.method,
            json_f64(self.mu),
            json_f64(self.p),
            json_f64(self.r),
            json_f64(self.value),
            json_f64(self.err_estimate),
            self.terms,
            self.elapsed_ns
        )
    }

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.method,
            fmt_sig17(self.mu),
            fmt_sig17(self.p),
            fmt_sig17(self.r),
            fmt_sig17(self.value),
            fmt_sig17(self.err_estimate),
            self.terms,
            self.elapsed_ns
        )
    }
}

/// All applicable methods at one parameter point plus the cross-agreement
/// summary. `consistent` is false when some pair of values differs by more
/// than 10x their combined error estimates.
#[derive(Debug, Clone)]
pub struct CompareReport {
    pub records: Vec<OutputRecord>,
    pub max_pairwise_delta: f64,
    pub consistent: bool,
}

impl CompareReport {
    pub fn to_json(&self) -> String {
        let rows: Vec<String> = self.records.iter().map(|r| r.to_json()).collect();
        format!(
            "{{\"records\":[{}],\"max_pairwise_delta\":{},\"consistent\":{}}}",
            rows.join(","),
            json_f64(self.max_pairwise_delta),
            self.consistent
        )
    }

    /// Record rows plus a footer row carrying the summary in the same
    /// column layout (method name `max_pairwise_delta`, value = the delta).
    pub fn to_csv(&self) -> String {
        let mut out = String::from(OutputRecord::CSV_HEADER);
        for r in &self.records {
            out.push('\n');
            out.push_str(&r.to_csv_row());
        }
        if let Some(first) = self.records.first() {
            out.push('\n');
            out.push_str(&format!(
                "max_pairwise_delta,{},{},{},{},{},0,0",
                fmt_sig17(first.mu),
                fmt_sig17(first.p),
                fmt_sig17(first.r),
                fmt_sig17(self.max_pairwise_delta),
                fmt_sig17(0.0),
            ));
        }
        out
    }
}

/// Partial-sum trace of one term-based method.
#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    pub method: String,
    pub mu: f64,
    pub p: f64,
    pub r: f64,
    pub rows: Vec<ConvergenceRow>,
}

#[derive(Debug, Clone, Copy)]
pub struct ConvergenceRow {
    pub terms: u64,
    pub partial: f64,
    pub err_estimate: f64,
}

impl ConvergenceReport {
    pub const CSV_HEADER: &'static str = "method,terms,partial,err_estimate";

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        for row in &self.rows {
            out.push('\n');
            out.push_str(&format!(
                "{},{},{},{}",
                self.method,
                row.terms,
                fmt_sig17(row.partial),
                fmt_sig17(row.err_estimate)
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|row| {
                format!(
                    "{{\"terms\":{},\"partial\":{},\"err_estimate\":{}}}",
                    row.terms,
                    json_f64(row.partial),
                    json_f64(row.err_estimate)
                )
            })
            .collect();
        format!(
            "{{\"method\":\"{}\",\"mu\":{},\"p\":{},\"r\":{},\"rows\":[{}]}}",
            self.method,
            json_f64(self.mu),
            json_f64(self.p),
            json_f64(self.r),
            rows.join(",")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    

    fn sample() -> OutputRecord {
        OutputRecord {
            method: String::from("b3"),
            mu: 0.0,
            p: 1.0,
            r: 0.5,
            value: 0.530_052_784_922_493_798_58,
            err_estimate: 3.2e-14,
            terms: 42,
            elapsed_ns: 1_234_567,
        }
    }

    #[test]
    fn json_round_trips_exactly() {
        let rec = sample();
        let v: serde_json::Value = serde_json::from_str(&rec.to_json()).unwrap();
        assert_eq!(v["method"], "b3");
        assert_eq!(v["mu"].as_f64().unwrap(), rec.mu);
        assert_eq!(v["p"].as_f64().unwrap(), rec.p);
        assert_eq!(v["r"].as_f64().unwrap(), rec.r);
        assert_eq!(v["value"].as_f64().unwrap(), rec.value);
        assert_eq!(v["err_estimate"].as_f64().unwrap(), rec.err_estimate);
        assert_eq!(v["terms"].as_u64().unwrap(), rec.terms);
        assert_eq!(v["elapsed_ns"].as_u64().unwrap(), rec.elapsed_ns);
    }

    #[test]
    fn sig17_reconstructs_any_double() {
        for &x in &[
            0.1,
            -3.0 / 7.0,
            1.063_526_633_821_085_064_5e0,
            4.9e-324,
            1.797_693_134_862_315_7e308,
            -5.551_115_123_125_783e-17,
        ] {
            let s = fmt_sig17(x);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back, x, "{s}");
        }
    }

    #[test]
    fn csv_layout_is_stable() {
        let rec = sample();
        assert_eq!(OutputRecord::CSV_HEADER.split(',').count(), 8);
        assert_eq!(rec.to_csv_row().split(',').count(), 8);
        assert!(rec.to_csv_row().starts_with("b3,"));
        // LF endings only, no CR anywhere.
        let report = CompareReport {
            records: vec![sample(), sample()],
            max_pairwise_delta: 0.0,
            consistent: true,
        };
        assert!(!report.to_csv().contains('\r'));
        assert_eq!(report.to_csv().lines().count(), 4);
    }

    #[test]
    fn nonfinite_floats_become_json_null() {
        let mut rec = sample();
        rec.value = f64::NAN;
        let v: serde_json::Value = serde_json::from_str(&rec.to_json()).unwrap();
        assert!(v["value"].is_null());
    }

    #[test]
    fn convergence_report_serializes_both_ways() {
        let rep = ConvergenceReport {
            method: String::from("b4"),
            mu: 1.0,
            p: 1.0,
            r: 0.5,
            rows: vec![
                ConvergenceRow { terms: 1, partial: 0.8, err_estimate: 0.07 },
                ConvergenceRow { terms: 2, partial: 0.87, err_estimate: 0.003 },
            ],
        };
        let csv = rep.to_csv();
        assert!(csv.starts_with("method,terms,partial,err_estimate\nb4,1,"));
        let v: serde_json::Value = serde_json::from_str(&rep.to_json()).unwrap();
        assert_eq!(v["rows"].as_array().unwrap().len(), 2);
        assert_eq!(v["rows"][1]["terms"].as_u64().unwrap(), 2);
    }
}
