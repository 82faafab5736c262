//! Deterministic report formatting: fixed key order, fixed 6-decimal reals.

use qwc_core::metrics::{MetricsReport, Psnr};

pub fn metrics_json(report: &MetricsReport) -> String {
    let mut out = String::from("{\n");
    if let Some(psnr) = &report.psnr_db {
        match psnr {
            Psnr::Decibels(db) => out.push_str(&format!("  \"psnr_db\": {:.6},\n", db)),
            Psnr::Infinite => out.push_str("  \"psnr_db\": \"infinite\",\n"),
        }
    }
    out.push_str(&format!("  \"horizontal\": {:.6},\n", report.horizontal));
    out.push_str(&format!("  \"vertical\": {:.6},\n", report.vertical));
    out.push_str(&format!("  \"diagonal\": {:.6},\n", report.diagonal));
    out.push_str(&format!("  \"entropy_bits\": {:.6},\n", report.entropy_bits));
    out.push_str(&format!("  \"rf\": {:.6},\n", report.rf));
    out.push_str(&format!("  \"cf\": {:.6},\n", report.cf));
    out.push_str(&format!("  \"sf\": {:.6}\n", report.sf));
    out.push('}');
    out.push('\n');
    out
}

/// 256 lines of `value,count`.
pub fn histogram_csv(histogram: &[u64; 256]) -> String {
    let mut out = String::new();
    for (value, count) in histogram.iter().enumerate() {
        out.push_str(&format!("{},{}\n", value, count));
    }
    out
}
