//! Output records and formatting: JSON at full double precision, CSV/human
//! tables at six significant digits.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use swapnet_core::nonclassicality::CriterionReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// `x` rendered with six significant digits, plain decimal notation.
pub fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).clamp(0, 17) as usize;
    format!("{x:.decimals$}")
}

pub fn print_json<T: Serialize>(value: &T) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SwapOutput {
    pub scenario: String,
    pub topology: String,
    pub n_parents: usize,
    pub qubits_per_parent: usize,
    pub visibility: f64,
    pub state_qubits: usize,
    pub reports: Vec<CriterionReport>,
}

impl SwapOutput {
    pub fn print_csv(&self) {
        println!("criterion,value,threshold,violated");
        for r in &self.reports {
            println!(
                "{},{},{},{}",
                r.criterion,
                sig6(r.value),
                sig6(r.threshold),
                r.violated
            );
        }
    }
}

/// Result of a threshold search, optionally with per-point reports on a grid.
#[derive(Debug, Serialize, Deserialize)]
pub struct ScanResult {
    pub scenario: String,
    pub grid: Vec<f64>,
    pub points: Vec<Vec<CriterionReport>>,
    pub thresholds: BTreeMap<String, f64>,
}

impl ScanResult {
    pub fn print_csv(&self) {
        println!("criterion,crossing");
        for (criterion, crossing) in &self.thresholds {
            println!("{},{}", criterion, sig6(*crossing));
        }
        if !self.grid.is_empty() {
            println!();
            println!("p,criterion,value,threshold,violated");
            for (p, reports) in self.grid.iter().zip(self.points.iter()) {
                for r in reports {
                    println!(
                        "{},{},{},{},{}",
                        sig6(*p),
                        r.criterion,
                        sig6(r.value),
                        sig6(r.threshold),
                        r.violated
                    );
                }
            }
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SuperadditivityRow {
    pub n: usize,
    /// Functional-Bell critical visibility V^f_N = (2/π) 2^(1/N).
    pub v_functional: f64,
    /// MK critical visibility V_N^(2) = (2^((N−1)/2))^(−1/N).
    pub v_mk2: f64,
    /// True when V^f_N drops below 1/√2.
    pub superadditive: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SuperadditivityOutput {
    pub rows: Vec<SuperadditivityRow>,
    pub first_superadditive_n: Option<usize>,
}

impl SuperadditivityOutput {
    pub fn print_csv(&self) {
        println!("n,v_functional,v_mk2,superadditive");
        for row in &self.rows {
            println!(
                "{},{},{},{}",
                row.n,
                sig6(row.v_functional),
                sig6(row.v_mk2),
                row.superadditive
            );
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RepeaterCell {
    pub a: f64,
    pub lambda: f64,
    pub eof_in: f64,
    pub eof_out: f64,
    pub gain: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RepeaterOutput {
    pub cells: Vec<RepeaterCell>,
    pub gain_cells: usize,
}

impl RepeaterOutput {
    pub fn print_csv(&self) {
        println!("a,lambda,eof_in,eof_out,gain");
        for c in &self.cells {
            println!(
                "{},{},{},{},{}",
                sig6(c.a),
                sig6(c.lambda),
                sig6(c.eof_in),
                sig6(c.eof_out),
                c.gain
            );
        }
    }
}

#[cfg(test)]
mod tests {
    use super::sig6;

    #[test]
    fn sig6_keeps_six_significant_digits() {
        assert_eq!(sig6(0.79370052598), "0.793701");
        assert_eq!(sig6(2.8284271247), "2.82843");
        assert_eq!(sig6(0.0), "0");
        assert_eq!(sig6(1.0), "1.00000");
        assert_eq!(sig6(12.3456789), "12.3457");
    }
}
