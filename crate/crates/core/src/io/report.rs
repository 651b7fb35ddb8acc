//! Report rendering.
//!
//! The table layout follows the usual `Year P1 P2 R^2 (%)` and
//! `Year T C μ R^2 (%)` tables, with `g` added next to `C = ln(g)`.
//! Parameters carry 4 significant digits and R² is a percentage with two
//! decimals, so output is byte-stable across runs.

use std::fmt::Write as _;
use std::str::FromStr;

use super::decile_csv::quote;
use super::pipeline::{Report, ReportRow};
use crate::model::{ModelKind, ModelParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Table,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "table" => Ok(ReportFormat::Table),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(format!("unknown format `{other}`")),
        }
    }
}

/// `%.4g`-style formatting: 4 significant digits, trailing zeros dropped.
pub fn format_sig(v: f64) -> String {
    format_sig_digits(v, 4)
}

pub fn format_sig_digits(v: f64, digits: usize) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        return format!("{}e{}", strip_zeros(mantissa), exp);
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    strip_zeros(&format!("{v:.decimals$}")).to_string()
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// R² as a percentage with two decimals.
pub fn format_r2_percent(r_squared: f64) -> String {
    let s = format!("{:.2}", 100.0 * r_squared);
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn parameter_header(kind: ModelKind) -> Vec<String> {
    match kind {
        ModelKind::FermiDirac => ["T", "C", "g", "μ"].map(String::from).to_vec(),
        ModelKind::Polynomial(d) => (1..=d + 1).map(|k| format!("P{k}")).collect(),
    }
}

fn parameter_cells(params: &ModelParams) -> Vec<String> {
    match params {
        ModelParams::FermiDirac(p) => vec![
            format_sig(p.t()),
            format_sig(p.ln_g()),
            format_sig(p.g()),
            format_sig(p.mu()),
        ],
        ModelParams::Polynomial(c) => c.coeffs().iter().map(|&v| format_sig(v)).collect(),
    }
}

fn render_aligned(out: &mut String, rows: &[Vec<String>]) {
    let ncols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..ncols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|cell| cell.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            let pad = widths[c] - cell.chars().count();
            line.extend(std::iter::repeat_n(' ', pad));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
}

fn emit_table(report: &Report) -> String {
    let mut out = String::new();
    if report.rows.is_empty() {
        out.push_str("Year  Model  R^2 (%)  Converged\n");
        return out;
    }
    let mut kinds: Vec<ModelKind> = report.rows.iter().map(ReportRow::model).collect();
    kinds.sort();
    kinds.dedup();
    for (k, kind) in kinds.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        let mut header = vec!["Year".to_string()];
        header.extend(parameter_header(*kind));
        header.extend(["R^2 (%)".to_string(), "Converged".to_string()]);
        let mut lines = vec![header];
        for row in report.rows.iter().filter(|r| r.model() == *kind) {
            let mut cells = vec![row.label.clone()];
            cells.extend(parameter_cells(&row.fit.params));
            cells.push(format_r2_percent(row.fit.r_squared));
            cells.push(yes_no(row.fit.converged).to_string());
            lines.push(cells);
        }
        render_aligned(&mut out, &lines);
    }
    out
}

pub const CSV_HEADER: &str =
    "label,model,degree,converged,r_squared_pct,t,c,g,mu,p1,p2,p3,p4,p5";

fn emit_csv(report: &Report) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in &report.rows {
        let (degree, fermi, poly) = match &row.fit.params {
            ModelParams::FermiDirac(_) => {
                (String::new(), parameter_cells(&row.fit.params), vec![String::new(); 5])
            }
            ModelParams::Polynomial(c) => {
                let mut cells = parameter_cells(&row.fit.params);
                cells.resize(5, String::new());
                (c.degree().to_string(), vec![String::new(); 4], cells)
            }
        };
        // Fermi cells come out as T, C, g, mu.
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            quote(&row.label),
            row.model().name(),
            degree,
            row.fit.converged,
            format_r2_percent(row.fit.r_squared),
            fermi.join(","),
            poly.join(","),
        )
        .unwrap();
    }
    out
}

pub fn emit_report(report: &Report, format: ReportFormat) -> String {
    match format {
        ReportFormat::Table => emit_table(report),
        ReportFormat::Csv => emit_csv(report),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fit::{FitResult, Termination};
    use crate::model::{FermiParams, PolyCoeffs};

    fn row(label: &str, params: ModelParams, r_squared: f64) -> ReportRow {
        ReportRow {
            label: label.into(),
            fit: FitResult {
                params,
                r_squared,
                iterations: 0,
                converged: true,
                residual_norm: 0.0,
                termination: Termination::Exact,
            },
            points: vec![],
        }
    }

    fn poly(c: &[f64]) -> ModelParams {
        ModelParams::Polynomial(PolyCoeffs::new(c.to_vec()).unwrap())
    }

    #[test]
    fn significant_digits() {
        assert_eq!(format_sig(-0.01574), "-0.01574");
        assert_eq!(format_sig(84.62), "84.62");
        assert_eq!(format_sig(-0.0234), "-0.0234");
        assert_eq!(format_sig(85.7), "85.7");
        assert_eq!(format_sig(86.0), "86");
        assert_eq!(format_sig(0.48811234), "0.4881");
        assert_eq!(format_sig(100f64.ln()), "4.605");
        assert_eq!(format_sig(9.99996), "10");
        assert_eq!(format_sig(123456.0), "1.235e5");
        assert_eq!(format_sig(0.0000123), "1.23e-5");
        assert_eq!(format_sig(1234.4), "1234");
        assert_eq!(format_sig(0.0), "0");
    }

    #[test]
    fn r2_formatting() {
        assert_eq!(format_r2_percent(1.0), "100.00");
        assert_eq!(format_r2_percent(0.9146), "91.46");
        assert_eq!(format_r2_percent(-0.00001), "0.00");
    }

    #[test]
    fn polynomial_table_row() {
        let report = Report {
            rows: vec![row("2008", poly(&[-0.01574, 84.62]), 0.9146)],
            ..Report::default()
        };
        let text = emit_report(&report, ReportFormat::Table);
        assert!(text.contains("-0.01574  84.62  91.46"), "{text}");
        assert!(text.starts_with("Year  P1        P2     R^2 (%)  Converged\n"), "{text}");
    }

    #[test]
    fn fermi_table_has_c_and_g() {
        let p = FermiParams::new(100.0, 8.196, 0.4881).unwrap();
        let report = Report {
            rows: vec![row("2003/2004", ModelParams::FermiDirac(p), 1.0)],
            ..Report::default()
        };
        let text = emit_report(&report, ReportFormat::Table);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "Year       T       C      g    μ      R^2 (%)  Converged");
        assert_eq!(lines[1], "2003/2004  0.4881  4.605  100  8.196  100.00   yes");
    }

    #[test]
    fn empty_report_is_header_only() {
        let text = emit_report(&Report::default(), ReportFormat::Table);
        assert_eq!(text.lines().count(), 1);
        assert_eq!(emit_report(&Report::default(), ReportFormat::Csv), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn csv_rows() {
        let p = FermiParams::new(100.0, 8.196, 0.4881).unwrap();
        let report = Report {
            rows: vec![
                row("2003/2004", ModelParams::FermiDirac(p), 0.985),
                row("2003/2004", poly(&[-0.0234, 85.85]), 0.9417),
            ],
            ..Report::default()
        };
        let text = emit_report(&report, ReportFormat::Csv);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[1], "2003/2004,fermi_dirac,,true,98.50,0.4881,4.605,100,8.196,,,,,");
        assert_eq!(lines[2], "2003/2004,polynomial,1,true,94.17,,,,,-0.0234,85.85,,,");
        let fields = CSV_HEADER.split(',').count();
        assert!(lines.iter().all(|l| l.split(',').count() == fields));
    }
}
