//! Row types for scans and their CSV / JSON emission.
//!
//! CSV is byte-stable: header row, `,` separator, LF line ends, `.` decimal
//! point and numbers printed with 12 significant digits.

use serde::Serialize;

use crate::error::Result;
use crate::grover::SpeedupRow;
use crate::quantum::{delta_closed_form, delta_numeric, two_mode_delta, PhasePattern, Regime};

/// Significant digits in CSV output.
pub const CSV_SIGNIFICANT_DIGITS: usize = 12;

/// Formats like C's `%.12g`: fixed notation for exponents in `[-5, 12)`,
/// scientific otherwise, trailing zeros removed.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let digits = CSV_SIGNIFICANT_DIGITS;
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        format!("{}e{}", trim_zeros(mantissa), exp)
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// A serialisable output row with a fixed CSV layout.
pub trait TableRow: Serialize {
    fn header() -> &'static [&'static str];
    fn fields(&self) -> Vec<String>;
}

/// Writes a header and one line per row.
pub fn to_csv<R: TableRow>(rows: &[R]) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(R::header()).expect("in-memory write");
    for r in rows {
        w.write_record(r.fields()).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
}

/// Pretty JSON array of the rows, newline-terminated.
pub fn to_json<R: Serialize>(rows: &R) -> String {
    let mut s = serde_json::to_string_pretty(rows).expect("rows serialise");
    s.push('\n');
    s
}

/// Violation at one `(N, φ)` point for the standard phase pattern.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ViolationRow {
    #[serde(rename = "N")]
    pub n: usize,
    pub phi: f64,
    pub delta_numeric: f64,
    pub delta_closed_form: f64,
    pub regime: Regime,
    #[serde(rename = "B_quantum")]
    pub b_quantum: f64,
    #[serde(rename = "B_classical_bound")]
    pub b_classical_bound: f64,
}

impl ViolationRow {
    /// Evaluates both routes. `N = 2` uses the exact two-mode formula as the closed form.
    pub fn compute(n: usize, phi: f64) -> Result<Self> {
        let numeric = delta_numeric(n, &PhasePattern::standard(n, phi)?)?;
        let (closed, regime) = if n == 2 {
            let d = two_mode_delta(phi);
            (
                d,
                if d > 0.0 {
                    Regime::Violation
                } else {
                    Regime::NoViolation
                },
            )
        } else {
            let (d, spectrum) = delta_closed_form(n, phi)?;
            (d, spectrum.regime)
        };
        let bound = n as f64 - 1.0;
        Ok(ViolationRow {
            n,
            phi,
            delta_numeric: numeric,
            delta_closed_form: closed,
            regime,
            b_quantum: bound + numeric,
            b_classical_bound: bound,
        })
    }
}

impl TableRow for ViolationRow {
    fn header() -> &'static [&'static str] {
        &[
            "N",
            "phi",
            "delta_numeric",
            "delta_closed_form",
            "regime",
            "B_quantum",
            "B_classical_bound",
        ]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            format_sig(self.phi),
            format_sig(self.delta_numeric),
            format_sig(self.delta_closed_form),
            self.regime.to_string(),
            format_sig(self.b_quantum),
            format_sig(self.b_classical_bound),
        ]
    }
}

impl TableRow for SpeedupRow {
    fn header() -> &'static [&'static str] {
        &["N", "k", "p_quantum", "p_classical", "gap"]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.k.to_string(),
            format_sig(self.p_quantum),
            format_sig(self.p_classical),
            format_sig(self.gap),
        ]
    }
}
