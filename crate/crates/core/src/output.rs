//! CSV emission with fixed 12-significant-digit number formatting.

use std::io::Write;

use crate::error::Result;
use crate::scenario::{Scenario, ScenarioKind};
use crate::single::single_timeseries;
use crate::two::two_timeseries;

pub const SINGLE_HEADER: &str = "lambda_t,W_S,L,coherence";
pub const TWO_HEADER: &str = "lambda_t,W_T,T_A_FF,T_AF1_F2,T_AF2_F1,E,coherence";

/// `%.12g`: 12 significant digits, trailing zeros dropped, exponent form
/// outside `[1e-4, 1e12)`.
pub fn fmt_g(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..DIGITS).contains(&exp) {
        let fixed = format!("{:.*}", (DIGITS - 1 - exp) as usize, x);
        strip_zeros(&fixed).to_string()
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", strip_zeros(mantissa), exp.abs())
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Writes one row per grid point; the first column is `λt`.
pub fn write_timeseries(scenario: &Scenario, mut w: impl Write) -> Result<()> {
    let lambda_t = |j: usize| scenario.scaled_grid.time(j);
    match &scenario.kind {
        ScenarioKind::Single { params, field } => {
            writeln!(w, "{SINGLE_HEADER}")?;
            for (j, r) in single_timeseries(field, params, &scenario.time_grid()).iter().enumerate() {
                writeln!(
                    w,
                    "{},{},{},{}",
                    fmt_g(lambda_t(j)),
                    fmt_g(r.inversion),
                    fmt_g(r.linear_entropy),
                    fmt_g(r.coherence)
                )?;
            }
        }
        ScenarioKind::Two { params, field } => {
            writeln!(w, "{TWO_HEADER}")?;
            for (j, r) in two_timeseries(field, params, &scenario.time_grid())?.iter().enumerate() {
                writeln!(
                    w,
                    "{},{},{},{},{},{},{}",
                    fmt_g(lambda_t(j)),
                    fmt_g(r.w_t),
                    fmt_g(r.tangle_a_ff),
                    fmt_g(r.tangle_af1_f2),
                    fmt_g(r.tangle_af2_f1),
                    fmt_g(r.relative_entropy),
                    fmt_g(r.coherence)
                )?;
            }
        }
    }
    w.flush()?;
    Ok(())
}
