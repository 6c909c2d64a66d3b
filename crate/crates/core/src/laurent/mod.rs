//! Polynomials and Laurent polynomials in one variable `t`, plus the
//! arithmetic engines built on them.

mod bezout;
mod eval;
#[allow(clippy::module_inception)]
mod laurent;
mod monic;
mod poly;
mod unit;

use std::fmt;

pub use bezout::{bezout_integerized, BezoutResult};
pub use eval::eval_mod;
pub use laurent::Laurent;
pub use monic::{monic_lemma, monic_lemma_with_budget, MonicLemmaResult, DEFAULT_MAX_STEPS};
pub use poly::Poly;
pub use unit::{q_adic_certificate, solve_unit_power, QAdicSplit, UnitPower};

/// Writes `(exponent, coefficient)` pairs, highest exponent first, as
/// `3*t^2 - t + 1/2`.
pub(crate) fn write_terms(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (i64, String)>,
) -> fmt::Result {
    let mut first = true;
    for (exp, coeff) in terms {
        let (neg, mag) = match coeff.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, coeff.as_str()),
        };
        match (first, neg) {
            (true, true) => f.write_str("-")?,
            (true, false) => {}
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
        }
        first = false;
        let var = match exp {
            0 => String::new(),
            1 => "t".to_string(),
            e => format!("t^{e}"),
        };
        match (mag, var.is_empty()) {
            (_, true) => f.write_str(mag)?,
            ("1", false) => f.write_str(&var)?,
            (_, false) => write!(f, "{mag}*{var}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}
