use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Interval;

/// A formal positive real, algebraically independent of every other symbol
/// with a different name. `approx ± radius` feeds numeric bounds only.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SymbolRepr")]
pub struct SymbolicReal {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub approx: Option<f64>,
    #[serde(default)]
    pub radius: f64,
}

#[derive(Deserialize)]
struct SymbolRepr {
    name: String,
    approx: Option<f64>,
    #[serde(default)]
    radius: f64,
}

impl TryFrom<SymbolRepr> for SymbolicReal {
    type Error = Error;

    fn try_from(r: SymbolRepr) -> Result<Self> {
        match r.approx {
            Some(a) => SymbolicReal::with_approx(&r.name, a, r.radius),
            None => SymbolicReal::new(&r.name),
        }
    }
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl SymbolicReal {
    pub fn new(name: &str) -> Result<Self> {
        if !valid_name(name) {
            return Err(Error::InvalidInput(format!("{name:?} is not a valid symbol name")));
        }
        Ok(Self { name: name.to_string(), approx: None, radius: 0.0 })
    }

    pub fn with_approx(name: &str, approx: f64, radius: f64) -> Result<Self> {
        let mut s = Self::new(name)?;
        if !approx.is_finite() || !radius.is_finite() || radius < 0.0 {
            return Err(Error::InvalidInput(format!("bad approximation {approx} ± {radius} for {name}")));
        }
        if approx - radius <= 0.0 {
            return Err(Error::InvalidInput(format!("{name} ≈ {approx} ± {radius} is not certainly positive")));
        }
        s.approx = Some(approx);
        s.radius = radius;
        Ok(s)
    }

    pub fn enclosure(&self) -> Option<Interval> {
        self.approx.map(|a| Interval::around(a, self.radius))
    }
}

impl fmt::Display for SymbolicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}
