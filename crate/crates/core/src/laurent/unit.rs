//! q-adic splitting `amp·m = r·q^N` and unit-power solving `s·r + q^N = 1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{factor_abs, multiplicative_order, valuation};
use crate::serde_util::bigint_str;

/// `amp · m = r · q^n` with `gcd(r, q) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QAdicSplit {
    #[serde(with = "bigint_str")]
    pub amp: BigInt,
    #[serde(with = "bigint_str")]
    pub r: BigInt,
    pub n: u32,
}

pub fn q_adic_certificate(m: &BigInt, q: &BigInt) -> Result<QAdicSplit> {
    if m.is_zero() {
        return Err(Error::InvalidInput("m must be nonzero".into()));
    }
    if q.abs() < BigInt::from(2) {
        return Err(Error::InvalidInput(format!("|q| must be at least 2, got {q}")));
    }
    let fac = factor_abs(q)?;
    let n = fac
        .iter()
        .map(|&(p, e)| valuation(m, p).div_ceil(e))
        .max()
        .unwrap_or(0);
    let mut amp = BigInt::one();
    for &(p, e) in &fac {
        let f = valuation(m, p);
        amp *= BigInt::from(p).pow(n * e - f);
    }
    let (r, rem) = (&amp * m).div_rem(&q.pow(n));
    if !rem.is_zero() || !r.gcd(q).is_one() {
        return Err(Error::Internal(format!("q-adic split failed for m={m}, q={q}")));
    }
    Ok(QAdicSplit { amp, r, n })
}

/// `s · r + q^n = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitPower {
    #[serde(with = "bigint_str")]
    pub s: BigInt,
    pub n: u32,
}

/// Picks the least multiple of the order of `q` mod `|r|` that is at least
/// `min_n`; for `|r| = 1` takes `n = min_n` directly.
pub fn solve_unit_power(r: &BigInt, q: &BigInt, min_n: u32) -> Result<UnitPower> {
    if r.is_zero() {
        return Err(Error::InvalidInput("r must be nonzero".into()));
    }
    if !r.gcd(q).is_one() {
        return Err(Error::NotCoprimeIntegers(format!("gcd({r}, {q}) ≠ 1")));
    }
    let n = if r.abs().is_one() {
        min_n
    } else {
        let ord = multiplicative_order(q, &r.abs())?;
        let ord = ord
            .to_u32()
            .ok_or_else(|| Error::InvalidInput(format!("order {ord} of {q} is too large")))?;
        if min_n == 0 {
            0
        } else {
            min_n.div_ceil(ord) * ord
        }
    };
    let (s, rem) = (BigInt::one() - q.pow(n)).div_rem(r);
    if !rem.is_zero() {
        return Err(Error::Internal(format!("{r} does not divide 1 - {q}^{n}")));
    }
    Ok(UnitPower { s, n })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn q_adic_examples() {
        assert_eq!(
            q_adic_certificate(&b(6), &b(4)).unwrap(),
            QAdicSplit { amp: b(2), r: b(3), n: 1 }
        );
        assert_eq!(
            q_adic_certificate(&b(5), &b(2)).unwrap(),
            QAdicSplit { amp: b(1), r: b(5), n: 0 }
        );
        assert_eq!(
            q_adic_certificate(&b(8), &b(2)).unwrap(),
            QAdicSplit { amp: b(1), r: b(1), n: 3 }
        );
    }

    #[test]
    fn q_adic_rejects_bad_input() {
        assert!(matches!(q_adic_certificate(&b(0), &b(3)), Err(Error::InvalidInput(_))));
        assert!(matches!(q_adic_certificate(&b(3), &b(-1)), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn unit_power_examples() {
        assert_eq!(solve_unit_power(&b(3), &b(2), 1).unwrap(), UnitPower { s: b(-1), n: 2 });
        assert_eq!(solve_unit_power(&b(1), &b(5), 1).unwrap(), UnitPower { s: b(-4), n: 1 });
        assert_eq!(solve_unit_power(&b(7), &b(2), 4).unwrap(), UnitPower { s: b(-9), n: 6 });
    }

    #[test]
    fn unit_power_negative_r_and_q() {
        let u = solve_unit_power(&b(-1), &b(3), 2).unwrap();
        assert_eq!(&u.s * b(-1) + b(3).pow(u.n), b(1));
        let u = solve_unit_power(&b(5), &b(-2), 1).unwrap();
        assert_eq!(&u.s * b(5) + b(-2).pow(u.n), b(1));
    }

    #[test]
    fn unit_power_not_coprime() {
        assert!(matches!(
            solve_unit_power(&b(4), &b(2), 1),
            Err(Error::NotCoprimeIntegers(_))
        ));
    }
}
