use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::serde_util::laurent_poly;
use crate::{IntPoly, LaurentPoly};

/// Default cap on powers enumerated in ℤ[t]/(m, ψ).
pub const DEFAULT_MAX_STEPS: u64 = 10_000_000;

/// `m · phi1 + ψ · phi2 + t^n = 1` with `n ≠ 0` and integral `phi1`, `phi2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonicLemmaResult {
    #[serde(with = "laurent_poly")]
    pub phi1: LaurentPoly,
    #[serde(with = "laurent_poly")]
    pub phi2: LaurentPoly,
    pub n: i64,
    /// Powers of `t` computed before the first repeat.
    pub steps: u64,
}

impl MonicLemmaResult {
    pub fn holds_for(&self, psi: &IntPoly, m: &BigInt) -> bool {
        let m = LaurentPoly::constant(m.clone().into());
        let psi = LaurentPoly::from_int_poly(psi);
        let lhs = &(&(&m * &self.phi1) + &(&psi * &self.phi2)) + &LaurentPoly::t_pow(self.n);
        self.n != 0 && self.phi1.is_integral() && self.phi2.is_integral() && lhs == LaurentPoly::one()
    }
}

pub fn monic_lemma(psi: &IntPoly, m: &BigInt) -> Result<MonicLemmaResult> {
    monic_lemma_with_budget(psi, m, DEFAULT_MAX_STEPS)
}

/// Walks `t, t², …` in the finite ring ℤ[t]/(m, ψ) until the first repeat
/// `t^{n₁} ≡ t^{n₂}`, then lifts the congruence to an identity over ℤ.
pub fn monic_lemma_with_budget(psi: &IntPoly, m: &BigInt, max_steps: u64) -> Result<MonicLemmaResult> {
    if !psi.is_monic() {
        return Err(Error::InvalidInput(format!("psi = {psi} is not monic")));
    }
    if *m <= BigInt::one() {
        return Err(Error::InvalidInput(format!("m = {m} must exceed 1")));
    }
    let d = psi.degree().expect("monic implies nonzero");
    // Residue of t^k: d coefficients in [0, m).
    let step = |cur: &[BigInt]| -> Vec<BigInt> {
        if d == 0 {
            return Vec::new();
        }
        let top = cur[d - 1].clone();
        let mut next = Vec::with_capacity(d);
        next.push(BigInt::zero());
        next.extend(cur[..d - 1].iter().cloned());
        for (i, slot) in next.iter_mut().enumerate() {
            *slot = (&*slot - &top * psi.coeff(i)).mod_floor(m);
        }
        next
    };
    let mut power: Vec<BigInt> = vec![BigInt::zero(); d];
    if d > 0 {
        power[0] = BigInt::one().mod_floor(m);
    }
    let mut seen: HashMap<Vec<BigInt>, u64> = HashMap::new();
    let (n1, n2) = {
        let mut k = 0u64;
        loop {
            k += 1;
            if k > max_steps {
                return Err(Error::SearchExhausted(format!(
                    "no repeated power of t within {max_steps} steps (m = {m}, psi = {psi})"
                )));
            }
            power = step(&power);
            if let Some(&first) = seen.get(&power) {
                break (first, k);
            }
            seen.insert(power.clone(), k);
        }
    };

    // t^{n2} - t^{n1} = ψ·Q + R with R ≡ 0 (mod m).
    let diff = &IntPoly::monomial(BigInt::one(), n2 as usize) - &IntPoly::monomial(BigInt::one(), n1 as usize);
    let (quot, rem) = diff.div_rem_monic(psi).expect("psi is monic");
    if rem.coeffs().iter().any(|c| !c.is_multiple_of(m)) {
        return Err(Error::Internal("lifted remainder is not divisible by m".into()));
    }
    let phi1_prime = rem.map(|c| c / m);
    let back = -(n2 as i64);
    let out = MonicLemmaResult {
        phi1: LaurentPoly::from_int_poly(&phi1_prime).shift(back),
        phi2: LaurentPoly::from_int_poly(&quot).shift(back),
        n: n1 as i64 - n2 as i64,
        steps: n2,
    };
    if !out.holds_for(psi, m) {
        return Err(Error::Internal("monic-lemma identity does not re-expand".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn psi_t_mod_two() {
        let r = monic_lemma(&ip(&[0, 1]), &BigInt::from(2)).unwrap();
        assert_eq!(r.phi1, LaurentPoly::zero());
        let expected = LaurentPoly::new(
            -2,
            vec![BigRational::from_integer((-1).into()), BigRational::from_integer(1.into())],
        );
        assert_eq!(r.phi2, expected);
        assert_eq!(r.n, -1);
    }

    #[test]
    fn psi_t_minus_one_mod_two() {
        let r = monic_lemma(&ip(&[-1, 1]), &BigInt::from(2)).unwrap();
        assert_ne!(r.n, 0);
        assert!(r.holds_for(&ip(&[-1, 1]), &BigInt::from(2)));
    }

    #[test]
    fn cyclotomic_mod_three_within_pigeonhole() {
        let psi = ip(&[1, 1, 1]);
        let r = monic_lemma(&psi, &BigInt::from(3)).unwrap();
        assert!(r.holds_for(&psi, &BigInt::from(3)));
        assert!(r.steps <= 9 + 1);
    }

    #[test]
    fn rejects_non_monic_and_small_m() {
        assert!(matches!(monic_lemma(&ip(&[1, 2]), &BigInt::from(3)), Err(Error::InvalidInput(_))));
        assert!(matches!(monic_lemma(&ip(&[1, 1]), &BigInt::from(1)), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn budget_is_enforced() {
        let r = monic_lemma_with_budget(&ip(&[1, 1, 0, 1]), &BigInt::from(1_000_003), 5);
        assert!(matches!(r, Err(Error::SearchExhausted(_))));
    }
}
