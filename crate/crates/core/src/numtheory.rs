//! Integer utilities: trial-division factorization, valuations, modular
//! orders and integer Bézout coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest magnitude accepted by [`trial_factor`].
pub const TRIAL_DIVISION_CAP: u64 = 1 << 63;

/// Prime factorization of `n ≥ 1` by trial division, ascending primes.
pub fn trial_factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Factor `|n|` for a big integer within the trial-division cap.
pub fn factor_abs(n: &BigInt) -> Result<Vec<(u64, u32)>> {
    let a = n.abs();
    match a.to_u64() {
        Some(v) if v <= TRIAL_DIVISION_CAP => Ok(trial_factor(v)),
        _ => Err(Error::InvalidInput(format!(
            "|{n}| exceeds the trial-division cap 2^63"
        ))),
    }
}

/// `p`-adic valuation of a nonzero integer.
pub fn valuation(m: &BigInt, p: u64) -> u32 {
    debug_assert!(!m.is_zero());
    let p = BigInt::from(p);
    let mut m = m.clone();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// All positive divisors of `|n|` (n ≠ 0), ascending.
pub fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let mut divs = vec![BigInt::one()];
    for (p, e) in factor_abs(n)? {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= p;
            }
        }
        divs = next;
    }
    divs.sort();
    Ok(divs)
}

/// `(g, x, y)` with `x·a + y·b = g = gcd(a, b) ≥ 0`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Multiplicative order of `q` modulo `n ≥ 2`; requires `gcd(q, n) = 1`.
///
/// Computed from the Carmichael function of `n`, then stripped prime by
/// prime, so the cost is bounded by factoring rather than by `n`.
pub fn multiplicative_order(q: &BigInt, n: &BigInt) -> Result<BigInt> {
    let fac = factor_abs(n)?;
    let mut lambda = BigInt::one();
    for &(p, e) in &fac {
        let pb = BigInt::from(p);
        let l = if p == 2 && e >= 3 {
            BigInt::from(2u32).pow(e - 2)
        } else {
            (&pb - 1u32) * pb.pow(e - 1)
        };
        lambda = lambda.lcm(&l);
    }
    let q = q.mod_floor(n);
    let mut ord = lambda.clone();
    for (p, _) in factor_abs(&lambda)? {
        let pb = BigInt::from(p);
        while ord.is_multiple_of(&pb) && q.modpow(&(&ord / &pb), n).is_one() {
            ord /= &pb;
        }
    }
    debug_assert!(q.modpow(&ord, n).is_one());
    Ok(ord)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_small_numbers() {
        assert_eq!(trial_factor(1), vec![]);
        assert_eq!(trial_factor(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(trial_factor(97), vec![(97, 1)]);
    }

    #[test]
    fn valuation_counts_powers() {
        assert_eq!(valuation(&BigInt::from(-48), 2), 4);
        assert_eq!(valuation(&BigInt::from(7), 2), 0);
    }

    #[test]
    fn order_matches_brute_force() {
        for n in 2i64..60 {
            for q in -7i64..8 {
                if q.gcd(&n) != 1 {
                    continue;
                }
                let mut k = 1;
                let mut x = q.rem_euclid(n);
                while x != 1 % n {
                    x = (x * q).rem_euclid(n);
                    k += 1;
                }
                let got = multiplicative_order(&q.into(), &n.into()).unwrap();
                assert_eq!(got, BigInt::from(k), "q={q} n={n}");
            }
        }
    }

    #[test]
    fn divisors_of_twelve() {
        let d: Vec<i64> = divisors(&BigInt::from(-12))
            .unwrap()
            .iter()
            .map(|x| x.to_i64().unwrap())
            .collect();
        assert_eq!(d, vec![1, 2, 3, 4, 6, 12]);
    }
}
