//! Irreducibility (Rabin), enumeration of monic irreducibles, Möbius counts.

use num::{BigInt, BigUint, One, Zero};

use crate::apoly::APoly;
use crate::error::{Error, Result};
use crate::fq::Fq;

/// Largest `q^N` the exhaustive enumeration will walk.
pub const ENUMERATION_LIMIT: u64 = 1 << 24;

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// T^{q^k} mod f.
fn frob_power_of_t(f: &APoly, k: usize) -> Result<APoly> {
    let q = f.fq().q() as u64;
    let mut x = APoly::t(f.fq()).rem(f)?;
    for _ in 0..k {
        x = x.powmod(q, f)?;
    }
    Ok(x)
}

/// Rabin's test. Unit factors are ignored; constants are not irreducible.
pub fn is_irreducible(f: &APoly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::invalid("irreducibility of the zero polynomial"));
    }
    let n = match f.deg() {
        Some(0) | None => return Ok(false),
        Some(1) => return Ok(true),
        Some(n) => n,
    };
    let f = f.to_monic();
    if f.coeff(0) == 0 {
        return Ok(false);
    }
    let t = APoly::t(f.fq());
    for r in prime_divisors(n) {
        let h = &frob_power_of_t(&f, n / r)? - &t;
        if !h.gcd(&f).is_one() {
            return Ok(false);
        }
    }
    Ok((&frob_power_of_t(&f, n)? - &t).rem(&f)?.is_zero())
}

/// All monic irreducibles of degree `n`, ordered by [`APoly`]'s `Ord`.
pub fn enumerate_irreducibles(fq: Fq, n: usize) -> Result<Vec<APoly>> {
    if n == 0 {
        return Err(Error::invalid("degree must be at least 1"));
    }
    let total = (fq.q() as u64)
        .checked_pow(n as u32)
        .filter(|&t| t <= ENUMERATION_LIMIT)
        .ok_or_else(|| {
            Error::resource(
                "monic polynomials to enumerate",
                format!("{}^{n}", fq.q()),
                ENUMERATION_LIMIT,
            )
        })?;
    let mut out = Vec::new();
    for code in 0..total {
        let f = APoly::monic_from_code(fq, n, code);
        if is_irreducible(&f)? {
            out.push(f);
        }
    }
    Ok(out)
}

fn mobius(mut n: usize) -> i32 {
    let mut sign = 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Number of monic irreducibles of degree `n` over F_q: (1/n) Σ_{d|n} μ(n/d) q^d.
pub fn count_irreducibles(q: u32, n: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::invalid("degree must be at least 1"));
    }
    let mut sum = BigInt::zero();
    for d in (1..=n).filter(|d| n % d == 0) {
        let term = num::pow(BigInt::from(q), d);
        match mobius(n / d) {
            1 => sum += term,
            -1 => sum -= term,
            _ => {}
        }
    }
    let (quot, rem) = num::Integer::div_rem(&sum, &BigInt::from(n));
    if !rem.is_zero() || quot < BigInt::one() {
        return Err(Error::Contract(format!("Möbius sum {sum} not divisible by {n}")));
    }
    Ok(quot.to_biguint().expect("positive"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Fq {
        Fq::prime(2).unwrap()
    }

    #[test]
    fn small_cases_over_f2() {
        let fq = f2();
        assert!(is_irreducible(&APoly::t(fq)).unwrap());
        assert!(!is_irreducible(&APoly::from_coeffs(fq, vec![1, 0, 1])).unwrap());
        assert!(is_irreducible(&APoly::from_coeffs(fq, vec![1, 1, 1])).unwrap());
        assert!(is_irreducible(&APoly::zero(fq)).is_err());
    }

    #[test]
    fn enumeration_matches_listing() {
        let fq = f2();
        let one: Vec<String> = enumerate_irreducibles(fq, 1)
            .unwrap()
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(one, ["T", "T + 1"]);
        assert_eq!(enumerate_irreducibles(fq, 2).unwrap().len(), 1);
        assert_eq!(enumerate_irreducibles(fq, 4).unwrap().len(), 3);
        assert!(enumerate_irreducibles(fq, 0).is_err());
    }

    #[test]
    fn mobius_counts() {
        assert_eq!(count_irreducibles(2, 1).unwrap(), BigUint::from(2u32));
        assert_eq!(count_irreducibles(2, 2).unwrap(), BigUint::from(1u32));
        assert_eq!(count_irreducibles(3, 2).unwrap(), BigUint::from(3u32));
        assert_eq!(count_irreducibles(2, 4).unwrap(), BigUint::from(3u32));
        assert!(count_irreducibles(2, 0).is_err());
    }

    /// Brute force: no monic factor of degree 1..=n/2.
    fn irreducible_by_trial(f: &APoly) -> bool {
        let n = f.deg().unwrap();
        let q = f.fq().q() as u64;
        for k in 1..=n / 2 {
            for code in 0..q.pow(k as u32) {
                let g = APoly::monic_from_code(f.fq(), k, code);
                if g.divides(f) {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn rabin_agrees_with_trial_division() {
        for q in [2u32, 3, 5] {
            let fq = Fq::prime(q).unwrap();
            for n in 1..=4usize {
                for code in 0..(q as u64).pow(n as u32) {
                    let f = APoly::monic_from_code(fq, n, code);
                    assert_eq!(is_irreducible(&f).unwrap(), irreducible_by_trial(&f), "{f}");
                }
            }
        }
    }

    #[test]
    fn extension_field_counts() {
        let f4 = Fq::with_order(4).unwrap();
        for n in 1..=3 {
            let listed = enumerate_irreducibles(f4, n).unwrap().len();
            assert_eq!(BigUint::from(listed), count_irreducibles(4, n).unwrap());
        }
    }
}
