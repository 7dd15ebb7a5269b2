//! The finite field F_q, q = p^e.
//!
//! Elements are encoded as integers in `[0, q)`: the base-p digits of the code
//! are the coefficients (low to high) of the representative in F_p[u]/(modulus).
//! For prime q this is the usual residue encoding.

use crate::error::{Error, Result};

const MAX_Q: u64 = 1 << 31;

/// Field descriptor. `Copy` so polynomials can carry their field by value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fq {
    p: u32,
    e: u32,
    q: u32,
    /// Base-p code of the non-leading coefficients of the monic modulus
    /// (unused when `e == 1`).
    modulus: u32,
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Fq {
    /// The prime field F_p.
    pub fn prime(p: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p as u64 >= MAX_Q {
            return Err(Error::InvalidField(format!("p = {p} is too large")));
        }
        Ok(Fq {
            p,
            e: 1,
            q: p,
            modulus: 0,
        })
    }

    /// F_{p^e} presented as F_p[u]/(modulus). `modulus` lists the coefficients of
    /// a monic irreducible of degree `e` over F_p, low to high (length e + 1).
    pub fn new(p: u32, e: u32, modulus: &[u32]) -> Result<Self> {
        let base = Fq::prime(p)?;
        if e == 0 {
            return Err(Error::InvalidField("extension degree must be positive".into()));
        }
        if e == 1 {
            return Ok(base);
        }
        let q = (p as u64)
            .checked_pow(e)
            .filter(|&q| q < MAX_Q)
            .ok_or_else(|| Error::InvalidField(format!("{p}^{e} is too large")))?;
        if modulus.len() != e as usize + 1 || modulus[e as usize] != 1 {
            return Err(Error::InvalidField(format!(
                "modulus must be monic of degree {e}"
            )));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField("modulus coefficient out of range".into()));
        }
        let poly = crate::apoly::APoly::from_coeffs(base, modulus.to_vec());
        if !crate::irreducible::is_irreducible(&poly)? {
            return Err(Error::InvalidField(format!(
                "modulus {poly} is reducible over F_{p}"
            )));
        }
        let mut code = 0u32;
        for &c in modulus[..e as usize].iter().rev() {
            code = code * p + c;
        }
        Ok(Fq {
            p,
            e,
            q: q as u32,
            modulus: code,
        })
    }

    /// The field with `q` elements. For a proper prime power the modulus is the
    /// first monic irreducible of degree e in enumeration order.
    pub fn with_order(q: u32) -> Result<Self> {
        let (p, e) = prime_power(q as u64)
            .ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
        if e == 1 {
            return Fq::prime(p as u32);
        }
        let base = Fq::prime(p as u32)?;
        let first = crate::irreducible::enumerate_irreducibles(base, e as usize)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::Contract("no irreducible of the requested degree".into()))?;
        Fq::new(p as u32, e, first.coeffs())
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn e(&self) -> u32 {
        self.e
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn is_prime_field(&self) -> bool {
        self.e == 1
    }

    /// Coefficients of the defining modulus, low to high (`[0, 1]`, i.e. u, for prime fields).
    pub fn modulus_coeffs(&self) -> Vec<u32> {
        if self.e == 1 {
            return vec![0, 1];
        }
        let mut v = self.digits(self.modulus);
        v.truncate(self.e as usize);
        v.resize(self.e as usize, 0);
        v.push(1);
        v
    }

    fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.e as usize);
        for _ in 0..self.e {
            v.push(a % self.p);
            a /= self.p;
        }
        v
    }

    fn from_digits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    /// Image of an integer under Z -> F_p -> F_q.
    #[inline]
    pub fn from_int(&self, n: u64) -> u32 {
        (n % self.p as u64) as u32
    }

    /// The class of `u` (a generator of F_q over F_p); only meaningful for e > 1.
    pub fn generator(&self) -> u32 {
        if self.e == 1 {
            0
        } else {
            self.p
        }
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            let s = a as u64 + b as u64;
            let p = self.p as u64;
            (if s >= p { s - p } else { s }) as u32
        } else {
            let (mut a, mut b) = (a, b);
            let mut out = 0u32;
            let mut place = 1u32;
            for _ in 0..self.e {
                let d = (a % self.p + b % self.p) % self.p;
                out += d * place;
                a /= self.p;
                b /= self.p;
                place = place.wrapping_mul(self.p);
            }
            out
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.e == 1 {
            if a == 0 {
                0
            } else {
                self.p - a
            }
        } else {
            let d: Vec<u32> = self
                .digits(a)
                .into_iter()
                .map(|c| if c == 0 { 0 } else { self.p - c })
                .collect();
            self.from_digits(&d)
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            ((a as u64 * b as u64) % self.p as u64) as u32
        } else {
            self.mul_ext(a, b)
        }
    }

    fn mul_ext(&self, a: u32, b: u32) -> u32 {
        let e = self.e as usize;
        let p = self.p as u64;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        let m = self.modulus_coeffs();
        for k in (e..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, &mi) in m[..e].iter().enumerate() {
                // subtract c * m_i at position k - e + i
                let t = (c * mi as u64) % p;
                prod[k - e + i] = (prod[k - e + i] + p - t) % p;
            }
        }
        let d: Vec<u32> = prod[..e].iter().map(|&c| c as u32).collect();
        self.from_digits(&d)
    }

    pub fn pow(&self, mut a: u32, mut n: u64) -> u32 {
        let mut acc = 1u32;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            n >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.q as u64 - 2))
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Iterator over all elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }

    /// Renders an element: decimal for prime fields, a polynomial in `u` otherwise.
    pub fn render(&self, a: u32) -> String {
        if self.e == 1 {
            return a.to_string();
        }
        let d = self.digits(a);
        let mut terms = Vec::new();
        for (i, &c) in d.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "u".to_string(),
                _ => format!("u^{i}"),
            };
            terms.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }

    pub(crate) fn check_same(&self, other: &Fq) -> Result<()> {
        if self != other {
            Err(Error::FieldMismatch {
                left: self.q,
                right: other.q,
            })
        } else {
            Ok(())
        }
    }
}

fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let mut e = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = Fq::prime(7).unwrap();
        assert_eq!(f.add(5, 4), 2);
        assert_eq!(f.mul(3, 5), 1);
        assert_eq!(f.inv(3).unwrap(), 5);
        assert_eq!(f.neg(0), 0);
        assert!(Fq::prime(8).is_err());
    }

    #[test]
    fn f4_is_a_field() {
        let f = Fq::new(2, 2, &[1, 1, 1]).unwrap();
        assert_eq!(f.q(), 4);
        // u * u = u + 1
        assert_eq!(f.mul(2, 2), 3);
        for a in 1..4 {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        assert_eq!(f.render(3), "u+1");
        assert!(Fq::new(2, 2, &[1, 0, 1]).is_err());
    }

    #[test]
    fn with_order_picks_first_irreducible() {
        let f9 = Fq::with_order(9).unwrap();
        assert_eq!((f9.p(), f9.e()), (3, 2));
        for a in 1..9 {
            assert_eq!(f9.mul(a, f9.inv(a).unwrap()), 1);
        }
        assert!(Fq::with_order(6).is_err());
    }
}
