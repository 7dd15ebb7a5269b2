//! The rational function field k = F_q(T).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::apoly::APoly;
use crate::error::{Error, Result};
use crate::fq::Fq;

/// num/den with den monic and gcd(num, den) = 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFn {
    num: APoly,
    den: APoly,
}

impl RationalFn {
    pub fn new(num: APoly, den: APoly) -> Result<Self> {
        num.fq().check_same(&den.fq())?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: APoly, den: APoly) -> Self {
        let fq = num.fq();
        if num.is_zero() {
            return RationalFn { num, den: APoly::one(fq) };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let lc = den.lc();
        if lc != 1 {
            let inv = fq.inv(lc).unwrap();
            num = num.scale(inv);
            den = den.scale(inv);
        }
        RationalFn { num, den }
    }

    pub fn from_poly(a: APoly) -> Self {
        let fq = a.fq();
        RationalFn { num: a, den: APoly::one(fq) }
    }

    pub fn zero(fq: Fq) -> Self {
        Self::from_poly(APoly::zero(fq))
    }

    pub fn one(fq: Fq) -> Self {
        Self::from_poly(APoly::one(fq))
    }

    pub fn constant(fq: Fq, c: u32) -> Self {
        Self::from_poly(APoly::constant(fq, c))
    }

    pub fn t(fq: Fq) -> Self {
        Self::from_poly(APoly::t(fq))
    }

    pub fn fq(&self) -> Fq {
        self.num.fq()
    }

    pub fn num(&self) -> &APoly {
        &self.num
    }

    pub fn den(&self) -> &APoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&APoly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn scale(&self, c: u32) -> Self {
        if c == 0 {
            return Self::zero(self.fq());
        }
        RationalFn { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, b: &RationalFn) -> Result<Self> {
        Ok(self * &b.inv()?)
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let e = n.unsigned_abs();
        Ok(RationalFn { num: base.num.pow(e), den: base.den.pow(e) })
    }

    /// x^q; already normalized because a ↦ a^q is injective on A.
    pub fn frobenius(&self) -> Self {
        RationalFn { num: self.num.frobenius(), den: self.den.frobenius() }
    }

    /// deg num − deg den (= −v_∞); `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        Some(self.num.deg()? as i64 - self.den.deg()? as i64)
    }

    /// v_l for a monic irreducible l; `None` for zero.
    pub fn valuation(&self, l: &APoly) -> Option<i64> {
        let vn = self.num.valuation(l)? as i64;
        let vd = self.den.valuation(l)? as i64;
        Some(vn - vd)
    }

    /// True iff l does not divide the denominator.
    pub fn is_integral_at(&self, l: &APoly) -> bool {
        !l.divides(&self.den)
    }

    /// Image in A/(l); fails when l divides the denominator.
    pub fn reduce_mod(&self, l: &APoly) -> Result<APoly> {
        let n = self.num.rem(l)?;
        if self.den.is_one() {
            return Ok(n);
        }
        let di = self.den.inv_mod(l).ok_or_else(|| Error::BadReduction {
            place: l.to_string(),
        })?;
        n.mulmod(&di, l)
    }

    fn add_impl(&self, b: &RationalFn) -> RationalFn {
        if self.den == b.den {
            if self.den.is_one() {
                return Self::from_poly(&self.num + &b.num);
            }
            return Self::normalize(&self.num + &b.num, self.den.clone());
        }
        let g = self.den.gcd(&b.den);
        let da = self.den.div_exact(&g).unwrap();
        let db = b.den.div_exact(&g).unwrap();
        let num = &(&self.num * &db) + &(&b.num * &da);
        Self::normalize(num, &da * &b.den)
    }

    fn mul_impl(&self, b: &RationalFn) -> RationalFn {
        if self.den.is_one() && b.den.is_one() {
            return Self::from_poly(&self.num * &b.num);
        }
        // cross-cancel keeps operands small
        let g1 = self.num.gcd(&b.den);
        let g2 = b.num.gcd(&self.den);
        let (n1, d2) = if g1.is_one() || g1.is_zero() {
            (self.num.clone(), b.den.clone())
        } else {
            (self.num.div_exact(&g1).unwrap(), b.den.div_exact(&g1).unwrap())
        };
        let (n2, d1) = if g2.is_one() || g2.is_zero() {
            (b.num.clone(), self.den.clone())
        } else {
            (b.num.div_exact(&g2).unwrap(), self.den.div_exact(&g2).unwrap())
        };
        Self::normalize(&n1 * &n2, &d1 * &d2)
    }

    fn neg_impl(&self) -> RationalFn {
        RationalFn { num: -&self.num, den: self.den.clone() }
    }

    fn sub_impl(&self, b: &RationalFn) -> RationalFn {
        self.add_impl(&b.neg_impl())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl $tr<&RationalFn> for &RationalFn {
            type Output = RationalFn;
            fn $method(self, rhs: &RationalFn) -> RationalFn {
                self.$imp(rhs)
            }
        }
        impl $tr<RationalFn> for RationalFn {
            type Output = RationalFn;
            fn $method(self, rhs: RationalFn) -> RationalFn {
                (&self).$imp(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_impl);
forward_binop!(Sub, sub, sub_impl);
forward_binop!(Mul, mul, mul_impl);

impl Neg for &RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        self.neg_impl()
    }
}

impl From<APoly> for RationalFn {
    fn from(a: APoly) -> Self {
        Self::from_poly(a)
    }
}

fn wrap(s: String) -> String {
    if s.contains(' ') || s.contains('+') {
        format!("({s})")
    } else {
        s
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", wrap(self.num.to_string()), wrap(self.den.to_string()))
        }
    }
}

impl fmt::Debug for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFn({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Fq {
        Fq::prime(2).unwrap()
    }

    #[test]
    fn normalization() {
        let fq = Fq::prime(3).unwrap();
        let num = APoly::from_coeffs(fq, vec![0, 2]);
        let den = APoly::from_coeffs(fq, vec![0, 0, 2]);
        let r = RationalFn::new(num, den).unwrap();
        assert_eq!(r.num(), &APoly::one(fq));
        assert_eq!(r.den(), &APoly::t(fq));
        assert!(RationalFn::new(APoly::one(fq), APoly::zero(fq)).is_err());
    }

    #[test]
    fn field_operations() {
        let fq = f2();
        let t = RationalFn::t(fq);
        let x = t.inv().unwrap();
        assert!((&x * &t).is_one());
        let s = &x + &RationalFn::one(fq);
        assert_eq!(s.to_string(), "(T + 1)/T");
        assert_eq!(s.frobenius(), &s * &s);
        assert_eq!(x.valuation(&APoly::t(fq)), Some(-1));
    }

    #[test]
    fn reduction() {
        let fq = f2();
        let l = APoly::from_coeffs(fq, vec![1, 1]);
        let x = RationalFn::t(fq).inv().unwrap();
        assert_eq!(x.reduce_mod(&l).unwrap(), APoly::one(fq));
        assert!(matches!(
            x.reduce_mod(&APoly::t(fq)),
            Err(Error::BadReduction { .. })
        ));
    }
}
