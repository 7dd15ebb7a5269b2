//! Univariate polynomials over the coefficient rings used here: A[X], k[X],
//! and nested rings such as A[X][Y].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::apoly::APoly;
use crate::error::{Error, Result};
use crate::fq::Fq;
use crate::ratfn::RationalFn;

/// A commutative F_q-algebra with enough structure for polynomial arithmetic.
pub trait Coefficient: Clone + PartialEq + Eq + fmt::Debug {
    fn zero_in(fq: Fq) -> Self;
    fn one_in(fq: Fq) -> Self;
    fn from_fq(fq: Fq, c: u32) -> Self;
    fn field(&self) -> Fq;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, c: u32) -> Self;
    fn render(&self) -> String;
}

/// Rings where exact division can be decided.
pub trait ExactDivRing: Coefficient {
    fn div_exact(&self, b: &Self) -> Option<Self>;
}

impl Coefficient for APoly {
    fn zero_in(fq: Fq) -> Self {
        APoly::zero(fq)
    }
    fn one_in(fq: Fq) -> Self {
        APoly::one(fq)
    }
    fn from_fq(fq: Fq, c: u32) -> Self {
        APoly::constant(fq, c)
    }
    fn field(&self) -> Fq {
        self.fq()
    }
    fn is_zero(&self) -> bool {
        APoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, c: u32) -> Self {
        APoly::scale(self, c)
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl ExactDivRing for APoly {
    fn div_exact(&self, b: &Self) -> Option<Self> {
        APoly::div_exact(self, b)
    }
}

impl Coefficient for RationalFn {
    fn zero_in(fq: Fq) -> Self {
        RationalFn::zero(fq)
    }
    fn one_in(fq: Fq) -> Self {
        RationalFn::one(fq)
    }
    fn from_fq(fq: Fq, c: u32) -> Self {
        RationalFn::constant(fq, c)
    }
    fn field(&self) -> Fq {
        self.fq()
    }
    fn is_zero(&self) -> bool {
        RationalFn::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, c: u32) -> Self {
        RationalFn::scale(self, c)
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl ExactDivRing for RationalFn {
    fn div_exact(&self, b: &Self) -> Option<Self> {
        self.div(b).ok()
    }
}

/// Dense polynomial in one variable over `C`, coefficients low to high.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UPoly<C> {
    fq: Fq,
    coeffs: Vec<C>,
}

/// A[X].
pub type XPoly = UPoly<APoly>;
/// k[X].
pub type KPoly = UPoly<RationalFn>;

impl<C: Coefficient> UPoly<C> {
    pub fn zero(fq: Fq) -> Self {
        UPoly { fq, coeffs: Vec::new() }
    }

    pub fn one(fq: Fq) -> Self {
        Self::constant(C::one_in(fq))
    }

    pub fn constant(c: C) -> Self {
        let fq = c.field();
        Self::from_coeffs(fq, vec![c])
    }

    /// The variable X.
    pub fn x(fq: Fq) -> Self {
        Self::monomial(C::one_in(fq), 1)
    }

    pub fn monomial(c: C, k: usize) -> Self {
        let fq = c.field();
        if c.is_zero() {
            return Self::zero(fq);
        }
        let mut v = vec![C::zero_in(fq); k + 1];
        v[k] = c;
        UPoly { fq, coeffs: v }
    }

    pub fn from_coeffs(fq: Fq, mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { fq, coeffs }
    }

    pub fn fq(&self) -> Fq {
        self.fq
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(|| C::zero_in(self.fq))
    }

    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lc(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn map<D: Coefficient>(&self, fq: Fq, f: impl Fn(&C) -> D) -> UPoly<D> {
        UPoly::from_coeffs(fq, self.coeffs.iter().map(f).collect())
    }

    pub fn try_map<D: Coefficient>(&self, fq: Fq, f: impl Fn(&C) -> Result<D>) -> Result<UPoly<D>> {
        Ok(UPoly::from_coeffs(fq, self.coeffs.iter().map(f).collect::<Result<_>>()?))
    }

    pub fn scale_fq(&self, c: u32) -> Self {
        Self::from_coeffs(self.fq, self.coeffs.iter().map(|a| a.scale(c)).collect())
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_coeffs(self.fq, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Multiplication by X^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![C::zero_in(self.fq); k];
        v.extend(self.coeffs.iter().cloned());
        UPoly { fq: self.fq, coeffs: v }
    }

    pub fn eval(&self, x: &C) -> C {
        let mut acc = C::zero_in(self.fq);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn pow(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.fq);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        self.divided_derivative(1)
    }

    /// Hasse derivative: the coefficient of H^h in f(X + H).
    pub fn divided_derivative(&self, h: usize) -> Self {
        let p = self.fq.p() as u64;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(h)
            .map(|(n, c)| {
                let b = binomial_mod_p(n as u64, h as u64, p);
                c.scale(self.fq.from_int(b))
            })
            .collect();
        Self::from_coeffs(self.fq, v)
    }

    fn add_impl(&self, b: &Self) -> Self {
        let n = self.coeffs.len().max(b.coeffs.len());
        let v = (0..n)
            .map(|i| match (self.coeffs.get(i), b.coeffs.get(i)) {
                (Some(x), Some(y)) => x.add(y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => y.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::from_coeffs(self.fq, v)
    }

    fn neg_impl(&self) -> Self {
        UPoly { fq: self.fq, coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    fn sub_impl(&self, b: &Self) -> Self {
        self.add_impl(&b.neg_impl())
    }

    fn mul_impl(&self, b: &Self) -> Self {
        if self.is_zero() || b.is_zero() {
            return Self::zero(self.fq);
        }
        let mut v = vec![C::zero_in(self.fq); self.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    v[i + j] = v[i + j].add(&x.mul(y));
                }
            }
        }
        Self::from_coeffs(self.fq, v)
    }

    /// Renders with the given variable name.
    pub fn render_in(&self, var: &str) -> String {
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let s = c.render();
            let one = *c == C::one_in(self.fq);
            terms.push(if k == 0 {
                s
            } else if one {
                mono
            } else if s.contains(' ') || s.contains('+') {
                format!("({s})*{mono}")
            } else {
                format!("{s}*{mono}")
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

impl<C: ExactDivRing> UPoly<C> {
    /// Exact quotient in C[X], `None` unless every step divides exactly.
    pub fn div_exact(&self, b: &Self) -> Option<Self> {
        let db = b.deg()?;
        if self.is_zero() {
            return Some(self.clone());
        }
        let da = self.deg()?;
        if da < db {
            return None;
        }
        let lb = b.lc()?;
        let mut r = self.coeffs.clone();
        let mut quot = vec![C::zero_in(self.fq); da - db + 1];
        for k in (db..=da).rev() {
            if r[k].is_zero() {
                continue;
            }
            let m = r[k].div_exact(lb)?;
            for (i, bi) in b.coeffs.iter().enumerate() {
                if !bi.is_zero() {
                    r[k - db + i] = r[k - db + i].sub(&m.mul(bi));
                }
            }
            quot[k - db] = m;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(self.fq, quot))
    }

    /// Divides every coefficient by `c`, `None` if any division is inexact.
    pub fn div_exact_scalar(&self, c: &C) -> Option<Self> {
        let v = self
            .coeffs
            .iter()
            .map(|a| a.div_exact(c))
            .collect::<Option<Vec<_>>>()?;
        Some(Self::from_coeffs(self.fq, v))
    }
}

impl<C: ExactDivRing> ExactDivRing for UPoly<C> {
    fn div_exact(&self, b: &Self) -> Option<Self> {
        UPoly::div_exact(self, b)
    }
}

impl<C: Coefficient> Coefficient for UPoly<C> {
    fn zero_in(fq: Fq) -> Self {
        UPoly::zero(fq)
    }
    fn one_in(fq: Fq) -> Self {
        UPoly::one(fq)
    }
    fn from_fq(fq: Fq, c: u32) -> Self {
        UPoly::constant(C::from_fq(fq, c))
    }
    fn field(&self) -> Fq {
        self.fq
    }
    fn is_zero(&self) -> bool {
        UPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self.add_impl(o)
    }
    fn sub(&self, o: &Self) -> Self {
        self.sub_impl(o)
    }
    fn mul(&self, o: &Self) -> Self {
        self.mul_impl(o)
    }
    fn neg(&self) -> Self {
        self.neg_impl()
    }
    fn scale(&self, c: u32) -> Self {
        self.scale_fq(c)
    }
    fn render(&self) -> String {
        self.render_in("Y")
    }
}

impl XPoly {
    /// Monic gcd of the coefficients in A.
    pub fn content(&self) -> APoly {
        self.coeffs
            .iter()
            .fold(APoly::zero(self.fq), |g, c| g.gcd(c))
    }

    /// Largest T-degree among the coefficients (`None` for zero).
    pub fn max_coeff_deg(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(|c| c.deg()).max()
    }

    pub fn is_primitive(&self) -> bool {
        !self.is_zero() && self.content().is_one()
    }

    /// Primitive part with the leading coefficient's leading coefficient 1.
    pub fn primitive_normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let g = self.content();
        let mut p = self.div_exact_scalar(&g).expect("content divides");
        let u = p.lc().unwrap().lc();
        if u != 1 {
            p = p.scale_fq(self.fq.inv(u).unwrap());
        }
        p
    }

    pub fn to_k(&self) -> KPoly {
        self.map(self.fq, |a| RationalFn::from_poly(a.clone()))
    }

    /// Reduction of each coefficient modulo l.
    pub fn reduce_coeffs(&self, l: &APoly) -> Result<Self> {
        self.try_map(self.fq, |a| a.rem(l))
    }

    /// f(X^m).
    pub fn inflate(&self, m: usize) -> Self {
        if self.is_zero() || m == 1 {
            return self.clone();
        }
        let mut v = vec![APoly::zero(self.fq); (self.coeffs.len() - 1) * m + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * m] = c.clone();
        }
        Self::from_coeffs(self.fq, v)
    }
}

impl KPoly {
    /// Clears denominators: returns (F, c) with F in A[X] and self = F / c, c monic.
    pub fn clear_denominators(&self) -> (XPoly, APoly) {
        let c = self
            .coeffs
            .iter()
            .fold(APoly::one(self.fq), |acc, x| acc.lcm(x.den()));
        let v = self
            .coeffs
            .iter()
            .map(|x| x.num() * &c.div_exact(x.den()).expect("lcm multiple"))
            .collect();
        (XPoly::from_coeffs(self.fq, v), c)
    }

    pub fn divmod(&self, b: &KPoly) -> Result<(KPoly, KPoly)> {
        let db = b.deg().ok_or(Error::DivisionByZero)?;
        let inv = b.lc().unwrap().inv()?;
        let fq = self.fq;
        if self.deg().is_none_or(|d| d < db) {
            return Ok((Self::zero(fq), self.clone()));
        }
        let mut r = self.coeffs.clone();
        let mut quot = vec![RationalFn::zero(fq); r.len() - db];
        for k in (db..r.len()).rev() {
            if r[k].is_zero() {
                continue;
            }
            let m = &r[k] * &inv;
            for (i, bi) in b.coeffs.iter().enumerate() {
                if !bi.is_zero() {
                    r[k - db + i] = &r[k - db + i] - &(&m * bi);
                }
            }
            quot[k - db] = m;
        }
        r.truncate(db);
        Ok((Self::from_coeffs(fq, quot), Self::from_coeffs(fq, r)))
    }

    pub fn rem(&self, b: &KPoly) -> Result<KPoly> {
        Ok(self.divmod(b)?.1)
    }

    pub fn monic(&self) -> KPoly {
        match self.lc() {
            None => self.clone(),
            Some(c) => self.scale(&c.inv().unwrap()),
        }
    }

    /// Monic gcd in k[X].
    pub fn gcd(&self, b: &KPoly) -> KPoly {
        let (mut a, mut b) = (self.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b).unwrap();
            a = b;
            b = r;
        }
        a.monic()
    }
}

/// C(n, k) mod p via Lucas' theorem.
pub fn binomial_mod_p(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while k > 0 || n > 0 {
        let (ni, ki) = (n % p, k % p);
        if ki > ni {
            return 0;
        }
        acc = acc * small_binomial(ni, ki, p) % p;
        n /= p;
        k /= p;
        if acc == 0 {
            return 0;
        }
    }
    acc
}

/// C(n, k) mod p for n < p.
fn small_binomial(n: u64, k: u64, p: u64) -> u64 {
    let k = k.min(n - k);
    let (mut num, mut den) = (1u64, 1u64);
    for i in 0..k {
        num = num * ((n - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    num * mod_pow(den, p - 2, p) % p
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl<C: Coefficient> $tr<&UPoly<C>> for &UPoly<C> {
            type Output = UPoly<C>;
            fn $method(self, rhs: &UPoly<C>) -> UPoly<C> {
                self.$imp(rhs)
            }
        }
        impl<C: Coefficient> $tr<UPoly<C>> for UPoly<C> {
            type Output = UPoly<C>;
            fn $method(self, rhs: UPoly<C>) -> UPoly<C> {
                (&self).$imp(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_impl);
forward_binop!(Sub, sub, sub_impl);
forward_binop!(Mul, mul, mul_impl);

impl<C: Coefficient> Neg for &UPoly<C> {
    type Output = UPoly<C>;
    fn neg(self) -> UPoly<C> {
        self.neg_impl()
    }
}

impl<C: Coefficient + Ord> Ord for UPoly<C> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl<C: Coefficient + Ord> PartialOrd for UPoly<C> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<C: Coefficient> fmt::Display for UPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render_in("X"))
    }
}

impl<C: Coefficient> fmt::Debug for UPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly({})", self.render_in("X"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Fq {
        Fq::prime(2).unwrap()
    }

    fn x_plus(a: APoly) -> XPoly {
        let fq = a.fq();
        &XPoly::x(fq) + &XPoly::constant(a)
    }

    #[test]
    fn lucas() {
        assert_eq!(binomial_mod_p(3, 2, 2), 1);
        assert_eq!(binomial_mod_p(2, 1, 2), 0);
        assert_eq!(binomial_mod_p(10, 3, 7), 120 % 7);
        assert_eq!(binomial_mod_p(5, 7, 3), 0);
    }

    #[test]
    fn divided_derivatives_char_2() {
        let fq = f2();
        let x2 = XPoly::monomial(APoly::one(fq), 2);
        assert!(x2.divided_derivative(1).is_zero());
        let x3 = XPoly::monomial(APoly::one(fq), 3);
        assert_eq!(x3.divided_derivative(2), XPoly::x(fq));
        assert_eq!(x3.divided_derivative(3), XPoly::one(fq));
    }

    #[test]
    fn exact_division_over_a() {
        let fq = f2();
        let a = x_plus(APoly::t(fq));
        let b = x_plus(APoly::one(fq));
        let prod = &(&a * &a) * &b;
        assert_eq!(prod.div_exact(&a).unwrap(), &a * &b);
        assert!(b.div_exact(&a).is_none());
    }

    #[test]
    fn primitive_normalization() {
        let fq = Fq::prime(3).unwrap();
        let t = APoly::t(fq);
        let p = XPoly::from_coeffs(fq, vec![t.scale(2), (&t * &t).scale(2)]);
        let n = p.primitive_normalized();
        assert_eq!(n, XPoly::from_coeffs(fq, vec![APoly::one(fq), t]));
        assert_eq!(n.to_string(), "T*X + 1");
    }

    #[test]
    fn clearing_denominators() {
        let fq = f2();
        let t = RationalFn::t(fq);
        let p = KPoly::from_coeffs(fq, vec![t.inv().unwrap(), RationalFn::one(fq)]);
        let (f, c) = p.clear_denominators();
        assert_eq!(c, APoly::t(fq));
        assert_eq!(f, XPoly::from_coeffs(fq, vec![APoly::one(fq), APoly::t(fq)]));
    }

    #[test]
    fn kpoly_gcd() {
        let fq = f2();
        let a = x_plus(APoly::t(fq)).to_k();
        let b = x_plus(APoly::one(fq)).to_k();
        assert_eq!((&a * &b).gcd(&(&a * &a)), a);
    }
}
