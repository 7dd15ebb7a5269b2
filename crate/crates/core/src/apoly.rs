//! Dense polynomials in A = F_q[T].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::fq::Fq;

/// T-degree of a polynomial; the zero polynomial has degree minus infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// An element of F_q[T], coefficients low to high with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct APoly {
    fq: Fq,
    coeffs: Vec<u32>,
}

const KARATSUBA_CUTOFF: usize = 40;

impl APoly {
    pub fn zero(fq: Fq) -> Self {
        APoly { fq, coeffs: Vec::new() }
    }

    pub fn one(fq: Fq) -> Self {
        Self::constant(fq, 1)
    }

    pub fn constant(fq: Fq, c: u32) -> Self {
        Self::from_coeffs(fq, vec![c])
    }

    /// The indeterminate T.
    pub fn t(fq: Fq) -> Self {
        Self::monomial(fq, 1, 1)
    }

    pub fn monomial(fq: Fq, c: u32, k: usize) -> Self {
        if c == 0 {
            return Self::zero(fq);
        }
        let mut v = vec![0; k + 1];
        v[k] = c;
        APoly { fq, coeffs: v }
    }

    pub fn from_coeffs(fq: Fq, mut coeffs: Vec<u32>) -> Self {
        debug_assert!(coeffs.iter().all(|&c| c < fq.q()));
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        APoly { fq, coeffs }
    }

    /// The monic polynomial of degree `deg` whose lower coefficients are the
    /// base-q digits of `code`; `code` ranges over `0..q^deg`.
    pub fn monic_from_code(fq: Fq, deg: usize, mut code: u64) -> Self {
        let q = fq.q() as u64;
        let mut v = Vec::with_capacity(deg + 1);
        for _ in 0..deg {
            v.push((code % q) as u32);
            code /= q;
        }
        v.push(1);
        APoly { fq, coeffs: v }
    }

    /// Any polynomial of degree `< len` from the base-q digits of `code`.
    pub fn from_code(fq: Fq, len: usize, mut code: u64) -> Self {
        let q = fq.q() as u64;
        let mut v = Vec::with_capacity(len);
        for _ in 0..len {
            v.push((code % q) as u32);
            code /= q;
        }
        Self::from_coeffs(fq, v)
    }

    pub fn fq(&self) -> Fq {
        self.fq
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    /// Finite degree, `None` for zero.
    pub fn deg(&self) -> Option<usize> {
        self.degree().finite()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    /// Leading coefficient (0 for the zero polynomial).
    pub fn lc(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn scale(&self, c: u32) -> Self {
        if c == 0 {
            return Self::zero(self.fq);
        }
        let f = self.fq;
        APoly {
            fq: f,
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// Multiplication by T^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![0; k];
        v.extend_from_slice(&self.coeffs);
        APoly { fq: self.fq, coeffs: v }
    }

    /// Monic associate and the unit that was divided out (0 for zero input).
    pub fn monic(&self) -> (Self, u32) {
        let lc = self.lc();
        if lc == 0 || lc == 1 {
            return (self.clone(), lc);
        }
        let inv = self.fq.inv(lc).expect("nonzero leading coefficient");
        (self.scale(inv), lc)
    }

    pub fn to_monic(&self) -> Self {
        self.monic().0
    }

    pub fn eval(&self, x: u32) -> u32 {
        let f = self.fq;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn derivative(&self) -> Self {
        let f = self.fq;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.from_int(i as u64)))
            .collect();
        Self::from_coeffs(f, v)
    }

    /// a^q = a(T^q), since c^q = c on F_q.
    pub fn frobenius(&self) -> Self {
        self.inflate(self.fq.q() as usize)
    }

    /// a(T^m).
    pub fn inflate(&self, m: usize) -> Self {
        if self.is_zero() || m == 1 {
            return self.clone();
        }
        let mut v = vec![0; (self.coeffs.len() - 1) * m + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[i * m] = c;
        }
        APoly { fq: self.fq, coeffs: v }
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

    pub fn divmod(&self, b: &APoly) -> Result<(APoly, APoly)> {
        self.fq.check_same(&b.fq)?;
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = self.fq;
        let db = b.coeffs.len() - 1;
        if self.coeffs.len() <= db {
            return Ok((Self::zero(f), self.clone()));
        }
        let inv = f.inv(b.lc())?;
        let mut r = self.coeffs.clone();
        let mut quot = vec![0u32; r.len() - db];
        for k in (db..r.len()).rev() {
            let c = r[k];
            if c == 0 {
                continue;
            }
            let m = f.mul(c, inv);
            quot[k - db] = m;
            for (i, &bi) in b.coeffs.iter().enumerate() {
                if bi != 0 {
                    r[k - db + i] = f.sub(r[k - db + i], f.mul(m, bi));
                }
            }
        }
        r.truncate(db);
        Ok((Self::from_coeffs(f, quot), Self::from_coeffs(f, r)))
    }

    pub fn rem(&self, b: &APoly) -> Result<APoly> {
        Ok(self.divmod(b)?.1)
    }

    /// Exact quotient, `None` if `b` does not divide `self` (or `b` is zero).
    pub fn div_exact(&self, b: &APoly) -> Option<APoly> {
        match self.divmod(b) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    pub fn divides(&self, a: &APoly) -> bool {
        if self.is_zero() {
            return a.is_zero();
        }
        a.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, b: &APoly) -> APoly {
        let mut a = self.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.to_monic()
    }

    /// Extended gcd: (g, s, t) with s·self + t·b = g, g monic.
    pub fn xgcd(&self, b: &APoly) -> (APoly, APoly, APoly) {
        let f = self.fq;
        let (mut r0, mut r1) = (self.clone(), b.clone());
        let (mut s0, mut s1) = (Self::one(f), Self::zero(f));
        let (mut t0, mut t1) = (Self::zero(f), Self::one(f));
        while !r1.is_zero() {
            let (qt, r) = r0.divmod(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&qt * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&qt * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        let lc = r0.lc();
        if lc > 1 {
            let inv = f.inv(lc).expect("nonzero");
            (r0.scale(inv), s0.scale(inv), t0.scale(inv))
        } else {
            (r0, s0, t0)
        }
    }

    /// Monic lcm.
    pub fn lcm(&self, b: &APoly) -> APoly {
        if self.is_zero() || b.is_zero() {
            return Self::zero(self.fq);
        }
        let g = self.gcd(b);
        (&self.div_exact(&g).expect("gcd divides") * b).to_monic()
    }

    /// Inverse modulo `m`, if it exists.
    pub fn inv_mod(&self, m: &APoly) -> Option<APoly> {
        let (g, s, _) = self.xgcd(m);
        g.is_one().then(|| s.rem(m).expect("nonzero modulus"))
    }

    pub fn mulmod(&self, b: &APoly, m: &APoly) -> Result<APoly> {
        (self * b).rem(m)
    }

    pub fn powmod(&self, mut n: u64, m: &APoly) -> Result<APoly> {
        let mut base = self.rem(m)?;
        let mut acc = Self::one(self.fq).rem(m)?;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mulmod(&base, m)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.mulmod(&base, m)?;
            }
        }
        Ok(acc)
    }

    /// Largest v with l^v | self; `None` for zero.
    pub fn valuation(&self, l: &APoly) -> Option<u32> {
        if self.is_zero() || l.is_constant() {
            return None;
        }
        let mut v = 0;
        let mut a = self.clone();
        while let Some(qt) = a.div_exact(l) {
            a = qt;
            v += 1;
        }
        Some(v)
    }

    fn add_impl(&self, b: &APoly) -> APoly {
        assert_eq!(self.fq, b.fq, "field mismatch");
        let f = self.fq;
        let (long, short) = if self.coeffs.len() >= b.coeffs.len() {
            (&self.coeffs, &b.coeffs)
        } else {
            (&b.coeffs, &self.coeffs)
        };
        let mut v = long.clone();
        for (x, &y) in v.iter_mut().zip(short.iter()) {
            *x = f.add(*x, y);
        }
        Self::from_coeffs(f, v)
    }

    fn neg_impl(&self) -> APoly {
        let f = self.fq;
        APoly {
            fq: f,
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
        }
    }

    fn mul_impl(&self, b: &APoly) -> APoly {
        assert_eq!(self.fq, b.fq, "field mismatch");
        if self.is_zero() || b.is_zero() {
            return Self::zero(self.fq);
        }
        let v = mul_slices(self.fq, &self.coeffs, &b.coeffs);
        Self::from_coeffs(self.fq, v)
    }
}

fn mul_school(f: Fq, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32; a.len() + b.len() - 1];
    if f.is_prime_field() {
        let p = f.p() as u64;
        let mut acc = vec![0u64; out.len()];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                let s = acc[i + j] + x as u64 * y as u64;
                acc[i + j] = if s >= (1 << 62) { s % p } else { s };
            }
        }
        for (o, a) in out.iter_mut().zip(acc) {
            *o = (a % p) as u32;
        }
    } else {
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
    }
    out
}

fn add_into(f: Fq, dst: &mut [u32], src: &[u32]) {
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = f.add(*d, s);
    }
}

fn sub_into(f: Fq, dst: &mut [u32], src: &[u32]) {
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = f.sub(*d, s);
    }
}

/// Product of two nonempty coefficient slices (Karatsuba above a cutoff).
fn mul_slices(f: Fq, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.len().min(b.len()) < KARATSUBA_CUTOFF {
        return mul_school(f, a, b);
    }
    let m = a.len().max(b.len()) / 2;
    let (a0, a1) = a.split_at(m.min(a.len()));
    let (b0, b1) = b.split_at(m.min(b.len()));
    if a1.is_empty() || b1.is_empty() {
        return mul_school(f, a, b);
    }
    let z0 = mul_slices(f, a0, b0);
    let z2 = mul_slices(f, a1, b1);
    let mut sa = a0.to_vec();
    if sa.len() < a1.len() {
        sa.resize(a1.len(), 0);
    }
    add_into(f, &mut sa, a1);
    let mut sb = b0.to_vec();
    if sb.len() < b1.len() {
        sb.resize(b1.len(), 0);
    }
    add_into(f, &mut sb, b1);
    let mut z1 = mul_slices(f, &sa, &sb);
    sub_into(f, &mut z1, &z0);
    sub_into(f, &mut z1, &z2);
    let mut out = vec![0u32; a.len() + b.len() - 1];
    add_into(f, &mut out, &z0);
    add_into(f, &mut out[m..], &z1);
    add_into(f, &mut out[2 * m..], &z2);
    out
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl $tr<&APoly> for &APoly {
            type Output = APoly;
            fn $method(self, rhs: &APoly) -> APoly {
                self.$imp(rhs)
            }
        }
        impl $tr<APoly> for APoly {
            type Output = APoly;
            fn $method(self, rhs: APoly) -> APoly {
                (&self).$imp(&rhs)
            }
        }
        impl $tr<&APoly> for APoly {
            type Output = APoly;
            fn $method(self, rhs: &APoly) -> APoly {
                (&self).$imp(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_impl);
forward_binop!(Mul, mul, mul_impl);

impl APoly {
    fn sub_impl(&self, b: &APoly) -> APoly {
        self.add_impl(&b.neg_impl())
    }
}
forward_binop!(Sub, sub, sub_impl);

impl Neg for &APoly {
    type Output = APoly;
    fn neg(self) -> APoly {
        self.neg_impl()
    }
}

impl Neg for APoly {
    type Output = APoly;
    fn neg(self) -> APoly {
        self.neg_impl()
    }
}

/// Degree first, then coefficients from the leading term down. For monic
/// polynomials of one degree this is the order of [`APoly::monic_from_code`].
impl Ord for APoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for APoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn render_coeff(fq: Fq, c: u32, standalone: bool) -> String {
    let s = fq.render(c);
    if !standalone && s.contains('+') {
        format!("({s})")
    } else {
        s
    }
}

/// Renders a polynomial in `var` with coefficients in F_q, e.g. `T^2 + 2*T + 1`.
pub(crate) fn render_poly(fq: Fq, coeffs: &[u32], var: &str) -> String {
    let mut terms = Vec::new();
    for (k, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        let term = if k == 0 {
            render_coeff(fq, c, coeffs.len() == 1)
        } else if c == 1 {
            mono
        } else {
            format!("{}*{mono}", render_coeff(fq, c, false))
        };
        terms.push(term);
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

impl serde::Serialize for APoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for APoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_poly(self.fq, &self.coeffs, "T"))
    }
}

impl fmt::Debug for APoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "APoly[F_{}]({})", self.fq.q(), self)
    }
}
