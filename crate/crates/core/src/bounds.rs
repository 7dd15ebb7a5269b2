//! Explicit constants and parameter choices of the height lower bounds.
//!
//! Every real quantity is carried as a rational bracket [lo, hi]. Logarithms
//! are to base q and are exact whenever the argument is a power of q; other
//! values are enclosed by dyadic refinement with outward rounding, so every
//! reported inequality is rigorous.

use std::fmt;

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::fmt_rational;

/// Default number of binary digits computed for a non-exact logarithm.
pub const DEFAULT_LOG_BITS: u32 = 48;
/// Precision ceiling when a floor must be pinned down exactly.
pub const MAX_LOG_BITS: u32 = 1024;

fn int(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

/// A closed interval of rationals containing a real number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bracket {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Bracket {
    pub fn exact(v: BigRational) -> Self {
        Bracket { lo: v.clone(), hi: v }
    }

    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        Bracket { lo, hi }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn exact_value(&self) -> Option<&BigRational> {
        self.is_exact().then_some(&self.lo)
    }

    pub fn contains(&self, v: &BigRational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn add(&self, o: &Bracket) -> Bracket {
        Bracket::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn sub(&self, o: &Bracket) -> Bracket {
        Bracket::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }

    pub fn add_exact(&self, v: &BigRational) -> Bracket {
        Bracket::new(&self.lo + v, &self.hi + v)
    }

    pub fn scale(&self, c: &BigRational) -> Bracket {
        if c.is_negative() {
            Bracket::new(&self.hi * c, &self.lo * c)
        } else {
            Bracket::new(&self.lo * c, &self.hi * c)
        }
    }

    /// Product of two brackets of nonnegative numbers.
    pub fn mul_pos(&self, o: &Bracket) -> Bracket {
        Bracket::new(&self.lo * &o.lo, &self.hi * &o.hi)
    }

    /// Quotient of nonnegative by positive brackets.
    pub fn div_pos(&self, o: &Bracket) -> Bracket {
        Bracket::new(&self.lo / &o.hi, &self.hi / &o.lo)
    }

    pub fn pow_pos(&self, k: u32) -> Bracket {
        Bracket::new(num::pow(self.lo.clone(), k as usize), num::pow(self.hi.clone(), k as usize))
    }

    pub fn min(&self, o: &Bracket) -> Bracket {
        Bracket::new(self.lo.clone().min(o.lo.clone()), self.hi.clone().min(o.hi.clone()))
    }

    pub fn max_exact(&self, v: &BigRational) -> Bracket {
        Bracket::new(self.lo.clone().max(v.clone()), self.hi.clone().max(v.clone()))
    }

    /// The common floor of both ends, if they agree.
    pub fn floor(&self) -> Option<BigInt> {
        let a = self.lo.floor().to_integer();
        (a == self.hi.floor().to_integer()).then_some(a)
    }

    pub fn midpoint_f64(&self) -> f64 {
        let m = (&self.lo + &self.hi) / int(2);
        m.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", fmt_rational(&self.lo))
        } else {
            write!(f, "[{}, {}]", fmt_rational(&self.lo), fmt_rational(&self.hi))
        }
    }
}

impl Serialize for Bracket {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Bracket", 4)?;
        st.serialize_field("lo", &fmt_rational(&self.lo))?;
        st.serialize_field("hi", &fmt_rational(&self.hi))?;
        st.serialize_field("exact", &self.is_exact())?;
        st.serialize_field("approx", &self.midpoint_f64())?;
        st.end()
    }
}

/// The quantity q^λ, with λ known exactly or within a bracket.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LogQValue {
    pub q: u32,
    pub log_q: Bracket,
}

impl LogQValue {
    pub fn exact(q: u32, exponent: BigRational) -> Self {
        LogQValue { q, log_q: Bracket::exact(exponent) }
    }

    pub fn is_exact(&self) -> bool {
        self.log_q.is_exact()
    }

    /// Multiplication adds exponents.
    pub fn mul(&self, o: &LogQValue) -> LogQValue {
        assert_eq!(self.q, o.q, "mixed bases");
        LogQValue { q: self.q, log_q: self.log_q.add(&o.log_q) }
    }

    pub fn min(&self, o: &LogQValue) -> LogQValue {
        assert_eq!(self.q, o.q, "mixed bases");
        LogQValue { q: self.q, log_q: self.log_q.min(&o.log_q) }
    }

    /// True when self ≤ o is certain.
    pub fn certainly_le(&self, o: &LogQValue) -> bool {
        self.log_q.hi <= o.log_q.lo
    }
}

impl fmt::Display for LogQValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^({})", self.q, self.log_q)
    }
}

/// Some k with x = q^k.
fn exact_log(x: &BigRational, q: u32) -> Option<i64> {
    let q = BigInt::from(q);
    let pow_of = |n: &BigInt| -> Option<i64> {
        let mut n = n.clone();
        let mut k = 0;
        while n > BigInt::one() {
            let (d, r) = n.div_rem(&q);
            if !r.is_zero() {
                return None;
            }
            n = d;
            k += 1;
        }
        Some(k)
    };
    match (pow_of(x.numer()), pow_of(x.denom())) {
        (Some(a), Some(0)) => Some(a),
        (Some(0), Some(b)) => Some(-b),
        _ => None,
    }
}

/// Bracket for log_q(x), x > 0, with `bits` binary digits after the point.
pub fn log_q(x: &BigRational, q: u32, bits: u32) -> Result<Bracket> {
    if !x.is_positive() {
        return Err(Error::invalid(format!("log of nonpositive {}", fmt_rational(x))));
    }
    if let Some(k) = exact_log(x, q) {
        return Ok(Bracket::exact(int(k)));
    }
    let qr = int(q);
    // a = floor(log_q x), y = x / q^a ∈ [1, q)
    let mut a: i64 = 0;
    let mut y = x.clone();
    while y >= qr {
        y /= &qr;
        a += 1;
    }
    while y < BigRational::one() {
        y *= &qr;
        a -= 1;
    }
    let prec = bits as usize + 64;
    let s = BigInt::one() << prec;
    let qs = &s * BigInt::from(q);
    let scaled = &y * int(s.clone());
    let mut y_lo = scaled.floor().to_integer();
    let mut y_hi = scaled.ceil().to_integer();
    let (mut b_lo, mut b_hi) = (BigInt::zero(), BigInt::zero());
    let qb = BigInt::from(q);
    for _ in 0..bits {
        y_lo = (&y_lo * &y_lo) >> prec;
        let sq = &y_hi * &y_hi;
        y_hi = (&sq >> prec) + if (sq.clone() >> prec) << prec == sq { BigInt::zero() } else { BigInt::one() };
        b_lo <<= 1;
        b_hi <<= 1;
        if y_lo >= qs {
            y_lo /= &qb;
            b_lo += 1;
        }
        if y_hi >= qs {
            y_hi = (&y_hi + &qb - 1) / &qb;
            b_hi += 1;
        }
    }
    let den = BigInt::one() << bits as usize;
    let base = int(a);
    Ok(Bracket::new(
        &base + BigRational::new(b_lo, den.clone()),
        &base + BigRational::new(b_hi + 2, den),
    ))
}

/// log_q over a bracket of positive numbers.
pub fn log_q_bracket(x: &Bracket, q: u32, bits: u32) -> Result<Bracket> {
    Ok(Bracket::new(log_q(&x.lo, q, bits)?.lo, log_q(&x.hi, q, bits)?.hi))
}

/// log₊(v) = max(log_q v, 1).
fn log_plus(x: &Bracket, q: u32, bits: u32) -> Result<Bracket> {
    Ok(log_q_bracket(x, q, bits)?.max_exact(&BigRational::one()))
}

/// Bracket for q^e with e rational.
pub fn q_pow(q: u32, e: &BigRational, bits: u32) -> Bracket {
    let n = e.numer().clone();
    let b = e.denom().to_u32().expect("small denominator");
    let qa = if n.is_negative() {
        BigRational::new(BigInt::one(), num::pow(BigInt::from(q), (-n).to_usize().unwrap()))
    } else {
        int(num::pow(BigInt::from(q), n.to_usize().expect("small exponent")))
    };
    if b == 1 {
        return Bracket::exact(qa);
    }
    let k = bits as usize;
    let scale = BigInt::one() << (k * b as usize);
    let v = &qa * int(scale);
    let lo = v.floor().to_integer().nth_root(b);
    let hi = v.ceil().to_integer().nth_root(b) + 1;
    let den = BigInt::one() << k;
    Bracket::new(BigRational::new(lo, den.clone()), BigRational::new(hi, den))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Theorem {
    /// Separable points.
    #[serde(rename = "1")]
    One,
    /// Points with inseparable degree > 1.
    #[serde(rename = "2")]
    Two,
}

impl Theorem {
    pub fn from_number(n: u32) -> Result<Self> {
        match n {
            1 => Ok(Theorem::One),
            2 => Ok(Theorem::Two),
            _ => Err(Error::invalid(format!("theorem must be 1 or 2, got {n}"))),
        }
    }
}

/// Every explicit constant for one module class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstantsSet {
    pub theorem: Theorem,
    pub q: u32,
    pub d: usize,
    #[serde(serialize_with = "crate::rational::ser_rational")]
    pub h_phi: BigRational,
    #[serde(serialize_with = "crate::rational::ser_rational")]
    pub c_phi: BigRational,
    #[serde(serialize_with = "crate::rational::ser_rational")]
    pub r: BigRational,
    #[serde(serialize_with = "crate::rational::ser_rational")]
    pub alpha: BigRational,
    pub c0: Bracket,
    pub log_q_c0: Bracket,
    /// C₀ and its two branches.
    pub big_c0: LogQValue,
    pub big_c0_first: LogQValue,
    pub big_c0_second: LogQValue,
    #[serde(serialize_with = "crate::rational::ser_rational")]
    pub kappa: BigRational,
    #[serde(serialize_with = "crate::rational::ser_rational")]
    pub mu: BigRational,
    #[serde(serialize_with = "ser_opt_rational")]
    pub lambda: Option<BigRational>,
    pub c4: u64,
    #[serde(serialize_with = "crate::rational::ser_rational")]
    pub c3: BigRational,
    /// c₂ = q^{c₃·c(Φ)²}.
    pub c2: LogQValue,
    /// The RV* constant C, present once N_Φ is supplied.
    pub rv_star: RvStar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RvStar {
    Symbolic { formula: String },
    Explicit { n_phi: String, c: LogQValue },
}

fn ser_opt_rational<S: serde::Serializer>(v: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_str(&fmt_rational(v)),
        None => s.serialize_none(),
    }
}

/// Validated inputs shared by both theorems.
#[derive(Clone, Debug)]
pub struct ModuleClass {
    pub q: u32,
    pub d: usize,
    pub h_phi: BigRational,
    pub c_phi: BigRational,
    pub r: BigRational,
}

impl ModuleClass {
    pub fn new(q: u32, d: usize, h_phi: BigRational, c_phi: BigRational, r: BigRational) -> Result<Self> {
        if q < 2 || !is_prime_power(q) {
            return Err(Error::InvalidField(format!("q = {q} is not a prime power")));
        }
        if d < 1 {
            return Err(Error::invalid("rank d must be at least 1"));
        }
        if h_phi < BigRational::one() || c_phi < BigRational::one() {
            return Err(Error::invalid("h(Φ) and c(Φ) must be at least 1"));
        }
        if !r.is_positive() || r > BigRational::one() {
            return Err(Error::invalid("r must satisfy 0 < r <= 1"));
        }
        Ok(ModuleClass { q, d, h_phi, c_phi, r })
    }

    pub fn alpha(&self) -> BigRational {
        &self.h_phi * &self.c_phi
    }

    /// c₃ = 5d(2(d+1)h(Φ)+1).
    pub fn c3(&self) -> BigRational {
        int(5 * self.d as u64) * (int(2 * (self.d as u64 + 1)) * &self.h_phi + int(1))
    }
}

fn smallest_prime_factor(q: u32) -> u32 {
    (2..=q).find(|p| q % p == 0).unwrap_or(q)
}

fn is_prime_power(q: u32) -> bool {
    let p = smallest_prime_factor(q);
    let mut v = q;
    while v % p == 0 {
        v /= p;
    }
    v == 1
}

fn c0_coefficient(theorem: Theorem, d: usize, alpha: &BigRational) -> BigRational {
    let lead = match theorem {
        Theorem::One => 6500u64,
        Theorem::Two => 35000,
    };
    int(lead * d as u64) * num::pow(alpha.clone(), 3)
}

pub fn theorem1_constants(m: &ModuleClass, n_phi: Option<&BigInt>) -> Result<ConstantsSet> {
    constants(m, Theorem::One, n_phi)
}

pub fn theorem2_constants(m: &ModuleClass, n_phi: Option<&BigInt>) -> Result<ConstantsSet> {
    constants(m, Theorem::Two, n_phi)
}

pub fn constants(m: &ModuleClass, theorem: Theorem, n_phi: Option<&BigInt>) -> Result<ConstantsSet> {
    let bits = DEFAULT_LOG_BITS;
    let (q, d) = (m.q, m.d);
    let dq = int(d as u64);
    let alpha = m.alpha();
    let denom = match theorem {
        Theorem::One => 768u64,
        Theorem::Two => 384,
    };
    // c₀ = lead·d·α³·q^{d + rα}
    let coef = c0_coefficient(theorem, d, &alpha);
    let e = &dq + &m.r * &alpha;
    let c0 = Bracket::exact(coef.clone()).mul_pos(&q_pow(q, &e, bits));
    let log_q_c0 = log_q(&coef, q, bits)?.add_exact(&e);

    let c3 = m.c3();
    let qq = int(num::pow(BigInt::from(q), q as usize + d + 1));
    let first_exp = -(&c3 * num::pow((qq - int(1)) * &m.c_phi, 2));
    let big_c0_first = LogQValue::exact(q, first_exp);
    let exp = int(1) + int(4 * d as u64) * &alpha / &m.r;
    let second = log_q(&(&alpha / (int(denom) * &m.r)), q, bits)?
        .add_exact(&-&dq)
        .sub(&log_q_c0.scale(&exp));
    let big_c0_second = LogQValue { q, log_q: second };
    let big_c0 = big_c0_first.min(&big_c0_second);

    let mu = int(2) + &dq * &alpha / &m.r;
    let (kappa, lambda) = match theorem {
        Theorem::One => (int(1) + int(2 * d as u64) * &alpha / &m.r, None),
        Theorem::Two => (
            int(1) + int(3 * d as u64) * &alpha / &m.r,
            Some(int(1) + int(2 * d as u64) * &alpha / &m.r),
        ),
    };
    let c2 = LogQValue::exact(q, &c3 * &m.c_phi * &m.c_phi);
    let rv_star = match n_phi {
        None => RvStar::Symbolic {
            formula: format!(
                "min({q}^(-{}*(N_phi - 1)^2*{}), {})",
                fmt_rational(&c3),
                fmt_rational(&(&m.c_phi * &m.c_phi)),
                big_c0_second
            ),
        },
        Some(n) => {
            if !n.is_positive() {
                return Err(Error::invalid("N_Φ must be positive"));
            }
            let nm1 = int(n - BigInt::one());
            let e = -(&c3 * &nm1 * &nm1 * &m.c_phi * &m.c_phi);
            RvStar::Explicit { n_phi: n.to_string(), c: LogQValue::exact(q, e).min(&big_c0_second) }
        }
    };
    Ok(ConstantsSet {
        theorem,
        q,
        d,
        h_phi: m.h_phi.clone(),
        c_phi: m.c_phi.clone(),
        r: m.r.clone(),
        alpha,
        c0,
        log_q_c0,
        big_c0,
        big_c0_first,
        big_c0_second,
        kappa,
        mu,
        lambda,
        c4: 24 * (q as u64).pow(d as u32),
        c3,
        c2,
        rv_star,
    })
}

/// C₀·(log log₊ D)^μ / (D·D_pi^λ·(log₊ D)^κ) in log_q form, the D_pi factor for the
/// inseparable theorem only.
pub fn lower_bound(dd: &BigInt, d_pi: &BigInt, c: &ConstantsSet) -> Result<LogQValue> {
    lower_bound_with_bits(dd, d_pi, c, DEFAULT_LOG_BITS)
}

pub fn lower_bound_with_bits(dd: &BigInt, d_pi: &BigInt, c: &ConstantsSet, bits: u32) -> Result<LogQValue> {
    if !dd.is_positive() {
        return Err(Error::invalid("D must be at least 1"));
    }
    let p = smallest_prime_factor(c.q);
    if !d_pi.is_positive() || !(dd % d_pi).is_zero() || !is_power_of(d_pi, p) {
        return Err(Error::invalid(format!("D_pi = {d_pi} must be a power of {p} dividing D = {dd}")));
    }
    match c.theorem {
        Theorem::One if !d_pi.is_one() => {
            return Err(Error::Hypothesis("the separable bound needs D_pi = 1".into()))
        }
        Theorem::Two if d_pi.is_one() => {
            return Err(Error::Hypothesis("the inseparable bound needs D_pi > 1".into()))
        }
        _ => {}
    }
    let q = c.q;
    let d_br = Bracket::exact(int(dd.clone()));
    let lp = log_plus(&d_br, q, bits)?;
    let llp = log_plus(&lp, q, bits)?;
    let mut e = c
        .big_c0
        .log_q
        .add(&log_q_bracket(&llp, q, bits)?.scale(&c.mu))
        .sub(&log_q(&int(dd.clone()), q, bits)?)
        .sub(&log_q_bracket(&lp, q, bits)?.scale(&c.kappa));
    if let Some(lambda) = &c.lambda {
        e = e.sub(&log_q(&int(d_pi.clone()), q, bits)?.scale(lambda));
    }
    Ok(LogQValue { q, log_q: e })
}

fn is_power_of(n: &BigInt, p: u32) -> bool {
    let p = BigInt::from(p);
    let mut n = n.clone();
    while n > BigInt::one() {
        let (d, r) = n.div_rem(&p);
        if !r.is_zero() {
            return false;
        }
        n = d;
    }
    n.is_one()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Variant {
    Separable,
    /// p^{e'}, the inseparable degree factor.
    Inseparable { p_e: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParameterSet {
    #[serde(rename = "L")]
    pub l: String,
    pub t: String,
    pub h_order: String,
    pub deg_l: String,
    pub deg_n: u64,
    pub variant: Variant,
    #[serde(skip)]
    pub values: ParameterValues,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ParameterValues {
    pub l: BigInt,
    pub t: BigInt,
    pub h_order: BigInt,
    pub deg_l: BigInt,
}

/// Pins down floor(f(bits)) by raising the precision until both ends agree.
fn pinned_floor(f: impl Fn(u32) -> Result<Bracket>) -> Result<BigInt> {
    let mut bits = DEFAULT_LOG_BITS;
    loop {
        let b = f(bits)?;
        if let Some(v) = b.floor() {
            return Ok(v);
        }
        if bits >= MAX_LOG_BITS {
            return Err(Error::resource("logarithm precision (bits)", bits * 2, MAX_LOG_BITS));
        }
        bits *= 2;
    }
}

/// L, t, h, deg l and deg N for a point of degree D. `p_e` = p^{e'} selects the
/// inseparable choices.
pub fn parameter_select(dd: &BigInt, c: &ConstantsSet, p_e: Option<&BigInt>) -> Result<ParameterSet> {
    let q = c.q;
    let threshold = num::pow(BigInt::from(q), q as usize + c.d + 1);
    if dd < &threshold {
        return Err(Error::Hypothesis(format!("D = {dd} is below q^(q+d+1) = {threshold}")));
    }
    let pe = match p_e {
        Some(v) if v.is_positive() => int(v.clone()),
        Some(v) => return Err(Error::invalid(format!("p^e' = {v} must be positive"))),
        None => int(1),
    };
    let d_exact = int(dd.clone());
    let d_br = Bracket::exact(d_exact.clone());
    let c0_at = |bits: u32| -> Bracket {
        let e = int(c.d as u64) + &c.r * &c.alpha;
        Bracket::exact(c0_coefficient(c.theorem, c.d, &c.alpha)).mul_pos(&q_pow(q, &e, bits))
    };
    let logs = |bits: u32| -> Result<(Bracket, Bracket)> {
        let ld = log_q_bracket(&d_br, q, bits)?;
        let lld = log_q_bracket(&ld, q, bits)?;
        Ok((ld, lld))
    };
    let pe_br = Bracket::exact(pe.clone());
    let l = pinned_floor(|bits| {
        let (ld, lld) = logs(bits)?;
        Ok(c0_at(bits).pow_pos(2).mul_pos(&d_br).mul_pos(&ld).mul_pos(&pe_br).div_pos(&lld.pow_pos(2)))
    })? + 1;
    let t = pinned_floor(|bits| {
        let (ld, lld) = logs(bits)?;
        Ok(c0_at(bits).pow_pos(3).mul_pos(&d_br).mul_pos(&ld).mul_pos(&pe_br).div_pos(&lld.pow_pos(3)))
    })?;
    let h = pinned_floor(|bits| {
        let (_, lld) = logs(bits)?;
        Ok(c0_at(bits).mul_pos(&d_br).div_pos(&lld.pow_pos(2)))
    })?;
    let inner = pinned_floor(|bits| {
        let (ld, lld) = logs(bits)?;
        let arg = match p_e {
            None => c0_at(bits).pow_pos(4).mul_pos(&ld.pow_pos(2)).div_pos(&lld),
            Some(_) => c0_at(bits)
                .pow_pos(4)
                .mul_pos(&ld.pow_pos(3))
                .mul_pos(&pe_br.pow_pos(2))
                .div_pos(&lld),
        };
        Ok(log_q_bracket(&arg, q, bits)?.scale(&(BigRational::one() / &c.r)))
    })?;
    let deg_l = (&c.alpha * int(inner)).floor().to_integer();
    let deg_n = {
        let step = num::pow(BigInt::from(q), c.d);
        let mut v = BigInt::one();
        let mut m = 0u64;
        while &v * &step <= l {
            v *= &step;
            m += 1;
        }
        m + 1
    };
    // L² > t·D·c(Φ) and h ≤ t/2
    if int(&l * &l) <= int(&t * dd) * &c.c_phi {
        return Err(Error::Contract(format!("L² > tDc(Φ) fails for L = {l}, t = {t}")));
    }
    if BigInt::from(2) * &h > t {
        return Err(Error::Contract(format!("h = {h} exceeds t/2 for t = {t}")));
    }
    Ok(ParameterSet {
        l: l.to_string(),
        t: t.to_string(),
        h_order: h.to_string(),
        deg_l: deg_l.to_string(),
        deg_n,
        variant: match p_e {
            None => Variant::Separable,
            Some(v) => Variant::Inseparable { p_e: v.to_string() },
        },
        values: ParameterValues { l, t, h_order: h, deg_l },
    })
}

/// Number of points of degree ≤ D and height ≤ χ is at most q^{5D²χ}.
pub fn northcott_bound(q: u32, dd: u64, chi: u64) -> Result<LogQValue> {
    if dd < 1 || chi < 1 {
        return Err(Error::invalid("D and χ must be at least 1"));
    }
    Ok(LogQValue::exact(q, int(5 * dd * dd * chi)))
}

/// ĥ(x) ≥ c₂^{−D²} for non-torsion x of degree D.
pub fn c2_bound(m: &ModuleClass, dd: u64) -> Result<LogQValue> {
    if dd < 1 {
        return Err(Error::invalid("D must be at least 1"));
    }
    Ok(LogQValue::exact(m.q, -(m.c3() * &m.c_phi * &m.c_phi * int(dd * dd))))
}

/// c₀ ≥ max{c(Φ), q^d, 384rq^d, 1536rq^d, 2q}, checked on the lower end of c₀.
pub fn dominance_holds(c: &ConstantsSet) -> bool {
    let qd = int(num::pow(BigInt::from(c.q), c.d));
    let targets = [
        c.c_phi.clone(),
        qd.clone(),
        int(384) * &c.r * &qd,
        int(1536) * &c.r * &qd,
        int(2 * c.q as u64),
    ];
    targets.iter().all(|t| &c.c0.lo >= t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn carlitz_class() -> ModuleClass {
        ModuleClass::new(2, 1, ratio(1, 1), ratio(1, 1), ratio(1, 1)).unwrap()
    }

    #[test]
    fn log_brackets() {
        assert_eq!(log_q(&ratio(65536, 1), 2, 32).unwrap(), Bracket::exact(ratio(16, 1)));
        assert_eq!(log_q(&ratio(1, 8), 2, 32).unwrap(), Bracket::exact(ratio(-3, 1)));
        let b = log_q(&ratio(3, 1), 2, 40).unwrap();
        let truth = 3f64.log2();
        assert!(b.lo.to_f64().unwrap() <= truth && truth <= b.hi.to_f64().unwrap());
        assert!(b.hi.to_f64().unwrap() - b.lo.to_f64().unwrap() < 1e-10);
        let b = log_q(&ratio(2, 7), 3, 40).unwrap();
        let truth = (2f64 / 7.0).ln() / 3f64.ln();
        assert!(b.lo.to_f64().unwrap() <= truth && truth <= b.hi.to_f64().unwrap());
        assert!(log_q(&ratio(0, 1), 2, 8).is_err());
    }

    #[test]
    fn root_brackets() {
        let b = q_pow(2, &ratio(1, 2), 40);
        let s = 2f64.sqrt();
        assert!(b.lo.to_f64().unwrap() <= s && s <= b.hi.to_f64().unwrap());
        assert_eq!(q_pow(3, &ratio(-2, 1), 8), Bracket::exact(ratio(1, 9)));
    }

    #[test]
    fn theorem1_carlitz() {
        let c = theorem1_constants(&carlitz_class(), None).unwrap();
        assert_eq!(c.c0, Bracket::exact(ratio(26000, 1)));
        assert_eq!((c.kappa.clone(), c.mu.clone()), (ratio(3, 1), ratio(3, 1)));
        assert_eq!(c.big_c0_first.log_q, Bracket::exact(ratio(-5625, 1)));
        assert_eq!(c.big_c0, c.big_c0_first);
        assert_eq!(c.c4, 48);
        assert_eq!(c.c2.log_q, Bracket::exact(ratio(25, 1)));
        assert!(dominance_holds(&c));
        assert!(matches!(c.rv_star, RvStar::Symbolic { .. }));
    }

    #[test]
    fn theorem2_exponents() {
        let c = theorem2_constants(&carlitz_class(), None).unwrap();
        assert_eq!(c.c0, Bracket::exact(ratio(140000, 1)));
        assert_eq!((c.mu.clone(), c.kappa.clone(), c.lambda.clone()), (ratio(3, 1), ratio(4, 1), Some(ratio(3, 1))));
        let m = ModuleClass::new(2, 2, ratio(1, 1), ratio(1, 1), ratio(1, 2)).unwrap();
        assert_eq!(theorem2_constants(&m, None).unwrap().kappa, ratio(13, 1));
    }

    #[test]
    fn lower_bounds() {
        let c = theorem1_constants(&carlitz_class(), None).unwrap();
        let one = BigInt::one();
        assert_eq!(lower_bound(&one, &one, &c).unwrap(), c.big_c0);
        // C₀·4³/(2^16·16³)
        let b = lower_bound(&BigInt::from(65536), &one, &c).unwrap();
        assert_eq!(b.log_q, Bracket::exact(ratio(-5625 + 6 - 16 - 12, 1)));
        let c2 = theorem2_constants(&carlitz_class(), None).unwrap();
        let b2 = lower_bound(&BigInt::from(65536), &BigInt::from(2), &c2).unwrap();
        let base = lower_bound_unchecked(&c2);
        assert_eq!(b2.log_q, base.add_exact(&ratio(-3, 1)));
        assert!(matches!(lower_bound(&BigInt::from(4), &BigInt::from(2), &c), Err(Error::Hypothesis(_))));
        assert!(lower_bound(&BigInt::from(6), &BigInt::from(4), &c2).is_err());
    }

    fn lower_bound_unchecked(c: &ConstantsSet) -> Bracket {
        // the D = 2^16 value without the D_pi factor
        c.big_c0.log_q.add_exact(&(&c.mu * ratio(2, 1) - ratio(16, 1) - &c.kappa * ratio(4, 1)))
    }

    #[test]
    fn parameters_carlitz() {
        let c = theorem1_constants(&carlitz_class(), None).unwrap();
        let p = parameter_select(&BigInt::from(65536), &c, None).unwrap();
        let c0 = BigInt::from(26000);
        assert_eq!(p.values.l, &c0 * &c0 * BigInt::from(65536) + 1);
        assert_eq!(p.values.h_order, &c0 * BigInt::from(65536) / BigInt::from(16));
        assert_eq!(p.values.t, &c0 * &c0 * &c0 * BigInt::from(65536) * 16 / BigInt::from(64));
        assert!(parameter_select(&BigInt::from(8), &c, None).is_err());
        let ins = parameter_select(&BigInt::from(65536), &c, Some(&BigInt::from(2))).unwrap();
        assert_eq!(ins.values.l, &c0 * &c0 * BigInt::from(65536) * 2 + 1);
        assert_eq!(ins.values.t, &p.values.t * 2);
    }

    #[test]
    fn northcott_and_c2() {
        assert_eq!(northcott_bound(2, 1, 1).unwrap().log_q, Bracket::exact(ratio(5, 1)));
        assert_eq!(northcott_bound(2, 2, 1).unwrap().log_q, Bracket::exact(ratio(20, 1)));
        let b = c2_bound(&carlitz_class(), 3).unwrap();
        assert_eq!(b.log_q, Bracket::exact(ratio(-25 * 9, 1)));
    }

    #[test]
    fn rv_star_explicit() {
        let c = theorem1_constants(&carlitz_class(), Some(&BigInt::from(3))).unwrap();
        match c.rv_star {
            RvStar::Explicit { c: v, .. } => assert_eq!(v.log_q, Bracket::exact(ratio(-100, 1)).min(&c.big_c0_second.log_q)),
            _ => panic!("expected explicit"),
        }
    }

    #[test]
    fn ranges() {
        assert!(ModuleClass::new(2, 1, ratio(1, 1), ratio(1, 1), ratio(0, 1)).is_err());
        assert!(ModuleClass::new(2, 1, ratio(1, 2), ratio(1, 1), ratio(1, 1)).is_err());
        assert!(ModuleClass::new(6, 1, ratio(1, 1), ratio(1, 1), ratio(1, 1)).is_err());
    }
}
