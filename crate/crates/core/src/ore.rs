//! Twisted polynomials in τ (τ·c = c^q·τ) and Drinfeld modules.

use std::fmt;
use std::path::Path;

use serde::Deserialize;

use crate::algebra::{FqAlgebra, FunctionField, ResidueField};
use crate::apoly::APoly;
use crate::error::{Error, Result};
use crate::fq::Fq;
use crate::parse::{parse_apoly, parse_ratfn};
use crate::ratfn::RationalFn;

/// Σ c_i τ^i, coefficients in some [`FqAlgebra`]; no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct OrePoly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone> OrePoly<E> {
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    /// τ-degree, `None` for zero.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<E: fmt::Display> fmt::Display for OrePoly<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            let s = c.to_string();
            if s == "0" {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "τ".to_string(),
                _ => format!("τ^{i}"),
            };
            terms.push(match (i, s.as_str()) {
                (0, _) => s,
                (_, "1") => mono,
                _ if s.contains(' ') => format!("({s}){mono}"),
                _ => format!("{s}{mono}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl<E: fmt::Debug> fmt::Debug for OrePoly<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coeffs).finish()
    }
}

/// The twisted polynomial ring R{τ} over an algebra R.
pub struct OreRing<'a, R: FqAlgebra> {
    pub alg: &'a R,
}

impl<'a, R: FqAlgebra> OreRing<'a, R> {
    pub fn new(alg: &'a R) -> Self {
        OreRing { alg }
    }

    pub fn from_coeffs(&self, mut coeffs: Vec<R::Elem>) -> OrePoly<R::Elem> {
        while coeffs.last().is_some_and(|c| self.alg.is_zero(c)) {
            coeffs.pop();
        }
        OrePoly { coeffs }
    }

    pub fn zero(&self) -> OrePoly<R::Elem> {
        OrePoly { coeffs: Vec::new() }
    }

    pub fn scalar(&self, c: R::Elem) -> OrePoly<R::Elem> {
        self.from_coeffs(vec![c])
    }

    /// c·τ^k.
    pub fn monomial(&self, c: R::Elem, k: usize) -> OrePoly<R::Elem> {
        let mut v = vec![self.alg.zero(); k];
        v.push(c);
        self.from_coeffs(v)
    }

    pub fn add(&self, f: &OrePoly<R::Elem>, g: &OrePoly<R::Elem>) -> OrePoly<R::Elem> {
        let n = f.coeffs.len().max(g.coeffs.len());
        let z = self.alg.zero();
        let v = (0..n)
            .map(|i| {
                self.alg
                    .add(f.coeffs.get(i).unwrap_or(&z), g.coeffs.get(i).unwrap_or(&z))
            })
            .collect();
        self.from_coeffs(v)
    }

    /// (Σ f_i τ^i)(Σ g_j τ^j) = Σ f_i g_j^{q^i} τ^{i+j}.
    pub fn mul(&self, f: &OrePoly<R::Elem>, g: &OrePoly<R::Elem>) -> OrePoly<R::Elem> {
        if f.is_zero() || g.is_zero() {
            return self.zero();
        }
        let mut out = vec![self.alg.zero(); f.coeffs.len() + g.coeffs.len() - 1];
        let mut twisted: Vec<R::Elem> = g.coeffs.clone();
        for (i, fi) in f.coeffs.iter().enumerate() {
            if i > 0 {
                twisted = twisted.iter().map(|c| self.alg.frobenius(c)).collect();
            }
            if self.alg.is_zero(fi) {
                continue;
            }
            for (j, gj) in twisted.iter().enumerate() {
                if !self.alg.is_zero(gj) {
                    out[i + j] = self.alg.add(&out[i + j], &self.alg.mul(fi, gj));
                }
            }
        }
        self.from_coeffs(out)
    }

    /// Σ f_i ξ^{q^i}.
    pub fn apply(&self, f: &OrePoly<R::Elem>, xi: &R::Elem) -> R::Elem {
        let mut acc = self.alg.zero();
        let mut pw = xi.clone();
        for (i, c) in f.coeffs.iter().enumerate() {
            if i > 0 {
                pw = self.alg.frobenius(&pw);
            }
            if !self.alg.is_zero(c) {
                acc = self.alg.add(&acc, &self.alg.mul(c, &pw));
            }
        }
        acc
    }
}

/// A Drinfeld module Φ(T) = a_0 + a_1 τ + ... + a_d τ^d over k, a_0 = T.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DrinfeldModule {
    fq: Fq,
    coeffs: Vec<RationalFn>,
}

impl DrinfeldModule {
    pub fn new(fq: Fq, coeffs: Vec<RationalFn>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::invalid("a Drinfeld module needs rank d >= 1"));
        }
        for c in &coeffs {
            fq.check_same(&c.fq())?;
        }
        if coeffs[0] != RationalFn::t(fq) {
            return Err(Error::invalid(format!("a_0 must be T, got {}", coeffs[0])));
        }
        if coeffs.last().unwrap().is_zero() {
            return Err(Error::invalid("leading coefficient a_d must be nonzero"));
        }
        Ok(DrinfeldModule { fq, coeffs })
    }

    /// Φ(T) = T + τ.
    pub fn carlitz(fq: Fq) -> Self {
        DrinfeldModule { fq, coeffs: vec![RationalFn::t(fq), RationalFn::one(fq)] }
    }

    /// Coefficients written in the polynomial grammar, a_0 first.
    pub fn from_strs(fq: Fq, coeffs: &[&str]) -> Result<Self> {
        let v = coeffs
            .iter()
            .map(|s| parse_ratfn(fq, s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(fq, v)
    }

    pub fn fq(&self) -> Fq {
        self.fq
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[RationalFn] {
        &self.coeffs
    }

    pub fn is_carlitz(&self) -> bool {
        *self == Self::carlitz(self.fq)
    }

    /// True when every a_i lies in A.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_polynomial())
    }

    /// Φ(T) with coefficients embedded in `alg`.
    pub fn phi_t_in<R: FqAlgebra>(&self, alg: &R) -> Result<OrePoly<R::Elem>> {
        let v = self
            .coeffs
            .iter()
            .map(|c| alg.embed(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(OreRing::new(alg).from_coeffs(v))
    }

    /// Φ(a) in R{τ}, by Horner in the Ore ring.
    pub fn phi_image_in<R: FqAlgebra>(&self, alg: &R, a: &APoly) -> Result<OrePoly<R::Elem>> {
        self.fq.check_same(&a.fq())?;
        let ring = OreRing::new(alg);
        let phi_t = self.phi_t_in(alg)?;
        let mut acc = ring.zero();
        for &c in a.coeffs().iter().rev() {
            acc = ring.mul(&acc, &phi_t);
            if c != 0 {
                acc = ring.add(&acc, &ring.scalar(alg.from_fq(c)));
            }
        }
        Ok(acc)
    }

    /// Φ(a) in k{τ}.
    pub fn phi_image(&self, a: &APoly) -> OrePoly<RationalFn> {
        self.phi_image_in(&FunctionField::new(self.fq), a)
            .expect("k contains every coefficient")
    }

    /// Φ(a)(ξ) = Σ_j a_j Φ(T)^j(ξ), iterating Φ(T) on ξ.
    pub fn phi_apply<R: FqAlgebra>(&self, alg: &R, a: &APoly, xi: &R::Elem) -> Result<R::Elem> {
        self.fq.check_same(&a.fq())?;
        if alg.fq() != self.fq {
            return Err(Error::AlgebraMismatch(alg.describe()));
        }
        let ring = OreRing::new(alg);
        let phi_t = self.phi_t_in(alg)?;
        let mut acc = alg.zero();
        let mut cur = xi.clone();
        for (j, &c) in a.coeffs().iter().enumerate() {
            if j > 0 {
                cur = ring.apply(&phi_t, &cur);
            }
            if c != 0 {
                acc = alg.add(&acc, &alg.scale(&cur, c));
            }
        }
        Ok(acc)
    }

    /// Coefficient-wise reduction of Φ(a) modulo l.
    pub fn phi_image_mod(&self, a: &APoly, l: &APoly) -> Result<OrePoly<APoly>> {
        ore_reduce_mod(&self.phi_image(a), l)
    }

    /// Human-readable Φ(T).
    pub fn describe(&self) -> String {
        let ring_poly = OrePoly { coeffs: self.coeffs.clone() };
        format!("Φ(T) = {ring_poly} over F_{}", self.fq.q())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml(&text)
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let spec: ModuleSpec =
            toml::from_str(text).map_err(|e| Error::invalid(format!("module file: {e}")))?;
        spec.build()
    }
}

/// On-disk description of a Drinfeld module.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub q: u32,
    pub p: Option<u32>,
    /// Polynomial in `u` over F_p defining F_q.
    pub field_modulus: Option<String>,
    pub coeffs: Vec<String>,
}

impl ModuleSpec {
    pub fn field(&self) -> Result<Fq> {
        match &self.field_modulus {
            None => {
                let fq = Fq::with_order(self.q)?;
                if self.p.is_some_and(|p| p != fq.p()) {
                    return Err(Error::InvalidField(format!(
                        "p = {} does not divide q = {}",
                        self.p.unwrap(),
                        self.q
                    )));
                }
                Ok(fq)
            }
            Some(m) => {
                let p = match self.p {
                    Some(p) => p,
                    None => Fq::with_order(self.q)?.p(),
                };
                let base = Fq::prime(p)?;
                let poly = parse_apoly(base, &m.replace('u', "T"))?;
                let e = poly.deg().unwrap_or(0) as u32;
                let fq = Fq::new(p, e, poly.coeffs())?;
                if fq.q() != self.q {
                    return Err(Error::InvalidField(format!(
                        "modulus of degree {e} gives {p}^{e}, not q = {}",
                        self.q
                    )));
                }
                Ok(fq)
            }
        }
    }

    pub fn build(&self) -> Result<DrinfeldModule> {
        let fq = self.field()?;
        let refs: Vec<&str> = self.coeffs.iter().map(String::as_str).collect();
        DrinfeldModule::from_strs(fq, &refs)
    }
}

/// Reduces each coefficient of f modulo l.
pub fn ore_reduce_mod(f: &OrePoly<RationalFn>, l: &APoly) -> Result<OrePoly<APoly>> {
    let res = ResidueField::new(l)?;
    let v = f
        .coeffs()
        .iter()
        .map(|c| {
            c.reduce_mod(res.modulus()).map_err(|_| Error::BadReduction {
                place: res.modulus().to_string(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OreRing::new(&res).from_coeffs(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Fq {
        Fq::prime(2).unwrap()
    }

    fn k(fq: Fq, s: &str) -> RationalFn {
        parse_ratfn(fq, s).unwrap()
    }

    #[test]
    fn twist_rule() {
        let fq = f2();
        let kk = FunctionField::new(fq);
        let r = OreRing::new(&kk);
        let tau = r.monomial(RationalFn::one(fq), 1);
        let t = r.scalar(RationalFn::t(fq));
        assert_eq!(r.mul(&tau, &t), r.monomial(k(fq, "T^2"), 1));
        let phi = r.add(&t, &tau);
        let sq = r.mul(&phi, &phi);
        assert_eq!(sq.coeffs(), &[k(fq, "T^2"), k(fq, "T^2 + T"), k(fq, "1")]);
        assert_eq!(r.mul(&r.scalar(RationalFn::one(fq)), &phi), phi);
    }

    #[test]
    fn carlitz_images() {
        let fq = f2();
        let c = DrinfeldModule::carlitz(fq);
        let t = APoly::t(fq);
        assert_eq!(c.phi_image(&t).to_string(), "T + τ");
        assert_eq!(c.phi_image(&APoly::one(fq)).to_string(), "1");
        assert_eq!(c.phi_image(&(&t * &t)).to_string(), "T^2 + (T^2 + T)τ + τ^2");
    }

    #[test]
    fn carlitz_apply() {
        let fq = f2();
        let c = DrinfeldModule::carlitz(fq);
        let kk = FunctionField::new(fq);
        let t = APoly::t(fq);
        assert!(c.phi_apply(&kk, &t, &RationalFn::t(fq)).unwrap().is_zero());
        assert_eq!(
            c.phi_apply(&kk, &t, &RationalFn::one(fq)).unwrap(),
            k(fq, "T + 1")
        );
        let f3 = Fq::prime(3).unwrap();
        let c3 = DrinfeldModule::carlitz(f3);
        let xi = k(f3, "T^2 + 1/T");
        let two = APoly::constant(f3, 2);
        assert_eq!(
            c3.phi_apply(&FunctionField::new(f3), &two, &xi).unwrap(),
            xi.scale(2)
        );
    }

    #[test]
    fn reductions() {
        let fq = f2();
        let c = DrinfeldModule::carlitz(fq);
        let t = APoly::t(fq);
        let red = c.phi_image_mod(&t, &t).unwrap();
        assert_eq!(red.to_string(), "τ");
        let bad = DrinfeldModule::from_strs(fq, &["T", "1/T"]).unwrap();
        match bad.phi_image_mod(&t, &t) {
            Err(e) => assert_eq!(e.to_string(), "bad reduction at T"),
            Ok(_) => panic!("expected bad reduction"),
        }
        let m = DrinfeldModule::from_strs(fq, &["T", "1", "1"]).unwrap();
        let l = parse_apoly(fq, "T^2 + T + 1").unwrap();
        assert_eq!(m.phi_image_mod(&l, &l).unwrap().to_string(), "τ^4");
    }

    #[test]
    fn toml_loader() {
        let m = DrinfeldModule::from_toml("q = 2\ncoeffs = [\"T\", \"1\", \"1\"]\n").unwrap();
        assert_eq!(m.rank(), 2);
        assert!(DrinfeldModule::from_toml("q = 2\ncoeffs = [\"T+1\", \"1\"]\n").is_err());
        let m4 = DrinfeldModule::from_toml(
            "q = 4\np = 2\nfield_modulus = \"u^2 + u + 1\"\ncoeffs = [\"T\", \"u\"]\n",
        )
        .unwrap();
        assert_eq!(m4.fq().q(), 4);
        assert!(DrinfeldModule::from_toml("q = 2\ncoeffs = [\"T\"]\nextra = 1\n").is_err());
    }
}
