//! Commutative F_q-algebras with a q-power map: k, A/(l), and k[Y]/(P).

use std::fmt::Debug;

use crate::apoly::APoly;
use crate::error::{Error, Result};
use crate::fq::Fq;
use crate::poly::KPoly;
use crate::ratfn::RationalFn;

pub trait FqAlgebra {
    type Elem: Clone + PartialEq + Debug;

    fn fq(&self) -> Fq;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, c: u32) -> Self::Elem;
    /// a ↦ a^q.
    fn frobenius(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Image of an element of k; fails if a denominator is not invertible here.
    fn embed(&self, x: &RationalFn) -> Result<Self::Elem>;
    /// Short name used in diagnostics.
    fn describe(&self) -> String;

    fn frobenius_pow(&self, a: &Self::Elem, n: usize) -> Self::Elem {
        let mut x = a.clone();
        for _ in 0..n {
            x = self.frobenius(&x);
        }
        x
    }

    fn from_fq(&self, c: u32) -> Self::Elem {
        self.scale(&self.one(), c)
    }
}

/// k = F_q(T).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FunctionField {
    pub fq: Fq,
}

impl FunctionField {
    pub fn new(fq: Fq) -> Self {
        FunctionField { fq }
    }
}

impl FqAlgebra for FunctionField {
    type Elem = RationalFn;

    fn fq(&self) -> Fq {
        self.fq
    }
    fn zero(&self) -> RationalFn {
        RationalFn::zero(self.fq)
    }
    fn one(&self) -> RationalFn {
        RationalFn::one(self.fq)
    }
    fn add(&self, a: &RationalFn, b: &RationalFn) -> RationalFn {
        a + b
    }
    fn sub(&self, a: &RationalFn, b: &RationalFn) -> RationalFn {
        a - b
    }
    fn mul(&self, a: &RationalFn, b: &RationalFn) -> RationalFn {
        a * b
    }
    fn scale(&self, a: &RationalFn, c: u32) -> RationalFn {
        a.scale(c)
    }
    fn frobenius(&self, a: &RationalFn) -> RationalFn {
        a.frobenius()
    }
    fn is_zero(&self, a: &RationalFn) -> bool {
        a.is_zero()
    }
    fn embed(&self, x: &RationalFn) -> Result<RationalFn> {
        self.fq.check_same(&x.fq())?;
        Ok(x.clone())
    }
    fn describe(&self) -> String {
        format!("F_{}(T)", self.fq.q())
    }
}

/// The residue field A/(l) for a monic irreducible l.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueField {
    l: APoly,
}

impl ResidueField {
    pub fn new(l: &APoly) -> Result<Self> {
        if !crate::irreducible::is_irreducible(l)? {
            return Err(Error::invalid(format!("{l} is not irreducible")));
        }
        Ok(ResidueField { l: l.to_monic() })
    }

    pub fn modulus(&self) -> &APoly {
        &self.l
    }

    pub fn reduce(&self, a: &APoly) -> APoly {
        a.rem(&self.l).expect("nonzero modulus")
    }
}

impl FqAlgebra for ResidueField {
    type Elem = APoly;

    fn fq(&self) -> Fq {
        self.l.fq()
    }
    fn zero(&self) -> APoly {
        APoly::zero(self.fq())
    }
    fn one(&self) -> APoly {
        APoly::one(self.fq())
    }
    fn add(&self, a: &APoly, b: &APoly) -> APoly {
        a + b
    }
    fn sub(&self, a: &APoly, b: &APoly) -> APoly {
        a - b
    }
    fn mul(&self, a: &APoly, b: &APoly) -> APoly {
        self.reduce(&(a * b))
    }
    fn scale(&self, a: &APoly, c: u32) -> APoly {
        a.scale(c)
    }
    fn frobenius(&self, a: &APoly) -> APoly {
        a.powmod(self.fq().q() as u64, &self.l).expect("nonzero modulus")
    }
    fn is_zero(&self, a: &APoly) -> bool {
        a.is_zero()
    }
    fn embed(&self, x: &RationalFn) -> Result<APoly> {
        self.fq().check_same(&x.fq())?;
        x.reduce_mod(&self.l).map_err(|_| Error::NotInvertible {
            what: x.den().to_string(),
            place: self.l.to_string(),
        })
    }
    fn describe(&self) -> String {
        format!("A/({})", self.l)
    }
}

/// k[Y]/(P) for a nonconstant P; elements are reduced polynomials of degree < deg P.
#[derive(Clone, Debug)]
pub struct PointAlgebra {
    modulus: KPoly,
    /// Y^{iq} mod P for 0 <= i < deg P.
    frob_basis: Vec<KPoly>,
}

impl PointAlgebra {
    pub fn new(p: &KPoly) -> Result<Self> {
        let d = match p.deg() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::invalid("point algebra needs a nonconstant modulus")),
        };
        let modulus = p.monic();
        let fq = p.fq();
        let yq = KPoly::monomial(RationalFn::one(fq), fq.q() as usize).rem(&modulus)?;
        let mut frob_basis = Vec::with_capacity(d);
        let mut cur = KPoly::one(fq);
        for _ in 0..d {
            frob_basis.push(cur.clone());
            cur = (&cur * &yq).rem(&modulus)?;
        }
        Ok(PointAlgebra { modulus, frob_basis })
    }

    pub fn modulus(&self) -> &KPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.frob_basis.len()
    }

    /// The class of Y.
    pub fn generator(&self) -> KPoly {
        self.reduce(&KPoly::x(self.fq()))
    }

    pub fn reduce(&self, a: &KPoly) -> KPoly {
        if a.deg().is_some_and(|d| d < self.degree()) || a.is_zero() {
            return a.clone();
        }
        a.rem(&self.modulus).expect("nonzero modulus")
    }
}

impl FqAlgebra for PointAlgebra {
    type Elem = KPoly;

    fn fq(&self) -> Fq {
        self.modulus.fq()
    }
    fn zero(&self) -> KPoly {
        KPoly::zero(self.fq())
    }
    fn one(&self) -> KPoly {
        KPoly::one(self.fq())
    }
    fn add(&self, a: &KPoly, b: &KPoly) -> KPoly {
        a + b
    }
    fn sub(&self, a: &KPoly, b: &KPoly) -> KPoly {
        a - b
    }
    fn mul(&self, a: &KPoly, b: &KPoly) -> KPoly {
        self.reduce(&(a * b))
    }
    fn scale(&self, a: &KPoly, c: u32) -> KPoly {
        a.scale_fq(c)
    }
    fn frobenius(&self, a: &KPoly) -> KPoly {
        let mut acc = self.zero();
        for (i, c) in a.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &self.frob_basis[i].scale(&c.frobenius());
            }
        }
        acc
    }
    fn is_zero(&self, a: &KPoly) -> bool {
        a.is_zero()
    }
    fn embed(&self, x: &RationalFn) -> Result<KPoly> {
        self.fq().check_same(&x.fq())?;
        Ok(KPoly::constant(x.clone()))
    }
    fn describe(&self) -> String {
        format!("k[Y]/({})", self.modulus.render_in("Y"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_kpoly;

    #[test]
    fn point_algebra_frobenius_is_q_power() {
        let fq = Fq::prime(3).unwrap();
        let p = parse_kpoly(fq, "T*X^3 + X + 1").unwrap();
        let alg = PointAlgebra::new(&p).unwrap();
        let a = alg.reduce(&parse_kpoly(fq, "X^2 + (T+1)*X + 2/T").unwrap());
        let cube = alg.mul(&alg.mul(&a, &a), &a);
        assert_eq!(alg.frobenius(&a), cube);
    }

    #[test]
    fn residue_frobenius() {
        let fq = Fq::prime(2).unwrap();
        let l = APoly::from_coeffs(fq, vec![1, 1, 0, 1]);
        let r = ResidueField::new(&l).unwrap();
        let a = APoly::from_coeffs(fq, vec![0, 1, 1]);
        assert_eq!(r.frobenius(&a), r.mul(&a, &a));
        // Frobenius has order deg l on A/(l)
        assert_eq!(r.frobenius_pow(&a, 3), a);
    }

    #[test]
    fn residue_embed_reports_place() {
        let fq = Fq::prime(2).unwrap();
        let r = ResidueField::new(&APoly::t(fq)).unwrap();
        let x = RationalFn::t(fq).inv().unwrap();
        assert!(matches!(r.embed(&x), Err(Error::NotInvertible { .. })));
    }
}
