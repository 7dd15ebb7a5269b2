//! Algebraic points over k, represented by primitive minimal polynomials in A[X].

use std::fmt;
use std::path::Path;

use serde::Deserialize;

use crate::algebra::PointAlgebra;
use crate::apoly::APoly;
use crate::error::{Error, Result};
use crate::fq::Fq;
use crate::parse::parse_xpoly;
use crate::poly::{KPoly, XPoly};
use crate::ratfn::RationalFn;

/// A point of k̄, given by its primitive minimal polynomial P over A.
///
/// Irreducibility of P over k is assumed, not tested. A reducible input stands
/// for the multiset of its roots, and heights become averages over that cycle.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgebraicPoint {
    minpoly: XPoly,
    d: usize,
    d_sep: usize,
    d_pi: usize,
}

impl AlgebraicPoint {
    /// Validates and normalizes P: content 1, leading coefficient's leading
    /// coefficient 1, squarefree after deflation.
    pub fn new(p: XPoly) -> Result<Self> {
        let d = match p.deg() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::invalid("minimal polynomial must have X-degree >= 1")),
        };
        if !p.content().is_one() {
            return Err(Error::invalid(format!("{p} is not primitive")));
        }
        let minpoly = p.primitive_normalized();
        let (d_sep, d_pi) = inseparable_split(&minpoly)?;
        let deflated = deflate(&minpoly, d_pi).to_k();
        if !deflated.gcd(&deflated.derivative()).deg().is_some_and(|g| g == 0) {
            return Err(Error::invalid(format!("{p} is not squarefree after deflation")));
        }
        Ok(AlgebraicPoint { minpoly, d, d_sep, d_pi })
    }

    /// The k-rational point x.
    pub fn from_rational(x: &RationalFn) -> Self {
        let fq = x.fq();
        let p = XPoly::from_coeffs(fq, vec![-x.num(), x.den().clone()]);
        Self::new(p).expect("linear polynomials are valid minimal polynomials")
    }

    pub fn parse(fq: Fq, s: &str) -> Result<Self> {
        Self::new(parse_xpoly(fq, s)?)
    }

    /// Reads `minpoly = "..."` from a TOML file.
    pub fn load(fq: Fq, path: &Path) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct PointSpec {
            minpoly: String,
        }
        let text = std::fs::read_to_string(path)?;
        let spec: PointSpec =
            toml::from_str(&text).map_err(|e| Error::invalid(format!("point file: {e}")))?;
        Self::parse(fq, &spec.minpoly)
    }

    pub fn fq(&self) -> Fq {
        self.minpoly.fq()
    }

    pub fn minpoly(&self) -> &XPoly {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn d_sep(&self) -> usize {
        self.d_sep
    }

    pub fn d_pi(&self) -> usize {
        self.d_pi
    }

    pub fn minpoly_k(&self) -> KPoly {
        self.minpoly.to_k()
    }

    /// k[Y]/(P), in which the class of Y is this point.
    pub fn algebra(&self) -> PointAlgebra {
        PointAlgebra::new(&self.minpoly_k()).expect("nonconstant minimal polynomial")
    }

    /// The value x ∈ k when D = 1.
    pub fn as_rational(&self) -> Option<RationalFn> {
        if self.d != 1 {
            return None;
        }
        let c = self.minpoly.coeffs();
        RationalFn::new(-&c[0], c[1].clone()).ok()
    }

    /// True iff every coefficient of P/lc(P) is integral at l.
    pub fn is_integral_at(&self, l: &APoly) -> bool {
        let lc = self.minpoly.lc().unwrap();
        !l.divides(lc)
    }
}

impl fmt::Display for AlgebraicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.minpoly)
    }
}

impl fmt::Debug for AlgebraicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraicPoint({}, D={})", self.minpoly, self.d)
    }
}

/// Q with Q(X^m) = P; `m` must divide every exponent of P.
fn deflate(p: &XPoly, m: usize) -> XPoly {
    if m == 1 {
        return p.clone();
    }
    let v = p.coeffs().iter().step_by(m).cloned().collect();
    XPoly::from_coeffs(p.fq(), v)
}

/// (D_sep, D_pi) with D_pi the largest power of p such that P ∈ A[X^{D_pi}].
pub fn inseparable_split(p: &XPoly) -> Result<(usize, usize)> {
    let d = match p.deg() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::invalid("inseparable split of a constant polynomial")),
    };
    let prime = p.fq().p() as usize;
    let mut d_pi = 1;
    let mut cur = p.clone();
    while cur.derivative().is_zero() {
        cur = deflate(&cur, prime);
        d_pi *= prime;
    }
    Ok((d / d_pi, d_pi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Fq {
        Fq::prime(2).unwrap()
    }

    #[test]
    fn splits() {
        let fq = f2();
        let split = |s| inseparable_split(&parse_xpoly(fq, s).unwrap()).unwrap();
        assert_eq!(split("X^2 + T"), (1, 2));
        assert_eq!(split("X + T"), (1, 1));
        assert_eq!(split("X^2 + X + T"), (2, 1));
        assert_eq!(split("X^4 + T*X^2 + T"), (2, 2));
        assert!(inseparable_split(&parse_xpoly(fq, "T").unwrap()).is_err());
    }

    #[test]
    fn validation() {
        let fq = f2();
        assert!(AlgebraicPoint::parse(fq, "T*X + T").is_err());
        assert!(AlgebraicPoint::parse(fq, "X^3 + X^2 + X + 1").is_err());
        let x = AlgebraicPoint::parse(fq, "T*X + 1").unwrap();
        assert_eq!(x.as_rational().unwrap(), RationalFn::t(fq).inv().unwrap());
        let f3 = Fq::prime(3).unwrap();
        let y = AlgebraicPoint::parse(f3, "2*T*X + 1").unwrap();
        assert_eq!(y.minpoly().to_string(), "T*X + 2");
    }
}
