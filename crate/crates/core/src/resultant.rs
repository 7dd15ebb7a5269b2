//! Sylvester resultants with fraction-free (Bareiss) elimination.

use crate::error::{Error, Result};
use crate::poly::{ExactDivRing, UPoly};

/// Default ceiling on the Sylvester dimension.
pub const DEFAULT_SYLVESTER_LIMIT: usize = 4096;

/// Determinant of a square matrix over an exact-division ring, by Bareiss.
pub fn bareiss_det<C: ExactDivRing>(mut m: Vec<Vec<C>>, fq: crate::Fq) -> Result<C> {
    let n = m.len();
    if n == 0 {
        return Ok(C::one_in(fq));
    }
    let mut negate = false;
    let mut prev = C::one_in(fq);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(C::zero_in(fq)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t
                    .div_exact(&prev)
                    .ok_or_else(|| Error::Contract("inexact Bareiss division".into()))?;
            }
            m[i][k] = C::zero_in(fq);
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if negate { d.neg() } else { d })
}

/// Sylvester matrix of f (degree m) and g (degree n): n rows of f, m rows of g.
pub fn sylvester<C: ExactDivRing>(f: &UPoly<C>, g: &UPoly<C>) -> Vec<Vec<C>> {
    let fq = f.fq();
    let m = f.deg().unwrap_or(0);
    let n = g.deg().unwrap_or(0);
    let dim = m + n;
    let mut rows = Vec::with_capacity(dim);
    for (src, shifts, deg) in [(f, n, m), (g, m, n)] {
        for s in 0..shifts {
            let mut row = vec![C::zero_in(fq); dim];
            for (i, c) in src.coeffs().iter().enumerate() {
                // columns are ordered from the highest power down
                row[s + deg - i] = c.clone();
            }
            rows.push(row);
        }
    }
    rows
}

/// Res(f, g) in C; `limit` bounds the Sylvester dimension.
pub fn resultant<C: ExactDivRing>(f: &UPoly<C>, g: &UPoly<C>, limit: usize) -> Result<C> {
    let fq = f.fq();
    let (m, n) = match (f.deg(), g.deg()) {
        (Some(m), Some(n)) => (m, n),
        _ => return Ok(C::zero_in(fq)),
    };
    if m + n > limit {
        return Err(Error::resource("Sylvester dimension", m + n, limit));
    }
    if m == 0 {
        return Ok(pow(&f.coeff(0), n, fq));
    }
    if n == 0 {
        return Ok(pow(&g.coeff(0), m, fq));
    }
    bareiss_det(sylvester(f, g), fq)
}

fn pow<C: ExactDivRing>(c: &C, n: usize, fq: crate::Fq) -> C {
    (0..n).fold(C::one_in(fq), |acc, _| acc.mul(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apoly::APoly;
    use crate::fq::Fq;
    use crate::parse::parse_xpoly;
    use crate::poly::{Coefficient, XPoly};

    /// Res(f, g) = lc(f)^n ∏ g(roots of f); for f = Π (X - r_i) over F_q this
    /// is Π g(r_i), an independent evaluation oracle.
    #[test]
    fn split_polynomial_oracle() {
        let fq = Fq::prime(5).unwrap();
        let roots = [1u32, 3, 4];
        let mut f = XPoly::one(fq);
        for &r in &roots {
            let lin = XPoly::from_coeffs(fq, vec![APoly::constant(fq, fq.neg(r)), APoly::one(fq)]);
            f = &f * &lin;
        }
        let g = parse_xpoly(fq, "T*X^2 + X + T + 1").unwrap();
        let expected = roots.iter().fold(APoly::one(fq), |acc, &r| {
            &acc * &g.eval(&APoly::constant(fq, r))
        });
        assert_eq!(resultant(&f, &g, 100).unwrap(), expected);
    }

    #[test]
    fn common_root_gives_zero_and_limit_is_enforced() {
        let fq = Fq::prime(2).unwrap();
        let f = parse_xpoly(fq, "X^2 + T").unwrap();
        let g = parse_xpoly(fq, "X^4 + T^2").unwrap();
        assert!(resultant(&f, &g, 100).unwrap().is_zero());
        assert!(matches!(resultant(&f, &g, 5), Err(Error::Resource { .. })));
    }

    #[test]
    fn constant_operands() {
        let fq = Fq::prime(3).unwrap();
        let f = parse_xpoly(fq, "X^2 + 1").unwrap();
        let c = XPoly::constant(APoly::t(fq));
        assert_eq!(resultant(&f, &c, 10).unwrap(), APoly::t(fq).pow(2));
    }

    #[test]
    fn nested_coefficients() {
        // Res_Y(Y^2 - T, X - Y) = X^2 - T over A[X]
        let fq = Fq::prime(3).unwrap();
        let p: UPoly<XPoly> = UPoly::from_coeffs(
            fq,
            vec![XPoly::constant(APoly::t(fq).neg()), XPoly::zero(fq), XPoly::one(fq)],
        );
        let h: UPoly<XPoly> = UPoly::from_coeffs(fq, vec![XPoly::x(fq), XPoly::one(fq).neg()]);
        let r = resultant(&p, &h, 10).unwrap();
        assert_eq!(r, parse_xpoly(fq, "X^2 - T").unwrap());
    }
}
