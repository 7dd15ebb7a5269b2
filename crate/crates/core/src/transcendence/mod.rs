//! Divided derivatives, root multiplicities, the constructive Siegel lemma,
//! auxiliary polynomials and the supersingular vanishing check.

mod auxiliary;
mod siegel;

pub use auxiliary::{
    aux_degree_n, build_aux_polynomial, build_aux_system, row_height_bound,
    supersingular_vanishing_check, AuxPolynomial, VanishingReport,
};
pub use siegel::{random_system, row_height, siegel_bound, siegel_solve, SiegelSystem, SiegelSolution};

use crate::error::{Error, Result};
use crate::point::AlgebraicPoint;
use crate::poly::{Coefficient, UPoly, XPoly};

/// d^{(h)}B: the coefficient of H^h in B(X + H).
pub fn divided_derivative<C: Coefficient>(b: &UPoly<C>, h: usize) -> UPoly<C> {
    b.divided_derivative(h)
}

/// Number of consecutive orders h = 0, 1, ... with d^{(h)}B(x) = 0.
pub fn vanishing_order(b: &XPoly, x: &AlgebraicPoint) -> Result<usize> {
    if b.is_zero() {
        return Err(Error::invalid("vanishing order of the zero polynomial"));
    }
    let p = x.minpoly_k();
    let deg = b.deg().unwrap();
    let mut h = 0;
    while h <= deg {
        let dh = b.divided_derivative(h).to_k();
        if !dh.rem(&p)?.is_zero() {
            break;
        }
        h += 1;
    }
    Ok(h)
}

/// Largest m with P_x^m | B, by repeated exact division in A[X].
pub fn multiplicity_by_division(b: &XPoly, x: &AlgebraicPoint) -> Result<usize> {
    if b.is_zero() {
        return Err(Error::invalid("multiplicity in the zero polynomial"));
    }
    let mut m = 0;
    let mut cur = b.clone();
    while let Some(q) = cur.div_exact(x.minpoly()) {
        cur = q;
        m += 1;
    }
    Ok(m)
}

/// Largest m with P_x^m | B. Computed by exact division and cross-checked
/// against the divided-derivative count, which must equal m·D_pi.
pub fn multiplicity_at(b: &XPoly, x: &AlgebraicPoint) -> Result<usize> {
    let m = multiplicity_by_division(b, x)?;
    let c = vanishing_order(b, x)?;
    if c != m * x.d_pi() {
        return Err(Error::Contract(format!(
            "multiplicity {m} by division but {c} vanishing divided derivatives (D_pi = {})",
            x.d_pi()
        )));
    }
    Ok(m)
}
