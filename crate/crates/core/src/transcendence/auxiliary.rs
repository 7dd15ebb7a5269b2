//! Auxiliary polynomials G_N(X) = G(X, Φ(N)(X)) vanishing to order t at x.

use num::BigRational;

use super::siegel::{siegel_solve, SiegelSolution, SiegelSystem};
use super::{multiplicity_at, vanishing_order};
use crate::algebra::FqAlgebra;
use crate::apoly::APoly;
use crate::error::{Error, Result};
use crate::heights::{image_height, module_height, point_height, Height};
use crate::point::AlgebraicPoint;
use crate::poly::{KPoly, XPoly};
use crate::ratfn::RationalFn;
use crate::resultant::{resultant, DEFAULT_SYLVESTER_LIMIT};
use crate::supersingular::is_supersingular;
use crate::DrinfeldModule;

/// Cap on the X-degree of the expanded monomials X^i·Φ(N)(X)^j.
pub const AUX_DEGREE_LIMIT: u64 = 1 << 16;

/// deg_T N = floor(log_q(L)/d) + 1, i.e. one more than the largest m with q^{md} ≤ L.
pub fn aux_degree_n(q: u32, d: usize, l: usize) -> usize {
    let step = (q as u128).saturating_pow(d as u32);
    let mut m = 0;
    let mut v: u128 = 1;
    while v.saturating_mul(step) <= l as u128 {
        v *= step;
        m += 1;
    }
    m + 1
}

/// L·[h(x) + h(Φ(N)(x))] + deg_T(N)·h(Φ)·h.
pub fn row_height_bound(
    l: usize,
    h_x: &Height,
    h_phi_n_x: &Height,
    deg_n: usize,
    h_phi: &Height,
    h_order: usize,
) -> Height {
    let int = |v: usize| BigRational::from_integer(v.into());
    int(l) * (h_x + h_phi_n_x) + int(deg_n * h_order) * h_phi
}

/// Φ(N)(X) = Σ c_i X^{q^i} as a polynomial in k[X].
fn additive_polynomial(phi: &DrinfeldModule, n: &APoly) -> Result<KPoly> {
    let fq = phi.fq();
    let img = phi.phi_image(n);
    let q = fq.q() as u64;
    let top = img.deg().unwrap_or(0) as u32;
    let deg = q.checked_pow(top).filter(|&v| v <= AUX_DEGREE_LIMIT).ok_or_else(|| {
        Error::resource("degree of Φ(N)(X)", format!("{q}^{top}"), AUX_DEGREE_LIMIT)
    })?;
    let mut v = vec![RationalFn::zero(fq); deg as usize + 1];
    for (i, c) in img.coeffs().iter().enumerate() {
        v[q.pow(i as u32) as usize] = c.clone();
    }
    Ok(KPoly::from_coeffs(fq, v))
}

/// X^i·F^j for 0 ≤ i, j < L, indexed i·L + j.
fn monomials(f: &KPoly, l: usize) -> Result<Vec<KPoly>> {
    let fq = f.fq();
    let total = (l as u64 - 1) * (f.deg().unwrap_or(0) as u64 + 1);
    if total > AUX_DEGREE_LIMIT {
        return Err(Error::resource("X-degree of G_N", total, AUX_DEGREE_LIMIT));
    }
    let mut powers = vec![KPoly::one(fq)];
    for j in 1..l {
        powers.push(&powers[j - 1] * f);
    }
    let mut out = Vec::with_capacity(l * l);
    for i in 0..l {
        for p in &powers {
            out.push(p.shift(i));
        }
    }
    Ok(out)
}

fn check_stride(x: &AlgebraicPoint, stride: usize) -> Result<()> {
    if stride != 1 && stride != x.d_pi() {
        return Err(Error::invalid(format!(
            "stride must be 1 or D_pi = {}, got {stride}",
            x.d_pi()
        )));
    }
    Ok(())
}

/// The t equations d^{(h'·s)}(Σ p_ij X^i Φ(N)(X)^j)(x) = 0, h' = 0..t−1, in the L² unknowns p_ij.
pub fn build_aux_system(
    phi: &DrinfeldModule,
    x: &AlgebraicPoint,
    l: usize,
    t: usize,
    n: &APoly,
    stride: usize,
) -> Result<SiegelSystem> {
    if l == 0 {
        return Err(Error::invalid("L must be at least 1"));
    }
    check_stride(x, stride)?;
    let d = x.degree();
    if l * l <= t * d {
        return Err(Error::Hypothesis(format!("L² = {} must exceed t·D = {}", l * l, t * d)));
    }
    let want = aux_degree_n(phi.fq().q(), phi.rank(), l);
    if n.deg() != Some(want) {
        return Err(Error::Hypothesis(format!(
            "deg_T N must be {want} for L = {l}, got {:?}",
            n.deg()
        )));
    }
    let f = additive_polynomial(phi, n)?;
    let mons = monomials(&f, l)?;
    let rows = (0..t)
        .map(|h| mons.iter().map(|m| m.divided_derivative(h * stride)).collect())
        .collect();
    SiegelSystem::new(x, l * l, rows)
}

/// An auxiliary polynomial together with every verified quantity.
#[derive(Clone, Debug)]
pub struct AuxPolynomial {
    pub l: usize,
    pub t: usize,
    pub stride: usize,
    pub n: APoly,
    /// p_ij at index [i][j].
    pub p: Vec<Vec<APoly>>,
    /// G_N cleared of denominators: G_N = g_n / denominator.
    pub g_n: XPoly,
    pub denominator: APoly,
    pub siegel: SiegelSolution,
    /// Largest m with P_x^m | G_N.
    pub multiplicity: usize,
    /// Consecutive vanishing divided derivatives at x (= multiplicity·D_pi).
    pub vanishing_order: usize,
    pub deg_x: usize,
    pub deg_x_limit: u64,
    pub h_x: Height,
    pub h_phi_n_x: Height,
    pub h_phi: Height,
    /// Row-height bound for h' = 0..t−1, to compare with `siegel.row_heights`.
    pub row_bounds: Vec<Height>,
}

impl AuxPolynomial {
    /// G(X, Y) = Σ p_ij X^i Y^j rendered with Y for the second variable.
    pub fn render_g(&self) -> String {
        let mut terms = Vec::new();
        for (i, row) in self.p.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut mono = Vec::new();
                if i > 0 {
                    mono.push(if i == 1 { "X".to_string() } else { format!("X^{i}") });
                }
                if j > 0 {
                    mono.push(if j == 1 { "Y".to_string() } else { format!("Y^{j}") });
                }
                let coef = if c.is_one() && !mono.is_empty() {
                    None
                } else if c.coeffs().iter().filter(|&&v| v != 0).count() > 1 && !mono.is_empty() {
                    Some(format!("({c})"))
                } else {
                    Some(c.to_string())
                };
                terms.push(coef.into_iter().chain(mono).collect::<Vec<_>>().join("*"));
            }
        }
        terms.join(" + ")
    }
}

/// Builds N, solves the Siegel system and verifies the vanishing order at x,
/// the X-degree bound, the coefficient-degree bound and every row-height bound.
pub fn build_aux_polynomial(
    phi: &DrinfeldModule,
    x: &AlgebraicPoint,
    l: usize,
    t: usize,
    stride: usize,
) -> Result<AuxPolynomial> {
    let fq = phi.fq();
    let deg_n = aux_degree_n(fq.q(), phi.rank(), l);
    let n = APoly::monomial(fq, 1, deg_n);
    let sys = build_aux_system(phi, x, l, t, &n, stride)?;
    let siegel = siegel_solve(&sys)?;
    let p: Vec<Vec<APoly>> = siegel.x.chunks(l).map(|c| c.to_vec()).collect();

    let f = additive_polynomial(phi, &n)?;
    let mons = monomials(&f, l)?;
    let g = mons
        .iter()
        .zip(&siegel.x)
        .fold(KPoly::zero(fq), |acc, (m, c)| &acc + &m.scale(&RationalFn::from_poly(c.clone())));
    if g.is_zero() {
        return Err(Error::Contract("G_N vanishes identically".into()));
    }
    let (g_n, denominator) = g.clear_denominators();

    let multiplicity = multiplicity_at(&g_n, x)?;
    let order = vanishing_order(&g_n, x)?;
    if order < t * stride {
        return Err(Error::Contract(format!(
            "G_N vanishes to order {order} at x, expected at least {}",
            t * stride
        )));
    }
    let deg_x = g_n.deg().unwrap();
    let q_d = (fq.q() as u64).saturating_pow(phi.rank() as u32);
    let deg_x_limit = q_d.saturating_mul(2 * (l * l) as u64);
    if deg_x as u64 >= deg_x_limit {
        return Err(Error::Contract(format!("deg_X G_N = {deg_x} is not below {deg_x_limit}")));
    }
    if let Some(c) = siegel.x.iter().filter_map(|c| c.deg()).find(|&e| e > siegel.delta) {
        return Err(Error::Contract(format!("coefficient degree {c} exceeds {}", siegel.delta)));
    }

    let h_x = point_height(x);
    let h_phi_n_x = image_height(x, phi, &n, DEFAULT_SYLVESTER_LIMIT)?;
    let h_phi = module_height(phi);
    let row_bounds: Vec<Height> = (0..t)
        .map(|h| row_height_bound(l, &h_x, &h_phi_n_x, deg_n, &h_phi, h * stride))
        .collect();
    for (h, (actual, bound)) in siegel.row_heights.iter().zip(&row_bounds).enumerate() {
        if actual > bound {
            return Err(Error::Contract(format!(
                "row {h} has height {actual}, above the bound {bound}"
            )));
        }
    }
    Ok(AuxPolynomial {
        l,
        t,
        stride,
        n,
        p,
        g_n,
        denominator,
        siegel,
        multiplicity,
        vanishing_order: order,
        deg_x,
        deg_x_limit,
        h_x,
        h_phi_n_x,
        h_phi,
        row_bounds,
    })
}

/// Outcome of the l-adic check on d^{(h'·s)}G_N(Φ(l)(x)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingReport {
    pub h_prime: usize,
    /// The norm ζ up to sign; `None` when it vanishes exactly.
    pub zeta: Option<RationalFn>,
    pub valuation: Option<i64>,
    /// t − h', or 0 when h' ≥ t and nothing is claimed.
    pub required: usize,
    pub satisfied: bool,
}

/// ζ = N_{k(x)/k}(d^{(h'·s)}G_N(Φ(l)(x))) and its l-adic valuation, which must
/// be at least t − h' unless ζ = 0.
pub fn supersingular_vanishing_check(
    aux: &AuxPolynomial,
    h_prime: usize,
    phi: &DrinfeldModule,
    l: &APoly,
    x: &AlgebraicPoint,
) -> Result<VanishingReport> {
    let l = l.to_monic();
    if !x.is_integral_at(&l) {
        return Err(Error::Hypothesis(format!("x is not integral at {l}")));
    }
    if !is_supersingular(phi, &l)? {
        return Err(Error::Hypothesis(format!("{l} is not a supersingular prime")));
    }
    let alg = x.algebra();
    let y = phi.phi_apply(&alg, &l, &alg.generator())?;
    let dg = aux.g_n.divided_derivative(h_prime * aux.stride);
    let val = dg.coeffs().iter().rev().fold(alg.zero(), |acc, c| {
        alg.add(&alg.mul(&acc, &y), &KPoly::constant(RationalFn::from_poly(c.clone())))
    });
    let required = aux.t.saturating_sub(h_prime);
    if alg.is_zero(&val) {
        return Ok(VanishingReport { h_prime, zeta: None, valuation: None, required, satisfied: true });
    }
    // Π v(β) = Res(P, V) / (lc(P)^{deg V}·c^D) for v = V/c
    let (v, c) = val.clear_denominators();
    let res = resultant(x.minpoly(), &v, DEFAULT_SYLVESTER_LIMIT)?;
    let lc = x.minpoly().lc().unwrap().pow(v.deg().unwrap() as u64);
    let den = &lc * &c.pow(x.degree() as u64);
    let zeta = RationalFn::new(res, den)?;
    let valuation = zeta.valuation(&l).expect("nonzero norm");
    Ok(VanishingReport {
        h_prime,
        zeta: Some(zeta),
        valuation: Some(valuation),
        required,
        satisfied: valuation >= required as i64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::Fq;
    use crate::parse::parse_apoly;
    use crate::rational::ratio;

    fn f2() -> Fq {
        Fq::prime(2).unwrap()
    }

    #[test]
    fn degree_of_n() {
        assert_eq!(aux_degree_n(2, 1, 1), 1);
        assert_eq!(aux_degree_n(2, 1, 2), 2);
        assert_eq!(aux_degree_n(2, 1, 3), 2);
        assert_eq!(aux_degree_n(2, 1, 4), 3);
        assert_eq!(aux_degree_n(2, 2, 3), 1);
        assert_eq!(aux_degree_n(3, 1, 9), 3);
    }

    #[test]
    fn row_bound_examples() {
        let r = |a, b| ratio(a, b);
        assert_eq!(row_height_bound(2, &r(1, 1), &r(5, 1), 2, &r(1, 1), 0), r(12, 1));
        assert_eq!(row_height_bound(2, &r(0, 1), &r(1, 1), 2, &r(0, 1), 0), r(2, 1));
        assert_eq!(row_height_bound(0, &r(3, 1), &r(3, 1), 2, &r(1, 1), 0), r(0, 1));
    }

    #[test]
    fn carlitz_system_shape() {
        let fq = f2();
        let c = DrinfeldModule::carlitz(fq);
        let x = AlgebraicPoint::parse(fq, "T*X + 1").unwrap();
        let n = parse_apoly(fq, "T^2").unwrap();
        let sys = build_aux_system(&c, &x, 2, 1, &n, 1).unwrap();
        assert_eq!((sys.equations(), sys.unknowns(), sys.degree()), (1, 4, 1));
        assert!(build_aux_system(&c, &x, 2, 1, &APoly::t(fq), 1).is_err());
        assert_eq!(build_aux_system(&c, &x, 2, 0, &n, 1).unwrap().equations(), 0);
        assert!(matches!(build_aux_system(&c, &x, 2, 4, &n, 1), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn quadratic_system_shape() {
        let fq = f2();
        let c = DrinfeldModule::carlitz(fq);
        let x = AlgebraicPoint::parse(fq, "X^2 + X + T").unwrap();
        let sys = build_aux_system(&c, &x, 3, 2, &APoly::monomial(fq, 1, 2), 1).unwrap();
        assert_eq!((sys.equations(), sys.unknowns()), (2, 9));
        assert!(sys.rows().iter().flatten().all(|e| e.deg().is_none_or(|d| d < 2)));
    }

    #[test]
    fn carlitz_aux_polynomial() {
        let fq = f2();
        let c = DrinfeldModule::carlitz(fq);
        let x = AlgebraicPoint::parse(fq, "T*X + 1").unwrap();
        let aux = build_aux_polynomial(&c, &x, 2, 1, 1).unwrap();
        assert!(aux.g_n.primitive_normalized().div_exact(x.minpoly()).is_some());
        assert!(aux.multiplicity >= 1);
        assert!(aux.deg_x < 2 * 2 * 4);
    }

    #[test]
    fn trivial_aux_polynomial() {
        let fq = f2();
        let c = DrinfeldModule::carlitz(fq);
        let x = AlgebraicPoint::parse(fq, "T*X + 1").unwrap();
        let aux = build_aux_polynomial(&c, &x, 1, 0, 1).unwrap();
        assert_eq!(aux.p, vec![vec![APoly::one(fq)]]);
        assert_eq!(aux.g_n, XPoly::one(fq));
    }

    #[test]
    fn quadratic_aux_polynomial() {
        let fq = f2();
        let c = DrinfeldModule::carlitz(fq);
        let x = AlgebraicPoint::parse(fq, "X^2 + X + T").unwrap();
        let aux = build_aux_polynomial(&c, &x, 3, 2, 1).unwrap();
        let p2 = x.minpoly().pow(2);
        assert!(aux.g_n.div_exact(&p2).is_some());
        assert!(aux.multiplicity >= 2);
    }

    #[test]
    fn vanishing_examples() {
        let fq = f2();
        let c = DrinfeldModule::carlitz(fq);
        let l = parse_apoly(fq, "T + 1").unwrap();
        for p in ["T*X + 1", "X + T"] {
            let x = AlgebraicPoint::parse(fq, p).unwrap();
            let aux = build_aux_polynomial(&c, &x, 2, 1, 1).unwrap();
            let r = supersingular_vanishing_check(&aux, 0, &c, &l, &x).unwrap();
            assert!(r.satisfied, "{p}: {r:?}");
            let r = supersingular_vanishing_check(&aux, 1, &c, &l, &x).unwrap();
            assert_eq!(r.required, 0);
            assert!(r.satisfied);
        }
        let x = AlgebraicPoint::parse(fq, "(T + 1)*X + 1").unwrap();
        let aux = build_aux_polynomial(&c, &x, 2, 1, 1).unwrap();
        assert!(matches!(
            supersingular_vanishing_check(&aux, 0, &c, &l, &x),
            Err(Error::Hypothesis(_))
        ));
    }
}
