//! Constructive Siegel lemma: a small nonzero A-solution of a linear system
//! with coefficients in k(x).

use num::{BigRational, ToPrimitive};
use rand::Rng;
use serde::Serialize;

use crate::algebra::PointAlgebra;
use crate::apoly::APoly;
use crate::error::{Error, Result};
use crate::fq::Fq;
use crate::heights::Height;
use crate::point::AlgebraicPoint;
use crate::poly::{Coefficient, KPoly, UPoly, XPoly};
use crate::ratfn::RationalFn;
use crate::rational::{ratio, ser_rational};
use crate::resultant::{resultant, DEFAULT_SYLVESTER_LIMIT};

/// Cap on rows × columns of the F_q matrix.
pub const SIEGEL_CELL_LIMIT: u64 = 1 << 26;

/// M equations Σ_i a_{j,i} x_i = 0 in N unknowns, with a_{j,i} ∈ k(x) stored as
/// polynomials of degree < D in the generator, i.e. coordinates in 1, x, ..., x^{D−1}.
#[derive(Clone, Debug)]
pub struct SiegelSystem {
    x: AlgebraicPoint,
    rows: Vec<Vec<KPoly>>,
    n: usize,
}

impl SiegelSystem {
    /// Entries are reduced modulo the minimal polynomial of x.
    pub fn new(x: &AlgebraicPoint, n: usize, rows: Vec<Vec<KPoly>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("a Siegel system needs at least one unknown"));
        }
        let alg = x.algebra();
        let rows = rows
            .into_iter()
            .map(|r| {
                if r.len() != n {
                    return Err(Error::invalid(format!("row of length {} in a system with {n} unknowns", r.len())));
                }
                Ok(r.iter().map(|e| alg.reduce(e)).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SiegelSystem { x: x.clone(), rows, n })
    }

    /// A system with coefficients in k (D = 1).
    pub fn over_k(fq: Fq, n: usize, rows: Vec<Vec<RationalFn>>) -> Result<Self> {
        let x = AlgebraicPoint::from_rational(&RationalFn::zero(fq));
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(KPoly::constant).collect())
            .collect();
        Self::new(&x, n, rows)
    }

    pub fn fq(&self) -> Fq {
        self.x.fq()
    }

    pub fn point(&self) -> &AlgebraicPoint {
        &self.x
    }

    pub fn unknowns(&self) -> usize {
        self.n
    }

    pub fn equations(&self) -> usize {
        self.rows.len()
    }

    pub fn degree(&self) -> usize {
        self.x.degree()
    }

    pub fn rows(&self) -> &[Vec<KPoly>] {
        &self.rows
    }

    /// The coordinates of a_{j,i} in the basis 1, x, ..., x^{D−1}.
    pub fn coords(&self, j: usize, i: usize) -> Vec<RationalFn> {
        (0..self.degree()).map(|r| self.rows[j][i].coeff(r)).collect()
    }

    pub fn row_heights(&self) -> Result<Vec<Height>> {
        self.rows.iter().map(|r| row_height(&self.x, r)).collect()
    }
}

/// h([1 : a_1 : ... : a_N]) for a_i ∈ k(x) given as polynomials in the generator.
///
/// Computed exactly from the norm: Res_Y(P(Y), c + Σ_i c·a_i(Y) Z^i) ∈ A[Z]
/// has projective height D·h, since Gauss norms are multiplicative.
pub fn row_height(x: &AlgebraicPoint, row: &[KPoly]) -> Result<Height> {
    let fq = x.fq();
    let mut entries = vec![KPoly::one(fq)];
    entries.extend(row.iter().cloned());
    let c = entries
        .iter()
        .flat_map(|e| e.coeffs().iter())
        .fold(APoly::one(fq), |acc, r| acc.lcm(r.den()));
    let cleared: Vec<XPoly> = entries
        .iter()
        .map(|e| e.map(fq, |r| r.num() * &c.div_exact(r.den()).expect("lcm multiple")))
        .collect();
    let ydeg = cleared.iter().filter_map(|b| b.deg()).max().unwrap_or(0);
    // F(Y, Z): coefficient of Y^r is Σ_i B_i[r] Z^i
    let f: UPoly<XPoly> = UPoly::from_coeffs(
        fq,
        (0..=ydeg)
            .map(|r| XPoly::from_coeffs(fq, cleared.iter().map(|b| b.coeff(r)).collect()))
            .collect(),
    );
    let p: UPoly<XPoly> = x.minpoly().map(fq, |a| XPoly::constant(a.clone()));
    let norm = resultant(&p, &f, DEFAULT_SYLVESTER_LIMIT)?;
    if norm.is_zero() {
        return Err(Error::Contract("vanishing norm of a row with entry 1".into()));
    }
    let top = norm.max_coeff_deg().unwrap();
    let content = norm.content().deg().unwrap();
    Ok(ratio((top - content) as u64, x.degree() as u64))
}

/// D·Σ_j h(row_j) / (N − M·D). Requires N > M·D.
pub fn siegel_bound(sys: &SiegelSystem) -> Result<BigRational> {
    let (n, m, d) = (sys.unknowns(), sys.equations(), sys.degree());
    if n <= m * d {
        return Err(Error::Hypothesis(format!(
            "Siegel lemma needs N > M·D, got N = {n}, M·D = {}",
            m * d
        )));
    }
    let sigma: BigRational = sys.row_heights()?.into_iter().sum();
    Ok(sigma * BigRational::from_integer(d.into()) / BigRational::from_integer((n - m * d).into()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SiegelSolution {
    pub x: Vec<APoly>,
    /// floor of the bound; every deg_T x_i is at most this.
    pub delta: usize,
    #[serde(serialize_with = "ser_rational")]
    pub bound: BigRational,
    #[serde(serialize_with = "ser_heights")]
    pub row_heights: Vec<Height>,
}

fn ser_heights<S: serde::Serializer>(v: &[Height], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for h in v {
        seq.serialize_element(&crate::rational::fmt_rational(h))?;
    }
    seq.end()
}

/// Nonzero x ∈ A^N with Σ_i a_{j,i} x_i = 0 for all j and deg_T x_i ≤ floor(bound).
///
/// Each x_i is written with δ + 1 unknown F_q coefficients, ordered (i, m) with
/// i major. Every k-coordinate of every equation is cleared of denominators and
/// split by powers of T, giving an F_q system. The returned vector is the
/// kernel element with a 1 in the first pivot-free column and 0 in the others.
pub fn siegel_solve(sys: &SiegelSystem) -> Result<SiegelSolution> {
    let fq = sys.fq();
    let bound = siegel_bound(sys)?;
    let row_heights = sys.row_heights()?;
    let delta = bound
        .floor()
        .to_integer()
        .to_usize()
        .ok_or_else(|| Error::resource("Siegel degree bound", bound.to_string(), usize::MAX))?;
    let n = sys.unknowns();
    let cols = n * (delta + 1);

    // integral coefficient rows b_{·,i} ∈ A, one per (equation, coordinate)
    let mut int_rows: Vec<Vec<APoly>> = Vec::new();
    for j in 0..sys.equations() {
        for r in 0..sys.degree() {
            let coords: Vec<RationalFn> = (0..n).map(|i| sys.rows[j][i].coeff(r)).collect();
            if coords.iter().all(|c| c.is_zero()) {
                continue;
            }
            let c = coords.iter().fold(APoly::one(fq), |acc, e| acc.lcm(e.den()));
            int_rows.push(
                coords
                    .iter()
                    .map(|e| e.num() * &c.div_exact(e.den()).expect("lcm multiple"))
                    .collect(),
            );
        }
    }
    let mut matrix: Vec<Vec<u32>> = Vec::new();
    for b in &int_rows {
        let top = b.iter().filter_map(|a| a.deg()).max().unwrap_or(0) + delta;
        let cells = (matrix.len() as u64 + top as u64 + 1) * cols as u64;
        if cells > SIEGEL_CELL_LIMIT {
            return Err(Error::resource("Siegel matrix cells", cells, SIEGEL_CELL_LIMIT));
        }
        for s in 0..=top {
            let mut row = vec![0u32; cols];
            for (i, bi) in b.iter().enumerate() {
                for m in 0..=delta.min(s) {
                    row[i * (delta + 1) + m] = bi.coeff(s - m);
                }
            }
            if row.iter().any(|&v| v != 0) {
                matrix.push(row);
            }
        }
    }
    let pivots = rref(fq, &mut matrix);
    let free = (0..cols)
        .find(|c| !pivots.contains(c))
        .ok_or_else(|| Error::Contract("Siegel system has trivial kernel within the degree bound".into()))?;
    let mut u = vec![0u32; cols];
    u[free] = 1;
    for (row, &pc) in pivots.iter().enumerate() {
        u[pc] = fq.neg(matrix[row][free]);
    }
    let x: Vec<APoly> = (0..n)
        .map(|i| APoly::from_coeffs(fq, u[i * (delta + 1)..(i + 1) * (delta + 1)].to_vec()))
        .collect();
    verify(sys, &x)?;
    Ok(SiegelSolution { x, delta, bound, row_heights })
}

/// A random system of `m` equations in `n` unknowns over k(x). Every coordinate
/// is a/b with deg a ≤ `max_deg`, b monic of degree ≤ 1.
pub fn random_system<R: Rng>(x: &AlgebraicPoint, m: usize, n: usize, max_deg: usize, rng: &mut R) -> Result<SiegelSystem> {
    let fq = x.fq();
    let q = fq.q() as u64;
    let span = q.checked_pow(max_deg as u32 + 1).expect("small degree bound");
    let coord = |rng: &mut R| {
        let num = APoly::from_code(fq, max_deg + 1, rng.gen_range(0..span));
        let den = APoly::monic_from_code(fq, rng.gen_range(0..=1), rng.gen_range(0..q));
        RationalFn::new(num, den).expect("monic denominator")
    };
    let rows = (0..m)
        .map(|_| {
            (0..n)
                .map(|_| KPoly::from_coeffs(fq, (0..x.degree()).map(|_| coord(rng)).collect()))
                .collect()
        })
        .collect();
    SiegelSystem::new(x, n, rows)
}

/// Reduced row echelon form in place; returns the pivot column of each nonzero row.
fn rref(fq: Fq, m: &mut Vec<Vec<u32>>) -> Vec<usize> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        let inv = fq.inv(m[r][c]).expect("nonzero pivot");
        for v in m[r].iter_mut() {
            *v = fq.mul(*v, inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                if pv != 0 {
                    *v = fq.sub(*v, fq.mul(f, pv));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    pivots
}

fn verify(sys: &SiegelSystem, x: &[APoly]) -> Result<()> {
    if x.iter().all(|v| v.is_zero()) {
        return Err(Error::Contract("Siegel solution is zero".into()));
    }
    let fq = sys.fq();
    let alg: PointAlgebra = sys.x.algebra();
    for (j, row) in sys.rows.iter().enumerate() {
        let s = row.iter().zip(x).fold(KPoly::zero(fq), |acc, (a, xi)| {
            acc.add(&a.scale(&RationalFn::from_poly(xi.clone())))
        });
        if !alg.reduce(&s).is_zero() {
            return Err(Error::Contract(format!("Siegel solution violates equation {j}")));
        }
    }
    Ok(())
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_kpoly, parse_ratfn};

    fn f2() -> Fq {
        Fq::prime(2).unwrap()
    }

    #[test]
    fn single_row_over_k() {
        let fq = f2();
        let sys = SiegelSystem::over_k(fq, 2, vec![vec![RationalFn::one(fq), RationalFn::t(fq)]]).unwrap();
        assert_eq!(sys.row_heights().unwrap(), vec![ratio(1, 1)]);
        let sol = siegel_solve(&sys).unwrap();
        assert_eq!(sol.delta, 1);
        assert_eq!(sol.x, vec![APoly::t(fq), APoly::one(fq)]);
    }

    #[test]
    fn empty_and_zero_systems() {
        let fq = f2();
        let sys = SiegelSystem::over_k(fq, 3, vec![]).unwrap();
        let sol = siegel_solve(&sys).unwrap();
        assert_eq!(sol.delta, 0);
        assert_eq!(sol.x, vec![APoly::one(fq), APoly::zero(fq), APoly::zero(fq)]);
        let zero = vec![vec![RationalFn::zero(fq); 2]];
        let sol = siegel_solve(&SiegelSystem::over_k(fq, 2, zero).unwrap()).unwrap();
        assert_eq!(sol.x, vec![APoly::one(fq), APoly::zero(fq)]);
    }

    #[test]
    fn underdetermined_hypothesis() {
        let fq = f2();
        let sys = SiegelSystem::over_k(fq, 1, vec![vec![RationalFn::t(fq)]]).unwrap();
        assert!(matches!(siegel_solve(&sys), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn row_height_matches_projective_height_over_k() {
        let fq = f2();
        let row: Vec<KPoly> = ["1/T", "T^2/(T + 1)"]
            .iter()
            .map(|s| KPoly::constant(parse_ratfn(fq, s).unwrap()))
            .collect();
        let x = AlgebraicPoint::from_rational(&RationalFn::zero(fq));
        // [1 : 1/T : T^2/(T+1)] = [T^2 + T : T + 1 : T^3]
        assert_eq!(row_height(&x, &row).unwrap(), ratio(3, 1));
    }

    #[test]
    fn row_height_of_generator_is_point_height() {
        let fq = f2();
        let x = AlgebraicPoint::parse(fq, "X^2 + X + T").unwrap();
        let y = parse_kpoly(fq, "X").unwrap();
        assert_eq!(row_height(&x, &[y]).unwrap(), ratio(1, 2));
    }

    #[test]
    fn solves_over_quadratic_point() {
        let fq = f2();
        let x = AlgebraicPoint::parse(fq, "X^2 + X + T").unwrap();
        let e = |s: &str| parse_kpoly(fq, s).unwrap();
        let sys = SiegelSystem::new(&x, 5, vec![vec![e("1"), e("X"), e("T*X + 1"), e("X^2"), e("1/T")]]).unwrap();
        let sol = siegel_solve(&sys).unwrap();
        assert!(sol.x.iter().all(|v| v.deg().is_none_or(|d| d <= sol.delta)));
    }
}
