//! Weil heights, canonical heights with certified error, torsion, Northcott.

use std::collections::BTreeSet;

use num::{BigInt, BigRational, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::FqAlgebra;
use crate::apoly::APoly;
use crate::error::{Error, Result};
use crate::fq::Fq;
use crate::ore::DrinfeldModule;
use crate::point::AlgebraicPoint;
use crate::poly::{UPoly, XPoly};
use crate::ratfn::RationalFn;
use crate::rational::{ratio, ser_rational};
use crate::resultant::{resultant, DEFAULT_SYLVESTER_LIMIT};

/// Exact nonnegative rational height.
pub type Height = BigRational;

/// Height of [c_0 : ... : c_n] ∈ P^n(k): clear denominators, remove the gcd,
/// take the largest T-degree.
pub fn projective_height(coords: &[RationalFn]) -> Result<Height> {
    let deg = projective_degree(coords)?;
    Ok(BigRational::from_integer(deg.into()))
}

fn projective_degree(coords: &[RationalFn]) -> Result<usize> {
    if coords.iter().all(|c| c.is_zero()) {
        return Err(Error::invalid("height of the zero vector"));
    }
    let fq = coords[0].fq();
    let l = coords
        .iter()
        .fold(APoly::one(fq), |acc, c| acc.lcm(c.den()));
    let ints: Vec<APoly> = coords
        .iter()
        .map(|c| c.num() * &l.div_exact(c.den()).expect("lcm multiple"))
        .collect();
    let g = ints.iter().fold(APoly::zero(fq), |acc, a| acc.gcd(a));
    let gd = g.deg().expect("nonzero vector");
    Ok(ints.iter().filter_map(|a| a.deg()).max().unwrap() - gd)
}

/// Height of a primitive vector in A^n: its largest coefficient degree.
fn primitive_degree(p: &XPoly) -> usize {
    p.max_coeff_deg().unwrap_or(0)
}

/// h(x) = (max T-degree of the primitive minimal polynomial) / D.
pub fn point_height(x: &AlgebraicPoint) -> Height {
    ratio(primitive_degree(x.minpoly()) as u64, x.degree() as u64)
}

/// h(Φ) = h([1 : a_0 : ... : a_d]).
pub fn module_height(phi: &DrinfeldModule) -> Height {
    let mut v = vec![RationalFn::one(phi.fq())];
    v.extend(phi.coeffs().iter().cloned());
    projective_height(&v).expect("nonzero vector")
}

/// Upper bound 2(d+1)h(Φ) for sup |h − ĥ|.
pub fn gamma_bound(phi: &DrinfeldModule) -> Height {
    module_height(phi) * BigRational::from_integer(BigInt::from(2 * (phi.rank() + 1)))
}

/// Primitive Res_Y(P_x(Y), X − Φ(a)(Y)): the polynomial whose roots are the
/// Φ(a)(β) over the roots β of P_x, counted with multiplicity.
///
/// `limit` caps the nominal Sylvester dimension D + q^{d·deg a}. The
/// computation itself reduces Φ(a)(Y) modulo P_x first, which does not change
/// the resultant up to a unit and keeps the actual matrix at most 2D − 1 wide.
pub fn image_charpoly(
    x: &AlgebraicPoint,
    phi: &DrinfeldModule,
    a: &APoly,
    limit: usize,
) -> Result<XPoly> {
    if a.is_zero() {
        return Err(Error::invalid("image under Φ(0)"));
    }
    let fq = x.fq();
    nominal_dimension(x, phi, a, limit)?;
    let alg = x.algebra();
    let g = phi.phi_apply(&alg, a, &alg.generator())?;
    let (num, c) = g.clear_denominators();
    // H(Y) = c·X − num(Y) with coefficients in A[X]
    let mut hc: Vec<XPoly> = num.coeffs().iter().map(|n| XPoly::constant(-n)).collect();
    if hc.is_empty() {
        hc.push(XPoly::zero(fq));
    }
    hc[0] = &hc[0] + &XPoly::monomial(c, 1);
    let h = UPoly::from_coeffs(fq, hc);
    let p: UPoly<XPoly> = x.minpoly().map(fq, |c| XPoly::constant(c.clone()));
    let r = resultant(&p, &h, limit)?;
    if r.deg() != Some(x.degree()) {
        return Err(Error::Contract(format!(
            "image polynomial has X-degree {:?}, expected {}",
            r.deg(),
            x.degree()
        )));
    }
    Ok(r.primitive_normalized())
}

fn nominal_dimension(x: &AlgebraicPoint, phi: &DrinfeldModule, a: &APoly, limit: usize) -> Result<()> {
    let q = phi.fq().q() as u128;
    let exp = (phi.rank() * a.deg().unwrap_or(0)) as u32;
    let nominal = q
        .checked_pow(exp)
        .and_then(|v| v.checked_add(x.degree() as u128));
    match nominal {
        Some(n) if n <= limit as u128 => Ok(()),
        _ => Err(Error::resource(
            "Sylvester dimension",
            format!("{} + {}^{}", x.degree(), q, exp),
            limit,
        )),
    }
}

/// h(Φ(a)(x)).
pub fn image_height(x: &AlgebraicPoint, phi: &DrinfeldModule, a: &APoly, limit: usize) -> Result<Height> {
    let f = image_charpoly(x, phi, a, limit)?;
    Ok(ratio(primitive_degree(&f) as u64, x.degree() as u64))
}

/// The image point Φ(a)(x), as the primitive minimal polynomial of Φ(a)(x)
/// when the characteristic polynomial is a power of it.
pub fn image_point(x: &AlgebraicPoint, phi: &DrinfeldModule, a: &APoly, limit: usize) -> Result<AlgebraicPoint> {
    let f = image_charpoly(x, phi, a, limit)?;
    let d = f.deg().unwrap();
    let fk = f.to_k();
    let g = fk.gcd(&fk.derivative());
    let sqf = if g.deg() == Some(0) || f.derivative().is_zero() {
        f.clone()
    } else {
        let (n, _) = fk.divmod(&g)?.0.clear_denominators();
        n.primitive_normalized()
    };
    let m = sqf.deg().unwrap();
    if d % m != 0 || sqf.pow((d / m) as u64) != f {
        return Err(Error::Contract(format!(
            "image polynomial {f} is not a power of an irreducible factor; pass the full cycle"
        )));
    }
    AlgebraicPoint::new(sqf)
}

/// ĥ(x) ∈ [max(0, estimate − error), estimate + error].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeightInterval {
    #[serde(serialize_with = "ser_rational")]
    pub estimate: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub error: BigRational,
    pub n: u32,
}

impl HeightInterval {
    pub fn lower(&self) -> BigRational {
        let l = &self.estimate - &self.error;
        if l.is_negative() {
            BigRational::zero()
        } else {
            l
        }
    }

    pub fn upper(&self) -> BigRational {
        &self.estimate + &self.error
    }

    pub fn contains(&self, v: &BigRational) -> bool {
        *v >= self.lower() && *v <= self.upper()
    }

    pub fn intersects(&self, o: &HeightInterval) -> bool {
        self.lower() <= o.upper() && o.lower() <= self.upper()
    }

    /// The interval for c·ĥ.
    pub fn scaled(&self, c: &BigRational) -> HeightInterval {
        HeightInterval {
            estimate: &self.estimate * c,
            error: &self.error * c,
            n: self.n,
        }
    }
}

/// Estimate h(Φ(T^n)(x))/q^{dn} with error γ/q^{dn}.
pub fn canonical_height(x: &AlgebraicPoint, phi: &DrinfeldModule, n: u32) -> Result<HeightInterval> {
    canonical_height_with_limit(x, phi, n, DEFAULT_SYLVESTER_LIMIT)
}

pub fn canonical_height_with_limit(
    x: &AlgebraicPoint,
    phi: &DrinfeldModule,
    n: u32,
    limit: usize,
) -> Result<HeightInterval> {
    let fq = phi.fq();
    let a = APoly::monomial(fq, 1, n as usize);
    let h = image_height(x, phi, &a, limit)?;
    let scale = BigRational::from_integer(num::pow(BigInt::from(fq.q()), phi.rank() * n as usize));
    Ok(HeightInterval {
        estimate: h / &scale,
        error: gamma_bound(phi) / &scale,
        n,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TorsionStatus {
    /// Φ(a)(x) = 0 for the given monic a.
    Torsion(APoly),
    NonTorsionCertified(HeightInterval),
    Unknown(Option<HeightInterval>),
}

/// Default largest q^B the torsion search will walk.
pub const TORSION_SEARCH_LIMIT: u64 = 1 << 20;

/// First monic a with deg a ≤ B and Φ(a)(x) = 0, in degree then coefficient order.
pub fn torsion_witness(x: &AlgebraicPoint, phi: &DrinfeldModule, b: usize) -> Result<Option<APoly>> {
    let fq = phi.fq();
    let q = fq.q() as u64;
    if q.checked_pow(b as u32).is_none_or(|v| v > TORSION_SEARCH_LIMIT) {
        return Err(Error::resource("torsion search size", format!("{q}^{b}"), TORSION_SEARCH_LIMIT));
    }
    let alg = x.algebra();
    let ring = crate::ore::OreRing::new(&alg);
    let phi_t = phi.phi_t_in(&alg)?;
    // ξ_j = Φ(T^j)(x)
    let mut xis = vec![alg.generator()];
    for _ in 0..b {
        let next = ring.apply(&phi_t, xis.last().unwrap());
        xis.push(next);
    }
    for deg in 0..=b {
        for code in 0..q.pow(deg as u32) {
            let a = APoly::monic_from_code(fq, deg, code);
            let mut acc = alg.zero();
            for (j, &c) in a.coeffs().iter().enumerate() {
                if c != 0 {
                    acc = alg.add(&acc, &alg.scale(&xis[j], c));
                }
            }
            if alg.is_zero(&acc) {
                return Ok(Some(a));
            }
        }
    }
    Ok(None)
}

/// Torsion search up to degree B, then certification at depth n.
pub fn torsion_status(x: &AlgebraicPoint, phi: &DrinfeldModule, b: usize, n: u32) -> Result<TorsionStatus> {
    if b < 1 {
        return Err(Error::invalid("search degree B must be at least 1"));
    }
    let interval = match canonical_height(x, phi, n) {
        Ok(i) => Some(i),
        Err(Error::Resource { .. }) => None,
        Err(e) => return Err(e),
    };
    match torsion_witness(x, phi, b)? {
        Some(a) => {
            if interval.as_ref().is_some_and(|i| i.lower().is_positive()) {
                return Err(Error::Contract(format!(
                    "torsion witness {a} but certified positive canonical height"
                )));
            }
            Ok(TorsionStatus::Torsion(a))
        }
        None => Ok(match interval {
            Some(i) if i.lower().is_positive() => TorsionStatus::NonTorsionCertified(i),
            other => TorsionStatus::Unknown(other),
        }),
    }
}

/// Default ceiling on the number of candidate polynomials in a Northcott scan.
pub const NORTHCOTT_LIMIT: u64 = 1 << 22;

#[derive(Clone, Debug)]
pub struct NorthcottResult {
    /// One entry per minimal polynomial, ordered by (D, polynomial).
    pub points: Vec<AlgebraicPoint>,
    /// Number of distinct points of k̄, Σ D_sep over the minimal polynomials.
    pub root_count: u64,
    /// Number of candidate polynomials examined.
    pub candidates: u64,
}

/// All points of degree ≤ D_max and height ≤ χ.
pub fn northcott_enumerate(fq: Fq, d_max: usize, chi: usize) -> Result<NorthcottResult> {
    northcott_enumerate_with_limit(fq, d_max, chi, NORTHCOTT_LIMIT)
}

pub fn northcott_enumerate_with_limit(fq: Fq, d_max: usize, chi: usize, limit: u64) -> Result<NorthcottResult> {
    if d_max < 1 || chi < 1 {
        return Err(Error::invalid("D_max and χ must be at least 1"));
    }
    let q = fq.q() as u128;
    let exp = ((d_max * chi + 1) * (d_max + 1)) as u32;
    if q.checked_pow(exp).is_none_or(|v| v > limit as u128) {
        return Err(Error::resource("Northcott candidates", format!("{q}^{exp}"), limit));
    }
    let mut seen = BTreeSet::new();
    let mut points = Vec::new();
    let mut root_count = 0u64;
    let mut candidates = 0u64;
    for d in 1..=d_max {
        let m = d * chi;
        for p in primitive_polys(fq, d, m) {
            candidates += 1;
            if d > 1 && has_factor(&p, d / 2) {
                continue;
            }
            let Ok(pt) = AlgebraicPoint::new(p.clone()) else {
                continue;
            };
            if seen.insert(pt.minpoly().clone()) {
                root_count += pt.d_sep() as u64;
                points.push(pt);
            }
        }
    }
    Ok(NorthcottResult { points, root_count, candidates })
}

/// Primitive normalized polynomials of X-degree exactly `d` with coefficient degree ≤ m.
fn primitive_polys(fq: Fq, d: usize, m: usize) -> Vec<XPoly> {
    let q = fq.q() as u64;
    let per = q.pow((m + 1) as u32);
    let total = per.pow((d + 1) as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let mut coeffs = Vec::with_capacity(d + 1);
        for _ in 0..=d {
            coeffs.push(APoly::from_code(fq, m + 1, c % per));
            c /= per;
        }
        if coeffs[d].lc() != 1 {
            continue;
        }
        let p = XPoly::from_coeffs(fq, coeffs);
        if p.content().is_one() {
            out.push(p);
        }
    }
    out
}

/// True iff P has a primitive factor of X-degree 1..=e over A (hence over k).
/// Factors of a primitive polynomial have coefficient degrees bounded by those of P.
fn has_factor(p: &XPoly, e: usize) -> bool {
    let m = p.max_coeff_deg().unwrap_or(0);
    let fq = p.fq();
    (1..=e).any(|k| primitive_polys(fq, k, m).iter().any(|f| p.div_exact(f).is_some()))
}

/// h of a rational value.
pub fn rational_height(x: &RationalFn) -> Height {
    projective_height(&[RationalFn::one(x.fq()), x.clone()]).expect("nonzero")
}

/// Convert a small rational to f64 for display.
pub fn approx(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ratfn;

    fn f2() -> Fq {
        Fq::prime(2).unwrap()
    }

    fn k(s: &str) -> RationalFn {
        parse_ratfn(f2(), s).unwrap()
    }

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn projective_examples() {
        assert_eq!(projective_height(&[k("1"), k("T")]).unwrap(), int(1));
        assert_eq!(projective_height(&[k("1"), k("1")]).unwrap(), int(0));
        assert_eq!(projective_height(&[k("1"), k("1/T")]).unwrap(), int(1));
        assert!(projective_height(&[k("0"), k("0")]).is_err());
    }

    #[test]
    fn point_examples() {
        let fq = f2();
        let h = |s| point_height(&AlgebraicPoint::parse(fq, s).unwrap());
        assert_eq!(h("X + T"), int(1));
        assert_eq!(h("X + 1"), int(0));
        assert_eq!(h("X^2 + X + T"), ratio(1, 2));
    }

    #[test]
    fn module_heights() {
        let fq = f2();
        assert_eq!(module_height(&DrinfeldModule::carlitz(fq)), int(1));
        let m = DrinfeldModule::from_strs(fq, &["T", "T^3", "1"]).unwrap();
        assert_eq!(module_height(&m), int(3));
        let m = DrinfeldModule::from_strs(fq, &["T", "1/T"]).unwrap();
        assert_eq!(module_height(&m), int(2));
        assert_eq!(gamma_bound(&DrinfeldModule::carlitz(fq)), int(4));
        let r2 = DrinfeldModule::from_strs(fq, &["T", "1", "1"]).unwrap();
        assert_eq!(gamma_bound(&r2), int(6));
        let r1 = DrinfeldModule::from_strs(fq, &["T", "T^3"]).unwrap();
        assert_eq!(gamma_bound(&r1), int(12));
    }

    #[test]
    fn charpoly_examples() {
        let fq = f2();
        let c = DrinfeldModule::carlitz(fq);
        let t = APoly::t(fq);
        let x = AlgebraicPoint::parse(fq, "X + T").unwrap();
        assert_eq!(image_charpoly(&x, &c, &t, 100).unwrap().to_string(), "X");
        let one = AlgebraicPoint::parse(fq, "X + 1").unwrap();
        assert_eq!(image_charpoly(&one, &c, &t, 100).unwrap().to_string(), "X + T + 1");
    }

    #[test]
    fn canonical_examples() {
        let fq = f2();
        let c = DrinfeldModule::carlitz(fq);
        let x = AlgebraicPoint::parse(fq, "X + T").unwrap();
        let i = canonical_height(&x, &c, 1).unwrap();
        assert_eq!((i.estimate.clone(), i.error.clone()), (int(0), int(2)));
        let y = AlgebraicPoint::parse(fq, "T*X + 1").unwrap();
        let i = canonical_height(&y, &c, 2).unwrap();
        assert_eq!(i.estimate, ratio(5, 4));
        assert_eq!(i.error, int(1));
        assert_eq!(i.lower(), ratio(1, 4));
        assert!(matches!(
            canonical_height_with_limit(&y, &c, 12, 4096),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn torsion_examples() {
        let fq = f2();
        let c = DrinfeldModule::carlitz(fq);
        let st = |s, b, n| torsion_status(&AlgebraicPoint::parse(fq, s).unwrap(), &c, b, n).unwrap();
        assert_eq!(st("X + T", 1, 1), TorsionStatus::Torsion(APoly::t(fq)));
        assert_eq!(st("X + 1", 2, 1), TorsionStatus::Torsion(k("T^2 + T").num().clone()));
        match st("T*X + 1", 3, 2) {
            TorsionStatus::NonTorsionCertified(i) => assert_eq!(i.lower(), ratio(1, 4)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn northcott_small() {
        let r = northcott_enumerate(f2(), 1, 1).unwrap();
        assert_eq!(r.points.len(), 8);
        assert_eq!(r.root_count, 8);
    }
}
