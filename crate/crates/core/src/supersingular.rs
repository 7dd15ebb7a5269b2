//! Supersingular reduction and per-degree censuses of supersingular primes.

use num::{BigInt, BigRational, One, Signed, ToPrimitive};
use serde::Serialize;

use crate::algebra::{FqAlgebra, ResidueField};
use crate::apoly::APoly;
use crate::error::{Error, Result};
use crate::irreducible::enumerate_irreducibles;
use crate::ore::DrinfeldModule;
use crate::rational::{fmt_rational, ser_rational};

/// Every a_i is l-integral and a_d is an l-unit.
pub fn good_reduction(phi: &DrinfeldModule, l: &APoly) -> bool {
    let l = l.to_monic();
    let coeffs = phi.coeffs();
    coeffs.iter().all(|c| c.is_integral_at(&l)) && !l.divides(coeffs.last().unwrap().num())
}

/// Φ(l) ≡ τ^{d·deg l} in (A/(l)){τ}. A non-monic l is replaced by its monic associate.
pub fn is_supersingular(phi: &DrinfeldModule, l: &APoly) -> Result<bool> {
    let l = l.to_monic();
    let res = ResidueField::new(&l)?;
    if !good_reduction(phi, &l) {
        return Err(Error::BadReduction { place: l.to_string() });
    }
    let img = phi.phi_image_in(&res, &l)?;
    let top = phi.rank() * l.deg().unwrap();
    let c = img.coeffs();
    Ok(c.len() == top + 1
        && c[..top].iter().all(|x| res.is_zero(x))
        && c[top] == res.one())
}

/// Census of one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeScan {
    pub n: usize,
    pub count_total: u64,
    pub supersingular: Vec<APoly>,
    pub bad_reduction: Vec<APoly>,
}

impl DegreeScan {
    pub fn count_ss(&self) -> u64 {
        self.supersingular.len() as u64
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Verdict {
    Supersingular,
    Ordinary,
    Bad,
}

fn classify(phi: &DrinfeldModule, l: &APoly) -> Result<Verdict> {
    if !good_reduction(phi, l) {
        return Ok(Verdict::Bad);
    }
    Ok(if is_supersingular(phi, l)? {
        Verdict::Supersingular
    } else {
        Verdict::Ordinary
    })
}

/// Tests every monic irreducible of degree N, spread over `workers` threads.
/// The result does not depend on the number of workers.
pub fn scan_degree(phi: &DrinfeldModule, n: usize, workers: usize) -> Result<DegreeScan> {
    let primes = enumerate_irreducibles(phi.fq(), n)?;
    let workers = workers.max(1).min(primes.len().max(1));
    let chunk = primes.len().div_ceil(workers).max(1);
    let verdicts: Vec<Result<Vec<Verdict>>> = std::thread::scope(|s| {
        let handles: Vec<_> = primes
            .chunks(chunk)
            .map(|part| s.spawn(move || part.iter().map(|l| classify(phi, l)).collect()))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err(Error::Contract("scan worker panicked".into()))))
            .collect()
    });
    let mut out = DegreeScan {
        n,
        count_total: primes.len() as u64,
        supersingular: Vec::new(),
        bad_reduction: Vec::new(),
    };
    let flat = verdicts.into_iter().collect::<Result<Vec<_>>>()?.concat();
    for (l, v) in primes.into_iter().zip(flat) {
        match v {
            Verdict::Supersingular => out.supersingular.push(l),
            Verdict::Bad => out.bad_reduction.push(l),
            Verdict::Ordinary => {}
        }
    }
    Ok(out)
}

/// One row of a density report. Field names are part of the JSONL format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensityRow {
    #[serde(rename = "N")]
    pub n: usize,
    pub count_ss: u64,
    pub count_total: u64,
    #[serde(serialize_with = "ser_rational")]
    pub ratio: BigRational,
    /// c_1·q^{rN}/N, exact when rN is an integer and symbolic otherwise.
    pub rv_curve: String,
    #[serde(serialize_with = "ser_rational")]
    pub chebotarev_curve: BigRational,
    /// count_ss ≥ c_1·q^{rN}/N, decided exactly.
    pub satisfied: bool,
    /// N ≢ 1 mod η.
    pub skipped_by_eta: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportConfig {
    pub module: String,
    pub q: u32,
    pub d: usize,
    #[serde(serialize_with = "ser_rational")]
    pub r: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub c1: BigRational,
    pub eta: usize,
    pub n_max: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BadReduction {
    #[serde(rename = "N")]
    pub n: usize,
    pub primes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub config: ReportConfig,
    pub rows: Vec<DensityRow>,
    pub bad_reduction: Vec<BadReduction>,
}

/// Per-degree census for N = 1..=N_max against c_1·q^{rN}/N and q^N/(2dN).
pub fn density_report(
    phi: &DrinfeldModule,
    n_max: usize,
    r: &BigRational,
    c1: &BigRational,
    eta: usize,
    workers: usize,
) -> Result<ScanReport> {
    if n_max < 1 {
        return Err(Error::invalid("N_max must be at least 1"));
    }
    if !r.is_positive() || *r > BigRational::one() {
        return Err(Error::invalid("r must satisfy 0 < r <= 1"));
    }
    if !c1.is_positive() {
        return Err(Error::invalid("c_1 must be positive"));
    }
    if eta < 1 {
        return Err(Error::invalid("η must be at least 1"));
    }
    let q = phi.fq().q();
    let d = phi.rank();
    let mut rows = Vec::new();
    let mut bad = Vec::new();
    for n in 1..=n_max {
        let scan = scan_degree(phi, n, workers)?;
        let count_ss = scan.count_ss();
        let rn = r * BigRational::from_integer(n.into());
        let qn = BigRational::from_integer(num::pow(BigInt::from(q), n));
        rows.push(DensityRow {
            n,
            count_ss,
            count_total: scan.count_total,
            ratio: BigRational::new(count_ss.into(), scan.count_total.into()),
            rv_curve: rv_curve(q, c1, &rn, n),
            chebotarev_curve: qn / BigRational::from_integer((2 * d * n).into()),
            satisfied: exceeds_rv_curve(count_ss, q, c1, &rn, n),
            skipped_by_eta: (n - 1) % eta != 0,
        });
        if !scan.bad_reduction.is_empty() {
            bad.push(BadReduction {
                n,
                primes: scan.bad_reduction.iter().map(|l| l.to_string()).collect(),
            });
        }
    }
    Ok(ScanReport {
        config: ReportConfig {
            module: phi.describe(),
            q,
            d,
            r: r.clone(),
            c1: c1.clone(),
            eta,
            n_max,
        },
        rows,
        bad_reduction: bad,
    })
}

/// c_1·q^{rN}/N as text.
fn rv_curve(q: u32, c1: &BigRational, rn: &BigRational, n: usize) -> String {
    if rn.is_integer() {
        let e = rn.to_integer().to_usize().expect("small exponent");
        let v = c1 * BigRational::from_integer(num::pow(BigInt::from(q), e))
            / BigRational::from_integer(n.into());
        fmt_rational(&v)
    } else {
        format!("({})*{}^({})/{}", fmt_rational(c1), q, fmt_rational(rn), n)
    }
}

/// count ≥ c_1·q^{a/b}/N, i.e. (count·N/c_1)^b ≥ q^a, with exact integers.
fn exceeds_rv_curve(count: u64, q: u32, c1: &BigRational, rn: &BigRational, n: usize) -> bool {
    if count == 0 {
        return false;
    }
    let lhs = BigRational::from_integer((count * n as u64).into()) / c1;
    let a = rn.numer().to_usize().expect("small exponent");
    let b = rn.denom().to_usize().expect("small exponent");
    let lhs_pow = num::pow(lhs, b);
    let rhs = BigRational::from_integer(num::pow(BigInt::from(q), a));
    lhs_pow >= rhs
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
    fn good_reduction_examples() {
        let fq = f2();
        let t = APoly::t(fq);
        assert!(good_reduction(&DrinfeldModule::carlitz(fq), &t));
        assert!(!good_reduction(&DrinfeldModule::from_strs(fq, &["T", "1/T"]).unwrap(), &t));
        assert!(!good_reduction(&DrinfeldModule::from_strs(fq, &["T", "T"]).unwrap(), &t));
    }

    #[test]
    fn supersingular_examples() {
        let fq = f2();
        let c = DrinfeldModule::carlitz(fq);
        assert!(is_supersingular(&c, &APoly::t(fq)).unwrap());
        let m = DrinfeldModule::from_strs(fq, &["T", "1", "1"]).unwrap();
        assert!(!is_supersingular(&m, &APoly::t(fq)).unwrap());
        assert!(!is_supersingular(&m, &parse_apoly(fq, "T + 1").unwrap()).unwrap());
        assert!(is_supersingular(&m, &parse_apoly(fq, "T^2 + T + 1").unwrap()).unwrap());
        let bad = DrinfeldModule::from_strs(fq, &["T", "1/T"]).unwrap();
        assert!(matches!(
            is_supersingular(&bad, &APoly::t(fq)),
            Err(Error::BadReduction { .. })
        ));
    }

    #[test]
    fn unit_multiples_agree() {
        let f3 = Fq::prime(3).unwrap();
        let m = DrinfeldModule::from_strs(f3, &["T", "T + 1", "1"]).unwrap();
        for l in enumerate_irreducibles(f3, 2).unwrap() {
            assert_eq!(
                is_supersingular(&m, &l).unwrap(),
                is_supersingular(&m, &l.scale(2)).unwrap()
            );
        }
    }

    #[test]
    fn scans() {
        let fq = f2();
        let c = DrinfeldModule::carlitz(fq);
        let s = scan_degree(&c, 4, 3).unwrap();
        assert_eq!((s.count_ss(), s.count_total), (3, 3));
        let f3 = Fq::prime(3).unwrap();
        let s = scan_degree(&DrinfeldModule::carlitz(f3), 2, 2).unwrap();
        assert_eq!((s.count_ss(), s.count_total), (3, 3));
        let m = DrinfeldModule::from_strs(fq, &["T", "1", "1"]).unwrap();
        let s = scan_degree(&m, 1, 1).unwrap();
        assert_eq!((s.count_ss(), s.count_total), (0, 2));
    }

    #[test]
    fn carlitz_report_rows_satisfied() {
        let c = DrinfeldModule::carlitz(f2());
        let rep = density_report(&c, 6, &ratio(1, 1), &ratio(1, 2), 1, 2).unwrap();
        assert!(rep.rows.iter().all(|r| r.satisfied && r.ratio == ratio(1, 1)));
        assert_eq!(rep.rows[3].rv_curve, "2");
        assert_eq!(rep.rows[3].chebotarev_curve, ratio(2, 1));
    }

    #[test]
    fn fractional_exponent_comparison() {
        // q^{1/2} = sqrt(2) ≈ 1.414: count 1 with N = 1, c_1 = 1 is below it, 2 is above
        let r = ratio(1, 2);
        assert!(!exceeds_rv_curve(1, 2, &ratio(1, 1), &r, 1));
        assert!(exceeds_rv_curve(2, 2, &ratio(1, 1), &r, 1));
        assert_eq!(rv_curve(2, &ratio(1, 1), &r, 1), "(1)*2^(1/2)/1");
    }
}
