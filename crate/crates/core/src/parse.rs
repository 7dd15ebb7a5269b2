//! Text grammar for elements of A, k, A[X] and k[X].
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := atom ['^' int]
//! atom   := int | 'u' | 'T' | 'X' | '(' expr ')'
//! ```
//!
//! Integer literals must lie in `[0, p)`. `u` is the generator of F_q over F_p
//! and only exists when q is not prime. Division is only allowed by X-free values.

use crate::apoly::APoly;
use crate::error::{Error, Result};
use crate::fq::Fq;
use crate::poly::{KPoly, XPoly};
use crate::ratfn::RationalFn;

struct Parser<'a> {
    fq: Fq,
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<(usize, u64)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected an integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let v = s
            .parse::<u64>()
            .map_err(|_| Error::parse(start, format!("integer {s} out of range")))?;
        Ok((start, v))
    }

    fn constant(&self, c: u32) -> KPoly {
        KPoly::constant(RationalFn::constant(self.fq, c))
    }

    fn expr(&mut self) -> Result<KPoly> {
        let neg = self.eat(b'-');
        let mut acc = self.term()?;
        if neg {
            acc = -&acc;
        }
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<KPoly> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.factor()?;
            } else if self.peek() == Some(b'/') {
                let at = self.pos;
                self.pos += 1;
                let d = self.factor()?;
                if d.deg().unwrap_or(0) > 0 {
                    return Err(Error::parse(at, "division by a polynomial in X"));
                }
                if d.is_zero() {
                    return Err(Error::parse(at, "division by zero"));
                }
                acc = acc.scale(&d.coeff(0).inv()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<KPoly> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let (_, n) = self.int()?;
            Ok(base.pow(n))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<KPoly> {
        let fq = self.fq;
        match self.peek() {
            None => Err(Error::parse(self.pos, "unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(Error::parse(self.pos, "expected ')'"));
                }
                Ok(v)
            }
            Some(b'T') => {
                self.pos += 1;
                Ok(KPoly::constant(RationalFn::t(fq)))
            }
            Some(b'X') => {
                self.pos += 1;
                Ok(KPoly::x(fq))
            }
            Some(b'u') => {
                if fq.is_prime_field() {
                    return Err(Error::parse(self.pos, "'u' is only defined over non-prime fields"));
                }
                self.pos += 1;
                Ok(self.constant(fq.generator()))
            }
            Some(c) if c.is_ascii_digit() => {
                let (at, v) = self.int()?;
                if v >= fq.p() as u64 {
                    return Err(Error::parse(
                        at,
                        format!("constant {v} not in [0, {})", fq.p()),
                    ));
                }
                Ok(self.constant(v as u32))
            }
            Some(c) => Err(Error::parse(
                self.pos,
                format!("unexpected character '{}'", c as char),
            )),
        }
    }
}

/// Parses an element of k[X].
pub fn parse_kpoly(fq: Fq, s: &str) -> Result<KPoly> {
    let mut p = Parser { fq, src: s.as_bytes(), pos: 0 };
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(Error::parse(p.pos, "trailing input"));
    }
    Ok(v)
}

/// Parses an element of A[X]; denominators are rejected.
pub fn parse_xpoly(fq: Fq, s: &str) -> Result<XPoly> {
    let k = parse_kpoly(fq, s)?;
    k.try_map(fq, |c| {
        c.as_poly()
            .cloned()
            .ok_or_else(|| Error::parse(0, format!("coefficient {c} is not in F_q[T]")))
    })
}

/// Parses an element of k.
pub fn parse_ratfn(fq: Fq, s: &str) -> Result<RationalFn> {
    let k = parse_kpoly(fq, s)?;
    if k.deg().unwrap_or(0) > 0 {
        return Err(Error::parse(0, "unexpected variable X"));
    }
    Ok(k.coeff(0))
}

/// Parses an element of A.
pub fn parse_apoly(fq: Fq, s: &str) -> Result<APoly> {
    let r = parse_ratfn(fq, s)?;
    r.as_poly()
        .cloned()
        .ok_or_else(|| Error::parse(0, format!("{r} is not a polynomial in T")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> Fq {
        Fq::prime(p).unwrap()
    }

    #[test]
    fn round_trip_display() {
        for s in ["T^2 + 2*T + 1", "T", "0", "2", "T^5 + T"] {
            assert_eq!(parse_apoly(f(3), s).unwrap().to_string(), s);
        }
        let x = parse_xpoly(f(2), "T*X + 1").unwrap();
        assert_eq!(x.to_string(), "T*X + 1");
    }

    #[test]
    fn rejects_with_position() {
        match parse_apoly(f(2), "T + 2") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_apoly(f(2), "T +"), Err(Error::Parse { .. })));
        assert!(matches!(parse_apoly(f(2), "T # 1"), Err(Error::Parse { pos: 2, .. })));
        assert!(parse_apoly(f(2), "u").is_err());
        assert!(parse_apoly(f(2), "1/T").is_err());
    }

    #[test]
    fn rationals_and_extensions() {
        let r = parse_ratfn(f(2), "(T+1)/T").unwrap();
        assert_eq!(r.to_string(), "(T + 1)/T");
        let f4 = Fq::with_order(4).unwrap();
        let a = parse_apoly(f4, "(u+1)*T^2 + u").unwrap();
        assert_eq!(a.to_string(), "(u+1)*T^2 + u");
        assert_eq!(parse_apoly(f4, &a.to_string()).unwrap(), a);
    }
}
