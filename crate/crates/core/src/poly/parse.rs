//! Text grammar for homogeneous polynomials.
//!
//! ```text
//! poly   := sign? term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := int ('/' int)? | 'x' digit ('^' int)?
//! ```
//!
//! Whitespace is ignored. Example: `x0^4 + x1^4 - 3/2*x0*x1^2*x2`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::GradedPolynomial;
use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::monomial::{Monomial, MAX_VARS};

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn small_integer(&mut self) -> Result<u16> {
        let v = self.integer()?;
        match u16::try_from(v) {
            Ok(e) => Ok(e),
            Err(_) => self.err("exponent too large"),
        }
    }
}

struct Term {
    coeff: BigRational,
    mono: Monomial,
}

fn parse_term(cur: &mut Cursor<'_>) -> Result<Term> {
    let mut coeff = BigRational::one();
    let mut mono = Monomial::one();
    loop {
        match cur.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = cur.integer()?;
                let den = if cur.peek() == Some(b'/') {
                    cur.bump();
                    let d = cur.integer()?;
                    if d.is_zero() {
                        return cur.err("zero denominator");
                    }
                    d
                } else {
                    BigInt::one()
                };
                coeff *= BigRational::new(num, den);
            }
            Some(b'x') => {
                cur.bump();
                let idx = match cur.bump() {
                    Some(c) if c.is_ascii_digit() => (c - b'0') as usize,
                    _ => return cur.err("expected variable index 0-9 after `x`"),
                };
                let e = if cur.peek() == Some(b'^') {
                    cur.bump();
                    cur.small_integer()?
                } else {
                    1
                };
                let mut exps = [0u16; MAX_VARS];
                exps[idx] = e;
                mono = mono.mul(&Monomial::from_exponents(&exps));
            }
            _ => return cur.err("expected a coefficient or a variable"),
        }
        if cur.peek() == Some(b'*') {
            cur.bump();
        } else {
            return Ok(Term { coeff, mono });
        }
    }
}

/// Parses a polynomial over `Q`. `nvars` defaults to the highest variable
/// index that occurs, plus one.
pub fn parse_rational_polynomial(text: &str, nvars: Option<usize>) -> Result<GradedPolynomial<Rationals>> {
    let compact: Vec<u8> = text.bytes().filter(|c| !c.is_ascii_whitespace()).collect();
    let mut cur = Cursor {
        bytes: &compact,
        pos: 0,
    };
    if compact.is_empty() {
        return cur.err("empty polynomial");
    }
    let mut terms = Vec::new();
    let mut sign_seen = false;
    let mut negative = false;
    loop {
        match cur.peek() {
            Some(b'+') if !sign_seen => {
                cur.bump();
                sign_seen = true;
            }
            Some(b'-') if !sign_seen => {
                cur.bump();
                sign_seen = true;
                negative = true;
            }
            _ => {
                let mut t = parse_term(&mut cur)?;
                if negative {
                    t.coeff = -t.coeff;
                }
                terms.push(t);
                match cur.peek() {
                    None => break,
                    Some(b'+') | Some(b'-') => {
                        sign_seen = false;
                        negative = false;
                    }
                    Some(_) => return cur.err("expected `+`, `-` or end of input"),
                }
            }
        }
    }
    let used = terms.iter().map(|t| t.mono.support_len()).max().unwrap_or(0).max(1);
    let nvars = match nvars {
        Some(n) if n < used => {
            return Err(Error::VariableOutOfRange {
                index: used - 1,
                nvars: n,
            })
        }
        Some(n) => n,
        None => used,
    };
    if nvars > MAX_VARS {
        return Err(Error::TooManyVariables(nvars));
    }
    let degree = terms[0].mono.degree();
    if terms.iter().any(|t| t.mono.degree() != degree) {
        return Err(Error::NotHomogeneous);
    }
    GradedPolynomial::from_terms(Rationals, nvars, degree, terms.into_iter().map(|t| (t.mono, t.coeff)))
}

/// Parses a polynomial and maps it into `field`.
pub fn parse_polynomial<F: Field>(field: &F, text: &str, nvars: Option<usize>) -> Result<GradedPolynomial<F>> {
    parse_rational_polynomial(text, nvars)?.reduce(field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn parses_fermat() {
        let f = parse_rational_polynomial("x0^4 + x1^4 + x2^4", None).unwrap();
        assert_eq!(f, GradedPolynomial::fermat(Rationals, 2, 4));
        assert_eq!(f.nvars(), 3);
    }

    #[test]
    fn coefficients_and_signs() {
        let f = parse_rational_polynomial("-x0 + 3/2 * x1 - 2*x2", None).unwrap();
        let c = |m: &[u16]| f.coefficient(&Monomial::from_exponents(m));
        assert_eq!(c(&[1, 0, 0]), Rationals.from_i64(-1));
        assert_eq!(c(&[0, 1, 0]), BigRational::new(3.into(), 2.into()));
        assert_eq!(c(&[0, 0, 1]), Rationals.from_i64(-2));
    }

    #[test]
    fn repeated_variables_multiply() {
        let f = parse_rational_polynomial("x0*x0^2*x1", None).unwrap();
        assert_eq!(f.degree(), 4);
        assert_eq!(f.len(), 1);
    }

    #[test]
    fn cancellation_keeps_degree() {
        let f = parse_rational_polynomial("x0^2 - x0^2", Some(3)).unwrap();
        assert!(f.is_zero());
        assert_eq!(f.degree(), 2);
    }

    #[test]
    fn errors() {
        assert_eq!(parse_rational_polynomial("x0^2 + x1", None), Err(Error::NotHomogeneous));
        assert!(matches!(parse_rational_polynomial("", None), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_rational_polynomial("x0 +", None),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_rational_polynomial("y0", None),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_rational_polynomial("1/0*x0", None),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_rational_polynomial("x4", Some(3)),
            Err(Error::VariableOutOfRange { .. })
        ));
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(parse_polynomial(&f7, "1/7*x0", None), Err(Error::PrimeReduction(7)));
    }
}
