//! Homogeneous polynomials with sparse coefficient maps.

mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, RngCore};

use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::monomial::{monomial_basis, Monomial, MAX_VARS};

pub use parse::{parse_polynomial, parse_rational_polynomial};

/// A homogeneous polynomial of a fixed degree in `nvars` variables.
///
/// Terms are kept in a map ordered by the graded-lex monomial order; zero
/// coefficients are never stored. The zero polynomial still carries a degree.
#[derive(Clone)]
pub struct GradedPolynomial<F: Field> {
    field: F,
    nvars: usize,
    degree: usize,
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> PartialEq for GradedPolynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.degree == other.degree && self.terms == other.terms
    }
}

impl<F: Field> Eq for GradedPolynomial<F> {}

impl<F: Field> GradedPolynomial<F> {
    pub fn zero(field: F, nvars: usize, degree: usize) -> Self {
        assert!(nvars <= MAX_VARS && nvars > 0, "unsupported variable count {nvars}");
        GradedPolynomial {
            field,
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: F, nvars: usize) -> Self {
        let one = field.one();
        Self::monomial(field, nvars, Monomial::one(), one)
    }

    pub fn monomial(field: F, nvars: usize, m: Monomial, c: F::Elem) -> Self {
        let mut p = Self::zero(field, nvars, m.degree());
        debug_assert!(m.support_len() <= nvars);
        if !p.field.is_zero(&c) {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn variable(field: F, nvars: usize, i: usize) -> Self {
        let one = field.one();
        Self::monomial(field, nvars, Monomial::var(i), one)
    }

    /// Builds a polynomial of the given degree from terms, summing repeated
    /// monomials. Fails if some term has a different degree.
    pub fn from_terms(
        field: F,
        nvars: usize,
        degree: usize,
        terms: impl IntoIterator<Item = (Monomial, F::Elem)>,
    ) -> Result<Self> {
        if nvars == 0 || nvars > MAX_VARS {
            return Err(Error::TooManyVariables(nvars));
        }
        let mut p = Self::zero(field, nvars, degree);
        for (m, c) in terms {
            if m.degree() != degree {
                return Err(Error::NotHomogeneous);
            }
            if m.support_len() > nvars {
                return Err(Error::VariableOutOfRange {
                    index: m.support_len() - 1,
                    nvars,
                });
            }
            p.add_term(m, &c);
        }
        Ok(p)
    }

    /// Sum of `x_i^d` over all variables.
    pub fn fermat(field: F, n: usize, d: usize) -> Self {
        let nvars = n + 1;
        let one = field.one();
        let terms = (0..nvars).map(|i| (Monomial::var(i).pow(d as u16), one.clone()));
        Self::from_terms(field, nvars, d, terms).expect("homogeneous by construction")
    }

    /// The linear form `x0 + ... + xn`.
    pub fn sum_of_variables(field: F, n: usize) -> Self {
        Self::fermat(field, n, 1)
    }

    /// Dense form with independent random coefficients on every monomial.
    pub fn random(field: F, n: usize, degree: usize, rng: &mut dyn RngCore) -> Self {
        let terms: Vec<_> = monomial_basis(n, degree)
            .into_iter()
            .map(|m| (m, field.random(rng)))
            .collect();
        Self::from_terms(field, n + 1, degree, terms).expect("homogeneous by construction")
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    /// Number of variables minus one (the ambient projective dimension).
    pub fn n(&self) -> usize {
        self.nvars - 1
    }
    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F::Elem)> {
        self.terms.iter()
    }
    pub fn coefficient(&self, m: &Monomial) -> F::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    fn add_term(&mut self, m: Monomial, c: &F::Elem) {
        if self.field.is_zero(c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = self.field.add(v, c);
                if self.field.is_zero(v) {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let mut p = Self::zero(self.field.clone(), self.nvars, self.degree);
        if !self.field.is_zero(c) {
            for (m, v) in &self.terms {
                p.terms.insert(*m, self.field.mul(v, c));
            }
        }
        p
    }

    /// `c * m * self`.
    pub fn mul_monomial(&self, m: &Monomial, c: &F::Elem) -> Self {
        let mut p = Self::zero(self.field.clone(), self.nvars, self.degree + m.degree());
        if !self.field.is_zero(c) {
            for (t, v) in &self.terms {
                p.terms.insert(t.mul(m), self.field.mul(v, c));
            }
        }
        p
    }

    pub fn multiply(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut p = Self::zero(self.field.clone(), self.nvars, self.degree + other.degree);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                p.add_term(a.mul(b), &self.field.mul(ca, cb));
            }
        }
        p
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one(self.field.clone(), self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.multiply(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.multiply(&base);
            }
        }
        acc
    }

    pub fn partial_derivative(&self, i: usize) -> Result<Self> {
        if i >= self.nvars {
            return Err(Error::VariableOutOfRange {
                index: i,
                nvars: self.nvars,
            });
        }
        if self.degree == 0 {
            return Err(Error::precondition("cannot differentiate a degree-0 form"));
        }
        let mut p = Self::zero(self.field.clone(), self.nvars, self.degree - 1);
        for (m, c) in &self.terms {
            if let Some(q) = m.div_var(i) {
                let e = self.field.from_i64(m.exponent(i) as i64);
                p.add_term(q, &self.field.mul(c, &e));
            }
        }
        Ok(p)
    }

    /// All first partials, in variable order.
    pub fn gradient(&self) -> Result<Vec<Self>> {
        (0..self.nvars).map(|i| self.partial_derivative(i)).collect()
    }

    /// `sum_i v_i * dF/dx_i`.
    pub fn directional_derivative(&self, v: &[F::Elem]) -> Result<Self> {
        if v.len() != self.nvars {
            return Err(Error::VariableCountMismatch {
                expected: self.nvars,
                found: v.len(),
            });
        }
        if v.iter().all(|c| self.field.is_zero(c)) {
            return Err(Error::ZeroVector);
        }
        let mut acc = Self::zero(self.field.clone(), self.nvars, self.degree.saturating_sub(1));
        for (i, c) in v.iter().enumerate() {
            if !self.field.is_zero(c) {
                acc = &acc + &self.partial_derivative(i)?.scale(c);
            }
        }
        Ok(acc)
    }

    /// Checks `sum_i x_i * dF/dx_i == deg(F) * F`.
    pub fn euler_check(&self) -> Result<bool> {
        self.field.require_characteristic_above(self.degree as u64)?;
        if self.degree == 0 {
            return Ok(true);
        }
        let mut lhs = Self::zero(self.field.clone(), self.nvars, self.degree);
        for i in 0..self.nvars {
            let di = self.partial_derivative(i)?;
            lhs = &lhs + &di.mul_monomial(&Monomial::var(i), &self.field.one());
        }
        let rhs = self.scale(&self.field.from_i64(self.degree as i64));
        Ok(lhs == rhs)
    }

    /// Substitutes `x_i -> sum_j m[i][j] x_j` (a linear change of coordinates).
    pub fn linear_substitution(&self, m: &[Vec<F::Elem>]) -> Self {
        let images: Vec<Self> = (0..self.nvars)
            .map(|i| {
                let terms = (0..self.nvars).map(|j| (Monomial::var(j), m[i][j].clone()));
                Self::from_terms(self.field.clone(), self.nvars, 1, terms).expect("linear")
            })
            .collect();
        let mut acc = Self::zero(self.field.clone(), self.nvars, self.degree);
        for (mono, c) in &self.terms {
            let mut t = Self::one(self.field.clone(), self.nvars).scale(c);
            for (i, img) in images.iter().enumerate() {
                for _ in 0..mono.exponent(i) {
                    t = t.multiply(img);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    pub fn display_terms(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let cs = self.field.format(c);
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = m.display(self.nvars);
            match (mag.as_str(), mono.as_str()) {
                (_, "1") => out.push_str(&mag),
                ("1", _) => out.push_str(&mono),
                _ => {
                    out.push_str(&mag);
                    out.push('*');
                    out.push_str(&mono);
                }
            }
        }
        out
    }
}

impl GradedPolynomial<Rationals> {
    /// Image of a rational polynomial in another field.
    pub fn reduce<G: Field>(&self, field: &G) -> Result<GradedPolynomial<G>> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((*m, field.from_rational(c)?)))
            .collect::<Result<Vec<_>>>()?;
        GradedPolynomial::from_terms(field.clone(), self.nvars, self.degree, terms)
    }

    /// Dense form with integer coefficients drawn from `0..bound`.
    pub fn random_integer(n: usize, degree: usize, bound: u64, rng: &mut dyn RngCore) -> Self {
        let terms: Vec<_> = monomial_basis(n, degree)
            .into_iter()
            .map(|m| (m, BigRational::from_integer(BigInt::from(rng.random_range(0..bound)))))
            .collect();
        Self::from_terms(Rationals, n + 1, degree, terms).expect("homogeneous by construction")
    }
}

impl<F: Field> fmt::Display for GradedPolynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_terms())
    }
}

impl<F: Field> fmt::Debug for GradedPolynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[deg {}] {}", self.degree, self.display_terms())
    }
}

impl<F: Field> Add for &GradedPolynomial<F> {
    type Output = GradedPolynomial<F>;

    fn add(self, rhs: Self) -> GradedPolynomial<F> {
        self.check_compatible(rhs);
        assert_eq!(self.degree, rhs.degree, "adding forms of different degree");
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(*m, c);
        }
        p
    }
}

impl<F: Field> Sub for &GradedPolynomial<F> {
    type Output = GradedPolynomial<F>;

    fn sub(self, rhs: Self) -> GradedPolynomial<F> {
        self + &(-rhs)
    }
}

impl<F: Field> Neg for &GradedPolynomial<F> {
    type Output = GradedPolynomial<F>;

    fn neg(self) -> GradedPolynomial<F> {
        let mut p = self.clone();
        for v in p.terms.values_mut() {
            *v = self.field.neg(v);
        }
        p
    }
}

impl<F: Field> Mul for &GradedPolynomial<F> {
    type Output = GradedPolynomial<F>;

    fn mul(self, rhs: Self) -> GradedPolynomial<F> {
        self.multiply(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(s: &str) -> GradedPolynomial<Rationals> {
        parse_rational_polynomial(s, Some(3)).unwrap()
    }

    #[test]
    fn multiply_examples() {
        let f = q("x0 + x1");
        let g = q("x0 - x1");
        assert_eq!(f.multiply(&g), q("x0^2 - x1^2"));
        let one = GradedPolynomial::one(Rationals, 3);
        assert_eq!(f.multiply(&one), f);
        let f7 = PrimeField::new(7).unwrap();
        let a = parse_polynomial(&f7, "x0^3*x1^2", Some(3)).unwrap();
        let b = parse_polynomial(&f7, "x0*x1*x2", Some(3)).unwrap();
        assert_eq!(a.multiply(&b), parse_polynomial(&f7, "x0^4*x1^3*x2", Some(3)).unwrap());
    }

    #[test]
    fn derivatives() {
        let f = GradedPolynomial::fermat(Rationals, 2, 5);
        assert_eq!(f.partial_derivative(0).unwrap(), q("5*x0^4"));
        assert!(q("x0^3").partial_derivative(1).unwrap().is_zero());
        assert_eq!(q("x0^3").partial_derivative(1).unwrap().degree(), 2);
        let mixed = q("x0^2*x1^2")
            .partial_derivative(0)
            .unwrap()
            .partial_derivative(1)
            .unwrap();
        assert_eq!(mixed, q("4*x0*x1"));
        assert!(matches!(
            f.partial_derivative(3),
            Err(Error::VariableOutOfRange { index: 3, nvars: 3 })
        ));
    }

    #[test]
    fn fermat_and_directional() {
        let f4 = GradedPolynomial::fermat(Rationals, 2, 4);
        assert_eq!(f4, q("x0^4 + x1^4 + x2^4"));
        let v = [1, 0, 0].map(|c| Rationals.from_i64(c));
        assert_eq!(f4.directional_derivative(&v).unwrap(), q("4*x0^3"));
        let f5 = GradedPolynomial::fermat(Rationals, 2, 5);
        let ones = [1, 1, 1].map(|c| Rationals.from_i64(c));
        assert_eq!(f5.directional_derivative(&ones).unwrap(), q("5*x0^4 + 5*x1^4 + 5*x2^4"));
        let zero = [0, 0, 0].map(|c| Rationals.from_i64(c));
        assert_eq!(f5.directional_derivative(&zero), Err(Error::ZeroVector));
    }

    #[test]
    fn euler_examples() {
        assert!(q("x0^3").euler_check().unwrap());
        assert!(q("x0*x1*x2").euler_check().unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = GradedPolynomial::random(Rationals, 3, 6, &mut rng);
        assert!(f.euler_check().unwrap());
        let f5 = PrimeField::new(5).unwrap();
        let g = GradedPolynomial::fermat(f5, 2, 5);
        assert!(matches!(g.euler_check(), Err(Error::CharacteristicTooSmall { .. })));
    }

    #[test]
    fn display_roundtrip() {
        let f = q("-3/2*x0^2*x1 + x2^3 - 4*x0*x1*x2");
        let back = parse_rational_polynomial(&f.to_string(), Some(3)).unwrap();
        assert_eq!(back, f);
    }

    fn arb_poly(degree: usize) -> impl Strategy<Value = GradedPolynomial<Rationals>> {
        let basis = monomial_basis(2, degree);
        proptest::collection::vec(-5i64..=5, basis.len()).prop_map(move |coeffs| {
            let terms = basis.iter().zip(coeffs).map(|(m, c)| (*m, Rationals.from_i64(c)));
            GradedPolynomial::from_terms(Rationals, 3, degree, terms).unwrap()
        })
    }

    proptest! {
        #[test]
        fn multiplication_is_commutative_and_associative(
            a in arb_poly(1), b in arb_poly(2), c in arb_poly(2)
        ) {
            prop_assert_eq!(a.multiply(&b), b.multiply(&a));
            prop_assert_eq!(a.multiply(&b).multiply(&c), a.multiply(&b.multiply(&c)));
        }

        #[test]
        fn partials_commute(f in arb_poly(4), i in 0usize..3, j in 0usize..3) {
            let ij = f.partial_derivative(i).unwrap().partial_derivative(j).unwrap();
            let ji = f.partial_derivative(j).unwrap().partial_derivative(i).unwrap();
            prop_assert_eq!(ij, ji);
        }

        #[test]
        fn euler_identity_holds(f in arb_poly(5)) {
            prop_assert!(f.euler_check().unwrap());
        }
    }
}
