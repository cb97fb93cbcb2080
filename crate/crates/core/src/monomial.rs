//! Monomials in at most [`MAX_VARS`] variables, ordered graded-lexicographically
//! with `x0 > x1 > ... > xn`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

/// Largest supported number of variables (`x0..x9`).
pub const MAX_VARS: usize = 10;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: [0; MAX_VARS] }
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Self::one();
        m.exps[..exps.len()].copy_from_slice(exps);
        m
    }

    pub fn var(i: usize) -> Self {
        let mut m = Self::one();
        m.exps[i] = 1;
        m
    }

    pub fn exponent(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn exponents(&self, nvars: usize) -> &[u16] {
        &self.exps[..nvars]
    }

    pub fn degree(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for (a, b) in m.exps.iter_mut().zip(other.exps) {
            *a += b;
        }
        m
    }

    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut m = *self;
        m.exps[i] += 1;
        m
    }

    /// `self / x_i`, if `x_i` divides `self`.
    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        (self.exps[i] > 0).then(|| {
            let mut m = *self;
            m.exps[i] -= 1;
            m
        })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps).all(|(a, b)| *a <= b)
    }

    pub fn pow(&self, e: u16) -> Monomial {
        let mut m = *self;
        for a in m.exps.iter_mut() {
            *a *= e;
        }
        m
    }

    /// Highest variable index with a nonzero exponent, plus one.
    pub fn support_len(&self) -> usize {
        self.exps.iter().rposition(|&e| e > 0).map_or(0, |i| i + 1)
    }

    pub fn display(&self, nvars: usize) -> String {
        let parts: Vec<String> = (0..nvars)
            .filter(|&i| self.exps[i] > 0)
            .map(|i| match self.exps[i] {
                1 => format!("x{i}"),
                e => format!("x{i}^{e}"),
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display(self.support_len()))
    }
}

/// `binomial(n, k)` as a `u128`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// `dim S^k` for `n + 1` variables; zero for negative `k`.
pub fn monomial_count(n: usize, k: i64) -> usize {
    if k < 0 {
        0
    } else {
        binomial(n as u64 + k as u64, n as u64) as usize
    }
}

/// All degree-`k` monomials in `n + 1` variables, largest first.
pub fn monomial_basis(n: usize, k: usize) -> Vec<Monomial> {
    let nvars = n + 1;
    assert!(nvars <= MAX_VARS, "too many variables");
    let mut out = Vec::with_capacity(monomial_count(n, k as i64));
    let mut exps = [0u16; MAX_VARS];
    fill(&mut exps, 0, nvars, k, &mut out);
    out
}

fn fill(exps: &mut [u16; MAX_VARS], i: usize, nvars: usize, left: usize, out: &mut Vec<Monomial>) {
    if i + 1 == nvars {
        exps[i] = left as u16;
        out.push(Monomial { exps: *exps });
        exps[i] = 0;
        return;
    }
    for e in (0..=left).rev() {
        exps[i] = e as u16;
        fill(exps, i + 1, nvars, left - e, out);
    }
    exps[i] = 0;
}

/// The monomials of one degree with a reverse index.
#[derive(Debug, Clone)]
pub struct MonomialBasis {
    pub nvars: usize,
    pub degree: usize,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, u32>,
}

impl MonomialBasis {
    pub fn new(n: usize, k: usize) -> Self {
        let monomials = monomial_basis(n, k);
        let index = monomials.iter().enumerate().map(|(i, m)| (*m, i as u32)).collect();
        MonomialBasis {
            nvars: n + 1,
            degree: k,
            monomials,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn get(&self, i: usize) -> Monomial {
        self.monomials[i]
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).map(|&i| i as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_bases() {
        assert_eq!(monomial_basis(2, 0), vec![Monomial::one()]);
        assert_eq!(monomial_basis(2, 2).len(), 6);
        assert_eq!(monomial_basis(3, 3).len(), 20);
    }

    #[test]
    fn basis_is_strictly_decreasing() {
        let b = monomial_basis(2, 3);
        assert_eq!(b[0], Monomial::from_exponents(&[3, 0, 0]));
        assert_eq!(b[1], Monomial::from_exponents(&[2, 1, 0]));
        assert_eq!(*b.last().unwrap(), Monomial::from_exponents(&[0, 0, 3]));
        assert!(b.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn counting_matches_binomial() {
        for n in 0..=5 {
            for k in 0..=25 {
                assert_eq!(
                    monomial_basis(n, k).len() as u128,
                    binomial((n + k) as u64, n as u64),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn display() {
        let m = Monomial::from_exponents(&[3, 0, 1]);
        assert_eq!(m.display(3), "x0^3*x2");
        assert_eq!(Monomial::one().display(3), "1");
    }

    proptest! {
        #[test]
        fn index_roundtrip(n in 0usize..4, k in 0usize..7) {
            let b = MonomialBasis::new(n, k);
            for (i, m) in b.monomials().iter().enumerate() {
                prop_assert_eq!(b.index_of(m), Some(i));
                prop_assert_eq!(m.degree(), k);
            }
        }
    }
}
