//! Lefschetz properties, the Fermat property `(*)_{d,k}`, the socle
//! coefficient of `H^N`, and the kernel-square check for maximal-rank maps.

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::monomial::{monomial_basis, monomial_count, Monomial};
use crate::poly::GradedPolynomial;
use crate::ring::JacobianRing;
use crate::rng::{sample_with_escalation, stream};

pub const DEFAULT_SAMPLES: usize = 20;
pub const ESCALATED_SAMPLES: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LefschetzRow {
    pub k: usize,
    pub power: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub maximal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LefschetzReport {
    pub witness: String,
    pub socle_degree: usize,
    pub rows: Vec<LefschetzRow>,
    pub wlp: bool,
    /// `None` when only the power-one rows were computed.
    pub slp: Option<bool>,
}

fn lefschetz_row<F: Field>(
    ring: &JacobianRing<F>,
    lc: &GradedPolynomial<F>,
    k: usize,
    power: usize,
) -> Result<LefschetzRow> {
    let m = ring.multiplication_matrix(lc, k)?;
    let rank = m.rank();
    Ok(LefschetzRow {
        k,
        power,
        source_dim: m.cols(),
        target_dim: m.rows(),
        rank,
        maximal: rank == m.cols().min(m.rows()),
    })
}

fn check_linear<F: Field>(ring: &JacobianRing<F>, l: &GradedPolynomial<F>) -> Result<()> {
    if l.degree() != 1 {
        return Err(Error::DegreeMismatch {
            expected: 1,
            found: l.degree(),
        });
    }
    if l.nvars() != ring.nvars() {
        return Err(Error::VariableCountMismatch {
            expected: ring.nvars(),
            found: l.nvars(),
        });
    }
    ring.require_smooth()
}

/// Rank of `mu_k(L)` against `min(r_k, r_{k+1})` for `0 <= k < N`.
pub fn wlp_check<F: Field>(ring: &JacobianRing<F>, l: &GradedPolynomial<F>) -> Result<LefschetzReport> {
    check_linear(ring, l)?;
    let n = ring.socle_degree();
    let rows: Vec<_> = (0..n)
        .into_par_iter()
        .map(|k| lefschetz_row(ring, l, k, 1))
        .collect::<Result<_>>()?;
    Ok(LefschetzReport {
        witness: l.to_string(),
        socle_degree: n,
        wlp: rows.iter().all(|r| r.maximal),
        slp: None,
        rows,
    })
}

/// Rank of `mu_k(L^c)` against `min(r_k, r_{k+c})` for all `c >= 1`, `k + c <= N`.
pub fn slp_check<F: Field>(ring: &JacobianRing<F>, l: &GradedPolynomial<F>) -> Result<LefschetzReport> {
    check_linear(ring, l)?;
    let n = ring.socle_degree();
    ring.field().require_characteristic_above(n as u64)?;
    let mut powers = vec![GradedPolynomial::one(ring.field().clone(), ring.nvars())];
    for c in 1..=n {
        powers.push(powers[c - 1].multiply(l));
    }
    let cells: Vec<(usize, usize)> = (1..=n).flat_map(|c| (0..=n - c).map(move |k| (k, c))).collect();
    let mut rows: Vec<_> = cells
        .into_par_iter()
        .map(|(k, c)| lefschetz_row(ring, &powers[c], k, c))
        .collect::<Result<_>>()?;
    rows.sort_by_key(|r| (r.power, r.k));
    Ok(LefschetzReport {
        witness: l.to_string(),
        socle_degree: n,
        wlp: rows.iter().filter(|r| r.power == 1).all(|r| r.maximal),
        slp: Some(rows.iter().all(|r| r.maximal)),
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarReport {
    pub n: usize,
    pub d: usize,
    pub k: usize,
    /// Exponent `d(n-1)` of `H = x_0 + ... + x_n`.
    pub exponent: usize,
    pub target_degree: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub injective: bool,
    /// `s_k > r_{k+d(n-1)}`: injectivity is impossible for dimension reasons.
    pub dimension_obstruction: bool,
    /// The target degree lies above the socle, so the map is zero.
    pub beyond_socle: bool,
    /// `d >= n+1` and `k <= d-n-1`, where the property is expected.
    pub expected: bool,
}

/// Injectivity of `S^k -> R^{k+d(n-1)}`, `G -> G * H^{d(n-1)}`, on the Fermat ring.
pub fn star_property_check<F: Field>(field: F, n: usize, d: usize, k: usize) -> Result<StarReport> {
    field.require_characteristic_above(((n + 1) * (d.max(2) - 2)) as u64)?;
    let ring = JacobianRing::fermat(field, n, d)?;
    star_property_on(&ring, k)
}

/// [`star_property_check`] against an already built Fermat ring.
pub fn star_property_on<F: Field>(ring: &JacobianRing<F>, k: usize) -> Result<StarReport> {
    let d = ring
        .hypersurface_degree()
        .ok_or_else(|| Error::precondition("property (*) needs a Fermat Jacobian ring"))?;
    let n = ring.n();
    let socle = ring.socle_degree();
    ring.field().require_characteristic_above(socle as u64)?;
    let exponent = d * (n - 1);
    let target_degree = k + exponent;
    let source_dim = monomial_count(n, k as i64);
    let expected = d > n && k + n < d;
    if target_degree > socle {
        return Ok(StarReport {
            n,
            d,
            k,
            exponent,
            target_degree,
            source_dim,
            target_dim: 0,
            rank: 0,
            injective: source_dim == 0,
            dimension_obstruction: source_dim > 0,
            beyond_socle: true,
            expected,
        });
    }
    let h = GradedPolynomial::sum_of_variables(ring.field().clone(), n).pow(exponent);
    let source: Vec<Monomial> = monomial_basis(n, k);
    let m = ring.image_matrix(&h, &source)?;
    let rank = m.rank();
    let target_dim = m.rows();
    Ok(StarReport {
        n,
        d,
        k,
        exponent,
        target_degree,
        source_dim,
        target_dim,
        rank,
        injective: rank == source_dim,
        dimension_obstruction: source_dim > target_dim,
        beyond_socle: false,
        expected,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SocleCoefficientReport {
    pub n: usize,
    pub d: usize,
    /// `((n+1)(d-2))! / ((d-2)!)^{n+1}`.
    pub multinomial: String,
    /// Coefficient of `(x_0...x_n)^{d-2}` in the expanded `H^{(n+1)(d-2)}`.
    pub expansion: String,
    pub agree: bool,
    /// The constant as an element of the working field.
    pub value: String,
    /// Coordinate of `H^N` on the socle monomial, when the ring can be built.
    pub ring_coordinate: Option<String>,
    pub ring_agrees: Option<bool>,
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// The constant `lambda` with `H^{d(n-1)} = lambda * (x_0...x_n)^{d-2}` in `R^N`
/// for the Fermat ring with `d = n+1`.
pub fn socle_coefficient<F: Field>(field: &F, n: usize, d: usize) -> Result<SocleCoefficientReport> {
    if n < 1 || d != n + 1 {
        return Err(Error::precondition(
            "the socle coefficient is defined for d = n+1, n >= 1",
        ));
    }
    let top = (n + 1) * (d - 2);
    let multinomial = factorial(top) / factorial(d - 2).pow((n + 1) as u32);

    let h = GradedPolynomial::sum_of_variables(Rationals, n).pow(top);
    let sigma = Monomial::from_exponents(&vec![(d - 2) as u16; n + 1]);
    let coeff = h.coefficient(&sigma);
    let agree = coeff.is_integer() && *coeff.numer() == multinomial;

    let value = field.from_bigint(&multinomial);
    if field.is_zero(&value) {
        return Err(Error::PrimeDividesConstant {
            prime: field.characteristic(),
            value: multinomial.to_string(),
        });
    }
    let (ring_coordinate, ring_agrees) = if field.characteristic() == 0 || field.characteristic() > d as u64 {
        let ring = JacobianRing::fermat(field.clone(), n, d)?;
        let hf = GradedPolynomial::sum_of_variables(field.clone(), n).pow(top);
        let nf = ring.normal_form(&hf)?;
        let std = ring.standard_monomials(top)?;
        let ok = std == vec![sigma] && nf.len() == 1 && nf[0] == value;
        (nf.first().map(|c| field.format(c)), Some(ok))
    } else {
        (None, None)
    };
    Ok(SocleCoefficientReport {
        n,
        d,
        multinomial: multinomial.to_string(),
        expansion: Rationals.format(&coeff),
        agree,
        value: field.format(&value),
        ring_coordinate,
        ring_agrees,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelSquareReport {
    pub a: usize,
    pub e: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub samples_drawn: usize,
    pub best_sample: usize,
    pub best_rank: usize,
    /// Best rank seen after each sample.
    pub running_best: Vec<usize>,
    pub maximal: bool,
    pub eta: String,
    pub kernel_dim: usize,
    pub squares_checked: usize,
    pub nonzero_squares: usize,
    pub vacuous: bool,
}

impl KernelSquareReport {
    /// Every checked kernel element squared to zero, or the maximal-rank
    /// hypothesis was not reached.
    pub fn passes(&self) -> bool {
        !self.maximal || self.nonzero_squares == 0
    }
}

const RANDOM_COMBINATIONS: usize = 5;

/// Samples `eta in R^a`, keeps the one maximizing `rank mu_e(eta)`, and checks
/// `alpha^2 = 0` in `R^{2e}` for kernel elements `alpha in K_e(eta)`.
pub fn max_rank_kernel_square_check<F: Field>(
    ring: &JacobianRing<F>,
    a: usize,
    e: usize,
    samples: usize,
    seed: u64,
) -> Result<KernelSquareReport> {
    ring.require_smooth()?;
    if a + 2 * e > ring.socle_degree() {
        return Err(Error::precondition(format!(
            "need a + 2e <= N, got a={a}, e={e}, N={}",
            ring.socle_degree()
        )));
    }
    if samples == 0 {
        return Err(Error::precondition("samples must be positive"));
    }
    let source_dim = ring.dim(e)?;
    let target_dim = ring.dim(e + a)?;
    let goal = source_dim.min(target_dim);
    let key = |i: usize| [a as u64, e as u64, i as u64];
    let draw = |i: usize| ring.random_class(a, &mut stream(seed, &key(i)));
    let ranks = sample_with_escalation(
        samples,
        samples.max(ESCALATED_SAMPLES),
        |i| Ok(ring.multiplication_matrix(&draw(i)?, e)?.rank()),
        |r| r.contains(&goal),
    )?;
    let best_rank = *ranks.iter().max().expect("samples > 0");
    let best_sample = ranks.iter().position(|&r| r == best_rank).expect("present");
    let running_best = ranks
        .iter()
        .scan(0, |m, &r| {
            *m = (*m).max(r);
            Some(*m)
        })
        .collect();

    let eta = draw(best_sample)?;
    let report = ring.multiplication_operator(&eta, e)?;
    let fl = ring.field();
    let mut candidates = report.kernel.clone();
    if !report.kernel.is_empty() {
        let mut rng = stream(seed, &[a as u64, e as u64, u64::MAX]);
        for _ in 0..RANDOM_COMBINATIONS {
            let mut v = vec![fl.zero(); source_dim];
            for basis in &report.kernel {
                let c = fl.random(&mut rng);
                for (slot, x) in v.iter_mut().zip(basis) {
                    *slot = fl.add(slot, &fl.mul(&c, x));
                }
            }
            candidates.push(v);
        }
    }
    let mut nonzero_squares = 0;
    for v in &candidates {
        let alpha = ring.lift(e, v)?;
        if !ring.in_ideal(&alpha.multiply(&alpha))? {
            nonzero_squares += 1;
        }
    }
    Ok(KernelSquareReport {
        a,
        e,
        source_dim,
        target_dim,
        samples_drawn: ranks.len(),
        best_sample,
        best_rank,
        running_best,
        maximal: best_rank == goal,
        eta: eta.to_string(),
        kernel_dim: report.kernel.len(),
        squares_checked: candidates.len(),
        nonzero_squares,
        vacuous: report.kernel.is_empty(),
    })
}
