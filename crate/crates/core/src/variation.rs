//! Infinitesimal variation of Hodge structure for plane curves, modeled
//! on the Jacobian ring.
//!
//! For a smooth plane curve `X = V(F)` of degree `d` and genus `g`, the
//! identifications `H^0(w_X) = R^{d-3}`, `H^1(O_X) = R^{2d-3}` and
//! `Im(KS) = R^d` turn the cup product with a first-order deformation
//! `xi` into the multiplication map `mu_{d-3}(xi): R^{d-3} -> R^{2d-3}`.
//! Both sides have dimension `g`; `X` has maximal variation when some `xi`
//! gives an isomorphism.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::lefschetz::ESCALATED_SAMPLES;
use crate::linalg::PrimeRank;
use crate::monomial::Monomial;
use crate::poly::GradedPolynomial;
use crate::ring::{JacobianRing, RANDOM_COEFFICIENT_BOUND};
use crate::rng::{label_key, sample_with_escalation, stream};

pub fn genus(d: usize) -> usize {
    (d - 1) * (d - 2) / 2
}

/// The cup-product model of one smooth plane curve over one field.
#[derive(Debug, Clone)]
pub struct PlaneCurveIvhs<F: Field> {
    ring: JacobianRing<F>,
    d: usize,
    genus: usize,
}

impl<F: Field> PlaneCurveIvhs<F> {
    pub fn new(ring: JacobianRing<F>) -> Result<Self> {
        let d = ring
            .hypersurface_degree()
            .ok_or_else(|| Error::precondition("a plane curve model needs a hypersurface"))?;
        if ring.nvars() != 3 {
            return Err(Error::precondition("plane curves live in three variables"));
        }
        if d < 3 {
            return Err(Error::precondition("plane curve degree must be at least 3"));
        }
        ring.require_smooth()?;
        let g = genus(d);
        if ring.dim(d - 3)? != g || ring.dim(2 * d - 3)? != g {
            return Err(Error::precondition("graded pieces do not match the genus"));
        }
        Ok(PlaneCurveIvhs { ring, d, genus: g })
    }

    pub fn fermat(field: F, d: usize) -> Result<Self> {
        Self::new(JacobianRing::fermat(field, 2, d)?)
    }

    pub fn ring(&self) -> &JacobianRing<F> {
        &self.ring
    }
    pub fn d(&self) -> usize {
        self.d
    }
    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Rank of `mu_{d-3}(xi): R^{d-3} -> R^{2d-3}`.
    pub fn cup_product_rank(&self, xi: &GradedPolynomial<F>) -> Result<usize> {
        if xi.degree() != self.d {
            return Err(Error::DegreeMismatch {
                expected: self.d,
                found: xi.degree(),
            });
        }
        Ok(self.ring.multiplication_matrix(xi, self.d - 3)?.rank())
    }
}

/// A plane curve with integer coefficients and its reductions at several primes.
///
/// A rank computed modulo any prime is a lower bound for the rank over `Q`,
/// so the maximum over primes is certified.
#[derive(Debug, Clone)]
pub struct CurveFamily {
    equation: GradedPolynomial<Rationals>,
    models: Vec<PlaneCurveIvhs<PrimeField>>,
}

impl CurveFamily {
    pub fn new(equation: &GradedPolynomial<Rationals>, primes: &[u64]) -> Result<Self> {
        if primes.is_empty() {
            return Err(Error::precondition("at least one prime is required"));
        }
        let models = primes
            .par_iter()
            .map(|&p| {
                let f = PrimeField::new(p)?;
                PlaneCurveIvhs::new(JacobianRing::from_hypersurface(&equation.reduce(&f)?)?)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CurveFamily {
            equation: equation.clone(),
            models,
        })
    }

    pub fn fermat(d: usize, primes: &[u64]) -> Result<Self> {
        Self::new(&GradedPolynomial::fermat(Rationals, 2, d), primes)
    }

    pub fn equation(&self) -> &GradedPolynomial<Rationals> {
        &self.equation
    }
    pub fn models(&self) -> &[PlaneCurveIvhs<PrimeField>] {
        &self.models
    }
    pub fn primes(&self) -> Vec<u64> {
        self.models.iter().map(|m| m.ring().field().modulus()).collect()
    }
    pub fn d(&self) -> usize {
        self.models[0].d()
    }
    pub fn genus(&self) -> usize {
        self.models[0].genus()
    }

    /// Cup-product rank of a rational `xi` at every prime.
    pub fn cup_product_ranks(&self, xi: &GradedPolynomial<Rationals>) -> Result<Vec<PrimeRank>> {
        self.models
            .iter()
            .map(|m| {
                Ok(PrimeRank {
                    prime: m.ring().field().modulus(),
                    rank: m.cup_product_rank(&xi.reduce(m.ring().field())?)?,
                })
            })
            .collect()
    }

    fn random_xi(&self, seed: u64, label: &str, i: usize) -> GradedPolynomial<Rationals> {
        let mut rng = stream(seed, &[label_key(label), i as u64]);
        GradedPolynomial::random_integer(2, self.d(), RANDOM_COEFFICIENT_BOUND, &mut rng)
    }
}

fn certified(ranks: &[PrimeRank]) -> usize {
    ranks.iter().map(|r| r.rank).max().unwrap_or(0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VariationReport {
    pub d: usize,
    pub genus: usize,
    pub samples: usize,
    pub primes: Vec<u64>,
    /// Certified rank -> number of samples.
    pub histogram: BTreeMap<usize, usize>,
    /// Lower bound for `d_M(R^d)`.
    pub best_rank: usize,
    pub witness: String,
    pub witness_ranks: Vec<PrimeRank>,
    pub running_best: Vec<usize>,
    pub reaches_genus: bool,
}

/// Samples `xi in S^d` and reports the largest certified cup-product rank.
pub fn estimate_dm(family: &CurveFamily, samples: usize, seed: u64) -> Result<VariationReport> {
    if samples == 0 {
        return Err(Error::precondition("samples must be positive"));
    }
    let draws: Vec<(GradedPolynomial<Rationals>, Vec<PrimeRank>)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let xi = family.random_xi(seed, "estimate", i);
            let ranks = family.cup_product_ranks(&xi)?;
            Ok((xi, ranks))
        })
        .collect::<Result<_>>()?;
    let mut histogram = BTreeMap::new();
    let mut running_best = Vec::with_capacity(samples);
    let mut best = 0;
    let mut best_idx = 0;
    for (i, (_, ranks)) in draws.iter().enumerate() {
        let r = certified(ranks);
        *histogram.entry(r).or_insert(0) += 1;
        if r > best || i == 0 {
            best = r;
            best_idx = i;
        }
        running_best.push(best);
    }
    Ok(VariationReport {
        d: family.d(),
        genus: family.genus(),
        samples,
        primes: family.primes(),
        histogram,
        best_rank: best,
        witness: draws[best_idx].0.to_string(),
        witness_ranks: draws[best_idx].1.clone(),
        running_best,
        reaches_genus: best == family.genus(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IMaximalReport {
    pub d: usize,
    pub genus: usize,
    pub found: bool,
    /// `xi = (x_0 + x_1 + x_2)^d` was already a witness.
    pub via_sum_power: bool,
    pub samples_drawn: usize,
    pub best_rank: usize,
    pub witness: Option<String>,
    pub witness_ranks: Vec<PrimeRank>,
}

/// Looks for `xi` with cup-product rank `g`: first `(sum x_i)^d`, then
/// `samples` random draws, escalating to 100 before reporting not-found.
pub fn verify_i_maximal(family: &CurveFamily, samples: usize, seed: u64) -> Result<IMaximalReport> {
    let g = family.genus();
    let d = family.d();
    let sum_power = GradedPolynomial::sum_of_variables(Rationals, 2).pow(d);
    let ranks = family.cup_product_ranks(&sum_power)?;
    if certified(&ranks) == g {
        return Ok(IMaximalReport {
            d,
            genus: g,
            found: true,
            via_sum_power: true,
            samples_drawn: 0,
            best_rank: g,
            witness: Some(sum_power.to_string()),
            witness_ranks: ranks,
        });
    }
    let draws = sample_with_escalation(
        samples,
        samples.max(ESCALATED_SAMPLES),
        |i| {
            let xi = family.random_xi(seed, "witness", i);
            let r = family.cup_product_ranks(&xi)?;
            Ok((xi, r))
        },
        |done| done.iter().any(|(_, r)| certified(r) == g),
    )?;
    let best_rank = draws
        .iter()
        .map(|(_, r)| certified(r))
        .chain(std::iter::once(certified(&ranks)))
        .max()
        .unwrap_or(0);
    let hit = draws.iter().find(|(_, r)| certified(r) == g);
    Ok(IMaximalReport {
        d,
        genus: g,
        found: hit.is_some(),
        via_sum_power: false,
        samples_drawn: draws.len(),
        best_rank,
        witness: hit.map(|(xi, _)| xi.to_string()),
        witness_ranks: hit.map(|(_, r)| r.clone()).unwrap_or_default(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinWitnessReport {
    pub d: usize,
    pub xi: String,
    pub rank: usize,
    pub expected: usize,
    pub matches: bool,
}

/// `xi = x_0^{d-2} x_1^2` on the Fermat curve, whose cup product has rank `d-3`.
pub fn fermat_min_variation_witness<F: Field>(field: F, d: usize) -> Result<MinWitnessReport> {
    if d < 5 {
        return Err(Error::precondition("the minimal-rank witness needs d >= 5"));
    }
    let ivhs = PlaneCurveIvhs::fermat(field.clone(), d)?;
    let xi = GradedPolynomial::monomial(
        field.clone(),
        3,
        Monomial::from_exponents(&[(d - 2) as u16, 2, 0]),
        field.one(),
    );
    let rank = ivhs.cup_product_rank(&xi)?;
    Ok(MinWitnessReport {
        d,
        xi: xi.to_string(),
        rank,
        expected: d - 3,
        matches: rank == d - 3,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumReport {
    pub d: usize,
    pub genus: usize,
    pub random_samples: usize,
    /// Draws rejected because `xi` lies in `J`.
    pub excluded_in_ideal: usize,
    pub extra: Vec<(String, usize)>,
    pub histogram: BTreeMap<usize, usize>,
    pub min_rank: usize,
    /// Observed ranks strictly between 0 and `d-3`.
    pub counterexamples: Vec<usize>,
}

/// Histogram of cup-product ranks over random `xi` not in `J`, plus any
/// explicitly supplied `extra` classes.
pub fn rank_spectrum<F: Field>(
    ivhs: &PlaneCurveIvhs<F>,
    samples: usize,
    seed: u64,
    extra: &[GradedPolynomial<F>],
) -> Result<SpectrumReport> {
    let d = ivhs.d();
    if d < 5 {
        return Err(Error::precondition("the rank spectrum check needs d >= 5"));
    }
    let field = ivhs.ring().field().clone();
    let draws: Vec<(usize, usize)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream(seed, &[label_key("spectrum"), i as u64]);
            let mut excluded = 0;
            loop {
                let xi = GradedPolynomial::random(field.clone(), 2, d, &mut rng);
                if ivhs.ring().in_ideal(&xi)? {
                    excluded += 1;
                    continue;
                }
                return Ok((ivhs.cup_product_rank(&xi)?, excluded));
            }
        })
        .collect::<Result<_>>()?;
    let extra_ranks = extra
        .iter()
        .map(|xi| Ok((xi.to_string(), ivhs.cup_product_rank(xi)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut histogram = BTreeMap::new();
    for r in draws.iter().map(|x| x.0).chain(extra_ranks.iter().map(|x| x.1)) {
        *histogram.entry(r).or_insert(0) += 1;
    }
    let counterexamples = histogram.keys().copied().filter(|&r| r > 0 && r < d - 3).collect();
    Ok(SpectrumReport {
        d,
        genus: ivhs.genus(),
        random_samples: samples,
        excluded_in_ideal: draws.iter().map(|x| x.1).sum(),
        extra: extra_ranks,
        min_rank: histogram.keys().next().copied().unwrap_or(0),
        histogram,
        counterexamples,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct YukawaReport {
    pub n: usize,
    pub d: usize,
    /// `xi` is raised to the power `n-1`.
    pub exponent: usize,
    pub source_degree: usize,
    pub target_degree: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub full: bool,
}

/// Rank of `mu_{d-n-1}(xi^{n-1}): R^{d-n-1} -> R^{dn-n-1}`.
pub fn yukawa_rank<F: Field>(ring: &JacobianRing<F>, xi: &GradedPolynomial<F>) -> Result<YukawaReport> {
    let d = ring
        .hypersurface_degree()
        .ok_or_else(|| Error::precondition("the Yukawa coupling needs a hypersurface"))?;
    let n = ring.n();
    if xi.degree() != d {
        return Err(Error::DegreeMismatch {
            expected: d,
            found: xi.degree(),
        });
    }
    if d < n + 1 {
        return Err(Error::precondition(format!("need d >= n+1, got n={n}, d={d}")));
    }
    ring.require_smooth()?;
    let alpha = xi.pow(n - 1);
    let source_degree = d - n - 1;
    let m = ring.multiplication_matrix(&alpha, source_degree)?;
    let rank = m.rank();
    Ok(YukawaReport {
        n,
        d,
        exponent: n - 1,
        source_degree,
        target_degree: source_degree + alpha.degree(),
        source_dim: m.cols(),
        target_dim: m.rows(),
        rank,
        full: rank == m.cols(),
    })
}
