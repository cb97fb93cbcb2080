use std::collections::BTreeMap;
use std::fs;

use jacring_core::decomposable::{
    dimension_arithmetic_check, f_v_rank, incidence_fiber, irreducibility_probe, membership_y, random_ev_element,
    tangent_dim_y, ProbeVerdict, SegreSpec,
};
use jacring_core::lefschetz::{
    max_rank_kernel_square_check, slp_check, socle_coefficient, star_property_on, wlp_check,
};
use jacring_core::monomial::MAX_VARS;
use jacring_core::rng::{derive_seed, label_key, stream};
use jacring_core::variation::{
    estimate_dm, fermat_min_variation_witness, rank_spectrum, verify_i_maximal, yukawa_rank,
};
use jacring_core::{
    parse_polynomial, parse_rational_polynomial, random_smooth_hypersurface, CurveFamily, Field, FieldSpec,
    GradedPolynomial, JacobianRing, PlaneCurveIvhs, PrimeField, Rationals,
};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{Command, SourceArgs};
use crate::error::{CliError, CliResult};
use crate::record::{RunConfig, SourceSpec};

macro_rules! with_field {
    ($spec:expr, |$f:ident| $body:expr) => {
        match $spec {
            FieldSpec::Prime(p) => {
                let $f = PrimeField::new(p)?;
                $body
            }
            FieldSpec::Rationals => {
                let $f = Rationals;
                $body
            }
        }
    };
}

fn to_value<T: Serialize>(v: &T) -> CliResult<Value> {
    serde_json::to_value(v).map_err(|e| CliError::Internal(e.to_string()))
}

/// Parses `a..b` (inclusive), `a..=b`, or a single value.
pub fn parse_range(s: &str) -> CliResult<(usize, usize)> {
    let bad = || CliError::usage(format!("invalid range `{s}` (expected a..b)"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    match s.split_once("..") {
        Some((a, b)) => Ok((num(a)?, num(b.strip_prefix('=').unwrap_or(b))?)),
        None => {
            let v = num(s)?;
            Ok((v, v))
        }
    }
}

pub fn resolve_source(src: &SourceArgs, seed: u64, allow_ci: bool) -> CliResult<SourceSpec> {
    let mut found = Vec::new();
    if let Some(v) = &src.fermat {
        found.push(SourceSpec::Fermat { n: v[0], d: v[1] });
    }
    if let Some(path) = &src.poly_file {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        found.push(SourceSpec::Poly {
            text: text.trim().to_string(),
            path: Some(path.display().to_string()),
        });
    }
    if let Some(text) = &src.poly {
        found.push(SourceSpec::Poly {
            text: text.trim().to_string(),
            path: None,
        });
    }
    if let Some(v) = &src.random {
        found.push(SourceSpec::Random { n: v[0], d: v[1], seed });
    }
    if let Some(a) = &src.ci {
        if !allow_ci {
            return Err(CliError::usage("this command needs a hypersurface, not --ci"));
        }
        found.push(SourceSpec::MonomialCi { exponents: a.clone() });
    }
    match found.len() {
        1 => Ok(found.pop().expect("one source")),
        0 => Err(CliError::usage(
            "give one of --fermat, --poly-file, --poly, --random or --ci",
        )),
        _ => Err(CliError::usage("give exactly one hypersurface source")),
    }
}

fn check_nvars(n: usize) -> CliResult<()> {
    if n + 1 > MAX_VARS {
        return Err(jacring_core::Error::TooManyVariables(n + 1).into());
    }
    Ok(())
}

pub fn rational_equation(spec: &SourceSpec, primes: &[u64]) -> CliResult<GradedPolynomial<Rationals>> {
    match spec {
        SourceSpec::Fermat { n, d } => {
            check_nvars(*n)?;
            Ok(GradedPolynomial::fermat(Rationals, *n, *d))
        }
        SourceSpec::Poly { text, .. } => Ok(parse_rational_polynomial(text, None)?),
        SourceSpec::Random { n, d, seed } => {
            check_nvars(*n)?;
            Ok(random_smooth_hypersurface(*n, *d, primes, *seed)?.equation)
        }
        SourceSpec::MonomialCi { .. } => Err(CliError::usage("this command needs a hypersurface, not --ci")),
    }
}

pub fn build_ring<F: Field>(field: &F, spec: &SourceSpec, primes: &[u64]) -> CliResult<JacobianRing<F>> {
    match spec {
        SourceSpec::MonomialCi { exponents } => Ok(JacobianRing::monomial_ci(field.clone(), exponents)?),
        _ => Ok(JacobianRing::from_hypersurface(
            &rational_equation(spec, primes)?.reduce(field)?,
        )?),
    }
}

fn ring_summary<F: Field>(ring: &JacobianRing<F>) -> Value {
    let mut v = json!({
        "nvars": ring.nvars(),
        "socle_degree": ring.socle_degree(),
        "smooth": ring.is_smooth(),
    });
    if let Some(eq) = ring.equation() {
        v["equation"] = json!(eq.to_string());
    }
    if let jacring_core::RingOrigin::MonomialCi { exponents } = ring.origin() {
        v["exponents"] = json!(exponents);
    }
    v
}

fn with_ring(mut payload: Value, ring: Value) -> Value {
    if let Value::Object(map) = &mut payload {
        map.insert("ring".to_string(), ring);
    }
    payload
}

fn base_config(name: &str, source: Option<&SourceSpec>, field: Option<FieldSpec>, primes: &[u64]) -> RunConfig {
    let mut c = RunConfig::new(name);
    c.source = source.cloned();
    c.field = field.map(|f| f.to_string());
    if let Some(SourceSpec::Random { seed, .. }) = source {
        c.primes = Some(primes.to_vec());
        c.seed = Some(*seed);
    }
    c
}

fn hilbert<F: Field>(ring: &JacobianRing<F>) -> Value {
    let dims = ring.hilbert_function();
    let mut rev = dims.clone();
    rev.reverse();
    let total: usize = dims.iter().sum();
    let expected_total: Option<usize> = match ring.origin() {
        jacring_core::RingOrigin::Hypersurface { equation } => Some((equation.degree() - 1).pow(ring.nvars() as u32)),
        jacring_core::RingOrigin::MonomialCi { exponents } => Some(exponents.iter().product()),
    };
    let rows: Vec<Value> = dims
        .iter()
        .enumerate()
        .map(|(k, r)| json!({"k": k, "r_k": r, "s_k": ring.ambient_dim(k)}))
        .collect();
    json!({
        "dims": dims,
        "total": total,
        "expected_total": expected_total,
        "smooth": ring.is_smooth(),
        "symmetric": dims == rev,
        "rows": rows,
    })
}

fn pairing<F: Field>(ring: &JacobianRing<F>, a: Option<usize>) -> CliResult<Value> {
    let degrees: Vec<usize> = match a {
        Some(a) => vec![a],
        None => (0..=ring.socle_degree()).collect(),
    };
    let rows = degrees
        .into_par_iter()
        .map(|a| {
            let r = ring.gorenstein_pairing_check(a)?;
            Ok(json!({"a": r.degree, "r_a": r.rows, "r_dual": r.cols, "rank": r.rank, "perfect": r.perfect}))
        })
        .collect::<CliResult<Vec<Value>>>()?;
    let all = rows.iter().all(|r| r["perfect"] == json!(true));
    Ok(json!({"rows": rows, "all_perfect": all}))
}

fn linear_form<F: Field>(ring: &JacobianRing<F>, text: &Option<String>) -> CliResult<GradedPolynomial<F>> {
    Ok(match text {
        Some(t) => parse_polynomial(ring.field(), t, Some(ring.nvars()))?,
        None => GradedPolynomial::sum_of_variables(ring.field().clone(), ring.n()),
    })
}

fn star<F: Field>(field: F, n: usize, d: usize, k: Option<usize>) -> CliResult<Value> {
    check_nvars(n)?;
    if n < 1 || d < 2 {
        return Err(jacring_core::Error::precondition("need n >= 1 and d >= 2").into());
    }
    field.require_characteristic_above(((n + 1) * (d - 2)) as u64)?;
    let ring = JacobianRing::fermat(field, n, d)?;
    match k {
        Some(k) => to_value(&star_property_on(&ring, k)?),
        None => {
            let top = (d + 1).saturating_sub(n + 2);
            let reports = (0..=top)
                .into_par_iter()
                .map(|k| star_property_on(&ring, k))
                .collect::<jacring_core::Result<Vec<_>>>()?;
            let all = reports.iter().all(|r| r.injective);
            Ok(json!({"reports": to_value(&reports)?, "all_injective": all}))
        }
    }
}

fn kernel_square<F: Field>(
    ring: &JacobianRing<F>,
    a: Option<usize>,
    e: Option<usize>,
    samples: usize,
    seed: u64,
) -> CliResult<Value> {
    let n = ring.socle_degree();
    let cells: Vec<(usize, usize)> = match (a, e) {
        (Some(a), Some(e)) => vec![(a, e)],
        _ => (1..=n / 2)
            .flat_map(|e| (0..=n - 2 * e).map(move |a| (a, e)))
            .filter(|&(x, y)| a.is_none_or(|a| a == x) && e.is_none_or(|e| e == y))
            .collect(),
    };
    if cells.is_empty() {
        return Err(jacring_core::Error::precondition("no (a, e) with a + 2e <= N").into());
    }
    let reports = cells
        .into_par_iter()
        .map(|(a, e)| max_rank_kernel_square_check(ring, a, e, samples, seed))
        .collect::<jacring_core::Result<Vec<_>>>()?;
    let all = reports.iter().all(|r| r.passes());
    let vacuous = reports.iter().filter(|r| r.vacuous).count();
    Ok(json!({
        "reports": to_value(&reports)?,
        "all_pass": all,
        "vacuous_cells": vacuous,
        "nontrivial_kernels": reports.len() - vacuous,
    }))
}

fn random_direction<F: Field>(field: &F, nvars: usize, seed: u64, label: &str) -> Vec<F::Elem> {
    let mut rng = stream(seed, &[label_key(label)]);
    loop {
        let v: Vec<_> = (0..nvars).map(|_| field.random(&mut rng)).collect();
        if v.iter().any(|c| !field.is_zero(c)) {
            return v;
        }
    }
}

fn probe<F: Field>(
    ring: &JacobianRing<F>,
    p: Option<usize>,
    samples: usize,
    trials: usize,
    seed: u64,
) -> CliResult<Value> {
    let d = ring
        .hypersurface_degree()
        .ok_or_else(|| CliError::usage("the probe needs a plane curve"))?;
    let p = p.unwrap_or(2 * d - 4);
    let field = ring.field();
    let v = random_direction(field, ring.nvars(), seed, "probe-direction");
    let split = SegreSpec::new(p);
    let verdicts = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream(seed, &[label_key("probe-sample"), i as u64]);
            let ev = random_ev_element(ring, &v, p, &mut rng)?;
            let b1 = GradedPolynomial::random(field.clone(), ring.n(), split.k, &mut rng);
            let b2 = GradedPolynomial::random(field.clone(), ring.n(), split.l, &mut rng);
            let s = derive_seed(seed, &[label_key("probe-chart"), i as u64]);
            let ev_v = irreducibility_probe(&ev, trials, s)?.verdict;
            let prod_v = irreducibility_probe(&b1.multiply(&b2), trials, s)?.verdict;
            Ok((ev_v, prod_v))
        })
        .collect::<jacring_core::Result<Vec<_>>>()?;
    let count = |sel: &dyn Fn(&(ProbeVerdict, ProbeVerdict)) -> ProbeVerdict| {
        let mut m: BTreeMap<String, usize> = BTreeMap::new();
        for x in &verdicts {
            let key = serde_json::to_value(sel(x))
                .expect("verdict")
                .as_str()
                .expect("string")
                .to_string();
            *m.entry(key).or_insert(0) += 1;
        }
        m
    };
    let ev = count(&|x| x.0);
    let products = count(&|x| x.1);
    let evidence = verdicts
        .iter()
        .filter(|x| x.0 == ProbeVerdict::NotDecomposableEvidence)
        .count();
    let ev_decomposable = verdicts.iter().any(|x| x.0 == ProbeVerdict::DecomposableDetected);
    let products_sound = verdicts.iter().all(|x| x.1 != ProbeVerdict::NotDecomposableEvidence);
    Ok(json!({
        "p": p,
        "segre_split": split,
        "direction": v.iter().map(|c| field.format(c)).collect::<Vec<_>>(),
        "samples": samples,
        "ev": ev,
        "products": products,
        "ev_evidence_fraction": if samples == 0 { 0.0 } else { evidence as f64 / samples as f64 },
        "ev_decomposable_detected": ev_decomposable,
        "products_sound": products_sound,
    }))
}

fn seeded(mut c: RunConfig, seed: u64) -> RunConfig {
    c.seed = Some(seed);
    c
}

fn sampled(mut c: RunConfig, seed: u64, samples: usize) -> RunConfig {
    c.seed = Some(seed);
    c.samples = Some(samples);
    c
}

/// The resolved configuration of a command, without running it.
pub fn resolve_config(cmd: &Command) -> CliResult<RunConfig> {
    let src = |s: &SourceArgs, seed: u64, ci: bool| resolve_source(s, seed, ci);
    Ok(match cmd {
        Command::Hilbert {
            source,
            field,
            primes,
            seed,
        } => base_config(
            "hilbert",
            Some(&src(source, seed.seed, true)?),
            Some(field.field),
            &primes.primes,
        ),
        Command::Pairing {
            source,
            field,
            primes,
            seed,
            a,
        } => base_config(
            "pairing",
            Some(&src(source, seed.seed, true)?),
            Some(field.field),
            &primes.primes,
        )
        .param("a", a),
        Command::Wlp {
            source,
            field,
            primes,
            seed,
            linear,
        } => base_config(
            "wlp",
            Some(&src(source, seed.seed, true)?),
            Some(field.field),
            &primes.primes,
        )
        .param("linear", linear),
        Command::Slp {
            source,
            field,
            primes,
            seed,
            linear,
        } => base_config(
            "slp",
            Some(&src(source, seed.seed, true)?),
            Some(field.field),
            &primes.primes,
        )
        .param("linear", linear),
        Command::Star { n, d, k, field } => base_config("star", None, Some(field.field), &[])
            .param("n", n)
            .param("d", d)
            .param("k", k),
        Command::SocleCoeff { n, d, field } => base_config("socle-coeff", None, Some(field.field), &[])
            .param("n", n)
            .param("d", d.unwrap_or(n + 1)),
        Command::VariationMax {
            source,
            primes,
            seed,
            samples,
        } => {
            let mut c = base_config(
                "variation-max",
                Some(&src(source, seed.seed, false)?),
                None,
                &primes.primes,
            );
            c.primes = Some(primes.primes.clone());
            sampled(c, seed.seed, *samples)
        }
        Command::VariationSpectrum {
            source,
            field,
            primes,
            seed,
            samples,
            xi,
        } => {
            let c = base_config(
                "variation-spectrum",
                Some(&src(source, seed.seed, false)?),
                Some(field.field),
                &primes.primes,
            )
            .param("xi", xi);
            sampled(c, seed.seed, *samples)
        }
        Command::MinWitness { d, field } => base_config("min-witness", None, Some(field.field), &[]).param("d", d),
        Command::Yukawa {
            source,
            field,
            primes,
            seed,
            xi,
        } => base_config(
            "yukawa",
            Some(&src(source, seed.seed, false)?),
            Some(field.field),
            &primes.primes,
        )
        .param("xi", xi),
        Command::KernelSquare {
            source,
            field,
            primes,
            seed,
            a,
            e,
            samples,
        } => {
            let c = base_config(
                "kernel-square",
                Some(&src(source, seed.seed, true)?),
                Some(field.field),
                &primes.primes,
            )
            .param("a", a)
            .param("e", e);
            sampled(c, seed.seed, *samples)
        }
        Command::Annihilator {
            source,
            field,
            primes,
            seed,
            alpha,
            alpha_degree,
        } => {
            let c = base_config(
                "annihilator",
                Some(&src(source, seed.seed, true)?),
                Some(field.field),
                &primes.primes,
            )
            .param("alpha", alpha)
            .param("alpha_degree", alpha_degree);
            if alpha.is_none() {
                seeded(c, seed.seed)
            } else {
                c
            }
        }
        Command::FvRank {
            source,
            field,
            primes,
            seed,
            p,
            v,
        } => {
            let c = base_config(
                "fv-rank",
                Some(&src(source, seed.seed, false)?),
                Some(field.field),
                &primes.primes,
            )
            .param("p", p)
            .param("v", v);
            if v.is_none() {
                seeded(c, seed.seed)
            } else {
                c
            }
        }
        Command::YMembership {
            source,
            field,
            primes,
            seed,
            alpha,
        } => base_config(
            "y-membership",
            Some(&src(source, seed.seed, false)?),
            Some(field.field),
            &primes.primes,
        )
        .param("alpha", alpha),
        Command::Probe {
            source,
            field,
            primes,
            seed,
            p,
            samples,
            trials,
        } => {
            let c = base_config(
                "probe",
                Some(&src(source, seed.seed, false)?),
                Some(field.field),
                &primes.primes,
            )
            .param("p", p)
            .param("trials", trials);
            sampled(c, seed.seed, *samples)
        }
        Command::ArithCheck { d_range } => {
            let (lo, hi) = parse_range(d_range)?;
            RunConfig::new("arith-check").param("d_range", [lo, hi])
        }
        Command::Survey { .. } => crate::survey::survey_config(cmd),
    })
}

/// Runs one command and returns its resolved configuration and payload.
pub fn run_command(cmd: &Command) -> CliResult<(RunConfig, Value)> {
    if let Command::Survey { .. } = cmd {
        return crate::survey::run_survey(cmd);
    }
    let cfg = resolve_config(cmd)?;
    let payload = execute(cmd, &cfg)?;
    Ok((cfg, payload))
}

fn execute(cmd: &Command, cfg: &RunConfig) -> CliResult<Value> {
    let spec = || {
        cfg.source
            .clone()
            .ok_or_else(|| CliError::Internal("missing source".into()))
    };
    Ok(match cmd {
        Command::Hilbert { field, primes, .. } => {
            let spec = spec()?;
            with_field!(field.field, |f| {
                let ring = build_ring(&f, &spec, &primes.primes)?;
                with_ring(hilbert(&ring), ring_summary(&ring))
            })
        }
        Command::Pairing { field, primes, a, .. } => {
            let spec = spec()?;
            with_field!(field.field, |f| {
                let ring = build_ring(&f, &spec, &primes.primes)?;
                with_ring(pairing(&ring, *a)?, ring_summary(&ring))
            })
        }
        Command::Wlp {
            field, primes, linear, ..
        }
        | Command::Slp {
            field, primes, linear, ..
        } => {
            let spec = spec()?;
            let weak = matches!(cmd, Command::Wlp { .. });
            with_field!(field.field, |f| {
                let ring = build_ring(&f, &spec, &primes.primes)?;
                let l = linear_form(&ring, linear)?;
                let rep = if weak {
                    wlp_check(&ring, &l)?
                } else {
                    slp_check(&ring, &l)?
                };
                with_ring(to_value(&rep)?, ring_summary(&ring))
            })
        }
        Command::Star { n, d, k, field } => with_field!(field.field, |f| star(f, *n, *d, *k)?),
        Command::SocleCoeff { n, d, field } => {
            check_nvars(*n)?;
            let d = d.unwrap_or(n + 1);
            with_field!(field.field, |f| to_value(&socle_coefficient(&f, *n, d)?)?)
        }
        Command::VariationMax {
            primes, seed, samples, ..
        } => {
            let eq = rational_equation(&spec()?, &primes.primes)?;
            let family = CurveFamily::new(&eq, &primes.primes)?;
            let estimate = estimate_dm(&family, *samples, seed.seed)?;
            let imax = verify_i_maximal(&family, *samples, seed.seed)?;
            json!({
                "equation": eq.to_string(),
                "genus": family.genus(),
                "estimate": to_value(&estimate)?,
                "i_maximal": to_value(&imax)?,
            })
        }
        Command::VariationSpectrum {
            field,
            primes,
            seed,
            samples,
            xi,
            ..
        } => {
            let spec = spec()?;
            with_field!(field.field, |f| {
                let ring = build_ring(&f, &spec, &primes.primes)?;
                let extra = xi
                    .iter()
                    .map(|t| parse_polynomial(&f, t, Some(ring.nvars())))
                    .collect::<jacring_core::Result<Vec<_>>>()?;
                let ivhs = PlaneCurveIvhs::new(ring)?;
                let rep = rank_spectrum(&ivhs, *samples, seed.seed, &extra)?;
                with_ring(to_value(&rep)?, ring_summary(ivhs.ring()))
            })
        }
        Command::MinWitness { d, field } => {
            with_field!(field.field, |f| to_value(&fermat_min_variation_witness(f, *d)?)?)
        }
        Command::Yukawa { field, primes, xi, .. } => {
            let spec = spec()?;
            with_field!(field.field, |f| {
                let ring = build_ring(&f, &spec, &primes.primes)?;
                let d = ring.hypersurface_degree().expect("hypersurface");
                let x = match xi {
                    Some(t) => parse_polynomial(&f, t, Some(ring.nvars()))?,
                    None => GradedPolynomial::sum_of_variables(f, ring.n()).pow(d),
                };
                with_ring(to_value(&yukawa_rank(&ring, &x)?)?, ring_summary(&ring))
            })
        }
        Command::KernelSquare {
            field,
            primes,
            seed,
            a,
            e,
            samples,
            ..
        } => {
            let spec = spec()?;
            with_field!(field.field, |f| {
                let ring = build_ring(&f, &spec, &primes.primes)?;
                with_ring(kernel_square(&ring, *a, *e, *samples, seed.seed)?, ring_summary(&ring))
            })
        }
        Command::Annihilator {
            field,
            primes,
            seed,
            alpha,
            alpha_degree,
            ..
        } => {
            let spec = spec()?;
            with_field!(field.field, |f| {
                let ring = build_ring(&f, &spec, &primes.primes)?;
                let a = match (alpha, alpha_degree) {
                    (Some(t), _) => parse_polynomial(&f, t, Some(ring.nvars()))?,
                    (None, Some(e)) => ring.random_class(*e, &mut stream(seed.seed, &[label_key("annihilator")]))?,
                    (None, None) => return Err(CliError::usage("give --alpha or --alpha-degree")),
                };
                let rep = ring.annihilator_quotient_dims(&a)?;
                let mut v = to_value(&rep)?;
                v["alpha"] = json!(a.to_string());
                v["passes"] = json!(rep.passes());
                with_ring(v, ring_summary(&ring))
            })
        }
        Command::FvRank {
            field,
            primes,
            seed,
            p,
            v,
            ..
        } => {
            let spec = spec()?;
            with_field!(field.field, |f| {
                let ring = build_ring(&f, &spec, &primes.primes)?;
                let dir = match v {
                    Some(v) if v.len() == ring.nvars() => v.iter().map(|&c| f.from_i64(c)).collect(),
                    Some(v) => {
                        return Err(jacring_core::Error::VariableCountMismatch {
                            expected: ring.nvars(),
                            found: v.len(),
                        }
                        .into())
                    }
                    None => random_direction(&f, ring.nvars(), seed.seed, "fv-direction"),
                };
                let mut out = to_value(&f_v_rank(&ring, &dir, *p)?)?;
                out["direction"] = json!(dir.iter().map(|c| f.format(c)).collect::<Vec<_>>());
                with_ring(out, ring_summary(&ring))
            })
        }
        Command::YMembership {
            field, primes, alpha, ..
        } => {
            let spec = spec()?;
            with_field!(field.field, |f| {
                let ring = build_ring(&f, &spec, &primes.primes)?;
                let a = parse_polynomial(&f, alpha, Some(ring.nvars()))?;
                let member = membership_y(&ring, &a)?;
                let mut out = json!({"alpha": a.to_string(), "member": member});
                if member {
                    out["fiber"] = to_value(&incidence_fiber(&ring, &a)?)?;
                    out["tangent"] = to_value(&tangent_dim_y(&ring, &a)?)?;
                }
                with_ring(out, ring_summary(&ring))
            })
        }
        Command::Probe {
            field,
            primes,
            seed,
            p,
            samples,
            trials,
            ..
        } => {
            let spec = spec()?;
            with_field!(field.field, |f| {
                let ring = build_ring(&f, &spec, &primes.primes)?;
                with_ring(probe(&ring, *p, *samples, *trials, seed.seed)?, ring_summary(&ring))
            })
        }
        Command::ArithCheck { d_range } => {
            let (lo, hi) = parse_range(d_range)?;
            if lo > hi {
                return Err(CliError::usage("empty d range"));
            }
            let reports = (lo..=hi)
                .map(dimension_arithmetic_check)
                .collect::<jacring_core::Result<Vec<_>>>()?;
            let all = reports.iter().all(|r| r.passes);
            json!({"reports": to_value(&reports)?, "all_pass": all})
        }
        Command::Survey { .. } => return Err(CliError::Internal("surveys run through run_survey".into())),
    })
}
