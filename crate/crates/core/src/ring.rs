//! Graded Artinian quotients `R = S/J` of a polynomial ring by a homogeneous
//! ideal, built degree by degree with sparse exact elimination.
//!
//! Each graded piece `J^k` is spanned by `x_i * J^{k-1}` together with the
//! ideal generators of degree `k`. Its reduced echelon form over the
//! graded-lex columns of `S^k` splits the monomials into pivots (leading
//! monomials of `J^k`) and standard monomials, which form the basis of `R^k`.
//! Only degrees `0..=N+1` are ever built, `N` being the expected socle degree.

use std::collections::{BTreeMap, HashMap};

use rand::RngCore;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::linalg::RankMatrix;
use crate::monomial::{monomial_count, Monomial, MonomialBasis};
use crate::poly::GradedPolynomial;
use crate::rng::{label_key, stream};

type SparseRow<E> = Vec<(u32, E)>;

const PIVOT: u32 = u32::MAX;

/// One graded piece: the monomials of `S^k`, which of them are standard,
/// and the normal form of every pivot monomial.
#[derive(Debug, Clone)]
struct Piece<E> {
    basis: MonomialBasis,
    /// Column -> position among the standard monomials, or `PIVOT`.
    std_pos: Vec<u32>,
    standard: Vec<u32>,
    /// Pivot column -> its normal form over standard positions.
    reducers: HashMap<u32, SparseRow<E>>,
    /// Reduced echelon rows of `J^k` (pivot entry first), kept to seed degree `k+1`.
    ideal_rows: Vec<SparseRow<E>>,
}

impl<E> Piece<E> {
    fn dim(&self) -> usize {
        self.standard.len()
    }
}

/// Where the ideal came from.
#[derive(Debug, Clone)]
pub enum RingOrigin<F: Field> {
    /// Jacobian ideal of a hypersurface `F = 0`.
    Hypersurface { equation: GradedPolynomial<F> },
    /// Monomial complete intersection `(x_0^{a_0}, ..., x_n^{a_n})`.
    MonomialCi { exponents: Vec<usize> },
}

/// The graded ring `R = S/J` with cached per-degree data.
///
/// For a hypersurface of degree `d` in `P^n` the expected socle degree is
/// `N = (n+1)(d-2)`; for a monomial complete intersection it is
/// `sum(a_i - 1)`. The ring is smooth (Artinian with socle in degree `N`)
/// exactly when `R^{N+1} = 0`.
#[derive(Debug, Clone)]
pub struct JacobianRing<F: Field> {
    field: F,
    nvars: usize,
    origin: RingOrigin<F>,
    socle_degree: usize,
    pieces: Vec<Piece<F::Elem>>,
}

impl<F: Field> JacobianRing<F> {
    /// Jacobian ring of the hypersurface `equation = 0`.
    pub fn from_hypersurface(equation: &GradedPolynomial<F>) -> Result<Self> {
        let field = equation.field().clone();
        let d = equation.degree();
        let nvars = equation.nvars();
        if nvars < 2 {
            return Err(Error::precondition("a hypersurface needs at least two variables"));
        }
        if d < 2 {
            return Err(Error::precondition("hypersurface degree must be at least 2"));
        }
        field.require_characteristic_above(d as u64)?;
        let generators = equation.gradient()?;
        let socle_degree = nvars * (d - 2);
        let pieces = build_pieces(&field, nvars, &generators, socle_degree + 1);
        Ok(JacobianRing {
            field,
            nvars,
            origin: RingOrigin::Hypersurface {
                equation: equation.clone(),
            },
            socle_degree,
            pieces,
        })
    }

    /// Jacobian ring of the Fermat hypersurface `x_0^d + ... + x_n^d`.
    pub fn fermat(field: F, n: usize, d: usize) -> Result<Self> {
        Self::from_hypersurface(&GradedPolynomial::fermat(field, n, d))
    }

    /// `K[x_0..x_n] / (x_0^{a_0}, ..., x_n^{a_n})`.
    pub fn monomial_ci(field: F, exponents: &[usize]) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::precondition("at least one exponent is required"));
        }
        if exponents.iter().any(|&a| a < 2) {
            return Err(Error::precondition(
                "monomial complete intersection exponents must be at least 2",
            ));
        }
        let nvars = exponents.len();
        if nvars > crate::monomial::MAX_VARS {
            return Err(Error::TooManyVariables(nvars));
        }
        let generators: Vec<_> = exponents
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                let one = field.one();
                GradedPolynomial::monomial(field.clone(), nvars, Monomial::var(i).pow(a as u16), one)
            })
            .collect();
        let socle_degree = exponents.iter().map(|a| a - 1).sum();
        let pieces = build_pieces(&field, nvars, &generators, socle_degree + 1);
        Ok(JacobianRing {
            field,
            nvars,
            origin: RingOrigin::MonomialCi {
                exponents: exponents.to_vec(),
            },
            socle_degree,
            pieces,
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn n(&self) -> usize {
        self.nvars - 1
    }
    pub fn origin(&self) -> &RingOrigin<F> {
        &self.origin
    }
    /// The socle degree `N`.
    pub fn socle_degree(&self) -> usize {
        self.socle_degree
    }
    /// Largest degree for which graded data is available (`N + 1`).
    pub fn max_degree(&self) -> usize {
        self.socle_degree + 1
    }

    /// The hypersurface equation, if this is a Jacobian ring.
    pub fn equation(&self) -> Option<&GradedPolynomial<F>> {
        match &self.origin {
            RingOrigin::Hypersurface { equation } => Some(equation),
            RingOrigin::MonomialCi { .. } => None,
        }
    }

    /// Degree of the hypersurface, if this is a Jacobian ring.
    pub fn hypersurface_degree(&self) -> Option<usize> {
        self.equation().map(GradedPolynomial::degree)
    }

    /// `R^{N+1} = 0`; for a Jacobian ring this is smoothness of the hypersurface.
    pub fn is_smooth(&self) -> bool {
        self.pieces[self.socle_degree + 1].dim() == 0
    }

    pub fn require_smooth(&self) -> Result<()> {
        if self.is_smooth() {
            Ok(())
        } else {
            Err(Error::SingularRing)
        }
    }

    fn piece(&self, k: usize) -> Result<&Piece<F::Elem>> {
        self.pieces.get(k).ok_or(Error::DegreeOutOfRange {
            degree: k,
            max: self.max_degree(),
        })
    }

    /// `r_k = dim R^k`; zero above `N + 1` is not asserted, the degree is rejected.
    pub fn dim(&self, k: usize) -> Result<usize> {
        Ok(self.piece(k)?.dim())
    }

    /// `r_0, ..., r_N`.
    pub fn hilbert_function(&self) -> Vec<usize> {
        self.pieces[..=self.socle_degree].iter().map(Piece::dim).collect()
    }

    /// `dim S^k`.
    pub fn ambient_dim(&self, k: usize) -> usize {
        monomial_count(self.nvars - 1, k as i64)
    }

    /// `dim J^k`.
    pub fn ideal_dim(&self, k: usize) -> Result<usize> {
        Ok(self.ambient_dim(k) - self.dim(k)?)
    }

    /// The standard monomials spanning `R^k`, in basis order.
    pub fn standard_monomials(&self, k: usize) -> Result<Vec<Monomial>> {
        let p = self.piece(k)?;
        Ok(p.standard.iter().map(|&c| p.basis.get(c as usize)).collect())
    }

    fn check_poly(&self, f: &GradedPolynomial<F>) -> Result<()> {
        if f.nvars() != self.nvars {
            return Err(Error::VariableCountMismatch {
                expected: self.nvars,
                found: f.nvars(),
            });
        }
        Ok(())
    }

    /// Coordinates of the class of `f` in `R^k` over the standard monomials.
    pub fn normal_form(&self, f: &GradedPolynomial<F>) -> Result<Vec<F::Elem>> {
        self.check_poly(f)?;
        let piece = self.piece(f.degree())?;
        let fl = &self.field;
        let mut out = vec![fl.zero(); piece.dim()];
        for (m, c) in f.terms() {
            let col = piece.basis.index_of(m).expect("monomial of the right degree") as u32;
            accumulate(fl, piece, col, c, &mut out);
        }
        Ok(out)
    }

    /// True when `f` lies in `J`.
    pub fn in_ideal(&self, f: &GradedPolynomial<F>) -> Result<bool> {
        Ok(self.normal_form(f)?.iter().all(|c| self.field.is_zero(c)))
    }

    /// The polynomial `sum coords[j] * std_j` of degree `k`.
    pub fn lift(&self, k: usize, coords: &[F::Elem]) -> Result<GradedPolynomial<F>> {
        let piece = self.piece(k)?;
        if coords.len() != piece.dim() {
            return Err(Error::precondition(format!(
                "expected {} coordinates in degree {k}, got {}",
                piece.dim(),
                coords.len()
            )));
        }
        let terms = piece
            .standard
            .iter()
            .zip(coords)
            .map(|(&c, v)| (piece.basis.get(c as usize), v.clone()));
        GradedPolynomial::from_terms(self.field.clone(), self.nvars, k, terms)
    }

    /// Product of two classes given by coordinates.
    pub fn multiply_classes(&self, a_deg: usize, a: &[F::Elem], b_deg: usize, b: &[F::Elem]) -> Result<Vec<F::Elem>> {
        let prod = self.lift(a_deg, a)?.multiply(&self.lift(b_deg, b)?);
        self.normal_form(&prod)
    }

    /// A random class in `R^k`, returned as its standard-monomial lift.
    pub fn random_class(&self, k: usize, rng: &mut dyn RngCore) -> Result<GradedPolynomial<F>> {
        let coords: Vec<_> = (0..self.dim(k)?).map(|_| self.field.random(rng)).collect();
        self.lift(k, &coords)
    }

    /// Matrix of `beta -> alpha * beta` from `R^s` to `R^{s+e}` in the
    /// standard-monomial bases.
    pub fn multiplication_matrix(&self, alpha: &GradedPolynomial<F>, s: usize) -> Result<RankMatrix<F>> {
        let source = self.standard_monomials(s)?;
        self.image_matrix(alpha, &source)
    }

    /// Matrix whose columns are the normal forms of `alpha * m` for the given
    /// monomials `m`, all of one degree.
    pub fn image_matrix(&self, alpha: &GradedPolynomial<F>, source: &[Monomial]) -> Result<RankMatrix<F>> {
        self.check_poly(alpha)?;
        let s = source.first().map_or(0, Monomial::degree);
        if source.iter().any(|m| m.degree() != s) {
            return Err(Error::precondition("source monomials must share one degree"));
        }
        let target = self.piece(s + alpha.degree())?;
        let fl = &self.field;
        let rows = target.dim();
        let cols = source.len();
        let mut data = vec![fl.zero(); rows * cols];
        let mut column = vec![fl.zero(); rows];
        for (j, m) in source.iter().enumerate() {
            column.iter_mut().for_each(|v| *v = fl.zero());
            for (t, coef) in alpha.terms() {
                let col = target.basis.index_of(&t.mul(m)).expect("product has the target degree") as u32;
                accumulate(fl, target, col, coef, &mut column);
            }
            for (i, v) in column.iter().enumerate() {
                data[i * cols + j] = v.clone();
            }
        }
        Ok(RankMatrix::new(fl.clone(), rows, cols, data))
    }

    /// The multiplication map `mu_s(alpha): R^s -> R^{s+e}` with its rank and kernel.
    pub fn multiplication_operator(&self, alpha: &GradedPolynomial<F>, s: usize) -> Result<MultiplicationReport<F>> {
        let matrix = self.multiplication_matrix(alpha, s)?;
        let rank = matrix.rank();
        let kernel = matrix.kernel_basis();
        Ok(MultiplicationReport {
            alpha: alpha.clone(),
            source_degree: s,
            target_degree: s + alpha.degree(),
            rank,
            kernel,
            matrix,
        })
    }

    /// Coefficient of a class of degree `N` on the (single) socle monomial.
    fn socle_coordinate(&self, coords: &[F::Elem]) -> F::Elem {
        coords.first().cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Matrix of the pairing `R^a x R^{N-a} -> R^N` and whether it is perfect.
    pub fn gorenstein_pairing_check(&self, a: usize) -> Result<PairingReport<F>> {
        self.require_smooth()?;
        let n = self.socle_degree;
        if a > n {
            return Err(Error::DegreeOutOfRange { degree: a, max: n });
        }
        let left = self.standard_monomials(a)?;
        let right = self.standard_monomials(n - a)?;
        let socle = self.piece(n)?;
        let fl = &self.field;
        let one = fl.one();
        let matrix = RankMatrix::from_fn(fl.clone(), left.len(), right.len(), |_, i, j| {
            let col = socle.basis.index_of(&left[i].mul(&right[j])).expect("socle degree") as u32;
            let mut acc = vec![fl.zero(); socle.dim()];
            accumulate(fl, socle, col, &one, &mut acc);
            self.socle_coordinate(&acc)
        });
        let rank = matrix.rank();
        let perfect = left.len() == right.len() && rank == left.len();
        Ok(PairingReport {
            degree: a,
            rows: left.len(),
            cols: right.len(),
            rank,
            perfect,
            matrix,
        })
    }

    /// The socle generator: the unique standard monomial of `R^N`.
    pub fn socle_generator(&self) -> Result<SocleGenerator> {
        self.require_smooth()?;
        let std = self.standard_monomials(self.socle_degree)?;
        match std.as_slice() {
            [m] => Ok(SocleGenerator {
                degree: self.socle_degree,
                monomial: m.display(self.nvars),
                exponents: m.exponents(self.nvars).to_vec(),
            }),
            _ => Err(Error::precondition(format!(
                "socle is {}-dimensional, expected 1",
                std.len()
            ))),
        }
    }

    /// Checks `r_{N-e-s} - k_{N-e-s}(alpha) = r_s - k_s(alpha)` for every
    /// `0 <= s <= N-e` and that the top piece of `R/(0:alpha)` is a line.
    pub fn annihilator_quotient_dims(&self, alpha: &GradedPolynomial<F>) -> Result<AnnihilatorReport> {
        self.require_smooth()?;
        let e = alpha.degree();
        let n = self.socle_degree;
        if e > n {
            return Err(Error::DegreeOutOfRange { degree: e, max: n });
        }
        if self.in_ideal(alpha)? {
            return Err(Error::AlphaInIdeal);
        }
        let top = n - e;
        let entries: Vec<AnnihilatorEntry> = (0..=top)
            .map(|s| {
                let m = self.multiplication_matrix(alpha, s)?;
                let r = m.cols();
                let k = r - m.rank();
                Ok(AnnihilatorEntry {
                    s,
                    r_s: r,
                    k_s: k,
                    quotient_dim: r - k,
                })
            })
            .collect::<Result<_>>()?;
        let identity_holds = (0..=top).all(|s| entries[top - s].quotient_dim == entries[s].quotient_dim);
        let top_quotient_dim = entries[top].quotient_dim;
        Ok(AnnihilatorReport {
            alpha_degree: e,
            socle_degree: n,
            entries,
            identity_holds,
            top_quotient_dim,
        })
    }
}

/// Integer coefficients of random hypersurfaces are drawn from `0..BOUND`.
pub const RANDOM_COEFFICIENT_BOUND: u64 = 1 << 31;
/// Draws allowed before giving up on finding a smooth hypersurface.
pub const SMOOTH_RETRIES: usize = 10;

#[derive(Debug, Clone)]
pub struct SmoothSample {
    pub equation: GradedPolynomial<Rationals>,
    pub attempts: usize,
}

/// A dense form of degree `d` in `n+1` variables with random integer
/// coefficients, redrawn until its Jacobian ring is Artinian modulo every
/// prime in `primes`. Smoothness mod `p` implies smoothness over `Q`.
pub fn random_smooth_hypersurface(n: usize, d: usize, primes: &[u64], seed: u64) -> Result<SmoothSample> {
    if primes.is_empty() {
        return Err(Error::precondition("at least one prime is required"));
    }
    let fields = primes.iter().map(|&p| PrimeField::new(p)).collect::<Result<Vec<_>>>()?;
    for attempt in 0..SMOOTH_RETRIES {
        let mut rng = stream(seed, &[label_key("hypersurface"), n as u64, d as u64, attempt as u64]);
        let equation = GradedPolynomial::random_integer(n, d, RANDOM_COEFFICIENT_BOUND, &mut rng);
        let mut smooth = true;
        for f in &fields {
            if !JacobianRing::from_hypersurface(&equation.reduce(f)?)?.is_smooth() {
                smooth = false;
                break;
            }
        }
        if smooth {
            return Ok(SmoothSample {
                equation,
                attempts: attempt + 1,
            });
        }
    }
    Err(Error::precondition(format!(
        "no smooth hypersurface found in {SMOOTH_RETRIES} draws"
    )))
}

fn accumulate<F: Field>(fl: &F, piece: &Piece<F::Elem>, col: u32, coef: &F::Elem, out: &mut [F::Elem]) {
    let pos = piece.std_pos[col as usize];
    if pos != PIVOT {
        let slot = &mut out[pos as usize];
        *slot = fl.add(slot, coef);
    } else if let Some(red) = piece.reducers.get(&col) {
        for (p, v) in red {
            let slot = &mut out[*p as usize];
            *slot = fl.add(slot, &fl.mul(coef, v));
        }
    }
}

/// `a - c * b` on sparse rows sorted by column.
fn axpy<F: Field>(fl: &F, a: &[(u32, F::Elem)], c: &F::Elem, b: &[(u32, F::Elem)]) -> SparseRow<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, fl.neg(&fl.mul(c, &b[j].1))));
            j += 1;
        } else {
            let v = fl.sub(&a[i].1, &fl.mul(c, &b[j].1));
            if !fl.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn build_pieces<F: Field>(
    field: &F,
    nvars: usize,
    generators: &[GradedPolynomial<F>],
    max_degree: usize,
) -> Vec<Piece<F::Elem>> {
    let n = nvars - 1;
    let mut pieces: Vec<Piece<F::Elem>> = Vec::with_capacity(max_degree + 1);
    for k in 0..=max_degree {
        let basis = MonomialBasis::new(n, k);
        let total = basis.len();
        let mut pivots: BTreeMap<u32, SparseRow<F::Elem>> = BTreeMap::new();

        let insert = |mut row: SparseRow<F::Elem>, pivots: &mut BTreeMap<u32, SparseRow<F::Elem>>| {
            while let Some((lead, c)) = row.first().cloned() {
                match pivots.get(&lead) {
                    Some(p) => row = axpy(field, &row, &c, p),
                    None => {
                        let inv = field.inv(&c).expect("nonzero lead");
                        for e in row.iter_mut() {
                            e.1 = field.mul(&e.1, &inv);
                        }
                        pivots.insert(lead, row);
                        return;
                    }
                }
            }
        };

        if let Some(prev) = pieces.last() {
            'outer: for row in &prev.ideal_rows {
                for i in 0..nvars {
                    if pivots.len() == total {
                        break 'outer;
                    }
                    let shifted: SparseRow<F::Elem> = row
                        .iter()
                        .map(|(c, v)| {
                            let m = prev.basis.get(*c as usize).mul_var(i);
                            (basis.index_of(&m).expect("degree k") as u32, v.clone())
                        })
                        .collect();
                    insert(shifted, &mut pivots);
                }
            }
        }
        for g in generators.iter().filter(|g| g.degree() == k) {
            if pivots.len() == total {
                break;
            }
            let mut row: SparseRow<F::Elem> = g
                .terms()
                .map(|(m, c)| (basis.index_of(m).expect("degree k") as u32, c.clone()))
                .collect();
            row.sort_by_key(|e| e.0);
            insert(row, &mut pivots);
        }

        // Back substitution: rows with larger pivots are finished first.
        let mut done: BTreeMap<u32, SparseRow<F::Elem>> = BTreeMap::new();
        while let Some((pc, mut row)) = pivots.pop_last() {
            while let Some((col, c)) = row[1..].iter().find(|(col, _)| done.contains_key(col)).cloned() {
                row = axpy(field, &row, &c, &done[&col]);
            }
            done.insert(pc, row);
        }

        let mut std_pos = vec![PIVOT; total];
        let mut standard = Vec::with_capacity(total - done.len());
        for col in 0..total as u32 {
            if !done.contains_key(&col) {
                std_pos[col as usize] = standard.len() as u32;
                standard.push(col);
            }
        }
        let reducers = done
            .iter()
            .map(|(&pc, row)| {
                let nf = row[1..]
                    .iter()
                    .map(|(c, v)| (std_pos[*c as usize], field.neg(v)))
                    .collect();
                (pc, nf)
            })
            .collect();
        let ideal_rows = done.into_values().collect();
        pieces.push(Piece {
            basis,
            std_pos,
            standard,
            reducers,
            ideal_rows,
        });
    }
    pieces
}

/// Matrix, rank and kernel of `mu_s(alpha)`.
#[derive(Debug, Clone)]
pub struct MultiplicationReport<F: Field> {
    pub alpha: GradedPolynomial<F>,
    pub source_degree: usize,
    pub target_degree: usize,
    pub matrix: RankMatrix<F>,
    pub rank: usize,
    /// Basis of `K_s(alpha)` in standard-monomial coordinates of `R^s`.
    pub kernel: Vec<Vec<F::Elem>>,
}

impl<F: Field> MultiplicationReport<F> {
    pub fn source_dim(&self) -> usize {
        self.matrix.cols()
    }
    pub fn target_dim(&self) -> usize {
        self.matrix.rows()
    }
    pub fn kernel_dim(&self) -> usize {
        self.kernel.len()
    }
    pub fn is_maximal_rank(&self) -> bool {
        self.rank == self.source_dim().min(self.target_dim())
    }
}

#[derive(Debug, Clone)]
pub struct PairingReport<F: Field> {
    pub degree: usize,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub perfect: bool,
    pub matrix: RankMatrix<F>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SocleGenerator {
    pub degree: usize,
    pub monomial: String,
    pub exponents: Vec<u16>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnnihilatorEntry {
    pub s: usize,
    pub r_s: usize,
    pub k_s: usize,
    /// `r_s - k_s(alpha) = dim (R_alpha)^s`.
    pub quotient_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnnihilatorReport {
    pub alpha_degree: usize,
    pub socle_degree: usize,
    pub entries: Vec<AnnihilatorEntry>,
    pub identity_holds: bool,
    /// `dim (R_alpha)^{N-e}`, which must be 1.
    pub top_quotient_dim: usize,
}

impl AnnihilatorReport {
    pub fn passes(&self) -> bool {
        self.identity_holds && self.top_quotient_dim == 1
    }
}
