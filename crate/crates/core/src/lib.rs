//! Jacobian rings of smooth projective hypersurfaces as explicit graded
//! Artinian algebras over `Q` and `F_p`, together with the rank computations
//! built on them: Gorenstein pairings, Lefschetz properties, variation of
//! Hodge structure for plane curves, Yukawa couplings, and the linear algebra
//! of decomposable forms in the Jacobian ideal.

pub mod decomposable;
pub mod error;
pub mod field;
pub mod lefschetz;
pub mod linalg;
pub mod monomial;
pub mod poly;
pub mod ring;
pub mod rng;
pub mod variation;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals, DEFAULT_PRIMES};
pub use linalg::{multi_prime_rank, MultiPrimeRank, PrimeRank, RankMatrix};
pub use monomial::{monomial_basis, monomial_count, Monomial, MonomialBasis};
pub use poly::{parse_polynomial, parse_rational_polynomial, GradedPolynomial};
pub use ring::{random_smooth_hypersurface, JacobianRing, MultiplicationReport, RingOrigin};
pub use variation::{CurveFamily, PlaneCurveIvhs};
