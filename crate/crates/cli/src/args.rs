use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use jacring_core::FieldSpec;

#[derive(Debug, Parser)]
#[command(
    name = "jacring",
    version,
    about = "Rank experiments on Jacobian rings of smooth hypersurfaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Print the result table as CSV instead of a JSON record.
    #[arg(long, global = true)]
    pub csv: bool,

    /// Also write the JSON record to this file.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

/// Where the ring comes from. Exactly one option must be given.
#[derive(Debug, Clone, Default, Args)]
pub struct SourceArgs {
    /// Fermat hypersurface x0^D + ... + xN^D.
    #[arg(long, num_args = 2, value_names = ["N", "D"])]
    pub fermat: Option<Vec<usize>>,
    /// File holding one homogeneous polynomial.
    #[arg(long)]
    pub poly_file: Option<PathBuf>,
    /// Homogeneous polynomial given inline, e.g. "x0^4 + x1^4 + x2^4".
    #[arg(long)]
    pub poly: Option<String>,
    /// Random smooth hypersurface of degree D in N+1 variables (uses --seed).
    #[arg(long, num_args = 2, value_names = ["N", "D"])]
    pub random: Option<Vec<usize>>,
    /// Monomial complete intersection with these exponents, e.g. 3,3,3.
    #[arg(long, value_delimiter = ',')]
    pub ci: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Args)]
pub struct FieldArgs {
    /// Coefficient field: a prime p (F_p) or `q` for the rationals.
    #[arg(long, default_value = "65537")]
    pub field: FieldSpec,
}

#[derive(Debug, Clone, Args)]
pub struct PrimeArgs {
    /// Primes for multi-prime certification and smoothness checks.
    #[arg(long, env = "JACRING_PRIMES", value_delimiter = ',', default_value = "65537,1000003")]
    pub primes: Vec<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct SeedArgs {
    /// Master seed for every random draw.
    #[arg(long, default_value_t = jacring_core::rng::DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SurveyKind {
    Hilbert,
    Star,
    Slp,
    Arith,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Dimensions r_k of the graded pieces.
    Hilbert {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        primes: PrimeArgs,
        #[command(flatten)]
        seed: SeedArgs,
    },
    /// Perfectness of the pairings R^a x R^{N-a} -> R^N.
    Pairing {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        primes: PrimeArgs,
        #[command(flatten)]
        seed: SeedArgs,
        /// Single degree a (all degrees when omitted).
        #[arg(long)]
        a: Option<usize>,
    },
    /// Weak Lefschetz property for a linear form.
    Wlp {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        primes: PrimeArgs,
        #[command(flatten)]
        seed: SeedArgs,
        /// Linear form (defaults to the sum of the variables).
        #[arg(long)]
        linear: Option<String>,
    },
    /// Strong Lefschetz property for a linear form.
    Slp {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        primes: PrimeArgs,
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long)]
        linear: Option<String>,
    },
    /// Injectivity of G -> G*H^{d(n-1)} on the Fermat ring.
    Star {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        /// Single k (all k <= d-n-1 when omitted).
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Coefficient of the socle monomial in H^N for d = n+1.
    SocleCoeff {
        #[arg(long)]
        n: usize,
        /// Defaults to n+1.
        #[arg(long)]
        d: Option<usize>,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Best sampled cup-product rank and a maximal-variation witness.
    VariationMax {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        primes: PrimeArgs,
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Histogram of cup-product ranks over random deformations.
    VariationSpectrum {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        primes: PrimeArgs,
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Extra deformations to include (repeatable).
        #[arg(long)]
        xi: Vec<String>,
    },
    /// Rank of x0^{d-2} x1^2 on the Fermat curve.
    MinWitness {
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Rank of the Yukawa map mu_{d-n-1}(xi^{n-1}).
    Yukawa {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        primes: PrimeArgs,
        #[command(flatten)]
        seed: SeedArgs,
        /// Deformation of degree d (defaults to (x0 + ... + xn)^d).
        #[arg(long)]
        xi: Option<String>,
    },
    /// Kernel elements of maximal-rank maps square to zero.
    KernelSquare {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        primes: PrimeArgs,
        #[command(flatten)]
        seed: SeedArgs,
        /// Degree of eta (all a with a + 2e <= N when omitted).
        #[arg(long)]
        a: Option<usize>,
        /// Source degree of the map (all e >= 1 with a + 2e <= N when omitted).
        #[arg(long)]
        e: Option<usize>,
        #[arg(long, default_value_t = jacring_core::lefschetz::DEFAULT_SAMPLES)]
        samples: usize,
    },
    /// Dimensions of R/(0:alpha) and the duality identity.
    Annihilator {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        primes: PrimeArgs,
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long)]
        alpha: Option<String>,
        /// Degree of a random alpha when --alpha is omitted.
        #[arg(long)]
        alpha_degree: Option<usize>,
    },
    /// Rank of (A, B) -> A F + B F_v into S^p.
    FvRank {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        primes: PrimeArgs,
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long)]
        p: usize,
        /// Direction v as comma-separated integers (random when omitted).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        v: Option<Vec<i64>>,
    },
    /// Whether alpha^2 lies in J, with fibre and tangent data.
    YMembership {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        primes: PrimeArgs,
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long)]
        alpha: String,
    },
    /// Absolute-irreducibility probe on random points of E_v^p.
    Probe {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        primes: PrimeArgs,
        #[command(flatten)]
        seed: SeedArgs,
        /// Degree of the sampled forms (defaults to 2d-4).
        #[arg(long)]
        p: Option<usize>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Charts tried per form.
        #[arg(long, default_value_t = 10)]
        trials: usize,
    },
    /// Integer identities of the dimension counts.
    ArithCheck {
        /// Range such as 3..12 (inclusive).
        #[arg(long, default_value = "3..12")]
        d_range: String,
    },
    /// Run a grid of cells, appending one JSON record per cell.
    Survey {
        #[arg(long, value_enum)]
        kind: SurveyKind,
        /// JSONL file to append to; existing cells are skipped.
        #[arg(long)]
        jsonl: PathBuf,
        #[arg(long, default_value = "2..2")]
        n_range: String,
        #[arg(long, default_value = "3..8")]
        d_range: String,
        /// Number of variables for monomial complete intersections.
        #[arg(long, default_value = "1..3")]
        nvars_range: String,
        /// Exponent range for monomial complete intersections.
        #[arg(long, default_value = "2..4")]
        a_range: String,
        #[command(flatten)]
        field: FieldArgs,
    },
}
