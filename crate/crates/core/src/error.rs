use num_complex::Complex64;
use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("gamma pole: argument {0} is a non-positive integer")]
    GammaPole(Complex64),

    #[error("degenerate hypergeometric parameters: {0}")]
    DegenerateParameters(String),

    #[error("hypergeometric argument {0} outside the supported domain |z| < 1")]
    OutsideDomain(Complex64),

    #[error("hypergeometric series did not converge after {0} terms")]
    SeriesDivergence(usize),

    #[error("{0} is not a valid Pöschl-Teller regime (need real λ>1, real ½≤λ<1, or λ=½+iℓ with ℓ>0)")]
    InvalidRegime(Complex64),

    #[error("transfer-matrix entry {entry} has a Γ pole at argument {arg}")]
    EntryPole { entry: &'static str, arg: Complex64 },

    #[error("k={0} is a pole of the S matrix (|T22| below threshold)")]
    AtPole(Complex64),

    #[error("wavefunction node at x={0}: |ψ| below threshold")]
    NodeDetected(f64),

    #[error("Newton refinement did not converge within {iterations} iterations (last k={k}, |f|={fmag:.3e})")]
    NonConvergence {
        iterations: usize,
        k: Complex64,
        fmag: f64,
    },

    #[error("Newton refinement wandered from the seed {seed} to {k}")]
    DivergedFromSeed { seed: Complex64, k: Complex64 },

    #[error("classification ambiguous: k={0} is too close to the origin")]
    AmbiguousClassification(Complex64),

    #[error("ladder exponent mismatch: form has μ={found}, series seed has μ={expected}")]
    ExponentMismatch { expected: Complex64, found: Complex64 },

    #[error("degenerate raise at n={0}: leading coefficient collapsed")]
    DegenerateRaise(u32),

    #[error("overflow evaluating (cosh x)^μ at x={x} with μ={mu}")]
    Overflow { x: f64, mu: Complex64 },

    #[error("grid step {0} too coarse for the requested integration")]
    StepTooCoarse(f64),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("bad range: {0}")]
    BadRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;
