//! Exact wavefunctions, transfer matrix, S matrix and transmission/reflection
//! coefficients. α = 1 and ħ²/2m = 1 throughout; for general α substitute
//! x → αx, k → k/α in every formula.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::complexfn::{hyp2f1_zw, is_gamma_pole, lngamma};
use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Shape of the potential, fixed by λ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// real λ > 1
    Well,
    /// real ½ ≤ λ < 1
    LowBarrier,
    /// λ = ½ + iℓ, ℓ > 0
    HighBarrier,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Regime::Well => write!(f, "well"),
            Regime::LowBarrier => write!(f, "low-barrier"),
            Regime::HighBarrier => write!(f, "high-barrier"),
        }
    }
}

/// The potential parameter λ together with its validated regime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialSpec {
    lambda: Complex64,
    regime: Regime,
}

impl PotentialSpec {
    /// Classify λ into one of the three admissible regimes.
    pub fn new(lambda: Complex64) -> Result<Self> {
        let regime = if lambda.im == 0.0 {
            if lambda.re > 1.0 {
                Regime::Well
            } else if (0.5..1.0).contains(&lambda.re) {
                Regime::LowBarrier
            } else {
                return Err(Error::InvalidRegime(lambda));
            }
        } else if lambda.re == 0.5 && lambda.im > 0.0 {
            Regime::HighBarrier
        } else {
            return Err(Error::InvalidRegime(lambda));
        };
        Ok(Self { lambda, regime })
    }

    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// ℓ = Im λ in the high-barrier regime.
    pub fn ell(&self) -> Option<f64> {
        (self.regime == Regime::HighBarrier).then_some(self.lambda.im)
    }

    /// Integer λ (reflectionless potential).
    pub fn integer_lambda(&self) -> Option<u32> {
        (self.lambda.im == 0.0 && self.lambda.re.fract() == 0.0 && self.lambda.re > 1.0)
            .then_some(self.lambda.re as u32)
    }

    /// λ a positive half-odd integer (3/2, 5/2, …) or exactly 1/2.
    pub fn is_half_odd(&self) -> bool {
        self.lambda.im == 0.0 && (2.0 * self.lambda.re).fract() == 0.0 && self.lambda.re.fract() != 0.0
    }

    /// V(x) = −λ(λ−1)/cosh²x. Real in every regime.
    pub fn potential_value(&self, x: f64) -> Complex64 {
        potential_value_at(self.lambda, x)
    }
}

/// V(x) for an arbitrary λ, without the regime check (the formula itself is
/// defined for any λ; λ = 1 gives the free particle).
pub fn potential_value_at(lambda: Complex64, x: f64) -> Complex64 {
    let sech = 1.0 / x.cosh();
    -lambda * (lambda - 1.0) * (sech * sech)
}

/// Transfer matrix relating the plane-wave amplitudes at x → −∞ to x → +∞:
/// (A′, B′) = T (A, B).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferMatrix {
    pub t11: Complex64,
    pub t12: Complex64,
    pub t21: Complex64,
    pub t22: Complex64,
}

impl TransferMatrix {
    pub fn det(&self) -> Complex64 {
        self.t11 * self.t22 - self.t12 * self.t21
    }

    /// (A′, B′) for incoming amplitudes (A, B).
    pub fn apply(&self, a: Complex64, b: Complex64) -> (Complex64, Complex64) {
        (self.t11 * a + self.t12 * b, self.t21 * a + self.t22 * b)
    }

    fn max_norm(&self) -> f64 {
        self.t11
            .norm()
            .max(self.t12.norm())
            .max(self.t21.norm())
            .max(self.t22.norm())
    }
}

/// Scattering matrix (B, A′) = S (A, B′).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatterMatrix {
    pub s11: Complex64,
    pub s12: Complex64,
    pub s21: Complex64,
    pub s22: Complex64,
}

impl ScatterMatrix {
    /// Entrywise maximum of |S S† − 1|.
    pub fn unitarity_defect(&self) -> f64 {
        let m11 = self.s11 * self.s11.conj() + self.s12 * self.s12.conj() - 1.0;
        let m12 = self.s11 * self.s21.conj() + self.s12 * self.s22.conj();
        let m21 = self.s21 * self.s11.conj() + self.s22 * self.s12.conj();
        let m22 = self.s21 * self.s21.conj() + self.s22 * self.s22.conj() - 1.0;
        m11.norm().max(m12.norm()).max(m21.norm()).max(m22.norm())
    }
}

/// One transfer-matrix entry: exp(Σ lnΓ(num) − Σ lnΓ(den)). A Γ pole in a
/// denominator sends the entry to zero; one in a numerator is an error.
fn entry(
    name: &'static str,
    num: [Complex64; 2],
    den: [Complex64; 2],
) -> Result<Complex64> {
    for d in den {
        if is_gamma_pole(d) {
            return Ok(Complex64::new(0.0, 0.0));
        }
    }
    for n in num {
        if is_gamma_pole(n) {
            return Err(Error::EntryPole { entry: name, arg: n });
        }
    }
    let ln = lngamma(num[0])? + lngamma(num[1])? - lngamma(den[0])? - lngamma(den[1])?;
    Ok(ln.exp())
}

/// The four Γ-ratio entries of the transfer matrix.
pub fn transfer_matrix(spec: &PotentialSpec, k: Complex64) -> Result<TransferMatrix> {
    let lam = spec.lambda;
    let ik = I * k;
    let one = Complex64::new(1.0, 0.0);
    Ok(TransferMatrix {
        t11: entry("t11", [ik + 1.0, ik], [ik + 1.0 - lam, ik + lam])?,
        t12: entry("t12", [one - ik, ik], [one - lam, lam])?,
        t21: entry("t21", [ik + 1.0, -ik], [lam, one - lam])?,
        t22: entry("t22", [one - ik, -ik], [lam - ik, one - lam - ik])?,
    })
}

/// |T22| threshold below which k is reported as a pole of S.
const AT_POLE_RELATIVE: f64 = 1e-13;

/// S matrix assembled from the transfer matrix.
pub fn s_matrix(spec: &PotentialSpec, k: Complex64) -> Result<ScatterMatrix> {
    let t = transfer_matrix(spec, k)?;
    if t.t22.norm() < AT_POLE_RELATIVE * t.max_norm() {
        return Err(Error::AtPole(k));
    }
    Ok(ScatterMatrix {
        s11: -t.t21 / t.t22,
        s12: 1.0 / t.t22,
        s21: (t.t11 * t.t22 - t.t21 * t.t12) / t.t22,
        s22: t.t12 / t.t22,
    })
}

/// Reflection and transmission amplitudes r = −T21/T22, t = 1/T22.
pub fn amplitudes(spec: &PotentialSpec, k: Complex64) -> Result<(Complex64, Complex64)> {
    let t = transfer_matrix(spec, k)?;
    if t.t22.norm() < AT_POLE_RELATIVE * t.max_norm() {
        return Err(Error::AtPole(k));
    }
    Ok((-t.t21 / t.t22, 1.0 / t.t22))
}

/// Coefficients (R, T) = (|r|², |t|²) for real k ≠ 0.
pub fn coefficients(spec: &PotentialSpec, k: f64) -> Result<(f64, f64)> {
    if k == 0.0 {
        return Err(Error::BadRange("k = 0 is a Γ pole of the amplitudes".into()));
    }
    let (r, t) = amplitudes(spec, Complex64::new(k, 0.0))?;
    Ok((r.norm_sqr(), t.norm_sqr()))
}

/// Closed-form (R, T): sin²/sinh² expressions for real λ and the
/// cosh²/sinh²(πℓ) expressions in the high-barrier regime.
pub fn closed_form_coefficients(spec: &PotentialSpec, k: f64) -> (f64, f64) {
    let pi = std::f64::consts::PI;
    let sh2 = (pi * k).sinh().powi(2);
    match spec.regime {
        Regime::Well | Regime::LowBarrier => {
            let sn2 = (pi * spec.lambda.re).sin().powi(2);
            (sn2 / (sn2 + sh2), sh2 / (sn2 + sh2))
        }
        Regime::HighBarrier => {
            let ell = spec.lambda.im;
            let den = (pi * k).cosh().powi(2) + (pi * ell).sinh().powi(2);
            ((pi * ell).cosh().powi(2) / den, sh2 / den)
        }
    }
}

/// z = (1 + tanh x)/2 and 1−z, each computed to full relative precision.
fn hyp_argument(x: f64) -> (Complex64, Complex64) {
    let z = 1.0 / (1.0 + (-2.0 * x).exp());
    let w = 1.0 / (1.0 + (2.0 * x).exp());
    (Complex64::new(z, 0.0), Complex64::new(w, 0.0))
}

/// ln(2 cosh x), safe against overflow for large |x|.
fn ln_two_cosh(x: f64) -> f64 {
    x.abs() + (-2.0 * x.abs()).exp().ln_1p()
}

/// General solution U(x) = A e^{ikx} F(λ, 1−λ; ik+1; z)
/// + B (2 cosh x)^{ik} F(λ−ik, 1−λ−ik; 1−ik; z) with z = (1+tanh x)/2.
pub fn general_wavefunction(
    spec: &PotentialSpec,
    k: Complex64,
    a_amp: Complex64,
    b_amp: Complex64,
    x: f64,
) -> Result<Complex64> {
    let lam = spec.lambda;
    let ik = I * k;
    let (z, w) = hyp_argument(x);
    let mut u = Complex64::new(0.0, 0.0);
    if a_amp.norm() != 0.0 {
        let f = hyp2f1_zw(lam, 1.0 - lam, ik + 1.0, z, w)?;
        u += a_amp * (ik * x).exp() * f;
    }
    if b_amp.norm() != 0.0 {
        let f = hyp2f1_zw(lam - ik, 1.0 - lam - ik, 1.0 - ik, z, w)?;
        u += b_amp * (ik * ln_two_cosh(x)).exp() * f;
    }
    Ok(u)
}

/// The purely outgoing solution (the B branch with A = 0). At a zero of
/// T22(k) this is an eigenfunction of H with eigenvalue k².
pub fn outgoing_wavefunction(spec: &PotentialSpec, k: Complex64, x: f64) -> Result<Complex64> {
    general_wavefunction(spec, k, Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), x)
}
