//! Supersymmetric partner construction by the factorization method. A
//! nodeless eigenfunction ψ with Hψ = εψ and square-integrable inverse gives
//! the superpotential W = ψ′/ψ, the factorization H = A⁺A⁻ + ε with
//! A± = ±∂ₓ + W, and the partner potential Ṽ = W² − W′ + ε whose Hamiltonian
//! gains 1/ψ as an eigenstate at ε. Antibound states give real partners,
//! Gamow states complex ones; nothing here assumes Hermiticity.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scattering::PotentialSpec;
use crate::states::{energy, state, Series, SinhCoshForm};

/// Relative |P(sinh x)| below which x counts as a node of the factor state.
const NODE_THRESHOLD: f64 = 1e-12;

/// A factorization model: the factor eigenfunction, its energy ε and the
/// base potential it factorizes.
#[derive(Debug, Clone)]
pub struct PartnerModel {
    spec: PotentialSpec,
    factor_state: SinhCoshForm,
    factor_derivative: SinhCoshForm,
    epsilon: Complex64,
}

impl PartnerModel {
    /// Build the model from the n-th ladder state of a series, screening the
    /// preconditions: no zeros on a dense grid |x| ≤ 10, and 1/ψ decaying at
    /// ±∞ (tail exponent deg P + Re μ > 0).
    pub fn new(spec: &PotentialSpec, series: Series, n: u32) -> Result<Self> {
        let factor_state = state(spec, series, n)?;
        let eps = energy(spec, series, n as i64);
        Self::from_eigenfunction(spec, factor_state, eps)
    }

    /// Same screening for an explicitly supplied eigenfunction of the base
    /// Hamiltonian. The accepted state is rescaled so that ψ(0) = 1, the
    /// normalization of the printed partner examples.
    pub fn from_eigenfunction(
        spec: &PotentialSpec,
        factor_state: SinhCoshForm,
        epsilon: Complex64,
    ) -> Result<Self> {
        let tail = factor_state.degree().unwrap_or(0) as f64 + factor_state.mu().re;
        if tail <= 0.0 {
            return Err(Error::BadRange(format!(
                "1/ψ is not square integrable: tail exponent {tail} ≤ 0"
            )));
        }
        // dense node screen on |x| ≤ 10 (the grid contains x = 0 exactly);
        // real-coefficient states additionally get a sign-change check so
        // that zeros between sample points cannot slip through
        let real_coeffs = factor_state.coeffs().iter().all(|c| c.im == 0.0);
        let mut prev_sign = 0.0f64;
        for i in -1000..=1000i32 {
            let x = f64::from(i) * 0.01;
            if factor_state.relative_magnitude(x) < NODE_THRESHOLD {
                return Err(Error::NodeDetected(x));
            }
            if real_coeffs {
                let sign = poly_value(&factor_state, x).re.signum();
                if prev_sign != 0.0 && sign != prev_sign {
                    return Err(Error::NodeDetected(x));
                }
                prev_sign = sign;
            }
        }
        let at_origin = factor_state.evaluate(0.0)?;
        let factor_state = factor_state.scale(1.0 / at_origin);
        let factor_derivative = factor_state.derivative();
        Ok(Self {
            spec: *spec,
            factor_state,
            factor_derivative,
            epsilon,
        })
    }

    pub fn epsilon(&self) -> Complex64 {
        self.epsilon
    }

    pub fn base_lambda(&self) -> Complex64 {
        self.spec.lambda()
    }

    pub fn spec(&self) -> &PotentialSpec {
        &self.spec
    }

    pub fn factor_state(&self) -> &SinhCoshForm {
        &self.factor_state
    }

    fn check_node(&self, x: f64) -> Result<()> {
        if self.factor_state.relative_magnitude(x) < NODE_THRESHOLD {
            Err(Error::NodeDetected(x))
        } else {
            Ok(())
        }
    }

    /// W(x) = ψ′(x)/ψ(x), from the exact symbolic derivative.
    pub fn superpotential(&self, x: f64) -> Result<Complex64> {
        self.check_node(x)?;
        Ok(self.factor_derivative.evaluate(x)? / self.factor_state.evaluate(x)?)
    }

    /// |W² + W′ + ε − V|: the factorization defect at x. W′ is
    /// ψ″/ψ − W², so the residual reduces to |ψ″/ψ + ε − V| evaluated
    /// symbolically.
    pub fn factorization_residual(&self, x: f64) -> Result<f64> {
        self.check_node(x)?;
        let psi = self.factor_state.evaluate(x)?;
        let second = self.factor_derivative.derivative().evaluate(x)?;
        let v = self.spec.potential_value(x);
        Ok((second / psi + self.epsilon - v).norm())
    }

    /// Partner potential Ṽ(x) = W²(x) − W′(x) + ε = 2W² − ψ″/ψ + ε.
    pub fn partner_potential(&self, x: f64) -> Result<Complex64> {
        self.check_node(x)?;
        let psi = self.factor_state.evaluate(x)?;
        let w = self.factor_derivative.evaluate(x)? / psi;
        let second = self.factor_derivative.derivative().evaluate(x)?;
        Ok(2.0 * w * w - second / psi + self.epsilon)
    }

    /// The new ground state of the partner Hamiltonian, ψ̃ = 1/ψ.
    pub fn partner_ground_state(&self, x: f64) -> Result<Complex64> {
        self.check_node(x)?;
        Ok(1.0 / self.factor_state.evaluate(x)?)
    }

    /// A⁻ applied to an eigenfunction of the base Hamiltonian: (−∂ₓ + W)ψ_b,
    /// an eigenfunction of the partner Hamiltonian at the same energy.
    pub fn intertwine_state(&self, bound: &SinhCoshForm, x: f64) -> Result<Complex64> {
        self.check_node(x)?;
        let w = self.superpotential(x)?;
        Ok(-bound.derivative().evaluate(x)? + w * bound.evaluate(x)?)
    }
}

/// P(sinh x) alone, without the (cosh x)^μ factor.
fn poly_value(form: &SinhCoshForm, x: f64) -> Complex64 {
    let s = x.sinh();
    let mut p = Complex64::new(0.0, 0.0);
    for &c in form.coeffs().iter().rev() {
        p = p * s + c;
    }
    p
}
