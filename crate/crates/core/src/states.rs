//! The exact eigenfunction family P(sinh x)·(cosh x)^μ, the ladder operators
//! B± = ±cosh x ∂ₓ + κ sinh x connecting consecutive pole indices, and the
//! su(1,1) algebra they close.
//!
//! Everything is computed on the closed rule
//! cosh x ∂ₓ [P(s)(cosh x)^μ] = [P′(s)(1+s²) + μ s P(s)](cosh x)^μ, s = sinh x,
//! so raising, lowering, differentiation and the Hamiltonian action are exact
//! polynomial arithmetic. (cosh x)^μ means exp(μ ln cosh x) with the real
//! logarithm; cosh x > 0 makes this single-valued for complex μ.

use num_complex::Complex64;
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scattering::PotentialSpec;

/// Which of the two pole series k₁(n) = −i(n+λ), k₂(n) = −i(n−λ+1) an
/// operator or state belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Series {
    One,
    Two,
}

impl std::fmt::Display for Series {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Series::One => write!(f, "1"),
            Series::Two => write!(f, "2"),
        }
    }
}

/// κ_j(n) = i k_j(n): λ+n for series 1, n−λ+1 for series 2. Real part of the
/// arithmetic is exact for the fixture λ values.
pub fn kappa(spec: &PotentialSpec, series: Series, n: i64) -> Complex64 {
    match series {
        Series::One => spec.lambda() + n as f64,
        Series::Two => -spec.lambda() + (n as f64 + 1.0),
    }
}

/// k_j(n) = −i κ_j(n).
pub fn pole_momentum(spec: &PotentialSpec, series: Series, n: i64) -> Complex64 {
    let kp = kappa(spec, series, n);
    Complex64::new(kp.im, -kp.re)
}

/// One indexed ladder operator: B⁻_{j,n} = −cosh x ∂ₓ + κ_j(n) sinh x lowers
/// φ_{j,n} to φ_{j,n−1}; B⁺_{j,n} = cosh x ∂ₓ + κ_j(n−1) sinh x raises
/// φ_{j,n−1} to φ_{j,n}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderSpec {
    pub series: Series,
    pub n: u32,
    pub kappa: Complex64,
}

impl LadderSpec {
    pub fn new(spec: &PotentialSpec, series: Series, n: u32) -> Self {
        Self {
            series,
            n,
            kappa: kappa(spec, series, n as i64),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Raise,
    Lower,
}

/// f(x) = P(sinh x)·(cosh x)^μ with complex polynomial P (coeffs\[i\] is the
/// coefficient of sinh^i x) and complex exponent μ.
#[derive(Debug, Clone, PartialEq)]
pub struct SinhCoshForm {
    coeffs: Vec<Complex64>,
    mu: Complex64,
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

impl SinhCoshForm {
    pub fn new(coeffs: Vec<Complex64>, mu: Complex64) -> Self {
        let mut f = Self { coeffs, mu };
        f.trim();
        f
    }

    pub fn zero(mu: Complex64) -> Self {
        Self { coeffs: Vec::new(), mu }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn mu(&self) -> Complex64 {
        self.mu
    }

    /// Degree of P; zero form has no degree.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&ZERO) {
            self.coeffs.pop();
        }
    }

    fn max_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Rescale so the leading coefficient is 1.
    pub fn monic(mut self) -> Self {
        if let Some(&lead) = self.coeffs.last() {
            for c in &mut self.coeffs {
                *c /= lead;
            }
        }
        self
    }

    pub fn scale(mut self, factor: Complex64) -> Self {
        for c in &mut self.coeffs {
            *c *= factor;
        }
        self
    }

    /// P(sinh x)·exp(μ ln cosh x).
    pub fn evaluate(&self, x: f64) -> Result<Complex64> {
        let s = x.sinh();
        let mut p = ZERO;
        for &c in self.coeffs.iter().rev() {
            p = p * s + c;
        }
        let v = p * (self.mu * x.cosh().ln()).exp();
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Overflow { x, mu: self.mu })
        }
    }

    /// |P(sinh x)| measured against the polynomial's own magnitude scale
    /// Σ|pᵢ||s|^i; used for node detection ((cosh x)^μ never vanishes).
    pub fn relative_magnitude(&self, x: f64) -> f64 {
        let s = x.sinh();
        let mut p = ZERO;
        let mut scale = 0.0;
        let sa = s.abs();
        for &c in self.coeffs.iter().rev() {
            p = p * s + c;
            scale = scale * sa + c.norm();
        }
        if scale == 0.0 {
            0.0
        } else {
            p.norm() / scale
        }
    }

    /// d/dx as another SinhCoshForm: f′ = [P′(1+s²) + μ s P]·(cosh x)^{μ−1}.
    pub fn derivative(&self) -> SinhCoshForm {
        SinhCoshForm::new(q_coeffs(&self.coeffs, self.mu), self.mu - 1.0)
    }

    /// 1/‖f‖₂ for a decaying (bound-type) state, by Simpson quadrature over
    /// |x| ≤ 20. Errors when the tail exponent deg P + Re μ is not negative.
    pub fn l2_normalization(&self) -> Result<f64> {
        let tail = self.degree().unwrap_or(0) as f64 + self.mu.re;
        if tail >= 0.0 {
            return Err(Error::BadRange(format!(
                "state is not square integrable: tail exponent {tail} ≥ 0"
            )));
        }
        let grid = crate::numerics::Grid::new(-20.0, 20.0, 1e-3)?;
        let norm_sq = crate::numerics::quadrature_l2(
            |x| self.evaluate(x).unwrap_or(Complex64::new(f64::NAN, 0.0)),
            &grid,
        );
        Ok(1.0 / norm_sq.sqrt())
    }

    /// (±cosh x ∂ₓ + κ sinh x) f; the exponent μ is preserved.
    fn ladder_apply(&self, kappa_val: Complex64, sign: f64) -> SinhCoshForm {
        // ±[P′(1+s²) + μ s P] + κ s P
        let mut out = vec![ZERO; self.coeffs.len() + 2];
        for (i, &p) in self.coeffs.iter().enumerate() {
            if i >= 1 {
                let d = p * i as f64;
                out[i - 1] += sign * d;
                out[i + 1] += sign * d;
            }
            out[i + 1] += (sign * self.mu + kappa_val) * p;
        }
        SinhCoshForm::new(out, self.mu)
    }

    /// Multiply P by (1+s²)^m, lowering nothing; used to align exponents
    /// (f is unchanged as a function when μ is lowered by 2m in step).
    fn mul_one_plus_s2(&self, m: usize) -> Vec<Complex64> {
        let mut v = self.coeffs.clone();
        for _ in 0..m {
            let mut next = vec![ZERO; v.len() + 2];
            for (i, &c) in v.iter().enumerate() {
                next[i] += c;
                next[i + 2] += c;
            }
            v = next;
        }
        v
    }

    /// Proportionality test under the equivalence that lowering the larger μ
    /// by an even integer 2m multiplies P by (1+s²)^m. Returns the ratio
    /// other/self and the relative coefficient deviation.
    pub fn proportionality(&self, other: &SinhCoshForm) -> Result<(Complex64, f64)> {
        let dmu = self.mu - other.mu;
        if dmu.im.abs() > 1e-9 {
            return Err(Error::ExponentMismatch { expected: self.mu, found: other.mu });
        }
        let half = dmu.re / 2.0;
        if (half - half.round()).abs() > 1e-9 {
            return Err(Error::ExponentMismatch { expected: self.mu, found: other.mu });
        }
        let m = half.round() as i64;
        let (pa, pb) = if m >= 0 {
            (self.mul_one_plus_s2(m as usize), other.coeffs.clone())
        } else {
            (self.coeffs.clone(), other.mul_one_plus_s2((-m) as usize))
        };
        if pa.is_empty() || pb.is_empty() {
            return Ok((ZERO, if pa.len() == pb.len() { 0.0 } else { 1.0 }));
        }
        // ratio from the largest coefficient of pa
        let (imax, amax) = pa
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.norm().total_cmp(&y.1.norm()))
            .unwrap();
        let ratio = pb.get(imax).copied().unwrap_or(ZERO) / amax;
        let scale = amax.norm() * ratio.norm().max(1e-300);
        let mut dev: f64 = 0.0;
        for i in 0..pa.len().max(pb.len()) {
            let a = pa.get(i).copied().unwrap_or(ZERO);
            let b = pb.get(i).copied().unwrap_or(ZERO);
            dev = dev.max((a * ratio - b).norm() / scale);
        }
        Ok((ratio, dev))
    }
}

/// Q = P′(1+s²) + μ s P, the polynomial part of cosh x ∂ₓ f.
fn q_coeffs(p: &[Complex64], mu: Complex64) -> Vec<Complex64> {
    let mut out = vec![ZERO; p.len() + 2];
    for (i, &c) in p.iter().enumerate() {
        if i >= 1 {
            let d = c * i as f64;
            out[i - 1] += d;
            out[i + 1] += d;
        }
        out[i + 1] += mu * c;
    }
    out
}

/// Seed of a series: P = 1 with μ = λ (series 1) or μ = 1−λ (series 2).
/// For the high barrier these are the first decaying and growing Gamow
/// states (cosh x)^{±iℓ+1/2}.
pub fn seed(spec: &PotentialSpec, series: Series) -> SinhCoshForm {
    let mu = seed_mu(spec, series);
    SinhCoshForm::new(vec![Complex64::new(1.0, 0.0)], mu)
}

pub fn seed_mu(spec: &PotentialSpec, series: Series) -> Complex64 {
    match series {
        Series::One => spec.lambda(),
        Series::Two => 1.0 - spec.lambda(),
    }
}

/// Apply B±_{j,n} to a form of the matching series exponent.
pub fn apply_ladder(
    form: &SinhCoshForm,
    op: &LadderSpec,
    direction: Direction,
    spec: &PotentialSpec,
) -> Result<SinhCoshForm> {
    let expected = seed_mu(spec, op.series);
    if (form.mu() - expected).norm() > 1e-12 {
        return Err(Error::ExponentMismatch { expected, found: form.mu() });
    }
    match direction {
        Direction::Lower => Ok(form.ladder_apply(op.kappa, -1.0)),
        Direction::Raise => {
            // B⁺_{j,n} carries κ_j(n−1)
            let km1 = kappa(spec, op.series, op.n as i64 - 1);
            let raised = form.ladder_apply(km1, 1.0);
            let want_deg = form.degree().map(|d| d + 1);
            if raised.degree() != want_deg
                || raised
                    .coeffs()
                    .last()
                    .map(|l| l.norm() < 1e-12 * raised.max_coeff())
                    .unwrap_or(false)
            {
                return Err(Error::DegenerateRaise(op.n));
            }
            Ok(raised)
        }
    }
}

/// The n-th state of a series: the seed raised n times, with P made monic
/// after each raise.
pub fn state(spec: &PotentialSpec, series: Series, n: u32) -> Result<SinhCoshForm> {
    let mut f = seed(spec, series);
    for j in 1..=n {
        let op = LadderSpec::new(spec, series, j);
        f = apply_ladder(&f, &op, Direction::Raise, spec)?.monic();
    }
    Ok(f)
}

/// Energy eigenvalue of the n-th state: k_j(n)² = −κ_j(n)².
pub fn energy(spec: &PotentialSpec, series: Series, n: i64) -> Complex64 {
    let kp = kappa(spec, series, n);
    -kp * kp
}

/// H f = (−∂ₓ² − λ(λ−1) sech²x) f, exactly, at exponent μ−2: with
/// Q = P′(1+s²)+μsP the result polynomial is −[Q′(1+s²)+(μ−1)sQ] − λ(λ−1)P.
pub fn apply_hamiltonian(form: &SinhCoshForm, spec: &PotentialSpec) -> SinhCoshForm {
    let lam = spec.lambda();
    let q = q_coeffs(form.coeffs(), form.mu());
    let qq = q_coeffs(&q, form.mu() - 1.0);
    let c_v = lam * (lam - 1.0);
    let mut out = vec![ZERO; qq.len().max(form.coeffs().len())];
    for (i, &c) in qq.iter().enumerate() {
        out[i] -= c;
    }
    for (i, &c) in form.coeffs().iter().enumerate() {
        out[i] -= c_v * c;
    }
    SinhCoshForm::new(out, form.mu() - 2.0)
}

/// Relative deviation of H·form from e·form (after exponent alignment).
pub fn eigen_deviation(form: &SinhCoshForm, spec: &PotentialSpec, e: Complex64) -> f64 {
    let h = apply_hamiltonian(form, spec);
    match form.proportionality(&h) {
        Ok((ratio, dev)) => {
            let scale = e.norm().max(1.0);
            dev.max((ratio - e).norm() / scale)
        }
        Err(_) => f64::INFINITY,
    }
}

/// Eigenvalue of the diagonal operator B⁰_{j,n}: −κ_j(n).
pub fn diagonal_action(spec: &PotentialSpec, series: Series, n: u32) -> Complex64 {
    -kappa(spec, series, n as i64)
}

/// Per-level result of the su(1,1) identity check.
#[derive(Debug, Clone, Serialize)]
pub struct Su11Level {
    pub n: u32,
    /// deviation in (B⁰B⁺ − B⁺B⁰)φ = −B⁺φ
    pub grading_deviation: f64,
    /// deviation in (B⁻B⁺ − B⁺B⁻)φ = B⁰φ with B± scaled by 1/√2
    pub commutator_deviation: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Su11Report {
    pub series: Series,
    pub levels: Vec<Su11Level>,
    pub max_deviation: f64,
    /// the constant CB with [B⁻,B⁺] = CB·B⁰ for the unscaled ladder operators
    pub raw_commutator_factor: f64,
}

/// Verify the su(1,1) relations [B⁰,B±] = ∓B±, [B⁻,B⁺] = B⁰ on the states
/// φ₀ … φ_{n_max} with the graded (index-carrying) composition. The raw
/// ladder operators satisfy [B⁻,B⁺] = 2B⁰; the identities as printed hold
/// for B±/√2, which is what the check uses.
pub fn check_su11(spec: &PotentialSpec, series: Series, n_max: u32) -> Result<Su11Report> {
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let mut levels = Vec::new();
    let mut max_dev: f64 = 0.0;
    for n in 1..=n_max {
        let phi = state(spec, series, n - 1)?;
        let up = LadderSpec::new(spec, series, n);
        let down_n = LadderSpec::new(spec, series, n);
        let down_nm1 = LadderSpec::new(spec, series, n - 1);

        let bp = apply_ladder(&phi, &up, Direction::Raise, spec)?;

        // identity 1: B⁰(B⁺φ) − B⁺(B⁰φ) + B⁺φ = 0 (any overall B⁺ scale drops out)
        let b0_at_n = diagonal_action(spec, series, n);
        let b0_at_nm1 = diagonal_action(spec, series, n - 1);
        let lhs1 = bp.clone().scale(b0_at_n - b0_at_nm1 + 1.0);
        let scale1 = bp.max_coeff().max(1e-300);
        let dev1 = lhs1.max_coeff() / scale1;

        // identity 2: B̂⁻(B̂⁺φ) − B̂⁺(B̂⁻φ) = B⁰φ, each B̂± carrying 1/√2
        let half = Complex64::from(inv_sqrt2 * inv_sqrt2);
        let term1 = apply_ladder(&bp, &down_n, Direction::Lower, spec)?.scale(half);
        let bm = apply_ladder(&phi, &down_nm1, Direction::Lower, spec)?;
        let term2 = if bm.is_zero() {
            SinhCoshForm::zero(bm.mu())
        } else {
            apply_ladder(&bm, &down_nm1, Direction::Raise, spec)?.scale(half)
        };
        let rhs = phi.clone().scale(b0_at_nm1);
        let mut diff = vec![ZERO; term1.coeffs().len().max(term2.coeffs().len()).max(rhs.coeffs().len())];
        for (i, &c) in term1.coeffs().iter().enumerate() {
            diff[i] += c;
        }
        for (i, &c) in term2.coeffs().iter().enumerate() {
            diff[i] -= c;
        }
        for (i, &c) in rhs.coeffs().iter().enumerate() {
            diff[i] -= c;
        }
        let scale2 = rhs.max_coeff().max(1e-300);
        let dev2 = diff.iter().map(|c| c.norm()).fold(0.0, f64::max) / scale2;

        max_dev = max_dev.max(dev1).max(dev2);
        levels.push(Su11Level { n, grading_deviation: dev1, commutator_deviation: dev2 });
    }
    Ok(Su11Report {
        series,
        levels,
        max_deviation: max_dev,
        raw_commutator_factor: 2.0,
    })
}

impl Serialize for SinhCoshForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("SinhCoshForm", 2)?;
        st.serialize_field("mu", &[self.mu.re, self.mu.im])?;
        let coeffs: Vec<[f64; 2]> = self.coeffs.iter().map(|c| [c.re, c.im]).collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for SinhCoshForm {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            mu: [f64; 2],
            coeffs: Vec<[f64; 2]>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.coeffs.last() == Some(&[0.0, 0.0]) {
            return Err(D::Error::custom("leading coefficient must be nonzero"));
        }
        Ok(SinhCoshForm::new(
            raw.coeffs.iter().map(|c| Complex64::new(c[0], c[1])).collect(),
            Complex64::new(raw.mu[0], raw.mu[1]),
        ))
    }
}
