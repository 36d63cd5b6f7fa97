//! Analytic enumeration, classification and Newton refinement of the poles of
//! S(k). The poles are the zeros of 1/t(k) = Γ(1−ik)Γ(−ik)/(Γ(λ−ik)Γ(1−λ−ik)),
//! i.e. k₁(n) = −i(n+λ) and k₂(n) = −i(n−λ+1).

use num_complex::Complex64;


use crate::complexfn::{digamma, is_gamma_pole, lngamma};
use crate::error::{Error, Result};
use crate::scattering::{PotentialSpec, Regime};
use crate::states::{pole_momentum, Series};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Physical character of a point in the pole table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoleKind {
    /// simple pole on the positive imaginary axis, square-integrable state
    Bound,
    /// simple pole on the negative imaginary axis (virtual state)
    Antibound,
    /// fourth-quadrant pole, decaying Gamow state
    ResonanceDecaying,
    /// third-quadrant pole, growing Gamow state
    ResonanceGrowing,
    /// k = 0 for integer λ: neither a singularity nor a zero of S
    NullAtOrigin,
    /// integer-λ points where S has zeros instead of poles
    ZeroOfS,
}

impl std::fmt::Display for PoleKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            PoleKind::Bound => "bound",
            PoleKind::Antibound => "antibound",
            PoleKind::ResonanceDecaying => "resonance-decaying",
            PoleKind::ResonanceGrowing => "resonance-growing",
            PoleKind::NullAtOrigin => "null-at-origin",
            PoleKind::ZeroOfS => "zero-of-s",
        };
        write!(f, "{s}")
    }
}

/// One row of the pole table.
#[derive(Debug, Clone, PartialEq)]
pub struct PoleRecord {
    pub series: Series,
    pub n: u32,
    pub k: Complex64,
    /// energy = k² (ħ²/2m = 1)
    pub energy: Complex64,
    pub kind: PoleKind,
    /// for half-odd λ, the coinciding series-2 record: k₁(n) = k₂(2λ−1+n)
    pub duplicate_of: Option<(Series, u32)>,
}

fn record(
    spec: &PotentialSpec,
    series: Series,
    n: u32,
    kind: PoleKind,
    duplicate_of: Option<(Series, u32)>,
) -> PoleRecord {
    let k = pole_momentum(spec, series, n as i64);
    PoleRecord { series, n, k, energy: k * k, kind, duplicate_of }
}

/// All pole-table entries with index n ≤ n_max, series 2 first.
///
/// Integer λ is the reflectionless exception: series 2 carries bound poles
/// for n ≤ λ−2, the k = 0 point at n = λ−1, zeros of S for n = λ..2λ−2
/// (κ = 1..λ−1; at n = 2λ−1 both denominator Γ poles coincide and the limit is
/// finite), and nothing else; series 1 contributes no records at all.
pub fn enumerate_poles(spec: &PotentialSpec, n_max: u32) -> Vec<PoleRecord> {
    let mut out = Vec::new();
    match spec.regime() {
        Regime::HighBarrier => {
            for n in 0..=n_max {
                out.push(record(spec, Series::One, n, PoleKind::ResonanceDecaying, None));
            }
            for n in 0..=n_max {
                out.push(record(spec, Series::Two, n, PoleKind::ResonanceGrowing, None));
            }
        }
        Regime::Well | Regime::LowBarrier => {
            if let Some(l) = spec.integer_lambda() {
                for n in 0..=n_max {
                    let kind = if n + 2 <= l {
                        PoleKind::Bound
                    } else if n + 1 == l {
                        PoleKind::NullAtOrigin
                    } else if n <= 2 * l - 2 {
                        PoleKind::ZeroOfS
                    } else {
                        continue;
                    };
                    out.push(record(spec, Series::Two, n, kind, None));
                }
                return out;
            }
            let lam = spec.lambda().re;
            for n in 0..=n_max {
                let kind = if (n as f64) < lam - 1.0 {
                    PoleKind::Bound
                } else {
                    PoleKind::Antibound
                };
                out.push(record(spec, Series::Two, n, kind, None));
            }
            let two_lam_m1 = if spec.is_half_odd() {
                Some((2.0 * lam - 1.0) as u32)
            } else {
                None
            };
            for n in 0..=n_max {
                let dup = two_lam_m1.map(|shift| (Series::Two, n + shift));
                out.push(record(spec, Series::One, n, PoleKind::Antibound, dup));
            }
        }
    }
    out
}

/// Resonance energy and width: E_R = ℓ² − γₙ², Γ = 4ℓγₙ with γₙ = n + ½.
pub fn resonance_parameters(ell: f64, n: u32) -> (f64, f64) {
    let gamma_n = n as f64 + 0.5;
    (ell * ell - gamma_n * gamma_n, 4.0 * ell * gamma_n)
}

/// Quadrant/axis classification of a pole position.
pub fn classify(k: Complex64) -> Result<PoleKind> {
    const AXIS: f64 = 1e-12;
    if k.re.abs() < AXIS && k.im.abs() < AXIS {
        return Err(Error::AmbiguousClassification(k));
    }
    if k.re.abs() < AXIS {
        return Ok(if k.im > 0.0 { PoleKind::Bound } else { PoleKind::Antibound });
    }
    if k.im < 0.0 {
        return Ok(if k.re > 0.0 {
            PoleKind::ResonanceDecaying
        } else {
            PoleKind::ResonanceGrowing
        });
    }
    Err(Error::AmbiguousClassification(k))
}

/// The four Γ arguments of 1/t(k).
fn f_arguments(lambda: Complex64, k: Complex64) -> [Complex64; 4] {
    let ik = I * k;
    [1.0 - ik, -ik, lambda - ik, 1.0 - lambda - ik]
}

/// |1/t(k)|: exactly 0.0 on a denominator Γ pole (a zero of 1/t), infinite
/// on a numerator pole.
fn inv_t_magnitude(lambda: Complex64, k: Complex64) -> Result<f64> {
    let [n1, n2, d1, d2] = f_arguments(lambda, k);
    if is_gamma_pole(d1) || is_gamma_pole(d2) {
        return Ok(0.0);
    }
    if is_gamma_pole(n1) || is_gamma_pole(n2) {
        return Ok(f64::INFINITY);
    }
    let ln = lngamma(n1)? + lngamma(n2)? - lngamma(d1)? - lngamma(d2)?;
    Ok(ln.re.exp())
}

/// Logarithmic derivative f′/f of f = 1/t, from digamma; None when an
/// argument sits exactly on a ψ pole (then k is exactly a zero or pole of f).
fn log_derivative(lambda: Complex64, k: Complex64) -> Result<Option<Complex64>> {
    let [n1, n2, d1, d2] = f_arguments(lambda, k);
    if [n1, n2, d1, d2].iter().any(|&z| is_gamma_pole(z)) {
        return Ok(None);
    }
    Ok(Some(
        -I * (digamma(n1)? + digamma(n2)? - digamma(d1)? - digamma(d2)?),
    ))
}

const MAX_NEWTON: usize = 50;
const SEED_RADIUS: f64 = 0.5;
const STEP_CAP: f64 = 0.2;

/// Damped Newton refinement of a pole seed: k ← k − f/f′ with f = 1/t and
/// f′/f from digamma, the step clamped to [`STEP_CAP`] and backtracked until
/// |f| decreases. The clamp and line search matter for ½ ≤ λ < 1 and for
/// λ close to an integer, where the zeros of 1/t sit 0.5 apart with Γ poles
/// interleaved; they also keep the double zeros at half-odd-λ coincidences
/// (linear Newton convergence) inside the iteration budget.
pub fn refine_pole(spec: &PotentialSpec, k0: Complex64) -> Result<Complex64> {
    let lam = spec.lambda();
    let mut k = k0;
    let mut fk = inv_t_magnitude(lam, k)?;
    for _ in 0..MAX_NEWTON {
        if fk == 0.0 {
            return Ok(k);
        }
        let Some(g) = log_derivative(lam, k)? else {
            // exactly on a numerator Γ pole, which is not a zero of 1/t
            return Err(Error::NonConvergence { iterations: 0, k, fmag: fk });
        };
        let mut step = -1.0 / g;
        if !(step.norm() > 0.0) {
            return Err(Error::NonConvergence { iterations: 0, k, fmag: fk });
        }
        if step.norm() > STEP_CAP {
            step *= STEP_CAP / step.norm();
        }
        let mut trial = k + step;
        let mut ft = inv_t_magnitude(lam, trial)?;
        for _ in 0..8 {
            if ft < fk {
                break;
            }
            step *= 0.5;
            trial = k + step;
            ft = inv_t_magnitude(lam, trial)?;
        }
        k = trial;
        fk = ft;
        if (k - k0).norm() > SEED_RADIUS {
            return Err(Error::DivergedFromSeed { seed: k0, k });
        }
        if step.norm() <= 1e-13 * (1.0 + k.norm()) {
            break;
        }
    }
    if fk < 1e-10 {
        Ok(k)
    } else {
        Err(Error::NonConvergence { iterations: MAX_NEWTON, k, fmag: fk })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn spec(re: f64, im: f64) -> PotentialSpec {
        PotentialSpec::new(c(re, im)).unwrap()
    }

    fn series2(records: &[PoleRecord]) -> Vec<&PoleRecord> {
        records.iter().filter(|r| r.series == Series::Two).collect()
    }

    #[test]
    fn well_pole_table_values() {
        // λ = 3.5: k₂ = i2.5, i1.5, i0.5, −i0.5, −i1.5, −i2.5, −i3.5
        let recs = enumerate_poles(&spec(3.5, 0.0), 6);
        let s2 = series2(&recs);
        let want = [2.5, 1.5, 0.5, -0.5, -1.5, -2.5, -3.5];
        assert_eq!(s2.len(), 7);
        for (r, &im) in s2.iter().zip(want.iter()) {
            assert_eq!(r.k, c(0.0, im));
            assert_eq!(r.kind, if im > 0.0 { PoleKind::Bound } else { PoleKind::Antibound });
            assert_eq!(r.energy, c(-im * im, 0.0));
        }
        let bound = recs.iter().filter(|r| r.kind == PoleKind::Bound).count();
        assert_eq!(bound, 3);
    }

    #[test]
    fn low_barrier_pole_table() {
        // λ = 0.75: k₂ = −i0.25 … −i4.25, all antibound
        let recs = enumerate_poles(&spec(0.75, 0.0), 4);
        let s2 = series2(&recs);
        assert_eq!(s2.len(), 5);
        for (n, r) in s2.iter().enumerate() {
            assert_eq!(r.k, c(0.0, -(n as f64 + 0.25)));
            assert_eq!(r.kind, PoleKind::Antibound);
            assert_eq!(r.duplicate_of, None);
        }
    }

    #[test]
    fn high_barrier_pole_pairs() {
        let recs = enumerate_poles(&spec(0.5, 2.0), 0);
        assert_eq!(recs.len(), 2);
        let k1 = recs.iter().find(|r| r.series == Series::One).unwrap();
        let k2 = recs.iter().find(|r| r.series == Series::Two).unwrap();
        assert_eq!(k1.k, c(2.0, -0.5));
        assert_eq!(k1.kind, PoleKind::ResonanceDecaying);
        assert_eq!(k2.k, c(-2.0, -0.5));
        assert_eq!(k2.kind, PoleKind::ResonanceGrowing);
        // no pole on the imaginary axis or in the upper half plane
        for r in enumerate_poles(&spec(0.5, 2.0), 8) {
            assert!(r.k.im < 0.0 && r.k.re != 0.0);
        }
    }

    #[test]
    fn integer_lambda_table() {
        // λ = 3: bound at i2, i; k = 0; zeros of S at −i, −2i; nothing else
        let recs = enumerate_poles(&spec(3.0, 0.0), 6);
        assert!(recs.iter().all(|r| r.series == Series::Two));
        let kinds: Vec<_> = recs.iter().map(|r| (r.n, r.kind, r.k)).collect();
        assert_eq!(
            kinds,
            vec![
                (0, PoleKind::Bound, c(0.0, 2.0)),
                (1, PoleKind::Bound, c(0.0, 1.0)),
                (2, PoleKind::NullAtOrigin, c(0.0, 0.0)),
                (3, PoleKind::ZeroOfS, c(0.0, -1.0)),
                (4, PoleKind::ZeroOfS, c(0.0, -2.0)),
            ]
        );
        assert!(!recs.iter().any(|r| r.kind == PoleKind::Antibound));
    }

    #[test]
    fn half_odd_inclusion_exact() {
        for lam in [1.5, 2.5, 3.5] {
            let s = spec(lam, 0.0);
            let shift = (2.0 * lam - 1.0) as u32;
            for n in 0..=8u32 {
                let k1 = pole_momentum(&s, Series::One, n as i64);
                let k2 = pole_momentum(&s, Series::Two, (n + shift) as i64);
                assert_eq!(k1, k2, "λ={lam} n={n}");
            }
            // duplicates carry the cross-reference
            let recs = enumerate_poles(&s, 4);
            for r in recs.iter().filter(|r| r.series == Series::One) {
                assert_eq!(r.duplicate_of, Some((Series::Two, r.n + shift)));
            }
        }
    }

    #[test]
    fn lambda_half_degeneracy() {
        let s = spec(0.5, 0.0);
        for n in 0..=8 {
            assert_eq!(
                pole_momentum(&s, Series::One, n),
                pole_momentum(&s, Series::Two, n)
            );
        }
        let recs = enumerate_poles(&s, 3);
        for r in recs.iter().filter(|r| r.series == Series::One) {
            assert_eq!(r.duplicate_of, Some((Series::Two, r.n)));
        }
    }

    #[test]
    fn bound_state_counts() {
        let count = |lam: f64| {
            enumerate_poles(&spec(lam, 0.0), 12)
                .iter()
                .filter(|r| r.kind == PoleKind::Bound)
                .count()
        };
        assert_eq!(count(3.5), 3); // [λ] = λ − ½
        assert_eq!(count(2.5), 2);
        assert_eq!(count(2.25), 2);
        assert_eq!(count(0.75), 0);
    }

    #[test]
    fn resonance_parameter_examples() {
        let (er, gamma) = resonance_parameters(2.0, 0);
        assert_eq!((er, gamma), (3.75, 4.0));
        let (er, gamma) = resonance_parameters(2.0, 2);
        assert_eq!((er, gamma), (-2.25, 20.0));
        // E_R = 0 when γₙ = ℓ
        let (er, _) = resonance_parameters(1.5, 1);
        assert_eq!(er, 0.0);
        // k₁(n)² = E_R − iΓ/2
        let s = spec(0.5, 2.0);
        let k1 = pole_momentum(&s, Series::One, 0);
        let (er, gamma) = resonance_parameters(2.0, 0);
        assert!((k1 * k1 - c(er, -gamma / 2.0)).norm() < 1e-14);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(c(0.0, 1.5)).unwrap(), PoleKind::Bound);
        assert_eq!(classify(c(0.0, -4.5)).unwrap(), PoleKind::Antibound);
        assert_eq!(classify(c(3.0, -2.5)).unwrap(), PoleKind::ResonanceDecaying);
        assert_eq!(classify(c(-3.0, -2.5)).unwrap(), PoleKind::ResonanceGrowing);
        assert!(classify(c(1e-13, -1e-13)).is_err());
    }

    #[test]
    fn refine_pole_examples() {
        let k = refine_pole(&spec(3.5, 0.0), c(0.0, 2.4)).unwrap();
        assert!((k - c(0.0, 2.5)).norm() < 1e-8);
        let k = refine_pole(&spec(0.5, 2.0), c(1.9, -0.6)).unwrap();
        assert!((k - c(2.0, -0.5)).norm() < 1e-8);
        let k = refine_pole(&spec(0.75, 0.0), c(0.0, -0.2)).unwrap();
        assert!((k - c(0.0, -0.25)).norm() < 1e-8);
    }

    #[test]
    fn refine_pole_from_exact_seed() {
        // starting exactly on the zero must return it unchanged
        let k = refine_pole(&spec(3.5, 0.0), c(0.0, 2.5)).unwrap();
        assert_eq!(k, c(0.0, 2.5));
    }

    #[test]
    fn refine_all_analytic_poles() {
        // every pole with n ≤ 8 in every regime, seeded off by 0.1(1+i);
        // includes the double zeros of the half-odd duplications
        let perturb = c(0.1, 0.1);
        for s in [spec(3.5, 0.0), spec(2.25, 0.0), spec(0.75, 0.0), spec(0.5, 2.0), spec(0.5, 3.0)] {
            for series in [Series::One, Series::Two] {
                if s.integer_lambda().is_some() {
                    continue;
                }
                for n in 0..=8 {
                    let exact = pole_momentum(&s, series, n);
                    let got = refine_pole(&s, exact + perturb).unwrap();
                    assert!(
                        (got - exact).norm() < 1e-8,
                        "λ={} series {series} n={n}: got {got}, want {exact}",
                        s.lambda()
                    );
                }
            }
        }
    }

    #[test]
    fn integer_lambda_zero_and_pole_structure() {
        // λ = 3: |t| blows up near bound poles (T22 → 0) and vanishes near
        // the zeros −i, −2i, but stays O(1) near −3i.
        let s = spec(3.0, 0.0);
        let t_mag = |k: Complex64| {
            let t = crate::scattering::transfer_matrix(&s, k).unwrap();
            1.0 / t.t22.norm()
        };
        let d = c(1e-6, 1e-6);
        assert!(t_mag(c(0.0, 2.0) + d) > 1e4);
        assert!(t_mag(c(0.0, 1.0) + d) > 1e4);
        assert!(t_mag(c(0.0, -1.0) + d) < 1e-4);
        assert!(t_mag(c(0.0, -2.0) + d) < 1e-4);
        let mid = t_mag(c(0.0, -3.0) + d);
        assert!(mid > 1e-2 && mid < 1e2, "|t| near −3i should be O(1), got {mid}");
        // exact value 1/10 at k = −3i from t = (1−ik)(2−ik)/((1+ik)(2+ik))
        assert!((t_mag(c(0.0, -3.0) + d) - 0.1).abs() < 1e-3);
    }
}
