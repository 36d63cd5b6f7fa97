//! Independent numerical machinery used for verification only: finite-
//! difference Hamiltonian residuals, Numerov integration of the Schrödinger
//! equation and Simpson quadrature. Nothing here shares code with the exact
//! evaluation paths it checks.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Uniform grid on [x_min, x_max].
#[derive(Debug, Clone, Copy)]
pub struct Grid {
    pub x_min: f64,
    pub x_max: f64,
    pub step: f64,
    count: usize,
}

impl Grid {
    pub fn new(x_min: f64, x_max: f64, step: f64) -> Result<Self> {
        if !(step > 0.0) || !x_min.is_finite() || !(x_max > x_min) {
            return Err(Error::InvalidGrid(format!(
                "need x_min < x_max and step > 0, got [{x_min}, {x_max}] step {step}"
            )));
        }
        let count = ((x_max - x_min) / step).round() as usize + 1;
        if count < 16 {
            return Err(Error::InvalidGrid(format!("only {count} nodes, need at least 16")));
        }
        Ok(Self { x_min, x_max, step, count })
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn node(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.step
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(|i| self.node(i))
    }
}

fn sample<F: Fn(f64) -> Complex64>(f: &F, grid: &Grid, margin: i64) -> Vec<Complex64> {
    (-margin..grid.len() as i64 + margin)
        .map(|i| f(grid.x_min + i as f64 * grid.step))
        .collect()
}

fn residual_from_stencil<V, P>(
    potential: &V,
    psi: &[Complex64],
    energy: Complex64,
    grid: &Grid,
    margin: usize,
    d2: P,
) -> f64
where
    V: Fn(f64) -> Complex64,
    P: Fn(&[Complex64], usize) -> Complex64,
{
    let mut max_resid: f64 = 0.0;
    let mut max_scale: f64 = 0.0;
    for i in 0..grid.len() {
        let x = grid.node(i);
        let p = psi[i + margin];
        let r = -d2(psi, i + margin) + potential(x) * p - energy * p;
        max_resid = max_resid.max(r.norm());
        max_scale = max_scale.max((energy * p).norm());
    }
    max_resid / max_scale.max(1e-30)
}

/// Max residual of (−D² + V − E)ψ over the grid, normalized by the largest
/// |Eψ| (floor 1e-30). D² is the 3-point central second difference, so the
/// value carries an O(step²) truncation floor of roughly step²·|V−E|²/(12|E|).
pub fn fd_hamiltonian_residual<V, W>(potential: V, psi: W, energy: Complex64, grid: &Grid) -> f64
where
    V: Fn(f64) -> Complex64,
    W: Fn(f64) -> Complex64,
{
    let values = sample(&psi, grid, 1);
    let h2 = grid.step * grid.step;
    residual_from_stencil(&potential, &values, energy, grid, 1, |v, i| {
        (v[i - 1] - 2.0 * v[i] + v[i + 1]) / h2
    })
}

/// Same residual with the 5-point central second difference (O(step⁴)
/// truncation); used where the 3-point truncation floor would mask an exact
/// eigenpair.
pub fn fd_hamiltonian_residual_o4<V, W>(potential: V, psi: W, energy: Complex64, grid: &Grid) -> f64
where
    V: Fn(f64) -> Complex64,
    W: Fn(f64) -> Complex64,
{
    let values = sample(&psi, grid, 2);
    let h2 = grid.step * grid.step;
    residual_from_stencil(&potential, &values, energy, grid, 2, |v, i| {
        (-v[i - 2] + 16.0 * v[i - 1] - 30.0 * v[i] + 16.0 * v[i + 1] - v[i + 2]) / (12.0 * h2)
    })
}

/// Fourth-order Numerov sweep for U″ + (E − V)U = 0 from two starting values
/// at the first two grid nodes.
pub fn numerov_integrate<V>(
    potential: V,
    energy: f64,
    grid: &Grid,
    boundary: (Complex64, Complex64),
) -> Result<Vec<Complex64>>
where
    V: Fn(f64) -> f64,
{
    // g = V − E so that U″ = g U
    let g: Vec<f64> = grid.nodes().map(|x| potential(x) - energy).collect();
    let worst = g.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if grid.step * grid.step * worst >= 0.1 {
        return Err(Error::StepTooCoarse(grid.step));
    }
    let h2_12 = grid.step * grid.step / 12.0;
    let mut u = Vec::with_capacity(grid.len());
    u.push(boundary.0);
    u.push(boundary.1);
    for i in 1..grid.len() - 1 {
        let next = (2.0 * u[i] * (1.0 + 5.0 * h2_12 * g[i]) - u[i - 1] * (1.0 - h2_12 * g[i - 1]))
            / (1.0 - h2_12 * g[i + 1]);
        u.push(next);
    }
    Ok(u)
}

/// Composite Simpson integral of |ψ|² over the grid (trapezoid correction on
/// the last interval when the interval count is odd).
pub fn quadrature_l2<W>(psi: W, grid: &Grid) -> f64
where
    W: Fn(f64) -> Complex64,
{
    let f: Vec<f64> = grid.nodes().map(|x| psi(x).norm_sqr()).collect();
    let n = f.len();
    let pairs = (n - 1) / 2;
    let mut total = 0.0;
    for p in 0..pairs {
        let i = 2 * p;
        total += (f[i] + 4.0 * f[i + 1] + f[i + 2]) * grid.step / 3.0;
    }
    if (n - 1) % 2 == 1 {
        total += (f[n - 2] + f[n - 1]) * grid.step / 2.0;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    const I: Complex64 = Complex64::new(0.0, 1.0);

    fn zero_potential(_: f64) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }

    #[test]
    fn grid_validation() {
        assert!(Grid::new(0.0, 2.0, 0.1).is_ok());
        assert!(Grid::new(0.0, 1.0, 0.2).is_err()); // < 16 nodes
        assert!(Grid::new(1.0, 0.0, 0.01).is_err());
        assert!(Grid::new(0.0, 1.0, -0.1).is_err());
        let g = Grid::new(-4.0, 4.0, 1e-3).unwrap();
        assert_eq!(g.len(), 8001);
        assert_eq!(g.node(4000), 0.0);
    }

    #[test]
    fn fd_residual_plane_wave() {
        // ψ = e^{ikx}, V = 0, E = k²: residual ≈ step²k⁴/(12k²)
        let k = 2.0;
        let grid = Grid::new(-4.0, 4.0, 1e-3).unwrap();
        let r = fd_hamiltonian_residual(
            zero_potential,
            |x| (I * k * x).exp(),
            Complex64::new(k * k, 0.0),
            &grid,
        );
        let predicted = grid.step * grid.step * k.powi(4) / 12.0 / (k * k);
        assert!(r < 2.0 * predicted, "r={r:.3e} predicted={predicted:.3e}");
        assert!(r > 0.1 * predicted);
    }

    #[test]
    fn fd_residual_second_order() {
        let k = 2.0;
        let run = |step: f64| {
            let grid = Grid::new(-4.0, 4.0, step).unwrap();
            fd_hamiltonian_residual(
                zero_potential,
                |x| (I * k * x).exp(),
                Complex64::new(k * k, 0.0),
                &grid,
            )
        };
        let ratio = run(2e-3) / run(1e-3);
        assert!((ratio - 4.0).abs() < 0.3, "ratio {ratio}");
    }

    #[test]
    fn fd_residual_bound_state() {
        // ψ = (cosh x)^{−2.5}, λ = 3.5, E = −6.25
        let grid = Grid::new(-4.0, 4.0, 1e-3).unwrap();
        let r = fd_hamiltonian_residual(
            |x| Complex64::new(-8.75 / x.cosh().powi(2), 0.0),
            |x| Complex64::new(x.cosh().powf(-2.5), 0.0),
            Complex64::new(-6.25, 0.0),
            &grid,
        );
        assert!(r <= 1e-5, "r={r:.3e}");
    }

    #[test]
    fn fd_residual_gamow_state() {
        // Gamow state (1+(3+6i)sinh²x)(cosh x)^{½+3i}: E = (3−2.5i)², |x| ≤ 3
        let grid = Grid::new(-3.0, 3.0, 1e-3).unwrap();
        let mu = Complex64::new(0.5, 3.0);
        let e = Complex64::new(3.0, -2.5) * Complex64::new(3.0, -2.5);
        let psi = |x: f64| {
            (1.0 + Complex64::new(3.0, 6.0) * x.sinh().powi(2)) * (mu * x.cosh().ln()).exp()
        };
        let r = fd_hamiltonian_residual(
            |x| Complex64::new(9.25 / x.cosh().powi(2), 0.0),
            psi,
            e,
            &grid,
        );
        assert!(r <= 1e-5, "r={r:.3e}");
        let r4 = fd_hamiltonian_residual_o4(
            |x| Complex64::new(9.25 / x.cosh().powi(2), 0.0),
            psi,
            e,
            &grid,
        );
        assert!(r4 <= 1e-9, "r4={r4:.3e}");
    }

    #[test]
    fn numerov_free_particle() {
        // V = 0, E = 1: plane-wave start reproduces e^{ikx} to 1e-8
        let grid = Grid::new(0.0, 9.0, 1e-3).unwrap();
        let start = ((I * grid.node(0)).exp(), (I * grid.node(1)).exp());
        let u = numerov_integrate(|_| 0.0, 1.0, &grid, start).unwrap();
        let idx = 8500;
        let exact = (I * grid.node(idx)).exp();
        assert!((u[idx] - exact).norm() < 1e-8);
    }

    #[test]
    fn numerov_fourth_order() {
        // steps large enough that truncation dominates roundoff
        let k = 2.0;
        let run = |step: f64| {
            let grid = Grid::new(0.0, 4.0, step).unwrap();
            let start = ((I * k * grid.node(0)).exp(), (I * k * grid.node(1)).exp());
            let u = numerov_integrate(|_| 0.0, k * k, &grid, start).unwrap();
            let idx = u.len() - 1;
            (u[idx] - (I * k * grid.node(idx)).exp()).norm()
        };
        let ratio = run(2e-2) / run(1e-2);
        assert!((ratio - 16.0).abs() < 2.0, "ratio {ratio}");
    }

    #[test]
    fn numerov_shooting_discriminates_eigenvalue() {
        // λ = 3.5 well: E = −6.25 is the ground state. A decaying start at
        // x = −10 stays decaying at x = +6 on the eigenvalue and blows up
        // off it. (Beyond x ≈ +7 the parasitic growing admixture seeded by
        // roundoff overtakes the true solution even at the eigenvalue.)
        let grid = Grid::new(-10.0, 6.0, 1e-3).unwrap();
        let kappa = 2.5;
        let potential = |x: f64| -8.75 / x.cosh().powi(2);
        let start = (
            Complex64::new((kappa * grid.node(0)).exp(), 0.0),
            Complex64::new((kappa * grid.node(1)).exp(), 0.0),
        );
        let tail_ratio = |energy: f64| {
            let u = numerov_integrate(potential, energy, &grid, start).unwrap();
            let peak = u.iter().map(|v| v.norm()).fold(0.0f64, f64::max);
            u.last().unwrap().norm() / peak
        };
        assert!(tail_ratio(-6.25) < 1e-5, "eigenvalue tail {}", tail_ratio(-6.25));
        assert!(tail_ratio(-6.0) > 1e-2, "off-eigenvalue tail {}", tail_ratio(-6.0));
    }

    #[test]
    fn numerov_step_too_coarse() {
        let grid = Grid::new(0.0, 9.0, 0.1).unwrap();
        assert!(matches!(
            numerov_integrate(|_| 0.0, 100.0, &grid, (Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0))),
            Err(Error::StepTooCoarse(_))
        ));
    }

    #[test]
    fn quadrature_examples() {
        let grid = Grid::new(-20.0, 20.0, 1e-3).unwrap();
        assert_eq!(quadrature_l2(|_| Complex64::new(0.0, 0.0), &grid), 0.0);
        // ∫ sech²x dx = 2 tanh 20 ≈ 2
        let got = quadrature_l2(|x| Complex64::new(1.0 / x.cosh(), 0.0), &grid);
        assert!((got - 2.0).abs() < 1e-8, "got {got}");
    }

    #[test]
    fn quadrature_odd_interval_count() {
        let grid = Grid::new(0.0, 1.7, 0.1).unwrap(); // 17 intervals
        let got = quadrature_l2(|x| Complex64::new(x, 0.0), &grid);
        // ∫₀^1.7 x² = 1.637666…
        assert!((got - 1.7f64.powi(3) / 3.0).abs() < 1e-3);
    }
}
