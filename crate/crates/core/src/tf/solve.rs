//! Thomas-Fermi solvers: neutral and ionic atoms, and the exterior problem.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::electrostatics::{integrate3d, newton_potential, screened_potential};
use crate::error::{Error, Result};
use crate::grid::{NumericsSettings, RadialGrid};
#[allow(unused_imports)]
use crate::num::*;
use crate::radial::{Meaning, RadialFunction};
use crate::tf::energy::{tf_energy, tf_energy_with_potential};
use crate::tf::universal::UniversalTf;
use crate::tf::TfConstants;

/// A solved Thomas-Fermi atom.
#[derive(Debug, Clone)]
pub struct TfSolution {
    pub z: f64,
    /// Requested electron number; the density integrates to `min(n, z)`
    /// for the atomic problem.
    pub n_electrons: f64,
    /// Chemical potential, `>= 0`; zero exactly when the atom is neutral.
    pub mu: f64,
    pub rho: RadialFunction,
    pub phi: RadialFunction,
    pub energy: f64,
    /// Worst self-consistency defect of the mean-field equation on the
    /// grid, with the potential rebuilt from the density by quadrature.
    pub residual: f64,
}

impl TfSolution {
    pub fn grid(&self) -> &Arc<RadialGrid> {
        self.rho.grid()
    }
}

/// The exterior problem: minimize the functional with external potential
/// `v` (vanishing inside `r_cut`, harmonic beyond the generating charge)
/// under the charge budget `int rho <= budget`.
#[derive(Debug, Clone)]
pub struct ExteriorTfProblem {
    pub r_cut: f64,
    pub v: RadialFunction,
    pub budget: f64,
}

impl ExteriorTfProblem {
    pub fn new(r_cut: f64, v: RadialFunction, budget: f64) -> Result<Self> {
        let g = v.grid().clone();
        if !(r_cut > g.r_min() && r_cut < g.r_max()) {
            return Err(Error::domain("r_cut outside the grid range"));
        }
        if !(budget >= 0.0) {
            return Err(Error::domain("charge budget must be nonnegative"));
        }
        let vmax = v.values().iter().fold(0.0f64, |a, b| a.max(b.abs()));
        for (i, &val) in v.values().iter().enumerate() {
            if g.r(i) < r_cut && val.abs() > 1e-10 * vmax.max(1e-300) {
                return Err(Error::invalid(
                    "exterior potential must vanish inside r_cut",
                ));
            }
        }
        // harmonic tail: r*V constant beyond r_cut (the screened potential
        // of any charge confined to |y| < r_cut has exactly this form)
        let r_lo = r_cut * (1.0 + 2.0 * g.step());
        let mut rv_min = f64::INFINITY;
        let mut rv_max = f64::NEG_INFINITY;
        for (i, &val) in v.values().iter().enumerate() {
            let r = g.r(i);
            if r >= r_lo {
                rv_min = rv_min.min(r * val);
                rv_max = rv_max.max(r * val);
            }
        }
        if rv_max - rv_min > 1e-6 * rv_max.abs().max(1e-300) {
            return Err(Error::invalid(
                "exterior potential is not harmonic beyond r_cut",
            ));
        }
        Ok(ExteriorTfProblem { r_cut, v, budget })
    }

    /// Build the exterior problem generated by `rho` around charge `z`:
    /// `v = chi^+_{r_cut} Phi_{r_cut}` with budget the exterior charge.
    pub fn from_density(rho: &RadialFunction, z: f64, r_cut: f64) -> Result<Self> {
        let screened = screened_potential(rho, z, r_cut)?;
        let g = rho.grid().clone();
        let v = RadialFunction::new(
            g.clone(),
            g.points()
                .iter()
                .zip(screened.potential.values())
                .map(|(&r, &p)| if r < r_cut { 0.0 } else { p })
                .collect(),
            Meaning::Potential,
        )?;
        let profile = crate::radial::ChargeProfile::of(rho)?;
        let budget = profile.outside(r_cut);
        ExteriorTfProblem::new(r_cut, v, budget)
    }
}

/// Shared solver state: the universal profile plus settings. The profile
/// is computed once and reused immutably by every solve.
#[derive(Debug, Clone)]
pub struct TfWorkspace {
    pub constants: TfConstants,
    pub settings: NumericsSettings,
    universal: UniversalTf,
}

impl TfWorkspace {
    pub fn new(settings: NumericsSettings) -> Result<Self> {
        let universal = UniversalTf::solve(settings.tf_shoot_tol)?;
        Ok(TfWorkspace {
            constants: TfConstants::new(),
            settings,
            universal,
        })
    }

    pub fn universal(&self) -> &UniversalTf {
        &self.universal
    }

    /// Length scale `a` with `phi(r) = Z chi(r/a)/r`.
    pub fn length_scale(&self, z: f64) -> f64 {
        self.constants.c_tf.powf(-2.0 / 3.0) * z.powf(-1.0 / 3.0)
    }

    /// Grid for atomic TF solves: extended far enough that the Sommerfeld
    /// tail beyond `r_max` carries less than `tf_tail_charge_rel * Z`.
    pub fn atomic_grid(&self, z: f64, n_electrons: f64) -> Result<Arc<RadialGrid>> {
        self.atomic_grid_n(z, n_electrons, self.settings.grid_n)
    }

    fn atomic_grid_n(&self, z: f64, n_electrons: f64, n: usize) -> Result<Arc<RadialGrid>> {
        let s = &self.settings;
        let tail_radius =
            (self.constants.screen4 / (s.tf_tail_charge_rel * z)).powf(1.0 / 3.0);
        let r_min = s.r_min_scale / z.max(1.0);
        let r_max = s
            .r_max_floor
            .max(s.r_max_nu_coeff * n_electrons.max(1.0).cbrt())
            .max(tail_radius);
        Ok(Arc::new(RadialGrid::log(r_min, r_max, n)?))
    }

    /// Free-boundary solves carry a C^1 kink where the density vanishes,
    /// which limits the scheme to O(h^{5/2}) there; the ionic and exterior
    /// paths therefore run on a denser grid to hold the residual target.
    fn kink_grid_n(&self) -> usize {
        self.settings.grid_n * 5 / 2
    }

    /// Neutral mean-field potential sampled on an arbitrary grid.
    pub fn neutral_phi_on(&self, grid: &Arc<RadialGrid>, z: f64) -> Result<RadialFunction> {
        let a = self.length_scale(z);
        RadialFunction::from_fn(grid.clone(), Meaning::Potential, |r| {
            z * self.universal.chi(r / a) / r
        })
    }

    /// Neutral atom from the universal profile.
    pub fn solve_neutral(&self, z: f64) -> Result<TfSolution> {
        if !(z > 0.0 && z.is_finite()) {
            return Err(Error::domain("nuclear charge must be positive"));
        }
        let grid = self.atomic_grid(z, z)?;
        let phi = self.neutral_phi_on(&grid, z)?;
        let dc = self.constants.density_c;
        let rho = phi.map(Meaning::Density, |_, p| dc * p.max(0.0).powf(1.5))?;
        let residual = self.equation_residual(&rho, &phi, z, 0.0)?;
        let energy = tf_energy(&rho, z)?;
        Ok(TfSolution {
            z,
            n_electrons: z,
            mu: 0.0,
            rho,
            phi,
            energy,
            residual,
        })
    }

    /// Atomic solve at fixed electron number. `n >= z` returns the neutral
    /// solution (the chemical potential is zero beyond neutrality).
    pub fn solve(&self, z: f64, n: f64) -> Result<TfSolution> {
        if !(z > 0.0 && z.is_finite()) || !(n > 0.0 && n.is_finite()) {
            return Err(Error::domain("Z and N must be positive"));
        }
        if n >= z {
            let mut sol = self.solve_neutral(z)?;
            sol.n_electrons = n;
            return Ok(sol);
        }
        let grid = self.atomic_grid_n(z, z, self.kink_grid_n())?;
        // The unknown is the screening potential W = Z/r - phi through
        // w = r W in the transformed variable v = e^{-t/2} w = sqrt(r) W;
        // w stays O(N) across the whole grid, unlike r*phi whose
        // transformed amplitude spans many orders of magnitude.
        let bare = RadialFunction::from_fn(grid.clone(), Meaning::Potential, |r| z / r)?;
        let phi0 = self.neutral_phi_on(&grid, z)?;
        let mut v_state: Vec<f64> = grid
            .points()
            .iter()
            .zip(phi0.values())
            .map(|(&r, &p)| r.sqrt() * (z / r - p))
            .collect();

        let target = n;
        let mut mu_lo = 0.0;
        let mut mu_hi = z.powf(4.0 / 3.0).max(1.0);
        let mut n_hi = self.exterior_charge_at_mu(&grid, &bare, mu_hi, &mut v_state)?;
        let mut expand = 0;
        while n_hi > target {
            mu_hi *= 4.0;
            n_hi = self.exterior_charge_at_mu(&grid, &bare, mu_hi, &mut v_state)?;
            expand += 1;
            if expand > 60 {
                return Err(Error::SolverFailure {
                    what: "ionic chemical potential bracket",
                    detail: format!("N({mu_hi}) = {n_hi} still above target {target}"),
                    history: alloc::vec![mu_hi, n_hi],
                });
            }
        }
        let mut mu = 0.5 * (mu_lo + mu_hi);
        let mut n_mid = 0.0;
        for _ in 0..200 {
            mu = 0.5 * (mu_lo + mu_hi);
            n_mid = self.exterior_charge_at_mu(&grid, &bare, mu, &mut v_state)?;
            if (n_mid - target).abs() <= 1e-9 * target {
                break;
            }
            if n_mid > target {
                mu_lo = mu;
            } else {
                mu_hi = mu;
            }
            if (mu_hi - mu_lo) <= 1e-15 * mu_hi {
                break;
            }
        }
        if (n_mid - target).abs() > 1e-6 * target {
            return Err(Error::SolverFailure {
                what: "ionic chemical potential",
                detail: format!("constraint gap {:e}", (n_mid - target).abs()),
                history: alloc::vec![mu, n_mid],
            });
        }

        let (phi, rho) = self.fields_from_state(&grid, z, mu, &v_state)?;
        let residual = self.equation_residual(&rho, &phi, z, mu)?;
        let energy = tf_energy(&rho, z)?;
        Ok(TfSolution {
            z,
            n_electrons: n,
            mu,
            rho,
            phi,
            energy,
            residual,
        })
    }

    /// Exterior solve: density confined to `r >= r_cut` by the vanishing
    /// potential, budget enforced through `mu >= 0` complementarity.
    ///
    /// Solved on a refined copy of the input grid (see [`Self::atomic_grid`]
    /// notes on free-boundary kinks); the returned fields live on that
    /// refined grid. The exterior potential is harmonic beyond `r_cut`, so
    /// it is rebuilt exactly from its monopole on the fine grid.
    pub fn solve_exterior(&self, problem: &ExteriorTfProblem) -> Result<TfSolution> {
        let coarse = problem.v.grid();
        let q_monopole = coarse.r_max() * problem.v.values()[coarse.n() - 1];
        let r_cut = problem.r_cut;
        // Solve on the natural domain [r_cut, r_max]: there the exterior
        // potential is the smooth harmonic q/r (no step inside any
        // stencil), and the screening potential continues harmonically
        // into r < r_cut, which the ghost row of the solver encodes
        // exactly.
        let grid = Arc::new(RadialGrid::log(
            r_cut,
            coarse.r_max(),
            self.settings.grid_n,
        )?);
        let v_ext =
            RadialFunction::from_fn(grid.clone(), Meaning::Potential, |r| q_monopole / r)?;
        let problem = ExteriorTfProblem {
            r_cut,
            v: v_ext,
            budget: problem.budget,
        };
        let problem = &problem;

        let mut v_state: Vec<f64> = alloc::vec![0.0; grid.n()];
        let n0 = self.exterior_charge_at_mu(&grid, &problem.v, 0.0, &mut v_state)?;
        let mu = if n0 <= problem.budget * (1.0 + 1e-6) + 1e-12 {
            0.0
        } else {
            let target = problem.budget;
            let mut mu_lo = 0.0;
            let mut mu_hi = problem
                .v
                .values()
                .iter()
                .fold(0.0f64, |a, &b| a.max(b))
                .max(1e-8);
            let mut n_hi = self.exterior_charge_at_mu(&grid, &problem.v, mu_hi, &mut v_state)?;
            let mut expand = 0;
            while n_hi > target {
                mu_hi *= 4.0;
                n_hi = self.exterior_charge_at_mu(&grid, &problem.v, mu_hi, &mut v_state)?;
                expand += 1;
                if expand > 60 {
                    return Err(Error::SolverFailure {
                        what: "exterior chemical potential bracket",
                        detail: format!("N({mu_hi}) = {n_hi} above budget {target}"),
                        history: alloc::vec![mu_hi, n_hi],
                    });
                }
            }
            let mut mu = 0.0;
            for _ in 0..200 {
                mu = 0.5 * (mu_lo + mu_hi);
                let n_mid =
                    self.exterior_charge_at_mu(&grid, &problem.v, mu, &mut v_state)?;
                if target > 0.0 && (n_mid - target).abs() <= 1e-9 * target {
                    break;
                }
                if n_mid > target {
                    mu_lo = mu;
                } else {
                    mu_hi = mu;
                }
                if (mu_hi - mu_lo) <= 1e-15 * mu_hi.max(1e-300) {
                    break;
                }
            }
            mu
        };
        let _ = self.exterior_charge_at_mu(&grid, &problem.v, mu, &mut v_state)?;
        let dc = self.constants.density_c;
        let mut phi_vals = Vec::with_capacity(grid.n());
        let mut rho_vals = Vec::with_capacity(grid.n());
        for (i, &r) in grid.points().iter().enumerate() {
            let w = v_state[i] / r.sqrt(); // screening potential W = v/sqrt(r)/... u = sqrt(r)*v
            let p = problem.v.values()[i] - w;
            phi_vals.push(p);
            rho_vals.push(dc * (p - mu).max(0.0).powf(1.5));
        }
        let phi = RadialFunction::new(grid.clone(), phi_vals, Meaning::Potential)?;
        let rho = RadialFunction::new(grid.clone(), rho_vals, Meaning::Density)?;
        let n_got = integrate3d(&rho)?;
        let residual = self.exterior_residual(&rho, &phi, &problem.v, mu)?;
        let energy = tf_energy_with_potential(&rho, &problem.v)?;
        Ok(TfSolution {
            z: q_monopole,
            n_electrons: n_got,
            mu,
            rho,
            phi,
            energy,
            residual,
        })
    }

    // ----- internals -----

    fn exterior_charge_at_mu(
        &self,
        grid: &Arc<RadialGrid>,
        v_ext: &RadialFunction,
        mu: f64,
        v_state: &mut Vec<f64>,
    ) -> Result<f64> {
        let c_tf = self.constants.c_tf;
        let pts = grid.points().to_vec();
        let vv = v_ext.values().to_vec();
        let rhs = move |i: usize, v: f64| -> (f64, f64) {
            let r = pts[i];
            let sqrt_r = r.sqrt();
            let phi_minus_mu = vv[i] - v / sqrt_r - mu; // phi = V - W, W = w/r
            let core = phi_minus_mu.max(0.0);
            // w'' picks up -4 pi r rho, hence the sign flip on the source
            let source = -c_tf * r * r * sqrt_r * core * core.sqrt();
            let source_v = 1.5 * c_tf * r * r * core.sqrt();
            (source, source_v)
        };
        numerov_newton_bvp(grid, rhs, v_state)?;
        let dc = self.constants.density_c;
        let rho = RadialFunction::new(
            grid.clone(),
            grid.points()
                .iter()
                .enumerate()
                .map(|(i, &r)| {
                    dc * (v_ext.values()[i] - v_state[i] / r.sqrt() - mu)
                        .max(0.0)
                        .powf(1.5)
                })
                .collect(),
            Meaning::Density,
        )?;
        integrate3d(&rho)
    }

    fn fields_from_state(
        &self,
        grid: &Arc<RadialGrid>,
        z: f64,
        mu: f64,
        v_state: &[f64],
    ) -> Result<(RadialFunction, RadialFunction)> {
        let dc = self.constants.density_c;
        let phi = RadialFunction::new(
            grid.clone(),
            grid.points()
                .iter()
                .zip(v_state)
                .map(|(&r, &v)| z / r - v / r.sqrt())
                .collect(),
            Meaning::Potential,
        )?;
        let rho = phi.map(Meaning::Density, |_, p| dc * (p - mu).max(0.0).powf(1.5))?;
        Ok((phi, rho))
    }

    /// Defect of the mean-field equation with the potential rebuilt from
    /// the density: `max |k_tf rho^{2/3} - [Z/r - rho*|x|^{-1} - mu]_+| / (1 + |phi|)`.
    fn equation_residual(
        &self,
        rho: &RadialFunction,
        phi: &RadialFunction,
        z: f64,
        mu: f64,
    ) -> Result<f64> {
        let hartree = newton_potential(rho)?;
        let k = self.constants.k_tf;
        let g = rho.grid();
        let mut worst = 0.0f64;
        for i in 0..g.n() {
            let r = g.r(i);
            let lhs = k * rho.values()[i].powf(2.0 / 3.0);
            let rhs = (z / r - hartree.values()[i] - mu).max(0.0);
            let d = (lhs - rhs).abs() / (1.0 + phi.values()[i].abs());
            worst = worst.max(d);
        }
        Ok(worst)
    }

    fn exterior_residual(
        &self,
        rho: &RadialFunction,
        phi: &RadialFunction,
        v_ext: &RadialFunction,
        mu: f64,
    ) -> Result<f64> {
        let hartree = newton_potential(rho)?;
        let k = self.constants.k_tf;
        let g = rho.grid();
        let mut worst = 0.0f64;
        for i in 0..g.n() {
            let lhs = k * rho.values()[i].powf(2.0 / 3.0);
            let rhs = (v_ext.values()[i] - hartree.values()[i] - mu).max(0.0);
            let d = (lhs - rhs).abs() / (1.0 + phi.values()[i].abs());
            worst = worst.max(d);
        }
        Ok(worst)
    }
}

/// Convenience one-shot neutral solve (builds a workspace internally).
pub fn solve_neutral_tf(z: f64, settings: &NumericsSettings) -> Result<TfSolution> {
    TfWorkspace::new(settings.clone())?.solve_neutral(z)
}

/// Convenience one-shot atomic solve.
pub fn solve_tf(z: f64, n: f64, settings: &NumericsSettings) -> Result<TfSolution> {
    TfWorkspace::new(settings.clone())?.solve(z, n)
}

/// Convenience one-shot exterior solve.
pub fn solve_exterior_tf(
    problem: &ExteriorTfProblem,
    settings: &NumericsSettings,
) -> Result<TfSolution> {
    TfWorkspace::new(settings.clone())?.solve_exterior(problem)
}

/// Nonlinear two-point BVP solver for `v'' = v/4 + S(t, v)` on the log
/// grid with a Numerov discretization (`S` is the charge source; the `v/4`
/// piece comes from the Liouville transform). Boundary rows: on the left
/// the solution continues harmonically inward (`w = c r`, `v ~ e^{t/2}`),
/// encoded through a ghost node `v_{-1} = v_0 e^{-h/2}`, with one-sided
/// source weights `h^2 (7 S_0 + 6 S_1 - S_2)/24` because the source is
/// supported only on `t >= t_0`; on the right `u' = 0` (in r) as a
/// midpoint Robin row. Newton iteration with a tridiagonal Jacobian and a
/// halving line search.
fn numerov_newton_bvp(
    grid: &Arc<RadialGrid>,
    rhs: impl Fn(usize, f64) -> (f64, f64),
    v: &mut Vec<f64>,
) -> Result<()> {
    let n = grid.n();
    let h = grid.step();
    let h2 = h * h;
    if v.len() != n {
        v.resize(n, 0.0);
    }
    let ghost = (-h / 2.0).exp();

    let residual = |v: &[f64], r_out: &mut [f64], s: &mut [f64], sv: &mut [f64]| {
        for i in 0..n {
            let (si, svi) = rhs(i, v[i]);
            s[i] = si;
            sv[i] = svi;
        }
        // ghost row at the left edge; source vanishes on the inside
        let vm1 = v[0] * ghost;
        r_out[0] = v[1] - 2.0 * v[0] + vm1
            - h2 / 48.0 * (v[1] + 10.0 * v[0] + vm1)
            - h2 / 24.0 * (7.0 * s[0] + 6.0 * s[1] - s[2]);
        for i in 1..n - 1 {
            r_out[i] = v[i + 1] - 2.0 * v[i] + v[i - 1]
                - h2 / 48.0 * (v[i + 1] + 10.0 * v[i] + v[i - 1])
                - h2 / 12.0 * (s[i + 1] + 10.0 * s[i] + s[i - 1]);
        }
        // u_t = 0 at r_max <=> v_t = -v/2; midpoint rule keeps the row tridiagonal
        r_out[n - 1] = (v[n - 1] - v[n - 2]) / h + 0.25 * (v[n - 1] + v[n - 2]);
    };

    let mut sval = alloc::vec![0.0; n];
    let mut sv = alloc::vec![0.0; n];
    let mut res = alloc::vec![0.0; n];
    let mut lower = alloc::vec![0.0; n];
    let mut diag = alloc::vec![0.0; n];
    let mut upper = alloc::vec![0.0; n];
    let mut delta = alloc::vec![0.0; n];

    residual(v, &mut res, &mut sval, &mut sv);
    let norm = |r: &[f64]| r.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    let mut rnorm = norm(&res);
    let scale = |v: &[f64]| v.iter().fold(1.0f64, |a, x| a.max(x.abs()));

    for _iter in 0..120 {
        if rnorm <= 1e-13 * scale(v) {
            break;
        }
        // the tiny S_2 coupling of the edge row is lagged; the residual is
        // exact, the iteration just takes it explicitly
        diag[0] = -(2.0 - ghost) - h2 / 48.0 * (10.0 + ghost) - 7.0 * h2 / 24.0 * sv[0];
        upper[0] = 1.0 - h2 / 48.0 - 6.0 * h2 / 24.0 * sv[1];
        for i in 1..n - 1 {
            lower[i] = 1.0 - h2 / 48.0 - h2 / 12.0 * sv[i - 1];
            diag[i] = -2.0 - 10.0 * h2 / 48.0 - 10.0 * h2 / 12.0 * sv[i];
            upper[i] = 1.0 - h2 / 48.0 - h2 / 12.0 * sv[i + 1];
        }
        lower[n - 1] = -1.0 / h + 0.25;
        diag[n - 1] = 1.0 / h + 0.25;
        upper[n - 1] = 0.0;

        // Thomas solve for J delta = -res
        let mut cp = alloc::vec![0.0; n];
        let mut dp = alloc::vec![0.0; n];
        cp[0] = upper[0] / diag[0];
        dp[0] = -res[0] / diag[0];
        for i in 1..n {
            let m = diag[i] - lower[i] * cp[i - 1];
            cp[i] = upper[i] / m;
            dp[i] = (-res[i] - lower[i] * dp[i - 1]) / m;
        }
        delta[n - 1] = dp[n - 1];
        for i in (0..n - 1).rev() {
            delta[i] = dp[i] - cp[i] * delta[i + 1];
        }

        // damped update
        let mut alpha = 1.0;
        let mut accepted = false;
        for _ in 0..30 {
            let trial: Vec<f64> = v
                .iter()
                .zip(&delta)
                .map(|(&x, &d)| x + alpha * d)
                .collect();
            residual(&trial, &mut res, &mut sval, &mut sv);
            let rn = norm(&res);
            if rn < rnorm * (1.0 - 1e-4 * alpha) || rn <= 1e-13 * scale(&trial) {
                *v = trial;
                rnorm = rn;
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if !accepted {
            // line search stalled: either converged to rounding or stuck
            if rnorm <= 1e-9 * scale(v) {
                break;
            }
            return Err(Error::SolverFailure {
                what: "numerov newton bvp",
                detail: format!("line search stalled with residual {rnorm:e}"),
                history: alloc::vec![rnorm],
            });
        }
    }
    if rnorm > 1e-9 * scale(v) {
        return Err(Error::SolverFailure {
            what: "numerov newton bvp",
            detail: format!("residual {rnorm:e} after iteration cap"),
            history: alloc::vec![rnorm],
        });
    }
    Ok(())
}
