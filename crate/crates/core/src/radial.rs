//! Spherically symmetric scalar fields sampled on a radial grid.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::grid::{ensure_finite, RadialGrid};
#[allow(unused_imports)]
use crate::num::*;

/// What the samples mean; densities carry a nonnegativity invariant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Meaning {
    Density,
    Potential,
    Orbital,
    Generic,
}

impl Meaning {
    pub fn tag(&self) -> &'static str {
        match self {
            Meaning::Density => "density",
            Meaning::Potential => "potential",
            Meaning::Orbital => "orbital",
            Meaning::Generic => "generic",
        }
    }

    pub fn from_tag(tag: &str) -> Result<Self> {
        match tag {
            "density" => Ok(Meaning::Density),
            "potential" => Ok(Meaning::Potential),
            "orbital" => Ok(Meaning::Orbital),
            "generic" => Ok(Meaning::Generic),
            other => Err(Error::invalid(format!("unknown meaning tag `{other}`"))),
        }
    }
}

/// Samples of a radial field, one value per grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialFunction {
    grid: Arc<RadialGrid>,
    values: Vec<f64>,
    meaning: Meaning,
}

impl RadialFunction {
    pub fn new(grid: Arc<RadialGrid>, values: Vec<f64>, meaning: Meaning) -> Result<Self> {
        if values.len() != grid.n() {
            return Err(Error::invalid(format!(
                "sample count {} does not match grid size {}",
                values.len(),
                grid.n()
            )));
        }
        ensure_finite(&values, meaning.tag())?;
        let mut values = values;
        if meaning == Meaning::Density {
            let scale = values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
            let floor = -1e-12 * scale.max(1e-300);
            for v in values.iter_mut() {
                if *v < 0.0 {
                    if *v < floor {
                        return Err(Error::invalid(format!(
                            "density has negative sample {v} beyond rounding tolerance"
                        )));
                    }
                    *v = 0.0;
                }
            }
        }
        Ok(RadialFunction {
            grid,
            values,
            meaning,
        })
    }

    pub fn from_fn(
        grid: Arc<RadialGrid>,
        meaning: Meaning,
        f: impl Fn(f64) -> f64,
    ) -> Result<Self> {
        let values = grid.points().iter().map(|&r| f(r)).collect();
        RadialFunction::new(grid, values, meaning)
    }

    pub fn zeros(grid: Arc<RadialGrid>, meaning: Meaning) -> Self {
        let n = grid.n();
        RadialFunction {
            grid,
            values: alloc::vec![0.0; n],
            meaning,
        }
    }

    pub fn grid(&self) -> &Arc<RadialGrid> {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn meaning(&self) -> Meaning {
        self.meaning
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Cubic interpolation at radius `r`.
    pub fn at(&self, r: f64) -> f64 {
        self.grid.interp(&self.values, r)
    }

    /// Same grid instance or structurally equal grid.
    pub fn same_grid(&self, other: &RadialFunction) -> bool {
        Arc::ptr_eq(&self.grid, &other.grid) || *self.grid == *other.grid
    }

    pub(crate) fn check_same_grid(&self, other: &RadialFunction) -> Result<()> {
        if self.same_grid(other) {
            Ok(())
        } else {
            Err(Error::invalid("operands live on different grids"))
        }
    }

    /// Pointwise map preserving the grid; caller chooses the new meaning.
    pub fn map(&self, meaning: Meaning, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        let values = self
            .grid
            .points()
            .iter()
            .zip(&self.values)
            .map(|(&r, &v)| f(r, v))
            .collect();
        RadialFunction::new(self.grid.clone(), values, meaning)
    }

    /// Two-column CSV with the grid header line. The inverse of
    /// [`RadialFunction::from_csv_str`].
    pub fn to_csv_string(&self) -> String {
        let g = &self.grid;
        let mut out = format!(
            "# grid=log n={} r_min={} r_max={} meaning={}\n",
            g.n(),
            g.r_min(),
            g.r_max(),
            self.meaning.tag()
        );
        out.push_str("r,value\n");
        for (r, v) in g.points().iter().zip(&self.values) {
            out.push_str(&format!("{r},{v}\n"));
        }
        out
    }

    pub fn from_csv_str(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::invalid("empty radial-function CSV"))?;
        let header = header
            .strip_prefix("# grid=log ")
            .ok_or_else(|| Error::invalid("missing `# grid=log` header"))?;
        let mut n = None;
        let mut r_min = None;
        let mut r_max = None;
        let mut meaning = None;
        for field in header.split_whitespace() {
            let (key, val) = field
                .split_once('=')
                .ok_or_else(|| Error::invalid(format!("malformed header field `{field}`")))?;
            match key {
                "n" => n = Some(val.parse::<usize>().map_err(|e| Error::invalid(e.to_string()))?),
                "r_min" => {
                    r_min = Some(val.parse::<f64>().map_err(|e| Error::invalid(e.to_string()))?)
                }
                "r_max" => {
                    r_max = Some(val.parse::<f64>().map_err(|e| Error::invalid(e.to_string()))?)
                }
                "meaning" => meaning = Some(Meaning::from_tag(val)?),
                other => return Err(Error::invalid(format!("unknown header key `{other}`"))),
            }
        }
        let (n, r_min, r_max, meaning) = match (n, r_min, r_max, meaning) {
            (Some(n), Some(a), Some(b), Some(m)) => (n, a, b, m),
            _ => return Err(Error::invalid("incomplete grid header")),
        };
        let grid = Arc::new(RadialGrid::log(r_min, r_max, n)?);
        let mut values = Vec::with_capacity(n);
        for line in lines {
            if line.starts_with('#') || line.starts_with('r') || line.trim().is_empty() {
                continue;
            }
            let (_, v) = line
                .split_once(',')
                .ok_or_else(|| Error::invalid(format!("malformed CSV row `{line}`")))?;
            values.push(v.trim().parse::<f64>().map_err(|e| Error::invalid(e.to_string()))?);
        }
        RadialFunction::new(grid, values, meaning)
    }
}

/// Running electron count `Q(r) = int_{|y|<r} rho`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChargeProfile {
    pub cumulative: RadialFunction,
    pub total: f64,
}

impl ChargeProfile {
    pub fn of(rho: &RadialFunction) -> Result<Self> {
        if rho.meaning() != Meaning::Density {
            return Err(Error::invalid("charge profile needs a density"));
        }
        let g = rho.grid();
        let shell: Vec<f64> = g
            .points()
            .iter()
            .zip(rho.values())
            .map(|(&r, &v)| 4.0 * core::f64::consts::PI * r * r * v)
            .collect();
        let mut cum = g.cumulative_dr(&shell);
        // rounding can leave a tiny sawtooth on a flat tail; pin monotonicity
        for i in 1..cum.len() {
            if cum[i] < cum[i - 1] {
                cum[i] = cum[i - 1];
            }
        }
        let total = cum[cum.len() - 1];
        let cumulative = RadialFunction::new(g.clone(), cum, Meaning::Generic)?;
        Ok(ChargeProfile { cumulative, total })
    }

    /// Charge inside radius `r` (monotone interpolation between nodes).
    pub fn inside(&self, r: f64) -> f64 {
        self.cumulative
            .grid()
            .interp_monotone(self.cumulative.values(), r)
    }

    /// Charge outside radius `r`.
    pub fn outside(&self, r: f64) -> f64 {
        (self.total - self.inside(r)).max(0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn grid() -> Arc<RadialGrid> {
        Arc::new(RadialGrid::log(1e-6, 60.0, 4000).unwrap())
    }

    #[test]
    fn density_rejects_negative_samples() {
        let g = grid();
        let r = RadialFunction::from_fn(g, Meaning::Density, |r| 1.0 - r);
        assert!(matches!(r, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn length_mismatch_rejected() {
        let g = grid();
        assert!(RadialFunction::new(g, alloc::vec![0.0; 7], Meaning::Generic).is_err());
    }

    #[test]
    fn charge_profile_of_hydrogen_density() {
        let g = grid();
        let rho =
            RadialFunction::from_fn(g, Meaning::Density, |r| (-2.0 * r).exp() / PI).unwrap();
        let q = ChargeProfile::of(&rho).unwrap();
        assert!((q.total - 1.0).abs() < 1e-8);
        // closed form: Q(r) = 1 - e^{-2r}(1 + 2r + 2r^2)
        for &r in &[0.3f64, 1.0, 2.7] {
            let want = 1.0 - (-2.0 * r).exp() * (1.0 + 2.0 * r + 2.0 * r * r);
            assert!((q.inside(r) - want).abs() < 1e-8, "r={r}");
        }
    }

    #[test]
    fn csv_round_trip() {
        let g = grid();
        let f = RadialFunction::from_fn(g, Meaning::Potential, |r| 1.0 / r).unwrap();
        let text = f.to_csv_string();
        let back = RadialFunction::from_csv_str(&text).unwrap();
        assert_eq!(back.meaning(), Meaning::Potential);
        assert_eq!(back.len(), f.len());
        for (a, b) in f.values().iter().zip(back.values()) {
            assert_eq!(a, b);
        }
    }
}
