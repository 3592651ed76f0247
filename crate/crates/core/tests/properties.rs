//! Property-based invariants of the electrostatics layer.

use std::sync::Arc;

use proptest::prelude::*;

use atomlab_core::electrostatics::{
    coulomb_inner, coulomb_norm, integrate3d, newton_potential, radius_of_charge,
    screened_potential,
};
use atomlab_core::{Meaning, RadialFunction, RadialGrid};

fn grid() -> Arc<RadialGrid> {
    Arc::new(RadialGrid::log(1e-6, 60.0, 2000).unwrap())
}

/// Compactly supported nonnegative test density from a few bumps.
fn bump_density(grid: &Arc<RadialGrid>, params: &[(f64, f64, f64)]) -> RadialFunction {
    let params = params.to_vec();
    RadialFunction::from_fn(grid.clone(), Meaning::Density, move |r| {
        params
            .iter()
            .map(|&(a, c, w)| a * (-((r - c) / w) * ((r - c) / w)).exp())
            .sum::<f64>()
    })
    .unwrap()
}

fn bump_strategy() -> impl Strategy<Value = Vec<(f64, f64, f64)>> {
    prop::collection::vec(
        (0.01f64..2.0, 0.2f64..6.0, 0.2f64..2.0),
        1..4,
    )
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 40, failure_persistence: None, ..ProptestConfig::default()
    })]

    #[test]
    fn coulomb_self_energy_positive(params in bump_strategy()) {
        let g = grid();
        let f = bump_density(&g, &params);
        let d = coulomb_inner(&f, &f).unwrap();
        prop_assert!(d > 0.0, "D(f,f) = {d}");
    }

    #[test]
    fn coulomb_cauchy_schwarz(pa in bump_strategy(), pb in bump_strategy()) {
        let g = grid();
        let f = bump_density(&g, &pa);
        let h = bump_density(&g, &pb);
        let dfh = coulomb_inner(&f, &h).unwrap();
        let nf = coulomb_norm(&f).unwrap();
        let nh = coulomb_norm(&h).unwrap();
        prop_assert!(dfh.abs() <= nf * nh * (1.0 + 1e-10), "{dfh} vs {}", nf * nh);
    }

    #[test]
    fn coulomb_inner_symmetric(pa in bump_strategy(), pb in bump_strategy()) {
        let g = grid();
        let f = bump_density(&g, &pa);
        let h = bump_density(&g, &pb);
        let a = coulomb_inner(&f, &h).unwrap();
        let b = coulomb_inner(&h, &f).unwrap();
        prop_assert!((a - b).abs() <= 1e-10 * a.abs().max(b.abs()).max(1e-300));
    }

    #[test]
    fn newton_potential_monotonicity(params in bump_strategy()) {
        // r V(r) nondecreasing and bounded by the total charge
        let g = grid();
        let f = bump_density(&g, &params);
        let v = newton_potential(&f).unwrap();
        let total = integrate3d(&f).unwrap();
        let mut prev = f64::NEG_INFINITY;
        for (i, &val) in v.values().iter().enumerate() {
            let rv = g.r(i) * val;
            prop_assert!(rv >= prev - 1e-11 * total);
            prop_assert!(rv <= total * (1.0 + 1e-10));
            prev = rv;
        }
    }

    #[test]
    fn screened_potential_harmonic_tail(params in bump_strategy(), cut in 0.5f64..10.0) {
        let g = grid();
        let f = bump_density(&g, &params);
        let sp = screened_potential(&f, 7.0, cut).unwrap();
        // r Phi constant beyond the screening radius
        let q_expect = cut.max(g.r_min());
        let mut reference = None;
        for (i, &val) in sp.potential.values().iter().enumerate() {
            let r = g.r(i);
            if r >= q_expect {
                let rv = r * val;
                match reference {
                    None => reference = Some(rv),
                    Some(q) => prop_assert!((rv - q).abs() <= 1e-9 * q.abs().max(1.0)),
                }
            }
        }
    }

    #[test]
    fn radius_of_charge_monotone_in_nu(params in bump_strategy()) {
        let g = grid();
        let f = bump_density(&g, &params);
        let total = integrate3d(&f).unwrap();
        let mut prev = f64::INFINITY;
        for k in 1..8 {
            let nu = total * k as f64 / 8.0;
            let r = radius_of_charge(&f, nu).unwrap();
            prop_assert!(r <= prev + 1e-12, "radius increased with nu");
            prev = r;
        }
    }

    #[test]
    fn smearing_preserves_mass(params in bump_strategy(), s in 0.2f64..1.0) {
        let g = grid();
        let f = bump_density(&g, &params);
        let total = integrate3d(&f).unwrap();
        if let Ok(out) = atomlab_core::smear::smear_g2(&f, s) {
            let total_out = integrate3d(&out).unwrap();
            prop_assert!(
                ((total_out - total) / total).abs() < 1e-5,
                "{total} -> {total_out}"
            );
        }
    }
}
