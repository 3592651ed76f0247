use atomlab_core::hf::{scf_solve_with, ScfSettings};
use atomlab_core::tf::TfWorkspace;
use atomlab_core::NumericsSettings;
use std::time::Instant;
fn main() {
    let nm = NumericsSettings::default();
    let tf = TfWorkspace::new(nm.clone()).unwrap();
    let mut probe = ScfSettings::default();
    probe.max_sweeps = 120;
    for z in [2u32, 6, 10, 18, 36, 54, 86] {
        for n in [z - 1, z + 1, z + 2] {
            if n == 0 { continue; }
            let s = if n > z { &probe } else { &ScfSettings::default() };
            let t = Instant::now();
            let r = scf_solve_with(z as f64, n, s, &nm, Some(&tf));
            println!("Z={z} N={n}: {} [{:.2?}]", match &r {
                Ok(st) => format!("ok sweeps={} E={:.3}", st.sweeps, st.energy_total),
                Err(e) => format!("{e}").chars().take(60).collect::<String>(),
            }, t.elapsed());
        }
    }
}
