use atomlab_core::hf::ScfSettings;
use atomlab_core::electrostatics::radius_of_charge;
use atomlab_core::verify::{SweepPlan, Verifier};
use atomlab_core::NumericsSettings;
fn main() {
    let plan = SweepPlan::default();
    let mut v = Verifier::new(&plan, NumericsSettings::default(), ScfSettings::default()).unwrap();
    for &z in &[36u32, 54, 86] {
        let hf = v.hf_state(z, z).unwrap().clone();
        print!("Z={z}: ");
        for &nu in &[1.0, 2.0, 4.0, 8.0, 16.0] {
            let r = radius_of_charge(&hf.rho, nu).unwrap();
            print!("nu={nu}: {:.4}  ", r * nu.cbrt());
        }
        println!();
    }
}
