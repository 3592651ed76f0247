use atomlab_core::hf::ScfSettings;
use atomlab_core::verify::{SweepPlan, Verifier};
use atomlab_core::NumericsSettings;
use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    let plan = SweepPlan::default();
    let mut v = Verifier::new(&plan, NumericsSettings::default(), ScfSettings::default()).unwrap();
    let mut show = |name: &str, reports: Vec<atomlab_core::BoundReport>, t: Instant| {
        for r in reports {
            println!(
                "[{name}] {}: {:?} worst_margin={:.3e} samples={} [{:.1?}]",
                r.claim_id, r.verdict, r.worst_margin, r.samples.len(), t.elapsed()
            );
            if r.verdict != atomlab_core::Verdict::Pass {
                for s in r.samples.iter().filter(|s| s.margin < -r.tolerance).take(3) {
                    println!("    VIOLATION {} lhs={:.5e} rhs={:.5e}", s.label, s.lhs, s.rhs);
                }
            }
        }
    };
    let t = Instant::now(); let r = v.check_sommerfeld_sandwich(&plan).unwrap(); show("tf", r, t);
    let t = Instant::now(); let r = v.check_screened_tf_bound(&plan).unwrap(); show("tf", vec![r], t);
    let t = Instant::now(); let r = v.check_chemical_potential(&plan).unwrap(); show("tf", vec![r], t);
    let t = Instant::now(); let r = v.check_coulomb_norm_estimate(&plan).unwrap(); show("cn", vec![r], t);
    let t = Instant::now(); let r = v.check_pointwise_newton_bound(&plan).unwrap(); show("cn", vec![r], t);
    let t = Instant::now(); let r = v.check_semiclassical_suite(&plan).unwrap(); show("sc", r, t);
    let t = Instant::now(); let r = v.check_hf_inequalities(&plan).unwrap(); show("hf", r, t);
    let t = Instant::now(); let r = v.check_exterior_l1_sweep(&plan).unwrap(); show("hf", vec![r], t);
    let t = Instant::now(); let r = v.check_potential_estimate(&plan).unwrap(); show("bd", r, t);
    let t = Instant::now(); let r = v.check_radius_asymptote(&plan).unwrap(); show("bd", r, t);
    let t = Instant::now(); let r = v.check_exterior_tf(50).unwrap(); show("bd", r, t);
    let t = Instant::now(); let r = v.check_ionization_suite(&plan).unwrap(); show("ion", r, t);
    println!("TOTAL {:.1?}", t0.elapsed());
}
