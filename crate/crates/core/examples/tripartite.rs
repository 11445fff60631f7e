//! Residual entanglement and discord among A, R and R̄ with Rob as hub.

use gaussia::closed_forms::{c2_inertial, q2_tripartite_closed};
use gaussia::renyi::DEFAULT_BUDGET;
use gaussia::tripartite::{minimize_over_hub, HubQuantity, TripartiteReport};
use gaussia::unruh::setting_a;

fn main() -> gaussia::Result<()> {
    let s = 0.828727;
    println!("{:>4} {:>10} {:>10} {:>10} {:>4}", "r", "res ent", "res disc", "Q2 closed", "hub");
    for r in [0.5, 1.0, 2.0, 3.0] {
        let rep = TripartiteReport::setting_a(s, r, DEFAULT_BUDGET)?;
        let (hub, _) = minimize_over_hub(&setting_a(s, r)?, HubQuantity::Discord)?;
        println!(
            "{r:>4} {:>10.6} {:>10.6} {:>10.6} {:>4}",
            rep.residual_entanglement,
            rep.residual_discord,
            q2_tripartite_closed(s, r)?,
            ["A", "R", "Rbar"][hub]
        );
    }
    let gap = c2_inertial(25.0)? - q2_tripartite_closed(25.0, 25.0)?;
    println!("s = r = 25: C2 − Q2 = {gap:.6} (ln 2 = {:.6})", std::f64::consts::LN_2);
    Ok(())
}
