//! Entanglement sudden death when both observers accelerate, while discord
//! survives.

use gaussia::closed_forms::{e2_closed, sudden_death};
use gaussia::report::pair_correlations;
use gaussia::renyi::DEFAULT_BUDGET;
use gaussia::FrameScenario;

fn main() -> gaussia::Result<()> {
    let s: f64 = 0.3;
    println!("s = {s}: separable once sinh w · sinh r ≥ tanh s = {:.4}", s.tanh());
    println!("{:>5} {:>6} {:>10} {:>10} {:>10} {:>10}", "r", "dead", "E2 est", "E2 closed", "D2(A|R)", "D2(R|A)");
    for i in 0..=8 {
        let r = 0.25 * i as f64;
        let sc = FrameScenario::setting_b(s, 2.0 * r, r)?;
        let c = pair_correlations(&sc, DEFAULT_BUDGET)?;
        println!(
            "{r:>5} {:>6} {:>10.6} {:>10.6} {:>10.6} {:>10.6}",
            sudden_death(s, 2.0 * r, r)?,
            c.e2,
            e2_closed(s, 2.0 * r, r)?,
            c.d2_a_given_r,
            c.d2_r_given_a
        );
    }
    Ok(())
}
