//! One-way classical correlations and discord in both directions.

use gaussia::closed_forms::{c2_inertial, j2_r_given_a};
use gaussia::measurement::{discord, Side};
use gaussia::unruh::observed_pair;
use gaussia::{FrameScenario, ModePartition};

fn main() -> gaussia::Result<()> {
    let s = 0.828727;
    let ar = ModePartition::bipartite(&[0], &[1])?;
    println!("measuring R: J2(A|R) should stay at ln cosh 2s = {:.8}", c2_inertial(s)?);
    println!("{:>4} {:>11} {:>11} {:>11} {:>11} {:>9}", "r", "J2(A|R)", "D2(A|R)", "J2(R|A)", "closed", "D2(R|A)");
    for r in [0.0, 0.5, 1.0, 2.0, 5.0] {
        let sigma = observed_pair(&FrameScenario::setting_a(s, r)?)?;
        let on_r = discord(&sigma, &ar, Side::B)?;
        let on_a = discord(&sigma, &ar, Side::A)?;
        println!(
            "{r:>4} {:>11.8} {:>11.8} {:>11.8} {:>11.8} {:>9.6}",
            on_r.classical.value.value,
            on_r.value.value,
            on_a.classical.value.value,
            j2_r_given_a(s, r)?,
            on_a.value.value
        );
    }
    let seed = discord(&observed_pair(&FrameScenario::setting_a(s, 1.0)?)?, &ar, Side::A)?.classical.seed;
    println!("optimal seed at r=1: θ = {:.4}, z = {:.4} (heterodyne is θ = z = 0)", seed.theta, seed.log_squeeze);
    Ok(())
}
