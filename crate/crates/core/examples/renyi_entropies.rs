//! Rényi-2 entropy and mutual information of the observers' state.

use gaussia::closed_forms::i2_closed;
use gaussia::renyi::{mutual_information, renyi2_entropy};
use gaussia::unruh::observed_pair;
use gaussia::{CovarianceMatrix, FrameScenario, ModePartition};

fn main() -> gaussia::Result<()> {
    // n̄ = 1 thermal state: ½ ln 9 = ln 3.
    let th = CovarianceMatrix::thermal(1.0)?;
    println!("S2(thermal n=1) = {:.12} (ln 3 = {:.12})", renyi2_entropy(&th)?.value, 3f64.ln());

    let s = 0.828727;
    let ar = ModePartition::bipartite(&[0], &[1])?;
    println!("{:>5} {:>14} {:>14}", "r", "I2 numeric", "I2 closed");
    for r in [0.0, 0.5, 1.0, 2.0, 4.0] {
        let sigma = observed_pair(&FrameScenario::setting_a(s, r)?)?;
        let i2 = mutual_information(&sigma, &ar)?.value;
        println!("{r:>5} {i2:>14.10} {:>14.10}", i2_closed(s, 0.0, r)?);
    }
    Ok(())
}
