//! From proper acceleration or Unruh temperature to the parameter r.

use gaussia::unruh::{acceleration_parameter, UnruhInput, UnruhParameters};

fn main() -> gaussia::Result<()> {
    let frequency = 1.0;
    println!("{:>10} {:>10} {:>10}", "a", "T", "r");
    for a in [0.1, 1.0, 2.0 * std::f64::consts::PI, 50.0] {
        let p = UnruhParameters {
            frequency,
            given: UnruhInput::Acceleration(a),
        };
        println!("{a:>10.4} {:>10.4} {:>10.6}", p.temperature()?, acceleration_parameter(&p)?);
    }
    let hot = UnruhParameters {
        frequency,
        given: UnruhInput::Temperature(1e6),
    };
    println!("T = 1e6 → r = {:.4} (grows like ln T)", acceleration_parameter(&hot)?);
    Ok(())
}
