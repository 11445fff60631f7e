//! The three observer settings and the full report for each.

use gaussia::renyi::DEFAULT_BUDGET;
use gaussia::report::analyze;
use gaussia::FrameScenario;

fn main() -> gaussia::Result<()> {
    let s = 0.828727;
    let scenarios = [
        FrameScenario::inertial(s)?,
        FrameScenario::setting_a(s, 1.0)?,
        FrameScenario::setting_b(s, 0.5, 1.0)?,
    ];
    for sc in &scenarios {
        println!("{:?}: global modes {:?}", sc.setting, sc.setting.modes());
        let rep = analyze(sc, DEFAULT_BUDGET)?;
        println!(
            "  I2 {:.6}  J2(A|R) {:.6}  J2(R|A) {:.6}  E2 {:.6} (closed {:.6})",
            rep.i2, rep.a_given_r.classical, rep.r_given_a.classical, rep.e2.estimated, rep.e2.closed
        );
    }
    let json = serde_json::to_string_pretty(&analyze(&scenarios[1], DEFAULT_BUDGET)?)?;
    println!("{json}");
    Ok(())
}
