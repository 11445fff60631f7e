//! A sweep over Alice's acceleration at fixed r, printed as CSV.

use gaussia::renyi::DEFAULT_BUDGET;
use gaussia::sweep::{run_sweep, sweep_table, SweepSpec};

fn main() -> gaussia::Result<()> {
    let spec: SweepSpec = serde_json::from_str(
        r#"{"scenario": {"setting": "b", "s": 0.828727, "r": 1.0},
            "parameter": "w", "start": 0, "stop": 2, "steps": 9, "output": "unused.csv"}"#,
    )?;
    let rows = run_sweep(&spec, DEFAULT_BUDGET)?;
    print!("{}", sweep_table(&spec, &rows).to_csv());
    Ok(())
}
