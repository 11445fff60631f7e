//! Runs the closed-form cross-checks and prints one line per check.

use gaussia::validate::{Grid, Validator};

fn main() -> gaussia::Result<()> {
    let checks = Validator::new(Grid::Coarse).run()?;
    for c in &checks {
        println!("{c}");
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    println!("{} of {} checks passed", checks.len() - failed, checks.len());
    Ok(())
}
