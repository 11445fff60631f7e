//! Writes the figure tables as CSV into a directory (default: current).

use std::fs::File;
use std::path::PathBuf;

use gaussia::figures::{figure_table, Figure};
use gaussia::renyi::DEFAULT_BUDGET;

fn main() -> gaussia::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("."));
    for (name, fig) in [("fig2a", Figure::Fig2a), ("fig2b", Figure::Fig2b), ("fig3", Figure::Fig3)] {
        let table = figure_table(fig, DEFAULT_BUDGET)?;
        let path = dir.join(format!("{name}.csv"));
        table.write_csv(File::create(&path)?)?;
        println!("{}: {} rows, columns {}", path.display(), table.rows.len(), table.header.join(" "));
    }
    Ok(())
}
