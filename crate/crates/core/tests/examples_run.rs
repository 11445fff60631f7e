//! Every cargo example builds and runs to completion.

use std::process::Command;

const EXAMPLES: [&str; 10] = [
    "symplectic_basics",
    "renyi_entropies",
    "discord",
    "unruh_settings",
    "acceleration_temperature",
    "sudden_death",
    "tripartite",
    "sweep",
    "figure_data",
    "validate",
];

#[test]
fn examples_run() {
    let dir = tempfile::tempdir().unwrap();
    let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".into());
    for name in EXAMPLES {
        let mut cmd = Command::new(&cargo);
        cmd.args(["run", "--quiet", "--profile", "test", "--example", name, "--manifest-path", env!("CARGO_MANIFEST_PATH")]);
        if name == "figure_data" {
            cmd.arg("--").arg(dir.path());
        }
        let out = cmd.output().unwrap();
        assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stdout.is_empty(), "{name}");
    }
    assert!(dir.path().join("fig3.csv").exists());
}
