//! Vacuum, a two-mode squeezer and the symplectic spectrum.

use gaussia::phase_space::{apply_symplectic, local_symplectic, two_mode_squeezer, vacuum_cm};

fn main() -> gaussia::Result<()> {
    let vac = vacuum_cm(2)?;
    let s = two_mode_squeezer(0.6, 0, 1, 2)?;
    let tms = apply_symplectic(&vac, &s)?;
    println!("det σ = {:.12}", tms.det());
    println!("symplectic eigenvalues {:?}", tms.symplectic_eigenvalues());
    println!("bona fide: {}, pure: {}", tms.is_bona_fide(), tms.is_pure(1e-9));

    let marginal = tms.reduce(&[0])?;
    println!("marginal of mode 0 (thermal, ν = cosh 1.2 = {:.6}):", 1.2f64.cosh());
    println!("{}", marginal.matrix());

    // Local operations leave the symplectic spectrum alone.
    let local = local_symplectic(0.3, 0.7, 1.1, 0, 2)?.compose(&local_symplectic(-0.4, 0.2, 0.5, 1, 2)?)?;
    println!("symplectic defect {:.2e}", local.symplectic_defect());
    let moved = apply_symplectic(&tms, &local)?;
    println!("after local transform {:?}", moved.symplectic_eigenvalues());
    Ok(())
}
