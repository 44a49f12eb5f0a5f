//! Velocity shift A(t) and position shift B(t) for the built-in friction families,
//! compared with adaptive quadrature of a user-supplied alpha.

use delta_riemann::FrictionTerm;

fn main() -> delta_riemann::Result<()> {
    let families = [
        ("zero", FrictionTerm::zero()),
        ("constant(0.5)", FrictionTerm::constant(0.5)?),
        ("degenerate(1, 1)", FrictionTerm::gradually_degenerate(1.0, 1.0)?),
        ("degenerate(-1, 2)", FrictionTerm::gradually_degenerate(-1.0, 2.0)?),
        ("degenerate(1, 0.5)", FrictionTerm::gradually_degenerate(1.0, 0.5)?),
    ];
    for (name, f) in &families {
        let (a, b) = f.shifts(2.0)?;
        println!("{name:>20}: alpha(2) = {:+.6}  A(2) = {a:+.12}  B(2) = {b:+.12}", f.alpha(2.0));
    }

    let closed = FrictionTerm::gradually_degenerate(1.0, 1.5)?;
    let general = FrictionTerm::general(|t| 1.0 / (1.0 + t).powf(1.5), 1e-12)?;
    for t in [0.5, 3.0, 10.0] {
        let (a1, b1) = closed.shifts(t)?;
        let (a2, b2) = general.shifts(t)?;
        println!("t = {t:4}: |dA| = {:.1e}  |dB| = {:.1e}", (a1 - a2).abs(), (b1 - b2).abs());
    }
    Ok(())
}
