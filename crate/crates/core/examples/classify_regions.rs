//! Which wave pattern does a Keyfitz–Kranzer Riemann problem produce?

use delta_riemann::kk::{classify, solve};
use delta_riemann::{FrictionTerm, RiemannData, State};

fn main() -> delta_riemann::Result<()> {
    let cases = [
        ((1.0, 0.0), (2.0, 1.0), 1.0),
        ((1.0, 0.0), (0.2, 0.5), 1.0),
        ((1.0, 1.0), (0.3, 0.0), 1.0),
        ((1.0, 1.0), (1.5, 0.0), 1.0),
        ((1.0, 2.0), (1.0, 0.0), 1.0),
        ((1.0, 2.0), (0.5, 0.0), 1.0),
    ];
    println!("{:>12} {:>12} {:>5} {:>8} {:>12}", "left", "right", "mu", "region", "branch");
    for ((rl, ul), (rr, ur), mu) in cases {
        let data = RiemannData::new(State::new(rl, ul)?, State::new(rr, ur)?, mu)?;
        let region = classify(&data)?;
        let sol = solve(&data, &FrictionTerm::zero())?;
        println!(
            "{:>12} {:>12} {mu:>5} {:>8} {:>12}",
            format!("({rl}, {ul})"),
            format!("({rr}, {ur})"),
            region.name(),
            sol.branch_name()
        );
    }
    Ok(())
}
