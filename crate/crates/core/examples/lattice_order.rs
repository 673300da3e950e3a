//! Order of a lift in Z_(5)^2 / L for the E6 case at p = 5.

use gauge_gamma::arith::parse_expr;
use gauge_gamma::{Lattice, PVector, Prime};

fn vector(p: Prime, entries: &[&str]) -> gauge_gamma::Result<PVector> {
    PVector::new(
        p,
        entries
            .iter()
            .map(|s| parse_expr(s))
            .collect::<Result<_, _>>()?,
    )
}

fn main() -> gauge_gamma::Result<()> {
    let p = Prime::new(5)?;
    let gens = vec![vector(p, &["3*5", "2^-3*5*13"])?, vector(p, &["0", "5^2"])?];
    let lattice = Lattice::reduce(gens, p, 2)?;
    println!("pivot valuations: {:?}", lattice.pivot_valuations());

    let lift = vector(p, &["2^-3*3^2", "-2^-6*3^-1*71"])?;
    println!("coset order of the lift: {}", lattice.coset_order(&lift)?);
    println!("exponent of the quotient: {}", lattice.quotient_exponent());
    Ok(())
}
