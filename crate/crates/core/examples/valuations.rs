//! p-adic valuations, p-components and factorials.

use gauge_gamma::arith::{factorial, p_component, parse_expr, valuation, Prime};
use num_bigint::BigInt;

fn main() -> gauge_gamma::Result<()> {
    let p7 = Prime::new(7)?;
    let x = parse_expr("19!*(-1229/(60*17!))")?;
    println!("19! * (-1229/(60*17!)) = {x}, nu_7 = {}", valuation(&x, p7));

    let gamma_e8 = BigInt::from(45_398_353u64);
    for p in [7u64, 11, 13, 19, 31] {
        let p = Prime::new(p)?;
        println!(
            "p-component of gamma(E8) at {p}: {}",
            p_component(&gamma_e8, p)?
        );
    }

    let f = factorial(29)?;
    println!("29! = {f} ({} digits)", f.to_string().len());
    Ok(())
}
