use gauge_gamma::homotopy::{bspace_pi, factor_pi, sphere_pi, HSpaceFactor};
use gauge_gamma::Prime;

fn main() -> gauge_gamma::Result<()> {
    let p5 = Prime::new(5)?;
    let p7 = Prime::new(7)?;
    println!("pi_30(S^19) at 7: {}", sphere_pi(10, 11, p7));
    println!("pi_20(S^9) at 7: {}", sphere_pi(5, 11, p7));

    let b = HSpaceFactor::new(vec![15, 23], None)?;
    for k in 0..=16 {
        println!("pi_{}({b}) at 5: {}", 15 + k, bspace_pi(&b, k, p5)?);
    }

    let su = HSpaceFactor::new(vec![3, 15, 27], Some(18))?;
    println!("pi_30({su}) at 7: {}", factor_pi(&su, 30, p7));
    Ok(())
}
