//! gamma(G, p) for every group and relevant prime, with the method used.

use gauge_gamma::{CaseDatabase, Engine, LieGroup};

fn main() -> gauge_gamma::Result<()> {
    let engine = Engine::new(CaseDatabase::embedded());
    for g in LieGroup::ALL {
        for p in Engine::relevant_primes(g) {
            let r = engine.gamma_p(g, p)?;
            if r.value.exponent > 0 {
                println!(
                    "gamma({g}, {p}) = {:<5} {:<12} witnesses {:?}",
                    r.value.to_string(),
                    r.method.to_string(),
                    r.witnesses
                );
            }
        }
        println!("gamma({g}) = {}", engine.gamma_global(g)?.value);
    }
    Ok(())
}
