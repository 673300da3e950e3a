//! Mod-p decompositions of the exceptional groups at every torsion-free prime up to 31.

use gauge_gamma::arith::primes_between;
use gauge_gamma::registry::decomposition;
use gauge_gamma::LieGroup;

fn main() {
    for g in LieGroup::ALL {
        for p in primes_between(2, 31) {
            match decomposition(g, p) {
                Ok(d) => {
                    let kind = if d.is_p_regular() {
                        "regular"
                    } else if d.is_quasi_p_regular() {
                        "quasi-regular"
                    } else {
                        "general"
                    };
                    println!("{d}  [{kind}]");
                }
                Err(e) => println!("{g} at p = {p}: {e}"),
            }
        }
    }
}
