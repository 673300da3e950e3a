//! Which gauge groups G_k over S^4 are p-locally equivalent to G_1?

use gauge_gamma::classify::{distinguishing_primes, ClassifierContext};
use gauge_gamma::{CaseDatabase, Engine, LieGroup, Prime};

fn main() -> gauge_gamma::Result<()> {
    let engine = Engine::new(CaseDatabase::embedded());

    let ctx = ClassifierContext::new(&engine, LieGroup::E8, Prime::new(11)?)?;
    println!(
        "E8 at 11: classes represented by {:?}",
        ctx.equivalence_classes()?
    );
    for k in [1, 11, 22, 121, 242, 0] {
        let v = ctx.equivalent_global(k, 1);
        println!(
            "  G_{k} ~ G_1: {} (invariant {})",
            v.equivalent, v.invariant_k
        );
    }

    for (k, l) in [(7, 49), (13, 26), (1, 45_398_353)] {
        let ps: Vec<u32> = distinguishing_primes(&engine, LieGroup::E8, k, l)?
            .iter()
            .map(|p| p.get())
            .collect();
        println!("E8: G_{k} vs G_{l} differ at p in {ps:?}");
    }
    Ok(())
}
