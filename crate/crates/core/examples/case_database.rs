//! Loads the case database, corrupts one lift and shows that verification notices.

use gauge_gamma::{verify_all, CaseDatabase, Engine, Rational};

fn main() -> gauge_gamma::Result<()> {
    let db = CaseDatabase::resolve(None)?;
    let engine = Engine::new(db.clone());
    for case in &db.phi_cases {
        let e = engine.evaluate_phi_case(case)?;
        println!(
            "{:<9} {} p={:<2} i={:<2} order {}",
            case.id, case.group, case.prime, case.index, e.order
        );
    }
    println!("attested facts: {}", db.attested.len());

    let mut broken = db;
    let case = broken
        .phi_cases
        .iter_mut()
        .find(|c| c.id == "E8_19_5")
        .expect("present");
    case.lift = Some(vec![Rational::from(19)]);
    let report = verify_all(&Engine::new(broken));
    for c in report.failures() {
        println!("after corruption: {} -> {}", c.name, c.detail);
    }
    println!("{}", report.summary());
    Ok(())
}
