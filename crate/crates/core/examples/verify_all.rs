use gauge_gamma::{verify_all, CaseDatabase, Engine};

fn main() {
    let report = verify_all(&Engine::new(CaseDatabase::embedded()));
    for c in &report.checks {
        println!(
            "[{}] {}: {}",
            if c.passed { "ok" } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    println!("{}", report.summary());
    if !report.passed() {
        std::process::exit(1);
    }
}
