//! Recomputes every published value from the case database and compares.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{PPower, Prime};
use crate::cases::ImageSpec;
use crate::claims::{self, prime, rationals};
use crate::engine::{possibly_nontrivial, Check, Engine, Possibility};
use crate::lattice::{lattice_equal, Lattice, PVector};
use crate::registry::{decomposition, tabulated_pairs, LieGroup};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn summary(&self) -> String {
        let n = self.checks.len();
        match self.failures().len() {
            0 => format!("all {n} checks passed"),
            f => format!("{f} of {n} checks failed"),
        }
    }
}

fn outcome<T>(
    name: String,
    r: crate::error::Result<T>,
    ok: impl FnOnce(&T) -> (bool, String),
) -> Check {
    match r {
        Ok(v) => {
            let (passed, detail) = ok(&v);
            Check::new(name, passed, detail)
        }
        Err(e) => Check::new(name, false, e.to_string()),
    }
}

fn order_of(p: Prime, value: u64) -> PPower {
    PPower::from_value(p, &BigInt::from(value)).expect("transcribed order is a prime power")
}

fn decompositions(out: &mut Vec<Check>) {
    let mut pairs: BTreeSet<(LieGroup, Prime)> = tabulated_pairs().collect();
    for g in LieGroup::ALL.into_iter().filter(|&g| g != LieGroup::G2) {
        for p in crate::arith::primes_between(u64::from(g.top_exponent()) + 1, 37) {
            pairs.insert((g, p));
        }
    }
    for (g, p) in pairs {
        let name = format!("decomposition {g} p={p}");
        out.push(match decomposition(g, p) {
            Ok(d) => match d.check_invariants() {
                Ok(()) => Check::new(name, true, d.to_string()),
                Err(e) => Check::new(name, false, e),
            },
            Err(e) => Check::new(name, false, e.to_string()),
        });
    }
}

fn possibility_table(out: &mut Vec<Check>) {
    let expected: BTreeSet<(LieGroup, u32, u32)> =
        claims::POSSIBLY_NONTRIVIAL.iter().copied().collect();
    for &(g, p) in claims::QUASI_REGULAR_PAIRS {
        let pp = prime(p);
        let mut found = BTreeSet::new();
        let mut bad = Vec::new();
        for i in 1..p {
            match possibly_nontrivial(g, pp, i) {
                Ok(Possibility::Possible) => {
                    found.insert(i);
                }
                Ok(Possibility::No) => {}
                Ok(Possibility::Unknown) => bad.push(format!("i={i} unknown")),
                Err(e) => bad.push(e.to_string()),
            }
        }
        let want: BTreeSet<u32> = expected
            .iter()
            .filter(|(eg, ep, _)| *eg == g && *ep == p)
            .map(|t| t.2)
            .collect();
        let quasi = decomposition(g, pp).is_ok_and(|d| d.is_quasi_p_regular() && !d.is_p_regular());
        out.push(Check::new(
            format!("possibly non-trivial {g} p={p}"),
            quasi && bad.is_empty() && found == want,
            format!(
                "computed {found:?}, expected {want:?}{}",
                if bad.is_empty() {
                    String::new()
                } else {
                    format!(", {}", bad.join(", "))
                }
            ),
        ));
    }
}

fn phi_cases(engine: &Engine, out: &mut Vec<Check>) {
    let db = engine.database();
    for stated in claims::STATED_CASES {
        let Some(case) = db.case_by_id(stated.id) else {
            out.push(Check::new(
                format!("case {}", stated.id),
                false,
                "missing from the database",
            ));
            continue;
        };
        let p = case.prime;
        let report = engine.validate_phi_case(case);
        out.push(Check::new(
            format!("case {} validates", case.id),
            report.passed(),
            match report.failures().first() {
                Some(c) => format!("{}: {}", c.name, c.detail),
                None => format!("j = {:?}, r = {:?}", report.j, report.r),
            },
        ));
        let want = order_of(p, stated.order);
        out.push(outcome(
            format!("case {} order", case.id),
            engine.evaluate_phi_case(case),
            |e| {
                (
                    e.order == want,
                    format!("computed {}, expected {want}", e.order),
                )
            },
        ));

        let stated_lattice = stated
            .generators
            .iter()
            .map(|g| PVector::new(p, rationals(g)))
            .collect::<crate::error::Result<Vec<_>>>()
            .and_then(|gens| Lattice::reduce(gens, p, case.target_degrees.len()));
        let computed = engine.image_lattice(case);
        let source = match case.image {
            ImageSpec::Explicit { .. } => "explicit",
            ImageSpec::Recipes { .. } => "Chern data",
        };
        out.push(outcome(
            format!("case {} image lattice", case.id),
            computed
                .and_then(|c| Ok((stated_lattice?, c)))
                .and_then(|(s, c)| lattice_equal(&s, &c)),
            |eq| {
                (
                    *eq,
                    format!("lattice from {source} equals the stated generators: {eq}"),
                )
            },
        ));

        if let Some(stated_lift) = stated.lift {
            let check = (|| {
                let lattice = engine.image_lattice(case)?;
                let ours = PVector::new(p, case.lift.clone().unwrap_or_default())?;
                let theirs = PVector::new(p, rationals(stated_lift))?;
                lattice.contains(&ours.sub(&theirs)?)
            })();
            out.push(outcome(format!("case {} lift", case.id), check, |ok| {
                (
                    *ok,
                    "database lift agrees with the stated lift modulo the image".into(),
                )
            }));
        }
    }
}

fn chern_derivations(engine: &Engine, out: &mut Vec<Check>) {
    let db = engine.database();
    let built = |id: &str| {
        let case = db
            .case_by_id(id)
            .ok_or_else(|| crate::error::Error::UnknownCase(id.into()))?;
        match &case.image {
            ImageSpec::Recipes { bases, recipe, .. } => recipe.evaluate(bases),
            ImageSpec::Explicit { .. } => Err(crate::error::Error::MalformedRecipe(format!(
                "{id} has no recipe"
            ))),
        }
    };
    let mut compare = |label: String, id: &str, class: &str, want: crate::chern::ChernVector| {
        out.push(outcome(label, built(id), |classes| {
            match classes.get(class) {
                Some(x) => (*x == want, format!("computed {x}")),
                None => (false, format!("class {class} not built")),
            }
        }));
    };
    for (name, terms) in &claims::E8_XI {
        compare(
            format!("ch({name}) for E8 at 7"),
            "E8_7_5",
            name,
            claims::e8_chern(terms),
        );
    }
    compare(
        "ch(xi) for E6 at 5".into(),
        "E6_5_3",
        "xi",
        claims::chern(claims::E6_XI),
    );
    compare(
        "ch(eta) for E6 at 5".into(),
        "E6_5_3",
        "eta",
        claims::chern(claims::E6_ETA),
    );
    compare(
        "ch(xi) for E7 at 7".into(),
        "E7_7_5",
        "xi",
        claims::chern(claims::E7_XI),
    );
}

fn attested_facts(engine: &Engine, out: &mut Vec<Check>) {
    for fact in &engine.database().attested {
        let index = fact.index.map_or_else(String::new, |i| format!(" i={i}"));
        let order = fact.order();
        out.push(Check::new(
            format!("attested {} p={}{index}", fact.group, fact.prime),
            order.is_ok() && !fact.citation.trim().is_empty(),
            match order {
                Ok(o) if fact.citation.trim().is_empty() => format!("{o} without a citation"),
                Ok(o) => format!("{o}: {}", fact.citation),
                Err(e) => e.to_string(),
            },
        ));
    }
}

fn gamma_values(engine: &Engine, out: &mut Vec<Check>) {
    for &(g, p, i, v) in claims::GAMMA_I {
        let want = order_of(prime(p), v);
        out.push(outcome(
            format!("gamma_{i}({g}, {p})"),
            engine.gamma_i(g, prime(p), i),
            |r| {
                (
                    r.value == want,
                    format!("{} ({}), expected {want}", r.value, r.method),
                )
            },
        ));
    }
    for &(g, p, v) in claims::FINAL_TABLE {
        let want = order_of(prime(p), v);
        out.push(outcome(
            format!("gamma({g}, {p})"),
            engine.gamma_p(g, prime(p)),
            |r| {
                (
                    r.value == want,
                    format!("{} ({}), expected {want}", r.value, r.method),
                )
            },
        ));
    }
    for &(g, factors) in claims::GLOBAL_CONSTANTS {
        let want: BigInt = factors
            .iter()
            .map(|&(q, e)| num_traits::pow(BigInt::from(q), e as usize))
            .product();
        out.push(outcome(
            format!("gamma({g})"),
            engine.gamma_global(g),
            |r| (r.value() == want, format!("{}, expected {want}", r.value)),
        ));
    }
}

/// Runs every check.
pub fn verify_all(engine: &Engine) -> VerifyReport {
    let mut checks = Vec::new();
    decompositions(&mut checks);
    possibility_table(&mut checks);
    phi_cases(engine, &mut checks);
    chern_derivations(engine, &mut checks);
    attested_facts(engine, &mut checks);
    gamma_values(engine, &mut checks);
    VerifyReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cases::CaseDatabase;

    #[test]
    fn pristine_data_verifies() {
        let report = verify_all(&Engine::new(CaseDatabase::embedded()));
        let failures: Vec<_> = report
            .failures()
            .iter()
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect();
        assert!(failures.is_empty(), "{failures:#?}");
    }

    #[test]
    fn deterministic() {
        let e = Engine::new(CaseDatabase::embedded());
        assert_eq!(verify_all(&e), verify_all(&e));
    }
}
