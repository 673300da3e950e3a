//! `p`-local homotopy types of the gauge groups `G_k` of principal
//! `G`-bundles over `S^4`.
//!
//! Two criteria are implemented: one against `gamma(G, p) = p^e`, the other
//! against the integer `gamma(G)`. Agreement between them on every in-scope
//! pair is a tested property, not an assumption.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{gcd_int, p_component, valuation_int, PPower, Prime, Valuation};
use crate::engine::{Engine, Method};
use crate::error::{Error, Result};
use crate::registry::LieGroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Criterion {
    Global,
    PLocal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceVerdict {
    pub group: LieGroup,
    pub prime: Prime,
    pub k: i64,
    pub l: i64,
    pub equivalent: bool,
    pub invariant_k: PPower,
    pub invariant_l: PPower,
    pub gamma_used: u64,
    pub method: Criterion,
    /// How `gamma(G, p)` was obtained.
    pub provenance: Method,
}

fn excluded(g: LieGroup, p: Prime, criterion: Criterion) -> Option<Error> {
    let reason = match (g, p.get(), criterion) {
        (LieGroup::E7, 5, _) => "excluded from the classification",
        (LieGroup::G2, 3, Criterion::PLocal) => "excluded from the p-local criterion",
        _ if !g.is_torsion_free(p) => "homology has p-torsion",
        _ => return None,
    };
    Some(Error::Unsupported {
        group: g,
        prime: p.get(),
        reason: reason.into(),
    })
}

/// `gamma(G, p)` and `gamma(G)` for one pair, computed once.
#[derive(Debug, Clone)]
pub struct ClassifierContext {
    group: LieGroup,
    prime: Prime,
    gamma_p: PPower,
    gamma_global: BigInt,
    provenance: Method,
}

impl ClassifierContext {
    pub fn new(engine: &Engine, g: LieGroup, p: Prime) -> Result<Self> {
        if let Some(e) = excluded(g, p, Criterion::Global) {
            return Err(e);
        }
        let local = engine.gamma_p(g, p)?;
        Ok(ClassifierContext {
            group: g,
            prime: p,
            gamma_p: local.value,
            gamma_global: engine.gamma_global(g)?.value(),
            provenance: local.method,
        })
    }

    pub fn gamma_p(&self) -> PPower {
        self.gamma_p
    }

    pub fn gamma_global(&self) -> &BigInt {
        &self.gamma_global
    }

    fn verdict(
        &self,
        k: i64,
        l: i64,
        ik: PPower,
        il: PPower,
        gamma: &BigInt,
        method: Criterion,
    ) -> EquivalenceVerdict {
        EquivalenceVerdict {
            group: self.group,
            prime: self.prime,
            k,
            l,
            equivalent: ik == il,
            invariant_k: ik,
            invariant_l: il,
            gamma_used: gamma.to_u64().expect("gamma fits in u64"),
            method,
            provenance: self.provenance,
        }
    }

    /// `p^min(nu_p(k), e)`, i.e. `gcd(|k|, p^e)`.
    pub fn local_invariant(&self, k: i64) -> PPower {
        let e = self.gamma_p.exponent;
        let v = match valuation_int(&BigInt::from(k), self.prime) {
            Valuation::Finite(v) => (v as u32).min(e),
            Valuation::Infinite => e,
        };
        PPower::new(self.prime, v)
    }

    /// The `p`-component of `gcd(|k|, gamma(G))`.
    pub fn global_invariant(&self, k: i64) -> PPower {
        let g = gcd_int(&BigInt::from(k).abs(), &self.gamma_global);
        let g = if g.is_zero() {
            self.gamma_global.clone()
        } else {
            g
        };
        let part = p_component(&g, self.prime).expect("gcd with gamma(G) is non-zero");
        PPower::from_value(self.prime, &part).expect("p-component is a power of p")
    }

    pub fn equivalent_p_local(&self, k: i64, l: i64) -> Result<EquivalenceVerdict> {
        if let Some(e) = excluded(self.group, self.prime, Criterion::PLocal) {
            return Err(e);
        }
        let gamma = self.gamma_p.value();
        Ok(self.verdict(
            k,
            l,
            self.local_invariant(k),
            self.local_invariant(l),
            &gamma,
            Criterion::PLocal,
        ))
    }

    pub fn equivalent_global(&self, k: i64, l: i64) -> EquivalenceVerdict {
        let gamma = self.gamma_global.clone();
        self.verdict(
            k,
            l,
            self.global_invariant(k),
            self.global_invariant(l),
            &gamma,
            Criterion::Global,
        )
    }

    /// One representative `p^t` per class, `t = 0..=e`; `0` lies in the class of `p^e`.
    pub fn equivalence_classes(&self) -> Result<Vec<BigInt>> {
        if let Some(e) = excluded(self.group, self.prime, Criterion::PLocal) {
            return Err(e);
        }
        Ok((0..=self.gamma_p.exponent)
            .map(|t| PPower::new(self.prime, t).value())
            .collect())
    }
}

pub fn equivalent_p_local(
    engine: &Engine,
    g: LieGroup,
    p: Prime,
    k: i64,
    l: i64,
) -> Result<EquivalenceVerdict> {
    if let Some(e) = excluded(g, p, Criterion::PLocal) {
        return Err(e);
    }
    ClassifierContext::new(engine, g, p)?.equivalent_p_local(k, l)
}

pub fn equivalent_global(
    engine: &Engine,
    g: LieGroup,
    p: Prime,
    k: i64,
    l: i64,
) -> Result<EquivalenceVerdict> {
    Ok(ClassifierContext::new(engine, g, p)?.equivalent_global(k, l))
}

pub fn equivalence_classes(engine: &Engine, g: LieGroup, p: Prime) -> Result<Vec<BigInt>> {
    if let Some(e) = excluded(g, p, Criterion::PLocal) {
        return Err(e);
    }
    ClassifierContext::new(engine, g, p)?.equivalence_classes()
}

/// Primes at which `G_k` and `G_l` are not `p`-locally equivalent. Only
/// primes dividing `gamma(G)` can appear.
pub fn distinguishing_primes(
    engine: &Engine,
    g: LieGroup,
    k: i64,
    l: i64,
) -> Result<BTreeSet<Prime>> {
    let gamma = engine.gamma_global(g)?;
    let mut out = BTreeSet::new();
    for f in gamma.factors.iter().filter(|f| f.value.exponent > 0) {
        if !ClassifierContext::new(engine, g, f.prime)?
            .equivalent_global(k, l)
            .equivalent
        {
            out.insert(f.prime);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cases::CaseDatabase;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn ctx(g: LieGroup, q: u64) -> ClassifierContext {
        ClassifierContext::new(&Engine::new(CaseDatabase::embedded()), g, p(q)).unwrap()
    }

    #[test]
    fn local_examples() {
        let c = ctx(LieGroup::E6, 5);
        assert!(c.equivalent_p_local(5, 10).unwrap().equivalent);
        assert!(!c.equivalent_p_local(5, 25).unwrap().equivalent);
        assert!(c.equivalent_p_local(25, 0).unwrap().equivalent);
        assert!(c.equivalent_p_local(-7, 7).unwrap().equivalent);
    }

    #[test]
    fn global_examples() {
        let c = ctx(LieGroup::E7, 7);
        let v = c.equivalent_global(7, 14);
        assert!(v.equivalent);
        assert_eq!(v.gamma_used, 1463);
        assert!(!ctx(LieGroup::E8, 11).equivalent_global(11, 121).equivalent);
        assert!(ctx(LieGroup::F4, 7).equivalent_global(3, 9).equivalent);
    }

    #[test]
    fn class_counts() {
        assert_eq!(ctx(LieGroup::E6, 5).equivalence_classes().unwrap().len(), 3);
        assert_eq!(
            ctx(LieGroup::F4, 11).equivalence_classes().unwrap().len(),
            1
        );
        assert_eq!(ctx(LieGroup::E8, 7).equivalence_classes().unwrap().len(), 3);
    }

    #[test]
    fn distinguishing() {
        let e = Engine::new(CaseDatabase::embedded());
        assert_eq!(
            distinguishing_primes(&e, LieGroup::E8, 7, 49).unwrap(),
            [p(7)].into()
        );
        assert!(distinguishing_primes(&e, LieGroup::E6, 12, 12)
            .unwrap()
            .is_empty());
        assert_eq!(
            distinguishing_primes(&e, LieGroup::E6, 13, 1).unwrap(),
            [p(13)].into()
        );
    }

    #[test]
    fn exclusions() {
        let e = Engine::new(CaseDatabase::embedded());
        assert!(matches!(
            equivalent_global(&e, LieGroup::E7, p(5), 1, 2),
            Err(Error::Unsupported { .. })
        ));
        assert!(matches!(
            equivalent_p_local(&e, LieGroup::G2, p(3), 1, 2),
            Err(Error::Unsupported { .. })
        ));
        assert!(
            equivalent_global(&e, LieGroup::G2, p(3), 3, 6)
                .unwrap()
                .equivalent
        );
        assert!(
            !equivalent_global(&e, LieGroup::G2, p(3), 3, 1)
                .unwrap()
                .equivalent
        );
    }
}
