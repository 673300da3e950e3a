//! Orders of the Samelson products `<epsilon, lambda_i>` and their maxima.
//!
//! `gamma_i(G, p)` is resolved by the first strategy that applies:
//!
//! 1. every homotopy group the product could land in vanishes;
//! 2. `G` is `p`-regular, where non-triviality is the arithmetic condition
//!    `n_i + n_j = n_k + p - 1`;
//! 3. a [`PhiCase`] gives the product as a coset in `Z_(p)^m / Im Phi o delta_*`;
//! 4. an attested value from the case database.
//!
//! A mechanical answer is always compared with an attested value for the
//! same triple when one exists, and every answer is compared with the
//! homotopy-group bound from [`gamma_upper_bound`].

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{PPower, Prime, Rational};
use crate::cases::{CaseDatabase, ImageSpec, PhiCase};
use crate::chern::phi_image;
use crate::error::{Error, Result};
use crate::homotopy::{factor_pi, pi_exponent_bound, GroupDescriptor};
use crate::lattice::{CosetOrder, Lattice, PVector};
use crate::registry::{a_cells, decomposition, LieGroup, ModPDecomposition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Method {
    Vanishing,
    PRegular,
    PhiLattice,
    Attested,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Vanishing => "VANISHING",
            Method::PRegular => "P_REGULAR",
            Method::PhiLattice => "PHI_LATTICE",
            Method::Attested => "ATTESTED",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Possibility {
    No,
    Possible,
    Unknown,
}

/// Whether `<epsilon, lambda>` is non-trivial in a `p`-regular `G`, where
/// `epsilon`, `lambda` sit on the spheres of type `n_i`, `n_j`.
pub fn p_regular_nontrivial(g: LieGroup, p: Prime, n_i: u32, n_j: u32) -> Result<bool> {
    if !decomposition(g, p)?.is_p_regular() {
        return Err(Error::Unsupported {
            group: g,
            prime: p.get(),
            reason: "not p-regular".into(),
        });
    }
    let lhs = n_i + n_j;
    Ok(g.group_type().iter().any(|&n_k| n_k + p.get() - 1 == lhs))
}

fn in_scope(g: LieGroup, p: Prime) -> Result<()> {
    if g == LieGroup::E7 && p.get() == 5 {
        return Err(Error::Unsupported {
            group: g,
            prime: 5,
            reason: "the Chern-character method does not apply".into(),
        });
    }
    if !g.is_torsion_free(p) {
        return Err(Error::Unsupported {
            group: g,
            prime: p.get(),
            reason: "homology has p-torsion".into(),
        });
    }
    Ok(())
}

fn cell_descriptors(dec: &ModPDecomposition, index: u32) -> Vec<(u32, Vec<GroupDescriptor>)> {
    let Some(factor) = dec.factor(index) else {
        return Vec::new();
    };
    factor
        .degrees()
        .iter()
        .map(|d| {
            let dim = d + 3;
            let groups = dec
                .factors
                .values()
                .map(|b| factor_pi(b, dim, dec.prime))
                .collect();
            (dim, groups)
        })
        .collect()
}

/// Whether `pi_d(B_j)` is non-zero for some cell `d` of `S^3 ^ A_i` and factor `B_j`.
pub fn possibly_nontrivial(g: LieGroup, p: Prime, index: u32) -> Result<Possibility> {
    let dec = decomposition(g, p)?;
    let all: Vec<GroupDescriptor> = cell_descriptors(&dec, index)
        .into_iter()
        .flat_map(|(_, gs)| gs)
        .collect();
    Ok(if all.iter().any(|d| !d.is_zero() && !d.is_unknown()) {
        Possibility::Possible
    } else if all.iter().any(GroupDescriptor::is_unknown) {
        Possibility::Unknown
    } else {
        Possibility::No
    })
}

/// A bound on `gamma_i(G, p)` from the homotopy of the factors: the product
/// over the cells `d` of `S^3 ^ A_i` of the largest exponent of `pi_d(B_j)`.
/// `None` when some group is unknown or has a free part.
pub fn gamma_upper_bound(g: LieGroup, p: Prime, index: u32) -> Result<Option<PPower>> {
    let dec = decomposition(g, p)?;
    let mut exponent = 0;
    for (dim, _) in cell_descriptors(&dec, index) {
        let mut cell = 0;
        for b in dec.factors.values() {
            match pi_exponent_bound(b, dim, p) {
                Some(e) => cell = cell.max(e.exponent),
                None => return Ok(None),
            }
        }
        exponent += cell;
    }
    Ok(Some(PPower::new(p, exponent)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub case_id: String,
    /// `(j, r)` of the factor `B_j = B(2j+1, ..., 2j+1+2r(p-1))` when it exists.
    pub j: Option<u32>,
    pub r: Option<u32>,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiEvaluation {
    pub lattice: Lattice,
    pub order: PPower,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaResult {
    pub group: LieGroup,
    pub prime: Prime,
    /// `None` for `gamma(G, p)` itself.
    pub index: Option<u32>,
    pub value: PPower,
    pub method: Method,
    pub citation: String,
    pub upper_bound: Option<PPower>,
    /// Factor indices attaining the maximum.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<GammaResult>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalResult {
    pub group: LieGroup,
    /// Decimal string, to survive JSON consumers without big integers.
    pub value: String,
    pub factors: Vec<GammaResult>,
}

impl GlobalResult {
    pub fn value(&self) -> BigInt {
        self.value.parse().expect("decimal")
    }
}

#[derive(Debug, Clone, Default)]
pub struct Engine {
    db: CaseDatabase,
}

impl Engine {
    pub fn new(db: CaseDatabase) -> Self {
        Engine { db }
    }

    pub fn database(&self) -> &CaseDatabase {
        &self.db
    }

    /// Checks the bookkeeping a case needs before its lattice means anything.
    pub fn validate_phi_case(&self, case: &PhiCase) -> ValidationReport {
        let p = case.prime;
        let m = p.get() - 1;
        let mut checks = Vec::new();
        let mut push =
            |name: &str, ok: bool, detail: String| checks.push(Check::new(name, ok, detail));

        push(
            "citation",
            !case.citation.trim().is_empty(),
            "citation present".into(),
        );

        let dec = decomposition(case.group, p);
        let cells = a_cells(case.group, p, case.index);
        match &cells {
            Ok(cells) => push(
                "cells",
                *cells == case.a_cell_degrees,
                format!(
                    "S^3 ^ A_{} has cells {cells:?}, case lists {:?}",
                    case.index, case.a_cell_degrees
                ),
            ),
            Err(e) => push("cells", false, e.to_string()),
        }

        let j = (case.index + 1) % m + 1;
        let (mut jr, mut r) = (None, None);
        match dec.as_ref().ok().and_then(|d| d.factor(j)) {
            Some(bj) => {
                let rank = bj.rank() as u32;
                let expected: Vec<u32> = (0..rank).map(|t| 2 * j + 1 + 2 * t * m).collect();
                let shape = bj.degrees() == expected.as_slice();
                push(
                    "hkmo_factor",
                    shape,
                    format!("B_{j} = {bj}, expected degrees {expected:?}"),
                );
                if shape {
                    jr = Some(j);
                    r = Some(rank - 1);
                }
            }
            None => push(
                "hkmo_factor",
                false,
                format!("B_{j} is trivial or unavailable"),
            ),
        }
        push(
            "hkmo_surjective",
            true,
            "B_j -> C_j surjective in cohomology: attested by citation".into(),
        );
        if let (Some(j), Some(r)) = (jr, r) {
            let n = j + (r + 1) * m;
            push(
                "hkmo_n",
                n == case.n,
                format!("n = j + (r+1)(p-1) = {n}, case has {}", case.n),
            );
            let top = case.a_cell_degrees.iter().max().copied().unwrap_or(0);
            let dim_a = top.saturating_sub(3);
            let bound = 2 * j + 2 * (r + 2) * m - 3;
            push(
                "hkmo_dimension",
                top >= 3 && dim_a <= bound,
                format!("dim A = {dim_a} <= 2j-3+2(r+2)(p-1) = {bound}"),
            );
        }

        let allowed = [2 * case.n, 2 * case.n + 2 * m];
        let mut seen = std::collections::BTreeSet::new();
        let targets_ok = !case.target_degrees.is_empty()
            && case
                .target_degrees
                .iter()
                .all(|d| allowed.contains(d) && case.a_cell_degrees.contains(d) && seen.insert(*d));
        push(
            "targets",
            targets_ok,
            format!(
                "targets {:?} within {allowed:?} and the cells",
                case.target_degrees
            ),
        );

        let width = case.target_degrees.len();
        let integral = |v: &[Rational]| v.len() == width && v.iter().all(|x| x.is_p_integral(p));
        if let Some(lift) = &case.lift {
            push(
                "lift",
                integral(lift),
                format!("lift has {} p-integral entries", lift.len()),
            );
        }
        match &case.image {
            ImageSpec::Explicit { generators } => push(
                "image",
                !generators.is_empty() && generators.iter().all(|g| integral(g)),
                format!("{} explicit generators of width {width}", generators.len()),
            ),
            ImageSpec::Recipes { bases, .. } => {
                let supported = bases
                    .values()
                    .all(|x| x.degrees().all(|d| case.a_cell_degrees.contains(&d)));
                push(
                    "bases",
                    supported,
                    "Chern characters supported on the cells".into(),
                );
                let built = self.recipe_vectors(case);
                push(
                    "image",
                    built.is_ok(),
                    match built {
                        Ok(v) => format!("{} classes with p-integral images", v.len()),
                        Err(e) => e.to_string(),
                    },
                );
            }
        }

        ValidationReport {
            case_id: case.id.clone(),
            j: jr,
            r,
            checks,
        }
    }

    fn recipe_vectors(&self, case: &PhiCase) -> Result<Vec<PVector>> {
        let ImageSpec::Recipes {
            bases,
            recipe,
            image_classes,
        } = &case.image
        else {
            unreachable!("only called on recipe cases")
        };
        if image_classes.is_empty() {
            return Err(Error::MalformedRecipe("no image classes".into()));
        }
        let built = recipe.evaluate(bases)?;
        image_classes
            .iter()
            .map(|name| {
                let x = built
                    .get(name)
                    .ok_or_else(|| Error::MissingClass(name.clone()))?;
                phi_image(x, case.n, case.prime, &case.target_degrees)
            })
            .collect()
    }

    /// The lattice `Im Phi o delta_*` of a case, without validation.
    pub fn image_lattice(&self, case: &PhiCase) -> Result<Lattice> {
        let width = case.target_degrees.len();
        let gens = match &case.image {
            ImageSpec::Explicit { generators } => generators
                .iter()
                .map(|g| {
                    if g.len() != width {
                        return Err(Error::DimensionMismatch {
                            expected: width,
                            found: g.len(),
                        });
                    }
                    PVector::new(case.prime, g.clone())
                })
                .collect::<Result<Vec<_>>>()?,
            ImageSpec::Recipes { .. } => self.recipe_vectors(case)?,
        };
        Lattice::reduce(gens, case.prime, width)
    }

    /// Validates the case, builds its lattice and returns the order of the lift.
    pub fn evaluate_phi_case(&self, case: &PhiCase) -> Result<PhiEvaluation> {
        let report = self.validate_phi_case(case);
        if !report.passed() {
            let failures: Vec<String> = report
                .failures()
                .iter()
                .map(|c| format!("{} ({})", c.name, c.detail))
                .collect();
            return Err(Error::InvalidCase {
                id: case.id.clone(),
                failures: failures.join("; "),
            });
        }
        let lattice = self.image_lattice(case)?;
        let order = match &case.lift {
            Some(lift) => lattice.coset_order(&PVector::new(case.prime, lift.clone())?)?,
            None => lattice.quotient_exponent(),
        };
        match order {
            CosetOrder::Finite(order) => Ok(PhiEvaluation { lattice, order }),
            CosetOrder::Infinite => Err(Error::LiftOutsideSpan(case.id.clone())),
        }
    }

    pub fn gamma_i(&self, g: LieGroup, p: Prime, index: u32) -> Result<GammaResult> {
        in_scope(g, p)?;
        if g == LieGroup::G2 {
            return Err(Error::Unsupported {
                group: g,
                prime: p.get(),
                reason: "G2 is handled through its attested constant".into(),
            });
        }
        let dec = decomposition(g, p)?;
        let factor = dec.factor(index).ok_or(Error::TrivialFactor {
            group: g,
            prime: p.get(),
            index,
        })?;
        let upper_bound = gamma_upper_bound(g, p, index)?;
        let attested = self.db.attested(g, p, Some(index));

        let (value, method, citation) = if possibly_nontrivial(g, p, index)? == Possibility::No {
            (
                PPower::one(p),
                Method::Vanishing,
                "every homotopy group the product can land in vanishes".to_string(),
            )
        } else if dec.is_p_regular() {
            let n_j = factor.base_n();
            if p_regular_nontrivial(g, p, 2, n_j)? {
                (PPower::new(p, 1), Method::PRegular, "p = n_l+1".to_string())
            } else {
                (
                    PPower::one(p),
                    Method::PRegular,
                    format!("no n_k with 2 + {n_j} = n_k + p - 1"),
                )
            }
        } else if let Some(case) = self.db.phi_case(g, p, index) {
            let eval = self.evaluate_phi_case(case)?;
            (eval.order, Method::PhiLattice, case.citation.clone())
        } else if let Some(fact) = attested {
            (fact.order()?, Method::Attested, fact.citation.clone())
        } else {
            return Err(Error::NoStrategy {
                group: g,
                prime: p.get(),
                index,
            });
        };

        if method != Method::Attested {
            if let Some(fact) = attested {
                let expected = fact.order()?;
                if expected != value {
                    return Err(Error::AttestedMismatch {
                        group: g,
                        prime: p.get(),
                        index,
                        computed: value.to_string(),
                        attested: expected.to_string(),
                    });
                }
            }
        }
        if let Some(bound) = upper_bound {
            if value.exponent > bound.exponent {
                return Err(Error::BoundViolated {
                    group: g,
                    prime: p.get(),
                    index,
                    value: value.to_string(),
                    bound: bound.to_string(),
                });
            }
        }
        Ok(GammaResult {
            group: g,
            prime: p,
            index: Some(index),
            value,
            method,
            citation,
            upper_bound,
            witnesses: Vec::new(),
            components: Vec::new(),
        })
    }

    /// `gamma(G, p)`, the maximum of `gamma_i(G, p)` over the factors.
    pub fn gamma_p(&self, g: LieGroup, p: Prime) -> Result<GammaResult> {
        in_scope(g, p)?;
        if g == LieGroup::G2 {
            let (value, citation) = match self.db.attested(g, p, None) {
                Some(fact) => (fact.order()?, fact.citation.clone()),
                None => (PPower::one(p), "p does not divide gamma(G2)".to_string()),
            };
            return Ok(GammaResult {
                group: g,
                prime: p,
                index: None,
                value,
                method: Method::Attested,
                citation,
                upper_bound: None,
                witnesses: Vec::new(),
                components: Vec::new(),
            });
        }
        let dec = decomposition(g, p)?;
        let components = dec
            .factors
            .keys()
            .map(|&i| self.gamma_i(g, p, i))
            .collect::<Result<Vec<_>>>()?;
        let top = components
            .iter()
            .map(|c| c.value.exponent)
            .max()
            .expect("a decomposition has factors");
        let witnesses: Vec<u32> = components
            .iter()
            .filter(|c| c.value.exponent == top)
            .filter_map(|c| c.index)
            .collect();
        let lead = components
            .iter()
            .find(|c| c.value.exponent == top)
            .expect("maximum is attained");
        let upper_bound = components
            .iter()
            .map(|c| c.upper_bound.map(|b| b.exponent))
            .collect::<Option<Vec<_>>>()
            .map(|es| PPower::new(p, es.into_iter().max().unwrap_or(0)));
        Ok(GammaResult {
            group: g,
            prime: p,
            index: None,
            value: PPower::new(p, top),
            method: lead.method,
            citation: lead.citation.clone(),
            upper_bound,
            witnesses,
            components,
        })
    }

    /// Primes at which `gamma(G, p)` can be non-trivial and is computable:
    /// torsion-free `p <= n_l + 1`, minus `(E7, 5)`.
    pub fn relevant_primes(g: LieGroup) -> Vec<Prime> {
        crate::arith::primes_between(
            u64::from(g.first_torsion_free_prime()),
            u64::from(g.top_exponent()) + 1,
        )
        .into_iter()
        .filter(|p| !(g == LieGroup::E7 && p.get() == 5))
        .collect()
    }

    /// `gamma(G)` as the product of `gamma(G, p)`, checked against the known constant.
    pub fn gamma_global(&self, g: LieGroup) -> Result<GlobalResult> {
        let factors = Self::relevant_primes(g)
            .into_iter()
            .map(|p| self.gamma_p(g, p))
            .collect::<Result<Vec<_>>>()?;
        let value: BigInt = factors.iter().map(|f| f.value.value()).product();
        let expected = g.gamma_constant();
        if value != expected {
            return Err(Error::GlobalMismatch {
                group: g,
                computed: value.to_string(),
                expected: expected.to_string(),
            });
        }
        Ok(GlobalResult {
            group: g,
            value: value.to_string(),
            factors,
        })
    }

    /// `gamma_i(G, p)` for every factor, keyed by index.
    pub fn gamma_table(&self, g: LieGroup, p: Prime) -> Result<BTreeMap<u32, GammaResult>> {
        Ok(self
            .gamma_p(g, p)?
            .components
            .into_iter()
            .filter_map(|c| c.index.map(|i| (i, c)))
            .collect())
    }
}
