//! K-theory classes through their Chern characters.
//!
//! A class on a complex with cells in even degrees is recorded as the
//! coefficients of `ch` against the cohomology generators `u_{2m}`. Adams
//! operations act on the degree-`2m` part by `k^m`; class constructions are
//! data ([`ClassRecipe`]) so they can live in the case database.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{factorial, Prime, Rational};
use crate::error::{Error, Result};
use crate::lattice::PVector;

/// Chern-character coefficients keyed by even cohomological degree.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(
    try_from = "BTreeMap<String, Rational>",
    into = "BTreeMap<String, Rational>"
)]
pub struct ChernVector {
    coefficients: BTreeMap<u32, Rational>,
}

impl ChernVector {
    pub fn new(coefficients: BTreeMap<u32, Rational>) -> Result<Self> {
        if let Some(d) = coefficients.keys().find(|&&d| d == 0 || d % 2 == 1) {
            return Err(Error::MalformedRecipe(format!(
                "degree {d} is not a positive even integer"
            )));
        }
        Ok(ChernVector {
            coefficients: coefficients
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        })
    }

    pub fn zero() -> Self {
        ChernVector::default()
    }

    /// `c * u_degree`.
    pub fn monomial(degree: u32, c: Rational) -> Result<Self> {
        ChernVector::new(BTreeMap::from([(degree, c)]))
    }

    pub fn from_pairs<I, S>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, S)>,
        S: AsRef<str>,
    {
        let mut map = BTreeMap::new();
        for (d, s) in pairs {
            map.insert(d, s.as_ref().parse()?);
        }
        ChernVector::new(map)
    }

    /// Coefficient of `u_degree`; zero when absent.
    pub fn coefficient(&self, degree: u32) -> Rational {
        self.coefficients
            .get(&degree)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn degrees(&self) -> impl Iterator<Item = u32> + '_ {
        self.coefficients.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> ChernVector {
        ChernVector {
            coefficients: self
                .coefficients
                .iter()
                .map(|(&d, x)| (d, x * c))
                .filter(|(_, x)| !x.is_zero())
                .collect(),
        }
    }

    pub fn add(&self, other: &ChernVector) -> ChernVector {
        let mut out = self.coefficients.clone();
        for (&d, x) in &other.coefficients {
            let entry = out.entry(d).or_insert_with(Rational::zero);
            *entry = &*entry + x;
        }
        out.retain(|_, x| !x.is_zero());
        ChernVector { coefficients: out }
    }

    pub fn linear_combination<'a>(
        terms: impl IntoIterator<Item = (&'a Rational, &'a ChernVector)>,
    ) -> ChernVector {
        terms
            .into_iter()
            .fold(ChernVector::zero(), |acc, (c, x)| acc.add(&x.scale(c)))
    }
}

impl TryFrom<BTreeMap<u32, Rational>> for ChernVector {
    type Error = Error;
    fn try_from(map: BTreeMap<u32, Rational>) -> Result<Self> {
        ChernVector::new(map)
    }
}

impl TryFrom<BTreeMap<String, Rational>> for ChernVector {
    type Error = Error;
    fn try_from(map: BTreeMap<String, Rational>) -> Result<Self> {
        let parsed = map
            .into_iter()
            .map(|(k, v)| {
                k.trim()
                    .parse::<u32>()
                    .map(|d| (d, v))
                    .map_err(|_| Error::Parse {
                        input: k.clone(),
                        reason: "degree keys must be non-negative integers".into(),
                    })
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        ChernVector::new(parsed)
    }
}

impl From<ChernVector> for BTreeMap<String, Rational> {
    fn from(v: ChernVector) -> Self {
        v.coefficients
            .into_iter()
            .map(|(d, c)| (d.to_string(), c))
            .collect()
    }
}

impl fmt::Display for ChernVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (d, c)) in self.coefficients.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c}) u_{d}")?;
        }
        Ok(())
    }
}

/// The Adams operation `psi^k`: scales the degree-`2m` coefficient by `k^m`.
pub fn adams(x: &ChernVector, k: u32) -> ChernVector {
    ChernVector {
        coefficients: x
            .coefficients
            .iter()
            .map(|(&d, c)| {
                let factor = Rational::integer(num_traits::pow(
                    num_bigint::BigInt::from(k),
                    (d / 2) as usize,
                ));
                (d, c * &factor)
            })
            .filter(|(_, c)| !c.is_zero())
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearTerm {
    pub coeff: Rational,
    pub class: String,
}

/// One named construction in a [`ClassRecipe`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum RecipeStep {
    /// A class supplied by the environment under the same name.
    Base { name: String },
    Adams {
        name: String,
        source: String,
        k: u32,
    },
    Linear {
        name: String,
        terms: Vec<LinearTerm>,
    },
    /// The pinch onto the top cell composed with a generator: `ch = u_degree`.
    Pinch { name: String, degree: u32 },
}

impl RecipeStep {
    pub fn name(&self) -> &str {
        match self {
            RecipeStep::Base { name }
            | RecipeStep::Adams { name, .. }
            | RecipeStep::Linear { name, .. }
            | RecipeStep::Pinch { name, .. } => name,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ClassRecipe {
    pub steps: Vec<RecipeStep>,
}

impl ClassRecipe {
    pub fn new(steps: Vec<RecipeStep>) -> Self {
        ClassRecipe { steps }
    }

    /// Evaluates every step, returning all named classes.
    pub fn evaluate(
        &self,
        env: &BTreeMap<String, ChernVector>,
    ) -> Result<BTreeMap<String, ChernVector>> {
        let mut built: BTreeMap<String, ChernVector> = BTreeMap::new();
        let lookup = |built: &BTreeMap<String, ChernVector>, name: &str| {
            built.get(name).cloned().ok_or_else(|| {
                Error::MalformedRecipe(format!("`{name}` is used before it is defined"))
            })
        };
        for step in &self.steps {
            if built.contains_key(step.name()) {
                return Err(Error::MalformedRecipe(format!(
                    "`{}` is defined twice",
                    step.name()
                )));
            }
            let value = match step {
                RecipeStep::Base { name } => env
                    .get(name)
                    .cloned()
                    .ok_or_else(|| Error::MissingClass(name.clone()))?,
                RecipeStep::Adams { source, k, .. } => {
                    if *k == 0 {
                        return Err(Error::MalformedRecipe("Adams operation psi^0".into()));
                    }
                    adams(&lookup(&built, source)?, *k)
                }
                RecipeStep::Linear { terms, .. } => {
                    if terms.is_empty() {
                        return Err(Error::MalformedRecipe("empty linear combination".into()));
                    }
                    let mut acc = ChernVector::zero();
                    for t in terms {
                        acc = acc.add(&lookup(&built, &t.class)?.scale(&t.coeff));
                    }
                    acc
                }
                RecipeStep::Pinch { degree, .. } => {
                    ChernVector::monomial(*degree, Rational::one())?
                }
            };
            built.insert(step.name().to_string(), value);
        }
        Ok(built)
    }
}

/// The class produced by the last step of `recipe`.
pub fn build_class(
    recipe: &ClassRecipe,
    env: &BTreeMap<String, ChernVector>,
) -> Result<ChernVector> {
    let last = recipe
        .steps
        .last()
        .ok_or_else(|| Error::MalformedRecipe("empty recipe".into()))?;
    let mut built = recipe.evaluate(env)?;
    Ok(built.remove(last.name()).expect("last step was evaluated"))
}

/// `(n! ch_n(x), (n+p-1)! ch_{n+p-1}(x))` restricted to `target_degrees`.
pub fn phi_image(x: &ChernVector, n: u32, p: Prime, target_degrees: &[u32]) -> Result<PVector> {
    if target_degrees.is_empty() {
        return Err(Error::TargetDegrees("no target degrees".into()));
    }
    let allowed = [2 * n, 2 * n + 2 * (p.get() - 1)];
    let mut seen = BTreeSet::new();
    let mut entries = Vec::with_capacity(target_degrees.len());
    for &d in target_degrees {
        if !allowed.contains(&d) || !seen.insert(d) {
            return Err(Error::TargetDegrees(format!(
                "degree {d} is not one of {allowed:?} (or repeats)"
            )));
        }
        let m = d / 2;
        entries.push(Rational::integer(factorial(m)?) * x.coefficient(d));
    }
    PVector::new(p, entries)
}
