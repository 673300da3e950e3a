//! Static data on the exceptional Lie groups: types, torsion-free primes,
//! mod-p decompositions and the global constants `gamma(G)`.
//!
//! Decompositions at quasi-regular primes (and at `p = 5, 7` for `E7`, `E8`)
//! are stored as a table with explicit factor indices; at primes `p > n_l`
//! every factor is a sphere and the decomposition is synthesized from the
//! type. Both routes are checked against the congruence rule
//! `n = i + 1 (mod p - 1)` by [`ModPDecomposition::check_invariants`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::Prime;
use crate::error::{Error, Result};
use crate::homotopy::HSpaceFactor;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum LieGroup {
    G2,
    F4,
    E6,
    E7,
    E8,
}

impl LieGroup {
    pub const ALL: [LieGroup; 5] = [
        LieGroup::G2,
        LieGroup::F4,
        LieGroup::E6,
        LieGroup::E7,
        LieGroup::E8,
    ];

    /// Exponents `(n_1, ..., n_l)` with `G` rationally a product of `S^{2n_i - 1}`.
    pub fn group_type(self) -> &'static [u32] {
        match self {
            LieGroup::G2 => &[2, 6],
            LieGroup::F4 => &[2, 6, 8, 12],
            LieGroup::E6 => &[2, 5, 6, 8, 9, 12],
            LieGroup::E7 => &[2, 6, 8, 10, 12, 14, 18],
            LieGroup::E8 => &[2, 8, 12, 14, 18, 20, 24, 30],
        }
    }

    /// Largest type exponent `n_l`.
    pub fn top_exponent(self) -> u32 {
        *self.group_type().last().expect("nonempty type")
    }

    /// Smallest prime at which the integral homology has no torsion.
    pub fn first_torsion_free_prime(self) -> u32 {
        match self {
            LieGroup::G2 => 3,
            LieGroup::F4 | LieGroup::E6 | LieGroup::E7 => 5,
            LieGroup::E8 => 7,
        }
    }

    pub fn is_torsion_free(self, p: Prime) -> bool {
        p.get() >= self.first_torsion_free_prime()
    }

    /// The integer `gamma(G)`.
    pub fn gamma_constant(self) -> BigInt {
        let factors: &[(u32, u32)] = match self {
            LieGroup::G2 => &[(3, 1), (7, 1)],
            LieGroup::F4 => &[(5, 2), (13, 1)],
            LieGroup::E6 => &[(5, 2), (7, 1), (13, 1)],
            LieGroup::E7 => &[(7, 1), (11, 1), (19, 1)],
            LieGroup::E8 => &[(7, 2), (11, 2), (13, 1), (19, 1), (31, 1)],
        };
        factors
            .iter()
            .map(|&(q, e)| num_traits::pow(BigInt::from(q), e as usize))
            .product()
    }
}

impl fmt::Display for LieGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LieGroup::G2 => "G2",
            LieGroup::F4 => "F4",
            LieGroup::E6 => "E6",
            LieGroup::E7 => "E7",
            LieGroup::E8 => "E8",
        };
        f.write_str(s)
    }
}

impl FromStr for LieGroup {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "G2" => Ok(LieGroup::G2),
            "F4" => Ok(LieGroup::F4),
            "E6" => Ok(LieGroup::E6),
            "E7" => Ok(LieGroup::E7),
            "E8" => Ok(LieGroup::E8),
            _ => Err(Error::Parse {
                input: s.to_string(),
                reason: "expected one of G2, F4, E6, E7, E8".into(),
            }),
        }
    }
}

pub fn group_type(g: LieGroup) -> &'static [u32] {
    g.group_type()
}

pub fn torsion_free_primes(g: LieGroup, p: Prime) -> bool {
    g.is_torsion_free(p)
}

pub fn gamma_constant(g: LieGroup) -> BigInt {
    g.gamma_constant()
}

type Row = (LieGroup, u32, &'static [(u32, &'static [u32], Option<u32>)]);

#[rustfmt::skip]
static TABLE: &[Row] = &[
    (LieGroup::F4, 5, &[(1, &[3, 11], None), (3, &[15, 23], None)]),
    (LieGroup::F4, 7, &[(1, &[3, 15], None), (5, &[11, 23], None)]),
    (LieGroup::F4, 11, &[(1, &[3, 23], None), (5, &[11], None), (7, &[15], None)]),
    // E6 = F4 x B(9,17) at 5, F4 x S^9 x S^17 at 7 and 11
    (LieGroup::E6, 5, &[(1, &[3, 11], None), (3, &[15, 23], None), (4, &[9, 17], None)]),
    (LieGroup::E6, 7, &[(1, &[3, 15], None), (5, &[11, 23], None), (4, &[9], None), (2, &[17], None)]),
    (LieGroup::E6, 11, &[(1, &[3, 23], None), (5, &[11], None), (7, &[15], None), (4, &[9], None), (8, &[17], None)]),
    (LieGroup::E7, 5, &[(1, &[3, 11, 19, 27, 35], None), (3, &[15, 23], None)]),
    (LieGroup::E7, 7, &[(1, &[3, 15, 27], Some(18)), (5, &[11, 23, 35], Some(18)), (3, &[19], None)]),
    (LieGroup::E7, 11, &[(1, &[3, 23], None), (7, &[15, 35], None), (5, &[11], None), (9, &[19], None), (3, &[27], None)]),
    (LieGroup::E7, 13, &[(1, &[3, 27], None), (5, &[11, 35], None), (7, &[15], None), (9, &[19], None), (11, &[23], None)]),
    (LieGroup::E7, 17, &[(1, &[3, 35], None), (5, &[11], None), (7, &[15], None), (9, &[19], None), (11, &[23], None), (13, &[27], None)]),
    (LieGroup::E8, 7, &[(1, &[3, 15, 27, 39], None), (5, &[23, 35, 47, 59], None)]),
    (LieGroup::E8, 11, &[(1, &[3, 23], None), (7, &[15, 35], None), (3, &[27, 47], None), (9, &[39, 59], None)]),
    (LieGroup::E8, 13, &[(1, &[3, 27], None), (7, &[15, 39], None), (11, &[23, 47], None), (5, &[35, 59], None)]),
    (LieGroup::E8, 17, &[(1, &[3, 35], None), (7, &[15, 47], None), (13, &[27, 59], None), (11, &[23], None), (3, &[39], None)]),
    (LieGroup::E8, 19, &[(1, &[3, 39], None), (11, &[23, 59], None), (7, &[15], None), (13, &[27], None), (17, &[35], None), (5, &[47], None)]),
    (LieGroup::E8, 23, &[(1, &[3, 47], None), (7, &[15, 59], None), (11, &[23], None), (13, &[27], None), (17, &[35], None), (19, &[39], None)]),
    (LieGroup::E8, 29, &[(1, &[3, 59], None), (7, &[15], None), (11, &[23], None), (13, &[27], None), (17, &[35], None), (19, &[39], None), (23, &[47], None)]),
];

/// `G ~ B_1 x ... x B_{p-1}` at a prime, with trivial factors omitted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModPDecomposition {
    pub group: LieGroup,
    pub prime: Prime,
    pub factors: BTreeMap<u32, HSpaceFactor>,
    /// Whether the factors were read from the table or synthesized.
    pub tabulated: bool,
}

impl ModPDecomposition {
    pub fn factor(&self, index: u32) -> Option<&HSpaceFactor> {
        self.factors.get(&index)
    }

    pub fn is_p_regular(&self) -> bool {
        self.factors.values().all(HSpaceFactor::is_sphere)
    }

    pub fn is_quasi_p_regular(&self) -> bool {
        self.factors
            .values()
            .all(|f| f.is_sphere() || f.is_quasi_regular_shape(self.prime))
    }

    /// Checks the degree multiset against the type and the congruence
    /// `n = i + 1 (mod p - 1)` for every degree `2n - 1` in factor `i`.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let m = self.prime.get() - 1;
        let mut degrees: Vec<u32> = Vec::new();
        for (&i, f) in &self.factors {
            if i == 0 || i > m {
                return Err(format!("factor index {i} outside 1..={m}"));
            }
            for &d in f.degrees() {
                let n = d.div_ceil(2);
                if (n + m - 1) % m != i % m {
                    return Err(format!("S^{d} (n = {n}) does not belong to index {i}"));
                }
                degrees.push(d);
            }
        }
        degrees.sort_unstable();
        let expected: Vec<u32> = self.group.group_type().iter().map(|n| 2 * n - 1).collect();
        if degrees != expected {
            return Err(format!(
                "degrees {degrees:?} do not match the type {expected:?}"
            ));
        }
        Ok(())
    }
}

impl fmt::Display for ModPDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(i, b)| format!("B_{i} = {b}"))
            .collect();
        write!(
            f,
            "{} at p = {}: {}",
            self.group,
            self.prime,
            parts.join(", ")
        )
    }
}

/// The mod-p decomposition of `G`.
pub fn decomposition(g: LieGroup, p: Prime) -> Result<ModPDecomposition> {
    if !g.is_torsion_free(p) {
        return Err(Error::Unsupported {
            group: g,
            prime: p.get(),
            reason: "homology has p-torsion".into(),
        });
    }
    if let Some((_, _, factors)) = TABLE.iter().find(|(tg, tp, _)| *tg == g && *tp == p.get()) {
        let factors = factors
            .iter()
            .map(|&(i, ds, cover)| Ok((i, HSpaceFactor::new(ds.to_vec(), cover)?)))
            .collect::<Result<_>>()?;
        return Ok(ModPDecomposition {
            group: g,
            prime: p,
            factors,
            tabulated: true,
        });
    }
    if p.get() > g.top_exponent() {
        let m = p.get() - 1;
        let factors = g
            .group_type()
            .iter()
            .map(|&n| {
                let i = (n - 1) % m;
                let i = if i == 0 { m } else { i };
                Ok((i, HSpaceFactor::sphere(2 * n - 1)?))
            })
            .collect::<Result<_>>()?;
        return Ok(ModPDecomposition {
            group: g,
            prime: p,
            factors,
            tabulated: false,
        });
    }
    Err(Error::Unsupported {
        group: g,
        prime: p.get(),
        reason: "no tabulated mod-p decomposition".into(),
    })
}

pub fn is_p_regular(g: LieGroup, p: Prime) -> Result<bool> {
    Ok(decomposition(g, p)?.is_p_regular())
}

pub fn is_quasi_p_regular(g: LieGroup, p: Prime) -> Result<bool> {
    Ok(decomposition(g, p)?.is_quasi_p_regular())
}

/// Cell dimensions of `S^3 ^ A_i`: each generating degree of `B_i` plus 3.
pub fn a_cells(g: LieGroup, p: Prime, index: u32) -> Result<Vec<u32>> {
    let dec = decomposition(g, p)?;
    let factor = dec.factor(index).ok_or(Error::TrivialFactor {
        group: g,
        prime: p.get(),
        index,
    })?;
    Ok(factor.degrees().iter().map(|d| d + 3).collect())
}

/// Every (group, prime) pair whose decomposition is stored in the table.
pub fn tabulated_pairs() -> impl Iterator<Item = (LieGroup, Prime)> {
    TABLE
        .iter()
        .map(|(g, p, _)| (*g, Prime::new(u64::from(*p)).expect("table primes")))
}
