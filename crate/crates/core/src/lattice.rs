//! Submodules of `Z_(p)^n` and orders of elements in their quotients.
//!
//! `Z_(p)` is a discrete valuation ring, so Smith reduction needs no Bezout
//! steps: pivot on an entry of least valuation, rescale its row so the pivot
//! is exactly `p^e`, and clear the pivot column from the remaining rows. The
//! resulting rows are triangular with respect to the pivot columns, which is
//! all that membership and coset-order queries need.

use serde::{Deserialize, Serialize};

use crate::arith::{valuation, PPower, Prime, Rational, Valuation};
use crate::error::{Error, Result};

/// A vector with `p`-integral entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PVector {
    prime: Prime,
    entries: Vec<Rational>,
}

impl PVector {
    pub fn new(prime: Prime, entries: Vec<Rational>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        if let Some(bad) = entries.iter().find(|x| !x.is_p_integral(prime)) {
            return Err(Error::NotIntegral {
                value: bad.to_string(),
                prime: prime.get(),
            });
        }
        Ok(PVector { prime, entries })
    }

    pub fn zero(prime: Prime, len: usize) -> Self {
        PVector {
            prime,
            entries: vec![Rational::zero(); len.max(1)],
        }
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rational::is_zero)
    }

    /// `c * self`; `c` must keep the entries integral.
    pub fn scale(&self, c: &Rational) -> Result<PVector> {
        PVector::new(self.prime, self.entries.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, other: &PVector) -> Result<PVector> {
        check_len(self.len(), other.len())?;
        Ok(PVector {
            prime: self.prime,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &PVector) -> Result<PVector> {
        check_len(self.len(), other.len())?;
        Ok(PVector {
            prime: self.prime,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Order of an element in a quotient `Z_(p)^n / L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CosetOrder {
    Finite(PPower),
    /// Some multiple is never in `L`: the element leaves the rational span.
    Infinite,
}

impl CosetOrder {
    pub fn finite(self) -> Option<PPower> {
        match self {
            CosetOrder::Finite(o) => Some(o),
            CosetOrder::Infinite => None,
        }
    }
}

impl std::fmt::Display for CosetOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CosetOrder::Finite(o) => write!(f, "{o}"),
            CosetOrder::Infinite => f.write_str("infinite"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct PivotRow {
    column: usize,
    exponent: u32,
    entries: Vec<Rational>,
}

/// A finitely generated `Z_(p)`-submodule of `Z_(p)^n` with its reduced basis cached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    prime: Prime,
    ambient_rank: usize,
    generators: Vec<PVector>,
    basis: Vec<PivotRow>,
}

impl Lattice {
    /// Reduces `gens` to an echelon basis with pivots `p^{e_1}, ..., p^{e_m}`,
    /// `e_1 <= ... <= e_m`.
    pub fn reduce(gens: Vec<PVector>, prime: Prime, ambient_rank: usize) -> Result<Self> {
        for g in &gens {
            if g.prime != prime {
                return Err(Error::PrimeMismatch(prime.get(), g.prime.get()));
            }
            check_len(ambient_rank, g.len())?;
        }

        let mut rows: Vec<Vec<Rational>> = gens
            .iter()
            .map(|g| g.entries.clone())
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        let mut used = vec![false; ambient_rank];
        let mut basis = Vec::new();

        loop {
            // least valuation; ties go to the lowest (row, column)
            let mut best: Option<(i64, usize, usize)> = None;
            for (r, row) in rows.iter().enumerate() {
                for (c, x) in row.iter().enumerate() {
                    if used[c] {
                        continue;
                    }
                    if let Valuation::Finite(v) = valuation(x, prime) {
                        if best.is_none_or(|(bv, _, _)| v < bv) {
                            best = Some((v, r, c));
                        }
                    }
                }
            }
            let Some((exponent, r, c)) = best else { break };

            let mut pivot = rows.remove(r);
            let unit = pivot[c].unit_part(prime);
            let inv = unit.recip()?;
            for x in pivot.iter_mut() {
                *x = &*x * &inv;
            }
            let pivot_value = pivot[c].clone();
            for row in rows.iter_mut() {
                if row[c].is_zero() {
                    continue;
                }
                let factor = row[c].checked_div(&pivot_value)?;
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = &*x - &(&factor * y);
                }
            }
            rows.retain(|row| row.iter().any(|x| !x.is_zero()));
            used[c] = true;
            basis.push(PivotRow {
                column: c,
                exponent: exponent as u32,
                entries: pivot,
            });
        }

        Ok(Lattice {
            prime,
            ambient_rank,
            generators: gens,
            basis,
        })
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn generators(&self) -> &[PVector] {
        &self.generators
    }

    /// Elementary divisor exponents in divisor-chain order.
    pub fn pivot_valuations(&self) -> Vec<u32> {
        self.basis.iter().map(|r| r.exponent).collect()
    }

    pub fn reduced_basis(&self) -> Vec<PVector> {
        self.basis
            .iter()
            .map(|r| PVector {
                prime: self.prime,
                entries: r.entries.clone(),
            })
            .collect()
    }

    /// Rational coefficients of `v` against the reduced basis, or `None` when
    /// `v` is not in the rational span.
    pub fn coordinates(&self, v: &PVector) -> Result<Option<Vec<Rational>>> {
        check_len(self.ambient_rank, v.len())?;
        let mut residual = v.entries.clone();
        let mut coords = Vec::with_capacity(self.basis.len());
        for row in &self.basis {
            let x = residual[row.column].checked_div(&row.entries[row.column])?;
            if !x.is_zero() {
                for (r, b) in residual.iter_mut().zip(&row.entries) {
                    *r = &*r - &(&x * b);
                }
            }
            coords.push(x);
        }
        Ok(residual.iter().all(Rational::is_zero).then_some(coords))
    }

    pub fn contains(&self, v: &PVector) -> Result<bool> {
        Ok(match self.coordinates(v)? {
            Some(coords) => coords.iter().all(|x| x.is_p_integral(self.prime)),
            None => false,
        })
    }

    /// Least `p^e` with `p^e * v` in the lattice.
    pub fn coset_order(&self, v: &PVector) -> Result<CosetOrder> {
        let Some(coords) = self.coordinates(v)? else {
            return Ok(CosetOrder::Infinite);
        };
        let worst = coords
            .iter()
            .filter_map(|x| valuation(x, self.prime).finite())
            .min()
            .unwrap_or(0);
        let exponent = (-worst).max(0) as u32;
        Ok(CosetOrder::Finite(PPower::new(self.prime, exponent)))
    }

    /// Exponent of the quotient module: the largest coset order of any element.
    pub fn quotient_exponent(&self) -> CosetOrder {
        if self.rank() < self.ambient_rank {
            return CosetOrder::Infinite;
        }
        let e = self.basis.iter().map(|r| r.exponent).max().unwrap_or(0);
        CosetOrder::Finite(PPower::new(self.prime, e))
    }

    fn contains_all(&self, other: &Lattice) -> Result<bool> {
        for g in &other.generators {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn reduce(gens: Vec<PVector>, prime: Prime, rank: usize) -> Result<Lattice> {
    Lattice::reduce(gens, prime, rank)
}

pub fn contains(lattice: &Lattice, v: &PVector) -> Result<bool> {
    lattice.contains(v)
}

pub fn coset_order(lattice: &Lattice, v: &PVector) -> Result<CosetOrder> {
    lattice.coset_order(v)
}

/// Equality of spans, decided by mutual containment of generators.
pub fn lattice_equal(a: &Lattice, b: &Lattice) -> Result<bool> {
    if a.prime != b.prime {
        return Err(Error::PrimeMismatch(a.prime.get(), b.prime.get()));
    }
    check_len(a.ambient_rank, b.ambient_rank)?;
    Ok(a.contains_all(b)? && b.contains_all(a)?)
}
