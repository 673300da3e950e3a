//! p-local homotopy groups of the factors appearing in mod-p decompositions.
//!
//! Only closed-form ranges are covered: Toda's table for odd spheres, the
//! rank-2 spaces `B(2n-1, 2n+2p-3)`, and the stable range of `SU(N)` for
//! factors that split off a special unitary group. Anything else comes back
//! as [`GroupDescriptor::Unknown`] or [`GroupDescriptor::OutOfRange`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{PPower, Prime};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupDescriptor {
    Zero,
    Free,
    /// `Z/p^exponent`, exponent 1 or 2.
    Cyclic {
        prime: Prime,
        exponent: u32,
    },
    Unknown,
    OutOfRange,
}

impl GroupDescriptor {
    fn cyclic(prime: Prime, exponent: u32) -> Self {
        GroupDescriptor::Cyclic { prime, exponent }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, GroupDescriptor::Zero)
    }

    /// Downstream logic treats a table miss like an unknown group.
    pub fn is_unknown(&self) -> bool {
        matches!(self, GroupDescriptor::Unknown | GroupDescriptor::OutOfRange)
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescriptor::Zero => f.write_str("0"),
            GroupDescriptor::Free => f.write_str("Z"),
            GroupDescriptor::Cyclic { prime, exponent: 1 } => write!(f, "Z/{prime}"),
            GroupDescriptor::Cyclic { prime, exponent } => write!(f, "Z/{prime}^{exponent}"),
            GroupDescriptor::Unknown => f.write_str("unknown"),
            GroupDescriptor::OutOfRange => f.write_str("out of range"),
        }
    }
}

/// An indecomposable factor of a mod-p decomposition, given by its
/// generating degrees.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HSpaceFactor {
    degrees: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    su_cover: Option<u32>,
}

impl HSpaceFactor {
    pub fn new(degrees: Vec<u32>, su_cover: Option<u32>) -> Result<Self> {
        let ascending = degrees.windows(2).all(|w| w[0] < w[1]);
        if degrees.is_empty() || !ascending || degrees.iter().any(|d| d % 2 == 0) {
            return Err(Error::Parse {
                input: format!("{degrees:?}"),
                reason: "factor degrees must be odd and strictly ascending".into(),
            });
        }
        Ok(HSpaceFactor { degrees, su_cover })
    }

    pub fn sphere(dim: u32) -> Result<Self> {
        HSpaceFactor::new(vec![dim], None)
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn su_cover(&self) -> Option<u32> {
        self.su_cover
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_sphere(&self) -> bool {
        self.rank() == 1
    }

    pub fn bottom(&self) -> u32 {
        self.degrees[0]
    }

    pub fn top(&self) -> u32 {
        *self.degrees.last().expect("nonempty")
    }

    /// True for `B(2n-1, 2n+2p-3)`.
    pub fn is_quasi_regular_shape(&self, p: Prime) -> bool {
        self.rank() == 2 && self.degrees[1] - self.degrees[0] == 2 * (p.get() - 1)
    }

    /// The `n` in `S^{2n-1}` or `B(2n-1, ...)`.
    pub fn base_n(&self) -> u32 {
        self.bottom().div_ceil(2)
    }
}

impl fmt::Display for HSpaceFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_sphere() {
            write!(f, "S^{}", self.bottom())?;
        } else {
            let ds: Vec<String> = self.degrees.iter().map(u32::to_string).collect();
            write!(f, "B({})", ds.join(","))?;
        }
        if let Some(n) = self.su_cover {
            write!(f, " [SU({n})]")?;
        }
        Ok(())
    }
}

fn stable_limit(p: Prime) -> i64 {
    let p = i64::from(p.get());
    2 * p * (p - 1) - 3
}

/// Is `k = 2i(p-1) - offset` for some `i` in `lo..=hi`?
fn hits(k: i64, p: Prime, offset: i64, lo: i64, hi: i64) -> bool {
    let step = 2 * (i64::from(p.get()) - 1);
    let shifted = k + offset;
    shifted % step == 0 && (lo..=hi).contains(&(shifted / step))
}

/// `pi_{2n-1+k}(S^{2n-1})` localized at `p`.
pub fn sphere_pi(n: u32, k: u32, p: Prime) -> GroupDescriptor {
    if n < 2 {
        return GroupDescriptor::Unknown;
    }
    let (k, n, top) = (i64::from(k), i64::from(n), i64::from(p.get()) - 1);
    if k == 0 {
        GroupDescriptor::Free
    } else if k > stable_limit(p) {
        GroupDescriptor::OutOfRange
    } else if hits(k, p, 1, 1, top) || hits(k, p, 2, n, top) {
        GroupDescriptor::cyclic(p, 1)
    } else {
        GroupDescriptor::Zero
    }
}

/// `pi_{2n-1+k}(B(2n-1, 2n+2p-3))` localized at `p`.
pub fn bspace_pi(factor: &HSpaceFactor, k: u32, p: Prime) -> Result<GroupDescriptor> {
    if !factor.is_quasi_regular_shape(p) {
        return Err(Error::WrongFactorShape {
            degrees: factor.degrees().to_vec(),
            prime: p.get(),
        });
    }
    let n = i64::from(factor.base_n());
    let (k, pp, top) = (i64::from(k), i64::from(p.get()), i64::from(p.get()) - 1);
    if k == 0 {
        return Ok(GroupDescriptor::Free);
    }
    if k > stable_limit(p) {
        return Ok(GroupDescriptor::OutOfRange);
    }
    if k == 2 * pp - 2 {
        return Ok(GroupDescriptor::Free);
    }
    let low = factor.bottom() == 3;
    Ok(if hits(k, p, 1, 2, top) {
        GroupDescriptor::cyclic(p, if low { 1 } else { 2 })
    } else if !low && hits(k, p, 2, n, top) {
        GroupDescriptor::cyclic(p, 1)
    } else {
        GroupDescriptor::Zero
    })
}

/// `pi_m` of a mod-p factor of `SU(N)` inside the stable range `m <= 2N-1`.
pub fn su_stable_pi(m: u32, big_n: u32, _p: Prime) -> GroupDescriptor {
    if m > 2 * big_n - 1 {
        GroupDescriptor::Unknown
    } else if m.is_multiple_of(2) || m < 3 {
        GroupDescriptor::Zero
    } else {
        GroupDescriptor::Free
    }
}

/// `pi_dim` of a factor, dispatched on its shape.
pub fn factor_pi(factor: &HSpaceFactor, dim: u32, p: Prime) -> GroupDescriptor {
    if dim < factor.bottom() {
        return GroupDescriptor::Zero;
    }
    let k = dim - factor.bottom();
    if factor.is_sphere() {
        return sphere_pi(factor.base_n(), k, p);
    }
    if factor.is_quasi_regular_shape(p) {
        return bspace_pi(factor, k, p).expect("shape checked");
    }
    match factor.su_cover() {
        Some(big_n) if factor.rank() >= 3 && dim.is_multiple_of(2) => su_stable_pi(dim, big_n, p),
        _ => GroupDescriptor::Unknown,
    }
}

/// The power of `p` killing `pi_dim(factor)`; `None` when the group is
/// unknown or has a free part.
pub fn pi_exponent_bound(factor: &HSpaceFactor, dim: u32, p: Prime) -> Option<PPower> {
    match factor_pi(factor, dim, p) {
        GroupDescriptor::Zero => Some(PPower::one(p)),
        GroupDescriptor::Cyclic { prime, exponent } => Some(PPower::new(prime, exponent)),
        _ => None,
    }
}
