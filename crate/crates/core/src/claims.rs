//! Published values that the computations are checked against.
//!
//! Everything here is transcribed data with no computation beyond parsing.
//! [`crate::verify`] recomputes each item independently.

use crate::arith::{parse_expr, Prime, Rational};
use crate::chern::ChernVector;
use crate::registry::LieGroup;
use LieGroup::{E6, E7, E8, F4, G2};

/// `gamma(G, p)` for `p` in 5..=31, with 37 standing in for every `p >= 37`.
/// `E7` and `E8` have no entry at 5.
#[rustfmt::skip]
pub const FINAL_TABLE: &[(LieGroup, u32, u64)] = &[
    (F4, 5, 25), (F4, 7, 1), (F4, 11, 1), (F4, 13, 13), (F4, 17, 1), (F4, 19, 1), (F4, 23, 1), (F4, 29, 1), (F4, 31, 1), (F4, 37, 1),
    (E6, 5, 25), (E6, 7, 7), (E6, 11, 1), (E6, 13, 13), (E6, 17, 1), (E6, 19, 1), (E6, 23, 1), (E6, 29, 1), (E6, 31, 1), (E6, 37, 1),
    (E7, 7, 7), (E7, 11, 11), (E7, 13, 1), (E7, 17, 1), (E7, 19, 19), (E7, 23, 1), (E7, 29, 1), (E7, 31, 1), (E7, 37, 1),
    (E8, 7, 49), (E8, 11, 121), (E8, 13, 13), (E8, 17, 1), (E8, 19, 19), (E8, 23, 1), (E8, 29, 1), (E8, 31, 31), (E8, 37, 1),
];

/// `gamma(G)` as prime powers.
#[rustfmt::skip]
pub const GLOBAL_CONSTANTS: &[(LieGroup, &[(u32, u32)])] = &[
    (G2, &[(3, 1), (7, 1)]),
    (F4, &[(5, 2), (13, 1)]),
    (E6, &[(5, 2), (7, 1), (13, 1)]),
    (E7, &[(7, 1), (11, 1), (19, 1)]),
    (E8, &[(7, 2), (11, 2), (13, 1), (19, 1), (31, 1)]),
];

/// Quasi-`p`-regular, non-`p`-regular pairs.
#[rustfmt::skip]
pub const QUASI_REGULAR_PAIRS: &[(LieGroup, u32)] = &[
    (F4, 5), (F4, 7), (F4, 11),
    (E6, 5), (E6, 7), (E6, 11),
    (E7, 11), (E7, 13), (E7, 17),
    (E8, 11), (E8, 13), (E8, 17), (E8, 19), (E8, 23), (E8, 29),
];

/// The triples among [`QUASI_REGULAR_PAIRS`] where `<epsilon, lambda_i>` may be non-trivial.
#[rustfmt::skip]
pub const POSSIBLY_NONTRIVIAL: &[(LieGroup, u32, u32)] = &[
    (F4, 5, 3), (F4, 7, 5),
    (E6, 5, 3), (E6, 7, 2), (E6, 7, 5),
    (E7, 11, 3), (E7, 11, 7), (E7, 13, 5),
    (E8, 11, 9), (E8, 13, 5), (E8, 13, 11), (E8, 19, 5), (E8, 19, 11),
];

/// Individually stated `gamma_i(G, p)`.
#[rustfmt::skip]
pub const GAMMA_I: &[(LieGroup, u32, u32, u64)] = &[
    (E6, 5, 3, 25), (E8, 11, 9, 121),
    (E6, 7, 5, 1), (E7, 11, 7, 1), (E7, 13, 5, 1), (E8, 13, 11, 1), (E8, 19, 11, 1),
    (E8, 13, 5, 13), (E8, 19, 5, 19),
    (E6, 7, 2, 7), (E7, 11, 3, 11),
    (F4, 5, 3, 25), (F4, 7, 5, 1),
    (E7, 7, 3, 1), (E7, 7, 5, 1), (E7, 7, 1, 7),
    (E8, 7, 1, 1), (E8, 7, 5, 49),
];

/// Generators of `Im Phi o delta_*` and the image of the lift, as stated.
pub struct StatedCase {
    pub id: &'static str,
    pub order: u64,
    pub generators: &'static [&'static [&'static str]],
    pub lift: Option<&'static [&'static str]>,
}

#[rustfmt::skip]
pub const STATED_CASES: &[StatedCase] = &[
    StatedCase { id: "E6_5_3", order: 25, generators: &[&["3*5", "2^-3*5*13"], &["0", "5^2"]], lift: Some(&["2^-3*3^2", "-2^-6*3^-1*71"]) },
    StatedCase { id: "E8_11_9", order: 121, generators: &[&["3*11*17*41", "5^4*11*13*31*61"], &["0", "11^2"]], lift: Some(&["3*7*17*89", "2^-2*3*5*2207*17977"]) },
    StatedCase { id: "E8_13_5", order: 13, generators: &[&["13"]], lift: Some(&["2^-2*3*5*2207*17977"]) },
    StatedCase { id: "E8_19_5", order: 19, generators: &[&["19"]], lift: Some(&["-2*3^2*5*11*2861"]) },
    StatedCase { id: "E8_7_5", order: 49, generators: &[&["-2^2*3*7*19*199", "5^3*7*13*31*61"], &["0", "7^2"]], lift: Some(&["-2*3^2*5*11*2861", "2^-2*3*5*2207*17977"]) },
    StatedCase { id: "E7_7_5", order: 1, generators: &[&["1"]], lift: None },
    StatedCase { id: "E6_7_5", order: 1, generators: &[&["1"]], lift: None },
    StatedCase { id: "E7_11_7", order: 1, generators: &[&["1"]], lift: None },
    StatedCase { id: "E7_13_5", order: 1, generators: &[&["1"]], lift: None },
    StatedCase { id: "E8_13_11", order: 1, generators: &[&["1"]], lift: None },
    StatedCase { id: "E8_19_11", order: 1, generators: &[&["1"]], lift: None },
];

/// `a_1, ..., a_4` in the Chern characters of the `E8` classes at 7.
pub const E8_A: [&str; 4] = [
    "2*3^2*7",
    "2^2*5*7*13",
    "2*3*7*11*19*199",
    "2*5^3*7*11*13*61",
];

/// A displayed term `multiplier * a_k / denominator * u_degree`.
pub struct Term {
    pub degree: u32,
    pub multiplier: &'static str,
    pub a: Option<usize>,
    pub denominator: &'static str,
}

const fn t(degree: u32, multiplier: &'static str, a: usize, denominator: &'static str) -> Term {
    Term {
        degree,
        multiplier,
        a: Some(a),
        denominator,
    }
}

#[rustfmt::skip]
pub const E8_XI: [(&str, &[Term]); 4] = [
    ("xi1", &[t(26, "1", 1, "11!"), t(38, "1", 2, "17!"), t(50, "-1", 3, "5*23!"), t(62, "1", 4, "29!")]),
    ("xi2", &[t(38, "7", 2, "17!"), t(50, "-7*13", 3, "23!"), t(62, "3*7*19*73", 4, "29!")]),
    ("xi3", &[t(50, "-7^2", 3, "23!"), t(62, "3*5*7^2*19*73", 4, "29!")]),
    ("xi4", &[Term { degree: 62, multiplier: "1", a: None, denominator: "1" }]),
];

pub const E6_XI: &[(u32, &str)] = &[(18, "5/8!"), (26, "5/(32*11!)")];
pub const E6_ETA: &[(u32, &str)] = &[(26, "1")];
pub const E7_XI: &[(u32, &str)] = &[(14, "-1/5!"), (26, "-9/(2*11!)"), (38, "-1229/(60*17!)")];

fn q(s: &str) -> Rational {
    parse_expr(s).expect("transcribed expression parses")
}

pub fn prime(n: u32) -> Prime {
    Prime::new(u64::from(n)).expect("transcribed prime")
}

pub fn rationals(v: &[&str]) -> Vec<Rational> {
    v.iter().map(|s| q(s)).collect()
}

pub fn chern(pairs: &[(u32, &str)]) -> ChernVector {
    ChernVector::from_pairs(pairs.iter().map(|&(d, s)| (d, s)))
        .expect("transcribed Chern character")
}

pub fn e8_chern(terms: &[Term]) -> ChernVector {
    let mut out = ChernVector::zero();
    for term in terms {
        let a = term.a.map_or_else(Rational::one, |k| q(E8_A[k - 1]));
        let c = (q(term.multiplier) * a)
            .checked_div(&q(term.denominator))
            .expect("non-zero denominator");
        out = out.add(&ChernVector::monomial(term.degree, c).expect("even degree"));
    }
    out
}

pub fn stated_case(id: &str) -> Option<&'static StatedCase> {
    STATED_CASES.iter().find(|c| c.id == id)
}
