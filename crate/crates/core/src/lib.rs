//! Orders of Samelson products in exceptional Lie groups and the `p`-local
//! classification of gauge groups over `S^4`.
//!
//! The layers, bottom up:
//!
//! - [`arith`]: exact rationals, `p`-adic valuations, factorials, an expression parser.
//! - [`lattice`]: submodules of `Z_(p)^n`, membership and coset orders.
//! - [`chern`]: Chern characters, Adams operations, the map `Phi`.
//! - [`homotopy`]: `p`-local homotopy groups of spheres and rank-2 H-spaces.
//! - [`registry`]: types and mod-`p` decompositions of the exceptional groups.
//! - [`cases`]: the case database.
//! - [`engine`]: `gamma_i(G, p)`, `gamma(G, p)` and `gamma(G)`.
//! - [`classify`]: equivalence of gauge groups `G_k`, `G_l`.
//! - [`claims`], [`verify`]: published values and their recomputation.
//!
//! ```
//! use gauge_gamma::{CaseDatabase, Engine, LieGroup, Prime};
//!
//! let engine = Engine::new(CaseDatabase::embedded());
//! let g = engine.gamma_p(LieGroup::E8, Prime::new(7)?)?;
//! assert_eq!(g.value.to_string(), "7^2");
//! # Ok::<(), gauge_gamma::Error>(())
//! ```

pub mod arith;
pub mod cases;
pub mod chern;
pub mod claims;
pub mod classify;
pub mod engine;
pub mod error;
pub mod homotopy;
pub mod lattice;
pub mod registry;
pub mod verify;

pub use arith::{PPower, Prime, Rational};
pub use cases::{CaseDatabase, PhiCase};
pub use classify::{ClassifierContext, EquivalenceVerdict};
pub use engine::{Engine, GammaResult, Method, Possibility};
pub use error::{Error, Result};
pub use lattice::{CosetOrder, Lattice, PVector};
pub use registry::LieGroup;
pub use verify::{verify_all, VerifyReport};
