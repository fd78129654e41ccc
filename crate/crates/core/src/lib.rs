//! First Hochschild cohomology of finite-dimensional quiver algebras.
//!
//! [`formulas`] evaluates closed combinatorial formulas for `dim H¹(Λ, Λ)`
//! when `Λ` is a path algebra, a monomial or truncated quotient, or has a
//! pre-generated ideal. [`exactalg`] computes the same numbers by brute force
//! (derivations modulo inner derivations, or the bar complex) over `ℚ` or a
//! prime field, and is used to check every formula. [`simplicial`] covers
//! incidence algebras of posets and the simplicial cohomology of their order
//! complexes.
//!
//! ```
//! use hochschild::exactalg::{BimoduleRep, Oracle};
//! use hochschild::formulas::classify_and_compute;
//! use hochschild::presentations::{build_algebra, AlgebraPresentation};
//! use hochschild::quiver::Quiver;
//!
//! let q = Quiver::new(["x", "y"], [("a", "x", "y"), ("b", "x", "y")]).unwrap();
//! let p = AlgebraPresentation::path_algebra(q);
//! let oracle = Oracle::default();
//! let report = classify_and_compute(&p, &oracle).unwrap();
//! let algebra = build_algebra(&p).unwrap();
//! assert_eq!(report.dim_h1, 3);
//! assert_eq!(oracle.h1(&BimoduleRep::regular(&algebra)).unwrap(), 3);
//! ```

pub mod exactalg;
pub mod formulas;
pub mod presentations;
pub mod quiver;
pub mod simplicial;
