//! Exact arithmetic for differential algebra in characteristic `p`:
//! truncated Hurwitz series, differential polynomials, finite-dimensional
//! differential algebras with their ideal theory, spectra, the Taylor
//! homomorphism and small-scale zero-set geometry.

pub mod bounds;
pub mod diffpoly;
pub mod error;
pub mod field;
pub mod findim;
pub mod fixtures;
pub mod formats;
pub mod geometry;
pub mod hurwitz;
pub mod linalg;
pub mod parse;
pub mod report;
pub mod spectra;
pub mod taylor;

pub use bounds::Bounds;
pub use diffpoly::{DerivativeVariable, DiffMonomial, DiffPolynomial};
pub use error::{Error, Result};
pub use field::{binomial_mod_p, multiindex_binomial, FieldElement, PrimeField};
pub use findim::{FinDimDiffAlgebra, IdealClass, QuotientRing, ValidationReport};
pub use geometry::{BoundedIdeal, HurwitzPoint, KilledVariables, RegularMap, SolutionSet, System};
pub use hurwitz::{Agreement, MultiIndex, TruncatedHurwitzSeries};
pub use linalg::{Subspace, Vector};
pub use report::{Report, ReportLine};
pub use spectra::{IdealLattice, LatticeKind};
pub use taylor::{RingMapToField, TaylorTable};
