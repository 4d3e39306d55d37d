//! Exact-arithmetic workbench for pseudo-tensor categories: diagram
//! categories, their Karoubi envelopes and tensor-ideal quotients, finite
//! faithfulness certificates, and characteristic-p SL₂ tilting quotients.

pub mod category;
pub mod certify;
pub mod diagrams;
pub mod error;
pub mod homspace;
pub mod ideals;
pub mod linalg;
pub mod scalars;
pub mod sl2;

pub use category::{Category, KObject, Morphism};
pub use diagrams::{Caps, FlavorKind, Word};
pub use error::{Error, Result};
pub use scalars::{field_make, DynField, ExtensionField, Field, FieldSpec, PrimeField, Rationals, Scalar};

pub type QCategory = Category<Rationals>;
pub type FpCategory = Category<PrimeField>;
pub type DynCategory = Category<DynField>;
