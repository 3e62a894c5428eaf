pub mod constructions;
pub mod error;
pub mod field;
pub mod graded;
pub mod homology;
pub mod io;
pub mod presentation;
pub mod slice;
pub mod streaming;
pub mod torsion;

pub use error::{Error, Result};
pub use field::{monomial_gcd, Field, Monomial, Scalar};
pub use graded::{GradedBasis, GradedMatrix, HomogeneousElement};
pub use homology::{persistent_homology, FilteredComplex, Simplex};
pub use presentation::{Barcode, Interval, Minimized, Presentation, PresentationMorphism};
pub use streaming::{BarcodeDelta, StreamState};
