//! Exact computation of Koszul cohomology, pole order spectral sequence
//! pages, Steenbrink and pole order spectra, and singular-point invariants
//! of projective hypersurfaces whose only singularities are ordinary double
//! points.
//!
//! All arithmetic is exact: rational coefficients throughout, with an
//! optional certified multi-modular fast path for rank computations. Every
//! reported quantity is an integer, so results are reproducible bit for bit.
//!
//! Module map:
//! - [`linalg`]: sparse fraction-free elimination, rank / kernel / solve,
//!   reduced-echelon subspace bases, certified multi-modular ranks.
//! - [`poly`]: graded polynomial ring plumbing (monomial bases, partials,
//!   products, dehomogenized evaluation).
//! - [`koszul`]: graded slices of the Koszul complex, the cohomology
//!   dimensions, the page-one and page-two differentials.
//! - [`singular`]: singular point certification, evaluation (Taylor) maps,
//!   defects, symbolic and ordinary ideal power slices, graded quotient
//!   dimensions of the two conjectural descriptions.
//! - [`spectra`]: gamma coefficients, spectra as integer-valued functions
//!   with denominator `d`, closed-form and page-derived spectra.
//! - [`suite`]: the full analysis pipeline and the identity check suite.

pub mod koszul;
pub mod linalg;
pub mod poly;
pub mod singular;
pub mod spectra;
pub mod suite;

pub use linalg::{ArithMode, ExactMatrix, LinalgError, Rat, SubspaceBasis};
pub use poly::{HomPoly, MonomialBasis, PolyError};
pub use singular::{OdpCertificate, PointIdeal, ProjPoint, SingularError, WotzlawVariant};
pub use spectra::Spectrum;
pub use suite::{Analysis, AnalysisError, CheckSelection, CheckStatus, IdentityReport};
