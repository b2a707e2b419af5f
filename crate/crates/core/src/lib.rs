//! Exact computation of twisted homology dimensions for surfaces and circle
//! complexes over rational-function fields, together with combinatorial
//! manipulation of pair-of-pants decompositions.
//!
//! The crate is organized bottom-up:
//!
//! * [`ring`] — sparse multivariate Laurent polynomials over the rationals and
//!   their fraction field, with exact arithmetic and point evaluation;
//! * [`linalg`] — exact (fraction-free) and randomized rank of matrices over
//!   that field;
//! * [`words`] — free-group words, surface presentations, twisting
//!   homomorphisms onto free abelian groups, and Fox derivatives;
//! * [`homology`] — twisted chain complexes, Betti dimensions, loop cycles,
//!   reduction checks, and closed-form Betti vectors of vortex moduli spaces;
//! * [`pants`] — pair-of-pants decompositions as decorated trivalent
//!   multigraphs: fashionability, T-shirt flips, Pochhammer vectors, sewing;
//! * [`io`] — the JSON file schema and DOT export used by the CLI.

pub mod homology;
pub mod io;
pub mod linalg;
pub mod pants;
pub mod ring;
pub mod words;

pub use homology::{BettiVector, CycleVector, TwistedComplex};
pub use linalg::{Matrix, RankBackend, Ranker};
pub use pants::PantsGraph;
pub use ring::{LaurentPoly, RationalFunction};
pub use words::{Presentation, Twist, Word};
