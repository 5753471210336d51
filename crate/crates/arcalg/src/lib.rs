//! Generalized Khovanov arc algebras of type D.
//!
//! The crate is organised bottom-up:
//!
//! - [`weights`]: diagrammatic weights, blocks, Bruhat order.
//! - [`diagrams`]: decorated cup diagrams, stacked circle diagrams,
//!   orientations, degrees and signs.
//! - [`algebra`]: the graded algebra with its surgery multiplication,
//!   computed twice (algebraic and diagrammatic) so each checks the other.
//! - [`cellstruct`]: decomposition and Cartan matrices, cellularity.
//! - [`quiver`]: lambda-pairs, the Ext quiver, diamonds and the explicit
//!   isomorphism onto Braden's presentation.
//! - [`verify`]: property suites shared by the CLI and the test targets.
//!
//! ```
//! use arcalg::prelude::*;
//!
//! let block = Block::principal(4, Parity::Even);
//! let c = cartan_matrix(&block);
//! assert_eq!(c.get(5, 5).to_string(), "1+2q^2+q^4");
//! ```

pub mod algebra;
pub mod cache;
pub mod cellstruct;
pub mod diagrams;
pub mod error;
pub mod poly;
pub mod quiver;
pub mod verify;
pub mod weights;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::algebra::{
        basis, multiply, multiply_reference, multiply_stacked, star, Algebra, BasisVector, Element,
    };
    pub use crate::cellstruct::{cartan_matrix, decomposition_matrix, graded_dimension};
    pub use crate::diagrams::{cup_diagram, weight_of, Arc, CupDiagram};
    pub use crate::poly::{PolyMatrix, QPoly};
    pub use crate::quiver::{lambda_pairs, quiver, LambdaPair};
    pub use crate::weights::{bruhat_leq, Block, Parity, Symbol, Weight};
}
