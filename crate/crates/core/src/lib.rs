//! Exact algebra for quadric threefolds through a rational normal quartic.
//!
//! The algebra is generic over a [`Coeff`] field. The aliases below fix the
//! arbitrary-precision rationals used everywhere else in the workspace.

pub mod error;
pub mod frac;
pub mod matrix;
pub mod parse;
pub mod pgl;
pub mod poly;
pub mod projgeom;
pub mod quadratic;
pub mod scalar;
pub mod vars;

pub use error::{AlgebraError, GeometryError};
pub use frac::{substitute_frac, RatExpr};
pub use matrix::{resultant, LinearSolution, PolyMatrix};
pub use parse::{parse_poly, ParseError};
pub use poly::{Monomial, MultiPoly};
pub use projgeom::{Hypersurface, RationalMap};
pub use quadratic::{quadratic_form, quadratic_matrix};
pub use scalar::Coeff;
pub use vars::{VarKind, VarTable};

/// Arbitrary-precision rational, always in lowest terms.
pub type Rat = num_rational::BigRational;

pub type Poly = MultiPoly<Rat>;
pub type Frac = RatExpr<Rat>;
pub type Matrix = PolyMatrix<Rat>;
pub type Map = RationalMap<Rat>;
pub type Surface = Hypersurface<Rat>;
pub type Group2 = pgl::GroupElem2<Rat>;
pub type Rep = pgl::LinearRep<Rat>;
