//! Exact polynomial kernel: arithmetic over the integers and rationals,
//! gcds, square-free decomposition, resultants, Sturm chains, real-root
//! isolation and exact sign determination at algebraic points.

pub mod bipoly;
pub mod poly;
pub mod ratfunc;
pub mod ring;
pub mod roots;
pub mod subres;
pub mod upoly;
pub mod zpoly;

use thiserror::Error;

pub use bipoly::{resultant, BiPoly, Var};
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use ring::{int, rat, sign_of, Rational};
pub use roots::{
    isolate_real_roots, isolate_real_roots_in, sign_at, simplest_between, sturm_count,
    AlgebraicReal, Bound, IsolatedRoot, Isolation, SignPoint, SturmChain,
};
pub use upoly::{rational_string, rational_to_f64, UPoly};
pub use zpoly::ZPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("invalid elimination variable `{0}`")]
    InvalidVariable(String),
    #[error("sign undecidable: interval point given without a defining polynomial")]
    UndecidableWithoutDefiningPoly,
    #[error("interval is not isolating: it contains {0} roots")]
    NotIsolating(usize),
}
