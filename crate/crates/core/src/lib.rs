//! Explicit triangulations of bounded Seifert fibered spaces, with every
//! construction checked by combinatorial manifold tests and integer homology.

pub mod builders;
pub mod cli;
pub mod farey;
pub mod homology;
pub mod seifert;
pub mod surface;
pub mod tricomplex;
mod unionfind;
