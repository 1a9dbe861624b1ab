//! Finite-field counting oracle.
//!
//! Counts isomorphism classes of quiver representations over prime fields by
//! Burnside orbit counting over products of general linear groups, then
//! interpolates the counts to exact polynomials in the field size and
//! extracts the indecomposable and absolutely-indecomposable count tables by
//! plethystic logarithms.

pub mod count;
pub mod fp;
pub mod gl;

pub use count::{
    a_table_from_json, h_poly, iso_class_count, kac_tables, KacEntry, KacTable, OracleCache,
};
pub use gl::{gl_classes, GLClass, MAX_GL_DIM};
