//! Quasi-cyclic and generalized quasi-cyclic algebraic-geometry codes from
//! curves `x^m = B(y)` over finite fields.
//!
//! The pipeline is: build a [`gf::FieldCtx`], a [`curve::KummerCurve`] and an
//! [`aut::Automorphism`] fixing the point at infinity; partition the affine
//! rational points into orbits; evaluate a monomial basis of `L(t P_inf)`
//! ([`rrspace`]) orbit by orbit to get a code whose generator matrix is
//! invariant under the blockwise cyclic shift ([`code`]). The [`census`]
//! module predicts orbit structures from closed formulas so computed
//! partitions can be checked against them.

pub mod aut;
pub mod catalog;
pub mod census;
pub mod code;
pub mod curve;
pub mod gf;
pub mod poly;
pub mod rrspace;

pub use aut::{Automorphism, Orbit, OrbitPartition};
pub use curve::{Family, KummerCurve, Point, RationalPoint, RationalPointSet};
pub use gf::{Fe, Field, FieldCtx};
