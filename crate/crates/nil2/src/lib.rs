//! Exact toolkit for finite-dimensional nilpotent class-2 Lie algebras over
//! the rationals.
//!
//! A presentation is a pair of spaces `V (+) W` with the bracket carried by
//! skew-symmetric matrices on `V` ([`algebra`]). On top of that sit the
//! central double extension with its isomorphism lift ([`extension`]),
//! decomposability certificates over pencils of forms ([`decomp`]), the
//! class-2 Campbell-Hausdorff group on the same carrier ([`group`]), an
//! exhaustive finite-field oracle for desk-scale cross-checks ([`ff`]) and a
//! JSON document format ([`doc`]). All arithmetic is exact rational
//! arithmetic ([`rat`], [`mat`]); there is no tolerance anywhere.
//!
//! Everything is a pure function over immutable values and safe to call
//! concurrently; randomized checks take explicit seeds ([`sample`]).
//!
//! ```
//! use nil2::algebra::{is_isomorphism, AlgebraPresentation, HomPair};
//! use nil2::extension::{extend, lift_isomorphism};
//! use nil2::mat::RatMatrix;
//! use nil2::rat::rat_int;
//!
//! // Rescale the Heisenberg presentation, lift the isomorphism to the
//! // central double extensions, and quotient one extension back down.
//! let p = AlgebraPresentation::heisenberg();
//! let f = RatMatrix::identity(2).scale(&rat_int(2));
//! let psi = RatMatrix::from_int_rows(&[&[4]]);
//! let q = p.pushforward(&f, &psi).unwrap();
//!
//! let h = HomPair { f, psi };
//! let lifted = lift_isomorphism(&p, &q, &h).unwrap();
//! let (ep, layout) = extend(&p);
//! let (eq, _) = extend(&q);
//! assert!(is_isomorphism(&ep, &eq, &lifted));
//!
//! let u_basis: Vec<Vec<nil2::Rat>> = layout
//!     .u_indices
//!     .iter()
//!     .map(|&i| {
//!         let mut v = vec![rat_int(0); ep.n()];
//!         v[i] = rat_int(1);
//!         v
//!     })
//!     .collect();
//! let t = vec![rat_int(1), rat_int(0)];
//! let back = ep.quotient_by_graded_ideal(&u_basis, &[t]).unwrap();
//! assert!(back.same_presentation(&p));
//! ```

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod decomp;
pub mod doc;
pub mod extension;
pub mod ff;
pub mod group;
pub mod mat;
pub mod rat;
pub mod sample;

pub use algebra::{AlgebraPresentation, Element, HomPair};
pub use mat::RatMatrix;
pub use rat::Rat;
