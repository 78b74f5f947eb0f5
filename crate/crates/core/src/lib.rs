//! Spin block combinatorics for the double covers of the symmetric and
//! alternating groups: p-bar cores, Scopes involutions, the block-reduced
//! crystal graph, w-compatibility certificates, core reduction and the
//! affine Lie algebra dictionary.
//!
//! ```
//! use spinblock::abacus::{core_tuple, pbar_core};
//! use spinblock::donovan::{donovan_bound, reduce_core};
//! use spinblock::partitions::{Modulus, PStrictPartition};
//! use spinblock::scopes::apply_k;
//!
//! let p = Modulus::new(5)?;
//! let lambda = PStrictPartition::new(vec![12, 11, 7, 6, 4, 2, 1], p)?;
//! let (core, w) = pbar_core(&lambda);
//! assert_eq!((core.parts(), w), (&[12, 7, 6, 2, 1][..], 3));
//! let c = core_tuple(&core, p)?;
//! assert_eq!(apply_k(0, &lambda)?.parts(), &[12, 9, 7, 6, 4, 2]);
//! let trace = reduce_core(&"4:0,5:1".parse()?, 2);
//! assert_eq!(trace.end, c);
//! assert_eq!(donovan_bound(p, 2)?, 38);
//! # Ok::<(), spinblock::Error>(())
//! ```

pub mod abacus;
pub mod cli;
pub mod compat;
pub mod crystal;
pub mod donovan;
pub mod error;
pub mod lie;
pub mod partitions;
pub mod scopes;

pub use error::{Error, Result};
