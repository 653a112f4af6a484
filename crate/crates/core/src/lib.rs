//! Exact computation with limit r-spin structures on stable curves.
//!
//! The library has four computational layers:
//!
//! - [`scalar`], [`linalg`], [`artin`], [`parse`]: exact arithmetic in
//!   Artin local rings `k[t_1..t_m]/I` with `I` a monomial ideal, over the
//!   rationals or a prime field, including unit inversion, r-th root
//!   lifting, and associate solving.
//! - [`nodal`], [`local`]: the local model at a node — the algebra
//!   `R[x,y]/(xy - pi)`, the torsion-free module `E(p,q)`, spin maps, their
//!   twists, cokernel lengths, sigma deviations, Faltings' isomorphism
//!   criterion, and local automorphism groups.
//! - [`graph`]: dual-graph combinatorics — stable graphs, spin type
//!   enumeration, degree bookkeeping, automorphism orders, root counts, and
//!   deformation-ring presentations.
//! - [`degeneration`]: exceptional-chain bookkeeping for one-parameter
//!   degenerations and assembly of the limit spin type.
//!
//! [`json`] and [`cli`] expose everything through serialized schemas and
//! the `spin` binary. All arithmetic is exact; no floating point anywhere.

pub mod artin;
pub mod cli;
pub mod degeneration;
pub mod error;
pub mod graph;
pub mod json;
pub mod linalg;
pub mod local;
pub mod nodal;
pub mod parse;
pub mod scalar;
