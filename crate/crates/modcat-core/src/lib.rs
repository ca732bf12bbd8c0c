//! Exact-arithmetic engine for classifying module categories, semisimple
//! algebras, and bimodules over pointed fusion categories `Vec_G^ω` and
//! group-theoretical fusion categories `C(G, ω, K, α)`.
//!
//! Everything is computed over cyclotomic fields with exact rational
//! coefficients; no floating point is used anywhere. Groups are small
//! (order ≤ 64) and are handled by exhaustive algorithms driven by their
//! Cayley tables.
//!
//! Module map:
//! - [`group`]: finite groups, subgroups, conjugacy, double cosets.
//! - [`snf`]: Smith normal form over ℤ and linear solving mod m.
//! - [`cochain`]: normalized cochains valued in roots of unity,
//!   differentials, coboundary testing, H² enumeration, builtin cocycles.
//! - [`cyclo`]: exact cyclotomic field arithmetic and linear algebra.
//! - [`projrep`]: projective representations — regular classes, Schur
//!   counts, and explicit irreducible models.
//! - [`modcat`]: classification of module categories M(L, ψ) and rank
//!   tables of bimodule categories.
//! - [`gt`]: group-theoretical categories — fiber functors, FP-dimensions,
//!   k-commutativity and path-algebra verdicts.
//! - [`oracle`]: concrete G-graded linear-algebra model (the brute-force
//!   oracle): twisted group algebras, bimodules, Hom spaces, tensor
//!   products over algebras, invertibility and conjugation orbits.
//! - [`h8`]: the 8-dimensional Kac–Paljutkin Hopf algebra case study.

pub mod cochain;
pub mod cyclo;
pub mod group;
pub mod gt;
pub mod h8;
pub mod modcat;
pub mod oracle;
pub mod projrep;
pub mod snf;
