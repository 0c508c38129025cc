//! Exact symbolic engine for invariant Hermitian geometry on complex
//! nilmanifolds.
//!
//! A nilmanifold is described by structure equations `dω^j = …` on a (1,0)
//! coframe ([`structure`]); forms live in the exterior algebra on
//! `ω^j, ω^{j̄}` with coefficients in polynomials over ℚ(i)
//! ([`exterior`], [`scalars`]). Invariant Hermitian metrics and the
//! balanced, SKT, astheno-Kähler and k-th Gauduchon conditions are in
//! [`hermitian`]; [`families`] builds the Heisenberg-type and
//! `X_{A,B,C}` examples. Every computation is exact.
//!
//! [`dsl`] reads and prints the `.nil` input format, [`cli`] drives the
//! `nilherm` binary, and [`oracle`] is a slow independent reimplementation
//! used to cross-check the engine.

pub mod cli;
pub mod dsl;
pub mod exterior;
pub mod families;
pub mod hermitian;
pub mod oracle;
pub mod scalars;
pub mod structure;
