//! A workbench for checking cyclic and inductive arithmetic sequent proofs
//! and for translating the former into the latter.
//!
//! The crate is organised around three verifying kernels and the passes
//! between them:
//!
//! - [`ha_kernel`]: finite proof trees with induction axioms, plus the
//!   admissible-rule macros and the lemma library used by the translation.
//! - [`cha_kernel`]: cyclic pre-proofs, the induction-order soundness
//!   check, bounded evaluation, and the embedding of inductive proofs.
//! - [`aha_kernel`]: stack-labelled finite derivations, the intermediate
//!   form between cyclic and inductive proofs.
//! - [`cyclic_structure`], [`normalizer`], [`stacker`], [`finitizer`]:
//!   the shape analyses and the proof-to-proof passes.
//! - [`cli`]: file formats and the pipeline driver.

pub mod aha_kernel;
pub mod cha_kernel;
pub mod cli;
pub mod cyclic_structure;
pub mod finitizer;
pub mod ha_kernel;
pub mod normalizer;
pub mod sexp;
pub mod stacker;
pub mod synth;
pub mod syntax;
