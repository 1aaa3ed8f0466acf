//! Equality proofs as explicit rewrite traces over combinatorial spaces,
//! and fundamental groups computed from them.
//!
//! The crate is organized around a small pipeline:
//!
//! * [`space`] / [`expr`] — space presentations and endpoint-typed path
//!   expressions with positioned rewrite steps ([`step`]);
//! * [`rewrite`] / [`confluence`] — trace-producing normalization, the
//!   rewrite-equality decision procedure, and the critical-pair audit;
//! * [`group`] — finitely presented groups read off a space along a spanning
//!   tree, with per-family word-problem solvers;
//! * [`free_product`] — words in free and amalgamated free products;
//! * [`pushout`] — pushout spaces with glue edges, their presentations, and
//!   the decode/encode maps between pushout loops and product words;
//! * [`catalog`] — ready-made spaces with their expected groups.

pub mod catalog;
pub mod confluence;
pub mod expr;
pub mod free_product;
pub mod group;
pub mod pushout;
pub mod rewrite;
pub mod rng;
pub mod space;
pub mod step;

pub use expr::{change_basepoint, compose, invert, refl_at, ComplexMap, PathError, PathExpr};
pub use rewrite::{measure, normalize, rw_eq_decide, Measure, NormalForm, RuleSet, RwEqOutcome};
pub use space::{EdgeDef, Orientation, SpaceError, SpacePresentation};
pub use step::{
    apply_step, replay_derivation, Derivation, Direction, PosMove, Position, RuleId, StepInstance,
};
