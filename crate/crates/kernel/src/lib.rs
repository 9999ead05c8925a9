//! Trusted kernel for cubical multimodal type theory.

pub mod conv;
pub mod domain;
pub mod eval;
pub mod golden;
pub mod interval;
pub mod kan;
pub mod mode_theory;
pub mod quote;
pub mod rules;
pub mod syntax;
pub mod typecheck;
