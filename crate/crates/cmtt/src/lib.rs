#![allow(clippy::result_large_err)]

//! Surface language, elaborator and driver for the `cmtt` checker.

pub mod ast;
pub mod diag;
pub mod driver;
pub mod elab;
pub mod lexer;
pub mod parser;
pub mod printer;
pub mod readback;
