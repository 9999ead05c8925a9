//! Independent oracles, random generators and acceptance checks for the
//! cmtt kernel. Not part of the trusted base.

pub mod criteria;
pub mod dm;
pub mod faces;
pub mod gen;
pub mod modes;
