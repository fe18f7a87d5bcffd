//! Exact symbolic computation of the quantum matrix space, its differential
//! calculus, and the U_q sl(m+n) module-algebra structure obtained from the
//! dual pairing with matrix coefficients of the natural representation.

pub mod action;
pub mod cli;
pub mod freealg;
pub mod matrix;
pub mod pairing;
pub mod qmatcalc;
pub mod report;
pub mod scalars;
pub mod uq;
