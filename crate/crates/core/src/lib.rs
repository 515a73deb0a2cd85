//! Rings with computable ideals, S-finiteness certificates and the
//! idealization ℤ(+)(ℤ/2ℤ)^(ℕ).

pub mod cert;
pub mod engine;
pub mod ideal;
pub mod json;
pub mod lab;
pub mod linalg;
pub mod module;
pub mod mult_set;
pub mod parse;
pub mod ring;
pub mod sample;
pub mod solve;
