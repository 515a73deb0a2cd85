pub mod f2;
pub mod int;
