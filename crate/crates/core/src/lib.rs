//! Built lattices, nested sets, and the algebras attached to them.

pub mod building;
pub mod lattice;
pub mod linalg;
pub mod nested;
pub mod fy;
pub mod poly;
pub mod catalog;
pub mod os;
pub mod operad;
pub mod os_operad;
pub mod shuffle;
pub mod bar;
pub mod checks;
pub mod cli;
