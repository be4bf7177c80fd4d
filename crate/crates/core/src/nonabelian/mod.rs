//! Non-abelian Fourier transforms for `S_2, …, S_5` and small products, and
//! the triangularity checks for new bases.

pub mod characters;
pub mod group;
pub mod transform;
pub mod basis;
