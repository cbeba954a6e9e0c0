//! Farey symbols, modular dessins and their monodromy groups, character
//! theory for permutation representations, local quivers over the modular
//! quiver, and exact cyclotomic and Habiro-ring arithmetic.

pub mod content;
pub mod dessin;
pub mod farey;
pub mod habiro;
pub mod permgroup;
pub mod quiver;
pub mod reptheory;
