//! PBW basis criterion for character Hopf algebras.
//!
//! Exact arithmetic in the smash product of a free algebra on super letters
//! with an abelian group algebra, a diamond-lemma rewriting system, and the
//! q-Jacobi / restricted q-Leibniz checks that decide whether the ordered
//! super-letter monomials form a basis.

pub mod scalars;
pub mod words;
pub mod algebra;
pub mod rewrite;
pub mod oracle;
pub mod criterion;
pub mod presets;
pub mod cli;
