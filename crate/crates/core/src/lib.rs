//! Braid-group tower `A[A_n] -> A[Ã_n] -> A[B_{n+1}] -> A[A_{n+1}]`.
//!
//! Every element of the tower is carried as a word in the ambient braid group
//! on `n + 2` strands. Equality is decided by Garside left normal forms
//! ([`garside`]) and independently by the Artin action on a free group
//! ([`free_action`]). On top of that sit the embeddings and distinguished
//! elements ([`tower`]) and endomorphisms of `A[Ã_n]` given by generator
//! images ([`endo`]).

pub mod endo;
pub mod error;
pub mod free_action;
pub mod garside;
pub mod presentations;
pub mod sampling;
pub mod selftest;
pub mod tower;
pub mod word;

pub use error::{Error, Result};
pub use free_action::{FreeAutomorphism, FreeWord};
pub use garside::{BraidWord, NormalForm, SimpleElement};
pub use presentations::{AffinePermutation, CoxeterGraph, Family, FinitePermutation, Relation};
pub use word::{Alphabet, GenWord};
