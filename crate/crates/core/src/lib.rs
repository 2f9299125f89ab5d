//! Extending subshifts from a semigroup `S` to a receiving group `G`
//! along a morphism `η: S → G`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod groups;
pub mod words;
pub mod cayley;
pub mod csp;
pub mod subshift;
pub mod extension;
pub mod reversibility;
pub mod dynamics;
