//! Isomorphism testing and decomposition for finite modules over finite
//! rings, presented by structure constants.

pub mod cli;
pub mod fixtures;
pub mod grouplin;
pub mod homspace;
pub mod nilpotency;
pub mod oracle;
pub mod sideexit;
pub mod splitter;
pub mod structures;
