//! Exact computation of Moore-chain homology for ample groupoids presented
//! over Cantor spaces, together with the classifying-space side needed to
//! compare degree-zero homology with singular `H₀`.

pub mod cantor;
pub mod complex;
pub mod maps;
pub mod realization;
pub mod sampling;
mod trie;
pub mod zfun;
