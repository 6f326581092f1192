//! Finite posets and lattices, products, and subset classification.

mod finite;
mod poset;
mod subset;

pub use finite::{product_lattice, FiniteLattice, ProductSpace, PRODUCT_CAP};
pub use poset::{Extremes, FinitePoset};
pub use subset::{
    classify_subset, for_each_chain, is_antichain, is_chain, is_chain_subcomplete_by_pairs,
    is_chain_subcomplete_exhaustive, is_subcomplete_exhaustive, is_sublattice, ClassifyOptions,
    SubsetFlags, SubsetWitness, DEFAULT_EXHAUSTIVE_CAP,
};

/// A subset of a finite lattice, as a bitset over canonical element indices.
pub type ElementSet = fixedbitset::FixedBitSet;
