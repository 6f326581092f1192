//! Finite lattices, quasisupermodular functions and games.
//!
//! Everything is exact: payoffs are ordered values (rationals by default,
//! or positions in a labeled chain) and every checker returns a
//! [`Verdict`] carrying the lexicographically least witness on failure.

pub mod argmax;
pub mod error;
pub mod format;
pub mod function;
pub mod game;
pub mod generate;
pub mod lattice;
pub mod props;
pub mod topology;
pub mod value;
pub mod verdict;

pub use error::{ArgmaxError, FunctionError, GameError, LatticeError, MissingBound, TopologyError};
pub use function::LatticeFunction;
pub use game::{Game, JointStrategy};
pub use lattice::{product_lattice, ElementSet, FiniteLattice, FinitePoset, ProductSpace};
pub use topology::{ClosedFamily, TopologyKind};
pub use value::ChainCodomain;
pub use verdict::{Clause, Verdict};

/// Exact rational payoff values.
pub type Rational = num_rational::Ratio<i64>;
pub type RationalFunction = LatticeFunction<Rational>;
pub type RationalGame = Game<Rational>;
