//! Payoff scalars and chain codomains.
//!
//! Every checker is generic over the payoff type. Order-only checks need
//! [`Payoff`]; checks that add or subtract values need [`Additive`]. Floats are
//! not `Ord` and are deliberately excluded: verdicts and witnesses are exact.

use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use num_traits::{FromPrimitive, Zero};

use crate::Rational;

/// A totally ordered payoff value.
pub trait Payoff: Ord + Clone + fmt::Debug + fmt::Display + Send + Sync + FromPrimitive {}

impl<T> Payoff for T where T: Ord + Clone + fmt::Debug + fmt::Display + Send + Sync + FromPrimitive {}

/// A payoff value with an additive group structure.
pub trait Additive: Payoff + Zero + Add<Output = Self> + Sub<Output = Self> {}

impl<T> Additive for T where T: Payoff + Zero + Add<Output = Self> + Sub<Output = Self> {}

/// The chain a function takes values in.
///
/// Labeled chains store values as their zero-based position in `labels`, so
/// they compare by position and never by arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub enum ChainCodomain {
    #[default]
    Rational,
    Labeled(Vec<String>),
}

impl ChainCodomain {
    pub fn is_labeled(&self) -> bool {
        matches!(self, ChainCodomain::Labeled(_))
    }

    /// Positions admitted by a labeled codomain, as payoff values.
    pub fn positions<V: Payoff>(&self) -> Option<Vec<V>> {
        match self {
            ChainCodomain::Rational => None,
            ChainCodomain::Labeled(labels) => Some(
                (0..labels.len())
                    .map(|k| V::from_usize(k).expect("position fits the payoff type"))
                    .collect(),
            ),
        }
    }

    /// Renders a value: labeled codomains print the label at the value's position.
    pub fn render<V: Payoff>(&self, value: &V) -> String {
        match self {
            ChainCodomain::Rational => value.to_string(),
            ChainCodomain::Labeled(labels) => labels
                .iter()
                .enumerate()
                .find(|(k, _)| V::from_usize(*k).as_ref() == Some(value))
                .map(|(_, l)| l.clone())
                .unwrap_or_else(|| value.to_string()),
        }
    }
}

/// Parses `"p/q"` or `"p"` into a reduced rational.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let t = text.trim();
    if t.is_empty() {
        return Err("empty rational".into());
    }
    Rational::from_str(t)
        .map_err(|_| format!("`{t}` is not a rational of the form p/q"))
        .and_then(|r| {
            if *r.denom() == 0 {
                Err("zero denominator".into())
            } else {
                Ok(r)
            }
        })
}

/// Formats a rational as `"p"` when integral, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
