use std::sync::Arc;

use crate::error::FunctionError;
use crate::lattice::{FiniteLattice, ProductSpace};
use crate::value::{Additive, ChainCodomain, Payoff};

/// A total function from a finite lattice to a chain.
#[derive(Debug, Clone)]
pub struct LatticeFunction<V> {
    domain: Arc<FiniteLattice>,
    codomain: ChainCodomain,
    table: Vec<V>,
}

pub(crate) fn same_lattice(a: &Arc<FiniteLattice>, b: &Arc<FiniteLattice>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl<V: Payoff> LatticeFunction<V> {
    /// `table[x]` is the value at canonical element `x`.
    pub fn new(
        domain: Arc<FiniteLattice>,
        codomain: ChainCodomain,
        table: Vec<V>,
    ) -> Result<Self, FunctionError> {
        if table.len() != domain.len() {
            return Err(FunctionError::TableSize {
                expected: domain.len(),
                got: table.len(),
            });
        }
        if let Some(allowed) = codomain.positions::<V>() {
            if let Some((x, v)) = table.iter().enumerate().find(|(_, v)| !allowed.contains(v)) {
                return Err(FunctionError::NotInCodomain {
                    element: domain.label(x).to_string(),
                    value: v.to_string(),
                });
            }
        }
        Ok(LatticeFunction {
            domain,
            codomain,
            table,
        })
    }

    /// Builds the table by evaluating `f` on each element's index and label.
    pub fn from_fn(
        domain: Arc<FiniteLattice>,
        codomain: ChainCodomain,
        mut f: impl FnMut(usize, &str) -> V,
    ) -> Result<Self, FunctionError> {
        let table = (0..domain.len()).map(|x| f(x, domain.label(x))).collect();
        Self::new(domain, codomain, table)
    }

    pub fn domain(&self) -> &Arc<FiniteLattice> {
        &self.domain
    }

    pub fn codomain(&self) -> &ChainCodomain {
        &self.codomain
    }

    pub fn table(&self) -> &[V] {
        &self.table
    }

    #[inline]
    pub fn value(&self, x: usize) -> &V {
        &self.table[x]
    }

    /// Value at a labeled element.
    pub fn at(&self, label: &str) -> Option<&V> {
        self.domain.index_of(label).map(|x| &self.table[x])
    }

    /// Distinct values taken, in increasing order.
    pub fn image(&self) -> Vec<V> {
        let mut img = self.table.clone();
        img.sort();
        img.dedup();
        img
    }

    pub fn render(&self, v: &V) -> String {
        self.codomain.render(v)
    }

    /// Pointwise `t ∘ f`, rejecting maps that are not strictly increasing on
    /// the image. The codomain is kept.
    pub fn transform(&self, t: impl Fn(&V) -> V) -> Result<Self, FunctionError> {
        let img = self.image();
        let mapped: Vec<V> = img.iter().map(&t).collect();
        for k in 1..img.len() {
            if mapped[k - 1] >= mapped[k] {
                return Err(FunctionError::NotStrictlyIncreasing {
                    lo: img[k - 1].to_string(),
                    hi: img[k].to_string(),
                });
            }
        }
        let table = self
            .table
            .iter()
            .map(|v| mapped[img.binary_search(v).expect("value in image")].clone())
            .collect();
        Self::new(self.domain.clone(), self.codomain.clone(), table)
    }

    /// The coordinate view of a product domain.
    pub fn product_space(&self) -> Result<ProductSpace, FunctionError> {
        let factors = self
            .domain
            .factors()
            .ok_or(FunctionError::NotAProductDomain)?;
        Ok(ProductSpace::new(factors.to_vec())?)
    }

    /// `f(·, rest)`: the function of coordinate `split` with the other
    /// coordinates taken from element `at`.
    pub fn section(&self, split: usize, at: usize) -> Result<Self, FunctionError> {
        let space = self.product_space()?;
        if split >= space.arity() {
            return Err(FunctionError::BadSplit {
                split,
                factors: space.arity(),
            });
        }
        let factor = space.factors()[split].clone();
        let table = (0..factor.len())
            .map(|p| self.table[space.with_coord(at, split, p)].clone())
            .collect();
        Self::new(factor, self.codomain.clone(), table)
    }
}

/// Pointwise sum of two rational-valued functions on the same domain.
pub fn sum<V: Additive>(
    f: &LatticeFunction<V>,
    g: &LatticeFunction<V>,
) -> Result<LatticeFunction<V>, FunctionError> {
    if f.codomain.is_labeled() || g.codomain.is_labeled() {
        return Err(FunctionError::LabeledCodomainUnsupported);
    }
    if !same_lattice(&f.domain, &g.domain) {
        return Err(FunctionError::DomainMismatch);
    }
    let table = f
        .table
        .iter()
        .zip(&g.table)
        .map(|(a, b)| a.clone() + b.clone())
        .collect();
    LatticeFunction::new(f.domain.clone(), ChainCodomain::Rational, table)
}

impl<V: PartialEq> PartialEq for LatticeFunction<V> {
    fn eq(&self, other: &Self) -> bool {
        *self.domain == *other.domain
            && self.codomain == other.codomain
            && self.table == other.table
    }
}
