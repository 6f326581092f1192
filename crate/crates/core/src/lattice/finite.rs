use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::poset::{Extremes, FinitePoset};
use super::ElementSet;
use crate::error::{LatticeError, MissingBound};

/// Largest product that [`product_lattice`] will materialize with explicit
/// meet/join tables.
pub const PRODUCT_CAP: usize = 4096;

/// A finite lattice: a poset with complete meet and join tables.
#[derive(Debug, Clone)]
pub struct FiniteLattice {
    poset: FinitePoset,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
    factors: Option<Vec<Arc<FiniteLattice>>>,
}

fn least_of(poset: &FinitePoset, candidates: &FixedBitSet) -> Option<usize> {
    candidates
        .ones()
        .find(|&u| candidates.is_subset(poset.up_set(u)))
}

fn greatest_of(poset: &FinitePoset, candidates: &FixedBitSet) -> Option<usize> {
    candidates
        .ones()
        .find(|&u| candidates.is_subset(poset.down_set(u)))
}

impl FiniteLattice {
    /// Fills meet/join tables by exhaustive glb/lub search, or reports the
    /// first pair (in canonical order) lacking a bound.
    pub fn from_poset(poset: FinitePoset) -> Result<Self, LatticeError> {
        let n = poset.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for x in 0..n {
            for y in x..n {
                let mut uppers = poset.up_set(x).clone();
                uppers.intersect_with(poset.up_set(y));
                let lub = least_of(&poset, &uppers).ok_or_else(|| LatticeError::NotALattice {
                    x: poset.label(x).to_string(),
                    y: poset.label(y).to_string(),
                    missing: MissingBound::Lub,
                })?;
                let mut lowers = poset.down_set(x).clone();
                lowers.intersect_with(poset.down_set(y));
                let glb =
                    greatest_of(&poset, &lowers).ok_or_else(|| LatticeError::NotALattice {
                        x: poset.label(x).to_string(),
                        y: poset.label(y).to_string(),
                        missing: MissingBound::Glb,
                    })?;
                join[x * n + y] = lub;
                join[y * n + x] = lub;
                meet[x * n + y] = glb;
                meet[y * n + x] = glb;
            }
        }
        let ext = poset.extremes();
        let bottom = ext.least.expect("finite lattice has a least element");
        let top = ext.greatest.expect("finite lattice has a greatest element");
        Ok(FiniteLattice {
            poset,
            meet,
            join,
            bottom,
            top,
            factors: None,
        })
    }

    /// Convenience: build the poset from labels and covers, then check it.
    pub fn from_covers<S: AsRef<str>>(
        elements: &[S],
        covers: &[(S, S)],
    ) -> Result<Self, LatticeError> {
        Self::from_poset(FinitePoset::from_covers(elements, covers)?)
    }

    /// The chain `labels[0] < labels[1] < ...` (labels in any order of input).
    pub fn chain<S: AsRef<str>>(labels: &[S]) -> Result<Self, LatticeError> {
        let covers: Vec<(&str, &str)> = labels
            .windows(2)
            .map(|w| (w[0].as_ref(), w[1].as_ref()))
            .collect();
        let elems: Vec<&str> = labels.iter().map(|s| s.as_ref()).collect();
        Self::from_covers(&elems, &covers)
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn label(&self, x: usize) -> &str {
        self.poset.label(x)
    }

    pub fn labels(&self) -> &[String] {
        self.poset.labels()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.poset.index_of(label)
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.poset.leq(x, y)
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.len() + y]
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.len() + y]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn extremes(&self) -> Extremes {
        self.poset.extremes()
    }

    pub fn height(&self) -> usize {
        self.poset.height()
    }

    /// Factors of a product lattice, in coordinate order.
    pub fn factors(&self) -> Option<&[Arc<FiniteLattice>]> {
        self.factors.as_deref()
    }

    /// Least upper bound of a nonempty subset, by folding the join table.
    pub fn sup_subset(&self, subset: &ElementSet) -> Result<usize, LatticeError> {
        subset
            .ones()
            .reduce(|a, b| self.join(a, b))
            .ok_or(LatticeError::EmptySubset)
    }

    /// Greatest lower bound of a nonempty subset, by folding the meet table.
    pub fn inf_subset(&self, subset: &ElementSet) -> Result<usize, LatticeError> {
        subset
            .ones()
            .reduce(|a, b| self.meet(a, b))
            .ok_or(LatticeError::EmptySubset)
    }

    pub fn empty_set(&self) -> ElementSet {
        FixedBitSet::with_capacity(self.len())
    }

    pub fn full_set(&self) -> ElementSet {
        let mut s = self.empty_set();
        s.insert_range(..);
        s
    }

    /// Builds a subset from labels.
    pub fn subset<S: AsRef<str>>(&self, labels: &[S]) -> Result<ElementSet, LatticeError> {
        let mut s = self.empty_set();
        for l in labels {
            let i = self
                .index_of(l.as_ref())
                .ok_or_else(|| LatticeError::UnknownLabel(l.as_ref().to_string()))?;
            s.insert(i);
        }
        Ok(s)
    }

    /// Labels of a subset, in canonical order.
    pub fn subset_labels(&self, set: &ElementSet) -> Vec<String> {
        set.ones().map(|i| self.label(i).to_string()).collect()
    }

    /// `{a, b, ...}` rendering of a subset.
    pub fn render_set(&self, set: &ElementSet) -> String {
        format!("{{{}}}", self.subset_labels(set).join(","))
    }
}

impl PartialEq for FiniteLattice {
    fn eq(&self, other: &Self) -> bool {
        self.poset == other.poset
    }
}

impl Eq for FiniteLattice {}

/// Mixed-radix view of a product of lattices, ordered componentwise.
///
/// Joint indices enumerate tuples lexicographically with the first factor most
/// significant; this is the canonical order of [`product_lattice`] elements.
#[derive(Debug, Clone)]
pub struct ProductSpace {
    factors: Vec<Arc<FiniteLattice>>,
    strides: Vec<usize>,
    size: usize,
}

impl ProductSpace {
    pub fn new(factors: Vec<Arc<FiniteLattice>>) -> Result<Self, LatticeError> {
        if factors.is_empty() {
            return Err(LatticeError::EmptyFactorList);
        }
        let mut strides = vec![1; factors.len()];
        let mut size: usize = 1;
        for k in (0..factors.len()).rev() {
            strides[k] = size;
            size = size
                .checked_mul(factors[k].len())
                .ok_or(LatticeError::ProductTooLarge {
                    size: usize::MAX,
                    cap: usize::MAX,
                })?;
        }
        Ok(ProductSpace {
            factors,
            strides,
            size,
        })
    }

    pub fn factors(&self) -> &[Arc<FiniteLattice>] {
        &self.factors
    }

    pub fn factor(&self, k: usize) -> &FiniteLattice {
        &self.factors[k]
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn coord(&self, idx: usize, k: usize) -> usize {
        (idx / self.strides[k]) % self.factors[k].len()
    }

    pub fn coords(&self, idx: usize) -> Vec<usize> {
        (0..self.arity()).map(|k| self.coord(idx, k)).collect()
    }

    pub fn index(&self, coords: &[usize]) -> usize {
        coords.iter().zip(&self.strides).map(|(c, s)| c * s).sum()
    }

    /// `idx` with coordinate `k` replaced by `value`.
    #[inline]
    pub fn with_coord(&self, idx: usize, k: usize, value: usize) -> usize {
        idx - self.coord(idx, k) * self.strides[k] + value * self.strides[k]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        (0..self.arity()).all(|k| self.factors[k].leq(self.coord(a, k), self.coord(b, k)))
    }

    /// Componentwise order ignoring coordinate `skip`.
    pub fn leq_except(&self, a: usize, b: usize, skip: usize) -> bool {
        (0..self.arity())
            .filter(|&k| k != skip)
            .all(|k| self.factors[k].leq(self.coord(a, k), self.coord(b, k)))
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        (0..self.arity())
            .map(|k| self.factors[k].meet(self.coord(a, k), self.coord(b, k)) * self.strides[k])
            .sum()
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        (0..self.arity())
            .map(|k| self.factors[k].join(self.coord(a, k), self.coord(b, k)) * self.strides[k])
            .sum()
    }

    pub fn top(&self) -> usize {
        self.index(&self.factors.iter().map(|f| f.top()).collect::<Vec<_>>())
    }

    pub fn bottom(&self) -> usize {
        self.index(&self.factors.iter().map(|f| f.bottom()).collect::<Vec<_>>())
    }

    pub fn height(&self) -> usize {
        self.factors.iter().map(|f| f.height()).sum()
    }

    /// Tuple encoding `(a,b,...)` of a joint index.
    pub fn label(&self, idx: usize) -> String {
        let parts: Vec<&str> = (0..self.arity())
            .map(|k| self.factors[k].label(self.coord(idx, k)))
            .collect();
        format!("({})", parts.join(","))
    }

    /// Indices whose coordinate `k` is the factor's first element: one
    /// representative per profile of the other coordinates.
    pub fn slices_without(&self, k: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.size).filter(move |&idx| self.coord(idx, k) == 0)
    }
}

/// Product lattice with componentwise order, meet and join.
pub fn product_lattice(factors: &[Arc<FiniteLattice>]) -> Result<FiniteLattice, LatticeError> {
    let space = ProductSpace::new(factors.to_vec())?;
    let n = space.size();
    if n > PRODUCT_CAP {
        return Err(LatticeError::ProductTooLarge {
            size: n,
            cap: PRODUCT_CAP,
        });
    }
    let labels: Vec<String> = (0..n).map(|i| space.label(i)).collect();
    let poset = FinitePoset::from_relation(labels, |a, b| space.leq(a, b))?;
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            meet[a * n + b] = space.meet(a, b);
            join[a * n + b] = space.join(a, b);
        }
    }
    Ok(FiniteLattice {
        poset,
        meet,
        join,
        bottom: space.bottom(),
        top: space.top(),
        factors: Some(factors.to_vec()),
    })
}
