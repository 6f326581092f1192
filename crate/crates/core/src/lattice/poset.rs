use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::error::LatticeError;

/// A finite poset with its full order relation.
///
/// Elements are indexed `0..len()` in canonical order. For posets built from
/// labels this is lexicographic label order; product lattices use the
/// lexicographic order of their coordinate tuples.
#[derive(Debug, Clone)]
pub struct FinitePoset {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    // up[x] = { y : x <= y }, down[x] = { y : y <= x }
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
}

fn check_label(label: &str) -> Result<(), LatticeError> {
    if label.is_empty() || label.chars().any(|c| c.is_whitespace() || c.is_control()) {
        return Err(LatticeError::InvalidLabel(label.to_string()));
    }
    Ok(())
}

impl FinitePoset {
    /// Builds a poset as the reflexive-transitive closure of `covers`.
    pub fn from_covers<S: AsRef<str>>(
        elements: &[S],
        covers: &[(S, S)],
    ) -> Result<Self, LatticeError> {
        let mut labels: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        labels.sort();
        for w in labels.windows(2) {
            if w[0] == w[1] {
                return Err(LatticeError::DuplicateLabel(w[0].clone()));
            }
        }
        for l in &labels {
            check_label(l)?;
        }
        let index: HashMap<String, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        let n = labels.len();
        let mut rel = vec![vec![false; n]; n];
        for (i, row) in rel.iter_mut().enumerate() {
            row[i] = true;
        }
        for (lo, hi) in covers {
            let lookup = |s: &S| {
                index
                    .get(s.as_ref())
                    .copied()
                    .ok_or_else(|| LatticeError::UnknownLabel(s.as_ref().to_string()))
            };
            let (a, b) = (lookup(lo)?, lookup(hi)?);
            rel[a][b] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if rel[i][k] {
                    for j in 0..n {
                        if rel[k][j] {
                            rel[i][j] = true;
                        }
                    }
                }
            }
        }
        Self::from_relation(labels, |i, j| rel[i][j])
    }

    /// Builds a poset from labels already in canonical order and a closed
    /// relation. Fails if the relation is not antisymmetric.
    pub(crate) fn from_relation(
        labels: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
    ) -> Result<Self, LatticeError> {
        let n = labels.len();
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(LatticeError::DuplicateLabel(l.clone()));
            }
        }
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for i in 0..n {
            for j in 0..n {
                if leq(i, j) {
                    if i != j && leq(j, i) {
                        let (a, b) = if i < j { (i, j) } else { (j, i) };
                        return Err(LatticeError::CycleDetected(
                            labels[a].clone(),
                            labels[b].clone(),
                        ));
                    }
                    up[i].insert(j);
                    down[j].insert(i);
                }
            }
        }
        Ok(FinitePoset {
            labels,
            index,
            up,
            down,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// `{ y : x <= y }`
    pub fn up_set(&self, x: usize) -> &FixedBitSet {
        &self.up[x]
    }

    /// `{ y : y <= x }`
    pub fn down_set(&self, x: usize) -> &FixedBitSet {
        &self.down[x]
    }

    /// The cover (Hasse) relation, sorted by (lower, upper) label.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in self.up[x].ones() {
                if x == y {
                    continue;
                }
                let between = self.up[x]
                    .ones()
                    .any(|z| z != x && z != y && self.leq(z, y));
                if !between {
                    out.push((x, y));
                }
            }
        }
        out.sort_by(|a, b| {
            (&self.labels[a.0], &self.labels[a.1]).cmp(&(&self.labels[b.0], &self.labels[b.1]))
        });
        out
    }

    /// Minimal and maximal elements, and the least/greatest element when one exists.
    pub fn extremes(&self) -> Extremes {
        let n = self.len();
        let minimal: Vec<usize> = (0..n)
            .filter(|&x| self.down[x].count_ones(..) == 1)
            .collect();
        let maximal: Vec<usize> = (0..n).filter(|&x| self.up[x].count_ones(..) == 1).collect();
        let least = (0..n).find(|&x| self.up[x].count_ones(..) == n);
        let greatest = (0..n).find(|&x| self.down[x].count_ones(..) == n);
        Extremes {
            minimal,
            maximal,
            least,
            greatest,
        }
    }

    /// Length of the longest strictly increasing chain, counted in steps.
    pub fn height(&self) -> usize {
        let n = self.len();
        // process elements by increasing down-set size: strictly smaller elements come first
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| self.down[x].count_ones(..));
        let mut depth = vec![0usize; n];
        for &x in &order {
            depth[x] = self.down[x]
                .ones()
                .filter(|&y| y != x)
                .map(|y| depth[y] + 1)
                .max()
                .unwrap_or(0);
        }
        depth.into_iter().max().unwrap_or(0)
    }
}

impl PartialEq for FinitePoset {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.up == other.up
    }
}

impl Eq for FinitePoset {}

/// Result of [`FinitePoset::extremes`]; element sets are in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extremes {
    pub minimal: Vec<usize>,
    pub maximal: Vec<usize>,
    pub least: Option<usize>,
    pub greatest: Option<usize>,
}
