//! Finite topologies on a lattice, stored as explicit closed-set families.
//!
//! The interval topology is generated by the rays `{x >= a}` and `{x <= a}`.
//! On a finite carrier every closed family is closed under arbitrary
//! intersections once it is closed under pairwise ones, so saturation under
//! pairwise union and intersection yields the whole topology.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::TopologyError;
use crate::lattice::{ElementSet, FiniteLattice};

/// Default bound on the carrier size for interval-family saturation.
pub const INTERVAL_CAP: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TopologyKind {
    Interval,
    Discrete,
    Explicit,
}

impl fmt::Display for TopologyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TopologyKind::Interval => "interval",
            TopologyKind::Discrete => "discrete",
            TopologyKind::Explicit => "explicit",
        })
    }
}

/// The closed sets of a finite topology on a lattice.
#[derive(Debug, Clone)]
pub struct ClosedFamily {
    carrier: Arc<FiniteLattice>,
    kind: TopologyKind,
    // sorted; empty for the discrete family, which is kept implicit
    sets: Vec<ElementSet>,
}

fn saturate(seed: impl IntoIterator<Item = ElementSet>) -> BTreeSet<ElementSet> {
    let mut family = BTreeSet::new();
    let mut work: Vec<ElementSet> = Vec::new();
    for s in seed {
        if family.insert(s.clone()) {
            work.push(s);
        }
    }
    while let Some(s) = work.pop() {
        let mut fresh = Vec::new();
        for t in &family {
            let mut u = s.clone();
            u.union_with(t);
            let mut i = s.clone();
            i.intersect_with(t);
            fresh.push(u);
            fresh.push(i);
        }
        for f in fresh {
            if family.insert(f.clone()) {
                work.push(f);
            }
        }
    }
    family
}

impl ClosedFamily {
    /// Interval topology of `carrier`, with the default size cap.
    pub fn interval(carrier: Arc<FiniteLattice>) -> Result<Self, TopologyError> {
        Self::interval_with_cap(carrier, INTERVAL_CAP)
    }

    pub fn interval_with_cap(
        carrier: Arc<FiniteLattice>,
        cap: usize,
    ) -> Result<Self, TopologyError> {
        let n = carrier.len();
        if n > cap {
            return Err(TopologyError::CarrierTooLarge { size: n, cap });
        }
        let rays = (0..n).flat_map(|a| {
            [
                carrier.poset().up_set(a).clone(),
                carrier.poset().down_set(a).clone(),
            ]
        });
        let seed = [carrier.empty_set(), carrier.full_set()]
            .into_iter()
            .chain(rays);
        let sets = saturate(seed).into_iter().collect();
        Ok(ClosedFamily {
            carrier,
            kind: TopologyKind::Interval,
            sets,
        })
    }

    /// Every subset is closed.
    pub fn discrete(carrier: Arc<FiniteLattice>) -> Self {
        ClosedFamily {
            carrier,
            kind: TopologyKind::Discrete,
            sets: Vec::new(),
        }
    }

    /// A user-supplied family, validated as the closed sets of a topology.
    pub fn explicit(
        carrier: Arc<FiniteLattice>,
        sets: impl IntoIterator<Item = ElementSet>,
    ) -> Result<Self, TopologyError> {
        let family: BTreeSet<ElementSet> = sets.into_iter().collect();
        if !family.contains(&carrier.empty_set()) {
            return Err(TopologyError::MissingSet("the empty set"));
        }
        if !family.contains(&carrier.full_set()) {
            return Err(TopologyError::MissingSet("the full carrier"));
        }
        for a in &family {
            for b in &family {
                let mut u = a.clone();
                u.union_with(b);
                if !family.contains(&u) {
                    return Err(TopologyError::NotClosedUnder {
                        op: "union",
                        a: carrier.subset_labels(a).join(","),
                        b: carrier.subset_labels(b).join(","),
                    });
                }
                let mut i = a.clone();
                i.intersect_with(b);
                if !family.contains(&i) {
                    return Err(TopologyError::NotClosedUnder {
                        op: "intersection",
                        a: carrier.subset_labels(a).join(","),
                        b: carrier.subset_labels(b).join(","),
                    });
                }
            }
        }
        Ok(ClosedFamily {
            carrier,
            kind: TopologyKind::Explicit,
            sets: family.into_iter().collect(),
        })
    }

    /// Explicit family from lists of labels.
    pub fn explicit_from_labels<S: AsRef<str>>(
        carrier: Arc<FiniteLattice>,
        sets: &[Vec<S>],
    ) -> Result<Self, TopologyError> {
        let mut bits = Vec::with_capacity(sets.len());
        for s in sets {
            let mut b = carrier.empty_set();
            for l in s {
                let i = carrier
                    .index_of(l.as_ref())
                    .ok_or_else(|| TopologyError::UnknownLabel(l.as_ref().to_string()))?;
                b.insert(i);
            }
            bits.push(b);
        }
        Self::explicit(carrier, bits)
    }

    pub fn carrier(&self) -> &Arc<FiniteLattice> {
        &self.carrier
    }

    pub fn kind(&self) -> TopologyKind {
        self.kind
    }

    pub fn is_closed(&self, set: &ElementSet) -> bool {
        match self.kind {
            TopologyKind::Discrete => true,
            _ => self.sets.binary_search(set).is_ok(),
        }
    }

    /// Smallest closed superset of `set`.
    pub fn closure(&self, set: &ElementSet) -> ElementSet {
        match self.kind {
            TopologyKind::Discrete => set.clone(),
            _ => {
                let mut acc = self.carrier.full_set();
                for c in self.sets.iter().filter(|c| set.is_subset(c)) {
                    acc.intersect_with(c);
                }
                acc
            }
        }
    }

    /// Smallest open set containing `y`: the complement of the union of all
    /// closed sets avoiding `y`.
    pub fn minimal_open_neighborhood(&self, y: usize) -> ElementSet {
        match self.kind {
            TopologyKind::Discrete => {
                let mut s = self.carrier.empty_set();
                s.insert(y);
                s
            }
            _ => {
                let mut avoid = self.carrier.empty_set();
                for c in self.sets.iter().filter(|c| !c.contains(y)) {
                    avoid.union_with(c);
                }
                let mut open = self.carrier.full_set();
                open.difference_with(&avoid);
                open
            }
        }
    }

    /// All closed sets in sorted order. The discrete family is materialized
    /// on demand, so keep its carrier small.
    pub fn closed_sets(&self) -> Vec<ElementSet> {
        match self.kind {
            TopologyKind::Discrete => {
                let n = self.carrier.len();
                assert!(
                    n <= 20,
                    "discrete family over {n} points is too large to list"
                );
                let mut all: Vec<ElementSet> = (0..1usize << n)
                    .map(|mask| {
                        let mut s = self.carrier.empty_set();
                        for b in (0..n).filter(|b| mask >> b & 1 == 1) {
                            s.insert(b);
                        }
                        s
                    })
                    .collect();
                all.sort();
                all
            }
            _ => self.sets.clone(),
        }
    }

    /// The stored closed sets; empty for the implicit discrete family.
    pub fn listed_sets(&self) -> &[ElementSet] {
        &self.sets
    }

    /// Number of closed sets.
    pub fn len(&self) -> usize {
        match self.kind {
            TopologyKind::Discrete => 1usize << self.carrier.len(),
            _ => self.sets.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Complements of the closed sets.
    pub fn open_sets(&self) -> Vec<ElementSet> {
        self.closed_sets()
            .into_iter()
            .map(|c| {
                let mut o = self.carrier.full_set();
                o.difference_with(&c);
                o
            })
            .collect()
    }
}
