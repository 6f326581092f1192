use std::ops::ControlFlow;

use super::{ElementSet, FiniteLattice};
use crate::error::LatticeError;
use crate::verdict::Verdict;

/// Default bound on `|A|` for exhaustive subset and chain enumeration.
pub const DEFAULT_EXHAUSTIVE_CAP: usize = 20;

#[derive(Debug, Clone, Copy)]
pub struct ClassifyOptions {
    /// Largest subset enumerated exhaustively for (chain-)subcompleteness.
    pub exhaustive_cap: usize,
    /// Above the cap, decide subcompleteness by sublattice closure (the two
    /// agree on finite lattices) instead of failing with `SubsetTooLarge`.
    pub allow_shortcut: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            exhaustive_cap: DEFAULT_EXHAUSTIVE_CAP,
            allow_shortcut: true,
        }
    }
}

/// A violation found while classifying a subset. Elements are indices into
/// the ambient lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubsetWitness {
    Incomparable(usize, usize),
    Comparable(usize, usize),
    MeetOutside { x: usize, y: usize, meet: usize },
    JoinOutside { x: usize, y: usize, join: usize },
    SupOutside { subset: Vec<usize>, sup: usize },
    InfOutside { subset: Vec<usize>, inf: usize },
}

impl SubsetWitness {
    pub fn render(&self, l: &FiniteLattice) -> String {
        let lab = |i: &usize| l.label(*i).to_string();
        let list =
            |v: &Vec<usize>| format!("{{{}}}", v.iter().map(lab).collect::<Vec<_>>().join(","));
        match self {
            SubsetWitness::Incomparable(x, y) => format!("incomparable {} {}", lab(x), lab(y)),
            SubsetWitness::Comparable(x, y) => format!("comparable {} {}", lab(x), lab(y)),
            SubsetWitness::MeetOutside { x, y, meet } => {
                format!("meet {} {} = {} outside", lab(x), lab(y), lab(meet))
            }
            SubsetWitness::JoinOutside { x, y, join } => {
                format!("join {} {} = {} outside", lab(x), lab(y), lab(join))
            }
            SubsetWitness::SupOutside { subset, sup } => {
                format!("sup {} = {} outside", list(subset), lab(sup))
            }
            SubsetWitness::InfOutside { subset, inf } => {
                format!("inf {} = {} outside", list(subset), lab(inf))
            }
        }
    }
}

/// Order-theoretic classification of a subset of a finite lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetFlags {
    pub is_chain: Verdict<SubsetWitness>,
    pub is_antichain: Verdict<SubsetWitness>,
    pub is_sublattice: Verdict<SubsetWitness>,
    pub is_subcomplete: Verdict<SubsetWitness>,
    pub is_chain_subcomplete: Verdict<SubsetWitness>,
    /// Subcompleteness was read off sublattice closure rather than enumerated.
    pub subcomplete_by_equivalence: bool,
    /// Chain-subcompleteness was read off closure under comparable pairs.
    pub chain_subcomplete_by_pairs: bool,
}

fn pairs(members: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    members
        .iter()
        .enumerate()
        .flat_map(move |(i, &x)| members[i + 1..].iter().map(move |&y| (x, y)))
}

pub fn is_chain(l: &FiniteLattice, set: &ElementSet) -> Verdict<SubsetWitness> {
    let m: Vec<usize> = set.ones().collect();
    Verdict::first_failure(
        pairs(&m)
            .filter(|&(x, y)| !l.poset().comparable(x, y))
            .map(|(x, y)| SubsetWitness::Incomparable(x, y)),
    )
}

pub fn is_antichain(l: &FiniteLattice, set: &ElementSet) -> Verdict<SubsetWitness> {
    let m: Vec<usize> = set.ones().collect();
    Verdict::first_failure(
        pairs(&m)
            .filter(|&(x, y)| l.poset().comparable(x, y))
            .map(|(x, y)| SubsetWitness::Comparable(x, y)),
    )
}

/// Closure of `set` under the ambient meet and join of every pair.
pub fn is_sublattice(l: &FiniteLattice, set: &ElementSet) -> Verdict<SubsetWitness> {
    closed_under_pairs(l, set, |_, _| true)
}

fn closed_under_pairs(
    l: &FiniteLattice,
    set: &ElementSet,
    admit: impl Fn(usize, usize) -> bool,
) -> Verdict<SubsetWitness> {
    let m: Vec<usize> = set.ones().collect();
    for (x, y) in pairs(&m) {
        if !admit(x, y) {
            continue;
        }
        let meet = l.meet(x, y);
        if !set.contains(meet) {
            return Verdict::Fails(SubsetWitness::MeetOutside { x, y, meet });
        }
        let join = l.join(x, y);
        if !set.contains(join) {
            return Verdict::Fails(SubsetWitness::JoinOutside { x, y, join });
        }
    }
    Verdict::Holds
}

/// Checks that sup and inf of every nonempty subset of `set` lie in `set`,
/// enumerating all `2^|set| - 1` subsets.
pub fn is_subcomplete_exhaustive(
    l: &FiniteLattice,
    set: &ElementSet,
    cap: usize,
) -> Result<Verdict<SubsetWitness>, LatticeError> {
    let m: Vec<usize> = set.ones().collect();
    let k = m.len();
    if k > cap {
        return Err(LatticeError::SubsetTooLarge { size: k, cap });
    }
    if k == 0 {
        return Ok(Verdict::Holds);
    }
    // sup[mask] = join of the members selected by mask, built from mask minus its lowest bit
    let total = 1usize << k;
    let mut sup = vec![0u32; total];
    let mut inf = vec![0u32; total];
    for mask in 1..total {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let e = m[low];
        let (s, i) = if rest == 0 {
            (e, e)
        } else {
            (l.join(sup[rest] as usize, e), l.meet(inf[rest] as usize, e))
        };
        sup[mask] = s as u32;
        inf[mask] = i as u32;
        let members = || {
            (0..k)
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| m[b])
                .collect()
        };
        if !set.contains(s) {
            return Ok(Verdict::Fails(SubsetWitness::SupOutside {
                subset: members(),
                sup: s,
            }));
        }
        if !set.contains(i) {
            return Ok(Verdict::Fails(SubsetWitness::InfOutside {
                subset: members(),
                inf: i,
            }));
        }
    }
    Ok(Verdict::Holds)
}

/// Visits every nonempty chain of `set` as an increasing sequence. Stops early
/// when the visitor breaks.
pub fn for_each_chain<B>(
    l: &FiniteLattice,
    set: &ElementSet,
    mut visit: impl FnMut(&[usize]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    let mut members: Vec<usize> = set.ones().collect();
    // a linear extension: strictly smaller elements have strictly smaller down-sets
    members.sort_by_key(|&x| (l.poset().down_set(x).count_ones(..), x));
    fn extend<B>(
        l: &FiniteLattice,
        members: &[usize],
        from: usize,
        chain: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        for (pos, &y) in members.iter().enumerate().skip(from) {
            if chain.last().is_none_or(|&last| l.poset().lt(last, y)) {
                chain.push(y);
                visit(chain)?;
                extend(l, members, pos + 1, chain, visit)?;
                chain.pop();
            }
        }
        ControlFlow::Continue(())
    }
    extend(l, &members, 0, &mut Vec::new(), &mut visit)
}

/// Checks that sup and inf (folded through the ambient join/meet) of every
/// nonempty chain of `set` lie in `set`.
pub fn is_chain_subcomplete_exhaustive(
    l: &FiniteLattice,
    set: &ElementSet,
    cap: usize,
) -> Result<Verdict<SubsetWitness>, LatticeError> {
    let k = set.count_ones(..);
    if k > cap {
        return Err(LatticeError::SubsetTooLarge { size: k, cap });
    }
    let flow = for_each_chain(l, set, |chain| {
        let sup = chain.iter().copied().reduce(|a, b| l.join(a, b)).unwrap();
        if !set.contains(sup) {
            return ControlFlow::Break(SubsetWitness::SupOutside {
                subset: chain.to_vec(),
                sup,
            });
        }
        let inf = chain.iter().copied().reduce(|a, b| l.meet(a, b)).unwrap();
        if !set.contains(inf) {
            return ControlFlow::Break(SubsetWitness::InfOutside {
                subset: chain.to_vec(),
                inf,
            });
        }
        ControlFlow::Continue(())
    });
    Ok(match flow {
        ControlFlow::Continue(()) => Verdict::Holds,
        ControlFlow::Break(w) => Verdict::Fails(w),
    })
}

/// Chain-subcompleteness via closure under joins and meets of comparable
/// pairs; every finite chain's sup and inf are reached by such steps.
pub fn is_chain_subcomplete_by_pairs(
    l: &FiniteLattice,
    set: &ElementSet,
) -> Verdict<SubsetWitness> {
    closed_under_pairs(l, set, |x, y| l.poset().comparable(x, y))
}

/// Classifies `set`; see [`ClassifyOptions`] for the size cap behaviour.
pub fn classify_subset(
    l: &FiniteLattice,
    set: &ElementSet,
    opts: ClassifyOptions,
) -> Result<SubsetFlags, LatticeError> {
    let size = set.count_ones(..);
    let is_sublattice = is_sublattice(l, set);
    let small = size <= opts.exhaustive_cap;
    if !small && !opts.allow_shortcut {
        return Err(LatticeError::SubsetTooLarge {
            size,
            cap: opts.exhaustive_cap,
        });
    }
    let (is_subcomplete, is_chain_subcomplete) = if small {
        (
            is_subcomplete_exhaustive(l, set, opts.exhaustive_cap)?,
            is_chain_subcomplete_exhaustive(l, set, opts.exhaustive_cap)?,
        )
    } else {
        (is_sublattice.clone(), is_chain_subcomplete_by_pairs(l, set))
    };
    Ok(SubsetFlags {
        is_chain: is_chain(l, set),
        is_antichain: is_antichain(l, set),
        is_sublattice,
        is_subcomplete,
        is_chain_subcomplete,
        subcomplete_by_equivalence: !small,
        chain_subcomplete_by_pairs: !small,
    })
}
