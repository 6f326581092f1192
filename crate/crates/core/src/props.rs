//! Exhaustive checkers for order conditions on lattice functions.
//!
//! Every scan walks candidates in canonical index order and stops at the
//! first violation, so witnesses are deterministic. Pair scans are generic
//! over a meet/join/value view so the game solver can run them on sections
//! without materializing section functions.

use std::fmt;

use crate::error::FunctionError;
use crate::function::{same_lattice, LatticeFunction};
use crate::lattice::{
    is_chain_subcomplete_by_pairs, is_chain_subcomplete_exhaustive, ElementSet, FiniteLattice,
    ProductSpace, SubsetWitness, DEFAULT_EXHAUSTIVE_CAP,
};
use crate::topology::ClosedFamily;
use crate::value::{Additive, Payoff};
use crate::verdict::{Clause, Verdict};

/// `f(x) >= f(x∧y)` without `f(x∨y) >= f(y)` (weak clause), or the strict analogue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QsmViolation {
    pub x: usize,
    pub y: usize,
    pub meet: usize,
    pub join: usize,
    pub clause: Clause,
}

impl QsmViolation {
    pub fn render<V: Payoff>(&self, f: &LatticeFunction<V>) -> String {
        let d = f.domain();
        let v = |i: usize| f.render(f.value(i));
        format!(
            "clause={} x={} y={} meet={} join={} f(x)={} f(meet)={} f(join)={} f(y)={}",
            self.clause,
            d.label(self.x),
            d.label(self.y),
            d.label(self.meet),
            d.label(self.join),
            v(self.x),
            v(self.meet),
            v(self.join),
            v(self.y),
        )
    }
}

/// Re-checks one ordered pair against both clauses of quasisupermodularity.
pub fn qsm_clause_violated<V: Ord>(fx: &V, fmeet: &V, fjoin: &V, fy: &V) -> Option<Clause> {
    if fx >= fmeet && fjoin < fy {
        Some(Clause::Weak)
    } else if fx > fmeet && fjoin <= fy {
        Some(Clause::Strict)
    } else {
        None
    }
}

/// Quasisupermodularity scan over ordered pairs `(x, y)` of `0..n`.
pub(crate) fn qsm_scan<'a, V: Payoff + 'a>(
    n: usize,
    meet: impl Fn(usize, usize) -> usize,
    join: impl Fn(usize, usize) -> usize,
    value: impl Fn(usize) -> &'a V,
) -> Option<QsmViolation> {
    for x in 0..n {
        for y in 0..n {
            let (m, j) = (meet(x, y), join(x, y));
            if let Some(clause) = qsm_clause_violated(value(x), value(m), value(j), value(y)) {
                return Some(QsmViolation {
                    x,
                    y,
                    meet: m,
                    join: j,
                    clause,
                });
            }
        }
    }
    None
}

pub fn is_quasisupermodular<V: Payoff>(f: &LatticeFunction<V>) -> Verdict<QsmViolation> {
    let d = f.domain();
    match qsm_scan(
        d.len(),
        |x, y| d.meet(x, y),
        |x, y| d.join(x, y),
        |x| f.value(x),
    ) {
        Some(w) => Verdict::Fails(w),
        None => Verdict::Holds,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupermodularViolation<V> {
    pub x: usize,
    pub y: usize,
    pub meet: usize,
    pub join: usize,
    /// `f(x) + f(y)`
    pub lhs: V,
    /// `f(x∧y) + f(x∨y)`
    pub rhs: V,
}

impl<V: fmt::Display> SupermodularViolation<V> {
    pub fn render(&self, d: &FiniteLattice) -> String {
        format!(
            "x={} y={} f(x)+f(y)={} f(meet)+f(join)={}",
            d.label(self.x),
            d.label(self.y),
            self.lhs,
            self.rhs
        )
    }
}

pub fn is_supermodular<V: Additive>(
    f: &LatticeFunction<V>,
) -> Result<Verdict<SupermodularViolation<V>>, FunctionError> {
    if f.codomain().is_labeled() {
        return Err(FunctionError::LabeledCodomainUnsupported);
    }
    let d = f.domain();
    let n = d.len();
    for x in 0..n {
        for y in x + 1..n {
            let (m, j) = (d.meet(x, y), d.join(x, y));
            let lhs = f.value(x).clone() + f.value(y).clone();
            let rhs = f.value(m).clone() + f.value(j).clone();
            if lhs > rhs {
                return Ok(Verdict::Fails(SupermodularViolation {
                    x,
                    y,
                    meet: m,
                    join: j,
                    lhs,
                    rhs,
                }));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// A split of a product domain into coordinate `k` (the `P` role) and the
/// remaining coordinates (the `Q` role). Points of `Q` are represented by the
/// joint indices whose coordinate `k` is the factor's first element.
#[derive(Debug, Clone)]
pub struct Split<'s> {
    pub space: &'s ProductSpace,
    pub k: usize,
    reps: Vec<usize>,
}

impl<'s> Split<'s> {
    pub fn new(space: &'s ProductSpace, k: usize) -> Result<Self, FunctionError> {
        if k >= space.arity() {
            return Err(FunctionError::BadSplit {
                split: k,
                factors: space.arity(),
            });
        }
        Ok(Split {
            space,
            k,
            reps: space.slices_without(k).collect(),
        })
    }

    /// Representatives of the `Q` points, in canonical order.
    pub fn q_points(&self) -> &[usize] {
        &self.reps
    }

    pub fn p_len(&self) -> usize {
        self.space.factor(self.k).len()
    }

    #[inline]
    pub fn at(&self, p: usize, q: usize) -> usize {
        self.space.with_coord(q, self.k, p)
    }

    pub fn q_leq(&self, a: usize, b: usize) -> bool {
        self.space.leq_except(a, b, self.k)
    }

    /// Pairs `q < q'` of `Q` points.
    pub fn q_strict_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for &a in &self.reps {
            for &b in &self.reps {
                if a != b && self.q_leq(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Pairs `p < p'` of the `P` factor.
    pub fn p_strict_pairs(&self) -> Vec<(usize, usize)> {
        let f = self.space.factor(self.k);
        let n = f.len();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| a != b && f.leq(a, b))
            .collect()
    }

    pub fn p_label(&self, p: usize) -> &str {
        self.space.factor(self.k).label(p)
    }

    /// Label of a `Q` point: its remaining coordinates.
    pub fn q_label(&self, q: usize) -> String {
        let parts: Vec<&str> = (0..self.space.arity())
            .filter(|&j| j != self.k)
            .map(|j| self.space.factor(j).label(self.space.coord(q, j)))
            .collect();
        if parts.len() == 1 {
            parts[0].to_string()
        } else {
            format!("({})", parts.join(","))
        }
    }
}

/// `f(p,q) <= f(p',q)` without `f(p,q') <= f(p',q')`, or the strict analogue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingViolation {
    pub p: usize,
    pub p_hi: usize,
    pub q: usize,
    pub q_hi: usize,
    pub clause: Clause,
}

impl CrossingViolation {
    pub fn render_with(&self, split: &Split<'_>, value: impl Fn(usize) -> String) -> String {
        format!(
            "clause={} p={} p'={} q={} q'={} f(p,q)={} f(p',q)={} f(p,q')={} f(p',q')={}",
            self.clause,
            split.p_label(self.p),
            split.p_label(self.p_hi),
            split.q_label(self.q),
            split.q_label(self.q_hi),
            value(split.at(self.p, self.q)),
            value(split.at(self.p_hi, self.q)),
            value(split.at(self.p, self.q_hi)),
            value(split.at(self.p_hi, self.q_hi)),
        )
    }
}

pub(crate) fn single_crossing_scan<'a, V: Payoff + 'a>(
    split: &Split<'_>,
    value: impl Fn(usize) -> &'a V,
) -> Option<CrossingViolation> {
    let qs = split.q_strict_pairs();
    for (p, p_hi) in split.p_strict_pairs() {
        for &(q, q_hi) in &qs {
            let lo_gain = (value(split.at(p, q)), value(split.at(p_hi, q)));
            let hi_gain = (value(split.at(p, q_hi)), value(split.at(p_hi, q_hi)));
            let clause = if lo_gain.0 <= lo_gain.1 && hi_gain.0 > hi_gain.1 {
                Clause::Weak
            } else if lo_gain.0 < lo_gain.1 && hi_gain.0 >= hi_gain.1 {
                Clause::Strict
            } else {
                continue;
            };
            return Some(CrossingViolation {
                p,
                p_hi,
                q,
                q_hi,
                clause,
            });
        }
    }
    None
}

/// Single crossing of `f` relative to (factor `split`, remaining factors).
pub fn is_single_crossing<V: Payoff>(
    f: &LatticeFunction<V>,
    split: usize,
) -> Result<Verdict<CrossingViolation>, FunctionError> {
    let space = f.product_space()?;
    let s = Split::new(&space, split)?;
    Ok(match single_crossing_scan(&s, |x| f.value(x)) {
        Some(w) => Verdict::Fails(w),
        None => Verdict::Holds,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferencesViolation<V> {
    pub p: usize,
    pub p_hi: usize,
    pub q: usize,
    pub q_hi: usize,
    /// `f(p',q) - f(p,q)`
    pub low_gain: V,
    /// `f(p',q') - f(p,q')`
    pub high_gain: V,
}

impl<V: fmt::Display> DifferencesViolation<V> {
    pub fn render(&self, split: &Split<'_>) -> String {
        format!(
            "p={} p'={} q={} q'={} gain_at_q={} gain_at_q'={}",
            split.p_label(self.p),
            split.p_label(self.p_hi),
            split.q_label(self.q),
            split.q_label(self.q_hi),
            self.low_gain,
            self.high_gain
        )
    }
}

/// `f(p',q') - f(p,q') >= f(p',q) - f(p,q)` for all `p <= p'`, `q <= q'`.
pub fn has_increasing_differences<V: Additive>(
    f: &LatticeFunction<V>,
    split: usize,
) -> Result<Verdict<DifferencesViolation<V>>, FunctionError> {
    if f.codomain().is_labeled() {
        return Err(FunctionError::LabeledCodomainUnsupported);
    }
    let space = f.product_space()?;
    let s = Split::new(&space, split)?;
    let qs = s.q_strict_pairs();
    for (p, p_hi) in s.p_strict_pairs() {
        for &(q, q_hi) in &qs {
            let low_gain = f.value(s.at(p_hi, q)).clone() - f.value(s.at(p, q)).clone();
            let high_gain = f.value(s.at(p_hi, q_hi)).clone() - f.value(s.at(p, q_hi)).clone();
            if high_gain < low_gain {
                return Ok(Verdict::Fails(DifferencesViolation {
                    p,
                    p_hi,
                    q,
                    q_hi,
                    low_gain,
                    high_gain,
                }));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// `{x : f(x) >= level}`
pub fn upper_level_set<V: Payoff>(f: &LatticeFunction<V>, level: &V) -> ElementSet {
    let mut s = f.domain().empty_set();
    for x in 0..f.domain().len() {
        if f.value(x) >= level {
            s.insert(x);
        }
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelViolation<V> {
    pub level: V,
    pub witness: SubsetWitness,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UcsReport<V> {
    pub upper_chain_subcomplete: Verdict<LevelViolation<V>>,
    /// Order upper semicontinuity, which coincides with upper chain
    /// subcompleteness into a complete chain; on a finite domain every chain
    /// is finite and both hold.
    pub order_usc: bool,
    /// Some level set exceeded the exhaustive cap and was checked by
    /// closure under comparable pairs.
    pub by_pairs: bool,
}

/// Checks that every upper level set contains the sup and inf of each of its
/// chains.
pub fn is_upper_chain_subcomplete<V: Payoff>(f: &LatticeFunction<V>) -> UcsReport<V> {
    let d = f.domain();
    let mut by_pairs = false;
    for level in f.image() {
        let set = upper_level_set(f, &level);
        let verdict = match is_chain_subcomplete_exhaustive(d, &set, DEFAULT_EXHAUSTIVE_CAP) {
            Ok(v) => v,
            Err(_) => {
                by_pairs = true;
                is_chain_subcomplete_by_pairs(d, &set)
            }
        };
        if let Verdict::Fails(witness) = verdict {
            return UcsReport {
                upper_chain_subcomplete: Verdict::Fails(LevelViolation { level, witness }),
                order_usc: false,
                by_pairs,
            };
        }
    }
    UcsReport {
        upper_chain_subcomplete: Verdict::Holds,
        order_usc: true,
        by_pairs,
    }
}

/// Every upper level set is closed in `family`.
pub fn is_topologically_usc<V: Payoff>(
    f: &LatticeFunction<V>,
    family: &ClosedFamily,
) -> Result<Verdict<(V, ElementSet)>, FunctionError> {
    if !same_lattice(f.domain(), family.carrier()) {
        return Err(FunctionError::CarrierMismatch);
    }
    for level in f.image() {
        let set = upper_level_set(f, &level);
        if !family.is_closed(&set) {
            return Ok(Verdict::Fails((level, set)));
        }
    }
    Ok(Verdict::Holds)
}

/// A pair `f(y) < f(x)` for which no `x'` and open `U ∋ y` separate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferViolation {
    pub x: usize,
    pub y: usize,
    /// Smallest open set around `y`; it already reaches the best value any
    /// `x'` can offer.
    pub neighborhood: ElementSet,
}

impl TransferViolation {
    pub fn render(&self, d: &FiniteLattice) -> String {
        format!(
            "x={} y={} open_nbhd={}",
            d.label(self.x),
            d.label(self.y),
            d.render_set(&self.neighborhood)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferReport {
    pub transfer_upper: Verdict<TransferViolation>,
    pub transfer_weak_upper: Verdict<TransferViolation>,
}

/// Transfer (weak) upper continuity of `f` relative to `family`.
///
/// For `f(y) < f(x)` we need `x'` and an open `U ∋ y` with `f < f(x')` (resp.
/// `<=`) on `U`. Shrinking `U` only helps, so the minimal open neighborhood
/// of `y` decides; growing `f(x')` only helps, so a maximizer decides.
pub fn transfer_continuity<V: Payoff>(
    f: &LatticeFunction<V>,
    family: &ClosedFamily,
) -> Result<TransferReport, FunctionError> {
    if !same_lattice(f.domain(), family.carrier()) {
        return Err(FunctionError::CarrierMismatch);
    }
    let n = f.domain().len();
    let best = (0..n).map(|x| f.value(x)).max().expect("nonempty domain");
    let nbhd: Vec<ElementSet> = (0..n)
        .map(|y| family.minimal_open_neighborhood(y))
        .collect();
    let local_max: Vec<&V> = nbhd
        .iter()
        .map(|u| {
            u.ones()
                .map(|z| f.value(z))
                .max()
                .expect("neighborhood contains its point")
        })
        .collect();
    let scan = |ok: &dyn Fn(&V) -> bool| {
        for x in 0..n {
            for y in 0..n {
                if f.value(y) < f.value(x) && !ok(local_max[y]) {
                    return Verdict::Fails(TransferViolation {
                        x,
                        y,
                        neighborhood: nbhd[y].clone(),
                    });
                }
            }
        }
        Verdict::Holds
    };
    Ok(TransferReport {
        transfer_upper: scan(&|m: &V| m < best),
        transfer_weak_upper: scan(&|m: &V| m <= best),
    })
}

/// Quasisupermodularity on every `P × C` with `C` a chain of the `Q` role.
///
/// `P × C` is a sublattice of the product, so its meets and joins are the
/// ambient ones. Two points of the product lie in a common `P × C` exactly
/// when their `Q` coordinates are comparable, which is what the scan ranges
/// over.
pub fn chain_restrictions_quasisupermodular<V: Payoff>(
    f: &LatticeFunction<V>,
    split: usize,
) -> Result<Verdict<QsmViolation>, FunctionError> {
    let space = f.product_space()?;
    if split >= space.arity() {
        return Err(FunctionError::BadSplit {
            split,
            factors: space.arity(),
        });
    }
    let d = f.domain();
    let n = d.len();
    let q_comparable =
        |x: usize, y: usize| space.leq_except(x, y, split) || space.leq_except(y, x, split);
    for x in 0..n {
        for y in 0..n {
            if !q_comparable(x, y) {
                continue;
            }
            let (m, j) = (d.meet(x, y), d.join(x, y));
            if let Some(clause) =
                qsm_clause_violated(f.value(x), f.value(m), f.value(j), f.value(y))
            {
                return Ok(Verdict::Fails(QsmViolation {
                    x,
                    y,
                    meet: m,
                    join: j,
                    clause,
                }));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// A section `f(·, q)` that fails quasisupermodularity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionViolation {
    /// Representative joint index of the fixed `Q` point.
    pub q: usize,
    pub violation: QsmViolation,
}

/// Quasisupermodularity of every section `f(·, q)` over factor `split`.
pub fn sections_quasisupermodular<V: Payoff>(
    f: &LatticeFunction<V>,
    split: usize,
) -> Result<Verdict<SectionViolation>, FunctionError> {
    let space = f.product_space()?;
    let s = Split::new(&space, split)?;
    let p = space.factor(split);
    for &q in s.q_points() {
        let found = qsm_scan(
            p.len(),
            |a, b| p.meet(a, b),
            |a, b| p.join(a, b),
            |a| f.value(s.at(a, q)),
        );
        if let Some(violation) = found {
            return Ok(Verdict::Fails(SectionViolation { q, violation }));
        }
    }
    Ok(Verdict::Holds)
}

/// Both halves of the chain-restriction lemma on one function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictionReport {
    pub chain_restrictions: Verdict<QsmViolation>,
    pub single_crossing: Verdict<CrossingViolation>,
    pub sections: Verdict<SectionViolation>,
    pub joint: Verdict<QsmViolation>,
}

impl RestrictionReport {
    /// The hypothesis forces both conclusions.
    pub fn consistent(&self) -> bool {
        !self.chain_restrictions.holds() || (self.single_crossing.holds() && self.sections.holds())
    }
}

pub fn restriction_report<V: Payoff>(
    f: &LatticeFunction<V>,
    split: usize,
) -> Result<RestrictionReport, FunctionError> {
    Ok(RestrictionReport {
        chain_restrictions: chain_restrictions_quasisupermodular(f, split)?,
        single_crossing: is_single_crossing(f, split)?,
        sections: sections_quasisupermodular(f, split)?,
        joint: is_quasisupermodular(f),
    })
}
