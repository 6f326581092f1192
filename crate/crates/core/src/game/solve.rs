use std::ops::Deref;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use super::{Game, JointStrategy};
use crate::argmax::{greatest_in, least_in, Correspondence};
use crate::error::{GameError, MissingBound};
use crate::lattice::ElementSet;
use crate::props::{
    qsm_scan, single_crossing_scan, transfer_continuity, CrossingViolation, QsmViolation, Split,
};
use crate::value::{ChainCodomain, Payoff};
use crate::verdict::Verdict;

/// Default bound on the number of joint strategies scanned by enumeration.
pub const ENUMERATION_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GameViolationKind {
    /// The section `f_i(·, x_{-i})` at opponents' profile `at` is not
    /// quasisupermodular; indices in the violation refer to `S_i`.
    Section {
        at: JointStrategy,
        violation: QsmViolation,
    },
    /// Single crossing fails on the split `(S_i, S_{-i})`.
    Crossing(CrossingViolation),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameViolation {
    pub player: usize,
    pub kind: GameViolationKind,
}

impl GameViolation {
    pub fn render<V: Payoff>(&self, g: &Game<V>) -> String {
        let i = self.player;
        match &self.kind {
            GameViolationKind::Section { at, violation } => format!(
                "player={} check=section-qsm at={} {}",
                g.players[i],
                g.others_label(i, *at),
                violation.render(&g.section(i, *at))
            ),
            GameViolationKind::Crossing(c) => {
                let split = Split::new(&g.space, i).expect("player index is a factor");
                format!(
                    "player={} check=single-crossing {}",
                    g.players[i],
                    c.render_with(&split, |x| g.codomains[i].render(&g.payoffs[i][x]))
                )
            }
        }
    }
}

fn section_scan<V: Payoff>(g: &Game<V>, i: usize, split: &Split<'_>) -> Option<GameViolation> {
    let s = g.strategies(i);
    let table = &g.payoffs[i];
    split.q_points().iter().find_map(|&q| {
        qsm_scan(
            s.len(),
            |a, b| s.meet(a, b),
            |a, b| s.join(a, b),
            |p| &table[split.at(p, q)],
        )
        .map(|violation| GameViolation {
            player: i,
            kind: GameViolationKind::Section {
                at: JointStrategy(q),
                violation,
            },
        })
    })
}

/// The first failure of player `i`'s hypotheses: sections before crossing.
pub fn player_violation<V: Payoff>(g: &Game<V>, i: usize) -> Option<GameViolation> {
    let split = Split::new(&g.space, i).expect("player index is a factor");
    section_scan(g, i, &split).or_else(|| {
        single_crossing_scan(&split, |x| &g.payoffs[i][x]).map(|c| GameViolation {
            player: i,
            kind: GameViolationKind::Crossing(c),
        })
    })
}

/// Sectionwise quasisupermodularity and single crossing for every player.
/// The witness is the first failure in player order, sections before
/// crossing.
pub fn validate_game<V: Payoff>(g: &Game<V>) -> Verdict<GameViolation> {
    let found: Vec<Option<GameViolation>> = (0..g.num_players())
        .into_par_iter()
        .map(|i| player_violation(g, i))
        .collect();
    match found.into_iter().flatten().next() {
        Some(v) => Verdict::Fails(v),
        None => Verdict::Holds,
    }
}

/// A game known to pass [`validate_game`].
#[derive(Debug, Clone, Copy)]
pub struct ValidatedGame<'g, V> {
    game: &'g Game<V>,
}

impl<'g, V: Payoff> ValidatedGame<'g, V> {
    pub fn new(game: &'g Game<V>) -> Result<Self, GameError> {
        match validate_game(game) {
            Verdict::Holds => Ok(ValidatedGame { game }),
            Verdict::Fails(w) => Err(GameError::NotValidated(w.render(game))),
        }
    }

    pub fn game(&self) -> &'g Game<V> {
        self.game
    }
}

impl<V> Deref for ValidatedGame<'_, V> {
    type Target = Game<V>;

    fn deref(&self) -> &Game<V> {
        self.game
    }
}

/// `argmax_{y_i} f_i(y_i, x_{-i})` as a subset of `S_i`.
pub fn best_response<V: Payoff>(g: &Game<V>, i: usize, x: JointStrategy) -> ElementSet {
    let n = g.strategies(i).len();
    let vals: Vec<&V> = (0..n)
        .map(|p| &g.payoffs[i][g.space.with_coord(x.0, i, p)])
        .collect();
    let best = vals
        .iter()
        .copied()
        .max()
        .expect("strategy lattices are nonempty");
    let mut out = FixedBitSet::with_capacity(n);
    for (p, v) in vals.into_iter().enumerate() {
        if v == best {
            out.insert(p);
        }
    }
    out
}

/// No player gains by a unilateral deviation.
pub fn is_nash<V: Payoff>(g: &Game<V>, x: JointStrategy) -> bool {
    (0..g.num_players()).all(|i| {
        let here = &g.payoffs[i][x.0];
        (0..g.strategies(i).len()).all(|p| g.payoffs[i][g.space.with_coord(x.0, i, p)] <= *here)
    })
}

/// All Nash equilibria in canonical joint order.
pub fn enumerate_nash<V: Payoff>(g: &Game<V>, cap: usize) -> Result<Vec<JointStrategy>, GameError> {
    let size = g.space.size();
    if size > cap {
        return Err(GameError::StateSpaceTooLarge { size, cap });
    }
    Ok((0..size)
        .into_par_iter()
        .map(JointStrategy)
        .filter(|&x| is_nash(g, x))
        .collect())
}

/// Player `i`'s best responses as a correspondence on the joint space.
pub fn best_response_correspondence<V: Payoff>(g: &Game<V>, i: usize) -> Correspondence {
    let values = (0..g.space.size())
        .map(|x| best_response(g, i, JointStrategy(x)))
        .collect();
    Correspondence::new(Arc::new(g.space.clone()), g.strategies(i).clone(), values)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TarskiResult {
    pub largest: JointStrategy,
    pub least: JointStrategy,
    /// Strict moves taken from the top and from the bottom.
    pub iterations_down: usize,
    pub iterations_up: usize,
}

fn extreme_response<V: Payoff>(
    g: &Game<V>,
    x: JointStrategy,
    greatest: bool,
) -> Result<JointStrategy, GameError> {
    let mut coords = Vec::with_capacity(g.num_players());
    for i in 0..g.num_players() {
        let br = best_response(g, i, x);
        let s = g.strategies(i);
        let pick = if greatest {
            greatest_in(s, &br)
        } else {
            least_in(s, &br)
        };
        coords.push(pick.ok_or_else(|| GameError::NoExtremeResponse {
            player: g.players[i].clone(),
            at: g.joint_label(x),
            which: if greatest { "greatest" } else { "least" },
        })?);
    }
    Ok(JointStrategy(g.space.index(&coords)))
}

fn iterate<V: Payoff>(
    g: &Game<V>,
    start: usize,
    greatest: bool,
) -> Result<(JointStrategy, usize), GameError> {
    let bound = g.space.height() + 1;
    let mut x = JointStrategy(start);
    for moves in 0..=bound {
        let next = extreme_response(g, x, greatest)?;
        if next == x {
            return Ok((x, moves));
        }
        x = next;
    }
    Err(GameError::NoFixedPoint(bound))
}

/// Largest and least equilibria by iterating the greatest (least) best
/// response from the top (bottom) of the joint space.
pub fn tarski_extremes<V: Payoff>(g: &ValidatedGame<'_, V>) -> Result<TarskiResult, GameError> {
    let (largest, iterations_down) = iterate(g, g.space.top(), true)?;
    let (least, iterations_up) = iterate(g, g.space.bottom(), false)?;
    Ok(TarskiResult {
        largest,
        least,
        iterations_down,
        iterations_up,
    })
}

/// A pair of equilibria whose meet or join in the joint space is not an
/// equilibrium.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SublatticeGap {
    pub a: JointStrategy,
    pub b: JointStrategy,
    /// `Glb` for the meet, `Lub` for the join.
    pub bound: MissingBound,
    pub point: JointStrategy,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NashReport {
    pub equilibria: Vec<JointStrategy>,
    pub is_complete_lattice: bool,
    /// A pair lacking a bound within the equilibrium set.
    pub completeness_gap: Option<(JointStrategy, JointStrategy, MissingBound)>,
    pub largest: Option<JointStrategy>,
    pub least: Option<JointStrategy>,
    pub sublattice_gap: Option<SublatticeGap>,
}

impl NashReport {
    pub fn render_set<V: Payoff>(&self, g: &Game<V>) -> String {
        let parts: Vec<String> = self.equilibria.iter().map(|&x| g.joint_label(x)).collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// Enumerates equilibria and decides their order structure: completeness in
/// the induced order and closure under the joint meet and join.
pub fn verify_equilibrium_structure<V: Payoff>(
    g: &Game<V>,
    cap: usize,
) -> Result<NashReport, GameError> {
    let eq = enumerate_nash(g, cap)?;
    let m = eq.len();
    let space = &g.space;
    // above[a] / below[a]: positions in `eq` of the equilibria >= / <= eq[a]
    let mut above = vec![FixedBitSet::with_capacity(m); m];
    let mut below = vec![FixedBitSet::with_capacity(m); m];
    for a in 0..m {
        for b in 0..m {
            if space.leq(eq[a].0, eq[b].0) {
                above[a].insert(b);
                below[b].insert(a);
            }
        }
    }
    let extreme = |sets: &[FixedBitSet], bound: &FixedBitSet| {
        bound.ones().find(|&u| bound.is_subset(&sets[u]))
    };
    let mut completeness_gap = None;
    'pairs: for a in 0..m {
        for b in a + 1..m {
            let mut ub = above[a].clone();
            ub.intersect_with(&above[b]);
            if extreme(&above, &ub).is_none() {
                completeness_gap = Some((eq[a], eq[b], MissingBound::Lub));
                break 'pairs;
            }
            let mut lb = below[a].clone();
            lb.intersect_with(&below[b]);
            if extreme(&below, &lb).is_none() {
                completeness_gap = Some((eq[a], eq[b], MissingBound::Glb));
                break 'pairs;
            }
        }
    }
    let everything = {
        let mut s = FixedBitSet::with_capacity(m);
        s.insert_range(..);
        s
    };
    let largest = extreme(&below, &everything).map(|k| eq[k]);
    let least = extreme(&above, &everything).map(|k| eq[k]);

    let mut sublattice_gap = None;
    'gap: for a in 0..m {
        for b in a + 1..m {
            for (bound, point) in [
                (MissingBound::Glb, space.meet(eq[a].0, eq[b].0)),
                (MissingBound::Lub, space.join(eq[a].0, eq[b].0)),
            ] {
                if eq.binary_search(&JointStrategy(point)).is_err() {
                    sublattice_gap = Some(SublatticeGap {
                        a: eq[a],
                        b: eq[b],
                        bound,
                        point: JointStrategy(point),
                    });
                    break 'gap;
                }
            }
        }
    }
    Ok(NashReport {
        is_complete_lattice: m > 0 && completeness_gap.is_none(),
        completeness_gap,
        largest,
        least,
        sublattice_gap,
        equilibria: eq,
    })
}

/// Which hypotheses of the equilibrium theorems an instance certifies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypotheses {
    pub validated: Verdict<GameViolation>,
    /// Every codomain is the rational line rather than a labeled chain.
    pub real_valued: bool,
    /// Every player carries a topology.
    pub topologies_given: bool,
    /// Every section is transfer weakly upper continuous in its player's
    /// topology; `None` when some topology is missing.
    pub sections_transfer_weak_upper: Option<bool>,
}

impl Hypotheses {
    /// Quasisupermodular sections with single crossing, chain-valued payoffs.
    pub fn order_theorem(&self) -> bool {
        self.validated.holds()
    }

    /// The order hypotheses plus real payoffs and continuity in the given
    /// topologies.
    pub fn topological_theorem(&self) -> bool {
        self.validated.holds()
            && self.real_valued
            && self.sections_transfer_weak_upper == Some(true)
    }
}

pub fn hypotheses<V: Payoff>(g: &Game<V>) -> Hypotheses {
    let real_valued = g
        .codomains
        .iter()
        .all(|c| matches!(c, ChainCodomain::Rational));
    let topologies_given = g.topologies.iter().all(Option::is_some);
    let sections_transfer_weak_upper = topologies_given.then(|| {
        (0..g.num_players()).all(|i| {
            let family = g.topologies[i].as_ref().expect("checked above");
            let split = Split::new(&g.space, i).expect("player index is a factor");
            split.q_points().iter().all(|&q| {
                transfer_continuity(&g.section(i, JointStrategy(q)), family)
                    .map(|r| r.transfer_weak_upper.holds())
                    .unwrap_or(false)
            })
        })
    });
    Hypotheses {
        validated: validate_game(g),
        real_valued,
        topologies_given,
        sections_transfer_weak_upper,
    }
}
