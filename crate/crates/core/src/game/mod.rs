//! Finite games with lattice strategy sets and chain-valued payoffs.

mod solve;

use std::collections::HashSet;
use std::sync::Arc;

pub use solve::{
    best_response, best_response_correspondence, enumerate_nash, hypotheses, is_nash,
    player_violation, tarski_extremes, validate_game, verify_equilibrium_structure, GameViolation,
    GameViolationKind, Hypotheses, NashReport, SublatticeGap, TarskiResult, ValidatedGame,
    ENUMERATION_CAP,
};

use crate::error::{FunctionError, GameError};
use crate::function::LatticeFunction;
use crate::lattice::{product_lattice, FiniteLattice, ProductSpace};
use crate::topology::ClosedFamily;
use crate::value::{ChainCodomain, Payoff};

/// A point of the joint strategy space, as its canonical joint index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JointStrategy(pub usize);

/// A finite game: players in declaration order, a strategy lattice per
/// player, and per-player payoff tables over the joint strategy space.
#[derive(Debug, Clone)]
pub struct Game<V> {
    players: Vec<String>,
    space: ProductSpace,
    codomains: Vec<ChainCodomain>,
    payoffs: Vec<Vec<V>>,
    topologies: Vec<Option<ClosedFamily>>,
}

impl<V: Payoff> Game<V> {
    /// `payoffs[i][x]` is player `i`'s payoff at joint index `x`.
    pub fn new(
        players: Vec<String>,
        strategies: Vec<Arc<FiniteLattice>>,
        codomains: Vec<ChainCodomain>,
        payoffs: Vec<Vec<V>>,
    ) -> Result<Self, GameError> {
        let structural = |m: String| Err(GameError::Structural(m));
        if players.is_empty() {
            return structural("a game needs at least one player".into());
        }
        let mut seen = HashSet::new();
        if let Some(p) = players.iter().find(|p| !seen.insert(p.as_str())) {
            return structural(format!("duplicate player `{p}`"));
        }
        let n = players.len();
        if strategies.len() != n || codomains.len() != n || payoffs.len() != n {
            return structural(
                "strategies, codomains and payoffs need one entry per player".into(),
            );
        }
        let space = ProductSpace::new(strategies)?;
        for (i, table) in payoffs.iter().enumerate() {
            if table.len() != space.size() {
                return structural(format!(
                    "payoff of `{}` has {} entries, the joint strategy space has {}",
                    players[i],
                    table.len(),
                    space.size()
                ));
            }
            if let Some(allowed) = codomains[i].positions::<V>() {
                if let Some((x, v)) = table.iter().enumerate().find(|(_, v)| !allowed.contains(v)) {
                    return Err(FunctionError::NotInCodomain {
                        element: space.label(x),
                        value: v.to_string(),
                    }
                    .into());
                }
            }
        }
        Ok(Game {
            players,
            space,
            codomains,
            payoffs,
            topologies: vec![None; n],
        })
    }

    /// Attaches a topology to one player's strategy lattice.
    pub fn with_topology(mut self, player: usize, family: ClosedFamily) -> Result<Self, GameError> {
        if **family.carrier() != *self.space.factor(player) {
            return Err(GameError::Structural(format!(
                "topology of `{}` is not over its strategy lattice",
                self.players[player]
            )));
        }
        self.topologies[player] = Some(family);
        Ok(self)
    }

    pub fn players(&self) -> &[String] {
        &self.players
    }

    pub fn num_players(&self) -> usize {
        self.players.len()
    }

    pub fn player_index(&self, name: &str) -> Option<usize> {
        self.players.iter().position(|p| p == name)
    }

    pub fn space(&self) -> &ProductSpace {
        &self.space
    }

    pub fn strategies(&self, i: usize) -> &Arc<FiniteLattice> {
        &self.space.factors()[i]
    }

    pub fn codomain(&self, i: usize) -> &ChainCodomain {
        &self.codomains[i]
    }

    pub fn topology(&self, i: usize) -> Option<&ClosedFamily> {
        self.topologies[i].as_ref()
    }

    pub fn payoff_table(&self, i: usize) -> &[V] {
        &self.payoffs[i]
    }

    #[inline]
    pub fn payoff(&self, i: usize, x: JointStrategy) -> &V {
        &self.payoffs[i][x.0]
    }

    /// Joint strategy from one label per player, in player order.
    pub fn joint<S: AsRef<str>>(&self, labels: &[S]) -> Option<JointStrategy> {
        if labels.len() != self.num_players() {
            return None;
        }
        let coords: Option<Vec<usize>> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| self.strategies(i).index_of(l.as_ref()))
            .collect();
        Some(JointStrategy(self.space.index(&coords?)))
    }

    /// `(a,b,...)`
    pub fn joint_label(&self, x: JointStrategy) -> String {
        self.space.label(x.0)
    }

    /// Player's own coordinate label.
    pub fn own_label(&self, i: usize, x: JointStrategy) -> &str {
        self.strategies(i).label(self.space.coord(x.0, i))
    }

    /// Label of the opponents' profile `x_{-i}`.
    pub fn others_label(&self, i: usize, x: JointStrategy) -> String {
        let parts: Vec<String> = (0..self.num_players())
            .filter(|&j| j != i)
            .map(|j| format!("{}={}", self.players[j], self.own_label(j, x)))
            .collect();
        format!("[{}]", parts.join(","))
    }

    /// `f_i(·, x_{-i})` as a function on `S_i`.
    pub fn section(&self, i: usize, x: JointStrategy) -> LatticeFunction<V> {
        let s = self.strategies(i).clone();
        let table = (0..s.len())
            .map(|p| self.payoffs[i][self.space.with_coord(x.0, i, p)].clone())
            .collect();
        LatticeFunction::new(s, self.codomains[i].clone(), table)
            .expect("section of a valid payoff")
    }

    /// Player `i`'s payoff as a function on the materialized product lattice.
    pub fn payoff_function(&self, i: usize) -> Result<LatticeFunction<V>, GameError> {
        let domain = Arc::new(product_lattice(self.space.factors())?);
        Ok(LatticeFunction::new(
            domain,
            self.codomains[i].clone(),
            self.payoffs[i].clone(),
        )?)
    }

    /// The same game with player `i`'s payoff table replaced.
    pub fn with_payoff(
        &self,
        i: usize,
        codomain: ChainCodomain,
        table: Vec<V>,
    ) -> Result<Self, GameError> {
        let mut codomains = self.codomains.clone();
        codomains[i] = codomain;
        let mut payoffs = self.payoffs.clone();
        payoffs[i] = table;
        let mut g = Game::new(
            self.players.clone(),
            self.space.factors().to_vec(),
            codomains,
            payoffs,
        )?;
        g.topologies = self.topologies.clone();
        Ok(g)
    }
}

impl<V: PartialEq> PartialEq for Game<V> {
    fn eq(&self, other: &Self) -> bool {
        self.players == other.players
            && self.space.factors().len() == other.space.factors().len()
            && self
                .space
                .factors()
                .iter()
                .zip(other.space.factors())
                .all(|(a, b)| **a == **b)
            && self.codomains == other.codomains
            && self.payoffs == other.payoffs
            && self.topologies.len() == other.topologies.len()
            && self
                .topologies
                .iter()
                .zip(&other.topologies)
                .all(|(a, b)| match (a, b) {
                    (None, None) => true,
                    (Some(a), Some(b)) => {
                        a.kind() == b.kind() && a.listed_sets() == b.listed_sets()
                    }
                    _ => false,
                })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structural_errors() {
        let c = Arc::new(FiniteLattice::chain(&["0", "1"]).unwrap());
        assert!(matches!(
            Game::<i64>::new(vec![], vec![], vec![], vec![]),
            Err(GameError::Structural(_))
        ));
        assert!(matches!(
            Game::new(
                vec!["p".into(), "p".into()],
                vec![c.clone(), c.clone()],
                vec![ChainCodomain::Rational; 2],
                vec![vec![0i64; 4]; 2]
            ),
            Err(GameError::Structural(_))
        ));
        assert!(matches!(
            Game::new(
                vec!["p".into()],
                vec![c.clone()],
                vec![ChainCodomain::Rational],
                vec![vec![0i64; 3]]
            ),
            Err(GameError::Structural(_))
        ));
        let g = Game::new(
            vec!["p".into()],
            vec![c.clone()],
            vec![ChainCodomain::Rational],
            vec![vec![0i64, 1]],
        )
        .unwrap();
        assert_eq!(g.joint(&["1"]), Some(JointStrategy(1)));
        assert_eq!(g.joint_label(JointStrategy(1)), "(1)");
        assert!(g.with_topology(0, ClosedFamily::discrete(c)).is_ok());
    }
}
