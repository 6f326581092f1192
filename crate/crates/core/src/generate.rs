//! Seeded random lattices, payoffs and games.
//!
//! The random source is xoshiro256++ seeded through `seed_from_u64`, and all
//! draws go through 64-bit ranges, so a spec produces the same instance on
//! every platform.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::error::GenerateError;
use crate::format::Document;
use crate::function::LatticeFunction;
use crate::game::{player_violation, Game};
use crate::lattice::{product_lattice, FiniteLattice, FinitePoset, ProductSpace};
use crate::props::{is_quasisupermodular, is_supermodular};
use crate::value::ChainCodomain;
use crate::{Rational, RationalFunction, RationalGame};

/// Largest lattice a spec may ask for.
pub const LATTICE_CAP: usize = 256;
/// Largest joint strategy space of a generated game.
pub const GAME_CAP: usize = 10_000;
/// Default number of candidates tried by the rejection strategy.
pub const REJECTION_BUDGET: usize = 100_000;

pub type GenRng = Xoshiro256PlusPlus;

pub fn rng_from_seed(seed: u64) -> GenRng {
    Xoshiro256PlusPlus::seed_from_u64(seed)
}

/// Uniform draw from `0..n`.
pub fn below(rng: &mut GenRng, n: usize) -> usize {
    rng.random_range(0..n as u64) as usize
}

/// Uniform draw from `lo..=hi`.
pub fn between(rng: &mut GenRng, lo: i64, hi: i64) -> i64 {
    rng.random_range(lo..=hi)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Chain {
        n: usize,
    },
    Grid {
        dims: Vec<usize>,
    },
    DiamondMk {
        k: usize,
    },
    /// Meet/join closure of a random subset of a grid whose sides are drawn
    /// up to `dims`.
    RandomClosure {
        dims: Vec<usize>,
    },
    /// A uniformly drawn isomorphism class of lattices with 2 to `max`
    /// elements.
    Mixed {
        max: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PayoffStrategy {
    SupermodularThenTransform,
    Rejection { levels: usize, budget: usize },
}

/// What to generate. With `players` set the result is a game whose strategy
/// lattices are each drawn from `family`; otherwise a lattice, or a function
/// on it when `payoff` is set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSpec {
    pub seed: u64,
    pub family: Family,
    pub payoff: Option<PayoffStrategy>,
    pub players: Option<usize>,
}

fn dims_text(d: &[usize]) -> String {
    d.iter()
        .map(|k| k.to_string())
        .collect::<Vec<_>>()
        .join("x")
}

impl fmt::Display for GenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "seed={}", self.seed)?;
        match &self.family {
            Family::Chain { n } => write!(f, ",family=chain,n={n}")?,
            Family::Grid { dims } => write!(f, ",family=grid,dims={}", dims_text(dims))?,
            Family::DiamondMk { k } => write!(f, ",family=diamond_mk,k={k}")?,
            Family::RandomClosure { dims } => write!(
                f,
                ",family=random_meet_join_closure,dims={}",
                dims_text(dims)
            )?,
            Family::Mixed { max } => write!(f, ",family=mixed,max={max}")?,
        }
        match self.payoff {
            None => {}
            Some(PayoffStrategy::SupermodularThenTransform) => {
                write!(f, ",payoff=supermodular_then_transform")?
            }
            Some(PayoffStrategy::Rejection { levels, budget }) => {
                write!(f, ",payoff=rejection,levels={levels},budget={budget}")?
            }
        }
        if let Some(p) = self.players {
            write!(f, ",players={p}")?;
        }
        Ok(())
    }
}

impl FromStr for GenSpec {
    type Err = GenerateError;

    /// `key=value` pairs separated by commas, e.g.
    /// `seed=1,family=diamond_mk,k=5`.
    fn from_str(s: &str) -> Result<Self, GenerateError> {
        let bad = |m: String| GenerateError::InvalidSpec(m);
        let mut kv = std::collections::HashMap::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| bad(format!("`{part}` is not key=value")))?;
            if kv
                .insert(k.trim().to_ascii_lowercase(), v.trim().to_string())
                .is_some()
            {
                return Err(bad(format!("`{k}` given twice")));
            }
        }
        let mut take = |k: &str| kv.remove(k);
        let num = |k: &str, v: Option<String>, default: usize| -> Result<usize, GenerateError> {
            v.map_or(Ok(default), |t| {
                t.parse()
                    .map_err(|_| bad(format!("`{k}` expects a number, got `{t}`")))
            })
        };
        let dims = |v: Option<String>| -> Result<Vec<usize>, GenerateError> {
            let t = v.unwrap_or_else(|| "3x3".into());
            t.split('x')
                .map(|d| {
                    d.parse::<usize>()
                        .map_err(|_| bad(format!("bad dims `{t}`")))
                })
                .collect()
        };
        let seed = take("seed")
            .map(|t| t.parse::<u64>().map_err(|_| bad(format!("bad seed `{t}`"))))
            .transpose()?
            .unwrap_or(0);
        let family_name = take("family")
            .unwrap_or_else(|| "chain".into())
            .to_ascii_lowercase();
        let family = match family_name.as_str() {
            "chain" => Family::Chain {
                n: num("n", take("n"), 3)?,
            },
            "grid" => Family::Grid {
                dims: dims(take("dims"))?,
            },
            "diamond_mk" => Family::DiamondMk {
                k: num("k", take("k"), 2)?,
            },
            "random_meet_join_closure" => Family::RandomClosure {
                dims: dims(take("dims"))?,
            },
            "mixed" => Family::Mixed {
                max: num("max", take("max"), 6)?,
            },
            other => return Err(bad(format!("unknown family `{other}`"))),
        };
        let payoff = match take("payoff").map(|p| p.to_ascii_lowercase()).as_deref() {
            None => None,
            Some("supermodular_then_transform") => Some(PayoffStrategy::SupermodularThenTransform),
            Some("rejection") => Some(PayoffStrategy::Rejection {
                levels: num("levels", take("levels"), 3)?,
                budget: num("budget", take("budget"), REJECTION_BUDGET)?,
            }),
            Some(other) => return Err(bad(format!("unknown payoff strategy `{other}`"))),
        };
        let players = take("players")
            .map(|t| num("players", Some(t), 0))
            .transpose()?;
        if let Some(k) = kv.keys().min() {
            return Err(bad(format!("unknown key `{k}`")));
        }
        let spec = GenSpec {
            seed,
            family,
            payoff,
            players,
        };
        spec.check()?;
        Ok(spec)
    }
}

impl GenSpec {
    fn check(&self) -> Result<(), GenerateError> {
        let bad = |m: &str| Err(GenerateError::InvalidSpec(m.into()));
        let cap = |size: usize| {
            if size > LATTICE_CAP {
                Err(GenerateError::CapExceeded {
                    size,
                    cap: LATTICE_CAP,
                })
            } else {
                Ok(())
            }
        };
        match &self.family {
            Family::Chain { n } if *n == 0 => return bad("a chain needs n >= 1"),
            Family::Chain { n } => cap(*n)?,
            Family::Grid { dims } | Family::RandomClosure { dims } => {
                if dims.is_empty() || dims.contains(&0) {
                    return bad("grid sides must be positive");
                }
                cap(dims
                    .iter()
                    .try_fold(1usize, |a, &d| a.checked_mul(d))
                    .unwrap_or(usize::MAX))?
            }
            Family::DiamondMk { k } => cap(k + 2)?,
            Family::Mixed { max } if !(2..=8).contains(max) => {
                return bad("mixed lattices need 2 <= max <= 8")
            }
            Family::Mixed { .. } => {}
        }
        if let Some(PayoffStrategy::Rejection { levels, budget }) = self.payoff {
            if levels == 0 || budget == 0 {
                return bad("rejection needs levels >= 1 and budget >= 1");
            }
        }
        match self.players {
            Some(0) => bad("a game needs at least one player"),
            Some(p) if p > 4 => Err(GenerateError::CapExceeded { size: p, cap: 4 }),
            _ => Ok(()),
        }
    }
}

/// Builds the instance a spec describes, re-verifying every payoff.
pub fn generate(spec: &GenSpec) -> Result<Document, GenerateError> {
    spec.check()?;
    let mut rng = rng_from_seed(spec.seed);
    match (spec.players, spec.payoff) {
        (None, None) => Ok(Document::Lattice(lattice_from_family(
            &spec.family,
            &mut rng,
        )?)),
        (None, Some(strategy)) => {
            let l = Arc::new(lattice_from_family(&spec.family, &mut rng)?);
            Ok(Document::Function(random_function(l, strategy, &mut rng)?))
        }
        (Some(players), strategy) => Ok(Document::Game(random_game(
            players,
            &spec.family,
            strategy.unwrap_or(PayoffStrategy::SupermodularThenTransform),
            &mut rng,
        )?)),
    }
}

// ---- lattices

pub fn chain(n: usize) -> FiniteLattice {
    let labels: Vec<String> = (0..n).map(|k| k.to_string()).collect();
    FiniteLattice::chain(&labels).expect("a chain is a lattice")
}

pub fn grid(dims: &[usize]) -> Result<FiniteLattice, GenerateError> {
    let factors: Vec<Arc<FiniteLattice>> = dims.iter().map(|&d| Arc::new(chain(d))).collect();
    Ok(product_lattice(&factors)?)
}

/// `M_k`: a bottom `0`, a top `1` and `k` pairwise incomparable atoms `a1..ak`.
pub fn diamond_mk(k: usize) -> FiniteLattice {
    let atoms: Vec<String> = (1..=k).map(|i| format!("a{i}")).collect();
    let mut elements = vec!["0".to_string(), "1".to_string()];
    elements.extend(atoms.iter().cloned());
    let mut covers: Vec<(String, String)> = atoms
        .iter()
        .flat_map(|a| [("0".to_string(), a.clone()), (a.clone(), "1".to_string())])
        .collect();
    if k == 0 {
        covers.push(("0".into(), "1".into()));
    }
    FiniteLattice::from_covers(&elements, &covers).expect("M_k is a lattice")
}

pub fn random_closure(dims: &[usize], rng: &mut GenRng) -> Result<FiniteLattice, GenerateError> {
    let sides: Vec<usize> = dims.iter().map(|&d| 1 + below(rng, d)).collect();
    let g = grid(&sides)?;
    let n = g.len();
    let mut set: BTreeSet<usize> = (0..n).filter(|_| rng.random_bool(0.5)).collect();
    if set.is_empty() {
        set.insert(below(rng, n));
    }
    loop {
        let items: Vec<usize> = set.iter().copied().collect();
        let before = set.len();
        for &a in &items {
            for &b in &items {
                set.insert(g.meet(a, b));
                set.insert(g.join(a, b));
            }
        }
        if set.len() == before {
            break;
        }
    }
    let members: Vec<usize> = set.into_iter().collect();
    let labels = members.iter().map(|&x| g.label(x).to_string()).collect();
    let poset = FinitePoset::from_relation(labels, |a, b| g.leq(members[a], members[b]))?;
    Ok(FiniteLattice::from_poset(poset)?)
}

pub fn lattice_from_family(
    family: &Family,
    rng: &mut GenRng,
) -> Result<FiniteLattice, GenerateError> {
    match family {
        Family::Chain { n } => Ok(chain(*n)),
        Family::Grid { dims } => grid(dims),
        Family::DiamondMk { k } => Ok(diamond_mk(*k)),
        Family::RandomClosure { dims } => random_closure(dims, rng),
        Family::Mixed { max } => {
            let n = 2 + below(rng, max - 1);
            let all = lattices_of_size(n);
            Ok(all[below(rng, all.len())].clone())
        }
    }
}

/// Cached [`enumerate_lattices`].
pub fn lattices_of_size(n: usize) -> &'static [FiniteLattice] {
    static CACHE: [OnceLock<Vec<FiniteLattice>>; 9] = [const { OnceLock::new() }; 9];
    CACHE[n].get_or_init(|| enumerate_lattices(n))
}

/// One lattice per isomorphism class on `n` elements, labeled `x0..`, with
/// `x0` the bottom and the natural order of labels a linear extension.
///
/// Lattices are bounded, so only the order among the `n - 2` inner elements
/// varies; each candidate relation is upper triangular and transitive.
pub fn enumerate_lattices(n: usize) -> Vec<FiniteLattice> {
    assert!(
        (1..=8).contains(&n),
        "enumeration is limited to 1..=8 elements"
    );
    let labels: Vec<String> = (0..n).map(|k| format!("x{k}")).collect();
    if n <= 2 {
        return vec![FiniteLattice::chain(&labels).expect("chain")];
    }
    let inner = n - 2;
    let pairs: Vec<(usize, usize)> = (0..inner)
        .flat_map(|a| (a + 1..inner).map(move |b| (a, b)))
        .collect();
    let perms = permutations(inner);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let mut lt = vec![vec![false; inner]; inner];
        for (k, &(a, b)) in pairs.iter().enumerate() {
            lt[a][b] = mask >> k & 1 == 1;
        }
        let transitive = (0..inner)
            .all(|a| (0..inner).all(|b| !lt[a][b] || (0..inner).all(|c| !lt[b][c] || lt[a][c])));
        if !transitive {
            continue;
        }
        let leq = |a: usize, b: usize| {
            a == b
                || a == 0
                || b == n - 1
                || (a > 0 && b < n - 1 && b > 0 && a < n - 1 && lt[a - 1][b - 1])
        };
        let Ok(poset) = FinitePoset::from_relation(labels.clone(), leq) else {
            continue;
        };
        let Ok(lattice) = FiniteLattice::from_poset(poset) else {
            continue;
        };
        // canonical form: least relation code over relabelings of the inner elements
        let code = perms
            .iter()
            .map(|p| {
                let mut c = 0u64;
                for a in 0..inner {
                    for b in 0..inner {
                        if lt[a][b] {
                            c |= 1 << (p[a] * inner + p[b]);
                        }
                    }
                }
                c
            })
            .min()
            .expect("at least the identity");
        if seen.insert(code) {
            out.push(lattice);
        }
    }
    out
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

// ---- payoffs

/// A random supermodular table: a nonnegative combination of the indicators
/// `1[x >= a]` and `1[x <= b]`, plus an arbitrary term per chain coordinate
/// when a product structure is given.
pub fn supermodular_table(
    n: usize,
    leq: impl Fn(usize, usize) -> bool,
    space: Option<&ProductSpace>,
    rng: &mut GenRng,
) -> Vec<Rational> {
    let mut table = vec![0i64; n];
    for _ in 0..1 + below(rng, 3) {
        let (a, c, up) = (below(rng, n), between(rng, 1, 3), rng.random_bool(0.5));
        for (x, t) in table.iter_mut().enumerate() {
            if if up { leq(a, x) } else { leq(x, a) } {
                *t += c;
            }
        }
    }
    if let Some(space) = space {
        // any function of one coordinate is modular when that factor is a chain
        for k in
            (0..space.arity()).filter(|&k| space.factor(k).height() + 1 == space.factor(k).len())
        {
            let h: Vec<i64> = (0..space.factor(k).len())
                .map(|_| between(rng, -2, 2))
                .collect();
            for (x, t) in table.iter_mut().enumerate() {
                *t += h[space.coord(x, k)];
            }
        }
    }
    table.into_iter().map(Rational::from_integer).collect()
}

/// A random strictly increasing map on the sorted `image`, returned as the
/// list of new values.
pub fn increasing_map(image: &[Rational], rng: &mut GenRng) -> Vec<Rational> {
    let mut v = Rational::from_integer(between(rng, -5, 5));
    let mut out = Vec::with_capacity(image.len());
    for _ in image {
        out.push(v);
        v += Rational::new(between(rng, 1, 4), between(rng, 1, 3));
    }
    out
}

/// Applies a random strictly increasing map to every value of `table`.
pub fn transform_table(table: &[Rational], rng: &mut GenRng) -> Vec<Rational> {
    let mut image = table.to_vec();
    image.sort();
    image.dedup();
    let mapped = increasing_map(&image, rng);
    table
        .iter()
        .map(|v| mapped[image.binary_search(v).expect("in image")])
        .collect()
}

fn random_levels(n: usize, levels: usize, rng: &mut GenRng) -> Vec<Rational> {
    (0..n)
        .map(|_| Rational::from_integer(below(rng, levels) as i64))
        .collect()
}

pub fn random_function(
    l: Arc<FiniteLattice>,
    strategy: PayoffStrategy,
    rng: &mut GenRng,
) -> Result<RationalFunction, GenerateError> {
    let n = l.len();
    match strategy {
        PayoffStrategy::SupermodularThenTransform => {
            let space = l
                .factors()
                .map(|f| ProductSpace::new(f.to_vec()))
                .transpose()?;
            let table = supermodular_table(n, |a, b| l.leq(a, b), space.as_ref(), rng);
            let f = LatticeFunction::new(l, ChainCodomain::Rational, table)?;
            if let Some(w) = is_supermodular(&f)?.into_witness() {
                return Err(GenerateError::Unsound(format!(
                    "not supermodular: {}",
                    w.render(f.domain())
                )));
            }
            let g = LatticeFunction::new(
                f.domain().clone(),
                ChainCodomain::Rational,
                transform_table(f.table(), rng),
            )?;
            if let Some(w) = is_quasisupermodular(&g).into_witness() {
                return Err(GenerateError::Unsound(format!(
                    "not quasisupermodular: {}",
                    w.render(&g)
                )));
            }
            Ok(g)
        }
        PayoffStrategy::Rejection { levels, budget } => {
            for _ in 0..budget {
                let f = LatticeFunction::new(
                    l.clone(),
                    ChainCodomain::Rational,
                    random_levels(n, levels, rng),
                )?;
                if is_quasisupermodular(&f).holds() {
                    return Ok(f);
                }
            }
            Err(GenerateError::RejectionBudgetExhausted(budget))
        }
    }
}

/// A random game whose every payoff passes the game hypotheses.
pub fn random_game(
    players: usize,
    family: &Family,
    strategy: PayoffStrategy,
    rng: &mut GenRng,
) -> Result<RationalGame, GenerateError> {
    let names: Vec<String> = (1..=players).map(|i| format!("p{i}")).collect();
    let strategies = (0..players)
        .map(|_| lattice_from_family(family, rng).map(Arc::new))
        .collect::<Result<Vec<_>, _>>()?;
    let space = ProductSpace::new(strategies.clone())?;
    let size = space.size();
    if size > GAME_CAP {
        return Err(GenerateError::CapExceeded {
            size,
            cap: GAME_CAP,
        });
    }
    let zero = vec![vec![Rational::from_integer(0); size]; players];
    let mut game = Game::new(
        names,
        strategies,
        vec![ChainCodomain::Rational; players],
        zero,
    )?;
    for i in 0..players {
        let table = match strategy {
            PayoffStrategy::SupermodularThenTransform => {
                let base = supermodular_table(size, |a, b| space.leq(a, b), Some(&space), rng);
                let t = transform_table(&base, rng);
                let candidate = game.with_payoff(i, ChainCodomain::Rational, t)?;
                if let Some(w) = player_violation(&candidate, i) {
                    return Err(GenerateError::Unsound(w.render(&candidate)));
                }
                candidate
            }
            PayoffStrategy::Rejection { levels, budget } => {
                let mut found = None;
                for _ in 0..budget {
                    let candidate = game.with_payoff(
                        i,
                        ChainCodomain::Rational,
                        random_levels(size, levels, rng),
                    )?;
                    if player_violation(&candidate, i).is_none() {
                        found = Some(candidate);
                        break;
                    }
                }
                found.ok_or(GenerateError::RejectionBudgetExhausted(budget))?
            }
        };
        game = table;
    }
    Ok(game)
}
