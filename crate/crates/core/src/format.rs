//! JSON documents for lattices, functions, topologies and games.
//!
//! Serialization is canonical: object keys in alphabetical order, element
//! lists sorted, tables sorted by element (or by profile in player order).
//! Two lists keep their given order because the order is the data: the
//! `players` of a game and the `labels` of a labeled codomain, which run
//! from the bottom of the chain to the top.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize};

use crate::error::FormatError;
use crate::function::LatticeFunction;
use crate::game::{Game, JointStrategy};
use crate::lattice::{product_lattice, FiniteLattice, ProductSpace};
use crate::topology::{ClosedFamily, TopologyKind};
use crate::value::{format_rational, parse_rational, ChainCodomain};
use crate::{Rational, RationalFunction, RationalGame};

fn nonempty<'de, D: Deserializer<'de>, T: Deserialize<'de>>(d: D) -> Result<Vec<T>, D::Error> {
    let v = Vec::<T>::deserialize(d)?;
    if v.is_empty() {
        return Err(serde::de::Error::custom("list must not be empty"));
    }
    Ok(v)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeDoc {
    pub covers: Vec<(String, String)>,
    #[serde(deserialize_with = "nonempty")]
    pub elements: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DomainDoc {
    Product {
        #[serde(deserialize_with = "nonempty")]
        product: Vec<LatticeDoc>,
    },
    Lattice(LatticeDoc),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum CodomainDoc {
    Rational,
    Labeled { labels: Vec<String> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ValueDoc {
    Text(String),
    Int(i64),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryDoc {
    pub element: String,
    pub value: ValueDoc,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionDoc {
    pub codomain: CodomainDoc,
    pub domain: DomainDoc,
    pub table: Vec<EntryDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum TopologyDoc {
    Interval,
    Discrete,
    Explicit { closed_sets: Vec<Vec<String>> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileEntryDoc {
    pub profile: BTreeMap<String, String>,
    pub value: ValueDoc,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameDoc {
    pub codomains: BTreeMap<String, CodomainDoc>,
    pub payoffs: BTreeMap<String, Vec<ProfileEntryDoc>>,
    #[serde(deserialize_with = "nonempty")]
    pub players: Vec<String>,
    pub strategies: BTreeMap<String, LatticeDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub topologies: BTreeMap<String, TopologyDoc>,
}

/// Any parsed instance.
#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    Lattice(FiniteLattice),
    Function(RationalFunction),
    Game(RationalGame),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Lattice(_) => "lattice",
            Document::Function(_) => "function",
            Document::Game(_) => "game",
        }
    }

    pub fn to_canonical(&self) -> String {
        match self {
            Document::Lattice(l) => lattice_to_string(l),
            Document::Function(f) => function_to_string(f),
            Document::Game(g) => game_to_string(g),
        }
    }
}

fn invariant(msg: impl Into<String>) -> FormatError {
    FormatError::Invariant(msg.into())
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, FormatError> {
    Ok(serde_json::from_str(text)?)
}

fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

// ---- lattices

pub fn lattice_doc(l: &FiniteLattice) -> LatticeDoc {
    let mut elements = l.labels().to_vec();
    elements.sort();
    let covers = l
        .poset()
        .covers()
        .into_iter()
        .map(|(a, b)| (l.label(a).to_string(), l.label(b).to_string()))
        .collect::<Vec<_>>();
    let mut covers = covers;
    covers.sort();
    LatticeDoc { covers, elements }
}

pub fn lattice_from_doc(doc: &LatticeDoc) -> Result<FiniteLattice, FormatError> {
    Ok(FiniteLattice::from_covers(&doc.elements, &doc.covers)?)
}

pub fn parse_lattice(text: &str) -> Result<FiniteLattice, FormatError> {
    lattice_from_doc(&from_json(text)?)
}

pub fn lattice_to_string(l: &FiniteLattice) -> String {
    to_json(&lattice_doc(l))
}

// ---- values and codomains

fn codomain_doc(c: &ChainCodomain) -> CodomainDoc {
    match c {
        ChainCodomain::Rational => CodomainDoc::Rational,
        ChainCodomain::Labeled(labels) => CodomainDoc::Labeled {
            labels: labels.clone(),
        },
    }
}

fn codomain_from_doc(doc: &CodomainDoc) -> Result<ChainCodomain, FormatError> {
    match doc {
        CodomainDoc::Rational => Ok(ChainCodomain::Rational),
        CodomainDoc::Labeled { labels } => {
            if labels.is_empty() {
                return Err(invariant("a labeled codomain needs at least one label"));
            }
            let mut seen = labels.clone();
            seen.sort();
            if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
                return Err(invariant(format!("duplicate codomain label `{}`", w[0])));
            }
            Ok(ChainCodomain::Labeled(labels.clone()))
        }
    }
}

fn value_doc(c: &ChainCodomain, v: &Rational) -> ValueDoc {
    match c {
        ChainCodomain::Rational => ValueDoc::Text(format_rational(v)),
        ChainCodomain::Labeled(_) => ValueDoc::Text(c.render(v)),
    }
}

fn value_from_doc(c: &ChainCodomain, v: &ValueDoc) -> Result<Rational, FormatError> {
    match (c, v) {
        (ChainCodomain::Rational, ValueDoc::Int(k)) => Ok(Rational::from_integer(*k)),
        (ChainCodomain::Rational, ValueDoc::Text(t)) => parse_rational(t).map_err(invariant),
        (ChainCodomain::Labeled(labels), ValueDoc::Text(t)) => labels
            .iter()
            .position(|l| l == t)
            .map(|k| Rational::from_integer(k as i64))
            .ok_or_else(|| invariant(format!("`{t}` is not a label of the codomain"))),
        (ChainCodomain::Labeled(_), ValueDoc::Int(k)) => Err(invariant(format!(
            "labeled codomain expects a label, got {k}"
        ))),
    }
}

// ---- functions

pub fn function_doc(f: &RationalFunction) -> FunctionDoc {
    let d = f.domain();
    let domain = match d.factors() {
        Some(factors) => DomainDoc::Product {
            product: factors.iter().map(|l| lattice_doc(l)).collect(),
        },
        None => DomainDoc::Lattice(lattice_doc(d)),
    };
    let mut table: Vec<EntryDoc> = (0..d.len())
        .map(|x| EntryDoc {
            element: d.label(x).to_string(),
            value: value_doc(f.codomain(), f.value(x)),
        })
        .collect();
    table.sort_by(|a, b| a.element.cmp(&b.element));
    FunctionDoc {
        codomain: codomain_doc(f.codomain()),
        domain,
        table,
    }
}

fn domain_from_doc(doc: &DomainDoc) -> Result<Arc<FiniteLattice>, FormatError> {
    match doc {
        DomainDoc::Lattice(l) => Ok(Arc::new(lattice_from_doc(l)?)),
        DomainDoc::Product { product } => {
            let factors = product
                .iter()
                .map(|l| lattice_from_doc(l).map(Arc::new))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Arc::new(product_lattice(&factors)?))
        }
    }
}

pub fn function_from_doc(doc: &FunctionDoc) -> Result<RationalFunction, FormatError> {
    let domain = domain_from_doc(&doc.domain)?;
    let codomain = codomain_from_doc(&doc.codomain)?;
    let mut table: Vec<Option<Rational>> = vec![None; domain.len()];
    for e in &doc.table {
        let x = domain
            .index_of(&e.element)
            .ok_or_else(|| invariant(format!("table entry for unknown element `{}`", e.element)))?;
        if table[x].is_some() {
            return Err(invariant(format!(
                "duplicate table entry for `{}`",
                e.element
            )));
        }
        table[x] = Some(value_from_doc(&codomain, &e.value)?);
    }
    let table = table
        .into_iter()
        .enumerate()
        .map(|(x, v)| {
            v.ok_or_else(|| {
                invariant(format!(
                    "total table required: no value for `{}`",
                    domain.label(x)
                ))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LatticeFunction::new(domain, codomain, table)?)
}

pub fn parse_function(text: &str) -> Result<RationalFunction, FormatError> {
    function_from_doc(&from_json(text)?)
}

pub fn function_to_string(f: &RationalFunction) -> String {
    to_json(&function_doc(f))
}

// ---- topologies

pub fn topology_doc(t: &ClosedFamily) -> TopologyDoc {
    match t.kind() {
        TopologyKind::Interval => TopologyDoc::Interval,
        TopologyKind::Discrete => TopologyDoc::Discrete,
        TopologyKind::Explicit => {
            let c = t.carrier();
            let mut closed_sets: Vec<Vec<String>> = t
                .listed_sets()
                .iter()
                .map(|s| {
                    let mut labels = c.subset_labels(s);
                    labels.sort();
                    labels
                })
                .collect();
            closed_sets.sort();
            TopologyDoc::Explicit { closed_sets }
        }
    }
}

pub fn topology_from_doc(
    doc: &TopologyDoc,
    carrier: Arc<FiniteLattice>,
) -> Result<ClosedFamily, FormatError> {
    Ok(match doc {
        TopologyDoc::Interval => ClosedFamily::interval(carrier)?,
        TopologyDoc::Discrete => ClosedFamily::discrete(carrier),
        TopologyDoc::Explicit { closed_sets } => {
            ClosedFamily::explicit_from_labels(carrier, closed_sets)?
        }
    })
}

/// A topology document over `carrier`.
pub fn parse_topology(
    text: &str,
    carrier: Arc<FiniteLattice>,
) -> Result<ClosedFamily, FormatError> {
    topology_from_doc(&from_json(text)?, carrier)
}

pub fn topology_to_string(t: &ClosedFamily) -> String {
    to_json(&topology_doc(t))
}

// ---- games

pub fn game_doc(g: &RationalGame) -> GameDoc {
    let players = g.players().to_vec();
    let mut codomains = BTreeMap::new();
    let mut payoffs = BTreeMap::new();
    let mut strategies = BTreeMap::new();
    let mut topologies = BTreeMap::new();
    let space = g.space();
    for (i, p) in players.iter().enumerate() {
        codomains.insert(p.clone(), codomain_doc(g.codomain(i)));
        strategies.insert(p.clone(), lattice_doc(g.strategies(i)));
        if let Some(t) = g.topology(i) {
            topologies.insert(p.clone(), topology_doc(t));
        }
        let mut entries: Vec<(Vec<&str>, ProfileEntryDoc)> = (0..space.size())
            .map(|x| {
                let x = JointStrategy(x);
                let key: Vec<&str> = (0..players.len()).map(|j| g.own_label(j, x)).collect();
                let profile = players
                    .iter()
                    .cloned()
                    .zip(key.iter().map(|s| s.to_string()))
                    .collect();
                (
                    key,
                    ProfileEntryDoc {
                        profile,
                        value: value_doc(g.codomain(i), g.payoff(i, x)),
                    },
                )
            })
            .collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        payoffs.insert(p.clone(), entries.into_iter().map(|(_, e)| e).collect());
    }
    GameDoc {
        codomains,
        payoffs,
        players,
        strategies,
        topologies,
    }
}

pub fn game_from_doc(doc: &GameDoc) -> Result<RationalGame, FormatError> {
    let players = &doc.players;
    let index: HashMap<&str, usize> = players
        .iter()
        .enumerate()
        .map(|(i, p)| (p.as_str(), i))
        .collect();
    if index.len() != players.len() {
        return Err(invariant("duplicate player"));
    }
    for (field, keys) in [
        ("strategies", doc.strategies.keys().collect::<Vec<_>>()),
        ("codomains", doc.codomains.keys().collect()),
        ("payoffs", doc.payoffs.keys().collect()),
        ("topologies", doc.topologies.keys().collect()),
    ] {
        if let Some(k) = keys.iter().find(|k| !index.contains_key(k.as_str())) {
            return Err(invariant(format!("`{field}` names unknown player `{k}`")));
        }
    }
    let need = |field: &str, p: &str| invariant(format!("`{field}` has no entry for player `{p}`"));
    let mut strategies = Vec::new();
    let mut codomains = Vec::new();
    for p in players {
        let l = doc.strategies.get(p).ok_or_else(|| need("strategies", p))?;
        strategies.push(Arc::new(lattice_from_doc(l)?));
        codomains.push(codomain_from_doc(
            doc.codomains.get(p).ok_or_else(|| need("codomains", p))?,
        )?);
    }
    let space = ProductSpace::new(strategies.clone())?;
    let mut payoffs = Vec::new();
    for (i, p) in players.iter().enumerate() {
        let entries = doc.payoffs.get(p).ok_or_else(|| need("payoffs", p))?;
        let mut table: Vec<Option<Rational>> = vec![None; space.size()];
        for e in entries {
            if e.profile.len() != players.len() {
                return Err(invariant(format!(
                    "payoff of `{p}`: a profile names {} players",
                    e.profile.len()
                )));
            }
            let mut coords = vec![0; players.len()];
            for (q, label) in &e.profile {
                let j = *index.get(q.as_str()).ok_or_else(|| {
                    invariant(format!("payoff of `{p}`: unknown player `{q}` in profile"))
                })?;
                coords[j] = strategies[j].index_of(label).ok_or_else(|| {
                    invariant(format!(
                        "payoff of `{p}`: `{label}` is not a strategy of `{q}`"
                    ))
                })?;
            }
            let x = space.index(&coords);
            if table[x].is_some() {
                return Err(invariant(format!(
                    "payoff of `{p}`: duplicate profile {}",
                    space.label(x)
                )));
            }
            table[x] = Some(value_from_doc(&codomains[i], &e.value)?);
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(x, v)| {
                v.ok_or_else(|| {
                    invariant(format!(
                        "total table required: payoff of `{p}` misses {}",
                        space.label(x)
                    ))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        payoffs.push(table);
    }
    let mut game = Game::new(players.clone(), strategies.clone(), codomains, payoffs)?;
    for (p, t) in &doc.topologies {
        let i = index[p.as_str()];
        game = game.with_topology(i, topology_from_doc(t, strategies[i].clone())?)?;
    }
    Ok(game)
}

pub fn parse_game(text: &str) -> Result<RationalGame, FormatError> {
    game_from_doc(&from_json(text)?)
}

pub fn game_to_string(g: &RationalGame) -> String {
    to_json(&game_doc(g))
}

/// Parses a lattice, function or game, telling them apart by their fields.
pub fn parse_document(text: &str) -> Result<Document, FormatError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let has = |k: &str| value.get(k).is_some();
    if has("players") {
        parse_game(text).map(Document::Game)
    } else if has("table") {
        parse_function(text).map(Document::Function)
    } else if has("elements") {
        parse_lattice(text).map(Document::Lattice)
    } else {
        Err(invariant(
            "unrecognized document: expected a lattice, function or game",
        ))
    }
}
