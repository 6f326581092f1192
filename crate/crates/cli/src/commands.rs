use std::fs;
use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use qsgame::argmax::{
    is_increasing_strong_set_order, is_increasing_weak_veinott, level_correspondence, verify_kuku,
};
use qsgame::format::{self, Document};
use qsgame::game::{
    best_response_correspondence, hypotheses, tarski_extremes, validate_game,
    verify_equilibrium_structure, NashReport, ValidatedGame,
};
use qsgame::generate::{generate, GenSpec};
use qsgame::lattice::{
    is_chain_subcomplete_exhaustive, is_subcomplete_exhaustive, is_sublattice, FinitePoset,
};
use qsgame::props::{
    chain_restrictions_quasisupermodular, has_increasing_differences, is_quasisupermodular,
    is_single_crossing, is_supermodular, is_topologically_usc, is_upper_chain_subcomplete,
    sections_quasisupermodular, transfer_continuity, Split,
};
use qsgame::{
    ClosedFamily, ElementSet, FiniteLattice, LatticeError, RationalFunction, RationalGame,
};

use crate::report::Report;

/// Largest lattice the subset-scanning theorem checks accept.
pub const VERIFY_CAP: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Property {
    All,
    Qsm,
    Supermodular,
    SingleCrossing,
    IncrDiff,
    Sections,
    Restrictions,
    Ucs,
    TopoUsc,
    Transfer,
    WeakVeinott,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Enumerate,
    Tarski,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Theorem {
    Kuku,
    Zhou,
    Veinott,
    Chaincls,
}

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load(path: &Path) -> Result<Document> {
    Ok(format::parse_document(&read(path)?)?)
}

fn load_function(path: &Path) -> Result<RationalFunction> {
    match load(path)? {
        Document::Function(f) => Ok(f),
        other => bail!("expected a function document, found a {}", other.kind()),
    }
}

fn load_game(path: &Path) -> Result<RationalGame> {
    match load(path)? {
        Document::Game(g) => Ok(g),
        other => bail!("expected a game document, found a {}", other.kind()),
    }
}

fn set_text(l: &FiniteLattice, s: &ElementSet) -> String {
    l.render_set(s)
}

// ---- check-lattice

pub fn check_lattice(path: &Path) -> Result<Report> {
    let doc: format::LatticeDoc = serde_json_doc(&read(path)?)?;
    let poset = FinitePoset::from_covers(&doc.elements, &doc.covers)?;
    let mut r = Report::new();
    let ex = poset.extremes();
    r.info("elements", poset.len().to_string());
    r.info("minimal", labels(&poset, &ex.minimal));
    r.info("maximal", labels(&poset, &ex.maximal));
    match FiniteLattice::from_poset(poset) {
        Ok(l) => {
            r.holds("lattice");
            r.info("bottom", l.label(l.bottom()));
            r.info("top", l.label(l.top()));
            r.info("height", l.height().to_string());
        }
        Err(LatticeError::NotALattice { x, y, missing }) => {
            r.fails("lattice", format!("x={x} y={y} missing={missing}"));
        }
        Err(e) => return Err(e.into()),
    }
    Ok(r)
}

fn serde_json_doc<T: for<'de> serde::Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| qsgame::error::FormatError::from(e).into())
}

fn labels(p: &FinitePoset, xs: &[usize]) -> String {
    format!(
        "{{{}}}",
        xs.iter().map(|&x| p.label(x)).collect::<Vec<_>>().join(",")
    )
}

// ---- check-function

fn topology_arg(spec: &str, carrier: &Arc<FiniteLattice>) -> Result<ClosedFamily> {
    Ok(match spec {
        "interval" => ClosedFamily::interval(carrier.clone())?,
        "discrete" => ClosedFamily::discrete(carrier.clone()),
        path => format::parse_topology(&read(Path::new(path))?, carrier.clone())?,
    })
}

pub fn check_function(
    path: &Path,
    property: Property,
    topology: Option<&str>,
    split: usize,
) -> Result<Report> {
    let f = load_function(path)?;
    let d = f.domain().clone();
    let labeled = f.codomain().is_labeled();
    let product = d.factors().is_some();
    let family = topology.map(|t| topology_arg(t, &d)).transpose()?;
    let wanted: Vec<Property> = match property {
        Property::All => {
            let mut w = vec![Property::Qsm];
            if !labeled {
                w.push(Property::Supermodular);
            }
            if product {
                w.push(Property::SingleCrossing);
                if !labeled {
                    w.push(Property::IncrDiff);
                }
                w.extend([Property::Sections, Property::Restrictions]);
            }
            w.extend([Property::Ucs, Property::WeakVeinott]);
            if family.is_some() {
                w.extend([Property::TopoUsc, Property::Transfer]);
            }
            w
        }
        p => vec![p],
    };
    let mut r = Report::new();
    r.info(
        "domain",
        format!("elements={} height={}", d.len(), d.height()),
    );
    if let Some(t) = &family {
        r.info(
            "topology",
            format!("kind={} closed_sets={}", t.kind(), t.len()),
        );
    }
    for p in wanted {
        property_lines(&mut r, &f, p, family.as_ref(), split)?;
    }
    Ok(r)
}

fn property_lines(
    r: &mut Report,
    f: &RationalFunction,
    p: Property,
    family: Option<&ClosedFamily>,
    split: usize,
) -> Result<()> {
    let d = f.domain();
    let need_family = || family.context("this property needs --topology");
    match p {
        Property::All => unreachable!("expanded by the caller"),
        Property::Qsm => r.verdict("qsm", &is_quasisupermodular(f), |w| w.render(f)),
        Property::Supermodular => r.verdict("supermodular", &is_supermodular(f)?, |w| w.render(d)),
        Property::SingleCrossing => {
            let space = f.product_space()?;
            let s = Split::new(&space, split)?;
            r.verdict("single-crossing", &is_single_crossing(f, split)?, |w| {
                w.render_with(&s, |x| f.render(f.value(x)))
            });
        }
        Property::IncrDiff => {
            let space = f.product_space()?;
            let s = Split::new(&space, split)?;
            r.verdict("incr-diff", &has_increasing_differences(f, split)?, |w| {
                w.render(&s)
            });
        }
        Property::Sections => {
            let space = f.product_space()?;
            let s = Split::new(&space, split)?;
            r.verdict(
                "sections-qsm",
                &sections_quasisupermodular(f, split)?,
                |w| {
                    let section = f.section(split, w.q).expect("valid split");
                    format!("q={} {}", s.q_label(w.q), w.violation.render(&section))
                },
            );
        }
        Property::Restrictions => r.verdict(
            "chain-restrictions-qsm",
            &chain_restrictions_quasisupermodular(f, split)?,
            |w| w.render(f),
        ),
        Property::Ucs => {
            let u = is_upper_chain_subcomplete(f);
            r.verdict("upper-chain-subcomplete", &u.upper_chain_subcomplete, |w| {
                format!("level={} {}", f.render(&w.level), w.witness.render(d))
            });
            r.flag("order-usc", u.order_usc, String::new);
        }
        Property::TopoUsc => {
            let v = is_topologically_usc(f, need_family()?)?;
            r.verdict("topo-usc", &v, |(level, set)| {
                format!(
                    "level={} upper_set={} not closed",
                    f.render(level),
                    set_text(d, set)
                )
            });
        }
        Property::Transfer => {
            let t = transfer_continuity(f, need_family()?)?;
            if f.codomain().is_labeled() {
                r.info("transfer", "labeled codomain compared by position");
            }
            r.verdict("transfer-upper", &t.transfer_upper, |w| w.render(d));
            r.verdict("transfer-weak-upper", &t.transfer_weak_upper, |w| {
                w.render(d)
            });
        }
        Property::WeakVeinott => {
            let g = level_correspondence(f);
            let v = is_increasing_weak_veinott(&g)?;
            r.verdict("level-sets-weak-veinott", &v, |w| w.render(&g));
        }
    }
    Ok(())
}

// ---- check-game

pub fn check_game(path: &Path) -> Result<Report> {
    let g = load_game(path)?;
    let mut r = Report::new();
    game_header(&mut r, &g);
    let h = hypotheses(&g);
    r.verdict("quasisupermodular-game", &h.validated, |w| w.render(&g));
    hypothesis_lines(&mut r, &h);
    Ok(r)
}

fn game_header(r: &mut Report, g: &RationalGame) {
    let sizes: Vec<String> = (0..g.num_players())
        .map(|i| format!("{}:{}", g.players()[i], g.strategies(i).len()))
        .collect();
    r.info("players", sizes.join(","));
    r.info("joint-strategies", g.space().size().to_string());
}

fn hypothesis_lines(r: &mut Report, h: &qsgame::game::Hypotheses) {
    let yn = |b: bool| if b { "yes" } else { "no" };
    r.info(
        "hypotheses",
        format!(
            "real-valued={} topologies={} sections-transfer-weak-upper={}",
            yn(h.real_valued),
            yn(h.topologies_given),
            h.sections_transfer_weak_upper.map_or("n/a", yn)
        ),
    );
    r.info(
        "certifies",
        format!(
            "order-theorem={} topological-theorem={}",
            yn(h.order_theorem()),
            yn(h.topological_theorem())
        ),
    );
}

// ---- solve

fn nash_lines(r: &mut Report, g: &RationalGame, n: &NashReport) {
    r.line(format!(
        "EQUILIBRIA count={} {}",
        n.equilibria.len(),
        n.render_set(g)
    ));
    r.flag("equilibria-nonempty", !n.equilibria.is_empty(), String::new);
    r.flag("complete-lattice", n.is_complete_lattice, || {
        match n.completeness_gap {
            Some((a, b, m)) => format!("x={} y={} missing={m}", g.joint_label(a), g.joint_label(b)),
            None => "empty".into(),
        }
    });
    match n.sublattice_gap {
        None => r.info("sublattice-gap", "none"),
        Some(s) => r.info(
            "sublattice-gap",
            format!(
                "x={} y={} {}={} outside",
                g.joint_label(s.a),
                g.joint_label(s.b),
                if s.bound == qsgame::MissingBound::Glb {
                    "meet"
                } else {
                    "join"
                },
                g.joint_label(s.point)
            ),
        ),
    }
    let opt = |x: Option<qsgame::JointStrategy>| x.map_or("none".to_string(), |x| g.joint_label(x));
    r.line(format!("LARGEST {}", opt(n.largest)));
    r.line(format!("LEAST {}", opt(n.least)));
}

pub fn solve(path: &Path, method: Method, cap: usize) -> Result<Report> {
    let g = load_game(path)?;
    let mut r = Report::new();
    game_header(&mut r, &g);
    let nash = match method {
        Method::Enumerate | Method::Both => Some(verify_equilibrium_structure(&g, cap)?),
        Method::Tarski => None,
    };
    if let Some(n) = &nash {
        nash_lines(&mut r, &g, n);
    }
    if method == Method::Enumerate {
        return Ok(r);
    }
    let validated = match ValidatedGame::new(&g) {
        Ok(v) => v,
        Err(_) => {
            let w = validate_game(&g).into_witness().expect("validation failed");
            r.fails("quasisupermodular-game", w.render(&g));
            r.info("tarski", "skipped: iteration needs a validated game");
            return Ok(r);
        }
    };
    let t = tarski_extremes(&validated)?;
    r.line(format!(
        "TARSKI largest={} least={} iterations_down={} iterations_up={}",
        g.joint_label(t.largest),
        g.joint_label(t.least),
        t.iterations_down,
        t.iterations_up
    ));
    if let Some(n) = &nash {
        let agree = n.largest == Some(t.largest) && n.least == Some(t.least);
        r.flag("methods-agree", agree, || {
            format!(
                "enumerate=({},{}) tarski=({},{})",
                n.largest.map_or("none".into(), |x| g.joint_label(x)),
                n.least.map_or("none".into(), |x| g.joint_label(x)),
                g.joint_label(t.largest),
                g.joint_label(t.least)
            )
        });
    }
    Ok(r)
}

// ---- verify

pub fn verify(path: &Path, theorem: Theorem) -> Result<Report> {
    match theorem {
        Theorem::Kuku => verify_argmax(path),
        Theorem::Zhou => verify_equilibria(path),
        Theorem::Veinott => verify_subcomplete(path),
        Theorem::Chaincls => verify_chain_closed(path),
    }
}

fn verify_argmax(path: &Path) -> Result<Report> {
    let f = load_function(path)?;
    let d = f.domain();
    let mut r = Report::new();
    match verify_kuku(&f) {
        Ok(k) => {
            r.verdict("premise-quasisupermodular", &k.quasisupermodular, |w| {
                w.render(&f)
            });
            r.verdict(
                "premise-upper-chain-subcomplete",
                &k.upper_chain_subcomplete.upper_chain_subcomplete,
                |w| format!("level={} {}", f.render(&w.level), w.witness.render(d)),
            );
            r.info("argmax", set_text(d, &k.argmax));
            r.flag("argmax-nonempty", k.nonempty, String::new);
            r.verdict("argmax-sublattice", &k.flags.is_sublattice, |w| w.render(d));
            r.verdict("argmax-subcomplete", &k.flags.is_subcomplete, |w| {
                w.render(d)
            });
            if k.premises_hold() {
                r.holds("theorem");
            } else {
                r.info("theorem", "premises fail, conclusion reported only");
            }
        }
        Err(e) => r.fails("theorem", e.to_string()),
    }
    Ok(r)
}

fn verify_equilibria(path: &Path) -> Result<Report> {
    let g = load_game(path)?;
    let mut r = Report::new();
    game_header(&mut r, &g);
    let h = hypotheses(&g);
    r.verdict("quasisupermodular-game", &h.validated, |w| w.render(&g));
    hypothesis_lines(&mut r, &h);
    let n = verify_equilibrium_structure(&g, qsgame::game::ENUMERATION_CAP)?;
    nash_lines(&mut r, &g, &n);
    for i in 0..g.num_players() {
        let br = best_response_correspondence(&g, i);
        let v = is_increasing_strong_set_order(&br)?;
        r.verdict(
            &format!("best-response-increasing[{}]", g.players()[i]),
            &v,
            |w| w.render(&br),
        );
    }
    match ValidatedGame::new(&g) {
        Ok(v) => {
            let t = tarski_extremes(&v)?;
            r.flag(
                "tarski-matches-enumeration",
                n.largest == Some(t.largest) && n.least == Some(t.least),
                || {
                    format!(
                        "tarski=({},{})",
                        g.joint_label(t.largest),
                        g.joint_label(t.least)
                    )
                },
            );
        }
        Err(_) => r.info("tarski", "skipped: iteration needs a validated game"),
    }
    Ok(r)
}

fn lattice_of(path: &Path) -> Result<Arc<FiniteLattice>> {
    Ok(match load(path)? {
        Document::Lattice(l) => Arc::new(l),
        Document::Function(f) => f.domain().clone(),
        Document::Game(_) => bail!("expected a lattice or function document, found a game"),
    })
}

fn all_subsets(n: usize) -> impl Iterator<Item = ElementSet> {
    (0u64..1 << n).map(move |mask| {
        let mut s = ElementSet::with_capacity(n);
        for b in (0..n).filter(|b| mask >> b & 1 == 1) {
            s.insert(b);
        }
        s
    })
}

fn verify_subcomplete(path: &Path) -> Result<Report> {
    let l = lattice_of(path)?;
    let n = l.len();
    if n > VERIFY_CAP {
        bail!("lattice of {n} elements exceeds the subset-scan cap {VERIFY_CAP}");
    }
    let mut r = Report::new();
    let mut iff = None;
    let mut chains = None;
    let mut count = 0usize;
    for s in all_subsets(n) {
        count += 1;
        let sub = is_subcomplete_exhaustive(&l, &s, n)?.holds();
        let lat = is_sublattice(&l, &s).holds();
        if iff.is_none() && !s.is_clear() && sub != lat {
            iff = Some(format!(
                "subset={} subcomplete={sub} sublattice={lat}",
                set_text(&l, &s)
            ));
        }
        if chains.is_none() {
            if let Some(w) = is_chain_subcomplete_exhaustive(&l, &s, n)?.into_witness() {
                chains = Some(format!("subset={} {}", set_text(&l, &s), w.render(&l)));
            }
        }
    }
    r.info("subsets", count.to_string());
    r.flag("subcomplete-iff-sublattice", iff.is_none(), || {
        iff.clone().unwrap_or_default()
    });
    r.flag("chain-subcomplete", chains.is_none(), || {
        chains.clone().unwrap_or_default()
    });
    Ok(r)
}

fn verify_chain_closed(path: &Path) -> Result<Report> {
    let l = lattice_of(path)?;
    let family = ClosedFamily::interval(l.clone())?;
    let mut r = Report::new();
    r.info("closed-sets", family.len().to_string());
    let bad = family.closed_sets().into_iter().find_map(|c| {
        is_chain_subcomplete_exhaustive(&l, &c, l.len())
            .expect("cap is the carrier size")
            .into_witness()
            .map(|w| format!("closed={} {}", set_text(&l, &c), w.render(&l)))
    });
    r.flag("closed-sets-chain-subcomplete", bad.is_none(), || {
        bad.clone().unwrap_or_default()
    });
    Ok(r)
}

// ---- generate

pub fn generate_cmd(spec: &str, out: Option<&Path>) -> Result<Report> {
    let spec: GenSpec = spec.parse()?;
    let doc = generate(&spec)?;
    let text = doc.to_canonical();
    let mut r = Report::new();
    match out {
        Some(path) => {
            fs::write(path, &text).with_context(|| format!("cannot write {}", path.display()))?;
            r.info("generated", format!("kind={} spec={spec}", doc.kind()));
        }
        None => r.line(text.trim_end()),
    }
    Ok(r)
}
