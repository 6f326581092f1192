//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any failed.

mod oracle;

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use qsgame::argmax::is_increasing_strong_set_order;
use qsgame::argmax::verify_kuku;
use qsgame::format::{self, Document};
use qsgame::function::sum;
use qsgame::game::{
    best_response_correspondence, enumerate_nash, tarski_extremes, verify_equilibrium_structure,
    ValidatedGame, ENUMERATION_CAP,
};
use qsgame::generate::{
    below, lattices_of_size, random_function, random_game, rng_from_seed, transform_table, Family,
    PayoffStrategy, REJECTION_BUDGET,
};
use qsgame::lattice::{is_chain_subcomplete_exhaustive, is_subcomplete_exhaustive, is_sublattice};
use qsgame::props::{
    has_increasing_differences, is_quasisupermodular, is_single_crossing, is_supermodular,
    is_topologically_usc, sections_quasisupermodular, transfer_continuity,
};
use qsgame::{
    product_lattice, ChainCodomain, Clause, ClosedFamily, FiniteLattice, JointStrategy,
    LatticeFunction, Rational, RationalFunction, RationalGame,
};

type Outcome = Result<String, String>;

fn r(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn corpus_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(name)
}

fn load(name: &str) -> Document {
    let text = std::fs::read_to_string(corpus_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
    format::parse_document(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn function(name: &str) -> RationalFunction {
    match load(name) {
        Document::Function(f) => f,
        _ => panic!("{name} is not a function"),
    }
}

fn game(name: &str) -> RationalGame {
    match load(name) {
        Document::Game(g) => g,
        _ => panic!("{name} is not a game"),
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn labels_of(g: &RationalGame, set: &[usize]) -> BTreeSet<String> {
    set.iter()
        .map(|&x| g.joint_label(JointStrategy(x)))
        .collect()
}

fn set_of(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

// 1: diamond x chain example
fn veinott_example() -> Outcome {
    let f = function("eg_veinott.fn");
    let expected = [
        ("(0,0)", 2),
        ("(b,1)", 2),
        ("(a,0)", 1),
        ("(b,0)", 1),
        ("(1,0)", 0),
        ("(1,1)", 0),
        ("(a,1)", 9),
        ("(0,1)", 10),
    ];
    for (label, v) in expected {
        ensure(f.at(label) == Some(&r(v)), || {
            format!("f{label} should be {v}")
        })?;
    }
    ensure(
        is_single_crossing(&f, 0)
            .map_err(|e| e.to_string())?
            .holds(),
        || "single crossing fails".into(),
    )?;
    let d = f.domain();
    for c in ["0", "1"] {
        let at = d.index_of(&format!("(0,{c})")).unwrap();
        let section = f.section(0, at).map_err(|e| e.to_string())?;
        ensure(is_quasisupermodular(&section).holds(), || {
            format!("section at {c} is not qsm")
        })?;
        ensure(oracle::qsm(section.domain(), section.table()), || {
            format!("oracle: section at {c} not qsm")
        })?;
    }
    ensure(
        sections_quasisupermodular(&f, 0)
            .map_err(|e| e.to_string())?
            .holds(),
        || "sections verdict".into(),
    )?;
    ensure(!oracle::qsm(d, f.table()), || {
        "oracle finds the joint function qsm".into()
    })?;
    let w = is_quasisupermodular(&f)
        .into_witness()
        .ok_or("joint function reported qsm")?;
    ensure(*f.value(w.meet) == r(2) && *f.value(w.join) == r(0), || {
        format!(
            "witness meet value {} join value {}",
            f.value(w.meet),
            f.value(w.join)
        )
    })?;
    // the worked example's own pair violates the weak clause
    let (x, y) = (d.index_of("(a,0)").unwrap(), d.index_of("(b,1)").unwrap());
    let (m, j) = (d.meet(x, y), d.join(x, y));
    ensure(d.label(m) == "(0,0)" && d.label(j) == "(1,1)", || {
        "meet/join of (a,0),(b,1)".into()
    })?;
    ensure(f.value(m) <= f.value(y) && f.value(j) < f.value(x), || {
        "weak clause instance".into()
    })?;
    Ok(format!(
        "single crossing and both sections qsm; joint fails at x={} y={} clause={} meet value 2, join value 0",
        d.label(w.x),
        d.label(w.y),
        if w.clause == Clause::Strict { "strict" } else { "weak" }
    ))
}

// 2: sum of quasisupermodular functions
fn sum_example() -> Outcome {
    let f = function("eg_sum_f.fn");
    let g = function("eg_sum_g.fn");
    let h_file = function("eg_sum.fn");
    let d = f.domain();
    for p in ["(1,1)", "(2,3)", "(3,2)", "(4,5)"] {
        let (a, b): (i64, i64) = {
            let mut it = p[1..p.len() - 1]
                .split(',')
                .map(|t| t.parse::<i64>().unwrap());
            (it.next().unwrap(), it.next().unwrap())
        };
        ensure(f.at(p) == Some(&r(a)) && g.at(p) == Some(&r(-b)), || {
            format!("table at {p}")
        })?;
    }
    let h = sum(&f, &g).map_err(|e| e.to_string())?;
    ensure(h.table() == h_file.table(), || {
        "stored h differs from f+g".into()
    })?;
    ensure(
        is_supermodular(&f).map_err(|e| e.to_string())?.holds(),
        || "f not supermodular".into(),
    )?;
    ensure(oracle::supermodular(d, f.table()), || {
        "oracle: f not supermodular".into()
    })?;
    ensure(
        is_quasisupermodular(&g).holds() && oracle::qsm(d, g.table()),
        || "g not qsm".into(),
    )?;
    ensure(!oracle::qsm(d, h.table()), || "oracle: h qsm".into())?;
    let w = is_quasisupermodular(&h)
        .into_witness()
        .ok_or("h reported qsm")?;
    let pair: BTreeSet<&str> = [d.label(w.x), d.label(w.y)].into();
    ensure(pair == BTreeSet::from(["(2,3)", "(3,2)"]), || {
        format!("witness pair {pair:?}")
    })?;
    Ok(format!(
        "f supermodular, g qsm, f+g fails at {{{}, {}}}",
        d.label(w.x),
        d.label(w.y)
    ))
}

// 3: M5 x diamond game
fn order_analog() -> Outcome {
    let g = game("thm_order_analog.game");
    let brute = oracle::nash(&g);
    let expected = set_of(&["(m,1)", "(x2,1)", "(x3,1)", "(x4,1)", "(x5,1)", "(M,1)"]);
    ensure(labels_of(&g, &brute) == expected, || {
        format!("oracle equilibria {:?}", labels_of(&g, &brute))
    })?;
    let eq: Vec<usize> = enumerate_nash(&g, ENUMERATION_CAP)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|x| x.0)
        .collect();
    ensure(eq == brute, || "enumeration differs from the oracle".into())?;
    let v = ValidatedGame::new(&g).map_err(|e| e.to_string())?;
    let t = tarski_extremes(&v).map_err(|e| e.to_string())?;
    let (top, bottom) = oracle::extremes(&g, &brute);
    ensure(
        Some(t.largest.0) == top && Some(t.least.0) == bottom,
        || "tarski extremes differ".into(),
    )?;
    ensure(
        g.joint_label(t.largest) == "(M,1)" && g.joint_label(t.least) == "(m,1)",
        || "extreme labels".into(),
    )?;
    Ok("E = (M5 minus {x1}) x {1}, 6 points; iteration gives (M,1) and (m,1)".into())
}

// 4: grid discretizations
fn discretizations() -> Outcome {
    let g = game("cor_calciano_grid6.game");
    let brute = oracle::nash(&g);
    let expected = set_of(&["(2/3,1/2)", "(5/6,1/2)", "(1,1/2)"]);
    ensure(labels_of(&g, &brute) == expected, || {
        format!("calciano equilibria {:?}", labels_of(&g, &brute))
    })?;
    let report = verify_equilibrium_structure(&g, ENUMERATION_CAP).map_err(|e| e.to_string())?;
    ensure(
        report.equilibria.iter().map(|x| x.0).collect::<Vec<_>>() == brute,
        || "calciano enumeration".into(),
    )?;
    // the grid payoffs are the continuum formulas
    let s = g.space();
    for x in 0..s.size() {
        let c = s.coords(x);
        let s1: Rational = s.factor(0).label(c[0]).parse().unwrap();
        let s2: Rational = s.factor(1).label(c[1]).parse().unwrap();
        let f1 = if s1 <= q(1, 3) {
            r(0)
        } else if s1 < q(2, 3) {
            r(1)
        } else {
            r(2)
        };
        let f2 = (s1 + r(1)) * (s2 - s2 * s2);
        ensure(
            *g.payoff(0, JointStrategy(x)) == f1 && *g.payoff(1, JointStrategy(x)) == f2,
            || format!("payoff at {}", s.label(x)),
        )?;
    }

    let t = game("thm_topo_order_grid.game");
    let brute = oracle::nash(&t);
    let expected = set_of(&["(1/4,(1,1))", "(1/2,(1,1))", "(3/4,(1,1))", "(1,(1,1))"]);
    ensure(labels_of(&t, &brute) == expected, || {
        format!("topo grid equilibria {:?}", labels_of(&t, &brute))
    })?;
    let v = ValidatedGame::new(&t).map_err(|e| e.to_string())?;
    let ext = tarski_extremes(&v).map_err(|e| e.to_string())?;
    let largest: Vec<String> = {
        let s = t.space();
        let c = s.coords(ext.largest.0);
        let mut parts = vec![s.factor(0).label(c[0]).to_string()];
        let inner = s.factor(1).label(c[1]);
        parts.extend(inner[1..inner.len() - 1].split(',').map(str::to_string));
        parts
    };
    ensure(largest == ["1", "1", "1"], || {
        format!("largest {largest:?}")
    })?;
    ensure(t.joint_label(ext.least) == "(1/4,(1,1))", || {
        "least on the grid".into()
    })?;
    ensure(qsgame::game::hypotheses(&t).topological_theorem(), || {
        "topological hypotheses not certified".into()
    })?;
    Ok("calciano grid E = {4/6,5/6,1} x {3/6}; topo grid largest (1,1,1); the grid has least (1/4,(1,1)) \
        where the continuum has none"
        .into())
}

// 5: argmax structure
fn kuku_suite() -> Outcome {
    let mut checked = 0usize;
    let mut premised = 0usize;
    let mut check = |f: &RationalFunction| -> Result<(), String> {
        checked += 1;
        let d = f.domain();
        let k = verify_kuku(f).map_err(|e| e.to_string())?;
        let oracle_premise = oracle::qsm(d, f.table());
        ensure(k.quasisupermodular.holds() == oracle_premise, || {
            format!("premise disagrees on {:?}", f.table())
        })?;
        if k.premises_hold() {
            premised += 1;
            let am = oracle::argmax(f.table());
            ensure(oracle::members(&k.argmax) == am, || "argmax differs".into())?;
            ensure(k.conclusion_holds(), || {
                format!("conclusion fails for {:?}", f.table())
            })?;
            ensure(
                oracle::sublattice(d, &am) && oracle::subcomplete(d, &am),
                || "oracle conclusion".into(),
            )?;
        }
        Ok(())
    };
    for n in 1..=5 {
        for l in lattices_of_size(n) {
            let l = Arc::new(l.clone());
            for t in oracle::tables(n, 3) {
                check(&LatticeFunction::new(l.clone(), ChainCodomain::Rational, t).unwrap())?;
            }
        }
    }
    let mut rng = rng_from_seed(5);
    for i in 0..1200 {
        let l = Arc::new(
            qsgame::generate::lattice_from_family(&Family::Mixed { max: 8 }, &mut rng).unwrap(),
        );
        let strategy = match i % 3 {
            0 => PayoffStrategy::SupermodularThenTransform,
            1 => PayoffStrategy::Rejection {
                levels: 3,
                budget: REJECTION_BUDGET,
            },
            _ => {
                let raw: Vec<Rational> =
                    (0..l.len()).map(|_| r(below(&mut rng, 4) as i64)).collect();
                check(&LatticeFunction::new(l, ChainCodomain::Rational, raw).unwrap())?;
                continue;
            }
        };
        check(&random_function(l, strategy, &mut rng).map_err(|e| e.to_string())?)?;
    }
    Ok(format!("{checked} instances, {premised} with premises; all argmax sets nonempty subcomplete sublattices"))
}

// 6: random validated games
fn random_games() -> Outcome {
    let mut rng = rng_from_seed(6);
    let mut games = 0;
    let mut equilibria = 0;
    let mut gaps = 0;
    while games < 520 {
        // rejection sampling only finds valid tables on small joint spaces
        let (players, max, strategy) = match games % 4 {
            3 => (
                2,
                3,
                PayoffStrategy::Rejection {
                    levels: 3,
                    budget: REJECTION_BUDGET,
                },
            ),
            k => (2 + k % 2, 6, PayoffStrategy::SupermodularThenTransform),
        };
        let g = random_game(players, &Family::Mixed { max }, strategy, &mut rng)
            .map_err(|e| e.to_string())?;
        games += 1;
        let brute = oracle::nash(&g);
        equilibria += brute.len();
        let lib: Vec<usize> = enumerate_nash(&g, ENUMERATION_CAP)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|x| x.0)
            .collect();
        ensure(lib == brute, || {
            format!("game {games}: enumeration differs")
        })?;
        ensure(oracle::complete_in_induced_order(&g, &brute), || {
            format!("game {games}: E not a complete lattice")
        })?;
        let report =
            verify_equilibrium_structure(&g, ENUMERATION_CAP).map_err(|e| e.to_string())?;
        ensure(report.is_complete_lattice, || {
            format!("game {games}: report says incomplete")
        })?;
        gaps += usize::from(report.sublattice_gap.is_some());
        for i in 0..g.num_players() {
            let br = best_response_correspondence(&g, i);
            ensure(
                is_increasing_strong_set_order(&br)
                    .map_err(|e| e.to_string())?
                    .holds(),
                || format!("game {games}: best response of p{} not increasing", i + 1),
            )?;
            strong_set_oracle(&g, i).map_err(|e| format!("game {games}: {e}"))?;
        }
        let v = ValidatedGame::new(&g).map_err(|e| e.to_string())?;
        let t = tarski_extremes(&v).map_err(|e| e.to_string())?;
        let (top, bottom) = oracle::extremes(&g, &brute);
        ensure(
            Some(t.largest.0) == top && Some(t.least.0) == bottom,
            || format!("game {games}: tarski differs"),
        )?;
    }
    Ok(format!(
        "{games} games, {equilibria} equilibria; all complete, monotone, tarski exact; {gaps} with E not a sublattice"
    ))
}

fn strong_set_oracle(g: &RationalGame, i: usize) -> Result<(), String> {
    let s = g.space();
    let own = s.factor(i);
    let reps: Vec<usize> = (0..s.size()).filter(|&x| s.coord(x, i) == 0).collect();
    for &x in &reps {
        for &y in &reps {
            if !s.leq(x, y) {
                continue;
            }
            let (bx, by) = (
                oracle::best_response(g, i, x),
                oracle::best_response(g, i, y),
            );
            for &a in &bx {
                for &b in &by {
                    if !bx.contains(&own.meet(a, b)) || !by.contains(&own.join(a, b)) {
                        return Err(format!("oracle: strong set order fails for p{}", i + 1));
                    }
                }
            }
        }
    }
    Ok(())
}

fn all_subsets(n: usize) -> impl Iterator<Item = qsgame::ElementSet> {
    (0u32..1 << n).map(move |m| oracle::mask_to_set(n, m))
}

// 7: subcomplete iff sublattice
fn subcomplete_iff_sublattice() -> Outcome {
    let mut count = 0;
    for n in 1..=6 {
        for l in lattices_of_size(n) {
            for s in all_subsets(n) {
                count += 1;
                let m = oracle::members(&s);
                let sub = is_subcomplete_exhaustive(l, &s, n)
                    .map_err(|e| e.to_string())?
                    .holds();
                let lat = is_sublattice(l, &s).holds();
                let chains = is_chain_subcomplete_exhaustive(l, &s, n)
                    .map_err(|e| e.to_string())?
                    .holds();
                ensure(sub == lat, || {
                    format!("size {n} subset {m:?}: subcomplete {sub} sublattice {lat}")
                })?;
                ensure(chains, || {
                    format!("size {n} subset {m:?} not chain-subcomplete")
                })?;
                ensure(
                    oracle::subcomplete(l, &m) == sub && oracle::sublattice(l, &m) == lat,
                    || format!("size {n} subset {m:?}: oracle disagrees"),
                )?;
                ensure(oracle::chain_subcomplete(l, &m), || {
                    format!("oracle: {m:?}")
                })?;
            }
        }
    }
    Ok(format!(
        "{count} subsets of all lattices with at most 6 elements"
    ))
}

fn corpus_lattices() -> Vec<(String, Arc<FiniteLattice>)> {
    let mut out = Vec::new();
    for entry in std::fs::read_dir(corpus_path("")).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        if !matches!(
            path.extension().and_then(|e| e.to_str()),
            Some("fn" | "game" | "lat")
        ) {
            continue;
        }
        let Ok(doc) = format::parse_document(&std::fs::read_to_string(&path).unwrap()) else {
            continue;
        };
        match doc {
            Document::Lattice(l) => out.push((name, Arc::new(l))),
            Document::Function(f) => out.push((name, f.domain().clone())),
            Document::Game(g) => {
                for i in 0..g.num_players() {
                    out.push((
                        format!("{name}[{}]", g.players()[i]),
                        g.strategies(i).clone(),
                    ));
                }
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

// 8: interval-closed sets are chain-subcomplete
fn chain_closure() -> Outcome {
    let mut lattices = corpus_lattices();
    for n in 1..=8 {
        for (k, l) in lattices_of_size(n).iter().enumerate() {
            lattices.push((format!("enumerated-{n}-{k}"), Arc::new(l.clone())));
        }
    }
    lattices.retain(|(_, l)| l.len() <= 8);
    let mut sets = 0;
    for (name, l) in &lattices {
        let family = ClosedFamily::interval(l.clone()).map_err(|e| format!("{name}: {e}"))?;
        for c in family.closed_sets() {
            sets += 1;
            let v = is_chain_subcomplete_exhaustive(l, &c, l.len()).map_err(|e| e.to_string())?;
            ensure(v.holds(), || {
                format!(
                    "{name}: closed set {} not chain-subcomplete",
                    l.render_set(&c)
                )
            })?;
        }
    }
    Ok(format!("{} lattices, {sets} closed sets", lattices.len()))
}

// 9: strictly increasing transforms of one payoff
fn ordinal_invariance() -> Outcome {
    let mut rng = rng_from_seed(9);
    for k in 0..100 {
        let players = 2 + k % 2;
        let g = random_game(
            players,
            &Family::Mixed { max: 5 },
            PayoffStrategy::SupermodularThenTransform,
            &mut rng,
        )
        .map_err(|e| e.to_string())?;
        let i = below(&mut rng, players);
        let t = transform_table(g.payoff_table(i), &mut rng);
        let h = g
            .with_payoff(i, ChainCodomain::Rational, t)
            .map_err(|e| e.to_string())?;
        let (before, after) = (oracle::nash(&g), oracle::nash(&h));
        ensure(before == after, || format!("pair {k}: equilibria changed"))?;
        let (a, b) = (
            verify_equilibrium_structure(&g, ENUMERATION_CAP).map_err(|e| e.to_string())?,
            verify_equilibrium_structure(&h, ENUMERATION_CAP).map_err(|e| e.to_string())?,
        );
        ensure(
            a.equilibria == b.equilibria && a.largest == b.largest && a.least == b.least,
            || format!("pair {k}: report changed"),
        )?;
        let ta = tarski_extremes(&ValidatedGame::new(&g).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let tb = tarski_extremes(&ValidatedGame::new(&h).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        ensure(ta.largest == tb.largest && ta.least == tb.least, || {
            format!("pair {k}: tarski changed")
        })?;
    }
    Ok("100 (game, transform) pairs: E, largest and least unchanged".into())
}

// 10: implication hierarchy
fn hierarchy() -> Outcome {
    let mut scanned = 0usize;
    let mut topo_pairs = 0usize;
    for n in 1..=4 {
        let tops = oracle::finite_topologies(n);
        let expected = [1, 1, 4, 29, 355][n];
        ensure(tops.len() == expected, || {
            format!("{} topologies on {n} points", tops.len())
        })?;
        for l in lattices_of_size(n) {
            let l = Arc::new(l.clone());
            let families: Vec<ClosedFamily> = tops
                .iter()
                .map(|fam| {
                    ClosedFamily::explicit(
                        l.clone(),
                        fam.iter().map(|&m| oracle::mask_to_set(n, m)),
                    )
                    .unwrap()
                })
                .collect();
            for t in oracle::tables(n, 3) {
                let f = LatticeFunction::new(l.clone(), ChainCodomain::Rational, t).unwrap();
                scanned += 1;
                let sm = is_supermodular(&f).map_err(|e| e.to_string())?.holds();
                ensure(!sm || is_quasisupermodular(&f).holds(), || {
                    format!("supermodular not qsm: {:?}", f.table())
                })?;
                for fam in &families {
                    topo_pairs += 1;
                    let usc = is_topologically_usc(&f, fam)
                        .map_err(|e| e.to_string())?
                        .holds();
                    let tr = transfer_continuity(&f, fam).map_err(|e| e.to_string())?;
                    let (up, weak) = (tr.transfer_upper.holds(), tr.transfer_weak_upper.holds());
                    ensure(!usc || up, || {
                        format!("usc without transfer upper: {:?}", f.table())
                    })?;
                    ensure(!up || weak, || {
                        format!("transfer upper without weak: {:?}", f.table())
                    })?;
                    // on a finite space transfer upper means a closed argmax
                    let am = oracle::argmax(f.table());
                    let mut set = l.empty_set();
                    am.iter().for_each(|&x| set.insert(x));
                    ensure(up == fam.is_closed(&set), || {
                        "transfer upper vs closed argmax".into()
                    })?;
                }
            }
        }
    }
    let mut products = 0usize;
    let small: Vec<Arc<FiniteLattice>> = (1..=4)
        .flat_map(|n| lattices_of_size(n).iter().map(|l| Arc::new(l.clone())))
        .filter(|l| l.len() >= 2)
        .collect();
    for a in &small {
        for b in &small {
            if a.len() * b.len() > 8 {
                continue;
            }
            let d = Arc::new(product_lattice(&[a.clone(), b.clone()]).map_err(|e| e.to_string())?);
            for t in oracle::tables(d.len(), 3) {
                let f = LatticeFunction::new(d.clone(), ChainCodomain::Rational, t).unwrap();
                products += 1;
                let sm = is_supermodular(&f).map_err(|e| e.to_string())?.holds();
                ensure(!sm || is_quasisupermodular(&f).holds(), || {
                    "supermodular not qsm on a product".into()
                })?;
                for k in 0..2 {
                    let id = has_increasing_differences(&f, k)
                        .map_err(|e| e.to_string())?
                        .holds();
                    let sc = is_single_crossing(&f, k)
                        .map_err(|e| e.to_string())?
                        .holds();
                    ensure(!id || sc, || {
                        format!(
                            "increasing differences without single crossing: {:?}",
                            f.table()
                        )
                    })?;
                }
            }
        }
    }
    converse_witnesses()?;
    Ok(format!(
        "{scanned} tables with {topo_pairs} (table, topology) pairs, {products} product tables; four converse witnesses fail"
    ))
}

fn converse_witnesses() -> Result<(), String> {
    let mined = function("mined_grid2x3.fn");
    ensure(
        is_quasisupermodular(&mined).holds() && oracle::qsm(mined.domain(), mined.table()),
        || "mined witness not qsm".into(),
    )?;
    ensure(
        !is_supermodular(&mined).map_err(|e| e.to_string())?.holds(),
        || "mined witness supermodular".into(),
    )?;
    ensure(!oracle::supermodular(mined.domain(), mined.table()), || {
        "oracle: mined witness supermodular".into()
    })?;
    ensure(
        is_single_crossing(&mined, 0)
            .map_err(|e| e.to_string())?
            .holds(),
        || "mined: no single crossing".into(),
    )?;
    ensure(
        !has_increasing_differences(&mined, 0)
            .map_err(|e| e.to_string())?
            .holds(),
        || "mined: increasing differences hold".into(),
    )?;

    let f = function("chain3_identity.fn");
    let text = std::fs::read_to_string(corpus_path("chain3_top_closed.top")).unwrap();
    let fam = format::parse_topology(&text, f.domain().clone()).map_err(|e| e.to_string())?;
    let tr = transfer_continuity(&f, &fam).map_err(|e| e.to_string())?;
    ensure(tr.transfer_upper.holds(), || {
        "chain3: transfer upper fails".into()
    })?;
    ensure(
        !is_topologically_usc(&f, &fam)
            .map_err(|e| e.to_string())?
            .holds(),
        || "chain3: usc holds".into(),
    )?;

    let f = function("chain2_identity.fn");
    let text = std::fs::read_to_string(corpus_path("chain2_indiscrete.top")).unwrap();
    let fam = format::parse_topology(&text, f.domain().clone()).map_err(|e| e.to_string())?;
    let tr = transfer_continuity(&f, &fam).map_err(|e| e.to_string())?;
    ensure(
        tr.transfer_weak_upper.holds() && !tr.transfer_upper.holds(),
        || "chain2 witness".into(),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("diamond x chain example", veinott_example),
        ("sum of quasisupermodular functions", sum_example),
        ("M5 x diamond game", order_analog),
        ("grid discretizations", discretizations),
        ("argmax structure suite", kuku_suite),
        ("random validated games", random_games),
        ("subcomplete iff sublattice", subcomplete_iff_sublattice),
        ("interval-closed sets", chain_closure),
        ("ordinal invariance", ordinal_invariance),
        ("implication hierarchy", hierarchy),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or(p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name} ({secs:.1}s): {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name} ({secs:.1}s): {why}", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
