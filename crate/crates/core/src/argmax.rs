//! Argmax sets, set-valued maps into a lattice, and the argmax structure
//! theorem checked by brute force.

use std::fmt;
use std::sync::Arc;

use crate::error::ArgmaxError;
use crate::function::LatticeFunction;
use crate::lattice::{
    classify_subset, ClassifyOptions, ElementSet, FiniteLattice, ProductSpace, SubsetFlags,
};
use crate::props::{
    is_quasisupermodular, is_upper_chain_subcomplete, upper_level_set, QsmViolation, UcsReport,
};
use crate::value::Payoff;
use crate::verdict::Verdict;

/// A finite poset used to index a correspondence.
pub trait IndexOrder: fmt::Debug + Send + Sync {
    fn len(&self) -> usize;
    fn leq(&self, a: usize, b: usize) -> bool;
    fn label(&self, a: usize) -> String;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl IndexOrder for FiniteLattice {
    fn len(&self) -> usize {
        FiniteLattice::len(self)
    }
    fn leq(&self, a: usize, b: usize) -> bool {
        FiniteLattice::leq(self, a, b)
    }
    fn label(&self, a: usize) -> String {
        FiniteLattice::label(self, a).to_string()
    }
}

impl IndexOrder for ProductSpace {
    fn len(&self) -> usize {
        self.size()
    }
    fn leq(&self, a: usize, b: usize) -> bool {
        ProductSpace::leq(self, a, b)
    }
    fn label(&self, a: usize) -> String {
        ProductSpace::label(self, a)
    }
}

/// A chain given by its labels in increasing order.
#[derive(Debug, Clone)]
pub struct LabeledChain(pub Vec<String>);

impl IndexOrder for LabeledChain {
    fn len(&self) -> usize {
        self.0.len()
    }
    fn leq(&self, a: usize, b: usize) -> bool {
        a <= b
    }
    fn label(&self, a: usize) -> String {
        self.0[a].clone()
    }
}

/// A map from a finite poset to subsets of a lattice.
#[derive(Debug, Clone)]
pub struct Correspondence {
    index: Arc<dyn IndexOrder>,
    carrier: Arc<FiniteLattice>,
    values: Vec<ElementSet>,
}

impl Correspondence {
    pub fn new(
        index: Arc<dyn IndexOrder>,
        carrier: Arc<FiniteLattice>,
        values: Vec<ElementSet>,
    ) -> Self {
        assert_eq!(index.len(), values.len(), "one value per index element");
        assert!(
            values.iter().all(|v| v.ones().all(|x| x < carrier.len())),
            "values lie in the carrier"
        );
        Correspondence {
            index,
            carrier,
            values,
        }
    }

    pub fn index(&self) -> &dyn IndexOrder {
        &*self.index
    }

    pub fn carrier(&self) -> &Arc<FiniteLattice> {
        &self.carrier
    }

    pub fn values(&self) -> &[ElementSet] {
        &self.values
    }

    pub fn value(&self, s: usize) -> &ElementSet {
        &self.values[s]
    }

    fn require_nonempty(&self) -> Result<(), ArgmaxError> {
        match self.values.iter().position(|v| v.is_clear()) {
            Some(s) => Err(ArgmaxError::EmptyValue(self.index.label(s))),
            None => Ok(()),
        }
    }

    /// `s ↦ max G(s)`.
    pub fn max_selection(&self) -> Result<Vec<usize>, ArgmaxError> {
        self.require_nonempty()?;
        (0..self.values.len())
            .map(|s| {
                greatest_in(&self.carrier, &self.values[s])
                    .ok_or_else(|| ArgmaxError::NoGreatestElement(self.index.label(s)))
            })
            .collect()
    }

    /// `s ↦ min G(s)`.
    pub fn min_selection(&self) -> Result<Vec<usize>, ArgmaxError> {
        self.require_nonempty()?;
        (0..self.values.len())
            .map(|s| {
                least_in(&self.carrier, &self.values[s])
                    .ok_or_else(|| ArgmaxError::NoLeastElement(self.index.label(s)))
            })
            .collect()
    }
}

/// The greatest element of `set` in the order of `l`, if any.
pub fn greatest_in(l: &FiniteLattice, set: &ElementSet) -> Option<usize> {
    set.ones().find(|&g| set.ones().all(|x| l.leq(x, g)))
}

/// The least element of `set` in the order of `l`, if any.
pub fn least_in(l: &FiniteLattice, set: &ElementSet) -> Option<usize> {
    set.ones().find(|&g| set.ones().all(|x| l.leq(g, x)))
}

/// Maximizers of `f`.
pub fn argmax_set<V: Payoff>(f: &LatticeFunction<V>) -> ElementSet {
    let best = f.table().iter().max().expect("nonempty domain").clone();
    upper_level_set(f, &best)
}

/// `c ↦ {x : f(x) >= c}` over the image of `f`, indexed in increasing order.
pub fn level_correspondence<V: Payoff>(f: &LatticeFunction<V>) -> Correspondence {
    let image = f.image();
    let labels = image.iter().map(|v| f.render(v)).collect();
    let values = image.iter().map(|c| upper_level_set(f, c)).collect();
    Correspondence::new(Arc::new(LabeledChain(labels)), f.domain().clone(), values)
}

/// `x ∈ F(c)`, `x' ∈ F(c')`, `c < c'`, `x∧x' ∉ F(c)` and yet `x∨x' ∉ F(c')`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakVeinottViolation {
    pub c: usize,
    pub c_hi: usize,
    pub x: usize,
    pub x_hi: usize,
}

impl WeakVeinottViolation {
    pub fn render(&self, g: &Correspondence) -> String {
        let l = g.carrier();
        format!(
            "c={} c'={} x={} x'={} meet={} join={}",
            g.index().label(self.c),
            g.index().label(self.c_hi),
            l.label(self.x),
            l.label(self.x_hi),
            l.label(l.meet(self.x, self.x_hi)),
            l.label(l.join(self.x, self.x_hi)),
        )
    }
}

/// Monotonicity of a chain-indexed correspondence in the weak Veinott sense:
/// for `c < c'`, `x ∈ F(c)`, `x' ∈ F(c')` with `x∧x' ∉ F(c)`, `x∨x' ∈ F(c')`.
pub fn is_increasing_weak_veinott(
    g: &Correspondence,
) -> Result<Verdict<WeakVeinottViolation>, ArgmaxError> {
    let idx = g.index();
    let n = idx.len();
    for a in 0..n {
        for b in a + 1..n {
            if !idx.leq(a, b) && !idx.leq(b, a) {
                return Err(ArgmaxError::IndexNotAChain(idx.label(a), idx.label(b)));
            }
        }
    }
    g.require_nonempty()?;
    let l = g.carrier();
    for c in 0..n {
        for c_hi in 0..n {
            if c == c_hi || !idx.leq(c, c_hi) {
                continue;
            }
            for x in g.value(c).ones() {
                for x_hi in g.value(c_hi).ones() {
                    if !g.value(c).contains(l.meet(x, x_hi))
                        && !g.value(c_hi).contains(l.join(x, x_hi))
                    {
                        return Ok(Verdict::Fails(WeakVeinottViolation { c, c_hi, x, x_hi }));
                    }
                }
            }
        }
    }
    Ok(Verdict::Holds)
}

/// `s <= s'`, `x ∈ G(s)`, `x' ∈ G(s')` with `x∧x' ∉ G(s)` or `x∨x' ∉ G(s')`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongSetViolation {
    pub s: usize,
    pub s_hi: usize,
    pub x: usize,
    pub x_hi: usize,
    /// `true` when the meet escapes `G(s)`, `false` when the join escapes `G(s')`.
    pub meet_escapes: bool,
}

impl StrongSetViolation {
    pub fn render(&self, g: &Correspondence) -> String {
        let l = g.carrier();
        let (what, z) = if self.meet_escapes {
            ("meet", l.meet(self.x, self.x_hi))
        } else {
            ("join", l.join(self.x, self.x_hi))
        };
        format!(
            "s={} s'={} x={} x'={} {what}={} outside",
            g.index().label(self.s),
            g.index().label(self.s_hi),
            l.label(self.x),
            l.label(self.x_hi),
            l.label(z)
        )
    }
}

/// Increasing in the strong set order: `s <= s'` implies `G(s) ⊑ G(s')`.
pub fn is_increasing_strong_set_order(
    g: &Correspondence,
) -> Result<Verdict<StrongSetViolation>, ArgmaxError> {
    g.require_nonempty()?;
    let idx = g.index();
    let l = g.carrier();
    let n = idx.len();
    for s in 0..n {
        for s_hi in 0..n {
            if !idx.leq(s, s_hi) {
                continue;
            }
            for x in g.value(s).ones() {
                for x_hi in g.value(s_hi).ones() {
                    let meet_escapes = !g.value(s).contains(l.meet(x, x_hi));
                    if meet_escapes || !g.value(s_hi).contains(l.join(x, x_hi)) {
                        return Ok(Verdict::Fails(StrongSetViolation {
                            s,
                            s_hi,
                            x,
                            x_hi,
                            meet_escapes,
                        }));
                    }
                }
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Premises and conclusion of the argmax structure theorem on one function.
#[derive(Debug, Clone)]
pub struct ArgmaxReport<V> {
    pub argmax: ElementSet,
    pub quasisupermodular: Verdict<QsmViolation>,
    pub upper_chain_subcomplete: UcsReport<V>,
    pub nonempty: bool,
    pub flags: SubsetFlags,
}

impl<V: Payoff> ArgmaxReport<V> {
    pub fn premises_hold(&self) -> bool {
        self.quasisupermodular.holds()
            && self.upper_chain_subcomplete.upper_chain_subcomplete.holds()
    }

    pub fn is_sublattice(&self) -> bool {
        self.flags.is_sublattice.holds()
    }

    pub fn is_subcomplete(&self) -> bool {
        self.flags.is_subcomplete.holds()
    }

    pub fn conclusion_holds(&self) -> bool {
        self.nonempty && self.is_sublattice() && self.is_subcomplete()
    }

    /// Structured form with labels, for reports.
    pub fn to_json(&self, f: &LatticeFunction<V>) -> serde_json::Value {
        let d = f.domain();
        serde_json::json!({
            "argmax": d.subset_labels(&self.argmax),
            "premises": {
                "quasisupermodular": self.quasisupermodular.holds(),
                "upper_chain_subcomplete": self.upper_chain_subcomplete.upper_chain_subcomplete.holds(),
            },
            "conclusion": {
                "nonempty": self.nonempty,
                "is_sublattice": self.is_sublattice(),
                "is_subcomplete": self.is_subcomplete(),
            },
        })
    }
}

/// Evaluates both premises and the conclusion; the conclusion is reported even
/// when the premises fail. Errors only if the premises hold and the
/// conclusion does not.
pub fn verify_kuku<V: Payoff>(f: &LatticeFunction<V>) -> Result<ArgmaxReport<V>, ArgmaxError> {
    let argmax = argmax_set(f);
    let flags = classify_subset(f.domain(), &argmax, ClassifyOptions::default())
        .expect("shortcut mode never fails");
    let report = ArgmaxReport {
        nonempty: !argmax.is_clear(),
        argmax,
        quasisupermodular: is_quasisupermodular(f),
        upper_chain_subcomplete: is_upper_chain_subcomplete(f),
        flags,
    };
    if report.premises_hold() && !report.conclusion_holds() {
        return Err(ArgmaxError::TheoremFalsified(format!(
            "argmax {} is not a nonempty subcomplete sublattice",
            f.domain().render_set(&report.argmax)
        )));
    }
    Ok(report)
}
