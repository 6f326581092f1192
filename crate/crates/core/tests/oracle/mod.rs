//! Naive reference implementations used to cross-check the library. They
//! work from `leq` alone and recompute every bound by scanning.
#![allow(dead_code)]

use qsgame::{ElementSet, FiniteLattice, Game, JointStrategy, Rational};

pub fn lub(l: &FiniteLattice, xs: &[usize]) -> usize {
    let n = l.len();
    let uppers: Vec<usize> = (0..n)
        .filter(|&u| xs.iter().all(|&x| l.leq(x, u)))
        .collect();
    *uppers
        .iter()
        .find(|&&u| uppers.iter().all(|&v| l.leq(u, v)))
        .expect("finite lattice has joins")
}

pub fn glb(l: &FiniteLattice, xs: &[usize]) -> usize {
    let n = l.len();
    let lowers: Vec<usize> = (0..n)
        .filter(|&u| xs.iter().all(|&x| l.leq(u, x)))
        .collect();
    *lowers
        .iter()
        .find(|&&u| lowers.iter().all(|&v| l.leq(v, u)))
        .expect("finite lattice has meets")
}

/// Both clauses, over all ordered pairs.
pub fn qsm(l: &FiniteLattice, f: &[Rational]) -> bool {
    let n = l.len();
    (0..n).all(|x| {
        (0..n).all(|y| {
            let (m, j) = (glb(l, &[x, y]), lub(l, &[x, y]));
            (f[m] > f[x] || f[y] <= f[j]) && (f[m] >= f[x] || f[y] < f[j])
        })
    })
}

pub fn supermodular(l: &FiniteLattice, f: &[Rational]) -> bool {
    let n = l.len();
    (0..n).all(|x| (0..n).all(|y| f[x] + f[y] <= f[glb(l, &[x, y])] + f[lub(l, &[x, y])]))
}

pub fn members(set: &ElementSet) -> Vec<usize> {
    set.ones().collect()
}

pub fn subsets(items: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (1u64..1 << items.len()).map(move |mask| {
        items
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, &x)| x)
            .collect()
    })
}

pub fn is_chain(l: &FiniteLattice, xs: &[usize]) -> bool {
    xs.iter()
        .all(|&a| xs.iter().all(|&b| l.leq(a, b) || l.leq(b, a)))
}

pub fn sublattice(l: &FiniteLattice, set: &[usize]) -> bool {
    set.iter().all(|&a| {
        set.iter()
            .all(|&b| set.contains(&glb(l, &[a, b])) && set.contains(&lub(l, &[a, b])))
    })
}

pub fn subcomplete(l: &FiniteLattice, set: &[usize]) -> bool {
    subsets(set).all(|s| set.contains(&lub(l, &s)) && set.contains(&glb(l, &s)))
}

pub fn chain_subcomplete(l: &FiniteLattice, set: &[usize]) -> bool {
    subsets(set)
        .filter(|s| is_chain(l, s))
        .all(|s| set.contains(&lub(l, &s)) && set.contains(&glb(l, &s)))
}

pub fn argmax(f: &[Rational]) -> Vec<usize> {
    let best = f.iter().max().expect("nonempty");
    (0..f.len()).filter(|&x| f[x] == *best).collect()
}

/// Pure equilibria by checking every unilateral deviation.
pub fn nash(g: &Game<Rational>) -> Vec<usize> {
    let space = g.space();
    (0..space.size())
        .filter(|&x| {
            (0..g.num_players()).all(|i| {
                let here = g.payoff(i, JointStrategy(x));
                (0..space.factor(i).len())
                    .all(|s| g.payoff(i, JointStrategy(space.with_coord(x, i, s))) <= here)
            })
        })
        .collect()
}

/// Own strategies maximizing player `i`'s payoff against `x`.
pub fn best_response(g: &Game<Rational>, i: usize, x: usize) -> Vec<usize> {
    let space = g.space();
    let values: Vec<Rational> = (0..space.factor(i).len())
        .map(|s| *g.payoff(i, JointStrategy(space.with_coord(x, i, s))))
        .collect();
    argmax(&values)
}

/// Greatest and least element of `set` under the joint order, if any.
pub fn extremes(g: &Game<Rational>, set: &[usize]) -> (Option<usize>, Option<usize>) {
    let space = g.space();
    let top = set
        .iter()
        .copied()
        .find(|&a| set.iter().all(|&b| space.leq(b, a)));
    let bottom = set
        .iter()
        .copied()
        .find(|&a| set.iter().all(|&b| space.leq(a, b)));
    (top, bottom)
}

/// Every nonempty subset has a least upper and greatest lower bound inside
/// `set`, in the order induced from the joint space. For finite sets it is
/// enough to look at pairs and at the whole set.
pub fn complete_in_induced_order(g: &Game<Rational>, set: &[usize]) -> bool {
    let space = g.space();
    let least_upper = |xs: &[usize]| {
        let ups: Vec<usize> = set
            .iter()
            .copied()
            .filter(|&u| xs.iter().all(|&x| space.leq(x, u)))
            .collect();
        ups.iter().any(|&u| ups.iter().all(|&v| space.leq(u, v)))
    };
    let greatest_lower = |xs: &[usize]| {
        let downs: Vec<usize> = set
            .iter()
            .copied()
            .filter(|&u| xs.iter().all(|&x| space.leq(u, x)))
            .collect();
        downs
            .iter()
            .any(|&u| downs.iter().all(|&v| space.leq(v, u)))
    };
    !set.is_empty()
        && least_upper(set)
        && greatest_lower(set)
        && set.iter().all(|&a| {
            set.iter()
                .all(|&b| least_upper(&[a, b]) && greatest_lower(&[a, b]))
        })
}

/// Every finite topology on `n` points, as families of closed sets encoded
/// as bitmasks.
pub fn finite_topologies(n: usize) -> Vec<Vec<u32>> {
    let full = (1u32 << n) - 1;
    let inner: Vec<u32> = (1..full).collect();
    let mut out = Vec::new();
    for pick in 0u64..1 << inner.len() {
        let mut fam = vec![0, full];
        fam.extend(
            inner
                .iter()
                .enumerate()
                .filter(|(b, _)| pick >> b & 1 == 1)
                .map(|(_, &s)| s),
        );
        let closed = fam.iter().all(|&a| {
            fam.iter()
                .all(|&b| fam.contains(&(a | b)) && fam.contains(&(a & b)))
        });
        if closed {
            fam.sort_unstable();
            out.push(fam);
        }
    }
    out
}

pub fn mask_to_set(n: usize, mask: u32) -> ElementSet {
    let mut s = ElementSet::with_capacity(n);
    for b in (0..n).filter(|b| mask >> b & 1 == 1) {
        s.insert(b);
    }
    s
}

/// All tables on `n` points with values in `0..levels`.
pub fn tables(n: usize, levels: i64) -> impl Iterator<Item = Vec<Rational>> {
    let total = (levels as u64).pow(n as u32);
    (0..total).map(move |mut code| {
        (0..n)
            .map(|_| {
                let v = (code % levels as u64) as i64;
                code /= levels as u64;
                Rational::from_integer(v)
            })
            .collect()
    })
}
