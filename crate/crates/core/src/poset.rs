//! Finite posets stored by their cover relation.
//!
//! Elements are dense ids `0..n`. The order relation is precomputed as
//! reachability bitsets at construction, so every `leq` query is a bit test.
//! Input edges may be any generating set of the order; they are reduced to
//! the Hasse diagram (the transitive reduction) on the way in.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;
use std::ops::Deref;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};

/// Default cap on the number of elements accepted by [`build_poset`].
pub const DEFAULT_MAX_ELEMENTS: usize = 4096;

/// Default cap on the number of maximal chains [`FinitePoset::maximal_chains`] will emit.
pub const DEFAULT_MAX_CHAINS: usize = 1_000_000;

/// A strictly increasing sequence of elements.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Chain(Vec<usize>);

impl Chain {
    pub fn new(elems: Vec<usize>) -> Self {
        Chain(elems)
    }

    pub fn elems(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    /// Position of `x` on the chain, if present.
    pub fn position(&self, x: usize) -> Option<usize> {
        self.0.iter().position(|&c| c == x)
    }
}

impl Deref for Chain {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl From<Vec<usize>> for Chain {
    fn from(v: Vec<usize>) -> Self {
        Chain(v)
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}

#[derive(Debug, Clone)]
pub struct BuildOptions {
    pub max_elements: usize,
    /// Reject edges implied by the others instead of reducing them away.
    pub strict: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            max_elements: DEFAULT_MAX_ELEMENTS,
            strict: false,
        }
    }
}

/// An immutable finite poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    n: usize,
    covers: Vec<(usize, usize)>,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
    // above[x] holds every y with x <= y; below[y] every x with x <= y.
    above: Vec<FixedBitSet>,
    below: Vec<FixedBitSet>,
    topo: Vec<usize>,
    labels: Option<Vec<String>>,
}

/// Builds a poset from any generating set of edges `(lower, upper)`.
///
/// Redundant edges are dropped silently; see [`build_poset_with`] for the
/// strict variant and for the list of what was dropped.
pub fn build_poset(
    n: usize,
    edges: &[(usize, usize)],
    labels: Option<Vec<String>>,
) -> Result<FinitePoset> {
    build_poset_with(n, edges, labels, &BuildOptions::default()).map(|(p, _)| p)
}

/// Like [`build_poset`], also returning the input edges removed by the
/// reduction (duplicates included), sorted.
pub fn build_poset_with(
    n: usize,
    edges: &[(usize, usize)],
    labels: Option<Vec<String>>,
    opts: &BuildOptions,
) -> Result<(FinitePoset, Vec<(usize, usize)>)> {
    if n == 0 {
        return Err(Error::Empty);
    }
    if n > opts.max_elements {
        return Err(Error::Limit {
            what: "element",
            limit: opts.max_elements,
        });
    }
    for &(a, b) in edges {
        for id in [a, b] {
            if id >= n {
                return Err(Error::bounds(id, n));
            }
        }
        if a == b {
            return Err(Error::Cycle(vec![a]));
        }
    }
    if let Some(labels) = &labels {
        check_labels(labels, n)?;
    }

    let mut succ = vec![Vec::new(); n];
    let mut pred = vec![Vec::new(); n];
    for &(a, b) in edges {
        succ[a].push(b);
        pred[b].push(a);
    }
    for list in succ.iter_mut().chain(pred.iter_mut()) {
        list.sort_unstable();
        list.dedup();
    }

    let topo = topological_order(&succ, &pred)?;

    let mut above: Vec<FixedBitSet> = (0..n).map(|_| FixedBitSet::with_capacity(n)).collect();
    for &x in topo.iter().rev() {
        let mut set = FixedBitSet::with_capacity(n);
        set.insert(x);
        for &s in &succ[x] {
            set.union_with(&above[s]);
        }
        above[x] = set;
    }

    // An edge x->s is a cover iff s is not reachable from another successor of x.
    let mut upper = vec![Vec::new(); n];
    let mut lower = vec![Vec::new(); n];
    let mut covers = Vec::new();
    for x in 0..n {
        let mut indirect = FixedBitSet::with_capacity(n);
        for &s in &succ[x] {
            let mut strict = above[s].clone();
            strict.set(s, false);
            indirect.union_with(&strict);
        }
        for &s in &succ[x] {
            if !indirect.contains(s) {
                upper[x].push(s);
                lower[s].push(x);
                covers.push((x, s));
            }
        }
    }
    for l in &mut lower {
        l.sort_unstable();
    }

    let mut redundant: Vec<(usize, usize)> = edges
        .iter()
        .copied()
        .filter(|e| covers.binary_search(e).is_err())
        .collect();
    let mut seen = std::collections::HashSet::new();
    for &e in edges {
        if covers.binary_search(&e).is_ok() && !seen.insert(e) {
            redundant.push(e);
        }
    }
    redundant.sort_unstable();
    if opts.strict {
        if let Some(&(a, b)) = redundant.first() {
            return Err(Error::RedundantEdge(a, b));
        }
    }

    let mut below: Vec<FixedBitSet> = (0..n).map(|_| FixedBitSet::with_capacity(n)).collect();
    for (x, ups) in above.iter().enumerate() {
        for y in ups.ones() {
            below[y].insert(x);
        }
    }

    Ok((
        FinitePoset {
            n,
            covers,
            upper,
            lower,
            above,
            below,
            topo,
            labels,
        },
        redundant,
    ))
}

fn check_labels(labels: &[String], n: usize) -> Result<()> {
    if labels.len() != n {
        return Err(Error::Labels(format!(
            "expected {n} labels, found {}",
            labels.len()
        )));
    }
    let mut sorted: Vec<&String> = labels.iter().collect();
    sorted.sort();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::Labels(format!("duplicate label {:?}", w[0])));
    }
    Ok(())
}

/// Kahn's algorithm, smallest available id first.
fn topological_order(succ: &[Vec<usize>], pred: &[Vec<usize>]) -> Result<Vec<usize>> {
    let n = succ.len();
    let mut indeg: Vec<usize> = pred.iter().map(Vec::len).collect();
    let mut heap: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&x| indeg[x] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(x)) = heap.pop() {
        order.push(x);
        for &s in &succ[x] {
            indeg[s] -= 1;
            if indeg[s] == 0 {
                heap.push(Reverse(s));
            }
        }
    }
    if order.len() == n {
        return Ok(order);
    }

    // Every leftover node has a leftover predecessor; walk back until a repeat.
    let mut placed = vec![false; n];
    for &x in &order {
        placed[x] = true;
    }
    let start = (0..n).find(|&x| !placed[x]).expect("leftover node");
    let mut path = vec![start];
    let mut pos = vec![usize::MAX; n];
    pos[start] = 0;
    let mut cur = start;
    loop {
        let p = *pred[cur]
            .iter()
            .find(|&&p| !placed[p])
            .expect("leftover predecessor");
        if pos[p] != usize::MAX {
            let mut cycle: Vec<usize> = path[pos[p]..].to_vec();
            cycle.reverse();
            return Err(Error::Cycle(cycle));
        }
        pos[p] = path.len();
        path.push(p);
        cur = p;
    }
}

impl FinitePoset {
    pub fn len(&self) -> usize {
        self.n
    }

    /// Always false: empty posets cannot be built.
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Cover pairs `(lower, upper)`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of `x`: its label, or the id.
    pub fn name(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    /// A linear extension, smallest id first among available elements.
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    pub fn check(&self, x: usize) -> Result<()> {
        if x < self.n {
            Ok(())
        } else {
            Err(Error::bounds(x, self.n))
        }
    }

    pub fn check_all(&self, xs: &[usize]) -> Result<()> {
        xs.iter().try_for_each(|&x| self.check(x))
    }

    pub fn leq(&self, x: usize, y: usize) -> Result<bool> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.le(x, y))
    }

    pub fn upper_covers(&self, x: usize) -> Result<&[usize]> {
        self.check(x)?;
        Ok(&self.upper[x])
    }

    pub fn lower_covers(&self, x: usize) -> Result<&[usize]> {
        self.check(x)?;
        Ok(&self.lower[x])
    }

    pub(crate) fn le(&self, x: usize, y: usize) -> bool {
        self.above[x].contains(y)
    }

    pub(crate) fn comparable(&self, x: usize, y: usize) -> bool {
        self.le(x, y) || self.le(y, x)
    }

    /// True iff `y` covers `x`.
    pub(crate) fn is_cover(&self, x: usize, y: usize) -> bool {
        self.upper[x].binary_search(&y).is_ok()
    }

    pub(crate) fn ups(&self, x: usize) -> &[usize] {
        &self.upper[x]
    }

    pub(crate) fn downs(&self, x: usize) -> &[usize] {
        &self.lower[x]
    }

    /// Bitset of all `y >= x`.
    pub(crate) fn up_set(&self, x: usize) -> &FixedBitSet {
        &self.above[x]
    }

    /// Bitset of all `y <= x`.
    pub(crate) fn down_set(&self, x: usize) -> &FixedBitSet {
        &self.below[x]
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.lower[x].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.upper[x].is_empty()).collect()
    }

    /// The unique least element, if there is one.
    pub fn least_element(&self) -> Option<usize> {
        match self.minimal_elements().as_slice() {
            [z] => Some(*z),
            _ => None,
        }
    }

    pub fn greatest_element(&self) -> Option<usize> {
        match self.maximal_elements().as_slice() {
            [t] => Some(*t),
            _ => None,
        }
    }

    /// Number of maximal chains, saturating at `u128::MAX`.
    pub fn count_maximal_chains(&self) -> u128 {
        let mut count = vec![0u128; self.n];
        for &x in self.topo.iter().rev() {
            count[x] = if self.upper[x].is_empty() {
                1
            } else {
                self.upper[x]
                    .iter()
                    .fold(0u128, |acc, &c| acc.saturating_add(count[c]))
            };
        }
        self.minimal_elements()
            .iter()
            .fold(0u128, |acc, &m| acc.saturating_add(count[m]))
    }

    /// All maximal chains in lexicographic order, with the default cap.
    pub fn maximal_chains(&self) -> Result<Vec<Chain>> {
        self.maximal_chains_capped(DEFAULT_MAX_CHAINS)
    }

    /// All maximal chains in lexicographic order of their element sequences.
    ///
    /// A DFS from each minimal element in ascending order, stepping through
    /// upper covers in ascending order, visits chains lexicographically: no
    /// maximal chain is a proper prefix of another.
    pub fn maximal_chains_capped(&self, cap: usize) -> Result<Vec<Chain>> {
        if self.count_maximal_chains() > cap as u128 {
            return Err(Error::Limit {
                what: "maximal chain",
                limit: cap,
            });
        }
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for m in self.minimal_elements() {
            self.chains_from(m, &mut stack, &mut out);
        }
        Ok(out)
    }

    fn chains_from(&self, x: usize, stack: &mut Vec<usize>, out: &mut Vec<Chain>) {
        stack.push(x);
        if self.upper[x].is_empty() {
            out.push(Chain(stack.clone()));
        } else {
            for &c in &self.upper[x] {
                self.chains_from(c, stack, out);
            }
        }
        stack.pop();
    }

    /// Checks that `chain` is a maximal chain of this poset.
    pub fn check_maximal_chain(&self, chain: &[usize]) -> Result<()> {
        self.check_all(chain)?;
        let (Some(&first), Some(&last)) = (chain.first(), chain.last()) else {
            return Err(Error::InvalidChain("empty chain".into()));
        };
        if !self.lower[first].is_empty() {
            return Err(Error::InvalidChain(format!("{first} is not minimal")));
        }
        if !self.upper[last].is_empty() {
            return Err(Error::InvalidChain(format!("{last} is not maximal")));
        }
        if let Some(w) = chain.windows(2).find(|w| !self.is_cover(w[0], w[1])) {
            return Err(Error::InvalidChain(format!(
                "{} does not cover {}",
                w[1], w[0]
            )));
        }
        Ok(())
    }

    pub fn is_antichain(&self, set: &[usize]) -> Result<bool> {
        Ok(self.antichain_violation(set)?.is_none())
    }

    /// First pair `(x, y)` of `set` with `x < y`, scanning in the given order.
    pub fn antichain_violation(&self, set: &[usize]) -> Result<Option<(usize, usize)>> {
        self.check_all(set)?;
        for (i, &x) in set.iter().enumerate() {
            for &y in &set[i + 1..] {
                if x == y {
                    continue;
                }
                if self.le(x, y) {
                    return Ok(Some((x, y)));
                }
                if self.le(y, x) {
                    return Ok(Some((y, x)));
                }
            }
        }
        Ok(None)
    }

    /// The induced subposet on `[x, y]` with a map from its ids to ours.
    pub fn interval_subposet(&self, x: usize, y: usize) -> Result<(FinitePoset, Vec<usize>)> {
        if !self.leq(x, y)? {
            return Err(Error::NotComparable(x, y));
        }
        let members: Vec<usize> = (0..self.n)
            .filter(|&z| self.le(x, z) && self.le(z, y))
            .collect();
        let mut local = vec![usize::MAX; self.n];
        for (i, &z) in members.iter().enumerate() {
            local[z] = i;
        }
        let edges: Vec<(usize, usize)> = self
            .covers
            .iter()
            .filter(|&&(a, b)| local[a] != usize::MAX && local[b] != usize::MAX)
            .map(|&(a, b)| (local[a], local[b]))
            .collect();
        let labels = self
            .labels
            .as_ref()
            .map(|l| members.iter().map(|&z| l[z].clone()).collect());
        let sub = build_poset(members.len(), &edges, labels)?;
        Ok((sub, members))
    }
}

/// Sorts and dedups an element set.
pub fn normalize_set(mut set: Vec<usize>) -> Vec<usize> {
    set.sort_unstable();
    set.dedup();
    set
}
