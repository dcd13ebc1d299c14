//! Antichain cutsets: sets meeting every maximal chain in exactly one
//! element.
//!
//! On semimodular lattices these are exactly the level classes. This module
//! checks and enumerates cutsets, compares them against the level classes,
//! and builds explicit witnesses for both directions of that equivalence:
//! the level-class element on any given maximal chain, and a maximal chain
//! avoiding a given antichain that is not a level class.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::levels::{level_classes, tilde_neighbors, LevelPartition, SemimodularLattice};
use crate::poset::{normalize_set, Chain, FinitePoset};

/// Default cap on maximal chains for cutset enumeration.
pub const DEFAULT_ENUM_CHAIN_CAP: usize = 10_000;

/// Default cap on search nodes for cutset enumeration.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CutsetBudget {
    pub max_chains: usize,
    pub max_nodes: u64,
}

impl Default for CutsetBudget {
    fn default() -> Self {
        CutsetBudget {
            max_chains: DEFAULT_ENUM_CHAIN_CAP,
            max_nodes: DEFAULT_NODE_BUDGET,
        }
    }
}

/// The elements named in the construction of a chain avoiding a set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProofConfig {
    /// Start of the `~`-path, in the set.
    pub a: usize,
    /// End of the `~`-path, in the level class of `a` but not in the set.
    pub b: usize,
    /// Last path element in the set.
    pub x: usize,
    /// First path element outside the set.
    pub y: usize,
    /// `x ∧ y`, covered by both.
    pub z: usize,
    /// `x ∨ y`, covering both.
    pub w: usize,
}

/// A maximal chain meeting a set in zero or at least two elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessChain {
    pub chain: Chain,
    pub hits: Vec<usize>,
    pub config: Option<ProofConfig>,
}

/// Returns `None` if `set` is an antichain cutset, otherwise the
/// lexicographically first maximal chain meeting it in zero or several
/// elements.
pub fn check_antichain_cutset(p: &FinitePoset, set: &[usize]) -> Result<Option<WitnessChain>> {
    p.check_all(set)?;
    let mut member = vec![false; p.len()];
    for &x in set {
        member[x] = true;
    }
    let mut scan = CutsetScan {
        p,
        member: &member,
        clear: vec![[false; 2]; p.len()],
        path: Vec::new(),
    };
    for m in p.minimal_elements() {
        if let Some(chain) = scan.visit(m, 0) {
            let hits = chain.iter().copied().filter(|&c| member[c]).collect();
            return Ok(Some(WitnessChain {
                chain,
                hits,
                config: None,
            }));
        }
    }
    Ok(None)
}

pub fn is_antichain_cutset(p: &FinitePoset, set: &[usize]) -> Result<bool> {
    Ok(check_antichain_cutset(p, set)?.is_none())
}

/// Lexicographic DFS over maximal chains, memoizing `(element, hits so
/// far)` states from which every completion meets the set exactly once.
struct CutsetScan<'a> {
    p: &'a FinitePoset,
    member: &'a [bool],
    clear: Vec<[bool; 2]>,
    path: Vec<usize>,
}

impl CutsetScan<'_> {
    fn visit(&mut self, v: usize, hits: usize) -> Option<Chain> {
        let hits = hits + usize::from(self.member[v]);
        self.path.push(v);
        let found = if hits >= 2 {
            // Every completion fails; the smallest one is first.
            let mut chain = self.path.clone();
            let mut cur = v;
            while let Some(&u) = self.p.ups(cur).first() {
                chain.push(u);
                cur = u;
            }
            Some(Chain::new(chain))
        } else if self.p.ups(v).is_empty() {
            (hits != 1).then(|| Chain::new(self.path.clone()))
        } else {
            let mut found = None;
            for &u in self.p.ups(v) {
                if self.clear[u][hits] {
                    continue;
                }
                found = self.visit(u, hits);
                if found.is_some() {
                    break;
                }
            }
            found
        };
        self.path.pop();
        if found.is_none() {
            self.clear[v][hits - usize::from(self.member[v])] = true;
        }
        found
    }
}

/// All antichain cutsets with the default budget.
pub fn enumerate_antichain_cutsets(p: &FinitePoset) -> Result<Vec<Vec<usize>>> {
    enumerate_antichain_cutsets_with(p, &CutsetBudget::default())
}

/// All antichain cutsets, sorted lexicographically.
///
/// Backtracks over the maximal chains: the first chain not yet met by the
/// partial antichain picks one of its elements that is incomparable to
/// everything chosen so far. A branch is cut as soon as some unmet chain
/// has no such element left. Each cutset meets every chain once, so the
/// sequence of choices is determined by the result and no set is produced
/// twice.
pub fn enumerate_antichain_cutsets_with(
    p: &FinitePoset,
    budget: &CutsetBudget,
) -> Result<Vec<Vec<usize>>> {
    let chains = p.maximal_chains_capped(budget.max_chains)?;
    let mut search = CutsetSearch {
        p,
        chains: &chains,
        blocked: vec![0; p.len()],
        chosen: vec![false; p.len()],
        picks: Vec::new(),
        nodes: 0,
        max_nodes: budget.max_nodes,
        found: Vec::new(),
    };
    search.descend(0)?;
    let mut found = search.found;
    found.sort();
    Ok(found)
}

struct CutsetSearch<'a> {
    p: &'a FinitePoset,
    chains: &'a [Chain],
    // number of picked elements comparable to (or equal to) each element
    blocked: Vec<u32>,
    chosen: Vec<bool>,
    picks: Vec<usize>,
    nodes: u64,
    max_nodes: u64,
    found: Vec<Vec<usize>>,
}

impl CutsetSearch<'_> {
    fn is_met(&self, chain: &Chain) -> bool {
        chain.iter().any(|&c| self.chosen[c])
    }

    fn descend(&mut self, from: usize) -> Result<()> {
        let Some(i) = (from..self.chains.len()).find(|&i| !self.is_met(&self.chains[i])) else {
            self.found.push(normalize_set(self.picks.clone()));
            return Ok(());
        };
        let chains = self.chains;
        for &e in chains[i].iter() {
            if self.blocked[e] != 0 {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                return Err(Error::Limit {
                    what: "search node",
                    limit: self.max_nodes as usize,
                });
            }
            self.pick(e, true);
            if self.extendable(i + 1) {
                self.descend(i + 1)?;
            }
            self.pick(e, false);
        }
        Ok(())
    }

    fn pick(&mut self, e: usize, on: bool) {
        let p = self.p;
        for c in p.up_set(e).union(p.down_set(e)) {
            if on {
                self.blocked[c] += 1;
            } else {
                self.blocked[c] -= 1;
            }
        }
        self.chosen[e] = on;
        if on {
            self.picks.push(e);
        } else {
            self.picks.pop();
        }
    }

    /// Every unmet chain from `from` on still has a selectable element.
    fn extendable(&self, from: usize) -> bool {
        self.chains[from..]
            .iter()
            .all(|c| self.is_met(c) || c.iter().any(|&x| self.blocked[x] == 0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MismatchKind {
    LevelNotCutset,
    CutsetNotLevel,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MismatchWitness {
    /// A maximal chain the level class fails to meet exactly once.
    OffendingChain(WitnessChain),
    /// Two members of the cutset lying in different level classes.
    SplitClasses { a: usize, b: usize },
    /// The cutset sits inside the class of `present` but lacks `missing`.
    PartialClass { present: usize, missing: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub set: Vec<usize>,
    pub kind: MismatchKind,
    pub witness: MismatchWitness,
}

/// Level classes against antichain cutsets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub holds: bool,
    pub level_classes: Vec<Vec<usize>>,
    pub cutsets: Vec<Vec<usize>>,
    pub mismatches: Vec<Mismatch>,
}

/// Compares level classes with antichain cutsets on a semimodular lattice.
pub fn verify_theorem(p: &FinitePoset, budget: &CutsetBudget) -> Result<AnalysisReport> {
    Lattice::new(p)?.require_semimodular()?;
    analyze(p, budget)
}

/// [`verify_theorem`] without the semimodularity gate.
pub fn compare_unchecked(p: &FinitePoset, budget: &CutsetBudget) -> Result<AnalysisReport> {
    Lattice::new(p)?;
    analyze(p, budget)
}

fn analyze(p: &FinitePoset, budget: &CutsetBudget) -> Result<AnalysisReport> {
    let levels = level_classes(p);
    let classes = levels.classes().to_vec();
    let cutsets = enumerate_antichain_cutsets_with(p, budget)?;

    let mut mismatches = Vec::new();
    for class in &classes {
        if cutsets.binary_search(class).is_ok() {
            continue;
        }
        let chain = check_antichain_cutset(p, class)?.ok_or_else(|| {
            Error::Internal(format!(
                "{class:?} passes the chain scan but was not enumerated"
            ))
        })?;
        mismatches.push(Mismatch {
            set: class.clone(),
            kind: MismatchKind::LevelNotCutset,
            witness: MismatchWitness::OffendingChain(chain),
        });
    }
    for set in &cutsets {
        if levels.is_class(set) {
            continue;
        }
        mismatches.push(Mismatch {
            set: set.clone(),
            kind: MismatchKind::CutsetNotLevel,
            witness: class_mismatch_witness(&levels, set),
        });
    }

    Ok(AnalysisReport {
        holds: mismatches.is_empty(),
        level_classes: classes,
        cutsets,
        mismatches,
    })
}

fn class_mismatch_witness(levels: &LevelPartition, set: &[usize]) -> MismatchWitness {
    let a = set[0];
    if let Some(&b) = set.iter().find(|&&b| !levels.same_class(a, b)) {
        return MismatchWitness::SplitClasses { a, b };
    }
    let missing = *levels
        .class_containing(a)
        .iter()
        .find(|m| set.binary_search(m).is_err())
        .expect("set is not the whole class");
    MismatchWitness::PartialClass {
        present: a,
        missing,
    }
}

/// The element of the maximal chain `chain` in the level class of `a`,
/// located by height arithmetic from the chain's least element.
pub fn level_chain_intersection(p: &FinitePoset, chain: &[usize], a: usize) -> Result<usize> {
    let sm = SemimodularLattice::new(p)?;
    let y = *chain
        .first()
        .ok_or_else(|| Error::InvalidChain("empty chain".into()))?;
    locate_level_on_chain(&sm, chain, a, y)
}

/// Finds the `x` on `chain` with `h(x, y) = h(z, y) - h(z, a)`, where
/// `z = a ∧ y` and `y` is any element of the chain. Heights along a
/// maximal chain of a graded lattice step by one per position, so the
/// signed height `h(x, y)` is the index difference `pos(y) - pos(x)`.
pub fn locate_level_on_chain(
    sm: &SemimodularLattice<'_>,
    chain: &[usize],
    a: usize,
    y: usize,
) -> Result<usize> {
    let p = sm.poset();
    p.check(a)?;
    p.check_maximal_chain(chain)?;
    let pos_y = chain
        .iter()
        .position(|&c| c == y)
        .ok_or_else(|| Error::InvalidChain(format!("{y} is not on the chain")))?;
    let z = sm.meet(a, y);
    let target = sm.height(z, y) as i64 - sm.height(z, a) as i64;
    let pos_x = pos_y as i64 - target;
    if pos_x < 0 || pos_x >= chain.len() as i64 {
        return Err(Error::Internal(format!(
            "height target {target} from {y} falls off the chain"
        )));
    }
    let x = chain[pos_x as usize];
    if !sm.levels().same_class(x, a) {
        return Err(Error::Internal(format!(
            "{x} located on chain is not in the level class of {a}"
        )));
    }
    Ok(x)
}

/// A maximal chain avoiding the antichain `set`, which must not be a level
/// class, built from a `~`-path inside one level class.
///
/// With `a` the least member of `set` and `N` its class, a shortest `~`-path
/// inside `N` runs from `a` to the nearest `b ∈ N∖set`. At the first step
/// `x → y` leaving the set, `z = x∧y` is covered by both and, by the lower
/// covering condition, `w = x∨y` covers both. The chain through `z < y < w`,
/// extended by smallest covers at both ends, misses `set`: everything below
/// `z` or above `w` is comparable to `x ∈ set`.
pub fn proof_witness_chain(p: &FinitePoset, set: &[usize]) -> Result<WitnessChain> {
    let sm = SemimodularLattice::new(p)?;
    avoiding_chain(&sm, set)
}

/// [`proof_witness_chain`] on an already checked lattice.
pub fn avoiding_chain(sm: &SemimodularLattice<'_>, set: &[usize]) -> Result<WitnessChain> {
    let p = sm.poset();
    p.check_all(set)?;
    let set = normalize_set(set.to_vec());
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    if let Some((x, y)) = p.antichain_violation(&set)? {
        return Err(Error::NotAntichain(x, y));
    }
    let levels = sm.levels();
    if levels.is_class(&set) {
        return Err(Error::IsLevelClass(set));
    }
    let in_set = |e: usize| set.binary_search(&e).is_ok();

    let a = set[0];
    let class = levels.class_containing(a);
    // A class inside an antichain that is more than the class would leave
    // a chain through another member meeting both.
    if class.iter().all(|&m| in_set(m)) {
        return Err(Error::Internal(format!(
            "level class of {a} lies inside the antichain"
        )));
    }

    let from_a = tilde_distances(p, levels, a);
    let b = class
        .iter()
        .copied()
        .filter(|&m| !in_set(m))
        .min_by_key(|&m| (from_a[m], m))
        .expect("class has a member outside the set");
    if from_a[b] == usize::MAX {
        return Err(Error::Internal(format!("{b} not ~-reachable from {a}")));
    }
    let path = tilde_path(p, levels, a, b);

    let i = path
        .windows(2)
        .position(|w| !in_set(w[1]))
        .expect("path ends outside the set");
    let (x, y) = (path[i], path[i + 1]);
    let z = sm.meet(x, y);
    let w = sm.join(x, y);
    if !(p.is_cover(z, x) && p.is_cover(z, y)) {
        return Err(Error::Internal(format!(
            "{z} is not covered by {x} and {y}"
        )));
    }
    if !(p.is_cover(x, w) && p.is_cover(y, w)) {
        return Err(Error::Internal(format!("{w} does not cover {x} and {y}")));
    }

    let mut chain = Vec::new();
    let mut cur = z;
    while let Some(&d) = p.downs(cur).first() {
        chain.push(d);
        cur = d;
    }
    chain.reverse();
    chain.extend([z, y, w]);
    let mut cur = w;
    while let Some(&u) = p.ups(cur).first() {
        chain.push(u);
        cur = u;
    }

    for &c in &chain {
        if c != y && !p.comparable(c, x) {
            return Err(Error::Internal(format!(
                "chain element {c} outside the z,y,w core is incomparable to {x}"
            )));
        }
    }
    let hits: Vec<usize> = chain.iter().copied().filter(|&c| in_set(c)).collect();
    if !hits.is_empty() {
        return Err(Error::Internal(format!(
            "constructed chain meets the set at {hits:?}"
        )));
    }
    Ok(WitnessChain {
        chain: Chain::new(chain),
        hits,
        config: Some(ProofConfig { a, b, x, y, z, w }),
    })
}

/// BFS distances in the `~` graph from `start`, asserting the walk never
/// leaves the level class of `start`.
fn tilde_distances(p: &FinitePoset, levels: &LevelPartition, start: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; p.len()];
    dist[start] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for v in tilde_neighbors(p, u) {
            assert!(levels.same_class(u, v), "~ step leaves the level class");
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Lexicographically smallest shortest `~`-path from `a` to `b`.
fn tilde_path(p: &FinitePoset, levels: &LevelPartition, a: usize, b: usize) -> Vec<usize> {
    let to_b = tilde_distances(p, levels, b);
    let mut path = vec![a];
    let mut cur = a;
    while cur != b {
        cur = tilde_neighbors(p, cur)
            .into_iter()
            .find(|&v| to_b[v] != usize::MAX && to_b[v] + 1 == to_b[cur])
            .expect("shortest path step");
        path.push(cur);
    }
    path
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::build_poset;

    fn boolean(k: usize) -> FinitePoset {
        let n = 1usize << k;
        let mut edges = Vec::new();
        for m in 0..n {
            for bit in 0..k {
                if m & (1 << bit) == 0 {
                    edges.push((m, m | (1 << bit)));
                }
            }
        }
        build_poset(n, &edges, None).unwrap()
    }

    fn n5() -> FinitePoset {
        build_poset(5, &[(0, 1), (0, 2), (2, 3), (1, 4), (3, 4)], None).unwrap()
    }

    fn div12() -> FinitePoset {
        build_poset(
            6,
            &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 4), (3, 5), (4, 5)],
            None,
        )
        .unwrap()
    }

    fn chain3() -> FinitePoset {
        build_poset(3, &[(0, 1), (1, 2)], None).unwrap()
    }

    #[test]
    fn cutset_checks() {
        let b2 = boolean(2);
        assert!(is_antichain_cutset(&b2, &[1, 2]).unwrap());
        assert!(is_antichain_cutset(&b2, &[0]).unwrap());
        let w = check_antichain_cutset(&n5(), &[3]).unwrap().unwrap();
        assert_eq!(w.chain, Chain::new(vec![0, 1, 4]));
        assert!(w.hits.is_empty());
        let w = check_antichain_cutset(&b2, &[0, 3]).unwrap().unwrap();
        assert_eq!(w.chain, Chain::new(vec![0, 1, 3]));
        assert_eq!(w.hits, vec![0, 3]);
        assert!(!is_antichain_cutset(&b2, &[]).unwrap());
        assert!(is_antichain_cutset(&b2, &[4]).is_err());
    }

    #[test]
    fn enumerations() {
        assert_eq!(
            enumerate_antichain_cutsets(&boolean(3)).unwrap(),
            vec![vec![0], vec![1, 2, 4], vec![3, 5, 6], vec![7]]
        );
        assert_eq!(
            enumerate_antichain_cutsets(&n5()).unwrap(),
            vec![vec![0], vec![1, 2], vec![1, 3], vec![4]]
        );
        assert_eq!(
            enumerate_antichain_cutsets(&chain3()).unwrap(),
            vec![vec![0], vec![1], vec![2]]
        );
    }

    #[test]
    fn enumeration_budgets() {
        let tight = CutsetBudget {
            max_chains: 5,
            ..Default::default()
        };
        assert!(matches!(
            enumerate_antichain_cutsets_with(&boolean(3), &tight),
            Err(Error::Limit { .. })
        ));
        let tight = CutsetBudget {
            max_nodes: 3,
            ..Default::default()
        };
        assert!(matches!(
            enumerate_antichain_cutsets_with(&boolean(3), &tight),
            Err(Error::Limit { .. })
        ));
    }

    #[test]
    fn theorem_reports() {
        let r = verify_theorem(&boolean(4), &CutsetBudget::default()).unwrap();
        assert!(r.holds);
        assert_eq!(r.level_classes.len(), 5);
        assert!(matches!(
            verify_theorem(&n5(), &CutsetBudget::default()),
            Err(Error::NotSemimodular { .. })
        ));
        let r = compare_unchecked(&n5(), &CutsetBudget::default()).unwrap();
        assert!(!r.holds);
        assert_eq!(r.mismatches.len(), 2);
        assert_eq!(r.mismatches[0].set, vec![3]);
        assert_eq!(r.mismatches[0].kind, MismatchKind::LevelNotCutset);
        match &r.mismatches[0].witness {
            MismatchWitness::OffendingChain(w) => assert_eq!(w.chain, Chain::new(vec![0, 1, 4])),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(r.mismatches[1].set, vec![1, 3]);
        assert_eq!(
            r.mismatches[1].witness,
            MismatchWitness::SplitClasses { a: 1, b: 3 }
        );
        assert!(
            compare_unchecked(&boolean(2), &CutsetBudget::default())
                .unwrap()
                .holds
        );
        // N_5 without its bottom
        let no_bottom = build_poset(4, &[(1, 2), (0, 3), (2, 3)], None).unwrap();
        assert!(matches!(
            compare_unchecked(&no_bottom, &CutsetBudget::default()),
            Err(Error::NotLattice { .. })
        ));
    }

    #[test]
    fn chain_intersection() {
        let b3 = boolean(3);
        assert_eq!(level_chain_intersection(&b3, &[0, 1, 3, 7], 4).unwrap(), 1);
        assert_eq!(level_chain_intersection(&b3, &[0, 1, 3, 7], 7).unwrap(), 7);
        assert_eq!(
            level_chain_intersection(&div12(), &[0, 1, 3, 5], 4).unwrap(),
            3
        );
        assert!(matches!(
            level_chain_intersection(&b3, &[0, 3, 7], 4),
            Err(Error::InvalidChain(_))
        ));
        assert!(matches!(
            level_chain_intersection(&n5(), &[0, 1, 4], 2),
            Err(Error::NotSemimodular { .. })
        ));
    }

    #[test]
    fn chain_intersection_from_every_anchor() {
        let b3 = boolean(3);
        let sm = SemimodularLattice::new(&b3).unwrap();
        for y in [0, 1, 3, 7] {
            assert_eq!(locate_level_on_chain(&sm, &[0, 1, 3, 7], 6, y).unwrap(), 3);
        }
        assert!(locate_level_on_chain(&sm, &[0, 1, 3, 7], 6, 2).is_err());
    }

    #[test]
    fn witness_construction() {
        let b3 = boolean(3);
        let w = proof_witness_chain(&b3, &[1, 6]).unwrap();
        assert_eq!(w.chain, Chain::new(vec![0, 2, 3, 7]));
        assert_eq!(
            w.config,
            Some(ProofConfig {
                a: 1,
                b: 2,
                x: 1,
                y: 2,
                z: 0,
                w: 3
            })
        );
        assert!(w.hits.is_empty());
        assert_eq!(
            proof_witness_chain(&b3, &[1, 2, 4]).unwrap_err(),
            Error::IsLevelClass(vec![1, 2, 4])
        );
        let w = proof_witness_chain(&boolean(2), &[1]).unwrap();
        assert_eq!(w.chain, Chain::new(vec![0, 2, 3]));
        assert_eq!(
            proof_witness_chain(&b3, &[1, 3]).unwrap_err(),
            Error::NotAntichain(1, 3)
        );
        assert_eq!(proof_witness_chain(&b3, &[]).unwrap_err(), Error::EmptySet);
        assert!(matches!(
            proof_witness_chain(&n5(), &[3]),
            Err(Error::NotSemimodular { .. })
        ));
    }

    #[test]
    fn witness_targets_class_member_outside_set() {
        let b3 = boolean(3);
        let w = proof_witness_chain(&b3, &[1, 2]).unwrap();
        let c = w.config.unwrap();
        assert_eq!((c.a, c.b, c.x, c.y), (1, 4, 1, 4));
        assert_eq!(w.chain, Chain::new(vec![0, 4, 5, 7]));
    }
}
