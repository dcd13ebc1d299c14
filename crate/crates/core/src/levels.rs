//! Level classes: the equivalence classes of the reflexive-transitive
//! closure of `x ~ y` (some element is covered by both `x` and `y`), and
//! the height-based descriptions of the same classes.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{is_jordan_dedekind, jordan_dedekind_violation, HeightTable, Lattice};
use crate::poset::FinitePoset;

/// Partition of the elements into level classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelPartition {
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl LevelPartition {
    /// Index into [`classes`](Self::classes) of the class containing `x`.
    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    /// Classes ordered by smallest member; members ascending.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_containing(&self, x: usize) -> &[usize] {
        &self.classes[self.class_of[x]]
    }

    pub fn same_class(&self, x: usize, y: usize) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    /// True iff the sorted set `set` is exactly one of the classes.
    pub fn is_class(&self, set: &[usize]) -> bool {
        match set.first() {
            Some(&x) => self.class_containing(x) == set,
            None => false,
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
    }
}

/// `x ~ y`: some element is covered by both. Reflexive by convention.
pub fn tilde_related(p: &FinitePoset, x: usize, y: usize) -> Result<bool> {
    p.check(x)?;
    p.check(y)?;
    if x == y {
        return Ok(true);
    }
    let (xs, ys) = (p.downs(x), p.downs(y));
    Ok(xs.iter().any(|z| ys.binary_search(z).is_ok()))
}

/// The `~` graph as sorted pairs `(x, y)` with `x < y`; no self-loops.
pub fn tilde_edges(p: &FinitePoset) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for z in 0..p.len() {
        let ups = p.ups(z);
        for (i, &x) in ups.iter().enumerate() {
            for &y in &ups[i + 1..] {
                edges.push((x, y));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    edges
}

/// Elements `~`-related to `x`, excluding `x`, ascending.
pub fn tilde_neighbors(p: &FinitePoset, x: usize) -> Vec<usize> {
    let mut out: Vec<usize> = p
        .downs(x)
        .iter()
        .flat_map(|&z| p.ups(z).iter().copied())
        .filter(|&y| y != x)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Level classes via union-find over all `~` pairs.
pub fn level_classes(p: &FinitePoset) -> LevelPartition {
    let n = p.len();
    let mut uf = UnionFind::new(n);
    for z in 0..n {
        if let Some((&first, rest)) = p.ups(z).split_first() {
            for &y in rest {
                uf.union(first, y);
            }
        }
    }
    // Ascending scan numbers classes by smallest member.
    let mut index_of_root = vec![usize::MAX; n];
    let mut class_of = vec![0; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (x, class) in class_of.iter_mut().enumerate() {
        let r = uf.find(x);
        if index_of_root[r] == usize::MAX {
            index_of_root[r] = classes.len();
            classes.push(Vec::new());
        }
        *class = index_of_root[r];
        classes[index_of_root[r]].push(x);
    }
    LevelPartition { class_of, classes }
}

/// The non-empty sets `L_k` of elements at height `k` above the least element.
pub fn levels_by_height(p: &FinitePoset) -> Result<Vec<Vec<usize>>> {
    let bottom = p.least_element().ok_or(Error::NoLeastElement)?;
    if let Some(v) = jordan_dedekind_violation(p) {
        return Err(v.into());
    }
    debug_assert!(is_jordan_dedekind(p));
    let heights = HeightTable::new(p)?;
    let mut levels: Vec<Vec<usize>> = Vec::new();
    for x in 0..p.len() {
        let h = heights.get(bottom, x).expect("bottom is below everything");
        if levels.len() <= h {
            levels.resize(h + 1, Vec::new());
        }
        levels[h].push(x);
    }
    Ok(levels)
}

/// A lattice checked to satisfy the lower covering condition, with its
/// height table and level partition.
#[derive(Debug, Clone)]
pub struct SemimodularLattice<'p> {
    lattice: Lattice<'p>,
    heights: HeightTable,
    levels: LevelPartition,
}

impl<'p> SemimodularLattice<'p> {
    pub fn new(p: &'p FinitePoset) -> Result<Self> {
        let lattice = Lattice::new(p)?;
        lattice.require_semimodular()?;
        // Finite semimodular lattices are graded.
        let heights = HeightTable::new(p)
            .map_err(|e| Error::Internal(format!("semimodular lattice failed gradedness: {e}")))?;
        Ok(SemimodularLattice {
            lattice,
            heights,
            levels: level_classes(p),
        })
    }

    pub fn poset(&self) -> &'p FinitePoset {
        self.lattice.poset()
    }

    pub fn lattice(&self) -> &Lattice<'p> {
        &self.lattice
    }

    pub fn heights(&self) -> &HeightTable {
        &self.heights
    }

    pub fn levels(&self) -> &LevelPartition {
        &self.levels
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.lattice.meet(x, y)
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.lattice.join(x, y)
    }

    /// `h(z, x)`; panics unless `z <= x`.
    pub fn height(&self, z: usize, x: usize) -> usize {
        self.heights
            .get(z, x)
            .unwrap_or_else(|| panic!("height({z}, {x}) of incomparable pair"))
    }

    pub fn same_level_via_height(&self, x: usize, y: usize) -> Result<bool> {
        let p = self.poset();
        p.check(x)?;
        p.check(y)?;
        let z = self.meet(x, y);
        Ok(self.height(z, x) == self.height(z, y))
    }

    pub fn common_lower_bound_height_check(&self, x: usize, y: usize, z: usize) -> Result<bool> {
        let p = self.poset();
        for (lo, hi) in [(z, x), (z, y)] {
            if !p.leq(lo, hi)? {
                return Err(Error::NotComparable(lo, hi));
            }
        }
        Ok(self.height(z, x) == self.height(z, y))
    }
}

/// True iff `x` and `y` have the same height above `x∧y`. Only defined on
/// semimodular lattices.
pub fn same_level_via_height(p: &FinitePoset, x: usize, y: usize) -> Result<bool> {
    SemimodularLattice::new(p)?.same_level_via_height(x, y)
}

/// `h(z, x) == h(z, y)` for a common lower bound `z` of `x` and `y`, on a
/// semimodular lattice.
pub fn common_lower_bound_height_check(
    p: &FinitePoset,
    x: usize,
    y: usize,
    z: usize,
) -> Result<bool> {
    SemimodularLattice::new(p)?.common_lower_bound_height_check(x, y, z)
}
