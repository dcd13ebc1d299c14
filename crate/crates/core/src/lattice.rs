//! Meets, joins, the lower covering condition, gradedness and heights.

use crate::error::{BoundKind, Error, Result};
use crate::poset::{Chain, FinitePoset};

/// Posets up to this size get full meet and join tables in [`Lattice`].
pub const MEET_TABLE_CAP: usize = 512;

/// Greatest common lower bound of `x` and `y`, by scanning the order.
pub fn meet(p: &FinitePoset, x: usize, y: usize) -> Result<usize> {
    extremal_bound(p, x, y, BoundKind::Meet)
}

/// Least common upper bound of `x` and `y`, by scanning the order.
pub fn join(p: &FinitePoset, x: usize, y: usize) -> Result<usize> {
    extremal_bound(p, x, y, BoundKind::Join)
}

fn extremal_bound(p: &FinitePoset, x: usize, y: usize, kind: BoundKind) -> Result<usize> {
    p.check(x)?;
    p.check(y)?;
    let bounds = |z: usize| match kind {
        BoundKind::Meet => p.down_set(z),
        BoundKind::Join => p.up_set(z),
    };
    let beyond = |z: usize| match kind {
        BoundKind::Meet => p.up_set(z),
        BoundKind::Join => p.down_set(z),
    };
    let mut common = bounds(x).clone();
    common.intersect_with(bounds(y));
    // extremal = no other common bound strictly beyond it
    let extremal: Vec<usize> = common
        .ones()
        .filter(|&c| beyond(c).ones().all(|d| d == c || !common.contains(d)))
        .collect();
    match extremal.as_slice() {
        [b] => Ok(*b),
        _ => Err(Error::NotLattice {
            kind,
            x,
            y,
            bounds: extremal,
        }),
    }
}

/// True iff every pair has a meet and a join.
pub fn is_lattice(p: &FinitePoset) -> bool {
    Lattice::new(p).is_ok()
}

/// A poset checked to be a lattice, with cached meet and join tables for
/// small sizes.
#[derive(Debug, Clone)]
pub struct Lattice<'p> {
    poset: &'p FinitePoset,
    tables: Option<(Vec<u32>, Vec<u32>)>,
}

impl<'p> Lattice<'p> {
    pub fn new(poset: &'p FinitePoset) -> Result<Self> {
        if poset.len() <= MEET_TABLE_CAP {
            let meets = bound_table(poset, BoundKind::Meet)?;
            let joins = bound_table(poset, BoundKind::Join)?;
            return Ok(Lattice {
                poset,
                tables: Some((meets, joins)),
            });
        }
        for x in 0..poset.len() {
            for y in x + 1..poset.len() {
                meet(poset, x, y)?;
                join(poset, x, y)?;
            }
        }
        Ok(Lattice {
            poset,
            tables: None,
        })
    }

    pub fn poset(&self) -> &'p FinitePoset {
        self.poset
    }

    /// Panics if an id is out of range.
    pub fn meet(&self, x: usize, y: usize) -> usize {
        match &self.tables {
            Some((meets, _)) => meets[x * self.poset.len() + y] as usize,
            None => meet(self.poset, x, y).expect("checked lattice"),
        }
    }

    /// Panics if an id is out of range.
    pub fn join(&self, x: usize, y: usize) -> usize {
        match &self.tables {
            Some((_, joins)) => joins[x * self.poset.len() + y] as usize,
            None => join(self.poset, x, y).expect("checked lattice"),
        }
    }

    /// First pair `(x, y)` in lexicographic order where `x` covers `x∧y`
    /// but `x∨y` does not cover `y`.
    pub fn semimodularity_violation(&self) -> Option<(usize, usize)> {
        let p = self.poset;
        for x in 0..p.len() {
            for y in 0..p.len() {
                if p.is_cover(self.meet(x, y), x) && !p.is_cover(y, self.join(x, y)) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn is_semimodular(&self) -> bool {
        self.semimodularity_violation().is_none()
    }

    /// Fails with [`Error::NotSemimodular`] carrying the first violating pair.
    pub fn require_semimodular(&self) -> Result<()> {
        match self.semimodularity_violation() {
            None => Ok(()),
            Some((x, y)) => Err(Error::NotSemimodular { x, y }),
        }
    }
}

/// Fills the meet (or join) table by induction along a linear extension:
/// for incomparable `x, y`, every common lower bound lies below some lower
/// cover `x'` of `x`, so `x∧y` is the greatest of the `x'∧y`.
fn bound_table(p: &FinitePoset, kind: BoundKind) -> Result<Vec<u32>> {
    let n = p.len();
    let mut table = vec![u32::MAX; n * n];
    let order: Vec<usize> = match kind {
        BoundKind::Meet => p.topological_order().to_vec(),
        BoundKind::Join => p.topological_order().iter().rev().copied().collect(),
    };
    // a comes no later than b in the sweep direction of the order
    let toward = |a: usize, b: usize| match kind {
        BoundKind::Meet => p.le(a, b),
        BoundKind::Join => p.le(b, a),
    };
    for &x in &order {
        let steps = match kind {
            BoundKind::Meet => p.downs(x),
            BoundKind::Join => p.ups(x),
        };
        for y in 0..n {
            let value = if toward(x, y) {
                Some(x)
            } else if toward(y, x) {
                Some(y)
            } else {
                let candidates: Vec<usize> =
                    steps.iter().map(|&s| table[s * n + y] as usize).collect();
                candidates
                    .iter()
                    .copied()
                    .find(|&g| candidates.iter().all(|&c| toward(c, g)))
            };
            match value {
                Some(v) => table[x * n + y] = v as u32,
                None => {
                    // Reproduce the failure with the scanning route for a
                    // full diagnostic.
                    return match extremal_bound(p, x, y, kind) {
                        Err(e) => Err(e),
                        Ok(_) => Err(Error::Internal(format!(
                            "{kind} table disagrees with scan at ({x}, {y})"
                        ))),
                    };
                }
            }
        }
    }
    Ok(table)
}

/// Semimodularity check over all pairs; errors if `p` is not a lattice.
pub fn semimodularity_violation(p: &FinitePoset) -> Result<Option<(usize, usize)>> {
    Ok(Lattice::new(p)?.semimodularity_violation())
}

pub fn is_semimodular(p: &FinitePoset) -> Result<bool> {
    Ok(semimodularity_violation(p)?.is_none())
}

/// An interval whose maximal chains have different lengths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradednessViolation {
    pub x: usize,
    pub y: usize,
    pub short: Chain,
    pub long: Chain,
}

impl From<GradednessViolation> for Error {
    fn from(v: GradednessViolation) -> Self {
        Error::NotGraded {
            x: v.x,
            y: v.y,
            short: v.short,
            long: v.long,
        }
    }
}

const UNREACHED: u32 = u32::MAX;

/// Shortest and longest cover-path lengths from `x` to every element.
/// Entries for elements not above `x` are `UNREACHED`.
fn path_lengths_from(p: &FinitePoset, x: usize) -> (Vec<u32>, Vec<u32>) {
    let n = p.len();
    let mut short = vec![UNREACHED; n];
    let mut long = vec![UNREACHED; n];
    short[x] = 0;
    long[x] = 0;
    let above = p.up_set(x);
    for &y in p.topological_order() {
        if y == x || !above.contains(y) {
            continue;
        }
        let mut lo = UNREACHED;
        let mut hi = 0;
        for &d in p.downs(y) {
            if short[d] != UNREACHED {
                lo = lo.min(short[d] + 1);
                hi = hi.max(long[d] + 1);
            }
        }
        short[y] = lo;
        long[y] = hi;
    }
    (short, long)
}

/// Lexicographically smallest shortest and longest maximal chains of `[x, y]`.
fn extremal_chains(p: &FinitePoset, x: usize, y: usize) -> (Chain, Chain) {
    let n = p.len();
    let in_interval = |z: usize| p.le(x, z) && p.le(z, y);
    let mut to_short = vec![UNREACHED; n];
    let mut to_long = vec![UNREACHED; n];
    to_short[y] = 0;
    to_long[y] = 0;
    for &z in p.topological_order().iter().rev() {
        if z == y || !in_interval(z) {
            continue;
        }
        for &u in p.ups(z) {
            if to_short[u] != UNREACHED {
                to_short[z] = to_short[z].min(to_short[u] + 1);
                to_long[z] = if to_long[z] == UNREACHED {
                    to_long[u] + 1
                } else {
                    to_long[z].max(to_long[u] + 1)
                };
            }
        }
    }
    let walk = |dist: &[u32]| {
        let mut chain = vec![x];
        let mut cur = x;
        while cur != y {
            cur = *p
                .ups(cur)
                .iter()
                .find(|&&u| dist[u] != UNREACHED && dist[u] + 1 == dist[cur])
                .expect("interval path");
            chain.push(cur);
        }
        Chain::new(chain)
    };
    (walk(&to_short), walk(&to_long))
}

/// First interval `[x, y]` (lexicographic in `(x, y)`) with maximal chains
/// of different lengths, with a shortest and a longest chain as witnesses.
pub fn jordan_dedekind_violation(p: &FinitePoset) -> Option<GradednessViolation> {
    for x in 0..p.len() {
        let (short, long) = path_lengths_from(p, x);
        if let Some(y) = (0..p.len()).find(|&y| short[y] != long[y]) {
            let (short, long) = extremal_chains(p, x, y);
            return Some(GradednessViolation { x, y, short, long });
        }
    }
    None
}

pub fn is_jordan_dedekind(p: &FinitePoset) -> bool {
    jordan_dedekind_violation(p).is_none()
}

/// Height of `y` above `x`: the common length of the maximal chains of
/// `[x, y]`, counting elements other than `x`.
pub fn height(p: &FinitePoset, x: usize, y: usize) -> Result<usize> {
    if !p.leq(x, y)? {
        return Err(Error::NotComparable(x, y));
    }
    let (short, long) = path_lengths_from(p, x);
    if short[y] != long[y] {
        let (short, long) = extremal_chains(p, x, y);
        return Err(GradednessViolation { x, y, short, long }.into());
    }
    Ok(short[y] as usize)
}

/// `height(x, y)` when `x <= y`, and `-height(y, x)` when `y <= x`.
pub fn signed_height(p: &FinitePoset, x: usize, y: usize) -> Result<i64> {
    if p.leq(x, y)? {
        Ok(height(p, x, y)? as i64)
    } else if p.le(y, x) {
        Ok(-(height(p, y, x)? as i64))
    } else {
        Err(Error::NotComparable(x, y))
    }
}

/// Heights of all comparable pairs of a graded poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightTable {
    n: usize,
    h: Vec<u32>,
}

impl HeightTable {
    /// Fails with [`Error::NotGraded`] on the first ungraded interval.
    pub fn new(p: &FinitePoset) -> Result<Self> {
        let n = p.len();
        let mut h = vec![UNREACHED; n * n];
        for x in 0..n {
            let (short, long) = path_lengths_from(p, x);
            if let Some(y) = (0..n).find(|&y| short[y] != long[y]) {
                let (short, long) = extremal_chains(p, x, y);
                return Err(GradednessViolation { x, y, short, long }.into());
            }
            h[x * n..(x + 1) * n].copy_from_slice(&short);
        }
        Ok(HeightTable { n, h })
    }

    /// `h(x, y)` for `x <= y`, `None` otherwise.
    pub fn get(&self, x: usize, y: usize) -> Option<usize> {
        match self.h[x * self.n + y] {
            UNREACHED => None,
            v => Some(v as usize),
        }
    }

    /// Signed height for comparable pairs, `None` otherwise.
    pub fn signed(&self, x: usize, y: usize) -> Option<i64> {
        self.get(x, y)
            .map(|v| v as i64)
            .or_else(|| self.get(y, x).map(|v| -(v as i64)))
    }
}
