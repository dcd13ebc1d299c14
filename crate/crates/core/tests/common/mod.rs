//! Fixtures and brute-force oracles shared by the integration tests.
//!
//! The oracles here deliberately avoid the library's algorithms: they work
//! from raw edge lists, explicit chain lists, or direct combinatorics.
#![allow(dead_code, clippy::needless_range_loop)]

use latcut::generators::{
    antichain, boolean, chain, diamond, divisor, downset_lattice, partition, pentagon, product,
    random_poset,
};
use latcut::FinitePoset;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A named fixture.
pub struct Fixture {
    pub name: String,
    pub poset: FinitePoset,
}

fn fx(name: impl Into<String>, poset: FinitePoset) -> Fixture {
    Fixture {
        name: name.into(),
        poset,
    }
}

/// Random poset parameters derived from a seed: `n` in `1..=max_n`,
/// edge probability in `[0.15, 0.65)`.
pub fn random_params(seed: u64, max_n: usize) -> (usize, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_5eed);
    let n = rng.gen_range(1..=max_n);
    let p = rng.gen_range(0.15..0.65);
    (n, p)
}

pub fn random_fixture(seed: u64, max_n: usize) -> FinitePoset {
    let (n, p) = random_params(seed, max_n);
    random_poset(n, p, seed).unwrap()
}

/// Downset lattice of a random base poset with at most `max_base` elements.
pub fn random_downset_lattice(seed: u64, max_base: usize) -> FinitePoset {
    downset_lattice(&random_fixture(seed, max_base)).unwrap()
}

/// Semimodular lattices: Boolean, divisor, partition, products of chains,
/// the diamond and downset lattices.
pub fn semimodular_corpus() -> Vec<Fixture> {
    let mut out = Vec::new();
    for n in 1..=5 {
        out.push(fx(format!("boolean {n}"), boolean(n).unwrap()));
    }
    for n in 1..=4 {
        out.push(fx(format!("chain {n}"), chain(n).unwrap()));
    }
    out.push(fx("diamond", diamond()));
    for m in [1, 12, 30, 36, 360] {
        out.push(fx(format!("divisor {m}"), divisor(m).unwrap()));
    }
    for n in 1..=5 {
        out.push(fx(format!("partition {n}"), partition(n).unwrap()));
    }
    out.push(fx(
        "product chain 3 chain 4",
        product(&chain(3).unwrap(), &chain(4).unwrap()).unwrap(),
    ));
    out.push(fx(
        "product diamond chain 2",
        product(&diamond(), &chain(2).unwrap()).unwrap(),
    ));
    out.push(fx(
        "product partition 3 partition 3",
        product(&partition(3).unwrap(), &partition(3).unwrap()).unwrap(),
    ));
    for seed in 0..30 {
        out.push(fx(
            format!("downset random seed {seed}"),
            random_downset_lattice(seed, 5),
        ));
    }
    out
}

/// Everything: the semimodular corpus plus non-semimodular lattices and
/// non-lattices.
pub fn full_corpus() -> Vec<Fixture> {
    let mut out = semimodular_corpus();
    out.push(fx("pentagon", pentagon()));
    out.push(fx(
        "product pentagon chain 2",
        product(&pentagon(), &chain(2).unwrap()).unwrap(),
    ));
    for n in 1..=4 {
        out.push(fx(format!("antichain {n}"), antichain(n).unwrap()));
    }
    for seed in 0..40 {
        out.push(fx(format!("random seed {seed}"), random_fixture(seed, 9)));
    }
    out
}

/// Reflexive-transitive closure of an edge list by Floyd–Warshall.
pub fn closure(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut r = vec![vec![false; n]; n];
    for (i, row) in r.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(a, b) in edges {
        r[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if r[i][k] {
                for j in 0..n {
                    if r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
    }
    r
}

/// Transitive reduction by dropping each edge whose removal keeps the
/// closure unchanged, repeated to a fixpoint.
pub fn brute_reduction(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut current: Vec<(usize, usize)> = edges.to_vec();
    current.sort_unstable();
    current.dedup();
    let target = closure(n, &current);
    let mut i = 0;
    while i < current.len() {
        let mut without = current.clone();
        without.remove(i);
        if closure(n, &without) == target {
            current = without;
        } else {
            i += 1;
        }
    }
    current
}

/// Maximal chains by DFS over the raw cover list.
pub fn chains_from_covers(p: &FinitePoset) -> Vec<Vec<usize>> {
    let n = p.len();
    let mut ups = vec![Vec::new(); n];
    let mut has_lower = vec![false; n];
    for &(a, b) in p.covers() {
        ups[a].push(b);
        has_lower[b] = true;
    }
    fn go(x: usize, ups: &[Vec<usize>], stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        stack.push(x);
        if ups[x].is_empty() {
            out.push(stack.clone());
        }
        for &u in &ups[x] {
            go(u, ups, stack, out);
        }
        stack.pop();
    }
    let mut out = Vec::new();
    for x in (0..n).filter(|&x| !has_lower[x]) {
        go(x, &ups, &mut Vec::new(), &mut out);
    }
    out.sort();
    out
}

/// All antichain cutsets by testing every subset against every chain.
pub fn brute_force_cutsets(p: &FinitePoset) -> Vec<Vec<usize>> {
    let n = p.len();
    assert!(n <= 16, "brute force oracle is for small posets");
    let chains = chains_from_covers(p);
    let masks: Vec<u32> = chains
        .iter()
        .map(|c| c.iter().fold(0u32, |m, &x| m | (1 << x)))
        .collect();
    let mut out = Vec::new();
    for subset in 1u32..(1 << n) {
        if masks.iter().all(|&m| (m & subset).count_ones() == 1) {
            out.push(
                (0..n)
                    .filter(|&i| subset & (1 << i) != 0)
                    .collect::<Vec<_>>(),
            );
        }
    }
    out.sort();
    out
}

/// Partition generated by `x ~ y` (a common lower cover), by closing the
/// relation matrix directly.
pub fn brute_level_classes(p: &FinitePoset) -> Vec<Vec<usize>> {
    let n = p.len();
    let mut lower = vec![Vec::new(); n];
    for &(a, b) in p.covers() {
        lower[b].push(a);
    }
    let mut rel = vec![vec![false; n]; n];
    for x in 0..n {
        for y in 0..n {
            rel[x][y] = x == y || lower[x].iter().any(|z| lower[y].contains(z));
        }
    }
    for k in 0..n {
        for i in 0..n {
            if rel[i][k] {
                for j in 0..n {
                    if rel[k][j] {
                        rel[i][j] = true;
                    }
                }
            }
        }
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for x in 0..n {
        if !seen[x] {
            let class: Vec<usize> = (0..n).filter(|&y| rel[x][y]).collect();
            for &y in &class {
                seen[y] = true;
            }
            out.push(class);
        }
    }
    out
}

/// Maximal chains of the Boolean lattice on `n` atoms, counted by
/// recursion over subsets.
pub fn boolean_chain_count(n: u32) -> u64 {
    fn count(mask: u32, full: u32, n: u32) -> u64 {
        if mask == full {
            return 1;
        }
        (0..n)
            .filter(|b| mask & (1 << b) == 0)
            .map(|b| count(mask | (1 << b), full, n))
            .sum()
    }
    count(0, (1 << n) - 1, n)
}

/// Stirling numbers of the second kind.
pub fn stirling2(n: u64, k: u64) -> u64 {
    match (n, k) {
        (0, 0) => 1,
        (_, 0) | (0, _) => 0,
        _ => k * stirling2(n - 1, k) + stirling2(n - 1, k - 1),
    }
}

pub fn bell(n: u64) -> u64 {
    (0..=n).map(|k| stirling2(n, k)).sum()
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// Antichains sampled by greedy insertion in a seeded random order.
pub fn sample_antichain(p: &FinitePoset, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let n = p.len();
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        order.swap(i, j);
    }
    let target = rng.gen_range(1..=n);
    let mut set: Vec<usize> = Vec::new();
    for x in order {
        if set.len() == target {
            break;
        }
        if set
            .iter()
            .all(|&y| !p.leq(x, y).unwrap() && !p.leq(y, x).unwrap())
        {
            set.push(x);
        }
    }
    set.sort_unstable();
    set
}
