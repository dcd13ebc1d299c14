//! Fixture and random posets.
//!
//! Element ids follow fixed conventions per kind:
//!
//! | kind        | id of an element                                          |
//! |-------------|-----------------------------------------------------------|
//! | `boolean`   | subset bitmask                                            |
//! | `chain`     | position from the bottom                                  |
//! | `antichain` | index                                                     |
//! | `diamond`   | 0 bottom, 1..=3 atoms, 4 top                              |
//! | `pentagon`  | 0 bottom, 1 a, 2 b, 3 c (b < c), 4 top                    |
//! | `divisor`   | rank among the divisors in ascending order                |
//! | `partition` | rank of the restricted growth string, lexicographic       |
//! | `product`   | `i * |Q| + j` for the pair `(i, j)`                       |
//! | `downset`   | rank of the downset bitmask, ascending                    |
//! | `random`    | the topological order the edges were drawn on             |
//!
//! Partitions are ordered by refinement with the finest partition at the
//! bottom.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poset::{build_poset, FinitePoset, DEFAULT_MAX_ELEMENTS};

/// Largest accepted base poset for [`downset_lattice`].
pub const MAX_DOWNSET_BASE: usize = 20;

/// Largest accepted `n` for [`random_poset`].
pub const MAX_RANDOM_ELEMENTS: usize = 20;

const MAX_DIVISOR_ARG: u64 = 1_000_000_000_000;

#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorSpec {
    Boolean(usize),
    Chain(usize),
    Antichain(usize),
    Diamond,
    Pentagon,
    Divisor(u64),
    Partition(usize),
    Product(Box<GeneratorSpec>, Box<GeneratorSpec>),
    Downset(Box<GeneratorSpec>),
    Random { n: usize, edge_prob: f64, seed: u64 },
}

impl GeneratorSpec {
    /// Parses `KIND PARAMS...` tokens. `product` and `downset` take nested
    /// specs, e.g. `product chain 3 chain 4` or `downset random 5 0.3`.
    /// `seed` applies to every random kind in the spec.
    pub fn parse<S: AsRef<str>>(tokens: &[S], seed: u64) -> Result<Self> {
        let tokens: Vec<&str> = tokens.iter().map(AsRef::as_ref).collect();
        let (spec, used) = Self::parse_prefix(&tokens, seed)?;
        if used != tokens.len() {
            return Err(Error::Param(format!(
                "unexpected trailing parameters {:?}",
                &tokens[used..]
            )));
        }
        Ok(spec)
    }

    fn parse_prefix(tokens: &[&str], seed: u64) -> Result<(Self, usize)> {
        let Some((&kind, rest)) = tokens.split_first() else {
            return Err(Error::Param("missing generator kind".into()));
        };
        let int = |i: usize| -> Result<u64> {
            let tok = rest
                .get(i)
                .ok_or_else(|| Error::Param(format!("{kind}: missing parameter {}", i + 1)))?;
            tok.parse()
                .map_err(|_| Error::Param(format!("{kind}: expected an integer, got {tok:?}")))
        };
        let size = |i: usize| int(i).map(|v| v as usize);
        Ok(match kind {
            "boolean" => (GeneratorSpec::Boolean(size(0)?), 2),
            "chain" => (GeneratorSpec::Chain(size(0)?), 2),
            "antichain" => (GeneratorSpec::Antichain(size(0)?), 2),
            "diamond" => (GeneratorSpec::Diamond, 1),
            "pentagon" => (GeneratorSpec::Pentagon, 1),
            "divisor" => (GeneratorSpec::Divisor(int(0)?), 2),
            "partition" => (GeneratorSpec::Partition(size(0)?), 2),
            "product" => {
                let (left, a) = Self::parse_prefix(rest, seed)?;
                let (right, b) = Self::parse_prefix(&rest[a..], seed)?;
                (
                    GeneratorSpec::Product(Box::new(left), Box::new(right)),
                    1 + a + b,
                )
            }
            "downset" => {
                let (base, a) = Self::parse_prefix(rest, seed)?;
                (GeneratorSpec::Downset(Box::new(base)), 1 + a)
            }
            "random" => {
                let n = size(0)?;
                let tok = rest
                    .get(1)
                    .ok_or_else(|| Error::Param("random: missing edge probability".into()))?;
                let edge_prob = tok
                    .parse()
                    .map_err(|_| Error::Param(format!("random: bad probability {tok:?}")))?;
                (GeneratorSpec::Random { n, edge_prob, seed }, 3)
            }
            other => return Err(Error::Param(format!("unknown generator kind {other:?}"))),
        })
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::Boolean(n) => write!(f, "boolean {n}"),
            GeneratorSpec::Chain(n) => write!(f, "chain {n}"),
            GeneratorSpec::Antichain(n) => write!(f, "antichain {n}"),
            GeneratorSpec::Diamond => f.write_str("diamond"),
            GeneratorSpec::Pentagon => f.write_str("pentagon"),
            GeneratorSpec::Divisor(m) => write!(f, "divisor {m}"),
            GeneratorSpec::Partition(n) => write!(f, "partition {n}"),
            GeneratorSpec::Product(a, b) => write!(f, "product {a} {b}"),
            GeneratorSpec::Downset(q) => write!(f, "downset {q}"),
            GeneratorSpec::Random { n, edge_prob, .. } => write!(f, "random {n} {edge_prob}"),
        }
    }
}

/// Builds the poset described by `spec`, with the default element cap.
pub fn generate(spec: &GeneratorSpec) -> Result<FinitePoset> {
    generate_capped(spec, DEFAULT_MAX_ELEMENTS)
}

pub fn generate_capped(spec: &GeneratorSpec, cap: usize) -> Result<FinitePoset> {
    match spec {
        GeneratorSpec::Boolean(n) => boolean(*n),
        GeneratorSpec::Chain(n) => {
            size_guard(*n, cap)?;
            chain(*n)
        }
        GeneratorSpec::Antichain(n) => {
            size_guard(*n, cap)?;
            antichain(*n)
        }
        GeneratorSpec::Diamond => Ok(diamond()),
        GeneratorSpec::Pentagon => Ok(pentagon()),
        GeneratorSpec::Divisor(m) => divisor_capped(*m, cap),
        GeneratorSpec::Partition(n) => partition(*n),
        GeneratorSpec::Product(a, b) => {
            let a = generate_capped(a, cap)?;
            let b = generate_capped(b, cap)?;
            size_guard(a.len().saturating_mul(b.len()), cap)?;
            product(&a, &b)
        }
        GeneratorSpec::Downset(q) => downset_lattice_capped(&generate_capped(q, cap)?, cap),
        GeneratorSpec::Random { n, edge_prob, seed } => random_poset(*n, *edge_prob, *seed),
    }
}

fn size_guard(size: usize, cap: usize) -> Result<()> {
    if size > cap {
        Err(Error::Size { size, cap })
    } else {
        Ok(())
    }
}

fn positive(kind: &str, n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::Param(format!("{kind}: size must be positive")))
    } else {
        Ok(())
    }
}

/// Subsets of an `n`-set under inclusion, `0 < n <= 10`.
pub fn boolean(n: usize) -> Result<FinitePoset> {
    if !(1..=10).contains(&n) {
        return Err(Error::Param(format!(
            "boolean: n must be in 1..=10, got {n}"
        )));
    }
    let size = 1usize << n;
    let mut edges = Vec::with_capacity(size * n / 2);
    for m in 0..size {
        for bit in 0..n {
            if m & (1 << bit) == 0 {
                edges.push((m, m | (1 << bit)));
            }
        }
    }
    build_poset(size, &edges, None)
}

pub fn chain(n: usize) -> Result<FinitePoset> {
    positive("chain", n)?;
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    build_poset(n, &edges, None)
}

pub fn antichain(n: usize) -> Result<FinitePoset> {
    positive("antichain", n)?;
    build_poset(n, &[], None)
}

fn named(names: &[&str]) -> Option<Vec<String>> {
    Some(names.iter().map(|s| s.to_string()).collect())
}

/// M_3: bottom, three atoms, top.
pub fn diamond() -> FinitePoset {
    build_poset(
        5,
        &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
        named(&["bot", "a", "b", "c", "top"]),
    )
    .expect("fixed fixture")
}

/// N_5: bottom, `a`, `b < c`, top.
pub fn pentagon() -> FinitePoset {
    build_poset(
        5,
        &[(0, 1), (0, 2), (2, 3), (1, 4), (3, 4)],
        named(&["bot", "a", "b", "c", "top"]),
    )
    .expect("fixed fixture")
}

pub fn divisor(m: u64) -> Result<FinitePoset> {
    divisor_capped(m, DEFAULT_MAX_ELEMENTS)
}

/// Divisors of `m` under divisibility.
fn divisor_capped(m: u64, cap: usize) -> Result<FinitePoset> {
    if m == 0 || m > MAX_DIVISOR_ARG {
        return Err(Error::Param(format!(
            "divisor: m must be in 1..={MAX_DIVISOR_ARG}, got {m}"
        )));
    }
    let primes = prime_factors(m);
    let mut divisors = vec![1u64];
    for (&p, &k) in &primes {
        let mut next = Vec::with_capacity(divisors.len() * (k as usize + 1));
        for &d in &divisors {
            let mut q = d;
            for _ in 0..=k {
                next.push(q);
                q *= p;
            }
        }
        divisors = next;
        size_guard(divisors.len(), cap)?;
    }
    divisors.sort_unstable();
    let mut edges = Vec::new();
    for (i, &d) in divisors.iter().enumerate() {
        for &p in primes.keys() {
            if (m / d).is_multiple_of(p) {
                let j = divisors.binary_search(&(d * p)).expect("divisor");
                edges.push((i, j));
            }
        }
    }
    let labels = divisors.iter().map(u64::to_string).collect();
    build_poset(divisors.len(), &edges, Some(labels))
}

fn prime_factors(mut m: u64) -> BTreeMap<u64, u32> {
    let mut out = BTreeMap::new();
    let mut p = 2;
    while p * p <= m {
        while m.is_multiple_of(p) {
            *out.entry(p).or_insert(0) += 1;
            m /= p;
        }
        p += 1;
    }
    if m > 1 {
        *out.entry(m).or_insert(0) += 1;
    }
    out
}

/// Restricted growth strings of length `n` in lexicographic order.
pub(crate) fn restricted_growth_strings(n: usize) -> Vec<Vec<u8>> {
    fn extend(cur: &mut Vec<u8>, max: u8, n: usize, out: &mut Vec<Vec<u8>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..=max + 1 {
            cur.push(v);
            extend(cur, max.max(v), n, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        let mut cur = vec![0];
        extend(&mut cur, 0, n, &mut out);
    }
    out
}

/// Set partitions of `{1..n}` under refinement, finest at the bottom,
/// `1 <= n <= 6`.
pub fn partition(n: usize) -> Result<FinitePoset> {
    if !(1..=6).contains(&n) {
        return Err(Error::Param(format!(
            "partition: n must be in 1..=6, got {n}"
        )));
    }
    let rgs = restricted_growth_strings(n);
    let blocks: Vec<usize> = rgs
        .iter()
        .map(|r| *r.iter().max().unwrap() as usize + 1)
        .collect();
    // finer <= coarser: coarser is constant on each block of finer
    let refines = |f: &[u8], c: &[u8]| (0..n).all(|i| (0..i).all(|j| f[i] != f[j] || c[i] == c[j]));
    let mut edges = Vec::new();
    for (i, fine) in rgs.iter().enumerate() {
        for (j, coarse) in rgs.iter().enumerate() {
            if blocks[i] == blocks[j] + 1 && refines(fine, coarse) {
                edges.push((i, j));
            }
        }
    }
    let labels = rgs
        .iter()
        .zip(&blocks)
        .map(|(r, &k)| {
            (0..k as u8)
                .map(|b| {
                    (0..n)
                        .filter(|&i| r[i] == b)
                        .map(|i| char::from(b'1' + i as u8))
                        .collect::<String>()
                })
                .collect::<Vec<_>>()
                .join("|")
        })
        .collect();
    build_poset(rgs.len(), &edges, Some(labels))
}

/// Componentwise order on pairs; `(i, j)` has id `i * |b| + j`.
pub fn product(a: &FinitePoset, b: &FinitePoset) -> Result<FinitePoset> {
    let m = b.len();
    let mut edges = Vec::new();
    for i in 0..a.len() {
        for j in 0..m {
            for &i2 in a.ups(i) {
                edges.push((i * m + j, i2 * m + j));
            }
            for &j2 in b.ups(j) {
                edges.push((i * m + j, i * m + j2));
            }
        }
    }
    let labels = (0..a.len())
        .flat_map(|i| (0..m).map(move |j| (i, j)))
        .map(|(i, j)| format!("({},{})", a.name(i), b.name(j)))
        .collect();
    build_poset(a.len() * m, &edges, Some(labels))
}

/// Down-closed subsets of `q` under inclusion, with the default cap.
pub fn downset_lattice(q: &FinitePoset) -> Result<FinitePoset> {
    downset_lattice_capped(q, DEFAULT_MAX_ELEMENTS)
}

pub fn downset_lattice_capped(q: &FinitePoset, cap: usize) -> Result<FinitePoset> {
    if q.len() > MAX_DOWNSET_BASE {
        return Err(Error::Size {
            size: q.len(),
            cap: MAX_DOWNSET_BASE,
        });
    }
    let n = q.len();
    let lower_mask: Vec<u32> = (0..n)
        .map(|e| q.downs(e).iter().fold(0u32, |m, &d| m | (1 << d)))
        .collect();
    let addable = |d: u32, e: usize| d & (1 << e) == 0 && lower_mask[e] & !d == 0;

    let mut found = BTreeSet::from([0u32]);
    let mut stack = vec![0u32];
    while let Some(d) = stack.pop() {
        for e in 0..n {
            if addable(d, e) && found.insert(d | (1 << e)) {
                if found.len() > cap {
                    return Err(Error::Size {
                        size: found.len(),
                        cap,
                    });
                }
                stack.push(d | (1 << e));
            }
        }
    }
    let masks: Vec<u32> = found.into_iter().collect();
    let mut edges = Vec::new();
    for (i, &d) in masks.iter().enumerate() {
        for e in 0..n {
            if addable(d, e) {
                let j = masks.binary_search(&(d | (1 << e))).expect("downset");
                edges.push((i, j));
            }
        }
    }
    let labels = masks
        .iter()
        .map(|&d| {
            let members: Vec<String> = (0..n)
                .filter(|&e| d & (1 << e) != 0)
                .map(|e| q.name(e))
                .collect();
            format!("{{{}}}", members.join(","))
        })
        .collect();
    build_poset(masks.len(), &edges, Some(labels))
}

/// Random DAG on `0..n` in that topological order, each forward edge kept
/// independently with probability `edge_prob`, then reduced.
pub fn random_poset(n: usize, edge_prob: f64, seed: u64) -> Result<FinitePoset> {
    if !(1..=MAX_RANDOM_ELEMENTS).contains(&n) {
        return Err(Error::Param(format!(
            "random: n must be in 1..={MAX_RANDOM_ELEMENTS}, got {n}"
        )));
    }
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err(Error::Param(format!(
            "random: edge probability must be in [0, 1], got {edge_prob}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(edge_prob) {
                edges.push((i, j));
            }
        }
    }
    build_poset(n, &edges, None)
}
