//! Shared fixtures for the integration tests: a catalog of small groups and
//! brute-force oracles that use nothing but raw image vectors.
#![allow(dead_code)]

pub mod chainsaw;
pub mod props;

use std::collections::{BTreeSet, HashSet};

use wexp_core::commands::build_group;
use wexp_core::{Caps, PermGroup, Permutation};

/// Specs of every catalog group; all have order at most 1000.
pub const CATALOG: &[&str] = &[
    "C:1", "C:2", "C:3", "C:4", "C:5", "C:6", "C:7", "C:8", "C:9", "C:10", "C:12", "C:16",
    "D:3", "D:4", "D:5", "D:6", "D:7", "D:8", "D:9", "D:10", "D:12",
    "S:3", "S:4", "S:5", "S:6", "A:4", "A:5", "A:6",
    "C:2*C:2", "C:2*C:2*C:2", "C:3*C:3", "C:2*C:4", "C:4*C:4", "C:3*C:3*C:3", "C:2*C:6",
    "S:3*C:2", "S:3*C:3", "S:3*S:3", "D:4*C:2", "A:4*C:2", "A:4*C:3", "S:4*C:2", "A:5*C:2",
    "C:5*C:5", "D:4*D:4", "S:4*S:3",
    "AGL:1,5", "AGL:1,7", "AGL:2,2", "AGL:1,11", "AGL:2,3",
    "PSL2:7", "PSL2:8", "PSL2:11",
];

pub fn group(spec: &str) -> PermGroup {
    build_group(spec, &Caps::default()).unwrap_or_else(|e| panic!("{spec}: {e}")).group
}

pub fn catalog() -> Vec<(&'static str, PermGroup)> {
    CATALOG.iter().map(|s| (*s, group(s))).collect()
}

pub fn catalog_upto(max_order: u128) -> Vec<(&'static str, PermGroup)> {
    catalog().into_iter().filter(|(_, g)| g.order() <= max_order).collect()
}

pub type Raw = Vec<u32>;

/// Apply `a` first, then `b`.
pub fn raw_mul(a: &Raw, b: &Raw) -> Raw {
    a.iter().map(|&i| b[i as usize]).collect()
}

pub fn raw(p: &Permutation) -> Raw {
    p.images().to_vec()
}

/// Closure of a generating set as a set of image vectors.
pub fn raw_closure(gens: &[Raw], degree: usize) -> HashSet<Raw> {
    let id: Raw = (0..degree as u32).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut stack = vec![id];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = raw_mul(&x, g);
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    seen
}

/// All subgroups of a small group, grown by single-element extension from
/// the trivial group. Each subgroup is a sorted set of element indices.
pub fn brute_subgroups(g: &PermGroup) -> BTreeSet<BTreeSet<usize>> {
    let mut elems: Vec<Raw> = raw_closure(
        &g.generators().iter().map(raw).collect::<Vec<_>>(),
        g.degree(),
    )
    .into_iter()
    .collect();
    elems.sort();
    let index = |r: &Raw| elems.binary_search(r).unwrap();
    let id = index(&(0..g.degree() as u32).collect());
    let mut found = BTreeSet::from([BTreeSet::from([id])]);
    let mut frontier: Vec<(BTreeSet<usize>, Vec<Raw>)> = vec![(BTreeSet::from([id]), Vec::new())];
    while let Some((h, hgens)) = frontier.pop() {
        for (x, ex) in elems.iter().enumerate() {
            if h.contains(&x) {
                continue;
            }
            let mut gens = hgens.clone();
            gens.push(ex.clone());
            let k: BTreeSet<usize> = raw_closure(&gens, g.degree()).iter().map(index).collect();
            if found.insert(k.clone()) {
                frontier.push((k, gens));
            }
        }
    }
    found
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn is_prime_trial(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}
