//! Subgroups up to conjugacy.
//!
//! Classes are found by joins: for each known class representative `A`
//! and each element `x ∉ A`, the subgroup `⟨A, x⟩` is formed. Elements
//! giving the same join up to `N_G(A)`-conjugacy are skipped (`a·x^k` with
//! `k` coprime to `|x|`, and their `N_G(A)`-conjugates). Every subgroup is
//! reached because it is generated by a chain of single-element extensions.

use std::collections::HashMap;

use crate::bitset::Bitset;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::{gcd, Permutation};
use crate::structure::Exhaustive;
use crate::table::{Elem, ElementTable, Subgroup};

#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    /// One representative per class (the least conjugate), sorted by (order, key).
    pub classes: Vec<Subgroup>,
    /// Number of conjugates in each class.
    pub class_sizes: Vec<u64>,
    /// `contained[i]` flags the classes `j` such that class `i` lies properly
    /// inside some conjugate of class `j`'s representative.
    contained: Vec<Vec<bool>>,
    group_order: u64,
}

impl SubgroupLattice {
    pub fn build(ex: &Exhaustive, caps: &Caps) -> Result<Self> {
        let t = &ex.table;
        if t.order() as u128 > caps.lattice_cap {
            return Err(Error::OverCap {
                what: "group order (lattice cap)",
                size: t.order() as u128,
                cap: caps.lattice_cap,
            });
        }
        let mut registry: HashMap<Bitset, usize> = HashMap::new();
        let mut reps: Vec<Subgroup> = Vec::new();
        let mut orbits: Vec<Vec<Bitset>> = Vec::new();

        let add_class = |bits: Bitset,
                         registry: &mut HashMap<Bitset, usize>,
                         reps: &mut Vec<Subgroup>,
                         orbits: &mut Vec<Vec<Bitset>>| {
            let conj = t.conjugates(&bits);
            let key = conj.iter().min().unwrap().clone();
            let idx = reps.len();
            for c in &conj {
                registry.insert(c.clone(), idx);
            }
            let gens = t.generators_of(&key);
            reps.push(t.subgroup_with_generators(key, gens));
            orbits.push(conj);
        };

        add_class(t.trivial().members, &mut registry, &mut reps, &mut orbits);
        let mut next = 0;
        while next < reps.len() {
            let a = reps[next].clone();
            next += 1;
            if a.order == t.order() as u64 {
                continue;
            }
            let norm = t.normalizer_bits(&a);
            let norm_gens = t.generators_of(&norm);
            let mut marked = a.members.clone();
            let a_list: Vec<Elem> = a.elements().collect();
            for x in 0..t.order() as Elem {
                if marked.contains(x as usize) {
                    continue;
                }
                let h = t.join_bits(&a.members, &a.generators, x);
                mark_equivalent(t, &a_list, &norm_gens, x, &mut marked);
                if !registry.contains_key(&h) {
                    add_class(h, &mut registry, &mut reps, &mut orbits);
                }
            }
        }

        let mut order: Vec<usize> = (0..reps.len()).collect();
        order.sort_by(|&i, &j| (reps[i].order, &reps[i].members).cmp(&(reps[j].order, &reps[j].members)));
        let classes: Vec<Subgroup> = order.iter().map(|&i| reps[i].clone()).collect();
        let orbits: Vec<Vec<Bitset>> = order.iter().map(|&i| orbits[i].clone()).collect();
        let class_sizes = orbits.iter().map(|o| o.len() as u64).collect();

        let k = classes.len();
        let mut contained = vec![vec![false; k]; k];
        for j in 0..k {
            for i in 0..k {
                let (oi, oj) = (classes[i].order, classes[j].order);
                if oi >= oj || oj % oi != 0 {
                    continue;
                }
                contained[i][j] = orbits[j].iter().any(|c| classes[i].members.is_subset(c));
            }
        }
        Ok(SubgroupLattice {
            classes,
            class_sizes,
            contained,
            group_order: t.order() as u64,
        })
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Total number of subgroups (all conjugates counted).
    pub fn subgroup_count(&self) -> u64 {
        self.class_sizes.iter().sum()
    }

    /// Class `i` lies properly inside a conjugate of class `j`.
    pub fn contains_up_to_conj(&self, i: usize, j: usize) -> bool {
        self.contained[i][j]
    }

    /// Indices of the maximal classes, in lattice order.
    pub fn maximal_indices(&self) -> Vec<usize> {
        let k = self.len();
        (0..k)
            .filter(|&i| self.classes[i].order < self.group_order)
            .filter(|&i| {
                (0..k).all(|j| {
                    self.classes[j].order == self.group_order || !self.contained[i][j]
                })
            })
            .collect()
    }

    pub fn maximal_classes(&self) -> Vec<&Subgroup> {
        self.maximal_indices()
            .into_iter()
            .map(|i| &self.classes[i])
            .collect()
    }

    /// Class index of an arbitrary subgroup of the same parent.
    pub fn class_index(&self, h: &Subgroup) -> Option<usize> {
        self.classes
            .iter()
            .position(|c| c.canonical_key == h.canonical_key)
    }
}

fn mark_equivalent(
    t: &ElementTable,
    a_list: &[Elem],
    norm_gens: &[Elem],
    x: Elem,
    marked: &mut Bitset,
) {
    let ord = t.element_order(x);
    let mut stack = Vec::new();
    let mut xk = x;
    for k in 1..=ord {
        if gcd(k, ord) == 1 {
            for &a in a_list {
                let y = t.mul(a, xk);
                if marked.insert(y as usize) {
                    stack.push(y);
                }
            }
        }
        xk = t.mul(xk, x);
    }
    while let Some(y) = stack.pop() {
        for &g in norm_gens {
            let z = t.conj(y, g);
            if marked.insert(z as usize) {
                stack.push(z);
            }
        }
    }
}

pub fn all_subgroup_classes(group: &PermGroup, caps: &Caps) -> Result<SubgroupLattice> {
    if group.order() > caps.lattice_cap {
        return Err(Error::OverCap {
            what: "group order (lattice cap)",
            size: group.order(),
            cap: caps.lattice_cap,
        });
    }
    SubgroupLattice::build(&Exhaustive::new(group, caps)?, caps)
}

pub fn maximal_subgroup_classes(lattice: &SubgroupLattice) -> Vec<Subgroup> {
    lattice.maximal_classes().into_iter().cloned().collect()
}

pub fn subgroup_from_generators(
    table: &ElementTable,
    gens: &[Permutation],
    caps: &Caps,
) -> Result<Subgroup> {
    let h = table.subgroup_from_permutations(gens)?;
    if h.order as u128 > caps.lattice_cap {
        return Err(Error::OverCap {
            what: "subgroup order (lattice cap)",
            size: h.order as u128,
            cap: caps.lattice_cap,
        });
    }
    Ok(h)
}

pub fn is_same_class(table: &ElementTable, h1: &Subgroup, h2: &Subgroup) -> Result<bool> {
    table.check_parent(h1)?;
    table.check_parent(h2)?;
    Ok(h1.canonical_key == h2.canonical_key)
}
