//! Conjugacy classes, normal structure, quotients and Sylow subgroups.
//!
//! Everything here works in exhaustive mode on top of an [`ElementTable`];
//! over-cap groups are refused with [`Error::OverCap`].

use crate::bitset::Bitset;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::{lcm, Permutation};
use crate::table::{Elem, ElementTable, Subgroup};

/// Conjugacy classes of elements. Class `i`'s representative is the least
/// element of the class in enumeration order, and classes are numbered by
/// their representatives.
#[derive(Clone, Debug)]
pub struct ClassTable {
    pub reps: Vec<Permutation>,
    pub rep_elems: Vec<Elem>,
    pub sizes: Vec<u64>,
    pub orders: Vec<u64>,
    class_of: Vec<u32>,
}

impl ClassTable {
    pub fn new(table: &ElementTable) -> Self {
        let n = table.order();
        let mut class_of = vec![u32::MAX; n];
        let mut rep_elems = Vec::new();
        let mut sizes = Vec::new();
        let mut orders = Vec::new();
        let mut stack = Vec::new();
        for x in 0..n as Elem {
            if class_of[x as usize] != u32::MAX {
                continue;
            }
            let c = rep_elems.len() as u32;
            class_of[x as usize] = c;
            stack.push(x);
            let mut size = 0u64;
            while let Some(y) = stack.pop() {
                size += 1;
                for s in 0..table.generator_count() {
                    let z = table.conj_by_generator(s, y);
                    if class_of[z as usize] == u32::MAX {
                        class_of[z as usize] = c;
                        stack.push(z);
                    }
                }
            }
            rep_elems.push(x);
            sizes.push(size);
            orders.push(table.element_order(x));
        }
        ClassTable {
            reps: rep_elems.iter().map(|&x| table.perm(x)).collect(),
            rep_elems,
            sizes,
            orders,
            class_of,
        }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn class_of(&self, x: Elem) -> usize {
        self.class_of[x as usize] as usize
    }

    pub fn members(&self, class: usize) -> impl Iterator<Item = Elem> + '_ {
        self.class_of
            .iter()
            .enumerate()
            .filter(move |(_, &c)| c as usize == class)
            .map(|(i, _)| i as Elem)
    }

    /// Classes meeting a subgroup, as a flag per class.
    pub fn classes_meeting(&self, h: &Subgroup) -> Vec<bool> {
        let mut hit = vec![false; self.len()];
        for x in h.elements() {
            hit[self.class_of(x)] = true;
        }
        hit
    }
}

/// A group in exhaustive mode: element table plus class table.
#[derive(Clone, Debug)]
pub struct Exhaustive {
    pub table: ElementTable,
    pub classes: ClassTable,
}

impl Exhaustive {
    pub fn new(group: &PermGroup, caps: &Caps) -> Result<Self> {
        let table = ElementTable::new(group, caps)?;
        let classes = ClassTable::new(&table);
        Ok(Exhaustive { table, classes })
    }

    pub fn group(&self) -> &PermGroup {
        self.table.group()
    }

    pub fn order(&self) -> u64 {
        self.table.order() as u64
    }

    pub fn elem(&self, p: &Permutation) -> Result<Elem> {
        if p.degree() != self.table.degree() {
            return Err(Error::DegreeMismatch {
                left: self.table.degree(),
                right: p.degree(),
            });
        }
        self.table.index_of(p).ok_or(Error::NotMember)
    }

    pub fn exponent(&self) -> u64 {
        self.classes.orders.iter().fold(1, |a, &o| lcm(a, o))
    }

    /// Conjugator `g` with `a^g = b`, if the two are conjugate.
    pub fn are_conjugate(&self, a: Elem, b: Elem) -> Option<Elem> {
        let t = &self.table;
        if self.classes.class_of(a) != self.classes.class_of(b) {
            return None;
        }
        let mut via = vec![u32::MAX; t.order()];
        via[a as usize] = 0;
        let mut queue = vec![a];
        let mut head = 0;
        while head < queue.len() {
            let y = queue[head];
            head += 1;
            if y == b {
                return Some(via[y as usize]);
            }
            for (s, &g) in t.generators().iter().enumerate() {
                let z = t.conj_by_generator(s, y);
                if via[z as usize] == u32::MAX {
                    via[z as usize] = t.mul(via[y as usize], g);
                    queue.push(z);
                }
            }
        }
        unreachable!("same class implies a conjugator")
    }

    pub fn centralizer(&self, x: Elem) -> Subgroup {
        let t = &self.table;
        let mut bits = Bitset::new(t.order());
        for g in 0..t.order() as Elem {
            if t.mul(x, g) == t.mul(g, x) {
                bits.insert(g as usize);
            }
        }
        t.subgroup_from_bits(bits)
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        self.table.subgroup_from_bits(self.table.normalizer_bits(h))
    }

    /// Smallest normal subgroup containing `gens`.
    pub fn normal_closure(&self, gens: &[Elem]) -> Subgroup {
        let t = &self.table;
        let mut gens: Vec<Elem> = gens.iter().copied().filter(|&g| g != 0).collect();
        let mut bits = t.closure_bits(&gens);
        loop {
            let mut extra = None;
            'scan: for &x in &gens {
                for &g in t.generators() {
                    let c = t.conj(x, g);
                    if !bits.contains(c as usize) {
                        extra = Some(c);
                        break 'scan;
                    }
                }
            }
            match extra {
                Some(c) => {
                    bits = t.join_bits(&bits, &gens, c);
                    gens.push(c);
                }
                None => break,
            }
        }
        t.subgroup_from_bits(bits)
    }

    /// All normal subgroups, ordered by (order, member set).
    pub fn normal_subgroups(&self) -> Vec<Subgroup> {
        let t = &self.table;
        let mut found: Vec<Subgroup> = Vec::new();
        let push = |s: Subgroup, found: &mut Vec<Subgroup>| {
            if found.iter().all(|f| f.members != s.members) {
                found.push(s);
                true
            } else {
                false
            }
        };
        push(t.trivial(), &mut found);
        for c in 1..self.classes.len() {
            let members: Vec<Elem> = self.classes.members(c).collect();
            let s = t.subgroup_from_bits(t.closure_bits(&members));
            push(s, &mut found);
        }
        let mut i = 0;
        while i < found.len() {
            for j in 0..i {
                let mut gens = found[i].generators.clone();
                gens.extend_from_slice(&found[j].generators);
                let s = t.subgroup_from_bits(t.closure_bits(&gens));
                push(s, &mut found);
            }
            i += 1;
        }
        found.sort_by(|a, b| (a.order, &a.members).cmp(&(b.order, &b.members)));
        found
    }

    /// Intersection of all conjugates of `h`.
    pub fn core_of(&self, h: &Subgroup) -> Result<Subgroup> {
        self.table.check_parent(h)?;
        let mut bits = h.members.clone();
        for c in self.table.conjugates(&h.members) {
            bits.intersect_with(&c);
        }
        Ok(self.table.subgroup_from_bits(bits))
    }

    /// `G/N` acting on the right cosets of `N`. Cosets are numbered in
    /// order of their least element.
    pub fn quotient_action(&self, n: &Subgroup, caps: &Caps) -> Result<PermGroup> {
        let t = &self.table;
        t.check_parent(n)?;
        if !t.is_normal(n) {
            return Err(Error::NotNormal);
        }
        let index = t.order() / n.order as usize;
        if index > caps.degree_bound {
            return Err(Error::DegreeBound {
                degree: index,
                bound: caps.degree_bound,
            });
        }
        let mut coset = vec![u32::MAX; t.order()];
        let mut reps = Vec::with_capacity(index);
        for x in 0..t.order() as Elem {
            if coset[x as usize] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            for m in n.elements() {
                coset[t.mul(m, x) as usize] = c;
            }
            reps.push(x);
        }
        let gens = t
            .generators()
            .iter()
            .map(|&s| {
                let images = reps.iter().map(|&r| coset[t.mul(r, s) as usize]).collect();
                Permutation::from_images(images)
            })
            .collect::<Result<Vec<_>>>()?;
        let q = PermGroup::new(gens, index.max(1))?;
        if q.order() != index as u128 {
            return Err(Error::ConstructionCheck(format!(
                "quotient action has order {}, expected {}",
                q.order(),
                index
            )));
        }
        Ok(q)
    }

    /// Exponent of `G/N` without building the quotient.
    pub fn quotient_exponent(&self, n: &Subgroup) -> Result<u64> {
        let t = &self.table;
        t.check_parent(n)?;
        if !t.is_normal(n) {
            return Err(Error::NotNormal);
        }
        let mut e = 1;
        for &x in &self.classes.rep_elems {
            let mut k = 1;
            let mut y = x;
            while !n.contains(y) {
                y = t.mul(y, x);
                k += 1;
            }
            e = lcm(e, k);
        }
        Ok(e)
    }

    fn commutator(&self, a: Elem, b: Elem) -> Elem {
        let t = &self.table;
        t.mul(t.mul(t.inv(a), t.inv(b)), t.mul(a, b))
    }

    /// Derived series down to its terminal member.
    pub fn derived_series(&self) -> Vec<Subgroup> {
        let mut series = vec![self.table.whole()];
        loop {
            let d = series.last().unwrap();
            let mut comms = Vec::new();
            for (i, &a) in d.generators.iter().enumerate() {
                for &b in &d.generators[i + 1..] {
                    comms.push(self.commutator(a, b));
                }
            }
            let next = self.normal_closure(&comms);
            if next.order == d.order {
                return series;
            }
            series.push(next);
        }
    }

    pub fn lower_central_series(&self) -> Vec<Subgroup> {
        let mut series = vec![self.table.whole()];
        loop {
            let d = series.last().unwrap();
            let mut comms = Vec::new();
            for &a in &d.generators {
                for &s in self.table.generators() {
                    comms.push(self.commutator(a, s));
                }
            }
            let next = self.normal_closure(&comms);
            if next.order == d.order {
                return series;
            }
            series.push(next);
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().unwrap().order == 1
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().unwrap().order == 1
    }

    /// A Sylow `p`-subgroup, grown from a `p`-element of largest order by
    /// repeated extension inside the normaliser.
    pub fn sylow_subgroup(&self, p: u64) -> Result<Subgroup> {
        if !crate::field::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let t = &self.table;
        let mut target = 1u64;
        let mut n = self.order();
        while n.is_multiple_of(p) {
            n /= p;
            target *= p;
        }
        let is_p_power = |mut k: u64| {
            while k.is_multiple_of(p) {
                k /= p;
            }
            k == 1
        };
        let start = (0..t.order() as Elem)
            .filter(|&x| is_p_power(t.element_order(x)))
            .max_by_key(|&x| (t.element_order(x), std::cmp::Reverse(x)))
            .unwrap();
        let mut sub = t.subgroup_from_elements(&[start]);
        while sub.order < target {
            let norm = t.normalizer_bits(&sub);
            let g = norm
                .iter()
                .map(|g| g as Elem)
                .find(|&g| !sub.contains(g) && sub.contains(t.pow(g, p as u128)))
                .expect("a p-subgroup below the Sylow order grows in its normaliser");
            let bits = t.join_bits(&sub.members, &sub.generators, g);
            let mut gens = sub.generators.clone();
            gens.push(g);
            sub = t.subgroup_with_generators(bits, gens);
        }
        Ok(sub)
    }

    /// Element orders present in a subgroup.
    pub fn element_orders_of(&self, h: &Subgroup) -> Vec<u64> {
        let mut v: Vec<u64> = h.elements().map(|x| self.table.element_order(x)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn exponent_of(&self, h: &Subgroup) -> u64 {
        self.element_orders_of(h).into_iter().fold(1, lcm)
    }
}

/// Order of a group element, after a membership check.
pub fn element_order(group: &PermGroup, x: &Permutation) -> Result<u64> {
    if !group.contains(x)? {
        return Err(Error::NotMember);
    }
    Ok(x.order())
}

pub fn conjugacy_classes(group: &PermGroup, caps: &Caps) -> Result<ClassTable> {
    Ok(Exhaustive::new(group, caps)?.classes)
}

/// Exponent by streaming every element, so it also works a little beyond
/// the element cap (up to the scan budget).
pub fn exponent(group: &PermGroup, caps: &Caps) -> Result<u64> {
    if group.order() > caps.scan_budget {
        return Err(Error::OverCap {
            what: "group order (scan budget)",
            size: group.order(),
            cap: caps.scan_budget,
        });
    }
    let mut e = 1;
    for g in group.iter_elements() {
        e = lcm(e, g.order());
    }
    Ok(e)
}

/// The `p`-part of `n`.
pub fn p_part(mut n: u128, p: u64) -> u128 {
    let mut r = 1;
    while n.is_multiple_of(p as u128) {
        n /= p as u128;
        r *= p as u128;
    }
    r
}

/// Primes dividing the group order, ascending.
pub fn order_primes(order: u128) -> Vec<u64> {
    let mut out = Vec::new();
    let mut n = order;
    let mut f = 2u128;
    while f * f <= n {
        if n.is_multiple_of(f) {
            out.push(f as u64);
            while n.is_multiple_of(f) {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        out.push(n as u64);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{alternating, cyclic, dihedral, direct_product, symmetric};

    fn ex(g: &PermGroup) -> Exhaustive {
        Exhaustive::new(g, &Caps::default()).unwrap()
    }

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    #[test]
    fn class_tables() {
        let s3 = ex(&symmetric(3).unwrap());
        let mut sizes = s3.classes.sizes.clone();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        let a5 = ex(&alternating(5).unwrap());
        let mut sizes = a5.classes.sizes.clone();
        sizes.sort();
        assert_eq!(sizes, vec![1, 12, 12, 15, 20]);
        assert_eq!(a5.exponent(), 30);
        assert_eq!(ex(&cyclic(1).unwrap()).classes.len(), 1);
    }

    #[test]
    fn conjugators() {
        let a4 = ex(&alternating(4).unwrap());
        let a = a4.elem(&p("(1 2)(3 4)", 4)).unwrap();
        let b = a4.elem(&p("(1 3)(2 4)", 4)).unwrap();
        let g = a4.are_conjugate(a, b).unwrap();
        assert_eq!(a4.table.conj(a, g), b);
        let s3 = ex(&symmetric(3).unwrap());
        let t = s3.elem(&p("(1 2)", 3)).unwrap();
        let c = s3.elem(&p("(1 2 3)", 3)).unwrap();
        assert!(s3.are_conjugate(t, c).is_none());
    }

    #[test]
    fn centralizers_and_normals() {
        let s5 = ex(&symmetric(5).unwrap());
        let x = s5.elem(&p("(1 2 3 4 5)", 5)).unwrap();
        assert_eq!(s5.centralizer(x).order, 5);
        let s4 = ex(&symmetric(4).unwrap());
        let orders: Vec<u64> = s4.normal_subgroups().iter().map(|n| n.order).collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
        assert_eq!(ex(&alternating(5).unwrap()).normal_subgroups().len(), 2);
        assert_eq!(ex(&cyclic(6).unwrap()).normal_subgroups().len(), 4);
    }

    #[test]
    fn cores_quotients_series() {
        let s4 = ex(&symmetric(4).unwrap());
        let syl = s4.sylow_subgroup(2).unwrap();
        assert_eq!(syl.order, 8);
        assert_eq!(s4.core_of(&syl).unwrap().order, 4);
        let v4 = s4.core_of(&syl).unwrap();
        let q = s4.quotient_action(&v4, &Caps::default()).unwrap();
        assert_eq!(q.order(), 6);
        assert_eq!(s4.quotient_exponent(&v4).unwrap(), 6);
        assert!(s4.is_solvable());
        assert!(!s4.is_nilpotent());
        assert!(ex(&dihedral(4).unwrap()).is_nilpotent());
        assert!(!ex(&alternating(5).unwrap()).is_solvable());
        let c4 = ex(&cyclic(4).unwrap());
        let c2 = c4.table.subgroup_from_elements(&[c4.elem(&p("(1 3)(2 4)", 4)).unwrap()]);
        assert_eq!(c4.quotient_exponent(&c2).unwrap(), 2);
    }

    #[test]
    fn exponent_streams() {
        let c = Caps::default();
        let g = direct_product(&cyclic(2).unwrap(), &cyclic(2).unwrap(), &c).unwrap();
        assert_eq!(exponent(&g, &c).unwrap(), 2);
        assert_eq!(exponent(&alternating(8).unwrap(), &c).unwrap(), 420);
    }
}
