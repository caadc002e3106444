//! Exhaustive mode: every element of a desk-scale group gets an index.
//!
//! Index `i` is the element's position in the BSGS enumeration, so an
//! element is identified by the images of the base points alone. Products
//! are computed on those images and ranked by sifting, without forming the
//! full product permutation.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashSet;
use std::hash::{Hash, Hasher};

use crate::bitset::Bitset;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::{lcm, Permutation};

/// Element index inside an [`ElementTable`].
pub type Elem = u32;

const MAX_BASE: usize = 64;

#[derive(Clone, Debug)]
pub struct ElementTable {
    group: PermGroup,
    n: usize,
    degree: usize,
    perms: Vec<u32>,
    base: Vec<usize>,
    base_imgs: Vec<u32>,
    /// per level: point -> transversal position (u32::MAX outside the orbit)
    pos: Vec<Vec<u32>>,
    /// per level, per transversal position: inverse transversal image table
    inv_trans: Vec<Vec<Vec<u32>>>,
    inv: Vec<Elem>,
    orders: Vec<u32>,
    gens: Vec<Elem>,
    conj_tabs: Vec<Vec<Elem>>,
    min_prime: usize,
    fingerprint: u64,
}

/// A subgroup of the table's group, stored as a membership bitset.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub members: Bitset,
    pub generators: Vec<Elem>,
    pub order: u64,
    /// Least member bitset among all conjugates; shared by conjugate subgroups.
    pub canonical_key: Bitset,
    parent: u64,
}

impl Subgroup {
    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x as usize)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.members.iter().map(|i| i as Elem)
    }

    pub fn parent_fingerprint(&self) -> u64 {
        self.parent
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.members == other.members
    }
}

impl Eq for Subgroup {}

fn smallest_prime_factor(n: usize) -> usize {
    if n < 2 {
        return 1;
    }
    let mut f = 2;
    while f * f <= n {
        if n.is_multiple_of(f) {
            return f;
        }
        f += 1;
    }
    n
}

impl ElementTable {
    pub fn new(group: &PermGroup, caps: &Caps) -> Result<Self> {
        if group.order() > caps.element_cap {
            return Err(Error::OverCap {
                what: "group order (element cap)",
                size: group.order(),
                cap: caps.element_cap,
            });
        }
        let n = group.order() as usize;
        let degree = group.degree();
        let b = group.level_count();
        assert!(b <= MAX_BASE);
        let base: Vec<usize> = (0..b).map(|l| group.level_point(l)).collect();
        let pos: Vec<Vec<u32>> = (0..b)
            .map(|l| {
                (0..degree)
                    .map(|p| group.level_pos(l, p).map_or(u32::MAX, |x| x as u32))
                    .collect()
            })
            .collect();
        let inv_trans: Vec<Vec<Vec<u32>>> = (0..b)
            .map(|l| {
                (0..group.level_orbit_len(l))
                    .map(|i| group.level_inverse_transversal(l, i).images().to_vec())
                    .collect()
            })
            .collect();
        let mut perms = Vec::with_capacity(n * degree);
        let mut base_imgs = Vec::with_capacity(n * b);
        let mut orders = Vec::with_capacity(n);
        for g in group.iter_elements() {
            perms.extend_from_slice(g.images());
            for &bp in &base {
                base_imgs.push(g.images()[bp]);
            }
            orders.push(g.order() as u32);
        }
        let mut hasher = DefaultHasher::new();
        degree.hash(&mut hasher);
        for g in group.generators() {
            g.images().hash(&mut hasher);
        }
        let mut table = ElementTable {
            group: group.clone(),
            n,
            degree,
            perms,
            base,
            base_imgs,
            pos,
            inv_trans,
            inv: Vec::new(),
            orders,
            gens: Vec::new(),
            conj_tabs: Vec::new(),
            min_prime: smallest_prime_factor(n),
            fingerprint: hasher.finish(),
        };
        table.inv = (0..n)
            .map(|i| {
                let p = table.perm(i as Elem).inverse();
                table.index_of(&p).expect("inverse lies in the group")
            })
            .collect();
        let mut gens = Vec::new();
        for g in group.generators() {
            let idx = table.index_of(g).expect("generator lies in the group");
            if idx != 0 && !gens.contains(&idx) {
                gens.push(idx);
            }
        }
        table.conj_tabs = gens
            .iter()
            .map(|&s| (0..n as Elem).map(|x| table.conj(x, s)).collect())
            .collect();
        table.gens = gens;
        Ok(table)
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn identity(&self) -> Elem {
        0
    }

    /// Indices of the group's (non-identity) generators.
    pub fn generators(&self) -> &[Elem] {
        &self.gens
    }

    pub fn images(&self, x: Elem) -> &[u32] {
        let s = x as usize * self.degree;
        &self.perms[s..s + self.degree]
    }

    pub fn perm(&self, x: Elem) -> Permutation {
        Permutation::from_images_unchecked(self.images(x).to_vec())
    }

    pub fn index_of(&self, p: &Permutation) -> Option<Elem> {
        if p.degree() != self.degree {
            return None;
        }
        let mut imgs = [0u32; MAX_BASE];
        for (l, &bp) in self.base.iter().enumerate() {
            imgs[l] = p.images()[bp];
        }
        let idx = self.rank_base_images(&mut imgs)?;
        (self.images(idx) == p.images()).then_some(idx)
    }

    fn rank_base_images(&self, imgs: &mut [u32; MAX_BASE]) -> Option<Elem> {
        let b = self.base.len();
        let mut idx: usize = 0;
        for l in 0..b {
            let pos = self.pos[l][imgs[l] as usize];
            if pos == u32::MAX {
                return None;
            }
            idx = idx * self.inv_trans[l].len() + pos as usize;
            let u = &self.inv_trans[l][pos as usize];
            for img in imgs.iter_mut().take(b).skip(l + 1) {
                *img = u[*img as usize];
            }
        }
        Some(idx as Elem)
    }

    /// Product "x then y".
    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        let b = self.base.len();
        let mut imgs = [0u32; MAX_BASE];
        let xb = &self.base_imgs[x as usize * b..x as usize * b + b];
        let yp = self.images(y);
        for l in 0..b {
            imgs[l] = yp[xb[l] as usize];
        }
        self.rank_base_images(&mut imgs)
            .expect("products stay in the group")
    }

    #[inline]
    pub fn inv(&self, x: Elem) -> Elem {
        self.inv[x as usize]
    }

    /// `g⁻¹ x g`.
    #[inline]
    pub fn conj(&self, x: Elem, g: Elem) -> Elem {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn element_order(&self, x: Elem) -> u64 {
        self.orders[x as usize] as u64
    }

    pub fn pow(&self, x: Elem, k: u128) -> Elem {
        let ord = self.element_order(x) as u128;
        let mut e = k % ord;
        let mut base = x;
        let mut acc = 0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(base, base);
            }
        }
        acc
    }

    /// Exponent as the lcm of all element orders.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1u64, |acc, &o| lcm(acc, o as u64))
    }

    /// Conjugation by the `s`-th group generator, as a lookup table.
    pub fn conj_by_generator(&self, s: usize, x: Elem) -> Elem {
        self.conj_tabs[s][x as usize]
    }

    pub fn generator_count(&self) -> usize {
        self.gens.len()
    }

    // ---- subgroup machinery -------------------------------------------------

    fn full_bits(&self) -> Bitset {
        Bitset::full(self.n)
    }

    /// Members of `⟨gens⟩`.
    pub fn closure_bits(&self, gens: &[Elem]) -> Bitset {
        let mut bits = Bitset::new(self.n);
        bits.insert(0);
        let mut list = vec![0];
        let mut used: Vec<Elem> = Vec::new();
        for &t in gens {
            if bits.contains(t as usize) {
                continue;
            }
            used.push(t);
            if !self.extend(&mut bits, &mut list, &used) {
                return self.full_bits();
            }
        }
        bits
    }

    /// Members of `⟨gens⟩`, or `None` once the closure exceeds `limit` elements.
    pub fn closure_bits_bounded(&self, gens: &[Elem], limit: usize) -> Option<Bitset> {
        let mut bits = Bitset::new(self.n);
        bits.insert(0);
        let mut list = vec![0];
        let mut used: Vec<Elem> = Vec::new();
        for &t in gens {
            if bits.contains(t as usize) {
                continue;
            }
            used.push(t);
            if !self.extend_bounded(&mut bits, &mut list, &used, limit) {
                return None;
            }
        }
        Some(bits)
    }

    /// Members of `⟨A, t⟩` given `A`'s member list and generators.
    pub fn join_bits(&self, a_bits: &Bitset, a_gens: &[Elem], t: Elem) -> Bitset {
        if a_bits.contains(t as usize) {
            return a_bits.clone();
        }
        let mut bits = a_bits.clone();
        let mut list: Vec<Elem> = a_bits.iter().map(|i| i as Elem).collect();
        let mut gens = a_gens.to_vec();
        gens.push(t);
        if !self.extend(&mut bits, &mut list, &gens) {
            return self.full_bits();
        }
        bits
    }

    /// Dimino step: `bits`/`list` hold a subgroup `A` generated by all but
    /// the last of `gens`; grows them to `⟨gens⟩` as a union of right cosets
    /// of `A`. Returns false once the set is known to be the whole group.
    fn extend(&self, bits: &mut Bitset, list: &mut Vec<Elem>, gens: &[Elem]) -> bool {
        self.extend_bounded(bits, list, gens, self.n / self.min_prime)
    }

    fn extend_bounded(
        &self,
        bits: &mut Bitset,
        list: &mut Vec<Elem>,
        gens: &[Elem],
        limit: usize,
    ) -> bool {
        let a: Vec<Elem> = list.clone();
        let mut reps: Vec<Elem> = vec![0];
        let mut head = 0;
        while head < reps.len() {
            let x = reps[head];
            head += 1;
            for &s in gens {
                let y = self.mul(x, s);
                if bits.contains(y as usize) {
                    continue;
                }
                for &h in &a {
                    let z = self.mul(h, y);
                    bits.insert(z as usize);
                    list.push(z);
                }
                if list.len() > limit {
                    return false;
                }
                reps.push(y);
            }
        }
        true
    }

    /// Image of a member set under conjugation by `g`.
    pub fn conjugate_bits(&self, bits: &Bitset, g: Elem) -> Bitset {
        let mut out = Bitset::new(self.n);
        for x in bits.iter() {
            out.insert(self.conj(x as Elem, g) as usize);
        }
        out
    }

    fn conjugate_bits_by_generator(&self, bits: &Bitset, s: usize) -> Bitset {
        let tab = &self.conj_tabs[s];
        let mut out = Bitset::new(self.n);
        for x in bits.iter() {
            out.insert(tab[x] as usize);
        }
        out
    }

    /// All distinct conjugates of a subgroup, input first, in BFS order.
    pub fn conjugates(&self, bits: &Bitset) -> Vec<Bitset> {
        let mut seen: HashSet<Bitset> = HashSet::new();
        seen.insert(bits.clone());
        let mut out = vec![bits.clone()];
        let mut head = 0;
        while head < out.len() {
            for s in 0..self.conj_tabs.len() {
                let c = self.conjugate_bits_by_generator(&out[head], s);
                if seen.insert(c.clone()) {
                    out.push(c);
                }
            }
            head += 1;
        }
        out
    }

    pub fn canonical_key(&self, bits: &Bitset) -> Bitset {
        self.conjugates(bits).into_iter().min().unwrap()
    }

    /// `N_G(H)` by testing every element against `H`'s generators.
    pub fn normalizer_bits(&self, h: &Subgroup) -> Bitset {
        let mut out = Bitset::new(self.n);
        for g in 0..self.n as Elem {
            if h
                .generators
                .iter()
                .all(|&x| h.members.contains(self.conj(x, g) as usize))
            {
                out.insert(g as usize);
            }
        }
        out
    }

    /// A small generating set: greedily adds members of largest order first.
    pub fn generators_of(&self, bits: &Bitset) -> Vec<Elem> {
        let mut members: Vec<Elem> = bits.iter().map(|i| i as Elem).collect();
        members.sort_by_key(|&x| (std::cmp::Reverse(self.element_order(x)), x));
        let target = bits.count();
        let mut cur = Bitset::new(self.n);
        cur.insert(0);
        let mut list = vec![0];
        let mut gens = Vec::new();
        for x in members {
            if list.len() == target {
                break;
            }
            if cur.contains(x as usize) {
                continue;
            }
            gens.push(x);
            let ok = self.extend(&mut cur, &mut list, &gens);
            debug_assert!(ok || target == self.n);
            if !ok {
                return gens;
            }
        }
        gens
    }

    pub fn subgroup_from_bits(&self, members: Bitset) -> Subgroup {
        let generators = self.generators_of(&members);
        self.subgroup_with_generators(members, generators)
    }

    pub(crate) fn subgroup_with_generators(&self, members: Bitset, generators: Vec<Elem>) -> Subgroup {
        let canonical_key = self.canonical_key(&members);
        let order = members.count() as u64;
        Subgroup {
            members,
            generators,
            order,
            canonical_key,
            parent: self.fingerprint,
        }
    }

    /// `⟨gens⟩` as a subgroup record; generators outside the group are rejected.
    pub fn subgroup_from_permutations(&self, gens: &[Permutation]) -> Result<Subgroup> {
        let mut idx = Vec::with_capacity(gens.len());
        for g in gens {
            if g.degree() != self.degree {
                return Err(Error::DegreeMismatch {
                    left: self.degree,
                    right: g.degree(),
                });
            }
            idx.push(self.index_of(g).ok_or(Error::NotMember)?);
        }
        Ok(self.subgroup_from_elements(&idx))
    }

    pub fn subgroup_from_elements(&self, gens: &[Elem]) -> Subgroup {
        let members = self.closure_bits(gens);
        let generators: Vec<Elem> = gens.iter().copied().filter(|&g| g != 0).collect();
        self.subgroup_with_generators(members, generators)
    }

    pub fn whole(&self) -> Subgroup {
        let generators = self.gens.clone();
        self.subgroup_with_generators(self.full_bits(), generators)
    }

    pub fn trivial(&self) -> Subgroup {
        let mut bits = Bitset::new(self.n);
        bits.insert(0);
        self.subgroup_with_generators(bits, Vec::new())
    }

    pub fn check_parent(&self, h: &Subgroup) -> Result<()> {
        if h.parent != self.fingerprint || h.members.len() != self.n {
            return Err(Error::ParentMismatch);
        }
        Ok(())
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.gens.iter().all(|&g| {
            h.generators
                .iter()
                .all(|&x| h.members.contains(self.conj(x, g) as usize))
        })
    }

    /// Subgroup permutations, for reports.
    pub fn permutations(&self, elems: &[Elem]) -> Vec<Permutation> {
        elems.iter().map(|&x| self.perm(x)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{alternating, symmetric};

    #[test]
    fn table_matches_permutation_arithmetic() {
        let g = symmetric(5).unwrap();
        let t = ElementTable::new(&g, &Caps::default()).unwrap();
        assert_eq!(t.order(), 120);
        for x in (0..120).step_by(7) {
            for y in (0..120).step_by(11) {
                let prod = t.perm(x).mul(&t.perm(y));
                assert_eq!(t.perm(t.mul(x, y)), prod);
            }
            assert!(t.perm(t.mul(x, t.inv(x))).is_identity());
            assert_eq!(t.perm(t.pow(x, 5)), t.perm(x).power(5));
        }
        assert!(t.perm(0).is_identity());
    }

    #[test]
    fn closures() {
        let g = symmetric(5).unwrap();
        let t = ElementTable::new(&g, &Caps::default()).unwrap();
        let s4 = t
            .subgroup_from_permutations(&[
                Permutation::parse("(1 2)", 5).unwrap(),
                Permutation::parse("(1 2 3 4)", 5).unwrap(),
            ])
            .unwrap();
        assert_eq!(s4.order, 24);
        assert_eq!(t.subgroup_from_elements(&[]).order, 1);
        let a = t
            .subgroup_from_permutations(&[Permutation::parse("(1 2 3)", 5).unwrap()])
            .unwrap();
        assert_eq!(a.order, 3);
        assert!(t.subgroup_from_permutations(&[Permutation::identity(4)]).is_err());
        let a5 = alternating(5).unwrap();
        let ta = ElementTable::new(&a5, &Caps::default()).unwrap();
        assert!(ta
            .subgroup_from_permutations(&[Permutation::parse("(1 2)", 5).unwrap()])
            .is_err());
    }

    #[test]
    fn conjugate_subgroups_share_keys() {
        let g = symmetric(5).unwrap();
        let t = ElementTable::new(&g, &Caps::default()).unwrap();
        let stab = |a: &str, b: &str| {
            t.subgroup_from_permutations(&[
                Permutation::parse(a, 5).unwrap(),
                Permutation::parse(b, 5).unwrap(),
            ])
            .unwrap()
        };
        let h1 = stab("(1 2)", "(1 2 3 4)");
        let h2 = stab("(2 3)", "(2 3 4 5)");
        assert_eq!(h1.canonical_key, h2.canonical_key);
        assert_eq!(t.conjugates(&h1.members).len(), 5);
        assert_eq!(t.normalizer_bits(&h1).count(), 24);
    }

    #[test]
    fn over_cap_is_refused() {
        let g = symmetric(8).unwrap();
        assert!(ElementTable::new(&g, &Caps::default()).unwrap_err().is_over_cap());
    }
}
