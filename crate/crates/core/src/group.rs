//! Permutation groups backed by a base and strong generating set.
//!
//! The BSGS is built once by a deterministic Schreier–Sims pass and never
//! mutated afterwards. Base points are chosen as the least point moved by
//! the element that forces a new level, so transversal order (and hence
//! element enumeration order) is reproducible.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::perm::Permutation;

const NOT_IN_ORBIT: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct Level {
    /// 0-based base point.
    point: usize,
    /// Strong generators fixing all earlier base points.
    gens: Vec<Permutation>,
    /// Basic orbit in BFS discovery order; `orbit[0] == point`.
    orbit: Vec<u32>,
    /// `pos[q]` is the index of `q` in `orbit`, or `NOT_IN_ORBIT`.
    pos: Vec<u32>,
    /// `transversal[i]` maps `point` to `orbit[i]`.
    transversal: Vec<Permutation>,
    inverse_transversal: Vec<Permutation>,
}

impl Level {
    fn new(point: usize, degree: usize) -> Self {
        let mut level = Level {
            point,
            gens: Vec::new(),
            orbit: Vec::new(),
            pos: Vec::new(),
            transversal: Vec::new(),
            inverse_transversal: Vec::new(),
        };
        level.rebuild(degree);
        level
    }

    fn rebuild(&mut self, degree: usize) {
        let id = Permutation::identity(degree);
        self.pos = vec![NOT_IN_ORBIT; degree];
        self.orbit = vec![self.point as u32];
        self.pos[self.point] = 0;
        self.transversal = vec![id.clone()];
        let mut head = 0;
        while head < self.orbit.len() {
            let beta = self.orbit[head] as usize;
            for x in &self.gens {
                let img = x.image0(beta);
                if self.pos[img] == NOT_IN_ORBIT {
                    self.pos[img] = self.orbit.len() as u32;
                    self.orbit.push(img as u32);
                    let u = self.transversal[head].mul(x);
                    self.transversal.push(u);
                }
            }
            head += 1;
        }
        self.inverse_transversal = self.transversal.iter().map(|u| u.inverse()).collect();
    }
}

/// An immutable permutation group with an exact BSGS.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
    order: u128,
}

impl PermGroup {
    /// Builds the BSGS for `⟨generators⟩` on `degree` points.
    pub fn new(generators: Vec<Permutation>, degree: usize) -> Result<Self> {
        Self::with_base_prefix(generators, degree, &[])
    }

    /// Like [`PermGroup::new`] but forces the base to start with the given
    /// 1-based points; the first level's strong generators then generate
    /// the pointwise stabiliser of the prefix.
    pub fn with_base_prefix(
        generators: Vec<Permutation>,
        degree: usize,
        prefix: &[usize],
    ) -> Result<Self> {
        if degree == 0 {
            return Err(Error::invalid("degree must be positive"));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        for &p in prefix {
            if p == 0 || p > degree {
                return Err(Error::PointOutOfRange { point: p, degree });
            }
        }
        // long lists (typically from group files) keep only the generators
        // that enlarge the group, in their original order
        let generators = if generators.len() > THIN_ABOVE {
            thin(generators.into_iter().filter(|g| !g.is_identity()).collect(), degree)
        } else {
            generators
        };
        let levels = schreier_sims(&generators, degree, prefix);
        let mut order: u128 = 1;
        for l in &levels {
            order = order
                .checked_mul(l.orbit.len() as u128)
                .ok_or(Error::OrderOverflow)?;
        }
        Ok(PermGroup {
            degree,
            generators,
            levels,
            order,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            levels: Vec::new(),
            order: 1,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    /// 1-based base points.
    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point + 1).collect()
    }

    /// Sizes of the basic orbits, in base order.
    pub fn basic_orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// All strong generators (those of the first level include every other level's).
    pub fn strong_generators(&self) -> &[Permutation] {
        self.levels.first().map(|l| &l.gens[..]).unwrap_or(&[])
    }

    /// Strong generators of the stabiliser of the first `depth` base points.
    pub fn stabilizer_generators(&self, depth: usize) -> Vec<Permutation> {
        self.levels
            .get(depth)
            .map(|l| l.gens.clone())
            .unwrap_or_default()
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    /// Sifts `g` through the stabiliser chain starting at `start`.
    /// Returns the residue and the level where sifting stopped
    /// (`levels.len()` when every level was passed).
    fn sift_from(&self, g: &Permutation, start: usize) -> (Permutation, usize) {
        sift(&self.levels, g, start)
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: p.degree(),
            });
        }
        let (h, j) = self.sift_from(p, 0);
        Ok(j == self.levels.len() && h.is_identity())
    }

    /// Orbit of a 1-based point under the generators, sorted.
    pub fn orbit(&self, point: usize) -> Result<Vec<usize>> {
        if point == 0 || point > self.degree {
            return Err(Error::PointOutOfRange {
                point,
                degree: self.degree,
            });
        }
        Ok(orbit_of(&self.generators, self.degree, point - 1)
            .into_iter()
            .map(|p| p + 1)
            .collect())
    }

    /// Orbits of the generators on all points, each sorted, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            let orb = orbit_of(&self.generators, self.degree, start);
            for &p in &orb {
                seen[p] = true;
            }
            out.push(orb.into_iter().map(|p| p + 1).collect());
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    /// Position of `g` in the deterministic element enumeration, or `None`
    /// when `g` is not in the group.
    pub fn rank(&self, g: &Permutation) -> Option<u128> {
        if g.degree() != self.degree {
            return None;
        }
        let mut h = g.clone();
        let mut idx: u128 = 0;
        for level in &self.levels {
            let beta = h.image0(level.point);
            let pos = level.pos[beta];
            if pos == NOT_IN_ORBIT {
                return None;
            }
            idx = idx * level.orbit.len() as u128 + pos as u128;
            h = h.mul(&level.inverse_transversal[pos as usize]);
        }
        h.is_identity().then_some(idx)
    }

    /// Element at position `index` of the deterministic enumeration.
    pub fn unrank(&self, mut index: u128) -> Option<Permutation> {
        if index >= self.order {
            return None;
        }
        let mut digits = vec![0usize; self.levels.len()];
        for (l, level) in self.levels.iter().enumerate().rev() {
            let n = level.orbit.len() as u128;
            digits[l] = (index % n) as usize;
            index /= n;
        }
        let mut g = self.identity();
        for (l, level) in self.levels.iter().enumerate() {
            // elements are u_{k-1} ⋯ u_1 u_0; build from the right
            g = level.transversal[digits[l]].mul(&g);
        }
        Some(g)
    }

    /// Every element exactly once, in enumeration order.
    pub fn elements(&self, cap: u128) -> Result<Vec<Permutation>> {
        if self.order > cap {
            return Err(Error::OverCap {
                what: "group order",
                size: self.order,
                cap,
            });
        }
        Ok(self.iter_elements().collect())
    }

    /// Streaming enumeration (no cap); the order matches [`PermGroup::rank`].
    pub fn iter_elements(&self) -> ElementIter<'_> {
        ElementIter::new(self)
    }

    pub(crate) fn level_count(&self) -> usize {
        self.levels.len()
    }

    pub(crate) fn level_point(&self, l: usize) -> usize {
        self.levels[l].point
    }

    pub(crate) fn level_pos(&self, l: usize, point: usize) -> Option<usize> {
        let p = self.levels[l].pos[point];
        (p != NOT_IN_ORBIT).then_some(p as usize)
    }

    pub(crate) fn level_orbit_len(&self, l: usize) -> usize {
        self.levels[l].orbit.len()
    }

    pub(crate) fn level_inverse_transversal(&self, l: usize, i: usize) -> &Permutation {
        &self.levels[l].inverse_transversal[i]
    }
}

/// Streams group elements in rank order, keeping partial products per level.
pub struct ElementIter<'a> {
    group: &'a PermGroup,
    digits: Vec<usize>,
    /// `partial[l]` is `u_{l-1} ⋯ u_0` for the current digits.
    partial: Vec<Permutation>,
    done: bool,
}

impl<'a> ElementIter<'a> {
    fn new(group: &'a PermGroup) -> Self {
        let k = group.levels.len();
        let mut partial = Vec::with_capacity(k + 1);
        partial.push(group.identity());
        for l in 0..k {
            let next = group.levels[l].transversal[0].mul(&partial[l]);
            partial.push(next);
        }
        ElementIter {
            group,
            digits: vec![0; k],
            partial,
            done: false,
        }
    }
}

impl Iterator for ElementIter<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let k = self.digits.len();
        let out = self.partial[k].clone();
        // advance the mixed-radix counter, least significant level last
        let mut l = k;
        loop {
            if l == 0 {
                self.done = true;
                break;
            }
            l -= 1;
            self.digits[l] += 1;
            if self.digits[l] < self.group.levels[l].orbit.len() {
                for m in l..k {
                    let u = &self.group.levels[m].transversal[self.digits[m]];
                    self.partial[m + 1] = u.mul(&self.partial[m]);
                }
                break;
            }
            self.digits[l] = 0;
        }
        Some(out)
    }
}

pub(crate) fn orbit_of(gens: &[Permutation], degree: usize, point: usize) -> Vec<usize> {
    let mut seen = vec![false; degree];
    seen[point] = true;
    let mut queue = VecDeque::from([point]);
    let mut out = vec![point];
    while let Some(b) = queue.pop_front() {
        for g in gens {
            let c = g.image0(b);
            if !seen[c] {
                seen[c] = true;
                out.push(c);
                queue.push_back(c);
            }
        }
    }
    out.sort_unstable();
    out
}

fn sift(levels: &[Level], g: &Permutation, start: usize) -> (Permutation, usize) {
    let mut h = g.clone();
    for (l, level) in levels.iter().enumerate().skip(start) {
        let beta = h.image0(level.point);
        let pos = level.pos[beta];
        if pos == NOT_IN_ORBIT {
            return (h, l);
        }
        h = h.mul(&level.inverse_transversal[pos as usize]);
    }
    (h, levels.len())
}

fn first_moved_point(g: &Permutation) -> Option<usize> {
    g.images()
        .iter()
        .enumerate()
        .find(|(i, &x)| *i != x as usize)
        .map(|(i, _)| i)
}

/// Generator lists longer than this are thinned before Schreier–Sims.
const THIN_ABOVE: usize = 8;

/// Drops generators already in the group generated by the earlier ones.
fn thin(gens: Vec<Permutation>, degree: usize) -> Vec<Permutation> {
    let mut kept: Vec<Permutation> = Vec::new();
    let mut levels: Vec<Level> = Vec::new();
    for g in gens {
        let (h, j) = sift(&levels, &g, 0);
        if j == levels.len() && h.is_identity() {
            continue;
        }
        kept.push(g);
        levels = schreier_sims_core(kept.clone(), degree, &[]);
    }
    kept
}

fn schreier_sims(generators: &[Permutation], degree: usize, prefix: &[usize]) -> Vec<Level> {
    let gens: Vec<Permutation> = generators
        .iter()
        .filter(|g| !g.is_identity())
        .cloned()
        .collect();
    schreier_sims_core(gens, degree, prefix)
}

fn schreier_sims_core(gens: Vec<Permutation>, degree: usize, prefix: &[usize]) -> Vec<Level> {
    let mut levels: Vec<Level> = prefix.iter().map(|&p| Level::new(p - 1, degree)).collect();
    if gens.is_empty() {
        // trailing prefix levels with trivial orbits carry no information
        levels.clear();
        return levels;
    }
    if levels.is_empty() {
        let point = gens.iter().filter_map(first_moved_point).min().unwrap();
        levels.push(Level::new(point, degree));
    }
    // every generator must move some base point
    for g in &gens {
        if levels.iter().all(|l| g.image0(l.point) == l.point) {
            let point = first_moved_point(g).unwrap();
            levels.push(Level::new(point, degree));
        }
    }
    // level l holds the generators fixing base points 0..l
    for g in &gens {
        for l in 0..levels.len() {
            let fixes_earlier = levels[..l].iter().all(|b| g.image0(b.point) == b.point);
            if fixes_earlier {
                levels[l].gens.push(g.clone());
            }
        }
    }
    for level in &mut levels {
        level.rebuild(degree);
    }

    let mut i = levels.len();
    while i > 0 {
        let cur = i - 1;
        let mut restarted = None;
        'scan: for oi in 0..levels[cur].orbit.len() {
            for xi in 0..levels[cur].gens.len() {
                let level = &levels[cur];
                let x = &level.gens[xi];
                let beta = level.orbit[oi] as usize;
                let img = x.image0(beta);
                let u_beta = &level.transversal[oi];
                let ui = &level.inverse_transversal[level.pos[img] as usize];
                let schreier = u_beta.mul(x).mul(ui);
                if schreier.is_identity() {
                    continue;
                }
                let (h, j) = sift(&levels, &schreier, cur + 1);
                if j < levels.len() || !h.is_identity() {
                    if j == levels.len() {
                        let point = first_moved_point(&h).unwrap();
                        levels.push(Level::new(point, degree));
                    }
                    for level in levels.iter_mut().take(j + 1).skip(cur + 1) {
                        level.gens.push(h.clone());
                        level.rebuild(degree);
                    }
                    restarted = Some(j + 1);
                    break 'scan;
                }
            }
        }
        match restarted {
            Some(next) => i = next,
            None => i -= 1,
        }
    }
    // drop prefix levels whose orbit is trivial only if they are trailing
    while levels.last().is_some_and(|l| l.orbit.len() == 1) {
        levels.pop();
    }
    levels
}
