//! Witnesses against weak exponentiality, and certificate re-verification.
//!
//! A witness is a pair `(H, x)` with `y = x^{|G:H|}` in no conjugate of `H`.
//! The search walks a fixed list of candidate subgroups: point stabilisers,
//! Sylow normalisers, cyclic subgroups of element representatives, small
//! subgroups generated by an involution and an element of order 3, and
//! finally any caller-supplied hint subgroups.

use std::collections::{BTreeMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::bitset::Bitset;
use crate::caps::Caps;
use crate::error::Result;
use crate::group::PermGroup;
use crate::perm::{lcm, Permutation};
use crate::report::{perms_json, PermJson};
use crate::structure::{order_primes, Exhaustive};
use crate::table::Elem;

/// Why `y` lies in no conjugate of `H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Reason {
    /// `H` fixes `point` and `y` fixes no point of its orbit.
    FixesNoPoint { point: usize },
    /// No element of `H` has the order of `y`.
    OrderObstruction { order: u64 },
    /// The conjugacy class of `y` misses `H`.
    ClassDisjoint,
    /// `y ∉ H` (refutes exponentiality only).
    NotInSubgroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub degree: usize,
    pub group_generators: Vec<PermJson>,
    pub group_order: u128,
    pub subgroup_label: String,
    pub subgroup_generators: Vec<PermJson>,
    pub subgroup_order: u128,
    pub index: u128,
    pub x: PermJson,
    pub y: PermJson,
    pub reason: Reason,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certificate {
    Witness(Witness),
    /// `H` is exponential but `exp(G)` does not divide `|G:H|`.
    ExponentialNontrivial {
        degree: usize,
        group_generators: Vec<PermJson>,
        subgroup_generators: Vec<PermJson>,
        index: u128,
        exponent: u64,
    },
    /// A proper quotient `G/N` has smaller exponent than `G`.
    QuotientExponent {
        degree: usize,
        group_generators: Vec<PermJson>,
        normal_generators: Vec<PermJson>,
        quotient_exponent: u64,
        exponent: u64,
    },
    /// A proper quotient is not wexp-solvable; the witness lives in `G/N`.
    QuotientWitness {
        degree: usize,
        group_generators: Vec<PermJson>,
        normal_generators: Vec<PermJson>,
        witness: Witness,
    },
    Exhaustion { checked: u64, summary: String },
    Shortcut { reason: String },
}

#[derive(Clone, Debug)]
pub(crate) struct Candidate {
    pub label: String,
    pub gens: Vec<Permutation>,
    /// 1-based point fixed by the whole candidate.
    pub point: Option<usize>,
}

pub(crate) fn witness_record(
    group: &PermGroup,
    cand: &Candidate,
    subgroup_order: u128,
    x: &Permutation,
    y: &Permutation,
    reason: Reason,
) -> Witness {
    Witness {
        degree: group.degree(),
        group_generators: perms_json(group.generators()),
        group_order: group.order(),
        subgroup_label: cand.label.clone(),
        subgroup_generators: perms_json(&cand.gens),
        subgroup_order,
        index: group.order() / subgroup_order,
        x: x.into(),
        y: y.into(),
        reason,
    }
}

fn fixes_none_of(y: &Permutation, points: &[usize]) -> bool {
    points.iter().all(|&q| y.apply(q) != q)
}

fn stabilizer_candidates(group: &PermGroup) -> Result<Vec<Candidate>> {
    let mut out = Vec::new();
    for orbit in group.orbits() {
        if orbit.len() < 2 {
            continue;
        }
        let point = *orbit.last().unwrap();
        let chain =
            PermGroup::with_base_prefix(group.generators().to_vec(), group.degree(), &[point])?;
        out.push(Candidate {
            label: format!("stabilizer of point {point}"),
            gens: chain.stabilizer_generators(1),
            point: Some(point),
        });
    }
    Ok(out)
}

fn hint_candidates(hints: &[(String, Vec<Permutation>)]) -> Vec<Candidate> {
    hints
        .iter()
        .map(|(label, gens)| Candidate {
            label: label.clone(),
            gens: gens.clone(),
            point: None,
        })
        .collect()
}

// ---- exhaustive mode --------------------------------------------------------

/// Tests one candidate against every element class; reports the failing
/// class of largest element order (ties: lowest class index).
pub(crate) fn table_witness(ex: &Exhaustive, cand: &Candidate) -> Option<Witness> {
    let t = &ex.table;
    let idx: Vec<Elem> = cand
        .gens
        .iter()
        .map(|g| t.index_of(g))
        .collect::<Option<_>>()?;
    let bits = t.closure_bits(&idx);
    witness_for_bits(ex, cand, &bits)
}

pub(crate) fn witness_for_bits(ex: &Exhaustive, cand: &Candidate, bits: &Bitset) -> Option<Witness> {
    let t = &ex.table;
    let order = bits.count();
    if order == t.order() {
        return None;
    }
    let m = (t.order() / order) as u128;
    let hit = classes_hit(ex, bits);
    let mut best: Option<(u64, usize, Elem)> = None;
    for c in 0..ex.classes.len() {
        let y = t.pow(ex.classes.rep_elems[c], m);
        if hit[ex.classes.class_of(y)] {
            continue;
        }
        let o = ex.classes.orders[c];
        if best.is_none_or(|(bo, _, _)| o > bo) {
            best = Some((o, c, y));
        }
    }
    let (_, c, y) = best?;
    let x = ex.classes.reps[c].clone();
    let y = t.perm(y);
    let orders: HashSet<u64> = bits.iter().map(|e| t.element_order(e as Elem)).collect();
    let reason = match cand.point {
        Some(pt) if fixes_none_of(&y, &t.group().orbit(pt).ok()?) => Reason::FixesNoPoint { point: pt },
        _ if !orders.contains(&y.order()) => Reason::OrderObstruction { order: y.order() },
        _ => Reason::ClassDisjoint,
    };
    Some(witness_record(t.group(), cand, order as u128, &x, &y, reason))
}

fn classes_hit(ex: &Exhaustive, bits: &Bitset) -> Vec<bool> {
    let mut hit = vec![false; ex.classes.len()];
    for x in bits.iter() {
        hit[ex.classes.class_of(x as Elem)] = true;
    }
    hit
}

fn table_search(ex: &Exhaustive, hints: &[(String, Vec<Permutation>)]) -> Result<Option<Witness>> {
    let t = &ex.table;
    let group = t.group();
    for cand in stabilizer_candidates(group)? {
        if let Some(w) = table_witness(ex, &cand) {
            return Ok(Some(w));
        }
    }
    for p in order_primes(group.order()) {
        let sylow = ex.sylow_subgroup(p)?;
        let norm = t.normalizer_bits(&sylow);
        let cand = Candidate {
            label: format!("normalizer of a Sylow {p}-subgroup"),
            gens: t.permutations(&t.generators_of(&norm)),
            point: None,
        };
        if let Some(w) = witness_for_bits(ex, &cand, &norm) {
            return Ok(Some(w));
        }
    }
    for c in 1..ex.classes.len() {
        let x = ex.classes.rep_elems[c];
        let cand = Candidate {
            label: format!("cyclic subgroup of order {}", ex.classes.orders[c]),
            gens: vec![t.perm(x)],
            point: None,
        };
        if let Some(w) = witness_for_bits(ex, &cand, &t.closure_bits(&[x])) {
            return Ok(Some(w));
        }
    }
    let threes: Vec<Elem> = (0..t.order() as Elem)
        .filter(|&x| t.element_order(x) == 3)
        .take(TWO_GEN_SCAN)
        .collect();
    let mut seen: HashSet<(usize, Vec<bool>)> = HashSet::new();
    for c in 1..ex.classes.len() {
        if ex.classes.orders[c] != 2 {
            continue;
        }
        let a = ex.classes.rep_elems[c];
        for &b in &threes {
            if seen.len() >= TWO_GEN_DISTINCT {
                break;
            }
            if !(2..=5).contains(&t.element_order(t.mul(a, b))) {
                continue;
            }
            let Some(bits) = t.closure_bits_bounded(&[a, b], TWO_GEN_LIMIT) else {
                continue;
            };
            if !seen.insert((bits.count(), classes_hit(ex, &bits))) {
                continue;
            }
            let cand = two_gen_candidate(t.perm(a), t.perm(b), bits.count());
            if let Some(w) = witness_for_bits(ex, &cand, &bits) {
                return Ok(Some(w));
            }
        }
    }
    for cand in hint_candidates(hints) {
        if let Some(w) = table_witness(ex, &cand) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

const TWO_GEN_SCAN: usize = 4000;
const TWO_GEN_DISTINCT: usize = 64;
const TWO_GEN_LIMIT: usize = 60;

fn two_gen_candidate(a: Permutation, b: Permutation, order: usize) -> Candidate {
    Candidate {
        label: format!("subgroup of order {order} generated by an involution and an element of order 3"),
        gens: vec![a, b],
        point: None,
    }
}

// ---- streaming mode ---------------------------------------------------------

/// Element representatives gathered by one streaming pass: one element per
/// cycle type, plus samples of involutions and elements of order 3.
/// Representatives are ordered by number of cycles, then by cycle type.
#[derive(Clone, Debug)]
pub(crate) struct Scan {
    pub reps: Vec<Permutation>,
    pub involutions: Vec<Permutation>,
    pub threes: Vec<Permutation>,
}

/// Cycles laid out on consecutive points, longest first.
fn standard_form(cycle_type: &[usize]) -> Permutation {
    let degree: usize = cycle_type.iter().sum();
    let mut images: Vec<u32> = (0..degree as u32).collect();
    let mut start = 0;
    for &len in cycle_type {
        for i in 0..len {
            images[start + i] = (start + (i + 1) % len) as u32;
        }
        start += len;
    }
    Permutation::from_images(images).expect("a valid layout")
}

pub(crate) fn scan(group: &PermGroup, caps: &Caps) -> Scan {
    let limit = group.order().min(caps.scan_budget);
    let mut by_type: BTreeMap<(usize, Vec<usize>), Permutation> = BTreeMap::new();
    let mut involutions = Vec::new();
    let mut threes = Vec::new();
    for g in group.iter_elements().take(limit as usize) {
        let ct = g.cycle_type();
        let o = g.order();
        if o == 2 && involutions.len() < 64 {
            involutions.push(g.clone());
        }
        if o == 3 && threes.len() < TWO_GEN_SCAN {
            threes.push(g.clone());
        }
        if o > 1 {
            by_type.entry((ct.len(), ct)).or_insert(g);
        }
    }
    let reps = by_type
        .into_iter()
        .map(|((_, ct), g)| {
            let std = standard_form(&ct);
            if group.contains(&std).unwrap_or(false) {
                std
            } else {
                g
            }
        })
        .collect();
    Scan {
        reps,
        involutions,
        threes,
    }
}

fn element_orders(h: &PermGroup) -> HashSet<u64> {
    h.iter_elements().map(|g| g.order()).collect()
}

fn stream_witness(group: &PermGroup, scan: &Scan, cand: &Candidate, caps: &Caps) -> Result<Option<Witness>> {
    let gens = if cand.gens.is_empty() {
        vec![group.identity()]
    } else {
        cand.gens.clone()
    };
    let h = PermGroup::new(gens, group.degree())?;
    if h.order() == group.order() {
        return Ok(None);
    }
    let m = group.order() / h.order();
    if let Some(pt) = cand.point {
        let orbit = group.orbit(pt)?;
        for x in &scan.reps {
            let y = x.power_u128(m);
            if fixes_none_of(&y, &orbit) {
                let r = Reason::FixesNoPoint { point: pt };
                return Ok(Some(witness_record(group, cand, h.order(), x, &y, r)));
            }
        }
    }
    if h.order() > caps.element_cap {
        return Ok(None);
    }
    let orders = element_orders(&h);
    for x in &scan.reps {
        let y = x.power_u128(m);
        if !orders.contains(&y.order()) {
            let r = Reason::OrderObstruction { order: y.order() };
            return Ok(Some(witness_record(group, cand, h.order(), x, &y, r)));
        }
    }
    Ok(None)
}

fn stream_search(
    group: &PermGroup,
    hints: &[(String, Vec<Permutation>)],
    caps: &Caps,
) -> Result<Option<Witness>> {
    let scan = scan(group, caps);
    for cand in stabilizer_candidates(group)? {
        if let Some(w) = stream_witness(group, &scan, &cand, caps)? {
            return Ok(Some(w));
        }
    }
    for x in &scan.reps {
        let cand = Candidate {
            label: format!("cyclic subgroup of order {}", x.order()),
            gens: vec![x.clone()],
            point: None,
        };
        if let Some(w) = stream_witness(group, &scan, &cand, caps)? {
            return Ok(Some(w));
        }
    }
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    if let Some(a) = scan.involutions.first() {
        for b in &scan.threes {
            if seen.len() >= TWO_GEN_DISTINCT {
                break;
            }
            let ab = a.mul(b);
            if !(2..=5).contains(&ab.order()) {
                continue;
            }
            let h = PermGroup::new(vec![a.clone(), b.clone()], group.degree())?;
            if h.order() > TWO_GEN_LIMIT as u128 {
                continue;
            }
            let mut sig: Vec<u64> = h.iter_elements().map(|g| g.order()).collect();
            sig.sort_unstable();
            if !seen.insert(sig) {
                continue;
            }
            let cand = two_gen_candidate(a.clone(), b.clone(), h.order() as usize);
            if let Some(w) = stream_witness(group, &scan, &cand, caps)? {
                return Ok(Some(w));
            }
        }
    }
    for cand in hint_candidates(hints) {
        if let Some(w) = stream_witness(group, &scan, &cand, caps)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Searches for a witness. With an exhaustive view the test is exact class
/// intersection; otherwise only the orbit and order criteria are used.
pub fn find_wexp_witness(
    group: &PermGroup,
    ex: Option<&Exhaustive>,
    hints: &[(String, Vec<Permutation>)],
    caps: &Caps,
) -> Result<Option<Witness>> {
    match ex {
        Some(ex) => table_search(ex, hints),
        None => stream_search(group, hints, caps),
    }
}

// ---- verification -----------------------------------------------------------

fn perms(list: &[PermJson], degree: usize) -> std::result::Result<Vec<Permutation>, String> {
    list.iter()
        .map(|p| {
            let q = p.to_perm().map_err(|e| e.to_string())?;
            if q.degree() != degree {
                return Err(format!("permutation {} has degree {}, expected {degree}", p.cycles, q.degree()));
            }
            Ok(q)
        })
        .collect()
}

fn build(gens: Vec<Permutation>, degree: usize) -> std::result::Result<PermGroup, String> {
    let gens = if gens.is_empty() {
        vec![Permutation::identity(degree)]
    } else {
        gens
    };
    PermGroup::new(gens, degree).map_err(|e| e.to_string())
}

fn check(cond: bool, msg: &str) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

const VERIFY_CAP: u128 = 5_000_000;

fn all_elements(g: &PermGroup) -> std::result::Result<Vec<Permutation>, String> {
    g.elements(VERIFY_CAP).map_err(|e| e.to_string())
}

fn exponent_by_enumeration(g: &PermGroup) -> std::result::Result<u64, String> {
    Ok(all_elements(g)?.iter().fold(1, |e, x| lcm(e, x.order())))
}

/// Rechecks a witness from raw permutations with BSGS membership only.
pub fn verify_witness(w: &Witness) -> std::result::Result<String, String> {
    let g = build(perms(&w.group_generators, w.degree)?, w.degree)?;
    let hg = perms(&w.subgroup_generators, w.degree)?;
    let h = build(hg.clone(), w.degree)?;
    let x = w.x.to_perm().map_err(|e| e.to_string())?;
    let y = w.y.to_perm().map_err(|e| e.to_string())?;
    check(g.order() == w.group_order, "group order does not match")?;
    check(h.order() == w.subgroup_order, "subgroup order does not match")?;
    for s in &hg {
        check(g.contains(s).unwrap_or(false), "subgroup generator outside the group")?;
    }
    check(g.contains(&x).unwrap_or(false), "x is not in the group")?;
    let m = g.order() / h.order();
    check(m == w.index, "index does not match")?;
    check(x.power_u128(m) == y, "y is not x to the index")?;
    match &w.reason {
        Reason::FixesNoPoint { point } => {
            for s in &hg {
                check(s.apply(*point) == *point, "subgroup does not fix the stated point")?;
            }
            let orbit = g.orbit(*point).map_err(|e| e.to_string())?;
            check(fixes_none_of(&y, &orbit), "y fixes a point of the orbit")?;
            Ok(format!(
                "y fixes none of the {} points in the orbit of {point}, so it lies in no conjugate of H",
                orbit.len()
            ))
        }
        Reason::OrderObstruction { order } => {
            check(y.order() == *order, "stated order of y is wrong")?;
            check(
                all_elements(&h)?.iter().all(|e| e.order() != *order),
                "H has an element of the order of y",
            )?;
            Ok(format!("H has no element of order {order}"))
        }
        Reason::ClassDisjoint => {
            let gens = g.generators().to_vec();
            let mut seen: HashSet<Permutation> = HashSet::new();
            let mut queue = VecDeque::new();
            seen.insert(y.clone());
            queue.push_back(y.clone());
            while let Some(z) = queue.pop_front() {
                check(!h.contains(&z).unwrap_or(true), "the class of y meets H")?;
                for s in &gens {
                    let c = z.conjugate(s).map_err(|e| e.to_string())?;
                    if seen.insert(c.clone()) {
                        queue.push_back(c);
                    }
                }
                check(seen.len() as u128 <= VERIFY_CAP, "class too large to verify")?;
            }
            Ok(format!("the class of y ({} elements) misses H", seen.len()))
        }
        Reason::NotInSubgroup => {
            check(!h.contains(&y).unwrap_or(true), "y lies in H")?;
            Ok("y is not in H".to_string())
        }
    }
}

/// Independent recheck of a certificate. `Ok` carries a one-line account of
/// what was confirmed.
pub fn verify_certificate(cert: &Certificate) -> std::result::Result<String, String> {
    match cert {
        Certificate::Witness(w) => verify_witness(w),
        Certificate::ExponentialNontrivial {
            degree,
            group_generators,
            subgroup_generators,
            index,
            exponent,
        } => {
            let g = build(perms(group_generators, *degree)?, *degree)?;
            let hg = perms(subgroup_generators, *degree)?;
            for s in &hg {
                check(g.contains(s).unwrap_or(false), "subgroup generator outside the group")?;
            }
            let h = build(hg, *degree)?;
            let m = g.order() / h.order();
            check(m == *index, "index does not match")?;
            check(h.order() < g.order(), "H is the whole group")?;
            let e = exponent_by_enumeration(&g)?;
            check(e == *exponent, "exponent does not match")?;
            check(m % e as u128 != 0, "exp(G) divides the index")?;
            for x in all_elements(&g)? {
                check(h.contains(&x.power_u128(m)).unwrap_or(false), "H is not exponential")?;
            }
            Ok(format!("H is exponential of index {m} and exp(G) = {e} does not divide it"))
        }
        Certificate::QuotientExponent {
            degree,
            group_generators,
            normal_generators,
            quotient_exponent,
            exponent,
        } => {
            let g = build(perms(group_generators, *degree)?, *degree)?;
            let ng = perms(normal_generators, *degree)?;
            let n = build(ng.clone(), *degree)?;
            check_normal(&g, &n, &ng)?;
            check(n.order() < g.order(), "N is the whole group")?;
            let e = exponent_by_enumeration(&g)?;
            check(e == *exponent, "exponent does not match")?;
            let mut qe = 1;
            for x in all_elements(&g)? {
                let mut k = 1;
                let mut y = x.clone();
                while !n.contains(&y).unwrap_or(false) {
                    y = y.mul(&x);
                    k += 1;
                }
                qe = lcm(qe, k);
            }
            check(qe == *quotient_exponent, "quotient exponent does not match")?;
            check(qe != e, "quotient exponent equals exp(G)")?;
            Ok(format!("exp(G/N) = {qe} differs from exp(G) = {e}"))
        }
        Certificate::QuotientWitness {
            degree,
            group_generators,
            normal_generators,
            witness,
        } => {
            let g = build(perms(group_generators, *degree)?, *degree)?;
            let ng = perms(normal_generators, *degree)?;
            let n = build(ng.clone(), *degree)?;
            check_normal(&g, &n, &ng)?;
            check(n.order() > 1 && n.order() < g.order(), "N is not a proper nontrivial subgroup")?;
            check(
                witness.group_order == g.order() / n.order(),
                "witness group order is not |G/N|",
            )?;
            let inner = verify_witness(witness)?;
            Ok(format!("in G/N of order {}: {inner}", witness.group_order))
        }
        Certificate::Exhaustion { .. } | Certificate::Shortcut { .. } => {
            Ok("no falsifying data to recheck".to_string())
        }
    }
}

fn check_normal(g: &PermGroup, n: &PermGroup, ng: &[Permutation]) -> std::result::Result<(), String> {
    for s in ng {
        check(g.contains(s).unwrap_or(false), "normal generator outside the group")?;
        for t in g.generators() {
            let c = s.conjugate(t).map_err(|e| e.to_string())?;
            check(n.contains(&c).unwrap_or(false), "N is not normal")?;
        }
    }
    Ok(())
}
