//! Property checks over whole groups. Each returns the list of violations so
//! the same code drives the ordinary tests and the acceptance summary.

use wexp_core::lattice::SubgroupLattice;
use wexp_core::predicates::{
    is_exp_simple_definitional, is_exp_simple_quotient, is_exponential_bits, is_weakly_exponential_bits,
    is_wexp_solvable, is_wexp_solvable_exhaustive,
};
use wexp_core::report::Verdict;
use wexp_core::structure::Exhaustive;
use wexp_core::table::Elem;
use wexp_core::{Caps, PermGroup};

pub struct Ctx {
    pub spec: String,
    pub group: PermGroup,
    pub ex: Exhaustive,
    pub lattice: SubgroupLattice,
}

impl Ctx {
    pub fn new(spec: &str, group: PermGroup) -> Ctx {
        let caps = Caps::default();
        let ex = Exhaustive::new(&group, &caps).unwrap();
        let lattice = SubgroupLattice::build(&ex, &caps).unwrap();
        Ctx {
            spec: spec.to_string(),
            group,
            ex,
            lattice,
        }
    }
}

/// Straight from the definition: every `x^m` lies in some conjugate of `H`.
pub fn wexp_oracle(ex: &Exhaustive, members: &wexp_core::bitset::Bitset) -> bool {
    let t = &ex.table;
    let m = (t.order() / members.count()) as u128;
    let conj = t.conjugates(members);
    (0..t.order() as Elem).all(|x| {
        let y = t.pow(x, m) as usize;
        conj.iter().any(|c| c.contains(y))
    })
}

/// A few deterministic "random" conjugators: every generator plus a spread
/// of element indices.
fn conjugators(ex: &Exhaustive) -> Vec<Elem> {
    let n = ex.order();
    let mut v: Vec<Elem> = ex.table.generators().to_vec();
    v.extend((1..=5u64).map(|k| ((k * 7919 + 13) % n) as Elem));
    v
}

pub fn conjugation_invariance(c: &Ctx) -> Vec<String> {
    let mut out = Vec::new();
    let t = &c.ex.table;
    for (i, h) in c.lattice.classes.iter().enumerate() {
        let e = is_exponential_bits(&c.ex, &h.members);
        let w = is_weakly_exponential_bits(&c.ex, &h.members);
        for g in conjugators(&c.ex) {
            let hg = t.conjugate_bits(&h.members, g);
            if is_exponential_bits(&c.ex, &hg) != e || is_weakly_exponential_bits(&c.ex, &hg) != w {
                out.push(format!("{}: class {i} changes under conjugation", c.spec));
            }
        }
    }
    out
}

pub fn normal_implies_exponential(c: &Ctx) -> Vec<String> {
    c.ex.normal_subgroups()
        .iter()
        .filter(|n| !is_exponential_bits(&c.ex, &n.members))
        .map(|n| format!("{}: normal subgroup of order {} is not exponential", c.spec, n.order))
        .collect()
}

pub fn exp_trivial_implies_exponential(c: &Ctx) -> Vec<String> {
    let e = c.ex.exponent();
    c.lattice
        .classes
        .iter()
        .filter(|h| (c.ex.order() / h.order).is_multiple_of(e) && !is_exponential_bits(&c.ex, &h.members))
        .map(|h| format!("{}: exp-trivial subgroup of order {} is not exponential", c.spec, h.order))
        .collect()
}

/// Exponential implies weakly exponential, and the class-based weak test
/// agrees with the definition.
pub fn exponential_implies_weak(c: &Ctx) -> Vec<String> {
    let mut out = Vec::new();
    for (i, h) in c.lattice.classes.iter().enumerate() {
        let w = is_weakly_exponential_bits(&c.ex, &h.members);
        if w != wexp_oracle(&c.ex, &h.members) {
            out.push(format!("{}: class {i} weak test disagrees with the definition", c.spec));
        }
        if is_exponential_bits(&c.ex, &h.members) && !w {
            out.push(format!("{}: class {i} exponential but not weakly exponential", c.spec));
        }
    }
    out
}

/// For every exponential `H`, `exp(G/core(H))` divides `|G:H|`.
pub fn core_divisibility(c: &Ctx) -> Vec<String> {
    let mut out = Vec::new();
    for h in &c.lattice.classes {
        if !is_exponential_bits(&c.ex, &h.members) {
            continue;
        }
        let k = c.ex.core_of(h).unwrap();
        let qe = c.ex.quotient_exponent(&k).unwrap();
        let index = c.ex.order() / h.order;
        if !index.is_multiple_of(qe) {
            out.push(format!("{}: exp(G/K) = {qe} does not divide {index}", c.spec));
        }
    }
    out
}

/// Every subgroup class exponential exactly when the group is nilpotent.
pub fn nilpotent_iff_all_exponential(c: &Ctx) -> Vec<String> {
    let all = c.lattice.classes.iter().all(|h| is_exponential_bits(&c.ex, &h.members));
    if all == c.ex.is_nilpotent() {
        Vec::new()
    } else {
        vec![format!("{}: nilpotent = {}, all exponential = {all}", c.spec, c.ex.is_nilpotent())]
    }
}

pub fn exp_simple_routes_agree(c: &Ctx) -> Vec<String> {
    let d = is_exp_simple_definitional(&c.ex, &c.lattice).verdict;
    let q = is_exp_simple_quotient(&c.ex).unwrap().verdict;
    if d == q {
        Vec::new()
    } else {
        vec![format!("{}: definitional {d}, quotient {q}", c.spec)]
    }
}

/// Over solvable groups: exp-simple iff a p-group of exponent p.
pub fn solvable_exp_simple_shape(c: &Ctx) -> Vec<String> {
    if !c.ex.is_solvable() || c.ex.order() == 1 {
        return Vec::new();
    }
    let primes = wexp_core::structure::order_primes(c.group.order());
    let shape = primes.len() == 1 && c.ex.exponent() == primes[0];
    let simple = is_exp_simple_quotient(&c.ex).unwrap().verdict == Verdict::True;
    if shape == simple {
        Vec::new()
    } else {
        vec![format!("{}: exp-simple {simple}, elementary p-group {shape}", c.spec)]
    }
}

/// Exhaustive wexp-solvability against "all maximal classes weakly
/// exponential", both sides computed. The equivalence is only claimed when
/// every maximal subgroup is itself wexp-solvable (S6 has maximal S5s that
/// are not); otherwise only the forward direction is checked.
pub fn maximal_subgroup_criterion(c: &Ctx) -> Vec<String> {
    let caps = Caps::default();
    let whole = is_wexp_solvable_exhaustive(&c.ex, &caps, &[]).unwrap().verdict == Verdict::True;
    let mut max_weak = true;
    let mut max_solvable = true;
    for h in c.lattice.maximal_classes() {
        max_weak &= is_weakly_exponential_bits(&c.ex, &h.members);
        let gens = c.ex.table.permutations(&h.generators);
        let sub = PermGroup::new(gens, c.group.degree()).unwrap();
        max_solvable &= is_wexp_solvable(&sub, &caps, &[]).unwrap().verdict == Verdict::True;
    }
    let mut out = Vec::new();
    if whole && !max_weak {
        out.push(format!("{}: wexp-solvable but a maximal class is not weakly exponential", c.spec));
    }
    if max_solvable && whole != max_weak {
        out.push(format!("{}: wexp-solvable {whole}, all maximal classes weakly exponential {max_weak}", c.spec));
    }
    out
}

/// Whether every maximal class is a wexp-solvable group.
pub fn maximals_wexp_solvable(c: &Ctx) -> bool {
    let caps = Caps::default();
    c.lattice.maximal_classes().iter().all(|h| {
        let sub = PermGroup::new(c.ex.table.permutations(&h.generators), c.group.degree()).unwrap();
        is_wexp_solvable(&sub, &caps, &[]).unwrap().verdict == Verdict::True
    })
}

/// Proper quotients of wexp-solvable groups are wexp-solvable.
pub fn quotient_closure(c: &Ctx) -> Vec<String> {
    let caps = Caps::default();
    if is_wexp_solvable_exhaustive(&c.ex, &caps, &[]).unwrap().verdict != Verdict::True {
        return Vec::new();
    }
    let mut out = Vec::new();
    for n in c.ex.normal_subgroups() {
        if n.order == 1 || n.order == c.ex.order() {
            continue;
        }
        let q = c.ex.quotient_action(&n, &caps).unwrap();
        let v = is_wexp_solvable(&q, &caps, &[]).unwrap().verdict;
        if v != Verdict::True {
            out.push(format!("{}: quotient by order {} gives {v}", c.spec, n.order));
        }
    }
    out
}

pub fn class_equation(c: &Ctx) -> Vec<String> {
    let sum: u64 = c.ex.classes.sizes.iter().sum();
    if sum == c.ex.order() {
        Vec::new()
    } else {
        vec![format!("{}: class sizes sum to {sum}", c.spec)]
    }
}

/// Every false verdict over the lattice yields a certificate that the
/// independent checker accepts.
pub fn certificates_verify(c: &Ctx) -> (usize, Vec<String>) {
    use wexp_core::predicates::{is_exp_simple_quotient, is_exponential, is_weakly_exponential};
    use wexp_core::witness::verify_certificate;
    let caps = Caps::default();
    let mut reports = Vec::new();
    for h in &c.lattice.classes {
        reports.push(is_exponential(&c.ex, h).unwrap());
        reports.push(is_weakly_exponential(&c.ex, h).unwrap());
    }
    reports.push(is_exp_simple_definitional(&c.ex, &c.lattice));
    reports.push(is_exp_simple_quotient(&c.ex).unwrap());
    reports.push(is_wexp_solvable(&c.group, &caps, &[]).unwrap());
    let mut checked = 0;
    let mut out = Vec::new();
    for r in reports.iter().filter(|r| r.verdict == Verdict::False) {
        checked += 1;
        if let Err(e) = verify_certificate(&r.certificate) {
            out.push(format!("{}: {} certificate rejected: {e}", c.spec, r.predicate));
        }
    }
    (checked, out)
}
