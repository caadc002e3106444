//! Exponential, exp-trivial, exp-simple, weakly exponential, wexp-solvable
//! and minimal wexp-nonsolvable.
//!
//! Note the asymmetry: `x^m ∈ H` is not a class function of `x`, so
//! exponentiality is tested on every element, whereas "the class of `x^m`
//! meets `H`" is, so weak exponentiality is tested on class representatives.

use std::time::Instant;

use crate::bitset::Bitset;
use crate::caps::Caps;
use crate::error::Result;
use crate::group::PermGroup;
use crate::lattice::SubgroupLattice;
use crate::perm::Permutation;
use crate::report::{perms_json, PredicateReport, Verdict};
use crate::structure::Exhaustive;
use crate::table::{Elem, Subgroup};
use crate::witness::{find_wexp_witness, witness_for_bits, witness_record, Candidate, Certificate, Reason};

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1000.0
}

fn report(predicate: &str, verdict: Verdict, certificate: Certificate, start: Instant) -> PredicateReport {
    PredicateReport {
        predicate: predicate.to_string(),
        verdict,
        certificate,
        timing_ms: elapsed_ms(start),
    }
}

/// First element (largest order, then lowest index) with `x^{|G:H|} ∉ H`.
pub fn exponential_failure(ex: &Exhaustive, members: &Bitset) -> Option<Elem> {
    let t = &ex.table;
    let m = (t.order() / members.count()) as u128;
    let mut best: Option<Elem> = None;
    for x in 0..t.order() as Elem {
        if members.contains(t.pow(x, m) as usize) {
            continue;
        }
        if best.is_none_or(|b| t.element_order(x) > t.element_order(b)) {
            best = Some(x);
        }
    }
    best
}

pub fn is_exponential_bits(ex: &Exhaustive, members: &Bitset) -> bool {
    let t = &ex.table;
    let m = (t.order() / members.count()) as u128;
    (0..t.order() as Elem).all(|x| members.contains(t.pow(x, m) as usize))
}

pub fn is_exponential(ex: &Exhaustive, h: &Subgroup) -> Result<PredicateReport> {
    let start = Instant::now();
    ex.table.check_parent(h)?;
    let t = &ex.table;
    Ok(match exponential_failure(ex, &h.members) {
        None => report(
            "exponential",
            Verdict::True,
            Certificate::Exhaustion {
                checked: t.order() as u64,
                summary: format!("x^{} lies in H for every element x", t.order() as u64 / h.order),
            },
            start,
        ),
        Some(x) => {
            let m = t.order() as u128 / h.order as u128;
            let cand = Candidate {
                label: "H".to_string(),
                gens: t.permutations(&h.generators),
                point: None,
            };
            let w = witness_record(
                t.group(),
                &cand,
                h.order as u128,
                &t.perm(x),
                &t.perm(t.pow(x, m)),
                Reason::NotInSubgroup,
            );
            report("exponential", Verdict::False, Certificate::Witness(w), start)
        }
    })
}

pub fn is_exp_trivial(ex: &Exhaustive, h: &Subgroup) -> Result<bool> {
    ex.table.check_parent(h)?;
    let index = ex.order() / h.order;
    Ok(index == 1 || index.is_multiple_of(ex.exponent()))
}

/// `(class index, exp-trivial)` for every exponential class of the lattice.
pub fn exponential_subgroup_classes(ex: &Exhaustive, lattice: &SubgroupLattice) -> Vec<(usize, bool)> {
    lattice
        .classes
        .iter()
        .enumerate()
        .filter(|(_, h)| is_exponential_bits(ex, &h.members))
        .map(|(i, h)| (i, is_exp_trivial(ex, h).unwrap_or(false)))
        .collect()
}

pub fn is_exp_simple_definitional(ex: &Exhaustive, lattice: &SubgroupLattice) -> PredicateReport {
    let start = Instant::now();
    let t = &ex.table;
    let exps = exponential_subgroup_classes(ex, lattice);
    match exps.iter().find(|(_, trivial)| !trivial) {
        None => report(
            "exp-simple",
            Verdict::True,
            Certificate::Exhaustion {
                checked: lattice.len() as u64,
                summary: format!(
                    "{} of {} subgroup classes are exponential, all exp-trivial",
                    exps.len(),
                    lattice.len()
                ),
            },
            start,
        ),
        Some(&(i, _)) => {
            let h = &lattice.classes[i];
            report(
                "exp-simple",
                Verdict::False,
                Certificate::ExponentialNontrivial {
                    degree: t.degree(),
                    group_generators: perms_json(t.group().generators()),
                    subgroup_generators: perms_json(&t.permutations(&h.generators)),
                    index: (ex.order() / h.order) as u128,
                    exponent: ex.exponent(),
                },
                start,
            )
        }
    }
}

pub fn is_exp_simple_quotient(ex: &Exhaustive) -> Result<PredicateReport> {
    let start = Instant::now();
    let t = &ex.table;
    let e = ex.exponent();
    let normals = ex.normal_subgroups();
    let proper: Vec<&Subgroup> = normals.iter().filter(|n| n.order < ex.order()).collect();
    for n in &proper {
        let qe = ex.quotient_exponent(n)?;
        if qe != e {
            return Ok(report(
                "exp-simple",
                Verdict::False,
                Certificate::QuotientExponent {
                    degree: t.degree(),
                    group_generators: perms_json(t.group().generators()),
                    normal_generators: perms_json(&t.permutations(&n.generators)),
                    quotient_exponent: qe,
                    exponent: e,
                },
                start,
            ));
        }
    }
    Ok(report(
        "exp-simple",
        Verdict::True,
        Certificate::Exhaustion {
            checked: proper.len() as u64,
            summary: format!("all {} proper quotients have exponent {e}", proper.len()),
        },
        start,
    ))
}

/// Class-intersection test over element class representatives.
pub fn is_weakly_exponential_bits(ex: &Exhaustive, members: &Bitset) -> bool {
    let t = &ex.table;
    let m = (t.order() / members.count()) as u128;
    let mut hit = vec![false; ex.classes.len()];
    for x in members.iter() {
        hit[ex.classes.class_of(x as Elem)] = true;
    }
    ex.classes
        .rep_elems
        .iter()
        .all(|&x| hit[ex.classes.class_of(t.pow(x, m))])
}

fn subgroup_candidate(ex: &Exhaustive, h: &Subgroup, label: &str) -> Candidate {
    Candidate {
        label: label.to_string(),
        gens: ex.table.permutations(&h.generators),
        point: None,
    }
}

pub fn is_weakly_exponential(ex: &Exhaustive, h: &Subgroup) -> Result<PredicateReport> {
    let start = Instant::now();
    ex.table.check_parent(h)?;
    let cand = subgroup_candidate(ex, h, "H");
    Ok(match witness_for_bits(ex, &cand, &h.members) {
        None => report(
            "weakly-exponential",
            Verdict::True,
            Certificate::Exhaustion {
                checked: ex.classes.len() as u64,
                summary: "every element class power meets H".to_string(),
            },
            start,
        ),
        Some(w) => report("weakly-exponential", Verdict::False, Certificate::Witness(w), start),
    })
}

/// Exhaustive decision: witness search first (its certificates are the
/// nicest), then every subgroup class of the lattice.
pub fn is_wexp_solvable_exhaustive(
    ex: &Exhaustive,
    caps: &Caps,
    hints: &[(String, Vec<Permutation>)],
) -> Result<PredicateReport> {
    let start = Instant::now();
    if let Some(w) = find_wexp_witness(ex.group(), Some(ex), hints, caps)? {
        return Ok(report("wexp-solvable", Verdict::False, Certificate::Witness(w), start));
    }
    if ex.order() as u128 > caps.lattice_cap {
        return Ok(report(
            "wexp-solvable",
            Verdict::Unknown,
            Certificate::Shortcut {
                reason: format!(
                    "no witness found and the order {} exceeds the lattice cap {}",
                    ex.order(),
                    caps.lattice_cap
                ),
            },
            start,
        ));
    }
    let lattice = SubgroupLattice::build(ex, caps)?;
    for (i, h) in lattice.classes.iter().enumerate() {
        if !is_weakly_exponential_bits(ex, &h.members) {
            let cand = subgroup_candidate(ex, h, &format!("subgroup class {i} of order {}", h.order));
            let w = witness_for_bits(ex, &cand, &h.members).expect("failing class yields a witness");
            return Ok(report("wexp-solvable", Verdict::False, Certificate::Witness(w), start));
        }
    }
    Ok(report(
        "wexp-solvable",
        Verdict::True,
        Certificate::Exhaustion {
            checked: lattice.len() as u64,
            summary: format!(
                "all {} subgroup classes ({} subgroups) are weakly exponential",
                lattice.len(),
                lattice.subgroup_count()
            ),
        },
        start,
    ))
}

pub fn is_wexp_solvable(
    group: &PermGroup,
    caps: &Caps,
    hints: &[(String, Vec<Permutation>)],
) -> Result<PredicateReport> {
    let start = Instant::now();
    if group.order() <= caps.element_cap {
        let ex = Exhaustive::new(group, caps)?;
        let mut r = is_wexp_solvable_exhaustive(&ex, caps, hints)?;
        r.timing_ms = elapsed_ms(start);
        return Ok(r);
    }
    Ok(match find_wexp_witness(group, None, hints, caps)? {
        Some(w) => report("wexp-solvable", Verdict::False, Certificate::Witness(w), start),
        None => report(
            "wexp-solvable",
            Verdict::Unknown,
            Certificate::Shortcut {
                reason: format!(
                    "no witness found and the order {} exceeds the element cap {}",
                    group.order(),
                    caps.element_cap
                ),
            },
            start,
        ),
    })
}

pub fn is_minimal_wexp_nonsolvable(
    group: &PermGroup,
    caps: &Caps,
    hints: &[(String, Vec<Permutation>)],
) -> Result<PredicateReport> {
    const NAME: &str = "minimal-wexp-nonsolvable";
    let start = Instant::now();
    let base = is_wexp_solvable(group, caps, hints)?;
    match base.verdict {
        Verdict::True => {
            return Ok(report(
                NAME,
                Verdict::False,
                Certificate::Shortcut {
                    reason: "the group is wexp-solvable".to_string(),
                },
                start,
            ))
        }
        Verdict::Unknown => return Ok(report(NAME, Verdict::Unknown, base.certificate, start)),
        Verdict::False => {}
    }
    if group.order() > caps.element_cap {
        return Ok(report(
            NAME,
            Verdict::Unknown,
            Certificate::Shortcut {
                reason: "not wexp-solvable, but normal subgroups need exhaustive mode".to_string(),
            },
            start,
        ));
    }
    let ex = Exhaustive::new(group, caps)?;
    let normals = ex.normal_subgroups();
    let proper: Vec<&Subgroup> = normals
        .iter()
        .filter(|n| n.order > 1 && n.order < ex.order())
        .collect();
    let mut unknown = false;
    for n in &proper {
        let q = ex.quotient_action(n, caps)?;
        let r = is_wexp_solvable(&q, caps, &[])?;
        match r.verdict {
            Verdict::True => {}
            Verdict::Unknown => unknown = true,
            Verdict::False => {
                let Certificate::Witness(w) = r.certificate else {
                    unreachable!("false wexp verdicts carry witnesses")
                };
                return Ok(report(
                    NAME,
                    Verdict::False,
                    Certificate::QuotientWitness {
                        degree: group.degree(),
                        group_generators: perms_json(group.generators()),
                        normal_generators: perms_json(&ex.table.permutations(&n.generators)),
                        witness: w,
                    },
                    start,
                ));
            }
        }
    }
    if unknown {
        return Ok(report(
            NAME,
            Verdict::Unknown,
            Certificate::Shortcut {
                reason: "some proper quotient could not be decided".to_string(),
            },
            start,
        ));
    }
    Ok(report(
        NAME,
        Verdict::True,
        Certificate::Exhaustion {
            checked: proper.len() as u64,
            summary: format!(
                "not wexp-solvable; all {} proper nontrivial quotients are wexp-solvable",
                proper.len()
            ),
        },
        start,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{alternating, cyclic, dihedral, symmetric};
    use crate::witness::verify_certificate;

    fn ex(g: &PermGroup) -> Exhaustive {
        Exhaustive::new(g, &Caps::default()).unwrap()
    }

    #[test]
    fn s3_reflection_subgroup() {
        let g = symmetric(3).unwrap();
        let e = ex(&g);
        let h = e
            .table
            .subgroup_from_permutations(&[Permutation::parse("(2 3)", 3).unwrap()])
            .unwrap();
        let r = is_exponential(&e, &h).unwrap();
        assert_eq!(r.verdict, Verdict::False);
        verify_certificate(&r.certificate).unwrap();
        assert_eq!(is_weakly_exponential(&e, &h).unwrap().verdict, Verdict::True);
        assert_eq!(is_exponential(&e, &e.table.trivial()).unwrap().verdict, Verdict::True);
    }

    #[test]
    fn exp_simple_routes() {
        let c = Caps::default();
        for (g, expected) in [
            (alternating(5).unwrap(), true),
            (symmetric(3).unwrap(), false),
            (cyclic(4).unwrap(), false),
            (symmetric(4).unwrap(), false),
        ] {
            let e = ex(&g);
            let l = SubgroupLattice::build(&e, &c).unwrap();
            let d = is_exp_simple_definitional(&e, &l);
            let q = is_exp_simple_quotient(&e).unwrap();
            assert_eq!(d.verdict, Verdict::from_bool(expected));
            assert_eq!(q.verdict, Verdict::from_bool(expected));
            verify_certificate(&d.certificate).unwrap();
            verify_certificate(&q.certificate).unwrap();
        }
    }

    #[test]
    fn d4_is_all_exponential() {
        let g = dihedral(4).unwrap();
        let e = ex(&g);
        let l = SubgroupLattice::build(&e, &Caps::default()).unwrap();
        assert_eq!(exponential_subgroup_classes(&e, &l).len(), l.len());
    }

    #[test]
    fn small_wexp_verdicts() {
        let c = Caps::default();
        assert_eq!(is_wexp_solvable(&alternating(5).unwrap(), &c, &[]).unwrap().verdict, Verdict::True);
        let s5 = symmetric(5).unwrap();
        let r = is_wexp_solvable(&s5, &c, &[]).unwrap();
        assert_eq!(r.verdict, Verdict::False);
        verify_certificate(&r.certificate).unwrap();
        assert_eq!(is_minimal_wexp_nonsolvable(&s5, &c, &[]).unwrap().verdict, Verdict::True);
    }
}
