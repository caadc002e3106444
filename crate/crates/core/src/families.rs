//! Constructors for the group families used throughout: cyclic, dihedral,
//! symmetric, alternating, direct products, `AGL(n,p)`, `PSL(2,q)`, and
//! groups read from generator files.

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::field::{prime_power, FieldElement, FiniteField};
use crate::group::PermGroup;
use crate::perm::Permutation;

fn check_degree(degree: usize, caps: &Caps) -> Result<()> {
    if degree > caps.degree_bound {
        return Err(Error::DegreeBound {
            degree,
            bound: caps.degree_bound,
        });
    }
    Ok(())
}

fn cycle(degree: usize, points: impl IntoIterator<Item = usize>) -> Permutation {
    let pts: Vec<usize> = points.into_iter().collect();
    Permutation::from_cycles(degree, &[&pts]).expect("well-formed cycle")
}

fn factorial(n: u128) -> u128 {
    (1..=n).product()
}

fn expect_order(group: &PermGroup, expected: u128, what: &str) -> Result<()> {
    if group.order() != expected {
        return Err(Error::ConstructionCheck(format!(
            "{what}: BSGS order {} differs from the closed form {expected}",
            group.order()
        )));
    }
    Ok(())
}

/// `S_n = ⟨(1 2), (1 2 … n)⟩` on `n` points.
pub fn symmetric(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::invalid("S_n needs n >= 1"));
    }
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(cycle(n, [1, 2]));
    }
    if n >= 3 {
        gens.push(cycle(n, 1..=n));
    }
    let g = PermGroup::new(gens, n)?;
    expect_order(&g, factorial(n as u128), "symmetric group")?;
    Ok(g)
}

/// `A_n = ⟨(1 2 k) : 3 ≤ k ≤ n⟩`.
pub fn alternating(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::invalid("A_n needs n >= 1"));
    }
    let gens = (3..=n).map(|k| cycle(n, [1, 2, k])).collect();
    let g = PermGroup::new(gens, n)?;
    let expected = if n < 2 { 1 } else { factorial(n as u128) / 2 };
    expect_order(&g, expected, "alternating group")?;
    Ok(g)
}

/// `C_n = ⟨(1 2 … n)⟩`.
pub fn cyclic(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::invalid("C_n needs n >= 1"));
    }
    let gens = if n >= 2 { vec![cycle(n, 1..=n)] } else { vec![] };
    let g = PermGroup::new(gens, n)?;
    expect_order(&g, n as u128, "cyclic group")?;
    Ok(g)
}

/// Dihedral group of order `2n`. For `n ≥ 3` it acts on the `n` vertices
/// of a polygon; `D_1 = C_2` on two points and `D_2 = C_2 × C_2` acting
/// regularly on four points.
pub fn dihedral(n: usize) -> Result<PermGroup> {
    let g = match n {
        0 => return Err(Error::invalid("D_n needs n >= 1")),
        1 => PermGroup::new(vec![cycle(2, [1, 2])], 2)?,
        2 => PermGroup::new(
            vec![
                Permutation::parse("(1 2)(3 4)", 4)?,
                Permutation::parse("(1 3)(2 4)", 4)?,
            ],
            4,
        )?,
        _ => {
            let rotation = cycle(n, 1..=n);
            let mut images: Vec<u32> = vec![0; n];
            for (i, img) in images.iter_mut().enumerate() {
                *img = ((n - i) % n) as u32;
            }
            let reflection = Permutation::from_images(images)?;
            PermGroup::new(vec![rotation, reflection], n)?
        }
    };
    expect_order(&g, 2 * n as u128, "dihedral group")?;
    Ok(g)
}

/// `A × B` acting on the disjoint union of the point sets (`A` first).
pub fn direct_product(a: &PermGroup, b: &PermGroup, caps: &Caps) -> Result<PermGroup> {
    let degree = a.degree() + b.degree();
    check_degree(degree, caps)?;
    let mut gens: Vec<Permutation> = a
        .generators()
        .iter()
        .map(|g| g.embed(degree, 0))
        .collect();
    gens.extend(b.generators().iter().map(|g| g.embed(degree, a.degree())));
    let g = PermGroup::new(gens, degree)?;
    let expected = a
        .order()
        .checked_mul(b.order())
        .ok_or(Error::OrderOverflow)?;
    expect_order(&g, expected, "direct product")?;
    Ok(g)
}

/// `AGL(n, p)` acting on the `p^n` vectors of `GF(p)^n`.
///
/// A vector `v` is point `1 + Σ v_i p^i`. The linear part is generated by
/// the transvection `E_12(1)` and multiplication by a primitive element of
/// `GF(p^n)` (a Singer cycle); the closed-form order is asserted.
pub fn affine_general_linear(n: u32, p: u64, caps: &Caps) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::invalid("AGL(n,p) needs n >= 1"));
    }
    let field = FiniteField::new(p, n, caps.field_bound)?;
    let size = field.size() as usize;
    check_degree(size, caps)?;
    let mut gens = Vec::new();
    // translations by the standard basis vectors
    for i in 0..n {
        let e = p.pow(i);
        let images = (0..size as u64)
            .map(|code| {
                let digit = (code / e) % p;
                let shifted = code - digit * e + ((digit + 1) % p) * e;
                shifted as u32
            })
            .collect();
        gens.push(Permutation::from_images(images)?);
    }
    let alpha = field.primitive_element();
    let singer = (0..size as u32)
        .map(|code| field.mul(FieldElement::from_code(code), alpha).code())
        .collect();
    gens.push(Permutation::from_images(singer)?);
    if n >= 2 {
        // row vector times E_12(1): v_2 += v_1
        let images = (0..size as u64)
            .map(|code| {
                let v1 = code % p;
                let v2 = (code / p) % p;
                let new2 = (v2 + v1) % p;
                (code - v2 * p + new2 * p) as u32
            })
            .collect();
        gens.push(Permutation::from_images(images)?);
    }
    let g = PermGroup::new(gens, size)?;
    let pn = size as u128;
    let mut expected = pn;
    for i in 0..n {
        expected *= pn - (p as u128).pow(i);
    }
    expect_order(&g, expected, "AGL(n,p)")?;
    Ok(g)
}

/// `PSL(2, q)` together with the field and projective-line labelling used
/// to build it.
#[derive(Clone, Debug)]
pub struct Psl2 {
    pub q: u64,
    pub field: FiniteField,
    pub group: PermGroup,
}

/// Labels of the projective line: index 0 is `∞`, index 1 is `0`, and
/// index `2 + k` is `α^k`.
impl Psl2 {
    pub fn new(q: u64, caps: &Caps) -> Result<Self> {
        let field = FiniteField::of_order(q, caps.field_bound)?;
        Self::over_field(field, caps)
    }

    /// Builds the group over an explicitly chosen field model.
    pub fn over_field(field: FiniteField, caps: &Caps) -> Result<Self> {
        let q = field.size();
        if q < 2 {
            return Err(Error::invalid("PSL(2,q) needs q >= 2"));
        }
        check_degree(q as usize + 1, caps)?;
        let one = field.one();
        let zero = field.zero();
        let alpha = field.primitive_element();
        let alpha_inv = field.inv(alpha).unwrap();
        let mut gens = vec![
            // [[1,1],[0,1]]: t -> t / (t + 1)
            psl_matrix_action(&field, [one, one, zero, one]),
            // [[1,0],[1,1]]: t -> t + 1
            psl_matrix_action(&field, [one, zero, one, one]),
        ];
        let torus = psl_matrix_action(&field, [alpha, zero, zero, alpha_inv]);
        if !torus.is_identity() {
            gens.push(torus);
        }
        let group = PermGroup::new(gens, q as usize + 1)?;
        let e = if q % 2 == 1 { 2 } else { 1 };
        let q128 = q as u128;
        expect_order(&group, q128 * (q128 * q128 - 1) / e, "PSL(2,q)")?;
        Ok(Psl2 { q, field, group })
    }

    pub fn point_of(&self, t: Option<FieldElement>) -> usize {
        point_index(&self.field, t) + 1
    }

    /// Permutation induced by a matrix of determinant 1 (entries row-major).
    pub fn matrix(&self, m: [FieldElement; 4]) -> Result<Permutation> {
        let f = &self.field;
        let det = f.sub(f.mul(m[0], m[3]), f.mul(m[1], m[2]));
        if det != f.one() {
            return Err(Error::invalid("matrix does not have determinant 1"));
        }
        Ok(psl_matrix_action(f, m))
    }

    /// Generator sets of subgroups coming from subfields and tori:
    /// the split torus and its dihedral normaliser, and for each proper
    /// subfield `GF(q0)` the subgroup `PSL(2, q0)` (plus `PGL(2, q0)` when
    /// `q = q0²` with `q0` odd).
    pub fn structured_subgroups(&self) -> Vec<(String, Vec<Permutation>)> {
        let f = &self.field;
        let q = self.q;
        let (p, d) = (f.characteristic(), f.degree());
        let one = f.one();
        let zero = f.zero();
        let mut out = Vec::new();
        let e = if q % 2 == 1 { 2 } else { 1 };
        let alpha = f.primitive_element();
        let alpha_inv = f.inv(alpha).unwrap();
        let torus = psl_matrix_action(f, [alpha, zero, zero, alpha_inv]);
        out.push((format!("C{}", (q - 1) / e), vec![torus.clone()]));
        let w = psl_matrix_action(f, [zero, one, f.neg(one), zero]);
        out.push((format!("D{}", (q - 1) / e), vec![torus, w]));
        for d0 in (1..d).filter(|d0| d % d0 == 0) {
            let q0 = p.pow(d0);
            let beta = f.alpha_pow((q - 1) / (q0 - 1));
            let beta_inv = f.inv(beta).unwrap();
            let mut gens = vec![
                psl_matrix_action(f, [one, one, zero, one]),
                psl_matrix_action(f, [one, zero, one, one]),
            ];
            let sub_torus = psl_matrix_action(f, [beta, zero, zero, beta_inv]);
            if !sub_torus.is_identity() {
                gens.push(sub_torus);
            }
            out.push((format!("PSL(2,{q0})"), gens.clone()));
            if d == 2 * d0 && q0 % 2 == 1 {
                // t -> beta t comes from diag(δ, δ⁻¹) with δ² = beta in GF(q)
                let delta = f.alpha_pow((q - 1) / (q0 - 1) / 2);
                let delta_inv = f.inv(delta).unwrap();
                gens.push(psl_matrix_action(f, [delta, zero, zero, delta_inv]));
                out.push((format!("PGL(2,{q0})"), gens));
            }
        }
        out
    }
}

fn point_index(field: &FiniteField, t: Option<FieldElement>) -> usize {
    match t {
        None => 0,
        Some(x) if x.is_zero() => 1,
        Some(x) => 2 + field.log(x).unwrap() as usize,
    }
}

/// Row-vector action `(t, 1) ↦ (t, 1)·M` on the projective line, so that
/// matrix products act left to right like permutation products.
fn psl_matrix_action(field: &FiniteField, m: [FieldElement; 4]) -> Permutation {
    let [a, b, c, d] = m;
    let q = field.size() as usize;
    let mut images = vec![0u32; q + 1];
    // ∞ = (1, 0) ↦ (a, b)
    images[0] = if b.is_zero() {
        0
    } else {
        point_index(field, Some(field.mul(a, field.inv(b).unwrap()))) as u32
    };
    for t in field.elements() {
        let num = field.add(field.mul(a, t), c);
        let den = field.add(field.mul(b, t), d);
        let img = if den.is_zero() {
            None
        } else {
            Some(field.mul(num, field.inv(den).unwrap()))
        };
        images[point_index(field, Some(t))] = point_index(field, img) as u32;
    }
    Permutation::from_images(images).expect("invertible matrix acts bijectively")
}

/// `PSL(2, q)` as a permutation group on `q + 1` points.
pub fn psl2(q: u64, caps: &Caps) -> Result<PermGroup> {
    prime_power(q)?;
    Ok(Psl2::new(q, caps)?.group)
}

/// Parses a group file: first significant line `degree: n`, then one
/// generator per nonempty line in cycle notation. `#` starts a comment.
pub fn ingest_group(source: &str, caps: &Caps) -> Result<PermGroup> {
    let mut degree: Option<usize> = None;
    let mut gens = Vec::new();
    for (lineno, raw) in source.split('\n').enumerate() {
        let line_no = lineno + 1;
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        let content = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        if content.trim().is_empty() {
            continue;
        }
        let lead = content.len() - content.trim_start().len();
        match degree {
            None => {
                let body = content.trim();
                let rest = body.strip_prefix("degree:").ok_or_else(|| {
                    Error::parse(line_no, lead + 1, "expected 'degree: n' header")
                })?;
                let n: usize = rest.trim().parse().map_err(|_| {
                    Error::parse(line_no, lead + 8, "degree is not a positive integer")
                })?;
                if n == 0 {
                    return Err(Error::parse(line_no, lead + 8, "degree must be positive"));
                }
                check_degree(n, caps)?;
                degree = Some(n);
            }
            Some(n) => {
                let p = Permutation::parse(content, n).map_err(|e| match e {
                    Error::Parse { column, message, .. } => Error::Parse {
                        line: line_no,
                        column,
                        message,
                    },
                    other => other,
                })?;
                gens.push(p);
            }
        }
    }
    let n = degree.ok_or_else(|| Error::parse(1, 1, "missing 'degree: n' header"))?;
    PermGroup::new(gens, n)
}

/// Serialises a group in the file format read by [`ingest_group`].
pub fn group_file(group: &PermGroup) -> String {
    let mut out = format!("degree: {}\n", group.degree());
    for g in group.generators() {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn small_families() {
        assert_eq!(symmetric(5).unwrap().order(), 120);
        assert_eq!(alternating(6).unwrap().order(), 360);
        assert_eq!(cyclic(7).unwrap().order(), 7);
        assert_eq!(dihedral(4).unwrap().order(), 8);
        assert_eq!(dihedral(1).unwrap().order(), 2);
        assert_eq!(dihedral(2).unwrap().order(), 4);
        assert_eq!(symmetric(1).unwrap().order(), 1);
        assert_eq!(alternating(2).unwrap().order(), 1);
        assert!(symmetric(0).is_err());
    }

    #[test]
    fn products() {
        let c2 = cyclic(2).unwrap();
        let a5 = alternating(5).unwrap();
        assert_eq!(direct_product(&c2, &c2, &caps()).unwrap().order(), 4);
        assert_eq!(direct_product(&a5, &a5, &caps()).unwrap().order(), 3600);
        let s3 = symmetric(3).unwrap();
        assert_eq!(direct_product(&s3, &c2, &caps()).unwrap().order(), 12);
        let tight = Caps {
            degree_bound: 8,
            ..Caps::default()
        };
        assert!(direct_product(&a5, &a5, &tight).is_err());
    }

    #[test]
    fn affine_groups() {
        assert_eq!(affine_general_linear(1, 5, &caps()).unwrap().order(), 20);
        assert_eq!(affine_general_linear(2, 2, &caps()).unwrap().order(), 24);
        assert_eq!(affine_general_linear(2, 3, &caps()).unwrap().order(), 432);
        assert_eq!(
            affine_general_linear(3, 2, &caps()).unwrap().order(),
            8 * 7 * 6 * 4
        );
    }

    #[test]
    fn psl_orders() {
        let g = psl2(7, &caps()).unwrap();
        assert_eq!((g.degree(), g.order()), (8, 168));
        assert_eq!(psl2(4, &caps()).unwrap().order(), 60);
        let g = psl2(11, &caps()).unwrap();
        assert_eq!((g.degree(), g.order()), (12, 660));
        assert_eq!(psl2(2, &caps()).unwrap().order(), 6);
        assert_eq!(psl2(3, &caps()).unwrap().order(), 12);
        assert!(psl2(6, &caps()).is_err());
        for q in [5u64, 8, 9, 13, 16, 17, 25, 27, 32, 49] {
            let g = psl2(q, &caps()).unwrap();
            assert!(g.is_transitive());
            let e = if q % 2 == 1 { 2 } else { 1 };
            let q = q as u128;
            let stab = PermGroup::with_base_prefix(g.generators().to_vec(), g.degree(), &[1])
                .unwrap();
            let stab = PermGroup::new(stab.stabilizer_generators(1), g.degree()).unwrap();
            assert_eq!(stab.order(), q * (q - 1) / e);
            assert_eq!(g.order() / stab.order(), q + 1);
        }
    }

    #[test]
    fn structured_subgroups_have_expected_orders() {
        let psl = Psl2::new(25, &caps()).unwrap();
        let subs = psl.structured_subgroups();
        let order = |label: &str| {
            let (_, gens) = subs.iter().find(|(l, _)| l == label).unwrap();
            for g in gens {
                assert!(psl.group.contains(g).unwrap());
            }
            PermGroup::new(gens.clone(), psl.group.degree()).unwrap().order()
        };
        assert_eq!(order("C12"), 12);
        assert_eq!(order("D12"), 24);
        assert_eq!(order("PSL(2,5)"), 60);
        assert_eq!(order("PGL(2,5)"), 120);
        let psl = Psl2::new(27, &caps()).unwrap();
        let (_, gens) = psl
            .structured_subgroups()
            .into_iter()
            .find(|(l, _)| l == "PSL(2,3)")
            .unwrap();
        assert_eq!(PermGroup::new(gens, 28).unwrap().order(), 12);
    }

    #[test]
    fn group_files() {
        let g = ingest_group("degree: 3\n(1 2)\n(1 2 3)\n", &caps()).unwrap();
        assert_eq!(g.order(), 6);
        let g = ingest_group("# comment\r\ndegree: 4\r\n\r\n", &caps()).unwrap();
        assert_eq!((g.degree(), g.order()), (4, 1));
        let err = ingest_group("degree: 5\n(1 2)\n(1 9)\n", &caps()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, column: 4, .. }), "{err}");
        assert!(ingest_group("(1 2)\n", &caps()).is_err());
        assert!(ingest_group("degree: 5000\n", &caps()).is_err());
        let s5 = symmetric(5).unwrap();
        let round = ingest_group(&group_file(&s5), &caps()).unwrap();
        assert_eq!(round.order(), 120);
    }
}
