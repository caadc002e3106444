//! Finite fields `GF(p^d)` in polynomial representation.
//!
//! An element is a polynomial of degree `< d` over `GF(p)`, encoded as the
//! integer `c_0 + c_1 p + … + c_{d-1} p^{d-1}`. The modulus is the
//! lexicographically least monic irreducible of degree `d`, comparing
//! coefficient tuples from the constant term up.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

impl FieldElement {
    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub(crate) fn from_code(code: u32) -> Self {
        FieldElement(code)
    }
}

#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u64,
    d: u32,
    q: u64,
    /// Monic modulus, constant term first, length `d + 1`.
    modulus: Vec<u64>,
    primitive: FieldElement,
    /// `exp[k] = α^k` for `0 ≤ k < q - 1`.
    exp: Vec<u32>,
    /// `log[x]` for nonzero `x`; `log[0]` is unused.
    log: Vec<u32>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut f = 3;
    while f * f <= n {
        if n.is_multiple_of(f) {
            return false;
        }
        f += 2;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= n {
        if n.is_multiple_of(f) {
            out.push(f);
            while n.is_multiple_of(f) {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits `q = p^d`, or fails when `q` is not a prime power.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    let fs = prime_factors(q);
    if fs.len() != 1 {
        return Err(Error::NotPrimePower(q));
    }
    let p = fs[0];
    let mut d = 0;
    let mut r = q;
    while r > 1 {
        r /= p;
        d += 1;
    }
    Ok((p, d))
}

impl FiniteField {
    pub fn new(p: u64, d: u32, bound: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if d == 0 {
            return Err(Error::invalid("field degree must be positive"));
        }
        let q = p
            .checked_pow(d)
            .filter(|&q| q <= bound)
            .ok_or_else(|| Error::OverCap {
                what: "field size",
                size: (p as u128).saturating_pow(d),
                cap: bound as u128,
            })?;
        let modulus = least_monic_irreducible(p, d as usize);
        let mut field = FiniteField {
            p,
            d,
            q,
            modulus,
            primitive: FieldElement(0),
            exp: Vec::new(),
            log: Vec::new(),
        };
        field.primitive = field.find_primitive();
        field.build_tables();
        Ok(field)
    }

    /// Builds `GF(q)` for a prime power `q`.
    pub fn of_order(q: u64, bound: u64) -> Result<Self> {
        let (p, d) = prime_power(q)?;
        Self::new(p, d, bound)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn size(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn primitive_element(&self) -> FieldElement {
        self.primitive
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// Elements in code order `0, 1, …, q-1`.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q as u32).map(FieldElement)
    }

    pub fn element(&self, code: u32) -> Result<FieldElement> {
        if (code as u64) < self.q {
            Ok(FieldElement(code))
        } else {
            Err(Error::invalid(format!("{code} is not a field element code")))
        }
    }

    pub fn from_coefficients(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.d as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::invalid("coefficients out of range"));
        }
        Ok(FieldElement(self.encode(coeffs)))
    }

    pub fn coefficients(&self, a: FieldElement) -> Vec<u64> {
        self.decode(a.0)
    }

    fn encode(&self, coeffs: &[u64]) -> u32 {
        coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.p + c) as u32
    }

    fn decode(&self, mut code: u32) -> Vec<u64> {
        let mut out = vec![0u64; self.d as usize];
        for c in out.iter_mut() {
            *c = code as u64 % self.p;
            code /= self.p as u32;
        }
        out
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.d == 1 {
            return FieldElement(((a.0 as u64 + b.0 as u64) % self.p) as u32);
        }
        let x = self.decode(a.0);
        let y = self.decode(b.0);
        let s: Vec<u64> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        FieldElement(self.encode(&s))
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let x = self.decode(a.0);
        let s: Vec<u64> = x.iter().map(|u| (self.p - u) % self.p).collect();
        FieldElement(self.encode(&s))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    /// Polynomial product reduced modulo the modulus and `p`.
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let x = self.decode(a.0);
        let y = self.decode(b.0);
        let prod = poly_mul(&x, &y, self.p);
        let r = poly_rem(&prod, &self.modulus, self.p);
        let mut coeffs = r;
        coeffs.resize(self.d as usize, 0);
        FieldElement(self.encode(&coeffs))
    }

    /// Product through the discrete-log tables; agrees with [`FiniteField::mul`].
    pub fn mul_by_log(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement(0);
        }
        let n = self.q - 1;
        let k = (self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64) % n;
        FieldElement(self.exp[k as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.0 == 0 {
            return None;
        }
        let n = self.q - 1;
        let k = (n - self.log[a.0 as usize] as u64) % n;
        Some(FieldElement(self.exp[k as usize]))
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `α^k` for the stored primitive element.
    pub fn alpha_pow(&self, k: u64) -> FieldElement {
        FieldElement(self.exp[(k % (self.q - 1)) as usize])
    }

    /// Discrete logarithm base α of a nonzero element.
    pub fn log(&self, a: FieldElement) -> Option<u64> {
        (a.0 != 0).then(|| self.log[a.0 as usize] as u64)
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: FieldElement) -> Option<u64> {
        if a.0 == 0 {
            return None;
        }
        let n = self.q - 1;
        let mut ord = n;
        for r in prime_factors(n) {
            while ord.is_multiple_of(r) && self.pow(a, ord / r) == self.one() {
                ord /= r;
            }
        }
        Some(ord)
    }

    fn find_primitive(&self) -> FieldElement {
        let n = self.q - 1;
        if n == 1 {
            return FieldElement(1);
        }
        let factors = prime_factors(n);
        (1..self.q as u32)
            .map(FieldElement)
            .find(|&a| factors.iter().all(|&r| self.pow(a, n / r) != self.one()))
            .expect("multiplicative group of a finite field is cyclic")
    }

    fn build_tables(&mut self) {
        let n = (self.q - 1) as usize;
        self.exp = Vec::with_capacity(n);
        self.log = vec![0; self.q as usize];
        let mut x = self.one();
        for k in 0..n {
            self.exp.push(x.0);
            self.log[x.0 as usize] = k as u32;
            x = self.mul(x, self.primitive);
        }
    }
}

fn poly_trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    poly_trim(&mut out);
    out
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            let sub = lead * c % p;
            r[i + shift] = (r[i + shift] + p - sub) % p;
        }
        poly_trim(&mut r);
    }
    r
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-`p`
/// digits of `t`, with the constant term as the most significant digit.
fn monic_from_lex_index(t: u64, deg: usize, p: u64) -> Vec<u64> {
    let mut coeffs = vec![0u64; deg + 1];
    let mut t = t;
    for i in (0..deg).rev() {
        coeffs[i] = t % p;
        t /= p;
    }
    coeffs[deg] = 1;
    coeffs
}

/// Irreducibility by trial division with every monic polynomial of degree ≤ deg/2.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    for dd in 1..=deg / 2 {
        let count = p.pow(dd as u32);
        for t in 0..count {
            let g = monic_from_lex_index(t, dd, p);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// All monic irreducibles of degree `d` in lexicographic order.
pub fn monic_irreducibles(p: u64, d: usize) -> Vec<Vec<u64>> {
    (0..p.pow(d as u32))
        .map(|t| monic_from_lex_index(t, d, p))
        .filter(|f| is_irreducible(f, p))
        .collect()
}

fn least_monic_irreducible(p: u64, d: usize) -> Vec<u64> {
    (0..p.pow(d as u32))
        .map(|t| monic_from_lex_index(t, d, p))
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

impl FiniteField {
    /// Builds `GF(p^d)` over a caller-chosen monic irreducible modulus.
    pub fn with_modulus(p: u64, modulus: Vec<u64>, bound: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let d = modulus.len().saturating_sub(1) as u32;
        if d == 0 || modulus.last() != Some(&1) || !is_irreducible(&modulus, p) {
            return Err(Error::invalid("modulus must be monic irreducible"));
        }
        let q = p.pow(d);
        if q > bound {
            return Err(Error::OverCap {
                what: "field size",
                size: q as u128,
                cap: bound as u128,
            });
        }
        let mut field = FiniteField {
            p,
            d,
            q,
            modulus,
            primitive: FieldElement(0),
            exp: Vec::new(),
            log: Vec::new(),
        };
        field.primitive = field.find_primitive();
        field.build_tables();
        Ok(field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BOUND: u64 = 1 << 20;

    #[test]
    fn prime_field() {
        let f = FiniteField::new(7, 1, BOUND).unwrap();
        assert_eq!(f.size(), 7);
        assert_eq!(f.modulus(), &[0, 1]);
        let a = f.element(3).unwrap();
        let b = f.element(5).unwrap();
        assert_eq!(f.mul(a, b).code(), 1);
        assert_eq!(f.add(a, b).code(), 1);
        assert_eq!(f.primitive_element().code(), 3);
    }

    #[test]
    fn gf4_modulus_and_product() {
        let f = FiniteField::new(2, 2, BOUND).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let x = f.from_coefficients(&[0, 1]).unwrap();
        assert_eq!(f.coefficients(f.mul(x, x)), vec![1, 1]);
    }

    #[test]
    fn gf9_primitive_has_order_8() {
        let f = FiniteField::new(3, 2, BOUND).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
        let alpha = f.primitive_element();
        assert_eq!(f.multiplicative_order(alpha), Some(8));
        // brute force: alpha^k != 1 for 0 < k < 8
        let mut x = alpha;
        for _ in 1..8 {
            assert_ne!(x, f.one());
            x = f.mul(x, alpha);
        }
        assert_eq!(x, f.one());
        assert_eq!(monic_irreducibles(3, 2).len(), 3);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FiniteField::new(6, 1, BOUND).unwrap_err(), Error::NotPrime(6));
        assert!(FiniteField::new(2, 21, BOUND).unwrap_err().is_over_cap());
        assert!(FiniteField::new(2, 0, BOUND).is_err());
        assert_eq!(prime_power(12).unwrap_err(), Error::NotPrimePower(12));
        assert_eq!(prime_power(343).unwrap(), (7, 3));
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 49] {
            let f = FiniteField::of_order(q, BOUND).unwrap();
            let els: Vec<_> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.mul(a, f.one()), a);
                assert_eq!(f.add(a, f.zero()), a);
                assert_eq!(f.add(a, f.neg(a)), f.zero());
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
                }
                for &b in &els {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.mul(a, b), f.mul_by_log(a, b));
                    assert_eq!(f.add(a, b), f.add(b, a));
                }
            }
            {
                for &a in &els {
                    for &b in &els {
                        for &c in &els {
                            assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                            assert_eq!(
                                f.mul(a, f.add(b, c)),
                                f.add(f.mul(a, b), f.mul(a, c))
                            );
                            assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        }
                    }
                }
            }
        }
    }
}
