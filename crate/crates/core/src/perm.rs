//! Permutations of `{1..n}`.
//!
//! Points are 1-based at every public boundary (parsing, display, `apply`);
//! the image table is stored 0-based. Products read left to right: `a * b`
//! means "apply `a`, then `b`", so `i^(ab) = (i^a)^b`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u32]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from a 0-based image table, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            let i = img as usize;
            if i >= n {
                return Err(Error::PointOutOfRange {
                    point: i + 1,
                    degree: n,
                });
            }
            if seen[i] {
                return Err(Error::invalid(format!("point {} is hit twice", i + 1)));
            }
            seen[i] = true;
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    /// Builds a permutation from a 1-based image list (`images[i-1]` is the image of `i`).
    pub fn from_images_1based(images: &[u32]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::invalid("point 0 in a 1-based image list"));
        }
        Self::from_images(images.iter().map(|&x| x - 1).collect())
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Permutation {
            images: images.into_boxed_slice(),
        }
    }

    /// Builds a permutation from disjoint cycles given with 1-based points.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p == 0 || p > degree {
                    return Err(Error::PointOutOfRange { point: p, degree });
                }
                if used[p - 1] {
                    return Err(Error::invalid(format!("point {p} repeated")));
                }
                used[p - 1] = true;
                let next = cycle[(k + 1) % cycle.len()];
                if next == 0 || next > degree {
                    return Err(Error::PointOutOfRange { point: next, degree });
                }
                images[p - 1] = (next - 1) as u32;
            }
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    /// Parses cycle notation such as `"(1 2 3)(4 5)"` or the token `"id"`.
    ///
    /// Points inside a cycle are separated by whitespace or commas. Parse
    /// errors report line 1 and a 1-based column.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        parse_cycles(text, degree).map_err(|(column, message)| Error::parse(1, column, message))
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 0-based image table.
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn images_1based(&self) -> Vec<u32> {
        self.images.iter().map(|&x| x + 1).collect()
    }

    /// Image of a 1-based point.
    pub fn apply(&self, point: usize) -> usize {
        self.images[point - 1] as usize + 1
    }

    #[inline]
    pub(crate) fn image0(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// "Apply `self`, then `other`."
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.mul(other))
    }

    /// Unchecked product, `self` first. Panics on degree mismatch.
    pub(crate) fn mul(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        let images: Box<[u32]> = self
            .images
            .iter()
            .map(|&x| other.images[x as usize])
            .collect();
        Permutation { images }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Permutation {
            images: images.into_boxed_slice(),
        }
    }

    /// `self^k` by square-and-multiply; negative exponents invert first.
    pub fn power(&self, k: i64) -> Permutation {
        let mut base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `self^u128` for index-sized exponents.
    pub fn power_u128(&self, k: u128) -> Permutation {
        let ord = self.order();
        let r = (k % ord as u128) as i64;
        self.power(r)
    }

    /// `by⁻¹ · self · by`.
    pub fn conjugate(&self, by: &Permutation) -> Result<Permutation> {
        if self.degree() != by.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: by.degree(),
            });
        }
        // i^(by⁻¹ self by): send by(i) to by(self(i)).
        let mut images = vec![0u32; self.degree()];
        for i in 0..self.degree() {
            images[by.images[i] as usize] = by.images[self.images[i] as usize];
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    /// Disjoint cycles of length ≥ 2, 1-based, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p + 1);
                p = self.images[p] as usize;
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Cycle lengths including fixed points, sorted in decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                len += 1;
                p = self.images[p] as usize;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    /// Element order: lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycle_type()
            .into_iter()
            .fold(1u64, |acc, len| lcm(acc, len as u64))
    }

    /// 1-based fixed points.
    pub fn fixed_points(&self) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &x)| *i == x as usize)
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn is_even(&self) -> bool {
        let n = self.degree();
        let cycles = self.cycle_type().len();
        (n - cycles).is_multiple_of(2)
    }

    /// Embeds into a larger degree, shifting points by `offset`.
    pub(crate) fn embed(&self, degree: usize, offset: usize) -> Permutation {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[i + offset] = x + offset as u32;
        }
        Permutation {
            images: images.into_boxed_slice(),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "id");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Returns the error column (1-based) and message on failure.
fn parse_cycles(text: &str, degree: usize) -> std::result::Result<Permutation, (usize, String)> {
    let trimmed = text.trim();
    if trimmed == "id" || trimmed == "()" {
        return Ok(Permutation::identity(degree));
    }
    let lead = text.len() - text.trim_start().len();
    let bytes = text.as_bytes();
    let mut images: Vec<u32> = (0..degree as u32).collect();
    let mut used = vec![false; degree];
    let mut i = lead;
    let mut any = false;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c != b'(' {
            return Err((i + 1, format!("expected '(' but found '{}'", c as char)));
        }
        any = true;
        i += 1;
        let mut cycle: Vec<(usize, usize)> = Vec::new();
        loop {
            while i < bytes.len() && (bytes[i].is_ascii_whitespace() || bytes[i] == b',') {
                i += 1;
            }
            if i >= bytes.len() {
                return Err((i + 1, "unterminated cycle".into()));
            }
            if bytes[i] == b')' {
                i += 1;
                break;
            }
            if !bytes[i].is_ascii_digit() {
                return Err((i + 1, format!("unexpected character '{}'", bytes[i] as char)));
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let point: usize = text[start..i]
                .parse()
                .map_err(|_| (start + 1, "point does not fit in an integer".to_string()))?;
            if point == 0 || point > degree {
                return Err((start + 1, format!("point {point} out of range 1..={degree}")));
            }
            if used[point - 1] {
                return Err((start + 1, format!("point {point} repeated")));
            }
            used[point - 1] = true;
            cycle.push((point - 1, start + 1));
        }
        for k in 0..cycle.len() {
            let (p, _) = cycle[k];
            let (q, _) = cycle[(k + 1) % cycle.len()];
            images[p] = q as u32;
        }
    }
    if !any {
        return Err((lead + 1, "empty permutation text".into()));
    }
    Ok(Permutation::from_images_unchecked(images))
}
