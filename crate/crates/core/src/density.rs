//! Density of primes `p` for which PSL(2,p) is wexp-solvable.

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::psl::WEXP_RESIDUES;

/// Odd-only sieve of Eratosthenes: `is_prime(n)` for `n < limit`.
pub struct Sieve {
    limit: u64,
    composite: Vec<u64>,
}

impl Sieve {
    pub fn new(limit: u64) -> Self {
        let half = (limit / 2 + 1) as usize;
        let mut composite = vec![0u64; half.div_ceil(64)];
        let mut i = 3u64;
        while i * i < limit {
            if !Self::bit(&composite, i) {
                let mut j = i * i;
                while j < limit {
                    let k = (j / 2) as usize;
                    composite[k >> 6] |= 1 << (k & 63);
                    j += 2 * i;
                }
            }
            i += 2;
        }
        Sieve { limit, composite }
    }

    fn bit(composite: &[u64], n: u64) -> bool {
        let k = (n / 2) as usize;
        (composite[k >> 6] >> (k & 63)) & 1 == 1
    }

    pub fn is_prime(&self, n: u64) -> bool {
        assert!(n < self.limit);
        match n {
            0 | 1 => false,
            2 => true,
            _ if n.is_multiple_of(2) => false,
            _ => !Self::bit(&self.composite, n),
        }
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        (2..self.limit).filter(|&n| self.is_prime(n))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityRow {
    pub n: u64,
    pub w: u64,
    pub pi: u64,
    pub ratio: f64,
}

fn check_bound(n: u64, caps: &Caps) -> Result<()> {
    if n < 3 {
        return Err(Error::invalid(format!("n = {n} is below 3")));
    }
    if n > caps.sieve_bound {
        return Err(Error::OverCap {
            what: "sieve limit",
            size: n as u128,
            cap: caps.sieve_bound as u128,
        });
    }
    Ok(())
}

/// `w(n)`, `π(n)` and their ratio, counting primes `p < n`.
pub fn wexp_prime_density(n: u64, caps: &Caps) -> Result<DensityRow> {
    Ok(*density_checkpoints(n, caps)?.last().unwrap())
}

/// Rows at 10, 100, 1000, … below `n_max`, and at `n_max` itself.
pub fn density_checkpoints(n_max: u64, caps: &Caps) -> Result<Vec<DensityRow>> {
    check_bound(n_max, caps)?;
    let sieve = Sieve::new(n_max);
    let mut marks = Vec::new();
    let mut c = 10;
    while c < n_max {
        marks.push(c);
        c *= 10;
    }
    marks.push(n_max);
    let mut rows = Vec::new();
    let (mut w, mut pi) = (0u64, 0u64);
    let mut next = 0;
    for n in 2..n_max {
        while n == marks[next] {
            rows.push(row(marks[next], w, pi));
            next += 1;
        }
        if sieve.is_prime(n) {
            pi += 1;
            if WEXP_RESIDUES.contains(&(n % 120)) {
                w += 1;
            }
        }
    }
    while next < marks.len() {
        rows.push(row(marks[next], w, pi));
        next += 1;
    }
    Ok(rows)
}

fn row(n: u64, w: u64, pi: u64) -> DensityRow {
    DensityRow {
        n,
        w,
        pi,
        ratio: if pi == 0 { 0.0 } else { w as f64 / pi as f64 },
    }
}
