//! The congruence classifier for wexp-solvable PSL(2,q) and the even
//! factorisations `2|M| = kℓ` for the maximal subgroups A5, A4, S4 of PSL(2,p).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{is_prime, prime_power};
use crate::perm::gcd;

/// Residues of `p` mod 120 for which PSL(2,p^d), d odd, is wexp-solvable.
pub const WEXP_RESIDUES: [u64; 11] = [2, 3, 5, 7, 17, 43, 53, 67, 77, 103, 113];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PslRoute {
    Exceptional,
    SmallP,
    ResidueList,
    EvenD,
    ResidueMiss,
}

impl std::fmt::Display for PslRoute {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PslRoute::Exceptional => "exceptional",
            PslRoute::SmallP => "small-p",
            PslRoute::ResidueList => "residue-list",
            PslRoute::EvenD => "even-d",
            PslRoute::ResidueMiss => "residue-miss",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PslClassification {
    pub q: u64,
    pub p: u64,
    pub d: u32,
    pub verdict: bool,
    pub route: PslRoute,
}

pub fn psl2_wexp_classifier(q: u64) -> Result<PslClassification> {
    let (p, d) = prime_power(q)?;
    let listed = WEXP_RESIDUES.contains(&(p % 120));
    let (verdict, route) = if q == 4 || q == 9 {
        (true, PslRoute::Exceptional)
    } else if d % 2 == 0 {
        (false, PslRoute::EvenD)
    } else if !listed {
        (false, PslRoute::ResidueMiss)
    } else if p <= 5 {
        (true, PslRoute::SmallP)
    } else {
        (true, PslRoute::ResidueList)
    };
    Ok(PslClassification {
        q,
        p,
        d,
        verdict,
        route,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MaxType {
    A5,
    A4,
    S4,
}

impl MaxType {
    pub fn order(self) -> u64 {
        match self {
            MaxType::A5 => 60,
            MaxType::A4 => 12,
            MaxType::S4 => 24,
        }
    }

    /// Whether this type is a maximal subgroup of PSL(2,p), p ≥ 13 prime.
    pub fn is_maximal_for(self, p: u64) -> bool {
        let pm10 = p % 10 == 1 || p % 10 == 9;
        match self {
            MaxType::A5 => pm10,
            MaxType::A4 => (p % 8 == 3 || p % 8 == 5) && !pm10,
            MaxType::S4 => p % 8 == 1 || p % 8 == 7,
        }
    }
}

impl std::str::FromStr for MaxType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A5" => Ok(MaxType::A5),
            "A4" => Ok(MaxType::A4),
            "S4" => Ok(MaxType::S4),
            _ => Err(Error::invalid(format!("unknown maximal type {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chainsaw {
    pub k: u64,
    pub l: u64,
    /// Order of `x^{|G:M|}` for `|x| = (p-1)/2`.
    pub order_x_power: u64,
    /// Order of `y^{|G:M|}` for `|y| = (p+1)/2`.
    pub order_y_power: u64,
}

/// The unique even pair with `kℓ = 2|M|`, `k | p-1`, `ℓ | p+1` and
/// `(p-1)/k`, `(p+1)/ℓ` coprime, found by scanning the divisors of `2|M|`.
pub fn psl_chainsaw(p: u64, max_type: MaxType) -> Result<Chainsaw> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p < 13 {
        return Err(Error::invalid(format!("p = {p} is below 13")));
    }
    if !max_type.is_maximal_for(p) {
        return Err(Error::invalid(format!(
            "{max_type:?} is not a maximal subgroup of PSL(2,{p})"
        )));
    }
    let two_m = 2 * max_type.order();
    let mut found = None;
    for k in (2..=two_m).step_by(2) {
        if !two_m.is_multiple_of(k) {
            continue;
        }
        let l = two_m / k;
        if !l.is_multiple_of(2) || !(p - 1).is_multiple_of(k) || !(p + 1).is_multiple_of(l) {
            continue;
        }
        if gcd((p - 1) / k, (p + 1) / l) != 1 {
            continue;
        }
        if found.is_some() {
            return Err(Error::ConstructionCheck(format!(
                "factorisation for p = {p} is not unique"
            )));
        }
        found = Some(Chainsaw {
            k,
            l,
            order_x_power: k / 2,
            order_y_power: l / 2,
        });
    }
    found.ok_or_else(|| Error::ConstructionCheck(format!("no factorisation for p = {p}")))
}
