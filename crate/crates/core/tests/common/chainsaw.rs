use wexp_core::psl::MaxType;

use super::{gcd, is_prime_trial};

/// (type, residue mod 10 or 8, residue mod 12 or 3, expected k, l, |x^m|, |y^m|)
pub const TABLE_ROWS: [(MaxType, u64, u64, u64, u64, u64, u64); 16] = [
    (MaxType::A5, 1, 1, 60, 2, 30, 1),
    (MaxType::A5, 1, 5, 20, 6, 10, 3),
    (MaxType::A5, 1, 7, 30, 4, 15, 2),
    (MaxType::A5, 1, 11, 10, 12, 5, 6),
    (MaxType::A5, 9, 1, 12, 10, 6, 5),
    (MaxType::A5, 9, 5, 4, 30, 2, 15),
    (MaxType::A5, 9, 7, 6, 20, 3, 10),
    (MaxType::A5, 9, 11, 2, 60, 1, 30),
    (MaxType::A4, 3, 1, 6, 4, 3, 2),
    (MaxType::A4, 3, 2, 2, 12, 1, 6),
    (MaxType::A4, 5, 1, 12, 2, 6, 1),
    (MaxType::A4, 5, 2, 4, 6, 2, 3),
    (MaxType::S4, 1, 1, 24, 2, 12, 1),
    (MaxType::S4, 1, 2, 8, 6, 4, 3),
    (MaxType::S4, 7, 1, 6, 8, 3, 4),
    (MaxType::S4, 7, 2, 2, 24, 1, 12),
];

pub fn in_config(t: MaxType, a: u64, b: u64, p: u64) -> bool {
    match t {
        MaxType::A5 => p % 10 == a && p % 12 == b,
        _ => p % 8 == a && p % 3 == b && t.is_maximal_for(p),
    }
}

pub fn primes_in_config(t: MaxType, a: u64, b: u64, count: usize) -> Vec<u64> {
    (13..).filter(|&p| is_prime_trial(p) && in_config(t, a, b, p)).take(count).collect()
}

/// Closed form: write 2|M| = 2^e·m with m odd; the factor carrying
/// 2^{e-1} goes to whichever of p±1 is divisible by 4.
pub fn closed_form(p: u64, t: MaxType) -> (u64, u64) {
    let two_m = 2 * t.order();
    let e = two_m.trailing_zeros();
    let m = two_m >> e;
    if (p - 1) % 4 == 2 {
        (2 * gcd(p - 1, m), (1 << (e - 1)) * gcd(p + 1, m))
    } else {
        ((1 << (e - 1)) * gcd(p - 1, m), 2 * gcd(p + 1, m))
    }
}
