/// Size limits for exhaustive computations. Every structural operation
/// refuses with [`crate::Error::OverCap`] rather than guessing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Caps {
    /// Largest group order whose elements are materialised.
    pub element_cap: u128,
    /// Largest group order for full subgroup-lattice enumeration.
    pub lattice_cap: u128,
    /// Largest permutation degree a constructor may produce.
    pub degree_bound: usize,
    /// Largest field size `p^d`.
    pub field_bound: u64,
    /// Largest sieve limit for prime-density runs.
    pub sieve_bound: u64,
    /// Elements streamed by witness searches on groups above `element_cap`.
    pub scan_budget: u128,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            element_cap: 20_000,
            lattice_cap: 5_000,
            degree_bound: 4096,
            field_bound: 1 << 20,
            sieve_bound: 100_000_000,
            scan_budget: 2_000_000,
        }
    }
}
