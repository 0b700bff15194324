use std::env;

/// Environment variable overriding the element and search bounds.
pub const BOUND_ENV: &str = "CHARP_DIFFALG_BOUND";

/// Limits on exhaustive enumerations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    /// Maximum number of ring elements enumerated in one scan (`q^d`).
    pub elements: u128,
    /// Maximum number of subspaces enumerated when listing ideals.
    pub subspaces: u128,
    /// Maximum number of candidate points in a zero search.
    pub search: u128,
    /// Maximum number of monomials in a bounded vanishing-ideal computation.
    pub monomials: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            elements: 1 << 20,
            subspaces: 4096,
            search: 1 << 22,
            monomials: 4096,
        }
    }
}

impl Bounds {
    /// Defaults, with `elements` and `search` taken from
    /// `CHARP_DIFFALG_BOUND` when it holds a positive integer.
    pub fn from_env() -> Self {
        let mut b = Bounds::default();
        if let Some(v) = env::var(BOUND_ENV).ok().and_then(|s| s.trim().parse::<u128>().ok()) {
            if v > 0 {
                b.elements = v;
                b.search = v;
            }
        }
        b
    }
}
