/// Size bounds that keep factorial-sized computations from running away.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest `n` accepted by partition enumeration.
    pub max_n: usize,
    /// Largest `n` for which a character table is built.
    pub max_table_n: usize,
    /// Largest class that may be enumerated element by element.
    pub enumeration_limit: u64,
    /// `auto` engine picks brute force iff the smaller class has at most this many elements.
    pub auto_brute_threshold: u64,
}

/// Environment variable overriding both `n` bounds.
pub const MAX_N_ENV: &str = "CLASSPROD_MAX_N";

/// Character values are held in `i128`; every value is bounded by `sqrt(n!)`,
/// which stays below `i128::MAX` up to this degree.
pub const HARD_TABLE_N: usize = 56;

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_n: 30,
            max_table_n: 25,
            enumeration_limit: 10_000_000,
            auto_brute_threshold: 1_000_000,
        }
    }
}

impl Limits {
    /// Defaults, with `CLASSPROD_MAX_N` applied when set to a positive integer.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(v) = std::env::var(MAX_N_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok())
            .filter(|&v| v > 0)
        {
            limits.max_n = v;
            limits.max_table_n = v.min(HARD_TABLE_N);
        }
        limits
    }
}
