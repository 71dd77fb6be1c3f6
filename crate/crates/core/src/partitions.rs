//! Integer partitions in their role as cycle types of permutations.
//!
//! A [`CycleType`] is kept in canonical form (parts non-increasing), so the
//! multiset equality of cycle structures is plain sequence equality.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{domain, Error, Result};
use crate::limits::Limits;

/// The cycle type of a permutation of `{1..n}`: a partition of `n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    parts: Vec<usize>,
    n: usize,
}

impl CycleType {
    /// Builds a cycle type from parts given in any order.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(domain!("a cycle type needs at least one part"));
        }
        if parts.contains(&0) {
            return Err(domain!("cycle type parts must be positive"));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let n = parts.iter().sum();
        Ok(CycleType { parts, n })
    }

    /// Caller guarantees `parts` is non-empty, positive and non-increasing.
    pub(crate) fn from_sorted(parts: Vec<usize>) -> Self {
        debug_assert!(!parts.is_empty() && parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(*parts.last().unwrap() > 0);
        let n = parts.iter().sum();
        CycleType { parts, n }
    }

    /// The type `[1^n]` of the identity.
    pub fn identity(n: usize) -> Self {
        assert!(n > 0, "S_0 is not supported");
        CycleType::from_sorted(vec![1; n])
    }

    /// `[k, 1^(n-k)]`, the type of a single `k`-cycle in `S_n`.
    pub fn single_cycle(k: usize, n: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(domain!("a {k}-cycle does not live in S_{n}"));
        }
        let mut parts = vec![k];
        parts.extend(std::iter::repeat(1).take(n - k));
        Ok(CycleType::from_sorted(parts))
    }

    /// `[k^(n/k)]`, a product of `n/k` disjoint `k`-cycles.
    pub fn uniform(k: usize, n: usize) -> Result<Self> {
        if k == 0 || n == 0 || n % k != 0 {
            return Err(domain!("{k} does not divide {n}"));
        }
        Ok(CycleType::from_sorted(vec![k; n / k]))
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The degree: sum of the parts.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    /// Number of parts equal to 1.
    pub fn fixed_point_count(&self) -> usize {
        self.parts.iter().rev().take_while(|&&p| p == 1).count()
    }

    pub fn moved_point_count(&self) -> usize {
        self.n - self.fixed_point_count()
    }

    pub fn is_fixed_point_free(&self) -> bool {
        self.fixed_point_count() == 0
    }

    pub fn is_identity(&self) -> bool {
        self.parts[0] == 1
    }

    pub fn largest_part(&self) -> usize {
        self.parts[0]
    }

    /// True when some cycle has length at least `len`.
    pub fn has_cycle_at_least(&self, len: usize) -> bool {
        self.parts[0] >= len
    }

    pub fn contains_part(&self, len: usize) -> bool {
        self.parts.contains(&len)
    }

    /// `+1` for even permutations, `-1` for odd ones.
    pub fn sign(&self) -> i8 {
        if (self.n - self.parts.len()) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_even(&self) -> bool {
        self.sign() == 1
    }

    /// `(part, multiplicity)` in decreasing order of part.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Centralizer order `z = prod_i i^(m_i) * m_i!`.
    pub fn centralizer_order(&self) -> BigUint {
        self.multiplicities()
            .into_iter()
            .fold(BigUint::one(), |acc, (part, mult)| {
                acc * BigUint::from(part).pow(mult as u32) * factorial(mult)
            })
    }

    /// Number of permutations of `S_n` with this cycle type, `n!/z`.
    pub fn class_size(&self) -> BigUint {
        factorial(self.n) / self.centralizer_order()
    }

    /// Multiset union of the parts; the result lives in `S_(n1 + n2)`.
    pub fn union(&self, other: &CycleType) -> CycleType {
        let mut parts = Vec::with_capacity(self.parts.len() + other.parts.len());
        parts.extend_from_slice(&self.parts);
        parts.extend_from_slice(&other.parts);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType::from_sorted(parts)
    }

    /// The same type viewed in `S_(n+k)`: `k` extra fixed points.
    pub fn padded(&self, k: usize) -> CycleType {
        let mut parts = self.parts.clone();
        parts.extend(std::iter::repeat(1).take(k));
        CycleType::from_sorted(parts)
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for CycleType {
    type Err = Error;

    /// Parses comma-separated parts such as `"3,2,1,1"`, in any order.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty partition".into()));
        }
        let mut parts = Vec::new();
        for tok in s.split(',') {
            let tok = tok.trim();
            let value: i64 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("not an integer part: {tok:?}")))?;
            if value <= 0 {
                return Err(Error::Parse(format!("parts must be positive, got {value}")));
            }
            parts.push(value as usize);
        }
        CycleType::new(parts).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl Serialize for CycleType {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CycleType {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An unordered pair of cycle types, stored with the larger type first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TypePair(pub CycleType, pub CycleType);

impl TypePair {
    pub fn new(a: CycleType, b: CycleType) -> Self {
        if a >= b {
            TypePair(a, b)
        } else {
            TypePair(b, a)
        }
    }
}

impl fmt::Debug for TypePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{[{}], [{}]}}", self.0, self.1)
    }
}

impl fmt::Display for TypePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} / {}", self.0, self.1)
    }
}

pub fn factorial(n: usize) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// All partitions of `n` in reverse-lexicographic order, using the default bound.
pub fn partitions_of(n: usize) -> Result<Vec<CycleType>> {
    partitions_of_bounded(n, Limits::default().max_n)
}

/// All partitions of `n` in reverse-lexicographic order (`[n]` first, `[1^n]` last).
pub fn partitions_of_bounded(n: usize, max_n: usize) -> Result<Vec<CycleType>> {
    if n == 0 {
        return Err(domain!("n must be positive"));
    }
    if n > max_n {
        return Err(Error::Resource(format!(
            "n = {n} exceeds the partition bound {max_n}"
        )));
    }
    let mut out = Vec::new();
    let mut current = vec![n];
    loop {
        out.push(CycleType::from_sorted(current.clone()));
        // Rightmost part greater than one; everything after it is 1s.
        let Some(idx) = current.iter().rposition(|&p| p > 1) else {
            break;
        };
        let ones = current.len() - idx - 1;
        let part = current[idx] - 1;
        current.truncate(idx);
        let mut remaining = ones + 1 + part;
        while remaining > 0 {
            let next = part.min(remaining);
            current.push(next);
            remaining -= next;
        }
    }
    Ok(out)
}

pub fn class_size(t: &CycleType) -> BigUint {
    t.class_size()
}

pub fn fixed_point_count(t: &CycleType) -> usize {
    t.fixed_point_count()
}

pub fn type_union(a: &CycleType, b: &CycleType) -> CycleType {
    a.union(b)
}

/// The type pairs that may have exactly two classes in their product for `n > 5`:
/// `{2^(n/2)}` with a transposition or a 3-cycle when `n` is even, and
/// `{3^(n/3)}` with a transposition when `3 | n`.
pub fn exceptional_two_class_pairs(n: usize) -> Result<Vec<TypePair>> {
    if n <= 5 {
        return Err(domain!("the classification of two-class products needs n > 5, got {n}"));
    }
    let transposition = CycleType::single_cycle(2, n)?;
    let three_cycle = CycleType::single_cycle(3, n)?;
    let mut out = Vec::new();
    if n % 2 == 0 {
        let involution = CycleType::uniform(2, n)?;
        out.push(TypePair::new(involution.clone(), transposition.clone()));
        out.push(TypePair::new(involution, three_cycle));
    }
    if n % 3 == 0 {
        out.push(TypePair::new(CycleType::uniform(3, n)?, transposition));
    }
    out.sort();
    Ok(out)
}
