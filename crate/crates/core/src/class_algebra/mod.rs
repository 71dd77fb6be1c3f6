//! Decomposition of class products `C_λ · C_μ` into conjugacy classes.
//!
//! Two engines compute the structure constants `a_{λμ}^ν` (the number of
//! ways a fixed element of `C_ν` factors as `x·y` with `x ∈ C_λ`, `y ∈ C_μ`):
//!
//! * [`product_types_bruteforce`] multiplies a fixed representative of one
//!   class by every element of the other;
//! * [`ClassAlgebra::product_by_characters`] evaluates
//!   `a = Σ_χ χ(λ)χ(μ)χ(ν)·(n!/χ(1)) / (z_λ z_μ)` with exact integers.
//!
//! `eta` is the number of classes with a non-zero constant.

mod characters;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use characters::{character_table, mn_character, CharacterTable};

use crate::error::{domain, invariant, Error, Result};
use crate::limits::Limits;
use crate::partitions::{partitions_of_bounded, CycleType, TypePair};
use crate::permutations::{canonical_rep, enumerate_class_bounded};

/// How a class product is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Brute,
    Character,
    /// Brute force when the smaller class is small, characters otherwise.
    Auto,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Brute => "brute",
            Engine::Character => "character",
            Engine::Auto => "auto",
        })
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute" => Ok(Engine::Brute),
            "character" => Ok(Engine::Character),
            "auto" => Ok(Engine::Auto),
            other => Err(Error::Parse(format!("unknown engine {other:?}"))),
        }
    }
}

/// The decomposition of `C_lhs · C_rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "ClassProductRecord", try_from = "ClassProductRecord")]
pub struct ClassProduct {
    pub lhs: CycleType,
    pub rhs: CycleType,
    // Non-zero constants only, in reverse-lexicographic order of ν.
    components: Vec<(CycleType, BigUint)>,
}

impl ClassProduct {
    fn new(lhs: CycleType, rhs: CycleType, mut components: Vec<(CycleType, BigUint)>) -> Self {
        components.retain(|(_, a)| !a.is_zero());
        components.sort_by(|a, b| b.0.cmp(&a.0));
        ClassProduct { lhs, rhs, components }
    }

    pub fn n(&self) -> usize {
        self.lhs.n()
    }

    /// Number of distinct classes in the product.
    pub fn eta(&self) -> usize {
        self.components.len()
    }

    /// `(ν, a_{λμ}^ν)` for every class in the product.
    pub fn components(&self) -> &[(CycleType, BigUint)] {
        &self.components
    }

    pub fn component_types(&self) -> impl Iterator<Item = &CycleType> {
        self.components.iter().map(|(t, _)| t)
    }

    pub fn contains(&self, t: &CycleType) -> bool {
        self.components.iter().any(|(c, _)| c == t)
    }

    pub fn multiplicity(&self, t: &CycleType) -> BigUint {
        self.components
            .iter()
            .find(|(c, _)| c == t)
            .map(|(_, a)| a.clone())
            .unwrap_or_default()
    }

    /// The same product with the factors listed in the other order.
    pub fn swapped(&self) -> ClassProduct {
        ClassProduct {
            lhs: self.rhs.clone(),
            rhs: self.lhs.clone(),
            components: self.components.clone(),
        }
    }

    /// Mass conservation `Σ a·|C_ν| = |C_λ||C_μ|`, the parity rule, and `eta >= 1`.
    pub fn check_invariants(&self) -> Result<()> {
        if self.components.is_empty() {
            return Err(invariant!("empty product [{}]·[{}]", self.lhs, self.rhs));
        }
        let mass: BigUint = self
            .components
            .iter()
            .map(|(t, a)| a * t.class_size())
            .sum();
        if mass != self.lhs.class_size() * self.rhs.class_size() {
            return Err(invariant!(
                "product [{}]·[{}] has mass {mass}",
                self.lhs,
                self.rhs
            ));
        }
        let sign = self.lhs.sign() * self.rhs.sign();
        if let Some((t, _)) = self.components.iter().find(|(t, _)| t.sign() != sign) {
            return Err(invariant!(
                "product [{}]·[{}] contains [{t}] of the wrong parity",
                self.lhs,
                self.rhs
            ));
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct ComponentRecord {
    #[serde(rename = "type")]
    ty: CycleType,
    multiplicity: String,
}

/// Wire shape of a [`ClassProduct`]; multiplicities are decimal strings.
#[derive(Serialize, Deserialize)]
struct ClassProductRecord {
    n: usize,
    lhs: CycleType,
    rhs: CycleType,
    eta: usize,
    components: Vec<ComponentRecord>,
}

impl From<ClassProduct> for ClassProductRecord {
    fn from(p: ClassProduct) -> Self {
        ClassProductRecord {
            n: p.n(),
            eta: p.eta(),
            components: p
                .components
                .into_iter()
                .map(|(ty, a)| ComponentRecord { ty, multiplicity: a.to_string() })
                .collect(),
            lhs: p.lhs,
            rhs: p.rhs,
        }
    }
}

impl TryFrom<ClassProductRecord> for ClassProduct {
    type Error = Error;

    fn try_from(r: ClassProductRecord) -> Result<Self> {
        let components = r
            .components
            .into_iter()
            .map(|c| {
                let a = c
                    .multiplicity
                    .parse::<BigUint>()
                    .map_err(|_| Error::Parse(format!("bad multiplicity {:?}", c.multiplicity)))?;
                Ok((c.ty, a))
            })
            .collect::<Result<Vec<_>>>()?;
        let p = ClassProduct::new(r.lhs, r.rhs, components);
        if p.n() != r.n || p.rhs.n() != r.n || p.eta() != r.eta {
            return Err(Error::Parse("inconsistent class product record".into()));
        }
        Ok(p)
    }
}

fn check_same_n(lhs: &CycleType, rhs: &CycleType) -> Result<()> {
    if lhs.n() != rhs.n() {
        return Err(domain!(
            "[{lhs}] and [{rhs}] are classes of different symmetric groups"
        ));
    }
    Ok(())
}

/// `C_lhs · C_rhs` by enumeration.
///
/// Every class of the product meets `rep · C_other` for a fixed representative
/// `rep`, and the number of `y ∈ C_other` with `rep·y ∈ C_ν` is
/// `a_{λμ}^ν · |C_ν| / |C_rep|`. The smaller class is the one enumerated.
pub fn product_types_bruteforce(
    lhs: &CycleType,
    rhs: &CycleType,
    limit: u64,
) -> Result<ClassProduct> {
    check_same_n(lhs, rhs)?;
    let (fixed, walked) = if lhs.class_size() >= rhs.class_size() {
        (lhs, rhs)
    } else {
        (rhs, lhs)
    };
    let rep = canonical_rep(fixed);
    let mut counts: HashMap<Vec<usize>, u64> = HashMap::new();
    for y in enumerate_class_bounded(walked, limit)? {
        *counts.entry(rep.compose_unchecked(&y).cycle_lengths()).or_default() += 1;
    }
    let fixed_size = fixed.class_size();
    let components = counts
        .into_iter()
        .map(|(lengths, count)| {
            let t = CycleType::from_sorted(lengths);
            let (a, rem) = (BigUint::from(count) * &fixed_size).div_rem(&t.class_size());
            if !rem.is_zero() {
                return Err(invariant!("non-integral count for [{t}] in [{lhs}]·[{rhs}]"));
            }
            Ok((t, a))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassProduct::new(lhs.clone(), rhs.clone(), components))
}

/// Smallest `eta` over unordered pairs of non-identity classes, and every pair attaining it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinEta {
    pub n: usize,
    pub minimum: usize,
    pub achievers: Vec<TypePair>,
}

/// Class-product calculator holding size bounds and cached character tables.
///
/// Tables are built once per `n` and shared read-only; concurrent callers may
/// race to build the same table, in which case the first one stored wins.
#[derive(Debug, Default)]
pub struct ClassAlgebra {
    limits: Limits,
    tables: Mutex<HashMap<usize, Arc<CharacterTable>>>,
}

impl ClassAlgebra {
    pub fn new(limits: Limits) -> Self {
        ClassAlgebra { limits, tables: Mutex::new(HashMap::new()) }
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn table(&self, n: usize) -> Result<Arc<CharacterTable>> {
        if let Some(t) = self.tables.lock().unwrap().get(&n) {
            return Ok(Arc::clone(t));
        }
        let built = Arc::new(CharacterTable::build(n, &self.limits)?);
        let mut tables = self.tables.lock().unwrap();
        Ok(Arc::clone(tables.entry(n).or_insert(built)))
    }

    pub fn partitions(&self, n: usize) -> Result<Vec<CycleType>> {
        partitions_of_bounded(n, self.limits.max_n)
    }

    pub fn product_bruteforce(&self, lhs: &CycleType, rhs: &CycleType) -> Result<ClassProduct> {
        product_types_bruteforce(lhs, rhs, self.limits.enumeration_limit)
    }

    pub fn product_by_characters(&self, lhs: &CycleType, rhs: &CycleType) -> Result<ClassProduct> {
        check_same_n(lhs, rhs)?;
        let table = self.table(lhs.n())?;
        let (l, m) = (table.index_of(lhs)?, table.index_of(rhs)?);
        let constants = match fast_constants(&table, l, m) {
            Some(c) => c,
            None => exact_constants(&table, l, m)?,
        };
        let components = constants
            .into_iter()
            .map(|(nu, a)| (table.classes()[nu].clone(), a))
            .collect();
        Ok(ClassProduct::new(lhs.clone(), rhs.clone(), components))
    }

    pub fn structure_constant(
        &self,
        lhs: &CycleType,
        rhs: &CycleType,
        out: &CycleType,
    ) -> Result<BigUint> {
        check_same_n(lhs, rhs)?;
        check_same_n(lhs, out)?;
        self.table(lhs.n())?.structure_constant(lhs, rhs, out)
    }

    pub fn eta(&self, lhs: &CycleType, rhs: &CycleType, engine: Engine) -> Result<ClassProduct> {
        check_same_n(lhs, rhs)?;
        match self.resolve(lhs, rhs, engine) {
            Engine::Brute => self.product_bruteforce(lhs, rhs),
            _ => self.product_by_characters(lhs, rhs),
        }
    }

    fn resolve(&self, lhs: &CycleType, rhs: &CycleType, engine: Engine) -> Engine {
        match engine {
            Engine::Auto => {
                let smaller = lhs.class_size().min(rhs.class_size());
                if smaller <= BigUint::from(self.limits.auto_brute_threshold) {
                    Engine::Brute
                } else {
                    Engine::Character
                }
            }
            e => e,
        }
    }

    /// Products for every unordered pair of non-identity classes of `S_n`,
    /// listed as `(λ, μ)` with `λ` not after `μ` in reverse-lexicographic order.
    pub fn scan(&self, n: usize, engine: Engine) -> Result<Vec<ClassProduct>> {
        let types: Vec<CycleType> = self
            .partitions(n)?
            .into_iter()
            .filter(|t| !t.is_identity())
            .collect();
        if engine != Engine::Brute && !types.is_empty() {
            self.table(n)?;
        }
        let pairs: Vec<(usize, usize)> = (0..types.len())
            .flat_map(|i| (i..types.len()).map(move |j| (i, j)))
            .collect();
        pairs
            .into_par_iter()
            .map(|(i, j)| self.eta(&types[i], &types[j], engine))
            .collect()
    }

    pub fn min_eta(&self, n: usize) -> Result<MinEta> {
        if n < 2 {
            return Err(domain!("S_{n} has no non-identity classes"));
        }
        let products = self.scan(n, Engine::Character)?;
        Ok(min_eta_of(n, &products))
    }
}

pub(crate) fn min_eta_of(n: usize, products: &[ClassProduct]) -> MinEta {
    let minimum = products.iter().map(ClassProduct::eta).min().unwrap_or(0);
    let mut achievers: Vec<TypePair> = products
        .iter()
        .filter(|p| p.eta() == minimum)
        .map(|p| TypePair::new(p.lhs.clone(), p.rhs.clone()))
        .collect();
    achievers.sort();
    achievers.dedup();
    MinEta { n, minimum, achievers }
}

fn integrality_error(table: &CharacterTable, l: usize, m: usize, nu: usize) -> Error {
    let c = table.classes();
    invariant!(
        "character sum for ([{}], [{}]; [{}]) is not divisible by the centralizers",
        c[l],
        c[m],
        c[nu]
    )
}

/// All constants `a_{lm}^ν` in `i128`; `None` on any overflow.
fn fast_constants(table: &CharacterTable, l: usize, m: usize) -> Option<Vec<(usize, BigUint)>> {
    let weights = table.weights.as_ref()?;
    let z = table.small_centralizers.as_ref()?;
    let (col_l, col_m) = (table.column(l), table.column(m));
    let partial: Vec<i128> = (0..weights.len())
        .map(|chi| col_l[chi].checked_mul(col_m[chi])?.checked_mul(weights[chi]))
        .collect::<Option<_>>()?;
    let denom = z[l].checked_mul(z[m])?;
    let mut out = Vec::new();
    for nu in 0..partial.len() {
        let col = table.column(nu);
        let mut sum: i128 = 0;
        for (p, &c) in partial.iter().zip(col) {
            sum = sum.checked_add(p.checked_mul(c)?)?;
        }
        if sum == 0 {
            continue;
        }
        if sum < 0 || sum % denom != 0 {
            // Leave the reporting to the exact path.
            return None;
        }
        out.push((nu, BigUint::from((sum / denom) as u128)));
    }
    Some(out)
}

fn exact_constants(table: &CharacterTable, l: usize, m: usize) -> Result<Vec<(usize, BigUint)>> {
    let fact = crate::partitions::factorial(table.n());
    let (col_l, col_m) = (table.column(l), table.column(m));
    let partial: Vec<BigInt> = table
        .dims()
        .iter()
        .enumerate()
        .map(|(chi, d)| {
            BigInt::from(col_l[chi]) * BigInt::from(col_m[chi]) * BigInt::from(&fact / d)
        })
        .collect();
    let denom = BigInt::from(&table.centralizers()[l] * &table.centralizers()[m]);
    let mut out = Vec::new();
    for nu in 0..partial.len() {
        let sum: BigInt = partial
            .iter()
            .zip(table.column(nu))
            .map(|(p, &c)| p * BigInt::from(c))
            .sum();
        if sum.is_zero() {
            continue;
        }
        let (a, rem) = sum.div_rem(&denom);
        if !rem.is_zero() || a.is_negative() {
            return Err(integrality_error(table, l, m, nu));
        }
        out.push((nu, a.to_biguint().expect("non-negative")));
    }
    Ok(out)
}

fn shared() -> &'static ClassAlgebra {
    static SHARED: OnceLock<ClassAlgebra> = OnceLock::new();
    SHARED.get_or_init(ClassAlgebra::default)
}

/// `C_lhs · C_rhs` with default bounds and a process-wide table cache.
pub fn eta(lhs: &CycleType, rhs: &CycleType, engine: Engine) -> Result<ClassProduct> {
    shared().eta(lhs, rhs, engine)
}

pub fn structure_constant(lhs: &CycleType, rhs: &CycleType, out: &CycleType) -> Result<BigUint> {
    shared().structure_constant(lhs, rhs, out)
}

pub fn min_eta(n: usize) -> Result<MinEta> {
    shared().min_eta(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::partitions_of;
    use crate::permutations::{all_permutations, Permutation};

    fn ct(s: &str) -> CycleType {
        s.parse().unwrap()
    }

    fn types(p: &ClassProduct) -> Vec<String> {
        p.component_types().map(|t| t.to_string()).collect()
    }

    #[test]
    fn transposition_squares() {
        for n in 4..=8 {
            let t = CycleType::single_cycle(2, n).unwrap();
            let p = product_types_bruteforce(&t, &t, 1_000_000).unwrap();
            assert_eq!(p.eta(), 3);
            let want = [
                CycleType::single_cycle(3, n).unwrap(),
                CycleType::new(vec![2, 2]).unwrap().padded(n - 4),
                CycleType::identity(n),
            ];
            assert!(want.iter().all(|w| p.contains(w)), "n = {n}: {:?}", types(&p));
        }
    }

    #[test]
    fn identity_factor() {
        for lhs in partitions_of(5).unwrap() {
            let p = product_types_bruteforce(&lhs, &CycleType::identity(5), 1000).unwrap();
            assert_eq!(p.components(), &[(lhs.clone(), BigUint::from(1u32))]);
        }
    }

    #[test]
    fn s3_transposition_square_by_pairs() {
        // Count pairs (x, y) of transpositions with x·y = (1 2 3) directly.
        let target = Permutation::parse("(1 2 3)", 3).unwrap();
        let transpositions: Vec<_> = all_permutations(3)
            .into_iter()
            .filter(|g| g.cycle_type() == ct("2,1"))
            .collect();
        let direct = transpositions
            .iter()
            .flat_map(|x| transpositions.iter().map(move |y| x.compose(y).unwrap()))
            .filter(|z| *z == target)
            .count();
        assert_eq!(direct, 3);
        let p = product_types_bruteforce(&ct("2,1"), &ct("2,1"), 100).unwrap();
        assert_eq!(p.multiplicity(&ct("3")), BigUint::from(direct));
        assert_eq!(structure_constant(&ct("2,1"), &ct("2,1"), &ct("3")).unwrap(), BigUint::from(3u32));
    }

    #[test]
    fn engines_agree_up_to_seven() {
        let algebra = ClassAlgebra::default();
        for n in 1..=7 {
            let ps = partitions_of(n).unwrap();
            for l in &ps {
                for m in &ps {
                    let brute = algebra.product_bruteforce(l, m).unwrap();
                    let chars = algebra.product_by_characters(l, m).unwrap();
                    assert_eq!(brute, chars, "[{l}]·[{m}]");
                    brute.check_invariants().unwrap();
                }
            }
        }
    }

    #[test]
    fn exact_path_matches_fast_path() {
        let table = character_table(8).unwrap();
        let p = table.classes().len();
        for l in 0..p {
            for m in 0..p {
                assert_eq!(
                    fast_constants(&table, l, m).unwrap(),
                    exact_constants(&table, l, m).unwrap()
                );
            }
        }
    }

    #[test]
    fn rational_route_matches_integer_route() {
        let algebra = ClassAlgebra::default();
        let ps = partitions_of(6).unwrap();
        for l in &ps {
            for m in &ps {
                let p = algebra.product_by_characters(l, m).unwrap();
                for nu in &ps {
                    assert_eq!(algebra.structure_constant(l, m, nu).unwrap(), p.multiplicity(nu));
                }
            }
        }
    }

    #[test]
    fn worked_examples() {
        let p = eta(&ct("2,1,1,1"), &ct("5"), Engine::Auto).unwrap();
        assert_eq!(p.eta(), 2);
        assert_eq!(types(&p), ["4,1", "3,2"]);
        assert_eq!(eta(&ct("2,2,2"), &ct("3,1,1,1"), Engine::Character).unwrap().eta(), 2);
        let p = eta(&ct("3,3"), &ct("2,2,2"), Engine::Character).unwrap();
        assert!(p.eta() >= 3);
        for t in ["4,1,1", "6", "2,2,2"] {
            assert!(p.contains(&ct(t)), "{t}");
        }
    }

    #[test]
    fn min_eta_small() {
        let m4 = min_eta(4).unwrap();
        assert_eq!(m4.minimum, 1);
        assert_eq!(m4.achievers, vec![TypePair::new(ct("3,1"), ct("2,2"))]);
        assert_eq!(min_eta(7).unwrap().minimum, 3);
        assert_eq!(min_eta(12).unwrap().minimum, 2);
        assert!(min_eta(1).is_err());
    }

    #[test]
    fn record_round_trip() {
        let p = eta(&ct("3,3"), &ct("2,2,2"), Engine::Character).unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert!(json.starts_with(r#"{"n":6,"lhs":"3,3","rhs":"2,2,2","eta":"#), "{json}");
        assert!(json.contains(r#"{"type":"6","multiplicity":""#), "{json}");
        let back: ClassProduct = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn errors() {
        assert!(matches!(eta(&ct("2,1"), &ct("2,2"), Engine::Auto), Err(Error::Domain(_))));
        let big = ct("7,6");
        assert!(matches!(
            product_types_bruteforce(&big, &big, 1000),
            Err(Error::Resource(_))
        ));
        assert!("fast".parse::<Engine>().is_err());
    }
}
