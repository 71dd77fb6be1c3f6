//! Irreducible characters of `S_n` by the Murnaghan–Nakayama rule.
//!
//! Shapes are handled as beta-sets (first-column hook lengths). Removing a
//! border strip of length `k` moves one bead from `b` to an empty `b - k`, and
//! the strip's height is the number of beads strictly between the two spots.

use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{domain, invariant, Error, Result};
use crate::limits::{Limits, HARD_TABLE_N};
use crate::partitions::{factorial, partitions_of_bounded, CycleType};

type Memo = HashMap<(Vec<u8>, Vec<u8>), i128>;

thread_local! {
    static MEMO: RefCell<Memo> = RefCell::new(HashMap::new());
}

fn overflow() -> Error {
    Error::Resource("character value does not fit in 128 bits".into())
}

fn beta_set(shape: &[u8]) -> Vec<usize> {
    let len = shape.len();
    shape
        .iter()
        .enumerate()
        .map(|(i, &p)| p as usize + len - 1 - i)
        .collect()
}

fn shape_from_beta(beta: &[usize]) -> Vec<u8> {
    let len = beta.len();
    beta.iter()
        .enumerate()
        .map(|(i, &b)| (b - (len - 1 - i)) as u8)
        .filter(|&p| p > 0)
        .collect()
}

/// `class` is non-increasing and sums to `|shape|`; strips its first part.
fn mn(shape: &[u8], class: &[u8], memo: &mut Memo) -> Result<i128> {
    let Some((&k, rest)) = class.split_first() else {
        return Ok(if shape.is_empty() { 1 } else { 0 });
    };
    let key = (shape.to_vec(), class.to_vec());
    if let Some(&v) = memo.get(&key) {
        return Ok(v);
    }
    let k = k as usize;
    let beta = beta_set(shape);
    let mut total: i128 = 0;
    for (i, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let target = b - k;
        let height = beta.iter().filter(|&&c| c > target && c < b).count();
        let mut moved = beta.clone();
        moved[i] = target;
        moved.sort_unstable_by(|x, y| y.cmp(x));
        let value = mn(&shape_from_beta(&moved), rest, memo)?;
        total = if height % 2 == 0 {
            total.checked_add(value)
        } else {
            total.checked_sub(value)
        }
        .ok_or_else(overflow)?;
    }
    memo.insert(key, total);
    Ok(total)
}

/// Shapes of every size up to `n`, with their strip-removal steps.
struct StripSteps {
    shapes: Vec<Vec<Vec<u8>>>,
    index: Vec<HashMap<Vec<u8>, u32>>,
    // (size, strip length) -> per shape, the shapes left after removing one
    // strip and whether the sign is negative.
    steps: HashMap<(usize, usize), Vec<Vec<(u32, bool)>>>,
}

impl StripSteps {
    fn new(n: usize, max_n: usize) -> Result<Self> {
        let mut shapes = vec![vec![Vec::new()]];
        for m in 1..=n {
            let parts = partitions_of_bounded(m, max_n)?;
            shapes.push(parts.iter().map(as_bytes).collect::<Result<_>>()?);
        }
        let index = shapes
            .iter()
            .map(|s| s.iter().enumerate().map(|(i, v)| (v.clone(), i as u32)).collect())
            .collect();
        Ok(StripSteps { shapes, index, steps: HashMap::new() })
    }

    fn steps(&mut self, m: usize, k: usize) -> &[Vec<(u32, bool)>] {
        let (shapes, index) = (&self.shapes, &self.index);
        self.steps.entry((m, k)).or_insert_with(|| {
            shapes[m]
                .iter()
                .map(|shape| {
                    let beta = beta_set(shape);
                    let mut out = Vec::new();
                    for (i, &b) in beta.iter().enumerate() {
                        if b < k || beta.contains(&(b - k)) {
                            continue;
                        }
                        let target = b - k;
                        let height = beta.iter().filter(|&&c| c > target && c < b).count();
                        let mut moved = beta.clone();
                        moved[i] = target;
                        moved.sort_unstable_by(|x, y| y.cmp(x));
                        out.push((index[m - k][&shape_from_beta(&moved)], height % 2 == 1));
                    }
                    out
                })
                .collect()
        })
    }
}

/// Every column of the table of `S_n`, keyed by class (parts non-increasing).
///
/// Classes are grown by adding a new largest part `k`; the column of the
/// grown class is one strip-removal step applied to the column of the
/// smaller class. A depth-first walk keeps only one column per level.
fn all_columns(n: usize, max_n: usize) -> Result<HashMap<Vec<u8>, Vec<i128>>> {
    fn walk(
        n: usize,
        m: usize,
        added: &mut Vec<u8>,
        column: &[i128],
        steps: &mut StripSteps,
        out: &mut HashMap<Vec<u8>, Vec<i128>>,
    ) -> Result<()> {
        if m == n {
            out.insert(added.iter().rev().copied().collect(), column.to_vec());
            return Ok(());
        }
        let smallest = added.last().map_or(1, |&p| p as usize);
        for k in smallest..=n - m {
            let rest = n - m - k;
            if rest != 0 && rest < k {
                continue;
            }
            let next: Vec<i128> = steps
                .steps(m + k, k)
                .iter()
                .map(|moves| {
                    moves.iter().try_fold(0i128, |acc, &(child, negative)| {
                        let v = column[child as usize];
                        if negative { acc.checked_sub(v) } else { acc.checked_add(v) }
                    })
                })
                .collect::<Option<_>>()
                .ok_or_else(overflow)?;
            added.push(k as u8);
            walk(n, m + k, added, &next, steps, out)?;
            added.pop();
        }
        Ok(())
    }

    let mut steps = StripSteps::new(n, max_n)?;
    let mut out = HashMap::new();
    walk(n, 0, &mut Vec::new(), &[1], &mut steps, &mut out)?;
    Ok(out)
}

fn as_bytes(t: &CycleType) -> Result<Vec<u8>> {
    t.parts()
        .iter()
        .map(|&p| u8::try_from(p).map_err(|_| Error::Resource(format!("part {p} too large"))))
        .collect()
}

/// The irreducible character `χ_irrep` evaluated on the class `class`.
pub fn mn_character(irrep: &CycleType, class: &CycleType) -> Result<i128> {
    if irrep.n() != class.n() {
        return Err(domain!(
            "irreducible [{irrep}] and class [{class}] belong to different symmetric groups"
        ));
    }
    if irrep.n() > HARD_TABLE_N {
        return Err(Error::Resource(format!(
            "characters of S_{} exceed the supported range",
            irrep.n()
        )));
    }
    let (shape, cls) = (as_bytes(irrep)?, as_bytes(class)?);
    MEMO.with(|memo| mn(&shape, &cls, &mut memo.borrow_mut()))
}

/// The full character table of `S_n`, rows and columns both indexed by the
/// partitions of `n` in reverse-lexicographic order.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    n: usize,
    partitions: Vec<CycleType>,
    index: HashMap<CycleType, usize>,
    // values[irrep][class]
    values: Vec<Vec<i128>>,
    // columns[class][irrep]
    columns: Vec<Vec<i128>>,
    dims: Vec<BigUint>,
    class_sizes: Vec<BigUint>,
    centralizers: Vec<BigUint>,
    // n!/dim per irreducible and z per class, when they fit in i128.
    pub(crate) weights: Option<Vec<i128>>,
    pub(crate) small_centralizers: Option<Vec<i128>>,
}

/// Character table with the default bound.
pub fn character_table(n: usize) -> Result<CharacterTable> {
    CharacterTable::build(n, &Limits::default())
}

impl CharacterTable {
    pub fn build(n: usize, limits: &Limits) -> Result<Self> {
        let bound = limits.max_table_n.min(HARD_TABLE_N);
        if n > bound {
            return Err(Error::Resource(format!(
                "character table of S_{n} exceeds the bound n <= {bound}"
            )));
        }
        let partitions = partitions_of_bounded(n, limits.max_n.max(n))?;
        let bytes: Vec<Vec<u8>> = partitions.iter().map(as_bytes).collect::<Result<_>>()?;
        let mut by_class = all_columns(n, limits.max_n.max(n))?;
        let p = partitions.len();
        let columns: Vec<Vec<i128>> = bytes
            .iter()
            .map(|class| by_class.remove(class).ok_or_else(|| invariant!("class {class:?} not reached")))
            .collect::<Result<_>>()?;
        let values: Vec<Vec<i128>> = (0..p).map(|r| (0..p).map(|c| columns[c][r]).collect()).collect();
        let identity_col = p - 1;
        let dims: Vec<BigUint> = values
            .iter()
            .map(|row| {
                u128::try_from(row[identity_col])
                    .map(BigUint::from)
                    .map_err(|_| invariant!("negative degree"))
            })
            .collect::<Result<_>>()?;
        let class_sizes: Vec<BigUint> = partitions.iter().map(CycleType::class_size).collect();
        let centralizers: Vec<BigUint> = partitions.iter().map(CycleType::centralizer_order).collect();
        let fact = factorial(n);
        let weights = dims
            .iter()
            .map(|d| (&fact / d).to_i128())
            .collect::<Option<Vec<_>>>();
        let small_centralizers = centralizers.iter().map(|z| z.to_i128()).collect();
        let index = partitions.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        Ok(CharacterTable {
            n,
            partitions,
            index,
            values,
            columns,
            dims,
            class_sizes,
            centralizers,
            weights,
            small_centralizers,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Labels of the irreducible characters.
    pub fn irreducibles(&self) -> &[CycleType] {
        &self.partitions
    }

    /// Labels of the conjugacy classes.
    pub fn classes(&self) -> &[CycleType] {
        &self.partitions
    }

    pub fn index_of(&self, t: &CycleType) -> Result<usize> {
        self.index
            .get(t)
            .copied()
            .ok_or_else(|| domain!("[{t}] is not a partition of {}", self.n))
    }

    /// `values()[irrep][class]`.
    pub fn values(&self) -> &[Vec<i128>] {
        &self.values
    }

    pub(crate) fn column(&self, class: usize) -> &[i128] {
        &self.columns[class]
    }

    pub fn value(&self, irrep: &CycleType, class: &CycleType) -> Result<i128> {
        Ok(self.values[self.index_of(irrep)?][self.index_of(class)?])
    }

    pub fn dims(&self) -> &[BigUint] {
        &self.dims
    }

    pub fn class_sizes(&self) -> &[BigUint] {
        &self.class_sizes
    }

    pub fn centralizers(&self) -> &[BigUint] {
        &self.centralizers
    }

    /// Checks `Σ dim² = n!` and column orthogonality
    /// `Σ_χ χ(μ)χ(ν) = δ_μν z_μ`.
    pub fn check_invariants(&self) -> Result<()> {
        let dim_sum: BigUint = self.dims.iter().map(|d| d * d).sum();
        if dim_sum != factorial(self.n) {
            return Err(invariant!("sum of squared degrees of S_{} is {dim_sum}", self.n));
        }
        let p = self.partitions.len();
        // |dot| <= sqrt(z_a z_b) <= n!, so i128 suffices unless n! does not fit.
        let dot = |a: usize, b: usize| -> BigInt {
            let (x, y) = (&self.columns[a], &self.columns[b]);
            x.iter()
                .zip(y)
                .try_fold(0i128, |acc, (&u, &v)| acc.checked_add(u.checked_mul(v)?))
                .map(BigInt::from)
                .unwrap_or_else(|| x.iter().zip(y).map(|(&u, &v)| BigInt::from(u) * BigInt::from(v)).sum())
        };
        let bad = (0..p).into_par_iter().find_map_any(|a| {
            (a..p).find_map(|b| {
                let expected = if a == b { BigInt::from(self.centralizers[a].clone()) } else { BigInt::zero() };
                let d = dot(a, b);
                (d != expected).then_some((a, b, d))
            })
        });
        if let Some((a, b, d)) = bad {
            return Err(invariant!(
                "columns [{}] and [{}] of S_{} have inner product {d}",
                self.partitions[a],
                self.partitions[b],
                self.n
            ));
        }
        Ok(())
    }

    /// `a_{λμ}^ν = |C_λ||C_μ|/n! · Σ_χ χ(λ)χ(μ)χ(ν)/χ(1)` in exact rationals.
    pub fn structure_constant(
        &self,
        lhs: &CycleType,
        rhs: &CycleType,
        out: &CycleType,
    ) -> Result<BigUint> {
        let (l, m, o) = (self.index_of(lhs)?, self.index_of(rhs)?, self.index_of(out)?);
        let mut sum = BigRational::zero();
        for (row, dim) in self.values.iter().zip(&self.dims) {
            let num = BigInt::from(row[l]) * BigInt::from(row[m]) * BigInt::from(row[o]);
            sum += BigRational::new(num, BigInt::from(dim.clone()));
        }
        let scale = BigRational::new(
            BigInt::from(&self.class_sizes[l] * &self.class_sizes[m]),
            BigInt::from(factorial(self.n)),
        );
        let a = sum * scale;
        if !a.is_integer() || a.is_negative() {
            return Err(invariant!(
                "structure constant for ([{lhs}], [{rhs}]; [{out}]) came out as {a}"
            ));
        }
        a.to_integer()
            .to_biguint()
            .ok_or_else(|| invariant!("negative structure constant"))
    }
}
