//! Range scans that check the classification of products with few classes,
//! reported as pass/fail records with witnesses.
//!
//! Full-pair scans use the character engine. For `n <= 8` every scan is
//! repeated by brute force and any disagreement becomes a failing witness.
//! A report passes exactly when none of its witnesses failed.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::class_algebra::{min_eta_of, ClassAlgebra, ClassProduct, Engine};
use crate::constructive::{one_fixed_point_product, Construction};
use crate::error::{domain, Error, Result};
use crate::limits::Limits;
use crate::partitions::{exceptional_two_class_pairs, CycleType, TypePair};
use crate::permutations::{canonical_rep, Permutation};

/// A checkable statement. The string ids are the names used on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Statement {
    /// For `n > 5`, the pairs with `eta = 2` are exactly the exceptional pairs.
    TwoClassPairs,
    /// For `n > 5`, the least `eta` is 2 when 2 or 3 divides `n`, else 3.
    MinimumEta,
    /// The transposition class squared is identity, 3-cycles and double transpositions.
    TranspositionSquare,
    /// In `S_4` only `{[3,1], [2,2]}` multiplies to a single class.
    SingleClassInS4,
    /// In `S_5` only `{[2,1,1,1], [5]}` gives two classes.
    TwoClassesInS5,
    /// In `S_6` no product from `[3,3]·[2,2,2]` has exactly one fixed point.
    NoOneFixedPointInS6,
    /// No product of two non-identity classes is a single class.
    NeverAClass,
    /// The largest `eta(C, C)` equals the number of even classes.
    MaximalEta,
    /// `eta` does not drop when fixed points are added to both classes.
    PaddingMonotonicity,
    /// The three fixed-degree statements together.
    SmallDegrees,
    /// Seeded random trials of every construction.
    Constructions,
}

const IDS: [(Statement, &str); 11] = [
    (Statement::TwoClassPairs, "theorem_a"),
    (Statement::MinimumEta, "corollary_b"),
    (Statement::TranspositionSquare, "lemma_9"),
    (Statement::SingleClassInS4, "lemma_10"),
    (Statement::TwoClassesInS5, "remark_n5"),
    (Statement::NoOneFixedPointInS6, "remark_14"),
    (Statement::NeverAClass, "arad_herzog"),
    (Statement::MaximalEta, "max_eta"),
    (Statement::PaddingMonotonicity, "lemma_4_7_monotonicity"),
    (Statement::SmallDegrees, "small_n"),
    (Statement::Constructions, "constructions"),
];

impl Statement {
    pub const ALL: [Statement; 11] = [
        Statement::TwoClassPairs,
        Statement::MinimumEta,
        Statement::TranspositionSquare,
        Statement::SingleClassInS4,
        Statement::TwoClassesInS5,
        Statement::NoOneFixedPointInS6,
        Statement::NeverAClass,
        Statement::MaximalEta,
        Statement::PaddingMonotonicity,
        Statement::SmallDegrees,
        Statement::Constructions,
    ];

    /// Everything except the [`Statement::SmallDegrees`] bundle, which would repeat its parts.
    pub fn suite() -> impl Iterator<Item = Statement> {
        Self::ALL.into_iter().filter(|&s| s != Statement::SmallDegrees)
    }

    pub fn id(self) -> &'static str {
        IDS.iter().find(|(s, _)| *s == self).map(|(_, id)| *id).expect("every statement has an id")
    }

    /// Statements about one specific degree ignore the requested range.
    pub fn fixed_degrees(self) -> Option<(usize, usize)> {
        match self {
            Statement::SingleClassInS4 => Some((4, 4)),
            Statement::TwoClassesInS5 => Some((5, 5)),
            Statement::NoOneFixedPointInS6 => Some((6, 6)),
            Statement::SmallDegrees => Some((4, 6)),
            _ => None,
        }
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Statement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IDS.iter()
            .find(|(_, id)| *id == s)
            .map(|(st, _)| *st)
            .ok_or_else(|| {
                let known: Vec<&str> = IDS.iter().map(|(_, id)| *id).collect();
                Error::Parse(format!("unknown statement {s:?}; expected one of {}", known.join(", ")))
            })
    }
}

impl Serialize for Statement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.id())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

/// One observation compared with its expectation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub n: usize,
    pub lhs: Option<CycleType>,
    pub rhs: Option<CycleType>,
    pub observed: String,
    pub expected: String,
    pub ok: bool,
}

impl Witness {
    fn summary(n: usize, observed: impl Into<String>, expected: impl Into<String>, ok: bool) -> Self {
        Witness { n, lhs: None, rhs: None, observed: observed.into(), expected: expected.into(), ok }
    }

    fn pair(
        n: usize,
        lhs: &CycleType,
        rhs: &CycleType,
        observed: impl Into<String>,
        expected: impl Into<String>,
        ok: bool,
    ) -> Self {
        Witness {
            n,
            lhs: Some(lhs.clone()),
            rhs: Some(rhs.clone()),
            observed: observed.into(),
            expected: expected.into(),
            ok,
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] n={}", if self.ok { "ok" } else { "MISMATCH" }, self.n)?;
        if let (Some(l), Some(r)) = (&self.lhs, &self.rhs) {
            write!(f, " [{l}]·[{r}]")?;
        }
        write!(f, ": observed {}; expected {}", self.observed, self.expected)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub statement: Statement,
    pub n_range: (usize, usize),
    pub witnesses: Vec<Witness>,
    /// Skipped degrees and other remarks that do not affect the status.
    pub notes: Vec<String>,
    pub seed: Option<u64>,
    pub elapsed: Duration,
}

/// Serialized form of a report. `elapsed_ms` is only filled when timings are
/// requested, so that repeated runs produce identical output.
#[derive(Serialize)]
pub struct ReportRecord<'a> {
    pub statement: Statement,
    pub n: [usize; 2],
    pub status: Status,
    pub witnesses: &'a [Witness],
    pub notes: &'a [String],
    pub seed: Option<u64>,
    pub elapsed_ms: Option<u64>,
}

impl VerificationReport {
    fn empty(statement: Statement, n_range: (usize, usize)) -> Self {
        VerificationReport {
            statement,
            n_range,
            witnesses: Vec::new(),
            notes: Vec::new(),
            seed: None,
            elapsed: Duration::ZERO,
        }
    }

    pub fn status(&self) -> Status {
        if self.witnesses.iter().all(|w| w.ok) {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn passed(&self) -> bool {
        self.status() == Status::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &Witness> {
        self.witnesses.iter().filter(|w| !w.ok)
    }

    pub fn record(&self, timings: bool) -> ReportRecord<'_> {
        ReportRecord {
            statement: self.statement,
            n: [self.n_range.0, self.n_range.1],
            status: self.status(),
            witnesses: &self.witnesses,
            notes: &self.notes,
            seed: self.seed,
            elapsed_ms: timings.then(|| self.elapsed.as_millis() as u64),
        }
    }

    fn absorb(&mut self, part: Part) {
        self.witnesses.extend(part.witnesses);
        self.notes.extend(part.notes);
    }
}

impl Serialize for VerificationReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.record(false).serialize(s)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.n_range;
        write!(f, "{} n={lo}..{hi}: {}", self.statement, self.status())?;
        if let Some(seed) = self.seed {
            write!(f, " (seed {seed})")?;
        }
        for w in &self.witnesses {
            write!(f, "\n  {w}")?;
        }
        for note in &self.notes {
            write!(f, "\n  note: {note}")?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct Part {
    witnesses: Vec<Witness>,
    notes: Vec<String>,
}

impl Part {
    fn push(&mut self, w: Witness) {
        self.witnesses.push(w);
    }
}

/// Options for [`Verifier::run`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    pub seed: u64,
    /// Random trials per construction and degree.
    pub trials: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { seed: 0, trials: 200 }
    }
}

/// All unordered non-identity products at one degree.
struct Scan {
    n: usize,
    products: Vec<ClassProduct>,
    index: HashMap<TypePair, usize>,
    /// Failed engine comparisons and invariant checks.
    problems: Vec<Witness>,
    note: Option<String>,
}

impl Scan {
    fn product(&self, a: &CycleType, b: &CycleType) -> Option<&ClassProduct> {
        self.index.get(&TypePair::new(a.clone(), b.clone())).map(|&i| &self.products[i])
    }

    fn eta(&self, a: &CycleType, b: &CycleType) -> usize {
        if a.is_identity() || b.is_identity() {
            return 1;
        }
        self.product(a, b).expect("scan covers every pair").eta()
    }

    fn pairs_where(&self, pred: impl Fn(&ClassProduct) -> bool) -> BTreeSet<TypePair> {
        self.products
            .iter()
            .filter(|p| pred(p))
            .map(|p| TypePair::new(p.lhs.clone(), p.rhs.clone()))
            .collect()
    }

    fn attach(&self, part: &mut Part) {
        part.witnesses.extend(self.problems.iter().cloned());
        part.notes.extend(self.note.clone());
    }
}

fn list_types<'a>(types: impl IntoIterator<Item = &'a CycleType>) -> String {
    let v: Vec<String> = types.into_iter().map(|t| format!("[{t}]")).collect();
    if v.is_empty() {
        "none".into()
    } else {
        v.join(" ")
    }
}

fn list_pairs<'a>(pairs: impl IntoIterator<Item = &'a TypePair>) -> String {
    let v: Vec<String> = pairs.into_iter().map(|p| format!("{p:?}")).collect();
    if v.is_empty() {
        "none".into()
    } else {
        v.join(" ")
    }
}

fn ct(s: &str) -> CycleType {
    s.parse().expect("literal cycle type")
}

/// One witness per pair in either set; a pair passes when it is in both.
fn compare_pair_sets(
    n: usize,
    property: &str,
    observed: &BTreeSet<TypePair>,
    expected: &BTreeSet<TypePair>,
    part: &mut Part,
) {
    if observed.is_empty() && expected.is_empty() {
        part.push(Witness::summary(n, format!("no pair with {property}"), "no pair", true));
        return;
    }
    for p in observed.union(expected) {
        let (o, e) = (observed.contains(p), expected.contains(p));
        let say = |yes: bool| if yes { property.to_string() } else { format!("not {property}") };
        part.push(Witness::pair(n, &p.0, &p.1, say(o), say(e), o == e));
    }
}

/// Runs the statements of this module, caching one scan per degree.
#[derive(Debug)]
pub struct Verifier {
    algebra: ClassAlgebra,
    shadow_max_n: usize,
    scans: Mutex<HashMap<usize, Arc<ScanHandle>>>,
}

// Keeps `Scan` private while letting `Verifier` derive Debug.
struct ScanHandle(Scan);

impl fmt::Debug for ScanHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scan(n={}, {} products)", self.0.n, self.0.products.len())
    }
}

impl Default for Verifier {
    fn default() -> Self {
        Verifier::new(Limits::default())
    }
}

impl Verifier {
    pub fn new(limits: Limits) -> Self {
        Verifier { algebra: ClassAlgebra::new(limits), shadow_max_n: 8, scans: Mutex::new(HashMap::new()) }
    }

    /// Largest degree at which scans are repeated by brute force (default 8).
    pub fn with_shadow_limit(mut self, n: usize) -> Self {
        self.shadow_max_n = n;
        self
    }

    pub fn algebra(&self) -> &ClassAlgebra {
        &self.algebra
    }

    fn scan(&self, n: usize) -> Result<Arc<ScanHandle>> {
        if let Some(s) = self.scans.lock().unwrap().get(&n) {
            return Ok(Arc::clone(s));
        }
        let products = self.algebra.scan(n, Engine::Character)?;
        let mut problems: Vec<Witness> = products
            .iter()
            .filter_map(|p| {
                p.check_invariants().err().map(|e| {
                    Witness::pair(n, &p.lhs, &p.rhs, e.to_string(), "mass and parity invariants hold", false)
                })
            })
            .collect();
        let note = if n <= self.shadow_max_n {
            let brute = self.algebra.scan(n, Engine::Brute)?;
            let mut agree = 0;
            for (c, b) in products.iter().zip(&brute) {
                if c == b {
                    agree += 1;
                } else {
                    let show = |p: &ClassProduct| {
                        let v: Vec<String> =
                            p.components().iter().map(|(t, a)| format!("[{t}]x{a}")).collect();
                        v.join(" ")
                    };
                    problems.push(Witness::pair(
                        n,
                        &c.lhs,
                        &c.rhs,
                        format!("brute force {}", show(b)),
                        format!("characters {}", show(c)),
                        false,
                    ));
                }
            }
            Some(format!("n={n}: brute-force shadow scan agreed on {agree} of {} pairs", products.len()))
        } else {
            None
        };
        let index = products
            .iter()
            .enumerate()
            .map(|(i, p)| (TypePair::new(p.lhs.clone(), p.rhs.clone()), i))
            .collect();
        let scan = Arc::new(ScanHandle(Scan { n, products, index, problems, note }));
        let mut scans = self.scans.lock().unwrap();
        Ok(Arc::clone(scans.entry(n).or_insert(scan)))
    }

    fn single(&self, statement: Statement, n: usize, part: Result<Part>) -> Result<VerificationReport> {
        let start = Instant::now();
        let mut report = VerificationReport::empty(statement, (n, n));
        report.absorb(part?);
        report.elapsed = start.elapsed();
        Ok(report)
    }

    /// Every non-identity product has at least two classes.
    pub fn verify_never_a_class(&self, n: usize) -> Result<VerificationReport> {
        self.single(Statement::NeverAClass, n, self.never_a_class(n))
    }

    fn never_a_class(&self, n: usize) -> Result<Part> {
        if n < 2 {
            return Err(domain!("S_{n} has no non-identity classes"));
        }
        let scan = self.scan(n)?;
        let scan = &scan.0;
        let mut part = Part::default();
        scan.attach(&mut part);
        let single: Vec<&ClassProduct> = scan.products.iter().filter(|p| p.eta() < 2).collect();
        for p in &single {
            part.push(Witness::pair(n, &p.lhs, &p.rhs, format!("eta = {}", p.eta()), "eta >= 2", false));
        }
        if single.is_empty() {
            let min = scan.products.iter().map(ClassProduct::eta).min().unwrap_or(0);
            part.push(Witness::summary(
                n,
                format!("minimum eta {min} over {} pairs", scan.products.len()),
                "eta >= 2",
                true,
            ));
        }
        Ok(part)
    }

    /// The pairs with `eta = 2` are exactly [`exceptional_two_class_pairs`].
    pub fn verify_two_class_pairs(&self, n: usize) -> Result<VerificationReport> {
        self.single(Statement::TwoClassPairs, n, self.two_class_pairs(n))
    }

    fn two_class_pairs(&self, n: usize) -> Result<Part> {
        let expected: BTreeSet<TypePair> = exceptional_two_class_pairs(n)?.into_iter().collect();
        let scan = self.scan(n)?;
        let mut part = Part::default();
        scan.0.attach(&mut part);
        let observed = scan.0.pairs_where(|p| p.eta() == 2);
        compare_pair_sets(n, "eta = 2", &observed, &expected, &mut part);
        Ok(part)
    }

    /// The least `eta` is 2 when 2 or 3 divides `n` and 3 otherwise.
    pub fn verify_minimum_eta(&self, n: usize) -> Result<VerificationReport> {
        self.single(Statement::MinimumEta, n, self.minimum_eta(n))
    }

    fn minimum_eta(&self, n: usize) -> Result<Part> {
        if n <= 5 {
            return Err(domain!("the minimum is only classified for n > 5, got {n}"));
        }
        let scan = self.scan(n)?;
        let mut part = Part::default();
        scan.0.attach(&mut part);
        let min = min_eta_of(n, &scan.0.products);
        let expected = if n % 2 == 0 || n % 3 == 0 { 2 } else { 3 };
        part.push(Witness::summary(
            n,
            format!("minimum {} attained by {}", min.minimum, list_pairs(&min.achievers)),
            format!("minimum {expected}"),
            min.minimum == expected,
        ));
        Ok(part)
    }

    /// `[2,1^(n-2)]` squared has exactly the identity, 3-cycle and double-transposition classes.
    pub fn verify_transposition_square(&self, n: usize) -> Result<VerificationReport> {
        self.single(Statement::TranspositionSquare, n, self.transposition_square(n))
    }

    fn transposition_square(&self, n: usize) -> Result<Part> {
        if n < 4 {
            return Err(domain!("needs n >= 4 for a double transposition, got {n}"));
        }
        let t = CycleType::single_cycle(2, n)?;
        let expected: BTreeSet<CycleType> = [
            CycleType::identity(n),
            CycleType::single_cycle(3, n)?,
            CycleType::new(vec![2, 2])?.padded(n - 4),
        ]
        .into_iter()
        .collect();
        let mut part = Part::default();
        for engine in [Engine::Character, Engine::Brute] {
            let p = self.algebra.eta(&t, &t, engine)?;
            let observed: BTreeSet<CycleType> = p.component_types().cloned().collect();
            part.push(Witness::pair(
                n,
                &t,
                &t,
                format!("{engine}: eta = {}, {}", p.eta(), list_types(observed.iter().rev())),
                format!("eta = 3, {}", list_types(expected.iter().rev())),
                observed == expected,
            ));
        }
        Ok(part)
    }

    fn single_class_in_s4(&self) -> Result<Part> {
        let scan = self.scan(4)?;
        let mut part = Part::default();
        scan.0.attach(&mut part);
        let observed = scan.0.pairs_where(|p| p.eta() == 1);
        let expected = BTreeSet::from([TypePair::new(ct("3,1"), ct("2,2"))]);
        compare_pair_sets(4, "eta = 1", &observed, &expected, &mut part);
        Ok(part)
    }

    fn two_classes_in_s5(&self) -> Result<Part> {
        let scan = self.scan(5)?;
        let mut part = Part::default();
        scan.0.attach(&mut part);
        let observed = scan.0.pairs_where(|p| p.eta() == 2);
        let (a, b) = (ct("2,1,1,1"), ct("5"));
        let expected = BTreeSet::from([TypePair::new(a.clone(), b.clone())]);
        compare_pair_sets(5, "eta = 2", &observed, &expected, &mut part);
        let p = scan.0.product(&a, &b).expect("pair scanned");
        let got: Vec<&CycleType> = p.component_types().collect();
        let want = [ct("4,1"), ct("3,2")];
        part.push(Witness::pair(
            5,
            &a,
            &b,
            format!("components {}", list_types(got.iter().copied())),
            format!("components {}", list_types(&want)),
            got.iter().copied().eq(want.iter()),
        ));
        Ok(part)
    }

    fn no_one_fixed_point_in_s6(&self) -> Result<Part> {
        let scan = self.scan(6)?;
        let mut part = Part::default();
        scan.0.attach(&mut part);
        let (a, b) = (ct("3,3"), ct("2,2,2"));
        let one_fixed = |p: &ClassProduct| p.component_types().any(|t| t.fixed_point_count() == 1);
        let p = scan.0.product(&a, &b).expect("pair scanned");
        let hits: Vec<&CycleType> = p.component_types().filter(|t| t.fixed_point_count() == 1).collect();
        part.push(Witness::pair(
            6,
            &a,
            &b,
            format!("components with one fixed point: {}", list_types(hits.iter().copied())),
            "components with one fixed point: none",
            hits.is_empty(),
        ));
        // Among pairs meeting the one-fixed-point hypotheses, only this one fails.
        let hypotheses = |p: &ClassProduct| {
            (p.lhs.has_cycle_at_least(3) || p.rhs.has_cycle_at_least(3))
                && (p.lhs.is_fixed_point_free() || p.rhs.is_fixed_point_free())
        };
        let observed = scan.0.pairs_where(|p| hypotheses(p) && !one_fixed(p));
        let expected = BTreeSet::from([TypePair::new(a.clone(), b.clone())]);
        compare_pair_sets(6, "no one-fixed-point component", &observed, &expected, &mut part);
        let raised = one_fixed_point_product(&canonical_rep(&a), &canonical_rep(&b));
        part.push(Witness::pair(
            6,
            &a,
            &b,
            format!("one_fixed_point_product: {}", outcome(&raised)),
            "impossibility error",
            matches!(raised, Err(Error::Impossible(_))),
        ));
        Ok(part)
    }

    /// The fixed-degree exceptions in `S_4`, `S_5` and `S_6`.
    pub fn verify_small_degrees(&self) -> Result<VerificationReport> {
        self.run(Statement::SmallDegrees, 4, 6, &RunOptions::default())
    }

    /// The largest `eta(C, C)` equals the number of even classes and no pair exceeds it.
    pub fn verify_max_eta(&self, n: usize) -> Result<VerificationReport> {
        self.single(Statement::MaximalEta, n, self.max_eta(n))
    }

    fn max_eta(&self, n: usize) -> Result<Part> {
        if n < 5 {
            return Err(domain!("needs n >= 5, got {n}"));
        }
        let even = self.algebra.partitions(n)?.iter().filter(|t| t.is_even()).count();
        let scan = self.scan(n)?;
        let mut part = Part::default();
        scan.0.attach(&mut part);
        let diagonal = scan.0.products.iter().filter(|p| p.lhs == p.rhs);
        let best = diagonal.clone().map(ClassProduct::eta).max().unwrap_or(1);
        let achievers: Vec<&CycleType> = diagonal.filter(|p| p.eta() == best).map(|p| &p.lhs).collect();
        part.push(Witness::summary(
            n,
            format!("max eta(C, C) = {best}, attained by {}", list_types(achievers)),
            format!("{even} even classes"),
            best == even,
        ));
        let overall = scan.0.products.iter().max_by_key(|p| p.eta());
        if let Some(p) = overall {
            part.push(Witness::pair(
                n,
                &p.lhs,
                &p.rhs,
                format!("max eta over all pairs = {}", p.eta()),
                format!("at most {even}"),
                p.eta() <= even,
            ));
        }
        Ok(part)
    }

    /// `eta` at `n` is at most `eta` after padding both types by `k = 1, 2`
    /// fixed points, and strictly less when one side is fixed-point-free,
    /// the other non-trivial and `n >= 4`.
    pub fn verify_padding_monotonicity(&self, n: usize) -> Result<VerificationReport> {
        self.single(Statement::PaddingMonotonicity, n, self.padding_monotonicity(n))
    }

    fn padding_monotonicity(&self, n: usize) -> Result<Part> {
        if n < 1 {
            return Err(domain!("needs n >= 1"));
        }
        let types = self.algebra.partitions(n)?;
        let base = self.scan(n)?;
        let mut part = Part::default();
        base.0.attach(&mut part);
        let (mut checked, mut strict) = (0usize, 0usize);
        for k in 1..=2 {
            let padded = self.scan(n + k)?;
            padded.0.attach(&mut part);
            for (i, a) in types.iter().enumerate() {
                for b in &types[i..] {
                    let (before, after) = (base.0.eta(a, b), padded.0.eta(&a.padded(k), &b.padded(k)));
                    let must_grow = n >= 4
                        && ((a.is_fixed_point_free() && !b.is_identity())
                            || (b.is_fixed_point_free() && !a.is_identity()));
                    checked += 1;
                    strict += must_grow as usize;
                    let ok = if must_grow { after > before } else { after >= before };
                    if !ok {
                        part.push(Witness::pair(
                            n,
                            a,
                            b,
                            format!("eta {before} at n={n}, {after} at n={}", n + k),
                            if must_grow { "strict increase" } else { "no decrease" },
                            false,
                        ));
                    }
                }
            }
        }
        if part.witnesses.iter().all(|w| w.ok) {
            part.push(Witness::summary(
                n,
                format!("{checked} padded pairs checked, {strict} of them strictly"),
                "no decrease, strict growth where required",
                true,
            ));
        }
        if n < 4 {
            part.notes.push(format!("n={n}: strict growth is only claimed from n = 4"));
        }
        Ok(part)
    }

    /// Seeded random trials of every construction at degree `n`.
    pub fn verify_constructions(&self, n: usize, trials: usize, seed: u64) -> Result<VerificationReport> {
        let start = Instant::now();
        let mut report = VerificationReport::empty(Statement::Constructions, (n, n));
        report.absorb(self.constructions(n, trials, seed)?);
        report.absorb(documented_exceptions());
        report.seed = Some(seed);
        report.elapsed = start.elapsed();
        Ok(report)
    }

    fn constructions(&self, n: usize, trials: usize, seed: u64) -> Result<Part> {
        if n < 4 {
            return Err(domain!("constructions need n >= 4, got {n}"));
        }
        let types = self.algebra.partitions(n)?;
        let parts: Vec<Part> = Construction::ALL
            .par_iter()
            .enumerate()
            .map(|(idx, &c)| construction_trials(c, n, &types, trials, seed, idx as u64))
            .collect::<Result<_>>()?;
        let mut out = Part::default();
        for p in parts {
            out.witnesses.extend(p.witnesses);
            out.notes.extend(p.notes);
        }
        Ok(out)
    }

    fn part_for(&self, statement: Statement, n: usize, opts: &RunOptions) -> Result<Part> {
        match statement {
            Statement::TwoClassPairs => self.two_class_pairs(n),
            Statement::MinimumEta => self.minimum_eta(n),
            Statement::TranspositionSquare => self.transposition_square(n),
            Statement::NeverAClass => self.never_a_class(n),
            Statement::MaximalEta => self.max_eta(n),
            Statement::PaddingMonotonicity => self.padding_monotonicity(n),
            Statement::Constructions => self.constructions(n, opts.trials, opts.seed),
            Statement::SingleClassInS4 => self.single_class_in_s4(),
            Statement::TwoClassesInS5 => self.two_classes_in_s5(),
            Statement::NoOneFixedPointInS6 => self.no_one_fixed_point_in_s6(),
            Statement::SmallDegrees => {
                let mut part = Part::default();
                for p in [self.single_class_in_s4()?, self.two_classes_in_s5()?, self.no_one_fixed_point_in_s6()?] {
                    part.witnesses.extend(p.witnesses);
                    part.notes.extend(p.notes);
                }
                Ok(part)
            }
        }
    }

    /// Runs `statement` for every `n` in `from..=to` and merges the results.
    ///
    /// Degrees outside a statement's domain are skipped with a note; other
    /// errors (resource bounds in particular) are returned. Fixed-degree
    /// statements ignore the range.
    pub fn run(&self, statement: Statement, from: usize, to: usize, opts: &RunOptions) -> Result<VerificationReport> {
        if from > to {
            return Err(domain!("empty range {from}..{to}"));
        }
        let start = Instant::now();
        let range = statement.fixed_degrees().unwrap_or((from, to));
        let mut report = VerificationReport::empty(statement, range);
        let degrees: Vec<usize> = if statement.fixed_degrees().is_some() {
            vec![range.0]
        } else {
            (from..=to).collect()
        };
        for n in degrees {
            match self.part_for(statement, n, opts) {
                Ok(part) => report.absorb(part),
                Err(Error::Domain(msg)) => report.notes.push(format!("n={n}: skipped, {msg}")),
                Err(e) => return Err(e),
            }
        }
        if statement == Statement::Constructions {
            report.absorb(documented_exceptions());
            report.seed = Some(opts.seed);
        }
        dedup_notes(&mut report.notes);
        report.elapsed = start.elapsed();
        Ok(report)
    }
}

fn dedup_notes(notes: &mut Vec<String>) {
    let mut seen = BTreeSet::new();
    notes.retain(|n| seen.insert(n.clone()));
}

fn outcome<T>(r: &Result<T>) -> String {
    match r {
        Ok(_) => "succeeded".into(),
        Err(e) => format!("error: {e}"),
    }
}

/// The two pairs where a construction is known to be impossible.
fn documented_exceptions() -> Part {
    let mut part = Part::default();
    let cases = [
        (Construction::Avoid, 4, "3,1", "2,2"),
        (Construction::OneFixedPoint, 6, "3,3", "2,2,2"),
    ];
    for (c, n, a, b) in cases {
        let (ta, tb) = (ct(a), ct(b));
        debug_assert_eq!(ta.n(), n);
        let r = c.run(&canonical_rep(&ta), &canonical_rep(&tb), None);
        part.push(Witness::pair(
            n,
            &ta,
            &tb,
            format!("{c}: {}", outcome(&r)),
            "impossibility error",
            matches!(r, Err(Error::Impossible(_))),
        ));
    }
    part
}

fn random_conjugate(t: &CycleType, rng: &mut ChaCha8Rng) -> Permutation {
    let mut images: Vec<usize> = (0..t.n()).collect();
    images.shuffle(rng);
    let g = Permutation::from_zero_based(images);
    canonical_rep(t).conjugate_unchecked(&g)
}

fn is_pair(a: &CycleType, b: &CycleType, x: &str, y: &str) -> bool {
    let (x, y) = (ct(x), ct(y));
    (*a == x && *b == y) || (*a == y && *b == x)
}

/// Ordered type pairs meeting the hypotheses of `c` at degree `n`.
fn admissible(c: Construction, types: &[CycleType]) -> Vec<(CycleType, CycleType)> {
    let mut out = Vec::new();
    for a in types {
        for b in types {
            let nontrivial = !a.is_identity() && !b.is_identity();
            let one_fpf = a.is_fixed_point_free() || b.is_fixed_point_free();
            let ok = match c {
                Construction::Avoid => a.fixed_point_count() + b.fixed_point_count() <= a.n(),
                Construction::Derangement => a.is_fixed_point_free(),
                Construction::Shrink => unreachable!("depends on m"),
                Construction::AtLeastOne => nontrivial,
                Construction::OneFixedPoint => {
                    nontrivial && one_fpf && (a.has_cycle_at_least(3) || b.has_cycle_at_least(3))
                }
                Construction::TwoFixedPoints => {
                    nontrivial
                        && one_fpf
                        && ((a.has_cycle_at_least(3) && b.has_cycle_at_least(3))
                            || (a.moved_point_count() >= 4 && b.moved_point_count() >= 4)
                            || (a.contains_part(2) && b.contains_part(2)))
                }
            };
            if ok {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

/// Whether the documented impossibility applies to these input types.
fn expect_impossible(c: Construction, a: &CycleType, b: &CycleType, m: usize) -> bool {
    match c {
        Construction::Avoid => a.n() == 4 && is_pair(a, b, "3,1", "2,2"),
        // The fixed-point-free side is inverted before avoidance.
        Construction::Derangement => a.n() == 4 && is_pair(a, b, "3,1", "2,2"),
        Construction::Shrink => m == 4 && is_pair(a, b, "3,1", "2,2"),
        Construction::OneFixedPoint => a.n() == 6 && is_pair(a, b, "3,3", "2,2,2"),
        Construction::AtLeastOne | Construction::TwoFixedPoints => false,
    }
}

fn postcondition_holds(
    c: Construction,
    alpha: &Permutation,
    beta: &Permutation,
    m: usize,
    w: &crate::constructive::ConjugatorWitness,
) -> std::result::Result<(), String> {
    w.verify(alpha, beta).map_err(|e| e.to_string())?;
    let n = alpha.n();
    let fixed = w.fixed_point_count();
    let ok = match c {
        Construction::Avoid => {
            let conj = alpha.conjugate_unchecked(&w.sigma);
            (1..=n).all(|i| conj.apply(i) != beta.apply(i))
        }
        Construction::Derangement => fixed == 0,
        Construction::Shrink => fixed == n - m - 1,
        Construction::AtLeastOne => fixed >= 1,
        Construction::OneFixedPoint => fixed == 1,
        Construction::TwoFixedPoints => fixed >= 2,
    };
    if ok {
        Ok(())
    } else {
        Err(format!("sigma = {}, product = {} fixes {:?}", w.sigma, w.product, w.fixed_points))
    }
}

const MAX_FAILURE_WITNESSES: usize = 5;

fn construction_trials(
    c: Construction,
    n: usize,
    types: &[CycleType],
    trials: usize,
    seed: u64,
    stream: u64,
) -> Result<Part> {
    let mut part = Part::default();
    let min_n = match c {
        Construction::Shrink => 5,
        Construction::OneFixedPoint => 6,
        _ => 4,
    };
    if n < min_n {
        part.notes.push(format!("n={n}: {c} skipped, it needs n >= {min_n}"));
        return Ok(part);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((n as u64) << 8) | stream);

    // Shrink samples m first, so its admissible pairs depend on m.
    let mut by_m: HashMap<usize, Vec<(CycleType, CycleType)>> = HashMap::new();
    let fixed = if c == Construction::Shrink { Vec::new() } else { admissible(c, types) };
    if c != Construction::Shrink && fixed.is_empty() {
        part.notes.push(format!("n={n}: no admissible inputs for {c}"));
        return Ok(part);
    }

    let (mut passed, mut impossible, mut failed) = (0usize, 0usize, 0usize);
    for _ in 0..trials {
        let (m, a, b) = if c == Construction::Shrink {
            let m = rng.random_range(4..n);
            let pool = match by_m.entry(m) {
                std::collections::hash_map::Entry::Occupied(e) => e.into_mut(),
                std::collections::hash_map::Entry::Vacant(e) => {
                    let small = crate::partitions::partitions_of(m)?;
                    let pairs = small
                        .iter()
                        .filter(|a| a.is_fixed_point_free())
                        .flat_map(|a| {
                            small.iter().filter(|b| !b.is_identity()).map(move |b| (a.clone(), b.clone()))
                        })
                        .collect();
                    e.insert(pairs)
                }
            };
            let (a, b) = pool[rng.random_range(0..pool.len())].clone();
            (m, a, b)
        } else {
            let (a, b) = fixed[rng.random_range(0..fixed.len())].clone();
            (n, a, b)
        };
        let (alpha, beta) = (random_conjugate(&a, &mut rng), random_conjugate(&b, &mut rng));
        let (alpha, beta) = if c == Construction::Shrink {
            (alpha.embed(n)?, beta.embed(n)?)
        } else {
            (alpha, beta)
        };
        let result = c.run(&alpha, &beta, Some(m));
        let verdict = match (&result, expect_impossible(c, &a, &b, m)) {
            (Err(Error::Impossible(_)), true) => {
                impossible += 1;
                Ok(())
            }
            (Ok(w), false) => postcondition_holds(c, &alpha, &beta, m, w),
            (Ok(_), true) => Err("succeeded where an impossibility error was expected".into()),
            (Err(e), _) => Err(format!("error: {e}")),
        };
        match verdict {
            Ok(()) => passed += 1,
            Err(msg) => {
                failed += 1;
                if failed <= MAX_FAILURE_WITNESSES {
                    let expected = if c == Construction::Shrink {
                        format!("{} (m = {m})", c.postcondition())
                    } else {
                        c.postcondition().to_string()
                    };
                    part.push(Witness::pair(
                        n,
                        &a,
                        &b,
                        format!("{c}({alpha}, {beta}): {msg}"),
                        expected,
                        false,
                    ));
                }
            }
        }
    }
    part.push(Witness::summary(
        n,
        format!("{c}: {passed}/{trials} trials hold, {impossible} raised the documented impossibility"),
        format!("{c}: {}", c.postcondition()),
        failed == 0,
    ));
    Ok(part)
}

fn shared() -> &'static Verifier {
    static SHARED: OnceLock<Verifier> = OnceLock::new();
    SHARED.get_or_init(Verifier::default)
}

pub fn verify_never_a_class(n: usize) -> Result<VerificationReport> {
    shared().verify_never_a_class(n)
}

pub fn verify_two_class_pairs(n: usize) -> Result<VerificationReport> {
    shared().verify_two_class_pairs(n)
}

pub fn verify_minimum_eta(n: usize) -> Result<VerificationReport> {
    shared().verify_minimum_eta(n)
}

pub fn verify_small_degrees() -> Result<VerificationReport> {
    shared().verify_small_degrees()
}

pub fn verify_max_eta(n: usize) -> Result<VerificationReport> {
    shared().verify_max_eta(n)
}

pub fn verify_constructions(n: usize, trials: usize, seed: u64) -> Result<VerificationReport> {
    shared().verify_constructions(n, trials, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructive::avoid_conjugator;

    #[test]
    fn statement_ids_round_trip() {
        for s in Statement::ALL {
            assert_eq!(s.id().parse::<Statement>().unwrap(), s);
        }
        assert!("theorem_b".parse::<Statement>().is_err());
        assert_eq!(Statement::suite().count(), 10);
    }

    #[test]
    fn never_a_class() {
        let v = Verifier::default();
        assert!(v.verify_never_a_class(6).unwrap().passed());
        assert!(v.verify_never_a_class(7).unwrap().passed());
        let r = v.verify_never_a_class(4).unwrap();
        assert!(!r.passed());
        let bad: Vec<_> = r.failures().collect();
        assert_eq!(bad.len(), 1);
        assert_eq!(
            (bad[0].lhs.clone().unwrap(), bad[0].rhs.clone().unwrap()),
            (ct("3,1"), ct("2,2"))
        );
    }

    #[test]
    fn two_class_pairs() {
        let v = Verifier::default();
        let r = v.verify_two_class_pairs(6).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.witnesses.iter().filter(|w| w.lhs.is_some()).count(), 3);
        let r = v.verify_two_class_pairs(7).unwrap();
        assert!(r.passed());
        assert_eq!(r.witnesses[0].observed, "no pair with eta = 2");
        assert!(v.verify_two_class_pairs(5).is_err());
    }

    #[test]
    fn minimum_eta() {
        let v = Verifier::default();
        for n in [6, 7, 8, 9] {
            assert!(v.verify_minimum_eta(n).unwrap().passed(), "n={n}");
        }
    }

    #[test]
    fn small_degrees() {
        let r = Verifier::default().verify_small_degrees().unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.n_range, (4, 6));
    }

    #[test]
    fn max_eta() {
        let v = Verifier::default();
        for n in 5..=7 {
            let r = v.verify_max_eta(n).unwrap();
            assert!(r.passed(), "{r}");
        }
        let r = v.verify_max_eta(5).unwrap();
        assert!(r.witnesses[0].expected.starts_with("4 even"));
    }

    #[test]
    fn monotonicity() {
        let v = Verifier::default();
        for n in 1..=5 {
            let r = v.verify_padding_monotonicity(n).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn constructions_are_deterministic() {
        let v = Verifier::default();
        let a = v.verify_constructions(7, 50, 3).unwrap();
        let b = v.verify_constructions(7, 50, 3).unwrap();
        assert!(a.passed(), "{a}");
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn constructions_skip_below_their_domain() {
        let r = Verifier::default().verify_constructions(5, 30, 0).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.notes.iter().any(|n| n.contains("one_fixed_point_product skipped")));
    }

    #[test]
    fn run_merges_and_skips() {
        let v = Verifier::default();
        let r = v.run(Statement::MinimumEta, 4, 8, &RunOptions::default()).unwrap();
        assert!(r.passed());
        assert_eq!(r.n_range, (4, 8));
        assert_eq!(r.notes.iter().filter(|n| n.contains("skipped")).count(), 2);
        assert!(r.seed.is_none());
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["statement"], "corollary_b");
        assert_eq!(json["n"], serde_json::json!([4, 8]));
        assert_eq!(json["status"], "pass");
        assert!(json["elapsed_ms"].is_null());
        assert!(v.run(Statement::MinimumEta, 8, 4, &RunOptions::default()).is_err());
    }

    #[test]
    fn status_follows_witnesses() {
        let mut r = VerificationReport::empty(Statement::MaximalEta, (5, 5));
        assert!(r.passed());
        r.witnesses.push(Witness::summary(5, "a", "a", true));
        assert!(r.passed());
        r.witnesses.push(Witness::summary(5, "a", "b", false));
        assert_eq!(r.status(), Status::Fail);
        assert!(r.record(true).elapsed_ms.is_some());
    }

    #[test]
    fn documented_exceptions_raise() {
        assert!(documented_exceptions().witnesses.iter().all(|w| w.ok));
        assert!(matches!(
            avoid_conjugator(&canonical_rep(&ct("3,1")), &canonical_rep(&ct("2,2"))),
            Err(Error::Impossible(_))
        ));
    }
}
