//! Explicit conjugators that control the fixed points of `alpha^sigma · beta`.
//!
//! All products use the crate convention: `alpha^sigma · beta` maps `i` to
//! `alpha^sigma(beta(i))`, so `i` is fixed exactly when
//! `(alpha^-1)^sigma(i) = beta(i)`. Most constructions therefore work with
//! `gamma = alpha^-1` and control the set of points where `gamma^sigma` agrees
//! with `beta`.
//!
//! The central tool is the avoidance induction: walking `k = 1..n`, whenever
//! the current conjugate agrees with `beta` at `k`, conjugate once more by a
//! transposition `(k t)` with `t` chosen outside a small forbidden set. The
//! agreement at `k` is removed and no earlier point is disturbed.
//!
//! Every witness is re-checked before it is returned. A failed check is an
//! [`Error::Invariant`].

use std::fmt;

use serde::Serialize;

use crate::error::{domain, invariant, Error, Result};
use crate::partitions::{partitions_of, CycleType};
use crate::permutations::{conjugator_between, enumerate_class, Permutation};

/// A conjugator `sigma` together with the product `alpha^sigma · beta`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugatorWitness {
    #[serde(serialize_with = "display_perm")]
    pub sigma: Permutation,
    #[serde(serialize_with = "display_perm")]
    pub product: Permutation,
    pub fixed_points: Vec<usize>,
    /// Which branch of the construction produced `sigma`.
    pub route: String,
}

fn display_perm<S: serde::Serializer>(p: &Permutation, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(p)
}

impl ConjugatorWitness {
    fn new(alpha: &Permutation, beta: &Permutation, sigma: Permutation, route: &str) -> Self {
        let product = alpha.conjugate_unchecked(&sigma).compose_unchecked(beta);
        let fixed_points = product.fixed_points();
        ConjugatorWitness { sigma, product, fixed_points, route: route.to_string() }
    }

    /// Recomputes the product from scratch and compares.
    pub fn verify(&self, alpha: &Permutation, beta: &Permutation) -> Result<()> {
        let product = alpha.conjugate(&self.sigma)?.compose(beta)?;
        if product != self.product {
            return Err(invariant!("witness product {} does not match {}", self.product, product));
        }
        if product.fixed_points() != self.fixed_points {
            return Err(invariant!("witness fixed points are stale"));
        }
        Ok(())
    }

    pub fn fixed_point_count(&self) -> usize {
        self.fixed_points.len()
    }
}

impl fmt::Display for ConjugatorWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "sigma = {}, product = {}, fixed points = {:?}",
            self.sigma, self.product, self.fixed_points
        )
    }
}

fn same_degree(alpha: &Permutation, beta: &Permutation) -> Result<usize> {
    if alpha.n() != beta.n() {
        return Err(domain!("alpha is in S_{} but beta is in S_{}", alpha.n(), beta.n()));
    }
    Ok(alpha.n())
}

fn unordered_types_are(a: &Permutation, b: &Permutation, x: &str, y: &str) -> bool {
    let (ta, tb) = (a.cycle_type().to_string(), b.cycle_type().to_string());
    (ta == x && tb == y) || (ta == y && tb == x)
}

/// Every element of `S_n`, class by class.
fn all_of_degree(n: usize) -> Result<impl Iterator<Item = Permutation>> {
    let classes = partitions_of(n)?
        .iter()
        .map(enumerate_class)
        .collect::<Result<Vec<_>>>()?;
    Ok(classes.into_iter().flatten())
}

/// Runs the avoidance induction on `current` for `k = from..=n`.
///
/// On success returns `rho` such that `current^rho` differs from `beta` at
/// every `k >= from`, and agrees with `current` wherever `current` already
/// had the prescribed behaviour before `from`, provided the caller's
/// normalisation keeps those points out of reach of the transpositions.
/// Returns `None` when no admissible `t` exists.
fn avoidance_induction(
    current: &Permutation,
    beta: &Permutation,
    from: usize,
    forbidden: &[usize],
) -> Option<Permutation> {
    let n = current.n();
    let beta_inv = beta.inverse();
    let mut cur = current.clone();
    let mut rho = Permutation::identity(n);
    for k in from..=n {
        if cur.apply(k) != beta.apply(k) {
            continue;
        }
        let t = if cur.apply(k) == k {
            // Both fix k. Any t moved by both will do; such a t exists when
            // the fixed-point counts add up to at most n.
            (1..=n).find(|&t| !forbidden.contains(&t) && cur.apply(t) != t && beta.apply(t) != t)
        } else {
            let cur_inv = cur.inverse();
            let excluded = [
                cur.apply(beta_inv.apply(k)),
                beta.apply(cur_inv.apply(k)),
                cur.apply(k),
                k,
            ];
            (1..=n).find(|t| !excluded.contains(t) && !forbidden.contains(t))
        }?;
        let swap = Permutation::transposition(n, k, t).expect("k != t");
        cur = cur.conjugate_unchecked(&swap);
        rho = rho.compose_unchecked(&swap);
        debug_assert!((from..=k).all(|i| cur.apply(i) != beta.apply(i)));
    }
    Some(rho)
}

/// Conjugator `sigma` with `alpha^sigma(i) != beta(i)` for every `i`.
///
/// Requires `n >= 4` and `r + s <= n`, where `r`, `s` are the fixed-point
/// counts. For `n = 4` the pair of types `{[3,1], [2,2]}` admits no such
/// `sigma`; other `n = 4` inputs fall back to exhaustive search when the
/// induction gets stuck.
pub fn avoid_conjugator(alpha: &Permutation, beta: &Permutation) -> Result<Permutation> {
    let n = same_degree(alpha, beta)?;
    if n < 4 {
        return Err(domain!("avoidance needs n >= 4, got {n}"));
    }
    let (r, s) = (alpha.fixed_point_count(), beta.fixed_point_count());
    if r + s > n {
        return Err(domain!("alpha and beta fix {r} + {s} points, more than n = {n}"));
    }
    if n == 4 && unordered_types_are(alpha, beta, "3,1", "2,2") {
        return Err(Error::Impossible(format!(
            "in S_4 every conjugate of {alpha} agrees with {beta} somewhere \
             (the class pair {{3,1}}, {{2,2}} is the known exception)"
        )));
    }
    let sigma = match avoidance_induction(alpha, beta, 1, &[]) {
        Some(sigma) => sigma,
        None if n == 4 => all_of_degree(n)?
            .find(|g| {
                let c = alpha.conjugate_unchecked(g);
                (1..=n).all(|i| c.apply(i) != beta.apply(i))
            })
            .ok_or_else(|| invariant!("exhaustive search found no avoiding conjugator in S_4"))?,
        None => return Err(invariant!("avoidance induction stalled for {alpha} vs {beta}")),
    };
    let c = alpha.conjugate_unchecked(&sigma);
    if let Some(i) = (1..=n).find(|&i| c.apply(i) == beta.apply(i)) {
        return Err(invariant!("conjugate {c} still agrees with {beta} at {i}"));
    }
    Ok(sigma)
}

/// A fixed-point-free product `alpha^sigma · beta` for fixed-point-free `alpha`.
pub fn derangement_product(alpha: &Permutation, beta: &Permutation) -> Result<ConjugatorWitness> {
    let n = same_degree(alpha, beta)?;
    if n < 4 {
        return Err(domain!("needs n >= 4, got {n}"));
    }
    if !alpha.is_fixed_point_free() {
        return Err(domain!("alpha = {alpha} has fixed points {:?}", alpha.fixed_points()));
    }
    let sigma = avoid_conjugator(&alpha.inverse(), beta)?;
    let w = ConjugatorWitness::new(alpha, beta, sigma, "avoidance against alpha^-1");
    if w.fixed_point_count() != 0 {
        return Err(invariant!("product {} is not fixed-point-free", w.product));
    }
    Ok(w)
}

/// For `alpha, beta` in `S_m` (`alpha` fixed-point-free, `beta != e`) viewed
/// in `S_n`, `n > m`, a product with exactly `n - m - 1` fixed points.
///
/// The inputs may be given in degree `m` or already embedded in degree `n`.
pub fn shrink_fixed_points(
    alpha: &Permutation,
    beta: &Permutation,
    m: usize,
    n: usize,
) -> Result<ConjugatorWitness> {
    if m < 4 {
        return Err(domain!("needs m >= 4, got {m}"));
    }
    if n <= m {
        return Err(domain!("needs n > m, got n = {n}, m = {m}"));
    }
    let lift = |p: &Permutation, name: &str| -> Result<(Permutation, Permutation)> {
        if p.n() == m {
            Ok((p.clone(), p.embed(n)?))
        } else if p.n() == n {
            Ok((p.restrict(m).map_err(|e| domain!("{name}: {e}"))?, p.clone()))
        } else {
            Err(domain!("{name} must lie in S_{m} or S_{n}, not S_{}", p.n()))
        }
    };
    let (alpha_m, alpha_n) = lift(alpha, "alpha")?;
    let (beta_m, beta_n) = lift(beta, "beta")?;
    if !alpha_m.is_fixed_point_free() {
        return Err(domain!("alpha must move every point of 1..={m}"));
    }
    if beta_m.is_identity() {
        return Err(domain!("beta must be non-trivial"));
    }
    let base = derangement_product(&alpha_m, &beta_m)?;
    // Moving the point p of beta to m + 1 inside alpha^sigma breaks up the
    // derangement on 1..=m without creating fixed points there.
    let p = beta_m.moved_points()[0];
    let swap = Permutation::transposition(n, p, m + 1)?;
    let sigma = base.sigma.embed(n)?.compose_unchecked(&swap);
    let w = ConjugatorWitness::new(&alpha_n, &beta_n, sigma, "derangement on 1..=m, then (p m+1)");
    let expected: Vec<usize> = (m + 2..=n).collect();
    if w.fixed_points != expected {
        return Err(invariant!(
            "product {} fixes {:?}, expected {:?}",
            w.product,
            w.fixed_points,
            expected
        ));
    }
    Ok(w)
}

/// A prescribed path `p(points[0]) = points[1]`, ... inside one cycle.
/// A closed chain must be a whole cycle of exactly its length.
struct Chain {
    points: Vec<usize>,
    closed: bool,
}

fn open(points: &[usize]) -> Chain {
    Chain { points: points.to_vec(), closed: false }
}

fn closed(points: &[usize]) -> Chain {
    Chain { points: points.to_vec(), closed: true }
}

/// A permutation of type `t` containing every chain, or `None` if the chains
/// cannot be packed into the cycles of `t`.
fn realize(t: &CycleType, chains: &[Chain]) -> Option<Permutation> {
    let lengths = t.parts();
    let mut assignment = vec![usize::MAX; chains.len()];
    let mut load = vec![0usize; lengths.len()];
    let mut sealed = vec![false; lengths.len()];

    fn place(
        c: usize,
        chains: &[Chain],
        lengths: &[usize],
        assignment: &mut [usize],
        load: &mut [usize],
        sealed: &mut [bool],
    ) -> bool {
        if c == chains.len() {
            return true;
        }
        let len = chains[c].points.len();
        for cyc in 0..lengths.len() {
            let fits = if chains[c].closed {
                load[cyc] == 0 && lengths[cyc] == len
            } else {
                !sealed[cyc] && load[cyc] + len <= lengths[cyc]
            };
            if !fits {
                continue;
            }
            assignment[c] = cyc;
            load[cyc] += len;
            sealed[cyc] = chains[c].closed;
            if place(c + 1, chains, lengths, assignment, load, sealed) {
                return true;
            }
            load[cyc] -= len;
            sealed[cyc] = false;
        }
        false
    }

    if !place(0, chains, lengths, &mut assignment, &mut load, &mut sealed) {
        return None;
    }
    let n = t.n();
    let mut used = vec![false; n + 1];
    for chain in chains {
        for &p in &chain.points {
            debug_assert!(!used[p], "chains overlap at {p}");
            used[p] = true;
        }
    }
    let mut spare = (1..=n).filter(|&p| !used[p]);
    let cycles: Vec<Vec<usize>> = lengths
        .iter()
        .enumerate()
        .map(|(cyc, &len)| {
            let mut cycle: Vec<usize> = chains
                .iter()
                .zip(&assignment)
                .filter(|(_, &a)| a == cyc)
                .flat_map(|(ch, _)| ch.points.iter().copied())
                .collect();
            while cycle.len() < len {
                cycle.push(spare.next().expect("enough points"));
            }
            cycle
        })
        .collect();
    let p = Permutation::from_cycles(n, &cycles).ok()?;
    debug_assert_eq!(p.cycle_type(), *t);
    Some(p)
}

/// Conjugator taking `p` to a permutation of the same type that contains the chains.
fn conjugator_for(p: &Permutation, chains: &[Chain]) -> Result<(Permutation, Permutation)> {
    let target = realize(&p.cycle_type(), chains)
        .ok_or_else(|| invariant!("cannot place the prescribed chains in {p}"))?;
    let g = conjugator_between(p, &target)?;
    Ok((g, target))
}

/// A product `alpha^sigma · beta` fixing at least one point; both must be non-trivial.
pub fn at_least_one_fixed_point(alpha: &Permutation, beta: &Permutation) -> Result<ConjugatorWitness> {
    same_degree(alpha, beta)?;
    if alpha.is_identity() || beta.is_identity() {
        return Err(domain!("alpha and beta must both be non-trivial"));
    }
    // With q = beta(p), ask for alpha^sigma(q) = p; then the product fixes p.
    let p = beta.moved_points()[0];
    let q = beta.apply(p);
    let (sigma, _) = conjugator_for(alpha, &[open(&[q, p])])?;
    let w = ConjugatorWitness::new(alpha, beta, sigma, "alpha^sigma undoes beta at its first moved point");
    if !w.fixed_points.contains(&p) {
        return Err(invariant!("product {} does not fix {p}", w.product));
    }
    Ok(w)
}

/// A product with exactly one fixed point.
///
/// Hypotheses: `n >= 6`, both non-trivial, one of them has a cycle of length
/// at least 3 and one of them is fixed-point-free. For `n = 6` the class
/// pair `{[3,3], [2,2,2]}` is impossible; other `n = 6` inputs fall back to
/// exhaustive search if the induction gets stuck.
pub fn one_fixed_point_product(alpha: &Permutation, beta: &Permutation) -> Result<ConjugatorWitness> {
    let n = same_degree(alpha, beta)?;
    if n < 6 {
        return Err(domain!("needs n >= 6, got {n}"));
    }
    if alpha.is_identity() || beta.is_identity() {
        return Err(domain!("alpha and beta must both be non-trivial"));
    }
    let (ta, tb) = (alpha.cycle_type(), beta.cycle_type());
    let (long_a, long_b) = (ta.has_cycle_at_least(3), tb.has_cycle_at_least(3));
    if !long_a && !long_b {
        return Err(domain!("neither {alpha} nor {beta} has a cycle of length >= 3"));
    }
    if !ta.is_fixed_point_free() && !tb.is_fixed_point_free() {
        return Err(domain!("neither {alpha} nor {beta} is fixed-point-free"));
    }
    if n == 6 && unordered_types_are(alpha, beta, "3,3", "2,2,2") {
        return Err(Error::Impossible(format!(
            "no conjugate product of {alpha} and {beta} in S_6 has exactly one fixed point \
             (the class pair {{3,3}}, {{2,2,2}} is the known exception)"
        )));
    }

    // Normalise so that beta~(1) = 2 and alpha'(2) = 1: the product fixes 1
    // and moves 2. With beta~(1) = 2, transpositions (k t) with k, t >= 3
    // never disturb the agreement at 1.
    let (beta_chains, alpha_chains, route) = if long_a && long_b {
        (vec![open(&[1, 2, 4])], vec![open(&[3, 2, 1])], "both have long cycles")
    } else if long_a {
        (vec![closed(&[1, 2])], vec![open(&[2, 1, 3])], "only alpha has a long cycle")
    } else {
        (vec![open(&[3, 1, 2])], vec![closed(&[1, 2])], "only beta has a long cycle")
    };
    let (g, beta_norm) = conjugator_for(beta, &beta_chains)?;
    let (sigma0, alpha_norm) = conjugator_for(alpha, &alpha_chains)?;
    let g_inv = g.inverse();

    let induced = avoidance_induction(&alpha_norm.inverse(), &beta_norm, 3, &[1, 2]).map(|rho| {
        let sigma = sigma0.compose_unchecked(&rho).compose_unchecked(&g_inv);
        ConjugatorWitness::new(alpha, beta, sigma, route)
    });
    let w = match induced {
        Some(w) => w,
        None if n == 6 => all_of_degree(n)?
            .map(|sigma| ConjugatorWitness::new(alpha, beta, sigma, "exhaustive search in S_6"))
            .find(|w| w.fixed_point_count() == 1)
            .ok_or_else(|| invariant!("no one-fixed-point product for {alpha}, {beta} in S_6"))?,
        None => return Err(invariant!("avoidance induction stalled for {alpha}, {beta}")),
    };
    if w.fixed_point_count() != 1 {
        return Err(invariant!("product {} fixes {:?}", w.product, w.fixed_points));
    }
    Ok(w)
}

/// A product with at least two fixed points.
///
/// Hypotheses: `n >= 4`, both non-trivial, one fixed-point-free, and one of
/// (i) both have a cycle of length >= 3, (ii) each moves at least 4 points,
/// (iii) both contain a transposition.
pub fn two_fixed_point_product(alpha: &Permutation, beta: &Permutation) -> Result<ConjugatorWitness> {
    let n = same_degree(alpha, beta)?;
    if n < 4 {
        return Err(domain!("needs n >= 4, got {n}"));
    }
    if alpha.is_identity() || beta.is_identity() {
        return Err(domain!("alpha and beta must both be non-trivial"));
    }
    let (ta, tb) = (alpha.cycle_type(), beta.cycle_type());
    if !ta.is_fixed_point_free() && !tb.is_fixed_point_free() {
        return Err(domain!("neither {alpha} nor {beta} is fixed-point-free"));
    }
    let case_i = ta.has_cycle_at_least(3) && tb.has_cycle_at_least(3);
    let case_ii = ta.moved_point_count() >= 4 && tb.moved_point_count() >= 4;
    let case_iii = ta.contains_part(2) && tb.contains_part(2);
    // beta~ and alpha' chosen so that alpha'·beta~ fixes 1 and 3, or 1 and 2.
    let (beta_chains, alpha_chains, route) = if case_i {
        (vec![open(&[3, 1, 2])], vec![open(&[2, 1, 3])], "case (i): fixes 1 and 3")
    } else if case_ii {
        (
            vec![open(&[1, 2]), open(&[3, 4])],
            vec![open(&[2, 1]), open(&[4, 3])],
            "case (ii): fixes 1 and 3",
        )
    } else if case_iii {
        (vec![closed(&[1, 2])], vec![closed(&[1, 2])], "case (iii): fixes 1 and 2")
    } else {
        return Err(domain!(
            "no case applies: not both with a cycle of length >= 3 ([{ta}], [{tb}]), \
             not both moving >= 4 points ({} and {}), not both containing a transposition",
            ta.moved_point_count(),
            tb.moved_point_count()
        ));
    };
    let (g, _) = conjugator_for(beta, &beta_chains)?;
    let (sigma0, _) = conjugator_for(alpha, &alpha_chains)?;
    let sigma = sigma0.compose_unchecked(&g.inverse());
    let w = ConjugatorWitness::new(alpha, beta, sigma, route);
    if w.fixed_point_count() < 2 {
        return Err(invariant!("product {} fixes only {:?}", w.product, w.fixed_points));
    }
    Ok(w)
}

/// The constructions of this module, for callers that dispatch by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Construction {
    Avoid,
    Derangement,
    Shrink,
    AtLeastOne,
    OneFixedPoint,
    TwoFixedPoints,
}

impl Construction {
    pub const ALL: [Construction; 6] = [
        Construction::Avoid,
        Construction::Derangement,
        Construction::Shrink,
        Construction::AtLeastOne,
        Construction::OneFixedPoint,
        Construction::TwoFixedPoints,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Construction::Avoid => "avoid_conjugator",
            Construction::Derangement => "derangement_product",
            Construction::Shrink => "shrink_fixed_points",
            Construction::AtLeastOne => "at_least_one_fixed_point",
            Construction::OneFixedPoint => "one_fixed_point_product",
            Construction::TwoFixedPoints => "two_fixed_point_product",
        }
    }

    /// What the product is promised to satisfy.
    pub fn postcondition(self) -> &'static str {
        match self {
            Construction::Avoid => "alpha^sigma(i) != beta(i) for all i",
            Construction::Derangement => "no fixed points",
            Construction::Shrink => "exactly n - m - 1 fixed points",
            Construction::AtLeastOne => "at least one fixed point",
            Construction::OneFixedPoint => "exactly one fixed point",
            Construction::TwoFixedPoints => "at least two fixed points",
        }
    }

    /// Runs the construction; `m` is only used by [`Construction::Shrink`].
    pub fn run(
        self,
        alpha: &Permutation,
        beta: &Permutation,
        m: Option<usize>,
    ) -> Result<ConjugatorWitness> {
        match self {
            Construction::Avoid => {
                let sigma = avoid_conjugator(alpha, beta)?;
                Ok(ConjugatorWitness::new(alpha, beta, sigma, "avoidance induction"))
            }
            Construction::Derangement => derangement_product(alpha, beta),
            Construction::Shrink => {
                let m = m.ok_or_else(|| domain!("shrink_fixed_points needs m"))?;
                shrink_fixed_points(alpha, beta, m, alpha.n().max(beta.n()))
            }
            Construction::AtLeastOne => at_least_one_fixed_point(alpha, beta),
            Construction::OneFixedPoint => one_fixed_point_product(alpha, beta),
            Construction::TwoFixedPoints => two_fixed_point_product(alpha, beta),
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permutations::all_permutations;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    fn avoids(alpha: &Permutation, beta: &Permutation, sigma: &Permutation) -> bool {
        let c = alpha.conjugate(sigma).unwrap();
        (1..=alpha.n()).all(|i| c.apply(i) != beta.apply(i))
    }

    fn fixed_counts_over_conjugates(alpha: &Permutation, beta: &Permutation) -> Vec<usize> {
        let mut counts: Vec<usize> = all_permutations(alpha.n())
            .iter()
            .map(|g| alpha.conjugate(g).unwrap().compose(beta).unwrap().fixed_point_count())
            .collect();
        counts.sort();
        counts.dedup();
        counts
    }

    #[test]
    fn avoidance_examples() {
        let alpha = p("(1 2 3 4 5)", 5);
        let sigma = avoid_conjugator(&alpha, &Permutation::identity(5)).unwrap();
        assert!(sigma.is_identity());

        let (alpha, beta) = (p("(1 2 3)", 5), p("(1 2 3 4 5)", 5));
        assert!(all_permutations(5).iter().any(|g| avoids(&alpha, &beta, g)));
        let sigma = avoid_conjugator(&alpha, &beta).unwrap();
        assert!(avoids(&alpha, &beta, &sigma));
    }

    #[test]
    fn avoidance_in_s4() {
        let err = avoid_conjugator(&p("(1 2 3)", 4), &p("(1 2)(3 4)", 4)).unwrap_err();
        assert!(matches!(err, Error::Impossible(_)));
        let err = avoid_conjugator(&p("(1 3)(2 4)", 4), &p("(2 3 4)", 4)).unwrap_err();
        assert!(matches!(err, Error::Impossible(_)));
        // Every other admissible pair in S_4 has an avoiding conjugator.
        let all = all_permutations(4);
        for a in &all {
            for b in &all {
                if a.fixed_point_count() + b.fixed_point_count() > 4
                    || unordered_types_are(a, b, "3,1", "2,2")
                {
                    continue;
                }
                let sigma = avoid_conjugator(a, b).unwrap();
                assert!(avoids(a, b, &sigma), "{a} vs {b}");
            }
        }
    }

    #[test]
    fn avoidance_preconditions() {
        assert!(matches!(
            avoid_conjugator(&p("(1 2)", 5), &p("(1 2)", 5)),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            avoid_conjugator(&p("(1 2 3)", 3), &p("(1 2 3)", 3)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn exhaustive_avoidance_in_s5() {
        let all = all_permutations(5);
        for a in all.iter().step_by(7) {
            for b in all.iter().step_by(5) {
                if a.fixed_point_count() + b.fixed_point_count() > 5 {
                    continue;
                }
                let sigma = avoid_conjugator(a, b).unwrap();
                assert!(avoids(a, b, &sigma), "{a} vs {b}");
            }
        }
    }

    #[test]
    fn derangements() {
        let (alpha, beta) = (p("(1 2)(3 4)", 4), p("(1 2)", 4));
        assert!(fixed_counts_over_conjugates(&alpha, &beta).contains(&0));
        assert_eq!(derangement_product(&alpha, &beta).unwrap().fixed_point_count(), 0);

        let alpha = p("(1 2 3 4 5 6)", 6);
        let w = derangement_product(&alpha, &Permutation::identity(6)).unwrap();
        assert_eq!(w.product, alpha.conjugate(&w.sigma).unwrap());
        assert!(w.fixed_points.is_empty());

        let w = derangement_product(&p("(1 2)(3 4)(5 6)", 6), &p("(1 2 3)", 6)).unwrap();
        assert!(w.fixed_points.is_empty());
        w.verify(&p("(1 2)(3 4)(5 6)", 6), &p("(1 2 3)", 6)).unwrap();

        assert!(matches!(
            derangement_product(&p("(1 2 3)", 4), &p("(1 2)", 4)),
            Err(Error::Domain(_))
        ));
        // [2,2] times [3,1] in S_4 only ever gives 3-cycles.
        assert!(matches!(
            derangement_product(&p("(1 2)(3 4)", 4), &p("(1 2 3)", 4)),
            Err(Error::Impossible(_))
        ));
    }

    #[test]
    fn shrinking() {
        let w = shrink_fixed_points(&p("(1 2)(3 4)", 4), &p("(1 2)", 4), 4, 5).unwrap();
        assert_eq!(w.fixed_point_count(), 0);
        let w = shrink_fixed_points(&p("(1 2 3 4)", 4), &p("(1 2 3)", 4), 4, 6).unwrap();
        assert_eq!(w.fixed_points, vec![6]);
        let w = shrink_fixed_points(&p("(1 2 3)(4 5 6)", 9), &p("(1 4)", 9), 6, 9).unwrap();
        assert_eq!(w.fixed_points, vec![8, 9]);
        w.verify(&p("(1 2 3)(4 5 6)", 9), &p("(1 4)", 9)).unwrap();

        assert!(shrink_fixed_points(&p("(1 2 3)", 4), &p("(1 2)", 4), 4, 6).is_err());
        assert!(shrink_fixed_points(&p("(1 2)(3 4)", 4), &Permutation::identity(4), 4, 6).is_err());
        assert!(shrink_fixed_points(&p("(1 2)(3 4)", 4), &p("(1 2)", 4), 4, 4).is_err());
        assert!(shrink_fixed_points(&p("(1 2 3)", 3), &p("(1 2)", 3), 3, 5).is_err());
        // Embedded input moving a point above m.
        assert!(shrink_fixed_points(&p("(1 2)(3 4)", 6), &p("(1 5)", 6), 4, 6).is_err());
    }

    #[test]
    fn at_least_one() {
        let w = at_least_one_fixed_point(&p("(1 2)", 4), &p("(1 2)", 4)).unwrap();
        assert!(!w.fixed_points.is_empty());
        let w = at_least_one_fixed_point(&p("(1 2)", 2), &p("(1 2)", 2)).unwrap();
        assert!(w.product.is_identity());
        let c6 = p("(1 2 3 4 5 6)", 6);
        assert!(at_least_one_fixed_point(&c6, &c6).unwrap().fixed_point_count() >= 1);
        let w = at_least_one_fixed_point(&p("(1 2 3)", 5), &p("(4 5)", 5)).unwrap();
        assert!(w.fixed_point_count() >= 1);
        assert!(at_least_one_fixed_point(&Permutation::identity(3), &p("(1 2)", 3)).is_err());
    }

    #[test]
    fn one_fixed_point() {
        let (alpha, beta) = (p("(1 2 3)(4 5 6 7)", 7), p("(1 2)", 7));
        let w = one_fixed_point_product(&alpha, &beta).unwrap();
        assert_eq!(w.fixed_point_count(), 1);
        w.verify(&alpha, &beta).unwrap();

        let err = one_fixed_point_product(&p("(1 2 3)(4 5 6)", 6), &p("(1 2)(3 4)(5 6)", 6)).unwrap_err();
        assert!(matches!(err, Error::Impossible(_)));
        let err = one_fixed_point_product(&p("(1 2)(3 4)(5 6)", 6), &p("(1 2 3)(4 5 6)", 6)).unwrap_err();
        assert!(matches!(err, Error::Impossible(_)));

        // (1 2 ... r)(1 2) = (2)(1 3 ... r).
        let cycle = p("(1 2 3 4 5 6 7)", 7);
        let direct = cycle.compose(&beta).unwrap();
        assert_eq!(direct, p("(1 3 4 5 6 7)", 7));
        let w = one_fixed_point_product(&cycle, &beta).unwrap();
        assert_eq!(w.fixed_point_count(), 1);
    }

    #[test]
    fn one_fixed_point_hypotheses() {
        let tr = p("(1 2)", 7);
        assert!(one_fixed_point_product(&p("(1 2)(3 4)(5 6)", 7), &tr).is_err());
        assert!(one_fixed_point_product(&p("(1 2 3)", 7), &tr).is_err());
        assert!(one_fixed_point_product(&p("(1 2 3 4 5)", 5), &p("(1 2)", 5)).is_err());
        assert!(one_fixed_point_product(&Permutation::identity(7), &tr).is_err());
    }

    #[test]
    fn one_fixed_point_in_s6_matches_exhaustive_search() {
        for (a, b) in [
            ("(1 2 3 4 5 6)", "(1 2)"),
            ("(1 2 3)(4 5 6)", "(1 2)"),
            ("(1 2)(3 4)(5 6)", "(1 2 3)"),
            ("(1 2 3 4)(5 6)", "(1 2 3)(4 5)"),
            ("(1 2)(3 4)(5 6)", "(1 2 3 4 5)"),
        ] {
            let (alpha, beta) = (p(a, 6), p(b, 6));
            assert!(fixed_counts_over_conjugates(&alpha, &beta).contains(&1));
            let w = one_fixed_point_product(&alpha, &beta).unwrap();
            assert_eq!(w.fixed_point_count(), 1, "{a} {b}");
        }
        assert!(!fixed_counts_over_conjugates(&p("(1 2 3)(4 5 6)", 6), &p("(1 2)(3 4)(5 6)", 6))
            .contains(&1));
    }

    #[test]
    fn two_fixed_points() {
        let x = p("(1 2)(3 4)", 4);
        let w = two_fixed_point_product(&x, &x).unwrap();
        assert!(w.fixed_point_count() >= 2);
        let w = two_fixed_point_product(&p("(1 2 3)(4 5 6)", 6), &p("(1 2 3)", 6)).unwrap();
        assert!(w.fixed_point_count() >= 2);
        assert!(w.route.starts_with("case (i)"));
        let w = two_fixed_point_product(&p("(1 2)(3 4)(5 6)", 6), &p("(1 2)(3 4)", 6)).unwrap();
        assert!(w.fixed_point_count() >= 2);
        assert!(w.route.starts_with("case (ii)"));
        let w = two_fixed_point_product(&p("(1 2)(3 4 5)", 5), &p("(1 2)", 5)).unwrap();
        assert!(w.route.starts_with("case (iii)"));

        let err = two_fixed_point_product(&p("(1 2 3 4 5)", 5), &p("(1 2)", 5)).unwrap_err();
        assert!(matches!(err, Error::Domain(ref m) if m.contains("no case applies")));
        assert!(two_fixed_point_product(&p("(1 2 3)", 5), &p("(1 2 3)", 5)).is_err());
    }

    #[test]
    fn transposition_square_realises_three_fixed_point_counts() {
        // Products of two transpositions: the identity, 3-cycles and double
        // transpositions, told apart by their fixed points.
        let n = 6;
        let t = p("(1 2)", n);
        let witnesses = [
            at_least_one_fixed_point(&t, &t).unwrap(),
            ConjugatorWitness::new(&t, &t, p("(2 3)", n), "direct"),
            ConjugatorWitness::new(&t, &t, p("(1 3)(2 4)", n), "direct"),
        ];
        let mut types: Vec<_> = witnesses.iter().map(|w| w.product.cycle_type()).collect();
        types.sort();
        types.dedup();
        assert_eq!(types.len(), 3, "{types:?}");
    }

    #[test]
    fn realize_respects_chains() {
        let t: CycleType = "4,2".parse().unwrap();
        let q = realize(&t, &[open(&[2, 1]), open(&[4, 3])]).unwrap();
        assert_eq!((q.apply(2), q.apply(4)), (1, 3));
        assert_eq!(q.cycle_type(), t);
        let q = realize(&t, &[closed(&[5, 6])]).unwrap();
        assert_eq!((q.apply(5), q.apply(6)), (6, 5));
        assert!(realize(&t, &[closed(&[1, 2, 3])]).is_none());
        assert!(realize(&"3,3".parse().unwrap(), &[open(&[1, 2]), open(&[3, 4]), open(&[5, 6])]).is_none());
    }
}
