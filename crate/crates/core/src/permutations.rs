//! Permutations of `{1..n}` with exact composition, conjugation and cycle structure.
//!
//! Products are composed right to left: `compose(a, b)` maps `i` to `a(b(i))`.
//! Conjugation is `a^g = g^-1 a g`, which makes it a right action:
//! `(a^g)^h = a^(gh)`.

use std::fmt;

use num_traits::ToPrimitive;

use crate::error::{domain, Error, Result};
use crate::partitions::CycleType;

/// A bijection of `{1..n}`. Points are 1-based in the public API.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // 0-based internally: images[i] is the image of point i + 1, minus one.
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!(n > 0, "S_0 is not supported");
        Permutation { images: (0..n).collect() }
    }

    /// From the 1-based image list `[a(1), a(2), ..., a(n)]`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(domain!("a permutation needs at least one point"));
        }
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &img in images {
            if img == 0 || img > n {
                return Err(domain!("image {img} outside 1..={n}"));
            }
            if std::mem::replace(&mut seen[img - 1], true) {
                return Err(domain!("image {img} repeated; not a bijection"));
            }
            out.push(img - 1);
        }
        Ok(Permutation { images: out })
    }

    pub(crate) fn from_zero_based(images: Vec<usize>) -> Self {
        debug_assert!({
            let mut seen = vec![false; images.len()];
            images.iter().all(|&i| i < seen.len() && !std::mem::replace(&mut seen[i], true))
        });
        Permutation { images }
    }

    /// From disjoint cycles of 1-based points; unlisted points are fixed.
    pub fn from_cycles<C: AsRef<[usize]>>(n: usize, cycles: &[C]) -> Result<Self> {
        if n == 0 {
            return Err(domain!("a permutation needs at least one point"));
        }
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for cycle in cycles {
            let cycle = cycle.as_ref();
            for &p in cycle {
                if p == 0 || p > n {
                    return Err(domain!("point {p} outside 1..={n}"));
                }
                if std::mem::replace(&mut seen[p - 1], true) {
                    return Err(domain!("point {p} appears in more than one place"));
                }
            }
            for (j, &p) in cycle.iter().enumerate() {
                images[p - 1] = cycle[(j + 1) % cycle.len()] - 1;
            }
        }
        Ok(Permutation { images })
    }

    /// The transposition `(a b)` in `S_n`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        if a == b {
            return Err(domain!("a transposition needs two distinct points"));
        }
        Permutation::from_cycles(n, &[[a, b]])
    }

    /// Parses disjoint-cycle notation such as `"(1 2 3)(4 5)"` in `S_n`.
    ///
    /// Fixed points may be omitted. `"()"`, `"e"` and the empty string denote
    /// the identity. Commas are accepted as separators inside a cycle.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "e" || s == "()" {
            return if n == 0 {
                Err(Error::Parse("n must be positive".into()))
            } else {
                Ok(Permutation::identity(n))
            };
        }
        let mut cycles = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' at {rest:?}")))?;
            let close = body
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in {s:?}")))?;
            let points = body[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("not a point: {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if points.is_empty() {
                return Err(Error::Parse(format!("empty cycle in {s:?}")));
            }
            cycles.push(points);
            rest = body[close + 1..].trim_start();
        }
        Permutation::from_cycles(n, &cycles).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    /// 1-based image list.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Fixed points, ascending, 1-based.
    pub fn fixed_points(&self) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &j)| i == j)
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn fixed_point_count(&self) -> usize {
        self.images.iter().enumerate().filter(|&(i, &j)| i == j).count()
    }

    pub fn is_fixed_point_free(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i != j)
    }

    /// Points moved by the permutation, ascending, 1-based.
    pub fn moved_points(&self) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &j)| i != j)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        check_same_degree(self, other)?;
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&j| self.images[j]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// `self^g = g^-1 ∘ self ∘ g`.
    pub fn conjugate(&self, g: &Permutation) -> Result<Permutation> {
        check_same_degree(self, g)?;
        Ok(self.conjugate_unchecked(g))
    }

    pub(crate) fn conjugate_unchecked(&self, g: &Permutation) -> Permutation {
        // g^-1 a g maps g^-1(x) to g^-1(a(x)): relabel every point x by g^-1(x).
        let ginv = g.inverse();
        let mut images = vec![0; self.images.len()];
        for (x, &ax) in self.images.iter().enumerate() {
            images[ginv.images[x]] = ginv.images[ax];
        }
        Permutation { images }
    }

    /// Disjoint cycles covering `{1..n}`, fixed points included. Each cycle
    /// starts at its minimum; cycles are ordered by decreasing length, then
    /// by minimum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x];
            }
            cycles.push(cycle);
        }
        // Scanning starts in increasing order already puts each minimum first.
        cycles.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
        cycles
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::from_sorted(self.cycle_lengths())
    }

    /// Cycle lengths in non-increasing order.
    pub(crate) fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.images[x];
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    /// The same permutation acting on `{1..n}`, fixing every point above `self.n()`.
    pub fn embed(&self, n: usize) -> Result<Permutation> {
        if n < self.n() {
            return Err(domain!("cannot embed S_{} into S_{n}", self.n()));
        }
        let mut images = self.images.clone();
        images.extend(self.n()..n);
        Ok(Permutation { images })
    }

    /// Restriction to `{1..m}`; every point above `m` must be fixed.
    pub fn restrict(&self, m: usize) -> Result<Permutation> {
        if m == 0 || m > self.n() {
            return Err(domain!("cannot restrict S_{} to S_{m}", self.n()));
        }
        if (m..self.n()).any(|i| self.images[i] != i) {
            return Err(domain!("permutation moves points above {m}"));
        }
        Ok(Permutation { images: self.images[..m].to_vec() })
    }
}

fn check_same_degree(a: &Permutation, b: &Permutation) -> Result<()> {
    if a.n() != b.n() {
        return Err(domain!("degree mismatch: S_{} vs S_{}", a.n(), b.n()));
    }
    Ok(())
}

impl fmt::Display for Permutation {
    /// Cycle notation without fixed points; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for cycle in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            f.write_str("(")?;
            for (j, p) in cycle.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in S_{}", self.n())
    }
}

pub fn compose(a: &Permutation, b: &Permutation) -> Result<Permutation> {
    a.compose(b)
}

pub fn inverse(a: &Permutation) -> Permutation {
    a.inverse()
}

pub fn conjugate(a: &Permutation, g: &Permutation) -> Result<Permutation> {
    a.conjugate(g)
}

pub fn cycle_decomposition(a: &Permutation) -> Vec<Vec<usize>> {
    a.cycles()
}

pub fn cycle_type(a: &Permutation) -> CycleType {
    a.cycle_type()
}

pub fn embed(a: &Permutation, n: usize) -> Result<Permutation> {
    a.embed(n)
}

/// Cycles on consecutive blocks in part order: `[3,2]` gives `(1 2 3)(4 5)`.
pub fn canonical_rep(t: &CycleType) -> Permutation {
    let mut images = Vec::with_capacity(t.n());
    let mut start = 0;
    for &len in t.parts() {
        for j in 0..len {
            images.push(start + (j + 1) % len);
        }
        start += len;
    }
    Permutation { images }
}

/// Returns `g` with `a^g = b`, by lining up the canonical cycle decompositions.
pub fn conjugator_between(a: &Permutation, b: &Permutation) -> Result<Permutation> {
    check_same_degree(a, b)?;
    let (ca, cb) = (a.cycles(), b.cycles());
    let lengths = |cs: &[Vec<usize>]| cs.iter().map(Vec::len).collect::<Vec<_>>();
    if lengths(&ca) != lengths(&cb) {
        return Err(domain!(
            "{a} and {b} have different cycle types and are not conjugate"
        ));
    }
    let mut images = vec![0; a.n()];
    for (x, y) in ca.iter().zip(&cb) {
        for (&xp, &yp) in x.iter().zip(y) {
            images[yp - 1] = xp - 1;
        }
    }
    let g = Permutation { images };
    debug_assert_eq!(a.conjugate_unchecked(&g), *b);
    Ok(g)
}

/// Every permutation of type `t` exactly once, with the default enumeration bound.
pub fn enumerate_class(t: &CycleType) -> Result<ClassIter> {
    enumerate_class_bounded(t, crate::limits::Limits::default().enumeration_limit)
}

pub fn enumerate_class_bounded(t: &CycleType, limit: u64) -> Result<ClassIter> {
    let size = t.class_size();
    if size.to_u64().is_none_or(|s| s > limit) {
        return Err(Error::Resource(format!(
            "class [{t}] has {size} elements, above the enumeration bound {limit}; \
             use the character engine instead"
        )));
    }
    Ok(ClassIter::new(t))
}

/// Lazy enumeration of a conjugacy class.
///
/// Each element is produced as its canonical word: blocks of the type's part
/// lengths in order, every block starting at its minimum, and blocks of equal
/// length ordered by increasing minimum. Words and permutations correspond
/// one to one, so the cost is proportional to the class size.
pub struct ClassIter {
    n: usize,
    block_len: Vec<usize>,
    block_start: Vec<usize>,
    // For block starts: the start position of the previous block of the same
    // length, and how many blocks of this length remain including this one.
    prev_same: Vec<Option<usize>>,
    run_remaining: Vec<usize>,
    word: Vec<usize>,
    cursor: Vec<usize>,
    used: Vec<bool>,
    pos: usize,
    started: bool,
    done: bool,
}

impl ClassIter {
    fn new(t: &CycleType) -> Self {
        let n = t.n();
        let mut block_len = Vec::with_capacity(n);
        let mut block_start = Vec::with_capacity(n);
        let mut prev_same = vec![None; n];
        let mut run_remaining = vec![0; n];
        let parts = t.parts();
        let mut starts = Vec::with_capacity(parts.len());
        let mut pos = 0;
        for &len in parts {
            starts.push(pos);
            for _ in 0..len {
                block_len.push(len);
                block_start.push(pos);
            }
            pos += len;
        }
        for (b, &s) in starts.iter().enumerate() {
            if b > 0 && parts[b - 1] == parts[b] {
                prev_same[s] = Some(starts[b - 1]);
            }
            run_remaining[s] = parts[b..].iter().take_while(|&&p| p == parts[b]).count();
        }
        ClassIter {
            n,
            block_len,
            block_start,
            prev_same,
            run_remaining,
            word: vec![0; n],
            cursor: vec![0; n],
            used: vec![false; n],
            pos: 0,
            started: false,
            done: false,
        }
    }

    fn lower_bound(&self, pos: usize) -> usize {
        if self.block_start[pos] == pos {
            self.prev_same[pos].map_or(0, |p| self.word[p] + 1)
        } else {
            self.word[self.block_start[pos]] + 1
        }
    }

    fn admissible(&self, pos: usize, v: usize) -> bool {
        if self.used[v] {
            return false;
        }
        if self.block_start[pos] != pos {
            return true;
        }
        // Every remaining block of this length lies entirely above v.
        let need = self.run_remaining[pos] * self.block_len[pos] - 1;
        let above = (v + 1..self.n).filter(|&x| !self.used[x]).count();
        above >= need
    }

    fn emit(&self) -> Permutation {
        let mut images = vec![0; self.n];
        let mut s = 0;
        while s < self.n {
            let len = self.block_len[s];
            for j in 0..len {
                images[self.word[s + j]] = self.word[s + (j + 1) % len];
            }
            s += len;
        }
        Permutation { images }
    }
}

impl Iterator for ClassIter {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.pos = 0;
            self.cursor[0] = 0;
        } else {
            self.pos = self.n - 1;
            self.used[self.word[self.pos]] = false;
            self.cursor[self.pos] = self.word[self.pos] + 1;
        }
        loop {
            let pos = self.pos;
            let found = (self.cursor[pos]..self.n).find(|&v| self.admissible(pos, v));
            match found {
                Some(v) => {
                    self.word[pos] = v;
                    self.used[v] = true;
                    if pos + 1 == self.n {
                        return Some(self.emit());
                    }
                    self.pos += 1;
                    self.cursor[self.pos] = self.lower_bound(self.pos);
                }
                None => {
                    if pos == 0 {
                        self.done = true;
                        return None;
                    }
                    self.pos -= 1;
                    let prev = self.word[self.pos];
                    self.used[prev] = false;
                    self.cursor[self.pos] = prev + 1;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::partitions::partitions_of;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    fn ct(s: &str) -> CycleType {
        s.parse().unwrap()
    }

    // Heap's algorithm; independent of ClassIter.
    pub(crate) fn all_permutations(n: usize) -> Vec<Permutation> {
        fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Permutation>) {
            if k == 1 {
                out.push(Permutation::from_zero_based(a.clone()));
                return;
            }
            for i in 0..k {
                heap(k - 1, a, out);
                if k % 2 == 0 {
                    a.swap(i, k - 1);
                } else {
                    a.swap(0, k - 1);
                }
            }
        }
        let mut out = Vec::new();
        heap(n, &mut (0..n).collect(), &mut out);
        out
    }

    #[test]
    fn worked_products() {
        assert_eq!(p("(1 2)", 3).compose(&p("(1 3)", 3)).unwrap(), p("(1 3 2)", 3));
        let prod = p("(1 2)(3 4)(5 6)", 6).compose(&p("(1 2 3)(4 5 6)", 6)).unwrap();
        assert_eq!(prod, p("(2 4 6 3)", 6));
        assert_eq!(prod.fixed_points(), vec![1, 5]);
        let prod = p("(1 2 3)", 4).compose(&p("(1 2)(3 4)", 4)).unwrap();
        assert_eq!(prod, p("(1 3 4)", 4));
        assert_eq!(prod.cycle_type(), ct("3,1"));
        let a = p("(1 4 2)", 5);
        assert_eq!(Permutation::identity(5).compose(&a).unwrap(), a);
    }

    #[test]
    fn inverses() {
        assert_eq!(p("(1 2 3)", 3).inverse(), p("(1 3 2)", 3));
        assert_eq!(Permutation::identity(4).inverse(), Permutation::identity(4));
        assert_eq!(p("(1 2)", 2).inverse(), p("(1 2)", 2));
    }

    #[test]
    fn conjugation() {
        let a = p("(1 2 3)", 3);
        assert_eq!(a.conjugate(&Permutation::identity(3)).unwrap(), a);
        let c = a.conjugate(&p("(1 2)", 3)).unwrap();
        assert_eq!((c.apply(1), c.apply(3), c.apply(2)), (3, 2, 1));
        // Direct evaluation of g^-1 a g.
        let g = p("(1 2)", 3);
        let direct = g.inverse().compose(&a).unwrap().compose(&g).unwrap();
        assert_eq!(c, direct);
        assert!(a.conjugate(&Permutation::identity(4)).is_err());
    }

    #[test]
    fn decompositions() {
        let a = p("(1 3)(2 5 6)(4)(7)", 7);
        assert_eq!(a.cycles(), vec![vec![2, 5, 6], vec![1, 3], vec![4], vec![7]]);
        assert_eq!(a.cycle_type(), ct("3,2,1,1"));
        assert_eq!(Permutation::identity(3).cycles(), vec![vec![1], vec![2], vec![3]]);
        let b = p("(2 4 6 3)", 6);
        assert_eq!(b.cycles(), vec![vec![2, 4, 6, 3], vec![1], vec![5]]);
        assert_eq!(Permutation::identity(5).cycle_type(), ct("1,1,1,1,1"));
        assert_eq!(p("(1 2)(3 4)(5 6)", 6).cycle_type(), ct("2,2,2"));
    }

    #[test]
    fn canonical_reps() {
        assert_eq!(canonical_rep(&ct("5")), p("(1 2 3 4 5)", 5));
        assert_eq!(canonical_rep(&ct("2,2,1")), p("(1 2)(3 4)", 5));
        assert_eq!(canonical_rep(&ct("3,2")), p("(1 2 3)(4 5)", 5));
        assert!(canonical_rep(&ct("1,1,1")).is_identity());
        for t in partitions_of(7).unwrap() {
            assert_eq!(canonical_rep(&t).cycle_type(), t);
        }
    }

    #[test]
    fn class_enumeration_matches_filter() {
        for n in 1..=6 {
            let all = all_permutations(n);
            for t in partitions_of(n).unwrap() {
                let listed: Vec<_> = enumerate_class(&t).unwrap().collect();
                let unique: HashSet<_> = listed.iter().cloned().collect();
                assert_eq!(unique.len(), listed.len(), "duplicates in [{t}]");
                let filtered: HashSet<_> =
                    all.iter().filter(|g| g.cycle_type() == t).cloned().collect();
                assert_eq!(unique, filtered, "class [{t}]");
            }
        }
        assert_eq!(enumerate_class(&ct("2,1,1")).unwrap().count(), 6);
        assert_eq!(
            enumerate_class(&ct("1,1,1")).unwrap().collect::<Vec<_>>(),
            vec![Permutation::identity(3)]
        );
        let threes: HashSet<_> = enumerate_class(&ct("3")).unwrap().collect();
        assert_eq!(threes, [p("(1 2 3)", 3), p("(1 3 2)", 3)].into_iter().collect());
    }

    #[test]
    fn class_enumeration_counts() {
        for n in 7..=9 {
            for t in partitions_of(n).unwrap() {
                let count = enumerate_class(&t).unwrap().count() as u64;
                assert_eq!(count, t.class_size().to_u64().unwrap(), "[{t}]");
            }
        }
    }

    #[test]
    fn enumeration_bound() {
        let big = ct("13");
        assert!(matches!(enumerate_class(&big), Err(Error::Resource(_))));
        assert!(enumerate_class_bounded(&ct("5"), 24).is_ok());
        assert!(enumerate_class_bounded(&ct("5"), 23).is_err());
    }

    #[test]
    fn conjugators() {
        let a = p("(1 2 3)", 3);
        let g = conjugator_between(&a, &a).unwrap();
        assert_eq!(a.conjugate(&g).unwrap(), a);

        let (a, b) = (p("(1 2)", 4), p("(3 4)", 4));
        assert!(all_permutations(4).iter().any(|g| a.conjugate(g).unwrap() == b));
        let g = conjugator_between(&a, &b).unwrap();
        assert_eq!(a.conjugate(&g).unwrap(), b);

        let (a, b) = (p("(1 2 3)", 3), p("(1 3 2)", 3));
        assert_eq!(a.conjugate(&p("(2 3)", 3)).unwrap(), b);
        let g = conjugator_between(&a, &b).unwrap();
        assert_eq!(a.conjugate(&g).unwrap(), b);

        assert!(conjugator_between(&p("(1 2)", 4), &p("(1 2 3)", 4)).is_err());
    }

    #[test]
    fn embedding() {
        let e = p("(1 2)", 2).embed(4).unwrap();
        assert_eq!(e, p("(1 2)", 4));
        assert_eq!(e.cycle_type(), ct("2,1,1"));
        let a = p("(1 2 3)", 3);
        assert_eq!(a.embed(3).unwrap(), a);
        let b = p("(1 2 3)(4 5 6)", 6).embed(7).unwrap();
        assert_eq!(b.fixed_points(), vec![7]);
        assert!(a.embed(2).is_err());
        assert_eq!(b.restrict(6).unwrap(), p("(1 2 3)(4 5 6)", 6));
        assert!(b.restrict(5).is_err());
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("(1 2 3)(4 5)", 6).to_string(), "(1 2 3)(4 5)");
        assert_eq!(p("(4 5)(3 1 2)", 6).to_string(), "(1 2 3)(4 5)");
        assert_eq!(p("(1,2)", 2).to_string(), "(1 2)");
        assert_eq!(p("()", 3).to_string(), "()");
        assert_eq!(p("(7)", 7), Permutation::identity(7));
        for bad in ["(1 2)(2 3)", "(1 9)", "(1 2", "1 2", "(0 1)", "(a b)", "(1 2)()"] {
            assert!(matches!(Permutation::parse(bad, 5), Err(Error::Parse(_))), "{bad:?}");
        }
    }

    #[test]
    fn compose_rejects_mismatched_degrees() {
        assert!(p("(1 2)", 2).compose(&p("(1 2)", 3)).is_err());
    }
}

#[cfg(test)]
pub(crate) use tests::all_permutations;
