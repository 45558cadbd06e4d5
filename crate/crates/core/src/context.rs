//! Median join-semilattice engine.
//!
//! A [`MedianContext`] is built once from a [`Poset`] and caches everything the
//! aggregation rules and checkers query in their inner loops: the join table,
//! the partial meet table, cover relation, irreducibles, the normalized rank
//! and the covering-graph distance.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::Poset;

/// Largest element count for which dense `n x n` tables are built by default.
pub const DENSE_LIMIT: usize = 2048;

/// Hard ceiling even with `allow_large`.
pub const HARD_LIMIT: usize = 8192;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, Default)]
pub struct ContextOptions {
    /// Permit more than [`DENSE_LIMIT`] elements; the distance table is then
    /// replaced by on-demand BFS.
    pub allow_large: bool,
}

/// Structure flags, each computed by exhaustive check of its definition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct StructureReport {
    pub is_poset: bool,
    pub is_join_semilattice: bool,
    pub is_upper_distributive: bool,
    pub is_meet_helly: bool,
    pub is_median: bool,
    pub is_graded: bool,
    pub is_distributive_lattice: bool,
    pub is_coatomistic: bool,
    pub is_atomistic: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Betweenness {
    /// `z = mu(x, y, z)`.
    Median,
    /// `z <= x v y` and (`x <= z` or `y <= z`).
    Interval,
    /// `d(x, z) + d(z, y) = d(x, y)` for the rank metric.
    Metric,
}

/// Dense order tables shared by [`classify`] and [`MedianContext`].
struct Tables {
    n: usize,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    join: Vec<u32>,
    meet: Vec<u32>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
}

impl Tables {
    fn new(p: &Poset) -> Self {
        let n = p.len();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for x in 0..n {
            for y in 0..n {
                if p.leq(x, y) {
                    up[x].insert(y);
                    down[y].insert(x);
                }
            }
        }
        let join = bound_table(n, &up);
        let meet = bound_table(n, &down);

        let mut upper_covers = vec![Vec::new(); n];
        let mut lower_covers = vec![Vec::new(); n];
        for x in 0..n {
            for y in up[x].ones() {
                if y == x {
                    continue;
                }
                // x << y iff [x, y] = {x, y}
                if up[x].intersection(&down[y]).count() == 2 {
                    upper_covers[x].push(y);
                    lower_covers[y].push(x);
                }
            }
        }
        Tables {
            n,
            up,
            down,
            join,
            meet,
            upper_covers,
            lower_covers,
        }
    }

    #[inline]
    fn join(&self, x: usize, y: usize) -> Option<usize> {
        opt(self.join[x * self.n + y])
    }

    #[inline]
    fn meet(&self, x: usize, y: usize) -> Option<usize> {
        opt(self.meet[x * self.n + y])
    }

    fn is_join_semilattice(&self) -> Option<(usize, usize)> {
        for x in 0..self.n {
            for y in x..self.n {
                if self.join(x, y).is_none() {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// Distributive law over every triple with a common lower bound, i.e.
    /// inside every principal filter. Assumes joins are total.
    fn upper_distributive_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for y in 0..n {
            for z in y..n {
                let Some(yz) = self.meet(y, z) else { continue };
                for x in 0..n {
                    if self.meet(yz, x).is_none() {
                        continue;
                    }
                    let lhs = self.join(x, yz);
                    let rhs = match (self.join(x, y), self.join(x, z)) {
                        (Some(a), Some(b)) => self.meet(a, b),
                        _ => None,
                    };
                    if lhs.is_none() || lhs != rhs {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    fn meet_helly_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for x in 0..n {
            for y in x..n {
                let Some(xy) = self.meet(x, y) else { continue };
                for z in y..n {
                    if self.meet(y, z).is_some()
                        && self.meet(x, z).is_some()
                        && self.meet(xy, z).is_none()
                    {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    fn is_lattice(&self) -> bool {
        self.join.iter().all(|&v| v != NONE) && self.meet.iter().all(|&v| v != NONE)
    }

    fn is_distributive(&self) -> bool {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                for z in y..n {
                    let l = self.join(x, self.meet(y, z).unwrap());
                    let r = self.meet(self.join(x, y).unwrap(), self.join(x, z).unwrap());
                    if l != r {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn maxima(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.upper_covers[x].is_empty()).collect()
    }

    fn minima(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.lower_covers[x].is_empty()).collect()
    }

    /// A rank function on the cover graph, if one exists, shifted so its
    /// minimum is zero.
    fn rank_potential(&self) -> Option<Vec<i64>> {
        let n = self.n;
        let mut pot: Vec<Option<i64>> = vec![None; n];
        for s in 0..n {
            if pot[s].is_some() {
                continue;
            }
            pot[s] = Some(0);
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                let px = pot[x].unwrap();
                let nbrs = self.upper_covers[x]
                    .iter()
                    .map(|&y| (y, px + 1))
                    .chain(self.lower_covers[x].iter().map(|&y| (y, px - 1)));
                for (y, want) in nbrs {
                    match pot[y] {
                        None => {
                            pot[y] = Some(want);
                            queue.push_back(y);
                        }
                        Some(v) if v != want => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let pot: Vec<i64> = pot.into_iter().map(|v| v.unwrap()).collect();
        let lo = pot.iter().copied().min().unwrap_or(0);
        Some(pot.into_iter().map(|v| v - lo).collect())
    }

    fn meet_irreducibles(&self, top: Option<usize>) -> Vec<usize> {
        (0..self.n)
            .filter(|&x| Some(x) != top && self.upper_covers[x].len() == 1)
            .collect()
    }

    fn join_irreducibles(&self, bottom: Option<usize>) -> Vec<usize> {
        (0..self.n)
            .filter(|&x| match self.lower_covers[x].len() {
                0 => bottom.is_none(),
                1 => true,
                _ => false,
            })
            .collect()
    }

    fn report(&self) -> StructureReport {
        let is_join_semilattice = self.is_join_semilattice().is_none();
        let is_upper_distributive =
            is_join_semilattice && self.upper_distributive_violation().is_none();
        let is_meet_helly = self.meet_helly_violation().is_none();
        let is_lattice = self.is_lattice();
        let maxima = self.maxima();
        let minima = self.minima();
        let top = (maxima.len() == 1).then(|| maxima[0]);
        let bottom = (minima.len() == 1).then(|| minima[0]);
        let is_coatomistic = match top {
            Some(t) if is_join_semilattice => self.lower_covers[t] == self.meet_irreducibles(top),
            _ => false,
        };
        let is_atomistic = match bottom {
            Some(b) if is_lattice => self.upper_covers[b] == self.join_irreducibles(bottom),
            _ => false,
        };
        StructureReport {
            is_poset: true,
            is_join_semilattice,
            is_upper_distributive,
            is_meet_helly,
            is_median: is_join_semilattice && is_upper_distributive && is_meet_helly,
            is_graded: self.rank_potential().is_some(),
            is_distributive_lattice: is_lattice && self.is_distributive(),
            is_coatomistic,
            is_atomistic,
        }
    }
}

#[inline]
fn opt(v: u32) -> Option<usize> {
    (v != NONE).then_some(v as usize)
}

/// Least element of `cone[x] & cone[y]` for every pair, where `cone` is the
/// up-set (join) or down-set (meet) family.
fn bound_table(n: usize, cone: &[FixedBitSet]) -> Vec<u32> {
    let sizes: Vec<usize> = cone.iter().map(|c| c.count_ones(..)).collect();
    let mut table = vec![NONE; n * n];
    for x in 0..n {
        for y in x..n {
            let mut common = cone[x].clone();
            common.intersect_with(&cone[y]);
            // The least element of `common`, if any, has the largest cone.
            let Some(z) = common.ones().max_by_key(|&z| sizes[z]) else {
                continue;
            };
            if common.is_subset(&cone[z]) {
                table[x * n + y] = z as u32;
                table[y * n + x] = z as u32;
            }
        }
    }
    table
}

/// Computes every [`StructureReport`] flag for an arbitrary poset.
pub fn classify(p: &Poset) -> StructureReport {
    Tables::new(p).report()
}

/// Immutable median join-semilattice tables over a finite poset.
pub struct MedianContext {
    poset: Poset,
    tables: Tables,
    top: usize,
    bottom: Option<usize>,
    meet_irr: Vec<usize>,
    join_irr: Vec<usize>,
    coatoms: Vec<usize>,
    atoms: Vec<usize>,
    rank: Vec<u32>,
    dist: Option<Vec<u32>>,
    report: StructureReport,
    median_failure: Option<String>,
}

impl std::fmt::Debug for MedianContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MedianContext")
            .field("n", &self.len())
            .field("top", &self.top)
            .field("meet_irr", &self.meet_irr)
            .field("report", &self.report)
            .finish()
    }
}

impl MedianContext {
    /// Builds the context. Fails only if some pair lacks a join; a join
    /// semilattice that is not median is returned with `is_median = false`
    /// and median-dependent operations refuse it.
    pub fn new(p: Poset) -> Result<Self> {
        Self::with_options(p, ContextOptions::default())
    }

    /// Like [`MedianContext::new`] but also rejects non-median semilattices.
    pub fn new_median(p: Poset) -> Result<Self> {
        let ctx = Self::new(p)?;
        ctx.require_median()?;
        Ok(ctx)
    }

    pub fn with_options(p: Poset, opts: ContextOptions) -> Result<Self> {
        let n = p.len();
        if n == 0 {
            return Err(Error::BadInput("empty poset".into()));
        }
        let limit = if opts.allow_large { HARD_LIMIT } else { DENSE_LIMIT };
        if n > limit {
            return Err(Error::size("elements", n, limit));
        }
        let tables = Tables::new(&p);
        if let Some((x, y)) = tables.is_join_semilattice() {
            return Err(Error::NotJoinSemilattice(x, y));
        }
        let top = (0..n)
            .find(|&x| tables.up[x].count_ones(..) == 1)
            .expect("finite join-semilattice has a top");
        let minima = tables.minima();
        let bottom = (minima.len() == 1).then(|| minima[0]);

        let meet_irr = tables.meet_irreducibles(Some(top));
        let join_irr = tables.join_irreducibles(bottom);
        let coatoms = tables.lower_covers[top].clone();
        let atoms = bottom.map(|b| tables.upper_covers[b].clone()).unwrap_or_default();

        // Normalized rank r(x) = r(1) - l([x, 1]) with l the longest chain.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| tables.up[x].count_ones(..));
        let mut height_to_top = vec![0u32; n];
        for &x in &order {
            height_to_top[x] = tables.upper_covers[x]
                .iter()
                .map(|&y| height_to_top[y] + 1)
                .max()
                .unwrap_or(0);
        }
        let rank_top = height_to_top.iter().copied().max().unwrap_or(0);
        let rank: Vec<u32> = height_to_top.iter().map(|&l| rank_top - l).collect();

        let mut report = tables.report();
        let graded = (0..n).all(|x| {
            tables.upper_covers[x]
                .iter()
                .all(|&y| rank[y] == rank[x] + 1)
        });
        debug_assert_eq!(graded, report.is_graded);
        report.is_graded = graded;

        let median_failure = if report.is_median {
            None
        } else if let Some((x, y, z)) = tables.upper_distributive_violation() {
            Some(format!("upper distributivity fails at ({x}, {y}, {z})"))
        } else if let Some((x, y, z)) = tables.meet_helly_violation() {
            Some(format!("meet-Helly fails at ({x}, {y}, {z})"))
        } else {
            Some("unknown".into())
        };

        let mut ctx = MedianContext {
            poset: p,
            tables,
            top,
            bottom,
            meet_irr,
            join_irr,
            coatoms,
            atoms,
            rank,
            dist: None,
            report,
            median_failure,
        };
        if n <= DENSE_LIMIT {
            let mut dist = Vec::with_capacity(n * n);
            for x in 0..n {
                dist.extend(ctx.bfs_from(x));
            }
            ctx.dist = Some(dist);
        }
        Ok(ctx)
    }

    fn bfs_from(&self, s: usize) -> Vec<u32> {
        let n = self.len();
        let mut d = vec![NONE; n];
        d[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            let next = d[x] + 1;
            for &y in self.tables.upper_covers[x]
                .iter()
                .chain(&self.tables.lower_covers[x])
            {
                if d[y] == NONE {
                    d[y] = next;
                    queue.push_back(y);
                }
            }
        }
        d
    }

    pub fn len(&self) -> usize {
        self.tables.n
    }

    pub fn is_empty(&self) -> bool {
        self.tables.n == 0
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn report(&self) -> StructureReport {
        self.report
    }

    pub fn is_median(&self) -> bool {
        self.report.is_median
    }

    pub fn require_median(&self) -> Result<()> {
        match &self.median_failure {
            None => Ok(()),
            Some(why) => Err(Error::NotMedian(why.clone())),
        }
    }

    pub fn require_graded(&self) -> Result<()> {
        if self.report.is_graded {
            return Ok(());
        }
        for x in 0..self.len() {
            for &y in &self.tables.upper_covers[x] {
                if self.rank[y] != self.rank[x] + 1 {
                    return Err(Error::NotGraded(x, y));
                }
            }
        }
        unreachable!("graded flag disagrees with cover scan")
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.poset.leq(x, y)
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.tables.join[x * self.tables.n + y] as usize
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        self.tables.meet(x, y)
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> Option<usize> {
        self.bottom
    }

    /// `M_X`, ascending.
    pub fn meet_irreducibles(&self) -> &[usize] {
        &self.meet_irr
    }

    /// `J_X`, ascending. Minimal elements count as join-irreducible when
    /// there is no bottom.
    pub fn join_irreducibles(&self) -> &[usize] {
        &self.join_irr
    }

    pub fn coatoms(&self) -> &[usize] {
        &self.coatoms
    }

    /// Empty when there is no bottom.
    pub fn atoms(&self) -> &[usize] {
        &self.atoms
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.tables.upper_covers[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.tables.lower_covers[x]
    }

    pub fn covers(&self, x: usize, y: usize) -> bool {
        self.tables.upper_covers[x].contains(&y)
    }

    /// Normalized rank `r(1) - l([x, 1])`.
    pub fn rank(&self, x: usize) -> u32 {
        self.rank[x]
    }

    pub fn up_set(&self, x: usize) -> &FixedBitSet {
        &self.tables.up[x]
    }

    pub fn down_set(&self, x: usize) -> &FixedBitSet {
        &self.tables.down[x]
    }

    /// `M(x) = { m in M_X : x <= m }`.
    pub fn meet_irreducibles_above(&self, x: usize) -> Vec<usize> {
        self.meet_irr
            .iter()
            .copied()
            .filter(|&m| self.leq(x, m))
            .collect()
    }

    pub fn join_irreducibles_below(&self, x: usize) -> Vec<usize> {
        self.join_irr
            .iter()
            .copied()
            .filter(|&j| self.leq(j, x))
            .collect()
    }

    /// `(x v y) ^ (y v z) ^ (x v z)`.
    pub fn median(&self, x: usize, y: usize, z: usize) -> Result<usize> {
        self.require_median()?;
        Ok(self.median_raw(x, y, z))
    }

    #[inline]
    pub(crate) fn median_raw(&self, x: usize, y: usize, z: usize) -> usize {
        let a = self.join(x, y);
        let b = self.join(y, z);
        let c = self.join(x, z);
        self.meet(a, b)
            .and_then(|ab| self.meet(ab, c))
            .expect("median semilattice: terms of the median share lower bounds")
    }

    #[inline]
    pub(crate) fn in_interval(&self, x: usize, y: usize, z: usize) -> bool {
        self.median_raw(x, y, z) == z
    }

    /// `I(x, y) = { z : mu(x, y, z) = z }`, ascending.
    pub fn interval(&self, x: usize, y: usize) -> Result<Vec<usize>> {
        self.require_median()?;
        Ok((0..self.len()).filter(|&z| self.in_interval(x, y, z)).collect())
    }

    pub(crate) fn interval_bits(&self, x: usize, y: usize) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(self.len());
        for z in 0..self.len() {
            if self.in_interval(x, y, z) {
                b.insert(z);
            }
        }
        b
    }

    /// Whether `z` lies between `x` and `y`.
    pub fn betweenness(&self, kind: Betweenness, x: usize, z: usize, y: usize) -> Result<bool> {
        match kind {
            Betweenness::Median => {
                self.require_median()?;
                Ok(self.in_interval(x, y, z))
            }
            Betweenness::Interval => {
                Ok(self.leq(z, self.join(x, y)) && (self.leq(x, z) || self.leq(y, z)))
            }
            Betweenness::Metric => {
                self.require_graded()?;
                Ok(self.rank_dist(x, z) + self.rank_dist(z, y) == self.rank_dist(x, y))
            }
        }
    }

    /// `d_r(x, y) = 2 r(x v y) - r(x) - r(y)`.
    pub fn dist_rank(&self, x: usize, y: usize) -> Result<u32> {
        self.require_graded()?;
        Ok(self.rank_dist(x, y))
    }

    #[inline]
    fn rank_dist(&self, x: usize, y: usize) -> u32 {
        2 * self.rank[self.join(x, y)] - self.rank[x] - self.rank[y]
    }

    /// Shortest-path distance in the covering graph.
    pub fn cover_dist(&self, x: usize, y: usize) -> u32 {
        match &self.dist {
            Some(d) => d[x * self.len() + y],
            None => self.bfs_from(x)[y],
        }
    }

    /// Greatest lower bound of `set`; the empty meet is the top.
    pub fn meet_of_set(&self, set: &[usize]) -> Result<usize> {
        let mut acc = self.top;
        for &s in set {
            match self.meet(acc, s) {
                Some(v) => acc = v,
                None => return Err(self.meet_failure(set, acc, s)),
            }
        }
        Ok(acc)
    }

    fn meet_failure(&self, set: &[usize], acc: usize, s: usize) -> Error {
        for (i, &a) in set.iter().enumerate() {
            for &b in &set[i + 1..] {
                if self.meet(a, b).is_none() {
                    return Error::MeetUndefined(a, b);
                }
            }
        }
        Error::MeetUndefined(acc, s)
    }

    /// Least upper bound of a nonempty set.
    pub fn join_of_set(&self, set: &[usize]) -> Option<usize> {
        let (&first, rest) = set.split_first()?;
        Some(rest.iter().fold(first, |acc, &x| self.join(acc, x)))
    }

    /// Sum of covering-graph distances from `z` to every profile entry.
    pub fn remoteness(&self, z: usize, profile: &[usize]) -> u64 {
        profile.iter().map(|&x| self.cover_dist(z, x) as u64).sum()
    }

    /// All minimizers of the remoteness function, ascending.
    pub fn metric_median_set(&self, profile: &[usize]) -> Result<Vec<usize>> {
        self.require_median()?;
        self.require_graded()?;
        let scores: Vec<u64> = (0..self.len()).map(|z| self.remoteness(z, profile)).collect();
        let best = scores.iter().copied().min().unwrap_or(0);
        Ok((0..self.len()).filter(|&z| scores[z] == best).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> Poset {
        // 0 bottom, 1 and 2 incomparable, 3 top
        Poset::from_fn(4, |x, y| x == y || x == 0 || y == 3).unwrap()
    }

    /// Two minimal elements under a common top: a join-semilattice without
    /// bottom.
    fn vee() -> Poset {
        Poset::from_fn(3, |x, y| x == y || y == 2).unwrap()
    }

    #[test]
    fn chain_of_two() {
        let ctx = MedianContext::new(Poset::chain(2)).unwrap();
        assert_eq!(ctx.top(), 1);
        assert_eq!(ctx.meet_irreducibles(), &[0]);
        assert_eq!((ctx.rank(0), ctx.rank(1)), (0, 1));
        assert_eq!(ctx.dist_rank(0, 1).unwrap(), 1);
        let r = ctx.report();
        assert!(
            r.is_poset
                && r.is_join_semilattice
                && r.is_upper_distributive
                && r.is_meet_helly
                && r.is_median
                && r.is_graded
                && r.is_distributive_lattice
                && r.is_coatomistic
                && r.is_atomistic
        );
    }

    #[test]
    fn diamond_is_median() {
        let ctx = MedianContext::new_median(diamond()).unwrap();
        assert!(ctx.report().is_distributive_lattice);
        assert_eq!(ctx.median(1, 2, 0).unwrap(), 0);
        assert_eq!(ctx.median(1, 2, 3).unwrap(), 3);
        assert_eq!(ctx.interval(1, 2).unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn missing_join_is_rejected() {
        // two maximal elements
        let p = Poset::from_fn(3, |x, y| x == y || x == 0).unwrap();
        assert_eq!(
            MedianContext::new(p).unwrap_err(),
            Error::NotJoinSemilattice(1, 2)
        );
        assert!(!classify(&Poset::from_fn(2, |x, y| x == y).unwrap()).is_join_semilattice);
    }

    #[test]
    fn pentagon_is_not_median() {
        // N5: 0 < 1 < 2 < 4, 0 < 3 < 4
        let le = |x: usize, y: usize| {
            x == y || x == 0 || y == 4 || (x == 1 && y == 2)
        };
        let p = Poset::from_fn(5, le).unwrap();
        let ctx = MedianContext::new(p).unwrap();
        assert!(!ctx.report().is_upper_distributive);
        assert!(!ctx.report().is_graded);
        assert!(matches!(ctx.median(0, 1, 2), Err(Error::NotMedian(_))));
        assert!(matches!(ctx.dist_rank(0, 1), Err(Error::NotGraded(_, _))));
    }

    #[test]
    fn vee_has_partial_meets() {
        let ctx = MedianContext::new_median(vee()).unwrap();
        assert_eq!(ctx.bottom(), None);
        assert_eq!(ctx.meet(0, 1), None);
        assert!(ctx.atoms().is_empty());
        assert_eq!(ctx.join_irreducibles(), &[0, 1]);
        assert_eq!(ctx.meet_of_set(&[]).unwrap(), 2);
        assert_eq!(ctx.meet_of_set(&[1]).unwrap(), 1);
        assert_eq!(ctx.meet_of_set(&[2, 0, 1]).unwrap_err(), Error::MeetUndefined(0, 1));
        let r = ctx.report();
        assert!(r.is_median && !r.is_distributive_lattice && !r.is_atomistic);
    }

    #[test]
    fn median_set_of_unanimous_profile() {
        let ctx = MedianContext::new(diamond()).unwrap();
        assert_eq!(ctx.metric_median_set(&[1, 1, 1]).unwrap(), vec![1]);
        // even profile: whole interval ties
        assert_eq!(ctx.metric_median_set(&[1, 2]).unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn size_limit() {
        let p = Poset::chain(DENSE_LIMIT + 1);
        assert!(matches!(
            MedianContext::new(p),
            Err(Error::SizeLimit { .. })
        ));
    }
}
