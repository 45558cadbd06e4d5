//! Exhaustive property checks of tabulated aggregation rules.
//!
//! Every check quantifies over the whole profile cube. Loops run in parallel
//! but always report the violation at the smallest profile index, so
//! witnesses are deterministic.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::context::MedianContext;
use crate::error::{Error, Result};
use crate::profile::ProfileCube;
use crate::relation::BinRel;
use crate::rules::{n_m, RuleTable, Target};
use crate::spaces::{condorcet_winner, RelationSpace};

/// Membership table for every median interval `I(x, y)`.
#[derive(Debug, Clone)]
pub struct IntervalTable {
    n: usize,
    bits: Vec<FixedBitSet>,
}

impl IntervalTable {
    pub fn new(ctx: &MedianContext) -> Result<Self> {
        ctx.require_median()?;
        let n = ctx.len();
        let bits = (0..n * n)
            .into_par_iter()
            .map(|k| ctx.interval_bits(k / n, k % n))
            .collect();
        Ok(IntervalTable { n, bits })
    }

    /// `z ∈ I(x, y)`.
    #[inline]
    pub fn contains(&self, x: usize, y: usize, z: usize) -> bool {
        self.bits[x * self.n + y].contains(z)
    }
}

/// A preorder `⪰` over the elements of a space (a voter's preference over
/// outcomes).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomePreference {
    n: usize,
    geq: Vec<bool>,
}

impl OutcomePreference {
    /// `a ⪰ b` iff `levels[a] >= levels[b]`.
    pub fn from_levels(levels: &[u8]) -> Self {
        let n = levels.len();
        let geq = (0..n * n).map(|k| levels[k / n] >= levels[k % n]).collect();
        OutcomePreference { n, geq }
    }

    /// Validates a row-major matrix (`geq[a * n + b]` iff `a ⪰ b`).
    pub fn from_matrix(n: usize, geq: Vec<bool>) -> Result<Self> {
        if geq.len() != n * n {
            return Err(Error::BadShape { n });
        }
        let p = OutcomePreference { n, geq };
        if let Some(a) = (0..n).find(|&a| !p.geq(a, a)) {
            return Err(Error::BadInput(format!("preference not reflexive at {a}")));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if p.geq(a, b) && p.geq(b, c) && !p.geq(a, c) {
                        return Err(Error::BadInput(format!(
                            "preference not transitive at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn geq(&self, a: usize, b: usize) -> bool {
        self.geq[a * self.n + b]
    }

    /// `a ≻ b`.
    #[inline]
    pub fn strict(&self, a: usize, b: usize) -> bool {
        self.geq(a, b) && !self.geq(b, a)
    }

    /// Elements weakly above everything.
    pub fn maxima(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&a| (0..self.n).all(|b| self.geq(a, b)))
            .collect()
    }

    /// The unique maximum, if there is exactly one.
    pub fn top(&self) -> Option<usize> {
        match self.maxima().as_slice() {
            &[t] => Some(t),
            _ => None,
        }
    }

    /// `UC(⪰, y) = { z : z ⪰ y }`.
    pub fn upper_contour(&self, y: usize) -> Vec<usize> {
        (0..self.n).filter(|&z| self.geq(z, y)).collect()
    }
}

fn canonical_levels(iv: &IntervalTable, n: usize, x: usize, y: usize) -> impl Fn(usize) -> u8 + '_ {
    move |z| {
        debug_assert!(z < n);
        if z == x {
            2
        } else if iv.contains(x, y, z) {
            1
        } else {
            0
        }
    }
}

/// Three-class preference: `{x}` on top, `I(x, y) \ {x}` in the middle,
/// everything else indifferent at the bottom.
pub fn canonical_lu_preorder(ctx: &MedianContext, x: usize, y: usize) -> Result<OutcomePreference> {
    ctx.require_median()?;
    let n = ctx.len();
    let levels: Vec<u8> = (0..n)
        .map(|z| {
            if z == x {
                2
            } else if ctx.in_interval(x, y, z) {
                1
            } else {
                0
            }
        })
        .collect();
    Ok(OutcomePreference::from_levels(&levels))
}

/// Outcome of a single predicate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub predicate: String,
    pub verdict: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub details: BTreeMap<String, bool>,
}

impl CheckReport {
    pub fn new(predicate: impl Into<String>, witness: Option<Witness>) -> Self {
        CheckReport {
            predicate: predicate.into(),
            verdict: witness.is_none(),
            witness,
            details: BTreeMap::new(),
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.predicate, if self.verdict { "holds" } else { "fails" })
    }
}

/// A counterexample, re-checkable through [`Witness::confirm`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `agent` with preference `canonical_lu_preorder(profile[agent],
    /// reference)` strictly prefers the outcome after reporting `deviation`.
    Manipulation {
        profile: Vec<usize>,
        agent: usize,
        deviation: usize,
        reference: usize,
        truthful: usize,
        manipulated: usize,
    },
    /// `truthful ∉ I(profile[agent], deviated)`.
    Betweenness {
        profile: Vec<usize>,
        agent: usize,
        deviation: usize,
        truthful: usize,
        deviated: usize,
    },
    /// `N_m(before) ⊆ N_m(after)`, `f(before) <= m`, not `f(after) <= m`.
    MonotoneIndependence {
        before: Vec<usize>,
        after: Vec<usize>,
        m: usize,
        outcome_before: usize,
        outcome_after: usize,
    },
    /// `N_m(before) = N_m(after)` but `f` disagrees about `<= m`.
    Independence {
        before: Vec<usize>,
        after: Vec<usize>,
        m: usize,
        outcome_before: usize,
        outcome_after: usize,
    },
    /// `lower <= upper` pointwise but not `f(lower) <= f(upper)`.
    Isotony {
        lower: Vec<usize>,
        upper: Vec<usize>,
        outcome_lower: usize,
        outcome_upper: usize,
    },
    /// The outcome is not among `allowed`.
    Outcome {
        profile: Vec<usize>,
        allowed: Vec<usize>,
        outcome: usize,
    },
    AgentPermutation {
        profile: Vec<usize>,
        permuted: Vec<usize>,
        outcome: usize,
        permuted_outcome: usize,
    },
    /// `f(π(profile)) != π(f(profile))` for the alternative relabelling `perm`.
    GroundPermutation {
        profile: Vec<usize>,
        perm: Vec<usize>,
        outcome: usize,
        permuted_outcome: usize,
    },
    Unreached {
        element: usize,
    },
    NeverPivotal {
        agent: usize,
    },
    /// Unanimous pairs (alternative indices) missing from the outcome.
    Pareto {
        profile: Vec<usize>,
        pairs: Vec<[usize; 2]>,
        outcome: usize,
    },
    Condorcet {
        profile: Vec<usize>,
        winner: usize,
        outcome: usize,
    },
    /// Pairs `(u, v)` meeting the hypothesis with `u f(before) v` but not
    /// `u f(after) v`.
    PairwiseIndependence {
        before: Vec<usize>,
        after: Vec<usize>,
        monotonic: bool,
        pairs: Vec<[usize; 2]>,
        outcome_before: usize,
        outcome_after: usize,
    },
    NoUniqueTop {
        maxima: Vec<usize>,
    },
    /// `z ∈ I(top, y) \ {top}` and `y ≻ z`.
    LocalUnimodality {
        top: usize,
        y: usize,
        z: usize,
    },
    Richness {
        x: usize,
        y: usize,
    },
    Disagreement {
        verdicts: BTreeMap<String, bool>,
    },
    Mismatch {
        profile: Vec<usize>,
        expected: usize,
        got: usize,
    },
    /// Competing outcomes at one profile.
    Tie {
        profile: Vec<usize>,
        minimizers: Vec<usize>,
    },
    /// Elements exhibiting a structural failure.
    Elements {
        elements: Vec<usize>,
        note: String,
    },
    Error {
        message: String,
    },
}

impl Witness {
    /// Re-derives the violation from scratch using only public operations on
    /// the context, the space and the table. Returns `Ok(false)` when the
    /// witness does not show what it claims.
    pub fn confirm<'a>(&self, target: impl Into<Target<'a>>, table: &RuleTable) -> Result<bool> {
        let target = target.into();
        let ctx = target.ctx();
        let f = |p: &[usize]| table.get(p);
        let swap = |p: &[usize], i: usize, y: usize| {
            let mut q = p.to_vec();
            q[i] = y;
            q
        };
        Ok(match self {
            Witness::Manipulation {
                profile,
                agent,
                deviation,
                reference,
                truthful,
                manipulated,
            } => {
                let pref = canonical_lu_preorder(ctx, profile[*agent], *reference)?;
                let lu = is_locally_unimodal(ctx, &pref)?.verdict;
                let t = f(profile);
                let m = f(&swap(profile, *agent, *deviation));
                lu && t == *truthful && m == *manipulated && pref.strict(m, t)
            }
            Witness::Betweenness {
                profile,
                agent,
                deviation,
                truthful,
                deviated,
            } => {
                let t = f(profile);
                let d = f(&swap(profile, *agent, *deviation));
                t == *truthful
                    && d == *deviated
                    && !ctx.interval(profile[*agent], d)?.contains(&t)
            }
            Witness::MonotoneIndependence {
                before,
                after,
                m,
                outcome_before,
                outcome_after,
            } => {
                let (b, a) = (f(before), f(after));
                let (nb, na) = (n_m(ctx, before, *m), n_m(ctx, after, *m));
                ctx.meet_irreducibles().contains(m)
                    && nb & na == nb
                    && b == *outcome_before
                    && a == *outcome_after
                    && ctx.leq(b, *m)
                    && !ctx.leq(a, *m)
            }
            Witness::Independence {
                before,
                after,
                m,
                outcome_before,
                outcome_after,
            } => {
                let (b, a) = (f(before), f(after));
                ctx.meet_irreducibles().contains(m)
                    && n_m(ctx, before, *m) == n_m(ctx, after, *m)
                    && b == *outcome_before
                    && a == *outcome_after
                    && ctx.leq(b, *m) != ctx.leq(a, *m)
            }
            Witness::Isotony {
                lower,
                upper,
                outcome_lower,
                outcome_upper,
            } => {
                let (l, u) = (f(lower), f(upper));
                lower.iter().zip(upper).all(|(&x, &y)| ctx.leq(x, y))
                    && l == *outcome_lower
                    && u == *outcome_upper
                    && !ctx.leq(l, u)
            }
            Witness::Outcome {
                profile,
                allowed,
                outcome,
            } => {
                let o = f(profile);
                o == *outcome
                    && !allowed.contains(&o)
                    && profile.iter().all(|x| allowed.contains(x))
            }
            Witness::AgentPermutation {
                profile,
                permuted,
                outcome,
                permuted_outcome,
            } => {
                let mut a = profile.clone();
                let mut b = permuted.clone();
                a.sort_unstable();
                b.sort_unstable();
                a == b
                    && f(profile) == *outcome
                    && f(permuted) == *permuted_outcome
                    && outcome != permuted_outcome
            }
            Witness::GroundPermutation {
                profile,
                perm,
                outcome,
                permuted_outcome,
            } => {
                let space = target.space("relation space")?;
                let moved: Vec<usize> = profile.iter().map(|&x| space.permute(x, perm)).collect();
                let o = f(profile);
                let po = f(&moved);
                o == *outcome && po == *permuted_outcome && po != space.permute(o, perm)
            }
            Witness::Unreached { element } => table.outcomes.iter().all(|&o| o as usize != *element),
            Witness::NeverPivotal { agent } => {
                let cube = table.cube();
                (0..cube.count()).all(|idx| {
                    let p = cube.decode(idx);
                    (0..cube.size()).all(|y| f(&swap(&p, *agent, y)) == table.at(idx))
                })
            }
            Witness::Pareto {
                profile,
                pairs,
                outcome,
            } => {
                let space = target.space("relation space")?;
                let o = f(profile);
                o == *outcome
                    && !pairs.is_empty()
                    && pairs.iter().all(|&[u, v]| {
                        profile.iter().all(|&x| space.element(x).holds(u, v))
                            && !space.element(o).holds(u, v)
                    })
            }
            Witness::Condorcet {
                profile,
                winner,
                outcome,
            } => {
                let space = target.space("relation space")?;
                let rels: Vec<BinRel> = profile.iter().map(|&x| *space.element(x)).collect();
                let o = f(profile);
                condorcet_winner(space.ground(), &rels) == Some(*winner)
                    && o == *outcome
                    && !space.element(o).top_set().contains(winner)
            }
            Witness::PairwiseIndependence {
                before,
                after,
                monotonic,
                pairs,
                outcome_before,
                outcome_after,
            } => {
                let space = target.space("relation space")?;
                let (b, a) = (f(before), f(after));
                let (rb, ra) = (space.element(b), space.element(a));
                b == *outcome_before
                    && a == *outcome_after
                    && !pairs.is_empty()
                    && pairs.iter().all(|&[u, v]| {
                        let hyp = before.iter().zip(after).all(|(&x, &y)| {
                            let (hx, hy) = (space.element(x).holds(u, v), space.element(y).holds(u, v));
                            if *monotonic {
                                !hx || hy
                            } else {
                                hx == hy
                            }
                        });
                        hyp && rb.holds(u, v) && !ra.holds(u, v)
                    })
            }
            Witness::Mismatch {
                profile,
                expected,
                got,
            } => f(profile) == *expected && expected != got,
            Witness::NoUniqueTop { .. }
            | Witness::LocalUnimodality { .. }
            | Witness::Richness { .. }
            | Witness::Disagreement { .. }
            | Witness::Tie { .. }
            | Witness::Elements { .. }
            | Witness::Error { .. } => {
                return Err(Error::BadInput("witness is not about a rule table".into()))
            }
        })
    }
}

/// Checks both clauses of local unimodality.
pub fn is_locally_unimodal(ctx: &MedianContext, pref: &OutcomePreference) -> Result<CheckReport> {
    ctx.require_median()?;
    let name = "locally_unimodal";
    if pref.len() != ctx.len() {
        return Err(Error::BadInput("preference size differs from the space".into()));
    }
    let Some(top) = pref.top() else {
        return Ok(CheckReport::new(
            name,
            Some(Witness::NoUniqueTop {
                maxima: pref.maxima(),
            }),
        ));
    };
    let n = ctx.len();
    for y in 0..n {
        for z in 0..n {
            if z != top && ctx.in_interval(top, y, z) && pref.strict(y, z) {
                return Ok(CheckReport::new(
                    name,
                    Some(Witness::LocalUnimodality { top, y, z }),
                ));
            }
        }
    }
    Ok(CheckReport::new(name, None))
}

/// Whether `domain` holds, for every `(x, y)`, a preference with top `x`
/// and upper contour `I(x, y)` at `y`. Members are not themselves checked
/// for local unimodality.
pub fn is_rich(ctx: &MedianContext, domain: &[OutcomePreference]) -> Result<CheckReport> {
    ctx.require_median()?;
    let n = ctx.len();
    for x in 0..n {
        for y in 0..n {
            let iv = ctx.interval(x, y)?;
            let found = domain
                .iter()
                .any(|p| p.top() == Some(x) && p.upper_contour(y) == iv);
            if !found {
                return Ok(CheckReport::new("rich", Some(Witness::Richness { x, y })));
            }
        }
    }
    Ok(CheckReport::new("rich", None))
}

/// Every `canonical_lu_preorder(x, y)`.
pub fn canonical_domain(ctx: &MedianContext) -> Result<Vec<OutcomePreference>> {
    let n = ctx.len();
    (0..n * n)
        .map(|k| canonical_lu_preorder(ctx, k / n, k % n))
        .collect()
}

fn check_table(ctx: &MedianContext, table: &RuleTable) -> Result<ProfileCube> {
    table.validate()?;
    if table.size != ctx.len() {
        return Err(Error::BadInput(format!(
            "table over {} elements, space has {}",
            table.size,
            ctx.len()
        )));
    }
    Ok(table.cube())
}

/// First `Some` over the profile cube, by profile index.
fn scan<W: Send>(cube: ProfileCube, f: impl Fn(usize, &[usize]) -> Option<W> + Sync) -> Option<W> {
    (0..cube.count())
        .into_par_iter()
        .map_init(
            || vec![0; cube.n()],
            |buf, idx| {
                cube.decode_into(idx, buf);
                f(idx, buf)
            },
        )
        .find_first(Option::is_some)
        .flatten()
}

fn with(p: &[usize], i: usize, y: usize) -> Vec<usize> {
    let mut q = p.to_vec();
    q[i] = y;
    q
}

/// No agent gains by misreporting under any three-class canonical
/// preference with her true report on top.
pub fn is_strategy_proof(ctx: &MedianContext, table: &RuleTable) -> Result<CheckReport> {
    let cube = check_table(ctx, table)?;
    let iv = IntervalTable::new(ctx)?;
    let size = cube.size();
    let w = scan(cube, |idx, p| {
        let truthful = table.at(idx);
        for (i, &x) in p.iter().enumerate() {
            for y in (0..size).filter(|&y| y != x) {
                let manipulated = table.at(cube.replace(idx, i, x, y));
                if manipulated == truthful {
                    continue;
                }
                for reference in 0..size {
                    let level = canonical_levels(&iv, size, x, reference);
                    if level(manipulated) > level(truthful) {
                        return Some(Witness::Manipulation {
                            profile: p.to_vec(),
                            agent: i,
                            deviation: y,
                            reference,
                            truthful,
                            manipulated,
                        });
                    }
                }
            }
        }
        None
    });
    Ok(CheckReport::new("strategy_proof", w))
}

/// `f(x_N) ∈ I(x_i, f(y_i, x_{-i}))` for every unilateral deviation.
pub fn is_bmu_monotonic(ctx: &MedianContext, table: &RuleTable) -> Result<CheckReport> {
    let cube = check_table(ctx, table)?;
    let iv = IntervalTable::new(ctx)?;
    let w = scan(cube, |idx, p| {
        let truthful = table.at(idx);
        for (i, &x) in p.iter().enumerate() {
            for y in 0..cube.size() {
                let deviated = table.at(cube.replace(idx, i, x, y));
                if !iv.contains(x, deviated, truthful) {
                    return Some(Witness::Betweenness {
                        profile: p.to_vec(),
                        agent: i,
                        deviation: y,
                        truthful,
                        deviated,
                    });
                }
            }
        }
        None
    });
    Ok(CheckReport::new("bmu_monotonic", w))
}

/// Profile pairs differing in one agent suffice for the three
/// independence/isotony checks: any qualifying pair is joined by a chain of
/// single-agent replacements along which the hypothesis keeps holding.
fn one_step<W: Send>(
    ctx: &MedianContext,
    table: &RuleTable,
    visit: impl Fn(&[usize], usize, usize, usize, usize, usize) -> Option<W> + Sync,
) -> Result<Option<W>> {
    let cube = check_table(ctx, table)?;
    Ok(scan(cube, |idx, p| {
        let before = table.at(idx);
        p.iter().enumerate().find_map(|(i, &x)| {
            (0..cube.size()).find_map(|y| {
                let after = table.at(cube.replace(idx, i, x, y));
                visit(p, i, y, x, before, after)
            })
        })
    }))
}

/// If `N_m(x_N) ⊆ N_m(y_N)` then `f(x_N) <= m` implies `f(y_N) <= m`.
pub fn is_monotonic_m_independent(ctx: &MedianContext, table: &RuleTable) -> Result<CheckReport> {
    let w = one_step(ctx, table, |p, i, y, x, before, after| {
        ctx.meet_irreducibles().iter().find_map(|&m| {
            let grows = !ctx.leq(x, m) || ctx.leq(y, m);
            (grows && ctx.leq(before, m) && !ctx.leq(after, m)).then(|| {
                Witness::MonotoneIndependence {
                    before: p.to_vec(),
                    after: with(p, i, y),
                    m,
                    outcome_before: before,
                    outcome_after: after,
                }
            })
        })
    })?;
    Ok(CheckReport::new("monotonic_m_independent", w))
}

/// If `N_m(x_N) = N_m(y_N)` then `f(x_N) <= m` iff `f(y_N) <= m`.
pub fn is_m_independent(ctx: &MedianContext, table: &RuleTable) -> Result<CheckReport> {
    let w = one_step(ctx, table, |p, i, y, x, before, after| {
        ctx.meet_irreducibles().iter().find_map(|&m| {
            let same = ctx.leq(x, m) == ctx.leq(y, m);
            (same && ctx.leq(before, m) != ctx.leq(after, m)).then(|| Witness::Independence {
                before: p.to_vec(),
                after: with(p, i, y),
                m,
                outcome_before: before,
                outcome_after: after,
            })
        })
    })?;
    Ok(CheckReport::new("m_independent", w))
}

/// `x_N <= x'_N` pointwise implies `f(x_N) <= f(x'_N)`.
pub fn is_isotonic(ctx: &MedianContext, table: &RuleTable) -> Result<CheckReport> {
    let w = one_step(ctx, table, |p, i, y, x, before, after| {
        (ctx.leq(x, y) && !ctx.leq(before, after)).then(|| Witness::Isotony {
            lower: p.to_vec(),
            upper: with(p, i, y),
            outcome_lower: before,
            outcome_upper: after,
        })
    })?;
    Ok(CheckReport::new("isotonic", w))
}

/// Largest space and population for the all-pairs form.
pub const FULL_PAIR_LIMIT: (usize, usize) = (13, 2);

/// Monotone independence over all profile pairs, not just one-step ones.
pub fn is_monotonic_m_independent_all_pairs(
    ctx: &MedianContext,
    table: &RuleTable,
) -> Result<CheckReport> {
    let cube = check_table(ctx, table)?;
    let (max_x, max_n) = FULL_PAIR_LIMIT;
    if cube.size() > max_x {
        return Err(Error::size("elements", cube.size(), max_x));
    }
    if cube.n() > max_n {
        return Err(Error::size("agents", cube.n(), max_n));
    }
    let w = scan(cube, |idx, p| {
        let before = table.at(idx);
        (0..cube.count()).find_map(|jdx| {
            let q = cube.decode(jdx);
            let after = table.at(jdx);
            ctx.meet_irreducibles().iter().find_map(|&m| {
                let (nb, na) = (n_m(ctx, p, m), n_m(ctx, &q, m));
                (nb & na == nb && ctx.leq(before, m) && !ctx.leq(after, m)).then(|| {
                    Witness::MonotoneIndependence {
                        before: p.to_vec(),
                        after: q.clone(),
                        m,
                        outcome_before: before,
                        outcome_after: after,
                    }
                })
            })
        })
    });
    Ok(CheckReport::new("monotonic_m_independent", w))
}

/// The remaining named axioms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Inclusive,
    Anonymous,
    Idempotent,
    Sovereign,
    NeutralGroundset,
    BiIdempotent,
    BasicPareto,
    WeakCondorcet,
    MonotonicIia,
    Iia,
}

impl Axiom {
    pub const ALL: [Axiom; 10] = [
        Axiom::Inclusive,
        Axiom::Anonymous,
        Axiom::Idempotent,
        Axiom::Sovereign,
        Axiom::NeutralGroundset,
        Axiom::BiIdempotent,
        Axiom::BasicPareto,
        Axiom::WeakCondorcet,
        Axiom::MonotonicIia,
        Axiom::Iia,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Inclusive => "inclusive",
            Axiom::Anonymous => "anonymous",
            Axiom::Idempotent => "idempotent",
            Axiom::Sovereign => "sovereign",
            Axiom::NeutralGroundset => "neutral_groundset",
            Axiom::BiIdempotent => "bi_idempotent",
            Axiom::BasicPareto => "basic_pareto",
            Axiom::WeakCondorcet => "weak_condorcet",
            Axiom::MonotonicIia => "monotonic_iia",
            Axiom::Iia => "iia",
        }
    }

    /// Needs the relations behind the elements.
    pub fn needs_space(self) -> bool {
        matches!(
            self,
            Axiom::NeutralGroundset
                | Axiom::BasicPareto
                | Axiom::WeakCondorcet
                | Axiom::MonotonicIia
                | Axiom::Iia
        )
    }
}

/// Every predicate the `check` front end can ask for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Predicate {
    StrategyProof,
    BmuMonotonic,
    MonotonicMIndependent,
    MIndependent,
    Isotonic,
    #[serde(untagged)]
    Axiom(Axiom),
}

impl Predicate {
    pub fn all() -> Vec<Predicate> {
        let mut v = vec![
            Predicate::StrategyProof,
            Predicate::BmuMonotonic,
            Predicate::MonotonicMIndependent,
            Predicate::MIndependent,
            Predicate::Isotonic,
        ];
        v.extend(Axiom::ALL.map(Predicate::Axiom));
        v
    }

    pub fn name(self) -> &'static str {
        match self {
            Predicate::StrategyProof => "strategy_proof",
            Predicate::BmuMonotonic => "bmu_monotonic",
            Predicate::MonotonicMIndependent => "monotonic_m_independent",
            Predicate::MIndependent => "m_independent",
            Predicate::Isotonic => "isotonic",
            Predicate::Axiom(a) => a.name(),
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Predicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().replace('-', "_");
        Predicate::all()
            .into_iter()
            .find(|p| p.name() == key)
            .ok_or_else(|| Error::BadInput(format!("unknown predicate `{s}`")))
    }
}

/// Runs one predicate.
pub fn check<'a>(target: impl Into<Target<'a>>, table: &RuleTable, which: Predicate) -> Result<CheckReport> {
    let target = target.into();
    let ctx = target.ctx();
    match which {
        Predicate::StrategyProof => is_strategy_proof(ctx, table),
        Predicate::BmuMonotonic => is_bmu_monotonic(ctx, table),
        Predicate::MonotonicMIndependent => is_monotonic_m_independent(ctx, table),
        Predicate::MIndependent => is_m_independent(ctx, table),
        Predicate::Isotonic => is_isotonic(ctx, table),
        Predicate::Axiom(a) => axiom(target, table, a),
    }
}

/// Checks one axiom exhaustively.
pub fn axiom<'a>(target: impl Into<Target<'a>>, table: &RuleTable, which: Axiom) -> Result<CheckReport> {
    let target = target.into();
    let ctx = target.ctx();
    let cube = check_table(ctx, table)?;
    let space = if which.needs_space() {
        Some(target.space("relation space")?)
    } else {
        None
    };
    let n = cube.n();
    let size = cube.size();
    let w = match which {
        Axiom::Inclusive => (0..n).find_map(|i| {
            let pivotal = scan(cube, |idx, p| {
                (0..size)
                    .any(|y| table.at(cube.replace(idx, i, p[i], y)) != table.at(idx))
                    .then_some(())
            });
            pivotal.is_none().then_some(Witness::NeverPivotal { agent: i })
        }),
        Axiom::Anonymous => scan(cube, |idx, p| {
            (0..n.saturating_sub(1)).find_map(|i| {
                let mut q = p.to_vec();
                q.swap(i, i + 1);
                let (o, po) = (table.at(idx), table.at(cube.encode(&q)));
                (o != po).then(|| Witness::AgentPermutation {
                    profile: p.to_vec(),
                    permuted: q,
                    outcome: o,
                    permuted_outcome: po,
                })
            })
        }),
        Axiom::Idempotent => (0..size).find_map(|x| {
            let p = vec![x; n];
            let o = table.get(&p);
            (o != x).then(|| Witness::Outcome {
                profile: p,
                allowed: vec![x],
                outcome: o,
            })
        }),
        Axiom::Sovereign => {
            let mut hit = vec![false; size];
            for &o in &table.outcomes {
                hit[o as usize] = true;
            }
            hit.iter()
                .position(|&h| !h)
                .map(|element| Witness::Unreached { element })
        }
        Axiom::BiIdempotent => (0..size).find_map(|y| {
            (y..size).find_map(|z| {
                (0..1u32 << n).find_map(|mask| {
                    let p: Vec<usize> = (0..n).map(|i| if mask >> i & 1 == 1 { z } else { y }).collect();
                    let o = table.get(&p);
                    (o != y && o != z).then(|| Witness::Outcome {
                        profile: p,
                        allowed: if y == z { vec![y] } else { vec![y, z] },
                        outcome: o,
                    })
                })
            })
        }),
        Axiom::NeutralGroundset => {
            let space = space.expect("checked above");
            let perms = permutations(space.ground().len());
            scan(cube, |idx, p| {
                let o = table.at(idx);
                perms.iter().find_map(|perm| {
                    let moved: Vec<usize> = p.iter().map(|&x| space.permute(x, perm)).collect();
                    let po = table.at(cube.encode(&moved));
                    (po != space.permute(o, perm)).then(|| Witness::GroundPermutation {
                        profile: p.to_vec(),
                        perm: perm.clone(),
                        outcome: o,
                        permuted_outcome: po,
                    })
                })
            })
        }
        Axiom::BasicPareto => {
            let space = space.expect("checked above");
            let m = space.ground().len();
            scan(cube, |idx, p| {
                let common = p
                    .iter()
                    .fold(BinRel::full(m), |acc, &x| acc.intersection(space.element(x)));
                let o = table.at(idx);
                let missing = common.difference(space.element(o));
                (!missing.is_empty()).then(|| Witness::Pareto {
                    profile: p.to_vec(),
                    pairs: missing.pairs().map(|(u, v)| [u, v]).collect(),
                    outcome: o,
                })
            })
        }
        Axiom::WeakCondorcet => {
            let space = space.expect("checked above");
            scan(cube, |idx, p| {
                let rels: Vec<BinRel> = p.iter().map(|&x| *space.element(x)).collect();
                let winner = condorcet_winner(space.ground(), &rels)?;
                let o = table.at(idx);
                (!space.element(o).top_set().contains(&winner)).then(|| Witness::Condorcet {
                    profile: p.to_vec(),
                    winner,
                    outcome: o,
                })
            })
        }
        Axiom::Iia | Axiom::MonotonicIia => {
            let space = space.expect("checked above");
            let monotonic = which == Axiom::MonotonicIia;
            let bits = |x: usize| space.element(x).bits();
            // Replacing one agent at a time connects any two profiles that
            // meet the pairwise hypothesis, so one-step pairs suffice.
            scan(cube, |idx, p| {
                let before = table.at(idx);
                p.iter().enumerate().find_map(|(i, &x)| {
                    (0..size).find_map(|y| {
                        let after = table.at(cube.replace(idx, i, x, y));
                        let hyp = if monotonic {
                            !bits(x) | bits(y)
                        } else {
                            !(bits(x) ^ bits(y))
                        };
                        let bad = hyp & bits(before) & !bits(after);
                        (bad != 0).then(|| Witness::PairwiseIndependence {
                            before: p.to_vec(),
                            after: with(p, i, y),
                            monotonic,
                            pairs: pairs_of(space, bad),
                            outcome_before: before,
                            outcome_after: after,
                        })
                    })
                })
            })
        }
    };
    Ok(CheckReport::new(which.name(), w))
}

fn pairs_of(space: &RelationSpace, bits: u64) -> Vec<[usize; 2]> {
    BinRel::from_bits(space.ground().len(), bits)
        .pairs()
        .map(|(u, v)| [u, v])
        .collect()
}

/// IIA between two given profiles: every ordered pair `(u, v)` on which all
/// agents agree across the two profiles but `u f v` holds only before.
pub fn check_iia_between(
    space: &RelationSpace,
    table: &RuleTable,
    before: &[usize],
    after: &[usize],
) -> Result<CheckReport> {
    let cube = check_table(space.ctx(), table)?;
    cube.check(before)?;
    cube.check(after)?;
    let m = space.ground().len();
    let same = before.iter().zip(after).fold(BinRel::full(m).bits(), |acc, (&x, &y)| {
        acc & !(space.element(x).bits() ^ space.element(y).bits())
    });
    let (b, a) = (table.get(before), table.get(after));
    let bad = same & space.element(b).bits() & !space.element(a).bits();
    let w = (bad != 0).then(|| Witness::PairwiseIndependence {
        before: before.to_vec(),
        after: after.to_vec(),
        monotonic: false,
        pairs: pairs_of(space, bad),
        outcome_before: b,
        outcome_after: a,
    });
    Ok(CheckReport::new("iia", w))
}

/// All permutations of `0..m` except the identity, lexicographic.
fn permutations(m: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for a in 0..used.len() {
            if !used[a] {
                used[a] = true;
                cur.push(a);
                rec(cur, used, out);
                cur.pop();
                used[a] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; m], &mut out);
    out.remove(0);
    out
}
