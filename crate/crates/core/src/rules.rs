//! Aggregation rules `f : X^N -> X`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coalition::{self, Coalition, FilterFamily, OrderFilterN};
use crate::context::MedianContext;
use crate::error::{Error, Result};
use crate::profile::ProfileCube;
use crate::relation::{BinRel, Flavor};
use crate::spaces::RelationSpace;

/// What a rule aggregates over: an abstract semilattice or a relation space.
#[derive(Debug, Clone, Copy)]
pub enum Target<'a> {
    Context(&'a MedianContext),
    Space(&'a RelationSpace),
}

impl<'a> Target<'a> {
    pub fn ctx(&self) -> &'a MedianContext {
        match *self {
            Target::Context(c) => c,
            Target::Space(s) => s.ctx(),
        }
    }

    pub fn space(&self, expected: &'static str) -> Result<&'a RelationSpace> {
        match *self {
            Target::Space(s) => Ok(s),
            Target::Context(_) => Err(Error::WrongFlavor {
                expected,
                got: None,
            }),
        }
    }

    pub fn len(&self) -> usize {
        self.ctx().len()
    }

    pub fn is_empty(&self) -> bool {
        self.ctx().is_empty()
    }
}

impl<'a> From<&'a MedianContext> for Target<'a> {
    fn from(c: &'a MedianContext) -> Self {
        Target::Context(c)
    }
}

impl<'a> From<&'a RelationSpace> for Target<'a> {
    fn from(s: &'a RelationSpace) -> Self {
        Target::Space(s)
    }
}

/// A linear order on the elements used to break ties (earlier wins).
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TieBreak {
    /// Canonical enumeration order.
    #[default]
    Canonical,
    /// Reverse canonical order.
    Reversed,
    /// Explicit order: `order[k]` is the `k`-th smallest element.
    Order(Vec<usize>),
}

impl TieBreak {
    /// `pos[x]` = rank of `x` in the order.
    pub fn positions(&self, size: usize) -> Result<Vec<usize>> {
        match self {
            TieBreak::Canonical => Ok((0..size).collect()),
            TieBreak::Reversed => Ok((0..size).rev().collect()),
            TieBreak::Order(order) => {
                let mut pos = vec![usize::MAX; size];
                if order.len() != size {
                    return Err(Error::BadInput(format!(
                        "tie-break lists {} of {size} elements",
                        order.len()
                    )));
                }
                for (k, &x) in order.iter().enumerate() {
                    if x >= size || pos[x] != usize::MAX {
                        return Err(Error::BadInput(format!(
                            "tie-break is not a permutation at {x}"
                        )));
                    }
                    pos[x] = k;
                }
                Ok(pos)
            }
        }
    }
}

/// Every outcome of a rule, indexed by [`ProfileCube`] encoding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleTable {
    pub n: usize,
    pub size: usize,
    pub outcomes: Vec<u32>,
}

impl RuleTable {
    pub fn cube(&self) -> ProfileCube {
        ProfileCube::new(self.n, self.size).expect("table was built from a valid cube")
    }

    /// Checks shape; outcomes must be elements.
    pub fn validate(&self) -> Result<()> {
        let cube = ProfileCube::new(self.n, self.size)?;
        if self.outcomes.len() != cube.count() {
            return Err(Error::BadInput(format!(
                "table has {} outcomes, expected {}",
                self.outcomes.len(),
                cube.count()
            )));
        }
        match self.outcomes.iter().find(|&&o| o as usize >= self.size) {
            Some(o) => Err(Error::BadInput(format!("outcome {o} outside the space"))),
            None => Ok(()),
        }
    }

    #[inline]
    pub fn at(&self, idx: usize) -> usize {
        self.outcomes[idx] as usize
    }

    pub fn get(&self, profile: &[usize]) -> usize {
        self.at(self.cube().encode(profile))
    }
}

/// Which of the two lattice filter forms to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FilterForm {
    /// `⋂_S ((∪_{i∈S} R_i) ∪ R_S)`.
    MeetOfJoins,
    /// `⋃_S ((∩_{i∈S} R_i) ∩ R_S)`.
    JoinOfMeets,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum RuleSpec {
    /// `⋀{ m ∈ M_X : N_m(x_N) ∈ F_m }`.
    Sponsorship { filters: FilterFamily },
    /// `⋀_{|S| >= ⌊(n+2)/2⌋} ⋁_{i∈S} x_i`.
    CoMajority,
    /// Sponsorship with `F_m = { T : |T| >= q_m }`.
    Quota { quotas: BTreeMap<usize, usize> },
    /// Remoteness minimizer over the whole space.
    GeneralizedCk {
        #[serde(default)]
        tiebreak: TieBreak,
    },
    /// Remoteness minimizer over linear orders.
    StrictCk {
        #[serde(default)]
        tiebreak: TieBreak,
    },
    /// Form `MeetOfJoins` on a relation lattice; offsets are element indices
    /// keyed by basis coalition, defaulting to the lattice bottom.
    LatticeFilter {
        filter: OrderFilterN,
        #[serde(default)]
        offsets: BTreeMap<Coalition, usize>,
    },
    /// Form `JoinOfMeets`; offsets default to the lattice top.
    LatticeDualFilter {
        filter: OrderFilterN,
        #[serde(default)]
        offsets: BTreeMap<Coalition, usize>,
    },
    /// `⋃_{|S| >= ⌊(n+2)/2⌋} ∩_{i∈S} R_i` on a relation lattice.
    MajorityLattice,
    Dictator { agent: usize },
    Constant { element: usize },
    Tabulated { table: RuleTable },
    /// Inner rule followed by the minimal monotonic retract.
    Retract { inner: Box<RuleSpec> },
}

impl RuleSpec {
    pub fn uniform_quota(ctx: &MedianContext, q: usize) -> Self {
        RuleSpec::Quota {
            quotas: ctx.meet_irreducibles().iter().map(|&m| (m, q)).collect(),
        }
    }

    /// Short human name.
    pub fn name(&self) -> String {
        match self {
            RuleSpec::Sponsorship { .. } => "sponsorship".into(),
            RuleSpec::CoMajority => "co-majority".into(),
            RuleSpec::Quota { quotas } => {
                let mut qs: Vec<usize> = quotas.values().copied().collect();
                qs.dedup();
                if qs.len() == 1 {
                    format!("quota({})", qs[0])
                } else {
                    "quota(mixed)".into()
                }
            }
            RuleSpec::GeneralizedCk { .. } => "generalized-ck".into(),
            RuleSpec::StrictCk { .. } => "strict-ck".into(),
            RuleSpec::LatticeFilter { .. } => "lattice-filter".into(),
            RuleSpec::LatticeDualFilter { .. } => "lattice-dual-filter".into(),
            RuleSpec::MajorityLattice => "majority-lattice".into(),
            RuleSpec::Dictator { agent } => format!("dictator({agent})"),
            RuleSpec::Constant { element } => format!("constant({element})"),
            RuleSpec::Tabulated { .. } => "tabulated".into(),
            RuleSpec::Retract { inner } => format!("retract({})", inner.name()),
        }
    }
}

/// Majority threshold `⌊(n+2)/2⌋`.
pub fn majority_quota(n: usize) -> usize {
    (n + 2) / 2
}

/// A rule validated against a target and population size.
#[derive(Debug, Clone)]
pub struct BoundRule<'a> {
    target: Target<'a>,
    cube: ProfileCube,
    spec: RuleSpec,
    kind: Kind,
}

#[derive(Debug, Clone)]
enum Kind {
    Sponsorship(Vec<(usize, OrderFilterN)>),
    CoMajority,
    Ck { pos: Vec<usize>, strict: bool },
    Lattice {
        form: FilterForm,
        terms: Vec<(Coalition, BinRel)>,
    },
    Dictator(usize),
    Constant(usize),
    Tabulated(RuleTable),
    Retract(Box<Kind>),
}

const LATTICE: &str = "reflexive or irreflexive relation lattice";

impl<'a> BoundRule<'a> {
    pub fn new(target: impl Into<Target<'a>>, spec: &RuleSpec, n: usize) -> Result<Self> {
        let target = target.into();
        if n == 0 || n > coalition::MAX_AGENTS {
            return Err(Error::BadProfile(format!("unsupported population n = {n}")));
        }
        let cube = ProfileCube::new(n, target.len())?;
        let kind = compile(target, spec, n)?;
        Ok(BoundRule {
            target,
            cube,
            spec: spec.clone(),
            kind,
        })
    }

    pub fn target(&self) -> Target<'a> {
        self.target
    }

    pub fn spec(&self) -> &RuleSpec {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.cube.n()
    }

    pub fn cube(&self) -> ProfileCube {
        self.cube
    }

    pub fn eval(&self, profile: &[usize]) -> Result<usize> {
        self.cube.check(profile)?;
        self.eval_kind(&self.kind, profile)
    }

    fn eval_kind(&self, kind: &Kind, profile: &[usize]) -> Result<usize> {
        let ctx = self.target.ctx();
        match kind {
            Kind::Sponsorship(filters) => sponsorship_eval_with(ctx, filters, profile),
            Kind::CoMajority => co_majority(ctx, profile),
            Kind::Ck { pos, strict: false } => Ok(ck_argmin(ctx, profile, pos, None)),
            Kind::Ck { pos, strict: true } => {
                let lin = self.target.space("total-preorder space")?.linear_orders()?;
                Ok(ck_argmin(ctx, profile, pos, Some(lin)))
            }
            Kind::Lattice { form, terms } => {
                let space = self.target.space(LATTICE)?;
                let rels: Vec<BinRel> = profile.iter().map(|&x| *space.element(x)).collect();
                let r = eval_lattice_terms(space, *form, terms, &rels);
                space.index_of(&r).ok_or_else(|| {
                    Error::InternalInvariantViolation("lattice rule left the space".into())
                })
            }
            Kind::Dictator(i) => Ok(profile[*i]),
            Kind::Constant(x) => Ok(*x),
            Kind::Tabulated(t) => Ok(t.get(profile)),
            Kind::Retract(inner) => {
                let space = self.target.space(LATTICE)?;
                let x = self.eval_kind(inner, profile)?;
                minimal_monotonic_retract(space, x)
            }
        }
    }

    /// Evaluates every profile.
    pub fn tabulate(&self) -> Result<RuleTable> {
        let cube = self.cube;
        let outcomes = (0..cube.count())
            .into_par_iter()
            .map_init(
                || vec![0; cube.n()],
                |buf, idx| {
                    cube.decode_into(idx, buf);
                    self.eval_kind(&self.kind, buf).map(|x| x as u32)
                },
            )
            .collect::<Result<Vec<u32>>>()?;
        Ok(RuleTable {
            n: cube.n(),
            size: cube.size(),
            outcomes,
        })
    }
}

fn compile(target: Target<'_>, spec: &RuleSpec, n: usize) -> Result<Kind> {
    let ctx = target.ctx();
    let size = ctx.len();
    let element = |x: usize| {
        if x < size {
            Ok(x)
        } else {
            Err(Error::BadInput(format!("element {x} outside a space of {size}")))
        }
    };
    Ok(match spec {
        RuleSpec::Sponsorship { filters } => {
            filters.validate(ctx, n)?;
            Kind::Sponsorship(filters.filters.clone().into_iter().collect())
        }
        RuleSpec::Quota { quotas } => {
            let keys: Vec<usize> = quotas.keys().copied().collect();
            if keys != ctx.meet_irreducibles() {
                return Err(Error::BadInput(format!(
                    "quota keys {keys:?} differ from meet-irreducibles {:?}",
                    ctx.meet_irreducibles()
                )));
            }
            Kind::Sponsorship(
                quotas
                    .iter()
                    .map(|(&m, &q)| (m, OrderFilterN::threshold(n, q)))
                    .collect(),
            )
        }
        RuleSpec::CoMajority => {
            ctx.require_median()?;
            Kind::CoMajority
        }
        RuleSpec::GeneralizedCk { tiebreak } => {
            ctx.require_graded()?;
            Kind::Ck {
                pos: tiebreak.positions(size)?,
                strict: false,
            }
        }
        RuleSpec::StrictCk { tiebreak } => {
            target.space("total-preorder space")?.linear_orders()?;
            ctx.require_graded()?;
            Kind::Ck {
                pos: tiebreak.positions(size)?,
                strict: true,
            }
        }
        RuleSpec::LatticeFilter { filter, offsets } => {
            lattice_kind(target, FilterForm::MeetOfJoins, filter, offsets, n)?
        }
        RuleSpec::LatticeDualFilter { filter, offsets } => {
            lattice_kind(target, FilterForm::JoinOfMeets, filter, offsets, n)?
        }
        RuleSpec::MajorityLattice => lattice_kind(
            target,
            FilterForm::JoinOfMeets,
            &OrderFilterN::threshold(n, majority_quota(n)),
            &BTreeMap::new(),
            n,
        )?,
        RuleSpec::Dictator { agent } => {
            if *agent >= n {
                return Err(Error::BadInput(format!("agent {agent} outside n = {n}")));
            }
            Kind::Dictator(*agent)
        }
        RuleSpec::Constant { element: x } => Kind::Constant(element(*x)?),
        RuleSpec::Tabulated { table } => {
            table.validate()?;
            if table.n != n || table.size != size {
                return Err(Error::BadInput(format!(
                    "table is for n = {}, |X| = {}; bound to n = {n}, |X| = {size}",
                    table.n, table.size
                )));
            }
            Kind::Tabulated(table.clone())
        }
        RuleSpec::Retract { inner } => {
            let space = target.space(LATTICE)?;
            require_lattice(space)?;
            if space.ground().len() > 4 {
                return Err(Error::size("ground set", space.ground().len(), 4));
            }
            Kind::Retract(Box::new(compile(target, inner, n)?))
        }
    })
}

fn require_lattice(space: &RelationSpace) -> Result<()> {
    match space.flavor() {
        Flavor::Reflexive | Flavor::Irreflexive => Ok(()),
        other => Err(Error::WrongFlavor {
            expected: LATTICE,
            got: Some(other),
        }),
    }
}

fn lattice_kind(
    target: Target<'_>,
    form: FilterForm,
    filter: &OrderFilterN,
    offsets: &BTreeMap<Coalition, usize>,
    n: usize,
) -> Result<Kind> {
    let space = target.space(LATTICE)?;
    require_lattice(space)?;
    filter.validate(n)?;
    if let Some(s) = offsets.keys().find(|s| !filter.basis().contains(s)) {
        return Err(Error::BadInput(format!(
            "offset for {s:#b}, which is not a basis coalition"
        )));
    }
    let default = lattice_unit(space, form);
    let terms = filter
        .basis()
        .iter()
        .map(|&s| {
            let r = match offsets.get(&s) {
                Some(&x) if x < space.len() => *space.element(x),
                Some(&x) => return Err(Error::BadInput(format!("offset element {x}"))),
                None => default,
            };
            Ok((s, r))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Kind::Lattice { form, terms })
}

/// The offset that leaves a term unchanged: bottom for `MeetOfJoins`, top
/// for `JoinOfMeets`.
fn lattice_unit(space: &RelationSpace, form: FilterForm) -> BinRel {
    let ctx = space.ctx();
    match form {
        FilterForm::MeetOfJoins => *space.element(ctx.bottom().expect("lattice has a bottom")),
        FilterForm::JoinOfMeets => *space.element(ctx.top()),
    }
}

fn eval_lattice_terms(
    space: &RelationSpace,
    form: FilterForm,
    terms: &[(Coalition, BinRel)],
    rels: &[BinRel],
) -> BinRel {
    let ctx = space.ctx();
    let top = *space.element(ctx.top());
    let bottom = *space.element(ctx.bottom().expect("lattice has a bottom"));
    let members = |s: Coalition| (0..rels.len()).filter(move |&i| s >> i & 1 == 1);
    match form {
        FilterForm::MeetOfJoins => terms.iter().fold(top, |acc, (s, off)| {
            let u = members(*s).fold(bottom, |u, i| u.union(&rels[i]));
            acc.intersection(&u.union(off))
        }),
        FilterForm::JoinOfMeets => terms.iter().fold(bottom, |acc, (s, off)| {
            let c = members(*s).fold(top, |c, i| c.intersection(&rels[i]));
            acc.union(&c.intersection(off))
        }),
    }
}

/// Lattice filter rule evaluated over every member of the upward closure,
/// each non-basis member inheriting the union (`MeetOfJoins`) or
/// intersection (`JoinOfMeets`) of the offsets of the basis members below it.
pub fn lattice_filter_full(
    space: &RelationSpace,
    form: FilterForm,
    filter: &OrderFilterN,
    offsets: &BTreeMap<Coalition, usize>,
    profile: &[usize],
) -> Result<usize> {
    require_lattice(space)?;
    let n = profile.len();
    let unit = lattice_unit(space, form);
    let offset = |b: Coalition| offsets.get(&b).map_or(unit, |&x| *space.element(x));
    let terms: Vec<(Coalition, BinRel)> = filter
        .members(n)
        .into_iter()
        .map(|s| {
            let below = filter.basis().iter().filter(|&&b| b & s == b);
            let r = match form {
                FilterForm::MeetOfJoins => below.fold(unit, |acc, &b| acc.union(&offset(b))),
                FilterForm::JoinOfMeets => {
                    below.fold(unit, |acc, &b| acc.intersection(&offset(b)))
                }
            };
            (s, r)
        })
        .collect();
    let rels: Vec<BinRel> = profile.iter().map(|&x| *space.element(x)).collect();
    let r = eval_lattice_terms(space, form, &terms, &rels);
    space
        .index_of(&r)
        .ok_or_else(|| Error::InternalInvariantViolation("lattice rule left the space".into()))
}

/// Evaluates a rule once.
pub fn eval<'a>(target: impl Into<Target<'a>>, rule: &RuleSpec, profile: &[usize]) -> Result<usize> {
    BoundRule::new(target, rule, profile.len())?.eval(profile)
}

/// Tabulates a rule for `n` agents.
pub fn tabulate<'a>(target: impl Into<Target<'a>>, rule: &RuleSpec, n: usize) -> Result<RuleTable> {
    BoundRule::new(target, rule, n)?.tabulate()
}

/// `N_m(x_N) = { i : x_i <= m }`.
pub fn n_m(ctx: &MedianContext, profile: &[usize], m: usize) -> Coalition {
    profile
        .iter()
        .enumerate()
        .filter(|&(_, &x)| ctx.leq(x, m))
        .fold(0, |acc, (i, _)| acc | 1 << i)
}

/// `⋀{ m : N_m(x_N) ∈ F_m }`.
///
/// The meet can be undefined when two sponsored meet-irreducibles have no
/// common lower bound (for instance one-member quotas on three agents); that
/// surfaces as [`Error::MeetUndefined`].
pub fn sponsorship_eval(ctx: &MedianContext, family: &FilterFamily, profile: &[usize]) -> Result<usize> {
    let filters: Vec<(usize, OrderFilterN)> = family.filters.clone().into_iter().collect();
    sponsorship_eval_with(ctx, &filters, profile)
}

fn sponsorship_eval_with(
    ctx: &MedianContext,
    filters: &[(usize, OrderFilterN)],
    profile: &[usize],
) -> Result<usize> {
    let sponsored: Vec<usize> = filters
        .iter()
        .filter(|(m, f)| f.contains(n_m(ctx, profile, *m)))
        .map(|&(m, _)| m)
        .collect();
    ctx.meet_of_set(&sponsored)
}

/// `⋀_{S ∈ W^maj} ⋁_{i∈S} x_i`. Only minimum-size majorities are visited:
/// a larger coalition's join lies above that of any majority it contains.
pub fn co_majority(ctx: &MedianContext, profile: &[usize]) -> Result<usize> {
    let n = profile.len();
    let q = majority_quota(n);
    let joins: Vec<usize> = (0..=coalition::full(n))
        .filter(|&s| coalition::size(s) == q)
        .map(|s| {
            (0..n)
                .filter(|&i| s >> i & 1 == 1)
                .map(|i| profile[i])
                .reduce(|a, b| ctx.join(a, b))
                .expect("majorities are nonempty")
        })
        .collect();
    ctx.meet_of_set(&joins).map_err(|e| {
        Error::InternalInvariantViolation(format!("co-majority meet failed: {e}"))
    })
}

fn ck_argmin(ctx: &MedianContext, profile: &[usize], pos: &[usize], only: Option<&[usize]>) -> usize {
    let score = |z: usize| (ctx.remoteness(z, profile), pos[z]);
    match only {
        Some(cands) => *cands.iter().min_by_key(|&&z| score(z)).expect("nonempty"),
        None => (0..ctx.len()).min_by_key(|&z| score(z)).expect("nonempty"),
    }
}

/// `min_⪯` of the remoteness minimizers over the whole space.
pub fn generalized_ck(ctx: &MedianContext, profile: &[usize], tiebreak: &TieBreak) -> Result<usize> {
    ctx.require_graded()?;
    Ok(ck_argmin(ctx, profile, &tiebreak.positions(ctx.len())?, None))
}

/// `min_⪯` of the remoteness minimizers among linear orders.
pub fn strict_ck(space: &RelationSpace, profile: &[usize], tiebreak: &TieBreak) -> Result<usize> {
    let lin = space.linear_orders()?;
    let ctx = space.ctx();
    ctx.require_graded()?;
    Ok(ck_argmin(ctx, profile, &tiebreak.positions(ctx.len())?, Some(lin)))
}

/// Deletes the fewest off-diagonal pairs from element `x` so that no cycle
/// runs through an asymmetric edge; among equally small deletions the one
/// with the smallest off-diagonal code wins.
pub fn minimal_monotonic_retract(space: &RelationSpace, x: usize) -> Result<usize> {
    require_lattice(space)?;
    let m = space.ground().len();
    if m > 4 {
        return Err(Error::size("ground set", m, 4));
    }
    let r = *space.element(x);
    let off: Vec<(usize, usize)> = (0..m)
        .flat_map(|a| (0..m).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let present: u32 = off
        .iter()
        .enumerate()
        .filter(|&(_, &(a, b))| r.holds(a, b))
        .fold(0, |acc, (k, _)| acc | 1 << k);
    let mut by_size: Vec<u32> = (0..1u32 << off.len())
        .filter(|&d| d & present == d)
        .collect();
    by_size.sort_by_key(|&d| (d.count_ones(), d));
    for d in by_size {
        let mut cut = r;
        for (k, &(a, b)) in off.iter().enumerate() {
            if d >> k & 1 == 1 {
                cut.remove(a, b);
            }
        }
        if !has_strict_cycle(&cut) {
            return space.index_of(&cut).ok_or_else(|| {
                Error::InternalInvariantViolation("retract left the space".into())
            });
        }
    }
    Err(Error::InternalInvariantViolation(
        "deleting every pair leaves no cycle, so some deletion succeeds".into(),
    ))
}

/// A cycle containing some `(a, b)` with `aRb` and not `bRa`.
pub fn has_strict_cycle(r: &BinRel) -> bool {
    let reach = r.transitive_closure();
    r.asymmetric_part().pairs().any(|(a, b)| reach.holds(b, a))
}

/// `F_m = { N_m(x_N) : f(x_N) <= m }` reduced to its minimal members.
pub fn extract_filters(ctx: &MedianContext, table: &RuleTable) -> FilterFamily {
    let cube = table.cube();
    let n = table.n;
    let irr = ctx.meet_irreducibles();
    let mut seen = vec![vec![false; 1 << n]; irr.len()];
    let mut buf = vec![0; n];
    for idx in 0..cube.count() {
        cube.decode_into(idx, &mut buf);
        let out = table.at(idx);
        for (k, &m) in irr.iter().enumerate() {
            if ctx.leq(out, m) {
                seen[k][n_m(ctx, &buf, m) as usize] = true;
            }
        }
    }
    FilterFamily {
        filters: irr
            .iter()
            .zip(seen)
            .map(|(&m, s)| {
                let members = (0..1u32 << n).filter(|&c| s[c as usize]);
                (m, OrderFilterN::generated_by(members))
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::GroundSet;
    use crate::spaces::enumerate_space;

    fn preorders() -> RelationSpace {
        enumerate_space(Flavor::TotalPreorder, GroundSet::parse("x,y,z").unwrap()).unwrap()
    }

    fn ids(s: &RelationSpace, names: &[&str]) -> Vec<usize> {
        names.iter().map(|r| s.parse_element(r).unwrap()).collect()
    }

    #[test]
    fn co_majority_on_cyclic_profile() {
        let s = preorders();
        let p = ids(&s, &["xyz", "yzx", "zxy"]);
        let out = eval(&s, &RuleSpec::CoMajority, &p).unwrap();
        assert_eq!(s.render(out), "[xyz]");
        let p2 = ids(&s, &["xyz", "yzx", "xzy"]);
        assert_eq!(s.render(eval(&s, &RuleSpec::CoMajority, &p2).unwrap()), "x[yz]");
    }

    #[test]
    fn co_majority_two_against_one() {
        let s = preorders();
        let p = ids(&s, &["xyz", "xyz", "zyx"]);
        assert_eq!(eval(&s, &RuleSpec::CoMajority, &p).unwrap(), p[0]);
    }

    #[test]
    fn dictator_and_constant() {
        let s = preorders();
        let p = ids(&s, &["xyz", "yzx", "zxy"]);
        assert_eq!(eval(&s, &RuleSpec::Dictator { agent: 1 }, &p).unwrap(), p[1]);
        assert_eq!(eval(&s, &RuleSpec::Constant { element: 4 }, &p).unwrap(), 4);
        assert!(eval(&s, &RuleSpec::Dictator { agent: 3 }, &p).is_err());
        assert!(eval(&s, &RuleSpec::Constant { element: 13 }, &p).is_err());
    }

    #[test]
    fn empty_family_is_constant_top() {
        let s = preorders();
        let fam = FilterFamily::from_fn(s.ctx(), |_| OrderFilterN::empty());
        let rule = RuleSpec::Sponsorship { filters: fam };
        let t = tabulate(&s, &rule, 3).unwrap();
        assert!(t.outcomes.iter().all(|&o| o as usize == s.ctx().top()));
    }

    #[test]
    fn principal_family_is_dictatorship() {
        let s = preorders();
        let fam = FilterFamily::from_fn(s.ctx(), |_| OrderFilterN::principal(0b001));
        let t = tabulate(&s, &RuleSpec::Sponsorship { filters: fam }, 3).unwrap();
        let d = tabulate(&s, &RuleSpec::Dictator { agent: 0 }, 3).unwrap();
        assert_eq!(t, d);
    }

    #[test]
    fn single_member_quota_can_have_no_meet() {
        let s = preorders();
        let rule = RuleSpec::uniform_quota(s.ctx(), 1);
        let p = ids(&s, &["xyz", "zyx", "zyx"]);
        assert!(matches!(eval(&s, &rule, &p), Err(Error::MeetUndefined(..))));
    }

    #[test]
    fn extraction_of_co_majority() {
        let s = preorders();
        let t = tabulate(&s, &RuleSpec::CoMajority, 3).unwrap();
        let fam = extract_filters(s.ctx(), &t);
        assert!(fam.filters.values().all(|f| *f == OrderFilterN::threshold(3, 2)));
        let d = tabulate(&s, &RuleSpec::Dictator { agent: 0 }, 3).unwrap();
        let fam = extract_filters(s.ctx(), &d);
        assert!(fam.filters.values().all(|f| *f == OrderFilterN::principal(1)));
    }

    #[test]
    fn ck_tiebreaks_on_even_profile() {
        let s = preorders();
        let p = ids(&s, &["xyz", "zyx"]);
        let a = generalized_ck(s.ctx(), &p, &TieBreak::Canonical).unwrap();
        let b = generalized_ck(s.ctx(), &p, &TieBreak::Reversed).unwrap();
        assert_ne!(a, b);
        assert_eq!(s.ctx().remoteness(a, &p), s.ctx().remoteness(b, &p));
    }

    #[test]
    fn strict_ck_returns_linear_orders() {
        let s = preorders();
        let p = ids(&s, &["xyz", "yzx", "zxy"]);
        let out = strict_ck(&s, &p, &TieBreak::Canonical).unwrap();
        assert!(s.element(out).is_linear_order());
        let g = generalized_ck(s.ctx(), &p, &TieBreak::Canonical).unwrap();
        assert!(s.ctx().remoteness(out, &p) >= s.ctx().remoteness(g, &p));
    }

    #[test]
    fn tiebreak_must_be_permutation() {
        assert!(TieBreak::Order(vec![0, 0, 1]).positions(3).is_err());
        assert!(TieBreak::Order(vec![0, 1]).positions(3).is_err());
        assert_eq!(TieBreak::Order(vec![2, 0, 1]).positions(3).unwrap(), vec![1, 2, 0]);
    }

    #[test]
    fn retract_breaks_three_cycle() {
        let g = GroundSet::letters(3).unwrap();
        let s = enumerate_space(Flavor::Irreflexive, g).unwrap();
        let cyc = BinRel::from_pairs(3, [(0, 1), (1, 2), (2, 0)]);
        let x = s.index_of(&cyc).unwrap();
        let y = minimal_monotonic_retract(&s, x).unwrap();
        let out = s.element(y);
        assert!(out.is_subset(&cyc) && out.len() == 2 && !has_strict_cycle(out));
        let acyclic = BinRel::from_pairs(3, [(0, 1), (1, 0)]);
        let a = s.index_of(&acyclic).unwrap();
        assert_eq!(minimal_monotonic_retract(&s, a).unwrap(), a);
    }

    #[test]
    fn rule_spec_json() {
        let r = RuleSpec::Retract {
            inner: Box::new(RuleSpec::GeneralizedCk {
                tiebreak: TieBreak::Reversed,
            }),
        };
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["variant"], "retract");
        assert_eq!(v["inner"]["tiebreak"], "reversed");
        let back: RuleSpec = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
        let ck: RuleSpec = serde_json::from_str(r#"{"variant":"generalized_ck"}"#).unwrap();
        assert_eq!(ck, RuleSpec::GeneralizedCk { tiebreak: TieBreak::Canonical });
    }
}
