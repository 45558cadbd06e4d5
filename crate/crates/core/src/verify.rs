//! Harnesses that check the characterization results over whole corpora.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::checks::{
    axiom, is_bmu_monotonic, is_isotonic, is_m_independent, is_monotonic_m_independent,
    is_strategy_proof, Axiom, CheckReport, Witness,
};
use crate::context::{Betweenness, MedianContext};
use crate::corpus::NamedRule;
use crate::error::{Error, Result};
use crate::profile::ProfileCube;
use crate::relation::Flavor;
use crate::rules::{
    co_majority, extract_filters, generalized_ck, sponsorship_eval, tabulate, BoundRule,
    RuleSpec, Target, TieBreak,
};
use crate::spaces::RelationSpace;

/// One checked statement inside a verification run.
#[derive(Debug, Clone, Serialize)]
pub struct Item {
    pub subject: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Failed predicates backing a verdict, each with its own witness.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub evidence: Vec<CheckReport>,
}

impl Item {
    fn new(subject: impl Into<String>, ok: bool) -> Self {
        Item {
            subject: subject.into(),
            ok,
            details: BTreeMap::new(),
            witness: None,
            evidence: Vec::new(),
        }
    }

    fn from_witness(subject: impl Into<String>, witness: Option<Witness>) -> Self {
        let mut it = Item::new(subject, witness.is_none());
        it.witness = witness;
        it
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Verification {
    pub name: String,
    /// Whether the statement is expected to hold for these inputs.
    pub expected: bool,
    pub passed: bool,
    pub items: Vec<Item>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Verification {
    fn new(name: &str, expected: bool, items: Vec<Item>, notes: Vec<String>) -> Self {
        Verification {
            name: name.into(),
            expected,
            passed: items.iter().all(|i| i.ok),
            items,
            notes,
        }
    }

    /// The verdict matches the expectation.
    pub fn as_expected(&self) -> bool {
        self.passed == self.expected
    }

    pub fn failures(&self) -> impl Iterator<Item = &Item> {
        self.items.iter().filter(|i| !i.ok)
    }
}

/// Verdicts of the three equivalent conditions plus the split pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EquivalenceVerdicts {
    pub strategy_proof: bool,
    pub bmu_monotonic: bool,
    pub monotonic_m_independent: bool,
    pub m_independent: bool,
    pub isotonic: bool,
}

impl EquivalenceVerdicts {
    pub fn compute(ctx: &MedianContext, rule: &NamedRule) -> Result<Self> {
        let t = &rule.table;
        Ok(EquivalenceVerdicts {
            strategy_proof: is_strategy_proof(ctx, t)?.verdict,
            bmu_monotonic: is_bmu_monotonic(ctx, t)?.verdict,
            monotonic_m_independent: is_monotonic_m_independent(ctx, t)?.verdict,
            m_independent: is_m_independent(ctx, t)?.verdict,
            isotonic: is_isotonic(ctx, t)?.verdict,
        })
    }

    pub fn agree(&self) -> bool {
        self.strategy_proof == self.bmu_monotonic
            && self.bmu_monotonic == self.monotonic_m_independent
            && self.monotonic_m_independent == (self.m_independent && self.isotonic)
    }

    fn as_map(&self) -> BTreeMap<String, bool> {
        [
            ("strategy_proof", self.strategy_proof),
            ("bmu_monotonic", self.bmu_monotonic),
            ("monotonic_m_independent", self.monotonic_m_independent),
            ("m_independent", self.m_independent),
            ("isotonic", self.isotonic),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect()
    }
}

/// Strategy-proofness, betweenness monotonicity and monotone independence
/// must agree on every rule (and monotone independence must equal the
/// conjunction of independence and isotony).
pub fn verify_theorem1(ctx: &MedianContext, corpus: &[NamedRule]) -> Result<Verification> {
    ctx.require_median()?;
    let items = corpus
        .par_iter()
        .map(|rule| {
            let v = EquivalenceVerdicts::compute(ctx, rule)?;
            let mut it = Item::new(&rule.name, v.agree());
            it.details = v.as_map();
            if !v.agree() {
                it.witness = Some(Witness::Disagreement { verdicts: v.as_map() });
            }
            Ok(it)
        })
        .collect::<Result<Vec<_>>>()?;
    let sp = items.iter().filter(|i| i.details["strategy_proof"]).count();
    let notes = vec![format!("{} rules, {sp} strategy-proof", items.len())];
    Ok(Verification::new("theorem1", true, items, notes))
}

/// Each strategy-proof rule equals the sponsorship rule of its extracted
/// filter family on every profile.
pub fn verify_corollary1(ctx: &MedianContext, corpus: &[NamedRule]) -> Result<Verification> {
    ctx.require_median()?;
    let mut items = Vec::new();
    let mut skipped = 0;
    for rule in corpus {
        if !is_strategy_proof(ctx, &rule.table)?.verdict {
            skipped += 1;
            continue;
        }
        items.push(round_trip(ctx, rule));
    }
    let notes = vec![
        format!("{} strategy-proof rules round-tripped", items.len()),
        format!("{skipped} manipulable rules skipped"),
    ];
    Ok(Verification::new("corollary1", true, items, notes))
}

fn round_trip(ctx: &MedianContext, rule: &NamedRule) -> Item {
    let family = extract_filters(ctx, &rule.table);
    let cube = rule.table.cube();
    let mismatch = (0..cube.count()).find_map(|idx| {
        let p = cube.decode(idx);
        let expected = rule.table.at(idx);
        match sponsorship_eval(ctx, &family, &p) {
            Ok(got) if got == expected => None,
            Ok(got) => Some(Witness::Mismatch {
                profile: p,
                expected,
                got,
            }),
            Err(e) => Some(Witness::Error {
                message: format!("profile {p:?}: {e}"),
            }),
        }
    });
    Item::from_witness(&rule.name, mismatch)
}

/// Among the corpus, exactly the rules equal to co-majority are anonymous,
/// bi-idempotent and strategy-proof.
pub fn verify_prop1(ctx: &MedianContext, n: usize, corpus: &[NamedRule]) -> Result<Verification> {
    ctx.require_median()?;
    let comaj = tabulate(ctx, &RuleSpec::CoMajority, n)?;
    let mut saw_comaj = false;
    let items = corpus
        .iter()
        .map(|rule| {
            let t = &rule.table;
            let mut evidence = Vec::new();
            let mut details = BTreeMap::new();
            for step in 0..3 {
                let r = match step {
                    0 => axiom(ctx, t, Axiom::Anonymous)?,
                    1 => axiom(ctx, t, Axiom::BiIdempotent)?,
                    _ => is_strategy_proof(ctx, t)?,
                };
                details.insert(r.predicate.clone(), r.verdict);
                if !r.verdict {
                    evidence.push(r);
                    break;
                }
            }
            let all = evidence.is_empty();
            let equal = *t == comaj;
            saw_comaj |= equal;
            details.insert("equals_co_majority".into(), equal);
            Ok(Item {
                subject: rule.name.clone(),
                ok: all == equal,
                details,
                witness: None,
                evidence,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut v = Verification::new("prop1", true, items, Vec::new());
    if !saw_comaj {
        v.notes.push("corpus did not contain co-majority".into());
    }
    Ok(v)
}

/// Profiles to scan: every one, or `sample` seeded uniform draws.
pub fn profile_source(cube: ProfileCube, sample: Option<usize>, seed: u64) -> Vec<Vec<usize>> {
    match sample {
        None => (0..cube.count()).map(|idx| cube.decode(idx)).collect(),
        Some(k) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..k)
                .map(|_| (0..cube.n()).map(|_| rng.random_range(0..cube.size())).collect())
                .collect()
        }
    }
}

fn cube_for(ctx: &MedianContext, n: usize, sample: Option<usize>) -> Result<ProfileCube> {
    match sample {
        Some(_) => ProfileCube::sampling(n, ctx.len()),
        None => ProfileCube::new(n, ctx.len()),
    }
}

/// For odd `n`: the remoteness minimizer is unique, equals co-majority, and
/// both tie-breaks of the generalized rule return it. For even `n` the
/// uniqueness is expected to fail somewhere.
pub fn verify_prop3(space: &RelationSpace, n: usize, sample: Option<usize>, seed: u64) -> Result<Verification> {
    if space.flavor() != Flavor::TotalPreorder {
        return Err(Error::WrongFlavor {
            expected: "total-preorder space",
            got: Some(space.flavor()),
        });
    }
    let ctx = space.ctx();
    ctx.require_median()?;
    ctx.require_graded()?;
    let cube = cube_for(ctx, n, sample)?;
    let profiles = profile_source(cube, sample, seed);
    let first = |f: &(dyn Fn(&[usize]) -> Result<Option<Witness>> + Sync)| -> Result<Option<Witness>> {
        profiles
            .par_iter()
            .map(|p| f(p))
            .find_first(|r| !matches!(r, Ok(None)))
            .unwrap_or(Ok(None))
    };
    let unique = first(&|p| {
        let set = ctx.metric_median_set(p)?;
        Ok((set.len() != 1).then(|| Witness::Tie {
            profile: p.to_vec(),
            minimizers: set,
        }))
    })?;
    let equals = first(&|p| {
        let set = ctx.metric_median_set(p)?;
        let cm = co_majority(ctx, p)?;
        Ok((set != [cm]).then(|| Witness::Tie {
            profile: p.to_vec(),
            minimizers: set,
        }))
    })?;
    let ck = first(&|p| {
        let a = generalized_ck(ctx, p, &TieBreak::Canonical)?;
        let b = generalized_ck(ctx, p, &TieBreak::Reversed)?;
        let cm = co_majority(ctx, p)?;
        Ok((a != cm || b != cm).then(|| Witness::Tie {
            profile: p.to_vec(),
            minimizers: vec![a, b],
        }))
    })?;
    let items = vec![
        Item::from_witness("unique_remoteness_minimizer", unique),
        Item::from_witness("minimizer_is_co_majority", equals),
        Item::from_witness("ck_tiebreak_invariant", ck),
    ];
    let how = match sample {
        Some(k) => format!("{k} sampled profiles, seed {seed:#x}"),
        None => format!("all {} profiles", profiles.len()),
    };
    Ok(Verification::new("prop3", n % 2 == 1, items, vec![how]))
}

/// On a relation lattice with odd `n`: majority, co-majority (both as the
/// lattice formula and order-theoretically) and the generalized rule under
/// two tie-breaks coincide.
pub fn verify_prop5(space: &RelationSpace, n: usize, sample: Option<usize>, seed: u64) -> Result<Verification> {
    if !matches!(space.flavor(), Flavor::Reflexive | Flavor::Irreflexive) {
        return Err(Error::WrongFlavor {
            expected: "reflexive or irreflexive relation lattice",
            got: Some(space.flavor()),
        });
    }
    let ctx = space.ctx();
    let target = Target::Space(space);
    let maj = BoundRule::new(target, &RuleSpec::MajorityLattice, n)?;
    let comaj_formula = BoundRule::new(
        target,
        &RuleSpec::LatticeFilter {
            filter: crate::coalition::OrderFilterN::threshold(n, crate::rules::majority_quota(n)),
            offsets: BTreeMap::new(),
        },
        n,
    )?;
    let ck_a = BoundRule::new(target, &RuleSpec::GeneralizedCk { tiebreak: TieBreak::Canonical }, n)?;
    let ck_b = BoundRule::new(target, &RuleSpec::GeneralizedCk { tiebreak: TieBreak::Reversed }, n)?;
    let cube = cube_for(ctx, n, sample)?;
    let profiles = profile_source(cube, sample, seed);
    let pairs: [(&str, &BoundRule, &BoundRule); 4] = [
        ("majority_equals_co_majority", &maj, &comaj_formula),
        ("co_majority_formula_equals_order_meet", &comaj_formula, &comaj_formula),
        ("ck_canonical_equals_majority", &ck_a, &maj),
        ("ck_reversed_equals_majority", &ck_b, &maj),
    ];
    let items = pairs
        .iter()
        .enumerate()
        .map(|(k, (name, a, b))| {
            let w = profiles
                .par_iter()
                .map(|p| -> Result<Option<Witness>> {
                    let x = a.eval(p)?;
                    let y = if k == 1 { co_majority(ctx, p)? } else { b.eval(p)? };
                    Ok((x != y).then(|| Witness::Tie {
                        profile: p.clone(),
                        minimizers: vec![x, y],
                    }))
                })
                .find_first(|r| !matches!(r, Ok(None)))
                .unwrap_or(Ok(None))?;
            Ok(Item::from_witness(*name, w))
        })
        .collect::<Result<Vec<_>>>()?;
    let how = match sample {
        Some(k) => format!("{k} sampled profiles, seed {seed:#x}"),
        None => format!("all {} profiles", profiles.len()),
    };
    Ok(Verification::new("prop5", n % 2 == 1, items, vec![how]))
}

/// Rank, metric and betweenness facts on each space, plus agreement of the
/// rank metric with the Kemeny distance.
pub fn verify_claims(spaces: &[&RelationSpace]) -> Result<Verification> {
    let mut items = Vec::new();
    for space in spaces {
        let tag = format!("{}/{}", space.flavor(), space.ground().len());
        let ctx = space.ctx();
        items.push(Item::from_witness(
            format!("{tag}: graded"),
            ctx.require_graded().err().map(|e| Witness::Error {
                message: e.to_string(),
            }),
        ));
        if !ctx.report().is_graded || !ctx.is_median() {
            continue;
        }
        items.extend(claim_items(space, &tag)?);
    }
    Ok(Verification::new("claims", true, items, Vec::new()))
}

fn pair_search(
    n: usize,
    bad: impl Fn(usize, usize) -> Option<Vec<usize>> + Sync,
) -> Option<Vec<usize>> {
    (0..n * n)
        .into_par_iter()
        .find_map_first(|k| bad(k / n, k % n))
}

fn claim_items(space: &RelationSpace, tag: &str) -> Result<Vec<Item>> {
    let ctx = space.ctx();
    let n = ctx.len();
    let r = |x: usize| ctx.rank(x) as i64;
    let d = |x: usize, y: usize| ctx.dist_rank(x, y).expect("graded") as i64;
    let elements = |e: Option<Vec<usize>>, note: &str| {
        e.map(|elements| {
            let shown: Vec<String> = elements.iter().map(|&x| space.render(x)).collect();
            Witness::Elements {
                note: format!("{note}: {}", shown.join(", ")),
                elements,
            }
        })
    };
    let mut items = Vec::new();

    let valuation = pair_search(n, |x, y| {
        let m = ctx.meet(x, y)?;
        (r(x) + r(y) != r(ctx.join(x, y)) + r(m)).then(|| vec![x, y])
    });
    items.push(Item::from_witness(
        format!("{tag}: rank is a valuation"),
        elements(valuation, "r(x)+r(y) != r(x v y)+r(x ^ y)"),
    ));

    let cover = pair_search(n, |x, y| (d(x, y) != ctx.cover_dist(x, y) as i64).then(|| vec![x, y]));
    items.push(Item::from_witness(
        format!("{tag}: rank metric equals covering-graph distance"),
        elements(cover, "d_r(x, y) != BFS distance"),
    ));

    let metric = pair_search(n, |x, y| {
        if (d(x, y) == 0) != (x == y) || d(x, y) != d(y, x) {
            return Some(vec![x, y]);
        }
        (0..n)
            .find(|&z| d(x, z) > d(x, y) + d(y, z))
            .map(|z| vec![x, y, z])
    });
    items.push(Item::from_witness(
        format!("{tag}: rank metric is a metric"),
        elements(metric, "identity, symmetry or triangle inequality fails"),
    ));

    let between = |k: Betweenness, x, z, y| ctx.betweenness(k, x, z, y).expect("median and graded");
    let interval_in_median = pair_search(n, |x, y| {
        (0..n)
            .find(|&z| between(Betweenness::Interval, x, z, y) && !between(Betweenness::Median, x, z, y))
            .map(|z| vec![x, z, y])
    });
    items.push(Item::from_witness(
        format!("{tag}: interval betweenness inside median betweenness"),
        elements(interval_in_median, "(x, z, y) in B_I but not in B_mu"),
    ));
    let median_is_metric = pair_search(n, |x, y| {
        (0..n)
            .find(|&z| between(Betweenness::Median, x, z, y) != between(Betweenness::Metric, x, z, y))
            .map(|z| vec![x, z, y])
    });
    items.push(Item::from_witness(
        format!("{tag}: median betweenness equals metric betweenness"),
        elements(median_is_metric, "(x, z, y) in exactly one of B_mu, B_d"),
    ));
    if ctx.report().is_distributive_lattice {
        let all_equal = pair_search(n, |x, y| {
            (0..n)
                .find(|&z| between(Betweenness::Interval, x, z, y) != between(Betweenness::Median, x, z, y))
                .map(|z| vec![x, z, y])
        });
        items.push(Item::from_witness(
            format!("{tag}: interval betweenness equals median betweenness"),
            elements(all_equal, "(x, z, y) in exactly one of B_I, B_mu"),
        ));
    }

    let kemeny = pair_search(n, |x, y| (d(x, y) != space.kemeny_distance(x, y) as i64).then(|| vec![x, y]));
    let mut it = Item::from_witness(
        format!("{tag}: rank metric equals Kemeny distance"),
        elements(kemeny, "d_r(x, y) != |x xor y|"),
    );
    if let Some(Witness::Elements { elements, note }) = &mut it.witness {
        let (x, y) = (elements[0], elements[1]);
        *note = format!(
            "{} vs {}: d_r = {}, Kemeny = {}",
            space.render(x),
            space.render(y),
            d(x, y),
            space.kemeny_distance(x, y)
        );
    }
    items.push(it);
    Ok(items)
}
