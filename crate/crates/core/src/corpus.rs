//! Reproducible rule corpora for the verification harnesses.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coalition::{self, FilterFamily, OrderFilterN};
use crate::context::MedianContext;
use crate::error::{Error, Result};
use crate::profile::ProfileCube;
use crate::rules::{majority_quota, tabulate, RuleSpec, RuleTable};

pub const DEFAULT_SEED: u64 = 0xC0FFEE;

/// A tabulated rule with a display name and, when it has one, its spec.
#[derive(Debug, Clone, Serialize)]
pub struct NamedRule {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<RuleSpec>,
    #[serde(skip)]
    pub table: RuleTable,
}

impl NamedRule {
    pub fn from_spec(ctx: &MedianContext, n: usize, name: impl Into<String>, spec: RuleSpec) -> Result<Self> {
        let table = tabulate(ctx, &spec, n)?;
        Ok(NamedRule {
            name: name.into(),
            spec: Some(spec),
            table,
        })
    }
}

/// Co-majority, every dictator, three constants and three quota families
/// (unanimity everywhere, and two mixes of majority and unanimity).
pub fn structured(ctx: &MedianContext, n: usize) -> Result<Vec<NamedRule>> {
    let irr = ctx.meet_irreducibles();
    let maj = majority_quota(n);
    let mut out = vec![NamedRule::from_spec(ctx, n, "co-majority", RuleSpec::CoMajority)?];
    for agent in 0..n {
        out.push(NamedRule::from_spec(
            ctx,
            n,
            format!("dictator-{agent}"),
            RuleSpec::Dictator { agent },
        )?);
    }
    let mut constants = vec![0, irr.first().copied().unwrap_or(0), ctx.top()];
    constants.dedup();
    for element in constants {
        out.push(NamedRule::from_spec(
            ctx,
            n,
            format!("constant-{element}"),
            RuleSpec::Constant { element },
        )?);
    }
    let half = irr.len() / 2;
    let quota_sets: [(&str, Box<dyn Fn(usize) -> usize>); 3] = [
        ("quota-unanimity", Box::new(|_| n)),
        ("quota-split", Box::new(move |k| if k < half { maj } else { n })),
        ("quota-alternating", Box::new(move |k| if k % 2 == 0 { n } else { maj })),
    ];
    for (name, q) in quota_sets {
        let quotas = irr.iter().enumerate().map(|(k, &m)| (m, q(k))).collect();
        out.push(NamedRule::from_spec(ctx, n, name, RuleSpec::Quota { quotas })?);
    }
    Ok(out)
}

/// Tables with every outcome drawn uniformly.
pub fn random_tables(size: usize, n: usize, count: usize, seed: u64) -> Result<Vec<NamedRule>> {
    let cube = ProfileCube::new(n, size)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|k| NamedRule {
            name: format!("random-{k}"),
            spec: None,
            table: RuleTable {
                n,
                size,
                outcomes: (0..cube.count())
                    .map(|_| rng.random_range(0..size) as u32)
                    .collect(),
            },
        })
        .collect())
}

/// Copies of `base` with a single outcome changed.
pub fn perturbed(base: &NamedRule, count: usize, seed: u64) -> Vec<NamedRule> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5EED);
    let size = base.table.size;
    (0..count)
        .map(|k| {
            let mut table = base.table.clone();
            let idx = rng.random_range(0..table.outcomes.len());
            let old = table.outcomes[idx] as usize;
            let new = (old + rng.random_range(1..size)) % size;
            table.outcomes[idx] = new as u32;
            NamedRule {
                name: format!("{}-perturbed-{k}", base.name),
                spec: None,
                table,
            }
        })
        .collect()
}

/// The structured rules, `random` uniform tables and five one-entry
/// perturbations of co-majority.
pub fn theorem1_corpus(ctx: &MedianContext, n: usize, random: usize, seed: u64) -> Result<Vec<NamedRule>> {
    let mut out = structured(ctx, n)?;
    out.extend(random_tables(ctx.len(), n, random, seed)?);
    let comaj = out[0].clone();
    out.extend(perturbed(&comaj, 5, seed));
    Ok(out)
}

/// Every order filter on `P(N)`, including the empty one, for `n <= 4`.
pub fn all_filters(n: usize) -> Result<Vec<OrderFilterN>> {
    if n > 4 {
        return Err(Error::size("agents", n, 4));
    }
    let subsets = 1usize << n;
    let full = coalition::full(n);
    let mut out = Vec::new();
    for fam in 0u64..1 << subsets {
        let member = |s: usize| fam >> s & 1 == 1;
        let upward = (0..subsets).all(|s| {
            !member(s) || (0..n).all(|i| member(s | 1 << i))
        });
        if upward {
            out.push(OrderFilterN::generated_by(
                (0..=full).filter(|&s| member(s as usize)),
            ));
        }
    }
    Ok(out)
}

/// Filters with `∅ ∉ F ≠ ∅`.
pub fn nontrivial_proper_filters(n: usize) -> Result<Vec<OrderFilterN>> {
    Ok(all_filters(n)?
        .into_iter()
        .filter(OrderFilterN::is_nontrivial_proper)
        .collect())
}

/// Sponsorship rules from a list of families; families whose meets are
/// undefined on some profile are dropped and counted.
pub fn sponsorship_rules(
    ctx: &MedianContext,
    n: usize,
    families: impl IntoIterator<Item = (String, FilterFamily)>,
) -> Result<(Vec<NamedRule>, usize)> {
    let mut kept = Vec::new();
    let mut dropped = 0;
    for (name, filters) in families {
        match NamedRule::from_spec(ctx, n, name, RuleSpec::Sponsorship { filters }) {
            Ok(r) => kept.push(r),
            Err(Error::MeetUndefined(..)) => dropped += 1,
            Err(e) => return Err(e),
        }
    }
    Ok((kept, dropped))
}

/// The same filter for every meet-irreducible, one family per filter.
pub fn uniform_families(ctx: &MedianContext, filters: &[OrderFilterN]) -> Vec<(String, FilterFamily)> {
    filters
        .iter()
        .map(|f| {
            (
                format!("uniform{:?}", f.basis()),
                FilterFamily::from_fn(ctx, |_| f.clone()),
            )
        })
        .collect()
}

/// Families drawing each meet-irreducible's filter uniformly from `pool`.
pub fn random_families(
    ctx: &MedianContext,
    pool: &[OrderFilterN],
    count: usize,
    seed: u64,
) -> Vec<(String, FilterFamily)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let fam = FilterFamily::from_fn(ctx, |_| pool[rng.random_range(0..pool.len())].clone());
            (format!("random-family-{k}"), fam)
        })
        .collect()
}

/// Every quota family with `1 <= q_m <= n` when there are at most `limit`
/// of them, otherwise `limit` seeded draws.
pub fn quota_families(ctx: &MedianContext, n: usize, limit: usize, seed: u64) -> Vec<(String, FilterFamily)> {
    let irr = ctx.meet_irreducibles();
    let total = (n as u128).checked_pow(irr.len() as u32).unwrap_or(u128::MAX);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picks: Vec<Vec<usize>> = if total <= limit as u128 {
        (0..total as usize)
            .map(|mut code| {
                irr.iter()
                    .map(|_| {
                        let q = code % n + 1;
                        code /= n;
                        q
                    })
                    .collect()
            })
            .collect()
    } else {
        (0..limit)
            .map(|_| irr.iter().map(|_| rng.random_range(1..=n)).collect())
            .collect()
    };
    picks
        .into_iter()
        .map(|qs| {
            let quotas: BTreeMap<usize, usize> = irr.iter().copied().zip(qs.iter().copied()).collect();
            let fam = FilterFamily::from_fn(ctx, |m| OrderFilterN::threshold(n, quotas[&m]));
            (format!("quota{qs:?}"), fam)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::Poset;

    #[test]
    fn filter_counts() {
        // upsets of the Boolean lattice: 2, 3, 6, 20, 168
        let counts: Vec<usize> = (0..=4).map(|n| all_filters(n).unwrap().len()).collect();
        assert_eq!(counts, vec![2, 3, 6, 20, 168]);
        assert_eq!(nontrivial_proper_filters(3).unwrap().len(), 18);
    }

    #[test]
    fn random_tables_are_reproducible() {
        let a = random_tables(13, 2, 3, DEFAULT_SEED).unwrap();
        let b = random_tables(13, 2, 3, DEFAULT_SEED).unwrap();
        let c = random_tables(13, 2, 3, DEFAULT_SEED + 1).unwrap();
        assert_eq!(a[2].table, b[2].table);
        assert_ne!(a[2].table, c[2].table);
    }

    #[test]
    fn structured_on_chain() {
        let ctx = MedianContext::new(Poset::chain(3)).unwrap();
        let rules = structured(&ctx, 3).unwrap();
        assert_eq!(rules[0].name, "co-majority");
        assert!(rules.iter().all(|r| r.table.outcomes.len() == 27));
        let p = perturbed(&rules[0], 2, DEFAULT_SEED);
        let diff = p[0]
            .table
            .outcomes
            .iter()
            .zip(&rules[0].table.outcomes)
            .filter(|(a, b)| a != b)
            .count();
        assert_eq!(diff, 1);
    }
}
