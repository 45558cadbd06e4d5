//! Coalitions over `N = {0, .., n-1}` and order filters on `P(N)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::context::MedianContext;
use crate::error::{Error, Result};

/// Largest supported population.
pub const MAX_AGENTS: usize = 16;

/// A set of agents; bit `i` is agent `i` (agents are 0-based).
pub type Coalition = u32;

pub fn full(n: usize) -> Coalition {
    ((1u64 << n) - 1) as Coalition
}

pub fn size(s: Coalition) -> usize {
    s.count_ones() as usize
}

/// All coalitions of `n` agents with at least `q` members, ascending.
pub fn at_least(n: usize, q: usize) -> impl Iterator<Item = Coalition> {
    (0..=full(n)).filter(move |&s| size(s) >= q)
}

/// An upward-closed family of coalitions, stored as its basis of minimal
/// members (sorted ascending).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<Coalition>", into = "Vec<Coalition>")]
pub struct OrderFilterN {
    basis: Vec<Coalition>,
}

impl From<Vec<Coalition>> for OrderFilterN {
    fn from(v: Vec<Coalition>) -> Self {
        OrderFilterN::generated_by(v)
    }
}

impl From<OrderFilterN> for Vec<Coalition> {
    fn from(f: OrderFilterN) -> Self {
        f.basis
    }
}

impl OrderFilterN {
    /// The empty filter.
    pub fn empty() -> Self {
        OrderFilterN { basis: Vec::new() }
    }

    /// The filter generated by `members` (their minimal ones form the basis).
    pub fn generated_by(members: impl IntoIterator<Item = Coalition>) -> Self {
        let mut v: Vec<Coalition> = members.into_iter().collect();
        v.sort_by_key(|&s| (size(s), s));
        v.dedup();
        let mut basis: Vec<Coalition> = Vec::new();
        for s in v {
            if !basis.iter().any(|&b| b & s == b) {
                basis.push(s);
            }
        }
        basis.sort_unstable();
        OrderFilterN { basis }
    }

    /// `{ T : |T| >= q }`; empty when `q > n`.
    pub fn threshold(n: usize, q: usize) -> Self {
        OrderFilterN::generated_by((0..=full(n)).filter(|&s| size(s) == q))
    }

    /// `{ T : s ⊆ T }`.
    pub fn principal(s: Coalition) -> Self {
        OrderFilterN { basis: vec![s] }
    }

    pub fn basis(&self) -> &[Coalition] {
        &self.basis
    }

    pub fn contains(&self, s: Coalition) -> bool {
        self.basis.iter().any(|&b| b & s == b)
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// `∅ ∉ F ≠ ∅`.
    pub fn is_nontrivial_proper(&self) -> bool {
        !self.basis.is_empty() && !self.contains(0)
    }

    /// Every two members intersect.
    pub fn is_transversal(&self) -> bool {
        self.basis
            .iter()
            .all(|&a| self.basis.iter().all(|&b| a & b != 0))
    }

    /// The `q` with `F = { T : |T| >= q }`, if any (`q <= n`).
    pub fn quota(&self, n: usize) -> Option<usize> {
        let q = size(*self.basis.first()?);
        (*self == OrderFilterN::threshold(n, q)).then_some(q)
    }

    /// Intersection of all basis members, when nonempty.
    pub fn common_core(&self) -> Option<Coalition> {
        let core = self.basis.iter().fold(Coalition::MAX, |acc, &b| acc & b);
        (!self.basis.is_empty() && core != 0).then_some(core)
    }

    /// Every member, ascending.
    pub fn members(&self, n: usize) -> Vec<Coalition> {
        (0..=full(n)).filter(|&s| self.contains(s)).collect()
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        match self.basis.iter().find(|&&b| b & !full(n) != 0) {
            Some(b) => Err(Error::BadInput(format!(
                "coalition {b:#b} mentions agents beyond n = {n}"
            ))),
            None => Ok(()),
        }
    }
}

/// One order filter per meet-irreducible, keyed by element index.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FilterFamily {
    pub filters: BTreeMap<usize, OrderFilterN>,
}

impl FilterFamily {
    /// Assigns `make(m)` to every meet-irreducible `m` of `ctx`.
    pub fn from_fn(ctx: &MedianContext, mut make: impl FnMut(usize) -> OrderFilterN) -> Self {
        FilterFamily {
            filters: ctx.meet_irreducibles().iter().map(|&m| (m, make(m))).collect(),
        }
    }

    /// The same threshold `q` for every meet-irreducible.
    pub fn uniform_quota(ctx: &MedianContext, n: usize, q: usize) -> Self {
        let f = OrderFilterN::threshold(n, q);
        FilterFamily::from_fn(ctx, |_| f.clone())
    }

    pub fn get(&self, m: usize) -> &OrderFilterN {
        &self.filters[&m]
    }

    /// Keys must be exactly the meet-irreducibles; coalitions within `N`.
    pub fn validate(&self, ctx: &MedianContext, n: usize) -> Result<()> {
        let keys: Vec<usize> = self.filters.keys().copied().collect();
        if keys != ctx.meet_irreducibles() {
            return Err(Error::BadInput(format!(
                "filter family keys {keys:?} differ from meet-irreducibles {:?}",
                ctx.meet_irreducibles()
            )));
        }
        self.filters.values().try_for_each(|f| f.validate(n))
    }
}

/// Shape tags of a filter family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyClass {
    pub quorum_system: bool,
    pub inclusive: bool,
    pub collegial: bool,
    /// `m -> S_m` for each nonempty filter whose members share agents.
    pub collegial_cores: BTreeMap<usize, Coalition>,
    pub outcome_biased: bool,
    pub weakly_neutral: bool,
    pub quota: bool,
    /// `m -> q_[m]` when every filter is threshold-shaped.
    pub quotas: BTreeMap<usize, usize>,
}

/// Tags a family by the shape of its filters.
///
/// A filter counts as collegial only when it is nonempty; the empty filter
/// sits inside every principal filter and would make every outcome-biased
/// family collegial.
pub fn classify_family(ctx: &MedianContext, n: usize, family: &FilterFamily) -> FamilyClass {
    let fs = &family.filters;
    let quorum_system = fs.values().all(OrderFilterN::is_transversal);
    let covered = fs
        .values()
        .flat_map(|f| f.basis().iter().copied())
        .fold(0, |acc, s| acc | s);
    let inclusive = covered == full(n);
    let collegial_cores: BTreeMap<usize, Coalition> = fs
        .iter()
        .filter_map(|(&m, f)| f.common_core().map(|c| (m, c)))
        .collect();
    let outcome_biased = fs.values().any(OrderFilterN::is_empty);
    let weakly_neutral = fs.iter().all(|(&m, f)| {
        fs.iter()
            .all(|(&m2, f2)| f == f2 || ctx.meet(m, m2).is_none())
    });
    let quotas: BTreeMap<usize, usize> = fs
        .iter()
        .filter_map(|(&m, f)| f.quota(n).map(|q| (m, q)))
        .collect();
    let quota = quotas.len() == fs.len();
    FamilyClass {
        quorum_system,
        inclusive,
        collegial: !collegial_cores.is_empty(),
        collegial_cores,
        outcome_biased,
        weakly_neutral,
        quota,
        quotas: if quota { quotas } else { BTreeMap::new() },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_is_minimal_antichain() {
        let f = OrderFilterN::generated_by([0b011, 0b111, 0b101, 0b011]);
        assert_eq!(f.basis(), &[0b011, 0b101]);
        assert!(f.contains(0b111) && !f.contains(0b110));
    }

    #[test]
    fn thresholds() {
        let maj = OrderFilterN::threshold(3, 2);
        assert_eq!(maj.basis(), &[0b011, 0b101, 0b110]);
        assert_eq!(maj.quota(3), Some(2));
        assert!(maj.is_transversal() && maj.is_nontrivial_proper());
        assert!(OrderFilterN::threshold(3, 4).is_empty());
        let all = OrderFilterN::threshold(3, 0);
        assert_eq!(all.basis(), &[0]);
        assert!(!all.is_nontrivial_proper());
        assert_eq!(OrderFilterN::principal(0b001).quota(3), None);
        assert_eq!(OrderFilterN::principal(0b111).quota(3), Some(3));
    }

    #[test]
    fn json_is_basis_list() {
        let f = OrderFilterN::threshold(2, 1);
        assert_eq!(serde_json::to_string(&f).unwrap(), "[1,2]");
        let back: OrderFilterN = serde_json::from_str("[3,1,2]").unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn cores() {
        assert_eq!(OrderFilterN::principal(0b001).common_core(), Some(0b001));
        assert_eq!(OrderFilterN::threshold(3, 2).common_core(), None);
        assert_eq!(OrderFilterN::empty().common_core(), None);
    }
}
