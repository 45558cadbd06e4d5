//! Concrete preference spaces embedded as median join-semilattices.
//!
//! Canonical element order (all indices, tie-breaks and files refer to it):
//!
//! * total preorders: ordered set partitions, best block first, generated
//!   lexicographically by block bitmask; weak orders reuse the same order
//!   through the asymmetric-part map;
//! * every other flavor: increasing integer code of the off-diagonal part of
//!   the matrix, bit `k` for the `k`-th off-diagonal pair in row-major order.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::context::{ContextOptions, MedianContext, DENSE_LIMIT, HARD_LIMIT};
use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::relation::{BinRel, Flavor, GroundSet, RelationJson};

#[derive(Debug, Clone, Copy, Default)]
pub struct SpaceOptions {
    /// Lift the default ground-set limits (and the dense table limit).
    pub allow_large: bool,
}

/// Default ground-set limit per flavor.
pub fn default_ground_limit(flavor: Flavor) -> usize {
    match flavor {
        Flavor::Reflexive | Flavor::Irreflexive => 3,
        _ => 4,
    }
}

/// Number of elements of a space, without enumerating it.
pub fn space_size(flavor: Flavor, m: usize) -> u128 {
    let off = (m * (m - 1)) as u32;
    match flavor {
        Flavor::TotalPreorder | Flavor::WeakOrder => ordered_bell(m),
        Flavor::WeakTournament | Flavor::StrictTournament => 3u128.pow(off / 2),
        Flavor::Reflexive | Flavor::Irreflexive => 1u128 << off,
    }
}

/// Number of ordered set partitions of an `m`-set.
fn ordered_bell(m: usize) -> u128 {
    // a(n) = sum_k C(n, k) a(n - k)
    let mut a = vec![1u128; m + 1];
    for n in 1..=m {
        let mut binom = 1u128;
        let mut s = 0u128;
        for k in 1..=n {
            binom = binom * (n - k + 1) as u128 / k as u128;
            s += binom * a[n - k];
        }
        a[n] = s;
    }
    a[m]
}

/// Flavor plus ground set; the wire form of a space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceSpec {
    pub flavor: Flavor,
    pub ground: Vec<String>,
}

/// An enumerated family of relations with its median semilattice.
pub struct RelationSpace {
    flavor: Flavor,
    ground: GroundSet,
    elements: Vec<BinRel>,
    index: HashMap<u64, usize>,
    linear: Vec<usize>,
    ctx: MedianContext,
}

impl std::fmt::Debug for RelationSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RelationSpace")
            .field("flavor", &self.flavor)
            .field("ground", &self.ground.names())
            .field("len", &self.elements.len())
            .finish()
    }
}

/// Enumerates a space with default limits.
pub fn enumerate_space(flavor: Flavor, ground: GroundSet) -> Result<RelationSpace> {
    RelationSpace::new(flavor, ground, SpaceOptions::default())
}

impl RelationSpace {
    pub fn new(flavor: Flavor, ground: GroundSet, opts: SpaceOptions) -> Result<Self> {
        let m = ground.len();
        if !opts.allow_large && m > default_ground_limit(flavor) {
            return Err(Error::size("ground set", m, default_ground_limit(flavor)));
        }
        let size = space_size(flavor, m);
        let cap = if opts.allow_large { HARD_LIMIT } else { DENSE_LIMIT };
        if size > cap as u128 {
            return Err(Error::size("elements", size.min(usize::MAX as u128) as usize, cap));
        }
        let elements = match flavor {
            Flavor::TotalPreorder => total_preorders(m),
            Flavor::WeakOrder => total_preorders(m)
                .into_iter()
                .map(|r| r.asymmetric_part())
                .collect(),
            _ => by_code(flavor, m),
        };
        debug_assert_eq!(elements.len() as u128, size);
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, r)| (r.bits(), i))
            .collect();
        let poset = if flavor == Flavor::WeakOrder {
            Poset::from_fn(elements.len(), |i, j| elements[j].is_subset(&elements[i]))?
        } else {
            Poset::from_fn(elements.len(), |i, j| elements[i].is_subset(&elements[j]))?
        };
        let poset = poset.with_labels(elements.iter().map(|r| r.render(&ground)).collect())?;
        let ctx = MedianContext::with_options(
            poset,
            ContextOptions {
                allow_large: opts.allow_large,
            },
        )?;
        let linear = if flavor == Flavor::TotalPreorder {
            (0..elements.len())
                .filter(|&i| elements[i].is_antisymmetric())
                .collect()
        } else {
            Vec::new()
        };
        Ok(RelationSpace {
            flavor,
            ground,
            elements,
            index,
            linear,
            ctx,
        })
    }

    pub fn from_spec(spec: &SpaceSpec, opts: SpaceOptions) -> Result<Self> {
        RelationSpace::new(spec.flavor, GroundSet::new(spec.ground.clone())?, opts)
    }

    pub fn spec(&self) -> SpaceSpec {
        SpaceSpec {
            flavor: self.flavor,
            ground: self.ground.names().to_vec(),
        }
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn ctx(&self) -> &MedianContext {
        &self.ctx
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[BinRel] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &BinRel {
        &self.elements[i]
    }

    pub fn index_of(&self, r: &BinRel) -> Option<usize> {
        if r.m() != self.ground.len() {
            return None;
        }
        self.index.get(&r.bits()).copied()
    }

    pub fn render(&self, i: usize) -> String {
        self.elements[i].render(&self.ground)
    }

    /// Linear orders of a total-preorder space, ascending.
    pub fn linear_orders(&self) -> Result<&[usize]> {
        self.expect(Flavor::TotalPreorder, "total-preorder space")?;
        Ok(&self.linear)
    }

    fn expect(&self, flavor: Flavor, what: &'static str) -> Result<()> {
        if self.flavor == flavor {
            Ok(())
        } else {
            Err(Error::WrongFlavor {
                expected: what,
                got: Some(self.flavor),
            })
        }
    }

    /// Join computed from the relations themselves: transitive closure of the
    /// union for total preorders, plain union for the union-closed flavors.
    pub fn join_rel(&self, i: usize, j: usize) -> Result<usize> {
        let (a, b) = (&self.elements[i], &self.elements[j]);
        let r = match self.flavor {
            Flavor::TotalPreorder => a.union(b).transitive_closure(),
            Flavor::WeakOrder => {
                // back to total preorders: W = complement(R)^-1
                let ra = a.converse().complement();
                let rb = b.converse().complement();
                ra.union(&rb).transitive_closure().asymmetric_part()
            }
            _ => a.union(b),
        };
        self.index_of(&r).ok_or_else(|| {
            Error::InternalInvariantViolation(format!("join of {i} and {j} left the space"))
        })
    }

    /// `R_{A1 A2}` for every ordered two-block partition, by `A1` bitmask.
    pub fn two_block_irreducibles(&self) -> Result<Vec<usize>> {
        self.expect(Flavor::TotalPreorder, "total-preorder space")?;
        let m = self.ground.len();
        let full = (1u32 << m) - 1;
        (1..full)
            .map(|upper| {
                let r = BinRel::from_fn(m, |a, b| upper >> a & 1 == 1 || upper >> b & 1 == 0);
                self.index_of(&r).ok_or_else(|| {
                    Error::InternalInvariantViolation("two-block preorder missing".into())
                })
            })
            .collect()
    }

    pub fn kemeny_distance(&self, i: usize, j: usize) -> u32 {
        kemeny_distance(&self.elements[i], &self.elements[j])
    }

    /// Image of element `i` under a permutation of the ground set.
    pub fn permute(&self, i: usize, perm: &[usize]) -> usize {
        let r = &self.elements[i];
        let img = BinRel::from_pairs(r.m(), r.pairs().map(|(a, b)| (perm[a], perm[b])));
        self.index_of(&img)
            .expect("every flavor is closed under relabelling alternatives")
    }

    /// Accepts a canonical index, bracket notation (total preorders and weak
    /// orders), or a relation JSON object.
    pub fn parse_element(&self, s: &str) -> Result<usize> {
        let s = s.trim();
        if let Ok(i) = s.parse::<usize>() {
            return if i < self.len() {
                Ok(i)
            } else {
                Err(Error::BadInput(format!("index {i} out of range")))
            };
        }
        if s.starts_with('{') {
            let j: RelationJson =
                serde_json::from_str(s).map_err(|e| Error::BadInput(e.to_string()))?;
            return self.element_from_json(&j);
        }
        let r = BinRel::parse_preorder(&self.ground, s)?;
        let r = match self.flavor {
            Flavor::TotalPreorder => r,
            Flavor::WeakOrder => r.asymmetric_part(),
            _ => {
                return Err(Error::BadInput(format!(
                    "bracket notation needs a preorder space, got `{s}`"
                )))
            }
        };
        self.index_of(&r)
            .ok_or_else(|| Error::BadInput(format!("`{s}` is not in the space")))
    }

    pub fn element_from_json(&self, j: &RelationJson) -> Result<usize> {
        let r = j.to_rel(&self.ground)?;
        self.index_of(&r).ok_or_else(|| {
            Error::BadInput(format!("relation is not a {} on the ground set", self.flavor))
        })
    }

    pub fn element_json(&self, i: usize) -> RelationJson {
        RelationJson::from_rel(&self.ground, &self.elements[i])
    }

    /// Builds the paired space and the isomorphism onto it.
    pub fn iso_map(&self) -> Result<IsoMap> {
        let (target, map): (Flavor, fn(&BinRel) -> BinRel) = match self.flavor {
            Flavor::WeakTournament => (Flavor::StrictTournament, strip_diagonal),
            Flavor::Reflexive => (Flavor::Irreflexive, strip_diagonal),
            Flavor::TotalPreorder => (Flavor::WeakOrder, |r| r.asymmetric_part()),
            other => {
                return Err(Error::WrongFlavor {
                    expected: "weak-tournament, reflexive or total-preorder space",
                    got: Some(other),
                })
            }
        };
        let target = RelationSpace::new(
            target,
            self.ground.clone(),
            SpaceOptions { allow_large: true },
        )?;
        let forward = self
            .elements
            .iter()
            .map(|r| {
                target.index_of(&map(r)).ok_or_else(|| {
                    Error::InternalInvariantViolation("image outside paired space".into())
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let iso = IsoMap { target, forward };
        iso.verify(self)?;
        Ok(iso)
    }
}

fn strip_diagonal(r: &BinRel) -> BinRel {
    r.difference(&BinRel::diagonal(r.m()))
}

/// `|R xor R'|`.
pub fn kemeny_distance(a: &BinRel, b: &BinRel) -> u32 {
    a.symmetric_difference_len(b)
}

/// A checked isomorphism from one space onto its paired space.
#[derive(Debug)]
pub struct IsoMap {
    pub target: RelationSpace,
    /// `forward[i]` is the image of source element `i`.
    pub forward: Vec<usize>,
}

impl IsoMap {
    /// Bijective, order-preserving and -reflecting, and commutes with joins.
    pub fn verify(&self, source: &RelationSpace) -> Result<()> {
        let n = source.len();
        let fail = |why: String| Err(Error::InternalInvariantViolation(why));
        if self.target.len() != n {
            return fail(format!("{} != {} elements", n, self.target.len()));
        }
        let mut hit = vec![false; n];
        for &j in &self.forward {
            if std::mem::replace(&mut hit[j], true) {
                return fail(format!("element {j} hit twice"));
            }
        }
        let (s, t) = (source.ctx(), self.target.ctx());
        for x in 0..n {
            for y in 0..n {
                let (fx, fy) = (self.forward[x], self.forward[y]);
                if s.leq(x, y) != t.leq(fx, fy) {
                    return fail(format!("order not preserved at ({x}, {y})"));
                }
                if self.forward[s.join(x, y)] != t.join(fx, fy) {
                    return fail(format!("join not preserved at ({x}, {y})"));
                }
            }
        }
        Ok(())
    }
}

/// Alternative strictly majority-preferred (by at least `floor((n+2)/2)`
/// voters) to every other one.
pub fn condorcet_winner(ground: &GroundSet, profile: &[BinRel]) -> Option<usize> {
    let m = ground.len();
    let need = (profile.len() + 2) / 2;
    (0..m).find(|&x| {
        (0..m).filter(|&y| y != x).all(|y| {
            profile
                .iter()
                .filter(|r| r.holds(x, y) && !r.holds(y, x))
                .count()
                >= need
        })
    })
}

/// `Top(R)`.
pub fn top_set(r: &BinRel) -> Vec<usize> {
    r.top_set()
}

fn total_preorders(m: usize) -> Vec<BinRel> {
    fn rec(rem: u32, level: usize, levels: &mut [usize], m: usize, out: &mut Vec<BinRel>) {
        if rem == 0 {
            out.push(BinRel::from_fn(m, |a, b| levels[a] <= levels[b]));
            return;
        }
        for block in 1..=rem {
            if block & rem != block {
                continue;
            }
            for a in 0..m {
                if block >> a & 1 == 1 {
                    levels[a] = level;
                }
            }
            rec(rem & !block, level + 1, levels, m, out);
        }
    }
    let mut out = Vec::new();
    let mut levels = vec![0; m];
    rec((1u32 << m) - 1, 0, &mut levels, m, &mut out);
    out
}

fn by_code(flavor: Flavor, m: usize) -> Vec<BinRel> {
    let off: Vec<(usize, usize)> = (0..m)
        .flat_map(|a| (0..m).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let base = if flavor.is_reflexive() {
        BinRel::diagonal(m)
    } else {
        BinRel::empty(m)
    };
    (0u64..1 << off.len())
        .map(|code| {
            let mut r = base;
            for (k, &(a, b)) in off.iter().enumerate() {
                if code >> k & 1 == 1 {
                    r.insert(a, b);
                }
            }
            r
        })
        .filter(|r| flavor.admits(r))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(flavor: Flavor, m: usize) -> RelationSpace {
        enumerate_space(flavor, GroundSet::letters(m).unwrap()).unwrap()
    }

    #[test]
    fn sizes() {
        assert_eq!(space(Flavor::TotalPreorder, 3).len(), 13);
        assert_eq!(space(Flavor::WeakTournament, 3).len(), 27);
        assert_eq!(space(Flavor::Reflexive, 3).len(), 64);
        assert_eq!(space_size(Flavor::TotalPreorder, 4), 75);
        assert_eq!(space_size(Flavor::TotalPreorder, 5), 541);
    }

    #[test]
    fn first_and_last_preorder() {
        let s = space(Flavor::TotalPreorder, 3);
        assert_eq!(s.render(0), "abc");
        assert_eq!(s.render(12), "[abc]");
        assert_eq!(s.ctx().top(), 12);
    }

    #[test]
    fn limits() {
        let g = GroundSet::letters(4).unwrap();
        assert!(matches!(
            enumerate_space(Flavor::Reflexive, g.clone()),
            Err(Error::SizeLimit { .. })
        ));
        let g5 = GroundSet::letters(5).unwrap();
        assert!(matches!(
            enumerate_space(Flavor::TotalPreorder, g5),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn two_block_needs_preorders() {
        let s = space(Flavor::WeakTournament, 3);
        assert!(matches!(
            s.two_block_irreducibles(),
            Err(Error::WrongFlavor { .. })
        ));
        assert!(s.linear_orders().is_err());
        let p2 = space(Flavor::TotalPreorder, 2);
        assert_eq!(p2.two_block_irreducibles().unwrap().len(), 2);
    }

    #[test]
    fn join_of_opposite_linear_orders_is_total_indifference() {
        let s = space(Flavor::TotalPreorder, 3);
        let a = s.parse_element("abc").unwrap();
        let b = s.parse_element("cba").unwrap();
        assert_eq!(s.join_rel(a, b).unwrap(), s.parse_element("[abc]").unwrap());
        assert_eq!(s.join_rel(a, a).unwrap(), a);
    }

    #[test]
    fn condorcet_cases() {
        let g = GroundSet::letters(3).unwrap();
        let p = |s: &str| BinRel::parse_preorder(&g, s).unwrap();
        assert_eq!(condorcet_winner(&g, &[p("abc"), p("abc"), p("abc")]), Some(0));
        assert_eq!(condorcet_winner(&g, &[p("abc"), p("bca"), p("cab")]), None);
        assert_eq!(condorcet_winner(&g, &[p("abc"), p("abc"), p("bca")]), Some(0));
    }

    #[test]
    fn kemeny_of_adjacent_linear_orders() {
        let g = GroundSet::parse("x,y,z").unwrap();
        let a = BinRel::parse_preorder(&g, "xyz").unwrap();
        let b = BinRel::parse_preorder(&g, "xzy").unwrap();
        assert_eq!(kemeny_distance(&a, &a), 0);
        assert_eq!(kemeny_distance(&a, &b), 2);
    }

    #[test]
    fn permute_relabels() {
        let s = space(Flavor::TotalPreorder, 3);
        let a = s.parse_element("a[bc]").unwrap();
        // a -> c, b -> a, c -> b
        let img = s.permute(a, &[2, 0, 1]);
        assert_eq!(s.render(img), "c[ab]");
    }
}
