//! Binary relations on a small ground set, packed into a `u64`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest ground set a [`BinRel`] bitmask can hold.
pub const MAX_GROUND: usize = 8;

/// The kinds of relation spaces this crate enumerates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flavor {
    /// Reflexive, transitive, connected.
    TotalPreorder,
    /// Asymmetric and negatively transitive, ordered by reverse inclusion.
    WeakOrder,
    /// Reflexive and connected.
    WeakTournament,
    /// Irreflexive and connected.
    StrictTournament,
    /// Reflexive.
    Reflexive,
    /// Irreflexive.
    Irreflexive,
}

impl Flavor {
    pub const ALL: [Flavor; 6] = [
        Flavor::TotalPreorder,
        Flavor::WeakOrder,
        Flavor::WeakTournament,
        Flavor::StrictTournament,
        Flavor::Reflexive,
        Flavor::Irreflexive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Flavor::TotalPreorder => "total-preorder",
            Flavor::WeakOrder => "weak-order",
            Flavor::WeakTournament => "weak-tournament",
            Flavor::StrictTournament => "strict-tournament",
            Flavor::Reflexive => "reflexive",
            Flavor::Irreflexive => "irreflexive",
        }
    }

    /// Whether `r` belongs to a space of this flavor.
    pub fn admits(self, r: &BinRel) -> bool {
        match self {
            Flavor::TotalPreorder => r.is_reflexive() && r.is_transitive() && r.is_connected(),
            Flavor::WeakOrder => r.is_asymmetric() && r.is_negatively_transitive(),
            Flavor::WeakTournament => r.is_reflexive() && r.is_connected(),
            Flavor::StrictTournament => r.is_irreflexive() && r.is_connected(),
            Flavor::Reflexive => r.is_reflexive(),
            Flavor::Irreflexive => r.is_irreflexive(),
        }
    }

    pub fn is_reflexive(self) -> bool {
        matches!(
            self,
            Flavor::TotalPreorder | Flavor::WeakTournament | Flavor::Reflexive
        )
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Flavor::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::BadInput(format!("unknown flavor `{s}`")))
    }
}

/// The alternatives `A`, by display name.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroundSet {
    names: Vec<String>,
}

impl GroundSet {
    pub fn new(names: Vec<String>) -> Result<Self> {
        if names.len() < 2 {
            return Err(Error::BadInput("ground set needs at least 2 alternatives".into()));
        }
        if names.len() > MAX_GROUND {
            return Err(Error::size("ground set", names.len(), MAX_GROUND));
        }
        for (i, a) in names.iter().enumerate() {
            if a.is_empty() || names[..i].contains(a) {
                return Err(Error::BadInput(format!("bad or repeated alternative `{a}`")));
            }
        }
        Ok(GroundSet { names })
    }

    /// `a, b, c, ...`
    pub fn letters(m: usize) -> Result<Self> {
        GroundSet::new((0..m).map(|i| ((b'a' + i as u8) as char).to_string()).collect())
    }

    /// Parses `x,y,z`.
    pub fn parse(s: &str) -> Result<Self> {
        GroundSet::new(s.split(',').map(|t| t.trim().to_string()).collect())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn compact(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }
}

/// A binary relation on `0..m`; bit `a * m + b` holds iff `a R b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinRel {
    m: u8,
    bits: u64,
}

impl fmt::Debug for BinRel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinRel{{")?;
        let mut first = true;
        for (a, b) in self.pairs() {
            if !first {
                write!(f, ",")?;
            }
            first = false;
            write!(f, "({a},{b})")?;
        }
        write!(f, "}}")
    }
}

impl BinRel {
    pub fn empty(m: usize) -> Self {
        assert!(m <= MAX_GROUND);
        BinRel { m: m as u8, bits: 0 }
    }

    pub fn full(m: usize) -> Self {
        let mut r = BinRel::empty(m);
        r.bits = if m * m == 64 { u64::MAX } else { (1u64 << (m * m)) - 1 };
        r
    }

    /// The diagonal `Delta_A`.
    pub fn diagonal(m: usize) -> Self {
        BinRel::from_pairs(m, (0..m).map(|a| (a, a)))
    }

    pub fn from_pairs(m: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut r = BinRel::empty(m);
        for (a, b) in pairs {
            r.insert(a, b);
        }
        r
    }

    pub fn from_fn(m: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut r = BinRel::empty(m);
        for a in 0..m {
            for b in 0..m {
                if f(a, b) {
                    r.insert(a, b);
                }
            }
        }
        r
    }

    /// Linear or weak order from a ranking of classes, best first.
    pub fn from_classes(m: usize, classes: &[Vec<usize>]) -> Self {
        let mut level = vec![usize::MAX; m];
        for (k, class) in classes.iter().enumerate() {
            for &a in class {
                level[a] = k;
            }
        }
        BinRel::from_fn(m, |a, b| level[a] <= level[b])
    }

    pub fn from_bits(m: usize, bits: u64) -> Self {
        BinRel { m: m as u8, bits }
    }

    pub fn m(&self) -> usize {
        self.m as usize
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn holds(&self, a: usize, b: usize) -> bool {
        self.bits >> (a * self.m() + b) & 1 == 1
    }

    pub fn insert(&mut self, a: usize, b: usize) {
        self.bits |= 1 << (a * self.m() + b);
    }

    pub fn remove(&mut self, a: usize, b: usize) {
        self.bits &= !(1 << (a * self.m() + b));
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let m = self.m();
        (0..m * m)
            .filter(move |&k| self.bits >> k & 1 == 1)
            .map(move |k| (k / m, k % m))
    }

    pub fn union(&self, o: &BinRel) -> BinRel {
        BinRel { m: self.m, bits: self.bits | o.bits }
    }

    pub fn intersection(&self, o: &BinRel) -> BinRel {
        BinRel { m: self.m, bits: self.bits & o.bits }
    }

    pub fn difference(&self, o: &BinRel) -> BinRel {
        BinRel { m: self.m, bits: self.bits & !o.bits }
    }

    pub fn is_subset(&self, o: &BinRel) -> bool {
        self.bits & !o.bits == 0
    }

    /// `|R xor R'|` as sets of ordered pairs.
    pub fn symmetric_difference_len(&self, o: &BinRel) -> u32 {
        (self.bits ^ o.bits).count_ones()
    }

    pub fn converse(&self) -> BinRel {
        BinRel::from_fn(self.m(), |a, b| self.holds(b, a))
    }

    pub fn complement(&self) -> BinRel {
        BinRel { m: self.m, bits: BinRel::full(self.m()).bits & !self.bits }
    }

    /// `{(a, b) : a R b and not b R a}`.
    pub fn asymmetric_part(&self) -> BinRel {
        BinRel::from_fn(self.m(), |a, b| self.holds(a, b) && !self.holds(b, a))
    }

    pub fn transitive_closure(&self) -> BinRel {
        let m = self.m();
        let mut r = *self;
        for k in 0..m {
            for a in 0..m {
                if r.holds(a, k) {
                    for b in 0..m {
                        if r.holds(k, b) {
                            r.insert(a, b);
                        }
                    }
                }
            }
        }
        r
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.m()).all(|a| self.holds(a, a))
    }

    pub fn is_irreflexive(&self) -> bool {
        (0..self.m()).all(|a| !self.holds(a, a))
    }

    pub fn is_transitive(&self) -> bool {
        self.transitive_closure() == *self
    }

    /// `a R b` or `b R a` for every `a != b`.
    pub fn is_connected(&self) -> bool {
        let m = self.m();
        (0..m).all(|a| (0..m).all(|b| a == b || self.holds(a, b) || self.holds(b, a)))
    }

    pub fn is_asymmetric(&self) -> bool {
        let m = self.m();
        (0..m).all(|a| (0..m).all(|b| !(self.holds(a, b) && self.holds(b, a))))
    }

    pub fn is_antisymmetric(&self) -> bool {
        let m = self.m();
        (0..m).all(|a| (0..m).all(|b| a == b || !(self.holds(a, b) && self.holds(b, a))))
    }

    pub fn is_negatively_transitive(&self) -> bool {
        self.complement().is_transitive()
    }

    /// Linear order: antisymmetric total preorder.
    pub fn is_linear_order(&self) -> bool {
        Flavor::TotalPreorder.admits(self) && self.is_antisymmetric()
    }

    /// `{x : x R y for all y != x}`.
    pub fn top_set(&self) -> Vec<usize> {
        let m = self.m();
        (0..m)
            .filter(|&a| (0..m).all(|b| a == b || self.holds(a, b)))
            .collect()
    }

    /// Indifference classes of a total preorder, best first.
    pub fn classes(&self) -> Option<Vec<Vec<usize>>> {
        if !Flavor::TotalPreorder.admits(self) {
            return None;
        }
        let m = self.m();
        // number of alternatives each one is weakly above
        let mut score: Vec<(usize, usize)> = (0..m)
            .map(|a| ((0..m).filter(|&b| self.holds(a, b)).count(), a))
            .collect();
        score.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut last = usize::MAX;
        for (s, a) in score {
            if s != last {
                out.push(Vec::new());
                last = s;
            }
            out.last_mut().unwrap().push(a);
        }
        Some(out)
    }

    /// Bracket notation (`x[yz]`) for total preorders, pair list otherwise.
    pub fn render(&self, ground: &GroundSet) -> String {
        let sep = if ground.compact() { "" } else { " " };
        match self.classes() {
            Some(classes) => classes
                .iter()
                .map(|c| {
                    let names: Vec<&str> = c.iter().map(|&a| ground.name(a)).collect();
                    if c.len() == 1 {
                        names[0].to_string()
                    } else {
                        format!("[{}]", names.join(sep))
                    }
                })
                .collect::<Vec<_>>()
                .join(sep),
            None => {
                let body: Vec<String> = self
                    .pairs()
                    .filter(|(a, b)| a != b)
                    .map(|(a, b)| format!("({},{})", ground.name(a), ground.name(b)))
                    .collect();
                let diag = if self.is_reflexive() && self.m() > 0 { "D+" } else { "" };
                format!("{diag}{{{}}}", body.join(","))
            }
        }
    }

    /// Parses bracket notation such as `xyz`, `x[yz]` or `[x y] z`.
    pub fn parse_preorder(ground: &GroundSet, s: &str) -> Result<Self> {
        let m = ground.len();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut open: Option<Vec<usize>> = None;
        let mut token = String::new();
        let bad = |why: &str| Error::BadInput(format!("cannot parse `{s}`: {why}"));

        let flush = |token: &mut String,
                         open: &mut Option<Vec<usize>>,
                         classes: &mut Vec<Vec<usize>>|
         -> Result<()> {
            if token.is_empty() {
                return Ok(());
            }
            let a = ground
                .position(token)
                .ok_or_else(|| Error::BadInput(format!("unknown alternative `{token}`")))?;
            token.clear();
            match open {
                Some(c) => c.push(a),
                None => classes.push(vec![a]),
            }
            Ok(())
        };

        for ch in s.chars() {
            match ch {
                '[' => {
                    flush(&mut token, &mut open, &mut classes)?;
                    if open.is_some() {
                        return Err(bad("nested bracket"));
                    }
                    open = Some(Vec::new());
                }
                ']' => {
                    flush(&mut token, &mut open, &mut classes)?;
                    let c = open.take().ok_or_else(|| bad("unbalanced bracket"))?;
                    if c.is_empty() {
                        return Err(bad("empty class"));
                    }
                    classes.push(c);
                }
                c if c.is_whitespace() || c == ',' || c == '>' => {
                    flush(&mut token, &mut open, &mut classes)?;
                }
                c => {
                    token.push(c);
                    if ground.compact() {
                        flush(&mut token, &mut open, &mut classes)?;
                    }
                }
            }
        }
        flush(&mut token, &mut open, &mut classes)?;
        if open.is_some() {
            return Err(bad("unbalanced bracket"));
        }
        let mut seen = vec![false; m];
        for &a in classes.iter().flatten() {
            if std::mem::replace(&mut seen[a], true) {
                return Err(bad("repeated alternative"));
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(bad("missing alternatives"));
        }
        Ok(BinRel::from_classes(m, &classes))
    }
}

/// Wire form `{"ground": [names], "pairs": [[i, j], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationJson {
    pub ground: Vec<String>,
    pub pairs: Vec<[usize; 2]>,
}

impl RelationJson {
    pub fn from_rel(ground: &GroundSet, r: &BinRel) -> Self {
        RelationJson {
            ground: ground.names().to_vec(),
            pairs: r.pairs().map(|(a, b)| [a, b]).collect(),
        }
    }

    pub fn to_rel(&self, ground: &GroundSet) -> Result<BinRel> {
        if self.ground != ground.names() {
            return Err(Error::BadInput(format!(
                "relation ground {:?} differs from space ground {:?}",
                self.ground,
                ground.names()
            )));
        }
        let m = ground.len();
        if let Some(p) = self.pairs.iter().find(|[a, b]| *a >= m || *b >= m) {
            return Err(Error::BadInput(format!("pair {p:?} out of range")));
        }
        Ok(BinRel::from_pairs(m, self.pairs.iter().map(|&[a, b]| (a, b))))
    }
}
