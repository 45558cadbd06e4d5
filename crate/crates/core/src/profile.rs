//! Profiles `x_N ∈ X^N` and their dense integer encoding.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::relation::RelationJson;
use crate::spaces::{RelationSpace, SpaceSpec};

/// Largest profile cube that may be enumerated or tabulated.
pub const MAX_PROFILES: usize = 1 << 22;

/// The set `X^N` with `|X| = size`, `|N| = n`, indexed densely with agent 0
/// as the most significant digit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProfileCube {
    n: usize,
    size: usize,
    count: usize,
}

impl ProfileCube {
    pub fn new(n: usize, size: usize) -> Result<Self> {
        if n == 0 || size == 0 {
            return Err(Error::BadProfile(format!("empty cube {size}^{n}")));
        }
        let count = (0..n)
            .try_fold(1usize, |acc, _| acc.checked_mul(size))
            .filter(|&c| c <= MAX_PROFILES)
            .ok_or_else(|| {
                Error::size("profiles", size.saturating_pow(n as u32), MAX_PROFILES)
            })?;
        Ok(ProfileCube { n, size, count })
    }

    /// A cube used only to draw samples: the enumeration cap is not
    /// applied and `count` saturates.
    pub fn sampling(n: usize, size: usize) -> Result<Self> {
        if n == 0 || size == 0 {
            return Err(Error::BadProfile(format!("empty cube {size}^{n}")));
        }
        let count = size.saturating_pow(n as u32);
        Ok(ProfileCube { n, size, count })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn encode(&self, profile: &[usize]) -> usize {
        profile.iter().fold(0, |acc, &x| acc * self.size + x)
    }

    pub fn decode_into(&self, mut idx: usize, out: &mut [usize]) {
        for slot in out.iter_mut().rev() {
            *slot = idx % self.size;
            idx /= self.size;
        }
    }

    pub fn decode(&self, idx: usize) -> Vec<usize> {
        let mut v = vec![0; self.n];
        self.decode_into(idx, &mut v);
        v
    }

    /// Weight of agent `i`'s digit.
    pub fn stride(&self, i: usize) -> usize {
        self.size.pow((self.n - 1 - i) as u32)
    }

    /// Index of the profile with agent `i`'s entry `from` replaced by `to`.
    #[inline]
    pub fn replace(&self, idx: usize, i: usize, from: usize, to: usize) -> usize {
        let s = self.stride(i);
        idx - from * s + to * s
    }

    pub fn check(&self, profile: &[usize]) -> Result<()> {
        if profile.len() != self.n {
            return Err(Error::BadProfile(format!(
                "expected {} votes, got {}",
                self.n,
                profile.len()
            )));
        }
        match profile.iter().find(|&&x| x >= self.size) {
            Some(x) => Err(Error::BadProfile(format!(
                "element {x} outside a space of {}",
                self.size
            ))),
            None => Ok(()),
        }
    }
}

/// One vote on the wire: a canonical index, bracket notation, or pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Vote {
    Index(usize),
    Notation(String),
    Relation(RelationJson),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileJson {
    pub space: SpaceSpec,
    pub votes: Vec<Vote>,
}

impl ProfileJson {
    pub fn resolve(&self, space: &RelationSpace) -> Result<Vec<usize>> {
        if self.space != space.spec() {
            return Err(Error::BadProfile(format!(
                "profile is for {} on {:?}",
                self.space.flavor, self.space.ground
            )));
        }
        self.votes
            .iter()
            .map(|v| match v {
                Vote::Index(i) => space.parse_element(&i.to_string()),
                Vote::Notation(s) => space.parse_element(s),
                Vote::Relation(r) => space.element_from_json(r),
            })
            .collect()
    }

    pub fn from_indices(space: &RelationSpace, profile: &[usize]) -> Self {
        ProfileJson {
            space: space.spec(),
            votes: profile.iter().map(|&x| Vote::Index(x)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encoding_round_trip() {
        let c = ProfileCube::new(3, 13).unwrap();
        assert_eq!(c.count(), 2197);
        assert_eq!(c.encode(&[0, 0, 1]), 1);
        assert_eq!(c.encode(&[1, 0, 0]), 169);
        for idx in [0, 1, 500, 2196] {
            assert_eq!(c.encode(&c.decode(idx)), idx);
        }
        let p = c.decode(500);
        let q = c.replace(500, 1, p[1], 7);
        assert_eq!(c.decode(q), vec![p[0], 7, p[2]]);
    }

    #[test]
    fn limits_and_checks() {
        assert!(matches!(
            ProfileCube::new(9, 75),
            Err(Error::SizeLimit { .. })
        ));
        let c = ProfileCube::new(2, 3).unwrap();
        assert!(c.check(&[0, 3]).is_err());
        assert!(c.check(&[0]).is_err());
        assert!(c.check(&[2, 1]).is_ok());
    }
}
