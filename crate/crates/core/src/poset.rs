//! Finite partial orders given by a dense incidence matrix.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A validated finite partial order on `0..n`.
///
/// `leq(x, y)` holds iff `x <= y`. Labels are display strings only; element
/// identity is always the index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    leq: Vec<bool>,
    labels: Vec<String>,
}

impl Poset {
    /// Validates `leq` (row-major, `leq[x * n + y]` iff `x <= y`).
    pub fn new(n: usize, leq: Vec<bool>) -> Result<Self> {
        if leq.len() != n * n {
            return Err(Error::BadShape { n });
        }
        for x in 0..n {
            if !leq[x * n + x] {
                return Err(Error::NotReflexive(x));
            }
        }
        for x in 0..n {
            for y in (x + 1)..n {
                if leq[x * n + y] && leq[y * n + x] {
                    return Err(Error::NotAntisymmetric(x, y));
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if x == y || !leq[x * n + y] {
                    continue;
                }
                for z in 0..n {
                    if leq[y * n + z] && !leq[x * n + z] {
                        return Err(Error::NotTransitive(x, y, z));
                    }
                }
            }
        }
        let labels = (0..n).map(|i| i.to_string()).collect();
        Ok(Poset { n, leq, labels })
    }

    /// Builds a poset from a nested boolean matrix.
    pub fn from_matrix(rows: &[Vec<bool>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::BadShape { n });
        }
        Poset::new(n, rows.concat())
    }

    /// The poset induced on `0..n` by a comparison predicate.
    pub fn from_fn(n: usize, mut le: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let mut leq = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                leq.push(le(x, y));
            }
        }
        Poset::new(n, leq)
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        Poset::from_fn(n, |x, y| x <= y).expect("chain is a partial order")
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::BadInput(format!(
                "{} labels for {} elements",
                labels.len(),
                self.n
            )));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.n + y]
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    /// The dual order.
    pub fn dual(&self) -> Poset {
        let n = self.n;
        let mut leq = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                leq[y * n + x] = self.leq(x, y);
            }
        }
        Poset {
            n,
            leq,
            labels: self.labels.clone(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct PosetJson {
    n: usize,
    #[serde(default)]
    labels: Vec<String>,
    leq: Vec<Vec<u8>>,
}

impl Serialize for Poset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let leq = (0..self.n)
            .map(|x| (0..self.n).map(|y| self.leq(x, y) as u8).collect())
            .collect();
        PosetJson {
            n: self.n,
            labels: self.labels.clone(),
            leq,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PosetJson::deserialize(d)?;
        if raw.leq.len() != raw.n {
            return Err(D::Error::custom(Error::BadShape { n: raw.n }));
        }
        let rows: Vec<Vec<bool>> = raw
            .leq
            .iter()
            .map(|r| r.iter().map(|&b| b != 0).collect())
            .collect();
        let p = Poset::from_matrix(&rows).map_err(D::Error::custom)?;
        if raw.labels.is_empty() {
            Ok(p)
        } else {
            p.with_labels(raw.labels).map_err(D::Error::custom)
        }
    }
}
