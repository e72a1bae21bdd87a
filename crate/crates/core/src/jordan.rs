use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Multiset of Jordan block sizes, stored as size -> multiplicity.
///
/// Size-0 blocks are dropped on insertion, so the empty type is the zero module.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct JordanType {
    blocks: BTreeMap<usize, usize>,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("cannot parse Jordan type {input:?}: {reason}")]
pub struct JordanParseError {
    pub input: String,
    pub reason: String,
}

impl JordanType {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_sizes<I: IntoIterator<Item = usize>>(sizes: I) -> Self {
        let mut t = Self::new();
        for s in sizes {
            t.add(s, 1);
        }
        t
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(pairs: I) -> Self {
        let mut t = Self::new();
        for (s, m) in pairs {
            t.add(s, m);
        }
        t
    }

    /// `mult` copies of a single block.
    pub fn uniform(size: usize, mult: usize) -> Self {
        Self::from_pairs([(size, mult)])
    }

    pub fn add(&mut self, size: usize, mult: usize) {
        if size == 0 || mult == 0 {
            return;
        }
        *self.blocks.entry(size).or_insert(0) += mult;
    }

    /// Removes one block of the given size; false if there is none.
    pub fn remove_one(&mut self, size: usize) -> bool {
        match self.blocks.get_mut(&size) {
            Some(m) => {
                *m -= 1;
                if *m == 0 {
                    self.blocks.remove(&size);
                }
                true
            }
            None => false,
        }
    }

    pub fn extend(&mut self, other: &JordanType) {
        for (&s, &m) in &other.blocks {
            self.add(s, m);
        }
    }

    pub fn scaled(&self, factor: usize) -> JordanType {
        JordanType::from_pairs(self.blocks.iter().map(|(&s, &m)| (s, m * factor)))
    }

    pub fn map_sizes<F: Fn(usize) -> usize>(&self, f: F) -> JordanType {
        JordanType::from_pairs(self.blocks.iter().map(|(&s, &m)| (f(s), m)))
    }

    pub fn multiplicity(&self, size: usize) -> usize {
        self.blocks.get(&size).copied().unwrap_or(0)
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|(s, m)| s * m).sum()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn min_size(&self) -> Option<usize> {
        self.blocks.keys().next().copied()
    }

    pub fn max_size(&self) -> Option<usize> {
        self.blocks.keys().next_back().copied()
    }

    /// (size, multiplicity) pairs in ascending size order.
    pub fn pairs(&self) -> impl DoubleEndedIterator<Item = (usize, usize)> + '_ {
        self.blocks.iter().map(|(&s, &m)| (s, m))
    }

    /// Every block listed individually, largest first.
    pub fn sizes_desc(&self) -> Vec<usize> {
        let mut v = Vec::with_capacity(self.num_blocks());
        for (s, m) in self.pairs().rev() {
            v.extend(std::iter::repeat_n(s, m));
        }
        v
    }

    /// Ascending compact form used in tables, e.g. `1^3,2,4^4`.
    pub fn to_compact(&self) -> String {
        if self.is_empty() {
            return "0".to_string();
        }
        self.pairs().map(|(s, m)| term(s, m)).collect::<Vec<_>>().join(",")
    }
}

fn term(s: usize, m: usize) -> String {
    if m == 1 {
        s.to_string()
    } else {
        format!("{s}^{m}")
    }
}

impl fmt::Display for JordanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0 (zero module)");
        }
        let parts: Vec<String> = self.pairs().rev().map(|(s, m)| term(s, m)).collect();
        write!(f, "{}", parts.join(", "))
    }
}

impl fmt::Debug for JordanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self)
    }
}

/// Accepts `4^2, 1`, `1^3,2,4^4`, and `0` for the zero module.
impl FromStr for JordanType {
    type Err = JordanParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| JordanParseError {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let compact = compact.strip_suffix("(zeromodule)").unwrap_or(&compact);
        if compact.is_empty() {
            return Err(err("empty input"));
        }
        if compact == "0" {
            return Ok(JordanType::new());
        }
        let mut t = JordanType::new();
        for item in compact.split(',') {
            let (size, mult) = match item.split_once('^') {
                Some((a, b)) => (a, b),
                None => (item, "1"),
            };
            let size: usize = size.parse().map_err(|_| err("bad block size"))?;
            let mult: usize = mult.parse().map_err(|_| err("bad multiplicity"))?;
            if size == 0 || mult == 0 {
                return Err(err("sizes and multiplicities must be positive"));
            }
            t.add(size, mult);
        }
        Ok(t)
    }
}
