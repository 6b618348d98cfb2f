//! Multi-indices and their iterated-integral words.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{MzvError, Result};

/// Positive-integer index `(l_1, …, l_n)`; `l_1` belongs to the outermost
/// (largest) summation variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(MzvError::InvalidIndex("empty index".into()));
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(MzvError::InvalidIndex(format!("{parts:?} has a zero part")));
        }
        Ok(MultiIndex(parts))
    }

    /// `(l)`.
    pub fn single(l: u32) -> Self {
        assert!(l >= 1, "index parts are positive");
        MultiIndex(vec![l])
    }

    /// `(k + 1, {1}^(j − 1))`; requires `j ≥ 1`.
    pub fn hook(k: u32, j: u32) -> Self {
        assert!(j >= 1, "hook index needs depth at least 1");
        let mut parts = vec![k + 1];
        parts.extend(std::iter::repeat(1).take(j as usize - 1));
        MultiIndex(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn is_admissible(&self) -> bool {
        self.0[0] >= 2
    }

    pub fn to_word(&self) -> Word {
        let mut letters = Vec::with_capacity(self.weight() as usize);
        for &p in &self.0 {
            letters.extend(std::iter::repeat(Letter::E0).take(p as usize - 1));
            letters.push(Letter::E1);
        }
        Word(letters)
    }

    /// The dual index: reverse the word and swap `e0 ↔ e1`.
    pub fn dual(&self) -> Result<MultiIndex> {
        if !self.is_admissible() {
            return Err(MzvError::NotAdmissible(self.to_string()));
        }
        self.to_word().dual().to_index()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for MultiIndex {
    type Err = MzvError;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| MzvError::Parse(format!("bad index part {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        MultiIndex::new(parts)
    }
}

impl TryFrom<String> for MultiIndex {
    type Error = MzvError;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<MultiIndex> for String {
    fn from(idx: MultiIndex) -> String {
        idx.to_string()
    }
}

/// Integration letter: `e0 ↦ dt/t`, `e1 ↦ dt/(1 − t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    E0,
    E1,
}

impl Letter {
    pub fn swapped(self) -> Letter {
        match self {
            Letter::E0 => Letter::E1,
            Letter::E1 => Letter::E0,
        }
    }
}

/// Word over `{e0, e1}`; the first letter is the outermost integration.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(MzvError::InvalidIndex("empty word".into()));
        }
        Ok(Word(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of `e1` letters, i.e. the depth of the corresponding index.
    pub fn depth(&self) -> usize {
        self.0.iter().filter(|&&l| l == Letter::E1).count()
    }

    pub fn ends_with_e1(&self) -> bool {
        self.0.last() == Some(&Letter::E1)
    }

    pub fn is_admissible(&self) -> bool {
        self.ends_with_e1() && self.0[0] == Letter::E0
    }

    /// Reverse and swap letters.
    pub fn dual(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.swapped()).collect())
    }

    pub fn to_index(&self) -> Result<MultiIndex> {
        if !self.ends_with_e1() {
            return Err(MzvError::DivergentWord);
        }
        let mut parts = Vec::with_capacity(self.depth());
        let mut run = 1;
        for &l in &self.0 {
            match l {
                Letter::E0 => run += 1,
                Letter::E1 => {
                    parts.push(run);
                    run = 1;
                }
            }
        }
        MultiIndex::new(parts)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            f.write_str(match l {
                Letter::E0 => "0",
                Letter::E1 => "1",
            })?;
        }
        Ok(())
    }
}

/// All compositions of `total` into `parts` positive parts, lexicographic.
pub fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if parts == 0 || (total as usize) < parts {
        return out;
    }
    let mut current = Vec::with_capacity(parts);
    fill(total, parts, &mut current, &mut out);
    out
}

fn fill(remaining: u32, slots: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if slots == 1 {
        current.push(remaining);
        out.push(current.clone());
        current.pop();
        return;
    }
    for first in 1..=(remaining - (slots as u32 - 1)) {
        current.push(first);
        fill(remaining - first, slots - 1, current, out);
        current.pop();
    }
}

/// Admissible indices of weight `l` and depth `n` in lexicographic order.
pub fn admissible_indices(l: u32, n: usize) -> Vec<MultiIndex> {
    compositions(l, n)
        .into_iter()
        .filter(|c| c[0] >= 2)
        .map(MultiIndex)
        .collect()
}

/// Every admissible index with weight in `2..=max_weight`, ordered by weight,
/// then depth, then lexicographically.
pub fn all_admissible_up_to(max_weight: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    for l in 2..=max_weight {
        for n in 1..l as usize {
            out.extend(admissible_indices(l, n));
        }
    }
    out
}
