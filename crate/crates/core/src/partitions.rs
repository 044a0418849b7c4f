//! Strict partitions: the index set for irreducible q(m)-modules and for
//! spin modules of the Sergeev group.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A strictly decreasing sequence of positive integers. Trailing zeros are
/// never stored; the empty partition is allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct StrictPartition {
    parts: Vec<usize>,
}

impl StrictPartition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not strictly decreasing"
            )));
        }
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    /// The one-part partition `(k)`; empty when `k == 0`.
    pub fn row(k: usize) -> Self {
        if k == 0 {
            Self::empty()
        } else {
            Self { parts: vec![k] }
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `delta(l(λ))`.
    pub fn delta(&self) -> usize {
        delta(self.len())
    }

    /// Parts padded with zeros to `width` entries, as a weight vector.
    pub fn padded(&self, width: usize) -> Vec<i64> {
        let mut w: Vec<i64> = self.parts.iter().map(|&p| p as i64).collect();
        w.resize(width.max(w.len()), 0);
        w
    }
}

impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for StrictPartition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

/// Parses `3,1`; the empty partition is `0` or the empty string.
impl FromStr for StrictPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(s);
        if s.is_empty() || s == "0" {
            return Ok(Self::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("partition part {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

/// 0 for even length, 1 for odd length.
pub fn delta(l: usize) -> usize {
    l % 2
}

/// All strict partitions of `size` with at most `max_length` parts, in
/// decreasing lexicographic order. `None` means unbounded length.
pub fn strict_partitions(size: usize, max_length: Option<usize>) -> Vec<StrictPartition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    let max_length = max_length.unwrap_or(usize::MAX);
    fill(size, size, max_length, &mut current, &mut out);
    out
}

fn fill(
    remaining: usize,
    largest: usize,
    max_length: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<StrictPartition>,
) {
    if remaining == 0 {
        out.push(StrictPartition {
            parts: current.clone(),
        });
        return;
    }
    if current.len() == max_length {
        return;
    }
    for part in (1..=largest.min(remaining)).rev() {
        // parts below `part` are at most part-1, ..., 1
        if part * (part + 1) / 2 < remaining {
            break;
        }
        current.push(part);
        fill(remaining - part, part - 1, max_length, current, out);
        current.pop();
    }
}

/// All strict partitions with size at most `max_size` and length at most
/// `max_length`, grouped by increasing size.
pub fn strict_partitions_up_to(max_size: usize, max_length: Option<usize>) -> Vec<StrictPartition> {
    (0..=max_size)
        .flat_map(|s| strict_partitions(s, max_length))
        .collect()
}
