use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{Parity, Q};

/// An element `coeff · a_1^{ε_1} ... a_k^{ε_k} · σ` of `B_k`, the spin
/// quotient of the Sergeev group algebra (`z = -1`).
///
/// `perm[i]` is `σ(i)` on 0-based positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpinGroupElement {
    k: usize,
    coeff: Q,
    eps: Vec<bool>,
    perm: Vec<usize>,
}

impl SpinGroupElement {
    pub fn new(coeff: Q, eps: Vec<bool>, perm: Vec<usize>) -> Result<Self> {
        let k = eps.len();
        if perm.len() != k {
            return Err(Error::DegreeMismatch(k, perm.len()));
        }
        let mut seen = vec![false; k];
        for &p in &perm {
            if p >= k || seen[p] {
                return Err(Error::Parse(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        Ok(Self { k, coeff, eps, perm })
    }

    pub fn identity(k: usize) -> Self {
        Self {
            k,
            coeff: Q::one(),
            eps: vec![false; k],
            perm: (0..k).collect(),
        }
    }

    /// `a_i`, 0-based.
    pub fn a(k: usize, i: usize) -> Self {
        let mut g = Self::identity(k);
        g.eps[i] = true;
        g
    }

    /// The adjacent transposition `(i i+1)`, 0-based.
    pub fn s(k: usize, i: usize) -> Self {
        let mut g = Self::identity(k);
        g.perm.swap(i, i + 1);
        g
    }

    pub fn from_perm(perm: Vec<usize>) -> Result<Self> {
        Self::new(Q::one(), vec![false; perm.len()], perm)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn coeff(&self) -> &Q {
        &self.coeff
    }

    pub fn eps(&self) -> &[bool] {
        &self.eps
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn parity(&self) -> Parity {
        Parity::from_count(self.eps.iter().filter(|e| **e).count())
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self {
            coeff: &self.coeff * c,
            ..self.clone()
        }
    }

    /// Normal form of `self · other`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.k != other.k {
            return Err(Error::DegreeMismatch(self.k, other.k));
        }
        let mut coeff = &self.coeff * &other.coeff;
        let mut eps = self.eps.clone();
        // σ a^η σ^{-1} = a_{σ(1)}^{η_1} ... a_{σ(k)}^{η_k}
        for (i, &e) in other.eps.iter().enumerate() {
            if !e {
                continue;
            }
            let j = self.perm[i];
            let passed = eps[j + 1..].iter().filter(|x| **x).count();
            if passed % 2 == 1 {
                coeff = -coeff;
            }
            if eps[j] {
                eps[j] = false;
                coeff = -coeff;
            } else {
                eps[j] = true;
            }
        }
        let perm = other.perm.iter().map(|&t| self.perm[t]).collect();
        Ok(Self {
            k: self.k,
            coeff,
            eps,
            perm,
        })
    }

    /// All `2^k k!` normal-form words with coefficient 1.
    pub fn enumerate(k: usize) -> Vec<Self> {
        let mut perms = vec![Vec::new()];
        for n in 0..k {
            let mut next = Vec::new();
            for p in &perms {
                for pos in 0..=n {
                    let mut q: Vec<usize> = p.clone();
                    q.insert(pos, n);
                    next.push(q);
                }
            }
            perms = next;
        }
        perms.sort();
        let mut out = Vec::with_capacity(perms.len() << k);
        for mask in 0..1usize << k {
            let eps: Vec<bool> = (0..k).map(|i| mask >> i & 1 == 1).collect();
            for p in &perms {
                out.push(Self {
                    k,
                    coeff: Q::one(),
                    eps: eps.clone(),
                    perm: p.clone(),
                });
            }
        }
        out
    }

    /// Generators `a_1, s_1, ..., s_{k-1}`.
    pub fn generators(k: usize) -> Vec<Self> {
        let mut out = Vec::new();
        if k > 0 {
            out.push(Self::a(k, 0));
        }
        out.extend((0..k.saturating_sub(1)).map(|i| Self::s(k, i)));
        out
    }

    /// Parses a product such as `a1*a2*s1` with `a<i>`, `s<i>` (the
    /// transposition `(i i+1)`), `z` and `1`, all 1-based.
    pub fn parse(text: &str, k: usize) -> Result<Self> {
        let mut g = Self::identity(k);
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse("empty word".into()));
        }
        for token in text.split('*').map(str::trim) {
            let h = match token {
                "1" | "e" => Self::identity(k),
                "z" => Self::identity(k).scale(&-Q::one()),
                t => {
                    let (head, idx) = t.split_at(1);
                    let i: usize = idx
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad generator {t:?}")))?;
                    match head {
                        "a" if (1..=k).contains(&i) => Self::a(k, i - 1),
                        "s" if i >= 1 && i < k => Self::s(k, i - 1),
                        _ => return Err(Error::Parse(format!("bad generator {t:?} for k = {k}"))),
                    }
                }
            };
            g = g.multiply(&h)?;
        }
        Ok(g)
    }

    /// Largest generator index mentioned in a word; a lower bound for `k`.
    pub fn infer_k(text: &str) -> usize {
        text.split('*')
            .filter_map(|t| {
                let t = t.trim();
                let i: usize = t.get(1..)?.parse().ok()?;
                match t.chars().next()? {
                    'a' => Some(i),
                    's' => Some(i + 1),
                    _ => None,
                }
            })
            .max()
            .unwrap_or(1)
    }

    fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.k];
        let mut out = Vec::new();
        for start in 0..self.k {
            if seen[start] || self.perm[start] == start {
                continue;
            }
            let mut c = vec![start];
            seen[start] = true;
            let mut i = self.perm[start];
            while i != start {
                seen[i] = true;
                c.push(i);
                i = self.perm[i];
            }
            out.push(c);
        }
        out
    }

    /// Text form such as `-a1*a3*(1 2)`.
    pub fn normal_form(&self) -> String {
        let mut factors: Vec<String> = self
            .eps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e)
            .map(|(i, _)| format!("a{}", i + 1))
            .collect();
        for c in self.cycles() {
            let c: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
            factors.push(format!("({})", c.join(" ")));
        }
        let body = factors.join("*");
        if self.coeff.is_zero() {
            return "0".into();
        }
        match (body.is_empty(), self.coeff.is_one(), (-&self.coeff).is_one()) {
            (true, _, _) => self.coeff.to_string(),
            (false, true, _) => body,
            (false, _, true) => format!("-{body}"),
            _ => format!("{}*{body}", self.coeff),
        }
    }
}

impl fmt::Display for SpinGroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.normal_form())
    }
}

#[derive(Serialize)]
struct Wire<'a> {
    k: usize,
    coeff: String,
    eps: Vec<u8>,
    perm: Vec<usize>,
    normal_form: &'a str,
}

impl Serialize for SpinGroupElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let nf = self.normal_form();
        Wire {
            k: self.k,
            coeff: self.coeff.to_string(),
            eps: self.eps.iter().map(|e| u8::from(*e)).collect(),
            perm: self.perm.iter().map(|p| p + 1).collect(),
            normal_form: &nf,
        }
        .serialize(s)
    }
}

impl FromStr for SpinGroupElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s, Self::infer_k(s))
    }
}
