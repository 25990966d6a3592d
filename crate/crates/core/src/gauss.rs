//! Double-occurrence words, Gauss's parity rule and star marks, DT codes.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::curves::{self, MapMode};
use crate::error::{Error, Result};

/// A double-occurrence word with labels `0..n`, stored in first-occurrence order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GaussWord {
    labels: Vec<u8>,
}

impl GaussWord {
    pub fn empty() -> Self {
        GaussWord { labels: Vec::new() }
    }

    /// Builds a word from arbitrary labels and relabels it canonically.
    pub fn from_labels<T: Copy + Ord>(raw: &[T]) -> Result<Self> {
        let mut map: BTreeMap<T, u8> = BTreeMap::new();
        let mut counts: Vec<u8> = Vec::new();
        let mut labels = Vec::with_capacity(raw.len());
        for &x in raw {
            let next = map.len() as u8;
            let l = *map.entry(x).or_insert(next);
            if l as usize == counts.len() {
                counts.push(0);
            }
            counts[l as usize] += 1;
            labels.push(l);
        }
        if counts.iter().any(|&c| c != 2) {
            return Err(Error::InvalidWord(format!(
                "every label must occur exactly twice ({} symbols)",
                raw.len()
            )));
        }
        Ok(GaussWord { labels })
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Number of crossings.
    pub fn n(&self) -> usize {
        self.labels.len() / 2
    }

    /// Both positions of every label, first occurrence first.
    pub fn positions(&self) -> Vec<(usize, usize)> {
        let mut pos = vec![(usize::MAX, usize::MAX); self.n()];
        for (i, &l) in self.labels.iter().enumerate() {
            let p = &mut pos[l as usize];
            if p.0 == usize::MAX {
                p.0 = i;
            } else {
                p.1 = i;
            }
        }
        pos
    }

    /// Every label sits once at an even and once at an odd position.
    pub fn parity_check(&self) -> bool {
        self.positions().iter().all(|&(i, j)| (i + j) % 2 == 1)
    }

    pub fn simplified_notation(&self) -> PairMatrix {
        let mut pairs: Vec<(usize, usize)> = self
            .positions()
            .into_iter()
            .filter_map(|(i, j)| match (i % 2, j % 2) {
                (0, 1) => Some((i, j)),
                (1, 0) => Some((j, i)),
                _ => None,
            })
            .collect();
        pairs.sort_unstable();
        PairMatrix { pairs }
    }

    /// `x·w·x` with the fresh label becoming the first one.
    pub fn extend_word(&self) -> GaussWord {
        let mut labels = Vec::with_capacity(self.len() + 2);
        labels.push(0);
        labels.extend(self.labels.iter().map(|&l| l + 1));
        labels.push(0);
        GaussWord { labels }
    }

    /// Cyclic rotation by `k` positions, re-canonicalized.
    pub fn rotate(&self, k: usize) -> GaussWord {
        if self.is_empty() {
            return self.clone();
        }
        let k = k % self.len();
        let raw: Vec<u8> = self.labels[k..].iter().chain(&self.labels[..k]).copied().collect();
        GaussWord::from_labels(&raw).expect("rotation keeps multiplicities")
    }

    pub fn reversed(&self) -> GaussWord {
        let raw: Vec<u8> = self.labels.iter().rev().copied().collect();
        GaussWord::from_labels(&raw).expect("reversal keeps multiplicities")
    }

    pub fn open_realizable(&self) -> bool {
        curves::exists_realizable_signing(self, MapMode::Open)
    }

    pub fn closed_realizable(&self) -> bool {
        curves::exists_realizable_signing(self, MapMode::Closed)
    }

    pub fn star_class(&self) -> StarClass {
        if !self.open_realizable() {
            StarClass::TwoStar
        } else if !self.extend_word().open_realizable() {
            StarClass::OneStar
        } else {
            StarClass::NoStar
        }
    }

    pub fn to_dt(&self) -> Result<DtCode> {
        if !self.parity_check() {
            return Err(Error::ParityViolation(self.to_string()));
        }
        let mut evens = vec![0i64; self.n()];
        for (i, j) in self.positions() {
            let (odd, even) = if i % 2 == 0 { (i + 1, j + 1) } else { (j + 1, i + 1) };
            evens[(odd - 1) / 2] = even as i64;
        }
        Ok(DtCode { evens })
    }

    /// Some crossing cuts the closure into two parts sharing no crossing.
    pub fn is_reducible_closure(&self) -> bool {
        self.cutting_label().is_some()
    }

    fn cutting_label(&self) -> Option<(u8, GaussWord, GaussWord)> {
        for (l, (i, j)) in self.positions().into_iter().enumerate() {
            let inside = &self.labels[i + 1..j];
            let mut seen = vec![0u8; self.n()];
            for &x in inside {
                seen[x as usize] += 1;
            }
            if seen.iter().all(|&c| c != 1) {
                let outside: Vec<u8> = self.labels[j + 1..]
                    .iter()
                    .chain(&self.labels[..i])
                    .copied()
                    .collect();
                let a = GaussWord::from_labels(inside).expect("closed segment");
                let b = GaussWord::from_labels(&outside).expect("closed segment");
                return Some((l as u8, a, b));
            }
        }
        None
    }

    /// Number of irreducible pieces the closure decomposes into.
    pub fn irreducible_parts(&self) -> usize {
        if self.is_empty() {
            return 0;
        }
        match self.cutting_label() {
            Some((_, a, b)) => 1 + a.irreducible_parts() + b.irreducible_parts(),
            None => 1,
        }
    }
}

impl fmt::Display for GaussWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("-");
        }
        if self.n() <= 26 {
            for &l in &self.labels {
                write!(f, "{}", (b'a' + l) as char)?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.labels.iter().map(|l| (l + 1).to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl FromStr for GaussWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "-" {
            return Ok(GaussWord::empty());
        }
        if s.contains(',') {
            let raw: Vec<u32> = s
                .split(',')
                .map(|t| t.trim().parse::<u32>().map_err(|_| Error::InvalidWord(s.to_string())))
                .collect::<Result<_>>()?;
            return GaussWord::from_labels(&raw);
        }
        if !s.chars().all(|c| c.is_ascii_alphabetic()) {
            return Err(Error::InvalidWord(s.to_string()));
        }
        let raw: Vec<char> = s.chars().collect();
        GaussWord::from_labels(&raw)
    }
}

/// Gauss's even/odd position table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairMatrix {
    pub pairs: Vec<(usize, usize)>,
}

impl fmt::Display for PairMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs.iter().map(|(a, b)| format!("({a},{b})")).collect();
        f.write_str(&parts.join(""))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum StarClass {
    NoStar,
    OneStar,
    TwoStar,
}

impl fmt::Display for StarClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StarClass::NoStar => "",
            StarClass::OneStar => "*",
            StarClass::TwoStar => "**",
        })
    }
}

/// Dowker-Thistlethwaite code. Entry `i` is the even partner of odd position `2i+1`
/// (1-based); a negative entry marks the odd passage as the over-strand.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DtCode {
    pub evens: Vec<i64>,
}

impl DtCode {
    pub fn new(evens: Vec<i64>) -> Result<Self> {
        let n = evens.len();
        let mut seen = vec![false; n];
        for &e in &evens {
            let a = e.unsigned_abs() as usize;
            if a == 0 || a % 2 == 1 || a > 2 * n || seen[a / 2 - 1] {
                return Err(Error::InvalidDt(format!("{evens:?}")));
            }
            seen[a / 2 - 1] = true;
        }
        Ok(DtCode { evens })
    }

    pub fn n(&self) -> usize {
        self.evens.len()
    }

    /// The underlying Gauss word (signs ignored).
    pub fn to_word(&self) -> GaussWord {
        let mut raw = vec![0usize; 2 * self.n()];
        for (i, &e) in self.evens.iter().enumerate() {
            raw[2 * i] = i;
            raw[e.unsigned_abs() as usize - 1] = i;
        }
        GaussWord::from_labels(&raw).expect("valid DT code")
    }

    /// Parses `4682`, `4 6 8 2`, `[4, -6, 8, 2]` and similar forms.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('[').trim_end_matches(']');
        let evens: Vec<i64> = if t.contains([',', ' ']) {
            t.split([',', ' '])
                .filter(|p| !p.is_empty())
                .map(|p| p.parse::<i64>().map_err(|_| Error::InvalidDt(s.to_string())))
                .collect::<Result<_>>()?
        } else if t.chars().all(|c| c.is_ascii_digit()) {
            t.chars().map(|c| c.to_digit(10).unwrap() as i64).collect()
        } else {
            return Err(Error::InvalidDt(s.to_string()));
        };
        DtCode::new(evens)
    }
}

impl fmt::Display for DtCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.evens.iter().all(|&e| (0..10).contains(&e)) {
            for e in &self.evens {
                write!(f, "{e}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.evens.iter().map(|e| e.to_string()).collect();
            f.write_str(&parts.join(" "))
        }
    }
}

/// All canonical double-occurrence words with `n` labels in lexicographic order.
pub fn enumerate_words(n: usize) -> Vec<GaussWord> {
    fn go(n: usize, cur: &mut Vec<u8>, used: &mut Vec<u8>, out: &mut Vec<GaussWord>) {
        if cur.len() == 2 * n {
            out.push(GaussWord { labels: cur.clone() });
            return;
        }
        let next = used.len();
        for l in 0..=next {
            if l < next && used[l] != 1 {
                continue;
            }
            if l == next {
                if next == n {
                    continue;
                }
                used.push(0);
            }
            used[l] += 1;
            cur.push(l as u8);
            go(n, cur, used, out);
            cur.pop();
            used[l] -= 1;
            if l == next {
                used.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::with_capacity(2 * n), &mut Vec::new(), &mut out);
    out
}

/// Groups words equal up to cyclic rotation (and reversal if requested).
/// Classes are sorted by representative, each class sorted ascending.
pub fn cyclic_classes(words: &[GaussWord], with_reversal: bool) -> Vec<Vec<GaussWord>> {
    let key = |w: &GaussWord| {
        let mut best = w.clone();
        for k in 0..w.len().max(1) {
            let r = w.rotate(k);
            if with_reversal {
                let rr = r.reversed();
                if rr < best {
                    best = rr;
                }
            }
            if r < best {
                best = r;
            }
        }
        best
    };
    let mut classes: BTreeMap<GaussWord, Vec<GaussWord>> = BTreeMap::new();
    for w in words {
        classes.entry(key(w)).or_default().push(w.clone());
    }
    classes
        .into_values()
        .map(|mut c| {
            c.sort();
            c.dedup();
            c
        })
        .collect()
}
