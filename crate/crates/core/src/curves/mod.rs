//! Planar realization of Gauss words: rotation systems, long curves in the
//! second quadrant, closed curves, and arc classification.

mod arcs;
mod closed;
mod long;
mod map;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauss::GaussWord;

pub use arcs::{ArcClassification, ArcTag, Walks};
pub use closed::{enumerate_closed_curves, ClosedCurveCensus};
pub use long::{curve_stats, dart_arc, enumerate_long_curves, filtered_curves, CurveKey, CurveStats, LongCurve};
pub use map::{dart_in, dart_out, CombinatorialMap, MapMode};

/// Side from which the second visit crosses the first strand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SignedGaussCode {
    word: GaussWord,
    signs: Vec<Sign>,
}

impl SignedGaussCode {
    pub fn new(word: GaussWord, signs: Vec<Sign>) -> Result<Self> {
        if signs.len() != word.n() {
            return Err(Error::InvalidWord(format!(
                "{} needs {} signs, got {}",
                word,
                word.n(),
                signs.len()
            )));
        }
        Ok(SignedGaussCode { word, signs })
    }

    /// Parses `abab:+-`.
    pub fn parse(s: &str) -> Result<Self> {
        let (w, sg) = s.split_once(':').unwrap_or((s, ""));
        let word: GaussWord = w.parse()?;
        let signs = sg
            .trim()
            .chars()
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' => Ok(Sign::Minus),
                _ => Err(Error::InvalidWord(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()?;
        SignedGaussCode::new(word, signs)
    }

    pub fn word(&self) -> &GaussWord {
        &self.word
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn n(&self) -> usize {
        self.word.n()
    }

    pub fn mirror(&self) -> Self {
        SignedGaussCode {
            word: self.word.clone(),
            signs: self.signs.iter().map(|s| s.flip()).collect(),
        }
    }

    pub fn map(&self, mode: MapMode) -> CombinatorialMap {
        CombinatorialMap::build(self, mode)
    }

    pub fn realizable(&self, mode: MapMode) -> bool {
        match mode {
            MapMode::Closed => self.n() == 0 || self.map(mode).face_count() == self.n() + 2,
            MapMode::Open => self.map(mode).face_count() == self.n() + 1,
        }
    }

    /// All `2^n` sign assignments, `Plus` before `Minus` position by position.
    pub fn all_signings(word: &GaussWord) -> Vec<SignedGaussCode> {
        let n = word.n();
        (0..1u64 << n)
            .map(|mask| SignedGaussCode {
                word: word.clone(),
                signs: (0..n)
                    .map(|i| if mask >> (n - 1 - i) & 1 == 0 { Sign::Plus } else { Sign::Minus })
                    .collect(),
            })
            .collect()
    }

    /// Reads the code back off a closed map, following the curve from `root`.
    pub fn from_traversal(table: &[usize]) -> Self {
        let k = table.len();
        let mut vertex = vec![usize::MAX; k];
        let mut nv = 0;
        for d in 0..k {
            if vertex[d] != usize::MAX {
                continue;
            }
            let mut e = d;
            while vertex[e] == usize::MAX {
                vertex[e] = nv;
                e = table[e];
            }
            nv += 1;
        }
        let raw: Vec<usize> = (0..k / 2).map(|t| vertex[2 * t]).collect();
        let word = GaussWord::from_labels(&raw).expect("traversal visits each crossing twice");
        let signs = word
            .positions()
            .into_iter()
            .map(|(i, j)| if table[2 * i] == 2 * j { Sign::Plus } else { Sign::Minus })
            .collect();
        SignedGaussCode { word, signs }
    }
}

impl fmt::Display for SignedGaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.word)?;
        for s in &self.signs {
            f.write_str(if *s == Sign::Plus { "+" } else { "-" })?;
        }
        Ok(())
    }
}

/// Whether some side-sign assignment realizes the word in the plane.
/// Mirroring preserves realizability, so the first sign is pinned.
pub fn exists_realizable_signing(word: &GaussWord, mode: MapMode) -> bool {
    if word.is_empty() {
        return true;
    }
    SignedGaussCode::all_signings(word)
        .into_iter()
        .filter(|c| c.signs[0] == Sign::Plus)
        .any(|c| c.realizable(mode))
}

/// Realizable closed signings of `word`.
pub fn realizable_signings(word: &GaussWord) -> Vec<SignedGaussCode> {
    SignedGaussCode::all_signings(word)
        .into_iter()
        .filter(|c| c.realizable(MapMode::Closed))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::enumerate_words;

    #[test]
    fn eight_closed_signings_for_two_crossings() {
        let total: usize = enumerate_words(2).iter().map(|w| realizable_signings(w).len()).sum();
        assert_eq!(total, 8);
    }

    #[test]
    fn curls_both_ways() {
        assert!(SignedGaussCode::parse("aa:+").unwrap().realizable(MapMode::Closed));
        assert!(SignedGaussCode::parse("aa:-").unwrap().realizable(MapMode::Closed));
    }

    #[test]
    fn traversal_roundtrip() {
        for w in enumerate_words(4) {
            for c in realizable_signings(&w) {
                let (table, _) = c.map(MapMode::Closed).traversal_encoding(0);
                assert_eq!(SignedGaussCode::from_traversal(&table), c);
            }
        }
    }

    #[test]
    fn parse_and_display() {
        let c = SignedGaussCode::parse("abab:+-").unwrap();
        assert_eq!(c.to_string(), "abab:+-");
        assert!(SignedGaussCode::parse("abab:+").is_err());
    }
}
