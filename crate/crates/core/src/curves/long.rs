use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::arcs::{ArcClassification, ArcTag, Walks};
use super::map::{dart_in, dart_out, CombinatorialMap, MapMode};
use super::{realizable_signings, SignedGaussCode};
use crate::gauss::{enumerate_words, DtCode};

/// Canonical encoding of a rooted long curve with its outer face.
///
/// The map is relabeled along the curve from the root; when the designated
/// outer face lies to the right of the curve the mirrored rotation is used,
/// so the encoding always reads the outer face on the left. The relabeled
/// rotation table is then stored as the code it spells.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CurveKey(pub SignedGaussCode);

impl fmt::Display for CurveKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A long curve in the second quadrant from the x-axis to the y-axis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LongCurve {
    key: CurveKey,
}

impl LongCurve {
    /// Curve whose outer region is the face on the left of the closure edge
    /// (`outer_left`) or on its right. Returns `None` if the code is not planar.
    pub fn from_code(code: &SignedGaussCode, outer_left: bool) -> Option<Self> {
        if !code.realizable(MapMode::Closed) {
            return None;
        }
        if code.n() == 0 {
            return Some(LongCurve { key: CurveKey(code.clone()) });
        }
        let map = code.map(MapMode::Closed);
        let map = if outer_left { map } else { map.mirror() };
        let (table, _) = map.traversal_encoding(map.root().expect("n > 0"));
        Some(LongCurve { key: CurveKey(SignedGaussCode::from_traversal(&table)) })
    }

    pub fn code(&self) -> &SignedGaussCode {
        &self.key.0
    }

    pub fn key(&self) -> &CurveKey {
        &self.key
    }

    pub fn n(&self) -> usize {
        self.code().n()
    }

    pub fn dt(&self) -> DtCode {
        self.code().word().to_dt().expect("planar words satisfy the parity rule")
    }

    pub fn map(&self) -> CombinatorialMap {
        self.code().map(MapMode::Closed)
    }

    /// Face ids `(outer, inner)` of the closed map; `None` for `n = 0`.
    pub fn designated_faces(&self) -> Option<(usize, usize)> {
        if self.n() == 0 {
            return None;
        }
        let (ids, _) = self.map().faces();
        Some((ids[dart_in(0)], ids[dart_out(2 * self.n() - 1)]))
    }

    /// Exchanges the roles of the outer and inner regions.
    pub fn swap_regions(&self) -> LongCurve {
        LongCurve::from_code(self.code(), false).expect("swap keeps planarity")
    }

    pub fn classify_arcs(&self) -> ArcClassification {
        ArcClassification::of(self)
    }

    pub fn walks(&self) -> Walks {
        Walks::of(self)
    }

    /// A curl that no twist marker can reach. Its loop arc must be `Plain`, and
    /// either both arcs it sits between are `Plain` too, or the face holding the
    /// loop is the inside of another loop: apart from corners at curl crossings
    /// it has at most one corner.
    pub fn has_interior_curl(&self) -> bool {
        if self.n() == 0 {
            return false;
        }
        let map = self.map();
        let arcs = self.classify_arcs();
        let (ids, _) = map.faces();
        let monogons: Vec<usize> = (0..map.dart_count()).filter(|&d| map.phi(d) == d).collect();
        let vertex = |d: usize| d.min(map.sigma(d)).min(map.straight(d)).min(map.sigma_inv(d));
        let curl_vertices: BTreeSet<usize> = monogons.iter().map(|&d| vertex(d)).collect();
        let last = 2 * self.n();
        monogons.iter().any(|&d| {
            let a = dart_arc(d);
            if a == 0 || a == last || arcs.tag(a) != ArcTag::Plain {
                return false;
            }
            if arcs.tag(a - 1) == ArcTag::Plain && arcs.tag(a + 1) == ArcTag::Plain {
                return true;
            }
            let face = ids[map.alpha(d)];
            let corners = (0..map.dart_count())
                .filter(|&e| ids[e] == face && !curl_vertices.contains(&vertex(e)))
                .count();
            corners <= 1
        })
    }
}

/// Arc index of the curve edge a dart lies on.
pub fn dart_arc(d: usize) -> usize {
    let t = d / 2;
    if d % 2 == 1 {
        t + 1
    } else {
        t
    }
}

/// All long curves with `n` crossings, ordered by key.
pub fn enumerate_long_curves(n: usize) -> Vec<LongCurve> {
    let keys: BTreeMap<CurveKey, LongCurve> = enumerate_words(n)
        .par_iter()
        .flat_map_iter(|w| {
            realizable_signings(w).into_iter().flat_map(|c| {
                [true, false].into_iter().filter_map(move |left| LongCurve::from_code(&c, left))
            })
        })
        .collect::<Vec<_>>()
        .into_iter()
        .map(|c| (c.key.clone(), c))
        .collect();
    keys.into_values().collect()
}

/// Curves without interior curls, one per region-swap orbit (the smaller key).
pub fn filtered_curves(n: usize) -> Vec<LongCurve> {
    enumerate_long_curves(n)
        .into_iter()
        .filter(|c| !c.has_interior_curl())
        .filter(|c| c.key <= c.swap_regions().key)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveStats {
    pub dt: DtCode,
    pub m1: usize,
    pub m2: usize,
    pub m3: usize,
}

/// Per DT code: number of long curves, survivors without interior curls,
/// and region-swap orbits among the survivors.
pub fn curve_stats(n: usize) -> Vec<CurveStats> {
    let mut groups: BTreeMap<DtCode, Vec<LongCurve>> = BTreeMap::new();
    for c in enumerate_long_curves(n) {
        groups.entry(c.dt()).or_default().push(c);
    }
    groups
        .into_iter()
        .map(|(dt, curves)| {
            let kept: Vec<&LongCurve> = curves.iter().filter(|c| !c.has_interior_curl()).collect();
            let orbits: BTreeSet<CurveKey> = kept
                .iter()
                .map(|c| c.key().clone().min(c.swap_regions().key().clone()))
                .collect();
            CurveStats { dt, m1: curves.len(), m2: kept.len(), m3: orbits.len() }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn long_curve_counts() {
        let counts: Vec<usize> = (0..=4).map(|n| enumerate_long_curves(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 8, 42, 260]);
    }

    #[test]
    fn one_crossing_curves_swap_into_each_other() {
        let cs = enumerate_long_curves(1);
        assert_eq!(cs[0].swap_regions(), cs[1]);
    }

    #[test]
    fn swap_is_involution() {
        for n in 0..=4 {
            for c in enumerate_long_curves(n) {
                assert_eq!(c.swap_regions().swap_regions(), c);
            }
        }
    }

    #[test]
    fn filtered_counts() {
        let counts: Vec<usize> = (2..=4).map(|n| filtered_curves(n).len()).collect();
        assert_eq!(counts, vec![3, 11, 49]);
    }

    #[test]
    fn table_rows() {
        let stats = curve_stats(4);
        assert_eq!(stats.len(), 24);
        let row = |dt: &str| {
            let s = stats.iter().find(|s| s.dt.to_string() == dt).unwrap();
            (s.m1, s.m2, s.m3)
        };
        assert_eq!(row("2468"), (16, 16, 8));
        assert_eq!(row("4682"), (2, 2, 1));
        assert_eq!(row("4826"), (4, 0, 0));
        assert_eq!(row("6284"), (4, 0, 0));
        assert_eq!(row("4862"), (4, 4, 2));
        assert_eq!(row("8246"), (16, 2, 1));
        let sums = stats.iter().fold((0, 0, 0), |a, s| (a.0 + s.m1, a.1 + s.m2, a.2 + s.m3));
        assert_eq!(sums, (260, 98, 49));
    }
}
