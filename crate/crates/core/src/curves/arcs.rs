use std::fmt;

use serde::{Deserialize, Serialize};

use super::long::{dart_arc, LongCurve};
use super::map::{dart_in, dart_out};

/// Region incidence of a curve arc. Indices count from 1 along the curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ArcTag {
    Outer(usize),
    Inner(usize),
    Central,
    Plain,
}

impl ArcTag {
    pub fn is_outer(self) -> bool {
        matches!(self, ArcTag::Outer(_))
    }

    pub fn is_inner(self) -> bool {
        matches!(self, ArcTag::Inner(_))
    }

    /// May carry a twist marker.
    pub fn is_eligible(self) -> bool {
        self.is_outer() || self.is_inner()
    }

    /// Erases the index.
    pub fn kind(self) -> ArcTag {
        match self {
            ArcTag::Outer(_) => ArcTag::Outer(0),
            ArcTag::Inner(_) => ArcTag::Inner(0),
            t => t,
        }
    }
}

impl fmt::Display for ArcTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArcTag::Outer(i) => write!(f, "o{i}"),
            ArcTag::Inner(i) => write!(f, "i{i}"),
            ArcTag::Central => f.write_str("c"),
            ArcTag::Plain => f.write_str("-"),
        }
    }
}

/// Tags of arcs `0..=2n`; arc `k` runs from the `k`-th to the `k+1`-th
/// crossing passage, arc 0 starts on the x-axis and arc `2n` ends on the y-axis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcClassification {
    pub tags: Vec<ArcTag>,
}

impl ArcClassification {
    pub(crate) fn of(curve: &LongCurve) -> Self {
        let n = curve.n();
        if n == 0 {
            return ArcClassification { tags: vec![ArcTag::Central] };
        }
        let (ids, _) = curve.map().faces();
        let (outer, inner) = (ids[dart_in(0)], ids[dart_out(2 * n - 1)]);
        let (mut no, mut ni) = (0, 0);
        let tags = (0..=2 * n)
            .map(|k| {
                let right = if k == 0 { inner } else { ids[dart_out(k - 1)] };
                let left = if k == 2 * n { outer } else { ids[dart_in(k)] };
                let touches_outer = left == outer || right == outer;
                let touches_inner = left == inner || right == inner;
                match (touches_outer, touches_inner) {
                    (true, true) => ArcTag::Central,
                    (true, false) => {
                        no += 1;
                        ArcTag::Outer(no)
                    }
                    (false, true) => {
                        ni += 1;
                        ArcTag::Inner(ni)
                    }
                    (false, false) => ArcTag::Plain,
                }
            })
            .collect();
        ArcClassification { tags }
    }

    pub fn tag(&self, arc: usize) -> ArcTag {
        self.tags[arc]
    }

    pub fn count(&self, kind: ArcTag) -> usize {
        self.tags.iter().filter(|t| t.kind() == kind.kind()).count()
    }
}

impl fmt::Display for ArcClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.tags.iter().map(|t| t.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Arc sequences met when walking from the x-axis end to the y-axis end
/// along the boundary of the outer and of the inner region.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Walks {
    pub outer: Vec<usize>,
    pub inner: Vec<usize>,
}

impl Walks {
    pub(crate) fn of(curve: &LongCurve) -> Self {
        let n = curve.n();
        if n == 0 {
            return Walks { outer: vec![0], inner: vec![0] };
        }
        let map = curve.map();
        let last = 2 * n;
        let mut outer: Vec<usize> =
            map.face_orbit(dart_in(0)).into_iter().skip(1).map(dart_arc).collect();
        outer.reverse();
        outer.insert(0, 0);
        outer.push(last);
        let mut inner: Vec<usize> =
            map.face_orbit(dart_out(2 * n - 1)).into_iter().skip(1).map(dart_arc).collect();
        inner.insert(0, 0);
        inner.push(last);
        Walks { outer, inner }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::enumerate_long_curves;

    #[test]
    fn empty_curve_is_one_central_arc() {
        let c = &enumerate_long_curves(0)[0];
        assert_eq!(c.classify_arcs().tags, vec![ArcTag::Central]);
    }

    #[test]
    fn curl_arcs() {
        for c in enumerate_long_curves(1) {
            let tags = c.classify_arcs().tags;
            assert_eq!(tags.len(), 3);
            assert_eq!(tags[0], ArcTag::Central);
            assert_eq!(tags[2], ArcTag::Central);
            assert!(tags[1].is_eligible());
        }
    }

    #[test]
    fn walks_are_consistent_with_tags() {
        for n in 1..=4 {
            for c in enumerate_long_curves(n) {
                let tags = c.classify_arcs();
                let w = c.walks();
                for &a in &w.outer {
                    assert!(matches!(tags.tag(a), ArcTag::Outer(_) | ArcTag::Central));
                }
                for &a in &w.inner {
                    assert!(matches!(tags.tag(a), ArcTag::Inner(_) | ArcTag::Central));
                }
                let outer_count = tags.count(ArcTag::Outer(0)) + tags.count(ArcTag::Central);
                assert_eq!(w.outer.len(), outer_count);
                assert_eq!(w.inner.len(), tags.count(ArcTag::Inner(0)) + tags.count(ArcTag::Central));
            }
        }
    }
}
