//! From valid parterre templates to doubly symmetric knot diagrams.

mod pd;
mod synth;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::curves::dart_arc;
use crate::error::{Error, Result};
use crate::templates::{Axis, ParterreTemplate};

pub use pd::PlanarDiagramCode;
pub(crate) use pd::Ports;
pub use synth::synthesize;

/// A parterre template with an over/under choice per crossing label:
/// `over_under[l]` says whether the first passage through crossing `l` is
/// the over strand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotDiagramTemplate {
    pub parterre: ParterreTemplate,
    pub over_under: Vec<bool>,
}

impl KnotDiagramTemplate {
    pub fn new(parterre: ParterreTemplate, over_under: Vec<bool>) -> Result<Self> {
        if over_under.len() != parterre.n() {
            return Err(Error::MalformedTemplate(format!(
                "{} crossings but {} over/under choices",
                parterre.n(),
                over_under.len()
            )));
        }
        Ok(KnotDiagramTemplate { parterre, over_under })
    }

    /// Whether passage `t` of the long curve is the over strand.
    pub fn passage_over(&self, t: usize) -> bool {
        let labels = self.parterre.curve.code().word().labels();
        let l = labels[t] as usize;
        let first = labels.iter().position(|&x| x as usize == l) == Some(t);
        first == self.over_under[l]
    }

    pub fn variation_string(&self) -> String {
        self.over_under.iter().map(|&b| if b { 'o' } else { 'u' }).collect()
    }
}

impl fmt::Display for KnotDiagramTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self.parterre, self.variation_string())
    }
}

/// Signed half-twist counts, one per marker in the template's marker order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TwistVector(pub Vec<i64>);

impl TwistVector {
    pub fn total(&self) -> u64 {
        self.0.iter().map(|t| t.unsigned_abs()).sum()
    }

    /// Sum of `|t|` over the markers of one axis.
    pub fn axis_total(&self, pt: &ParterreTemplate, axis: Axis) -> u64 {
        pt.markers.iter().zip(&self.0).filter(|(m, _)| m.axis == axis).map(|(_, t)| t.unsigned_abs()).sum()
    }

    /// `(x twists | y twists)` in marker order.
    pub fn display_for(&self, pt: &ParterreTemplate) -> String {
        let pick = |axis: Axis| -> Vec<String> {
            pt.markers.iter().zip(&self.0).filter(|(m, _)| m.axis == axis).map(|(_, t)| t.to_string()).collect()
        };
        format!("({}|{})", pick(Axis::X).join(","), pick(Axis::Y).join(","))
    }
}

/// All over/under choices with the first crossing pinned (mirror images give
/// the same knots).
pub fn crossing_variations(pt: &ParterreTemplate) -> Vec<KnotDiagramTemplate> {
    let n = pt.n();
    if n == 0 {
        return vec![KnotDiagramTemplate { parterre: pt.clone(), over_under: vec![] }];
    }
    (0..1u64 << (n - 1))
        .map(|mask| {
            let over_under = (0..n).map(|l| l == 0 || mask >> (n - 1 - l) & 1 == 0).collect();
            KnotDiagramTemplate { parterre: pt.clone(), over_under }
        })
        .collect()
}

/// A bigon face of the template curve, other than the outer and inner
/// regions and free of twist markers, whose two crossings cancel by a
/// Reidemeister 2 move.
pub fn is_r2_reducible(kdt: &KnotDiagramTemplate) -> bool {
    let curve = &kdt.parterre.curve;
    let Some((outer, inner)) = curve.designated_faces() else { return false };
    let map = curve.map();
    let (ids, _) = map.faces();
    (0..map.dart_count()).any(|d| {
        let f = ids[d];
        if f == outer || f == inner || map.face_orbit(d).len() != 2 {
            return false;
        }
        // A marker on a side sends a finger of twist boxes into the bigon.
        let sides = map.face_orbit(d);
        if sides.iter().any(|&e| kdt.parterre.markers.iter().any(|m| m.arc == dart_arc(e))) {
            return false;
        }
        let k = dart_arc(d);
        kdt.passage_over(k - 1) == kdt.passage_over(k)
    })
}

/// Twist vectors with `4n + 2 sum|t| <= max_crossings` and a nonzero entry on
/// each axis, ordered by total twist then lexicographically.
pub fn twist_assignments(kdt: &KnotDiagramTemplate, max_crossings: usize) -> Vec<TwistVector> {
    let pt = &kdt.parterre;
    let n = pt.n();
    if max_crossings < 4 * n + 4 {
        return vec![];
    }
    let budget = ((max_crossings - 4 * n) / 2) as i64;
    let r = pt.markers.len();
    let mut out = Vec::new();
    let mut cur = vec![0i64; r];
    fn go(i: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for t in -left..=left {
            cur[i] = t;
            go(i + 1, left - t.abs(), cur, out);
        }
        cur[i] = 0;
    }
    go(0, budget, &mut cur, &mut out);
    let mut vs: Vec<TwistVector> = out
        .into_iter()
        .map(TwistVector)
        .filter(|v| v.axis_total(pt, Axis::X) >= 1 && v.axis_total(pt, Axis::Y) >= 1)
        .collect();
    vs.sort_by(|a, b| a.total().cmp(&b.total()).then_with(|| a.cmp(b)));
    vs
}

/// Greedy Reidemeister 1 and 2 reduction. Never increases the crossing count
/// and keeps the knot type.
pub fn simplify(d: &PlanarDiagramCode) -> PlanarDiagramCode {
    let mut ports = Ports::from_pd(d);
    loop {
        let c = ports.crossings();
        let curl = (0..4 * c).find(|&p| {
            let q = ports.link[p];
            q / 4 == p / 4 && (q % 4 == (p % 4 + 1) % 4)
        });
        let gone = match curl {
            Some(p) => vec![p / 4],
            None => match find_r2(&ports) {
                Some((a, b)) => vec![a, b],
                None => break,
            },
        };
        ports = ports.smooth_through(&gone).expect("removing crossings keeps the wiring valid");
    }
    ports.to_pd().expect("moves keep one component")
}

/// Two crossings bounding a bigon with one strand over at both.
fn find_r2(ports: &Ports) -> Option<(usize, usize)> {
    let c = ports.crossings();
    for p in 0..4 * c {
        let q = ports.link[p];
        if q / 4 == p / 4 {
            continue;
        }
        let p1 = 4 * (p / 4) + (p % 4 + 1) % 4;
        let q1 = 4 * (q / 4) + (q % 4 + 3) % 4;
        if ports.link[p1] == q1 && ports.is_over(p) == ports.is_over(q) {
            return Some((p / 4, q / 4));
        }
    }
    None
}
