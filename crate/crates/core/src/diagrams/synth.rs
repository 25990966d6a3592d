//! Four-quadrant assembly of a doubly symmetric diagram.
//!
//! Quadrant II carries the template. Quadrant I is its reflection in the
//! y-axis with the over/under information kept (a mirror of space through
//! the plane x = 0). Quadrant III is the half-turn about the x-axis, which
//! reflects the picture in the x-axis and switches every crossing. Quadrant
//! IV is the point reflection through the origin with crossings switched,
//! the composite of the other two. The point reflection is an exact symmetry
//! of every synthesized diagram, so the knots are strongly positive
//! amphicheiral. Axis crossings come from twist boxes and are exempt from the
//! two axis symmetries.

use super::pd::{Node, Wiring};
use super::{KnotDiagramTemplate, PlanarDiagramCode, TwistVector};
use crate::curves::{dart_in, dart_out};
use crate::error::{Error, Result};
use crate::templates::{Axis, Region};

const COPIES: usize = 4;
const REVERSED: [bool; COPIES] = [false, true, true, false];
const SWITCHED: [bool; COPIES] = [false, false, true, true];
const II: usize = 0;
const I: usize = 1;
const III: usize = 2;
const IV: usize = 3;

/// Ports of a box crossing, counterclockwise.
const NE: usize = 0;
const NW: usize = 1;
const SW: usize = 2;
const SE: usize = 3;

/// Builds the diagram. Twist `t > 0` puts the NW-SE strand over in the boxes
/// of quadrant II's half-axes; the opposite half-axis box is its point
/// image, so it carries `-t` in the same convention.
pub fn synthesize(kdt: &KnotDiagramTemplate, tv: &TwistVector) -> Result<PlanarDiagramCode> {
    let pt = &kdt.parterre;
    if tv.0.len() != pt.markers.len() {
        return Err(Error::MalformedTemplate(format!(
            "{} markers but {} twist numbers",
            pt.markers.len(),
            tv.0.len()
        )));
    }
    if kdt.over_under.len() != pt.n() {
        return Err(Error::MalformedTemplate("over/under length".into()));
    }
    pt.validate()?;
    let n = pt.n();
    let r = pt.markers.len();
    let map = pt.curve.map();
    let faces = pt.curve.designated_faces();
    let ids = map.faces().0;

    let mut w = Wiring::default();
    // Template endpoints: P on the x-axis, Q on the y-axis, then the two
    // strands of each marker's finger in curve order.
    let per_copy = 2 + 2 * r;
    let ends: Vec<usize> = (0..COPIES * per_copy).map(|_| w.end()).collect();
    let end = |copy: usize, e: usize| Node::End(ends[copy * per_copy + e]);
    let (p_end, q_end) = (0, 1);
    let finger = |m: usize| (2 + 2 * m, 3 + 2 * m);

    // Whether each region's boundary walk runs along arc `k` in curve direction.
    let forward = |region: Region, k: usize| -> bool {
        let (outer, inner) = faces.expect("markers need crossings");
        match region {
            Region::Outer => ids[dart_in(k)] == outer,
            Region::Inner => ids[dart_out(k - 1)] == inner,
        }
    };

    for copy in 0..COPIES {
        let mut port_of = vec![0usize; 4 * n];
        for (l, (i, _)) in pt.curve.code().word().positions().into_iter().enumerate() {
            let c = w.crossing(kdt.over_under[l] != SWITCHED[copy]);
            let first = dart_in(i);
            let mut cyc = [first, map.sigma(first), map.sigma(map.sigma(first)), map.sigma_inv(first)];
            if REVERSED[copy] {
                cyc.swap(1, 3);
            }
            for (k, &d) in cyc.iter().enumerate() {
                port_of[d] = 4 * c + k;
            }
        }
        for k in 0..=2 * n {
            let start = if k == 0 { end(copy, p_end) } else { Node::Port(port_of[dart_out(k - 1)]) };
            let stop = if k == 2 * n { end(copy, q_end) } else { Node::Port(port_of[dart_in(k)]) };
            let mut on_arc: Vec<usize> = (0..r).filter(|&m| pt.markers[m].arc == k).collect();
            on_arc.sort_by_key(|&m| pt.markers[m].slot);
            if let Some(&m) = on_arc.first() {
                if !forward(pt.markers[m].region, k) {
                    on_arc.reverse();
                }
            }
            let mut from = start;
            for m in on_arc {
                let (a, b) = finger(m);
                w.wire(from, end(copy, a));
                from = end(copy, b);
            }
            w.wire(from, stop);
        }
    }

    w.wire(end(II, p_end), end(III, p_end));
    w.wire(end(II, q_end), end(I, q_end));
    w.wire(end(I, p_end), end(IV, p_end));
    w.wire(end(III, q_end), end(IV, q_end));

    for (m, marker) in pt.markers.iter().enumerate() {
        let (a, b) = finger(m);
        let fwd = forward(marker.region, marker.arc);
        let (p_side, q_side) = if fwd { (a, b) } else { (b, a) };
        let t = tv.0[m];
        match marker.axis {
            Axis::Y => {
                let (upper, lower) = match marker.region {
                    Region::Outer => (p_side, q_side),
                    Region::Inner => (q_side, p_side),
                };
                vertical_box(&mut w, t, [end(II, upper), end(I, upper), end(II, lower), end(I, lower)]);
                vertical_box(&mut w, -t, [end(III, lower), end(IV, lower), end(III, upper), end(IV, upper)]);
            }
            Axis::X => {
                let (left, right) = match marker.region {
                    Region::Outer => (q_side, p_side),
                    Region::Inner => (p_side, q_side),
                };
                horizontal_box(&mut w, t, [end(II, left), end(II, right), end(III, left), end(III, right)]);
                horizontal_box(&mut w, -t, [end(I, right), end(I, left), end(IV, right), end(IV, left)]);
            }
        }
    }

    let pd = w.resolve()?.to_pd()?;
    debug_assert_eq!(pd.len() as u64, 4 * n as u64 + 2 * tv.total());
    Ok(pd)
}

/// A column of `|t|` crossings on a vertical axis; corners are
/// `[upper left, upper right, lower left, lower right]`.
fn vertical_box(w: &mut Wiring, t: i64, [ul, ur, ll, lr]: [Node; 4]) {
    if t == 0 {
        w.wire(ul, ll);
        w.wire(ur, lr);
        return;
    }
    let cs: Vec<usize> = (0..t.unsigned_abs()).map(|_| w.crossing(t < 0)).collect();
    let port = |c: usize, k: usize| Node::Port(4 * c + k);
    w.wire(ul, port(cs[0], NW));
    w.wire(ur, port(cs[0], NE));
    for pair in cs.windows(2) {
        w.wire(port(pair[0], SW), port(pair[1], NW));
        w.wire(port(pair[0], SE), port(pair[1], NE));
    }
    let last = *cs.last().unwrap();
    w.wire(port(last, SW), ll);
    w.wire(port(last, SE), lr);
}

/// A row of `|t|` crossings on a horizontal axis.
fn horizontal_box(w: &mut Wiring, t: i64, [ul, ur, ll, lr]: [Node; 4]) {
    if t == 0 {
        w.wire(ul, ur);
        w.wire(ll, lr);
        return;
    }
    let cs: Vec<usize> = (0..t.unsigned_abs()).map(|_| w.crossing(t < 0)).collect();
    let port = |c: usize, k: usize| Node::Port(4 * c + k);
    w.wire(ul, port(cs[0], NW));
    w.wire(ll, port(cs[0], SW));
    for pair in cs.windows(2) {
        w.wire(port(pair[0], NE), port(pair[1], NW));
        w.wire(port(pair[0], SE), port(pair[1], SW));
    }
    let last = *cs.last().unwrap();
    w.wire(port(last, NE), ur);
    w.wire(port(last, SE), lr);
}
