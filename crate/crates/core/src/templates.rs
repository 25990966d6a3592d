//! Parterre templates: twist markers with separators, the template moves and
//! the filters that discard templates which cannot give minimal prime diagrams.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curves::{dart_out, filtered_curves, ArcClassification, ArcTag, LongCurve, Walks};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Region {
    Outer,
    Inner,
}

impl Region {
    pub fn other(self) -> Region {
        match self {
            Region::Outer => Region::Inner,
            Region::Inner => Region::Outer,
        }
    }

    fn admits(self, tag: ArcTag) -> bool {
        match self {
            Region::Outer => tag.is_outer() || tag == ArcTag::Central,
            Region::Inner => tag.is_inner() || tag == ArcTag::Central,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TwistMarker {
    pub region: Region,
    pub arc: usize,
    pub axis: Axis,
    /// Position along the arc; on a separator arc the x-marker comes first.
    pub slot: u8,
    /// Set when another marker has been added into this one.
    pub summed: bool,
}

impl TwistMarker {
    fn new(region: Region, arc: usize, axis: Axis) -> Self {
        let slot = if axis == Axis::X { 0 } else { 1 };
        TwistMarker { region, arc, axis, slot, summed: false }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SeparatorPlacement {
    pub outer: Option<usize>,
    pub inner: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParterreTemplate {
    pub curve: LongCurve,
    pub markers: Vec<TwistMarker>,
    pub separators: SeparatorPlacement,
}

/// Arc tags and boundary walks of a template's curve.
#[derive(Clone, Debug)]
pub struct Geometry {
    pub tags: ArcClassification,
    pub walks: Walks,
}

impl Geometry {
    pub fn of(curve: &LongCurve) -> Self {
        Geometry { tags: curve.classify_arcs(), walks: curve.walks() }
    }

    pub fn walk(&self, region: Region) -> &[usize] {
        match region {
            Region::Outer => &self.walks.outer,
            Region::Inner => &self.walks.inner,
        }
    }

    /// Position of `arc` in the boundary walk of `region`.
    pub fn position(&self, region: Region, arc: usize) -> Option<usize> {
        self.walk(region).iter().position(|&a| a == arc)
    }

    /// Eligible arcs of a region in walk order.
    pub fn eligible(&self, region: Region) -> Vec<usize> {
        self.walk(region)
            .iter()
            .copied()
            .filter(|&a| self.tags.tag(a).is_eligible() && region.admits(self.tags.tag(a)))
            .collect()
    }
}

impl ParterreTemplate {
    pub fn n(&self) -> usize {
        self.curve.n()
    }

    pub fn geometry(&self) -> Geometry {
        Geometry::of(&self.curve)
    }

    /// Checks the structural invariants of a template.
    pub fn validate(&self) -> Result<()> {
        let g = self.geometry();
        for m in &self.markers {
            let tag = g.tags.tags.get(m.arc).copied().ok_or_else(|| {
                Error::MalformedTemplate(format!("marker on missing arc {}", m.arc))
            })?;
            if !tag.is_eligible() || !m.region.admits(tag) {
                return Err(Error::MalformedTemplate(format!("marker on arc {} tagged {tag}", m.arc)));
            }
        }
        for region in [Region::Outer, Region::Inner] {
            let mut seen_y = false;
            for &a in g.walk(region) {
                let here: Vec<&TwistMarker> =
                    self.markers.iter().filter(|m| m.region == region && m.arc == a).collect();
                if here.iter().any(|m| m.axis == Axis::X) && seen_y {
                    return Err(Error::MalformedTemplate("x-marker after a y-marker".into()));
                }
                if here.iter().any(|m| m.axis == Axis::Y) {
                    seen_y = true;
                }
                if here.len() > 2 || (here.len() == 2 && here[0].axis == here[1].axis) {
                    return Err(Error::MalformedTemplate(format!("too many markers on arc {a}")));
                }
            }
        }
        Ok(())
    }

    fn markers_on(&self, region: Region, arc: usize) -> impl Iterator<Item = &TwistMarker> {
        self.markers.iter().filter(move |m| m.region == region && m.arc == arc)
    }

    fn has(&self, region: Region, arc: usize, axis: Axis) -> bool {
        self.markers_on(region, arc).any(|m| m.axis == axis)
    }

    pub fn count_axis(&self, axis: Axis) -> usize {
        self.markers.iter().filter(|m| m.axis == axis).count()
    }

    fn sorted(mut self) -> Self {
        self.markers.sort();
        self
    }

    /// Stable key: curve code plus sorted markers.
    pub fn key(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for ParterreTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} |", self.curve.code())?;
        let mut ms = self.markers.clone();
        ms.sort();
        for m in ms {
            let r = if m.region == Region::Outer { 'o' } else { 'i' };
            let a = if m.axis == Axis::X { 'x' } else { 'y' };
            write!(f, " {r}{}{a}{}", m.arc, if m.summed { "+" } else { "" })?;
        }
        Ok(())
    }
}

/// Every eligible arc gets one marker, the separator arc one of each axis.
/// Separators run over the eligible arcs of each region in boundary order.
pub fn enumerate_parterre_raw(curve: &LongCurve) -> Vec<ParterreTemplate> {
    let g = Geometry::of(curve);
    let options = |region: Region| -> Vec<Option<usize>> {
        let e = g.eligible(region);
        if e.is_empty() {
            vec![None]
        } else {
            e.into_iter().map(Some).collect()
        }
    };
    let place = |region: Region, sep: Option<usize>, out: &mut Vec<TwistMarker>| {
        let Some(s) = sep else { return };
        let mut before = true;
        for a in g.eligible(region) {
            if a == s {
                out.push(TwistMarker::new(region, a, Axis::X));
                out.push(TwistMarker::new(region, a, Axis::Y));
                before = false;
            } else {
                out.push(TwistMarker::new(region, a, if before { Axis::X } else { Axis::Y }));
            }
        }
    };
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for so in options(Region::Outer) {
        for si in options(Region::Inner) {
            let mut markers = Vec::new();
            place(Region::Outer, so, &mut markers);
            place(Region::Inner, si, &mut markers);
            let t = ParterreTemplate {
                curve: curve.clone(),
                markers,
                separators: SeparatorPlacement { outer: so, inner: si },
            }
            .sorted();
            if seen.insert(t.markers.clone()) {
                out.push(t);
            }
        }
    }
    out
}

/// Raw templates over all filtered curves with `n` crossings.
pub fn raw_templates(n: usize) -> Vec<ParterreTemplate> {
    filtered_curves(n).iter().flat_map(enumerate_parterre_raw).collect()
}

/// Loop arc of a curl: an arc whose two ends are the same crossing and which
/// bounds a monogon.
fn curl_arcs(curve: &LongCurve) -> Vec<usize> {
    if curve.n() == 0 {
        return vec![];
    }
    let map = curve.map();
    (1..2 * curve.n())
        .filter(|&a| {
            let d = dart_out(a - 1);
            map.phi(d) == d || map.phi(map.alpha(d)) == map.alpha(d)
        })
        .collect()
}

/// The curl with a y-marker and no x-marker, if any, with the curve after the
/// twist box flip removes it.
pub fn move_m1(t: &ParterreTemplate) -> Option<ParterreTemplate> {
    let arc = curl_arcs(&t.curve).into_iter().find(|&a| {
        let ms: Vec<&TwistMarker> = t.markers.iter().filter(|m| m.arc == a).collect();
        ms.iter().any(|m| m.axis == Axis::Y) && ms.iter().all(|m| m.axis != Axis::X)
    })?;
    let code = t.curve.code();
    let label = code.word().labels()[arc - 1];
    let raw: Vec<u8> = code.word().labels().iter().copied().filter(|&l| l != label).collect();
    let word = crate::gauss::GaussWord::from_labels(&raw).ok()?;
    let mut signs = Vec::new();
    let mut seen = BTreeSet::new();
    for &l in code.word().labels() {
        if l != label && seen.insert(l) {
            signs.push(code.signs()[l as usize]);
        }
    }
    let reduced = crate::curves::SignedGaussCode::new(word, signs).ok()?;
    let curve = LongCurve::from_code(&reduced, true)?;
    let remap = |a: usize| if a < arc { a.min(arc - 1) } else if a <= arc + 1 { arc - 1 } else { a - 2 };
    let g = Geometry::of(&curve);
    let markers = t
        .markers
        .iter()
        .filter(|m| m.arc != arc)
        .map(|m| TwistMarker { arc: remap(m.arc), ..*m })
        .filter(|m| g.tags.tag(m.arc).is_eligible())
        .collect();
    Some(ParterreTemplate { curve, markers, separators: SeparatorPlacement::default() }.sorted())
}

/// Arcs of the other strand at the last crossing, in the corners that the
/// final arc shares with the outer and with the inner region.
pub fn last_crossing_neighbours(curve: &LongCurve) -> Option<(usize, usize)> {
    let n = curve.n();
    if n == 0 {
        return None;
    }
    let map = curve.map();
    let out = dart_out(2 * n - 1);
    let arc = |d: usize| if d % 2 == 1 { d / 2 + 1 } else { d / 2 };
    Some((arc(map.sigma(out)), arc(map.sigma_inv(out))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MoveError {
    NotApplicable,
}

/// Slides the final arc across the twist box of a y-marker sitting in the
/// corner next to it; the marker lands on the other strand across the corner.
pub fn move_m2(t: &ParterreTemplate, marker: usize) -> std::result::Result<ParterreTemplate, MoveError> {
    let m = *t.markers.get(marker).ok_or(MoveError::NotApplicable)?;
    let (ao, ai) = last_crossing_neighbours(&t.curve).ok_or(MoveError::NotApplicable)?;
    let (from, to) = match m.region {
        Region::Outer => (ao, ai),
        Region::Inner => (ai, ao),
    };
    if m.axis != Axis::Y || m.arc != from {
        return Err(MoveError::NotApplicable);
    }
    let mut next = t.clone();
    next.markers[marker] = TwistMarker { region: m.region.other(), arc: to, ..m };
    Ok(next.sorted())
}

/// Deletes a marker sitting on a central arc.
pub fn move_m3(t: &ParterreTemplate, marker: usize) -> std::result::Result<ParterreTemplate, MoveError> {
    let m = t.markers.get(marker).ok_or(MoveError::NotApplicable)?;
    if t.curve.classify_arcs().tag(m.arc) != ArcTag::Central {
        return Err(MoveError::NotApplicable);
    }
    let mut next = t.clone();
    next.markers.remove(marker);
    Ok(next)
}

/// Where a y-marker goes under M2, if it can move: `Some(None)` when it then
/// sits on a central arc, `Some(Some(i))` when it merges into marker `i`.
fn m2_target(t: &ParterreTemplate, g: &Geometry, marker: usize) -> Option<Option<usize>> {
    move_m2(t, marker).ok()?;
    let m = t.markers[marker];
    let (ao, ai) = last_crossing_neighbours(&t.curve)?;
    let to = if m.region == Region::Outer { ai } else { ao };
    if g.tags.tag(to) == ArcTag::Central {
        return Some(None);
    }
    t.markers
        .iter()
        .position(|x| x.region == m.region.other() && x.arc == to && x.axis == Axis::Y)
        .map(Some)
}

/// Two same-axis markers with a flippable tangle between them: the curve runs
/// from one marked arc to the other without meeting the rest of the diagram,
/// and the tangle reaches the axis only between the two markers.
pub fn move_m4(t: &ParterreTemplate, a: usize, b: usize) -> std::result::Result<ParterreTemplate, MoveError> {
    let g = t.geometry();
    if !m4_pattern(t, &g, a, b) {
        return Err(MoveError::NotApplicable);
    }
    let mut next = t.clone();
    next.markers[a].summed = true;
    next.markers.remove(b);
    Ok(next.sorted())
}

fn m4_pattern(t: &ParterreTemplate, g: &Geometry, a: usize, b: usize) -> bool {
    let (ma, mb) = match (t.markers.get(a), t.markers.get(b)) {
        (Some(x), Some(y)) => (*x, *y),
        _ => return false,
    };
    if a == b || ma.axis != mb.axis || ma.region != mb.region || ma.arc == mb.arc {
        return false;
    }
    let region = ma.region;
    let (pa, pb) = match (g.position(region, ma.arc), g.position(region, mb.arc)) {
        (Some(x), Some(y)) => (x.min(y), x.max(y)),
        _ => return false,
    };
    let walk = g.walk(region);
    let (lo, hi) = (ma.arc.min(mb.arc), ma.arc.max(mb.arc));
    if walk[pa + 1..pb].iter().any(|&x| x <= lo || x >= hi) {
        return false;
    }
    // the curve between the two arcs crosses only itself
    let labels = t.curve.code().word().labels();
    let segment = &labels[lo..hi];
    if segment.is_empty() {
        return false;
    }
    let mut count = vec![0u8; t.n()];
    for &l in segment {
        count[l as usize] += 1;
    }
    if count.contains(&1) {
        return false;
    }
    // the tangle may only reach the axis segment between the two markers
    t.markers
        .iter()
        .filter(|m| m.arc > lo && m.arc < hi)
        .all(|m| m.axis == ma.axis && m.region == region)
}

fn marker_set(t: &ParterreTemplate) -> BTreeSet<(Region, usize, Axis)> {
    t.markers.iter().map(|m| (m.region, m.arc, m.axis)).collect()
}

/// Templates that an M4 flip turns into a sub-configuration of another
/// template on the same curve. Reductions form a directed graph; among
/// templates that reduce into each other the smallest key is kept, unless
/// the group also reduces into something outside it. Only `alive` templates
/// can be removed; the others are targets only.
fn f3_redundant(templates: &[ParterreTemplate], alive: &[bool]) -> Vec<bool> {
    let sets: Vec<BTreeSet<(Region, usize, Axis)>> = templates.iter().map(marker_set).collect();
    let edges: Vec<Vec<usize>> = templates
        .par_iter()
        .enumerate()
        .map(|(i, t)| {
            if !alive[i] {
                return vec![];
            }
            let k = t.markers.len();
            let reductions: Vec<BTreeSet<(Region, usize, Axis)>> = (0..k)
                .cartesian_product(0..k)
                .filter_map(|(a, b)| move_m4(t, a, b).ok())
                .map(|r| marker_set(&r))
                .collect();
            (0..templates.len())
                .filter(|&j| {
                    j != i
                        && templates[j].curve == t.curve
                        && reductions.iter().any(|r| r.is_subset(&sets[j]))
                })
                .collect()
        })
        .collect();
    let reach = |from: usize| -> BTreeSet<usize> {
        let mut seen = BTreeSet::new();
        let mut stack = edges[from].clone();
        while let Some(v) = stack.pop() {
            if seen.insert(v) {
                stack.extend(edges[v].iter().copied());
            }
        }
        seen
    };
    let reachable: Vec<BTreeSet<usize>> = (0..templates.len()).map(reach).collect();
    (0..templates.len())
        .map(|i| {
            reachable[i].iter().any(|&j| {
                let mutual = reachable[j].contains(&i);
                !mutual || templates[j].key() < templates[i].key()
            })
        })
        .collect()
}

/// A half-circle from an axis crossing the curve once at a central arc and
/// meeting no marker splits off a connected summand.
pub fn filter_composite(t: &ParterreTemplate) -> bool {
    let g = t.geometry();
    let n = t.n();
    if n == 0 {
        return false;
    }
    (1..2 * n).filter(|&k| g.tags.tag(k) == ArcTag::Central).any(|k| {
        let clear = |axis: Axis, before: bool| {
            [Region::Outer, Region::Inner].iter().all(|&r| {
                let w = g.walk(r);
                let p = g.position(r, k).expect("central arcs lie on both walks");
                let part = if before { &w[..p] } else { &w[p + 1..] };
                part.iter().all(|&a| !t.has(r, a, axis))
            })
        };
        clear(Axis::Y, true) || clear(Axis::X, false)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Filter {
    F1,
    F2,
    F3,
    F4,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Kept,
    Removed(Filter),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterReport {
    pub entries: Vec<(String, Verdict)>,
}

impl FilterReport {
    pub fn removed_by(&self, f: Filter) -> usize {
        self.entries.iter().filter(|(_, v)| *v == Verdict::Removed(f)).count()
    }

    pub fn kept(&self) -> usize {
        self.entries.iter().filter(|(_, v)| *v == Verdict::Kept).count()
    }
}

fn f1(t: &ParterreTemplate) -> bool {
    move_m1(t).is_some()
}

/// The only y-marker can be slid onto a central arc and deleted.
fn f2(t: &ParterreTemplate, g: &Geometry) -> bool {
    let ys: Vec<usize> = (0..t.markers.len()).filter(|&i| t.markers[i].axis == Axis::Y).collect();
    ys.len() == 1 && m2_target(t, g, ys[0]) == Some(None)
}

fn verdict(t: &ParterreTemplate) -> Verdict {
    let g = t.geometry();
    if f1(t) {
        Verdict::Removed(Filter::F1)
    } else if f2(t, &g) {
        Verdict::Removed(Filter::F2)
    } else if filter_composite(t) {
        Verdict::Removed(Filter::F4)
    } else {
        Verdict::Kept
    }
}

/// Removes y-markers that M2 carries onto a central arc or into another
/// y-marker.
pub fn simplify_template(t: &ParterreTemplate) -> ParterreTemplate {
    let mut cur = t.clone();
    loop {
        let g = cur.geometry();
        let hit = (0..cur.markers.len()).find_map(|i| match cur.markers[i].axis {
            Axis::Y => m2_target(&cur, &g, i).map(|to| (i, to)),
            Axis::X => None,
        });
        match hit {
            Some((i, to)) => {
                if let Some(j) = to {
                    cur.markers[j].summed = true;
                }
                cur.markers.remove(i);
                cur = cur.sorted();
            }
            None => return cur,
        }
    }
}

/// Filters in the order F1, F2, F4, F3; valid templates are returned simplified.
pub fn apply_filters(templates: &[ParterreTemplate]) -> (FilterReport, Vec<ParterreTemplate>) {
    let mut verdicts: Vec<Verdict> = templates.par_iter().map(verdict).collect();
    let alive: Vec<bool> = verdicts.iter().map(|v| *v == Verdict::Kept).collect();
    for (v, r) in verdicts.iter_mut().zip(f3_redundant(templates, &alive)) {
        if r {
            *v = Verdict::Removed(Filter::F3);
        }
    }
    let mut report = FilterReport::default();
    let mut valid = Vec::new();
    for (t, v) in templates.iter().zip(verdicts) {
        if v == Verdict::Kept {
            valid.push(simplify_template(t));
        }
        report.entries.push((t.key(), v));
    }
    (report, valid)
}

/// Valid templates for `n` crossings.
pub fn valid_templates(n: usize) -> Vec<ParterreTemplate> {
    apply_filters(&raw_templates(n)).1
}

/// Adds adjacent twist numbers of the same sign and drops zeros.
pub fn normalize_twists(values: &[i64]) -> Vec<i64> {
    let mut out: Vec<i64> = Vec::with_capacity(values.len());
    for &v in values.iter().filter(|&&v| v != 0) {
        match out.last_mut() {
            Some(last) if last.signum() == v.signum() => *last += v,
            _ => out.push(v),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twist_normalization() {
        assert_eq!(normalize_twists(&[2, 3]), vec![5]);
        assert_eq!(normalize_twists(&[1, -1]), vec![1, -1]);
        assert_eq!(normalize_twists(&[0]), Vec::<i64>::new());
        assert_eq!(normalize_twists(&[1, 0, 2, -1, -3]), vec![3, -4]);
    }

    #[test]
    fn raw_counts_for_two_crossings() {
        let per_curve: Vec<usize> = filtered_curves(2).iter().map(|c| enumerate_parterre_raw(c).len()).collect();
        let mut sorted = per_curve.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 2, 3]);
    }

    #[test]
    fn two_crossing_pipeline() {
        let raw = raw_templates(2);
        assert_eq!(raw.len(), 6);
        let (_, valid) = apply_filters(&raw);
        assert_eq!(valid.len(), 2);
    }

    #[test]
    fn three_crossing_pipeline() {
        let raw = raw_templates(3);
        assert_eq!(raw.len(), 35);
        let (report, valid) = apply_filters(&raw);
        let counts = [Filter::F1, Filter::F2, Filter::F4, Filter::F3].map(|f| report.removed_by(f));
        assert_eq!(counts, [17, 5, 3, 3]);
        assert_eq!(valid.len(), 7);
    }

    #[test]
    fn raw_templates_are_well_formed() {
        for n in 0..=3 {
            for t in raw_templates(n) {
                t.validate().unwrap();
            }
        }
    }
}
