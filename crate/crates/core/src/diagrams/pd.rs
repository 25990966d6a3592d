use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::curves::{dart_in, dart_out, MapMode, SignedGaussCode};
use crate::error::{Error, Result};
use crate::gauss::DtCode;

/// Planar diagram code of a knot.
///
/// Each crossing lists four edge labels counterclockwise, starting with the
/// under-strand edge that enters the crossing; the over strand therefore
/// occupies the second and fourth entries. Edges are numbered `1..=2c`
/// along the orientation. The empty code is the crossingless unknot.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PlanarDiagramCode {
    pub crossings: Vec<[u32; 4]>,
}

impl PlanarDiagramCode {
    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    /// Crossing signs, +1 when the over strand runs from the fourth entry to
    /// the second one counterclockwise past the incoming under strand.
    pub fn signs(&self) -> Vec<i64> {
        let edges = 2 * self.crossings.len() as u32;
        self.crossings
            .iter()
            .map(|&[a, b, _, d]| {
                let positive = if edges == 2 { b == a } else { b == d % edges + 1 };
                if positive {
                    1
                } else {
                    -1
                }
            })
            .collect()
    }

    pub fn writhe(&self) -> i64 {
        self.signs().iter().sum()
    }

    /// Checks labels and that the code is one planar closed component.
    pub fn validate(&self) -> Result<()> {
        let c = self.crossings.len();
        let mut seen = vec![0u8; 2 * c + 1];
        for x in &self.crossings {
            for &e in x {
                if e == 0 || e as usize > 2 * c {
                    return Err(Error::InvalidPd(format!("edge label {e} out of range")));
                }
                seen[e as usize] += 1;
            }
        }
        if let Some(e) = (1..=2 * c).find(|&e| seen[e] != 2) {
            return Err(Error::InvalidPd(format!("edge {e} appears {} times", seen[e])));
        }
        let ports = Ports::from_pd(self);
        let relabeled = ports.to_pd()?;
        if relabeled.len() != c {
            return Err(Error::InvalidPd("lost crossings".into()));
        }
        if !ports.is_planar() {
            return Err(Error::InvalidPd("not planar".into()));
        }
        Ok(())
    }

    pub fn is_planar(&self) -> bool {
        Ports::from_pd(self).is_planar()
    }

    /// Diagram of a DT code. The planar embedding is the first realizable
    /// side-signing, so the result is fixed only up to mirror image when the
    /// code admits several embeddings.
    pub fn from_dt(dt: &DtCode) -> Result<Self> {
        let n = dt.n();
        if n == 0 {
            return Ok(PlanarDiagramCode::default());
        }
        let word = dt.to_word();
        let code = crate::curves::realizable_signings(&word)
            .into_iter()
            .next()
            .ok_or_else(|| Error::NotRealizable(dt.to_string()))?;
        let mut over = vec![false; 2 * n];
        for (i, &e) in dt.evens.iter().enumerate() {
            let even = e.unsigned_abs() as usize - 1;
            if e < 0 {
                over[2 * i] = true;
            } else {
                over[even] = true;
            }
        }
        Ports::from_closed_code(&code, &over).to_pd()
    }
}

impl fmt::Display for PlanarDiagramCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("PD[")?;
        for (i, [a, b, c, d]) in self.crossings.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "X[{a},{b},{c},{d}]")?;
        }
        f.write_str("]")
    }
}

impl FromStr for PlanarDiagramCode {
    type Err = Error;

    /// Reads `PD[X[1,4,2,5],X[3,6,4,1],...]`; the `PD[...]` wrapper is optional.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidPd(s.to_string());
        let body = s.trim();
        let body = body.strip_prefix("PD[").and_then(|b| b.strip_suffix(']')).unwrap_or(body);
        let mut crossings = Vec::new();
        for part in body.split("X[").skip(1) {
            let inner = part.split(']').next().ok_or_else(bad)?;
            let nums: Vec<u32> = inner
                .split(',')
                .map(|x| x.trim().parse::<u32>().map_err(|_| bad()))
                .collect::<Result<_>>()?;
            let arr: [u32; 4] = nums.try_into().map_err(|_| bad())?;
            crossings.push(arr);
        }
        let pd = PlanarDiagramCode { crossings };
        pd.validate()?;
        Ok(pd)
    }
}

/// Crossing ports: port `4c + k` is the `k`-th position counterclockwise at
/// crossing `c`, and `link` pairs the two ends of every edge.
#[derive(Clone, Debug)]
pub(crate) struct Ports {
    /// The over strand runs through ports 0 and 2 (else through 1 and 3).
    pub over02: Vec<bool>,
    pub link: Vec<usize>,
    /// Closed components without any crossing.
    pub free_loops: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Node {
    Port(usize),
    End(usize),
}

/// Crossings joined by wires through intermediate ends; each end must carry
/// exactly two wires and each port exactly one.
#[derive(Default)]
pub(crate) struct Wiring {
    over02: Vec<bool>,
    ends: usize,
    wires: Vec<(Node, Node)>,
}

impl Wiring {
    pub fn crossing(&mut self, over02: bool) -> usize {
        self.over02.push(over02);
        self.over02.len() - 1
    }

    pub fn end(&mut self) -> usize {
        self.ends += 1;
        self.ends - 1
    }

    pub fn wire(&mut self, a: Node, b: Node) {
        self.wires.push((a, b));
    }

    pub fn resolve(self) -> Result<Ports> {
        let ports = 4 * self.over02.len();
        let mut at_port: Vec<Vec<usize>> = vec![vec![]; ports];
        let mut at_end: Vec<Vec<usize>> = vec![vec![]; self.ends];
        for (w, &(a, b)) in self.wires.iter().enumerate() {
            for x in [a, b] {
                match x {
                    Node::Port(p) => at_port[p].push(w),
                    Node::End(e) => at_end[e].push(w),
                }
            }
        }
        let broken = |what: String| Error::MalformedTemplate(format!("wiring: {what}"));
        if let Some(p) = (0..ports).find(|&p| at_port[p].len() != 1) {
            return Err(broken(format!("port {p} has {} wires", at_port[p].len())));
        }
        if let Some(e) = (0..self.ends).find(|&e| at_end[e].len() != 2) {
            return Err(broken(format!("end {e} has {} wires", at_end[e].len())));
        }
        let other = |w: usize, x: Node| {
            let (a, b) = self.wires[w];
            if a == x {
                b
            } else {
                a
            }
        };
        let mut used = vec![false; self.wires.len()];
        let mut link = vec![usize::MAX; ports];
        for p in 0..ports {
            if link[p] != usize::MAX {
                continue;
            }
            let mut w = at_port[p][0];
            let mut from = Node::Port(p);
            loop {
                used[w] = true;
                let next = other(w, from);
                match next {
                    Node::Port(q) => {
                        link[p] = q;
                        link[q] = p;
                        break;
                    }
                    Node::End(e) => {
                        let ws = &at_end[e];
                        w = if ws[0] == w && ws[1] != w { ws[1] } else { ws[0] };
                        from = next;
                    }
                }
            }
        }
        let mut free_loops = 0;
        for start in 0..self.wires.len() {
            if used[start] {
                continue;
            }
            free_loops += 1;
            let mut w = start;
            let mut from = self.wires[start].0;
            while !used[w] {
                used[w] = true;
                let next = other(w, from);
                let Node::End(e) = next else { unreachable!("ports are all linked") };
                let ws = &at_end[e];
                w = if ws[0] == w { ws[1] } else { ws[0] };
                from = next;
            }
        }
        Ok(Ports { over02: self.over02, link, free_loops })
    }
}

impl Ports {
    pub fn crossings(&self) -> usize {
        self.over02.len()
    }

    pub fn from_pd(pd: &PlanarDiagramCode) -> Self {
        let c = pd.len();
        let mut first = vec![usize::MAX; 2 * c + 1];
        let mut link = vec![usize::MAX; 4 * c];
        for (i, x) in pd.crossings.iter().enumerate() {
            for (k, &e) in x.iter().enumerate() {
                let p = 4 * i + k;
                let e = e as usize;
                if first[e] == usize::MAX {
                    first[e] = p;
                } else {
                    link[p] = first[e];
                    link[first[e]] = p;
                }
            }
        }
        Ports { over02: vec![false; c], link, free_loops: usize::from(c == 0) }
    }

    /// Closed curve given by a signed Gauss code, with `over[t]` telling
    /// whether passage `t` is the over strand.
    pub fn from_closed_code(code: &SignedGaussCode, over: &[bool]) -> Self {
        let n = code.n();
        let map = code.map(MapMode::Closed);
        let mut w = Wiring::default();
        let mut port_of = vec![0usize; 4 * n];
        for (i, _) in code.word().positions() {
            let c = w.crossing(over[i]);
            let mut d = dart_in(i);
            for k in 0..4 {
                port_of[d] = 4 * c + k;
                d = map.sigma(d);
            }
        }
        for t in 0..2 * n {
            let next = (t + 1) % (2 * n);
            w.wire(Node::Port(port_of[dart_out(t)]), Node::Port(port_of[dart_in(next)]));
        }
        w.resolve().expect("closed codes wire every port once")
    }

    /// Faces of the port map; a connected knot diagram is planar iff it has
    /// two more faces than crossings.
    pub fn is_planar(&self) -> bool {
        let c = self.crossings();
        if c == 0 {
            return true;
        }
        let mut seen = vec![false; 4 * c];
        let mut faces = 0;
        for s in 0..4 * c {
            if seen[s] {
                continue;
            }
            faces += 1;
            let mut d = s;
            while !seen[d] {
                seen[d] = true;
                let e = self.link[d];
                d = 4 * (e / 4) + (e % 4 + 1) % 4;
            }
        }
        faces == c + 2
    }

    pub fn is_over(&self, p: usize) -> bool {
        self.over02[p / 4] == p.is_multiple_of(2)
    }

    /// Orients the single component and numbers its edges.
    pub fn to_pd(&self) -> Result<PlanarDiagramCode> {
        let c = self.crossings();
        if c == 0 {
            return match self.free_loops {
                1 => Ok(PlanarDiagramCode::default()),
                k => Err(Error::NotAKnot(k)),
            };
        }
        let mut label = vec![0u32; 4 * c];
        let mut incoming = vec![false; 4 * c];
        let mut next = 1u32;
        let mut components = 0;
        for s in 0..4 * c {
            if label[s] != 0 {
                continue;
            }
            components += 1;
            let mut out = s;
            while label[out] == 0 {
                let inp = self.link[out];
                label[out] = next;
                label[inp] = next;
                incoming[inp] = true;
                next += 1;
                out = 4 * (inp / 4) + (inp % 4 + 2) % 4;
            }
        }
        if components + self.free_loops != 1 {
            return Err(Error::NotAKnot(components + self.free_loops));
        }
        let crossings = (0..c)
            .map(|x| {
                let u = (0..4).map(|k| 4 * x + k).find(|&p| incoming[p] && !self.is_over(p)).expect("under strand enters");
                let k0 = u % 4;
                [0, 1, 2, 3].map(|j| label[4 * x + (k0 + j) % 4])
            })
            .collect();
        Ok(PlanarDiagramCode { crossings })
    }

    /// Removes crossings by letting both strands pass straight through them.
    pub fn smooth_through(&self, gone: &[usize]) -> Result<Ports> {
        let c = self.crossings();
        let mut keep = vec![usize::MAX; c];
        let mut w = Wiring::default();
        for x in 0..c {
            if !gone.contains(&x) {
                keep[x] = w.crossing(self.over02[x]);
            }
        }
        let mut end_of = vec![usize::MAX; 4 * c];
        for &x in gone {
            for k in 0..4 {
                end_of[4 * x + k] = w.end();
            }
        }
        let node = |p: usize| {
            if keep[p / 4] != usize::MAX {
                Node::Port(4 * keep[p / 4] + p % 4)
            } else {
                Node::End(end_of[p])
            }
        };
        for p in 0..4 * c {
            if p < self.link[p] {
                w.wire(node(p), node(self.link[p]));
            }
        }
        for &x in gone {
            w.wire(node(4 * x), node(4 * x + 2));
            w.wire(node(4 * x + 1), node(4 * x + 3));
        }
        let mut out = w.resolve()?;
        out.free_loops += self.free_loops;
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> PlanarDiagramCode {
        "PD[X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]]".parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        let t = trefoil();
        assert_eq!(t.to_string(), "PD[X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]]");
        assert_eq!(t.writhe().abs(), 3);
        assert!(t.is_planar());
    }

    #[test]
    fn rejects_bad_labels() {
        assert!("X[1,2,3,4]".parse::<PlanarDiagramCode>().is_err());
    }

    #[test]
    fn relabeling_is_stable() {
        let t = trefoil();
        let again = Ports::from_pd(&t).to_pd().unwrap();
        assert_eq!(again.len(), 3);
        assert_eq!(again.writhe(), t.writhe());
    }

    #[test]
    fn dt_diagrams_are_planar_knots() {
        for dt in ["4 6 2", "4 6 8 2", "6 8 10 2 4", "4 10 -14 -12 2 -8 -6"] {
            let pd = PlanarDiagramCode::from_dt(&DtCode::parse(dt).unwrap()).unwrap();
            pd.validate().unwrap();
            assert_eq!(pd.len(), DtCode::parse(dt).unwrap().n());
        }
    }

    #[test]
    fn one_crossing_curl_sign() {
        let pos: PlanarDiagramCode = "X[1,1,2,2]".parse().unwrap();
        let neg: PlanarDiagramCode = "X[1,2,2,1]".parse().unwrap();
        assert_eq!(pos.writhe(), 1);
        assert_eq!(neg.writhe(), -1);
    }
}
