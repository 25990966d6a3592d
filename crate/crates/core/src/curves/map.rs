use serde::{Deserialize, Serialize};

use super::{Sign, SignedGaussCode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MapMode {
    /// End joined back to start by a closure edge.
    Closed,
    /// Both ends left as degree-one stubs.
    Open,
}

/// Rotation system of a curve with `n` crossings.
///
/// Visit `t` (0-based along the curve) owns darts `in_t = 2t` and `out_t = 2t+1`.
/// In open mode darts `4n` and `4n+1` are the start and end stubs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinatorialMap {
    n: usize,
    mode: MapMode,
    sigma: Vec<usize>,
    alpha: Vec<usize>,
}

pub fn dart_in(t: usize) -> usize {
    2 * t
}

pub fn dart_out(t: usize) -> usize {
    2 * t + 1
}

impl CombinatorialMap {
    pub fn build(code: &SignedGaussCode, mode: MapMode) -> Self {
        let n = code.n();
        let m = 2 * n;
        let darts = if mode == MapMode::Open { 2 * m + 2 } else { 2 * m };
        let mut sigma: Vec<usize> = (0..darts).collect();
        let mut alpha: Vec<usize> = (0..darts).collect();
        for (l, (i, j)) in code.word().positions().into_iter().enumerate() {
            let cyc = match code.signs()[l] {
                Sign::Plus => [dart_in(i), dart_in(j), dart_out(i), dart_out(j)],
                Sign::Minus => [dart_in(i), dart_out(j), dart_out(i), dart_in(j)],
            };
            for k in 0..4 {
                sigma[cyc[k]] = cyc[(k + 1) % 4];
            }
        }
        for t in 0..m.saturating_sub(1) {
            alpha[dart_out(t)] = dart_in(t + 1);
            alpha[dart_in(t + 1)] = dart_out(t);
        }
        match mode {
            MapMode::Closed if n > 0 => {
                alpha[dart_out(m - 1)] = dart_in(0);
                alpha[dart_in(0)] = dart_out(m - 1);
            }
            MapMode::Closed => {}
            MapMode::Open if n > 0 => {
                let (s, e) = (2 * m, 2 * m + 1);
                alpha[s] = dart_in(0);
                alpha[dart_in(0)] = s;
                alpha[e] = dart_out(m - 1);
                alpha[dart_out(m - 1)] = e;
            }
            MapMode::Open => {
                alpha[0] = 1;
                alpha[1] = 0;
            }
        }
        CombinatorialMap { n, mode, sigma, alpha }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> MapMode {
        self.mode
    }

    pub fn dart_count(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self, d: usize) -> usize {
        self.sigma[d]
    }

    pub fn sigma_inv(&self, d: usize) -> usize {
        let mut e = d;
        while self.sigma[e] != d {
            e = self.sigma[e];
        }
        e
    }

    pub fn alpha(&self, d: usize) -> usize {
        self.alpha[d]
    }

    /// Face successor; the face lies to the right of the dart's edge.
    pub fn phi(&self, d: usize) -> usize {
        self.sigma[self.alpha[d]]
    }

    /// Where the curve runs straight through a crossing.
    pub fn straight(&self, d: usize) -> usize {
        self.sigma[self.sigma[d]]
    }

    /// Dart the curve leaves the x-axis through (`in_0`).
    pub fn root(&self) -> Option<usize> {
        (self.n > 0).then_some(0)
    }

    /// The two darts of the edge closing end to start.
    pub fn closure(&self) -> Option<(usize, usize)> {
        (self.mode == MapMode::Closed && self.n > 0).then(|| (dart_out(2 * self.n - 1), dart_in(0)))
    }

    /// Same curve in the mirrored plane.
    pub fn mirror(&self) -> Self {
        let mut sigma = self.sigma.clone();
        for d in 0..sigma.len() {
            sigma[self.sigma[d]] = d;
        }
        CombinatorialMap { sigma, ..self.clone() }
    }

    /// Face id per dart and the number of faces.
    pub fn faces(&self) -> (Vec<usize>, usize) {
        let mut id = vec![usize::MAX; self.dart_count()];
        let mut count = 0;
        for d in 0..self.dart_count() {
            if id[d] != usize::MAX {
                continue;
            }
            let mut e = d;
            while id[e] == usize::MAX {
                id[e] = count;
                e = self.phi(e);
            }
            count += 1;
        }
        (id, count)
    }

    /// Orbit of `phi` starting at `d`.
    pub fn face_orbit(&self, d: usize) -> Vec<usize> {
        let mut out = vec![d];
        let mut e = self.phi(d);
        while e != d {
            out.push(e);
            e = self.phi(e);
        }
        out
    }

    pub fn face_count(&self) -> usize {
        if self.n == 0 && self.mode == MapMode::Closed {
            return 2;
        }
        self.faces().1
    }

    pub fn vertex_count(&self) -> usize {
        match self.mode {
            MapMode::Closed => self.n,
            MapMode::Open => self.n + 2,
        }
    }

    pub fn edge_count(&self) -> usize {
        match self.mode {
            MapMode::Closed => 2 * self.n,
            MapMode::Open => 2 * self.n + 1,
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    pub fn genus(&self) -> usize {
        let chi = self.euler_characteristic();
        debug_assert!(chi <= 2 && chi % 2 == 0, "odd Euler characteristic {chi}");
        ((2 - chi) / 2) as usize
    }

    pub fn is_planar(&self) -> bool {
        self.genus() == 0
    }

    /// Relabels darts in curve order starting from `root` and returns the
    /// rotation table in the new labels. Following the curve from an outgoing
    /// dart walks it backwards.
    pub fn traversal_encoding(&self, root: usize) -> (Vec<usize>, Vec<usize>) {
        let k = self.dart_count();
        let mut label = vec![usize::MAX; k];
        let mut order = Vec::with_capacity(k);
        let mut d = root;
        while label[d] == usize::MAX {
            label[d] = order.len();
            order.push(d);
            let s = self.straight(d);
            label[s] = order.len();
            order.push(s);
            d = self.alpha[s];
        }
        debug_assert_eq!(order.len(), k);
        let table = order.iter().map(|&d| label[self.sigma[d]]).collect();
        (table, label)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::GaussWord;

    fn code(w: &str, s: &str) -> SignedGaussCode {
        SignedGaussCode::parse(&format!("{w}:{s}")).unwrap()
    }

    #[test]
    fn figure_eight() {
        let m = CombinatorialMap::build(&code("aa", "+"), MapMode::Closed);
        assert_eq!((m.vertex_count(), m.edge_count(), m.face_count()), (1, 2, 3));
        assert!(m.is_planar());
    }

    #[test]
    fn abab_never_closes() {
        let w: GaussWord = "abab".parse().unwrap();
        for signs in SignedGaussCode::all_signings(&w) {
            let m = CombinatorialMap::build(&signs, MapMode::Closed);
            assert_ne!(m.face_count(), 4);
        }
    }

    #[test]
    fn two_curls() {
        let m = CombinatorialMap::build(&code("aabb", "++"), MapMode::Closed);
        assert_eq!(m.face_count(), 4);
    }

    #[test]
    fn involutions() {
        let m = CombinatorialMap::build(&code("abcacb", "+-+"), MapMode::Open);
        for d in 0..m.dart_count() {
            assert_eq!(m.alpha(m.alpha(d)), d);
            assert_eq!(m.sigma_inv(m.sigma(d)), d);
        }
        let mm = m.mirror();
        for d in 0..m.dart_count() {
            assert_eq!(mm.sigma(m.sigma(d)), d);
        }
    }

    #[test]
    fn degenerate_maps() {
        let e = SignedGaussCode::new(GaussWord::empty(), vec![]).unwrap();
        assert_eq!(CombinatorialMap::build(&e, MapMode::Closed).face_count(), 2);
        let open = CombinatorialMap::build(&e, MapMode::Open);
        assert_eq!(open.face_count(), 1);
        assert!(open.is_planar());
    }
}
