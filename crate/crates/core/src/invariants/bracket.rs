use std::collections::HashMap;

use super::LaurentPolynomial;
use crate::diagrams::PlanarDiagramCode;
use crate::error::{Error, Result};

/// Dense polynomial in `A` used inside the state sum.
#[derive(Clone, Debug, Default)]
struct Dense {
    lo: i64,
    c: Vec<i128>,
}

impl Dense {
    fn one() -> Self {
        Dense { lo: 0, c: vec![1] }
    }

    fn add_shifted(&mut self, other: &Dense, shift: i64, scale: i128) {
        if other.c.is_empty() {
            return;
        }
        let olo = other.lo + shift;
        if self.c.is_empty() {
            self.lo = olo;
            self.c = other.c.iter().map(|x| x * scale).collect();
            return;
        }
        let lo = self.lo.min(olo);
        let hi = (self.lo + self.c.len() as i64).max(olo + other.c.len() as i64);
        let mut c = vec![0i128; (hi - lo) as usize];
        for (i, x) in self.c.iter().enumerate() {
            c[(self.lo - lo) as usize + i] += x;
        }
        for (i, x) in other.c.iter().enumerate() {
            c[(olo - lo) as usize + i] += x * scale;
        }
        self.lo = lo;
        self.c = c;
    }

    /// Multiplies by the loop value `-A^2 - A^-2`.
    fn times_loop(&self) -> Dense {
        let mut out = Dense::default();
        out.add_shifted(self, 2, -1);
        out.add_shifted(self, -2, -1);
        out
    }

    fn into_poly(self) -> LaurentPolynomial {
        LaurentPolynomial::new(self.lo, self.c)
    }
}

/// Open path ends of a partially smoothed diagram, as a partner table
/// keyed by edge label.
type Frontier = Vec<(u32, u32)>;

fn join(f: &mut HashMap<u32, u32>, p: u32, q: u32) -> bool {
    if p == q {
        return true;
    }
    let ep = f.remove(&p).unwrap_or(p);
    let eq = f.remove(&q).unwrap_or(q);
    if ep == q && eq == p {
        return true;
    }
    f.insert(ep, eq);
    f.insert(eq, ep);
    false
}

/// Processing order keeping few edges open: always take the crossing that
/// closes the most open edges.
fn order(pd: &PlanarDiagramCode) -> Vec<usize> {
    let c = pd.len();
    let mut done = vec![false; c];
    let mut open: HashMap<u32, ()> = HashMap::new();
    let mut out = Vec::with_capacity(c);
    for _ in 0..c {
        let best = (0..c)
            .filter(|&x| !done[x])
            .max_by_key(|&x| {
                let shared = pd.crossings[x].iter().filter(|e| open.contains_key(e)).count() as i64;
                (shared, -(x as i64))
            })
            .expect("crossings left");
        done[best] = true;
        for e in pd.crossings[best] {
            if open.remove(&e).is_none() {
                open.insert(e, ());
            }
        }
        out.push(best);
    }
    out
}

/// Kauffman bracket with loop value `-A^2 - A^-2` and the crossingless
/// unknot normalized to 1.
pub fn kauffman_bracket(pd: &PlanarDiagramCode) -> Result<LaurentPolynomial> {
    if pd.is_empty() {
        return Ok(LaurentPolynomial::one());
    }
    pd.validate()?;
    let mut states: HashMap<Frontier, Dense> = HashMap::new();
    states.insert(vec![], Dense::one());
    for x in order(pd) {
        let [a, b, c, d] = pd.crossings[x];
        let mut next: HashMap<Frontier, Dense> = HashMap::new();
        for (frontier, poly) in &states {
            // A-smoothing joins (a, b) and (c, d); B joins (a, d) and (b, c).
            for (pairs, power) in [([(a, b), (c, d)], 1i64), ([(a, d), (b, c)], -1)] {
                let mut f: HashMap<u32, u32> = frontier.iter().flat_map(|&(u, v)| [(u, v), (v, u)]).collect();
                let mut loops = 0;
                for (p, q) in pairs {
                    if join(&mut f, p, q) {
                        loops += 1;
                    }
                }
                let mut key: Frontier = f.into_iter().filter(|(u, v)| u < v).collect();
                key.sort_unstable();
                let mut term = Dense::default();
                term.add_shifted(poly, power, 1);
                for _ in 0..loops {
                    term = term.times_loop();
                }
                next.entry(key).or_default().add_shifted(&term, 0, 1);
            }
        }
        states = next;
    }
    let total = states.remove(&vec![]).ok_or_else(|| Error::InvalidPd("open ends after state sum".into()))?;
    // Every final state has at least one loop; drop one loop factor.
    let p = total.into_poly();
    let d = LaurentPolynomial::new(-2, [-1i64, 0, 0, 0, -1]);
    p.div_exact(&d).ok_or_else(|| Error::InvalidPd("bracket not divisible by the loop value".into()))
}

/// Jones polynomial in `t`: `(-A^3)^(-w) <D>` with `A = t^(-1/4)`.
pub fn jones(pd: &PlanarDiagramCode) -> Result<LaurentPolynomial> {
    let bracket = kauffman_bracket(pd)?;
    let w = pd.writhe();
    let sign = if w.rem_euclid(2) == 0 { 1 } else { -1 };
    let f = bracket.shift(-3 * w);
    if f.coeffs().iter().enumerate().any(|(i, c)| c != &0.into() && (f.min_degree() + i as i64).rem_euclid(4) != 0) {
        return Err(Error::InvalidPd("bracket exponents not divisible by 4".into()));
    }
    let mut coeffs = Vec::new();
    let top = f.max_degree();
    let mut e = top;
    while e >= f.min_degree() {
        coeffs.push(f.coeff(e) * sign);
        e -= 4;
    }
    Ok(LaurentPolynomial::new(-top / 4, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot_diagrams() {
        assert_eq!(kauffman_bracket(&PlanarDiagramCode::default()).unwrap(), LaurentPolynomial::one());
        let curl: PlanarDiagramCode = "X[1,1,2,2]".parse().unwrap();
        let b = kauffman_bracket(&curl).unwrap();
        assert!(b == LaurentPolynomial::monomial(-1, 3) || b == LaurentPolynomial::monomial(-1, -3));
        assert_eq!(jones(&curl).unwrap(), LaurentPolynomial::one());
        let neg: PlanarDiagramCode = "X[1,2,2,1]".parse().unwrap();
        assert_eq!(jones(&neg).unwrap(), LaurentPolynomial::one());
    }

    #[test]
    fn trefoil_jones() {
        // KnotTheory's PD of 3_1 is the left-handed trefoil.
        let t: PlanarDiagramCode = "X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]".parse().unwrap();
        let v = jones(&t).unwrap();
        assert_eq!(v, LaurentPolynomial::new(-4, [-1i64, 1, 0, 1]));
    }
}
