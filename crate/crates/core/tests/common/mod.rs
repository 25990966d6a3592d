//! Reference computations that share no code with the library: a plain
//! 2^c state sum for the Jones polynomial and a direct DT pairing.

#![allow(dead_code)]

use parterre::{LaurentPolynomial, PlanarDiagramCode};

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    parent[x] = r;
    r
}

/// Crossing sign from the over-strand labels alone: positive when the over
/// strand enters at `d` and leaves at `b`, including the wrap from `2c` to 1.
pub fn oracle_sign(x: [u32; 4]) -> i64 {
    let (b, d) = (x[1] as i64, x[3] as i64);
    if b - d == 1 || d - b > 1 {
        1
    } else {
        -1
    }
}

/// Jones polynomial by summing over all smoothings.
pub fn naive_jones(pd: &PlanarDiagramCode) -> LaurentPolynomial {
    let c = pd.crossings.len();
    if c == 0 {
        return LaurentPolynomial::one();
    }
    assert!(c <= 16, "state sum too large");
    let edges = 2 * c as u32;
    let loop_value = LaurentPolynomial::new(-2, [-1i64, 0, 0, 0, -1]);
    let mut powers = vec![LaurentPolynomial::one()];
    for k in 1..=c + 1 {
        powers.push(&powers[k - 1] * &loop_value);
    }
    let mut sum = LaurentPolynomial::zero();
    for state in 0u64..1 << c {
        let mut parent: Vec<usize> = (0..=edges as usize).collect();
        let mut a = 0i64;
        for (i, &[p, q, r, s]) in pd.crossings.iter().enumerate() {
            // A-smoothing joins a-b and c-d, the other one a-d and b-c.
            let (u, v, w, z) = if state >> i & 1 == 0 {
                a += 1;
                (p, q, r, s)
            } else {
                a -= 1;
                (p, s, q, r)
            };
            for (x, y) in [(u, v), (w, z)] {
                let (rx, ry) = (find(&mut parent, x as usize), find(&mut parent, y as usize));
                parent[rx] = ry;
            }
        }
        let loops = (1..=edges as usize).filter(|&e| find(&mut parent, e) == e).count();
        sum = &sum + &powers[loops - 1].shift(a);
    }
    let w: i64 = pd.crossings.iter().map(|&x| oracle_sign(x)).sum();
    let f = sum.shift(-3 * w);
    let f = if w % 2 == 0 { f } else { -&f };
    // A = t^(-1/4): exponent e of A becomes -e/4 in t.
    let lo = -f.max_degree() / 4;
    let coeffs: Vec<_> = (0..=(f.max_degree() - f.min_degree()) / 4).map(|k| f.coeff(f.max_degree() - 4 * k)).collect();
    LaurentPolynomial::new(lo, coeffs)
}

/// DT code read straight off a word: the even position partnered with each
/// odd position, both counted from 1.
pub fn oracle_dt(word: &str) -> Vec<i64> {
    let chars: Vec<char> = word.chars().collect();
    let mut out = Vec::new();
    for (i, ch) in chars.iter().enumerate().step_by(2) {
        let j = chars.iter().enumerate().position(|(k, c)| k != i && c == ch).unwrap();
        out.push(j as i64 + 1);
    }
    out
}
