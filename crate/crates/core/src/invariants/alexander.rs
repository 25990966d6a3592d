use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::LaurentPolynomial;
use crate::diagrams::PlanarDiagramCode;
use crate::error::Result;

/// Ordinary polynomial in `t`, ascending coefficients.
type Poly = Vec<BigInt>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn sub(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

/// Quotient of an exact division.
fn div(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() {
        return vec![];
    }
    let mut rem = a.clone();
    let lead = b.last().expect("nonzero divisor");
    let qlen = rem.len() + 1 - b.len();
    let mut q = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = &rem[i + b.len() - 1] / lead;
        for (j, y) in b.iter().enumerate() {
            rem[i + j] -= &c * y;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()), "Bareiss division is exact");
    trim(q)
}

/// Determinant by fraction-free elimination.
fn determinant(mut m: Vec<Vec<Poly>>) -> Poly {
    let k = m.len();
    if k == 0 {
        return vec![BigInt::from(1)];
    }
    let mut prev: Poly = vec![BigInt::from(1)];
    let mut negate = false;
    for p in 0..k {
        if m[p][p].is_empty() {
            let Some(r) = (p + 1..k).find(|&r| !m[r][p].is_empty()) else { return vec![] };
            m.swap(p, r);
            negate = !negate;
        }
        for i in p + 1..k {
            for j in p + 1..k {
                let num = sub(&mul(&m[i][j], &m[p][p]), &mul(&m[i][p], &m[p][j]));
                m[i][j] = div(&num, &prev);
            }
        }
        prev = m[p][p].clone();
    }
    let det = m[k - 1][k - 1].clone();
    if negate {
        det.into_iter().map(|c| -c).collect()
    } else {
        det
    }
}

/// Fox matrix of the Wirtinger presentation with one row and column dropped.
fn fox_minor(pd: &PlanarDiagramCode) -> Vec<Vec<Poly>> {
    let c = pd.len();
    // Over-arcs: a new arc starts at the outgoing under edge of each crossing.
    let edges = 2 * c;
    let mut starts_arc = vec![false; edges + 1];
    for x in &pd.crossings {
        starts_arc[x[2] as usize] = true;
    }
    let first = (1..=edges).find(|&e| starts_arc[e]).expect("a knot diagram has under-crossings");
    let mut arc = vec![0usize; edges + 1];
    let mut id = 0;
    for step in 0..edges {
        let e = (first - 1 + step) % edges + 1;
        if starts_arc[e] && step > 0 {
            id += 1;
        }
        arc[e] = id;
    }
    let one = || BigInt::from(1);
    let signs = pd.signs();
    let mut m: Vec<Vec<Poly>> = vec![vec![vec![]; c]; c];
    for (row, (x, s)) in pd.crossings.iter().zip(signs).enumerate() {
        let (over, under_in, under_out) = (arc[x[1] as usize], arc[x[0] as usize], arc[x[2] as usize]);
        let entries: [(usize, Poly); 3] = if s > 0 {
            [(over, vec![one(), -one()]), (under_in, vec![BigInt::zero(), one()]), (under_out, vec![-one()])]
        } else {
            [(over, vec![one(), -one()]), (under_in, vec![-one()]), (under_out, vec![BigInt::zero(), one()])]
        };
        for (col, p) in entries {
            let cur = m[row][col].clone();
            m[row][col] = sub(&cur, &p.iter().map(|v| -v).collect());
        }
    }
    m.into_iter().take(c - 1).map(|r| r.into_iter().take(c - 1).collect()).collect()
}

/// Alexander polynomial from the Fox matrix of the Wirtinger presentation,
/// normalized to be symmetric under `t -> 1/t` with value 1 at `t = 1`.
pub fn alexander(pd: &PlanarDiagramCode) -> Result<LaurentPolynomial> {
    pd.validate()?;
    if pd.is_empty() {
        return Ok(LaurentPolynomial::one());
    }
    Ok(normalize(LaurentPolynomial::new(0, determinant(fox_minor(pd)))))
}

/// Invariant factors (all greater than 1, ascending by divisibility) of the
/// first homology of the double branched cover: the Smith form of the
/// Alexander matrix at `t = -1`.
pub fn double_cover_homology(pd: &PlanarDiagramCode) -> Result<Vec<u64>> {
    pd.validate()?;
    if pd.is_empty() {
        return Ok(vec![]);
    }
    let m: Vec<Vec<BigInt>> = fox_minor(pd)
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|p| p.iter().enumerate().map(|(i, c)| if i % 2 == 0 { c.clone() } else { -c }).sum())
                .collect()
        })
        .collect();
    Ok(smith_diagonal(m)
        .into_iter()
        .filter(|d| !d.is_one())
        .map(|d| u64::try_from(d).expect("torsion fits in u64"))
        .collect())
}

/// Diagonal of the Smith normal form, absolute values, zeros last.
fn smith_diagonal(mut m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for p in 0..rows.min(cols) {
        loop {
            // Smallest nonzero entry of the remaining block becomes the pivot.
            let Some((i, j)) = (p..rows)
                .flat_map(|i| (p..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !m[i][j].is_zero())
                .min_by_key(|&(i, j)| m[i][j].abs())
            else {
                diag.extend(std::iter::repeat_n(BigInt::zero(), rows.min(cols) - p));
                return finish(diag);
            };
            m.swap(p, i);
            for r in m.iter_mut() {
                r.swap(p, j);
            }
            let pivot = m[p][p].clone();
            let mut clean = true;
            for i in p + 1..rows {
                let q = &m[i][p] / &pivot;
                if !q.is_zero() {
                    for j in p..cols {
                        let v = &q * &m[p][j];
                        m[i][j] -= v;
                    }
                }
                clean &= m[i][p].is_zero();
            }
            for j in p + 1..cols {
                let q = &m[p][j] / &pivot;
                if !q.is_zero() {
                    for i in p..rows {
                        let v = &q * &m[i][p];
                        m[i][j] -= v;
                    }
                }
                clean &= m[p][j].is_zero();
            }
            if !clean {
                continue;
            }
            // The pivot must divide the rest of the block; otherwise fold in
            // an offending row and go again.
            let bad = (p + 1..rows).find(|&i| (p + 1..cols).any(|j| !(&m[i][j] % &pivot).is_zero()));
            match bad {
                Some(i) => {
                    for j in p..cols {
                        let v = m[i][j].clone();
                        m[p][j] += v;
                    }
                }
                None => {
                    diag.push(pivot.abs());
                    break;
                }
            }
        }
    }
    finish(diag)
}

fn finish(mut diag: Vec<BigInt>) -> Vec<BigInt> {
    let zeros = diag.iter().filter(|d| d.is_zero()).count();
    diag.retain(|d| !d.is_zero());
    diag.sort();
    diag.extend(std::iter::repeat_n(BigInt::zero(), zeros));
    diag
}

/// Symmetric representative with positive value at `t = 1`.
pub fn normalize(p: LaurentPolynomial) -> LaurentPolynomial {
    if p.is_zero() {
        return p;
    }
    let span = p.max_degree() - p.min_degree();
    let centred = p.shift(-p.min_degree() - span / 2);
    if centred.eval_one().is_negative() {
        -&centred
    } else {
        centred
    }
}

pub fn determinant_of(pd: &PlanarDiagramCode) -> Result<u64> {
    let d = alexander(pd)?.eval_minus_one();
    Ok(u64::try_from(d.abs()).expect("determinant fits in u64"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_knots() {
        let trefoil: PlanarDiagramCode = "X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]".parse().unwrap();
        assert_eq!(alexander(&trefoil).unwrap(), LaurentPolynomial::new(-1, [1i64, -1, 1]));
        assert_eq!(determinant_of(&trefoil).unwrap(), 3);
        let fig8: PlanarDiagramCode = "X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]".parse().unwrap();
        assert_eq!(alexander(&fig8).unwrap(), LaurentPolynomial::new(-1, [-1i64, 3, -1]));
        assert_eq!(determinant_of(&fig8).unwrap(), 5);
        let curl: PlanarDiagramCode = "X[1,1,2,2]".parse().unwrap();
        assert_eq!(alexander(&curl).unwrap(), LaurentPolynomial::one());
    }

    #[test]
    fn homology_of_small_knots() {
        let trefoil: PlanarDiagramCode = "X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]".parse().unwrap();
        assert_eq!(double_cover_homology(&trefoil).unwrap(), vec![3]);
        // 9_35 has a non-cyclic group Z3 + Z9.
        let pd = PlanarDiagramCode::from_dt(&crate::gauss::DtCode::parse("8 12 16 14 18 4 2 6 10").unwrap()).unwrap();
        assert_eq!(double_cover_homology(&pd).unwrap(), vec![3, 9]);
        let curl: PlanarDiagramCode = "X[1,1,2,2]".parse().unwrap();
        assert!(double_cover_homology(&curl).unwrap().is_empty());
    }
}
