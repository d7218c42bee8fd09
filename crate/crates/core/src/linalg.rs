//! Dense linear algebra over ℚ(√d) and over ℤ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{ArithError, Surd};

pub type Matrix = Vec<Vec<Surd>>;

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut Matrix) -> Result<Vec<usize>, ArithError> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv()?;
        for x in m[r].iter_mut() {
            *x = x.checked_mul(&inv)?;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let delta = f.checked_mul(&m[r][j])?;
                    m[i][j] = m[i][j].checked_sub(&delta)?;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Ok(pivots)
}

pub fn rank(m: &Matrix) -> Result<usize, ArithError> {
    let mut w = m.clone();
    Ok(rref(&mut w)?.len())
}

/// Basis of `{x : m·x = 0}`.
pub fn kernel(m: &Matrix, cols: usize) -> Result<Vec<Vec<Surd>>, ArithError> {
    let mut w = m.clone();
    let pivots = rref(&mut w)?;
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &f in &free {
        let mut v = vec![Surd::zero(); cols];
        v[f] = Surd::one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -&w[row][f];
        }
        basis.push(v);
    }
    Ok(basis)
}

pub fn inverse(m: &Matrix) -> Result<Option<Matrix>, ArithError> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Surd::one() } else { Surd::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug)?;
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Ok(None);
    }
    Ok(Some(aug.into_iter().map(|r| r[n..].to_vec()).collect()))
}

pub fn dot(u: &[Surd], v: &[Surd]) -> Result<Surd, ArithError> {
    let mut acc = Surd::zero();
    for (a, b) in u.iter().zip(v) {
        if !a.is_zero() && !b.is_zero() {
            acc = acc.checked_add(&a.checked_mul(b)?)?;
        }
    }
    Ok(acc)
}

/// Smith normal form of a small integer matrix: `p·a·q = diag`, with `p`, `q` unimodular.
#[derive(Debug, Clone)]
pub struct Smith {
    pub diag: Vec<i128>,
    pub p: Vec<Vec<i128>>,
    pub q: Vec<Vec<i128>>,
}

fn identity(n: usize) -> Vec<Vec<i128>> {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

pub fn smith_normal_form(a: &[Vec<i128>]) -> Smith {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m = a.to_vec();
    let mut p = identity(rows);
    let mut q = identity(cols);
    let k = rows.min(cols);
    for t in 0..k {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                break;
            };
            m.swap(t, bi);
            p.swap(t, bi);
            for row in m.iter_mut() {
                row.swap(t, bj);
            }
            for row in q.iter_mut() {
                row.swap(t, bj);
            }
            let piv = m[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let f = m[i][t] / piv;
                if f != 0 {
                    for j in 0..cols {
                        m[i][j] -= f * m[t][j];
                    }
                    for j in 0..rows {
                        p[i][j] -= f * p[t][j];
                    }
                }
                clean &= m[i][t] == 0;
            }
            for j in t + 1..cols {
                let f = m[t][j] / piv;
                if f != 0 {
                    for i in 0..rows {
                        m[i][j] -= f * m[i][t];
                    }
                    for i in 0..cols {
                        q[i][j] -= f * q[i][t];
                    }
                }
                clean &= m[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // divisibility: fold any entry not divisible by the pivot into row t
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % piv != 0));
            match bad {
                Some(i) => {
                    for j in 0..cols {
                        m[t][j] += m[i][j];
                    }
                    for j in 0..rows {
                        p[t][j] += p[i][j];
                    }
                }
                None => break,
            }
        }
        if m[t][t] < 0 {
            for j in 0..cols {
                m[t][j] = -m[t][j];
            }
            for j in 0..rows {
                p[t][j] = -p[t][j];
            }
        }
    }
    Smith { diag: (0..k).map(|i| m[i][i]).collect(), p, q }
}

/// Inverse of a unimodular integer matrix via the adjugate-free Gauss–Jordan over ℚ.
pub fn unimodular_inverse(u: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let n = u.len();
    let m: Matrix = u
        .iter()
        .map(|r| r.iter().map(|&x| Surd::int(x as i64)).collect())
        .collect();
    let inv = inverse(&m).expect("rational arithmetic").expect("unimodular matrix is invertible");
    (0..n)
        .map(|i| (0..n).map(|j| inv[i][j].to_i64().expect("integral inverse") as i128).collect())
        .collect()
}

/// Integer row-echelon basis of a ℤ-module, built by insertion.
#[derive(Debug, Clone, Default)]
pub struct IntEchelon {
    rows: Vec<(usize, Vec<BigInt>)>,
}

fn leading(v: &[BigInt]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

impl IntEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, mut v: Vec<BigInt>) {
        while let Some(p) = leading(&v) {
            match self.rows.binary_search_by_key(&p, |(c, _)| *c) {
                Err(pos) => {
                    if v[p].is_negative() {
                        v.iter_mut().for_each(|x| *x = -x.clone());
                    }
                    self.rows.insert(pos, (p, v));
                    return;
                }
                Ok(pos) => {
                    let r = &self.rows[pos].1;
                    let e = r[p].extended_gcd(&v[p]);
                    let (g, s, t) = (e.gcd, e.x, e.y);
                    let rp = &r[p] / &g;
                    let vp = &v[p] / &g;
                    let new_r: Vec<BigInt> = r.iter().zip(&v).map(|(a, b)| &s * a + &t * b).collect();
                    let new_v: Vec<BigInt> = r.iter().zip(&v).map(|(a, b)| &rp * b - &vp * a).collect();
                    self.rows[pos].1 = new_r;
                    v = new_v;
                }
            }
        }
    }

    /// Whether `v` lies in the ℤ-span; on success returns the residual-free reduction.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        let mut v = v.to_vec();
        for (p, r) in &self.rows {
            if let Some(lead) = leading(&v) {
                if lead < *p {
                    return false;
                }
                if lead > *p {
                    continue;
                }
            } else {
                return true;
            }
            let (q, rem) = v[*p].div_rem(&r[*p]);
            if !rem.is_zero() {
                return false;
            }
            for (x, y) in v.iter_mut().zip(r) {
                *x -= &q * y;
            }
        }
        leading(&v).is_none()
    }

    pub fn basis(&self) -> Vec<Vec<BigInt>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }
}

/// ℤ-basis of `{x ∈ ℤⁿ : a·x ≡ 0 (mod m)}` for an integer matrix `a`.
pub fn congruence_lattice(a: &[Vec<BigInt>], n: usize, m: &BigInt) -> Vec<Vec<BigInt>> {
    // unknowns (x, w): a·x − m·w = 0; project the integer kernel onto x.
    let rows = a.len();
    let mut ker = integer_kernel(
        &a.iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend((0..rows).map(|j| if i == j { -m.clone() } else { BigInt::zero() }));
                row
            })
            .collect::<Vec<_>>(),
        n + rows,
    );
    let mut ech = IntEchelon::new();
    for v in ker.drain(..) {
        ech.insert(v[..n].to_vec());
    }
    ech.basis()
}

/// ℤ-basis of the integer kernel of `a` (columns = `n`), via column reduction.
pub fn integer_kernel(a: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    // Column operations on [a; I]; zero columns of the top block give kernel vectors.
    let rows = a.len();
    let mut cols: Vec<Vec<BigInt>> = (0..n)
        .map(|j| {
            let mut c: Vec<BigInt> = a.iter().map(|r| r[j].clone()).collect();
            c.extend((0..n).map(|k| if k == j { BigInt::one() } else { BigInt::zero() }));
            c
        })
        .collect();
    let mut done = 0;
    for r in 0..rows {
        loop {
            let nz: Vec<usize> = (done..n).filter(|&j| !cols[j][r].is_zero()).collect();
            if nz.len() <= 1 {
                if let Some(&j) = nz.first() {
                    cols.swap(done, j);
                    done += 1;
                }
                break;
            }
            let jmin = *nz.iter().min_by_key(|&&j| cols[j][r].abs()).unwrap();
            for &j in &nz {
                if j != jmin {
                    let f = &cols[j][r] / &cols[jmin][r];
                    let base = cols[jmin].clone();
                    for (x, y) in cols[j].iter_mut().zip(&base) {
                        *x -= &f * y;
                    }
                }
            }
        }
    }
    cols[done..].iter().map(|c| c[rows..].to_vec()).collect()
}

/// Exact integer determinant (Bareiss fraction-free elimination).
pub fn det_bareiss(a: &[Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Split a ℚ(√d) vector into its rational and surd coordinates.
pub fn split_rational(v: &[Surd]) -> Vec<BigRational> {
    let mut out: Vec<BigRational> = v.iter().map(|x| x.a().clone()).collect();
    out.extend(v.iter().map(|x| x.b().clone()));
    out
}

/// Common-denominator scaling of rational vectors to integer vectors.
pub fn clear_denominators(vs: &[Vec<BigRational>]) -> (BigInt, Vec<Vec<BigInt>>) {
    let mut l = BigInt::one();
    for v in vs {
        for x in v {
            l = l.lcm(x.denom());
        }
    }
    let scaled = vs
        .iter()
        .map(|v| v.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect())
        .collect();
    (l, scaled)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn smith_of_even_k_matrix() {
        let s = smith_normal_form(&[vec![2, 4], vec![4, 2]]);
        assert_eq!(s.diag, vec![2, 6]);
        let s = smith_normal_form(&[vec![2, 0], vec![0, -4]]);
        assert_eq!(s.diag, vec![2, 4]);
        let s = smith_normal_form(&[vec![0, 3], vec![3, 0]]);
        assert_eq!(s.diag, vec![3, 3]);
    }

    #[test]
    fn smith_transforms_reproduce_diagonal() {
        let a = vec![vec![4, 6], vec![6, 4]];
        let s = smith_normal_form(&a);
        let mut pa = vec![vec![0i128; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        pa[i][j] += s.p[i][k] * a[k][l] * s.q[l][j];
                    }
                }
            }
        }
        assert_eq!(pa, vec![vec![s.diag[0], 0], vec![0, s.diag[1]]]);
        assert_eq!(s.diag, vec![2, 10]);
    }

    #[test]
    fn echelon_membership() {
        let mut e = IntEchelon::new();
        e.insert(bi(&[2, 0, 1]));
        e.insert(bi(&[0, 3, 0]));
        assert!(e.contains(&bi(&[4, 6, 2])));
        assert!(!e.contains(&bi(&[1, 0, 0])));
        assert!(!e.contains(&bi(&[2, 1, 1])));
        e.insert(bi(&[3, 0, 0]));
        assert!(e.contains(&bi(&[1, 0, -1])));
        assert!(!e.contains(&bi(&[1, 0, 0])));
        assert!(e.contains(&bi(&[0, 0, 3])));
    }

    #[test]
    fn kernel_and_congruences() {
        let k = integer_kernel(&[bi(&[2, 4, 6])], 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!((BigInt::from(2) * &v[0] + BigInt::from(4) * &v[1] + BigInt::from(6) * &v[2]).is_zero());
        }
        // {x : x₀ + 2x₁ ≡ 0 mod 4} has index 4
        let b = congruence_lattice(&[bi(&[1, 2])], 2, &BigInt::from(4));
        assert_eq!(det_bareiss(&b).abs(), BigInt::from(4));
    }

    #[test]
    fn bareiss_determinant() {
        let m = vec![bi(&[0, 2, 1]), bi(&[3, 0, 1]), bi(&[1, 1, 1])];
        assert_eq!(det_bareiss(&m), BigInt::from(-1));
        assert_eq!(det_bareiss(&[bi(&[0, 1]), bi(&[-1, 0])]), BigInt::from(1));
        assert_eq!(det_bareiss(&[bi(&[1, 2]), bi(&[2, 4])]), BigInt::from(0));
    }

    #[test]
    fn surd_inverse() {
        let s = |x: &str| x.parse::<Surd>().unwrap();
        let m = vec![vec![s("1"), s("1")], vec![s("sqrt(2)"), s("-1/2*sqrt(2)")]];
        let inv = inverse(&m).unwrap().unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = Surd::zero();
                for k in 0..2 {
                    acc += &(&m[i][k] * &inv[k][j]);
                }
                assert_eq!(acc, Surd::int((i == j) as i64));
            }
        }
        assert!(inverse(&vec![vec![s("1"), s("2")], vec![s("2"), s("4")]]).unwrap().is_none());
    }
}
