//! Closed subgroups of ℝⁿ cut out by integrality and vanishing conditions.
//!
//! Every commutation requirement in the engine has the form "a linear
//! functional of the parameters is an integer" (discrete partner) or "is
//! zero" (continuous partner). The solution set is `V ⊕ Λ`: a subspace plus
//! a lattice in a complement.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{ArithError, Surd};
use crate::linalg::{self, Matrix};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    pub dim: usize,
    /// Basis of the continuous part `V`.
    pub continuous: Vec<Vec<Surd>>,
    /// ℤ-basis of the lattice part, chosen in a complement of `V`.
    pub discrete: Vec<Vec<Surd>>,
}

impl Domain {
    pub fn full(dim: usize) -> Self {
        let continuous = (0..dim)
            .map(|i| (0..dim).map(|j| Surd::int((i == j) as i64)).collect())
            .collect();
        Self { dim, continuous, discrete: Vec::new() }
    }

    pub fn is_discrete(&self) -> bool {
        self.continuous.is_empty()
    }

    /// Coordinates of `x` against `continuous ++ discrete`, if in their span.
    pub fn coordinates(&self, x: &[Surd]) -> Result<Option<(Vec<Surd>, Vec<Surd>)>, ArithError> {
        let basis: Vec<&Vec<Surd>> = self.continuous.iter().chain(&self.discrete).collect();
        let m = basis.len();
        // columns = basis vectors, last column = x
        let mut aug: Matrix = (0..self.dim)
            .map(|r| {
                let mut row: Vec<Surd> = basis.iter().map(|b| b[r].clone()).collect();
                row.push(x[r].clone());
                row
            })
            .collect();
        let pivots = linalg::rref(&mut aug)?;
        if pivots.contains(&m) {
            return Ok(None);
        }
        let mut coef = vec![Surd::zero(); m];
        for (row, &p) in pivots.iter().enumerate() {
            coef[p] = aug[row][m].clone();
        }
        let disc = coef.split_off(self.continuous.len());
        Ok(Some((coef, disc)))
    }

    pub fn contains(&self, x: &[Surd]) -> Result<bool, ArithError> {
        Ok(self
            .coordinates(x)?
            .is_some_and(|(_, disc)| disc.iter().all(Surd::is_integer)))
    }
}

fn independent_rows(rows: &[Vec<Surd>]) -> Result<Vec<usize>, ArithError> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut acc: Matrix = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        acc.push(r.clone());
        if linalg::rank(&acc)? == acc.len() {
            chosen.push(i);
        } else {
            acc.pop();
        }
    }
    Ok(chosen)
}

fn mat_vec(m: &[Vec<Surd>], v: &[Surd]) -> Result<Vec<Surd>, ArithError> {
    m.iter().map(|r| linalg::dot(r, v)).collect()
}

fn to_int_rows(rows: &[Vec<BigRational>]) -> (BigInt, Vec<Vec<BigInt>>) {
    linalg::clear_denominators(rows)
}

/// `{x ∈ ℝⁿ : ℓ(x) ∈ ℤ for ℓ ∈ integer, ℓ(x) = 0 for ℓ ∈ zero}`.
///
/// Lattice generators are the solutions supported on pivot coordinates,
/// with pivots taken from the last coordinate backwards (so a charge-axis
/// representative wins over a flux-axis one when both exist).
pub fn solve(dim: usize, integer: &[Vec<Surd>], zero: &[Vec<Surd>]) -> Result<Domain, ArithError> {
    // x = B·y with the columns of B spanning the zero-constraint kernel
    let basis: Vec<Vec<Surd>> = if zero.is_empty() {
        Domain::full(dim).continuous
    } else {
        linalg::kernel(&zero.to_vec(), dim)?
    };
    let w = basis.len();
    let lift = |y: &[Surd]| -> Result<Vec<Surd>, ArithError> {
        let mut x = vec![Surd::zero(); dim];
        for (c, b) in y.iter().zip(&basis) {
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi = xi.checked_add(&c.checked_mul(bi)?)?;
            }
        }
        Ok(x)
    };
    let m: Matrix = integer
        .iter()
        .map(|l| basis.iter().map(|b| linalg::dot(l, b)).collect())
        .collect::<Result<_, _>>()?;

    let ker = if m.is_empty() { Domain::full(w).continuous } else { linalg::kernel(&m, w)? };
    let continuous = ker.iter().map(|y| lift(y)).collect::<Result<Vec<_>, _>>()?;

    let p = independent_rows(&m)?;
    let r = p.len();
    if r == 0 {
        return Ok(Domain { dim, continuous, discrete: Vec::new() });
    }
    // pivot columns of M_P, scanning coordinates last-to-first
    let mut rev: Matrix = p.iter().map(|&i| m[i].iter().rev().cloned().collect()).collect();
    let cols: Vec<usize> = linalg::rref(&mut rev)?.into_iter().map(|c| w - 1 - c).collect();
    let square: Matrix = p.iter().map(|&i| cols.iter().map(|&c| m[i][c].clone()).collect()).collect();
    let inv = linalg::inverse(&square)?.expect("independent rows have an invertible pivot block");
    // y(z) = X·z, X is w×r supported on pivot columns
    let mut x_mat: Matrix = vec![vec![Surd::zero(); r]; w];
    for (ci, &c) in cols.iter().enumerate() {
        x_mat[c] = inv[ci].clone();
    }
    let rest: Vec<usize> = (0..m.len()).filter(|i| !p.contains(i)).collect();
    let rel: Matrix = rest
        .iter()
        .map(|&i| (0..r).map(|j| linalg::dot(&m[i], &x_mat.iter().map(|row| row[j].clone()).collect::<Vec<_>>())).collect())
        .collect::<Result<_, _>>()?;

    // surd parts must vanish: z ∈ ker_ℤ(R_b)
    let rb: Vec<Vec<BigRational>> = rel.iter().map(|row| row.iter().map(|s| s.b().clone()).collect()).collect();
    let zk: Vec<Vec<BigInt>> = if rb.iter().flatten().all(Zero::is_zero) {
        (0..r).map(|i| (0..r).map(|j| BigInt::from((i == j) as i64)).collect()).collect()
    } else {
        let (_, ints) = to_int_rows(&rb);
        linalg::integer_kernel(&ints, r)
    };
    // rational parts integral: congruence on the kernel coordinates
    let ra: Vec<Vec<BigRational>> = rel
        .iter()
        .map(|row| {
            zk.iter()
                .map(|z| {
                    row.iter()
                        .zip(z)
                        .fold(BigRational::zero(), |acc, (s, zi)| acc + s.a() * BigRational::from_integer(zi.clone()))
                })
                .collect()
        })
        .collect();
    let s = zk.len();
    let us: Vec<Vec<BigInt>> = if ra.iter().flatten().all(|q| q.is_integer()) {
        (0..s).map(|i| (0..s).map(|j| BigInt::from((i == j) as i64)).collect()).collect()
    } else {
        let mut den = BigInt::one();
        for q in ra.iter().flatten() {
            den = den.lcm(q.denom());
        }
        let scaled: Vec<Vec<BigInt>> = ra
            .iter()
            .map(|row| row.iter().map(|q| (q * BigRational::from_integer(den.clone())).to_integer()).collect())
            .collect();
        linalg::congruence_lattice(&scaled, s, &den)
    };
    let mut discrete = Vec::new();
    for u in &us {
        let z: Vec<Surd> = (0..r)
            .map(|i| {
                let v: BigInt = u.iter().zip(&zk).map(|(ui, zr)| ui * &zr[i]).sum();
                Surd::rational(BigRational::from_integer(v))
            })
            .collect();
        let y = mat_vec(&x_mat, &z)?;
        discrete.push(lift(&y)?);
    }
    Ok(Domain { dim, continuous, discrete })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[&str]) -> Vec<Surd> {
        xs.iter().map(|x| x.parse().unwrap()).collect()
    }

    #[test]
    fn single_functional_prefers_charge_axis() {
        // ℓ(φ, c) = 2φ + c, from the boson (1, 2)
        let d = solve(2, &[v(&["2", "1"])], &[]).unwrap();
        assert_eq!(d.continuous.len(), 1);
        assert_eq!(d.discrete, vec![v(&["0", "1"])]);
        assert!(d.contains(&v(&["1", "-2"])).unwrap());
        assert!(d.contains(&v(&["1/2", "0"])).unwrap());
        assert!(!d.contains(&v(&["1/4", "0"])).unwrap());
    }

    #[test]
    fn dual_basis_for_independent_functionals() {
        let d = solve(2, &[v(&["1", "1"]), v(&["sqrt(2)", "-sqrt(2)"])], &[]).unwrap();
        assert!(d.is_discrete());
        assert_eq!(d.discrete.len(), 2);
        assert!(d.contains(&v(&["1/2", "1/2"])).unwrap());
        assert!(d.contains(&v(&["1/4*sqrt(2)", "-1/4*sqrt(2)"])).unwrap());
        assert!(!d.contains(&v(&["1/4", "1/4"])).unwrap());
    }

    #[test]
    fn incommensurate_functionals_force_zero() {
        let d = solve(2, &[v(&["1", "0"]), v(&["sqrt(2)", "0"])], &[]).unwrap();
        assert_eq!(d.continuous.len(), 1);
        assert!(d.discrete.is_empty());
        assert!(d.contains(&v(&["0", "7/3"])).unwrap());
        assert!(!d.contains(&v(&["1", "0"])).unwrap());
    }

    #[test]
    fn commensurate_functionals_refine_lattice() {
        let d = solve(1, &[v(&["2"]), v(&["3"])], &[]).unwrap();
        assert!(d.contains(&v(&["1"])).unwrap());
        assert!(!d.contains(&v(&["1/2"])).unwrap());
        let d = solve(1, &[v(&["1/2"]), v(&["1/3"])], &[]).unwrap();
        assert!(d.contains(&v(&["6"])).unwrap());
        assert!(!d.contains(&v(&["2"])).unwrap());
    }

    #[test]
    fn zero_constraints_restrict_subspace() {
        let d = solve(2, &[v(&["0", "1"])], &[v(&["1", "0"])]).unwrap();
        assert!(d.is_discrete());
        assert!(d.contains(&v(&["0", "3"])).unwrap());
        assert!(!d.contains(&v(&["1", "0"])).unwrap());
    }
}
