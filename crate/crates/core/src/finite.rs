//! Finite abelian anyon theories: enumeration, Lagrangian subgroups, Gauss sums.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{PhaseFraction, Surd};

#[derive(Debug, Error, PartialEq)]
pub enum FiniteError {
    #[error("inconsistent anyon data: {0}")]
    Inconsistent(String),
    #[error("Gauss sum modulus {0} is neither 0 nor 1")]
    NondegenerateCheckFailed(f64),
}

/// Exponents of the cyclic generators, each reduced modulo its order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AnyonLabel(pub Vec<u64>);

impl fmt::Display for AnyonLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for AnyonLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `⊕ ℤ_{dᵢ}` with a quadratic form fixed by generator spins and braidings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiniteAnyonTheory {
    pub orders: Vec<u64>,
    pub spins: Vec<PhaseFraction>,
    pub braidings: Vec<Vec<PhaseFraction>>,
}

impl FiniteAnyonTheory {
    pub fn new(
        orders: Vec<u64>,
        spins: Vec<PhaseFraction>,
        braidings: Vec<Vec<PhaseFraction>>,
    ) -> Result<Self, FiniteError> {
        let t = Self { orders, spins, braidings };
        t.check()?;
        Ok(t)
    }

    /// Well-definedness on cyclic factors.
    pub fn check(&self) -> Result<(), FiniteError> {
        let k = self.orders.len();
        let bad = |m: String| Err(FiniteError::Inconsistent(m));
        if self.spins.len() != k || self.braidings.len() != k || self.braidings.iter().any(|r| r.len() != k) {
            return bad("shape mismatch".into());
        }
        for i in 0..k {
            let d = self.orders[i] as i64;
            if d == 0 {
                return bad(format!("generator {i} has order 0"));
            }
            if self.braidings[i][i] != self.spins[i].mul_int(2) {
                return bad(format!("braiding({i},{i}) is not twice the spin"));
            }
            if !self.spins[i].mul_int(d * d).is_trivial() {
                return bad(format!("spin of generator {i} is not periodic"));
            }
            for j in 0..k {
                if self.braidings[i][j] != self.braidings[j][i] {
                    return bad(format!("braiding ({i},{j}) not symmetric"));
                }
                if !self.braidings[i][j].mul_int(d).is_trivial() {
                    return bad(format!("order({i})·braiding({i},{j}) is nontrivial"));
                }
            }
        }
        Ok(())
    }

    pub fn trivial() -> Self {
        Self { orders: vec![], spins: vec![], braidings: vec![] }
    }

    /// ℤₙ gauge theory: charge `e` and flux `m`, both bosons, braiding `1/n`.
    pub fn toric_code(n: u64) -> Self {
        let b = PhaseFraction::from_rational(1, n as i64);
        Self {
            orders: vec![n, n],
            spins: vec![PhaseFraction::zero(), PhaseFraction::zero()],
            braidings: vec![vec![PhaseFraction::zero(), b.clone()], vec![b, PhaseFraction::zero()]],
        }
    }

    /// U(1)ₖ Chern–Simons data for even `k ≠ 0`: ℤ_|k| with generator spin `1/(2k)`.
    pub fn u1(k: i64) -> Self {
        assert!(k != 0 && k % 2 == 0, "U(1)_k needs even nonzero k");
        let s = PhaseFraction::from_rational(1, 2 * k);
        Self { orders: vec![k.unsigned_abs()], spins: vec![s.clone()], braidings: vec![vec![s.mul_int(2)]] }
    }

    /// Stacking `T₁ × T₂`.
    pub fn product(&self, other: &Self) -> Self {
        let k = self.orders.len();
        let n = k + other.orders.len();
        let mut braidings = vec![vec![PhaseFraction::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                braidings[i][j] = match (i < k, j < k) {
                    (true, true) => self.braidings[i][j].clone(),
                    (false, false) => other.braidings[i - k][j - k].clone(),
                    _ => PhaseFraction::zero(),
                };
            }
        }
        Self {
            orders: self.orders.iter().chain(&other.orders).copied().collect(),
            spins: self.spins.iter().chain(&other.spins).cloned().collect(),
            braidings,
        }
    }

    pub fn size(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn labels(&self) -> Vec<AnyonLabel> {
        let mut out = vec![AnyonLabel(vec![])];
        for &d in &self.orders {
            out = out
                .into_iter()
                .flat_map(|l| {
                    (0..d).map(move |k| {
                        let mut v = l.0.clone();
                        v.push(k);
                        AnyonLabel(v)
                    })
                })
                .collect();
        }
        out
    }

    pub fn fuse(&self, a: &AnyonLabel, b: &AnyonLabel) -> AnyonLabel {
        AnyonLabel(a.0.iter().zip(&b.0).zip(&self.orders).map(|((x, y), d)| (x + y) % d).collect())
    }

    pub fn identity(&self) -> AnyonLabel {
        AnyonLabel(vec![0; self.orders.len()])
    }

    pub fn spin(&self, a: &AnyonLabel) -> PhaseFraction {
        let mut acc = Surd::zero();
        for i in 0..a.0.len() {
            let ki = a.0[i] as i64;
            acc += &self.spins[i].value().scale_int(ki * ki);
            for j in i + 1..a.0.len() {
                acc += &self.braidings[i][j].value().scale_int(ki * a.0[j] as i64);
            }
        }
        PhaseFraction::new(acc)
    }

    pub fn braiding(&self, a: &AnyonLabel, b: &AnyonLabel) -> PhaseFraction {
        let mut acc = Surd::zero();
        for i in 0..a.0.len() {
            for j in 0..b.0.len() {
                acc += &self.braidings[i][j].value().scale_int(a.0[i] as i64 * b.0[j] as i64);
            }
        }
        PhaseFraction::new(acc)
    }

    pub fn enumerate_anyons(&self) -> Vec<(AnyonLabel, PhaseFraction)> {
        self.labels().into_iter().map(|l| {
            let s = self.spin(&l);
            (l, s)
        }).collect()
    }

    fn closure(&self, gens: &BTreeSet<AnyonLabel>) -> BTreeSet<AnyonLabel> {
        let mut h: BTreeSet<AnyonLabel> = BTreeSet::from([self.identity()]);
        let mut queue: VecDeque<AnyonLabel> = VecDeque::from([self.identity()]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = self.fuse(&x, g);
                if h.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        h
    }

    /// Subgroup with all spins and mutual braidings trivial.
    pub fn is_isotropic(&self, l: &[AnyonLabel]) -> bool {
        l.iter().all(|a| self.spin(a).is_trivial())
            && l.iter().all(|a| l.iter().all(|b| self.braiding(a, b).is_trivial()))
    }

    /// Independent check of the three defining conditions.
    pub fn is_lagrangian(&self, l: &[AnyonLabel]) -> bool {
        let set: BTreeSet<AnyonLabel> = l.iter().cloned().collect();
        let closed = set.contains(&self.identity())
            && set.iter().all(|a| set.iter().all(|b| set.contains(&self.fuse(a, b))));
        closed && (set.len() as u64).pow(2) == self.size() && self.is_isotropic(l)
    }

    /// Every Lagrangian subgroup, by breadth-first growth of isotropic subgroups.
    pub fn lagrangian_subgroups(&self) -> Vec<Vec<AnyonLabel>> {
        let n = self.size();
        let root = (n as f64).sqrt().round() as u64;
        if root * root != n {
            return Vec::new();
        }
        let bosons: Vec<AnyonLabel> = self.labels().into_iter().filter(|a| self.spin(a).is_trivial()).collect();
        let start: BTreeSet<AnyonLabel> = BTreeSet::from([self.identity()]);
        let mut seen: HashSet<BTreeSet<AnyonLabel>> = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        let mut out = Vec::new();
        while let Some(h) = queue.pop_front() {
            if h.len() as u64 == root {
                out.push(h.into_iter().collect());
                continue;
            }
            for a in &bosons {
                if h.contains(a) || !h.iter().all(|x| self.braiding(a, x).is_trivial()) {
                    continue;
                }
                let mut gens = h.clone();
                gens.insert(a.clone());
                let g = self.closure(&gens);
                if (g.len() as u64) <= root && seen.insert(g.clone()) {
                    queue.push_back(g);
                }
            }
        }
        out.sort();
        out
    }

    /// `(1/√|A|) Σₐ θ(a)` and the chiral central charge it encodes.
    pub fn gauss_sum(&self) -> Result<Chirality, FiniteError> {
        let anyons = self.enumerate_anyons();
        let size = anyons.len() as f64;
        let sum: Complex64 = anyons
            .iter()
            .map(|(_, s)| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * s.to_f64()))
            .sum();
        let g = sum / size.sqrt();
        let modulus = g.norm();
        let exact = self.exact_modulus_squared();
        let (unit, zero) = match exact {
            Some(m2) => (m2 == self.size() as i64, m2 == 0),
            None => ((modulus - 1.0).abs() < 1e-9, modulus < 1e-9),
        };
        if zero {
            return Ok(Chirality::Degenerate);
        }
        if !unit {
            return Err(FiniteError::NondegenerateCheckFailed(modulus));
        }
        let eighths = g.arg() / (2.0 * std::f64::consts::PI) * 8.0;
        let c = eighths.round();
        if (eighths - c).abs() > 1e-6 {
            return Err(FiniteError::NondegenerateCheckFailed(modulus));
        }
        Ok(Chirality::Modular { c_minus: (c as i64).rem_euclid(8) as u8, modulus, exact: exact.is_some() })
    }

    /// `|Σₐ θ(a)|²` reduced modulo the cyclotomic polynomial, when all spins
    /// are rational with common denominator at most 24.
    fn exact_modulus_squared(&self) -> Option<i64> {
        let spins: Vec<PhaseFraction> = self.enumerate_anyons().into_iter().map(|(_, s)| s).collect();
        let mut den: i64 = 1;
        for s in &spins {
            den = den.lcm(&s.value().as_rational()?.denom().to_i64()?);
        }
        if den > 24 {
            return None;
        }
        let ks: Vec<i64> = spins
            .iter()
            .map(|s| {
                let q = s.value().as_rational().unwrap();
                (q.numer() * (den / q.denom().to_i64().unwrap())).to_i64().unwrap()
            })
            .collect();
        let n = den as usize;
        let mut poly = vec![0i64; n];
        for a in &ks {
            for b in &ks {
                poly[(a - b).rem_euclid(den) as usize] += 1;
            }
        }
        let r = poly_rem(&poly, &cyclotomic(n));
        if r.iter().skip(1).all(|&c| c == 0) {
            Some(r.first().copied().unwrap_or(0))
        } else {
            // |G|² is a rational integer, so a nonconstant remainder is a bug
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Chirality {
    Modular { c_minus: u8, modulus: f64, exact: bool },
    Degenerate,
}

impl Chirality {
    pub fn c_minus(&self) -> Option<u8> {
        match self {
            Chirality::Modular { c_minus, .. } => Some(*c_minus),
            Chirality::Degenerate => None,
        }
    }
}

/// Remainder of `a` modulo a monic integer polynomial `m` (coefficients low to high).
fn poly_rem(a: &[i64], m: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = r.pop().unwrap();
        let shift = r.len() - dm;
        for (i, &c) in m[..dm].iter().enumerate() {
            r[shift + i] -= lead * c;
        }
    }
    r
}

fn poly_div_exact(a: &[i64], m: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    let mut q = vec![0i64; r.len() - dm];
    while r.len() > dm {
        let lead = r.pop().unwrap();
        let shift = r.len() - dm;
        q[shift] = lead;
        for (i, &c) in m[..dm].iter().enumerate() {
            r[shift + i] -= lead * c;
        }
    }
    debug_assert!(r.iter().all(|&c| c == 0));
    q
}

/// Φₙ, coefficients low to high.
pub fn cyclotomic(n: usize) -> Vec<i64> {
    let mut p = vec![0i64; n + 1];
    p[0] = -1;
    p[n] = 1;
    for d in 1..n {
        if n % d == 0 {
            p = poly_div_exact(&p, &cyclotomic(d));
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k24() -> FiniteAnyonTheory {
        FiniteAnyonTheory::u1(2).product(&FiniteAnyonTheory::u1(-4))
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic(1), vec![-1, 1]);
        assert_eq!(cyclotomic(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic(8), vec![1, 0, 0, 0, 1]);
    }

    #[test]
    fn enumeration() {
        let u2 = FiniteAnyonTheory::u1(2);
        let a = u2.enumerate_anyons();
        assert_eq!(a.len(), 2);
        assert_eq!(a[1].1, PhaseFraction::from_rational(1, 4));
        assert_eq!(k24().enumerate_anyons().len(), 8);
        let t = FiniteAnyonTheory::trivial().enumerate_anyons();
        assert_eq!(t, vec![(AnyonLabel(vec![]), PhaseFraction::zero())]);
    }

    #[test]
    fn well_definedness() {
        assert!(k24().check().is_ok());
        let bad = FiniteAnyonTheory::new(
            vec![2],
            vec![PhaseFraction::from_rational(1, 8)],
            vec![vec![PhaseFraction::from_rational(1, 4)]],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn lagrangians() {
        for n in 2..=4 {
            let tc = FiniteAnyonTheory::toric_code(n);
            let ls = tc.lagrangian_subgroups();
            let charges: Vec<AnyonLabel> = (0..n).map(|k| AnyonLabel(vec![k, 0])).collect();
            assert!(ls.contains(&charges));
            assert!(ls.iter().all(|l| tc.is_lagrangian(l)));
        }
        assert!(k24().lagrangian_subgroups().is_empty());
        let u44 = FiniteAnyonTheory::u1(4).product(&FiniteAnyonTheory::u1(-4));
        let diag: Vec<AnyonLabel> = (0..4).map(|k| AnyonLabel(vec![k, k])).collect();
        assert!(u44.lagrangian_subgroups().contains(&diag));
    }

    #[test]
    fn chirality() {
        assert_eq!(FiniteAnyonTheory::u1(2).gauss_sum().unwrap().c_minus(), Some(1));
        assert_eq!(k24().gauss_sum().unwrap().c_minus(), Some(0));
        assert_eq!(FiniteAnyonTheory::toric_code(2).gauss_sum().unwrap().c_minus(), Some(0));
        assert_eq!(FiniteAnyonTheory::u1(-2).gauss_sum().unwrap().c_minus(), Some(7));
        // a lone fermion: 1 + (−1) = 0
        let f = FiniteAnyonTheory::new(
            vec![2],
            vec![PhaseFraction::from_rational(1, 2)],
            vec![vec![PhaseFraction::zero()]],
        )
        .unwrap();
        assert_eq!(f.gauss_sum().unwrap(), Chirality::Degenerate);
        // ℤ₂ of bosons is neither modular nor null
        let b = FiniteAnyonTheory::new(vec![2], vec![PhaseFraction::zero()], vec![vec![PhaseFraction::zero()]]).unwrap();
        assert!(matches!(b.gauss_sum(), Err(FiniteError::NondegenerateCheckFailed(_))));
    }
}
