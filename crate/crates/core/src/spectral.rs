//! Large-coupling analysis of the perturbed Hamiltonian `−U Σ cos ĉ + α Σ ŵ²`.
//!
//! A displacement `X^{2π·x̂} Z^z` is `exp(i(z·x̂_op − 2π x̂·p̂_op))`, so its
//! quadrature has x-coefficient `z` and p-coefficient `−2π x̂`. Two
//! quadratures satisfy `[q_u, q_v] = −2πi·f(u, v)`; the pairing in units of
//! `2πi` is therefore `−f`.

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::anyon::{braiding_value, FluxCharge};
use crate::arith::{ArithError, Surd};
use crate::lattice::code::LatticeCode;
use crate::lattice::geometry::{symplectic_value, Displacement};
use crate::lattice::LatticeError;
use crate::linalg::{self, Matrix};

#[derive(Debug, Error, PartialEq)]
pub enum SpectralError {
    #[error("𝒩 is not positive definite (λ_min = {0})")]
    NotPositiveDefinite(f64),
    #[error("𝒵 has a non-integer entry {0}")]
    NonIntegerEntry(Surd),
    #[error("spectral analysis not applicable: {0}")]
    NotApplicable(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralConfig {
    pub l: usize,
    pub alpha: f64,
    pub u: f64,
    pub u_prime: f64,
    /// Condensation coupling; recorded only.
    pub j: f64,
}

impl SpectralConfig {
    pub fn new(l: usize, alpha: f64) -> Self {
        Self { l, alpha, u: 100.0, u_prime: 0.1, j: 1.0 }
    }

    /// Advisory hierarchy `U ≫ α`, `U′ ≪ √(Uα)`; reported, never enforced.
    pub fn advisories(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.u < 10.0 * self.alpha {
            out.push(format!("U = {} is not much larger than α = {}", self.u, self.alpha));
        }
        if self.u_prime > 0.1 * (self.u * self.alpha).sqrt() {
            out.push(format!("U′ = {} is not much smaller than √(Uα) = {:.4}", self.u_prime, (self.u * self.alpha).sqrt()));
        }
        out
    }
}

/// Real linear combination of `x̂_e, p̂_e`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureForm {
    pub x: Vec<f64>,
    pub p: Vec<f64>,
}

impl QuadratureForm {
    pub fn from_displacement(d: &Displacement) -> Self {
        Self {
            x: d.z.iter().map(Surd::to_f64).collect(),
            p: d.xhat.iter().map(|s| -2.0 * std::f64::consts::PI * s.to_f64()).collect(),
        }
    }

    /// `[q, q'] / i`.
    pub fn commutator(&self, o: &Self) -> f64 {
        self.x.iter().zip(&o.p).map(|(a, b)| a * b).sum::<f64>() - self.p.iter().zip(&o.x).map(|(a, b)| a * b).sum::<f64>()
    }

    /// `[q, q'] / 2πi`.
    pub fn pairing(&self, o: &Self) -> f64 {
        self.commutator(o) / (2.0 * std::f64::consts::PI)
    }
}

/// Exact pairing `[q_u, q_v] / 2πi = −f(u, v)`.
pub fn exact_pairing(u: &Displacement, v: &Displacement) -> Surd {
    -&symplectic_value(u, v)
}

/// One condensed generator: its hoppings `ĉ_e` and the dual strings `ŵ_e`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Layer {
    pub boson: FluxCharge,
    /// `⟨b, b⟩`, the layer label (2 and −4 for the (1,2) double).
    pub label: Surd,
    pub c_exact: Vec<Displacement>,
    pub w_exact: Vec<Displacement>,
    pub c: Vec<QuadratureForm>,
    pub w: Vec<QuadratureForm>,
}

/// `ĉ_e^{(k)} = q(C_e(b_k))`; `ŵ_e^{(k)}` lies in the span of the hoppings of
/// the dual anyon `g_k` (`⟨b_j, g_k⟩ = δ_jk`) and is normalised so that
/// `[ĉ_e^{(k)}, ŵ_{e'}^{(k')}] = 2πi δ_{ee'} δ_{kk'}`.
pub fn quadrature_vectors(code: &LatticeCode) -> Result<Vec<Layer>, SpectralError> {
    let b = &code.outcome.subgroup;
    if !b.continuous.is_empty() {
        return Err(SpectralError::NotApplicable("continuous condensate".into()));
    }
    let bs = &b.discrete;
    let r = bs.len();
    let gram: Matrix = bs.iter().map(|x| bs.iter().map(|y| braiding_value(x, y)).collect()).collect();
    let ginv = linalg::inverse(&gram)?.ok_or_else(|| SpectralError::NotApplicable("degenerate K matrix".into()))?;
    // g_k = Σ_j (K⁻¹)_{kj} b_j
    let duals: Vec<FluxCharge> = (0..r)
        .map(|k| {
            (0..r).try_fold(FluxCharge::zero(), |acc, j| acc.checked_add(&bs[j].scale(&ginv[k][j])?))
        })
        .collect::<Result<_, ArithError>>()?;

    let t = &code.torus;
    let n = t.n_edges();
    let cs: Vec<Displacement> = bs.iter().flat_map(|x| (0..n).map(move |e| (x, e))).map(|(x, e)| code.hop(t.edge_at(e), x)).collect();
    let gs: Vec<Displacement> = duals.iter().flat_map(|g| (0..n).map(move |e| (g, e))).map(|(g, e)| code.hop(t.edge_at(e), g)).collect();
    // P_{i,j} = pairing(ĉ_i, C_j(g)); ŵ_i = Σ_j (P⁻ᵀ)_{ij} C_j(g)
    let m = cs.len();
    let p: Matrix = cs.iter().map(|c| gs.iter().map(|g| exact_pairing(c, g)).collect()).collect();
    let pinv = linalg::inverse(&p)?.ok_or_else(|| SpectralError::NotApplicable("hopping pairing matrix is singular".into()))?;
    let mut ws = Vec::with_capacity(m);
    for i in 0..m {
        let mut w = Displacement::identity(n);
        for (j, g) in gs.iter().enumerate() {
            let coef = &pinv[j][i];
            if !coef.is_zero() {
                w = w.compose(&g.power(coef)?);
            }
        }
        ws.push(w);
    }
    let mut layers = Vec::new();
    for (k, x) in bs.iter().enumerate() {
        let range = k * n..(k + 1) * n;
        let c_exact: Vec<Displacement> = cs[range.clone()].to_vec();
        let w_exact: Vec<Displacement> = ws[range].to_vec();
        layers.push(Layer {
            boson: x.clone(),
            label: braiding_value(x, x),
            c: c_exact.iter().map(QuadratureForm::from_displacement).collect(),
            w: w_exact.iter().map(QuadratureForm::from_displacement).collect(),
            c_exact,
            w_exact,
        });
    }
    Ok(layers)
}

/// `𝒩_ij = −[S_i, [S_j, H₀]] / 4π²` for `H₀ = α Σ_e ŵ_e²`, i.e. `2α Σ_e P_ie P_je`.
pub fn n_matrix(c: &[QuadratureForm], w: &[QuadratureForm], alpha: f64) -> DMatrix<f64> {
    let p = DMatrix::from_fn(c.len(), w.len(), |i, e| c[i].pairing(&w[e]));
    (&p * p.transpose()) * (2.0 * alpha)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZMatrix {
    pub entries: Vec<Vec<i64>>,
    pub det: BigInt,
    /// `√|det 𝒵|` when it is a perfect square.
    pub sqrt_abs_det: Option<BigInt>,
    /// Floating-point LU determinant, as a cross-check.
    pub det_float: f64,
}

/// `𝒵_ij = [S_i, S_j] / 2πi`, exact.
pub fn z_matrix(c: &[Displacement]) -> Result<ZMatrix, SpectralError> {
    let mut entries = vec![vec![0i64; c.len()]; c.len()];
    for i in 0..c.len() {
        for j in 0..c.len() {
            let v = exact_pairing(&c[i], &c[j]);
            entries[i][j] = v.to_i64().ok_or(SpectralError::NonIntegerEntry(v))?;
        }
    }
    let big: Vec<Vec<BigInt>> = entries.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let det = linalg::det_bareiss(&big);
    let root = det.abs().sqrt();
    let sqrt_abs_det = (&root * &root == det.abs()).then_some(root);
    let det_float = DMatrix::from_fn(c.len(), c.len(), |i, j| entries[i][j] as f64).determinant();
    Ok(ZMatrix { entries, det, sqrt_abs_det, det_float })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapEstimate {
    pub lambda_min: f64,
    pub delta: f64,
}

/// `Δ = √(U·λ_min)`.
pub fn gap_estimate(n: &DMatrix<f64>, u: f64) -> Result<GapEstimate, SpectralError> {
    let eig = SymmetricEigen::new(n.clone()).eigenvalues;
    let lambda_min = eig.iter().cloned().fold(f64::INFINITY, f64::min);
    if !(lambda_min > 1e-12) {
        return Err(SpectralError::NotPositiveDefinite(lambda_min));
    }
    Ok(GapEstimate { lambda_min, delta: (u * lambda_min).sqrt() })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    /// All eigenvalues of `2α·iK`, ascending.
    pub eigenvalues: Vec<f64>,
    /// Positive eigenvalues, ascending.
    pub mode_energies: Vec<f64>,
    pub gap: f64,
    pub unique_ground_state: bool,
    /// `max_i |E_i + E_{n−1−i}|`.
    pub symmetry_defect: f64,
}

/// Normal modes of `α Σ ŵ_e²` with `iK_{ee'} = [ŵ_e, ŵ_{e'}]`.
pub fn quadratic_spectrum(w: &[QuadratureForm], alpha: f64) -> Spectrum {
    let n = w.len();
    let h = DMatrix::from_fn(n, n, |i, j| Complex64::new(0.0, 2.0 * alpha * w[i].commutator(&w[j])));
    let mut eigenvalues: Vec<f64> = SymmetricEigen::new(h).eigenvalues.iter().cloned().collect();
    eigenvalues.sort_by(f64::total_cmp);
    let tol = 1e-9 * alpha.max(1.0);
    let mode_energies: Vec<f64> = eigenvalues.iter().cloned().filter(|&e| e > tol).collect();
    let gap = mode_energies.first().copied().unwrap_or(0.0);
    let unique_ground_state = eigenvalues.iter().all(|e| e.abs() > tol);
    let symmetry_defect = (0..n).map(|i| (eigenvalues[i] + eigenvalues[n - 1 - i]).abs()).fold(0.0, f64::max);
    Spectrum { eigenvalues, mode_energies, gap, unique_ground_state, symmetry_defect }
}

/// `√|det 𝒵|` over all layers, divided by the `|𝒜/𝓑|^{L²−1}` states labelled by
/// independent vertex terms (`∏_v S_v = 1`). `None` when a continuous factor survives.
pub fn effective_degeneracy(code: &LatticeCode) -> Result<Option<BigInt>, SpectralError> {
    if code.outcome.continuous.is_some() || !code.outcome.subgroup.continuous.is_empty() {
        return Ok(None);
    }
    let t = &code.torus;
    let cs: Vec<Displacement> = code
        .outcome
        .subgroup
        .discrete
        .iter()
        .flat_map(|x| (0..t.n_edges()).map(move |e| (x, e)))
        .map(|(x, e)| code.hop(t.edge_at(e), x))
        .collect();
    let z = z_matrix(&cs)?;
    let Some(root) = z.sqrt_abs_det else {
        return Ok(None);
    };
    if root.is_zero() {
        return Ok(None);
    }
    let per_site = BigInt::from(code.outcome.finite.size());
    let labelled = num_traits::pow(per_site, t.n_sites() - 1);
    if &root % &labelled != BigInt::zero() {
        return Err(SpectralError::NotApplicable(format!("√|det 𝒵| = {root} is not a multiple of {labelled}")));
    }
    Ok(Some(root / labelled))
}
