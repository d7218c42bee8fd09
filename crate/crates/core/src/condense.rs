//! Boson condensation: pick a boson subgroup 𝓑, keep the excitations that
//! braid trivially with it, identify those differing by an element of 𝓑.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::anyon::{braiding, braiding_value, common_discriminant, spin, spin_value, FluxCharge};
use crate::arith::{squarefree_decompose, ArithError, Surd};
use crate::domain::{self, Domain};
use crate::finite::{FiniteAnyonTheory, FiniteError};
use crate::linalg::{self, smith_normal_form, IntEchelon};

#[derive(Debug, Error, PartialEq)]
pub enum CondenseError {
    #[error("generator {0} is not a boson")]
    NonBoson(FluxCharge),
    #[error("generators {0} and {1} braid nontrivially")]
    NontrivialMutualBraiding(FluxCharge, FluxCharge),
    #[error("cross braiding {0} is not an even integer; no commuting hopping basis")]
    OddCrossBraiding(Surd),
    #[error("generators are linearly dependent")]
    DependentGenerators,
    #[error("expected one or two generators, got {0}")]
    GeneratorCount(usize),
    #[error("condensed boson {0} is not deconfined")]
    BNotContained(FluxCharge),
    #[error("relation matrix has a non-integer entry {0}")]
    NonIntegerRelationMatrix(Surd),
    #[error("{0} braids nontrivially with the condensate")]
    Confined(FluxCharge),
    #[error("outcome outside the known taxonomy: {0}")]
    Unclassified(String),
    #[error("invalid taxonomy parameters: {0}")]
    InvalidParameters(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Finite(#[from] FiniteError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SubgroupClass {
    Z,
    ZxZ,
    R,
    ZxR,
}

/// How hopping operators dress the edge displacement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HoppingBasis {
    /// `X_e^{φ̂}` with `Z^c` on the single edge joining the two charge sites.
    /// Enough when every generator is a pure flux or a pure charge.
    SingleSite,
    /// Half-integer `Z` dressing on both plaquettes adjacent to the edge.
    /// Needs an even cross braiding between generators.
    Dressed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BosonSubgroup {
    pub discrete: Vec<FluxCharge>,
    pub continuous: Vec<FluxCharge>,
    pub class: SubgroupClass,
    pub discriminant: u64,
    /// Unreduced `⟨b₀, b₁⟩` for two discrete generators.
    pub cross_braiding: Option<Surd>,
    pub hopping_basis: HoppingBasis,
}

impl BosonSubgroup {
    pub fn generators(&self) -> impl Iterator<Item = &FluxCharge> {
        self.discrete.iter().chain(&self.continuous)
    }

    pub fn is_pure(&self) -> bool {
        self.generators().all(|b| b.flux.is_zero() || b.charge.is_zero())
    }

    /// `x` braids trivially with every element of 𝓑.
    pub fn deconfines(&self, x: &FluxCharge) -> bool {
        self.discrete.iter().all(|b| braiding(b, x).is_trivial())
            && self.continuous.iter().all(|b| braiding_value(b, x).is_zero())
    }

    /// `x ∈ 𝓑`.
    pub fn contains(&self, x: &FluxCharge) -> Result<bool, ArithError> {
        let d = Domain {
            dim: 2,
            continuous: self.continuous.iter().map(FluxCharge::to_vec).collect(),
            discrete: self.discrete.iter().map(FluxCharge::to_vec).collect(),
        };
        d.contains(&x.to_vec())
    }
}

pub fn validate_subgroup(generators: &[FluxCharge]) -> Result<BosonSubgroup, CondenseError> {
    validate_subgroup_with(generators, &[])
}

/// Validate discrete (`ℤ`) and continuous (`ℝ`) generators.
pub fn validate_subgroup_with(
    discrete: &[FluxCharge],
    continuous: &[FluxCharge],
) -> Result<BosonSubgroup, CondenseError> {
    let n = discrete.len() + continuous.len();
    if n == 0 || n > 2 {
        return Err(CondenseError::GeneratorCount(n));
    }
    let d = common_discriminant(discrete.iter().chain(continuous))?;
    let all: Vec<&FluxCharge> = discrete.iter().chain(continuous).collect();
    if all.iter().any(|b| b.is_zero()) {
        return Err(CondenseError::DependentGenerators);
    }
    for b in discrete {
        if !spin(b).is_trivial() {
            return Err(CondenseError::NonBoson(b.clone()));
        }
    }
    // t·b is a boson for every real t only if φ̂c vanishes
    for b in continuous {
        if !spin_value(b).is_zero() {
            return Err(CondenseError::NonBoson(b.clone()));
        }
    }
    let mut cross = None;
    if n == 2 {
        let (x, y) = (all[0], all[1]);
        let v = braiding_value(x, y);
        let trivial = if continuous.is_empty() { v.is_integer() } else { v.is_zero() };
        if !trivial {
            return Err(CondenseError::NontrivialMutualBraiding(x.clone(), y.clone()));
        }
        let det = &x.flux * &y.charge - &x.charge * &y.flux;
        if det.is_zero() {
            return Err(CondenseError::DependentGenerators);
        }
        if continuous.is_empty() {
            cross = Some(v);
        }
    }
    let class = match (discrete.len(), continuous.len()) {
        (1, 0) => SubgroupClass::Z,
        (2, 0) => SubgroupClass::ZxZ,
        (0, _) => SubgroupClass::R,
        _ => SubgroupClass::ZxR,
    };
    let pure = all.iter().all(|b| b.flux.is_zero() || b.charge.is_zero());
    let hopping_basis = if pure { HoppingBasis::SingleSite } else { HoppingBasis::Dressed };
    if let (HoppingBasis::Dressed, Some(c)) = (hopping_basis, &cross) {
        let even = c.to_integer().is_some_and(|k| (k % BigInt::from(2)).is_zero());
        if !even {
            return Err(CondenseError::OddCrossBraiding(c.clone()));
        }
    }
    Ok(BosonSubgroup {
        discrete: discrete.to_vec(),
        continuous: continuous.to_vec(),
        class,
        discriminant: d,
        cross_braiding: cross,
        hopping_basis,
    })
}

/// 𝒜_𝓑: a lattice of discrete generators plus at most one continuous direction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeconfinedSet {
    pub discrete: Vec<FluxCharge>,
    pub continuous: Option<FluxCharge>,
}

impl DeconfinedSet {
    pub fn domain(&self) -> Domain {
        Domain {
            dim: 2,
            continuous: self.continuous.iter().map(FluxCharge::to_vec).collect(),
            discrete: self.discrete.iter().map(FluxCharge::to_vec).collect(),
        }
    }
}

/// Unit-normalise a direction: flux 1 when it has flux, else charge 1.
fn normalize_direction(v: &FluxCharge) -> Result<FluxCharge, ArithError> {
    let pivot = if v.flux.is_zero() { &v.charge } else { &v.flux };
    v.scale(&pivot.inv()?)
}

pub fn deconfined_set(b: &BosonSubgroup) -> Result<DeconfinedSet, CondenseError> {
    let integer: Vec<Vec<Surd>> = b.discrete.iter().map(FluxCharge::braiding_row).collect();
    let zero: Vec<Vec<Surd>> = b.continuous.iter().map(FluxCharge::braiding_row).collect();
    let dom = domain::solve(2, &integer, &zero)?;
    let continuous = match dom.continuous.as_slice() {
        [] => None,
        [v] => Some(normalize_direction(&FluxCharge::from_slice(v))?),
        _ => unreachable!("a nonzero boson imposes at least one condition"),
    };
    Ok(DeconfinedSet { discrete: dom.discrete.iter().map(|v| FluxCharge::from_slice(v)).collect(), continuous })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ContinuousKind {
    /// Non-compact ℝ; one CV per handle pair.
    Real,
    /// `U(1) × ℤ`: a compact direction with an integer partner; rotors.
    Rotor,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContinuousFactor {
    pub kind: ContinuousKind,
    pub direction: FluxCharge,
    /// Unreduced `⟨dir, dir⟩`, the braiding block of the factor.
    pub self_braiding: Surd,
    /// Period of the compact direction (rotor only).
    pub period: Option<Surd>,
    /// Integer partner of the compact direction (rotor only).
    pub partner: Option<FluxCharge>,
}

/// Change-of-basis data for coset normal forms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum CosetBasis {
    Trivial,
    /// Labels are `a·Q mod dᵢ`, with `a` the coordinates in the 𝒜 basis.
    Discrete { q: Vec<Vec<i64>>, orders: Vec<u64> },
    /// `q·g + α·dir`, `q ∈ ℤ_order`.
    Mixed { order: u64 },
    /// `k·partner + α·dir`, `α ∈ [0, period)`.
    Rotor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    /// Pure flux (or, by exchange, pure charge): U(1) gauge theory.
    HomologicalRotor,
    /// Pure flux and pure charge: ℤₙ gauge theory.
    ToricGkp,
    /// One composite: U(1)_{2n} × ℝ.
    CompositeU1,
    /// Two composites with vanishing cross braiding.
    DoubleU1,
    /// Two generators with nonzero cross braiding.
    EvenK,
    /// A continuous boson factor; nothing survives.
    Degenerate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CondensationOutcome {
    pub subgroup: BosonSubgroup,
    pub deconfined: DeconfinedSet,
    pub finite: FiniteAnyonTheory,
    /// Representatives of the cyclic generators of `finite`.
    pub finite_generators: Vec<FluxCharge>,
    /// Invariant factors of the finite part.
    pub invariant_factors: Vec<u64>,
    pub continuous: Option<ContinuousFactor>,
    /// 𝓑 generators in 𝒜 coordinates, one row each.
    pub relation_matrix: Vec<Vec<Surd>>,
    pub coset: CosetBasis,
    pub classification: Classification,
    pub warnings: Vec<String>,
}

impl CondensationOutcome {
    /// Torus ground-state degeneracy; `None` when a continuous factor survives.
    pub fn gsd_torus(&self) -> Option<u64> {
        self.continuous.is_none().then(|| self.finite.size())
    }

    /// K-matrix of the condensate, `Kᵢⱼ = ⟨bᵢ, bⱼ⟩` (unreduced).
    pub fn k_matrix(&self) -> Vec<Vec<Surd>> {
        let b = &self.subgroup.discrete;
        b.iter().map(|x| b.iter().map(|y| braiding_value(x, y)).collect()).collect()
    }
}

fn int_entry(s: &Surd) -> Result<i64, CondenseError> {
    s.to_i64().ok_or_else(|| CondenseError::NonIntegerRelationMatrix(s.clone()))
}

fn combine(coefs: &[i64], gens: &[FluxCharge]) -> FluxCharge {
    let mut acc = FluxCharge::zero();
    for (k, g) in coefs.iter().zip(gens) {
        acc = &acc + &g.scale_int(*k);
    }
    acc
}

fn finite_theory(gens: &[FluxCharge], orders: &[u64]) -> Result<FiniteAnyonTheory, CondenseError> {
    let spins = gens.iter().map(spin).collect();
    let braidings = gens.iter().map(|x| gens.iter().map(|y| braiding(x, y)).collect()).collect();
    Ok(FiniteAnyonTheory::new(orders.to_vec(), spins, braidings)?)
}

fn classify_subgroup(b: &BosonSubgroup) -> Classification {
    let pure = |x: &FluxCharge| x.flux.is_zero() || x.charge.is_zero();
    if !b.continuous.is_empty() {
        return Classification::Degenerate;
    }
    match b.discrete.as_slice() {
        [x] if pure(x) => Classification::HomologicalRotor,
        [_] => Classification::CompositeU1,
        [x, y] if pure(x) && pure(y) => Classification::ToricGkp,
        [x, y] if braiding_value(x, y).is_zero() => Classification::DoubleU1,
        _ => Classification::EvenK,
    }
}

/// 𝒜_𝓑 / 𝓑 with spins and braidings recomputed on representatives.
pub fn quotient(a: &DeconfinedSet, b: &BosonSubgroup) -> Result<CondensationOutcome, CondenseError> {
    let classification = classify_subgroup(b);
    let mut warnings = Vec::new();
    let dom = a.domain();
    for g in b.discrete.iter() {
        if !b.deconfines(g) {
            return Err(CondenseError::BNotContained(g.clone()));
        }
    }
    let outcome = |finite, finite_generators, invariant_factors, continuous, relation_matrix, coset, warnings| {
        CondensationOutcome {
            subgroup: b.clone(),
            deconfined: a.clone(),
            finite,
            finite_generators,
            invariant_factors,
            continuous,
            relation_matrix,
            coset,
            classification,
            warnings,
        }
    };

    if !b.continuous.is_empty() {
        warnings.push("continuous boson factor: the condensate has only trivial excitations".to_string());
        return Ok(outcome(
            FiniteAnyonTheory::trivial(),
            vec![],
            vec![],
            None,
            vec![],
            CosetBasis::Trivial,
            warnings,
        ));
    }

    // 𝓑 generators in the 𝒜 basis (continuous coordinate first, if any)
    let mut rows: Vec<Vec<Surd>> = Vec::new();
    for g in &b.discrete {
        let (c, d) = dom.coordinates(&g.to_vec())?.ok_or_else(|| CondenseError::BNotContained(g.clone()))?;
        for x in &d {
            int_entry(x)?;
        }
        rows.push(c.into_iter().chain(d).collect());
    }

    match &a.continuous {
        None => {
            let r: Vec<Vec<i64>> = rows
                .iter()
                .map(|row| row.iter().map(int_entry).collect::<Result<_, _>>())
                .collect::<Result<_, _>>()?;
            let k = r.len();
            let diagonal = (0..k).all(|i| (0..k).all(|j| i == j || r[i][j] == 0));
            let (diag, q): (Vec<i128>, Vec<Vec<i128>>) = if diagonal {
                // keep the natural splitting, e.g. ℤ₄×ℤ₆ rather than ℤ₂×ℤ₁₂
                (
                    (0..k).map(|i| (r[i][i] as i128).abs()).collect(),
                    (0..k).map(|i| (0..k).map(|j| (i == j) as i128).collect()).collect(),
                )
            } else {
                let s = smith_normal_form(&r.iter().map(|row| row.iter().map(|&x| x as i128).collect()).collect::<Vec<_>>());
                (s.diag, s.q)
            };
            let qinv = linalg::unimodular_inverse(&q);
            let mut gens = Vec::new();
            let mut orders = Vec::new();
            for i in 0..k {
                if diag[i] == 1 {
                    continue;
                }
                if diag[i] == 0 {
                    return Err(CondenseError::Unclassified("infinite cyclic factor in a discrete quotient".into()));
                }
                let coefs: Vec<i64> = qinv[i].iter().map(|&x| x as i64).collect();
                gens.push(combine(&coefs, &a.discrete));
                orders.push(diag[i] as u64);
            }
            let finite = finite_theory(&gens, &orders)?;
            let invariant_factors = invariant_factors(&orders);
            if classification == Classification::DoubleU1 {
                warnings.push(
                    "condensed braiding recomputed from representatives: the closed form π(k₁k₁'/2n − k₂k₂'/2m) is low by a factor 2".into(),
                );
            }
            let coset = CosetBasis::Discrete {
                q: q.iter().map(|row| row.iter().map(|&x| x as i64).collect()).collect(),
                orders: diag.iter().map(|&x| x as u64).collect(),
            };
            Ok(outcome(finite, gens, invariant_factors, None, rows, coset, warnings))
        }
        Some(dir) => {
            let g = &a.discrete[0];
            let t = rows[0][0].clone();
            let m = int_entry(&rows[0][1])?;
            let self_braiding = braiding_value(dir, dir);
            if m != 0 {
                let g2 = g.checked_add(&dir.scale(&t.checked_div(&Surd::int(m))?)?)?;
                let order = m.unsigned_abs();
                let (gens, orders) = if order == 1 { (vec![], vec![]) } else { (vec![g2.clone()], vec![order]) };
                let finite = finite_theory(&gens, &orders)?;
                if classification == Classification::CompositeU1 {
                    warnings.push("[q, α] labels use the representative q·g + α·dir whose continuous part is deconfined".into());
                }
                let cont = ContinuousFactor {
                    kind: ContinuousKind::Real,
                    direction: dir.clone(),
                    self_braiding,
                    period: None,
                    partner: None,
                };
                let invariant_factors = invariant_factors(&orders);
                Ok(outcome(
                    finite,
                    gens,
                    invariant_factors,
                    Some(cont),
                    rows,
                    CosetBasis::Mixed { order },
                    warnings,
                ))
            } else {
                let cont = ContinuousFactor {
                    kind: ContinuousKind::Rotor,
                    direction: dir.clone(),
                    self_braiding,
                    period: Some(t.abs()),
                    partner: Some(g.clone()),
                };
                Ok(outcome(
                    FiniteAnyonTheory::trivial(),
                    vec![],
                    vec![],
                    Some(cont),
                    rows,
                    CosetBasis::Rotor,
                    warnings,
                ))
            }
        }
    }
}

/// Invariant factors of `⊕ ℤ_{dᵢ}`.
pub fn invariant_factors(orders: &[u64]) -> Vec<u64> {
    let k = orders.len();
    let m: Vec<Vec<i128>> = (0..k).map(|i| (0..k).map(|j| if i == j { orders[i] as i128 } else { 0 }).collect()).collect();
    smith_normal_form(&m).diag.into_iter().filter(|&d| d != 1).map(|d| d as u64).collect()
}

pub fn condense(generators: &[FluxCharge]) -> Result<CondensationOutcome, CondenseError> {
    let b = validate_subgroup(generators)?;
    let a = deconfined_set(&b)?;
    quotient(&a, &b)
}

/// Canonical coset label: discrete indices reduced modulo their orders,
/// plus the exact continuous coordinate when present.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetLabel {
    pub discrete: Vec<BigInt>,
    pub continuous: Option<Surd>,
}

impl fmt::Display for CosetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.discrete.iter().map(BigInt::to_string).collect();
        if let Some(c) = &self.continuous {
            parts.push(c.to_string());
        }
        write!(f, "[{}]", parts.join(", "))
    }
}

fn mod_big(x: &BigInt, m: u64) -> BigInt {
    let m = BigInt::from(m);
    ((x % &m) + &m) % &m
}

pub fn coset_normal_form(x: &FluxCharge, o: &CondensationOutcome) -> Result<CosetLabel, CondenseError> {
    if !o.subgroup.deconfines(x) {
        return Err(CondenseError::Confined(x.clone()));
    }
    let label = match &o.coset {
        CosetBasis::Trivial => CosetLabel { discrete: vec![], continuous: None },
        CosetBasis::Discrete { q, orders } => {
            let (_, a) = o.deconfined.domain().coordinates(&x.to_vec())?.ok_or_else(|| CondenseError::Confined(x.clone()))?;
            let a: Vec<BigInt> = a.iter().map(|s| s.to_integer().ok_or_else(|| CondenseError::Confined(x.clone()))).collect::<Result<_, _>>()?;
            let k = a.len();
            let mut out = Vec::new();
            for j in 0..k {
                if orders[j] == 1 {
                    continue;
                }
                let v: BigInt = (0..k).map(|i| &a[i] * BigInt::from(q[i][j])).sum();
                out.push(mod_big(&v, orders[j]));
            }
            CosetLabel { discrete: out, continuous: None }
        }
        CosetBasis::Mixed { order } => {
            let c = o.continuous.as_ref().expect("mixed outcome has a continuous factor");
            let g = o.finite_generators.first().cloned().unwrap_or_else(|| o.deconfined.discrete[0].clone());
            let dom = Domain { dim: 2, continuous: vec![c.direction.to_vec()], discrete: vec![g.to_vec()] };
            let (al, q) = dom.coordinates(&x.to_vec())?.ok_or_else(|| CondenseError::Confined(x.clone()))?;
            let q = q[0].to_integer().ok_or_else(|| CondenseError::Confined(x.clone()))?;
            let discrete = if *order == 1 { vec![] } else { vec![mod_big(&q, *order)] };
            CosetLabel { discrete, continuous: Some(al[0].clone()) }
        }
        CosetBasis::Rotor => {
            let c = o.continuous.as_ref().expect("rotor outcome has a continuous factor");
            let partner = c.partner.as_ref().expect("rotor has an integer partner");
            let period = c.period.as_ref().expect("rotor has a period");
            let dom = Domain { dim: 2, continuous: vec![c.direction.to_vec()], discrete: vec![partner.to_vec()] };
            let (al, k) = dom.coordinates(&x.to_vec())?.ok_or_else(|| CondenseError::Confined(x.clone()))?;
            let k = k[0].to_integer().ok_or_else(|| CondenseError::Confined(x.clone()))?;
            let wraps = al[0].checked_div(period)?.floor();
            let alpha = al[0].checked_sub(&period.checked_mul(&Surd::rational(wraps.into()))?)?;
            CosetLabel { discrete: vec![k], continuous: Some(alpha) }
        }
    };
    let rep = representative(&label, o)?;
    debug_assert!(o.subgroup.contains(&(x - &rep)).unwrap_or(false));
    Ok(label)
}

/// The anyon a label stands for.
pub fn representative(label: &CosetLabel, o: &CondensationOutcome) -> Result<FluxCharge, CondenseError> {
    let ints: Vec<i64> = label
        .discrete
        .iter()
        .map(|k| k.to_i64().ok_or_else(|| CondenseError::InvalidParameters(format!("label index {k} too large"))))
        .collect::<Result<_, _>>()?;
    let mut x = match &o.coset {
        CosetBasis::Rotor => {
            let p = o.continuous.as_ref().and_then(|c| c.partner.clone()).expect("rotor partner");
            p.scale_int(ints[0])
        }
        _ => combine(&ints, &o.finite_generators),
    };
    if let (Some(al), Some(c)) = (&label.continuous, &o.continuous) {
        x = x.checked_add(&c.direction.scale(al)?)?;
    }
    Ok(x)
}

/// Verified normal form: returns the label and checks `x − rep(label) ∈ 𝓑`.
pub fn checked_normal_form(x: &FluxCharge, o: &CondensationOutcome) -> Result<(CosetLabel, FluxCharge), CondenseError> {
    let label = coset_normal_form(x, o)?;
    let rep = representative(&label, o)?;
    if !o.subgroup.contains(&(x - &rep))? {
        return Err(CondenseError::BNotContained(x - &rep));
    }
    Ok((label, rep))
}

/// Encoded content per handle implied by the condensed theory.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum EncodedFactor {
    Qudit(u64),
    Rotor,
    Cv,
}

impl fmt::Display for EncodedFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EncodedFactor::Qudit(d) => write!(f, "qudit({d})"),
            EncodedFactor::Rotor => write!(f, "rotor"),
            EncodedFactor::Cv => write!(f, "CV"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub tag: String,
    pub content: Vec<EncodedFactor>,
    pub description: String,
}

fn k_label(k: &Surd) -> String {
    k.to_string()
}

pub fn classify(o: &CondensationOutcome) -> Result<ClassificationReport, CondenseError> {
    let mut content: Vec<EncodedFactor> = o.finite.orders.iter().map(|&d| EncodedFactor::Qudit(d)).collect();
    match o.continuous.as_ref().map(|c| c.kind) {
        Some(ContinuousKind::Real) => content.push(EncodedFactor::Cv),
        Some(ContinuousKind::Rotor) => content.extend([EncodedFactor::Rotor, EncodedFactor::Rotor]),
        None => {}
    }
    let k = o.k_matrix();
    let (tag, description) = match o.classification {
        Classification::HomologicalRotor => {
            ("homological-rotor / U(1) gauge theory".to_string(), "two quantum rotors".to_string())
        }
        Classification::ToricGkp => {
            let n = o.finite.orders.first().copied().unwrap_or(1);
            (format!("toric-GKP / Z{n} gauge theory"), format!("two qudits of dimension {n}"))
        }
        Classification::CompositeU1 => {
            let order = o.finite.size();
            (format!("U(1)_{order}"), format!("qudit {order} + CV"))
        }
        Classification::DoubleU1 => {
            let (a, b) = (k_label(&k[0][0]), k_label(&k[1][1]));
            (format!("U(1)_{a} x U(1)_{b}"), format!("qudits {}", join_orders(&o.finite.orders)))
        }
        Classification::EvenK => {
            let det = (&k[0][0] * &k[1][1]) - (&k[0][1] * &k[1][0]);
            if !det.is_integer() || det.signum() >= 0 {
                return Err(CondenseError::Unclassified(format!("K matrix with det {det} is not non-chiral even")));
            }
            (
                format!("even-K U(1) x U(1), K = [[{}, {}], [{}, {}]]", k[0][0], k[0][1], k[1][0], k[1][1]),
                format!("qudits {}", join_orders(&o.finite.orders)),
            )
        }
        Classification::Degenerate => ("degenerate (continuous condensate)".to_string(), "nothing encoded".to_string()),
    };
    Ok(ClassificationReport { tag, content, description })
}

fn join_orders(orders: &[u64]) -> String {
    orders.iter().map(u64::to_string).collect::<Vec<_>>().join(" and ")
}

/// Named families of condensates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Taxonomy {
    /// ⟨(1, 0)⟩
    Flux,
    /// ⟨(1, 0), (0, n)⟩
    FluxCharge(i64),
    /// ⟨(1, n)⟩
    Composite(i64),
    /// ⟨(1, n), (−√(m/n), √(nm))⟩
    Double(i64, i64),
    /// ⟨(1, n₁), (n₂/c₂, c₂)⟩ with c₂ = n' + √(n'² − n₁n₂)
    EvenK(i64, i64, i64),
}

impl Taxonomy {
    pub fn generators(&self) -> Result<Vec<FluxCharge>, CondenseError> {
        let bad = |m: &str| Err(CondenseError::InvalidParameters(m.to_string()));
        match *self {
            Taxonomy::Flux => Ok(vec![FluxCharge::ints(1, 0)]),
            Taxonomy::FluxCharge(n) => {
                if n == 0 {
                    return bad("flux-charge(n) needs n ≠ 0");
                }
                Ok(vec![FluxCharge::ints(1, 0), FluxCharge::ints(0, n)])
            }
            Taxonomy::Composite(n) => {
                if n == 0 {
                    return bad("composite(n) needs n ≠ 0; use flux");
                }
                Ok(vec![FluxCharge::ints(1, n)])
            }
            Taxonomy::Double(n, m) => {
                if n <= 0 || m <= 0 {
                    return bad("double(n,m) needs n, m > 0");
                }
                let root = Surd::sqrt_int((n * m) as u64);
                let flux = -&root.scale(&crate::arith::rat(1, n));
                Ok(vec![FluxCharge::ints(1, n), FluxCharge::new(flux, root)])
            }
            Taxonomy::EvenK(n1, n2, np) => {
                if n1 == 0 || n2 == 0 {
                    return bad("even-K needs n₁, n₂ ≠ 0");
                }
                let disc = np * np - n1 * n2;
                if disc <= 0 {
                    return bad("even-K needs n'² > n₁n₂");
                }
                let c2 = &Surd::int(np) + &Surd::sqrt_int(disc as u64);
                let flux = Surd::int(n2).checked_div(&c2)?;
                Ok(vec![FluxCharge::ints(1, n1), FluxCharge::new(flux, c2)])
            }
        }
    }

    /// Discriminant of the field the generators live in.
    pub fn discriminant(&self) -> u64 {
        match *self {
            Taxonomy::Double(n, m) => squarefree_decompose((n * m).unsigned_abs()).1,
            Taxonomy::EvenK(n1, n2, np) => squarefree_decompose((np * np - n1 * n2).unsigned_abs()).1,
            _ => 1,
        }
    }
}

impl fmt::Display for Taxonomy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Taxonomy::Flux => write!(f, "flux"),
            Taxonomy::FluxCharge(n) => write!(f, "flux-charge({n})"),
            Taxonomy::Composite(n) => write!(f, "composite({n})"),
            Taxonomy::Double(n, m) => write!(f, "double({n},{m})"),
            Taxonomy::EvenK(a, b, c) => write!(f, "even-K({a},{b},{c})"),
        }
    }
}

impl FromStr for Taxonomy {
    type Err = CondenseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (name, args) = match s.find('(') {
            Some(i) if s.ends_with(')') => (&s[..i], &s[i + 1..s.len() - 1]),
            Some(_) => return Err(CondenseError::InvalidParameters(format!("unbalanced parentheses in {s}"))),
            None => (s.as_str(), ""),
        };
        let nums: Vec<i64> = if args.is_empty() {
            vec![]
        } else {
            args.split(',')
                .map(|a| a.parse().map_err(|_| CondenseError::InvalidParameters(format!("bad integer {a}"))))
                .collect::<Result<_, _>>()?
        };
        let t = match (name.to_ascii_lowercase().as_str(), nums.as_slice()) {
            ("flux", []) => Taxonomy::Flux,
            ("flux-charge", [n]) => Taxonomy::FluxCharge(*n),
            ("composite", [n]) => Taxonomy::Composite(*n),
            ("double", [n, m]) => Taxonomy::Double(*n, *m),
            ("even-k", [a, b, c]) => Taxonomy::EvenK(*a, *b, *c),
            _ => return Err(CondenseError::InvalidParameters(format!("unknown taxonomy {s}"))),
        };
        Ok(t)
    }
}

/// Whether the 𝓑 generators, read as rows in the 𝒜 basis, span 𝓑 exactly.
pub fn relation_lattice(o: &CondensationOutcome) -> IntEchelon {
    let mut e = IntEchelon::new();
    for row in &o.relation_matrix {
        if let Some(v) = row.iter().map(|s| s.to_integer()).collect::<Option<Vec<_>>>() {
            e.insert(v);
        }
    }
    e
}
