#![allow(dead_code)]

use std::sync::OnceLock;

use proptest::prelude::*;
use rgauge_core::arith::rat;
use num_traits::Zero;
use rgauge_core::condense::{coset_normal_form, representative, CondensationOutcome};
use rgauge_core::lattice::logical::homologous_representatives;
use rgauge_core::linalg;
use rgauge_core::spectral::z_matrix;
use rgauge_core::{condense, Displacement, FluxCharge, LatticeCode, Surd, Taxonomy};

pub fn outcome(t: &str) -> CondensationOutcome {
    condense(&t.parse::<Taxonomy>().unwrap().generators().unwrap()).unwrap()
}

pub fn surd() -> impl Strategy<Value = Surd> {
    (-20i64..=20, 1i64..=12, -20i64..=20, 1i64..=12)
        .prop_map(|(p, q, r, s)| Surd::new(rat(p, q), rat(r, s), 2).unwrap())
}

pub fn anyon() -> impl Strategy<Value = FluxCharge> {
    (surd(), surd()).prop_map(|(f, c)| FluxCharge::new(f, c))
}

pub const FAMILIES: [&str; 6] = ["flux", "flux-charge(3)", "composite(2)", "double(1,2)", "double(2,3)", "even-K(1,1,2)"];

pub fn outcomes() -> &'static Vec<CondensationOutcome> {
    static O: OnceLock<Vec<CondensationOutcome>> = OnceLock::new();
    O.get_or_init(|| FAMILIES.iter().map(|t| outcome(t)).collect())
}

/// A deconfined anyon and a condensed boson from integer and rational coordinates.
pub fn sample(o: &CondensationOutcome, a: &[i64], t: &Surd, b: &[i64]) -> (FluxCharge, FluxCharge) {
    let mut x = FluxCharge::zero();
    for (g, k) in o.deconfined.discrete.iter().zip(a) {
        x = &x + &g.scale_int(*k);
    }
    if let Some(c) = &o.deconfined.continuous {
        x = x.checked_add(&c.scale(t).unwrap()).unwrap();
    }
    let mut boson = FluxCharge::zero();
    for (g, k) in o.subgroup.discrete.iter().zip(b) {
        boson = &boson + &g.scale_int(*k);
    }
    (x, boson)
}

pub fn codes() -> &'static Vec<LatticeCode> {
    static C: OnceLock<Vec<LatticeCode>> = OnceLock::new();
    C.get_or_init(|| {
        ["double(1,2)", "flux-charge(2)", "composite(1)"].iter().map(|t| LatticeCode::build(&outcome(t), 3).unwrap()).collect()
    })
}


/// Normal form is idempotent, differs from its input by a boson and ignores added bosons.
pub fn normal_form_check(o: &CondensationOutcome, a: &[i64], b: &[i64], t: &Surd) -> Result<(), String> {
    let (x, boson) = sample(o, a, t, b);
    let label = coset_normal_form(&x, o).map_err(|e| e.to_string())?;
    let rep = representative(&label, o).map_err(|e| e.to_string())?;
    if !o.subgroup.contains(&(&x - &rep)).unwrap() {
        return Err(format!("{x} - {rep} is not condensed"));
    }
    if coset_normal_form(&rep, o).unwrap() != label {
        return Err(format!("normal form of {rep} is not {label}"));
    }
    if coset_normal_form(&(&x + &boson), o).unwrap() != label {
        return Err(format!("adding {boson} to {x} changes the label"));
    }
    Ok(())
}

/// `W_γ(x)` on two homologous cycles: both logical, and their quotient is a stabilizer.
pub fn homology_check(code: &LatticeCode, k: &[i64], shift: i64) -> Result<(), String> {
    let mut x = FluxCharge::zero();
    for (g, k) in code.outcome.finite_generators.iter().zip(k) {
        x = &x + &g.scale_int(*k);
    }
    let (w, w2) = homologous_representatives(code, &x, shift);
    if !code.stabilizers.syndrome(&w).violated.is_empty() {
        return Err(format!("W({x}) is not logical"));
    }
    if !code.contains(&w.compose(&w2.inverse())) {
        return Err(format!("W({x}) shifted by {shift} is not homologous"));
    }
    Ok(())
}

/// Rank of the hopping exponents of both layers, the phase-space dimension,
/// and whether their pairing matrix is nondegenerate.
pub fn hopping_rank(n: i64, m: i64, l: usize) -> (usize, usize, bool) {
    let o = condense(&Taxonomy::Double(n, m).generators().unwrap()).unwrap();
    let code = LatticeCode::build(&o, l).unwrap();
    let t = &code.torus;
    let ops: Vec<Displacement> = o
        .subgroup
        .discrete
        .iter()
        .flat_map(|b| (0..t.n_edges()).map(|e| code.hop(t.edge_at(e), b)).collect::<Vec<_>>())
        .collect();
    let rows: Vec<Vec<Surd>> = ops.iter().map(Displacement::exponents).collect();
    let z = z_matrix(&ops).unwrap();
    (linalg::rank(&rows).unwrap(), 2 * t.n_edges(), !z.det.is_zero())
}
