//! Logical content on the torus: non-contractible hopping strings, quantised
//! against every stabilizer and paired into qudit, rotor and CV factors.

use serde::{Deserialize, Serialize};

use super::code::{centralizer, operator_from_cochain, Family, LatticeCode, ParamDomain};
use super::geometry::{single_edge, symplectic_value, Displacement, Edge, EdgeKind, Torus};
use super::LatticeError;
use crate::anyon::{braiding, braiding_value, FluxCharge};
use crate::arith::{PhaseFraction, Surd};
use crate::condense::{ContinuousKind, EncodedFactor};
use crate::domain::Domain;
use crate::finite::AnyonLabel;

/// Signed edge lists for two direct cycles and two dual cocycles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyBasis {
    pub eta: [Vec<(Edge, i64)>; 2],
    pub gamma: [Vec<(Edge, i64)>; 2],
}

impl HomologyBasis {
    /// `η₁` along row `j0`, `η₂` along column `i0`; `γ₁` crosses the
    /// horizontal edges of column `i0`, `γ₂` the vertical edges of row `j0`.
    pub fn at(t: &Torus, i0: i64, j0: i64) -> Self {
        let l = t.l as i64;
        Self {
            eta: [(0..l).map(|i| (Edge::h(i, j0), 1)).collect(), (0..l).map(|j| (Edge::v(i0, j), 1)).collect()],
            gamma: [(0..l).map(|j| (Edge::h(i0, j), 1)).collect(), (0..l).map(|i| (Edge::v(i, j0), 1)).collect()],
        }
    }

    pub fn standard(t: &Torus) -> Self {
        Self::at(t, 0, 0)
    }

    pub fn intersection_matrix(&self, t: &Torus) -> [[i64; 2]; 2] {
        std::array::from_fn(|i| std::array::from_fn(|j| t.intersection(&self.eta[i], &self.gamma[j])))
    }
}

/// `W_γ(x) = Ξ(γ ⊗ x)`: hops of `x` across every edge of the cocycle.
pub fn string_operator(code: &LatticeCode, gamma: &[(Edge, i64)], x: &FluxCharge) -> Displacement {
    let cochain: Vec<(Edge, FluxCharge)> = gamma.iter().map(|(e, s)| (*e, x.scale_int(*s))).collect();
    operator_from_cochain(&code.pattern, &code.torus, &cochain)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogicalFactor {
    pub kind: EncodedFactor,
    /// String along `γ₁` and its anyon label.
    pub x_anyon: FluxCharge,
    /// String along `γ₂` and its anyon label.
    pub z_anyon: FluxCharge,
    pub x_domain: ParamDomain,
    pub z_domain: ParamDomain,
    /// Unreduced `f(W_{γ₁}(x), W_{γ₂}(z))` at unit parameters.
    pub pairing: Surd,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogicalContent {
    pub intersection: [[i64; 2]; 2],
    /// Anyons whose `γ` strings commute with every stabilizer.
    pub string_domain: Domain,
    pub factors: Vec<LogicalFactor>,
    /// Phases between the operators `X₁, Z₁, X₂, Z₂, …` in factor order.
    pub commutation: Vec<Vec<PhaseFraction>>,
    /// `∏ dᵢ` over qudit factors, when nothing continuous survives.
    pub dimension: Option<u64>,
    /// Every check in [`LogicalContent::checks`] passed.
    pub pass: bool,
    pub checks: Vec<(String, bool)>,
}

impl LogicalContent {
    pub fn kinds(&self) -> Vec<EncodedFactor> {
        self.factors.iter().map(|f| f.kind.clone()).collect()
    }
}

/// Bilinear form `(x, y) ↦ f(W_{γ₁}(x), W_{γ₂}(y))` on unit vectors.
fn string_pairing(code: &LatticeCode, b: &HomologyBasis) -> [[Surd; 2]; 2] {
    let units = [FluxCharge::ints(1, 0), FluxCharge::ints(0, 1)];
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            symplectic_value(&string_operator(code, &b.gamma[0], &units[i]), &string_operator(code, &b.gamma[1], &units[j]))
        })
    })
}

/// Commutes with every stabilizer; `real` asks for every real multiple as well.
fn commutes_with_all(code: &LatticeCode, op: &Displacement, real: bool) -> bool {
    code.stabilizers.generators.iter().all(|g| {
        let f = symplectic_value(op, &g.op);
        if real || g.domain == ParamDomain::Real {
            f.is_zero()
        } else {
            f.is_integer()
        }
    })
}

/// A label `h` with `⟨gⱼ, h⟩ = δᵢⱼ/dᵢ`, by brute force over the finite theory.
fn dual_partner(code: &LatticeCode, i: usize) -> Option<FluxCharge> {
    let fin = &code.outcome.finite;
    let gens = &code.outcome.finite_generators;
    fin.labels().into_iter().find_map(|AnyonLabel(l)| {
        let ok = (0..gens.len()).all(|j| {
            let want = if i == j { PhaseFraction::from_rational(1, fin.orders[i] as i64) } else { PhaseFraction::zero() };
            fin.braiding(&AnyonLabel(vec_unit(gens.len(), j)), &AnyonLabel(l.clone())) == want
        });
        ok.then(|| {
            l.iter().zip(gens).fold(FluxCharge::zero(), |acc, (&k, g)| &acc + &g.scale_int(k as i64))
        })
    })
}

fn vec_unit(n: usize, j: usize) -> Vec<u64> {
    (0..n).map(|i| (i == j) as u64).collect()
}

/// Single-edge operators that commute with everything must be stabilizers.
pub fn check_local_maximality(code: &LatticeCode) -> Result<(), LatticeError> {
    let t = &code.torus;
    for e in [Edge::h(0, 0), Edge::v(0, 0)] {
        let fam = Family {
            name: format!("edge {e}"),
            basis: vec![vec![single_edge(t, e, &Surd::one(), &Surd::zero()), single_edge(t, e, &Surd::zero(), &Surd::one())]],
        };
        let dom = centralizer(&fam, &code.stabilizers.generators)?;
        let at = |v: &[Surd]| single_edge(t, e, &v[0], &v[1]);
        for v in &dom.continuous {
            if !code.stabilizers.contains_real(&at(v)) {
                return Err(LatticeError::NonMaximal(format!("{e} with exponents ({}, {}) for all real powers", v[0], v[1])));
            }
        }
        for v in &dom.discrete {
            if !code.contains(&at(v)) {
                return Err(LatticeError::NonMaximal(format!("{e} with exponents ({}, {})", v[0], v[1])));
            }
        }
    }
    Ok(())
}

pub fn logical_operators(code: &LatticeCode, basis: &HomologyBasis) -> Result<LogicalContent, LatticeError> {
    check_local_maximality(code)?;
    let t = &code.torus;
    let mut checks: Vec<(String, bool)> = Vec::new();
    let intersection = basis.intersection_matrix(t);
    checks.push(("intersection matrix is the identity".into(), intersection == [[1, 0], [0, 1]]));

    // sign so that f(W_γ₁(x), W_γ₂(y)) = +⟨x, y⟩
    let m = string_pairing(code, basis);
    let zero = Surd::zero();
    let sign = if m[0][1] == Surd::one() && m[1][0] == Surd::one() && m[0][0] == zero && m[1][1] == zero {
        1
    } else if m[0][1] == Surd::int(-1) && m[1][0] == Surd::int(-1) && m[0][0] == zero && m[1][1] == zero {
        -1
    } else {
        checks.push((format!("string pairing is ±braiding (got {m:?})"), false));
        1
    };
    let g2: Vec<(Edge, i64)> = basis.gamma[1].iter().map(|(e, s)| (*e, s * sign)).collect();
    let w1 = |x: &FluxCharge| string_operator(code, &basis.gamma[0], x);
    let w2 = |x: &FluxCharge| string_operator(code, &g2, x);

    // quantisation of γ₁ strings against every stabilizer
    let fam = Family { name: "W_gamma1".into(), basis: vec![vec![w1(&FluxCharge::ints(1, 0)), w1(&FluxCharge::ints(0, 1))]] };
    let string_domain = centralizer(&fam, &code.stabilizers.generators)?;
    let a = code.outcome.deconfined.domain();
    let same = string_domain.continuous.len() == a.continuous.len()
        && string_domain.discrete.iter().chain(&string_domain.continuous).all(|v| a.contains(v).unwrap_or(false))
        && a.discrete.iter().chain(&a.continuous).all(|v| string_domain.contains(v).unwrap_or(false));
    checks.push(("string quantisation reproduces the deconfined set".into(), same));

    let mut factors = Vec::new();
    for (i, g) in code.outcome.finite_generators.iter().enumerate() {
        let d = code.outcome.finite.orders[i];
        let Some(h) = dual_partner(code, i) else {
            checks.push((format!("dual partner for generator {i}"), false));
            continue;
        };
        factors.push(LogicalFactor {
            kind: EncodedFactor::Qudit(d),
            x_anyon: g.clone(),
            z_anyon: h.clone(),
            x_domain: ParamDomain::Integer,
            z_domain: ParamDomain::Integer,
            pairing: symplectic_value(&w1(g), &w2(&h)),
        });
    }
    if let Some(c) = &code.outcome.continuous {
        match c.kind {
            ContinuousKind::Real => factors.push(LogicalFactor {
                kind: EncodedFactor::Cv,
                x_anyon: c.direction.clone(),
                z_anyon: c.direction.clone(),
                x_domain: ParamDomain::Real,
                z_domain: ParamDomain::Real,
                pairing: symplectic_value(&w1(&c.direction), &w2(&c.direction)),
            }),
            ContinuousKind::Rotor => {
                let p = c.partner.clone().expect("rotor partner");
                for (x, xd, z, zd) in [
                    (&p, ParamDomain::Integer, &c.direction, ParamDomain::Real),
                    (&c.direction, ParamDomain::Real, &p, ParamDomain::Integer),
                ] {
                    factors.push(LogicalFactor {
                        kind: EncodedFactor::Rotor,
                        x_anyon: x.clone(),
                        z_anyon: z.clone(),
                        x_domain: xd,
                        z_domain: zd,
                        pairing: symplectic_value(&w1(x), &w2(z)),
                    });
                }
            }
        }
    }

    let mut ops: Vec<(Displacement, ParamDomain)> = Vec::new();
    for f in &factors {
        ops.push((w1(&f.x_anyon), f.x_domain));
        ops.push((w2(&f.z_anyon), f.z_domain));
    }
    let commutation: Vec<Vec<PhaseFraction>> =
        ops.iter().map(|(u, _)| ops.iter().map(|(v, _)| PhaseFraction::new(symplectic_value(u, v))).collect()).collect();

    for (k, (op, dom)) in ops.iter().enumerate() {
        checks.push((format!("logical {k} commutes with the stabilizers"), commutes_with_all(code, op, *dom == ParamDomain::Real)));
        // a real family is probed at half its unit parameter, inside the U(1) period
        let probe = if *dom == ParamDomain::Real { op.power(&Surd::frac(1, 2))? } else { op.clone() };
        checks.push((format!("logical {k} is not a stabilizer"), !code.contains(&probe)));
    }
    // off-diagonal blocks vanish; diagonal blocks match the declared factor
    for (i, f) in factors.iter().enumerate() {
        for (j, _) in factors.iter().enumerate() {
            if i == j {
                continue;
            }
            let block = [(2 * i, 2 * j), (2 * i, 2 * j + 1), (2 * i + 1, 2 * j), (2 * i + 1, 2 * j + 1)];
            let ok = block.iter().all(|&(a, b)| {
                let v = symplectic_value(&ops[a].0, &ops[b].0);
                if ops[a].1 == ParamDomain::Real || ops[b].1 == ParamDomain::Real { v.is_zero() } else { v.is_integer() }
            });
            checks.push((format!("factors {i} and {j} commute"), ok));
        }
        let ok = match f.kind {
            EncodedFactor::Qudit(d) => {
                let ph = PhaseFraction::new(f.pairing.clone());
                let (x, z) = (&ops[2 * i].0, &ops[2 * i + 1].0);
                ph.order() == Some(d)
                    && code.contains(&x.power_int(d as i64))
                    && code.contains(&z.power_int(d as i64))
                    && braiding(&f.x_anyon, &f.z_anyon) == ph
            }
            EncodedFactor::Rotor => f.pairing.is_rational() && !f.pairing.is_zero(),
            EncodedFactor::Cv => !f.pairing.is_zero() && f.pairing == braiding_value(&f.x_anyon, &f.z_anyon),
        };
        checks.push((format!("factor {i} pairing matches {}", f.kind), ok));
    }
    let dimension = code
        .outcome
        .continuous
        .is_none()
        .then(|| factors.iter().map(|f| if let EncodedFactor::Qudit(d) = f.kind { d } else { 1 }).product());
    if let (Some(d), Some(g)) = (dimension, code.outcome.gsd_torus()) {
        checks.push(("qudit dimensions multiply to the torus degeneracy".into(), d == g));
    }
    let pass = checks.iter().all(|(_, ok)| *ok);
    Ok(LogicalContent { intersection, string_domain, factors, commutation, dimension, pass, checks })
}

/// Two representatives of `W_γ₁(x)` on homologous cocycles differ by a stabilizer.
pub fn homologous_representatives(code: &LatticeCode, x: &FluxCharge, shift: i64) -> (Displacement, Displacement) {
    let t = &code.torus;
    let a = HomologyBasis::at(t, 0, 0);
    let b = HomologyBasis::at(t, shift, shift);
    (string_operator(code, &a.gamma[0], x), string_operator(code, &b.gamma[0], x))
}

/// Edges of a given orientation as a cocycle-like list, for completeness checks.
pub fn all_edges(t: &Torus, kind: EdgeKind) -> Vec<Edge> {
    (0..t.n_sites()).map(|i| {
        let (x, y) = t.site_coords(i);
        Edge { kind, x, y }
    }).collect()
}
