//! Stabilizer sets on the torus: the parent ℝ gauge theory and condensed codes.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::geometry::{
    plaquette_operator, symplectic_value, vertex_operator, Displacement, Edge, Torus,
};
use super::hopping::{synthesize_hopping, HoppingPattern};
use super::LatticeError;
use crate::anyon::FluxCharge;
use crate::arith::Surd;
use crate::condense::CondensationOutcome;
use crate::domain::{self, Domain};
use crate::linalg::{self, IntEchelon, Matrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Anchor {
    Vertex(usize),
    Edge(usize),
    Plaquette(usize),
}

/// Parameter domain of a generator: integer powers or every real power.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ParamDomain {
    Integer,
    Real,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Generator {
    pub family: String,
    pub anchor: Anchor,
    pub domain: ParamDomain,
    pub op: Displacement,
}

impl Generator {
    pub fn label(&self) -> String {
        let a = match self.anchor {
            Anchor::Vertex(i) => format!("v{i}"),
            Anchor::Edge(i) => format!("e{i}"),
            Anchor::Plaquette(i) => format!("p{i}"),
        };
        format!("{}@{a}", self.family)
    }
}

/// Two generators commute when their phase is an integer, or exactly zero
/// if either carries a real parameter.
fn compatible(a: ParamDomain, b: ParamDomain, f: &Surd) -> bool {
    if a == ParamDomain::Real || b == ParamDomain::Real {
        f.is_zero()
    } else {
        f.is_integer()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub first: usize,
    pub second: usize,
    pub first_label: String,
    pub second_label: String,
    /// Unreduced symplectic value.
    pub value: Surd,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommutationReport {
    pub pass: bool,
    pub pairs_checked: usize,
    pub violations: Vec<Violation>,
}

/// All-pairs check on labelled generators.
pub fn verify_commuting(gens: &[Generator]) -> CommutationReport {
    let mut violations = Vec::new();
    let mut pairs = 0;
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            pairs += 1;
            let f = symplectic_value(&gens[i].op, &gens[j].op);
            if !compatible(gens[i].domain, gens[j].domain, &f) {
                violations.push(Violation {
                    first: i,
                    second: j,
                    first_label: gens[i].label(),
                    second_label: gens[j].label(),
                    value: f,
                });
            }
        }
    }
    CommutationReport { pass: violations.is_empty(), pairs_checked: pairs, violations }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SyndromeKind {
    /// Commutes with every term.
    Clean,
    /// Only vertex or plaquette terms are violated.
    Deconfined,
    /// Some hopping term is violated.
    Confined,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Syndrome {
    /// `(generator index, unreduced phase)` for each violated term.
    pub violated: Vec<(usize, Surd)>,
    pub kind: SyndromeKind,
}

#[derive(Debug, Clone)]
struct MembershipData {
    /// Rows spanning the annihilator of the real families (split coordinates).
    projector: Vec<Vec<BigRational>>,
    denom: BigInt,
    lattice: IntEchelon,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct StabilizerSet {
    pub torus: Torus,
    pub generators: Vec<Generator>,
    /// Discriminant of the scalars appearing in the generators.
    pub discriminant: u64,
    /// Membership data keyed by the discriminant of the queried operator.
    #[serde(skip)]
    membership: Mutex<BTreeMap<u64, Arc<MembershipData>>>,
}

impl Clone for StabilizerSet {
    fn clone(&self) -> Self {
        Self::new(self.torus, self.generators.clone(), self.discriminant)
    }
}

impl PartialEq for StabilizerSet {
    fn eq(&self, o: &Self) -> bool {
        self.torus == o.torus && self.generators == o.generators
    }
}

/// Rational coordinates `(a, b)` of each `a + b√d` entry.
fn split(v: &[Surd]) -> Vec<BigRational> {
    v.iter().flat_map(|s| [s.a().clone(), s.b().clone()]).collect()
}

fn scale_all(v: &[Surd], k: &Surd) -> Vec<Surd> {
    v.iter().map(|x| x * k).collect()
}

impl StabilizerSet {
    pub fn new(torus: Torus, generators: Vec<Generator>, discriminant: u64) -> Self {
        Self { torus, generators, discriminant, membership: Mutex::new(BTreeMap::new()) }
    }

    pub fn verify_commuting(&self) -> CommutationReport {
        verify_commuting(&self.generators)
    }

    pub fn syndrome(&self, op: &Displacement) -> Syndrome {
        let mut violated = Vec::new();
        for (i, g) in self.generators.iter().enumerate() {
            let f = symplectic_value(op, &g.op);
            if !compatible(ParamDomain::Integer, g.domain, &f) {
                violated.push((i, f));
            }
        }
        let kind = if violated.is_empty() {
            SyndromeKind::Clean
        } else if violated.iter().any(|(i, _)| matches!(self.generators[*i].anchor, Anchor::Edge(_))) {
            SyndromeKind::Confined
        } else {
            SyndromeKind::Deconfined
        };
        Syndrome { violated, kind }
    }

    /// Anchors of violated terms in a given family.
    pub fn violated_anchors(&self, s: &Syndrome, family: &str) -> Vec<Anchor> {
        s.violated.iter().filter(|(i, _)| self.generators[*i].family == family).map(|(i, _)| self.generators[*i].anchor).collect()
    }

    fn membership_data(&self, d: u64) -> Arc<MembershipData> {
        let mut cache = self.membership.lock().expect("membership cache");
        cache.entry(d).or_insert_with(|| {
            let root = if d > 1 { Some(Surd::sqrt_int(d)) } else { None };
            let width = 4 * self.torus.n_edges();
            let mut real_rows: Matrix = Vec::new();
            for g in self.generators.iter().filter(|g| g.domain == ParamDomain::Real) {
                let e = g.op.exponents();
                real_rows.push(split(&e).into_iter().map(Surd::rational).collect());
                if let Some(r) = &root {
                    real_rows.push(split(&scale_all(&e, r)).into_iter().map(Surd::rational).collect());
                }
            }
            let projector: Vec<Vec<BigRational>> = if real_rows.is_empty() {
                (0..width).map(|i| (0..width).map(|j| BigRational::from_integer(BigInt::from((i == j) as i64))).collect()).collect()
            } else {
                linalg::kernel(&real_rows, width)
                    .expect("rational kernel")
                    .into_iter()
                    .map(|v| v.iter().map(|s| s.a().clone()).collect())
                    .collect()
            };
            let projected: Vec<Vec<BigRational>> = self
                .generators
                .iter()
                .filter(|g| g.domain == ParamDomain::Integer)
                .map(|g| project(&projector, &split(&g.op.exponents())))
                .collect();
            let (denom, ints) = if projected.is_empty() {
                (BigInt::one(), vec![])
            } else {
                linalg::clear_denominators(&projected)
            };
            let mut lattice = IntEchelon::new();
            for v in ints {
                lattice.insert(v);
            }
            Arc::new(MembershipData { projector, denom, lattice })
        }).clone()
    }

    /// `op ∈ ℤ·{integer generators} + ℝ·{real generators}`, solved exactly.
    /// `op` lies in the real span of the real-parameter generators, so every real power is a member.
    pub fn contains_real(&self, op: &Displacement) -> bool {
        let d = op.xhat.iter().chain(&op.z).find(|s| !s.is_rational()).map_or(self.discriminant, Surd::d);
        let m = self.membership_data(d);
        project(&m.projector, &split(&op.exponents())).iter().all(Zero::is_zero)
    }

    /// Operators over a different quadratic field than the generators are never members.
    pub fn contains(&self, op: &Displacement) -> bool {
        let mut d = self.discriminant;
        for s in op.xhat.iter().chain(&op.z).filter(|s| !s.is_rational()) {
            if d > 1 && s.d() != d {
                return false;
            }
            d = s.d();
        }
        let m = self.membership_data(d);
        let p = project(&m.projector, &split(&op.exponents()));
        let den = BigRational::from_integer(m.denom.clone());
        let mut ints = Vec::with_capacity(p.len());
        for q in p {
            let s = q * &den;
            if !s.is_integer() {
                return false;
            }
            ints.push(s.to_integer());
        }
        m.lattice.contains(&ints)
    }
}

fn project(rows: &[Vec<BigRational>], v: &[BigRational]) -> Vec<BigRational> {
    rows.iter()
        .map(|r| r.iter().zip(v).filter(|(a, b)| !a.is_zero() && !b.is_zero()).fold(BigRational::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    N,
    E,
    S,
    W,
}

/// Charge string on the direct lattice from vertex `start`: moves charge `c` along `steps`.
pub fn charge_string(t: &Torus, start: (i64, i64), steps: &[Step], c: &Surd) -> Displacement {
    let mut d = Displacement::identity(t.n_edges());
    let (mut x, mut y) = start;
    for s in steps {
        let (e, sign, nx, ny) = match s {
            Step::E => (Edge::h(x, y), 1, x + 1, y),
            Step::W => (Edge::h(x - 1, y), -1, x - 1, y),
            Step::N => (Edge::v(x, y), 1, x, y + 1),
            Step::S => (Edge::v(x, y - 1), -1, x, y - 1),
        };
        d.add_z(t.edge(e), &c.scale_int(sign));
        (x, y) = (nx, ny);
    }
    d
}

/// Hopping string from plaquette `start`: composes hops moving `x` along `steps`.
pub fn hop_string(p: &HoppingPattern, t: &Torus, start: (i64, i64), steps: &[Step], x: &FluxCharge) -> Displacement {
    let mut d = Displacement::identity(t.n_edges());
    let (mut px, mut py) = start;
    let neg = -x;
    for s in steps {
        let (e, a, nx, ny) = match s {
            Step::N => (Edge::h(px, py + 1), x, px, py + 1),
            Step::S => (Edge::h(px, py), &neg, px, py - 1),
            Step::W => (Edge::v(px, py), x, px - 1, py),
            Step::E => (Edge::v(px + 1, py), &neg, px + 1, py),
        };
        d = d.compose(&p.hop(t, e, a));
        (px, py) = (nx, ny);
    }
    d
}

/// Flux string on the dual lattice; the same as a hopping string of a pure flux.
pub fn flux_string(t: &Torus, start: (i64, i64), steps: &[Step], phi: &Surd) -> Displacement {
    let bare = HoppingPattern {
        basis: crate::condense::HoppingBasis::SingleSite,
        h: super::hopping::OrientationPattern { kind: super::geometry::EdgeKind::H, dressing: Default::default() },
        v: super::hopping::OrientationPattern { kind: super::geometry::EdgeKind::V, dressing: Default::default() },
        stats: Default::default(),
    };
    hop_string(&bare, t, start, steps, &FluxCharge::new(phi.clone(), Surd::zero()))
}

/// `A_v` and `B_p` at unit parameter, both over ℝ.
pub fn build_parent(l: usize) -> Result<StabilizerSet, LatticeError> {
    if l < 2 {
        return Err(LatticeError::InvalidSize(l));
    }
    let t = Torus::new(l);
    let mut gens = Vec::new();
    for v in 0..t.n_sites() {
        let (x, y) = t.site_coords(v);
        gens.push(Generator {
            family: "A".into(),
            anchor: Anchor::Vertex(v),
            domain: ParamDomain::Real,
            op: vertex_operator(&t, x, y, &Surd::one()),
        });
    }
    for p in 0..t.n_sites() {
        let (x, y) = t.site_coords(p);
        gens.push(Generator {
            family: "B".into(),
            anchor: Anchor::Plaquette(p),
            domain: ParamDomain::Real,
            op: plaquette_operator(&t, x, y, &Surd::one()),
        });
    }
    Ok(StabilizerSet::new(t, gens, 1))
}

/// `δv` as signed edges: `+1` where `v` is the tail, `−1` where it is the head.
pub fn vertex_coboundary(x: i64, y: i64) -> [(Edge, i64); 4] {
    [(Edge::h(x, y), 1), (Edge::v(x, y), 1), (Edge::h(x - 1, y), -1), (Edge::v(x, y - 1), -1)]
}

/// `Ξ(Σ_e α_e e) = Σ_e C_e(α_e)`, well defined since exponents add.
pub fn operator_from_cochain(p: &HoppingPattern, t: &Torus, cochain: &[(Edge, FluxCharge)]) -> Displacement {
    cochain.iter().fold(Displacement::identity(t.n_edges()), |d, (e, a)| d.compose(&p.hop(t, *e, a)))
}

/// `S_v(x) = Ξ(δv ⊗ x)`.
pub fn vertex_term(p: &HoppingPattern, t: &Torus, x: i64, y: i64, a: &FluxCharge) -> Displacement {
    let cochain: Vec<(Edge, FluxCharge)> = vertex_coboundary(x, y).iter().map(|(e, s)| (*e, a.scale_int(*s))).collect();
    operator_from_cochain(p, t, &cochain)
}

/// A parametrised family: basis operators at one anchor, linear in the parameters.
#[derive(Debug, Clone)]
pub struct Family {
    pub name: String,
    /// `basis[a][j]`: the `j`-th unit-parameter operator at anchor `a`.
    pub basis: Vec<Vec<Displacement>>,
}

impl Family {
    pub fn dim(&self) -> usize {
        self.basis.first().map_or(0, Vec::len)
    }
}

pub fn parent_families(t: &Torus, p: &HoppingPattern) -> [Family; 3] {
    let sites: Vec<(i64, i64)> = (0..t.n_sites()).map(|i| t.site_coords(i)).collect();
    [
        Family { name: "A".into(), basis: sites.iter().map(|&(x, y)| vec![vertex_operator(t, x, y, &Surd::one())]).collect() },
        Family { name: "B".into(), basis: sites.iter().map(|&(x, y)| vec![plaquette_operator(t, x, y, &Surd::one())]).collect() },
        Family {
            name: "S".into(),
            basis: sites
                .iter()
                .map(|&(x, y)| vec![vertex_term(p, t, x, y, &FluxCharge::ints(1, 0)), vertex_term(p, t, x, y, &FluxCharge::ints(0, 1))])
                .collect(),
        },
    ]
}

/// Parameters of `family` commuting with every hop (integer hops up to `2π`, real hops exactly).
pub fn centralizer(family: &Family, hops: &[Generator]) -> Result<Domain, LatticeError> {
    let mut integer: Vec<Vec<Surd>> = Vec::new();
    let mut zero: Vec<Vec<Surd>> = Vec::new();
    for anchor in &family.basis {
        for h in hops {
            let row: Vec<Surd> = anchor.iter().map(|b| symplectic_value(b, &h.op)).collect();
            if row.iter().all(Surd::is_zero) {
                continue;
            }
            let target = if h.domain == ParamDomain::Real { &mut zero } else { &mut integer };
            if !target.contains(&row) {
                target.push(row);
            }
        }
    }
    Ok(domain::solve(family.dim(), &integer, &zero)?)
}

/// A condensed code on an `L × L` torus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeCode {
    pub torus: Torus,
    pub pattern: HoppingPattern,
    pub outcome: CondensationOutcome,
    pub stabilizers: StabilizerSet,
}

impl LatticeCode {
    pub fn build(outcome: &CondensationOutcome, l: usize) -> Result<Self, LatticeError> {
        let pattern = synthesize_hopping(&outcome.subgroup)?;
        Self::with_pattern(outcome, pattern, l)
    }

    /// Instance over an explicit pattern (used for corrupted fixtures).
    pub fn with_pattern(outcome: &CondensationOutcome, pattern: HoppingPattern, l: usize) -> Result<Self, LatticeError> {
        if l < 2 {
            return Err(LatticeError::InvalidSize(l));
        }
        let t = Torus::new(l);
        let mut gens = Vec::new();
        let b = &outcome.subgroup;
        let hop_gens = b.discrete.iter().map(|x| (x, ParamDomain::Integer)).chain(b.continuous.iter().map(|x| (x, ParamDomain::Real)));
        for (i, (x, dom)) in hop_gens.enumerate() {
            for e in 0..t.n_edges() {
                gens.push(Generator {
                    family: format!("C{i}"),
                    anchor: Anchor::Edge(e),
                    domain: dom,
                    op: pattern.hop(&t, t.edge_at(e), x),
                });
            }
        }
        let a = &outcome.deconfined;
        let vertex_gens = a.discrete.iter().map(|x| (x, ParamDomain::Integer)).chain(a.continuous.iter().map(|x| (x, ParamDomain::Real)));
        for (j, (x, dom)) in vertex_gens.enumerate() {
            for v in 0..t.n_sites() {
                let (vx, vy) = t.site_coords(v);
                gens.push(Generator {
                    family: format!("S{j}"),
                    anchor: Anchor::Vertex(v),
                    domain: dom,
                    op: vertex_term(&pattern, &t, vx, vy, x),
                });
            }
        }
        let stabilizers = StabilizerSet::new(t, gens, b.discriminant);
        Ok(Self { torus: t, pattern, outcome: outcome.clone(), stabilizers })
    }

    pub fn hop(&self, e: Edge, x: &FluxCharge) -> Displacement {
        self.pattern.hop(&self.torus, e, x)
    }

    pub fn vertex_term(&self, x: i64, y: i64, a: &FluxCharge) -> Displacement {
        vertex_term(&self.pattern, &self.torus, x, y, a)
    }

    pub fn hop_string(&self, start: (i64, i64), steps: &[Step], x: &FluxCharge) -> Displacement {
        hop_string(&self.pattern, &self.torus, start, steps, x)
    }

    pub fn hopping_generators(&self) -> Vec<Generator> {
        self.stabilizers.generators.iter().filter(|g| matches!(g.anchor, Anchor::Edge(_))).cloned().collect()
    }

    pub fn verify_commuting(&self) -> CommutationReport {
        self.stabilizers.verify_commuting()
    }

    pub fn syndrome(&self, op: &Displacement) -> Syndrome {
        self.stabilizers.syndrome(op)
    }

    pub fn contains(&self, op: &Displacement) -> bool {
        self.stabilizers.contains(op)
    }
}
