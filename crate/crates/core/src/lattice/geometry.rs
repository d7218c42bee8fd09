//! Periodic square lattice and displacement operators on its edges.
//!
//! Vertex `(x, y)` is taken mod `L`. Edge `h(x, y)` runs `(x, y) → (x+1, y)`,
//! `v(x, y)` runs `(x, y) → (x, y+1)`. Plaquette `p(x, y)` has south-west
//! corner `(x, y)` and counterclockwise boundary
//! `+h(x, y) + v(x+1, y) − h(x, y+1) − v(x, y)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{ArithError, PhaseFraction, Surd};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeKind {
    H,
    V,
}

impl fmt::Display for EdgeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeKind::H => "h",
            EdgeKind::V => "v",
        })
    }
}

/// An edge position before periodic reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub kind: EdgeKind,
    pub x: i64,
    pub y: i64,
}

impl Edge {
    pub fn h(x: i64, y: i64) -> Self {
        Self { kind: EdgeKind::H, x, y }
    }

    pub fn v(x: i64, y: i64) -> Self {
        Self { kind: EdgeKind::V, x, y }
    }

    pub fn shifted(&self, dx: i64, dy: i64) -> Self {
        Self { kind: self.kind, x: self.x + dx, y: self.y + dy }
    }

    pub fn tail(&self) -> (i64, i64) {
        (self.x, self.y)
    }

    pub fn head(&self) -> (i64, i64) {
        match self.kind {
            EdgeKind::H => (self.x + 1, self.y),
            EdgeKind::V => (self.x, self.y + 1),
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{})", self.kind, self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Torus {
    pub l: usize,
}

impl Torus {
    pub fn new(l: usize) -> Self {
        assert!(l >= 2, "torus needs L ≥ 2");
        Self { l }
    }

    pub fn n_sites(&self) -> usize {
        self.l * self.l
    }

    pub fn n_edges(&self) -> usize {
        2 * self.l * self.l
    }

    fn wrap(&self, a: i64) -> usize {
        a.rem_euclid(self.l as i64) as usize
    }

    pub fn vertex(&self, x: i64, y: i64) -> usize {
        self.wrap(y) * self.l + self.wrap(x)
    }

    pub fn plaquette(&self, x: i64, y: i64) -> usize {
        self.vertex(x, y)
    }

    pub fn site_coords(&self, i: usize) -> (i64, i64) {
        ((i % self.l) as i64, (i / self.l) as i64)
    }

    /// Index `kind·L² + y·L + x`.
    pub fn edge(&self, e: Edge) -> usize {
        let k = match e.kind {
            EdgeKind::H => 0,
            EdgeKind::V => 1,
        };
        k * self.n_sites() + self.vertex(e.x, e.y)
    }

    pub fn edge_at(&self, i: usize) -> Edge {
        let (x, y) = self.site_coords(i % self.n_sites());
        if i < self.n_sites() {
            Edge::h(x, y)
        } else {
            Edge::v(x, y)
        }
    }

    /// Counterclockwise boundary of `p(x, y)`.
    pub fn plaquette_boundary(x: i64, y: i64) -> [(Edge, i64); 4] {
        [(Edge::h(x, y), 1), (Edge::v(x + 1, y), 1), (Edge::h(x, y + 1), -1), (Edge::v(x, y), -1)]
    }

    /// Star of a vertex: `+1` on outgoing edges, `−1` on incoming ones.
    pub fn star(x: i64, y: i64) -> [(Edge, i64); 4] {
        [(Edge::h(x, y), 1), (Edge::v(x, y), 1), (Edge::h(x - 1, y), -1), (Edge::v(x, y - 1), -1)]
    }

    /// The sign `o_e`: `+1` on vertical edges, `−1` on horizontal ones.
    pub fn orientation_sign(e: Edge) -> i64 {
        match e.kind {
            EdgeKind::H => -1,
            EdgeKind::V => 1,
        }
    }

    /// ∂∂ = 0: each plaquette boundary has zero divergence at every vertex.
    pub fn check_complex(&self) -> bool {
        (0..self.n_sites()).all(|p| {
            let (x, y) = self.site_coords(p);
            let mut div = vec![0i64; self.n_sites()];
            for (e, s) in Self::plaquette_boundary(x, y) {
                let (hx, hy) = e.head();
                let (tx, ty) = e.tail();
                div[self.vertex(hx, hy)] += s;
                div[self.vertex(tx, ty)] -= s;
            }
            div.iter().all(|&d| d == 0)
        })
    }

    /// Signed intersection of an edge chain with a dual chain (both as edge-sign lists).
    pub fn intersection(&self, chain: &[(Edge, i64)], cochain: &[(Edge, i64)]) -> i64 {
        let mut acc = 0;
        for (e, s) in chain {
            for (f, t) in cochain {
                if self.edge(*e) == self.edge(*f) {
                    acc += s * t;
                }
            }
        }
        acc
    }
}

/// `∏_e X_e^{2π·x̂_e} Z_e^{z_e}` modulo phase, stored densely.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Displacement {
    pub xhat: Vec<Surd>,
    pub z: Vec<Surd>,
}

impl Displacement {
    pub fn identity(n_edges: usize) -> Self {
        Self { xhat: vec![Surd::zero(); n_edges], z: vec![Surd::zero(); n_edges] }
    }

    pub fn len(&self) -> usize {
        self.xhat.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xhat.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.xhat.iter().chain(&self.z).all(Surd::is_zero)
    }

    pub fn add_x(&mut self, i: usize, s: &Surd) {
        self.xhat[i] += s;
    }

    pub fn add_z(&mut self, i: usize, s: &Surd) {
        self.z[i] += s;
    }

    pub fn compose(&self, o: &Self) -> Self {
        Self {
            xhat: self.xhat.iter().zip(&o.xhat).map(|(a, b)| a + b).collect(),
            z: self.z.iter().zip(&o.z).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        Self { xhat: self.xhat.iter().map(|a| -a).collect(), z: self.z.iter().map(|a| -a).collect() }
    }

    pub fn power(&self, k: &Surd) -> Result<Self, ArithError> {
        Ok(Self {
            xhat: self.xhat.iter().map(|a| a.checked_mul(k)).collect::<Result<_, _>>()?,
            z: self.z.iter().map(|a| a.checked_mul(k)).collect::<Result<_, _>>()?,
        })
    }

    pub fn power_int(&self, k: i64) -> Self {
        Self {
            xhat: self.xhat.iter().map(|a| a.scale_int(k)).collect(),
            z: self.z.iter().map(|a| a.scale_int(k)).collect(),
        }
    }

    /// Edges carrying a nontrivial exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.xhat[i].is_zero() || !self.z[i].is_zero()).collect()
    }

    /// Translate by a lattice vector.
    pub fn translated(&self, t: &Torus, dx: i64, dy: i64) -> Self {
        let mut out = Self::identity(self.len());
        for i in self.support() {
            let j = t.edge(t.edge_at(i).shifted(dx, dy));
            out.xhat[j] = self.xhat[i].clone();
            out.z[j] = self.z[i].clone();
        }
        out
    }

    /// Exponent vector `(x̂, z)` as one list.
    pub fn exponents(&self) -> Vec<Surd> {
        self.xhat.iter().chain(&self.z).cloned().collect()
    }
}

impl fmt::Debug for Displacement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .support()
            .into_iter()
            .map(|i| format!("{i}:({}, {})", self.xhat[i], self.z[i]))
            .collect();
        write!(f, "D[{}]", parts.join(" "))
    }
}

/// Unreduced `Σ_e (z_e(u)·x̂_e(v) − x̂_e(u)·z_e(v))`; `UV = e^{2πi f} VU`.
pub fn symplectic_value(u: &Displacement, v: &Displacement) -> Surd {
    let mut acc = Surd::zero();
    for i in 0..u.len() {
        if !u.z[i].is_zero() && !v.xhat[i].is_zero() {
            acc += &(&u.z[i] * &v.xhat[i]);
        }
        if !u.xhat[i].is_zero() && !v.z[i].is_zero() {
            acc -= &(&u.xhat[i] * &v.z[i]);
        }
    }
    acc
}

pub fn symplectic_phase(u: &Displacement, v: &Displacement) -> PhaseFraction {
    PhaseFraction::new(symplectic_value(u, v))
}

/// Charge at each vertex, `Σ_in z − Σ_out z`, so that `f(A_v^{φ̂}, O) = φ̂·charge_v(O)`.
pub fn charges(t: &Torus, op: &Displacement) -> Vec<Surd> {
    let mut q = vec![Surd::zero(); t.n_sites()];
    for i in op.support() {
        if op.z[i].is_zero() {
            continue;
        }
        let e = t.edge_at(i);
        let (hx, hy) = e.head();
        let (tx, ty) = e.tail();
        q[t.vertex(hx, hy)] += &op.z[i];
        q[t.vertex(tx, ty)] -= &op.z[i];
    }
    q
}

/// Flux through each plaquette, `Σ_{e∈∂p} ± x̂_e`, so that `f(B_p^c, O) = c·flux_p(O)`.
pub fn fluxes(t: &Torus, op: &Displacement) -> Vec<Surd> {
    (0..t.n_sites())
        .map(|p| {
            let (x, y) = t.site_coords(p);
            let mut acc = Surd::zero();
            for (e, s) in Torus::plaquette_boundary(x, y) {
                acc += &op.xhat[t.edge(e)].scale_int(s);
            }
            acc
        })
        .collect()
}

/// `A_v^{φ̂}`: `X^{±φ̂}` on the star.
pub fn vertex_operator(t: &Torus, x: i64, y: i64, phi: &Surd) -> Displacement {
    let mut d = Displacement::identity(t.n_edges());
    for (e, s) in Torus::star(x, y) {
        d.add_x(t.edge(e), &phi.scale_int(s));
    }
    d
}

/// `B_p^c`: `Z^{±c}` around the counterclockwise boundary.
pub fn plaquette_operator(t: &Torus, x: i64, y: i64, c: &Surd) -> Displacement {
    let mut d = Displacement::identity(t.n_edges());
    for (e, s) in Torus::plaquette_boundary(x, y) {
        d.add_z(t.edge(e), &c.scale_int(s));
    }
    d
}

pub fn single_edge(t: &Torus, e: Edge, xhat: &Surd, z: &Surd) -> Displacement {
    let mut d = Displacement::identity(t.n_edges());
    d.add_x(t.edge(e), xhat);
    d.add_z(t.edge(e), z);
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_and_counts() {
        for l in 2..5 {
            let t = Torus::new(l);
            assert!(t.check_complex());
            assert_eq!(t.n_edges(), 2 * t.n_sites());
            for i in 0..t.n_edges() {
                assert_eq!(t.edge(t.edge_at(i)), i);
            }
        }
    }

    #[test]
    fn single_edge_phases() {
        let t = Torus::new(2);
        let e = Edge::h(0, 0);
        let u = single_edge(&t, e, &Surd::zero(), &Surd::frac(1, 2));
        let v = single_edge(&t, e, &Surd::one(), &Surd::zero());
        assert_eq!(symplectic_phase(&u, &v), PhaseFraction::from_rational(1, 2));
        let u = single_edge(&t, e, &Surd::zero(), &Surd::one());
        assert!(symplectic_phase(&u, &v).is_trivial());
        let w = single_edge(&t, Edge::v(1, 1), &Surd::one(), &Surd::one());
        assert!(symplectic_value(&u, &w).is_zero());
    }

    #[test]
    fn charge_and_flux_detectors() {
        let t = Torus::new(3);
        let op = single_edge(&t, Edge::h(1, 1), &Surd::frac(1, 3), &Surd::int(2));
        let q = charges(&t, &op);
        let f = fluxes(&t, &op);
        for v in 0..t.n_sites() {
            let (x, y) = t.site_coords(v);
            let a = vertex_operator(&t, x, y, &Surd::one());
            assert_eq!(symplectic_value(&a, &op), q[v]);
            let b = plaquette_operator(&t, x, y, &Surd::one());
            assert_eq!(symplectic_value(&b, &op), f[v]);
        }
    }

    #[test]
    fn parent_terms_commute() {
        let t = Torus::new(3);
        for v in 0..t.n_sites() {
            for p in 0..t.n_sites() {
                let (vx, vy) = t.site_coords(v);
                let (px, py) = t.site_coords(p);
                let a = vertex_operator(&t, vx, vy, &Surd::one());
                let b = plaquette_operator(&t, px, py, &Surd::one());
                assert!(symplectic_value(&a, &b).is_zero());
            }
        }
    }
}
