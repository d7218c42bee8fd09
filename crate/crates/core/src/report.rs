//! Run configuration, pipelines and the machine/human reports.
//!
//! The machine report is JSON with struct-declaration field order; exact
//! scalars are carried as their canonical strings, floats use round-trip
//! formatting, so `from_json(to_json(r)) == r` and equal configs give equal bytes.

use std::fmt::Write as _;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::anyon::FluxCharge;
use crate::arith::{PhaseFraction, Surd};
use crate::condense::{classify, condense, Classification, CondensationOutcome, Taxonomy};
use crate::lattice::code::LatticeCode;
use crate::lattice::logical::{logical_operators, HomologyBasis};
use crate::spectral::{
    effective_degeneracy, gap_estimate, n_matrix, quadratic_spectrum, quadrature_vectors, z_matrix, SpectralConfig,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Condense,
    LatticeVerify,
    Spectrum,
    Boundary,
    Full,
}

impl Mode {
    fn needs_lattice(self) -> bool {
        matches!(self, Mode::LatticeVerify | Mode::Spectrum | Mode::Full)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Identity-matrix and spectral-symmetry checks.
    pub matrix: f64,
    /// Float commutators against exact pairings.
    pub commutator: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { matrix: 1e-10, commutator: 1e-12 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub taxonomy: Option<String>,
    /// Boson generators as exact `[flux, charge]` strings, flux in units of 2π.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<[String; 2]>>,
    /// Field discriminant; inferred from the generators when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub discriminant: Option<u64>,
    #[serde(default = "default_l")]
    pub l: usize,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default = "default_u")]
    pub u: f64,
    #[serde(default = "default_u_prime")]
    pub u_prime: f64,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

fn default_l() -> usize {
    3
}
fn default_alpha() -> f64 {
    0.5
}
fn default_u() -> f64 {
    100.0
}
fn default_u_prime() -> f64 {
    0.1
}

impl RunConfig {
    pub fn taxonomy(mode: Mode, taxonomy: &str, l: usize) -> Self {
        Self {
            mode,
            taxonomy: Some(taxonomy.to_string()),
            generators: None,
            discriminant: None,
            l,
            alpha: default_alpha(),
            u: default_u(),
            u_prime: default_u_prime(),
            tolerances: Tolerances::default(),
            out: None,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        match (&self.taxonomy, &self.generators) {
            (Some(_), Some(_)) => return Err(ConfigError::Invalid("give a taxonomy or generators, not both".into())),
            (None, None) => return Err(ConfigError::Invalid("a taxonomy or generators is required".into())),
            _ => {}
        }
        if self.mode.needs_lattice() && self.l < 2 {
            return Err(ConfigError::Invalid(format!("lattice size L = {} must be at least 2", self.l)));
        }
        if !(self.alpha > 0.0) {
            return Err(ConfigError::Invalid(format!("alpha = {} must be positive", self.alpha)));
        }
        Ok(())
    }

    /// Parsed boson generators.
    pub fn boson_generators(&self) -> Result<Vec<FluxCharge>, ConfigError> {
        self.validate()?;
        let gens = if let Some(t) = &self.taxonomy {
            let t: Taxonomy = t.parse().map_err(|e| ConfigError::Invalid(format!("{e}")))?;
            t.generators().map_err(|e| ConfigError::Invalid(format!("{e}")))?
        } else {
            let raw = self.generators.as_ref().expect("validated");
            raw.iter()
                .map(|[f, c]| {
                    let p = |s: &str| s.parse::<Surd>().map_err(|e| ConfigError::Invalid(format!("bad scalar {s:?}: {e}")));
                    Ok(FluxCharge::new(p(f)?, p(c)?))
                })
                .collect::<Result<Vec<_>, ConfigError>>()?
        };
        if let Some(d) = self.discriminant {
            if let Some(x) = gens.iter().find(|x| x.discriminant() != 1 && x.discriminant() != d) {
                return Err(ConfigError::Invalid(format!("generator {x} is not in Q(sqrt({d}))")));
            }
        }
        Ok(gens)
    }

    pub fn from_json(s: &str) -> Result<Self, ConfigError> {
        let c: Self = serde_json::from_str(s).map_err(|e| ConfigError::Invalid(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }
}

/// Usage-level failures; the CLI maps these to exit status 2.
#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("invalid configuration: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub stage: String,
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorRow {
    pub name: String,
    pub representative: String,
    pub order: u64,
    pub spin: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CondenseSection {
    pub classification: String,
    pub description: String,
    pub bosons: Vec<String>,
    pub fusion_group: Vec<u64>,
    pub invariant_factors: Vec<u64>,
    pub generators: Vec<GeneratorRow>,
    pub braiding: Vec<Vec<String>>,
    pub continuous: Option<String>,
    pub gsd_torus: Option<u64>,
    pub encoded: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeSection {
    pub l: usize,
    pub hopping_basis: String,
    pub pattern: String,
    pub stabilizer_generators: usize,
    pub pairs_checked: usize,
    pub violations: Vec<String>,
    pub logical_factors: Vec<String>,
    pub logical_commutation: Vec<Vec<String>>,
    pub logical_dimension: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayerSpectrum {
    pub label: String,
    pub n_lambda_min: f64,
    pub n_lambda_max: f64,
    pub gap_estimate: Option<f64>,
    pub sqrt_abs_det_z: Option<String>,
    pub det_z_float: f64,
    pub mode_energies: Vec<f64>,
    pub gap: f64,
    pub unique_ground_state: bool,
    pub symmetry_defect: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSection {
    pub l: usize,
    pub alpha: f64,
    pub layers: Vec<LayerSpectrum>,
    pub effective_degeneracy: Option<String>,
    pub advisories: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundarySection {
    pub anyons: Vec<[String; 2]>,
    pub lagrangian_subgroups: Vec<Vec<String>>,
    pub c_minus: Option<u8>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub config: RunConfig,
    pub condense: Option<CondenseSection>,
    pub lattice: Option<LatticeSection>,
    pub spectrum: Option<SpectrumSection>,
    pub boundary: Option<BoundarySection>,
    pub checks: Vec<Check>,
    pub warnings: Vec<String>,
    pub pass: bool,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is always serializable") + "\n"
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    /// 0 when every check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

struct Builder {
    checks: Vec<Check>,
    warnings: Vec<String>,
}

impl Builder {
    fn check(&mut self, stage: &str, name: &str, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check { stage: stage.into(), name: name.into(), pass, detail: detail.into() });
    }
}

fn subscript(s: &str) -> String {
    s.chars()
        .map(|c| match c {
            '-' => '₋',
            d @ '0'..='9' => char::from_u32('₀' as u32 + d.to_digit(10).unwrap()).unwrap(),
            c => c,
        })
        .collect()
}

fn minus(s: String) -> String {
    s.replace('-', "−")
}

/// `7/8 ≡ −1/8` when the symmetric representative differs from `[0, 1)`.
pub fn spin_text(p: &PhaseFraction) -> String {
    let sym = p.symmetric();
    if &sym == p.value() {
        minus(p.to_string())
    } else {
        format!("{} ≡ {}", p, minus(sym.to_string()))
    }
}

fn generator_names(o: &CondensationOutcome) -> Vec<String> {
    let k = o.k_matrix();
    let n = o.finite_generators.len();
    if o.classification == Classification::DoubleU1 && n == k.len() {
        (0..n).map(|i| format!("a{}-analogue", subscript(&k[i][i].to_string()))).collect()
    } else {
        (0..n).map(|i| format!("g{}", subscript(&(i + 1).to_string()))).collect()
    }
}

fn condense_section(o: &CondensationOutcome, b: &mut Builder) -> CondenseSection {
    let fin = &o.finite;
    let names = generator_names(o);
    let generators = o
        .finite_generators
        .iter()
        .enumerate()
        .map(|(i, g)| GeneratorRow {
            name: names[i].clone(),
            representative: g.to_string(),
            order: fin.orders[i],
            spin: spin_text(&fin.spins[i]),
        })
        .collect();
    let (classification, description, encoded) = match classify(o) {
        Ok(c) => (c.tag, c.description, c.content.iter().map(ToString::to_string).collect()),
        Err(e) => {
            b.check("condense", "classification", false, e.to_string());
            (String::new(), String::new(), Vec::new())
        }
    };
    CondenseSection {
        classification,
        description,
        bosons: o.subgroup.generators().map(ToString::to_string).collect(),
        fusion_group: fin.orders.clone(),
        invariant_factors: o.invariant_factors.clone(),
        generators,
        braiding: fin.braidings.iter().map(|r| r.iter().map(|p| minus(p.to_string())).collect()).collect(),
        continuous: o.continuous.as_ref().map(|c| format!("{:?} along {}", c.kind, c.direction)),
        gsd_torus: o.gsd_torus(),
        encoded,
    }
}

fn lattice_section(code: &LatticeCode, b: &mut Builder) -> LatticeSection {
    let comm = code.verify_commuting();
    b.check(
        "lattice",
        "stabilizer generators commute",
        comm.pass,
        format!("{} pairs, {} violations", comm.pairs_checked, comm.violations.len()),
    );
    let violations =
        comm.violations.iter().map(|v| format!("{} vs {}: {}", v.first_label, v.second_label, v.value)).collect();
    let mut s = LatticeSection {
        l: code.torus.l,
        hopping_basis: format!("{:?}", code.pattern.basis),
        pattern: code.pattern.dump(),
        stabilizer_generators: code.stabilizers.generators.len(),
        pairs_checked: comm.pairs_checked,
        violations,
        logical_factors: Vec::new(),
        logical_commutation: Vec::new(),
        logical_dimension: None,
    };
    match logical_operators(code, &HomologyBasis::standard(&code.torus)) {
        Ok(lc) => {
            for (name, pass) in &lc.checks {
                b.check("lattice", name, *pass, "");
            }
            s.logical_factors = lc.kinds().iter().map(ToString::to_string).collect();
            s.logical_commutation =
                lc.commutation.iter().map(|r| r.iter().map(|p| minus(p.to_string())).collect()).collect();
            s.logical_dimension = lc.dimension;
        }
        Err(e) => b.check("lattice", "logical operators", false, e.to_string()),
    }
    s
}

fn spectrum_section(code: &LatticeCode, cfg: &RunConfig, b: &mut Builder) -> Option<SpectrumSection> {
    let sc = SpectralConfig { l: cfg.l, alpha: cfg.alpha, u: cfg.u, u_prime: cfg.u_prime, j: 1.0 };
    let layers = match quadrature_vectors(code) {
        Ok(l) => l,
        Err(e) => {
            b.warnings.push(format!("spectral analysis skipped: {e}"));
            return None;
        }
    };
    let tol = cfg.tolerances;
    let mut out = Vec::new();
    for layer in &layers {
        let tag = format!("layer {}", layer.label);
        let mut worst: f64 = 0.0;
        for (i, c) in layer.c.iter().enumerate() {
            for (j, w) in layer.w.iter().enumerate() {
                let exact = crate::spectral::exact_pairing(&layer.c_exact[i], &layer.w_exact[j]).to_f64();
                worst = worst.max((c.commutator(w) - 2.0 * std::f64::consts::PI * exact).abs());
            }
        }
        b.check("spectrum", &format!("{tag}: float commutators match exact pairings"), worst < tol.commutator, format!("max deviation {worst:e}"));
        let n = n_matrix(&layer.c, &layer.w, cfg.alpha);
        let eig = nalgebra::SymmetricEigen::new(n.clone()).eigenvalues;
        let (lo, hi) = eig.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
        b.check("spectrum", &format!("{tag}: 𝒩 is proportional to the identity"), hi - lo < tol.matrix, format!("λ ∈ [{lo}, {hi}]"));
        let gap_est = gap_estimate(&n, cfg.u).ok().map(|g| g.delta);
        b.check("spectrum", &format!("{tag}: 𝒩 is positive definite"), gap_est.is_some(), "");
        let (sqrt_det, det_float) = match z_matrix(&layer.c_exact) {
            Ok(z) => {
                let exact = z.det.to_string().parse::<f64>().unwrap_or(f64::NAN);
                let agree = (exact - z.det_float).abs() <= 1e-6 * exact.abs().max(1.0);
                b.check("spectrum", &format!("{tag}: det 𝒵 exact and float agree"), agree, format!("{} vs {}", z.det, z.det_float));
                (z.sqrt_abs_det.map(|r| r.to_string()), z.det_float)
            }
            Err(e) => {
                b.check("spectrum", &format!("{tag}: 𝒵 is integral"), false, e.to_string());
                (None, 0.0)
            }
        };
        let s = quadratic_spectrum(&layer.w, cfg.alpha);
        b.check("spectrum", &format!("{tag}: spectrum is ±E symmetric"), s.symmetry_defect < tol.matrix, format!("defect {:e}", s.symmetry_defect));
        out.push(LayerSpectrum {
            label: layer.label.to_string(),
            n_lambda_min: lo,
            n_lambda_max: hi,
            gap_estimate: gap_est,
            sqrt_abs_det_z: sqrt_det,
            det_z_float: det_float,
            mode_energies: s.mode_energies,
            gap: s.gap,
            unique_ground_state: s.unique_ground_state,
            symmetry_defect: s.symmetry_defect,
        });
    }
    let effective = match effective_degeneracy(code) {
        Ok(d) => d.map(|d| d.to_string()),
        Err(e) => {
            b.check("spectrum", "effective degeneracy", false, e.to_string());
            None
        }
    };
    if let (Some(d), Some(g)) = (&effective, code.outcome.gsd_torus()) {
        b.check("spectrum", "effective degeneracy equals the torus GSD", *d == g.to_string(), format!("{d} vs {g}"));
    }
    Some(SpectrumSection { l: cfg.l, alpha: cfg.alpha, layers: out, effective_degeneracy: effective, advisories: sc.advisories() })
}

fn boundary_section(o: &CondensationOutcome, b: &mut Builder) -> BoundarySection {
    let fin = &o.finite;
    let c_minus = match fin.gauss_sum() {
        Ok(c) => c.c_minus(),
        Err(e) => {
            b.check("boundary", "Gauss sum", false, e.to_string());
            None
        }
    };
    if o.continuous.is_some() {
        b.warnings.push("boundary search covers the finite part only".into());
    }
    BoundarySection {
        anyons: fin.enumerate_anyons().into_iter().map(|(a, s)| [a.to_string(), minus(s.to_string())]).collect(),
        lagrangian_subgroups: fin
            .lagrangian_subgroups()
            .into_iter()
            .map(|l| l.iter().map(ToString::to_string).collect())
            .collect(),
        c_minus,
    }
}

/// Executes the configured pipeline. Usage errors come back as `Err`;
/// everything else is recorded in the report.
pub fn run(cfg: &RunConfig) -> Result<Report, ConfigError> {
    let gens = cfg.boson_generators()?;
    let mut b = Builder { checks: Vec::new(), warnings: Vec::new() };
    let mut report =
        Report { config: cfg.clone(), condense: None, lattice: None, spectrum: None, boundary: None, checks: Vec::new(), warnings: Vec::new(), pass: false };
    match condense(&gens) {
        Err(e) => b.check("condense", "condensation", false, e.to_string()),
        Ok(o) => {
            b.check("condense", "condensation", true, "");
            b.warnings.extend(o.warnings.iter().cloned());
            report.condense = Some(condense_section(&o, &mut b));
            if matches!(cfg.mode, Mode::Boundary | Mode::Full) {
                report.boundary = Some(boundary_section(&o, &mut b));
            }
            if cfg.mode.needs_lattice() {
                match LatticeCode::build(&o, cfg.l) {
                    Err(e) => b.check("lattice", "hopping synthesis", false, e.to_string()),
                    Ok(code) => {
                        b.check("lattice", "hopping synthesis", true, "");
                        if matches!(cfg.mode, Mode::LatticeVerify | Mode::Full) {
                            report.lattice = Some(lattice_section(&code, &mut b));
                        }
                        if matches!(cfg.mode, Mode::Spectrum | Mode::Full) {
                            report.spectrum = spectrum_section(&code, cfg, &mut b);
                        }
                    }
                }
            }
        }
    }
    report.pass = b.checks.iter().all(|c| c.pass);
    report.checks = b.checks;
    report.warnings = b.warnings;
    Ok(report)
}

/// Human-readable text, one section per stage; never parsed back.
pub fn render(r: &Report) -> String {
    let mut s = String::new();
    let subject = r.config.taxonomy.clone().unwrap_or_else(|| {
        let g = r.config.generators.as_deref().unwrap_or_default();
        g.iter().map(|[f, c]| format!("({f}, {c})")).collect::<Vec<_>>().join(" ")
    });
    let _ = writeln!(s, "rgauge {} {}", serde_json::to_value(r.config.mode).unwrap().as_str().unwrap(), subject);
    if let Some(c) = &r.condense {
        let _ = writeln!(s, "\n[condense]");
        let _ = writeln!(s, "classification: {}", c.classification);
        let _ = writeln!(s, "bosons: {}", c.bosons.join(", "));
        let fusion: Vec<String> = c.fusion_group.iter().map(|d| format!("Z{d}")).collect();
        let fusion = if fusion.is_empty() { "trivial".to_string() } else { fusion.join(" x ") };
        let _ = writeln!(s, "fusion: {fusion}");
        for g in &c.generators {
            let _ = writeln!(s, "{}: order {}, spin {}", g.name, g.order, g.spin);
        }
        if let Some(cont) = &c.continuous {
            let _ = writeln!(s, "continuous: {cont}");
        }
        match c.gsd_torus {
            Some(g) => {
                let _ = writeln!(s, "gsd_torus: {g}");
            }
            None => {
                let _ = writeln!(s, "gsd_torus: infinite");
            }
        }
        let _ = writeln!(s, "encoded: {}", c.encoded.join(" + "));
    }
    if let Some(b) = &r.boundary {
        let _ = writeln!(s, "\n[boundary]");
        let _ = writeln!(s, "anyons: {}", b.anyons.len());
        let _ = writeln!(s, "lagrangian_subgroups: {}", b.lagrangian_subgroups.len());
        for l in &b.lagrangian_subgroups {
            let _ = writeln!(s, "  {{{}}}", l.join(", "));
        }
        if let Some(c) = b.c_minus {
            let _ = writeln!(s, "c₋ mod 8: {c}");
        }
    }
    if let Some(l) = &r.lattice {
        let _ = writeln!(s, "\n[lattice L={}]", l.l);
        let _ = writeln!(s, "hopping basis: {}", l.hopping_basis);
        let _ = writeln!(s, "generators: {}, pairs checked: {}, violations: {}", l.stabilizer_generators, l.pairs_checked, l.violations.len());
        for v in &l.violations {
            let _ = writeln!(s, "  {v}");
        }
        let _ = writeln!(s, "logical factors: {}", l.logical_factors.join(" + "));
        if let Some(d) = l.logical_dimension {
            let _ = writeln!(s, "logical dimension: {d}");
        }
    }
    if let Some(sp) = &r.spectrum {
        let _ = writeln!(s, "\n[spectrum L={} α={}]", sp.l, sp.alpha);
        for layer in &sp.layers {
            let _ = writeln!(
                s,
                "layer {}: λ(𝒩) = {:.12}, √|det 𝒵| = {}, gap = {:.12}, unique ground state: {}",
                layer.label,
                layer.n_lambda_min,
                layer.sqrt_abs_det_z.as_deref().unwrap_or("n/a"),
                layer.gap,
                layer.unique_ground_state
            );
        }
        if let Some(d) = &sp.effective_degeneracy {
            let _ = writeln!(s, "effective degeneracy: {d}");
        }
        for a in &sp.advisories {
            let _ = writeln!(s, "advisory: {a}");
        }
    }
    let _ = writeln!(s, "\n[checks]");
    for c in &r.checks {
        let mark = if c.pass { "PASS" } else { "FAIL" };
        if c.detail.is_empty() {
            let _ = writeln!(s, "{mark} {}: {}", c.stage, c.name);
        } else {
            let _ = writeln!(s, "{mark} {}: {} ({})", c.stage, c.name, c.detail);
        }
    }
    if !r.warnings.is_empty() {
        let _ = writeln!(s, "\n[warnings]");
        for w in &r.warnings {
            let _ = writeln!(s, "- {w}");
        }
    }
    let _ = writeln!(s, "\nresult: {}", if r.pass { "PASS" } else { "FAIL" });
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_tax(mode: Mode, t: &str, l: usize) -> Report {
        run(&RunConfig::taxonomy(mode, t, l)).unwrap()
    }

    #[test]
    fn condense_double_one_two() {
        let r = run_tax(Mode::Condense, "double(1,2)", 3);
        let c = r.condense.as_ref().unwrap();
        assert_eq!(c.fusion_group, vec![2, 4]);
        assert_eq!(c.gsd_torus, Some(8));
        let text = render(&r);
        assert!(text.contains("a₂-analogue: order 2, spin 1/4\n"), "{text}");
        assert!(text.contains("a₋₄-analogue: order 4, spin 7/8 ≡ −1/8\n"), "{text}");
        assert!(r.pass);
    }

    #[test]
    fn fusion_row_and_warnings_section() {
        let r = run_tax(Mode::Condense, "even-K(1,1,2)", 3);
        let text = render(&r);
        assert!(text.contains("fusion: Z2 x Z6\n"), "{text}");
        let r = run_tax(Mode::Condense, "flux-charge(2)", 3);
        assert!(r.warnings.is_empty());
        assert!(!render(&r).contains("[warnings]"));
    }

    #[test]
    fn boundary_double_one_two_is_empty() {
        let r = run_tax(Mode::Boundary, "double(1,2)", 3);
        assert_eq!(r.boundary.as_ref().unwrap().lagrangian_subgroups, Vec::<Vec<String>>::new());
        let r = run_tax(Mode::Boundary, "flux-charge(2)", 3);
        assert!(!r.boundary.unwrap().lagrangian_subgroups.is_empty());
    }

    #[test]
    fn full_report_round_trips_and_is_deterministic() {
        let cfg = RunConfig::taxonomy(Mode::Full, "double(1,2)", 2);
        let a = run(&cfg).unwrap();
        let b = run(&cfg).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(Report::from_json(&a.to_json()).unwrap(), a);
        assert_eq!(a.lattice.as_ref().unwrap().logical_factors, vec!["qudit(2)", "qudit(4)"]);
        assert_eq!(a.spectrum.as_ref().unwrap().effective_degeneracy.as_deref(), Some("8"));
        assert!(a.pass, "{}", render(&a));
    }

    #[test]
    fn config_errors() {
        let mut c = RunConfig::taxonomy(Mode::LatticeVerify, "flux", 1);
        assert!(run(&c).is_err());
        c.l = 2;
        c.generators = Some(vec![["1".into(), "0".into()]]);
        assert!(run(&c).is_err());
        c.taxonomy = None;
        assert!(run(&c).unwrap().pass);
        assert!(RunConfig::from_json(r#"{"mode":"condense","taxonomy":"flux","bogus":1}"#).is_err());
        let c = RunConfig::from_json(r#"{"mode":"condense","generators":[["1","sqrt(2)"]]}"#).unwrap();
        assert!(run(&c).is_ok());
        let mut c = RunConfig::taxonomy(Mode::Condense, "double(1,3)", 2);
        c.discriminant = Some(3);
        assert!(run(&c).is_ok());
        c.discriminant = Some(2);
        assert!(run(&c).is_err());
    }
}
