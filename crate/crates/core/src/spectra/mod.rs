//! Adjacency spectra: a floating-point front end (Jacobi), exact certification
//! of integer and `±√d` eigenvalues with big-integer elimination, and exact
//! characteristic polynomials.

mod exact;
mod jacobi;
mod poly;

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::Graph;

pub use exact::{certify_integer_eigenvalue, distinct_eigenvalue_count};
pub use poly::{char_poly, esser_interlacing_check, multipartite_char_poly, CharPoly};

pub(crate) use exact::{annihilates, is_perfect_square, rank, IntMatrix};
pub(crate) use jacobi::symmetric_eigenvalues;

/// Default width of a float eigenvalue cluster.
pub const DEFAULT_CLUSTER_TOLERANCE: f64 = 1e-7;
/// A cluster centre this close to an integer is routed to exact certification.
pub const INTEGER_GATE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectraError {
    #[error("cluster tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error("Jacobi iteration did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("certification failed at {entry}: claimed multiplicity {claimed}, certified {certified}")]
    CertificationFailed { entry: String, claimed: usize, certified: usize },
    #[error("certification failed: {0}")]
    IdentityFailed(String),
    #[error("multiplicities sum to {found}, expected {expected}")]
    MultiplicityMismatch { expected: usize, found: usize },
    #[error("unsupported surd shape: {0}")]
    UnsupportedSurdShape(String),
    #[error("expected {expected} values, found {found}")]
    CountMismatch { expected: usize, found: usize },
    #[error("candidate spectrum has nonzero trace: {0}")]
    NonzeroTrace(String),
}

// ---------------------------------------------------------------------------
// Exact eigenvalues

/// An integer or a signed square root of a positive non-square integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExactEigenvalue {
    Integer(i64),
    Surd { sign: i8, radicand: u64 },
}

impl ExactEigenvalue {
    /// `sign·√radicand`, normalized to `Integer` when the radicand is a square.
    pub fn surd(sign: i8, radicand: u64) -> ExactEigenvalue {
        let sign = if sign < 0 { -1 } else { 1 };
        match is_perfect_square(radicand) {
            Some(r) => ExactEigenvalue::Integer(sign as i64 * r as i64),
            None => ExactEigenvalue::Surd { sign, radicand },
        }
    }

    pub fn value(&self) -> f64 {
        match *self {
            ExactEigenvalue::Integer(v) => v as f64,
            ExactEigenvalue::Surd { sign, radicand } => sign as f64 * (radicand as f64).sqrt(),
        }
    }

    /// The exact square of the value.
    pub fn square(&self) -> i128 {
        match *self {
            ExactEigenvalue::Integer(v) => v as i128 * v as i128,
            ExactEigenvalue::Surd { radicand, .. } => radicand as i128,
        }
    }

    pub fn signum(&self) -> i8 {
        match *self {
            ExactEigenvalue::Integer(v) => v.signum() as i8,
            ExactEigenvalue::Surd { sign, .. } => sign,
        }
    }

    pub fn is_integer(&self) -> bool {
        matches!(self, ExactEigenvalue::Integer(_))
    }

    pub fn abs(&self) -> ExactEigenvalue {
        match *self {
            ExactEigenvalue::Integer(v) => ExactEigenvalue::Integer(v.abs()),
            ExactEigenvalue::Surd { radicand, .. } => ExactEigenvalue::Surd { sign: 1, radicand },
        }
    }

    pub fn neg(&self) -> ExactEigenvalue {
        match *self {
            ExactEigenvalue::Integer(v) => ExactEigenvalue::Integer(-v),
            ExactEigenvalue::Surd { sign, radicand } => ExactEigenvalue::Surd { sign: -sign, radicand },
        }
    }
}

impl Ord for ExactEigenvalue {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (self.signum(), other.signum());
        if a != b {
            return a.cmp(&b);
        }
        let by_square = self.square().cmp(&other.square());
        if a >= 0 {
            by_square
        } else {
            by_square.reverse()
        }
    }
}

impl PartialOrd for ExactEigenvalue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExactEigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ExactEigenvalue::Integer(v) => write!(f, "{v}"),
            ExactEigenvalue::Surd { sign, radicand } => {
                write!(f, "{}sqrt({radicand})", if sign < 0 { "-" } else { "" })
            }
        }
    }
}

impl Serialize for ExactEigenvalue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

// ---------------------------------------------------------------------------
// Exact spectra

/// Exact eigenvalues with multiplicities, largest first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactSpectrum {
    n: usize,
    entries: Vec<(ExactEigenvalue, usize)>,
    certified: bool,
}

impl ExactSpectrum {
    /// Builds an uncertified candidate. Entries are merged and sorted; zero
    /// multiplicities are dropped. The trace must vanish.
    pub fn new(entries: impl IntoIterator<Item = (ExactEigenvalue, usize)>) -> Result<ExactSpectrum, SpectraError> {
        let mut list: Vec<(ExactEigenvalue, usize)> = Vec::new();
        for (value, mult) in entries {
            if mult == 0 {
                continue;
            }
            match list.iter_mut().find(|(v, _)| *v == value) {
                Some(slot) => slot.1 += mult,
                None => list.push((value, mult)),
            }
        }
        list.sort_by(|a, b| b.0.cmp(&a.0));
        let s = ExactSpectrum { n: list.iter().map(|e| e.1).sum(), entries: list, certified: false };
        if !s.trace_is_zero() {
            return Err(SpectraError::NonzeroTrace(s.to_string()));
        }
        Ok(s)
    }

    /// Convenience constructor for integral spectra.
    pub fn integral(entries: &[(i64, usize)]) -> Result<ExactSpectrum, SpectraError> {
        ExactSpectrum::new(entries.iter().map(|&(v, m)| (ExactEigenvalue::Integer(v), m)))
    }

    fn trace_is_zero(&self) -> bool {
        let mut integer_part: i128 = 0;
        let mut surd_parts: Vec<(u64, i128)> = Vec::new();
        for &(value, mult) in &self.entries {
            match value {
                ExactEigenvalue::Integer(v) => integer_part += v as i128 * mult as i128,
                ExactEigenvalue::Surd { sign, radicand } => {
                    let c = sign as i128 * mult as i128;
                    match surd_parts.iter_mut().find(|(d, _)| *d == radicand) {
                        Some(slot) => slot.1 += c,
                        None => surd_parts.push((radicand, c)),
                    }
                }
            }
        }
        // Square roots of distinct square-free parts are linearly independent
        // over ℚ, so each radicand's coefficients must cancel separately once
        // grouped by square-free kernel.
        let mut kernels: Vec<(u64, i128)> = Vec::new();
        for (d, c) in surd_parts {
            let (k, s) = square_free_part(d);
            match kernels.iter_mut().find(|(kk, _)| *kk == k) {
                Some(slot) => slot.1 += c * s as i128,
                None => kernels.push((k, c * s as i128)),
            }
        }
        integer_part == 0 && kernels.iter().all(|&(_, c)| c == 0)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[(ExactEigenvalue, usize)] {
        &self.entries
    }

    pub fn multiplicity(&self, value: ExactEigenvalue) -> usize {
        self.entries.iter().find(|e| e.0 == value).map_or(0, |e| e.1)
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|e| e.0.is_integer())
    }

    pub fn index(&self) -> ExactEigenvalue {
        self.entries[0].0
    }

    /// Distinct radicands of the surd entries, ascending.
    pub fn radicands(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self
            .entries
            .iter()
            .filter_map(|e| match e.0 {
                ExactEigenvalue::Surd { radicand, .. } => Some(radicand),
                ExactEigenvalue::Integer(_) => None,
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `Σ λ²·mult`, which equals `2m` for an adjacency spectrum.
    pub fn sum_of_squares(&self) -> i128 {
        self.entries.iter().map(|&(v, m)| v.square() * m as i128).sum()
    }

    /// All `n` eigenvalues as floats, descending.
    pub fn values(&self) -> Vec<f64> {
        self.entries
            .iter()
            .flat_map(|&(v, m)| std::iter::repeat_n(v.value(), m))
            .collect()
    }

    /// Union of two spectra (the spectrum of a disjoint union).
    pub fn merged(&self, other: &ExactSpectrum) -> ExactSpectrum {
        let mut s = ExactSpectrum::new(self.entries.iter().chain(&other.entries).copied())
            .expect("union of traceless spectra is traceless");
        s.certified = self.certified && other.certified;
        s
    }

    /// Every eigenvalue multiplied by the integer `k`.
    pub fn scaled(&self, k: i64) -> ExactSpectrum {
        let entries = self.entries.iter().map(|&(v, m)| {
            let w = match v {
                ExactEigenvalue::Integer(x) => ExactEigenvalue::Integer(x * k),
                ExactEigenvalue::Surd { sign, radicand } => {
                    ExactEigenvalue::surd(sign * k.signum() as i8, radicand * (k * k) as u64)
                }
            };
            (w, m)
        });
        let mut s = ExactSpectrum::new(entries).expect("scaling preserves zero trace");
        s.certified = self.certified && k != 0;
        s
    }
}

/// `d = k·s²` with `k` square-free; returns `(k, s)`.
pub(crate) fn square_free_part(mut d: u64) -> (u64, u64) {
    let mut s = 1;
    let mut p = 2;
    while p * p <= d {
        while d.is_multiple_of(p * p) {
            d /= p * p;
            s *= p;
        }
        p += 1;
    }
    (d, s)
}

impl fmt::Display for ExactSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (v, m)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}^{m}")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Float spectra

/// A run of float eigenvalues whose spread is within the cluster tolerance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cluster {
    pub center: f64,
    pub multiplicity: usize,
    pub min: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FloatSpectrum {
    values: Vec<f64>,
    cluster_tolerance: f64,
    clusters: Vec<Cluster>,
}

impl FloatSpectrum {
    fn from_sorted(values: Vec<f64>, tol: f64) -> FloatSpectrum {
        let mut clusters: Vec<Cluster> = Vec::new();
        let mut start = 0;
        for i in 1..=values.len() {
            if i == values.len() || values[start] - values[i] > tol {
                let run = &values[start..i];
                clusters.push(Cluster {
                    center: run.iter().sum::<f64>() / run.len() as f64,
                    multiplicity: run.len(),
                    min: run[run.len() - 1],
                    max: run[0],
                });
                start = i;
            }
        }
        FloatSpectrum { values, cluster_tolerance: tol, clusters }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn clusters(&self) -> &[Cluster] {
        &self.clusters
    }

    pub fn cluster_tolerance(&self) -> f64 {
        self.cluster_tolerance
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }
}

impl fmt::Display for FloatSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.clusters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}^{}", format_float(c.center), c.multiplicity)?;
        }
        Ok(())
    }
}

/// Formats with 12 significant digits, trimming trailing zeros.
pub fn format_float(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() { "0".into() } else { x.to_string() };
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        s = s.trim_end_matches('0').trim_end_matches('.').to_string();
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

/// Eigenvalues of `g` sorted descending, clustered with tolerance `tol`.
pub fn float_spectrum(g: &Graph, tol: f64) -> Result<FloatSpectrum, SpectraError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(SpectraError::InvalidTolerance(tol));
    }
    let values = symmetric_eigenvalues(g.adjacency_f64(), g.order())?;
    Ok(FloatSpectrum::from_sorted(values, tol))
}

// ---------------------------------------------------------------------------
// Certification

/// Either an exactly certified spectrum or the float spectrum it fell back to.
#[derive(Debug, Clone, PartialEq)]
pub enum Spectrum {
    Certified(ExactSpectrum),
    Uncertified(FloatSpectrum),
}

/// One distinct eigenvalue, exact when certified.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Eigen {
    Exact(ExactEigenvalue),
    Approx(f64),
}

impl Eigen {
    pub fn value(&self) -> f64 {
        match self {
            Eigen::Exact(e) => e.value(),
            Eigen::Approx(x) => *x,
        }
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        match self {
            Eigen::Exact(e) => e.signum() == 0,
            Eigen::Approx(x) => x.abs() <= tol,
        }
    }

    pub fn same_abs(&self, other: &Eigen, tol: f64) -> bool {
        match (self, other) {
            (Eigen::Exact(a), Eigen::Exact(b)) => a.square() == b.square(),
            _ => (self.value().abs() - other.value().abs()).abs() <= tol,
        }
    }

    /// `self == −other`.
    pub fn is_negation_of(&self, other: &Eigen, tol: f64) -> bool {
        match (self, other) {
            (Eigen::Exact(a), Eigen::Exact(b)) => *a == b.neg(),
            _ => (self.value() + other.value()).abs() <= tol,
        }
    }

    pub fn as_integer(&self) -> Option<i64> {
        match self {
            Eigen::Exact(ExactEigenvalue::Integer(v)) => Some(*v),
            _ => None,
        }
    }
}

impl fmt::Display for Eigen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Eigen::Exact(e) => write!(f, "{e}"),
            Eigen::Approx(x) => f.write_str(&format_float(*x)),
        }
    }
}

impl Serialize for Eigen {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Eigen::Exact(e) => e.serialize(s),
            Eigen::Approx(x) => s.serialize_f64(*x),
        }
    }
}

impl Spectrum {
    pub fn is_certified(&self) -> bool {
        matches!(self, Spectrum::Certified(_))
    }

    pub fn exact(&self) -> Option<&ExactSpectrum> {
        match self {
            Spectrum::Certified(s) => Some(s),
            Spectrum::Uncertified(_) => None,
        }
    }

    pub fn order(&self) -> usize {
        match self {
            Spectrum::Certified(s) => s.order(),
            Spectrum::Uncertified(s) => s.order(),
        }
    }

    /// Distinct eigenvalues with multiplicities, largest first.
    pub fn groups(&self) -> Vec<(Eigen, usize)> {
        match self {
            Spectrum::Certified(s) => s.entries().iter().map(|&(v, m)| (Eigen::Exact(v), m)).collect(),
            Spectrum::Uncertified(s) => s.clusters().iter().map(|c| (Eigen::Approx(c.center), c.multiplicity)).collect(),
        }
    }

    /// All eigenvalues as floats, descending.
    pub fn values(&self) -> Vec<f64> {
        match self {
            Spectrum::Certified(s) => s.values(),
            Spectrum::Uncertified(s) => s.values().to_vec(),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.exact().is_some_and(ExactSpectrum::is_integral)
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Spectrum::Certified(s) => write!(f, "{s}"),
            Spectrum::Uncertified(s) => write!(f, "{s}"),
        }
    }
}

/// Confirms `candidate` as the spectrum of `g` with exact integer arithmetic.
///
/// Integer entries are checked by nullity. When surds `±√d` occur for a single
/// radicand `d`, the polynomial `Π(x − eᵢ)·(x² − d)` over the integer entries
/// must annihilate `A`; the eigenvalues left over by the certified nullities
/// are then roots of `x² − d`, and the vanishing trace splits them evenly.
/// Several radicands are handled only through the connected components.
pub fn certify_spectrum(g: &Graph, candidate: &ExactSpectrum) -> Result<ExactSpectrum, SpectraError> {
    let n = g.order();
    if candidate.order() != n {
        return Err(SpectraError::MultiplicityMismatch { expected: n, found: candidate.order() });
    }
    if candidate.sum_of_squares() != 2 * g.edge_count() as i128 {
        return Err(SpectraError::IdentityFailed(format!(
            "sum of squared eigenvalues {} differs from 2m = {}",
            candidate.sum_of_squares(),
            2 * g.edge_count()
        )));
    }
    let radicands = candidate.radicands();
    if radicands.len() > 1 {
        return certify_by_components(g, candidate);
    }
    let mut integer_roots = Vec::new();
    for &(value, claimed) in candidate.entries() {
        if let ExactEigenvalue::Integer(e) = value {
            let certified = certify_integer_eigenvalue(g, e);
            if certified != claimed {
                return Err(SpectraError::CertificationFailed { entry: value.to_string(), claimed, certified });
            }
            integer_roots.push(e);
        }
    }
    if let Some(&d) = radicands.first() {
        if !annihilates(g, &integer_roots, Some(d)) {
            return Err(SpectraError::IdentityFailed(format!(
                "minimal polynomial identity for sqrt({d}) does not hold"
            )));
        }
    }
    let mut s = candidate.clone();
    s.certified = true;
    Ok(s)
}

fn certify_by_components(g: &Graph, candidate: &ExactSpectrum) -> Result<ExactSpectrum, SpectraError> {
    let components = g.connected_components();
    if components.len() == 1 {
        return Err(SpectraError::UnsupportedSurdShape(format!(
            "connected graph with several radicands: {candidate}"
        )));
    }
    let mut merged: Option<ExactSpectrum> = None;
    for c in &components {
        match exact_spectrum(&c.graph)? {
            Spectrum::Certified(s) => merged = Some(merged.map_or(s.clone(), |m| m.merged(&s))),
            Spectrum::Uncertified(_) => {
                return Err(SpectraError::UnsupportedSurdShape(format!(
                    "a component of order {} has no exact spectrum",
                    c.graph.order()
                )))
            }
        }
    }
    let merged = merged.expect("at least one component");
    if merged.entries() != candidate.entries() {
        return Err(SpectraError::IdentityFailed(format!("component spectra give {merged}, not {candidate}")));
    }
    Ok(merged)
}

/// Exact spectrum when the float clusters round to integers or to one family
/// `±√d`; otherwise the float spectrum, marked uncertified.
pub fn exact_spectrum(g: &Graph) -> Result<Spectrum, SpectraError> {
    exact_spectrum_with(g, DEFAULT_CLUSTER_TOLERANCE)
}

pub fn exact_spectrum_with(g: &Graph, tol: f64) -> Result<Spectrum, SpectraError> {
    let fs = float_spectrum(g, tol)?;
    match candidate_from_clusters(&fs) {
        Some(candidate) => certify_spectrum(g, &candidate).map(Spectrum::Certified),
        None if !g.is_connected() => {
            let mut merged: Option<ExactSpectrum> = None;
            for c in g.connected_components() {
                match exact_spectrum_with(&c.graph, tol)? {
                    Spectrum::Certified(s) => merged = Some(merged.map_or(s.clone(), |m| m.merged(&s))),
                    Spectrum::Uncertified(_) => return Ok(Spectrum::Uncertified(fs)),
                }
            }
            Ok(Spectrum::Certified(merged.expect("at least one component")))
        }
        None => Ok(Spectrum::Uncertified(fs)),
    }
}

/// Rounds clusters to an exact candidate: integers within the gate, and
/// symmetric non-integer pairs `±θ` with `θ²` within the gate of a common
/// integer `d`.
fn candidate_from_clusters(fs: &FloatSpectrum) -> Option<ExactSpectrum> {
    let mut entries = Vec::new();
    let mut surds: Vec<(f64, usize)> = Vec::new();
    for c in fs.clusters() {
        let r = c.center.round();
        if (c.center - r).abs() <= INTEGER_GATE {
            entries.push((ExactEigenvalue::Integer(r as i64), c.multiplicity));
        } else {
            surds.push((c.center, c.multiplicity));
        }
    }
    if !surds.is_empty() {
        let d = (surds[0].0 * surds[0].0).round();
        if d < 1.0 {
            return None;
        }
        for &(theta, mult) in &surds {
            if (theta * theta - d).abs() > INTEGER_GATE {
                return None;
            }
            let partner = surds.iter().find(|(x, _)| (x + theta).abs() <= INTEGER_GATE)?;
            if partner.1 != mult {
                return None;
            }
            entries.push((ExactEigenvalue::surd(if theta < 0.0 { -1 } else { 1 }, d as u64), mult));
        }
    }
    ExactSpectrum::new(entries).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn int(v: i64) -> ExactEigenvalue {
        ExactEigenvalue::Integer(v)
    }

    #[test]
    fn eigenvalue_order_and_normalization() {
        assert_eq!(ExactEigenvalue::surd(-1, 9), int(-3));
        let s6 = ExactEigenvalue::surd(1, 6);
        assert!(int(2) < s6 && s6 < int(3));
        assert!(s6.neg() < int(-2) && s6.neg() > int(-3));
        assert!(int(0) < s6 && s6.neg() < int(0));
        assert_eq!(s6.to_string(), "sqrt(6)");
        assert_eq!(s6.neg().to_string(), "-sqrt(6)");
    }

    #[test]
    fn spectrum_display_and_trace() {
        let s = ExactSpectrum::new([
            (ExactEigenvalue::surd(1, 6), 1),
            (int(0), 3),
            (ExactEigenvalue::surd(-1, 6), 1),
        ])
        .unwrap();
        assert_eq!(s.to_string(), "sqrt(6)^1 0^3 -sqrt(6)^1");
        assert!(ExactSpectrum::integral(&[(1, 1), (0, 1)]).is_err());
        // √8 = 2√2 cancels against two copies of −√2.
        assert!(ExactSpectrum::new([(ExactEigenvalue::surd(1, 8), 1), (ExactEigenvalue::surd(-1, 2), 2)]).is_ok());
    }

    #[test]
    fn float_spectra_examples() {
        let k2 = float_spectrum(&Graph::complete(2).unwrap(), 1e-9).unwrap();
        assert!((k2.values()[0] - 1.0).abs() < 1e-12 && (k2.values()[1] + 1.0).abs() < 1e-12);
        let shr = float_spectrum(&families::shrikhande(), 1e-9).unwrap();
        let shape: Vec<(i64, usize)> = shr.clusters().iter().map(|c| (c.center.round() as i64, c.multiplicity)).collect();
        assert_eq!(shape, vec![(6, 1), (2, 6), (-2, 9)]);
        let p3 = float_spectrum(&Graph::path(3).unwrap(), 1e-9).unwrap();
        let r2 = 2f64.sqrt();
        assert!((p3.values()[0] - r2).abs() < 1e-12 && p3.values()[1].abs() < 1e-12 && (p3.values()[2] + r2).abs() < 1e-12);
        assert!(float_spectrum(&Graph::path(3).unwrap(), 0.0).is_err());
    }

    #[test]
    fn cluster_diameters_bounded() {
        let g = families::ag32_graph();
        let fs = float_spectrum(&g, 1e-7).unwrap();
        assert!(fs.values().iter().sum::<f64>().abs() <= g.order() as f64 * 1e-7);
        for c in fs.clusters() {
            assert!(c.max - c.min <= 1e-7);
        }
    }

    #[test]
    fn certify_examples() {
        let k23 = Graph::complete_bipartite(2, 3).unwrap();
        let cand = ExactSpectrum::new([
            (ExactEigenvalue::surd(1, 6), 1),
            (int(0), 3),
            (ExactEigenvalue::surd(-1, 6), 1),
        ])
        .unwrap();
        assert!(certify_spectrum(&k23, &cand).unwrap().is_certified());

        let cone = families::shrikhande().cone().unwrap();
        let c = certify_spectrum(&cone, &ExactSpectrum::integral(&[(8, 1), (2, 6), (-2, 10)]).unwrap()).unwrap();
        assert!(c.is_certified());

        let ag = families::ag32_graph();
        assert!(certify_spectrum(&ag, &ExactSpectrum::integral(&[(14, 1), (2, 7), (-2, 14)]).unwrap()).is_ok());
    }

    #[test]
    fn certify_rejects_wrong_candidates() {
        let k4 = Graph::complete(4).unwrap();
        let wrong = ExactSpectrum::integral(&[(2, 1), (1, 1), (-1, 1), (-2, 1)]).unwrap();
        assert!(matches!(certify_spectrum(&k4, &wrong), Err(SpectraError::IdentityFailed(_))));
        let wrong_order = ExactSpectrum::integral(&[(1, 1), (-1, 1)]).unwrap();
        assert!(matches!(certify_spectrum(&k4, &wrong_order), Err(SpectraError::MultiplicityMismatch { .. })));
        // Right trace and right 2m, wrong split between 1 and -1.
        let c4 = Graph::cycle(4).unwrap();
        let fake = ExactSpectrum::new([
            (ExactEigenvalue::surd(1, 2), 1),
            (int(1), 1),
            (int(-1), 1),
            (ExactEigenvalue::surd(-1, 2), 1),
        ])
        .unwrap();
        assert!(certify_spectrum(&c4, &fake).is_err());
    }

    #[test]
    fn exact_spectrum_examples() {
        let k44 = exact_spectrum(&Graph::complete_bipartite(4, 4).unwrap()).unwrap();
        assert_eq!(k44.to_string(), "4^1 0^6 -4^1");
        assert!(k44.is_certified());
        let k23 = exact_spectrum(&Graph::complete_bipartite(2, 3).unwrap()).unwrap();
        assert_eq!(k23.to_string(), "sqrt(6)^1 0^3 -sqrt(6)^1");
        let pet = families::petersen();
        assert_eq!(exact_spectrum(&pet).unwrap().to_string(), "3^1 1^5 -2^4");
        // Heawood graph: surd pair with multiplicity 6.
        let heawood = families::incidence_graph(&families::fano_plane());
        assert_eq!(exact_spectrum(&heawood).unwrap().to_string(), "3^1 sqrt(2)^6 -sqrt(2)^6 -3^1");
        // P4 is neither integral nor a single surd family.
        assert!(!exact_spectrum(&Graph::path(4).unwrap()).unwrap().is_certified());
    }

    #[test]
    fn disconnected_mixed_radicands() {
        let g = Graph::disjoint_union(&[
            Graph::complete_bipartite(2, 3).unwrap(),
            Graph::complete_bipartite(1, 2).unwrap(),
            Graph::complete_bipartite(2, 2).unwrap(),
        ])
        .unwrap();
        let s = exact_spectrum(&g).unwrap();
        assert_eq!(s.to_string(), "sqrt(6)^1 2^1 sqrt(2)^1 0^6 -sqrt(2)^1 -2^1 -sqrt(6)^1");
        assert!(certify_spectrum(&g, s.exact().unwrap()).is_ok());
    }

    #[test]
    fn float_format() {
        assert_eq!(format_float(2f64.sqrt()), "1.41421356237");
        assert_eq!(format_float(-2.0000000000001), "-2");
        assert_eq!(format_float(0.0), "0");
        assert_eq!(format_float(-1e-15), "-0.000000000000001");
        assert_eq!(format_float(123456.7), "123456.7");
    }
}
