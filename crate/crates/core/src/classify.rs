//! Membership in the classes 𝒢 (nonzero eigenvalues other than the index share
//! one absolute value) and ℋ (connected, irregular, `|λ₂| = … = |λₙ|`),
//! spectrum shapes, strongly regular / design / multiplicative structure, and
//! per-graph checks of the characterization results for these classes.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::energy::{bound_report_from, BoundReport, EnergyError};
use crate::families::{ag32_graph, lattice_l2_4, shrikhande, SrgParams};
use crate::graph::Graph;
use crate::iso::are_isomorphic;
use crate::spectra::{
    distinct_eigenvalue_count, exact_spectrum, float_spectrum, Eigen, SpectraError, Spectrum, DEFAULT_CLUSTER_TOLERANCE,
};

/// Slack for comparing float eigenvalues when a spectrum is uncertified.
pub const PATTERN_TOLERANCE: f64 = 1e-6;

/// Largest allowed gap between a certified eigenvalue and its float counterpart.
pub const AGREEMENT_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Energy(#[from] EnergyError),
    #[error("graph has no edges")]
    EmptyGraph,
}

/// Shape of a spectrum. Exponents follow
/// `Case1a = {λ, 0^{n−t−1}, μ^t}`, `Case1b = {λ, μ^{n−t−1}, (−μ)^t}` and
/// `Case2 = {λ, μ^{n−k−t−1}, 0^t, (−μ)^k}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum SpectrumPattern {
    Empty,
    /// Two distinct eigenvalues: a union of cliques of size `part_size`.
    TwoDistinct { lambda: Eigen, part_size: Option<usize> },
    Case1a { lambda: Eigen, mu: Eigen, t: usize },
    Case1b { lambda: Eigen, mu: Eigen, t: usize },
    Case2 { lambda: Eigen, mu: Eigen, t: usize, k: usize },
    /// Disconnected, every nonzero eigenvalue is `±λ`; `t` zeros.
    DisconnectedSymmetric { lambda: Eigen, t: usize },
    /// Disconnected with simple index `λ` and other nonzero eigenvalues `±μ`;
    /// `t` zeros and `k` copies of `−μ`.
    DisconnectedIndexed { lambda: Eigen, mu: Eigen, t: usize, k: usize },
    Other,
}

impl SpectrumPattern {
    pub fn name(&self) -> &'static str {
        match self {
            SpectrumPattern::Empty => "Empty",
            SpectrumPattern::TwoDistinct { .. } => "TwoDistinct",
            SpectrumPattern::Case1a { .. } => "Case1a",
            SpectrumPattern::Case1b { .. } => "Case1b",
            SpectrumPattern::Case2 { .. } => "Case2",
            SpectrumPattern::DisconnectedSymmetric { .. } => "DisconnectedSymmetric",
            SpectrumPattern::DisconnectedIndexed { .. } => "DisconnectedIndexed",
            SpectrumPattern::Other => "Other",
        }
    }
}

impl fmt::Display for SpectrumPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectrumPattern::Empty | SpectrumPattern::Other => f.write_str(self.name()),
            SpectrumPattern::TwoDistinct { lambda, part_size } => match part_size {
                Some(s) => write!(f, "TwoDistinct({lambda},{s})"),
                None => write!(f, "TwoDistinct({lambda})"),
            },
            SpectrumPattern::Case1a { lambda, mu, t } | SpectrumPattern::Case1b { lambda, mu, t } => {
                write!(f, "{}({lambda},{mu},{t})", self.name())
            }
            SpectrumPattern::Case2 { lambda, mu, t, k } | SpectrumPattern::DisconnectedIndexed { lambda, mu, t, k } => {
                write!(f, "{}({lambda},{mu},{t},{k})", self.name())
            }
            SpectrumPattern::DisconnectedSymmetric { lambda, t } => write!(f, "{}({lambda},{t})", self.name()),
        }
    }
}

fn is_positive(e: &Eigen) -> bool {
    !e.is_zero(PATTERN_TOLERANCE) && e.value() > 0.0
}

fn is_negative(e: &Eigen) -> bool {
    !e.is_zero(PATTERN_TOLERANCE) && e.value() < 0.0
}

/// Shape of a spectrum alone, ignoring connectivity.
pub fn classify_pattern(s: &Spectrum) -> SpectrumPattern {
    let groups = s.groups();
    let tol = PATTERN_TOLERANCE;
    if groups.iter().all(|(e, _)| e.is_zero(tol)) {
        return SpectrumPattern::Empty;
    }
    let (lambda, lambda_mult) = groups[0];
    if groups.len() == 2 {
        let part_size = lambda.as_integer().map(|v| v as usize + 1);
        return SpectrumPattern::TwoDistinct { lambda, part_size };
    }
    if lambda_mult != 1 {
        return SpectrumPattern::Other;
    }
    match groups[1..] {
        [(a, _), (b, mb)] if a.is_zero(tol) && is_negative(&b) => SpectrumPattern::Case1a { lambda, mu: b, t: mb },
        [(a, _), (b, mb)] if is_positive(&a) && b.is_negation_of(&a, tol) => {
            SpectrumPattern::Case1b { lambda, mu: a, t: mb }
        }
        [(a, _), (z, t), (b, k)] if is_positive(&a) && z.is_zero(tol) && b.is_negation_of(&a, tol) => {
            SpectrumPattern::Case2 { lambda, mu: a, t, k }
        }
        _ => SpectrumPattern::Other,
    }
}

/// Shape of the spectrum of `g`; disconnected members of 𝒢 map to the
/// disconnected variants.
pub fn classify_pattern_for(g: &Graph, s: &Spectrum) -> SpectrumPattern {
    let p = classify_pattern(s);
    if g.is_connected() || matches!(p, SpectrumPattern::Empty) || !spectrum_in_g(s) {
        return p;
    }
    let groups = s.groups();
    let tol = PATTERN_TOLERANCE;
    let lambda = groups[0].0;
    let zeros = groups.iter().find(|(e, _)| e.is_zero(tol)).map_or(0, |g| g.1);
    let others: Vec<(Eigen, usize)> = groups[1..].iter().copied().filter(|(e, _)| !e.is_zero(tol)).collect();
    if groups[0].1 > 1 || others.iter().all(|(e, _)| e.same_abs(&lambda, tol)) {
        return SpectrumPattern::DisconnectedSymmetric { lambda, t: zeros };
    }
    let neg = others.iter().find(|(e, _)| is_negative(e)).copied();
    match neg {
        Some((mu_neg, k)) => SpectrumPattern::DisconnectedIndexed {
            lambda,
            mu: Eigen::Exact(match mu_neg {
                Eigen::Exact(e) => e.abs(),
                Eigen::Approx(_) => return approx_indexed(lambda, mu_neg, zeros, k),
            }),
            t: zeros,
            k,
        },
        None => SpectrumPattern::Other,
    }
}

fn approx_indexed(lambda: Eigen, mu_neg: Eigen, t: usize, k: usize) -> SpectrumPattern {
    SpectrumPattern::DisconnectedIndexed { lambda, mu: Eigen::Approx(-mu_neg.value()), t, k }
}

/// All eigenvalues after removing one copy of the index.
fn without_index(s: &Spectrum) -> Vec<(Eigen, usize)> {
    let mut groups = s.groups();
    groups[0].1 -= 1;
    groups.into_iter().filter(|g| g.1 > 0).collect()
}

/// Nonzero eigenvalues other than one copy of the index share one absolute value.
pub fn spectrum_in_g(s: &Spectrum) -> bool {
    let tol = PATTERN_TOLERANCE;
    let rest: Vec<Eigen> = without_index(s).into_iter().map(|g| g.0).filter(|e| !e.is_zero(tol)).collect();
    !rest.is_empty() && rest.iter().all(|e| e.same_abs(&rest[0], tol))
}

/// `|λ₂| = … = |λₙ|`, zero included.
pub fn spectrum_km_literal(s: &Spectrum) -> bool {
    let rest = without_index(s);
    !rest.is_empty() && rest.iter().all(|(e, _)| e.same_abs(&rest[0].0, PATTERN_TOLERANCE))
}

/// Membership in 𝒢 with its pattern as witness. The boolean is decided
/// exactly when the spectrum is certified.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Membership {
    pub member: bool,
    pub certified: bool,
    pub pattern: SpectrumPattern,
}

pub fn in_g(g: &Graph) -> Result<Membership, ClassifyError> {
    if g.edge_count() == 0 {
        return Err(ClassifyError::EmptyGraph);
    }
    let s = exact_spectrum(g)?;
    Ok(Membership { member: spectrum_in_g(&s), certified: s.is_certified(), pattern: classify_pattern_for(g, &s) })
}

pub fn in_h(g: &Graph) -> Result<bool, ClassifyError> {
    if g.edge_count() == 0 {
        return Ok(false);
    }
    let s = exact_spectrum(g)?;
    Ok(g.is_connected() && g.regular_degree().is_none() && spectrum_km_literal(&s))
}

/// Combinatorial strongly-regular detection.
pub fn detect_srg(g: &Graph) -> Option<SrgParams> {
    let n = g.order();
    let r = g.regular_degree()?;
    if r == 0 || r + 1 == n {
        return None;
    }
    let (mut alpha, mut beta) = (None, None);
    for i in 0..n {
        for j in (i + 1)..n {
            let c = g.common_neighbors(i, j);
            let slot = if g.has_edge(i, j) { &mut alpha } else { &mut beta };
            match *slot {
                None => *slot = Some(c),
                Some(x) if x != c => return None,
                Some(_) => {}
            }
        }
    }
    Some(SrgParams { n, r, alpha: alpha?, beta: beta? })
}

/// `(n, r, α)` of a design graph `srg(n, r, α, α)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DesignParams {
    pub n: usize,
    pub r: usize,
    pub alpha: usize,
}

pub fn is_design_graph(g: &Graph) -> Option<DesignParams> {
    detect_srg(g).filter(|p| p.alpha == p.beta).map(|p| DesignParams { n: p.n, r: p.r, alpha: p.alpha })
}

/// `A² = dI + ααᵗ` with `α > 0`; `alpha_sq` holds the squared entries of `α`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Multiplicative {
    pub d: u64,
    pub alpha_sq: Vec<u64>,
}

fn multiplicative_with(g: &Graph, d: u64) -> Option<Multiplicative> {
    let n = g.order();
    let diag: Vec<u64> = (0..n).map(|i| g.degree(i) as u64).collect();
    if diag.iter().any(|&x| x <= d) {
        return None;
    }
    let alpha_sq: Vec<u64> = diag.iter().map(|&x| x - d).collect();
    for i in 0..n {
        for j in (i + 1)..n {
            let c = g.common_neighbors(i, j) as u64;
            if c * c != alpha_sq[i] * alpha_sq[j] {
                return None;
            }
        }
    }
    Some(Multiplicative { d, alpha_sq })
}

/// Multiplicative test on `B = A²`: `B − dI` must be a positive rank-one
/// matrix. `d` is `μ²` when the pattern supplies `μ`, otherwise it is searched.
pub fn is_multiplicative(g: &Graph, pattern: Option<&SpectrumPattern>) -> Option<Multiplicative> {
    if let Some(SpectrumPattern::Case1b { mu, .. }) = pattern {
        if let Some(m) = mu.as_integer() {
            return multiplicative_with(g, (m * m) as u64);
        }
    }
    let min_diag = (0..g.order()).map(|i| g.degree(i)).min().unwrap_or(0) as u64;
    (0..=min_diag).find_map(|d| multiplicative_with(g, d))
}

// ---------------------------------------------------------------------------
// Verdicts

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "snake_case")]
pub enum Verdict {
    Pass(String),
    Fail(String),
    NotApplicable(String),
}

impl Verdict {
    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail(_))
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass(_))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass(s) => write!(f, "pass: {s}"),
            Verdict::Fail(s) => write!(f, "FAIL: {s}"),
            Verdict::NotApplicable(s) => write!(f, "n/a: {s}"),
        }
    }
}

fn pass(s: impl Into<String>) -> Verdict {
    Verdict::Pass(s.into())
}

fn fail(s: impl Into<String>) -> Verdict {
    Verdict::Fail(s.into())
}

fn skip(s: impl Into<String>) -> Verdict {
    Verdict::NotApplicable(s.into())
}

/// Identifiers of the per-graph checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// Connected `{λ, 0, μ}`: complete bipartite or equal-part multipartite.
    ZeroEigenvalueCase,
    /// Connected `{λ, μ, −μ}`: integral multiplicative, design graph or known cone.
    NonzeroThreeCase,
    /// Connected `{λ, μ, 0, −μ}`: integral; regular ones are the cube family.
    FourEigenvalueCase,
    /// Disconnected members of 𝒢 and their components.
    DisconnectedCase,
    /// Three eigenvalues and bipartite or irrational index ⇒ complete bipartite.
    ThreeEigenvalueBipartite,
    /// Complete multipartite ⇔ `λ₂ ≤ 0`.
    MultipartiteSecondEigenvalue,
    /// Strongly regular ⇔ connected regular with three eigenvalues.
    SrgThreeEigenvalues,
    /// Complement of a connected regular four-eigenvalue graph.
    RegularComplement,
    /// No connected regular graph has spectrum `{r, −1, δ^m, ζ^{n−2−m}}`.
    ForbiddenRegularShape,
    /// Lower energy bound attained ⇔ membership in 𝒢.
    LowerBoundEquality,
    /// Upper energy bound attained ⇔ `|λ₂| = … = |λₙ|`.
    UpperBoundEquality,
    /// Energy lies between the bounds.
    BoundOrdering,
    /// A certified spectrum agrees with the numerical one.
    FloatExactAgreement,
}

impl Check {
    pub const ALL: [Check; 13] = [
        Check::ZeroEigenvalueCase,
        Check::NonzeroThreeCase,
        Check::FourEigenvalueCase,
        Check::DisconnectedCase,
        Check::ThreeEigenvalueBipartite,
        Check::MultipartiteSecondEigenvalue,
        Check::SrgThreeEigenvalues,
        Check::RegularComplement,
        Check::ForbiddenRegularShape,
        Check::LowerBoundEquality,
        Check::UpperBoundEquality,
        Check::BoundOrdering,
        Check::FloatExactAgreement,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Check::ZeroEigenvalueCase => "zero-eigenvalue-case",
            Check::NonzeroThreeCase => "nonzero-three-case",
            Check::FourEigenvalueCase => "four-eigenvalue-case",
            Check::DisconnectedCase => "disconnected-case",
            Check::ThreeEigenvalueBipartite => "three-eigenvalue-bipartite",
            Check::MultipartiteSecondEigenvalue => "multipartite-second-eigenvalue",
            Check::SrgThreeEigenvalues => "srg-three-eigenvalues",
            Check::RegularComplement => "regular-complement",
            Check::ForbiddenRegularShape => "forbidden-regular-shape",
            Check::LowerBoundEquality => "lower-bound-equality",
            Check::UpperBoundEquality => "upper-bound-equality",
            Check::BoundOrdering => "bound-ordering",
            Check::FloatExactAgreement => "float-exact-agreement",
        }
    }

    pub fn from_id(id: &str) -> Option<Check> {
        Check::ALL.into_iter().find(|c| c.id() == id)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Everything the checks share about one graph, computed once.
pub struct Analysis<'g> {
    pub graph: &'g Graph,
    pub spectrum: Spectrum,
    pub pattern: SpectrumPattern,
    pub connected: bool,
    pub regular: Option<usize>,
    pub in_g: bool,
    pub km_literal: bool,
    bounds: Option<BoundReport>,
}

impl<'g> Analysis<'g> {
    pub fn new(g: &'g Graph) -> Result<Analysis<'g>, ClassifyError> {
        let spectrum = exact_spectrum(g)?;
        Analysis::with_spectrum(g, spectrum)
    }

    pub fn with_spectrum(g: &'g Graph, spectrum: Spectrum) -> Result<Analysis<'g>, ClassifyError> {
        let nonempty = g.edge_count() > 0;
        let bounds = if nonempty { Some(bound_report_from(g, &spectrum)?) } else { None };
        Ok(Analysis {
            graph: g,
            pattern: classify_pattern_for(g, &spectrum),
            connected: g.is_connected(),
            regular: g.regular_degree(),
            in_g: nonempty && spectrum_in_g(&spectrum),
            km_literal: nonempty && spectrum_km_literal(&spectrum),
            spectrum,
            bounds,
        })
    }

    pub fn in_h(&self) -> bool {
        self.km_literal && self.connected && self.regular.is_none()
    }

    pub fn bounds(&self) -> Option<&BoundReport> {
        self.bounds.as_ref()
    }

    pub fn check(&self, c: Check) -> Verdict {
        match c {
            Check::ZeroEigenvalueCase => zero_eigenvalue_case(self),
            Check::NonzeroThreeCase => nonzero_three_case(self),
            Check::FourEigenvalueCase => four_eigenvalue_case(self),
            Check::DisconnectedCase => disconnected_case(self),
            Check::ThreeEigenvalueBipartite => three_eigenvalue_bipartite(self),
            Check::MultipartiteSecondEigenvalue => multipartite_second_eigenvalue(self),
            Check::SrgThreeEigenvalues => srg_three_eigenvalues(self),
            Check::RegularComplement => regular_complement(self),
            Check::ForbiddenRegularShape => forbidden_regular_shape(self),
            Check::LowerBoundEquality => lower_bound_equality(self),
            Check::UpperBoundEquality => upper_bound_equality(self),
            Check::BoundOrdering => bound_ordering(self),
            Check::FloatExactAgreement => float_exact_agreement(self),
        }
    }
}

fn certified_note(a: &Analysis) -> &'static str {
    if a.spectrum.is_certified() {
        "exact"
    } else {
        "approximate"
    }
}

fn zero_eigenvalue_case(a: &Analysis) -> Verdict {
    let SpectrumPattern::Case1a { lambda, mu, t } = a.pattern else {
        return skip("pattern is not {λ, 0, μ}");
    };
    if !a.connected {
        return skip("disconnected");
    }
    if !a.spectrum.is_certified() {
        return fail(format!("spectrum {} is not certified", a.spectrum));
    }
    let parts = a.graph.complete_multipartite_parts();
    if mu.is_negation_of(&lambda, 0.0) {
        match a.graph.complete_bipartite_parts() {
            Some((p, q)) => pass(format!("μ = −λ and G = K_{{{p},{q}}}")),
            None => fail(format!("μ = −λ = {mu} but G is not complete bipartite")),
        }
    } else {
        let (Some(m), Some(parts)) = (mu.as_integer(), parts) else {
            return fail(format!("μ = {mu} ≠ −λ but G is not an integral complete multipartite graph"));
        };
        let size = (-m) as usize;
        if t >= 2 && parts.len() == t + 1 && parts.iter().all(|&p| p == size) {
            pass(format!("complete {}-partite with parts of size {size}", t + 1))
        } else {
            fail(format!("μ = {m}, t = {t} but parts are {parts:?}"))
        }
    }
}

fn nonzero_three_case(a: &Analysis) -> Verdict {
    let SpectrumPattern::Case1b { lambda, mu, .. } = a.pattern else {
        return skip("pattern is not {λ, μ, −μ}");
    };
    if !a.connected {
        return skip("disconnected");
    }
    if !a.spectrum.is_integral() {
        return fail(format!("spectrum {} is not certified integral", a.spectrum));
    }
    let (l, m) = (lambda.as_integer().unwrap_or(0), mu.as_integer().unwrap_or(0));
    if m < 2 {
        return fail(format!("μ = {m} < 2"));
    }
    let Some(mult) = is_multiplicative(a.graph, Some(&a.pattern)) else {
        return fail("A² − μ²I is not a positive rank-one matrix");
    };
    let n = a.graph.order();
    let design_alpha = l - m * m;
    match a.regular {
        Some(_) => match detect_srg(a.graph) {
            Some(p) if p.alpha == p.beta && p.alpha as i64 == design_alpha && p.r as i64 == l => {
                pass(format!("regular design graph srg{p}, multiplicative with d = {}", mult.d))
            }
            other => fail(format!(
                "regular but not a design graph ({n},{l},{design_alpha},{design_alpha}); srg = {other:?}"
            )),
        },
        None if m == 2 => {
            let targets = [
                ("cone over the Shrikhande graph", shrikhande().cone().expect("small")),
                ("cone over the lattice graph L2(4)", lattice_l2_4().cone().expect("small")),
                ("points and planes of AG(3,2)", ag32_graph()),
            ];
            match targets.iter().find(|(_, t)| are_isomorphic(a.graph, t)) {
                Some((name, _)) => pass(format!("irregular with μ = 2: {name}")),
                None => fail("irregular with μ = 2 but none of the three known graphs"),
            }
        }
        None if n > 30 => pass(format!("irregular with μ = {m} on {n} > 30 vertices")),
        None => fail(format!("irregular with μ = {m} on only {n} vertices")),
    }
}

fn four_eigenvalue_case(a: &Analysis) -> Verdict {
    let SpectrumPattern::Case2 { lambda, mu, .. } = a.pattern else {
        return skip("pattern is not {λ, μ, 0, −μ}");
    };
    if !a.connected {
        return skip("disconnected");
    }
    if !a.spectrum.is_integral() {
        return fail(format!("spectrum {} is not certified integral", a.spectrum));
    }
    if a.regular.is_none() {
        return pass("irregular-case2");
    }
    let groups = a.spectrum.groups();
    if groups[1..].iter().all(|g| g.1 > 1) {
        return pass("index-only-simple");
    }
    let m = mu.as_integer().unwrap_or(0);
    if m % 2 != 0 {
        return fail(format!("a non-index eigenvalue is simple but μ = {m} is odd"));
    }
    let target = Graph::k_minus(4)
        .and_then(|q3| q3.star_j((m / 2) as usize))
        .map(|g| g.complement())
        .expect("small construction");
    if are_isomorphic(a.graph, &target) {
        pass(format!("complement of Q3 ⊛ J_{} (λ = {lambda})", m / 2))
    } else {
        fail("a non-index eigenvalue is simple but G is not the cube family member")
    }
}

fn is_kpq_with(g: &Graph, product: i128) -> bool {
    g.complete_bipartite_parts().is_some_and(|(p, q)| (p * q) as i128 == product)
}

fn disconnected_case(a: &Analysis) -> Verdict {
    if a.connected {
        return skip("connected");
    }
    if a.graph.edge_count() == 0 {
        return skip("no edges");
    }
    let components: Vec<Graph> = a.graph.connected_components().into_iter().map(|c| c.graph).collect();
    let nontrivial: Vec<&Graph> = components.iter().filter(|c| c.order() > 1).collect();
    let Some(s) = a.spectrum.exact() else {
        return if a.in_g {
            fail(format!("member of G with uncertified spectrum {}", a.spectrum))
        } else {
            pass("not a member; spectrum uncertified")
        };
    };
    let lambda = s.index();
    let lambda_sq = lambda.square();
    let same_pq = nontrivial
        .first()
        .and_then(|c| c.complete_bipartite_parts())
        .map(|(p, q)| (p * q) as i128)
        .filter(|&pq| nontrivial.iter().all(|c| is_kpq_with(c, pq)));

    if !a.in_g {
        // Converse of the symmetric case: equal-product K_{p,q} unions are members.
        return match same_pq {
            Some(pq) => fail(format!("components are K_{{p,q}} with pq = {pq} but G is not a member")),
            None => converse_indexed(a, &components, &nontrivial),
        };
    }

    let symmetric = s.entries().iter().all(|(e, _)| e.signum() == 0 || e.square() == lambda_sq);
    if symmetric {
        if !nontrivial.iter().all(|c| is_kpq_with(c, lambda_sq)) {
            return fail(format!("all nonzero eigenvalues are ±{lambda} but a component is not K_{{p,q}} with pq = λ²"));
        }
        let all_k2 = nontrivial.iter().all(|c| c.order() == 2);
        if (lambda_sq == 1) != all_k2 {
            return fail("λ = 1 must hold exactly when every nontrivial component is K2");
        }
        return pass(format!("symmetric case: {} copies of K_{{p,q}} with pq = {lambda_sq}", nontrivial.len()));
    }

    // Indexed case.
    if !s.is_integral() {
        return fail(format!("indexed case with non-integral spectrum {s}"));
    }
    let SpectrumPattern::DisconnectedIndexed { mu, k, .. } = a.pattern else {
        return fail(format!("member of G with unexpected pattern {}", a.pattern));
    };
    let mu = mu.as_integer().unwrap_or(0);
    if k < 2 || mu < 1 {
        return fail(format!("indexed case needs k ≥ 2 and μ ≥ 1, got k = {k}, μ = {mu}"));
    }
    let mut carriers = Vec::new();
    for c in &components {
        let Ok(cs) = exact_spectrum(c) else { return fail("component spectrum failed") };
        if cs.exact().is_some_and(|e| e.index() == lambda) {
            carriers.push((c, cs));
        }
    }
    let [(g1, s1)] = carriers.as_slice() else {
        return fail(format!("{} components carry the index", carriers.len()));
    };
    if !spectrum_in_g(s1) {
        return fail("the component carrying the index is not a member of G");
    }
    let others: Vec<&Graph> = nontrivial.iter().copied().filter(|c| !std::ptr::eq(*c, *g1)).collect();
    if !others.iter().all(|c| is_kpq_with(c, (mu * mu) as i128)) {
        return fail(format!("a component other than G1 is not K_{{p,q}} with pq = {}", mu * mu));
    }
    let g1_complete = g1.edge_count() == g1.order() * (g1.order() - 1) / 2;
    let others_k2 = others.iter().all(|c| c.order() == 2);
    if (mu == 1) != (g1_complete && others_k2) {
        return fail("μ = 1 must hold exactly when G1 is complete and the rest are K2");
    }
    let boundary = if g1.complete_bipartite_parts().is_some() { " (G1 is itself complete bipartite)" } else { "" };
    pass(format!("indexed case: G1 of order {}, μ = {mu}{boundary}", g1.order()))
}

/// Converse of the indexed case: a member `G1` plus `K_{p,q}` components with
/// `pq` equal to the square of `G1`'s other absolute eigenvalue, and no other
/// component reaching `G1`'s index, yields a member.
fn converse_indexed(a: &Analysis, components: &[Graph], nontrivial: &[&Graph]) -> Verdict {
    let Some(top) = components.iter().max_by(|x, y| {
        let ix = exact_spectrum(x).map(|s| s.values()[0]).unwrap_or(0.0);
        let iy = exact_spectrum(y).map(|s| s.values()[0]).unwrap_or(0.0);
        ix.total_cmp(&iy)
    }) else {
        return pass("not a member");
    };
    let Ok(Spectrum::Certified(s1)) = exact_spectrum(top) else {
        return pass("not a member");
    };
    if top.edge_count() == 0 || !spectrum_in_g(&Spectrum::Certified(s1.clone())) {
        return pass("not a member");
    }
    let Some(mu_sq) = s1.entries()[1..].iter().find(|(e, _)| e.signum() != 0).map(|(e, _)| e.square()) else {
        return pass("not a member");
    };
    let rest: Vec<&&Graph> = nontrivial.iter().filter(|c| !std::ptr::eq(**c, top)).collect();
    let rest_fit = rest.iter().all(|c| is_kpq_with(c, mu_sq) && (c.order() > 0));
    let index_unique = rest.iter().all(|c| {
        c.complete_bipartite_parts().is_some_and(|(p, q)| ((p * q) as i128) < s1.index().square())
    });
    if rest_fit && index_unique && !rest.is_empty() {
        fail(format!("G1 is a member and the rest are K_{{p,q}} with pq = {mu_sq}, yet G is not a member ({})", a.spectrum))
    } else {
        pass("not a member")
    }
}

fn three_eigenvalue_bipartite(a: &Analysis) -> Verdict {
    if !a.connected {
        return skip("disconnected");
    }
    let groups = a.spectrum.groups();
    if groups.len() != 3 {
        return skip("not three distinct eigenvalues");
    }
    let bipartite = a.graph.is_bipartite();
    let index = groups[0].0;
    let integral_index = match index {
        Eigen::Exact(e) => e.is_integer(),
        Eigen::Approx(x) => (x - x.round()).abs() <= PATTERN_TOLERANCE,
    };
    if !bipartite && integral_index {
        return skip("non-bipartite with integer index");
    }
    match a.graph.complete_bipartite_parts() {
        Some((p, q)) => pass(format!("K_{{{p},{q}}}")),
        None => fail(format!("three eigenvalues, bipartite = {bipartite}, index {index}, but not complete bipartite")),
    }
}

fn multipartite_second_eigenvalue(a: &Analysis) -> Verdict {
    if !a.connected || a.graph.order() < 2 {
        return skip("needs a connected graph on at least two vertices");
    }
    let lambda2 = a.spectrum.groups().get(1).map(|g| g.0);
    let nonpositive = match lambda2 {
        Some(Eigen::Exact(e)) => e.signum() <= 0,
        Some(Eigen::Approx(x)) => x <= PATTERN_TOLERANCE,
        None => true,
    };
    let multipartite = a.graph.complete_multipartite_parts();
    match (multipartite.is_some(), nonpositive) {
        (true, true) => pass(format!("complete multipartite {:?}", multipartite.unwrap_or_default())),
        (false, false) => pass("not complete multipartite and λ₂ > 0"),
        (m, _) => fail(format!("complete multipartite = {m} but λ₂ = {}", lambda2.map_or("none".into(), |e| e.to_string()))),
    }
}

fn srg_three_eigenvalues(a: &Analysis) -> Verdict {
    if !a.connected {
        return skip("disconnected");
    }
    let srg = detect_srg(a.graph);
    let n = a.graph.order();
    let three = match a.regular {
        Some(r) if r > 0 && r + 1 < n => distinct_eigenvalue_count(a.graph) == 3,
        _ => false,
    };
    match (srg, three) {
        (Some(p), true) => pass(format!("srg{p} with three distinct eigenvalues")),
        (None, false) => pass("neither strongly regular nor regular with three eigenvalues"),
        (Some(p), false) => fail(format!("srg{p} without exactly three distinct eigenvalues")),
        (None, true) => fail("regular with three distinct eigenvalues but not strongly regular"),
    }
}

fn regular_complement(a: &Analysis) -> Verdict {
    if !a.connected || a.regular.is_none() {
        return skip("needs a connected regular graph");
    }
    if distinct_eigenvalue_count(a.graph) != 4 {
        return skip("not four distinct eigenvalues");
    }
    let c = a.graph.complement();
    if c.is_connected() {
        let regular = c.regular_degree().is_some();
        let four = distinct_eigenvalue_count(&c) == 4;
        return if regular && four {
            pass("complement is connected, regular, four eigenvalues")
        } else {
            fail("complement is connected but not regular with four distinct eigenvalues")
        };
    }
    let params: Vec<Option<SrgParams>> = c.connected_components().iter().map(|k| detect_srg(&k.graph)).collect();
    match params.first() {
        Some(Some(p)) if params.iter().all(|q| q.as_ref() == Some(p)) => {
            pass(format!("complement is {} copies of srg{p}", params.len()))
        }
        _ => fail("complement is disconnected but not a union of cospectral strongly regular graphs"),
    }
}

fn forbidden_regular_shape(a: &Analysis) -> Verdict {
    if !a.connected || a.regular.is_none() {
        return skip("needs a connected regular graph");
    }
    if !a.spectrum.is_integral() {
        return skip("spectrum not certified integral");
    }
    let groups = a.spectrum.groups();
    if groups.len() != 4 {
        return pass("not four distinct eigenvalues");
    }
    let n = a.graph.order();
    let minus_one_simple = groups[1..].iter().any(|g| g.0.as_integer() == Some(-1) && g.1 == 1);
    let others: Vec<usize> = groups[1..].iter().filter(|g| g.0.as_integer() != Some(-1)).map(|g| g.1).collect();
    let forbidden = minus_one_simple && others.len() == 2 && others.iter().all(|&m| m >= 2 && m + 4 <= n);
    if forbidden {
        fail(format!("connected regular graph with forbidden spectrum {}", a.spectrum))
    } else {
        pass("shape not matched")
    }
}

fn lower_bound_equality(a: &Analysis) -> Verdict {
    let Some(b) = a.bounds() else { return skip("no edges") };
    if b.nikiforov_equal == a.in_g {
        pass(format!("equality = membership = {} ({})", a.in_g, certified_note(a)))
    } else {
        fail(format!("lower-bound equality {} but membership {}", b.nikiforov_equal, a.in_g))
    }
}

fn upper_bound_equality(a: &Analysis) -> Verdict {
    let Some(b) = a.bounds() else { return skip("no edges") };
    if b.km_equal == a.km_literal {
        pass(format!("equality = |λ₂|=…=|λₙ| = {} ({})", a.km_literal, certified_note(a)))
    } else {
        fail(format!("upper-bound equality {} but |λ₂|=…=|λₙ| is {}", b.km_equal, a.km_literal))
    }
}

fn bound_ordering(a: &Analysis) -> Verdict {
    let Some(b) = a.bounds() else { return skip("no edges") };
    if b.lower_holds && b.upper_holds && b.km_n_holds {
        pass(format!("{} ≤ {} ≤ {}, ≤ {}", b.nikiforov_bound, b.energy, b.km_bound, b.km_n_bound))
    } else {
        fail(format!(
            "lower {} energy {} upper {} n-bound {}",
            b.nikiforov_bound, b.energy, b.km_bound, b.km_n_bound
        ))
    }
}

fn float_exact_agreement(a: &Analysis) -> Verdict {
    let Some(exact) = a.spectrum.exact() else { return skip("spectrum uncertified") };
    let floats = match float_spectrum(a.graph, DEFAULT_CLUSTER_TOLERANCE) {
        Ok(f) => f,
        Err(e) => return fail(e.to_string()),
    };
    let worst = exact.values().iter().zip(floats.values()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    if worst <= AGREEMENT_TOLERANCE {
        pass(format!("max deviation {worst:e}"))
    } else {
        fail(format!("max deviation {worst:e} exceeds {AGREEMENT_TOLERANCE:e}"))
    }
}

macro_rules! single_check {
    ($(#[$doc:meta])* $name:ident, $check:expr) => {
        $(#[$doc])*
        pub fn $name(g: &Graph) -> Result<Verdict, ClassifyError> {
            Ok(Analysis::new(g)?.check($check))
        }
    };
}

single_check!(
    /// Connected `{λ, 0^{n−t−1}, μ^t}`: `μ = −λ` ⇔ complete bipartite, and
    /// `μ ≠ −λ` ⇔ integral complete `(t+1)`-partite with parts `−μ`, `t ≥ 2`.
    verify_zero_eigenvalue_characterization,
    Check::ZeroEigenvalueCase
);
single_check!(
    /// Connected `{λ, μ^{n−t−1}, (−μ)^t}`: integral, `μ ≥ 2`, multiplicative;
    /// regular ⇔ design graph; irregular with `μ = 2` is one of three graphs.
    verify_nonzero_three_eigenvalue_characterization,
    Check::NonzeroThreeCase
);
single_check!(
    /// Connected `{λ, μ, 0, −μ}`: integral; a regular one with a simple
    /// non-index eigenvalue is the complement of `Q₃ ⊛ J_{μ/2}`.
    verify_four_eigenvalue_characterization,
    Check::FourEigenvalueCase
);
single_check!(
    /// Disconnected members of 𝒢 and their component structure.
    verify_disconnected_characterization,
    Check::DisconnectedCase
);
single_check!(
    /// Connected, three distinct eigenvalues, bipartite or irrational index ⇒
    /// complete bipartite.
    check_three_eigenvalue_bipartite,
    Check::ThreeEigenvalueBipartite
);
single_check!(
    /// Connected: complete multipartite ⇔ `λ₂ ≤ 0`.
    check_multipartite_second_eigenvalue,
    Check::MultipartiteSecondEigenvalue
);
single_check!(
    /// Connected regular four-eigenvalue graph: complement is connected with
    /// four eigenvalues, or a union of cospectral strongly regular graphs.
    check_regular_complement,
    Check::RegularComplement
);
single_check!(
    /// No connected regular graph has spectrum `{r, −1, δ^m, ζ^{n−2−m}}` with
    /// integers `δ, ζ` and `2 ≤ m ≤ n−4`.
    check_forbidden_regular_shape,
    Check::ForbiddenRegularShape
);
single_check!(
    /// Connected: strongly regular ⇔ regular, not complete or empty, three
    /// distinct eigenvalues.
    check_srg_three_eigenvalues,
    Check::SrgThreeEigenvalues
);

// ---------------------------------------------------------------------------
// Reports

/// Full verdict for one graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassReport {
    pub n: usize,
    pub m: usize,
    pub graph6: String,
    pub label: Option<String>,
    pub connected: bool,
    pub regular: bool,
    pub degree: Option<usize>,
    pub spectrum: String,
    pub certified: bool,
    pub integral: bool,
    pub pattern: SpectrumPattern,
    pub in_g: bool,
    pub in_h: bool,
    pub km_literal: bool,
    pub srg: Option<SrgParams>,
    pub design: bool,
    pub multiplicative: Option<Multiplicative>,
    pub bounds: Option<BoundReport>,
    pub theorem_verdicts: BTreeMap<Check, Verdict>,
}

pub fn classify(g: &Graph) -> Result<ClassReport, ClassifyError> {
    let a = Analysis::new(g)?;
    Ok(report(&a, &Check::ALL))
}

/// Report for an analysed graph, running `checks`.
pub fn report(a: &Analysis, checks: &[Check]) -> ClassReport {
    let g = a.graph;
    let srg = detect_srg(g);
    let multiplicative = if g.edge_count() > 0 { is_multiplicative(g, Some(&a.pattern)) } else { None };
    ClassReport {
        n: g.order(),
        m: g.edge_count(),
        graph6: crate::io::write_graph6(g).unwrap_or_default(),
        label: g.label().map(str::to_string),
        connected: a.connected,
        regular: a.regular.is_some(),
        degree: a.regular,
        spectrum: a.spectrum.to_string(),
        certified: a.spectrum.is_certified(),
        integral: a.spectrum.is_integral(),
        pattern: a.pattern.clone(),
        in_g: a.in_g,
        in_h: a.in_h(),
        km_literal: a.km_literal,
        design: srg.is_some_and(|p| p.alpha == p.beta),
        srg,
        multiplicative,
        bounds: a.bounds().cloned(),
        theorem_verdicts: checks.iter().map(|&c| (c, a.check(c))).collect(),
    }
}
