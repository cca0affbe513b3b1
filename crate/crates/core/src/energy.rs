//! Graph energy (the trace norm of the adjacency matrix), singular values, and
//! the lower bound `σ₁ + (2m − σ₁²)/σ₂` and upper bounds
//! `λ₁ + √((n−1)(2m − λ₁²))` and `(n/2)(1 + √n)` with equality detection.
//!
//! When the spectrum is certified and all surds share one square-free kernel
//! `d`, every quantity lives in `ℚ(√d)` and comparisons are exact.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::spectra::{
    exact_spectrum, rank, square_free_part, symmetric_eigenvalues, ExactEigenvalue, ExactSpectrum, IntMatrix,
    SpectraError, Spectrum,
};

/// Slack for float comparisons when no exact spectrum is available.
pub const FLOAT_EQUALITY_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EnergyError {
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error("bounds need at least one edge")]
    Edgeless,
    #[error("2m = {two_m} is smaller than the squared index {index_sq}")]
    IndexTooLarge { two_m: f64, index_sq: f64 },
}

type Q = Ratio<i128>;

/// `a + b·√d` with rational `a`, `b` and square-free `d ≥ 2` (or `d = 1`
/// when `b = 0`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadSurd {
    pub a: Q,
    pub b: Q,
    pub d: u64,
}

impl QuadSurd {
    pub fn rational(a: Q) -> QuadSurd {
        QuadSurd { a, b: Q::zero(), d: 1 }
    }

    pub fn integer(a: i128) -> QuadSurd {
        QuadSurd::rational(Q::from_integer(a))
    }

    /// `s·√radicand`, rewritten over the square-free kernel.
    pub fn sqrt(radicand: u64, sign: i128) -> QuadSurd {
        let (k, s) = square_free_part(radicand);
        if k == 1 {
            QuadSurd::integer(sign * s as i128)
        } else {
            QuadSurd { a: Q::zero(), b: Q::from_integer(sign * s as i128), d: k }
        }
    }

    pub fn from_eigenvalue(e: ExactEigenvalue) -> QuadSurd {
        match e {
            ExactEigenvalue::Integer(v) => QuadSurd::integer(v as i128),
            ExactEigenvalue::Surd { sign, radicand } => QuadSurd::sqrt(radicand, sign as i128),
        }
    }

    fn join(&self, other: &QuadSurd) -> u64 {
        match (self.b.is_zero(), other.b.is_zero()) {
            (true, _) => other.d,
            (_, true) => self.d,
            _ => {
                assert_eq!(self.d, other.d, "mixed square-free kernels");
                self.d
            }
        }
    }

    fn normalized(mut self) -> QuadSurd {
        if self.b.is_zero() {
            self.d = 1;
        }
        self
    }

    pub fn signum(&self) -> i32 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        if sa == 0 {
            return sb;
        }
        // Opposite signs: compare a² with b²·d.
        let lhs = self.a * self.a;
        let rhs = self.b * self.b * Q::from_integer(self.d as i128);
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn inverse(&self) -> QuadSurd {
        let norm = self.a * self.a - self.b * self.b * Q::from_integer(self.d as i128);
        assert!(!norm.is_zero(), "inverse of zero");
        QuadSurd { a: self.a / norm, b: -self.b / norm, d: self.d }.normalized()
    }

    pub fn to_f64(&self) -> f64 {
        q_to_f64(&self.a) + q_to_f64(&self.b) * (self.d as f64).sqrt()
    }
}

fn sign_of(q: &Q) -> i32 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

fn q_to_f64(q: &Q) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

impl Add for QuadSurd {
    type Output = QuadSurd;
    fn add(self, o: QuadSurd) -> QuadSurd {
        let d = self.join(&o);
        QuadSurd { a: self.a + o.a, b: self.b + o.b, d }.normalized()
    }
}

impl Sub for QuadSurd {
    type Output = QuadSurd;
    fn sub(self, o: QuadSurd) -> QuadSurd {
        self + (-o)
    }
}

impl Neg for QuadSurd {
    type Output = QuadSurd;
    fn neg(self) -> QuadSurd {
        QuadSurd { a: -self.a, b: -self.b, d: self.d }
    }
}

impl Mul for QuadSurd {
    type Output = QuadSurd;
    fn mul(self, o: QuadSurd) -> QuadSurd {
        let d = self.join(&o);
        let dq = Q::from_integer(d as i128);
        QuadSurd { a: self.a * o.a + self.b * o.b * dq, b: self.a * o.b + self.b * o.a, d }.normalized()
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeff = |q: &Q| if q.is_integer() { q.numer().to_string() } else { format!("{}/{}", q.numer(), q.denom()) };
        if self.b.is_zero() {
            return f.write_str(&coeff(&self.a));
        }
        let surd = if self.b.is_one() {
            format!("sqrt({})", self.d)
        } else if (-self.b).is_one() {
            format!("-sqrt({})", self.d)
        } else {
            format!("{}*sqrt({})", coeff(&self.b), self.d)
        };
        if self.a.is_zero() {
            f.write_str(&surd)
        } else if self.b.is_negative() {
            write!(f, "{} - {}", coeff(&self.a), surd.trim_start_matches('-'))
        } else {
            write!(f, "{} + {}", coeff(&self.a), surd)
        }
    }
}

/// The kernel shared by every surd of the spectrum, if there is exactly one.
fn common_kernel(s: &ExactSpectrum) -> Option<u64> {
    let mut kernel = 1;
    for r in s.radicands() {
        let (k, _) = square_free_part(r);
        if kernel != 1 && k != kernel {
            return None;
        }
        kernel = k;
    }
    Some(kernel)
}

/// Absolute values with multiplicities, largest first, in exact form.
fn exact_singular_values(s: &ExactSpectrum) -> Vec<(QuadSurd, ExactEigenvalue, usize)> {
    let mut out: Vec<(ExactEigenvalue, usize)> = Vec::new();
    for &(v, m) in s.entries() {
        let a = v.abs();
        match out.iter_mut().find(|(w, _)| *w == a) {
            Some(slot) => slot.1 += m,
            None => out.push((a, m)),
        }
    }
    out.sort_by(|x, y| y.0.cmp(&x.0));
    out.into_iter().map(|(v, m)| (QuadSurd::from_eigenvalue(v), v, m)).collect()
}

/// Energy value, exact when the spectrum allows it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Energy {
    pub value: f64,
    pub exact: Option<String>,
}

pub fn energy(g: &Graph) -> Result<Energy, EnergyError> {
    Ok(energy_of(&exact_spectrum(g)?))
}

pub fn energy_of(s: &Spectrum) -> Energy {
    if let Some(e) = s.exact().filter(|e| common_kernel(e).is_some()) {
        let q = exact_energy(e);
        return Energy { value: q.to_f64(), exact: Some(q.to_string()) };
    }
    Energy { value: s.values().iter().map(|x| x.abs()).sum(), exact: None }
}

fn exact_energy(s: &ExactSpectrum) -> QuadSurd {
    s.entries().iter().fold(QuadSurd::integer(0), |acc, &(v, m)| {
        acc + QuadSurd::from_eigenvalue(v.abs()) * QuadSurd::integer(m as i128)
    })
}

/// Energy, the three bounds, and equality flags.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub energy: f64,
    pub energy_exact: Option<String>,
    pub sigma1: f64,
    pub sigma2: f64,
    /// `Σ aᵢⱼ² = 2m`.
    pub sum_sq: u64,
    pub nikiforov_bound: f64,
    pub km_bound: f64,
    pub km_n_bound: f64,
    pub nikiforov_equal: bool,
    pub km_equal: bool,
    /// Energy is at least the lower bound.
    pub lower_holds: bool,
    /// Energy is at most `λ₁ + √((n−1)(2m − λ₁²))`.
    pub upper_holds: bool,
    /// Energy is at most `(n/2)(1 + √n)`.
    pub km_n_holds: bool,
    /// `true` when every comparison above was decided in exact arithmetic;
    /// otherwise equalities are approximate within 1e-8.
    pub exact: bool,
}

pub fn bound_report(g: &Graph) -> Result<BoundReport, EnergyError> {
    bound_report_from(g, &exact_spectrum(g)?)
}

/// Bounds for `g` given its already computed spectrum.
pub fn bound_report_from(g: &Graph, s: &Spectrum) -> Result<BoundReport, EnergyError> {
    let m = g.edge_count();
    if m == 0 {
        return Err(EnergyError::Edgeless);
    }
    let n = g.order();
    match s.exact().filter(|e| common_kernel(e).is_some()) {
        Some(e) => Ok(exact_report(n, m, e)),
        None => float_report(n, m, &s.values()),
    }
}

fn exact_report(n: usize, m: usize, s: &ExactSpectrum) -> BoundReport {
    let two_m = QuadSurd::integer(2 * m as i128);
    let sv = exact_singular_values(s);
    let sigma1 = sv[0].0.clone();
    let sigma2 = if sv[0].2 >= 2 { sv[0].0.clone() } else { sv[1].0.clone() };
    let sigma1_sq = QuadSurd::integer(sv[0].1.square());
    let e = exact_energy(s);

    let niki = sigma1.clone() + (two_m.clone() - sigma1_sq.clone()) * sigma2.inverse();
    let lower = e.clone() - niki.clone();

    let lambda1 = QuadSurd::from_eigenvalue(s.index());
    let big_n = (n as i128 - 1) * (2 * m as i128 - s.index().square());
    let x = e.clone() - lambda1.clone();
    let x_sq_minus_n = x.clone() * x.clone() - QuadSurd::integer(big_n);
    let upper_holds = x.signum() < 0 || x_sq_minus_n.signum() <= 0;
    let km_equal = x.signum() >= 0 && x_sq_minus_n.is_zero();

    // E ≤ (n/2)(1 + √n)  ⇔  y ≤ (n/2)√n  with  y = E − n/2.
    let half_n = QuadSurd::rational(Q::new(n as i128, 2));
    let y = e.clone() - half_n;
    let n3_over_4 = QuadSurd::rational(Q::new((n * n * n) as i128, 4));
    let km_n_holds = y.signum() <= 0 || (y.clone() * y - n3_over_4).signum() <= 0;

    BoundReport {
        energy: e.to_f64(),
        energy_exact: Some(e.to_string()),
        sigma1: sigma1.to_f64(),
        sigma2: sigma2.to_f64(),
        sum_sq: 2 * m as u64,
        nikiforov_bound: niki.to_f64(),
        km_bound: lambda1.to_f64() + (big_n as f64).sqrt(),
        km_n_bound: km_n_bound(n),
        nikiforov_equal: lower.is_zero(),
        km_equal,
        lower_holds: lower.signum() >= 0,
        upper_holds,
        km_n_holds,
        exact: true,
    }
}

fn float_report(n: usize, m: usize, values: &[f64]) -> Result<BoundReport, EnergyError> {
    let tol = FLOAT_EQUALITY_TOLERANCE;
    let mut sv: Vec<f64> = values.iter().map(|x| x.abs()).collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    let (sigma1, sigma2) = (sv[0], sv[1]);
    let two_m = 2.0 * m as f64;
    let energy: f64 = sv.iter().sum();
    let niki = sigma1 + (two_m - sigma1 * sigma1) / sigma2;
    let lambda1 = values[0];
    let inner = (n as f64 - 1.0) * (two_m - lambda1 * lambda1);
    if inner < -tol {
        return Err(EnergyError::IndexTooLarge { two_m, index_sq: lambda1 * lambda1 });
    }
    let km = lambda1 + inner.max(0.0).sqrt();
    let km_n = km_n_bound(n);
    Ok(BoundReport {
        energy,
        energy_exact: None,
        sigma1,
        sigma2,
        sum_sq: 2 * m as u64,
        nikiforov_bound: niki,
        km_bound: km,
        km_n_bound: km_n,
        nikiforov_equal: (energy - niki).abs() <= tol,
        km_equal: (energy - km).abs() <= tol,
        lower_holds: energy >= niki - tol,
        upper_holds: energy <= km + tol,
        km_n_holds: energy <= km_n + tol,
        exact: false,
    })
}

/// Lower bound `σ₁ + (2m − σ₁²)/σ₂` and whether the energy attains it.
pub fn nikiforov_bound(g: &Graph) -> Result<(f64, bool), EnergyError> {
    let r = bound_report(g)?;
    Ok((r.nikiforov_bound, r.nikiforov_equal))
}

/// Upper bound `λ₁ + √((n−1)(2m − λ₁²))` and whether the energy attains it.
pub fn km_bound(g: &Graph) -> Result<(f64, bool), EnergyError> {
    let r = bound_report(g)?;
    Ok((r.km_bound, r.km_equal))
}

/// `(n/2)(1 + √n)`.
pub fn km_n_bound(n: usize) -> f64 {
    let n = n as f64;
    n / 2.0 * (1.0 + n.sqrt())
}

/// Absolute eigenvalues, descending.
pub fn singular_values(g: &Graph) -> Result<Vec<f64>, EnergyError> {
    let mut v: Vec<f64> = symmetric_eigenvalues(g.adjacency_f64(), g.order())?
        .into_iter()
        .map(f64::abs)
        .collect();
    v.sort_by(|a, b| b.total_cmp(a));
    Ok(v)
}

/// Singular values as square roots of the eigenvalues of `AᵗA = A²`. The
/// exact rank of `A` fixes how many are nonzero.
pub fn singular_values_gram(g: &Graph) -> Result<Vec<f64>, EnergyError> {
    let n = g.order();
    let mut gram = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            gram[i * n + j] = g.common_neighbors(i, j) as f64;
        }
    }
    let r = rank(IntMatrix::shifted_adjacency(g, 0));
    let values = symmetric_eigenvalues(gram, n)?;
    Ok(values
        .into_iter()
        .enumerate()
        .map(|(i, x)| if i < r { x.max(0.0).sqrt() } else { 0.0 })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-9
    }

    #[test]
    fn quad_surd_arithmetic() {
        let s6 = QuadSurd::sqrt(6, 1);
        assert_eq!((s6.clone() * s6.clone()), QuadSurd::integer(6));
        assert_eq!(QuadSurd::sqrt(8, 1), QuadSurd { a: Q::zero(), b: Q::from_integer(2), d: 2 });
        let x = QuadSurd::integer(3) - QuadSurd::sqrt(8, 1); // 3 − 2√2 > 0
        assert_eq!(x.signum(), 1);
        assert_eq!((QuadSurd::integer(2) - QuadSurd::sqrt(5, 1)).signum(), -1);
        let inv = x.inverse(); // 3 + 2√2
        assert_eq!(inv, QuadSurd::integer(3) + QuadSurd::sqrt(8, 1));
        assert_eq!(inv.to_string(), "3 + 2*sqrt(2)");
        assert_eq!(QuadSurd::sqrt(6, -1).to_string(), "-sqrt(6)");
    }

    #[test]
    fn energies() {
        for n in 2..8 {
            let e = energy(&Graph::complete(n).unwrap()).unwrap();
            assert_eq!(e.exact.as_deref(), Some((2 * (n - 1)).to_string().as_str()));
        }
        assert_eq!(energy(&families::shrikhande()).unwrap().exact.as_deref(), Some("36"));
        let k23 = energy(&Graph::complete_bipartite(2, 3).unwrap()).unwrap();
        assert_eq!(k23.exact.as_deref(), Some("2*sqrt(6)"));
        assert!(close(k23.value, 2.0 * 6f64.sqrt()));
    }

    #[test]
    fn lower_bound_examples() {
        let (b, eq) = nikiforov_bound(&Graph::complete_bipartite(2, 5).unwrap()).unwrap();
        assert!(eq && close(b, 2.0 * 10f64.sqrt()));
        let (b, eq) = nikiforov_bound(&Graph::complete(6).unwrap()).unwrap();
        assert!(eq && close(b, 10.0));
        let p4 = Graph::path(4).unwrap();
        let (b, eq) = nikiforov_bound(&p4).unwrap();
        assert!(!eq && b < energy(&p4).unwrap().value);
    }

    #[test]
    fn upper_bound_examples() {
        let (b, eq) = km_bound(&families::shrikhande()).unwrap();
        assert!(eq && close(b, 36.0));
        for k in 1..5 {
            let matching = Graph::disjoint_union(&vec![Graph::complete(2).unwrap(); k]).unwrap();
            let (b, eq) = km_bound(&matching).unwrap();
            assert!(eq && close(b, 2.0 * k as f64));
        }
        let (b, eq) = km_bound(&Graph::path(3).unwrap()).unwrap();
        assert!(!eq && close(b, 2f64.sqrt() + 2.0));
    }

    #[test]
    fn km_n_values() {
        assert!(close(km_n_bound(16), 40.0));
        assert!(close(km_n_bound(4), 6.0));
        assert!(close(km_n_bound(2), 1.0 + 2f64.sqrt()));
        let r = bound_report(&Graph::complete(4).unwrap()).unwrap();
        assert!(r.km_n_holds && close(r.energy, r.km_n_bound));
    }

    #[test]
    fn singular_value_examples() {
        let k23 = singular_values(&Graph::complete_bipartite(2, 3).unwrap()).unwrap();
        let r6 = 6f64.sqrt();
        let want = [r6, r6, 0.0, 0.0, 0.0];
        assert!(k23.iter().zip(want).all(|(a, b)| (a - b).abs() < 1e-9));
        let shr = singular_values(&families::shrikhande()).unwrap();
        assert!(close(shr[0], 6.0) && shr[1..].iter().all(|&x| close(x, 2.0)));
        let p3 = singular_values_gram(&Graph::path(3).unwrap()).unwrap();
        assert!(close(p3[0], 2f64.sqrt()) && close(p3[1], 2f64.sqrt()) && p3[2] == 0.0);
    }

    #[test]
    fn edgeless_rejected() {
        assert_eq!(bound_report(&Graph::empty(3).unwrap()), Err(EnergyError::Edgeless));
    }
}
