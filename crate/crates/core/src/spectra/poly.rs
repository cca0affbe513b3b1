//! Exact characteristic polynomials.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::exact::{determinant, IntMatrix};
use super::{ExactEigenvalue, ExactSpectrum, SpectraError};
use crate::graph::{Graph, GraphError};

/// Monic integer polynomial; `coefficients[k]` multiplies `x^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPoly {
    coefficients: Vec<BigInt>,
}

impl CharPoly {
    fn from_coefficients(mut coefficients: Vec<BigInt>) -> CharPoly {
        while coefficients.len() > 1 && coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        CharPoly { coefficients }
    }

    pub fn one() -> CharPoly {
        CharPoly { coefficients: vec![BigInt::one()] }
    }

    /// `x + c`.
    pub fn linear(c: i64) -> CharPoly {
        CharPoly { coefficients: vec![BigInt::from(c), BigInt::one()] }
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficient(&self, k: usize) -> BigInt {
        self.coefficients.get(k).cloned().unwrap_or_default()
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn is_monic(&self) -> bool {
        self.coefficients.last().is_some_and(One::is_one)
    }

    pub fn mul(&self, other: &CharPoly) -> CharPoly {
        let mut out = vec![BigInt::zero(); self.coefficients.len() + other.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in other.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        CharPoly::from_coefficients(out)
    }

    fn sub(&self, other: &CharPoly) -> CharPoly {
        let len = self.coefficients.len().max(other.coefficients.len());
        let out = (0..len).map(|k| self.coefficient(k) - other.coefficient(k)).collect();
        CharPoly::from_coefficients(out)
    }

    fn scale(&self, c: i64) -> CharPoly {
        CharPoly::from_coefficients(self.coefficients.iter().map(|a| a * c).collect())
    }

    fn pow(&self, e: usize) -> CharPoly {
        (0..e).fold(CharPoly::one(), |acc, _| acc.mul(self))
    }

    pub fn evaluate(&self, x: &BigInt) -> BigInt {
        self.coefficients.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// `Π (x − λ)^{mult}` over an exact spectrum; surd pairs `±√d` of equal
    /// multiplicity contribute `(x² − d)^{mult}`.
    pub fn from_spectrum(spectrum: &ExactSpectrum) -> Result<CharPoly, SpectraError> {
        let mut p = CharPoly::one();
        for &(value, mult) in spectrum.entries() {
            match value {
                ExactEigenvalue::Integer(e) => p = p.mul(&CharPoly::linear(-e).pow(mult)),
                ExactEigenvalue::Surd { sign, radicand } => {
                    let partner = ExactEigenvalue::Surd { sign: -sign, radicand };
                    if spectrum.multiplicity(partner) != mult {
                        return Err(SpectraError::UnsupportedSurdShape(format!(
                            "unpaired surd {value} in {spectrum}"
                        )));
                    }
                    if sign > 0 {
                        let quad = CharPoly::from_coefficients(vec![
                            -BigInt::from(radicand),
                            BigInt::zero(),
                            BigInt::one(),
                        ]);
                        p = p.mul(&quad.pow(mult));
                    }
                }
            }
        }
        Ok(p)
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for k in (0..self.coefficients.len()).rev() {
            let c = &self.coefficients[k];
            if c.is_zero() && self.coefficients.len() > 1 {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (k, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{a}x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{a}x^{k}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for CharPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.coefficients.iter().map(|c| c.to_string()))
    }
}

/// `det(xI − A)` by exact interpolation: `det(kI − A)` is evaluated with
/// fraction-free elimination at `k = 0..=n` and the Newton forward-difference
/// form is expanded into monomials.
pub fn char_poly(g: &Graph) -> CharPoly {
    let n = g.order();
    let mut diffs: Vec<BigInt> = (0..=n as i64)
        .map(|k| {
            let mut m = IntMatrix::shifted_adjacency(g, k);
            for x in m.data.iter_mut() {
                *x = -&*x;
            }
            determinant(m)
        })
        .collect();
    // diffs[j] becomes Δʲ f(0) after this loop.
    for j in 1..=n {
        for i in (j..=n).rev() {
            diffs[i] = &diffs[i] - &diffs[i - 1];
        }
    }
    let mut result = CharPoly::from_coefficients(vec![BigInt::zero()]);
    let mut falling = CharPoly::one(); // x(x−1)…(x−j+1)
    let mut factorial = BigInt::one();
    for (j, delta) in diffs.iter().enumerate() {
        if j > 0 {
            factorial *= j;
            falling = falling.mul(&CharPoly::linear(-(j as i64 - 1)));
        }
        let (c, r) = delta.div_rem(&factorial);
        debug_assert!(r.is_zero(), "integer polynomial has integral Newton coefficients");
        let term = CharPoly::from_coefficients(falling.coefficients.iter().map(|a| a * &c).collect());
        result = CharPoly::from_coefficients(
            (0..term.coefficients.len().max(result.coefficients.len()))
                .map(|k| result.coefficient(k) + term.coefficient(k))
                .collect(),
        );
    }
    result
}

/// Closed form for `K_{p₁,…,p_r}`:
/// `x^{n−r} [Π(x+pᵢ) − Σᵢ pᵢ Π_{j≠i}(x+pⱼ)]`.
pub fn multipartite_char_poly(parts: &[usize]) -> Result<CharPoly, GraphError> {
    if parts.is_empty() {
        return Err(GraphError::EmptyParts);
    }
    if let Some(index) = parts.iter().position(|&p| p == 0) {
        return Err(GraphError::ZeroPart { index });
    }
    let n: usize = parts.iter().sum();
    let r = parts.len();
    let factors: Vec<CharPoly> = parts.iter().map(|&p| CharPoly::linear(p as i64)).collect();
    let full = factors.iter().fold(CharPoly::one(), |acc, f| acc.mul(f));
    let mut bracket = full;
    for (i, &p) in parts.iter().enumerate() {
        let others = factors
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(CharPoly::one(), |acc, (_, f)| acc.mul(f));
        bracket = bracket.sub(&others.scale(p as i64));
    }
    Ok(CharPoly::linear(0).pow(n - r).mul(&bracket))
}

/// Interlacing of the `r − 1` negative eigenvalues of `K_{p₁,…,p_r}` with its
/// sorted part sizes: `p₁ ≤ −θ₁ ≤ p₂ ≤ … ≤ p_{r−1} ≤ −θ_{r−1} ≤ p_r`, where
/// the `θᵢ` are given in ascending order of absolute value.
pub fn esser_interlacing_check(parts: &[usize], negative_eigenvalues: &[f64]) -> Result<bool, SpectraError> {
    const SLACK: f64 = 1e-9;
    if parts.is_empty() || negative_eigenvalues.len() + 1 != parts.len() {
        return Err(SpectraError::CountMismatch {
            expected: parts.len().saturating_sub(1),
            found: negative_eigenvalues.len(),
        });
    }
    let mut p: Vec<f64> = parts.iter().map(|&x| x as f64).collect();
    p.sort_by(f64::total_cmp);
    Ok(negative_eigenvalues.iter().enumerate().all(|(i, &theta)| {
        theta < 0.0 && p[i] <= -theta + SLACK && -theta <= p[i + 1] + SLACK
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::{float_spectrum, DEFAULT_CLUSTER_TOLERANCE};

    fn poly(coeffs_high_to_low: &[i64]) -> CharPoly {
        CharPoly::from_coefficients(coeffs_high_to_low.iter().rev().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn small_char_polys() {
        assert_eq!(char_poly(&Graph::complete(2).unwrap()), poly(&[1, 0, -1]));
        assert_eq!(char_poly(&Graph::path(3).unwrap()), poly(&[1, 0, -2, 0]));
        assert_eq!(char_poly(&Graph::complete(2).unwrap()).to_string(), "x^2 - 1");
    }

    #[test]
    fn trace_and_edge_coefficients() {
        for g in [crate::families::shrikhande(), Graph::k_minus(5).unwrap(), Graph::cycle(7).unwrap()] {
            let p = char_poly(&g);
            assert!(p.is_monic());
            assert_eq!(p.degree(), g.order());
            assert!(p.coefficient(g.order() - 1).is_zero());
            assert_eq!(p.coefficient(g.order() - 2), BigInt::from(-(g.edge_count() as i64)));
        }
    }

    #[test]
    fn multipartite_formula_examples() {
        // x³(x−4)(x+2)²
        let expected = CharPoly::linear(0)
            .pow(3)
            .mul(&CharPoly::linear(-4))
            .mul(&CharPoly::linear(2).pow(2));
        let got = multipartite_char_poly(&[2, 2, 2]).unwrap();
        assert_eq!(got, expected);
        assert_eq!(got, char_poly(&Graph::complete_multipartite(&[2, 2, 2]).unwrap()));
        // x^{p+q−2}(x² − pq)
        let kpq = multipartite_char_poly(&[2, 5]).unwrap();
        assert_eq!(kpq, CharPoly::linear(0).pow(5).mul(&poly(&[1, 0, -10])));
        // t = 3, μ = −2: x⁴(x−6)(x+2)³
        let t3 = multipartite_char_poly(&[2, 2, 2, 2]).unwrap();
        assert_eq!(
            t3,
            CharPoly::linear(0).pow(4).mul(&CharPoly::linear(-6)).mul(&CharPoly::linear(2).pow(3))
        );
        assert_eq!(multipartite_char_poly(&[]), Err(GraphError::EmptyParts));
    }

    #[test]
    fn multipartite_formula_matches_determinant_route() {
        fn partitions(total: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if total == 0 {
                out.push(prefix.clone());
                return;
            }
            for p in (1..=max.min(total)).rev() {
                prefix.push(p);
                partitions(total - p, p, prefix, out);
                prefix.pop();
            }
        }
        let mut all = Vec::new();
        for total in 1..=10 {
            partitions(total, total, &mut Vec::new(), &mut all);
        }
        for parts in all {
            let g = Graph::complete_multipartite(&parts).unwrap();
            assert_eq!(multipartite_char_poly(&parts).unwrap(), char_poly(&g), "parts {parts:?}");
        }
    }

    #[test]
    fn interlacing_examples() {
        assert!(esser_interlacing_check(&[2, 2, 2], &[-2.0, -2.0]).unwrap());
        assert!(esser_interlacing_check(&[1, 2], &[-(2f64.sqrt())]).unwrap());
        assert!(!esser_interlacing_check(&[1, 2], &[-3.0]).unwrap());
        assert!(esser_interlacing_check(&[1, 2], &[-1.0, -1.0]).is_err());
    }

    /// Every complete multipartite graph of order at most 8: the negative
    /// eigenvalues computed numerically interlace with the part sizes.
    #[test]
    fn interlacing_exhaustive_small() {
        fn partitions(total: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if total == 0 {
                out.push(prefix.clone());
                return;
            }
            for p in 1..=max.min(total) {
                prefix.push(p);
                partitions(total - p, p, prefix, out);
                prefix.pop();
            }
        }
        let mut all = Vec::new();
        for total in 2..=8 {
            partitions(total, total, &mut Vec::new(), &mut all);
        }
        for parts in all.into_iter().filter(|p| p.len() >= 2) {
            let g = Graph::complete_multipartite(&parts).unwrap();
            let s = float_spectrum(&g, DEFAULT_CLUSTER_TOLERANCE).unwrap();
            // Descending values put the negatives in ascending absolute value.
            let negatives: Vec<f64> = s.values().iter().copied().filter(|&x| x < -1e-9).collect();
            assert!(esser_interlacing_check(&parts, &negatives).unwrap(), "parts {parts:?}");
        }
    }
}
