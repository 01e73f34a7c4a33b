//! Formal R-divisors `sum b_i (f_i = 0)` at the origin.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::parse::parse_poly_capped;
use super::poly2::{Poly2, WeightVector};
use super::qbivar::{coprime_basis, div_exact, squarefree_decomposition};
use super::scalar::{parse_rational, Rational};
use crate::error::Error;

type QPoly = Poly2<Rational>;

#[derive(Clone, Debug, PartialEq)]
pub struct GermDivisor {
    parts: Vec<(Rational, QPoly)>,
}

#[derive(Serialize, Deserialize)]
struct PartJson {
    coeff: String,
    poly: String,
}

#[derive(Serialize, Deserialize)]
struct DivisorJson {
    parts: Vec<PartJson>,
}

impl GermDivisor {
    pub fn zero() -> Self {
        GermDivisor { parts: Vec::new() }
    }

    /// Every equation must be nonzero and vanish at the origin.
    pub fn new(parts: Vec<(Rational, QPoly)>) -> Result<Self, Error> {
        for (_, f) in &parts {
            if f.is_zero() {
                return Err(Error::ZeroPolynomial);
            }
            if !f.coeff(0, 0).is_zero() {
                return Err(Error::NotVanishing);
            }
        }
        Ok(GermDivisor { parts })
    }

    pub fn single(coeff: Rational, f: QPoly) -> Result<Self, Error> {
        Self::new(vec![(coeff, f)])
    }

    pub fn parts(&self) -> &[(Rational, QPoly)] {
        &self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|(b, _)| b.is_zero())
    }

    pub fn scale(&self, t: &Rational) -> Self {
        GermDivisor {
            parts: self.parts.iter().map(|(b, f)| (b * t, f.clone())).collect(),
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut parts = self.parts.clone();
        parts.extend(other.parts.iter().cloned());
        GermDivisor { parts }
    }

    pub fn multiplicity(&self) -> Result<Rational, Error> {
        let mut acc = Rational::zero();
        for (b, f) in &self.parts {
            acc += b * Rational::from_integer(f.multiplicity()?.into());
        }
        Ok(acc)
    }

    pub fn weighted_multiplicity(&self, w: WeightVector) -> Result<Rational, Error> {
        let mut acc = Rational::zero();
        for (b, f) in &self.parts {
            acc += b * Rational::from_integer(f.weighted_multiplicity(w)?.into());
        }
        Ok(acc)
    }

    /// Pairwise coprime, squarefree, non-unit components with summed
    /// coefficients; components whose coefficient cancels are dropped.
    pub fn normalized(&self) -> Vec<(QPoly, Rational)> {
        let (curves, coeffs) = joint_components(&[self]);
        curves
            .into_iter()
            .zip(coeffs)
            .filter(|(_, c)| !c[0].is_zero())
            .map(|(f, mut c)| (f, c.swap_remove(0)))
            .collect()
    }

    pub fn is_effective(&self) -> bool {
        self.normalized().iter().all(|(_, b)| !b.is_negative())
    }

    pub fn from_json(text: &str, degree_cap: u32) -> Result<Self, Error> {
        let raw: DivisorJson =
            serde_json::from_str(text).map_err(|e| Error::Invalid(format!("divisor JSON: {e}")))?;
        Self::from_json_parts(raw, degree_cap)
    }

    pub fn from_json_value(value: &serde_json::Value, degree_cap: u32) -> Result<Self, Error> {
        let raw: DivisorJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::Invalid(format!("divisor JSON: {e}")))?;
        Self::from_json_parts(raw, degree_cap)
    }

    fn from_json_parts(raw: DivisorJson, degree_cap: u32) -> Result<Self, Error> {
        let mut parts = Vec::new();
        for p in raw.parts {
            let b = parse_rational(&p.coeff).ok_or_else(|| {
                Error::Invalid(format!("coefficient {:?} is not a rational", p.coeff))
            })?;
            parts.push((b, parse_poly_capped(&p.poly, degree_cap)?));
        }
        Self::new(parts)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let raw = DivisorJson {
            parts: self
                .parts
                .iter()
                .map(|(b, f)| PartJson {
                    coeff: b.to_string(),
                    poly: f.to_string(),
                })
                .collect(),
        };
        serde_json::to_value(raw).expect("serializable")
    }
}

/// A common coprime basis of the supports of several divisors, and for
/// each basis curve its coefficient in each divisor (`coeffs[curve][div]`).
/// Units at the origin are discarded; curves absent from every divisor are
/// dropped.
pub fn joint_components(divisors: &[&GermDivisor]) -> (Vec<QPoly>, Vec<Vec<Rational>>) {
    let mut pieces: Vec<(usize, Rational, QPoly, u32)> = Vec::new();
    for (d, div) in divisors.iter().enumerate() {
        for (b, f) in &div.parts {
            if b.is_zero() {
                continue;
            }
            for (g, e) in squarefree_decomposition(f) {
                if g.coeff(0, 0).is_zero() {
                    pieces.push((d, b.clone(), g, e));
                }
            }
        }
    }
    let all: Vec<QPoly> = pieces.iter().map(|(_, _, g, _)| g.clone()).collect();
    let basis = coprime_basis(&all);
    let mut coeffs = vec![vec![Rational::zero(); divisors.len()]; basis.len()];
    for (d, b, g, e) in &pieces {
        for (k, curve) in basis.iter().enumerate() {
            if div_exact(g, curve).is_some() {
                coeffs[k][*d] += b * Rational::from_integer((*e).into());
            }
        }
    }
    let keep: Vec<bool> = coeffs
        .iter()
        .map(|c| c.iter().any(|v| !v.is_zero()))
        .collect();
    let curves = basis
        .into_iter()
        .zip(&keep)
        .filter(|(_, k)| **k)
        .map(|(c, _)| c)
        .collect();
    let coeffs = coeffs
        .into_iter()
        .zip(&keep)
        .filter(|(_, k)| **k)
        .map(|(c, _)| c)
        .collect();
    (curves, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly;
    use crate::algebra::qbivar::normalize;
    use crate::algebra::scalar::{q, qi};

    #[test]
    fn normalization_merges_shared_factors() {
        let d = GermDivisor::new(vec![
            (q(1, 2), parse_poly("x*(x+y)").unwrap()),
            (q(1, 3), parse_poly("x^2*(1 + y)").unwrap()),
        ])
        .unwrap();
        let n = d.normalized();
        assert_eq!(n.len(), 2);
        let x = n
            .iter()
            .find(|(f, _)| *f == parse_poly("x").unwrap())
            .unwrap();
        assert_eq!(x.1, q(7, 6));
        let xy = n
            .iter()
            .find(|(f, _)| *f == normalize(&parse_poly("x+y").unwrap()))
            .unwrap();
        assert_eq!(xy.1, q(1, 2));
    }

    #[test]
    fn cancellation_and_multiplicity() {
        let d = GermDivisor::new(vec![
            (qi(1), parse_poly("x").unwrap()),
            (qi(-1), parse_poly("x").unwrap()),
        ])
        .unwrap();
        assert!(d.normalized().is_empty());
        let cusp = GermDivisor::single(q(5, 6), parse_poly("x^2+y^3").unwrap()).unwrap();
        assert_eq!(cusp.multiplicity().unwrap(), q(5, 3));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"parts":[{"coeff":"1/2","poly":"x^2 + y^3"},{"coeff":"-1","poly":"y"}]}"#;
        let d = GermDivisor::from_json(text, 64).unwrap();
        let again = GermDivisor::from_json(&d.to_json().to_string(), 64).unwrap();
        assert_eq!(d, again);
        assert!(GermDivisor::from_json(r#"{"parts":[{"coeff":"1","poly":"x+1"}]}"#, 64).is_err());
    }
}
