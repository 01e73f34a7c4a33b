//! Sparse bivariate polynomials in `x` and `y`.

use std::collections::BTreeMap;
use std::fmt;

use super::scalar::{Rational, Scalar};
use super::tower::Split;
use super::upoly::UPoly;
use crate::error::Error;

/// A pair of positive coprime weights for `x` and `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct WeightVector {
    pub a1: u32,
    pub a2: u32,
}

impl WeightVector {
    pub fn new(a1: u32, a2: u32) -> Result<Self, Error> {
        if a1 == 0 || a2 == 0 || num_integer::gcd(a1, a2) != 1 {
            return Err(Error::InvalidWeight(a1, a2));
        }
        Ok(WeightVector { a1, a2 })
    }

    pub fn weight(&self, i: u32, j: u32) -> u64 {
        self.a1 as u64 * i as u64 + self.a2 as u64 * j as u64
    }
}

/// Finite sum of `c * x^i * y^j`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly2<K> {
    terms: BTreeMap<(u32, u32), K>,
}

impl<K: Scalar> Default for Poly2<K> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<K: Scalar> Poly2<K> {
    pub fn zero() -> Self {
        Poly2 {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: K) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn one() -> Self {
        Self::constant(K::one())
    }

    pub fn x() -> Self {
        Self::monomial(K::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(K::one(), 0, 1)
    }

    pub fn monomial(c: K, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), K)>) -> Self {
        let mut p = Self::zero();
        for ((i, j), c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&(i, j)) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert((i, j), s);
                }
            }
            None => {
                self.terms.insert((i, j), c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &K)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> K {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(K::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), c) in &other.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Poly2 {
            terms: self.terms.iter().map(|(&k, c)| (k, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(i1, j1), a) in &self.terms {
            for (&(i2, j2), b) in &other.terms {
                out.add_term(i1 + i2, j1 + j2, a.clone() * b.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &K) -> Self {
        Self::from_terms(self.terms.iter().map(|(&k, a)| (k, a.clone() * c.clone())))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Structural multiplicity at the origin: lowest total degree.
    pub fn multiplicity(&self) -> Result<u32, Error> {
        self.terms
            .keys()
            .map(|&(i, j)| i + j)
            .min()
            .ok_or(Error::ZeroPolynomial)
    }

    /// Multiplicity that is valid in every branch of a tower: lower-degree
    /// coefficients that are structurally nonzero are tested for being zero
    /// divisors.
    pub fn multiplicity_d5(&self) -> Result<u32, Split> {
        let mut degrees: Vec<u32> = self.terms.keys().map(|&(i, j)| i + j).collect();
        degrees.sort_unstable();
        degrees.dedup();
        for d in degrees {
            if !self.homogeneous_part(d).all_coeffs_zero_d5()? {
                return Ok(d);
            }
        }
        panic!("multiplicity_d5 of a polynomial that vanishes in every branch")
    }

    fn all_coeffs_zero_d5(&self) -> Result<bool, Split> {
        for c in self.terms.values() {
            if !c.is_zero_d5()? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Sum of the terms of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Poly2 {
            terms: self
                .terms
                .iter()
                .filter(|(&(i, j), _)| i + j == d)
                .map(|(&k, c)| (k, c.clone()))
                .collect(),
        }
    }

    pub fn weighted_multiplicity(&self, w: WeightVector) -> Result<u64, Error> {
        self.terms
            .keys()
            .map(|&(i, j)| w.weight(i, j))
            .min()
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn weighted_leading_term(&self, w: WeightVector) -> Result<Self, Error> {
        let wm = self.weighted_multiplicity(w)?;
        Ok(Poly2 {
            terms: self
                .terms
                .iter()
                .filter(|(&(i, j), _)| w.weight(i, j) == wm)
                .map(|(&k, c)| (k, c.clone()))
                .collect(),
        })
    }

    /// Ring homomorphism `x -> x_image`, `y -> y_image`.
    pub fn substitute(&self, x_image: &Self, y_image: &Self) -> Self {
        let mut xp: Vec<Self> = vec![Self::one()];
        let mut yp: Vec<Self> = vec![Self::one()];
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            while xp.len() <= i as usize {
                let next = xp.last().unwrap().mul(x_image);
                xp.push(next);
            }
            while yp.len() <= j as usize {
                let next = yp.last().unwrap().mul(y_image);
                yp.push(next);
            }
            let t = xp[i as usize].mul(&yp[j as usize]).scale(c);
            out = out.add(&t);
        }
        out
    }

    pub fn evaluate(&self, x: &K, y: &K) -> K {
        let mut acc = K::zero();
        for (&(i, j), c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..i {
                t = t * x.clone();
            }
            for _ in 0..j {
                t = t * y.clone();
            }
            acc = acc + t;
        }
        acc
    }

    pub fn map_coeffs<L: Scalar>(&self, f: impl Fn(&K) -> L) -> Poly2<L> {
        Poly2::from_terms(self.terms.iter().map(|(&k, c)| (k, f(c))))
    }

    /// Exchanges `x` and `y`.
    pub fn swap(&self) -> Self {
        Poly2 {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((j, i), c.clone()))
                .collect(),
        }
    }

    /// Divides by `x^a y^b`; every term must be divisible.
    pub fn div_monomial(&self, a: u32, b: u32) -> Self {
        Poly2 {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| {
                    assert!(i >= a && j >= b, "monomial does not divide");
                    ((i - a, j - b), c.clone())
                })
                .collect(),
        }
    }

    /// Largest `(a, b)` with `x^a y^b` dividing `self`.
    pub fn monomial_content(&self) -> (u32, u32) {
        let a = self.terms.keys().map(|&(i, _)| i).min().unwrap_or(0);
        let b = self.terms.keys().map(|&(_, j)| j).min().unwrap_or(0);
        (a, b)
    }

    /// Restriction to the line `x = 0` as a polynomial in `y`.
    pub fn restrict_x0(&self) -> UPoly<K> {
        self.column(0)
    }

    /// Coefficient of `x^i` as a polynomial in `y`.
    pub fn column(&self, i: u32) -> UPoly<K> {
        let mut coeffs = Vec::new();
        for (&(a, j), c) in &self.terms {
            if a == i {
                if coeffs.len() <= j as usize {
                    coeffs.resize(j as usize + 1, K::zero());
                }
                coeffs[j as usize] = c.clone();
            }
        }
        UPoly::new(coeffs)
    }

    /// Dehomogenized form `g(1, z)` of a homogeneous polynomial in `x, y`.
    pub fn dehomogenize_x(&self) -> UPoly<K> {
        let mut coeffs = Vec::new();
        for (&(_, j), c) in &self.terms {
            if coeffs.len() <= j as usize {
                coeffs.resize(j as usize + 1, K::zero());
            }
            let t = std::mem::replace(&mut coeffs[j as usize], K::zero());
            coeffs[j as usize] = t + c.clone();
        }
        UPoly::new(coeffs)
    }
}

impl Poly2<Rational> {
    pub fn to_rational_terms(&self) -> Vec<((u32, u32), Rational)> {
        self.terms.iter().map(|(&k, c)| (k, c.clone())).collect()
    }
}

/// Total degree first, then descending power of `x`.
fn display_order<K>(p: &Poly2<K>) -> Vec<(&(u32, u32), &K)> {
    let mut ts: Vec<_> = p.terms.iter().collect();
    ts.sort_by(|a, b| {
        (a.0 .0 + a.0 .1)
            .cmp(&(b.0 .0 + b.0 .1))
            .then(b.0 .0.cmp(&a.0 .0))
    });
    ts
}

fn write_monomial(f: &mut fmt::Formatter<'_>, i: u32, j: u32) -> fmt::Result {
    let mut parts = Vec::new();
    match i {
        0 => {}
        1 => parts.push("x".to_string()),
        _ => parts.push(format!("x^{i}")),
    }
    match j {
        0 => {}
        1 => parts.push("y".to_string()),
        _ => parts.push(format!("y^{j}")),
    }
    write!(f, "{}", parts.join("*"))
}

/// Rational coefficients print in the parser's grammar.
impl fmt::Display for Poly2<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (&(i, j), c)) in display_order(self).into_iter().enumerate() {
            let negative = c < &Rational::from_integer(0.into());
            let abs = if negative { -c.clone() } else { c.clone() };
            if n == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let unit = abs == Rational::from_integer(1.into());
            if i + j == 0 {
                write!(f, "{abs}")?;
            } else if unit {
                write_monomial(f, i, j)?;
            } else {
                write!(f, "{abs}*")?;
                write_monomial(f, i, j)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Poly2<super::tower::AlgNum> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (&(i, j), c)) in display_order(self).into_iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            if i + j > 0 {
                write!(f, "*")?;
                write_monomial(f, i, j)?;
            }
        }
        Ok(())
    }
}
