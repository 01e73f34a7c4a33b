//! First pair of Puiseux exponents by Newton–Puiseux iteration over Q.

use std::fmt;

use num_traits::Zero;

use super::invariants::branch_count;
use crate::algebra::{GermDivisor, Poly2, Rational};
use crate::error::Error;
use crate::newton::newton_data;

type QPoly = Poly2<Rational>;

const MAX_STEPS: usize = 64;

/// `(m, n)` with `n = None` standing for infinity (smooth branch).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PuiseuxPair {
    pub m: u32,
    pub n: Option<u32>,
}

impl PuiseuxPair {
    pub const SMOOTH: PuiseuxPair = PuiseuxPair { m: 1, n: None };

    /// `(1, inf)`, or `2 <= m < n` with `m` not dividing `n`.
    pub fn is_valid(&self) -> bool {
        match self.n {
            None => self.m == 1,
            Some(n) => self.m >= 2 && self.m < n && n % self.m != 0,
        }
    }
}

impl fmt::Display for PuiseuxPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.n {
            None => write!(f, "({}, inf)", self.m),
            Some(n) => write!(f, "({}, {n})", self.m),
        }
    }
}

fn rq(n: u32) -> Rational {
    Rational::from_integer(n.into())
}

/// Moves the tangent line to `y = 0`; the tangent cone must be `l^m`.
fn straighten(g: &QPoly, m: u32) -> Result<QPoly, Error> {
    let h = g.homogeneous_part(m);
    let cy = h.coeff(0, m);
    if cy.is_zero() {
        if h.len() != 1 {
            return Err(Error::Internal(
                "tangent cone is not a power of a line".into(),
            ));
        }
        return Ok(g.swap());
    }
    // h = cy (y - a x)^m
    let a = -h.coeff(1, m - 1) / (rq(m) * &cy);
    let line = Poly2::y().sub(&Poly2::x().scale(&a));
    if h != line.pow(m).scale(&cy) {
        return Err(Error::Internal(
            "tangent cone is not a power of a line".into(),
        ));
    }
    let shift = Poly2::y().add(&Poly2::x().scale(&a));
    Ok(g.substitute(&Poly2::x(), &shift))
}

/// First pair of an analytically irreducible germ.
pub fn first_puiseux_pair(f: &QPoly) -> Result<PuiseuxPair, Error> {
    let div = GermDivisor::single(Rational::from_integer(1.into()), f.clone())?;
    let parts = div.normalized();
    if parts.len() != 1 {
        return Err(Error::Reducible(parts.len() as u64));
    }
    let g = parts.into_iter().next().unwrap().0;
    let branches = branch_count(&g)?;
    if branches != 1 {
        return Err(Error::Reducible(branches));
    }
    let m = g.multiplicity()?;
    if m == 1 {
        return Ok(PuiseuxPair::SMOOTH);
    }
    let mut g = straighten(&g, m)?;
    for _ in 0..MAX_STEPS {
        let data = newton_data(&g)?;
        let n = match data.vertices.as_slice() {
            [(0, q), (n, 0)] if *q == m as i64 => *n as u32,
            _ => {
                return Err(Error::Internal(format!(
                    "Newton polygon of {g} is not a single edge"
                )))
            }
        };
        if n % m != 0 {
            return Ok(PuiseuxPair { m, n: Some(n) });
        }
        // Edge polynomial sum c_k x^(q(m-k)) y^k must be c_m (y - c x^q)^m.
        let q = n / m;
        let cm = g.coeff(0, m);
        let c = -g.coeff(q, m - 1) / (rq(m) * &cm);
        for k in 0..=m {
            let expected = &cm * binomial(m, k) * (-c.clone()).pow((m - k) as i32);
            if g.coeff(q * (m - k), k) != expected {
                return Err(Error::Internal(
                    "edge polynomial is not a perfect power".into(),
                ));
            }
        }
        let shift = Poly2::y().add(&Poly2::monomial(c, q, 0));
        g = g.substitute(&Poly2::x(), &shift);
    }
    Err(Error::Internal(
        "Newton-Puiseux iteration did not terminate".into(),
    ))
}

fn binomial(n: u32, k: u32) -> Rational {
    let mut acc = Rational::from_integer(1.into());
    for i in 0..k {
        acc = acc * rq(n - i) / rq(i + 1);
    }
    acc
}
