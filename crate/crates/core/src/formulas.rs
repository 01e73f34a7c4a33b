//! Closed-form thresholds and bounds, and the mld of cyclic quotient
//! singularities.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::{GermDivisor, Poly2, Rational, WeightVector};
use crate::blowup::lct_via_weight;
use crate::error::Error;
use crate::resolve::{first_puiseux_pair, intersection_multiplicity, lct_exact, PuiseuxPair};
use crate::result::{CertKind, LctResult, Witness};

type QPoly = Poly2<Rational>;

fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn ru(n: u32) -> Rational {
    r(n as i64)
}

fn min_of(values: impl IntoIterator<Item = Rational>) -> Rational {
    values
        .into_iter()
        .reduce(|a, b| if b < a { b } else { a })
        .expect("nonempty")
}

/// Numerical data of a branch `B` against a smooth curve `C`.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchProfile {
    pub m: u32,
    pub i: u32,
    pub pair: PuiseuxPair,
}

impl BranchProfile {
    /// Measures an irreducible `b` against a smooth `c`.
    pub fn of(b: &QPoly, c: &QPoly) -> Result<Self, Error> {
        let pair = first_puiseux_pair(b)?;
        if c.multiplicity()? != 1 {
            return Err(Error::Hypothesis("the curve C must be smooth".into()));
        }
        let i = intersection_multiplicity(b, c)?;
        Ok(BranchProfile {
            m: b.multiplicity()?,
            i: i as u32,
            pair,
        })
    }
}

/// `lct(x^n (x^m1 + y^m2)^k) = min{(m1+m2)/(k m1 m2 + n m2), 1/n, 1/k}`.
pub fn prop33_lct(n: u32, k: u32, m1: u32, m2: u32) -> Result<Rational, Error> {
    if n == 0 || k == 0 || m1 == 0 || m2 == 0 {
        return Err(Error::Invalid("all parameters must be positive".into()));
    }
    let first = Rational::new((m1 + m2).into(), (k * m1 * m2 + n * m2).into());
    Ok(min_of([
        first,
        Rational::new(1.into(), n.into()),
        Rational::new(1.into(), k.into()),
    ]))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Admissible {
    /// Smooth branch: every positive integer.
    All,
    Set(Vec<u32>),
}

impl Admissible {
    pub fn contains(&self, i: u32) -> bool {
        match self {
            Admissible::All => i >= 1,
            Admissible::Set(v) => v.contains(&i),
        }
    }
}

/// Possible intersection numbers of a branch with first pair `(m, n)` and
/// a smooth curve: `{m, 2m, ..., floor(n/m) m, n}`.
pub fn admissible_i(pair: PuiseuxPair) -> Result<Admissible, Error> {
    if !pair.is_valid() {
        return Err(Error::Invalid(format!(
            "{pair} is not a first Puiseux pair"
        )));
    }
    match pair.n {
        None => Ok(Admissible::All),
        Some(n) => {
            let mut v: Vec<u32> = (1..=n / pair.m).map(|j| j * pair.m).collect();
            v.push(n);
            Ok(Admissible::Set(v))
        }
    }
}

/// `lct(sB + tC)` for an irreducible `B` with first pair `(m, n)` and a
/// smooth `C` with `(B.C) = I`.
pub fn prop35_lct(
    pair: PuiseuxPair,
    i: u32,
    s: &Rational,
    t: &Rational,
) -> Result<Rational, Error> {
    if !s.is_positive() || !t.is_positive() {
        return Err(Error::Invalid("s and t must be positive".into()));
    }
    if !admissible_i(pair)?.contains(i) {
        return Err(Error::Hypothesis(format!(
            "I = {i} is not an intersection number of a branch with first pair {pair} and a smooth curve"
        )));
    }
    let (m, iq) = (ru(pair.m), ru(i));
    let first = match pair.n {
        None => s.recip(),
        Some(n) => (&m + ru(n)) / (s * &m * ru(n) + t * &iq),
    };
    let second = (&m + &iq) / ((s * &m + t) * &iq);
    Ok(min_of([first, second, s.recip(), t.recip()]))
}

/// Which hypothesis admitted a bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundCondition {
    /// `lambda m <= 1`
    Multiplicity,
    /// `n = I` and `lambda <= min{1, 1/m + 1/I}`
    Exponent,
    /// `I != m` and `lambda I <= 2`
    Intersection,
}

/// `lct(lambda B; C) >= min{1, 1 + m/I - lambda m}` under one of three
/// hypotheses; `n` is needed only for the second.
pub fn cor38_bound(
    m: u32,
    n: Option<u32>,
    i: u32,
    lambda: &Rational,
) -> Result<(Rational, BoundCondition), Error> {
    if m == 0 || i == 0 || lambda.is_negative() {
        return Err(Error::Invalid(
            "m, I must be positive and lambda non-negative".into(),
        ));
    }
    let (mq, iq) = (ru(m), ru(i));
    let one = Rational::one();
    let cond = if lambda * &mq <= one {
        BoundCondition::Multiplicity
    } else if n == Some(i) && *lambda <= min_of([one.clone(), mq.recip() + iq.recip()]) {
        BoundCondition::Exponent
    } else if i != m && lambda * &iq <= r(2) {
        BoundCondition::Intersection
    } else {
        return Err(Error::Hypothesis(
            "none of the three conditions holds".into(),
        ));
    };
    Ok((min_of([one.clone(), one + &mq / &iq - lambda * &mq]), cond))
}

/// `min{1, 1 + m/I - m}` for `0 < m <= 1`.
pub fn thm18_bound(m: &Rational, i: &Rational) -> Result<Rational, Error> {
    if !m.is_positive() || !i.is_positive() {
        return Err(Error::Invalid("m and I must be positive".into()));
    }
    if *m > Rational::one() {
        return Err(Error::Hypothesis(format!("multiplicity {m} exceeds 1")));
    }
    Ok(min_of([Rational::one(), Rational::one() + m / i - m]))
}

/// Same value as [`thm18_bound`] on the domain `m <= 1`, `m/I >= m - 1/2`.
pub fn thm_a2_bound(m: &Rational, i: &Rational) -> Result<Rational, Error> {
    if !m.is_positive() || !i.is_positive() {
        return Err(Error::Invalid("m and I must be positive".into()));
    }
    if *m > Rational::one() {
        return Err(Error::Hypothesis(format!("multiplicity {m} exceeds 1")));
    }
    if m / i < m - Rational::new(1.into(), 2.into()) {
        return Err(Error::Hypothesis(format!(
            "m/I = {} is below m - 1/2",
            m / i
        )));
    }
    Ok(min_of([Rational::one(), Rational::one() - m + m / i]))
}

/// `lct(lambda (x^m + y^I); x) = 1 + m/I - lambda m` for coprime `m < I`
/// and `lambda m <= 1 <= lambda I`.
pub fn example39_family(m: u32, i: u32, lambda: &Rational) -> Result<Rational, Error> {
    if m == 0 || m >= i || m.gcd(&i) != 1 {
        return Err(Error::Hypothesis("need coprime 0 < m < I".into()));
    }
    let (mq, iq) = (ru(m), ru(i));
    if lambda * &mq > Rational::one() || lambda * &iq < Rational::one() {
        return Err(Error::Hypothesis("need lambda m <= 1 <= lambda I".into()));
    }
    Ok(Rational::one() + &mq / &iq - lambda * &mq)
}

/// Coprime weights with `a1 + a2 <= bound`, in lexicographic order.
pub fn coprime_weights(bound: u32) -> Vec<WeightVector> {
    let mut out = Vec::new();
    for a1 in 1..bound {
        for a2 in 1..=bound - a1 {
            if let Ok(w) = WeightVector::new(a1, a2) {
                out.push(w);
            }
        }
    }
    out
}

/// A coordinate change `x -> x_image`, `y -> y_image`.
pub type CoordChange = (QPoly, QPoly);

/// Minimum of `(a1 + a2) / w(B)` over the identity and the supplied
/// coordinate changes and all coprime weights with `a1 + a2 <= bound`.
/// Upgraded to exact when it meets the resolution value.
pub fn varchenko_upper_bound(
    b: &GermDivisor,
    weight_bound: u32,
    changes: &[CoordChange],
) -> Result<LctResult, Error> {
    if weight_bound < 2 {
        return Err(Error::Invalid("weight bound must be at least 2".into()));
    }
    if !b.is_effective() || b.is_zero() {
        return Err(Error::Invalid(
            "divisor must be effective and nonzero".into(),
        ));
    }
    let identity = (Poly2::x(), Poly2::y());
    let mut best: Option<(Rational, WeightVector)> = None;
    for (xi, yi) in std::iter::once(&identity).chain(changes) {
        let parts = b
            .parts()
            .iter()
            .map(|(c, f)| (c.clone(), f.substitute(xi, yi)))
            .collect();
        let moved = GermDivisor::new(parts)?;
        for w in coprime_weights(weight_bound) {
            let value = lct_via_weight(&moved, w)?.value;
            if best.as_ref().is_none_or(|(v, _)| value < *v) {
                best = Some((value, w));
            }
        }
    }
    let (value, w) = best.expect("at least one weight");
    let oracle = lct_exact(&GermDivisor::zero(), b)?.value;
    let kind = if oracle == value {
        CertKind::Exact
    } else {
        CertKind::Upper
    };
    Ok(LctResult {
        value,
        kind,
        lower: None,
        witness: Some(Witness::Weight(w)),
    })
}

/// `(1/r)(w_1, ..., w_d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicQuotient {
    pub r: u32,
    pub weights: Vec<u32>,
}

impl CyclicQuotient {
    /// Rejects groups containing pseudo-reflections.
    pub fn new(r: u32, weights: Vec<u32>) -> Result<Self, Error> {
        if r == 0 {
            return Err(Error::Invalid("order must be positive".into()));
        }
        if !(2..=3).contains(&weights.len()) {
            return Err(Error::Invalid("dimension must be 2 or 3".into()));
        }
        for k in 1..r {
            let moved = weights
                .iter()
                .filter(|&&w| (k as u64 * w as u64) % r as u64 != 0)
                .count();
            if moved == 1 {
                return Err(Error::Hypothesis(format!("g^{k} is a pseudo-reflection")));
            }
        }
        Ok(CyclicQuotient { r, weights })
    }
}

/// Toric mld at the origin: the least `sum_i {k w_i / r}` over nontrivial
/// group elements (a vanishing fractional part counts as 1), capped by the
/// dimension.
pub fn cyclic_quotient_mld(q: &CyclicQuotient) -> Rational {
    let dim = ru(q.weights.len() as u32);
    let mut best = dim;
    for k in 1..q.r as u64 {
        let mut sum = Rational::zero();
        for &w in &q.weights {
            let rem = (k * w as u64) % q.r as u64;
            sum += if rem == 0 {
                Rational::one()
            } else {
                Rational::new(rem.into(), q.r.into())
            };
        }
        if sum < best {
            best = sum;
        }
    }
    best
}
