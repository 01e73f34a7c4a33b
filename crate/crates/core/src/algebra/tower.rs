//! Towers of simple extensions of the rationals, computed by dynamic
//! evaluation.
//!
//! A level adjoins a generator subject to a monic squarefree modulus over the
//! level below. The modulus is not required to be irreducible, so a level is
//! a product of fields. When an inversion meets a zero divisor the modulus
//! factors as `g * (M / g)`; the computation reports a [`Split`] and the
//! caller re-runs it on each factor, in a fixed order.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::scalar::{Rational, Scalar};
use super::upoly::UPoly;

/// One level of a tower.
#[derive(Debug)]
pub struct Level {
    /// 1-based position in the tower.
    pub index: usize,
    pub name: String,
    /// Monic, squarefree over the level below; lowest degree first.
    pub modulus: Vec<AlgNum>,
}

impl Level {
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }
}

/// An element of some level of a tower.
#[derive(Clone, Debug)]
pub enum AlgNum {
    Rat(Rational),
    /// Polynomial in the level's generator with coefficients strictly
    /// below the level. At least two coefficients, last one nonzero, fewer
    /// coefficients than the modulus has.
    Ext(Arc<Level>, Vec<AlgNum>),
}

/// A zero divisor was found at `level`; its modulus is the product of
/// `factors` (each monic over the level below).
#[derive(Clone, Debug)]
pub struct Split {
    pub level: Arc<Level>,
    pub factors: Vec<UPoly<AlgNum>>,
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "modulus of level {} splits into {} factors",
            self.level.name,
            self.factors.len()
        )
    }
}

impl AlgNum {
    pub fn level_index(&self) -> usize {
        match self {
            AlgNum::Rat(_) => 0,
            AlgNum::Ext(l, _) => l.index,
        }
    }

    fn from_parts(level: &Arc<Level>, mut coeffs: Vec<AlgNum>) -> AlgNum {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        match coeffs.len() {
            0 => AlgNum::zero(),
            1 => coeffs.pop().unwrap(),
            _ => AlgNum::Ext(Arc::clone(level), coeffs),
        }
    }

    /// Reduces a coefficient vector modulo the level's monic modulus.
    fn reduce(level: &Arc<Level>, mut coeffs: Vec<AlgNum>) -> AlgNum {
        let d = level.degree();
        if coeffs.len() > d {
            for k in (d..coeffs.len()).rev() {
                let lead = std::mem::replace(&mut coeffs[k], AlgNum::zero());
                if lead.is_zero() {
                    continue;
                }
                for i in 0..d {
                    let t = std::mem::replace(&mut coeffs[k - d + i], AlgNum::zero());
                    coeffs[k - d + i] = t - lead.clone() * level.modulus[i].clone();
                }
            }
            coeffs.truncate(d);
        }
        Self::from_parts(level, coeffs)
    }

    /// Coefficients as a polynomial over the level below `index`.
    fn as_poly_at(&self, index: usize) -> UPoly<AlgNum> {
        match self {
            AlgNum::Ext(l, cs) if l.index == index => UPoly::new(cs.clone()),
            _ => UPoly::constant(self.clone()),
        }
    }

    /// Total structural order, used only to make branch order deterministic.
    pub fn structural_cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (AlgNum::Rat(a), AlgNum::Rat(b)) => a.cmp(b),
            (AlgNum::Rat(_), AlgNum::Ext(..)) => Ordering::Less,
            (AlgNum::Ext(..), AlgNum::Rat(_)) => Ordering::Greater,
            (AlgNum::Ext(la, ca), AlgNum::Ext(lb, cb)) => la
                .index
                .cmp(&lb.index)
                .then(ca.len().cmp(&cb.len()))
                .then_with(|| {
                    for (x, y) in ca.iter().zip(cb) {
                        let o = x.structural_cmp(y);
                        if o != Ordering::Equal {
                            return o;
                        }
                    }
                    Ordering::Equal
                }),
        }
    }
}

pub fn cmp_upoly(a: &UPoly<AlgNum>, b: &UPoly<AlgNum>) -> Ordering {
    a.coeffs().len().cmp(&b.coeffs().len()).then_with(|| {
        for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
            let o = x.structural_cmp(y);
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    })
}

impl PartialEq for AlgNum {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (AlgNum::Rat(a), AlgNum::Rat(b)) => a == b,
            (AlgNum::Ext(la, ca), AlgNum::Ext(lb, cb)) => la.index == lb.index && ca == cb,
            _ => false,
        }
    }
}

impl fmt::Display for AlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgNum::Rat(r) => write!(f, "{r}"),
            AlgNum::Ext(l, cs) => {
                let mut first = true;
                for (i, c) in cs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if !first {
                        write!(f, " + ")?;
                    }
                    first = false;
                    match i {
                        0 => write!(f, "({c})")?,
                        1 => write!(f, "({c})*{}", l.name)?,
                        _ => write!(f, "({c})*{}^{i}", l.name)?,
                    }
                }
                Ok(())
            }
        }
    }
}

impl Zero for AlgNum {
    fn zero() -> Self {
        AlgNum::Rat(Rational::zero())
    }

    fn is_zero(&self) -> bool {
        matches!(self, AlgNum::Rat(r) if r.is_zero())
    }
}

impl One for AlgNum {
    fn one() -> Self {
        AlgNum::Rat(Rational::one())
    }
}

impl Add for AlgNum {
    type Output = AlgNum;

    fn add(self, rhs: AlgNum) -> AlgNum {
        match (self, rhs) {
            (AlgNum::Rat(a), AlgNum::Rat(b)) => AlgNum::Rat(a + b),
            (a, b) => {
                let (hi, lo) = if a.level_index() >= b.level_index() {
                    (a, b)
                } else {
                    (b, a)
                };
                let AlgNum::Ext(level, mut cs) = hi else {
                    unreachable!()
                };
                if lo.level_index() == level.index {
                    let AlgNum::Ext(_, ds) = lo else {
                        unreachable!()
                    };
                    if ds.len() > cs.len() {
                        cs.resize(ds.len(), AlgNum::zero());
                    }
                    for (i, d) in ds.into_iter().enumerate() {
                        let t = std::mem::replace(&mut cs[i], AlgNum::zero());
                        cs[i] = t + d;
                    }
                } else {
                    let t = std::mem::replace(&mut cs[0], AlgNum::zero());
                    cs[0] = t + lo;
                }
                AlgNum::from_parts(&level, cs)
            }
        }
    }
}

impl Neg for AlgNum {
    type Output = AlgNum;

    fn neg(self) -> AlgNum {
        match self {
            AlgNum::Rat(a) => AlgNum::Rat(-a),
            AlgNum::Ext(l, cs) => AlgNum::Ext(l, cs.into_iter().map(|c| -c).collect()),
        }
    }
}

impl Sub for AlgNum {
    type Output = AlgNum;

    fn sub(self, rhs: AlgNum) -> AlgNum {
        self + (-rhs)
    }
}

impl Mul for AlgNum {
    type Output = AlgNum;

    fn mul(self, rhs: AlgNum) -> AlgNum {
        match (self, rhs) {
            (AlgNum::Rat(a), AlgNum::Rat(b)) => AlgNum::Rat(a * b),
            (a, b) => {
                if a.is_zero() || b.is_zero() {
                    return AlgNum::zero();
                }
                let (hi, lo) = if a.level_index() >= b.level_index() {
                    (a, b)
                } else {
                    (b, a)
                };
                let AlgNum::Ext(level, cs) = hi else {
                    unreachable!()
                };
                if lo.level_index() == level.index {
                    let AlgNum::Ext(_, ds) = lo else {
                        unreachable!()
                    };
                    let mut prod = vec![AlgNum::zero(); cs.len() + ds.len() - 1];
                    for (i, c) in cs.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        for (j, d) in ds.iter().enumerate() {
                            if d.is_zero() {
                                continue;
                            }
                            let t = std::mem::replace(&mut prod[i + j], AlgNum::zero());
                            prod[i + j] = t + c.clone() * d.clone();
                        }
                    }
                    AlgNum::reduce(&level, prod)
                } else {
                    let scaled = cs.into_iter().map(|c| c * lo.clone()).collect();
                    AlgNum::from_parts(&level, scaled)
                }
            }
        }
    }
}

impl Scalar for AlgNum {
    fn inv_or_split(&self) -> Result<Self, Split> {
        match self {
            AlgNum::Rat(r) => Ok(AlgNum::Rat(r.inv_or_split()?)),
            AlgNum::Ext(level, cs) => {
                let a = UPoly::new(cs.clone());
                let m = UPoly::new(level.modulus.clone());
                let (g, s, _) = a.ext_gcd(&m)?;
                if g.degree() == Some(0) {
                    Ok(AlgNum::reduce(level, s.into_coeffs()))
                } else {
                    let cofactor = m.div_exact(&g)?;
                    let mut factors = vec![g, cofactor];
                    factors.sort_by(cmp_upoly);
                    Err(Split {
                        level: Arc::clone(level),
                        factors,
                    })
                }
            }
        }
    }

    fn from_rational(q: &Rational) -> Self {
        AlgNum::Rat(q.clone())
    }

    fn as_rational(&self) -> Option<Rational> {
        match self {
            AlgNum::Rat(r) => Some(r.clone()),
            AlgNum::Ext(..) => None,
        }
    }
}

/// A chain of levels over the rationals.
#[derive(Clone, Debug, Default)]
pub struct FieldTower {
    levels: Vec<Arc<Level>>,
}

/// Outcome of adjoining a root of a polynomial.
pub enum Adjoined {
    /// The polynomial was linear: the root already lives in the tower.
    Existing(AlgNum),
    /// A new level was added; the generator is returned.
    New(FieldTower, AlgNum),
}

impl FieldTower {
    pub fn rationals() -> Self {
        FieldTower { levels: Vec::new() }
    }

    pub fn height(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[Arc<Level>] {
        &self.levels
    }

    /// Dimension over the rationals, i.e. the number of geometric points
    /// an orbit defined over this tower stands for.
    pub fn degree(&self) -> u64 {
        self.levels.iter().map(|l| l.degree() as u64).product()
    }

    pub fn generator(&self, index: usize) -> AlgNum {
        let level = &self.levels[index - 1];
        AlgNum::Ext(Arc::clone(level), vec![AlgNum::zero(), AlgNum::one()])
    }

    /// Adjoins a root of `poly` (coefficients in this tower). The modulus
    /// is replaced by its monic squarefree part first.
    pub fn adjoin_root(&self, poly: &UPoly<AlgNum>, name: &str) -> Result<Adjoined, Split> {
        let sf = poly.squarefree_part()?;
        match sf.degree() {
            None | Some(0) => panic!("adjoin_root of a polynomial without roots"),
            Some(1) => Ok(Adjoined::Existing(-sf.coeff(0))),
            Some(_) => {
                let level = Arc::new(Level {
                    index: self.levels.len() + 1,
                    name: name.to_string(),
                    modulus: sf.into_coeffs(),
                });
                let mut levels = self.levels.clone();
                levels.push(level);
                let tower = FieldTower { levels };
                let generator = tower.generator(tower.height());
                Ok(Adjoined::New(tower, generator))
            }
        }
    }

    /// One specialized tower per factor of the split, in factor order.
    pub fn branches(&self, split: &Split) -> Vec<(FieldTower, TowerMap)> {
        let at = split.level.index;
        assert!(
            at >= 1 && at <= self.levels.len(),
            "split level outside tower"
        );
        split
            .factors
            .iter()
            .map(|factor| self.specialize(at, factor))
            .collect()
    }

    fn specialize(&self, at: usize, factor: &UPoly<AlgNum>) -> (FieldTower, TowerMap) {
        let mut map = TowerMap {
            split_index: at,
            new_levels: vec![None; self.levels.len() + 1],
            root: None,
        };
        let mut levels: Vec<Arc<Level>> = self.levels[..at - 1].to_vec();
        let old = &self.levels[at - 1];
        if factor.degree() == Some(1) {
            map.root = Some(-factor.coeff(0));
        } else {
            let level = Arc::new(Level {
                index: at,
                name: old.name.clone(),
                modulus: factor.coeffs().to_vec(),
            });
            map.new_levels[at] = Some(Arc::clone(&level));
            levels.push(level);
        }
        for old in &self.levels[at..] {
            let modulus = old.modulus.iter().map(|c| map.map(c)).collect();
            let level = Arc::new(Level {
                index: levels.len() + 1,
                name: old.name.clone(),
                modulus,
            });
            map.new_levels[old.index] = Some(Arc::clone(&level));
            levels.push(level);
        }
        (FieldTower { levels }, map)
    }
}

/// Carries elements of a tower into one branch of a split.
#[derive(Clone, Debug)]
pub struct TowerMap {
    split_index: usize,
    /// Indexed by old level index; `None` at the split level when the
    /// factor was linear and the level disappeared.
    new_levels: Vec<Option<Arc<Level>>>,
    root: Option<AlgNum>,
}

impl TowerMap {
    pub fn map(&self, a: &AlgNum) -> AlgNum {
        match a {
            AlgNum::Rat(_) => a.clone(),
            AlgNum::Ext(l, _) if l.index < self.split_index => a.clone(),
            AlgNum::Ext(l, cs) if l.index == self.split_index => match &self.new_levels[l.index] {
                Some(level) => AlgNum::reduce(level, cs.clone()),
                None => {
                    let root = self.root.as_ref().expect("root of eliminated level");
                    let mut acc = AlgNum::zero();
                    for c in cs.iter().rev() {
                        acc = acc * root.clone() + c.clone();
                    }
                    acc
                }
            },
            AlgNum::Ext(l, cs) => {
                let level = self.new_levels[l.index].as_ref().expect("mapped level");
                let mapped = cs.iter().map(|c| self.map(c)).collect();
                AlgNum::from_parts(level, mapped)
            }
        }
    }
}

/// Helper for tests and callers that need an element as a polynomial in
/// the top generator.
pub fn coefficients_at(a: &AlgNum, index: usize) -> UPoly<AlgNum> {
    a.as_poly_at(index)
}
