//! Thresholds, discrepancies and intersection numbers read off a
//! resolution of several divisors at once.

use num_traits::{One, Signed, Zero};

use super::tree::ResolutionTree;
use crate::algebra::{joint_components, GermDivisor, Poly2, Rational};
use crate::error::Error;
use crate::result::{LctResult, MldResult, Witness};

type QPoly = Poly2<Rational>;

fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Several divisors on a common log resolution. `coeffs[j][d]` is the
/// coefficient of curve `j` in divisor `d`; divisor 0 is the boundary.
#[derive(Clone, Debug)]
pub struct Configuration {
    pub curves: Vec<QPoly>,
    pub coeffs: Vec<Vec<Rational>>,
    pub tree: ResolutionTree,
}

impl Configuration {
    pub fn new(divisors: &[&GermDivisor]) -> Result<Self, Error> {
        let (curves, coeffs) = joint_components(divisors);
        let tree = ResolutionTree::resolve(&curves)?;
        Ok(Configuration {
            curves,
            coeffs,
            tree,
        })
    }

    pub fn coeff(&self, curve: usize, divisor: usize) -> &Rational {
        &self.coeffs[curve][divisor]
    }

    /// `a(E) = 1 + k_E - ord_E(B)`.
    pub fn log_discrepancy(&self, e: usize) -> Rational {
        r(1 + self.tree.exceptionals[e].k) - self.ord(e, 0)
    }

    /// Order of divisor `d` along exceptional `e` (0-based).
    pub fn ord(&self, e: usize, d: usize) -> Rational {
        let rec = &self.tree.exceptionals[e];
        let mut acc = Rational::zero();
        for (j, o) in rec.ord.iter().enumerate() {
            acc += &self.coeffs[j][d] * r(*o);
        }
        acc
    }

    fn exceptional_witness(&self, e: usize, d: usize) -> Witness {
        let rec = &self.tree.exceptionals[e];
        let ord = self.ord(e, d);
        Witness::Exceptional {
            node: rec.index,
            k_e: rec.k,
            ord: ord.to_integer().try_into().unwrap_or(i64::MAX),
            log_discrepancy: self.log_discrepancy(e),
        }
    }

    fn curve_witness(&self, j: usize, d: usize) -> Witness {
        Witness::Curve {
            poly: self.curves[j].to_string(),
            coeff: self.coeffs[j][d].clone(),
        }
    }

    /// Fails when a curve has boundary coefficient above 1 or an
    /// exceptional divisor has negative log discrepancy.
    fn check_lc(&self) -> Result<(), Error> {
        for j in 0..self.curves.len() {
            if self.coeffs[j][0] > Rational::one() {
                return Err(Error::NotLc(format!(
                    "curve {} has coefficient {}",
                    self.curves[j], self.coeffs[j][0]
                )));
            }
        }
        for e in 0..self.tree.exceptionals.len() {
            let a = self.log_discrepancy(e);
            if a.is_negative() {
                return Err(Error::NotLc(format!(
                    "exceptional divisor E{} has log discrepancy {a}",
                    e + 1
                )));
            }
        }
        Ok(())
    }

    /// Largest `t` keeping `a(E, B + t D) >= 0` over the origin, with `D`
    /// divisor `d`: the minimum of `a(E) / ord_E D` and `(1 - b_j) / d_j`.
    fn threshold(&self, d: usize) -> (Rational, Witness) {
        let mut best: Option<(Rational, Witness)> = None;
        let mut offer = |v: Rational, w: &dyn Fn() -> Witness| {
            if best.as_ref().is_none_or(|(b, _)| v < *b) {
                best = Some((v, w()));
            }
        };
        for e in 0..self.tree.exceptionals.len() {
            let o = self.ord(e, d);
            if o.is_positive() {
                offer(self.log_discrepancy(e) / o, &|| {
                    self.exceptional_witness(e, d)
                });
            }
        }
        for j in 0..self.curves.len() {
            let c = &self.coeffs[j][d];
            if c.is_positive() {
                offer((Rational::one() - &self.coeffs[j][0]) / c, &|| {
                    self.curve_witness(j, 0)
                });
            }
        }
        best.expect("target passes through the origin")
    }

    /// Minimum of `a(E)` over exceptionals and of `1 - b_j` over curves
    /// selected by `curve_filter`.
    fn min_discrepancy(&self, curve_filter: impl Fn(usize) -> bool) -> Option<(Rational, Witness)> {
        let mut best: Option<(Rational, Witness)> = None;
        for e in 0..self.tree.exceptionals.len() {
            let a = self.log_discrepancy(e);
            if best.as_ref().is_none_or(|(b, _)| a < *b) {
                best = Some((a, self.exceptional_witness(e, 0)));
            }
        }
        for j in (0..self.curves.len()).filter(|&j| curve_filter(j)) {
            let a = Rational::one() - &self.coeffs[j][0];
            if best.as_ref().is_none_or(|(b, _)| a < *b) {
                best = Some((a, self.curve_witness(j, 0)));
            }
        }
        best
    }

    /// `lct(B; C)` with `C` divisor 1.
    pub fn lct(&self) -> Result<LctResult, Error> {
        for j in 0..self.curves.len() {
            if !self.coeffs[j][0].is_zero() && !self.coeffs[j][1].is_zero() {
                return Err(Error::SharedComponent);
            }
        }
        self.check_lc()?;
        let (value, witness) = self.threshold(1);
        Ok(LctResult::exact(value, Some(witness)))
    }

    /// Relative threshold with the fiber as divisor 1.
    pub fn relative_lct(&self) -> Result<RelativeLct, Error> {
        self.check_lc()?;
        let (value, witness) = self.threshold(1);
        let generic_fiber_effective = (0..self.curves.len())
            .filter(|&j| self.coeffs[j][1].is_zero())
            .all(|j| !self.coeffs[j][0].is_negative());
        Ok(RelativeLct {
            lct: LctResult::exact(value, Some(witness)),
            generic_fiber_effective,
        })
    }

    /// Relative mld with the fiber as divisor 1.
    pub fn relative_mld(&self) -> MldResult {
        let (value, witness) = self
            .min_discrepancy(|j| self.coeffs[j][1].is_positive())
            .expect("the fiber is a curve of the configuration");
        classify(value, witness)
    }

    pub fn germ_mld(&self) -> MldResult {
        let mut mult = Rational::zero();
        for (j, f) in self.curves.iter().enumerate() {
            mult += &self.coeffs[j][0] * r(f.multiplicity().expect("nonzero") as i64);
        }
        let origin = (r(2) - mult, Witness::OriginBlowup);
        let (value, witness) = match self.min_discrepancy(|_| true) {
            Some((v, w)) if v < origin.0 => (v, w),
            _ => origin,
        };
        classify(value, witness)
    }
}

fn classify(value: Rational, witness: Witness) -> MldResult {
    if value.is_negative() {
        MldResult::NotLc { witness }
    } else {
        MldResult::Value { value, witness }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RelativeLct {
    pub lct: LctResult,
    /// Whether every component not contained in the fiber has a
    /// non-negative coefficient.
    pub generic_fiber_effective: bool,
}

fn check_target(c: &GermDivisor) -> Result<(), Error> {
    let n = c.normalized();
    if n.is_empty() || n.iter().any(|(_, b)| b.is_negative()) {
        return Err(Error::BadTarget);
    }
    Ok(())
}

/// `lct(X ∋ o, B; C)`.
pub fn lct_exact(b: &GermDivisor, c: &GermDivisor) -> Result<LctResult, Error> {
    check_target(c)?;
    Configuration::new(&[b, c])?.lct()
}

pub fn fiber() -> GermDivisor {
    GermDivisor::single(Rational::one(), Poly2::x()).expect("x vanishes at the origin")
}

/// Threshold of the fiber `(x = 0)` over the base point.
pub fn lct_relative_fiber(b: &GermDivisor) -> Result<RelativeLct, Error> {
    Configuration::new(&[b, &fiber()])?.relative_lct()
}

pub fn mld_relative_fiber(b: &GermDivisor) -> Result<MldResult, Error> {
    Ok(Configuration::new(&[b, &fiber()])?.relative_mld())
}

pub fn mld_germ(b: &GermDivisor) -> Result<MldResult, Error> {
    Ok(Configuration::new(&[b])?.germ_mld())
}

fn effective_curve(f: &QPoly) -> Result<GermDivisor, Error> {
    GermDivisor::single(Rational::one(), f.clone())
}

/// Noether's formula over the infinitely near points common to `f` and
/// `g`, counted with orbit degree.
pub fn intersection_multiplicity(f: &QPoly, g: &QPoly) -> Result<u64, Error> {
    let (df, dg) = (effective_curve(f)?, effective_curve(g)?);
    let conf = Configuration::new(&[&df, &dg])?;
    if conf
        .coeffs
        .iter()
        .any(|c| !c[0].is_zero() && !c[1].is_zero())
    {
        return Err(Error::SharedComponent);
    }
    let weight = |d: usize, mult: &dyn Fn(usize) -> u32| -> Rational {
        (0..conf.curves.len())
            .map(|j| &conf.coeffs[j][d] * r(mult(j) as i64))
            .sum()
    };
    let mut total = Rational::zero();
    for p in &conf.tree.blown {
        let m = |j: usize| p.mult[j];
        total += r(p.degree as i64) * weight(0, &m) * weight(1, &m);
    }
    for p in &conf.tree.terminals {
        let m = |j: usize| u32::from(p.curves.contains(&j));
        total += r(p.degree as i64) * weight(0, &m) * weight(1, &m);
    }
    u64::try_from(total.to_integer()).map_err(|_| Error::Internal("negative intersection".into()))
}

/// Number of analytic branches at the origin, conjugates counted.
pub fn branch_count(f: &QPoly) -> Result<u64, Error> {
    let conf = Configuration::new(&[&effective_curve(f)?])?;
    Ok(conf
        .tree
        .terminals
        .iter()
        .map(|p| p.degree * p.curves.len() as u64)
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, q, qi};

    fn div(parts: &[(Rational, &str)]) -> GermDivisor {
        GermDivisor::new(
            parts
                .iter()
                .map(|(b, s)| (b.clone(), parse_poly(s).unwrap()))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn cusp_threshold() {
        let r = lct_exact(&GermDivisor::zero(), &div(&[(qi(1), "x^2 + y^3")])).unwrap();
        assert_eq!(r.value, q(5, 6));
        assert!(matches!(
            r.witness,
            Some(Witness::Exceptional {
                node: 3,
                k_e: 4,
                ord: 6,
                ..
            })
        ));
        let r = lct_exact(&GermDivisor::zero(), &div(&[(qi(1), "x")])).unwrap();
        assert_eq!(r.value, qi(1));
        let r = lct_exact(&div(&[(q(1, 2), "x^2 + y^3")]), &div(&[(qi(1), "y")])).unwrap();
        assert_eq!(r.value, qi(1));
    }

    #[test]
    fn threshold_errors() {
        let b = div(&[(qi(1), "x^2 + y^3")]);
        assert!(matches!(
            lct_exact(&b, &div(&[(qi(1), "x")])),
            Err(Error::NotLc(_))
        ));
        let b = div(&[(q(1, 2), "x")]);
        assert!(matches!(
            lct_exact(&b, &div(&[(qi(1), "x")])),
            Err(Error::SharedComponent)
        ));
        assert!(matches!(
            lct_exact(&b, &GermDivisor::zero()),
            Err(Error::BadTarget)
        ));
    }

    #[test]
    fn germ_mld() {
        assert_eq!(
            mld_germ(&GermDivisor::zero()).unwrap().value(),
            Some(&qi(2))
        );
        assert_eq!(
            mld_germ(&div(&[(q(1, 3), "x")])).unwrap().value(),
            Some(&q(2, 3))
        );
        assert_eq!(
            mld_germ(&div(&[(q(5, 6), "x^2 + y^3")])).unwrap().value(),
            Some(&qi(0))
        );
        assert!(matches!(
            mld_germ(&div(&[(qi(1), "x^2 + y^3")])).unwrap(),
            MldResult::NotLc { .. }
        ));
    }

    #[test]
    fn relative_examples() {
        for s in [qi(0), q(1, 5), q(1, 2)] {
            let b = div(&[(qi(1), "x - y^2"), (-s.clone(), "x")]);
            let l = lct_relative_fiber(&b).unwrap();
            assert_eq!(l.lct.value, q(1, 2) + &s);
            assert_eq!(mld_relative_fiber(&b).unwrap().value(), Some(&(qi(1) + &s)));
        }
        let b = div(&[(qi(1), "x^2 + y^3"), (qi(-1), "y")]);
        let l = lct_relative_fiber(&b).unwrap();
        assert_eq!(l.lct.value, q(1, 3));
        assert!(!l.generic_fiber_effective);
        assert_eq!(
            lct_relative_fiber(&GermDivisor::zero()).unwrap().lct.value,
            qi(1)
        );
        assert_eq!(
            mld_relative_fiber(&GermDivisor::zero()).unwrap().value(),
            Some(&qi(1))
        );
        let s = q(1, 3);
        let b = div(&[(-s.clone(), "x")]);
        assert_eq!(mld_relative_fiber(&b).unwrap().value(), Some(&(qi(1) + s)));
    }

    #[test]
    fn noether() {
        let p = |s: &str| parse_poly(s).unwrap();
        assert_eq!(intersection_multiplicity(&p("x"), &p("y")).unwrap(), 1);
        assert_eq!(
            intersection_multiplicity(&p("x"), &p("x^2 + y^3")).unwrap(),
            3
        );
        assert_eq!(
            intersection_multiplicity(&p("x^2 + y^3"), &p("x^2 - y^3")).unwrap(),
            6
        );
        assert_eq!(intersection_multiplicity(&p("x^2"), &p("y")).unwrap(), 2);
        assert!(matches!(
            intersection_multiplicity(&p("x*y"), &p("x")),
            Err(Error::SharedComponent)
        ));
    }

    #[test]
    fn branches() {
        let p = |s: &str| parse_poly(s).unwrap();
        assert_eq!(branch_count(&p("x^2 + y^3")).unwrap(), 1);
        assert_eq!(branch_count(&p("x^2 - y^4")).unwrap(), 2);
        assert_eq!(branch_count(&p("x^2 + y^2")).unwrap(), 2);
        assert_eq!(branch_count(&p("x*y*(x + y)")).unwrap(), 3);
    }
}
