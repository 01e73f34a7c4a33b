//! The lct polytope: its vertices, convex combinations of thresholds, and a
//! certifier for `lct(B; C) >= 1 + m/I - m` that works vertex by vertex.
//!
//! A component `(m_i, I_i, b_i)` stands for an analytic branch `B_i` of
//! multiplicity `m_i` meeting the smooth curve `C` with intersection number
//! `I_i`. The points of `{t >= 0 : sum t_i m_i = m, sum t_i I_i = I}` all
//! have the same `m` and `I` as `B = sum b_i B_i`, and every vertex has at
//! most two nonzero coordinates. A bound that holds at every vertex holds
//! on the whole polytope by convexity of the lc condition.

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::algebra::{parse_rational, GermDivisor, Rational};
use crate::error::Error;
use crate::formulas::{cor38_bound, thm18_bound};
use crate::resolve::lct_exact;

/// Vertices of `{t >= 0 : <n1, t> = b1, <n2, t> = b2}` for positive `n1, n2`.
///
/// These are the basic feasible solutions: the support of a vertex indexes
/// linearly independent columns, so it has one or two elements (or none
/// when `b = 0`). Sorted and deduplicated.
pub fn vertex_enumeration(
    n1: &[Rational],
    n2: &[Rational],
    b: (&Rational, &Rational),
) -> Result<Vec<Vec<Rational>>, Error> {
    let n = n1.len();
    if n < 2 || n2.len() != n {
        return Err(Error::Invalid(
            "need two constraint vectors of the same length n >= 2".into(),
        ));
    }
    if n1.iter().chain(n2).any(|v| !v.is_positive()) {
        return Err(Error::Invalid("constraint vectors must be positive".into()));
    }
    let (b1, b2) = b;
    if b1.is_negative() || b2.is_negative() {
        return Err(Error::Invalid(
            "right-hand sides must be non-negative".into(),
        ));
    }
    let zero = vec![Rational::zero(); n];
    if b1.is_zero() || b2.is_zero() {
        // Positive rows force t = 0.
        return Ok(if b1.is_zero() && b2.is_zero() {
            vec![zero]
        } else {
            vec![]
        });
    }
    let mut out = Vec::new();
    for i in 0..n {
        let t = b1 / &n1[i];
        if &t * &n2[i] == *b2 {
            let mut v = zero.clone();
            v[i] = t;
            out.push(v);
        }
        for j in i + 1..n {
            let det = &n1[i] * &n2[j] - &n1[j] * &n2[i];
            if det.is_zero() {
                continue;
            }
            let ti = (b1 * &n2[j] - b2 * &n1[j]) / &det;
            let tj = (b2 * &n1[i] - b1 * &n2[i]) / &det;
            if ti.is_negative() || tj.is_negative() {
                continue;
            }
            let mut v = zero.clone();
            v[i] = ti;
            v[j] = tj;
            out.push(v);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// `sum lambda_i lct(B_i; C)`, a lower bound for `lct(sum lambda_i B_i; C)`.
pub fn convexity_bound(
    profiles: &[(GermDivisor, Rational)],
    c: &GermDivisor,
) -> Result<Rational, Error> {
    if profiles.is_empty() {
        return Err(Error::Invalid("no profiles".into()));
    }
    if profiles.iter().any(|(_, l)| l.is_negative()) {
        return Err(Error::Invalid("weights must be non-negative".into()));
    }
    let total: Rational = profiles.iter().map(|(_, l)| l.clone()).sum();
    if !total.is_one() {
        return Err(Error::Invalid(format!("weights sum to {total}, not 1")));
    }
    let mut acc = Rational::zero();
    for (b, l) in profiles {
        acc += l * lct_exact(b, c)?.value;
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub m: u32,
    pub i: u32,
    pub b: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LctPolytopeInstance {
    components: Vec<Component>,
}

impl LctPolytopeInstance {
    /// Requires `0 < m_i <= I_i`, `b_i >= 0` and `m = sum b_i m_i <= 1`.
    pub fn new(components: Vec<Component>) -> Result<Self, Error> {
        if components.is_empty() {
            return Err(Error::Invalid("no components".into()));
        }
        for c in &components {
            if c.m == 0 || c.m > c.i {
                return Err(Error::Hypothesis(format!(
                    "need 0 < m_i <= I_i, got ({}, {})",
                    c.m, c.i
                )));
            }
            if c.b.is_negative() {
                return Err(Error::Hypothesis(
                    "coefficients must be non-negative".into(),
                ));
            }
        }
        let inst = LctPolytopeInstance { components };
        if inst.m() > Rational::one() {
            return Err(Error::Hypothesis(format!(
                "multiplicity {} exceeds 1",
                inst.m()
            )));
        }
        Ok(inst)
    }

    /// Parses `"m1,I1,b1;m2,I2,b2;..."`.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut comps = Vec::new();
        for item in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let fields: Vec<&str> = item.split(',').map(str::trim).collect();
            let [m, i, b] = fields.as_slice() else {
                return Err(Error::Invalid(format!("component {item:?} is not m,I,b")));
            };
            let int = |s: &str| {
                s.parse::<u32>()
                    .map_err(|_| Error::Invalid(format!("{s:?} is not a positive integer")))
            };
            comps.push(Component {
                m: int(m)?,
                i: int(i)?,
                b: parse_rational(b)
                    .ok_or_else(|| Error::Invalid(format!("{b:?} is not a rational")))?,
            });
        }
        Self::new(comps)
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn m(&self) -> Rational {
        self.components.iter().map(|c| &c.b * ru(c.m)).sum()
    }

    pub fn i(&self) -> Rational {
        self.components.iter().map(|c| &c.b * ru(c.i)).sum()
    }
}

fn ru(n: u32) -> Rational {
    Rational::from_integer(n.into())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexCase {
    /// One nonzero coordinate: the single-branch bound applies directly.
    Single { index: usize },
    /// `m >= m2/I2 > m1/I1`: weights `mu_i = m_i c_i / m`.
    Proportional { low: usize, high: usize },
    /// `m2/I2 > m`: weights `mu'_2 = I2 c2`, `mu'_1 = 1 - I2 c2`.
    Rescaled { low: usize, high: usize },
}

impl VertexCase {
    pub fn label(&self) -> &'static str {
        match self {
            VertexCase::Single { .. } => "single",
            VertexCase::Proportional { .. } => "proportional",
            VertexCase::Rescaled { .. } => "rescaled",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VertexCertificate {
    pub vertex: Vec<Rational>,
    pub case: VertexCase,
    pub bound: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub m: Rational,
    pub i: Rational,
    /// `min{1, 1 + m/I - m}`.
    pub target: Rational,
    /// Empty when `I <= 1`, where the bound 1 needs no polytope.
    pub vertices: Vec<VertexCertificate>,
    pub bound: Rational,
}

impl Certificate {
    pub fn to_json(&self) -> Value {
        json!({
            "m": self.m.to_string(),
            "I": self.i.to_string(),
            "target": self.target.to_string(),
            "bound": self.bound.to_string(),
            "vertices": self.vertices.iter().map(|v| json!({
                "vertex": v.vertex.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "case": v.case.label(),
                "bound": v.bound.to_string(),
            })).collect::<Vec<_>>(),
        })
    }
}

fn cor38(c: &Component, lambda: &Rational) -> Result<Rational, Error> {
    Ok(cor38_bound(c.m, None, c.i, lambda)?.0)
}

fn certify_vertex(
    comps: &[Component],
    t: &[Rational],
    m: &Rational,
    target: &Rational,
) -> Result<VertexCertificate, Error> {
    let support: Vec<usize> = (0..t.len()).filter(|&k| !t[k].is_zero()).collect();
    let (case, bound) = match support.as_slice() {
        [k] => (VertexCase::Single { index: *k }, cor38(&comps[*k], &t[*k])?),
        [a, b] => {
            let ratio = |k: usize| Rational::new(comps[k].m.into(), comps[k].i.into());
            // Distinct ratios: otherwise the pair would not be a vertex.
            let (low, high) = if ratio(*a) < ratio(*b) {
                (*a, *b)
            } else {
                (*b, *a)
            };
            let (c1, c2) = (&comps[low], &comps[high]);
            if *m >= ratio(high) {
                let mu1 = ru(c1.m) * &t[low] / m;
                let mu2 = ru(c2.m) * &t[high] / m;
                let bound = &mu1 * cor38(c1, &(m / ru(c1.m)))? + &mu2 * cor38(c2, &(m / ru(c2.m)))?;
                // Cauchy-Schwarz: sum mu_i m_i/I_i >= m/I.
                let lhs = Rational::one() - m + &mu1 * ratio(low) + &mu2 * ratio(high);
                if bound < lhs || lhs < *target {
                    return Err(Error::Internal(format!(
                        "inequality chain fails at vertex {t:?}"
                    )));
                }
                (VertexCase::Proportional { low, high }, bound)
            } else {
                let mu2 = ru(c2.i) * &t[high];
                let mu1 = Rational::one() - &mu2;
                if !mu1.is_positive() {
                    return Err(Error::Internal(format!("mu'_1 = {mu1} is not positive")));
                }
                let lambda1 = &t[low] / &mu1;
                let bound =
                    &mu1 * cor38(c1, &lambda1)? + &mu2 * cor38(c2, &(Rational::one() / ru(c2.i)))?;
                (VertexCase::Rescaled { low, high }, bound)
            }
        }
        _ => {
            return Err(Error::Internal(format!(
                "vertex {t:?} has support {}",
                support.len()
            )))
        }
    };
    if bound < *target {
        return Err(Error::Internal(format!(
            "vertex bound {bound} is below {target}"
        )));
    }
    Ok(VertexCertificate {
        vertex: t.to_vec(),
        case,
        bound,
    })
}

/// Certified lower bound for `lct(B; C)`, at least `thm18_bound(m, I)`.
pub fn thm18_certify(inst: &LctPolytopeInstance) -> Result<Certificate, Error> {
    let (m, i) = (inst.m(), inst.i());
    if i <= Rational::one() {
        // (B.C) <= 1 makes (X, B + C) lc by inversion of adjunction.
        return Ok(Certificate {
            m,
            i,
            target: Rational::one(),
            vertices: vec![],
            bound: Rational::one(),
        });
    }
    let target = thm18_bound(&m, &i)?;
    let comps = inst.components();
    let ms: Vec<Rational> = comps.iter().map(|c| ru(c.m)).collect();
    let is: Vec<Rational> = comps.iter().map(|c| ru(c.i)).collect();
    let verts = if comps.len() == 1 {
        vec![vec![comps[0].b.clone()]]
    } else {
        vertex_enumeration(&ms, &is, (&m, &i))?
    };
    let vertices = verts
        .iter()
        .map(|t| certify_vertex(comps, t, &m, &target))
        .collect::<Result<Vec<_>, _>>()?;
    let bound = vertices
        .iter()
        .map(|v| v.bound.clone())
        .min()
        .expect("the point b is in the polytope");
    Ok(Certificate {
        m,
        i,
        target,
        vertices,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, q, qi};

    fn qs(v: &[(i64, i64)]) -> Vec<Rational> {
        v.iter().map(|&(a, b)| q(a, b)).collect()
    }

    #[test]
    fn vertices_small() {
        let v = vertex_enumeration(
            &qs(&[(1, 1), (1, 1)]),
            &qs(&[(1, 1), (2, 1)]),
            (&qi(1), &q(3, 2)),
        )
        .unwrap();
        assert_eq!(v, vec![qs(&[(1, 2), (1, 2)])]);
        let v = vertex_enumeration(
            &qs(&[(1, 1); 3]),
            &qs(&[(1, 1), (2, 1), (3, 1)]),
            (&qi(1), &qi(2)),
        )
        .unwrap();
        assert_eq!(
            v,
            vec![qs(&[(0, 1), (1, 1), (0, 1)]), qs(&[(1, 2), (0, 1), (1, 2)])]
        );
        let v = vertex_enumeration(
            &qs(&[(1, 1), (1, 1)]),
            &qs(&[(2, 1), (2, 1)]),
            (&qi(1), &qi(3)),
        )
        .unwrap();
        assert!(v.is_empty());
    }

    #[test]
    fn parallel_constraints_give_simplex() {
        let v = vertex_enumeration(
            &qs(&[(1, 1), (2, 1)]),
            &qs(&[(2, 1), (4, 1)]),
            (&qi(1), &qi(2)),
        )
        .unwrap();
        assert_eq!(v, vec![qs(&[(0, 1), (1, 2)]), qs(&[(1, 1), (0, 1)])]);
    }

    #[test]
    fn certify_single() {
        let inst = LctPolytopeInstance::parse("1,2,1").unwrap();
        let cert = thm18_certify(&inst).unwrap();
        assert_eq!(cert.bound, q(1, 2));
        assert_eq!(cert.vertices[0].case, VertexCase::Single { index: 0 });
    }

    #[test]
    fn certify_two_components() {
        let cert = thm18_certify(&LctPolytopeInstance::parse("1,1,1/2; 1,2,1/2").unwrap()).unwrap();
        assert_eq!(
            (cert.m.clone(), cert.i.clone(), cert.target.clone()),
            (qi(1), q(3, 2), q(2, 3))
        );
        assert_eq!(cert.bound, q(3, 4));
        assert_eq!(
            cert.vertices[0].case,
            VertexCase::Proportional { low: 1, high: 0 }
        );

        let cert = thm18_certify(&LctPolytopeInstance::parse("1,3,1/4; 2,3,1/4").unwrap()).unwrap();
        assert_eq!(cert.target, q(3, 4));
        assert_eq!(cert.bound, q(29, 36));

        // m2/I2 = 1/2 > m = 2/5 selects the rescaled decomposition.
        let cert = thm18_certify(&LctPolytopeInstance::parse("1,4,1/5; 1,2,1/5").unwrap()).unwrap();
        assert_eq!(
            cert.vertices[0].case,
            VertexCase::Rescaled { low: 0, high: 1 }
        );
        assert!(cert.bound >= cert.target);
    }

    #[test]
    fn certify_rejects_bad_instances() {
        assert!(LctPolytopeInstance::parse("2,1,1/2").is_err());
        assert!(LctPolytopeInstance::parse("2,3,1").is_err());
        assert!(LctPolytopeInstance::parse("1,2").is_err());
        let cert = thm18_certify(&LctPolytopeInstance::parse("1,1,1/2").unwrap()).unwrap();
        assert_eq!(cert.bound, qi(1));
    }

    #[test]
    fn convexity() {
        let div = |s: &str| GermDivisor::single(qi(1), parse_poly(s).unwrap()).unwrap();
        let (b1, b2, c) = (div("x^2 + y^3").scale(&q(1, 2)), div("x"), div("y"));
        let one = convexity_bound(&[(b1.clone(), qi(1)), (b2.clone(), qi(0))], &c).unwrap();
        assert_eq!(one, lct_exact(&b1, &c).unwrap().value);
        let half = convexity_bound(&[(b1.clone(), q(1, 2)), (b2.clone(), q(1, 2))], &c).unwrap();
        let blend = b1.scale(&q(1, 2)).plus(&b2.scale(&q(1, 2)));
        assert!(half <= lct_exact(&blend, &c).unwrap().value);
        assert!(convexity_bound(&[(b1, q(1, 2))], &c).is_err());
    }
}
