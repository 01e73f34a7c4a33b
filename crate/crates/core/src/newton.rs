//! Newton polygons, Newton distance, main face and Newton multiplicity.
//!
//! The polygon of `f` is the convex hull of its support plus the closed
//! first quadrant. Only the compact boundary is stored; the two unbounded
//! edges are the vertical ray above the first vertex and the horizontal ray
//! right of the last.

use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::algebra::{GermDivisor, Poly2, Rational};
use crate::error::Error;
use crate::result::{CertKind, LctResult, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    /// The ray `{(p, q + s) : s >= 0}` above the first vertex.
    Vertical,
    /// The ray `{(p + s, q) : s >= 0}` right of the last vertex.
    Horizontal,
}

#[derive(Clone, Debug, PartialEq)]
pub enum MainFace {
    Vertex(i64, i64),
    CompactEdge {
        p1: i64,
        q1: i64,
        p2: i64,
        q2: i64,
    },
    /// `offset` is the line `x = offset` (vertical) or `y = offset`.
    UnboundedEdge {
        axis: Axis,
        offset: i64,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct NewtonData {
    /// Left to right: `p` strictly increasing, `q` strictly decreasing.
    pub vertices: Vec<(i64, i64)>,
    pub nd: Rational,
    pub main_face: MainFace,
    pub nm: Rational,
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i128 {
    (a.0 - o.0) as i128 * (b.1 - o.1) as i128 - (a.1 - o.1) as i128 * (b.0 - o.0) as i128
}

/// Compact boundary of `conv(points) + R_{>=0}^2`.
pub fn lower_hull(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    // Keep, for each p, the lowest q, and only points strictly below all
    // points to their left.
    let mut staircase: Vec<(i64, i64)> = Vec::new();
    for pt in pts {
        if staircase.last().is_none_or(|last| pt.1 < last.1) {
            staircase.push(pt);
        }
    }
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for pt in staircase {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], pt) <= 0 {
            hull.pop();
        }
        hull.push(pt);
    }
    hull
}

fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

impl NewtonData {
    pub fn from_vertices(vertices: Vec<(i64, i64)>) -> Result<Self, Error> {
        let first = *vertices.first().ok_or(Error::ZeroPolynomial)?;
        let last = *vertices.last().unwrap();
        if first == (0, 0) {
            return Err(Error::NotVanishing);
        }
        // (t, t) lies in the polygon iff it satisfies every edge inequality
        // and both ray inequalities; t* is the least such t.
        let mut t = r(first.0.max(last.1));
        for w in vertices.windows(2) {
            let ((p1, q1), (p2, q2)) = (w[0], w[1]);
            let (alpha, beta) = (q1 - q2, p2 - p1);
            let c = alpha * p1 + beta * q1;
            let s = Rational::new(c.into(), (alpha + beta).into());
            if s > t {
                t = s;
            }
        }
        let nd = t.recip();
        let main_face = Self::locate(&vertices, &t);
        let nm = match main_face {
            MainFace::CompactEdge { p1, q1, p2, q2 } => r((p2 - p1).gcd(&(q1 - q2))),
            _ => t.clone(),
        };
        Ok(NewtonData {
            vertices,
            nd,
            main_face,
            nm,
        })
    }

    fn locate(vertices: &[(i64, i64)], t: &Rational) -> MainFace {
        for &(p, q) in vertices {
            if r(p) == *t && r(q) == *t {
                return MainFace::Vertex(p, q);
            }
        }
        for w in vertices.windows(2) {
            let ((p1, q1), (p2, q2)) = (w[0], w[1]);
            let on_line = r(q1 - q2) * t + r(p2 - p1) * t == r((q1 - q2) * p1 + (p2 - p1) * q1);
            if on_line && r(p1) < *t && *t < r(p2) {
                return MainFace::CompactEdge { p1, q1, p2, q2 };
            }
        }
        let (first, last) = (vertices[0], vertices[vertices.len() - 1]);
        if r(first.0) == *t {
            MainFace::UnboundedEdge {
                axis: Axis::Vertical,
                offset: first.0,
            }
        } else {
            debug_assert_eq!(r(last.1), *t);
            MainFace::UnboundedEdge {
                axis: Axis::Horizontal,
                offset: last.1,
            }
        }
    }

    /// Whether the sandwich collapses: `nd * nm <= 1`.
    pub fn is_exact(&self) -> bool {
        &self.nd * &self.nm <= Rational::one()
    }

    pub fn lct_lower(&self) -> Rational {
        let inv = self.nm.recip();
        if inv < self.nd {
            inv
        } else {
            self.nd.clone()
        }
    }

    pub fn to_json(&self) -> Value {
        let face = match &self.main_face {
            MainFace::Vertex(p, q) => json!({"type": "vertex", "point": [p, q]}),
            MainFace::CompactEdge { p1, q1, p2, q2 } => {
                json!({"type": "compact-edge", "from": [p1, q1], "to": [p2, q2]})
            }
            MainFace::UnboundedEdge { axis, offset } => json!({
                "type": "unbounded-edge",
                "axis": match axis { Axis::Vertical => "vertical", Axis::Horizontal => "horizontal" },
                "offset": offset,
            }),
        };
        json!({
            "vertices": self.vertices.iter().map(|&(p, q)| json!([p, q])).collect::<Vec<_>>(),
            "nd": self.nd.to_string(),
            "main_face": face,
            "nm": self.nm.to_string(),
            "lct_lower": self.lct_lower().to_string(),
            "lct_upper": self.nd.to_string(),
            "exact": self.is_exact(),
        })
    }
}

fn support<K: crate::Scalar>(f: &Poly2<K>) -> Vec<(i64, i64)> {
    f.terms().map(|(&(i, j), _)| (i as i64, j as i64)).collect()
}

pub fn newton_data<K: crate::Scalar>(f: &Poly2<K>) -> Result<NewtonData, Error> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    NewtonData::from_vertices(lower_hull(&support(f)))
}

/// Vertices of the Minkowski sum of two polygons.
pub fn minkowski_sum(a: &[(i64, i64)], b: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut pts = Vec::with_capacity(a.len() * b.len());
    for &(p, q) in a {
        for &(s, t) in b {
            pts.push((p + s, q + t));
        }
    }
    lower_hull(&pts)
}

/// Newton data of an effective divisor: the polygon of `k * D` for the
/// least `k` clearing denominators, rescaled by `1/k`. `nd` and `nm` are
/// returned for `D` itself; vertices are those of `k * D` together with `k`.
pub fn newton_data_divisor(d: &GermDivisor) -> Result<(NewtonData, i64), Error> {
    let parts = d.normalized();
    if parts.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let mut k = num_bigint::BigInt::one();
    for (_, b) in &parts {
        if b <= &Rational::zero() {
            return Err(Error::Invalid(
                "Newton data needs positive coefficients".into(),
            ));
        }
        k = k.lcm(b.denom());
    }
    let k_i64: i64 =
        i64::try_from(&k).map_err(|_| Error::Invalid("denominators too large".into()))?;
    let mut acc: Vec<(i64, i64)> = vec![(0, 0)];
    for (f, b) in &parts {
        let e = (b * Rational::from_integer(k.clone())).to_integer();
        let e: i64 =
            i64::try_from(&e).map_err(|_| Error::Invalid("coefficient too large".into()))?;
        let hull = lower_hull(&support(f));
        let scaled: Vec<(i64, i64)> = hull.iter().map(|&(p, q)| (p * e, q * e)).collect();
        acc = minkowski_sum(&acc, &scaled);
    }
    let scaled = NewtonData::from_vertices(acc)?;
    let kq = r(k_i64);
    let data = NewtonData {
        vertices: scaled.vertices,
        nd: &scaled.nd * &kq,
        main_face: scaled.main_face,
        nm: &scaled.nm / &kq,
    };
    Ok((data, k_i64))
}

fn bounds_result(data: &NewtonData) -> LctResult {
    if data.is_exact() {
        LctResult::exact(data.nd.clone(), Some(Witness::Newton))
    } else {
        LctResult {
            value: data.nd.clone(),
            kind: CertKind::Sandwich,
            lower: Some(data.lct_lower()),
            witness: Some(Witness::Newton),
        }
    }
}

/// `min(1/nm, nd) <= lct <= nd`, exact when `nd * nm <= 1`. A sandwich
/// reports the upper end as its value.
pub fn lct_newton_bounds<K: crate::Scalar>(f: &Poly2<K>) -> Result<LctResult, Error> {
    Ok(bounds_result(&newton_data(f)?))
}

pub fn lct_newton_bounds_divisor(d: &GermDivisor) -> Result<LctResult, Error> {
    Ok(bounds_result(&newton_data_divisor(d)?.0))
}

#[derive(Clone, Debug, PartialEq)]
pub struct NdNmReport {
    pub nd_nm: Rational,
    /// Set when `nd * nm > 1`: the main face's edge vector.
    pub edge_vector: Option<(i64, i64)>,
}

/// Checks `nd * nm <= 2`, and that when `nd * nm > 1` the main face is a
/// compact edge with one edge-vector component equal to `nm`.
pub fn check_ndnm_inequality(data: &NewtonData) -> Result<NdNmReport, Error> {
    let nd_nm = &data.nd * &data.nm;
    if nd_nm > r(2) {
        return Err(Error::Internal(format!("nd*nm = {nd_nm} exceeds 2")));
    }
    if nd_nm <= Rational::one() {
        return Ok(NdNmReport {
            nd_nm,
            edge_vector: None,
        });
    }
    match data.main_face {
        MainFace::CompactEdge { p1, q1, p2, q2 } => {
            let v = (p2 - p1, q1 - q2);
            if r(v.0) != data.nm && r(v.1) != data.nm {
                return Err(Error::Internal(format!(
                    "edge vector {v:?} has no component equal to nm"
                )));
            }
            Ok(NdNmReport {
                nd_nm,
                edge_vector: Some(v),
            })
        }
        _ => Err(Error::Internal(
            "nd*nm > 1 on a non-compact main face".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, q, qi};

    fn nd(s: &str) -> NewtonData {
        newton_data(&parse_poly(s).unwrap()).unwrap()
    }

    #[test]
    fn cusp() {
        let d = nd("x^2 + y^3");
        assert_eq!(d.vertices, vec![(0, 3), (2, 0)]);
        assert_eq!(d.nd, q(5, 6));
        assert_eq!(
            d.main_face,
            MainFace::CompactEdge {
                p1: 0,
                q1: 3,
                p2: 2,
                q2: 0
            }
        );
        assert_eq!(d.nm, qi(1));
        let b = lct_newton_bounds(&parse_poly("x^2 + y^3").unwrap()).unwrap();
        assert_eq!((b.value, b.kind), (q(5, 6), CertKind::Exact));
    }

    #[test]
    fn monomial_main_face_is_the_ray_through_the_diagonal() {
        let d = nd("x^2*y^3");
        assert_eq!(d.vertices, vec![(2, 3)]);
        assert_eq!(d.nd, q(1, 3));
        assert_eq!(d.nm, qi(3));
        assert_eq!(
            d.main_face,
            MainFace::UnboundedEdge {
                axis: Axis::Horizontal,
                offset: 3
            }
        );
        assert_eq!(nd("x^2*y^2").main_face, MainFace::Vertex(2, 2));
    }

    #[test]
    fn node_sandwich() {
        let d = nd("x^2 + y^2");
        assert_eq!((d.nd.clone(), d.nm.clone()), (qi(1), qi(2)));
        let b = lct_newton_bounds(&parse_poly("x^2 + y^2").unwrap()).unwrap();
        assert_eq!(b.kind, CertKind::Sandwich);
        assert_eq!(b.lower, Some(q(1, 2)));
        assert_eq!(b.value, qi(1));
        let rep = check_ndnm_inequality(&d).unwrap();
        assert_eq!(rep.edge_vector, Some((2, 2)));
    }

    #[test]
    fn smooth_and_ndnm_one() {
        let b = lct_newton_bounds(&parse_poly("x").unwrap()).unwrap();
        assert_eq!((b.value, b.kind), (qi(1), CertKind::Exact));
        let d = nd("x^3*y + x*y^3");
        assert_eq!(d.vertices, vec![(1, 3), (3, 1)]);
        assert_eq!((d.nd.clone(), d.nm.clone()), (q(1, 2), qi(2)));
        assert_eq!(check_ndnm_inequality(&d).unwrap().nd_nm, qi(1));
    }

    #[test]
    fn units_are_rejected() {
        assert!(matches!(
            newton_data(&parse_poly("1 + x").unwrap()),
            Err(Error::NotVanishing)
        ));
        assert!(matches!(
            newton_data(&Poly2::<Rational>::zero()),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn divisor_rescaling() {
        let d = GermDivisor::single(q(1, 2), parse_poly("x^2 + y^3").unwrap()).unwrap();
        let (data, k) = newton_data_divisor(&d).unwrap();
        assert_eq!(k, 2);
        assert_eq!(data.nd, q(5, 3));
        assert_eq!(data.nm, q(1, 2));
    }

    #[test]
    fn monomial_distance() {
        for p in 1..=8u32 {
            for qq in 1..=8u32 {
                let f = Poly2::monomial(qi(1), p, qq);
                assert_eq!(newton_data(&f).unwrap().nd, q(1, p.max(qq) as i64));
            }
        }
    }
}
