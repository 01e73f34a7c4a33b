//! Weighted blow-ups of the origin and the weight criterion for lct.
//!
//! For weights `w = (a1, a2)` the exceptional divisor `E` has `k_E = a1 +
//! a2 - 1` and `ord_E f = w(f)`. Writing the weighted leading form as
//! `f_w = x^s y^t h(x^a2, y^a1)`, the strict transform meets `E` in the two
//! orbifold points with coefficients `s/a2`, `t/a1` and in the divisor `G`
//! cut out by `h`.

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::algebra::{GermDivisor, Poly2, Rational, UPoly, WeightVector};
use crate::error::Error;
use crate::result::{CertKind, LctResult, Witness};

type QPoly = Poly2<Rational>;
type ZPoly = UPoly<Rational>;

/// `f_w = x^s y^t h(x^a2, y^a1)`, with `h(1, u)` recorded as a polynomial
/// in `u = y^a1 / x^a2`. `h` is homogeneous of degree `d`.
#[derive(Clone, Debug, PartialEq)]
pub struct LeadingForm {
    pub s: u32,
    pub t: u32,
    pub d: u32,
    pub h: ZPoly,
}

pub fn leading_form(f: &QPoly, w: WeightVector) -> Result<LeadingForm, Error> {
    let fw = f.weighted_leading_term(w)?;
    let (s, t) = fw.monomial_content();
    let mut coeffs = Vec::new();
    let mut d = 0;
    for (&(i, j), c) in fw.terms() {
        let (di, dj) = (i - s, j - t);
        debug_assert!(di % w.a2 == 0 && dj % w.a1 == 0);
        let u = (dj / w.a1) as usize;
        d = d.max(u as u32).max(di / w.a2);
        if coeffs.len() <= u {
            coeffs.resize(u + 1, Rational::zero());
        }
        coeffs[u] = c.clone();
    }
    Ok(LeadingForm {
        s,
        t,
        d,
        h: ZPoly::new(coeffs),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Restriction {
    /// Coefficient of `P1 = [0:1]`, where the strict transform of `(x = 0)`
    /// meets `E`.
    pub p1: Rational,
    /// Coefficient of `P2 = [1:0]`, on the strict transform of `(y = 0)`.
    pub p2: Rational,
    /// Pairwise coprime squarefree factors of the `h`'s, with coefficients.
    pub g: Vec<(ZPoly, Rational)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightedBlowupData {
    pub weight: WeightVector,
    pub k_e: u64,
    /// One entry per divisor part, in part order.
    pub ord: Vec<u64>,
    pub forms: Vec<LeadingForm>,
    pub restriction: Restriction,
}

impl WeightedBlowupData {
    /// `a(E, X, B) = 1 + k_E - sum b_i ord_E f_i`.
    pub fn log_discrepancy(&self, divisor: &GermDivisor) -> Rational {
        let mut a = Rational::from_integer((1 + self.k_e).into());
        for ((b, _), o) in divisor.parts().iter().zip(&self.ord) {
            a -= b * Rational::from_integer((*o).into());
        }
        a
    }

    /// `sum b_i ord_E f_i`.
    pub fn weighted_multiplicity(&self, divisor: &GermDivisor) -> Rational {
        let mut acc = Rational::zero();
        for ((b, _), o) in divisor.parts().iter().zip(&self.ord) {
            acc += b * Rational::from_integer((*o).into());
        }
        acc
    }

    pub fn to_json(&self, divisor: &GermDivisor) -> Value {
        json!({
            "weight": [self.weight.a1, self.weight.a2],
            "kE": self.k_e,
            "ord": self.ord,
            "a": self.log_discrepancy(divisor).to_string(),
            "restriction": {
                "p1": self.restriction.p1.to_string(),
                "p2": self.restriction.p2.to_string(),
                "g": self.restriction.g.iter()
                    .map(|(h, c)| json!({"h": h.to_string(), "coeff": c.to_string()}))
                    .collect::<Vec<_>>(),
            },
        })
    }
}

fn rat(n: u64) -> Rational {
    Rational::from_integer(n.into())
}

fn upoly_gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    a.gcd(b).expect("rational gcd")
}

/// Refines squarefree monic polynomials into a pairwise coprime family.
fn coprime_basis_u(polys: &[ZPoly]) -> Vec<ZPoly> {
    let mut basis: Vec<ZPoly> = Vec::new();
    let mut pending: Vec<ZPoly> = polys.to_vec();
    while let Some(cur) = pending.pop() {
        if cur.degree().unwrap_or(0) == 0 {
            continue;
        }
        let hit = basis
            .iter()
            .position(|b| upoly_gcd(b, &cur).degree().unwrap_or(0) > 0);
        match hit {
            None => basis.push(cur),
            Some(k) => {
                let old = basis.swap_remove(k);
                let g = upoly_gcd(&old, &cur);
                pending.push(
                    old.div_exact(&g)
                        .expect("rational")
                        .monic()
                        .expect("rational"),
                );
                pending.push(
                    cur.div_exact(&g)
                        .expect("rational")
                        .monic()
                        .expect("rational"),
                );
                pending.push(g);
            }
        }
    }
    basis.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().cmp(b.coeffs()))
    });
    basis
}

pub fn weighted_blowup(
    divisor: &GermDivisor,
    w: WeightVector,
) -> Result<WeightedBlowupData, Error> {
    let mut ord = Vec::new();
    let mut forms = Vec::new();
    let (mut p1, mut p2) = (Rational::zero(), Rational::zero());
    let mut pieces: Vec<(ZPoly, u32, Rational)> = Vec::new();
    for (b, f) in divisor.parts() {
        ord.push(f.weighted_multiplicity(w)?);
        let form = leading_form(f, w)?;
        p1 += b * Rational::new(form.s.into(), w.a2.into());
        p2 += b * Rational::new(form.t.into(), w.a1.into());
        if form.h.degree().unwrap_or(0) > 0 {
            for (fac, e) in form.h.squarefree_decomposition().expect("rational") {
                pieces.push((fac, e, b.clone()));
            }
        }
        forms.push(form);
    }
    let basis = coprime_basis_u(&pieces.iter().map(|(f, _, _)| f.clone()).collect::<Vec<_>>());
    let g = basis
        .into_iter()
        .map(|q| {
            let mut c = Rational::zero();
            for (f, e, b) in &pieces {
                if f.rem(&q).expect("rational").is_zero() {
                    c += b * rat(*e as u64);
                }
            }
            (q, c)
        })
        .filter(|(_, c)| !c.is_zero())
        .collect();
    Ok(WeightedBlowupData {
        weight: w,
        k_e: w.a1 as u64 + w.a2 as u64 - 1,
        ord,
        forms,
        restriction: Restriction { p1, p2, g },
    })
}

/// `b = (a1 + a2) / w(B)`: always an upper bound for the lct of `B`, exact
/// when `(C^2, b * B_w)` is lc away from the origin.
pub fn lct_via_weight(divisor: &GermDivisor, w: WeightVector) -> Result<LctResult, Error> {
    let data = weighted_blowup(divisor, w)?;
    let total = data.weighted_multiplicity(divisor);
    if total <= Rational::zero() {
        return Err(Error::Invalid(
            "weighted multiplicity must be positive".into(),
        ));
    }
    let b = rat(w.a1 as u64 + w.a2 as u64) / &total;
    let (mut s, mut t) = (Rational::zero(), Rational::zero());
    for ((coeff, _), form) in divisor.parts().iter().zip(&data.forms) {
        s += coeff * rat(form.s as u64);
        t += coeff * rat(form.t as u64);
    }
    let one = Rational::one();
    let lc_outside =
        &b * &s <= one && &b * &t <= one && data.restriction.g.iter().all(|(_, c)| &b * c <= one);
    Ok(LctResult {
        value: b,
        kind: if lc_outside {
            CertKind::Exact
        } else {
            CertKind::Upper
        },
        lower: None,
        witness: Some(Witness::Weight(w)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, q, qi};

    fn div(s: &str) -> GermDivisor {
        GermDivisor::single(qi(1), parse_poly(s).unwrap()).unwrap()
    }

    fn w(a1: u32, a2: u32) -> WeightVector {
        WeightVector::new(a1, a2).unwrap()
    }

    #[test]
    fn cusp_with_wrong_weights() {
        let d = div("x^3 + y^2");
        let data = weighted_blowup(&d, w(2, 3)).unwrap();
        assert_eq!(data.k_e, 4);
        assert_eq!(data.ord, vec![6]);
        assert_eq!(data.log_discrepancy(&d), qi(-1));
    }

    #[test]
    fn smooth_line() {
        let d = div("x");
        let data = weighted_blowup(&d, w(3, 5)).unwrap();
        assert_eq!(data.ord, vec![3]);
        assert_eq!(data.restriction.p1, q(1, 5));
        assert_eq!(data.restriction.p2, qi(0));
        assert!(data.restriction.g.is_empty());
    }

    #[test]
    fn cusp_restriction_degree() {
        let d = div("x^2 + y^3");
        let data = weighted_blowup(&d, w(3, 2)).unwrap();
        let form = &data.forms[0];
        assert_eq!((form.s, form.t, form.d), (0, 0, 1));
        assert_eq!(data.restriction.g.len(), 1);
        assert_eq!(data.restriction.g[0].1, qi(1));
        let lhs =
            Rational::new(form.s.into(), 2.into()) + Rational::new(form.t.into(), 3.into()) + qi(1);
        assert_eq!(lhs, Rational::new(data.ord[0].into(), 6.into()));
    }

    #[test]
    fn weight_criterion() {
        let r = lct_via_weight(&div("x^2 + y^3"), w(3, 2)).unwrap();
        assert_eq!((r.value, r.kind), (q(5, 6), CertKind::Exact));
        let r = lct_via_weight(&div("x^2 + y^2"), w(1, 1)).unwrap();
        assert_eq!((r.value, r.kind), (qi(1), CertKind::Exact));
        let r = lct_via_weight(&div("x*(x^2 + y^3)"), w(3, 2)).unwrap();
        assert_eq!((r.value, r.kind), (q(5, 9), CertKind::Exact));
        // (x + y)^2 with weights (1, 1): the double line blocks exactness.
        let r = lct_via_weight(&div("(x + y)^2"), w(1, 1)).unwrap();
        assert_eq!((r.value, r.kind), (qi(1), CertKind::Upper));
    }
}
