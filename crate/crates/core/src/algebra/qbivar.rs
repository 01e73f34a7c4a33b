//! Gcd, exact division and squarefree decomposition in `Q[x, y]`.
//!
//! Polynomials are viewed in `Q[x][y]`; gcds use the subresultant
//! remainder sequence with contents handled in `Q[x]`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::poly2::Poly2;
use super::scalar::Rational;
use super::upoly::UPoly;

type QPoly = Poly2<Rational>;
type XPoly = UPoly<Rational>;

/// Coefficients in `Q[x]` of successive powers of `y`.
fn y_columns(f: &QPoly) -> Vec<XPoly> {
    let dy = f.degree_y().map_or(0, |d| d as usize + 1);
    let mut raw: Vec<Vec<Rational>> = vec![Vec::new(); dy];
    for (&(i, j), c) in f.terms() {
        let col = &mut raw[j as usize];
        if col.len() <= i as usize {
            col.resize(i as usize + 1, Rational::zero());
        }
        col[i as usize] = c.clone();
    }
    raw.into_iter().map(XPoly::new).collect()
}

fn from_y_columns(cols: &[XPoly]) -> QPoly {
    let mut out = QPoly::zero();
    for (j, col) in cols.iter().enumerate() {
        for (i, c) in col.coeffs().iter().enumerate() {
            out.add_term(i as u32, j as u32, c.clone());
        }
    }
    out
}

fn trim(cols: &mut Vec<XPoly>) {
    while cols.last().is_some_and(|c| c.is_zero()) {
        cols.pop();
    }
}

/// The associate of `p` with coprime integer coefficients.
fn integral(p: &XPoly) -> XPoly {
    let (mut den, mut num) = (BigInt::one(), BigInt::zero());
    for c in p.coeffs() {
        den = den.lcm(c.denom());
        num = num.gcd(c.numer());
    }
    if num.is_zero() {
        return p.clone();
    }
    p.scale(&Rational::new(den, num))
}

/// Monic gcd in `Q[x]`. Euclid on integral associates keeps the
/// coefficient size bounded by the inputs' instead of growing per step.
fn xgcd(a: &XPoly, b: &XPoly) -> XPoly {
    let (mut a, mut b) = (integral(a), integral(b));
    while !b.is_zero() {
        let r = integral(&a.rem(&b).expect("rational division never splits"));
        a = b;
        b = r;
    }
    a.monic().expect("rational gcd never splits")
}

fn xdiv(a: &XPoly, b: &XPoly) -> XPoly {
    a.div_exact(b).expect("rational division never splits")
}

fn from_x(p: &XPoly) -> QPoly {
    from_y_columns(std::slice::from_ref(p))
}

/// Monic gcd of the `Q[x]` coefficients.
pub fn content_x(f: &QPoly) -> XPoly {
    y_columns(f).iter().fold(XPoly::zero(), |g, c| xgcd(&g, c))
}

fn primitive_cols(f: &QPoly) -> Vec<XPoly> {
    let c = content_x(f);
    y_columns(f).iter().map(|col| xdiv(col, &c)).collect()
}

/// `lc(b)^(deg a - deg b + 1) * a mod b`, in `Q[x][y]`.
fn pseudo_rem(a: &[XPoly], b: &[XPoly]) -> Vec<XPoly> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r: Vec<XPoly> = a.to_vec();
    trim(&mut r);
    // Steps skipped by cancellation still owe a factor of lc(b).
    let mut owed = (a.len() - b.len() + 1) as u32;
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        for (k, bk) in b.iter().enumerate() {
            let idx = dr - db + k;
            r[idx] = r[idx].sub(&lr.mul(bk));
        }
        trim(&mut r);
        owed -= 1;
    }
    if owed > 0 {
        let f = lb.pow(owed);
        for c in r.iter_mut() {
            *c = c.mul(&f);
        }
    }
    r
}

fn primitive_part_cols(cols: &[XPoly]) -> Vec<XPoly> {
    let c = cols.iter().fold(XPoly::zero(), |g, col| xgcd(&g, col));
    cols.iter().map(|col| xdiv(col, &c)).collect()
}

/// Greatest common divisor, normalized by [`normalize`]. Zero when both
/// inputs are zero.
pub fn gcd(f: &QPoly, g: &QPoly) -> QPoly {
    if f.is_zero() {
        return normalize(g);
    }
    if g.is_zero() {
        return normalize(f);
    }
    // The remainder sequence is shortest in the variable of lower degree.
    let deg = |p: &QPoly, d: fn(&QPoly) -> Option<u32>| d(p).unwrap_or(0);
    let dy = deg(f, QPoly::degree_y).max(deg(g, QPoly::degree_y));
    let dx = deg(f, QPoly::degree_x).max(deg(g, QPoly::degree_x));
    if dx < dy {
        return normalize(&gcd_in_y(&f.swap(), &g.swap()).swap());
    }
    gcd_in_y(f, g)
}

fn gcd_in_y(f: &QPoly, g: &QPoly) -> QPoly {
    let content = xgcd(&content_x(f), &content_x(g));
    let mut a = integral_cols(&primitive_cols(f));
    let mut b = integral_cols(&primitive_cols(g));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    // Subresultant remainder sequence: each remainder is divisible by
    // `g h^delta` exactly, so coefficients grow linearly without per-step
    // content gcds.
    let (mut lead, mut h) = (XPoly::one(), XPoly::one());
    let prim = loop {
        if b.len() <= 1 {
            break vec![XPoly::one()];
        }
        let delta = (a.len() - b.len()) as u32;
        let r = pseudo_rem(&a, &b);
        if r.is_empty() {
            break primitive_part_cols(&b);
        }
        let div = lead.mul(&h.pow(delta));
        a = std::mem::replace(&mut b, r.iter().map(|c| xdiv(c, &div)).collect());
        lead = a.last().expect("nonempty").clone();
        h = if delta == 0 {
            h
        } else {
            xdiv(&lead.pow(delta), &h.pow(delta - 1))
        };
    };
    normalize(&from_x(&content).mul(&from_y_columns(&prim)))
}

fn integral_cols(cols: &[XPoly]) -> Vec<XPoly> {
    let (mut den, mut num) = (BigInt::one(), BigInt::zero());
    for c in cols.iter().flat_map(|col| col.coeffs()) {
        den = den.lcm(c.denom());
        num = num.gcd(c.numer());
    }
    let k = Rational::new(den, if num.is_zero() { BigInt::one() } else { num });
    cols.iter().map(|col| col.scale(&k)).collect()
}

/// Leading term in lexicographic order, `y` before `x`.
fn lex_leading(f: &QPoly) -> Option<((u32, u32), Rational)> {
    f.terms()
        .max_by(|a, b| (a.0 .1, a.0 .0).cmp(&(b.0 .1, b.0 .0)))
        .map(|(&k, c)| (k, c.clone()))
}

/// `f / g` when `g` divides `f`, otherwise `None`.
pub fn div_exact(f: &QPoly, g: &QPoly) -> Option<QPoly> {
    let ((gi, gj), gc) = lex_leading(g)?;
    let mut rem = f.clone();
    let mut quot = QPoly::zero();
    while let Some(((ri, rj), rc)) = lex_leading(&rem) {
        if ri < gi || rj < gj {
            return None;
        }
        let t = QPoly::monomial(rc / gc.clone(), ri - gi, rj - gj);
        rem = rem.sub(&t.mul(g));
        quot = quot.add(&t);
    }
    Some(quot)
}

/// Scales so that the lexicographically largest term has coefficient 1.
pub fn normalize(f: &QPoly) -> QPoly {
    match lex_leading(f) {
        None => QPoly::zero(),
        Some((_, c)) => f.scale(&c.recip()),
    }
}

pub fn is_constant(f: &QPoly) -> bool {
    f.total_degree().unwrap_or(0) == 0
}

pub fn derivative_y(f: &QPoly) -> QPoly {
    QPoly::from_terms(
        f.terms()
            .filter(|(&(_, j), _)| j > 0)
            .map(|(&(i, j), c)| ((i, j - 1), c.clone() * Rational::from_integer(j.into()))),
    )
}

/// Squarefree, pairwise coprime, non-constant factors with exponents.
/// Their product with exponents equals `f` up to a rational constant.
pub fn squarefree_decomposition(f: &QPoly) -> Vec<(QPoly, u32)> {
    assert!(!f.is_zero(), "squarefree decomposition of zero");
    if f.degree_x() < f.degree_y() {
        let swapped = squarefree_in_y(&f.swap());
        return swapped
            .into_iter()
            .map(|(p, e)| (normalize(&p.swap()), e))
            .collect();
    }
    squarefree_in_y(f)
}

fn squarefree_in_y(f: &QPoly) -> Vec<(QPoly, u32)> {
    let mut out = Vec::new();
    let content = content_x(f);
    if content.degree().unwrap_or(0) > 0 {
        for (fac, e) in content.squarefree_decomposition().expect("rational") {
            out.push((normalize(&from_x(&fac)), e));
        }
    }
    let prim = from_y_columns(&primitive_cols(f));
    if prim.degree_y().unwrap_or(0) > 0 {
        let fy = derivative_y(&prim);
        let a0 = gcd(&prim, &fy);
        let mut b = div_exact(&prim, &a0).expect("gcd divides");
        let c = div_exact(&fy, &a0).expect("gcd divides derivative");
        let mut d = c.sub(&derivative_y(&b));
        let mut i = 1;
        while !is_constant(&b) {
            let a = gcd(&b, &d);
            let b_next = div_exact(&b, &a).expect("gcd divides");
            let c_next = div_exact(&d, &a).expect("gcd divides");
            d = c_next.sub(&derivative_y(&b_next));
            if !is_constant(&a) {
                out.push((a, i));
            }
            b = b_next;
            i += 1;
        }
    }
    out
}

/// Deterministic order on normalized polynomials.
pub fn cmp_poly(a: &QPoly, b: &QPoly) -> Ordering {
    let key = |p: &QPoly| {
        let mut t: Vec<((u32, u32), Rational)> = p.terms().map(|(&k, c)| (k, c.clone())).collect();
        t.sort_by(|x, y| y.0.cmp(&x.0));
        t
    };
    a.total_degree()
        .cmp(&b.total_degree())
        .then(a.len().cmp(&b.len()))
        .then_with(|| key(a).cmp(&key(b)))
}

/// Refines squarefree polynomials into a pairwise coprime family whose
/// members each divide some input, such that every input is a product of
/// members. Constants are discarded. Sorted by [`cmp_poly`].
pub fn coprime_basis(polys: &[QPoly]) -> Vec<QPoly> {
    let mut basis: Vec<QPoly> = Vec::new();
    for p in polys {
        let mut pending = vec![normalize(p)];
        while let Some(mut cur) = pending.pop() {
            if is_constant(&cur) {
                continue;
            }
            let mut k = 0;
            while k < basis.len() {
                let g = gcd(&cur, &basis[k]);
                if is_constant(&g) {
                    k += 1;
                    continue;
                }
                let old = basis.swap_remove(k);
                let rest_old = normalize(&div_exact(&old, &g).expect("gcd divides"));
                let rest_cur = normalize(&div_exact(&cur, &g).expect("gcd divides"));
                pending.push(rest_old);
                pending.push(g);
                cur = rest_cur;
                if is_constant(&cur) {
                    break;
                }
                k = 0;
            }
            if !is_constant(&cur) {
                basis.push(cur);
            }
        }
    }
    basis.sort_by(cmp_poly);
    basis.dedup();
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly;

    fn pp(s: &str) -> QPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(
            gcd(&pp("x^2 - y^2"), &pp("x^2 + 2*x*y + y^2")),
            normalize(&pp("x + y"))
        );
        assert_eq!(gcd(&pp("x*y"), &pp("x^2")), pp("x"));
        assert!(is_constant(&gcd(&pp("x^2 + y^3"), &pp("x"))));
        let g = gcd(
            &pp("(x - y^2)*(x + y)^2*(x^2 + 1)"),
            &pp("(x+y)*(x^2+1)*(y-3)"),
        );
        assert_eq!(g, normalize(&pp("(x + y)*(x^2 + 1)")));
    }

    #[test]
    fn exact_division() {
        let f = pp("(x^2 + y^3)*(x - y)");
        assert_eq!(div_exact(&f, &pp("x - y")).unwrap(), pp("x^2 + y^3"));
        assert!(div_exact(&pp("x^2 + y"), &pp("x + y")).is_none());
    }

    #[test]
    fn squarefree_examples() {
        let dec = squarefree_decomposition(&pp("x^3*(x^2+y^3)^2*(x - y)"));
        let mut product = QPoly::one();
        for (g, e) in &dec {
            product = product.mul(&g.pow(*e));
        }
        assert_eq!(
            normalize(&product),
            normalize(&pp("x^3*(x^2+y^3)^2*(x - y)"))
        );
        let max = dec.iter().map(|(_, e)| *e).max().unwrap();
        assert_eq!(max, 3);
    }

    #[test]
    fn squarefree_dense_square() {
        // Once pathological for a primitive remainder sequence.
        let f = pp("x^4*y^4 + x*y^3 - x^3");
        let h = f.mul(&f).mul(&pp("y^4*x + x^2*y^2 - 3*y"));
        let dec = squarefree_decomposition(&h);
        assert!(dec.contains(&(normalize(&f), 2)));
    }

    #[test]
    fn basis_is_coprime() {
        let basis = coprime_basis(&[pp("x*(x + y)"), pp("(x + y)*(y - x^2)"), pp("x")]);
        assert_eq!(basis.len(), 3);
        for (a, b) in basis.iter().zip(basis.iter().skip(1)) {
            assert!(is_constant(&gcd(a, b)));
        }
    }
}
