//! Independent oracles and seeded corpora shared by the integration tests.
//!
//! Nothing here calls the resolution code: the oracles use plain linear
//! algebra so they can check it.

#![allow(dead_code)]

use germ_lct::algebra::qbivar;
use germ_lct::algebra::{q, qi, GermDivisor, Poly2, Rational};
use germ_lct::QPoly;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn poly(text: &str) -> QPoly {
    germ_lct::algebra::parse_poly(text).unwrap()
}

pub fn div1(text: &str) -> GermDivisor {
    GermDivisor::single(qi(1), poly(text)).unwrap()
}

pub fn divisor(parts: &[(Rational, &str)]) -> GermDivisor {
    GermDivisor::new(parts.iter().map(|(b, f)| (b.clone(), poly(f))).collect()).unwrap()
}

// ---- quotient-dimension oracle -------------------------------------------

const P: u64 = (1 << 61) - 1;

fn mulp(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn powp(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulp(r, a);
        }
        a = mulp(a, a);
        e >>= 1;
    }
    r
}

fn modp(r: &Rational) -> u64 {
    let m = |n: &num_bigint::BigInt| {
        let v = (n % num_bigint::BigInt::from(P))
            .to_string()
            .parse::<i128>()
            .unwrap();
        (v.rem_euclid(P as i128)) as u64
    };
    let d = m(r.denom());
    assert!(d != 0, "denominator divisible by the oracle prime");
    mulp(m(r.numer()), powp(d, P - 2))
}

/// Rank of a dense matrix over `F_p`.
fn rank(mut rows: Vec<Vec<u64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = powp(rows[r][c], P - 2);
        for v in rows[r].iter_mut() {
            *v = mulp(*v, inv);
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (v, p) in row.iter_mut().zip(&pivot) {
                    *v = (*v + P - mulp(f, *p)) % P;
                }
            }
        }
        r += 1;
    }
    r
}

/// `dim k[x,y] / (f, g, m^n)`.
fn truncated_dim(f: &QPoly, g: &QPoly, n: u32) -> usize {
    let monos: Vec<(u32, u32)> = (0..n)
        .flat_map(|d| (0..=d).map(move |i| (i, d - i)))
        .collect();
    let index = |i: u32, j: u32| monos.iter().position(|&m| m == (i, j));
    let mut rows = Vec::new();
    for h in [f, g] {
        for &(a, b) in &monos {
            let mut row = vec![0u64; monos.len()];
            let mut any = false;
            for (&(i, j), c) in h.terms() {
                if let Some(k) = index(i + a, j + b) {
                    row[k] = modp(c);
                    any = true;
                }
            }
            if any {
                rows.push(row);
            }
        }
    }
    monos.len() - rank(rows)
}

/// Local intersection multiplicity at the origin as the dimension of the
/// local quotient ring, or `None` if it exceeds `limit`.
///
/// `dim O/(f, g, m^n)` grows with `n`; once two consecutive values agree,
/// Nakayama gives `m^n` inside `(f, g)` and the value is final.
pub fn quotient_dim(f: &QPoly, g: &QPoly, limit: usize) -> Option<u64> {
    let mut prev = truncated_dim(f, g, 1);
    for n in 2.. {
        let cur = truncated_dim(f, g, n);
        if cur == prev {
            return Some(cur as u64);
        }
        if cur > limit {
            return None;
        }
        prev = cur;
    }
    unreachable!()
}

// ---- brute-force vertex oracle -------------------------------------------

/// Solves the square or overdetermined system restricted to `support`,
/// returning the unique solution if there is one.
fn solve_on(
    n1: &[Rational],
    n2: &[Rational],
    b: (&Rational, &Rational),
    support: &[usize],
) -> Option<Vec<Rational>> {
    // Columns of the 2 x |S| system; augmented Gaussian elimination.
    let k = support.len();
    let mut rows: Vec<Vec<Rational>> = [(n1, b.0), (n2, b.1)]
        .iter()
        .map(|(n, rhs)| {
            support
                .iter()
                .map(|&s| n[s].clone())
                .chain([(*rhs).clone()])
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..2).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let lead = rows[r][c].clone();
        for v in rows[r].iter_mut() {
            *v = &*v / &lead;
        }
        let pr = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, p) in row.iter_mut().zip(&pr) {
                    *v = &*v - &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == 2 {
            break;
        }
    }
    if rows[r..].iter().any(|row| !row[k].is_zero()) || pivots.len() < k {
        return None;
    }
    let mut t = vec![Rational::zero(); n1.len()];
    for (row, &c) in pivots.iter().enumerate() {
        t[support[c]] = rows[row][k].clone();
    }
    Some(t)
}

/// All basic feasible solutions, over every subset of coordinates.
pub fn bfs_vertices(
    n1: &[Rational],
    n2: &[Rational],
    b: (&Rational, &Rational),
) -> Vec<Vec<Rational>> {
    let n = n1.len();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let support: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        if let Some(t) = solve_on(n1, n2, b, &support) {
            let exact_support = support.iter().all(|&i| t[i].is_positive());
            if exact_support && t.iter().all(|v| !v.is_negative()) {
                out.push(t);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

// ---- random corpora -------------------------------------------------------

/// A sum of one to three monomials of degree 1..=max_deg.
pub fn random_germ(rng: &mut ChaCha8Rng, max_deg: u32) -> QPoly {
    loop {
        let mut f = Poly2::zero();
        for _ in 0..rng.gen_range(1..=3) {
            let d = rng.gen_range(1..=max_deg);
            let i = rng.gen_range(0..=d);
            let c = [-3i64, -2, -1, 1, 2, 3][rng.gen_range(0..6)];
            f = f.add(&Poly2::monomial(qi(c), i, d - i));
        }
        if !f.is_zero() {
            return f;
        }
    }
}

/// `x`, `y`, `x + a y^k` or `y + a x^k`.
pub fn random_smooth(rng: &mut ChaCha8Rng) -> QPoly {
    let a = qi([-2i64, -1, 1, 2][rng.gen_range(0..4)]);
    let k = rng.gen_range(1..=3);
    match rng.gen_range(0..4) {
        0 => Poly2::x(),
        1 => Poly2::y(),
        2 => Poly2::x().add(&Poly2::monomial(a, 0, k)),
        _ => Poly2::y().add(&Poly2::monomial(a, k, 0)),
    }
}

/// `C^a + c u^b` with `u` the other coordinate, so `(f.C) = b` can be large.
fn tangent_germ(rng: &mut ChaCha8Rng, c: &QPoly) -> QPoly {
    let along_x = c.terms().any(|(&(i, j), _)| (i, j) == (1, 0));
    let u = if along_x { Poly2::y() } else { Poly2::x() };
    let a = rng.gen_range(1..=3u32);
    let b = rng.gen_range(2..=7u32);
    let k = qi([-2i64, -1, 1, 2][rng.gen_range(0..4)]);
    c.pow(a).add(&u.pow(b).scale(&k))
}

pub fn shares_component(f: &QPoly, g: &QPoly) -> bool {
    !qbivar::is_constant(&qbivar::gcd(f, g))
}

/// A boundary of multiplicity at most 1 and a smooth curve outside its
/// support, with `m = mult B` and `I = (B.C)` from the quotient oracle.
pub struct Case {
    pub b: GermDivisor,
    pub c: QPoly,
    pub m: Rational,
    pub i: Rational,
}

pub fn random_case(rng: &mut ChaCha8Rng) -> Case {
    let c = random_smooth(rng);
    let parts = rng.gen_range(1..=3u32);
    let mut div = Vec::new();
    let (mut m, mut i) = (qi(0), qi(0));
    while div.len() < parts as usize {
        let f = if rng.gen_bool(0.5) {
            random_germ(rng, 5)
        } else {
            tangent_germ(rng, &c)
        };
        if shares_component(&f, &c) || div.iter().any(|(_, g)| g == &f) {
            continue;
        }
        let mult = f.multiplicity().unwrap();
        let den = rng.gen_range(1..=3u32);
        let b = Rational::new(rng.gen_range(1..=den).into(), (parts * mult * den).into());
        m += &b * qi(mult as i64);
        i += &b * qi(quotient_dim(&f, &c, 64).expect("isolated intersection") as i64);
        div.push((b, f));
    }
    Case {
        b: GermDivisor::new(div).unwrap(),
        c,
        m,
        i,
    }
}

pub fn seeded_corpus(seed: u64, count: usize) -> Vec<Case> {
    let mut r = rng(seed);
    (0..count).map(|_| random_case(&mut r)).collect()
}

/// Random effective divisor avoiding `c`, lc because its multiplicity is
/// at most 1.
pub fn random_lc_divisor(rng: &mut ChaCha8Rng, c: &QPoly) -> GermDivisor {
    let parts = rng.gen_range(1..=2u32);
    let mut div = Vec::new();
    while div.len() < parts as usize {
        let f = random_germ(rng, 4);
        if shares_component(&f, c) {
            continue;
        }
        let mult = f.multiplicity().unwrap();
        let den = rng.gen_range(1..=3u32);
        div.push((
            Rational::new(rng.gen_range(1..=den).into(), (parts * mult * den).into()),
            f,
        ));
    }
    GermDivisor::new(div).unwrap()
}

/// A branch with multiplicity `m` and `(B.x) = I`, irreducible when
/// `gcd(m, I) = 1` or `m | I`.
pub fn realize_branch(m: u32, i: u32) -> QPoly {
    assert!(1 <= m && m <= i);
    if m == 1 {
        return poly(&format!("x + y^{i}"));
    }
    if i % m == 0 {
        // (x + y^q)^m - y^(qm + 1): coprime exponents after x -> x - y^q.
        let q = i / m;
        return poly(&format!("(x + y^{q})^{m} - y^{}", q * m + 1));
    }
    assert_eq!(num_integer::gcd(m, i), 1, "profile ({m}, {i}) not covered");
    poly(&format!("x^{m} + y^{i}"))
}

pub fn half() -> Rational {
    q(1, 2)
}

/// Builds a germ from `(i, j, c)` triples, dropping the constant term.
pub fn germ_from(terms: &[(u32, u32, i64)]) -> QPoly {
    let mut f = Poly2::zero();
    for &(i, j, c) in terms {
        if (i, j) != (0, 0) {
            f = f.add(&Poly2::monomial(qi(c), i, j));
        }
    }
    f
}
