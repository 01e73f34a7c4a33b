//! Grid and corpus sweeps of closed-form values against the resolution
//! oracle. Cases are generated in a fixed order and reported sorted by key,
//! so output depends only on the config and the seed.

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use germ_lct::algebra::{q, qi, GermDivisor, Poly2, Rational};
use germ_lct::formulas::{prop33_lct, prop35_lct, thm18_bound};
use germ_lct::resolve::{intersection_multiplicity, lct_exact, PuiseuxPair};
use germ_lct::{Error, QPoly};

use crate::commands::{rational, CmdResult};
use crate::{input_error, CliError};

pub const DEFAULT_SEED: u64 = 0x5eed;

pub fn preset(name: &str) -> Result<Value, CliError> {
    Ok(match name {
        "prop33" => {
            json!({"family": "prop33", "n": [1, 3], "k": [1, 3], "m1": [1, 4], "m2": [1, 4]})
        }
        "prop35" => json!({"family": "prop35", "max_n": 7, "coeffs": ["1/2", "1", "2"]}),
        "sharpness" => {
            json!({"family": "sharpness", "pairs": [[1, 2], [2, 3], [2, 5], [3, 4], [3, 5]]})
        }
        "thm18" => json!({"family": "thm18", "count": 200}),
        _ => {
            return Err(input_error(format!(
                "unknown preset {name:?}; known: prop33, prop35, sharpness, thm18"
            )))
        }
    })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Compare {
    /// Oracle equals the formula.
    Equal,
    /// Oracle is at least the formula.
    Lower,
}

struct Outcome {
    key: String,
    formula: Result<Rational, Error>,
    oracle: Result<Rational, Error>,
}

impl Outcome {
    fn ok(&self, mode: Compare) -> bool {
        match (&self.formula, &self.oracle) {
            (Ok(f), Ok(o)) => match mode {
                Compare::Equal => f == o,
                Compare::Lower => o >= f,
            },
            _ => false,
        }
    }
}

fn show(r: &Result<Rational, Error>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

fn range(
    cfg: &Value,
    key: &str,
    default: (u32, u32),
) -> Result<std::ops::RangeInclusive<u32>, CliError> {
    match cfg.get(key) {
        None => Ok(default.0..=default.1),
        Some(v) => {
            let pair = v
                .as_array()
                .filter(|a| a.len() == 2)
                .and_then(|a| Some((a[0].as_u64()?, a[1].as_u64()?)));
            match pair {
                Some((lo, hi)) if lo >= 1 && lo <= hi && hi <= 64 => Ok(lo as u32..=hi as u32),
                _ => Err(input_error(format!(
                    "{key}: expected [lo, hi] with 1 <= lo <= hi <= 64"
                ))),
            }
        }
    }
}

fn uint(cfg: &Value, key: &str, default: u64) -> Result<u64, CliError> {
    match cfg.get(key) {
        None => Ok(default),
        Some(v) => v
            .as_u64()
            .ok_or_else(|| input_error(format!("{key}: expected a non-negative integer"))),
    }
}

fn poly(text: &str) -> QPoly {
    germ_lct::algebra::parse_poly(text).expect("well-formed internal polynomial")
}

fn single(c: Rational, f: QPoly) -> Result<GermDivisor, Error> {
    GermDivisor::single(c, f)
}

fn threshold(d: &GermDivisor) -> Result<Rational, Error> {
    Ok(lct_exact(&GermDivisor::zero(), d)?.value)
}

fn prop33(cfg: &Value) -> Result<Vec<Outcome>, CliError> {
    let (ns, ks) = (range(cfg, "n", (1, 3))?, range(cfg, "k", (1, 3))?);
    let (m1s, m2s) = (range(cfg, "m1", (1, 4))?, range(cfg, "m2", (1, 4))?);
    let mut out = Vec::new();
    for n in ns {
        for k in ks.clone() {
            for m1 in m1s.clone() {
                for m2 in m2s.clone() {
                    let f = poly(&format!("x^{n}*(x^{m1} + y^{m2})^{k}"));
                    out.push(Outcome {
                        key: format!("n={n} k={k} m1={m1} m2={m2}"),
                        formula: prop33_lct(n, k, m1, m2),
                        oracle: single(qi(1), f).and_then(|d| threshold(&d)),
                    });
                }
            }
        }
    }
    Ok(out)
}

fn prop35(cfg: &Value) -> Result<Vec<Outcome>, CliError> {
    let max_n = uint(cfg, "max_n", 7)? as u32;
    if !(3..=12).contains(&max_n) {
        return Err(input_error("max_n must lie in 3..=12"));
    }
    let coeffs: Vec<Rational> = match cfg.get("coeffs") {
        None => vec![q(1, 2), qi(1), qi(2)],
        Some(v) => v
            .as_array()
            .ok_or_else(|| input_error("coeffs: expected a list of rationals"))?
            .iter()
            .map(|c| {
                c.as_str()
                    .ok_or_else(|| input_error("coeffs: expected strings"))
                    .and_then(|s| rational(s, "coeffs"))
            })
            .collect::<Result<_, _>>()?,
    };
    let mut out = Vec::new();
    for n in 3..=max_n {
        for m in 2..n {
            if m.gcd(&n) != 1 {
                continue;
            }
            let b = poly(&format!("x^{m} + y^{n}"));
            // (B.C) for C = x, y and x - y^p.
            let mut curves = vec![("x".to_string(), n), ("y".to_string(), m)];
            for p in (1..).take_while(|p| p * m < n) {
                curves.push((format!("x - y^{p}"), p * m));
            }
            for (c, i) in &curves {
                for s in &coeffs {
                    for t in &coeffs {
                        let oracle = single(s.clone(), b.clone())
                            .and_then(|sb| Ok(sb.plus(&single(t.clone(), poly(c))?)))
                            .and_then(|d| threshold(&d));
                        out.push(Outcome {
                            key: format!("m={m} n={n} C={c} s={s} t={t}"),
                            formula: prop35_lct(PuiseuxPair { m, n: Some(n) }, *i, s, t),
                            oracle,
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

fn sharpness(cfg: &Value) -> Result<Vec<Outcome>, CliError> {
    let pairs: Vec<(u32, u32)> = match cfg.get("pairs") {
        None => vec![(1, 2), (2, 3), (2, 5), (3, 4), (3, 5)],
        Some(v) => v
            .as_array()
            .and_then(|a| {
                a.iter()
                    .map(|p| Some((p.get(0)?.as_u64()? as u32, p.get(1)?.as_u64()? as u32)))
                    .collect::<Option<Vec<_>>>()
            })
            .ok_or_else(|| input_error("pairs: expected [[m, I], ...]"))?,
    };
    let mut out = Vec::new();
    for (m, i) in pairs {
        if m == 0 || m >= i || m.gcd(&i) != 1 {
            return Err(input_error(format!(
                "pair ({m}, {i}) is not coprime with 0 < m < I"
            )));
        }
        let (lo, hi) = (
            Rational::new(1.into(), i.into()),
            Rational::new(1.into(), m.into()),
        );
        let mid = (&lo + &hi) / qi(2);
        for lambda in [lo, mid, hi] {
            let formula = germ_lct::formulas::example39_family(m, i, &lambda);
            let oracle = single(lambda.clone(), poly(&format!("x^{m} + y^{i}")))
                .and_then(|b| Ok(lct_exact(&b, &single(qi(1), Poly2::x())?)?.value));
            out.push(Outcome {
                key: format!("m={m} I={i} lambda={lambda}"),
                formula,
                oracle,
            });
        }
    }
    Ok(out)
}

/// A smooth curve through the origin.
fn random_smooth(rng: &mut ChaCha8Rng) -> QPoly {
    let a = [-2, -1, 1, 2][rng.gen_range(0..4)];
    let k = rng.gen_range(1..=3);
    match rng.gen_range(0..4) {
        0 => Poly2::x(),
        1 => Poly2::y(),
        2 => Poly2::x().add(&Poly2::monomial(qi(a), 0, k)),
        _ => Poly2::y().add(&Poly2::monomial(qi(a), k, 0)),
    }
}

fn random_germ(rng: &mut ChaCha8Rng) -> QPoly {
    loop {
        let mut f = Poly2::zero();
        for _ in 0..rng.gen_range(1..=3) {
            let d = rng.gen_range(1..=5u32);
            let i = rng.gen_range(0..=d);
            let c = [-3, -2, -1, 1, 2, 3][rng.gen_range(0..6)];
            f = f.add(&Poly2::monomial(qi(c), i, d - i));
        }
        if !f.is_zero() {
            return f;
        }
    }
}

/// Whether the smooth curve `c` divides `f`; `c` is `x`, `y`, `x + a y^k`
/// or `y + a x^k`, so it is a graph and restriction decides.
fn divides(c: &QPoly, f: &QPoly) -> bool {
    let (lin_x, lin_y) = (c.coeff(1, 0), c.coeff(0, 1));
    let rest_of = |lead: (u32, u32)| {
        let mut r = Poly2::zero();
        for (&(i, j), v) in c.terms() {
            if (i, j) != lead {
                r.add_term(i, j, -v.clone());
            }
        }
        r
    };
    let restricted = if lin_x == qi(1) {
        f.substitute(&rest_of((1, 0)), &Poly2::y())
    } else {
        debug_assert_eq!(lin_y, qi(1));
        f.substitute(&Poly2::x(), &rest_of((0, 1)))
    };
    restricted.is_zero()
}

/// An effective divisor of multiplicity at most 1 and a smooth curve not
/// in its support, with `m` and `I`.
pub fn random_case(
    rng: &mut ChaCha8Rng,
) -> Result<(GermDivisor, QPoly, Rational, Rational), Error> {
    let c = random_smooth(rng);
    let parts = rng.gen_range(1..=3u32);
    let mut div = Vec::new();
    let (mut m, mut i) = (
        Rational::from_integer(0.into()),
        Rational::from_integer(0.into()),
    );
    while div.len() < parts as usize {
        let f = random_germ(rng);
        if divides(&c, &f) {
            continue;
        }
        let mult = f.multiplicity()?;
        let den = rng.gen_range(1..=3u32);
        let b = Rational::new(rng.gen_range(1..=den).into(), (parts * mult * den).into());
        m += &b * qi(mult as i64);
        i += &b * qi(intersection_multiplicity(&f, &c)? as i64);
        div.push((b, f));
    }
    Ok((GermDivisor::new(div)?, c, m, i))
}

fn thm18(cfg: &Value, seed: u64) -> Result<Vec<Outcome>, CliError> {
    let count = uint(cfg, "count", 200)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for idx in 0..count {
        let (b, c, m, i) = random_case(&mut rng)?;
        let oracle = single(qi(1), c.clone()).and_then(|cd| Ok(lct_exact(&b, &cd)?.value));
        out.push(Outcome {
            key: format!("{idx:04} B={} C={c} m={m} I={i}", b.to_json()),
            formula: thm18_bound(&m, &i),
            oracle,
        });
    }
    Ok(out)
}

pub fn run(text: &str, seed_flag: Option<u64>) -> CmdResult {
    let cfg: Value =
        serde_json::from_str(text).map_err(|e| input_error(format!("sweep config: {e}")))?;
    let family = cfg
        .get("family")
        .and_then(Value::as_str)
        .ok_or_else(|| input_error("sweep config: missing \"family\""))?;
    let seed = match seed_flag {
        Some(s) => s,
        None => uint(&cfg, "seed", DEFAULT_SEED)?,
    };
    let (mut outcomes, default_mode) = match family {
        "prop33" => (prop33(&cfg)?, Compare::Equal),
        "prop35" => (prop35(&cfg)?, Compare::Equal),
        "sharpness" => (sharpness(&cfg)?, Compare::Equal),
        "thm18" => (thm18(&cfg, seed)?, Compare::Lower),
        other => return Err(input_error(format!("unknown family {other:?}"))),
    };
    let mode = match cfg.get("compare").map(|v| v.as_str()) {
        None => default_mode,
        Some(Some("equal")) => Compare::Equal,
        Some(Some("lower")) => Compare::Lower,
        Some(_) => return Err(input_error("compare: expected \"equal\" or \"lower\"")),
    };
    outcomes.sort_by(|a, b| a.key.cmp(&b.key));
    let mismatches: Vec<Value> = outcomes
        .iter()
        .filter(|o| !o.ok(mode))
        .map(|o| json!({"case": o.key, "formula": show(&o.formula), "oracle": show(&o.oracle)}))
        .collect();
    let mut report = json!({
        "family": family,
        "compare": if mode == Compare::Equal { "equal" } else { "lower" },
        "summary": {
            "cases": outcomes.len(),
            "passed": outcomes.len() - mismatches.len(),
            "mismatches": mismatches.len(),
        },
        "details": mismatches,
    });
    if family == "thm18" {
        report["seed"] = json!(seed);
    }
    if report["summary"]["mismatches"] == json!(0) {
        Ok(report)
    } else {
        Err(CliError::Mismatch(report))
    }
}
