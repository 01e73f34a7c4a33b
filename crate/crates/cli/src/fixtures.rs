//! Worked examples with their published values.

use serde_json::{json, Value};

use germ_lct::algebra::{parse_poly, q, qi, GermDivisor, Rational};
use germ_lct::formulas::{
    admissible_i, cyclic_quotient_mld, example39_family, thm18_bound, Admissible, CyclicQuotient,
};
use germ_lct::resolve::{
    first_puiseux_pair, lct_exact, lct_relative_fiber, mld_relative_fiber, PuiseuxPair,
};
use germ_lct::Error;

use crate::commands::CmdResult;
use crate::{input_error, CliError};

struct Case {
    label: String,
    expected: String,
    computed: String,
}

fn case(
    label: impl Into<String>,
    expected: impl ToString,
    computed: Result<String, Error>,
) -> Case {
    Case {
        label: label.into(),
        expected: expected.to_string(),
        computed: computed.unwrap_or_else(|e| format!("error: {e}")),
    }
}

fn divisor(parts: &[(Rational, &str)]) -> Result<GermDivisor, Error> {
    GermDivisor::new(
        parts
            .iter()
            .map(|(b, f)| Ok((b.clone(), parse_poly(f)?)))
            .collect::<Result<_, Error>>()?,
    )
}

fn pair_string(f: &str) -> Result<String, Error> {
    Ok(first_puiseux_pair(&parse_poly(f)?)?.to_string())
}

fn admissible_string(m: u32, n: u32) -> Result<String, Error> {
    match admissible_i(PuiseuxPair { m, n: Some(n) })? {
        Admissible::Set(v) => Ok(format!("{v:?}")),
        Admissible::All => Ok("all".into()),
    }
}

const IDS: [&str; 8] = ["3.4", "3.6", "3.9", "3.12", "4.5", "4.6", "1.3", "4.8"];

fn cases(id: &str) -> Option<Vec<Case>> {
    let out = match id {
        "3.4" => vec![
            case("x^2 + y^3", "(2, 3)", pair_string("x^2 + y^3")),
            case("x + y^2", "(1, inf)", pair_string("x + y^2")),
        ],
        "3.6" => vec![
            case("(2, 5)", "[2, 4, 5]", admissible_string(2, 5)),
            case("(2, 3)", "[2, 3]", admissible_string(2, 3)),
            case("(3, 7)", "[3, 6, 7]", admissible_string(3, 7)),
        ],
        "3.9" => vec![
            case(
                "formula m=1 I=2 lambda=1",
                "1/2",
                example39_family(1, 2, &qi(1)).map(|v| v.to_string()),
            ),
            case(
                "resolution x + y^2 vs x",
                "1/2",
                divisor(&[(qi(1), "x + y^2")])
                    .and_then(|b| lct_exact(&b, &divisor(&[(qi(1), "x")])?))
                    .map(|r| r.value.to_string()),
            ),
        ],
        "3.12" => vec![case(
            "m=1 I=2",
            "1/2",
            thm18_bound(&qi(1), &qi(2)).map(|v| v.to_string()),
        )],
        "4.5" => {
            let mut v = Vec::new();
            for s in [qi(0), q(1, 5), q(1, 2)] {
                let b = divisor(&[(qi(1), "x - y^2"), (-s.clone(), "x")]);
                v.push(case(
                    format!("lct s={s}"),
                    q(1, 2) + &s,
                    b.clone()
                        .and_then(|b| lct_relative_fiber(&b))
                        .map(|r| r.lct.value.to_string()),
                ));
                v.push(case(
                    format!("mld s={s}"),
                    qi(1) + &s,
                    b.and_then(|b| mld_relative_fiber(&b))
                        .map(|r| r.value().map_or("not lc".into(), |v| v.to_string())),
                ));
            }
            v
        }
        "4.6" => vec![case(
            "lct",
            "1/3",
            divisor(&[(qi(1), "x^2 + y^3"), (qi(-1), "y")])
                .and_then(|b| lct_relative_fiber(&b))
                .map(|r| r.lct.value.to_string()),
        )],
        "1.3" => (1..=5u32)
            .map(|m| {
                let z = CyclicQuotient::new(4 * m, vec![1, 2 * m - 1]);
                case(
                    format!("m={m}"),
                    "1/2",
                    z.map(|z| cyclic_quotient_mld(&z).to_string()),
                )
            })
            .collect(),
        "4.8" => (1..=5u32)
            .map(|m| {
                let z = CyclicQuotient::new(2 * m + 1, vec![1, 1, m]);
                let expected = Rational::new((m + 2).into(), (2 * m + 1).into());
                case(
                    format!("m={m}"),
                    expected,
                    z.map(|z| cyclic_quotient_mld(&z).to_string()),
                )
            })
            .collect(),
        _ => return None,
    };
    Some(out)
}

fn report(id: &str, cases: &[Case]) -> Value {
    let pass = cases.iter().all(|c| c.expected == c.computed);
    if let [c] = cases {
        return json!({"id": id, "label": c.label, "expected": c.expected, "computed": c.computed, "pass": pass});
    }
    let list: Vec<Value> = cases
        .iter()
        .map(|c| json!({"label": c.label, "expected": c.expected, "computed": c.computed, "pass": c.expected == c.computed}))
        .collect();
    json!({"id": id, "cases": list, "pass": pass})
}

pub fn run(id: Option<&str>) -> CmdResult {
    let value = match id {
        Some(id) => {
            let cs = cases(id).ok_or_else(|| {
                input_error(format!("unknown fixture {id:?}; known: {}", IDS.join(", ")))
            })?;
            report(id, &cs)
        }
        None => {
            let all: Vec<Value> = IDS
                .iter()
                .map(|id| report(id, &cases(id).expect("known id")))
                .collect();
            let pass = all.iter().all(|v| v["pass"] == json!(true));
            json!({"fixtures": all, "pass": pass})
        }
    };
    if value["pass"] == json!(true) {
        Ok(value)
    } else {
        Err(CliError::Mismatch(value))
    }
}
