use serde_json::{json, Value};

use germ_lct::algebra::{parse_poly_capped, parse_rational, GermDivisor, Rational, WeightVector};
use germ_lct::blowup::{lct_via_weight, weighted_blowup};
use germ_lct::formulas::{
    admissible_i, cor38_bound, example39_family, prop33_lct, prop35_lct, thm18_bound, thm_a2_bound,
    varchenko_upper_bound, Admissible, CyclicQuotient,
};
use germ_lct::lctpoly::{thm18_certify, LctPolytopeInstance};
use germ_lct::newton::{lct_newton_bounds, newton_data, newton_data_divisor};
use germ_lct::resolve::{
    first_puiseux_pair, intersection_multiplicity, lct_exact, lct_relative_fiber, mld_germ,
    mld_relative_fiber, PuiseuxPair,
};
use germ_lct::{QPoly, Witness};

use crate::{fixtures, input_error, sweep, Cli, CliError, Command, FormulaCommand};

pub type CmdResult = Result<Value, CliError>;

/// Parsing context shared by the handlers.
pub struct Ctx<'a> {
    pub cap: u32,
    pub json_in: Option<&'a str>,
}

impl Ctx<'_> {
    pub fn poly(&self, text: &str) -> Result<QPoly, CliError> {
        Ok(parse_poly_capped(text, self.cap)?)
    }

    /// A divisor JSON from the flag, or else from `--json-in`.
    pub fn divisor(&self, flag: &Option<String>, name: &str) -> Result<GermDivisor, CliError> {
        let text = match (flag, self.json_in) {
            (Some(t), _) => t.as_str(),
            (None, Some(t)) => t,
            (None, None) => return Err(input_error(format!("--{name} or --json-in is required"))),
        };
        Ok(GermDivisor::from_json(text, self.cap)?)
    }
}

pub fn rational(text: &str, name: &str) -> Result<Rational, CliError> {
    parse_rational(text).ok_or_else(|| input_error(format!("--{name}: {text:?} is not a rational")))
}

fn weight(text: &str) -> Result<WeightVector, CliError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let [a1, a2] = parts.as_slice() else {
        return Err(input_error(format!(
            "--weight: expected a1,a2, got {text:?}"
        )));
    };
    let int = |s: &str| {
        s.parse::<u32>()
            .map_err(|_| input_error(format!("--weight: {s:?} is not an integer")))
    };
    Ok(WeightVector::new(int(a1)?, int(a2)?)?)
}

pub fn pair_json(p: PuiseuxPair) -> Value {
    json!({
        "m": p.m,
        "n": p.n.map_or(json!("inf"), |n| json!(n)),
    })
}

fn pair(m: u32, n: Option<u32>) -> PuiseuxPair {
    PuiseuxPair { m, n }
}

pub fn run(cli: &Cli, json_in: Option<&str>) -> CmdResult {
    let g = &cli.global;
    let ctx = Ctx {
        cap: g.degree_cap,
        json_in,
    };
    match &cli.command {
        Command::Newton { poly, divisor } => match (poly, divisor) {
            (Some(p), None) => {
                let f = ctx.poly(p)?;
                let mut v = newton_data(&f)?.to_json();
                v["kind"] = json!(lct_newton_bounds(&f)?.kind.as_str());
                Ok(v)
            }
            (None, _) => {
                let d = ctx.divisor(divisor, "divisor")?;
                let (data, k) = newton_data_divisor(&d)?;
                let mut v = data.to_json();
                v["scale"] = json!(k);
                Ok(v)
            }
            (Some(_), Some(_)) => Err(input_error("give --poly or --divisor, not both")),
        },
        Command::Wblow { divisor, weight: w } => {
            let d = ctx.divisor(divisor, "divisor")?;
            let w = weight(w)?;
            let mut v = weighted_blowup(&d, w)?.to_json(&d);
            let cand = lct_via_weight(&d, w)?;
            v["lct"] = json!(cand.value.to_string());
            v["kind"] = json!(cand.kind.as_str());
            Ok(v)
        }
        Command::Lct { boundary, target } => {
            let b = ctx.divisor(boundary, "boundary")?;
            let c = if target.trim_start().starts_with('{') {
                GermDivisor::from_json(target, ctx.cap)?
            } else {
                GermDivisor::single(Rational::from_integer(1.into()), ctx.poly(target)?)?
            };
            Ok(lct_exact(&b, &c)?.to_json())
        }
        Command::Mld { boundary } => Ok(mld_germ(&ctx.divisor(boundary, "boundary")?)?.to_json()),
        Command::FiberLct { boundary } => {
            let r = lct_relative_fiber(&ctx.divisor(boundary, "boundary")?)?;
            let mut v = r.lct.to_json();
            v["generic_fiber_effective"] = json!(r.generic_fiber_effective);
            Ok(v)
        }
        Command::FiberMld { boundary } => {
            Ok(mld_relative_fiber(&ctx.divisor(boundary, "boundary")?)?.to_json())
        }
        Command::Imult { f, g } => {
            let n = intersection_multiplicity(&ctx.poly(f)?, &ctx.poly(g)?)?;
            Ok(json!({"value": n.to_string(), "kind": "exact"}))
        }
        Command::Puiseux { f, curve } => {
            let b = ctx.poly(f)?;
            let p = first_puiseux_pair(&b)?;
            let mut v = pair_json(p);
            v["multiplicity"] = json!(p.m);
            if let Some(c) = curve {
                let c = ctx.poly(c)?;
                if c.multiplicity()? != 1 {
                    return Err(input_error("--curve must be smooth at the origin"));
                }
                v["I"] = json!(intersection_multiplicity(&b, &c)?.to_string());
            }
            Ok(v)
        }
        Command::Formula(f) => formula(f, &ctx, g.weight_bound),
        Command::Certify { components } => {
            let inst = LctPolytopeInstance::parse(components)?;
            Ok(thm18_certify(&inst)?.to_json())
        }
        Command::Sweep { config, preset } => {
            let text = match (config, preset, json_in) {
                (Some(p), _, _) => std::fs::read_to_string(p)
                    .map_err(|e| input_error(format!("{}: {e}", p.display())))?,
                (None, Some(name), _) => sweep::preset(name)?.to_string(),
                (None, None, Some(t)) => t.to_string(),
                (None, None, None) => {
                    return Err(input_error("sweep needs --config, --preset or --json-in"))
                }
            };
            sweep::run(&text, g.seed)
        }
        Command::Examples { id } => fixtures::run(id.as_deref()),
    }
}

fn exact(value: Rational, hypothesis: &str) -> Value {
    json!({"value": value.to_string(), "kind": "exact", "hypothesis": hypothesis})
}

fn formula(cmd: &FormulaCommand, ctx: &Ctx, weight_bound: u32) -> CmdResult {
    match cmd {
        FormulaCommand::Prop33 { n, k, m1, m2 } => {
            Ok(exact(prop33_lct(*n, *k, *m1, *m2)?, "positive integers"))
        }
        FormulaCommand::Prop35 { m, n, i, s, t } => {
            let v = prop35_lct(pair(*m, *n), *i, &rational(s, "s")?, &rational(t, "t")?)?;
            Ok(exact(v, "I admissible for the first pair"))
        }
        FormulaCommand::Admissible { m, n } => Ok(match admissible_i(pair(*m, *n))? {
            Admissible::All => json!({"value": "all"}),
            Admissible::Set(v) => {
                json!({"value": v.iter().map(u32::to_string).collect::<Vec<_>>()})
            }
        }),
        FormulaCommand::Bound {
            m,
            i,
            lambda,
            n,
            weak,
        } => {
            let (mq, iq) = (rational(m, "m")?, rational(i, "I")?);
            match lambda {
                Some(l) => {
                    let int = |r: &Rational, name: &str| {
                        if r.is_integer() && *r > Rational::from_integer(0.into()) {
                            Ok(r.to_integer().try_into().unwrap_or(u32::MAX))
                        } else {
                            Err(input_error(format!(
                                "--{name} must be a positive integer with --lambda"
                            )))
                        }
                    };
                    let (value, cond) =
                        cor38_bound(int(&mq, "m")?, *n, int(&iq, "I")?, &rational(l, "lambda")?)?;
                    let mut v = exact(value, &format!("{cond:?}").to_lowercase());
                    v["kind"] = json!("lower");
                    Ok(v)
                }
                None => {
                    let value = if *weak {
                        thm_a2_bound(&mq, &iq)?
                    } else {
                        thm18_bound(&mq, &iq)?
                    };
                    let mut v = exact(
                        value,
                        if *weak {
                            "m <= 1, m/I >= m - 1/2"
                        } else {
                            "0 < m <= 1"
                        },
                    );
                    v["kind"] = json!("lower");
                    Ok(v)
                }
            }
        }
        FormulaCommand::Sharp { m, i, lambda } => Ok(exact(
            example39_family(*m, *i, &rational(lambda, "lambda")?)?,
            "coprime m < I, lambda m <= 1 <= lambda I",
        )),
        FormulaCommand::ToricMld { r, weights } => {
            let z = CyclicQuotient::new(*r, weights.clone())?;
            Ok(exact(
                germ_lct::formulas::cyclic_quotient_mld(&z),
                "no pseudo-reflections",
            ))
        }
        FormulaCommand::Varchenko { poly, changes } => {
            let f = ctx.poly(poly)?;
            let b = GermDivisor::single(Rational::from_integer(1.into()), f)?;
            let mut subs = Vec::new();
            for c in changes {
                let Some((x, y)) = c.split_once(',') else {
                    return Err(input_error(format!("--change: expected X,Y, got {c:?}")));
                };
                subs.push((ctx.poly(x)?, ctx.poly(y)?));
            }
            let r = varchenko_upper_bound(&b, weight_bound, &subs)?;
            let mut v = r.to_json();
            if let Some(Witness::Weight(w)) = r.witness {
                v["weight"] = json!([w.a1, w.a2]);
            }
            v["hypothesis"] = json!(format!("a1 + a2 <= {weight_bound}"));
            Ok(v)
        }
    }
}
