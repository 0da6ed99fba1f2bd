use std::path::Path;

use serde_json::{json, Value};
use smooshkit::bundle::Complex64;
use smooshkit::cech::{build_full_complex, dump_complex, DEFAULT_CHAMBER_CAP};
use smooshkit::checks::{run_checks, CheckConfig, Suite};
use smooshkit::corpus::{load_arrangement, load_corpus};
use smooshkit::rational::{format_rat, parse_rat_list, Rat};
use smooshkit::*;

use crate::{Cli, Command, Method};

pub struct Outcome {
    pub report: Value,
    pub summary: String,
    pub passed: bool,
}

pub fn command_name(c: Command) -> &'static str {
    match c {
        Command::Chambers => "chambers",
        Command::Poset => "poset",
        Command::Charpoly => "charpoly",
        Command::Fiber => "fiber",
        Command::Smoosh => "smoosh",
        Command::Retract => "retract",
        Command::Betti => "betti",
        Command::DumpComplex => "dump-complex",
        Command::Check => "check",
    }
}

fn chamber_cap() -> Result<usize> {
    match std::env::var("SMOOSHKIT_CHAMBER_CAP") {
        Ok(v) => v.trim().parse().map_err(|_| {
            Error::MalformedInput(format!("SMOOSHKIT_CHAMBER_CAP={v:?} is not a count"))
        }),
        Err(_) => Ok(DEFAULT_CHAMBER_CAP),
    }
}

/// Accepts the typographic minus sign as well as '-'.
fn normalize(s: &str) -> String {
    s.replace('\u{2212}', "-")
}

fn rats(v: &[Rat]) -> Vec<String> {
    v.iter().map(format_rat).collect()
}

fn required<'a>(opt: &'a Option<String>, flag: &str) -> Result<&'a str> {
    opt.as_deref()
        .ok_or_else(|| Error::MalformedInput(format!("--{flag} is required")))
}

fn digest(a: &Arrangement, chambers: usize) -> Value {
    json!({ "d": a.dim(), "n": a.len(), "chambers": chambers })
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    if cli.command == Command::Check {
        return check(cli);
    }
    let a = load_arrangement(&cli.input)?;
    let name = command_name(cli.command);
    let wrap = |model: &ZModel, result: Value, extra: Value| {
        let mut report = json!({
            "command": name,
            "arrangement": digest(model.arrangement(), model.chambers().len()),
            "result": result,
        });
        if !extra.is_null() {
            report["config"] = extra;
        }
        report
    };
    let model = ZModel::new(a);
    let out = match cli.command {
        Command::Chambers => {
            let list: Vec<Value> = model
                .chambers()
                .iter()
                .map(|c| json!({ "signs": c.signs.to_string(), "witness": rats(&c.witness) }))
                .collect();
            let summary = format!("{} chambers", list.len());
            Outcome {
                report: wrap(&model, json!(list), Value::Null),
                summary,
                passed: true,
            }
        }
        Command::Poset => {
            let flats = intersection_poset(model.arrangement());
            let list: Vec<Value> = flats
                .iter()
                .map(|f| {
                    json!({
                        "hyperplanes": f.hyperplanes,
                        "dim": f.dim,
                        "point": rats(&f.point),
                        "direction": f.direction.iter().map(|v| rats(v)).collect::<Vec<_>>(),
                        "moebius": f.moebius,
                    })
                })
                .collect();
            let summary = format!("{} flats", list.len());
            Outcome {
                report: wrap(&model, json!(list), Value::Null),
                summary,
                passed: true,
            }
        }
        Command::Charpoly => {
            let p = characteristic_and_poincare(model.arrangement())?;
            let agrees = p.chamber_check == model.chambers().len() as i64;
            let result = json!({
                "chi": p.chi.coeffs(),
                "chi_text": p.chi.to_string(),
                "poincare": p.poincare.coeffs(),
                "chamber_count_from_chi": p.chamber_check,
                "agrees_with_enumeration": agrees,
            });
            let summary = format!("chi(t) = {}", p.chi);
            Outcome {
                report: wrap(&model, result, Value::Null),
                summary,
                passed: agrees,
            }
        }
        Command::Fiber => {
            let q = parse_rat_list(&normalize(required(&cli.point, "point")?))?;
            let fiber = model.fiber(&q)?;
            let list: Vec<Value> = fiber
                .iter()
                .map(|z| Ok(json!({ "point": z, "d_image": model.embed_d(z)? })))
                .collect::<Result<_>>()?;
            let summary = format!("{} points over the base", list.len());
            Outcome {
                report: wrap(&model, json!(list), Value::Null),
                summary,
                passed: true,
            }
        }
        Command::Smoosh => {
            let v = parse_mpoint(required(&cli.re, "re")?, required(&cli.im, "im")?)?;
            let bundle = Bundle::new(model.clone());
            let z = bundle.smoosh(&v)?;
            let summary = format!("chart {}", z.chart);
            let result = json!({ "input": v, "point": z });
            Outcome {
                report: wrap(&model, result, Value::Null),
                summary,
                passed: true,
            }
        }
        Command::Retract => {
            let z = parse_z(required(&cli.z, "z")?)?;
            let bundle = Bundle::new(model.clone());
            let r = bundle.kempf_ness_retract(&z)?;
            let summary = format!(
                "converged in {} steps, grad norm {:.2e}",
                r.diagnostics.iterations, r.diagnostics.grad_norm
            );
            let result =
                json!({ "lambda_star": r.lambda_star, "m": r.m, "diagnostics": r.diagnostics });
            Outcome {
                report: wrap(&model, result, Value::Null),
                summary,
                passed: true,
            }
        }
        Command::Betti => betti(cli, &model, &wrap)?,
        Command::DumpComplex => {
            let cap = chamber_cap()?;
            let (cx, qmax) = if cli.full {
                (build_full_complex(&model)?, model.chambers().len())
            } else {
                let q = cli.qmax.unwrap_or(model.arrangement().dim() + 1);
                (
                    build_cech_complex(&model, q, CechOptions { chamber_cap: cap })?,
                    q,
                )
            };
            let summary = format!("dims {:?}", cx.dims());
            let config = json!({ "qmax": qmax, "full": cli.full, "chamber_cap": cap });
            Outcome {
                report: wrap(&model, dump_complex(&cx), config),
                summary,
                passed: true,
            }
        }
        Command::Check => unreachable!("handled above"),
    };
    Ok(out)
}

fn betti(
    cli: &Cli,
    model: &ZModel,
    wrap: &dyn Fn(&ZModel, Value, Value) -> Value,
) -> Result<Outcome> {
    let cap = chamber_cap()?;
    let d = model.arrangement().dim();
    let qmax = cli.qmax.unwrap_or(d + 1);
    let opts = CechOptions { chamber_cap: cap };
    let config = json!({ "qmax": qmax, "full": cli.full, "chamber_cap": cap });
    match cli.method {
        Some(Method::Os) => {
            let p = characteristic_and_poincare(model.arrangement())?;
            let os: Vec<i64> = p.poincare.coeffs().to_vec();
            let summary = format!("os {os:?}");
            Ok(Outcome {
                report: wrap(model, json!({ "os": os }), config),
                summary,
                passed: true,
            })
        }
        Some(Method::Cech) => {
            let cx = if cli.full {
                build_full_complex(model)?
            } else {
                build_cech_complex(model, qmax, opts)?
            };
            let cech = cx.betti();
            let summary = format!("cech {cech:?}");
            Ok(Outcome {
                report: wrap(model, json!({ "cech": cech }), config),
                summary,
                passed: true,
            })
        }
        None => {
            let table = if cli.full {
                let cx = build_full_complex(model)?;
                let mut cech = cx.betti();
                cech.truncate(d + 1);
                let os: Vec<usize> = characteristic_and_poincare(model.arrangement())?
                    .poincare
                    .coeffs()
                    .iter()
                    .map(|&c| c as usize)
                    .collect();
                let mut padded = os.clone();
                padded.resize(cech.len(), 0);
                BettiTable {
                    matched: padded == cech,
                    cech,
                    os,
                }
            } else {
                betti_compare(model, qmax, opts)?
            };
            let summary = format!(
                "cech {:?} os {:?} match={}",
                table.cech, table.os, table.matched
            );
            let passed = table.matched;
            Ok(Outcome {
                report: wrap(model, json!(table), config),
                summary,
                passed,
            })
        }
    }
}

/// Exact when both parts parse as rationals, floating when both parse as
/// decimals, an error otherwise.
fn parse_mpoint(re: &str, im: &str) -> Result<MPoint> {
    let (re, im) = (normalize(re), normalize(im));
    if let (Ok(r), Ok(i)) = (parse_rat_list(&re), parse_rat_list(&im)) {
        return Ok(MPoint::from_exact(r, i));
    }
    let floats = |s: &str| -> Result<Vec<f64>> {
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
        inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                if t.contains('/') {
                    return Err(Error::MalformedInput(format!(
                        "{t:?}: exact and decimal literals cannot be mixed in one point"
                    )));
                }
                t.parse::<f64>()
                    .map_err(|_| Error::MalformedInput(format!("not a number: {t:?}")))
            })
            .collect()
    };
    Ok(MPoint::from_f64(floats(&re)?, floats(&im)?))
}

fn parse_z(s: &str) -> Result<CxVector> {
    let v: Value = serde_json::from_str(&normalize(s))
        .map_err(|e| Error::MalformedInput(format!("--z is not JSON: {e}")))?;
    let pairs = v
        .as_array()
        .ok_or_else(|| Error::MalformedInput("--z must be a JSON array".into()))?;
    let mut z = Vec::with_capacity(pairs.len());
    for p in pairs {
        let pair = p.as_array().filter(|p| p.len() == 2);
        let nums = pair.and_then(|p| Some((p[0].as_f64()?, p[1].as_f64()?)));
        let (re, im) =
            nums.ok_or_else(|| Error::MalformedInput(format!("expected [re, im], got {p}")))?;
        z.push(Complex64::new(re, im));
    }
    CxVector::new(z)
}

fn check(cli: &Cli) -> Result<Outcome> {
    let corpus = load_corpus(Path::new(&cli.input))?;
    let suite: Suite = cli.suite.parse()?;
    if cli.trials == 0 {
        return Err(Error::MalformedInput("--trials must be at least 1".into()));
    }
    let cfg = CheckConfig {
        suite,
        trials: cli.trials,
        seed: cli.seed,
        chamber_cap: chamber_cap()?,
    };
    let outcomes = run_checks(&corpus, &cfg);
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    let arrangements: Vec<Value> = corpus
        .iter()
        .map(|(name, a)| json!({ "name": name, "d": a.dim(), "n": a.len() }))
        .collect();
    let report = json!({
        "command": "check",
        "config": { "suite": suite, "trials": cli.trials, "seed": cli.seed, "chamber_cap": cfg.chamber_cap },
        "arrangements": arrangements,
        "checks": outcomes,
        "summary": { "total": outcomes.len(), "failed": failed },
    });
    let summary = format!("{} checks, {failed} failed", outcomes.len());
    Ok(Outcome {
        report,
        summary,
        passed: failed == 0,
    })
}
