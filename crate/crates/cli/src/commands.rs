use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use padic_lift::dynamics::{
    build_tower_with_limit, check_tower_compatibility, dcrt_assemble, dcrt_decompose, factorize,
    hensel_lift_cycle, locally_constant_lift_check, rigidity_check, route2_cauchy_check,
    shifted_sequence, HenselLiftResult, Rigidity, Tower, TowerCheck,
};
use padic_lift::graph::FunctionalGraph;
use padic_lift::interpreter::{
    ball_system_from_graph, check_inclusion_by_commutation, check_inclusion_by_commutation_ok,
    check_linear_dominance, classify_ball, classify_ball_enumerated, cycle_multiplier,
    good_reduction_check, interpolate_at_centers, multiplier_report,
    robust_exactness_certificate, synthesize_matching, synthesize_piecewise_affine, BallSystem,
    Commutation, GoodReduction, PiecewiseAffine, StabilityClass,
};
use padic_lift::unramified::{OkElement, UnramifiedContext};
use padic_lift::{Ball, Error, IntPolynomial, PadicValued, Scalar};
use serde_json::{json, Value};

use crate::args::{Cli, Command, DcrtMode, GraphInput, Params, Requirement};
use crate::dot::{graph_to_dot, tower_index};
use crate::error::CliError;
use crate::input::GraphSpec;
use crate::parse::{coefficient_strings, parse_polynomial};
use crate::report;

/// Result of one job.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: Value,
    /// Certified or verified.
    pub success: bool,
    /// `(file name, contents)` pairs.
    pub dots: Vec<(String, String)>,
    pub summary: Vec<String>,
}

struct Draft {
    command: &'static str,
    job: Value,
    result: Value,
    warnings: Vec<String>,
    success: bool,
    dots: Vec<(String, String)>,
    summary: Vec<String>,
}

impl Draft {
    fn new(command: &'static str, job: Value) -> Self {
        Draft {
            command,
            job,
            result: Value::Null,
            warnings: Vec::new(),
            success: true,
            dots: Vec::new(),
            summary: Vec::new(),
        }
    }

    fn finish(self) -> Outcome {
        let status = if self.success { "ok" } else { "failed" };
        let mut summary = vec![format!("{}: {status}", self.command)];
        summary.extend(self.summary);
        summary.extend(self.warnings.iter().map(|w| format!("warning: {w}")));
        Outcome {
            report: json!({
                "command": self.command,
                "job": self.job,
                "status": status,
                "result": self.result,
                "warnings": self.warnings,
            }),
            success: self.success,
            dots: self.dots,
            summary,
        }
    }
}

fn load_spec(input: &GraphInput) -> Result<GraphSpec, CliError> {
    match (&input.graph, &input.table) {
        (Some(path), _) => GraphSpec::from_file(path),
        (None, Some(table)) => GraphSpec::from_table(table),
        (None, None) => Err(CliError::Input("give --graph FILE or --table".into())),
    }
}

struct Resolved {
    p: u32,
    f: u32,
    depth: u32,
    precision: u32,
}

/// Flags override the spec; the depth defaults to the least one that fits
/// the states of the graph.
fn resolve(params: &Params, spec: &GraphSpec, states: usize) -> Result<Resolved, CliError> {
    let p = params
        .p
        .or(spec.p)
        .ok_or_else(|| CliError::Input("missing --p".into()))?;
    padic_lift::padic::check_prime(p)?;
    let f = params.f.or(spec.f).unwrap_or(1);
    if f == 0 {
        return Err(CliError::Input("--f must be positive".into()));
    }
    let q = (p as u128).pow(f);
    let depth = match params.depth.or(spec.depth) {
        Some(d) => d,
        None => {
            let mut d = 1u32;
            while q.checked_pow(d).is_some_and(|c| c < states as u128) {
                d += 1;
            }
            d
        }
    };
    let precision = params.precision.or(spec.precision).unwrap_or(4).max(depth);
    Ok(Resolved {
        p,
        f,
        depth,
        precision,
    })
}

fn graph_dot(name: &str, g: &FunctionalGraph) -> String {
    graph_to_dot(name, g, None)
}

fn system_json(bs: &BallSystem) -> Value {
    Value::Array(
        (0..bs.len())
            .map(|i| {
                json!({
                    "index": i,
                    "ball": report::ball(&bs.balls()[i]),
                    "target_index": bs.tau()[i],
                })
            })
            .collect(),
    )
}

fn psi_json(psi: &PiecewiseAffine) -> Value {
    Value::Array(
        psi.pieces()
            .iter()
            .zip(psi.slope_valuations())
            .map(|(pc, v)| {
                json!({
                    "source_center": pc.source_center.to_string(),
                    "target_center": pc.target_center.to_string(),
                    "slope": report::rational(&pc.slope),
                    "slope_valuation": report::valuation(v),
                })
            })
            .collect(),
    )
}

fn commutation_json(c: &Commutation) -> Value {
    json!({
        "holds": c.holds,
        "exact_on_states": c.exact_on_states(),
        "surplus": c.surplus,
        "surplus_into_states": c.surplus_into_states,
        "witness": c.witness.as_ref().map(|w| json!({
            "vertex": w.vertex,
            "expected": w.expected,
            "got": w.got.to_string(),
        })),
    })
}

fn check_json(c: &TowerCheck) -> Value {
    json!({
        "holds": c.holds,
        "witness": c.witness.map(|w| json!({"level": w.level, "residue": w.residue})),
    })
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let limit = cli.size_limit;
    match &cli.command {
        Command::Encode { input, params } => encode(input, params, limit),
        Command::Certify {
            input,
            params,
            poly,
            require,
        } => certify(input, params, poly, *require, limit),
        Command::Synthesize {
            input,
            params,
            poly,
        } => synthesize(input, params, poly.as_deref(), limit),
        Command::Classify {
            poly,
            p,
            center,
            radius,
            target_center,
            target_radius,
            depth,
        } => classify(poly, *p, center, *radius, target_center, *target_radius, *depth),
        Command::Dcrt { input, mode } => dcrt(input, *mode, limit),
        Command::Tower {
            poly,
            p,
            max_n,
            seed,
        } => tower(poly, *p, *max_n, *seed, limit),
        Command::Hensel {
            poly,
            p,
            xbar,
            period,
            precision,
        } => hensel(poly, *p, *xbar, *period, *precision),
        Command::ProfiniteCheck {
            poly,
            p,
            max_n,
            c_exp,
            sequence,
        } => profinite(poly, *p, *max_n, *c_exp, sequence.as_deref(), limit),
        Command::Rigidity { c1, c2, p, depth } => rigidity(c1, c2, *p, *depth),
    }
}

fn encode(input: &GraphInput, params: &Params, limit: u64) -> Result<Outcome, CliError> {
    let spec = load_spec(input)?;
    let g = spec.graph(limit)?;
    let r = resolve(params, &spec, g.size())?;
    let bs = ball_system_from_graph(&g, r.p, r.depth)?;
    let mut d = Draft::new("encode", json!({"graph": report::graph(&g), "p": r.p, "depth": r.depth}));
    d.result = json!({"states": g.size(), "balls": system_json(&bs)});
    d.summary.push(format!(
        "{} cylinders of radius {}^-{}",
        bs.len(),
        r.p,
        r.depth
    ));
    let labels: Vec<String> = bs.balls().iter().map(|b| b.to_string()).collect();
    d.dots.push(("encode.dot".into(), graph_to_dot("encode", &g, Some(&labels))));
    Ok(d.finish())
}

fn certify(
    input: &GraphInput,
    params: &Params,
    poly: &str,
    require: Requirement,
    limit: u64,
) -> Result<Outcome, CliError> {
    let spec = load_spec(input)?;
    let g = spec.graph(limit)?;
    let f = parse_polynomial(poly)?;
    let r = resolve(params, &spec, g.size())?;
    let job = json!({
        "graph": report::graph(&g),
        "polynomial": coefficient_strings(&f),
        "p": r.p,
        "f": r.f,
        "depth": r.depth,
        "precision": r.precision,
        "require": report::snake(require),
    });
    let mut d = Draft::new("certify", job);
    d.dots.push(("certify.dot".into(), graph_dot("certify", &g)));
    if r.f == 1 {
        certify_over_zp(&mut d, &g, &f, &r, require)?;
    } else {
        certify_over_extension(&mut d, &g, &f, &r, require)?;
    }
    Ok(d.finish())
}

fn certify_over_zp(
    d: &mut Draft,
    g: &FunctionalGraph,
    f: &IntPolynomial,
    r: &Resolved,
    require: Requirement,
) -> Result<(), CliError> {
    let bs = ball_system_from_graph(g, r.p, r.depth)?;
    let psi = synthesize_matching(&bs, f);
    let cert = robust_exactness_certificate(f, &psi, &bs)?;
    let comm = check_inclusion_by_commutation(f, g, r.p, r.depth)?;
    let multipliers = multiplier_report(f, &bs);
    let balls: Vec<Value> = cert
        .balls
        .iter()
        .map(|b| {
            json!({
                "index": b.index,
                "source": report::ball(&b.source),
                "target": report::ball(&b.target),
                "epsilon": report::norm(b.epsilon),
                "dominance": report::dominance(&b.dominance),
                "image": b.image.as_ref().map(report::ball),
                "interpretation": b.interpretation.as_ref().map(report::interpretation),
                "meets": b.meets,
                "inside": b.inside,
                "exact": b.exact,
                "verdict_source": report::snake(b.source_of_verdict),
            })
        })
        .collect();
    for b in &cert.balls {
        if !b.dominance.passes() {
            d.warnings.push(format!(
                "ball {}: no dominance certificate ({}), inclusion decided by residues",
                b.index,
                report::dominance(&b.dominance)["verdict"].as_str().unwrap_or("")
            ));
        }
    }
    let mults: Vec<Value> = multipliers
        .iter()
        .map(|m| {
            json!({
                "index": m.index,
                "valuation": report::valuation(m.valuation),
                "class": report::snake(m.class),
                "matches_radius_ratio": m.matches_radius_ratio,
            })
        })
        .collect();
    d.success = match require {
        Requirement::Exact => cert.exact,
        Requirement::States => comm.exact_on_states(),
        Requirement::Inclusion => comm.holds,
    };
    let diagnosis = (!d.success).then(|| {
        if let Some(w) = &comm.witness {
            format!(
                "state {} maps to {} mod {}^{}, graph expects {}",
                w.vertex, w.got, r.p, r.depth, w.expected
            )
        } else if let Some(i) = cert.first_non_exact() {
            format!("image of ball {i} is not exactly its target")
        } else {
            format!("{} surplus cylinders outside the states", comm.surplus)
        }
    });
    d.summary.push(format!(
        "exact: {}, inclusion: {}, interpreter: {}",
        cert.exact, cert.with_inclusion, cert.interpreter
    ));
    d.summary.extend(diagnosis.clone());
    d.result = json!({
        "level": "balls",
        "exact": cert.exact,
        "with_inclusion": cert.with_inclusion,
        "interpreter": cert.interpreter,
        "robust": {
            "min_epsilon": report::norm(cert.robust.min_epsilon),
            "max_target_exp": cert.robust.max_target_exp,
            "passes": cert.robust.passes,
            "limiting_ball": cert.robust.limiting_ball,
        },
        "psi": psi_json(&psi),
        "balls": balls,
        "commutation": commutation_json(&comm),
        "multipliers": mults,
        "diagnosis": diagnosis,
    });
    Ok(())
}

fn certify_over_extension(
    d: &mut Draft,
    g: &FunctionalGraph,
    f: &IntPolynomial,
    r: &Resolved,
    require: Requirement,
) -> Result<(), CliError> {
    let ctx = UnramifiedContext::standard(r.p, r.f, r.precision)?;
    let f_ok = f.map(<OkElement as Scalar>::from_integer);
    let comm = check_inclusion_by_commutation_ok(&f_ok, g, &ctx, r.depth)?;
    let good = if r.depth == 1 {
        let f_rat = f.map(|c| BigRational::from_integer(c.clone()));
        Some(match good_reduction_check(&f_rat, g, &ctx)? {
            GoodReduction::StrictGoodMatches => json!({"strict": true, "matches": true}),
            GoodReduction::StrictGoodMismatch {
                vertex,
                expected,
                got,
            } => json!({"strict": true, "matches": false, "vertex": vertex, "expected": expected, "got": got}),
            GoodReduction::NotStrict(reason) => {
                json!({"strict": false, "reason": format!("{reason:?}")})
            }
        })
    } else {
        None
    };
    let cycles: Vec<Value> = g
        .cycles()
        .iter()
        .map(|c| cycle_entry(&f_ok, &ctx, c, r))
        .collect::<Result<_, CliError>>()?;
    d.warnings.push(
        "over an extension, exactness is decided on state cylinders by commutation".into(),
    );
    d.success = match require {
        Requirement::Exact | Requirement::States => comm.exact_on_states(),
        Requirement::Inclusion => comm.holds,
    };
    let diagnosis = comm.witness.as_ref().map(|w| {
        format!(
            "state {} maps to {}, graph expects {}",
            w.vertex, w.got, w.expected
        )
    });
    d.summary.push(format!(
        "commutes on all {} states of O_K/p^{}: {}",
        g.size(),
        r.depth,
        comm.holds
    ));
    d.summary.extend(diagnosis.clone());
    d.result = json!({
        "level": "states",
        "exact": comm.exact_on_states(),
        "commutation": commutation_json(&comm),
        "good_reduction": good,
        "cycles": cycles,
        "diagnosis": diagnosis,
    });
    Ok(())
}

/// Multiplier of a cycle of states. At depth one the Teichmüller lifts are
/// used whenever they form a cycle of the polynomial.
fn cycle_entry(
    f: &padic_lift::Polynomial<OkElement>,
    ctx: &Arc<UnramifiedContext>,
    cycle: &[usize],
    r: &Resolved,
) -> Result<Value, CliError> {
    let reps: Vec<OkElement> = cycle
        .iter()
        .map(|&v| OkElement::from_index(ctx, v as u64, r.depth))
        .collect();
    let residue = cycle_multiplier(f, &reps).padic_valuation(r.p);
    let mut entry = json!({
        "cycle": cycle,
        "residue_multiplier_valuation": report::valuation(residue),
    });
    if r.depth == 1 {
        let lifts: Vec<OkElement> = reps
            .iter()
            .map(|x| x.teichmuller(r.precision))
            .collect::<Result<_, Error>>()?;
        let closes = (0..lifts.len()).all(|i| f.eval(&lifts[i]) == lifts[(i + 1) % lifts.len()]);
        if closes {
            let v = cycle_multiplier(f, &lifts).padic_valuation(r.p);
            entry["teichmuller_multiplier_valuation"] = report::valuation(v);
            entry["class"] = Value::String(report::snake(StabilityClass::from_valuation(v)));
        }
    }
    Ok(entry)
}

fn synthesize(
    input: &GraphInput,
    params: &Params,
    poly: Option<&str>,
    limit: u64,
) -> Result<Outcome, CliError> {
    let spec = load_spec(input)?;
    let g = spec.graph(limit)?;
    let r = resolve(params, &spec, g.size())?;
    let bs = ball_system_from_graph(&g, r.p, r.depth)?;
    let matching = poly.map(parse_polynomial).transpose()?;
    let psi = match &matching {
        Some(f) => synthesize_matching(&bs, f),
        None => synthesize_piecewise_affine(&bs),
    };
    let interp = interpolate_at_centers(&bs)?;
    let mut d = Draft::new(
        "synthesize",
        json!({"graph": report::graph(&g), "p": r.p, "depth": r.depth,
               "polynomial": matching.as_ref().map(coefficient_strings)}),
    );
    let signature: Vec<Value> = psi
        .signature(&bs)
        .into_iter()
        .map(|(i, v)| json!({"index": i, "valuation": report::valuation(v)}))
        .collect();
    let interpolant_cert = match interp.integer_polynomial() {
        Some(h) => {
            let cert = robust_exactness_certificate(&h, &psi, &bs)?;
            Some(json!({"exact": cert.exact, "with_inclusion": cert.with_inclusion}))
        }
        None => None,
    };
    if interp.non_integral {
        d.warnings.push(
            "interpolating polynomial has non-integral coefficients; matching centers certifies nothing about balls"
                .into(),
        );
    }
    d.summary.push(format!("interpolant: {}", interp.polynomial));
    d.result = json!({
        "balls": system_json(&bs),
        "psi": psi_json(&psi),
        "signature": signature,
        "interpolation": {
            "coefficients": interp.polynomial.coeffs().iter().map(report::rational).collect::<Vec<_>>(),
            "valuations": interp.coefficient_valuations.iter().map(|v| report::valuation(*v)).collect::<Vec<_>>(),
            "non_integral": interp.non_integral,
            "certificate": interpolant_cert,
        },
    });
    Ok(d.finish())
}

fn classify(
    poly: &str,
    p: u32,
    center: &BigInt,
    radius: u32,
    target_center: &BigInt,
    target_radius: u32,
    depth: Option<u32>,
) -> Result<Outcome, CliError> {
    let f = parse_polynomial(poly)?;
    let source = Ball::new(center.clone(), radius, p)?;
    let target = Ball::new(target_center.clone(), target_radius, p)?;
    let mut d = Draft::new(
        "classify",
        json!({"polynomial": coefficient_strings(&f), "source": report::ball(&source),
               "target": report::ball(&target), "depth": depth}),
    );
    let dominance = check_linear_dominance(&f, &source);
    let result = match classify_ball(&f, &source, &target) {
        Ok(c) => {
            d.summary.push(format!("{:?} onto {}", c.interpretation.kind, c.image));
            json!({
                "dominance": report::dominance(&dominance),
                "source_of_verdict": "dominance",
                "image": report::ball(&c.image),
                "interpretation": report::interpretation(&c.interpretation),
                "meets": c.meets,
                "inside": c.inside,
                "equal": c.equal,
            })
        }
        Err(Error::DominanceRequired) => {
            let depth = depth.unwrap_or(target_radius.max(radius) + 3);
            let e = classify_ball_enumerated(&f, &source, &target, depth)?;
            d.warnings.push(format!(
                "no dominance certificate; classified from residues mod {p}^{}",
                e.depth
            ));
            d.summary
                .push(format!("{:?} (residues mod {p}^{})", e.interpretation.kind, e.depth));
            json!({
                "dominance": report::dominance(&dominance),
                "source_of_verdict": "enumerated_only",
                "depth": e.depth,
                "covering_exp": e.covering_exp,
                "image_is_ball": e.image_is_ball,
                "interpretation": report::interpretation(&e.interpretation),
                "meets": e.meets,
                "inside": e.inside,
            })
        }
        Err(e) => return Err(e.into()),
    };
    d.result = result;
    Ok(d.finish())
}

fn dcrt(input: &GraphInput, mode: DcrtMode, limit: u64) -> Result<Outcome, CliError> {
    let spec = load_spec(input)?;
    match mode {
        DcrtMode::Decompose => {
            let g = spec.graph(limit)?;
            let mut d = Draft::new(
                "dcrt",
                json!({"mode": "decompose", "graph": report::graph(&g)}),
            );
            let factorization = factorize(g.size() as u64);
            match dcrt_decompose(&g, &factorization) {
                Ok(dec) => {
                    let comps: Vec<Value> = dec
                        .components
                        .iter()
                        .zip(&dec.moduli)
                        .zip(&factorization)
                        .map(|((c, q), (p, k))| {
                            json!({"modulus": q, "prime": p, "exponent": k, "graph": report::graph(c)})
                        })
                        .collect();
                    for (c, q) in dec.components.iter().zip(&dec.moduli) {
                        let name = format!("component_mod_{q}");
                        d.dots.push((format!("{name}.dot"), graph_dot(&name, c)));
                    }
                    d.summary.push(format!("moduli {:?}, isomorphism verified", dec.moduli));
                    d.result = json!({"congruence_preserving": true, "theta_verified": true, "components": comps});
                }
                Err(Error::NotCongruencePreserving { d: div, x, y }) => {
                    d.success = false;
                    d.summary.push(format!(
                        "not congruence-preserving mod {div}: {x} = {y} but images differ"
                    ));
                    d.result = json!({
                        "congruence_preserving": false,
                        "witness": {"d": div, "x": x, "y": y,
                                    "fx": g.successor(x), "fy": g.successor(y)},
                    });
                }
                Err(e) => return Err(e.into()),
            }
            Ok(d.finish())
        }
        DcrtMode::Assemble => {
            let specs = spec
                .components
                .as_ref()
                .ok_or_else(|| CliError::Input("assemble needs a components list".into()))?;
            let comps: Vec<FunctionalGraph> = specs
                .iter()
                .map(|s| s.graph(limit))
                .collect::<Result<_, _>>()?;
            let mut d = Draft::new(
                "dcrt",
                json!({"mode": "assemble", "components": comps.iter().map(report::graph).collect::<Vec<_>>()}),
            );
            match dcrt_assemble(&comps) {
                Ok(g) => {
                    d.summary.push(format!("assembled map on Z/{}Z", g.size()));
                    d.dots.push(("assembled.dot".into(), graph_dot("assembled", &g)));
                    d.result = json!({"graph": report::graph(&g), "congruence_preserving": true});
                }
                Err(Error::NotCongruencePreserving { d: div, x, y }) => {
                    d.success = false;
                    d.summary.push(format!("a component is not congruence-preserving mod {div}"));
                    d.result = json!({"congruence_preserving": false, "witness": {"d": div, "x": x, "y": y}});
                }
                Err(e) => return Err(e.into()),
            }
            Ok(d.finish())
        }
    }
}

fn tower_dots(t: &Tower) -> Vec<(String, String)> {
    let mut files = Vec::new();
    let mut dots = Vec::new();
    for (i, g) in t.levels().iter().enumerate() {
        let name = format!("level_{}", i + 1);
        files.push(format!("{name}.dot"));
        dots.push((format!("{name}.dot"), graph_dot(&name, g)));
    }
    dots.push(("index.dot".into(), tower_index(t.p(), &files)));
    dots
}

fn tower(poly: &str, p: u32, max_n: u32, seed: u64, limit: u64) -> Result<Outcome, CliError> {
    let f = parse_polynomial(poly)?;
    let t = build_tower_with_limit(&f, p, max_n, limit)?;
    let compat = check_tower_compatibility(&t);
    let lc = locally_constant_lift_check(&t);
    let lengths: Vec<usize> = t
        .levels()
        .iter()
        .map(|g| g.eventual_cycle_length((seed % g.size() as u64) as usize))
        .collect();
    let parabolic = lengths.windows(2).any(|w| w[0] != w[1]);
    let mut d = Draft::new(
        "tower",
        json!({"polynomial": coefficient_strings(&f), "p": p, "max_n": max_n, "seed": seed}),
    );
    d.success = compat.holds && lc.holds;
    d.summary.push(format!("cycle lengths from {seed}: {lengths:?}"));
    if parabolic {
        d.warnings
            .push("cycle length grows with the level: the multiplier is 1 mod p".into());
    }
    d.result = json!({
        "levels": t.levels().iter().map(report::graph).collect::<Vec<_>>(),
        "compatibility": check_json(&compat),
        "locally_constant_lift": check_json(&lc),
        "growth": {"lengths": lengths, "parabolic": parabolic},
    });
    d.dots = tower_dots(&t);
    Ok(d.finish())
}

fn hensel(poly: &str, p: u32, xbar: u64, period: u64, precision: u32) -> Result<Outcome, CliError> {
    let f = parse_polynomial(poly)?;
    let res = hensel_lift_cycle(&f, p, xbar, period, precision)?;
    let mut d = Draft::new(
        "hensel",
        json!({"polynomial": coefficient_strings(&f), "p": p, "xbar": xbar,
               "period": period, "precision": precision}),
    );
    d.result = match &res {
        HenselLiftResult::Lifted {
            point,
            period,
            trace,
        } => {
            d.summary.push(format!("lifted to {} mod {p}^{precision}", point.value()));
            json!({
                "outcome": "lifted",
                "point": point.value().to_string(),
                "period": period,
                "trace": trace.iter().map(|t| json!({"precision": t.precision(), "value": t.value().to_string()})).collect::<Vec<_>>(),
            })
        }
        HenselLiftResult::Degenerate { multiplier } => {
            d.success = false;
            d.summary
                .push(format!("degenerate: cycle multiplier is {multiplier} mod {p}"));
            json!({"outcome": "degenerate", "multiplier_mod_p": multiplier})
        }
        HenselLiftResult::NotExactPeriod(div) => {
            d.success = false;
            d.summary
                .push(format!("{xbar} already has period dividing {div}"));
            json!({"outcome": "not_exact_period", "divisor": div})
        }
        HenselLiftResult::NotPeriodic => {
            d.success = false;
            d.summary.push(format!("{xbar} is not fixed by the {period}-th iterate mod {p}"));
            json!({"outcome": "not_periodic"})
        }
    };
    Ok(d.finish())
}

fn profinite(
    poly: &str,
    p: u32,
    max_n: u32,
    c_exp: i64,
    sequence: Option<&str>,
    limit: u64,
) -> Result<Outcome, CliError> {
    let f = parse_polynomial(poly)?;
    let t = build_tower_with_limit(&f, p, max_n, limit)?;
    let seq = match sequence {
        Some(s) => s
            .split(';')
            .map(parse_polynomial)
            .collect::<Result<Vec<_>, _>>()?,
        None => shifted_sequence(&f, p, max_n),
    };
    let lc = locally_constant_lift_check(&t);
    let route2 = route2_cauchy_check(&seq, &t, c_exp)?;
    let mut d = Draft::new(
        "profinite-check",
        json!({"polynomial": coefficient_strings(&f), "p": p, "max_n": max_n, "c_exp": c_exp,
               "sequence": seq.iter().map(coefficient_strings).collect::<Vec<_>>()}),
    );
    d.success = lc.holds && route2.passes;
    d.summary.push(format!(
        "locally constant lifts: {}, uniform Cauchy sequence: {}",
        lc.holds, route2.passes
    ));
    d.result = json!({
        "locally_constant_lift": check_json(&lc),
        "route2": {
            "passes": route2.passes,
            "level_failure": route2.level_failure.map(|w| json!({"level": w.level, "residue": w.residue})),
            "cauchy_failure": route2.cauchy_failure.map(|(n, e)| json!({"level": n, "exponent": report::norm(e)})),
        },
    });
    Ok(d.finish())
}

fn rigidity(c1: &BigInt, c2: &BigInt, p: u32, depth: u32) -> Result<Outcome, CliError> {
    let res = rigidity_check(c1, c2, p, depth)?;
    let mut d = Draft::new(
        "rigidity",
        json!({"c1": c1.to_string(), "c2": c2.to_string(), "p": p, "depth": depth}),
    );
    d.result = match res {
        Rigidity::Identical => {
            d.summary.push("graphs identical".into());
            json!({"congruent": true, "graphs_equal": true})
        }
        Rigidity::Violated { vertex } => {
            d.success = false;
            d.summary.push(format!("graphs differ at {vertex}"));
            json!({"congruent": true, "graphs_equal": false, "vertex": vertex})
        }
        Rigidity::NotCongruent { graphs_equal } => {
            d.warnings
                .push("constants are not congruent; nothing is asserted".into());
            json!({"congruent": false, "graphs_equal": graphs_equal})
        }
    };
    Ok(d.finish())
}
