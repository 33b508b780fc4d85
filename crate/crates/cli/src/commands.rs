//! Adapters from parsed arguments to library calls.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Value};

use qkit::bell::{
    chsh_value, deterministic_behavior, detection_loophole, facet_values, ghz_paradox,
    local_membership, max_violation, me_table, optimal_chsh_pure, pr_box, pr_boxes,
    pr_clone_signaling, same_input_game, singlet_lv_model, standard_settings, tlm_criterion,
    tsirelson_check, werner_chsh_threshold, ChshSettings, DeterministicStrategy, NsTable,
    FACET_TOL, IDEAL_DETECTION,
};
use qkit::channels::{bh_report, collision_iterate, trivial_clone_fidelity, trivial_clone_fidelity_mc, CollisionParams};
use qkit::discrimination::{
    chernoff_exponent, helstrom, pgm, trace_distance, usd_linear_independent, usd_time_bin,
    usd_two_pure,
};
use qkit::entropy::{
    bb84_eve_ensemble, binary_entropy, conditional_entropy, holevo_chi, holevo_chi_relative,
    von_neumann,
};
use qkit::qubit::{named_state, spin_state, state_to_bloch, REGISTRY_NAMES};
use qkit::teleport::{repeater_time, teleport_decompose, teleport_run};
use qkit::tensor::{c, STRUCT_TOL};
use qkit::{
    eig_hermitian, partial_trace, validate_state, BlochVector, DenseOperator, Ensemble,
    MeasurementDirection, PureState,
};

use crate::args::*;
use crate::output::{num, object, payload, sig, table, CommandResult, HUMAN_DIGITS};
use crate::verify::verify_paper;

#[derive(Debug)]
pub enum CliError {
    /// Malformed input; exit code 2.
    Usage(String),
    /// Error reported by the library; exit code 1.
    Domain(qkit::Error),
}

impl From<qkit::Error> for CliError {
    fn from(e: qkit::Error) -> Self {
        CliError::Domain(e)
    }
}

type Out = Result<CommandResult, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub struct Context {
    pub seed: u64,
    pub tol: Option<f64>,
}

impl Context {
    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// Space-separated subcommand path, e.g. `bell detection`.
pub fn command_name(cmd: &Command) -> String {
    let (head, tail) = match cmd {
        Command::State(_) => ("state", ""),
        Command::Clone(CloneCmd::Bh(_)) => ("clone", "bh"),
        Command::Clone(CloneCmd::Trivial { .. }) => ("clone", "trivial"),
        Command::Channel(ChannelCmd::Collide { .. }) => ("channel", "collide"),
        Command::Teleport(_) => ("teleport", ""),
        Command::Repeater { .. } => ("repeater", ""),
        Command::Discriminate(d) => (
            "discriminate",
            match d {
                DiscriminateCmd::Helstrom { .. } => "helstrom",
                DiscriminateCmd::Usd { .. } => "usd",
                DiscriminateCmd::Pgm { .. } => "pgm",
                DiscriminateCmd::Chernoff { .. } => "chernoff",
                DiscriminateCmd::Timebin { .. } => "timebin",
            },
        ),
        Command::Entropy(e) => (
            "entropy",
            match e {
                EntropyCmd::Vn { .. } => "vn",
                EntropyCmd::Cond { .. } => "cond",
                EntropyCmd::Holevo { .. } => "holevo",
                EntropyCmd::Bb84 { .. } => "bb84",
            },
        ),
        Command::Bell(b) => (
            "bell",
            match b {
                BellCmd::Table { .. } => "table",
                BellCmd::Membership { .. } => "membership",
                BellCmd::Chsh { .. } => "chsh",
                BellCmd::Optimal { .. } => "optimal",
                BellCmd::Detection { .. } => "detection",
                BellCmd::Ghz => "ghz",
                BellCmd::Tlm { .. } => "tlm",
                BellCmd::WernerThreshold => "werner-threshold",
                BellCmd::PrClone => "pr-clone",
                BellCmd::Game { .. } => "game",
                BellCmd::Lv { .. } => "lv",
            },
        ),
        Command::VerifyPaper => ("verify-paper", ""),
    };
    if tail.is_empty() {
        head.to_string()
    } else {
        format!("{head} {tail}")
    }
}

pub fn dispatch(cmd: &Command, ctx: &Context) -> Out {
    match cmd {
        Command::State(a) => state(a, ctx),
        Command::Clone(CloneCmd::Bh(a)) => Ok(CommandResult::ok(payload(&bh_report(&spin_state(a.theta, a.phi))?))),
        Command::Clone(CloneCmd::Trivial { strategy, samples }) => trivial(strategy, *samples, ctx),
        Command::Channel(ChannelCmd::Collide { p, phi, n, init }) => collide(*p, *phi, *n, init),
        Command::Teleport(a) => teleport(a, ctx),
        Command::Repeater { t } => Ok(CommandResult::ok(payload(&repeater_time(*t)?))),
        Command::Discriminate(d) => discriminate(d),
        Command::Entropy(e) => entropy(e),
        Command::Bell(b) => bell(b, ctx),
        Command::VerifyPaper => verify(ctx),
    }
}

/// Inline JSON if the argument starts with `[` or `{`, otherwise a file path.
fn read_json(arg: &str) -> Result<Value, CliError> {
    let text = if arg.trim_start().starts_with(['[', '{']) {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| usage(format!("cannot read `{arg}`: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| usage(format!("invalid JSON in `{arg}`: {e}")))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum StateSpec {
    Name(String),
    Angles { theta: f64, phi: f64 },
    Pure(PureState),
    Operator(DenseOperator),
}

fn spec_of(v: Value) -> Result<StateSpec, CliError> {
    serde_json::from_value(v).map_err(|_| {
        usage("a state must be a registry name, {\"theta\",\"phi\"}, or {\"dims\",\"re\",\"im\"}")
    })
}

fn spec_operator(spec: StateSpec) -> Result<DenseOperator, CliError> {
    Ok(match spec {
        StateSpec::Name(n) => named_state(&n)?,
        StateSpec::Angles { theta, phi } => spin_state(theta, phi).projector(),
        StateSpec::Pure(p) => p.projector(),
        StateSpec::Operator(o) => o,
    })
}

/// Registry name or inline JSON state.
fn state_arg(arg: &str) -> Result<DenseOperator, CliError> {
    if arg.trim_start().starts_with('{') {
        spec_operator(spec_of(read_json(arg)?)?)
    } else {
        Ok(named_state(arg)?)
    }
}

fn state_list(input: &StatesInput) -> Result<Vec<StateSpec>, CliError> {
    let arg = input.states.as_deref().ok_or_else(|| usage("--states is required"))?;
    match read_json(arg)? {
        Value::Array(items) => items.into_iter().map(spec_of).collect(),
        _ => Err(usage("--states must be a JSON array")),
    }
}

fn ensemble(input: &StatesInput) -> Result<Ensemble, CliError> {
    let states = state_list(input)?
        .into_iter()
        .map(spec_operator)
        .collect::<Result<Vec<_>, _>>()?;
    let priors = input
        .priors
        .clone()
        .unwrap_or_else(|| vec![1.0 / states.len() as f64; states.len()]);
    Ok(Ensemble::new(states, priors)?)
}

fn pure_list(input: &StatesInput) -> Result<Vec<PureState>, CliError> {
    state_list(input)?
        .into_iter()
        .map(|s| match s {
            StateSpec::Angles { theta, phi } => Ok(spin_state(theta, phi)),
            StateSpec::Pure(p) => Ok(p),
            _ => Err(usage("unambiguous discrimination needs pure states: {\"theta\",\"phi\"} or {\"dims\",\"re\",\"im\"}")),
        })
        .collect()
}

fn theta_pair(theta: f64) -> Result<[PureState; 2], CliError> {
    let (co, si) = (c(theta.cos(), 0.0), c(theta.sin(), 0.0));
    Ok([
        PureState::from_amplitudes(vec![2], &[co, si])?,
        PureState::from_amplitudes(vec![2], &[co, -si])?,
    ])
}

fn state(a: &StateArgs, ctx: &Context) -> Out {
    let Some(name) = a.name.as_deref().filter(|_| !a.list) else {
        return Ok(CommandResult::ok(json!({ "names": REGISTRY_NAMES })));
    };
    let rho = named_state(name)?;
    let tol = ctx.tol.unwrap_or(STRUCT_TOL);
    let dims = rho.dims().to_vec();
    let mut p = object(vec![
        ("name", json!(name)),
        ("dims", json!(dims)),
        ("rho", payload(&rho)),
        ("eigenvalues", payload(&eig_hermitian(&rho)?.eigenvalues)),
        ("purity", num(rho.trace_product(&rho).re)),
        ("entropy", num(von_neumann(&rho)?)),
        ("validation", payload(&validate_state(&rho, tol))),
    ]);
    if dims.iter().all(|&d| d == 2) {
        let blochs = (0..dims.len())
            .map(|k| Ok(state_to_bloch(&partial_trace(&rho, &[k])?)?))
            .collect::<Result<Vec<BlochVector>, CliError>>()?;
        p["bloch"] = payload(&blochs);
    }
    Ok(CommandResult::ok(p))
}

fn trivial(strategy: &str, samples: usize, ctx: &Context) -> Out {
    let s = strategy.parse()?;
    let closed = trivial_clone_fidelity(s);
    let mc = trivial_clone_fidelity_mc(s, samples, &mut ctx.rng());
    Ok(CommandResult::ok(object(vec![
        ("strategy", json!(strategy)),
        ("closed_form", num(closed)),
        ("monte_carlo", num(mc)),
        ("samples", json!(samples)),
        ("seed", json!(ctx.seed)),
    ])))
}

fn collide(p: f64, phi: f64, n: usize, init: &str) -> Out {
    let params = CollisionParams::new(p, phi)?;
    let run = collision_iterate(&named_state(init)?, params, n)?;
    let bloch = state_to_bloch(&run.iterated)?;
    let distance = run.iterated.max_abs_diff(&params.reservoir());
    let mut out = payload(&run);
    out["p"] = num(p);
    out["phi"] = num(phi);
    out["c"] = num(phi.cos());
    out["bloch"] = payload(&bloch);
    out["distance_to_reservoir"] = num(distance);
    Ok(CommandResult::ok(out))
}

fn teleport(a: &TeleportArgs, ctx: &Context) -> Out {
    let psi = spin_state(a.angles.theta, a.angles.phi);
    let branches: Vec<Value> = teleport_decompose(&psi)?
        .iter()
        .map(|b| {
            json!({
                "outcome": b.bell_outcome.name(),
                "correction": b.correction.label(),
                "probability": num(b.probability),
                "fidelity": num(b.corrected.overlap_sq(&psi)),
            })
        })
        .collect();
    let mut rng = ctx.rng();
    let mut histogram = BTreeMap::new();
    let (mut total, mut worst) = (0.0, f64::INFINITY);
    for _ in 0..a.runs {
        let run = teleport_run(&psi, &mut rng)?;
        *histogram.entry(run.outcome.name()).or_insert(0usize) += 1;
        let f = run.corrected.overlap_sq(&psi);
        total += f;
        worst = worst.min(f);
    }
    let (mean, worst) = if a.runs == 0 { (f64::NAN, f64::NAN) } else { (total / a.runs as f64, worst) };
    Ok(CommandResult::ok(object(vec![
        ("input", payload(&psi)),
        ("branches", Value::Array(branches)),
        ("runs", json!(a.runs)),
        ("histogram", json!(histogram)),
        ("mean_fidelity", num(mean)),
        ("min_fidelity", num(worst)),
    ])))
}

fn discriminate(d: &DiscriminateCmd) -> Out {
    match d {
        DiscriminateCmd::Helstrom { input, theta } => {
            let e = match theta {
                Some(t) => Ensemble::from_pure(&theta_pair(*t)?, input.priors.clone().unwrap_or(vec![0.5, 0.5]))?,
                None => ensemble(input)?,
            };
            let h = helstrom(&e)?;
            let d = trace_distance(&e.states()[0], &e.states()[1])?;
            let mut out = payload(&h);
            out["p_success"] = num(1.0 - h.p_error);
            out["trace_distance"] = num(d);
            Ok(CommandResult::ok(out))
        }
        DiscriminateCmd::Usd { input, alpha } => match alpha {
            Some(a) => Ok(CommandResult::ok(payload(&usd_two_pure(*a)?))),
            None => Ok(CommandResult::ok(payload(&usd_linear_independent(&pure_list(input)?)?))),
        },
        DiscriminateCmd::Pgm { input } => Ok(CommandResult::ok(payload(&pgm(&ensemble(input)?)?))),
        DiscriminateCmd::Chernoff { input, theta } => {
            let states: Vec<DenseOperator> = match theta {
                Some(t) => theta_pair(*t)?.iter().map(PureState::projector).collect(),
                None => ensemble(input)?.states().to_vec(),
            };
            let [rho0, rho1] = states.as_slice() else {
                return Err(usage(format!("the Chernoff exponent needs 2 states, got {}", states.len())));
            };
            let r = chernoff_exponent(rho0, rho1)?;
            Ok(CommandResult::ok(object(vec![
                ("xi", num(r.xi)),
                ("s_opt", num(r.s_opt)),
                ("q_min", num(r.q_min)),
            ])))
        }
        DiscriminateCmd::Timebin { mean_photons, eta, dark, cutoff } => {
            if !(*mean_photons >= 0.0) {
                return Err(CliError::Domain(qkit::Error::InvalidParameter {
                    name: "mean_photons",
                    value: *mean_photons,
                    reason: "mean photon number must be nonnegative",
                }));
            }
            let r = usd_time_bin(c(mean_photons.sqrt(), 0.0), *eta, *dark, *cutoff)?;
            Ok(CommandResult::ok(payload(&r)))
        }
    }
}

fn entropy(e: &EntropyCmd) -> Out {
    let p = match e {
        EntropyCmd::Vn { state } => object(vec![("entropy", num(von_neumann(&state_arg(state)?)?))]),
        EntropyCmd::Cond { state, cut } => object(vec![
            ("cut", json!(cut)),
            ("conditional_entropy", num(conditional_entropy(&state_arg(state)?, *cut)?)),
        ]),
        EntropyCmd::Holevo { input } => {
            let e = ensemble(input)?;
            object(vec![
                ("chi", num(holevo_chi(&e)?)),
                ("chi_relative", num(holevo_chi_relative(&e)?)),
            ])
        }
        EntropyCmd::Bb84 { eps } => object(vec![
            ("eps", num(*eps)),
            ("chi", num(holevo_chi(&bb84_eve_ensemble(*eps)?)?)),
            ("binary_entropy", num(binary_entropy(*eps))),
        ]),
    };
    Ok(CommandResult::ok(p))
}

fn named_box(name: &str) -> Result<NsTable, CliError> {
    let bad = || usage(format!("unknown box `{name}`; expected pr, pr:<0-7>, me, uniform or d:<i>,<j>"));
    match name {
        "pr" => Ok(pr_box(false, false, false)),
        "me" => Ok(me_table()),
        "uniform" => Ok(NsTable::uniform()),
        _ => {
            if let Some(k) = name.strip_prefix("pr:") {
                let k: usize = k.parse().map_err(|_| bad())?;
                return pr_boxes().get(k).copied().ok_or_else(bad);
            }
            let (i, j) = name
                .strip_prefix("d:")
                .and_then(|s| s.split_once(','))
                .ok_or_else(bad)?;
            let (i, j) = (i.trim().parse().map_err(|_| bad())?, j.trim().parse().map_err(|_| bad())?);
            Ok(deterministic_behavior(DeterministicStrategy::new(i, j)?))
        }
    }
}

#[derive(Deserialize)]
struct RawTable {
    #[serde(rename = "mA")]
    m_a: [f64; 2],
    #[serde(rename = "mB")]
    m_b: [f64; 2],
    j: [[f64; 2]; 2],
}

fn table_lines(t: &NsTable) -> Vec<String> {
    let f = |x: f64| format!("{:>9}", sig(x, HUMAN_DIGITS));
    vec![
        format!("{:>9}│{}{}", "", f(t.m_b[0]), f(t.m_b[1])),
        format!("{}┼{}", "─".repeat(9), "─".repeat(18)),
        format!("{}│{}{}", f(t.m_a[0]), f(t.j[0][0]), f(t.j[0][1])),
        format!("{}│{}{}", f(t.m_a[1]), f(t.j[1][0]), f(t.j[1][1])),
    ]
}

fn settings_arg(arg: &str) -> Result<ChshSettings, CliError> {
    if arg == "standard" {
        return Ok(standard_settings());
    }
    let bad = || usage("--settings must be `standard` or four `θ,φ` pairs separated by `;`");
    let dirs = arg
        .split(';')
        .map(|pair| {
            let (t, p) = pair.split_once(',').ok_or_else(bad)?;
            let t: f64 = t.trim().parse().map_err(|_| bad())?;
            let p: f64 = p.trim().parse().map_err(|_| bad())?;
            Ok(MeasurementDirection::from_angles(t, p))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    dirs.try_into().map_err(|_| bad())
}

fn vec3(v: &[f64], flag: &str) -> Result<[f64; 3], CliError> {
    v.try_into().map_err(|_| usage(format!("--{flag} needs 3 comma-separated numbers")))
}

fn bell(b: &BellCmd, ctx: &Context) -> Out {
    match b {
        BellCmd::Table { name } => {
            let t = named_box(name)?;
            let facets = facet_values(&t);
            let (facet, violation) = max_violation(&t);
            let p = object(vec![
                ("box", json!(name)),
                ("table", payload(&t)),
                ("chsh", num(t.chsh())),
                ("facet_values", payload(&facets)),
                ("max_facet", json!(facet)),
                ("local", json!(violation <= FACET_TOL)),
            ]);
            let mut lines = table_lines(&t);
            lines.push(String::new());
            lines.extend(table(&[
                ("chsh".into(), sig(t.chsh(), HUMAN_DIGITS)),
                ("max facet value".into(), format!("{} (facet {facet})", sig(violation, HUMAN_DIGITS))),
                ("local".into(), (violation <= FACET_TOL).to_string()),
            ]));
            Ok(CommandResult::ok(p).with_summary(lines))
        }
        BellCmd::Membership { table: arg } => {
            let raw: RawTable = serde_json::from_value(read_json(arg)?)
                .map_err(|e| usage(format!("a table needs numeric \"mA\", \"mB\" and \"j\": {e}")))?;
            let t = NsTable::new(raw.m_a, raw.m_b, raw.j)?;
            let m = local_membership(&t)?;
            let mut p = payload(&m);
            p["facet_values"] = payload(&facet_values(&t));
            let mut lines = table_lines(&t);
            lines.push(String::new());
            lines.extend(crate::output::flatten(&p));
            Ok(CommandResult::ok(p).with_summary(lines))
        }
        BellCmd::Chsh { state, settings } => {
            let rho = state_arg(state)?;
            let s = settings_arg(settings)?;
            let value = chsh_value(&rho, &s)?;
            let report = tsirelson_check(&s);
            Ok(CommandResult::ok(object(vec![
                ("state", json!(state)),
                ("settings", payload(&s)),
                ("s", num(value)),
                ("abs_s", num(value.abs())),
                ("violates_local_bound", json!(value.abs() > 2.0 + STRUCT_TOL)),
                ("max_eig_operator", num(report.max_eig_s)),
                ("max_eig_square", num(report.max_eig_s2)),
            ])))
        }
        BellCmd::Optimal { theta } => Ok(CommandResult::ok(payload(&optimal_chsh_pure(*theta)?))),
        BellCmd::Detection { eta, weights } => {
            let [s2, s1, s0] = match weights {
                Some(w) => vec3(w, "weights")?,
                None => IDEAL_DETECTION,
            };
            Ok(CommandResult::ok(payload(&detection_loophole(*eta, s2, s1, s0)?)))
        }
        BellCmd::Ghz => Ok(CommandResult::ok(payload(&ghz_paradox()))),
        BellCmd::Tlm { values } => {
            let e: [f64; 4] = values
                .as_slice()
                .try_into()
                .map_err(|_| usage("--values needs 4 comma-separated correlators"))?;
            Ok(CommandResult::ok(payload(&tlm_criterion(e)?)))
        }
        BellCmd::WernerThreshold => Ok(CommandResult::ok(object(vec![("threshold", num(werner_chsh_threshold()))]))),
        BellCmd::PrClone => Ok(CommandResult::ok(payload(&pr_clone_signaling()))),
        BellCmd::Game { inputs, outputs } => Ok(CommandResult::ok(payload(&same_input_game(*inputs, *outputs)?))),
        BellCmd::Lv { m, a, samples } => {
            let m = BlochVector::new(vec3(m, "m")?)?;
            let a = MeasurementDirection::normalized(vec3(a, "a")?)?;
            let estimate = singlet_lv_model(&a, &m, *samples, &mut ctx.rng())?;
            Ok(CommandResult::ok(object(vec![
                ("estimate", num(estimate)),
                ("m_dot_a", num(qkit::qubit::dot(m.0, a.vector()))),
                ("samples", json!(samples)),
                ("tolerance", num(4.0 / (*samples as f64).sqrt())),
                ("seed", json!(ctx.seed)),
            ])))
        }
    }
}

fn verify(ctx: &Context) -> Out {
    let checks = verify_paper(ctx.tol);
    let failed = checks.iter().filter(|c| !c.pass).count();
    let rows: Vec<Value> = checks
        .iter()
        .map(|c| {
            json!({
                "name": c.name,
                "expected": num(c.expected),
                "computed": num(c.computed),
                "tolerance": num(c.tolerance),
                "comparison": c.comparison,
                "pass": c.pass,
                "error": c.error,
            })
        })
        .collect();
    let p = object(vec![
        ("checks", Value::Array(rows)),
        ("passed", json!(checks.len() - failed)),
        ("failed", json!(failed)),
    ]);
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    let mut lines = vec![format!(
        "{:<width$}  {:>12}  {:>12}  {:>9}  result",
        "check", "expected", "computed", "tol"
    )];
    for c in &checks {
        lines.push(format!(
            "{:<width$}  {:>12}  {:>12}  {:>9}  {}",
            c.name,
            sig(c.expected, HUMAN_DIGITS),
            sig(c.computed, HUMAN_DIGITS),
            sig(c.tolerance, 2),
            if c.pass { "pass" } else { "FAIL" }
        ));
    }
    lines.push(format!("{} passed, {failed} failed", checks.len() - failed));
    let r = CommandResult::ok(p).with_summary(lines);
    Ok(if failed == 0 { r } else { r.fail(format!("{failed} of {} checks failed", checks.len())) })
}
