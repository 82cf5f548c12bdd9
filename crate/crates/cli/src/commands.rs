//! Subcommand implementations. Each returns the rendered output plus the
//! verdict that drives the process exit code.

use crate::io::{self, ProblemFile};
use crate::render::{format_bool, format_number, Units};
use anyhow::{anyhow, bail, Result};
use infobounds::bounds::{
    best_order, corollary_alpha_div_bound, corollary_leakage_bound, corollary_sibson_bound,
    esssup_fiber, event_probability, fiber_probability, product_probability, theorem1_bound,
    BoundKind, BoundReport,
};
use infobounds::expectation::{exact_expected_generr, expected_generr_bound};
use infobounds::learning::{
    baseline_table, build_joint, cor5_bound, cor7_bound, generalization_event,
    mcdiarmid_fiber_bound, sample_complexity_bound, TableParams,
};
use infobounds::measures::{
    maximal_leakage, mutual_information, renyi_divergence, sibson_mi, HolderPair,
};
use infobounds::{JointDistribution, Order};
use std::path::Path;

/// Rendered output plus whether every checked inequality held.
pub struct CommandOutput {
    pub text: String,
    pub all_hold: bool,
}

impl CommandOutput {
    fn ok(text: String) -> Self {
        CommandOutput {
            text,
            all_hold: true,
        }
    }
}

/// Assembles the run-manifest comment block placed atop every CSV.
pub fn manifest(command: &str, seed: Option<u64>, units: Units, inputs: &[&Path]) -> Result<String> {
    let mut out = String::new();
    out.push_str(&format!(
        "# infobounds {} command={command}\n",
        env!("CARGO_PKG_VERSION")
    ));
    if let Some(seed) = seed {
        out.push_str(&format!("# seed: {seed}\n"));
    }
    out.push_str(&format!("# units: {}\n", units.label()));
    for path in inputs {
        out.push_str(&format!(
            "# input: {} sha256={}\n",
            path.display(),
            io::file_digest(path)?
        ));
    }
    Ok(out)
}

fn d_alpha_of(j: &JointDistribution, alpha: Order) -> Result<f64> {
    let product = JointDistribution::product(&j.marginal_x(), &j.marginal_y());
    Ok(renyi_divergence(&j.flatten(), &product.flatten(), alpha)?.value())
}

pub fn run_measure(joint_path: &Path, alphas: &str, units: Units) -> Result<CommandOutput> {
    let j = io::read_joint(joint_path)?;
    let orders = io::parse_order_list(alphas)?;
    let mut out = manifest("measure", None, units, &[joint_path])?;
    out.push_str("quantity,alpha,value\n");
    for &alpha in &orders {
        let d = d_alpha_of(&j, alpha)?;
        let i = sibson_mi(&j, alpha).value();
        out.push_str(&format!(
            "d_alpha,{alpha},{}\n",
            format_number(units.convert(d))
        ));
        out.push_str(&format!(
            "i_alpha,{alpha},{}\n",
            format_number(units.convert(i))
        ));
    }
    out.push_str(&format!(
        "leakage,inf,{}\n",
        format_number(units.convert(maximal_leakage(&j).value()))
    ));
    out.push_str(&format!(
        "mi,1,{}\n",
        format_number(units.convert(mutual_information(&j).value()))
    ));
    Ok(CommandOutput::ok(out))
}

fn bound_row(kind: &str, alpha: &str, alpha_prime: &str, r: &BoundReport) -> String {
    format!(
        "{kind},{alpha},{alpha_prime},{},{},{},{}\n",
        format_number(r.lhs),
        format_number(r.rhs),
        format_number(r.slack),
        format_bool(r.holds)
    )
}

pub fn run_bound(
    joint_path: &Path,
    event_path: &Path,
    kind: &str,
    alpha: Option<&str>,
    alpha_prime: Option<&str>,
) -> Result<CommandOutput> {
    let j = io::read_joint(joint_path)?;
    let e = io::read_event(event_path)?;
    let need_alpha = || -> Result<Order> {
        alpha
            .ok_or_else(|| anyhow!("--alpha is required for kind {kind:?}"))?
            .parse::<Order>()
            .map_err(|err| anyhow!("--alpha: {err}"))
    };
    let (report, alpha_label, alpha_prime_label) = match kind {
        "theorem1" => {
            let a = need_alpha()?;
            let ap = match alpha_prime {
                Some(s) => s.parse::<Order>().map_err(|err| anyhow!("--alpha-prime: {err}"))?,
                None => a,
            };
            let pair = HolderPair::new(a, ap).map_err(|err| anyhow!("exponent pair: {err}"))?;
            (theorem1_bound(&j, &e, &pair)?, a.to_string(), ap.to_string())
        }
        "alpha_div" => {
            let a = need_alpha()?;
            (corollary_alpha_div_bound(&j, &e, a)?, a.to_string(), "-".into())
        }
        "sibson" => {
            let a = need_alpha()?;
            (corollary_sibson_bound(&j, &e, a)?, a.to_string(), "-".into())
        }
        "leakage" => (
            corollary_leakage_bound(&j, &e)?,
            "inf".into(),
            "-".into(),
        ),
        other => bail!("unknown bound kind {other:?} (theorem1|alpha_div|sibson|leakage)"),
    };
    let mut out = manifest("bound", None, Units::Nats, &[joint_path, event_path])?;
    out.push_str("kind,alpha,alpha_prime,lhs,rhs,slack,holds\n");
    out.push_str(&bound_row(kind, &alpha_label, &alpha_prime_label, &report));
    Ok(CommandOutput {
        text: out,
        all_hold: report.holds,
    })
}

pub fn run_sweep(
    joint_path: &Path,
    event_path: &Path,
    grid: &str,
    kind: &str,
) -> Result<CommandOutput> {
    let j = io::read_joint(joint_path)?;
    let e = io::read_event(event_path)?;
    let orders = io::parse_order_list(grid)?;
    let bound_kind = match kind {
        "sibson" => BoundKind::Sibson,
        "alpha_div" => BoundKind::AlphaDiv,
        other => bail!("unknown sweep kind {other:?} (sibson|alpha_div)"),
    };

    let mut out = manifest("sweep", None, Units::Nats, &[joint_path, event_path])?;
    out.push_str("alpha,info_term,fiber_term,rhs\n");
    let mut all_hold = true;
    for &alpha in &orders {
        let (report, info, fiber) = match bound_kind {
            BoundKind::Sibson => {
                let r = corollary_sibson_bound(&j, &e, alpha)?;
                let ess = esssup_fiber(&j, &e)?;
                let (info, fiber) = split_terms(alpha, sibson_mi(&j, alpha).value(), ess);
                (r, info, fiber)
            }
            BoundKind::AlphaDiv => {
                let r = corollary_alpha_div_bound(&j, &e, alpha)?;
                let prod = product_probability(&j, &e)?;
                let (info, fiber) = split_terms(alpha, d_alpha_of(&j, alpha)?, prod);
                (r, info, fiber)
            }
        };
        all_hold &= report.holds;
        out.push_str(&format!(
            "{alpha},{},{},{}\n",
            format_number(info),
            format_number(fiber),
            format_number(report.rhs)
        ));
    }
    let (best_alpha, best_report) = best_order(&j, &e, &orders, bound_kind)?;
    out.push_str(&format!(
        "# best_alpha: {best_alpha} rhs={}\n",
        format_number(best_report.rhs)
    ));
    Ok(CommandOutput {
        text: out,
        all_hold,
    })
}

/// The two multiplicative factors of the one-parameter bounds:
/// `exp(((a-1)/a) * info)` and `base^((a-1)/a)`.
fn split_terms(alpha: Order, info_nats: f64, base: f64) -> (f64, f64) {
    let coef = match alpha {
        Order::One => 0.0,
        Order::Infinity => 1.0,
        Order::Finite(a) => (a - 1.0) / a,
    };
    let info = (coef * info_nats).exp();
    let fiber = if base == 0.0 && coef == 0.0 {
        1.0
    } else {
        base.powf(coef)
    };
    (info, fiber)
}

pub struct VerifyOptions {
    pub etas: Vec<f64>,
    pub alphas: Vec<Order>,
    pub delta: Option<f64>,
    pub seed: Option<u64>,
    pub cap: Option<usize>,
    pub units: Units,
    pub inject_violation: bool,
}

pub fn run_verify(problem_path: &Path, opts: &VerifyOptions) -> Result<CommandOutput> {
    let file = ProblemFile::parse(problem_path)?;
    let (problem, learner) = file.build(opts.cap)?;
    let seed = opts.seed.or(file.seed).unwrap_or(0);
    let joint = build_joint(&problem, &learner)?;
    let unit_loss = problem.unit_interval_loss();

    let mut out = manifest("verify", Some(seed), opts.units, &[problem_path])?;
    out.push_str("eta,alpha,kind,lhs,rhs,slack,holds,note\n");
    let mut all_hold = true;
    let push_info = |out: &mut String, eta: &str, alpha: &str, kind: &str, value: f64, note: &str| {
        out.push_str(&format!(
            "{eta},{alpha},{kind},-,{},-,-,{note}\n",
            format_number(value)
        ));
    };
    let push_check =
        |out: &mut String, all: &mut bool, eta: &str, alpha: &str, kind: &str, lhs: f64, rhs: f64, note: &str| {
            let holds = lhs <= rhs + 1e-9;
            *all &= holds;
            out.push_str(&format!(
                "{eta},{alpha},{kind},{},{},{},{},{note}\n",
                format_number(lhs),
                format_number(rhs),
                format_number(rhs - lhs),
                format_bool(holds)
            ));
        };

    // dependence measures of the learner-induced joint
    let info: Vec<(Order, f64)> = opts
        .alphas
        .iter()
        .map(|&a| (a, sibson_mi(&joint, a).value()))
        .collect();
    for &(alpha, value) in &info {
        push_info(
            &mut out,
            "-",
            &alpha.to_string(),
            "i_alpha",
            opts.units.convert(value),
            "",
        );
    }

    for &eta in &opts.etas {
        let eta_label = format_number(eta);
        let event = generalization_event(&problem, eta)?;
        let exact = event_probability(&joint, &event)?;

        if unit_loss {
            // per-hypothesis fibers against McDiarmid
            let mcd = mcdiarmid_fiber_bound(problem.n(), eta)?;
            let worst_fiber = (0..problem.h_size())
                .map(|h| fiber_probability(&joint, &event, h))
                .collect::<infobounds::Result<Vec<_>>>()?
                .into_iter()
                .fold(0.0f64, f64::max);
            push_check(
                &mut out,
                &mut all_hold,
                &eta_label,
                "-",
                "mcdiarmid_fiber",
                worst_fiber,
                mcd,
                "max over hypotheses",
            );
        }

        for &(alpha, i) in &info {
            let alpha_label = alpha.to_string();
            if unit_loss {
                let rhs = cor5_bound(infobounds::Nats::new(i), alpha, problem.n(), eta)?;
                let note = if alpha.is_one() { "vacuous at alpha=1" } else { "" };
                push_check(
                    &mut out,
                    &mut all_hold,
                    &eta_label,
                    &alpha_label,
                    "cor5",
                    exact,
                    rhs,
                    note,
                );
            }
            let rhs = cor7_bound(
                infobounds::Nats::new(i),
                alpha,
                problem.n(),
                eta,
                problem.sigma(),
            )?;
            push_check(
                &mut out,
                &mut all_hold,
                &eta_label,
                &alpha_label,
                "cor7",
                exact,
                rhs,
                "",
            );
            let direct = corollary_sibson_bound(&joint, &event, alpha)?;
            push_check(
                &mut out,
                &mut all_hold,
                &eta_label,
                &alpha_label,
                "sibson_event",
                direct.lhs,
                direct.rhs,
                "",
            );
        }
    }

    // expected generalization error against the tail-derived bound
    let exact_expected = exact_expected_generr(&problem, &learner)?;
    for &(alpha, i) in &info {
        if alpha.is_one() {
            continue;
        }
        let bound = expected_generr_bound(
            problem.n(),
            problem.sigma(),
            alpha,
            infobounds::Nats::new(i),
        )?;
        let note = if bound.hypothesis_met { "" } else { "b<e" };
        push_check(
            &mut out,
            &mut all_hold,
            "-",
            &alpha.to_string(),
            "thm10_expected",
            exact_expected,
            bound.value,
            note,
        );
    }

    if let Some(delta) = opts.delta {
        for &(alpha, i) in &info {
            if alpha.is_one() {
                continue;
            }
            for &eta in &opts.etas {
                let m = sample_complexity_bound(infobounds::Nats::new(i), alpha, eta, delta)?;
                push_info(
                    &mut out,
                    &format_number(eta),
                    &alpha.to_string(),
                    "sample_complexity",
                    m as f64,
                    &format!("delta={}", format_number(delta)),
                );
            }
        }
    }

    if opts.inject_violation {
        push_check(
            &mut out,
            &mut all_hold,
            "-",
            "-",
            "injected_violation",
            1.0,
            0.0,
            "testing hook",
        );
    }

    Ok(CommandOutput {
        text: out,
        all_hold,
    })
}

pub fn run_table(params_path: &Path) -> Result<CommandOutput> {
    let file = io::ParamsFile::parse(params_path)?;
    let sibson = file
        .sibson_pair()?
        .map(|(i, a)| (i, a));
    let params = TableParams {
        n: file.n,
        eta: file.eta,
        delta: file.delta,
        mi: file.mi,
        leakage: file.leakage,
        sibson,
        vc_k: file.vc_k,
        dp_epsilon: file.dp_epsilon,
    };
    let rows = baseline_table(&params)?;
    let mut out = manifest("table", None, Units::Nats, &[params_path])?;
    out.push_str("name,robust,adaptive,bound,sample_complexity,note\n");
    for row in &rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            row.name,
            row.robust,
            row.adaptive,
            format_number(row.bound),
            format_number(row.sample_complexity),
            row.note.as_deref().unwrap_or("")
        ));
    }
    if rows.is_empty() {
        out.push_str("# notice: no optional row parameters supplied\n");
    }
    Ok(CommandOutput::ok(out))
}
