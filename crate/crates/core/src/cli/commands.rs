use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::output::{csv_artifact, json_artifact, text_header};
use super::{Artifact, OutputFormat, RunConfig, WignerSource};
use crate::error::{Error, Result};
use crate::fock::{binomial_state, qunaught_state, BinomialParams, StateVector};
use crate::homodyne::{Axis, OutcomeDistribution};
use crate::metrics::{linspace, position_density, wigner};
use crate::protocol::{
    enumerate_two_iterations, run_chain, run_chain_prefixes, sweep_binomial_inputs, Breeder, EnumerationOptions,
    Selection, SweepOptions,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Distribution,
    Chain,
    Enumerate,
    Sweep,
    Wigner,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Distribution => "distribution",
            Command::Chain => "chain",
            Command::Enumerate => "enumerate",
            Command::Sweep => "sweep",
            Command::Wigner => "wigner",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        [
            Command::Distribution,
            Command::Chain,
            Command::Enumerate,
            Command::Sweep,
            Command::Wigner,
        ]
        .into_iter()
        .find(|c| c.name() == s)
        .ok_or_else(|| Error::Config(format!("unknown command '{s}'")))
    }
}

/// Validates `cfg` and runs `cmd`.
pub fn run_command(cmd: Command, cfg: &RunConfig) -> Result<Vec<Artifact>> {
    cfg.validate()?;
    match cmd {
        Command::Distribution => cmd_distribution(cfg),
        Command::Chain => cmd_chain(cfg),
        Command::Enumerate => cmd_enumerate(cfg),
        Command::Sweep => cmd_sweep(cfg),
        Command::Wigner => cmd_wigner(cfg),
    }
}

/// Shortest round-trip form, in exponent notation away from unit scale.
fn num(x: f64) -> String {
    if x == 0.0 || !x.is_finite() || (1e-4..1e6).contains(&x.abs()) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn setup(cfg: &RunConfig) -> Result<(Breeder, StateVector)> {
    let fock = cfg.fock()?;
    let breeder = Breeder::new(&fock)?;
    let input = binomial_state(&fock, BinomialParams::new(cfg.n, cfg.k)?)?;
    Ok((breeder, input))
}

fn parse_selection(token: &str) -> Result<Selection> {
    token.parse::<Selection>()
}

#[derive(Serialize)]
struct DistributionRow {
    index: usize,
    eigenvalue: f64,
    rescaled_outcome: f64,
    probability: f64,
    label: Option<String>,
}

#[derive(Serialize)]
struct DistributionReport {
    axis: Axis,
    conditioned_on: Option<(usize, usize)>,
    rows: Vec<DistributionRow>,
}

/// Outcome distribution of the first measurement, or of the second one
/// conditioned on the first-level outcomes in `cfg.condition`.
pub fn cmd_distribution(cfg: &RunConfig) -> Result<Vec<Artifact>> {
    let (breeder, input) = setup(cfg)?;
    let schedule = cfg.parsed_schedule()?;
    let first_axis = schedule.axes().first().copied().unwrap_or(Axis::Q);
    let first = breeder.distribution(&input, &input, first_axis)?;

    let (dist, conditioned_on): (OutcomeDistribution, _) = if cfg.condition.is_empty() {
        (first, None)
    } else {
        let i = parse_selection(&cfg.condition[0])?.resolve(&first)?;
        let j = parse_selection(&cfg.condition[1])?.resolve(&first)?;
        let outcomes = breeder.breed_step(&input, &input, first_axis)?;
        let state = |x: usize| {
            outcomes[x].post_state.clone().ok_or(Error::Underflow {
                level: 1,
                probability: outcomes[x].probability,
            })
        };
        let second_axis = schedule.axes().get(1).copied().unwrap_or(match first_axis {
            Axis::Q => Axis::P,
            Axis::P => Axis::Q,
        });
        (breeder.distribution(&state(i)?, &state(j)?, second_axis)?, Some((i, j)))
    };

    let rows: Vec<DistributionRow> = (0..dist.dim())
        .map(|i| DistributionRow {
            index: i,
            eigenvalue: dist.eigenvalues[i],
            rescaled_outcome: dist.rescaled_outcomes[i],
            probability: dist.probabilities[i],
            label: dist.label(i).map(|l| l.to_string()),
        })
        .collect();
    let name = "distribution";
    match cfg.output_format {
        OutputFormat::Json => Ok(vec![json_artifact(
            name,
            name,
            cfg,
            DistributionReport {
                axis: dist.axis,
                conditioned_on,
                rows,
            },
        )?]),
        OutputFormat::Csv => Ok(vec![csv_artifact(
            name,
            name,
            cfg,
            &["index", "eigenvalue", "rescaled_outcome", "probability", "label"],
            rows.iter().map(|r| {
                vec![
                    r.index.to_string(),
                    num(r.eigenvalue),
                    num(r.rescaled_outcome),
                    num(r.probability),
                    r.label.clone().unwrap_or_default(),
                ]
            }),
        )?]),
    }
}

/// One result per iteration count `0..=schedule.len()`.
pub fn cmd_chain(cfg: &RunConfig) -> Result<Vec<Artifact>> {
    let (breeder, input) = setup(cfg)?;
    let target = qunaught_state(breeder.config(), cfg.qunaught_params(cfg.delta_target))?;
    let results = run_chain_prefixes(&breeder, &input, &target, &cfg.parsed_schedule()?, &cfg.selections()?)?;
    let name = "chain";
    match cfg.output_format {
        OutputFormat::Json => Ok(vec![json_artifact(name, name, cfg, &results)?]),
        OutputFormat::Csv => Ok(vec![csv_artifact(
            name,
            name,
            cfg,
            &[
                "iterations",
                "schedule",
                "outcome_path",
                "labels",
                "fidelity",
                "log_probability",
                "probability",
                "log_probability_mirror_aggregated",
                "probability_mirror_aggregated",
                "delta_q",
                "delta_p",
            ],
            results.iter().map(|r| {
                let path: Vec<String> = r
                    .outcome_path
                    .iter()
                    .map(|s| format!("{}{}", s.axis, s.index))
                    .collect();
                let labels: Vec<String> = r
                    .outcome_path
                    .iter()
                    .map(|s| s.label.clone().unwrap_or_else(|| "-".into()))
                    .collect();
                vec![
                    r.iterations.to_string(),
                    r.schedule.clone(),
                    path.join(" "),
                    labels.join(" "),
                    num(r.fidelity),
                    num(r.log_probability),
                    num(r.probability()),
                    num(r.log_probability_mirror_aggregated),
                    num(r.probability_mirror_aggregated()),
                    num(r.delta_q),
                    num(r.delta_p),
                ]
            }),
        )?]),
    }
}

/// Fidelity thresholds of the cumulative curve, 0.800 to 1.000 in steps of 0.001.
pub fn fidelity_thresholds() -> Vec<f64> {
    (800..=1000).map(|i| i as f64 / 1000.0).collect()
}

/// Effective-squeezing bounds of the cumulative curve, 0.250 to 0.700 in steps of 0.001.
pub fn squeezing_bounds() -> Vec<f64> {
    (250..=700).map(|i| i as f64 / 1000.0).collect()
}

/// Fidelity above which mirror classes are listed.
const CLASS_FIDELITY: f64 = 0.96;

/// Leaves at or below this probability count as unreachable.
const REACHABLE_PROBABILITY: f64 = 1e-15;

#[derive(Serialize)]
struct Summary {
    leaves: usize,
    reduced: bool,
    total_probability: f64,
    max_fidelity: Option<f64>,
    max_fidelity_sequence: Option<(usize, usize, usize)>,
    probability_fidelity_at_least_0_98: f64,
    probability_delta_q_at_most_0_40: f64,
    probability_delta_q_at_most_0_46: f64,
}

/// Full leaf table, both cumulative curves, the high-fidelity mirror
/// classes and a summary.
pub fn cmd_enumerate(cfg: &RunConfig) -> Result<Vec<Artifact>> {
    if cfg.parsed_schedule()?.axes() != [Axis::Q, Axis::P] {
        return Err(Error::Config(format!(
            "enumerate runs the schedule qp, got '{}'",
            cfg.schedule
        )));
    }
    let (breeder, input) = setup(cfg)?;
    let target = qunaught_state(breeder.config(), cfg.qunaught_params(cfg.delta_target))?;
    let opts = EnumerationOptions {
        parallelism: cfg.parallelism,
        use_symmetry: true,
        max_leaves: cfg.max_leaves,
    };
    let tree = enumerate_two_iterations(&breeder, &input, &target, &opts)?;

    let fid_curve = tree.probability_fidelity_curve(&fidelity_thresholds());
    let sq_curve = tree.effective_squeezing_curve(&squeezing_bounds());
    let mut classes: Vec<_> = tree
        .classes()
        .into_iter()
        .filter(|c| c.fidelity > CLASS_FIDELITY && c.probability > REACHABLE_PROBABILITY)
        .collect();
    classes.sort_by(|a, b| {
        b.fidelity
            .total_cmp(&a.fidelity)
            .then((a.q1, a.q2, a.p).cmp(&(b.q1, b.q2, b.p)))
    });
    let best = tree.max_fidelity(REACHABLE_PROBABILITY);
    let at = |curve: &[crate::protocol::CurvePoint], x: f64| {
        curve
            .iter()
            .find(|p| (p.threshold - x).abs() < 1e-12)
            .map_or(f64::NAN, |p| p.probability)
    };
    let summary = Summary {
        leaves: tree.leaves.len(),
        reduced: tree.reduced,
        total_probability: tree.total_probability(),
        max_fidelity: best.map(|l| l.fidelity),
        max_fidelity_sequence: best.map(|l| (l.q1, l.q2, l.p)),
        probability_fidelity_at_least_0_98: at(&fid_curve, 0.98),
        probability_delta_q_at_most_0_40: at(&sq_curve, 0.40),
        probability_delta_q_at_most_0_46: at(&sq_curve, 0.46),
    };

    const CMD: &str = "enumerate";
    if cfg.output_format == OutputFormat::Json {
        #[derive(Serialize)]
        struct Report<'a> {
            summary: &'a Summary,
            classes: &'a [crate::protocol::LeafClass],
            fidelity_curve: &'a [crate::protocol::CurvePoint],
            squeezing_curve: &'a [crate::protocol::CurvePoint],
            leaves: &'a [crate::protocol::LeafRecord],
        }
        let report = Report {
            summary: &summary,
            classes: &classes,
            fidelity_curve: &fid_curve,
            squeezing_curve: &sq_curve,
            leaves: &tree.leaves,
        };
        return Ok(vec![json_artifact(CMD, CMD, cfg, report)?]);
    }

    let summary_rows = vec![
        vec!["leaves".into(), summary.leaves.to_string()],
        vec!["reduced".into(), summary.reduced.to_string()],
        vec!["total_probability".into(), num(summary.total_probability)],
        vec!["max_fidelity".into(), summary.max_fidelity.map_or(String::new(), num)],
        vec![
            "max_fidelity_sequence".into(),
            summary
                .max_fidelity_sequence
                .map_or(String::new(), |(a, b, c)| format!("q{a} q{b} p{c}")),
        ],
        vec![
            "probability_fidelity_at_least_0.98".into(),
            num(summary.probability_fidelity_at_least_0_98),
        ],
        vec![
            "probability_delta_q_at_most_0.40".into(),
            num(summary.probability_delta_q_at_most_0_40),
        ],
        vec![
            "probability_delta_q_at_most_0.46".into(),
            num(summary.probability_delta_q_at_most_0_46),
        ],
    ];
    Ok(vec![
        csv_artifact("summary", CMD, cfg, &["metric", "value"], summary_rows)?,
        csv_artifact(
            "classes",
            CMD,
            cfg,
            &[
                "q1",
                "q2",
                "p",
                "images",
                "probability_mirror_aggregated",
                "fidelity",
                "delta_q",
                "delta_p",
            ],
            classes.iter().map(|c| {
                vec![
                    c.q1.to_string(),
                    c.q2.to_string(),
                    c.p.to_string(),
                    c.images.to_string(),
                    num(c.probability),
                    num(c.fidelity),
                    num(c.delta_q),
                    num(c.delta_p),
                ]
            }),
        )?,
        csv_artifact(
            "fidelity_curve",
            CMD,
            cfg,
            &["fidelity_threshold", "cumulative_probability"],
            fid_curve.iter().map(|p| vec![num(p.threshold), num(p.probability)]),
        )?,
        csv_artifact(
            "squeezing_curve",
            CMD,
            cfg,
            &["delta_q_bound", "cumulative_probability"],
            sq_curve.iter().map(|p| vec![num(p.threshold), num(p.probability)]),
        )?,
        csv_artifact(
            "leaves",
            CMD,
            cfg,
            &["q1", "q2", "p", "probability", "fidelity", "delta_q", "delta_p", "null"],
            tree.leaves.iter().map(|l| {
                vec![
                    l.q1.to_string(),
                    l.q2.to_string(),
                    l.p.to_string(),
                    num(l.probability),
                    num(l.fidelity),
                    num(l.delta_q),
                    num(l.delta_p),
                    l.null.to_string(),
                ]
            }),
        )?,
    ])
}

/// Fidelity against iteration count for every `(N, K)` and target width,
/// with alternating `q, p` measurements and central post-selection.
pub fn cmd_sweep(cfg: &RunConfig) -> Result<Vec<Artifact>> {
    let breeder = Breeder::new(&cfg.fock()?)?;
    let opts = SweepOptions {
        n_values: cfg.n_list.clone(),
        k_values: cfg.k_list.clone(),
        target_deltas: cfg.sweep_deltas.clone(),
        max_iterations: cfg.max_iterations,
        schedule: None,
        t_max: cfg.t_max,
    };
    let sweep = sweep_binomial_inputs(&breeder, &opts)?;
    let name = "sweep";
    match cfg.output_format {
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct Best {
                target_delta: f64,
                n: usize,
                k: usize,
                iteration: usize,
                fidelity: Option<f64>,
            }
            #[derive(Serialize)]
            struct Report<'a> {
                best: Vec<Best>,
                rows: &'a [crate::protocol::SweepRow],
            }
            let best = cfg
                .sweep_deltas
                .iter()
                .filter_map(|&d| sweep.best(d))
                .map(|r| Best {
                    target_delta: r.target_delta,
                    n: r.n,
                    k: r.k,
                    iteration: r.iteration,
                    fidelity: r.fidelity,
                })
                .collect();
            Ok(vec![json_artifact(
                name,
                name,
                cfg,
                Report {
                    best,
                    rows: &sweep.rows,
                },
            )?])
        }
        OutputFormat::Csv => Ok(vec![csv_artifact(
            name,
            name,
            cfg,
            &[
                "n",
                "k",
                "target_delta",
                "iteration",
                "fidelity",
                "log_probability",
                "overflow",
            ],
            sweep.rows.iter().map(|r| {
                vec![
                    r.n.to_string(),
                    r.k.to_string(),
                    num(r.target_delta),
                    r.iteration.to_string(),
                    r.fidelity.map_or(String::new(), num),
                    r.log_probability.map_or(String::new(), num),
                    r.overflow.to_string(),
                ]
            }),
        )?]),
    }
}

/// Wigner grid and position density of the input, the target, or the
/// configured chain output.
pub fn cmd_wigner(cfg: &RunConfig) -> Result<Vec<Artifact>> {
    let fock = cfg.fock()?;
    let state = match cfg.state {
        WignerSource::Target => qunaught_state(&fock, cfg.qunaught_params(cfg.delta_target))?,
        WignerSource::Input => binomial_state(&fock, BinomialParams::new(cfg.n, cfg.k)?)?,
        WignerSource::Chain => {
            let (breeder, input) = setup(cfg)?;
            let target = qunaught_state(&fock, cfg.qunaught_params(cfg.delta_target))?;
            run_chain(&breeder, &input, &target, &cfg.parsed_schedule()?, &cfg.selections()?)?.state
        }
    };
    let axis = linspace(cfg.grid_min, cfg.grid_max, cfg.grid_points);
    let grid = wigner(&state, &axis, &axis)?;
    let density = position_density(&state, &axis)?;

    const CMD: &str = "wigner";
    if cfg.output_format == OutputFormat::Json {
        #[derive(Serialize)]
        struct Report<'a> {
            q: &'a [f64],
            p: &'a [f64],
            wigner: Vec<&'a [f64]>,
            position_density: &'a [f64],
        }
        let rows = (0..grid.q.len()).map(|i| grid.row(i)).collect();
        let report = Report {
            q: &grid.q,
            p: &grid.p,
            wigner: rows,
            position_density: &density,
        };
        return Ok(vec![json_artifact(CMD, CMD, cfg, report)?]);
    }

    let mut text = text_header(CMD, cfg)?;
    text.push_str(&format!(
        "# rows: q from {} to {} ({} points); columns: p over the same range\n",
        cfg.grid_min, cfg.grid_max, cfg.grid_points
    ));
    for i in 0..grid.q.len() {
        let row: Vec<String> = grid.row(i).iter().map(|v| format!("{v:.10e}")).collect();
        text.push_str(&row.join(","));
        text.push('\n');
    }
    Ok(vec![
        Artifact {
            name: "wigner".into(),
            extension: "txt",
            content: text,
        },
        csv_artifact(
            "density",
            CMD,
            cfg,
            &["q", "density"],
            axis.iter().zip(&density).map(|(q, d)| vec![num(*q), num(*d)]),
        )?,
    ])
}
