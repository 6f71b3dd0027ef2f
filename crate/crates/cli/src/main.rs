//! `swapnet`: simulate entanglement swapping of noisy states in chain and
//! star networks and certify the nonclassicality of the swapped states.

mod output;
mod scenario;

use std::collections::BTreeMap;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use output::{
    print_json, Format, RepeaterCell, RepeaterOutput, ScanResult, SuperadditivityOutput,
    SuperadditivityRow, SwapOutput,
};
use scenario::{applicable_criteria, evaluate_criterion, threshold_report, Scenario};
use swapnet_core::nonclassicality::{
    critical_visibility, eof, functional_parent_threshold, CriterionReport,
};
use swapnet_core::states::rho_lambda;
use swapnet_core::swap::chain_swap;
use swapnet_core::{OutcomePolicy, Topology};

#[derive(Parser)]
#[command(
    name = "swapnet",
    version,
    about = "Entanglement swapping of noisy states: chain and star networks, \
             Bell-type violation criteria, critical-visibility searches"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one swap and report nonclassicality criteria for the swapped state.
    Swap(SwapArgs),
    /// Bisect the critical parent visibility at which a criterion flips.
    Threshold(ThresholdArgs),
    /// Tabulate functional-Bell vs MK critical visibilities over star sizes.
    Superadditivity(SuperadditivityArgs),
    /// Scan the two-parameter repeater family for entanglement-of-formation
    /// gain after one swap.
    RepeaterScan(RepeaterScanArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TopologyArg {
    Chain,
    Star,
}

impl From<TopologyArg> for Topology {
    fn from(t: TopologyArg) -> Self {
        match t {
            TopologyArg::Chain => Topology::Chain,
            TopologyArg::Star => Topology::Star,
        }
    }
}

#[derive(Args)]
struct SwapArgs {
    /// Network layout: chain of pairwise Bell measurements or a single star
    /// GHZ measurement.
    #[arg(long)]
    topology: TopologyArg,
    /// Number of parent states.
    #[arg(long)]
    n: usize,
    /// Qubits per parent state (2 = Werner parents).
    #[arg(long, default_value_t = 2)]
    m: usize,
    /// Parent visibility in [0, 1].
    #[arg(long, visible_alias = "visibility")]
    p: f64,
    /// Comma-separated criteria (chsh, mk-xy, tensor2, functional, ppt, eof);
    /// defaults to every criterion applicable to the swapped state.
    #[arg(long, value_delimiter = ',')]
    criteria: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct ThresholdArgs {
    #[arg(long)]
    topology: TopologyArg,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    m: usize,
    /// Criterion whose violation onset is searched.
    #[arg(long)]
    criterion: String,
    /// Bisection bracket "lo,hi" on the parent visibility; the criterion must
    /// not be violated at lo and violated at hi.
    #[arg(long, value_parser = parse_bracket)]
    bracket: (f64, f64),
    /// Optional evaluation grid "lo,hi,steps" (inclusive endpoints) for
    /// per-point reports alongside the threshold.
    #[arg(long, value_parser = parse_grid)]
    grid: Option<GridSpec>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct SuperadditivityArgs {
    /// Smallest star size N.
    #[arg(long, default_value_t = 2)]
    n_min: usize,
    /// Largest star size N.
    #[arg(long, default_value_t = 12)]
    n_max: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct RepeaterScanArgs {
    /// Grid "lo,hi,steps" for the amplitude a; midpoints of the open
    /// interval are evaluated.
    #[arg(long, value_parser = parse_grid, default_value = "0,1,50")]
    a_grid: GridSpec,
    /// Grid "lo,hi,steps" for the mixing weight λ (midpoints).
    #[arg(long, value_parser = parse_grid, default_value = "0.5,1,50")]
    lambda_grid: GridSpec,
    /// Evaluate a single amplitude instead of the a-grid.
    #[arg(long)]
    a: Option<f64>,
    /// Evaluate a single mixing weight instead of the λ-grid.
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Debug, Clone, Copy)]
struct GridSpec {
    lo: f64,
    hi: f64,
    steps: usize,
}

impl GridSpec {
    /// Inclusive, strictly increasing linspace.
    fn inclusive(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.lo];
        }
        let h = (self.hi - self.lo) / (self.steps - 1) as f64;
        (0..self.steps).map(|k| self.lo + k as f64 * h).collect()
    }

    /// Midpoints of `steps` equal cells, strictly inside the open interval.
    fn midpoints(&self) -> Vec<f64> {
        let h = (self.hi - self.lo) / self.steps as f64;
        (0..self.steps)
            .map(|k| self.lo + (k as f64 + 0.5) * h)
            .collect()
    }
}

fn parse_bracket(s: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected \"lo,hi\", got {s:?}"));
    }
    let lo: f64 = parts[0].trim().parse().map_err(|e| format!("lo: {e}"))?;
    let hi: f64 = parts[1].trim().parse().map_err(|e| format!("hi: {e}"))?;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(format!("bracket [{lo}, {hi}] is not an increasing pair"));
    }
    Ok((lo, hi))
}

fn parse_grid(s: &str) -> Result<GridSpec, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected \"lo,hi,steps\", got {s:?}"));
    }
    let lo: f64 = parts[0].trim().parse().map_err(|e| format!("lo: {e}"))?;
    let hi: f64 = parts[1].trim().parse().map_err(|e| format!("hi: {e}"))?;
    let steps: usize = parts[2].trim().parse().map_err(|e| format!("steps: {e}"))?;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) || steps == 0 {
        return Err(format!("grid [{lo}, {hi}] x {steps} is not increasing"));
    }
    Ok(GridSpec { lo, hi, steps })
}

fn cmd_swap(args: SwapArgs) -> Result<()> {
    if !(0.0..=1.0).contains(&args.p) {
        bail!("--p {} is outside [0, 1]", args.p);
    }
    let scenario = Scenario::new(args.topology.into(), args.n, args.m)?;
    let swapped = scenario
        .swapped(args.p)
        .with_context(|| format!("running {}", scenario.label(args.p)))?;
    let names: Vec<String> = if args.criteria.is_empty() {
        applicable_criteria(swapped.n_qubits())
            .into_iter()
            .map(str::to_string)
            .collect()
    } else {
        args.criteria
    };
    let reports = names
        .iter()
        .map(|name| evaluate_criterion(&swapped, name))
        .collect::<Result<Vec<CriterionReport>>>()?;
    let out = SwapOutput {
        scenario: scenario.label(args.p),
        topology: format!("{:?}", scenario.topology).to_lowercase(),
        n_parents: scenario.n_parents,
        qubits_per_parent: scenario.qubits_per_parent,
        visibility: args.p,
        state_qubits: swapped.n_qubits(),
        reports,
    };
    match args.format {
        Format::Json => print_json(&out)?,
        Format::Csv => out.print_csv(),
    }
    Ok(())
}

fn cmd_threshold(args: ThresholdArgs) -> Result<()> {
    let scenario = Scenario::new(args.topology.into(), args.n, args.m)?;
    let criterion = args.criterion.clone();
    let (lo, hi) = args.bracket;
    let crossing = critical_visibility(
        |p| {
            threshold_report(&scenario, &criterion, p)
                .map(|r| r.violated)
                .map_err(|e| swapnet_core::Error::InvalidArgument(e.to_string()))
        },
        lo,
        hi,
    )?;

    let grid = args.grid.map(|g| g.inclusive()).unwrap_or_default();
    let points = grid
        .iter()
        .map(|&p| Ok(vec![threshold_report(&scenario, &criterion, p)?]))
        .collect::<Result<Vec<_>>>()?;
    let mut thresholds = BTreeMap::new();
    thresholds.insert(criterion, crossing);
    let out = ScanResult {
        scenario: format!(
            "{} n={} m={}",
            match scenario.topology {
                Topology::Chain => "chain",
                Topology::Star => "star",
            },
            scenario.n_parents,
            scenario.qubits_per_parent
        ),
        grid,
        points,
        thresholds,
    };
    match args.format {
        Format::Json => print_json(&out)?,
        Format::Csv => out.print_csv(),
    }
    Ok(())
}

fn cmd_superadditivity(args: SuperadditivityArgs) -> Result<()> {
    if args.n_min < 1 || args.n_min > args.n_max {
        bail!("need 1 <= n-min <= n-max");
    }
    let werner_multisetting = std::f64::consts::FRAC_1_SQRT_2;
    let rows: Vec<SuperadditivityRow> = (args.n_min..=args.n_max)
        .map(|n| {
            let v_functional = functional_parent_threshold(n);
            let exponent = (n as f64 - 1.0) / 2.0;
            let v_mk2 = 2f64.powf(exponent).powf(-1.0 / n as f64);
            SuperadditivityRow {
                n,
                v_functional,
                v_mk2,
                superadditive: v_functional < werner_multisetting,
            }
        })
        .collect();
    let first_superadditive_n =
        (1..=4096).find(|&n| functional_parent_threshold(n) < werner_multisetting);
    let out = SuperadditivityOutput {
        rows,
        first_superadditive_n,
    };
    match args.format {
        Format::Json => print_json(&out)?,
        Format::Csv => out.print_csv(),
    }
    Ok(())
}

fn cmd_repeater_scan(args: RepeaterScanArgs) -> Result<()> {
    let a_values = match args.a {
        Some(a) => vec![a],
        None => args.a_grid.midpoints(),
    };
    let lambda_values = match args.lambda {
        Some(l) => vec![l],
        None => args.lambda_grid.midpoints(),
    };
    let mut cells = Vec::with_capacity(a_values.len() * lambda_values.len());
    let mut gain_cells = 0usize;
    for &a in &a_values {
        for &l in &lambda_values {
            let input = rho_lambda(a, l)?;
            let eof_in = eof(&input)?;
            let swapped = chain_swap(&[input.clone(), input], OutcomePolicy::default())?;
            let eof_out = eof(&swapped)?;
            let gain = eof_out > eof_in;
            if gain {
                gain_cells += 1;
            }
            cells.push(RepeaterCell {
                a,
                lambda: l,
                eof_in,
                eof_out,
                gain,
            });
        }
    }
    let out = RepeaterOutput { cells, gain_cells };
    match args.format {
        Format::Json => print_json(&out)?,
        Format::Csv => out.print_csv(),
    }
    Ok(())
}

fn run() -> Result<()> {
    match Cli::parse().command {
        Command::Swap(args) => cmd_swap(args),
        Command::Threshold(args) => cmd_threshold(args),
        Command::Superadditivity(args) => cmd_superadditivity(args),
        Command::RepeaterScan(args) => cmd_repeater_scan(args),
    }
}

fn main() {
    // Grid output is routinely piped into head/plotting tools; die quietly
    // when the reader closes the pipe instead of panicking on write.
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    if let Err(e) = run() {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}
