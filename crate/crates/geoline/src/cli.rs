//! Argument parsing and dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use geoline_core::geopolitics::{
    border_effect, foc_partials, national_opinions, opinion_variance_sensitivity, separatism_profile,
    stability_compensation, state0_shock,
};
use geoline_core::migration::{migration_flow, MigrationResult};
use geoline_core::network::{check_pairwise_stable, equilibrium_counts, simulate_run, EquilibriumDistribution};
use geoline_core::solver::{audit_equilibrium, solve_partition, solve_partition_se, Deviation};
use geoline_core::trade::{decompose_change, shortest_distance, trade_matrix, Shock, ShockParameter};
use geoline_core::{ModelParams, Partition};

use crate::document::PartitionDocument;
use crate::error::{CliError, Result};
use crate::json::{self, float, opt_float, Table};
use crate::network_io::{GraphDocument, NetworkDocument, StabilityDoc};

/// Caps the worker threads of `network prob`.
pub const THREADS_ENV: &str = "GEOLINE_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "geoline",
    version,
    about = "Equilibrium state borders on a linear world",
    long_about = "Equilibrium state borders on a linear world.\n\n\
        Exit codes: 0 success, 1 invalid input or usage, 2 no numerical answer \
        (infeasible central state, shock that changes the state count)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct ModelArgs {
    /// Foreign trade cost per unit distance.
    #[arg(long, default_value_t = 1.0)]
    tau: f64,
    /// Governance cost per unit of state size.
    #[arg(long, default_value_t = 0.2)]
    h: f64,
    /// Utility curvature, above 1.
    #[arg(long, default_value_t = 2.0)]
    gamma: f64,
    /// Land share in production.
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    /// Scale of labor's marginal utility.
    #[arg(long, default_value_t = 1.0)]
    psi: f64,
    /// Border root tolerance.
    #[arg(long, default_value_t = ModelParams::DEFAULT_EPS_BORDER)]
    eps_border: f64,
    /// Smallest state size before the polar semi-state.
    #[arg(long, default_value_t = ModelParams::DEFAULT_EPS_SIZE)]
    eps_size: f64,
    /// Finite-difference step.
    #[arg(long, default_value_t = ModelParams::DEFAULT_FD_STEP)]
    fd_step: f64,
}

impl ModelArgs {
    fn params(&self) -> Result<ModelParams> {
        let p = ModelParams {
            tau: self.tau,
            h: self.h,
            gamma: self.gamma,
            alpha: self.alpha,
            psi: self.psi,
            eps_border: self.eps_border,
            eps_size: self.eps_size,
            fd_step: self.fd_step,
        };
        p.validate()?;
        Ok(p)
    }
}

/// Where a partition comes from: a file, or solved from the model options.
#[derive(Args, Debug, Clone)]
struct Source {
    #[command(flatten)]
    model: ModelArgs,
    /// Partition document to analyse; model options are then ignored.
    #[arg(long)]
    partition: Option<PathBuf>,
}

impl Source {
    fn partition(&self) -> Result<Partition> {
        match &self.partition {
            Some(path) => PartitionDocument::parse(&read(path)?)?.to_partition(),
            None => Ok(solve_partition(&self.model.params()?)?),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
struct Output {
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Param {
    Tau,
    H,
}

impl Param {
    fn shock(self, delta: f64) -> Shock {
        match self {
            Param::Tau => Shock::tau(delta),
            Param::H => Shock::h(delta),
        }
    }
}

fn param_name(p: ShockParameter) -> &'static str {
    match p {
        ShockParameter::Tau => "tau",
        ShockParameter::H => "h",
    }
}

#[derive(Args, Debug, Clone)]
struct Pair {
    /// Origin state index.
    #[arg(long, allow_hyphen_values = true)]
    from: Option<i32>,
    /// Destination state index.
    #[arg(long, allow_hyphen_values = true)]
    to: Option<i32>,
}

impl Pair {
    fn get(&self) -> Result<Option<(i32, i32)>> {
        match (self.from, self.to) {
            (Some(m), Some(n)) => Ok(Some((m, n))),
            (None, None) => Ok(None),
            _ => Err(CliError::invalid("--from and --to must be given together")),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve the equilibrium partition.
    ///
    /// CSV columns: index,left,right,size,remoteness,is_polar.
    Solve {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Gravity flows between states; every ordered pair of non-polar states
    /// including domestic trade unless --from/--to is given.
    ///
    /// CSV columns: exporter,importer,distance,flow.
    Gravity {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        pair: Pair,
        /// Use the exact integral instead of the Newtonian approximation.
        #[arg(long)]
        exact: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Migration flows; every adjacent pair toward the center unless
    /// --from/--to is given.
    ///
    /// CSV columns: from,to,flow,unweighted_flow,phi_from,phi_to,residual.
    Migrate {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        pair: Pair,
        #[command(flatten)]
        output: Output,
    },
    /// Decompose the change in log trade under a parameter shock.
    ///
    /// CSV columns: exporter,importer,size_effect,direct_effect,location_effect,total.
    Decompose {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_enum)]
        param: Param,
        #[arg(long, allow_hyphen_values = true)]
        delta: f64,
        #[command(flatten)]
        pair: Pair,
        #[command(flatten)]
        output: Output,
    },
    /// Comparative statics.
    Statics {
        #[command(subcommand)]
        which: Statics,
    },
    /// Partition under universal suffrage with labor weight --phi.
    ///
    /// CSV columns: index,left,right,size,remoteness,is_polar.
    Suffrage {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 1.0)]
        phi: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Audit a partition: FOC residuals, overlord unimodality, locale
    /// deviations.
    ///
    /// CSV columns: state,border,argmax,unimodal,overlord_ok,locales_checked,locale_failures.
    Verify {
        #[command(flatten)]
        source: Source,
        /// Spacing of the overlord search grid.
        #[arg(long, default_value_t = 1e-3)]
        grid: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Network formation over arbitrary geography.
    Network {
        #[command(subcommand)]
        which: Network,
    },
}

#[derive(Subcommand, Debug)]
enum Statics {
    /// Border effect (1 + b) / (1 - b) at every right border, or at --b.
    ///
    /// CSV columns: border,border_effect.
    BorderEffect {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        b: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
    /// FOC partials and the stability compensation of each state.
    ///
    /// CSV columns: index,f_s,f_b,f_tau,f_h,compensation.
    Stability {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
    },
    /// Response of every border and size to a shift of the central border.
    ///
    /// CSV columns: index,border_change,size_change,db_db0_fd,ds_db0_fd,
    /// db_db0_analytic,ds_db0_analytic,ds_dbprev_analytic,f_b_positive.
    State0Shock {
        #[command(flatten)]
        model: ModelArgs,
        /// Central-border shift; defaults to the finite-difference step.
        #[arg(long, allow_hyphen_values = true)]
        delta: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
    /// National opinions and the change of their variance under a shock.
    ///
    /// CSV columns: index,opinion,size_partial.
    OpinionVar {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_enum, default_value_t = Param::Tau)]
        param: Param,
        #[arg(long, allow_hyphen_values = true, default_value_t = 1e-4)]
        delta: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Separatism at evenly spaced locales of every non-central state.
    ///
    /// CSV columns: state,t,sigma,overlap,ideal_left,ideal_right,dsigma_dtau,dsigma_dr.
    Separatism {
        #[command(flatten)]
        source: Source,
        /// Locales per state.
        #[arg(long, default_value_t = 8)]
        samples: usize,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Subcommand, Debug)]
enum Network {
    /// Run the formation dynamics once.
    ///
    /// CSV columns: i,j (one row per edge).
    Simulate {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the config's seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Run index within the seed's stream family.
        #[arg(long, default_value_t = 0)]
        run: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Pairwise stability of a given graph.
    ///
    /// CSV columns: i,j,linked,margin,violation.
    Check {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Distribution of final graphs over many shocked runs.
    ///
    /// CSV columns: edges,count,frequency (edges as a-b pairs joined by `;`).
    Prob {
        #[arg(long)]
        config: PathBuf,
        /// Master seed; required so every distribution is reproducible.
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        runs: u64,
        #[command(flatten)]
        output: Output,
    },
}

/// Parses `args` (program name first), runs the command and reports the
/// exit code.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| CliError::io(path, e))
}

fn emit<T: Serialize>(output: &Output, value: &T, table: impl FnOnce() -> Table) -> Result<()> {
    let bytes = match output.format {
        Format::Json => json::to_bytes(value)?,
        Format::Csv => table().to_bytes()?,
    };
    match &output.out {
        Some(path) => std::fs::write(path, bytes).map_err(|e| CliError::io(path, e)),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(&bytes)
                .and_then(|_| out.flush())
                .map_err(|e| CliError::io(Path::new("<stdout>"), e))
        }
    }
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Solve { model, output } => emit_partition(&output, &solve_partition(&model.params()?)?),
        Command::Gravity {
            source,
            pair,
            exact,
            output,
        } => gravity(&source.partition()?, pair.get()?, exact, &output),
        Command::Migrate { source, pair, output } => migrate(&source.partition()?, pair.get()?, &output),
        Command::Decompose {
            model,
            param,
            delta,
            pair,
            output,
        } => decompose(&model.params()?, param.shock(delta), pair.get()?, &output),
        Command::Statics { which } => statics(which),
        Command::Suffrage { model, phi, output } => {
            emit_partition(&output, &solve_partition_se(&model.params()?, phi)?)
        }
        Command::Verify { source, grid, output } => verify(&source.partition()?, grid, &output),
        Command::Network { which } => network(which),
    }
}

fn emit_partition(output: &Output, p: &Partition) -> Result<()> {
    let doc = PartitionDocument::from_partition(p);
    emit(output, &doc, || {
        let mut t = Table::new(&["index", "left", "right", "size", "remoteness", "is_polar"]);
        for s in &doc.states {
            t.push(vec![
                s.index.to_string(),
                float(s.left),
                float(s.right),
                float(s.size),
                float(s.remoteness),
                s.is_polar.to_string(),
            ]);
        }
        t
    })
}

#[derive(Serialize)]
struct FlowRow {
    exporter: i32,
    importer: i32,
    distance: f64,
    flow: f64,
}

#[derive(Serialize)]
struct GravityDoc {
    form: &'static str,
    flows: Vec<FlowRow>,
}

fn gravity(p: &Partition, pair: Option<(i32, i32)>, exact: bool, output: &Output) -> Result<()> {
    let matrix = trade_matrix(p)?;
    let pos = |k: i32| {
        matrix.indices.iter().position(|&i| i == k).ok_or_else(|| {
            CliError::from(match p.state(k) {
                Some(_) => geoline_core::Error::PolarState(k),
                None => geoline_core::Error::UnknownState(k),
            })
        })
    };
    let pairs: Vec<(usize, usize)> = match pair {
        Some((m, n)) => {
            if m == n {
                return Err(geoline_core::Error::SameState(m).into());
            }
            vec![(pos(m)?, pos(n)?)]
        }
        None => {
            let k = matrix.indices.len();
            (0..k).flat_map(|a| (0..k).map(move |b| (a, b))).collect()
        }
    };
    let mut flows = Vec::with_capacity(pairs.len());
    for (a, b) in pairs {
        let (m, n) = (matrix.indices[a], matrix.indices[b]);
        let values = if exact { &matrix.exact } else { &matrix.newton };
        flows.push(FlowRow {
            exporter: m,
            importer: n,
            distance: shortest_distance(p, m, n)?,
            flow: values[a][b],
        });
    }
    let doc = GravityDoc {
        form: if exact { "exact" } else { "newton" },
        flows,
    };
    emit(output, &doc, || {
        let mut t = Table::new(&["exporter", "importer", "distance", "flow"]);
        for f in &doc.flows {
            t.push(vec![
                f.exporter.to_string(),
                f.importer.to_string(),
                float(f.distance),
                float(f.flow),
            ]);
        }
        t
    })
}

#[derive(Serialize)]
struct MigrationRow {
    from: i32,
    to: i32,
    flow: f64,
    unweighted_flow: f64,
    phi_from: f64,
    phi_to: f64,
    residual: f64,
}

impl From<MigrationResult> for MigrationRow {
    fn from(r: MigrationResult) -> Self {
        MigrationRow {
            from: r.from_state,
            to: r.to_state,
            flow: r.flow,
            unweighted_flow: r.unweighted_flow,
            phi_from: r.phi_from,
            phi_to: r.phi_to,
            residual: r.residual,
        }
    }
}

fn migrate(p: &Partition, pair: Option<(i32, i32)>, output: &Output) -> Result<()> {
    let pairs: Vec<(i32, i32)> = match pair {
        Some(mn) => vec![mn],
        None => {
            let n = p.n_interior() as i32;
            (1..=n)
                .rev()
                .map(|k| (-k, 1 - k))
                .chain((1..=n).map(|k| (k, k - 1)))
                .collect()
        }
    };
    let rows: Vec<MigrationRow> = pairs
        .into_iter()
        .map(|(m, n)| migration_flow(p, m, n).map(MigrationRow::from))
        .collect::<std::result::Result<_, _>>()?;
    emit(output, &rows, || {
        let mut t = Table::new(&[
            "from",
            "to",
            "flow",
            "unweighted_flow",
            "phi_from",
            "phi_to",
            "residual",
        ]);
        for r in &rows {
            t.push(vec![
                r.from.to_string(),
                r.to.to_string(),
                float(r.flow),
                float(r.unweighted_flow),
                float(r.phi_from),
                float(r.phi_to),
                float(r.residual),
            ]);
        }
        t
    })
}

#[derive(Serialize)]
struct DecompositionRow {
    exporter: i32,
    importer: i32,
    size_effect: f64,
    direct_effect: f64,
    location_effect: f64,
    total: f64,
}

#[derive(Serialize)]
struct DecompositionDoc {
    parameter: &'static str,
    delta: f64,
    rows: Vec<DecompositionRow>,
}

fn decompose(params: &ModelParams, shock: Shock, pair: Option<(i32, i32)>, output: &Output) -> Result<()> {
    let pairs = match pair {
        Some(mn) => vec![mn],
        None => {
            let p = solve_partition(params)?;
            let idx: Vec<i32> = p.states().iter().filter(|s| !s.is_polar).map(|s| s.index).collect();
            idx.iter()
                .flat_map(|&m| idx.iter().filter(move |&&n| n != m).map(move |&n| (m, n)))
                .collect()
        }
    };
    let mut rows = Vec::with_capacity(pairs.len());
    for (m, n) in pairs {
        let d = decompose_change(params, shock, m, n)?;
        rows.push(DecompositionRow {
            exporter: m,
            importer: n,
            size_effect: d.size_effect,
            direct_effect: d.direct_effect,
            location_effect: d.location_effect,
            total: d.total,
        });
    }
    let doc = DecompositionDoc {
        parameter: param_name(shock.parameter),
        delta: shock.delta,
        rows,
    };
    emit(output, &doc, || {
        let mut t = Table::new(&[
            "exporter",
            "importer",
            "size_effect",
            "direct_effect",
            "location_effect",
            "total",
        ]);
        for r in &doc.rows {
            t.push(vec![
                r.exporter.to_string(),
                r.importer.to_string(),
                float(r.size_effect),
                float(r.direct_effect),
                float(r.location_effect),
                float(r.total),
            ]);
        }
        t
    })
}

#[derive(Serialize)]
struct BorderEffectRow {
    border: f64,
    border_effect: f64,
}

#[derive(Serialize)]
struct StabilityRow {
    index: i32,
    f_s: f64,
    f_b: Option<f64>,
    f_tau: f64,
    f_h: f64,
    compensation: f64,
}

#[derive(Serialize)]
struct ShockRowDoc {
    index: i32,
    border_change: f64,
    size_change: f64,
    db_db0_fd: Option<f64>,
    ds_db0_fd: Option<f64>,
    db_db0_analytic: f64,
    ds_db0_analytic: f64,
    ds_dbprev_analytic: f64,
    f_b_positive: bool,
}

#[derive(Serialize)]
struct ShockDoc {
    b0: f64,
    delta_b0: f64,
    rows: Vec<ShockRowDoc>,
}

#[derive(Serialize)]
struct OpinionRow {
    index: i32,
    opinion: f64,
    size_partial: Option<f64>,
}

#[derive(Serialize)]
struct OpinionDoc {
    parameter: &'static str,
    delta: f64,
    mean: f64,
    base_variance: f64,
    shocked_variance: f64,
    d_var: f64,
    state_partials_ok: bool,
    states: Vec<OpinionRow>,
}

#[derive(Serialize)]
struct SeparatismRow {
    state: i32,
    t: f64,
    sigma: f64,
    overlap: f64,
    ideal_left: f64,
    ideal_right: f64,
    dsigma_dtau: f64,
    dsigma_dr: f64,
}

fn statics(which: Statics) -> Result<()> {
    match which {
        Statics::BorderEffect { source, b, output } => {
            let borders = match b {
                Some(b) => vec![b],
                None => source.partition()?.right_borders().to_vec(),
            };
            let rows: Vec<BorderEffectRow> = borders
                .into_iter()
                .map(|b| {
                    border_effect(b).map(|v| BorderEffectRow {
                        border: b,
                        border_effect: v,
                    })
                })
                .collect::<std::result::Result<_, _>>()?;
            emit(&output, &rows, || {
                let mut t = Table::new(&["border", "border_effect"]);
                for r in &rows {
                    t.push(vec![float(r.border), float(r.border_effect)]);
                }
                t
            })
        }
        Statics::Stability { source, output } => {
            let p = source.partition()?;
            let mut rows = Vec::new();
            for s in p.right_hemisphere().iter().filter(|s| !s.is_polar) {
                let f = foc_partials(&p, s.index)?;
                rows.push(StabilityRow {
                    index: s.index,
                    f_s: f.f_s,
                    f_b: f.f_b,
                    f_tau: f.f_tau,
                    f_h: f.f_h,
                    compensation: stability_compensation(&p, s.index)?,
                });
            }
            emit(&output, &rows, || {
                let mut t = Table::new(&["index", "f_s", "f_b", "f_tau", "f_h", "compensation"]);
                for r in &rows {
                    t.push(vec![
                        r.index.to_string(),
                        float(r.f_s),
                        opt_float(r.f_b),
                        float(r.f_tau),
                        float(r.f_h),
                        float(r.compensation),
                    ]);
                }
                t
            })
        }
        Statics::State0Shock { model, delta, output } => {
            let params = model.params()?;
            let table = state0_shock(&params, delta.unwrap_or(params.fd_step))?;
            let doc = ShockDoc {
                b0: table.b0,
                delta_b0: table.delta_b0,
                rows: table
                    .rows
                    .iter()
                    .map(|r| ShockRowDoc {
                        index: r.index,
                        border_change: r.border_change,
                        size_change: r.size_change,
                        db_db0_fd: r.db_db0_fd,
                        ds_db0_fd: r.ds_db0_fd,
                        db_db0_analytic: r.db_db0_analytic,
                        ds_db0_analytic: r.ds_db0_analytic,
                        ds_dbprev_analytic: r.ds_dbprev_analytic,
                        f_b_positive: r.f_b_positive,
                    })
                    .collect(),
            };
            emit(&output, &doc, || {
                let mut t = Table::new(&[
                    "index",
                    "border_change",
                    "size_change",
                    "db_db0_fd",
                    "ds_db0_fd",
                    "db_db0_analytic",
                    "ds_db0_analytic",
                    "ds_dbprev_analytic",
                    "f_b_positive",
                ]);
                for r in &doc.rows {
                    t.push(vec![
                        r.index.to_string(),
                        float(r.border_change),
                        float(r.size_change),
                        opt_float(r.db_db0_fd),
                        opt_float(r.ds_db0_fd),
                        float(r.db_db0_analytic),
                        float(r.ds_db0_analytic),
                        float(r.ds_dbprev_analytic),
                        r.f_b_positive.to_string(),
                    ]);
                }
                t
            })
        }
        Statics::OpinionVar {
            model,
            param,
            delta,
            output,
        } => {
            let params = model.params()?;
            let shock = param.shock(delta);
            let v = opinion_variance_sensitivity(&params, shock)?;
            let p = solve_partition(&params)?;
            let stats = national_opinions(&p);
            let states = p
                .right_hemisphere()
                .iter()
                .map(|s| OpinionRow {
                    index: s.index,
                    opinion: stats.opinions[&s.index],
                    size_partial: v.state_partials.iter().find(|(k, _)| *k == s.index).map(|(_, x)| *x),
                })
                .collect();
            let doc = OpinionDoc {
                parameter: param_name(shock.parameter),
                delta,
                mean: stats.mean,
                base_variance: v.base_variance,
                shocked_variance: v.shocked_variance,
                d_var: v.d_var,
                state_partials_ok: v.state_partials_ok,
                states,
            };
            emit(&output, &doc, || {
                let mut t = Table::new(&["index", "opinion", "size_partial"]);
                for r in &doc.states {
                    t.push(vec![r.index.to_string(), float(r.opinion), opt_float(r.size_partial)]);
                }
                t
            })
        }
        Statics::Separatism {
            source,
            samples,
            output,
        } => {
            let rows: Vec<SeparatismRow> = separatism_profile(&source.partition()?, samples)?
                .into_iter()
                .map(|s| SeparatismRow {
                    state: s.state,
                    t: s.t,
                    sigma: s.sigma,
                    overlap: s.overlap,
                    ideal_left: s.ideal_left,
                    ideal_right: s.ideal_right,
                    dsigma_dtau: s.dsigma_dtau,
                    dsigma_dr: s.dsigma_dr,
                })
                .collect();
            emit(&output, &rows, || {
                let mut t = Table::new(&[
                    "state",
                    "t",
                    "sigma",
                    "overlap",
                    "ideal_left",
                    "ideal_right",
                    "dsigma_dtau",
                    "dsigma_dr",
                ]);
                for r in &rows {
                    t.push(vec![
                        r.state.to_string(),
                        float(r.t),
                        float(r.sigma),
                        float(r.overlap),
                        float(r.ideal_left),
                        float(r.ideal_right),
                        float(r.dsigma_dtau),
                        float(r.dsigma_dr),
                    ]);
                }
                t
            })
        }
    }
}

#[derive(Serialize)]
struct OverlordRow {
    state: i32,
    border: f64,
    argmax: f64,
    unimodal: bool,
    ok: bool,
}

#[derive(Serialize)]
struct LocaleRow {
    state: i32,
    t: f64,
    assigned_remoteness: f64,
    best_alternative: f64,
    deviation: String,
}

#[derive(Serialize)]
struct AuditDoc {
    grid_step: f64,
    passed: bool,
    max_foc_residual: f64,
    overlord_unimodality_ok: bool,
    locale_remoteness_minimal_ok: bool,
    implicated_states: Vec<i32>,
    locales_checked: usize,
    overlord: Vec<OverlordRow>,
    locale_failures: Vec<LocaleRow>,
}

fn deviation_name(d: Deviation) -> String {
    match d {
        Deviation::OwnState => "own_state".to_string(),
        Deviation::JoinProximal { state } => format!("join_{state}"),
    }
}

/// Audit results; a failed audit still exits 0 with `passed: false`.
fn verify(p: &Partition, grid: f64, output: &Output) -> Result<()> {
    let audit = audit_equilibrium(p, grid)?;
    let doc = AuditDoc {
        grid_step: audit.grid_step,
        passed: audit.passed(),
        max_foc_residual: audit.max_foc_residual,
        overlord_unimodality_ok: audit.overlord_unimodality_ok(),
        locale_remoteness_minimal_ok: audit.locale_remoteness_minimal_ok(),
        implicated_states: audit.implicated_states(),
        locales_checked: audit.locales.len(),
        overlord: audit
            .overlord
            .iter()
            .map(|c| OverlordRow {
                state: c.index,
                border: c.border,
                argmax: c.argmax,
                unimodal: c.unimodal,
                ok: c.ok,
            })
            .collect(),
        locale_failures: audit
            .locales
            .iter()
            .filter(|c| !c.ok)
            .map(|c| LocaleRow {
                state: c.state,
                t: c.t,
                assigned_remoteness: c.assigned_remoteness,
                best_alternative: c.best_alternative,
                deviation: deviation_name(c.deviation),
            })
            .collect(),
    };
    emit(output, &doc, || {
        let mut t = Table::new(&[
            "state",
            "border",
            "argmax",
            "unimodal",
            "overlord_ok",
            "locales_checked",
            "locale_failures",
        ]);
        for o in &doc.overlord {
            let mine = audit.locales.iter().filter(|c| c.state == o.state);
            let checked = mine.clone().count();
            let failed = mine.filter(|c| !c.ok).count();
            t.push(vec![
                o.state.to_string(),
                float(o.border),
                float(o.argmax),
                o.unimodal.to_string(),
                o.ok.to_string(),
                checked.to_string(),
                failed.to_string(),
            ]);
        }
        t
    })
}

#[derive(Serialize)]
struct SimulationDoc {
    seed: u64,
    run: u64,
    edges: Vec<[String; 2]>,
    stability: StabilityDoc,
}

#[derive(Serialize)]
struct GraphFrequency {
    edges: Vec<[String; 2]>,
    count: u64,
    frequency: f64,
}

#[derive(Serialize)]
struct DistributionDoc {
    seed: u64,
    runs: u64,
    graphs: Vec<GraphFrequency>,
}

fn load_network(path: &Path) -> Result<NetworkDocument> {
    NetworkDocument::parse(&read(path)?)
}

fn network(which: Network) -> Result<()> {
    match which {
        Network::Simulate {
            config,
            seed,
            run,
            output,
        } => {
            let mut doc = load_network(&config)?;
            if let Some(s) = seed {
                doc.seed = s;
            }
            let config = doc.to_config()?;
            let graph = simulate_run(&config, run);
            let report = check_pairwise_stable(&graph, &config)?;
            let out = SimulationDoc {
                seed: doc.seed,
                run,
                edges: GraphDocument::from_graph(&graph, &config).edges,
                stability: StabilityDoc::new(&report, &config),
            };
            emit(&output, &out, || {
                let mut t = Table::new(&["i", "j"]);
                for [a, b] in &out.edges {
                    t.push(vec![a.clone(), b.clone()]);
                }
                t
            })
        }
        Network::Check { config, graph, output } => {
            let config = load_network(&config)?.to_config()?;
            let graph = GraphDocument::parse(&read(&graph)?)?.to_graph(&config)?;
            let report = check_pairwise_stable(&graph, &config)?;
            let doc = StabilityDoc::new(&report, &config);
            emit(&output, &doc, || {
                let mut t = Table::new(&["i", "j", "linked", "margin", "violation"]);
                for m in &report.margins {
                    let violation = (m.linked && m.margin < 0.0) || (!m.linked && m.margin > 0.0);
                    t.push(vec![
                        config.ids()[m.i].clone(),
                        config.ids()[m.j].clone(),
                        m.linked.to_string(),
                        float(m.margin),
                        violation.to_string(),
                    ]);
                }
                t
            })
        }
        Network::Prob {
            config,
            seed,
            runs,
            output,
        } => {
            if runs == 0 {
                return Err(CliError::invalid("--runs must be at least 1"));
            }
            let mut doc = load_network(&config)?;
            doc.seed = seed;
            let config = doc.to_config()?;
            let dist = parallel_counts(&config, runs, thread_cap()?);
            let out = DistributionDoc {
                seed,
                runs: dist.runs,
                graphs: dist
                    .counts
                    .iter()
                    .map(|(key, &count)| GraphFrequency {
                        edges: key.iter().map(|(a, b)| [a.clone(), b.clone()]).collect(),
                        count,
                        frequency: count as f64 / dist.runs as f64,
                    })
                    .collect(),
            };
            emit(&output, &out, || {
                let mut t = Table::new(&["edges", "count", "frequency"]);
                for g in &out.graphs {
                    let edges: Vec<String> = g.edges.iter().map(|[a, b]| format!("{a}-{b}")).collect();
                    t.push(vec![edges.join(";"), g.count.to_string(), float(g.frequency)]);
                }
                t
            })
        }
    }
}

/// Thread count from the environment cap, else the machine's parallelism.
fn thread_cap() -> Result<usize> {
    let available = std::thread::available_parallelism().map_or(1, |n| n.get());
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n.min(available.max(1))),
            _ => Err(CliError::invalid(format!(
                "{THREADS_ENV} must be a positive integer, found `{v}`"
            ))),
        },
        Err(_) => Ok(available),
    }
}

/// Splits `0..runs` into contiguous chunks, one per thread. Counts merge
/// by addition, so the result does not depend on the thread count.
fn parallel_counts(
    config: &geoline_core::network::NetworkConfig,
    runs: u64,
    threads: usize,
) -> EquilibriumDistribution {
    let threads = (threads as u64).clamp(1, runs);
    let chunk = runs.div_ceil(threads);
    let mut total = EquilibriumDistribution::default();
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|k| {
                let range = k * chunk..((k + 1) * chunk).min(runs);
                scope.spawn(move || equilibrium_counts(config, range))
            })
            .collect();
        for h in handles {
            total.merge(h.join().expect("worker thread panicked"));
        }
    });
    total
}
