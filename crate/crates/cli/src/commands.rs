//! Subcommand definitions and their handlers.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use emergent_space::context::{self, commutator_norm, gelfand_points, joint_context, spectral_context, Observable, SpectralContext};
use emergent_space::gns::{gns, truncated_oscillator};
use emergent_space::pretopology::{check_axioms, check_axioms_sampled, classify_subset, ClosureReport, TopologyVerdict, ENUMERATION_CAP};
use emergent_space::sigma::{expectation, generate_sigma, sigma_from_reachability, validate_measure, Measure, SigmaAlgebra};
use emergent_space::spin::{OrbitReport, SpinState, SpinSystem, ELECTRON_MASS, ELEMENTARY_CHARGE, HBAR};
use emergent_space::tolerance::Tolerances;
use emergent_space::{DynamicalSystem, Error as CoreError, Subset};
use serde_json::Value;

use crate::error::{CliError, CliResult};
use crate::input::{self, Doc};
use crate::json::{self, object, real, reals};
use crate::scenarios;

#[derive(Parser, Debug)]
#[command(name = "emergent-space", version, about = "Space from dynamics and observation")]
pub struct Cli {
    /// Seed for every randomized step (joint diagonalization, sampling).
    #[arg(long, global = true, default_value_t = context::DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Profile::Default)]
    pub tolerance_profile: Profile,
    /// Write the JSON result here instead of stdout. For `spin` this
    /// receives the CSV samples and the report stays on stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Profile {
    Strict,
    Default,
}

impl Profile {
    pub fn tolerances(self) -> Tolerances {
        match self {
            Profile::Strict => Tolerances::STRICT,
            Profile::Default => Tolerances::DEFAULT,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evolve points, trajectories and reachability domains.
    Reach(ReachArgs),
    /// Closure report for one region, or the topology verdict.
    Topology(TopologyArgs),
    /// σ-algebra generated by properties or by reachability domains.
    Sigma(SigmaArgs),
    /// Validate a measure and integrate a function against it.
    Measure(MeasureArgs),
    /// GNS representation of an algebra and state, or the oscillator demo.
    Gns(GnsArgs),
    /// Measure spaces induced by observables.
    Context(ContextArgs),
    /// Spin-1/2 precession in a static field.
    Spin(SpinArgs),
    /// Run a packaged worked example.
    Scenario(ScenarioArgs),
}

#[derive(Args, Debug)]
pub struct ReachArgs {
    #[arg(long)]
    pub system: PathBuf,
    /// Comma-separated labels of the initial region.
    #[arg(long)]
    pub subset: Option<String>,
    /// Defaults to the horizon in the system file.
    #[arg(long)]
    pub horizon: Option<u32>,
    /// Evolve this single state by `--time` steps.
    #[arg(long, requires = "time")]
    pub evolve: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    pub time: Option<i64>,
    /// Trajectory of this state up to the horizon.
    #[arg(long)]
    pub trajectory: Option<String>,
}

#[derive(Args, Debug)]
pub struct TopologyArgs {
    #[arg(long)]
    pub system: PathBuf,
    #[arg(long)]
    pub horizon: Option<u32>,
    #[arg(long)]
    pub subset: Option<String>,
    /// Use the saturating horizon |X|, where the closure is always idempotent.
    #[arg(long, conflicts_with = "horizon")]
    pub saturate: bool,
    /// Random subsets tested when the state space is too large to enumerate.
    #[arg(long, default_value_t = 1 << 16)]
    pub samples: usize,
}

#[derive(Args, Debug)]
pub struct SigmaArgs {
    #[arg(long)]
    pub system: PathBuf,
    /// Property files; each holds one property or an array of them.
    #[arg(long, num_args = 1.., conflicts_with = "from_reachability")]
    pub properties: Vec<PathBuf>,
    /// Generate from the reachability domains of all regions instead.
    #[arg(long)]
    pub from_reachability: bool,
    #[arg(long)]
    pub horizon: Option<u32>,
    /// Also list every member set.
    #[arg(long)]
    pub list_sets: bool,
}

#[derive(Args, Debug)]
pub struct MeasureArgs {
    #[arg(long)]
    pub system: PathBuf,
    /// Point weights `{"label": w, ...}`.
    #[arg(long)]
    pub weights: PathBuf,
    /// Properties generating the σ-algebra; the discrete algebra if absent.
    #[arg(long, num_args = 1..)]
    pub properties: Vec<PathBuf>,
    /// Function `{"label": f, ...}` to integrate.
    #[arg(long)]
    pub function: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GnsArgs {
    #[arg(long, requires = "state", conflicts_with = "oscillator")]
    pub algebra: Option<PathBuf>,
    #[arg(long)]
    pub state: Option<PathBuf>,
    /// Truncated harmonic oscillator with this many levels.
    #[arg(long, value_name = "N")]
    pub oscillator: Option<usize>,
    /// Overrides the profile's relative rank cut for the Gram matrix.
    #[arg(long)]
    pub rank_tol: Option<f64>,
}

#[derive(Args, Debug)]
pub struct ContextArgs {
    #[arg(long)]
    pub state: Option<PathBuf>,
    #[arg(long, num_args = 1.., required = true)]
    pub observables: Vec<PathBuf>,
    /// One measure space for the whole family on a common eigenbasis.
    #[arg(long)]
    pub joint: bool,
    /// Joint eigenvalue tuples of a commuting family; no state needed.
    #[arg(long, conflicts_with = "joint")]
    pub gelfand: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Units {
    /// e = m = ħ = 1.
    Natural,
    /// Electron in a field given in tesla.
    Si,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpinContext {
    /// Measure ψ̂₂; the orbit starts from its −ħ/2 eigenstate.
    Psi2,
    /// Measure ψ̂₃; the orbit starts from |0⟩.
    Psi3,
    /// Track the co-rotated ψ̂₃ along the evolution of |0⟩.
    Corotating,
}

#[derive(Args, Debug)]
pub struct SpinArgs {
    /// Field components `"bx,by,bz"`.
    #[arg(long, default_value = "0,0,1")]
    pub field: String,
    #[arg(long, value_enum, default_value_t = Units::Natural)]
    pub units: Units,
    #[arg(long)]
    pub g: Option<f64>,
    #[arg(long)]
    pub hbar: Option<f64>,
    /// `down`, `up`, `x+`, `x-`, `y+`, `y-`, `z+`, `z-` or `"re0,im0,re1,im1"`.
    #[arg(long, allow_hyphen_values = true)]
    pub state0: Option<String>,
    /// Sampling step in units of 1/B̃.
    #[arg(long, default_value_t = 0.01)]
    pub dt: f64,
    #[arg(long, default_value_t = 700)]
    pub steps: usize,
    /// Bloch-distance tolerance for fixed points and returns.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long, value_enum)]
    pub context: Option<SpinContext>,
    /// Also report the propagator, state and Heisenberg operators at this time.
    #[arg(long, allow_negative_numbers = true)]
    pub at: Option<f64>,
}

#[derive(Args, Debug)]
pub struct ScenarioArgs {
    #[arg(required_unless_present = "list")]
    pub name: Option<String>,
    /// Compare against the golden output; exit 3 on any difference.
    #[arg(long)]
    pub check: bool,
    #[arg(long, conflicts_with_all = ["name", "check"])]
    pub list: bool,
    /// Level count for the oscillator scenario.
    #[arg(long, alias = "N")]
    pub n: Option<usize>,
}

/// What a command produced: the JSON result plus any side file.
pub struct Output {
    pub json: Value,
    /// Pre-rendered text that replaces the JSON rendering (scenario output).
    pub text: Option<String>,
    pub side_file: Option<(PathBuf, String)>,
}

impl Output {
    fn json(json: Value) -> Self {
        Output { json, text: None, side_file: None }
    }
}

pub fn run(cli: &Cli) -> CliResult<Output> {
    let tols = cli.tolerance_profile.tolerances();
    match &cli.command {
        Command::Reach(a) => reach(a).map(Output::json),
        Command::Topology(a) => topology(a, cli.seed).map(Output::json),
        Command::Sigma(a) => sigma(a).map(Output::json),
        Command::Measure(a) => measure(a).map(Output::json),
        Command::Gns(a) => gns_cmd(a, &tols).map(Output::json),
        Command::Context(a) => context_cmd(a, &tols, cli.seed).map(Output::json),
        Command::Spin(a) => spin(a, cli.out.as_deref()),
        Command::Scenario(a) => scenario(a),
    }
}

fn load_system(path: &Path) -> CliResult<DynamicalSystem> {
    input::parse_system(&Doc::read(path)?)
}

fn region(sys: &DynamicalSystem, text: &str) -> CliResult<Subset> {
    Ok(sys.subset(&input::parse_label_list(text))?)
}

fn reach(a: &ReachArgs) -> CliResult<Value> {
    let sys = load_system(&a.system)?;
    let horizon = a.horizon.unwrap_or(sys.time().horizon);
    let mut out = Vec::new();
    if let Some(s) = &a.subset {
        let r = sys.reach(region(&sys, s)?, horizon)?;
        out.push(("subset", json::labels(&sys, r.source)));
        out.push(("horizon", Value::from(r.horizon)));
        out.push(("closure", json::labels(&sys, r.members)));
    }
    if let (Some(x), Some(t)) = (&a.evolve, a.time) {
        let y = sys.evolve(x, t)?;
        out.push(("evolve", object([("state", Value::from(x.trim())), ("time", Value::from(t)), ("result", Value::from(y))])));
    }
    if let Some(x) = &a.trajectory {
        let path = sys.trajectory(x, horizon)?;
        out.push(("trajectory", Value::from(path)));
    }
    if out.is_empty() {
        return Err(CliError::Usage("reach needs --subset, --evolve/--time or --trajectory".into()));
    }
    Ok(object(out))
}

pub fn closure_report(sys: &DynamicalSystem, r: &ClosureReport) -> Value {
    object([
        ("subset", json::labels(sys, r.subset)),
        ("horizon", Value::from(r.horizon)),
        ("closure", json::labels(sys, r.closure)),
        ("is_closed", Value::from(r.is_closed)),
        ("is_open", Value::from(r.is_open)),
        ("interior", json::labels(sys, r.interior)),
    ])
}

pub fn verdict(sys: &DynamicalSystem, v: &TopologyVerdict) -> Value {
    object([
        ("horizon", Value::from(v.horizon)),
        ("classification", Value::from(v.classification.as_str())),
        ("closure_idempotent", Value::from(v.closure_idempotent)),
        ("doubling_identity", Value::from(v.doubling_identity)),
        ("exhaustive", Value::from(v.exhaustive)),
        (
            "axioms",
            object([
                ("empty_closed", Value::from(v.axioms.empty_closed)),
                ("full_closed", Value::from(v.axioms.full_closed)),
                ("closed_under_intersection", Value::from(v.axioms.closed_under_intersection)),
                ("closed_under_union", Value::from(v.axioms.closed_under_union)),
                ("pairwise_exhaustive", Value::from(v.axioms.pairwise_exhaustive)),
            ]),
        ),
        ("closed_set_count", Value::from(v.closed_family.len())),
        ("closed_family", json::family(sys, &v.closed_family)),
    ])
}

fn topology(a: &TopologyArgs, seed: u64) -> CliResult<Value> {
    let sys = load_system(&a.system)?;
    let horizon = if a.saturate { sys.saturation_horizon() } else { a.horizon.unwrap_or(sys.time().horizon) };
    if let Some(s) = &a.subset {
        return Ok(closure_report(&sys, &classify_subset(&sys, region(&sys, s)?, horizon)?));
    }
    let v = if sys.len() <= ENUMERATION_CAP {
        check_axioms(&sys, horizon)?
    } else {
        check_axioms_sampled(&sys, horizon, a.samples, seed)?
    };
    Ok(verdict(&sys, &v))
}

fn set_count(alg: &SigmaAlgebra) -> Value {
    let n = alg.set_count();
    match u64::try_from(n) {
        Ok(n) => Value::from(n),
        Err(_) => Value::Number(n.to_string().parse().expect("integer literal")),
    }
}

pub fn sigma_json(sys: &DynamicalSystem, alg: &SigmaAlgebra, list_sets: bool) -> CliResult<Value> {
    let mut out = vec![("atoms", json::family(sys, alg.atoms())), ("set_count", set_count(alg))];
    if list_sets {
        out.push(("sets", json::family(sys, &alg.sets()?)));
    }
    Ok(object(out))
}

fn load_properties(sys: &DynamicalSystem, files: &[PathBuf]) -> CliResult<Vec<emergent_space::sigma::PropertyFn>> {
    let mut props = Vec::new();
    for f in files {
        props.extend(input::parse_properties(&Doc::read(f)?, sys)?);
    }
    Ok(props)
}

fn sigma(a: &SigmaArgs) -> CliResult<Value> {
    let sys = load_system(&a.system)?;
    let (alg, names) = if a.from_reachability {
        let horizon = a.horizon.unwrap_or(sys.time().horizon);
        (sigma_from_reachability(&sys, horizon)?, Value::Null)
    } else {
        if a.properties.is_empty() {
            return Err(CliError::Usage("sigma needs --properties or --from-reachability".into()));
        }
        let props = load_properties(&sys, &a.properties)?;
        let names = Value::from(props.iter().map(|p| p.name.clone()).collect::<Vec<_>>());
        (generate_sigma(&props, sys.len())?, names)
    };
    let mut v = sigma_json(&sys, &alg, a.list_sets)?;
    if !names.is_null() {
        v.as_object_mut().expect("object").insert("properties".into(), names);
    }
    Ok(v)
}

fn measure(a: &MeasureArgs) -> CliResult<Value> {
    let sys = load_system(&a.system)?;
    let weights = input::parse_real_map(&Doc::read(&a.weights)?, &sys)?;
    let alg = if a.properties.is_empty() {
        SigmaAlgebra::discrete(sys.len())
    } else {
        generate_sigma(&load_properties(&sys, &a.properties)?, sys.len())?
    };
    let m = Measure::from_point_weights(alg, &weights)?;
    let report = validate_measure(&m);
    let negative: Vec<Subset> = report.negative_atoms.iter().map(|&k| m.algebra().atoms()[k]).collect();
    let mut out = vec![
        ("atoms", json::family(&sys, m.algebra().atoms())),
        ("atom_weights", reals(m.weights())),
        ("total", real(m.total())),
        (
            "report",
            object([
                ("non_negative", Value::from(report.non_negative)),
                ("negative_atoms", json::family(&sys, &negative)),
                ("all_finite", Value::from(report.all_finite)),
                ("additivity_deviation", real(report.additivity_deviation)),
                ("normalization_deviation", real(report.normalization_deviation)),
                ("is_probability", Value::from(report.is_probability())),
            ]),
        ),
    ];
    if let Some(f) = &a.function {
        let values = input::parse_real_map(&Doc::read(f)?, &sys)?;
        out.push(("expectation", real(expectation(&values, &m)?)));
    }
    Ok(object(out))
}

pub fn oscillator_json(levels: usize) -> CliResult<Value> {
    let osc = truncated_oscillator(levels)?;
    let corner = osc.commutator()[(levels - 1, levels - 1)].re;
    Ok(object([
        ("levels", Value::from(levels)),
        ("vacuum_number", real(osc.vacuum_number())),
        ("pi_a_omega_norm", real(osc.annihilated_vacuum_norm())),
        ("ladder_orthonormality", real(osc.ladder_orthonormality(levels - 1))),
        ("quotient_dim", Value::from(osc.rep.quotient_dim())),
        ("commutator_corner", real(corner)),
    ]))
}

fn gns_cmd(a: &GnsArgs, tols: &Tolerances) -> CliResult<Value> {
    if let Some(n) = a.oscillator {
        return oscillator_json(n);
    }
    let (Some(alg), Some(state)) = (&a.algebra, &a.state) else {
        return Err(CliError::Usage("gns needs --algebra and --state, or --oscillator N".into()));
    };
    let alg = input::parse_algebra(&Doc::read(alg)?)?;
    let st = input::parse_state(&Doc::read(state)?, tols.state)?;
    let rep = gns(&alg, &st, a.rank_tol.unwrap_or(tols.rank_rel))?;
    Ok(object([
        ("algebra_dim", Value::from(alg.len())),
        ("quotient_dim", Value::from(rep.quotient_dim())),
        ("gram_eigenvalues", reals(rep.gram_eigenvalues())),
        ("reproduction_residual", real(rep.reproduction_residual())),
        ("homomorphism_residual", real(rep.homomorphism_residual())),
        ("cyclic_rank", Value::from(rep.cyclic_rank())),
        ("omega_norm_squared", real(rep.omega().norm_squared())),
        ("omega", json::vector(rep.omega())),
    ]))
}

pub fn context_json(ctx: &SpectralContext) -> Value {
    let points: Vec<Value> = ctx.points.iter().map(|p| reals(p)).collect();
    let expectation: Vec<f64> = (0..ctx.observables.len()).map(|k| ctx.expectation(k)).collect();
    object([
        ("observables", Value::from(ctx.observables.clone())),
        ("points", Value::Array(points)),
        ("weights", reals(&ctx.weights)),
        ("expectation", reals(&expectation)),
    ])
}

fn load_observables(files: &[PathBuf], tols: &Tolerances) -> CliResult<Vec<Observable>> {
    files
        .iter()
        .map(|f| {
            let name = f.file_stem().map_or_else(|| f.display().to_string(), |s| s.to_string_lossy().into_owned());
            input::parse_observable(&Doc::read(f)?, &name, tols.self_adjoint)
        })
        .collect()
}

fn context_cmd(a: &ContextArgs, tols: &Tolerances, seed: u64) -> CliResult<Value> {
    let obs = load_observables(&a.observables, tols)?;
    if a.gelfand {
        let g = gelfand_points(&obs, tols, seed)?;
        let names: Vec<String> = obs.iter().map(|o| o.name.clone()).collect();
        return Ok(object([
            ("observables", Value::from(names)),
            ("points", Value::Array(g.points.iter().map(|p| reals(p)).collect())),
        ]));
    }
    let Some(state) = &a.state else {
        return Err(CliError::Usage("context needs --state unless --gelfand is given".into()));
    };
    let st = input::parse_state(&Doc::read(state)?, tols.state)?;
    if obs.len() == 1 {
        return Ok(context_json(&spectral_context(&obs[0], &st, tols)?));
    }
    if a.joint {
        return Ok(context_json(&joint_context(&obs, &st, tols, seed)?));
    }
    let contexts = obs.iter().map(|o| spectral_context(o, &st, tols).map(|c| context_json(&c))).collect::<Result<Vec<_>, _>>()?;
    let mut pairs = Vec::new();
    for i in 0..obs.len() {
        for j in i + 1..obs.len() {
            let norm = commutator_norm(&obs[i], &obs[j])?;
            pairs.push(object([
                ("pair", Value::from(vec![i, j])),
                ("commutator_norm", real(norm)),
                ("commutes", Value::from(norm <= tols.commute)),
            ]));
        }
    }
    Ok(object([("contexts", Value::Array(contexts)), ("commutators", Value::Array(pairs))]))
}

fn spin_state(text: &str) -> CliResult<SpinState> {
    let eig = |axis, sign| SpinState::eigenstate(axis, sign).map_err(CliError::from);
    match text.trim() {
        "down" | "z-" => Ok(SpinState::down()),
        "up" | "z+" => Ok(SpinState::up()),
        "x+" => eig(1, 1.0),
        "x-" => eig(1, -1.0),
        "y+" => eig(2, 1.0),
        "y-" => eig(2, -1.0),
        other => match input::parse_reals(other, "--state0")?.as_slice() {
            &[a, b, c, d] => Ok(SpinState::normalized(emergent_space::linalg::c(a, b), emergent_space::linalg::c(c, d))?),
            _ => Err(CliError::Usage(format!("--state0: unknown state {other:?}"))),
        },
    }
}

pub fn orbit_json(r: &OrbitReport, with_samples: bool) -> Value {
    let opt = |x: Option<f64>| x.map_or(Value::Null, real);
    let mut out = vec![
        ("classification", Value::from(r.classification.as_str())),
        ("period_estimate", opt(r.period_estimate)),
        ("bloch_return", opt(r.bloch_return)),
        ("plane_axis", reals(&r.plane_axis)),
        ("axis_offset", real(r.axis_offset)),
        ("radius", real(r.radius)),
        ("radius_spread", real(r.radius_spread)),
        ("max_sphere_deviation", real(r.max_sphere_deviation())),
        ("sample_count", Value::from(r.samples.len())),
    ];
    if with_samples {
        let rows: Vec<Value> = r.samples.iter().map(|(t, b)| reals(&[*t, b[0], b[1], b[2]])).collect();
        out.push(("samples", Value::Array(rows)));
    }
    object(out)
}

pub fn orbit_csv(r: &OrbitReport) -> String {
    let mut s = String::from("t,bx,by,bz\n");
    for (t, b) in &r.samples {
        let row = [*t, b[0], b[1], b[2]].map(json::real_text);
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}

fn spin(a: &SpinArgs, out: Option<&Path>) -> CliResult<Output> {
    let field = input::parse_reals(&a.field, "--field")?;
    let field: [f64; 3] =
        field.try_into().map_err(|f: Vec<f64>| CliError::Usage(format!("--field needs 3 components, got {}", f.len())))?;
    let (charge, mass, hbar) = match a.units {
        Units::Natural => (1.0, 1.0, 1.0),
        Units::Si => (ELEMENTARY_CHARGE, ELECTRON_MASS, HBAR),
    };
    let sys = SpinSystem::new(field, a.g.unwrap_or(2.0), charge, mass, a.hbar.unwrap_or(hbar))?;
    let psi0 = match (&a.state0, a.context) {
        (Some(s), _) => spin_state(s)?,
        (None, Some(SpinContext::Psi2)) => SpinState::eigenstate(2, -1.0)?,
        (None, _) => SpinState::down(),
    };
    let dt = a.dt / sys.strength();
    let orbit = sys.reachability_orbit(&psi0, dt, a.steps, a.tol)?;

    let mut report = vec![
        (
            "system",
            object([
                ("b_tilde", reals(&sys.b_tilde())),
                ("strength", real(sys.strength())),
                ("axis", reals(&sys.axis())),
                ("period", real(sys.period())),
                ("hbar", real(sys.hbar)),
            ]),
        ),
        ("state0", json::vector(&psi0.vector())),
        ("dt", real(dt)),
        ("orbit", orbit_json(&orbit, out.is_none())),
    ];
    match a.context {
        Some(c @ (SpinContext::Psi2 | SpinContext::Psi3)) => {
            let axis = if c == SpinContext::Psi2 { 2 } else { 3 };
            let obs = Observable::new(format!("psi{axis}"), sys.spin_operator(axis)?, 1e-12)?;
            let st = emergent_space::gns::AlgState::vector_state(&psi0.vector())?;
            let ctx = spectral_context(&obs, &st, &Tolerances::DEFAULT)?;
            report.push(("context", context_json(&ctx)));
        }
        Some(SpinContext::Corotating) => {
            let worst = orbit.samples.iter().map(|(t, _)| sys.corotating_eigencheck(*t)).fold(0.0, f64::max);
            report.push((
                "corotating",
                object([("eigenvalue", real(-sys.hbar / 2.0)), ("max_residual", real(worst))]),
            ));
        }
        None => {}
    }
    if let Some(t) = a.at {
        let heis = (1..=3).map(|i| sys.heisenberg_spin(i, t).map(|m| json::matrix(&m))).collect::<Result<Vec<_>, CoreError>>()?;
        let state = sys.evolve_state(&psi0, t);
        report.push((
            "at",
            object([
                ("t", real(t)),
                ("evolution_operator", json::matrix(&sys.evolution_operator(t))),
                ("state", json::vector(&state.vector())),
                ("bloch", reals(&state.bloch())),
                ("heisenberg_spin", Value::Array(heis)),
                ("corotating_residual", real(sys.corotating_eigencheck(t))),
            ]),
        ));
    }
    Ok(Output {
        json: object(report),
        text: None,
        side_file: out.map(|p| (p.to_path_buf(), orbit_csv(&orbit))),
    })
}

fn scenario(a: &ScenarioArgs) -> CliResult<Output> {
    if a.list {
        let names: Vec<Value> = scenarios::all()
            .iter()
            .map(|s| object([("name", Value::from(s.name)), ("module", Value::from(s.module)), ("about", Value::from(s.about))]))
            .collect();
        return Ok(Output::json(Value::Array(names)));
    }
    let name = a.name.as_deref().expect("clap requires a name");
    let sc = scenarios::find(name).ok_or_else(|| CliError::UnknownScenario(name.into()))?;
    if a.n.is_some() && !sc.takes_n {
        return Err(CliError::Usage(format!("scenario `{name}` takes no --n")));
    }
    let text = json::render(&sc.execute(a.n)?);
    if a.check {
        if a.n.is_some_and(|n| Some(n) != sc.default_n) {
            return Err(CliError::Usage("--check compares against the default parameters only".into()));
        }
        if let Some(diff) = scenarios::diff(sc.golden, &text) {
            return Err(CliError::GoldenMismatch { name: name.into(), diff });
        }
    }
    Ok(Output { json: Value::Null, text: Some(text), side_file: None })
}
