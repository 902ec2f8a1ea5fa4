//! Packaged worked examples with golden outputs.
//!
//! Each scenario carries its canned input as JSON, runs it through the
//! same code paths as the subcommands, and is compared byte-for-byte with
//! `golden/<name>.json` under `scenario --check`.

use emergent_space::context::{commutator_norm, commutes, joint_context, spectral_context, Observable, DEFAULT_SEED};
use emergent_space::gns::{self, gns, AlgState};
use emergent_space::linalg::{self, c, commutator, max_abs, pauli};
use emergent_space::pretopology::{classify_subset, interior};
use emergent_space::sigma::{generate_sigma, PropertyFn};
use emergent_space::spin::{SpinState, SpinSystem, Vec3};
use emergent_space::tolerance::Tolerances;
use emergent_space::{DynamicalSystem, Subset};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::commands::{closure_report, context_json, orbit_json, oscillator_json, sigma_json};
use crate::error::{CliError, CliResult};
use crate::input::{self, Doc};
use crate::json::{self, object, real, reals};

pub struct Scenario {
    pub name: &'static str,
    pub module: &'static str,
    pub about: &'static str,
    /// Canned input payload.
    pub inputs: &'static str,
    pub run: fn(&Value, Option<usize>) -> CliResult<Value>,
    pub golden: &'static str,
    pub takes_n: bool,
    pub default_n: Option<usize>,
}

impl Scenario {
    pub fn execute(&self, n: Option<usize>) -> CliResult<Value> {
        let inputs: Value = serde_json::from_str(self.inputs).expect("canned inputs are valid JSON");
        (self.run)(&inputs, n)
    }
}

macro_rules! golden {
    ($name:literal) => {
        include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/golden/", $name, ".json"))
    };
}

const CYCLIC5: &str = r#"{"elements":["1","2","3","4","5"],"transitions":{"1":"2","2":"3","3":"4","4":"5","5":"1"},"time":{"kind":"monoid","horizon":1}}"#;
const TWO_CYCLE: &str = r#"{"elements":["1","2","3","4"],"transitions":{"1":"3","2":"4","3":"1","4":"2"},"time":{"kind":"monoid","horizon":1}}"#;

macro_rules! scenario {
    ($name:literal, $module:literal, $about:literal, $inputs:expr, $run:expr) => {
        Scenario {
            name: $name,
            module: $module,
            about: $about,
            inputs: $inputs,
            run: $run,
            golden: golden!($name),
            takes_n: false,
            default_n: None,
        }
    };
}

static SCENARIOS: &[Scenario] = &[
    scenario!("cyclic5-system", "dynsys", "five-state cyclic shift with U(5,1)=1", CYCLIC5, system_summary),
    scenario!("cyclic5-evolve", "dynsys", "shift of state 3 by one step", CYCLIC5, |i, _| evolve(i, "3", 1)),
    scenario!("cyclic5-reach", "dynsys", "reachability domain of {1,2,3} after one step", CYCLIC5, |i, _| {
        reach(i, &["1", "2", "3"])
    }),
    scenario!("two-cycle-reach", "dynsys", "U(x,1)=x+2 leaves {2,4} invariant", TWO_CYCLE, |i, _| reach(i, &["2", "4"])),
    scenario!("two-cycle-classify", "pretopology", "{2,4} is closed and open", TWO_CYCLE, |i, _| {
        classify(i, &["2", "4"])
    }),
    scenario!("cyclic5-classify", "pretopology", "{1,2,3} is not open under the shift", CYCLIC5, |i, _| {
        classify(i, &["1", "2", "3"])
    }),
    scenario!("cyclic5-interior", "pretopology", "interior of {1,2,3} under the shift", CYCLIC5, |i, _| {
        interior_of(i, &["1", "2", "3"])
    }),
    scenario!("two-cycle-interior", "pretopology", "interior of {2,4} under U(x,1)=x+2", TWO_CYCLE, |i, _| {
        interior_of(i, &["2", "4"])
    }),
    scenario!(
        "even-prime-sigma",
        "sigma_measure",
        "σ-algebra of the even and prime properties on {1..5}",
        r#"[{"name":"even","truth":{"1":0,"2":1,"3":0,"4":1,"5":0}},{"name":"prime","truth":{"1":0,"2":1,"3":1,"4":0,"5":1}}]"#,
        even_prime
    ),
    scenario!(
        "even-sigma",
        "sigma_measure",
        "σ-algebra of the even property alone",
        r#"[{"name":"even","truth":{"1":0,"2":1,"3":0,"4":1,"5":0}}]"#,
        even_only
    ),
    scenario!("pauli-commutator", "star_gns", "[σ₁,σ₂] = 2iσ₃", "{}", |_, _| pauli_commutator()),
    scenario!("gns-cyclic-norm", "star_gns", "⟨Ω,Ω⟩ = ω(1) = 1 for a seeded algebra and state", r#"{"dim":3,"seed":24301}"#, cyclic_norm),
    Scenario {
        takes_n: true,
        default_n: Some(4),
        ..scenario!("oscillator", "star_gns", "truncated oscillator vacuum: ω₀(a†a)=0 and π(a)Ω=0", r#"{"levels":4}"#, oscillator)
    },
    scenario!("spin-down-context", "context", "ψ̂₃ measured on |0⟩", r#"{"hbar":1}"#, spin_down_context),
    scenario!("pauli-commutes", "context", "σ₁ and σ₂ do not commute", "{}", |_, _| pauli_commutes()),
    scenario!("pauli-joint-context", "context", "no joint context for σ₁ and σ₂", "{}", |_, _| pauli_joint()),
    scenario!("spin-norm", "spinlab", "|Ψ(t)⟩ stays normalized", r#"{"field":[0.3,-0.5,0.8],"samples":32,"seed":7}"#, spin_norm),
    scenario!("precession-equation", "spinlab", "finite differences of ψ̂ᵢ(t) against the precession equation", r#"{"field":[0.3,-0.5,0.8],"t":0.9}"#, precession),
    scenario!("corotating-start", "spinlab", "ψ̂₃|0⟩ = −(ħ/2)|0⟩", r#"{"field":[0.3,-0.5,0.8],"t_b":0}"#, corotating),
    scenario!("corotating-generic", "spinlab", "co-rotated ψ̂₃ keeps |Ψ(t)⟩ an eigenvector", r#"{"field":[0.3,-0.5,0.8],"t_b":1.7}"#, corotating),
    scenario!("spin-orbit", "spinlab", "orbit of |0⟩ about x̂ closes into a circle", r#"{"field":[2,0,0],"dt_b":0.01,"steps":700}"#, spin_orbit),
    scenario!("psi2-orbit", "spinlab", "orbit of the ψ̂₂ outcome against the |0⟩ orbit", r#"{"field":[2,0,0],"dt_b":0.01,"steps":700}"#, psi2_orbit),
];

pub fn all() -> &'static [Scenario] {
    SCENARIOS
}

pub fn find(name: &str) -> Option<&'static Scenario> {
    SCENARIOS.iter().find(|s| s.name == name)
}

/// Line diff of golden against actual, or `None` when identical.
pub fn diff(golden: &str, actual: &str) -> Option<String> {
    if golden == actual {
        return None;
    }
    let g: Vec<&str> = golden.lines().collect();
    let a: Vec<&str> = actual.lines().collect();
    let mut out = String::new();
    for k in 0..g.len().max(a.len()) {
        match (g.get(k), a.get(k)) {
            (Some(x), Some(y)) if x == y => {}
            (x, y) => {
                if let Some(x) = x {
                    out.push_str(&format!("-{x}\n"));
                }
                if let Some(y) = y {
                    out.push_str(&format!("+{y}\n"));
                }
            }
        }
    }
    if out.is_empty() {
        out.push_str("outputs differ only in trailing whitespace\n");
    }
    Some(out)
}

fn system(inputs: &Value) -> CliResult<DynamicalSystem> {
    input::parse_system(&Doc::parse(&inputs.to_string(), "scenario input")?)
}

fn system_summary(inputs: &Value, _: Option<usize>) -> CliResult<Value> {
    let sys = system(inputs)?;
    Ok(object([
        ("states", Value::from(sys.labels().to_vec())),
        ("time", Value::from(sys.time().kind.as_str())),
        ("bijective", Value::from(sys.is_bijective())),
        ("system", json::system(&sys)),
    ]))
}

fn evolve(inputs: &Value, x: &str, t: i64) -> CliResult<Value> {
    let sys = system(inputs)?;
    Ok(object([("state", Value::from(x)), ("time", Value::from(t)), ("result", Value::from(sys.evolve(x, t)?))]))
}

fn region(sys: &DynamicalSystem, labels: &[&str]) -> CliResult<Subset> {
    Ok(sys.subset(labels)?)
}

fn reach(inputs: &Value, x0: &[&str]) -> CliResult<Value> {
    let sys = system(inputs)?;
    let r = sys.reach(region(&sys, x0)?, sys.time().horizon)?;
    Ok(object([("closure", json::labels(&sys, r.members))]))
}

fn classify(inputs: &Value, x0: &[&str]) -> CliResult<Value> {
    let sys = system(inputs)?;
    Ok(closure_report(&sys, &classify_subset(&sys, region(&sys, x0)?, sys.time().horizon)?))
}

fn interior_of(inputs: &Value, x0: &[&str]) -> CliResult<Value> {
    let sys = system(inputs)?;
    Ok(object([("interior", json::labels(&sys, interior(&sys, region(&sys, x0)?, sys.time().horizon)?))]))
}

fn one_to_five() -> DynamicalSystem {
    emergent_space::dynsys::cyclic_shift(5)
}

fn properties(inputs: &Value, sys: &DynamicalSystem) -> CliResult<Vec<PropertyFn>> {
    input::parse_properties(&Doc::parse(&inputs.to_string(), "scenario input")?, sys)
}

/// The thirteen sets listed for the even/prime example.
const LISTED: [&[&str]; 13] = [
    &[],
    &["2", "4"],
    &["1", "3", "5"],
    &["2", "3", "5"],
    &["2", "3", "4", "5"],
    &["2"],
    &["1", "2", "3", "5"],
    &["1", "2", "4"],
    &["1", "3", "4", "5"],
    &["1"],
    &["3", "5"],
    &["4"],
    &["1", "2", "3", "4", "5"],
];

fn even_prime(inputs: &Value, _: Option<usize>) -> CliResult<Value> {
    let sys = one_to_five();
    let props = properties(inputs, &sys)?;
    let alg = generate_sigma(&props, sys.len())?;
    let mut listed = Vec::new();
    let mut listed_sets = Vec::new();
    for labels in LISTED {
        let s = region(&sys, labels)?;
        listed_sets.push(s);
        listed.push(object([("set", json::labels(&sys, s)), ("present", Value::from(alg.contains(s)))]));
    }
    let extra: Vec<Subset> = alg.sets()?.into_iter().filter(|s| !listed_sets.contains(s)).collect();
    let even_not_prime = props[0].truth_set().intersection(props[1].truth_set().complement());
    let mut v = sigma_json(&sys, &alg, false)?;
    let o = v.as_object_mut().expect("object");
    o.insert("listed_sets".into(), Value::Array(listed));
    o.insert("unlisted_members".into(), json::family(&sys, &extra));
    o.insert("even_and_not_prime".into(), json::labels(&sys, even_not_prime));
    Ok(v)
}

fn even_only(inputs: &Value, _: Option<usize>) -> CliResult<Value> {
    let sys = one_to_five();
    let alg = generate_sigma(&properties(inputs, &sys)?, sys.len())?;
    sigma_json(&sys, &alg, true)
}

fn pauli_commutator() -> CliResult<Value> {
    let got = commutator(&pauli(1)?, &pauli(2)?)?;
    let expected = pauli(3)? * c(0.0, 2.0);
    Ok(object([
        ("commutator", json::matrix(&got)),
        ("two_i_sigma3", json::matrix(&expected)),
        ("residual", real(max_abs(&(got - expected)))),
    ]))
}

fn param_u64(inputs: &Value, key: &str) -> u64 {
    inputs[key].as_u64().expect("canned integer parameter")
}

fn param_f64(inputs: &Value, key: &str) -> f64 {
    inputs[key].as_f64().expect("canned real parameter")
}

fn param_vec3(inputs: &Value, key: &str) -> Vec3 {
    let v: Vec<f64> = inputs[key].as_array().expect("canned vector").iter().map(|x| x.as_f64().expect("real")).collect();
    [v[0], v[1], v[2]]
}

fn cyclic_norm(inputs: &Value, _: Option<usize>) -> CliResult<Value> {
    let dim = param_u64(inputs, "dim") as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(param_u64(inputs, "seed"));
    let alg = gns::random::algebra(&mut rng, dim);
    let st = gns::random::state(&mut rng, dim);
    let rep = gns(&alg, &st, Tolerances::DEFAULT.rank_rel)?;
    Ok(object([
        ("algebra_dim", Value::from(alg.len())),
        ("quotient_dim", Value::from(rep.quotient_dim())),
        ("omega_norm_squared", real(rep.omega().norm_squared())),
        ("state_of_identity", real(st.expect(&linalg::identity(dim)).re)),
    ]))
}

fn oscillator(inputs: &Value, n: Option<usize>) -> CliResult<Value> {
    let levels = n.unwrap_or(param_u64(inputs, "levels") as usize);
    if levels < 2 {
        return Err(CliError::Usage("the oscillator needs at least 2 levels".into()));
    }
    oscillator_json(levels)
}

fn spin_down_context(inputs: &Value, _: Option<usize>) -> CliResult<Value> {
    let hbar = param_f64(inputs, "hbar");
    let psi3 = Observable::new("psi3", pauli(3)?.scale(hbar / 2.0), 1e-12)?;
    let down = AlgState::vector_state(&SpinState::down().vector())?;
    Ok(context_json(&spectral_context(&psi3, &down, &Tolerances::DEFAULT)?))
}

fn paulis() -> CliResult<(Observable, Observable)> {
    Ok((Observable::new("sigma1", pauli(1)?, 1e-12)?, Observable::new("sigma2", pauli(2)?, 1e-12)?))
}

fn pauli_commutes() -> CliResult<Value> {
    let (s1, s2) = paulis()?;
    Ok(object([
        ("commutes", Value::from(commutes(&s1, &s2, Tolerances::DEFAULT.commute)?)),
        ("commutator_norm", real(commutator_norm(&s1, &s2)?)),
    ]))
}

fn pauli_joint() -> CliResult<Value> {
    let (s1, s2) = paulis()?;
    let down = AlgState::vector_state(&SpinState::down().vector())?;
    let tols = Tolerances::DEFAULT;
    let solo = [&s1, &s2].map(|o| spectral_context(o, &down, &tols).map(|c| context_json(&c)));
    let solo = solo.into_iter().collect::<Result<Vec<_>, _>>()?;
    let joint = match joint_context(&[s1, s2], &down, &tols, DEFAULT_SEED) {
        Ok(ctx) => context_json(&ctx),
        Err(e) => CliError::from(e).to_json(),
    };
    Ok(object([("solo", Value::Array(solo)), ("joint", joint)]))
}

fn spin_norm(inputs: &Value, _: Option<usize>) -> CliResult<Value> {
    let sys = SpinSystem::natural(param_vec3(inputs, "field"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(param_u64(inputs, "seed"));
    let samples = param_u64(inputs, "samples");
    let worst = (0..samples)
        .map(|_| rng.random_range(-50.0..50.0))
        .map(|t| (sys.evolve_state(&SpinState::down(), t).norm() - 1.0).abs())
        .fold(0.0, f64::max);
    Ok(object([("samples", Value::from(samples)), ("max_norm_deviation", real(worst))]))
}

fn precession(inputs: &Value, _: Option<usize>) -> CliResult<Value> {
    let sys = SpinSystem::natural(param_vec3(inputs, "field"))?;
    let t = param_f64(inputs, "t");
    let steps = [1e-2, 1e-3, 1e-4];
    let mut errors = Vec::new();
    for h in steps {
        let mut worst: f64 = 0.0;
        for axis in 1..=3 {
            let fd = (sys.heisenberg_spin(axis, t + h)? - sys.heisenberg_spin(axis, t - h)?).scale(0.5 / h);
            worst = worst.max(max_abs(&(fd - sys.precession_rate(axis, t)?)));
        }
        errors.push(worst);
    }
    let order = (errors[0] / errors[1]).log10();
    Ok(object([("steps", reals(&steps)), ("errors", reals(&errors)), ("order", real(order))]))
}

fn corotating(inputs: &Value, _: Option<usize>) -> CliResult<Value> {
    let sys = SpinSystem::natural(param_vec3(inputs, "field"))?;
    let t = param_f64(inputs, "t_b") / sys.strength();
    Ok(object([("t", real(t)), ("eigenvalue", real(-sys.hbar / 2.0)), ("residual", real(sys.corotating_eigencheck(t)))]))
}

fn orbit_setup(inputs: &Value) -> CliResult<(SpinSystem, f64, usize)> {
    let sys = SpinSystem::natural(param_vec3(inputs, "field"))?;
    Ok((sys, param_f64(inputs, "dt_b") / sys.strength(), param_u64(inputs, "steps") as usize))
}

fn spin_orbit(inputs: &Value, _: Option<usize>) -> CliResult<Value> {
    let (sys, dt, steps) = orbit_setup(inputs)?;
    let r = sys.reachability_orbit(&SpinState::down(), dt, steps, 1e-6)?;
    Ok(object([("period", real(sys.period())), ("dt", real(dt)), ("orbit", orbit_json(&r, false))]))
}

fn psi2_orbit(inputs: &Value, _: Option<usize>) -> CliResult<Value> {
    let (sys, dt, steps) = orbit_setup(inputs)?;
    let down = sys.reachability_orbit(&SpinState::down(), dt, steps, 1e-6)?;
    let psi2 = sys.reachability_orbit(&SpinState::eigenstate(2, -1.0)?, dt, steps, 1e-6)?;
    let same = (down.axis_offset - psi2.axis_offset).abs() <= 1e-9 && (down.radius - psi2.radius).abs() <= 1e-9;
    Ok(object([
        ("down_orbit", orbit_json(&down, false)),
        ("psi2_orbit", orbit_json(&psi2, false)),
        ("same_circle", Value::from(same)),
    ]))
}
