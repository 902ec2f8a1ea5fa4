//! Which subcommand exposes each library operation.

pub struct Operation {
    pub name: &'static str,
    pub module: &'static str,
    pub subcommand: &'static str,
}

const fn op(name: &'static str, module: &'static str, subcommand: &'static str) -> Operation {
    Operation { name, module, subcommand }
}

pub const OPERATIONS: &[Operation] = &[
    op("build_system", "dynsys", "reach"),
    op("evolve", "dynsys", "reach"),
    op("trajectory", "dynsys", "reach"),
    op("reach", "dynsys", "reach"),
    op("classify_subset", "pretopology", "topology"),
    op("closed_family", "pretopology", "topology"),
    op("check_axioms", "pretopology", "topology"),
    op("interior", "pretopology", "topology"),
    op("generate_sigma", "sigma_measure", "sigma"),
    op("sigma_from_reachability", "sigma_measure", "sigma"),
    op("expectation", "sigma_measure", "measure"),
    op("validate_measure", "sigma_measure", "measure"),
    op("adjoint", "star_gns", "gns"),
    op("commutator", "star_gns", "context"),
    op("is_self_adjoint", "star_gns", "context"),
    op("gns", "star_gns", "gns"),
    op("truncated_oscillator", "star_gns", "gns"),
    op("spectral_context", "context", "context"),
    op("commutes", "context", "context"),
    op("joint_context", "context", "context"),
    op("gelfand_points", "context", "context"),
    op("evolution_operator", "spinlab", "spin"),
    op("evolve_state", "spinlab", "spin"),
    op("heisenberg_spin", "spinlab", "spin"),
    op("corotating_eigencheck", "spinlab", "spin"),
    op("reachability_orbit", "spinlab", "spin"),
    op("run_scenario", "cli", "scenario"),
    op("parse_system", "cli", "reach"),
    op("parse_matrix", "cli", "context"),
    op("parse_properties", "cli", "sigma"),
];
