//! Closed and open regions of the reachability closure, interiors, the
//! family of invariant sets, and the topology / pre-topology verdict.
//!
//! A region is closed at horizon `T` when its reachability domain is the
//! region itself, open when its complement is closed, and its interior is
//! the complement of the closure of its complement.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dynsys::DynamicalSystem;
use crate::error::{Error, Result};
use crate::subset::{canonicalize, Subset};

/// Largest state space enumerated exhaustively (2^20 subsets).
pub const ENUMERATION_CAP: usize = 20;

/// Largest closed family checked pairwise without sampling.
const PAIRWISE_CAP: usize = 4096;
const SAMPLED_PAIRS: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosureReport {
    pub subset: Subset,
    pub horizon: u32,
    pub closure: Subset,
    pub is_closed: bool,
    pub is_open: bool,
    pub interior: Subset,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Topology,
    PreTopologyOnly,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Topology => "Topology",
            Classification::PreTopologyOnly => "PreTopologyOnly",
        }
    }
}

/// Closed-set axioms evaluated over the closed family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AxiomReport {
    pub empty_closed: bool,
    pub full_closed: bool,
    pub closed_under_intersection: bool,
    pub closed_under_union: bool,
    /// False when the pairwise checks ran on sampled pairs.
    pub pairwise_exhaustive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopologyVerdict {
    pub horizon: u32,
    pub closed_family: Vec<Subset>,
    pub axioms: AxiomReport,
    /// `cl_T(cl_T(S)) == cl_T(S)` for every tested `S`.
    pub closure_idempotent: bool,
    /// `cl_T(cl_T(S)) == cl_2T(S)` for every tested `S` (diagnostic only).
    pub doubling_identity: bool,
    pub classification: Classification,
    /// True when every subset of the state space was tested.
    pub exhaustive: bool,
}

/// Reachability closures of every singleton; `cl_T` of any set is the union
/// of the closures of its points.
#[derive(Debug, Clone)]
pub struct ClosureTable {
    universe: usize,
    points: Vec<Subset>,
}

impl ClosureTable {
    pub fn new(sys: &DynamicalSystem, horizon: u32) -> Self {
        let points = (0..sys.len())
            .map(|i| sys.trajectory_set(i, horizon))
            .collect();
        ClosureTable { universe: sys.len(), points }
    }

    #[inline]
    pub fn closure(&self, s: Subset) -> Subset {
        s.iter().fold(Subset::empty(self.universe), |acc, i| acc.union(self.points[i]))
    }

    pub fn points(&self) -> &[Subset] {
        &self.points
    }
}

pub fn classify_subset(sys: &DynamicalSystem, x0: Subset, horizon: u32) -> Result<ClosureReport> {
    let closure = sys.closure(x0, horizon)?;
    let outside = sys.closure(x0.complement(), horizon)?;
    Ok(ClosureReport {
        subset: x0,
        horizon,
        closure,
        is_closed: closure == x0,
        is_open: outside == x0.complement(),
        interior: outside.complement(),
    })
}

/// The part of `x0` that the flow cannot enter from outside within `horizon`.
pub fn interior(sys: &DynamicalSystem, x0: Subset, horizon: u32) -> Result<Subset> {
    Ok(sys.closure(x0.complement(), horizon)?.complement())
}

fn ensure_enumerable(sys: &DynamicalSystem) -> Result<()> {
    if sys.len() > ENUMERATION_CAP {
        return Err(Error::StateSpaceTooLarge(sys.len(), ENUMERATION_CAP));
    }
    Ok(())
}

/// All subsets invariant under the flow up to `horizon`, in canonical order.
pub fn closed_family(sys: &DynamicalSystem, horizon: u32) -> Result<Vec<Subset>> {
    ensure_enumerable(sys)?;
    let table = ClosureTable::new(sys, horizon);
    let mut family: Vec<Subset> = Subset::all(sys.len()).filter(|&s| table.closure(s) == s).collect();
    canonicalize(&mut family);
    Ok(family)
}

fn axioms_of(family: &[Subset], universe: usize, seed: u64) -> AxiomReport {
    let member = |s: Subset| family.binary_search_by(|f| f.canonical_cmp(&s)).is_ok();
    let empty_closed = member(Subset::empty(universe));
    let full_closed = member(Subset::full(universe));
    let mut inter = true;
    let mut union = true;
    let pairwise_exhaustive = family.len() <= PAIRWISE_CAP;
    if pairwise_exhaustive {
        'outer: for (i, &a) in family.iter().enumerate() {
            for &b in &family[i + 1..] {
                inter &= member(a.intersection(b));
                union &= member(a.union(b));
                if !inter && !union {
                    break 'outer;
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..SAMPLED_PAIRS {
            let a = family[rng.random_range(0..family.len())];
            let b = family[rng.random_range(0..family.len())];
            inter &= member(a.intersection(b));
            union &= member(a.union(b));
        }
    }
    AxiomReport {
        empty_closed,
        full_closed,
        closed_under_intersection: inter,
        closed_under_union: union,
        pairwise_exhaustive,
    }
}

/// Exhaustively decides whether `cl_T` is idempotent, i.e. whether the
/// closed family is a topology rather than only a pre-topology.
pub fn check_axioms(sys: &DynamicalSystem, horizon: u32) -> Result<TopologyVerdict> {
    ensure_enumerable(sys)?;
    let table = ClosureTable::new(sys, horizon);
    let doubled = ClosureTable::new(sys, horizon.saturating_mul(2));
    let mut idempotent = true;
    let mut doubling = true;
    let mut family = Vec::new();
    for s in Subset::all(sys.len()) {
        let c = table.closure(s);
        let cc = table.closure(c);
        idempotent &= cc == c;
        doubling &= cc == doubled.closure(s);
        if c == s {
            family.push(s);
        }
    }
    canonicalize(&mut family);
    let axioms = axioms_of(&family, sys.len(), 0);
    Ok(TopologyVerdict {
        horizon,
        closed_family: family,
        axioms,
        closure_idempotent: idempotent,
        doubling_identity: doubling,
        classification: if idempotent { Classification::Topology } else { Classification::PreTopologyOnly },
        exhaustive: true,
    })
}

/// Verdict for state spaces too large to enumerate: idempotency and the
/// closed-set axioms are tested on `samples` random subsets.
pub fn check_axioms_sampled(sys: &DynamicalSystem, horizon: u32, samples: usize, seed: u64) -> Result<TopologyVerdict> {
    let n = sys.len();
    let table = ClosureTable::new(sys, horizon);
    let doubled = ClosureTable::new(sys, horizon.saturating_mul(2));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mask = if n >= 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut idempotent = true;
    let mut doubling = true;
    let mut family = vec![sys.empty_set(), sys.full_set()];
    // Singletons first: since cl_T preserves unions, they decide idempotency.
    let singles = (0..n).map(|i| Subset::singleton(n, i).expect("in range"));
    let randoms = (0..samples).map(|_| Subset::from_bits(n, rng.random::<u64>() & mask).expect("masked"));
    for s in singles.chain(randoms) {
        let c = table.closure(s);
        let cc = table.closure(c);
        idempotent &= cc == c;
        doubling &= cc == doubled.closure(s);
        family.push(c);
    }
    family.retain(|&s| table.closure(s) == s);
    canonicalize(&mut family);
    let axioms = axioms_of(&family, n, seed);
    Ok(TopologyVerdict {
        horizon,
        closed_family: family,
        axioms,
        closure_idempotent: idempotent,
        doubling_identity: doubling,
        classification: if idempotent { Classification::Topology } else { Classification::PreTopologyOnly },
        exhaustive: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynsys::{cyclic_shift, two_cycles, TimeModel};

    fn identity(n: usize) -> DynamicalSystem {
        DynamicalSystem::from_indices((0..n).collect(), TimeModel::monoid(1)).unwrap()
    }

    #[test]
    fn two_cycle_region_is_clopen() {
        let sys = two_cycles();
        let x0 = sys.subset(&["2", "4"]).unwrap();
        let r = classify_subset(&sys, x0, 1).unwrap();
        assert!(r.is_closed && r.is_open);
        assert_eq!(r.interior, x0);
        assert_eq!(interior(&sys, x0, 1).unwrap(), x0);
    }

    #[test]
    fn shift_region_is_not_open() {
        let sys = cyclic_shift(5);
        let x0 = sys.subset(&["1", "2", "3"]).unwrap();
        let r = classify_subset(&sys, x0, 1).unwrap();
        assert!(!r.is_open);
        assert!(!r.is_closed);
        assert_eq!(sys.subset_labels(r.interior), vec!["2", "3"]);
        assert_eq!(sys.subset_labels(sys.closure(x0.complement(), 1).unwrap()), vec!["1", "4", "5"]);
    }

    #[test]
    fn full_and_empty_sets() {
        let sys = cyclic_shift(5);
        let r = classify_subset(&sys, sys.full_set(), 3).unwrap();
        assert!(r.is_closed && r.is_open);
        assert_eq!(r.interior, sys.full_set());
        assert!(interior(&sys, sys.empty_set(), 3).unwrap().is_empty());
    }

    #[test]
    fn closed_families() {
        let sys = two_cycles();
        let fam: Vec<Vec<String>> = closed_family(&sys, 1).unwrap().into_iter().map(|s| sys.subset_labels(s)).collect();
        assert_eq!(fam, vec![vec![], vec!["1", "3"], vec!["2", "4"], vec!["1", "2", "3", "4"]]);

        let sys = cyclic_shift(5);
        assert_eq!(closed_family(&sys, 1).unwrap(), vec![sys.empty_set(), sys.full_set()]);

        assert_eq!(closed_family(&identity(6), 4).unwrap().len(), 64);
    }

    #[test]
    fn verdicts() {
        assert_eq!(check_axioms(&two_cycles(), 1).unwrap().classification, Classification::Topology);
        let v = check_axioms(&cyclic_shift(5), 1).unwrap();
        assert_eq!(v.classification, Classification::PreTopologyOnly);
        assert!(v.doubling_identity);
        assert!(v.axioms.empty_closed && v.axioms.full_closed);
        assert_eq!(check_axioms(&identity(5), 2).unwrap().classification, Classification::Topology);
    }

    #[test]
    fn shift_singleton_closure_is_not_idempotent() {
        let sys = cyclic_shift(5);
        let one = sys.subset(&["1"]).unwrap();
        let c = sys.closure(one, 1).unwrap();
        assert_eq!(sys.subset_labels(c), vec!["1", "2"]);
        assert_eq!(sys.subset_labels(sys.closure(c, 1).unwrap()), vec!["1", "2", "3"]);
    }

    #[test]
    fn enumeration_cap() {
        let sys = cyclic_shift(21);
        assert_eq!(closed_family(&sys, 1), Err(Error::StateSpaceTooLarge(21, 20)));
        assert_eq!(check_axioms(&sys, 1).unwrap_err(), Error::StateSpaceTooLarge(21, 20));
        let v = check_axioms_sampled(&sys, 1, 256, 7).unwrap();
        assert!(!v.exhaustive);
        assert_eq!(v.classification, Classification::PreTopologyOnly);
        let v = check_axioms_sampled(&sys, 21, 256, 7).unwrap();
        assert_eq!(v.classification, Classification::Topology);
    }

    #[test]
    fn large_family_uses_sampled_pairs() {
        let v = check_axioms(&identity(14), 1).unwrap();
        assert_eq!(v.closed_family.len(), 1 << 14);
        assert!(!v.axioms.pairwise_exhaustive);
        assert!(v.axioms.closed_under_union && v.axioms.closed_under_intersection);
    }
}
