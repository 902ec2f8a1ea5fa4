//! Finite discrete-time dynamical systems and their reachability domains.
//!
//! A system is a triple of a finite state set, a total unit-step map and a
//! time model. States are kept in a canonical order (numeric labels
//! numerically, then the rest lexicographically) and addressed by index,
//! which is also the bit position used by [`Subset`].

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::subset::{Subset, MAX_STATES};

/// Whether the step map generates a monoid (forward time only) or a group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TimeKind {
    MonoidSteps,
    GroupSteps,
}

impl TimeKind {
    /// Parses the `kind` field of a system file.
    pub fn parse(kind: &str) -> Result<Self> {
        match kind.to_ascii_lowercase().as_str() {
            "monoid" | "monoidsteps" | "monoid_steps" => Ok(TimeKind::MonoidSteps),
            "group" | "groupsteps" | "group_steps" => Ok(TimeKind::GroupSteps),
            _ => Err(Error::UnsupportedTimeModel(kind.to_string())),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TimeKind::MonoidSteps => "monoid",
            TimeKind::GroupSteps => "group",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TimeModel {
    pub kind: TimeKind,
    /// Default number of unit steps.
    pub horizon: u32,
}

impl TimeModel {
    pub fn monoid(horizon: u32) -> Self {
        TimeModel { kind: TimeKind::MonoidSteps, horizon }
    }

    pub fn group(horizon: u32) -> Self {
        TimeModel { kind: TimeKind::GroupSteps, horizon }
    }
}

/// Orders labels so that numeric labels compare numerically and precede
/// non-numeric ones, which compare lexicographically.
pub fn label_cmp(a: &str, b: &str) -> Ordering {
    match (a.trim().parse::<f64>(), b.trim().parse::<f64>()) {
        (Ok(x), Ok(y)) if x.is_finite() && y.is_finite() => {
            x.partial_cmp(&y).unwrap_or(Ordering::Equal).then_with(|| a.cmp(b))
        }
        (Ok(x), Err(_)) if x.is_finite() => Ordering::Less,
        (Err(_), Ok(y)) if y.is_finite() => Ordering::Greater,
        _ => a.cmp(b),
    }
}

/// A validated finite dynamical system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynamicalSystem {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    step: Vec<usize>,
    inverse: Option<Vec<usize>>,
    time: TimeModel,
}

/// Builds a system from labels and a label-to-label transition table.
pub fn build_system<L, K, V>(labels: &[L], transitions: &HashMap<K, V>, time: TimeModel) -> Result<DynamicalSystem>
where
    L: AsRef<str>,
    K: AsRef<str> + Eq + std::hash::Hash,
    V: AsRef<str>,
{
    let mut sorted: Vec<String> = labels.iter().map(|l| l.as_ref().trim().to_string()).collect();
    sorted.sort_by(|a, b| label_cmp(a, b));
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(Error::DuplicateLabel(w[0].clone()));
        }
    }
    if sorted.len() > MAX_STATES {
        return Err(Error::TooManyStates(sorted.len(), MAX_STATES));
    }
    let index: HashMap<String, usize> = sorted.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
    let lookup: HashMap<&str, &str> = transitions.iter().map(|(k, v)| (k.as_ref().trim(), v.as_ref().trim())).collect();

    let mut step = Vec::with_capacity(sorted.len());
    for label in &sorted {
        let target = lookup.get(label.as_str()).ok_or_else(|| Error::MissingTransition(label.clone()))?;
        let &j = index.get(*target).ok_or_else(|| Error::UnknownTarget {
            source_label: label.clone(),
            target: target.to_string(),
        })?;
        step.push(j);
    }
    DynamicalSystem::assemble(sorted, index, step, time)
}

impl DynamicalSystem {
    /// System on states labelled `1..=n` whose step sends index `i` to `step[i]`.
    pub fn from_indices(step: Vec<usize>, time: TimeModel) -> Result<Self> {
        let n = step.len();
        if n > MAX_STATES {
            return Err(Error::TooManyStates(n, MAX_STATES));
        }
        let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        for (i, &j) in step.iter().enumerate() {
            if j >= n {
                return Err(Error::UnknownTarget { source_label: labels[i].clone(), target: (j + 1).to_string() });
            }
        }
        let index = labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        Self::assemble(labels, index, step, time)
    }

    fn assemble(labels: Vec<String>, index: HashMap<String, usize>, step: Vec<usize>, time: TimeModel) -> Result<Self> {
        let n = step.len();
        let mut inverse = vec![usize::MAX; n];
        let mut bijective = true;
        for (i, &j) in step.iter().enumerate() {
            if inverse[j] != usize::MAX {
                bijective = false;
                break;
            }
            inverse[j] = i;
        }
        let inverse = match (time.kind, bijective) {
            (TimeKind::GroupSteps, false) => return Err(Error::NotInvertible),
            (_, true) => Some(inverse),
            (_, false) => None,
        };
        Ok(DynamicalSystem { labels, index, step, inverse, time })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn time(&self) -> TimeModel {
        self.time
    }

    /// Unit-step image of each state index.
    pub fn step_map(&self) -> &[usize] {
        &self.step
    }

    pub fn is_bijective(&self) -> bool {
        self.inverse.is_some()
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index.get(label.trim()).copied().ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Parses labels into a subset of this system's states.
    pub fn subset<S: AsRef<str>>(&self, labels: &[S]) -> Result<Subset> {
        let idx = labels.iter().map(|l| self.index_of(l.as_ref())).collect::<Result<Vec<_>>>()?;
        Subset::from_indices(self.len(), idx)
    }

    pub fn full_set(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn empty_set(&self) -> Subset {
        Subset::empty(self.len())
    }

    pub fn subset_labels(&self, s: Subset) -> Vec<String> {
        s.iter().map(|i| self.labels[i].clone()).collect()
    }

    fn check(&self, s: Subset) -> Result<()> {
        if s.universe() != self.len() {
            return Err(Error::InvalidSubset(self.len()));
        }
        Ok(())
    }

    /// `U(x, t)` by state index. Negative `t` needs group time.
    pub fn evolve_index(&self, x: usize, t: i64) -> Result<usize> {
        if x >= self.len() {
            return Err(Error::InvalidSubset(self.len()));
        }
        if t < 0 {
            let inverse = match (self.time.kind, &self.inverse) {
                (TimeKind::GroupSteps, Some(inv)) => inv,
                _ => return Err(Error::NegativeTimeInMonoid(t)),
            };
            return Ok(iterate(inverse, x, t.unsigned_abs()));
        }
        Ok(iterate(&self.step, x, t as u64))
    }

    /// `U(x, t)` by label.
    pub fn evolve(&self, x: &str, t: i64) -> Result<&str> {
        let i = self.index_of(x)?;
        Ok(self.label(self.evolve_index(i, t)?))
    }

    /// `[U(x0,0), U(x0,1), ..., U(x0,T)]` by index.
    pub fn trajectory_indices(&self, x0: usize, horizon: u32) -> Vec<usize> {
        let mut out = Vec::with_capacity(horizon as usize + 1);
        let mut x = x0;
        out.push(x);
        for _ in 0..horizon {
            x = self.step[x];
            out.push(x);
        }
        out
    }

    /// The trajectory of `x0` as labels; duplicates are kept.
    pub fn trajectory(&self, x0: &str, horizon: u32) -> Result<Vec<&str>> {
        let i = self.index_of(x0)?;
        Ok(self.trajectory_indices(i, horizon).into_iter().map(|j| self.label(j)).collect())
    }

    /// The set of states visited by the trajectory of `x0` up to `horizon`.
    pub fn trajectory_set(&self, x0: usize, horizon: u32) -> Subset {
        let mut s = self.empty_set();
        for i in self.trajectory_indices(x0, horizon) {
            s.insert(i);
        }
        s
    }

    /// One-step image `U(S, 1)`.
    pub fn image(&self, s: Subset) -> Subset {
        let mut out = self.empty_set();
        for i in s.iter() {
            out.insert(self.step[i]);
        }
        out
    }

    /// The reachability domain `cl_T(S)`: everything reached from `S` within
    /// `horizon` steps, `S` included.
    pub fn closure(&self, s: Subset, horizon: u32) -> Result<Subset> {
        self.check(s)?;
        // cl_{t+1}(S) = S ∪ U(cl_t(S)), so a repeated value is a fixed point.
        let mut acc = s;
        for _ in 0..horizon {
            let next = s.union(self.image(acc));
            if next == acc {
                break;
            }
            acc = next;
        }
        Ok(acc)
    }

    /// The reachability domain of `source` as a [`ReachabilitySet`].
    pub fn reach(&self, source: Subset, horizon: u32) -> Result<ReachabilitySet> {
        let members = self.closure(source, horizon)?;
        Ok(ReachabilitySet { source, horizon, members })
    }

    /// A horizon after which every reachability domain is stationary.
    pub fn saturation_horizon(&self) -> u32 {
        self.len() as u32
    }
}

fn iterate(map: &[usize], x0: usize, t: u64) -> usize {
    // Walk until t steps are taken or a state repeats; then skip whole cycles.
    let mut first_seen = vec![u64::MAX; map.len()];
    let mut x = x0;
    let mut k = 0u64;
    while k < t {
        if first_seen[x] != u64::MAX {
            let cycle = k - first_seen[x];
            let remaining = (t - k) % cycle;
            for _ in 0..remaining {
                x = map[x];
            }
            return x;
        }
        first_seen[x] = k;
        x = map[x];
        k += 1;
    }
    x
}

/// Reachability domain of a source region at a fixed horizon.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReachabilitySet {
    pub source: Subset,
    pub horizon: u32,
    pub members: Subset,
}

/// The `n`-state cyclic shift `x -> x+1` with `n -> 1`.
pub fn cyclic_shift(n: usize) -> DynamicalSystem {
    DynamicalSystem::from_indices((0..n).map(|i| (i + 1) % n).collect(), TimeModel::monoid(1))
        .expect("cyclic shift is well formed")
}

/// The four-state system `x -> x+2` with periodic boundary, i.e. two 2-cycles.
pub fn two_cycles() -> DynamicalSystem {
    DynamicalSystem::from_indices(vec![2, 3, 0, 1], TimeModel::monoid(1)).expect("well formed")
}
