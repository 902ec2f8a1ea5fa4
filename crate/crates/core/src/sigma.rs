//! Observational distinctions: binary properties, the σ-algebras they
//! generate, σ-algebras generated by reachability domains, and measures.
//!
//! On a finite set every σ-algebra is determined by its atoms, the classes
//! of elements no generating set can tell apart. Algebras are stored by
//! atoms and the full list of `2^atoms` members is produced on demand.

use std::collections::BTreeMap;

use crate::dynsys::DynamicalSystem;
use crate::error::{Error, Result};
use crate::pretopology::ENUMERATION_CAP;
use crate::subset::{canonicalize, Subset};

/// Absolute tolerance for comparing measure values.
pub const MEASURE_TOL: f64 = 1e-12;

/// A yes/no property of the elements of a finite set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyFn {
    pub name: String,
    truth: Vec<bool>,
}

impl PropertyFn {
    pub fn new(name: impl Into<String>, truth: Vec<bool>) -> Self {
        PropertyFn { name: name.into(), truth }
    }

    /// Property whose truth set is `set`.
    pub fn indicator(name: impl Into<String>, set: Subset) -> Self {
        Self::new(name, (0..set.universe()).map(|i| set.contains(i)).collect())
    }

    /// Property given by a partial truth table; missing elements are an error.
    pub fn from_table(name: impl Into<String>, universe: usize, table: &BTreeMap<usize, bool>) -> Result<Self> {
        let name = name.into();
        let truth = (0..universe)
            .map(|i| table.get(&i).copied())
            .collect::<Option<Vec<bool>>>()
            .ok_or_else(|| Error::PartialProperty(name.clone()))?;
        Ok(Self::new(name, truth))
    }

    pub fn eval(&self, x: usize) -> bool {
        self.truth[x]
    }

    /// The preimage of 1.
    pub fn truth_set(&self) -> Subset {
        Subset::from_indices(self.truth.len(), (0..self.truth.len()).filter(|&i| self.truth[i])).expect("in range")
    }

    pub fn universe(&self) -> usize {
        self.truth.len()
    }
}

/// A finite σ-algebra described by its atom partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaAlgebra {
    universe: usize,
    atoms: Vec<Subset>,
}

impl SigmaAlgebra {
    /// The coarsest algebra `{∅, X}`.
    pub fn trivial(universe: usize) -> Self {
        Self::from_generators(universe, &[])
    }

    /// The power set.
    pub fn discrete(universe: usize) -> Self {
        let atoms = (0..universe).map(|i| Subset::singleton(universe, i).expect("in range")).collect();
        Self::from_atoms_unchecked(universe, atoms)
    }

    fn from_atoms_unchecked(universe: usize, mut atoms: Vec<Subset>) -> Self {
        canonicalize(&mut atoms);
        SigmaAlgebra { universe, atoms }
    }

    /// Smallest algebra containing every generator: atoms are the classes of
    /// the joint membership fingerprint.
    pub fn from_generators(universe: usize, generators: &[Subset]) -> Self {
        let mut classes: BTreeMap<Vec<bool>, Subset> = BTreeMap::new();
        for x in 0..universe {
            let key: Vec<bool> = generators.iter().map(|g| g.contains(x)).collect();
            classes.entry(key).or_insert_with(|| Subset::empty(universe)).insert(x);
        }
        Self::from_atoms_unchecked(universe, classes.into_values().collect())
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn atoms(&self) -> &[Subset] {
        &self.atoms
    }

    /// `2^atoms`; saturates for more than 63 atoms.
    pub fn set_count(&self) -> u128 {
        1u128 << self.atoms.len().min(127)
    }

    /// Whether `s` is a union of atoms.
    pub fn contains(&self, s: Subset) -> bool {
        s.universe() == self.universe && self.atoms.iter().all(|&a| a.is_subset_of(s) || a.is_disjoint(s))
    }

    /// Index of the atom holding element `x`.
    pub fn atom_of(&self, x: usize) -> usize {
        self.atoms.iter().position(|a| a.contains(x)).expect("atoms cover the universe")
    }

    /// Every member of the algebra in canonical order. Materializes
    /// `2^atoms` sets, so callers should bound the atom count.
    pub fn sets(&self) -> Result<Vec<Subset>> {
        let k = self.atoms.len();
        if k > ENUMERATION_CAP {
            return Err(Error::StateSpaceTooLarge(k, ENUMERATION_CAP));
        }
        let mut out: Vec<Subset> = (0..1u64 << k)
            .map(|mask| {
                self.atoms
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| mask >> j & 1 == 1)
                    .fold(Subset::empty(self.universe), |acc, (_, &a)| acc.union(a))
            })
            .collect();
        canonicalize(&mut out);
        Ok(out)
    }

    /// Indicator properties of the atoms.
    pub fn atom_properties(&self) -> Vec<PropertyFn> {
        self.atoms.iter().enumerate().map(|(j, &a)| PropertyFn::indicator(format!("atom{j}"), a)).collect()
    }
}

/// The σ-algebra generated by the truth sets of `properties` on a set of
/// `universe` elements.
pub fn generate_sigma(properties: &[PropertyFn], universe: usize) -> Result<SigmaAlgebra> {
    let mut generators = Vec::with_capacity(properties.len());
    for p in properties {
        if p.universe() != universe {
            return Err(Error::PartialProperty(p.name.clone()));
        }
        generators.push(p.truth_set());
    }
    Ok(SigmaAlgebra::from_generators(universe, &generators))
}

/// The σ-algebra generated by every reachability domain at `horizon`.
///
/// Reachability preserves unions, so the single-point domains already
/// generate it.
pub fn sigma_from_reachability(sys: &DynamicalSystem, horizon: u32) -> Result<SigmaAlgebra> {
    if sys.len() > ENUMERATION_CAP {
        return Err(Error::StateSpaceTooLarge(sys.len(), ENUMERATION_CAP));
    }
    let generators: Vec<Subset> = (0..sys.len()).map(|i| sys.trajectory_set(i, horizon)).collect();
    Ok(SigmaAlgebra::from_generators(sys.len(), &generators))
}

/// A measure given by its value on each atom and extended additively.
#[derive(Debug, Clone, PartialEq)]
pub struct Measure {
    algebra: SigmaAlgebra,
    weights: Vec<f64>,
}

impl Measure {
    /// Weights are listed in the algebra's atom order. Only the shape is
    /// checked here; see [`Measure::validate`].
    pub fn new(algebra: SigmaAlgebra, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != algebra.atoms().len() {
            return Err(Error::WeightCount { expected: algebra.atoms().len(), got: weights.len() });
        }
        Ok(Measure { algebra, weights })
    }

    /// Collects per-element weights onto the atoms of `algebra`.
    pub fn from_point_weights(algebra: SigmaAlgebra, points: &[f64]) -> Result<Self> {
        if points.len() != algebra.universe() {
            return Err(Error::PartialFunction);
        }
        let mut weights = vec![0.0; algebra.atoms().len()];
        for (x, w) in points.iter().enumerate() {
            weights[algebra.atom_of(x)] += w;
        }
        Self::new(algebra, weights)
    }

    /// Equal weight on every element.
    pub fn uniform(algebra: SigmaAlgebra) -> Self {
        let n = algebra.universe() as f64;
        let weights = algebra.atoms().iter().map(|a| a.len() as f64 / n).collect();
        Measure { algebra, weights }
    }

    pub fn algebra(&self) -> &SigmaAlgebra {
        &self.algebra
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `μ(A)`; `None` when `A` is not measurable.
    pub fn measure(&self, a: Subset) -> Option<f64> {
        if !self.algebra.contains(a) {
            return None;
        }
        Some(
            self.algebra
                .atoms()
                .iter()
                .zip(&self.weights)
                .filter(|(atom, _)| atom.is_subset_of(a))
                .map(|(_, w)| w)
                .sum(),
        )
    }

    pub fn total(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn validate(&self) -> MeasureReport {
        validate_measure(self)
    }

    pub fn is_probabilistic(&self) -> bool {
        self.validate().is_probability()
    }
}

/// Diagnostics for a [`Measure`].
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureReport {
    pub non_negative: bool,
    /// Atoms carrying a negative weight.
    pub negative_atoms: Vec<usize>,
    pub all_finite: bool,
    /// `|μ(X) − Σ μ(atom)|` computed through the set-level extension.
    pub additivity_deviation: f64,
    /// `|μ(X) − 1|`.
    pub normalization_deviation: f64,
}

impl MeasureReport {
    pub fn is_probability(&self) -> bool {
        self.non_negative
            && self.all_finite
            && self.additivity_deviation <= MEASURE_TOL
            && self.normalization_deviation <= MEASURE_TOL
    }
}

pub fn validate_measure(m: &Measure) -> MeasureReport {
    let negative_atoms: Vec<usize> = m.weights.iter().enumerate().filter(|(_, &w)| w < 0.0).map(|(j, _)| j).collect();
    let full = m.measure(Subset::full(m.algebra.universe())).unwrap_or(f64::NAN);
    // Sum the atoms pairwise-merged, as additivity would on disjoint unions.
    let mut parts: Vec<f64> = m.algebra.atoms().iter().map(|&a| m.measure(a).unwrap_or(f64::NAN)).collect();
    while parts.len() > 1 {
        parts = parts.chunks(2).map(|c| c.iter().sum()).collect();
    }
    let piecewise = parts.first().copied().unwrap_or(0.0);
    MeasureReport {
        non_negative: negative_atoms.is_empty(),
        negative_atoms,
        all_finite: m.weights.iter().all(|w| w.is_finite()),
        additivity_deviation: (full - piecewise).abs(),
        normalization_deviation: (full - 1.0).abs(),
    }
}

/// `∫ f dμ` for a probability measure. An atom's weight is shared equally
/// among its elements, so `f` need not be constant on atoms.
pub fn expectation(f: &[f64], m: &Measure) -> Result<f64> {
    if f.len() != m.algebra.universe() {
        return Err(Error::PartialFunction);
    }
    let report = m.validate();
    if !report.is_probability() {
        return Err(Error::NotProbabilistic(format!(
            "non-negative: {}, normalization deviation {:.3e}",
            report.non_negative, report.normalization_deviation
        )));
    }
    Ok(m.algebra
        .atoms()
        .iter()
        .zip(&m.weights)
        .map(|(atom, w)| w / atom.len() as f64 * atom.iter().map(|x| f[x]).sum::<f64>())
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parity_and_primes() -> (PropertyFn, PropertyFn) {
        // elements 1..=5 at indices 0..=4
        let even = PropertyFn::new("even", vec![false, true, false, true, false]);
        let prime = PropertyFn::new("prime", vec![false, true, true, false, true]);
        (even, prime)
    }

    fn set(bits: &[usize]) -> Subset {
        Subset::from_indices(5, bits.iter().map(|b| b - 1)).unwrap()
    }

    #[test]
    fn even_prime_atoms() {
        let (e, p) = parity_and_primes();
        let alg = generate_sigma(&[e.clone(), p.clone()], 5).unwrap();
        assert_eq!(alg.atoms(), &[set(&[1]), set(&[2]), set(&[4]), set(&[3, 5])]);
        assert_eq!(alg.sets().unwrap().len(), 16);
        let even_not_prime = e.truth_set().intersection(p.truth_set().complement());
        assert_eq!(even_not_prime, set(&[4]));
        assert!(alg.contains(even_not_prime));
        assert!(!alg.contains(set(&[3])));
    }

    #[test]
    fn trivial_and_single_property() {
        let alg = generate_sigma(&[], 5).unwrap();
        assert_eq!(alg.sets().unwrap(), vec![Subset::empty(5), Subset::full(5)]);
        let (e, _) = parity_and_primes();
        let alg = generate_sigma(&[e], 5).unwrap();
        assert_eq!(alg.sets().unwrap(), vec![Subset::empty(5), set(&[2, 4]), set(&[1, 3, 5]), Subset::full(5)]);
    }

    #[test]
    fn partial_property_is_rejected() {
        let p = PropertyFn::new("short", vec![true; 4]);
        assert_eq!(generate_sigma(&[p], 5), Err(Error::PartialProperty("short".into())));
        let table: BTreeMap<usize, bool> = [(0, true), (2, false)].into_iter().collect();
        assert!(PropertyFn::from_table("t", 3, &table).is_err());
    }

    #[test]
    fn regenerating_from_atoms_is_idempotent() {
        let (e, p) = parity_and_primes();
        let alg = generate_sigma(&[e, p], 5).unwrap();
        assert_eq!(generate_sigma(&alg.atom_properties(), 5).unwrap(), alg);
    }

    #[test]
    fn reachability_algebras() {
        use crate::dynsys::{cyclic_shift, two_cycles, TimeModel};
        let alg = sigma_from_reachability(&two_cycles(), 1).unwrap();
        assert_eq!(alg.atoms().len(), 2);
        let id = DynamicalSystem::from_indices(vec![0, 1, 2], TimeModel::monoid(1)).unwrap();
        assert_eq!(sigma_from_reachability(&id, 3).unwrap(), SigmaAlgebra::discrete(3));
        assert_eq!(sigma_from_reachability(&cyclic_shift(5), 5).unwrap(), SigmaAlgebra::trivial(5));
    }

    #[test]
    fn expectation_examples() {
        let alg = SigmaAlgebra::discrete(5);
        let ident = [1.0, 2.0, 3.0, 4.0, 5.0];
        assert!((expectation(&ident, &Measure::uniform(alg.clone())).unwrap() - 3.0).abs() < 1e-15);
        let m = Measure::from_point_weights(alg.clone(), &[0.5, 0.5, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(expectation(&[1.0; 5], &m).unwrap(), 1.0);
        let sq: Vec<f64> = ident.iter().map(|x| x * x).collect();
        assert!((expectation(&sq, &m).unwrap() - 2.5).abs() < 1e-15);
        assert_eq!(expectation(&[1.0; 4], &m), Err(Error::PartialFunction));
    }

    #[test]
    fn validation_reports() {
        let alg = SigmaAlgebra::discrete(5);
        let r = Measure::uniform(alg.clone()).validate();
        assert!(r.is_probability());
        assert!(r.normalization_deviation < 1e-15);

        let m = Measure::new(alg.clone(), vec![0.18; 5]).unwrap();
        let r = m.validate();
        assert!((r.normalization_deviation - 0.1).abs() < 1e-12);
        assert!(matches!(expectation(&[0.0; 5], &m), Err(Error::NotProbabilistic(_))));

        let r = Measure::new(alg.clone(), vec![-0.1, 0.3, 0.3, 0.3, 0.2]).unwrap().validate();
        assert!(!r.non_negative);
        assert_eq!(r.negative_atoms, vec![0]);

        assert_eq!(
            Measure::new(alg, vec![1.0]).unwrap_err(),
            Error::WeightCount { expected: 5, got: 1 }
        );
    }

    #[test]
    fn non_measurable_sets_have_no_measure() {
        let (e, _) = parity_and_primes();
        let m = Measure::uniform(generate_sigma(&[e], 5).unwrap());
        assert_eq!(m.measure(set(&[2])), None);
        assert!((m.measure(set(&[2, 4])).unwrap() - 0.4).abs() < 1e-15);
    }
}
