//! Counting, enumeration and uniform sampling of solution sets.

use crate::bdd::{BddError, ModelCounts, NodeId, SatValuations, Valuation};
use crate::encoding::{self, EncodingKind, Interpretation};
use crate::semantics::{SolutionSet, SymbolicAdf};
use num_bigint::{BigUint, RandBigInt};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seed of the deterministic generator used by [`sample_uniform`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SampleSeed(pub u64);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolutionError {
    #[error("cannot sample from an empty solution set")]
    EmptySet,
    #[error(transparent)]
    Bdd(#[from] BddError),
}

/// Exact number of interpretations in the set.
pub fn count(solver: &SymbolicAdf, set: &SolutionSet) -> BigUint {
    let vars = solver.layout().vars_of(set.kind);
    solver
        .manager()
        .sat_count(set.bdd, &vars)
        .expect("solution sets only mention their own variables")
}

/// Interpretations of the set in lexicographic order of the manager variables (false first).
pub fn enumerate<'a>(
    solver: &'a SymbolicAdf,
    set: &SolutionSet,
    limit: Option<usize>,
) -> impl Iterator<Item = Interpretation> + 'a {
    let layout = *solver.layout();
    let kind = set.kind;
    let valuations: SatValuations<'a> = solver
        .manager()
        .sat_valuations(set.bdd, &layout.vars_of(kind))
        .expect("solution sets only mention their own variables");
    valuations
        .map(move |v| decode(&v, &layout, kind))
        .take(limit.unwrap_or(usize::MAX))
}

fn decode(valuation: &Valuation, layout: &encoding::VarLayout, kind: EncodingKind) -> Interpretation {
    encoding::decode(valuation, layout, kind).expect("dual-encoded sets carry the validity constraint")
}

/// Draws exactly uniform members of a BDD-encoded set.
///
/// Model counts are computed once per node; each draw walks one root-to-terminal path, picking
/// the branch with probability proportional to the number of models below it (scaled by the
/// variables skipped on that edge) and setting skipped variables by fair coin flips.
pub struct UniformSampler<'a> {
    solver: &'a SymbolicAdf,
    kind: EncodingKind,
    counts: ModelCounts,
    total: BigUint,
}

impl<'a> UniformSampler<'a> {
    pub fn new(solver: &'a SymbolicAdf, set: &SolutionSet) -> Result<Self, SolutionError> {
        let vars = solver.layout().vars_of(set.kind);
        let counts = solver.manager().model_counts(set.bdd, &vars)?;
        let total = counts.total();
        if total.is_zero() {
            return Err(SolutionError::EmptySet);
        }
        Ok(UniformSampler {
            solver,
            kind: set.kind,
            counts,
            total,
        })
    }

    pub fn total(&self) -> &BigUint {
        &self.total
    }

    pub fn draw_valuation(&self, rng: &mut impl Rng) -> Valuation {
        let manager = self.solver.manager();
        let domain = self.counts.domain();
        let mut valuation = Valuation::all_false(manager.num_vars());
        let mut node = self.counts.root();
        let mut depth = 0;
        while depth < domain.len() {
            let var = domain[depth];
            if node.is_terminal() || manager.var_of(node) != var {
                // Skipped variable: both values lead to the same sub-function.
                valuation.set(var, rng.gen_bool(0.5));
                depth += 1;
                continue;
            }
            let decision = *manager.node(node);
            let weight = |child: NodeId| -> BigUint {
                let gap = self.counts.level(manager, child) - depth - 1;
                self.counts.node_count(child) << gap
            };
            let neg_weight = weight(decision.neg);
            let pos_weight = weight(decision.pos);
            let total = &neg_weight + &pos_weight;
            let pick = rng.gen_biguint_below(&total);
            let take_pos = pick >= neg_weight;
            valuation.set(var, take_pos);
            node = if take_pos { decision.pos } else { decision.neg };
            depth += 1;
        }
        debug_assert_eq!(node, NodeId::ONE);
        valuation
    }

    pub fn draw(&self, rng: &mut impl Rng) -> Interpretation {
        decode(&self.draw_valuation(rng), self.solver.layout(), self.kind)
    }
}

/// `n` independent uniform draws from the set, deterministic for a given seed.
pub fn sample_uniform(
    solver: &SymbolicAdf,
    set: &SolutionSet,
    n: usize,
    seed: SampleSeed,
) -> Result<Vec<Interpretation>, SolutionError> {
    let sampler = UniformSampler::new(solver, set)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed.0);
    Ok((0..n).map(|_| sampler.draw(&mut rng)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::Value;
    use crate::formula::parse_adf;
    use crate::semantics::Semantics;
    use std::collections::HashMap;

    fn example1() -> SymbolicAdf {
        let adf = parse_adf("s(a). s(b). s(c). ac(a,c(v)). ac(b,or(neg(a),c)). ac(c,b).").unwrap();
        SymbolicAdf::new(adf).unwrap()
    }

    #[test]
    fn example_counts_and_enumeration() {
        let mut solver = example1();
        let expected = [
            (Semantics::Admissible, 5u32),
            (Semantics::Complete, 3),
            (Semantics::Preferred, 2),
            (Semantics::TwoValued, 2),
            (Semantics::Stable, 1),
            (Semantics::Grounded, 1),
        ];
        for (sem, n) in expected {
            let set = solver.solve(sem, true).set;
            assert_eq!(count(&solver, &set), BigUint::from(n), "{sem}");
            assert_eq!(enumerate(&solver, &set, None).count(), n as usize);
        }
        let prf = solver.solve(Semantics::Preferred, true).set;
        let listed: Vec<Interpretation> = enumerate(&solver, &prf, None).collect();
        // (0,1) sorts before (1,0) in the dual encoding, so b = c = 0 comes first.
        assert_eq!(
            listed,
            vec![
                Interpretation::new(vec![Value::True, Value::False, Value::False]),
                Interpretation::new(vec![Value::True; 3]),
            ]
        );
        assert_eq!(enumerate(&solver, &prf, Some(1)).count(), 1);
    }

    #[test]
    fn empty_set() {
        let adf = parse_adf("s(a). ac(a,neg(a)).").unwrap();
        let mut solver = SymbolicAdf::new(adf).unwrap();
        let two = solver.two_valued_models();
        assert_eq!(enumerate(&solver, &two, None).count(), 0);
        assert_eq!(
            sample_uniform(&solver, &two, 3, SampleSeed(1)).unwrap_err(),
            SolutionError::EmptySet
        );
    }

    #[test]
    fn singleton_sampling() {
        let mut solver = example1();
        let stb = solver.solve(Semantics::Stable, true).set;
        let draws = sample_uniform(&solver, &stb, 50, SampleSeed(9)).unwrap();
        let only = Interpretation::new(vec![Value::True, Value::False, Value::False]);
        assert!(draws.iter().all(|d| *d == only));
    }

    #[test]
    fn sampling_is_deterministic_and_in_set() {
        let mut solver = example1();
        let adm = solver.admissible();
        let a = sample_uniform(&solver, &adm, 200, SampleSeed(42)).unwrap();
        let b = sample_uniform(&solver, &adm, 200, SampleSeed(42)).unwrap();
        assert_eq!(a, b);
        let mut seen: HashMap<Interpretation, usize> = HashMap::new();
        for d in &a {
            assert!(solver.contains(&adm, d));
            *seen.entry(d.clone()).or_default() += 1;
        }
        assert_eq!(seen.len(), 5);
    }
}
