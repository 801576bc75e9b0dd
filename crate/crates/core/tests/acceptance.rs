//! Acceptance criteria, one pass/fail line each.

mod common;

use bass_core::bdd::{BddManager, BddVar, Valuation};
use bass_core::encoding::{self, Interpretation, Value, VarLayout};
use bass_core::formula::{Adf, Formula};
use bass_core::oracle;
use bass_core::semantics::{self, Semantics, SymbolicAdf};
use bass_core::solutions::{self, SampleSeed};
use common::*;
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};
use std::collections::{BTreeSet, HashMap};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(condition: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if condition {
        Ok(())
    } else {
        Err(message())
    }
}

fn symbolic_set(solver: &mut SymbolicAdf, semantics: Semantics, restrict: bool) -> BTreeSet<Interpretation> {
    let set = solver.solve(semantics, restrict).set;
    solutions::enumerate(solver, &set, None).collect()
}

fn interp(values: &str) -> Interpretation {
    Interpretation::new(
        values
            .chars()
            .map(|c| match c {
                '1' => Value::True,
                '0' => Value::False,
                _ => Value::Undecided,
            })
            .collect(),
    )
}

fn example_counts() -> Outcome {
    let start = Instant::now();
    let mut solver = SymbolicAdf::new(example()).unwrap();
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
        let count = solutions::count(&solver, &set);
        ensure(count == BigUint::from(n), || format!("{sem}: {count} != {n}"))?;
    }
    let stable = symbolic_set(&mut solver, Semantics::Stable, true);
    ensure(stable == BTreeSet::from([interp("100")]), || format!("stable {stable:?}"))?;
    let grounded = symbolic_set(&mut solver, Semantics::Grounded, true);
    ensure(grounded == BTreeSet::from([interp("1**")]), || format!("grounded {grounded:?}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("adm 5, com 3, prf 2, 2v 2, stb 1, grd 1 in {elapsed:?}"))
}

fn random_adfs(seed: u64, count: usize, free_input: bool) -> Vec<Adf> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_adf(&mut rng, 7, free_input)).collect()
}

fn oracle_agreement() -> Outcome {
    let adfs = random_adfs(0xadf, 200, false);
    let mut members = 0usize;
    for (k, adf) in adfs.iter().enumerate() {
        let mut solver = SymbolicAdf::new(adf.clone()).unwrap();
        for sem in Semantics::ALL {
            let found = symbolic_set(&mut solver, sem, true);
            let expected = oracle::brute_semantics(adf, sem).unwrap();
            ensure(found == expected, || {
                format!("instance {k} {sem}: symbolic {found:?} oracle {expected:?}\n{}", bass_core::formula::write_adf(adf))
            })?;
            members += found.len();
        }
    }
    Ok(format!("{} frameworks x 6 semantics, {members} solutions compared", adfs.len()))
}

fn dual_transform_agreement() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xd0a1);
    let mut nontrivial = 0;
    for k in 0..200 {
        let n = rng.gen_range(1..=6);
        let vars = names(n);
        let depth = rng.gen_range(1..=5);
        let formula = random_formula(&mut rng, &vars, depth);
        let adf = Adf::new(vars.clone(), vars.iter().map(|v| Formula::var(v.clone())).collect()).unwrap();
        let layout = VarLayout::new(n);
        let mut m = BddManager::new(layout.num_vars());
        let f = encoding::formula_to_bdd(&mut m, &layout, &adf, &formula).unwrap();
        let structural = encoding::dual_transform(&mut m, &layout, f).unwrap();
        let quantified = oracle::quantified_dual(&mut m, &layout, f);
        let valid = encoding::validity_constraint(&mut m, &layout);
        let lhs = m.and(structural, valid);
        let rhs = m.and(quantified, valid);
        ensure(lhs == rhs, || format!("formula {k}: {formula}"))?;
        if !f.is_true() && !f.is_false() {
            nontrivial += 1;
        }
    }
    Ok(format!("200 formulas ({nontrivial} non-constant), roots identical"))
}

fn inclusion_chain() -> Outcome {
    let mut adfs = vec![example()];
    adfs.extend(random_adfs(0xc4a1, 200, false));
    for (k, adf) in adfs.iter().enumerate() {
        let mut solver = SymbolicAdf::new(adf.clone()).unwrap();
        let adm = solver.solve(Semantics::Admissible, true).set;
        let com = solver.solve(Semantics::Complete, true).set;
        let prf = solver.solve(Semantics::Preferred, true).set;
        let two = solver.solve(Semantics::TwoValued, true).set;
        let stb = solver.solve(Semantics::Stable, true).set;
        let two_dual = solver.embed_two_valued(&two);
        let checks = [
            ("stb <= 2v", solver.is_subset(&stb, &two)),
            ("2v <= prf", solver.is_subset(&two_dual, &prf)),
            ("prf <= com", solver.is_subset(&prf, &com)),
            ("com <= adm", solver.is_subset(&com, &adm)),
            ("grd in com", solver.contains(&com, &solver.grounded())),
        ];
        for (name, ok) in checks {
            ensure(ok, || format!("instance {k}: {name} fails"))?;
        }
    }
    Ok(format!("stb <= 2v <= prf <= com <= adm and grd in com on {} frameworks", adfs.len()))
}

fn popcount(row: usize) -> usize {
    row.count_ones() as usize
}

fn row_valuation(row: usize, vars: usize) -> Valuation {
    Valuation::from_values((0..vars).map(|j| row >> j & 1 == 1).collect())
}

fn bdd_primitives() -> Outcome {
    const VARS: usize = 10;
    let mut rng = ChaCha8Rng::seed_from_u64(0xb00);
    let all: Vec<BddVar> = (0..VARS).map(BddVar::from).collect();
    let mut m = BddManager::new(VARS);

    // Least number of positive variables.
    for k in 0..200 {
        let density = [0.002, 0.02, 0.2, 0.6][k % 4];
        let table = random_table(&mut rng, VARS, density);
        let f = from_table(&mut m, &all, &table);
        let best = (0..table.len()).filter(|r| table[*r]).map(popcount).min();
        match (m.least_positive_valuation(f, &all), best) {
            (None, None) => {}
            (Some(v), Some(b)) => {
                ensure(m.eval(f, &v).unwrap(), || format!("least valuation {k} is not a model"))?;
                ensure(v.count_positive() == b, || format!("least valuation {k}: {} vs {b}", v.count_positive()))?;
            }
            (got, want) => return Err(format!("least valuation {k}: {got:?} vs {want:?}")),
        }
    }

    // Exactly k of the indicator functions hold.
    for k in 0..200 {
        let count = rng.gen_range(1..=6);
        let tables: Vec<Vec<bool>> = (0..count).map(|_| random_table(&mut rng, VARS, 0.5)).collect();
        let indicators: Vec<_> = tables.iter().map(|t| from_table(&mut m, &all, t)).collect();
        let target = rng.gen_range(0..=count + 1);
        let constraint = m.exact_count_constraint(&indicators, target);
        for row in 0..1usize << VARS {
            let holding = tables.iter().filter(|t| t[row]).count();
            let got = m.eval(constraint, &row_valuation(row, VARS)).unwrap();
            ensure(got == (holding == target), || format!("count constraint {k}, row {row}"))?;
        }
    }

    // Upward closure over a random subset of the variables.
    for k in 0..200 {
        let table = random_table(&mut rng, VARS, [0.003, 0.01, 0.05][k % 3]);
        let mask: usize = rng.gen_range(0..1 << VARS);
        let over: Vec<BddVar> = (0..VARS).filter(|j| mask >> j & 1 == 1).map(BddVar::from).collect();
        let f = from_table(&mut m, &all, &table);
        let closure = m.upward_closure(f, &over);
        for row in 0..1usize << VARS {
            // Some model agrees with `row` outside `over` and is below it on `over`.
            let expected = (0..1usize << VARS).any(|y| table[y] && y & !mask == row & !mask && y & mask & !row == 0);
            let got = m.eval(closure, &row_valuation(row, VARS)).unwrap();
            ensure(got == expected, || format!("upward closure {k}, row {row}"))?;
        }
    }
    Ok("200 functions each for least valuation, exact count and upward closure".into())
}

fn iteration_bounds() -> Outcome {
    let adfs = random_adfs(0x17e5, 200, false);
    let mut worst = (0, 0);
    for (k, adf) in adfs.iter().enumerate() {
        let n = adf.len();
        let mut solver = SymbolicAdf::new(adf.clone()).unwrap();
        for restrict in [true, false] {
            for sem in [Semantics::Preferred, Semantics::Stable] {
                let it = solver.solve(sem, restrict).iterations;
                ensure(it <= n + 1, || format!("instance {k} {sem}: {it} iterations for {n} arguments"))?;
                if it > worst.0 {
                    worst = (it, n);
                }
            }
        }
    }
    Ok(format!("200 frameworks, worst case {} iterations at n = {}", worst.0, worst.1))
}

fn free_input_count() -> Outcome {
    let vars = names(70);
    let conditions = vars.iter().map(|v| Formula::var(v.clone())).collect();
    let mut solver = SymbolicAdf::new(Adf::new(vars, conditions).unwrap()).unwrap();
    let set = solver.solve(Semantics::TwoValued, true).set;
    let count = solutions::count(&solver, &set);
    let expected: BigUint = "1180591620717411303424".parse().unwrap();
    ensure(count == expected, || format!("count {count}"))?;
    Ok(format!("2v count {count}"))
}

fn sampling_uniformity() -> Outcome {
    let mut solver = SymbolicAdf::new(example()).unwrap();
    let adm = solver.solve(Semantics::Admissible, true).set;
    let draws = solutions::sample_uniform(&solver, &adm, 10_000, SampleSeed(2024)).unwrap();
    let mut histogram: HashMap<Interpretation, usize> = HashMap::new();
    for d in &draws {
        ensure(solver.contains(&adm, d), || format!("sample {d:?} outside the set"))?;
        *histogram.entry(d.clone()).or_default() += 1;
    }
    ensure(histogram.len() == 5, || format!("{} distinct samples", histogram.len()))?;
    let expected = draws.len() as f64 / 5.0;
    let statistic: f64 = histogram
        .values()
        .map(|o| (*o as f64 - expected).powi(2) / expected)
        .sum();
    let critical = ChiSquared::new(4.0).unwrap().inverse_cdf(0.999);
    ensure(statistic < critical, || format!("chi-square {statistic:.3} >= {critical:.3}"))?;
    Ok(format!("chi-square {statistic:.3} < {critical:.3} (df 4, p 0.001)"))
}

fn input_restriction() -> Outcome {
    let adfs = random_adfs(0xf2ee, 60, true);
    for (k, adf) in adfs.iter().enumerate() {
        ensure(!adf.free_inputs().is_empty(), || format!("instance {k} has no free input"))?;
        let mut solver = SymbolicAdf::new(adf.clone()).unwrap();
        for (sem, banned) in [(Semantics::Preferred, Value::Undecided), (Semantics::Stable, Value::True)] {
            let restricted = symbolic_set(&mut solver, sem, true);
            let plain = symbolic_set(&mut solver, sem, false);
            ensure(restricted == plain, || format!("instance {k} {sem}: restriction changed the result"))?;
            for i in &plain {
                ensure(semantics::avoids_on_free_inputs(adf, i, banned), || {
                    format!("instance {k} {sem}: {i:?} has {banned} on a free input")
                })?;
            }
        }
    }
    Ok(format!("{} frameworks with free inputs", adfs.len()))
}

/// 10 x 20 grid. Cells in the first column are facts; every other cell combines three of its
/// orthogonal neighbours (two in the corners) with and/or, negating each one with
/// probability 0.03.
fn grid_adf(seed: u64) -> Adf {
    const ROWS: usize = 10;
    const COLS: usize = 20;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let name = |r: usize, c: usize| format!("g{r}_{c}");
    let mut arguments = Vec::new();
    let mut conditions = Vec::new();
    for r in 0..ROWS {
        for c in 0..COLS {
            let mut deps = Vec::new();
            if c > 0 {
                deps.push(name(r, c - 1));
            }
            if c + 1 < COLS {
                deps.push(name(r, c + 1));
            }
            if r > 0 {
                deps.push(name(r - 1, c));
            }
            if r + 1 < ROWS {
                deps.push(name(r + 1, c));
            }
            if deps.len() > 3 {
                deps.swap_remove(rng.gen_range(0..deps.len()));
            }
            let literals: Vec<Formula> = deps
                .into_iter()
                .map(|d| {
                    let v = Formula::var(d);
                    if rng.gen_bool(0.03) {
                        Formula::not(v)
                    } else {
                        v
                    }
                })
                .collect();
            let mut literals = literals.into_iter();
            let mut condition = literals.next().unwrap();
            for l in literals {
                condition = if rng.gen_bool(0.5) {
                    Formula::and(condition, l)
                } else {
                    Formula::or(condition, l)
                };
            }
            if c == 0 {
                condition = Formula::Const(true);
            }
            arguments.push(name(r, c));
            conditions.push(condition);
        }
    }
    Adf::new(arguments, conditions).unwrap()
}

fn grid_scaling() -> Outcome {
    let adf = grid_adf(8);
    let text = bass_core::formula::write_adf(&adf);
    for connective in ["and(", "or(", "neg("] {
        ensure(text.contains(connective), || format!("grid lacks {connective}"))?;
    }
    let start = Instant::now();
    let mut solver = SymbolicAdf::new(adf.clone()).unwrap();
    let two = solver.solve(Semantics::TwoValued, true).set;
    let two_count = solutions::count(&solver, &two);
    let stb = solver.stable(&two).set;
    let stb_count = solutions::count(&solver, &stb);
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;

    let expected_two: BigUint = 150_541_492u32.into();
    ensure(two_count == expected_two, || format!("2v count {two_count}"))?;
    ensure(stb_count == BigUint::from(1u32), || format!("stb count {stb_count}"))?;
    for model in solutions::enumerate(&solver, &stb, None) {
        ensure(oracle::is_stable(&adf, &model).unwrap(), || "stable model fails the reduct check".into())?;
    }
    for model in solutions::sample_uniform(&solver, &two, 50, SampleSeed(1)).unwrap() {
        let image = oracle::brute_gamma_capped(&adf, &model, usize::MAX).unwrap();
        ensure(image == model, || "sampled 2v model is not a fixed point".into())?;
    }
    Ok(format!("200 arguments: 2v {two_count}, stb {stb_count} in {elapsed:?}"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("example framework counts and solutions", example_counts),
        ("random frameworks agree with the oracle", oracle_agreement),
        ("structural dual equals quantified dual", dual_transform_agreement),
        ("semantics inclusion chain", inclusion_chain),
        ("BDD primitives against brute force", bdd_primitives),
        ("extraction loops within n + 1 iterations", iteration_bounds),
        ("70 free inputs counted exactly", free_input_count),
        ("uniform sampling passes chi-square", sampling_uniformity),
        ("free-input restriction is sound", input_restriction),
        ("200-argument grid solved within 60 s", grid_scaling),
    ];
    let mut failures = 0;
    for (k, (name, criterion)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(criterion)).unwrap_or_else(|panic| {
            let message = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {message}"))
        });
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", k + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL criterion {}: {name}: {detail}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
