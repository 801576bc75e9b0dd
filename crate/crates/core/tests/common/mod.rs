#![allow(dead_code)]

use bass_core::bdd::{Bdd, BddManager, BddVar};
use bass_core::formula::{Adf, Formula};
use rand::Rng;

pub const EXAMPLE: &str = "s(a). s(b). s(c). ac(a,c(v)). ac(b,or(neg(a),c)). ac(c,b).";

pub fn example() -> Adf {
    bass_core::formula::parse_adf(EXAMPLE).unwrap()
}

pub fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("a{i}")).collect()
}

/// Random formula over `vars` using every connective, of depth at most `depth`.
pub fn random_formula<R: Rng>(rng: &mut R, vars: &[String], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        return if rng.gen_bool(0.08) {
            Formula::Const(rng.gen())
        } else {
            Formula::var(vars[rng.gen_range(0..vars.len())].clone())
        };
    }
    let sub = |rng: &mut R| random_formula(rng, vars, depth - 1);
    match rng.gen_range(0..6) {
        0 => Formula::not(sub(rng)),
        1 => Formula::and(sub(rng), sub(rng)),
        2 => Formula::or(sub(rng), sub(rng)),
        3 => Formula::imp(sub(rng), sub(rng)),
        4 => Formula::iff(sub(rng), sub(rng)),
        _ => Formula::xor(sub(rng), sub(rng)),
    }
}

/// Random framework with `1..=max_n` arguments and conditions of depth at most 5.
/// With `free_input`, the first argument is forced to be a free input.
pub fn random_adf(rng: &mut impl Rng, max_n: usize, free_input: bool) -> Adf {
    let n = rng.gen_range(1..=max_n);
    let vars = names(n);
    let mut conditions: Vec<Formula> = (0..n)
        .map(|_| {
            let depth = rng.gen_range(1..=5);
            random_formula(rng, &vars, depth)
        })
        .collect();
    if free_input || rng.gen_bool(0.2) {
        conditions[0] = Formula::var(vars[0].clone());
    }
    Adf::new(vars, conditions).unwrap()
}

/// BDD of a truth table over `vars` (bit `j` of the row index is `vars[j]`).
pub fn from_table(manager: &mut BddManager, vars: &[BddVar], table: &[bool]) -> Bdd {
    fn build(m: &mut BddManager, vars: &[BddVar], table: &[bool], level: usize, offset: usize) -> Bdd {
        if level == vars.len() {
            return m.constant(table[offset]);
        }
        let neg = build(m, vars, table, level + 1, offset);
        let pos = build(m, vars, table, level + 1, offset | 1 << level);
        let v = m.var(vars[level]);
        m.ite(v, pos, neg)
    }
    build(manager, vars, table, 0, 0)
}

pub fn random_table(rng: &mut impl Rng, vars: usize, density: f64) -> Vec<bool> {
    (0..1usize << vars).map(|_| rng.gen_bool(density)).collect()
}
