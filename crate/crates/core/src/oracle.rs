//! Brute-force reference semantics, applied literally to explicit interpretations.
//!
//! Everything here enumerates interpretations one by one and is only meant for small
//! frameworks: differential testing of the symbolic algorithms and the `--oracle` CLI check.

use crate::bdd::{Bdd, BddManager};
use crate::encoding::{Interpretation, Value, VarLayout};
use crate::formula::{Adf, Formula, FormulaError};
use crate::semantics::Semantics;
use std::collections::BTreeSet;

/// Default upper bound on the number of arguments accepted by the oracle.
pub const DEFAULT_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("framework has {arguments} arguments, the brute-force oracle is capped at {cap}")]
    CapExceeded { arguments: usize, cap: usize },
    #[error("reduct requires a 2-valued interpretation")]
    NotTwoValued,
    #[error("interpretation has {actual} values for {expected} arguments")]
    LengthMismatch { expected: usize, actual: usize },
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

fn check_cap(adf: &Adf, cap: usize) -> Result<(), OracleError> {
    if adf.len() > cap {
        Err(OracleError::CapExceeded {
            arguments: adf.len(),
            cap,
        })
    } else {
        Ok(())
    }
}

/// The characteristic operator: an argument becomes true (false) if its condition is true
/// (false) under every 2-valued completion of the undecided arguments it mentions.
pub fn brute_gamma(adf: &Adf, interpretation: &Interpretation) -> Result<Interpretation, OracleError> {
    brute_gamma_capped(adf, interpretation, DEFAULT_CAP)
}

pub fn brute_gamma_capped(
    adf: &Adf,
    interpretation: &Interpretation,
    cap: usize,
) -> Result<Interpretation, OracleError> {
    check_cap(adf, cap)?;
    if interpretation.len() != adf.len() {
        return Err(OracleError::LengthMismatch {
            expected: adf.len(),
            actual: interpretation.len(),
        });
    }
    let values = adf
        .conditions()
        .iter()
        .map(|condition| {
            let open: Vec<usize> = condition
                .variables()
                .into_iter()
                .map(|v| adf.index_of(v).expect("conditions mention declared arguments"))
                .filter(|i| interpretation.get(*i) == Value::Undecided)
                .collect();
            let (mut any_true, mut any_false) = (false, false);
            for completion in 0..1usize << open.len() {
                let lookup = |name: &str| {
                    let i = adf.index_of(name).expect("declared argument");
                    match interpretation.get(i) {
                        Value::True => true,
                        Value::False => false,
                        Value::Undecided => {
                            let bit = open.iter().position(|o| *o == i).expect("open argument");
                            completion >> bit & 1 == 1
                        }
                    }
                };
                if condition.eval(&lookup) {
                    any_true = true;
                } else {
                    any_false = true;
                }
                if any_true && any_false {
                    break;
                }
            }
            match (any_true, any_false) {
                (true, false) => Value::True,
                (false, true) => Value::False,
                _ => Value::Undecided,
            }
        })
        .collect();
    Ok(Interpretation::new(values))
}

/// All 3^n interpretations, in lexicographic order of (false, true, undecided).
pub fn all_interpretations(n: usize) -> impl Iterator<Item = Interpretation> {
    let total = 3usize.pow(n as u32);
    (0..total).map(move |code| {
        let mut rest = code;
        let mut values = vec![Value::False; n];
        for slot in values.iter_mut().rev() {
            *slot = [Value::False, Value::True, Value::Undecided][rest % 3];
            rest /= 3;
        }
        Interpretation::new(values)
    })
}

/// All 2^n two-valued interpretations.
pub fn all_two_valued(n: usize) -> impl Iterator<Item = Interpretation> {
    (0..1usize << n).map(move |code| {
        Interpretation::new((0..n).map(|i| Value::from(code >> (n - 1 - i) & 1 == 1)).collect())
    })
}

/// Least fixed point of the characteristic operator, by Kleene iteration from all-undecided.
pub fn brute_grounded(adf: &Adf) -> Result<Interpretation, OracleError> {
    let mut current = Interpretation::undecided(adf.len());
    loop {
        let next = brute_gamma_capped(adf, &current, usize::MAX)?;
        if next == current {
            return Ok(current);
        }
        current = next;
    }
}

/// The reduct of a framework with respect to a 2-valued interpretation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedAdf {
    /// Indices (in the original framework) of the surviving, true arguments.
    pub surviving: Vec<usize>,
    /// The reduct itself: surviving arguments, false arguments replaced by constant 0.
    pub adf: Adf,
}

pub fn build_reduced(adf: &Adf, interpretation: &Interpretation) -> Result<ReducedAdf, OracleError> {
    if !interpretation.is_two_valued() {
        return Err(OracleError::NotTwoValued);
    }
    if interpretation.len() != adf.len() {
        return Err(OracleError::LengthMismatch {
            expected: adf.len(),
            actual: interpretation.len(),
        });
    }
    let surviving: Vec<usize> = (0..adf.len())
        .filter(|i| interpretation.get(*i) == Value::True)
        .collect();
    let false_value = |name: &str| {
        let i = adf.index_of(name).expect("declared argument");
        (interpretation.get(i) == Value::False).then_some(false)
    };
    let arguments = surviving.iter().map(|i| adf.arguments()[*i].clone()).collect();
    let conditions: Vec<Formula> = surviving
        .iter()
        .map(|i| adf.condition(*i).substitute(&false_value))
        .collect();
    Ok(ReducedAdf {
        surviving,
        adf: Adf::new(arguments, conditions)?,
    })
}

/// Stability check: `interpretation` is a 2-valued model, and the grounded interpretation of
/// its reduct makes every true argument true.
pub fn is_stable(adf: &Adf, interpretation: &Interpretation) -> Result<bool, OracleError> {
    if !interpretation.is_two_valued() || brute_gamma_capped(adf, interpretation, usize::MAX)? != *interpretation {
        return Ok(false);
    }
    let reduced = build_reduced(adf, interpretation)?;
    let grounded = brute_grounded(&reduced.adf)?;
    Ok(grounded.values().iter().all(|v| *v == Value::True))
}

/// The set of interpretations of a semantics, by exhaustive scan.
pub fn brute_semantics(adf: &Adf, semantics: Semantics) -> Result<BTreeSet<Interpretation>, OracleError> {
    brute_semantics_capped(adf, semantics, DEFAULT_CAP)
}

pub fn brute_semantics_capped(
    adf: &Adf,
    semantics: Semantics,
    cap: usize,
) -> Result<BTreeSet<Interpretation>, OracleError> {
    check_cap(adf, cap)?;
    let n = adf.len();
    let gamma = |i: &Interpretation| brute_gamma_capped(adf, i, cap);
    let mut out = BTreeSet::new();
    match semantics {
        Semantics::Admissible | Semantics::Complete | Semantics::Preferred => {
            let mut admissible = Vec::new();
            for i in all_interpretations(n) {
                let image = gamma(&i)?;
                let keep = match semantics {
                    Semantics::Complete => image == i,
                    _ => i.info_le(&image),
                };
                if keep {
                    admissible.push(i);
                }
            }
            if semantics == Semantics::Preferred {
                for candidate in &admissible {
                    let dominated = admissible
                        .iter()
                        .any(|other| other != candidate && candidate.info_le(other));
                    if !dominated {
                        out.insert(candidate.clone());
                    }
                }
            } else {
                out.extend(admissible);
            }
        }
        Semantics::Grounded => {
            out.insert(brute_grounded(adf)?);
        }
        Semantics::TwoValued => {
            for i in all_two_valued(n) {
                if gamma(&i)? == i {
                    out.insert(i);
                }
            }
        }
        Semantics::Stable => {
            for i in all_two_valued(n) {
                if is_stable(adf, &i)? {
                    out.insert(i);
                }
            }
        }
    }
    Ok(out)
}

/// The dual of a direct-variable function built literally by quantification:
/// `exists s_1..s_n. f & AND_i (s_i => s_i^T) & (!s_i => s_i^F)`.
pub fn quantified_dual(manager: &mut BddManager, layout: &VarLayout, f: Bdd) -> Bdd {
    let mut relation = f;
    for i in 0..layout.arguments() {
        let s = manager.var(layout.direct(i));
        let top = manager.var(layout.top(i));
        let bot = manager.var(layout.bot(i));
        let not_s = manager.negate(s);
        let up = manager.imp(s, top);
        let down = manager.imp(not_s, bot);
        let link = manager.and(up, down);
        relation = manager.and(relation, link);
    }
    manager.exists(relation, &layout.direct_vars())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_adf;

    fn example1() -> Adf {
        parse_adf("s(a). s(b). s(c). ac(a,c(v)). ac(b,or(neg(a),c)). ac(c,b).").unwrap()
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

    fn set(items: &[&str]) -> BTreeSet<Interpretation> {
        items.iter().map(|s| interp(s)).collect()
    }

    #[test]
    fn example_gamma() {
        let adf = example1();
        assert_eq!(brute_gamma(&adf, &interp("***")).unwrap(), interp("1**"));
        assert_eq!(brute_gamma(&adf, &interp("*11")).unwrap(), interp("111"));
        assert_eq!(brute_gamma(&adf, &interp("101")).unwrap(), interp("110"));
    }

    #[test]
    fn example_semantics() {
        let adf = example1();
        let sem = |s| brute_semantics(&adf, s).unwrap();
        assert_eq!(sem(Semantics::Admissible), set(&["100", "111", "1**", "***", "*11"]));
        assert_eq!(sem(Semantics::Complete), set(&["100", "111", "1**"]));
        assert_eq!(sem(Semantics::Preferred), set(&["100", "111"]));
        assert_eq!(sem(Semantics::TwoValued), set(&["100", "111"]));
        assert_eq!(sem(Semantics::Stable), set(&["100"]));
        assert_eq!(sem(Semantics::Grounded), set(&["1**"]));
    }

    #[test]
    fn example_reducts() {
        let adf = example1();
        let reduced = build_reduced(&adf, &interp("111")).unwrap();
        assert_eq!(reduced.adf, adf);
        assert_eq!(brute_grounded(&reduced.adf).unwrap(), interp("1**"));
        assert!(!is_stable(&adf, &interp("111")).unwrap());

        let reduced = build_reduced(&adf, &interp("100")).unwrap();
        assert_eq!(reduced.surviving, vec![0]);
        assert_eq!(reduced.adf.conditions(), &[Formula::Const(true)]);
        assert_eq!(build_reduced(&adf, &interp("1*0")), Err(OracleError::NotTwoValued));
    }

    #[test]
    fn empty_framework() {
        let adf = Adf::new(vec![], vec![]).unwrap();
        for sem in Semantics::ALL {
            assert_eq!(brute_semantics(&adf, sem).unwrap(), set(&[""]), "{sem}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        let names: Vec<String> = (0..13).map(|i| format!("a{i}")).collect();
        let conditions = names.iter().map(|n| Formula::var(n.clone())).collect();
        let adf = Adf::new(names, conditions).unwrap();
        assert!(matches!(
            brute_semantics(&adf, Semantics::Complete),
            Err(OracleError::CapExceeded { arguments: 13, cap: 12 })
        ));
    }
}
