//! Symbolic encoding of ADF interpretations.
//!
//! Every argument `s_i` owns three consecutive BDD variables: the direct variable `s_i`
//! (2-valued interpretations) followed by the dual pair `(s_i^T, s_i^F)` used for 3-valued
//! interpretations, where `(1,0)` is true, `(0,1)` is false, `(1,1)` is undecided and `(0,0)` is
//! invalid. The dual transform turns a condition over direct variables into the function that
//! holds on a 3-valued interpretation iff some 2-valued completion of it satisfies the condition;
//! the pairs `(dual(phi), dual(!phi))` encode the characteristic operator.

use crate::bdd::{Bdd, BddManager, BddVar, Valuation};
use crate::formula::{Adf, Formula};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EncodingError {
    #[error("formula mentions `{0}`, which is not an argument of the framework")]
    UnknownArgument(String),
    #[error("expected a function over direct variables, found dual variable {0}")]
    DualVariable(BddVar),
    #[error("argument {argument} has the invalid dual encoding (0,0)")]
    InvalidEncoding { argument: usize },
    #[error("2-valued encoding cannot represent the undecided value of argument {argument}")]
    NotTwoValued { argument: usize },
}

/// Truth value of an argument in a 3-valued interpretation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    False,
    True,
    Undecided,
}

impl Value {
    pub fn symbol(self) -> char {
        match self {
            Value::False => '0',
            Value::True => '1',
            Value::Undecided => '*',
        }
    }

    /// Information order: undecided is below both truth values.
    pub fn info_le(self, other: Value) -> bool {
        self == Value::Undecided || self == other
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl From<bool> for Value {
    fn from(value: bool) -> Self {
        if value {
            Value::True
        } else {
            Value::False
        }
    }
}

/// A 3-valued interpretation, one value per argument in framework order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interpretation(Vec<Value>);

impl Interpretation {
    pub fn new(values: Vec<Value>) -> Self {
        Interpretation(values)
    }

    pub fn undecided(n: usize) -> Self {
        Interpretation(vec![Value::Undecided; n])
    }

    pub fn values(&self) -> &[Value] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, argument: usize) -> Value {
        self.0[argument]
    }

    pub fn set(&mut self, argument: usize, value: Value) {
        self.0[argument] = value;
    }

    pub fn is_two_valued(&self) -> bool {
        !self.0.contains(&Value::Undecided)
    }

    pub fn count_undecided(&self) -> usize {
        self.0.iter().filter(|v| **v == Value::Undecided).count()
    }

    /// `self <=_i other`: `other` only refines undecided values of `self`.
    pub fn info_le(&self, other: &Interpretation) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a.info_le(*b))
    }

    /// Renders `name:V` pairs separated by spaces.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        NamedInterpretation {
            interpretation: self,
            names,
        }
    }
}

struct NamedInterpretation<'a> {
    interpretation: &'a Interpretation,
    names: &'a [String],
}

impl fmt::Display for NamedInterpretation<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (name, value)) in self.names.iter().zip(self.interpretation.values()).enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{name}:{value}")?;
        }
        Ok(())
    }
}

/// Which variables of the layout a set of interpretations is expressed over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EncodingKind {
    /// Direct variables only: 2-valued interpretations.
    Direct,
    /// Dual pairs only: 3-valued interpretations.
    Dual,
    /// All variables: a relation between 2-valued and 3-valued interpretations.
    Combined,
}

/// Interleaved variable layout `s_1, s_1^T, s_1^F, s_2, ...`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VarLayout {
    arguments: usize,
}

impl VarLayout {
    pub fn new(arguments: usize) -> Self {
        VarLayout { arguments }
    }

    pub fn arguments(&self) -> usize {
        self.arguments
    }

    pub fn num_vars(&self) -> usize {
        3 * self.arguments
    }

    pub fn direct(&self, argument: usize) -> BddVar {
        BddVar::from(3 * argument)
    }

    pub fn top(&self, argument: usize) -> BddVar {
        BddVar::from(3 * argument + 1)
    }

    pub fn bot(&self, argument: usize) -> BddVar {
        BddVar::from(3 * argument + 2)
    }

    pub fn is_direct(&self, var: BddVar) -> bool {
        var.index().is_multiple_of(3)
    }

    /// Argument that owns `var`.
    pub fn argument_of(&self, var: BddVar) -> usize {
        var.index() / 3
    }

    pub fn direct_vars(&self) -> Vec<BddVar> {
        (0..self.arguments).map(|i| self.direct(i)).collect()
    }

    pub fn dual_vars(&self) -> Vec<BddVar> {
        (0..self.arguments)
            .flat_map(|i| [self.top(i), self.bot(i)])
            .collect()
    }

    pub fn all_vars(&self) -> Vec<BddVar> {
        (0..self.num_vars()).map(BddVar::from).collect()
    }

    pub fn vars_of(&self, kind: EncodingKind) -> Vec<BddVar> {
        match kind {
            EncodingKind::Direct => self.direct_vars(),
            EncodingKind::Dual => self.dual_vars(),
            EncodingKind::Combined => self.all_vars(),
        }
    }
}

/// `(dual(phi_s), dual(!phi_s))` for one argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GammaPair {
    pub top: Bdd,
    pub bot: Bdd,
}

/// Compiles a condition into a BDD over the direct variables.
pub fn formula_to_bdd(
    manager: &mut BddManager,
    layout: &VarLayout,
    adf: &Adf,
    formula: &Formula,
) -> Result<Bdd, EncodingError> {
    Ok(match formula {
        Formula::Var(name) => {
            let index = adf
                .index_of(name)
                .ok_or_else(|| EncodingError::UnknownArgument(name.clone()))?;
            manager.var(layout.direct(index))
        }
        Formula::Const(value) => manager.constant(*value),
        Formula::Not(f) => {
            let f = formula_to_bdd(manager, layout, adf, f)?;
            manager.negate(f)
        }
        Formula::And(l, r)
        | Formula::Or(l, r)
        | Formula::Imp(l, r)
        | Formula::Iff(l, r)
        | Formula::Xor(l, r) => {
            let l = formula_to_bdd(manager, layout, adf, l)?;
            let r = formula_to_bdd(manager, layout, adf, r)?;
            match formula {
                Formula::And(..) => manager.and(l, r),
                Formula::Or(..) => manager.or(l, r),
                Formula::Imp(..) => manager.imp(l, r),
                Formula::Iff(..) => manager.iff(l, r),
                _ => manager.xor(l, r),
            }
        }
    })
}

/// Structural dual transform: a node `s_i ? pos : neg` becomes
/// `(s_i^T & T(pos)) | (s_i^F & T(neg))`, memoized over the nodes of `f`.
pub fn dual_transform(
    manager: &mut BddManager,
    layout: &VarLayout,
    f: Bdd,
) -> Result<Bdd, EncodingError> {
    manager.map_nodes(f, |m, var, neg, pos| {
        if !layout.is_direct(var) {
            return Err(EncodingError::DualVariable(var));
        }
        let argument = layout.argument_of(var);
        let top = m.var(layout.top(argument));
        let bot = m.var(layout.bot(argument));
        let when_true = m.and(top, pos);
        let when_false = m.and(bot, neg);
        Ok(m.or(when_true, when_false))
    })
}

/// Direct-variable BDDs of every acceptance condition, in argument order.
pub fn condition_bdds(
    manager: &mut BddManager,
    layout: &VarLayout,
    adf: &Adf,
) -> Result<Vec<Bdd>, EncodingError> {
    adf.conditions()
        .iter()
        .map(|c| formula_to_bdd(manager, layout, adf, c))
        .collect()
}

pub fn gamma_pairs(
    manager: &mut BddManager,
    layout: &VarLayout,
    adf: &Adf,
) -> Result<Vec<GammaPair>, EncodingError> {
    let conditions = condition_bdds(manager, layout, adf)?;
    gamma_pairs_of(manager, layout, &conditions)
}

/// [`gamma_pairs`] for already compiled conditions.
pub fn gamma_pairs_of(
    manager: &mut BddManager,
    layout: &VarLayout,
    conditions: &[Bdd],
) -> Result<Vec<GammaPair>, EncodingError> {
    conditions
        .iter()
        .map(|phi| {
            let top = dual_transform(manager, layout, *phi)?;
            let negated = manager.negate(*phi);
            let bot = dual_transform(manager, layout, negated)?;
            Ok(GammaPair { top, bot })
        })
        .collect()
}

/// `AND_i (s_i^T | s_i^F)`: excludes the invalid `(0,0)` pairs.
pub fn validity_constraint(manager: &mut BddManager, layout: &VarLayout) -> Bdd {
    let clauses: Vec<Bdd> = (0..layout.arguments())
        .map(|i| {
            let top = manager.var(layout.top(i));
            let bot = manager.var(layout.bot(i));
            manager.or(top, bot)
        })
        .collect();
    manager.greedy_conjunction(&clauses)
}

/// Reads an interpretation from a valuation of the given kind (`Combined` reads the dual part).
pub fn decode(
    valuation: &Valuation,
    layout: &VarLayout,
    kind: EncodingKind,
) -> Result<Interpretation, EncodingError> {
    (0..layout.arguments())
        .map(|i| match kind {
            EncodingKind::Direct => Ok(Value::from(valuation.get(layout.direct(i)))),
            EncodingKind::Dual | EncodingKind::Combined => {
                match (valuation.get(layout.top(i)), valuation.get(layout.bot(i))) {
                    (true, false) => Ok(Value::True),
                    (false, true) => Ok(Value::False),
                    (true, true) => Ok(Value::Undecided),
                    (false, false) => Err(EncodingError::InvalidEncoding { argument: i }),
                }
            }
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Interpretation)
}

/// Inverse of [`decode`]; variables outside the chosen kind are false.
pub fn encode(
    interpretation: &Interpretation,
    layout: &VarLayout,
    kind: EncodingKind,
) -> Result<Valuation, EncodingError> {
    let mut valuation = Valuation::all_false(layout.num_vars());
    for (i, value) in interpretation.values().iter().enumerate() {
        match kind {
            EncodingKind::Direct => match value {
                Value::Undecided => return Err(EncodingError::NotTwoValued { argument: i }),
                v => valuation.set(layout.direct(i), *v == Value::True),
            },
            EncodingKind::Dual | EncodingKind::Combined => {
                valuation.set(layout.top(i), *value != Value::False);
                valuation.set(layout.bot(i), *value != Value::True);
            }
        }
    }
    Ok(valuation)
}

/// The BDD that holds exactly on the dual encoding of `interpretation`.
pub fn interpretation_cube(
    manager: &mut BddManager,
    layout: &VarLayout,
    interpretation: &Interpretation,
) -> Bdd {
    let mut cube = manager.mk_true();
    for (i, value) in interpretation.values().iter().enumerate().rev() {
        let top = manager.literal(layout.top(i), *value != Value::False);
        let bot = manager.literal(layout.bot(i), *value != Value::True);
        let pair = manager.and(top, bot);
        cube = manager.and(pair, cube);
    }
    cube
}

/// Evaluates the pairs at `interpretation`, giving the characteristic operator's output.
pub fn apply_gamma(
    manager: &BddManager,
    layout: &VarLayout,
    gamma: &[GammaPair],
    interpretation: &Interpretation,
) -> Result<Interpretation, EncodingError> {
    let valuation = encode(interpretation, layout, EncodingKind::Dual)?;
    let values = gamma
        .iter()
        .enumerate()
        .map(|(i, pair)| {
            let top = manager.eval(pair.top, &valuation).expect("owned by manager");
            let bot = manager.eval(pair.bot, &valuation).expect("owned by manager");
            match (top, bot) {
                (true, false) => Ok(Value::True),
                (false, true) => Ok(Value::False),
                (true, true) => Ok(Value::Undecided),
                (false, false) => Err(EncodingError::InvalidEncoding { argument: i }),
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Interpretation(values))
}
