//! Symbolic computation of ADF semantics.
//!
//! [`SymbolicAdf`] owns one BDD manager together with the compiled acceptance conditions and
//! their dual pairs. Each semantics is returned as a [`SolutionSet`]: a BDD over the direct
//! variables (2-valued and stable models) or over the dual variables (admissible, complete,
//! preferred, grounded), the latter always conjoined with the validity constraint.

use crate::bdd::{Bdd, BddManager, BddVar};
use crate::encoding::{
    self, EncodingError, EncodingKind, GammaPair, Interpretation, Value, VarLayout,
};
use crate::formula::Adf;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Semantics {
    Admissible,
    Complete,
    Grounded,
    Preferred,
    TwoValued,
    Stable,
}

impl Semantics {
    pub const ALL: [Semantics; 6] = [
        Semantics::Admissible,
        Semantics::Complete,
        Semantics::Grounded,
        Semantics::Preferred,
        Semantics::TwoValued,
        Semantics::Stable,
    ];

    pub fn short_name(self) -> &'static str {
        match self {
            Semantics::Admissible => "adm",
            Semantics::Complete => "com",
            Semantics::Grounded => "grd",
            Semantics::Preferred => "prf",
            Semantics::TwoValued => "2v",
            Semantics::Stable => "stb",
        }
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for Semantics {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Semantics::ALL
            .into_iter()
            .find(|sem| sem.short_name() == s)
            .ok_or_else(|| format!("unknown semantics `{s}` (expected adm, com, grd, prf, 2v or stb)"))
    }
}

/// Symbolic result of a semantics query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolutionSet {
    pub bdd: Bdd,
    pub kind: EncodingKind,
    pub semantics: Semantics,
}

/// A solution set together with the number of iterations of its extraction loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Extraction {
    pub set: SolutionSet,
    pub iterations: usize,
}

/// Which search space the free-input shortcut restricts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RestrictionMode {
    /// Free inputs are never undecided in a preferred interpretation.
    Preferred,
    /// Free inputs are never true in a stable model.
    Stable,
}

/// An ADF compiled into one BDD manager.
pub struct SymbolicAdf {
    adf: Adf,
    layout: VarLayout,
    manager: BddManager,
    conditions: Vec<Bdd>,
    gamma: Vec<GammaPair>,
    validity: Bdd,
}

impl fmt::Debug for SymbolicAdf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SymbolicAdf")
            .field("arguments", &self.adf.arguments())
            .field("manager", &self.manager)
            .finish()
    }
}

impl SymbolicAdf {
    pub fn new(adf: Adf) -> Result<Self, EncodingError> {
        let layout = VarLayout::new(adf.len());
        let mut manager = BddManager::new(layout.num_vars());
        let conditions = encoding::condition_bdds(&mut manager, &layout, &adf)?;
        let gamma = encoding::gamma_pairs_of(&mut manager, &layout, &conditions)?;
        let validity = encoding::validity_constraint(&mut manager, &layout);
        Ok(SymbolicAdf {
            adf,
            layout,
            manager,
            conditions,
            gamma,
            validity,
        })
    }

    pub fn adf(&self) -> &Adf {
        &self.adf
    }

    pub fn layout(&self) -> &VarLayout {
        &self.layout
    }

    pub fn manager(&self) -> &BddManager {
        &self.manager
    }

    pub fn manager_mut(&mut self) -> &mut BddManager {
        &mut self.manager
    }

    pub fn conditions(&self) -> &[Bdd] {
        &self.conditions
    }

    pub fn gamma(&self) -> &[GammaPair] {
        &self.gamma
    }

    pub fn validity(&self) -> Bdd {
        self.validity
    }

    fn var(&mut self, var: BddVar) -> Bdd {
        self.manager.var(var)
    }

    /// `AND_s (s <=> phi_s)`, conjoined greedily.
    pub fn two_valued_models(&mut self) -> SolutionSet {
        let clauses: Vec<Bdd> = (0..self.adf.len())
            .map(|i| {
                let s = self.var(self.layout.direct(i));
                self.manager.iff(s, self.conditions[i])
            })
            .collect();
        let bdd = self.manager.greedy_conjunction(&clauses);
        SolutionSet {
            bdd,
            kind: EncodingKind::Direct,
            semantics: Semantics::TwoValued,
        }
    }

    /// `(phi_s^T => s^T) & (phi_s^F => s^F)` for one argument.
    fn admissible_clause(&mut self, i: usize) -> Bdd {
        let top = self.var(self.layout.top(i));
        let bot = self.var(self.layout.bot(i));
        let pair = self.gamma[i];
        let top_clause = self.manager.imp(pair.top, top);
        let bot_clause = self.manager.imp(pair.bot, bot);
        self.manager.and(top_clause, bot_clause)
    }

    /// Interpretations `I` with `I <=_i Gamma(I)`.
    pub fn admissible(&mut self) -> SolutionSet {
        let mut clauses: Vec<Bdd> = (0..self.adf.len())
            .map(|i| self.admissible_clause(i))
            .collect();
        clauses.push(self.validity);
        let bdd = self.manager.greedy_conjunction(&clauses);
        SolutionSet {
            bdd,
            kind: EncodingKind::Dual,
            semantics: Semantics::Admissible,
        }
    }

    /// Fixed points of the characteristic operator.
    pub fn complete(&mut self) -> SolutionSet {
        let mut clauses: Vec<Bdd> = (0..self.adf.len())
            .map(|i| {
                let admissible = self.admissible_clause(i);
                let star = self.undecided_indicator(i);
                let pair = self.gamma[i];
                let image_star = self.manager.and(pair.top, pair.bot);
                let keep_star = self.manager.imp(star, image_star);
                self.manager.and(admissible, keep_star)
            })
            .collect();
        clauses.push(self.validity);
        let bdd = self.manager.greedy_conjunction(&clauses);
        SolutionSet {
            bdd,
            kind: EncodingKind::Dual,
            semantics: Semantics::Complete,
        }
    }

    /// `s^T & s^F`
    fn undecided_indicator(&mut self, i: usize) -> Bdd {
        let top = self.var(self.layout.top(i));
        let bot = self.var(self.layout.bot(i));
        self.manager.and(top, bot)
    }

    /// Kleene iteration of the characteristic operator from the all-undecided interpretation.
    pub fn grounded(&self) -> Interpretation {
        let mut current = Interpretation::undecided(self.adf.len());
        loop {
            let next = encoding::apply_gamma(&self.manager, &self.layout, &self.gamma, &current)
                .expect("gamma pairs are never both false on a valid interpretation");
            if next == current {
                return current;
            }
            current = next;
        }
    }

    /// The grounded interpretation as a singleton dual-encoded set.
    pub fn grounded_set(&mut self) -> SolutionSet {
        let grounded = self.grounded();
        let bdd = encoding::interpretation_cube(&mut self.manager, &self.layout, &grounded);
        SolutionSet {
            bdd,
            kind: EncodingKind::Dual,
            semantics: Semantics::Grounded,
        }
    }

    /// Extracts the `<=_i`-maximal members of a dual-encoded complete set, one number of
    /// undecided arguments per iteration, starting with the fewest.
    pub fn preferred(&mut self, complete: &SolutionSet) -> Extraction {
        assert_eq!(complete.kind, EncodingKind::Dual, "preferred needs a dual-encoded set");
        let dual_vars = self.layout.dual_vars();
        let indicators: Vec<Bdd> = (0..self.adf.len())
            .map(|i| self.undecided_indicator(i))
            .collect();
        let mut remaining = complete.bdd;
        let mut preferred = self.manager.mk_false();
        let mut iterations = 0;
        while !remaining.is_false() {
            iterations += 1;
            let least = self
                .manager
                .least_positive_valuation(remaining, &dual_vars)
                .expect("remaining set is satisfiable");
            let undecided = (0..self.adf.len())
                .filter(|i| least.get(self.layout.top(*i)) && least.get(self.layout.bot(*i)))
                .count();
            let slice_filter = self.manager.exact_count_constraint(&indicators, undecided);
            let slice = self.manager.and(remaining, slice_filter);
            preferred = self.manager.or(preferred, slice);
            let weakened = self.manager.upward_closure(slice, &dual_vars);
            let keep = self.manager.negate(weakened);
            remaining = self.manager.and(remaining, keep);
        }
        Extraction {
            set: SolutionSet {
                bdd: preferred,
                kind: EncodingKind::Dual,
                semantics: Semantics::Preferred,
            },
            iterations,
        }
    }

    /// Stable models from a direct-encoded set of 2-valued models.
    ///
    /// First keeps only the models that are minimal in their true arguments, then pairs every
    /// candidate with the start state of its reduced framework (true arguments undecided, false
    /// arguments false), runs the grounding on the whole relation at once, and keeps the
    /// candidates whose true arguments all became true. `iterations` counts the minimisation
    /// loop only.
    pub fn stable(&mut self, two_valued: &SolutionSet) -> Extraction {
        assert_eq!(two_valued.kind, EncodingKind::Direct, "stable needs a direct-encoded set");
        let n = self.adf.len();
        let direct_vars = self.layout.direct_vars();
        let literals: Vec<Bdd> = direct_vars.iter().map(|v| self.manager.var(*v)).collect();

        let mut remaining = two_valued.bdd;
        let mut candidates = self.manager.mk_false();
        let mut iterations = 0;
        while !remaining.is_false() {
            iterations += 1;
            let least = self
                .manager
                .least_positive_valuation(remaining, &direct_vars)
                .expect("remaining set is satisfiable");
            let positives = direct_vars.iter().filter(|v| least.get(**v)).count();
            let slice_filter = self.manager.exact_count_constraint(&literals, positives);
            let minimal = self.manager.and(remaining, slice_filter);
            candidates = self.manager.or(candidates, minimal);
            let supersets = self.manager.upward_closure(minimal, &direct_vars);
            let keep = self.manager.negate(supersets);
            remaining = self.manager.and(remaining, keep);
        }

        // Link each candidate to its reduced-framework start state.
        let mut relation = candidates;
        for i in (0..n).rev() {
            let s = literals[i];
            let top = self.var(self.layout.top(i));
            let bot = self.var(self.layout.bot(i));
            let not_top = self.manager.negate(top);
            let undecided = self.manager.and(top, bot);
            let false_pair = self.manager.and(not_top, bot);
            let link = self.manager.ite(s, undecided, false_pair);
            relation = self.manager.and(relation, link);
        }

        // Grounding: an undecided argument whose condition is already true becomes true.
        loop {
            let before = relation;
            for i in 0..n {
                let star = self.undecided_indicator(i);
                let pair = self.gamma[i];
                let not_bot = self.manager.negate(pair.bot);
                let derivable = self.manager.and(pair.top, not_bot);
                let selector = self.manager.and(star, derivable);
                let set_to_one = self.manager.and(relation, selector);
                if set_to_one.is_false() {
                    continue;
                }
                let not_selected = self.manager.negate(set_to_one);
                let untouched = self.manager.and(relation, not_selected);
                let promoted = self.manager.flip_var(set_to_one, self.layout.bot(i));
                relation = self.manager.or(untouched, promoted);
            }
            if relation == before {
                break;
            }
        }

        // Every true argument must have been derived as true.
        for i in (0..n).rev() {
            let top = self.var(self.layout.top(i));
            let bot = self.var(self.layout.bot(i));
            let not_bot = self.manager.negate(bot);
            let derived = self.manager.and(top, not_bot);
            let check = self.manager.imp(literals[i], derived);
            relation = self.manager.and(relation, check);
        }
        let stable = self.manager.exists(relation, &self.layout.dual_vars());
        Extraction {
            set: SolutionSet {
                bdd: stable,
                kind: EncodingKind::Direct,
                semantics: Semantics::Stable,
            },
            iterations,
        }
    }

    /// Conjoins the free-input shortcut onto a complete set (preferred mode) or a set of
    /// 2-valued models (stable mode). The final preferred/stable answers are unaffected.
    pub fn restrict_free_inputs(&mut self, set: &SolutionSet, mode: RestrictionMode) -> SolutionSet {
        let mut bdd = set.bdd;
        for i in self.adf.free_inputs().into_iter().rev() {
            let constraint = match mode {
                RestrictionMode::Preferred => {
                    assert_eq!(set.kind, EncodingKind::Dual);
                    let star = self.undecided_indicator(i);
                    self.manager.negate(star)
                }
                RestrictionMode::Stable => {
                    assert_eq!(set.kind, EncodingKind::Direct);
                    self.manager.literal(self.layout.direct(i), false)
                }
            };
            bdd = self.manager.and(bdd, constraint);
        }
        SolutionSet { bdd, ..*set }
    }

    /// Computes a semantics from scratch. With `restrict_inputs`, the free-input shortcut is
    /// applied before preferred/stable extraction.
    pub fn solve(&mut self, semantics: Semantics, restrict_inputs: bool) -> Extraction {
        let direct = |set| Extraction { set, iterations: 0 };
        match semantics {
            Semantics::Admissible => direct(self.admissible()),
            Semantics::Complete => direct(self.complete()),
            Semantics::Grounded => direct(self.grounded_set()),
            Semantics::TwoValued => direct(self.two_valued_models()),
            Semantics::Preferred => {
                let mut complete = self.complete();
                if restrict_inputs {
                    complete = self.restrict_free_inputs(&complete, RestrictionMode::Preferred);
                }
                self.preferred(&complete)
            }
            Semantics::Stable => {
                let mut two_valued = self.two_valued_models();
                if restrict_inputs {
                    two_valued = self.restrict_free_inputs(&two_valued, RestrictionMode::Stable);
                }
                self.stable(&two_valued)
            }
        }
    }

    /// Re-expresses a direct-encoded (2-valued) set over the dual variables.
    pub fn embed_two_valued(&mut self, set: &SolutionSet) -> SolutionSet {
        assert_eq!(set.kind, EncodingKind::Direct);
        let mut relation = set.bdd;
        for i in (0..self.adf.len()).rev() {
            let s = self.var(self.layout.direct(i));
            let top = self.var(self.layout.top(i));
            let bot = self.var(self.layout.bot(i));
            let not_bot = self.manager.negate(bot);
            let not_top = self.manager.negate(top);
            let is_true = self.manager.and(top, not_bot);
            let is_false = self.manager.and(not_top, bot);
            let link = self.manager.ite(s, is_true, is_false);
            relation = self.manager.and(relation, link);
        }
        let bdd = self.manager.exists(relation, &self.layout.direct_vars());
        SolutionSet {
            bdd,
            kind: EncodingKind::Dual,
            semantics: set.semantics,
        }
    }

    /// Whether the dual encoding of `interpretation` belongs to a dual-encoded set, or the
    /// direct encoding to a direct-encoded one.
    pub fn contains(&self, set: &SolutionSet, interpretation: &Interpretation) -> bool {
        let kind = match set.kind {
            EncodingKind::Direct => EncodingKind::Direct,
            _ => EncodingKind::Dual,
        };
        match encoding::encode(interpretation, &self.layout, kind) {
            Ok(valuation) => self.manager.eval(set.bdd, &valuation).expect("owned by manager"),
            Err(_) => false,
        }
    }

    /// Whether every member of `sub` is a member of `sup` (both of the same kind).
    pub fn is_subset(&mut self, sub: &SolutionSet, sup: &SolutionSet) -> bool {
        assert_eq!(sub.kind, sup.kind);
        self.manager.imp(sub.bdd, sup.bdd).is_true()
    }
}

/// Convenience: whether no argument in `interpretation` that is a free input holds `value`.
pub fn avoids_on_free_inputs(adf: &Adf, interpretation: &Interpretation, value: Value) -> bool {
    adf.free_inputs()
        .into_iter()
        .all(|i| interpretation.get(i) != value)
}
