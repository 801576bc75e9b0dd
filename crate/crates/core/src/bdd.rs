//! Reduced ordered binary decision diagrams over a fixed variable order.
//!
//! All diagrams live in a [`BddManager`], a hash-consed node store with a unique table and a
//! memo cache for binary operations. A [`Bdd`] is a cheap `Copy` handle (a root [`NodeId`]
//! tagged with the identity of its manager), so two handles from the same manager represent
//! the same Boolean function iff they are equal.
//!
//! Besides the usual Boolean operations and quantification, the manager provides the three
//! optimisation primitives used by the maximal/minimal model extraction loops:
//! [`BddManager::least_positive_valuation`], [`BddManager::exact_count_constraint`] and
//! [`BddManager::upward_closure`], plus the greedy n-ary conjunction
//! [`BddManager::greedy_conjunction`].

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

static NEXT_MANAGER_ID: AtomicU64 = AtomicU64::new(1);

/// Once the apply cache grows beyond this many entries it is dropped and rebuilt lazily.
const APPLY_CACHE_LIMIT: usize = 1 << 24;

/// Index of a node in the node store of a [`BddManager`].
///
/// The values [`NodeId::ZERO`] and [`NodeId::ONE`] are reserved for the two terminals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(u32);

impl NodeId {
    pub const ZERO: NodeId = NodeId(0);
    pub const ONE: NodeId = NodeId(1);

    pub fn is_terminal(self) -> bool {
        self.0 < 2
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Position of a decision variable in the global linear variable order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BddVar(pub u32);

impl BddVar {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for BddVar {
    fn from(value: usize) -> Self {
        BddVar(u32::try_from(value).expect("variable index overflow"))
    }
}

impl fmt::Display for BddVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// A decision node: `var ? pos : neg`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Node {
    pub var: BddVar,
    pub neg: NodeId,
    pub pos: NodeId,
}

/// Handle to a Boolean function stored in a [`BddManager`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Bdd {
    root: NodeId,
    manager: u64,
}

impl Bdd {
    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn is_false(&self) -> bool {
        self.root == NodeId::ZERO
    }

    pub fn is_true(&self) -> bool {
        self.root == NodeId::ONE
    }
}

/// One Boolean value per manager variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Valuation(Vec<bool>);

impl Valuation {
    pub fn all_false(num_vars: usize) -> Self {
        Valuation(vec![false; num_vars])
    }

    pub fn from_values(values: Vec<bool>) -> Self {
        Valuation(values)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, var: BddVar) -> bool {
        self.0[var.index()]
    }

    pub fn set(&mut self, var: BddVar, value: bool) {
        self.0[var.index()] = value;
    }

    pub fn values(&self) -> &[bool] {
        &self.0
    }

    /// Number of variables set to `true`.
    pub fn count_positive(&self) -> usize {
        self.0.iter().filter(|v| **v).count()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    And,
    Or,
    Xor,
    Imp,
    Iff,
}

impl BinaryOp {
    fn is_commutative(self) -> bool {
        !matches!(self, BinaryOp::Imp)
    }

    fn code(self) -> u8 {
        self as u8
    }

    /// Result of the operation when it is already determined by terminal operands.
    fn shortcut(self, a: NodeId, b: NodeId) -> Option<NodeId> {
        use NodeId as N;
        match self {
            BinaryOp::And => {
                if a == N::ZERO || b == N::ZERO {
                    Some(N::ZERO)
                } else if a == N::ONE || a == b {
                    Some(b)
                } else if b == N::ONE {
                    Some(a)
                } else {
                    None
                }
            }
            BinaryOp::Or => {
                if a == N::ONE || b == N::ONE {
                    Some(N::ONE)
                } else if a == N::ZERO || a == b {
                    Some(b)
                } else if b == N::ZERO {
                    Some(a)
                } else {
                    None
                }
            }
            BinaryOp::Xor => {
                if a == b {
                    Some(N::ZERO)
                } else if a == N::ZERO {
                    Some(b)
                } else if b == N::ZERO {
                    Some(a)
                } else {
                    None
                }
            }
            BinaryOp::Imp => {
                if a == N::ZERO || b == N::ONE || a == b {
                    Some(N::ONE)
                } else if a == N::ONE {
                    Some(b)
                } else {
                    None
                }
            }
            BinaryOp::Iff => {
                if a == b {
                    Some(N::ONE)
                } else if a == N::ONE {
                    Some(b)
                } else if b == N::ONE {
                    Some(a)
                } else {
                    None
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BddError {
    #[error("BDD operands belong to different managers")]
    ManagerMismatch,
    #[error("function depends on variable {0}, which is outside the given variable set")]
    OutsideSupport(BddVar),
    #[error("variable {var} is out of range for a manager with {num_vars} variables")]
    VariableOutOfRange { var: BddVar, num_vars: usize },
    #[error("valuation has {actual} entries, expected {expected}")]
    ValuationLength { expected: usize, actual: usize },
}

/// Shared node store for a family of BDDs over `num_vars` variables.
///
/// A manager is single-threaded; distinct managers are fully independent.
pub struct BddManager {
    id: u64,
    num_vars: usize,
    nodes: Vec<Node>,
    unique: FxHashMap<Node, NodeId>,
    apply_cache: FxHashMap<(u8, NodeId, NodeId), NodeId>,
    /// New nodes `mk` may still create before the running apply is abandoned.
    creation_budget: usize,
    aborted: bool,
}

impl fmt::Debug for BddManager {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BddManager")
            .field("id", &self.id)
            .field("num_vars", &self.num_vars)
            .field("nodes", &self.nodes.len())
            .finish()
    }
}

impl BddManager {
    pub fn new(num_vars: usize) -> Self {
        assert!(num_vars < u32::MAX as usize, "too many BDD variables");
        // Terminals carry `num_vars` as their level so that they sort after every variable.
        let terminal_var = BddVar::from(num_vars);
        let nodes = vec![
            Node {
                var: terminal_var,
                neg: NodeId::ZERO,
                pos: NodeId::ZERO,
            },
            Node {
                var: terminal_var,
                neg: NodeId::ONE,
                pos: NodeId::ONE,
            },
        ];
        BddManager {
            id: NEXT_MANAGER_ID.fetch_add(1, Ordering::Relaxed),
            num_vars,
            nodes,
            unique: FxHashMap::default(),
            apply_cache: FxHashMap::default(),
            creation_budget: usize::MAX,
            aborted: false,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Total number of stored nodes, including both terminals and unreachable nodes.
    pub fn store_size(&self) -> usize {
        self.nodes.len()
    }

    /// Iterates over every stored decision node.
    pub fn decision_nodes(&self) -> impl Iterator<Item = (NodeId, &Node)> + '_ {
        self.nodes
            .iter()
            .enumerate()
            .skip(2)
            .map(|(i, n)| (NodeId(i as u32), n))
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.index()]
    }

    /// Variable of a node; terminals report `num_vars`.
    pub fn var_of(&self, id: NodeId) -> BddVar {
        self.nodes[id.index()].var
    }

    fn handle(&self, root: NodeId) -> Bdd {
        Bdd {
            root,
            manager: self.id,
        }
    }

    fn check(&self, f: Bdd) -> Result<NodeId, BddError> {
        if f.manager == self.id {
            Ok(f.root)
        } else {
            Err(BddError::ManagerMismatch)
        }
    }

    fn owned(&self, f: Bdd) -> NodeId {
        self.check(f)
            .expect("BDD handle used with a manager that does not own it")
    }

    fn check_var(&self, var: BddVar) -> Result<(), BddError> {
        if var.index() < self.num_vars {
            Ok(())
        } else {
            Err(BddError::VariableOutOfRange {
                var,
                num_vars: self.num_vars,
            })
        }
    }

    pub fn constant(&self, value: bool) -> Bdd {
        self.handle(if value { NodeId::ONE } else { NodeId::ZERO })
    }

    pub fn mk_true(&self) -> Bdd {
        self.constant(true)
    }

    pub fn mk_false(&self) -> Bdd {
        self.constant(false)
    }

    /// The function `var = value`.
    ///
    /// Panics if `var` is not a variable of this manager.
    pub fn literal(&mut self, var: BddVar, value: bool) -> Bdd {
        self.check_var(var).expect("literal variable out of range");
        let root = if value {
            self.mk(var, NodeId::ZERO, NodeId::ONE)
        } else {
            self.mk(var, NodeId::ONE, NodeId::ZERO)
        };
        self.handle(root)
    }

    pub fn var(&mut self, var: BddVar) -> Bdd {
        self.literal(var, true)
    }

    fn mk(&mut self, var: BddVar, neg: NodeId, pos: NodeId) -> NodeId {
        if neg == pos {
            return neg;
        }
        let node = Node { var, neg, pos };
        if let Some(id) = self.unique.get(&node) {
            return *id;
        }
        if self.creation_budget == 0 {
            self.aborted = true;
            return NodeId::ZERO;
        }
        self.creation_budget -= 1;
        let id = NodeId(u32::try_from(self.nodes.len()).expect("BDD node store overflow"));
        self.nodes.push(node);
        self.unique.insert(node, id);
        id
    }

    /// Cofactors of `id` with respect to `var`, which must not be below the node's variable.
    fn cofactors(&self, id: NodeId, var: BddVar) -> (NodeId, NodeId) {
        let node = &self.nodes[id.index()];
        if node.var == var {
            (node.neg, node.pos)
        } else {
            (id, id)
        }
    }

    pub fn apply(&mut self, op: BinaryOp, a: Bdd, b: Bdd) -> Result<Bdd, BddError> {
        let a = self.check(a)?;
        let b = self.check(b)?;
        if self.apply_cache.len() > APPLY_CACHE_LIMIT {
            self.apply_cache.clear();
        }
        let root = self.apply_rec(op, a, b);
        Ok(self.handle(root))
    }

    fn apply_rec(&mut self, op: BinaryOp, a: NodeId, b: NodeId) -> NodeId {
        if let Some(result) = op.shortcut(a, b) {
            return result;
        }
        let (a, b) = if op.is_commutative() && b < a {
            (b, a)
        } else {
            (a, b)
        };
        let key = (op.code(), a, b);
        if let Some(result) = self.apply_cache.get(&key) {
            return *result;
        }
        let var = self.var_of(a).min(self.var_of(b));
        let (a0, a1) = self.cofactors(a, var);
        let (b0, b1) = self.cofactors(b, var);
        let neg = self.apply_rec(op, a0, b0);
        if self.aborted {
            return NodeId::ZERO;
        }
        let pos = self.apply_rec(op, a1, b1);
        if self.aborted {
            return NodeId::ZERO;
        }
        let result = self.mk(var, neg, pos);
        if !self.aborted {
            self.apply_cache.insert(key, result);
        }
        result
    }

    /// `a & b`, or `None` if computing it would create more than `limit` new nodes.
    /// Every node created by an apply is part of its result, so `None` implies that the
    /// conjunction has more than `limit` nodes.
    pub fn and_bounded(&mut self, a: Bdd, b: Bdd, limit: usize) -> Result<Option<Bdd>, BddError> {
        let a = self.check(a)?;
        let b = self.check(b)?;
        if self.apply_cache.len() > APPLY_CACHE_LIMIT {
            self.apply_cache.clear();
        }
        self.creation_budget = limit;
        self.aborted = false;
        let root = self.apply_rec(BinaryOp::And, a, b);
        let aborted = self.aborted;
        self.creation_budget = usize::MAX;
        self.aborted = false;
        Ok((!aborted).then(|| self.handle(root)))
    }

    /// Panics if the operands belong to a different manager.
    pub fn and(&mut self, a: Bdd, b: Bdd) -> Bdd {
        self.apply(BinaryOp::And, a, b)
            .expect("BDD operands belong to different managers")
    }

    /// Panics if the operands belong to a different manager.
    pub fn or(&mut self, a: Bdd, b: Bdd) -> Bdd {
        self.apply(BinaryOp::Or, a, b)
            .expect("BDD operands belong to different managers")
    }

    /// Panics if the operands belong to a different manager.
    pub fn xor(&mut self, a: Bdd, b: Bdd) -> Bdd {
        self.apply(BinaryOp::Xor, a, b)
            .expect("BDD operands belong to different managers")
    }

    /// Panics if the operands belong to a different manager.
    pub fn imp(&mut self, a: Bdd, b: Bdd) -> Bdd {
        self.apply(BinaryOp::Imp, a, b)
            .expect("BDD operands belong to different managers")
    }

    /// Panics if the operands belong to a different manager.
    pub fn iff(&mut self, a: Bdd, b: Bdd) -> Bdd {
        self.apply(BinaryOp::Iff, a, b)
            .expect("BDD operands belong to different managers")
    }

    pub fn negate(&mut self, a: Bdd) -> Bdd {
        let a = self.owned(a);
        let root = self.apply_rec(BinaryOp::Xor, a, NodeId::ONE);
        self.handle(root)
    }

    /// `cond ? then : otherwise`
    pub fn ite(&mut self, cond: Bdd, then: Bdd, otherwise: Bdd) -> Bdd {
        let pos = self.and(cond, then);
        let not_cond = self.negate(cond);
        let neg = self.and(not_cond, otherwise);
        self.or(pos, neg)
    }

    /// Sets `var` to `value` in `f`.
    pub fn restrict(&mut self, f: Bdd, var: BddVar, value: bool) -> Bdd {
        let root = self.owned(f);
        let mut memo = FxHashMap::default();
        let result = self.restrict_rec(root, var, value, &mut memo);
        self.handle(result)
    }

    fn restrict_rec(
        &mut self,
        id: NodeId,
        var: BddVar,
        value: bool,
        memo: &mut FxHashMap<NodeId, NodeId>,
    ) -> NodeId {
        let node = *self.node(id);
        if node.var > var {
            return id;
        }
        if node.var == var {
            return if value { node.pos } else { node.neg };
        }
        if let Some(result) = memo.get(&id) {
            return *result;
        }
        let neg = self.restrict_rec(node.neg, var, value, memo);
        let pos = self.restrict_rec(node.pos, var, value, memo);
        let result = self.mk(node.var, neg, pos);
        memo.insert(id, result);
        result
    }

    /// Existential quantification of every variable in `vars`.
    pub fn exists(&mut self, f: Bdd, vars: &[BddVar]) -> Bdd {
        self.quantify(f, vars, BinaryOp::Or)
    }

    /// Universal quantification of every variable in `vars`.
    pub fn forall(&mut self, f: Bdd, vars: &[BddVar]) -> Bdd {
        self.quantify(f, vars, BinaryOp::And)
    }

    fn quantify(&mut self, f: Bdd, vars: &[BddVar], op: BinaryOp) -> Bdd {
        let root = self.owned(f);
        let Some(last) = vars.iter().max().copied() else {
            return f;
        };
        let mut selected = vec![false; self.num_vars];
        for v in vars {
            self.check_var(*v).expect("quantified variable out of range");
            selected[v.index()] = true;
        }
        let mut memo = FxHashMap::default();
        let result = self.quantify_rec(root, &selected, last, op, &mut memo);
        self.handle(result)
    }

    fn quantify_rec(
        &mut self,
        id: NodeId,
        selected: &[bool],
        last: BddVar,
        op: BinaryOp,
        memo: &mut FxHashMap<NodeId, NodeId>,
    ) -> NodeId {
        let node = *self.node(id);
        if id.is_terminal() || node.var > last {
            return id;
        }
        if let Some(result) = memo.get(&id) {
            return *result;
        }
        let neg = self.quantify_rec(node.neg, selected, last, op, memo);
        let pos = self.quantify_rec(node.pos, selected, last, op, memo);
        let result = if selected[node.var.index()] {
            self.apply_rec(op, neg, pos)
        } else {
            self.mk(node.var, neg, pos)
        };
        memo.insert(id, result);
        result
    }

    /// Returns `g` with `g(x) = f(x with position var negated)`.
    pub fn flip_var(&mut self, f: Bdd, var: BddVar) -> Bdd {
        let root = self.owned(f);
        let mut memo = FxHashMap::default();
        let result = self.flip_rec(root, var, &mut memo);
        self.handle(result)
    }

    fn flip_rec(&mut self, id: NodeId, var: BddVar, memo: &mut FxHashMap<NodeId, NodeId>) -> NodeId {
        let node = *self.node(id);
        if node.var > var {
            return id;
        }
        if node.var == var {
            return self.mk(var, node.pos, node.neg);
        }
        if let Some(result) = memo.get(&id) {
            return *result;
        }
        let neg = self.flip_rec(node.neg, var, memo);
        let pos = self.flip_rec(node.pos, var, memo);
        let result = self.mk(node.var, neg, pos);
        memo.insert(id, result);
        result
    }

    /// Replaces every decision node by the function built from its variable and transformed
    /// children, bottom-up and memoized. Used for structural rewrites such as the dual
    /// transform; `rewrite` receives the node variable and the transformed (neg, pos) children.
    pub fn map_nodes<E>(
        &mut self,
        f: Bdd,
        mut rewrite: impl FnMut(&mut Self, BddVar, Bdd, Bdd) -> Result<Bdd, E>,
    ) -> Result<Bdd, E> {
        let root = self.owned(f);
        let mut memo: FxHashMap<NodeId, Bdd> = FxHashMap::default();
        memo.insert(NodeId::ZERO, self.mk_false());
        memo.insert(NodeId::ONE, self.mk_true());
        // Children are processed before parents: explicit post-order stack.
        let mut stack = vec![(root, false)];
        while let Some((id, expanded)) = stack.pop() {
            if memo.contains_key(&id) {
                continue;
            }
            let node = *self.node(id);
            if expanded {
                let neg = memo[&node.neg];
                let pos = memo[&node.pos];
                let result = rewrite(self, node.var, neg, pos)?;
                memo.insert(id, result);
            } else {
                stack.push((id, true));
                stack.push((node.pos, false));
                stack.push((node.neg, false));
            }
        }
        Ok(memo[&root])
    }

    /// Evaluates `f` by following one root-to-terminal path.
    pub fn eval(&self, f: Bdd, valuation: &Valuation) -> Result<bool, BddError> {
        let mut id = self.check(f)?;
        if valuation.len() != self.num_vars {
            return Err(BddError::ValuationLength {
                expected: self.num_vars,
                actual: valuation.len(),
            });
        }
        while !id.is_terminal() {
            let node = self.node(id);
            id = if valuation.get(node.var) {
                node.pos
            } else {
                node.neg
            };
        }
        Ok(id == NodeId::ONE)
    }

    /// Nodes reachable from `f`, terminals included.
    pub fn node_count(&self, f: Bdd) -> usize {
        let root = self.owned(f);
        let mut seen = rustc_hash::FxHashSet::default();
        let mut stack = vec![root];
        while let Some(id) = stack.pop() {
            if !seen.insert(id) {
                continue;
            }
            if !id.is_terminal() {
                let node = self.node(id);
                stack.push(node.neg);
                stack.push(node.pos);
            }
        }
        seen.len()
    }

    /// Variables the function depends on, in increasing order.
    pub fn support(&self, f: Bdd) -> Vec<BddVar> {
        let root = self.owned(f);
        let mut seen = rustc_hash::FxHashSet::default();
        let mut vars = vec![false; self.num_vars];
        let mut stack = vec![root];
        while let Some(id) = stack.pop() {
            if id.is_terminal() || !seen.insert(id) {
                continue;
            }
            let node = self.node(id);
            vars[node.var.index()] = true;
            stack.push(node.neg);
            stack.push(node.pos);
        }
        vars.iter()
            .enumerate()
            .filter(|(_, v)| **v)
            .map(|(i, _)| BddVar::from(i))
            .collect()
    }

    /// Sorted, deduplicated copy of `over`, validated against the support of `f`.
    fn checked_domain(&self, f: Bdd, over: &[BddVar]) -> Result<Vec<BddVar>, BddError> {
        let mut domain = over.to_vec();
        domain.sort_unstable();
        domain.dedup();
        for v in &domain {
            self.check_var(*v)?;
        }
        for v in self.support(f) {
            if domain.binary_search(&v).is_err() {
                return Err(BddError::OutsideSupport(v));
            }
        }
        Ok(domain)
    }

    /// Exact model counts of every node reachable from `f`, relative to `domain`.
    pub fn model_counts(&self, f: Bdd, over: &[BddVar]) -> Result<ModelCounts, BddError> {
        let root = self.check(f)?;
        let domain = self.checked_domain(f, over)?;
        let mut rank = vec![domain.len(); self.num_vars + 1];
        for (i, v) in domain.iter().enumerate() {
            rank[v.index()] = i;
        }
        let mut counts: FxHashMap<NodeId, BigUint> = FxHashMap::default();
        counts.insert(NodeId::ZERO, BigUint::zero());
        counts.insert(NodeId::ONE, BigUint::one());
        let mut stack = vec![(root, false)];
        while let Some((id, expanded)) = stack.pop() {
            if counts.contains_key(&id) {
                continue;
            }
            let node = *self.node(id);
            if expanded {
                let level = rank[node.var.index()];
                let neg_gap = rank[self.var_of(node.neg).index()] - level - 1;
                let pos_gap = rank[self.var_of(node.pos).index()] - level - 1;
                let total = (&counts[&node.neg] << neg_gap) + (&counts[&node.pos] << pos_gap);
                counts.insert(id, total);
            } else {
                stack.push((id, true));
                stack.push((node.pos, false));
                stack.push((node.neg, false));
            }
        }
        let root_level = rank[self.var_of(root).index()];
        Ok(ModelCounts {
            root,
            domain,
            rank,
            root_level,
            counts,
        })
    }

    /// Number of assignments to `over` satisfying `f`.
    pub fn sat_count(&self, f: Bdd, over: &[BddVar]) -> Result<BigUint, BddError> {
        Ok(self.model_counts(f, over)?.total())
    }

    /// A satisfying valuation with the fewest variables of `over` set to true, or `None` when
    /// `f` is unsatisfiable. Variables skipped by the chosen path, and all variables outside
    /// `over`, are false. Single bottom-up pass over the nodes of `f`.
    pub fn least_positive_valuation(&self, f: Bdd, over: &[BddVar]) -> Option<Valuation> {
        let root = self.owned(f);
        if root == NodeId::ZERO {
            return None;
        }
        let mut counted = vec![false; self.num_vars];
        for v in over {
            counted[v.index()] = true;
        }
        // cost: minimal number of counted positives from this node down to 1.
        let mut cost: FxHashMap<NodeId, Option<usize>> = FxHashMap::default();
        cost.insert(NodeId::ZERO, None);
        cost.insert(NodeId::ONE, Some(0));
        let mut stack = vec![(root, false)];
        while let Some((id, expanded)) = stack.pop() {
            if cost.contains_key(&id) {
                continue;
            }
            let node = *self.node(id);
            if expanded {
                let extra = usize::from(counted[node.var.index()]);
                let neg = cost[&node.neg];
                let pos = cost[&node.pos].map(|c| c + extra);
                let best = match (neg, pos) {
                    (Some(n), Some(p)) => Some(n.min(p)),
                    (n, p) => n.or(p),
                };
                cost.insert(id, best);
            } else {
                stack.push((id, true));
                stack.push((node.pos, false));
                stack.push((node.neg, false));
            }
        }
        let mut valuation = Valuation::all_false(self.num_vars);
        let mut id = root;
        while !id.is_terminal() {
            let node = self.node(id);
            let extra = usize::from(counted[node.var.index()]);
            let neg = cost[&node.neg];
            let pos = cost[&node.pos].map(|c| c + extra);
            let take_pos = match (neg, pos) {
                (Some(n), Some(p)) => p < n,
                (None, Some(_)) => true,
                _ => false,
            };
            if take_pos {
                valuation.set(node.var, true);
                id = node.pos;
            } else {
                id = node.neg;
            }
        }
        Some(valuation)
    }

    /// The function that holds iff exactly `k` of the `indicators` hold.
    ///
    /// Built as a layered counter: from the last indicator backwards, state `j` holds the
    /// function "exactly `k - j` of the remaining indicators hold". When indicators depend on
    /// disjoint, order-contiguous variable blocks and are single literals, the result has
    /// `O(m * k)` nodes.
    pub fn exact_count_constraint(&mut self, indicators: &[Bdd], k: usize) -> Bdd {
        let m = indicators.len();
        if k > m {
            return self.mk_false();
        }
        let zero = self.mk_false();
        // layer[j]: exactly k - j of indicators[i..] hold.
        let mut layer: Vec<Bdd> = (0..=k).map(|j| self.constant(j == k)).collect();
        for i in (0..m).rev() {
            let indicator = indicators[i];
            // Only states j <= i are reachable after i indicators.
            let reachable = k.min(i);
            let mut next = Vec::with_capacity(reachable + 1);
            for j in 0..=reachable {
                let counted = if j < k { layer[j + 1] } else { zero };
                let skipped = layer[j];
                next.push(self.ite(indicator, counted, skipped));
            }
            layer = next;
        }
        layer[0]
    }

    /// Smallest function `g >= f` that is monotone increasing in every variable of `over`:
    /// `g(y) = 1` iff some `x` with `f(x) = 1` agrees with `y` outside `over` and has its
    /// true set within `over` contained in that of `y`.
    pub fn upward_closure(&mut self, f: Bdd, over: &[BddVar]) -> Bdd {
        let mut g = f;
        for v in over {
            let low = self.restrict(g, *v, false);
            let lit = self.var(*v);
            let lifted = self.and(lit, low);
            g = self.or(g, lifted);
        }
        g
    }

    /// N-ary conjunction that always conjoins the clause giving the smallest intermediate BDD.
    pub fn greedy_conjunction(&mut self, clauses: &[Bdd]) -> Bdd {
        let mut remaining: Vec<Bdd> = clauses.to_vec();
        let mut result = self.mk_true();
        while !remaining.is_empty() {
            let mut best: Option<(usize, usize, Bdd)> = None;
            for (i, clause) in remaining.iter().enumerate() {
                // Candidates that cannot beat the best one so far are abandoned early.
                let limit = best.map_or(usize::MAX, |(_, size, _)| size);
                let Some(candidate) = self
                    .and_bounded(result, *clause, limit)
                    .expect("BDD operands belong to different managers")
                else {
                    continue;
                };
                if candidate.is_false() {
                    return candidate;
                }
                let size = self.node_count(candidate);
                if best.is_none_or(|(_, best_size, _)| size < best_size) {
                    best = Some((i, size, candidate));
                }
            }
            let (index, _, conjunction) = best.expect("non-empty clause list");
            result = conjunction;
            remaining.swap_remove(index);
        }
        result
    }

    /// Satisfying assignments of `f` over `over` in lexicographic order (earlier variables
    /// are more significant, false before true). Variables outside `over` are false.
    pub fn sat_valuations(&self, f: Bdd, over: &[BddVar]) -> Result<SatValuations<'_>, BddError> {
        let root = self.check(f)?;
        let domain = self.checked_domain(f, over)?;
        Ok(SatValuations {
            manager: self,
            domain,
            current: Valuation::all_false(self.num_vars),
            stack: vec![Frame {
                depth: 0,
                node: root,
                assign: None,
            }],
        })
    }
}

/// Per-node model counts over a fixed variable domain, see [`BddManager::model_counts`].
#[derive(Debug, Clone)]
pub struct ModelCounts {
    root: NodeId,
    domain: Vec<BddVar>,
    rank: Vec<usize>,
    root_level: usize,
    counts: FxHashMap<NodeId, BigUint>,
}

impl ModelCounts {
    pub fn domain(&self) -> &[BddVar] {
        &self.domain
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    /// Position of the node's variable within the domain (terminals: the domain size).
    pub fn level(&self, manager: &BddManager, id: NodeId) -> usize {
        self.rank[manager.var_of(id).index()]
    }

    /// Number of assignments to the domain variables at or below the node's level.
    pub fn node_count(&self, id: NodeId) -> &BigUint {
        &self.counts[&id]
    }

    /// Number of assignments to the whole domain satisfying the function.
    pub fn total(&self) -> BigUint {
        &self.counts[&self.root] << self.root_level
    }
}

#[derive(Debug, Clone, Copy)]
struct Frame {
    depth: usize,
    node: NodeId,
    assign: Option<(BddVar, bool)>,
}

/// Lazy iterator returned by [`BddManager::sat_valuations`].
pub struct SatValuations<'a> {
    manager: &'a BddManager,
    domain: Vec<BddVar>,
    current: Valuation,
    stack: Vec<Frame>,
}

impl Iterator for SatValuations<'_> {
    type Item = Valuation;

    fn next(&mut self) -> Option<Valuation> {
        while let Some(frame) = self.stack.pop() {
            if let Some((var, value)) = frame.assign {
                self.current.set(var, value);
            }
            if frame.node == NodeId::ZERO {
                continue;
            }
            if frame.depth == self.domain.len() {
                debug_assert_eq!(frame.node, NodeId::ONE);
                return Some(self.current.clone());
            }
            let var = self.domain[frame.depth];
            let node = self.manager.node(frame.node);
            let (neg, pos) = if node.var == var {
                (node.neg, node.pos)
            } else {
                (frame.node, frame.node)
            };
            // Pushed in reverse so that the `false` branch is explored first.
            self.stack.push(Frame {
                depth: frame.depth + 1,
                node: pos,
                assign: Some((var, true)),
            });
            self.stack.push(Frame {
                depth: frame.depth + 1,
                node: neg,
                assign: Some((var, false)),
            });
        }
        None
    }
}
