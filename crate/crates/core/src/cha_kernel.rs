//! Cyclic pre-proofs: local rule checking, the structural dependency
//! order, induction orders (the soundness condition), bounded evaluation
//! over the standard model, and the embedding of inductive proofs.

use crate::cyclic_structure::{CyclicTree, NodePath};
use crate::ha_kernel::{
    base_rule_check, eq_l_matches, BaseRule, CheckReport, HaRule, ProofTree, RuleCheck, Sequent,
};
use crate::syntax::{self, Formula, Ident, Term};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChaRule {
    Base(BaseRule),
    /// Case distinction on `var`: premises are the `[0/var]` and
    /// `[S var/var]` instances of the conclusion, in that order.
    Case { var: Ident },
}

impl ChaRule {
    pub fn name(&self) -> String {
        match self {
            ChaRule::Base(b) => b.name().to_string(),
            ChaRule::Case { var } => format!("case {var}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PreNode {
    Rule { rule: ChaRule, seq: Sequent },
    Bud { companion: NodePath },
}

/// A cyclic pre-proof: rule instances on a finite tree plus a
/// bud-to-companion map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreProof {
    pub nodes: BTreeMap<NodePath, PreNode>,
}

impl PreProof {
    pub fn shape(&self) -> CyclicTree {
        let nodes = self.nodes.keys().cloned().collect();
        let beta = self
            .nodes
            .iter()
            .filter_map(|(p, n)| match n {
                PreNode::Bud { companion } => Some((p.clone(), companion.clone())),
                PreNode::Rule { .. } => None,
            })
            .collect();
        CyclicTree { nodes, beta }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn buds(&self) -> Vec<NodePath> {
        self.nodes
            .iter()
            .filter_map(|(p, n)| matches!(n, PreNode::Bud { .. }).then(|| p.clone()))
            .collect()
    }

    /// The sequent labelling a node; buds take their companion's.
    pub fn sequent(&self, path: &[usize]) -> Option<&Sequent> {
        match self.nodes.get(path)? {
            PreNode::Rule { seq, .. } => Some(seq),
            PreNode::Bud { companion } => match self.nodes.get(companion)? {
                PreNode::Rule { seq, .. } => Some(seq),
                PreNode::Bud { .. } => None,
            },
        }
    }

    pub fn rule(&self, path: &[usize]) -> Option<&ChaRule> {
        match self.nodes.get(path)? {
            PreNode::Rule { rule, .. } => Some(rule),
            PreNode::Bud { .. } => None,
        }
    }

    pub fn endsequent(&self) -> Option<&Sequent> {
        self.sequent(&[])
    }

    pub fn children(&self, path: &[usize]) -> Vec<NodePath> {
        let mut out = Vec::new();
        for i in 0.. {
            let mut c = path.to_vec();
            c.push(i);
            if self.nodes.contains_key(&c) {
                out.push(c);
            } else {
                break;
            }
        }
        out
    }

    /// All identifiers in any sequent or rule instance.
    pub fn all_names(&self) -> BTreeSet<Ident> {
        let mut acc = BTreeSet::new();
        for node in self.nodes.values() {
            if let PreNode::Rule { rule, seq } = node {
                acc.extend(seq.all_names());
                match rule {
                    ChaRule::Case { var } => {
                        acc.insert(var.clone());
                    }
                    ChaRule::Base(BaseRule::Cut { formula }) => acc.extend(formula.all_names()),
                    ChaRule::Base(BaseRule::AllL { principal, witness, .. }) => {
                        acc.extend(principal.all_names());
                        acc.extend(witness.vars());
                    }
                    ChaRule::Base(BaseRule::ExR { witness }) => acc.extend(witness.vars()),
                    ChaRule::Base(BaseRule::EqL { s, t, x, y }) => {
                        acc.extend(s.vars());
                        acc.extend(t.vars());
                        acc.insert(x.clone());
                        acc.insert(y.clone());
                    }
                    _ => {}
                }
            }
        }
        acc
    }
}

/// The premises a Case rule demands.
pub fn case_premises(conclusion: &Sequent, var: &str) -> Result<Vec<Sequent>, String> {
    let zero = conclusion
        .subst1(&syntax::zero(), var)
        .ok_or("zero instance of the conclusion is undefined")?;
    let succ = conclusion
        .subst1(&syntax::succ(syntax::var(var)), var)
        .ok_or("successor instance of the conclusion is undefined")?;
    Ok(vec![zero, succ])
}

/// Local well-formedness of every node, including that each bud carries
/// exactly its companion's sequent (enforced through the parent's premise
/// check) and that companions are inner rule nodes.
pub fn check_pre_proof(proof: &PreProof) -> CheckReport {
    let fail = |path: &[usize], rule: String, reason: String| CheckReport::Fail {
        path: path.to_vec(),
        rule,
        reason,
    };
    if proof.nodes.is_empty() || !proof.nodes.contains_key(&Vec::new()) {
        return fail(&[], "-".into(), "missing root".into());
    }
    if let Err(e) = proof.shape().validate() {
        return fail(&[], "-".into(), e);
    }
    for (path, node) in &proof.nodes {
        match node {
            PreNode::Bud { companion } => {
                if !proof.children(path).is_empty() {
                    return fail(path, "bud".into(), "bud has children".into());
                }
                match proof.nodes.get(companion) {
                    Some(PreNode::Rule { .. }) => {}
                    _ => {
                        return fail(
                            path,
                            "bud".into(),
                            format!("companion {companion:?} is not a rule node"),
                        )
                    }
                }
                if proof.children(companion).is_empty() {
                    return fail(path, "bud".into(), "companion is a leaf".into());
                }
            }
            PreNode::Rule { rule, seq } => {
                let children = proof.children(path);
                let child_seqs: Vec<Sequent> = match children
                    .iter()
                    .map(|c| proof.sequent(c).cloned())
                    .collect::<Option<Vec<_>>>()
                {
                    Some(v) => v,
                    None => return fail(path, rule.name(), "child sequent unavailable".into()),
                };
                let expected = match rule {
                    ChaRule::Case { var } => match case_premises(seq, var) {
                        Ok(ps) => Some(ps),
                        Err(e) => return fail(path, rule.name(), e),
                    },
                    ChaRule::Base(b) => match base_rule_check(b, seq) {
                        Err(e) => return fail(path, rule.name(), e),
                        Ok(RuleCheck::Premises(ps)) => Some(ps),
                        Ok(RuleCheck::Subset) => {
                            if child_seqs.len() != 1 {
                                return fail(path, rule.name(), "weakening needs one premise".into());
                            }
                            if child_seqs[0].suc != seq.suc
                                || !child_seqs[0].ant.is_subset(&seq.ant)
                            {
                                return fail(path, rule.name(), "not a weakening".into());
                            }
                            None
                        }
                        Ok(RuleCheck::EqMatch) => {
                            if child_seqs.len() != 1 {
                                return fail(path, rule.name(), "replacement needs one premise".into());
                            }
                            if let ChaRule::Base(BaseRule::EqL { s, t, x, y }) = rule {
                                if let Err(e) = eq_l_matches(&child_seqs[0], seq, s, t, x, y) {
                                    return fail(path, rule.name(), e);
                                }
                            }
                            None
                        }
                    },
                };
                if let Some(expected) = expected {
                    if expected.len() != child_seqs.len() {
                        return fail(
                            path,
                            rule.name(),
                            format!("expected {} premises, found {}", expected.len(), child_seqs.len()),
                        );
                    }
                    for (i, (want, got)) in expected.iter().zip(&child_seqs).enumerate() {
                        if want != got {
                            return fail(
                                path,
                                rule.name(),
                                format!("premise {i} is {got}, expected {want}"),
                            );
                        }
                    }
                }
            }
        }
    }
    CheckReport::Ok
}

// --- structural dependency order ----------------------------------------

/// `s ⊑ t` iff the companion of `s` lies on the local cycle of `t`,
/// together with its transitive closure. Requires cycle normal form.
pub fn structural_order(
    proof: &PreProof,
) -> Result<(BTreeSet<(NodePath, NodePath)>, BTreeSet<(NodePath, NodePath)>), String> {
    let shape = proof.shape();
    if !shape.is_cycle_normal() {
        return Err("not in cycle normal form".into());
    }
    let buds = shape.buds();
    let mut direct = BTreeSet::new();
    for s in &buds {
        let comp_s = shape.beta[s].clone();
        for t in &buds {
            let cycle_t: BTreeSet<NodePath> = shape.local_cycle(t)?.into_iter().collect();
            if cycle_t.contains(&comp_s) {
                direct.insert((s.clone(), t.clone()));
            }
        }
    }
    // transitive closure
    let mut closure = direct.clone();
    loop {
        let mut grew = false;
        let pairs: Vec<_> = closure.iter().cloned().collect();
        for (a, b) in &pairs {
            for (c, d) in &pairs {
                if b == c && closure.insert((a.clone(), d.clone())) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    Ok((direct, closure))
}

// --- induction orders -----------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InductionOrder {
    /// The pairs `s ⪯ t`; reflexivity is implicit.
    pub order: BTreeSet<(NodePath, NodePath)>,
    pub var_of: BTreeMap<NodePath, Ident>,
}

impl InductionOrder {
    pub fn le(&self, s: &[usize], t: &[usize]) -> bool {
        s == t || self.order.contains(&(s.to_vec(), t.to_vec()))
    }
}

fn cycle_sequents<'a>(
    proof: &'a PreProof,
    shape: &CyclicTree,
    bud: &[usize],
) -> Result<Vec<(&'a Sequent, Option<&'a ChaRule>)>, String> {
    let cycle = shape.local_cycle(bud)?;
    cycle
        .iter()
        .map(|n| {
            let seq = proof.sequent(n).ok_or_else(|| format!("no sequent at {n:?}"))?;
            Ok((seq, proof.rule(n)))
        })
        .collect()
}

/// Checks the three conditions: preservation along related cycles,
/// progress on each bud's own cycle, and existence of maxima in every
/// strongly connected bud set.
pub fn validate_induction_order(proof: &PreProof, io: &InductionOrder) -> bool {
    let shape = proof.shape();
    if !shape.is_cycle_normal() {
        return false;
    }
    let buds = shape.buds();
    for s in &buds {
        let Some(x_s) = io.var_of.get(s) else { return false };
        let Some(seq) = proof.sequent(s) else { return false };
        if !seq.free_vars().contains(x_s) {
            return false;
        }
    }
    // (a) preservation
    for s in &buds {
        let Ok(cycle) = cycle_sequents(proof, &shape, s) else { return false };
        for t in &buds {
            if io.le(s, t) {
                let x_t = &io.var_of[t];
                if !cycle.iter().all(|(seq, _)| seq.free_vars().contains(x_t)) {
                    return false;
                }
            }
        }
    }
    // (b) progress
    for s in &buds {
        let Ok(cycle) = cycle_sequents(proof, &shape, s) else { return false };
        let x_s = &io.var_of[s];
        if !cycle
            .iter()
            .any(|(_, rule)| matches!(rule, Some(ChaRule::Case { var }) if var == x_s))
        {
            return false;
        }
    }
    // (c) maxima for every strongly connected subset
    let bud_set: BTreeSet<NodePath> = buds.iter().cloned().collect();
    for component in shape.maximal_components(&bud_set) {
        let members: Vec<NodePath> = component.iter().cloned().collect();
        let n = members.len();
        for mask in 1u32..(1 << n) {
            let eta: BTreeSet<NodePath> = members
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, p)| p.clone())
                .collect();
            if shape.is_strongly_connected(&eta) {
                let has_max = eta.iter().any(|m| eta.iter().all(|t| io.le(t, m)));
                if !has_max {
                    return false;
                }
            }
        }
    }
    true
}

/// The iterative elimination procedure. Returns `None` exactly when some
/// strongly connected component admits no progressing variable, which is
/// equivalent to failure of the global trace condition.
pub fn find_induction_order(proof: &PreProof) -> Option<InductionOrder> {
    let shape = proof.shape();
    if !shape.is_cycle_normal() {
        return None;
    }
    let all_buds: BTreeSet<NodePath> = shape.buds().into_iter().collect();
    let mut pending: Vec<BTreeSet<NodePath>> = shape.maximal_components(&all_buds);
    let mut var_of: BTreeMap<NodePath, Ident> = BTreeMap::new();
    // for each removed bud: the component it was removed from
    let mut removed_from: Vec<(NodePath, BTreeSet<NodePath>)> = Vec::new();

    while !pending.is_empty() {
        // smallest component first, least node breaking ties
        pending.sort_by_key(|eta| (eta.len(), eta.iter().next().cloned()));
        let eta = pending.remove(0);
        let covered = shape.covered_set(&eta);
        // variables free throughout the covered set
        let mut common: Option<BTreeSet<Ident>> = None;
        for node in &covered {
            let vars = proof.sequent(node)?.free_vars();
            common = Some(match common {
                None => vars,
                Some(acc) => acc.intersection(&vars).cloned().collect(),
            });
        }
        let common = common.unwrap_or_default();
        // candidate pairs: x progressed by some bud of the component
        let mut choice: Option<(Ident, NodePath)> = None;
        'outer: for x in &common {
            for s in &eta {
                let cycle = shape.local_cycle(s).ok()?;
                let progresses = cycle.iter().any(|n| {
                    matches!(proof.rule(n), Some(ChaRule::Case { var }) if var == x)
                });
                if progresses {
                    choice = Some((x.clone(), s.clone()));
                    break 'outer;
                }
            }
        }
        let (x, s) = choice?;
        var_of.insert(s.clone(), x);
        removed_from.push((s.clone(), eta.clone()));
        let mut rest = eta;
        rest.remove(&s);
        if !rest.is_empty() {
            pending.extend(shape.maximal_components(&rest));
        }
    }

    let mut order = BTreeSet::new();
    for (t, eta) in &removed_from {
        for s in eta {
            order.insert((s.clone(), t.clone()));
        }
    }
    Some(InductionOrder { order, var_of })
}

/// Assigns variables to the structural order: for each bud `t`, some `x`
/// free along every cycle structurally below `t` and cased on `t`'s own
/// cycle. Returns the full order when it validates.
pub fn structural_induction_order(proof: &PreProof) -> Result<InductionOrder, String> {
    let (_, closure) = structural_order(proof)?;
    let shape = proof.shape();
    let buds = shape.buds();
    // higher buds first, so that nested cycles receive distinct variables
    // whenever candidates permit
    let mut ordered: Vec<NodePath> = buds.clone();
    let rank = |t: &NodePath| {
        buds.iter()
            .filter(|s| *s == t || closure.contains(&((*s).clone(), t.clone())))
            .count()
    };
    ordered.sort_by_key(|t| (std::cmp::Reverse(rank(t)), t.clone()));

    let mut var_of: BTreeMap<NodePath, Ident> = BTreeMap::new();
    for t in &ordered {
        let below: Vec<&NodePath> = buds
            .iter()
            .filter(|s| *s == t || closure.contains(&((*s).clone(), t.clone())))
            .collect();
        let mut candidates: Option<BTreeSet<Ident>> = None;
        for s in &below {
            for node in shape.local_cycle(s)? {
                let vars = proof
                    .sequent(&node)
                    .ok_or_else(|| format!("no sequent at {node:?}"))?
                    .free_vars();
                candidates = Some(match candidates {
                    None => vars,
                    Some(acc) => acc.intersection(&vars).cloned().collect(),
                });
            }
        }
        let candidates = candidates.unwrap_or_default();
        let own_cycle = shape.local_cycle(t)?;
        let progressing = |x: &Ident| {
            own_cycle
                .iter()
                .any(|n| matches!(proof.rule(n), Some(ChaRule::Case { var }) if var == x))
        };
        let taken: BTreeSet<&Ident> = var_of.values().collect();
        let pick = candidates
            .iter()
            .find(|x| progressing(x) && !taken.contains(x))
            .or_else(|| candidates.iter().find(|x| progressing(x)));
        match pick {
            Some(x) => {
                var_of.insert(t.clone(), x.clone());
            }
            None => {
                return Err(format!(
                    "no progressing variable for bud {t:?} under the structural order"
                ))
            }
        }
    }
    let io = InductionOrder { order: closure, var_of };
    if validate_induction_order(proof, &io) {
        Ok(io)
    } else {
        Err("structural order does not validate".into())
    }
}

// --- bounded evaluation -----------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Eval3 {
    True,
    False,
    Unknown,
}

pub type Assignment = BTreeMap<Ident, u64>;

fn eval_formula(f: &Formula, env: &Assignment, cutoff: u64) -> Eval3 {
    use Eval3::*;
    if let Some((x, bound, body)) = syntax::as_bounded_all(f) {
        let Some(b) = bound.eval(env) else { return Unknown };
        let mut out = True;
        for v in 0..b {
            let mut env2 = env.clone();
            env2.insert(x.clone(), v);
            match eval_formula(body, &env2, cutoff) {
                False => return False,
                Unknown => out = Unknown,
                True => {}
            }
        }
        return out;
    }
    if let Some((x, bound, body)) = syntax::as_bounded_ex(f) {
        let Some(b) = bound.eval(env) else { return Unknown };
        let mut out = False;
        for v in 0..b {
            let mut env2 = env.clone();
            env2.insert(x.clone(), v);
            match eval_formula(body, &env2, cutoff) {
                True => return True,
                Unknown => out = Unknown,
                False => {}
            }
        }
        return out;
    }
    match f {
        Formula::Eq(a, b) => match (a.eval(env), b.eval(env)) {
            (Some(x), Some(y)) => {
                if x == y {
                    True
                } else {
                    False
                }
            }
            _ => Unknown,
        },
        Formula::Bot => False,
        Formula::And(a, b) => match (eval_formula(a, env, cutoff), eval_formula(b, env, cutoff)) {
            (False, _) | (_, False) => False,
            (True, True) => True,
            _ => Unknown,
        },
        Formula::Or(a, b) => match (eval_formula(a, env, cutoff), eval_formula(b, env, cutoff)) {
            (True, _) | (_, True) => True,
            (False, False) => False,
            _ => Unknown,
        },
        Formula::Imp(a, b) => match (eval_formula(a, env, cutoff), eval_formula(b, env, cutoff)) {
            (False, _) | (_, True) => True,
            (True, False) => False,
            _ => Unknown,
        },
        Formula::All(x, body) => {
            for v in 0..=cutoff {
                let mut env2 = env.clone();
                env2.insert(x.clone(), v);
                if eval_formula(body, &env2, cutoff) == False {
                    return False;
                }
            }
            Unknown
        }
        Formula::Ex(x, body) => {
            for v in 0..=cutoff {
                let mut env2 = env.clone();
                env2.insert(x.clone(), v);
                if eval_formula(body, &env2, cutoff) == True {
                    return True;
                }
            }
            Unknown
        }
    }
}

/// Three-valued bounded satisfaction: terms and bounded quantifiers are
/// evaluated exactly; unbounded quantifiers are probed up to `cutoff`.
pub fn eval_sequent(seq: &Sequent, env: &Assignment, cutoff: u64) -> Eval3 {
    use Eval3::*;
    let mut all_true = true;
    for f in &seq.ant {
        match eval_formula(f, env, cutoff) {
            False => return True,
            Unknown => all_true = false,
            True => {}
        }
    }
    match eval_formula(&seq.suc, env, cutoff) {
        True => True,
        False => {
            if all_true {
                False
            } else {
                Unknown
            }
        }
        Unknown => Unknown,
    }
}

// --- embedding of inductive proofs ------------------------------------------

fn insert_subtree(nodes: &mut BTreeMap<NodePath, PreNode>, at: NodePath, tree: &ProofTree) {
    match &tree.rule {
        HaRule::Ind { formula, var, inst } => {
            if formula.free_vars().contains(var) {
                insert_gadget(nodes, at, formula, var, inst, &tree.conclusion);
            } else {
                // vacuous induction instance: the conclusion is an axiom
                nodes.insert(
                    at,
                    PreNode::Rule { rule: ChaRule::Base(BaseRule::Ax), seq: tree.conclusion.clone() },
                );
            }
        }
        HaRule::Base(b) => {
            nodes.insert(
                at.clone(),
                PreNode::Rule { rule: ChaRule::Base(b.clone()), seq: tree.conclusion.clone() },
            );
            for (i, child) in tree.children.iter().enumerate() {
                let mut p = at.clone();
                p.push(i);
                insert_subtree(nodes, p, child);
            }
        }
    }
}

fn insert_gadget(
    nodes: &mut BTreeMap<NodePath, PreNode>,
    at: NodePath,
    psi: &Formula,
    x: &str,
    inst: &Term,
    conclusion: &Sequent,
) {
    let psi_zero = psi.subst1(&syntax::zero(), x).expect("axiom instance");
    let psi_succ = psi.subst1(&syntax::succ(syntax::var(x)), x).expect("axiom instance");
    let step = syntax::all(x, syntax::imp(psi.clone(), psi_succ.clone()));
    let psi_inst = psi.subst1(inst, x).expect("axiom instance");
    let bar: BTreeSet<Formula> = [psi_zero.clone(), step.clone()].into_iter().collect();
    debug_assert_eq!(*conclusion, Sequent { ant: bar.clone(), suc: psi_inst.clone() });

    let seq = |suc: Formula| Sequent { ant: bar.clone(), suc };
    let at_ = |suffix: &[usize]| {
        let mut p = at.clone();
        p.extend_from_slice(suffix);
        p
    };

    let all_psi = syntax::all(x, psi.clone());
    // cut on all x. psi
    nodes.insert(
        at_(&[]),
        PreNode::Rule {
            rule: ChaRule::Base(BaseRule::Cut { formula: all_psi.clone() }),
            seq: conclusion.clone(),
        },
    );
    nodes.insert(
        at_(&[0]),
        PreNode::Rule { rule: ChaRule::Base(BaseRule::AllR), seq: seq(all_psi.clone()) },
    );
    // the companion: case distinction on x
    nodes.insert(
        at_(&[0, 0]),
        PreNode::Rule { rule: ChaRule::Case { var: x.to_string() }, seq: seq(psi.clone()) },
    );
    nodes.insert(
        at_(&[0, 0, 0]),
        PreNode::Rule { rule: ChaRule::Base(BaseRule::Ax), seq: seq(psi_zero.clone()) },
    );
    nodes.insert(
        at_(&[0, 0, 1]),
        PreNode::Rule {
            rule: ChaRule::Base(BaseRule::AllL {
                principal: step.clone(),
                witness: syntax::var(x),
                keep: true,
            }),
            seq: seq(psi_succ.clone()),
        },
    );
    let imp_inst = syntax::imp(psi.clone(), psi_succ.clone());
    nodes.insert(
        at_(&[0, 0, 1, 0]),
        PreNode::Rule {
            rule: ChaRule::Base(BaseRule::ImpL { principal: imp_inst.clone() }),
            seq: {
                let mut s = seq(psi_succ.clone());
                s.ant.insert(imp_inst);
                s
            },
        },
    );
    nodes.insert(at_(&[0, 0, 1, 0, 0]), PreNode::Bud { companion: at_(&[0, 0]) });
    nodes.insert(
        at_(&[0, 0, 1, 0, 1]),
        PreNode::Rule {
            rule: ChaRule::Base(BaseRule::Ax),
            seq: {
                let mut s = seq(psi_succ.clone());
                s.ant.insert(psi_succ.clone());
                s
            },
        },
    );
    // right premise of the cut: instantiate all x. psi at inst
    nodes.insert(
        at_(&[1]),
        PreNode::Rule {
            rule: ChaRule::Base(BaseRule::AllL {
                principal: all_psi.clone(),
                witness: inst.clone(),
                keep: false,
            }),
            seq: {
                let mut s = conclusion.clone();
                s.ant.insert(all_psi);
                s
            },
        },
    );
    nodes.insert(
        at_(&[1, 0]),
        PreNode::Rule {
            rule: ChaRule::Base(BaseRule::Ax),
            seq: {
                let mut s = conclusion.clone();
                s.ant.insert(psi_inst.clone());
                s
            },
        },
    );
}

/// Replaces every induction axiom leaf of a checked proof by the cyclic
/// case-distinction gadget; other nodes are carried over rule for rule.
pub fn embed_ha(proof: &ProofTree) -> PreProof {
    let mut nodes = BTreeMap::new();
    insert_subtree(&mut nodes, Vec::new(), proof);
    PreProof { nodes }
}

#[cfg(test)]
pub mod examples {
    use super::*;
    use crate::syntax::*;

    /// The canonical unsound pre-proof of `=> 0 /= 1`: a cut against a
    /// weakened copy of the root, with no variable to trace.
    pub fn unsound_zero_ne_one() -> PreProof {
        let goal = neg(eq(zero(), num(1)));
        let aux = eq(add(zero(), zero()), zero());
        let mut nodes = BTreeMap::new();
        nodes.insert(
            vec![],
            PreNode::Rule {
                rule: ChaRule::Base(BaseRule::Cut { formula: aux.clone() }),
                seq: Sequent::new([], goal.clone()),
            },
        );
        nodes.insert(
            vec![0],
            PreNode::Rule {
                rule: ChaRule::Base(BaseRule::Arith(ArithAxiom::AddZero(zero()))),
                seq: Sequent::new([], aux.clone()),
            },
        );
        nodes.insert(
            vec![1],
            PreNode::Rule {
                rule: ChaRule::Base(BaseRule::Wk),
                seq: Sequent::new([aux], goal.clone()),
            },
        );
        nodes.insert(vec![1, 0], PreNode::Bud { companion: vec![] });
        PreProof { nodes }
    }

    use crate::ha_kernel::ArithAxiom;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ha_kernel::build;
    use crate::ha_kernel::check;
    use crate::syntax::*;

    #[test]
    fn unsound_example_checks_but_has_no_order() {
        let p = examples::unsound_zero_ne_one();
        assert!(check_pre_proof(&p).is_ok(), "{}", check_pre_proof(&p));
        assert!(find_induction_order(&p).is_none());
    }

    #[test]
    fn gadget_embedding_is_a_proof() {
        // single induction axiom for psi(x) := x = x
        let psi = eq(var("x"), var("x"));
        let axiom = build::ind_axiom(psi.clone(), "x", var("x"));
        assert!(check(&axiom).is_ok());
        let pre = embed_ha(&axiom);
        let report = check_pre_proof(&pre);
        assert!(report.is_ok(), "{report}");
        let order = find_induction_order(&pre).expect("gadget must have an order");
        assert!(validate_induction_order(&pre, &order));
        assert_eq!(order.var_of.values().collect::<Vec<_>>(), vec![&"x".to_string()]);
        assert_eq!(pre.endsequent(), Some(&axiom.conclusion));
    }

    #[test]
    fn embedding_without_inductions_is_isomorphic() {
        let pf = build::eq_r([eq(var("y"), zero())], var("y"));
        let pre = embed_ha(&pf);
        assert!(check_pre_proof(&pre).is_ok());
        assert!(pre.buds().is_empty());
        assert_eq!(pre.node_count(), 1);
    }

    #[test]
    fn vacuous_induction_becomes_axiom() {
        let psi = top();
        let axiom = build::ind_axiom(psi, "x", var("z"));
        let pre = embed_ha(&axiom);
        assert!(check_pre_proof(&pre).is_ok());
        assert!(pre.buds().is_empty());
    }

    #[test]
    fn eval_examples() {
        let empty = Assignment::new();
        assert_eq!(eval_sequent(&Sequent::new([], eq(zero(), zero())), &empty, 5), Eval3::True);
        assert_eq!(
            eval_sequent(&Sequent::new([], neg(eq(zero(), num(1)))), &empty, 5),
            Eval3::True
        );
        // unbounded universal stays unknown even when all probes pass
        let all_lt_succ = all("x", lt(var("x"), succ(var("x"))));
        assert_eq!(eval_sequent(&Sequent::new([], all_lt_succ), &empty, 5), Eval3::Unknown);
        // but each instance is true
        for v in 0..=5 {
            let mut env = Assignment::new();
            env.insert("x".into(), v);
            assert_eq!(
                eval_sequent(&Sequent::new([], lt(var("x"), succ(var("x")))), &env, 5),
                Eval3::True
            );
        }
    }

    #[test]
    fn structural_order_of_gadget_is_discrete() {
        let psi = eq(var("x"), var("x"));
        let axiom = build::ind_axiom(psi, "x", var("x"));
        let pre = embed_ha(&axiom);
        let (direct, closure) = structural_order(&pre).unwrap();
        // one bud, related only to itself
        assert_eq!(direct.len(), 1);
        assert_eq!(closure.len(), 1);
        let io = structural_induction_order(&pre).unwrap();
        assert!(validate_induction_order(&pre, &io));
    }
}
