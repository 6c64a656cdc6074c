//! Proof-shape passes: making the bud-to-companion map injective, and
//! unfolding until the structural dependency order is itself a valid
//! induction order.
//!
//! The unfolding pass is heuristic with a verified postcondition: it
//! repeatedly inlines the cycle of an order-wise higher bud whose
//! companion intrudes into a lower cycle, re-establishes injectivity with
//! priority-aware redirection, and stops as soon as the structural order
//! validates. A node budget guards against blow-up.

use crate::cha_kernel::{
    check_pre_proof, find_induction_order, structural_induction_order, InductionOrder, PreNode,
    PreProof,
};
use crate::cyclic_structure::{prefix, strict_prefix, NodePath};
use crate::ha_kernel::{BaseRule, Sequent};
use std::collections::{BTreeMap, BTreeSet};

fn shift_path(p: &[usize], at: &[usize]) -> NodePath {
    if p == at {
        let mut q = at.to_vec();
        q.push(0);
        q
    } else if strict_prefix(at, p) {
        let mut q = at.to_vec();
        q.push(0);
        q.extend_from_slice(&p[at.len()..]);
        q
    } else {
        p.to_vec()
    }
}

/// Inserts an identity weakening directly above `at`; the old node moves
/// one step up. `keep_at` lists the buds that should keep pointing at the
/// weakening node; all other buds of `at` are redirected to the moved
/// original.
fn insert_wk_above(proof: &PreProof, at: &[usize], keep_at: &BTreeSet<NodePath>) -> PreProof {
    let seq = proof.sequent(at).expect("node exists").clone();
    let mut nodes: BTreeMap<NodePath, PreNode> = BTreeMap::new();
    for (p, node) in &proof.nodes {
        let p2 = shift_path(p, at);
        let node2 = match node {
            PreNode::Rule { rule, seq } => PreNode::Rule { rule: rule.clone(), seq: seq.clone() },
            PreNode::Bud { companion } => {
                let target = if companion == at {
                    if keep_at.contains(p) {
                        at.to_vec()
                    } else {
                        shift_path(companion, at)
                    }
                } else {
                    shift_path(companion, at)
                };
                PreNode::Bud { companion: target }
            }
        };
        nodes.insert(p2, node2);
    }
    nodes.insert(
        at.to_vec(),
        PreNode::Rule { rule: crate::cha_kernel::ChaRule::Base(BaseRule::Wk), seq },
    );
    PreProof { nodes }
}

fn buds_of_companion(proof: &PreProof, companion: &[usize]) -> Vec<NodePath> {
    proof
        .nodes
        .iter()
        .filter_map(|(p, n)| match n {
            PreNode::Bud { companion: c } if c == companion => Some(p.clone()),
            _ => None,
        })
        .collect()
}

/// Rank of a bud in an induction order: the number of buds weakly below it.
fn rank(io: &InductionOrder, bud: &[usize], all: &[NodePath]) -> usize {
    all.iter().filter(|s| io.le(s, bud)).count()
}

fn make_injective_with(proof: &PreProof, priority: Option<&InductionOrder>) -> PreProof {
    let mut current = proof.clone();
    loop {
        let shared: Option<NodePath> = current
            .nodes
            .values()
            .filter_map(|n| match n {
                PreNode::Bud { companion } => Some(companion.clone()),
                _ => None,
            })
            .fold(BTreeMap::<NodePath, usize>::new(), |mut m, c| {
                *m.entry(c).or_default() += 1;
                m
            })
            .into_iter()
            .find(|(_, k)| *k > 1)
            .map(|(c, _)| c);
        let Some(companion) = shared else { return current };
        let mut buds = buds_of_companion(&current, &companion);
        // the highest-priority bud keeps the lowest ladder position
        if let Some(io) = priority {
            let all = current.buds();
            buds.sort_by_key(|b| (std::cmp::Reverse(rank(io, b, &all)), b.clone()));
        } else {
            buds.sort();
        }
        let keep: BTreeSet<NodePath> = [buds[0].clone()].into_iter().collect();
        current = insert_wk_above(&current, &companion, &keep);
    }
}

/// Makes the bud-to-companion map injective by stacking identity
/// weakenings above shared companions (one per extra bud). The endsequent
/// and all traces are preserved.
pub fn make_injective(proof: &PreProof) -> PreProof {
    let priority = find_induction_order(proof);
    make_injective_with(proof, priority.as_ref())
}

/// Replaces the bud `u` by a copy of the subtree rooted at its companion;
/// buds of the copy that pointed inside the subtree are retargeted to the
/// copy, outside targets stay absolute.
fn inline_cycle(proof: &PreProof, u: &[usize]) -> PreProof {
    let companion = match &proof.nodes[u] {
        PreNode::Bud { companion } => companion.clone(),
        _ => panic!("not a bud: {u:?}"),
    };
    debug_assert!(strict_prefix(&companion, u));
    let mut nodes = proof.nodes.clone();
    nodes.remove(u);
    let in_subtree: Vec<(NodePath, PreNode)> = proof
        .nodes
        .iter()
        .filter(|(p, _)| prefix(&companion, p))
        .map(|(p, n)| (p.clone(), n.clone()))
        .collect();
    for (p, node) in in_subtree {
        let mut p2 = u.to_vec();
        p2.extend_from_slice(&p[companion.len()..]);
        let node2 = match node {
            PreNode::Rule { rule, seq } => PreNode::Rule { rule, seq },
            PreNode::Bud { companion: q } => {
                if prefix(&companion, &q) {
                    let mut q2 = u.to_vec();
                    q2.extend_from_slice(&q[companion.len()..]);
                    PreNode::Bud { companion: q2 }
                } else {
                    PreNode::Bud { companion: q }
                }
            }
        };
        nodes.insert(p2, node2);
    }
    PreProof { nodes }
}

/// Unfolds the proof until its structural dependency order, with variables
/// reassigned, is a valid induction order. The result is injective, in
/// cycle normal form, has the same endsequent, and uses only sequents
/// already present in the input.
pub fn normalize_order(proof: &PreProof, budget: usize) -> Result<PreProof, String> {
    if !proof.shape().is_cycle_normal() {
        return Err("not in cycle normal form".into());
    }
    if find_induction_order(proof).is_none() {
        return Err("no induction order".into());
    }
    let input_sequents: BTreeSet<Sequent> = proof
        .nodes
        .keys()
        .filter_map(|p| proof.sequent(p).cloned())
        .collect();
    let endsequent = proof.endsequent().cloned().ok_or("missing endsequent")?;

    let mut current = make_injective(proof);
    loop {
        if current.node_count() > budget {
            return Err(format!(
                "order normalisation exceeded the node budget of {budget}"
            ));
        }
        if structural_induction_order(&current).is_ok() {
            break;
        }
        let Some(order) = find_induction_order(&current) else {
            return Err("induction order lost during unfolding".into());
        };
        // violating pairs: u's companion on s's cycle although u is not
        // below s in the order
        let shape = current.shape();
        let buds = shape.buds();
        let all = buds.clone();
        let mut violations: Vec<(NodePath, NodePath)> = Vec::new();
        for s in &buds {
            let cycle: BTreeSet<NodePath> = shape.local_cycle(s).map_err(|e| e)?.into_iter().collect();
            for u in &buds {
                if u != s && cycle.contains(&shape.beta[u]) && !order.le(u, s) {
                    violations.push((s.clone(), u.clone()));
                }
            }
        }
        if violations.is_empty() {
            return Err("structural order invalid but no unfolding step applies".into());
        }
        // highest-priority s first, then least u
        violations.sort_by_key(|(s, u)| {
            (std::cmp::Reverse(rank(&order, s, &all)), s.clone(), u.clone())
        });
        let (_, u) = violations[0].clone();
        current = inline_cycle(&current, &u);
        let order2 = find_induction_order(&current);
        current = make_injective_with(&current, order2.as_ref());
    }

    // verified postconditions
    let report = check_pre_proof(&current);
    if !report.is_ok() {
        return Err(format!("normalised proof fails to check: {report}"));
    }
    if !current.shape().is_cycle_normal() {
        return Err("normalised proof left cycle normal form".into());
    }
    if current.endsequent() != Some(&endsequent) {
        return Err("normalisation changed the endsequent".into());
    }
    for p in current.nodes.keys() {
        if let Some(seq) = current.sequent(p) {
            if !input_sequents.contains(seq) {
                return Err(format!("normalisation invented the sequent {seq}"));
            }
        }
    }
    let io = structural_induction_order(&current)?;
    debug_assert!(crate::cha_kernel::validate_induction_order(&current, &io));
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cha_kernel::{validate_induction_order, ChaRule};
    use crate::ha_kernel::build;
    use crate::syntax::*;

    #[test]
    fn injective_leaves_single_bud_proofs_alone() {
        let psi = eq(var("x"), var("x"));
        let axiom = build::ind_axiom(psi, "x", var("x"));
        let pre = crate::cha_kernel::embed_ha(&axiom);
        let out = make_injective(&pre);
        assert_eq!(out, pre);
    }

    fn two_buds_one_companion() -> PreProof {
        // root: case x on {x=x} => 0=0; the zero branch closes by axiom,
        // the successor branch reaches two buds against the root
        let base = Sequent::new([eq(var("x"), var("x"))], eq(zero(), zero()));
        let zero_seq = base.subst1(&zero(), "x").unwrap();
        let succ_seq = base.subst1(&succ(var("x")), "x").unwrap();
        let xx = eq(var("x"), var("x"));
        let zz = eq(zero(), zero());
        let mut nodes = BTreeMap::new();
        nodes.insert(
            vec![],
            PreNode::Rule { rule: ChaRule::Case { var: "x".into() }, seq: base.clone() },
        );
        nodes.insert(
            vec![0],
            PreNode::Rule { rule: ChaRule::Base(BaseRule::Ax), seq: zero_seq },
        );
        nodes.insert(
            vec![1],
            PreNode::Rule {
                rule: ChaRule::Base(BaseRule::Cut { formula: xx.clone() }),
                seq: succ_seq.clone(),
            },
        );
        nodes.insert(
            vec![1, 0],
            PreNode::Rule {
                rule: ChaRule::Base(BaseRule::EqR),
                seq: Sequent { ant: succ_seq.ant.clone(), suc: xx.clone() },
            },
        );
        let with_xx = succ_seq.with(xx.clone());
        nodes.insert(
            vec![1, 1],
            PreNode::Rule {
                rule: ChaRule::Base(BaseRule::Cut { formula: zz.clone() }),
                seq: with_xx.clone(),
            },
        );
        nodes.insert(
            vec![1, 1, 0],
            PreNode::Rule {
                rule: ChaRule::Base(BaseRule::Wk),
                seq: Sequent { ant: with_xx.ant.clone(), suc: zz.clone() },
            },
        );
        nodes.insert(vec![1, 1, 0, 0], PreNode::Bud { companion: vec![] });
        nodes.insert(
            vec![1, 1, 1],
            PreNode::Rule { rule: ChaRule::Base(BaseRule::Wk), seq: with_xx.with(zz) },
        );
        nodes.insert(vec![1, 1, 1, 0], PreNode::Bud { companion: vec![] });
        PreProof { nodes }
    }

    #[test]
    fn injective_splits_shared_companion() {
        let pre = two_buds_one_companion();
        assert!(check_pre_proof(&pre).is_ok(), "{}", check_pre_proof(&pre));
        let before_buds = pre.buds().len();
        let out = make_injective(&pre);
        assert!(check_pre_proof(&out).is_ok(), "{}", check_pre_proof(&out));
        // beta now injective
        let targets: Vec<_> = out
            .nodes
            .values()
            .filter_map(|n| match n {
                PreNode::Bud { companion } => Some(companion.clone()),
                _ => None,
            })
            .collect();
        let unique: BTreeSet<_> = targets.iter().cloned().collect();
        assert_eq!(targets.len(), unique.len());
        // node count grew by exactly (buds - 1)
        assert_eq!(out.node_count(), pre.node_count() + before_buds - 1);
        assert_eq!(out.endsequent(), pre.endsequent());
    }

    #[test]
    fn normalize_keeps_already_valid_proofs() {
        let psi = eq(var("x"), var("x"));
        let axiom = build::ind_axiom(psi, "x", var("x"));
        let pre = crate::cha_kernel::embed_ha(&axiom);
        let out = normalize_order(&pre, 1_000_000).unwrap();
        assert_eq!(out, pre);
    }

    #[test]
    fn normalize_validates_split_motif() {
        let pre = two_buds_one_companion();
        let out = normalize_order(&pre, 1_000_000).unwrap();
        let io = structural_induction_order(&out).unwrap();
        assert!(validate_induction_order(&out, &io));
    }
}
