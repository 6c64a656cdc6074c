//! Translation of normalised cyclic proofs into stack-labelled proofs.
//!
//! Every node `s` of the input receives the support set of buds whose
//! invariants must be available at `s`; ordered by companion position
//! these sets behave as stacks, extended by `Comp` at companions, shrunk
//! by `Pop`, and promoted at case distinctions. The translation is rule
//! for rule, with the bookkeeping rules inserted between parent and child.

use crate::aha_kernel::{AhaProof, AhaRule, CompanionLabel, LabelStack, StackedSequent};
use crate::cha_kernel::{
    check_pre_proof, structural_induction_order, ChaRule, InductionOrder, PreNode, PreProof,
};
use crate::cyclic_structure::{prefix, CyclicTree, NodePath};
use std::collections::BTreeMap;

/// For every node, the buds whose invariants are in scope, ordered by the
/// position of their companions.
pub struct SupportTable {
    pub sigma: BTreeMap<NodePath, Vec<NodePath>>,
}

impl SupportTable {
    pub fn of(&self, node: &[usize]) -> &[NodePath] {
        self.sigma.get(node).map(|v| v.as_slice()).unwrap_or(&[])
    }
}

/// Computes the support sets and re-checks the stack discipline they are
/// required to satisfy: the root supports at most its own companion bud,
/// non-companion children shrink the stack, companion children extend a
/// prefix by exactly their bud.
pub fn compute_support(proof: &PreProof) -> Result<SupportTable, String> {
    let shape = proof.shape();
    if !shape.is_cycle_normal() {
        return Err("not in cycle normal form".into());
    }
    let io = structural_induction_order(proof)?;
    let _ = io;
    let (_, closure) = crate::cha_kernel::structural_order(proof)?;
    let buds = shape.buds();

    let mut sigma: BTreeMap<NodePath, Vec<NodePath>> = BTreeMap::new();
    for s in proof.nodes.keys() {
        let mut support: Vec<NodePath> = Vec::new();
        for u in &buds {
            let reached = buds.iter().any(|t| {
                let on_cycle = shape
                    .local_cycle(t)
                    .map(|c| c.contains(s))
                    .unwrap_or(false);
                on_cycle && (t == u || closure.contains(&(t.clone(), u.clone())))
            });
            if reached {
                support.push(u.clone());
            }
        }
        // linearity under the companion order
        support.sort_by(|a, b| shape.beta[a].len().cmp(&shape.beta[b].len()));
        for w in support.windows(2) {
            if !prefix(&shape.beta[&w[0]], &shape.beta[&w[1]]) {
                return Err(format!(
                    "support of {s:?} is not linearly ordered by companion position"
                ));
            }
        }
        for u in &support {
            if !prefix(&shape.beta[u], s) {
                return Err(format!(
                    "support bud {u:?} has a companion off the path to {s:?}"
                ));
            }
        }
        sigma.insert(s.clone(), support);
    }

    // the stack discipline of the support sets
    let table = SupportTable { sigma };
    let root_support = table.of(&[]);
    let root_companion_bud: Option<&NodePath> = buds.iter().find(|b| shape.beta[*b].is_empty());
    match (root_support, root_companion_bud) {
        ([], None) => {}
        ([only], Some(b)) if only == b => {}
        _ => return Err("root support differs from its own companion bud".into()),
    }
    for s in proof.nodes.keys() {
        for t in proof.children(s) {
            let sup_s = table.of(s);
            let sup_t = table.of(&t);
            let is_companion = buds.iter().any(|b| shape.beta[b] == t);
            if is_companion {
                let own: Vec<&NodePath> = buds.iter().filter(|b| shape.beta[*b] == t).collect();
                if own.len() != 1 {
                    return Err(format!("companion {t:?} with {} buds", own.len()));
                }
                let Some((last, init)) = sup_t.split_last() else {
                    return Err(format!("companion child {t:?} with empty support"));
                };
                if last != own[0] || !is_prefix_list(init, sup_s) {
                    return Err(format!(
                        "support of companion child {t:?} does not extend a prefix of its parent"
                    ));
                }
            } else if !is_prefix_list(sup_t, sup_s) {
                return Err(format!(
                    "support of child {t:?} is not a prefix of its parent's"
                ));
            }
        }
    }
    Ok(table)
}

fn is_prefix_list(a: &[NodePath], b: &[NodePath]) -> bool {
    a.len() <= b.len() && a == &b[..a.len()]
}

/// The label stack at node `s` for the given bud chain: one label per bud
/// `t`, carrying the companion's sequent and plus polarity exactly when
/// the path from the companion to `s` leaves some case distinction on the
/// bud's variable through its successor premise.
pub fn build_stack(
    proof: &PreProof,
    shape: &CyclicTree,
    vars: &BTreeMap<NodePath, String>,
    s: &[usize],
    chain: &[NodePath],
) -> Result<LabelStack, String> {
    let mut labels = Vec::new();
    for t in chain {
        let comp = shape
            .beta
            .get(t)
            .ok_or_else(|| format!("{t:?} is not a bud"))?;
        if !prefix(comp, s) {
            return Err(format!("companion {comp:?} not on the path to {s:?}"));
        }
        let x_t = vars
            .get(t)
            .ok_or_else(|| format!("no variable assigned to bud {t:?}"))?;
        let mut plus = false;
        for len in comp.len()..s.len() {
            let node = &s[..len];
            let goes_right = s[len] == 1;
            if goes_right {
                if let Some(ChaRule::Case { var }) = proof.rule(node) {
                    if var == x_t {
                        plus = true;
                    }
                }
            }
        }
        let seq = proof
            .sequent(comp)
            .ok_or_else(|| format!("no sequent at {comp:?}"))?
            .clone();
        labels.push(CompanionLabel { var: x_t.clone(), plus, seq });
    }
    // the translation requires pairwise distinct label variables
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            if labels[i].var == labels[j].var {
                return Err(format!(
                    "stack at {s:?} carries two labels on {}; nested cycles must \
                     progress distinct variables",
                    labels[i].var
                ));
            }
        }
    }
    Ok(LabelStack(labels))
}

struct Translator<'a> {
    proof: &'a PreProof,
    shape: CyclicTree,
    table: SupportTable,
    vars: BTreeMap<NodePath, String>,
}

impl<'a> Translator<'a> {
    fn stack_at(&self, s: &[usize], chain: &[NodePath]) -> Result<LabelStack, String> {
        build_stack(self.proof, &self.shape, &self.vars, s, chain)
    }

    fn translate(&self, s: &NodePath) -> Result<AhaProof, String> {
        let seq = self
            .proof
            .sequent(s)
            .ok_or_else(|| format!("no sequent at {s:?}"))?
            .clone();
        let chain = self.table.of(s).to_vec();
        let full_stack = self.stack_at(s, &chain)?;

        match &self.proof.nodes[s] {
            PreNode::Bud { .. } => {
                // the bud's own label must sit in its support with plus
                // polarity; everything above it is dropped
                let pos = chain
                    .iter()
                    .position(|t| t == s)
                    .ok_or_else(|| format!("bud {s:?} missing from its own support"))?;
                let bud_stack = full_stack.truncate(pos + 1);
                match bud_stack.top() {
                    Some(top) if top.plus && top.seq == seq => {}
                    Some(top) if !top.plus => {
                        return Err(format!(
                            "cycle of bud {s:?} does not pass the successor premise of its case rule"
                        ))
                    }
                    _ => return Err(format!("bud {s:?} has a mismatched label")),
                }
                let bud_node =
                    AhaProof::leaf(AhaRule::Bud, StackedSequent::new(bud_stack.clone(), seq.clone()));
                if bud_stack == full_stack {
                    Ok(bud_node)
                } else {
                    Ok(AhaProof {
                        rule: AhaRule::Pop,
                        conclusion: StackedSequent::new(full_stack, seq),
                        children: vec![bud_node],
                    })
                }
            }
            PreNode::Rule { rule, .. } => {
                let children = self.proof.children(s);
                if children.is_empty() {
                    // axioms carry the empty stack, then pop up
                    let rule = match rule {
                        ChaRule::Base(b) => AhaRule::Base(b.clone()),
                        ChaRule::Case { .. } => {
                            return Err(format!("case rule without premises at {s:?}"))
                        }
                    };
                    let leaf =
                        AhaProof::leaf(rule, StackedSequent::new(LabelStack::empty(), seq.clone()));
                    if full_stack.is_empty() {
                        return Ok(leaf);
                    }
                    return Ok(AhaProof {
                        rule: AhaRule::Pop,
                        conclusion: StackedSequent::new(full_stack, seq),
                        children: vec![leaf],
                    });
                }

                // required premise stacks
                let required: Vec<LabelStack> = match rule {
                    ChaRule::Case { var } => {
                        vec![full_stack.clone(), full_stack.promote(var)]
                    }
                    ChaRule::Base(_) => vec![full_stack.clone(); children.len()],
                };

                let mut fixed = Vec::new();
                for (i, t) in children.iter().enumerate() {
                    let sub = self.translate(t)?;
                    let want = &required[i];
                    // the stack computed along the child must agree with
                    // the rule's requirement
                    let child_full = self.stack_at(t, &chain)?;
                    let child_full = match rule {
                        ChaRule::Case { var } if i == 1 => {
                            // along the successor premise the child path
                            // records the promotion itself
                            child_full.promote(var)
                        }
                        _ => child_full,
                    };
                    if child_full != *want {
                        return Err(format!(
                            "stack mismatch entering child {t:?}: {child_full} vs required {want}"
                        ));
                    }

                    let own_bud: Option<NodePath> = self
                        .shape
                        .beta
                        .iter()
                        .find(|(_, c)| *c == t)
                        .map(|(b, _)| b.clone());
                    let fixed_child = match own_bud {
                        Some(bud) => {
                            // companion: a Comp pushes the new minus label,
                            // then a Pop aligns with the rule's stack
                            let sup_t = self.table.of(t).to_vec();
                            let Some((last, init)) = sup_t.split_last() else {
                                return Err(format!("companion {t:?} with empty support"));
                            };
                            if *last != bud {
                                return Err(format!(
                                    "support of companion {t:?} does not end in its bud"
                                ));
                            }
                            debug_assert_eq!(sub.conclusion.stack.len(), sup_t.len());
                            let comp_stack = self.stack_at(t, init)?;
                            let pushed = sub
                                .conclusion
                                .stack
                                .top()
                                .ok_or("empty stack above a companion")?;
                            if pushed.plus {
                                return Err(format!(
                                    "freshly pushed label at {t:?} is not minus"
                                ));
                            }
                            let seq_t = self.proof.sequent(t).unwrap().clone();
                            let comp_node = AhaProof {
                                rule: AhaRule::Comp,
                                conclusion: StackedSequent::new(comp_stack.clone(), seq_t.clone()),
                                children: vec![sub],
                            };
                            if comp_stack == *want {
                                comp_node
                            } else {
                                if !comp_stack.is_prefix_of(want) {
                                    return Err(format!(
                                        "companion stack at {t:?} is not a prefix of the rule's"
                                    ));
                                }
                                AhaProof {
                                    rule: AhaRule::Pop,
                                    conclusion: StackedSequent::new(want.clone(), seq_t),
                                    children: vec![comp_node],
                                }
                            }
                        }
                        None => {
                            let seq_t = self.proof.sequent(t).unwrap().clone();
                            if sub.conclusion.stack == *want {
                                sub
                            } else {
                                if !sub.conclusion.stack.is_prefix_of(want) {
                                    return Err(format!(
                                        "child stack at {t:?} is not a prefix of the rule's"
                                    ));
                                }
                                AhaProof {
                                    rule: AhaRule::Pop,
                                    conclusion: StackedSequent::new(want.clone(), seq_t),
                                    children: vec![sub],
                                }
                            }
                        }
                    };
                    fixed.push(fixed_child);
                }

                let rule = match rule {
                    ChaRule::Base(b) => AhaRule::Base(b.clone()),
                    ChaRule::Case { var } => AhaRule::Case { var: var.clone() },
                };
                Ok(AhaProof {
                    rule,
                    conclusion: StackedSequent::new(full_stack, seq),
                    children: fixed,
                })
            }
        }
    }
}

/// Translates a normalised cyclic proof (injective, cycle normal form,
/// structural order valid) into a stack-labelled derivation with the same
/// endsequent.
pub fn translate_to_stacked(proof: &PreProof) -> Result<AhaProof, String> {
    let report = check_pre_proof(proof);
    if !report.is_ok() {
        return Err(format!("input fails to check: {report}"));
    }
    let io: InductionOrder = structural_induction_order(proof)?;
    let table = compute_support(proof)?;
    let shape = proof.shape();
    // injectivity
    {
        let mut seen = std::collections::BTreeSet::new();
        for c in shape.beta.values() {
            if !seen.insert(c.clone()) {
                return Err("bud-to-companion map is not injective".into());
            }
        }
    }
    let vars: BTreeMap<NodePath, String> = io.var_of.clone().into_iter().collect();
    let tr = Translator { proof, shape, table, vars };
    let root = tr.translate(&Vec::new())?;

    // a companion at the root leaves one label to discharge
    let out = if root.conclusion.stack.is_empty() {
        root
    } else {
        if root.conclusion.stack.len() != 1 || root.conclusion.stack.top().unwrap().plus {
            return Err("root stack is not a single minus label".into());
        }
        AhaProof {
            rule: AhaRule::Comp,
            conclusion: StackedSequent::new(LabelStack::empty(), root.conclusion.base.clone()),
            children: vec![root],
        }
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aha_kernel::check_aha;
    use crate::cha_kernel::embed_ha;
    use crate::ha_kernel::build;
    use crate::syntax::*;

    #[test]
    fn acyclic_proofs_get_empty_supports() {
        let pf = build::eq_r([eq(var("y"), zero())], var("y"));
        let pre = embed_ha(&pf);
        let table = compute_support(&pre).unwrap();
        assert!(table.of(&[]).is_empty());
        let aha = translate_to_stacked(&pre).unwrap();
        assert!(check_aha(&aha).is_ok());
        assert_eq!(aha.conclusion.base, pf.conclusion);
        assert!(aha.conclusion.stack.is_empty());
    }

    #[test]
    fn gadget_translates_and_checks() {
        let psi = eq(var("x"), var("x"));
        let axiom = build::ind_axiom(psi, "x", var("x"));
        let pre = embed_ha(&axiom);
        let table = compute_support(&pre).unwrap();
        // the support is the bud exactly on its cycle path
        let shape = pre.shape();
        let buds = shape.buds();
        assert_eq!(buds.len(), 1);
        let cycle = shape.local_cycle(&buds[0]).unwrap();
        for node in pre.nodes.keys() {
            let expected: &[NodePath] = if cycle.contains(node) { &buds } else { &[] };
            assert_eq!(table.of(node), expected, "at {node:?}");
        }
        let aha = translate_to_stacked(&pre).unwrap();
        let report = check_aha(&aha);
        assert!(report.is_ok(), "{report}");
        assert_eq!(aha.conclusion.base, axiom.conclusion);
        // the bud node carries the promoted label
        let mut found_bud = false;
        aha.visit(&mut |n| {
            if matches!(n.rule, AhaRule::Bud) {
                found_bud = true;
                assert!(n.conclusion.stack.top().unwrap().plus);
            }
        });
        assert!(found_bud);
    }

    #[test]
    fn stack_lengths_match_support_sizes() {
        let psi = eq(var("x"), var("x"));
        let axiom = build::ind_axiom(psi, "x", var("x"));
        let pre = embed_ha(&axiom);
        let aha = translate_to_stacked(&pre).unwrap();
        // every non-bookkeeping node's stack length equals its source
        // support size; spot-check the root and the case node
        assert_eq!(aha.conclusion.stack.len(), 0);
        let mut case_depth = None;
        aha.visit(&mut |n| {
            if matches!(n.rule, AhaRule::Case { .. }) {
                case_depth = Some(n.conclusion.stack.len());
            }
        });
        assert_eq!(case_depth, Some(1));
    }
}
