//! Construction helpers for proof trees.
//!
//! Every function produces a node whose conclusion matches what the checker
//! will demand, so large derivations can be assembled bottom-up without
//! re-deriving sequents by hand. Nothing here is trusted: the kernel checks
//! the final trees.

use super::{ArithAxiom, BaseRule, HaRule, ProofTree, Sequent, Side};
use crate::syntax::{self, Formula, Ident, Term};
use std::collections::BTreeSet;

pub fn ax(ant: impl IntoIterator<Item = Formula>, suc: Formula) -> ProofTree {
    ProofTree::leaf(HaRule::Base(BaseRule::Ax), Sequent::new(ant, suc))
}

pub fn ax_seq(seq: Sequent) -> ProofTree {
    ProofTree::leaf(HaRule::Base(BaseRule::Ax), seq)
}

pub fn eq_r(ant: impl IntoIterator<Item = Formula>, t: Term) -> ProofTree {
    ProofTree::leaf(
        HaRule::Base(BaseRule::EqR),
        Sequent::new(ant, syntax::eq(t.clone(), t)),
    )
}

pub fn bot_l(ant: impl IntoIterator<Item = Formula>, suc: Formula) -> ProofTree {
    let mut seq = Sequent::new(ant, suc);
    seq.ant.insert(Formula::Bot);
    ProofTree::leaf(HaRule::Base(BaseRule::BotL), seq)
}

pub fn arith(axiom: ArithAxiom) -> ProofTree {
    let seq = axiom.sequent();
    ProofTree::leaf(HaRule::Base(BaseRule::Arith(axiom)), seq)
}

pub fn ind_axiom(formula: Formula, var: &str, inst: Term) -> ProofTree {
    let seq = super::induction_sequent(&formula, var, &inst)
        .expect("induction instance must be substitutable");
    ProofTree::leaf(HaRule::Ind { formula, var: var.to_string(), inst }, seq)
}

/// Weakening to a target sequent; the premise antecedent must be a subset.
pub fn wk(target: Sequent, premise: ProofTree) -> ProofTree {
    debug_assert!(premise.conclusion.ant.is_subset(&target.ant));
    debug_assert_eq!(premise.conclusion.suc, target.suc);
    if premise.conclusion == target {
        return premise;
    }
    ProofTree { rule: HaRule::Base(BaseRule::Wk), conclusion: target, children: vec![premise] }
}

/// Weakening that only extends the antecedent of the premise.
pub fn wk_extend(extra: impl IntoIterator<Item = Formula>, premise: ProofTree) -> ProofTree {
    let mut seq = premise.conclusion.clone();
    for f in extra {
        seq.ant.insert(f);
    }
    wk(seq, premise)
}

/// Cut: from `G => f` and `G, f => d` conclude `G => d`.
pub fn cut(formula: Formula, left: ProofTree, right: ProofTree) -> ProofTree {
    let conclusion = Sequent {
        ant: left.conclusion.ant.clone(),
        suc: right.conclusion.suc.clone(),
    };
    ProofTree {
        rule: HaRule::Base(BaseRule::Cut { formula }),
        conclusion,
        children: vec![left, right],
    }
}

/// Cuts a closed fact `=> f` (weakened into the ambient context) into a
/// proof of `G, f => d`, yielding `G => d`.
pub fn cut_fact(fact: ProofTree, formula: Formula, rest: ProofTree) -> ProofTree {
    let mut ant = rest.conclusion.ant.clone();
    ant.remove(&formula);
    let left = wk(Sequent { ant, suc: formula.clone() }, fact);
    cut(formula, left, rest)
}

/// Implication right: `G, a => b  |-  G => a -> b`.
pub fn imp_r_on(a: Formula, premise: ProofTree) -> ProofTree {
    let mut ant = premise.conclusion.ant.clone();
    ant.remove(&a);
    let conclusion = Sequent { ant, suc: syntax::imp(a, premise.conclusion.suc.clone()) };
    ProofTree { rule: HaRule::Base(BaseRule::ImpR), conclusion, children: vec![premise] }
}

/// Implication left: from `G => a` and `G, b => d` conclude `G, a->b => d`.
pub fn imp_l_on(a: Formula, b: Formula, left: ProofTree, right: ProofTree) -> ProofTree {
    debug_assert_eq!(left.conclusion.suc, a);
    debug_assert!(right.conclusion.ant.contains(&b));
    let mut ant = left.conclusion.ant.clone();
    ant.insert(syntax::imp(a.clone(), b.clone()));
    let conclusion = Sequent { ant, suc: right.conclusion.suc.clone() };
    ProofTree {
        rule: HaRule::Base(BaseRule::ImpL { principal: syntax::imp(a, b) }),
        conclusion,
        children: vec![left, right],
    }
}

pub fn and_r(left: ProofTree, right: ProofTree) -> ProofTree {
    let conclusion = Sequent {
        ant: left.conclusion.ant.clone(),
        suc: syntax::and(left.conclusion.suc.clone(), right.conclusion.suc.clone()),
    };
    ProofTree { rule: HaRule::Base(BaseRule::AndR), conclusion, children: vec![left, right] }
}

/// Conjunction left: `G, a, b => d  |-  G, a/\b => d`.
pub fn and_l(a: Formula, b: Formula, premise: ProofTree) -> ProofTree {
    let mut ant = premise.conclusion.ant.clone();
    ant.remove(&a);
    ant.remove(&b);
    ant.insert(syntax::and(a.clone(), b.clone()));
    let conclusion = Sequent { ant, suc: premise.conclusion.suc.clone() };
    ProofTree {
        rule: HaRule::Base(BaseRule::AndL { principal: syntax::and(a, b) }),
        conclusion,
        children: vec![premise],
    }
}

pub fn or_r(side: Side, other: Formula, premise: ProofTree) -> ProofTree {
    let suc = match side {
        Side::Left => syntax::or(premise.conclusion.suc.clone(), other),
        Side::Right => syntax::or(other, premise.conclusion.suc.clone()),
    };
    let conclusion = Sequent { ant: premise.conclusion.ant.clone(), suc };
    ProofTree { rule: HaRule::Base(BaseRule::OrR { side }), conclusion, children: vec![premise] }
}

/// Disjunction left: from `G, a => d` and `G, b => d` conclude `G, a\/b => d`.
pub fn or_l(a: Formula, b: Formula, left: ProofTree, right: ProofTree) -> ProofTree {
    let mut ant = left.conclusion.ant.clone();
    ant.remove(&a);
    ant.insert(syntax::or(a.clone(), b.clone()));
    let conclusion = Sequent { ant, suc: left.conclusion.suc.clone() };
    ProofTree {
        rule: HaRule::Base(BaseRule::OrL { principal: syntax::or(a, b) }),
        conclusion,
        children: vec![left, right],
    }
}

/// Universal right: `G => f  |-  G => all x. f` (eigenvariable `x`).
pub fn all_r(x: &str, premise: ProofTree) -> ProofTree {
    let conclusion = Sequent {
        ant: premise.conclusion.ant.clone(),
        suc: syntax::all(x, premise.conclusion.suc.clone()),
    };
    ProofTree { rule: HaRule::Base(BaseRule::AllR), conclusion, children: vec![premise] }
}

/// Universal left with witness `t`: from `G[, all x.f], f[t/x] => d`
/// conclude `G, all x.f => d`.
pub fn all_l(principal: Formula, witness: Term, keep: bool, premise: ProofTree) -> ProofTree {
    let (x, body) = match &principal {
        Formula::All(x, body) => (x.clone(), body.as_ref().clone()),
        _ => panic!("all_l needs a universal principal"),
    };
    let inst = body.subst1(&witness, &x).expect("witness substitution undefined");
    let mut ant = premise.conclusion.ant.clone();
    ant.remove(&inst);
    ant.insert(principal.clone());
    let conclusion = Sequent { ant, suc: premise.conclusion.suc.clone() };
    ProofTree {
        rule: HaRule::Base(BaseRule::AllL { principal, witness, keep }),
        conclusion,
        children: vec![premise],
    }
}

/// Existential left (eigenvariable = bound variable of the principal):
/// from `G, f => d` conclude `G, ex x.f => d`.
pub fn ex_l(principal: Formula, premise: ProofTree) -> ProofTree {
    let body = match &principal {
        Formula::Ex(_, body) => body.as_ref().clone(),
        _ => panic!("ex_l needs an existential principal"),
    };
    let mut ant = premise.conclusion.ant.clone();
    ant.remove(&body);
    ant.insert(principal.clone());
    let conclusion = Sequent { ant, suc: premise.conclusion.suc.clone() };
    ProofTree {
        rule: HaRule::Base(BaseRule::ExL { principal }),
        conclusion,
        children: vec![premise],
    }
}

/// Existential right: from `G => f[t/x]` conclude `G => ex x. f`.
pub fn ex_r(target: Formula, witness: Term, premise: ProofTree) -> ProofTree {
    let conclusion = Sequent { ant: premise.conclusion.ant.clone(), suc: target };
    ProofTree {
        rule: HaRule::Base(BaseRule::ExR { witness }),
        conclusion,
        children: vec![premise],
    }
}

/// Replacement node. The caller supplies the full conclusion; the premise
/// is validated against it by the checker's hole matching.
pub fn eq_l(
    s: Term,
    t: Term,
    x: &str,
    y: &str,
    conclusion: Sequent,
    premise: ProofTree,
) -> ProofTree {
    ProofTree {
        rule: HaRule::Base(BaseRule::EqL { s, t, x: x.to_string(), y: y.to_string() }),
        conclusion,
        children: vec![premise],
    }
}

// --- small derived pieces ----------------------------------------------

/// `G => top`.
pub fn pf_top(ant: impl IntoIterator<Item = Formula>) -> ProofTree {
    let ant: BTreeSet<Formula> = ant.into_iter().collect();
    imp_r_on(Formula::Bot, bot_l(ant, Formula::Bot))
}

/// Picks two identifiers not occurring in `avoid`.
pub fn two_fresh(avoid: &BTreeSet<Ident>) -> (Ident, Ident) {
    let a = syntax::fresh("hole_a", avoid);
    let mut avoid2 = avoid.clone();
    avoid2.insert(a.clone());
    let b = syntax::fresh("hole_b", &avoid2);
    (a, b)
}

/// Names that must be avoided when inventing replacement holes around a
/// sequent and terms.
pub fn names_of(seq: &Sequent, terms: &[&Term]) -> BTreeSet<Ident> {
    let mut acc = seq.all_names();
    for t in terms {
        acc.extend(t.vars());
    }
    acc
}

/// From a proof of `G => s = t`, conclude `G => t = s`.
pub fn eq_sym(pf: ProofTree) -> ProofTree {
    let (s, t) = match &pf.conclusion.suc {
        Formula::Eq(a, b) => (a.clone(), b.clone()),
        _ => panic!("eq_sym needs an equation"),
    };
    let equation = syntax::eq(s.clone(), t.clone());
    let goal_inner = {
        let mut seq = pf.conclusion.clone();
        seq.ant.insert(equation.clone());
        seq.suc = syntax::eq(t.clone(), s.clone());
        seq
    };
    let (a, _b) = two_fresh(&names_of(&goal_inner, &[]));
    // premise: G => a = a, the merged template image
    let premise = {
        let mut ant = goal_inner.ant.clone();
        ant.remove(&equation);
        eq_r(ant, syntax::var(&a))
    };
    let node = eq_l(s.clone(), t, &a, "hole_b", goal_inner, premise);
    cut(equation, pf, node)
}

/// From proofs of `G => r = s` and `G => s = t`, conclude `G => r = t`.
pub fn eq_trans(pf1: ProofTree, pf2: ProofTree) -> ProofTree {
    let (r, s) = match &pf1.conclusion.suc {
        Formula::Eq(a, b) => (a.clone(), b.clone()),
        _ => panic!("eq_trans needs equations"),
    };
    let t = match &pf2.conclusion.suc {
        Formula::Eq(s2, t) => {
            debug_assert_eq!(*s2, s);
            t.clone()
        }
        _ => panic!("eq_trans needs equations"),
    };
    let e1 = syntax::eq(r.clone(), s.clone());
    let e2 = syntax::eq(s.clone(), t.clone());
    // inner goal: G, r=s, s=t => r=t   by replacement on s=t with template r=hole
    let inner_goal = {
        let mut seq = pf1.conclusion.clone();
        seq.ant.insert(e1.clone());
        seq.ant.insert(e2.clone());
        seq.suc = syntax::eq(r.clone(), t.clone());
        seq
    };
    let (a, _) = two_fresh(&names_of(&inner_goal, &[]));
    let premise = {
        // G, r=a => r=a
        let mut ant = inner_goal.ant.clone();
        ant.remove(&e2);
        // replace the r=s member by the template image r=a
        ant.remove(&e1);
        ant.insert(syntax::eq(r.clone(), syntax::var(&a)));
        ax(ant, syntax::eq(r.clone(), syntax::var(&a)))
    };
    let node = eq_l(s, t, &a, "hole_b", inner_goal, premise);
    let after_e2 = cut(e2, wk_extend([e1.clone()], pf2), node);
    cut(e1, pf1, after_e2)
}

/// Congruence: from `G => s = t` conclude `G => c[s] = c[t]`, where the
/// context is given as a term over the distinguished hole variable.
pub fn eq_cong(context: &Term, hole: &str, pf: ProofTree) -> ProofTree {
    let (s, t) = match &pf.conclusion.suc {
        Formula::Eq(a, b) => (a.clone(), b.clone()),
        _ => panic!("eq_cong needs an equation"),
    };
    let cs = context.subst1(&s, hole);
    let ct = context.subst1(&t, hole);
    let equation = syntax::eq(s.clone(), t.clone());
    let inner_goal = {
        let mut seq = pf.conclusion.clone();
        seq.ant.insert(equation.clone());
        seq.suc = syntax::eq(cs, ct);
        seq
    };
    let (a, _) = two_fresh(&names_of(&inner_goal, &[context]));
    let ca = context.subst1(&syntax::var(&a), hole);
    let premise = {
        let mut ant = inner_goal.ant.clone();
        ant.remove(&equation);
        eq_r(ant, ca)
    };
    let node = eq_l(s, t, &a, "hole_b", inner_goal, premise);
    cut(equation, pf, node)
}

/// The workhorse replacement derivation. Proves `G => d` where `d` and some
/// antecedent members mention `s` and `t` mixed, given:
///   - `pf_eq`: a proof of `G => s = t`,
///   - a `template` sequent over the two hole variables, whose
///     `[s/hole_s, t/hole_t]` instance is `G, s=t => d`, and whose merged
///     `[hole_s/hole_t]` instance is provable by `merged`.
pub fn by_replacement(
    s: Term,
    t: Term,
    hole_s: &str,
    hole_t: &str,
    pf_eq: ProofTree,
    goal: Sequent,
    merged: ProofTree,
) -> ProofTree {
    let equation = syntax::eq(s.clone(), t.clone());
    let inner_goal = goal.with(equation.clone());
    let node = eq_l(s, t, hole_s, hole_t, inner_goal, merged);
    cut(equation, pf_eq, node)
}

/// Folds antecedent members into their right-nested conjunction:
/// from `G, m1, .., mk => d` derive `G, conj_list(members) => d`.
pub fn conj_intro(members: &[Formula], premise: ProofTree) -> ProofTree {
    match members.split_first() {
        None => wk_extend([syntax::top()], premise),
        Some((_, [])) => premise,
        Some((first, rest)) => {
            let p = conj_intro(rest, premise);
            and_l(first.clone(), syntax::conj_list(rest), p)
        }
    }
}

/// Builds `ant => conj_list(members)` from axioms; every member must be in
/// `ant`. Empty member list yields the `top` proof.
pub fn build_conj_members(ant: &BTreeSet<Formula>, members: &[Formula]) -> ProofTree {
    match members.split_first() {
        None => pf_top(ant.iter().cloned()),
        Some((first, [])) => {
            debug_assert!(ant.contains(first), "conjunct {first} missing from context");
            ax(ant.iter().cloned(), first.clone())
        }
        Some((first, rest)) => {
            let left = ax(ant.iter().cloned(), first.clone());
            and_r(left, build_conj_members(ant, rest))
        }
    }
}

/// From a proof of `(G, d0)[u/x] => d[u/x]` (for a term `u` not containing
/// `x`) derives `G, x = u => d`: the antecedent equation is used to rewrite
/// every hole back to `x`.
///
/// `goal` must be the target sequent without the equation; `premise_pf`
/// proves its `[u/x]` instance.
pub fn eq_subst_left(x: &str, u: Term, goal: Sequent, premise_pf: ProofTree) -> ProofTree {
    debug_assert!(!u.vars().contains(x));
    let xu = syntax::eq(syntax::var(x), u.clone());
    let goal_with_eq = goal.with(xu.clone());
    let inst = goal.subst1(&u, x).expect("instance substitution undefined");
    debug_assert_eq!(premise_pf.conclusion, inst);

    // chi := /\ G[u/x] -> d[u/x]
    let members = syntax::conj_members(inst.ant.iter());
    let conj = syntax::conj_list(&members);
    let chi = syntax::imp(conj.clone(), inst.suc.clone());

    // (1) G, x=u => chi
    let p1 = {
        let body = conj_intro(&members, premise_pf);
        let closed = imp_r_on(conj.clone(), body);
        wk(Sequent { ant: goal_with_eq.ant.clone(), suc: chi.clone() }, closed)
    };

    // (2) G, x=u, chi => d  by ImpL; both obligations close by replacement
    //     with merged-to-axiom premises.
    let (hs, ht) = {
        let mut names = goal_with_eq.all_names();
        names.extend(u.vars());
        names.extend(chi.all_names());
        two_fresh(&names)
    };
    let hole = syntax::var(&hs);
    let ctx = &goal_with_eq.ant;
    let eq_l_rule = || {
        HaRule::Base(BaseRule::EqL {
            s: syntax::var(x),
            t: u.clone(),
            x: hs.clone(),
            y: ht.clone(),
        })
    };
    let holed_ant = || -> BTreeSet<Formula> {
        goal.ant
            .iter()
            .map(|f| f.subst1(&hole, x).expect("hole substitution"))
            .collect()
    };

    // (2a) G, x=u => /\ G[u/x]
    let p2a = {
        let sub_goal = Sequent { ant: ctx.clone(), suc: conj.clone() };
        if members.is_empty() {
            pf_top(ctx.iter().cloned())
        } else {
            // merged premise: G[hole/x] => conjunction of the same shape
            // with holes at the replaced positions
            let ant = holed_ant();
            let holed_members: Vec<Formula> = members
                .iter()
                .map(|m| {
                    // pick a context member whose instance this conjunct is
                    goal.ant
                        .iter()
                        .find(|f| f.subst1(&u, x).as_ref() == Some(m))
                        .map(|f| f.subst1(&hole, x).expect("hole substitution"))
                        .expect("conjunct must come from the context")
                })
                .collect();
            let merged = build_conj_members(&ant, &holed_members);
            ProofTree { rule: eq_l_rule(), conclusion: sub_goal, children: vec![merged] }
        }
    };

    // (2b) G, x=u, d[u/x] => d
    let p2b = {
        let sub_goal = {
            let mut ant = ctx.clone();
            ant.insert(inst.suc.clone());
            Sequent { ant, suc: goal.suc.clone() }
        };
        let merged = {
            let mut ant = holed_ant();
            let suc_holed = goal.suc.subst1(&hole, x).expect("hole substitution");
            ant.insert(suc_holed.clone());
            ax(ant, suc_holed)
        };
        ProofTree { rule: eq_l_rule(), conclusion: sub_goal, children: vec![merged] }
    };

    let p2 = imp_l_on(conj, inst.suc.clone(), p2a, p2b);
    let p2 = wk(
        {
            let mut ant = goal_with_eq.ant.clone();
            ant.insert(chi.clone());
            Sequent { ant, suc: goal.suc.clone() }
        },
        p2,
    );
    cut(chi, p1, p2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ha_kernel::{check, CheckReport};
    use crate::syntax::*;

    fn assert_ok(p: &ProofTree) {
        let r = check(p);
        assert!(matches!(r, CheckReport::Ok), "{r}");
    }

    #[test]
    fn top_proof_checks() {
        assert_ok(&pf_top([eq(var("x"), zero())]));
    }

    #[test]
    fn eq_sym_checks() {
        // x = 0 => 0 = x
        let pf = ax([eq(var("x"), zero())], eq(var("x"), zero()));
        let sym = eq_sym(pf);
        assert_eq!(sym.conclusion.suc, eq(zero(), var("x")));
        assert_ok(&sym);
    }

    #[test]
    fn eq_trans_checks() {
        let h1 = eq(var("a"), var("b"));
        let h2 = eq(var("b"), var("c"));
        let pf1 = ax([h1.clone(), h2.clone()], h1.clone());
        let pf2 = ax([h1.clone(), h2.clone()], h2.clone());
        let tr = eq_trans(pf1, pf2);
        assert_eq!(tr.conclusion.suc, eq(var("a"), var("c")));
        assert_ok(&tr);
    }

    #[test]
    fn eq_cong_checks() {
        // from x = 0 => x = 0 conclude x = 0 => S x = S 0
        let pf = ax([eq(var("x"), zero())], eq(var("x"), zero()));
        let cong = eq_cong(&succ(var("hole")), "hole", pf);
        assert_eq!(cong.conclusion.suc, eq(succ(var("x")), succ(zero())));
        assert_ok(&cong);
    }

    #[test]
    fn eq_subst_left_checks() {
        // from the [0/y] instance  x=x => 0=0  derive  x=x, y=0 => y=y
        let goal = Sequent::new([eq(var("x"), var("x"))], eq(var("y"), var("y")));
        let inst = goal.subst1(&zero(), "y").unwrap();
        let premise = wk(inst, eq_r([eq(var("x"), var("x"))], zero()));
        let pf = eq_subst_left("y", zero(), goal.clone(), premise);
        assert_eq!(pf.conclusion, goal.with(eq(var("y"), zero())));
        assert_ok(&pf);
    }

    #[test]
    fn conj_intro_and_build_handle_conjunction_members() {
        // a member that is itself a conjunction must stay intact
        let m1 = and(eq(var("p"), zero()), eq(var("q"), zero()));
        let m2 = eq(var("r"), zero());
        let members = conj_members([&m1, &m2]);
        let conj = conj_list(&members);
        let premise = ax([m1.clone(), m2.clone()], m2.clone());
        let folded = conj_intro(&members, premise);
        assert!(folded.conclusion.ant.contains(&conj));
        assert_ok(&folded);
        let built = build_conj_members(&[m1.clone(), m2.clone()].into_iter().collect(), &members);
        assert_eq!(built.conclusion.suc, conj);
        assert_ok(&built);
    }
}
