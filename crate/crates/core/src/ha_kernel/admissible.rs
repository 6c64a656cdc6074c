//! Macro expansions of the admissible rules into primitive derivations.
//!
//! Each expansion returns a tree the kernel accepts; nothing here is
//! trusted. The strong-induction expansion uses exactly one induction
//! axiom instance, on the weakly-bounded closure of the target formula;
//! the case split uses one induction on a quantifier-free formula.

use super::build::*;
use super::lemmas::*;
use super::rename::rename_proof;
use super::{ProofTree, Sequent};
use crate::syntax::{self, add, eq, imp, succ, var, zero, Formula, Ident, Term};
use std::collections::BTreeSet;

/// The admissible rules that can be expanded.
#[derive(Debug, Clone)]
pub enum AdmissibleRule {
    /// From `G, all y < x. f[y/x] => f` conclude `G => all x. f`
    /// (x, y not free in G; y not free in f).
    Ind { formula: Formula, var: Ident, aux: Ident },
    /// From `G[0/x] => d[0/x]` and `G[Sx/x] => d[Sx/x]` conclude
    /// `G => d`, given as the conclusion sequent.
    Case { conclusion: Sequent, var: Ident },
    /// From `G, f[s/v] => d` conclude `G, s < t, all v < t. f => d`.
    BoundedAllL { bounded: Formula, witness: Term, guard: Formula },
    /// From `G, v < t => f` conclude `G => all v < t. f`.
    BoundedAllR { bounded: Formula },
}

pub fn expand_admissible(
    rule: AdmissibleRule,
    mut premises: Vec<ProofTree>,
) -> Result<ProofTree, String> {
    match rule {
        AdmissibleRule::Ind { formula, var, aux } => {
            if premises.len() != 1 {
                return Err("induction expects one premise".into());
            }
            strong_induction(&formula, &var, &aux, premises.pop().unwrap())
        }
        AdmissibleRule::Case { conclusion, var } => {
            if premises.len() != 2 {
                return Err("case split expects two premises".into());
            }
            let succ_pf = premises.pop().unwrap();
            let zero_pf = premises.pop().unwrap();
            case_split(&conclusion, &var, zero_pf, succ_pf)
        }
        AdmissibleRule::BoundedAllL { bounded, witness, guard } => {
            if premises.len() != 1 {
                return Err("bounded instantiation expects one premise".into());
            }
            bounded_all_l(&bounded, &witness, &guard, premises.pop().unwrap())
        }
        AdmissibleRule::BoundedAllR { bounded } => {
            if premises.len() != 1 {
                return Err("bounded generalisation expects one premise".into());
            }
            bounded_all_r(&bounded, premises.pop().unwrap())
        }
    }
}

fn le_with(a: Term, b: Term, binder: &str) -> Formula {
    syntax::ex(binder, eq(succ(b), add(a, succ(var(binder)))))
}

/// Strong induction. `premise` proves `G, all y < x. f[y/x] => f`;
/// the result proves `G => all x. f`.
pub fn strong_induction(
    phi: &Formula,
    x: &str,
    y: &str,
    premise: ProofTree,
) -> Result<ProofTree, String> {
    if x == y {
        return Err("induction and auxiliary variable must differ".into());
    }
    if phi.free_vars().contains(y) {
        return Err(format!("auxiliary variable {y} occurs in the induction formula"));
    }
    let phi_y = phi
        .subst1(&var(y), x)
        .ok_or_else(|| format!("{y} captured in the induction formula"))?;
    let hypothesis = syntax::all(y, imp(syntax::lt(var(y), var(x)), phi_y.clone()));
    let mut gamma = premise.conclusion.ant.clone();
    if !gamma.remove(&hypothesis) {
        return Err(format!("premise lacks the hypothesis {hypothesis}"));
    }
    if premise.conclusion.suc != *phi {
        return Err(format!(
            "premise concludes {}, expected {phi}",
            premise.conclusion.suc
        ));
    }
    let gamma_free: BTreeSet<Ident> = gamma.iter().flat_map(|f| f.free_vars()).collect();
    if gamma_free.contains(x) || gamma_free.contains(y) {
        return Err(format!("{x} or {y} free in the context"));
    }

    // name discipline: every invented binder avoids everything in sight
    let mut used = premise.all_names();
    used.extend(phi.all_names());
    used.insert(x.to_string());
    used.insert(y.to_string());
    let xh = syntax::fresh("sa", &used);
    used.insert(xh.clone());
    let w = syntax::fresh("sw", &used);
    used.insert(w.clone());
    let zb = syntax::fresh("sz", &used);
    used.insert(zb.clone());

    let phi_h = phi.subst1(&var(&xh), x).ok_or("fresh variable captured")?;
    // the single induction formula: all xh <= w. phi[xh/x]
    let leg_w = le_with(var(&xh), var(&w), &zb);
    let invariant = syntax::all(&xh, imp(leg_w.clone(), phi_h.clone()));

    let hyp_h = hypothesis.subst1(&var(&xh), x).ok_or("fresh variable captured")?;
    let guard_y = match &hyp_h {
        Formula::All(_, body) => match body.as_ref() {
            Formula::Imp(g, _) => g.as_ref().clone(),
            _ => unreachable!(),
        },
        _ => unreachable!(),
    };

    // renamed main premise: G, hyp[xh/x] => phi[xh/x]
    let renamed = rename_proof(&premise, &var(&xh), x)?;

    // discharge of the hypothesis from `bound`: G, extras, bound => hyp_h
    // where bound : xh <= bnd and y < xh gives y < S bnd i.e. y <= bnd
    let discharge = |extras: &BTreeSet<Formula>,
                     bound: &Formula,
                     absurd: bool|
     -> Result<ProofTree, String> {
        let mut ctx = gamma.clone();
        ctx.extend(extras.iter().cloned());
        ctx.insert(bound.clone());
        let mut inner = ctx.clone();
        inner.insert(guard_y.clone());
        let body_pf = if absurd {
            // y < xh and xh <= 0 yield y < 0
            let goal_lt = syntax::lt(var(y), zero());
            let mut c2 = inner.clone();
            c2.insert(goal_lt.clone());
            let to_zero = lt_le_trans_for(&inner, &guard_y, bound, &goal_lt)?;
            let boom = lt_zero_absurd_for(&c2, &goal_lt, &phi_y)?;
            cut(goal_lt, to_zero, boom)
        } else {
            // y < xh and xh <= S bnd-1 ... here bound is xh <= S w', so
            // y < xh <= S w' gives y <= w', matching the invariant guard
            let inv_guard = leg_w.subst1(&var(y), &xh).ok_or("captured guard")?;
            let mut c2 = inner.clone();
            c2.insert(inv_guard.clone());
            let trans = lt_le_trans_for(&inner, &guard_y, bound, &inv_guard)?;
            let use_inv = {
                let left = ax(c2.clone(), inv_guard.clone());
                let right = ax(
                    {
                        let mut a = c2.clone();
                        a.insert(phi_y.clone());
                        a
                    },
                    phi_y.clone(),
                );
                let node = imp_l_on(inv_guard.clone(), phi_y.clone(), left, right);
                all_l(invariant.clone(), var(y), true, node)
            };
            cut(inv_guard, trans, use_inv)
        };
        // body_pf: ctx, guard_y => phi_y ; wrap into the hypothesis
        let per_y = imp_r_on(guard_y.clone(), body_pf);
        Ok(all_r(y, per_y))
    };

    // base: G => invariant[0/w]

    let leg_zero = leg_w.subst1(&zero(), &w).unwrap();
    let base = {
        let extras: BTreeSet<Formula> = BTreeSet::new();
        let hyp_pf = discharge(&extras, &leg_zero, true)?;
        // hyp_pf: G, leg_zero => hyp_h
        let main = wk_extend([leg_zero.clone()], renamed.clone());
        let main = wk(
            {
                let mut ant = gamma.clone();
                ant.insert(leg_zero.clone());
                ant.insert(hyp_h.clone());
                Sequent { ant, suc: phi_h.clone() }
            },
            main,
        );
        let body = cut(hyp_h.clone(), hyp_pf, main);
        all_r(&xh, imp_r_on(leg_zero.clone(), body))
    };

    // step: G => all w. invariant -> invariant[Sw/w]

    let leg_succ = leg_w.subst1(&succ(var(&w)), &w).unwrap();
    let step = {
        let extras: BTreeSet<Formula> = [invariant.clone()].into_iter().collect();
        let hyp_pf = discharge(&extras, &leg_succ, false)?;
        let main = wk(
            {
                let mut ant = gamma.clone();
                ant.insert(invariant.clone());
                ant.insert(leg_succ.clone());
                ant.insert(hyp_h.clone());
                Sequent { ant, suc: phi_h.clone() }
            },
            renamed,
        );
        let body = cut(hyp_h.clone(), hyp_pf, main);
        let per_xh = all_r(&xh, imp_r_on(leg_succ.clone(), body));
        all_r(&w, imp_r_on(invariant.clone(), per_xh))
    };

    // one induction on the invariant, instantiated at x
    let inv_x = invariant
        .subst1(&var(x), &xh)
        .map(|_| ())
        .and(Some(()))
        .and_then(|_| {
            // instance of the w-indexed family at x
            syntax::all(&xh, imp(leg_w.clone(), phi_h.clone())).subst1(&var(x), &w)
        })
        .ok_or("induction instance undefined")?;
    let ind = induction_from(&gamma, invariant.clone(), &w, var(x), base, step);
    debug_assert_eq!(ind.conclusion.suc, inv_x);

    // G, invariant[x/w] => phi
    let usage = {
        let mut ctx = gamma.clone();
        ctx.insert(inv_x.clone());
        let le_xx = leg_w
            .subst1(&var(x), &w)
            .and_then(|f| f.subst1(&var(x), &xh))
            .ok_or("reflexive guard undefined")?;
        let refl = wk(
            Sequent { ant: ctx.clone(), suc: le_xx.clone() },
            le_refl_for(&le_xx)?,
        );
        let right = ax(
            {
                let mut a = ctx.clone();
                a.insert(phi.clone());
                a
            },
            phi.clone(),
        );
        let node = imp_l_on(le_xx, phi.clone(), refl, right);
        all_l(inv_x.clone(), var(x), true, node)
    };
    let core = cut(inv_x, ind, usage);
    Ok(all_r(x, core))
}

/// Case analysis on `x`. `conclusion` is the target sequent; the premises
/// prove its `[0/x]` and `[Sx/x]` instances.
pub fn case_split(
    conclusion: &Sequent,
    x: &str,
    zero_pf: ProofTree,
    succ_pf: ProofTree,
) -> Result<ProofTree, String> {
    let inst0 = conclusion
        .subst1(&zero(), x)
        .ok_or("zero instance of the conclusion is undefined")?;
    let inst_s = conclusion
        .subst1(&succ(var(x)), x)
        .ok_or("successor instance of the conclusion is undefined")?;
    if zero_pf.conclusion != inst0 {
        return Err(format!(
            "zero premise concludes {}, expected {inst0}",
            zero_pf.conclusion
        ));
    }
    if succ_pf.conclusion != inst_s {
        return Err(format!(
            "successor premise concludes {}, expected {inst_s}",
            succ_pf.conclusion
        ));
    }

    let mut used = conclusion.all_names();
    used.extend(zero_pf.all_names());
    used.extend(succ_pf.all_names());
    used.insert(x.to_string());
    let v = syntax::fresh("cv", &used);
    used.insert(v.clone());
    let cz = syntax::fresh("cz", &used);
    used.insert(cz.clone());
    let cw = syntax::fresh("cw", &used);
    used.insert(cw.clone());

    // psi(v) := v = 0 \/ ex cz < S v. v = S cz   (quantifier-free modulo
    // bounded quantifiers)
    let lt_cz = |bound: Term| syntax::ex(&cw, eq(bound, add(var(&cz), succ(var(&cw)))));
    let disj2 = |t: &Term| {
        syntax::ex(
            &cz,
            syntax::and(lt_cz(succ(t.clone())), eq(t.clone(), succ(var(&cz)))),
        )
    };
    let psi = |t: &Term| syntax::or(eq(t.clone(), zero()), disj2(t));
    let psi_v = psi(&var(&v));

    let empty: BTreeSet<Formula> = BTreeSet::new();

    // base: => psi(0)
    let base = or_r(super::Side::Left, disj2(&zero()), eq_r([], zero()));

    // step: psi(v) => psi(Sv), not even using the hypothesis
    let step = {
        let ctx: BTreeSet<Formula> = [psi_v.clone()].into_iter().collect();
        // witness cz := v: S v = S v and v < S S v
        let lt_goal = lt_cz(succ(succ(var(&v)))).subst1(&var(&v), &cz).ok_or("capture")?;
        let lt_pf = wk(
            Sequent { ant: ctx.clone(), suc: lt_goal.clone() },
            le_succ_for(&lt_goal)?,
        );
        let eq_pf = eq_r(ctx.iter().cloned(), succ(var(&v)));
        let inner = and_r(lt_pf, eq_pf);
        let packed = ex_r(disj2(&succ(var(&v))), var(&v), inner);
        let disj = or_r(super::Side::Right, eq(succ(var(&v)), zero()), packed);
        all_r(&v, imp_r_on(psi_v.clone(), disj))
    };

    let psi_x = psi(&var(x));
    let ind = induction_from(&empty, psi_v.clone(), &v, var(x), base, step);
    let ind_in_ctx = wk(
        Sequent { ant: conclusion.ant.clone(), suc: psi_x.clone() },
        ind,
    );

    // G, psi(x) => d
    let use_psi = {
        let d1 = eq(var(x), zero());
        let d2 = disj2(&var(x));
        // left branch: x = 0
        let left = eq_subst_left(x, zero(), conclusion.clone(), zero_pf);
        // right branch: ex cz (cz < Sx /\ x = S cz)
        let mut ctx_r = conclusion.ant.clone();
        ctx_r.insert(d2.clone());
        let right = destruct_exists(&ctx_r, &d2, &cz, &conclusion.suc, |inner| {
            let conj = syntax::and(lt_cz(succ(var(x))), eq(var(x), succ(var(&cz))));
            // split the conjunction
            let lt_part = lt_cz(succ(var(x)));
            let eq_part = eq(var(x), succ(var(&cz)));
            let mut split_ctx: BTreeSet<Formula> =
                inner.iter().filter(|f| **f != conj).cloned().collect();
            split_ctx.insert(lt_part.clone());
            split_ctx.insert(eq_part.clone());
            // goal with the residual bound hypothesis
            let renamed = rename_proof(&succ_pf, &var(&cz), x)?;
            let goal_for_subst = {
                let mut g = conclusion.clone();
                g.ant.insert(lt_part.clone());
                g
            };
            let inst = goal_for_subst
                .subst1(&succ(var(&cz)), x)
                .ok_or("successor instance undefined")?;
            let renamed = wk(inst, renamed);
            let by_eq = eq_subst_left(x, succ(var(&cz)), goal_for_subst, renamed);
            let by_eq = wk(
                {
                    let mut ant = split_ctx.clone();
                    ant.insert(eq_part.clone());
                    Sequent { ant, suc: conclusion.suc.clone() }
                },
                by_eq,
            );
            Ok(and_l(lt_part, eq_part, by_eq))
        })?;
        or_l(d1, d2, left, right)
    };

    Ok(cut(psi_x, ind_in_ctx, use_psi))
}

/// Bounded instantiation: from `premise : G, f[s/v] => d` and the guard
/// `s < t` derive `G, guard, bounded => d`, where `bounded = all v < t. f`.
pub fn bounded_all_l(
    bounded: &Formula,
    witness: &Term,
    guard: &Formula,
    premise: ProofTree,
) -> Result<ProofTree, String> {
    let (v, body) = match bounded {
        Formula::All(v, body) => (v.clone(), body.as_ref().clone()),
        _ => return Err(format!("not a universal formula: {bounded}")),
    };
    let (inner_guard, inner_body) = match &body {
        Formula::Imp(g, b) => (g.as_ref().clone(), b.as_ref().clone()),
        _ => return Err(format!("not a bounded universal: {bounded}")),
    };
    let guard_inst = inner_guard
        .subst1(witness, &v)
        .ok_or("witness captured in the bound")?;
    let body_inst = inner_body
        .subst1(witness, &v)
        .ok_or("witness captured in the body")?;
    if !premise.conclusion.ant.contains(&body_inst) {
        return Err(format!("premise lacks the instance {body_inst}"));
    }

    let mut ctx = premise.conclusion.ant.clone();
    ctx.remove(&body_inst);
    ctx.insert(guard.clone());
    ctx.insert(bounded.clone());
    let goal_suc = premise.conclusion.suc.clone();

    // derive the instantiated guard from the conclusion guard
    let guard_pf = if *guard == guard_inst {
        ax(ctx.iter().cloned(), guard_inst.clone())
    } else {
        let rest: BTreeSet<Formula> = ctx.iter().filter(|f| *f != guard).cloned().collect();
        let glue = alpha_equiv_proof(guard, &guard_inst, &rest)
            .map_err(|e| format!("guard mismatch: {e}"))?;
        wk(Sequent { ant: ctx.clone(), suc: guard_inst.clone() }, glue)
    };

    let right = wk(
        {
            let mut ant = ctx.clone();
            ant.insert(body_inst.clone());
            Sequent { ant, suc: goal_suc.clone() }
        },
        premise,
    );
    let node = imp_l_on(guard_inst, body_inst, guard_pf, right);
    // node: ctx, (guard_inst -> body_inst) => d ; ctx keeps the bounded formula
    Ok(all_l(bounded.clone(), witness.clone(), true, node))
}

/// Bounded generalisation: from `premise : G, v < t => f` derive
/// `G => all v < t. f`.
pub fn bounded_all_r(bounded: &Formula, premise: ProofTree) -> Result<ProofTree, String> {
    let (v, body) = match bounded {
        Formula::All(v, body) => (v.clone(), body.as_ref().clone()),
        _ => return Err(format!("not a universal formula: {bounded}")),
    };
    let (inner_guard, inner_body) = match &body {
        Formula::Imp(g, b) => (g.as_ref().clone(), b.as_ref().clone()),
        _ => return Err(format!("not a bounded universal: {bounded}")),
    };
    if premise.conclusion.suc != inner_body {
        return Err(format!(
            "premise concludes {}, expected {inner_body}",
            premise.conclusion.suc
        ));
    }
    if !premise.conclusion.ant.contains(&inner_guard) {
        return Err(format!("premise lacks the guard {inner_guard}"));
    }
    let rest: BTreeSet<Ident> = premise
        .conclusion
        .ant
        .iter()
        .filter(|f| **f != inner_guard)
        .flat_map(|f| f.free_vars())
        .collect();
    if rest.contains(&v) {
        return Err(format!("eigenvariable {v} free in the context"));
    }
    Ok(all_r(&v, imp_r_on(inner_guard, premise)))
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
    fn case_split_on_reflexive_equation() {
        // G(x) = { x = x } |- x = x
        let conclusion = Sequent::new([eq(var("x"), var("x"))], eq(var("x"), var("x")));
        let p0 = ax([eq(zero(), zero())], eq(zero(), zero()));
        let ps = ax([eq(succ(var("x")), succ(var("x")))], eq(succ(var("x")), succ(var("x"))));
        let pf = case_split(&conclusion, "x", p0, ps).unwrap();
        assert_eq!(pf.conclusion, conclusion);
        assert_ok(&pf);
    }

    #[test]
    fn case_split_rejects_bad_premise() {
        let conclusion = Sequent::new([], eq(var("x"), var("x")));
        let p0 = ax([], eq(zero(), zero())); // not even a valid proof, shape ok
        let bad = ax([], eq(var("x"), var("x"))); // wrong instance
        assert!(case_split(&conclusion, "x", p0, bad).is_err());
    }

    #[test]
    fn strong_induction_vacuous() {
        // premise: all y < x. top => top ; conclusion: => all x. top
        let phi = top();
        let hyp = all("y", imp(lt(var("y"), var("x")), top()));
        let premise = pf_top([hyp.clone()]);
        let pf = strong_induction(&phi, "x", "y", premise).unwrap();
        assert_eq!(pf.conclusion, Sequent::new([], all("x", top())));
        assert_ok(&pf);
    }

    #[test]
    fn strong_induction_reflexivity() {
        // phi := x = x, hypothesis unused
        let phi = eq(var("x"), var("x"));
        let hyp = all("y", imp(lt(var("y"), var("x")), eq(var("y"), var("y"))));
        let premise = wk_extend([hyp.clone()], eq_r([], var("x")));
        let pf = strong_induction(&phi, "x", "y", premise).unwrap();
        assert_eq!(pf.conclusion, Sequent::new([], all("x", phi)));
        assert_ok(&pf);
    }

    #[test]
    fn bounded_all_l_trivial_instance() {
        // from G, f[s/v] => d with f := (v = v):
        // conclude G, s < t, all v < t. v=v => d
        let bounded = ball("v", var("t"), eq(var("v"), var("v")));
        let guard = lt(var("s"), var("t"));
        let inst = eq(var("s"), var("s"));
        let premise = ax([inst.clone()], inst.clone());
        let pf = bounded_all_l(&bounded, &var("s"), &guard, premise).unwrap();
        assert!(pf.conclusion.ant.contains(&bounded));
        assert!(pf.conclusion.ant.contains(&guard));
        assert_ok(&pf);
    }

    #[test]
    fn bounded_all_r_wraps() {
        let bounded = ball("v", var("t"), eq(var("v"), var("v")));
        let guard = lt(var("v"), var("t"));
        let premise = eq_r([guard.clone(), eq(zero(), zero())], var("v"));
        let pf = bounded_all_r(&bounded, premise).unwrap();
        assert_eq!(pf.conclusion.suc, bounded);
        assert_ok(&pf);
    }

    #[test]
    fn strong_induction_uses_one_induction_axiom() {
        let phi = eq(var("x"), var("x"));
        let hyp = all("y", imp(lt(var("y"), var("x")), eq(var("y"), var("y"))));
        let premise = wk_extend([hyp.clone()], eq_r([], var("x")));
        let pf = strong_induction(&phi, "x", "y", premise).unwrap();
        // exactly one induction is on the bounded closure of phi; the rest
        // come from the order library and are on plain equations
        let inds = pf.induction_formulas();
        let closures: Vec<_> = inds.iter().filter(|f| as_bounded_all(f).is_some()).collect();
        assert_eq!(closures.len(), 1);
        assert!(inds
            .iter()
            .filter(|f| as_bounded_all(f).is_none())
            .all(|f| matches!(f, Formula::Eq(..) | Formula::Or(..))));
    }
}
