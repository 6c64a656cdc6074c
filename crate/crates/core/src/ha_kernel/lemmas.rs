//! Checked lemma proofs about the derived orders `<` and `<=`, plus two
//! small proof engines used throughout the translation:
//!
//! - `alpha_equiv_proof` derives one formula from an alpha-variant of it;
//! - `bound_mono` transports a formula along `s <= t` when the transported
//!   variable only occurs as the bound of bounded universal quantifiers.
//!
//! Lemma builders are parametric in the terms involved; the inductions they
//! use are on quantifier-free formulas.

use super::build::*;
use super::{ArithAxiom, ProofTree, Sequent};
use crate::syntax::{self, add, eq, succ, var, zero, Formula, Ident, Term};
use std::collections::BTreeSet;

type Ctx = BTreeSet<Formula>;

fn hyp(ctx: &Ctx, f: &Formula) -> ProofTree {
    debug_assert!(ctx.contains(f), "hypothesis {f} not in context");
    ax(ctx.iter().cloned(), f.clone())
}

/// `ctx => suc` for an antecedent-free arithmetic axiom.
fn arith_in(ctx: &Ctx, axiom: ArithAxiom) -> ProofTree {
    let seq = axiom.sequent();
    debug_assert!(seq.ant.is_empty());
    wk(Sequent { ant: ctx.clone(), suc: seq.suc.clone() }, arith(axiom))
}

/// From `ctx => S a = S b` conclude `ctx => a = b`.
fn succ_inj(pf: ProofTree) -> ProofTree {
    let (a, b) = match &pf.conclusion.suc {
        Formula::Eq(Term::Succ(a), Term::Succ(b)) => (a.as_ref().clone(), b.as_ref().clone()),
        other => panic!("succ_inj needs S-equation, got {other}"),
    };
    let axiom = arith(ArithAxiom::SuccInj(a.clone(), b.clone()));
    let hypo = eq(succ(a.clone()), succ(b.clone()));
    let right = wk(
        {
            let mut ant = pf.conclusion.ant.clone();
            ant.insert(hypo.clone());
            Sequent { ant, suc: eq(a, b) }
        },
        axiom,
    );
    cut(hypo, pf, right)
}

fn chain(parts: Vec<ProofTree>) -> ProofTree {
    let mut it = parts.into_iter();
    let first = it.next().expect("chain needs at least one link");
    it.fold(first, eq_trans)
}

// --- alpha equivalence --------------------------------------------------

/// Derives `extra, from => to` when `to` is an alpha-variant of `from`.
/// Fails (returns Err) when a bound name of one side occurs free in the
/// context in a way that blocks the derivation.
pub fn alpha_equiv_proof(from: &Formula, to: &Formula, extra: &Ctx) -> Result<ProofTree, String> {
    if from == to {
        let mut ant = extra.clone();
        ant.insert(from.clone());
        return Ok(ax(ant, to.clone()));
    }
    match (from, to) {
        (Formula::And(a, b), Formula::And(a2, b2)) => {
            let pa = alpha_equiv_proof(a, a2, extra)?;
            let pb = alpha_equiv_proof(b, b2, extra)?;
            let pa = wk_extend([b.as_ref().clone()], pa);
            let pb = wk_extend([a.as_ref().clone()], pb);
            Ok(and_l(a.as_ref().clone(), b.as_ref().clone(), and_r(pa, pb)))
        }
        (Formula::Or(a, b), Formula::Or(a2, b2)) => {
            let pa = or_r(super::Side::Left, b2.as_ref().clone(), alpha_equiv_proof(a, a2, extra)?);
            let pb = or_r(super::Side::Right, a2.as_ref().clone(), alpha_equiv_proof(b, b2, extra)?);
            Ok(or_l(a.as_ref().clone(), b.as_ref().clone(), pa, pb))
        }
        (Formula::Imp(a, b), Formula::Imp(a2, b2)) => {
            let mut inner = extra.clone();
            inner.insert(a2.as_ref().clone());
            let pa = alpha_equiv_proof(a2, a, &inner.clone().into_iter().filter(|f| f != a2.as_ref()).collect())?;
            // pa: extra, a2 => a
            let pb = {
                let mut ctx2 = extra.clone();
                ctx2.insert(a2.as_ref().clone());
                alpha_equiv_proof(b, b2, &ctx2)?
            };
            let node = imp_l_on(a.as_ref().clone(), b.as_ref().clone(), pa, pb);
            Ok(imp_r_on(a2.as_ref().clone(), node))
        }
        (Formula::All(x, f), Formula::All(y, g)) => {
            // eigenvariable is y; it may not occur free in the context
            for c in extra {
                if c.free_vars().contains(y) {
                    return Err(format!("alpha step blocked: {y} free in context"));
                }
            }
            let inst = f
                .subst1(&var(y), x)
                .ok_or_else(|| format!("alpha step blocked: {y} captured in body"))?;
            let inner = alpha_equiv_proof(&inst, g, extra)?;
            let p = all_l(from.clone(), var(y), false, inner);
            Ok(all_r(y, p))
        }
        (Formula::Ex(x, f), Formula::Ex(y, g)) => {
            for c in extra {
                if c.free_vars().contains(x) {
                    return Err(format!("alpha step blocked: {x} free in context"));
                }
            }
            let inst = g
                .subst1(&var(x), y)
                .ok_or_else(|| format!("alpha step blocked: {x} captured in body"))?;
            let inner = alpha_equiv_proof(f, &inst, extra)?;
            let p = ex_r(to.clone(), var(x), inner);
            Ok(ex_l(from.clone(), p))
        }
        _ => Err(format!("not alpha-equivalent: {from} vs {to}")),
    }
}

// --- robust existential elimination --------------------------------------

/// Eliminates an existential hypothesis with a caller-chosen eigenvariable.
///
/// `context` must contain `principal` (an existential formula). The
/// continuation receives the context without the principal but with the
/// body instantiated at `eigen`, and must prove the goal sequent from it.
pub fn destruct_exists(
    context: &Ctx,
    principal: &Formula,
    eigen: &str,
    goal_suc: &Formula,
    k: impl FnOnce(&Ctx) -> Result<ProofTree, String>,
) -> Result<ProofTree, String> {
    let (z, body) = match principal {
        Formula::Ex(z, body) => (z.clone(), body.as_ref().clone()),
        _ => return Err(format!("not an existential: {principal}")),
    };
    debug_assert!(context.contains(principal));
    let rest: Ctx = context.iter().filter(|f| *f != principal).cloned().collect();
    let inst = body
        .subst1(&var(eigen), &z)
        .ok_or_else(|| format!("eigenvariable {eigen} captured in {principal}"))?;
    let fresh_principal = syntax::ex(eigen, inst.clone());

    let mut inner_ctx = rest.clone();
    inner_ctx.insert(inst.clone());
    let inner = k(&inner_ctx)?;
    debug_assert_eq!(inner.conclusion.suc, *goal_suc);

    // eigenvariable condition for the fresh principal
    let mut free = rest.iter().flat_map(|f| f.free_vars()).collect::<BTreeSet<_>>();
    free.extend(goal_suc.free_vars());
    if free.contains(eigen) {
        return Err(format!("eigenvariable {eigen} not fresh for the context"));
    }
    let elim = ex_l(fresh_principal.clone(), inner);

    if fresh_principal == *principal {
        return Ok(wk(
            Sequent { ant: context.clone(), suc: goal_suc.clone() },
            elim,
        ));
    }
    // glue the alpha-variant: context, principal => fresh_principal
    let glue = alpha_equiv_proof(principal, &fresh_principal, &rest)?;
    let glue = wk(Sequent { ant: context.clone(), suc: fresh_principal.clone() }, glue);
    let elim = wk(
        {
            let mut ant = context.clone();
            ant.insert(fresh_principal.clone());
            Sequent { ant, suc: goal_suc.clone() }
        },
        elim,
    );
    Ok(cut(fresh_principal, glue, elim))
}

// --- order facts ----------------------------------------------------------

/// `=> (a + b) + c = a + (b + c)` via an induction on a fresh variable
/// instantiated at `c`. The induction formula is quantifier-free.
pub fn plus_assoc(a: &Term, b: &Term, c: &Term) -> ProofTree {
    let mut used: BTreeSet<Ident> = a.vars();
    used.extend(b.vars());
    used.extend(c.vars());
    let v = syntax::fresh("ind_v", &used);
    let phi = eq(
        add(add(a.clone(), b.clone()), var(&v)),
        add(a.clone(), add(b.clone(), var(&v))),
    );
    let empty: Ctx = BTreeSet::new();

    // base: (a+b)+0 = a+b = a+(b+0)
    let base = {
        let left = arith_in(&empty, ArithAxiom::AddZero(add(a.clone(), b.clone())));
        let hole = syntax::fresh("hole", &used);
        let right = eq_sym(eq_cong(
            &add(a.clone(), var(&hole)),
            &hole,
            arith_in(&empty, ArithAxiom::AddZero(b.clone())),
        ));
        chain(vec![left, right])
    };

    // step: phi(v) => phi(S v)
    let step = {
        let mut ctx: Ctx = BTreeSet::new();
        ctx.insert(phi.clone());
        let hole = syntax::fresh("hole", &used);
        // (a+b)+Sv = S((a+b)+v) = S(a+(b+v)) = a+S(b+v) = a+(b+Sv)
        let p1 = arith_in(&ctx, ArithAxiom::AddSucc(add(a.clone(), b.clone()), var(&v)));
        let p2 = eq_cong(&succ(var(&hole)), &hole, hyp(&ctx, &phi));
        let p3 = eq_sym(arith_in(&ctx, ArithAxiom::AddSucc(a.clone(), add(b.clone(), var(&v)))));
        let p4 = eq_sym(eq_cong(
            &add(a.clone(), var(&hole)),
            &hole,
            arith_in(&ctx, ArithAxiom::AddSucc(b.clone(), var(&v))),
        ));
        all_r(&v, imp_r_on(phi.clone(), chain(vec![p1, p2, p3, p4])))
    };

    induction_from(&empty, phi, &v, c.clone(), base, step)
}

/// `=> S a + b = S (a + b)`, induction on a fresh variable at `b`.
pub fn succ_plus(a: &Term, b: &Term) -> ProofTree {
    let mut used: BTreeSet<Ident> = a.vars();
    used.extend(b.vars());
    let v = syntax::fresh("ind_v", &used);
    let phi = eq(add(succ(a.clone()), var(&v)), succ(add(a.clone(), var(&v))));
    let empty: Ctx = BTreeSet::new();
    let hole = syntax::fresh("hole", &used);

    // base: Sa+0 = Sa = S(a+0)
    let base = {
        let left = arith_in(&empty, ArithAxiom::AddZero(succ(a.clone())));
        let right = eq_sym(eq_cong(
            &succ(var(&hole)),
            &hole,
            arith_in(&empty, ArithAxiom::AddZero(a.clone())),
        ));
        chain(vec![left, right])
    };

    // step: Sa+Sv = S(Sa+v) = S(S(a+v)) = S(a+Sv)
    let step = {
        let mut ctx: Ctx = BTreeSet::new();
        ctx.insert(phi.clone());
        let p1 = arith_in(&ctx, ArithAxiom::AddSucc(succ(a.clone()), var(&v)));
        let p2 = eq_cong(&succ(var(&hole)), &hole, hyp(&ctx, &phi));
        let p3 = eq_sym(eq_cong(
            &succ(var(&hole)),
            &hole,
            arith_in(&ctx, ArithAxiom::AddSucc(a.clone(), var(&v))),
        ));
        all_r(&v, imp_r_on(phi.clone(), chain(vec![p1, p2, p3])))
    };

    induction_from(&empty, phi, &v, b.clone(), base, step)
}

/// Assembles `ctx => phi[inst/v]` from an induction axiom together with
/// proofs of the base and step (both over `ctx`).
pub fn induction_from(
    ctx: &Ctx,
    phi: Formula,
    v: &str,
    inst: Term,
    base: ProofTree,
    step: ProofTree,
) -> ProofTree {
    let axiom = ind_axiom(phi.clone(), v, inst);
    let base_f = phi.subst1(&zero(), v).expect("base instance undefined");
    let step_f = syntax::all(
        v,
        syntax::imp(phi.clone(), phi.subst1(&succ(var(v)), v).expect("step instance undefined")),
    );
    debug_assert_eq!(base.conclusion.suc, base_f);
    debug_assert_eq!(step.conclusion.suc, step_f);

    let goal_suc = axiom.conclusion.suc.clone();
    let mut ant2 = ctx.clone();
    ant2.insert(base_f.clone());
    let mut ant3 = ant2.clone();
    ant3.insert(step_f.clone());
    let ax_in_ctx = wk(Sequent { ant: ant3.clone(), suc: goal_suc.clone() }, axiom);
    let step_in = wk(Sequent { ant: ant2.clone(), suc: step_f.clone() }, step);
    let after_step = cut(step_f, step_in, ax_in_ctx);
    let base_in = wk(Sequent { ant: ctx.clone(), suc: base_f.clone() }, base);
    cut(base_f, base_in, after_step)
}

fn lt_parts(f: &Formula) -> Result<(Term, Term, Ident, Formula), String> {
    match syntax::as_lt(f) {
        Some((a, b)) => {
            if let Formula::Ex(z, body) = f {
                Ok((a.clone(), b.clone(), z.clone(), body.as_ref().clone()))
            } else {
                unreachable!()
            }
        }
        None => Err(format!("not an order formula: {f}")),
    }
}

/// `=> goal` where `goal` has the shape `a < S a` (i.e. `a <= a`).
pub fn le_refl_for(goal: &Formula) -> Result<ProofTree, String> {
    let (a, bound, _, _) = lt_parts(goal)?;
    if bound != succ(a.clone()) {
        return Err(format!("not a reflexivity instance: {goal}"));
    }
    let empty: Ctx = BTreeSet::new();
    let used = goal.all_names();
    let hole = syntax::fresh("hole", &used);
    // S a = a + S 0
    let p = eq_sym(chain(vec![
        arith_in(&empty, ArithAxiom::AddSucc(a.clone(), zero())),
        eq_cong(&succ(var(&hole)), &hole, arith_in(&empty, ArithAxiom::AddZero(a.clone()))),
    ]));
    Ok(ex_r(goal.clone(), zero(), p))
}

/// `=> goal` where `goal` has the shape `a < S (S a)` (i.e. `a <= S a`).
pub fn le_succ_for(goal: &Formula) -> Result<ProofTree, String> {
    let (a, bound, _, _) = lt_parts(goal)?;
    if bound != succ(succ(a.clone())) {
        return Err(format!("not an `a <= S a` instance: {goal}"));
    }
    let empty: Ctx = BTreeSet::new();
    let used = goal.all_names();
    let hole = syntax::fresh("hole", &used);
    // S S a = a + S S 0
    let p = eq_sym(chain(vec![
        arith_in(&empty, ArithAxiom::AddSucc(a.clone(), succ(zero()))),
        eq_cong(
            &succ(var(&hole)),
            &hole,
            arith_in(&empty, ArithAxiom::AddSucc(a.clone(), zero())),
        ),
        eq_cong(
            &succ(succ(var(&hole))),
            &hole,
            arith_in(&empty, ArithAxiom::AddZero(a.clone())),
        ),
    ]));
    Ok(ex_r(goal.clone(), succ(zero()), p))
}

/// From `h : a <= b` in the context derive `goal : S a <= S b`.
/// Produces a proof of `ctx => goal` with `h` in `ctx`.
pub fn succ_le_mono_for(ctx: &Ctx, h: &Formula, goal: &Formula) -> Result<ProofTree, String> {
    let (a, sb, _, _) = lt_parts(h)?;
    let (sa2, ssb2, _, _) = lt_parts(goal)?;
    let b = match &sb {
        Term::Succ(b) => b.as_ref().clone(),
        _ => return Err(format!("hypothesis bound is not a successor: {h}")),
    };
    if sa2 != succ(a.clone()) || ssb2 != succ(succ(b.clone())) {
        return Err(format!("mismatched monotonicity instance: {h} vs {goal}"));
    }
    debug_assert!(ctx.contains(h));
    let mut used: BTreeSet<Ident> = ctx.iter().flat_map(|f| f.all_names()).collect();
    used.extend(goal.all_names());
    let eigen = syntax::fresh("mz", &used);
    let hole = syntax::fresh("hole", &used);

    destruct_exists(ctx, h, &eigen, goal, |inner| {
        // inner has  S b = a + S eigen
        let hyp_f = eq(succ(b.clone()), add(a.clone(), succ(var(&eigen))));
        // S S b = S (a + S eigen) = S a + S eigen
        let p = chain(vec![
            eq_cong(&succ(var(&hole)), &hole, hyp(inner, &hyp_f)),
            eq_sym(succ_plus_in(inner, &a, &succ(var(&eigen)))),
        ]);
        Ok(ex_r(goal.clone(), var(&eigen), p))
    })
}

fn succ_plus_in(ctx: &Ctx, a: &Term, b: &Term) -> ProofTree {
    let pf = succ_plus(a, b);
    wk(Sequent { ant: ctx.clone(), suc: pf.conclusion.suc.clone() }, pf)
}

fn plus_assoc_in(ctx: &Ctx, a: &Term, b: &Term, c: &Term) -> ProofTree {
    let pf = plus_assoc(a, b, c);
    wk(Sequent { ant: ctx.clone(), suc: pf.conclusion.suc.clone() }, pf)
}

/// From `h1 : a <= b` and `h2 : b <= c` in the context derive
/// `goal : a <= c`.
pub fn le_trans_for(ctx: &Ctx, h1: &Formula, h2: &Formula, goal: &Formula) -> Result<ProofTree, String> {
    let (a, sb, _, _) = lt_parts(h1)?;
    let (b2, sc, _, _) = lt_parts(h2)?;
    let (a3, sc3, _, _) = lt_parts(goal)?;
    let b = match &sb {
        Term::Succ(b) => b.as_ref().clone(),
        _ => return Err("h1 is not a <= formula".into()),
    };
    let c = match &sc {
        Term::Succ(c) => c.as_ref().clone(),
        _ => return Err("h2 is not a <= formula".into()),
    };
    if b2 != b || a3 != a || sc3 != sc {
        return Err(format!("mismatched transitivity instance: {h1}; {h2}; {goal}"));
    }
    let mut used: BTreeSet<Ident> = ctx.iter().flat_map(|f| f.all_names()).collect();
    used.extend(goal.all_names());
    let z = syntax::fresh("tz", &used);
    used.insert(z.clone());
    let w = syntax::fresh("tw", &used);
    used.insert(w.clone());
    let hole = syntax::fresh("hole", &used);

    destruct_exists(ctx, h2, &w, goal, |c2| {
        destruct_exists(c2, h1, &z, goal, |inner| {
            let h1b = eq(succ(b.clone()), add(a.clone(), succ(var(&z))));
            let h2b = eq(succ(c.clone()), add(b.clone(), succ(var(&w))));
            // b = a + z
            let b_eq = succ_inj(chain(vec![
                hyp(inner, &h1b),
                arith_in(inner, ArithAxiom::AddSucc(a.clone(), var(&z))),
            ]));
            // c = b + w
            let c_eq = succ_inj(chain(vec![
                hyp(inner, &h2b),
                arith_in(inner, ArithAxiom::AddSucc(b.clone(), var(&w))),
            ]));
            // c = (a+z) + w = a + (z+w)
            let c_chain = chain(vec![
                c_eq,
                eq_cong(&add(var(&hole), var(&w)), &hole, b_eq),
                plus_assoc_in(inner, &a, &var(&z), &var(&w)),
            ]);
            // S c = S (a + (z+w)) = a + S (z+w)
            let final_eq = chain(vec![
                eq_cong(&succ(var(&hole)), &hole, c_chain),
                eq_sym(arith_in(inner, ArithAxiom::AddSucc(a.clone(), add(var(&z), var(&w))))),
            ]);
            Ok(ex_r(goal.clone(), add(var(&z), var(&w)), final_eq))
        })
    })
}

/// From `h1 : a < b` and `h2 : b <= c` in the context derive `goal : a < c`.
pub fn lt_le_trans_for(ctx: &Ctx, h1: &Formula, h2: &Formula, goal: &Formula) -> Result<ProofTree, String> {
    let (a, b, _, _) = lt_parts(h1)?;
    let (b2, sc, _, _) = lt_parts(h2)?;
    let (a3, c3, _, _) = lt_parts(goal)?;
    let c = match &sc {
        Term::Succ(c) => c.as_ref().clone(),
        _ => return Err("h2 is not a <= formula".into()),
    };
    if b2 != b || a3 != a || c3 != c {
        return Err(format!("mismatched transitivity instance: {h1}; {h2}; {goal}"));
    }
    let mut used: BTreeSet<Ident> = ctx.iter().flat_map(|f| f.all_names()).collect();
    used.extend(goal.all_names());
    let z = syntax::fresh("tz", &used);
    used.insert(z.clone());
    let w = syntax::fresh("tw", &used);
    used.insert(w.clone());
    let hole = syntax::fresh("hole", &used);

    destruct_exists(ctx, h2, &w, goal, |c2| {
        destruct_exists(c2, h1, &z, goal, |inner| {
            let h1b = eq(b.clone(), add(a.clone(), succ(var(&z))));
            let h2b = eq(succ(c.clone()), add(b.clone(), succ(var(&w))));
            // c = b + w
            let c_eq = succ_inj(chain(vec![
                hyp(inner, &h2b),
                arith_in(inner, ArithAxiom::AddSucc(b.clone(), var(&w))),
            ]));
            // c = (a + S z) + w = a + (S z + w) = a + S (z + w)
            let c_chain = chain(vec![
                c_eq,
                eq_cong(&add(var(&hole), var(&w)), &hole, hyp(inner, &h1b)),
                plus_assoc_in(inner, &a, &succ(var(&z)), &var(&w)),
                eq_cong(
                    &add(a.clone(), var(&hole)),
                    &hole,
                    succ_plus_in(inner, &var(&z), &var(&w)),
                ),
            ]);
            Ok(ex_r(goal.clone(), add(var(&z), var(&w)), c_chain))
        })
    })
}

/// From `h : a < 0` in the context derive any `goal`.
pub fn lt_zero_absurd_for(ctx: &Ctx, h: &Formula, goal: &Formula) -> Result<ProofTree, String> {
    let (a, bound, _, _) = lt_parts(h)?;
    if bound != zero() {
        return Err(format!("bound is not zero: {h}"));
    }
    let mut used: BTreeSet<Ident> = ctx.iter().flat_map(|f| f.all_names()).collect();
    used.extend(goal.free_vars());
    let z = syntax::fresh("az", &used);

    destruct_exists(ctx, h, &z, goal, |inner| {
        let hb = eq(zero(), add(a.clone(), succ(var(&z))));
        // 0 = S (a + z)
        let zero_succ = chain(vec![
            hyp(inner, &hb),
            arith_in(inner, ArithAxiom::AddSucc(a.clone(), var(&z))),
        ]);
        let neq = ArithAxiom::ZeroNeSucc(add(a.clone(), var(&z)));
        let neq_f = neq.sequent().suc.clone();
        let (lhs, _) = match &neq_f {
            Formula::Imp(l, r) => (l.as_ref().clone(), r.as_ref().clone()),
            _ => unreachable!(),
        };
        let mut bot_ctx = inner.clone();
        bot_ctx.insert(Formula::Bot);
        let node = imp_l_on(
            lhs,
            Formula::Bot,
            zero_succ,
            bot_l(inner.iter().cloned(), goal.clone()),
        );
        Ok(cut_fact(arith(neq), neq_f, node))
    })
}

// --- bound monotonicity ---------------------------------------------------

/// Transports `phi` along `s <= t`: proves
/// `delta, phi[t/y] => phi[s/y]`
/// for formulas in which every free occurrence of `y` is the bound of a
/// bounded universal quantifier (strict `< y` or weak `< S y`).
///
/// `side_pf` must prove `delta' => s <= t` for some `delta'` contained in
/// `delta`.
pub fn bound_mono(
    phi: &Formula,
    y: &str,
    s: &Term,
    t: &Term,
    delta: &Ctx,
    side_pf: &ProofTree,
) -> Result<ProofTree, String> {
    let le_st = syntax::le(s.clone(), t.clone());
    if side_pf.conclusion.suc != le_st {
        return Err(format!(
            "side proof concludes {}, expected {le_st}",
            side_pf.conclusion.suc
        ));
    }
    if !side_pf.conclusion.ant.is_subset(delta) {
        return Err("side proof context not contained in delta".into());
    }
    mono_rec(phi, y, s, t, delta, side_pf)
}

fn mono_rec(
    chi: &Formula,
    y: &str,
    s: &Term,
    t: &Term,
    delta: &Ctx,
    side_pf: &ProofTree,
) -> Result<ProofTree, String> {
    let ct = chi
        .subst1(t, y)
        .ok_or_else(|| format!("substitution [{t}/{y}] undefined on {chi}"))?;
    let cs = chi
        .subst1(s, y)
        .ok_or_else(|| format!("substitution [{s}/{y}] undefined on {chi}"))?;
    if ct == cs {
        let mut ant = delta.clone();
        ant.insert(ct);
        return Ok(ax(ant, cs));
    }

    // the bounded-quantifier pattern on y itself
    if let Formula::All(q, body) = chi {
        if let Formula::Imp(guard, psi) = body.as_ref() {
            if let Some((qv, r)) = syntax::as_lt(guard) {
                let r = r.clone();
                if *qv == var(q) && r.vars().contains(y) && !psi.free_vars().contains(y) {
                    return mono_bounded(chi, q, guard, psi, &r, y, s, t, delta, side_pf);
                }
            }
        }
    }

    match chi {
        Formula::And(a, b) => {
            let at = a.subst1(t, y).unwrap();
            let bt = b.subst1(t, y).unwrap();
            let pa = wk_extend([bt.clone()], mono_rec(a, y, s, t, delta, side_pf)?);
            let pb = wk_extend([at.clone()], mono_rec(b, y, s, t, delta, side_pf)?);
            Ok(and_l(at, bt, and_r(pa, pb)))
        }
        Formula::Or(a, b) => {
            let at = a.subst1(t, y).unwrap();
            let bt = b.subst1(t, y).unwrap();
            let as_ = a.subst1(s, y).unwrap();
            let bs = b.subst1(s, y).unwrap();
            let pa = or_r(super::Side::Left, bs, mono_rec(a, y, s, t, delta, side_pf)?);
            let pb = or_r(super::Side::Right, as_, mono_rec(b, y, s, t, delta, side_pf)?);
            Ok(or_l(at, bt, pa, pb))
        }
        Formula::Imp(a, b) => {
            if a.free_vars().contains(y) {
                return Err(format!("{y} occurs in an implication antecedent: {chi}"));
            }
            let a = a.as_ref().clone();
            let bt = b.subst1(t, y).unwrap();
            let mut delta2 = delta.clone();
            delta2.insert(a.clone());
            let rec = wk_extend([a.clone()], mono_rec(b, y, s, t, &delta2, &wk_extend([a.clone()], side_pf.clone()))?);
            // rec: delta, a, b_t => b_s
            let left = ax(
                {
                    let mut ant = delta.clone();
                    ant.insert(a.clone());
                    ant
                },
                a.clone(),
            );
            let node = imp_l_on(a.clone(), bt, left, rec);
            Ok(imp_r_on(a, node))
        }
        Formula::All(q, body) => {
            // generic congruence through the quantifier
            let xt = chi.subst1(t, y).unwrap();
            for f in delta {
                if f.free_vars().contains(q) {
                    return Err(format!("eigenvariable {q} free in context"));
                }
            }
            if s.vars().contains(q) || t.vars().contains(q) {
                return Err(format!("eigenvariable {q} occurs in transported terms"));
            }
            let rec = mono_rec(body, y, s, t, delta, side_pf)?;
            // delta, b_t => b_s ; add the quantified hypothesis
            let opened = all_l(xt.clone(), var(q), false, rec);
            Ok(all_r(q, opened))
        }
        Formula::Ex(q, body) => {
            let xt = chi.subst1(t, y).unwrap();
            let xs = chi.subst1(s, y).unwrap();
            for f in delta {
                if f.free_vars().contains(q) {
                    return Err(format!("eigenvariable {q} free in context"));
                }
            }
            if s.vars().contains(q) || t.vars().contains(q) {
                return Err(format!("eigenvariable {q} occurs in transported terms"));
            }
            let rec = mono_rec(body, y, s, t, delta, side_pf)?;
            let packed = ex_r(xs, var(q), rec);
            Ok(ex_l(xt, packed))
        }
        _ => Err(format!("cannot transport {y} in {chi}")),
    }
}

#[allow(clippy::too_many_arguments)]
fn mono_bounded(
    chi: &Formula,
    q: &str,
    guard: &Formula,
    psi: &Formula,
    r: &Term,
    y: &str,
    s: &Term,
    t: &Term,
    delta: &Ctx,
    side_pf: &ProofTree,
) -> Result<ProofTree, String> {
    // chi = all q. (q < r) -> psi, with y free in r only
    let xt = chi.subst1(t, y).unwrap();
    let guard_s = guard
        .subst1(s, y)
        .ok_or_else(|| format!("substitution [{s}/{y}] undefined on {guard}"))?;
    let guard_t = guard.subst1(t, y).unwrap();
    let r_s = r.subst1(s, y);
    let r_t = r.subst1(t, y);

    for f in delta {
        if f.free_vars().contains(q) {
            return Err(format!("eigenvariable {q} free in context"));
        }
    }
    if s.vars().contains(q) || t.vars().contains(q) {
        return Err(format!("eigenvariable {q} occurs in transported terms"));
    }

    // r_s <= r_t from s <= t
    let mut ctx1 = delta.clone();
    ctx1.insert(xt.clone());
    ctx1.insert(guard_s.clone());
    let le_rs_rt = syntax::le(r_s.clone(), r_t.clone());
    let side_in_ctx = wk(
        Sequent { ant: ctx1.clone(), suc: syntax::le(s.clone(), t.clone()) },
        side_pf.clone(),
    );
    let bound_le: ProofTree = if *r == var(y) {
        side_in_ctx
    } else if *r == succ(var(y).clone()) {
        let le_st = syntax::le(s.clone(), t.clone());
        let mut ctx2 = ctx1.clone();
        ctx2.insert(le_st.clone());
        let mono = succ_le_mono_for(&ctx2, &le_st, &le_rs_rt)?;
        cut(le_st, side_in_ctx, mono)
    } else {
        return Err(format!("unsupported bound shape {r} on {y}"));
    };

    // guard_t from guard_s and r_s <= r_t
    let mut ctx3 = ctx1.clone();
    ctx3.insert(le_rs_rt.clone());
    let trans = lt_le_trans_for(&ctx3, &guard_s, &le_rs_rt, &guard_t)?;
    let have_guard_t = cut(le_rs_rt, bound_le, trans);

    // psi via the instantiated hypothesis
    let mut ctx4 = ctx1.clone();
    ctx4.insert(guard_t.clone());
    let use_hyp = {
        let left = ax(ctx4.clone(), guard_t.clone());
        let right = ax(
            {
                let mut a = ctx4.clone();
                a.insert(psi.clone());
                a
            },
            psi.clone(),
        );
        let node = imp_l_on(guard_t.clone(), psi.clone(), left, right);
        // node: ctx4, guard_t -> psi => psi ; ctx4 keeps the hypothesis
        all_l(xt.clone(), var(q), true, node)
    };
    // use_hyp: delta, xt, guard_s, guard_t => psi
    let body_pf = cut(guard_t, have_guard_t, use_hyp);
    // body_pf: delta, xt, guard_s => psi
    let imp = imp_r_on(guard_s.clone(), body_pf);
    Ok(all_r(q, imp))
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
    fn plus_assoc_checks() {
        let pf = plus_assoc(&var("a"), &var("b"), &var("c"));
        assert_eq!(
            pf.conclusion.suc,
            eq(add(add(var("a"), var("b")), var("c")), add(var("a"), add(var("b"), var("c"))))
        );
        assert_ok(&pf);
    }

    #[test]
    fn plus_assoc_on_terms_checks() {
        let pf = plus_assoc(&succ(var("x")), &zero(), &mul(var("x"), var("y")));
        assert_ok(&pf);
    }

    #[test]
    fn succ_plus_checks() {
        let pf = succ_plus(&var("a"), &var("b"));
        assert_eq!(pf.conclusion.suc, eq(add(succ(var("a")), var("b")), succ(add(var("a"), var("b")))));
        assert_ok(&pf);
    }

    #[test]
    fn le_refl_and_le_succ_check() {
        let pf = le_refl_for(&le(var("x"), var("x"))).unwrap();
        assert_ok(&pf);
        let pf2 = le_succ_for(&le(var("x"), succ(var("x")))).unwrap();
        assert_ok(&pf2);
    }

    #[test]
    fn le_trans_checks() {
        let h1 = le(var("a"), var("b"));
        let h2 = le(var("b"), var("c"));
        let goal = le(var("a"), var("c"));
        let ctx: Ctx = [h1.clone(), h2.clone()].into_iter().collect();
        let pf = le_trans_for(&ctx, &h1, &h2, &goal).unwrap();
        assert_eq!(pf.conclusion.suc, goal);
        assert_ok(&pf);
    }

    #[test]
    fn lt_le_trans_checks() {
        let h1 = lt(var("a"), var("b"));
        let h2 = le(var("b"), var("c"));
        let goal = lt(var("a"), var("c"));
        let ctx: Ctx = [h1.clone(), h2.clone()].into_iter().collect();
        let pf = lt_le_trans_for(&ctx, &h1, &h2, &goal).unwrap();
        assert_ok(&pf);
    }

    #[test]
    fn lt_zero_absurd_checks() {
        let h = lt(var("a"), zero());
        let ctx: Ctx = [h.clone()].into_iter().collect();
        let pf = lt_zero_absurd_for(&ctx, &h, &eq(zero(), succ(zero()))).unwrap();
        assert_ok(&pf);
    }

    #[test]
    fn alpha_equiv_forall() {
        let from = all("x", eq(var("x"), var("u")));
        let to = all("y", eq(var("y"), var("u")));
        let pf = alpha_equiv_proof(&from, &to, &BTreeSet::new()).unwrap();
        assert_ok(&pf);
    }

    #[test]
    fn alpha_equiv_nested() {
        let from = ex("x", all("y", eq(var("x"), var("y"))));
        let to = ex("a", all("b", eq(var("a"), var("b"))));
        let pf = alpha_equiv_proof(&from, &to, &BTreeSet::new()).unwrap();
        assert_ok(&pf);
    }

    #[test]
    fn bound_mono_on_weak_bound() {
        // phi = all q <= y. q = q ; transport along x <= y
        let phi = ball("q", succ(var("y")), eq(var("q"), var("q")));
        let le_xy = le(var("x"), var("y"));
        let delta: Ctx = [le_xy.clone()].into_iter().collect();
        let side = ax([le_xy.clone()], le_xy.clone());
        let pf = bound_mono(&phi, "y", &var("x"), &var("y"), &delta, &side).unwrap();
        assert_eq!(pf.conclusion.suc, phi.subst1(&var("x"), "y").unwrap());
        assert_ok(&pf);
    }

    #[test]
    fn bound_mono_on_strict_bound() {
        // phi = all q < y. bot -> bot ; transport along x <= y
        let phi = ball("q", var("y"), top());
        let le_xy = le(var("x"), var("y"));
        let delta: Ctx = [le_xy.clone()].into_iter().collect();
        let side = ax([le_xy.clone()], le_xy.clone());
        let pf = bound_mono(&phi, "y", &var("x"), &var("y"), &delta, &side).unwrap();
        assert_ok(&pf);
    }

    #[test]
    fn bound_mono_successor_instance() {
        // the promotion direction: phi[S x / y] => phi[x / y] along x <= S x
        let phi = ball("q", succ(var("y")), eq(var("q"), zero()));
        let side = le_succ_for(&le(var("x"), succ(var("x")))).unwrap();
        let delta: Ctx = BTreeSet::new();
        let pf = bound_mono(&phi, "y", &var("x"), &succ(var("x")), &delta, &side).unwrap();
        assert_eq!(pf.conclusion.suc, phi.subst1(&var("x"), "y").unwrap());
        assert_ok(&pf);
    }

    #[test]
    fn bound_mono_through_connectives() {
        // nested: (all q <= y. q=q) /\ (ex w. all q < y. w = w)
        let part1 = ball("q", succ(var("y")), eq(var("q"), var("q")));
        let part2 = ex("w", ball("q", var("y"), eq(var("w"), var("w"))));
        let phi = and(part1, part2);
        let le_xy = le(var("x"), var("y"));
        let delta: Ctx = [le_xy.clone()].into_iter().collect();
        let side = ax([le_xy.clone()], le_xy.clone());
        let pf = bound_mono(&phi, "y", &var("x"), &var("y"), &delta, &side).unwrap();
        assert_ok(&pf);
    }
}
