//! Translation of stack-labelled derivations into inductive proofs.
//!
//! Each label stack determines an invariant formula; each subderivation
//! and depth determines an inductive hypothesis collecting the invariants
//! of the first `n` labels. The translation proves, by recursion over the
//! derivation, that the hypothesis together with the base antecedent
//! entails the base succedent; companions become a single induction on the
//! weakly bounded closure of the top invariant. Every proof produced here
//! is checked by the kernel; nothing is trusted.

use crate::aha_kernel::{AhaProof, AhaRule, LabelStack};
use crate::cha_kernel::PreProof;
use crate::cyclic_structure::NodePath;
use crate::ha_kernel::admissible::{bounded_all_l, bounded_all_r, case_split, strong_induction};
use crate::ha_kernel::build::*;
use crate::ha_kernel::lemmas::{bound_mono, destruct_exists, le_refl_for, le_succ_for};
use crate::ha_kernel::rename::{rename_proof, rename_proof_multi, FreshPool};
use crate::ha_kernel::{BaseRule, HaRule, ProofTree, Sequent};
use crate::syntax::{
    self, classify, pi_member, theta_arrow, ComplexityClass, Formula, Ident, Term,
};
use std::collections::{BTreeMap, BTreeSet};

// --- invariants -------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantPair {
    /// The unbounded core: universally closed over the other label
    /// variables (weakly bounded) and the残 free variables.
    pub hat: Formula,
    /// The bounded closure over the top label's variable: strict for a
    /// minus label, weak for a plus label.
    pub full: Formula,
}

/// The invariant of a non-empty stack.
pub fn invariant_of(stack: &LabelStack) -> Result<InvariantPair, String> {
    let top = stack.top().ok_or("invariant of an empty stack")?;
    let x = top.var.clone();
    let seq = top.seq.clone();

    let label_vars = stack.vars();
    let mut vs: Vec<Ident> = label_vars.iter().filter(|v| **v != x).cloned().collect();
    vs.sort();
    let seq_free = seq.free_vars();
    let mut ws: Vec<Ident> = seq_free
        .iter()
        .filter(|v| !label_vars.contains(*v) && **v != x)
        .cloned()
        .collect();
    ws.sort();

    let mut avoid: BTreeSet<Ident> = stack.all_names();
    avoid.extend(seq.all_names());
    let mut us = Vec::new();
    for _ in &vs {
        let u = syntax::fresh("iu", &avoid);
        avoid.insert(u.clone());
        us.push(u);
    }
    let xp = syntax::fresh("ix", &avoid);
    avoid.insert(xp.clone());

    let members = syntax::conj_members(seq.ant.iter());
    let core = syntax::imp(syntax::conj_list(&members), seq.suc.clone());
    let mut renaming = BTreeMap::new();
    for (v, u) in vs.iter().zip(&us) {
        renaming.insert(v.clone(), syntax::var(u));
    }
    let core = core
        .subst(&renaming)
        .ok_or("fresh variables captured in the invariant core")?;

    let mut hat = core;
    for w in ws.iter().rev() {
        hat = syntax::all(w, hat);
    }
    for (v, u) in vs.iter().zip(&us).rev() {
        hat = syntax::all(u, syntax::imp(syntax::le(syntax::var(u), syntax::var(v)), hat));
    }

    let body = hat
        .subst1(&syntax::var(&xp), &x)
        .ok_or("prefix variable captured in the invariant")?;
    let guard = if top.plus {
        syntax::le(syntax::var(&xp), syntax::var(&x))
    } else {
        syntax::lt(syntax::var(&xp), syntax::var(&x))
    };
    let full = syntax::all(&xp, syntax::imp(guard, body));
    Ok(InvariantPair { hat, full })
}

// --- hypotheses -------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypothesis {
    pub formula: Formula,
    pub depth: usize,
}

/// Shared state for hypothesis construction: deterministic fresh names for
/// every case node, a memo table, and the collected artifacts.
pub struct HypothesisCtx<'a> {
    proof: &'a AhaProof,
    case_fresh: BTreeMap<NodePath, (Ident, Ident)>,
    memo: BTreeMap<(NodePath, usize), Formula>,
}

impl<'a> HypothesisCtx<'a> {
    pub fn new(proof: &'a AhaProof) -> Self {
        let mut pool = FreshPool::new(proof.all_names());
        let mut case_fresh = BTreeMap::new();
        fn walk(
            node: &AhaProof,
            path: &mut NodePath,
            pool: &mut FreshPool,
            out: &mut BTreeMap<NodePath, (Ident, Ident)>,
        ) {
            if matches!(node.rule, AhaRule::Case { .. }) {
                let a = pool.fresh("hv");
                let b = pool.fresh("hv");
                out.insert(path.clone(), (a, b));
            }
            for (i, c) in node.children.iter().enumerate() {
                path.push(i);
                walk(c, path, pool, out);
                path.pop();
            }
        }
        walk(proof, &mut Vec::new(), &mut pool, &mut case_fresh);
        HypothesisCtx { proof, case_fresh, memo: BTreeMap::new() }
    }

    pub fn node(&self, path: &[usize]) -> &AhaProof {
        let mut n = self.proof;
        for &i in path {
            n = &n.children[i];
        }
        n
    }

    /// The inductive hypothesis for the first `n` labels along the
    /// subderivation at `path`.
    pub fn hypothesis(&mut self, path: &NodePath, n: usize) -> Result<Formula, String> {
        if let Some(f) = self.memo.get(&(path.clone(), n)) {
            return Ok(f.clone());
        }
        let node = self.node(path);
        if n > node.conclusion.stack.len() {
            return Err(format!(
                "hypothesis depth {n} exceeds stack length at {path:?}"
            ));
        }
        let result = if n == 0 {
            syntax::top()
        } else {
            match &node.rule {
                AhaRule::Bud => {
                    if node.conclusion.stack.len() == n {
                        invariant_of(&node.conclusion.stack)?.full
                    } else {
                        syntax::top()
                    }
                }
                AhaRule::Pop => {
                    let child_len = node.children[0].conclusion.stack.len();
                    let m = child_len.min(n);
                    let mut p = path.clone();
                    p.push(0);
                    self.hypothesis(&p, m)?
                }
                AhaRule::Case { var } => {
                    let var = var.clone();
                    let truncated_vars = node.conclusion.stack.truncate(n).vars();
                    let (xp, xpp) = self
                        .case_fresh
                        .get(path)
                        .cloned()
                        .ok_or("missing fresh pair for a case node")?;
                    let mut p0 = path.clone();
                    p0.push(0);
                    let mut ps = path.clone();
                    ps.push(1);
                    let h0 = self.hypothesis(&p0, n)?;
                    let hs = self.hypothesis(&ps, n)?;
                    if truncated_vars.contains(&var) {
                        let h0i = h0
                            .subst1(&syntax::var(&xp), &var)
                            .ok_or("case variable captured in the zero hypothesis")?;
                        let hsi = hs
                            .subst1(&syntax::var(&xpp), &var)
                            .ok_or("case variable captured in the successor hypothesis")?;
                        let left = syntax::and(
                            syntax::eq(syntax::var(&xp), syntax::zero()),
                            h0i,
                        );
                        let right = syntax::ex(
                            &xpp,
                            syntax::and(
                                syntax::eq(syntax::var(&xp), syntax::succ(syntax::var(&xpp))),
                                hsi,
                            ),
                        );
                        syntax::all(
                            &xp,
                            syntax::imp(
                                syntax::le(syntax::var(&xp), syntax::var(&var)),
                                syntax::or(left, right),
                            ),
                        )
                    } else {
                        syntax::and(h0, hs)
                    }
                }
                AhaRule::Comp => {
                    let mut p = path.clone();
                    p.push(0);
                    self.hypothesis(&p, n)?
                }
                AhaRule::Base(_) => match node.children.len() {
                    0 => syntax::top(),
                    1 => {
                        let mut p = path.clone();
                        p.push(0);
                        self.hypothesis(&p, n)?
                    }
                    2 => {
                        let mut pl = path.clone();
                        pl.push(0);
                        let mut pr = path.clone();
                        pr.push(1);
                        syntax::and(self.hypothesis(&pl, n)?, self.hypothesis(&pr, n)?)
                    }
                    k => return Err(format!("unexpected arity {k}")),
                },
            }
        };
        self.memo.insert((path.clone(), n), result.clone());
        Ok(result)
    }

    pub fn recorded(&self) -> impl Iterator<Item = (&(NodePath, usize), &Formula)> {
        self.memo.iter()
    }
}

/// The hypothesis for the first `n` labels of the endsequent's stack.
pub fn hypothesis(proof: &AhaProof, n: usize) -> Result<Hypothesis, String> {
    let mut ctx = HypothesisCtx::new(proof);
    let formula = ctx.hypothesis(&Vec::new(), n)?;
    Ok(Hypothesis { formula, depth: n })
}

// --- invariant lemmas --------------------------------------------------------

/// Proofs of the two transport lemmas for a stack invariant:
/// `I, x <= y => I[x/y]` and `I[Sx/x] => I^{+x}`.
pub fn prove_invariant_lemmas(
    stack: &LabelStack,
    x: &str,
    y: &str,
) -> Result<(ProofTree, ProofTree), String> {
    let ii = invariant_subst_lemma(stack, x, y)?;
    let iii = invariant_promotion_lemma(stack, x)?;
    Ok((ii, iii))
}

fn invariant_subst_lemma(stack: &LabelStack, x: &str, y: &str) -> Result<ProofTree, String> {
    let inv = invariant_of(stack)?.full;
    let le_xy = syntax::le(syntax::var(x), syntax::var(y));
    let delta: BTreeSet<Formula> = [le_xy.clone()].into_iter().collect();
    let side = ax([le_xy.clone()], le_xy);
    bound_mono(&inv, y, &syntax::var(x), &syntax::var(y), &delta, &side)
}

fn invariant_promotion_lemma(stack: &LabelStack, x: &str) -> Result<ProofTree, String> {
    let inv = invariant_of(stack)?.full;
    if !inv.free_vars().contains(x) {
        return Err(format!("{x} not free in the invariant"));
    }
    let promoted = invariant_of(&stack.promote(x))?.full;
    let lhs = inv
        .subst1(&syntax::succ(syntax::var(x)), x)
        .ok_or("successor instance of the invariant undefined")?;
    if lhs == promoted {
        // a minus top label on x: promotion is literally the successor
        // instance, since `<=` is `<` of the successor
        return Ok(ax([lhs], promoted));
    }
    if inv != promoted {
        return Err("promotion changed more than bound strengths".into());
    }
    let le_succ = syntax::le(syntax::var(x), syntax::succ(syntax::var(x)));
    let side = le_succ_for(&le_succ)?;
    bound_mono(&inv, x, &syntax::var(x), &syntax::succ(syntax::var(x)), &BTreeSet::new(), &side)
}

// --- hypothesis lemmas --------------------------------------------------------

/// Proofs of `H_n, x <= y => H_n[x/y]` and `H_n, I_{L|n+1} => H_{n+1}`.
pub fn prove_hypothesis_lemmas(
    proof: &AhaProof,
    n: usize,
    x: &str,
    y: &str,
) -> Result<(ProofTree, ProofTree), String> {
    let mut ctx = HypothesisCtx::new(proof);
    let h = ctx.hypothesis(&Vec::new(), n)?;
    let le_xy = syntax::le(syntax::var(x), syntax::var(y));
    let delta: BTreeSet<Formula> = [le_xy.clone()].into_iter().collect();
    let side = ax([le_xy.clone()], le_xy);
    let ii = bound_mono(&h, y, &syntax::var(x), &syntax::var(y), &delta, &side)?;
    let iii = hypothesis_step_lemma(&mut ctx, &Vec::new(), n)?;
    Ok((ii, iii))
}

/// `H_n(node), I_{stack|n+1} => H_{n+1}(node)`, for `n <` stack length.
fn hypothesis_step_lemma(
    ctx: &mut HypothesisCtx,
    path: &NodePath,
    n: usize,
) -> Result<ProofTree, String> {
    let node = ctx.node(path);
    let stack = node.conclusion.stack.clone();
    if n >= stack.len() {
        return Err(format!("step lemma needs n < stack length at {path:?}"));
    }
    let rule = node.rule.clone();
    let hn = ctx.hypothesis(path, n)?;
    let hn1 = ctx.hypothesis(path, n + 1)?;
    let inv = invariant_of(&stack.truncate(n + 1))?.full;
    let goal = Sequent::new([hn.clone(), inv.clone()], hn1.clone());

    // degenerate closures first
    if hn == hn1 {
        return Ok(wk(goal, ax([hn], hn1)));
    }
    if hn1 == syntax::top() {
        return Ok(wk(goal.clone(), pf_top(goal.ant.iter().cloned())));
    }
    if inv == hn1 {
        return Ok(wk(goal, ax([inv], hn1)));
    }

    match rule {
        AhaRule::Bud => Err(format!("unexpected bud shape in step lemma at {path:?}")),
        AhaRule::Pop | AhaRule::Comp => {
            let mut p = path.clone();
            p.push(0);
            let sub = hypothesis_step_lemma(ctx, &p, n)?;
            Ok(wk(goal, sub))
        }
        AhaRule::Base(b) => match node_arity(ctx, path) {
            1 => {
                let _ = b;
                let mut p = path.clone();
                p.push(0);
                let sub = hypothesis_step_lemma(ctx, &p, n)?;
                Ok(wk(goal, sub))
            }
            2 => binary_step_lemma(ctx, path, n, &goal),
            _ => Err(format!("unexpected shape in step lemma at {path:?}")),
        },
        AhaRule::Case { var } => {
            let n1_vars = stack.truncate(n + 1).vars();
            let n_vars = stack.truncate(n).vars();
            if !n1_vars.contains(&var) {
                binary_step_lemma(ctx, path, n, &goal)
            } else if n_vars.contains(&var) {
                case_step_lemma_inner(ctx, path, n, &var, &goal)
            } else {
                case_step_lemma_boundary(ctx, path, n, &var, &goal)
            }
        }
    }
}

fn node_arity(ctx: &HypothesisCtx, path: &NodePath) -> usize {
    ctx.node(path).children.len()
}

/// Conjunction combination for binary rules.
fn binary_step_lemma(
    ctx: &mut HypothesisCtx,
    path: &NodePath,
    n: usize,
    goal: &Sequent,
) -> Result<ProofTree, String> {
    let mut pl = path.clone();
    pl.push(0);
    let mut pr = path.clone();
    pr.push(1);
    let a = ctx.hypothesis(&pl, n)?;
    let b = ctx.hypothesis(&pr, n)?;
    let sub_l = hypothesis_step_lemma(ctx, &pl, n)?;
    let sub_r = hypothesis_step_lemma(ctx, &pr, n)?;
    let inv_l = sub_l.conclusion.ant.iter().find(|f| **f != a).cloned();
    let _ = inv_l;
    // sub_l: {A, I_l} => A' ; sub_r: {B, I_r} => B'
    // for case nodes outside the variable's scope the invariants coincide
    let pa = wk_extend([b.clone()], sub_l);
    let pb = wk_extend([a.clone()], sub_r);
    let pa = wk(
        {
            let mut s = pa.conclusion.clone();
            s.ant.extend(pb.conclusion.ant.iter().cloned());
            s
        },
        pa,
    );
    let pb = wk(
        {
            let mut s = pa.conclusion.clone();
            s.suc = pb.conclusion.suc.clone();
            s
        },
        pb,
    );
    let joined = and_r(pa, pb);
    let hn = ctx.hypothesis(path, n)?;
    let folded = if hn == syntax::and(a.clone(), b.clone()) {
        and_l(a, b, joined)
    } else {
        joined
    };
    Ok(wk(goal.clone(), folded))
}

/// Case node whose variable already carries a label within the first `n`
/// entries: both hypotheses have the bounded shape.
fn case_step_lemma_inner(
    ctx: &mut HypothesisCtx,
    path: &NodePath,
    n: usize,
    var: &str,
    goal: &Sequent,
) -> Result<ProofTree, String> {
    let (yp, ypp) = ctx.case_fresh.get(path).cloned().ok_or("missing fresh pair")?;
    let node = ctx.node(path);
    let stack = node.conclusion.stack.clone();
    let inv = invariant_of(&stack.truncate(n + 1))?.full;
    let inv_plus = invariant_of(&stack.truncate(n + 1).promote(var))?.full;

    let mut p0 = path.clone();
    p0.push(0);
    let mut ps = path.clone();
    ps.push(1);
    let h0 = ctx.hypothesis(&p0, n)?;
    let hs = ctx.hypothesis(&ps, n)?;
    let h0n1 = ctx.hypothesis(&p0, n + 1)?;
    let hsn1 = ctx.hypothesis(&ps, n + 1)?;

    let subst1 = |f: &Formula, t: &Term| -> Result<Formula, String> {
        f.subst1(t, var).ok_or_else(|| format!("substitution undefined on {f}"))
    };
    let yp_t = syntax::var(&yp);
    let ypp_t = syntax::var(&ypp);

    let psi0 = syntax::and(syntax::eq(yp_t.clone(), syntax::zero()), subst1(&h0, &yp_t)?);
    let psis = syntax::ex(
        &ypp,
        syntax::and(
            syntax::eq(yp_t.clone(), syntax::succ(ypp_t.clone())),
            subst1(&hs, &ypp_t)?,
        ),
    );
    let big_l = syntax::and(syntax::eq(yp_t.clone(), syntax::zero()), subst1(&h0n1, &yp_t)?);
    let big_r = syntax::ex(
        &ypp,
        syntax::and(
            syntax::eq(yp_t.clone(), syntax::succ(ypp_t.clone())),
            subst1(&hsn1, &ypp_t)?,
        ),
    );
    let lr = syntax::or(big_l.clone(), big_r.clone());
    let inv_yp = subst1(&inv, &yp_t)?;

    // left piece: psi0, I[y'/y] => L \/ R
    let left_piece = {
        let ih0 = hypothesis_step_lemma(ctx, &p0, n)?;
        let ih0r = rename_proof(&ih0, &yp_t, var)?;
        // {h0[y'], inv[y']} => h0n1[y']
        let eq0 = syntax::eq(yp_t.clone(), syntax::zero());
        let with_eq = wk_extend([eq0.clone()], ih0r);
        let conj = and_r(
            wk(
                {
                    let mut s = with_eq.conclusion.clone();
                    s.suc = eq0.clone();
                    s
                },
                ax(with_eq.conclusion.ant.iter().cloned(), eq0.clone()),
            ),
            with_eq.clone(),
        );
        let disj = or_r(crate::ha_kernel::Side::Left, big_r.clone(), conj);
        and_l(eq0, subst1(&h0, &yp_t)?, disj)
    };

    // right piece: psis, I[y'/y] => L \/ R
    let right_piece = {
        let ihs = hypothesis_step_lemma(ctx, &ps, n)?;
        let ihs_r = rename_proof(&ihs, &ypp_t, var)?;
        // {hs[y''], inv_plus[y'']} => hsn1[y'']
        let promo = invariant_promotion_lemma(&stack.truncate(n + 1), var)?;
        let promo_r = rename_proof(&promo, &ypp_t, var)?;
        // {inv[S y''/y]} => inv_plus[y''/y]
        let inv_succ_ypp = subst1(&inv, &syntax::succ(ypp_t.clone()))?;
        let inv_plus_ypp = subst1(&inv_plus, &ypp_t)?;
        let hs_ypp = subst1(&hs, &ypp_t)?;
        let hsn1_ypp = subst1(&hsn1, &ypp_t)?;
        let eq_s = syntax::eq(yp_t.clone(), syntax::succ(ypp_t.clone()));

        let combined = {
            let chained = cut(
                inv_plus_ypp.clone(),
                wk_extend([hs_ypp.clone()], promo_r),
                wk_extend([inv_succ_ypp.clone()], ihs_r),
            );
            // {hs[y''], inv[Sy''/y]} => hsn1[y'']
            chained
        };

        // inside the existential: {y'=Sy'', hs[y''], inv[y'/y]} => L \/ R
        let ctx2: BTreeSet<Formula> =
            [eq_s.clone(), hs_ypp.clone(), inv_yp.clone()].into_iter().collect();
        // replacement: derive inv[Sy''/y] from inv[y'/y] and y' = S y''
        let derive_inv = {
            let mut names: BTreeSet<Ident> = ctx2.iter().flat_map(|f| f.all_names()).collect();
            names.extend(inv_succ_ypp.all_names());
            let (hs_hole, ht_hole) = two_fresh(&names);
            let hole = syntax::var(&hs_hole);
            let inv_hole = subst1(&inv, &hole)?;
            let merged = {
                let mut ant: BTreeSet<Formula> = ctx2.clone();
                ant.remove(&inv_yp);
                ant.insert(inv_hole.clone());
                ax(ant, inv_hole)
            };
            eq_l(
                yp_t.clone(),
                syntax::succ(ypp_t.clone()),
                &hs_hole,
                &ht_hole,
                Sequent { ant: ctx2.clone(), suc: inv_succ_ypp.clone() },
                merged,
            )
        };
        let have_hsn1 = cut(
            inv_succ_ypp,
            derive_inv,
            wk(
                {
                    let mut ant = ctx2.clone();
                    ant.insert(subst1(&inv, &syntax::succ(ypp_t.clone()))?);
                    Sequent { ant, suc: hsn1_ypp.clone() }
                },
                combined,
            ),
        );
        // package the right disjunct
        let pair = and_r(
            ax(ctx2.iter().cloned(), eq_s.clone()),
            have_hsn1,
        );
        let packed = ex_r(big_r.clone(), ypp_t.clone(), pair);
        let disj = or_r(crate::ha_kernel::Side::Right, big_l.clone(), packed);
        let folded = and_l(eq_s, hs_ypp, disj);
        // eliminate the existential
        let outer_ctx: BTreeSet<Formula> = [psis.clone(), inv_yp.clone()].into_iter().collect();
        destruct_exists(&outer_ctx, &psis, &ypp, &lr, |_| Ok(folded))?
    };

    // or-elimination and requantification
    let left_aligned = wk(
        {
            let mut ant: BTreeSet<Formula> = [psi0.clone(), inv_yp.clone()].into_iter().collect();
            Sequent { ant: { ant.insert(psi0.clone()); ant }, suc: lr.clone() }
        },
        left_piece,
    );
    let or_elim = or_l(psi0, psis, left_aligned, right_piece);

    // {hn-body-or, inv, y'<=y} => L \/ R via transport of the invariant
    let guard = syntax::le(yp_t.clone(), syntax::var(var));
    let mono = bound_mono(
        &inv,
        var,
        &yp_t,
        &syntax::var(var),
        &[guard.clone()].into_iter().collect(),
        &ax([guard.clone()], guard.clone()),
    )?;
    let with_guard = {
        let mut target = or_elim.conclusion.clone();
        target.ant.remove(&inv_yp);
        target.ant.insert(inv.clone());
        target.ant.insert(guard.clone());
        let or_elim2 = wk(
            {
                let mut s = target.clone();
                s.ant.insert(inv_yp.clone());
                s
            },
            or_elim,
        );
        cut(
            inv_yp.clone(),
            wk(Sequent { ant: target.ant.clone(), suc: inv_yp.clone() }, mono),
            or_elim2,
        )
    };

    let hn = ctx.hypothesis(path, n)?;
    let opened = bounded_all_l(&hn, &yp_t, &guard, with_guard)?;
    let hn1 = ctx.hypothesis(path, n + 1)?;
    let closed = bounded_all_r(&hn1, opened)?;
    Ok(wk(goal.clone(), closed))
}

/// Case node whose variable gains its label exactly at position `n + 1`.
fn case_step_lemma_boundary(
    ctx: &mut HypothesisCtx,
    path: &NodePath,
    n: usize,
    var: &str,
    goal: &Sequent,
) -> Result<ProofTree, String> {
    let (yp, ypp) = ctx.case_fresh.get(path).cloned().ok_or("missing fresh pair")?;
    let _ = ypp;
    let node = ctx.node(path);
    let stack = node.conclusion.stack.clone();
    let inv = invariant_of(&stack.truncate(n + 1))?.full;
    let inv_plus = invariant_of(&stack.truncate(n + 1).promote(var))?.full;

    let mut p0 = path.clone();
    p0.push(0);
    let mut ps = path.clone();
    ps.push(1);
    let a = ctx.hypothesis(&p0, n)?;
    let a1 = ctx.hypothesis(&p0, n + 1)?;
    let bs = ctx.hypothesis(&ps, n)?;
    let bs1 = ctx.hypothesis(&ps, n + 1)?;
    if a != a1 {
        return Err("zero branch hypothesis changed across the boundary".into());
    }
    if a.free_vars().contains(var) || bs.free_vars().contains(var) {
        return Err("case variable leaks into a boundary hypothesis".into());
    }

    let yp_t = syntax::var(&yp);
    let subst1 = |f: &Formula, t: &Term| -> Result<Formula, String> {
        f.subst1(t, var).ok_or_else(|| format!("substitution undefined on {f}"))
    };
    let big_l = syntax::and(syntax::eq(yp_t.clone(), syntax::zero()), subst1(&a1, &yp_t)?);
    let big_r = {
        let (_, xpp) = ctx.case_fresh.get(path).cloned().unwrap();
        syntax::ex(
            &xpp,
            syntax::and(
                syntax::eq(yp_t.clone(), syntax::succ(syntax::var(&xpp))),
                subst1(&bs1, &syntax::var(&xpp))?,
            ),
        )
    };
    let lr = syntax::or(big_l.clone(), big_r.clone());
    let inv_yp = subst1(&inv, &yp_t)?;

    // core sequent, case-analysed on y'
    let core_goal = Sequent::new([a.clone(), bs.clone(), inv_yp.clone()], lr.clone());

    // zero premise of the case split
    let zero_goal = core_goal
        .subst1(&syntax::zero(), &yp)
        .ok_or("zero instance undefined")?;
    let zero_pf = {
        let conj = and_r(
            eq_r(zero_goal.ant.iter().cloned(), syntax::zero()),
            ax(zero_goal.ant.iter().cloned(), a1.clone()),
        );
        // L[0/y'] \/ R[0/y']
        let l0 = big_l.subst1(&syntax::zero(), &yp).ok_or("undefined")?;
        let r0 = big_r.subst1(&syntax::zero(), &yp).ok_or("undefined")?;
        debug_assert_eq!(zero_goal.suc, syntax::or(l0.clone(), r0.clone()));
        let _ = l0;
        wk(zero_goal.clone(), or_r(crate::ha_kernel::Side::Left, r0, conj))
    };

    // successor premise
    let succ_goal = core_goal
        .subst1(&syntax::succ(yp_t.clone()), &yp)
        .ok_or("successor instance undefined")?;
    let succ_pf = {
        let ihs = hypothesis_step_lemma(ctx, &ps, n)?;
        // {bs, inv_plus} => bs1
        let ihs_r = rename_proof(&ihs, &yp_t, var)?;
        let promo = invariant_promotion_lemma(&stack.truncate(n + 1), var)?;
        let promo_r = rename_proof(&promo, &yp_t, var)?;
        let inv_succ = subst1(&inv, &syntax::succ(yp_t.clone()))?;
        let inv_plus_yp = subst1(&inv_plus, &yp_t)?;
        let chained = cut(
            inv_plus_yp,
            wk_extend([bs.clone()], promo_r),
            wk_extend([inv_succ.clone()], ihs_r),
        );
        // {bs, inv[Sy'/y]} => bs1[y'/y]
        let ls = big_l.subst1(&syntax::succ(yp_t.clone()), &yp).ok_or("undefined")?;
        let rs = big_r.subst1(&syntax::succ(yp_t.clone()), &yp).ok_or("undefined")?;
        debug_assert_eq!(succ_goal.suc, syntax::or(ls.clone(), rs.clone()));
        let with_a = wk(
            {
                let mut s = chained.conclusion.clone();
                s.ant.insert(a.clone());
                s
            },
            chained,
        );
        let pair = and_r(
            eq_r(with_a.conclusion.ant.iter().cloned(), syntax::succ(yp_t.clone())),
            with_a,
        );
        let packed = ex_r(rs, yp_t.clone(), pair);
        wk(succ_goal.clone(), or_r(crate::ha_kernel::Side::Right, ls, packed))
    };

    let cased = case_split(&core_goal, &yp, zero_pf, succ_pf)?;

    // transport the invariant and requantify
    let guard = syntax::le(yp_t.clone(), syntax::var(var));
    let mono = bound_mono(
        &inv,
        var,
        &yp_t,
        &syntax::var(var),
        &[guard.clone()].into_iter().collect(),
        &ax([guard.clone()], guard.clone()),
    )?;
    let target_ant: BTreeSet<Formula> =
        [a.clone(), bs.clone(), inv.clone(), guard.clone()].into_iter().collect();
    let with_guard = cut(
        inv_yp.clone(),
        wk(Sequent { ant: target_ant.clone(), suc: inv_yp.clone() }, mono),
        wk(
            {
                let mut s = Sequent { ant: target_ant.clone(), suc: lr.clone() };
                s.ant.insert(inv_yp.clone());
                s
            },
            cased,
        ),
    );
    let hn1 = ctx.hypothesis(path, n + 1)?;
    let closed = bounded_all_r(&hn1, with_guard)?;
    // fold the conjunction when the hypothesis is a real conjunction
    let hn = ctx.hypothesis(path, n)?;
    let folded = if hn == syntax::and(a.clone(), bs.clone()) {
        and_l(a, bs, closed)
    } else {
        closed
    };
    Ok(wk(goal.clone(), folded))
}

// --- the main translation -----------------------------------------------------

pub struct FinitizeTrace {
    /// Every hypothesis computed: path, depth, formula and the label
    /// variables of the corresponding stack prefix.
    pub hypotheses: Vec<(NodePath, usize, Formula, BTreeSet<Ident>)>,
    pub lemma_proofs: Vec<ProofTree>,
}

struct Finitizer<'a> {
    ctx: HypothesisCtx<'a>,
    lemma_proofs: Vec<ProofTree>,
}

impl<'a> Finitizer<'a> {
    /// Proof of `H_{|stack|}(node), base-antecedent => base-succedent`.
    fn translate(&mut self, path: &NodePath) -> Result<ProofTree, String> {
        let node = self.ctx.node(path);
        let base = node.conclusion.base.clone();
        let stack = node.conclusion.stack.clone();
        let n = stack.len();
        let rule = node.rule.clone();
        let h = self.ctx.hypothesis(path, n)?;
        let goal = {
            let mut ant = base.ant.clone();
            ant.insert(h.clone());
            Sequent { ant, suc: base.suc.clone() }
        };

        let result = match rule {
            AhaRule::Bud => {
                // the hypothesis is the invariant; unpack it at the
                // sequent's own variables
                let chain = apply_invariant_chain(&h, &base)?;
                wk(goal.clone(), chain)
            }
            AhaRule::Pop => {
                let mut p = path.clone();
                p.push(0);
                let sub = self.translate(&p)?;
                wk(goal.clone(), sub)
            }
            AhaRule::Comp => self.translate_comp(path, &goal)?,
            AhaRule::Case { var } => self.translate_case(path, &var, &goal)?,
            AhaRule::Base(b) => self.translate_base(path, &b, &goal)?,
        };
        debug_assert_eq!(result.conclusion, goal);
        Ok(result)
    }

    fn translate_comp(&mut self, path: &NodePath, goal: &Sequent) -> Result<ProofTree, String> {
        let node = self.ctx.node(path);
        let base = node.conclusion.base.clone();
        let n = node.conclusion.stack.len();
        let child_stack = node.children[0].conclusion.stack.clone();
        let top_var = child_stack.top().ok_or("companion without a label")?.var.clone();
        let inv_pair = invariant_of(&child_stack)?;
        let inv = inv_pair.full.clone();
        let hat = inv_pair.hat.clone();

        let mut p = path.clone();
        p.push(0);
        let hn = self.ctx.hypothesis(path, n)?;
        let hn1 = self.ctx.hypothesis(&p, n + 1)?;

        // (iii): hn, inv => hn1
        let step = hypothesis_step_lemma(&mut self.ctx, &p, n)?;
        self.lemma_proofs.push(step.clone());

        // inner translation: hn1, base => suc
        let inner = self.translate(&p)?;

        // (1) hn1 => hat
        let hat_piece = prove_hat(&self.ctx, &hn1, &child_stack, &inner)?;

        // (2) one induction: hn => all top_var. hat
        let premise = cut(
            hn1.clone(),
            step,
            wk(
                {
                    let mut ant: BTreeSet<Formula> =
                        [hn.clone(), inv.clone(), hn1.clone()].into_iter().collect();
                    Sequent { ant: std::mem::take(&mut ant), suc: hat.clone() }
                },
                hat_piece,
            ),
        );
        // premise: {hn, inv} => hat , and inv is the induction hypothesis
        let prefix_var = match &inv {
            Formula::All(v, _) => v.clone(),
            _ => return Err("invariant lost its shape".into()),
        };
        let ind = strong_induction(&hat, &top_var, &prefix_var, premise)?;
        let all_hat = ind.conclusion.suc.clone();

        // (3) use: all top_var. hat, base => suc
        let use_piece = {
            let mut ant = base.ant.clone();
            ant.insert(all_hat.clone());
            let inner_use = apply_hat_chain(
                &hat,
                &ant,
                &base,
                hat_quantifier_shape(&self.ctx, &child_stack)?,
            )?;
            all_l(all_hat.clone(), syntax::var(&top_var), true, inner_use)
        };

        let left = wk(Sequent { ant: goal.ant.clone(), suc: all_hat.clone() }, ind);
        let right = wk(
            {
                let mut s = goal.clone();
                s.ant.insert(all_hat.clone());
                s
            },
            use_piece,
        );
        Ok(wk(goal.clone(), cut(all_hat, left, right)))
    }

    fn translate_case(&mut self, path: &NodePath, var: &str, goal: &Sequent) -> Result<ProofTree, String> {
        let node = self.ctx.node(path);
        let base = node.conclusion.base.clone();
        let stack = node.conclusion.stack.clone();
        let n = stack.len();
        let mut p0 = path.clone();
        p0.push(0);
        let mut ps = path.clone();
        ps.push(1);
        let a = self.ctx.hypothesis(&p0, n)?;
        let bs = self.ctx.hypothesis(&ps, n)?;
        let hn = self.ctx.hypothesis(path, n)?;

        if !stack.vars().contains(var) {
            // plain case split on the conjunction of the hypotheses
            let f0 = self.translate(&p0)?;
            let fs = self.translate(&ps)?;
            let conclusion = goal.clone();
            let inst0 = conclusion.subst1(&syntax::zero(), var).ok_or("zero instance undefined")?;
            let inst_s = conclusion
                .subst1(&syntax::succ(syntax::var(var)), var)
                .ok_or("successor instance undefined")?;
            let fold = |f: ProofTree, other: &Formula, inst: &Sequent| -> ProofTree {
                let grown = wk_extend([other.clone()], f);
                let folded = if hn == syntax::and(a.clone(), bs.clone()) {
                    and_l(a.clone(), bs.clone(), grown)
                } else {
                    grown
                };
                wk(inst.clone(), folded)
            };
            let p0f = fold(f0, &bs, &inst0);
            let psf = fold(fs, &a, &inst_s);
            return case_split(&conclusion, var, p0f, psf);
        }

        // the variable carries a label: the hypothesis is bounded
        let (xp, xpp) = self.ctx.case_fresh.get(path).cloned().ok_or("missing fresh pair")?;
        let xp_t = syntax::var(&xp);
        let xpp_t = syntax::var(&xpp);
        let subst1 = |f: &Formula, t: &Term| -> Result<Formula, String> {
            f.subst1(t, var).ok_or_else(|| format!("substitution undefined on {f}"))
        };
        if a.free_vars().contains(var) {
            return Err("case variable free in the zero-branch hypothesis".into());
        }

        let f0 = self.translate(&p0)?;
        let fs = self.translate(&ps)?;

        let d1 = syntax::and(syntax::eq(syntax::var(var), syntax::zero()), a.clone());
        let d2 = syntax::ex(
            &xpp,
            syntax::and(
                syntax::eq(syntax::var(var), syntax::succ(xpp_t.clone())),
                subst1(&bs, &xpp_t)?,
            ),
        );
        let rest = base.ant.clone();

        // left branch: var = 0
        let left = {
            let sub_goal = {
                let mut ant = rest.clone();
                ant.insert(a.clone());
                Sequent { ant, suc: base.suc.clone() }
            };
            let inst = sub_goal.subst1(&syntax::zero(), var).ok_or("zero instance undefined")?;
            let by_eq = eq_subst_left(var, syntax::zero(), sub_goal, wk(inst, f0));
            and_l(
                syntax::eq(syntax::var(var), syntax::zero()),
                a.clone(),
                wk(
                    {
                        let mut ant = rest.clone();
                        ant.insert(syntax::eq(syntax::var(var), syntax::zero()));
                        ant.insert(a.clone());
                        Sequent { ant, suc: base.suc.clone() }
                    },
                    by_eq,
                ),
            )
        };

        // right branch: var = S x''
        let right = {
            let mut outer = rest.clone();
            outer.insert(d2.clone());
            destruct_exists(&outer, &d2, &xpp, &base.suc, |_| {
                let bs_i = subst1(&bs, &xpp_t)?;
                let sub_goal = {
                    let mut ant = rest.clone();
                    ant.insert(bs_i.clone());
                    Sequent { ant, suc: base.suc.clone() }
                };
                let inst = sub_goal
                    .subst1(&syntax::succ(xpp_t.clone()), var)
                    .ok_or("successor instance undefined")?;
                let renamed = rename_proof(&fs, &xpp_t, var)?;
                let by_eq =
                    eq_subst_left(var, syntax::succ(xpp_t.clone()), sub_goal, wk(inst, renamed));
                let eq_f = syntax::eq(syntax::var(var), syntax::succ(xpp_t.clone()));
                Ok(and_l(
                    eq_f.clone(),
                    bs_i.clone(),
                    wk(
                        {
                            let mut ant = rest.clone();
                            ant.insert(eq_f);
                            ant.insert(bs_i);
                            Sequent { ant, suc: base.suc.clone() }
                        },
                        by_eq,
                    ),
                ))
            })?
        };

        let or_elim = or_l(d1.clone(), d2.clone(), left, right);
        // instantiate the bounded hypothesis at the variable itself
        let guard_inst = syntax::le(syntax::var(var), syntax::var(var));
        // hn = all x' <= var. (d1' \/ d2') with holes at x'
        let body_inst = syntax::or(d1, d2);
        let refl = wk(
            {
                let mut ant = rest.clone();
                ant.insert(hn.clone());
                Sequent { ant, suc: guard_inst.clone() }
            },
            le_refl_for(&guard_inst)?,
        );
        let use_imp = imp_l_on(
            guard_inst.clone(),
            body_inst.clone(),
            refl,
            wk(
                {
                    let mut ant = rest.clone();
                    ant.insert(hn.clone());
                    ant.insert(body_inst.clone());
                    Sequent { ant, suc: base.suc.clone() }
                },
                or_elim,
            ),
        );
        let opened = all_l(hn.clone(), syntax::var(var), true, use_imp);
        let _ = xp_t;
        Ok(wk(goal.clone(), opened))
    }

    fn translate_base(
        &mut self,
        path: &NodePath,
        rule: &BaseRule,
        goal: &Sequent,
    ) -> Result<ProofTree, String> {
        let node = self.ctx.node(path);
        let base = node.conclusion.base.clone();
        let n = node.conclusion.stack.len();
        let h = self.ctx.hypothesis(path, n)?;

        use BaseRule::*;
        let built = match rule {
            Ax => ax(goal.ant.iter().cloned(), goal.suc.clone()),
            BotL => bot_l(goal.ant.iter().cloned(), goal.suc.clone()),
            EqR => eq_r(goal.ant.iter().cloned(), match &goal.suc {
                Formula::Eq(a, b) if a == b => a.clone(),
                other => return Err(format!("reflexivity succedent expected, got {other}")),
            }),
            Arith(axiom) => wk(goal.clone(), arith(axiom.clone())),
            Wk => {
                let mut p = path.clone();
                p.push(0);
                wk(goal.clone(), self.translate(&p)?)
            }
            ImpR => {
                let (a, _) = match &base.suc {
                    Formula::Imp(a, b) => (a.as_ref().clone(), b.as_ref().clone()),
                    other => return Err(format!("implication expected, got {other}")),
                };
                let mut p = path.clone();
                p.push(0);
                imp_r_on(a, self.translate(&p)?)
            }
            AndL { principal } => {
                let (a, b) = match principal {
                    Formula::And(a, b) => (a.as_ref().clone(), b.as_ref().clone()),
                    _ => return Err("conjunction expected".into()),
                };
                let mut p = path.clone();
                p.push(0);
                and_l(a, b, self.translate(&p)?)
            }
            OrR { side } => {
                let (a, b) = match &base.suc {
                    Formula::Or(a, b) => (a.as_ref().clone(), b.as_ref().clone()),
                    _ => return Err("disjunction expected".into()),
                };
                let other = match side {
                    crate::ha_kernel::Side::Left => b,
                    crate::ha_kernel::Side::Right => a,
                };
                let mut p = path.clone();
                p.push(0);
                or_r(*side, other, self.translate(&p)?)
            }
            AllR => {
                let x = match &base.suc {
                    Formula::All(x, _) => x.clone(),
                    _ => return Err("universal succedent expected".into()),
                };
                let mut p = path.clone();
                p.push(0);
                all_r(&x, self.translate(&p)?)
            }
            AllL { principal, witness, keep } => {
                let mut p = path.clone();
                p.push(0);
                all_l(principal.clone(), witness.clone(), *keep, self.translate(&p)?)
            }
            ExL { principal } => {
                let mut p = path.clone();
                p.push(0);
                ex_l(principal.clone(), self.translate(&p)?)
            }
            ExR { witness } => {
                let mut p = path.clone();
                p.push(0);
                ex_r(base.suc.clone(), witness.clone(), self.translate(&p)?)
            }
            EqL { s, t, x, y } => {
                if h.free_vars().contains(x) || h.free_vars().contains(y) {
                    return Err(format!(
                        "replacement holes {x}, {y} collide with the hypothesis"
                    ));
                }
                let mut p = path.clone();
                p.push(0);
                let sub = self.translate(&p)?;
                ProofTree {
                    rule: HaRule::Base(EqL {
                        s: s.clone(),
                        t: t.clone(),
                        x: x.clone(),
                        y: y.clone(),
                    }),
                    conclusion: goal.clone(),
                    children: vec![sub],
                }
            }
            ImpL { principal } => {
                let (fa, fb) = match principal {
                    Formula::Imp(a, b) => (a.as_ref().clone(), b.as_ref().clone()),
                    _ => return Err("implication expected".into()),
                };
                let (l, r) = self.binary_children(path)?;
                imp_l_on(fa, fb, l, r)
            }
            AndR => {
                let (l, r) = self.binary_children(path)?;
                and_r(l, r)
            }
            OrL { principal } => {
                let (fa, fb) = match principal {
                    Formula::Or(a, b) => (a.as_ref().clone(), b.as_ref().clone()),
                    _ => return Err("disjunction expected".into()),
                };
                let (l, r) = self.binary_children(path)?;
                or_l(fa, fb, l, r)
            }
            Cut { formula } => {
                let (l, r) = self.binary_children(path)?;
                cut(formula.clone(), l, r)
            }
        };
        Ok(wk(goal.clone(), built))
    }

    /// Translates both children of a binary node and folds their
    /// hypotheses into the parent's conjunction.
    fn binary_children(&mut self, path: &NodePath) -> Result<(ProofTree, ProofTree), String> {
        let n = self.ctx.node(path).conclusion.stack.len();
        let mut pl = path.clone();
        pl.push(0);
        let mut pr = path.clone();
        pr.push(1);
        let a = self.ctx.hypothesis(&pl, n)?;
        let b = self.ctx.hypothesis(&pr, n)?;
        let h = self.ctx.hypothesis(path, n)?;
        let fold = |f: ProofTree, other: &Formula| -> ProofTree {
            let grown = wk_extend([other.clone()], f);
            if h == syntax::and(a.clone(), b.clone()) {
                and_l(a.clone(), b.clone(), grown)
            } else {
                grown
            }
        };
        let l = self.translate(&pl)?;
        let r = self.translate(&pr)?;
        Ok((fold(l, &b), fold(r, &a)))
    }
}

/// Number of bounded and plain quantifiers the invariant core carries.
fn hat_quantifier_shape(_ctx: &HypothesisCtx, stack: &LabelStack) -> Result<(usize, usize), String> {
    let top = stack.top().ok_or("empty stack")?;
    let label_vars = stack.vars();
    let bounded = label_vars.iter().filter(|v| **v != top.var).count();
    let plain = top
        .seq
        .free_vars()
        .iter()
        .filter(|v| !label_vars.contains(*v) && **v != top.var)
        .count();
    Ok((bounded, plain))
}

/// Unpacks the hypothesis-invariant of a bud: instantiates the bounded
/// prefix reflexively and discharges the core against the base sequent.
fn apply_invariant_chain(inv: &Formula, base: &Sequent) -> Result<ProofTree, String> {
    // inv = all x' <= x. hat[x'/x]; one extra bounded layer on top of hat
    let mut ant = base.ant.clone();
    ant.insert(inv.clone());
    apply_chain(inv, &ant, base, usize::MAX)
}

/// Unpacks `all top. hat` for the companion case.
fn apply_hat_chain(
    hat: &Formula,
    ant: &BTreeSet<Formula>,
    base: &Sequent,
    _shape: (usize, usize),
) -> Result<ProofTree, String> {
    let mut ant2 = ant.clone();
    ant2.insert(hat.clone());
    apply_chain(hat, &ant2, base, usize::MAX)
}

/// Instantiates a prefix of bounded and plain universal quantifiers at
/// their own bound variables and closes the final implication against the
/// context.
fn apply_chain(
    f: &Formula,
    ant: &BTreeSet<Formula>,
    base: &Sequent,
    fuel: usize,
) -> Result<ProofTree, String> {
    if fuel == 0 {
        return Err("invariant unpacking exceeded its fuel".into());
    }
    // final core: conj -> suc
    if let Formula::Imp(conj, target) = f {
        if **target == base.suc {
            let members = conj_members_of(conj);
            let rest_ant: BTreeSet<Formula> = ant.iter().filter(|g| *g != f).cloned().collect();
            if members.iter().all(|m| rest_ant.contains(m)) {
                let left = build_conj_members(&rest_ant, &members);
                let left = wk(Sequent { ant: rest_ant.clone(), suc: (**conj).clone() }, left);
                let right = ax(
                    {
                        let mut a = rest_ant.clone();
                        a.insert(base.suc.clone());
                        a
                    },
                    base.suc.clone(),
                );
                let node = imp_l_on((**conj).clone(), base.suc.clone(), left, right);
                return Ok(wk(
                    {
                        let mut a = ant.clone();
                        a.insert(f.clone());
                        Sequent { ant: a, suc: base.suc.clone() }
                    },
                    node,
                ));
            }
        }
    }
    if let Some((u, bound, _rest)) = syntax::as_bounded_all(f) {
        // instantiate at the bound's base, which must be a successor
        let Term::Succ(v) = bound else {
            return Err(format!("strict bound in an invariant prefix: {f}"));
        };
        let u = u.clone();
        let v = v.as_ref().clone();
        let body = match f {
            Formula::All(_, body) => body.as_ref().clone(),
            _ => unreachable!(),
        };
        let inst = body
            .subst1(&v, &u)
            .ok_or("reflexive instantiation undefined")?;
        let (guard_i, rest_i) = match &inst {
            Formula::Imp(g, r) => ((**g).clone(), (**r).clone()),
            _ => return Err("bounded prefix lost its shape".into()),
        };
        let mut ant2 = ant.clone();
        ant2.insert(rest_i.clone());
        let inner = apply_chain(&rest_i, &ant2, base, fuel - 1)?;
        let refl = wk(
            Sequent { ant: ant.clone(), suc: guard_i.clone() },
            le_refl_for(&guard_i)?,
        );
        let node = imp_l_on(guard_i, rest_i, refl, inner);
        let opened = all_l(f.clone(), v, true, node);
        return Ok(wk(
            {
                let mut a = ant.clone();
                a.insert(f.clone());
                Sequent { ant: a, suc: base.suc.clone() }
            },
            opened,
        ));
    }
    if let Formula::All(w, body) = f {
        let inst = body
            .subst1(&syntax::var(w), w)
            .ok_or("identity instantiation undefined")?;
        let mut ant2 = ant.clone();
        ant2.insert(inst.clone());
        let inner = apply_chain(&inst, &ant2, base, fuel - 1)?;
        let opened = all_l(f.clone(), syntax::var(w), true, inner);
        return Ok(wk(
            {
                let mut a = ant.clone();
                a.insert(f.clone());
                Sequent { ant: a, suc: base.suc.clone() }
            },
            opened,
        ));
    }
    Err(format!("cannot unpack invariant shape {f}"))
}

fn conj_members_of(conj: &Formula) -> Vec<Formula> {
    if *conj == syntax::top() {
        return Vec::new();
    }
    fn walk(f: &Formula, out: &mut Vec<Formula>) {
        if let Formula::And(a, b) = f {
            out.push((**a).clone());
            walk(b, out);
        } else {
            out.push(f.clone());
        }
    }
    let mut out = Vec::new();
    walk(conj, &mut out);
    out
}

/// `(1)`: the hypothesis of the extended stack entails the unbounded core
/// of its invariant.
fn prove_hat(
    ctx: &HypothesisCtx,
    hn1: &Formula,
    stack: &LabelStack,
    inner: &ProofTree,
) -> Result<ProofTree, String> {
    let _ = ctx;
    let pair = invariant_of(stack)?;
    let top = stack.top().unwrap();
    let label_vars = stack.vars();
    let mut vs: Vec<Ident> = label_vars.iter().filter(|v| **v != top.var).cloned().collect();
    vs.sort();
    // recover the u-names from the hat prefix
    let mut us = Vec::new();
    let mut cursor = &pair.hat;
    for _ in &vs {
        match syntax::as_bounded_all(cursor) {
            Some((u, _, _)) => {
                us.push(u.clone());
                cursor = match cursor {
                    Formula::All(_, body) => match body.as_ref() {
                        Formula::Imp(_, rest) => rest,
                        _ => return Err("invariant prefix lost its shape".into()),
                    },
                    _ => unreachable!(),
                };
            }
            None => return Err("invariant prefix lost its shape".into()),
        }
    }
    let mut ws = Vec::new();
    loop {
        match cursor {
            Formula::All(w, body) => {
                ws.push(w.clone());
                cursor = body;
            }
            _ => break,
        }
    }

    // rename the inner proof along u/v and transport the hypothesis back
    let renaming: BTreeMap<Ident, Term> =
        vs.iter().zip(&us).map(|(v, u)| (v.clone(), syntax::var(u))).collect();
    let renamed = rename_proof_multi(inner, &renaming)?;
    let hn1_sub = hn1
        .subst(&renaming)
        .ok_or("fresh variables captured in the hypothesis")?;

    let guards: Vec<Formula> = vs
        .iter()
        .zip(&us)
        .map(|(v, u)| syntax::le(syntax::var(u), syntax::var(v)))
        .collect();
    let mut big_ctx: BTreeSet<Formula> = guards.iter().cloned().collect();
    big_ctx.insert(hn1.clone());

    // hn1, guards => hn1[u/v] by iterated transport
    let mut have = ax(big_ctx.iter().cloned(), hn1.clone());
    let mut current = hn1.clone();
    for (v, u) in vs.iter().zip(&us) {
        let next = current
            .subst1(&syntax::var(u), v)
            .ok_or("transport substitution undefined")?;
        if next == current {
            continue;
        }
        let guard = syntax::le(syntax::var(u), syntax::var(v));
        let mono = bound_mono(
            &current,
            v,
            &syntax::var(u),
            &syntax::var(v),
            &[guard.clone()].into_iter().collect(),
            &ax([guard.clone()], guard.clone()),
        )?;
        let mono = wk(
            {
                let mut a = big_ctx.clone();
                a.insert(current.clone());
                Sequent { ant: a, suc: next.clone() }
            },
            mono,
        );
        have = cut(current.clone(), have, mono);
        current = next;
    }
    debug_assert_eq!(current, hn1_sub);

    // combine with the renamed inner proof
    let inner_base = renamed.conclusion.clone();
    let mut renamed_rest = inner_base.ant.clone();
    renamed_rest.remove(&hn1_sub);
    let mut full_ctx = big_ctx.clone();
    full_ctx.extend(renamed_rest.iter().cloned());
    let have = wk(
        Sequent { ant: full_ctx.clone(), suc: hn1_sub.clone() },
        have,
    );
    let renamed = wk(
        {
            let mut a = full_ctx.clone();
            a.insert(hn1_sub.clone());
            Sequent { ant: a, suc: inner_base.suc.clone() }
        },
        renamed,
    );
    let mut core_pf = cut(hn1_sub, have, renamed);

    // introduce the implication over the antecedent conjunction
    let label_members: Vec<Formula> = syntax::conj_members(top.seq.ant.iter())
        .into_iter()
        .map(|m| m.subst(&renaming).expect("renaming undefined"))
        .collect();
    core_pf = conj_intro_in_context(&label_members, core_pf)?;
    let conj_img = syntax::conj_list(&label_members);
    core_pf = imp_r_on(conj_img, core_pf);

    // close the plain universals, then the bounded prefix
    for w in ws.iter().rev() {
        core_pf = all_r(w, core_pf);
    }
    for (v, u) in vs.iter().zip(&us).rev() {
        let guard = syntax::le(syntax::var(u), syntax::var(v));
        core_pf = all_r(u, imp_r_on(guard, core_pf));
    }
    Ok(core_pf)
}

/// Folds the listed members (all present in the antecedent) into their
/// conjunction, leaving the rest of the context untouched.
fn conj_intro_in_context(members: &[Formula], premise: ProofTree) -> Result<ProofTree, String> {
    if members.is_empty() {
        return Ok(wk_extend([syntax::top()], premise));
    }
    Ok(crate::ha_kernel::build::conj_intro(members, premise))
}

/// Translates a checked stack-labelled derivation into an inductive proof
/// of its base endsequent.
pub fn finitize(proof: &AhaProof) -> Result<ProofTree, String> {
    finitize_with_trace(proof).map(|(p, _)| p)
}

pub fn finitize_with_trace(proof: &AhaProof) -> Result<(ProofTree, FinitizeTrace), String> {
    let report = crate::aha_kernel::check_aha(proof);
    if !report.is_ok() {
        return Err(format!("input fails to check: {report}"));
    }
    if !proof.conclusion.stack.is_empty() {
        return Err("endsequent carries a non-empty stack".into());
    }
    let ctx = HypothesisCtx::new(proof);
    let mut fin = Finitizer { ctx, lemma_proofs: Vec::new() };
    let body = fin.translate(&Vec::new())?;
    // discharge the trivial hypothesis
    let base = proof.conclusion.base.clone();
    let top_f = syntax::top();
    let discharged = if body.conclusion.ant.contains(&top_f) && !base.ant.contains(&top_f) {
        cut_fact(pf_top([]), top_f, body)
    } else {
        body
    };
    let out = wk(base.clone(), discharged);
    if out.conclusion != base {
        return Err("translation changed the endsequent".into());
    }

    let trace = FinitizeTrace {
        hypotheses: fin
            .ctx
            .recorded()
            .map(|((path, n), f)| {
                let stack = fin.ctx.node(path).conclusion.stack.truncate(*n);
                (path.clone(), *n, f.clone(), stack.vars())
            })
            .collect(),
        lemma_proofs: fin.lemma_proofs,
    };
    Ok((out, trace))
}

// --- complexity audit ----------------------------------------------------------

#[derive(Debug, Clone)]
pub struct InductionAudit {
    pub formula: Formula,
    pub class: ComplexityClass,
    pub delta0: bool,
    pub in_closure: bool,
}

#[derive(Debug, Clone)]
pub struct AuditReport {
    pub theta: ComplexityClass,
    pub cyclic_class_ok: bool,
    pub cyclic_violations: Vec<(NodePath, Formula)>,
    pub inductions: Vec<InductionAudit>,
}

impl AuditReport {
    pub fn inductions_ok(&self) -> bool {
        self.inductions.iter().all(|i| i.delta0 || i.in_closure)
    }

    pub fn ok(&self) -> bool {
        self.cyclic_class_ok && self.inductions_ok()
    }
}

impl std::fmt::Display for AuditReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "audit against {}", self.theta)?;
        writeln!(
            f,
            "  cycle sequents within class: {}",
            if self.cyclic_class_ok { "yes" } else { "NO" }
        )?;
        for (path, formula) in &self.cyclic_violations {
            writeln!(f, "    violation at {path:?}: {formula}")?;
        }
        writeln!(f, "  inductions used: {}", self.inductions.len())?;
        for i in &self.inductions {
            writeln!(
                f,
                "    [{}] {} ({})",
                if i.delta0 {
                    "delta0"
                } else if i.in_closure {
                    "closure"
                } else {
                    "FAIL"
                },
                i.formula,
                i.class
            )?;
        }
        Ok(())
    }
}

/// Audits a translation: the input's bud and companion sequents must lie
/// within `theta`; every induction of the output must be quantifier-free
/// (Delta0) or fall into the universal closure of implications over
/// `theta`.
pub fn audit_complexity(
    input: &PreProof,
    output: &ProofTree,
    theta: ComplexityClass,
) -> AuditReport {
    let mut cyclic_violations = Vec::new();
    let shape = input.shape();
    let mut special: BTreeSet<NodePath> = shape.buds().into_iter().collect();
    special.extend(shape.beta.values().cloned());
    for node in special {
        if let Some(seq) = input.sequent(&node) {
            for f in seq.ant.iter().chain(std::iter::once(&seq.suc)) {
                if !classify(f).within(&theta) {
                    cyclic_violations.push((node.clone(), f.clone()));
                }
            }
        }
    }
    let in_theta = move |f: &Formula| classify(f).within(&theta);
    let arrow = theta_arrow(&in_theta);
    let inductions = output
        .induction_formulas()
        .into_iter()
        .map(|formula| {
            let class = classify(&formula);
            InductionAudit {
                delta0: class == ComplexityClass::Delta0,
                in_closure: pi_member(&formula, &arrow),
                class,
                formula,
            }
        })
        .collect();
    AuditReport {
        theta,
        cyclic_class_ok: cyclic_violations.is_empty(),
        cyclic_violations,
        inductions,
    }
}
