//! Shared corpus for the integration and acceptance suites: hand-written
//! inductive proofs exercising the induction axioms, and direct cyclic
//! proofs at known complexity levels.

#![allow(dead_code)]

use cyclarith::cha_kernel::{ChaRule, PreNode, PreProof};
use cyclarith::cyclic_structure::NodePath;
use cyclarith::ha_kernel::admissible::case_split;
use cyclarith::ha_kernel::build::*;
use cyclarith::ha_kernel::lemmas::{induction_from, le_refl_for};
use cyclarith::ha_kernel::{ArithAxiom, BaseRule, HaRule, ProofTree, Sequent, Side};
use cyclarith::syntax::*;
use std::collections::{BTreeMap, BTreeSet};

type Ctx = BTreeSet<Formula>;

fn no_ctx() -> Ctx {
    BTreeSet::new()
}

fn arith_in(ctx: &Ctx, axiom: ArithAxiom) -> ProofTree {
    let seq = axiom.sequent();
    wk(Sequent { ant: ctx.clone(), suc: seq.suc.clone() }, arith(axiom))
}

fn hyp(ctx: &Ctx, f: &Formula) -> ProofTree {
    ax(ctx.iter().cloned(), f.clone())
}

/// `=> all x. 0 + x = x` by one quantifier-free induction.
pub fn thm_zero_plus() -> ProofTree {
    let v = "v";
    let phi = eq(add(zero(), var(v)), var(v));
    let base = arith_in(&no_ctx(), ArithAxiom::AddZero(zero()));
    let step = {
        let ctx: Ctx = [phi.clone()].into_iter().collect();
        let p1 = arith_in(&ctx, ArithAxiom::AddSucc(zero(), var(v)));
        let p2 = eq_cong(&succ(var("hole")), "hole", hyp(&ctx, &phi));
        all_r(v, imp_r_on(phi.clone(), eq_trans(p1, p2)))
    };
    all_r("x", induction_from(&no_ctx(), phi, v, var("x"), base, step))
}

/// `=> all x. all y. S x + y = S (x + y)`.
pub fn thm_succ_plus() -> ProofTree {
    let pf = cyclarith::ha_kernel::lemmas::succ_plus(&var("x"), &var("y"));
    all_r("x", all_r("y", pf))
}

/// `=> all x. all y. x + y = y + x`: one quantified induction plus the
/// quantifier-free helpers.
pub fn thm_add_comm() -> ProofTree {
    let v = "v";
    // phi(v) := all y. v + y = y + v
    let phi = all("y", eq(add(var(v), var("y")), add(var("y"), var(v))));

    // base: all y. 0 + y = y + 0
    let base = {
        let zp = induction_from(
            &no_ctx(),
            eq(add(zero(), var("u")), var("u")),
            "u",
            var("y"),
            arith_in(&no_ctx(), ArithAxiom::AddZero(zero())),
            {
                let ih = eq(add(zero(), var("u")), var("u"));
                let ctx: Ctx = [ih.clone()].into_iter().collect();
                let p1 = arith_in(&ctx, ArithAxiom::AddSucc(zero(), var("u")));
                let p2 = eq_cong(&succ(var("hole")), "hole", hyp(&ctx, &ih));
                all_r("u", imp_r_on(ih, eq_trans(p1, p2)))
            },
        );
        // 0 + y = y = y + 0
        let right = eq_sym(arith_in(&no_ctx(), ArithAxiom::AddZero(var("y"))));
        all_r("y", eq_trans(zp, right))
    };

    // step: all v. (phi(v) -> phi(S v))
    let step = {
        let ctx: Ctx = [phi.clone()].into_iter().collect();
        // S v + y = S (v + y) = S (y + v) = y + S v
        let p1 = {
            let sp = cyclarith::ha_kernel::lemmas::succ_plus(&var(v), &var("y"));
            wk(Sequent { ant: ctx.clone(), suc: sp.conclusion.suc.clone() }, sp)
        };
        let ih_inst = eq(add(var(v), var("y")), add(var("y"), var(v)));
        let p2 = eq_cong(&succ(var("hole")), "hole", hyp(
            &{
                let mut c = ctx.clone();
                c.insert(ih_inst.clone());
                c
            },
            &ih_inst,
        ));
        let p3 = eq_sym(arith_in(
            &{
                let mut c = ctx.clone();
                c.insert(ih_inst.clone());
                c
            },
            ArithAxiom::AddSucc(var("y"), var(v)),
        ));
        let chain = eq_trans(eq_trans(wk_extend([ih_inst.clone()], p1), p2), p3);
        let opened = all_l(phi.clone(), var("y"), true, chain);
        all_r(v, imp_r_on(phi.clone(), all_r("y", opened)))
    };

    all_r("x", induction_from(&no_ctx(), phi, v, var("x"), base, step))
}

/// `=> all x. 0 * x = 0`.
pub fn thm_mul_zero_left() -> ProofTree {
    let v = "v";
    let phi = eq(mul(zero(), var(v)), zero());
    let base = arith_in(&no_ctx(), ArithAxiom::MulZero(zero()));
    let step = {
        let ctx: Ctx = [phi.clone()].into_iter().collect();
        // 0 * S v = 0 * v + 0 = 0 * v = 0
        let p1 = arith_in(&ctx, ArithAxiom::MulSucc(zero(), var(v)));
        let p2 = arith_in(&ctx, ArithAxiom::AddZero(mul(zero(), var(v))));
        let p3 = hyp(&ctx, &phi);
        all_r(v, imp_r_on(phi.clone(), eq_trans(eq_trans(p1, p2), p3)))
    };
    all_r("x", induction_from(&no_ctx(), phi, v, var("x"), base, step))
}

/// `=> all x. x * S 0 = x`.
pub fn thm_mul_one() -> ProofTree {
    // x * S0 = x * 0 + x = 0 + x = x
    let p1 = arith_in(&no_ctx(), ArithAxiom::MulSucc(var("x"), zero()));
    let p2 = eq_cong(
        &add(var("hole"), var("x")),
        "hole",
        arith_in(&no_ctx(), ArithAxiom::MulZero(var("x"))),
    );
    let p3 = induction_from(
        &no_ctx(),
        eq(add(zero(), var("u")), var("u")),
        "u",
        var("x"),
        arith_in(&no_ctx(), ArithAxiom::AddZero(zero())),
        {
            let ih = eq(add(zero(), var("u")), var("u"));
            let ctx: Ctx = [ih.clone()].into_iter().collect();
            let q1 = arith_in(&ctx, ArithAxiom::AddSucc(zero(), var("u")));
            let q2 = eq_cong(&succ(var("hole")), "hole", hyp(&ctx, &ih));
            all_r("u", imp_r_on(ih, eq_trans(q1, q2)))
        },
    );
    all_r("x", eq_trans(eq_trans(p1, p2), p3))
}

/// `=> all x. x = x`, no induction.
pub fn thm_refl() -> ProofTree {
    all_r("x", eq_r([], var("x")))
}

/// `=> all x. x < S x`, no induction.
pub fn thm_lt_succ() -> ProofTree {
    all_r("x", le_refl_for(&lt(var("x"), succ(var("x")))).unwrap())
}

/// `=> all x. 0 <= x`; the witness needs one induction instantiated at a
/// compound term.
pub fn thm_zero_le() -> ProofTree {
    // 0 <= x is ex z. S x = 0 + S z ; witness x with S x = 0 + S x
    let goal = le(zero(), var("x"));
    let zp_at_sx = induction_from(
        &no_ctx(),
        eq(add(zero(), var("u")), var("u")),
        "u",
        succ(var("x")),
        arith_in(&no_ctx(), ArithAxiom::AddZero(zero())),
        {
            let ih = eq(add(zero(), var("u")), var("u"));
            let ctx: Ctx = [ih.clone()].into_iter().collect();
            let q1 = arith_in(&ctx, ArithAxiom::AddSucc(zero(), var("u")));
            let q2 = eq_cong(&succ(var("hole")), "hole", hyp(&ctx, &ih));
            all_r("u", imp_r_on(ih, eq_trans(q1, q2)))
        },
    );
    // S x = 0 + S x
    let witness_eq = eq_sym(zp_at_sx);
    all_r("x", ex_r(goal, var("x"), witness_eq))
}

/// `=> all x. x + 0 = x`, no induction.
pub fn thm_add_zero() -> ProofTree {
    all_r("x", arith_in(&no_ctx(), ArithAxiom::AddZero(var("x"))))
}

/// `=> all x. x = 0 -> x = 0`, propositional.
pub fn thm_imp_refl() -> ProofTree {
    let f = eq(var("x"), zero());
    all_r("x", imp_r_on(f.clone(), ax([f.clone()], f)))
}

/// `=> all x. x = 0 \/ ex y. x = S y` via the case-split macro, which
/// introduces one quantifier-free induction.
pub fn thm_zero_or_succ() -> ProofTree {
    let disj = or(eq(var("x"), zero()), ex("y", eq(var("x"), succ(var("y")))));
    let conclusion = Sequent::new([], disj.clone());
    let zero_pf = {
        let d = disj.subst1(&zero(), "x").unwrap();
        let Formula::Or(_, r) = &d else { unreachable!() };
        wk(
            Sequent::new([], d.clone()),
            or_r(Side::Left, (**r).clone(), eq_r([], zero())),
        )
    };
    let succ_pf = {
        let d = disj.subst1(&succ(var("x")), "x").unwrap();
        let Formula::Or(l, r) = &d else { unreachable!() };
        let inner = eq_r([], succ(var("x")));
        let packed = ex_r((**r).clone(), var("x"), inner);
        wk(Sequent::new([], d.clone()), or_r(Side::Right, (**l).clone(), packed))
    };
    all_r("x", case_split(&conclusion, "x", zero_pf, succ_pf).unwrap())
}

/// `=> all x. (x=0 /\ 0=x) -> (0=x /\ x=0)`, propositional shuffling.
pub fn thm_conj_swap() -> ProofTree {
    let a = eq(var("x"), zero());
    let b = eq(zero(), var("x"));
    let conj_in = and(a.clone(), b.clone());
    let ctx: Ctx = [a.clone(), b.clone()].into_iter().collect();
    let body = and_r(hyp(&ctx, &b), hyp(&ctx, &a));
    all_r("x", imp_r_on(conj_in, and_l(a, b, body)))
}

/// `=> all x. S x + x = S (x + x)`: a helper induction instantiated at a
/// repeated variable.
pub fn thm_succ_plus_diag() -> ProofTree {
    let pf = cyclarith::ha_kernel::lemmas::succ_plus(&var("x"), &var("x"));
    all_r("x", pf)
}

/// The whole inductive corpus.
pub fn ha_corpus() -> Vec<(&'static str, ProofTree)> {
    vec![
        ("zero-plus", thm_zero_plus()),
        ("succ-plus", thm_succ_plus()),
        ("add-comm", thm_add_comm()),
        ("mul-zero-left", thm_mul_zero_left()),
        ("mul-one", thm_mul_one()),
        ("refl", thm_refl()),
        ("lt-succ", thm_lt_succ()),
        ("zero-le", thm_zero_le()),
        ("add-zero", thm_add_zero()),
        ("imp-refl", thm_imp_refl()),
        ("zero-or-succ", thm_zero_or_succ()),
        ("conj-swap", thm_conj_swap()),
        ("succ-plus-diag", thm_succ_plus_diag()),
    ]
}

// --- direct cyclic proofs ------------------------------------------------

/// Copies an induction-free proof tree into a pre-proof at `at`.
fn graft(nodes: &mut BTreeMap<NodePath, PreNode>, at: NodePath, pf: &ProofTree) {
    let rule = match &pf.rule {
        HaRule::Base(b) => ChaRule::Base(b.clone()),
        HaRule::Ind { .. } => panic!("cannot graft an induction axiom"),
    };
    nodes.insert(at.clone(), PreNode::Rule { rule, seq: pf.conclusion.clone() });
    for (i, c) in pf.children.iter().enumerate() {
        let mut p = at.clone();
        p.push(i);
        graft(nodes, p, c);
    }
}

/// A cyclic proof of `=> all x. 0 + x = x` whose cycle sequents are all
/// quantifier-free.
pub fn cyclic_zero_plus() -> PreProof {
    let base = Sequent::new([], eq(add(zero(), var("x")), var("x")));
    let succ_seq = base.subst1(&succ(var("x")), "x").unwrap();
    let mut nodes = BTreeMap::new();
    nodes.insert(
        vec![],
        PreNode::Rule {
            rule: ChaRule::Base(BaseRule::AllR),
            seq: Sequent::new([], all("x", base.suc.clone())),
        },
    );
    nodes.insert(
        vec![0],
        PreNode::Rule { rule: ChaRule::Case { var: "x".into() }, seq: base.clone() },
    );
    nodes.insert(
        vec![0, 0],
        PreNode::Rule {
            rule: ChaRule::Base(BaseRule::Arith(ArithAxiom::AddZero(zero()))),
            seq: base.subst1(&zero(), "x").unwrap(),
        },
    );
    nodes.insert(
        vec![0, 1],
        PreNode::Rule {
            rule: ChaRule::Base(BaseRule::Cut { formula: base.suc.clone() }),
            seq: succ_seq.clone(),
        },
    );
    nodes.insert(vec![0, 1, 0], PreNode::Bud { companion: vec![0] });
    // { 0+x=x } => 0+Sx = Sx
    let inner = {
        let ih = base.suc.clone();
        let ctx: Ctx = [ih.clone()].into_iter().collect();
        let p1 = arith_in(&ctx, ArithAxiom::AddSucc(zero(), var("x")));
        let p2 = eq_cong(&succ(var("hole")), "hole", hyp(&ctx, &ih));
        eq_trans(p1, p2)
    };
    graft(&mut nodes, vec![0, 1, 1], &inner);
    PreProof { nodes }
}

/// A cyclic proof of `=> all x. all y. (0*x) + y = y` whose outer cycle
/// sequents are universally quantified (Pi1) and whose inner cycle proves
/// the quantifier-free addition lemma.
pub fn cyclic_mul_zero_pi1() -> PreProof {
    let fx = all("y", eq(add(mul(zero(), var("x")), var("y")), var("y")));
    let companion_a = Sequent::new([], fx.clone());
    let mut nodes = BTreeMap::new();
    nodes.insert(
        vec![],
        PreNode::Rule {
            rule: ChaRule::Base(BaseRule::AllR),
            seq: Sequent::new([], all("x", fx.clone())),
        },
    );
    nodes.insert(
        vec![0],
        PreNode::Rule { rule: ChaRule::Case { var: "x".into() }, seq: companion_a.clone() },
    );

    // zero premise: => all y. (0*0)+y = y
    let f0 = fx.subst1(&zero(), "x").unwrap();
    let zp = all("y", eq(add(zero(), var("y")), var("y")));
    nodes.insert(
        vec![0, 0],
        PreNode::Rule {
            rule: ChaRule::Base(BaseRule::Cut { formula: eq(mul(zero(), zero()), zero()) }),
            seq: Sequent::new([], f0.clone()),
        },
    );
    nodes.insert(
        vec![0, 0, 0],
        PreNode::Rule {
            rule: ChaRule::Base(BaseRule::Arith(ArithAxiom::MulZero(zero()))),
            seq: ArithAxiom::MulZero(zero()).sequent(),
        },
    );
    let mze = eq(mul(zero(), zero()), zero());
    nodes.insert(
        vec![0, 0, 1],
        PreNode::Rule {
            rule: ChaRule::Base(BaseRule::Cut { formula: zp.clone() }),
            seq: Sequent::new([mze.clone()], f0.clone()),
        },
    );
    // inner cyclic lemma: => all y. 0+y = y, weakened under the context
    nodes.insert(
        vec![0, 0, 1, 0],
        PreNode::Rule {
            rule: ChaRule::Base(BaseRule::Wk),
            seq: Sequent::new([mze.clone()], zp.clone()),
        },
    );
    let zp_base = Sequent::new([], eq(add(zero(), var("y")), var("y")));
    nodes.insert(
        vec![0, 0, 1, 0, 0],
        PreNode::Rule { rule: ChaRule::Base(BaseRule::AllR), seq: Sequent::new([], zp.clone()) },
    );
    nodes.insert(
        vec![0, 0, 1, 0, 0, 0],
        PreNode::Rule { rule: ChaRule::Case { var: "y".into() }, seq: zp_base.clone() },
    );
    nodes.insert(
        vec![0, 0, 1, 0, 0, 0, 0],
        PreNode::Rule {
            rule: ChaRule::Base(BaseRule::Arith(ArithAxiom::AddZero(zero()))),
            seq: zp_base.subst1(&zero(), "y").unwrap(),
        },
    );
    nodes.insert(
        vec![0, 0, 1, 0, 0, 0, 1],
        PreNode::Rule {
            rule: ChaRule::Base(BaseRule::Cut { formula: zp_base.suc.clone() }),
            seq: zp_base.subst1(&succ(var("y")), "y").unwrap(),
        },
    );
    nodes.insert(vec![0, 0, 1, 0, 0, 0, 1, 0], PreNode::Bud { companion: vec![0, 0, 1, 0, 0, 0] });
    let inner_zp = {
        let ih = zp_base.suc.clone();
        let ctx: Ctx = [ih.clone()].into_iter().collect();
        let p1 = arith_in(&ctx, ArithAxiom::AddSucc(zero(), var("y")));
        let p2 = eq_cong(&succ(var("hole")), "hole", hyp(&ctx, &ih));
        eq_trans(p1, p2)
    };
    graft(&mut nodes, vec![0, 0, 1, 0, 0, 0, 1, 1], &inner_zp);
    // replacement: { 0*0 = 0, all y. 0+y=y } => all y. (0*0)+y = y
    {
        let ctx: Ctx = [mze.clone(), zp.clone()].into_iter().collect();
        let conclusion = Sequent { ant: ctx, suc: f0.clone() };
        let hole_fml = all("y", eq(add(var("mh"), var("y")), var("y")));
        let merged = ax([hole_fml.clone()], hole_fml.clone());
        let node = eq_l(mul(zero(), zero()), zero(), "mh", "mh_t", conclusion, merged);
        graft_node(&mut nodes, vec![0, 0, 1, 1], &node);
    }

    // successor premise: => all y. (0*Sx)+y = y
    let fsx = fx.subst1(&succ(var("x")), "x").unwrap();
    nodes.insert(
        vec![0, 1],
        PreNode::Rule {
            rule: ChaRule::Base(BaseRule::Cut { formula: fx.clone() }),
            seq: Sequent::new([], fsx.clone()),
        },
    );
    nodes.insert(vec![0, 1, 0], PreNode::Bud { companion: vec![0] });
    {
        // { all y.(0*x)+y=y } => all y.(0*Sx)+y=y via 0*Sx = 0*x
        let ctx: Ctx = [fx.clone()].into_iter().collect();
        let ms = eq(mul(zero(), succ(var("x"))), mul(zero(), var("x")));
        // 0*Sx = 0*x + 0 = 0*x
        let p1 = arith_in(&ctx, ArithAxiom::MulSucc(zero(), var("x")));
        let p2 = arith_in(&ctx, ArithAxiom::AddZero(mul(zero(), var("x"))));
        let ms_pf = eq_trans(p1, p2);
        let conclusion = Sequent::new([fx.clone(), ms.clone()], fsx.clone());
        let hole_fml = all("y", eq(add(var("mh"), var("y")), var("y")));
        let merged = ax([hole_fml.clone()], hole_fml.clone());
        let node = eq_l(
            mul(zero(), succ(var("x"))),
            mul(zero(), var("x")),
            "mh",
            "mh_t",
            conclusion,
            merged,
        );
        let with_cut = cut(ms, ms_pf, node);
        graft_node(&mut nodes, vec![0, 1, 1], &with_cut);
    }
    PreProof { nodes }
}

fn graft_node(nodes: &mut BTreeMap<NodePath, PreNode>, at: NodePath, pf: &ProofTree) {
    graft(nodes, at, pf)
}

/// Two properly nested cycles over quantifier-free sequents: the outer
/// cycle cases `y` at the root, the inner cases `x`, and the inner cycle
/// re-cases `y` before both buds close.
pub fn cyclic_nested() -> PreProof {
    let xx = eq(var("x"), var("x"));
    let yy = eq(var("y"), var("y"));
    let zz = eq(zero(), zero());
    let sx = eq(succ(var("x")), succ(var("x")));
    let sy = eq(succ(var("y")), succ(var("y")));
    let ssy = eq(succ(succ(var("y"))), succ(succ(var("y"))));
    let s0 = eq(succ(zero()), succ(zero()));

    let seq = |ant: Vec<Formula>, suc: Formula| Sequent::new(ant, suc);
    let mut nodes = BTreeMap::new();
    let b_seq = seq(vec![xx.clone(), yy.clone()], zz.clone());
    nodes.insert(vec![], PreNode::Rule { rule: ChaRule::Case { var: "y".into() }, seq: b_seq.clone() });
    nodes.insert(
        vec![0],
        PreNode::Rule {
            rule: ChaRule::Base(BaseRule::Ax),
            seq: seq(vec![xx.clone(), zz.clone()], zz.clone()),
        },
    );
    nodes.insert(
        vec![1],
        PreNode::Rule {
            rule: ChaRule::Base(BaseRule::Cut { formula: yy.clone() }),
            seq: seq(vec![xx.clone(), sy.clone()], zz.clone()),
        },
    );
    nodes.insert(
        vec![1, 0],
        PreNode::Rule {
            rule: ChaRule::Base(BaseRule::EqR),
            seq: seq(vec![xx.clone(), sy.clone()], yy.clone()),
        },
    );
    let a_seq = seq(vec![xx.clone(), sy.clone(), yy.clone()], zz.clone());
    nodes.insert(vec![1, 1], PreNode::Rule { rule: ChaRule::Case { var: "x".into() }, seq: a_seq.clone() });
    nodes.insert(
        vec![1, 1, 0],
        PreNode::Rule {
            rule: ChaRule::Base(BaseRule::Ax),
            seq: a_seq.subst1(&zero(), "x").unwrap(),
        },
    );
    let after_sx = a_seq.subst1(&succ(var("x")), "x").unwrap();
    nodes.insert(
        vec![1, 1, 1],
        PreNode::Rule {
            rule: ChaRule::Base(BaseRule::Cut { formula: xx.clone() }),
            seq: after_sx.clone(),
        },
    );
    nodes.insert(
        vec![1, 1, 1, 0],
        PreNode::Rule {
            rule: ChaRule::Base(BaseRule::EqR),
            seq: Sequent { ant: after_sx.ant.clone(), suc: xx.clone() },
        },
    );
    let inner_case_seq = after_sx.with(xx.clone());
    nodes.insert(
        vec![1, 1, 1, 1],
        PreNode::Rule { rule: ChaRule::Case { var: "y".into() }, seq: inner_case_seq.clone() },
    );
    nodes.insert(
        vec![1, 1, 1, 1, 0],
        PreNode::Rule {
            rule: ChaRule::Base(BaseRule::Ax),
            seq: inner_case_seq.subst1(&zero(), "y").unwrap(),
        },
    );
    let deep = inner_case_seq.subst1(&succ(var("y")), "y").unwrap();
    debug_assert!(deep.ant.contains(&ssy));
    debug_assert!(deep.ant.contains(&s0) == false);
    nodes.insert(
        vec![1, 1, 1, 1, 1],
        PreNode::Rule { rule: ChaRule::Base(BaseRule::Cut { formula: yy.clone() }), seq: deep.clone() },
    );
    nodes.insert(
        vec![1, 1, 1, 1, 1, 0],
        PreNode::Rule {
            rule: ChaRule::Base(BaseRule::EqR),
            seq: Sequent { ant: deep.ant.clone(), suc: yy.clone() },
        },
    );
    let deep_yy = deep.with(yy.clone());
    nodes.insert(
        vec![1, 1, 1, 1, 1, 1],
        PreNode::Rule {
            rule: ChaRule::Base(BaseRule::Cut { formula: zz.clone() }),
            seq: deep_yy.clone(),
        },
    );
    nodes.insert(
        vec![1, 1, 1, 1, 1, 1, 0],
        PreNode::Rule {
            rule: ChaRule::Base(BaseRule::Wk),
            seq: Sequent { ant: deep_yy.ant.clone(), suc: zz.clone() },
        },
    );
    nodes.insert(vec![1, 1, 1, 1, 1, 1, 0, 0], PreNode::Bud { companion: vec![1, 1] });
    nodes.insert(
        vec![1, 1, 1, 1, 1, 1, 1],
        PreNode::Rule { rule: ChaRule::Base(BaseRule::Wk), seq: deep_yy.with(zz.clone()) },
    );
    nodes.insert(vec![1, 1, 1, 1, 1, 1, 1, 0], PreNode::Bud { companion: vec![] });
    PreProof { nodes }
}

pub fn cha_corpus() -> Vec<(&'static str, PreProof)> {
    vec![
        ("cyclic-zero-plus", cyclic_zero_plus()),
        ("cyclic-mul-zero-pi1", cyclic_mul_zero_pi1()),
        ("cyclic-nested", cyclic_nested()),
    ]
}
