//! End-to-end runs of the translation pipeline over the corpus.

mod common;

use cyclarith::cha_kernel::{
    check_pre_proof, embed_ha, eval_sequent, find_induction_order, structural_induction_order,
    validate_induction_order, Assignment, Eval3, PreProof,
};
use cyclarith::finitizer::{audit_complexity, finitize_with_trace};
use cyclarith::ha_kernel::{check, CheckReport, HaRule, ProofTree};
use cyclarith::normalizer::{make_injective, normalize_order};
use cyclarith::stacker::translate_to_stacked;
use cyclarith::syntax::ComplexityClass;

fn assert_ok(p: &ProofTree, name: &str) {
    let r = check(p);
    assert!(matches!(r, CheckReport::Ok), "{name}: {r}");
}

fn run_pipeline(pre: &PreProof, name: &str) -> ProofTree {
    let report = check_pre_proof(pre);
    assert!(report.is_ok(), "{name}: {report}");
    let order = find_induction_order(pre);
    assert!(order.is_some(), "{name}: no induction order");
    assert!(validate_induction_order(pre, order.as_ref().unwrap()), "{name}: invalid order");
    let injective = make_injective(pre);
    assert!(check_pre_proof(&injective).is_ok(), "{name}: injective step broke the proof");
    let normal = normalize_order(&injective, 1_000_000).unwrap_or_else(|e| panic!("{name}: {e}"));
    let aha = translate_to_stacked(&normal).unwrap_or_else(|e| panic!("{name}: {e}"));
    let report = cyclarith::aha_kernel::check_aha(&aha);
    assert!(report.is_ok(), "{name}: {report}");
    assert_eq!(aha.conclusion.base, *pre.endsequent().unwrap(), "{name}: endsequent drift");
    let (out, trace) = finitize_with_trace(&aha).unwrap_or_else(|e| panic!("{name}: {e}"));
    assert_ok(&out, name);
    assert_eq!(out.conclusion, *pre.endsequent().unwrap(), "{name}: final endsequent drift");
    for (_, _, f, vars) in &trace.hypotheses {
        assert!(f.free_vars().is_subset(vars), "{name}: hypothesis {f} leaks variables");
    }
    for lemma in &trace.lemma_proofs {
        assert_ok(lemma, name);
    }
    out
}

#[test]
fn ha_corpus_checks() {
    for (name, pf) in common::ha_corpus() {
        assert_ok(&pf, name);
    }
}

#[test]
fn ha_corpus_has_enough_inductions() {
    let corpus = common::ha_corpus();
    let total: usize = corpus.iter().map(|(_, p)| p.induction_formulas().len()).sum();
    assert!(corpus.len() >= 10, "corpus has {} proofs", corpus.len());
    assert!(total >= 3, "corpus has {total} inductions");
    // the commutativity proof alone uses three
    let comm = common::thm_add_comm();
    assert!(comm.induction_formulas().len() >= 3);
    // both quantifier-free and universally quantified induction formulas
    let classes: Vec<ComplexityClass> = corpus
        .iter()
        .flat_map(|(_, p)| p.induction_formulas())
        .map(|f| cyclarith::syntax::classify(&f))
        .collect();
    assert!(classes.contains(&ComplexityClass::Delta0));
    assert!(classes.contains(&ComplexityClass::Pi(1)));
}

#[test]
fn embedded_corpus_round_trips() {
    for (name, pf) in common::ha_corpus() {
        let pre = embed_ha(&pf);
        let report = check_pre_proof(&pre);
        assert!(report.is_ok(), "{name}: {report}");
        assert_eq!(pre.endsequent(), Some(&pf.conclusion), "{name}");
        let out = run_pipeline(&pre, name);
        assert_eq!(out.conclusion, pf.conclusion, "{name}");
    }
}

#[test]
fn embedded_bud_counts_match_inductions() {
    // every non-vacuous induction axiom becomes one cycle
    let pf = common::thm_add_comm();
    let inds = pf.induction_formulas().len();
    let pre = embed_ha(&pf);
    assert_eq!(pre.buds().len(), inds);
    assert_eq!(inds, 3);
}

#[test]
fn direct_cyclic_corpus_runs() {
    for (name, pre) in common::cha_corpus() {
        run_pipeline(&pre, name);
    }
}

#[test]
fn nested_cycles_have_structural_order() {
    let pre = common::cyclic_nested();
    assert!(check_pre_proof(&pre).is_ok(), "{}", check_pre_proof(&pre));
    let io = structural_induction_order(&pre).expect("structural order");
    // the two buds progress distinct variables
    let vars: std::collections::BTreeSet<_> = io.var_of.values().collect();
    assert_eq!(vars.len(), 2);
}

#[test]
fn delta0_corpus_audits_at_delta0() {
    let pre = common::cyclic_zero_plus();
    let out = run_pipeline(&pre, "cyclic-zero-plus");
    let report = audit_complexity(&pre, &out, ComplexityClass::Delta0);
    assert!(report.ok(), "{report}");
}

#[test]
fn pi1_corpus_audits_at_pi1_not_delta0() {
    let pre = common::cyclic_mul_zero_pi1();
    let out = run_pipeline(&pre, "cyclic-mul-zero-pi1");
    let report = audit_complexity(&pre, &out, ComplexityClass::Pi(1));
    assert!(report.ok(), "{report}");
    let delta = audit_complexity(&pre, &out, ComplexityClass::Delta0);
    assert!(!delta.cyclic_class_ok);
}

#[test]
fn bounded_soundness_over_accepted_proofs() {
    // every node of every accepted quantifier-free cyclic proof evaluates
    // true under all small assignments
    for (name, pre) in [("cyclic-zero-plus", common::cyclic_zero_plus()), ("cyclic-nested", common::cyclic_nested())] {
        assert!(find_induction_order(&pre).is_some());
        for path in pre.nodes.keys() {
            let seq = pre.sequent(path).unwrap();
            if !seq
                .ant
                .iter()
                .chain(std::iter::once(&seq.suc))
                .all(|f| cyclarith::syntax::classify(f) == ComplexityClass::Delta0)
            {
                continue;
            }
            let vars: Vec<_> = seq.free_vars().into_iter().collect();
            let mut env = Assignment::new();
            probe(&vars, 0, &mut env, &|env| {
                assert_eq!(
                    eval_sequent(seq, env, 5),
                    Eval3::True,
                    "{name}: {seq} under {env:?}"
                );
            });
        }
    }
}

fn probe(vars: &[String], i: usize, env: &mut Assignment, check: &impl Fn(&Assignment)) {
    if i == vars.len() {
        check(env);
        return;
    }
    for v in 0..=5 {
        env.insert(vars[i].clone(), v);
        probe(vars, i + 1, env, check);
    }
}

#[test]
fn finitize_uses_one_closure_induction_per_companion() {
    let pre = common::cyclic_zero_plus();
    let out = run_pipeline(&pre, "cyclic-zero-plus");
    let closures: Vec<_> = out
        .induction_formulas()
        .into_iter()
        .filter(|f| cyclarith::syntax::as_bounded_all(f).is_some())
        .collect();
    // one companion, one bounded-closure induction; the case-split macro
    // uses disjunctive quantifier-free formulas besides
    assert_eq!(closures.len(), 1);
    let _ = HaRule::Base(cyclarith::ha_kernel::BaseRule::Ax);
}
