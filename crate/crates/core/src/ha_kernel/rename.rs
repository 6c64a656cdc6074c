//! Substitution into checked proofs.
//!
//! `rename_proof` turns a proof of `G => d` into a proof of
//! `G[t/x] => d[t/x]`. Eigenvariables that clash with the substituted term
//! are replaced by fresh ones; where the clashing binder survives into a
//! conclusion formula, the fresh-named subderivation is glued back to the
//! original binder with a cut through an alpha-variant.

use super::build::*;
use super::lemmas::alpha_equiv_proof;
use super::{ArithAxiom, BaseRule, HaRule, ProofTree, Sequent};
use crate::syntax::{self, Formula, Ident, Term};
use std::collections::{BTreeMap, BTreeSet};

pub struct FreshPool {
    used: BTreeSet<Ident>,
    counter: usize,
}

impl FreshPool {
    pub fn new(used: BTreeSet<Ident>) -> Self {
        FreshPool { used, counter: 0 }
    }

    pub fn reserve(&mut self, names: impl IntoIterator<Item = Ident>) {
        self.used.extend(names);
    }

    pub fn fresh(&mut self, base: &str) -> Ident {
        loop {
            let cand = if self.counter == 0 {
                base.to_string()
            } else {
                format!("{base}{}", self.counter)
            };
            self.counter += 1;
            if !self.used.contains(&cand) {
                self.used.insert(cand.clone());
                return cand;
            }
        }
    }
}

type Subst = BTreeMap<Ident, Term>;

/// Proof of the endsequent with `t` substituted for `x`. The substitution
/// must be defined on the endsequent; internal eigenvariable clashes are
/// resolved by renaming.
pub fn rename_proof(proof: &ProofTree, t: &Term, x: &str) -> Result<ProofTree, String> {
    let mut map = Subst::new();
    map.insert(x.to_string(), t.clone());
    rename_proof_multi(proof, &map)
}

/// Simultaneous variant of [`rename_proof`].
pub fn rename_proof_multi(proof: &ProofTree, map: &Subst) -> Result<ProofTree, String> {
    let map: Subst = map
        .iter()
        .filter(|(v, t)| **t != syntax::var(v))
        .map(|(v, t)| (v.clone(), t.clone()))
        .collect();
    if map.is_empty() {
        return Ok(proof.clone());
    }
    let mut used = proof.all_names();
    for t in map.values() {
        used.extend(t.vars());
    }
    let mut pool = FreshPool::new(used);
    rename_node(proof, &map, &mut pool)
}

fn subst_seq(seq: &Sequent, map: &Subst) -> Result<Sequent, String> {
    seq.subst(map)
        .ok_or_else(|| format!("substitution undefined on {seq}"))
}

fn subst_fml(f: &Formula, map: &Subst) -> Result<Formula, String> {
    f.subst(map)
        .ok_or_else(|| format!("substitution undefined on {f}"))
}

fn rename_node(node: &ProofTree, map: &Subst, pool: &mut FreshPool) -> Result<ProofTree, String> {
    let conclusion = subst_seq(&node.conclusion, map)?;
    let rule = match &node.rule {
        HaRule::Base(b) => b,
        HaRule::Ind { formula, var, inst } => {
            // refresh the induction variable when it clashes with the map
            let mut inner = map.clone();
            inner.remove(var);
            let clash = inner
                .iter()
                .any(|(v, t)| formula.free_vars().contains(v) && t.vars().contains(var))
                || map.contains_key(var);
            let (formula2, var2) = if clash {
                let var2 = pool.fresh(var);
                let mut m = inner.clone();
                m.insert(var.clone(), syntax::var(&var2));
                (subst_fml(formula, &m)?, var2)
            } else {
                (subst_fml(formula, &inner)?, var.clone())
            };
            let inst2 = inst.subst(map);
            let rebuilt = ind_axiom(formula2, &var2, inst2);
            if rebuilt.conclusion != conclusion {
                return Err(format!(
                    "renamed induction instance mismatch: {} vs {conclusion}",
                    rebuilt.conclusion
                ));
            }
            return Ok(rebuilt);
        }
    };

    use BaseRule::*;
    match rule {
        Ax | BotL | EqR => Ok(ProofTree { rule: node.rule.clone(), conclusion, children: vec![] }),
        Arith(ax) => {
            let ax2 = match ax {
                ArithAxiom::ZeroNeSucc(t) => ArithAxiom::ZeroNeSucc(t.subst(map)),
                ArithAxiom::SuccInj(s, t) => ArithAxiom::SuccInj(s.subst(map), t.subst(map)),
                ArithAxiom::AddZero(s) => ArithAxiom::AddZero(s.subst(map)),
                ArithAxiom::AddSucc(s, t) => ArithAxiom::AddSucc(s.subst(map), t.subst(map)),
                ArithAxiom::MulZero(s) => ArithAxiom::MulZero(s.subst(map)),
                ArithAxiom::MulSucc(s, t) => ArithAxiom::MulSucc(s.subst(map), t.subst(map)),
            };
            Ok(ProofTree {
                rule: HaRule::Base(Arith(ax2)),
                conclusion,
                children: vec![],
            })
        }
        ImpR | AndR | OrR { .. } | Wk => {
            let children = rename_children(node, map, pool)?;
            Ok(ProofTree { rule: node.rule.clone(), conclusion, children })
        }
        ImpL { principal } | AndL { principal } | OrL { principal } => {
            let p2 = subst_fml(principal, map)?;
            let rule2 = match rule {
                ImpL { .. } => ImpL { principal: p2 },
                AndL { .. } => AndL { principal: p2 },
                _ => OrL { principal: p2 },
            };
            let children = rename_children(node, map, pool)?;
            Ok(ProofTree { rule: HaRule::Base(rule2), conclusion, children })
        }
        Cut { formula } => {
            let f2 = subst_fml(formula, map)?;
            let children = rename_children(node, map, pool)?;
            Ok(ProofTree { rule: HaRule::Base(Cut { formula: f2 }), conclusion, children })
        }
        AllL { principal, witness, keep } => {
            let p2 = subst_fml(principal, map)?;
            let w2 = witness.subst(map);
            // the instantiated premise must remain substitutable
            let children = rename_children(node, map, pool)?;
            Ok(ProofTree {
                rule: HaRule::Base(AllL { principal: p2, witness: w2, keep: *keep }),
                conclusion,
                children,
            })
        }
        ExR { witness } => {
            let w2 = witness.subst(map);
            let children = rename_children(node, map, pool)?;
            Ok(ProofTree { rule: HaRule::Base(ExR { witness: w2 }), conclusion, children })
        }
        EqL { s, t, x, y: _ } => {
            // always refresh the template variables; the caller's map is
            // irrelevant for them since they only mark holes
            let s2 = s.subst(map);
            let t2 = t.subst(map);
            let x2 = pool.fresh("hole_a");
            let y2 = pool.fresh("hole_b");
            let mut child_map: Subst = map.clone();
            child_map.remove(x);
            child_map.insert(x.clone(), syntax::var(&x2));
            let child = rename_node(&node.children[0], &child_map, pool)?;
            Ok(ProofTree {
                rule: HaRule::Base(EqL { s: s2, t: t2, x: x2, y: y2 }),
                conclusion,
                children: vec![child],
            })
        }
        AllR => {
            let v = match &conclusion.suc {
                Formula::All(v, _) => v.clone(),
                _ => return Err("all-r conclusion lost its shape".into()),
            };
            let mut inner = map.clone();
            inner.remove(match &node.conclusion.suc {
                Formula::All(v0, _) => v0,
                _ => unreachable!(),
            });
            let ctx_free: BTreeSet<Ident> =
                conclusion.ant.iter().flat_map(|f| f.free_vars()).collect();
            let orig_v = match &node.conclusion.suc {
                Formula::All(v0, _) => v0.clone(),
                _ => unreachable!(),
            };
            if v == orig_v && !ctx_free.contains(&v) {
                let child = rename_node(&node.children[0], &inner, pool)?;
                return Ok(ProofTree { rule: node.rule.clone(), conclusion, children: vec![child] });
            }
            // eigenvariable clash: recurse with a fresh name, then glue
            let z = pool.fresh(&orig_v);
            let mut clash_map = inner.clone();
            clash_map.insert(orig_v.clone(), syntax::var(&z));
            let child = rename_node(&node.children[0], &clash_map, pool)?;
            let fresh_all = all_r(&z, child);
            let glue = alpha_equiv_proof(&fresh_all.conclusion.suc, &conclusion.suc, &BTreeSet::new())
                .map_err(|e| format!("cannot realign eigenvariable {orig_v}: {e}"))?;
            let glue = wk(
                {
                    let mut ant = conclusion.ant.clone();
                    ant.insert(fresh_all.conclusion.suc.clone());
                    Sequent { ant, suc: conclusion.suc.clone() }
                },
                glue,
            );
            Ok(cut(fresh_all.conclusion.suc.clone(), fresh_all, glue))
        }
        ExL { principal } => {
            let p2 = subst_fml(principal, map)?;
            let (orig_v, body) = match principal {
                Formula::Ex(v, body) => (v.clone(), body.as_ref().clone()),
                _ => return Err("ex-l principal lost its shape".into()),
            };
            let mut inner = map.clone();
            inner.remove(&orig_v);
            // eigenvariable condition after substitution
            let rest: BTreeSet<Formula> =
                conclusion.ant.iter().filter(|f| **f != p2).cloned().collect();
            let mut ctx_free: BTreeSet<Ident> = rest.iter().flat_map(|f| f.free_vars()).collect();
            ctx_free.extend(conclusion.suc.free_vars());
            ctx_free.extend(p2.free_vars());
            let p2_keeps_binder = matches!(&p2, Formula::Ex(v, _) if *v == orig_v);
            if p2_keeps_binder && !ctx_free.contains(&orig_v) {
                let child = rename_node(&node.children[0], &inner, pool)?;
                return Ok(ProofTree {
                    rule: HaRule::Base(ExL { principal: p2 }),
                    conclusion,
                    children: vec![child],
                });
            }
            // clash: fresh eigenvariable plus an alpha-variant principal
            let z = pool.fresh(&orig_v);
            let mut clash_map = inner.clone();
            clash_map.insert(orig_v.clone(), syntax::var(&z));
            let child = rename_node(&node.children[0], &clash_map, pool)?;
            let body2 = body
                .subst(&clash_map)
                .ok_or_else(|| format!("substitution undefined on {body}"))?;
            let fresh_principal = syntax::ex(&z, body2);
            let elim = ex_l(fresh_principal.clone(), child);
            // context, p2 => fresh_principal
            let glue = alpha_equiv_proof(&p2, &fresh_principal, &rest)
                .map_err(|e| format!("cannot realign eigenvariable {orig_v}: {e}"))?;
            let glue = wk(
                Sequent { ant: conclusion.ant.clone(), suc: fresh_principal.clone() },
                glue,
            );
            let elim = wk(
                {
                    let mut ant = conclusion.ant.clone();
                    ant.insert(fresh_principal.clone());
                    Sequent { ant, suc: conclusion.suc.clone() }
                },
                elim,
            );
            Ok(cut(fresh_principal, glue, elim))
        }
    }
}

fn rename_children(
    node: &ProofTree,
    map: &Subst,
    pool: &mut FreshPool,
) -> Result<Vec<ProofTree>, String> {
    node.children.iter().map(|c| rename_node(c, map, pool)).collect()
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
    fn identity_rename_is_trivial() {
        let pf = ax([eq(var("x"), zero())], eq(var("x"), zero()));
        let out = rename_proof(&pf, &var("x"), "x").unwrap();
        assert_eq!(out.conclusion, pf.conclusion);
        assert_ok(&out);
    }

    #[test]
    fn rename_axiom_instance() {
        let pf = ax([eq(var("x"), var("x"))], eq(var("x"), var("x")));
        let out = rename_proof(&pf, &num(1), "x").unwrap();
        assert_eq!(out.conclusion, Sequent::new([eq(num(1), num(1))], eq(num(1), num(1))));
        assert_ok(&out);
    }

    #[test]
    fn rename_through_arith_axiom() {
        let pf = arith(ArithAxiom::AddZero(var("x")));
        let out = rename_proof(&pf, &succ(zero()), "x").unwrap();
        assert_eq!(out.conclusion.suc, eq(add(num(1), zero()), num(1)));
        assert_ok(&out);
    }

    #[test]
    fn eigenvariable_clash_is_renamed() {
        // proof of  P(x) => all y. y = y   where the substitution term
        // contains the eigenvariable y
        let premise = eq_r([eq(var("x"), zero())], var("y"));
        let pf = all_r("y", premise);
        assert_ok(&pf);
        let out = rename_proof(&pf, &succ(var("y")), "x").unwrap();
        assert_eq!(
            out.conclusion,
            Sequent::new([eq(succ(var("y")), zero())], all("y", eq(var("y"), var("y"))))
        );
        assert_ok(&out);
    }

    #[test]
    fn ex_l_clash_is_renamed() {
        // ex y. y = x , P(x) => 0 = 0 ; rename x := S y
        let principal = ex("y", eq(var("y"), var("x")));
        let inner = eq_r([eq(var("y"), var("x")), eq(var("x"), zero())], zero());
        let pf = ex_l(principal.clone(), inner);
        assert_ok(&pf);
        let out = rename_proof(&pf, &succ(var("y")), "x");
        // substitution into the principal captures y, so the endsequent
        // itself is undefined; this must be reported, not mistranslated
        assert!(out.is_err());

        // but renaming x := S z works and renames the eigenvariable there
        let out2 = rename_proof(&pf, &succ(var("z")), "x").unwrap();
        assert_ok(&out2);
    }

    #[test]
    fn rename_eq_l_node() {
        // x = 0, P(x) => P(0)-style replacement survives renaming of P's
        // other variables
        let s = var("x");
        let t = zero();
        let premise = ax(
            [eq(var("hole_a"), var("u"))],
            eq(var("hole_a"), var("u")),
        );
        let conclusion = Sequent::new(
            [eq(s.clone(), var("u")), eq(s.clone(), t.clone())],
            eq(t.clone(), var("u")),
        );
        let pf = eq_l(s, t, "hole_a", "hole_b", conclusion, premise);
        assert_ok(&pf);
        let out = rename_proof(&pf, &succ(zero()), "u").unwrap();
        assert_ok(&out);
        assert!(out
            .conclusion
            .ant
            .contains(&eq(var("x"), succ(zero()))));
    }
}
