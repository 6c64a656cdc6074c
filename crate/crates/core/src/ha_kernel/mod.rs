//! Sequents, the inductive proof system, and its checker.
//!
//! A sequent is a finite set of antecedent formulas and a single succedent.
//! Proofs are finite rule-labelled trees; `check` verifies every node
//! locally and reports the first failure with its node path.
//!
//! Rule summary (premises left to right):
//!
//!   Ax                 --------------- (delta in Gamma)
//!                      Gamma, d => d
//!
//!   ImpL(p=a->b)       G => a    G, b => d
//!                      ---------------------
//!                      G, a->b => d
//!
//!   AllL(p=all x.a, t) G, a[t/x] => d        (keep: p retained in premise)
//!                      --------------
//!                      G, all x.a => d
//!
//!   AllR               G => a   (x not free in G)
//!                      ------
//!                      G => all x.a
//!
//!   EqL(s,t,x,y)       G0[x/y] => d0[x/y]    (x,y not free in s,t)
//!                      -------------------------------
//!                      G0[s/x,t/y], s=t => d0[s/x,t/y]
//!
//!   Ind(f,x,s)         ------------------------------------------ (axiom)
//!                      f[0/x], all x.(f -> f[Sx/x]) => f[s/x]
//!
//! plus the usual AndL/R, OrL/R, ExL/R, BotL, EqR, Wk, Cut and the six
//! arithmetic axiom schemes.

pub mod admissible;
pub mod build;
pub mod lemmas;
pub mod rename;

use crate::syntax::{self, Formula, Ident, Term};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sequent {
    pub ant: BTreeSet<Formula>,
    pub suc: Formula,
}

impl Sequent {
    pub fn new(ant: impl IntoIterator<Item = Formula>, suc: Formula) -> Self {
        Sequent { ant: ant.into_iter().collect(), suc }
    }

    pub fn free_vars(&self) -> BTreeSet<Ident> {
        let mut acc = self.suc.free_vars();
        for f in &self.ant {
            acc.extend(f.free_vars());
        }
        acc
    }

    pub fn all_names(&self) -> BTreeSet<Ident> {
        let mut acc = self.suc.all_names();
        for f in &self.ant {
            acc.extend(f.all_names());
        }
        acc
    }

    /// Simultaneous capture-checking substitution on both sides.
    pub fn subst(&self, map: &BTreeMap<Ident, Term>) -> Option<Sequent> {
        let mut ant = BTreeSet::new();
        for f in &self.ant {
            ant.insert(f.subst(map)?);
        }
        Some(Sequent { ant, suc: self.suc.subst(map)? })
    }

    pub fn subst1(&self, t: &Term, x: &str) -> Option<Sequent> {
        let mut m = BTreeMap::new();
        m.insert(x.to_string(), t.clone());
        self.subst(&m)
    }

    pub fn with(&self, f: Formula) -> Sequent {
        let mut ant = self.ant.clone();
        ant.insert(f);
        Sequent { ant, suc: self.suc.clone() }
    }

    pub fn without(&self, f: &Formula) -> Sequent {
        let mut ant = self.ant.clone();
        ant.remove(f);
        Sequent { ant, suc: self.suc.clone() }
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(seq (")?;
        let mut first = true;
        for a in &self.ant {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{a}")?;
            first = false;
        }
        write!(f, ") {})", self.suc)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// The six axiomatic sequent schemes characterising `S`, `+` and `*`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ArithAxiom {
    /// `=> 0 = S t -> bot`
    ZeroNeSucc(Term),
    /// `S s = S t => s = t`
    SuccInj(Term, Term),
    /// `=> s + 0 = s`
    AddZero(Term),
    /// `=> s + S t = S (s + t)`
    AddSucc(Term, Term),
    /// `=> s * 0 = 0`
    MulZero(Term),
    /// `=> s * S t = (s * t) + s`
    MulSucc(Term, Term),
}

impl ArithAxiom {
    /// The axiomatic sequent itself (antecedent and succedent).
    pub fn sequent(&self) -> Sequent {
        use syntax::*;
        match self {
            ArithAxiom::ZeroNeSucc(t) => Sequent::new([], neg(eq(zero(), succ(t.clone())))),
            ArithAxiom::SuccInj(s, t) => Sequent::new(
                [eq(succ(s.clone()), succ(t.clone()))],
                eq(s.clone(), t.clone()),
            ),
            ArithAxiom::AddZero(s) => Sequent::new([], eq(add(s.clone(), zero()), s.clone())),
            ArithAxiom::AddSucc(s, t) => Sequent::new(
                [],
                eq(
                    add(s.clone(), succ(t.clone())),
                    succ(add(s.clone(), t.clone())),
                ),
            ),
            ArithAxiom::MulZero(s) => Sequent::new([], eq(mul(s.clone(), zero()), zero())),
            ArithAxiom::MulSucc(s, t) => Sequent::new(
                [],
                eq(
                    mul(s.clone(), succ(t.clone())),
                    add(mul(s.clone(), t.clone()), s.clone()),
                ),
            ),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ArithAxiom::ZeroNeSucc(..) => "zero-ne-succ",
            ArithAxiom::SuccInj(..) => "succ-inj",
            ArithAxiom::AddZero(..) => "add-zero",
            ArithAxiom::AddSucc(..) => "add-succ",
            ArithAxiom::MulZero(..) => "mul-zero",
            ArithAxiom::MulSucc(..) => "mul-succ",
        }
    }
}

/// Rules shared by the inductive, cyclic and stack-labelled calculi.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BaseRule {
    Ax,
    ImpL { principal: Formula },
    ImpR,
    AndL { principal: Formula },
    AndR,
    OrL { principal: Formula },
    OrR { side: Side },
    AllL { principal: Formula, witness: Term, keep: bool },
    AllR,
    ExL { principal: Formula },
    ExR { witness: Term },
    BotL,
    EqL { s: Term, t: Term, x: Ident, y: Ident },
    EqR,
    Wk,
    Cut { formula: Formula },
    Arith(ArithAxiom),
}

impl BaseRule {
    pub fn name(&self) -> &'static str {
        match self {
            BaseRule::Ax => "ax",
            BaseRule::ImpL { .. } => "imp-l",
            BaseRule::ImpR => "imp-r",
            BaseRule::AndL { .. } => "and-l",
            BaseRule::AndR => "and-r",
            BaseRule::OrL { .. } => "or-l",
            BaseRule::OrR { .. } => "or-r",
            BaseRule::AllL { .. } => "all-l",
            BaseRule::AllR => "all-r",
            BaseRule::ExL { .. } => "ex-l",
            BaseRule::ExR { .. } => "ex-r",
            BaseRule::BotL => "bot-l",
            BaseRule::EqL { .. } => "eq-l",
            BaseRule::EqR => "eq-r",
            BaseRule::Wk => "wk",
            BaseRule::Cut { .. } => "cut",
            BaseRule::Arith(ax) => ax.name(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum HaRule {
    Base(BaseRule),
    /// Induction axiom `f[0/x], all x.(f -> f[Sx/x]) => f[inst/x]`.
    Ind { formula: Formula, var: Ident, inst: Term },
}

impl HaRule {
    pub fn name(&self) -> &'static str {
        match self {
            HaRule::Base(b) => b.name(),
            HaRule::Ind { .. } => "ind",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofTree {
    pub rule: HaRule,
    pub conclusion: Sequent,
    pub children: Vec<ProofTree>,
}

impl ProofTree {
    pub fn leaf(rule: HaRule, conclusion: Sequent) -> Self {
        ProofTree { rule, conclusion, children: Vec::new() }
    }

    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(|c| c.node_count()).sum::<usize>()
    }

    pub fn endsequent(&self) -> &Sequent {
        &self.conclusion
    }

    /// All identifiers anywhere in the proof, including rule data.
    pub fn all_names(&self) -> BTreeSet<Ident> {
        let mut acc = BTreeSet::new();
        self.visit(&mut |n| {
            acc.extend(n.conclusion.all_names());
            if let HaRule::Ind { formula, var, inst } = &n.rule {
                acc.extend(formula.all_names());
                acc.insert(var.clone());
                acc.extend(inst.vars());
            }
            if let HaRule::Base(BaseRule::EqL { s, t, x, y }) = &n.rule {
                acc.extend(s.vars());
                acc.extend(t.vars());
                acc.insert(x.clone());
                acc.insert(y.clone());
            }
        });
        acc
    }

    pub fn visit(&self, f: &mut impl FnMut(&ProofTree)) {
        f(self);
        for c in &self.children {
            c.visit(f);
        }
    }

    /// All induction axiom instances (their formulas) in the proof.
    pub fn induction_formulas(&self) -> Vec<Formula> {
        let mut out = Vec::new();
        self.visit(&mut |n| {
            if let HaRule::Ind { formula, .. } = &n.rule {
                out.push(formula.clone());
            }
        });
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckReport {
    Ok,
    Fail { path: Vec<usize>, rule: String, reason: String },
}

impl CheckReport {
    pub fn is_ok(&self) -> bool {
        matches!(self, CheckReport::Ok)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckReport::Ok => write!(f, "ok"),
            CheckReport::Fail { path, rule, reason } => {
                let p: Vec<String> = path.iter().map(|i| i.to_string()).collect();
                write!(f, "fail at [{}] ({}): {}", p.join(" "), rule, reason)
            }
        }
    }
}

/// Result of checking one base-rule node: the premises it demands.
pub enum RuleCheck {
    /// Exact premise sequents, in order.
    Premises(Vec<Sequent>),
    /// Weakening: one premise whose antecedent must be a subset.
    Subset,
    /// Replacement: one premise validated by hole-matching.
    EqMatch,
}

/// Checks the local conditions of a base rule against its conclusion and
/// returns what the premises must look like.
pub fn base_rule_check(rule: &BaseRule, conclusion: &Sequent) -> Result<RuleCheck, String> {
    use BaseRule::*;
    match rule {
        Ax => {
            if conclusion.ant.contains(&conclusion.suc) {
                Ok(RuleCheck::Premises(vec![]))
            } else {
                Err("succedent not in antecedent".into())
            }
        }
        BotL => {
            if conclusion.ant.contains(&Formula::Bot) {
                Ok(RuleCheck::Premises(vec![]))
            } else {
                Err("bot not in antecedent".into())
            }
        }
        EqR => match &conclusion.suc {
            Formula::Eq(a, b) if a == b => Ok(RuleCheck::Premises(vec![])),
            _ => Err("succedent is not a reflexive equation".into()),
        },
        Arith(ax) => {
            if *conclusion == ax.sequent() {
                Ok(RuleCheck::Premises(vec![]))
            } else {
                Err(format!("conclusion does not match axiom {}", ax.name()))
            }
        }
        ImpR => match &conclusion.suc {
            Formula::Imp(a, b) => Ok(RuleCheck::Premises(vec![Sequent {
                ant: {
                    let mut s = conclusion.ant.clone();
                    s.insert((**a).clone());
                    s
                },
                suc: (**b).clone(),
            }])),
            _ => Err("succedent is not an implication".into()),
        },
        ImpL { principal } => {
            let (a, b) = match principal {
                Formula::Imp(a, b) => (a.as_ref().clone(), b.as_ref().clone()),
                _ => return Err("principal is not an implication".into()),
            };
            if !conclusion.ant.contains(principal) {
                return Err("principal not in antecedent".into());
            }
            let rest = conclusion.without(principal);
            Ok(RuleCheck::Premises(vec![
                Sequent { ant: rest.ant.clone(), suc: a },
                rest.with(b),
            ]))
        }
        AndR => match &conclusion.suc {
            Formula::And(a, b) => Ok(RuleCheck::Premises(vec![
                Sequent { ant: conclusion.ant.clone(), suc: (**a).clone() },
                Sequent { ant: conclusion.ant.clone(), suc: (**b).clone() },
            ])),
            _ => Err("succedent is not a conjunction".into()),
        },
        AndL { principal } => {
            let (a, b) = match principal {
                Formula::And(a, b) => (a.as_ref().clone(), b.as_ref().clone()),
                _ => return Err("principal is not a conjunction".into()),
            };
            if !conclusion.ant.contains(principal) {
                return Err("principal not in antecedent".into());
            }
            Ok(RuleCheck::Premises(vec![conclusion.without(principal).with(a).with(b)]))
        }
        OrR { side } => match &conclusion.suc {
            Formula::Or(a, b) => {
                let pick = match side {
                    Side::Left => (**a).clone(),
                    Side::Right => (**b).clone(),
                };
                Ok(RuleCheck::Premises(vec![Sequent { ant: conclusion.ant.clone(), suc: pick }]))
            }
            _ => Err("succedent is not a disjunction".into()),
        },
        OrL { principal } => {
            let (a, b) = match principal {
                Formula::Or(a, b) => (a.as_ref().clone(), b.as_ref().clone()),
                _ => return Err("principal is not a disjunction".into()),
            };
            if !conclusion.ant.contains(principal) {
                return Err("principal not in antecedent".into());
            }
            let rest = conclusion.without(principal);
            Ok(RuleCheck::Premises(vec![rest.with(a), rest.with(b)]))
        }
        AllR => match &conclusion.suc {
            Formula::All(x, body) => {
                let mut ctx_vars = BTreeSet::new();
                for f in &conclusion.ant {
                    ctx_vars.extend(f.free_vars());
                }
                if ctx_vars.contains(x) {
                    return Err(format!("eigenvariable {x} free in antecedent"));
                }
                Ok(RuleCheck::Premises(vec![Sequent {
                    ant: conclusion.ant.clone(),
                    suc: (**body).clone(),
                }]))
            }
            _ => Err("succedent is not a universal formula".into()),
        },
        AllL { principal, witness, keep } => {
            let (x, body) = match principal {
                Formula::All(x, body) => (x.clone(), body.as_ref().clone()),
                _ => return Err("principal is not a universal formula".into()),
            };
            if !conclusion.ant.contains(principal) {
                return Err("principal not in antecedent".into());
            }
            let inst = body
                .subst1(witness, &x)
                .ok_or_else(|| format!("substitution of witness for {x} is undefined"))?;
            let base = if *keep { conclusion.clone() } else { conclusion.without(principal) };
            Ok(RuleCheck::Premises(vec![base.with(inst)]))
        }
        ExL { principal } => {
            let (x, body) = match principal {
                Formula::Ex(x, body) => (x.clone(), body.as_ref().clone()),
                _ => return Err("principal is not an existential formula".into()),
            };
            if !conclusion.ant.contains(principal) {
                return Err("principal not in antecedent".into());
            }
            let rest = conclusion.without(principal);
            let mut ctx_vars = rest.free_vars();
            ctx_vars.extend(principal.free_vars());
            if ctx_vars.contains(&x) {
                return Err(format!("eigenvariable {x} free in context"));
            }
            Ok(RuleCheck::Premises(vec![rest.with(body)]))
        }
        ExR { witness } => match &conclusion.suc {
            Formula::Ex(x, body) => {
                let inst = body
                    .subst1(witness, x)
                    .ok_or_else(|| format!("substitution of witness for {x} is undefined"))?;
                Ok(RuleCheck::Premises(vec![Sequent { ant: conclusion.ant.clone(), suc: inst }]))
            }
            _ => Err("succedent is not an existential formula".into()),
        },
        Cut { formula } => {
            let left = Sequent { ant: conclusion.ant.clone(), suc: formula.clone() };
            let right = conclusion.with(formula.clone());
            Ok(RuleCheck::Premises(vec![left, right]))
        }
        Wk => Ok(RuleCheck::Subset),
        EqL { s, t, x, y } => {
            if s.vars().contains(x) || s.vars().contains(y) || t.vars().contains(x) || t.vars().contains(y)
            {
                return Err("replacement variables occur in the equated terms".into());
            }
            if !conclusion.ant.contains(&syntax::eq(s.clone(), t.clone())) {
                return Err("equation not in antecedent".into());
            }
            Ok(RuleCheck::EqMatch)
        }
    }
}

/// Checks that `premise` arises from `conclusion` (minus the equation) by a
/// hole template: wherever the premise has the merge variable `x` free, the
/// conclusion must have `s` or `t`; elsewhere both must agree.
pub fn eq_l_matches(
    premise: &Sequent,
    conclusion: &Sequent,
    s: &Term,
    t: &Term,
    x: &str,
    y: &str,
) -> Result<(), String> {
    let st_vars: BTreeSet<Ident> = s.vars().union(&t.vars()).cloned().collect();
    let bad_bound = |bound: &[Ident]| bound.iter().any(|b| st_vars.contains(b) || b == x || b == y);

    fn term_match(
        p: &Term,
        c: &Term,
        s: &Term,
        t: &Term,
        x: &str,
        bound: &[Ident],
        bad_bound: &dyn Fn(&[Ident]) -> bool,
    ) -> bool {
        if let Term::Var(v) = p {
            if v == x && !bound.iter().any(|b| b == v) {
                // a hole: conclusion side must be s or t, with no capture
                return (c == s || c == t) && !bad_bound(bound);
            }
        }
        match (p, c) {
            (Term::Var(a), Term::Var(b)) => a == b,
            (Term::Zero, Term::Zero) => true,
            (Term::Succ(a), Term::Succ(b)) => term_match(a, b, s, t, x, bound, bad_bound),
            (Term::Add(a1, a2), Term::Add(b1, b2)) | (Term::Mul(a1, a2), Term::Mul(b1, b2)) => {
                term_match(a1, b1, s, t, x, bound, bad_bound)
                    && term_match(a2, b2, s, t, x, bound, bad_bound)
            }
            _ => false,
        }
    }

    fn fml_match(
        p: &Formula,
        c: &Formula,
        s: &Term,
        t: &Term,
        x: &str,
        bound: &mut Vec<Ident>,
        bad_bound: &dyn Fn(&[Ident]) -> bool,
    ) -> bool {
        match (p, c) {
            (Formula::Eq(a1, a2), Formula::Eq(b1, b2)) => {
                term_match(a1, b1, s, t, x, bound, bad_bound)
                    && term_match(a2, b2, s, t, x, bound, bad_bound)
            }
            (Formula::Bot, Formula::Bot) => true,
            (Formula::And(a1, a2), Formula::And(b1, b2))
            | (Formula::Or(a1, a2), Formula::Or(b1, b2))
            | (Formula::Imp(a1, a2), Formula::Imp(b1, b2)) => {
                fml_match(a1, b1, s, t, x, bound, bad_bound)
                    && fml_match(a2, b2, s, t, x, bound, bad_bound)
            }
            (Formula::All(v1, f1), Formula::All(v2, f2))
            | (Formula::Ex(v1, f1), Formula::Ex(v2, f2)) => {
                if v1 != v2 {
                    return false;
                }
                bound.push(v1.clone());
                let r = fml_match(f1, f2, s, t, x, bound, bad_bound);
                bound.pop();
                r
            }
            _ => false,
        }
    }

    let equation = syntax::eq(s.clone(), t.clone());
    let conc_rest: Vec<&Formula> = conclusion.ant.iter().filter(|f| **f != equation).collect();
    for cf in &conc_rest {
        if !premise.ant.iter().any(|pf| {
            fml_match(pf, cf, s, t, x, &mut Vec::new(), &bad_bound)
        }) {
            return Err(format!("conclusion formula {cf} has no matching premise formula"));
        }
    }
    for pf in &premise.ant {
        if !conclusion.ant.iter().any(|cf| {
            fml_match(pf, cf, s, t, x, &mut Vec::new(), &bad_bound)
        }) {
            return Err(format!("premise formula {pf} matches no conclusion formula"));
        }
    }
    if !fml_match(&premise.suc, &conclusion.suc, s, t, x, &mut Vec::new(), &bad_bound) {
        return Err("succedents do not match up to replacement".into());
    }
    Ok(())
}

fn check_node(tree: &ProofTree, path: &mut Vec<usize>) -> CheckReport {
    let fail = |path: &[usize], rule: &HaRule, reason: String| CheckReport::Fail {
        path: path.to_vec(),
        rule: rule.name().into(),
        reason,
    };

    let expected: Option<Vec<Sequent>> = match &tree.rule {
        HaRule::Base(b) => match base_rule_check(b, &tree.conclusion) {
            Err(reason) => return fail(path, &tree.rule, reason),
            Ok(RuleCheck::Premises(ps)) => Some(ps),
            Ok(RuleCheck::Subset) => {
                if tree.children.len() != 1 {
                    return fail(path, &tree.rule, "weakening needs one premise".into());
                }
                let p = &tree.children[0].conclusion;
                if p.suc != tree.conclusion.suc {
                    return fail(path, &tree.rule, "weakening changed the succedent".into());
                }
                if !p.ant.is_subset(&tree.conclusion.ant) {
                    return fail(path, &tree.rule, "premise antecedent not a subset".into());
                }
                None
            }
            Ok(RuleCheck::EqMatch) => {
                if tree.children.len() != 1 {
                    return fail(path, &tree.rule, "replacement needs one premise".into());
                }
                if let HaRule::Base(BaseRule::EqL { s, t, x, y }) = &tree.rule {
                    if let Err(reason) =
                        eq_l_matches(&tree.children[0].conclusion, &tree.conclusion, s, t, x, y)
                    {
                        return fail(path, &tree.rule, reason);
                    }
                }
                None
            }
        },
        HaRule::Ind { formula, var, inst } => {
            match induction_sequent(formula, var, inst) {
                Err(reason) => return fail(path, &tree.rule, reason),
                Ok(seq) => {
                    if seq != tree.conclusion {
                        return fail(path, &tree.rule, "conclusion does not match the induction axiom".into());
                    }
                    Some(vec![])
                }
            }
        }
    };

    if let Some(expected) = expected {
        if expected.len() != tree.children.len() {
            return fail(
                path,
                &tree.rule,
                format!("expected {} premises, found {}", expected.len(), tree.children.len()),
            );
        }
        for (i, (want, child)) in expected.iter().zip(&tree.children).enumerate() {
            if *want != child.conclusion {
                return fail(
                    path,
                    &tree.rule,
                    format!("premise {i} is {}, expected {want}", child.conclusion),
                );
            }
        }
    }

    for (i, child) in tree.children.iter().enumerate() {
        path.push(i);
        let r = check_node(child, path);
        path.pop();
        if !r.is_ok() {
            return r;
        }
    }
    CheckReport::Ok
}

/// The induction axiom sequent for `formula` with distinguished variable
/// `var`, instantiated at `inst`.
pub fn induction_sequent(formula: &Formula, var: &str, inst: &Term) -> Result<Sequent, String> {
    let base = formula
        .subst1(&Term::Zero, var)
        .ok_or("base instance of the induction formula is undefined")?;
    let step_rhs = formula
        .subst1(&syntax::succ(syntax::var(var)), var)
        .ok_or("successor instance of the induction formula is undefined")?;
    let step = syntax::all(var, syntax::imp(formula.clone(), step_rhs));
    let inst_f = formula
        .subst1(inst, var)
        .ok_or("instantiation of the induction formula is undefined")?;
    Ok(Sequent::new([base, step], inst_f))
}

/// Verifies a finite proof tree; reports the first failing node.
pub fn check(proof: &ProofTree) -> CheckReport {
    check_node(proof, &mut Vec::new())
}
