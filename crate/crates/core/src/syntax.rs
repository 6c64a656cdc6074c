//! First-order arithmetic syntax: terms, formulas, substitution, free
//! variables, derived connectives, complexity classification and the
//! negative translation.
//!
//! Formulas are plain syntax trees. Substitution is partial: it returns
//! `None` instead of capturing a free variable of the substituted term.
//! `<` and `<=` and the bounded quantifiers are notation, expanded at
//! construction time and recognised structurally afterwards.

use crate::sexp::{self, err, ParseError, Sexp};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub type Ident = String;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(Ident),
    Zero,
    Succ(Box<Term>),
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Eq(Term, Term),
    Bot,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    All(Ident, Box<Formula>),
    Ex(Ident, Box<Formula>),
}

// --- constructors -----------------------------------------------------

pub fn var(x: &str) -> Term {
    Term::Var(x.to_string())
}

pub fn zero() -> Term {
    Term::Zero
}

pub fn succ(t: Term) -> Term {
    Term::Succ(Box::new(t))
}

/// The numeral for `n`.
pub fn num(n: u64) -> Term {
    let mut t = Term::Zero;
    for _ in 0..n {
        t = succ(t);
    }
    t
}

pub fn add(a: Term, b: Term) -> Term {
    Term::Add(Box::new(a), Box::new(b))
}

pub fn mul(a: Term, b: Term) -> Term {
    Term::Mul(Box::new(a), Box::new(b))
}

pub fn eq(a: Term, b: Term) -> Formula {
    Formula::Eq(a, b)
}

pub fn bot() -> Formula {
    Formula::Bot
}

pub fn and(a: Formula, b: Formula) -> Formula {
    Formula::And(Box::new(a), Box::new(b))
}

pub fn or(a: Formula, b: Formula) -> Formula {
    Formula::Or(Box::new(a), Box::new(b))
}

pub fn imp(a: Formula, b: Formula) -> Formula {
    Formula::Imp(Box::new(a), Box::new(b))
}

pub fn all(x: &str, f: Formula) -> Formula {
    Formula::All(x.to_string(), Box::new(f))
}

pub fn ex(x: &str, f: Formula) -> Formula {
    Formula::Ex(x.to_string(), Box::new(f))
}

pub fn neg(f: Formula) -> Formula {
    imp(f, bot())
}

pub fn top() -> Formula {
    imp(bot(), bot())
}

/// `a < b`, expanded to `ex z. b = a + S z` for a `z` fresh for `a`, `b`.
pub fn lt(a: Term, b: Term) -> Formula {
    let mut used = a.vars();
    used.extend(b.vars());
    let z = fresh("z", &used);
    ex(&z, eq(b.clone(), add(a, succ(var(&z)))))
}

/// `a <= b`, i.e. `a < S b`.
pub fn le(a: Term, b: Term) -> Formula {
    lt(a, succ(b))
}

/// Bounded universal quantifier `all x < t. f`, with `x` not free in `t`.
pub fn ball(x: &str, t: Term, f: Formula) -> Formula {
    debug_assert!(!t.vars().contains(x));
    all(x, imp(lt(var(x), t), f))
}

/// `all x <= t. f`.
pub fn ball_le(x: &str, t: Term, f: Formula) -> Formula {
    ball(x, succ(t), f)
}

/// Bounded existential quantifier `ex x < t. f`.
pub fn bex(x: &str, t: Term, f: Formula) -> Formula {
    debug_assert!(!t.vars().contains(x));
    ex(x, and(lt(var(x), t), f))
}

// --- free variables and substitution ----------------------------------

impl Term {
    pub fn vars(&self) -> BTreeSet<Ident> {
        let mut acc = BTreeSet::new();
        self.collect_vars(&mut acc);
        acc
    }

    fn collect_vars(&self, acc: &mut BTreeSet<Ident>) {
        match self {
            Term::Var(x) => {
                acc.insert(x.clone());
            }
            Term::Zero => {}
            Term::Succ(t) => t.collect_vars(acc),
            Term::Add(a, b) | Term::Mul(a, b) => {
                a.collect_vars(acc);
                b.collect_vars(acc);
            }
        }
    }

    /// Simultaneous substitution of terms for variables. Total on terms.
    pub fn subst(&self, map: &BTreeMap<Ident, Term>) -> Term {
        match self {
            Term::Var(x) => map.get(x).cloned().unwrap_or_else(|| self.clone()),
            Term::Zero => Term::Zero,
            Term::Succ(t) => succ(t.subst(map)),
            Term::Add(a, b) => add(a.subst(map), b.subst(map)),
            Term::Mul(a, b) => mul(a.subst(map), b.subst(map)),
        }
    }

    pub fn subst1(&self, t: &Term, x: &str) -> Term {
        let mut m = BTreeMap::new();
        m.insert(x.to_string(), t.clone());
        self.subst(&m)
    }

    /// Exact evaluation under an assignment; `None` if a variable is missing.
    pub fn eval(&self, env: &BTreeMap<Ident, u64>) -> Option<u64> {
        match self {
            Term::Var(x) => env.get(x).copied(),
            Term::Zero => Some(0),
            Term::Succ(t) => t.eval(env).map(|v| v + 1),
            Term::Add(a, b) => Some(a.eval(env)? + b.eval(env)?),
            Term::Mul(a, b) => Some(a.eval(env)? * b.eval(env)?),
        }
    }
}

impl Formula {
    pub fn free_vars(&self) -> BTreeSet<Ident> {
        let mut acc = BTreeSet::new();
        self.collect_free(&mut acc, &mut Vec::new());
        acc
    }

    fn collect_free(&self, acc: &mut BTreeSet<Ident>, bound: &mut Vec<Ident>) {
        match self {
            Formula::Eq(a, b) => {
                for v in a.vars().union(&b.vars()) {
                    if !bound.iter().any(|b| b == v) {
                        acc.insert(v.clone());
                    }
                }
            }
            Formula::Bot => {}
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_free(acc, bound);
                b.collect_free(acc, bound);
            }
            Formula::All(x, f) | Formula::Ex(x, f) => {
                bound.push(x.clone());
                f.collect_free(acc, bound);
                bound.pop();
            }
        }
    }

    /// All identifiers occurring in the formula, bound or free.
    pub fn all_names(&self) -> BTreeSet<Ident> {
        let mut acc = BTreeSet::new();
        self.collect_names(&mut acc);
        acc
    }

    fn collect_names(&self, acc: &mut BTreeSet<Ident>) {
        match self {
            Formula::Eq(a, b) => {
                acc.extend(a.vars());
                acc.extend(b.vars());
            }
            Formula::Bot => {}
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_names(acc);
                b.collect_names(acc);
            }
            Formula::All(x, f) | Formula::Ex(x, f) => {
                acc.insert(x.clone());
                f.collect_names(acc);
            }
        }
    }

    /// Capture-checking simultaneous substitution. Returns `None` exactly
    /// when a free variable of a substituted term would be captured by a
    /// binder of the formula.
    pub fn subst(&self, map: &BTreeMap<Ident, Term>) -> Option<Formula> {
        if map.is_empty() {
            return Some(self.clone());
        }
        match self {
            Formula::Eq(a, b) => Some(eq(a.subst(map), b.subst(map))),
            Formula::Bot => Some(Formula::Bot),
            Formula::And(a, b) => Some(and(a.subst(map)?, b.subst(map)?)),
            Formula::Or(a, b) => Some(or(a.subst(map)?, b.subst(map)?)),
            Formula::Imp(a, b) => Some(imp(a.subst(map)?, b.subst(map)?)),
            Formula::All(x, f) | Formula::Ex(x, f) => {
                let mut inner = map.clone();
                inner.remove(x);
                // capture check: a relevant substituted term may not contain x
                let free_inner = f.free_vars();
                for (v, t) in &inner {
                    if v != x && free_inner.contains(v) && t.vars().contains(x) {
                        return None;
                    }
                }
                let body = f.subst(&inner)?;
                Some(match self {
                    Formula::All(..) => all(x, body),
                    _ => ex(x, body),
                })
            }
        }
    }

    pub fn subst1(&self, t: &Term, x: &str) -> Option<Formula> {
        let mut m = BTreeMap::new();
        m.insert(x.to_string(), t.clone());
        self.subst(&m)
    }
}

/// Picks a name based on `base` that does not occur in `used`, by appending
/// a numeric suffix if necessary.
pub fn fresh(base: &str, used: &BTreeSet<Ident>) -> Ident {
    if !used.contains(base) {
        return base.to_string();
    }
    for i in 1.. {
        let cand = format!("{base}{i}");
        if !used.contains(&cand) {
            return cand;
        }
    }
    unreachable!()
}

// --- derived-pattern recognition ---------------------------------------

/// Recognises `ex z. b = a + S z` and returns `(a, b)`, the operands of the
/// strict order `a < b`.
pub fn as_lt(f: &Formula) -> Option<(&Term, &Term)> {
    if let Formula::Ex(z, body) = f {
        if let Formula::Eq(b, rhs) = body.as_ref() {
            if let Term::Add(a, sz) = rhs {
                if let Term::Succ(zv) = sz.as_ref() {
                    if zv.as_ref() == &Term::Var(z.clone())
                        && !a.vars().contains(z)
                        && !b.vars().contains(z)
                    {
                        return Some((a, b));
                    }
                }
            }
        }
    }
    None
}

/// Recognises the bounded universal pattern `all x. x < t -> f` with `x` not
/// free in `t`. Returns `(x, t, f)`.
pub fn as_bounded_all(f: &Formula) -> Option<(&Ident, &Term, &Formula)> {
    if let Formula::All(x, body) = f {
        if let Formula::Imp(guard, inner) = body.as_ref() {
            if let Some((a, t)) = as_lt(guard) {
                if a == &Term::Var(x.clone()) && !t.vars().contains(x) {
                    return Some((x, t, inner));
                }
            }
        }
    }
    None
}

/// Recognises the bounded existential pattern `ex x. x < t /\ f` with `x`
/// not free in `t`.
pub fn as_bounded_ex(f: &Formula) -> Option<(&Ident, &Term, &Formula)> {
    if let Formula::Ex(x, body) = f {
        if let Formula::And(guard, inner) = body.as_ref() {
            if let Some((a, t)) = as_lt(guard) {
                if a == &Term::Var(x.clone()) && !t.vars().contains(x) {
                    return Some((x, t, inner));
                }
            }
        }
    }
    None
}

// --- complexity classification -----------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComplexityClass {
    Delta0,
    Pi(u32),
    Sigma(u32),
    Unclassified,
}

impl fmt::Display for ComplexityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexityClass::Delta0 => write!(f, "Delta0"),
            ComplexityClass::Pi(n) => write!(f, "Pi{n}"),
            ComplexityClass::Sigma(n) => write!(f, "Sigma{n}"),
            ComplexityClass::Unclassified => write!(f, "Unclassified"),
        }
    }
}

impl ComplexityClass {
    /// Containment in the hierarchy: `Delta0` sits below everything,
    /// `Sigma n` is contained in `Pi (n+1)` and vice versa.
    pub fn within(&self, bound: &ComplexityClass) -> bool {
        use ComplexityClass::*;
        match (self, bound) {
            (_, Unclassified) | (Unclassified, _) => false,
            (Delta0, _) => true,
            (Pi(_), Delta0) | (Sigma(_), Delta0) => false,
            (Pi(n), Pi(m)) => n <= m,
            (Sigma(n), Sigma(m)) => n <= m,
            (Pi(n), Sigma(m)) => *n < *m,
            (Sigma(n), Pi(m)) => *n < *m,
        }
    }
}

fn has_unbounded_quantifier(f: &Formula) -> bool {
    if as_bounded_all(f).is_some() {
        let (_, _, inner) = as_bounded_all(f).unwrap();
        return has_unbounded_quantifier(inner);
    }
    if as_bounded_ex(f).is_some() {
        let (_, _, inner) = as_bounded_ex(f).unwrap();
        return has_unbounded_quantifier(inner);
    }
    match f {
        Formula::Eq(..) | Formula::Bot => false,
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
            has_unbounded_quantifier(a) || has_unbounded_quantifier(b)
        }
        Formula::All(..) | Formula::Ex(..) => true,
    }
}

/// Classifies a formula in the arithmetic hierarchy by counting unbounded
/// quantifier alternations outermost-in; bounded quantifiers are
/// transparent. Shapes that are not a quantifier prefix over a Delta0
/// matrix are `Unclassified`.
pub fn classify(f: &Formula) -> ComplexityClass {
    use ComplexityClass::*;
    if !has_unbounded_quantifier(f) {
        return Delta0;
    }
    if let Some((_, _, inner)) = as_bounded_all(f) {
        return classify(inner);
    }
    if let Some((_, _, inner)) = as_bounded_ex(f) {
        return classify(inner);
    }
    match f {
        Formula::All(_, body) => match classify(body) {
            Delta0 => Pi(1),
            Pi(n) => Pi(n),
            Sigma(n) => Pi(n + 1),
            Unclassified => Unclassified,
        },
        Formula::Ex(_, body) => match classify(body) {
            Delta0 => Sigma(1),
            Sigma(n) => Sigma(n),
            Pi(n) => Sigma(n + 1),
            Unclassified => Unclassified,
        },
        _ => Unclassified,
    }
}

/// Membership in the least set containing `theta` and closed under bounded
/// quantification and unbounded universal quantification.
pub fn pi_member(f: &Formula, theta: &dyn Fn(&Formula) -> bool) -> bool {
    if theta(f) {
        return true;
    }
    if let Some((_, _, inner)) = as_bounded_all(f) {
        return pi_member(inner, theta);
    }
    if let Some((_, _, inner)) = as_bounded_ex(f) {
        return pi_member(inner, theta);
    }
    if let Formula::All(_, body) = f {
        return pi_member(body, theta);
    }
    false
}

/// Recognizer for implications from a conjunction of `theta`-formulas into a
/// `theta`-formula. The antecedent may be any conjunction tree over `theta`
/// members, or the unit `top`.
pub fn theta_arrow<'a>(
    theta: &'a dyn Fn(&Formula) -> bool,
) -> impl Fn(&Formula) -> bool + 'a {
    fn conj_of(f: &Formula, theta: &dyn Fn(&Formula) -> bool) -> bool {
        if *f == top() {
            return true;
        }
        if theta(f) {
            return true;
        }
        if let Formula::And(a, b) = f {
            return conj_of(a, theta) && conj_of(b, theta);
        }
        false
    }
    move |f: &Formula| {
        if let Formula::Imp(lhs, rhs) = f {
            conj_of(lhs, theta) && theta(rhs)
        } else {
            false
        }
    }
}

/// The members of a canonical conjunction: sorted, duplicate-free.
pub fn conj_members<'a>(fs: impl IntoIterator<Item = &'a Formula>) -> Vec<Formula> {
    let sorted: BTreeSet<&Formula> = fs.into_iter().collect();
    sorted.into_iter().cloned().collect()
}

/// Right-nested conjunction of the given members, in the given order;
/// the empty conjunction is `top`.
pub fn conj_list(members: &[Formula]) -> Formula {
    match members.split_first() {
        None => top(),
        Some((first, rest)) => {
            if rest.is_empty() {
                first.clone()
            } else {
                and(first.clone(), conj_list(rest))
            }
        }
    }
}

/// Conjunction of a set of formulas in the canonical structural order;
/// the empty conjunction is `top`.
pub fn conj_set<'a>(fs: impl IntoIterator<Item = &'a Formula>) -> Formula {
    conj_list(&conj_members(fs))
}

// --- negative translation ----------------------------------------------

/// The Gödel–Gentzen negative translation: atoms and existential/disjunctive
/// connectives are double-negated, everything else is homomorphic.
pub fn godel_gentzen(f: &Formula) -> Formula {
    match f {
        Formula::Bot => bot(),
        Formula::Eq(a, b) => neg(neg(eq(a.clone(), b.clone()))),
        Formula::And(a, b) => and(godel_gentzen(a), godel_gentzen(b)),
        Formula::Or(a, b) => neg(and(neg(godel_gentzen(a)), neg(godel_gentzen(b)))),
        Formula::Imp(a, b) => imp(godel_gentzen(a), godel_gentzen(b)),
        Formula::All(x, body) => all(x, godel_gentzen(body)),
        Formula::Ex(x, body) => neg(all(x, neg(godel_gentzen(body)))),
    }
}

// --- printing and parsing ----------------------------------------------

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(x) => write!(f, "{x}"),
            Term::Zero => write!(f, "0"),
            Term::Succ(t) => write!(f, "(s {t})"),
            Term::Add(a, b) => write!(f, "(+ {a} {b})"),
            Term::Mul(a, b) => write!(f, "(* {a} {b})"),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Eq(a, b) => write!(f, "(= {a} {b})"),
            Formula::Bot => write!(f, "bot"),
            Formula::And(a, b) => write!(f, "(and {a} {b})"),
            Formula::Or(a, b) => write!(f, "(or {a} {b})"),
            Formula::Imp(a, b) => write!(f, "(imp {a} {b})"),
            Formula::All(x, body) => write!(f, "(all {x} {body})"),
            Formula::Ex(x, body) => write!(f, "(ex {x} {body})"),
        }
    }
}

fn ident_ok(s: &str) -> bool {
    !s.is_empty()
        && s != "0"
        && !matches!(s, "s" | "+" | "*" | "=" | "bot" | "and" | "or" | "imp" | "all" | "ex")
        && s.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

pub fn term_from_sexp(s: &Sexp) -> Result<Term, ParseError> {
    match s {
        Sexp::Atom(a, pos) => {
            if a == "0" {
                Ok(Term::Zero)
            } else if ident_ok(a) {
                Ok(Term::Var(a.clone()))
            } else {
                err(*pos, format!("invalid term atom `{a}`"))
            }
        }
        Sexp::List(items, pos) => {
            let head = items
                .first()
                .and_then(|h| h.atom())
                .ok_or_else(|| ParseError { pos: *pos, msg: "expected term operator".into() })?;
            match (head, items.len()) {
                ("s", 2) => Ok(succ(term_from_sexp(&items[1])?)),
                ("+", 3) => Ok(add(term_from_sexp(&items[1])?, term_from_sexp(&items[2])?)),
                ("*", 3) => Ok(mul(term_from_sexp(&items[1])?, term_from_sexp(&items[2])?)),
                _ => err(*pos, format!("invalid term form `{head}`")),
            }
        }
    }
}

pub fn formula_from_sexp(s: &Sexp) -> Result<Formula, ParseError> {
    match s {
        Sexp::Atom(a, pos) => {
            if a == "bot" {
                Ok(bot())
            } else {
                err(*pos, format!("invalid formula atom `{a}`"))
            }
        }
        Sexp::List(items, pos) => {
            let head = items
                .first()
                .and_then(|h| h.atom())
                .ok_or_else(|| ParseError { pos: *pos, msg: "expected formula operator".into() })?;
            let binder = |items: &[Sexp]| -> Result<(Ident, Formula), ParseError> {
                let x = items[1]
                    .atom()
                    .filter(|a| ident_ok(a))
                    .ok_or_else(|| ParseError { pos: items[1].pos(), msg: "expected variable".into() })?;
                Ok((x.to_string(), formula_from_sexp(&items[2])?))
            };
            match (head, items.len()) {
                ("=", 3) => Ok(eq(term_from_sexp(&items[1])?, term_from_sexp(&items[2])?)),
                ("and", 3) => Ok(and(formula_from_sexp(&items[1])?, formula_from_sexp(&items[2])?)),
                ("or", 3) => Ok(or(formula_from_sexp(&items[1])?, formula_from_sexp(&items[2])?)),
                ("imp", 3) => Ok(imp(formula_from_sexp(&items[1])?, formula_from_sexp(&items[2])?)),
                ("all", 3) => {
                    let (x, body) = binder(items)?;
                    Ok(all(&x, body))
                }
                ("ex", 3) => {
                    let (x, body) = binder(items)?;
                    Ok(ex(&x, body))
                }
                _ => err(*pos, format!("invalid formula form `{head}`")),
            }
        }
    }
}

pub fn parse_term(input: &str) -> Result<Term, ParseError> {
    term_from_sexp(&sexp::parse_one(input)?)
}

pub fn parse_formula(input: &str) -> Result<Formula, ParseError> {
    formula_from_sexp(&sexp::parse_one(input)?)
}
