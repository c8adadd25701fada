//! Many-sorted first-order formulas and the signatures they are checked
//! against.
//!
//! Terms are variables only: function symbols are treated as special relation
//! symbols, so an atomic formula is always a relation symbol applied to
//! variables.  Formulas print as s-expressions in the same syntax accepted by
//! [`crate::parse::parse`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SortError {
    #[error("unknown sort `{0}`")]
    UnknownSort(String),
    #[error("unknown relation `{0}`")]
    UnknownRelation(String),
    #[error("variable `{0}` is not declared")]
    UnknownVariable(String),
    #[error("relation `{relation}` takes {expected} arguments, got {got}")]
    ArityMismatch {
        relation: String,
        expected: usize,
        got: usize,
    },
    #[error("argument {position} of `{relation}` must have sort `{expected}`, got `{got}`")]
    ArgumentSort {
        relation: String,
        position: usize,
        expected: String,
        got: String,
    },
    #[error("cannot equate `{left}` of sort `{left_sort}` with `{right}` of sort `{right_sort}`")]
    EqualitySort {
        left: String,
        left_sort: String,
        right: String,
        right_sort: String,
    },
    #[error("relation `{0}` is declared twice with different argument sorts")]
    ConflictingRelation(String),
}

/// A sorted variable, used for quantifier binders and definition parameters.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Var {
    pub name: String,
    pub sort: String,
}

impl Var {
    pub fn new(name: impl Into<String>, sort: impl Into<String>) -> Self {
        Var {
            name: name.into(),
            sort: sort.into(),
        }
    }
}

/// The sorts and sorted relation symbols a formula may mention.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    sorts: BTreeSet<String>,
    relations: BTreeMap<String, Vec<String>>,
}

impl Signature {
    /// Build a signature in one go; every relation argument sort must be
    /// among `sorts`.
    pub fn new(sorts: &[&str], relations: &[(&str, &[&str])]) -> Result<Self, SortError> {
        let mut sig = Signature::default();
        for s in sorts {
            sig.add_sort(*s);
        }
        for (name, args) in relations {
            sig.add_relation(*name, args.iter().map(|a| a.to_string()).collect())?;
        }
        Ok(sig)
    }

    pub fn add_sort(&mut self, name: impl Into<String>) {
        self.sorts.insert(name.into());
    }

    pub fn add_relation(&mut self, name: impl Into<String>, args: Vec<String>) -> Result<(), SortError> {
        for a in &args {
            if !self.sorts.contains(a) {
                return Err(SortError::UnknownSort(a.clone()));
            }
        }
        let name = name.into();
        match self.relations.get(&name) {
            Some(existing) if *existing != args => Err(SortError::ConflictingRelation(name)),
            _ => {
                self.relations.insert(name, args);
                Ok(())
            }
        }
    }

    pub fn has_sort(&self, name: &str) -> bool {
        self.sorts.contains(name)
    }

    pub fn relation(&self, name: &str) -> Option<&[String]> {
        self.relations.get(name).map(Vec::as_slice)
    }

    pub fn sorts(&self) -> impl Iterator<Item = &str> {
        self.sorts.iter().map(String::as_str)
    }

    pub fn relations(&self) -> impl Iterator<Item = (&str, &[String])> {
        self.relations.iter().map(|(n, a)| (n.as_str(), a.as_slice()))
    }

    /// Union of two signatures; relation symbols present in both must agree
    /// on their argument sorts.
    pub fn union(&self, other: &Signature) -> Result<Signature, SortError> {
        let mut out = self.clone();
        for s in &other.sorts {
            out.add_sort(s.clone());
        }
        for (n, a) in &other.relations {
            out.add_relation(n.clone(), a.clone())?;
        }
        Ok(out)
    }

    /// Check that `f` is well-sorted when its free variables carry the sorts
    /// declared in `free`.
    pub fn validate(&self, f: &Formula, free: &BTreeMap<String, String>) -> Result<(), SortError> {
        for (_, sort) in free {
            if !self.has_sort(sort) {
                return Err(SortError::UnknownSort(sort.clone()));
            }
        }
        let mut env = free.clone();
        self.validate_in(f, &mut env)
    }

    fn validate_in(&self, f: &Formula, env: &mut BTreeMap<String, String>) -> Result<(), SortError> {
        match f {
            Formula::Rel(name, args) => {
                let decl = self
                    .relation(name)
                    .ok_or_else(|| SortError::UnknownRelation(name.clone()))?;
                if decl.len() != args.len() {
                    return Err(SortError::ArityMismatch {
                        relation: name.clone(),
                        expected: decl.len(),
                        got: args.len(),
                    });
                }
                for (i, (arg, want)) in args.iter().zip(decl).enumerate() {
                    let got = env
                        .get(arg)
                        .ok_or_else(|| SortError::UnknownVariable(arg.clone()))?;
                    if got != want {
                        return Err(SortError::ArgumentSort {
                            relation: name.clone(),
                            position: i + 1,
                            expected: want.clone(),
                            got: got.clone(),
                        });
                    }
                }
                Ok(())
            }
            Formula::Eq(a, b) => {
                let sa = env
                    .get(a)
                    .ok_or_else(|| SortError::UnknownVariable(a.clone()))?;
                let sb = env
                    .get(b)
                    .ok_or_else(|| SortError::UnknownVariable(b.clone()))?;
                if sa != sb {
                    return Err(SortError::EqualitySort {
                        left: a.clone(),
                        left_sort: sa.clone(),
                        right: b.clone(),
                        right_sort: sb.clone(),
                    });
                }
                Ok(())
            }
            Formula::Not(inner) => self.validate_in(inner, env),
            Formula::And(items) | Formula::Or(items) => {
                items.iter().try_for_each(|i| self.validate_in(i, env))
            }
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                self.validate_in(a, env)?;
                self.validate_in(b, env)
            }
            Formula::Exists(binders, body) | Formula::Forall(binders, body) => {
                let mut shadowed = Vec::with_capacity(binders.len());
                for v in binders {
                    if !self.has_sort(&v.sort) {
                        return Err(SortError::UnknownSort(v.sort.clone()));
                    }
                    shadowed.push((v.name.clone(), env.insert(v.name.clone(), v.sort.clone())));
                }
                let result = self.validate_in(body, env);
                for (name, old) in shadowed.into_iter().rev() {
                    match old {
                        Some(s) => env.insert(name, s),
                        None => env.remove(&name),
                    };
                }
                result
            }
        }
    }
}

/// A many-sorted first-order formula.  Atoms apply a relation symbol to
/// variables; equality is available at every sort.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Formula {
    Rel(String, Vec<String>),
    Eq(String, String),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Exists(Vec<Var>, Box<Formula>),
    Forall(Vec<Var>, Box<Formula>),
}

impl Formula {
    pub fn rel(name: impl Into<String>, args: &[&str]) -> Formula {
        Formula::Rel(name.into(), args.iter().map(|a| a.to_string()).collect())
    }

    pub fn eq(a: impl Into<String>, b: impl Into<String>) -> Formula {
        Formula::Eq(a.into(), b.into())
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(items: Vec<Formula>) -> Formula {
        Formula::And(items)
    }

    pub fn or(items: Vec<Formula>) -> Formula {
        Formula::Or(items)
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn exists(binders: Vec<Var>, body: Formula) -> Formula {
        Formula::Exists(binders, Box::new(body))
    }

    pub fn forall(binders: Vec<Var>, body: Formula) -> Formula {
        Formula::Forall(binders, Box::new(body))
    }

    /// Names of the free variables of the formula.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Rel(_, args) => {
                for a in args {
                    if !bound.contains(a) {
                        out.insert(a.clone());
                    }
                }
            }
            Formula::Eq(a, b) => {
                for v in [a, b] {
                    if !bound.contains(v) {
                        out.insert(v.clone());
                    }
                }
            }
            Formula::Not(inner) => inner.collect_free(bound, out),
            Formula::And(items) | Formula::Or(items) => {
                for i in items {
                    i.collect_free(bound, out);
                }
            }
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Exists(binders, body) | Formula::Forall(binders, body) => {
                let depth = bound.len();
                bound.extend(binders.iter().map(|v| v.name.clone()));
                body.collect_free(bound, out);
                bound.truncate(depth);
            }
        }
    }

    /// Every variable name occurring in the formula, free or bound.
    pub fn all_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Rel(_, args) => out.extend(args.iter().cloned()),
            Formula::Eq(a, b) => {
                out.insert(a.clone());
                out.insert(b.clone());
            }
            Formula::Not(inner) => inner.collect_names(out),
            Formula::And(items) | Formula::Or(items) => {
                for i in items {
                    i.collect_names(out);
                }
            }
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_names(out);
                b.collect_names(out);
            }
            Formula::Exists(binders, body) | Formula::Forall(binders, body) => {
                out.extend(binders.iter().map(|v| v.name.clone()));
                body.collect_names(out);
            }
        }
    }

    /// Quantifier depth: the longest chain of nested quantifier blocks.
    pub fn quantifier_depth(&self) -> usize {
        match self {
            Formula::Rel(..) | Formula::Eq(..) => 0,
            Formula::Not(inner) => inner.quantifier_depth(),
            Formula::And(items) | Formula::Or(items) => {
                items.iter().map(Formula::quantifier_depth).max().unwrap_or(0)
            }
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.quantifier_depth().max(b.quantifier_depth())
            }
            Formula::Exists(_, body) | Formula::Forall(_, body) => 1 + body.quantifier_depth(),
        }
    }

    /// Rename free occurrences of variables according to `map`, α-renaming
    /// binders where a straight rename would capture.
    pub fn rename_free(&self, map: &BTreeMap<String, String>) -> Formula {
        let mut taken: BTreeSet<String> = self.all_names();
        taken.extend(map.values().cloned());
        self.rename_in(map, &mut taken)
    }

    fn rename_in(&self, map: &BTreeMap<String, String>, taken: &mut BTreeSet<String>) -> Formula {
        if map.is_empty() {
            return self.clone();
        }
        let subst = |name: &String| map.get(name).unwrap_or(name).clone();
        match self {
            Formula::Rel(r, args) => Formula::Rel(r.clone(), args.iter().map(subst).collect()),
            Formula::Eq(a, b) => Formula::Eq(subst(a), subst(b)),
            Formula::Not(inner) => Formula::not(inner.rename_in(map, taken)),
            Formula::And(items) => {
                Formula::And(items.iter().map(|i| i.rename_in(map, taken)).collect())
            }
            Formula::Or(items) => {
                Formula::Or(items.iter().map(|i| i.rename_in(map, taken)).collect())
            }
            Formula::Implies(a, b) => {
                Formula::implies(a.rename_in(map, taken), b.rename_in(map, taken))
            }
            Formula::Iff(a, b) => Formula::iff(a.rename_in(map, taken), b.rename_in(map, taken)),
            Formula::Exists(binders, body) => {
                let (binders, body) = rename_under(binders, body, map, taken);
                Formula::Exists(binders, Box::new(body))
            }
            Formula::Forall(binders, body) => {
                let (binders, body) = rename_under(binders, body, map, taken);
                Formula::Forall(binders, Box::new(body))
            }
        }
    }
}

fn rename_under(
    binders: &[Var],
    body: &Formula,
    map: &BTreeMap<String, String>,
    taken: &mut BTreeSet<String>,
) -> (Vec<Var>, Formula) {
    let mut inner = map.clone();
    let mut new_binders = Vec::with_capacity(binders.len());
    for v in binders {
        inner.remove(&v.name);
        // A binder whose name collides with an incoming replacement would
        // capture it; rename the binder out of the way first.
        let name = if inner.values().any(|img| *img == v.name) {
            let fresh = fresh_name(&v.name, taken);
            inner.insert(v.name.clone(), fresh.clone());
            fresh
        } else {
            v.name.clone()
        };
        new_binders.push(Var::new(name, v.sort.clone()));
    }
    let body = body.rename_in(&inner, taken);
    (new_binders, body)
}

/// First name of the shape `base`, `base_2`, `base_3`, … not yet in `taken`;
/// the chosen name is recorded as taken.
pub(crate) fn fresh_name(base: &str, taken: &mut BTreeSet<String>) -> String {
    if taken.insert(base.to_string()) {
        return base.to_string();
    }
    let mut n = 2usize;
    loop {
        let candidate = format!("{base}_{n}");
        if taken.insert(candidate.clone()) {
            return candidate;
        }
        n += 1;
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Rel(name, args) => {
                write!(f, "({name}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                write!(f, ")")
            }
            Formula::Eq(a, b) => write!(f, "(= {a} {b})"),
            Formula::Not(inner) => write!(f, "(not {inner})"),
            Formula::And(items) => write_list(f, "and", items),
            Formula::Or(items) => write_list(f, "or", items),
            Formula::Implies(a, b) => write!(f, "(-> {a} {b})"),
            Formula::Iff(a, b) => write!(f, "(<-> {a} {b})"),
            Formula::Exists(binders, body) => write_quant(f, "exists", binders, body),
            Formula::Forall(binders, body) => write_quant(f, "forall", binders, body),
        }
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, op: &str, items: &[Formula]) -> fmt::Result {
    write!(f, "({op}")?;
    for i in items {
        write!(f, " {i}")?;
    }
    write!(f, ")")
}

fn write_quant(f: &mut fmt::Formatter<'_>, op: &str, binders: &[Var], body: &Formula) -> fmt::Result {
    write!(f, "({op} ")?;
    if let [v] = binders {
        write!(f, "({} {})", v.name, v.sort)?;
    } else {
        write!(f, "(")?;
        for (i, v) in binders.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "({} {})", v.name, v.sort)?;
        }
        write!(f, ")")?;
    }
    write!(f, " {body})")
}

impl Formula {
    /// Indented multi-line rendering; long subformulas break onto their own
    /// lines, short ones stay inline.  Reparsing the output yields the same
    /// formula.
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        self.pretty_in(0, &mut out);
        out
    }

    fn pretty_in(&self, indent: usize, out: &mut String) {
        const WIDTH: usize = 88;
        let flat = self.to_string();
        if indent + flat.len() <= WIDTH {
            out.push_str(&flat);
            return;
        }
        let pad = " ".repeat(indent + 2);
        let break_args = |args: &[Formula], head: String, out: &mut String| {
            out.push_str(&head);
            for a in args {
                out.push('\n');
                out.push_str(&pad);
                a.pretty_in(indent + 2, out);
            }
            out.push(')');
        };
        match self {
            Formula::Rel(..) | Formula::Eq(..) => out.push_str(&flat),
            Formula::Not(inner) => break_args(std::slice::from_ref(inner), "(not".into(), out),
            Formula::And(items) => break_args(items, "(and".into(), out),
            Formula::Or(items) => break_args(items, "(or".into(), out),
            Formula::Implies(a, b) => {
                break_args(&[(**a).clone(), (**b).clone()], "(->".into(), out)
            }
            Formula::Iff(a, b) => break_args(&[(**a).clone(), (**b).clone()], "(<->".into(), out),
            Formula::Exists(binders, body) | Formula::Forall(binders, body) => {
                let op = if matches!(self, Formula::Exists(..)) {
                    "exists"
                } else {
                    "forall"
                };
                let mut head = format!("({op} ");
                if let [v] = binders.as_slice() {
                    head.push_str(&format!("({} {})", v.name, v.sort));
                } else {
                    head.push('(');
                    for (i, v) in binders.iter().enumerate() {
                        if i > 0 {
                            head.push(' ');
                        }
                        head.push_str(&format!("({} {})", v.name, v.sort));
                    }
                    head.push(')');
                }
                break_args(std::slice::from_ref(body), head, out);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn affine_sig() -> Signature {
        Signature::new(
            &["Points", "Lines"],
            &[("I", &["Points", "Lines"]), ("Col", &["Points", "Points", "Points"])],
        )
        .unwrap()
    }

    #[test]
    fn display_round_structure() {
        let f = Formula::forall(
            vec![Var::new("x", "Points")],
            Formula::exists(
                vec![Var::new("l", "Lines")],
                Formula::rel("I", &["x", "l"]),
            ),
        );
        assert_eq!(
            f.to_string(),
            "(forall (x Points) (exists (l Lines) (I x l)))"
        );
        let two = Formula::exists(
            vec![Var::new("p", "Points"), Var::new("q", "Points")],
            Formula::not(Formula::eq("p", "q")),
        );
        assert_eq!(
            two.to_string(),
            "(exists ((p Points) (q Points)) (not (= p q)))"
        );
    }

    #[test]
    fn validation_accepts_and_rejects() {
        let sig = affine_sig();
        let ok = Formula::forall(
            vec![Var::new("x", "Points")],
            Formula::exists(vec![Var::new("l", "Lines")], Formula::rel("I", &["x", "l"])),
        );
        sig.validate(&ok, &BTreeMap::new()).unwrap();

        let swapped = Formula::rel("I", &["l", "x"]);
        let free: BTreeMap<String, String> = [
            ("x".to_string(), "Points".to_string()),
            ("l".to_string(), "Lines".to_string()),
        ]
        .into();
        assert!(matches!(
            sig.validate(&swapped, &free),
            Err(SortError::ArgumentSort { position: 1, .. })
        ));

        let cross_sort_eq = Formula::eq("x", "l");
        assert!(matches!(
            sig.validate(&cross_sort_eq, &free),
            Err(SortError::EqualitySort { .. })
        ));
    }

    #[test]
    fn shadowing_rebinds_the_inner_sort() {
        let sig = affine_sig();
        // Outer x ranges over lines, inner binder shadows it with a point.
        let f = Formula::forall(
            vec![Var::new("x", "Lines")],
            Formula::exists(vec![Var::new("x", "Points")], Formula::rel("Col", &["x", "x", "x"])),
        );
        sig.validate(&f, &BTreeMap::new()).unwrap();
    }

    #[test]
    fn free_variable_collection_respects_binders() {
        let f = Formula::exists(
            vec![Var::new("l", "Lines")],
            Formula::and(vec![
                Formula::rel("I", &["x", "l"]),
                Formula::rel("I", &["y", "l"]),
            ]),
        );
        let free = f.free_vars();
        assert_eq!(free.into_iter().collect::<Vec<_>>(), ["x", "y"]);
        assert_eq!(f.quantifier_depth(), 1);
    }

    #[test]
    fn renaming_avoids_capture() {
        // Renaming x -> l under a binder named l must rename the binder.
        let f = Formula::exists(
            vec![Var::new("l", "Lines")],
            Formula::rel("I", &["x", "l"]),
        );
        let map: BTreeMap<String, String> = [("x".to_string(), "l".to_string())].into();
        let renamed = f.rename_free(&map);
        match &renamed {
            Formula::Exists(binders, body) => {
                assert_ne!(binders[0].name, "l");
                assert_eq!(
                    **body,
                    Formula::Rel("I".into(), vec!["l".into(), binders[0].name.clone()])
                );
            }
            other => panic!("unexpected shape: {other}"),
        }
    }

    #[test]
    fn pretty_breaks_long_conjunctions() {
        let atom = |n: &str| Formula::rel("Col", &[n, n, n]);
        let long = Formula::and((0..12).map(|_| atom("some_rather_long_name")).collect());
        let pretty = long.pretty();
        assert!(pretty.lines().count() > 1);
        assert!(pretty.starts_with("(and\n"));
    }
}
