//! Interpretations between many-sorted signatures.
//!
//! An [`InterpretationSpec`] maps a source signature into a target signature.
//! Source sorts either also exist in the target (they are *kept*) or are
//! *defined*: a defined sort's variables are matched to a tuple of
//! target-sort component variables, a domain formula `delta` says which
//! tuples represent an element, and an equivalence formula `epsilon` says
//! when two tuples represent the same element.  Every source relation gets a
//! defining formula over the target language.
//!
//! [`InterpretationSpec::translate`] rewrites a source formula structurally:
//! quantifiers over a defined sort become guarded tuple quantifiers,
//! equality at a defined sort becomes `epsilon`, and atoms become their
//! defining formulas.  [`InterpretationSpec::delta_sentences`] produces the
//! definitional-extension sentences that say the same thing with an explicit
//! representation relation `pi` instead of variable matching.

use std::collections::{BTreeMap, BTreeSet};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::parse::parse;
use crate::syntax::{fresh_name, Formula, Signature, SortError, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("source sort `{0}` is neither shared with the target nor defined")]
    UnmappedSort(String),
    #[error("no defining formula for `{0}`")]
    MissingDefinition(String),
    #[error("definition of sort `{sort}`: {why}")]
    BadSortDef { sort: String, why: String },
    #[error("definition of relation `{rel}`: {why}")]
    BadRelDef { rel: String, why: String },
    #[error(transparent)]
    Sort(#[from] SortError),
}

/// How a defined source sort is represented in the target language.
///
/// A variable `v` of the defined sort is matched to component variables
/// named `v_{label}`, one per entry of `components`; `delta` and `epsilon`
/// are written over the bare labels (and, for `epsilon`, the labels with a
/// `'` suffix for the second copy).  An equality `a = b` at this sort
/// translates to `epsilon` with `b`'s components for the bare labels and
/// `a`'s for the primed ones — so an `epsilon` phrased as "the primed tuple
/// represents the bare tuple's element" prints in the conventional order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SortDef {
    pub name: String,
    /// Preferred variable name for this sort in generated sentences.
    pub var_hint: String,
    /// Component labels and their target sorts; the matching arity is the
    /// length of this list.
    pub components: Vec<(String, String)>,
    pub delta: Formula,
    pub epsilon: Formula,
}

impl SortDef {
    fn labels(&self) -> Vec<&str> {
        self.components.iter().map(|(l, _)| l.as_str()).collect()
    }

    fn primed(&self) -> Vec<String> {
        self.components.iter().map(|(l, _)| format!("{l}'")).collect()
    }

    fn delta_decls(&self) -> BTreeMap<String, String> {
        self.components
            .iter()
            .map(|(l, s)| (l.clone(), s.clone()))
            .collect()
    }

    fn epsilon_decls(&self) -> BTreeMap<String, String> {
        let mut decls = self.delta_decls();
        for (l, s) in &self.components {
            decls.insert(format!("{l}'"), s.clone());
        }
        decls
    }

    fn instantiate_delta(&self, args: &[String]) -> Formula {
        let map = self
            .labels()
            .into_iter()
            .map(String::from)
            .zip(args.iter().cloned())
            .collect();
        self.delta.rename_free(&map)
    }

    fn instantiate_epsilon(&self, left: &[String], right: &[String]) -> Formula {
        let mut map: BTreeMap<String, String> = self
            .labels()
            .into_iter()
            .map(String::from)
            .zip(left.iter().cloned())
            .collect();
        for (l, r) in self.primed().into_iter().zip(right) {
            map.insert(l, r.clone());
        }
        self.epsilon.rename_free(&map)
    }
}

/// Defining formula for one source relation.
///
/// `params` names the relation's argument slots with their source sorts;
/// `body` is a target formula whose free variables are the kept params by
/// name and, for each defined-sort param `v`, the components `v_{label}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelDef {
    pub name: String,
    pub params: Vec<Var>,
    pub body: Formula,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterpretationSpec {
    pub source: Signature,
    pub target: Signature,
    /// Definitions of source sorts absent from the target, keyed by name.
    pub sorts: BTreeMap<String, SortDef>,
    /// Defining formulas, keyed by source relation name.
    pub relations: BTreeMap<String, RelDef>,
}

impl InterpretationSpec {
    pub fn new(
        source: Signature,
        target: Signature,
        sorts: Vec<SortDef>,
        relations: Vec<RelDef>,
    ) -> Result<Self, SpecError> {
        let spec = InterpretationSpec {
            source,
            target,
            sorts: sorts.into_iter().map(|d| (d.name.clone(), d)).collect(),
            relations: relations.into_iter().map(|d| (d.name.clone(), d)).collect(),
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Check the whole spec: sort coverage, component sorts, well-sortedness
    /// of `delta`/`epsilon`/relation bodies, and arity agreement.
    pub fn validate(&self) -> Result<(), SpecError> {
        for sort in self.source.sorts() {
            if !self.target.has_sort(sort) && !self.sorts.contains_key(sort) {
                return Err(SpecError::UnmappedSort(sort.to_string()));
            }
        }
        for (name, def) in &self.sorts {
            let bad = |why: &str| SpecError::BadSortDef {
                sort: name.clone(),
                why: why.to_string(),
            };
            if def.name != *name {
                return Err(bad("key and definition name disagree"));
            }
            if !self.source.has_sort(name) {
                return Err(bad("not a source sort"));
            }
            if self.target.has_sort(name) {
                return Err(bad("shadows a target sort of the same name"));
            }
            if def.components.is_empty() {
                return Err(bad("matching arity must be at least 1"));
            }
            if def.var_hint.is_empty() {
                return Err(bad("empty variable hint"));
            }
            let mut seen = BTreeSet::new();
            for (label, csort) in &def.components {
                if !seen.insert(label) {
                    return Err(bad("duplicate component label"));
                }
                if !self.target.has_sort(csort) {
                    return Err(bad("component sort is not a target sort"));
                }
            }
            self.target.validate(&def.delta, &def.delta_decls())?;
            self.target.validate(&def.epsilon, &def.epsilon_decls())?;
        }
        for (name, def) in &self.relations {
            let bad = |why: String| SpecError::BadRelDef {
                rel: name.clone(),
                why,
            };
            if def.name != *name {
                return Err(bad("key and definition name disagree".into()));
            }
            let decl = self
                .source
                .relation(name)
                .ok_or_else(|| bad("not a source relation".into()))?;
            if decl.len() != def.params.len() {
                return Err(bad(format!(
                    "expected {} params, got {}",
                    decl.len(),
                    def.params.len()
                )));
            }
            let mut decls = BTreeMap::new();
            for (param, want) in def.params.iter().zip(decl) {
                if param.sort != *want {
                    return Err(bad(format!(
                        "param `{}` must have sort `{want}`, not `{}`",
                        param.name, param.sort
                    )));
                }
                match self.sorts.get(&param.sort) {
                    None => {
                        decls.insert(param.name.clone(), param.sort.clone());
                    }
                    Some(sdef) => {
                        for (label, csort) in &sdef.components {
                            decls.insert(format!("{}_{label}", param.name), csort.clone());
                        }
                    }
                }
            }
            self.target.validate(&def.body, &decls)?;
        }
        for rel in self.source.relations().map(|(n, _)| n) {
            if !self.relations.contains_key(rel) {
                return Err(SpecError::MissingDefinition(rel.to_string()));
            }
        }
        Ok(())
    }

    /// Translate a source formula whose free variables are declared in
    /// `free` into the target language.
    pub fn translate(&self, f: &Formula, free: &[(&str, &str)]) -> Result<Formula, SpecError> {
        self.translate_with_map(f, free).map(|(f, _)| f)
    }

    /// Like [`translate`](Self::translate), additionally returning the image
    /// of each free variable: its own name for a kept sort, the generated
    /// component names for a defined sort.
    pub fn translate_with_map(
        &self,
        f: &Formula,
        free: &[(&str, &str)],
    ) -> Result<(Formula, BTreeMap<String, Vec<String>>), SpecError> {
        let decls: BTreeMap<String, String> = free
            .iter()
            .map(|(n, s)| (n.to_string(), s.to_string()))
            .collect();
        self.source.validate(f, &decls)?;

        let mut taken = f.all_names();
        taken.extend(decls.keys().cloned());
        let mut env: BTreeMap<String, Image> = BTreeMap::new();
        let mut free_map = BTreeMap::new();
        for (name, sort) in &decls {
            let image = self.image_for(name, sort, &mut taken)?;
            free_map.insert(name.clone(), image.names());
            env.insert(name.clone(), image);
        }
        let out = self.translate_in(f, &mut env, &mut taken)?;
        Ok((out, free_map))
    }

    fn image_for(
        &self,
        name: &str,
        sort: &str,
        taken: &mut BTreeSet<String>,
    ) -> Result<Image, SpecError> {
        if let Some(def) = self.sorts.get(sort) {
            let comps = def
                .components
                .iter()
                .map(|(label, csort)| {
                    (fresh_name(&format!("{name}_{label}"), taken), csort.clone())
                })
                .collect();
            Ok(Image::Tuple(sort.to_string(), comps))
        } else if self.target.has_sort(sort) {
            Ok(Image::Kept(name.to_string()))
        } else {
            Err(SpecError::UnmappedSort(sort.to_string()))
        }
    }

    fn translate_in(
        &self,
        f: &Formula,
        env: &mut BTreeMap<String, Image>,
        taken: &mut BTreeSet<String>,
    ) -> Result<Formula, SpecError> {
        match f {
            Formula::Rel(name, args) => {
                let def = self
                    .relations
                    .get(name)
                    .ok_or_else(|| SpecError::MissingDefinition(name.clone()))?;
                let mut map = BTreeMap::new();
                for (param, arg) in def.params.iter().zip(args) {
                    let image = env.get(arg).expect("validated formula");
                    match (self.sorts.get(&param.sort), image) {
                        (None, Image::Kept(n)) => {
                            map.insert(param.name.clone(), n.clone());
                        }
                        (Some(sdef), Image::Tuple(_, comps)) => {
                            for ((label, _), (comp, _)) in sdef.components.iter().zip(comps) {
                                map.insert(format!("{}_{label}", param.name), comp.clone());
                            }
                        }
                        _ => unreachable!("validated formula matches the spec"),
                    }
                }
                Ok(def.body.rename_free(&map))
            }
            Formula::Eq(a, b) => {
                let ia = env.get(a).expect("validated formula").clone();
                let ib = env.get(b).expect("validated formula").clone();
                match (ia, ib) {
                    (Image::Kept(x), Image::Kept(y)) => Ok(Formula::Eq(x, y)),
                    (Image::Tuple(sort, xs), Image::Tuple(_, ys)) => {
                        // "a equals b" reads as "a's tuple also represents
                        // b's element": b fills the bare labels, a the primed
                        // ones.  Any valid epsilon is symmetric, so only the
                        // printed shape depends on this.
                        let def = &self.sorts[&sort];
                        Ok(def.instantiate_epsilon(&names(&ys), &names(&xs)))
                    }
                    _ => unreachable!("validated equality joins one sort"),
                }
            }
            Formula::Not(inner) => Ok(Formula::not(self.translate_in(inner, env, taken)?)),
            Formula::And(items) => Ok(Formula::And(
                items
                    .iter()
                    .map(|i| self.translate_in(i, env, taken))
                    .collect::<Result<_, _>>()?,
            )),
            Formula::Or(items) => Ok(Formula::Or(
                items
                    .iter()
                    .map(|i| self.translate_in(i, env, taken))
                    .collect::<Result<_, _>>()?,
            )),
            Formula::Implies(a, b) => Ok(Formula::implies(
                self.translate_in(a, env, taken)?,
                self.translate_in(b, env, taken)?,
            )),
            Formula::Iff(a, b) => Ok(Formula::iff(
                self.translate_in(a, env, taken)?,
                self.translate_in(b, env, taken)?,
            )),
            Formula::Exists(binders, body) => {
                let (new_binders, guards, saved) = self.enter(binders, env, taken)?;
                let tr = self.translate_in(body, env, taken);
                restore(env, saved);
                let tr = tr?;
                let body = if guards.is_empty() {
                    tr
                } else {
                    let mut items = guards;
                    items.push(tr);
                    Formula::And(items)
                };
                Ok(Formula::Exists(new_binders, Box::new(body)))
            }
            Formula::Forall(binders, body) => {
                let (new_binders, guards, saved) = self.enter(binders, env, taken)?;
                let tr = self.translate_in(body, env, taken);
                restore(env, saved);
                let tr = tr?;
                let body = match guards.len() {
                    0 => tr,
                    1 => Formula::implies(guards.into_iter().next().unwrap(), tr),
                    _ => Formula::implies(Formula::And(guards), tr),
                };
                Ok(Formula::Forall(new_binders, Box::new(body)))
            }
        }
    }

    /// Push binder images into the environment; returns the rewritten binder
    /// list, the domain guards for defined-sort binders, and the shadowed
    /// images to restore on exit.
    fn enter(
        &self,
        binders: &[Var],
        env: &mut BTreeMap<String, Image>,
        taken: &mut BTreeSet<String>,
    ) -> Result<(Vec<Var>, Vec<Formula>, Vec<(String, Option<Image>)>), SpecError> {
        let mut new_binders = Vec::new();
        let mut guards = Vec::new();
        let mut saved = Vec::new();
        for v in binders {
            let image = self.image_for(&v.name, &v.sort, taken)?;
            match &image {
                Image::Kept(n) => new_binders.push(Var::new(n.clone(), v.sort.clone())),
                Image::Tuple(sort, comps) => {
                    for (name, csort) in comps {
                        new_binders.push(Var::new(name.clone(), csort.clone()));
                    }
                    guards.push(self.sorts[sort].instantiate_delta(&names(comps)));
                }
            }
            saved.push((v.name.clone(), env.insert(v.name.clone(), image)));
        }
        Ok((new_binders, guards, saved))
    }

    /// Name of the representation relation for a defined sort in
    /// definitional-extension sentences: `pi` while unambiguous, otherwise
    /// suffixed with the sort name.
    pub fn pi_name(&self, sort: &str) -> String {
        if self.sorts.len() == 1 {
            "pi".to_string()
        } else {
            format!("pi_{sort}")
        }
    }

    /// The joint signature of the definitional extension: the target
    /// signature plus the defined sorts, their `pi` relations, and the
    /// source relations.
    pub fn joint_signature(&self) -> Result<Signature, SpecError> {
        let mut sig = self.target.clone();
        for (name, def) in &self.sorts {
            sig.add_sort(name.clone());
            let mut args: Vec<String> = def.components.iter().map(|(_, s)| s.clone()).collect();
            args.push(name.clone());
            sig.add_relation(self.pi_name(name), args)?;
        }
        for (name, decl) in self.source.relations() {
            sig.add_relation(name.to_string(), decl.to_vec())?;
        }
        Ok(sig)
    }

    /// The definitional-extension sentences: for each defined sort, the
    /// three sentences tying `pi` to equality, `epsilon`, and `delta`; then
    /// for each source relation, its biconditional definition with
    /// defined-sort arguments expressed through `pi`.
    pub fn delta_sentences(&self) -> Result<Vec<Formula>, SpecError> {
        let mut out = Vec::new();
        for (sname, def) in &self.sorts {
            let pi = self.pi_name(sname);
            let labels: Vec<String> = def.labels().into_iter().map(String::from).collect();
            let primed = def.primed();
            let mut taken: BTreeSet<String> = labels.iter().chain(&primed).cloned().collect();
            let lv = fresh_name(&def.var_hint, &mut taken);
            let lv2 = fresh_name(&format!("{}'", def.var_hint), &mut taken);
            let comp_binders: Vec<Var> = def
                .components
                .iter()
                .map(|(l, s)| Var::new(l.clone(), s.clone()))
                .collect();
            let primed_binders: Vec<Var> = def
                .components
                .iter()
                .zip(&primed)
                .map(|((_, s), p)| Var::new(p.clone(), s.clone()))
                .collect();
            let pi_atom = |args: &[String], line: &str| {
                let mut a: Vec<String> = args.to_vec();
                a.push(line.to_string());
                Formula::Rel(pi.clone(), a)
            };

            // Two tuples representing the same element name equal elements.
            out.push(Formula::forall(
                vec![
                    Var::new(lv.clone(), sname.clone()),
                    Var::new(lv2.clone(), sname.clone()),
                ],
                Formula::iff(
                    Formula::exists(
                        comp_binders.clone(),
                        Formula::and(vec![pi_atom(&labels, &lv), pi_atom(&labels, &lv2)]),
                    ),
                    Formula::eq(lv.clone(), lv2.clone()),
                ),
            ));
            // Tuples representing a common element are exactly the
            // epsilon-related ones.
            out.push(Formula::forall(
                comp_binders
                    .iter()
                    .chain(&primed_binders)
                    .cloned()
                    .collect(),
                Formula::iff(
                    Formula::exists(
                        vec![Var::new(lv.clone(), sname.clone())],
                        Formula::and(vec![pi_atom(&labels, &lv), pi_atom(&primed, &lv)]),
                    ),
                    def.epsilon.clone(),
                ),
            ));
            // Represented tuples are exactly the delta ones.
            out.push(Formula::forall(
                comp_binders.clone(),
                Formula::iff(
                    Formula::exists(
                        vec![Var::new(lv.clone(), sname.clone())],
                        pi_atom(&labels, &lv),
                    ),
                    def.delta.clone(),
                ),
            ));
        }
        for (rname, def) in &self.relations {
            let mut taken = def.body.all_names();
            taken.extend(def.params.iter().map(|p| p.name.clone()));
            let mut map = BTreeMap::new();
            let mut witnesses: Vec<(Vec<Var>, Formula)> = Vec::new();
            for param in &def.params {
                if let Some(sdef) = self.sorts.get(&param.sort) {
                    let ws: Vec<(String, String)> = sdef
                        .components
                        .iter()
                        .map(|(l, s)| (fresh_name(&format!("{l}'"), &mut taken), s.clone()))
                        .collect();
                    for ((label, _), (w, _)) in sdef.components.iter().zip(&ws) {
                        map.insert(format!("{}_{label}", param.name), w.clone());
                    }
                    let mut args: Vec<String> = ws.iter().map(|(w, _)| w.clone()).collect();
                    args.push(param.name.clone());
                    witnesses.push((
                        ws.into_iter().map(|(w, s)| Var::new(w, s)).collect(),
                        Formula::Rel(self.pi_name(&sdef.name), args),
                    ));
                }
            }
            let mut rhs = def.body.rename_free(&map);
            for (ws, pi_atom) in witnesses.into_iter().rev() {
                rhs = Formula::exists(ws, Formula::and(vec![pi_atom, rhs]));
            }
            let lhs = Formula::Rel(
                rname.clone(),
                def.params.iter().map(|p| p.name.clone()).collect(),
            );
            out.push(Formula::forall(
                def.params.clone(),
                Formula::iff(lhs, rhs),
            ));
        }
        Ok(out)
    }
}

/// Image of a source variable under translation.
#[derive(Clone, Debug)]
enum Image {
    Kept(String),
    Tuple(String, Vec<(String, String)>),
}

impl Image {
    fn names(&self) -> Vec<String> {
        match self {
            Image::Kept(n) => vec![n.clone()],
            Image::Tuple(_, comps) => comps.iter().map(|(n, _)| n.clone()).collect(),
        }
    }
}

fn names(comps: &[(String, String)]) -> Vec<String> {
    comps.iter().map(|(n, _)| n.clone()).collect()
}

fn restore(env: &mut BTreeMap<String, Image>, saved: Vec<(String, Option<Image>)>) {
    for (name, old) in saved.into_iter().rev() {
        match old {
            Some(image) => env.insert(name, image),
            None => env.remove(&name),
        };
    }
}

#[derive(Serialize, Deserialize)]
struct SortDefFile {
    name: String,
    var_hint: String,
    components: Vec<(String, String)>,
    delta: String,
    epsilon: String,
}

#[derive(Serialize, Deserialize)]
struct RelDefFile {
    name: String,
    params: Vec<(String, String)>,
    body: String,
}

#[derive(Serialize, Deserialize)]
struct SpecFile {
    source: Signature,
    target: Signature,
    sorts: Vec<SortDefFile>,
    relations: Vec<RelDefFile>,
}

impl From<&InterpretationSpec> for SpecFile {
    fn from(spec: &InterpretationSpec) -> Self {
        SpecFile {
            source: spec.source.clone(),
            target: spec.target.clone(),
            sorts: spec
                .sorts
                .values()
                .map(|d| SortDefFile {
                    name: d.name.clone(),
                    var_hint: d.var_hint.clone(),
                    components: d.components.clone(),
                    delta: d.delta.to_string(),
                    epsilon: d.epsilon.to_string(),
                })
                .collect(),
            relations: spec
                .relations
                .values()
                .map(|d| RelDefFile {
                    name: d.name.clone(),
                    params: d
                        .params
                        .iter()
                        .map(|p| (p.name.clone(), p.sort.clone()))
                        .collect(),
                    body: d.body.to_string(),
                })
                .collect(),
        }
    }
}

impl TryFrom<SpecFile> for InterpretationSpec {
    type Error = String;

    fn try_from(file: SpecFile) -> Result<Self, String> {
        let target = &file.target;
        let mut sorts = Vec::new();
        for d in file.sorts {
            let delta_decls: Vec<(&str, &str)> = d
                .components
                .iter()
                .map(|(l, s)| (l.as_str(), s.as_str()))
                .collect();
            let primed: Vec<(String, String)> = d
                .components
                .iter()
                .map(|(l, s)| (format!("{l}'"), s.clone()))
                .collect();
            let mut eps_decls = delta_decls.clone();
            eps_decls.extend(primed.iter().map(|(l, s)| (l.as_str(), s.as_str())));
            let delta = parse(target, &delta_decls, &d.delta)
                .map_err(|e| format!("sort `{}` delta: {e}", d.name))?;
            let epsilon = parse(target, &eps_decls, &d.epsilon)
                .map_err(|e| format!("sort `{}` epsilon: {e}", d.name))?;
            sorts.push(SortDef {
                name: d.name,
                var_hint: d.var_hint,
                components: d.components,
                delta,
                epsilon,
            });
        }
        let sort_defs: BTreeMap<&str, &SortDef> =
            sorts.iter().map(|d| (d.name.as_str(), d)).collect();
        let mut relations = Vec::new();
        for r in file.relations {
            let mut decls: Vec<(String, String)> = Vec::new();
            for (pname, psort) in &r.params {
                match sort_defs.get(psort.as_str()) {
                    None => decls.push((pname.clone(), psort.clone())),
                    Some(sdef) => {
                        for (label, csort) in &sdef.components {
                            decls.push((format!("{pname}_{label}"), csort.clone()));
                        }
                    }
                }
            }
            let decls_ref: Vec<(&str, &str)> = decls
                .iter()
                .map(|(n, s)| (n.as_str(), s.as_str()))
                .collect();
            let body = parse(target, &decls_ref, &r.body)
                .map_err(|e| format!("relation `{}` body: {e}", r.name))?;
            relations.push(RelDef {
                name: r.name,
                params: r
                    .params
                    .into_iter()
                    .map(|(n, s)| Var::new(n, s))
                    .collect(),
                body,
            });
        }
        InterpretationSpec::new(file.source, file.target, sorts, relations)
            .map_err(|e| e.to_string())
    }
}

impl Serialize for InterpretationSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SpecFile::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for InterpretationSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let file = SpecFile::deserialize(deserializer)?;
        InterpretationSpec::try_from(file).map_err(D::Error::custom)
    }
}

/// Two-sorted incidence geometry into one-sorted collinearity: lines are
/// represented by ordered pairs of distinct points.  Test fixture.
#[cfg(test)]
pub(crate) fn lines_spec() -> InterpretationSpec {
    let source = Signature::new(&["Points", "Lines"], &[("I", &["Points", "Lines"])]).unwrap();
    let target = Signature::new(&["Points"], &[("Col", &["Points", "Points", "Points"])]).unwrap();
    let delta = parse(&target, &[("p", "Points"), ("q", "Points")], "(not (= p q))").unwrap();
    let epsilon = parse(
        &target,
        &[
            ("p", "Points"),
            ("q", "Points"),
            ("p'", "Points"),
            ("q'", "Points"),
        ],
        "(and (Col p' p q) (Col q' p q))",
    )
    .unwrap();
    let body = parse(
        &target,
        &[("x", "Points"), ("l_p", "Points"), ("l_q", "Points")],
        "(Col x l_p l_q)",
    )
    .unwrap();
    InterpretationSpec::new(
        source,
        target,
        vec![SortDef {
            name: "Lines".into(),
            var_hint: "l".into(),
            components: vec![("p".into(), "Points".into()), ("q".into(), "Points".into())],
            delta,
            epsilon,
        }],
        vec![RelDef {
            name: "I".into(),
            params: vec![Var::new("x", "Points"), Var::new("l", "Lines")],
            body,
        }],
    )
    .unwrap()
}
