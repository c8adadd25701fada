//! Finite many-sorted models, Tarskian evaluation, and the semantic side of
//! an interpretation: building the translated model and checking that
//! translation preserves meaning on it.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::interp::{InterpretationSpec, SpecError};
use crate::syntax::{Formula, Signature, Var};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("unknown sort `{0}`")]
    UnknownSort(String),
    #[error("unknown relation `{0}`")]
    UnknownRelation(String),
    #[error("relation `{relation}` takes {expected} elements, got {got}")]
    Arity {
        relation: String,
        expected: usize,
        got: usize,
    },
    #[error("element {value} is outside the `{sort}` carrier of size {size}")]
    OutOfRange {
        sort: String,
        value: usize,
        size: usize,
    },
    #[error("variable `{0}` has no assigned value")]
    UnassignedVariable(String),
    #[error("epsilon is not an equivalence on the represented tuples of `{sort}`: {law} fails")]
    NotEquivalence { sort: String, law: &'static str },
    #[error(transparent)]
    Spec(#[from] SpecError),
}

/// A finite model: per-sort carriers `0..n` and relation extensions as tuple
/// sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteModel {
    signature: Signature,
    carriers: BTreeMap<String, usize>,
    relations: BTreeMap<String, BTreeSet<Vec<usize>>>,
}

impl FiniteModel {
    /// Empty model of a signature: every carrier has size 0, every relation
    /// is empty.
    pub fn new(signature: Signature) -> Self {
        let carriers = signature.sorts().map(|s| (s.to_string(), 0)).collect();
        let relations = signature
            .relations()
            .map(|(n, _)| (n.to_string(), BTreeSet::new()))
            .collect();
        FiniteModel {
            signature,
            carriers,
            relations,
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn set_carrier(&mut self, sort: &str, size: usize) -> Result<(), ModelError> {
        match self.carriers.get_mut(sort) {
            Some(slot) => {
                *slot = size;
                Ok(())
            }
            None => Err(ModelError::UnknownSort(sort.to_string())),
        }
    }

    pub fn carrier(&self, sort: &str) -> Result<usize, ModelError> {
        self.carriers
            .get(sort)
            .copied()
            .ok_or_else(|| ModelError::UnknownSort(sort.to_string()))
    }

    pub fn insert(&mut self, relation: &str, tuple: Vec<usize>) -> Result<(), ModelError> {
        let decl = self
            .signature
            .relation(relation)
            .ok_or_else(|| ModelError::UnknownRelation(relation.to_string()))?
            .to_vec();
        if decl.len() != tuple.len() {
            return Err(ModelError::Arity {
                relation: relation.to_string(),
                expected: decl.len(),
                got: tuple.len(),
            });
        }
        for (value, sort) in tuple.iter().zip(&decl) {
            let size = self.carrier(sort)?;
            if *value >= size {
                return Err(ModelError::OutOfRange {
                    sort: sort.clone(),
                    value: *value,
                    size,
                });
            }
        }
        self.relations
            .get_mut(relation)
            .expect("declared relation has an extension")
            .insert(tuple);
        Ok(())
    }

    pub fn holds(&self, relation: &str, tuple: &[usize]) -> bool {
        self.relations
            .get(relation)
            .is_some_and(|ext| ext.contains(tuple))
    }

    pub fn extension(&self, relation: &str) -> Option<&BTreeSet<Vec<usize>>> {
        self.relations.get(relation)
    }

    /// Standard Tarskian truth under the assignment `k`, quantifying
    /// exhaustively over the finite carriers.
    pub fn eval(&self, f: &Formula, k: &BTreeMap<String, usize>) -> Result<bool, ModelError> {
        let mut env = k.clone();
        self.eval_in(f, &mut env)
    }

    fn eval_in(&self, f: &Formula, env: &mut BTreeMap<String, usize>) -> Result<bool, ModelError> {
        match f {
            Formula::Rel(name, args) => {
                let decl = self
                    .signature
                    .relation(name)
                    .ok_or_else(|| ModelError::UnknownRelation(name.clone()))?;
                if decl.len() != args.len() {
                    return Err(ModelError::Arity {
                        relation: name.clone(),
                        expected: decl.len(),
                        got: args.len(),
                    });
                }
                let mut tuple = Vec::with_capacity(args.len());
                for a in args {
                    tuple.push(
                        *env.get(a)
                            .ok_or_else(|| ModelError::UnassignedVariable(a.clone()))?,
                    );
                }
                Ok(self.holds(name, &tuple))
            }
            Formula::Eq(a, b) => {
                let va = *env
                    .get(a)
                    .ok_or_else(|| ModelError::UnassignedVariable(a.clone()))?;
                let vb = *env
                    .get(b)
                    .ok_or_else(|| ModelError::UnassignedVariable(b.clone()))?;
                Ok(va == vb)
            }
            Formula::Not(inner) => Ok(!self.eval_in(inner, env)?),
            Formula::And(items) => {
                for i in items {
                    if !self.eval_in(i, env)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Formula::Or(items) => {
                for i in items {
                    if self.eval_in(i, env)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            Formula::Implies(a, b) => Ok(!self.eval_in(a, env)? || self.eval_in(b, env)?),
            Formula::Iff(a, b) => Ok(self.eval_in(a, env)? == self.eval_in(b, env)?),
            Formula::Exists(binders, body) => self.eval_quant(binders, 0, body, env, true),
            Formula::Forall(binders, body) => self.eval_quant(binders, 0, body, env, false),
        }
    }

    fn eval_quant(
        &self,
        binders: &[Var],
        at: usize,
        body: &Formula,
        env: &mut BTreeMap<String, usize>,
        exists: bool,
    ) -> Result<bool, ModelError> {
        let Some(v) = binders.get(at) else {
            return self.eval_in(body, env);
        };
        let size = self.carrier(&v.sort)?;
        let saved = env.get(&v.name).copied();
        let mut result = !exists;
        for value in 0..size {
            env.insert(v.name.clone(), value);
            let r = self.eval_quant(binders, at + 1, body, env, exists);
            match r {
                Ok(b) if b == exists => {
                    result = exists;
                    break;
                }
                Ok(_) => {}
                Err(e) => {
                    restore(env, &v.name, saved);
                    return Err(e);
                }
            }
        }
        restore(env, &v.name, saved);
        Ok(result)
    }
}

fn restore(env: &mut BTreeMap<String, usize>, name: &str, saved: Option<usize>) {
    match saved {
        Some(v) => env.insert(name.to_string(), v),
        None => env.remove(name),
    };
}

/// Iterator over all index tuples with the given per-position sizes.
struct Odometer {
    sizes: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl Odometer {
    fn new(sizes: Vec<usize>) -> Self {
        let next = if sizes.iter().any(|&s| s == 0) {
            None
        } else {
            Some(vec![0; sizes.len()])
        };
        Odometer { sizes, next }
    }
}

impl Iterator for Odometer {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.clone()?;
        let mut bumped = current.clone();
        let mut done = true;
        for i in (0..bumped.len()).rev() {
            bumped[i] += 1;
            if bumped[i] < self.sizes[i] {
                done = false;
                break;
            }
            bumped[i] = 0;
        }
        self.next = if done { None } else { Some(bumped) };
        Some(current)
    }
}

/// The model a target model induces through an interpretation: quotiented
/// carriers for defined sorts plus induced relations.
#[derive(Clone, Debug)]
pub struct TranslatedModel {
    /// The induced source-signature model.
    pub model: FiniteModel,
    /// For each defined sort, the equivalence classes of representing
    /// tuples; the class at index `i` is carrier element `i`, members sorted
    /// ascending so `members[0]` is the canonical least representative.
    pub classes: BTreeMap<String, Vec<Vec<Vec<usize>>>>,
}

impl TranslatedModel {
    pub fn members(&self, sort: &str, element: usize) -> &[Vec<usize>] {
        &self.classes[sort][element]
    }

    pub fn representative(&self, sort: &str, element: usize) -> &[usize] {
        &self.classes[sort][element][0]
    }
}

/// Interpret `m` (a target-signature model) as a source-signature model.
///
/// Defined sorts become quotients of their represented tuples; the
/// equivalence formula must actually be an equivalence relation there.
/// Relations are induced by their defining formulas, satisfied by some
/// choice of representatives.
pub fn build_translated_model(
    spec: &InterpretationSpec,
    m: &FiniteModel,
) -> Result<TranslatedModel, ModelError> {
    let mut model = FiniteModel::new(spec.source.clone());
    let mut classes: BTreeMap<String, Vec<Vec<Vec<usize>>>> = BTreeMap::new();

    for sort in spec.source.sorts().map(str::to_string).collect::<Vec<_>>() {
        match spec.sorts.get(&sort) {
            None => {
                let size = m.carrier(&sort)?;
                model.set_carrier(&sort, size)?;
            }
            Some(def) => {
                let sizes: Vec<usize> = def
                    .components
                    .iter()
                    .map(|(_, s)| m.carrier(s))
                    .collect::<Result<_, _>>()?;
                let labels: Vec<&str> = def.components.iter().map(|(l, _)| l.as_str()).collect();
                let mut tuples = Vec::new();
                for tuple in Odometer::new(sizes) {
                    let k = assignment(&labels, &tuple);
                    if m.eval(&def.delta, &k)? {
                        tuples.push(tuple);
                    }
                }
                let related = epsilon_pairs(m, def, &labels, &tuples)?;
                check_equivalence(&sort, tuples.len(), &related)?;
                let sort_classes = quotient(&tuples, &related);
                model.set_carrier(&sort, sort_classes.len())?;
                classes.insert(sort.clone(), sort_classes);
            }
        }
    }

    for (rname, decl) in spec
        .source
        .relations()
        .map(|(n, d)| (n.to_string(), d.to_vec()))
        .collect::<Vec<_>>()
    {
        let def = spec
            .relations
            .get(&rname)
            .ok_or_else(|| SpecError::MissingDefinition(rname.clone()))?;
        let sizes: Vec<usize> = decl
            .iter()
            .map(|s| model.carrier(s))
            .collect::<Result<_, _>>()?;
        for tuple in Odometer::new(sizes) {
            // Member choices per defined-sort argument; kept arguments have a
            // single fixed "choice".
            let choice_sizes: Vec<usize> = decl
                .iter()
                .zip(&tuple)
                .map(|(sort, &value)| match classes.get(sort) {
                    Some(cls) => cls[value].len(),
                    None => 1,
                })
                .collect();
            let mut holds = false;
            for choice in Odometer::new(choice_sizes) {
                let mut k = BTreeMap::new();
                for ((param, sort), (&value, &which)) in def
                    .params
                    .iter()
                    .zip(&decl)
                    .zip(tuple.iter().zip(&choice))
                {
                    match classes.get(sort) {
                        None => {
                            k.insert(param.name.clone(), value);
                        }
                        Some(cls) => {
                            let member = &cls[value][which];
                            let sdef = &spec.sorts[sort];
                            for ((label, _), &comp) in sdef.components.iter().zip(member) {
                                k.insert(format!("{}_{label}", param.name), comp);
                            }
                        }
                    }
                }
                if m.eval(&def.body, &k)? {
                    holds = true;
                    break;
                }
            }
            if holds {
                model.insert(&rname, tuple)?;
            }
        }
    }

    Ok(TranslatedModel { model, classes })
}

fn assignment(labels: &[&str], tuple: &[usize]) -> BTreeMap<String, usize> {
    labels
        .iter()
        .zip(tuple)
        .map(|(l, &v)| (l.to_string(), v))
        .collect()
}

fn epsilon_pairs(
    m: &FiniteModel,
    def: &crate::interp::SortDef,
    labels: &[&str],
    tuples: &[Vec<usize>],
) -> Result<BTreeSet<(usize, usize)>, ModelError> {
    let primed: Vec<String> = labels.iter().map(|l| format!("{l}'")).collect();
    let mut related = BTreeSet::new();
    for (i, u) in tuples.iter().enumerate() {
        for (j, v) in tuples.iter().enumerate() {
            let mut k = assignment(labels, u);
            for (p, &value) in primed.iter().zip(v) {
                k.insert(p.clone(), value);
            }
            if m.eval(&def.epsilon, &k)? {
                related.insert((i, j));
            }
        }
    }
    Ok(related)
}

fn check_equivalence(
    sort: &str,
    n: usize,
    related: &BTreeSet<(usize, usize)>,
) -> Result<(), ModelError> {
    let fail = |law| {
        Err(ModelError::NotEquivalence {
            sort: sort.to_string(),
            law,
        })
    };
    for i in 0..n {
        if !related.contains(&(i, i)) {
            return fail("reflexivity");
        }
    }
    for &(i, j) in related {
        if !related.contains(&(j, i)) {
            return fail("symmetry");
        }
    }
    for &(i, j) in related {
        for k in 0..n {
            if related.contains(&(j, k)) && !related.contains(&(i, k)) {
                return fail("transitivity");
            }
        }
    }
    Ok(())
}

/// Partition `tuples` by the (already verified) equivalence `related`;
/// classes are ordered by their least member.
fn quotient(tuples: &[Vec<usize>], related: &BTreeSet<(usize, usize)>) -> Vec<Vec<Vec<usize>>> {
    let mut class_of = vec![usize::MAX; tuples.len()];
    let mut classes: Vec<Vec<Vec<usize>>> = Vec::new();
    for i in 0..tuples.len() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members = Vec::new();
        for j in i..tuples.len() {
            if class_of[j] == usize::MAX && related.contains(&(i, j)) {
                class_of[j] = id;
                members.push(tuples[j].clone());
            }
        }
        members.sort();
        classes.push(members);
    }
    classes
}

/// A formula together with the sorts of its free variables.
#[derive(Clone, Debug)]
pub struct OpenFormula {
    pub formula: Formula,
    pub free: Vec<(String, String)>,
}

impl OpenFormula {
    pub fn closed(formula: Formula) -> Self {
        OpenFormula {
            formula,
            free: Vec::new(),
        }
    }

    pub fn new(formula: Formula, free: &[(&str, &str)]) -> Self {
        OpenFormula {
            formula,
            free: free
                .iter()
                .map(|(n, s)| (n.to_string(), s.to_string()))
                .collect(),
        }
    }

    fn free_refs(&self) -> Vec<(&str, &str)> {
        self.free
            .iter()
            .map(|(n, s)| (n.as_str(), s.as_str()))
            .collect()
    }
}

/// One disagreement between the two sides of the meaning-preservation
/// square.
#[derive(Clone, Debug, Serialize)]
pub struct Mismatch {
    pub formula: usize,
    pub assignment: BTreeMap<String, usize>,
    /// Truth in the translated (source-signature) model.
    pub translated_model: bool,
    /// Truth of the translated formula in the base model.
    pub base_model: bool,
    /// How representatives were picked for the base-model side.
    pub representatives: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct PreservationReport {
    pub formulas: usize,
    pub assignments: usize,
    pub mismatches: Vec<Mismatch>,
}

impl PreservationReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Check, on random assignments, that a formula holds in the translated
/// model exactly when its translation holds in the base model.
///
/// Each assignment is checked twice on the base-model side: once with the
/// canonical least representative per defined-sort value and once with a
/// randomly sampled representative, since the choice must not matter.
pub fn meaning_preservation_check(
    spec: &InterpretationSpec,
    m: &FiniteModel,
    formulas: &[OpenFormula],
    trials: usize,
    seed: u64,
) -> Result<PreservationReport, ModelError> {
    let tm = build_translated_model(spec, m)?;
    meaning_preservation_check_with_model(spec, m, &tm, formulas, trials, seed)
}

/// Same as [`meaning_preservation_check`] but against a caller-supplied
/// translated model, so the two sides of the square can deliberately come
/// from different specs (negative controls).
pub fn meaning_preservation_check_with_model(
    spec: &InterpretationSpec,
    m: &FiniteModel,
    tm: &TranslatedModel,
    formulas: &[OpenFormula],
    trials: usize,
    seed: u64,
) -> Result<PreservationReport, ModelError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = PreservationReport {
        formulas: formulas.len(),
        assignments: 0,
        mismatches: Vec::new(),
    };
    for (fi, of) in formulas.iter().enumerate() {
        let (tf, images) = spec.translate_with_map(&of.formula, &of.free_refs())?;
        if of
            .free
            .iter()
            .any(|(_, sort)| tm.model.carrier(sort).unwrap_or(0) == 0)
        {
            continue;
        }
        for _ in 0..trials {
            let mut k = BTreeMap::new();
            for (name, sort) in &of.free {
                let size = tm.model.carrier(sort)?;
                k.insert(name.clone(), rng.gen_range(0..size));
            }
            let lhs = tm.model.eval(&of.formula, &k)?;
            for reps in ["least", "sampled"] {
                let mut base_k = BTreeMap::new();
                for (name, sort) in &of.free {
                    let image = &images[name];
                    match tm.classes.get(sort) {
                        None => {
                            base_k.insert(image[0].clone(), k[name]);
                        }
                        Some(cls) => {
                            let members = &cls[k[name]];
                            let member = if reps == "least" {
                                &members[0]
                            } else {
                                &members[rng.gen_range(0..members.len())]
                            };
                            for (img, &value) in image.iter().zip(member) {
                                base_k.insert(img.clone(), value);
                            }
                        }
                    }
                }
                let rhs = m.eval(&tf, &base_k)?;
                if lhs != rhs {
                    report.mismatches.push(Mismatch {
                        formula: fi,
                        assignment: k.clone(),
                        translated_model: lhs,
                        base_model: rhs,
                        representatives: reps,
                    });
                }
            }
            report.assignments += 1;
        }
    }
    Ok(report)
}

/// Exhaustive meaning preservation: every assignment of the free variables
/// and, on the base-model side, every choice of representatives.
pub fn meaning_preservation_exhaustive(
    spec: &InterpretationSpec,
    m: &FiniteModel,
    formulas: &[OpenFormula],
) -> Result<PreservationReport, ModelError> {
    let tm = build_translated_model(spec, m)?;
    let mut report = PreservationReport {
        formulas: formulas.len(),
        assignments: 0,
        mismatches: Vec::new(),
    };
    for (fi, of) in formulas.iter().enumerate() {
        let (tf, images) = spec.translate_with_map(&of.formula, &of.free_refs())?;
        let sizes: Vec<usize> = of
            .free
            .iter()
            .map(|(_, sort)| tm.model.carrier(sort))
            .collect::<Result<_, _>>()?;
        for values in Odometer::new(sizes) {
            let k: BTreeMap<String, usize> = of
                .free
                .iter()
                .zip(&values)
                .map(|((n, _), &v)| (n.clone(), v))
                .collect();
            let lhs = tm.model.eval(&of.formula, &k)?;
            let member_sizes: Vec<usize> = of
                .free
                .iter()
                .zip(&values)
                .map(|((_, sort), &v)| match tm.classes.get(sort) {
                    Some(cls) => cls[v].len(),
                    None => 1,
                })
                .collect();
            for choice in Odometer::new(member_sizes) {
                let mut base_k = BTreeMap::new();
                for (((name, sort), &value), &which) in
                    of.free.iter().zip(&values).zip(&choice)
                {
                    let image = &images[name];
                    match tm.classes.get(sort) {
                        None => {
                            base_k.insert(image[0].clone(), value);
                        }
                        Some(cls) => {
                            for (img, &comp) in image.iter().zip(&cls[value][which]) {
                                base_k.insert(img.clone(), comp);
                            }
                        }
                    }
                }
                let rhs = m.eval(&tf, &base_k)?;
                if lhs != rhs {
                    report.mismatches.push(Mismatch {
                        formula: fi,
                        assignment: k.clone(),
                        translated_model: lhs,
                        base_model: rhs,
                        representatives: "member",
                    });
                }
            }
            report.assignments += 1;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interp::lines_spec;
    use crate::parse::parse;
    use crate::syntax::Signature;

    fn tiny_model() -> FiniteModel {
        let sig = Signature::new(&["Points"], &[("Col", &["Points", "Points", "Points"])]).unwrap();
        let mut m = FiniteModel::new(sig);
        m.set_carrier("Points", 3).unwrap();
        // Exactly the constant triples.
        for i in 0..3 {
            m.insert("Col", vec![i, i, i]).unwrap();
        }
        m
    }

    #[test]
    fn evaluation_follows_the_connectives() {
        let m = tiny_model();
        let sig = m.signature().clone();
        let t = |text: &str, free: &[(&str, &str)], k: &BTreeMap<String, usize>| {
            m.eval(&parse(&sig, free, text).unwrap(), k).unwrap()
        };
        let empty = BTreeMap::new();
        assert!(t("(exists (x Points) (Col x x x))", &[], &empty));
        assert!(t("(forall (x Points) (Col x x x))", &[], &empty));
        assert!(!t(
            "(exists ((x Points) (y Points)) (and (not (= x y)) (Col x y y)))",
            &[],
            &empty
        ));
        let k: BTreeMap<String, usize> = [("x".to_string(), 2usize)].into();
        assert!(t("(= x x)", &[("x", "Points")], &k));
        assert!(t("(Col x x x)", &[("x", "Points")], &k));
    }

    #[test]
    fn empty_carrier_makes_existentials_false() {
        let sig = Signature::new(&["Points"], &[]).unwrap();
        let m = FiniteModel::new(sig.clone());
        let f = parse(&sig, &[], "(exists (x Points) (= x x))").unwrap();
        assert!(!m.eval(&f, &BTreeMap::new()).unwrap());
        let g = parse(&sig, &[], "(forall (x Points) (not (= x x)))").unwrap();
        assert!(m.eval(&g, &BTreeMap::new()).unwrap());
    }

    #[test]
    fn unassigned_variables_are_an_error() {
        let m = tiny_model();
        let f = Formula::rel("Col", &["x", "x", "x"]);
        assert_eq!(
            m.eval(&f, &BTreeMap::new()).unwrap_err(),
            ModelError::UnassignedVariable("x".into())
        );
    }

    #[test]
    fn out_of_range_inserts_are_rejected() {
        let mut m = tiny_model();
        assert!(matches!(
            m.insert("Col", vec![0, 1, 7]).unwrap_err(),
            ModelError::OutOfRange { value: 7, .. }
        ));
        assert!(matches!(
            m.insert("Col", vec![0]).unwrap_err(),
            ModelError::Arity { .. }
        ));
    }

    /// Points with an explicit equivalence relation; one defined sort
    /// quotients by it.
    fn grouping_spec() -> (InterpretationSpec, FiniteModel) {
        let source = Signature::new(&["Groups"], &[]).unwrap();
        let target = Signature::new(&["Points"], &[("E", &["Points", "Points"])]).unwrap();
        let delta = parse(&target, &[("a", "Points")], "(= a a)").unwrap();
        let epsilon = parse(&target, &[("a", "Points"), ("a'", "Points")], "(E a a')").unwrap();
        let spec = InterpretationSpec::new(
            source,
            target,
            vec![crate::interp::SortDef {
                name: "Groups".into(),
                var_hint: "g".into(),
                components: vec![("a".into(), "Points".into())],
                delta,
                epsilon,
            }],
            vec![],
        )
        .unwrap();
        let mut m = FiniteModel::new(spec.target.clone());
        m.set_carrier("Points", 3).unwrap();
        // Classes {0,1} and {2}.
        for (i, j) in [(0, 0), (1, 1), (2, 2), (0, 1), (1, 0)] {
            m.insert("E", vec![i, j]).unwrap();
        }
        (spec, m)
    }

    #[test]
    fn quotient_carriers_count_classes() {
        let (spec, m) = grouping_spec();
        let tm = build_translated_model(&spec, &m).unwrap();
        assert_eq!(tm.model.carrier("Groups").unwrap(), 2);
        assert_eq!(tm.members("Groups", 0), [vec![0], vec![1]]);
        assert_eq!(tm.representative("Groups", 1), [2]);
    }

    #[test]
    fn non_equivalences_are_rejected() {
        let (spec, mut m) = grouping_spec();
        m.insert("E", vec![1, 2]).unwrap();
        assert_eq!(
            build_translated_model(&spec, &m).unwrap_err(),
            ModelError::NotEquivalence {
                sort: "Groups".into(),
                law: "symmetry"
            }
        );
    }

    #[test]
    fn preservation_holds_on_the_grouping_fixture() {
        let (spec, m) = grouping_spec();
        let sig = &spec.source;
        let f = parse(
            sig,
            &[],
            "(exists ((g Groups) (h Groups)) (not (= g h)))",
        )
        .unwrap();
        let report = meaning_preservation_check(
            &spec,
            &m,
            &[OpenFormula::closed(f.clone()), OpenFormula::new(
                parse(sig, &[("g", "Groups")], "(= g g)").unwrap(),
                &[("g", "Groups")],
            )],
            25,
            7,
        )
        .unwrap();
        assert!(report.ok(), "mismatches: {:?}", report.mismatches);
        assert_eq!(report.assignments, 50);

        let exhaustive =
            meaning_preservation_exhaustive(&spec, &m, &[OpenFormula::closed(f)]).unwrap();
        assert!(exhaustive.ok());
        assert_eq!(exhaustive.assignments, 1);
    }

    #[test]
    fn lines_quotient_on_a_degenerate_model() {
        // One point: no distinct pairs, so no lines at all.
        let spec = lines_spec();
        let mut m = FiniteModel::new(spec.target.clone());
        m.set_carrier("Points", 1).unwrap();
        let tm = build_translated_model(&spec, &m).unwrap();
        assert_eq!(tm.model.carrier("Lines").unwrap(), 0);
        let f = parse(
            &spec.source,
            &[],
            "(exists (l Lines) (forall (x Points) (I x l)))",
        )
        .unwrap();
        assert!(!tm.model.eval(&f, &BTreeMap::new()).unwrap());
    }
}
