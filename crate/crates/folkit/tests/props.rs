//! Property tests over randomly generated formulas.
//!
//! Formulas range over a fixed pool of variables — `x`, `y` of sort
//! `Points` and `l`, `h` of sort `Lines` — in the two-sorted incidence
//! language, translated into one-sorted collinearity geometry through the
//! shared golden interpretation.

use std::collections::BTreeMap;

use proptest::prelude::*;

use folkit::{
    build_translated_model, meaning_preservation_exhaustive, parse, FiniteModel, Formula,
    InterpretationSpec, OpenFormula, Var,
};

const SPEC_JSON: &str = include_str!("../golden/v1/lines_over_points.json");

const POOL: [(&str, &str); 4] = [
    ("x", "Points"),
    ("y", "Points"),
    ("l", "Lines"),
    ("h", "Lines"),
];

fn spec() -> InterpretationSpec {
    serde_json::from_str(SPEC_JSON).unwrap()
}

fn pool_var() -> impl Strategy<Value = Var> {
    (0..POOL.len()).prop_map(|i| Var::new(POOL[i].0, POOL[i].1))
}

fn atom() -> impl Strategy<Value = Formula> {
    prop_oneof![
        (prop_oneof![Just("x"), Just("y")], prop_oneof![Just("l"), Just("h")])
            .prop_map(|(p, ln)| Formula::rel("I", &[p, ln])),
        (prop_oneof![Just("x"), Just("y")], prop_oneof![Just("x"), Just("y")])
            .prop_map(|(a, b)| Formula::eq(a, b)),
        (prop_oneof![Just("l"), Just("h")], prop_oneof![Just("l"), Just("h")])
            .prop_map(|(a, b)| Formula::eq(a, b)),
    ]
}

/// Quantifier-free formulas over the pool.
fn open_formula() -> impl Strategy<Value = Formula> {
    atom().prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(vec![a, b])),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(vec![a, b])),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::iff(a, b)),
        ]
    })
}

/// Formulas over the pool, quantifiers included; bound names reuse the pool
/// (with their fixed sorts), so shadowing stays well-sorted.
fn formula() -> impl Strategy<Value = Formula> {
    atom().prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(vec![a, b])),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(vec![a, b])),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::iff(a, b)),
            (pool_var(), inner.clone()).prop_map(|(v, b)| Formula::exists(vec![v], b)),
            (pool_var(), inner).prop_map(|(v, b)| Formula::forall(vec![v], b)),
        ]
    })
}

/// The 4-point affine plane, lines defined through the interpretation.
fn tiny_plane() -> FiniteModel {
    let mut m = FiniteModel::new(spec().target.clone());
    m.set_carrier("Points", 4).unwrap();
    let coords = |p: usize| ((p / 2) as i64, (p % 2) as i64);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                let (ax, ay) = coords(a);
                let (bx, by) = coords(b);
                let (cx, cy) = coords(c);
                let det = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
                if det.rem_euclid(2) == 0 {
                    m.insert("Col", vec![a, b, c]).unwrap();
                }
            }
        }
    }
    m
}

proptest! {
    /// The concrete syntax is lossless: displaying and re-parsing any
    /// formula, compactly or pretty-printed, gives it back.
    #[test]
    fn display_then_parse_round_trips(f in formula()) {
        let sig = spec().source.clone();
        let compact = parse(&sig, &POOL, &format!("{f}")).unwrap();
        prop_assert_eq!(&compact, &f);
        let pretty = parse(&sig, &POOL, &f.pretty()).unwrap();
        prop_assert_eq!(&pretty, &f);
    }

    /// Translated formulas are well-sorted over the target signature once
    /// each free variable is replaced by its image components.
    #[test]
    fn translations_are_well_sorted(f in formula()) {
        let spec = spec();
        let (t, images) = spec.translate_with_map(&f, &POOL).unwrap();
        let mut decls = BTreeMap::new();
        for (name, sort) in POOL {
            match spec.sorts.get(sort) {
                None => {
                    decls.insert(name.to_string(), sort.to_string());
                }
                Some(def) => {
                    for (img, (_, csort)) in images[name].iter().zip(&def.components) {
                        decls.insert(img.clone(), csort.clone());
                    }
                }
            }
        }
        prop_assert!(spec.target.validate(&t, &decls).is_ok());
    }

    /// With quantifier-free defining formulas, translation never deepens
    /// the quantifier nesting: guards are conjoined, not re-quantified.
    #[test]
    fn translation_preserves_quantifier_depth(f in formula()) {
        let spec = spec();
        let t = spec.translate(&f, &POOL).unwrap();
        prop_assert_eq!(t.quantifier_depth(), f.quantifier_depth());
    }

    /// Negation commutes with translation outright.
    #[test]
    fn translation_commutes_with_negation(f in formula()) {
        let spec = spec();
        let lhs = spec.translate(&Formula::not(f.clone()), &POOL).unwrap();
        let rhs = Formula::not(spec.translate(&f, &POOL).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    /// On quantifier-free operands (where no fresh names are minted mid-way)
    /// the binary connectives commute with translation too.
    #[test]
    fn translation_commutes_with_connectives(a in open_formula(), b in open_formula()) {
        let spec = spec();
        let ta = spec.translate(&a, &POOL).unwrap();
        let tb = spec.translate(&b, &POOL).unwrap();
        for (joined, split) in [
            (Formula::and(vec![a.clone(), b.clone()]), Formula::and(vec![ta.clone(), tb.clone()])),
            (Formula::or(vec![a.clone(), b.clone()]), Formula::or(vec![ta.clone(), tb.clone()])),
            (Formula::implies(a.clone(), b.clone()), Formula::implies(ta.clone(), tb.clone())),
            (Formula::iff(a.clone(), b.clone()), Formula::iff(ta, tb)),
        ] {
            prop_assert_eq!(spec.translate(&joined, &POOL).unwrap(), split);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Random formulas mean the same thing on both sides of the square:
    /// truth in the defined-lines model equals truth of the translation in
    /// the plane, for every assignment and every representative choice.
    #[test]
    fn random_formulas_preserve_meaning(f in formula()) {
        let spec = spec();
        let m = tiny_plane();
        let family = [OpenFormula::new(f, &POOL)];
        let report = meaning_preservation_exhaustive(&spec, &m, &family).unwrap();
        prop_assert_eq!(report.assignments, 4 * 4 * 6 * 6);
        prop_assert!(report.ok(), "first mismatch: {:?}", report.mismatches.first());
    }
}

#[test]
fn the_tiny_plane_has_six_lines() {
    let tm = build_translated_model(&spec(), &tiny_plane()).unwrap();
    assert_eq!(tm.model.carrier("Lines").unwrap(), 6);
}
