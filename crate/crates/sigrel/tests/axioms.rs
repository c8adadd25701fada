//! Axiom sweeps over the sampled frame semantics.

use sigrel::scalar::Backend;
use sigrel::specrel::{check_axiom, Axiom, SpecRelModel};

const SAMPLES: usize = 50;
const SEED: u64 = 20260825;

#[test]
fn every_axiom_passes_with_a_shared_clock_unit() {
    let model = SpecRelModel::with_time_unit(Backend::approx());
    for axiom in Axiom::all() {
        let report = check_axiom(&model, axiom, SAMPLES, SEED).unwrap();
        assert!(
            report.passed(),
            "{axiom}: {} of {} trials failed, first witness {:?}",
            report.failures,
            report.samples,
            report.witnesses.first()
        );
    }
}

#[test]
fn free_clocks_break_exactly_the_distance_agreement() {
    let model = SpecRelModel::new(Backend::approx());
    for axiom in Axiom::all() {
        let report = check_axiom(&model, axiom, SAMPLES, SEED).unwrap();
        if axiom == Axiom::AxSym {
            assert!(report.failures > 0, "free clock scales must disagree somewhere");
            assert!(report
                .witnesses
                .iter()
                .all(|w| w["part"] == "distances-agree"));
        } else {
            assert!(
                report.passed(),
                "{axiom}: {} of {} trials failed, first witness {:?}",
                report.failures,
                report.samples,
                report.witnesses.first()
            );
        }
    }
}

#[test]
fn reports_are_reproducible_for_a_seed() {
    let model = SpecRelModel::with_time_unit(Backend::approx());
    let a = check_axiom(&model, Axiom::AxSym, SAMPLES, SEED).unwrap();
    let b = check_axiom(&model, Axiom::AxSym, SAMPLES, SEED).unwrap();
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
    let c = check_axiom(&model, Axiom::AxSym, SAMPLES, SEED + 1).unwrap();
    assert_ne!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&c).unwrap()
    );
}
