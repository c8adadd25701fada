//! Desk-size finite models extracted from exact Minkowski scenarios.
//!
//! [`DeskScenario`] fixes a small family of named particles and signals;
//! [`DeskScenario::base_model`] fills every relation of the extended
//! signalling signature over those carriers by running the corresponding
//! experiment or geometric test, yielding a [`FiniteModel`] that the
//! translation machinery can evaluate.  [`desk_quotient`] independently
//! builds the reference-frame view of the same geometry — equivalence
//! classes of representing tuples plus a quotient model in the frame
//! signature — so meaning-preservation checks compare two constructions
//! that share nothing but the underlying scenario.
//!
//! A finite carrier is a *sample*, not an elementarily closed submodel:
//! existential witnesses (radar bounces, connecting signals) may fall
//! outside it.  Relations are therefore filled from the continuum
//! semantics, and the quantifier macros are tested for agreement exactly
//! where the fixture carries the witnesses (see the module tests).

use folkit::{FiniteModel, TranslatedModel};
use std::collections::BTreeMap;

use super::specs::{extended_signalling_signature, frame_signature};
use super::InterpError;
use crate::minkowski::{interval2, Event, Frame, Tetrad, Vec3};
use crate::scalar::{Backend, Scalar};
use crate::sigmodel::{LightLine, Particle, Signal};
use crate::signalling::{causal_leq, cord, motionless, Calibration};

/// A named finite family of particles and signals over the exact backend.
#[derive(Clone, Debug)]
pub struct DeskScenario {
    pub backend: Backend,
    particles: Vec<(String, Particle)>,
    signals: Vec<(String, Signal)>,
}

impl DeskScenario {
    /// The smallest fixture on which the whole quotient pipeline runs: one
    /// worldline (the time axis) carrying the events `t = -1, 0, 1` as
    /// zero-length signals.  Its calibrations render the field values
    /// `-1, 0, 1/2, 1, 2`.
    pub fn field() -> DeskScenario {
        let b = Backend::Exact;
        let a0 = Particle::new(Event::origin(&b), Vec3::zero(&b)).expect("rest worldline");
        let ev = |t: i64| Event::from_ints(&b, [t, 0, 0, 0]);
        DeskScenario {
            backend: b,
            particles: vec![("a0".into(), a0)],
            signals: vec![
                ("s-1".into(), Signal::event(ev(-1))),
                ("s0".into(), Signal::event(ev(0))),
                ("s1".into(), Signal::event(ev(1))),
            ],
        }
    }

    /// The full fixture: the time axis `a0` with clock events `t = -2..2`,
    /// rest axis worldlines through the three unit points, a moving
    /// worldline `b1` through the origin, a photon chain
    /// `(0,0,0,0) -> (1,1,0,0) -> (2,0,0,0)` with the collinear extension
    /// `(1,1,0,0) -> (2,2,0,0)` and the long photon `(0,0,0,0) -> (2,2,0,0)`,
    /// plus moving witness worldlines so that every signal-endpoint event
    /// lies on at least two distinct particles (which is what makes the
    /// quantifier forms of `Ev`, `Beg`, and `End` agree with their
    /// extensions on the carrier).
    pub fn full() -> DeskScenario {
        let b = Backend::Exact;
        let ev = |t: i64, x: i64, y: i64, z: i64| Event::from_ints(&b, [t, x, y, z]);
        let rest = |e: Event| Particle::new(e, Vec3::zero(&b)).expect("rest worldline");
        let drift = |e: Event, num: i64| {
            let v = Vec3::new(b.ratio(num, 2), b.int(0), b.int(0));
            Particle::new(e, v).expect("slow worldline")
        };
        let side = |e: Event| {
            let v = Vec3::new(b.int(0), b.ratio(1, 2), b.int(0));
            Particle::new(e, v).expect("slow worldline")
        };
        let photon = |e1: Event, e2: Event| Signal::new(e1, e2).expect("lightlike pair");

        let particles = vec![
            ("a0".to_string(), rest(ev(0, 0, 0, 0))),
            ("ax1".to_string(), rest(ev(0, 1, 0, 0))),
            ("ay1".to_string(), rest(ev(0, 0, 1, 0))),
            ("az1".to_string(), rest(ev(0, 0, 0, 1))),
            ("b1".to_string(), drift(ev(0, 0, 0, 0), 1)),
            // Witness velocities are chosen so no witness worldline passes
            // through a second carrier event; calibrated worldlines then
            // all lie on the time axis, which keeps every carried reading
            // rational.  (An x-drift of 1/2 from (1,1,0,0) would cross
            // (-1,0,0,0), so the witnesses at the off-axis events drift
            // sideways instead.)
            ("wA".to_string(), side(ev(1, 1, 0, 0))),
            ("wB".to_string(), drift(ev(1, 1, 0, 0), -1)),
            ("wC".to_string(), side(ev(2, 2, 0, 0))),
            ("wD".to_string(), drift(ev(2, 2, 0, 0), -1)),
            ("w-2".to_string(), drift(ev(-2, 0, 0, 0), -1)),
            ("w-1".to_string(), drift(ev(-1, 0, 0, 0), -1)),
            ("w1".to_string(), drift(ev(1, 0, 0, 0), 1)),
            ("w2".to_string(), drift(ev(2, 0, 0, 0), 1)),
        ];
        let signals = vec![
            ("s-2".to_string(), Signal::event(ev(-2, 0, 0, 0))),
            ("s-1".to_string(), Signal::event(ev(-1, 0, 0, 0))),
            ("s0".to_string(), Signal::event(ev(0, 0, 0, 0))),
            ("s1".to_string(), Signal::event(ev(1, 0, 0, 0))),
            ("s2".to_string(), Signal::event(ev(2, 0, 0, 0))),
            ("s110".to_string(), Signal::event(ev(1, 1, 0, 0))),
            ("s220".to_string(), Signal::event(ev(2, 2, 0, 0))),
            ("p1".to_string(), photon(ev(0, 0, 0, 0), ev(1, 1, 0, 0))),
            ("p2".to_string(), photon(ev(1, 1, 0, 0), ev(2, 0, 0, 0))),
            ("p3".to_string(), photon(ev(1, 1, 0, 0), ev(2, 2, 0, 0))),
            ("p4".to_string(), photon(ev(0, 0, 0, 0), ev(2, 2, 0, 0))),
        ];
        DeskScenario {
            backend: b,
            particles,
            signals,
        }
    }

    pub fn particles(&self) -> impl Iterator<Item = (&str, &Particle)> {
        self.particles.iter().map(|(n, p)| (n.as_str(), p))
    }

    pub fn signals(&self) -> impl Iterator<Item = (&str, &Signal)> {
        self.signals.iter().map(|(n, s)| (n.as_str(), s))
    }

    pub fn particle(&self, name: &str) -> &Particle {
        &self.particles.iter().find(|(n, _)| n == name).expect("known particle").1
    }

    pub fn signal(&self, name: &str) -> &Signal {
        &self.signals.iter().find(|(n, _)| n == name).expect("known signal").1
    }

    pub fn particle_index(&self, name: &str) -> usize {
        self.particles.iter().position(|(n, _)| n == name).expect("known particle")
    }

    pub fn signal_index(&self, name: &str) -> usize {
        self.signals.iter().position(|(n, _)| n == name).expect("known signal")
    }

    /// The zero-length signals, as `(carrier index, event)` pairs.
    fn events(&self) -> Vec<(usize, Event)> {
        self.signals
            .iter()
            .enumerate()
            .filter(|(_, (_, s))| s.is_event())
            .map(|(i, (_, s))| (i, s.beg().clone()))
            .collect()
    }

    fn event_index(&self, e: &Event) -> Option<usize> {
        self.signals
            .iter()
            .position(|(_, s)| s.is_event() && s.beg() == e)
    }

    /// Every valid calibration with carrier data: `(a, o, u)` index triples
    /// together with the constructed [`Calibration`].
    fn calibrations(&self) -> Vec<(usize, usize, usize, Calibration)> {
        let events = self.events();
        let mut out = Vec::new();
        for (ai, (_, a)) in self.particles.iter().enumerate() {
            for (oi, o) in &events {
                for (ui, u) in &events {
                    if o == u || !a.contains(o) || !a.contains(u) || !causal_leq(o, u) {
                        continue;
                    }
                    let cal = Calibration::new(a.clone(), o.clone(), u.clone())
                        .expect("distinct causal events on a worldline calibrate it");
                    out.push((ai, *oi, *ui, cal));
                }
            }
        }
        out
    }

    /// Extract the extended-signalling-signature model over this carrier.
    /// Every relation is filled from the continuum semantics of the
    /// experiments; quantifier-free conditions are decided exactly.
    pub fn base_model(&self) -> Result<FiniteModel, InterpError> {
        let mut m = FiniteModel::new(extended_signalling_signature());
        m.set_carrier("Par", self.particles.len())?;
        m.set_carrier("Sig", self.signals.len())?;
        let events = self.events();
        debug_assert!(
            {
                let mut evs: Vec<&Event> = events.iter().map(|(_, e)| e).collect();
                let n = evs.len();
                evs.dedup();
                evs.len() == n
            },
            "duplicate zero-length signals would split one event over two carrier elements"
        );

        for (ai, (_, a)) in self.particles.iter().enumerate() {
            for (si, (_, s)) in self.signals.iter().enumerate() {
                if a.transmits(s) {
                    m.insert("T", vec![ai, si])?;
                }
                if a.receives(s) {
                    m.insert("R", vec![ai, si])?;
                }
            }
        }
        for (si, (_, s)) in self.signals.iter().enumerate() {
            if s.is_event() {
                m.insert("Ev", vec![si])?;
            }
        }
        for (si, (_, s)) in self.signals.iter().enumerate() {
            for (ei, e) in &events {
                if s.beg() == e {
                    m.insert("Beg", vec![si, *ei])?;
                }
                if s.end() == e {
                    m.insert("End", vec![si, *ei])?;
                }
            }
        }
        for (ei, e) in &events {
            for (fi, f) in &events {
                if causal_leq(e, f) {
                    m.insert("Prec", vec![*ei, *fi])?;
                }
            }
        }

        let cals = self.calibrations();
        for (ai, oi, ui, _) in &cals {
            m.insert("Fp", vec![*ai, *oi, *ui])?;
        }

        // Iso(x, x', a, o, u, a', o', u'): the two carriers render the same
        // field value in their respective calibrations.
        for (ai, oi, ui, cal) in &cals {
            for (aj, oj, uj, cal2) in &cals {
                for (xi, x) in &events {
                    if !cal.worldline().contains(x) {
                        continue;
                    }
                    let vx = cal.value_of(x).expect("on worldline");
                    for (yi, y) in &events {
                        if !cal2.worldline().contains(y) {
                            continue;
                        }
                        let vy = cal2.value_of(y).expect("on worldline");
                        if vx == vy {
                            m.insert("Iso", vec![*xi, *yi, *ai, *oi, *ui, *aj, *oj, *uj])?;
                        }
                    }
                }
            }
        }

        // SPlus(x, x1, x2, a, o): sums need an origin but no clock unit, so
        // the fill is the affine condition x - o = (x1 - o) + (x2 - o),
        // guarded by the existence of some calibration on (a, o).
        for (ai, (_, a)) in self.particles.iter().enumerate() {
            for (oi, o) in &events {
                if !cals.iter().any(|(ci, coi, _, _)| *ci == ai && *coi == *oi) {
                    continue;
                }
                let on_a: Vec<(usize, &Event)> = events
                    .iter()
                    .filter(|(_, e)| a.contains(e))
                    .map(|(i, e)| (*i, e))
                    .collect();
                for (xi, x) in &on_a {
                    for (x1i, x1) in &on_a {
                        for (x2i, x2) in &on_a {
                            let sum = x1.add_vec(&x2.sub(o));
                            if **x == sum {
                                m.insert("SPlus", vec![*xi, *x1i, *x2i, ai, *oi])?;
                            }
                        }
                    }
                }
            }
        }

        // STimes(x, x1, x2, a, o, u): the rendered values multiply.
        for (ai, oi, ui, cal) in &cals {
            let on_a: Vec<(usize, &Event)> = events
                .iter()
                .filter(|(_, e)| cal.worldline().contains(e))
                .map(|(i, e)| (*i, e))
                .collect();
            for (xi, x) in &on_a {
                let vx = cal.value_of(x).expect("on worldline");
                for (x1i, x1) in &on_a {
                    let v1 = cal.value_of(x1).expect("on worldline");
                    for (x2i, x2) in &on_a {
                        let v2 = cal.value_of(x2).expect("on worldline");
                        if vx == &v1 * &v2 {
                            m.insert("STimes", vec![*xi, *x1i, *x2i, *ai, *oi, *ui])?;
                        }
                    }
                }
            }
        }

        for (ai, (_, a)) in self.particles.iter().enumerate() {
            for (bi, (_, b)) in self.particles.iter().enumerate() {
                if motionless(a, b) {
                    m.insert("Mot", vec![ai, bi])?;
                }
            }
        }

        // Ort(a, b, c, d): the rest lines a -> b and c -> d, for a mutually
        // motionless quadruple, have orthogonal (nonzero) offsets.
        for (ai, (_, a)) in self.particles.iter().enumerate() {
            for (bi, (_, b)) in self.particles.iter().enumerate() {
                if !motionless(a, b) {
                    continue;
                }
                let o1 = a.rest_offset_to(b);
                if o1.is_zero() {
                    continue;
                }
                for (ci, (_, c)) in self.particles.iter().enumerate() {
                    if !motionless(a, c) {
                        continue;
                    }
                    for (di, (_, d)) in self.particles.iter().enumerate() {
                        if !motionless(c, d) {
                            continue;
                        }
                        let o2 = c.rest_offset_to(d);
                        if o2.is_zero() || !o1.mdot(&o2).is_zero() {
                            continue;
                        }
                        m.insert("Ort", vec![ai, bi, ci, di])?;
                    }
                }
            }
        }

        // Op: full coordinate systems; validity is exactly frame validity.
        let mut op_tuples: Vec<[usize; 6]> = Vec::new();
        for (ai, oi, ui, cal) in &cals {
            for (xi, (_, x)) in self.particles.iter().enumerate() {
                if !motionless(cal.worldline(), x) {
                    continue;
                }
                for (yi, (_, y)) in self.particles.iter().enumerate() {
                    if !motionless(cal.worldline(), y) {
                        continue;
                    }
                    for (zi, (_, z)) in self.particles.iter().enumerate() {
                        if !motionless(cal.worldline(), z) {
                            continue;
                        }
                        let frame = Frame::new(
                            cal.worldline().clone(),
                            cal.origin().clone(),
                            cal.clock().clone(),
                            x.clone(),
                            y.clone(),
                            z.clone(),
                        );
                        if frame.is_valid() {
                            m.insert("Op", vec![*ai, *oi, *ui, xi, yi, zi])?;
                            op_tuples.push([*ai, *oi, *ui, xi, yi, zi]);
                        }
                    }
                }
            }
        }

        // Lambda: pairwise lightlike-or-equal triples.  For distinct events
        // this forces a common lightlike line, because two lightlike
        // directions with lightlike difference are parallel.
        for (e1i, e1) in &events {
            for (e2i, e2) in &events {
                if !interval2(e1, e2).is_zero() {
                    continue;
                }
                for (e3i, e3) in &events {
                    if interval2(e1, e3).is_zero() && interval2(e2, e3).is_zero() {
                        m.insert("Lambda", vec![*e1i, *e2i, *e3i])?;
                    }
                }
            }
        }

        // Wl: membership in the lightlike line through the signal's
        // endpoints; a zero-length signal degenerates to its light cone.
        for (si, (_, s)) in self.signals.iter().enumerate() {
            if s.is_event() {
                for (ei, e) in &events {
                    if interval2(e, s.beg()).is_zero() {
                        m.insert("Wl", vec![*ei, si])?;
                    }
                }
            } else {
                let line = LightLine::of_signal(s).expect("non-degenerate signal");
                for (ei, e) in &events {
                    if line.contains(e) {
                        m.insert("Wl", vec![*ei, si])?;
                    }
                }
            }
        }

        // Cord: run the chart experiment for every coordinate system and
        // event; keep the tuples whose four readings land on carrier events.
        for [ai, oi, ui, xi, yi, zi] in &op_tuples {
            let frame = Frame::new(
                self.particles[*ai].1.clone(),
                self.signals[*oi].1.beg().clone(),
                self.signals[*ui].1.beg().clone(),
                self.particles[*xi].1.clone(),
                self.particles[*yi].1.clone(),
                self.particles[*zi].1.clone(),
            );
            for (ei, e) in &events {
                let readings = cord(&frame, e)?;
                let indices: Vec<Option<usize>> = readings
                    .iter()
                    .map(|fp| self.event_index(fp.carrier()))
                    .collect();
                if let [Some(rt), Some(rx), Some(ry), Some(rz)] = indices[..] {
                    m.insert(
                        "Cord",
                        vec![*ei, rt, rx, ry, rz, *ai, *oi, *ui, *xi, *yi, *zi],
                    )?;
                }
            }
        }

        Ok(m)
    }
}

/// The full fixture together with its extracted base model.
pub fn desk_model() -> Result<(DeskScenario, FiniteModel), InterpError> {
    let scn = DeskScenario::full();
    let model = scn.base_model()?;
    Ok((scn, model))
}

fn scalar_values(b: &Backend) -> Vec<Scalar> {
    vec![
        b.int(-2),
        b.int(-1),
        b.ratio(-1, 2),
        b.int(0),
        b.ratio(1, 2),
        b.int(1),
        b.int(2),
    ]
}

/// How a quotient body meets events: along a worldline or a lightlike line.
enum BodyShape {
    Worldline(Particle),
    Light(LightLine),
}

impl BodyShape {
    fn contains(&self, e: &Event) -> bool {
        match self {
            BodyShape::Worldline(p) => p.contains(e),
            BodyShape::Light(l) => l.contains(e),
        }
    }
}

/// The reference-frame view of the full fixture, built directly from the
/// continuum geometry: quantity classes are the field values rendered by
/// the two canonical calibrations on the time axis, body classes are two
/// charts on the time axis plus the two lightlike lines, and the frame
/// relations are filled through the charts' tetrads.  Nothing here touches
/// the defining formulas or the extracted base model, so agreement between
/// this quotient and the translated formulas is a genuine cross-check.
pub fn desk_quotient(scn: &DeskScenario) -> Result<TranslatedModel, InterpError> {
    let b = &scn.backend;
    let a0 = scn.particle("a0");
    let a0i = scn.particle_index("a0");
    let s0 = scn.signal_index("s0");
    let s1 = scn.signal_index("s1");
    let s2 = scn.signal_index("s2");
    let axes = [
        scn.particle_index("ax1"),
        scn.particle_index("ay1"),
        scn.particle_index("az1"),
    ];

    let cal_a = Calibration::new(
        a0.clone(),
        scn.signal("s0").beg().clone(),
        scn.signal("s1").beg().clone(),
    )?;
    let cal_b = Calibration::new(
        a0.clone(),
        scn.signal("s0").beg().clone(),
        scn.signal("s2").beg().clone(),
    )?;

    let values = scalar_values(b);
    let mut q_classes: Vec<Vec<Vec<usize>>> = Vec::new();
    for v in &values {
        let mut members = Vec::new();
        for (cal, ui) in [(&cal_a, s1), (&cal_b, s2)] {
            let carrier = cal.carrier_at(v);
            if let Some(xi) = scn.event_index(&carrier) {
                members.push(vec![xi, a0i, s0, ui]);
            }
        }
        assert!(!members.is_empty(), "every chosen value lands on the carrier");
        members.sort();
        q_classes.push(members);
    }

    // Body classes: charts with unit and double clock step (the degenerate
    // component may be any zero-length signal), and the two lightlike lines
    // (all remaining components are immaterial for a photon).
    let p1 = scn.signal_index("p1");
    let p2 = scn.signal_index("p2");
    let p3 = scn.signal_index("p3");
    let b1i = scn.particle_index("b1");
    let chart_a: Vec<Vec<usize>> = vec![
        vec![s0, a0i, s0, s1, axes[0], axes[1], axes[2]],
        vec![s1, a0i, s0, s1, axes[0], axes[1], axes[2]],
    ];
    let chart_b: Vec<Vec<usize>> = vec![
        vec![s0, a0i, s0, s2, axes[0], axes[1], axes[2]],
        vec![s1, a0i, s0, s2, axes[0], axes[1], axes[2]],
    ];
    let line_1: Vec<Vec<usize>> = vec![
        vec![p1, a0i, s0, s1, axes[0], axes[1], axes[2]],
        vec![p3, b1i, s2, s1, axes[2], axes[0], axes[1]],
    ];
    let line_2: Vec<Vec<usize>> = vec![
        vec![p2, a0i, s0, s1, axes[0], axes[1], axes[2]],
        vec![p2, b1i, s1, s0, axes[1], axes[2], axes[0]],
    ];
    let mut b_classes = vec![chart_a, chart_b, line_1, line_2];
    for members in &mut b_classes {
        members.sort();
    }
    let charts: Vec<usize> = vec![0, 1];
    let photons: Vec<usize> = vec![2, 3];

    let frame_of = |ui: usize| -> Result<Tetrad, InterpError> {
        let frame = Frame::new(
            a0.clone(),
            scn.signal("s0").beg().clone(),
            scn.signals[ui].1.beg().clone(),
            scn.particle("ax1").clone(),
            scn.particle("ay1").clone(),
            scn.particle("az1").clone(),
        );
        Ok(frame.tetrad()?)
    };
    let tetrads = [frame_of(s1)?, frame_of(s2)?];

    let shapes = [
        BodyShape::Worldline(a0.clone()),
        BodyShape::Worldline(a0.clone()),
        BodyShape::Light(LightLine::of_signal(scn.signal("p1")).expect("photon")),
        BodyShape::Light(LightLine::of_signal(scn.signal("p2")).expect("photon")),
    ];

    let mut model = FiniteModel::new(frame_signature());
    model.set_carrier("Q", values.len())?;
    model.set_carrier("B", b_classes.len())?;
    for &c in &charts {
        model.insert("Obs", vec![c])?;
    }
    for &p in &photons {
        model.insert("Ph", vec![p])?;
    }
    for (i, vi) in values.iter().enumerate() {
        for (j, vj) in values.iter().enumerate() {
            for (k, vk) in values.iter().enumerate() {
                if &(vi + vj) == vk {
                    model.insert("Plus", vec![i, j, k])?;
                }
                if &(vi * vj) == vk {
                    model.insert("Times", vec![i, j, k])?;
                }
            }
        }
    }
    for (ci, tetrad) in charts.iter().zip(&tetrads) {
        for (bi, shape) in shapes.iter().enumerate() {
            for (ti, vt) in values.iter().enumerate() {
                for (xi, vx) in values.iter().enumerate() {
                    for (yi, vy) in values.iter().enumerate() {
                        for (zi, vz) in values.iter().enumerate() {
                            let e = tetrad.event_at(&[
                                vt.clone(),
                                vx.clone(),
                                vy.clone(),
                                vz.clone(),
                            ]);
                            if shape.contains(&e) {
                                model.insert("W", vec![*ci, bi, ti, xi, yi, zi])?;
                            }
                        }
                    }
                }
            }
        }
    }

    let mut classes = BTreeMap::new();
    classes.insert("Q".to_string(), q_classes);
    classes.insert("B".to_string(), b_classes);
    Ok(TranslatedModel { model, classes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interp::specs::{signalling_macros, MacroDef};
    use crate::signalling::{iso, plus, times};

    fn eval_macro(m: &FiniteModel, def: &MacroDef, args: &[usize]) -> bool {
        let k: BTreeMap<String, usize> = def
            .params
            .iter()
            .zip(args)
            .map(|(p, &v)| (p.name.clone(), v))
            .collect();
        m.eval(&def.body, &k).expect("macro body evaluates")
    }

    fn macro_named(name: &str) -> MacroDef {
        signalling_macros()
            .into_iter()
            .find(|m| m.name == name)
            .expect("known macro")
    }

    #[test]
    fn full_fixture_carrier_shape() {
        let scn = DeskScenario::full();
        assert_eq!(scn.particles.len(), 13);
        assert_eq!(scn.signals.len(), 11);
        assert_eq!(scn.events().len(), 7);
    }

    #[test]
    fn transmit_receive_extensions_match_the_scenario() {
        let (scn, m) = desk_model().unwrap();
        assert!(m.holds("T", &[scn.particle_index("a0"), scn.signal_index("p1")]));
        assert!(m.holds("T", &[scn.particle_index("b1"), scn.signal_index("p1")]));
        assert!(m.holds("R", &[scn.particle_index("wA"), scn.signal_index("p1")]));
        assert!(m.holds("R", &[scn.particle_index("a0"), scn.signal_index("p2")]));
        assert!(!m.holds("R", &[scn.particle_index("a0"), scn.signal_index("p1")]));
        let zeros = scn.signals().filter(|(_, s)| s.is_event()).count();
        assert_eq!(m.extension("Ev").unwrap().len(), zeros);
    }

    #[test]
    fn fp_extension_is_exactly_calibratability() {
        let (scn, m) = desk_model().unwrap();
        for (ai, (_, a)) in scn.particles.iter().enumerate() {
            for (oi, o) in &scn.events() {
                for (ui, u) in &scn.events() {
                    let ok = Calibration::new(a.clone(), o.clone(), u.clone()).is_ok();
                    assert_eq!(
                        m.holds("Fp", &[ai, *oi, *ui]),
                        ok,
                        "Fp({ai},{oi},{ui})"
                    );
                }
            }
        }
    }

    #[test]
    fn iso_extension_matches_the_carrying_experiment() {
        let (scn, m) = desk_model().unwrap();
        let cals = scn.calibrations();
        // Regression guard for the fixture audit: the carrying experiment is
        // exact only when both calibrations sit on the resting time axis.
        assert!(
            cals.iter().all(|(ai, _, _, _)| *ai == 0),
            "a witness worldline picked up a second carrier event"
        );
        let ext = m.extension("Iso").unwrap();
        assert!(!ext.is_empty());
        for tuple in ext {
            let [xi, yi, ai, oi, ui, aj, oj, uj] = tuple[..] else {
                panic!("Iso arity")
            };
            let cal = &cals
                .iter()
                .find(|(a, o, u, _)| (*a, *o, *u) == (ai, oi, ui))
                .expect("calibration present")
                .3;
            let cal2 = &cals
                .iter()
                .find(|(a, o, u, _)| (*a, *o, *u) == (aj, oj, uj))
                .expect("calibration present")
                .3;
            let x = scn.signals[xi].1.beg().clone();
            let y = scn.signals[yi].1.beg().clone();
            let carried = iso(cal2, cal, &cal2.field_point(y).unwrap()).unwrap();
            assert_eq!(carried.carrier(), &x, "carrying {yi} into ({ai},{oi},{ui})");
        }
    }

    #[test]
    fn splus_matches_the_addition_experiment_for_every_unit() {
        let (scn, m) = desk_model().unwrap();
        let cals = scn.calibrations();
        let ext = m.extension("SPlus").unwrap();
        assert!(!ext.is_empty());
        for tuple in ext {
            let [xi, x1i, x2i, ai, oi] = tuple[..] else {
                panic!("SPlus arity")
            };
            let mut units = 0;
            for (a, o, _, cal) in &cals {
                if (*a, *o) != (ai, oi) {
                    continue;
                }
                units += 1;
                let t1 = cal.field_point(scn.signals[x1i].1.beg().clone()).unwrap();
                let t2 = cal.field_point(scn.signals[x2i].1.beg().clone()).unwrap();
                let sum = plus(cal, &t1, &t2).unwrap();
                assert_eq!(sum.carrier(), scn.signals[xi].1.beg());
            }
            assert!(units > 0, "a sum needs at least one calibration");
        }
    }

    #[test]
    fn stimes_matches_the_throwing_experiment() {
        let (scn, m) = desk_model().unwrap();
        let cals = scn.calibrations();
        let ext = m.extension("STimes").unwrap();
        assert!(!ext.is_empty());
        for tuple in ext {
            let [xi, x1i, x2i, ai, oi, ui] = tuple[..] else {
                panic!("STimes arity")
            };
            let cal = &cals
                .iter()
                .find(|(a, o, u, _)| (*a, *o, *u) == (ai, oi, ui))
                .expect("calibration present")
                .3;
            let t1 = cal.field_point(scn.signals[x1i].1.beg().clone()).unwrap();
            let t2 = cal.field_point(scn.signals[x2i].1.beg().clone()).unwrap();
            let prod = times(cal, &t1, &t2).unwrap();
            assert_eq!(prod.carrier(), scn.signals[xi].1.beg());
        }
    }

    #[test]
    fn op_extension_agrees_with_its_macro_everywhere() {
        let (scn, m) = desk_model().unwrap();
        let op = macro_named("Op");
        let np = scn.particles.len();
        let events = scn.events();
        let mut true_count = 0;
        for ai in 0..np {
            for (oi, _) in &events {
                for (ui, _) in &events {
                    if !m.holds("Fp", &[ai, *oi, *ui]) {
                        // The macro starts with Fp, so disagreement is only
                        // possible past this guard.
                        continue;
                    }
                    for xi in 0..np {
                        for yi in 0..np {
                            for zi in 0..np {
                                let args = [ai, *oi, *ui, xi, yi, zi];
                                let via_macro = eval_macro(&m, &op, &args);
                                let via_ext = m.holds("Op", &args);
                                assert_eq!(via_macro, via_ext, "Op{args:?}");
                                true_count += usize::from(via_ext);
                            }
                        }
                    }
                }
            }
        }
        // 10 calibrations on the time axis, 6 axis orders each.
        assert_eq!(true_count, 60);
    }

    #[test]
    fn event_macros_agree_exactly_on_the_witnessed_carrier() {
        let (scn, m) = desk_model().unwrap();
        let ev = macro_named("Ev");
        let beg = macro_named("Beg");
        let end = macro_named("End");
        let ns = scn.signals.len();
        for si in 0..ns {
            assert_eq!(
                eval_macro(&m, &ev, &[si]),
                m.holds("Ev", &[si]),
                "Ev({si})"
            );
            for ei in 0..ns {
                assert_eq!(
                    eval_macro(&m, &beg, &[si, ei]),
                    m.holds("Beg", &[si, ei]),
                    "Beg({si},{ei})"
                );
                assert_eq!(
                    eval_macro(&m, &end, &[si, ei]),
                    m.holds("End", &[si, ei]),
                    "End({si},{ei})"
                );
            }
        }
    }

    #[test]
    fn chain_macros_are_sound_where_the_carrier_holds_witnesses() {
        let (scn, m) = desk_model().unwrap();
        let prec = macro_named("Prec");
        let lambda = macro_named("Lambda");
        let wl = macro_named("Wl");
        let fp = macro_named("Fp");
        let ns = scn.signals.len();
        let np = scn.particles.len();

        let mut prec_hits = 0;
        for i in 0..ns {
            for j in 0..ns {
                if eval_macro(&m, &prec, &[i, j]) {
                    assert!(m.holds("Prec", &[i, j]), "Prec({i},{j})");
                    prec_hits += 1;
                }
            }
        }
        // Witnessed chains: the photon bounce 0 -> (1,1) -> (2,0), the
        // collinear run along p1/p3/p4, and every degenerate chain through
        // an event's own zero-length signal.
        assert!(prec_hits >= 10, "only {prec_hits} witnessed chains");

        let mut lambda_hits = 0;
        for i in 0..ns {
            for j in 0..ns {
                for k in 0..ns {
                    if eval_macro(&m, &lambda, &[i, j, k]) {
                        assert!(m.holds("Lambda", &[i, j, k]), "Lambda({i},{j},{k})");
                        lambda_hits += 1;
                    }
                }
            }
        }
        assert!(lambda_hits >= 6, "only {lambda_hits} witnessed triples");
        // The fully non-degenerate witnessed triple: three distinct events
        // along the p1 light line.
        let t = [
            scn.signal_index("s0"),
            scn.signal_index("s110"),
            scn.signal_index("s220"),
        ];
        assert!(eval_macro(&m, &lambda, &t));

        let mut wl_hits = 0;
        for i in 0..ns {
            for j in 0..ns {
                if eval_macro(&m, &wl, &[i, j]) {
                    assert!(m.holds("Wl", &[i, j]), "Wl({i},{j})");
                    wl_hits += 1;
                }
            }
        }
        assert!(wl_hits >= 3, "only {wl_hits} witnessed memberships");
        assert!(eval_macro(
            &m,
            &wl,
            &[scn.signal_index("s220"), scn.signal_index("p1")]
        ));

        for ai in 0..np {
            for oi in 0..ns {
                for ui in 0..ns {
                    if eval_macro(&m, &fp, &[ai, oi, ui]) {
                        assert!(m.holds("Fp", &[ai, oi, ui]), "Fp({ai},{oi},{ui})");
                    }
                }
            }
        }
    }

    #[test]
    fn cord_tuples_match_the_tetrad_chart() {
        let (scn, m) = desk_model().unwrap();
        let ext = m.extension("Cord").unwrap();
        assert!(!ext.is_empty());
        for tuple in ext {
            let [ei, rt, rx, ry, rz, ai, oi, ui, xi, yi, zi] = tuple[..] else {
                panic!("Cord arity")
            };
            let frame = Frame::new(
                scn.particles[ai].1.clone(),
                scn.signals[oi].1.beg().clone(),
                scn.signals[ui].1.beg().clone(),
                scn.particles[xi].1.clone(),
                scn.particles[yi].1.clone(),
                scn.particles[zi].1.clone(),
            );
            let coords = frame.coords_of(scn.signals[ei].1.beg()).unwrap();
            let cal = Calibration::new(
                scn.particles[ai].1.clone(),
                scn.signals[oi].1.beg().clone(),
                scn.signals[ui].1.beg().clone(),
            )
            .unwrap();
            for (ri, c) in [rt, rx, ry, rz].iter().zip(&coords) {
                assert_eq!(scn.signals[*ri].1.beg(), &cal.carrier_at(c));
            }
        }
        // The identity chart reads the off-axis event (1,1,0,0) as t=1, x=1.
        let chart = [
            scn.particle_index("a0"),
            scn.signal_index("s0"),
            scn.signal_index("s1"),
            scn.particle_index("ax1"),
            scn.particle_index("ay1"),
            scn.particle_index("az1"),
        ];
        let s1 = scn.signal_index("s1");
        let s0 = scn.signal_index("s0");
        let target = vec![
            scn.signal_index("s110"),
            s1,
            s1,
            s0,
            s0,
            chart[0],
            chart[1],
            chart[2],
            chart[3],
            chart[4],
            chart[5],
        ];
        assert!(m.holds("Cord", &target));
    }

    #[test]
    fn quotient_field_is_the_expected_value_arithmetic() {
        let scn = DeskScenario::full();
        let tm = desk_quotient(&scn).unwrap();
        let b = Backend::Exact;
        let values = scalar_values(&b);
        assert_eq!(tm.model.carrier("Q").unwrap(), values.len());
        // Plus and Times are the graphs of value arithmetic restricted to
        // the class set.
        for (i, vi) in values.iter().enumerate() {
            for (j, vj) in values.iter().enumerate() {
                for (k, vk) in values.iter().enumerate() {
                    assert_eq!(
                        tm.model.holds("Plus", &[i, j, k]),
                        &(vi + vj) == vk,
                        "Plus({i},{j},{k})"
                    );
                    assert_eq!(
                        tm.model.holds("Times", &[i, j, k]),
                        &(vi * vj) == vk,
                        "Times({i},{j},{k})"
                    );
                }
            }
        }
    }

    #[test]
    fn quotient_worldview_quantifies_the_lines() {
        let scn = DeskScenario::full();
        let tm = desk_quotient(&scn).unwrap();
        let v = |s: &Scalar| {
            scalar_values(&Backend::Exact)
                .iter()
                .position(|x| x == s)
                .expect("value in class set")
        };
        let b = Backend::Exact;
        let zero = v(&b.int(0));
        let one = v(&b.int(1));
        let two = v(&b.int(2));
        let half = v(&b.ratio(1, 2));
        // Chart A sees itself at the spatial origin for every time class.
        for t in 0..tm.model.carrier("Q").unwrap() {
            assert!(tm.model.holds("W", &[0, 0, t, zero, zero, zero]));
            assert!(tm.model.holds("W", &[0, 1, t, zero, zero, zero]));
            assert!(!tm.model.holds("W", &[0, 0, t, one, zero, zero]));
        }
        // The first light line reads x = t in both charts.
        assert!(tm.model.holds("W", &[0, 2, one, one, zero, zero]));
        assert!(tm.model.holds("W", &[1, 2, half, half, zero, zero]));
        // The second light line reads x = 2 - t in chart A (scale 1) and
        // x = 1 - t in chart B (scale 2).
        assert!(tm.model.holds("W", &[0, 3, two, zero, zero, zero]));
        assert!(tm.model.holds("W", &[0, 3, one, one, zero, zero]));
        assert!(!tm.model.holds("W", &[0, 3, zero, zero, zero, zero]));
        assert!(tm.model.holds("W", &[1, 3, half, half, zero, zero]));
        assert!(tm.model.holds("W", &[1, 3, one, zero, zero, zero]));
        // Photons never hold charts.
        assert!(!tm.model.holds("W", &[2, 0, zero, zero, zero, zero]));
    }
}

#[test]
fn probe_causal() {
    use crate::minkowski::Event;
    use crate::scalar::Backend;
    use crate::signalling::{causal_leq, causal_witness};
    let b = Backend::Exact;
    let e1 = Event::from_ints(&b, [-2, 0, 0, 0]);
    let e2 = Event::from_ints(&b, [-1, 0, 0, 0]);
    println!("leq={} witness={:?}", causal_leq(&e1, &e2), causal_witness(&e1, &e2).is_some());
    let e3 = Event::from_ints(&b, [0, 0, 0, 0]);
    println!("gap2 leq={}", causal_leq(&e1, &e3));
}
