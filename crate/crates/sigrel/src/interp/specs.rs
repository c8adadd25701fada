//! The two interpretation specifications as explicit data.
//!
//! Each direction is an [`InterpretationSpec`] over a pair of first-order
//! signatures:
//!
//! * [`frames_in_signalling`] defines the reference-frame sorts `Q`
//!   (quantities) and `B` (bodies) inside the signalling language.  A
//!   quantity is a calibrated worldline event `⟨x, a, o, u⟩` up to field
//!   isomorphism; a body is either a non-degenerate signal (a photon) or a
//!   six-parameter coordinate system (an observer).
//! * [`signalling_in_frames`] defines the signalling sorts `Par` (particles)
//!   and `Sig` (signals) inside the reference-frame language.  A particle is
//!   an observer up to worldline coincidence; a signal is a photon together
//!   with two observers marking its begin and end events.
//!
//! The target vocabularies are *extended*: besides the primitives (`T`/`R`
//! on one side, `Obs`/`Ph`/`W`/`Plus`/`Times` on the other) they name the
//! derived relations that the [`signalling`](crate::signalling) experiments
//! compute — `Ev`, `Beg`, `Fp`, `Iso`, `Cord`, `Meet`, and so on.  Every
//! extended name is definable one layer down; the defining formulas are kept
//! as [`MacroDef`]s so the whole chain stays inspectable, while the
//! defining formulas of the interpretations are phrased at the same level of
//! granularity as the derived vocabulary.

use folkit::{parse, Formula, InterpretationSpec, RelDef, Signature, SortDef, SpecError, Var};

use super::InterpError;

/// The bare signalling language: particles transmit and receive signals.
pub fn signalling_signature() -> Signature {
    Signature::new(
        &["Par", "Sig"],
        &[("T", &["Par", "Sig"]), ("R", &["Par", "Sig"])],
    )
    .expect("well-formed signature")
}

/// The signalling language extended with the derived relations realized by
/// the radar experiments.  Argument conventions:
///
/// * `Beg(s, e)` / `End(s, e)`: `e` is the departure / arrival event of `s`;
/// * `Prec(e, e')`: a signal chain leads from `e` to `e'`;
/// * `Fp(a, o, u)`: `o`, `u` calibrate `a`'s worldline as a field;
/// * `Iso(x, x', a, o, u, a', o', u')`: `x` in the field of `(a, o, u)`
///   corresponds to `x'` in the field of `(a', o', u')`;
/// * `SPlus(x, x1, x2, a, o)` / `STimes(x, x1, x2, a, o, u)`: on `a`'s
///   worldline, `x` is the sum / product of `x1` and `x2` in the field with
///   origin `o` (and unit `u`; the sum does not depend on the unit);
/// * `Mot(a, b)`: parallel (mutually motionless) worldlines;
/// * `Ort(a, b, c, d)`: the rest-space lines `a → b` and `c → d` are
///   orthogonal;
/// * `Op(a, o, u, ax, ay, az)`: the six parameters form a coordinate system;
/// * `Lambda(e1, e2, e3)`: three events on one lightlike line;
/// * `Wl(e, s)`: `e` lies on the lightlike line through `s`'s endpoints;
/// * `Cord(e, t, x, y, z, a, o, u, ax, ay, az)`: the chart reads the event
///   at those four worldline values.
pub fn extended_signalling_signature() -> Signature {
    Signature::new(
        &["Par", "Sig"],
        &[
            ("T", &["Par", "Sig"]),
            ("R", &["Par", "Sig"]),
            ("Ev", &["Sig"]),
            ("Beg", &["Sig", "Sig"]),
            ("End", &["Sig", "Sig"]),
            ("Prec", &["Sig", "Sig"]),
            ("Fp", &["Par", "Sig", "Sig"]),
            (
                "Iso",
                &["Sig", "Sig", "Par", "Sig", "Sig", "Par", "Sig", "Sig"],
            ),
            ("SPlus", &["Sig", "Sig", "Sig", "Par", "Sig"]),
            ("STimes", &["Sig", "Sig", "Sig", "Par", "Sig", "Sig"]),
            ("Mot", &["Par", "Par"]),
            ("Ort", &["Par", "Par", "Par", "Par"]),
            ("Op", &["Par", "Sig", "Sig", "Par", "Par", "Par"]),
            ("Lambda", &["Sig", "Sig", "Sig"]),
            ("Wl", &["Sig", "Sig"]),
            (
                "Cord",
                &[
                    "Sig", "Sig", "Sig", "Sig", "Sig", "Par", "Sig", "Sig", "Par", "Par", "Par",
                ],
            ),
        ],
    )
    .expect("well-formed signature")
}

/// The bare reference-frame language: observers, photons, the worldview
/// relation, and the field operations as graphs.
pub fn frame_signature() -> Signature {
    Signature::new(
        &["Q", "B"],
        &[
            ("Obs", &["B"]),
            ("Ph", &["B"]),
            ("W", &["B", "B", "Q", "Q", "Q", "Q"]),
            ("Plus", &["Q", "Q", "Q"]),
            ("Times", &["Q", "Q", "Q"]),
        ],
    )
    .expect("well-formed signature")
}

/// The reference-frame language extended with the derived relations used by
/// the signal interpretation: `Zero` and `Leq` (definable from the field
/// graphs), the chart-coincidence relation `Meet(b, p, a, t)` ("in `b`'s
/// chart, `p` and `a` coincide at time `t`"), and the event-coincidence
/// relation `meet(a, p, e)` ("some chart sees `a`, `p`, `e` together").
pub fn extended_frame_signature() -> Signature {
    Signature::new(
        &["Q", "B"],
        &[
            ("Obs", &["B"]),
            ("Ph", &["B"]),
            ("W", &["B", "B", "Q", "Q", "Q", "Q"]),
            ("Plus", &["Q", "Q", "Q"]),
            ("Times", &["Q", "Q", "Q"]),
            ("Zero", &["Q"]),
            ("Leq", &["Q", "Q"]),
            ("Meet", &["B", "B", "B", "Q"]),
            ("meet", &["B", "B", "B"]),
        ],
    )
    .expect("well-formed signature")
}

fn sort_def(
    target: &Signature,
    name: &str,
    var_hint: &str,
    components: &[(&str, &str)],
    delta: &str,
    epsilon: &str,
) -> SortDef {
    let comp_decls: Vec<(&str, &str)> = components.to_vec();
    let mut eps_decls: Vec<(String, String)> = components
        .iter()
        .map(|(l, s)| (l.to_string(), s.to_string()))
        .collect();
    eps_decls.extend(
        components
            .iter()
            .map(|(l, s)| (format!("{l}'"), s.to_string())),
    );
    let eps_refs: Vec<(&str, &str)> = eps_decls
        .iter()
        .map(|(l, s)| (l.as_str(), s.as_str()))
        .collect();
    SortDef {
        name: name.to_string(),
        var_hint: var_hint.to_string(),
        components: components
            .iter()
            .map(|(l, s)| (l.to_string(), s.to_string()))
            .collect(),
        delta: parse(target, &comp_decls, delta).expect("delta parses"),
        epsilon: parse(target, &eps_refs, epsilon).expect("epsilon parses"),
    }
}

fn rel_def(
    spec_sorts: &[&SortDef],
    target: &Signature,
    name: &str,
    params: &[(&str, &str)],
    body: &str,
) -> RelDef {
    let mut decls: Vec<(String, String)> = Vec::new();
    for (pname, psort) in params {
        match spec_sorts.iter().find(|d| d.name == *psort) {
            Some(def) => {
                for (label, csort) in &def.components {
                    decls.push((format!("{pname}_{label}"), csort.clone()));
                }
            }
            None => decls.push((pname.to_string(), psort.to_string())),
        }
    }
    let refs: Vec<(&str, &str)> = decls.iter().map(|(n, s)| (n.as_str(), s.as_str())).collect();
    RelDef {
        name: name.to_string(),
        params: params.iter().map(|(n, s)| Var::new(*n, *s)).collect(),
        body: parse(target, &refs, body).expect("relation body parses"),
    }
}

/// Quantities and bodies defined over the extended signalling language.
///
/// A quantity variable `q` is matched to `⟨q_x, q_a, q_o, q_u⟩`: an event
/// `q_x` on the calibrated worldline of `q_a`; two tuples are equal when the
/// field isomorphism between their calibrations carries one carrier event to
/// the other.  A body variable `b` is matched to
/// `⟨b_s, b_a, b_o, b_u, b_x, b_y, b_z⟩`: the signal `b_s` when it is
/// non-degenerate (a photon), otherwise the coordinate system given by the
/// remaining six parameters (an observer).
pub fn frames_in_signalling() -> Result<InterpretationSpec, SpecError> {
    let source = frame_signature();
    let target = extended_signalling_signature();

    let q = sort_def(
        &target,
        "Q",
        "q",
        &[("x", "Sig"), ("a", "Par"), ("o", "Sig"), ("u", "Sig")],
        "(and (T a x) (Ev x) (Fp a o u))",
        "(Iso x' x a' o' u' a o u)",
    );
    let b = sort_def(
        &target,
        "B",
        "b",
        &[
            ("s", "Sig"),
            ("a", "Par"),
            ("o", "Sig"),
            ("u", "Sig"),
            ("x", "Par"),
            ("y", "Par"),
            ("z", "Par"),
        ],
        "(or (not (Ev s)) (and (Ev s) (Op a o u x y z)))",
        "(or \
           (and (not (Ev s')) (not (Ev s)) \
                (forall (e Sig) (<-> (Wl e s') (Wl e s)))) \
           (and (Ev s') (Ev s) \
                (forall ((e Sig) (ct Sig) (cx Sig) (cy Sig) (cz Sig)) \
                  (<-> (Cord e ct cx cy cz a' o' u' x' y' z') \
                       (Cord e ct cx cy cz a o u x y z)))))",
    );
    let sorts = [&q, &b];

    let ph = rel_def(&sorts, &target, "Ph", &[("b", "B")], "(not (Ev b_s))");
    let obs = rel_def(
        &sorts,
        &target,
        "Obs",
        &[("b", "B")],
        "(and (Ev b_s) (Op b_a b_o b_u b_x b_y b_z))",
    );
    // `Plus(q1, q2, q)` and `Times(q1, q2, q)` hold when `q` is the sum or
    // product: the operands are carried into the result's calibration by the
    // field isomorphism and combined there.  The witnesses are nested so
    // finite evaluation prunes as soon as a carried value is missing.
    let plus = rel_def(
        &sorts,
        &target,
        "Plus",
        &[("q1", "Q"), ("q2", "Q"), ("q", "Q")],
        "(exists (w1 Sig) \
           (and (Iso w1 q1_x q_a q_o q_u q1_a q1_o q1_u) \
                (exists (w2 Sig) \
                  (and (Iso w2 q2_x q_a q_o q_u q2_a q2_o q2_u) \
                       (SPlus q_x w1 w2 q_a q_o)))))",
    );
    let times = rel_def(
        &sorts,
        &target,
        "Times",
        &[("q1", "Q"), ("q2", "Q"), ("q", "Q")],
        "(exists (w1 Sig) \
           (and (Iso w1 q1_x q_a q_o q_u q1_a q1_o q1_u) \
                (exists (w2 Sig) \
                  (and (Iso w2 q2_x q_a q_o q_u q2_a q2_o q2_u) \
                       (STimes q_x w1 w2 q_a q_o q_u)))))",
    );
    // `W(m, b, t, x, y, z)`: `m` is an observer, the four quantities are
    // carried into `m`'s calibration, the chart locates the event with those
    // readings, and that event lies on `b`'s worldline — the lightlike line
    // for a photon, the experimenter's worldline for an observer.
    let w = rel_def(
        &sorts,
        &target,
        "W",
        &[
            ("m", "B"),
            ("b", "B"),
            ("t", "Q"),
            ("x", "Q"),
            ("y", "Q"),
            ("z", "Q"),
        ],
        "(and (Ev m_s) \
           (exists (wt Sig) \
             (and (Iso wt t_x m_a m_o m_u t_a t_o t_u) \
               (exists (wx Sig) \
                 (and (Iso wx x_x m_a m_o m_u x_a x_o x_u) \
                   (exists (wy Sig) \
                     (and (Iso wy y_x m_a m_o m_u y_a y_o y_u) \
                       (exists (wz Sig) \
                         (and (Iso wz z_x m_a m_o m_u z_a z_o z_u) \
                           (exists (e Sig) \
                             (and (Cord e wt wx wy wz m_a m_o m_u m_x m_y m_z) \
                                  (-> (not (Ev b_s)) (Wl e b_s)) \
                                  (-> (Ev b_s) (T b_a e)))))))))))))",
    );

    InterpretationSpec::new(
        source,
        target,
        vec![q, b],
        vec![ph, obs, plus, times, w],
    )
}

/// Particles and signals defined over the extended reference-frame language.
///
/// A particle variable `a` is matched to a single body `a_b`, required to be
/// an observer; two observers are the same particle when each holds the
/// other at its spatial origin for all times.  A signal variable `s` is
/// matched to `⟨s_b, s_p, s_e⟩`: a photon `s_p` with two observers marking
/// its departure (where `s_b` meets it) and arrival (where `s_e` meets it),
/// the departure no later than the arrival in `s_b`'s chart.
pub fn signalling_in_frames() -> Result<InterpretationSpec, SpecError> {
    let source = signalling_signature();
    let target = extended_frame_signature();

    let par = sort_def(
        &target,
        "Par",
        "a",
        &[("b", "B")],
        "(Obs b)",
        "(forall ((t Q) (x Q) (y Q) (z Q)) \
           (<-> (W b' b t x y z) (and (Zero x) (Zero y) (Zero z))))",
    );
    let sig = sort_def(
        &target,
        "Sig",
        "s",
        &[("b", "B"), ("p", "B"), ("e", "B")],
        "(and (Ph p) (Obs b) (Obs e) \
           (exists ((t Q) (t' Q)) \
             (and (Leq t t') (Meet b p b t) (Meet b p e t'))))",
        // Matching endpoint meets; the photons themselves must agree only
        // when the triple is non-degenerate (otherwise the signal is a bare
        // event and any photon through it will do).
        "(and (meet b' b p') (meet e' e p') \
              (-> (not (meet b' p' e')) (= p' p)))",
    );
    let sorts = [&par, &sig];

    let t = rel_def(
        &sorts,
        &target,
        "T",
        &[("a", "Par"), ("s", "Sig")],
        "(meet a_b s_b s_p)",
    );
    let r = rel_def(
        &sorts,
        &target,
        "R",
        &[("a", "Par"), ("s", "Sig")],
        "(meet a_b s_e s_p)",
    );

    InterpretationSpec::new(source, target, vec![par, sig], vec![t, r])
}

/// A named defining formula for one extended-vocabulary relation: the proof
/// that the extended name is shorthand, not new expressive power.
#[derive(Clone, Debug, PartialEq)]
pub struct MacroDef {
    pub name: String,
    pub params: Vec<Var>,
    pub body: Formula,
}

impl MacroDef {
    fn new(sig: &Signature, name: &str, params: &[(&str, &str)], body: &str) -> Self {
        let f = parse(sig, params, body).expect("macro body parses");
        MacroDef {
            name: name.to_string(),
            params: params.iter().map(|(n, s)| Var::new(*n, *s)).collect(),
            body: f,
        }
    }

    /// Render as a display-style biconditional definition.
    pub fn rendered(&self) -> String {
        let args: Vec<&str> = self.params.iter().map(|p| p.name.as_str()).collect();
        format!("{}({}) :<-> {}", self.name, args.join(", "), self.body)
    }
}

/// Defining formulas for the extended signalling vocabulary, each over the
/// names before it (ultimately over `T` and `R` alone).  Only the relations
/// with short first-order definitions are unfolded here; the geometric ones
/// (`Iso`, `SPlus`, `STimes`, `Mot`, `Ort`, `Cord`, …) are realized by the
/// constructive experiments in [`signalling`](crate::signalling), whose
/// radar protocols are their definitions.
pub fn signalling_macros() -> Vec<MacroDef> {
    let sig = extended_signalling_signature();
    let pair = |i: &str, j: &str| {
        format!(
            "(exists (s Sig) (or (and (Beg s {i}) (End s {j})) (and (Beg s {j}) (End s {i}))))"
        )
    };
    vec![
        MacroDef::new(
            &sig,
            "Ev",
            &[("e", "Sig")],
            "(forall (c Par) (-> (T c e) (R c e)))",
        ),
        // The endpoint markers range over events; without the guard, any
        // signal sharing the departure (or arrival) event would qualify.
        MacroDef::new(
            &sig,
            "Beg",
            &[("s", "Sig"), ("e", "Sig")],
            "(and (Ev e) (forall (c Par) (-> (T c s) (T c e))))",
        ),
        MacroDef::new(
            &sig,
            "End",
            &[("s", "Sig"), ("e", "Sig")],
            "(and (Ev e) (forall (c Par) (-> (R c s) (R c e))))",
        ),
        MacroDef::new(
            &sig,
            "Prec",
            &[("e", "Sig"), ("e'", "Sig")],
            "(exists ((w Sig) (s1 Sig) (s2 Sig)) \
               (and (Beg s1 e) (End s1 w) (Beg s2 w) (End s2 e')))",
        ),
        MacroDef::new(
            &sig,
            "Fp",
            &[("a", "Par"), ("o", "Sig"), ("u", "Sig")],
            "(and (Ev o) (Ev u) (not (= o u)) (Prec o u) (T a o) (T a u))",
        ),
        MacroDef::new(
            &sig,
            "Op",
            &[
                ("a", "Par"),
                ("o", "Sig"),
                ("u", "Sig"),
                ("ax", "Par"),
                ("ay", "Par"),
                ("az", "Par"),
            ],
            "(and (Fp a o u) (Mot a ax) (Mot a ay) (Mot a az) \
                  (Ort a ax a ay) (Ort a ax a az) (Ort a ay a az))",
        ),
        MacroDef::new(
            &sig,
            "Lambda",
            &[("e1", "Sig"), ("e2", "Sig"), ("e3", "Sig")],
            &format!(
                "(and {} {} {})",
                pair("e1", "e2"),
                pair("e1", "e3"),
                pair("e2", "e3")
            ),
        ),
        MacroDef::new(
            &sig,
            "Wl",
            &[("e", "Sig"), ("s", "Sig")],
            "(exists ((e1 Sig) (e2 Sig)) \
               (and (Lambda e e1 e2) (Beg s e1) (End s e2)))",
        ),
    ]
}

/// Defining formulas for the extended reference-frame vocabulary, over the
/// bare frame language.
pub fn frame_macros() -> Vec<MacroDef> {
    let sig = extended_frame_signature();
    vec![
        MacroDef::new(&sig, "Zero", &[("q", "Q")], "(Plus q q q)"),
        MacroDef::new(
            &sig,
            "Leq",
            &[("t", "Q"), ("t'", "Q")],
            "(exists ((d Q) (w Q)) (and (Times d d w) (Plus t w t')))",
        ),
        MacroDef::new(
            &sig,
            "Meet",
            &[("b", "B"), ("p", "B"), ("a", "B"), ("t", "Q")],
            "(exists ((x Q) (y Q) (z Q)) (and (W b p t x y z) (W b a t x y z)))",
        ),
        MacroDef::new(
            &sig,
            "meet",
            &[("a", "B"), ("p", "B"), ("e", "B")],
            "(exists ((c B) (t Q)) (and (Meet c a p t) (Meet c a e t)))",
        ),
    ]
}

/// Both directions of the interpretation pair, validated, together with the
/// macro layer that grounds the extended vocabularies.
///
/// `tr_spec` carries reference-frame statements into the signalling
/// language; `Tr_spec` carries signalling statements into the
/// reference-frame language.  The capitalisation difference is the usual
/// one for an interpretation and its near-inverse.
#[derive(Clone, Debug)]
#[allow(non_snake_case)]
pub struct ConcreteInterpretations {
    /// `Q` and `B` defined in the signalling language.
    pub tr_spec: InterpretationSpec,
    /// `Par` and `Sig` defined in the reference-frame language.
    pub Tr_spec: InterpretationSpec,
    pub signalling_macros: Vec<MacroDef>,
    pub frame_macros: Vec<MacroDef>,
}

impl ConcreteInterpretations {
    pub fn new() -> Result<Self, InterpError> {
        Ok(ConcreteInterpretations {
            tr_spec: frames_in_signalling()?,
            Tr_spec: signalling_in_frames()?,
            signalling_macros: signalling_macros(),
            frame_macros: frame_macros(),
        })
    }
}

/// The field fragment of the frame-defining direction: the sort `Q` with
/// the operation graphs only.  Small enough that the full quotient pipeline
/// (domain filter, equivalence check, induced relations) runs end to end on
/// finite fixtures.
pub fn field_fragment_spec() -> Result<InterpretationSpec, SpecError> {
    let source = Signature::new(
        &["Q"],
        &[("Plus", &["Q", "Q", "Q"]), ("Times", &["Q", "Q", "Q"])],
    )
    .expect("well-formed signature");
    let target = extended_signalling_signature();
    let full = frames_in_signalling()?;
    let q = full.sorts["Q"].clone();
    let plus = full.relations["Plus"].clone();
    let times = full.relations["Times"].clone();
    InterpretationSpec::new(source, target, vec![q], vec![plus, times])
}

fn exists_chain(steps: Vec<(Var, Formula)>, last: Formula) -> Formula {
    let mut out = last;
    for (var, guard) in steps.into_iter().rev() {
        out = Formula::exists(vec![var], Formula::and(vec![guard, out]));
    }
    out
}

fn qvar(n: &str) -> Var {
    Var::new(n, "Q")
}

/// `gap² = sum of the three spatial squared differences, and it equals the
/// squared time difference` — the slope-one condition between the chart
/// points `(t, x, y, z)` and `(t', x', y', z')`, written with the operation
/// graphs.  Each witness is introduced by the atom that determines it, so
/// finite evaluation walks a single chain.
fn slope_one_condition() -> Formula {
    let rel = |name: &str, args: &[&str]| Formula::rel(name, args);
    exists_chain(
        vec![
            (qvar("dt"), rel("Plus", &["t'", "dt", "t"])),
            (qvar("qt"), rel("Times", &["dt", "dt", "qt"])),
            (qvar("dx"), rel("Plus", &["x'", "dx", "x"])),
            (qvar("qx"), rel("Times", &["dx", "dx", "qx"])),
            (qvar("dy"), rel("Plus", &["y'", "dy", "y"])),
            (qvar("qy"), rel("Times", &["dy", "dy", "qy"])),
            (qvar("dz"), rel("Plus", &["z'", "dz", "z"])),
            (qvar("qz"), rel("Times", &["dz", "dz", "qz"])),
            (qvar("s1"), rel("Plus", &["qx", "qy", "s1"])),
        ],
        rel("Plus", &["s1", "qz", "qt"]),
    )
}

/// The reference-frame axioms as sentences of the bare frame language.
/// `AxFd` is a family: the ordered-Euclidean-field laws stated one by one
/// over the operation graphs.
pub fn frame_axioms() -> Vec<(String, Formula)> {
    let sig = frame_signature();
    let s = |text: &str| parse(&sig, &[], text).expect("axiom parses");
    let mut out: Vec<(String, Formula)> = Vec::new();

    // AxPh: the events any observer can connect by a photon are exactly the
    // chart point pairs satisfying the slope-one condition.
    let photon_link = Formula::exists(
        vec![Var::new("p", "B")],
        Formula::and(vec![
            Formula::rel("Ph", &["p"]),
            Formula::rel("W", &["m", "p", "t", "x", "y", "z"]),
            Formula::rel("W", &["m", "p", "t'", "x'", "y'", "z'"]),
        ]),
    );
    let ax_ph = Formula::forall(
        vec![
            Var::new("m", "B"),
            qvar("t"),
            qvar("x"),
            qvar("y"),
            qvar("z"),
            qvar("t'"),
            qvar("x'"),
            qvar("y'"),
            qvar("z'"),
        ],
        Formula::implies(
            Formula::rel("Obs", &["m"]),
            Formula::iff(photon_link, slope_one_condition()),
        ),
    );
    out.push(("AxPh".to_string(), ax_ph));

    out.push((
        "AxEv".to_string(),
        s("(forall ((m B) (k B) (t Q) (x Q) (y Q) (z Q)) \
             (-> (and (Obs m) (Obs k)) \
                 (exists ((t' Q) (x' Q) (y' Q) (z' Q)) \
                   (forall (c B) (<-> (W m c t x y z) (W k c t' x' y' z'))))))"),
    ));

    out.push((
        "AxSelf".to_string(),
        s("(forall ((m B) (t Q) (x Q) (y Q) (z Q)) \
             (-> (Obs m) \
                 (<-> (W m m t x y z) \
                      (and (Plus x x x) (Plus y y y) (Plus z z z)))))"),
    ));

    let fd: [(&str, &str); 12] = [
        (
            "AxFd-sum-exists",
            "(forall ((q1 Q) (q2 Q)) (exists (q3 Q) (Plus q1 q2 q3)))",
        ),
        (
            "AxFd-sum-unique",
            "(forall ((q1 Q) (q2 Q) (q3 Q) (w Q)) \
               (-> (and (Plus q1 q2 q3) (Plus q1 q2 w)) (= w q3)))",
        ),
        (
            "AxFd-sum-commutes",
            "(forall ((q1 Q) (q2 Q) (q3 Q)) (<-> (Plus q1 q2 q3) (Plus q2 q1 q3)))",
        ),
        (
            "AxFd-sum-associates",
            "(forall ((q1 Q) (q2 Q) (q3 Q) (q12 Q) (q23 Q) (w Q)) \
               (-> (and (Plus q1 q2 q12) (Plus q2 q3 q23) (Plus q12 q3 w)) \
                   (Plus q1 q23 w)))",
        ),
        (
            "AxFd-zero",
            "(exists (n Q) (and (Plus n n n) (forall (q Q) (Plus q n q))))",
        ),
        (
            "AxFd-negatives",
            "(forall ((q Q) (n Q)) (-> (Plus n n n) (exists (w Q) (Plus q w n))))",
        ),
        (
            "AxFd-product-commutes",
            "(forall ((q1 Q) (q2 Q) (q3 Q)) (<-> (Times q1 q2 q3) (Times q2 q1 q3)))",
        ),
        (
            "AxFd-product-associates",
            "(forall ((q1 Q) (q2 Q) (q3 Q) (q12 Q) (q23 Q) (w Q)) \
               (-> (and (Times q1 q2 q12) (Times q2 q3 q23) (Times q12 q3 w)) \
                   (Times q1 q23 w)))",
        ),
        (
            "AxFd-one",
            "(exists (i Q) (and (not (Plus i i i)) (forall (q Q) (Times q i q))))",
        ),
        (
            "AxFd-inverses",
            "(forall ((q Q) (i Q)) \
               (-> (and (not (Plus q q q)) (forall (c Q) (Times c i c))) \
                   (exists (w Q) (Times q w i))))",
        ),
        (
            "AxFd-distributes",
            "(forall ((q1 Q) (q2 Q) (q3 Q) (s Q) (p Q) (p1 Q) (p2 Q)) \
               (-> (and (Plus q2 q3 s) (Times q1 s p) \
                        (Times q1 q2 p1) (Times q1 q3 p2)) \
                   (Plus p1 p2 p)))",
        ),
        // The Euclidean order: every element is a square or the negative of
        // one, and sums of squares are squares again.
        (
            "AxFd-squares-order",
            "(forall ((q Q) (n Q)) \
               (-> (Plus n n n) \
                   (exists ((w Q) (sq Q)) \
                     (and (Times w w sq) (or (= sq q) (Plus q sq n))))))",
        ),
    ];
    for (name, text) in fd {
        out.push((name.to_string(), s(text)));
    }
    out.push((
        "AxFd-sum-of-squares".to_string(),
        s("(forall ((a Q) (b Q) (sa Q) (sb Q) (w Q)) \
             (-> (and (Times a a sa) (Times b b sb) (Plus sa sb w)) \
                 (exists (c Q) (Times c c w))))"),
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn both_directions_validate() {
        let ci = ConcreteInterpretations::new().unwrap();
        ci.tr_spec.validate().unwrap();
        ci.Tr_spec.validate().unwrap();
        assert_eq!(ci.tr_spec.sorts.len(), 2);
        assert_eq!(ci.tr_spec.relations.len(), 5);
        assert_eq!(ci.Tr_spec.sorts.len(), 2);
        assert_eq!(ci.Tr_spec.relations.len(), 2);
    }

    #[test]
    fn macro_bodies_are_well_sorted() {
        let ssig = extended_signalling_signature();
        for m in signalling_macros() {
            let decls: BTreeMap<String, String> = m
                .params
                .iter()
                .map(|p| (p.name.clone(), p.sort.clone()))
                .collect();
            ssig.validate(&m.body, &decls)
                .unwrap_or_else(|e| panic!("{}: {e}", m.name));
            let decl = ssig.relation(&m.name).expect("macro names a relation");
            assert_eq!(
                decl.to_vec(),
                m.params.iter().map(|p| p.sort.clone()).collect::<Vec<_>>(),
                "{} arity",
                m.name
            );
        }
        let fsig = extended_frame_signature();
        for m in frame_macros() {
            let decls: BTreeMap<String, String> = m
                .params
                .iter()
                .map(|p| (p.name.clone(), p.sort.clone()))
                .collect();
            fsig.validate(&m.body, &decls)
                .unwrap_or_else(|e| panic!("{}: {e}", m.name));
            assert_eq!(
                ssig.relation(&m.name).is_some(),
                false,
                "frame macro {} must not clash with the signalling names",
                m.name
            );
        }
    }

    #[test]
    fn axioms_are_closed_and_well_sorted() {
        let sig = frame_signature();
        let axioms = frame_axioms();
        assert_eq!(axioms.len(), 16);
        for (name, f) in &axioms {
            assert!(f.free_vars().is_empty(), "{name} must be a sentence");
            sig.validate(f, &BTreeMap::new())
                .unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn axioms_translate_into_the_signalling_language() {
        let spec = frames_in_signalling().unwrap();
        for (name, f) in frame_axioms() {
            let t = spec
                .translate(&f, &[])
                .unwrap_or_else(|e| panic!("{name}: {e}"));
            spec.target
                .validate(&t, &BTreeMap::new())
                .unwrap_or_else(|e| panic!("translated {name}: {e}"));
        }
    }

    #[test]
    fn quantity_equality_translates_to_the_isomorphism_atom() {
        let spec = frames_in_signalling().unwrap();
        let out = spec
            .translate(&Formula::eq("q", "r"), &[("q", "Q"), ("r", "Q")])
            .unwrap();
        assert_eq!(
            out.to_string(),
            "(Iso q_x r_x q_a q_o q_u r_a r_o r_u)"
        );
    }

    #[test]
    fn particle_equality_translates_to_shared_origin() {
        let spec = signalling_in_frames().unwrap();
        let out = spec
            .translate(&Formula::eq("a", "c"), &[("a", "Par"), ("c", "Par")])
            .unwrap();
        assert_eq!(
            out.to_string(),
            "(forall ((t Q) (x Q) (y Q) (z Q)) \
             (<-> (W a_b c_b t x y z) (and (Zero x) (Zero y) (Zero z))))"
        );
    }

    #[test]
    fn transmits_unfolds_to_a_meet() {
        let spec = signalling_in_frames().unwrap();
        let out = spec
            .translate(
                &Formula::rel("T", &["a", "s"]),
                &[("a", "Par"), ("s", "Sig")],
            )
            .unwrap();
        assert_eq!(out.to_string(), "(meet a_b s_b s_p)");
        let out = spec
            .translate(
                &Formula::rel("R", &["a", "s"]),
                &[("a", "Par"), ("s", "Sig")],
            )
            .unwrap();
        assert_eq!(out.to_string(), "(meet a_b s_e s_p)");
    }

    #[test]
    fn the_field_fragment_reuses_the_full_definitions() {
        let frag = field_fragment_spec().unwrap();
        let full = frames_in_signalling().unwrap();
        assert_eq!(frag.sorts["Q"], full.sorts["Q"]);
        assert_eq!(frag.relations["Plus"], full.relations["Plus"]);
        assert_eq!(frag.relations["Times"], full.relations["Times"]);
    }
}
