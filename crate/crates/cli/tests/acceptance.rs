//! End-to-end acceptance suite: one `[PASS]`/`[FAIL]` line per criterion.
//!
//! Every expected value below is written out by hand or computed by an
//! independent route (literal formulas, direct squaring, structural
//! arguments) rather than read back from the code under test.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::ExitCode;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rbx_core::document::AlgebraSpecDocument;
use rbx_core::families::{build_family, sweedler, sweedler_family_element, BuiltFamily, FamilyKind, QuantumGroup};
use rbx_core::rota_baxter::{
    check_quasi_idempotent_operator, check_rb_identity, dendriform_products, identity_rb, quasi_idempotent_weight,
    rb_from_element, tridendriform_products,
};
use rbx_core::{CheckPolicy, Coverage, Element, FiniteDimAlgebra, HopfAlgebra, Rational, Scalar, ScalarRing, Side};

type Outcome = Result<Vec<String>, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn int(n: i64) -> Scalar {
    Scalar::int(n)
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `Σ c·e_label` over the labels of `alg`.
fn elem(alg: &FiniteDimAlgebra, terms: &[(&str, Scalar)]) -> Element {
    alg.element(terms).expect("labels exist")
}

fn exhaustive() -> CheckPolicy {
    CheckPolicy::exhaustive()
}

/// Every descriptor shape, with the quantum group at d = 3, 4, 5.
const FAMILIES: &[&str] = &[
    "sweedler",
    "group:cyclic:4",
    "group:symmetric:3",
    "group:dihedral:4",
    "uqsl2:3",
    "uqsl2:4",
    "uqsl2:5",
    "hecke:A:2",
    "hecke:I2:5",
];

/// Families are certified once, before any criterion is timed.
fn fixtures() -> &'static Vec<BuiltFamily> {
    static F: OnceLock<Vec<BuiltFamily>> = OnceLock::new();
    F.get_or_init(|| {
        FAMILIES
            .iter()
            .map(|d| build_family(d, &CheckPolicy::default()).unwrap_or_else(|e| panic!("{d}: {e}")))
            .collect()
    })
}

fn family(descriptor: &str) -> &'static BuiltFamily {
    fixtures()
        .iter()
        .find(|f| f.descriptor() == descriptor)
        .expect("fixture")
}

fn quantum(descriptor: &str) -> &'static QuantumGroup {
    match family(descriptor).kind() {
        FamilyKind::Quantum(g) => g,
        _ => unreachable!("{descriptor} is a quantum group"),
    }
}

// ---------------------------------------------------------------- criterion 1

fn c1_sweedler_dual_table() -> Outcome {
    let h = sweedler();
    let dual = h.dual_algebra();
    // Row i, column j holds the index k with f_i f_j = f_k, if nonzero.
    let table: [[Option<usize>; 4]; 4] = [
        [Some(0), None, Some(2), None],
        [None, Some(1), None, Some(3)],
        [None, Some(2), None, None],
        [Some(3), None, None, None],
    ];
    let mut nonzero = 0;
    for (i, row) in table.iter().enumerate() {
        for (j, entry) in row.iter().enumerate() {
            let want: Vec<(usize, Scalar)> = entry.iter().map(|&k| (k, int(1))).collect();
            let got = dual.constants().get(i, j);
            ensure(got == want.as_slice(), || {
                format!("f{}·f{} = {got:?}, expected {want:?}", i + 1, j + 1)
            })?;
            nonzero += usize::from(entry.is_some());
        }
    }
    ensure(nonzero == 6, || format!("{nonzero} nonzero products"))?;
    Ok(vec!["16 products compared, 6 nonzero".into()])
}

// ---------------------------------------------------------------- criterion 2

fn c2_sweedler_trace_element() -> Outcome {
    let h = sweedler();
    let dual = h.dual_algebra();
    let traces: Vec<Scalar> = (0..4)
        .map(|i| dual.left_mult_matrix(&dual.basis_element(i)).trace().expect("square"))
        .collect();
    ensure(traces == [int(2), int(2), int(0), int(0)], || {
        format!("traces {traces:?}")
    })?;
    let alg = h.algebra();
    let expected = elem(alg, &[("1", int(2)), ("x", int(2))]);
    let x = h.trace_element().map_err(|e| e.to_string())?;
    ensure(x == expected, || format!("x_H = {x:?}"))?;
    ensure(h.counit_of(&x) == int(4), || "ε(x_H) ≠ 4".into())?;
    ensure(alg.mul(&x, &x) == x.scale(&int(4)), || "x_H² ≠ 4·x_H".into())?;
    Ok(vec!["x_H = 2·1 + 2·x, ε(x_H) = 4".into()])
}

// ---------------------------------------------------------------- criterion 3

fn c3_sweedler_integrals() -> Outcome {
    let h = sweedler();
    let alg = h.algebra();
    for (side, sign) in [(Side::Left, 1), (Side::Right, -1)] {
        let got = h.integrals(side).map_err(|e| e.to_string())?;
        let want = elem(alg, &[("y", int(1)), ("xy", int(sign))]);
        ensure(got == vec![want], || format!("{side:?} integrals {got:?}"))?;
        let lead = got[0].coeffs().iter().find(|c| !c.is_zero()).expect("nonzero");
        ensure(lead.is_one(), || format!("{side:?} leading coefficient {lead}"))?;
    }
    Ok(vec!["left = span(y + xy), right = span(y − xy)".into()])
}

// ---------------------------------------------------------------- criterion 4

const SWEEDLER_POINTS: [(i64, i64, i64); 3] = [(1, 0, 0), (1, 2, 3), (0, 1, 1)];

fn c4_sweedler_operator_table() -> Outcome {
    let h = sweedler();
    let alg = h.algebra();
    for (m1, m2, m3) in SWEEDLER_POINTS {
        let xi = sweedler_family_element(&rat(m1), &rat(m2), &rat(m3)).map_err(|e| e.to_string())?;
        // The four-line display, evaluated at the parameter point.
        let display = [
            elem(alg, &[("1", int(m1)), ("x", int(m1)), ("y", int(m2)), ("xy", int(m3))]),
            elem(
                alg,
                &[("1", int(m1)), ("x", int(m1)), ("y", int(-m3)), ("xy", int(-m2))],
            ),
            elem(alg, &[("y", int(m1)), ("xy", int(m1))]),
            elem(alg, &[("y", int(m1)), ("xy", int(m1))]),
        ];
        for (j, want) in display.iter().enumerate() {
            let got = alg.mul(&xi, &alg.basis_element(j));
            ensure(&got == want, || {
                format!("μ = ({m1},{m2},{m3}): P({}) = {got:?}", alg.label(j))
            })?;
        }
    }
    Ok(vec!["display matched at (1,0,0), (1,2,3), (0,1,1)".into()])
}

// ---------------------------------------------------------------- criterion 5

fn c5_sweedler_weight() -> Outcome {
    let h = sweedler();
    let alg = h.algebra();
    let mut notes = Vec::new();
    for (m1, m2, m3) in SWEEDLER_POINTS {
        let xi = sweedler_family_element(&rat(m1), &rat(m2), &rat(m3)).map_err(|e| e.to_string())?;
        // Oracle: square by hand-rolled bilinear expansion over basis pairs.
        let mut square = Element::zero(4);
        for (i, a) in xi.coeffs().iter().enumerate() {
            for (j, b) in xi.coeffs().iter().enumerate() {
                let prod = alg
                    .multiply(&alg.basis_element(i), &alg.basis_element(j))
                    .map_err(|e| e.to_string())?;
                square = &square + &prod.scale(&(a * b));
            }
        }
        let two_mu1 = int(2 * m1);
        ensure(square == xi.scale(&two_mu1), || {
            format!("ξ² ≠ 2μ₁ξ at ({m1},{m2},{m3})")
        })?;
        let w = quasi_idempotent_weight(alg, &xi).map_err(|e| e.to_string())?;
        ensure(w == -&two_mu1, || {
            format!("weight {w} at ({m1},{m2},{m3}), expected {}", -&two_mu1)
        })?;
        let other = -(2 * m1 + m2 + m3);
        if w != int(other) {
            notes.push(format!(
                "({m1},{m2},{m3}): weight {w} = −2μ₁; the closed form −(2μ₁+μ₂+μ₃) = {other} does not hold"
            ));
        }
    }
    Ok(notes)
}

// ---------------------------------------------------------------- criterion 6

fn c6_group_algebra() -> Outcome {
    let fam = family("group:symmetric:3");
    let h = fam.hopf().expect("Hopf");
    let alg = h.algebra();
    let sum = Element::new(vec![int(1); 6]);
    let rb = rb_from_element(alg, &sum, &exhaustive()).map_err(|e| e.to_string())?;
    ensure(*rb.weight() == int(-6), || format!("weight {}", rb.weight()))?;
    for i in 0..6 {
        let got = rb.apply(&alg.basis_element(i));
        ensure(got == sum.scale(&h.counit()[i]), || {
            format!("P({}) ≠ ε·ξ", alg.label(i))
        })?;
    }
    for side in [Side::Left, Side::Right] {
        let got = h.integrals(side).map_err(|e| e.to_string())?;
        ensure(got == vec![sum.clone()], || format!("{side:?} integrals {got:?}"))?;
    }
    Ok(vec![
        "S3: weight −6, P(h) = ε(h)ξ on 6 elements, integrals = span(Σg)".into()
    ])
}

// ---------------------------------------------------------------- criterion 7

fn c7_quantum_d3() -> Outcome {
    let g = quantum("uqsl2:3");
    let h = g.hopf();
    let alg = g.algebra();
    ensure(alg.dim() == 27, || format!("dim {}", alg.dim()))?;
    let checks = h.check_all(&exhaustive());
    ensure(checks.all_pass(), || {
        checks.first_failure(alg.basis()).unwrap_or_default()
    })?;
    ensure(
        checks.bialgebra.checked == 729 && checks.bialgebra.coverage == Coverage::Exhaustive,
        || format!("bialgebra checked {}", checks.bialgebra.checked),
    )?;
    // ξ = E·E·F·F·(1 + K + K²) assembled from the generators.
    let (e, f, k) = (g.e(), g.f(), g.k());
    let k_sum = &(alg.unit() + &k) + &alg.mul(&k, &k);
    let xi = alg.mul(&alg.mul(&alg.mul(&alg.mul(&e, &e), &f), &f), &k_sum);
    ensure(xi == g.left_integral().map_err(|e| e.to_string())?, || {
        "generator product differs from integral".into()
    })?;
    for a in 0..27 {
        ensure(alg.mul(&alg.basis_element(a), &xi) == xi.scale(&h.counit()[a]), || {
            format!("aξ ≠ ε(a)ξ at {}", alg.label(a))
        })?;
    }
    ensure(h.counit_of(&xi).is_zero(), || "ε(ξ) ≠ 0".into())?;
    let rb = rb_from_element(alg, &xi, &exhaustive()).map_err(|e| e.to_string())?;
    ensure(rb.weight().is_zero(), || format!("weight {}", rb.weight()))?;
    let v = check_rb_identity(alg, rb.operator(), rb.weight(), &exhaustive()).map_err(|e| e.to_string())?;
    ensure(v.is_pass() && v.checked == 729, || format!("RB identity {v:?}"))?;
    ensure(rb.apply(&f).is_zero(), || "P(F) ≠ 0".into())?;
    ensure(rb.apply(&k) == xi, || "P(K) ≠ ξ".into())?;
    Ok(vec![
        "Hopf checks exhaustive, ξ left integral on 27 elements, RB identity on 729 pairs".into(),
    ])
}

// ---------------------------------------------------------------- criterion 8

/// The closed-form double sum for `ξE`, built term by term.
fn display_xi_e(g: &QuantumGroup) -> Element {
    let p = g.params();
    let e = p.e() as i64;
    let ring = p.ring();
    let c = &p.q_pow(1) - &p.q_pow(-1);
    let bracket = ring
        .div(&(&p.q_pow(e - 1) - &p.q_pow(1 - e)), &c)
        .expect("q − q⁻¹ is a unit");
    let factor = ring.div(&bracket, &c).expect("q − q⁻¹ is a unit");
    let (i, j) = (p.e() - 1, p.e() - 2);
    let mut out = Element::zero(p.dim());
    for n in 0..e {
        let up = g.monomial(i, j, (n + 1).rem_euclid(e) as usize);
        let down = g.monomial(i, j, (n - 1).rem_euclid(e) as usize);
        out = &out + &up.scale(&(&factor * &p.q_pow(2 * n + e - 2)));
        out = &out - &down.scale(&(&factor * &p.q_pow(2 * n + 2 - e)));
    }
    out
}

fn c8_quantum_xi_e() -> Outcome {
    let mut notes = Vec::new();
    for d in ["uqsl2:3", "uqsl2:5"] {
        let g = quantum(d);
        let alg = g.algebra();
        let xi = g.left_integral().map_err(|e| e.to_string())?;
        let e = g.e();
        let direct = alg.mul(&xi, &e);
        // Oracle: ξE is again a left integral, so ξE = cξ; E is nilpotent,
        // hence c^e ξ = ξE^e = 0 and c = 0.
        ensure(alg.power(&e, g.params().e() as u32).is_zero(), || {
            format!("{d}: E is not nilpotent")
        })?;
        for a in 0..alg.dim() {
            let eps = &g.hopf().counit()[a];
            ensure(alg.mul(&alg.basis_element(a), &direct) == direct.scale(eps), || {
                format!("{d}: ξE is not a left integral")
            })?;
        }
        ensure(direct.is_zero(), || format!("{d}: ξE = {direct:?}, oracle gives 0"))?;
        let display = display_xi_e(g);
        if display == direct {
            notes.push(format!("{d}: display agrees with ξE; display pinned"));
        } else {
            notes.push(format!(
                "{d}: display is nonzero ({} terms) but ξE = 0; direct product pinned",
                display.sparse().len()
            ));
        }
    }
    Ok(notes)
}

// ---------------------------------------------------------------- criterion 9

fn c9_hecke_a2() -> Outcome {
    let fam = family("hecke:A:2");
    let FamilyKind::Hecke(h) = fam.kind() else {
        unreachable!()
    };
    let alg = h.algebra();
    let w = h.coxeter();
    let q = Scalar::v_pow(2);
    let v = Scalar::v();
    let v_inv = Scalar::v_pow(-1);
    let te = h.t(w.identity());
    for s in 0..2 {
        let ts = h.t(w.generator(s));
        let quad = &ts.scale(&(&q - &int(1))) + &te.scale(&q);
        ensure(alg.mul(&ts, &ts) == quad, || {
            format!("T_s{}² violates the quadratic relation", s + 1)
        })?;
        let cs = h.kl_generator(s).map_err(|e| e.to_string())?;
        let lambda = &v + &v_inv;
        ensure(alg.mul(&cs, &cs) == cs.scale(&-&lambda), || {
            format!("C_s{}² ≠ −(v+v⁻¹)C_s", s + 1)
        })?;
        let rb = rb_from_element(alg, &cs, &exhaustive()).map_err(|e| e.to_string())?;
        ensure(*rb.weight() == lambda, || format!("weight {}", rb.weight()))?;
        let verdict = check_rb_identity(alg, rb.operator(), rb.weight(), &exhaustive()).map_err(|e| e.to_string())?;
        ensure(verdict.is_pass() && verdict.checked == 36, || {
            format!("RB identity {verdict:?}")
        })?;
        for x in 0..w.len() {
            let sx = w.left_mul(s, x);
            let want = if w.length(sx) > w.length(x) {
                &h.t(sx).scale(&v_inv) - &h.t(x).scale(&v)
            } else {
                &h.t(sx).scale(&v) - &h.t(x).scale(&v_inv)
            };
            ensure(rb.apply(&h.t(x)) == want, || {
                format!("P_C_s{}(T_{}) mismatch", s + 1, w.label(x))
            })?;
        }
    }
    Ok(vec![
        "both generators: quadratic relation, weight v + v⁻¹, 36 pairs, 6 piecewise values".into(),
    ])
}

// --------------------------------------------------------------- criterion 10

fn c10_tridendriform() -> Outcome {
    let mut notes = Vec::new();
    let all_exhaustive = |verdicts: &[rbx_core::Verdict<(usize, usize, usize)>], n: usize| {
        verdicts
            .iter()
            .all(|v| v.is_pass() && v.checked == n && v.coverage == Coverage::Exhaustive)
    };

    let h = sweedler();
    let alg = h.algebra();
    let x = h.trace_element().map_err(|e| e.to_string())?;
    let w = quasi_idempotent_weight(alg, &x).map_err(|e| e.to_string())?;
    let t = tridendriform_products(alg, &x, &w).map_err(|e| e.to_string())?;
    let report = t.check(&exhaustive());
    ensure(report.total() == 7 && all_exhaustive(&report.axioms, 64), || {
        format!("sweedler {report:?}")
    })?;
    ensure(t.star_product().check_associativity(&exhaustive()).is_pass(), || {
        "sweedler ∗ not associative".into()
    })?;
    notes.push("sweedler x_H: 7/7 axioms over 64 triples, ∗ associative".into());

    let g = quantum("uqsl2:3");
    let alg = g.algebra();
    let xi = g.left_integral().map_err(|e| e.to_string())?;
    let rb = rb_from_element(alg, &xi, &exhaustive()).map_err(|e| e.to_string())?;
    let d = dendriform_products(alg, rb.operator());
    let report = d.check(&exhaustive());
    ensure(report.total() == 3 && all_exhaustive(&report.axioms, 19_683), || {
        format!("uqsl2:3 {report:?}")
    })?;
    let star = d.star_product().check_associativity(&exhaustive());
    ensure(star.is_pass() && star.checked == 19_683, || {
        "uqsl2:3 ∗ not associative".into()
    })?;
    notes.push("uqsl2:3 integral: 3/3 dendriform axioms over 19683 triples, ∗ associative".into());

    let fam = family("hecke:A:2");
    let FamilyKind::Hecke(h) = fam.kind() else {
        unreachable!()
    };
    let lifted = h
        .algebra()
        .with_ring(ScalarRing::RationalFunction)
        .map_err(|e| e.to_string())?;
    let cs = h.kl_generator(0).map_err(|e| e.to_string())?;
    let w = quasi_idempotent_weight(&lifted, &cs).map_err(|e| e.to_string())?;
    ensure(h.algebra().ring().invert(&w).is_err(), || {
        "v + v⁻¹ should not be a Laurent unit".into()
    })?;
    let t = tridendriform_products(&lifted, &cs, &w).map_err(|e| e.to_string())?;
    let report = t.check(&exhaustive());
    ensure(report.total() == 7 && all_exhaustive(&report.axioms, 216), || {
        format!("hecke {report:?}")
    })?;
    notes.push("hecke:A:2 C_s over Q(v): 7/7 axioms over 216 triples".into());
    Ok(notes)
}

// --------------------------------------------------------------- criterion 11

/// Candidate elements: the named ones, the Sweedler parameter points, the
/// trace element and integral bases.
fn candidates(fam: &BuiltFamily) -> Vec<(String, Element)> {
    let mut out: Vec<(String, Element)> = fam.named().to_vec();
    if let Some(h) = fam.hopf() {
        if h.dim() <= 64 {
            if let Ok(x) = h.trace_element() {
                out.push(("x_H".into(), x));
            }
        }
        for side in [Side::Left, Side::Right] {
            for (i, l) in h.integrals(side).unwrap_or_default().into_iter().enumerate() {
                out.push((format!("{side:?} integral {i}"), l));
            }
        }
    }
    if fam.descriptor() == "sweedler" {
        for (a, b, c) in SWEEDLER_POINTS {
            out.push((
                format!("μ = ({a},{b},{c})"),
                sweedler_family_element(&rat(a), &rat(b), &rat(c)).unwrap(),
            ));
        }
    }
    out
}

fn c11_structural() -> Outcome {
    let policy = CheckPolicy::default();
    let mut operators = 0;
    let mut rescaled = 0;
    for fam in fixtures() {
        let name = fam.descriptor();
        let alg = fam.algebra();
        let id = identity_rb(alg);
        ensure(*id.weight() == int(-1), || {
            format!("{name}: identity weight {}", id.weight())
        })?;
        let v = check_rb_identity(alg, id.operator(), id.weight(), &policy).map_err(|e| e.to_string())?;
        ensure(v.is_pass(), || format!("{name}: identity fails at {:?}", v.violation))?;

        let laurent = alg.ring() == &ScalarRing::Laurent;
        let mut mus = vec![int(2), int(-1)];
        if laurent {
            mus.push(Scalar::v());
        }
        for (label, xi) in candidates(fam) {
            let Ok(rb) = rb_from_element(alg, &xi, &policy) else {
                continue;
            };
            operators += 1;
            let qi = check_quasi_idempotent_operator(rb.operator(), rb.weight()).map_err(|e| e.to_string())?;
            ensure(qi, || format!("{name} {label}: P² ≠ −λP"))?;
            for mu in &mus {
                let scaled = rb.scaled(mu).map_err(|e| e.to_string())?;
                ensure(*scaled.weight() == rb.weight() * mu, || {
                    format!("{name} {label}: scaled weight")
                })?;
                let v =
                    check_rb_identity(alg, scaled.operator(), scaled.weight(), &policy).map_err(|e| e.to_string())?;
                ensure(v.is_pass(), || {
                    format!("{name} {label}: μ = {mu} fails at {:?}", v.violation)
                })?;
                rescaled += 1;
            }
        }
        if let Some(h) = fam.hopf() {
            for side in [Side::Left, Side::Right] {
                let n = h.integrals(side).map_err(|e| e.to_string())?.len();
                ensure(n == 1, || format!("{name}: {side:?} integral space has dimension {n}"))?;
            }
        }
    }
    ensure(operators >= FAMILIES.len(), || {
        format!("only {operators} operators built")
    })?;
    Ok(vec![format!(
        "{} families, {operators} operators from elements, {rescaled} rescalings",
        FAMILIES.len()
    )])
}

// --------------------------------------------------------------- criterion 12

fn run_cli(args: &[&str]) -> rbx_cli::Outcome {
    rbx_cli::run(std::iter::once("rbx").chain(args.iter().copied()))
}

fn c12_round_trip_and_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = |name: &str| dir.path().join(name).display().to_string();
    // Keeps the d = 5 rebuilds quick; the other carriers are scanned fully.
    let budget = ["--budget", "2000", "--seed", "7"];
    for fam in fixtures() {
        let name = fam.descriptor();
        let (a, b) = (path("a.json"), path("b.json"));
        let first = run_cli(&[&budget[..], &["export", name, "-o", &a]].concat());
        ensure(first.code == 0, || format!("{name}: export failed: {}", first.stderr))?;
        let second = run_cli(&[&budget[..], &["export", &a, "-o", &b]].concat());
        ensure(second.code == 0, || {
            format!("{name}: re-export failed: {}", second.stderr)
        })?;
        let (ta, tb) = (read(&a)?, read(&b)?);
        ensure(ta == tb, || format!("{name}: export → import → export differs"))?;
        let doc = AlgebraSpecDocument::parse(&ta).map_err(|e| e.to_string())?;
        let alg = doc.to_algebra().map_err(|e| e.to_string())?;
        ensure(alg.constants() == fam.algebra().constants(), || {
            format!("{name}: structure constants differ")
        })?;
        let hopf: Option<HopfAlgebra> = doc.to_hopf().map_err(|e| e.to_string())?;
        ensure(hopf.is_some() == fam.hopf().is_some(), || {
            format!("{name}: Hopf data lost")
        })?;
    }

    let op = path("op.json");
    let saved = run_cli(&["rb", "sweedler", "2*1 + 2*x", "--save", &op]);
    ensure(saved.code == 0, || saved.stderr.clone())?;
    let commands: Vec<Vec<&str>> = vec![
        vec!["check", "sweedler"],
        vec!["check", "uqsl2:5"],
        vec!["check", "hecke:A:2"],
        vec!["trace-element", "sweedler"],
        vec!["trace-element", "group:dihedral:4"],
        vec!["integrals", "uqsl2:3", "--side", "right"],
        vec!["rb", "sweedler", "2*1 + 2*x", "--table", "--matrix"],
        vec!["rb", "hecke:A:2", "C[s1]", "--table"],
        vec!["rb", "sweedler", "x"],
        vec!["tridend", "sweedler", "2*1 + 2*x"],
        vec!["tridend", "uqsl2:3", "xi"],
        vec!["tridend", "hecke:A:2", "C[s2]"],
        vec!["check-operator", "sweedler", &op],
        vec!["export", "group:symmetric:3"],
    ];
    for cmd in &commands {
        let args = [&["--format", "json"][..], &budget[..], cmd].concat();
        let (x, y) = (run_cli(&args), run_cli(&args));
        ensure(x.code == y.code && x.stdout == y.stdout, || {
            format!("{cmd:?}: outputs differ between runs")
        })?;
        ensure(!x.stdout.is_empty(), || format!("{cmd:?}: empty output ({})", x.stderr))?;
    }
    Ok(vec![format!(
        "{} families round-tripped, {} commands repeated with identical JSON",
        FAMILIES.len(),
        commands.len()
    )])
}

fn read(p: &str) -> Result<String, String> {
    std::fs::read_to_string(Path::new(p)).map_err(|e| format!("{p}: {e}"))
}

// ------------------------------------------------------------------- driver

struct Criterion {
    id: u8,
    name: &'static str,
    bound: Option<Duration>,
    run: fn() -> Outcome,
}

const fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        id: 1,
        name: "Sweedler dual table",
        bound: secs(1),
        run: c1_sweedler_dual_table,
    },
    Criterion {
        id: 2,
        name: "Sweedler trace element",
        bound: secs(1),
        run: c2_sweedler_trace_element,
    },
    Criterion {
        id: 3,
        name: "Sweedler integrals",
        bound: secs(1),
        run: c3_sweedler_integrals,
    },
    Criterion {
        id: 4,
        name: "Sweedler family operator table",
        bound: secs(1),
        run: c4_sweedler_operator_table,
    },
    Criterion {
        id: 5,
        name: "Sweedler weight is −2μ₁",
        bound: secs(1),
        run: c5_sweedler_weight,
    },
    Criterion {
        id: 6,
        name: "group algebra S3",
        bound: secs(1),
        run: c6_group_algebra,
    },
    Criterion {
        id: 7,
        name: "quantum group d=3",
        bound: secs(60),
        run: c7_quantum_d3,
    },
    Criterion {
        id: 8,
        name: "quantum group ξE",
        bound: secs(5),
        run: c8_quantum_xi_e,
    },
    Criterion {
        id: 9,
        name: "Hecke A2",
        bound: secs(5),
        run: c9_hecke_a2,
    },
    Criterion {
        id: 10,
        name: "tridendriform and dendriform suites",
        bound: secs(120),
        run: c10_tridendriform,
    },
    Criterion {
        id: 11,
        name: "structural properties",
        bound: secs(60),
        run: c11_structural,
    },
    Criterion {
        id: 12,
        name: "round trip and determinism",
        bound: None,
        run: c12_round_trip_and_determinism,
    },
];

fn main() -> ExitCode {
    let start = Instant::now();
    fixtures();
    println!(
        "fixtures: {} families certified in {:.2} s",
        FAMILIES.len(),
        start.elapsed().as_secs_f64()
    );
    let mut failed = 0;
    for c in CRITERIA {
        let t0 = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let took = t0.elapsed();
        let result = match (result, c.bound) {
            (Ok(_), Some(b)) if took > b => Err(format!("took {:.2} s, bound {} s", took.as_secs_f64(), b.as_secs())),
            (r, _) => r,
        };
        let bound = c
            .bound
            .map(|b| format!(", bound {} s", b.as_secs()))
            .unwrap_or_default();
        let timing = format!("{:.3} s{bound}", took.as_secs_f64());
        match result {
            Ok(notes) => {
                println!("[PASS] C{:<2} {} ({timing})", c.id, c.name);
                for n in notes {
                    println!("         {n}");
                }
            }
            Err(e) => {
                failed += 1;
                println!("[FAIL] C{:<2} {} ({timing})", c.id, c.name);
                println!("         {e}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed, {:.2} s total",
        CRITERIA.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
