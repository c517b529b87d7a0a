use std::path::Path;

use rbx_core::document::{AlgebraSpecDocument, OperatorDocument};
use rbx_core::expr::render_element;
use rbx_core::hopf::BialgebraViolation;
use rbx_core::rota_baxter::{
    check_quasi_idempotent_operator, check_rb_identity, dendriform_products, quasi_idempotent_weight,
    tridendriform_products, AxiomReport, RbError,
};
use rbx_core::{
    CheckPolicy, Element, FiniteDimAlgebra, HopfAlgebra, LinearOperator, Scalar, ScalarRing, Side, StructureConstants,
    Verdict,
};

use crate::report::{Grid, Report, Table, VerdictLine};
use crate::target::Target;
use crate::CliError;

const TRIDENDRIFORM_AXIOMS: [&str; 7] = [
    "(x≺y)≺z = x≺(y∗z)",
    "(x≻y)≺z = x≻(y≺z)",
    "(x∗y)≻z = x≻(y≻z)",
    "(x≻y)·z = x≻(y·z)",
    "(x≺y)·z = x·(y≻z)",
    "(x·y)≺z = x·(y≺z)",
    "(x·y)·z = x·(y·z)",
];

fn triple(alg: &FiniteDimAlgebra, &(i, j, k): &(usize, usize, usize)) -> String {
    format!("fails at ({}, {}, {})", alg.label(i), alg.label(j), alg.label(k))
}

fn pair(alg: &FiniteDimAlgebra, &(i, j): &(usize, usize)) -> String {
    format!("fails at ({}, {})", alg.label(i), alg.label(j))
}

fn header(report: &mut Report, t: &Target) {
    report
        .field("target", t.name.as_str())
        .field("dimension", t.algebra.dim())
        .field("ring", t.ring_text());
}

fn sparse_text(alg: &FiniteDimAlgebra, v: &[(usize, Scalar)]) -> String {
    render_element(alg, &Element::from_sparse(alg.dim(), v))
}

pub fn check(report: &mut Report, t: &Target, policy: &CheckPolicy) {
    header(report, t);
    report.field("basis", t.algebra.basis().labels().to_vec());
    let alg = &t.algebra;
    report.verdict(VerdictLine::scan(
        "associativity",
        &alg.check_associativity(policy),
        |v| triple(alg, v),
    ));
    report.verdict(VerdictLine::scan("unit", &alg.check_unit(), |&i| {
        format!("fails at {}", alg.label(i))
    }));
    if let Some(h) = &t.hopf {
        hopf_checks(report, h, policy);
    }
}

fn hopf_checks(report: &mut Report, h: &HopfAlgebra, policy: &CheckPolicy) {
    let alg = h.algebra();
    let at = |&k: &usize| format!("fails at {}", alg.label(k));
    report.verdict(VerdictLine::scan("coassociativity", &h.check_coassociativity(), at));
    report.verdict(VerdictLine::scan("counit", &h.check_counit(), at));
    report.verdict(VerdictLine::scan(
        "bialgebra",
        &h.check_bialgebra(policy),
        |v| match *v {
            BialgebraViolation::UnitCoproduct => "coproduct of the unit is not 1⊗1".into(),
            BialgebraViolation::UnitCounit => "counit of the unit is not 1".into(),
            BialgebraViolation::Coproduct { i, j } => {
                format!("coproduct not multiplicative at ({}, {})", alg.label(i), alg.label(j))
            }
            BialgebraViolation::Counit { i, j } => {
                format!("counit not multiplicative at ({}, {})", alg.label(i), alg.label(j))
            }
        },
    ));
    report.verdict(VerdictLine::scan("antipode", &h.check_antipode(), at));
}

pub fn trace_element(report: &mut Report, t: &Target) -> Result<(), CliError> {
    let h = t.require_hopf()?;
    header(report, t);
    let alg = h.algebra();
    let x = h.trace_element_closed_form();
    let via = h.trace_element_via_matrices();
    let eps = h.counit_of(&x);
    let dim = Scalar::int(alg.dim() as i64);
    report
        .field("x_H", render_element(alg, &x))
        .field("counit(x_H)", eps.to_string());
    report.verdict(VerdictLine::flag(
        "coordinate formula agrees with traces",
        x == via,
        (x != via).then(|| format!("traces give {}", render_element(alg, &via))),
    ));
    report.verdict(VerdictLine::flag(
        "counit(x_H) = dim H",
        eps == dim,
        (eps != dim).then(|| format!("{eps} != {dim}")),
    ));
    let square = alg.mul(&x, &x);
    let ok = square == x.scale(&eps);
    report.verdict(VerdictLine::flag(
        "x_H^2 = counit(x_H) x_H",
        ok,
        (!ok).then(|| format!("x_H^2 = {}", render_element(alg, &square))),
    ));
    // Exploratory facts, not verdicts: x_H is usually not an integral.
    let is_integral = |side: Side| {
        (0..alg.dim()).all(|a| {
            let e = alg.basis_element(a);
            let prod = match side {
                Side::Left => alg.mul(&e, &x),
                Side::Right => alg.mul(&x, &e),
            };
            prod == x.scale(&h.counit()[a])
        })
    };
    report
        .field("cocommutative", h.is_cocommutative_element(&x))
        .field("left integral", is_integral(Side::Left))
        .field("right integral", is_integral(Side::Right));
    Ok(())
}

pub fn integrals(report: &mut Report, t: &Target, side: Side) -> Result<(), CliError> {
    let h = t.require_hopf()?;
    header(report, t);
    let alg = h.algebra();
    let basis = h.integrals(side).map_err(|e| CliError::Input(e.to_string()))?;
    let side_name = match side {
        Side::Left => "left",
        Side::Right => "right",
    };
    report
        .field("side", side_name)
        .field("integral dimension", basis.len())
        .field(
            "integral basis",
            basis.iter().map(|e| render_element(alg, e)).collect::<Vec<_>>(),
        );
    let bad = basis.iter().find_map(|l| {
        (0..alg.dim()).find(|&a| {
            let e = alg.basis_element(a);
            let prod = match side {
                Side::Left => alg.mul(&e, l),
                Side::Right => alg.mul(l, &e),
            };
            prod != l.scale(&h.counit()[a])
        })
    });
    let identity = if side == Side::Left {
        "aΛ = ε(a)Λ"
    } else {
        "Λa = ε(a)Λ"
    };
    report.verdict(VerdictLine::flag(
        identity,
        bad.is_none(),
        bad.map(|a| format!("fails at a = {}", alg.label(a))),
    ));
    report.verdict(VerdictLine::flag(
        "integral space is one-dimensional",
        basis.len() == 1,
        (basis.len() != 1).then(|| format!("dimension {}", basis.len())),
    ));
    Ok(())
}

/// Detects the weight of `xi`, recording a failed verdict when `xi` is not
/// quasi-idempotent.
fn detect_weight(
    report: &mut Report,
    alg: &FiniteDimAlgebra,
    xi: &Element,
    text: &str,
) -> Result<Option<Scalar>, CliError> {
    report.field("element", render_element(alg, xi));
    match quasi_idempotent_weight(alg, xi) {
        Ok(w) => {
            report.field("weight", w.to_string());
            let c = -&w;
            let c = if c.as_rational().is_some() {
                c.to_string()
            } else {
                format!("({c})")
            };
            report.verdict(VerdictLine::flag("quasi-idempotent", true, Some(format!("ξ² = {c}·ξ"))));
            Ok(Some(w))
        }
        Err(RbError::NotQuasiIdempotent { square }) => {
            let sq = render_element(alg, &square);
            report.field("square", sq.clone());
            report.verdict(VerdictLine::flag(
                "quasi-idempotent",
                false,
                Some(format!("{}^2 = {sq} is not proportional to {text}", wrap(text))),
            ));
            Ok(None)
        }
        Err(RbError::ZeroElement) => {
            report.verdict(VerdictLine::flag(
                "quasi-idempotent",
                false,
                Some("the element is zero".into()),
            ));
            Ok(None)
        }
        Err(e) => Err(CliError::Input(e.to_string())),
    }
}

fn wrap(text: &str) -> String {
    let t = text.trim();
    if t.chars().any(|c| c.is_whitespace() || "+-*".contains(c)) {
        format!("({t})")
    } else {
        t.to_string()
    }
}

pub struct RbOptions<'a> {
    pub table: bool,
    pub matrix: bool,
    pub save: Option<&'a Path>,
}

pub fn rb(
    report: &mut Report,
    t: &Target,
    text: &str,
    opts: RbOptions<'_>,
    policy: &CheckPolicy,
) -> Result<(), CliError> {
    header(report, t);
    let alg = &t.algebra;
    let xi = t.parse_element(text)?;
    let Some(weight) = detect_weight(report, alg, &xi, text)? else {
        return Ok(());
    };
    let op = LinearOperator::left_multiplication(alg, &xi);
    let verdict = check_rb_identity(alg, &op, &weight, policy).map_err(|e| CliError::Input(e.to_string()))?;
    report.verdict(VerdictLine::scan("Rota-Baxter identity", &verdict, |v| pair(alg, v)));
    let qi = check_quasi_idempotent_operator(&op, &weight).map_err(|e| CliError::Input(e.to_string()))?;
    report.verdict(VerdictLine::flag("P² = −λP", qi, None));
    if opts.table {
        operator_table(report, alg, &op);
    }
    if opts.matrix {
        operator_grid(report, alg, &op);
    }
    if let Some(path) = opts.save {
        std::fs::write(path, OperatorDocument::new(&op, &weight).to_json())
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
        report.notice(format!("operator written to {}", path.display()));
    }
    Ok(())
}

fn operator_table(report: &mut Report, alg: &FiniteDimAlgebra, op: &LinearOperator) {
    let rows = (0..alg.dim())
        .map(|j| (format!("P({})", alg.label(j)), render_element(alg, &op.column(j))))
        .collect();
    report.tables.push(Table {
        title: "P action".into(),
        rows,
    });
}

fn operator_grid(report: &mut Report, alg: &FiniteDimAlgebra, op: &LinearOperator) {
    let n = alg.dim();
    let labels = alg.basis().labels().to_vec();
    let m = op.matrix();
    report.grids.push(Grid {
        title: "matrix".into(),
        note: "column j is P(e_j)".into(),
        row_labels: labels.clone(),
        col_labels: labels,
        cells: (0..n)
            .map(|i| (0..n).map(|j| m.get(i, j).to_string()).collect())
            .collect(),
    });
}

pub fn check_operator(report: &mut Report, t: &Target, path: &Path, policy: &CheckPolicy) -> Result<(), CliError> {
    header(report, t);
    let alg = &t.algebra;
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let input = |e: &dyn std::fmt::Display| CliError::Input(format!("{}: {e}", path.display()));
    let doc = OperatorDocument::parse(&text).map_err(|e| input(&e))?;
    let (op, weight) = doc.to_operator(alg.ring()).map_err(|e| input(&e))?;
    report.field("weight", weight.to_string());
    let verdict = check_rb_identity(alg, &op, &weight, policy).map_err(|e| input(&e))?;
    report.verdict(VerdictLine::scan("Rota-Baxter identity", &verdict, |v| pair(alg, v)));
    let qi = check_quasi_idempotent_operator(&op, &weight).map_err(|e| input(&e))?;
    report.field("quasi-idempotent operator", qi);
    operator_table(report, alg, &op);
    Ok(())
}

fn product_table(alg: &FiniteDimAlgebra, title: &str, symbol: &str, sc: &StructureConstants) -> Table {
    let n = alg.dim();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let v = sc.get(i, j);
            if !v.is_empty() {
                rows.push((
                    format!("{} {symbol} {}", alg.label(i), alg.label(j)),
                    sparse_text(alg, v),
                ));
            }
        }
    }
    Table {
        title: title.into(),
        rows,
    }
}

fn axiom_verdicts(report: &mut Report, alg: &FiniteDimAlgebra, axioms: &AxiomReport) {
    for (k, v) in axioms.axioms.iter().enumerate() {
        let name = format!("axiom {}: {}", k + 1, TRIDENDRIFORM_AXIOMS[k]);
        report.verdict(VerdictLine::scan(name, v, |v| triple(alg, v)));
    }
    report.field("axioms passed", format!("{}/{}", axioms.passed(), axioms.total()));
}

fn star_verdict(report: &mut Report, alg: &FiniteDimAlgebra, star: &StructureConstants, policy: &CheckPolicy) {
    let v: Verdict<_> = star.check_associativity(policy);
    report.verdict(VerdictLine::scan("∗ is associative", &v, |v| triple(alg, v)));
}

pub fn tridend(report: &mut Report, t: &Target, text: &str, policy: &CheckPolicy) -> Result<(), CliError> {
    header(report, t);
    let xi = t.parse_element(text)?;
    let Some(weight) = detect_weight(report, &t.algebra, &xi, text)? else {
        return Ok(());
    };
    if weight.is_zero() {
        let alg = &t.algebra;
        report.field("structure", "dendriform");
        let op = LinearOperator::left_multiplication(alg, &xi);
        let rb = check_rb_identity(alg, &op, &weight, policy).map_err(|e| CliError::Input(e.to_string()))?;
        report.verdict(VerdictLine::scan("Rota-Baxter identity", &rb, |v| pair(alg, v)));
        let d = dendriform_products(alg, &op);
        report.tables.push(product_table(alg, "x ≺ y = x·P(y)", "≺", &d.prec));
        report.tables.push(product_table(alg, "x ≻ y = P(x)·y", "≻", &d.succ));
        axiom_verdicts(report, alg, &d.check(policy));
        star_verdict(report, alg, &d.star_product(), policy);
        return Ok(());
    }
    let lifted;
    let alg = if t.algebra.ring().invert(&weight).is_err() {
        lifted = t
            .algebra
            .with_ring(ScalarRing::RationalFunction)
            .map_err(|e| CliError::Input(e.to_string()))?;
        report.notice(format!(
            "weight {weight} is not a unit in {}; coefficients lifted to {}",
            t.algebra.ring(),
            ScalarRing::RationalFunction
        ));
        report.field("lifted ring", ScalarRing::RationalFunction.to_string());
        &lifted
    } else {
        &t.algebra
    };
    report.field("structure", "tridendriform");
    let s = tridendriform_products(alg, &xi, &weight).map_err(|e| CliError::Input(e.to_string()))?;
    report.tables.push(product_table(alg, "x ≺ y = λ⁻¹·xξy", "≺", &s.prec));
    report.tables.push(product_table(alg, "x ≻ y = λ⁻¹·ξxy", "≻", &s.succ));
    report.tables.push(product_table(alg, "x · y = xy", "·", &s.dot));
    axiom_verdicts(report, alg, &s.check(policy));
    star_verdict(report, alg, &s.star_product(), policy);
    Ok(())
}

/// The document text for a target, with Hopf blocks when present.
pub fn export_document(t: &Target) -> String {
    match &t.hopf {
        Some(h) => AlgebraSpecDocument::from_hopf(h).to_json(),
        None => AlgebraSpecDocument::from_algebra(&t.algebra).to_json(),
    }
}

pub fn export(report: &mut Report, t: &Target, path: &Path) -> Result<(), CliError> {
    let doc = export_document(t);
    std::fs::write(path, &doc).map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
    header(report, t);
    report
        .field("path", path.display().to_string())
        .field("bytes", doc.len())
        .field("hopf blocks", t.hopf.is_some());
    Ok(())
}
