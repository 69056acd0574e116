//! Acceptance criteria. Each criterion prints one PASS/FAIL line; the test
//! fails at the end if any criterion failed or ran over its time budget.

use std::time::{Duration, Instant};

use z2q::calculus::{calculus_verify, de_rham, omega};
use z2q::engine::{check_local_confluence, Monomial, Presentation, BUILTIN_NAMES};
use z2q::expr::{eval_str, Value};
use z2q::hopf::{antipode, coproduct, hopf_verify, primitive_bracket_check, HOPF_CHECKS};
use z2q::operators::operator_verify;
use z2q::relations;
use z2q::report::CheckEntry;
use z2q::verify::degeneration_check;
use z2q::{Degree, Element, QScalar, TensorElement};

struct Outcome {
    ok: bool,
    detail: String,
}

fn from_entries(entries: &[CheckEntry], expected: usize) -> Outcome {
    let failed: Vec<String> = entries.iter().filter(|e| !e.passed()).map(|e| format!("{} {}", e.id, e.label)).collect();
    let ok = failed.is_empty() && entries.len() == expected;
    let detail = if ok {
        format!("{} checks", entries.len())
    } else if failed.is_empty() {
        format!("expected {expected} checks, got {}", entries.len())
    } else {
        format!("failed: {}", failed.join("; "))
    };
    Outcome { ok, detail }
}

fn run(n: u32, title: &str, budget: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = f();
    let elapsed = start.elapsed();
    let in_time = elapsed <= budget;
    let ok = outcome.ok && in_time;
    println!(
        "{} criterion {n}: {title} ({}; {:.3}s of {}s)",
        if ok { "PASS" } else { "FAIL" },
        outcome.detail,
        elapsed.as_secs_f64(),
        budget.as_secs()
    );
    ok
}

fn collect(checks: &[&str], f: impl Fn(&str) -> Vec<CheckEntry>) -> Vec<CheckEntry> {
    checks.iter().flat_map(|c| f(c)).collect()
}

fn criterion_relations() -> Outcome {
    let rels: Vec<_> = relations::COORDINATE.iter().chain(&relations::INVERSE).chain(&relations::MANIN).collect();
    let bad: Vec<String> = rels
        .iter()
        .filter(|r| !r.free().expect("relation parses").reduce().is_zero())
        .map(|r| r.label())
        .collect();
    Outcome { ok: rels.len() == 16 && bad.is_empty(), detail: format!("{} relations, nonzero: {bad:?}", rels.len()) }
}

fn criterion_confluence() -> Outcome {
    let mut detail = Vec::new();
    let mut ok = true;
    for name in BUILTIN_NAMES {
        let p = Presentation::builtin(name).unwrap();
        let report = check_local_confluence(&p);
        ok &= report.passed();
        detail.push(format!("{name}:{}", p.num_generators()));
    }
    let gens = |n: &str| Presentation::builtin(n).unwrap().num_generators();
    ok &= gens("dqsp") == 4 && gens("dqsp-omega") == 8 && gens("dqsp-ops") == 12;
    Outcome { ok, detail: detail.join(" ") }
}

fn criterion_hopf() -> Outcome {
    let mut entries = collect(&HOPF_CHECKS, |c| hopf_verify(c, 4).unwrap());
    let expected = 6 + relations::hopf_relations().count();
    // One of the proof steps, stated directly on tensors.
    let p = Presentation::builtin("dqsp").unwrap();
    let dxi = coproduct(&Element::generator(&p, "xi").unwrap()).unwrap();
    let dz = coproduct(&Element::generator(&p, "z").unwrap()).unwrap();
    let lhs = dxi.try_mul(&dz).unwrap();
    let rhs = dz.try_mul(&dxi).unwrap().scale(&-QScalar::q_pow(-1));
    entries.push(CheckEntry::compare("step", "Delta(xi)Delta(z) = -q^-1 Delta(z)Delta(xi)", lhs == rhs, || lhs.to_string(), || rhs.to_string()));
    from_entries(&entries, expected + 1)
}

fn criterion_primitive() -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    for a in Degree::all(2) {
        for b in Degree::all(2) {
            count += 1;
            if !primitive_bracket_check(&a, &b).unwrap() {
                failures.push(format!("{a}/{b}"));
            }
        }
    }
    Outcome { ok: count == 16 && failures.is_empty(), detail: format!("{count} pairs, failing {failures:?}") }
}

fn criterion_calculus() -> Outcome {
    let mut entries = Vec::new();
    let mut expected = 0;
    for (check, bound, count) in [
        ("lemma-condiff", 4, 6),
        ("valcom-bicovariance", 4, 32),
        ("diff-diff-consistency", 4, 9),
        ("d-squared", 5, 1),
        ("no-top-forms", 8, 2),
        ("woronowicz-compatibility", 4, 4),
    ] {
        entries.extend(calculus_verify(check, bound).unwrap());
        expected += count;
    }
    // Direct statement of the no-top-forms claim.
    let w = omega();
    for g in ["dxi", "dtheta"] {
        let e = Element::generator(&w, g).unwrap().pow(8);
        entries.push(CheckEntry::compare("top", format!("({g})^8 != 0"), !e.is_zero(), || e.to_string(), || "nonzero".into()));
        expected += 1;
    }
    from_entries(&entries, expected)
}

fn criterion_operators() -> Outcome {
    let entries = collect(
        &["partial-coordinate-relations", "partial-partial-relations", "partial-differential-relations", "oracle-equivalence", "derham-decomposition"],
        |c| operator_verify(c, 4).unwrap(),
    );
    from_entries(&entries, 16 + 9 + 16 + 4 + 1)
}

fn criterion_degeneration() -> Outcome {
    from_entries(&degeneration_check(4).unwrap(), 1)
}

fn element(v: Value) -> Element {
    match v {
        Value::Element(e) => e,
        other => panic!("expected an element, got {other}"),
    }
}

fn mono(p: &Presentation, pairs: &[(&str, i32)]) -> Monomial {
    let mut e = vec![0; p.num_generators()];
    for (s, k) in pairs {
        e[p.index_of(s).unwrap()] = *k;
    }
    Monomial::from_exponents(e)
}

fn criterion_values() -> Outcome {
    let dqsp = Presentation::builtin("dqsp").unwrap();
    let ext = Presentation::builtin("dqsp-ext").unwrap();
    let w = omega();
    let q = QScalar::q;
    let mut entries = Vec::new();
    let mut check = |label: &str, got: Element, want: Element, text: &str| {
        let ok = got == want && got.to_string() == text;
        entries.push(CheckEntry::compare("value", label, ok, || got.to_string(), || want.to_string()));
    };

    // x xi = q xi x, so xi x = q^-1 x xi.
    check(
        "xi*x",
        element(eval_str("xi*x", &dqsp).unwrap()),
        Element::from_monomial(&dqsp, mono(&dqsp, &[("x", 1), ("xi", 1)]), q().inverse().unwrap()),
        "q^-1*x*xi",
    );
    // xi z = -q^-1 z xi, so z xi = -q xi z.
    check(
        "z*xi",
        element(eval_str("z*xi", &dqsp).unwrap()),
        Element::from_monomial(&dqsp, mono(&dqsp, &[("xi", 1), ("z", 1)]), -q()),
        "-q*xi*z",
    );
    // S(xi) = -x^-1 xi x^-1 and xi x^-1 = q x^-1 xi.
    let s_xi = antipode(&Element::generator(&ext, "xi").unwrap()).unwrap();
    check(
        "S(xi)",
        s_xi.clone(),
        Element::from_monomial(&ext, mono(&ext, &[("x", -2), ("xi", 1)]), -q()),
        "-q*x^-2*xi",
    );
    check("S(S(xi))", antipode(&s_xi).unwrap(), Element::generator(&ext, "xi").unwrap(), "xi");
    // d(x xi) = dx xi + x dxi and dx xi = q xi dx.
    let x_xi = element(eval_str("x*xi", &w).unwrap());
    let want = Element::from_monomial(&w, mono(&w, &[("xi", 1), ("dx", 1)]), q())
        + Element::from_monomial(&w, mono(&w, &[("x", 1), ("dxi", 1)]), QScalar::one());
    check("d(x*xi)", de_rham(&x_xi).unwrap(), want, "q*xi*dx + x*dxi");
    from_entries(&entries, 5)
}

#[test]
fn acceptance() {
    let s = Duration::from_secs;
    let results = [
        run(1, "relation suite", s(1), criterion_relations),
        run(2, "confluence of builtin presentations", s(5), criterion_confluence),
        run(3, "hopf suite at bound 4", s(30), criterion_hopf),
        run(4, "primitive brackets", s(1), criterion_primitive),
        run(5, "calculus suite", s(60), criterion_calculus),
        run(6, "operator suite at bound 4", s(60), criterion_operators),
        run(7, "q = 1 degeneration", s(10), criterion_degeneration),
        run(8, "specific values", s(1), criterion_values),
    ];
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, ok)| !**ok).map(|(i, _)| i + 1).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn tensor_type_is_exported() {
    let p = Presentation::builtin("dqsp").unwrap();
    let t = TensorElement::zero(&[p.clone(), p]);
    assert!(t.is_zero());
}
