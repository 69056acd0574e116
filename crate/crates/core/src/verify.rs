//! Verification suites run by `z2q verify`.

use crate::calculus::{calculus_verify, CALCULUS_CHECKS};
use crate::engine::{check_local_confluence, enumerate_monomials, Element, Monomial, Presentation, BUILTIN_NAMES};
use crate::error::Error;
use crate::grading::Degree;
use crate::hopf::{hopf_verify, primitive_bracket_check, HOPF_CHECKS};
use crate::operators::{operator_verify, OPERATOR_CHECKS};
use crate::relations;
use crate::report::{CheckEntry, Report};
use crate::scalar::QScalar;

pub const SUITES: [&str; 5] = ["engine", "hopf", "calculus", "operators", "all"];

pub const ENGINE_CHECKS: [&str; 3] = ["relations", "confluence", "degeneration"];

/// Every defining relation of the coordinate, extended and Manin algebras
/// reduces to zero.
pub fn relation_suite() -> Result<Vec<CheckEntry>, Error> {
    let mut out = Vec::new();
    for r in relations::COORDINATE.iter().chain(&relations::INVERSE).chain(&relations::MANIN) {
        let nf = r.free()?.reduce();
        out.push(CheckEntry::compare(
            "relations",
            format!("{} in {}", r.label(), r.presentation),
            nf.is_zero(),
            || nf.to_string(),
            || "0".to_string(),
        ));
    }
    Ok(out)
}

pub fn confluence_suite() -> Result<Vec<CheckEntry>, Error> {
    let mut out = Vec::new();
    for name in BUILTIN_NAMES {
        let p = Presentation::builtin(name)?;
        let report = check_local_confluence(&p);
        let label = format!("{name}: {} overlaps", report.overlaps_checked);
        out.push(match report.failures.first() {
            None => CheckEntry::pass("confluence", label),
            Some(f) => CheckEntry::fail("confluence", format!("{label}, first failure at {}", f.overlap), &f.left, &f.right),
        });
    }
    Ok(out)
}

/// The sign picked up by sorting `a b` into PBW order when every exchange
/// costs only its Koszul sign; `None` when a nilpotent generator repeats.
fn koszul_oracle(p: &Presentation, a: &Monomial, b: &Monomial) -> Option<i64> {
    let mut parity = 0u8;
    for (i, &ea) in a.exponents().iter().enumerate() {
        for (j, &eb) in b.exponents().iter().enumerate() {
            if i == j && ea != 0 && eb != 0 && p.generator(i).nilpotent {
                return None;
            }
            if j < i && (ea * eb) % 2 != 0 {
                parity ^= p.generator(i).degree.scalar_product(&p.generator(j).degree).expect("uniform");
            }
        }
    }
    Some(if parity == 1 { -1 } else { 1 })
}

/// Products of coordinate monomials (each of total degree at most `bound`)
/// at `q = 1` against the `z22-commutative` presentation and the Koszul
/// sign oracle.
pub fn degeneration_check(bound: u32) -> Result<Vec<CheckEntry>, Error> {
    let p = Presentation::builtin("dqsp")?;
    let c = Presentation::builtin("z22-commutative")?;
    let one = num_rational::BigRational::from_integer(1.into());
    let monos = enumerate_monomials(&p, bound as i32, bound);
    let mut failures = Vec::new();
    for a in &monos {
        for b in &monos {
            let prod = &Element::from_monomial(&p, a.clone(), QScalar::one())
                * &Element::from_monomial(&p, b.clone(), QScalar::one());
            let at_one = prod.map_coefficients(|k| QScalar::from_rational(k.eval(&one).expect("q = 1 is allowed")));
            let commutative = (&Element::from_monomial(&c, a.clone(), QScalar::one())
                * &Element::from_monomial(&c, b.clone(), QScalar::one()))
                .transport(&p)?;
            let oracle = match koszul_oracle(&p, a, b) {
                None => Element::zero(&p),
                Some(s) => {
                    let exps = a.exponents().iter().zip(b.exponents()).map(|(x, y)| x + y).collect();
                    Element::from_monomial(&p, Monomial::from_exponents(exps), QScalar::from_int(s))
                }
            };
            if at_one != commutative || commutative != oracle {
                failures.push(CheckEntry::fail(
                    "degeneration",
                    format!("{} * {} at q = 1", a.render(&p), b.render(&p)),
                    at_one.to_string(),
                    format!("{commutative} (sign oracle {oracle})"),
                ));
            }
        }
    }
    if failures.is_empty() {
        Ok(vec![CheckEntry::pass(
            "degeneration",
            format!("q = 1 products match Koszul signs on {} pairs", monos.len() * monos.len()),
        )])
    } else {
        Ok(failures)
    }
}

pub fn engine_verify(check: &str, bound: u32) -> Result<Vec<CheckEntry>, Error> {
    match check {
        "relations" => relation_suite(),
        "confluence" => confluence_suite(),
        "degeneration" => degeneration_check(bound),
        other => Err(Error::UnknownCheck(other.to_string())),
    }
}

pub fn primitive_suite() -> Result<Vec<CheckEntry>, Error> {
    let mut out = Vec::new();
    for a in Degree::all(2) {
        for b in Degree::all(2) {
            let ok = primitive_bracket_check(&a, &b)?;
            out.push(CheckEntry::compare(
                "primitive-bracket",
                format!("[a, b] primitive for deg a = {a}, deg b = {b}"),
                ok,
                || "Delta([a, b])".to_string(),
                || "[a, b] (x) 1 + 1 (x) [a, b]".to_string(),
            ));
        }
    }
    Ok(out)
}

fn suite_checks(suite: &str, bound: u32) -> Result<Vec<CheckEntry>, Error> {
    let mut out = Vec::new();
    match suite {
        "engine" => {
            for c in ENGINE_CHECKS {
                out.extend(engine_verify(c, bound)?);
            }
        }
        "hopf" => {
            for c in HOPF_CHECKS {
                out.extend(hopf_verify(c, bound)?);
            }
            out.extend(primitive_suite()?);
        }
        "calculus" => {
            for c in CALCULUS_CHECKS {
                out.extend(calculus_verify(c, bound)?);
            }
        }
        "operators" => {
            for c in OPERATOR_CHECKS {
                out.extend(operator_verify(c, bound)?);
            }
        }
        "all" => {
            for s in &SUITES[..4] {
                out.extend(suite_checks(s, bound)?);
            }
        }
        other => return Err(Error::UnknownCheck(format!("suite {other}"))),
    }
    Ok(out)
}

pub fn run_suite(suite: &str, bound: u32) -> Result<Report, Error> {
    Ok(Report::new(suite, bound, suite_checks(suite, bound)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn engine_suite_passes() {
        let r = run_suite("engine", 2).unwrap();
        assert!(r.all_passed(), "{}", r.to_text());
        assert_eq!(r.checks.iter().filter(|c| c.id == "relations").count(), 16);
        assert_eq!(r.checks.iter().filter(|c| c.id == "confluence").count(), 6);
    }

    #[test]
    fn koszul_oracle_samples() {
        let p = Presentation::builtin("dqsp").unwrap();
        let m = |e: [i32; 4]| Monomial::from_exponents(e.to_vec());
        assert_eq!(koszul_oracle(&p, &m([0, 0, 0, 1]), &m([0, 1, 0, 0])), Some(-1));
        assert_eq!(koszul_oracle(&p, &m([0, 0, 1, 0]), &m([0, 1, 0, 0])), Some(1));
        assert_eq!(koszul_oracle(&p, &m([0, 1, 0, 0]), &m([0, 1, 0, 0])), None);
        assert_eq!(koszul_oracle(&p, &m([0, 1, 1, 0]), &m([0, 0, 0, 0])), Some(1));
    }

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope", 2).is_err());
    }
}
