//! Word rewriting with the exchange rules, and the local confluence check.
//!
//! This is deliberately independent of the PBW product in `element.rs`: it
//! only ever rewrites one adjacent pair of letters at a time, so the two
//! routes can be compared against each other.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::scalar::QScalar;

use super::element::{accumulate, Element, Terms};
use super::monomial::Monomial;
use super::presentation::Presentation;
use super::words::{render_word, Letter, Word};

/// Which redex to rewrite first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    Leftmost,
    Rightmost,
}

fn is_redex(p: &Presentation, a: Letter, b: Letter) -> bool {
    if a.gen != b.gen {
        return a.gen > b.gen;
    }
    let g = p.generator(a.gen);
    g.nilpotent || (g.laurent && a.inverse != b.inverse)
}

fn find_redex(p: &Presentation, w: &[Letter], strategy: Strategy) -> Option<usize> {
    let mut pairs = (0..w.len().saturating_sub(1)).filter(|&i| is_redex(p, w[i], w[i + 1]));
    match strategy {
        Strategy::Leftmost => pairs.next(),
        Strategy::Rightmost => pairs.next_back(),
    }
}

/// One rewrite step at position `i`, which must be a redex.
fn rewrite_at(p: &Presentation, w: &[Letter], i: usize) -> Vec<(Word, QScalar)> {
    let (a, b) = (w[i], w[i + 1]);
    let splice = |mid: &[Letter]| -> Word {
        let mut out = Vec::with_capacity(w.len());
        out.extend_from_slice(&w[..i]);
        out.extend_from_slice(mid);
        out.extend_from_slice(&w[i + 2..]);
        out
    };
    if a.gen == b.gen {
        // nilpotent square, or x x^-1
        return if p.generator(a.gen).nilpotent {
            Vec::new()
        } else {
            vec![(splice(&[]), QScalar::one())]
        };
    }
    let rule = p.rule(a.gen, b.gen);
    let c = rule
        .coeff
        .pow(a.sign() * b.sign())
        .expect("Laurent exchange coefficients are units");
    let mut out = vec![(splice(&[b, a]), c)];
    if !rule.delta.is_zero() {
        out.push((splice(&[]), rule.delta.clone()));
    }
    out
}

fn word_to_monomial(p: &Presentation, w: &[Letter]) -> Monomial {
    let mut m = Monomial::one(p.num_generators());
    for l in w {
        m.set_exponent(l.gen, m.exponent(l.gen) + l.sign() as i32);
    }
    m
}

/// Rewrites a combination of words to PBW normal form, always firing the
/// redex selected by `strategy`.
pub fn normal_form_with(
    p: &Arc<Presentation>,
    start: Vec<(Word, QScalar)>,
    strategy: Strategy,
) -> Element {
    let mut pending: BTreeMap<Word, QScalar> = BTreeMap::new();
    let push = |pending: &mut BTreeMap<Word, QScalar>, w: Word, c: &QScalar| {
        if c.is_zero() {
            return;
        }
        let slot = pending.entry(w).or_default();
        *slot += c;
    };
    for (w, c) in start {
        push(&mut pending, w, &c);
    }
    let mut done = Terms::new();
    while let Some((w, c)) = pending.pop_last() {
        if c.is_zero() {
            continue;
        }
        match find_redex(p, &w, strategy) {
            None => accumulate(&mut done, word_to_monomial(p, &w), &c),
            Some(i) => {
                for (w2, k) in rewrite_at(p, &w, i) {
                    push(&mut pending, w2, &(&c * &k));
                }
            }
        }
    }
    Element::from_terms(p, done)
}

/// Normal form of `coeff * word`.
pub fn normal_form(p: &Arc<Presentation>, word: &[Letter], coeff: QScalar) -> Element {
    normal_form_with(p, vec![(word.to_vec(), coeff)], Strategy::Leftmost)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapFailure {
    pub overlap: String,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug)]
pub struct ConfluenceReport {
    pub presentation: String,
    pub overlaps_checked: usize,
    pub failures: Vec<OverlapFailure>,
}

impl ConfluenceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn render_rule_rhs(p: &Presentation, hi: usize, lo: usize, coeff: &QScalar, delta: &QScalar) -> String {
    let swapped = render_word(p, &[Letter::new(lo), Letter::new(hi)]);
    let mut terms = vec![(swapped, coeff)];
    if !delta.is_zero() {
        terms.push(("1".to_string(), delta));
    }
    super::element::render_sum(&terms)
}

/// Resolves every critical overlap `a b c` (both `a b` and `b c` redexes)
/// two ways: rewriting `a b` first and then leftmost, and rewriting `b c`
/// first and then rightmost. Duplicate rules for one pair must agree.
pub fn check_local_confluence(p: &Arc<Presentation>) -> ConfluenceReport {
    let mut failures = Vec::new();
    let mut checked = 0;
    let n = p.num_generators();

    for hi in 0..n {
        for lo in 0..hi {
            let mut rules = p.rules_for(hi, lo);
            let Some(first) = rules.next() else { continue };
            for other in rules {
                checked += 1;
                if other.coeff != first.coeff || other.delta != first.delta {
                    failures.push(OverlapFailure {
                        overlap: render_word(p, &[Letter::new(hi), Letter::new(lo)]),
                        left: render_rule_rhs(p, hi, lo, &first.coeff, &first.delta),
                        right: render_rule_rhs(p, hi, lo, &other.coeff, &other.delta),
                    });
                }
            }
        }
    }

    let letters: Vec<Letter> = p
        .generators()
        .iter()
        .flat_map(|g| {
            let plain = std::iter::once(Letter::new(g.index));
            let inverse = g.laurent.then_some(Letter::inv(g.index));
            plain.chain(inverse)
        })
        .collect();
    for &a in &letters {
        for &b in &letters {
            if !is_redex(p, a, b) {
                continue;
            }
            for &c in &letters {
                if !is_redex(p, b, c) {
                    continue;
                }
                checked += 1;
                let w = [a, b, c];
                let left = normal_form_with(p, rewrite_at(p, &w, 0), Strategy::Leftmost);
                let right = normal_form_with(p, rewrite_at(p, &w, 1), Strategy::Rightmost);
                if left != right {
                    failures.push(OverlapFailure {
                        overlap: render_word(p, &w),
                        left: left.to_string(),
                        right: right.to_string(),
                    });
                }
            }
        }
    }
    ConfluenceReport { presentation: p.name().to_string(), overlaps_checked: checked, failures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::presentation::PresentationSpec;

    fn word(p: &Presentation, syms: &[&str]) -> Word {
        syms.iter().map(|s| Letter::new(p.index_of(s).unwrap())).collect()
    }

    #[test]
    fn basic_rewrites() {
        let p = Presentation::builtin("dqsp").unwrap();
        let nf = normal_form(&p, &word(&p, &["xi", "x"]), QScalar::one());
        assert_eq!(nf.to_string(), "q^-1*x*xi");
        let nf = normal_form(&p, &word(&p, &["z", "xi"]), QScalar::one());
        assert_eq!(nf.to_string(), "-q*xi*z");
        assert!(normal_form(&p, &word(&p, &["xi", "xi"]), QScalar::one()).is_zero());
        let ops = Presentation::builtin("dqsp-ops").unwrap();
        let nf = normal_form(&ops, &word(&ops, &["Dxi", "xi"]), QScalar::one());
        assert_eq!(nf.to_string(), "1 - xi*Dxi");
    }

    #[test]
    fn laurent_cancellation() {
        let p = Presentation::builtin("dqsp-ext").unwrap();
        let x = p.index_of("x").unwrap();
        let xi = p.index_of("xi").unwrap();
        let w = vec![Letter::inv(x), Letter::new(xi), Letter::new(x)];
        let nf = normal_form(&p, &w, QScalar::one());
        assert_eq!(nf.to_string(), "q^-1*xi");
        assert_eq!(Element::from_word(&p, &w), nf);
    }

    #[test]
    fn strategies_agree_with_product() {
        let p = Presentation::builtin("dqsp-ops").unwrap();
        let w = word(&p, &["Dz", "z", "Dxi", "dz", "xi", "z", "x", "Dx", "x", "theta"]);
        let l = normal_form_with(&p, vec![(w.clone(), QScalar::one())], Strategy::Leftmost);
        let r = normal_form_with(&p, vec![(w.clone(), QScalar::one())], Strategy::Rightmost);
        assert_eq!(l, r);
        assert_eq!(l, Element::from_word(&p, &w));
    }

    #[test]
    fn builtins_are_confluent() {
        for name in crate::engine::BUILTIN_NAMES {
            let p = Presentation::builtin(name).unwrap();
            let report = check_local_confluence(&p);
            assert!(report.passed(), "{name}: {:?}", report.failures);
            assert!(report.overlaps_checked > 0);
        }
    }

    fn spec(json: &str) -> PresentationSpec {
        serde_json::from_str(json).unwrap()
    }

    #[test]
    fn inconsistent_duplicate_rules_fail() {
        let s = spec(
            r#"{"name":"bad","generators":[{"symbol":"x","degree":"(0,0)"},{"symbol":"xi","degree":"(0,1)","nilpotent":true}],
                "rules":[{"hi":"xi","lo":"x","coeff":"q^-1"},{"hi":"xi","lo":"x","coeff":"q^-2"}]}"#,
        );
        let p = Arc::new(Presentation::from_spec_unchecked(&s).unwrap());
        let report = check_local_confluence(&p);
        assert_eq!(report.failures.len(), 1);
        assert_eq!(report.failures[0].overlap, "xi*x");
        assert!(Presentation::from_spec(&s).is_err());
    }

    #[test]
    fn wrong_sign_delta_fails() {
        // with the sign of the exchange flipped, Dxi Dxi xi resolves two ways
        let s = spec(
            r#"{"name":"bad-delta","generators":[{"symbol":"xi","degree":"(1)","nilpotent":true},
                {"symbol":"Dxi","degree":"(1)","nilpotent":true,"kind":"partial","base":"xi"}],
                "rules":[{"hi":"Dxi","lo":"xi","coeff":"1","delta":"1"}]}"#,
        );
        let p = Arc::new(Presentation::from_spec_unchecked(&s).unwrap());
        let report = check_local_confluence(&p);
        assert!(!report.passed());
        assert!(report.failures.iter().any(|f| f.overlap == "Dxi*Dxi*xi"));
    }
}
