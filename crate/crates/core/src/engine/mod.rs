//! Presentations, PBW monomials, rewriting and element arithmetic.

mod element;
mod monomial;
mod presentation;
mod rewrite;
mod words;

pub use element::Element;
pub(crate) use element::render_sum;
pub use monomial::{enumerate_monomials, Monomial};
pub use presentation::{
    DegreeSpec, ExchangeRule, GeneratorInfo, GeneratorKind, GeneratorRef, GeneratorSpec,
    Presentation, PresentationSpec, RuleSpec, BUILTIN_NAMES, PRESENTATION_PATH_VAR,
};
pub use rewrite::{
    check_local_confluence, normal_form, normal_form_with, ConfluenceReport, OverlapFailure,
    Strategy,
};
pub use words::{render_word, FreeElement, Letter, Word};

/// Whether two word expressions have the same normal form.
pub fn check_relation(lhs: &FreeElement, rhs: &FreeElement) -> bool {
    lhs.normal_form(Strategy::Leftmost) == rhs.normal_form(Strategy::Leftmost)
}
