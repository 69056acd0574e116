//! Relation tables, written in the expression language as `lhs = rhs`.

use std::sync::Arc;

use crate::engine::{FreeElement, Presentation};
use crate::error::Error;
use crate::expr::parse_free;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Relation {
    pub id: &'static str,
    pub presentation: &'static str,
    pub lhs: &'static str,
    pub rhs: &'static str,
}

impl Relation {
    pub fn label(&self) -> String {
        format!("{} = {}", self.lhs, self.rhs)
    }

    pub fn load_presentation(&self) -> Result<Arc<Presentation>, Error> {
        Presentation::builtin(self.presentation)
    }

    /// `lhs - rhs` as an unreduced word combination in `p`.
    pub fn free_in(&self, p: &Arc<Presentation>) -> Result<FreeElement, Error> {
        parse_free(self.lhs, p)?.try_sub(&parse_free(self.rhs, p)?)
    }

    /// `lhs - rhs` in the relation's own presentation.
    pub fn free(&self) -> Result<FreeElement, Error> {
        self.free_in(&self.load_presentation()?)
    }
}

const fn rel(id: &'static str, presentation: &'static str, lhs: &'static str, rhs: &'static str) -> Relation {
    Relation { id, presentation, lhs, rhs }
}

pub const COORDINATE: [Relation; 8] = [
    rel("coord-1", "dqsp", "x*xi", "q*xi*x"),
    rel("coord-2", "dqsp", "x*theta", "q*theta*x"),
    rel("coord-3", "dqsp", "x*z", "z*x"),
    rel("coord-4", "dqsp", "xi^2", "0"),
    rel("coord-5", "dqsp", "theta^2", "0"),
    rel("coord-6", "dqsp", "xi*theta", "theta*xi"),
    rel("coord-7", "dqsp", "xi*z", "-q^-1*z*xi"),
    rel("coord-8", "dqsp", "theta*z", "-q^-1*z*theta"),
];

pub const INVERSE: [Relation; 3] = [
    rel("inverse-1", "dqsp-ext", "xinv*xi", "q^-1*xi*xinv"),
    rel("inverse-2", "dqsp-ext", "xinv*theta", "q^-1*theta*xinv"),
    rel("inverse-3", "dqsp-ext", "xinv*z", "z*xinv"),
];

pub const MANIN: [Relation; 5] = [
    rel("manin-1", "manin-sp", "xp*xip", "q*xip*xp"),
    rel("manin-2", "manin-sp", "xp*thetap", "q*thetap*xp"),
    rel("manin-3", "manin-sp", "xip*thetap", "-q^-1*thetap*xip"),
    rel("manin-4", "manin-sp", "xip^2", "0"),
    rel("manin-5", "manin-sp", "thetap^2", "0"),
];

/// Coordinates against differentials.
pub const ONE_FORM: [Relation; 16] = [
    rel("one-form-1", "dqsp-omega", "x*dx", "dx*x"),
    rel("one-form-2", "dqsp-omega", "x*dxi", "q*dxi*x"),
    rel("one-form-3", "dqsp-omega", "x*dtheta", "q*dtheta*x"),
    rel("one-form-4", "dqsp-omega", "x*dz", "dz*x"),
    rel("one-form-5", "dqsp-omega", "xi*dx", "q^-1*dx*xi"),
    rel("one-form-6", "dqsp-omega", "xi*dxi", "-dxi*xi"),
    rel("one-form-7", "dqsp-omega", "xi*dtheta", "dtheta*xi"),
    rel("one-form-8", "dqsp-omega", "xi*dz", "-q^-1*dz*xi"),
    rel("one-form-9", "dqsp-omega", "theta*dx", "q^-1*dx*theta"),
    rel("one-form-10", "dqsp-omega", "theta*dxi", "dxi*theta"),
    rel("one-form-11", "dqsp-omega", "theta*dtheta", "-dtheta*theta"),
    rel("one-form-12", "dqsp-omega", "theta*dz", "-q^-1*dz*theta"),
    rel("one-form-13", "dqsp-omega", "z*dx", "dx*z"),
    rel("one-form-14", "dqsp-omega", "z*dxi", "-q*dxi*z"),
    rel("one-form-15", "dqsp-omega", "z*dtheta", "-q*dtheta*z"),
    rel("one-form-16", "dqsp-omega", "z*dz", "dz*z"),
];

/// Differentials against differentials.
pub const TWO_FORM: [Relation; 8] = [
    rel("two-form-1", "dqsp-omega", "dx*dxi", "-q*dxi*dx"),
    rel("two-form-2", "dqsp-omega", "dx*dtheta", "-q*dtheta*dx"),
    rel("two-form-3", "dqsp-omega", "dx*dz", "-dz*dx"),
    rel("two-form-4", "dqsp-omega", "dxi*dtheta", "-dtheta*dxi"),
    rel("two-form-5", "dqsp-omega", "dxi*dz", "q^-1*dz*dxi"),
    rel("two-form-6", "dqsp-omega", "dtheta*dz", "q^-1*dz*dtheta"),
    rel("two-form-7", "dqsp-omega", "dx^2", "0"),
    rel("two-form-8", "dqsp-omega", "dz^2", "0"),
];

/// Constraints on any coordinate/differential exchange rules, obtained by
/// applying `d` to the coordinate relations. Each is paired with the id of
/// the relation it comes from.
pub const LIFTED: [(Relation, &str); 6] = [
    (
        rel("lifted-1", "dqsp-omega", "(x*dxi - q*dxi*x) - q*(xi*dx - q^-1*dx*xi)", "0"),
        "coord-1",
    ),
    (
        rel("lifted-2", "dqsp-omega", "(x*dtheta - q*dtheta*x) - q*(theta*dx - q^-1*dx*theta)", "0"),
        "coord-2",
    ),
    (rel("lifted-3", "dqsp-omega", "(x*dz - dz*x) - (z*dx - dx*z)", "0"), "coord-3"),
    (
        rel("lifted-4", "dqsp-omega", "(xi*dtheta - dtheta*xi) - (theta*dxi - dxi*theta)", "0"),
        "coord-6",
    ),
    (
        rel("lifted-5", "dqsp-omega", "(xi*dz + q^-1*dz*xi) + q^-1*(z*dxi + q*dxi*z)", "0"),
        "coord-7",
    ),
    (
        rel("lifted-6", "dqsp-omega", "(theta*dz + q^-1*dz*theta) + q^-1*(z*dtheta + q*dtheta*z)", "0"),
        "coord-8",
    ),
];

pub const PARTIAL_COORDINATE: [Relation; 16] = [
    rel("partial-coordinate-1", "dqsp-ops", "Dx*x", "1 + x*Dx"),
    rel("partial-coordinate-2", "dqsp-ops", "Dxi*x", "q*x*Dxi"),
    rel("partial-coordinate-3", "dqsp-ops", "Dtheta*x", "q*x*Dtheta"),
    rel("partial-coordinate-4", "dqsp-ops", "Dz*x", "x*Dz"),
    rel("partial-coordinate-5", "dqsp-ops", "Dx*xi", "q^-1*xi*Dx"),
    rel("partial-coordinate-6", "dqsp-ops", "Dxi*xi", "1 - xi*Dxi"),
    rel("partial-coordinate-7", "dqsp-ops", "Dtheta*xi", "xi*Dtheta"),
    rel("partial-coordinate-8", "dqsp-ops", "Dz*xi", "-q^-1*xi*Dz"),
    rel("partial-coordinate-9", "dqsp-ops", "Dx*theta", "q^-1*theta*Dx"),
    rel("partial-coordinate-10", "dqsp-ops", "Dxi*theta", "theta*Dxi"),
    rel("partial-coordinate-11", "dqsp-ops", "Dtheta*theta", "1 - theta*Dtheta"),
    rel("partial-coordinate-12", "dqsp-ops", "Dz*theta", "-q^-1*theta*Dz"),
    rel("partial-coordinate-13", "dqsp-ops", "Dx*z", "z*Dx"),
    rel("partial-coordinate-14", "dqsp-ops", "Dxi*z", "-q*z*Dxi"),
    rel("partial-coordinate-15", "dqsp-ops", "Dtheta*z", "-q*z*Dtheta"),
    rel("partial-coordinate-16", "dqsp-ops", "Dz*z", "1 + z*Dz"),
];

pub const PARTIAL_PARTIAL: [Relation; 8] = [
    rel("partial-partial-1", "dqsp-ops", "Dx*Dxi", "q*Dxi*Dx"),
    rel("partial-partial-2", "dqsp-ops", "Dx*Dtheta", "q*Dtheta*Dx"),
    rel("partial-partial-3", "dqsp-ops", "Dx*Dz", "Dz*Dx"),
    rel("partial-partial-4", "dqsp-ops", "Dxi*Dtheta", "Dtheta*Dxi"),
    rel("partial-partial-5", "dqsp-ops", "Dxi*Dz", "-q^-1*Dz*Dxi"),
    rel("partial-partial-6", "dqsp-ops", "Dtheta*Dz", "-q^-1*Dz*Dtheta"),
    rel("partial-partial-7", "dqsp-ops", "Dxi^2", "0"),
    rel("partial-partial-8", "dqsp-ops", "Dtheta^2", "0"),
];

pub const PARTIAL_DIFFERENTIAL: [Relation; 16] = [
    rel("partial-differential-1", "dqsp-ops", "Dx*dx", "dx*Dx"),
    rel("partial-differential-2", "dqsp-ops", "Dx*dxi", "q^-1*dxi*Dx"),
    rel("partial-differential-3", "dqsp-ops", "Dx*dtheta", "q^-1*dtheta*Dx"),
    rel("partial-differential-4", "dqsp-ops", "Dx*dz", "dz*Dx"),
    rel("partial-differential-5", "dqsp-ops", "Dxi*dx", "q*dx*Dxi"),
    rel("partial-differential-6", "dqsp-ops", "Dxi*dxi", "-dxi*Dxi"),
    rel("partial-differential-7", "dqsp-ops", "Dxi*dtheta", "dtheta*Dxi"),
    rel("partial-differential-8", "dqsp-ops", "Dxi*dz", "-q*dz*Dxi"),
    rel("partial-differential-9", "dqsp-ops", "Dtheta*dx", "q*dx*Dtheta"),
    rel("partial-differential-10", "dqsp-ops", "Dtheta*dtheta", "-dtheta*Dtheta"),
    rel("partial-differential-11", "dqsp-ops", "Dtheta*dxi", "dxi*Dtheta"),
    rel("partial-differential-12", "dqsp-ops", "Dtheta*dz", "-q*dz*Dtheta"),
    rel("partial-differential-13", "dqsp-ops", "Dz*dx", "dx*Dz"),
    rel("partial-differential-14", "dqsp-ops", "Dz*dxi", "-q^-1*dxi*Dz"),
    rel("partial-differential-15", "dqsp-ops", "Dz*dtheta", "-q^-1*dtheta*Dz"),
    rel("partial-differential-16", "dqsp-ops", "Dz*dz", "dz*Dz"),
];

/// The defining relations of the coordinate algebra followed by those of
/// the inverse of `x`.
pub fn hopf_relations() -> impl Iterator<Item = &'static Relation> {
    COORDINATE.iter().chain(INVERSE.iter())
}

/// Looks a relation up by id across all tables.
pub fn find(id: &str) -> Option<Relation> {
    COORDINATE
        .iter()
        .chain(&INVERSE)
        .chain(&MANIN)
        .chain(&ONE_FORM)
        .chain(&TWO_FORM)
        .chain(LIFTED.iter().map(|(r, _)| r))
        .chain(&PARTIAL_COORDINATE)
        .chain(&PARTIAL_PARTIAL)
        .chain(&PARTIAL_DIFFERENTIAL)
        .find(|r| r.id == id)
        .copied()
}
