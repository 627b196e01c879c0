//! Optional log of every Gröbner basis computed, so test suites can re-verify
//! them after the fact.

use std::sync::Mutex;

use super::{GroebnerBasis, Ideal};
use crate::poly::{GroundField, MonomialOrder, Polynomial, Var};

#[derive(Debug, Clone)]
pub struct AuditRecord {
    pub field: GroundField,
    pub ambient: Vec<Var>,
    pub order: MonomialOrder,
    pub generators: Vec<Polynomial>,
    pub basis: Vec<Polynomial>,
}

static LOG: Mutex<Option<Vec<AuditRecord>>> = Mutex::new(None);

/// Starts recording (clearing any previous log).
pub fn enable() {
    *LOG.lock().unwrap() = Some(Vec::new());
}

/// Stops recording and returns what was logged.
pub fn take() -> Vec<AuditRecord> {
    LOG.lock().unwrap().take().unwrap_or_default()
}

pub(crate) fn record(ideal: &Ideal, gb: &GroebnerBasis) {
    let mut guard = LOG.lock().unwrap();
    if let Some(log) = guard.as_mut() {
        log.push(AuditRecord {
            field: ideal.field,
            ambient: ideal.ambient.clone(),
            order: gb.order,
            generators: ideal.generators.clone(),
            basis: gb.polys.clone(),
        });
    }
}
