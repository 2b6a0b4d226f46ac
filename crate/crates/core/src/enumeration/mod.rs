//! Face-number invariants: f/h/g vectors, fine and flag vectors, Betti
//! corrections and the inequality auditor.

mod audit;
mod fine;
mod macaulay;
mod schenzel;
mod vectors;

pub use audit::{
    audit, kuhnel_minimum_f, Assertions, AuditEntry, AuditReport, CheckKind, CheckStatus,
};
pub use fine::*;
pub use macaulay::{binomial_expansion, is_m_vector, macaulay_pseudopower};
pub use schenzel::{
    expected_top_h_prime, g_invariant, h_prime, satisfies_duality, short_h,
    short_h_recurrence_defect,
};
pub use vectors::*;
