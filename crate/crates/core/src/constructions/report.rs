use serde::Serialize;

use crate::geom2d::Tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ClaimStatus {
    Pass,
    Fail,
    /// The hypothesis of the claim does not hold for this input.
    ConditionNotMet,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Claim {
    pub name: String,
    /// Signed, normalized residual; `None` when the claim was not evaluated.
    pub residual: Option<f64>,
    pub status: ClaimStatus,
}

/// Residuals of a family of claims checked on one input.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagnosticsReport {
    pub title: String,
    pub claims: Vec<Claim>,
}

impl DiagnosticsReport {
    pub fn new(title: &str) -> Self {
        DiagnosticsReport { title: title.to_string(), claims: Vec::new() }
    }

    pub fn check(&mut self, name: &str, residual: f64, tol: &Tolerance) {
        let status = if residual.abs() <= tol.eps_incidence { ClaimStatus::Pass } else { ClaimStatus::Fail };
        self.claims.push(Claim { name: name.to_string(), residual: Some(residual), status });
    }

    pub fn not_met(&mut self, name: &str) {
        self.claims.push(Claim { name: name.to_string(), residual: None, status: ClaimStatus::ConditionNotMet });
    }

    pub fn get(&self, name: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.name == name)
    }

    /// No claim failed. Claims whose condition is not met do not count.
    pub fn passes(&self) -> bool {
        self.claims.iter().all(|c| c.status != ClaimStatus::Fail)
    }

    pub fn max_residual(&self) -> f64 {
        self.claims.iter().filter_map(|c| c.residual).fold(0.0, |m, r| m.max(r.abs()))
    }
}
