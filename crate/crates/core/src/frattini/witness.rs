use serde::Serialize;

use crate::error::{Error, Result};
use crate::hall::{hall_classes, pi_part, PrimeSet};
use crate::perm_core::{class_is_stable, normalizer, product_order, PermGroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    #[serde(rename = "ORACLE")]
    Oracle,
    #[serde(rename = "CONSTRUCTIVE")]
    Constructive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Case {
    /// `A = 1`.
    #[serde(rename = "TRIVIAL_NORMAL")]
    TrivialNormal,
    /// `G` simple, so `A = G`.
    #[serde(rename = "SIMPLE_GROUP")]
    SimpleGroup,
    #[serde(rename = "MINIMAL_NORMAL")]
    MinimalNormal,
    #[serde(rename = "RECURSE_IN_K")]
    RecurseInK,
    #[serde(rename = "QUOTIENT_LIFT")]
    QuotientLift,
    #[serde(rename = "SCHUR_ZASSENHAUS")]
    SchurZassenhaus,
}

impl Case {
    pub fn as_str(self) -> &'static str {
        match self {
            Case::TrivialNormal => "TRIVIAL_NORMAL",
            Case::SimpleGroup => "SIMPLE_GROUP",
            Case::MinimalNormal => "MINIMAL_NORMAL",
            Case::RecurseInK => "RECURSE_IN_K",
            Case::QuotientLift => "QUOTIENT_LIFT",
            Case::SchurZassenhaus => "SCHUR_ZASSENHAUS",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub depth: usize,
    pub case: Case,
    pub group_order: u64,
    pub normal_order: u64,
    /// Order of the minimal normal subgroup `M` chosen at this step.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimal_normal_order: Option<u64>,
    /// Order of the Hall subgroup produced at this step.
    pub result_order: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Checks {
    pub product_covers_g: bool,
    pub normalizer_in_e_pi: bool,
    pub normalizer_hall_is_g_hall: bool,
}

impl Checks {
    pub fn all(&self) -> bool {
        self.product_covers_g && self.normalizer_in_e_pi && self.normalizer_hall_is_g_hall
    }
}

#[derive(Debug, Clone)]
pub struct FrattiniWitness {
    pub a: PermGroup,
    pub h: PermGroup,
    pub normalizer: PermGroup,
    pub checks: Checks,
    pub method: Method,
    pub trace: Vec<TraceStep>,
    /// Oracle only: indices of every `G`-stable class among the Hall classes
    /// of `A`.
    pub stable_classes: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessSummary {
    pub method: Method,
    pub normal_order: u64,
    pub hall_order: u64,
    pub hall_generators: Vec<String>,
    pub normalizer_order: u64,
    pub normalizer_generators: Vec<String>,
    pub checks: Checks,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub stable_classes: Vec<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<TraceStep>,
}

impl FrattiniWitness {
    pub fn summary(&self) -> WitnessSummary {
        WitnessSummary {
            method: self.method,
            normal_order: self.a.order(),
            hall_order: self.h.order(),
            hall_generators: self.h.generator_strings(),
            normalizer_order: self.normalizer.order(),
            normalizer_generators: self.normalizer.generator_strings(),
            checks: self.checks,
            stable_classes: self.stable_classes.clone(),
            trace: self.trace.clone(),
        }
    }
}

/// Computes `N_G(H)` and the three flags for a candidate `H`.
pub(crate) fn evaluate(
    g: &PermGroup,
    a: &PermGroup,
    h: &PermGroup,
    pi: &PrimeSet,
) -> Result<(PermGroup, Checks)> {
    let n = normalizer(g, h)?;
    let stable = class_is_stable(g, a, h)?;
    // G = A N_G(H) read off from orders must agree with the class criterion
    let covers = product_order(a, &n)? == g.order();
    if covers != stable {
        return Err(Error::InvariantViolation(format!(
            "H^G = H^A is {stable} but |A N_G(H)| = |G| is {covers}"
        )));
    }
    let nh = hall_classes(&n, pi)?;
    let in_e = nh.status.is_e();
    let target = pi_part(g.order(), pi);
    let full = in_e && nh.classes.iter().all(|c| c.order() == target);
    Ok((
        n,
        Checks {
            product_covers_g: stable,
            normalizer_in_e_pi: in_e,
            normalizer_hall_is_g_hall: full,
        },
    ))
}
