//! Check records: the one-line-per-check report format shared by the
//! property suites, the sweeps, and the CLI JSON stream.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::aflt::VerifyReport;

/// One verification outcome. `millis` is informational only and excluded
/// from the determinism contract; everything else is reproducible for a
/// fixed configuration and seed.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub params: BTreeMap<String, String>,
    pub lhs: String,
    pub rhs: String,
    pub equal: bool,
    pub notes: String,
    pub refused: bool,
    pub millis: u128,
    pub terms_peak: usize,
}

impl CheckRecord {
    pub fn new(check: impl Into<String>, params: BTreeMap<String, String>) -> Self {
        CheckRecord {
            check: check.into(),
            params,
            lhs: String::new(),
            rhs: String::new(),
            equal: false,
            notes: String::new(),
            refused: false,
            millis: 0,
            terms_peak: 0,
        }
    }

    /// A record for a check that refused to run (regime precondition).
    /// Refusals do not count as failures.
    pub fn refused(
        check: impl Into<String>,
        params: BTreeMap<String, String>,
        reason: impl Into<String>,
    ) -> Self {
        let mut r = Self::new(check, params);
        r.refused = true;
        r.notes = format!("refused: {}", reason.into());
        r
    }

    pub fn passed(&self) -> bool {
        self.equal || self.refused
    }

    pub fn from_verify(check: impl Into<String>, v: &VerifyReport) -> Self {
        CheckRecord {
            check: check.into(),
            params: v.params.params_map(),
            lhs: v.lhs.to_string(),
            rhs: v.rhs.to_string(),
            equal: v.equal,
            notes: v.notes.clone(),
            refused: false,
            millis: v.millis,
            terms_peak: v.terms_peak,
        }
    }
}

/// Summary of a batch of records: (passed, failed, refused).
pub fn summarize(records: &[CheckRecord]) -> (usize, usize, usize) {
    let pass = records.iter().filter(|r| r.equal).count();
    let refused = records.iter().filter(|r| r.refused).count();
    let fail = records.len() - pass - refused;
    (pass, fail, refused)
}
