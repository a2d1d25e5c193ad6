//! Machine-readable reports. All floating-point values are serialized
//! as JSON numbers with 17 significant digits so that reports round-trip
//! bit-exactly and byte-identically for identical inputs.

use serde::Deserialize;

/// f64 → JSON number with 17 significant digits.
pub fn f17(x: f64) -> serde_json::Value {
    let s = format!("{:.16e}", x);
    let n: serde_json::Number = s.parse().expect("finite float formats as a JSON number");
    serde_json::Value::Number(n)
}

/// Outcome of one residual check over sampled inputs.
#[derive(Clone, Debug, Deserialize)]
pub struct QReport {
    /// Which check produced this report.
    pub check: String,
    pub n_samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub max_abs_error: f64,
    pub pass: bool,
    #[serde(default)]
    pub lambda: Option<f64>,
    #[serde(default)]
    pub mu: Option<f64>,
    /// Samples that survived the pole guard, when one applies.
    #[serde(default)]
    pub admitted_samples: Option<usize>,
}

impl QReport {
    pub fn to_json(&self) -> serde_json::Value {
        let mut m = serde_json::Map::new();
        m.insert("check".into(), self.check.clone().into());
        m.insert("n_samples".into(), self.n_samples.into());
        m.insert("seed".into(), self.seed.into());
        m.insert("tol".into(), f17(self.tol));
        m.insert("max_abs_error".into(), f17(self.max_abs_error));
        m.insert("pass".into(), self.pass.into());
        if let Some(l) = self.lambda {
            m.insert("lambda".into(), f17(l));
        }
        if let Some(mu) = self.mu {
            m.insert("mu".into(), f17(mu));
        }
        if let Some(n) = self.admitted_samples {
            m.insert("admitted_samples".into(), n.into());
        }
        serde_json::Value::Object(m)
    }
}

/// Result of one named identity suite from the `verify` module.
#[derive(Clone, Debug, Deserialize)]
pub struct CheckOutcome {
    /// Short machine name, e.g. "cross_identities".
    pub check: String,
    /// The identity being certified, stated as a formula.
    pub identity: String,
    pub n_samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub max_abs_error: f64,
    pub pass: bool,
    /// Extra named scalars (eigenvalues, ranks, residual breakdowns),
    /// in a fixed order.
    #[serde(default)]
    pub details: Vec<(String, f64)>,
    /// Free-form note, e.g. which normalization a pairing matched.
    #[serde(default)]
    pub note: Option<String>,
}

impl CheckOutcome {
    pub fn to_json(&self) -> serde_json::Value {
        let mut m = serde_json::Map::new();
        m.insert("check".into(), self.check.clone().into());
        m.insert("identity".into(), self.identity.clone().into());
        m.insert("n_samples".into(), self.n_samples.into());
        m.insert("seed".into(), self.seed.into());
        m.insert("tol".into(), f17(self.tol));
        m.insert("max_abs_error".into(), f17(self.max_abs_error));
        m.insert("pass".into(), self.pass.into());
        if !self.details.is_empty() {
            let mut d = serde_json::Map::new();
            for (k, v) in &self.details {
                d.insert(k.clone(), f17(*v));
            }
            m.insert("details".into(), serde_json::Value::Object(d));
        }
        if let Some(note) = &self.note {
            m.insert("note".into(), note.clone().into());
        }
        serde_json::Value::Object(m)
    }
}
