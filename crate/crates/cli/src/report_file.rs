//! JSON reports for one model. Missing numbers are `null` next to a reason.

use std::path::Path;

use markov_complexity::complexity::{Marker, MarkovProfile, NormBound, Outcome, ProfileEntry, ProfileMode};
use markov_complexity::{ComplexityReport, IntVector};
use serde::Serialize;

use crate::io::{write_atomic, CliError};

pub const SCHEMA_VERSION: u32 = 1;
/// Bumped whenever row, column or basis ordering changes.
pub const CANONICAL_ORDER_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct ReportFile {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub canonical_order_version: u32,
    pub model: String,
    pub dims: Dims,
    pub link_matrix: Shape,
    pub deletion_matrix: Shape,
    pub graver_complexity: Quantity,
    pub markov_complexity: MarkovQuantity,
    pub lower_bound: Quantity,
    pub per_r_profile: Profile,
    pub witnesses: Witnesses,
    pub markers: Vec<Marker>,
    pub caps: CapsOut,
    pub timings: Option<Timings>,
    pub timings_reason: Option<String>,
}

#[derive(Serialize)]
pub struct Dims {
    /// The varying table dimension `d_1`.
    pub varying: &'static str,
    /// `d_2, …, d_n`.
    pub rest: Vec<usize>,
}

#[derive(Serialize)]
pub struct Shape {
    pub rows: usize,
    pub cols: usize,
}

#[derive(Serialize)]
pub struct Quantity {
    pub value: Option<usize>,
    pub reason: Option<String>,
    pub cap: Option<String>,
}

#[derive(Serialize)]
pub struct MarkovQuantity {
    pub value: Option<usize>,
    pub reason: Option<String>,
    pub cap: Option<String>,
    pub mode: ProfileMode,
    pub certified: bool,
}

#[derive(Serialize)]
pub struct Profile {
    pub levels: Option<Vec<ProfileEntry>>,
    pub reason: Option<String>,
}

#[derive(Serialize)]
pub struct Witness {
    /// Column counts over `[+g_0, −g_0, +g_1, …]` for norm witnesses.
    pub gamma: Option<Vec<u64>>,
    pub slices: Vec<IntVector>,
}

#[derive(Serialize)]
pub struct WitnessSlot {
    pub value: Option<Witness>,
    pub reason: Option<String>,
}

#[derive(Serialize)]
pub struct Witnesses {
    pub graver: WitnessSlot,
    pub markov: WitnessSlot,
    pub lower_bound: WitnessSlot,
}

#[derive(Serialize)]
pub struct CapsOut {
    pub max_fiber_points: usize,
    pub max_basis_elements: usize,
    pub max_r: Option<usize>,
    pub time_limit_seconds: Option<f64>,
}

#[derive(Serialize)]
pub struct Timings {
    pub total_seconds: f64,
}

fn quantity<T>(o: &Outcome<T>, value: impl Fn(&T) -> usize) -> Quantity {
    Quantity {
        value: o.value().map(value),
        reason: o.reason().map(str::to_string),
        cap: o.cap().map(|c| c.to_string()),
    }
}

fn norm_witness(o: &Outcome<NormBound>) -> WitnessSlot {
    match o {
        Outcome::Missing { reason, .. } => WitnessSlot { value: None, reason: Some(reason.clone()) },
        Outcome::Value(n) => match &n.witness {
            None => WitnessSlot { value: None, reason: Some("the bound is 0; no nonzero element".into()) },
            Some(w) => match w.expand(&n.generators) {
                Ok(s) => WitnessSlot {
                    value: Some(Witness { gamma: Some(w.counts.clone()), slices: s.slices() }),
                    reason: None,
                },
                Err(e) => WitnessSlot { value: None, reason: Some(e.to_string()) },
            },
        },
    }
}

fn markov_witness(o: &Outcome<MarkovProfile>) -> WitnessSlot {
    match o {
        Outcome::Missing { reason, .. } => WitnessSlot { value: None, reason: Some(reason.clone()) },
        Outcome::Value(p) => match &p.witness {
            None => WitnessSlot { value: None, reason: Some("the complexity is 0; no move".into()) },
            Some(w) => WitnessSlot { value: Some(Witness { gamma: None, slices: w.slices() }), reason: None },
        },
    }
}

impl ReportFile {
    pub fn new(report: &ComplexityReport, mode: ProfileMode, elapsed: Option<f64>) -> Self {
        let (certified, profile) = match &report.markov {
            Outcome::Value(p) => (p.certified, Profile { levels: Some(p.profile.clone()), reason: None }),
            Outcome::Missing { reason, .. } => (false, Profile { levels: None, reason: Some(reason.clone()) }),
        };
        ReportFile {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION"),
            canonical_order_version: CANONICAL_ORDER_VERSION,
            model: report.complex.to_string(),
            dims: Dims { varying: "d_1", rest: report.dims_rest.as_slice().to_vec() },
            link_matrix: Shape { rows: report.a.rows(), cols: report.a.cols() },
            deletion_matrix: Shape { rows: report.b.rows(), cols: report.b.cols() },
            graver_complexity: quantity(&report.graver, |n| n.value),
            markov_complexity: {
                let q = quantity(&report.markov, |p| p.value);
                MarkovQuantity { value: q.value, reason: q.reason, cap: q.cap, mode, certified }
            },
            lower_bound: quantity(&report.lower_bound, |n| n.value),
            per_r_profile: profile,
            witnesses: Witnesses {
                graver: norm_witness(&report.graver),
                markov: markov_witness(&report.markov),
                lower_bound: norm_witness(&report.lower_bound),
            },
            markers: report.markers.clone(),
            caps: CapsOut {
                max_fiber_points: report.caps.max_fiber_points,
                max_basis_elements: report.caps.max_basis_elements,
                max_r: report.caps.max_r,
                time_limit_seconds: report.caps.time_limit.map(|t| t.as_secs_f64()),
            },
            timings: elapsed.map(|total_seconds| Timings { total_seconds }),
            timings_reason: elapsed.is_none().then(|| "not recorded (pass --timings); reports stay byte-reproducible".into()),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// Writes atomically, then re-reads the file and compares.
    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        let value = self.to_json();
        let mut text = serde_json::to_string_pretty(&value).expect("report serializes");
        text.push('\n');
        write_atomic(path, &text)?;
        let back = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let parsed: serde_json::Value =
            serde_json::from_str(&back).map_err(|e| CliError::internal(format!("{}: {e}", path.display())))?;
        if parsed != value {
            return Err(CliError::internal(format!("{} does not read back to the written report", path.display())));
        }
        Ok(())
    }

    /// `m=…, g=…, lb=…` with `?` for missing numbers.
    pub fn summary(&self) -> String {
        let show = |v: Option<usize>| v.map_or_else(|| "?".to_string(), |x| x.to_string());
        format!(
            "m={}, g={}, lb={}",
            show(self.markov_complexity.value),
            show(self.graver_complexity.value),
            show(self.lower_bound.value)
        )
    }
}
