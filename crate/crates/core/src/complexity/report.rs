//! Per-model pipeline: `m`, `g` and the lower bound of `Δ` with `d_1` varying.

use serde::Serialize;

use crate::bases::{graver_basis_checkpointed, semiconformal_from_graver, Checkpoints, SemiconformalMode};
use crate::caps::Caps;
use crate::complex::{build_model_matrix, deletion, link, SimplicialComplex, TableDims, VARYING_VERTEX};
use crate::complexity::graver::{check_shapes, doubled_norm_bound_checkpointed, NormBound};
use crate::complexity::markov::{markov_profile, MarkovProfile, ProfileMode};
use crate::error::{CapKind, Error, Result};
use crate::lattice::{type_of, IntMatrix};

/// A computed value, or the reason it is missing.
#[derive(Clone, Debug)]
pub enum Outcome<T> {
    Value(T),
    Missing { reason: String, cap: Option<CapKind> },
}

impl<T> Outcome<T> {
    fn from_result(r: Result<T>) -> Result<Self> {
        match r {
            Ok(v) => Ok(Outcome::Value(v)),
            Err(Error::CapExceeded { kind, detail, .. }) => Ok(Outcome::Missing {
                reason: match detail {
                    Some(d) => format!("{kind} cap exceeded ({d})"),
                    None => format!("{kind} cap exceeded"),
                },
                cap: Some(kind),
            }),
            Err(e) => Err(e),
        }
    }

    fn missing(reason: impl Into<String>) -> Self {
        Outcome::Missing { reason: reason.into(), cap: None }
    }

    pub fn value(&self) -> Option<&T> {
        match self {
            Outcome::Value(v) => Some(v),
            Outcome::Missing { .. } => None,
        }
    }

    pub fn reason(&self) -> Option<&str> {
        match self {
            Outcome::Value(_) => None,
            Outcome::Missing { reason, .. } => Some(reason),
        }
    }

    pub fn cap(&self) -> Option<CapKind> {
        match self {
            Outcome::Missing { cap, .. } => *cap,
            Outcome::Value(_) => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Marker {
    /// `ker A` is trivial, so every lift has a trivial kernel and `m = g = 0`.
    TrivialKernel,
    /// Every facet contains vertex 1: `B` has no rows and the lift is block diagonal.
    SeparableLift,
    /// `m` comes from the early-stopping profile rather than all levels up to `g`.
    Heuristic,
}

impl Marker {
    pub fn describe(self) -> &'static str {
        match self {
            Marker::TrivialKernel => "trivial kernel",
            Marker::SeparableLift => "separable lift (B has no rows)",
            Marker::Heuristic => "heuristic profile",
        }
    }
}

pub struct PipelineOptions<'a> {
    pub mode: ProfileMode,
    pub caps: Caps,
    pub checkpoints: Option<&'a dyn Checkpoints>,
}

impl Default for PipelineOptions<'_> {
    fn default() -> Self {
        PipelineOptions { mode: ProfileMode::Exact, caps: Caps::default(), checkpoints: None }
    }
}

#[derive(Clone, Debug)]
pub struct ComplexityReport {
    pub complex: SimplicialComplex,
    pub dims_rest: TableDims,
    /// Model matrix of the link of vertex 1.
    pub a: IntMatrix,
    /// Model matrix of the deletion of vertex 1 (possibly without rows).
    pub b: IntMatrix,
    pub graver: Outcome<NormBound>,
    pub markov: Outcome<MarkovProfile>,
    pub lower_bound: Outcome<NormBound>,
    pub markers: Vec<Marker>,
    pub caps: Caps,
}

impl ComplexityReport {
    pub fn g(&self) -> Option<usize> {
        self.graver.value().map(|n| n.value)
    }

    pub fn m(&self) -> Option<usize> {
        self.markov.value().map(|p| p.value)
    }

    pub fn lb(&self) -> Option<usize> {
        self.lower_bound.value().map(|n| n.value)
    }

    /// Re-validates every witness and the order `lb ≤ m ≤ g`.
    pub fn verify(&self) -> Result<()> {
        for (name, bound) in [("graver", &self.graver), ("lower bound", &self.lower_bound)] {
            if let Some(n) = bound.value() {
                if let Some(w) = &n.witness {
                    if !w.validate(&self.a, &self.b, &n.generators)? || w.norm1() as usize != n.value {
                        return Err(Error::CrossCheck(format!("{name} witness does not realize {}", n.value)));
                    }
                }
            }
        }
        if let Some(p) = self.markov.value() {
            if let Some(w) = &p.witness {
                let t = w.slice_count();
                let in_kernel = w.slices().iter().all(|s| self.a.in_kernel(s)) && self.b.in_kernel(&w.slice_sum());
                if !in_kernel || type_of(w.base(), t, self.a.cols())? != p.value {
                    return Err(Error::CrossCheck(format!("markov witness does not have type {}", p.value)));
                }
            }
        }
        if let (Some(m), Some(g)) = (self.m(), self.g()) {
            if m > g {
                return Err(Error::CrossCheck(format!("m = {m} exceeds g = {g}")));
            }
        }
        if let (Some(lb), Some(m)) = (self.lb(), self.m()) {
            if lb > m {
                return Err(Error::CrossCheck(format!("lower bound {lb} exceeds m = {m}")));
            }
        }
        Ok(())
    }
}

/// `(A_link, A_del)` at vertex 1 for a complex on `1..=n` and dims `d_2..d_n`.
pub fn model_matrices(delta: &SimplicialComplex, dims_rest: &TableDims) -> Result<(IntMatrix, IntMatrix)> {
    let n = delta.n();
    if delta.vertices() != (1..=n).collect::<Vec<_>>().as_slice() {
        return Err(Error::Precondition(format!("ground set of {delta} is not 1..{n}")));
    }
    if dims_rest.as_slice().len() + 1 != n {
        return Err(Error::DimensionMismatch(format!(
            "{} dims for the {} vertices other than 1",
            dims_rest.as_slice().len(),
            n - 1
        )));
    }
    let lk = link(delta, VARYING_VERTEX)?;
    let a = build_model_matrix(&lk, dims_rest)?.matrix;
    let b = match deletion(delta, VARYING_VERTEX) {
        Ok(c) => build_model_matrix(&c, dims_rest)?.matrix,
        Err(Error::EmptyDeletion(_)) => IntMatrix::zeros(0, a.cols()),
        Err(e) => return Err(e),
    };
    Ok((a, b))
}

/// Runs `g`, the lower bound and `m` for `Δ` with `d_1` varying. Caps that
/// trip leave the affected numbers missing; other failures are errors.
pub fn model_complexities(
    delta: &SimplicialComplex,
    dims_rest: &TableDims,
    opts: &PipelineOptions<'_>,
) -> Result<ComplexityReport> {
    let (a, b) = model_matrices(delta, dims_rest)?;
    check_shapes(&a, &b)?;
    let caps = opts.caps.clone().started();
    let mut markers = Vec::new();
    if b.rows() == 0 {
        markers.push(Marker::SeparableLift);
    }
    let ga = Outcome::from_result(graver_basis_checkpointed(&a, &caps, opts.checkpoints))?;
    let (graver, lower_bound) = match &ga {
        Outcome::Value(ga) => {
            if ga.is_empty() {
                markers.push(Marker::TrivialKernel);
            }
            let graver = Outcome::from_result(doubled_norm_bound_checkpointed(&b, ga.vectors(), &caps, opts.checkpoints))?;
            let lower = Outcome::from_result(
                semiconformal_from_graver(&a, ga, SemiconformalMode::Strict, &caps)
                    .and_then(|s| doubled_norm_bound_checkpointed(&b, s.vectors(), &caps, None)),
            )?;
            (graver, lower)
        }
        Outcome::Missing { reason, cap } => {
            let m = Outcome::Missing { reason: format!("Graver basis of A unavailable: {reason}"), cap: *cap };
            (m.clone(), m)
        }
    };
    let markov = match &graver {
        Outcome::Value(g) => Outcome::from_result(markov_profile(&a, &b, g, opts.mode, &caps))?,
        Outcome::Missing { .. } => Outcome::missing("needs the Graver complexity"),
    };
    if let Outcome::Value(p) = &markov {
        if !p.certified && p.mode == ProfileMode::Heuristic {
            markers.push(Marker::Heuristic);
        }
    }
    let markov = match markov {
        Outcome::Value(p) if !p.certified && p.mode == ProfileMode::Exact => Outcome::Missing {
            reason: format!("profile stopped at r = {} before reaching g", p.profile.len()),
            cap: Some(CapKind::LiftLevel),
        },
        other => other,
    };
    let report = ComplexityReport {
        complex: delta.clone(),
        dims_rest: dims_rest.clone(),
        a,
        b,
        graver,
        markov,
        lower_bound,
        markers,
        caps: opts.caps.clone(),
    };
    report.verify()?;
    Ok(report)
}
