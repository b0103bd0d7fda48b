use std::time::{Duration, Instant};

use crate::error::{CapKind, Error, Result};

/// Resource limits shared by every long-running computation.
#[derive(Debug, Clone)]
pub struct Caps {
    pub max_fiber_points: usize,
    pub max_basis_elements: usize,
    /// Upper limit on the lifting level examined by the Markov profile.
    pub max_r: Option<usize>,
    pub time_limit: Option<Duration>,
    deadline: Option<Instant>,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_fiber_points: 2_000_000,
            max_basis_elements: 2_000_000,
            max_r: None,
            time_limit: None,
            deadline: None,
        }
    }
}

impl Caps {
    pub fn unlimited() -> Self {
        Caps {
            max_fiber_points: usize::MAX,
            max_basis_elements: usize::MAX,
            ..Caps::default()
        }
    }

    pub fn with_fiber_points(mut self, n: usize) -> Self {
        self.max_fiber_points = n;
        self
    }

    pub fn with_basis_elements(mut self, n: usize) -> Self {
        self.max_basis_elements = n;
        self
    }

    pub fn with_max_r(mut self, r: usize) -> Self {
        self.max_r = Some(r);
        self
    }

    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.time_limit = Some(limit);
        self.deadline = None;
        self
    }

    /// Arms the wall-clock deadline; called once when a top-level computation starts.
    pub fn started(mut self) -> Self {
        self.deadline = self.time_limit.map(|t| Instant::now() + t);
        self
    }

    #[inline]
    pub fn check_time(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Error::cap(CapKind::TimeLimit, "deadline passed")),
            _ => Ok(()),
        }
    }

    pub fn check_basis(&self, elements: usize) -> Result<()> {
        if elements > self.max_basis_elements {
            Err(Error::cap(CapKind::BasisElements, format!("{elements} elements")))
        } else {
            Ok(())
        }
    }

    pub fn check_fiber(&self, points: usize) -> Result<()> {
        if points > self.max_fiber_points {
            Err(Error::cap(CapKind::FiberPoints, format!("{points} points")))
        } else {
            Ok(())
        }
    }
}
