//! Bounds for the exhaustive searches and their three-valued outcome.

use std::env;

/// Environment variable overriding the default search budget.
pub const BUDGET_ENV: &str = "QORDER_BUDGET";

/// Limits on instance size and on the number of candidates a search may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest number of objects a searched structure may have.
    pub max_objects: usize,
    /// Largest hom lattice a searched structure's base may have.
    pub max_hom_size: usize,
    /// Candidate visits before a search gives up.
    pub max_steps: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_objects: 3,
            max_hom_size: 8,
            max_steps: 5_000_000,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            max_objects: usize::MAX,
            max_hom_size: usize::MAX,
            max_steps: u64::MAX,
        }
    }

    /// Parses `objects=N,hom=N,steps=N` (any subset, any order) or a bare step count.
    pub fn parse(spec: &str) -> Result<Self, String> {
        let mut b = Budget::default();
        let spec = spec.trim();
        if let Ok(steps) = spec.parse::<u64>() {
            b.max_steps = steps;
            return Ok(b);
        }
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| format!("expected key=value, got `{part}`"))?;
            let bad = |_| format!("`{value}` is not a non-negative integer");
            match key.trim() {
                "objects" => b.max_objects = value.trim().parse().map_err(bad)?,
                "hom" => b.max_hom_size = value.trim().parse().map_err(bad)?,
                "steps" => b.max_steps = value.trim().parse().map_err(bad)?,
                other => return Err(format!("unknown budget key `{other}`")),
            }
        }
        Ok(b)
    }

    /// The default budget, overridden by the environment when set.
    pub fn from_env() -> Result<Self, String> {
        match env::var(BUDGET_ENV) {
            Ok(s) => Self::parse(&s),
            Err(_) => Ok(Budget::default()),
        }
    }

    pub(crate) fn meter(&self) -> Meter {
        Meter {
            remaining: self.max_steps,
        }
    }
}

/// Result of a bounded search: a witness, a proof of absence, or neither.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    NotFound,
    BudgetExceeded,
}

impl<T> SearchOutcome<T> {
    pub fn found(&self) -> Option<&T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    pub fn is_exceeded(&self) -> bool {
        matches!(self, SearchOutcome::BudgetExceeded)
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> SearchOutcome<U> {
        match self {
            SearchOutcome::Found(t) => SearchOutcome::Found(f(t)),
            SearchOutcome::NotFound => SearchOutcome::NotFound,
            SearchOutcome::BudgetExceeded => SearchOutcome::BudgetExceeded,
        }
    }
}

/// Marker returned when a meter runs dry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exhausted;

/// Step counter shared by the nested loops of one search.
#[derive(Debug, Clone)]
pub(crate) struct Meter {
    remaining: u64,
}

impl Meter {
    pub(crate) fn unlimited() -> Self {
        Meter { remaining: u64::MAX }
    }

    #[inline]
    pub(crate) fn tick(&mut self) -> Result<(), Exhausted> {
        if self.remaining == 0 {
            return Err(Exhausted);
        }
        self.remaining -= 1;
        Ok(())
    }
}
