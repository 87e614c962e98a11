use std::time::{Duration, Instant};

use pzeta_core::psl2::DEFAULT_MAX_Q;
use pzeta_core::{Budget, Index, Interrupt};

use crate::error::CliError;

/// Environment variable overriding the default order budget.
pub const BUDGET_ORDER_ENV: &str = "PZETA_BUDGET_ORDER";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    pub budget: Budget,
    pub format: Format,
    /// Default window for truncated products and expansions.
    pub truncate: Index,
    pub max_q: u64,
    /// Soft limit on a single lattice construction.
    pub time_limit: Option<Duration>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            budget: Budget::default(),
            format: Format::Text,
            truncate: 10_000,
            max_q: DEFAULT_MAX_Q,
            time_limit: None,
        }
    }
}

/// Values given on the command line; `None` keeps the lower-priority value.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub format: Option<Format>,
    pub budget_order: Option<usize>,
    pub budget_subgroups: Option<usize>,
    pub truncate: Option<u64>,
    pub max_q: Option<u64>,
    pub time_limit: Option<f64>,
}

fn positive<T: PartialOrd + Default + std::fmt::Display>(v: T, what: &str) -> Result<T, CliError> {
    if v > T::default() {
        Ok(v)
    } else {
        Err(CliError::Parse(format!("{what} must be positive, got {v}")))
    }
}

impl Config {
    /// Defaults, then the environment, then explicit flags.
    pub fn resolve(flags: &Overrides, env: impl Fn(&str) -> Option<String>) -> Result<Config, CliError> {
        let mut c = Config::default();
        if let Some(v) = env(BUDGET_ORDER_ENV) {
            let n = v
                .trim()
                .parse::<usize>()
                .map_err(|_| CliError::Parse(format!("{BUDGET_ORDER_ENV}={v:?} is not a number")))?;
            c.budget.max_order = positive(n, BUDGET_ORDER_ENV)?;
        }
        if let Some(f) = flags.format {
            c.format = f;
        }
        if let Some(n) = flags.budget_order {
            c.budget.max_order = positive(n, "--budget-order")?;
        }
        if let Some(n) = flags.budget_subgroups {
            c.budget.max_subgroups = positive(n, "--budget-subgroups")?;
        }
        if let Some(n) = flags.truncate {
            c.truncate = positive(n, "--truncate")? as Index;
        }
        if let Some(q) = flags.max_q {
            c.max_q = positive(q, "--max-q")?;
        }
        if let Some(t) = flags.time_limit {
            if !(t.is_finite() && t > 0.0) {
                return Err(CliError::Parse(format!("--time-limit must be positive, got {t}")));
            }
            c.time_limit = Some(Duration::from_secs_f64(t));
        }
        Ok(c)
    }

    /// A fresh deadline for one lattice construction.
    pub fn deadline(&self) -> Deadline {
        Deadline(self.time_limit.map(|t| Instant::now() + t))
    }
}

/// Stops lattice construction once a point in time has passed.
pub struct Deadline(Option<Instant>);

impl Interrupt for Deadline {
    fn should_stop(&self) -> bool {
        self.0.is_some_and(|t| Instant::now() >= t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let none = |_: &str| None;
        assert_eq!(Config::resolve(&Overrides::default(), none).unwrap(), Config::default());
        let env = |k: &str| (k == BUDGET_ORDER_ENV).then(|| "500".to_string());
        let c = Config::resolve(&Overrides::default(), env).unwrap();
        assert_eq!(c.budget.max_order, 500);
        let flags = Overrides {
            budget_order: Some(70),
            ..Overrides::default()
        };
        assert_eq!(Config::resolve(&flags, env).unwrap().budget.max_order, 70);
    }

    #[test]
    fn rejects_nonpositive() {
        let none = |_: &str| None;
        let zero = Overrides {
            truncate: Some(0),
            ..Overrides::default()
        };
        assert!(Config::resolve(&zero, none).is_err());
        assert!(Config::resolve(&Overrides::default(), |_: &str| Some("0".into())).is_err());
        assert!(Config::resolve(&Overrides::default(), |_: &str| Some("many".into())).is_err());
    }
}
