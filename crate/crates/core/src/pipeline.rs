//! End-to-end complementation with configurable rank-bound sources.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::automaton::{AutomatonError, Ba};
use crate::complement::{complement_bounded, Complement, ComplementError};
use crate::elevator::{assign_ranks, deelevate, semideterminize, Rules};
use crate::propagation::{
    inner_analysis, outer_analysis, ranking_start, ranking_trub, scalar_start, Skeleton, WorklistOrder,
};
use crate::ranking::{lift_scalar, Trub};
use crate::scc::{is_elevator, prepare, trim};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PipelineError {
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error(transparent)]
    Complement(#[from] ComplementError),
    #[error("invalid configuration: {0}")]
    Config(String),
}

/// Where the initial rank bound comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrubSource {
    /// `2|S \ F| - 1`.
    Trivial,
    /// Component analysis for elevator automata; falls back to the general
    /// rules with a warning on other inputs.
    Elevator,
    /// Component analysis with the general rules.
    General,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Propagate {
    pub outer: bool,
    pub inner: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PipelineConfig {
    pub trub_source: TrubSource,
    pub propagate: Propagate,
    /// Deelevate elevator inputs before complementing.
    pub deelevate_first: bool,
    /// Produce a semi-deterministic automaton instead of a complement.
    pub semideterminize: bool,
    /// Trim the complement before returning it.
    pub postprocess_trim: bool,
    /// Report statistics without keeping the automaton output.
    pub stats_only: bool,
    pub order: WorklistOrder,
    /// Abort when the complement grows past this many states.
    pub state_limit: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            trub_source: TrubSource::Trivial,
            propagate: Propagate::default(),
            deelevate_first: false,
            semideterminize: false,
            postprocess_trim: false,
            stats_only: false,
            order: WorklistOrder::Fifo,
            state_limit: usize::MAX,
        }
    }
}

impl PipelineConfig {
    pub fn new(trub_source: TrubSource) -> Self {
        PipelineConfig {
            trub_source,
            ..Self::default()
        }
    }

    pub fn outer(mut self) -> Self {
        self.propagate.outer = true;
        self
    }

    pub fn inner(mut self) -> Self {
        self.propagate.inner = true;
        self
    }

    pub fn deelevated(mut self) -> Self {
        self.deelevate_first = true;
        self
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        let complementing = self.trub_source != TrubSource::Trivial
            || self.propagate != Propagate::default()
            || self.deelevate_first
            || self.postprocess_trim;
        if self.semideterminize && complementing {
            return Err(PipelineError::Config(
                "semi-determinization cannot be combined with complementation options".into(),
            ));
        }
        Ok(())
    }

    /// Short description such as `elevator+outer+inner`.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        if self.deelevate_first {
            parts.push("deelevate");
        }
        parts.push(match self.trub_source {
            TrubSource::Trivial => "trivial",
            TrubSource::Elevator => "elevator",
            TrubSource::General => "general",
        });
        if self.propagate.outer {
            parts.push("outer");
        }
        if self.propagate.inner {
            parts.push("inner");
        }
        parts.join("+")
    }
}

/// The complement and what was learned while building it.
#[derive(Clone, Debug)]
pub struct PipelineOutput {
    pub complement: Complement,
    /// The automaton that was actually complemented.
    pub prepared: Ba,
    pub trub: Trub,
    pub warnings: Vec<String>,
    pub elapsed: Duration,
}

/// Computes the rank bound requested by `config` for a prepared automaton.
pub fn build_trub(prepared: &Ba, config: &PipelineConfig, warnings: &mut Vec<String>) -> Result<Trub, PipelineError> {
    let rules = match config.trub_source {
        TrubSource::Trivial => None,
        TrubSource::Elevator if is_elevator(prepared) => Some(Rules::Elevator),
        TrubSource::Elevator => {
            warnings.push("input is not an elevator automaton; using the general rules".into());
            Some(Rules::General)
        }
        TrubSource::General => Some(Rules::General),
    };
    // Both bounds are sound, so their minimum is too.
    let base = match rules {
        None => Trub::Trivial,
        Some(r) => Trub::Min(Box::new(assign_ranks(prepared, r)?.to_trub()), Box::new(Trub::Trivial)),
    };
    if !config.propagate.outer && !config.propagate.inner {
        return Ok(base);
    }
    let sk = Skeleton::build(prepared);
    let mut start = ranking_start(prepared, &sk, &base);
    if config.propagate.outer {
        let scalars = outer_analysis(&sk, scalar_start(prepared, &sk, &base), config.order).values;
        for (i, m) in scalars.into_iter().enumerate() {
            start[i] = start[i].meet(&lift_scalar(prepared, &sk.nodes[i], m));
        }
    }
    if config.propagate.inner {
        start = inner_analysis(prepared, &sk, start, config.order).values;
    }
    Ok(ranking_trub(&sk, &start))
}

/// Complements `ba` as configured.
pub fn run(ba: &Ba, config: &PipelineConfig) -> Result<PipelineOutput, PipelineError> {
    config.validate()?;
    if config.semideterminize {
        return Err(PipelineError::Config("use `semideterminize` for semi-determinization".into()));
    }
    let started = Instant::now();
    let mut warnings = Vec::new();
    let mut prepared = prepare(ba);
    if config.deelevate_first {
        // Deelevation only pays off on elevator automata, where it caps the
        // bound at 3; elsewhere it doubles the states and keeps the bound.
        if is_elevator(&prepared) {
            prepared = prepare(&deelevate(&prepared));
        } else {
            warnings.push("input is not an elevator automaton; skipping deelevation".into());
        }
    }
    let trub = build_trub(&prepared, config, &mut warnings)?;
    let mut complement = complement_bounded(&prepared, &trub, config.state_limit)?;
    if config.postprocess_trim {
        complement.ba = trim(&complement.ba);
    }
    Ok(PipelineOutput {
        complement,
        prepared,
        trub,
        warnings,
        elapsed: started.elapsed(),
    })
}

/// Semi-determinizes an elevator automaton.
pub fn run_semideterminize(ba: &Ba) -> Result<Ba, PipelineError> {
    Ok(semideterminize(ba)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::oracle::complement_check;

    #[test]
    fn configs_on_fixtures() {
        let configs = [
            PipelineConfig::new(TrubSource::Trivial),
            PipelineConfig::new(TrubSource::Elevator),
            PipelineConfig::new(TrubSource::Elevator).outer(),
            PipelineConfig::new(TrubSource::Elevator).outer().inner(),
            PipelineConfig::new(TrubSource::Elevator).deelevated(),
            PipelineConfig::new(TrubSource::Trivial).outer().inner(),
        ];
        // The chain has eight letters, so it gets shorter words.
        for (ba, stem, cycle) in [
            (fixtures::running_example(), 2, 3),
            (fixtures::mixed_example(), 2, 3),
            (fixtures::elevator_chain(), 1, 2),
            (fixtures::dataflow_example(), 2, 3),
        ] {
            for cfg in &configs {
                let out = run(&ba, cfg).unwrap();
                let cex = complement_check(&ba, &out.complement.ba, stem, cycle).unwrap();
                assert_eq!(cex, None, "{}", cfg.describe());
            }
        }
    }

    #[test]
    fn semideterminize_excludes_complement_flags() {
        let mut cfg = PipelineConfig::new(TrubSource::Elevator);
        cfg.semideterminize = true;
        assert!(cfg.validate().is_err());
    }
}
