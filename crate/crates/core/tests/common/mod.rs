#![allow(dead_code)]

use tightrank_core::oracle::tabakov_vardi;
use tightrank_core::pipeline::{PipelineConfig, TrubSource};
use tightrank_core::Ba;

/// Size and densities used for suite member `seed`.
pub fn suite_params(seed: u64) -> (usize, f64, f64) {
    let n = 3 + (seed % 4) as usize;
    let td = [1.0, 1.5, 2.0][((seed / 4) % 3) as usize];
    let ad = [0.3, 0.5][((seed / 12) % 2) as usize];
    (n, td, ad)
}

pub fn suite_member(seed: u64) -> Ba {
    let (n, td, ad) = suite_params(seed);
    tabakov_vardi(n, 2, td, ad, seed).expect("suite parameters are valid")
}

/// Random two-letter automata with 3 to 6 states.
pub fn suite(count: u64) -> Vec<(u64, Ba)> {
    (0..count).map(|s| (s, suite_member(s))).collect()
}

/// The six complementation pipelines that the suite is checked against.
pub fn pipeline_configs() -> Vec<PipelineConfig> {
    vec![
        PipelineConfig::new(TrubSource::Trivial),
        PipelineConfig::new(TrubSource::Elevator),
        PipelineConfig::new(TrubSource::Elevator).outer(),
        PipelineConfig::new(TrubSource::Elevator).outer().inner(),
        PipelineConfig::new(TrubSource::Elevator).deelevated(),
        PipelineConfig::new(TrubSource::Trivial).outer().inner(),
    ]
}
