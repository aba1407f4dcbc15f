//! The complement construction against the lasso-word oracle, plus
//! structural invariants of the macrostates it builds.

mod common;

use proptest::prelude::*;
use tightrank_core::complement::{complement, complement_bounded, tight_rankings_below, ComplementError, Macrostate};
use tightrank_core::fixtures;
use tightrank_core::oracle::{complement_check, lasso_words, member, tabakov_vardi};
use tightrank_core::pipeline::{build_trub, run, PipelineConfig, TrubSource};
use tightrank_core::ranking::{Ranking, Trub};
use tightrank_core::scc::prepare;
use tightrank_core::StateSet;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Three-letter automata exercise more nondeterminism per step than the suite.
    #[test]
    fn three_letter_complements_agree_with_oracle(seed in 0u64..10_000, n in 2usize..5) {
        let ba = tabakov_vardi(n, 3, 1.5, 0.5, seed).unwrap();
        for cfg in common::pipeline_configs() {
            let out = run(&ba, &cfg).unwrap();
            prop_assert_eq!(complement_check(&ba, &out.complement.ba, 2, 3).unwrap(), None, "{}", cfg.describe());
        }
    }

    #[test]
    fn macrostates_are_well_formed(seed in 0u64..200) {
        let ba = prepare(&common::suite_member(seed));
        let mut warnings = Vec::new();
        let cfg = PipelineConfig::new(TrubSource::Elevator).outer().inner();
        let trub = build_trub(&ba, &cfg, &mut warnings).unwrap();
        let c = complement(&ba, &trub);
        let mut tight = 0;
        for m in &c.macrostates {
            if let Macrostate::Tight(t) = m {
                tight += 1;
                prop_assert!(t.ranking.is_tight_for(&t.level));
                prop_assert!(t.ranking.respects_acceptance(&ba));
                prop_assert!(t.ranking.le(&trub.ranking(&ba, &t.level)));
                prop_assert!(t.pending.is_subset(&t.ranking.preimage(t.index, &t.level)));
                prop_assert!(t.index % 2 == 0 && t.index < t.ranking.rank());
            }
        }
        prop_assert_eq!(tight, c.stats.tight);
        prop_assert_eq!(c.macrostates.len(), c.stats.total());
        prop_assert_eq!(c.ba.num_states(), c.stats.total());
    }
}

/// Every S-tight ranking below `cap`, by exhaustive enumeration.
fn brute_tight(n: usize, level: &StateSet, cap: &Ranking, accepting: &StateSet) -> Vec<Ranking> {
    let mut all = vec![Ranking::zeros(n)];
    for q in level {
        all = all
            .into_iter()
            .flat_map(|r| {
                (0..=cap.get(q)).filter(move |v| !accepting.contains(q) || v % 2 == 0).map(move |v| {
                    let mut r = r.clone();
                    r.set(q, v);
                    r
                })
            })
            .collect();
    }
    let mut out: Vec<Ranking> = all.into_iter().filter(|r| r.is_tight_for(level)).collect();
    out.sort();
    out
}

#[test]
fn tight_enumeration_matches_brute_force() {
    for seed in 0..40u64 {
        let ba = common::suite_member(seed);
        let n = ba.num_states();
        let level: StateSet = (0..n).filter(|q| (seed >> q) & 1 == 1 || *q == 0).collect();
        let cap = Trub::Trivial.ranking(&ba, &level);
        let mut got = tight_rankings_below(&ba, &level, &cap, None);
        got.sort();
        assert_eq!(got, brute_tight(n, &level, &cap, ba.accepting_states()), "seed {seed}");
        for r in [1, 3] {
            let mut exact = tight_rankings_below(&ba, &level, &cap, Some(r));
            exact.sort();
            let want: Vec<Ranking> = got.iter().filter(|f| f.rank() == r).cloned().collect();
            assert_eq!(exact, want);
        }
    }
}

#[test]
fn complement_of_running_example() {
    let ba = fixtures::running_example();
    let c = complement(&ba, &Trub::Trivial);
    for w in lasso_words(2, 2, 3) {
        assert_ne!(member(&ba, &w), member(&c.ba, &w), "{w}");
    }
    assert_eq!(c.stats.max_rank, 1);
}

#[test]
fn state_limit_aborts() {
    let ba = common::suite_member(7);
    let full = complement(&ba, &Trub::Trivial);
    let limit = full.stats.total() - 1;
    assert_eq!(
        complement_bounded(&ba, &Trub::Trivial, limit).unwrap_err(),
        ComplementError::TooLarge(limit)
    );
    assert!(complement_bounded(&ba, &Trub::Trivial, full.stats.total()).is_ok());
}
