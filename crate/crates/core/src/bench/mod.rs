//! Experiment drivers.

pub mod commands;
pub mod config;
pub mod experiments;
pub mod fit;
pub mod suites;

pub use experiments::{
    generate_graph, instance_seed, run_sweep, run_trial, write_rows, Family, PlanOverride, RunRow,
    SweepOutcome, SweepSpec, RUN_CSV_HEADER,
};
pub use fit::{fit_loglog, FitResult};

pub use commands::{error_exit_code, run_command, Status};
pub use config::{parse_pairs, ExperimentConfig, Mode, CONFIG_KEYS};
pub use suites::{
    classifier_suite, correctness_suite, epsilon_suite, lemma1_suite, lemma3_suite,
    primitives_suite, run_all, EpsilonSettings, Lemma1Settings, SuiteOutcome, VerifySettings,
};
