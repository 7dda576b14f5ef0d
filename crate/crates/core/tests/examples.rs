//! Every example runs to completion.

mod convex_decomposition {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/convex_decomposition.rs"));
}

mod custom_algorithm {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/custom_algorithm.rs"));
}

mod exact_expectation {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/exact_expectation.rs"));
}

mod experiment_reports {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/experiment_reports.rs"));
}

mod general_matroid {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/general_matroid.rs"));
}

mod instance_files {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/instance_files.rs"));
}

mod log_rank {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/log_rank.rs"));
}

mod matroid_oracles {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/matroid_oracles.rs"));
}

mod partition_cover {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/partition_cover.rs"));
}

mod principal_sequence {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/principal_sequence.rs"));
}

mod single_trial {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/single_trial.rs"));
}

mod threshold_simulation {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/threshold_simulation.rs"));
}

mod verify_suites {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/verify_suites.rs"));
}

mod zero_information {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/zero_information.rs"));
}

#[test]
fn convex_decomposition_runs() {
    convex_decomposition::run().expect("example runs");
}

#[test]
fn custom_algorithm_runs() {
    custom_algorithm::run().expect("example runs");
}

#[test]
fn exact_expectation_runs() {
    exact_expectation::run().expect("example runs");
}

#[test]
fn experiment_reports_runs() {
    experiment_reports::run().expect("example runs");
}

#[test]
fn general_matroid_runs() {
    general_matroid::run().expect("example runs");
}

#[test]
fn instance_files_runs() {
    instance_files::run().expect("example runs");
}

#[test]
fn log_rank_runs() {
    log_rank::run().expect("example runs");
}

#[test]
fn matroid_oracles_runs() {
    matroid_oracles::run().expect("example runs");
}

#[test]
fn partition_cover_runs() {
    partition_cover::run().expect("example runs");
}

#[test]
fn principal_sequence_runs() {
    principal_sequence::run().expect("example runs");
}

#[test]
fn single_trial_runs() {
    single_trial::run().expect("example runs");
}

#[test]
fn threshold_simulation_runs() {
    threshold_simulation::run().expect("example runs");
}

#[test]
fn verify_suites_runs() {
    verify_suites::run().expect("example runs");
}

#[test]
fn zero_information_runs() {
    zero_information::run().expect("example runs");
}
