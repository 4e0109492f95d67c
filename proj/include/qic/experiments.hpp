#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qic/channels.hpp"
#include "qic/constants.hpp"
#include "qic/polar.hpp"

namespace qic {

enum class Command { sweep, curves, duality, polarize, speed };
enum class LogBase { nat, bits };

// Channel family selector for the polarization and speed runs.
enum class ChannelKind { bec, bsc, pure, random, mixed_bec };

struct ExperimentConfig {
    Command command = Command::sweep;
    std::uint64_t seed = 1;
    std::size_t samples = 50'000;
    std::vector<std::size_t> dims = {2};
    PriorMode prior = PriorMode::fixed_half;
    std::size_t grid = 201;
    double a = 0.05 * ln2;
    double b = 0.95 * ln2;
    LogBase log_base = LogBase::nat;
    std::string out_path;  // empty -> "<command>.csv" / "<command>.json"

    // polarize / speed only
    ChannelKind kind = ChannelKind::bec;
    double param = 0.5;  // erasure / crossover probability, or pure-state angle
    int levels = 16;
};

// Throws OutOfRange when samples < 1, grid < 2, dims empty or outside
// [2, 64], or the (a, b) window is not 0 < a < b < log 2.
void validate_config(const ExperimentConfig& cfg);

struct SweepSummary {
    std::size_t samples = 0;
    std::size_t proven_violations = 0;
    std::size_t conjecture_violations = 0;
    std::size_t classical_lower_violations = 0;
    double max_chain_rule_residual = 0.0;  // nats; NaN-free (non-uniform rows skip)
};

// Per-sample CSV of both channel entropies, the exact combined entropy, every
// bound, and the violation flags; writes <out>.summary.json alongside.
SweepSummary run_conjecture_sweep(const ExperimentConfig& cfg);

// Grid CSV over H in [0, log 2]: fidelity window, its comparison curve, the
// proven lower bounds on the diagonal H1 = H2, and the conjectured curves.
void run_bound_curves(const ExperimentConfig& cfg);

struct DualitySummary {
    std::size_t samples = 0;
    double max_box_of_duals_residual = 0.0;
    double max_var_of_duals_residual = 0.0;
    double max_complement_residual = 0.0;
    double max_double_dual_residual = 0.0;
    double max_mirror_residual = 0.0;
    double max_capacity_sum_residual = 0.0;  // |I(W) + I(dual(W)) - log 2|
    double max_bec_dual_error = 0.0;         // |I(dual(BEC(e))) - e log 2|
    double max_residual() const;
};

// JSON report of residual statistics over seeded random channel pairs plus
// the erasure-channel dual spot checks.
DualitySummary run_duality_suite(const ExperimentConfig& cfg);

struct PolarizationSummary {
    std::string backend;
    std::vector<PolarizationTrace> trace;
};

// Per-level CSV (n, alpha, theta, beta, mu, nu, expected_T) plus a JSON
// manifest recording seed, backend, budget, and the (a, b) window.
PolarizationSummary run_polarization(const ExperimentConfig& cfg);

struct SpeedSummary {
    std::string backend;
    SpeedTrace trace;
};

// Per-level CSV (n, expected_T) plus a manifest carrying both decay fits.
SpeedSummary run_speed(const ExperimentConfig& cfg);

// 17-significant-digit decimal rendering used for every CSV cell; NaN prints
// as "nan" so reruns stay byte-identical.
std::string format_double(double v);

// Path helpers: "<stem>.summary.json" / "<stem>.manifest.json" where stem is
// out_path without a trailing ".csv".
std::string summary_path(const std::string& out_path);
std::string manifest_path(const std::string& out_path);

}  // namespace qic
