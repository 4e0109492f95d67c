#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qic/channels.hpp"

namespace qic {

// One polar transform: the degraded check-node channel and the upgraded
// variable-node channel synthesized from two uses of w.
std::pair<CqChannel, CqChannel> polar_step(const CqChannel& w);

enum class ClassicalKind { bsc, bec };

// Full enumeration of the 2^n synthesized channels; index bit order puts
// the first transform in the most significant bit, 0 = check node.
// Capacities in nats.  Exact quantum backend, n <= n_max_exact.
std::vector<double> polarize_exact(const CqChannel& w, int n);
// Scalar recursions for the classical embeddings (erasure parameter for
// bec, crossover for bsc with exact output-alphabet merging); n <= 24.
std::vector<double> polarize_classical(ClassicalKind kind, double param, int n);

// Capacities per level 0..n (entry k holds 2^k values, same index order).
std::vector<std::vector<double>> polarize_exact_trace(const CqChannel& w, int n);
std::vector<std::vector<double>> polarize_classical_trace(ClassicalKind kind, double param,
                                                          int n);

struct PolarStats {
    double alpha = 0.0;  // fraction with I in [0, a)
    double theta = 0.0;  // fraction with I in [a, b]
    double beta = 0.0;   // fraction with I in (b, log 2]
    double mu = 0.0;     // mean capacity
    double nu = 0.0;     // mean squared capacity
};

PolarStats polarization_stats(const std::vector<double>& I_values, double a, double b);

struct PolarizationTrace {
    int level = 0;
    std::vector<double> I_values;
    double alpha = 0.0, theta = 0.0, beta = 0.0;
    double mu = 0.0, nu = 0.0;
    double expected_T = 0.0;  // mean of Hb (1 - Hb), Hb = H / log 2
};

// Stats per level from a capacity trace.
std::vector<PolarizationTrace> trace_stats(std::vector<std::vector<double>> per_level,
                                           double a, double b);

// Indexed recursion over an arbitrary channel collection: at step k with
// block size N = 2^k, entries N m + j and N m + N/2 + j combine into the
// check-node (lower index) and variable-node (upper index) channels.
// List length must be divisible by 2^n.
std::vector<double> nonstationary_polarize(const std::vector<CqChannel>& ws, int n);
std::vector<double> nonstationary_polarize_bec(const std::vector<double>& eps, int n);
std::vector<std::vector<double>> nonstationary_bec_trace(const std::vector<double>& eps,
                                                         int n);

struct SpeedFit {
    double rate = 0.0;        // decay coefficient c in log E[T] = intercept - c x
    double intercept = 0.0;
    double rms_residual = 0.0;
    bool valid = false;       // needs at least two positive E[T] levels
};

struct SpeedTrace {
    std::vector<double> expected_T;  // index = level
    SpeedFit fit_linear;             // x = n
    SpeedFit fit_sqrt;               // x = sqrt(n)
};

SpeedTrace speed_trace(const CqChannel& w, int n);
SpeedTrace speed_trace_classical(ClassicalKind kind, double param, int n);

// Seeded random +/- paths of depth n; returns one final capacity per path.
std::vector<double> sample_paths_classical(ClassicalKind kind, double param, int n,
                                           std::size_t paths, std::uint64_t seed);

}  // namespace qic
