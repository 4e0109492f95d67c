#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qic/linalg.hpp"
#include "qic/rng.hpp"

namespace qic {

// Binary-input channel with quantum outputs: input x in {0,1} maps to the
// state sigma_x; `prior` is P(X = 0).
struct CqChannel {
    double prior = 0.5;
    DensityMatrix sigma0;
    DensityMatrix sigma1;
    std::size_t dim = 0;
};

// Classical register C paired with a quantum block per label; probabilities
// sum to 1 and all blocks share one quantum dimension.
struct JointCqState {
    std::size_t classical_dim = 0;
    std::vector<std::pair<double, DensityMatrix>> blocks;
};

enum class PriorMode { fixed_half, uniform };

CqChannel make_channel(double prior, DensityMatrix s0, DensityMatrix s1);
void validate_channel(const CqChannel& w);
bool has_uniform_prior(const CqChannel& w);

// H(X|B) in nats; always in [0, log 2].
double channel_entropy(const CqChannel& w);
// log 2 - H(X|B); the capacity reading assumes prior 1/2 (the value is
// returned for any prior, callers validate priors at input boundaries).
double symmetric_capacity(const CqChannel& w);

CqChannel bsc_embed(double p);
CqChannel bec_embed(double eps);
// Outputs |psi_0> = (1,0) and |psi_1> = (cos alpha, sin alpha); their
// fidelity is cos(alpha).  alpha in [0, pi/2].
CqChannel pure_channel(double alpha);

// States drawn as G G^dagger / tr(G G^dagger) with G a d x d matrix of
// independent complex Gaussian entries from the (seed, sample_index) stream.
CqChannel random_cq_channel(std::size_t d, PriorMode mode, std::uint64_t seed,
                            std::uint64_t sample_index = 0);
DensityMatrix random_density(std::size_t d, SplitStream& stream);
// Haar-ish unitary for invariance tests: eigenvectors of a random Hermitian.
ComplexMatrix random_unitary(std::size_t d, SplitStream& stream);

// Product state of two independent channels over the classical pair
// (x1, x2) with label 2*x1 + x2.
JointCqState joint_state(const CqChannel& w1, const CqChannel& w2);

// JSON object {prior, dim, sigma0, sigma1}; matrices as row-major nested
// arrays of [re, im] pairs.  Round-trip is bit-exact.
std::string to_json(const CqChannel& w);
CqChannel channel_from_json(const std::string& text);

}  // namespace qic
