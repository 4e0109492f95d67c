#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "qic/channels.hpp"
#include "qic/linalg.hpp"

namespace qic {

// All entropies in nats.  H1/H2 arguments live in [0, log 2].

double binary_entropy(double p);
// Bisection on [0, 1/2], 60 fixed iterations; |h2(x) - h| <= 1e-12.
double binary_entropy_inverse(double h);
double binary_convolution(double a, double b);

// Optimal classical check-node lower bound h2(h2^{-1}(H1) * h2^{-1}(H2)).
double gc(double h1, double h2);

// Classical combining bounds for the check-node entropy, and the matching
// variable-node bounds obtained through the entropy-sum identity.
std::pair<double, double> classical_bounds(double h1, double h2);
std::pair<double, double> classical_plus_bounds(double h1, double h2);

// H(sum p_i rho_i) - sum p_i H(rho_i), evaluated directly and through the
// mixing-entropy-minus-relative-entropy form; both must agree to 1e-8.
double concavity_gap_exact(const std::vector<double>& probs,
                           const std::vector<DensityMatrix>& states);
double concavity_lower_sqrt(const std::vector<double>& probs,
                            const std::vector<DensityMatrix>& states);
double concavity_lower_fid(const std::vector<double>& probs,
                           const std::vector<DensityMatrix>& states);

// Fidelity range compatible with a binary-input channel entropy H:
// e^H - 1 <= F(sigma0, sigma1) <= 1 - 2 h2^{-1}(log2 - H).
std::pair<double, double> fidelity_window(double h);
// Comparison curve 1 - sqrt(2 (log2 - H)), clipped to [0, 1]; vacuous for
// H < log2 - 1/2.
double fuchs_vdg_lower(double h);

// -2 log cos( arccos(f g)/2 - arccos(g)/2 ); decreasing in f, increasing
// in g; arccos arguments clamped to [-1, 1].
double mgl_fg(double f, double g);

// Lower bound on the combined check-node entropy for two independent
// uniform-prior channels with entropies h1, h2: max of four fidelity-window
// expressions, never below max(h1, h2).
double qmgl_lower_asym(double h1, double h2);

// Same bound specialized to identical channel pairs (tighter), plus the
// closed-form relaxation H + 0.083 H/(1 - log H) mirrored about log2 / 2.
double qmgl_lower_iid(double h);
double qmgl_lower_iid_convenient(double h);

// Conjectured optimal bounds (any priors).
double conjectured_lower(double h1, double h2);
double conjectured_upper(double h1, double h2);

struct BoundReport {
    double h1 = 0.0, h2 = 0.0;
    double exact = 0.0;  // H(X1+X2 | B1 B2)
    // Bound values (nats); thm4/thm4_conv are NaN unless the pair is
    // identical, thm3/thm4 are NaN for non-uniform priors.
    double cl_lo = 0.0, cl_hi = 0.0;
    double thm3 = 0.0, thm4 = 0.0, thm4_conv = 0.0;
    double conj_lo = 0.0, conj_hi = 0.0;
    // Slacks are exact - lower (or upper - exact); NaN where not applicable.
    double slack_cl_lo = 0.0, slack_cl_hi = 0.0;
    double slack_thm3 = 0.0, slack_thm4 = 0.0, slack_thm4_conv = 0.0;
    double slack_conj_lo = 0.0, slack_conj_hi = 0.0;
    double chain_residual = 0.0;  // NaN for non-uniform priors
    bool uniform_priors = false;
    bool iid_applicable = false;
    bool proven_violation = false;       // numerical fault
    bool conjecture_violation = false;   // finding
    bool classical_lower_violated = false;  // expected quantum effect
};

BoundReport bound_report(const CqChannel& w1, const CqChannel& w2);

// min over an inclusive grid on [log2-b, log2-a]^2 of
// 2 (qmgl_lower_asym(H1,H2) - max(H1,H2)): the guaranteed capacity split
// of one polar step while the capacity stays inside [a, b].
double kappa_estimate(double a, double b, std::size_t grid_n);

}  // namespace qic
