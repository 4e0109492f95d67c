#include "qic/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qic/combine.hpp"

namespace qic {

namespace {

constexpr double nan_v = std::numeric_limits<double>::quiet_NaN();

double check_unit(double v, const char* who) {
    if (v < -tol_prior || v > 1.0 + tol_prior) {
        throw OutOfRange(std::string(who) + ": argument outside [0,1]");
    }
    return std::clamp(v, 0.0, 1.0);
}

double check_entropy(double h, const char* who) {
    if (h < -1e-9 || h > ln2 + 1e-9) {
        throw OutOfRange(std::string(who) + ": entropy outside [0, log 2]");
    }
    return std::clamp(h, 0.0, ln2);
}

double clamp_pm1(double x) { return std::clamp(x, -1.0, 1.0); }

}  // namespace

double binary_entropy(double p) {
    p = check_unit(p, "binary_entropy");
    double h = 0.0;
    if (p > 0.0) h -= p * std::log(p);
    if (p < 1.0) h -= (1.0 - p) * std::log(1.0 - p);
    return std::max(h, 0.0);
}

double binary_entropy_inverse(double h) {
    h = check_entropy(h, "binary_entropy_inverse");
    double lo = 0.0, hi = 0.5;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (binary_entropy(mid) < h) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double binary_convolution(double a, double b) {
    a = check_unit(a, "binary_convolution");
    b = check_unit(b, "binary_convolution");
    return std::clamp(a * (1.0 - b) + (1.0 - a) * b, 0.0, 1.0);
}

double gc(double h1, double h2) {
    h1 = check_entropy(h1, "gc");
    h2 = check_entropy(h2, "gc");
    return binary_entropy(
        binary_convolution(binary_entropy_inverse(h1), binary_entropy_inverse(h2)));
}

std::pair<double, double> classical_bounds(double h1, double h2) {
    h1 = check_entropy(h1, "classical_bounds");
    h2 = check_entropy(h2, "classical_bounds");
    const double lower = gc(h1, h2);
    const double upper = ln2 - (ln2 - h1) * (ln2 - h2) / ln2;
    return {lower, upper};
}

std::pair<double, double> classical_plus_bounds(double h1, double h2) {
    h1 = check_entropy(h1, "classical_plus_bounds");
    h2 = check_entropy(h2, "classical_plus_bounds");
    // H+ = H1 + H2 - H-, so the check-node bounds swap roles.
    return {h1 * h2 / ln2, h1 + h2 - gc(h1, h2)};
}

namespace {

void check_ensemble(const std::vector<double>& probs,
                    const std::vector<DensityMatrix>& states) {
    if (probs.empty() || probs.size() != states.size()) {
        throw InvalidEnsemble("ensemble sizes inconsistent");
    }
    double total = 0.0;
    for (double p : probs) {
        if (p < -tol_prior) throw InvalidEnsemble("negative probability");
        total += p;
    }
    if (std::abs(total - 1.0) > tol_trace) throw InvalidEnsemble("probabilities do not sum to 1");
    const std::size_t d = states.front().dim();
    for (const DensityMatrix& s : states) {
        if (s.dim() != d) throw InvalidEnsemble("state dimensions differ");
    }
}

double mixing_entropy(const std::vector<double>& probs) {
    double h = 0.0;
    for (double p : probs) {
        if (p > 0.0) h -= p * std::log(p);
    }
    return std::max(h, 0.0);
}

}  // namespace

double concavity_gap_exact(const std::vector<double>& probs,
                           const std::vector<DensityMatrix>& states) {
    check_ensemble(probs, states);
    const std::size_t n = probs.size();
    const std::size_t d = states.front().dim();

    ComplexMatrix mix(d);
    double mean_h = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mix = add(mix, scale(probs[i], states[i].mat));
        mean_h += probs[i] * von_neumann_entropy(states[i]);
    }
    const double direct = von_neumann_entropy(density_matrix(mix)) - mean_h;

    // Second form: H({p}) - D(psi || pinched psi), where psi couples the
    // labels through sqrt(rho_i) sqrt(rho_j) cross blocks.
    std::vector<ComplexMatrix> roots;
    roots.reserve(n);
    for (const DensityMatrix& s : states) roots.push_back(matrix_sqrt(s));

    ComplexMatrix psi(n * d), pinched(n * d);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double w = std::sqrt(std::max(probs[i], 0.0) * std::max(probs[j], 0.0));
            const ComplexMatrix cross = matmul(roots[i], roots[j]);
            for (std::size_t r = 0; r < d; ++r) {
                for (std::size_t c = 0; c < d; ++c) {
                    psi(i * d + r, j * d + c) = w * cross(r, c);
                }
            }
        }
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c = 0; c < d; ++c) {
                pinched(i * d + r, i * d + c) = probs[i] * states[i].mat(r, c);
            }
        }
    }
    const double dvg = relative_entropy(density_matrix(hermitize(psi)),
                                        density_matrix(hermitize(pinched)));
    const double via_divergence = mixing_entropy(probs) - dvg;

    if (!(std::abs(direct - via_divergence) <= 1e-8)) {
        throw EqualityFormMismatch("concavity gap forms disagree by " +
                                   std::to_string(direct - via_divergence));
    }
    return direct;
}

namespace {

double concavity_lower_common(const std::vector<double>& probs,
                              const std::vector<DensityMatrix>& states,
                              bool use_fidelity) {
    check_ensemble(probs, states);
    const std::size_t n = probs.size();
    std::vector<ComplexMatrix> roots;
    if (!use_fidelity) {
        roots.reserve(n);
        for (const DensityMatrix& s : states) roots.push_back(matrix_sqrt(s));
    }
    double overlap = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double w = std::sqrt(std::max(probs[i], 0.0) * std::max(probs[j], 0.0));
            if (w == 0.0) continue;
            const double pair_term =
                use_fidelity ? fidelity(states[i], states[j])
                             : trace(matmul(roots[i], roots[j])).real();
            overlap += w * pair_term;
        }
    }
    return mixing_entropy(probs) - std::log1p(2.0 * overlap);
}

}  // namespace

double concavity_lower_sqrt(const std::vector<double>& probs,
                            const std::vector<DensityMatrix>& states) {
    return concavity_lower_common(probs, states, false);
}

double concavity_lower_fid(const std::vector<double>& probs,
                           const std::vector<DensityMatrix>& states) {
    return concavity_lower_common(probs, states, true);
}

std::pair<double, double> fidelity_window(double h) {
    h = check_entropy(h, "fidelity_window");
    const double lo = std::clamp(std::expm1(h), 0.0, 1.0);
    const double hi = std::clamp(1.0 - 2.0 * binary_entropy_inverse(ln2 - h), 0.0, 1.0);
    return {lo, hi};
}

double fuchs_vdg_lower(double h) {
    h = check_entropy(h, "fuchs_vdg_lower");
    return std::clamp(1.0 - std::sqrt(2.0 * (ln2 - h)), 0.0, 1.0);
}

double mgl_fg(double f, double g) {
    f = check_unit(f, "mgl_fg");
    g = check_unit(g, "mgl_fg");
    const double half_angle =
        0.5 * std::acos(clamp_pm1(f * g)) - 0.5 * std::acos(clamp_pm1(g));
    // half_angle lies in [0, pi/4], so the cosine stays well above 0.
    return std::max(-2.0 * std::log(std::cos(half_angle)), 0.0);
}

double qmgl_lower_asym(double h1, double h2) {
    h1 = check_entropy(h1, "qmgl_lower_asym");
    h2 = check_entropy(h2, "qmgl_lower_asym");

    const auto f_upper = [](double h) {
        return std::clamp(1.0 - 2.0 * binary_entropy_inverse(ln2 - h), 0.0, 1.0);
    };
    const auto g_exp = [](double h) { return std::clamp(std::expm1(h), 0.0, 1.0); };
    const auto g_mirror = [](double h) {
        return std::clamp(2.0 * std::exp(-h) - 1.0, 0.0, 1.0);
    };

    const double e1 = h1 + mgl_fg(f_upper(h1), g_exp(h2));
    const double e2 = h2 + mgl_fg(f_upper(h2), g_exp(h1));
    const double e3 = h2 + mgl_fg(f_upper(ln2 - h1), g_mirror(h2));
    const double e4 = h1 + mgl_fg(f_upper(ln2 - h2), g_mirror(h1));

    double best = std::max(h1, h2);  // NaN-safe floor
    for (double e : {e1, e2, e3, e4}) {
        if (!std::isnan(e)) best = std::max(best, e);
    }
    return best;
}

double qmgl_lower_iid(double h) {
    h = check_entropy(h, "qmgl_lower_iid");
    const double arg = (h <= 0.5 * ln2) ? h : ln2 - h;
    const double x = std::clamp(1.0 - 2.0 * binary_entropy_inverse(arg), 0.0, 1.0);
    return h + mgl_fg(x, x);
}

double qmgl_lower_iid_convenient(double h) {
    h = check_entropy(h, "qmgl_lower_iid_convenient");
    const double m = std::min(h, ln2 - h);
    if (m <= 0.0) return h;
    // Natural-log form; the 0.083 constant is meaningless in other bases.
    return h + 0.083 * m / (1.0 - std::log(m));
}

double conjectured_lower(double h1, double h2) {
    h1 = check_entropy(h1, "conjectured_lower");
    h2 = check_entropy(h2, "conjectured_lower");
    if (h1 + h2 <= ln2) return gc(h1, h2);
    return h1 + h2 - ln2 + gc(ln2 - h1, ln2 - h2);
}

double conjectured_upper(double h1, double h2) {
    h1 = check_entropy(h1, "conjectured_upper");
    h2 = check_entropy(h2, "conjectured_upper");
    return ln2 - (ln2 - h1) * (ln2 - h2) / ln2;
}

BoundReport bound_report(const CqChannel& w1, const CqChannel& w2) {
    BoundReport r;
    r.uniform_priors = has_uniform_prior(w1) && has_uniform_prior(w2);
    r.h1 = channel_entropy(w1);
    r.h2 = channel_entropy(w2);

    if (r.uniform_priors) {
        const CombinedEntropies ce = combined_entropies(w1, w2);
        r.exact = ce.h_minus;
        r.chain_residual = ce.chain_residual;
        r.iid_applicable = w1.dim == w2.dim &&
                           max_abs_diff(w1.sigma0.mat, w2.sigma0.mat) <= 1e-14 &&
                           max_abs_diff(w1.sigma1.mat, w2.sigma1.mat) <= 1e-14;
    } else {
        r.exact = conditional_entropy_general(joint_state(w1, w2));
        r.chain_residual = nan_v;
        r.iid_applicable = false;
    }

    const auto cl = classical_bounds(r.h1, r.h2);
    r.cl_lo = cl.first;
    r.cl_hi = cl.second;
    r.conj_lo = conjectured_lower(r.h1, r.h2);
    r.conj_hi = conjectured_upper(r.h1, r.h2);
    r.thm3 = r.uniform_priors ? qmgl_lower_asym(r.h1, r.h2) : nan_v;
    r.thm4 = r.iid_applicable ? qmgl_lower_iid(r.h1) : nan_v;
    r.thm4_conv = r.iid_applicable ? qmgl_lower_iid_convenient(r.h1) : nan_v;

    r.slack_cl_lo = r.exact - r.cl_lo;
    r.slack_cl_hi = r.cl_hi - r.exact;
    r.slack_thm3 = r.exact - r.thm3;
    r.slack_thm4 = r.exact - r.thm4;
    r.slack_thm4_conv = r.exact - r.thm4_conv;
    r.slack_conj_lo = r.exact - r.conj_lo;
    r.slack_conj_hi = r.conj_hi - r.exact;

    const double fault_tol = 1e-8;
    bool proven = false;
    if (r.uniform_priors) {
        proven |= r.slack_thm3 < -fault_tol;
        if (r.iid_applicable) {
            proven |= r.slack_thm4 < -fault_tol;
            proven |= r.slack_thm4_conv < -fault_tol;
        }
        proven |= r.exact < std::max(r.h1, r.h2) - fault_tol;
        proven |= r.exact > ln2 + fault_tol;
    }
    r.proven_violation = proven;
    r.conjecture_violation = (r.slack_conj_lo < -1e-7) || (r.slack_conj_hi < -1e-7);
    r.classical_lower_violated = r.slack_cl_lo < -fault_tol;
    return r;
}

double kappa_estimate(double a, double b, std::size_t grid_n) {
    if (!(a > 0.0 && a < b && b < ln2)) {
        throw OutOfRange("kappa_estimate: need 0 < a < b < log 2");
    }
    if (grid_n < 2) throw OutOfRange("kappa_estimate: grid too small");
    // Capacity window [a, b] means entropy window [log2-b, log2-a].
    const double lo = ln2 - b, hi = ln2 - a;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid_n; ++i) {
        const double h1 = lo + (hi - lo) * static_cast<double>(i) / (grid_n - 1);
        for (std::size_t j = 0; j < grid_n; ++j) {
            const double h2 = lo + (hi - lo) * static_cast<double>(j) / (grid_n - 1);
            const double split = 2.0 * (qmgl_lower_asym(h1, h2) - std::max(h1, h2));
            best = std::min(best, split);
        }
    }
    return best;
}

}  // namespace qic
