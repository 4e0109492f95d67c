#include "qic/combine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qic/bounds.hpp"

namespace qic {

namespace {

void require_uniform(const CqChannel& w, const char* op) {
    validate_channel(w);
    if (!has_uniform_prior(w)) {
        throw NonUniformPrior(std::string(op) + ": requires prior 1/2");
    }
}

}  // namespace

CqChannel boxast(const CqChannel& w1, const CqChannel& w2) {
    require_uniform(w1, "boxast");
    require_uniform(w2, "boxast");
    const ComplexMatrix a00 = tensor(w1.sigma0.mat, w2.sigma0.mat);
    const ComplexMatrix a11 = tensor(w1.sigma1.mat, w2.sigma1.mat);
    const ComplexMatrix a10 = tensor(w1.sigma1.mat, w2.sigma0.mat);
    const ComplexMatrix a01 = tensor(w1.sigma0.mat, w2.sigma1.mat);
    CqChannel out;
    out.prior = 0.5;
    out.dim = w1.dim * w2.dim;
    out.sigma0 = DensityMatrix{scale(0.5, add(a00, a11))};
    out.sigma1 = DensityMatrix{scale(0.5, add(a10, a01))};
    return out;
}

CqChannel varoast(const CqChannel& w1, const CqChannel& w2) {
    require_uniform(w1, "varoast");
    require_uniform(w2, "varoast");
    const std::size_t d = w1.dim * w2.dim;
    CqChannel out;
    out.prior = 0.5;
    out.dim = 2 * d;
    const DensityMatrix* s1[2] = {&w1.sigma0, &w1.sigma1};
    for (int x = 0; x < 2; ++x) {
        ComplexMatrix m(2 * d);
        const ComplexMatrix& b2 = (x == 0) ? w2.sigma0.mat : w2.sigma1.mat;
        for (int u1 = 0; u1 < 2; ++u1) {
            const ComplexMatrix blk = scale(0.5, tensor(s1[u1 ^ x]->mat, b2));
            const std::size_t off = static_cast<std::size_t>(u1) * d;
            for (std::size_t r = 0; r < d; ++r) {
                for (std::size_t c = 0; c < d; ++c) {
                    m(off + r, off + c) = blk(r, c);
                }
            }
        }
        (x == 0 ? out.sigma0 : out.sigma1) = DensityMatrix{std::move(m)};
    }
    return out;
}

CombinedEntropies combined_entropies(const CqChannel& w1, const CqChannel& w2) {
    require_uniform(w1, "combined_entropies");
    require_uniform(w2, "combined_entropies");

    const double h_s0 = entropy_unnormalized(w1.sigma0.mat);
    const double h_s1 = entropy_unnormalized(w1.sigma1.mat);
    const double h_t0 = entropy_unnormalized(w2.sigma0.mat);
    const double h_t1 = entropy_unnormalized(w2.sigma1.mat);

    const ComplexMatrix mix1 = scale(0.5, add(w1.sigma0.mat, w1.sigma1.mat));
    const ComplexMatrix mix2 = scale(0.5, add(w2.sigma0.mat, w2.sigma1.mat));
    const double h_mix1 = entropy_unnormalized(mix1);
    const double h_mix2 = entropy_unnormalized(mix2);

    const CqChannel minus = boxast(w1, w2);
    const double h_a0 = entropy_unnormalized(minus.sigma0.mat);
    const double h_a1 = entropy_unnormalized(minus.sigma1.mat);
    // Independent evaluation of the joint output entropy; its tensor
    // additivity is the computation actually being checked here.
    const double h_joint_mix = entropy_unnormalized(tensor(mix1, mix2));

    double h_minus = ln2 + 0.5 * (h_a0 + h_a1) - h_joint_mix;
    // The variable-node mixture blocks are the scaled check-node outputs,
    // so its entropy needs no further eigendecompositions.
    double h_plus = ln2 + 0.5 * (h_s0 + h_s1 + h_t0 + h_t1) - 0.5 * (h_a0 + h_a1);

    const double h1 = ln2 + 0.5 * (h_s0 + h_s1) - h_mix1;
    const double h2 = ln2 + 0.5 * (h_t0 + h_t1) - h_mix2;
    const double residual = std::abs(h_minus + h_plus - h1 - h2);
    if (!(residual <= tol_chain)) {
        throw ChainRuleViolation("entropy sum residual " + std::to_string(residual));
    }

    CombinedEntropies out;
    out.h_minus = std::clamp(h_minus, 0.0, ln2);
    out.h_plus = std::clamp(h_plus, 0.0, ln2);
    out.chain_residual = residual;
    return out;
}

double conditional_entropy_general(const JointCqState& joint, CombineRule rule) {
    (void)rule;  // single kernel
    if (joint.classical_dim != 4 || joint.blocks.size() != 4) {
        throw InvalidState("conditional_entropy_general: expects the four-block joint");
    }
    const std::size_t d = joint.blocks.front().second.dim();
    double total = 0.0;
    for (const auto& [p, s] : joint.blocks) {
        if (p < -tol_prior) throw InvalidState("conditional_entropy_general: negative weight");
        if (s.dim() != d) throw InvalidState("conditional_entropy_general: block dims differ");
        total += p;
    }
    if (std::abs(total - 1.0) > tol_trace) {
        throw InvalidState("conditional_entropy_general: weights do not sum to 1");
    }

    // Merge labels with equal parity x1 + x2 (labels are 2*x1 + x2).
    double q[2] = {0.0, 0.0};
    ComplexMatrix merged[2] = {ComplexMatrix(d), ComplexMatrix(d)};
    for (std::size_t k = 0; k < 4; ++k) {
        const int parity = static_cast<int>((k >> 1) ^ (k & 1));
        const double p = std::max(joint.blocks[k].first, 0.0);
        q[parity] += p;
        merged[parity] = add(merged[parity], scale(p, joint.blocks[k].second.mat));
    }

    // H(U B) - H(B) with U the parity register.
    double h_ub = 0.0;
    ComplexMatrix mix(d);
    for (int u = 0; u < 2; ++u) {
        if (q[u] > 0.0) h_ub += entropy_unnormalized(merged[u]);
        mix = add(mix, merged[u]);
    }
    const double h_b = entropy_unnormalized(mix);
    return std::clamp(h_ub - h_b, 0.0, ln2);
}

}  // namespace qic
