#pragma once

#include <vector>

#include "qic/channels.hpp"

namespace qic {

// Complementary channel on a 2d-dimensional output: purify each output
// state, feed the conjugate-basis inputs through the defining isometry and
// trace out the original output register.  Entropic quantities do not
// depend on the purification; passing explicit per-input unitaries on the
// purifying register exercises exactly that freedom.
CqChannel dual_channel(const CqChannel& w);
CqChannel dual_channel(const CqChannel& w, const std::vector<ComplexMatrix>& purifiers);

// Project both outputs onto the support of their mixture, shrinking the
// dimension to the mixture rank.  Entropies are unchanged; repeated
// dualization stays affordable.
CqChannel compress_support(const CqChannel& w);

struct DualityReport {
    // |H(W1_dual boxast W2_dual) - H((W1 varoast W2)_dual)|
    double box_of_duals_residual = 0.0;
    // |H(W1_dual varoast W2_dual) - H((W1 boxast W2)_dual)|
    double var_of_duals_residual = 0.0;
    // |H(W1 varoast W2) - (log 2 - H(W1_dual boxast W2_dual))|
    double complement_residual = 0.0;
    // |H((W1_dual)_dual) - H(W1)|
    double double_dual_residual = 0.0;

    double max() const;
};

DualityReport check_duality_lemma(const CqChannel& w1, const CqChannel& w2);

// Residual of H(X1+X2|B1B2) = H1 + H2 - log 2 + H(W1_dual boxast W2_dual).
double mirror_identity_check(const CqChannel& w1, const CqChannel& w2);

}  // namespace qic
