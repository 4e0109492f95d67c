#pragma once

#include "qic/channels.hpp"

namespace qic {

// Check-node combination: the synthesized channel seen by u1 = x1 + x2
// when the pair is consumed jointly.  Output dimension d1*d2.
CqChannel boxast(const CqChannel& w1, const CqChannel& w2);

// Variable-node combination: the channel seen by x2 once u1 is public;
// the revealed u1 lives in an extra classical register, so the output is
// block-diagonal with dimension 2*d1*d2.
CqChannel varoast(const CqChannel& w1, const CqChannel& w2);

struct CombinedEntropies {
    double h_minus = 0.0;
    double h_plus = 0.0;
    // |h_minus + h_plus - H(W1) - H(W2)|, recomputed from independent
    // eigendecompositions; beyond tol_chain it is a numerical fault.
    double chain_residual = 0.0;
};

CombinedEntropies combined_entropies(const CqChannel& w1, const CqChannel& w2);

enum class CombineRule { cnot };

// H(X1+X2 | B1 B2) for a four-block joint state over labels 2*x1 + x2,
// valid for arbitrary priors.
double conditional_entropy_general(const JointCqState& joint,
                                   CombineRule rule = CombineRule::cnot);

}  // namespace qic
