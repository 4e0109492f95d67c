#include <doctest.h>

#include <cmath>
#include <vector>

#include "qic/combine.hpp"
#include "test_util.hpp"

using namespace qic;
using test_util::classical_channel;

namespace {

double h2(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log(p) - (1.0 - p) * std::log(1.0 - p);
}

// Classical reference for H(X1 + X2 | Y1 Y2) computed directly from the two
// transition tables, without any matrix machinery.
double classical_check_node_entropy(double p1, const std::vector<double>& a0,
                                    const std::vector<double>& a1, double p2,
                                    const std::vector<double>& b0,
                                    const std::vector<double>& b1) {
    double h = 0.0;
    for (std::size_t y1 = 0; y1 < a0.size(); ++y1) {
        for (std::size_t y2 = 0; y2 < b0.size(); ++y2) {
            // u = x1 + x2 mod 2
            double pu0 = 0.0, pu1 = 0.0;
            for (int x1 = 0; x1 < 2; ++x1) {
                for (int x2 = 0; x2 < 2; ++x2) {
                    const double w = (x1 ? (1.0 - p1) * a1[y1] : p1 * a0[y1]) *
                                     (x2 ? (1.0 - p2) * b1[y2] : p2 * b0[y2]);
                    ((x1 ^ x2) ? pu1 : pu0) += w;
                }
            }
            const double py = pu0 + pu1;
            if (py > 0.0) h += py * h2(pu0 / py);
        }
    }
    return h;
}

}  // namespace

TEST_CASE("check-node and variable-node erasure arithmetic") {
    const double e1 = 0.3, e2 = 0.55;
    const CqChannel w1 = bec_embed(e1);
    const CqChannel w2 = bec_embed(e2);
    CHECK(channel_entropy(boxast(w1, w2)) ==
          doctest::Approx((e1 + e2 - e1 * e2) * ln2).epsilon(1e-10));
    CHECK(channel_entropy(varoast(w1, w2)) == doctest::Approx(e1 * e2 * ln2).epsilon(1e-10));
    CHECK(boxast(w1, w2).dim == 9);
    CHECK(varoast(w1, w2).dim == 18);
}

TEST_CASE("check-node crossover convolution") {
    const double p = 0.11, q = 0.2;
    const CqChannel w1 = bsc_embed(p);
    const CqChannel w2 = bsc_embed(q);
    const double conv = p * (1.0 - q) + q * (1.0 - p);
    CHECK(channel_entropy(boxast(w1, w2)) == doctest::Approx(h2(conv)).epsilon(1e-10));
    CHECK(channel_entropy(varoast(w1, w2)) ==
          doctest::Approx(h2(p) + h2(q) - h2(conv)).epsilon(1e-10));
}

TEST_CASE("combining extreme channels") {
    const CqChannel perfect = pure_channel(M_PI / 2.0);  // entropy 0
    const CqChannel useless = bsc_embed(0.5);            // entropy log 2
    CHECK(channel_entropy(boxast(perfect, perfect)) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(channel_entropy(varoast(perfect, perfect)) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(channel_entropy(boxast(useless, perfect)) == doctest::Approx(ln2).epsilon(1e-10));
    CHECK(channel_entropy(varoast(useless, perfect)) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(channel_entropy(boxast(useless, useless)) == doctest::Approx(ln2).epsilon(1e-10));
    CHECK(channel_entropy(varoast(useless, useless)) == doctest::Approx(ln2).epsilon(1e-10));
}

TEST_CASE("combined entropies match the synthesized channels and conserve the sum") {
    for (std::uint64_t i = 0; i < 12; ++i) {
        const std::size_t d = 2 + i % 2;
        const CqChannel w1 = random_cq_channel(d, PriorMode::fixed_half, 900, 2 * i);
        const CqChannel w2 = random_cq_channel(d, PriorMode::fixed_half, 900, 2 * i + 1);
        const CombinedEntropies ce = combined_entropies(w1, w2);
        CHECK(ce.h_minus == doctest::Approx(channel_entropy(boxast(w1, w2))).epsilon(1e-9));
        CHECK(ce.h_plus == doctest::Approx(channel_entropy(varoast(w1, w2))).epsilon(1e-9));
        CHECK(std::abs(ce.h_minus + ce.h_plus - channel_entropy(w1) - channel_entropy(w2)) <=
              1e-10);
        CHECK(ce.chain_residual <= 1e-10);
        // Combining never helps the check node below the better input.
        CHECK(ce.h_minus >= std::max(channel_entropy(w1), channel_entropy(w2)) - 1e-9);
        CHECK(ce.h_plus <= std::min(channel_entropy(w1), channel_entropy(w2)) + 1e-9);
    }
}

TEST_CASE("combining requires uniform priors") {
    const CqChannel w = bsc_embed(0.2);
    CqChannel skew = w;
    skew.prior = 0.3;
    CHECK_THROWS_AS(boxast(skew, w), NonUniformPrior);
    CHECK_THROWS_AS(boxast(w, skew), NonUniformPrior);
    CHECK_THROWS_AS(varoast(skew, w), NonUniformPrior);
    CHECK_THROWS_AS(combined_entropies(skew, w), NonUniformPrior);
}

TEST_CASE("general conditional entropy agrees with the uniform-prior check node") {
    const CqChannel w1 = random_cq_channel(2, PriorMode::fixed_half, 911, 0);
    const CqChannel w2 = random_cq_channel(3, PriorMode::fixed_half, 911, 1);
    const double via_joint = conditional_entropy_general(joint_state(w1, w2));
    CHECK(via_joint == doctest::Approx(channel_entropy(boxast(w1, w2))).epsilon(1e-9));
}

TEST_CASE("general conditional entropy matches a classical reference at skew priors") {
    const std::vector<double> a0 = {0.8, 0.15, 0.05};
    const std::vector<double> a1 = {0.1, 0.2, 0.7};
    const std::vector<double> b0 = {0.6, 0.4};
    const std::vector<double> b1 = {0.25, 0.75};
    const double p1 = 0.3, p2 = 0.65;
    const CqChannel w1 = classical_channel(p1, a0, a1);
    const CqChannel w2 = classical_channel(p2, b0, b1);
    const double expect = classical_check_node_entropy(p1, a0, a1, p2, b0, b1);
    CHECK(conditional_entropy_general(joint_state(w1, w2)) ==
          doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("general conditional entropy validates the joint block structure") {
    const CqChannel w1 = bsc_embed(0.2);
    const CqChannel w2 = bsc_embed(0.3);
    JointCqState joint = joint_state(w1, w2);
    joint.blocks[0].first += 0.5;  // weights no longer sum to 1
    CHECK_THROWS_AS(conditional_entropy_general(joint), InvalidState);
    JointCqState truncated = joint_state(w1, w2);
    truncated.blocks.pop_back();
    truncated.classical_dim = 3;
    CHECK_THROWS_AS(conditional_entropy_general(truncated), InvalidState);
}
