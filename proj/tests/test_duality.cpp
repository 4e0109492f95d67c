#include <doctest.h>

#include <cmath>
#include <vector>

#include "qic/combine.hpp"
#include "qic/duality.hpp"
#include "test_util.hpp"

using namespace qic;

namespace {

double h2(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log(p) - (1.0 - p) * std::log(1.0 - p);
}

}  // namespace

TEST_CASE("dual of the erasure channel swaps capacity and entropy") {
    for (double eps : {0.0, 0.1, 0.25, 0.5, 0.75, 1.0}) {
        const CqChannel d = dual_channel(bec_embed(eps));
        CHECK(symmetric_capacity(d) == doctest::Approx(eps * ln2).epsilon(1e-12));
        CHECK(d.dim == 6);  // twice the primal output dimension
    }
}

TEST_CASE("dual of the crossover channel is an even mixture of pure pairs") {
    // Each dual output is a uniformly flagged pair of pure states (entropy
    // exactly one bit), and the two outputs overlap with fidelity |1 - 2p|,
    // the pure-pair overlap.  Both facts survive any purification choice.
    for (double p : {0.05, 0.11, 0.3, 0.5}) {
        const CqChannel d = dual_channel(bsc_embed(p));
        CHECK(channel_entropy(d) == doctest::Approx(ln2 - h2(p)).epsilon(1e-10));
        CHECK(von_neumann_entropy(d.sigma0) == doctest::Approx(ln2).epsilon(1e-9));
        CHECK(von_neumann_entropy(d.sigma1) == doctest::Approx(ln2).epsilon(1e-9));
        CHECK(fidelity(d.sigma0, d.sigma1) ==
              doctest::Approx(std::abs(1.0 - 2.0 * p)).epsilon(1e-8));
    }
}

TEST_CASE("capacity of a channel and its dual sum to one bit") {
    for (std::uint64_t i = 0; i < 8; ++i) {
        const std::size_t d = 2 + i % 2;
        const CqChannel w = random_cq_channel(d, PriorMode::fixed_half, 1300, i);
        const CqChannel dual = dual_channel(w);
        CHECK(symmetric_capacity(w) + symmetric_capacity(dual) ==
              doctest::Approx(ln2).epsilon(1e-9));
    }
}

TEST_CASE("double dual preserves the entropy") {
    const CqChannel w = random_cq_channel(3, PriorMode::fixed_half, 1301, 0);
    const CqChannel dd = dual_channel(compress_support(dual_channel(w)));
    CHECK(channel_entropy(dd) == doctest::Approx(channel_entropy(w)).epsilon(1e-9));
}

TEST_CASE("combining residuals vanish for random pairs") {
    for (std::uint64_t i = 0; i < 6; ++i) {
        const std::size_t d = 2 + i % 2;
        const CqChannel w1 = random_cq_channel(d, PriorMode::fixed_half, 1400, 2 * i);
        const CqChannel w2 = random_cq_channel(d, PriorMode::fixed_half, 1400, 2 * i + 1);
        const DualityReport rep = check_duality_lemma(w1, w2);
        CHECK(rep.box_of_duals_residual <= 1e-9);
        CHECK(rep.var_of_duals_residual <= 1e-9);
        CHECK(rep.complement_residual <= 1e-9);
        CHECK(rep.double_dual_residual <= 1e-9);
        CHECK(rep.max() <= 1e-9);
        CHECK(std::abs(mirror_identity_check(w1, w2)) <= 1e-9);
    }
}

TEST_CASE("report max returns the largest residual") {
    DualityReport r;
    r.box_of_duals_residual = 1e-12;
    r.var_of_duals_residual = 3e-11;
    r.complement_residual = 2e-12;
    r.double_dual_residual = 5e-13;
    CHECK(r.max() == 3e-11);
}

TEST_CASE("entropies do not depend on the purification choice") {
    const std::size_t d = 3;
    const CqChannel w = random_cq_channel(d, PriorMode::fixed_half, 1500, 2);
    const CqChannel base = dual_channel(w);
    SplitStream stream(1501, 0);
    const std::vector<ComplexMatrix> purifiers = {random_unitary(d, stream),
                                                  random_unitary(d, stream)};
    const CqChannel alt = dual_channel(w, purifiers);
    CHECK(channel_entropy(alt) == doctest::Approx(channel_entropy(base)).epsilon(1e-9));
    CHECK(von_neumann_entropy(alt.sigma0) ==
          doctest::Approx(von_neumann_entropy(base.sigma0)).epsilon(1e-9));
    // The identity purifier reproduces the default construction bit for bit.
    const std::vector<ComplexMatrix> ids = {ComplexMatrix::identity(d),
                                            ComplexMatrix::identity(d)};
    const CqChannel same = dual_channel(w, ids);
    CHECK(max_abs_diff(same.sigma0.mat, base.sigma0.mat) <= 1e-14);
    CHECK(max_abs_diff(same.sigma1.mat, base.sigma1.mat) <= 1e-14);
}

TEST_CASE("purifier arguments are validated") {
    const CqChannel w = bsc_embed(0.2);
    CHECK_THROWS_AS(dual_channel(w, {ComplexMatrix::identity(2)}), InvalidState);
    CHECK_THROWS_AS(dual_channel(w, {ComplexMatrix::identity(3), ComplexMatrix::identity(3)}),
                    InvalidState);
    ComplexMatrix not_unitary(2);
    not_unitary(0, 0) = 2.0;
    not_unitary(1, 1) = 1.0;
    CHECK_THROWS_AS(dual_channel(w, {not_unitary, ComplexMatrix::identity(2)}), InvalidState);
}

TEST_CASE("support compression shrinks padded channels without changing entropy") {
    // Both outputs live on a 2-dim subspace of a 4-dim space.
    qic::ComplexMatrix m0(4), m1(4);
    m0(0, 0) = 0.8;
    m0(1, 1) = 0.2;
    m1(0, 0) = 0.3;
    m1(1, 1) = 0.7;
    const CqChannel padded = make_channel(0.5, density_matrix(m0), density_matrix(m1));
    const CqChannel packed = compress_support(padded);
    CHECK(packed.dim == 2);
    CHECK(channel_entropy(packed) == doctest::Approx(channel_entropy(padded)).epsilon(1e-10));
    // Full-rank input keeps its dimension.
    CHECK(compress_support(bsc_embed(0.2)).dim == 2);
}

TEST_CASE("dualization requires a uniform prior") {
    CqChannel skew = bsc_embed(0.2);
    skew.prior = 0.4;
    CHECK_THROWS_AS(dual_channel(skew), NonUniformPrior);
}

TEST_CASE("dual capacities of synthesized pairs swap roles") {
    // Dualizing exchanges the check-node and variable-node transforms, so the
    // dual pair's combined entropies mirror the primal ones.
    const CqChannel w1 = bec_embed(0.35);
    const CqChannel w2 = bec_embed(0.6);
    const CqChannel d1 = compress_support(dual_channel(w1));
    const CqChannel d2 = compress_support(dual_channel(w2));
    const double primal_var = channel_entropy(varoast(w1, w2));
    const double dual_box = channel_entropy(boxast(d1, d2));
    CHECK(primal_var == doctest::Approx(ln2 - dual_box).epsilon(1e-9));
}
