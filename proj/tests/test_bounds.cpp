#include <doctest.h>

#include <cmath>
#include <vector>

#include "qic/bounds.hpp"
#include "test_util.hpp"

using namespace qic;
using test_util::diag_state;
using test_util::pure_state;

namespace {

double h2_ref(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log(p) - (1.0 - p) * std::log(1.0 - p);
}

}  // namespace

TEST_CASE("binary entropy and its inverse") {
    CHECK(binary_entropy(0.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(binary_entropy(1.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(binary_entropy(0.5) == doctest::Approx(ln2).epsilon(1e-15));
    CHECK(binary_entropy(0.11) == doctest::Approx(0.34651533691866615).epsilon(1e-14));
    CHECK(binary_entropy(0.25) == doctest::Approx(0.5623351446188083).epsilon(1e-14));
    CHECK_THROWS_AS(binary_entropy(-0.01), OutOfRange);
    CHECK_THROWS_AS(binary_entropy(1.01), OutOfRange);

    // Away from 1/2 the roundtrip is tight in argument space; at 1/2 the curve
    // is flat to second order, so only the entropy value itself is recoverable.
    for (double p : {0.0, 0.02, 0.11, 0.26, 0.4}) {
        CHECK(binary_entropy_inverse(binary_entropy(p)) == doctest::Approx(p).epsilon(1e-12));
    }
    CHECK(binary_entropy(binary_entropy_inverse(ln2)) == doctest::Approx(ln2).epsilon(1e-12));
    for (double h : {0.0, 0.1, 0.3, 0.5, ln2}) {
        const double p = binary_entropy_inverse(h);
        CHECK(p >= 0.0);
        CHECK(p <= 0.5);
        CHECK(binary_entropy(p) == doctest::Approx(h).epsilon(1e-12));
    }
    CHECK_THROWS_AS(binary_entropy_inverse(-0.01), OutOfRange);
    CHECK_THROWS_AS(binary_entropy_inverse(ln2 + 0.01), OutOfRange);
}

TEST_CASE("binary convolution") {
    CHECK(binary_convolution(0.1, 0.2) == doctest::Approx(0.26).epsilon(1e-15));
    CHECK(binary_convolution(0.0, 0.3) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(binary_convolution(0.5, 0.3) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(binary_convolution(1.0, 1.0) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("optimal classical check-node curve") {
    // gc(h2(p), h2(q)) = h2(p * q) by construction.
    CHECK(gc(binary_entropy(0.1), binary_entropy(0.2)) ==
          doctest::Approx(binary_entropy(0.26)).epsilon(1e-12));
    for (double h : {0.0, 0.2, 0.5, ln2}) {
        CHECK(gc(0.0, h) == doctest::Approx(h).epsilon(1e-12));
        CHECK(gc(h, 0.0) == doctest::Approx(h).epsilon(1e-12));
        CHECK(gc(ln2, h) == doctest::Approx(ln2).epsilon(1e-12));
    }
}

TEST_CASE("classical curve is convex along the stated direction") {
    // Second differences of t -> gc(t, h2) on a 200-point grid, 20 h2 values.
    const int n = 200;
    for (int j = 1; j <= 20; ++j) {
        const double hb = ln2 * j / 21.0;
        double prev = gc(0.0, hb), cur = gc(ln2 / n, hb);
        for (int i = 2; i <= n; ++i) {
            const double next = gc(ln2 * i / n, hb);
            CHECK(next - 2.0 * cur + prev >= -1e-12);
            prev = cur;
            cur = next;
        }
    }
}

TEST_CASE("classical bounds and their variable-node mirrors") {
    for (double h1 : {0.1, 0.3, 0.6}) {
        for (double h2 : {0.05, 0.4, 0.69}) {
            const auto [lo, hi] = classical_bounds(h1, h2);
            CHECK(lo == doctest::Approx(gc(h1, h2)).epsilon(1e-14));
            CHECK(hi == doctest::Approx(h1 + h2 - h1 * h2 / ln2).epsilon(1e-14));
            CHECK(lo <= hi + 1e-14);
            // Check-node and variable-node bounds exchange through the sum rule.
            const auto [plo, phi] = classical_plus_bounds(h1, h2);
            CHECK(plo == doctest::Approx(h1 + h2 - hi).epsilon(1e-14));
            CHECK(phi == doctest::Approx(h1 + h2 - lo).epsilon(1e-14));
        }
    }
}

TEST_CASE("mixing concavity gap for an orthogonal frozen ensemble") {
    const std::vector<double> probs = {0.5, 0.5};
    const std::vector<DensityMatrix> states = {diag_state({1.0, 0.0}), diag_state({0.0, 1.0})};
    CHECK(concavity_gap_exact(probs, states) == doctest::Approx(ln2).epsilon(1e-12));
    CHECK(concavity_lower_sqrt(probs, states) <= ln2 + 1e-12);
    CHECK(concavity_lower_fid(probs, states) <= concavity_lower_sqrt(probs, states) + 1e-12);
    // Identical states: no mixing gain anywhere.
    const std::vector<DensityMatrix> same = {diag_state({0.3, 0.7}), diag_state({0.3, 0.7})};
    CHECK(concavity_gap_exact(probs, same) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("concavity gap bound ordering on random ensembles") {
    SplitStream stream(641, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + trial % 3;
        const std::size_t d = 2 + trial % 2;
        std::vector<double> probs(n);
        double total = 0.0;
        for (auto& p : probs) total += (p = 0.05 + stream.uniform());
        for (auto& p : probs) p /= total;
        std::vector<DensityMatrix> states;
        for (std::size_t k = 0; k < n; ++k) states.push_back(random_density(d, stream));
        const double exact = concavity_gap_exact(probs, states);
        const double lo_sqrt = concavity_lower_sqrt(probs, states);
        const double lo_fid = concavity_lower_fid(probs, states);
        CHECK(exact >= lo_sqrt - 1e-9);
        CHECK(lo_sqrt >= lo_fid - 1e-9);
        CHECK(exact >= -1e-12);
    }
}

TEST_CASE("ensemble validation") {
    const std::vector<DensityMatrix> states = {diag_state({1.0, 0.0}), diag_state({0.0, 1.0})};
    CHECK_THROWS_AS(concavity_gap_exact({0.5}, states), InvalidEnsemble);
    CHECK_THROWS_AS(concavity_gap_exact({0.7, 0.7}, states), InvalidEnsemble);
    CHECK_THROWS_AS(concavity_gap_exact({1.5, -0.5}, states), InvalidEnsemble);
    const std::vector<DensityMatrix> mixed_dims = {diag_state({1.0, 0.0}),
                                                   diag_state({0.0, 1.0, 0.0})};
    CHECK_THROWS_AS(concavity_gap_exact({0.5, 0.5}, mixed_dims), InvalidEnsemble);
}

TEST_CASE("fidelity window endpoints and interior shape") {
    // The upper edge at h = 0 inherits the bisection's flatness floor near
    // p = 1/2 (the inverse is accurate in entropy value, not argument).
    const auto [lo0, hi0] = fidelity_window(0.0);
    CHECK(lo0 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(hi0 == doctest::Approx(0.0).epsilon(1e-7));
    const auto [lo1, hi1] = fidelity_window(ln2);
    CHECK(lo1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(hi1 == doctest::Approx(1.0).epsilon(1e-10));
    for (int i = 1; i < 20; ++i) {
        const double h = ln2 * i / 20.0;
        const auto [lo, hi] = fidelity_window(h);
        CHECK(lo == doctest::Approx(std::exp(h) - 1.0).epsilon(1e-14));
        CHECK(hi == doctest::Approx(1.0 - 2.0 * binary_entropy_inverse(ln2 - h)).epsilon(1e-12));
        CHECK(lo <= hi + 1e-12);
    }
}

TEST_CASE("comparison fidelity curve clips to the unit interval") {
    CHECK(fuchs_vdg_lower(ln2) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fuchs_vdg_lower(ln2 - 0.5) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(fuchs_vdg_lower(0.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(fuchs_vdg_lower(0.6) ==
          doctest::Approx(1.0 - std::sqrt(2.0 * (ln2 - 0.6))).epsilon(1e-12));
    // The window lower edge dominates the comparison curve everywhere.
    for (int i = 0; i <= 40; ++i) {
        const double h = ln2 * i / 40.0;
        CHECK(fidelity_window(h).first >= fuchs_vdg_lower(h) - 1e-12);
    }
}

TEST_CASE("two-fidelity entropy curve values and monotonicity") {
    CHECK(mgl_fg(0.0, 1.0) == doctest::Approx(ln2).epsilon(1e-12));
    for (double g : {0.2, 0.6, 1.0}) CHECK(mgl_fg(1.0, g) == doctest::Approx(0.0).epsilon(1e-12));
    // Decreasing in the first argument, increasing in the second.
    const int n = 200;
    for (int qi = 0; qi <= 10; ++qi) {
        const double g = qi / 10.0;
        double prev = mgl_fg(0.0, g);
        for (int i = 1; i <= n; ++i) {
            const double cur = mgl_fg(static_cast<double>(i) / n, g);
            CHECK(cur <= prev + 1e-12);
            prev = cur;
        }
    }
    for (int fi = 0; fi <= 10; ++fi) {
        const double f = fi / 10.0;
        double prev = mgl_fg(f, 0.0);
        for (int i = 1; i <= n; ++i) {
            const double cur = mgl_fg(f, static_cast<double>(i) / n);
            CHECK(cur >= prev - 1e-12);
            prev = cur;
        }
    }
}

TEST_CASE("check-node lower bound for independent channels") {
    for (double h : {0.0, 0.1, 0.3, 0.5, ln2}) {
        CHECK(qmgl_lower_asym(0.0, h) == doctest::Approx(h).epsilon(1e-11));
        CHECK(qmgl_lower_asym(h, 0.0) == doctest::Approx(h).epsilon(1e-11));
        CHECK(qmgl_lower_asym(ln2, h) == doctest::Approx(ln2).epsilon(1e-11));
        CHECK(qmgl_lower_asym(h, ln2) == doctest::Approx(ln2).epsilon(1e-11));
    }
    // Never below the trivial floor, symmetric in its arguments, above-floor inside.
    for (int i = 0; i <= 10; ++i) {
        for (int j = 0; j <= 10; ++j) {
            const double h1 = ln2 * i / 10.0, h2 = ln2 * j / 10.0;
            const double v = qmgl_lower_asym(h1, h2);
            CHECK(v >= std::max(h1, h2) - 1e-12);
            CHECK(v <= ln2 + 1e-12);
            CHECK(v == doctest::Approx(qmgl_lower_asym(h2, h1)).epsilon(1e-12));
        }
    }
    CHECK(qmgl_lower_asym(0.3, 0.35) > 0.35 + 1e-6);
}

TEST_CASE("identical-pair lower bound tightens the independent one") {
    for (int i = 0; i <= 20; ++i) {
        const double h = ln2 * i / 20.0;
        const double iid = qmgl_lower_iid(h);
        CHECK(iid >= qmgl_lower_asym(h, h) - 1e-12);
        CHECK(iid >= h - 1e-12);
        CHECK(iid <= ln2 + 1e-12);
        CHECK(qmgl_lower_iid_convenient(h) <= iid + 1e-12);
        CHECK(qmgl_lower_iid_convenient(h) >= h - 1e-12);
        // The entropy gain above the floor mirrors about the midpoint.
        const double excess = iid - h;
        const double mirrored = qmgl_lower_iid(ln2 - h) - (ln2 - h);
        CHECK(excess == doctest::Approx(mirrored).epsilon(1e-10));
    }
    CHECK(qmgl_lower_iid(0.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(qmgl_lower_iid(ln2) == doctest::Approx(ln2).epsilon(1e-12));
}

TEST_CASE("conjectured bounds: branches, continuity, and upper form") {
    // Below the midline the lower bound follows the classical curve.
    CHECK(conjectured_lower(0.2, 0.3) == doctest::Approx(gc(0.2, 0.3)).epsilon(1e-14));
    // The two branches agree across the h1 + h2 = log 2 seam.
    for (double h1 : {0.1, 0.3, 0.5}) {
        const double below = conjectured_lower(h1, ln2 - h1 - 1e-9);
        const double above = conjectured_lower(h1, ln2 - h1 + 1e-9);
        CHECK(std::abs(above - below) <= 1e-7);
    }
    // Upper bound coincides with the classical erasure-mixture form.
    for (double h1 : {0.0, 0.2, 0.5, ln2}) {
        for (double h2 : {0.0, 0.3, 0.6}) {
            CHECK(conjectured_upper(h1, h2) ==
                  doctest::Approx(classical_bounds(h1, h2).second).epsilon(1e-14));
            CHECK(conjectured_lower(h1, h2) <= conjectured_upper(h1, h2) + 1e-12);
        }
    }
}

TEST_CASE("report on a crossover pair sits exactly on the classical lower curve") {
    const BoundReport r = bound_report(bsc_embed(0.11), bsc_embed(0.05));
    CHECK(r.uniform_priors);
    CHECK_FALSE(r.iid_applicable);
    CHECK(r.slack_cl_lo == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(r.slack_conj_lo == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_FALSE(r.classical_lower_violated);
    CHECK_FALSE(r.proven_violation);
    CHECK_FALSE(r.conjecture_violation);
    CHECK(r.h1 == doctest::Approx(binary_entropy(0.11)).epsilon(1e-12));
    CHECK(r.chain_residual <= 1e-10);
}

TEST_CASE("report on an erasure pair saturates both upper bounds") {
    const BoundReport r = bound_report(bec_embed(0.3), bec_embed(0.55));
    CHECK(r.slack_cl_hi == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(r.slack_conj_hi == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_FALSE(r.conjecture_violation);
}

TEST_CASE("report on an identical pure pair saturates the conjectured lower bound") {
    const BoundReport r = bound_report(pure_channel(0.4), pure_channel(0.4));
    CHECK(r.iid_applicable);
    CHECK(r.h1 + r.h2 >= ln2);  // exercises the upper branch
    CHECK(r.slack_conj_lo == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(r.thm4 >= r.thm3 - 1e-12);
    CHECK_FALSE(std::isnan(r.thm4_conv));
}

TEST_CASE("report flags a genuine classical-lower crossing") {
    // Two nearly aligned pure-output channels dip below the classical curve.
    const BoundReport r = bound_report(pure_channel(M_PI / 3.0), pure_channel(0.3));
    CHECK(r.classical_lower_violated);
    CHECK(r.slack_cl_lo < -1e-4);
    // The proven quantum bounds still hold.
    CHECK_FALSE(r.proven_violation);
    CHECK_FALSE(r.conjecture_violation);
    CHECK(r.exact >= r.thm3 - 1e-9);
}

TEST_CASE("report marks prior-restricted bounds as unavailable off the uniform point") {
    CqChannel skew = bsc_embed(0.2);
    skew.prior = 0.3;
    const BoundReport r = bound_report(skew, bsc_embed(0.2));
    CHECK_FALSE(r.uniform_priors);
    CHECK(std::isnan(r.thm3));
    CHECK(std::isnan(r.thm4));
    CHECK(std::isnan(r.thm4_conv));
    CHECK(std::isnan(r.chain_residual));
    // Prior-free bounds still apply.
    CHECK(r.exact >= r.conj_lo - 1e-9);
    CHECK(r.exact <= r.conj_hi + 1e-9);
    CHECK_FALSE(r.conjecture_violation);
}

TEST_CASE("guaranteed one-step split estimate") {
    const double k = kappa_estimate(0.05 * ln2, 0.95 * ln2, 41);
    CHECK(k > 0.0);
    // Narrower capacity windows can only increase the guaranteed split.
    CHECK(kappa_estimate(0.2, 0.4, 51) >= kappa_estimate(0.1, 0.5, 51) - 1e-12);
    CHECK(kappa_estimate(0.3, 0.35, 21) >= kappa_estimate(0.2, 0.4, 21) - 1e-12);
    CHECK_THROWS_AS(kappa_estimate(0.0, 0.5, 11), OutOfRange);
    CHECK_THROWS_AS(kappa_estimate(0.4, 0.3, 11), OutOfRange);
    CHECK_THROWS_AS(kappa_estimate(0.1, ln2, 11), OutOfRange);
    CHECK_THROWS_AS(kappa_estimate(0.1, 0.5, 1), OutOfRange);
}
