#include "qic/channels.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "qic/bounds.hpp"

namespace qic {

namespace {

// Spectrum-based entropy with channel-flavored error reporting.
double state_entropy_checked(const ComplexMatrix& m) {
    Spectrum s;
    try {
        s = eig_hermitian(m);
    } catch (const NotHermitian&) {
        throw InvalidChannel("channel state not Hermitian");
    }
    double total = 0.0, h = 0.0;
    for (double v : s.eigenvalues) {
        if (v < -tol_psd) throw InvalidChannel("channel state not PSD");
        total += v;
        if (v > 0.0) h -= v * std::log(v);
    }
    if (std::abs(total - 1.0) > tol_trace) throw InvalidChannel("channel state trace off 1");
    return std::max(h, 0.0);
}

}  // namespace

CqChannel make_channel(double prior, DensityMatrix s0, DensityMatrix s1) {
    CqChannel w;
    w.prior = prior;
    w.dim = s0.dim();
    w.sigma0 = std::move(s0);
    w.sigma1 = std::move(s1);
    validate_channel(w);
    return w;
}

void validate_channel(const CqChannel& w) {
    if (w.prior < -tol_prior || w.prior > 1.0 + tol_prior) {
        throw InvalidChannel("prior outside [0,1]");
    }
    if (w.dim == 0 || w.sigma0.dim() != w.dim || w.sigma1.dim() != w.dim) {
        throw InvalidChannel("output dimensions inconsistent");
    }
    if (!is_hermitian(w.sigma0.mat, tol_herm) || !is_hermitian(w.sigma1.mat, tol_herm)) {
        throw InvalidChannel("output state not Hermitian");
    }
    if (std::abs(trace(w.sigma0.mat) - cplx(1.0, 0.0)) > tol_trace ||
        std::abs(trace(w.sigma1.mat) - cplx(1.0, 0.0)) > tol_trace) {
        throw InvalidChannel("output state trace off 1");
    }
}

bool has_uniform_prior(const CqChannel& w) {
    return std::abs(w.prior - 0.5) <= tol_prior;
}

double channel_entropy(const CqChannel& w) {
    validate_channel(w);
    const double p = std::clamp(w.prior, 0.0, 1.0);
    const double h0 = state_entropy_checked(w.sigma0.mat);
    const double h1 = state_entropy_checked(w.sigma1.mat);
    const ComplexMatrix mix =
        add(scale(p, w.sigma0.mat), scale(1.0 - p, w.sigma1.mat));
    const double hmix = state_entropy_checked(mix);
    const double h = binary_entropy(p) + p * h0 + (1.0 - p) * h1 - hmix;
    return std::clamp(h, 0.0, ln2);
}

double symmetric_capacity(const CqChannel& w) {
    return ln2 - channel_entropy(w);
}

CqChannel bsc_embed(double p) {
    if (p < -tol_prior || p > 1.0 + tol_prior) throw OutOfRange("bsc_embed: p outside [0,1]");
    p = std::clamp(p, 0.0, 1.0);
    ComplexMatrix s0(2), s1(2);
    s0(0, 0) = p;
    s0(1, 1) = 1.0 - p;
    s1(0, 0) = 1.0 - p;
    s1(1, 1) = p;
    return make_channel(0.5, DensityMatrix{s0}, DensityMatrix{s1});
}

CqChannel bec_embed(double eps) {
    if (eps < -tol_prior || eps > 1.0 + tol_prior) {
        throw OutOfRange("bec_embed: erasure probability outside [0,1]");
    }
    eps = std::clamp(eps, 0.0, 1.0);
    ComplexMatrix s0(3), s1(3);
    s0(0, 0) = 1.0 - eps;
    s0(2, 2) = eps;
    s1(1, 1) = 1.0 - eps;
    s1(2, 2) = eps;
    return make_channel(0.5, DensityMatrix{s0}, DensityMatrix{s1});
}

CqChannel pure_channel(double alpha) {
    constexpr double half_pi = 1.57079632679489661923;
    if (alpha < -tol_prior || alpha > half_pi + tol_prior) {
        throw OutOfRange("pure_channel: angle outside [0, pi/2]");
    }
    alpha = std::clamp(alpha, 0.0, half_pi);
    const double c = std::cos(alpha), s = std::sin(alpha);
    ComplexMatrix s0(2), s1(2);
    s0(0, 0) = 1.0;
    s1(0, 0) = c * c;
    s1(0, 1) = c * s;
    s1(1, 0) = c * s;
    s1(1, 1) = s * s;
    return make_channel(0.5, DensityMatrix{s0}, DensityMatrix{s1});
}

DensityMatrix random_density(std::size_t d, SplitStream& stream) {
    ComplexMatrix g(d);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            const double re = stream.gaussian();
            const double im = stream.gaussian();
            g(r, c) = cplx(re, im);
        }
    }
    ComplexMatrix m = matmul(g, adjoint(g));
    const double tr = trace(m).real();
    m = scale(1.0 / tr, m);
    return DensityMatrix{hermitize(m)};
}

ComplexMatrix random_unitary(std::size_t d, SplitStream& stream) {
    ComplexMatrix h(d);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            h(r, c) = cplx(stream.gaussian(), stream.gaussian());
        }
    }
    return eig_hermitian(hermitize(h)).eigenvectors;
}

CqChannel random_cq_channel(std::size_t d, PriorMode mode, std::uint64_t seed,
                            std::uint64_t sample_index) {
    if (d < 2 || d > 64) throw OutOfRange("random_cq_channel: dimension outside [2, 64]");
    SplitStream stream(seed, sample_index);
    DensityMatrix s0 = random_density(d, stream);
    DensityMatrix s1 = random_density(d, stream);
    const double prior = (mode == PriorMode::fixed_half) ? 0.5 : stream.uniform();
    return make_channel(prior, std::move(s0), std::move(s1));
}

JointCqState joint_state(const CqChannel& w1, const CqChannel& w2) {
    validate_channel(w1);
    validate_channel(w2);
    const double p1 = std::clamp(w1.prior, 0.0, 1.0);
    const double p2 = std::clamp(w2.prior, 0.0, 1.0);
    JointCqState joint;
    joint.classical_dim = 4;
    joint.blocks.reserve(4);
    const DensityMatrix* s1[2] = {&w1.sigma0, &w1.sigma1};
    const DensityMatrix* s2[2] = {&w2.sigma0, &w2.sigma1};
    const double q1[2] = {p1, 1.0 - p1};
    const double q2[2] = {p2, 1.0 - p2};
    for (int x1 = 0; x1 < 2; ++x1) {
        for (int x2 = 0; x2 < 2; ++x2) {
            joint.blocks.emplace_back(q1[x1] * q2[x2],
                                      DensityMatrix{tensor(s1[x1]->mat, s2[x2]->mat)});
        }
    }
    return joint;
}

namespace {

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < m.dim; ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t c = 0; c < m.dim; ++c) {
            row.push_back({m(r, c).real(), m(r, c).imag()});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const nlohmann::json& rows, std::size_t dim) {
    if (!rows.is_array() || rows.size() != dim) {
        throw InvalidChannel("channel_from_json: bad matrix shape");
    }
    ComplexMatrix m(dim);
    for (std::size_t r = 0; r < dim; ++r) {
        const auto& row = rows[r];
        if (!row.is_array() || row.size() != dim) {
            throw InvalidChannel("channel_from_json: bad matrix row");
        }
        for (std::size_t c = 0; c < dim; ++c) {
            const auto& pair = row[c];
            if (!pair.is_array() || pair.size() != 2) {
                throw InvalidChannel("channel_from_json: bad entry");
            }
            m(r, c) = cplx(pair[0].get<double>(), pair[1].get<double>());
        }
    }
    return m;
}

}  // namespace

std::string to_json(const CqChannel& w) {
    nlohmann::json j;
    j["prior"] = w.prior;
    j["dim"] = w.dim;
    j["sigma0"] = matrix_to_json(w.sigma0.mat);
    j["sigma1"] = matrix_to_json(w.sigma1.mat);
    return j.dump();
}

CqChannel channel_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidChannel(std::string("channel_from_json: ") + e.what());
    }
    try {
        CqChannel w;
        w.prior = j.at("prior").get<double>();
        w.dim = j.at("dim").get<std::size_t>();
        w.sigma0 = DensityMatrix{matrix_from_json(j.at("sigma0"), w.dim)};
        w.sigma1 = DensityMatrix{matrix_from_json(j.at("sigma1"), w.dim)};
        validate_channel(w);
        return w;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidChannel(std::string("channel_from_json: ") + e.what());
    }
}

}  // namespace qic
