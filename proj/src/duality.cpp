#include "qic/duality.hpp"

#include <algorithm>
#include <cmath>

#include "qic/combine.hpp"

namespace qic {

namespace {

void require_uniform(const CqChannel& w, const char* op) {
    validate_channel(w);
    if (!has_uniform_prior(w)) {
        throw NonUniformPrior(std::string(op) + ": requires prior 1/2");
    }
}

void require_unitary(const ComplexMatrix& u, std::size_t d) {
    if (u.dim != d) throw InvalidState("dual_channel: purifier dimension mismatch");
    const ComplexMatrix gram = matmul(adjoint(u), u);
    if (max_abs_diff(gram, ComplexMatrix::identity(d)) > 1e-8) {
        throw InvalidState("dual_channel: purifier not unitary");
    }
}

}  // namespace

CqChannel dual_channel(const CqChannel& w) { return dual_channel(w, {}); }

CqChannel dual_channel(const CqChannel& w, const std::vector<ComplexMatrix>& purifiers) {
    require_uniform(w, "dual_channel");
    if (!purifiers.empty() && purifiers.size() != 2) {
        throw InvalidState("dual_channel: need one purifier per input");
    }
    const std::size_t d = w.dim;

    const ComplexMatrix roots[2] = {matrix_sqrt(w.sigma0), matrix_sqrt(w.sigma1)};
    // With |phi_z> = (sqrt(sigma_z) tensor U_z)|Omega>, tracing out the original
    // output register leaves cross[z][z'] = U_z (sqrt(sigma_z') sqrt(sigma_z))^T U_z'^dag
    // on the purifying register (U_z = identity by default). Because the unitaries
    // enter as a single controlled unitary on the kept register, every choice of
    // purifiers yields the same spectra and entropies.
    ComplexMatrix cross[2][2];
    for (int z = 0; z < 2; ++z) {
        for (int zp = 0; zp < 2; ++zp) {
            const ComplexMatrix base = transpose(matmul(roots[zp], roots[z]));
            if (purifiers.empty()) {
                cross[z][zp] = base;
            } else {
                require_unitary(purifiers[z], d);
                require_unitary(purifiers[zp], d);
                cross[z][zp] = matmul(purifiers[z], matmul(base, adjoint(purifiers[zp])));
            }
        }
    }

    // Dual output for input x, on the conjugate register Z tensor the purifying
    // register: 1/2 sum_{z,z'} (-1)^{x (z xor z')} |z><z'| tensor cross[z][z'].
    CqChannel out;
    out.prior = 0.5;
    out.dim = 2 * d;
    for (int x = 0; x < 2; ++x) {
        ComplexMatrix m(2 * d);
        for (int z = 0; z < 2; ++z) {
            for (int zp = 0; zp < 2; ++zp) {
                const double sign = (x == 1 && ((z ^ zp) == 1)) ? -0.5 : 0.5;
                for (std::size_t r = 0; r < d; ++r) {
                    for (std::size_t c = 0; c < d; ++c) {
                        m(z * d + r, zp * d + c) = sign * cross[z][zp](r, c);
                    }
                }
            }
        }
        (x == 0 ? out.sigma0 : out.sigma1) = DensityMatrix{hermitize(m)};
    }
    validate_channel(out);
    return out;
}

CqChannel compress_support(const CqChannel& w) {
    validate_channel(w);
    const std::size_t d = w.dim;
    const ComplexMatrix mix = scale(0.5, add(w.sigma0.mat, w.sigma1.mat));
    const Spectrum s = eig_hermitian(mix);

    std::vector<std::size_t> kept;
    for (std::size_t k = 0; k < d; ++k) {
        if (s.eigenvalues[k] > tol_supp) kept.push_back(k);
    }
    const std::size_t r = kept.size();
    if (r == 0) throw InvalidState("compress_support: mixture has empty support");
    if (r == d) return w;

    // Isometry rows are the kept eigenvectors; conjugation keeps spectra.
    auto project = [&](const ComplexMatrix& m) {
        ComplexMatrix out(r);
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < r; ++j) {
                cplx acc = 0.0;
                for (std::size_t p = 0; p < d; ++p) {
                    for (std::size_t q = 0; q < d; ++q) {
                        acc += std::conj(s.eigenvectors(p, kept[i])) * m(p, q) *
                               s.eigenvectors(q, kept[j]);
                    }
                }
                out(i, j) = acc;
            }
        }
        return hermitize(out);
    };

    CqChannel out;
    out.prior = w.prior;
    out.dim = r;
    out.sigma0 = DensityMatrix{project(w.sigma0.mat)};
    out.sigma1 = DensityMatrix{project(w.sigma1.mat)};
    validate_channel(out);
    return out;
}

double DualityReport::max() const {
    return std::max(std::max(box_of_duals_residual, var_of_duals_residual),
                    std::max(complement_residual, double_dual_residual));
}

DualityReport check_duality_lemma(const CqChannel& w1, const CqChannel& w2) {
    require_uniform(w1, "check_duality_lemma");
    require_uniform(w2, "check_duality_lemma");

    const CqChannel d1 = dual_channel(w1);
    const CqChannel d2 = dual_channel(w2);

    const double h_box_duals = channel_entropy(boxast(d1, d2));
    const double h_var_duals = channel_entropy(varoast(d1, d2));
    const double h_dual_of_var = channel_entropy(dual_channel(varoast(w1, w2)));
    const double h_dual_of_box = channel_entropy(dual_channel(boxast(w1, w2)));
    const double h_var = channel_entropy(varoast(w1, w2));
    const double h_double_dual = channel_entropy(dual_channel(compress_support(d1)));

    DualityReport rep;
    rep.box_of_duals_residual = std::abs(h_box_duals - h_dual_of_var);
    rep.var_of_duals_residual = std::abs(h_var_duals - h_dual_of_box);
    rep.complement_residual = std::abs(h_var - (ln2 - h_box_duals));
    rep.double_dual_residual = std::abs(h_double_dual - channel_entropy(w1));
    return rep;
}

double mirror_identity_check(const CqChannel& w1, const CqChannel& w2) {
    require_uniform(w1, "mirror_identity_check");
    require_uniform(w2, "mirror_identity_check");
    const double h_minus = combined_entropies(w1, w2).h_minus;
    const double h1 = channel_entropy(w1);
    const double h2 = channel_entropy(w2);
    const double h_box_duals =
        channel_entropy(boxast(dual_channel(w1), dual_channel(w2)));
    return std::abs(h_minus - (h1 + h2 - ln2 + h_box_duals));
}

}  // namespace qic
