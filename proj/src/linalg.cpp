#include "qic/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace qic {

namespace {

void require_same_dim(const ComplexMatrix& A, const ComplexMatrix& B, const char* op) {
    if (A.dim != B.dim) {
        throw DimensionMismatch(std::string(op) + ": " + std::to_string(A.dim) +
                                " vs " + std::to_string(B.dim));
    }
}

double off_diagonal_norm(const ComplexMatrix& A) {
    double s = 0.0;
    for (std::size_t r = 0; r < A.dim; ++r) {
        for (std::size_t c = 0; c < A.dim; ++c) {
            if (r != c) s += std::norm(A(r, c));
        }
    }
    return std::sqrt(s);
}

}  // namespace

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix add(const ComplexMatrix& A, const ComplexMatrix& B) {
    require_same_dim(A, B, "add");
    ComplexMatrix C(A.dim);
    for (std::size_t i = 0; i < A.a.size(); ++i) C.a[i] = A.a[i] + B.a[i];
    return C;
}

ComplexMatrix sub(const ComplexMatrix& A, const ComplexMatrix& B) {
    require_same_dim(A, B, "sub");
    ComplexMatrix C(A.dim);
    for (std::size_t i = 0; i < A.a.size(); ++i) C.a[i] = A.a[i] - B.a[i];
    return C;
}

ComplexMatrix scale(cplx s, const ComplexMatrix& A) {
    ComplexMatrix C(A.dim);
    for (std::size_t i = 0; i < A.a.size(); ++i) C.a[i] = s * A.a[i];
    return C;
}

ComplexMatrix matmul(const ComplexMatrix& A, const ComplexMatrix& B) {
    require_same_dim(A, B, "matmul");
    const std::size_t n = A.dim;
    ComplexMatrix C(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t k = 0; k < n; ++k) {
            const cplx ark = A(r, k);
            if (ark == cplx(0.0, 0.0)) continue;
            const cplx* brow = &B.a[k * n];
            cplx* crow = &C.a[r * n];
            for (std::size_t c = 0; c < n; ++c) crow[c] += ark * brow[c];
        }
    }
    return C;
}

ComplexMatrix adjoint(const ComplexMatrix& A) {
    ComplexMatrix C(A.dim);
    for (std::size_t r = 0; r < A.dim; ++r)
        for (std::size_t c = 0; c < A.dim; ++c) C(c, r) = std::conj(A(r, c));
    return C;
}

ComplexMatrix transpose(const ComplexMatrix& A) {
    ComplexMatrix C(A.dim);
    for (std::size_t r = 0; r < A.dim; ++r)
        for (std::size_t c = 0; c < A.dim; ++c) C(c, r) = A(r, c);
    return C;
}

cplx trace(const ComplexMatrix& A) {
    cplx t = 0.0;
    for (std::size_t i = 0; i < A.dim; ++i) t += A(i, i);
    return t;
}

double max_abs(const ComplexMatrix& A) {
    double m = 0.0;
    for (const cplx& v : A.a) m = std::max(m, std::abs(v));
    return m;
}

double max_abs_diff(const ComplexMatrix& A, const ComplexMatrix& B) {
    require_same_dim(A, B, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < A.a.size(); ++i) m = std::max(m, std::abs(A.a[i] - B.a[i]));
    return m;
}

double frobenius_norm(const ComplexMatrix& A) {
    double s = 0.0;
    for (const cplx& v : A.a) s += std::norm(v);
    return std::sqrt(s);
}

bool is_hermitian(const ComplexMatrix& A, double tol) {
    for (std::size_t r = 0; r < A.dim; ++r) {
        for (std::size_t c = r; c < A.dim; ++c) {
            if (std::abs(A(r, c) - std::conj(A(c, r))) > tol) return false;
        }
    }
    return true;
}

ComplexMatrix hermitize(const ComplexMatrix& A) {
    ComplexMatrix C(A.dim);
    for (std::size_t r = 0; r < A.dim; ++r)
        for (std::size_t c = 0; c < A.dim; ++c)
            C(r, c) = 0.5 * (A(r, c) + std::conj(A(c, r)));
    return C;
}

DensityMatrix density_matrix(ComplexMatrix m) {
    if (m.dim == 0) throw InvalidState("density_matrix: empty matrix");
    if (!is_hermitian(m, tol_herm)) throw InvalidState("density_matrix: not Hermitian");
    const double tr_err = std::abs(trace(m) - cplx(1.0, 0.0));
    if (tr_err > tol_trace) {
        throw InvalidState("density_matrix: trace deviates by " + std::to_string(tr_err));
    }
    return DensityMatrix{hermitize(std::move(m))};
}

Spectrum eig_hermitian(const ComplexMatrix& M) {
    if (M.dim == 0) throw NotHermitian("eig_hermitian: empty matrix");
    if (!is_hermitian(M, tol_herm)) throw NotHermitian("eig_hermitian: symmetry violated");

    const std::size_t n = M.dim;
    ComplexMatrix A = hermitize(M);
    ComplexMatrix V = ComplexMatrix::identity(n);

    const double target = 1e-13 * std::max(1.0, frobenius_norm(A));
    // Skipping all rotations below this still forces the off-norm under target.
    const double rot_eps = target / (2.0 * static_cast<double>(n));
    const int max_sweeps = 100;

    int sweep = 0;
    for (;;) {
        if (off_diagonal_norm(A) <= target) break;
        if (sweep >= max_sweeps) throw NoConvergence("eig_hermitian: sweep cap reached");
        ++sweep;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx beta = A(p, q);
                const double absb = std::abs(beta);
                if (absb <= rot_eps) continue;

                const cplx phase = beta / absb;  // e^{i phi}
                const double app = A(p, p).real();
                const double aqq = A(q, q).real();
                const double tau = (aqq - app) / (2.0 * absb);
                const double sgn = (tau >= 0.0) ? 1.0 : -1.0;
                const double t = sgn / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx pc = std::conj(phase);

                // A <- U^dagger A U with the plane rotation U on columns p,q.
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx ap = A(k, p), aq = A(k, q);
                    A(k, p) = c * ap - s * pc * aq;
                    A(k, q) = s * ap + c * pc * aq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx bp = A(p, k), bq = A(q, k);
                    A(p, k) = c * bp - s * phase * bq;
                    A(q, k) = s * bp + c * phase * bq;
                }
                A(p, q) = 0.0;
                A(q, p) = 0.0;
                A(p, p) = A(p, p).real();
                A(q, q) = A(q, q).real();

                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vp = V(k, p), vq = V(k, q);
                    V(k, p) = c * vp - s * pc * vq;
                    V(k, q) = s * vp + c * pc * vq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return A(i, i).real() < A(j, j).real();
    });

    Spectrum out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = A(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = V(r, order[k]);
    }
    return out;
}

namespace {

// Shared core: entropy of a PSD spectrum, clipping tolerated negatives.
double entropy_of_eigenvalues(const std::vector<double>& lam, const char* who) {
    double h = 0.0;
    for (double v : lam) {
        if (v < -tol_psd) {
            throw InvalidState(std::string(who) + ": eigenvalue " + std::to_string(v) +
                               " below positivity tolerance");
        }
        if (v > 0.0) h -= v * std::log(v);
    }
    return std::max(h, 0.0);
}

}  // namespace

double von_neumann_entropy(const DensityMatrix& rho) {
    Spectrum s;
    try {
        s = eig_hermitian(rho.mat);
    } catch (const NotHermitian&) {
        throw InvalidState("von_neumann_entropy: state not Hermitian");
    }
    double total = std::accumulate(s.eigenvalues.begin(), s.eigenvalues.end(), 0.0);
    if (std::abs(total - 1.0) > tol_trace) {
        throw InvalidState("von_neumann_entropy: trace deviates from 1");
    }
    return entropy_of_eigenvalues(s.eigenvalues, "von_neumann_entropy");
}

double entropy_unnormalized(const ComplexMatrix& block) {
    const Spectrum s = eig_hermitian(block);
    return entropy_of_eigenvalues(s.eigenvalues, "entropy_unnormalized");
}

ComplexMatrix matrix_sqrt(const DensityMatrix& rho) {
    Spectrum s;
    try {
        s = eig_hermitian(rho.mat);
    } catch (const NotHermitian&) {
        throw InvalidState("matrix_sqrt: state not Hermitian");
    }
    const std::size_t n = rho.dim();
    std::vector<double> root(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double v = s.eigenvalues[k];
        if (v < -tol_psd) throw InvalidState("matrix_sqrt: state not PSD");
        root[k] = std::sqrt(std::max(v, 0.0));
    }
    ComplexMatrix out(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            cplx acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                acc += s.eigenvectors(r, k) * root[k] * std::conj(s.eigenvectors(c, k));
            }
            out(r, c) = acc;
        }
    }
    return hermitize(out);
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    require_same_dim(rho.mat, sigma.mat, "fidelity");
    const ComplexMatrix a = matmul(matrix_sqrt(rho), matrix_sqrt(sigma));
    const ComplexMatrix gram = matmul(adjoint(a), a);
    const Spectrum s = eig_hermitian(gram);
    double f = 0.0;
    for (double v : s.eigenvalues) f += std::sqrt(std::max(v, 0.0));
    return std::clamp(f, 0.0, 1.0);
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
    require_same_dim(rho.mat, sigma.mat, "relative_entropy");
    const Spectrum sr = eig_hermitian(rho.mat);
    const Spectrum ss = eig_hermitian(sigma.mat);
    const std::size_t n = rho.dim();

    // overlap(i, j) = |<r_i | s_j>|^2
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double li = sr.eigenvalues[i];
        if (li <= tol_supp) continue;
        d += li * std::log(li);
        for (std::size_t j = 0; j < n; ++j) {
            cplx ip = 0.0;
            for (std::size_t r = 0; r < n; ++r) {
                ip += std::conj(sr.eigenvectors(r, i)) * ss.eigenvectors(r, j);
            }
            const double w = std::norm(ip);
            const double mj = ss.eigenvalues[j];
            if (mj <= tol_supp) {
                if (w > tol_supp) return std::numeric_limits<double>::infinity();
                continue;
            }
            d -= li * w * std::log(mj);
        }
    }
    return std::max(d, 0.0);
}

ComplexMatrix tensor(const ComplexMatrix& A, const ComplexMatrix& B) {
    const std::size_t na = A.dim, nb = B.dim;
    ComplexMatrix C(na * nb);
    for (std::size_t ra = 0; ra < na; ++ra) {
        for (std::size_t ca = 0; ca < na; ++ca) {
            const cplx v = A(ra, ca);
            if (v == cplx(0.0, 0.0)) continue;
            for (std::size_t rb = 0; rb < nb; ++rb) {
                for (std::size_t cb = 0; cb < nb; ++cb) {
                    C(ra * nb + rb, ca * nb + cb) = v * B(rb, cb);
                }
            }
        }
    }
    return C;
}

ComplexMatrix partial_trace(const ComplexMatrix& M,
                            const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& keep) {
    std::size_t prod = 1;
    for (std::size_t d : dims) prod *= d;
    if (prod != M.dim) throw DimensionMismatch("partial_trace: dims do not factor the matrix");
    for (std::size_t k : keep) {
        if (k >= dims.size()) throw DimensionMismatch("partial_trace: keep index out of range");
    }

    std::vector<bool> kept(dims.size(), false);
    for (std::size_t k : keep) kept[k] = true;
    std::vector<std::size_t> traced;
    for (std::size_t t = 0; t < dims.size(); ++t) {
        if (!kept[t]) traced.push_back(t);
    }

    // stride of subsystem t in the flattened index
    std::vector<std::size_t> stride(dims.size(), 1);
    for (std::size_t t = dims.size(); t-- > 1;) stride[t - 1] = stride[t] * dims[t];

    std::size_t keep_dim = 1;
    for (std::size_t k : keep) keep_dim *= dims[k];
    std::size_t traced_dim = 1;
    for (std::size_t t : traced) traced_dim *= dims[t];

    auto compose = [&](const std::vector<std::size_t>& subs, std::size_t flat,
                       std::size_t base) {
        // digits of `flat` over subsystems `subs` (first subsystem most significant)
        std::size_t idx = base;
        for (std::size_t t = subs.size(); t-- > 0;) {
            const std::size_t d = dims[subs[t]];
            idx += (flat % d) * stride[subs[t]];
            flat /= d;
        }
        return idx;
    };

    // keep order follows the original subsystem order
    std::vector<std::size_t> keep_sorted(keep);
    std::sort(keep_sorted.begin(), keep_sorted.end());

    ComplexMatrix out(keep_dim);  // keeping nothing gives the 1x1 total trace
    for (std::size_t kr = 0; kr < keep_dim; ++kr) {
        for (std::size_t kc = 0; kc < keep_dim; ++kc) {
            cplx acc = 0.0;
            for (std::size_t t = 0; t < traced_dim; ++t) {
                const std::size_t base = compose(traced, t, 0);
                const std::size_t fr = compose(keep_sorted, kr, base);
                const std::size_t fc = compose(keep_sorted, kc, base);
                acc += M(fr, fc);
            }
            out(kr, kc) = acc;
        }
    }
    return out;
}

}  // namespace qic
