#include "qic/polar.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qic/bounds.hpp"
#include "qic/combine.hpp"
#include "qic/rng.hpp"

namespace qic {

namespace {

constexpr std::size_t max_alphabet = 4'000'000;
constexpr std::size_t max_diag_len = std::size_t{1} << 24;

void require_uniform(const CqChannel& w, const char* op) {
    validate_channel(w);
    if (!has_uniform_prior(w)) {
        throw NonUniformPrior(std::string(op) + ": requires prior 1/2");
    }
}

// ---- exact quantum backend ------------------------------------------------
//
// A synthesized output is a direct sum of unnormalized PSD blocks over the
// classical labels accumulated by variable-node steps.  Each block is kept
// as a lazy tensor product of factors; check-node steps and output mixtures
// are the only places a product is materialized, and the dimension budget
// applies to each materialized dense factor.  Diagonal factors (classical
// embeddings stay diagonal through every operation) bypass dense storage
// and diagonalization entirely.

struct Factor {
    std::vector<double> diag;  // non-empty -> diagonal representation
    ComplexMatrix dense;       // used when diag is empty

    bool is_diag() const { return !diag.empty(); }
    std::size_t dim() const { return is_diag() ? diag.size() : dense.dim; }
    double trace_value() const {
        if (is_diag()) {
            double t = 0.0;
            for (double v : diag) t += v;
            return t;
        }
        return trace(dense).real();
    }
    double entropy_value() const {
        if (is_diag()) {
            double h = 0.0;
            for (double v : diag) {
                if (v > 0.0) h -= v * std::log(v);
            }
            return std::max(h, 0.0);
        }
        return entropy_unnormalized(dense);
    }
};

struct Block {
    std::vector<Factor> factors;

    std::size_t dim() const {
        std::size_t d = 1;
        for (const Factor& f : factors) d *= f.dim();
        return d;
    }
    bool all_diag() const {
        for (const Factor& f : factors) {
            if (!f.is_diag()) return false;
        }
        return true;
    }
    // -sum lambda log lambda over the product spectrum:
    // sum_k H(F_k) prod_{j != k} tr(F_j).
    double entropy_value() const {
        const std::size_t n = factors.size();
        std::vector<double> tr(n), hh(n);
        for (std::size_t k = 0; k < n; ++k) {
            tr[k] = factors[k].trace_value();
            hh[k] = factors[k].entropy_value();
        }
        double h = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            double rest = 1.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j != k) rest *= tr[j];
            }
            h += hh[k] * rest;
        }
        return std::max(h, 0.0);
    }
};

Block tensor_blocks(const Block& a, const Block& b) {
    Block out;
    out.factors.reserve(a.factors.size() + b.factors.size());
    out.factors.insert(out.factors.end(), a.factors.begin(), a.factors.end());
    out.factors.insert(out.factors.end(), b.factors.begin(), b.factors.end());
    return out;
}

Block scale_block(double s, Block a) {
    Factor& f = a.factors.front();
    if (f.is_diag()) {
        for (double& v : f.diag) v *= s;
    } else {
        for (cplx& v : f.dense.a) v *= s;
    }
    return a;
}

std::vector<double> kron_diag(const Block& a) {
    std::vector<double> out = {1.0};
    for (const Factor& f : a.factors) {
        std::vector<double> next(out.size() * f.diag.size());
        std::size_t idx = 0;
        for (double x : out) {
            for (double y : f.diag) next[idx++] = x * y;
        }
        out.swap(next);
    }
    return out;
}

ComplexMatrix dense_of(const Factor& f) {
    if (!f.is_diag()) return f.dense;
    ComplexMatrix m(f.diag.size());
    for (std::size_t i = 0; i < f.diag.size(); ++i) m(i, i) = f.diag[i];
    return m;
}

ComplexMatrix kron_dense(const Block& a) {
    ComplexMatrix out = ComplexMatrix::identity(1);
    for (const Factor& f : a.factors) out = tensor(out, dense_of(f));
    return out;
}

// (a + b) / 2 collapsed to a single factor; a and b must share one dim.
Block half_sum(const Block& a, const Block& b) {
    const std::size_t d = a.dim();
    Block out;
    Factor f;
    if (a.all_diag() && b.all_diag()) {
        if (d > max_diag_len) {
            throw DimensionBudgetExceeded("diagonal block length " + std::to_string(d) +
                                          " exceeds " + std::to_string(max_diag_len));
        }
        f.diag = kron_diag(a);
        const std::vector<double> other = kron_diag(b);
        for (std::size_t i = 0; i < d; ++i) f.diag[i] = 0.5 * (f.diag[i] + other[i]);
    } else {
        if (d > dim_budget) {
            throw DimensionBudgetExceeded("dense block dimension " + std::to_string(d) +
                                          " exceeds " + std::to_string(dim_budget));
        }
        f.dense = scale(0.5, add(kron_dense(a), kron_dense(b)));
    }
    out.factors.push_back(std::move(f));
    return out;
}

struct BlockChannel {
    std::vector<Block> b0, b1;  // parallel lists, equal dims entrywise
};

Factor factor_of(const DensityMatrix& s) {
    Factor f;
    bool diag = true;
    for (std::size_t r = 0; r < s.dim() && diag; ++r) {
        for (std::size_t c = 0; c < s.dim(); ++c) {
            if (r != c && s.mat(r, c) != cplx(0.0, 0.0)) {
                diag = false;
                break;
            }
        }
    }
    if (diag) {
        f.diag.resize(s.dim());
        for (std::size_t i = 0; i < s.dim(); ++i) f.diag[i] = s.mat(i, i).real();
    } else {
        f.dense = s.mat;
    }
    return f;
}

BlockChannel to_blocks(const CqChannel& w) {
    BlockChannel b;
    b.b0.push_back(Block{{factor_of(w.sigma0)}});
    b.b1.push_back(Block{{factor_of(w.sigma1)}});
    return b;
}

// H(X | U B) = log 2 + (1/2) sum_k [H(b0_k) + H(b1_k)] - sum_k H((b0_k + b1_k)/2),
// the conditional entropy of a uniform input given the accumulated classical
// labels and the quantum output.
double block_entropy(const BlockChannel& w) {
    double h01 = 0.0, hmix = 0.0;
    for (std::size_t k = 0; k < w.b0.size(); ++k) {
        h01 += w.b0[k].entropy_value() + w.b1[k].entropy_value();
        hmix += half_sum(w.b0[k], w.b1[k]).entropy_value();
    }
    return std::clamp(ln2 + 0.5 * h01 - hmix, 0.0, ln2);
}

BlockChannel step_minus(const BlockChannel& a, const BlockChannel& b) {
    BlockChannel out;
    out.b0.reserve(a.b0.size() * b.b0.size());
    out.b1.reserve(a.b0.size() * b.b0.size());
    for (std::size_t k = 0; k < a.b0.size(); ++k) {
        for (std::size_t l = 0; l < b.b0.size(); ++l) {
            out.b0.push_back(half_sum(tensor_blocks(a.b0[k], b.b0[l]),
                                      tensor_blocks(a.b1[k], b.b1[l])));
            out.b1.push_back(half_sum(tensor_blocks(a.b1[k], b.b0[l]),
                                      tensor_blocks(a.b0[k], b.b1[l])));
        }
    }
    return out;
}

BlockChannel step_plus(const BlockChannel& a, const BlockChannel& b) {
    BlockChannel out;
    out.b0.reserve(2 * a.b0.size() * b.b0.size());
    out.b1.reserve(2 * a.b0.size() * b.b0.size());
    for (int u1 = 0; u1 < 2; ++u1) {
        const auto& first0 = (u1 == 0) ? a.b0 : a.b1;  // x = 0 sees a_{u1}
        const auto& first1 = (u1 == 0) ? a.b1 : a.b0;  // x = 1 sees a_{u1 xor 1}
        for (std::size_t k = 0; k < a.b0.size(); ++k) {
            for (std::size_t l = 0; l < b.b0.size(); ++l) {
                out.b0.push_back(
                    scale_block(0.5, tensor_blocks(first0[k], b.b0[l])));
                out.b1.push_back(
                    scale_block(0.5, tensor_blocks(first1[k], b.b1[l])));
            }
        }
    }
    return out;
}

void exact_dfs(const BlockChannel& w, int depth, int n,
               std::vector<std::vector<double>>& levels) {
    levels[depth].push_back(ln2 - block_entropy(w));
    if (depth == n) return;
    exact_dfs(step_minus(w, w), depth + 1, n, levels);
    exact_dfs(step_plus(w, w), depth + 1, n, levels);
}

// ---- classical scalar backends ---------------------------------------------

struct Sym {
    double a = 0.0;  // P(y | input 0)
    double b = 0.0;  // P(y | input 1)
};

using SymbolDist = std::vector<Sym>;

// Collapse symbols with equal posterior of input 0 (sufficient statistic).
SymbolDist merge_symbols(SymbolDist d) {
    SymbolDist live;
    live.reserve(d.size());
    for (const Sym& s : d) {
        if (s.a + s.b > 0.0) live.push_back(s);
    }
    std::sort(live.begin(), live.end(), [](const Sym& x, const Sym& y) {
        return x.a / (x.a + x.b) < y.a / (y.a + y.b);
    });
    SymbolDist out;
    for (const Sym& s : live) {
        if (!out.empty()) {
            const Sym& t = out.back();
            if (std::abs(s.a / (s.a + s.b) - t.a / (t.a + t.b)) <= 1e-12) {
                out.back().a += s.a;
                out.back().b += s.b;
                continue;
            }
        }
        out.push_back(s);
    }
    return out;
}

void check_alphabet(std::size_t count) {
    if (count > max_alphabet) {
        throw DimensionBudgetExceeded("output alphabet " + std::to_string(count) +
                                      " exceeds " + std::to_string(max_alphabet));
    }
}

SymbolDist sym_minus(const SymbolDist& d1, const SymbolDist& d2) {
    check_alphabet(d1.size() * d2.size());
    SymbolDist out;
    out.reserve(d1.size() * d2.size());
    for (const Sym& s : d1) {
        for (const Sym& t : d2) {
            out.push_back({0.5 * (s.a * t.a + s.b * t.b), 0.5 * (s.b * t.a + s.a * t.b)});
        }
    }
    return merge_symbols(std::move(out));
}

SymbolDist sym_plus(const SymbolDist& d1, const SymbolDist& d2) {
    check_alphabet(2 * d1.size() * d2.size());
    SymbolDist out;
    out.reserve(2 * d1.size() * d2.size());
    for (const Sym& s : d1) {
        for (const Sym& t : d2) {
            out.push_back({0.5 * s.a * t.a, 0.5 * s.b * t.b});  // revealed bit 0
            out.push_back({0.5 * s.b * t.a, 0.5 * s.a * t.b});  // revealed bit 1
        }
    }
    return merge_symbols(std::move(out));
}

double sym_entropy(const SymbolDist& d) {
    double h = 0.0;
    for (const Sym& s : d) {
        if (s.a + s.b > 0.0) h += (s.a + s.b) * 0.5 * binary_entropy(s.a / (s.a + s.b));
    }
    return std::clamp(h, 0.0, ln2);
}

double sym_capacity(const SymbolDist& d) { return ln2 - sym_entropy(d); }

SymbolDist initial_dist(ClassicalKind kind, double param) {
    if (param < -tol_prior || param > 1.0 + tol_prior) {
        throw OutOfRange("classical channel parameter outside [0,1]");
    }
    param = std::clamp(param, 0.0, 1.0);
    if (kind == ClassicalKind::bsc) {
        return merge_symbols({{1.0 - param, param}, {param, 1.0 - param}});
    }
    // bec: non-erased symbols identify the input, the erasure symbol is flat
    return merge_symbols({{1.0 - param, 0.0}, {0.0, 1.0 - param}, {param, param}});
}

double bec_minus(double e1, double e2) { return e1 + e2 - e1 * e2; }
double bec_plus(double e1, double e2) { return e1 * e2; }

void check_level_count(int n, int max_n, const char* op) {
    if (n < 0 || n > max_n) {
        throw OutOfRange(std::string(op) + ": level count outside [0, " +
                         std::to_string(max_n) + "]");
    }
}

// Least squares for y = intercept - rate * x over the given points.
SpeedFit fit_decay(const std::vector<double>& xs, const std::vector<double>& ys) {
    SpeedFit fit;
    const std::size_t n = xs.size();
    if (n < 2) return fit;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double den = n * sxx - sx * sx;
    if (den == 0.0) return fit;
    const double slope = (n * sxy - sx * sy) / den;
    fit.rate = -slope;
    fit.intercept = (sy - slope * sx) / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ys[i] - (fit.intercept - fit.rate * xs[i]);
        ss += r * r;
    }
    fit.rms_residual = std::sqrt(ss / n);
    fit.valid = true;
    return fit;
}

SpeedTrace speed_from_levels(const std::vector<std::vector<double>>& levels) {
    SpeedTrace tr;
    tr.expected_T.reserve(levels.size());
    for (const auto& lvl : levels) {
        double acc = 0.0;
        for (double cap : lvl) {
            const double hb = std::clamp(1.0 - cap / ln2, 0.0, 1.0);
            acc += hb * (1.0 - hb);
        }
        tr.expected_T.push_back(acc / static_cast<double>(lvl.size()));
    }
    std::vector<double> xs_lin, xs_sqrt, ys;
    for (std::size_t k = 0; k < tr.expected_T.size(); ++k) {
        if (tr.expected_T[k] > 0.0) {
            xs_lin.push_back(static_cast<double>(k));
            xs_sqrt.push_back(std::sqrt(static_cast<double>(k)));
            ys.push_back(std::log(tr.expected_T[k]));
        }
    }
    tr.fit_linear = fit_decay(xs_lin, ys);
    tr.fit_sqrt = fit_decay(xs_sqrt, ys);
    return tr;
}

}  // namespace

std::pair<CqChannel, CqChannel> polar_step(const CqChannel& w) {
    require_uniform(w, "polar_step");
    return {boxast(w, w), varoast(w, w)};
}

std::vector<std::vector<double>> polarize_exact_trace(const CqChannel& w, int n) {
    require_uniform(w, "polarize_exact");
    if (n < 0) throw OutOfRange("polarize_exact: negative depth");
    if (n > n_max_exact) {
        throw DimensionBudgetExceeded("polarize_exact: depth " + std::to_string(n) +
                                      " beyond n_max_exact = " + std::to_string(n_max_exact));
    }
    std::vector<std::vector<double>> levels(static_cast<std::size_t>(n) + 1);
    exact_dfs(to_blocks(w), 0, n, levels);
    return levels;
}

std::vector<double> polarize_exact(const CqChannel& w, int n) {
    return polarize_exact_trace(w, n).back();
}

std::vector<std::vector<double>> polarize_classical_trace(ClassicalKind kind, double param,
                                                          int n) {
    check_level_count(n, 24, "polarize_classical");
    std::vector<std::vector<double>> levels;
    levels.reserve(static_cast<std::size_t>(n) + 1);
    if (kind == ClassicalKind::bec) {
        if (param < -tol_prior || param > 1.0 + tol_prior) {
            throw OutOfRange("polarize_classical: erasure probability outside [0,1]");
        }
        std::vector<double> eps = {std::clamp(param, 0.0, 1.0)};
        levels.push_back({(1.0 - eps[0]) * ln2});
        for (int k = 0; k < n; ++k) {
            std::vector<double> next(eps.size() * 2);
            for (std::size_t m = 0; m < eps.size(); ++m) {
                next[2 * m] = bec_minus(eps[m], eps[m]);
                next[2 * m + 1] = bec_plus(eps[m], eps[m]);
            }
            eps.swap(next);
            std::vector<double> caps(eps.size());
            for (std::size_t i = 0; i < eps.size(); ++i) caps[i] = (1.0 - eps[i]) * ln2;
            levels.push_back(std::move(caps));
        }
        return levels;
    }

    std::vector<SymbolDist> dists = {initial_dist(kind, param)};
    levels.push_back({sym_capacity(dists[0])});
    for (int k = 0; k < n; ++k) {
        std::vector<SymbolDist> next(dists.size() * 2);
        for (std::size_t m = 0; m < dists.size(); ++m) {
            next[2 * m] = sym_minus(dists[m], dists[m]);
            next[2 * m + 1] = sym_plus(dists[m], dists[m]);
        }
        dists.swap(next);
        std::vector<double> caps(dists.size());
        for (std::size_t i = 0; i < dists.size(); ++i) caps[i] = sym_capacity(dists[i]);
        levels.push_back(std::move(caps));
    }
    return levels;
}

std::vector<double> polarize_classical(ClassicalKind kind, double param, int n) {
    return polarize_classical_trace(kind, param, n).back();
}

PolarStats polarization_stats(const std::vector<double>& I_values, double a, double b) {
    if (!(a > 0.0 && a < b && b < ln2)) {
        throw OutOfRange("polarization_stats: need 0 < a < b < log 2");
    }
    if (I_values.empty()) throw OutOfRange("polarization_stats: empty capacity list");
    PolarStats st;
    for (double v : I_values) {
        if (v < a) {
            st.alpha += 1.0;
        } else if (v <= b) {
            st.theta += 1.0;
        } else {
            st.beta += 1.0;
        }
        st.mu += v;
        st.nu += v * v;
    }
    const double n = static_cast<double>(I_values.size());
    st.alpha /= n;
    st.theta /= n;
    st.beta /= n;
    st.mu /= n;
    st.nu /= n;
    return st;
}

std::vector<PolarizationTrace> trace_stats(std::vector<std::vector<double>> per_level,
                                           double a, double b) {
    std::vector<PolarizationTrace> out;
    out.reserve(per_level.size());
    for (std::size_t k = 0; k < per_level.size(); ++k) {
        PolarizationTrace tr;
        tr.level = static_cast<int>(k);
        tr.I_values = std::move(per_level[k]);
        const PolarStats st = polarization_stats(tr.I_values, a, b);
        tr.alpha = st.alpha;
        tr.theta = st.theta;
        tr.beta = st.beta;
        tr.mu = st.mu;
        tr.nu = st.nu;
        double acc = 0.0;
        for (double cap : tr.I_values) {
            const double hb = std::clamp(1.0 - cap / ln2, 0.0, 1.0);
            acc += hb * (1.0 - hb);
        }
        tr.expected_T = acc / static_cast<double>(tr.I_values.size());
        out.push_back(std::move(tr));
    }
    return out;
}

std::vector<double> nonstationary_polarize(const std::vector<CqChannel>& ws, int n) {
    check_level_count(n, 24, "nonstationary_polarize");
    const std::size_t step = std::size_t{1} << n;
    if (ws.empty() || ws.size() % step != 0) {
        throw BadLength("nonstationary_polarize: list length not divisible by 2^n");
    }
    std::vector<BlockChannel> cur;
    cur.reserve(ws.size());
    for (const CqChannel& w : ws) {
        require_uniform(w, "nonstationary_polarize");
        cur.push_back(to_blocks(w));
    }
    for (int k = 1; k <= n; ++k) {
        const std::size_t N = std::size_t{1} << k;
        std::vector<BlockChannel> next(cur.size());
        for (std::size_t m = 0; m < cur.size() / N; ++m) {
            for (std::size_t j = 0; j < N / 2; ++j) {
                const BlockChannel& lo = cur[N * m + j];
                const BlockChannel& hi = cur[N * m + N / 2 + j];
                next[N * m + j] = step_minus(lo, hi);
                next[N * m + N / 2 + j] = step_plus(lo, hi);
            }
        }
        cur.swap(next);
    }
    std::vector<double> caps(cur.size());
    for (std::size_t i = 0; i < cur.size(); ++i) caps[i] = ln2 - block_entropy(cur[i]);
    return caps;
}

std::vector<std::vector<double>> nonstationary_bec_trace(const std::vector<double>& eps,
                                                         int n) {
    check_level_count(n, 24, "nonstationary_polarize_bec");
    const std::size_t step = std::size_t{1} << n;
    if (eps.empty() || eps.size() % step != 0) {
        throw BadLength("nonstationary_polarize_bec: list length not divisible by 2^n");
    }
    std::vector<double> cur = eps;
    for (double e : cur) {
        if (e < -tol_prior || e > 1.0 + tol_prior) {
            throw OutOfRange("nonstationary_polarize_bec: erasure probability outside [0,1]");
        }
    }
    auto caps = [](const std::vector<double>& es) {
        std::vector<double> out(es.size());
        for (std::size_t i = 0; i < es.size(); ++i) {
            out[i] = (1.0 - std::clamp(es[i], 0.0, 1.0)) * ln2;
        }
        return out;
    };
    std::vector<std::vector<double>> levels;
    levels.reserve(static_cast<std::size_t>(n) + 1);
    levels.push_back(caps(cur));
    for (int k = 1; k <= n; ++k) {
        const std::size_t N = std::size_t{1} << k;
        std::vector<double> next(cur.size());
        for (std::size_t m = 0; m < cur.size() / N; ++m) {
            for (std::size_t j = 0; j < N / 2; ++j) {
                const double lo = cur[N * m + j];
                const double hi = cur[N * m + N / 2 + j];
                next[N * m + j] = bec_minus(lo, hi);
                next[N * m + N / 2 + j] = bec_plus(lo, hi);
            }
        }
        cur.swap(next);
        levels.push_back(caps(cur));
    }
    return levels;
}

std::vector<double> nonstationary_polarize_bec(const std::vector<double>& eps, int n) {
    return nonstationary_bec_trace(eps, n).back();
}

SpeedTrace speed_trace(const CqChannel& w, int n) {
    return speed_from_levels(polarize_exact_trace(w, n));
}

SpeedTrace speed_trace_classical(ClassicalKind kind, double param, int n) {
    return speed_from_levels(polarize_classical_trace(kind, param, n));
}

std::vector<double> sample_paths_classical(ClassicalKind kind, double param, int n,
                                           std::size_t paths, std::uint64_t seed) {
    check_level_count(n, 64, "sample_paths_classical");
    if (paths == 0) throw OutOfRange("sample_paths_classical: zero paths");
    std::vector<double> out;
    out.reserve(paths);
    for (std::size_t i = 0; i < paths; ++i) {
        SplitStream stream(seed, i);
        if (kind == ClassicalKind::bec) {
            double e = std::clamp(param, 0.0, 1.0);
            for (int k = 0; k < n; ++k) {
                e = (stream.uniform() < 0.5) ? bec_minus(e, e) : bec_plus(e, e);
            }
            out.push_back((1.0 - e) * ln2);
        } else {
            SymbolDist d = initial_dist(kind, param);
            for (int k = 0; k < n; ++k) {
                d = (stream.uniform() < 0.5) ? sym_minus(d, d) : sym_plus(d, d);
            }
            out.push_back(sym_capacity(d));
        }
    }
    return out;
}

}  // namespace qic
