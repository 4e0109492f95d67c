#include "qic/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "qic/bounds.hpp"
#include "qic/combine.hpp"
#include "qic/duality.hpp"
#include "qic/errors.hpp"

namespace qic {

namespace {

using nlohmann::json;

double base_scale(const ExperimentConfig& cfg) {
    return cfg.log_base == LogBase::bits ? 1.0 / ln2 : 1.0;
}

std::string default_out(const ExperimentConfig& cfg) {
    switch (cfg.command) {
        case Command::sweep: return "sweep.csv";
        case Command::curves: return "curves.csv";
        case Command::duality: return "duality.json";
        case Command::polarize: return "polarize.csv";
        case Command::speed: return "speed.csv";
    }
    return "out.csv";
}

std::string resolved_out(const ExperimentConfig& cfg) {
    return cfg.out_path.empty() ? default_out(cfg) : cfg.out_path;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << text;
    f.flush();
    if (!f) throw IoError("write to '" + path + "' failed");
}

class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> header) {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (i) buf_ += ',';
            buf_ += header[i];
        }
        buf_ += '\n';
    }
    void cell(double v) {
        sep();
        buf_ += format_double(v);
    }
    void cell(long long v) {
        sep();
        buf_ += std::to_string(v);
    }
    void end_row() {
        buf_ += '\n';
        first_ = true;
    }
    const std::string& text() const { return buf_; }

  private:
    void sep() {
        if (!first_) buf_ += ',';
        first_ = false;
    }
    std::string buf_;
    bool first_ = true;
};

std::string stem_of(const std::string& out_path) {
    if (out_path.size() > 4 && out_path.compare(out_path.size() - 4, 4, ".csv") == 0) {
        return out_path.substr(0, out_path.size() - 4);
    }
    return out_path;
}

const char* kind_name(ChannelKind k) {
    switch (k) {
        case ChannelKind::bec: return "bec";
        case ChannelKind::bsc: return "bsc";
        case ChannelKind::pure: return "pure";
        case ChannelKind::random: return "random";
        case ChannelKind::mixed_bec: return "mixed-bec";
    }
    return "?";
}

json base_manifest(const ExperimentConfig& cfg, const std::string& backend) {
    json m;
    m["seed"] = cfg.seed;
    m["backend"] = backend;
    m["budget"] = {{"dim_budget", dim_budget}, {"n_max_exact", n_max_exact}};
    m["a"] = cfg.a;
    m["b"] = cfg.b;
    m["kind"] = kind_name(cfg.kind);
    m["param"] = cfg.param;
    m["levels"] = cfg.levels;
    m["log_base"] = cfg.log_base == LogBase::bits ? "bits" : "nat";
    return m;
}

void emit_trace_csv(const ExperimentConfig& cfg,
                    const std::vector<PolarizationTrace>& trace,
                    const std::string& backend) {
    const double s = base_scale(cfg);
    CsvWriter csv({"n", "alpha", "theta", "beta", "mu", "nu", "expected_T"});
    for (const PolarizationTrace& tr : trace) {
        csv.cell(static_cast<long long>(tr.level));
        csv.cell(tr.alpha);
        csv.cell(tr.theta);
        csv.cell(tr.beta);
        csv.cell(tr.mu * s);
        csv.cell(tr.nu * s * s);
        csv.cell(tr.expected_T);
        csv.end_row();
    }
    const std::string out = resolved_out(cfg);
    write_file(out, csv.text());
    write_file(manifest_path(out), base_manifest(cfg, backend).dump(2) + "\n");
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                   std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string summary_path(const std::string& out_path) {
    return stem_of(out_path) + ".summary.json";
}

std::string manifest_path(const std::string& out_path) {
    return stem_of(out_path) + ".manifest.json";
}

void validate_config(const ExperimentConfig& cfg) {
    if (cfg.samples < 1) throw OutOfRange("config: samples must be >= 1");
    if (cfg.grid < 2) throw OutOfRange("config: grid must be >= 2");
    if (cfg.dims.empty()) throw OutOfRange("config: dims must be non-empty");
    for (std::size_t d : cfg.dims) {
        if (d < 2 || d > 64) throw OutOfRange("config: dims must lie in [2, 64]");
    }
    if (!(cfg.a > 0.0 && cfg.a < cfg.b && cfg.b < ln2)) {
        throw OutOfRange("config: need 0 < a < b < log 2");
    }
    if (cfg.levels < 0) throw OutOfRange("config: levels must be >= 0");
}

SweepSummary run_conjecture_sweep(const ExperimentConfig& cfg) {
    validate_config(cfg);
    const double s = base_scale(cfg);
    SweepSummary sum;
    sum.samples = cfg.samples;
    CsvWriter csv({"H1", "H2", "exact", "cl_lo", "cl_hi", "thm3", "thm4",
                   "thm4_conv", "conj_lo", "conj_hi", "chain_residual",
                   "proven_violation", "conjecture_violation",
                   "classical_lower_violated"});
    for (std::size_t i = 0; i < cfg.samples; ++i) {
        const std::size_t d = cfg.dims[i % cfg.dims.size()];
        const CqChannel w1 = random_cq_channel(d, cfg.prior, cfg.seed, 2 * i);
        const CqChannel w2 = random_cq_channel(d, cfg.prior, cfg.seed, 2 * i + 1);
        const BoundReport r = bound_report(w1, w2);
        csv.cell(r.h1 * s);
        csv.cell(r.h2 * s);
        csv.cell(r.exact * s);
        csv.cell(r.cl_lo * s);
        csv.cell(r.cl_hi * s);
        csv.cell(r.thm3 * s);
        csv.cell(r.thm4 * s);
        csv.cell(r.thm4_conv * s);
        csv.cell(r.conj_lo * s);
        csv.cell(r.conj_hi * s);
        csv.cell(r.chain_residual * s);
        csv.cell(static_cast<long long>(r.proven_violation));
        csv.cell(static_cast<long long>(r.conjecture_violation));
        csv.cell(static_cast<long long>(r.classical_lower_violated));
        csv.end_row();
        if (r.proven_violation) ++sum.proven_violations;
        if (r.conjecture_violation) ++sum.conjecture_violations;
        if (r.classical_lower_violated) ++sum.classical_lower_violations;
        if (!std::isnan(r.chain_residual)) {
            sum.max_chain_rule_residual =
                std::max(sum.max_chain_rule_residual, r.chain_residual);
        }
    }
    const std::string out = resolved_out(cfg);
    write_file(out, csv.text());
    json j;
    j["proven_violations"] = sum.proven_violations;
    j["conjecture_violations"] = sum.conjecture_violations;
    j["classical_lower_violations"] = sum.classical_lower_violations;
    j["max_chain_rule_residual"] = sum.max_chain_rule_residual;
    j["samples"] = sum.samples;
    j["seed"] = cfg.seed;
    j["dims"] = cfg.dims;
    j["prior"] = cfg.prior == PriorMode::uniform ? "uniform" : "half";
    write_file(summary_path(out), j.dump(2) + "\n");
    return sum;
}

void run_bound_curves(const ExperimentConfig& cfg) {
    validate_config(cfg);
    const double s = base_scale(cfg);
    CsvWriter csv({"H", "f_lo", "f_hi", "fuchs_vdg", "thm4", "thm4_conv",
                   "thm3_diag", "cl_lo", "cl_hi", "conj_lo", "conj_hi"});
    for (std::size_t i = 0; i < cfg.grid; ++i) {
        const double h = ln2 * static_cast<double>(i) / static_cast<double>(cfg.grid - 1);
        const auto [flo, fhi] = fidelity_window(h);
        const auto [cl_lo, cl_hi] = classical_bounds(h, h);
        csv.cell(h * s);
        csv.cell(flo);
        csv.cell(fhi);
        csv.cell(fuchs_vdg_lower(h));
        csv.cell(qmgl_lower_iid(h) * s);
        csv.cell(qmgl_lower_iid_convenient(h) * s);
        csv.cell(qmgl_lower_asym(h, h) * s);
        csv.cell(cl_lo * s);
        csv.cell(cl_hi * s);
        csv.cell(conjectured_lower(h, h) * s);
        csv.cell(conjectured_upper(h, h) * s);
        csv.end_row();
    }
    write_file(resolved_out(cfg), csv.text());
}

double DualitySummary::max_residual() const {
    return std::max({max_box_of_duals_residual, max_var_of_duals_residual,
                     max_complement_residual, max_double_dual_residual,
                     max_mirror_residual, max_capacity_sum_residual,
                     max_bec_dual_error});
}

DualitySummary run_duality_suite(const ExperimentConfig& cfg) {
    validate_config(cfg);
    DualitySummary sum;
    sum.samples = cfg.samples;
    for (std::size_t i = 0; i < cfg.samples; ++i) {
        const std::size_t d = cfg.dims[i % cfg.dims.size()];
        const CqChannel w1 =
            random_cq_channel(d, PriorMode::fixed_half, cfg.seed, 2 * i);
        const CqChannel w2 =
            random_cq_channel(d, PriorMode::fixed_half, cfg.seed, 2 * i + 1);
        const DualityReport rep = check_duality_lemma(w1, w2);
        sum.max_box_of_duals_residual =
            std::max(sum.max_box_of_duals_residual, rep.box_of_duals_residual);
        sum.max_var_of_duals_residual =
            std::max(sum.max_var_of_duals_residual, rep.var_of_duals_residual);
        sum.max_complement_residual =
            std::max(sum.max_complement_residual, rep.complement_residual);
        sum.max_double_dual_residual =
            std::max(sum.max_double_dual_residual, rep.double_dual_residual);
        sum.max_mirror_residual =
            std::max(sum.max_mirror_residual, mirror_identity_check(w1, w2));
        const double cap_sum = symmetric_capacity(w1) + symmetric_capacity(dual_channel(w1));
        sum.max_capacity_sum_residual =
            std::max(sum.max_capacity_sum_residual, std::abs(cap_sum - ln2));
    }
    for (int k = 0; k <= 10; ++k) {
        const double eps = static_cast<double>(k) / 10.0;
        const double cap = symmetric_capacity(dual_channel(bec_embed(eps)));
        sum.max_bec_dual_error =
            std::max(sum.max_bec_dual_error, std::abs(cap - eps * ln2));
    }
    json j;
    j["samples"] = sum.samples;
    j["seed"] = cfg.seed;
    j["dims"] = cfg.dims;
    j["max_box_of_duals_residual"] = sum.max_box_of_duals_residual;
    j["max_var_of_duals_residual"] = sum.max_var_of_duals_residual;
    j["max_complement_residual"] = sum.max_complement_residual;
    j["max_double_dual_residual"] = sum.max_double_dual_residual;
    j["max_mirror_residual"] = sum.max_mirror_residual;
    j["max_capacity_sum_residual"] = sum.max_capacity_sum_residual;
    j["max_bec_dual_error"] = sum.max_bec_dual_error;
    j["max_residual"] = sum.max_residual();
    write_file(resolved_out(cfg), j.dump(2) + "\n");
    return sum;
}

namespace {

// Uniform erasure grid (t + 1/2) / L.  The list is kept 16x longer than one
// recursion block (capped at 2^20 entries) so the per-level statistics
// approximate the infinite-collection limit instead of a single block.
std::vector<double> mixed_bec_grid(int levels) {
    const int extra = std::max(0, std::min(4, 20 - levels));
    const std::size_t L = std::size_t{1} << (levels + extra);
    std::vector<double> eps(L);
    for (std::size_t t = 0; t < L; ++t) {
        eps[t] = (static_cast<double>(t) + 0.5) / static_cast<double>(L);
    }
    return eps;
}

std::pair<std::vector<std::vector<double>>, std::string> polarization_levels(
    const ExperimentConfig& cfg) {
    switch (cfg.kind) {
        case ChannelKind::bec:
            return {polarize_classical_trace(ClassicalKind::bec, cfg.param, cfg.levels),
                    "classical-bec"};
        case ChannelKind::bsc:
            return {polarize_classical_trace(ClassicalKind::bsc, cfg.param, cfg.levels),
                    "classical-bsc"};
        case ChannelKind::pure:
            return {polarize_exact_trace(pure_channel(cfg.param), cfg.levels),
                    "exact-quantum"};
        case ChannelKind::random:
            return {polarize_exact_trace(random_cq_channel(cfg.dims.front(),
                                                           PriorMode::fixed_half,
                                                           cfg.seed, 0),
                                         cfg.levels),
                    "exact-quantum"};
        case ChannelKind::mixed_bec:
            return {nonstationary_bec_trace(mixed_bec_grid(cfg.levels), cfg.levels),
                    "classical-bec-nonstationary"};
    }
    throw OutOfRange("polarize: unknown channel kind");
}

}  // namespace

PolarizationSummary run_polarization(const ExperimentConfig& cfg) {
    validate_config(cfg);
    auto [levels, backend] = polarization_levels(cfg);
    PolarizationSummary sum;
    sum.backend = backend;
    sum.trace = trace_stats(std::move(levels), cfg.a, cfg.b);
    emit_trace_csv(cfg, sum.trace, backend);
    return sum;
}

SpeedSummary run_speed(const ExperimentConfig& cfg) {
    validate_config(cfg);
    SpeedSummary sum;
    switch (cfg.kind) {
        case ChannelKind::bec:
            sum.backend = "classical-bec";
            sum.trace = speed_trace_classical(ClassicalKind::bec, cfg.param, cfg.levels);
            break;
        case ChannelKind::bsc:
            sum.backend = "classical-bsc";
            sum.trace = speed_trace_classical(ClassicalKind::bsc, cfg.param, cfg.levels);
            break;
        case ChannelKind::pure:
            sum.backend = "exact-quantum";
            sum.trace = speed_trace(pure_channel(cfg.param), cfg.levels);
            break;
        case ChannelKind::random:
            sum.backend = "exact-quantum";
            sum.trace = speed_trace(random_cq_channel(cfg.dims.front(),
                                                      PriorMode::fixed_half, cfg.seed, 0),
                                    cfg.levels);
            break;
        case ChannelKind::mixed_bec:
            throw OutOfRange("speed: mixed-bec is a polarize-only kind");
    }
    CsvWriter csv({"n", "expected_T"});
    for (std::size_t k = 0; k < sum.trace.expected_T.size(); ++k) {
        csv.cell(static_cast<long long>(k));
        csv.cell(sum.trace.expected_T[k]);
        csv.end_row();
    }
    const std::string out = resolved_out(cfg);
    write_file(out, csv.text());
    json m = base_manifest(cfg, sum.backend);
    auto fit_json = [](const SpeedFit& f) {
        return json{{"rate", f.rate},
                    {"intercept", f.intercept},
                    {"rms_residual", f.rms_residual},
                    {"valid", f.valid}};
    };
    m["fit_log_T_vs_n"] = fit_json(sum.trace.fit_linear);
    m["fit_log_T_vs_sqrt_n"] = fit_json(sum.trace.fit_sqrt);
    write_file(manifest_path(out), m.dump(2) + "\n");
    return sum;
}

}  // namespace qic
