// cqlab: experiment driver for binary-input classical-quantum channel
// combining, duality, entropy bounds, and polarization runs.
//
// Exit codes: 0 success, 2 proven-bound violation detected (numerical
// fault), 3 I/O error.

#include <cstdio>
#include <exception>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qic/errors.hpp"
#include "qic/experiments.hpp"

namespace {

constexpr double duality_tolerance = 1e-7;

void add_common(CLI::App* sub, qic::ExperimentConfig& cfg) {
    sub->add_option("--seed", cfg.seed, "Master seed for all random draws");
    sub->add_option("--samples", cfg.samples, "Number of sampled channel pairs");
    sub->add_option("--dim", cfg.dims,
                    "Output dimension(s); repeat to cycle through several")
        ->check(CLI::Range(std::size_t{2}, std::size_t{64}));
    sub->add_option("--prior", cfg.prior, "Input prior: fixed 1/2 or uniform random")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, qic::PriorMode>{
                {"half", qic::PriorMode::fixed_half},
                {"uniform", qic::PriorMode::uniform}},
            CLI::ignore_case));
    sub->add_option("--grid", cfg.grid, "Grid points for curve evaluation");
    sub->add_option("--a", cfg.a, "Lower edge of the mid-capacity window (nats)");
    sub->add_option("--b", cfg.b, "Upper edge of the mid-capacity window (nats)");
    sub->add_option("--base", cfg.log_base, "Log base for emitted entropy columns")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, qic::LogBase>{{"nat", qic::LogBase::nat},
                                                {"bits", qic::LogBase::bits}},
            CLI::ignore_case));
    sub->add_option("--out", cfg.out_path, "Output CSV/JSON path");
}

void add_channel_choice(CLI::App* sub, qic::ExperimentConfig& cfg) {
    sub->add_option("--kind", cfg.kind,
                    "Channel family: bec, bsc, pure, random, mixed-bec")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, qic::ChannelKind>{
                {"bec", qic::ChannelKind::bec},
                {"bsc", qic::ChannelKind::bsc},
                {"pure", qic::ChannelKind::pure},
                {"random", qic::ChannelKind::random},
                {"mixed-bec", qic::ChannelKind::mixed_bec}},
            CLI::ignore_case));
    sub->add_option("--param", cfg.param,
                    "Family parameter: erasure/crossover probability or pure-state angle");
    sub->add_option("--levels", cfg.levels, "Polar transform depth n");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Classical-quantum channel combining laboratory"};
    app.require_subcommand(1);

    qic::ExperimentConfig cfg;

    CLI::App* sweep = app.add_subcommand(
        "sweep", "Random-pair bound sweep with violation counting");
    add_common(sweep, cfg);

    CLI::App* curves = app.add_subcommand(
        "curves", "Bound curves on an entropy grid (diagonal H1 = H2)");
    add_common(curves, cfg);

    CLI::App* duality = app.add_subcommand(
        "duality", "Duality-identity residual statistics over random channels");
    add_common(duality, cfg);

    CLI::App* polarize = app.add_subcommand(
        "polarize", "Polar-transform recursion with per-level statistics");
    add_common(polarize, cfg);
    add_channel_choice(polarize, cfg);

    CLI::App* speed = app.add_subcommand(
        "speed", "Expected-T decay per level with both model fits");
    add_common(speed, cfg);
    add_channel_choice(speed, cfg);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep->parsed()) {
            cfg.command = qic::Command::sweep;
            const qic::SweepSummary s = qic::run_conjecture_sweep(cfg);
            std::printf("samples=%zu proven_violations=%zu conjecture_violations=%zu "
                        "classical_lower_violations=%zu max_chain_rule_residual=%.3e\n",
                        s.samples, s.proven_violations, s.conjecture_violations,
                        s.classical_lower_violations, s.max_chain_rule_residual);
            if (s.proven_violations > 0) return 2;
        } else if (curves->parsed()) {
            cfg.command = qic::Command::curves;
            qic::run_bound_curves(cfg);
        } else if (duality->parsed()) {
            cfg.command = qic::Command::duality;
            const qic::DualitySummary s = qic::run_duality_suite(cfg);
            std::printf("samples=%zu max_residual=%.3e\n", s.samples, s.max_residual());
            if (s.max_residual() > duality_tolerance) return 2;
        } else if (polarize->parsed()) {
            cfg.command = qic::Command::polarize;
            const qic::PolarizationSummary s = qic::run_polarization(cfg);
            std::printf("backend=%s levels=%zu final_theta=%.6f\n", s.backend.c_str(),
                        s.trace.size() - 1, s.trace.back().theta);
        } else if (speed->parsed()) {
            cfg.command = qic::Command::speed;
            const qic::SpeedSummary s = qic::run_speed(cfg);
            std::printf("backend=%s levels=%zu final_expected_T=%.6e\n",
                        s.backend.c_str(), s.trace.expected_T.size() - 1,
                        s.trace.expected_T.back());
        }
    } catch (const qic::IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
