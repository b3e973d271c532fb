// afcfo: Monte-Carlo and closed-form SNR of OFDM amplify-and-forward relaying
// under multiple carrier frequency offsets.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "afcfo/config.hpp"
#include "afcfo/csv.hpp"
#include "afcfo/experiment.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitRuntimeError = 3;

std::string fmt_db(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%8.3f", v);
    return buf;
}

void print_summary(const afcfo::ExperimentConfig& cfg, const std::vector<afcfo::PointResult>& rows,
                   double seconds, const std::string& out_path) {
    std::printf("config   %s (digest %s)\n", cfg.name.c_str(), afcfo::config_digest(cfg).c_str());
    std::printf("seed     %llu\n", static_cast<unsigned long long>(cfg.master_seed));
    std::printf("mode     %s, trials %ld, N %ld, N_g %ld\n", std::string(afcfo::to_string(cfg.mode)).c_str(),
                cfg.trials, cfg.ofdm.N, cfg.ofdm.cp_length);
    std::printf("%8s %8s %8s %10s %10s %8s %8s\n", "scale", "eps1", "eps2", "analytic", "empirical",
                "stderr", "gap_db");
    for (const auto& r : rows) {
        const std::string a = r.analytical ? fmt_db(r.analytical->snr_db) : std::string("-");
        const std::string e = r.empirical ? fmt_db(r.empirical->snr_db) : std::string("-");
        const std::string s = r.empirical ? fmt_db(r.empirical->stderr_db) : std::string("-");
        std::string gap = "-";
        if (r.analytical && r.empirical && !r.analytical->infinite && !r.empirical->infinite) {
            gap = fmt_db(r.empirical->snr_db - r.analytical->snr_db);
        }
        std::printf("%8.3g %8.3f %8.3f %10s %10s %8s %8s\n", r.noise_scale, r.eps.eps1, r.eps.eps2, a.c_str(),
                    e.c_str(), s.c_str(), gap.c_str());
    }
    std::printf("wall     %.3f s\n", seconds);
    if (!out_path.empty()) std::printf("wrote    %s\n", out_path.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"OFDM amplify-and-forward relay SNR under carrier frequency offsets"};
    app.require_subcommand(1);

    std::string config_path;
    std::string mode;
    std::optional<long> trials;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> workers;
    std::string out_path;

    auto* simulate = app.add_subcommand("simulate", "run the Monte-Carlo sweep alongside the closed form");
    simulate->add_option("--config", config_path, "config file or preset name")->required();
    simulate->add_option("--mode", mode, "analytical | simulate | both")
        ->check(CLI::IsMember({"analytical", "simulate", "both"}));
    simulate->add_option("--trials", trials, "trials per sweep point");
    simulate->add_option("--seed", seed, "master seed");
    simulate->add_option("--workers", workers, "worker threads (0: all cores)");
    simulate->add_option("--out", out_path, "CSV output path");

    std::string surface_path;
    auto* analyze = app.add_subcommand("analyze", "closed-form SNR surface and sensitivities over grid x grid");
    analyze->add_option("--config", config_path, "config file or preset name")->required();
    analyze->add_option("--out", surface_path, "CSV output path")->required();

    auto* presets_cmd = app.add_subcommand("presets", "shipped experiment presets");
    presets_cmd->require_subcommand(1);
    auto* presets_list = presets_cmd->add_subcommand("list", "list preset names");
    std::string show_name;
    auto* presets_show = presets_cmd->add_subcommand("show", "print a preset as a config file");
    presets_show->add_option("name", show_name)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (presets_list->parsed()) {
            for (const auto& p : afcfo::presets()) {
                std::cout << p.name << "\t" << p.description << "\n";
            }
            return 0;
        }
        if (presets_show->parsed()) {
            std::cout << afcfo::to_json(afcfo::load_preset(show_name)) << "\n";
            return 0;
        }

        afcfo::ExperimentConfig cfg = afcfo::resolve_config(config_path);
        if (!mode.empty()) cfg.mode = afcfo::parse_run_mode(mode);
        if (trials) cfg.trials = *trials;
        if (seed) cfg.master_seed = *seed;
        if (workers) cfg.workers = *workers;
        cfg.validate();

        const auto start = std::chrono::steady_clock::now();
        std::vector<afcfo::PointResult> rows;
        std::string written;
        if (simulate->parsed()) {
            rows = afcfo::run_sweep(cfg);
            written = out_path;
        } else {
            cfg.mode = afcfo::RunMode::analytical;
            rows = afcfo::run_surface(cfg);
            written = surface_path;
        }
        if (!written.empty()) afcfo::write_csv(rows, written);
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        print_summary(cfg, rows, seconds, written);
        return 0;
    } catch (const afcfo::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntimeError;
    }
}
