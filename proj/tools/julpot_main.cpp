#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "julpot/harness.hpp"

namespace {

void print_result(const julpot::ExperimentConfig& cfg, const julpot::ExperimentResult& res) {
    std::printf("experiment %s: %zu row(s) -> %s/results.csv\n", cfg.experiment.c_str(),
                res.records.size(), cfg.out_dir.c_str());
    for (const auto& rec : res.records) {
        std::printf("  n=%-4d", rec.n);
        for (const auto& [k, v] : rec.metrics) std::printf(" %s=%.6g", k.c_str(), v);
        std::printf("\n");
    }
    if (!res.verdicts.empty()) std::printf("verdicts: %s\n", res.verdicts.dump().c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"julpot -- filled Julia sets, equilibrium measures and the metrics between them"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, out_dir;
    uint64_t seed = 0;
    bool has_seed = false;
    app.add_option("--config", config_path, "JSON experiment config")->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "output directory (overrides config)");
    app.add_flag_callback("--version", [] {
        std::printf("julpot %s\n", JULPOT_VERSION);
        std::exit(0);
    });
    auto* seed_opt = app.add_option("--seed", seed, "master seed (overrides config)");

    const char* names[] = {"thm-brolin",  "thm-klimek", "hausdorff-dichotomy", "lemma31",
                           "limitsets",   "minimality", "render"};
    const char* descs[] = {
        "Brolin measures vs the equilibrium measure (weak* proxy)",
        "Klimek distance from filled Julia sets to the hull of E",
        "Hausdorff distances of K_n to the closed disc and to the circle",
        "n-th root growth of |p_n| against exp(g) at probe points",
        "liminf/limsup of the K_n and J_n sequences vs the hull of E",
        "asymptotic-minimality diagnostics (alpha, beta, zero locations)",
        "filled Julia set PGM and Green field CSV"};
    for (size_t i = 0; i < std::size(names); ++i) app.add_subcommand(names[i], descs[i]);

    CLI11_PARSE(app, argc, argv);

    try {
        std::string chosen = app.get_subcommands().front()->get_name();
        julpot::ExperimentConfig cfg = config_path.empty()
                                           ? julpot::default_config(chosen)
                                           : julpot::ExperimentConfig::from_file(config_path);
        cfg.experiment = chosen;
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        has_seed = seed_opt->count() > 0;
        if (has_seed) cfg.seed = seed;
        julpot::ExperimentResult res = julpot::run_experiment(cfg);
        print_result(cfg, res);
    } catch (const std::exception& ex) {
        std::fprintf(stderr, "error: %s\n", ex.what());
        return 1;
    }
    return 0;
}
