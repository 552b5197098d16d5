#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"
#include "julpot/io.hpp"
#include "julpot/setmetrics.hpp"

namespace julpot {

struct FamilySpec {
    std::string name = "power_plus_c";
    cplx c = {0.5, 0.0};     // power_plus_c offset
    double bound = 2.0;      // bounded_coeffs |a_j| < M
    uint64_t seed = 0;       // 0 = inherit the experiment seed
};

struct SetSpec {
    std::string kind = "circle";  // circle | disc | segment | ellipse
    cplx center = {0.0, 0.0};
    double radius = 1.0;
    cplx a = {-2.0, 0.0};
    cplx b = {2.0, 0.0};
    double semi_x = 2.0;
    double semi_y = 1.0;

    AnalyticReference to_reference() const;
};

/// One JSON document drives one experiment; unknown fields are rejected.
struct ExperimentConfig {
    std::string experiment;
    FamilySpec family;
    SetSpec set;
    std::vector<int> n_list = {4, 8, 16, 32};
    int resolution = 512;
    int max_iter = 256;
    int depth = 0;        // brolin tree depth; 0 = smallest with >= 4096 leaves
    int samples = 100000; // random-path orbit count
    std::string mode = "auto";  // auto | full-tree | random-path
    int moments = 4;            // K in the weak* proxy
    std::vector<cplx> probes;   // lemma31 probe points (default: 1.5x extremes)
    double epsilon = 0.1;       // zero_location_check dilation
    double threshold_discrepancy = 0.05;
    double threshold_hausdorff = 0.1;
    std::string out_dir = "out";
    uint64_t seed = 1;
    std::string poly_json;      // render: explicit polynomial (JSON pairs)

    static ExperimentConfig from_json(const nlohmann::json& j);
    static ExperimentConfig from_file(const std::string& path);
    nlohmann::json to_json() const;
};

ExperimentConfig default_config(const std::string& experiment);

struct ExperimentRecord {
    int n = 0;
    std::vector<std::pair<std::string, double>> metrics;
    double wall_seconds = 0.0;
    std::string params;
};

struct ExperimentResult {
    std::vector<ExperimentRecord> records;
    std::vector<std::string> columns;
    nlohmann::json verdicts;
    std::vector<std::string> output_files;
};

/// Build the polynomial family an experiment runs over (built-ins on the
/// unit circle, or chebyshev/leja/faber/orthonormal over the set spec).
PolynomialFamily family_from_config(const ExperimentConfig& cfg);

ExperimentResult run_thm_brolin(const ExperimentConfig& cfg);
ExperimentResult run_thm_klimek(const ExperimentConfig& cfg);
ExperimentResult run_hausdorff_dichotomy(const ExperimentConfig& cfg);
ExperimentResult run_lemma31(const ExperimentConfig& cfg);
ExperimentResult run_limitset_check(const ExperimentConfig& cfg);
ExperimentResult run_minimality(const ExperimentConfig& cfg);
ExperimentResult run_render(const ExperimentConfig& cfg);

/// Dispatch on cfg.experiment, then write results.csv (deterministic),
/// timings.csv (wall clock, excluded from the determinism contract) and
/// manifest.json into cfg.out_dir.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

}  // namespace julpot
