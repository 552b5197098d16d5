#pragma once

#include "julpot/dynamics.hpp"
#include "julpot/extremal.hpp"

namespace julpot {

/// A set paired with the Green's function of its hull complement and a
/// boundary sampling; the unit of account for the Klimek metric.
struct KlimekInput {
    CompactSetModel set;
    GreenEvaluator green;
    PointCloud boundary_samples;
    double sample_gap = 0.0;
};

KlimekInput klimek_reference(const AnalyticReference& ref);
/// Filled-Julia-set input: grid boundary cells + the dynamical evaluator.
KlimekInput klimek_julia(const Polynomial& p, int resolution = 512, int max_iter = 256,
                         double escape_threshold = kEscapeThreshold);

struct KlimekResult {
    double value;
    double uncertainty;  // accuracy bounds + sampling modulus proxy
    operator double() const { return value; }
};

/// Gamma(A, B) = max(sup_B g_A, sup_A g_B), each sup over the other's
/// boundary samples (the sup of a subharmonic g over a compact set sits
/// on the boundary).
KlimekResult klimek_distance(const KlimekInput& a, const KlimekInput& b);

struct DiscrepancyReport {
    double moment_discrepancy;     // max_{1<=k<=K} |m_k(mu) - m_k(nu)|
    double potential_discrepancy;  // max over the grid of |U_mu - U_nu|
    int moment_count;
    size_t grid_points;
};

/// Default potential test grid: circles at 1.5x and 3x the joint support
/// radius plus one interior circle at half the inradius when there is one.
PointCloud discrepancy_grid(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// Finite weak*-proxy: moment and potential discrepancies side by side.
/// Grid points closer than h_min to either support raise GridTooClose.
DiscrepancyReport weak_star_discrepancy(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                        int K, const PointCloud& grid, double h_min = 0.05);

struct TrendReport {
    std::vector<std::pair<int, double>> rows;
    double spearman = 0.0;
    bool decreasing = false;  // last < first and Spearman <= -0.8
    double first = 0.0, last = 0.0;
    bool below(double threshold) const { return last <= threshold; }
};

/// Trend flags over (n, value) rows; needs at least 3 rows.
TrendReport convergence_table(std::span<const std::pair<int, double>> items);

}  // namespace julpot
