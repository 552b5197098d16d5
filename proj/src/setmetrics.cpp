#include "julpot/setmetrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace julpot {

KlimekInput klimek_reference(const AnalyticReference& ref) {
    KlimekInput in{CompactSetModel(ref), green_reference(ref), boundary_points(ref, 4096), 0.0};
    for (size_t i = 0; i + 1 < in.boundary_samples.size(); ++i)
        in.sample_gap = std::max(in.sample_gap,
                                 std::abs(in.boundary_samples[i + 1] - in.boundary_samples[i]));
    return in;
}

KlimekInput klimek_julia(const Polynomial& p, int resolution, int max_iter,
                         double escape_threshold) {
    GridSet k = filled_julia_grid(p, julia_window(p), resolution, max_iter, escape_threshold);
    KlimekInput in{CompactSetModel(k), green_dynamical_evaluator(p, escape_threshold, max_iter),
                   julia_boundary(k), k.cell_size() * std::numbers::sqrt2};
    return in;
}

KlimekResult klimek_distance(const KlimekInput& a, const KlimekInput& b) {
    if (a.boundary_samples.empty() || b.boundary_samples.empty())
        throw EmptySet("klimek_distance: empty boundary samples");
    double ga_on_b = 0.0, gb_on_a = 0.0;
    for (cplx z : b.boundary_samples) ga_on_b = std::max(ga_on_b, a.green(z));
    for (cplx z : a.boundary_samples) gb_on_a = std::max(gb_on_a, b.green(z));
    double unc = a.green.accuracy_bound + b.green.accuracy_bound + a.sample_gap + b.sample_gap;
    return {std::max(ga_on_b, gb_on_a), unc};
}

PointCloud discrepancy_grid(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
    cplx center = 0.0;
    size_t total = mu.size() + nu.size();
    for (cplx z : mu.points()) center += z;
    for (cplx z : nu.points()) center += z;
    center /= double(total);
    double radius = 0.0, inradius = std::numeric_limits<double>::max();
    for (cplx z : mu.points()) {
        radius = std::max(radius, std::abs(z - center));
        inradius = std::min(inradius, std::abs(z - center));
    }
    for (cplx z : nu.points()) {
        radius = std::max(radius, std::abs(z - center));
        inradius = std::min(inradius, std::abs(z - center));
    }
    if (radius == 0.0) radius = 1.0;
    PointCloud grid;
    auto ring = [&](double r, int m) {
        for (int i = 0; i < m; ++i) {
            double th = 2.0 * std::numbers::pi * (i + 0.5) / m;
            grid.push_back(center + r * cplx(std::cos(th), std::sin(th)));
        }
    };
    ring(1.5 * radius, 256);
    ring(3.0 * radius, 256);
    if (inradius > 0.12) ring(0.5 * inradius, 128);  // interior circle when an inradius exists
    return grid;
}

DiscrepancyReport weak_star_discrepancy(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                        int K, const PointCloud& grid, double h_min) {
    if (K < 1) throw Error("weak_star_discrepancy: K >= 1 required");
    double md = 0.0;
    for (int k = 1; k <= K; ++k) md = std::max(md, std::abs(mu.moment(k) - nu.moment(k)));

    double pd = 0.0;
    for (cplx z : grid) {
        for (cplx p : mu.points())
            if (std::abs(z - p) < h_min)
                throw GridTooClose("weak_star_discrepancy: grid point within h_min of support");
        for (cplx p : nu.points())
            if (std::abs(z - p) < h_min)
                throw GridTooClose("weak_star_discrepancy: grid point within h_min of support");
        pd = std::max(pd, std::abs(log_potential(mu, z) - log_potential(nu, z)));
    }
    return {md, pd, K, grid.size()};
}

TrendReport convergence_table(std::span<const std::pair<int, double>> items) {
    if (items.size() < 3) throw Error("convergence_table: need at least 3 rows");
    TrendReport rep;
    rep.rows.assign(items.begin(), items.end());
    for (size_t i = 1; i < rep.rows.size(); ++i)
        if (rep.rows[i].first <= rep.rows[i - 1].first)
            throw Error("convergence_table: n must be strictly increasing");
    rep.first = rep.rows.front().second;
    rep.last = rep.rows.back().second;

    // Spearman rank correlation with midranks for tied values
    const size_t m = rep.rows.size();
    std::vector<double> vrank(m);
    {
        std::vector<size_t> order(m);
        std::iota(order.begin(), order.end(), size_t(0));
        std::sort(order.begin(), order.end(), [&](size_t i, size_t j) {
            return rep.rows[i].second < rep.rows[j].second;
        });
        size_t i = 0;
        while (i < m) {
            size_t j = i;
            while (j + 1 < m &&
                   rep.rows[order[j + 1]].second == rep.rows[order[i]].second)
                ++j;
            double mid = 0.5 * double(i + j) + 1.0;
            for (size_t t = i; t <= j; ++t) vrank[order[t]] = mid;
            i = j + 1;
        }
    }
    double mean_n = 0.5 * double(m + 1);
    double cov = 0.0, var_n = 0.0, var_v = 0.0;
    for (size_t i = 0; i < m; ++i) {
        double dn = double(i + 1) - mean_n;
        double dv = vrank[i] - mean_n;  // ranks share the mean (m+1)/2
        cov += dn * dv;
        var_n += dn * dn;
        var_v += dv * dv;
    }
    rep.spearman = (var_v > 0.0) ? cov / std::sqrt(var_n * var_v) : 0.0;
    rep.decreasing = (rep.last < rep.first) && (rep.spearman <= -0.8);
    return rep;
}

}  // namespace julpot
