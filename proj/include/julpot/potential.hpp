#pragma once

#include "julpot/compactset.hpp"

namespace julpot {

/// Weighted point set with total mass 1 (within 1e-12).
class DiscreteMeasure {
public:
    DiscreteMeasure(PointCloud points, std::vector<double> weights);
    static DiscreteMeasure uniform(PointCloud points);

    const PointCloud& points() const { return points_; }
    const std::vector<double>& weights() const { return weights_; }
    size_t size() const { return points_.size(); }

    cplx moment(int k) const;  // sum w_i z_i^k

private:
    PointCloud points_;
    std::vector<double> weights_;
};

/// U_mu(z) = sum w_i log|z - p_i|; -inf when z hits a support point.
double log_potential(const DiscreteMeasure& mu, cplx z);

/// Off-diagonal discrete energy, reweighted by 1/(1 - sum w_i^2);
/// -inf when two support points coincide.
double energy(const DiscreteMeasure& mu);

/// Greedy Leja sequence on the candidate cloud: each new point maximizes
/// the product of distances to the chosen ones (log-sum), ties broken by
/// smallest candidate index. start must be one of the candidates.
std::vector<cplx> leja_points(const PointCloud& candidates, int count, cplx start);
/// Same with the customary start: the candidate farthest from the centroid.
std::vector<cplx> leja_points(const PointCloud& candidates, int count);

/// Transfinite-diameter estimator d_n = prod_{j<k} |z_j - z_k|^{2/(n(n-1))}.
double capacity_estimate(std::span<const cplx> pts);
/// The refinement note: prefix values d_2, d_3, ..., d_n in input order.
std::vector<double> capacity_refinement(std::span<const cplx> pts);

/// Counting measure of n Leja points of the set's boundary sampling.
DiscreteMeasure equilibrium_estimate(const CompactSetModel& set, int n);

/// Closed-form Green's functions with pole at infinity for the reference
/// shapes (disc/circle via log+, segment and ellipse via the inverse
/// Joukowski map), accurate to ~1e-12.
GreenEvaluator green_reference(const AnalyticReference& set);

struct ModulusResult {
    double value;
    double sample_gap;  // sampling density on the delta-neighborhood boundary
    operator double() const { return value; }
};

/// omega_E(delta) = sup { g(z) : dist(z, E) <= delta }, by sampling circles
/// of radius delta around dense boundary samples (the sup of a function
/// harmonic off E over the closed neighborhood sits on its boundary).
ModulusResult modulus_of_continuity(const GreenEvaluator& g, const CompactSetModel& set,
                                    double delta);

}  // namespace julpot
