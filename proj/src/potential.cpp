#include "julpot/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace julpot {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

DiscreteMeasure::DiscreteMeasure(PointCloud points, std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
    if (points_.empty()) throw EmptySet("DiscreteMeasure: no points");
    if (points_.size() != weights_.size())
        throw Error("DiscreteMeasure: points/weights length mismatch");
    double total = 0.0;
    for (double w : weights_) {
        if (w < 0.0) throw Error("DiscreteMeasure: negative weight");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw Error("DiscreteMeasure: weights must sum to 1 (got " + std::to_string(total) + ")");
}

DiscreteMeasure DiscreteMeasure::uniform(PointCloud points) {
    if (points.empty()) throw EmptySet("DiscreteMeasure: no points");
    std::vector<double> w(points.size(), 1.0 / double(points.size()));
    return DiscreteMeasure(std::move(points), std::move(w));
}

cplx DiscreteMeasure::moment(int k) const {
    cplx m = 0.0;
    for (size_t i = 0; i < points_.size(); ++i) m += weights_[i] * std::pow(points_[i], k);
    return m;
}

double log_potential(const DiscreteMeasure& mu, cplx z) {
    double u = 0.0;
    const auto& pts = mu.points();
    const auto& w = mu.weights();
    for (size_t i = 0; i < pts.size(); ++i) {
        double d = std::abs(z - pts[i]);
        if (d == 0.0) return kNegInf;
        u += w[i] * std::log(d);
    }
    return u;
}

double energy(const DiscreteMeasure& mu) {
    const auto& pts = mu.points();
    const auto& w = mu.weights();
    if (pts.size() < 2) throw Error("energy: need at least 2 points");
    double acc = 0.0, wsq = 0.0;
    for (size_t i = 0; i < pts.size(); ++i) {
        wsq += w[i] * w[i];
        for (size_t j = i + 1; j < pts.size(); ++j) {
            double d = std::abs(pts[i] - pts[j]);
            if (d == 0.0) return kNegInf;
            acc += 2.0 * w[i] * w[j] * std::log(d);
        }
    }
    double denom = 1.0 - wsq;
    if (denom <= 0.0) return kNegInf;
    return acc / denom;
}

std::vector<cplx> leja_points(const PointCloud& candidates, int count, cplx start) {
    if (count < 1) throw Error("leja_points: count must be >= 1");
    if (size_t(count) > candidates.size())
        throw CountExceedsCandidates("leja_points: count exceeds candidate mesh");
    size_t start_idx = candidates.size();
    double best = std::numeric_limits<double>::max();
    for (size_t i = 0; i < candidates.size(); ++i) {
        double d = std::abs(candidates[i] - start);
        if (d < best) { best = d; start_idx = i; }
    }
    if (best > 1e-9 * std::max(1.0, std::abs(start)))
        throw Error("leja_points: start point is not a candidate");

    std::vector<cplx> chosen{candidates[start_idx]};
    std::vector<double> score(candidates.size(), 0.0);
    std::vector<uint8_t> taken(candidates.size(), 0);
    taken[start_idx] = 1;
    for (int k = 1; k < count; ++k) {
        cplx last = chosen.back();
        size_t arg = candidates.size();
        double top = kNegInf;
        for (size_t i = 0; i < candidates.size(); ++i) {
            double d = std::abs(candidates[i] - last);
            score[i] += (d > 0.0) ? std::log(d) : kNegInf;
            if (!taken[i] && score[i] > top) { top = score[i]; arg = i; }
        }
        if (arg == candidates.size())
            throw CountExceedsCandidates("leja_points: ran out of distinct candidates");
        taken[arg] = 1;
        chosen.push_back(candidates[arg]);
    }
    return chosen;
}

std::vector<cplx> leja_points(const PointCloud& candidates, int count) {
    if (candidates.empty()) throw EmptySet("leja_points: empty candidates");
    cplx mean = 0.0;
    for (cplx z : candidates) mean += z;
    mean /= double(candidates.size());
    size_t arg = 0;
    double best = -1.0;
    for (size_t i = 0; i < candidates.size(); ++i) {
        double d = std::abs(candidates[i] - mean);
        if (d > best) { best = d; arg = i; }
    }
    return leja_points(candidates, count, candidates[arg]);
}

double capacity_estimate(std::span<const cplx> pts) {
    const size_t n = pts.size();
    if (n < 2) throw Error("capacity_estimate: need at least 2 points");
    double acc = 0.0;
    for (size_t j = 0; j < n; ++j)
        for (size_t k = j + 1; k < n; ++k) {
            double d = std::abs(pts[j] - pts[k]);
            if (d == 0.0) throw DuplicatePoints("capacity_estimate: coincident points");
            acc += std::log(d);
        }
    return std::exp(2.0 * acc / (double(n) * double(n - 1)));
}

std::vector<double> capacity_refinement(std::span<const cplx> pts) {
    const size_t n = pts.size();
    if (n < 2) throw Error("capacity_refinement: need at least 2 points");
    std::vector<double> out;
    out.reserve(n - 1);
    double acc = 0.0;
    for (size_t m = 2; m <= n; ++m) {
        for (size_t j = 0; j + 1 < m; ++j) {
            double d = std::abs(pts[j] - pts[m - 1]);
            if (d == 0.0) throw DuplicatePoints("capacity_refinement: coincident points");
            acc += std::log(d);
        }
        out.push_back(std::exp(2.0 * acc / (double(m) * double(m - 1))));
    }
    return out;
}

DiscreteMeasure equilibrium_estimate(const CompactSetModel& set, int n) {
    if (n < 16) throw Error("equilibrium_estimate: n >= 16 required");
    PointCloud cands = set.boundary_samples(4096);
    return DiscreteMeasure::uniform(leja_points(cands, n));
}

namespace {

// branch of the inverse Joukowski with |u| >= 1: z = (u + 1/u)/2
double joukowski_log_abs(cplx w) {
    cplx s = std::sqrt(w * w - 1.0);
    double m = std::max(std::abs(w + s), std::abs(w - s));
    return std::log(std::max(m, 1.0));
}

}  // namespace

GreenEvaluator green_reference(const AnalyticReference& set) {
    GreenEvaluator ev;
    ev.accuracy_bound = 1e-12;
    ev.domain = bounding_box(set).padded(16.0);
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Disc> || std::is_same_v<T, Circle>) {
                cplx c = s.center;
                double r = s.radius;
                if (r <= 0.0) throw UnsupportedShape("green_reference: radius must be > 0");
                ev.fn = [c, r](cplx z) { return std::max(0.0, std::log(std::abs(z - c) / r)); };
            } else if constexpr (std::is_same_v<T, Segment>) {
                cplx a = s.a, b = s.b;
                if (a == b) throw UnsupportedShape("green_reference: degenerate segment");
                ev.fn = [a, b](cplx z) {
                    cplx zeta = (2.0 * z - (a + b)) / (b - a);
                    return joukowski_log_abs(zeta);
                };
            } else {
                double sx = s.semi_x, sy = s.semi_y;
                cplx c = s.center;
                if (sx <= 0.0 && sy <= 0.0)
                    throw UnsupportedShape("green_reference: degenerate ellipse");
                if (sx == sy) {
                    double r = sx;
                    ev.fn = [c, r](cplx z) { return std::max(0.0, std::log(std::abs(z - c) / r)); };
                    return;
                }
                bool swap = sy > sx;
                double A = swap ? sy : sx, B = swap ? sx : sy;
                double f = std::sqrt(A * A - B * B);
                double lrho = std::log((A + B) / f);
                ev.fn = [c, f, lrho, swap](cplx z) {
                    cplx w = z - c;
                    if (swap) w = cplx(w.imag(), -w.real());  // rotate major axis onto x
                    return std::max(0.0, joukowski_log_abs(w / f) - lrho);
                };
            }
        },
        set);
    return ev;
}

ModulusResult modulus_of_continuity(const GreenEvaluator& g, const CompactSetModel& set,
                                    double delta) {
    if (delta <= 0.0) throw Error("modulus_of_continuity: delta must be > 0");
    PointCloud boundary = set.boundary_samples(1024);
    const int angles = 64;
    double val = 0.0;
    for (cplx p : boundary) {
        for (int a = 0; a < angles; ++a) {
            double th = 2.0 * std::numbers::pi * a / angles;
            val = std::max(val, g(p + delta * cplx(std::cos(th), std::sin(th))));
        }
    }
    double spacing = 0.0;
    for (size_t i = 0; i + 1 < boundary.size(); ++i)
        spacing = std::max(spacing, std::abs(boundary[i + 1] - boundary[i]));
    double gap = 2.0 * std::numbers::pi * delta / angles + spacing;
    return {val, gap};
}

}  // namespace julpot
