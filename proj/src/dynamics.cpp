#include "julpot/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace julpot {

namespace {

double coeff_abs_sum(const Polynomial& p) {
    double s = 0.0;
    for (cplx a : p.coeffs()) s += std::abs(a);
    return s;
}

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace

double escape_radius(const Polynomial& p) {
    if (p.degree() < 2) throw DegreeTooLow("escape_radius: degree >= 2 required");
    return (1.0 + coeff_abs_sum(p)) / std::abs(p.leading());
}

double cap_julia(const Polynomial& p) {
    const int n = p.degree();
    if (n < 2) throw DegreeTooLow("cap_julia: degree >= 2 required");
    return std::pow(std::abs(p.leading()), -1.0 / double(n - 1));
}

GreenValue green_dynamical(const Polynomial& p, cplx z, double escape_threshold, int max_iter) {
    const int d = p.degree();
    if (d < 2) throw DegreeTooLow("green_dynamical: degree >= 2 required");
    if (max_iter < 1 || max_iter > 1000)
        throw Error("green_dynamical: max_iter must be in [1, 1000]");
    const double an = std::abs(p.leading());
    const double s_all = coeff_abs_sum(p);
    const double s_low = s_all - an;
    const double c_bound = std::log1p(s_all / an);
    const double rp = (1.0 + s_all) / an;
    const double thr = std::max(escape_threshold, rp);
    const double log_thr = std::log(thr);
    const double log_an = std::log(an);

    cplx w = z;
    double log_mag = 0.0;   // log|w| once the orbit outgrows the value domain
    bool log_domain = false;
    double slack = 0.0;     // bound contribution of neglected low-order terms
    double dk = 1.0;        // d^k
    bool beyond_rp = false;

    for (int k = 0;; ++k) {
        double aw = log_domain ? 0.0 : std::abs(w);
        double mag = log_domain ? log_mag : (aw > 0.0 ? std::log(aw) : -1e308);
        if (mag > log_thr) {
            double val = (mag + log_an / double(d - 1)) / dk;
            return {std::max(val, 0.0), c_bound / dk + slack, k, true};
        }
        if (!log_domain && aw > rp) beyond_rp = true;
        if (k == max_iter) break;
        // one application of p, in the value domain while that cannot overflow
        if (!log_domain && log_an + d * std::max(mag, 0.0) > 680.0) {
            log_domain = true;
            log_mag = mag;
        }
        if (log_domain) {
            slack += std::log1p(s_low / (an * std::exp(std::min(log_mag, 700.0)))) / (dk * d);
            log_mag = d * log_mag + log_an;
        } else {
            w = p(w);
        }
        dk = std::min(dk * d, 1e307);
    }
    if (beyond_rp)
        throw Indeterminate(
            "green_dynamical: orbit beyond the escape radius but below the threshold; "
            "retry with a larger max_iter");
    return {0.0, (c_bound + std::max(std::log(rp), 0.0)) / dk, max_iter, false};
}

GreenEvaluator green_dynamical_evaluator(const Polynomial& p, double escape_threshold,
                                         int max_iter) {
    GreenEvaluator ev;
    const int d = p.degree();
    const double an = std::abs(p.leading());
    const double s_low = coeff_abs_sum(p) - an;
    const double thr = std::max(escape_threshold, escape_radius(p));
    // uniform bound: escaped points carry the neglected-tail error, bounded
    // points carry the slow-orbit residual
    ev.accuracy_bound = s_low / (an * thr * double(d - 1)) +
                        (std::log1p((s_low + an) / an) + std::max(std::log(thr), 0.0)) *
                            std::pow(double(d), -double(std::min(max_iter, 64)));
    ev.domain = julia_window(p, 16.0);
    ev.fn = [p, escape_threshold, max_iter](cplx z) {
        int budget = max_iter;
        for (int attempt = 0; attempt < 4; ++attempt) {
            try {
                return green_dynamical(p, z, escape_threshold, budget).value;
            } catch (const Indeterminate&) {
                if (budget >= 1000) throw;
                budget = std::min(budget * 4, 1000);
            }
        }
        return green_dynamical(p, z, escape_threshold, budget).value;
    };
    return ev;
}

Box julia_window(const Polynomial& p, double pad) {
    double r = escape_radius(p) * (1.0 + pad);
    return {-r, r, -r, r};
}

GridSet filled_julia_grid(const Polynomial& p, const Box& window, int resolution,
                          int max_iter, double escape_threshold) {
    const double rp = escape_radius(p);
    if (!window.contains(Box{-rp, rp, -rp, rp}))
        throw WindowTooSmall("filled_julia_grid: window must contain D(0, R_p)");
    const double thr = std::max(escape_threshold, rp);
    GridSet g = GridSet::over(window, resolution);
    for (int iy = 0; iy < g.height(); ++iy) {
        for (int ix = 0; ix < g.width(); ++ix) {
            cplx w = g.cell_center(ix, iy);
            bool escaped = false;
            for (int k = 0; k < max_iter; ++k) {
                // NaN-safe: anything not provably <= thr counts as escaped
                if (!(std::abs(w) <= thr)) { escaped = true; break; }
                w = p(w);
            }
            if (!escaped && !(std::abs(w) <= thr)) escaped = true;
            g.set(ix, iy, !escaped);
        }
    }
    return g;
}

cplx brolin_basepoint(const Polynomial& p) { return cplx(2.0 * escape_radius(p), 0.0); }

DiscreteMeasure brolin_sample(const Polynomial& p, cplx z0, int depth, BrolinMode mode,
                              int samples, uint64_t seed) {
    const int d = p.degree();
    if (d < 2) throw DegreeTooLow("brolin_sample: degree >= 2 required");
    if (depth < 1) throw Error("brolin_sample: depth >= 1 required");
    if (!green_dynamical(p, z0, kEscapeThreshold, 512).escaped)
        throw Error("brolin_sample: z0 must lie outside the filled Julia set");

    if (mode == BrolinMode::FullTree) {
        if (double(depth) * std::log(double(d)) > std::log(1e6) + 1e-9)
            throw TreeTooLarge("brolin_sample: d^depth exceeds 1e6; use random-path mode");
        PointCloud level{z0};
        for (int k = 0; k < depth; ++k) {
            PointCloud next;
            next.reserve(level.size() * d);
            for (cplx w : level) {
                auto pre = preimages(p, w);
                next.insert(next.end(), pre.begin(), pre.end());
            }
            level = std::move(next);
        }
        return DiscreteMeasure::uniform(std::move(level));
    }

    if (samples < 1) throw Error("brolin_sample: samples >= 1 required");
    PointCloud endpoints;
    endpoints.reserve(samples);
    for (int i = 0; i < samples; ++i) {
        uint64_t state = splitmix64(seed ^ (0xa0761d6478bd642full * (uint64_t(i) + 1)));
        cplx w = z0;
        for (int k = 0; k < depth; ++k) {
            auto pre = preimages(p, w);
            state = splitmix64(state);
            w = pre[state % pre.size()];
        }
        endpoints.push_back(w);
    }
    return DiscreteMeasure::uniform(std::move(endpoints));
}

PointCloud julia_boundary(const GridSet& k) {
    PointCloud pts = k.boundary_points();
    if (pts.empty()) throw EmptySet("julia_boundary: grid has no occupied cells");
    return pts;
}

}  // namespace julpot
