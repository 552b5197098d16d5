#include "julpot/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace julpot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---- small dense solvers (partial pivoting) ----

std::vector<double> solve_real(std::vector<double> a, std::vector<double> b) {
    const int m = int(b.size());
    for (int col = 0; col < m; ++col) {
        int piv = col;
        for (int r = col + 1; r < m; ++r)
            if (std::abs(a[size_t(r) * m + col]) > std::abs(a[size_t(piv) * m + col])) piv = r;
        if (a[size_t(piv) * m + col] == 0.0)
            throw ExchangeStalled("linear system singular");
        if (piv != col) {
            for (int k = col; k < m; ++k) std::swap(a[size_t(piv) * m + k], a[size_t(col) * m + k]);
            std::swap(b[piv], b[col]);
        }
        for (int r = col + 1; r < m; ++r) {
            double f = a[size_t(r) * m + col] / a[size_t(col) * m + col];
            if (f == 0.0) continue;
            for (int k = col; k < m; ++k) a[size_t(r) * m + k] -= f * a[size_t(col) * m + k];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(m);
    for (int r = m - 1; r >= 0; --r) {
        double s = b[r];
        for (int k = r + 1; k < m; ++k) s -= a[size_t(r) * m + k] * x[k];
        x[r] = s / a[size_t(r) * m + r];
    }
    return x;
}

std::vector<cplx> solve_cplx(std::vector<cplx> a, std::vector<cplx> b) {
    const int m = int(b.size());
    for (int col = 0; col < m; ++col) {
        int piv = col;
        for (int r = col + 1; r < m; ++r)
            if (std::abs(a[size_t(r) * m + col]) > std::abs(a[size_t(piv) * m + col])) piv = r;
        if (std::abs(a[size_t(piv) * m + col]) == 0.0)
            throw IllConditioned("linear system singular", kInf);
        if (piv != col) {
            for (int k = col; k < m; ++k) std::swap(a[size_t(piv) * m + k], a[size_t(col) * m + k]);
            std::swap(b[piv], b[col]);
        }
        for (int r = col + 1; r < m; ++r) {
            cplx f = a[size_t(r) * m + col] / a[size_t(col) * m + col];
            if (f == cplx(0.0)) continue;
            for (int k = col; k < m; ++k) a[size_t(r) * m + k] -= f * a[size_t(col) * m + k];
            b[r] -= f * b[col];
        }
    }
    std::vector<cplx> x(m);
    for (int r = m - 1; r >= 0; --r) {
        cplx s = b[r];
        for (int k = r + 1; k < m; ++k) s -= a[size_t(r) * m + k] * x[k];
        x[r] = s / a[size_t(r) * m + r];
    }
    return x;
}

// ---- Chebyshev utilities ----

double cheb_t(int n, double y) {
    if (std::abs(y) <= 1.0) return std::cos(n * std::acos(y));
    double s = (y < 0.0 && (n % 2)) ? -1.0 : 1.0;
    return s * std::cosh(n * std::acosh(std::abs(y)));
}

// values T_0..T_K at y
void cheb_row(int K, double y, std::vector<double>& out) {
    out.resize(K + 1);
    out[0] = 1.0;
    if (K >= 1) out[1] = y;
    for (int k = 2; k <= K; ++k) out[k] = 2.0 * y * out[k - 1] - out[k - 2];
}

double clenshaw(std::span<const double> c, double y) {
    double b1 = 0.0, b2 = 0.0;
    for (int k = int(c.size()) - 1; k >= 1; --k) {
        double b0 = c[k] + 2.0 * y * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    return (c.empty() ? 0.0 : c[0]) + y * b1 - b2;
}

// monomial coefficient vectors of T_0..T_K evaluated at the linear map u*z + v
std::vector<std::vector<cplx>> cheb_monomials(int K, cplx u, cplx v) {
    std::vector<std::vector<cplx>> t(K + 1);
    t[0] = {cplx(1.0)};
    if (K >= 1) t[1] = {v, u};
    for (int k = 2; k <= K; ++k) {
        std::vector<cplx> next(k + 1, cplx(0.0));
        for (size_t j = 0; j < t[k - 1].size(); ++j) {
            next[j] += 2.0 * v * t[k - 1][j];
            next[j + 1] += 2.0 * u * t[k - 1][j];
        }
        for (size_t j = 0; j < t[k - 2].size(); ++j) next[j] -= t[k - 2][j];
        t[k] = std::move(next);
    }
    return t;
}

// ---- discrete Remez on a real mesh ----

Polynomial remez_real(const std::vector<double>& xs_in, int n) {
    std::vector<double> xs = xs_in;
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    const int m = int(xs.size());
    if (m < n + 1) throw ExchangeStalled("chebyshev_monic: mesh too small after dedup");
    const double lo = xs.front(), hi = xs.back();
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    if (half == 0.0) throw ExchangeStalled("chebyshev_monic: degenerate mesh");

    // normalized problem: minimize max_mesh |T_n(y) + s(y)|, deg s < n;
    // the monic result is 2 (half/2)^n (T_n + s) pulled back to x
    std::vector<double> ys(m), tn(m);
    for (int i = 0; i < m; ++i) {
        ys[i] = std::clamp((xs[i] - mid) / half, -1.0, 1.0);
        tn[i] = cheb_t(n, ys[i]);
    }

    // initial reference: mesh points nearest the T_n extrema
    std::vector<int> ref;
    for (int j = 0; j <= n; ++j) {
        double target = std::cos((n - j) * std::numbers::pi / n);
        int idx = int(std::lower_bound(ys.begin(), ys.end(), target) - ys.begin());
        if (idx >= m) idx = m - 1;
        if (idx > 0 && std::abs(ys[idx - 1] - target) < std::abs(ys[idx] - target)) --idx;
        ref.push_back(idx);
    }
    std::sort(ref.begin(), ref.end());
    for (size_t j = 1; j < ref.size(); ++j)
        if (ref[j] <= ref[j - 1]) ref[j] = std::min(ref[j - 1] + 1, m - 1);
    for (int j = int(ref.size()) - 2; j >= 0; --j)
        if (ref[j] >= ref[j + 1]) ref[j] = std::max(ref[j + 1] - 1, 0);

    std::vector<double> s_coef(n, 0.0), row;
    double e_abs = 0.0, maxr = kInf;
    std::vector<double> resid(m);

    for (int iter = 0; iter < 100; ++iter) {
        // levelled system on the reference: sum_k s_k T_k(y_i) - sigma_i E = -T_n(y_i)
        std::vector<double> a(size_t(n + 1) * (n + 1)), b(n + 1);
        for (int i = 0; i <= n; ++i) {
            cheb_row(n - 1, ys[ref[i]], row);
            for (int k = 0; k < n; ++k) a[size_t(i) * (n + 1) + k] = row[k];
            a[size_t(i) * (n + 1) + n] = (i % 2 == 0) ? -1.0 : 1.0;
            b[i] = -tn[ref[i]];
        }
        auto sol = solve_real(std::move(a), std::move(b));
        s_coef.assign(sol.begin(), sol.begin() + n);
        e_abs = std::abs(sol[n]);

        maxr = 0.0;
        for (int i = 0; i < m; ++i) {
            resid[i] = tn[i] + clenshaw(s_coef, ys[i]);
            maxr = std::max(maxr, std::abs(resid[i]));
        }
        if (maxr <= e_abs * (1.0 + 1e-9)) break;

        // one extremum per sign run
        std::vector<int> cand;
        int run_sign = 0, run_best = -1;
        for (int i = 0; i < m; ++i) {
            int s = (resid[i] > 0.0) ? 1 : (resid[i] < 0.0 ? -1 : run_sign);
            if (s != run_sign && s != 0) {
                if (run_best >= 0) cand.push_back(run_best);
                run_sign = s;
                run_best = i;
            } else if (run_best < 0 || std::abs(resid[i]) > std::abs(resid[run_best])) {
                run_best = i;
            }
        }
        if (run_best >= 0) cand.push_back(run_best);
        if (int(cand.size()) < n + 1) break;  // cannot alternate further; certify below
        while (int(cand.size()) > n + 1) {
            if (std::abs(resid[cand.front()]) < std::abs(resid[cand.back()])) cand.erase(cand.begin());
            else cand.pop_back();
        }
        if (cand == ref) break;
        ref = std::move(cand);
    }

    if (!(e_abs > 0.0) || maxr > 1.01 * e_abs)
        throw ExchangeStalled("chebyshev_monic: equioscillation certificate failed");

    // pull back: p(x) = scale * (T_n(y) + s(y)), y = (x - mid)/half
    const double scale = 2.0 * std::pow(half / 2.0, n);
    auto tmono = cheb_monomials(n, cplx(1.0 / half), cplx(-mid / half));
    std::vector<cplx> coeffs(size_t(n) + 1, cplx(0.0));
    for (int k = 0; k < n; ++k)
        for (size_t j = 0; j < tmono[k].size(); ++j) coeffs[j] += scale * s_coef[k] * tmono[k][j];
    for (size_t j = 0; j < tmono[n].size(); ++j) coeffs[j] += scale * tmono[n][j];
    coeffs[n] = 1.0;  // monic by construction; snap away rounding
    return Polynomial(std::move(coeffs));
}

// ---- Lawson iteratively reweighted least squares on a complex mesh ----

Polynomial lawson_complex(const PointCloud& mesh, int n) {
    const int m = int(mesh.size());
    cplx mu = 0.0;
    for (cplx z : mesh) mu += z;
    mu /= double(m);
    double rho = 0.0;
    for (cplx z : mesh) rho = std::max(rho, std::abs(z - mu));
    if (rho == 0.0) throw ExchangeStalled("chebyshev_monic: degenerate mesh");

    // phi_k = ((z - mu)/rho)^k, target phi_n
    std::vector<std::vector<cplx>> phi(m);
    for (int i = 0; i < m; ++i) {
        phi[i].resize(n + 1);
        cplx base = (mesh[i] - mu) / rho;
        phi[i][0] = 1.0;
        for (int k = 1; k <= n; ++k) phi[i][k] = phi[i][k - 1] * base;
    }

    std::vector<double> w(m, 1.0 / m);
    std::vector<cplx> best_c(n, 0.0);
    double best_max = kInf, prev_max = kInf;
    for (int iter = 0; iter < 300; ++iter) {
        std::vector<cplx> g(size_t(n) * n, cplx(0.0)), rhs(n, cplx(0.0));
        for (int i = 0; i < m; ++i) {
            for (int a = 0; a < n; ++a) {
                cplx wa = w[i] * std::conj(phi[i][a]);
                rhs[a] += wa * phi[i][n];
                for (int k = 0; k < n; ++k) g[size_t(a) * n + k] += wa * phi[i][k];
            }
        }
        std::vector<cplx> c;
        try {
            c = solve_cplx(std::move(g), std::move(rhs));
        } catch (const IllConditioned&) {
            throw ExchangeStalled("chebyshev_monic: Lawson normal equations singular");
        }
        double maxr = 0.0, wsum = 0.0;
        std::vector<double> r(m);
        for (int i = 0; i < m; ++i) {
            cplx q = 0.0;
            for (int k = 0; k < n; ++k) q += c[k] * phi[i][k];
            r[i] = std::abs(phi[i][n] - q);
            maxr = std::max(maxr, r[i]);
        }
        if (maxr < best_max) { best_max = maxr; best_c = c; }
        if (iter > 10 && std::abs(prev_max - maxr) <= 1e-12 * std::max(1.0, maxr)) break;
        prev_max = maxr;
        for (int i = 0; i < m; ++i) { w[i] *= std::max(r[i], 1e-300); wsum += w[i]; }
        if (wsum <= 0.0) break;
        for (double& wi : w) wi /= wsum;
    }

    // p = rho^n (phi_n - sum c_k phi_k) expanded in z
    std::vector<std::vector<cplx>> pw(n + 1);
    pw[0] = {cplx(1.0)};
    for (int k = 1; k <= n; ++k) {
        pw[k].assign(k + 1, cplx(0.0));
        for (size_t j = 0; j < pw[k - 1].size(); ++j) {
            pw[k][j] += pw[k - 1][j] * (-mu / rho);
            pw[k][j + 1] += pw[k - 1][j] / rho;
        }
    }
    std::vector<cplx> coeffs(size_t(n) + 1, cplx(0.0));
    double scale = std::pow(rho, n);
    for (size_t j = 0; j <= size_t(n); ++j) coeffs[j] += scale * pw[n][j];
    for (int k = 0; k < n; ++k)
        for (size_t j = 0; j < pw[k].size(); ++j) coeffs[j] -= scale * best_c[k] * pw[k][j];
    coeffs[n] = 1.0;
    return Polynomial(std::move(coeffs));
}

}  // namespace

Polynomial chebyshev_monic(const PointCloud& mesh, int n) {
    if (n < 1) throw Error("chebyshev_monic: n >= 1 required");
    if (int(mesh.size()) < 8 * n)
        throw Error("chebyshev_monic: mesh must have at least 8n points");
    double scale = 0.0;
    for (cplx z : mesh) scale = std::max(scale, std::abs(z));
    bool real_mesh = true;
    for (cplx z : mesh)
        if (std::abs(z.imag()) > 1e-12 * std::max(1.0, scale)) { real_mesh = false; break; }
    if (real_mesh) {
        std::vector<double> xs(mesh.size());
        for (size_t i = 0; i < mesh.size(); ++i) xs[i] = mesh[i].real();
        return remez_real(xs, n);
    }
    return lawson_complex(mesh, n);
}

LejaMonic leja_monic(const CompactSetModel& e, int n) {
    if (n < 1) throw Error("leja_monic: n >= 1 required");
    PointCloud cands = e.boundary_samples(4096);
    auto pts = leja_points(cands, n);
    Polynomial p = Polynomial::from_roots(pts);
    return {p, sup_norm(p, cands), std::move(pts)};
}

Polynomial faber(const AnalyticReference& e, int n) {
    if (n < 0) throw Error("faber: n >= 0 required");
    if (n == 0) return Polynomial({cplx(1.0)});
    return std::visit(
        [&](const auto& s) -> Polynomial {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Disc> || std::is_same_v<T, Circle>) {
                if (s.radius <= 0.0) throw UnsupportedShape("faber: radius must be > 0");
                // ((z - c)/r)^n by direct expansion
                std::vector<cplx> cur{cplx(1.0)};
                for (int k = 0; k < n; ++k) {
                    std::vector<cplx> next(cur.size() + 1, cplx(0.0));
                    for (size_t j = 0; j < cur.size(); ++j) {
                        next[j] += cur[j] * (-s.center / s.radius);
                        next[j + 1] += cur[j] / s.radius;
                    }
                    cur = std::move(next);
                }
                return Polynomial(std::move(cur));
            } else if constexpr (std::is_same_v<T, Segment>) {
                if (s.a == s.b) throw UnsupportedShape("faber: degenerate segment");
                cplx u = 2.0 / (s.b - s.a), v = -(s.a + s.b) / (s.b - s.a);
                auto t = cheb_monomials(n, u, v);
                std::vector<cplx> c(t[n]);
                for (auto& x : c) x *= 2.0;
                return Polynomial(std::move(c));
            } else {
                double sx = s.semi_x, sy = s.semi_y;
                if (sx <= 0.0 && sy <= 0.0) throw UnsupportedShape("faber: degenerate ellipse");
                if (sx == sy) return faber(Disc{s.center, sx}, n);
                bool swap = sy > sx;
                double A = swap ? sy : sx, B = swap ? sx : sy;
                double f = std::sqrt(A * A - B * B), rho = (A + B) / f;
                cplx u = swap ? cplx(0.0, -1.0) / f : cplx(1.0 / f);
                cplx v = -u * s.center;
                auto t = cheb_monomials(n, u, v);
                std::vector<cplx> c(t[n]);
                double scale = 2.0 / std::pow(rho, n);
                for (auto& x : c) x *= scale;
                return Polynomial(std::move(c));
            }
        },
        e);
}

OrthonormalResult orthonormal(const DiscreteMeasure& tau, int n) {
    if (n < 0) throw Error("orthonormal: n >= 0 required");
    const auto& pts = tau.points();
    const auto& w = tau.weights();
    const int m = int(pts.size());
    if (m < std::max(1, 4 * n)) throw Error("orthonormal: need at least 4n quadrature nodes");

    cplx mu = 0.0;
    for (int i = 0; i < m; ++i) mu += w[i] * pts[i];
    double rho = 0.0;
    for (cplx z : pts) rho = std::max(rho, std::abs(z - mu));
    if (rho == 0.0) throw IllConditioned("orthonormal: degenerate support", kInf);

    // Gram-Schmidt (two passes) on sqrt(w)-weighted powers of (z - mu)/rho,
    // tracking coefficient vectors in that basis
    std::vector<std::vector<cplx>> q(n + 1), qc(n + 1);
    std::vector<cplx> base(m), v(m);
    for (int i = 0; i < m; ++i) base[i] = (pts[i] - mu) / rho;
    std::vector<cplx> cur(m, 1.0);
    for (int k = 0; k <= n; ++k) {
        if (k > 0)
            for (int i = 0; i < m; ++i) cur[i] *= base[i];
        for (int i = 0; i < m; ++i) v[i] = std::sqrt(w[i]) * cur[i];
        double n0 = 0.0;
        for (cplx x : v) n0 += std::norm(x);
        n0 = std::sqrt(n0);
        std::vector<cplx> c(size_t(k) + 1, cplx(0.0));
        c[k] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (int j = 0; j < k; ++j) {
                cplx alpha = 0.0;
                for (int i = 0; i < m; ++i) alpha += v[i] * std::conj(q[j][i]);
                for (int i = 0; i < m; ++i) v[i] -= alpha * q[j][i];
                for (size_t t = 0; t < qc[j].size(); ++t) c[t] -= alpha * qc[j][t];
            }
        }
        double nrm = 0.0;
        for (cplx x : v) nrm += std::norm(x);
        nrm = std::sqrt(nrm);
        if (!(nrm > 1e-13 * std::max(n0, 1e-300)))
            throw IllConditioned("orthonormal: Gram matrix numerically singular",
                                 n0 / std::max(nrm, 1e-300));
        q[k].resize(m);
        for (int i = 0; i < m; ++i) q[k][i] = v[i] / nrm;
        qc[k] = std::move(c);
        for (auto& x : qc[k]) x /= nrm;
    }

    // expand from the scaled basis to monomials
    std::vector<std::vector<cplx>> pw(n + 1);
    pw[0] = {cplx(1.0)};
    for (int k = 1; k <= n; ++k) {
        pw[k].assign(k + 1, cplx(0.0));
        for (size_t j = 0; j < pw[k - 1].size(); ++j) {
            pw[k][j] += pw[k - 1][j] * (-mu / rho);
            pw[k][j + 1] += pw[k - 1][j] / rho;
        }
    }
    std::vector<cplx> mono(size_t(n) + 1, cplx(0.0));
    for (int k = 0; k <= n; ++k)
        for (size_t j = 0; j < pw[k].size(); ++j) mono[j] += qc[n][k] * pw[k][j];

    cplx lead = mono[n];
    if (lead == cplx(0.0)) throw IllConditioned("orthonormal: zero leading coefficient", kInf);
    cplx phase = lead / std::abs(lead);
    for (auto& x : mono) x /= phase;
    return {Polynomial(std::move(mono)), std::abs(lead)};
}

double analytic_capacity(const AnalyticReference& e) {
    return std::visit(
        [](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Disc> || std::is_same_v<T, Circle>) return s.radius;
            else if constexpr (std::is_same_v<T, Segment>) return std::abs(s.b - s.a) / 4.0;
            else return 0.5 * (s.semi_x + s.semi_y);
        },
        e);
}

DiscreteMeasure default_quadrature(const AnalyticReference& e, int nodes) {
    nodes = std::max(nodes, 16);
    PointCloud pts;
    pts.reserve(nodes);
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Disc> || std::is_same_v<T, Circle>) {
                for (int i = 0; i < nodes; ++i) {
                    double th = 2.0 * std::numbers::pi * i / nodes;
                    pts.push_back(s.center + s.radius * cplx(std::cos(th), std::sin(th)));
                }
            } else if constexpr (std::is_same_v<T, Segment>) {
                cplx mid = 0.5 * (s.a + s.b), half = 0.5 * (s.b - s.a);
                for (int i = 0; i < nodes; ++i) {
                    double th = (2.0 * i + 1.0) * std::numbers::pi / (2.0 * nodes);
                    pts.push_back(mid + half * std::cos(th));
                }
            } else {
                double sx = s.semi_x, sy = s.semi_y;
                bool swap = sy > sx;
                double A = swap ? sy : sx, B = swap ? sx : sy;
                if (sx == sy) {
                    for (int i = 0; i < nodes; ++i) {
                        double th = 2.0 * std::numbers::pi * i / nodes;
                        pts.push_back(s.center + sx * cplx(std::cos(th), std::sin(th)));
                    }
                    return;
                }
                double f = std::sqrt(A * A - B * B), rho = (A + B) / f;
                for (int i = 0; i < nodes; ++i) {
                    double th = 2.0 * std::numbers::pi * i / nodes;
                    cplx u = rho * cplx(std::cos(th), std::sin(th));
                    cplx z = 0.5 * f * (u + 1.0 / u);
                    if (swap) z = cplx(-z.imag(), z.real());  // undo the axis rotation
                    pts.push_back(s.center + z);
                }
            }
        },
        e);
    return DiscreteMeasure::uniform(std::move(pts));
}

namespace {

struct HullDistance {
    explicit HullDistance(const CompactSetModel& e) {
        if (auto* r = e.analytic()) {
            if (auto* c = std::get_if<Circle>(r)) filled_ = Disc{c->center, c->radius};
            else filled_ = *r;
        } else if (auto* g = e.grid()) {
            hull_.emplace(polynomial_hull(*g));
            idx_.emplace(hull_->occupied_centers());
        } else {
            idx_.emplace(*e.cloud());
        }
    }
    double operator()(cplx z) const {
        if (filled_) return distance_to(*filled_, z);
        if (hull_ && hull_->contains(z)) return 0.0;
        return idx_->distance(z);
    }
    std::optional<AnalyticReference> filled_;
    std::optional<GridSet> hull_;
    std::optional<NearestNeighborIndex> idx_;
};

double log_abs_poly(const Polynomial& p, cplx z) {
    double a = std::abs(p(z));
    return a > 0.0 ? std::log(a) : -kInf;
}

// log ||p||_{L^q(tau)} via logsumexp so huge coefficients survive
double log_lp_norm(const Polynomial& p, const DiscreteMeasure& tau, double q) {
    const auto& pts = tau.points();
    const auto& w = tau.weights();
    double mx = -kInf;
    std::vector<double> ls(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) {
        ls[i] = log_abs_poly(p, pts[i]);
        mx = std::max(mx, ls[i]);
    }
    if (q == kInf || mx == -kInf) return mx;
    double acc = 0.0;
    for (size_t i = 0; i < pts.size(); ++i) acc += w[i] * std::exp(q * (ls[i] - mx));
    return mx + std::log(acc) / q;
}

double log_sup_norm(const Polynomial& p, const PointCloud& mesh) {
    double mx = -kInf;
    for (cplx z : mesh) mx = std::max(mx, log_abs_poly(p, z));
    return mx;
}

bool trend_converged(double first, double last) {
    return std::abs(last) <= 0.05 && (std::abs(last) < std::abs(first) || std::abs(first) <= 0.05);
}

}  // namespace

double hull_distance(const CompactSetModel& e, cplx z) { return HullDistance(e)(z); }

double lp_norm(const Polynomial& p, const DiscreteMeasure& tau, double q) {
    return std::exp(log_lp_norm(p, tau, q));
}

double sup_norm(const Polynomial& p, const PointCloud& mesh) {
    return std::exp(log_sup_norm(p, mesh));
}

Polynomial PolynomialFamily::operator()(int n) const {
    Polynomial p = generator(n);
    if (p.degree() != n)
        throw Error("PolynomialFamily: generator(" + std::to_string(n) +
                    ") has degree " + std::to_string(p.degree()));
    return p;
}

namespace {

uint64_t mix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

double unit_double(uint64_t& state) {
    state = mix64(state);
    return double(state >> 11) * 0x1.0p-53;
}

PolynomialFamily circle_family_base(std::string name) {
    PolynomialFamily f{std::move(name),
                       {},
                       CompactSetModel(Circle{cplx(0.0), 1.0}),
                       default_quadrature(Circle{cplx(0.0), 1.0}),
                       2.0,
                       1.0,
                       0.0,
                       false};
    return f;
}

}  // namespace

PolynomialFamily family_builtin(const std::string& name, const FamilyParams& params) {
    if (name == "power_plus_c") {
        PolynomialFamily f = circle_family_base(name);
        cplx c = params.c;
        f.generator = [c](int n) {
            if (n < 1) throw Error("power_plus_c: n >= 1");
            std::vector<cplx> coef(size_t(n) + 1, cplx(0.0));
            coef[0] = c;
            coef[n] = 1.0;
            return Polynomial(std::move(coef));
        };
        return f;
    }
    if (name == "scaled_power") {
        PolynomialFamily f = circle_family_base(name);
        f.generator = [](int n) {
            if (n < 1 || n > 31) throw Error("scaled_power: n in [1, 31] (2^(n^2) overflows past that)");
            return Polynomial::monomial(n, std::pow(2.0, double(n) * double(n)));
        };
        return f;
    }
    if (name == "split_zero") {
        PolynomialFamily f = circle_family_base(name);
        auto cn = params.cn ? params.cn : [](int n) { return cplx(double(n), 0.0); };
        f.generator = [cn](int n) {
            if (n < 1) throw Error("split_zero: n >= 1");
            std::vector<cplx> coef(size_t(n) + 1, cplx(0.0));
            coef[n] = 1.0;
            coef[n - 1] = -cn(n);
            return Polynomial(std::move(coef));
        };
        return f;
    }
    if (name == "bounded_coeffs") {
        PolynomialFamily f = circle_family_base(name);
        double M = params.bound;
        uint64_t seed = params.seed;
        f.generator = [M, seed](int n) {
            if (n < 1) throw Error("bounded_coeffs: n >= 1");
            std::vector<cplx> coef(size_t(n) + 1, cplx(0.0));
            uint64_t state = mix64(seed ^ (0xa0761d6478bd642full * (uint64_t(n) + 1)));
            for (int j = 0; j < n; ++j) {
                double r = M * std::sqrt(unit_double(state));
                double th = 2.0 * std::numbers::pi * unit_double(state);
                coef[j] = r * cplx(std::cos(th), std::sin(th));
            }
            coef[n] = 1.0;
            return Polynomial(std::move(coef));
        };
        return f;
    }
    throw UnknownFamily("family_builtin: unknown family '" + name + "'");
}

PolynomialFamily family_chebyshev(const Segment& e, int mesh_size) {
    cplx mid = 0.5 * (e.a + e.b), half = 0.5 * (e.b - e.a);
    PointCloud mesh;
    mesh.reserve(mesh_size);
    for (int i = 0; i < mesh_size; ++i) {
        double th = (2.0 * i + 1.0) * std::numbers::pi / (2.0 * mesh_size);
        mesh.push_back(mid + half * std::cos(th));
    }
    PolynomialFamily f{"chebyshev",
                       [mesh](int n) { return chebyshev_monic(mesh, n); },
                       CompactSetModel(e),
                       default_quadrature(e),
                       2.0,
                       analytic_capacity(e),
                       0.0,
                       false};
    return f;
}

PolynomialFamily family_leja(const AnalyticReference& e) {
    CompactSetModel model(e);
    PointCloud cands = model.boundary_samples(4096);
    PolynomialFamily f{"leja",
                       [cands](int n) {
                           return Polynomial::from_roots(leja_points(cands, n));
                       },
                       model,
                       default_quadrature(e),
                       2.0,
                       analytic_capacity(e),
                       0.0,
                       false};
    return f;
}

PolynomialFamily family_faber(const AnalyticReference& e) {
    PolynomialFamily f{"faber",
                       [e](int n) { return faber(e, n); },
                       CompactSetModel(e),
                       default_quadrature(e),
                       2.0,
                       analytic_capacity(e),
                       0.0,
                       false};
    return f;
}

PolynomialFamily family_orthonormal(const AnalyticReference& e) {
    DiscreteMeasure tau = default_quadrature(e);
    PolynomialFamily f{"orthonormal",
                       [tau](int n) { return orthonormal(tau, n).poly; },
                       CompactSetModel(e),
                       tau,
                       2.0,
                       analytic_capacity(e),
                       0.0,
                       true};
    return f;
}

MinimalityReport minimality_report(const PolynomialFamily& f, std::span<const int> n_list) {
    MinimalityReport rep;
    rep.cap_used = f.cap_reference;
    rep.cap_tolerance = f.cap_tolerance;
    const double logcap = std::log(f.cap_reference);
    HullDistance hd(f.reference_set);
    PointCloud sup_mesh = f.reference_set.boundary_samples(4096);
    for (int n : n_list) {
        Polynomial p = f(n);
        MinimalityRow row;
        row.n = n;
        double log_ann = std::log(std::abs(p.leading()));
        row.alpha = log_ann / n + logcap;
        row.beta_lp = log_lp_norm(p, f.tau, f.p_exponent) / n;
        row.beta_sup = log_sup_norm(p, sup_mesh) / n;
        row.gamma_diag = std::exp(log_ann / n) * f.cap_reference;
        row.zero_max_dist = 0.0;
        for (cplx r : roots(p)) row.zero_max_dist = std::max(row.zero_max_dist, hd(r));
        rep.rows.push_back(row);
    }
    if (!rep.rows.empty()) {
        rep.alpha_to_zero = trend_converged(rep.rows.front().alpha, rep.rows.back().alpha);
        rep.beta_to_zero = trend_converged(rep.rows.front().beta_lp, rep.rows.back().beta_lp);
        rep.minimal = rep.alpha_to_zero && rep.beta_to_zero;
    }
    return rep;
}

std::vector<ZeroLocationRow> zero_location_check(const PolynomialFamily& f, double eps,
                                                 std::span<const int> n_list) {
    if (eps <= 0.0) throw Error("zero_location_check: eps > 0 required");
    HullDistance hd(f.reference_set);
    std::vector<ZeroLocationRow> out;
    for (int n : n_list) {
        Polynomial p = f(n);
        double dmax = 0.0;
        for (cplx r : roots(p)) dmax = std::max(dmax, hd(r));
        out.push_back({n, dmax <= eps, dmax});
    }
    return out;
}

}  // namespace julpot
