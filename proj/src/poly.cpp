#include "julpot/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace julpot {

Polynomial::Polynomial(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
    while (!coeffs_.empty() && coeffs_.back() == cplx(0.0)) coeffs_.pop_back();
}

Polynomial Polynomial::monomial(int n, cplx scale) {
    std::vector<cplx> c(static_cast<size_t>(n) + 1, cplx(0.0));
    c.back() = scale;
    return Polynomial(std::move(c));
}

Polynomial Polynomial::from_roots(std::span<const cplx> roots, cplx leading) {
    std::vector<cplx> c{leading};
    for (cplx r : roots) {
        c.push_back(c.back());
        for (size_t j = c.size() - 2; j > 0; --j) c[j] = c[j - 1] - r * c[j];
        c[0] *= -r;
    }
    return Polynomial(std::move(c));
}

double Polynomial::coeff_norm() const {
    double m = 0.0;
    for (cplx a : coeffs_) m = std::max(m, std::abs(a));
    return m;
}

cplx Polynomial::operator()(cplx z) const {
    cplx acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return Polynomial();
    std::vector<cplx> d(coeffs_.size() - 1);
    for (size_t j = 1; j < coeffs_.size(); ++j) d[j - 1] = double(j) * coeffs_[j];
    return Polynomial(std::move(d));
}

Polynomial Polynomial::shifted(cplx c) const {
    std::vector<cplx> s = coeffs_;
    if (s.empty()) s.push_back(-c);
    else s[0] -= c;
    return Polynomial(std::move(s));
}

IterateResult iterate(const Polynomial& p, cplx z, int k) {
    if (k < 0) throw Error("iterate: k must be >= 0");
    IterateResult r;
    r.value = z;
    for (int i = 0; i < k; ++i) {
        if (std::abs(r.value) > kOverflowLimit || !std::isfinite(std::abs(r.value))) {
            r.overflow = true;
            return r;
        }
        r.value = p(r.value);
        r.steps++;
    }
    if (!std::isfinite(std::abs(r.value)) || std::abs(r.value) > kOverflowLimit)
        r.overflow = true;
    return r;
}

namespace {

// Fujiwara root-inclusion bound: 2 * max_j |a_{n-j}/a_n|^{1/j}.
double fujiwara_bound(const std::vector<cplx>& a) {
    const size_t n = a.size() - 1;
    const double an = std::abs(a[n]);
    double b = 0.0;
    for (size_t j = 1; j <= n; ++j) {
        double t = std::abs(a[n - j]) / an;
        if (j == n) t *= 0.5;  // classical constant-term tweak
        if (t > 0.0) b = std::max(b, std::pow(t, 1.0 / double(j)));
    }
    return 2.0 * b;
}

}  // namespace

std::vector<cplx> roots(const Polynomial& p) {
    const int deg = p.degree();
    if (deg < 1) throw DegreeTooLow("roots: degree >= 1 required");

    // Factor exact zero roots at the origin so multiplicities like z^m
    // come out exact (and Aberth handles the nonsingular remainder).
    const auto& full = p.coeffs();
    size_t m0 = 0;
    while (m0 < full.size() - 1 && full[m0] == cplx(0.0)) ++m0;
    std::vector<cplx> out(m0, cplx(0.0));
    std::vector<cplx> a(full.begin() + m0, full.end());
    const int n = static_cast<int>(a.size()) - 1;
    if (n == 0) return out;
    if (n == 1) {
        out.push_back(-a[0] / a[1]);
        return out;
    }

    Polynomial q{std::vector<cplx>(a)};
    Polynomial dq = q.derivative();
    const double tol = 1e-8 * std::max(1.0, p.coeff_norm());

    // Start on a circle through golden-angle spacing. The Cauchy radius
    // 1 + max|a_j/a_n| can be astronomically loose for Chebyshev-scale
    // coefficients, so take the smaller of it and the Fujiwara bound.
    double rmax = 0.0;
    for (int j = 0; j < n; ++j) rmax = std::max(rmax, std::abs(a[j] / a[n]));
    const double radius = std::max(1e-6, std::min(1.0 + rmax, fujiwara_bound(a)));
    const double golden = 2.0 * std::numbers::pi * (1.0 - 1.0 / std::numbers::phi);

    std::vector<cplx> z(n);
    for (int i = 0; i < n; ++i) {
        double th = 0.5 + golden * i;
        z[i] = radius * cplx(std::cos(th), std::sin(th));
    }

    const int max_sweeps = 500;
    std::vector<double> res(n, 0.0);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
            cplx pe = q(z[i]);
            res[i] = std::abs(pe);
            if (res[i] <= tol) {
                worst = std::max(worst, res[i]);
                continue;
            }
            cplx dpe = dq(z[i]);
            if (dpe == cplx(0.0)) {
                z[i] += 1e-8 * radius * cplx(1.0, 1.0);
                worst = std::max(worst, res[i]);
                continue;
            }
            cplx newton = pe / dpe;
            cplx rep = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                cplx diff = z[i] - z[j];
                if (diff == cplx(0.0)) diff = 1e-12 * radius * cplx(1.0, 0.5);
                rep += cplx(1.0) / diff;
            }
            cplx denom = cplx(1.0) - newton * rep;
            cplx step = (denom == cplx(0.0)) ? newton : newton / denom;
            if (!std::isfinite(std::abs(step))) step = newton;
            z[i] -= step;
            worst = std::max(worst, res[i]);
        }
        if (worst <= tol) break;
    }

    // Newton polish, keeping each point only if the residual improves.
    for (int i = 0; i < n; ++i) {
        cplx best = z[i];
        double bestres = std::abs(q(best));
        cplx cur = best;
        for (int it = 0; it < 4; ++it) {
            cplx dpe = dq(cur);
            if (dpe == cplx(0.0)) break;
            cur -= q(cur) / dpe;
            double r = std::abs(q(cur));
            if (r < bestres) {
                bestres = r;
                best = cur;
            }
        }
        z[i] = best;
        res[i] = bestres;
    }

    double worst = *std::max_element(res.begin(), res.end());
    if (worst > tol) {
        std::vector<cplx> best = out;
        best.insert(best.end(), z.begin(), z.end());
        throw NonConvergence("roots: residual target not met after sweep cap", best, worst);
    }
    out.insert(out.end(), z.begin(), z.end());
    return out;
}

std::vector<cplx> preimages(const Polynomial& p, cplx w) {
    auto r = roots(p.shifted(w));
    std::sort(r.begin(), r.end(), [](cplx x, cplx y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    return r;
}

}  // namespace julpot
