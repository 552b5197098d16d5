#pragma once

#include <span>
#include <vector>

#include "julpot/errors.hpp"

namespace julpot {

/// |value| past this is treated as escaped-to-infinity by iterate().
inline constexpr double kOverflowLimit = 1e300;

/// Dense univariate polynomial over C. Coefficients are stored constant
/// term first; exact trailing zeros are trimmed so that the leading
/// coefficient is nonzero whenever degree() >= 0.
class Polynomial {
public:
    Polynomial() = default;  // zero polynomial, degree() == -1
    explicit Polynomial(std::vector<cplx> coeffs);

    static Polynomial monomial(int n, cplx scale = 1.0);
    static Polynomial from_roots(std::span<const cplx> roots, cplx leading = 1.0);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<cplx>& coeffs() const { return coeffs_; }
    cplx coeff(int j) const {
        return (j >= 0 && j < static_cast<int>(coeffs_.size())) ? coeffs_[j] : cplx(0.0);
    }
    cplx leading() const { return coeffs_.empty() ? cplx(0.0) : coeffs_.back(); }

    /// max_j |a_j|; scale used by the root-finder residual target.
    double coeff_norm() const;

    cplx operator()(cplx z) const;  // Horner
    Polynomial derivative() const;
    Polynomial shifted(cplx c) const;  // p - c

private:
    std::vector<cplx> coeffs_;
};

struct IterateResult {
    cplx value{};
    bool overflow = false;  // some iterate exceeded kOverflowLimit
    int steps = 0;          // applications actually performed
};

/// k-fold composition p^k(z). Stops early (flagging overflow) once the
/// orbit magnitude passes kOverflowLimit.
IterateResult iterate(const Polynomial& p, cplx z, int k);

/// All roots with multiplicity (length == degree), via Aberth-Ehrlich
/// simultaneous iteration polished by Newton steps. Residual target is
/// |p(r)| <= 1e-8 * max(1, coeff_norm); throws NonConvergence with the
/// best iterate if the 500-sweep cap is hit first.
std::vector<cplx> roots(const Polynomial& p);

/// Solutions of p(z) = w, i.e. roots(p - w). Sorted lexicographically
/// by (re, im) so backward-orbit branch indexing is reproducible.
std::vector<cplx> preimages(const Polynomial& p, cplx w);

}  // namespace julpot
