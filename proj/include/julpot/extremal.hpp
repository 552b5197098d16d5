#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "julpot/poly.hpp"
#include "julpot/potential.hpp"

namespace julpot {

/// Monic degree-n polynomial minimizing the sup norm over the mesh.
/// Real-segment meshes run a discrete Remez exchange certified by
/// near-equioscillation at >= n+1 points; complex meshes fall back to
/// Lawson-weighted least squares with a max-norm certificate only.
Polynomial chebyshev_monic(const PointCloud& mesh, int n);

struct LejaMonic {
    Polynomial poly;
    double sup_norm;           // over the set's boundary sampling
    std::vector<cplx> roots;   // the Leja points, all on the set
};
LejaMonic leja_monic(const CompactSetModel& e, int n);

/// Exact Faber polynomials for the reference shapes (polynomial parts of
/// powers of the exterior map). Circle inputs use their hull (the disc).
Polynomial faber(const AnalyticReference& e, int n);

struct OrthonormalResult {
    Polynomial poly;   // unit L^2(tau) norm, real positive leading coefficient
    double gamma;      // the leading coefficient
};
OrthonormalResult orthonormal(const DiscreteMeasure& tau, int n);

/// cap for the closed forms: disc r, segment length/4, ellipse (A+B)/2.
double analytic_capacity(const AnalyticReference& e);

/// Quadrature discretization of the equilibrium measure: equispaced
/// nodes with dtheta/2pi on circles/discs, Chebyshev (arcsine) nodes on
/// segments, the Joukowski pushforward of dtheta/2pi on ellipses.
DiscreteMeasure default_quadrature(const AnalyticReference& e, int nodes = 4096);

/// dist(z, Pc(E)): analytic shapes exactly (circles fill to discs),
/// grids through their polynomial hull, clouds as themselves.
double hull_distance(const CompactSetModel& e, cplx z);

/// ||p||_{L^q(tau)} computed in the log domain (q = inf -> sup over nodes).
double lp_norm(const Polynomial& p, const DiscreteMeasure& tau, double q);
double sup_norm(const Polynomial& p, const PointCloud& mesh);

struct FamilyParams {
    cplx c = 0.5;                        // power_plus_c offset
    double bound = 2.0;                  // bounded_coeffs |a_j| < M
    uint64_t seed = 1;                   // bounded_coeffs draw
    std::function<cplx(int)> cn = {};    // split_zero c_n rule, default n
};

/// A generator n -> p_n with its reference set E, quadrature tau and
/// L^p exponent -- everything the diagnostics need.
struct PolynomialFamily {
    std::string name;
    std::function<Polynomial(int)> generator;
    CompactSetModel reference_set;
    DiscreteMeasure tau;
    double p_exponent = 2.0;
    double cap_reference = 1.0;
    double cap_tolerance = 0.0;        // 0 when analytic
    bool orthonormal_family = false;

    Polynomial operator()(int n) const;  // validates degree == n
};

/// Built-ins: power_plus_c (z^n + c), split_zero (z^{n-1}(z - c_n)),
/// scaled_power (2^{n^2} z^n, n <= 31), bounded_coeffs (monic, seeded
/// coefficients drawn from |a| < M) -- all on the unit circle.
PolynomialFamily family_builtin(const std::string& name, const FamilyParams& params = {});

PolynomialFamily family_chebyshev(const Segment& e, int mesh_size = 4096);
PolynomialFamily family_leja(const AnalyticReference& e);
PolynomialFamily family_faber(const AnalyticReference& e);
PolynomialFamily family_orthonormal(const AnalyticReference& e);

struct MinimalityRow {
    int n;
    double alpha;          // (1/n) log|a_{n,n}| + log cap(E)
    double beta_lp;        // (1/n) log ||p_n||_{L^p(tau)}
    double beta_sup;       // (1/n) log ||p_n||_E
    double gamma_diag;     // |a_{n,n}|^{1/n} * cap(E)  (Reg diagnostic)
    double zero_max_dist;  // max over zeros of dist(zero, Pc(E))
};

struct MinimalityReport {
    std::vector<MinimalityRow> rows;
    bool alpha_to_zero = false;
    bool beta_to_zero = false;
    bool minimal = false;
    double cap_used = 1.0;
    double cap_tolerance = 0.0;
};

/// Per-n diagnostics of Definition-style asymptotic minimality. A trend
/// counts as converged when the last |value| is within 0.05 of 0 and
/// either shrank against the first row or started there already.
MinimalityReport minimality_report(const PolynomialFamily& f, std::span<const int> n_list);

struct ZeroLocationRow {
    int n;
    bool pass;        // every root within eps of Pc(E)
    double max_dist;
};
std::vector<ZeroLocationRow> zero_location_check(const PolynomialFamily& f, double eps,
                                                 std::span<const int> n_list);

}  // namespace julpot
