#pragma once

#include <cstdint>

#include "julpot/poly.hpp"
#include "julpot/potential.hpp"

namespace julpot {

/// R_p = (1 + |a_n| + ... + |a_0|) / |a_n|; orbits leaving D(0, R_p) escape.
double escape_radius(const Polynomial& p);

/// cap(K_p) = |a_n|^{-1/(n-1)}.
double cap_julia(const Polynomial& p);

inline constexpr double kEscapeThreshold = 1e8;

struct GreenValue {
    double value;   // >= 0
    double bound;   // reported error bound, C/d^k with C = log(1 + sum|a_j|/|a_n|)
    int steps;
    bool escaped;
};

/// Dynamical Green's function estimate. Iterates until the orbit passes
/// escape_threshold and returns the Boettcher-normalized value
/// (1/d^k) log|p^k(z)| + log|a_n| / (d^k (d-1)), whose true error is
/// O(sum|a_{j<n}| / (|a_n| * threshold)) per escaped step -- far inside the
/// reported bound. Bounded orbits give 0; an orbit stuck between R_p and
/// the threshold raises Indeterminate.
GreenValue green_dynamical(const Polynomial& p, cplx z,
                           double escape_threshold = kEscapeThreshold, int max_iter = 256);

/// Green evaluator backed by green_dynamical; retries internally with a
/// larger iteration budget when an orbit straddles the Julia set.
GreenEvaluator green_dynamical_evaluator(const Polynomial& p,
                                         double escape_threshold = kEscapeThreshold,
                                         int max_iter = 256);

/// Square window centered at 0 containing D(0, R_p) padded by pad.
Box julia_window(const Polynomial& p, double pad = 0.25);

/// Occupancy grid of cells whose center orbit stays <= escape_threshold
/// for max_iter steps (indeterminate orbits count as occupied; raising
/// max_iter can only remove cells).
GridSet filled_julia_grid(const Polynomial& p, const Box& window, int resolution = 512,
                          int max_iter = 256, double escape_threshold = kEscapeThreshold);

enum class BrolinMode { FullTree, RandomPath };

/// Default backward-orbit base point: 2 R_p on the positive real axis.
cplx brolin_basepoint(const Polynomial& p);

/// Brolin-measure sampler. FullTree: uniform measure on all d^depth
/// depth-fold preimages of z0 (requires d^depth <= 1e6). RandomPath:
/// endpoints of `samples` independent backward orbits with uniformly
/// random branch choices, one child seed per orbit.
DiscreteMeasure brolin_sample(const Polynomial& p, cplx z0, int depth,
                              BrolinMode mode = BrolinMode::FullTree, int samples = 100000,
                              uint64_t seed = 1);

/// Centers of boundary cells of a filled-Julia grid.
PointCloud julia_boundary(const GridSet& k);

}  // namespace julpot
