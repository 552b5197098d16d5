#pragma once

#include <functional>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "julpot/errors.hpp"

namespace julpot {

using PointCloud = std::vector<cplx>;

struct Box {
    double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double span() const { return std::max(width(), height()); }
    cplx center() const { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }
    bool contains(cplx z) const {
        return z.real() >= x0 && z.real() <= x1 && z.imag() >= y0 && z.imag() <= y1;
    }
    bool contains(const Box& b) const {
        return b.x0 >= x0 && b.x1 <= x1 && b.y0 >= y0 && b.y1 <= y1;
    }
    Box expanded(double margin) const {
        return {x0 - margin, x1 + margin, y0 - margin, y1 + margin};
    }
    /// Grow the span symmetrically by frac (0.25 -> 1.25x), with a floor
    /// for degenerate boxes.
    Box padded(double frac) const;
    /// Centered square hull.
    Box square() const;
    static Box join(const Box& a, const Box& b) {
        return {std::min(a.x0, b.x0), std::max(a.x1, b.x1),
                std::min(a.y0, b.y0), std::max(a.y1, b.y1)};
    }
    static Box of_points(std::span<const cplx> pts);
};

// ---- analytic reference shapes -------------------------------------------

struct Disc { cplx center; double radius; };      // closed disc (filled)
struct Circle { cplx center; double radius; };    // the curve only
struct Segment { cplx a; cplx b; };
struct Ellipse { cplx center; double semi_x; double semi_y; };  // filled, axis-aligned

using AnalyticReference = std::variant<Disc, Circle, Segment, Ellipse>;

Box bounding_box(const AnalyticReference& ref);
bool is_filled(const AnalyticReference& ref);  // disc/ellipse carry interior
/// Euclidean distance from z to the set (0 inside filled shapes).
double distance_to(const AnalyticReference& ref, cplx z);
/// n roughly equispaced points on the outer boundary curve.
PointCloud boundary_points(const AnalyticReference& ref, int n);

// ---- occupancy grids ------------------------------------------------------

/// Axis-aligned occupancy grid with square cells. origin is the center of
/// cell (0,0); cell (ix,iy) has center origin + (ix*h, iy*h).
class GridSet {
public:
    GridSet(cplx origin, double h, int width, int height);

    /// Square grid of resolution x resolution cells covering window.square().
    static GridSet over(const Box& window, int resolution);

    cplx origin() const { return origin_; }
    double cell_size() const { return h_; }
    int width() const { return width_; }
    int height() const { return height_; }

    bool occupied(int ix, int iy) const { return occ_[idx(ix, iy)] != 0; }
    void set(int ix, int iy, bool v) { occ_[idx(ix, iy)] = v ? 1 : 0; }
    cplx cell_center(int ix, int iy) const {
        return origin_ + cplx(ix * h_, iy * h_);
    }
    /// Occupancy of the cell containing z (false outside the window).
    bool contains(cplx z) const;

    int occupied_count() const;
    PointCloud occupied_centers() const;
    /// Centers of occupied cells with at least one unoccupied 4-neighbor
    /// (cells on the grid border count as boundary).
    PointCloud boundary_points() const;
    Box window() const;

    const std::vector<uint8_t>& raw() const { return occ_; }
    std::vector<uint8_t>& raw() { return occ_; }

private:
    size_t idx(int ix, int iy) const { return size_t(iy) * width_ + ix; }
    cplx origin_;
    double h_;
    int width_, height_;
    std::vector<uint8_t> occ_;
};

// ---- compact set model ----------------------------------------------------

class CompactSetModel {
public:
    CompactSetModel(AnalyticReference ref) : value_(std::move(ref)) {}
    CompactSetModel(Disc d) : value_(AnalyticReference(d)) {}
    CompactSetModel(Circle c) : value_(AnalyticReference(c)) {}
    CompactSetModel(Segment s) : value_(AnalyticReference(s)) {}
    CompactSetModel(Ellipse e) : value_(AnalyticReference(e)) {}
    CompactSetModel(PointCloud pts);
    CompactSetModel(GridSet grid);

    const AnalyticReference* analytic() const { return std::get_if<AnalyticReference>(&value_); }
    const PointCloud* cloud() const { return std::get_if<PointCloud>(&value_); }
    const GridSet* grid() const { return std::get_if<GridSet>(&value_); }

    Box bounding_box() const;
    double distance_to(cplx z) const;  // 0 inside filled/occupied regions

    /// Dense samples of the outer boundary (>= n for analytic shapes;
    /// cell centers / points for discrete models).
    PointCloud boundary_samples(int n = 4096) const;

    struct Discretization {
        PointCloud points;
        double gap;  // max distance from any set point to its nearest sample
    };
    /// Point discretization used by the Hausdorff metric: boundary samples
    /// for curves, boundary + interior raster for filled shapes, occupied
    /// centers for grids, the points themselves for clouds.
    Discretization hausdorff_samples() const;

private:
    std::variant<AnalyticReference, PointCloud, GridSet> value_;
};

// ---- nearest-neighbor index ------------------------------------------------

/// Uniform-bucket index for nearest-distance queries against a fixed cloud.
class NearestNeighborIndex {
public:
    explicit NearestNeighborIndex(PointCloud points);
    double distance(cplx q) const;
    const PointCloud& points() const { return pts_; }

private:
    PointCloud pts_;
    Box box_{};
    double cell_ = 1.0;
    int nx_ = 1, ny_ = 1;
    std::vector<std::vector<uint32_t>> buckets_;
};

// ---- operations -------------------------------------------------------------

struct HausdorffResult {
    double value;
    double tolerance;  // sampling gap A + sampling gap B
    operator double() const { return value; }
};

HausdorffResult hausdorff_distance(const CompactSetModel& a, const CompactSetModel& b);

/// Fill the bounded complementary components: flood from the outside,
/// everything not reached is the hull.
GridSet polynomial_hull(const GridSet& a);

/// Closed rasterization of {z : dist(z, A) <= s}.
GridSet dilation(const CompactSetModel& a, double s, int resolution = 512);

/// Rasterize any model onto an explicit grid geometry (cells within one
/// cell-diagonal of the set, or containing interior points, are occupied).
GridSet rasterize(const CompactSetModel& a, const Box& window, int resolution);

struct SetSequence {
    std::vector<std::pair<int, CompactSetModel>> members;  // labels strictly increasing
    void push(int n, CompactSetModel m);
};

struct SequenceLimits {
    GridSet liminf;
    GridSet limsup;
    int window_T;        // suffix length used as the finite proxy for the tail
    bool liminf_empty;
};

/// Finite proxy for liminf/limsup of a uniformly bounded set sequence:
/// a cell is in limsup if some of the last T members hit it, in liminf if
/// all of them do, with T = ceil(N/2). Throws UnboundedSequence if an
/// explicit window is given and some member leaves it.
SequenceLimits sequence_limits(const SetSequence& seq, int resolution = 512,
                               std::optional<Box> window = std::nullopt);

// GreenEvaluator lives here so grid-side operations can consume it without
// a circular header; conceptually it belongs with the potential-theory API.
struct GreenEvaluator {
    std::function<double(cplx)> fn;
    double accuracy_bound = 0.0;
    Box domain{};
    double operator()(cplx z) const { return fn(z); }
};

/// Occupancy grid of {g <= s}; throws WindowTooSmall if the sublevel set
/// touches the window border.
GridSet green_sublevel(const GreenEvaluator& g, double s, const Box& window, int resolution);

}  // namespace julpot
