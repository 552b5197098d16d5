#include "julpot/compactset.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>

namespace julpot {

namespace {
constexpr double kSqrtHalf = 0.70710678118654752;  // max center-to-point gap, in cells
}

// ---- Box --------------------------------------------------------------------

Box Box::padded(double frac) const {
    double s = span();
    if (s <= 0.0) s = 1.0;
    double m = 0.5 * frac * s;
    return expanded(m);
}

Box Box::square() const {
    double s = span();
    if (s <= 0.0) s = 1.0;
    cplx c = center();
    return {c.real() - 0.5 * s, c.real() + 0.5 * s, c.imag() - 0.5 * s, c.imag() + 0.5 * s};
}

Box Box::of_points(std::span<const cplx> pts) {
    if (pts.empty()) throw EmptySet("bounding box of empty point set");
    Box b{pts[0].real(), pts[0].real(), pts[0].imag(), pts[0].imag()};
    for (cplx z : pts) {
        b.x0 = std::min(b.x0, z.real());
        b.x1 = std::max(b.x1, z.real());
        b.y0 = std::min(b.y0, z.imag());
        b.y1 = std::max(b.y1, z.imag());
    }
    return b;
}

// ---- analytic shapes ---------------------------------------------------------

Box bounding_box(const AnalyticReference& ref) {
    return std::visit(
        [](const auto& s) -> Box {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Disc> || std::is_same_v<T, Circle>) {
                return {s.center.real() - s.radius, s.center.real() + s.radius,
                        s.center.imag() - s.radius, s.center.imag() + s.radius};
            } else if constexpr (std::is_same_v<T, Segment>) {
                return Box::of_points(std::array<cplx, 2>{s.a, s.b});
            } else {
                return {s.center.real() - s.semi_x, s.center.real() + s.semi_x,
                        s.center.imag() - s.semi_y, s.center.imag() + s.semi_y};
            }
        },
        ref);
}

bool is_filled(const AnalyticReference& ref) {
    return std::holds_alternative<Disc>(ref) || std::holds_alternative<Ellipse>(ref);
}

namespace {

double segment_distance(cplx a, cplx b, cplx z) {
    cplx d = b - a;
    double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(z - a);
    double t = std::clamp((std::conj(d) * (z - a)).real() / len2, 0.0, 1.0);
    return std::abs(z - (a + t * d));
}

cplx ellipse_point(const Ellipse& e, double th) {
    return e.center + cplx(e.semi_x * std::cos(th), e.semi_y * std::sin(th));
}

double ellipse_boundary_distance(const Ellipse& e, cplx z) {
    // coarse parameter scan, then ternary refinement around the minimum
    const int m = 1024;
    double best = std::numeric_limits<double>::max();
    int bi = 0;
    for (int i = 0; i < m; ++i) {
        double th = 2.0 * std::numbers::pi * i / m;
        double d = std::abs(z - ellipse_point(e, th));
        if (d < best) { best = d; bi = i; }
    }
    double lo = 2.0 * std::numbers::pi * (bi - 1) / m;
    double hi = 2.0 * std::numbers::pi * (bi + 1) / m;
    for (int it = 0; it < 60; ++it) {
        double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
        if (std::abs(z - ellipse_point(e, m1)) < std::abs(z - ellipse_point(e, m2))) hi = m2;
        else lo = m1;
    }
    return std::min(best, std::abs(z - ellipse_point(e, 0.5 * (lo + hi))));
}

}  // namespace

double distance_to(const AnalyticReference& ref, cplx z) {
    return std::visit(
        [&](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Disc>) {
                return std::max(0.0, std::abs(z - s.center) - s.radius);
            } else if constexpr (std::is_same_v<T, Circle>) {
                return std::abs(std::abs(z - s.center) - s.radius);
            } else if constexpr (std::is_same_v<T, Segment>) {
                return segment_distance(s.a, s.b, z);
            } else {
                double nx = (z.real() - s.center.real()) / s.semi_x;
                double ny = (z.imag() - s.center.imag()) / s.semi_y;
                if (nx * nx + ny * ny <= 1.0) return 0.0;
                return ellipse_boundary_distance(s, z);
            }
        },
        ref);
}

PointCloud boundary_points(const AnalyticReference& ref, int n) {
    n = std::max(n, 16);
    PointCloud out;
    out.reserve(n);
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Disc> || std::is_same_v<T, Circle>) {
                for (int i = 0; i < n; ++i) {
                    double th = 2.0 * std::numbers::pi * i / n;
                    out.push_back(s.center + s.radius * cplx(std::cos(th), std::sin(th)));
                }
            } else if constexpr (std::is_same_v<T, Segment>) {
                for (int i = 0; i < n; ++i)
                    out.push_back(s.a + (s.b - s.a) * (double(i) / (n - 1)));
            } else {
                for (int i = 0; i < n; ++i)
                    out.push_back(ellipse_point(s, 2.0 * std::numbers::pi * i / n));
            }
        },
        ref);
    return out;
}

// ---- GridSet -----------------------------------------------------------------

GridSet::GridSet(cplx origin, double h, int width, int height)
    : origin_(origin), h_(h), width_(width), height_(height),
      occ_(size_t(width) * height, 0) {
    if (h <= 0.0 || width <= 0 || height <= 0)
        throw Error("GridSet: cell size and dimensions must be positive");
}

GridSet GridSet::over(const Box& window, int resolution) {
    Box sq = window.square();
    double h = sq.span() / resolution;
    cplx origin{sq.x0 + 0.5 * h, sq.y0 + 0.5 * h};
    return GridSet(origin, h, resolution, resolution);
}

bool GridSet::contains(cplx z) const {
    double fx = (z.real() - origin_.real()) / h_;
    double fy = (z.imag() - origin_.imag()) / h_;
    int ix = int(std::lround(fx));
    int iy = int(std::lround(fy));
    if (ix < 0 || ix >= width_ || iy < 0 || iy >= height_) return false;
    return occupied(ix, iy);
}

int GridSet::occupied_count() const {
    int c = 0;
    for (uint8_t v : occ_) c += (v != 0);
    return c;
}

PointCloud GridSet::occupied_centers() const {
    PointCloud out;
    for (int iy = 0; iy < height_; ++iy)
        for (int ix = 0; ix < width_; ++ix)
            if (occupied(ix, iy)) out.push_back(cell_center(ix, iy));
    return out;
}

PointCloud GridSet::boundary_points() const {
    PointCloud out;
    auto occ_at = [&](int ix, int iy) {
        if (ix < 0 || ix >= width_ || iy < 0 || iy >= height_) return false;
        return occupied(ix, iy);
    };
    for (int iy = 0; iy < height_; ++iy)
        for (int ix = 0; ix < width_; ++ix) {
            if (!occupied(ix, iy)) continue;
            if (!occ_at(ix - 1, iy) || !occ_at(ix + 1, iy) || !occ_at(ix, iy - 1) ||
                !occ_at(ix, iy + 1))
                out.push_back(cell_center(ix, iy));
        }
    return out;
}

Box GridSet::window() const {
    return {origin_.real() - 0.5 * h_, origin_.real() + (width_ - 0.5) * h_,
            origin_.imag() - 0.5 * h_, origin_.imag() + (height_ - 0.5) * h_};
}

// ---- NearestNeighborIndex ------------------------------------------------------

NearestNeighborIndex::NearestNeighborIndex(PointCloud points) : pts_(std::move(points)) {
    if (pts_.empty()) throw EmptySet("NearestNeighborIndex: empty cloud");
    box_ = Box::of_points(pts_);
    int target = std::clamp(int(std::sqrt(double(pts_.size()))), 1, 512);
    nx_ = ny_ = target;
    cell_ = std::max(box_.span() / target, 1e-300);
    buckets_.assign(size_t(nx_) * ny_, {});
    for (uint32_t i = 0; i < pts_.size(); ++i) {
        int ix = std::clamp(int((pts_[i].real() - box_.x0) / cell_), 0, nx_ - 1);
        int iy = std::clamp(int((pts_[i].imag() - box_.y0) / cell_), 0, ny_ - 1);
        buckets_[size_t(iy) * nx_ + ix].push_back(i);
    }
}

double NearestNeighborIndex::distance(cplx q) const {
    double cx = std::clamp(q.real(), box_.x0, box_.x1);
    double cy = std::clamp(q.imag(), box_.y0, box_.y1);
    double extra2 = (q.real() - cx) * (q.real() - cx) + (q.imag() - cy) * (q.imag() - cy);
    int bx = std::clamp(int((cx - box_.x0) / cell_), 0, nx_ - 1);
    int by = std::clamp(int((cy - box_.y0) / cell_), 0, ny_ - 1);

    double best2 = std::numeric_limits<double>::max();
    int max_ring = std::max(nx_, ny_);
    for (int r = 0; r <= max_ring; ++r) {
        if (r > 0) {
            double lb = (r - 1) * cell_;
            if (extra2 + lb * lb >= best2) break;
        }
        for (int iy = by - r; iy <= by + r; ++iy) {
            if (iy < 0 || iy >= ny_) continue;
            bool edge_row = (iy == by - r || iy == by + r);
            int step = edge_row ? 1 : 2 * r;
            if (step == 0) step = 1;
            for (int ix = bx - r; ix <= bx + r; ix += step) {
                if (ix < 0 || ix >= nx_) continue;
                for (uint32_t pi : buckets_[size_t(iy) * nx_ + ix]) {
                    double dx = q.real() - pts_[pi].real();
                    double dy = q.imag() - pts_[pi].imag();
                    best2 = std::min(best2, dx * dx + dy * dy);
                }
            }
        }
    }
    return std::sqrt(best2);
}

// ---- CompactSetModel ------------------------------------------------------------

CompactSetModel::CompactSetModel(PointCloud pts) : value_(std::move(pts)) {
    if (std::get<PointCloud>(value_).empty())
        throw EmptySet("CompactSetModel: empty point cloud");
}

CompactSetModel::CompactSetModel(GridSet grid) : value_(std::move(grid)) {
    if (std::get<GridSet>(value_).occupied_count() == 0)
        throw EmptySet("CompactSetModel: grid has no occupied cells");
}

Box CompactSetModel::bounding_box() const {
    if (auto* r = analytic()) return julpot::bounding_box(*r);
    if (auto* c = cloud()) return Box::of_points(*c);
    return Box::of_points(grid()->occupied_centers());
}

double CompactSetModel::distance_to(cplx z) const {
    if (auto* r = analytic()) return julpot::distance_to(*r, z);
    const PointCloud pts = cloud() ? *cloud() : grid()->occupied_centers();
    if (grid() && grid()->contains(z)) return 0.0;
    double best = std::numeric_limits<double>::max();
    for (cplx p : pts) best = std::min(best, std::abs(z - p));
    return best;
}

PointCloud CompactSetModel::boundary_samples(int n) const {
    if (auto* r = analytic()) return boundary_points(*r, std::max(n, 1024));
    if (auto* c = cloud()) return *c;
    return grid()->boundary_points();
}

CompactSetModel::Discretization CompactSetModel::hausdorff_samples() const {
    Discretization d;
    if (auto* r = analytic()) {
        const int nb = 4096;
        d.points = boundary_points(*r, nb);
        Box bb = julpot::bounding_box(*r);
        double per = 0.0;
        for (size_t i = 0; i + 1 < d.points.size(); ++i)
            per = std::max(per, std::abs(d.points[i + 1] - d.points[i]));
        d.gap = per;
        if (is_filled(*r)) {
            // interior raster so a filled disc is not mistaken for its circle
            const int res = 256;
            GridSet g = GridSet::over(bb.padded(0.02), res);
            for (int iy = 0; iy < g.height(); ++iy)
                for (int ix = 0; ix < g.width(); ++ix)
                    if (julpot::distance_to(*r, g.cell_center(ix, iy)) == 0.0)
                        d.points.push_back(g.cell_center(ix, iy));
            d.gap = std::max(d.gap, g.cell_size() * std::numbers::sqrt2);
        }
    } else if (auto* c = cloud()) {
        d.points = *c;
        d.gap = 0.0;
    } else {
        d.points = grid()->occupied_centers();
        d.gap = grid()->cell_size() * std::numbers::sqrt2;
    }
    return d;
}

// ---- operations ------------------------------------------------------------------

HausdorffResult hausdorff_distance(const CompactSetModel& a, const CompactSetModel& b) {
    auto da = a.hausdorff_samples();
    auto db = b.hausdorff_samples();
    if (da.points.empty() || db.points.empty()) throw EmptySet("hausdorff_distance");
    NearestNeighborIndex ia(da.points), ib(db.points);
    double hab = 0.0, hba = 0.0;
    for (cplx z : da.points) hab = std::max(hab, ib.distance(z));
    for (cplx z : db.points) hba = std::max(hba, ia.distance(z));
    return {std::max(hab, hba), da.gap + db.gap};
}

GridSet polynomial_hull(const GridSet& a) {
    const int w = a.width(), h = a.height();
    std::vector<uint8_t> outside(size_t(w) * h, 0);
    std::deque<std::pair<int, int>> queue;
    auto push = [&](int ix, int iy) {
        if (ix < 0 || ix >= w || iy < 0 || iy >= h) return;
        size_t i = size_t(iy) * w + ix;
        if (outside[i] || a.occupied(ix, iy)) return;
        outside[i] = 1;
        queue.emplace_back(ix, iy);
    };
    // the virtual outside touches every border cell
    for (int ix = 0; ix < w; ++ix) { push(ix, 0); push(ix, h - 1); }
    for (int iy = 0; iy < h; ++iy) { push(0, iy); push(w - 1, iy); }
    while (!queue.empty()) {
        auto [ix, iy] = queue.front();
        queue.pop_front();
        push(ix - 1, iy); push(ix + 1, iy); push(ix, iy - 1); push(ix, iy + 1);
    }
    GridSet hull(a.origin(), a.cell_size(), w, h);
    for (int iy = 0; iy < h; ++iy)
        for (int ix = 0; ix < w; ++ix)
            hull.set(ix, iy, !outside[size_t(iy) * w + ix]);
    return hull;
}

namespace {

// distance function with an index for discrete models; analytic stays exact
std::function<double(cplx)> distance_fn(const CompactSetModel& m,
                                        std::optional<NearestNeighborIndex>& idx) {
    if (auto* r = m.analytic()) {
        return [r](cplx z) { return distance_to(*r, z); };
    }
    const GridSet* g = m.grid();
    idx.emplace(g ? g->occupied_centers() : *m.cloud());
    const NearestNeighborIndex* p = &*idx;
    if (g) {
        return [g, p](cplx z) { return g->contains(z) ? 0.0 : p->distance(z); };
    }
    return [p](cplx z) { return p->distance(z); };
}

}  // namespace

GridSet dilation(const CompactSetModel& a, double s, int resolution) {
    if (s <= 0.0) throw Error("dilation: s must be > 0");
    Box window = a.bounding_box().expanded(s).padded(0.25).square();
    GridSet g = GridSet::over(window, resolution);
    std::optional<NearestNeighborIndex> idx;
    auto dist = distance_fn(a, idx);
    for (int iy = 0; iy < g.height(); ++iy)
        for (int ix = 0; ix < g.width(); ++ix)
            if (dist(g.cell_center(ix, iy)) <= s) g.set(ix, iy, true);
    return g;
}

GridSet rasterize(const CompactSetModel& a, const Box& window, int resolution) {
    GridSet g = GridSet::over(window, resolution);
    double tol = g.cell_size() * kSqrtHalf;
    if (const GridSet* src = a.grid()) tol = std::max(tol, src->cell_size() * kSqrtHalf);
    std::optional<NearestNeighborIndex> idx;
    auto dist = distance_fn(a, idx);
    for (int iy = 0; iy < g.height(); ++iy)
        for (int ix = 0; ix < g.width(); ++ix)
            if (dist(g.cell_center(ix, iy)) <= tol) g.set(ix, iy, true);
    return g;
}

void SetSequence::push(int n, CompactSetModel m) {
    if (!members.empty() && n <= members.back().first)
        throw Error("SetSequence: labels must be strictly increasing");
    members.emplace_back(n, std::move(m));
}

SequenceLimits sequence_limits(const SetSequence& seq, int resolution,
                               std::optional<Box> window) {
    const size_t n = seq.members.size();
    if (n == 0) throw EmptySet("sequence_limits: empty sequence");
    Box joint = seq.members[0].second.bounding_box();
    for (const auto& [lbl, m] : seq.members) joint = Box::join(joint, m.bounding_box());
    if (window) {
        if (!window->contains(joint))
            throw UnboundedSequence("sequence_limits: member leaves the window");
    } else {
        window = joint.padded(0.25);
    }

    const int T = int((n + 1) / 2);
    GridSet limsup = GridSet::over(*window, resolution);
    GridSet liminf = GridSet::over(*window, resolution);
    bool first = true;
    for (size_t i = n - T; i < n; ++i) {
        GridSet r = rasterize(seq.members[i].second, *window, resolution);
        for (int iy = 0; iy < r.height(); ++iy)
            for (int ix = 0; ix < r.width(); ++ix) {
                bool v = r.occupied(ix, iy);
                if (v) limsup.set(ix, iy, true);
                if (first) liminf.set(ix, iy, v);
                else if (!v) liminf.set(ix, iy, false);
            }
        first = false;
    }
    bool empty = liminf.occupied_count() == 0;
    return {std::move(liminf), std::move(limsup), T, empty};
}

GridSet green_sublevel(const GreenEvaluator& g, double s, const Box& window, int resolution) {
    if (s <= 0.0) throw Error("green_sublevel: s must be > 0");
    GridSet grid = GridSet::over(window, resolution);
    bool border_hit = false;
    for (int iy = 0; iy < grid.height(); ++iy)
        for (int ix = 0; ix < grid.width(); ++ix) {
            if (g(grid.cell_center(ix, iy)) <= s) {
                grid.set(ix, iy, true);
                if (ix == 0 || iy == 0 || ix == grid.width() - 1 || iy == grid.height() - 1)
                    border_hit = true;
            }
        }
    if (border_hit)
        throw WindowTooSmall("green_sublevel: sublevel set touches the window border");
    return grid;
}

}  // namespace julpot
