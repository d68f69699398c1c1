#include "freight/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace freight {

namespace {

bool points_equal(const Point& a, const Point& b) {
    return a.x == b.x && a.y == b.y;
}

std::size_t count_distinct(const Ring& ring) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(ring.size());
    for (const auto& p : ring) pts.emplace_back(p.x, p.y);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts.size();
}

}  // namespace

double ring_signed_area(std::span<const Point> ring) {
    const std::size_t n = ring.size();
    if (n < 3) return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = ring[i];
        const Point& b = ring[(i + 1) % n];
        sum += a.x * b.y - b.x * a.y;
    }
    return 0.5 * sum;
}

bool ring_is_simple(std::span<const Point> ring) {
    const std::size_t n = ring.size();
    if (n < 3) return false;
    const auto orient = [](const Point& a, const Point& b, const Point& p) {
        return (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
    };
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = ring[i];
        const Point& b = ring[(i + 1) % n];
        for (std::size_t j = i + 1; j < n; ++j) {
            if ((j + 1) % n == i || (i + 1) % n == j) continue;  // adjacent edges
            const Point& c = ring[j];
            const Point& d = ring[(j + 1) % n];
            const double d1 = orient(c, d, a);
            const double d2 = orient(c, d, b);
            const double d3 = orient(a, b, c);
            const double d4 = orient(a, b, d);
            if (((d1 > 0) != (d2 > 0)) && d1 != 0 && d2 != 0 && ((d3 > 0) != (d4 > 0)) &&
                d3 != 0 && d4 != 0) {
                return false;
            }
        }
    }
    return true;
}

Polygon::Polygon(std::vector<Ring> rings) {
    for (std::size_t r = 0; r < rings.size(); ++r) {
        Ring& ring = rings[r];
        if (ring.size() >= 2 && points_equal(ring.front(), ring.back())) {
            ring.pop_back();  // drop explicit closing vertex
        }
        for (const auto& p : ring) {
            if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
                throw GeometryError("polygon ring has non-finite coordinates");
            }
        }
        if (ring.size() < 3 || count_distinct(ring) < 3) {
            throw GeometryError("polygon ring has fewer than 3 distinct vertices");
        }
        const double signed_area = ring_signed_area(ring);
        const bool want_ccw = (r == 0);
        if (signed_area != 0.0 && (signed_area > 0.0) != want_ccw) {
            std::reverse(ring.begin(), ring.end());
        }
    }
    rings_ = std::move(rings);
}

Polygon Polygon::unchecked(std::vector<Ring> rings) {
    Polygon poly;
    poly.rings_ = std::move(rings);
    return poly;
}

BoundingBox Polygon::bbox() const {
    BoundingBox box{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
                    -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const auto& ring : rings_) {
        for (const auto& p : ring) {
            box.min_x = std::min(box.min_x, p.x);
            box.min_y = std::min(box.min_y, p.y);
            box.max_x = std::max(box.max_x, p.x);
            box.max_y = std::max(box.max_y, p.y);
        }
    }
    return box;
}

double polygon_area(const Polygon& poly) {
    if (poly.empty()) return 0.0;
    double area = 0.0;
    bool exterior = true;
    for (const auto& ring : poly.rings()) {
        const double a = std::abs(ring_signed_area(ring));
        area += exterior ? a : -a;
        exterior = false;
    }
    return std::max(area, 0.0);
}

namespace {

enum class Side { Left, Right, Bottom, Top };

bool inside_edge(const Point& p, Side side, const CellRect& cell) {
    switch (side) {
        case Side::Left: return p.x >= cell.x0;
        case Side::Right: return p.x <= cell.x1;
        case Side::Bottom: return p.y >= cell.y0;
        case Side::Top: return p.y <= cell.y1;
    }
    return false;
}

Point intersect_edge(const Point& a, const Point& b, Side side, const CellRect& cell) {
    double t = 0.0;
    switch (side) {
        case Side::Left: t = (cell.x0 - a.x) / (b.x - a.x); break;
        case Side::Right: t = (cell.x1 - a.x) / (b.x - a.x); break;
        case Side::Bottom: t = (cell.y0 - a.y) / (b.y - a.y); break;
        case Side::Top: t = (cell.y1 - a.y) / (b.y - a.y); break;
    }
    Point out{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
    // Pin the clipped coordinate exactly onto the window boundary.
    switch (side) {
        case Side::Left: out.x = cell.x0; break;
        case Side::Right: out.x = cell.x1; break;
        case Side::Bottom: out.y = cell.y0; break;
        case Side::Top: out.y = cell.y1; break;
    }
    return out;
}

Ring clip_ring(Ring subject, Side side, const CellRect& cell) {
    Ring out;
    const std::size_t n = subject.size();
    if (n == 0) return out;
    out.reserve(n + 4);
    for (std::size_t i = 0; i < n; ++i) {
        const Point& cur = subject[i];
        const Point& prev = subject[(i + n - 1) % n];
        const bool cur_in = inside_edge(cur, side, cell);
        const bool prev_in = inside_edge(prev, side, cell);
        if (cur_in) {
            if (!prev_in) out.push_back(intersect_edge(prev, cur, side, cell));
            out.push_back(cur);
        } else if (prev_in) {
            out.push_back(intersect_edge(prev, cur, side, cell));
        }
    }
    return out;
}

}  // namespace

Polygon clip_to_cell(const Polygon& poly, const CellRect& cell) {
    std::vector<Ring> clipped;
    for (const auto& ring : poly.rings()) {
        Ring r = ring;
        for (Side side : {Side::Left, Side::Right, Side::Bottom, Side::Top}) {
            r = clip_ring(std::move(r), side, cell);
            if (r.empty()) break;
        }
        // Drop consecutive duplicates introduced at window corners.
        if (!r.empty()) {
            Ring dedup;
            dedup.reserve(r.size());
            for (const auto& p : r) {
                if (dedup.empty() || !points_equal(dedup.back(), p)) dedup.push_back(p);
            }
            while (dedup.size() > 1 && points_equal(dedup.front(), dedup.back())) dedup.pop_back();
            r = std::move(dedup);
        }
        if (r.size() >= 3) clipped.push_back(std::move(r));
    }
    return Polygon::unchecked(std::move(clipped));
}

namespace {

bool on_segment(const Point& p, const Point& a, const Point& b) {
    const double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
    if (cross != 0.0) return false;
    return p.x >= std::min(a.x, b.x) && p.x <= std::max(a.x, b.x) &&
           p.y >= std::min(a.y, b.y) && p.y <= std::max(a.y, b.y);
}

}  // namespace

bool point_in_polygon(const Point& p, const Polygon& poly) {
    if (poly.empty()) return false;
    // Boundary first: any ring edge containing the point makes it inside.
    for (const auto& ring : poly.rings()) {
        const std::size_t n = ring.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (on_segment(p, ring[i], ring[(i + 1) % n])) return true;
        }
    }
    // Even-odd ray cast over all rings; a hit inside a hole toggles back out.
    bool inside = false;
    for (const auto& ring : poly.rings()) {
        const std::size_t n = ring.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Point& a = ring[i];
            const Point& b = ring[(i + 1) % n];
            if ((a.y > p.y) != (b.y > p.y)) {
                const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
                if (p.x < x_cross) inside = !inside;
            }
        }
    }
    return inside;
}

void GridSpec::validate() const {
    if (!(cell_size > 0.0)) throw GeometryError("grid cell_size must be positive");
    if (n_cols < 1 || n_rows < 1) throw GeometryError("grid must have at least one cell");
}

std::map<int, double> overlay_weights(const Polygon& zone, const GridSpec& grid) {
    return overlay_weights(std::span<const Polygon>(&zone, 1), grid);
}

namespace {

// All clipping and area arithmetic runs in coordinates local to the
// part's bounding-box corner.  The weights are ratios, so the frame is
// free to choose, and the local frame keeps translating zone and grid by
// a common vector from perturbing any intermediate value.
Polygon to_local(const Polygon& part, double ox, double oy) {
    std::vector<Ring> rings;
    rings.reserve(part.rings().size());
    for (const auto& ring : part.rings()) {
        Ring local;
        local.reserve(ring.size());
        for (const auto& p : ring) local.push_back(Point{p.x - ox, p.y - oy});
        rings.push_back(std::move(local));
    }
    return Polygon::unchecked(std::move(rings));
}

// Intersection area of a polygon with a rectangle via a signed triangle
// fan: each fan triangle is convex, so Sutherland-Hodgman clips it
// exactly, and the signed sum handles concave rings (where clipping the
// whole ring at once could leave zero-width bridges that corrupt the
// area).  Hole rings enter with opposite orientation and subtract.
double clipped_area_exact(const Polygon& poly, const CellRect& cell) {
    double total = 0.0;
    for (const auto& ring : poly.rings()) {
        const std::size_t n = ring.size();
        if (n < 3) continue;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            Ring triangle = {ring[0], ring[i], ring[i + 1]};
            for (Side side : {Side::Left, Side::Right, Side::Bottom, Side::Top}) {
                triangle = clip_ring(std::move(triangle), side, cell);
                if (triangle.empty()) break;
            }
            if (triangle.size() >= 3) total += ring_signed_area(triangle);
        }
    }
    return std::max(total, 0.0);
}

}  // namespace

std::map<int, double> overlay_weights(std::span<const Polygon> zone_parts, const GridSpec& grid) {
    grid.validate();

    double zone_area = 0.0;
    std::map<int, double> clipped_areas;
    for (const auto& part : zone_parts) {
        if (part.empty()) continue;
        const BoundingBox box = part.bbox();
        const Polygon local = to_local(part, box.min_x, box.min_y);
        zone_area += polygon_area(local);

        // Candidate cell range from the part's bounding box, clamped to the grid.
        int col_lo = static_cast<int>(std::floor((box.min_x - grid.origin.x) / grid.cell_size));
        int col_hi = static_cast<int>(std::floor((box.max_x - grid.origin.x) / grid.cell_size));
        int row_lo = static_cast<int>(std::floor((box.min_y - grid.origin.y) / grid.cell_size));
        int row_hi = static_cast<int>(std::floor((box.max_y - grid.origin.y) / grid.cell_size));
        col_lo = std::max(col_lo, 0);
        row_lo = std::max(row_lo, 0);
        col_hi = std::min(col_hi, grid.n_cols - 1);
        row_hi = std::min(row_hi, grid.n_rows - 1);

        for (int row = row_lo; row <= row_hi; ++row) {
            for (int col = col_lo; col <= col_hi; ++col) {
                const CellRect abs_rect = grid.cell_rect(col, row);
                const CellRect local_rect{abs_rect.x0 - box.min_x, abs_rect.y0 - box.min_y,
                                          abs_rect.x1 - box.min_x, abs_rect.y1 - box.min_y};
                const double a = clipped_area_exact(local, local_rect);
                if (a > 0.0) clipped_areas[grid.cell_index(col, row)] += a;
            }
        }
    }

    if (!(zone_area > 0.0)) throw GeometryError("zone has zero area");
    if (clipped_areas.empty()) {
        throw GeometryError("zone does not intersect the grid extent");
    }

    std::map<int, double> weights;
    for (const auto& [cell, area] : clipped_areas) {
        weights[cell] = area / zone_area;
    }
    return weights;
}

}  // namespace freight
