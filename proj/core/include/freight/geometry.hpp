#pragma once

/// @file geometry.hpp
/// @brief Planar polygon operations backing the grid-overlay apportionment.
///
/// Coordinates are planar meters in an equal-area projection; inputs are
/// assumed to be pre-projected and no geodetic math is performed here.
/// Rings are implicitly closed (the last vertex need not repeat the
/// first; an explicit closing vertex is dropped on construction).  The
/// first ring of a polygon is the exterior, stored counter-clockwise;
/// any remaining rings are holes, stored clockwise.  Orientation is
/// normalized on construction.
///
/// Boundary convention: a point on a ring edge counts as inside.

#include <map>
#include <span>
#include <vector>

#include "freight/errors.hpp"

namespace freight {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

using Ring = std::vector<Point>;

struct BoundingBox {
    double min_x = 0.0;
    double min_y = 0.0;
    double max_x = 0.0;
    double max_y = 0.0;
};

/// Axis-aligned clip window, e.g. one grid cell.
struct CellRect {
    double x0 = 0.0;
    double y0 = 0.0;
    double x1 = 0.0;
    double y1 = 0.0;

    double area() const { return (x1 - x0) * (y1 - y0); }
};

/// Signed shoelace area of an implicitly closed ring.
/// Positive for counter-clockwise vertex order.
double ring_signed_area(std::span<const Point> ring);

/// O(n^2) proper-crossing test for fixture validation: true when no two
/// non-adjacent edges cross.
bool ring_is_simple(std::span<const Point> ring);

class Polygon {
public:
    Polygon() = default;

    /// Validates and normalizes the rings: finite coordinates, at least
    /// three distinct vertices per ring after dropping an explicit
    /// closing vertex, exterior CCW, holes CW.
    /// Throws GeometryError on violation.
    explicit Polygon(std::vector<Ring> rings);

    /// Rings that bypass validation, for internal construction of clip
    /// results (which may legitimately be empty).
    static Polygon unchecked(std::vector<Ring> rings);

    bool empty() const { return rings_.empty(); }
    std::span<const Ring> rings() const { return rings_; }
    const Ring& exterior() const { return rings_.front(); }

    BoundingBox bbox() const;

private:
    std::vector<Ring> rings_;
};

/// |shoelace| of the exterior minus hole areas; never negative.
/// An empty polygon has zero area.
double polygon_area(const Polygon& poly);

/// Intersection of poly with an axis-aligned rectangle
/// (Sutherland-Hodgman against the four half-planes, per ring).
/// Degenerate clipped rings are dropped; the result may be empty.
Polygon clip_to_cell(const Polygon& poly, const CellRect& cell);

/// Edge-inclusive containment test (even-odd rule over all rings, so a
/// point strictly inside a hole is outside; hole boundaries are inside).
bool point_in_polygon(const Point& p, const Polygon& poly);

/// Regular grid of square cells, row 0 at the bottom.
struct GridSpec {
    Point origin;               // lower-left corner
    double cell_size = 36000.0; // meters
    int n_cols = 148;
    int n_rows = 112;

    /// Throws GeometryError unless cell_size > 0 and both counts >= 1.
    void validate() const;

    int cell_index(int col, int row) const { return row * n_cols + col; }
    int col_of(int index) const { return index % n_cols; }
    int row_of(int index) const { return index / n_cols; }

    CellRect cell_rect(int col, int row) const {
        return CellRect{origin.x + col * cell_size, origin.y + row * cell_size,
                        origin.x + (col + 1) * cell_size, origin.y + (row + 1) * cell_size};
    }
};

/// Fraction of the zone's area falling in each grid cell, keyed by
/// linear cell index; cells with zero intersection are omitted.  Weights
/// sum to 1 when the zone lies wholly within the grid extent.
///
/// Throws GeometryError if the zone has zero area or intersects no cell.
std::map<int, double> overlay_weights(const Polygon& zone, const GridSpec& grid);

/// Same, for a zone stored as multiple disjoint parts (islands): clipped
/// areas and the normalizing area are summed over parts.
std::map<int, double> overlay_weights(std::span<const Polygon> zone_parts, const GridSpec& grid);

}  // namespace freight
