#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "terradeform/geometry.hpp"
#include "terradeform/heightfield.hpp"

namespace terradeform {

/// Axis-aligned box standing in for a foot.
struct FootCollider {
  Vec3 center;
  Vec3 half_extents{0.05, 0.03, 0.05};

  double bottom() const { return center.y - half_extents.y; }
};

struct SphereCollider {
  Vec3 center;
  double radius = 0.15;
};

/// Lowest point of the shape along the vertical line through (x, z), or
/// nullopt when the line misses the shape.
std::optional<double> column_bottom(const FootCollider& foot, double x, double z);
std::optional<double> column_bottom(const SphereCollider& sphere, double x, double z);

struct ContactPatch {
  std::vector<CellIndex> hit_cells;
  std::vector<CellIndex> contour_cells;
  std::size_t num_hits = 0;
  double contact_area = 0.0;

  bool empty() const { return num_hits == 0; }
};

/// Cells whose centers fall in the half-open square of side window_side
/// centered at foot_center, clipped to the grid. A window too small to hold a
/// cell center yields the cell containing foot_center. Throws
/// std::out_of_range when foot_center lies outside the terrain.
CellRect contact_window(Vec2 foot_center, double window_side, const Heightfield& field);

/// A collider bottom this close above a cell surface still touches it.
inline constexpr double kTouchTolerance = 1e-9;

/// Ray casts one vertical ray per window cell. A cell is hit when the collider
/// reaches down to (or below) the cell's current raw surface.
ContactPatch detect_hits(const FootCollider& foot, const CellRect& window, const Heightfield& field,
                         double contour_radius);
ContactPatch detect_hits(const SphereCollider& sphere, const CellRect& window, const Heightfield& field,
                         double contour_radius);

/// Non-hit cells within contour_radius (center to center) of a boundary hit
/// cell. Output is ordered by (j, i).
std::vector<CellIndex> contour_cells(const std::vector<CellIndex>& hit_cells, double contour_radius,
                                     const Heightfield& field);

/// Highest raw surface among the cells under the box footprint centered at
/// (x, z); falls back to the interpolated surface when no cell center lies
/// under the footprint.
double support_height(const Heightfield& field, Vec2 center, Vec2 half_extents);

}  // namespace terradeform
