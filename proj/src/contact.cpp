#include "terradeform/contact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace terradeform {

namespace {

double snap(double v) {
  const double r = std::round(v);
  return std::abs(v - r) < 1e-9 ? r : v;
}

// First cell index whose center is >= edge, in grid units along one axis.
int first_center_at_or_after(double edge, double cell) { return static_cast<int>(std::ceil(snap(edge / cell - 0.5))); }

template <typename Collider>
ContactPatch detect_impl(const Collider& shape, const CellRect& window, const Heightfield& field,
                         double contour_radius) {
  ContactPatch patch;
  for (int j = window.j0; j < window.j1; ++j) {
    for (int i = window.i0; i < window.i1; ++i) {
      const CellIndex c{i, j};
      const Vec2 p = field.cell_center(c);
      const std::optional<double> bottom = column_bottom(shape, p.x, p.z);
      if (bottom && *bottom <= field.raw_height(c) + kTouchTolerance) patch.hit_cells.push_back(c);
    }
  }
  patch.num_hits = patch.hit_cells.size();
  patch.contact_area = static_cast<double>(patch.num_hits) * field.cell_area();
  patch.contour_cells = contour_cells(patch.hit_cells, contour_radius, field);
  return patch;
}

}  // namespace

std::optional<double> column_bottom(const FootCollider& foot, double x, double z) {
  if (std::abs(x - foot.center.x) <= foot.half_extents.x && std::abs(z - foot.center.z) <= foot.half_extents.z)
    return foot.bottom();
  return std::nullopt;
}

std::optional<double> column_bottom(const SphereCollider& sphere, double x, double z) {
  const double dx = x - sphere.center.x;
  const double dz = z - sphere.center.z;
  const double r2 = sphere.radius * sphere.radius - (dx * dx + dz * dz);
  if (r2 < 0.0) return std::nullopt;
  return sphere.center.y - std::sqrt(r2);
}

CellRect contact_window(Vec2 foot_center, double window_side, const Heightfield& field) {
  if (!(window_side > 0.0)) throw std::invalid_argument("contact window side must be positive");
  if (!field.inside(foot_center.x, foot_center.z)) throw std::out_of_range("contact window centered outside terrain");
  const double half = 0.5 * window_side;
  CellRect r;
  r.i0 = first_center_at_or_after(foot_center.x - half, field.cell_size_x());
  r.i1 = first_center_at_or_after(foot_center.x + half, field.cell_size_x());
  r.j0 = first_center_at_or_after(foot_center.z - half, field.cell_size_z());
  r.j1 = first_center_at_or_after(foot_center.z + half, field.cell_size_z());
  if (r.i1 <= r.i0 || r.j1 <= r.j0) {
    const CellIndex c = field.cell_at(foot_center.x, foot_center.z);
    return {c.i, c.i + 1, c.j, c.j + 1};
  }
  r.i0 = std::clamp(r.i0, 0, field.nx());
  r.i1 = std::clamp(r.i1, 0, field.nx());
  r.j0 = std::clamp(r.j0, 0, field.nz());
  r.j1 = std::clamp(r.j1, 0, field.nz());
  return r;
}

ContactPatch detect_hits(const FootCollider& foot, const CellRect& window, const Heightfield& field,
                         double contour_radius) {
  return detect_impl(foot, window, field, contour_radius);
}

ContactPatch detect_hits(const SphereCollider& sphere, const CellRect& window, const Heightfield& field,
                         double contour_radius) {
  return detect_impl(sphere, window, field, contour_radius);
}

std::vector<CellIndex> contour_cells(const std::vector<CellIndex>& hit_cells, double contour_radius,
                                     const Heightfield& field) {
  if (hit_cells.empty()) return {};
  const double dx = field.cell_size_x();
  const double dz = field.cell_size_z();
  const int ri = static_cast<int>(std::ceil(contour_radius / dx)) + 1;
  const int rj = static_cast<int>(std::ceil(contour_radius / dz)) + 1;

  CellRect box{hit_cells.front().i, hit_cells.front().i + 1, hit_cells.front().j, hit_cells.front().j + 1};
  for (CellIndex c : hit_cells) {
    box.i0 = std::min(box.i0, c.i);
    box.i1 = std::max(box.i1, c.i + 1);
    box.j0 = std::min(box.j0, c.j);
    box.j1 = std::max(box.j1, c.j + 1);
  }
  box.i0 = std::max(box.i0 - ri, 0);
  box.i1 = std::min(box.i1 + ri, field.nx());
  box.j0 = std::max(box.j0 - rj, 0);
  box.j1 = std::min(box.j1 + rj, field.nz());
  const int w = box.i1 - box.i0;
  const auto local = [&](CellIndex c) {
    return static_cast<std::size_t>(c.j - box.j0) * static_cast<std::size_t>(w) + static_cast<std::size_t>(c.i - box.i0);
  };

  // 0 = free, 1 = hit, 2 = contour
  std::vector<unsigned char> mark(box.count(), 0);
  for (CellIndex c : hit_cells) mark[local(c)] = 1;
  const auto is_hit = [&](CellIndex c) { return box.contains(c) && mark[local(c)] == 1; };

  const double r2 = contour_radius * contour_radius * (1.0 + 1e-9);
  for (CellIndex c : hit_cells) {
    const bool boundary = !is_hit({c.i - 1, c.j}) || !is_hit({c.i + 1, c.j}) || !is_hit({c.i, c.j - 1}) ||
                          !is_hit({c.i, c.j + 1});
    if (!boundary) continue;
    for (int dj = -rj; dj <= rj; ++dj) {
      for (int di = -ri; di <= ri; ++di) {
        const CellIndex n{c.i + di, c.j + dj};
        if (!box.contains(n) || mark[local(n)] != 0) continue;
        const double ex = di * dx;
        const double ez = dj * dz;
        if (ex * ex + ez * ez <= r2) mark[local(n)] = 2;
      }
    }
  }

  std::vector<CellIndex> out;
  for (int j = box.j0; j < box.j1; ++j)
    for (int i = box.i0; i < box.i1; ++i)
      if (mark[local({i, j})] == 2) out.push_back({i, j});
  return out;
}

double support_height(const Heightfield& field, Vec2 center, Vec2 half_extents) {
  const int i0 = std::max(first_center_at_or_after(center.x - half_extents.x, field.cell_size_x()) - 1, 0);
  const int j0 = std::max(first_center_at_or_after(center.z - half_extents.z, field.cell_size_z()) - 1, 0);
  double best = -std::numeric_limits<double>::infinity();
  for (int j = j0; j < field.nz(); ++j) {
    const Vec2 pj = field.cell_center({0, j});
    if (pj.z - center.z > half_extents.z) break;
    for (int i = i0; i < field.nx(); ++i) {
      const Vec2 p = field.cell_center({i, j});
      if (p.x - center.x > half_extents.x) break;
      if (std::abs(p.x - center.x) <= half_extents.x && std::abs(p.z - center.z) <= half_extents.z)
        best = std::max(best, field.raw_height({i, j}));
    }
  }
  if (best == -std::numeric_limits<double>::infinity()) return field.surface_height_at(center.x, center.z);
  return best;
}

}  // namespace terradeform
