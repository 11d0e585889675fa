#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "terradeform/geometry.hpp"

namespace terradeform {

struct CellIndex {
  int i = 0;  // along x
  int j = 0;  // along z
  constexpr bool operator==(const CellIndex&) const = default;
};

// Half-open rectangle of cells [i0, i1) x [j0, j1).
struct CellRect {
  int i0 = 0;
  int i1 = 0;
  int j0 = 0;
  int j1 = 0;

  constexpr bool empty() const { return i1 <= i0 || j1 <= j0; }
  constexpr std::size_t count() const {
    return empty() ? 0 : static_cast<std::size_t>(i1 - i0) * static_cast<std::size_t>(j1 - j0);
  }
  constexpr bool contains(CellIndex c) const { return c.i >= i0 && c.i < i1 && c.j >= j0 && c.j < j1; }
  std::vector<CellIndex> cells() const;
};

using BaseProfile = std::function<double(double x, double z)>;

/// Deformable terrain grid. Heights are sampled at cell centers; cell (i, j)
/// owns the square [i*dx, (i+1)*dx) x [j*dz, (j+1)*dz).
///
/// Two monotone accumulators ride on top of the rest surface: the compression
/// carved into the loose layer and the material deposited as bumps. The raw
/// surface is base - compression + bump.
class Heightfield {
 public:
  Heightfield(double width_m, double depth_m, int nx, int nz, const BaseProfile& base_fn);

  double width() const { return width_m_; }
  double depth() const { return depth_m_; }
  int nx() const { return nx_; }
  int nz() const { return nz_; }
  double cell_size() const { return dx_; }
  double cell_size_x() const { return dx_; }
  double cell_size_z() const { return dz_; }
  double cell_area() const { return dx_ * dz_; }
  std::size_t cell_count() const { return base_.size(); }

  bool valid(CellIndex c) const { return c.i >= 0 && c.i < nx_ && c.j >= 0 && c.j < nz_; }
  bool inside(double x, double z) const { return x >= 0.0 && x <= width_m_ && z >= 0.0 && z <= depth_m_; }
  std::size_t linear(CellIndex c) const {
    return static_cast<std::size_t>(c.j) * static_cast<std::size_t>(nx_) + static_cast<std::size_t>(c.i);
  }
  Vec2 cell_center(CellIndex c) const { return {(c.i + 0.5) * dx_, (c.j + 0.5) * dz_}; }
  /// Cell whose footprint contains (x, z); points on the far edge map to the last cell.
  CellIndex cell_at(double x, double z) const;

  double base_height(CellIndex c) const { return base_[linear(c)]; }
  double compression(CellIndex c) const { return c_acc_[linear(c)]; }
  double bump(CellIndex c) const { return h_acc_[linear(c)]; }
  double raw_height(CellIndex c) const {
    const std::size_t k = linear(c);
    return base_[k] - c_acc_[k] + h_acc_[k];
  }

  std::span<const double> base_grid() const { return base_; }
  std::span<const double> compression_grid() const { return c_acc_; }
  std::span<const double> bump_grid() const { return h_acc_; }
  std::vector<double> raw_grid() const;

  /// Bilinear interpolation of the raw surface between cell centers. Within
  /// half a cell of the border the nearest row/column is held constant.
  /// Throws std::out_of_range outside the terrain extent.
  double surface_height_at(double x, double z) const;
  /// Upward unit normal of the rest surface (central differences, one cell
  /// apart, clamped to the grid).
  Vec3 base_normal(double x, double z) const;

  /// Adds c_frame to the cell's compression, saturating at loose_depth.
  /// Returns the amount actually applied.
  double apply_compression(CellIndex c, double c_frame, double loose_depth);
  /// Adds h_frame to the cell's bump height.
  void apply_accumulation(CellIndex c, double h_frame);

  double carved_volume(std::span<const CellIndex> window) const;
  double bump_volume(std::span<const CellIndex> window) const;
  double carved_volume() const;
  double bump_volume() const;

  /// base - compression + G_sigma(bump). Only the bump field is blurred; the
  /// accumulators are left untouched.
  std::vector<double> display_height(double sigma_cm) const;

 private:
  double width_m_;
  double depth_m_;
  int nx_;
  int nz_;
  double dx_;
  double dz_;
  std::vector<double> base_;
  std::vector<double> c_acc_;
  std::vector<double> h_acc_;
};

/// Separable normalized Gaussian blur with half-sample symmetric (mirrored)
/// boundaries. sigma is in cells along each axis; sigma == 0 is the identity.
/// The total sum of the field is preserved.
std::vector<double> gaussian_blur(std::span<const double> field, int nx, int nz, double sigma_x_cells,
                                  double sigma_z_cells);

}  // namespace terradeform
