#include "terradeform/heightfield.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace terradeform {

namespace {

// Snaps grid-space coordinates that are within rounding noise of an integer,
// so that queries at cell centers hit the stored sample exactly.
double snap(double v) {
  const double r = std::round(v);
  return std::abs(v - r) < 1e-9 ? r : v;
}

double lerp(double a, double b, double t) {
  if (t == 0.0) return a;
  if (t == 1.0) return b;
  return a + t * (b - a);
}

// Even-periodic extension: ... c b a | a b c ... c b a | a b c ...
int mirror(int m, int n) {
  const int period = 2 * n;
  int r = m % period;
  if (r < 0) r += period;
  return r < n ? r : period - 1 - r;
}

std::vector<double> gaussian_kernel(double sigma) {
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> w(static_cast<std::size_t>(2 * radius + 1));
  double sum = 0.0;
  for (int k = -radius; k <= radius; ++k) {
    const double v = std::exp(-0.5 * (k * k) / (sigma * sigma));
    w[static_cast<std::size_t>(k + radius)] = v;
    sum += v;
  }
  for (double& v : w) v /= sum;
  return w;
}

}  // namespace

std::vector<CellIndex> CellRect::cells() const {
  std::vector<CellIndex> out;
  out.reserve(count());
  for (int j = j0; j < j1; ++j)
    for (int i = i0; i < i1; ++i) out.push_back({i, j});
  return out;
}

Heightfield::Heightfield(double width_m, double depth_m, int nx, int nz, const BaseProfile& base_fn)
    : width_m_(width_m), depth_m_(depth_m), nx_(nx), nz_(nz) {
  if (!(width_m > 0.0) || !(depth_m > 0.0))
    throw std::invalid_argument("heightfield: width and depth must be positive");
  if (nx < 2 || nz < 2) throw std::invalid_argument("heightfield: grid needs at least 2 cells per axis");
  if (!base_fn) throw std::invalid_argument("heightfield: missing base profile");
  dx_ = width_m / nx;
  dz_ = depth_m / nz;
  const std::size_t n = static_cast<std::size_t>(nx) * static_cast<std::size_t>(nz);
  base_.resize(n);
  c_acc_.assign(n, 0.0);
  h_acc_.assign(n, 0.0);
  for (int j = 0; j < nz; ++j) {
    for (int i = 0; i < nx; ++i) {
      const Vec2 c = cell_center({i, j});
      base_[linear({i, j})] = base_fn(c.x, c.z);
    }
  }
}

CellIndex Heightfield::cell_at(double x, double z) const {
  const int i = std::clamp(static_cast<int>(std::floor(x / dx_)), 0, nx_ - 1);
  const int j = std::clamp(static_cast<int>(std::floor(z / dz_)), 0, nz_ - 1);
  return {i, j};
}

std::vector<double> Heightfield::raw_grid() const {
  std::vector<double> out(base_.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = base_[k] - c_acc_[k] + h_acc_[k];
  return out;
}

double Heightfield::surface_height_at(double x, double z) const {
  if (!inside(x, z))
    throw std::out_of_range("surface query (" + std::to_string(x) + ", " + std::to_string(z) +
                            ") outside terrain");
  const double fx = std::clamp(snap(x / dx_ - 0.5), 0.0, static_cast<double>(nx_ - 1));
  const double fz = std::clamp(snap(z / dz_ - 0.5), 0.0, static_cast<double>(nz_ - 1));
  const int i0 = std::min(static_cast<int>(fx), nx_ - 2);
  const int j0 = std::min(static_cast<int>(fz), nz_ - 2);
  const double tx = fx - i0;
  const double tz = fz - j0;
  const double h00 = raw_height({i0, j0});
  const double h10 = raw_height({i0 + 1, j0});
  const double h01 = raw_height({i0, j0 + 1});
  const double h11 = raw_height({i0 + 1, j0 + 1});
  if (tz == 0.0) return lerp(h00, h10, tx);
  if (tz == 1.0) return lerp(h01, h11, tx);
  return lerp(lerp(h00, h10, tx), lerp(h01, h11, tx), tz);
}

Vec3 Heightfield::base_normal(double x, double z) const {
  const CellIndex c = cell_at(x, z);
  const int il = std::max(c.i - 1, 0);
  const int ir = std::min(c.i + 1, nx_ - 1);
  const int jl = std::max(c.j - 1, 0);
  const int jr = std::min(c.j + 1, nz_ - 1);
  const double gx = (base_height({ir, c.j}) - base_height({il, c.j})) / ((ir - il) * dx_);
  const double gz = (base_height({c.i, jr}) - base_height({c.i, jl})) / ((jr - jl) * dz_);
  const Vec3 n{-gx, 1.0, -gz};
  return n / norm(n);
}

double Heightfield::apply_compression(CellIndex c, double c_frame, double loose_depth) {
  if (c_frame < 0.0) throw std::invalid_argument("apply_compression: negative per-frame compression");
  double& acc = c_acc_[linear(c)];
  const double before = acc;
  acc = std::min(acc + c_frame, loose_depth);
  // Never move backwards, even if the loose depth shrank below a previous value.
  acc = std::max(acc, before);
  return acc - before;
}

void Heightfield::apply_accumulation(CellIndex c, double h_frame) {
  if (h_frame < 0.0) throw std::invalid_argument("apply_accumulation: negative per-frame height");
  h_acc_[linear(c)] += h_frame;
}

double Heightfield::carved_volume(std::span<const CellIndex> window) const {
  double sum = 0.0;
  for (CellIndex c : window) sum += compression(c);
  return sum * cell_area();
}

double Heightfield::bump_volume(std::span<const CellIndex> window) const {
  double sum = 0.0;
  for (CellIndex c : window) sum += bump(c);
  return sum * cell_area();
}

double Heightfield::carved_volume() const {
  double sum = 0.0;
  for (double v : c_acc_) sum += v;
  return sum * cell_area();
}

double Heightfield::bump_volume() const {
  double sum = 0.0;
  for (double v : h_acc_) sum += v;
  return sum * cell_area();
}

std::vector<double> Heightfield::display_height(double sigma_cm) const {
  if (sigma_cm < 0.0) throw std::invalid_argument("display_height: negative blur width");
  const double sigma_m = sigma_cm / 100.0;
  const std::vector<double> blurred = gaussian_blur(h_acc_, nx_, nz_, sigma_m / dx_, sigma_m / dz_);
  std::vector<double> out(base_.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = base_[k] - c_acc_[k] + blurred[k];
  return out;
}

std::vector<double> gaussian_blur(std::span<const double> field, int nx, int nz, double sigma_x_cells,
                                  double sigma_z_cells) {
  if (field.size() != static_cast<std::size_t>(nx) * static_cast<std::size_t>(nz))
    throw std::invalid_argument("gaussian_blur: field size does not match grid");
  std::vector<double> cur(field.begin(), field.end());
  std::vector<double> tmp(cur.size());

  if (sigma_x_cells > 0.0) {
    const std::vector<double> w = gaussian_kernel(sigma_x_cells);
    const int r = static_cast<int>(w.size() / 2);
    for (int j = 0; j < nz; ++j) {
      const std::size_t row = static_cast<std::size_t>(j) * static_cast<std::size_t>(nx);
      for (int i = 0; i < nx; ++i) {
        double acc = 0.0;
        for (int k = -r; k <= r; ++k)
          acc += w[static_cast<std::size_t>(k + r)] * cur[row + static_cast<std::size_t>(mirror(i + k, nx))];
        tmp[row + static_cast<std::size_t>(i)] = acc;
      }
    }
    cur.swap(tmp);
  }
  if (sigma_z_cells > 0.0) {
    const std::vector<double> w = gaussian_kernel(sigma_z_cells);
    const int r = static_cast<int>(w.size() / 2);
    const auto at = [nx](int i, int j) {
      return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i);
    };
    for (int j = 0; j < nz; ++j) {
      for (int i = 0; i < nx; ++i) {
        double acc = 0.0;
        for (int k = -r; k <= r; ++k) acc += w[static_cast<std::size_t>(k + r)] * cur[at(i, mirror(j + k, nz))];
        tmp[at(i, j)] = acc;
      }
    }
    cur.swap(tmp);
  }
  return cur;
}

}  // namespace terradeform
