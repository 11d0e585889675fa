#include "terradeform/materials.hpp"

#include <stdexcept>
#include <string>

namespace terradeform {

namespace {

MaterialParams make(double e_lo_mpa, double e_hi_mpa, double tau, double nu, double sigma_cm) {
  MaterialParams m;
  m.young_modulus = 0.5 * (e_lo_mpa + e_hi_mpa) * 1e6;
  m.char_time = tau;
  m.poisson_ratio = nu;
  m.blur_sigma_cm = sigma_cm;
  m.loose_depth = 0.30;
  m.contour_radius = 0.04;
  return m;
}

}  // namespace

MaterialParams preset(std::string_view name) {
  if (name == "snow") return make(0.25, 0.5, 0.2, 0.05, 0.5);
  if (name == "dry_sand") return make(1.5, 3.0, 0.05, 0.5, 1.0);
  if (name == "mud") return make(0.5, 0.75, 0.15, 0.35, 1.0);
  if (name == "soil") return make(1.0, 1.5, 0.05, 0.35, 0.5);
  throw std::invalid_argument("unknown material preset '" + std::string(name) + "'");
}

std::vector<std::string> validate(const MaterialParams& p) {
  std::vector<std::string> out;
  if (!(p.young_modulus > 0.0))
    out.emplace_back("young_modulus must be positive");
  if (!(p.poisson_ratio >= 0.0 && p.poisson_ratio <= 0.5)) out.emplace_back("poisson_ratio out of [0, 0.5]");
  if (!(p.char_time > 0.0)) out.emplace_back("char_time must be positive");
  if (!(p.loose_depth > 0.0)) out.emplace_back("loose_depth must be positive");
  if (!(p.blur_sigma_cm >= 0.0)) out.emplace_back("blur_sigma_cm must be non-negative");
  if (!(p.contour_radius > 0.0)) out.emplace_back("contour_radius must be positive");
  return out;
}

}  // namespace terradeform
