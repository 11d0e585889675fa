#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "terradeform/deformation.hpp"
#include "terradeform/simulation.hpp"

namespace terradeform {

/// 9 significant digits through std::to_chars (locale independent); negative
/// zero prints as 0.
std::string format_number(double v);

inline constexpr const char* kForcesHeader = "t,foot,phase,wr,Fw_x,Fw_y,Fw_z,Fm_x,Fm_y,Fm_z,Ff_x,Ff_y,Ff_z,grf_norm";

/// Two rows per logged frame (left, right). grf_norm is the foot's vertical
/// ground reaction over m*g; the total is the sum over both rows.
void write_forces_csv(std::ostream& out, const std::vector<FrameLog>& log, double mass);
void write_footprints_csv(std::ostream& out, const std::vector<FootprintSummary>& rows);
void write_trace_csv(std::ostream& out, const std::vector<FrameLog>& log);

/// Plain PGM (P2), maxval 65535, with a `# hmin=.. hmax=..` comment line.
void write_pgm(std::ostream& out, std::span<const double> heights, int nx, int nz);

struct PgmImage {
  int nx = 0;
  int nz = 0;
  double hmin = 0.0;
  double hmax = 0.0;
  std::vector<int> values;

  /// Height of sample k under the stored linear mapping.
  double height(std::size_t k) const;
};

PgmImage read_pgm(std::istream& in);

/// Writes the whole string, creating parent directories. Throws
/// std::runtime_error naming the path on failure.
void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace terradeform
