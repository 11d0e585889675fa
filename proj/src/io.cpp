#include "terradeform/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace terradeform {

std::string format_number(double v) {
  if (v == 0.0) return "0";
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 9);
  if (ec != std::errc{}) throw std::runtime_error("format_number failed");
  return {buf.data(), ptr};
}

void write_forces_csv(std::ostream& out, const std::vector<FrameLog>& log, double mass) {
  const double weight = mass * kGravity;
  out << kForcesHeader << '\n';
  for (const FrameLog& row : log) {
    for (Foot f : kFeet) {
      const FootForces& ff = row.forces[f];
      const auto vec = [&out](const Vec3& v) {
        out << ',' << format_number(v.x) << ',' << format_number(v.y) << ',' << format_number(v.z);
      };
      out << format_number(row.forces.t) << ',' << name(f) << ','
          << name(row.trace.phases[static_cast<std::size_t>(index(f))]) << ',' << format_number(ff.weight_ratio);
      vec(ff.weight);
      vec(ff.momentum);
      vec(ff.foot);
      out << ',' << format_number(ff.ground_reaction.y / weight) << '\n';
    }
  }
}

void write_footprints_csv(std::ostream& out, const std::vector<FootprintSummary>& rows) {
  out << "foot,t0,t_end,num_hits,mean_depth,carved_volume,bump_volume\n";
  for (const FootprintSummary& r : rows)
    out << r.source << ',' << format_number(r.t0) << ',' << format_number(r.t_end) << ',' << r.num_hits << ','
        << format_number(r.mean_depth) << ',' << format_number(r.carved_volume) << ','
        << format_number(r.bump_volume) << '\n';
}

void write_trace_csv(std::ostream& out, const std::vector<FrameLog>& log) {
  out << "t,character,com_x,com_y,com_z,tilt,tilt_rate,torque,"
         "left_x,left_y,left_z,left_phase,right_x,right_y,right_z,right_phase\n";
  for (const FrameLog& row : log) {
    const TraceRow& r = row.trace;
    out << format_number(r.t) << ',' << row.character << ',' << format_number(r.com.x) << ','
        << format_number(r.com.y) << ',' << format_number(r.com.z) << ',' << format_number(r.tilt) << ','
        << format_number(r.tilt_rate) << ',' << format_number(r.torque);
    for (std::size_t f = 0; f < 2; ++f)
      out << ',' << format_number(r.feet[f].x) << ',' << format_number(r.feet[f].y) << ','
          << format_number(r.feet[f].z) << ',' << name(r.phases[f]);
    out << '\n';
  }
}

void write_pgm(std::ostream& out, std::span<const double> heights, int nx, int nz) {
  if (heights.size() != static_cast<std::size_t>(nx) * static_cast<std::size_t>(nz))
    throw std::invalid_argument("write_pgm: size does not match grid");
  double hmin = heights.empty() ? 0.0 : heights[0];
  double hmax = hmin;
  for (double h : heights) {
    hmin = std::min(hmin, h);
    hmax = std::max(hmax, h);
  }
  out << "P2\n# hmin=" << format_number(hmin) << " hmax=" << format_number(hmax) << '\n'
      << nx << ' ' << nz << "\n65535\n";
  const double span = hmax - hmin;
  for (int j = 0; j < nz; ++j) {
    for (int i = 0; i < nx; ++i) {
      const double h = heights[static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i)];
      const long v = span > 0.0 ? std::lround(65535.0 * (h - hmin) / span) : 0;
      out << v << (i + 1 == nx ? '\n' : ' ');
    }
  }
}

double PgmImage::height(std::size_t k) const { return hmin + (hmax - hmin) * values.at(k) / 65535.0; }

PgmImage read_pgm(std::istream& in) {
  std::string magic;
  if (!std::getline(in, magic) || magic != "P2") throw std::runtime_error("read_pgm: not a P2 file");
  std::string comment;
  if (!std::getline(in, comment)) throw std::runtime_error("read_pgm: missing header comment");
  PgmImage img;
  std::istringstream c(comment);
  std::string hash;
  std::string a;
  std::string b;
  c >> hash >> a >> b;
  if (hash != "#" || a.rfind("hmin=", 0) != 0 || b.rfind("hmax=", 0) != 0)
    throw std::runtime_error("read_pgm: missing hmin/hmax comment");
  img.hmin = std::stod(a.substr(5));
  img.hmax = std::stod(b.substr(5));
  int maxval = 0;
  if (!(in >> img.nx >> img.nz >> maxval) || maxval != 65535 || img.nx <= 0 || img.nz <= 0)
    throw std::runtime_error("read_pgm: bad dimensions or maxval");
  img.values.resize(static_cast<std::size_t>(img.nx) * static_cast<std::size_t>(img.nz));
  for (int& v : img.values)
    if (!(in >> v)) throw std::runtime_error("read_pgm: truncated data");
  return img;
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw std::runtime_error("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << contents;
  out.flush();
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace terradeform
