#include "caputolab/io.hpp"

#include <charconv>

namespace caputolab::io {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << 't';
  for (std::size_t c = 0; c < traj.dimension(); ++c) {
    os << ",x" << (c + 1);
  }
  os << '\n';
  for (std::size_t k = 0; k < traj.size(); ++k) {
    os << format_double(traj.times()[k]);
    for (std::size_t c = 0; c < traj.dimension(); ++c) {
      os << ',' << format_double(traj.component(c)[k]);
    }
    os << '\n';
  }
}

void write_bifurcation_csv(std::ostream& os, const dynamics::BifurcationDataset& bd) {
  os << "param,ic_id,h,maximum\n";
  const std::string h = format_double(bd.config.h);
  for (std::size_t v = 0; v < bd.values.size(); ++v) {
    const std::string param = format_double(bd.values[v]);
    for (std::size_t c = 0; c < bd.ics.size(); ++c) {
      for (double m : bd.cell(v, c).maxima.values) {
        os << param << ',' << bd.ics[c].id << ',' << h << ',' << format_double(m) << '\n';
      }
    }
  }
}

void write_basin_csv(std::ostream& os, const dynamics::BasinGrid& grid) {
  os << "u,v,x1,x2,x3,label\n";
  for (const dynamics::BasinPoint& p : grid.points) {
    os << format_double(p.u) << ',' << format_double(p.v) << ',' << format_double(p.x[0]) << ','
       << format_double(p.x[1]) << ',' << format_double(p.x[2]) << ','
       << dynamics::to_string(p.label) << '\n';
  }
}

void write_basin_pgm(std::ostream& os, const dynamics::BasinGrid& grid) {
  const std::size_t nu = grid.plane.n_u;
  const std::size_t nv = grid.plane.n_v;
  os << "P5\n" << nu << ' ' << nv << "\n255\n";
  for (std::size_t row = 0; row < nv; ++row) {
    const std::size_t b = nv - 1 - row;
    for (std::size_t a = 0; a < nu; ++a) {
      os.put(static_cast<char>(dynamics::grey_level(grid.at(a, b).label)));
    }
  }
}

void write_shift_csv(std::ostream& os, const dynamics::ShiftTable& table) {
  os << "h,ic_id,delta,residual\n";
  for (const dynamics::ShiftRow& r : table.rows) {
    os << format_double(r.h) << ',' << r.ic_id << ',' << format_double(r.shift.delta) << ','
       << format_double(r.shift.residual) << '\n';
  }
}

void write_shift_detail_csv(std::ostream& os, const dynamics::ShiftTable& table) {
  os << "h,ic_id,role,reference_id,delta,residual,unshifted\n";
  for (const dynamics::ShiftRow& r : table.rows) {
    os << format_double(r.h) << ',' << r.ic_id << ','
       << (r.role == dynamics::IcRole::reference ? "reference" : "outside") << ','
       << r.reference_id << ',' << format_double(r.shift.delta) << ','
       << format_double(r.shift.residual) << ',' << format_double(r.shift.unshifted) << '\n';
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  write_file(path, [&](std::ostream& os) { os << content; });
}

}  // namespace caputolab::io
