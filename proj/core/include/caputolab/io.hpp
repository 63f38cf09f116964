#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "caputolab/basin.hpp"
#include "caputolab/bifurcation.hpp"
#include "caputolab/hdelay.hpp"
#include "caputolab/ivp.hpp"

namespace caputolab::io {

/// Shortest text that reads back to exactly the same double.
[[nodiscard]] std::string format_double(double v);

/// `t,x1,...,xn`, one row per grid point.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

/// `param,ic_id,h,maximum`, one row per maximum. Empty cells write no rows.
void write_bifurcation_csv(std::ostream& os, const dynamics::BifurcationDataset& bd);

/// `u,v,x1,x2,x3,label`, u fastest.
void write_basin_csv(std::ostream& os, const dynamics::BasinGrid& grid);

/// Binary PGM (P5), one byte per lattice cell; top image row is the largest v.
void write_basin_pgm(std::ostream& os, const dynamics::BasinGrid& grid);

/// `h,ic_id,delta,residual`
void write_shift_csv(std::ostream& os, const dynamics::ShiftTable& table);

/// `h,ic_id,role,reference_id,delta,residual,unshifted`
void write_shift_detail_csv(std::ostream& os, const dynamics::ShiftTable& table);

/// Opens `path` for binary writing and runs `writer`; throws std::runtime_error
/// when the file cannot be opened or written.
template <class Writer>
void write_file(const std::filesystem::path& path, Writer&& writer);

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace caputolab::io

#include <fstream>
#include <stdexcept>

namespace caputolab::io {

template <class Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) {
    throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  }
  writer(os);
  os.flush();
  if (!os) {
    throw std::runtime_error("failed writing '" + path.string() + "'");
  }
}

}  // namespace caputolab::io
