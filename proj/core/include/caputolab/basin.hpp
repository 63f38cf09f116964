#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "caputolab/classify.hpp"
#include "caputolab/hnn.hpp"
#include "caputolab/ivp.hpp"

namespace caputolab::dynamics {

using hnn::Vec3;

enum class BasinLabel : std::uint8_t { minus, undecided, plus, unbounded };

[[nodiscard]] std::string_view to_string(BasinLabel label);
/// Greyscale byte: 0 minus, 127 undecided, 255 plus, 64 unbounded.
[[nodiscard]] std::uint8_t grey_level(BasinLabel label);
[[nodiscard]] BasinLabel to_basin_label(const TrajectoryClass& cls);
/// minus <-> plus; undecided and unbounded map to themselves.
[[nodiscard]] BasinLabel mirrored(BasinLabel label);

/// Planar lattice of initial conditions: x = origin + u * u_axis + v * v_axis.
struct PlaneSpec {
  Vec3 origin{0.0, 0.0, 0.0};
  Vec3 u_axis{0.0, 1.0, 0.0};
  Vec3 v_axis{};
  double u_lo = -5.0;
  double u_hi = 5.0;
  double v_lo = -5.0;
  double v_hi = 5.0;
  std::size_t n_u = 40;
  std::size_t n_v = 40;

  /// Lattice coordinate a in [0, n). Computed about the centre of the range
  /// so that a symmetric range yields exactly negated coordinates for a and
  /// n-1-a.
  [[nodiscard]] double u_at(std::size_t a) const;
  [[nodiscard]] double v_at(std::size_t b) const;
  [[nodiscard]] Vec3 point(std::size_t a, std::size_t b) const;
  void validate() const;
};

/// Plane through the origin with normal `normal`: u along x2, v along
/// normalize(normal.z, 0, -normal.x). For the default normal (3.267, 0, 0.493)
/// this is the plane containing the three equilibria.
[[nodiscard]] PlaneSpec equilibrium_plane(const Vec3& normal = {3.267, 0.0, 0.493});

struct BasinPoint {
  double u = 0.0;
  double v = 0.0;
  Vec3 x{};
  BasinLabel label = BasinLabel::undecided;
};

struct BasinGrid {
  PlaneSpec plane;
  double order = 0.0;
  SolverConfig config;
  /// points[b * n_u + a]: a runs along u, b along v.
  std::vector<BasinPoint> points;

  [[nodiscard]] const BasinPoint& at(std::size_t a, std::size_t b) const {
    return points[b * plane.n_u + a];
  }
};

struct BasinOptions {
  ClassifyTolerances tolerances{};
  std::size_t jobs = 0;
};

[[nodiscard]] BasinGrid basin_scan(const PlaneSpec& plane, const SolverConfig& config, double q,
                                   const hnn::HnnParams& params = {},
                                   const BasinOptions& options = {});

}  // namespace caputolab::dynamics
