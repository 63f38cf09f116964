#include "caputolab/basin.hpp"

#include <cmath>
#include <stdexcept>

#include "caputolab/abm.hpp"
#include "caputolab/parallel.hpp"

namespace caputolab::dynamics {

std::string_view to_string(BasinLabel label) {
  switch (label) {
    case BasinLabel::minus: return "minus";
    case BasinLabel::undecided: return "undecided";
    case BasinLabel::plus: return "plus";
    case BasinLabel::unbounded: return "unbounded";
  }
  return "undecided";
}

std::uint8_t grey_level(BasinLabel label) {
  switch (label) {
    case BasinLabel::minus: return 0;
    case BasinLabel::undecided: return 127;
    case BasinLabel::plus: return 255;
    case BasinLabel::unbounded: return 64;
  }
  return 127;
}

BasinLabel to_basin_label(const TrajectoryClass& cls) {
  if (cls.kind == TrajectoryKind::unbounded) {
    return BasinLabel::unbounded;
  }
  switch (cls.attractor_sign) {
    case AttractorSign::plus: return BasinLabel::plus;
    case AttractorSign::minus: return BasinLabel::minus;
    case AttractorSign::undecided: return BasinLabel::undecided;
  }
  return BasinLabel::undecided;
}

BasinLabel mirrored(BasinLabel label) {
  switch (label) {
    case BasinLabel::minus: return BasinLabel::plus;
    case BasinLabel::plus: return BasinLabel::minus;
    default: return label;
  }
}

namespace {

double lattice(double lo, double hi, std::size_t n, std::size_t k) {
  const double centre = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double steps = static_cast<double>(n - 1);
  return centre + half * ((2.0 * static_cast<double>(k) - steps) / steps);
}

}  // namespace

double PlaneSpec::u_at(std::size_t a) const { return lattice(u_lo, u_hi, n_u, a); }
double PlaneSpec::v_at(std::size_t b) const { return lattice(v_lo, v_hi, n_v, b); }

Vec3 PlaneSpec::point(std::size_t a, std::size_t b) const {
  const double u = u_at(a);
  const double v = v_at(b);
  Vec3 x{};
  for (int c = 0; c < 3; ++c) {
    x[c] = origin[c] + (u * u_axis[c] + v * v_axis[c]);
  }
  return x;
}

void PlaneSpec::validate() const {
  if (n_u < 2 || n_v < 2) {
    throw std::invalid_argument("basin lattice must be at least 2x2");
  }
  for (double e : {u_lo, u_hi, v_lo, v_hi}) {
    if (!std::isfinite(e)) {
      throw std::invalid_argument("basin extent must be finite");
    }
  }
  if (!(u_lo <= u_hi) || !(v_lo <= v_hi)) {
    throw std::invalid_argument("basin extent must satisfy lo <= hi");
  }
}

PlaneSpec equilibrium_plane(const Vec3& normal) {
  PlaneSpec plane;
  plane.u_axis = {0.0, 1.0, 0.0};
  const double len = std::hypot(normal[0], normal[2]);
  if (!(len > 0.0) || normal[1] != 0.0) {
    throw std::invalid_argument("equilibrium_plane: normal must lie in the x1-x3 plane");
  }
  plane.v_axis = {normal[2] / len, 0.0, -normal[0] / len};
  return plane;
}

BasinGrid basin_scan(const PlaneSpec& plane, const SolverConfig& config, double q,
                     const hnn::HnnParams& params, const BasinOptions& options) {
  plane.validate();
  config.validate();
  BasinGrid grid;
  grid.plane = plane;
  grid.order = q;
  grid.config = config;
  grid.points.resize(plane.n_u * plane.n_v);
  parallel_for(grid.points.size(), options.jobs, [&](std::size_t index) {
    const std::size_t a = index % plane.n_u;
    const std::size_t b = index / plane.n_u;
    BasinPoint& pt = grid.points[index];
    pt.u = plane.u_at(a);
    pt.v = plane.v_at(b);
    pt.x = plane.point(a, b);
    const Trajectory traj = abm_integrate(hnn::make_ivp(params, q, pt.x), config);
    pt.label = to_basin_label(classify_trajectory(traj, options.tolerances));
  });
  return grid;
}

}  // namespace caputolab::dynamics
