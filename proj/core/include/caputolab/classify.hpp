#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "caputolab/ivp.hpp"

namespace caputolab::dynamics {

enum class TrajectoryKind { equilibrium, npt, aperiodic, unbounded };
enum class AttractorSign { plus, minus, undecided };

[[nodiscard]] std::string_view to_string(TrajectoryKind kind);
[[nodiscard]] std::string_view to_string(AttractorSign sign);

struct ClassifyTolerances {
  double transient_fraction = 0.5;
  double equilibrium_variation = 1e-6;
  double cluster_width = 1e-3;  // delta_cluster
  std::size_t max_clusters = 32;  // K_max
  double closing_error = 1e-4;  // epsilon_close, on the range-normalised state
  double sign_threshold = 0.05;  // delta_sign
  std::size_t min_maxima = 10;
};

/// Outcome of classifying the tail of one trajectory.
///
/// For an NPT, `period` is the number of x1-maximum clusters per cycle
/// (all maxima, both signs) and `positive_clusters` the number of those
/// clusters above zero, which is what a bifurcation diagram of positive
/// maxima shows.
struct TrajectoryClass {
  TrajectoryKind kind = TrajectoryKind::aperiodic;
  std::size_t period = 0;
  std::size_t positive_clusters = 0;
  double closing_error = 0.0;
  double max_cluster_width = 0.0;
  std::size_t cluster_count = 0;
  std::size_t maxima_count = 0;
  AttractorSign attractor_sign = AttractorSign::undecided;
  double tail_mean = 0.0;
  bool low_confidence = false;
  std::string diagnostic;
};

/// Groups sorted values: a new cluster starts where the gap exceeds `gap`.
/// Returns the (min, max) of every cluster.
[[nodiscard]] std::vector<std::pair<double, double>> cluster_values(std::vector<double> values,
                                                                     double gap);

/// Smallest normalised distance between tail states one period apart,
/// measured at x1 maxima (quadratically interpolated to the vertex).
/// Each component is scaled by its tail range.
[[nodiscard]] double closing_error(const Trajectory& traj, std::size_t first,
                                   std::size_t lag_in_maxima);

[[nodiscard]] AttractorSign attractor_sign(double tail_mean, double threshold);

[[nodiscard]] TrajectoryClass classify_trajectory(const Trajectory& traj,
                                                  const ClassifyTolerances& tol = {});

}  // namespace caputolab::dynamics
