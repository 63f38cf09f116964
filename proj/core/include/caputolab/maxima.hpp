#pragma once

#include <cstddef>
#include <vector>

#include "caputolab/ivp.hpp"

namespace caputolab::dynamics {

/// Positive local maxima of one state component after transient removal.
struct MaximaSet {
  /// Parabola-refined peak values, sorted ascending.
  std::vector<double> values;
  double transient_fraction = 0.0;
  /// Set when the source trajectory was unbounded; `values` is then empty.
  bool unbounded = false;
};

/// One local maximum in chronological order.
struct PeakEvent {
  std::size_t index = 0;  // grid index of the sampled maximum
  double offset = 0.0;    // parabolic vertex offset in units of h, in [-1/2, 1/2]
  double value = 0.0;     // refined peak value
};

/// Interior indices k with x[k-1] < x[k] >= x[k+1], starting after `first`.
/// Each peak is refined through the parabola on (k-1, k, k+1).
[[nodiscard]] std::vector<PeakEvent> find_peaks(const std::vector<double>& series,
                                                std::size_t first);
[[nodiscard]] std::vector<PeakEvent> find_peaks(std::span<const double> series,
                                                std::size_t first);

/// Quadratic interpolation of a series at fractional index k + offset.
[[nodiscard]] double interpolate_at(std::span<const double> series, std::size_t k, double offset);

/// First grid index kept after discarding the leading `transient_fraction`.
[[nodiscard]] std::size_t transient_cut(std::size_t samples, double transient_fraction);

/// Positive maxima of component `component` (x1 by default) of the trajectory.
/// Throws std::invalid_argument when transient_fraction is outside [0,1).
[[nodiscard]] MaximaSet extract_maxima(const Trajectory& traj, double transient_fraction,
                                       std::size_t component = 0);

}  // namespace caputolab::dynamics
