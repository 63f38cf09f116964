#include "caputolab/maxima.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace caputolab::dynamics {

std::size_t transient_cut(std::size_t samples, double transient_fraction) {
  if (!(transient_fraction >= 0.0 && transient_fraction < 1.0)) {
    throw std::invalid_argument("transient_fraction must lie in [0, 1)");
  }
  return static_cast<std::size_t>(std::floor(transient_fraction * static_cast<double>(samples)));
}

std::vector<PeakEvent> find_peaks(std::span<const double> x, std::size_t first) {
  std::vector<PeakEvent> peaks;
  if (x.size() < 3) {
    return peaks;
  }
  for (std::size_t k = std::max<std::size_t>(first, 1); k + 1 < x.size(); ++k) {
    if (!(x[k - 1] < x[k] && x[k] >= x[k + 1])) {
      continue;
    }
    const double y0 = x[k - 1];
    const double y1 = x[k];
    const double y2 = x[k + 1];
    const double curvature = y0 - 2.0 * y1 + y2;
    PeakEvent peak;
    peak.index = k;
    if (curvature < 0.0) {
      peak.offset = 0.5 * (y0 - y2) / curvature;
      peak.value = y1 - 0.25 * (y0 - y2) * peak.offset;
    } else {
      peak.value = y1;
    }
    peaks.push_back(peak);
  }
  return peaks;
}

std::vector<PeakEvent> find_peaks(const std::vector<double>& series, std::size_t first) {
  return find_peaks(std::span<const double>(series), first);
}

double interpolate_at(std::span<const double> x, std::size_t k, double s) {
  const double y0 = x[k - 1];
  const double y1 = x[k];
  const double y2 = x[k + 1];
  return y1 + 0.5 * s * (y2 - y0) + 0.5 * s * s * (y0 - 2.0 * y1 + y2);
}

MaximaSet extract_maxima(const Trajectory& traj, double transient_fraction,
                         std::size_t component) {
  MaximaSet result;
  result.transient_fraction = transient_fraction;
  const std::size_t first = transient_cut(traj.size(), transient_fraction);
  if (!traj.completed()) {
    result.unbounded = true;
    return result;
  }
  if (component >= traj.dimension()) {
    throw std::invalid_argument("extract_maxima: component out of range");
  }
  for (const PeakEvent& peak : find_peaks(traj.component(component), first)) {
    if (traj.component(component)[peak.index] > 0.0) {
      result.values.push_back(peak.value);
    }
  }
  std::sort(result.values.begin(), result.values.end());
  return result;
}

}  // namespace caputolab::dynamics
