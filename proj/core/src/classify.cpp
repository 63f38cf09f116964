#include "caputolab/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "caputolab/maxima.hpp"

namespace caputolab::dynamics {

std::string_view to_string(TrajectoryKind kind) {
  switch (kind) {
    case TrajectoryKind::equilibrium: return "equilibrium";
    case TrajectoryKind::npt: return "NPT";
    case TrajectoryKind::aperiodic: return "aperiodic";
    case TrajectoryKind::unbounded: return "unbounded";
  }
  return "aperiodic";
}

std::string_view to_string(AttractorSign sign) {
  switch (sign) {
    case AttractorSign::plus: return "plus";
    case AttractorSign::minus: return "minus";
    case AttractorSign::undecided: return "undecided";
  }
  return "undecided";
}

std::vector<std::pair<double, double>> cluster_values(std::vector<double> values, double gap) {
  std::sort(values.begin(), values.end());
  std::vector<std::pair<double, double>> clusters;
  for (double v : values) {
    if (clusters.empty() || v - clusters.back().second > gap) {
      clusters.emplace_back(v, v);
    } else {
      clusters.back().second = v;
    }
  }
  return clusters;
}

AttractorSign attractor_sign(double tail_mean, double threshold) {
  if (tail_mean > threshold) {
    return AttractorSign::plus;
  }
  if (tail_mean < -threshold) {
    return AttractorSign::minus;
  }
  return AttractorSign::undecided;
}

double closing_error(const Trajectory& traj, std::size_t first, std::size_t lag) {
  const std::size_t n = traj.dimension();
  const std::vector<PeakEvent> peaks = find_peaks(traj.component(0), first);
  if (lag == 0 || peaks.size() <= lag) {
    return std::numeric_limits<double>::infinity();
  }
  std::vector<double> scale(n, 1.0);
  for (std::size_t c = 0; c < n; ++c) {
    const auto col = traj.component(c).subspan(first);
    const auto [lo, hi] = std::minmax_element(col.begin(), col.end());
    if (*hi - *lo > 0.0) {
      scale[c] = *hi - *lo;
    }
  }
  std::vector<std::vector<double>> events(peaks.size(), std::vector<double>(n));
  for (std::size_t m = 0; m < peaks.size(); ++m) {
    for (std::size_t c = 0; c < n; ++c) {
      events[m][c] =
          interpolate_at(traj.component(c), peaks[m].index, peaks[m].offset) / scale[c];
    }
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m + lag < events.size(); ++m) {
    double d2 = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
      const double d = events[m + lag][c] - events[m][c];
      d2 += d * d;
    }
    best = std::min(best, std::sqrt(d2));
  }
  return best;
}

TrajectoryClass classify_trajectory(const Trajectory& traj, const ClassifyTolerances& tol) {
  TrajectoryClass result;
  if (!traj.completed()) {
    result.kind = TrajectoryKind::unbounded;
    return result;
  }
  const std::size_t first = transient_cut(traj.size(), tol.transient_fraction);

  const auto x1 = traj.component(0).subspan(first);
  double mean = 0.0;
  for (double v : x1) {
    mean += v;
  }
  mean /= static_cast<double>(std::max<std::size_t>(x1.size(), 1));
  result.tail_mean = mean;
  result.attractor_sign = attractor_sign(mean, tol.sign_threshold);

  double variation = 0.0;
  for (std::size_t c = 0; c < traj.dimension(); ++c) {
    const auto col = traj.component(c).subspan(first);
    const auto [lo, hi] = std::minmax_element(col.begin(), col.end());
    variation = std::max(variation, *hi - *lo);
  }
  if (variation < tol.equilibrium_variation) {
    result.kind = TrajectoryKind::equilibrium;
    return result;
  }

  std::vector<double> maxima;
  for (const PeakEvent& peak : find_peaks(traj.component(0), first)) {
    maxima.push_back(peak.value);
  }
  result.maxima_count = maxima.size();
  if (maxima.size() < tol.min_maxima) {
    result.kind = TrajectoryKind::aperiodic;
    result.low_confidence = true;
    result.diagnostic = "insufficient data: fewer than " + std::to_string(tol.min_maxima) +
                        " maxima in the tail";
    return result;
  }

  const auto clusters = cluster_values(maxima, tol.cluster_width);
  result.cluster_count = clusters.size();
  for (const auto& [lo, hi] : clusters) {
    result.max_cluster_width = std::max(result.max_cluster_width, hi - lo);
    if (lo > 0.0) {
      ++result.positive_clusters;
    }
  }
  const bool tight = result.max_cluster_width <= tol.cluster_width;
  if (clusters.size() <= tol.max_clusters && tight) {
    // A cycle visits every cluster at least once, so the period in maxima is
    // at least the cluster count; try lags up to K_max.
    result.closing_error = std::numeric_limits<double>::infinity();
    for (std::size_t lag = clusters.size(); lag <= tol.max_clusters; ++lag) {
      const double err = closing_error(traj, first, lag);
      result.closing_error = std::min(result.closing_error, err);
      if (err <= tol.closing_error) {
        result.kind = TrajectoryKind::npt;
        result.period = lag;
        result.closing_error = err;
        return result;
      }
    }
  }
  result.kind = TrajectoryKind::aperiodic;
  return result;
}

}  // namespace caputolab::dynamics
