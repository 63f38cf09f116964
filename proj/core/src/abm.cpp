#include "caputolab/abm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "caputolab/gamma.hpp"
#include "caputolab/weights.hpp"

namespace caputolab {

void FractionalIVP::validate() const {
  if (dimension == 0) {
    throw std::invalid_argument("IVP dimension must be positive");
  }
  if (!(order > 0.0 && order <= 1.0)) {
    throw std::domain_error("IVP order must lie in (0, 1], got " + std::to_string(order));
  }
  if (!rhs) {
    throw std::invalid_argument("IVP has no right-hand side");
  }
  if (x0.size() != dimension) {
    throw std::invalid_argument("initial state has length " + std::to_string(x0.size()) +
                                ", expected " + std::to_string(dimension));
  }
}

std::size_t SolverConfig::steps() const {
  return static_cast<std::size_t>(std::llround(T / h));
}

void SolverConfig::validate() const {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw std::invalid_argument("step size h must be positive");
  }
  if (!(T > 0.0) || !std::isfinite(T)) {
    throw std::invalid_argument("horizon T must be positive");
  }
  if (steps() < 1) {
    throw std::invalid_argument("horizon T must cover at least one step");
  }
  if (corrector_iterations < 1) {
    throw std::invalid_argument("corrector_iterations must be >= 1");
  }
  if (!(blowup_threshold > 0.0)) {
    throw std::invalid_argument("blowup_threshold must be positive");
  }
}

Trajectory::Trajectory(std::size_t dimension, double h, std::size_t capacity)
    : h_(h), states_(dimension), history_(dimension) {
  times_.reserve(capacity);
  for (std::size_t c = 0; c < dimension; ++c) {
    states_[c].reserve(capacity);
    history_[c].reserve(capacity);
  }
}

std::vector<double> Trajectory::state(std::size_t k) const {
  std::vector<double> x(dimension());
  for (std::size_t c = 0; c < x.size(); ++c) {
    x[c] = states_[c].at(k);
  }
  return x;
}

std::vector<double> Trajectory::rhs_value(std::size_t k) const {
  std::vector<double> f(dimension());
  for (std::size_t c = 0; c < f.size(); ++c) {
    f[c] = history_[c].at(k);
  }
  return f;
}

void Trajectory::push(double t, std::span<const double> x, std::span<const double> fx) {
  times_.push_back(t);
  for (std::size_t c = 0; c < states_.size(); ++c) {
    states_[c].push_back(x[c]);
    history_[c].push_back(fx[c]);
  }
}

void Trajectory::mark_unbounded(std::size_t step) {
  status_ = TrajectoryStatus::unbounded;
  unbounded_step_ = step;
}

namespace {

void evaluate(const FractionalIVP& ivp, double t, std::span<const double> x,
              std::span<double> out, std::size_t step) {
  ivp.rhs(t, x, out);
  for (double v : out) {
    if (std::isnan(v)) {
      throw IntegrationError("right-hand side returned NaN at step " + std::to_string(step));
    }
  }
}

bool exceeds(std::span<const double> x, double threshold) {
  return std::any_of(x.begin(), x.end(),
                     [threshold](double v) { return !(std::abs(v) <= threshold); });
}

}  // namespace

Trajectory abm_integrate(const FractionalIVP& ivp, const SolverConfig& config) {
  ivp.validate();
  config.validate();

  const std::size_t n = ivp.dimension;
  const std::size_t steps = config.steps();
  const double q = ivp.order;
  const double h = config.h;
  const double hq = std::pow(h, q);
  const double predictor_scale = hq / gamma_real(q + 1.0);
  const double corrector_scale = hq / gamma_real(q + 2.0);
  const AbmWeightTable weights = make_weight_table(q, steps);

  Trajectory traj(n, h, steps + 1);
  std::vector<double> x(ivp.x0);
  std::vector<double> fx(n);
  std::vector<double> predicted(n);
  std::vector<double> f_trial(n);
  std::vector<double> corrector_sum(n);

  if (exceeds(x, config.blowup_threshold)) {
    traj.mark_unbounded(0);
    return traj;
  }
  evaluate(ivp, 0.0, x, fx, 0);
  traj.push(0.0, x, fx);

  const double* bp = weights.predictor.data();
  const double* ap = weights.corrector.data();

  for (std::size_t i = 0; i < steps; ++i) {
    const double t_next = h * static_cast<double>(i + 1);
    const double a_first = weights.corrector_start[i];

    for (std::size_t c = 0; c < n; ++c) {
      const double* f = traj.rhs_component(c).data();
      double pred = 0.0;
      double corr = 0.0;
      // Lag-indexed convolution over the full history; j = 0 picks up the
      // generic corrector weight and is fixed up below.
#pragma omp simd reduction(+ : pred, corr)
      for (std::size_t j = 0; j <= i; ++j) {
        pred += bp[i - j] * f[j];
        corr += ap[i - j] * f[j];
      }
      corr += (a_first - ap[i]) * f[0];
      predicted[c] = ivp.x0[c] + predictor_scale * pred;
      corrector_sum[c] = corr;
    }

    evaluate(ivp, t_next, predicted, f_trial, i + 1);
    for (int iter = 0; iter < config.corrector_iterations; ++iter) {
      for (std::size_t c = 0; c < n; ++c) {
        x[c] = ivp.x0[c] + corrector_scale * (corrector_sum[c] + f_trial[c]);
      }
      if (exceeds(x, config.blowup_threshold)) {
        traj.mark_unbounded(i + 1);
        return traj;
      }
      evaluate(ivp, t_next, x, f_trial, i + 1);
    }
    traj.push(t_next, x, f_trial);
  }
  return traj;
}

}  // namespace caputolab
