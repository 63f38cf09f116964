#pragma once

#include <functional>
#include <span>
#include <vector>

#include "caputolab/ivp.hpp"

namespace caputolab {

/// Exact solution x(t), written into `out`.
using ExactSolution = std::function<void(double t, std::span<double> out)>;

struct ManufacturedProblem {
  FractionalIVP ivp;
  ExactSolution exact;
};

/// D^q x = Gamma(3)/Gamma(3-q) t^{2-q} + t^2 - x, x(0) = 0, exact solution x = t^2.
///
/// The t^2 - x term vanishes on the exact solution; it couples the right-hand
/// side to the state so that the q = 1 case is not integrated exactly by the
/// trapezoid corrector.
[[nodiscard]] ManufacturedProblem manufactured_square(double q);

/// D^q x = Gamma(3)/Gamma(3-q) t^{2-q}, x(0) = 0: pure forcing, no state coupling.
[[nodiscard]] ManufacturedProblem manufactured_square_forcing(double q);

struct ConvergenceSample {
  double h = 0.0;
  double max_error = 0.0;
};

struct ConvergenceResult {
  std::vector<ConvergenceSample> samples;
  /// Least-squares slope of log(max error) against log(h).
  double slope = 0.0;
};

/// Runs the integrator at every step size on [0, T] and fits the observed order.
/// Requires at least three step sizes, each dividing T. Throws
/// std::invalid_argument on bad input and std::domain_error if the exact
/// solution yields NaN.
[[nodiscard]] ConvergenceResult convergence_order_estimate(const ManufacturedProblem& problem,
                                                           std::span<const double> h_list,
                                                           double T,
                                                           int corrector_iterations = 1);

/// Least-squares slope of y against x.
[[nodiscard]] double least_squares_slope(std::span<const double> x, std::span<const double> y);

}  // namespace caputolab
