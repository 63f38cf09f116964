#include "caputolab/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "caputolab/abm.hpp"
#include "caputolab/gamma.hpp"

namespace caputolab {

namespace {

ManufacturedProblem square_problem(double q, bool coupled) {
  const double forcing = gamma_real(3.0) / gamma_real(3.0 - q);
  ManufacturedProblem problem;
  problem.ivp.dimension = 1;
  problem.ivp.order = q;
  problem.ivp.x0 = {0.0};
  problem.ivp.rhs = [q, forcing, coupled](double t, std::span<const double> x,
                                          std::span<double> out) {
    out[0] = forcing * std::pow(t, 2.0 - q);
    if (coupled) {
      out[0] += t * t - x[0];
    }
  };
  problem.exact = [](double t, std::span<double> out) { out[0] = t * t; };
  return problem;
}

}  // namespace

ManufacturedProblem manufactured_square(double q) { return square_problem(q, true); }

ManufacturedProblem manufactured_square_forcing(double q) { return square_problem(q, false); }

double least_squares_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("least_squares_slope: need two or more paired samples");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxy += (x[k] - mx) * (y[k] - my);
    sxx += (x[k] - mx) * (x[k] - mx);
  }
  if (sxx == 0.0) {
    throw std::invalid_argument("least_squares_slope: abscissae are all equal");
  }
  return sxy / sxx;
}

ConvergenceResult convergence_order_estimate(const ManufacturedProblem& problem,
                                             std::span<const double> h_list, double T,
                                             int corrector_iterations) {
  if (h_list.size() < 3) {
    throw std::invalid_argument("convergence_order_estimate: insufficient points (need >= 3 step sizes)");
  }
  for (double h : h_list) {
    if (!(h > 0.0)) {
      throw std::invalid_argument("convergence_order_estimate: step sizes must be positive");
    }
    const double ratio = T / h;
    if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio)) {
      throw std::invalid_argument("convergence_order_estimate: step size does not divide T");
    }
  }

  ConvergenceResult result;
  std::vector<double> log_h;
  std::vector<double> log_err;
  std::vector<double> exact(problem.ivp.dimension);
  for (double h : h_list) {
    SolverConfig config;
    config.h = h;
    config.T = T;
    config.corrector_iterations = corrector_iterations;
    const Trajectory traj = abm_integrate(problem.ivp, config);
    if (!traj.completed()) {
      throw std::runtime_error("convergence_order_estimate: trajectory became unbounded");
    }
    double max_error = 0.0;
    for (std::size_t k = 1; k < traj.size(); ++k) {
      problem.exact(traj.times()[k], exact);
      for (std::size_t c = 0; c < exact.size(); ++c) {
        if (std::isnan(exact[c])) {
          throw std::domain_error("convergence_order_estimate: exact solution returned NaN");
        }
        max_error = std::max(max_error, std::abs(exact[c] - traj.component(c)[k]));
      }
    }
    result.samples.push_back({h, max_error});
    log_h.push_back(std::log(h));
    log_err.push_back(std::log(max_error));
  }
  result.slope = least_squares_slope(log_h, log_err);
  return result;
}

}  // namespace caputolab
