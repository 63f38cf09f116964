#pragma once

#include <cstddef>
#include <vector>

namespace caputolab {

/// Predictor (fractional rectangle) weight b_{j,i+1} = (h^q/q)((i+1-j)^q - (i-j)^q).
/// Requires 0 <= j <= i; throws std::out_of_range otherwise and
/// std::domain_error for q outside (0,1] or h <= 0.
[[nodiscard]] double predictor_weight_b(std::size_t j, std::size_t i, double q, double h);

/// Corrector (fractional trapezoid) weight a_{j,i+1}, without the h^q/Gamma(q+2) factor.
///   j == 0        : i^{q+1} - (i-q)(i+1)^q
///   1 <= j <= i   : (i-j+2)^{q+1} + (i-j)^{q+1} - 2(i-j+1)^{q+1}
///   j == i+1      : 1
[[nodiscard]] double corrector_weight_a(std::size_t j, std::size_t i, double q);

/// Step-independent weight tables for a full integration of `steps` steps.
///
/// The weights only depend on the lag m = i - j, so the integrator builds them
/// once and runs the history sums as convolutions:
///   predictor[m] = (m+1)^q - m^q                         (b without h^q/q)
///   corrector[m] = (m+2)^{q+1} + m^{q+1} - 2(m+1)^{q+1}  (a_{j,i+1}, 1 <= j <= i)
///   corrector_start[i] = a_{0,i+1}
/// Large lags use expm1/log1p and binomial-series forms instead of
/// differences of nearly equal powers, which lose ~7 digits near m = 1e5.
struct AbmWeightTable {
  double order = 1.0;
  std::vector<double> predictor;
  std::vector<double> corrector;
  std::vector<double> corrector_start;
};

[[nodiscard]] AbmWeightTable make_weight_table(double q, std::size_t steps);

namespace detail {
double predictor_lag(std::size_t m, double q);
double corrector_lag(std::size_t m, double q);
double corrector_first(std::size_t i, double q);
}  // namespace detail

}  // namespace caputolab
