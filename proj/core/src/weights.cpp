#include "caputolab/weights.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace caputolab {

namespace {

void check_order(double q) {
  if (!(q > 0.0 && q <= 1.0)) {
    throw std::domain_error("fractional order must lie in (0, 1], got " + std::to_string(q));
  }
}

// Below this lag the direct power differences lose at most a few ulps of
// a value of order (m+2)^2 ulp; above it the binomial series converges in a
// handful of terms.
constexpr std::size_t kSeriesFrom = 16;

// sum_{k >= first, k = first + n*stride} C(p,k) x^k, for |x| <= 1/17.
double binomial_tail(double p, double x, int first, int stride) {
  double coeff = 1.0;
  double power = 1.0;
  double sum = 0.0;
  for (int k = 1; k < 64; ++k) {
    coeff *= (p - (k - 1)) / k;
    power *= x;
    if (k >= first && (k - first) % stride == 0) {
      const double term = coeff * power;
      sum += term;
      if (std::abs(term) <= 1e-18 * std::abs(sum)) {
        break;
      }
    }
  }
  return sum;
}

}  // namespace

namespace detail {

// (m+1)^q - m^q
double predictor_lag(std::size_t m, double q) {
  if (m == 0) {
    return 1.0;
  }
  const double mm = static_cast<double>(m);
  return std::pow(mm, q) * std::expm1(q * std::log1p(1.0 / mm));
}

// (m+2)^p + m^p - 2(m+1)^p with p = q+1. For large m the odd binomial terms
// of (1+u)^p and (1-u)^p cancel exactly, leaving
// 2 (m+1)^p sum_{k even >= 2} C(p,k) u^k, u = 1/(m+1).
double corrector_lag(std::size_t m, double q) {
  const double p = q + 1.0;
  const double base = static_cast<double>(m) + 1.0;
  if (m < kSeriesFrom) {
    return std::pow(base + 1.0, p) + std::pow(base - 1.0, p) - 2.0 * std::pow(base, p);
  }
  return 2.0 * std::pow(base, p) * binomial_tail(p, 1.0 / base, 2, 2);
}

// i^{q+1} - (i-q)(i+1)^q = (i+1)^q [i((1-v)^q - 1) + q], v = 1/(i+1).
// Since q(1 - i v) = q v, the bracket is q v + i sum_{k>=2} C(q,k)(-v)^k.
double corrector_first(std::size_t i, double q) {
  const double ii = static_cast<double>(i);
  if (i < kSeriesFrom) {
    return std::pow(ii, q + 1.0) - (ii - q) * std::pow(ii + 1.0, q);
  }
  const double v = 1.0 / (ii + 1.0);
  return std::pow(ii + 1.0, q) * (q * v + ii * binomial_tail(q, -v, 2, 1));
}

}  // namespace detail

double predictor_weight_b(std::size_t j, std::size_t i, double q, double h) {
  check_order(q);
  if (!(h > 0.0)) {
    throw std::domain_error("step size must be positive");
  }
  if (j > i) {
    throw std::out_of_range("predictor weight index j=" + std::to_string(j) +
                            " exceeds i=" + std::to_string(i));
  }
  return std::pow(h, q) / q * detail::predictor_lag(i - j, q);
}

double corrector_weight_a(std::size_t j, std::size_t i, double q) {
  check_order(q);
  if (j > i + 1) {
    throw std::out_of_range("corrector weight index j=" + std::to_string(j) +
                            " exceeds i+1=" + std::to_string(i + 1));
  }
  if (j == i + 1) {
    return 1.0;
  }
  if (j == 0) {
    return detail::corrector_first(i, q);
  }
  return detail::corrector_lag(i - j, q);
}

AbmWeightTable make_weight_table(double q, std::size_t steps) {
  check_order(q);
  AbmWeightTable table;
  table.order = q;
  table.predictor.resize(steps + 1);
  table.corrector.resize(steps + 1);
  table.corrector_start.resize(steps + 1);
  for (std::size_t m = 0; m <= steps; ++m) {
    table.predictor[m] = detail::predictor_lag(m, q);
    table.corrector[m] = detail::corrector_lag(m, q);
    table.corrector_start[m] = detail::corrector_first(m, q);
  }
  return table;
}

}  // namespace caputolab
