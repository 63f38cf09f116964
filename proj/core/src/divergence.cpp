#include "caputolab/divergence.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "caputolab/gamma.hpp"

namespace caputolab::stability {

double caputo_monomial(int n, double q, double x) {
  if (n < 0) {
    throw std::domain_error("caputo_monomial: degree must be non-negative");
  }
  if (!(q > 0.0 && q <= 1.0)) {
    throw std::domain_error("caputo_monomial: order must lie in (0, 1]");
  }
  if (!(x >= 0.0)) {
    throw std::domain_error("caputo_monomial: x must be non-negative, got " + std::to_string(x));
  }
  if (n == 0) {
    return 0.0;
  }
  const double nn = static_cast<double>(n);
  return gamma_real(nn + 1.0) / gamma_real(nn - q + 1.0) * std::pow(x, nn - q);
}

std::vector<double> tanh_taylor(double center, int order) {
  // d^k/dx^k tanh = P_k(T) with T = tanh(x), P_0 = T, P_{k+1} = P_k'(T) (1 - T^2).
  // Polynomials are stored by ascending powers of T.
  const double t = std::tanh(center);
  std::vector<double> poly{0.0, 1.0};
  std::vector<double> coeffs;
  double factorial = 1.0;
  for (int k = 0; k <= order; ++k) {
    if (k > 0) {
      factorial *= k;
    }
    double value = 0.0;
    for (std::size_t p = poly.size(); p-- > 0;) {
      value = value * t + poly[p];
    }
    coeffs.push_back(value / factorial);

    std::vector<double> next(poly.size() + 1, 0.0);
    for (std::size_t p = 1; p < poly.size(); ++p) {
      const double d = static_cast<double>(p) * poly[p];  // coefficient of T^{p-1}
      next[p - 1] += d;
      next[p + 1] -= d;
    }
    poly = std::move(next);
  }
  return coeffs;
}

DivergenceSeries divergence_series(const hnn::HnnParams& params, const Vec3& center,
                                   int taylor_order) {
  if (taylor_order != 1 && taylor_order != 3 && taylor_order != 5 && taylor_order != 7) {
    throw std::domain_error("taylor_order must be 1, 3, 5 or 7, got " +
                            std::to_string(taylor_order));
  }
  DivergenceSeries series;
  series.taylor_order = taylor_order;
  series.expansion_point = center;
  for (int i = 0; i < 3; ++i) {
    // f_i restricted to x_i: -x_i + w_ii tanh(x_i) + (terms constant in x_i).
    const std::vector<double> t = tanh_taylor(center[i], taylor_order);
    const double wii = params.w[i][i];
    for (int k = 1; k <= taylor_order; ++k) {
      double coeff = wii * t[k];
      if (k == 1) {
        coeff -= 1.0;
      }
      if (coeff != 0.0) {
        series.components[i].push_back({coeff, k});
      }
    }
  }
  return series;
}

DivergenceValue fractional_divergence(const hnn::HnnParams& params, const Vec3& point, double q,
                                      int taylor_order, const Vec3& center) {
  const DivergenceSeries series = divergence_series(params, center, taylor_order);
  DivergenceValue result;
  for (int i = 0; i < 3; ++i) {
    const double s = point[i] - center[i];
    const double sign = s < 0.0 ? -1.0 : 1.0;
    if (s < 0.0) {
      result.reflected = true;
    }
    for (const SeriesTerm& term : series.components[i]) {
      const double parity = (term.degree - 1) % 2 == 0 ? 1.0 : sign;
      result.value += term.coefficient * parity * caputo_monomial(term.degree, q, std::abs(s));
    }
  }
  return result;
}

double truncated_classical_divergence(const hnn::HnnParams& params, const Vec3& point,
                                      int taylor_order, const Vec3& center) {
  const DivergenceSeries series = divergence_series(params, center, taylor_order);
  double total = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double s = point[i] - center[i];
    for (const SeriesTerm& term : series.components[i]) {
      total += term.coefficient * term.degree * std::pow(s, term.degree - 1);
    }
  }
  return total;
}

double integer_divergence(const hnn::HnnParams& params, const Vec3& x) {
  double total = -3.0;
  for (int i = 0; i < 3; ++i) {
    const double c = std::cosh(x[i]);
    total += params.w[i][i] / (c * c);
  }
  return total;
}

}  // namespace caputolab::stability
