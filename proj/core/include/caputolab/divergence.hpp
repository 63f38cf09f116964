#pragma once

#include <array>
#include <vector>

#include "caputolab/hnn.hpp"

namespace caputolab::stability {

using hnn::Vec3;

/// Caputo derivative of the monomial x^n about 0:
/// Gamma(n+1)/Gamma(n-q+1) x^{n-q} for n >= 1, and 0 for n = 0.
/// Throws std::domain_error for x < 0 or q outside (0,1].
[[nodiscard]] double caputo_monomial(int n, double q, double x);

struct SeriesTerm {
  double coefficient = 0.0;
  int degree = 0;
};

/// Per-component diagonal Taylor polynomial of f_i in the shifted variable
/// s_i = x_i - c_i, with constant terms dropped (their Caputo derivative is 0).
struct DivergenceSeries {
  int taylor_order = 5;
  Vec3 expansion_point{};
  std::array<std::vector<SeriesTerm>, 3> components;
};

/// Taylor coefficients tanh^{(k)}(c)/k! for k = 0..order.
[[nodiscard]] std::vector<double> tanh_taylor(double center, int order);

/// taylor_order must be one of 1, 3, 5, 7 (std::domain_error otherwise).
[[nodiscard]] DivergenceSeries divergence_series(const hnn::HnnParams& params,
                                                 const Vec3& center, int taylor_order);

/// Fractional divergence sum_i d^q f_i / d x_i^q at `point`, using the
/// truncated Taylor polynomial about `center` and the monomial rule termwise.
///
/// A component with s_i = x_i - c_i < 0 is evaluated at |s_i| and each term
/// of degree k carries sign(s_i)^{k-1}, which is the convention that keeps
/// q -> 1 continuous with the classical derivative. `reflected` reports
/// whether that happened.
struct DivergenceValue {
  double value = 0.0;
  bool reflected = false;
};

[[nodiscard]] DivergenceValue fractional_divergence(const hnn::HnnParams& params,
                                                    const Vec3& point, double q,
                                                    int taylor_order = 5,
                                                    const Vec3& center = {0.0, 0.0, 0.0});

/// Classical divergence of the same truncated polynomial (termwise k s^{k-1}).
[[nodiscard]] double truncated_classical_divergence(const hnn::HnnParams& params,
                                                    const Vec3& point, int taylor_order = 5,
                                                    const Vec3& center = {0.0, 0.0, 0.0});

/// -3 + sum_i w_ii sech^2(x_i), the trace of the Jacobian.
[[nodiscard]] double integer_divergence(const hnn::HnnParams& params, const Vec3& x);

}  // namespace caputolab::stability
