#include "caputolab/gamma.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace caputolab {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeffs{
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos(double x) {
  // Evaluates Gamma(x) for x >= 0.5.
  const double z = x - 1.0;
  double series = kLanczosCoeffs[0];
  for (std::size_t k = 1; k < kLanczosCoeffs.size(); ++k) {
    series += kLanczosCoeffs[k] / (z + static_cast<double>(k));
  }
  const double t = z + kLanczosG + 0.5;
  // t^(z+1/2) e^(-t) split in two halves so large arguments do not overflow early.
  const double half_pow = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half_pow * (half_pow * std::exp(-t)) * series;
}

}  // namespace

double gamma_real(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::domain_error("gamma_real: argument must be positive and finite, got " +
                            std::to_string(x));
  }
  if (x < 0.5) {
    // Gamma(x) Gamma(1 - x) = pi / sin(pi x)
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * lanczos(1.0 - x));
  }
  return lanczos(x);
}

}  // namespace caputolab
