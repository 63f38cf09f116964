#include "caputolab/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace caputolab::stability {

namespace {

using cplx = std::complex<double>;

double principal_argument(cplx z) {
  double a = std::atan2(z.imag(), z.real());
  if (a >= std::numbers::pi) {
    a -= 2.0 * std::numbers::pi;
  }
  return a;
}

// One real root of x^3 + a x^2 + b x + c.
double real_cubic_root(double a, double b, double c) {
  const double p = b - a * a / 3.0;
  const double qq = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double disc = qq * qq / 4.0 + p * p * p / 27.0;
  double y = 0.0;
  if (disc > 0.0) {
    const double s = std::sqrt(disc);
    y = std::cbrt(-qq / 2.0 + s) + std::cbrt(-qq / 2.0 - s);
  } else if (p < 0.0) {
    // Three real roots; take the largest.
    const double r = std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * qq / (2.0 * p * r), -1.0, 1.0);
    y = 2.0 * r * std::cos(std::acos(arg) / 3.0);
  } else {
    y = std::cbrt(-qq);
  }
  double x = y - a / 3.0;
  // Newton polish on the original cubic.
  for (int it = 0; it < 8; ++it) {
    const double f = ((x + a) * x + b) * x + c;
    const double df = (3.0 * x + 2.0 * a) * x + b;
    if (df == 0.0) {
      break;
    }
    const double dx = f / df;
    x -= dx;
    if (std::abs(dx) <= 1e-16 * std::max(1.0, std::abs(x))) {
      break;
    }
  }
  return x;
}

}  // namespace

std::array<double, 3> characteristic_coefficients(const Mat3& m) {
  const double trace = m[0][0] + m[1][1] + m[2][2];
  const double minors = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] -
                        m[0][2] * m[2][0] + m[1][1] * m[2][2] - m[1][2] * m[2][1];
  const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                     m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                     m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  return {-trace, minors, -det};
}

Spectrum eigenvalues_3x3(const Mat3& m) {
  const auto [a, b, c] = characteristic_coefficients(m);
  const double r1 = real_cubic_root(a, b, c);
  // Deflate: x^3 + a x^2 + b x + c = (x - r1)(x^2 + p x + s)
  const double p = a + r1;
  double s = b + r1 * p;
  if (std::abs(r1) > 1.0 && r1 != 0.0) {
    // -c / r1 is the better-conditioned form for the constant term here.
    s = -c / r1;
  }
  Spectrum spec;
  spec.eigenvalues[0] = r1;
  const double disc = p * p / 4.0 - s;
  if (disc >= 0.0) {
    const double root = std::sqrt(disc);
    const double big = -p / 2.0 + (p > 0.0 ? -root : root);
    const double small = big != 0.0 ? s / big : 0.0;
    spec.eigenvalues[1] = std::max(big, small);
    spec.eigenvalues[2] = std::min(big, small);
  } else {
    const double im = std::sqrt(-disc);
    spec.eigenvalues[1] = cplx(-p / 2.0, im);
    spec.eigenvalues[2] = cplx(-p / 2.0, -im);
  }
  for (std::size_t k = 0; k < 3; ++k) {
    spec.arguments[k] = principal_argument(spec.eigenvalues[k]);
  }
  return spec;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::stable: return "stable";
    case Verdict::unstable: return "unstable";
    case Verdict::marginal: return "marginal";
  }
  return "stable";
}

StabilityReport stability_index(const Spectrum& spectrum, double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw std::domain_error("stability_index: order must lie in (0, 1), got " + std::to_string(q));
  }
  StabilityReport report;
  report.order = q;
  report.alpha_min = spectrum.arguments[0];
  for (double alpha : spectrum.arguments) {
    if (std::abs(alpha) < std::abs(report.alpha_min)) {
      report.alpha_min = alpha;
    }
  }
  report.critical_order = 2.0 * std::abs(report.alpha_min) / std::numbers::pi;
  report.iota = q - report.critical_order;
  if (std::abs(report.iota) <= 1e-12) {
    report.verdict = Verdict::marginal;
  } else if (report.iota > 0.0) {
    report.verdict = Verdict::unstable;
  } else {
    report.verdict = Verdict::stable;
  }
  return report;
}

}  // namespace caputolab::stability
