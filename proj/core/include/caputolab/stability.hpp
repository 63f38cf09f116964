#pragma once

#include <array>
#include <complex>
#include <string_view>

#include "caputolab/hnn.hpp"

namespace caputolab::stability {

using hnn::Mat3;

struct Spectrum {
  std::array<std::complex<double>, 3> eigenvalues{};
  /// Principal arguments mapped into [-pi, pi); a negative real eigenvalue has argument -pi.
  std::array<double, 3> arguments{};
};

/// Roots of the characteristic cubic of a real 3x3 matrix.
///
/// One real root is isolated (trigonometric/Cardano form, Newton-polished),
/// the cubic is deflated, and the remaining quadratic is solved with the
/// cancellation-free formula. Real roots are listed first, complex pairs as
/// (re + i im, re - i im) with im > 0.
[[nodiscard]] Spectrum eigenvalues_3x3(const Mat3& m);

enum class Verdict { stable, unstable, marginal };

[[nodiscard]] std::string_view to_string(Verdict v);

struct StabilityReport {
  double order = 0.0;
  double alpha_min = 0.0;       // argument of minimal absolute value
  double iota = 0.0;            // q - 2|alpha_min|/pi
  double critical_order = 0.0;  // q* = 2|alpha_min|/pi
  Verdict verdict = Verdict::stable;
};

/// Argument criterion for commensurate systems: unstable iff
/// iota = q - 2|alpha_min|/pi > 0, marginal when |iota| <= 1e-12.
/// Requires q in (0,1); throws std::domain_error otherwise.
[[nodiscard]] StabilityReport stability_index(const Spectrum& spectrum, double q);

/// Characteristic polynomial lambda^3 + c2 lambda^2 + c1 lambda + c0, returned as {c2, c1, c0}.
[[nodiscard]] std::array<double, 3> characteristic_coefficients(const Mat3& m);

}  // namespace caputolab::stability
