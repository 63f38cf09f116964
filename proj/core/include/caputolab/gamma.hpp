#pragma once

namespace caputolab {

/// Gamma function for positive real arguments (Lanczos approximation,
/// g = 7, nine terms, with reflection below 1/2).
///
/// Relative error is below 1e-13 on (0, 50]. Throws std::domain_error for
/// x <= 0 or non-finite x.
[[nodiscard]] double gamma_real(double x);

}  // namespace caputolab
