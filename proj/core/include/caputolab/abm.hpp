#pragma once

#include <stdexcept>

#include "caputolab/ivp.hpp"

namespace caputolab {

/// Raised when the right-hand side produces a NaN.
class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fractional Adams-Bashforth-Moulton PECE integration on the uniform grid
/// t_i = i h, i = 0..N.
///
/// Step i+1:
///   x^P     = x0 + h^q/Gamma(q+1) * sum_{j<=i} ((i+1-j)^q - (i-j)^q) f_j
///   x_{i+1} = x0 + h^q/Gamma(q+2) * (sum_{j<=i} a_{j,i+1} f_j + f(x^P))
/// with the correct/evaluate pair repeated `corrector_iterations` times.
/// Every accepted point's f value is kept (full memory), so a run costs
/// O(N^2) operations.
///
/// Exceeding the blow-up threshold ends the run with status `unbounded`
/// instead of throwing. A NaN from the right-hand side throws IntegrationError.
[[nodiscard]] Trajectory abm_integrate(const FractionalIVP& ivp, const SolverConfig& config);

}  // namespace caputolab
