#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "caputolab/ivp.hpp"

namespace caputolab::hnn {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

/// Weight matrix of the 3-neuron network D^q x_i = -x_i + sum_j w_ij tanh(x_j).
struct HnnParams {
  Mat3 w{{{1.995, -1.2, 0.0}, {2.0, 1.71, 1.15}, {-4.75, 0.0, 1.1}}};

  /// Access by name "w11".."w33". Throws std::invalid_argument for other names.
  [[nodiscard]] double get(std::string_view name) const;
  void set(std::string_view name, double value);
  [[nodiscard]] static bool is_weight_name(std::string_view name);
};

[[nodiscard]] Vec3 hnn_rhs(const Vec3& x, const HnnParams& params);

/// J_ij = w_ij sech^2(x_j) - delta_ij.
[[nodiscard]] Mat3 hnn_jacobian(const Vec3& x, const HnnParams& params);

/// Autonomous IVP for the network with commensurate order q.
[[nodiscard]] FractionalIVP make_ivp(const HnnParams& params, double q, const Vec3& x0);

enum class EquilibriumLabel { X0, X1, X2, other };

[[nodiscard]] std::string_view to_string(EquilibriumLabel label);

struct Equilibrium {
  Vec3 point{};
  EquilibriumLabel label = EquilibriumLabel::other;
};

/// Three-decimal reference equilibria X0*, X1*, X2*.
inline constexpr Vec3 kReferenceX0{0.0, 0.0, 0.0};
inline constexpr Vec3 kReferenceX1{0.493, 0.366, -3.267};
inline constexpr Vec3 kReferenceX2{-0.493, -0.366, 3.267};

struct NewtonOptions {
  double tolerance = 1e-10;
  int max_iterations = 100;
  int max_halvings = 20;
  double dedup_radius = 1e-6;
};

/// Outcome of one Newton run; `diagnostic` is set when the guess was skipped.
struct NewtonOutcome {
  std::optional<Vec3> root;
  std::string diagnostic;
  int iterations = 0;
};

[[nodiscard]] NewtonOutcome newton_solve(const Vec3& guess, const HnnParams& params,
                                         const NewtonOptions& options = {});

/// {0, +-(0.5, 0.4, -3.3)}
[[nodiscard]] std::vector<Vec3> default_equilibrium_guesses();

/// Damped Newton from every guess, de-duplicated, labelled by the nearest
/// reference equilibrium (anything farther than 0.1 is `other`). Skipped
/// guesses are reported through `diagnostics` when non-null.
[[nodiscard]] std::vector<Equilibrium> find_equilibria(const HnnParams& params,
                                                       const std::vector<Vec3>& guesses,
                                                       const NewtonOptions& options = {},
                                                       std::vector<std::string>* diagnostics = nullptr);

/// Solves A y = b by Gaussian elimination with partial pivoting.
/// Returns std::nullopt when a pivot falls below `pivot_floor`.
[[nodiscard]] std::optional<Vec3> solve3(const Mat3& a, const Vec3& b, double pivot_floor = 1e-14);

[[nodiscard]] double max_norm(const Vec3& v);

}  // namespace caputolab::hnn
