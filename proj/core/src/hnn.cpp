#include "caputolab/hnn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace caputolab::hnn {

namespace {

std::pair<int, int> weight_index(std::string_view name) {
  if (name.size() == 3 && name[0] == 'w' && name[1] >= '1' && name[1] <= '3' && name[2] >= '1' &&
      name[2] <= '3') {
    return {name[1] - '1', name[2] - '1'};
  }
  throw std::invalid_argument("unknown weight name '" + std::string(name) +
                              "' (expected w11..w33)");
}

double sech2(double u) {
  const double c = std::cosh(u);
  return 1.0 / (c * c);
}

}  // namespace

double HnnParams::get(std::string_view name) const {
  const auto [i, j] = weight_index(name);
  return w[i][j];
}

void HnnParams::set(std::string_view name, double value) {
  const auto [i, j] = weight_index(name);
  w[i][j] = value;
}

bool HnnParams::is_weight_name(std::string_view name) {
  return name.size() == 3 && name[0] == 'w' && name[1] >= '1' && name[1] <= '3' &&
         name[2] >= '1' && name[2] <= '3';
}

Vec3 hnn_rhs(const Vec3& x, const HnnParams& params) {
  const Vec3 act{std::tanh(x[0]), std::tanh(x[1]), std::tanh(x[2])};
  Vec3 out{};
  for (int i = 0; i < 3; ++i) {
    double s = -x[i];
    for (int j = 0; j < 3; ++j) {
      s += params.w[i][j] * act[j];
    }
    out[i] = s;
  }
  return out;
}

Mat3 hnn_jacobian(const Vec3& x, const HnnParams& params) {
  const Vec3 d{sech2(x[0]), sech2(x[1]), sech2(x[2])};
  Mat3 jac{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      jac[i][j] = params.w[i][j] * d[j] - (i == j ? 1.0 : 0.0);
    }
  }
  return jac;
}

FractionalIVP make_ivp(const HnnParams& params, double q, const Vec3& x0) {
  FractionalIVP ivp;
  ivp.dimension = 3;
  ivp.order = q;
  ivp.x0.assign(x0.begin(), x0.end());
  ivp.rhs = [params](double, std::span<const double> x, std::span<double> out) {
    const Vec3 f = hnn_rhs({x[0], x[1], x[2]}, params);
    std::copy(f.begin(), f.end(), out.begin());
  };
  return ivp;
}

std::string_view to_string(EquilibriumLabel label) {
  switch (label) {
    case EquilibriumLabel::X0: return "X0";
    case EquilibriumLabel::X1: return "X1";
    case EquilibriumLabel::X2: return "X2";
    case EquilibriumLabel::other: return "other";
  }
  return "other";
}

double max_norm(const Vec3& v) {
  return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
}

std::optional<Vec3> solve3(const Mat3& a, const Vec3& b, double pivot_floor) {
  Mat3 m = a;
  Vec3 r = b;
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int row = col + 1; row < 3; ++row) {
      if (std::abs(m[row][col]) > std::abs(m[pivot][col])) {
        pivot = row;
      }
    }
    if (!(std::abs(m[pivot][col]) > pivot_floor)) {
      return std::nullopt;
    }
    std::swap(m[pivot], m[col]);
    std::swap(r[pivot], r[col]);
    for (int row = col + 1; row < 3; ++row) {
      const double factor = m[row][col] / m[col][col];
      for (int k = col; k < 3; ++k) {
        m[row][k] -= factor * m[col][k];
      }
      r[row] -= factor * r[col];
    }
  }
  Vec3 y{};
  for (int row = 2; row >= 0; --row) {
    double s = r[row];
    for (int k = row + 1; k < 3; ++k) {
      s -= m[row][k] * y[k];
    }
    y[row] = s / m[row][row];
  }
  return y;
}

NewtonOutcome newton_solve(const Vec3& guess, const HnnParams& params,
                           const NewtonOptions& options) {
  NewtonOutcome outcome;
  Vec3 x = guess;
  Vec3 f = hnn_rhs(x, params);
  double residual = max_norm(f);
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    if (residual < options.tolerance) {
      outcome.root = x;
      outcome.iterations = iter;
      return outcome;
    }
    const auto step = solve3(hnn_jacobian(x, params), f);
    if (!step) {
      outcome.diagnostic = "singular Jacobian during Newton iteration";
      outcome.iterations = iter;
      return outcome;
    }
    // Halve the step until the residual decreases.
    double scale = 1.0;
    Vec3 trial{};
    Vec3 f_trial{};
    double r_trial = residual;
    for (int halving = 0; halving <= options.max_halvings; ++halving) {
      for (int c = 0; c < 3; ++c) {
        trial[c] = x[c] - scale * (*step)[c];
      }
      f_trial = hnn_rhs(trial, params);
      r_trial = max_norm(f_trial);
      if (r_trial < residual) {
        break;
      }
      scale *= 0.5;
    }
    if (!(r_trial < residual)) {
      // Residual can stall at round-off level slightly above the tolerance.
      outcome.diagnostic = "Newton step failed to reduce the residual";
      outcome.iterations = iter;
      return outcome;
    }
    x = trial;
    f = f_trial;
    residual = r_trial;
  }
  if (residual < options.tolerance) {
    outcome.root = x;
  } else {
    outcome.diagnostic = "Newton iteration did not converge";
  }
  outcome.iterations = options.max_iterations;
  return outcome;
}

std::vector<Vec3> default_equilibrium_guesses() {
  return {{0.0, 0.0, 0.0}, {0.5, 0.4, -3.3}, {-0.5, -0.4, 3.3}};
}

std::vector<Equilibrium> find_equilibria(const HnnParams& params, const std::vector<Vec3>& guesses,
                                         const NewtonOptions& options,
                                         std::vector<std::string>* diagnostics) {
  std::vector<Equilibrium> found;
  for (const Vec3& guess : guesses) {
    if (!std::isfinite(guess[0]) || !std::isfinite(guess[1]) || !std::isfinite(guess[2])) {
      throw std::invalid_argument("find_equilibria: non-finite guess");
    }
    const NewtonOutcome outcome = newton_solve(guess, params, options);
    if (!outcome.root) {
      if (diagnostics != nullptr) {
        diagnostics->push_back(outcome.diagnostic);
      }
      continue;
    }
    const Vec3& root = *outcome.root;
    const bool duplicate = std::any_of(found.begin(), found.end(), [&](const Equilibrium& e) {
      return max_norm({e.point[0] - root[0], e.point[1] - root[1], e.point[2] - root[2]}) <
             options.dedup_radius;
    });
    if (duplicate) {
      continue;
    }
    Equilibrium eq;
    eq.point = root;
    const std::array<std::pair<EquilibriumLabel, Vec3>, 3> reference{
        {{EquilibriumLabel::X0, kReferenceX0},
         {EquilibriumLabel::X1, kReferenceX1},
         {EquilibriumLabel::X2, kReferenceX2}}};
    double best = 0.1;
    for (const auto& [label, ref] : reference) {
      const double d = max_norm({root[0] - ref[0], root[1] - ref[1], root[2] - ref[2]});
      if (d <= best) {
        best = d;
        eq.label = label;
      }
    }
    found.push_back(eq);
  }
  return found;
}

}  // namespace caputolab::hnn
