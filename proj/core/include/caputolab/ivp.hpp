#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace caputolab {

/// Right-hand side f(t, x) written into `out` (same length as x).
/// Autonomous systems ignore t.
using RhsFunction =
    std::function<void(double t, std::span<const double> x, std::span<double> out)>;

/// Commensurate Caputo initial value problem D^q x = f(t, x), x(0) = x0.
struct FractionalIVP {
  std::size_t dimension = 0;
  double order = 1.0;
  RhsFunction rhs;
  std::vector<double> x0;

  /// Throws std::invalid_argument / std::domain_error on a malformed problem.
  void validate() const;
};

struct SolverConfig {
  double h = 0.01;
  double T = 1.0;
  int corrector_iterations = 1;
  /// Max-norm beyond which the trajectory is declared unbounded.
  double blowup_threshold = 1e6;

  /// N = round(T / h).
  [[nodiscard]] std::size_t steps() const;
  void validate() const;
};

enum class TrajectoryStatus { completed, unbounded };

/// Time grid, states and stored right-hand side history of one integration.
///
/// States and history are kept component-major (one contiguous column per
/// state variable) so the history convolution runs over unit-stride data.
class Trajectory {
 public:
  Trajectory() = default;
  Trajectory(std::size_t dimension, double h, std::size_t capacity);

  [[nodiscard]] std::size_t dimension() const { return states_.size(); }
  [[nodiscard]] std::size_t size() const { return times_.size(); }
  [[nodiscard]] bool empty() const { return times_.empty(); }
  [[nodiscard]] double step() const { return h_; }

  [[nodiscard]] std::span<const double> times() const { return times_; }
  [[nodiscard]] std::span<const double> component(std::size_t c) const { return states_[c]; }
  [[nodiscard]] std::span<const double> rhs_component(std::size_t c) const {
    return history_[c];
  }
  [[nodiscard]] std::vector<double> state(std::size_t k) const;
  [[nodiscard]] std::vector<double> rhs_value(std::size_t k) const;
  [[nodiscard]] std::vector<double> final_state() const { return state(size() - 1); }

  [[nodiscard]] TrajectoryStatus status() const { return status_; }
  [[nodiscard]] bool completed() const { return status_ == TrajectoryStatus::completed; }
  /// Index of the first grid point whose state exceeded the blow-up threshold.
  [[nodiscard]] std::size_t unbounded_step() const { return unbounded_step_; }

  void push(double t, std::span<const double> x, std::span<const double> fx);
  void mark_unbounded(std::size_t step);

 private:
  double h_ = 0.0;
  std::vector<double> times_;
  std::vector<std::vector<double>> states_;
  std::vector<std::vector<double>> history_;
  TrajectoryStatus status_ = TrajectoryStatus::completed;
  std::size_t unbounded_step_ = 0;
};

}  // namespace caputolab
