#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "caputolab/classify.hpp"
#include "caputolab/hnn.hpp"
#include "caputolab/ivp.hpp"
#include "caputolab/maxima.hpp"

namespace caputolab::dynamics {

/// Builds the IVP for one parameter value and one initial condition.
using IvpFamily = std::function<FractionalIVP(double value, std::span<const double> ic)>;

/// Hopfield network swept over `parameter`: "q" (order) or a weight "w11".."w33".
/// `base_order` is used when sweeping a weight. Throws std::invalid_argument
/// for any other name.
[[nodiscard]] IvpFamily hnn_family(const std::string& parameter, const hnn::HnnParams& base,
                                   double base_order);

struct SweepSpec {
  std::string name = "q";
  double lo = 0.0;
  double hi = 1.0;
  std::size_t count = 2;

  /// lo + (hi - lo) k / (count - 1)
  [[nodiscard]] std::vector<double> grid() const;
  /// Requires count >= 2 and lo <= hi (std::invalid_argument otherwise).
  void validate() const;
};

struct InitialCondition {
  std::string id;
  std::vector<double> state;
};

struct BifurcationCell {
  MaximaSet maxima;
  AttractorSign sign = AttractorSign::undecided;
};

/// Positive x1 maxima per (parameter value, initial condition).
struct BifurcationDataset {
  std::string parameter;
  std::vector<double> values;
  std::vector<InitialCondition> ics;
  SolverConfig config;
  double transient_fraction = 0.5;
  /// cells[v * ics.size() + c]
  std::vector<BifurcationCell> cells;

  [[nodiscard]] const BifurcationCell& cell(std::size_t value_index, std::size_t ic_index) const {
    return cells[value_index * ics.size() + ic_index];
  }
  /// Column family of one initial condition across the grid.
  [[nodiscard]] std::vector<MaximaSet> branch(std::size_t ic_index) const;
  [[nodiscard]] std::vector<AttractorSign> branch_signs(std::size_t ic_index) const;
};

struct SweepOptions {
  double transient_fraction = 0.5;
  double sign_threshold = 0.05;
  std::size_t jobs = 0;  // 0: hardware parallelism
};

/// Integrates every (value, IC) cell independently and stores its maxima.
/// Unbounded cells are kept with the `unbounded` flag set.
[[nodiscard]] BifurcationDataset bifurcation_sweep(const IvpFamily& family, const SweepSpec& sweep,
                                                   const std::vector<InitialCondition>& ics,
                                                   const SolverConfig& config,
                                                   const SweepOptions& options = {});

struct CrossSection {
  double value = 0.0;  // actual grid value used
  std::size_t index = 0;
  bool clamped = false;  // requested value lay outside the grid
  std::vector<MaximaSet> per_ic;
};

/// Dataset column at the grid value nearest to `value`.
/// Throws std::invalid_argument for an empty dataset.
[[nodiscard]] CrossSection cross_section(const BifurcationDataset& bd, double value);

}  // namespace caputolab::dynamics
