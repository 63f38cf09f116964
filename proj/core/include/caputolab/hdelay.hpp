#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "caputolab/bifurcation.hpp"

namespace caputolab::dynamics {

/// Lower and upper envelope (min and max positive maximum) of each column.
/// Columns without maxima carry NaN.
struct BranchEnvelope {
  std::vector<double> lower;
  std::vector<double> upper;
};

[[nodiscard]] BranchEnvelope branch_envelope(const std::vector<MaximaSet>& branch);

struct ShiftOptions {
  /// Largest displacement searched, as a fraction of the grid range.
  double max_shift_fraction = 0.25;
  /// Search step as a fraction of the grid spacing.
  double step_fraction = 0.1;
};

struct ShiftResult {
  /// Displacement d minimising the discrepancy between test(p - d) and
  /// reference(p). Positive d: the test branch lags to the left.
  double delta = 0.0;
  double residual = 0.0;   // discrepancy at delta
  double unshifted = 0.0;  // discrepancy at d = 0
};

/// Mean over grid columns of |lower_ref - lower_test(p - d)| + |upper_ref - upper_test(p - d)|,
/// the test envelope linearly interpolated between columns. Columns where
/// either side has no maxima, or p - d leaves the grid, are skipped.
/// Returns NaN when no column can be compared.
[[nodiscard]] double envelope_discrepancy(const std::vector<double>& grid,
                                          const BranchEnvelope& reference,
                                          const BranchEnvelope& test, double d);

/// Both branches must live on `grid`; throws std::invalid_argument on a size
/// mismatch or when the branches share no comparable column.
[[nodiscard]] ShiftResult branch_shift(const std::vector<double>& grid,
                                       const std::vector<MaximaSet>& reference,
                                       const std::vector<MaximaSet>& test,
                                       const ShiftOptions& options = {});

enum class IcRole { reference, outside };

struct RoledIc {
  InitialCondition ic;
  IcRole role = IcRole::outside;
};

struct ShiftRow {
  double h = 0.0;
  std::string ic_id;
  IcRole role = IcRole::outside;
  std::string reference_id;  // branch the row was compared against
  ShiftResult shift;
};

struct ShiftTable {
  std::vector<double> h_list;
  std::vector<ShiftRow> rows;
  /// One sweep per step size, in h_list order.
  std::vector<BifurcationDataset> datasets;

  [[nodiscard]] const ShiftRow& row(double h, const std::string& ic_id) const;
};

struct HDelayOptions {
  SweepOptions sweep{};
  ShiftOptions shift{};
};

/// Runs one sweep per step size and measures how far every outside-IC branch
/// sits from the reference branch it converges to at the finest step size.
/// Reference branches are compared with themselves across step sizes.
///
/// An outside IC is paired with the reference IC whose finest-h branch has the
/// same majority attractor sign; ties fall back to the smallest residual.
/// Requires at least two strictly decreasing step sizes and at least one
/// reference IC (std::invalid_argument otherwise).
[[nodiscard]] ShiftTable h_delay_study(const std::vector<double>& h_list,
                                       const std::vector<RoledIc>& ics, const IvpFamily& family,
                                       const SweepSpec& sweep, const SolverConfig& base_config,
                                       const HDelayOptions& options = {});

/// Default IC set: X1*, (1e-3, 1e-3, 1e-3) as references and +-(2, 2, 2) outside.
[[nodiscard]] std::vector<RoledIc> default_hdelay_ics();

}  // namespace caputolab::dynamics
