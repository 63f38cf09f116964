#include "caputolab/hdelay.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace caputolab::dynamics {

BranchEnvelope branch_envelope(const std::vector<MaximaSet>& branch) {
  BranchEnvelope env;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const MaximaSet& m : branch) {
    env.lower.push_back(m.values.empty() ? nan : m.values.front());
    env.upper.push_back(m.values.empty() ? nan : m.values.back());
  }
  return env;
}

namespace {

// Linear interpolation of `y` on `grid` at x; NaN when x is off-grid or a
// neighbouring column is empty.
double interp(const std::vector<double>& grid, const std::vector<double>& y, double x) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (x < grid.front() || x > grid.back()) {
    return nan;
  }
  auto it = std::upper_bound(grid.begin(), grid.end(), x);
  if (it == grid.end()) {
    return y.back();
  }
  const std::size_t k = static_cast<std::size_t>(it - grid.begin());
  if (k == 0) {
    return y.front();
  }
  const double x0 = grid[k - 1];
  const double x1 = grid[k];
  if (x == x0 || x1 == x0) {
    return y[k - 1];
  }
  const double w = (x - x0) / (x1 - x0);
  return (1.0 - w) * y[k - 1] + w * y[k];
}

std::size_t majority_sign(const std::vector<AttractorSign>& signs, AttractorSign* out) {
  std::size_t plus = 0;
  std::size_t minus = 0;
  for (AttractorSign s : signs) {
    plus += s == AttractorSign::plus;
    minus += s == AttractorSign::minus;
  }
  *out = plus > minus ? AttractorSign::plus
         : minus > plus ? AttractorSign::minus
                        : AttractorSign::undecided;
  return std::max(plus, minus);
}

}  // namespace

double envelope_discrepancy(const std::vector<double>& grid, const BranchEnvelope& reference,
                            const BranchEnvelope& test, double d) {
  double total = 0.0;
  std::size_t used = 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double lo = interp(grid, test.lower, grid[k] - d);
    const double hi = interp(grid, test.upper, grid[k] - d);
    const double term = std::abs(reference.lower[k] - lo) + std::abs(reference.upper[k] - hi);
    if (std::isnan(term)) {
      continue;
    }
    total += term;
    ++used;
  }
  return used == 0 ? std::numeric_limits<double>::quiet_NaN()
                   : total / static_cast<double>(used);
}

ShiftResult branch_shift(const std::vector<double>& grid, const std::vector<MaximaSet>& reference,
                         const std::vector<MaximaSet>& test, const ShiftOptions& options) {
  if (grid.size() < 2 || reference.size() != grid.size() || test.size() != grid.size()) {
    throw std::invalid_argument("branch_shift: branches must share the parameter grid");
  }
  const BranchEnvelope ref_env = branch_envelope(reference);
  const BranchEnvelope test_env = branch_envelope(test);

  ShiftResult result;
  result.unshifted = envelope_discrepancy(grid, ref_env, test_env, 0.0);
  if (std::isnan(result.unshifted)) {
    throw std::invalid_argument("branch_shift: empty branches");
  }
  const double spacing = (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1);
  const double step = options.step_fraction * spacing;
  const auto max_steps = static_cast<long>(std::llround(
      options.max_shift_fraction * (grid.back() - grid.front()) / (step > 0.0 ? step : 1.0)));

  result.delta = 0.0;
  result.residual = result.unshifted;
  if (!(step > 0.0)) {
    return result;
  }
  // Visit 0, +s, -s, +2s, ... so ties resolve toward the smaller displacement.
  for (long k = 1; k <= max_steps; ++k) {
    for (double d : {static_cast<double>(k) * step, -static_cast<double>(k) * step}) {
      const double value = envelope_discrepancy(grid, ref_env, test_env, d);
      if (value < result.residual) {
        result.residual = value;
        result.delta = d;
      }
    }
  }
  return result;
}

const ShiftRow& ShiftTable::row(double h, const std::string& ic_id) const {
  for (const ShiftRow& r : rows) {
    if (r.h == h && r.ic_id == ic_id) {
      return r;
    }
  }
  throw std::out_of_range("ShiftTable: no row for ic '" + ic_id + "'");
}

std::vector<RoledIc> default_hdelay_ics() {
  return {
      {{"IC1", {0.493, 0.366, -3.267}}, IcRole::reference},
      {{"IC2", {1e-3, 1e-3, 1e-3}}, IcRole::reference},
      {{"OUT+", {2.0, 2.0, 2.0}}, IcRole::outside},
      {{"OUT-", {-2.0, -2.0, -2.0}}, IcRole::outside},
  };
}

ShiftTable h_delay_study(const std::vector<double>& h_list, const std::vector<RoledIc>& ics,
                         const IvpFamily& family, const SweepSpec& sweep,
                         const SolverConfig& base_config, const HDelayOptions& options) {
  if (h_list.size() < 2) {
    throw std::invalid_argument("h_delay_study: need at least two step sizes");
  }
  for (std::size_t k = 1; k < h_list.size(); ++k) {
    if (!(h_list[k] < h_list[k - 1])) {
      throw std::invalid_argument("h_delay_study: step sizes must be strictly decreasing");
    }
  }
  std::vector<std::size_t> reference_index;
  std::vector<InitialCondition> plain;
  for (std::size_t c = 0; c < ics.size(); ++c) {
    plain.push_back(ics[c].ic);
    if (ics[c].role == IcRole::reference) {
      reference_index.push_back(c);
    }
  }
  if (reference_index.empty()) {
    throw std::invalid_argument("h_delay_study: no reference initial condition");
  }

  ShiftTable table;
  table.h_list = h_list;
  for (double h : h_list) {
    SolverConfig config = base_config;
    config.h = h;
    table.datasets.push_back(bifurcation_sweep(family, sweep, plain, config, options.sweep));
  }
  const BifurcationDataset& finest = table.datasets.back();
  const std::vector<double>& grid = finest.values;

  std::vector<AttractorSign> reference_sign(ics.size(), AttractorSign::undecided);
  for (std::size_t r : reference_index) {
    (void)majority_sign(finest.branch_signs(r), &reference_sign[r]);
  }

  for (std::size_t hi = 0; hi < h_list.size(); ++hi) {
    const BifurcationDataset& bd = table.datasets[hi];
    for (std::size_t c = 0; c < ics.size(); ++c) {
      ShiftRow row;
      row.h = h_list[hi];
      row.ic_id = ics[c].ic.id;
      row.role = ics[c].role;
      const std::vector<MaximaSet> test = bd.branch(c);
      if (ics[c].role == IcRole::reference) {
        row.reference_id = ics[c].ic.id;
        row.shift = branch_shift(grid, finest.branch(c), test, options.shift);
      } else {
        AttractorSign sign = AttractorSign::undecided;
        (void)majority_sign(bd.branch_signs(c), &sign);
        std::vector<std::size_t> candidates;
        for (std::size_t r : reference_index) {
          if (sign != AttractorSign::undecided && reference_sign[r] == sign) {
            candidates.push_back(r);
          }
        }
        if (candidates.empty()) {
          candidates = reference_index;
        }
        bool first = true;
        for (std::size_t r : candidates) {
          const ShiftResult s = branch_shift(grid, finest.branch(r), test, options.shift);
          if (first || s.residual < row.shift.residual) {
            row.shift = s;
            row.reference_id = ics[r].ic.id;
            first = false;
          }
        }
      }
      table.rows.push_back(row);
    }
  }
  return table;
}

}  // namespace caputolab::dynamics
