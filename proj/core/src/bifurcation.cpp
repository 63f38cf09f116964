#include "caputolab/bifurcation.hpp"

#include <cmath>
#include <stdexcept>

#include "caputolab/abm.hpp"
#include "caputolab/parallel.hpp"

namespace caputolab::dynamics {

IvpFamily hnn_family(const std::string& parameter, const hnn::HnnParams& base,
                     double base_order) {
  if (parameter == "q") {
    return [base](double value, std::span<const double> ic) {
      return hnn::make_ivp(base, value, {ic[0], ic[1], ic[2]});
    };
  }
  if (hnn::HnnParams::is_weight_name(parameter)) {
    return [base, base_order, parameter](double value, std::span<const double> ic) {
      hnn::HnnParams params = base;
      params.set(parameter, value);
      return hnn::make_ivp(params, base_order, {ic[0], ic[1], ic[2]});
    };
  }
  throw std::invalid_argument("unknown sweep parameter '" + parameter + "'");
}

std::vector<double> SweepSpec::grid() const {
  validate();
  std::vector<double> values(count);
  const double span = hi - lo;
  const double denom = static_cast<double>(count - 1);
  for (std::size_t k = 0; k < count; ++k) {
    values[k] = lo + span * static_cast<double>(k) / denom;
  }
  values.back() = hi;
  return values;
}

void SweepSpec::validate() const {
  if (count < 2) {
    throw std::invalid_argument("sweep count must be >= 2");
  }
  if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("sweep bounds must satisfy lo <= hi");
  }
}

std::vector<MaximaSet> BifurcationDataset::branch(std::size_t ic_index) const {
  std::vector<MaximaSet> out;
  out.reserve(values.size());
  for (std::size_t v = 0; v < values.size(); ++v) {
    out.push_back(cell(v, ic_index).maxima);
  }
  return out;
}

std::vector<AttractorSign> BifurcationDataset::branch_signs(std::size_t ic_index) const {
  std::vector<AttractorSign> out;
  out.reserve(values.size());
  for (std::size_t v = 0; v < values.size(); ++v) {
    out.push_back(cell(v, ic_index).sign);
  }
  return out;
}

namespace {

double tail_mean(const Trajectory& traj, double transient_fraction) {
  const auto x1 = traj.component(0).subspan(transient_cut(traj.size(), transient_fraction));
  double mean = 0.0;
  for (double v : x1) {
    mean += v;
  }
  return x1.empty() ? 0.0 : mean / static_cast<double>(x1.size());
}

}  // namespace

BifurcationDataset bifurcation_sweep(const IvpFamily& family, const SweepSpec& sweep,
                                     const std::vector<InitialCondition>& ics,
                                     const SolverConfig& config, const SweepOptions& options) {
  sweep.validate();
  config.validate();
  if (ics.empty()) {
    throw std::invalid_argument("bifurcation_sweep: no initial conditions");
  }
  BifurcationDataset bd;
  bd.parameter = sweep.name;
  bd.values = sweep.grid();
  bd.ics = ics;
  bd.config = config;
  bd.transient_fraction = options.transient_fraction;
  bd.cells.resize(bd.values.size() * ics.size());

  parallel_for(bd.cells.size(), options.jobs, [&](std::size_t cell_index) {
    const std::size_t v = cell_index / ics.size();
    const std::size_t c = cell_index % ics.size();
    const Trajectory traj = abm_integrate(family(bd.values[v], ics[c].state), config);
    BifurcationCell& cell = bd.cells[cell_index];
    cell.maxima = extract_maxima(traj, options.transient_fraction);
    cell.sign = traj.completed()
                    ? attractor_sign(tail_mean(traj, options.transient_fraction),
                                     options.sign_threshold)
                    : AttractorSign::undecided;
  });
  return bd;
}

CrossSection cross_section(const BifurcationDataset& bd, double value) {
  if (bd.values.empty() || bd.ics.empty()) {
    throw std::invalid_argument("cross_section: empty dataset");
  }
  CrossSection cs;
  cs.clamped = value < bd.values.front() || value > bd.values.back();
  std::size_t best = 0;
  for (std::size_t k = 1; k < bd.values.size(); ++k) {
    if (std::abs(bd.values[k] - value) < std::abs(bd.values[best] - value)) {
      best = k;
    }
  }
  cs.index = best;
  cs.value = bd.values[best];
  for (std::size_t c = 0; c < bd.ics.size(); ++c) {
    cs.per_ic.push_back(bd.cell(best, c).maxima);
  }
  return cs;
}

}  // namespace caputolab::dynamics
