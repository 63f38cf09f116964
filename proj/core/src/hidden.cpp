#include "caputolab/hidden.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "caputolab/abm.hpp"
#include "caputolab/parallel.hpp"
#include "caputolab/stability.hpp"

namespace caputolab::dynamics {

std::string_view to_string(AttractorVerdict verdict) {
  switch (verdict) {
    case AttractorVerdict::self_excited: return "self-excited";
    case AttractorVerdict::hidden_candidate: return "hidden-candidate";
    case AttractorVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

Vec3 draw_in_ball(std::mt19937_64& rng, const Vec3& centre, double radius) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  Vec3 dir{};
  double norm = 0.0;
  do {
    dir = {gauss(rng), gauss(rng), gauss(rng)};
    norm = std::sqrt(dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]);
  } while (norm == 0.0);
  const double r = radius * std::cbrt(uniform(rng));
  return {centre[0] + r * dir[0] / norm, centre[1] + r * dir[1] / norm,
          centre[2] + r * dir[2] / norm};
}

}  // namespace

std::vector<Vec3> sample_ball(const Vec3& centre, double radius, std::size_t count,
                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Vec3> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    out.push_back(draw_in_ball(rng, centre, radius));
  }
  return out;
}

HiddenAttractorReport hidden_attractor_test(double q,
                                            const std::vector<hnn::Equilibrium>& equilibria,
                                            double radius, std::size_t count, std::uint64_t seed,
                                            const SolverConfig& config,
                                            const hnn::HnnParams& params,
                                            const HiddenTestOptions& options) {
  if (count < 1) {
    throw std::invalid_argument("hidden_attractor_test: count must be >= 1");
  }
  if (!(radius > 0.0)) {
    throw std::invalid_argument("hidden_attractor_test: radius must be positive");
  }
  config.validate();

  HiddenAttractorReport report;
  report.order = q;
  report.radius = radius;
  report.count = count;
  report.seed = seed;

  std::mt19937_64 rng(seed);
  for (const hnn::Equilibrium& eq : equilibria) {
    if (options.unstable_only) {
      const auto spectrum = stability::eigenvalues_3x3(hnn::hnn_jacobian(eq.point, params));
      if (q < 1.0 && stability::stability_index(spectrum, q).verdict == stability::Verdict::stable) {
        continue;
      }
    }
    NeighbourhoodTally tally;
    tally.equilibrium = eq;
    for (std::size_t k = 0; k < count; ++k) {
      tally.samples.push_back(draw_in_ball(rng, eq.point, radius));
    }
    tally.outcomes.resize(count);
    report.tallies.push_back(std::move(tally));
  }

  const std::size_t total = report.tallies.size() * count;
  parallel_for(total, options.jobs, [&](std::size_t job) {
    NeighbourhoodTally& tally = report.tallies[job / count];
    const std::size_t k = job % count;
    const Trajectory traj = abm_integrate(hnn::make_ivp(params, q, tally.samples[k]), config);
    tally.outcomes[k] = to_basin_label(classify_trajectory(traj, options.tolerances));
  });

  for (NeighbourhoodTally& tally : report.tallies) {
    for (BasinLabel label : tally.outcomes) {
      switch (label) {
        case BasinLabel::plus: ++tally.plus; break;
        case BasinLabel::minus: ++tally.minus; break;
        case BasinLabel::undecided: ++tally.undecided; break;
        case BasinLabel::unbounded: ++tally.unbounded; break;
      }
    }
    tally.inconclusive = tally.unbounded == tally.outcomes.size();
  }

  for (BasinLabel attractor : options.attractors) {
    AttractorFinding finding;
    finding.attractor = attractor;
    bool any_conclusive = false;
    for (const NeighbourhoodTally& tally : report.tallies) {
      any_conclusive = any_conclusive || !tally.inconclusive;
      const std::size_t hits = attractor == BasinLabel::plus    ? tally.plus
                               : attractor == BasinLabel::minus ? tally.minus
                                                                : tally.undecided;
      if (hits > 0) {
        finding.reached_from.emplace_back(hnn::to_string(tally.equilibrium.label));
      }
    }
    if (!any_conclusive) {
      finding.verdict = AttractorVerdict::inconclusive;
    } else if (!finding.reached_from.empty()) {
      finding.verdict = AttractorVerdict::self_excited;
    } else {
      finding.verdict = AttractorVerdict::hidden_candidate;
    }
    report.findings.push_back(std::move(finding));
  }
  return report;
}

}  // namespace caputolab::dynamics
