#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "caputolab/basin.hpp"
#include "caputolab/hnn.hpp"

namespace caputolab::dynamics {

/// Uniform sample in the ball of `radius` around `centre`: Gaussian direction,
/// radius scaled by U^{1/3}. Samples for all equilibria are drawn serially
/// from one mt19937_64 seeded with `seed`.
[[nodiscard]] std::vector<Vec3> sample_ball(const Vec3& centre, double radius, std::size_t count,
                                            std::uint64_t seed);

struct NeighbourhoodTally {
  hnn::Equilibrium equilibrium;
  std::vector<Vec3> samples;
  std::vector<BasinLabel> outcomes;
  std::size_t plus = 0;
  std::size_t minus = 0;
  std::size_t undecided = 0;
  std::size_t unbounded = 0;
  /// Every sample blew up.
  bool inconclusive = false;
};

enum class AttractorVerdict { self_excited, hidden_candidate, inconclusive };

[[nodiscard]] std::string_view to_string(AttractorVerdict verdict);

struct AttractorFinding {
  BasinLabel attractor = BasinLabel::plus;
  AttractorVerdict verdict = AttractorVerdict::inconclusive;
  /// Labels of the equilibria whose neighbourhood reached the attractor.
  std::vector<std::string> reached_from;
};

struct HiddenAttractorReport {
  double order = 0.0;
  double radius = 0.0;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  std::vector<NeighbourhoodTally> tallies;
  std::vector<AttractorFinding> findings;
};

struct HiddenTestOptions {
  ClassifyTolerances tolerances{};
  std::size_t jobs = 0;
  /// Attractors to check; the symmetric pair by default.
  std::vector<BasinLabel> attractors{BasinLabel::plus, BasinLabel::minus};
  /// Only probe equilibria that are unstable at the given order.
  bool unstable_only = true;
};

/// Integrates `count` random trajectories from a ball around each
/// (unstable) equilibrium and records which attractor each reaches.
/// An attractor is self-excited when at least one neighbourhood trajectory
/// reaches it. Requires count >= 1 and radius > 0 (std::invalid_argument).
[[nodiscard]] HiddenAttractorReport hidden_attractor_test(
    double q, const std::vector<hnn::Equilibrium>& equilibria, double radius, std::size_t count,
    std::uint64_t seed, const SolverConfig& config, const hnn::HnnParams& params = {},
    const HiddenTestOptions& options = {});

}  // namespace caputolab::dynamics
