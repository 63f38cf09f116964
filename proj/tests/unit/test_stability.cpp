#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "caputolab/stability.hpp"

using namespace caputolab;
using stability::eigenvalues_3x3;
using stability::stability_index;
using stability::Verdict;

namespace {

std::vector<std::complex<double>> eigen_oracle(const hnn::Mat3& m) {
  Eigen::Matrix3d a;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) a(r, c) = m[r][c];
  Eigen::EigenSolver<Eigen::Matrix3d> es(a, false);
  std::vector<std::complex<double>> v(es.eigenvalues().data(), es.eigenvalues().data() + 3);
  return v;
}

void expect_same_spectrum(const stability::Spectrum& s, const hnn::Mat3& m, double tol) {
  auto ref = eigen_oracle(m);
  for (const auto& ev : s.eigenvalues) {
    auto it = std::min_element(ref.begin(), ref.end(), [&](auto a, auto b) {
      return std::abs(a - ev) < std::abs(b - ev);
    });
    EXPECT_LE(std::abs(*it - ev), tol) << ev;
    ref.erase(it);
  }
}

hnn::Vec3 x1_root() {
  for (const auto& e : hnn::find_equilibria({}, hnn::default_equilibrium_guesses())) {
    if (e.label == hnn::EquilibriumLabel::X1) return e.point;
  }
  return {};
}

}  // namespace

TEST(Stability, IdentityAndDiagonal) {
  const hnn::Mat3 id{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  const auto s = eigenvalues_3x3(id);
  for (const auto& ev : s.eigenvalues) EXPECT_NEAR(std::abs(ev - 1.0), 0.0, 1e-12);
  const hnn::Mat3 d{{{3, 0, 0}, {0, -2, 0}, {0, 0, 0.5}}};
  expect_same_spectrum(eigenvalues_3x3(d), d, 1e-12);
}

TEST(Stability, SpectrumAtOrigin) {
  const hnn::Mat3 j = hnn::hnn_jacobian({0, 0, 0}, {});
  const auto s = eigenvalues_3x3(j);
  expect_same_spectrum(s, j, 1e-12);
  EXPECT_NEAR(s.eigenvalues[0].real(), 1.942, 5e-3);
  EXPECT_NEAR(s.eigenvalues[1].real(), -0.066, 5e-3);
  EXPECT_NEAR(s.eigenvalues[1].imag(), 1.879, 5e-3);
  EXPECT_EQ(s.eigenvalues[2], std::conj(s.eigenvalues[1]));
}

TEST(Stability, SpectrumAtX1) {
  const hnn::Mat3 j = hnn::hnn_jacobian(x1_root(), {});
  const auto s = eigenvalues_3x3(j);
  expect_same_spectrum(s, j, 1e-12);
  EXPECT_NEAR(s.eigenvalues[0].real(), -0.987, 5e-3);
  EXPECT_NEAR(s.eigenvalues[1].real(), 0.538, 5e-3);
  EXPECT_NEAR(s.eigenvalues[1].imag(), 1.286, 5e-3);
}

TEST(Stability, RandomMatricesAgainstEigenOracle) {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 1000; ++trial) {
    hnn::Mat3 m;
    for (auto& row : m)
      for (auto& v : row) v = u(rng);
    const auto s = eigenvalues_3x3(m);
    const double trace = m[0][0] + m[1][1] + m[2][2];
    std::complex<double> sum = 0.0;
    for (const auto& ev : s.eigenvalues) sum += ev;
    EXPECT_NEAR(sum.real(), trace, 1e-9);
    EXPECT_NEAR(sum.imag(), 0.0, 1e-9);
    if (s.eigenvalues[1].imag() != 0.0) {
      EXPECT_EQ(s.eigenvalues[2], std::conj(s.eigenvalues[1]));
    }
    expect_same_spectrum(s, m, 1e-8);
  }
}

TEST(Stability, ArgumentsInHalfOpenRange) {
  const hnn::Mat3 m{{{-2, 0, 0}, {0, 1, 0}, {0, 0, 3}}};
  const auto s = eigenvalues_3x3(m);
  for (double a : s.arguments) {
    EXPECT_GE(a, -std::numbers::pi);
    EXPECT_LT(a, std::numbers::pi);
  }
  EXPECT_EQ(*std::min_element(s.arguments.begin(), s.arguments.end()), -std::numbers::pi);
}

TEST(Stability, CharacteristicCoefficients) {
  const hnn::Mat3 m{{{2, 1, 0}, {0, 3, 0}, {1, 0, 4}}};
  const auto c = stability::characteristic_coefficients(m);
  EXPECT_NEAR(c[0], -9.0, 1e-12);   // -trace
  EXPECT_NEAR(c[1], 26.0, 1e-12);   // sum of principal 2x2 minors
  EXPECT_NEAR(c[2], -24.0, 1e-12);  // -det
}

TEST(Stability, OriginIsUnstableWithIotaEqualToOrder) {
  const auto s = eigenvalues_3x3(hnn::hnn_jacobian({0, 0, 0}, {}));
  for (double q = 0.05; q < 1.0; q += 0.05) {
    const auto r = stability_index(s, q);
    EXPECT_NEAR(r.iota, q, 1e-15);
    EXPECT_EQ(r.verdict, Verdict::unstable);
  }
}

TEST(Stability, CriticalOrderAtX1) {
  const auto s = eigenvalues_3x3(hnn::hnn_jacobian(x1_root(), {}));
  const auto r = stability_index(s, 0.9);
  // Independent oracle: smallest |arg| over the Eigen spectrum.
  double amin = 10.0;
  for (const auto& ev : eigen_oracle(hnn::hnn_jacobian(x1_root(), {}))) {
    amin = std::min(amin, std::abs(std::arg(ev)));
  }
  EXPECT_NEAR(r.critical_order, 2.0 * amin / std::numbers::pi, 1e-12);
  EXPECT_NEAR(r.critical_order, 0.7484, 1e-4);
  EXPECT_EQ(stability_index(s, 0.7).verdict, Verdict::stable);
  EXPECT_EQ(stability_index(s, 0.76).verdict, Verdict::unstable);
}

TEST(Stability, IotaSignMatchesVerdict) {
  const auto s = eigenvalues_3x3(hnn::hnn_jacobian(x1_root(), {}));
  for (double q = 0.01; q < 1.0; q += 0.01) {
    const auto r = stability_index(s, q);
    EXPECT_EQ(r.verdict == Verdict::unstable, r.iota > 0.0) << q;
  }
}

TEST(Stability, RejectsOrderOutsideUnitInterval) {
  const auto s = eigenvalues_3x3(hnn::hnn_jacobian({0, 0, 0}, {}));
  EXPECT_THROW((void)stability_index(s, 0.0), std::domain_error);
  EXPECT_THROW((void)stability_index(s, 1.0), std::domain_error);
}
