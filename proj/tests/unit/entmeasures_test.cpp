#include "entswap/entmeasures.hpp"
#include "entswap/errors.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace entswap;

TEST(Concurrence, Examples) {
  EXPECT_NEAR(concurrence(bell_state(BellIndex::psi_minus)), 1.0, 1e-12);
  EXPECT_EQ(concurrence(maximally_mixed()), 0.0);
  // Frozen from an independent Wootters evaluation.
  EXPECT_NEAR(concurrence(make_werner({0.5})), 0.25, 1e-12);
  EXPECT_NEAR(concurrence(make_werner({0.8})), 0.7, 1e-12);
}

TEST(Concurrence, WernerGridMatchesClosedForm) {
  for (int i = 0; i <= 10; ++i) {
    const double p = i / 10.0;
    const double want = std::max(0.0, (3 * p - 1) / 2);
    EXPECT_NEAR(concurrence(make_werner({p})), want, 1e-12) << p;
    EXPECT_NEAR(concurrence_werner(p), want, 1e-15) << p;
  }
}

TEST(Concurrence, WernerScalarExamples) {
  EXPECT_EQ(concurrence_werner(1.0), 1.0);
  EXPECT_EQ(concurrence_werner(1.0 / 3.0), 0.0);
  EXPECT_NEAR(concurrence_werner(0.8), 0.7, 1e-15);
  EXPECT_THROW(concurrence_werner(1.5), DomainError);
  EXPECT_THROW(concurrence_werner(-0.1), DomainError);
}

TEST(Concurrence, AgreesWithNonHermitianOracle) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 1000; ++i) {
    const Matrix4c m = oracle::random_density(rng);
    EXPECT_NEAR(concurrence(TwoQubitState::from_matrix(m)), oracle::wootters(m), 1e-9);
  }
}

TEST(Concurrence, NearlyPureStates) {
  // The SVD route keeps full precision where the eigenvalue route loses half.
  const Eigen::Vector4cd v = bell_vector(BellIndex::phi_plus);
  Matrix4c m = (1 - 1e-9) * v * v.adjoint() + 1e-9 * Matrix4c::Identity() / 4.0;
  EXPECT_NEAR(concurrence(TwoQubitState::from_matrix(m)), 1 - 1.5e-9, 1e-12);
}

TEST(Concurrence, BdsExamples) {
  EXPECT_NEAR(concurrence_bds({1, -1, 1}), 1.0, 1e-15);
  EXPECT_EQ(concurrence_bds({0, 0, 0}), 0.0);
  EXPECT_NEAR(concurrence_bds({-0.9, -0.9, -0.9}), 0.85, 1e-15);
  EXPECT_NEAR(concurrence(make_bell_diagonal({-0.9, -0.9, -0.9})), 0.85, 1e-12);
  EXPECT_THROW(concurrence_bds({1, 1, 1}), InvalidParametersError);
}

TEST(Concurrence, BdsClosedFormMatchesWootters) {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 1000; ++i) {
    const auto t = oracle::random_tetrahedron_point(rng);
    const BdsParams p{t[0], t[1], t[2]};
    const TwoQubitState s = make_bell_diagonal(p);
    EXPECT_NEAR(concurrence_bds(p), oracle::wootters(s.matrix()), 1e-10);
    EXPECT_NEAR(concurrence_bds(p), concurrence(s), 1e-10);
  }
}

TEST(Concurrence, LocalPauliInvariance) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    const TwoQubitState s = TwoQubitState::from_matrix(oracle::random_density(rng));
    const double c = concurrence(s);
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        EXPECT_NEAR(concurrence(apply_local(s, a, b)), c, 1e-10);
      }
    }
  }
}

TEST(Octahedron, Examples) {
  EXPECT_TRUE(octahedron_separable({1.0 / 3, 1.0 / 3, 1.0 / 3}));
  EXPECT_FALSE(octahedron_separable({1, -1, 1}));
  EXPECT_TRUE(octahedron_separable({0, 0, 0}));
}

TEST(Octahedron, MatchesZeroConcurrence) {
  std::mt19937_64 rng(24);
  for (int i = 0; i < 1000; ++i) {
    const auto t = oracle::random_tetrahedron_point(rng);
    const BdsParams p{t[0], t[1], t[2]};
    const double sum = std::abs(t[0]) + std::abs(t[1]) + std::abs(t[2]);
    if (std::abs(sum - 1.0) < 1e-10) continue;
    EXPECT_EQ(concurrence_bds(p) == 0.0, octahedron_separable(p));
  }
}

TEST(Fidelity, Examples) {
  for (BellIndex k : kAllBellIndices) EXPECT_NEAR(teleportation_fidelity(bell_state(k)), 1.0, 1e-15);
  EXPECT_NEAR(teleportation_fidelity(maximally_mixed()), 0.5, 1e-15);
  EXPECT_NEAR(teleportation_fidelity(make_werner({0.5})), 0.75, 1e-15);
}

TEST(Fidelity, WernerGrid) {
  for (int i = 0; i <= 100; ++i) {
    const double p = i / 100.0;
    EXPECT_NEAR(teleportation_fidelity(make_werner({p})), (1 + p) / 2, 1e-12);
  }
}

TEST(Fidelity, UsesSingularValues) {
  // Negative correlations must count with their magnitude.
  EXPECT_NEAR(teleportation_fidelity(make_bell_diagonal({-0.5, -0.2, 0.1})), (1 + 0.8 / 3) / 2, 1e-15);
}

TEST(Fidelity, BoundsAndLocalInvariance) {
  std::mt19937_64 rng(25);
  for (int i = 0; i < 1000; ++i) {
    const TwoQubitState s = TwoQubitState::from_matrix(oracle::random_density(rng));
    const MeasureReport r = report(s);
    EXPECT_GE(r.concurrence, 0.0);
    EXPECT_LE(r.concurrence, 1.0);
    EXPECT_GE(r.fidelity, 0.5);
    EXPECT_LE(r.fidelity, 1.0);
    if (i < 100) {
      for (int a = 0; a < 4; ++a) {
        EXPECT_NEAR(teleportation_fidelity(apply_local(s, a, 3 - a)), r.fidelity, 1e-12);
      }
    }
  }
}

TEST(Report, Flags) {
  const MeasureReport bell = report(bell_state(BellIndex::psi_minus));
  EXPECT_TRUE(bell.entangled);
  EXPECT_TRUE(bell.useful_for_teleportation);
  const MeasureReport mixed = report(maximally_mixed());
  EXPECT_FALSE(mixed.entangled);
  EXPECT_FALSE(mixed.useful_for_teleportation);
  EXPECT_FALSE(is_useful_for_teleportation(2.0 / 3.0));
  EXPECT_TRUE(is_useful_for_teleportation(2.0 / 3.0 + 1e-12));
  EXPECT_FALSE(is_entangled(0.0));
}
