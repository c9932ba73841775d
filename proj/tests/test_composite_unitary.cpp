// Copyright 2026 The uparam Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cmath>

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace uparam {
namespace {

using testing::Rng;

double angle_distance(double a, double b) {
  const double r = std::remainder(a - b, kTwoPi);
  return std::abs(r);
}

TEST(CompositeUnitary, MatchesMatrixExponentialProduct) {
  Rng rng(11);
  for (std::size_t d = 2; d <= 5; ++d) {
    for (int trial = 0; trial < 10; ++trial) {
      ParamMatrix p(d);
      for (std::size_t m = 0; m < d; ++m)
        for (std::size_t n = 0; n < d; ++n) p(m, n) = rng.uniform(-7.0, 7.0);
      const ComplexMatrix ref = testing::reference_unitary(p.matrix());
      EXPECT_LT(max_abs(build_unitary(p).matrix() - ref), 1e-12) << "d=" << d;
    }
  }
}

TEST(CompositeUnitary, SingleFactorClosedForm) {
  const double rot = 0.3;
  const double phase = 1.1;
  ParamMatrix p(3);
  p(0, 2) = rot;
  p(2, 0) = phase;
  const ComplexMatrix u = build_unitary(p).matrix();
  const Complex e = std::polar(1.0, phase);
  EXPECT_LT(std::abs(u(0, 0) - std::cos(rot)), 1e-15);
  EXPECT_LT(std::abs(u(0, 2) - std::sin(rot)), 1e-15);
  EXPECT_LT(std::abs(u(2, 0) + e * std::sin(rot)), 1e-15);
  EXPECT_LT(std::abs(u(2, 2) - e * std::cos(rot)), 1e-15);
  EXPECT_LT(std::abs(u(1, 1) - 1.0), 1e-15);
}

TEST(CompositeUnitary, ZeroParametersGiveIdentity) {
  for (std::size_t d = 2; d <= 6; ++d) {
    EXPECT_EQ(max_abs(build_unitary(ParamMatrix(d)).matrix() - Unitary::identity(d).matrix()), 0.0);
  }
}

TEST(CompositeUnitary, AnglesArePeriodic) {
  Rng rng(12);
  const ParamMatrix p = testing::random_params(rng, 4);
  const ComplexMatrix u = build_unitary(p).matrix();
  for (std::size_t m = 0; m < 4; ++m) {
    for (std::size_t n = 0; n < 4; ++n) {
      ParamMatrix q = p;
      q(m, n) += kTwoPi;
      EXPECT_LT(max_abs(build_unitary(q).matrix() - u), 1e-13);
    }
  }
}

TEST(CompositeUnitary, FactorAndAdjointCancel) {
  Rng rng(13);
  const ComplexMatrix x = testing::ginibre(rng, 5, 3);
  const ComplexMatrix y = apply_factor(x, 1, 4, 0.7, 2.3, FactorSide::kLeft);
  const ComplexMatrix back = apply_factor(y, 1, 4, 0.7, 2.3, FactorSide::kLeftAdjoint);
  EXPECT_LT(max_abs(back - x), 1e-14);
  EXPECT_THROW(apply_factor(x, 2, 2, 0.1, 0.1, FactorSide::kLeft), Error);
  EXPECT_THROW(apply_factor(x, 1, 5, 0.1, 0.1, FactorSide::kLeft), Error);
}

TEST(CompositeUnitary, DimensionBelowTwoRejected) {
  EXPECT_THROW(ParamMatrix(1), Error);
  EXPECT_THROW(ParamMatrix(RealMatrix::Zero(2, 3)), Error);
}

TEST(Decompose, IdentityGivesZeroMatrix) {
  for (std::size_t d = 2; d <= 5; ++d) {
    EXPECT_EQ(decompose(Unitary::identity(d)).matrix(), RealMatrix::Zero(d, d));
  }
}

TEST(Decompose, RealRotationGivesSingleAngle) {
  ComplexMatrix u(2, 2);
  u << 0.0, 1.0, -1.0, 0.0;
  const ParamMatrix p = decompose(u);
  EXPECT_NEAR(p(0, 1), kPi / 2, 1e-15);
  EXPECT_EQ(p(1, 0), 0.0);
  EXPECT_EQ(p(0, 0), 0.0);
  EXPECT_EQ(p(1, 1), 0.0);
}

TEST(Decompose, RoundTripOnHaarUnitaries) {
  Rng rng(14);
  for (std::size_t d = 2; d <= 6; ++d) {
    for (int trial = 0; trial < 50; ++trial) {
      const ComplexMatrix u = testing::haar_unitary(rng, d);
      const ParamMatrix p = decompose(u);
      EXPECT_TRUE(p.is_canonical());
      EXPECT_LT(max_abs(build_unitary(p).matrix() - u), 1e-12);
    }
  }
}

TEST(Decompose, RecoversGenericCanonicalParameters) {
  Rng rng(15);
  for (std::size_t d = 2; d <= 5; ++d) {
    for (int trial = 0; trial < 20; ++trial) {
      const ParamMatrix p = testing::random_params(rng, d);
      const ParamMatrix q = decompose(build_unitary(p));
      for (std::size_t m = 0; m < d; ++m) {
        for (std::size_t n = 0; n < d; ++n) {
          EXPECT_LT(angle_distance(p(m, n), q(m, n)), 1e-9) << "d=" << d << " (" << m << "," << n << ")";
        }
      }
    }
  }
}

TEST(Decompose, PermutationAndDiagonalInputs) {
  for (std::size_t d = 2; d <= 5; ++d) {
    const auto n = static_cast<Eigen::Index>(d);
    ComplexMatrix cyc = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) cyc((i + 1) % n, i) = 1.0;
    EXPECT_LT(max_abs(build_unitary(decompose(cyc)).matrix() - cyc), 1e-14);

    ComplexMatrix diag = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) diag(i, i) = std::polar(1.0, 0.4 * static_cast<double>(i + 1));
    const ParamMatrix p = decompose(diag);
    for (std::size_t m = 0; m < d; ++m)
      for (std::size_t k = 0; k < d; ++k)
        if (m != k) EXPECT_EQ(p(m, k), 0.0);
    EXPECT_LT(max_abs(build_unitary(p).matrix() - diag), 1e-15);
  }
}

TEST(Decompose, RejectsNonUnitary) {
  ComplexMatrix m = ComplexMatrix::Identity(3, 3);
  m(0, 1) = 1e-6;
  try {
    decompose(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotUnitary);
  }
}

TEST(Truncations, UcdReadsOnlyItsPositions) {
  Rng rng(16);
  for (std::size_t d = 2; d <= 6; ++d) {
    for (std::size_t k = 1; k <= d; ++k) {
      const auto pos = ucd_positions(d, k);
      EXPECT_EQ(pos.size(), k * (2 * d - k - 1));
      ParamMatrix full = testing::random_params(rng, d);
      ParamMatrix only(d);
      for (auto [r, c] : pos) only(r, c) = full(r, c);
      EXPECT_LT(max_abs(build_ucd(full, k).matrix() - build_ucd(only, k).matrix()), 1e-15);
    }
  }
}

TEST(Truncations, UcsReadsOnlyItsPositions) {
  Rng rng(17);
  for (std::size_t d = 2; d <= 6; ++d) {
    for (std::size_t k = 1; k < d; ++k) {
      const auto pos = ucs_positions(d, k);
      EXPECT_EQ(pos.size(), 2 * k * (d - k));
      ParamMatrix full = testing::random_params(rng, d);
      ParamMatrix only(d);
      for (auto [r, c] : pos) only(r, c) = full(r, c);
      EXPECT_LT(max_abs(build_ucs(full, k).matrix() - build_ucs(only, k).matrix()), 1e-15);
    }
  }
}

TEST(Truncations, FullUcdIsUnitaryWithoutPhases) {
  Rng rng(18);
  ParamMatrix p = testing::random_params(rng, 4);
  ParamMatrix no_phase = p;
  for (std::size_t l = 0; l < 4; ++l) no_phase(l, l) = 0.0;
  EXPECT_LT(max_abs(build_ucd(p, 4).matrix() - build_unitary(no_phase).matrix()), 1e-15);
}

TEST(Truncations, RankArgumentsChecked) {
  ParamMatrix p(3);
  EXPECT_THROW(build_ucd(p, 0), Error);
  EXPECT_THROW(build_ucd(p, 4), Error);
  EXPECT_THROW(build_ucs(p, 3), Error);
}

}  // namespace
}  // namespace uparam
