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


#include <numeric>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace uparam {
namespace {

using testing::Rng;

TEST(SimplexWeights, KnownValues) {
  const std::vector<double> none;
  EXPECT_EQ(simplex_weights(none, 1)(0), 1.0);
  const std::vector<double> t = {kPi / 4, kPi / 3};
  const RealVector p = simplex_weights(t, 3);
  EXPECT_NEAR(p(0), 0.5, 1e-15);
  EXPECT_NEAR(p(1), 0.5 * 0.25, 1e-15);
  EXPECT_NEAR(p(2), 0.5 * 0.75, 1e-15);
}

TEST(SimplexWeights, SumToOneAndNonNegative) {
  Rng rng(21);
  for (std::size_t k = 1; k <= 7; ++k) {
    std::vector<double> t(k - 1);
    for (auto& v : t) v = rng.uniform(-10.0, 10.0);
    const RealVector p = simplex_weights(t, k);
    EXPECT_NEAR(p.sum(), 1.0, 1e-14);
    EXPECT_GE(p.minCoeff(), 0.0);
  }
}

TEST(SimplexWeights, LengthChecked) {
  const std::vector<double> t = {0.1, 0.2};
  EXPECT_THROW(simplex_weights(t, 2), Error);
  EXPECT_THROW(simplex_weights(t, 0), Error);
}

TEST(DensityMatrix, ValidationErrors) {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2) * 0.5;
  EXPECT_NO_THROW(DensityMatrix::from_matrix(m));
  ComplexMatrix bad_trace = m * 1.1;
  EXPECT_THROW(DensityMatrix::from_matrix(bad_trace), Error);
  ComplexMatrix neg = m;
  neg(0, 0) = 1.2;
  neg(1, 1) = -0.2;
  try {
    DensityMatrix::from_matrix(neg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotPSD);
  }
  ComplexMatrix nonherm = m;
  nonherm(0, 1) = 0.1;
  EXPECT_THROW(DensityMatrix::from_matrix(nonherm), Error);
  try {
    DensityMatrix::from_matrix(m, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRankOutOfRange);
  }
  StateVector psi = StateVector::Zero(2);
  psi(0) = 2.0;
  EXPECT_THROW(DensityMatrix::from_pure(psi), Error);
}

TEST(BuildDensity, Invariants) {
  Rng rng(22);
  for (std::size_t d = 2; d <= 6; ++d) {
    for (std::size_t k = 1; k <= d; ++k) {
      for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> theta(k - 1);
        for (auto& t : theta) t = rng.uniform(0.0, kPi / 2);
        const DensityMatrix rho = build_density(theta, testing::random_params(rng, d), k);
        EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-12);
        EXPECT_GE(herm_eigenvalues(rho.matrix())(0), -1e-10);
        EXPECT_LE(rho.numerical_rank(), k);
        EXPECT_EQ(rho.rank_bound(), k);
      }
    }
  }
}

TEST(BuildDensity, SpectrumIsTheSimplexWeights) {
  Rng rng(23);
  std::vector<double> theta = {0.3, 1.0, 0.7};
  const DensityMatrix rho = build_density(theta, testing::random_params(rng, 5), 4);
  RealVector w = herm_eigenvalues(rho.matrix());
  RealVector p = simplex_weights(theta, 4);
  std::vector<double> a(w.data(), w.data() + w.size());
  std::vector<double> b(p.data(), p.data() + p.size());
  b.push_back(0.0);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-12);
}

// Entries the construction must ignore: diagonal phases and the block
// with both indices >= k.
TEST(BuildDensity, IgnoresUnusedEntries) {
  Rng rng(24);
  const std::size_t d = 5;
  const std::size_t k = 2;
  const ParamMatrix p = testing::random_params(rng, d);
  ParamMatrix q = p;
  for (std::size_t m = 0; m < d; ++m) q(m, m) += 1.0;
  q(3, 4) += 0.5;
  q(4, 2) += 0.5;
  const std::vector<double> theta = {0.4};
  EXPECT_LT(max_abs(build_density(theta, p, k).matrix() - build_density(theta, q, k).matrix()),
            1e-15);
}

TEST(SubspaceBasis, Orthonormal) {
  Rng rng(25);
  for (std::size_t d = 2; d <= 6; ++d) {
    for (std::size_t k = 1; k < d; ++k) {
      const SubspaceBasis v = subspace_basis(testing::random_params(rng, d), k);
      const auto kk = static_cast<Eigen::Index>(k);
      EXPECT_LT(max_abs(v.columns().adjoint() * v.columns() - ComplexMatrix::Identity(kk, kk)),
                1e-13);
    }
  }
  EXPECT_THROW(SubspaceBasis::from_columns(ComplexMatrix::Ones(3, 2)), Error);
}

TEST(CanonicalizeSubspace, ReproducesRandomSubspaces) {
  Rng rng(26);
  for (std::size_t d = 2; d <= 6; ++d) {
    for (std::size_t k = 1; k < d; ++k) {
      for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix u = testing::haar_unitary(rng, d);
        const auto kk = static_cast<Eigen::Index>(k);
        const auto v = SubspaceBasis::from_columns(u.leftCols(kk));
        const SubspaceCanonicalForm form = canonicalize_subspace(v);

        const auto pos = ucs_positions(d, k);
        const std::set<std::pair<std::size_t, std::size_t>> allowed(pos.begin(), pos.end());
        for (std::size_t m = 0; m < d; ++m)
          for (std::size_t n = 0; n < d; ++n)
            if (!allowed.count({m, n})) EXPECT_EQ(form.params(m, n), 0.0);

        const SubspaceBasis rebuilt = subspace_basis(form.params, k);
        EXPECT_LT(max_abs(rebuilt.columns() * form.residual - v.columns()), 1e-10);
        EXPECT_LT(unitarity_defect(form.residual), 1e-12);
        EXPECT_LT(max_abs(rebuilt.projector() - v.projector()), 1e-10);
      }
    }
  }
}

TEST(CanonicalizeSubspace, RotatedBasisGivesSameParameters) {
  Rng rng(27);
  const std::size_t d = 5;
  const std::size_t k = 2;
  const ComplexMatrix u = testing::haar_unitary(rng, d);
  const ComplexMatrix v = u.leftCols(2);
  const ComplexMatrix w = testing::haar_unitary(rng, k);
  const auto a = canonicalize_subspace(SubspaceBasis::from_columns(v));
  const auto b = canonicalize_subspace(SubspaceBasis::from_columns(v * w));
  EXPECT_LT((a.params.matrix() - b.params.matrix()).cwiseAbs().maxCoeff(), 1e-9);
}

}  // namespace
}  // namespace uparam
