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

// Redundancy-free parameterizations built on the composite unitary:
// rank-k density matrices (k-1 simplex angles plus the build_ucd entries)
// and orthonormal bases of k-dimensional subspaces (the build_ucs entries).

#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>

#include "uparam/composite_unitary.hpp"
#include "uparam/error.hpp"
#include "uparam/linalg.hpp"

namespace uparam {

inline constexpr double kRankThreshold = 1e-9;

/// Probabilities p_0..p_{k-1} from k-1 angles:
/// p_0 = cos^2 t_0, p_n = cos^2 t_n prod_{i<n} sin^2 t_i, p_{k-1} = prod sin^2 t_i.
inline RealVector simplex_weights(std::span<const double> theta, std::size_t k) {
  if (k < 1 || theta.size() + 1 != k) {
    throw Error(ErrorCode::kLengthMismatch,
                "expected " + std::to_string(k == 0 ? 0 : k - 1) + " angles, got " +
                    std::to_string(theta.size()));
  }
  RealVector p(static_cast<Eigen::Index>(k));
  double tail = 1.0;  // prod of sin^2 so far
  for (std::size_t n = 0; n + 1 < k; ++n) {
    const double c = std::cos(theta[n]);
    const double s = std::sin(theta[n]);
    p(static_cast<Eigen::Index>(n)) = tail * c * c;
    tail *= s * s;
  }
  p(static_cast<Eigen::Index>(k - 1)) = tail;
  return p;
}

struct DensityTolerances {
  double hermitian = 1e-12;
  double trace = 1e-12;
  double min_eigenvalue = -1e-10;
  double rank_threshold = kRankThreshold;
};

class DensityMatrix {
 public:
  /// Validates Hermiticity, unit trace, positivity and the rank bound.
  static DensityMatrix from_matrix(const ComplexMatrix& m, std::size_t rank_bound = 0,
                                   const DensityTolerances& tol = {}) {
    if (m.rows() != m.cols() || m.rows() == 0) {
      throw Error(ErrorCode::kNonSquare, "density matrix must be square and non-empty");
    }
    const auto d = static_cast<std::size_t>(m.rows());
    if (rank_bound == 0) rank_bound = d;
    const double herm = hermiticity_defect(m);
    if (herm > tol.hermitian) {
      throw Error(ErrorCode::kInvalidDensityMatrix,
                  "not Hermitian: |m - m^dag|_max = " + std::to_string(herm));
    }
    const double tr = m.trace().real();
    if (std::abs(tr - 1.0) > tol.trace) {
      throw Error(ErrorCode::kInvalidDensityMatrix, "trace " + std::to_string(tr) + " != 1");
    }
    ComplexMatrix sym = 0.5 * (m + m.adjoint());
    const RealVector w = herm_eigenvalues(sym);
    if (w(0) < tol.min_eigenvalue) {
      throw Error(ErrorCode::kNotPSD, "minimum eigenvalue " + std::to_string(w(0)));
    }
    const auto rank = static_cast<std::size_t>((w.array() > tol.rank_threshold).count());
    if (rank > rank_bound) {
      throw Error(ErrorCode::kRankOutOfRange, "numerical rank " + std::to_string(rank) +
                                                  " exceeds bound " +
                                                  std::to_string(rank_bound));
    }
    return DensityMatrix(std::move(sym), rank_bound);
  }

  static DensityMatrix from_pure(const StateVector& psi) {
    const double norm = psi.norm();
    if (std::abs(norm - 1.0) > 1e-12) {
      throw Error(ErrorCode::kNormError, "state norm " + std::to_string(norm));
    }
    return DensityMatrix(psi * psi.adjoint(), 1);
  }

  /// For matrices that are density matrices by construction.
  static DensityMatrix assume_valid(ComplexMatrix m, std::size_t rank_bound) {
    return DensityMatrix(std::move(m), rank_bound);
  }

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  std::size_t rank_bound() const { return rank_bound_; }
  const ComplexMatrix& matrix() const { return m_; }

  std::size_t numerical_rank(double threshold = kRankThreshold) const {
    const RealVector w = herm_eigenvalues(m_);
    return static_cast<std::size_t>((w.array() > threshold).count());
  }

 private:
  DensityMatrix(ComplexMatrix m, std::size_t rank_bound)
      : m_(std::move(m)), rank_bound_(rank_bound) {}

  ComplexMatrix m_;
  std::size_t rank_bound_;
};

/// rho = sum_n p_n U|n><n|U^dag with U = build_ucd(p, k). Diagonal phases and
/// entries with both indices >= k are never read.
inline DensityMatrix build_density(std::span<const double> theta, const ParamMatrix& p,
                                   std::size_t k) {
  const std::size_t d = p.dim();
  if (k < 1 || k > d) {
    throw Error(ErrorCode::kRankOutOfRange,
                "rank " + std::to_string(k) + " outside [1, " + std::to_string(d) + "]");
  }
  const RealVector w = simplex_weights(theta, k);
  const Unitary u = build_ucd(p, k);
  const auto kk = static_cast<Eigen::Index>(k);
  const auto cols = u.matrix().leftCols(kk);
  ComplexMatrix rho = cols * w.cast<Complex>().asDiagonal() * cols.adjoint();
  // exact Hermitian symmetry
  rho = (0.5 * (rho + rho.adjoint())).eval();
  return DensityMatrix::assume_valid(std::move(rho), k);
}

class SubspaceBasis {
 public:
  static SubspaceBasis from_columns(ComplexMatrix v, double tol = kUnitaryTol) {
    if (v.cols() < 1 || v.rows() <= v.cols()) {
      throw Error(ErrorCode::kRankOutOfRange,
                  "subspace basis must be d x k with 1 <= k < d");
    }
    const auto k = v.cols();
    const double defect = max_abs(v.adjoint() * v - ComplexMatrix::Identity(k, k));
    if (!(defect <= tol)) {
      throw Error(ErrorCode::kNotOrthonormal,
                  "|V^dag V - I|_max = " + std::to_string(defect));
    }
    return SubspaceBasis(std::move(v));
  }

  static SubspaceBasis assume_orthonormal(ComplexMatrix v) { return SubspaceBasis(std::move(v)); }

  std::size_t ambient_dim() const { return static_cast<std::size_t>(v_.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(v_.cols()); }
  const ComplexMatrix& columns() const { return v_; }

  /// Orthogonal projector V V^dag onto the span.
  ComplexMatrix projector() const { return v_ * v_.adjoint(); }

 private:
  explicit SubspaceBasis(ComplexMatrix v) : v_(std::move(v)) {}
  ComplexMatrix v_;
};

/// First k columns of build_ucs(p, k).
inline SubspaceBasis subspace_basis(const ParamMatrix& p, std::size_t k) {
  const Unitary u = build_ucs(p, k);
  return SubspaceBasis::assume_orthonormal(u.matrix().leftCols(static_cast<Eigen::Index>(k)));
}

struct SubspaceCanonicalForm {
  ParamMatrix params;      // nonzero only at ucs_positions(d, k)
  ComplexMatrix residual;  // k x k unitary W with subspace_basis(params, k) * W = V
};

/// Recovers build_ucs parameters spanning the same subspace as `v`.
///
/// Columns are first mixed among themselves (right-multiplication by a k x k
/// unitary) until the leading k x k block is upper triangular; rows are
/// processed from k-1 down to 1. The decompose sweep then runs over
/// Lambda^dag_{m,n}, m < k <= n, leaving only diagonal phases in the
/// leading block.
inline SubspaceCanonicalForm canonicalize_subspace(const SubspaceBasis& v) {
  const std::size_t d = v.ambient_dim();
  const std::size_t k = v.dim();
  const auto kk = static_cast<Eigen::Index>(k);
  ComplexMatrix a = v.columns();
  ComplexMatrix mix = ComplexMatrix::Identity(kk, kk);  // a = V * mix

  for (std::size_t row = k; row-- > 1;) {
    const auto ir = static_cast<Eigen::Index>(row);
    for (std::size_t col = 0; col < row; ++col) {
      const auto ic = static_cast<Eigen::Index>(col);
      const Complex target = a(ir, ic);
      const Complex pivot = a(ir, ir);
      const double tol = kZeroRelTol * a.row(ir).norm();
      double rot = 0.0;
      double phase = 0.0;
      if (std::abs(target) >= tol) {
        if (std::abs(pivot) < tol) {
          rot = kPi / 2;
        } else {
          rot = std::atan2(std::abs(target), std::abs(pivot));
          phase = wrap_angle(std::arg(target) - std::arg(pivot));
        }
      }
      // col' = c col - e s row_col, row_col' = s col + e c row_col
      const double c = std::cos(rot);
      const double s = std::sin(rot);
      const Complex e = std::polar(1.0, phase);
      ComplexMatrix g = ComplexMatrix::Identity(kk, kk);
      g(ic, ic) = c;
      g(ir, ic) = -e * s;
      g(ic, ir) = s;
      g(ir, ir) = e * c;
      a = (a * g).eval();
      mix = (mix * g).eval();
    }
  }

  ParamMatrix p(d);
  for (std::size_t m = 0; m < k; ++m) {
    const auto im = static_cast<Eigen::Index>(m);
    for (std::size_t n = k; n < d; ++n) {
      const double tol = kZeroRelTol * a.col(im).norm();
      const auto angles = zeroing_angles(a(im, im), a(static_cast<Eigen::Index>(n), im), tol);
      apply_factor_inplace(a, m, n, angles.rot, angles.phase, FactorSide::kLeftAdjoint);
      p(m, n) = angles.rot;
      p(n, m) = angles.phase;
    }
  }

  // a's leading block is now diag(phases): V * mix = B * diag(phases).
  ComplexMatrix phases = ComplexMatrix::Zero(kk, kk);
  for (Eigen::Index i = 0; i < kk; ++i) {
    const Complex z = a(i, i);
    phases(i, i) = z / std::abs(z);
  }
  ComplexMatrix w = phases * mix.adjoint();
  return SubspaceCanonicalForm{std::move(p), std::move(w)};
}

}  // namespace uparam
