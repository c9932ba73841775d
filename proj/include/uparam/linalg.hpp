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

// Dense complex linear algebra used throughout the library: Hermitian
// eigendecomposition, PSD square roots, Kronecker products and the
// subsystem operations (partial trace, partial transpose, reordering) on
// composite matrices.
//
// Composite matrices use the usual lexicographic product basis: for
// subsystem dimensions (d_0, ..., d_{n-1}) the flat index of the multi-index
// (i_0, ..., i_{n-1}) is sum_j i_j * stride_j with subsystem 0 most
// significant.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "uparam/error.hpp"

namespace uparam {

using Complex = std::complex<double>;
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RealMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using StateVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

inline constexpr double kHermitianTol = 1e-9;
inline constexpr double kPsdClampTol = 1e-8;

struct HermitianEig {
  RealVector eigenvalues;     // ascending
  ComplexMatrix eigenvectors;  // columns
};

template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

inline double hermiticity_defect(const ComplexMatrix& m) {
  return max_abs(m - m.adjoint());
}

namespace detail {

inline void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::kNonSquare,
                std::string(what) + ": matrix is " + std::to_string(m.rows()) +
                    "x" + std::to_string(m.cols()));
  }
}

inline Eigen::MatrixXcd symmetrized(const ComplexMatrix& m, const char* what) {
  require_square(m, what);
  const double defect = hermiticity_defect(m);
  if (defect > kHermitianTol) {
    throw Error(ErrorCode::kNotHermitian,
                std::string(what) + ": |m - m^dag|_max = " +
                    std::to_string(defect));
  }
  Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
  return h;
}

inline std::size_t product(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                         std::multiplies<>());
}

inline void require_composite(const ComplexMatrix& m,
                              std::span<const std::size_t> dims,
                              std::size_t which, const char* what) {
  if (dims.empty() || which >= dims.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + ": subsystem index out of range");
  }
  const auto total = product(dims);
  if (m.rows() != m.cols() || static_cast<std::size_t>(m.rows()) != total) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + ": matrix size " +
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                    " does not match product of dims " + std::to_string(total));
  }
}

// Stride of subsystem `which` in the flat product index.
inline std::size_t stride_of(std::span<const std::size_t> dims,
                             std::size_t which) {
  std::size_t s = 1;
  for (std::size_t j = which + 1; j < dims.size(); ++j) s *= dims[j];
  return s;
}

}  // namespace detail

/// Eigendecomposition of a Hermitian matrix. The input is symmetrized as
/// (m + m^dag)/2 after checking |m - m^dag|_max <= 1e-9.
inline HermitianEig herm_eig(const ComplexMatrix& m) {
  const Eigen::MatrixXcd h = detail::symmetrized(m, "herm_eig");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kConvergenceFailure, "herm_eig: eigensolver failed");
  }
  return HermitianEig{solver.eigenvalues(), solver.eigenvectors()};
}

/// Eigenvalues only (ascending); same preconditions as herm_eig.
inline RealVector herm_eigenvalues(const ComplexMatrix& m) {
  const Eigen::MatrixXcd h = detail::symmetrized(m, "herm_eigenvalues");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h,
                                                          Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kConvergenceFailure,
                "herm_eigenvalues: eigensolver failed");
  }
  return solver.eigenvalues();
}

/// Principal square root of a PSD Hermitian matrix. Eigenvalues in
/// [-1e-8, 0) are treated as round-off and clamped to zero, as are positive
/// eigenvalues within the solver's error bound 4 n eps |m|; the square root
/// would otherwise turn ~1e-17 null-space noise into ~1e-9 entries.
inline ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  const HermitianEig eig = herm_eig(m);
  const auto n = eig.eigenvalues.size();
  if (n == 0) return ComplexMatrix(0, 0);
  if (eig.eigenvalues(0) < -kPsdClampTol) {
    throw Error(ErrorCode::kNotPSD, "psd_sqrt: minimum eigenvalue " +
                                        std::to_string(eig.eigenvalues(0)));
  }
  const double scale = std::max(std::abs(eig.eigenvalues(0)), std::abs(eig.eigenvalues(n - 1)));
  const double noise = 4.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon() * scale;
  const RealVector roots =
      eig.eigenvalues.unaryExpr([noise](double e) { return e > noise ? std::sqrt(e) : 0.0; });
  ComplexMatrix r = eig.eigenvectors * roots.cast<Complex>().asDiagonal() *
                    eig.eigenvectors.adjoint();
  return r;
}

template <class DerivedA, class DerivedB>
ComplexMatrix kron(const Eigen::MatrixBase<DerivedA>& a,
                   const Eigen::MatrixBase<DerivedB>& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
          Complex(a(i, j)) * b.template cast<Complex>();
    }
  }
  return out;
}

inline StateVector kron_vec(const StateVector& a, const StateVector& b) {
  StateVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

/// Transposes tensor factor `which` of a composite matrix.
inline ComplexMatrix partial_transpose(const ComplexMatrix& m,
                                       std::span<const std::size_t> dims,
                                       std::size_t which) {
  detail::require_composite(m, dims, which, "partial_transpose");
  const std::size_t stride = detail::stride_of(dims, which);
  const std::size_t dw = dims[which];
  const auto n = static_cast<std::size_t>(m.rows());
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t rd = (r / stride) % dw;
    for (std::size_t c = 0; c < n; ++c) {
      const std::size_t cd = (c / stride) % dw;
      // swap the `which` digits of row and column
      const std::size_t r2 = r - rd * stride + cd * stride;
      const std::size_t c2 = c - cd * stride + rd * stride;
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          m(static_cast<Eigen::Index>(r2), static_cast<Eigen::Index>(c2));
    }
  }
  return out;
}

/// Reduced matrix on subsystem `keep`, tracing out every other factor.
inline ComplexMatrix partial_trace(const ComplexMatrix& m,
                                   std::span<const std::size_t> dims,
                                   std::size_t keep) {
  detail::require_composite(m, dims, keep, "partial_trace");
  const std::size_t stride = detail::stride_of(dims, keep);
  const std::size_t dk = dims[keep];
  const std::size_t total = detail::product(dims);
  const std::size_t outer = total / (dk * stride);
  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(dk),
                                          static_cast<Eigen::Index>(dk));
  for (std::size_t hi = 0; hi < outer; ++hi) {
    for (std::size_t lo = 0; lo < stride; ++lo) {
      const std::size_t base = hi * dk * stride + lo;
      for (std::size_t a = 0; a < dk; ++a) {
        for (std::size_t b = 0; b < dk; ++b) {
          out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) +=
              m(static_cast<Eigen::Index>(base + a * stride),
                static_cast<Eigen::Index>(base + b * stride));
        }
      }
    }
  }
  return out;
}

/// Index map for reordering tensor factors: subsystem j of the result is
/// subsystem perm[j] of the input. Entry i of the returned vector is the
/// input flat index corresponding to output flat index i.
inline std::vector<std::size_t> subsystem_permutation_map(
    std::span<const std::size_t> dims, std::span<const std::size_t> perm) {
  const std::size_t n = dims.size();
  if (perm.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "permutation length does not match subsystem count");
  }
  std::vector<bool> seen(n, false);
  for (auto p : perm) {
    if (p >= n || seen[p]) {
      throw Error(ErrorCode::kDimensionMismatch, "not a permutation");
    }
    seen[p] = true;
  }
  std::vector<std::size_t> new_dims(n);
  for (std::size_t j = 0; j < n; ++j) new_dims[j] = dims[perm[j]];
  std::vector<std::size_t> old_strides(n);
  for (std::size_t j = 0; j < n; ++j) old_strides[j] = detail::stride_of(dims, j);

  const std::size_t total = detail::product(dims);
  std::vector<std::size_t> map(total);
  std::vector<std::size_t> digits(n, 0);
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t old_index = 0;
    for (std::size_t j = 0; j < n; ++j) old_index += digits[j] * old_strides[perm[j]];
    map[i] = old_index;
    // increment the mixed-radix counter over new_dims
    for (std::size_t j = n; j-- > 0;) {
      if (++digits[j] < new_dims[j]) break;
      digits[j] = 0;
    }
  }
  return map;
}

inline ComplexMatrix permute_subsystems(const ComplexMatrix& m,
                                        std::span<const std::size_t> dims,
                                        std::span<const std::size_t> perm) {
  detail::require_composite(m, dims, 0, "permute_subsystems");
  const auto map = subsystem_permutation_map(dims, perm);
  const auto n = static_cast<Eigen::Index>(map.size());
  ComplexMatrix out(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      out(r, c) = m(static_cast<Eigen::Index>(map[r]),
                    static_cast<Eigen::Index>(map[c]));
    }
  }
  return out;
}

}  // namespace uparam
