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

// Composite parameterization of U(d).
//
// A unitary is described by a d x d real "parameter matrix" lambda:
//   * lambda(l, l)          global phase of basis vector l,
//   * lambda(m, n), m < n   rotation angle in the (m, n) plane,
//   * lambda(n, m), m < n   relative phase attached to that rotation.
// and is assembled as
//
//   U = [prod_{m<n} Lambda_{m,n}] * prod_l exp(i P_l lambda(l,l)),
//   Lambda_{m,n} = exp(i P_n lambda(n,m)) exp(i sigma_{m,n} lambda(m,n)),
//
// with the pairs (m, n) taken in lexicographic order and products expanded
// left to right. All indices in this API are 0-based: index l denotes the
// basis vector usually written |l+1>.
//
// Factors are never exponentiated numerically. On span{|m>, |n>} a factor is
//
//   [[ cos r,           sin r          ],
//    [ -e^{i phi} sin r, e^{i phi} cos r ]]
//
// so applying one touches two rows of the operand.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "uparam/error.hpp"
#include "uparam/linalg.hpp"

namespace uparam {

inline constexpr double kUnitaryTol = 1e-9;
inline constexpr double kZeroRelTol = 1e-12;

/// Maps any real angle into [0, 2*pi).
inline double wrap_angle(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

class ParamMatrix {
 public:
  explicit ParamMatrix(std::size_t d) : lambda_(RealMatrix::Zero(checked(d), checked(d))) {}

  explicit ParamMatrix(RealMatrix lambda) : lambda_(std::move(lambda)) {
    if (lambda_.rows() != lambda_.cols()) {
      throw Error(ErrorCode::kNonSquare, "parameter matrix must be square");
    }
    checked(static_cast<std::size_t>(lambda_.rows()));
  }

  std::size_t dim() const { return static_cast<std::size_t>(lambda_.rows()); }

  double operator()(std::size_t m, std::size_t n) const {
    return lambda_(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  }
  double& operator()(std::size_t m, std::size_t n) {
    return lambda_(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  }

  const RealMatrix& matrix() const { return lambda_; }

  /// True when every entry lies in its canonical range: [0, 2pi) on and
  /// below the diagonal, [0, pi/2] above it.
  bool is_canonical() const {
    const auto d = dim();
    for (std::size_t m = 0; m < d; ++m) {
      for (std::size_t n = 0; n < d; ++n) {
        const double v = (*this)(m, n);
        const bool ok = m >= n ? (v >= 0.0 && v < kTwoPi)
                               : (v >= 0.0 && v <= kPi / 2);
        if (!ok) return false;
      }
    }
    return true;
  }

  friend bool operator==(const ParamMatrix& a, const ParamMatrix& b) {
    return a.lambda_ == b.lambda_;
  }

 private:
  static Eigen::Index checked(std::size_t d) {
    if (d < 2) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "parameter matrix dimension must be >= 2, got " + std::to_string(d));
    }
    return static_cast<Eigen::Index>(d);
  }

  RealMatrix lambda_;
};

inline double unitarity_defect(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  return max_abs(u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols()));
}

class Unitary {
 public:
  /// Validates |U^dag U - I|_max <= tol.
  static Unitary from_matrix(ComplexMatrix u, double tol = kUnitaryTol) {
    if (u.rows() != u.cols()) {
      throw Error(ErrorCode::kNonSquare, "unitary must be square");
    }
    const double defect = unitarity_defect(u);
    if (!(defect <= tol)) {
      throw Error(ErrorCode::kNotUnitary,
                  "|U^dag U - I|_max = " + std::to_string(defect));
    }
    return Unitary(std::move(u));
  }

  /// For matrices unitary by construction (products of factors).
  static Unitary assume_unitary(ComplexMatrix u) { return Unitary(std::move(u)); }

  static Unitary identity(std::size_t d) {
    const auto n = static_cast<Eigen::Index>(d);
    return Unitary(ComplexMatrix::Identity(n, n));
  }

  std::size_t dim() const { return static_cast<std::size_t>(u_.rows()); }
  const ComplexMatrix& matrix() const { return u_; }

  Unitary adjoint() const { return Unitary(u_.adjoint()); }

 private:
  explicit Unitary(ComplexMatrix u) : u_(std::move(u)) {}
  ComplexMatrix u_;
};

enum class FactorSide { kLeft, kLeftAdjoint };

/// |l><l| in dimension d.
inline ComplexMatrix projector(std::size_t l, std::size_t d) {
  if (l >= d) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "projector index " + std::to_string(l) + " >= d");
  }
  const auto n = static_cast<Eigen::Index>(d);
  ComplexMatrix p = ComplexMatrix::Zero(n, n);
  p(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(l)) = 1.0;
  return p;
}

/// Antisymmetric generalized sigma matrix -i|m><n| + i|n><m|, m < n.
inline ComplexMatrix sigma(std::size_t m, std::size_t n, std::size_t d) {
  if (m >= d || n >= d) {
    throw Error(ErrorCode::kIndexOutOfRange, "sigma index out of range");
  }
  if (m >= n) {
    throw Error(ErrorCode::kRequireMLessThanN, "sigma requires m < n");
  }
  const auto sz = static_cast<Eigen::Index>(d);
  ComplexMatrix s = ComplexMatrix::Zero(sz, sz);
  s(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n)) = Complex(0.0, -1.0);
  s(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m)) = Complex(0.0, 1.0);
  return s;
}

/// Left-multiplies `x` in place by Lambda_{m,n}(rot, phase) or its adjoint.
/// Works for any Eigen dense operand with d rows (matrices or vectors).
template <class Derived>
void apply_factor_inplace(Eigen::MatrixBase<Derived>& x, std::size_t m,
                          std::size_t n, double rot, double phase,
                          FactorSide side) {
  const auto rows = static_cast<std::size_t>(x.rows());
  if (m >= n || n >= rows) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "factor (" + std::to_string(m) + "," + std::to_string(n) +
                    ") invalid for operand with " + std::to_string(rows) + " rows");
  }
  const double c = std::cos(rot);
  const double s = std::sin(rot);
  const Complex e = std::polar(1.0, phase);
  const auto im = static_cast<Eigen::Index>(m);
  const auto in = static_cast<Eigen::Index>(n);
  for (Eigen::Index col = 0; col < x.cols(); ++col) {
    const Complex xm = x(im, col);
    const Complex xn = x(in, col);
    if (side == FactorSide::kLeft) {
      x(im, col) = c * xm + s * xn;
      x(in, col) = e * (c * xn - s * xm);
    } else {
      const Complex ec = std::conj(e);
      x(im, col) = c * xm - ec * s * xn;
      x(in, col) = s * xm + ec * c * xn;
    }
  }
}

template <class Derived>
typename Derived::PlainObject apply_factor(const Eigen::MatrixBase<Derived>& x,
                                           std::size_t m, std::size_t n,
                                           double rot, double phase,
                                           FactorSide side) {
  typename Derived::PlainObject out = x;
  apply_factor_inplace(out, m, n, rot, phase, side);
  return out;
}

namespace detail {

// Left-multiplies `x` by prod_{m < m_end} prod_{n >= n_begin(m), n > m}
// Lambda_{m,n}; the rightmost factor is applied first.
template <class NBegin>
void apply_factor_product(ComplexMatrix& x, const ParamMatrix& p,
                          std::size_t m_end, NBegin n_begin) {
  const std::size_t d = p.dim();
  for (std::size_t m = m_end; m-- > 0;) {
    const std::size_t first = std::max(n_begin(m), m + 1);
    for (std::size_t n = d; n-- > first;) {
      apply_factor_inplace(x, m, n, p(m, n), p(n, m), FactorSide::kLeft);
    }
  }
}

inline ComplexMatrix identity_matrix(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  return ComplexMatrix::Identity(n, n);
}

}  // namespace detail

/// The full d^2-parameter unitary. Angles may take any real value.
inline Unitary build_unitary(const ParamMatrix& p) {
  const std::size_t d = p.dim();
  ComplexMatrix u = ComplexMatrix::Zero(static_cast<Eigen::Index>(d),
                                        static_cast<Eigen::Index>(d));
  for (std::size_t l = 0; l < d; ++l) {
    u(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(l)) = std::polar(1.0, p(l, l));
  }
  detail::apply_factor_product(u, p, d - 1, [](std::size_t) { return std::size_t{0}; });
  return Unitary::assume_unitary(std::move(u));
}

/// Product restricted to m < k (no diagonal phases): enough to generate any
/// rank-k density matrix. Reads k(2d-k-1) entries of `p`.
inline Unitary build_ucd(const ParamMatrix& p, std::size_t k) {
  const std::size_t d = p.dim();
  if (k < 1 || k > d) {
    throw Error(ErrorCode::kRankOutOfRange,
                "rank " + std::to_string(k) + " outside [1, " + std::to_string(d) + "]");
  }
  ComplexMatrix u = detail::identity_matrix(d);
  detail::apply_factor_product(u, p, std::min(k, d - 1),
                               [](std::size_t) { return std::size_t{0}; });
  return Unitary::assume_unitary(std::move(u));
}

/// Product restricted to m < k <= n: its first k columns span an arbitrary
/// k-dimensional subspace. Reads 2k(d-k) entries of `p`.
inline Unitary build_ucs(const ParamMatrix& p, std::size_t k) {
  const std::size_t d = p.dim();
  if (k < 1 || k >= d) {
    throw Error(ErrorCode::kRankOutOfRange,
                "subspace dimension " + std::to_string(k) + " outside [1, " +
                    std::to_string(d - 1) + "]");
  }
  ComplexMatrix u = detail::identity_matrix(d);
  detail::apply_factor_product(u, p, k, [k](std::size_t) { return k; });
  return Unitary::assume_unitary(std::move(u));
}

/// Positions (row, col) of the parameter matrix read by build_ucd, in
/// row-major order.
inline std::vector<std::pair<std::size_t, std::size_t>> ucd_positions(std::size_t d,
                                                                      std::size_t k) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      const bool upper = r < c && r < k;
      const bool lower = c < r && c < k;
      if (upper || lower) out.emplace_back(r, c);
    }
  }
  return out;
}

/// Positions read by build_ucs, in row-major order.
inline std::vector<std::pair<std::size_t, std::size_t>> ucs_positions(std::size_t d,
                                                                      std::size_t k) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      if ((r < k && c >= k) || (r >= k && c < k)) out.emplace_back(r, c);
    }
  }
  return out;
}

struct FactorAngles {
  double rot = 0.0;
  double phase = 0.0;
};

/// Angles of Lambda_{m,n} whose adjoint, applied from the left, zeroes the
/// entry `target` (row n) against `pivot` (row m) of the same column.
/// Magnitudes below `zero_tol` count as exact zeros.
inline FactorAngles zeroing_angles(Complex pivot, Complex target, double zero_tol) {
  const bool pivot_zero = std::abs(pivot) < zero_tol;
  const bool target_zero = std::abs(target) < zero_tol;
  if (target_zero) return {};
  if (pivot_zero) return {kPi / 2, 0.0};
  return {std::atan2(std::abs(target), std::abs(pivot)),
          wrap_angle(std::arg(target) - std::arg(-pivot))};
}

/// Canonical parameters of `u`: build_unitary(decompose(u)) reproduces u.
/// Factors Lambda^dag_{m,n} are applied in lexicographic (m, n) order, each
/// zeroing one sub-diagonal entry of column m; the remaining diagonal holds
/// the global phases.
inline ParamMatrix decompose(const Unitary& u) {
  const std::size_t d = u.dim();
  ParamMatrix p(d);
  ComplexMatrix a = u.matrix();
  for (std::size_t m = 0; m + 1 < d; ++m) {
    const auto im = static_cast<Eigen::Index>(m);
    for (std::size_t n = m + 1; n < d; ++n) {
      const double tol = kZeroRelTol * a.col(im).norm();
      const auto angles = zeroing_angles(a(im, im), a(static_cast<Eigen::Index>(n), im), tol);
      apply_factor_inplace(a, m, n, angles.rot, angles.phase, FactorSide::kLeftAdjoint);
      p(m, n) = angles.rot;
      p(n, m) = angles.phase;
    }
  }
  for (std::size_t r = 0; r < d; ++r) {
    const auto ir = static_cast<Eigen::Index>(r);
    p(r, r) = wrap_angle(std::arg(a(ir, ir)));
  }
  return p;
}

inline ParamMatrix decompose(const ComplexMatrix& u) {
  return decompose(Unitary::from_matrix(u));
}

}  // namespace uparam
