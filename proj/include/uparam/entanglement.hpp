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

// m-concurrence lower bounds.
//
// For a bipartite state rho on C^dA (x) C^dB and index pairs kA < lA,
// kB < lB, the term X_{kA,lA,kB,lB} is max(2 max_i x_i - sum_i x_i, 0) where
// x_i are the square roots of the eigenvalues of
//
//   rho (SA (x) SB) rho* (SA (x) SB)*,   SA = uA^dag sigma_{kA,lA} uA*,
//
// and similarly for SB. Conjugating the sigma matrices by local unitaries is
// the same as evaluating the plain term on (uA (x) uB) rho (uA (x) uB)^dag.
// B^2 = sum of X^2 over all index pairs.
//
// The eigenvalues are taken from the Hermitian PSD matrix T T^dag with
// T = sqrt(rho) M sqrt(rho)*, M = SA (x) SB, which has the same spectrum as
// the non-Hermitian product above.
//
// Complex conjugation is always taken in the computational product basis,
// the basis in which parameterized unitaries are built.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "uparam/composite_unitary.hpp"
#include "uparam/error.hpp"
#include "uparam/linalg.hpp"
#include "uparam/states.hpp"

namespace uparam {

/// d/(d-1) (1 - Tr rho^2), clamped to [0, 1].
inline double linear_entropy(const ComplexMatrix& rho) {
  const auto d = static_cast<double>(rho.rows());
  if (rho.rows() < 2) return 0.0;
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
  const double purity = rho.cwiseAbs2().sum();
  const double s = d / (d - 1.0) * (1.0 - purity);
  return std::clamp(s, 0.0, 1.0);
}

inline double linear_entropy(const DensityMatrix& rho) { return linear_entropy(rho.matrix()); }

/// 2(d-1)/d S_L(Tr_B |psi><psi|) for psi in C^d (x) C^d.
inline double pure_m_concurrence_sq(const StateVector& psi, std::size_t d_a, std::size_t d_b) {
  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > 1e-12) {
    throw Error(ErrorCode::kNormError, "state norm " + std::to_string(norm));
  }
  if (d_a * d_b != static_cast<std::size_t>(psi.size()) || d_a != d_b || d_a < 2) {
    throw Error(ErrorCode::kDimensionMismatch, "pure_m_concurrence_sq needs dA = dB >= 2 "
                                               "and dA*dB = len(psi)");
  }
  const ComplexMatrix rho = psi * psi.adjoint();
  const std::size_t dims[] = {d_a, d_b};
  const ComplexMatrix rho_a = partial_trace(rho, dims, 0);
  const auto d = static_cast<double>(d_a);
  return 2.0 * (d - 1.0) / d * linear_entropy(rho_a);
}

/// C_m of a maximally entangled state in C^d (x) C^d: sqrt(2(d-1)/d).
inline double max_entangled_m_concurrence(std::size_t d) {
  const auto dd = static_cast<double>(d);
  return std::sqrt(2.0 * (dd - 1.0) / dd);
}

struct SigmaPair {
  std::size_t k = 0;
  std::size_t l = 0;
};

/// All (k, l) with k < l < d, lexicographic.
inline std::vector<SigmaPair> sigma_pairs(std::size_t d) {
  std::vector<SigmaPair> out;
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t l = k + 1; l < d; ++l) out.push_back({k, l});
  }
  return out;
}

/// u^dag sigma_{k,l} u*.
inline ComplexMatrix conjugated_sigma(const ComplexMatrix& u, std::size_t k, std::size_t l) {
  const auto d = static_cast<std::size_t>(u.rows());
  return u.adjoint() * sigma(k, l, d) * u.conjugate();
}

/// 2 max x - sum x over x_i = sqrt(eigenvalues of T T^dag), before clamping
/// at zero. Eigenvalues at or below `floor` count as zero.
inline double x_margin_from_eigenvalues(const RealVector& eigenvalues, double floor = 0.0) {
  double largest = 0.0;
  double total = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    const double e = eigenvalues(i);
    const double x = e > floor ? std::sqrt(e) : 0.0;
    largest = std::max(largest, x);
    total += x;
  }
  return 2.0 * largest - total;
}

/// X = max(2 max x - sum x, 0).
inline double x_from_eigenvalues(const RealVector& eigenvalues, double floor = 0.0) {
  return std::max(x_margin_from_eigenvalues(eigenvalues, floor), 0.0);
}

/// Eigenvalue floors below which x_i counts as zero. The x_i are bounded by
/// Tr rho = 1, so on the 4x4 route anything under 1e-14 is round-off. The
/// dense route works on the full space, where sqrt amplifies null-space
/// round-off much more.
inline constexpr double kReducedEigenFloor = 1e-28;
inline constexpr double kDenseEigenFloor = 1e-12;

/// Precomputes sqrt(rho) for repeated term evaluations on a fixed state.
///
/// With uA^dag e_k = a_k, the conjugated sigma is SA = -i a_k a_l^T + i a_l a_k^T
/// = LA sy LA^T for LA = [a_k a_l] and sy the 2x2 Pauli-Y; hence
/// M = W (sy (x) sy) W^T with W = LA (x) LB of rank 4. Writing
/// sqrt(rho) W = Q R (thin QR), T = Q R (sy (x) sy) R^T Q^T has the same
/// singular values as the 4x4 matrix R (sy (x) sy) R^T, so every nonzero
/// x_i is an eigenvalue square root of a 4x4 Hermitian PSD matrix. The
/// remaining x_i vanish identically.
class BoundEvaluator {
 public:
  using LocalPair = Eigen::Matrix<Complex, Eigen::Dynamic, 2>;

  BoundEvaluator(const DensityMatrix& rho, std::size_t d_a, std::size_t d_b)
      : d_a_(d_a), d_b_(d_b) {
    if (d_a < 2 || d_b < 2 || d_a * d_b != rho.dim()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "state of dimension " + std::to_string(rho.dim()) +
                      " is not " + std::to_string(d_a) + " x " + std::to_string(d_b));
    }
    sqrt_rho_ = psd_sqrt(rho.matrix());
    sqrt_rho_conj_ = sqrt_rho_.conjugate();
  }

  std::size_t d_a() const { return d_a_; }
  std::size_t d_b() const { return d_b_; }

  /// Columns uA^dag e_k and uA^dag e_l (k < l) of a local unitary's adjoint.
  static LocalPair local_pair(const ComplexMatrix& u, SigmaPair p) {
    LocalPair l(u.rows(), 2);
    l.col(0) = u.row(static_cast<Eigen::Index>(p.k)).adjoint();
    l.col(1) = u.row(static_cast<Eigen::Index>(p.l)).adjoint();
    return l;
  }

  /// X for the sigma pair images LA = [uA^dag e_kA, uA^dag e_lA] and LB.
  double x_term(const LocalPair& l_a, const LocalPair& l_b) const {
    return std::max(x_margin(l_a, l_b), 0.0);
  }

  /// Unclamped 2 max x - sum x; X is its positive part.
  double x_margin(const LocalPair& l_a, const LocalPair& l_b) const {
    Eigen::Matrix<Complex, Eigen::Dynamic, 4> w(sqrt_rho_.rows(), 4);
    for (int p = 0; p < 2; ++p) {
      for (int q = 0; q < 2; ++q) {
        w.col(2 * p + q) = kron_vec(l_a.col(p), l_b.col(q));
      }
    }
    const Eigen::Matrix<Complex, Eigen::Dynamic, 4> sw = sqrt_rho_ * w;
    const Eigen::HouseholderQR<Eigen::Matrix<Complex, Eigen::Dynamic, 4>> qr(sw);
    const Eigen::Matrix4cd r = qr.matrixQR().template topRows<4>().template triangularView<Eigen::Upper>();
    // sy (x) sy is real: antidiagonal (-1, 1, 1, -1)
    Eigen::Matrix4cd ry;
    ry.col(0) = -r.col(3);
    ry.col(1) = r.col(2);
    ry.col(2) = r.col(1);
    ry.col(3) = -r.col(0);
    const Eigen::Matrix4cd k = ry * r.transpose();
    const Eigen::Matrix4cd gram = k * k.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(gram, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
      throw Error(ErrorCode::kConvergenceFailure, "x_term: eigensolver failed");
    }
    return x_margin_from_eigenvalues(solver.eigenvalues(), kReducedEigenFloor);
  }

  /// Reference route on the full space: eigenvalues of T T^dag with
  /// T = sqrt(rho) (SA (x) SB) sqrt(rho)*, for arbitrary local operators.
  double x_term_dense(const ComplexMatrix& s_a, const ComplexMatrix& s_b) const {
    const ComplexMatrix t = sqrt_rho_ * kron(s_a, s_b) * sqrt_rho_conj_;
    const ComplexMatrix gram = t * t.adjoint();
    return x_from_eigenvalues(herm_eigenvalues(gram), kDenseEigenFloor);
  }

 private:
  std::size_t d_a_;
  std::size_t d_b_;
  ComplexMatrix sqrt_rho_;
  ComplexMatrix sqrt_rho_conj_;
};

namespace detail {

inline void require_pair(SigmaPair p, std::size_t d, const char* side) {
  if (p.k >= p.l || p.l >= d) {
    throw Error(ErrorCode::kIndexOutOfRange,
                std::string("invalid sigma indices on subsystem ") + side);
  }
}

}  // namespace detail

/// Single term X_{kA,lA,kB,lB}; dimensions are taken from the unitaries.
inline double bound_x(const DensityMatrix& rho, SigmaPair a, SigmaPair b, const Unitary& u_a,
                      const Unitary& u_b) {
  detail::require_pair(a, u_a.dim(), "A");
  detail::require_pair(b, u_b.dim(), "B");
  const BoundEvaluator eval(rho, u_a.dim(), u_b.dim());
  return eval.x_term(BoundEvaluator::local_pair(u_a.matrix(), a),
                     BoundEvaluator::local_pair(u_b.matrix(), b));
}

struct BoundTerm {
  SigmaPair a;
  SigmaPair b;
  double x = 0.0;
};

struct BoundReport {
  std::vector<BoundTerm> terms;
  double bound_sq = 0.0;
  double bound = 0.0;
  std::optional<double> normalization;

  /// B divided by the normalization constant, when one is set.
  double normalized() const { return normalization ? bound / *normalization : bound; }
};

inline BoundReport bound_b(const BoundEvaluator& eval, const Unitary& u_a, const Unitary& u_b) {
  if (u_a.dim() != eval.d_a() || u_b.dim() != eval.d_b()) {
    throw Error(ErrorCode::kDimensionMismatch, "unitary sizes do not match subsystem dims");
  }
  std::vector<BoundEvaluator::LocalPair> sa;
  std::vector<BoundEvaluator::LocalPair> sb;
  const auto pairs_a = sigma_pairs(eval.d_a());
  const auto pairs_b = sigma_pairs(eval.d_b());
  for (auto p : pairs_a) sa.push_back(BoundEvaluator::local_pair(u_a.matrix(), p));
  for (auto p : pairs_b) sb.push_back(BoundEvaluator::local_pair(u_b.matrix(), p));
  BoundReport report;
  for (std::size_t i = 0; i < pairs_a.size(); ++i) {
    for (std::size_t j = 0; j < pairs_b.size(); ++j) {
      const double x = eval.x_term(sa[i], sb[j]);
      report.terms.push_back({pairs_a[i], pairs_b[j], x});
      report.bound_sq += x * x;
    }
  }
  report.bound = std::sqrt(report.bound_sq);
  if (eval.d_a() == eval.d_b()) report.normalization = max_entangled_m_concurrence(eval.d_a());
  return report;
}

/// B(rho) for local unitaries uA, uB; dA = uA.dim(), dB = uB.dim().
inline BoundReport bound_b(const DensityMatrix& rho, const Unitary& u_a, const Unitary& u_b) {
  return bound_b(BoundEvaluator(rho, u_a.dim(), u_b.dim()), u_a, u_b);
}

inline BoundReport bound_b(const DensityMatrix& rho, std::size_t d_a, std::size_t d_b) {
  return bound_b(rho, Unitary::identity(d_a), Unitary::identity(d_b));
}

// ---------------------------------------------------------------------------
// Parameter packing for the optimization objectives. Packed vectors list
// parameter-matrix entries in row-major order over a fixed position set.

using Positions = std::vector<std::pair<std::size_t, std::size_t>>;

/// All off-diagonal positions of a d x d parameter matrix (d^2 - d entries).
inline Positions off_diagonal_positions(std::size_t d) {
  Positions out;
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      if (r != c) out.emplace_back(r, c);
    }
  }
  return out;
}

/// Positions of build_ucs(., 2) (4d - 8 entries); empty for d = 2.
inline Positions distill_positions(std::size_t d) {
  return d > 2 ? ucs_positions(d, 2) : Positions{};
}

inline ParamMatrix unpack_params(std::span<const double> packed, const Positions& positions,
                                 std::size_t d) {
  if (packed.size() != positions.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "expected " + std::to_string(positions.size()) + " parameters, got " +
                    std::to_string(packed.size()));
  }
  ParamMatrix p(d);
  for (std::size_t i = 0; i < positions.size(); ++i) {
    p(positions[i].first, positions[i].second) = packed[i];
  }
  return p;
}

/// -B^2(rho; uA, uB) with uA^dag = build_unitary(A) and uB^dag =
/// build_unitary(B), A and B having zero diagonal. The packed argument is
/// the concatenation of the d_a^2 - d_a entries of A and d_b^2 - d_b of B.
class BoptObjective {
 public:
  BoptObjective(const DensityMatrix& rho, std::size_t d_a, std::size_t d_b)
      : eval_(rho, d_a, d_b),
        pos_a_(off_diagonal_positions(d_a)),
        pos_b_(off_diagonal_positions(d_b)) {}

  std::size_t dim() const { return pos_a_.size() + pos_b_.size(); }
  std::size_t dim_a() const { return pos_a_.size(); }

  std::pair<Unitary, Unitary> unitaries(std::span<const double> x) const {
    if (x.size() != dim()) {
      throw Error(ErrorCode::kLengthMismatch, "expected " + std::to_string(dim()) +
                                                  " parameters, got " +
                                                  std::to_string(x.size()));
    }
    const auto a = unpack_params(x.first(pos_a_.size()), pos_a_, eval_.d_a());
    const auto b = unpack_params(x.subspan(pos_a_.size()), pos_b_, eval_.d_b());
    return {build_unitary(a).adjoint(), build_unitary(b).adjoint()};
  }

  double operator()(std::span<const double> x) const {
    const auto [u_a, u_b] = unitaries(x);
    return -bound_b(eval_, u_a, u_b).bound_sq;
  }

  /// Equals operator() wherever B > 0. Where every term is clamped to zero
  /// it returns minus the largest unclamped margin, which is >= 0, so the
  /// search can climb out of regions where -B^2 is flat.
  double search_value(std::span<const double> x) const {
    const auto [u_a, u_b] = unitaries(x);
    std::vector<BoundEvaluator::LocalPair> sb;
    for (auto p : sigma_pairs(eval_.d_b())) {
      sb.push_back(BoundEvaluator::local_pair(u_b.matrix(), p));
    }
    double sum_sq = 0.0;
    double best_margin = -std::numeric_limits<double>::infinity();
    for (auto p : sigma_pairs(eval_.d_a())) {
      const auto la = BoundEvaluator::local_pair(u_a.matrix(), p);
      for (const auto& lb : sb) {
        const double g = eval_.x_margin(la, lb);
        if (g > 0.0) sum_sq += g * g;
        best_margin = std::max(best_margin, g);
      }
    }
    return sum_sq > 0.0 ? -sum_sq : -best_margin;
  }

  const BoundEvaluator& evaluator() const { return eval_; }

 private:
  BoundEvaluator eval_;
  Positions pos_a_;
  Positions pos_b_;
};

inline double bopt_objective(const DensityMatrix& rho, std::size_t d_a, std::size_t d_b,
                             std::span<const double> params_a,
                             std::span<const double> params_b) {
  const BoptObjective obj(rho, d_a, d_b);
  if (params_a.size() != obj.dim_a() || params_a.size() + params_b.size() != obj.dim()) {
    throw Error(ErrorCode::kLengthMismatch, "bopt_objective parameter lengths");
  }
  std::vector<double> x(params_a.begin(), params_a.end());
  x.insert(x.end(), params_b.begin(), params_b.end());
  return obj(x);
}

/// -X^2_{1,2,1,2} (first two basis vectors on each side) with
/// uA^dag = build_ucs(A, 2), uB^dag = build_ucs(B, 2). Each side has
/// 4d - 8 parameters; for d = 2 the side contributes none and uses identity.
class DistillObjective {
 public:
  DistillObjective(const DensityMatrix& rho, std::size_t d_a, std::size_t d_b)
      : eval_(rho, d_a, d_b), pos_a_(distill_positions(d_a)), pos_b_(distill_positions(d_b)) {}

  std::size_t dim() const { return pos_a_.size() + pos_b_.size(); }
  std::size_t dim_a() const { return pos_a_.size(); }

  std::pair<Unitary, Unitary> unitaries(std::span<const double> x) const {
    if (x.size() != dim()) {
      throw Error(ErrorCode::kLengthMismatch, "expected " + std::to_string(dim()) +
                                                  " parameters, got " +
                                                  std::to_string(x.size()));
    }
    return {side(x.first(pos_a_.size()), pos_a_, eval_.d_a()),
            side(x.subspan(pos_a_.size()), pos_b_, eval_.d_b())};
  }

  double operator()(std::span<const double> x) const {
    const double g = margin(x);
    return g > 0.0 ? -g * g : 0.0;
  }

  /// As BoptObjective::search_value: -X^2 where X > 0, else -margin >= 0.
  double search_value(std::span<const double> x) const {
    const double g = margin(x);
    return g > 0.0 ? -g * g : -g;
  }

 private:
  double margin(std::span<const double> x) const {
    const auto [u_a, u_b] = unitaries(x);
    return eval_.x_margin(BoundEvaluator::local_pair(u_a.matrix(), {0, 1}),
                          BoundEvaluator::local_pair(u_b.matrix(), {0, 1}));
  }

  static Unitary side(std::span<const double> x, const Positions& pos, std::size_t d) {
    if (d == 2) return Unitary::identity(2);
    return build_ucs(unpack_params(x, pos, d), 2).adjoint();
  }

  BoundEvaluator eval_;
  Positions pos_a_;
  Positions pos_b_;
};

inline double distill_objective(const DensityMatrix& rho, std::size_t d_a, std::size_t d_b,
                                std::span<const double> params_a,
                                std::span<const double> params_b) {
  const DistillObjective obj(rho, d_a, d_b);
  if (params_a.size() != obj.dim_a() || params_a.size() + params_b.size() != obj.dim()) {
    throw Error(ErrorCode::kLengthMismatch, "distill_objective parameter lengths");
  }
  std::vector<double> x(params_a.begin(), params_a.end());
  x.insert(x.end(), params_b.begin(), params_b.end());
  return obj(x);
}

inline constexpr double kNptThreshold = -1e-10;

/// Smallest eigenvalue of the partial transpose on subsystem `which`.
inline double ppt_min_eigenvalue(const ComplexMatrix& rho, std::span<const std::size_t> dims,
                                 std::size_t which) {
  return herm_eigenvalues(partial_transpose(rho, dims, which))(0);
}

inline double ppt_min_eigenvalue(const DensityMatrix& rho, std::span<const std::size_t> dims,
                                 std::size_t which) {
  return ppt_min_eigenvalue(rho.matrix(), dims, which);
}

inline bool is_npt(double ppt_min_eig) { return ppt_min_eig < kNptThreshold; }

// ---------------------------------------------------------------------------
// Multipartite systems.

struct Bipartition {
  std::vector<std::size_t> alpha;  // 0-based subsystem indices, ascending
  std::vector<std::size_t> beta;
  std::size_t d_alpha = 1;
  std::size_t d_beta = 1;

  /// Subsystem order placing alpha before beta.
  std::vector<std::size_t> permutation() const {
    std::vector<std::size_t> perm = alpha;
    perm.insert(perm.end(), beta.begin(), beta.end());
    return perm;
  }
};

/// The 2^{n-1} - 1 unordered splits of n >= 2 subsystems. Each split is
/// listed once with alpha the smaller side (ties: the side holding
/// subsystem 0), ordered by |alpha| and then by alpha's bitmask.
inline std::vector<Bipartition> enumerate_bipartitions(std::span<const std::size_t> dims) {
  const std::size_t n = dims.size();
  if (n < 2 || n > 20) {
    throw Error(ErrorCode::kDimensionMismatch, "bipartitions need 2 <= n <= 20 subsystems");
  }
  std::vector<std::pair<std::size_t, unsigned long>> keys;
  const unsigned long full = (1UL << n) - 1;
  for (unsigned long mask = 1; mask < full; ++mask) {
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    const bool keep = 2 * size < n || (2 * size == n && (mask & 1UL));
    if (keep) keys.emplace_back(size, mask);
  }
  std::sort(keys.begin(), keys.end());
  std::vector<Bipartition> out;
  for (auto [size, mask] : keys) {
    Bipartition b;
    for (std::size_t j = 0; j < n; ++j) {
      if (mask & (1UL << j)) {
        b.alpha.push_back(j);
        b.d_alpha *= dims[j];
      } else {
        b.beta.push_back(j);
        b.d_beta *= dims[j];
      }
    }
    out.push_back(std::move(b));
  }
  return out;
}

struct MultipartiteBound {
  std::vector<Bipartition> bipartitions;
  std::vector<BoundReport> per_bipartition;
  double bound_sq = 0.0;
  double bound = 0.0;
};

/// Sum over all bipartitions of the bipartite B^2, evaluated on the state
/// with subsystems reordered to (alpha, beta). `unitaries[i]` is the local
/// pair for the i-th bipartition of enumerate_bipartitions; pass an empty
/// span for identities.
inline MultipartiteBound multipartite_bound_b(
    const DensityMatrix& rho, std::span<const std::size_t> dims,
    std::span<const std::pair<Unitary, Unitary>> unitaries = {}) {
  MultipartiteBound result;
  result.bipartitions = enumerate_bipartitions(dims);
  if (!unitaries.empty() && unitaries.size() != result.bipartitions.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "one unitary pair per bipartition required");
  }
  for (std::size_t i = 0; i < result.bipartitions.size(); ++i) {
    const auto& bp = result.bipartitions[i];
    const auto perm = bp.permutation();
    const auto permuted =
        DensityMatrix::assume_valid(permute_subsystems(rho.matrix(), dims, perm), rho.rank_bound());
    BoundReport r = unitaries.empty()
                        ? bound_b(permuted, bp.d_alpha, bp.d_beta)
                        : bound_b(permuted, unitaries[i].first, unitaries[i].second);
    result.bound_sq += r.bound_sq;
    result.per_bipartition.push_back(std::move(r));
  }
  result.bound = std::sqrt(result.bound_sq);
  return result;
}

inline constexpr std::size_t kDefaultCopyDimCap = 256;

/// rho^{(x) n} for a bipartite rho on dA x dB, regrouped as
/// (A_1 ... A_n) | (B_1 ... B_n), i.e. a state on dA^n x dB^n.
inline DensityMatrix n_copy_state(const DensityMatrix& rho, std::size_t d_a, std::size_t d_b,
                                  std::size_t copies, std::size_t dim_cap = kDefaultCopyDimCap) {
  if (copies < 1) throw Error(ErrorCode::kInvalidConfig, "copies must be >= 1");
  if (d_a * d_b != rho.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "dims do not match state");
  }
  double total = 1.0;
  for (std::size_t i = 0; i < copies; ++i) total *= static_cast<double>(rho.dim());
  if (total > static_cast<double>(dim_cap)) {
    throw Error(ErrorCode::kDimensionTooLarge,
                "n-copy dimension " + std::to_string(static_cast<long long>(total)) +
                    " exceeds cap " + std::to_string(dim_cap));
  }
  if (copies == 1) return rho;
  ComplexMatrix m = rho.matrix();
  std::vector<std::size_t> dims = {d_a, d_b};
  for (std::size_t i = 1; i < copies; ++i) {
    m = kron(m, rho.matrix());
    dims.push_back(d_a);
    dims.push_back(d_b);
  }
  // copy i occupies subsystems (2i, 2i+1); move all A factors first
  std::vector<std::size_t> perm;
  for (std::size_t i = 0; i < copies; ++i) perm.push_back(2 * i);
  for (std::size_t i = 0; i < copies; ++i) perm.push_back(2 * i + 1);
  std::size_t rank = 1;
  for (std::size_t i = 0; i < copies; ++i) rank *= rho.rank_bound();
  return DensityMatrix::assume_valid(permute_subsystems(m, dims, perm),
                                     std::min(rank, static_cast<std::size_t>(total)));
}

}  // namespace uparam
