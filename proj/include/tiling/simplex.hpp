#pragma once

#include <utility>
#include <vector>

#include <Eigen/Core>

#include "tiling/rational.hpp"

namespace tiling {

enum class LpStatus { Optimal, Infeasible, Unbounded };

template <class Scalar>
struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Scalar value{};
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x;
};

/// Dense two-phase simplex for  max c.x  s.t.  A x <= b, x >= 0.
///
/// Bland's rule throughout, so it terminates on degenerate problems. With an
/// exact Scalar every comparison is exact; floating scalars use the tolerance
/// in ScalarTraits.
template <class Scalar>
class Simplex {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Simplex(const Matrix& A, const Vector& b, const Vector& c)
      : m_(static_cast<int>(b.size())),
        n_(static_cast<int>(c.size())),
        basis_(m_),
        nonbasis_(n_ + 1),
        D_(m_ + 2, n_ + 2) {
    D_.setZero();
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) D_(i, j) = A(i, j);
      basis_[i] = n_ + i;
      D_(i, n_) = Scalar(-1);
      D_(i, n_ + 1) = b(i);
    }
    for (int j = 0; j < n_; ++j) {
      nonbasis_[j] = j;
      D_(m_, j) = -c(j);
    }
    nonbasis_[n_] = -1;
    D_(m_ + 1, n_) = Scalar(1);
  }

  LpResult<Scalar> solve() {
    LpResult<Scalar> res;
    int r = 0;
    for (int i = 1; i < m_; ++i)
      if (D_(i, n_ + 1) < D_(r, n_ + 1)) r = i;
    if (m_ > 0 && sign(D_(r, n_ + 1)) < 0) {
      pivot(r, n_);
      if (!run(1) || sign(D_(m_ + 1, n_ + 1)) < 0) {
        res.status = LpStatus::Infeasible;
        return res;
      }
      for (int i = 0; i < m_; ++i) {
        if (basis_[i] != -1) continue;
        int s = -1;
        for (int j = 0; j <= n_; ++j)
          if (s == -1 || D_(i, j) < D_(i, s) || (D_(i, j) == D_(i, s) && nonbasis_[j] < nonbasis_[s]))
            s = j;
        pivot(i, s);
      }
    }
    if (!run(2)) {
      res.status = LpStatus::Unbounded;
      return res;
    }
    res.status = LpStatus::Optimal;
    res.x.resize(n_);
    res.x.setZero();
    for (int i = 0; i < m_; ++i)
      if (basis_[i] >= 0 && basis_[i] < n_) res.x(basis_[i]) = D_(i, n_ + 1);
    res.value = D_(m_, n_ + 1);
    return res;
  }

 private:
  static int sign(const Scalar& x) { return ScalarTraits<Scalar>::sign(x); }

  void pivot(int r, int s) {
    const Scalar inv = Scalar(1) / D_(r, s);
    for (int i = 0; i < m_ + 2; ++i) {
      if (i == r || is_zero(D_(i, s))) continue;
      const Scalar f = D_(i, s) * inv;
      for (int j = 0; j < n_ + 2; ++j)
        if (j != s && !is_zero(D_(r, j))) D_(i, j) -= D_(r, j) * f;
      D_(i, s) = -f;
    }
    for (int j = 0; j < n_ + 2; ++j)
      if (j != s) D_(r, j) *= inv;
    D_(r, s) = inv;
    std::swap(basis_[r], nonbasis_[s]);
  }

  bool run(int phase) {
    const int x = phase == 1 ? m_ + 1 : m_;
    while (true) {
      // Bland: lowest-index improving column.
      int s = -1;
      for (int j = 0; j <= n_; ++j) {
        if (phase == 2 && nonbasis_[j] == -1) continue;
        if (sign(D_(x, j)) < 0 && (s == -1 || nonbasis_[j] < nonbasis_[s])) s = j;
      }
      if (s == -1) return true;
      int r = -1;
      Scalar best{};
      for (int i = 0; i < m_; ++i) {
        if (sign(D_(i, s)) <= 0) continue;
        Scalar ratio = D_(i, n_ + 1) / D_(i, s);
        if (r == -1 || ratio < best || (ratio == best && basis_[i] < basis_[r])) {
          r = i;
          best = ratio;
        }
      }
      if (r == -1) return false;
      pivot(r, s);
    }
  }

  int m_, n_;
  std::vector<int> basis_, nonbasis_;
  Matrix D_;
};

template <class Scalar>
LpResult<Scalar> maximize(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& A,
                          const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& b,
                          const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& c) {
  return Simplex<Scalar>(A, b, c).solve();
}

}  // namespace tiling
