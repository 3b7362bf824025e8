#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "tiling/rational.hpp"
#include "tiling/simplex.hpp"

namespace tiling {

/// Lower bound always finite; upper bound optional. Open ends are strict.
struct VariableBound {
  Rational lo{0};
  std::optional<Rational> hi;
  bool lo_open = true;
  bool hi_open = true;

  static VariableBound positive() { return {Rational(0), std::nullopt, true, true}; }
};

VariableBound intersect(const VariableBound& a, const VariableBound& b);

enum class RowVerdict { Independent, Redundant, Inconsistent };

/// Incrementally maintained reduced row echelon form of  M x = rhs.
/// Row i has a unit pivot in column pivot(i) and zeros in every other pivot
/// column, so basic variables read off directly in terms of free ones.
template <class Scalar>
class Echelon {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using RowVector = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  explicit Echelon(int variables)
      : n_(variables), rows_(variables, variables + 1), row_of_(variables, -1) {
    rows_.setZero();
  }

  int variables() const { return n_; }
  int rank() const { return rank_; }
  int pivot(int i) const { return pivots_[i]; }
  int row_of(int var) const { return row_of_[var]; }
  bool is_free(int var) const { return row_of_[var] < 0; }
  const Scalar& coefficient(int i, int var) const { return rows_(i, var); }
  const Scalar& constant(int i) const { return rows_(i, n_); }

  /// `row` has n+1 entries, the last being the right-hand side.
  RowVerdict add(RowVector row) {
    for (int i = 0; i < rank_; ++i) {
      const int p = pivots_[i];
      if (!is_zero(row(p))) row -= row(p) * rows_.row(i);
    }
    int c = -1;
    for (int j = 0; j < n_ && c < 0; ++j)
      if (!is_zero(row(j))) c = j;
    if (c < 0) return is_zero(row(n_)) ? RowVerdict::Redundant : RowVerdict::Inconsistent;
    row /= Scalar(row(c));
    for (int i = 0; i < rank_; ++i)
      if (!is_zero(rows_(i, c))) rows_.row(i) -= Scalar(rows_(i, c)) * row;
    rows_.row(rank_) = row;
    row_of_[c] = rank_;
    pivots_.push_back(c);
    ++rank_;
    return RowVerdict::Independent;
  }

  /// Value of var when it does not depend on any free variable.
  std::optional<Scalar> pinned(int var) const {
    const int i = row_of_[var];
    if (i < 0) return std::nullopt;
    for (int j = 0; j < n_; ++j)
      if (j != var && !is_zero(rows_(i, j))) return std::nullopt;
    return rows_(i, n_);
  }

  std::vector<int> free_variables() const {
    std::vector<int> f;
    for (int j = 0; j < n_; ++j)
      if (row_of_[j] < 0) f.push_back(j);
    return f;
  }

 private:
  int n_;
  int rank_ = 0;
  Matrix rows_;
  std::vector<int> pivots_;
  std::vector<int> row_of_;
};

/// Does the affine solution set of `ech` meet the box given by `bounds`
/// (strict where the bound is open)? Decided by one LP maximizing a common
/// slack delta on every strict inequality.
template <class Scalar>
bool bounded_feasible(const Echelon<Scalar>& ech, const std::vector<VariableBound>& bounds) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const int n = ech.variables();
  const std::vector<int> free = ech.free_variables();
  const int f = static_cast<int>(free.size());
  std::vector<int> free_pos(n, -1);
  for (int j = 0; j < f; ++j) free_pos[free[j]] = j;
  auto conv = [](const Rational& r) { return ScalarTraits<Scalar>::from_rational(r); };

  // LP variables: z_j = x_free[j] - lo (f of them), then delta.
  std::vector<std::vector<Scalar>> rows;
  std::vector<Scalar> rhs;
  bool strict = false;
  auto push = [&](std::vector<Scalar> coeffs, Scalar bound) {
    rows.push_back(std::move(coeffs));
    rhs.push_back(std::move(bound));
  };

  for (int j = 0; j < f; ++j) {
    const VariableBound& b = bounds[free[j]];
    if (b.lo_open) {
      std::vector<Scalar> r(f + 1, Scalar(0));
      r[j] = Scalar(-1);
      r[f] = Scalar(1);
      push(std::move(r), Scalar(0));
      strict = true;
    }
    if (b.hi) {
      std::vector<Scalar> r(f + 1, Scalar(0));
      r[j] = Scalar(1);
      if (b.hi_open) {
        r[f] = Scalar(1);
        strict = true;
      }
      push(std::move(r), conv(*b.hi - b.lo));
    }
  }
  for (int i = 0; i < ech.rank(); ++i) {
    const int var = ech.pivot(i);
    const VariableBound& b = bounds[var];
    // x_var = shifted - sum N_j z_j
    Scalar shifted = ech.constant(i);
    std::vector<Scalar> coeff(f, Scalar(0));
    bool constant_only = true;
    for (int j = 0; j < f; ++j) {
      const Scalar& c = ech.coefficient(i, free[j]);
      if (is_zero(c)) continue;
      constant_only = false;
      coeff[j] = c;
      shifted -= c * conv(bounds[free[j]].lo);
    }
    if (constant_only) {
      // pinned; check directly
      const Scalar lo = conv(b.lo);
      const int s = ScalarTraits<Scalar>::sign(Scalar(shifted - lo));
      if (s < 0 || (s == 0 && b.lo_open)) return false;
      if (b.hi) {
        const int t = ScalarTraits<Scalar>::sign(Scalar(conv(*b.hi) - shifted));
        if (t < 0 || (t == 0 && b.hi_open)) return false;
      }
      continue;
    }
    {
      std::vector<Scalar> r(f + 1, Scalar(0));
      for (int j = 0; j < f; ++j) r[j] = coeff[j];
      if (b.lo_open) {
        r[f] = Scalar(1);
        strict = true;
      }
      push(std::move(r), Scalar(shifted - conv(b.lo)));
    }
    if (b.hi) {
      std::vector<Scalar> r(f + 1, Scalar(0));
      for (int j = 0; j < f; ++j) r[j] = -coeff[j];
      if (b.hi_open) {
        r[f] = Scalar(1);
        strict = true;
      }
      push(std::move(r), Scalar(conv(*b.hi) - shifted));
    }
  }
  if (rows.empty()) return true;
  {
    std::vector<Scalar> r(f + 1, Scalar(0));
    r[f] = Scalar(1);
    push(std::move(r), Scalar(1));
  }
  const int m = static_cast<int>(rows.size());
  Matrix A(m, f + 1);
  Vector b(m), c(f + 1);
  c.setZero();
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j <= f; ++j) A(i, j) = rows[i][j];
    b(i) = rhs[i];
  }
  c(f) = Scalar(1);
  const LpResult<Scalar> res = maximize<Scalar>(A, b, c);
  if (res.status != LpStatus::Optimal) return res.status == LpStatus::Unbounded;
  return !strict || ScalarTraits<Scalar>::sign(res.value) > 0;
}

}  // namespace tiling
