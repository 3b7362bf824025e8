#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "tiling/elimination.hpp"
#include "tiling/rational.hpp"

namespace tiling {

struct Term {
  int var;
  Rational coeff;
};

/// sum(coeff * var) = rhs, with a short tag naming where it came from.
struct Equation {
  std::vector<Term> terms;
  Rational rhs;
  std::string origin;
};

/// x = offset + basis * y over the free variables y of a system.
struct AffineParametrization {
  std::vector<int> free;
  Eigen::Matrix<long double, Eigen::Dynamic, 1> offset;
  Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> basis;
};

/// Exact linear equality system with per-variable bounds.
///
/// Runs on 64-bit rationals and transparently rebuilds itself over
/// arbitrary-precision rationals the first time an operation overflows, so
/// every verdict is exact. Once inconsistent it stays inconsistent.
class LinearSystem {
 public:
  LinearSystem(std::vector<std::string> names, std::vector<VariableBound> bounds);

  int variables() const { return static_cast<int>(names_.size()); }
  const std::string& name(int var) const { return names_[var]; }
  const VariableBound& bound(int var) const { return bounds_[var]; }
  const std::vector<Equation>& equations() const { return equations_; }

  RowVerdict add_equation(const Equation& e);
  void tighten(int var, const VariableBound& b);

  bool consistent() const { return consistent_; }
  /// Exact: does the solution set meet the (partly open) bound box?
  bool feasible_with_bounds() const;

  int rank() const;
  int free_dimension() const { return variables() - rank(); }
  std::optional<Rational> pinned_value(int var) const;
  bool is_pinned(int var) const { return pinned_value(var).has_value(); }
  AffineParametrization parametrization() const;
  bool promoted() const { return ech_.index() == 1; }

  /// Human-readable listing of the rows and bounds.
  void dump(std::ostream& os) const;

 private:
  void promote();

  std::vector<std::string> names_;
  std::vector<VariableBound> bounds_;
  std::vector<Equation> equations_;
  std::variant<Echelon<Rational>, Echelon<BigRational>> ech_;
  bool consistent_ = true;
  mutable std::optional<bool> feasible_cache_;
};

std::string format_equation(const Equation& e, const std::vector<std::string>& names);

}  // namespace tiling
