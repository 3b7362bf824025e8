#include "tiling/linear_system.hpp"

#include <ostream>
#include <sstream>

namespace tiling {

VariableBound intersect(const VariableBound& a, const VariableBound& b) {
  VariableBound r = a;
  if (b.lo > a.lo) {
    r.lo = b.lo;
    r.lo_open = b.lo_open;
  } else if (b.lo == a.lo) {
    r.lo_open = a.lo_open || b.lo_open;
  }
  if (b.hi) {
    if (!a.hi || *b.hi < *a.hi) {
      r.hi = b.hi;
      r.hi_open = b.hi_open;
    } else if (*b.hi == *a.hi) {
      r.hi_open = a.hi_open || b.hi_open;
    }
  }
  return r;
}

namespace {

template <class Scalar>
typename Echelon<Scalar>::RowVector dense_row(const Equation& e, int n) {
  typename Echelon<Scalar>::RowVector row(n + 1);
  row.setZero();
  for (const Term& t : e.terms) row(t.var) += ScalarTraits<Scalar>::from_rational(t.coeff);
  row(n) = ScalarTraits<Scalar>::from_rational(e.rhs);
  return row;
}

std::optional<Rational> to_rational(const Rational& x) { return x; }

std::optional<Rational> to_rational(const BigRational& x) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  const auto n = numerator(x), d = denominator(x);
  if (abs(n) > INT64_MAX || d > INT64_MAX) return std::nullopt;
  return Rational(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
}

}  // namespace

LinearSystem::LinearSystem(std::vector<std::string> names, std::vector<VariableBound> bounds)
    : names_(std::move(names)),
      bounds_(std::move(bounds)),
      ech_(std::in_place_index<0>, static_cast<int>(names_.size())) {}

void LinearSystem::promote() {
  Echelon<BigRational> big(variables());
  for (const Equation& e : equations_) big.add(dense_row<BigRational>(e, variables()));
  ech_.emplace<1>(std::move(big));
}

RowVerdict LinearSystem::add_equation(const Equation& e) {
  if (!consistent_) return RowVerdict::Inconsistent;
  RowVerdict v;
  auto add_to = [&](auto& ech) {
    using Scalar = std::decay_t<decltype(ech.coefficient(0, 0))>;
    return ech.add(dense_row<Scalar>(e, variables()));
  };
  if (ech_.index() == 0) {
    // Work on a copy so an overflow leaves the fast state untouched.
    Echelon<Rational> trial = std::get<0>(ech_);
    try {
      v = add_to(trial);
      std::get<0>(ech_) = std::move(trial);
    } catch (const RationalOverflow&) {
      promote();
      v = add_to(std::get<1>(ech_));
    }
  } else {
    v = add_to(std::get<1>(ech_));
  }
  if (v == RowVerdict::Inconsistent) consistent_ = false;
  if (v != RowVerdict::Redundant) {
    equations_.push_back(e);
    feasible_cache_.reset();
  }
  return v;
}

void LinearSystem::tighten(int var, const VariableBound& b) {
  bounds_[var] = intersect(bounds_[var], b);
  feasible_cache_.reset();
}

bool LinearSystem::feasible_with_bounds() const {
  if (!consistent_) return false;
  if (feasible_cache_) return *feasible_cache_;
  bool ok;
  if (ech_.index() == 0) {
    try {
      ok = bounded_feasible(std::get<0>(ech_), bounds_);
    } catch (const RationalOverflow&) {
      Echelon<BigRational> big(variables());
      for (const Equation& e : equations_) big.add(dense_row<BigRational>(e, variables()));
      ok = bounded_feasible(big, bounds_);
    }
  } else {
    ok = bounded_feasible(std::get<1>(ech_), bounds_);
  }
  feasible_cache_ = ok;
  return ok;
}

int LinearSystem::rank() const {
  return std::visit([](const auto& e) { return e.rank(); }, ech_);
}

std::optional<Rational> LinearSystem::pinned_value(int var) const {
  const VariableBound& b = bounds_[var];
  if (b.hi && *b.hi == b.lo && !b.lo_open && !b.hi_open) return b.lo;
  return std::visit(
      [var](const auto& e) -> std::optional<Rational> {
        auto p = e.pinned(var);
        if (!p) return std::nullopt;
        return to_rational(*p);
      },
      ech_);
}

AffineParametrization LinearSystem::parametrization() const {
  return std::visit(
      [this](const auto& e) {
        using Scalar = std::decay_t<decltype(e.coefficient(0, 0))>;
        AffineParametrization p;
        p.free = e.free_variables();
        const int n = variables(), f = static_cast<int>(p.free.size());
        p.offset = Eigen::Matrix<long double, Eigen::Dynamic, 1>::Zero(n);
        p.basis = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, f);
        for (int j = 0; j < f; ++j) p.basis(p.free[j], j) = 1;
        for (int i = 0; i < e.rank(); ++i) {
          const int var = e.pivot(i);
          p.offset(var) = ScalarTraits<Scalar>::to_long_double(e.constant(i));
          for (int j = 0; j < f; ++j)
            p.basis(var, j) = -ScalarTraits<Scalar>::to_long_double(e.coefficient(i, p.free[j]));
        }
        return p;
      },
      ech_);
}

std::string format_equation(const Equation& e, const std::vector<std::string>& names) {
  std::ostringstream os;
  bool first = true;
  for (const Term& t : e.terms) {
    if (t.coeff.is_zero()) continue;
    Rational c = t.coeff;
    if (!first) os << (c.sign() < 0 ? " - " : " + ");
    else if (c.sign() < 0) os << "-";
    c = abs(c);
    if (c != Rational(1)) os << c << "*";
    os << names[t.var];
    first = false;
  }
  if (first) os << "0";
  os << " = " << e.rhs;
  if (!e.origin.empty()) os << "    [" << e.origin << "]";
  return os.str();
}

void LinearSystem::dump(std::ostream& os) const {
  for (const Equation& e : equations_) os << format_equation(e, names_) << "\n";
  for (int v = 0; v < variables(); ++v) {
    const VariableBound& b = bounds_[v];
    os << b.lo << (b.lo_open ? " < " : " <= ") << names_[v];
    if (b.hi) os << (b.hi_open ? " < " : " <= ") << *b.hi;
    os << "\n";
  }
  if (!consistent_) os << "(inconsistent)\n";
}

}  // namespace tiling
