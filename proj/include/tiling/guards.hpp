#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tiling/equations.hpp"
#include "tiling/linear_system.hpp"
#include "tiling/shapes.hpp"

namespace tiling {

/// x * sqrt(root) with root in {1, 2, 3}; the exact value of cos or sin at a
/// rational multiple of pi whose denominator divides 12, when it has this form.
struct Surd {
  Rational coeff;
  int root = 1;
};
std::optional<Surd> exact_cos(const Rational& turns_of_pi);
std::optional<Surd> exact_sin(const Rational& turns_of_pi);

/// One closure relation sum_j c_j t_j = 0 of the model polygon with known
/// angles. `exact` holds the same row over the layout's side variables when
/// every nonzero c_j is a rational multiple of one common surd.
struct ClosureRow {
  std::vector<long double> coeff;
  std::optional<Equation> exact;
};

/// The two closure rows (x and y components) of a polygon p_1..p_k whose
/// interior angles (units of pi) are `angles`, side t_j running p_j->p_{j+1}.
std::vector<ClosureRow> closure_rows(const std::vector<Rational>& angles);

/// Two right angles, one acute, one obtuse: the acute angle can only be
/// pi/3 or pi/4 once some tile puts it at a corner of P.
bool two_right_quadrilateral(const TileShape& shape);
std::vector<Rational> aror_branch_values();

/// For aror with its acute angle pi/4 and area A:  sqrt(2A) < t1, t4 <= 2 sqrt(A).
struct AriorBounds {
  long double lo = 0, hi = 0;  // numeric values of sqrt(2A), 2 sqrt(A)
  VariableBound rational;      // rational outer relaxation: lo' < t <= hi'
};
AriorBounds arior_bounds(const Rational& area);

/// arro with acute angle alpha at p1: t1 = t3 + t4 cos(alpha), t2 = t4 sin(alpha).
std::vector<ClosureRow> arro_relations(const Rational& alpha);

struct GuardConfig {
  long double tau = 1e-9L;
  int max_dim = 2;
};

struct GuardResult {
  bool discard = false;
  std::string reason;
};

/// Numeric checks for a model polygon whose angles are all pinned: the
/// closure rows must be satisfiable on the bounded length space, and for
/// quadrilaterals the area  t1 t2 sin a2 + t3 t4 sin a4 = 2r/n  must be
/// attainable. Only discards when every point misses by more than tau; when
/// the relevant solution space has dimension above max_dim the area check is
/// skipped.
GuardResult nonlinear_guard(const LinearSystem& lengths, const LengthLayout& layout,
                            const std::vector<Rational>& angles, int tiles, const GuardConfig& config);

/// Area of the model quadrilateral from its sides and angles.
long double quadrilateral_double_area(const std::vector<long double>& t, const std::vector<Rational>& angles,
                                      bool second_form = false);

}  // namespace tiling
