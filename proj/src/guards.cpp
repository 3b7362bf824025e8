#include "tiling/guards.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "tiling/simplex.hpp"

namespace tiling {

namespace {

using LD = long double;
using VecLD = Eigen::Matrix<LD, Eigen::Dynamic, 1>;
using MatLD = Eigen::Matrix<LD, Eigen::Dynamic, Eigen::Dynamic>;

/// theta reduced into [0, 2)
Rational reduce(Rational theta) {
  while (theta < Rational(0)) theta += Rational(2);
  while (!(theta < Rational(2))) theta -= Rational(2);
  return theta;
}

LD cos_pi(const Rational& x) { return std::cos(std::numbers::pi_v<LD> * x.to_long_double()); }
LD sin_pi(const Rational& x) { return std::sin(std::numbers::pi_v<LD> * x.to_long_double()); }

/// The length space {x = offset + basis y, bounds} written over z = y - lo >= 0,
/// with strict bounds relaxed to closed ones.
struct NumericPolytope {
  NumericPolytope(const LinearSystem& sys) : p(sys.parametrization()) {
    const int n = sys.variables(), f = static_cast<int>(p.free.size());
    lo_free = VecLD::Zero(f);
    for (int j = 0; j < f; ++j) lo_free(j) = sys.bound(p.free[j]).lo.to_long_double();
    base = p.offset + p.basis * lo_free;  // x at z = 0
    const LD slack = 1e-12L;
    for (int v = 0; v < n; ++v) {
      const VariableBound& b = sys.bound(v);
      const bool free = std::find(p.free.begin(), p.free.end(), v) != p.free.end();
      if (!free) {
        rows.push_back(-p.basis.row(v).transpose());
        rhs.push_back(base(v) - b.lo.to_long_double() + slack);
      }
      if (b.hi) {
        rows.push_back(p.basis.row(v).transpose());
        rhs.push_back(b.hi->to_long_double() - base(v) + slack);
      }
    }
  }

  int dim() const { return static_cast<int>(p.free.size()); }

  AffineParametrization p;
  VecLD lo_free, base;
  std::vector<VecLD> rows;
  std::vector<LD> rhs;
};

LpResult<LD> solve(const std::vector<VecLD>& rows, const std::vector<LD>& rhs, const VecLD& c) {
  const int m = static_cast<int>(rows.size()), n = static_cast<int>(c.size());
  MatLD A(m, n);
  VecLD b(m);
  for (int i = 0; i < m; ++i) {
    A.row(i) = rows[i].transpose();
    b(i) = rhs[i];
  }
  return maximize<LD>(A, b, c);
}

}  // namespace

std::optional<Surd> exact_cos(const Rational& turns) {
  Rational t = reduce(turns);
  if (Rational(1) < t) t = Rational(2) - t;
  struct Entry {
    Rational at;
    Rational coeff;
    int root;
  };
  static const std::vector<Entry> table{
      {Rational(0), Rational(1), 1},      {Rational(1, 6), Rational(1, 2), 3}, {Rational(1, 4), Rational(1, 2), 2},
      {Rational(1, 3), Rational(1, 2), 1}, {Rational(1, 2), Rational(0), 1},    {Rational(2, 3), Rational(-1, 2), 1},
      {Rational(3, 4), Rational(-1, 2), 2}, {Rational(5, 6), Rational(-1, 2), 3}, {Rational(1), Rational(-1), 1}};
  for (const auto& e : table)
    if (e.at == t) return Surd{e.coeff, e.root};
  return std::nullopt;
}

std::optional<Surd> exact_sin(const Rational& turns) { return exact_cos(Rational(1, 2) - turns); }

std::vector<ClosureRow> closure_rows(const std::vector<Rational>& angles) {
  const int k = static_cast<int>(angles.size());
  std::vector<Rational> dir(k);
  dir[0] = Rational(0);
  for (int j = 1; j < k; ++j) dir[j] = reduce(dir[j - 1] + Rational(1) - angles[j]);
  std::vector<ClosureRow> out(2);
  for (int c = 0; c < 2; ++c) {
    ClosureRow& row = out[c];
    Equation e;
    int root = 0;
    bool exact = true;
    for (int j = 0; j < k; ++j) {
      row.coeff.push_back(c == 0 ? cos_pi(dir[j]) : sin_pi(dir[j]));
      const auto s = c == 0 ? exact_cos(dir[j]) : exact_sin(dir[j]);
      if (!s) {
        exact = false;
        continue;
      }
      if (s->coeff.is_zero()) continue;
      if (root != 0 && s->root != root) exact = false;
      root = s->root;
      e.terms.push_back({j, s->coeff});
    }
    if (exact && !e.terms.empty()) {
      e.rhs = Rational(0);
      e.origin = c == 0 ? "closure x" : "closure y";
      row.exact = e;
    }
  }
  return out;
}

bool two_right_quadrilateral(const TileShape& shape) {
  return shape.k == 4 && shape.count(AngleType::R) == 2 && shape.count(AngleType::A) == 1 &&
         shape.count(AngleType::O) == 1;
}

std::vector<Rational> aror_branch_values() { return {Rational(1, 3), Rational(1, 4)}; }

AriorBounds arior_bounds(const Rational& area) {
  AriorBounds b;
  const LD a = area.to_long_double();
  b.lo = std::sqrt(2 * a);
  b.hi = 2 * std::sqrt(a);
  const LD scale = 1e9L;
  // outer rational relaxation, generous by a few units in the last place
  const std::int64_t lo_num = static_cast<std::int64_t>(std::floor(b.lo * scale)) - 2;
  const std::int64_t hi_num = static_cast<std::int64_t>(std::ceil(b.hi * scale)) + 2;
  b.rational = VariableBound{Rational(lo_num, 1000000000), Rational(hi_num, 1000000000), true, false};
  return b;
}

std::vector<ClosureRow> arro_relations(const Rational& alpha) {
  return closure_rows({alpha, Rational(1, 2), Rational(1, 2), Rational(1) - alpha});
}

long double quadrilateral_double_area(const std::vector<long double>& t, const std::vector<Rational>& a,
                                      bool second_form) {
  if (!second_form) return t[0] * t[1] * sin_pi(a[1]) + t[2] * t[3] * sin_pi(a[3]);
  return t[1] * t[2] * sin_pi(a[2]) + t[3] * t[0] * sin_pi(a[0]);
}

GuardResult nonlinear_guard(const LinearSystem& lengths, const LengthLayout& layout,
                            const std::vector<Rational>& angles, int tiles, const GuardConfig& config) {
  const int k = static_cast<int>(angles.size());
  NumericPolytope poly(lengths);
  const int f = poly.dim();
  auto t_row = [&](int j) -> VecLD { return poly.p.basis.row(layout.side(j)).transpose(); };

  // closure: minimize the largest violation s over the polytope
  {
    auto rows = poly.rows;
    auto rhs = poly.rhs;
    for (const ClosureRow& cr : closure_rows(angles))
      for (int sgn : {1, -1}) {
        VecLD r = VecLD::Zero(f + 1);
        LD at_base = 0;
        for (int j = 0; j < k; ++j) {
          r.head(f) += sgn * cr.coeff[j] * t_row(j);
          at_base += sgn * cr.coeff[j] * poly.base(layout.side(j));
        }
        r(f) = -1;
        rows.push_back(r);
        rhs.push_back(-at_base);
      }
    for (auto& r : rows)
      if (r.size() == f) {
        VecLD w = VecLD::Zero(f + 1);
        w.head(f) = r;
        r = w;
      }
    VecLD c = VecLD::Zero(f + 1);
    c(f) = -1;
    const auto res = solve(rows, rhs, c);
    if (res.status == LpStatus::Optimal && -res.value > config.tau)
      return {true, "closure"};
  }

  if (k != 4) return {};

  // area: t and r as affine functions of z
  const int nt = layout.ratio >= 0 ? 5 : 4;
  MatLD B(nt, f);
  VecLD o(nt);
  for (int j = 0; j < 4; ++j) {
    B.row(j) = t_row(j).transpose();
    o(j) = poly.base(layout.side(j));
  }
  if (layout.ratio >= 0) {
    B.row(4) = poly.p.basis.row(layout.ratio);
    o(4) = poly.base(layout.ratio);
  }
  auto excess = [&](const VecLD& vals, bool second) {
    std::vector<LD> t(vals.data(), vals.data() + 4);
    const LD r = layout.ratio >= 0 ? vals(4) : 1;
    return quadrilateral_double_area(t, angles, second) - 2 * r / tiles;
  };
  int rank = 0;
  if (f > 0) {
    Eigen::FullPivLU<MatLD> lu(B);
    lu.setThreshold(1e-12L);
    rank = static_cast<int>(lu.rank());
  }
  if (rank == 0) {
    for (bool second : {false, true})
      if (std::fabs(excess(o, second)) > config.tau) return {true, "area"};
    return {};
  }
  if (rank > 1 || config.max_dim < 1) return {};
  // one direction: every row is a multiple of the largest one
  int best = 0;
  for (int i = 1; i < nt; ++i)
    if (B.row(i).norm() > B.row(best).norm()) best = i;
  const VecLD dir = B.row(best).transpose();
  VecLD kappa(nt);
  for (int i = 0; i < nt; ++i) kappa(i) = B.row(i).dot(B.row(best)) / dir.squaredNorm();
  VecLD c_hi = dir, c_lo = -dir;
  const auto hi = solve(poly.rows, poly.rhs, c_hi);
  const auto lo = solve(poly.rows, poly.rhs, c_lo);
  if (hi.status != LpStatus::Optimal || lo.status != LpStatus::Optimal) return {};
  const LD lam_hi = hi.value, lam_lo = -lo.value;
  for (bool second : {false, true}) {
    auto q = [&](LD lam) { return excess(o + kappa * lam, second); };
    // q is quadratic in lambda; its extrema on the interval are at the ends
    // or at the vertex
    const LD q0 = q(0), q1 = q(1), qm = q(-1);
    const LD a2 = (q1 + qm - 2 * q0) / 2, a1 = (q1 - qm) / 2;
    std::vector<LD> pts{lam_lo, lam_hi};
    if (std::fabs(a2) > 0) {
      const LD v = -a1 / (2 * a2);
      if (v > lam_lo && v < lam_hi) pts.push_back(v);
    }
    LD mn = q(pts[0]), mx = mn;
    for (LD x : pts) {
      mn = std::min(mn, q(x));
      mx = std::max(mx, q(x));
    }
    if (mn > config.tau || mx < -config.tau) return {true, "area"};
  }
  return {};
}

}  // namespace tiling
