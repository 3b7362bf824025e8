#pragma once

#include <string>
#include <vector>

#include "tiling/rational.hpp"

namespace tiling {

/// Angle classes. A/R/O/P: acute, right, obtuse, plain (straight). The
/// refined classes split acute at pi/4 and obtuse at 3pi/4 and are used for
/// equiangular triangles. Declaration order is the order used to pick the
/// canonical representative of a labeling.
enum class AngleType { SA, MA, A, LA, R, SO, MO, O, LO, P };

const char* token(AngleType t);

/// Angles are measured in units of pi throughout.
struct AngleInterval {
  Rational lo, hi;
  bool lo_open = false, hi_open = false;

  bool contains(const Rational& x) const {
    return (lo_open ? lo < x : lo <= x) && (hi_open ? x < hi : x <= hi);
  }
  bool is_point() const { return lo == hi && !lo_open && !hi_open; }
};

/// The exact (open where the class is strict) range of an angle class.
AngleInterval exact_interval(AngleType t);

/// Default margin; any value below 1/18 gives identical verdicts for n <= 9.
inline const Rational kDefaultEps{1, 20};

/// Lower/upper margin bounds of an angle class; throws std::invalid_argument
/// unless 0 < eps < 1/18.
Rational mina(AngleType t, const Rational& eps = kDefaultEps);
Rational maxa(AngleType t, const Rational& eps = kDefaultEps);

/// Sum-of-bounds test at one tiling vertex: sum(mina) <= target <= sum(maxa).
bool vertex_sum_feasible(const std::vector<AngleType>& incident, const Rational& target,
                         const Rational& eps = kDefaultEps);

enum class LabelMode { Square, Rectangle, Equiangular };

/// Model tile T: number of sides and the angle class of each vertex p_1..p_k.
struct TileShape {
  int k = 0;
  std::vector<AngleType> labels;

  std::string str() const;
  int count(AngleType t) const;
  friend bool operator==(const TileShape&, const TileShape&) = default;
};

/// Canonical representative under rotation and reflection.
std::vector<AngleType> canonical_labels(std::vector<AngleType> labels);

/// All admissible labelings with k sides, one per rotation/reflection class,
/// sorted by their canonical strings. Square mode with k = 4 excludes two
/// cyclically consecutive right angles; all modes exclude the all-right
/// labeling. Equiangular triangles use the refined alphabet.
std::vector<TileShape> enumerate_labelings(int k, LabelMode mode, const Rational& eps = kDefaultEps);

/// Alphabet used by enumerate_labelings for (k, mode).
std::vector<AngleType> labeling_alphabet(int k, LabelMode mode);

/// Invariants a model labeling must satisfy in the given mode.
bool admissible_labeling(const std::vector<AngleType>& labels, LabelMode mode,
                         const Rational& eps = kDefaultEps);

}  // namespace tiling
