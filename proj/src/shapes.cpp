#include "tiling/shapes.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace tiling {

const char* token(AngleType t) {
  switch (t) {
    case AngleType::A: return "a";
    case AngleType::R: return "r";
    case AngleType::O: return "o";
    case AngleType::P: return "p";
    case AngleType::SA: return "(sa)";
    case AngleType::MA: return "(ma)";
    case AngleType::LA: return "(la)";
    case AngleType::SO: return "(so)";
    case AngleType::MO: return "(mo)";
    case AngleType::LO: return "(lo)";
  }
  return "?";
}

AngleInterval exact_interval(AngleType t) {
  const Rational zero(0), quarter(1, 4), half(1, 2), three_q(3, 4), one(1);
  switch (t) {
    case AngleType::A: return {zero, half, true, true};
    case AngleType::R: return {half, half};
    case AngleType::O: return {half, one, true, true};
    case AngleType::P: return {one, one};
    case AngleType::SA: return {zero, quarter, true, true};
    case AngleType::MA: return {quarter, quarter};
    case AngleType::LA: return {quarter, half, true, true};
    case AngleType::SO: return {half, three_q, true, true};
    case AngleType::MO: return {three_q, three_q};
    case AngleType::LO: return {three_q, one, true, true};
  }
  throw std::logic_error("unknown angle type");
}

namespace {
void check_eps(const Rational& eps) {
  if (!(Rational(0) < eps && eps < Rational(1, 18)))
    throw std::invalid_argument("eps must satisfy 0 < eps < 1/18, got " + eps.str());
}
}  // namespace

Rational mina(AngleType t, const Rational& eps) {
  check_eps(eps);
  const AngleInterval iv = exact_interval(t);
  return iv.lo_open ? iv.lo + eps : iv.lo;
}

Rational maxa(AngleType t, const Rational& eps) {
  check_eps(eps);
  const AngleInterval iv = exact_interval(t);
  return iv.hi_open ? iv.hi - eps : iv.hi;
}

bool vertex_sum_feasible(const std::vector<AngleType>& incident, const Rational& target,
                         const Rational& eps) {
  Rational lo(0), hi(0);
  for (AngleType t : incident) {
    lo += mina(t, eps);
    hi += maxa(t, eps);
  }
  return lo <= target && target <= hi;
}

std::string TileShape::str() const {
  std::string s;
  for (AngleType t : labels) s += token(t);
  return s;
}

int TileShape::count(AngleType t) const {
  return static_cast<int>(std::count(labels.begin(), labels.end(), t));
}

std::vector<AngleType> canonical_labels(std::vector<AngleType> labels) {
  std::vector<AngleType> best = labels;
  const std::size_t k = labels.size();
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t s = 0; s < k; ++s) {
      std::rotate(labels.begin(), labels.begin() + 1, labels.end());
      best = std::min(best, labels);
    }
    std::reverse(labels.begin(), labels.end());
  }
  return best;
}

std::vector<AngleType> labeling_alphabet(int k, LabelMode mode) {
  if (mode == LabelMode::Equiangular && k == 3)
    return {AngleType::SA, AngleType::MA, AngleType::LA, AngleType::R,
            AngleType::SO, AngleType::MO, AngleType::LO};
  return {AngleType::A, AngleType::R, AngleType::O};
}

bool admissible_labeling(const std::vector<AngleType>& labels, LabelMode mode,
                         const Rational& eps) {
  const int k = static_cast<int>(labels.size());
  if (std::all_of(labels.begin(), labels.end(), [](AngleType t) { return t == AngleType::R; }))
    return false;
  if (std::find(labels.begin(), labels.end(), AngleType::P) != labels.end()) return false;
  if (mode == LabelMode::Square && k == 4) {
    for (int i = 0; i < k; ++i)
      if (labels[i] == AngleType::R && labels[(i + 1) % k] == AngleType::R) return false;
  }
  return vertex_sum_feasible(labels, Rational(k - 2), eps);
}

std::vector<TileShape> enumerate_labelings(int k, LabelMode mode, const Rational& eps) {
  if (k < 3 || k > 6) throw std::invalid_argument("tile side count must be in 3..6");
  const auto alphabet = labeling_alphabet(k, mode);
  std::set<std::vector<AngleType>> classes;
  std::vector<int> digits(k, 0);
  std::vector<AngleType> word(k);
  while (true) {
    for (int i = 0; i < k; ++i) word[i] = alphabet[digits[i]];
    if (admissible_labeling(word, mode, eps)) classes.insert(canonical_labels(word));
    int i = 0;
    while (i < k && ++digits[i] == static_cast<int>(alphabet.size())) digits[i++] = 0;
    if (i == k) break;
  }
  std::vector<TileShape> out;
  for (const auto& c : classes) out.push_back(TileShape{k, c});
  return out;
}

}  // namespace tiling
