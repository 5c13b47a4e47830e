#ifndef CG_CANTOR_HPP
#define CG_CANTOR_HPP

#include <compare>
#include <cstddef>
#include <optional>
#include <vector>

#include "cg/word.hpp"

namespace cg {

// An eventually periodic infinite binary word, preperiod (period)^inf, in
// canonical form: the period is primitive and the preperiod is minimal.
// Canonical form makes value equality syntactic.
class CantorPoint {
 public:
  CantorPoint(Word preperiod, Word period);

  const Word& preperiod() const { return preperiod_; }
  const Word& period() const { return period_; }

  char bit(std::size_t i) const;

  // Drops the first bit.
  CantorPoint shift() const;

  bool has_prefix(const Word& w) const;

  bool operator==(const CantorPoint& other) const = default;
  // Order as infinite words (0 < 1 pointwise-lexicographic).
  std::strong_ordering operator<=>(const CantorPoint& other) const;

  // Textual syntax "<preperiod>(<period>)", e.g. "01(10)", "(0)".
  static CantorPoint parse(const std::string& text);
  std::string str() const;

 private:
  Word preperiod_;
  Word period_;
};

// The point w . x, renormalized.
CantorPoint prepend(const Word& w, const CantorPoint& x);

// y with x = w . y when w prefixes x, else nullopt.
std::optional<CantorPoint> strip_prefix(const Word& w, const CantorPoint& x);

// All distinct normalized points with preperiod length <= max_preperiod and
// period length <= max_period, in increasing infinite-word order.
std::vector<CantorPoint> enumerate_points(std::size_t max_preperiod,
                                          std::size_t max_period);

}  // namespace cg

#endif
